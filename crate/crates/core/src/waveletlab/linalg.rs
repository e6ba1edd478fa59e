//! Rank of a matrix over Q(ζ_p) by Gaussian elimination.

use crate::charcyclo::CycloNumber;

pub fn rank(mut rows: Vec<Vec<CycloNumber>>) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        let pivot_row: Vec<CycloNumber> = rows[rank].iter().map(|v| v * &inv).collect();
        for r in (rank + 1)..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for (c, pv) in pivot_row.iter().enumerate().skip(col) {
                rows[r][c] = &rows[r][c] - &(&factor * pv);
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(p: u32, n: i64) -> CycloNumber {
        CycloNumber::from_int(p, n)
    }

    #[test]
    fn rational_ranks() {
        assert_eq!(rank(vec![]), 0);
        assert_eq!(rank(vec![vec![c(2, 1), c(2, 0)], vec![c(2, 0), c(2, 1)]]), 2);
        assert_eq!(rank(vec![vec![c(2, 1), c(2, 2)], vec![c(2, 2), c(2, 4)]]), 1);
        assert_eq!(rank(vec![vec![c(3, 0), c(3, 0)]]), 0);
    }

    #[test]
    fn cyclotomic_dependence() {
        let p = 5;
        let z = CycloNumber::zeta_pow(p, 1);
        let row = vec![c(p, 1), z.clone(), &z * &z];
        let scaled: Vec<CycloNumber> = row.iter().map(|v| v * &z).collect();
        assert_eq!(rank(vec![row.clone(), scaled]), 1);
        let conj: Vec<CycloNumber> = row.iter().map(CycloNumber::conj).collect();
        assert_eq!(rank(vec![row, conj]), 2);
    }
}
