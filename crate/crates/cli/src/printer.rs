//! Canonical text form of a script. Parsing the output gives back the same
//! tree; comments and spacing are not kept.

use std::fmt::Write;

use crate::ast::*;

pub fn print(script: &Script) -> String {
    let mut out = String::new();
    let h = &script.header;
    write!(out, "field p={} c={}", h.p, h.c).unwrap();
    if let Some(poly) = &h.poly {
        let coeffs: Vec<String> = poly.iter().map(u32::to_string).collect();
        write!(out, " poly={}", coeffs.join(",")).unwrap();
    }
    out.push('\n');
    for s in &script.statements {
        out.push_str(&statement(s));
        out.push('\n');
    }
    out
}

pub fn statement(s: &Statement) -> String {
    match &s.kind {
        StatementKind::Set { name, balls } => {
            let parts: Vec<String> = balls.iter().map(ball).collect();
            format!("set {} = {}", name.text, parts.join(" | "))
        }
        StatementKind::Func { name, terms } => format!("func {} = {}", name.text, terms_text(terms)),
        StatementKind::Step { name, terms } => format!("step {} = {}", name.text, terms_text(terms)),
        StatementKind::Check(c) => check(c),
        StatementKind::Compute(c) => compute(c),
        StatementKind::Builtin { example, alias } => {
            let mut text = format!("builtin {}", builtin(example));
            if let Some(a) = alias {
                write!(text, " as {}", a.text).unwrap();
            }
            text
        }
    }
}

fn names(list: &[Name]) -> String {
    list.iter().map(|n| n.text.as_str()).collect::<Vec<_>>().join(" ")
}

fn frame_mode(m: FrameMode) -> &'static str {
    match m {
        FrameMode::Parseval => "parseval",
        FrameMode::Orthonormal => "orthonormal",
    }
}

fn check(c: &Check) -> String {
    match c {
        Check::WaveletSet { names: n, order, mode } => {
            format!("check wavelet-set {} order {order} mode {}", names(n), frame_mode(*mode))
        }
        Check::ParsevalWavelet(n) => format!("check parseval-wavelet {}", names(n)),
        Check::OrthonormalWavelet(n) => format!("check orthonormal-wavelet {}", names(n)),
        Check::SemiOrthogonal(n) => format!("check semi-orthogonal {}", names(n)),
        Check::Mra(n) => format!("check mra {}", names(n)),
        Check::ScalingSet { name, mode } => format!("check scaling-set {} mode {}", name.text, frame_mode(*mode)),
        Check::ScalingFunction(n) => format!("check scaling-function {}", n.text),
        Check::Consistency { names: n, order, mode } => {
            let m = match mode {
                EquationMode::Inequality => "inequality",
                EquationMode::Equality => "equality",
            };
            format!("check consistency {} order {order} mode {m}", names(n))
        }
    }
}

fn compute(c: &Compute) -> String {
    match c {
        Compute::Multiplicity(n) => format!("compute multiplicity {}", names(n)),
        Compute::Spectral(n) => format!("compute spectral {}", names(n)),
        Compute::Fourier(n) => format!("compute fourier {}", n.text),
    }
}

fn builtin(e: &Example) -> String {
    match e {
        Example::Shannon => "shannon".into(),
        Example::AnnulusFamily(m) => format!("ex315a({m})"),
        Example::ShiftedBalls(m) => format!("ex315b({m})"),
        Example::ScalingSet(v, None) => format!("ex46({v:?})"),
        Example::ScalingSet(v, Some(m)) => format!("ex46({v:?}, {m})"),
    }
}

pub fn ball(b: &BallExpr) -> String {
    match &b.kind {
        BallKind::Ball { center, level } => format!("ball({}; {level})", laurent(center)),
        BallKind::Annulus(k) => format!("annulus({k})"),
        BallKind::Ideal(k) => format!("ideal({k})"),
    }
}

fn laurent(l: &LaurentLit) -> String {
    let parts: Vec<String> = l
        .terms
        .iter()
        .map(|&(d, e)| match (d, e) {
            (d, 0) => d.to_string(),
            (1, 1) => "t".into(),
            (d, 1) => format!("{d}*t"),
            (1, e) => format!("t^{e}"),
            (d, e) => format!("{d}*t^{e}"),
        })
        .collect();
    parts.join(" + ")
}

fn coeff_term(t: &CoeffTerm) -> String {
    let magnitude = if t.den == 1 { t.num.to_string() } else { format!("{}/{}", t.num, t.den) };
    match t.zeta {
        None => magnitude,
        Some(k) => {
            let power = if k == 1 { "zeta".to_string() } else { format!("zeta^{k}") };
            if t.num == 1 && t.den == 1 {
                power
            } else {
                format!("{magnitude}*{power}")
            }
        }
    }
}

fn coeff(c: &Coeff) -> String {
    let mut text = String::new();
    for (i, t) in c.terms.iter().enumerate() {
        match (i, t.negative) {
            (0, true) => text.push('-'),
            (0, false) => {}
            (_, true) => text.push_str(" - "),
            (_, false) => text.push_str(" + "),
        }
        text.push_str(&coeff_term(t));
    }
    if c.terms.len() > 1 {
        format!("({text})")
    } else {
        text
    }
}

fn terms_text(terms: &[Term]) -> String {
    terms
        .iter()
        .map(|t| {
            let atoms: Vec<String> = t
                .set
                .iter()
                .map(|a| match a {
                    SetAtom::Name(n) => n.text.clone(),
                    SetAtom::Ball(b) => ball(b),
                })
                .collect();
            format!("{}*ind({})", coeff(&t.coeff), atoms.join(" | "))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}
