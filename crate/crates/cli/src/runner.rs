//! Executes a parsed script. Each check or computation yields one JSON object
//! and a short human-readable block.

use std::collections::HashMap;
use std::fmt::Write;

use lfpc_core::charcyclo::format_rational;
use lfpc_core::sbfunc::{SBFunction, StepFn};
use lfpc_core::waveletlab::examples::{self, ScalingExample};
use lfpc_core::waveletlab::{self as wl, ConsistencyMode, Multiwavelet, SetMode, Tail, WaveletError};
use lfpc_core::{ESet, Field, Verdict};
use serde_json::{json, Map, Value};

use crate::ast::*;
use crate::eval;
use crate::printer;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum RunMode {
    /// Stop after the first failing check.
    Strict,
    /// Run every command.
    Report,
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub window: i32,
    pub mode: RunMode,
    pub approx: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { window: 4, mode: RunMode::Strict, approx: false }
    }
}

/// Collected output of a run.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub json_lines: Vec<String>,
    pub text: String,
    pub all_ok: bool,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.all_ok {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, Clone)]
enum Binding {
    Set(ESet),
    Func(SBFunction),
    Step(StepFn),
    Family { sets: Vec<ESet> },
}

pub fn scaling_example(v: ScalingVariant) -> ScalingExample {
    match v {
        ScalingVariant::A => ScalingExample::Shannon,
        ScalingVariant::B => ScalingExample::Annulus,
        ScalingVariant::C => ScalingExample::ShiftedBalls,
    }
}

fn frame_mode(m: FrameMode) -> SetMode {
    match m {
        FrameMode::Parseval => SetMode::Parseval,
        FrameMode::Orthonormal => SetMode::Orthonormal,
    }
}

struct Runner {
    field: Field,
    options: Options,
    env: HashMap<String, Binding>,
    sets: HashMap<String, ESet>,
    report: Report,
    stopped: bool,
}

/// One emitted record before serialization.
struct Record {
    ok: bool,
    fields: Map<String, Value>,
    text: Vec<String>,
}

impl Record {
    fn new(ok: bool) -> Self {
        Record { ok, fields: Map::new(), text: Vec::new() }
    }

    fn verdict(v: &Verdict) -> Self {
        let mut r = Record::new(v.ok);
        r.fields.insert("verdict".into(), serde_json::to_value(v).expect("verdicts serialize"));
        let status = if v.ok { "PASS" } else { "FAIL" };
        let mut line = format!("{status} {}", v.condition);
        if let Some(w) = &v.witness {
            write!(line, " at {}: {}", w.ball, w.value).unwrap();
        }
        r.text.push(line);
        r
    }

    fn error(e: &WaveletError) -> Self {
        let mut r = match e {
            WaveletError::Precondition(v) => Record::verdict(v),
            _ => Record::new(false),
        };
        r.ok = false;
        r.fields.insert("error".into(), json!(e.to_string()));
        r.text.push(format!("ERROR {e}"));
        r
    }

    fn value(mut self, key: &str, value: impl Into<Value>) -> Self {
        let value = value.into();
        let shown = match &value {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        self.text.push(format!("{key} = {shown}"));
        self.fields.insert(key.into(), value);
        self
    }
}

pub fn run(script: &Script, options: Options) -> Report {
    let h = &script.header;
    let field = eval::field(h.p, h.c, &h.poly).expect("header validated by the parser");
    let mut runner = Runner {
        field,
        options,
        env: HashMap::new(),
        sets: HashMap::new(),
        report: Report { all_ok: true, ..Report::default() },
        stopped: false,
    };
    for (index, s) in script.statements.iter().enumerate() {
        if runner.stopped {
            break;
        }
        runner.statement(index, s);
    }
    runner.report
}

impl Runner {
    fn emit(&mut self, index: usize, s: &Statement, check: Option<&str>, record: Record) {
        if self.stopped {
            return;
        }
        let command = printer::statement(s);
        let mut obj = record.fields;
        obj.insert("statement".into(), json!(index + 1));
        obj.insert("line".into(), json!(s.pos.line));
        obj.insert("command".into(), json!(command));
        if let Some(c) = check {
            obj.insert("check".into(), json!(c));
        }
        obj.insert("ok".into(), json!(record.ok));
        self.report.json_lines.push(Value::Object(obj).to_string());
        let label = check.map_or_else(|| command.clone(), |c| format!("{command} [{c}]"));
        writeln!(self.report.text, "line {}: {label}", s.pos.line).unwrap();
        for t in record.text {
            writeln!(self.report.text, "  {t}").unwrap();
        }
        if !record.ok {
            self.report.all_ok = false;
            if self.options.mode == RunMode::Strict {
                self.stopped = true;
            }
        }
    }

    fn bind(&mut self, name: String, value: Binding) {
        if let Binding::Set(s) = &value {
            self.sets.insert(name.clone(), s.clone());
        }
        self.env.insert(name, value);
    }

    fn functions(&self, names: &[Name]) -> Vec<SBFunction> {
        let f = &self.field;
        names
            .iter()
            .flat_map(|n| match &self.env[&n.text] {
                Binding::Set(s) => vec![SBFunction::indicator(f, s)],
                Binding::Func(g) => vec![g.clone()],
                Binding::Family { sets } => sets.iter().map(|s| SBFunction::indicator(f, s)).collect(),
                Binding::Step(_) => unreachable!("rejected by the parser"),
            })
            .collect()
    }

    fn multiwavelet(&self, names: &[Name]) -> Multiwavelet {
        Multiwavelet::new(self.functions(names)).expect("at least one name")
    }

    fn pieces(&self, names: &[Name]) -> Vec<ESet> {
        names
            .iter()
            .flat_map(|n| match &self.env[&n.text] {
                Binding::Set(s) => vec![s.clone()],
                Binding::Family { sets } => sets.clone(),
                _ => unreachable!("rejected by the parser"),
            })
            .collect()
    }

    fn step_fn(&self, key: &str, m: &StepFn, record: Record) -> Record {
        let r = record.value(key, m.format_cells());
        if self.options.approx {
            r.value(&format!("{key}_approx"), m.format_approx())
        } else {
            r
        }
    }

    fn statement(&mut self, index: usize, s: &Statement) {
        let f = self.field.clone();
        match &s.kind {
            StatementKind::Set { name, balls } => {
                let v = eval::balls(&f, balls);
                self.bind(name.text.clone(), Binding::Set(v));
            }
            StatementKind::Func { name, terms } => {
                let v = eval::function(&f, terms, &self.sets);
                self.bind(name.text.clone(), Binding::Func(v));
            }
            StatementKind::Step { name, terms } => {
                let v = eval::step(&f, terms, &self.sets);
                self.bind(name.text.clone(), Binding::Step(v));
            }
            StatementKind::Builtin { example, .. } => self.builtin(index, s, example),
            StatementKind::Check(c) => {
                let record = self.check(c);
                self.emit(index, s, None, record);
            }
            StatementKind::Compute(c) => {
                let record = self.compute(c);
                self.emit(index, s, None, record);
            }
        }
    }

    fn builtin(&mut self, index: usize, s: &Statement, example: &Example) {
        let f = self.field.clone();
        let name = s.binds().expect("builtins bind a name");
        let family = |sets: Vec<ESet>| Binding::Family { sets };
        match example {
            Example::Shannon => {
                self.bind(name, family(examples::shannon_sets(&f)));
                let psi = examples::shannon(&f);
                self.emit(index, s, Some("parseval-wavelet"), Record::verdict(&wl::verify_affine_parseval(&f, &psi)));
                let ortho = wl::is_orthonormal_multiwavelet(&f, &psi);
                self.emit(index, s, Some("orthonormal-wavelet"), Record::verdict(&ortho));
            }
            Example::AnnulusFamily(m) | Example::ShiftedBalls(m) => {
                let sets = if matches!(example, Example::AnnulusFamily(_)) {
                    examples::example_315a_sets(&f, *m)
                } else {
                    examples::example_315b_sets(&f, *m)
                };
                let psi = Multiwavelet::new(sets.iter().map(|w| SBFunction::indicator(&f, w)).collect()).expect("nonempty");
                self.bind(name, family(sets));
                self.emit(index, s, Some("parseval-wavelet"), Record::verdict(&wl::verify_affine_parseval(&f, &psi)));
            }
            Example::ScalingSet(v, m) => {
                let set = examples::example_46_scaling(scaling_example(*v), m.unwrap_or(1));
                let mode = if *v == ScalingVariant::A { SetMode::Orthonormal } else { SetMode::Parseval };
                let record = self.scaling_set(&set, mode);
                self.bind(name, Binding::Set(set));
                self.emit(index, s, Some("scaling-set"), record);
            }
        }
    }

    fn scaling_set(&self, set: &ESet, mode: SetMode) -> Record {
        let result = wl::verify_scaling_set(&self.field, set, mode, self.options.window);
        let mut r = Record::verdict(&result.verdict);
        if let Some(w) = &result.wavelet_set {
            r = r.value("wavelet_set", w.to_string());
            let pieces: Vec<Value> = result.pieces.iter().map(|p| json!(p.to_string())).collect();
            r = r.value("pieces", pieces);
        }
        r
    }

    fn check(&self, c: &Check) -> Record {
        let f = &self.field;
        match c {
            Check::WaveletSet { names, mode, .. } => Record::verdict(&wl::verify_wavelet_set(f, &self.pieces(names), frame_mode(*mode))),
            Check::ParsevalWavelet(names) => Record::verdict(&wl::verify_affine_parseval(f, &self.multiwavelet(names))),
            Check::OrthonormalWavelet(names) => {
                Record::verdict(&wl::is_orthonormal_multiwavelet(f, &self.multiwavelet(names)))
            }
            Check::SemiOrthogonal(names) => match wl::is_semi_orthogonal(f, &self.multiwavelet(names)) {
                Ok(v) => Record::verdict(&v),
                Err(e) => Record::error(&e),
            },
            Check::Mra(names) => match wl::is_mra_multiwavelet(f, &self.multiwavelet(names)) {
                Ok(v) => Record::verdict(&v),
                Err(e) => Record::error(&e),
            },
            Check::ScalingSet { name, mode } => self.scaling_set(&self.sets[&name.text], frame_mode(*mode)),
            Check::ScalingFunction(name) => {
                let phi = self.functions(std::slice::from_ref(name)).remove(0);
                let result = wl::verify_scaling_function(f, &phi);
                let r = Record::verdict(&result.verdict);
                match &result.filter {
                    Some(m0) => self.step_fn("filter", m0, r),
                    None => r,
                }
            }
            Check::Consistency { names, order, mode } => {
                let mode = match mode {
                    EquationMode::Inequality => ConsistencyMode::Inequality,
                    EquationMode::Equality => ConsistencyMode::Equality,
                };
                let m = match &self.env[&names[0].text] {
                    Binding::Step(m) => m.clone(),
                    _ => match wl::negative_dilates_multiplicity(f, &self.multiwavelet(names)) {
                        Ok(nd) => nd.multiplicity,
                        Err(e) => return Record::error(&e),
                    },
                };
                match wl::consistency_check(f, &m, *order as i64, mode) {
                    Ok(v) => self.step_fn("multiplicity", &m, Record::verdict(&v)),
                    Err(e) => Record::error(&e),
                }
            }
        }
    }

    fn compute(&self, c: &Compute) -> Record {
        let f = &self.field;
        match c {
            Compute::Multiplicity(names) => {
                let psi = self.multiwavelet(names);
                let nd = match wl::negative_dilates_multiplicity(f, &psi) {
                    Ok(nd) => nd,
                    Err(e) => return Record::error(&e),
                };
                let agrees = wl::dimension_function(f, &psi).is_ok_and(|d| d == nd.multiplicity);
                let r = self.step_fn("multiplicity", &nd.multiplicity, Record::verdict(&nd.verdict()));
                r.value("integral", format_rational(&nd.integral))
                    .value("bound", format_rational(&nd.bound))
                    .value("dimension_function_agrees", agrees)
            }
            Compute::Spectral(names) => match wl::spectral_negative_dilates(f, &self.multiwavelet(names), self.options.window) {
                Ok(sp) => {
                    let tail = match &sp.tail {
                        Tail::None => "none".to_string(),
                        Tail::Constant(c) => c.to_string(),
                        Tail::Unresolved => "unresolved".to_string(),
                    };
                    let window = sp.window.map_or(Value::Null, |w| json!(w));
                    let r = self.step_fn("sigma", &sp.sigma, Record::new(true));
                    r.value("exact_outside", window).value("tail", tail)
                }
                Err(e) => Record::error(&e),
            },
            Compute::Fourier(name) => {
                let g = self.functions(std::slice::from_ref(name)).remove(0);
                let hat = g.fourier(f);
                let r = Record::new(true).value("fourier", hat.format_cells()).value("half_scale", hat.half_scale());
                if self.options.approx {
                    let scale = if hat.half_scale() { (f.q() as f64).sqrt() } else { 1.0 };
                    let cells: Vec<String> = hat
                        .cells()
                        .iter()
                        .map(|(b, v)| {
                            let (re, im) = v.approx();
                            format!("{b}: ~{:.6}{:+.6}i", re * scale, im * scale)
                        })
                        .collect();
                    r.value("fourier_approx", format!("{{{}}}", cells.join(", ")))
                } else {
                    r
                }
            }
        }
    }
}
