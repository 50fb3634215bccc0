//! Axiomatic equality through normal forms.
//!
//! Theory `F` works on processes and characterizes past-sensitive forward
//! bisimilarity. Theories `R` and `FR` work on encodings and characterize
//! reverse and forward-reverse bisimilarity.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::encoding::{encode, encodings_over_histories, BrsProcess, ExecutionOrder};
use crate::error::{Error, Result};
use crate::terms::{is_initial, is_reachable, Action, Process, SyncSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theory {
    F,
    R,
    FR,
}

impl Theory {
    pub const ALL: [Theory; 3] = [Theory::F, Theory::R, Theory::FR];

    pub fn normal_form(self) -> NormalFormTag {
        match self {
            Theory::F => NormalFormTag::Fnf,
            Theory::R => NormalFormTag::Rnf,
            Theory::FR => NormalFormTag::FRnf,
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::F => "f",
            Theory::R => "r",
            Theory::FR => "fr",
        })
    }
}

impl FromStr for Theory {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f" => Ok(Theory::F),
            "r" => Ok(Theory::R),
            "fr" => Ok(Theory::FR),
            _ => Err(Error::Invalid(format!("unknown theory {s}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormalFormTag {
    Fnf,
    Rnf,
    FRnf,
}

impl NormalFormTag {
    fn name(self) -> &'static str {
        match self {
            NormalFormTag::Fnf => "F-nf",
            NormalFormTag::Rnf => "R-nf",
            NormalFormTag::FRnf => "FR-nf",
        }
    }
}

/// Placeholder for the forgotten past action in canonical F-nfs. It cannot
/// be written in source text.
pub const PAST: &str = "#past";

/// One axiom application, located by the path of operators above it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub axiom: &'static str,
    pub path: String,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = if self.path.is_empty() { "root" } else { &self.path };
        write!(f, "{} @ {at}", self.axiom)
    }
}

struct Tracer {
    steps: Vec<TraceStep>,
}

impl Tracer {
    fn note(&mut self, axiom: &'static str, path: &str) {
        self.steps.push(TraceStep {
            axiom,
            path: path.to_string(),
        });
    }
}

fn sub(path: &str, marker: &str) -> String {
    format!("{path}{marker}")
}

// [b†.] Σ aᵢ.Pᵢ with every Pᵢ initial.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Fnf {
    past: Option<Action>,
    summands: Vec<(Action, Fnf)>,
}

impl Fnf {
    fn nil() -> Fnf {
        Fnf {
            past: None,
            summands: Vec::new(),
        }
    }

    fn future(&self) -> Fnf {
        Fnf {
            past: None,
            summands: self.summands.clone(),
        }
    }

    fn to_process(&self) -> Process {
        let sum = sum_of(
            self.summands
                .iter()
                .map(|(a, p)| Process::prefix(a.clone(), p.to_process())),
        );
        match &self.past {
            Some(b) => Process::done(b.clone(), sum),
            None => sum,
        }
    }

    fn from_process(p: &Process) -> Option<Fnf> {
        match p {
            Process::Prefix {
                action,
                executed: true,
                cont,
            } => {
                let rest = Fnf::from_process(cont)?;
                rest.past.is_none().then(|| Fnf {
                    past: Some(action.clone()),
                    summands: rest.summands,
                })
            }
            Process::Nil => Some(Fnf::nil()),
            _ => Some(Fnf {
                past: None,
                summands: summation(p)?,
            }),
        }
    }

    fn canonical(&self) -> Fnf {
        let mut summands: Vec<(Action, Fnf)> = self.summands.iter().map(|(a, p)| (a.clone(), p.canonical())).collect();
        summands.sort_by_cached_key(|(a, p)| format!("{a}.{}", p.to_process()));
        summands.dedup();
        Fnf {
            past: self.past.as_ref().map(|_| Action::new(PAST)),
            summands,
        }
    }
}

// Summands of Σ aᵢ.Pᵢ; `0` is only allowed as the empty summation.
fn summation(p: &Process) -> Option<Vec<(Action, Fnf)>> {
    match p {
        Process::Prefix {
            action,
            executed: false,
            cont,
        } => {
            let c = Fnf::from_process(cont)?;
            c.past.is_none().then(|| vec![(action.clone(), c)])
        }
        Process::Choice(l, r) => {
            let mut v = summation(l)?;
            v.extend(summation(r)?);
            Some(v)
        }
        _ => None,
    }
}

fn sum_of(items: impl IntoIterator<Item = Process>) -> Process {
    let mut it = items.into_iter();
    match it.next() {
        None => Process::Nil,
        Some(first) => it.fold(first, Process::choice),
    }
}

pub fn is_fnf(p: &Process) -> bool {
    Fnf::from_process(p).is_some()
}

pub fn is_rnf(u: &BrsProcess) -> bool {
    match u {
        BrsProcess::Nil => true,
        BrsProcess::Prefix {
            executed: true, cont, ..
        } => is_rnf(cont),
        _ => false,
    }
}

pub fn is_frnf(u: &BrsProcess) -> bool {
    let summands = u.summands();
    if summands == [&BrsProcess::Nil] {
        return true;
    }
    let mut executed = 0;
    for s in &summands {
        match s {
            BrsProcess::Prefix {
                executed: true, cont, ..
            } => {
                executed += 1;
                if !is_frnf(cont) {
                    return false;
                }
            }
            BrsProcess::Prefix { cont, .. } => {
                if !cont.is_initial() || !is_frnf(cont) {
                    return false;
                }
            }
            _ => return false,
        }
    }
    // The executed summand, if any, comes first.
    executed <= 1 && summands.iter().skip(1).all(|s| s.is_initial())
}

pub fn is_normal(u: &BrsProcess, tag: NormalFormTag) -> bool {
    match tag {
        NormalFormTag::Rnf => is_rnf(u),
        NormalFormTag::FRnf => is_frnf(u),
        NormalFormTag::Fnf => false,
    }
}

fn expand(q1: &Fnf, q2: &Fnf, sync: &SyncSet, path: &str, tr: &mut Tracer) -> Fnf {
    tr.note("A_F,8", path);
    let (f1, f2) = (q1.future(), q2.future());
    let mut summands = Vec::new();
    for (a, p) in &q1.summands {
        if !sync.contains(a) {
            summands.push((a.clone(), expand(p, &f2, sync, &sub(path, "."), tr)));
        }
    }
    for (a, p) in &q2.summands {
        if !sync.contains(a) {
            summands.push((a.clone(), expand(&f1, p, sync, &sub(path, "."), tr)));
        }
    }
    for (a, p) in &q1.summands {
        if !sync.contains(a) {
            continue;
        }
        for (b, r) in &q2.summands {
            if a == b {
                summands.push((a.clone(), expand(p, r, sync, &sub(path, "."), tr)));
            }
        }
    }
    Fnf {
        past: q1.past.clone().or_else(|| q2.past.clone()),
        summands,
    }
}

fn fnf_of(p: &Process, path: &str, tr: &mut Tracer) -> Fnf {
    match p {
        Process::Nil => Fnf::nil(),
        Process::Prefix {
            action,
            executed: false,
            cont,
        } => Fnf {
            past: None,
            summands: vec![(action.clone(), fnf_of(cont, &sub(path, "."), tr))],
        },
        Process::Prefix { action, cont, .. } => {
            let rest = fnf_of(cont, &sub(path, "."), tr);
            if is_initial(cont) {
                Fnf {
                    past: Some(action.clone()),
                    summands: rest.summands,
                }
            } else {
                tr.note("A_F,6", path);
                rest
            }
        }
        Process::Choice(l, r) => {
            let ql = fnf_of(l, &sub(path, "+l"), tr);
            let qr = fnf_of(r, &sub(path, "+r"), tr);
            match (ql.past.is_some(), qr.past.is_some()) {
                (true, _) => {
                    tr.note("A_F,7", path);
                    ql
                }
                (false, true) => {
                    tr.note("A_F,2", path);
                    tr.note("A_F,7", path);
                    qr
                }
                (false, false) => {
                    if ql.summands.is_empty() || qr.summands.is_empty() {
                        tr.note("A_F,3", path);
                    }
                    let mut summands = ql.summands;
                    summands.extend(qr.summands);
                    Fnf { past: None, summands }
                }
            }
        }
        Process::Par { sync, left, right } => {
            let ql = fnf_of(left, &sub(path, "|l"), tr);
            let qr = fnf_of(right, &sub(path, "|r"), tr);
            expand(&ql, &qr, sync, path, tr)
        }
    }
}

/// One application of the forward expansion law to two F-nf operands. The
/// residual parallel compositions are left in place; empty summations are `0`.
pub fn expansion_law_f(p1: &Process, p2: &Process, sync: &SyncSet) -> Result<Process> {
    let not_normal = |p: &Process| Error::NotNormal {
        expected: "F-nf",
        term: p.to_string(),
    };
    let q1 = Fnf::from_process(p1).ok_or_else(|| not_normal(p1))?;
    let q2 = Fnf::from_process(p2).ok_or_else(|| not_normal(p2))?;
    let (f1, f2) = (q1.future(), q2.future());
    let par = |l: &Fnf, r: &Fnf| Process::par(sync.clone(), l.to_process(), r.to_process());
    let left = sum_of(
        q1.summands
            .iter()
            .filter(|(a, _)| !sync.contains(a))
            .map(|(a, p)| Process::prefix(a.clone(), par(p, &f2))),
    );
    let right = sum_of(
        q2.summands
            .iter()
            .filter(|(a, _)| !sync.contains(a))
            .map(|(a, p)| Process::prefix(a.clone(), par(&f1, p))),
    );
    let mut joint = Vec::new();
    for (a, p) in q1.summands.iter().filter(|(a, _)| sync.contains(a)) {
        for (_, r) in q2.summands.iter().filter(|(b, _)| b == a) {
            joint.push(Process::prefix(a.clone(), par(p, r)));
        }
    }
    let body = Process::choice(Process::choice(left, right), sum_of(joint));
    Ok(match q1.past.or(q2.past) {
        Some(b) => Process::done(b, body),
        None => body,
    })
}

/// F-nf of a reachable process together with the axioms applied.
pub fn normalize_f_traced(p: &Process) -> Result<(Process, Vec<TraceStep>)> {
    if !is_reachable(p) {
        return Err(Error::NotReachable(p.to_string()));
    }
    let mut tr = Tracer { steps: Vec::new() };
    let q = fnf_of(p, "", &mut tr);
    Ok((q.to_process(), tr.steps))
}

pub fn normalize_f(p: &Process) -> Result<Process> {
    normalize_f_traced(p).map(|(q, _)| q)
}

/// Canonical representative of an F-nf: summands sorted and deduplicated,
/// the past action replaced by [`PAST`].
pub fn canonical_f(p: &Process) -> Result<Process> {
    Fnf::from_process(p)
        .map(|q| q.canonical().to_process())
        .ok_or_else(|| Error::NotNormal {
            expected: "F-nf",
            term: p.to_string(),
        })
}

fn rnf_of(u: &BrsProcess, path: &str, tr: &mut Tracer) -> BrsProcess {
    match u {
        BrsProcess::Nil => BrsProcess::Nil,
        BrsProcess::Prefix {
            action,
            executed: true,
            ready,
            cont,
        } => BrsProcess::Prefix {
            action: action.clone(),
            executed: true,
            ready: ready.clone(),
            cont: Box::new(rnf_of(cont, &sub(path, "."), tr)),
        },
        BrsProcess::Prefix { cont, .. } => {
            tr.note("A_R,3", path);
            rnf_of(cont, path, tr)
        }
        BrsProcess::Choice(l, r) => {
            if !l.is_initial() {
                tr.note("A_R,4", path);
                rnf_of(l, path, tr)
            } else if !r.is_initial() {
                tr.note("A_R,2", path);
                tr.note("A_R,4", path);
                rnf_of(r, path, tr)
            } else {
                tr.note("A_R,4", path);
                rnf_of(l, path, tr)
            }
        }
    }
}

pub fn normalize_r_traced(u: &BrsProcess) -> (BrsProcess, Vec<TraceStep>) {
    let mut tr = Tracer { steps: Vec::new() };
    let v = rnf_of(u, "", &mut tr);
    (v, tr.steps)
}

/// The chain of executed prefixes of an encoding.
pub fn normalize_r(u: &BrsProcess) -> BrsProcess {
    normalize_r_traced(u).0
}

fn frnf_of(u: &BrsProcess, path: &str, tr: &mut Tracer) -> BrsProcess {
    match u {
        BrsProcess::Nil => BrsProcess::Nil,
        BrsProcess::Prefix {
            action,
            executed,
            ready,
            cont,
        } => BrsProcess::Prefix {
            action: action.clone(),
            executed: *executed,
            ready: ready.clone(),
            cont: Box::new(frnf_of(cont, &sub(path, "."), tr)),
        },
        BrsProcess::Choice(..) => {
            let parts: Vec<BrsProcess> = u
                .summands()
                .into_iter()
                .map(|s| frnf_of(s, &sub(path, "+"), tr))
                .collect();
            let before = parts.len();
            let (mut head, rest): (Vec<_>, Vec<_>) = parts
                .into_iter()
                .filter(|s| *s != BrsProcess::Nil)
                .partition(|s| !s.is_initial());
            if head.len() + rest.len() < before {
                tr.note("A_FR,3", path);
            }
            if !head.is_empty() && u.summands().first().is_some_and(|s| s.is_initial()) {
                tr.note("A_FR,2", path);
            }
            head.extend(rest);
            BrsProcess::sum(head)
        }
    }
}

pub fn normalize_fr_traced(u: &BrsProcess) -> (BrsProcess, Vec<TraceStep>) {
    let mut tr = Tracer { steps: Vec::new() };
    let v = frnf_of(u, "", &mut tr);
    (v, tr.steps)
}

/// FR-nf of an encoding: `0` summands removed, the executed summand first.
pub fn normalize_fr(u: &BrsProcess) -> BrsProcess {
    normalize_fr_traced(u).0
}

/// Canonical representative of an R-nf or FR-nf: ready sets sorted, initial
/// summands sorted, deduplicated, and absorbed by the executed summand when
/// they equal its initial version.
pub fn canonical_brs(u: &BrsProcess, tag: NormalFormTag) -> Result<BrsProcess> {
    if !is_normal(u, tag) {
        return Err(Error::NotNormal {
            expected: tag.name(),
            term: u.to_string(),
        });
    }
    Ok(canonical_frnf(u))
}

fn canonical_frnf(u: &BrsProcess) -> BrsProcess {
    match u {
        BrsProcess::Nil => BrsProcess::Nil,
        BrsProcess::Prefix {
            action,
            executed,
            ready,
            cont,
        } => BrsProcess::Prefix {
            action: action.clone(),
            executed: *executed,
            ready: ready.sorted().into_iter().collect(),
            cont: Box::new(canonical_frnf(cont)),
        },
        BrsProcess::Choice(..) => {
            let parts: Vec<BrsProcess> = u.summands().into_iter().map(canonical_frnf).collect();
            let (head, mut rest): (Vec<_>, Vec<_>) = parts.into_iter().partition(|s| !s.is_initial());
            if let Some(h) = head.first() {
                let absorbed = canonical_frnf(&h.to_initial());
                rest.retain(|s| *s != absorbed);
            }
            rest.sort_by_cached_key(|s| s.to_string());
            rest.dedup();
            let mut all = head;
            all.extend(rest);
            BrsProcess::sum(all)
        }
    }
}

fn brs_key(u: &BrsProcess, theory: Theory) -> Result<String> {
    let nf = match theory {
        Theory::R => normalize_r(u),
        _ => normalize_fr(u),
    };
    Ok(canonical_brs(&nf, theory.normal_form())?.to_string())
}

/// Canonical normal form of `p` in `theory`, encoding with `order` for the
/// encoding-based theories.
pub fn canonical_with_order(p: &Process, theory: Theory, order: &ExecutionOrder) -> Result<String> {
    match theory {
        Theory::F => Ok(canonical_f(&normalize_f(p)?)?.to_string()),
        _ => brs_key(&encode(p, order)?, theory),
    }
}

/// Everything `prove_eq` compares: the canonical F-nf for `F`; for `R` and
/// `FR`, the canonical normal forms of the encodings under every execution
/// order induced by a history leading to `p`.
pub fn canonical_key(p: &Process, theory: Theory) -> Result<BTreeSet<String>> {
    match theory {
        Theory::F => Ok(BTreeSet::from([canonical_with_order(
            p,
            theory,
            &ExecutionOrder::Lexicographic,
        )?])),
        _ => encodings_over_histories(p)?
            .iter()
            .map(|u| brs_key(u, theory))
            .collect(),
    }
}

/// Decides derivable equality in `theory` by comparing canonical normal forms.
pub fn prove_eq(p1: &Process, p2: &Process, theory: Theory) -> Result<bool> {
    Ok(canonical_key(p1, theory)? == canonical_key(p2, theory)?)
}

/// As [`prove_eq`] but with one fixed execution order for both encodings.
pub fn prove_eq_with_order(p1: &Process, p2: &Process, theory: Theory, order: &ExecutionOrder) -> Result<bool> {
    Ok(canonical_with_order(p1, theory, order)? == canonical_with_order(p2, theory, order)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::{default_order, encode};
    use crate::syntax::{parse, parse_sync_list};

    fn p(s: &str) -> Process {
        parse(s).unwrap()
    }

    fn enc(s: &str) -> BrsProcess {
        encode(&p(s), &default_order(&p(s))).unwrap()
    }

    #[test]
    fn forward_normal_forms() {
        assert_eq!(normalize_f(&p("a!.b!.c.0")).unwrap().to_string(), "b!.c.0");
        assert_eq!(normalize_f(&p("a.0 |[]| b.0")).unwrap().to_string(), "a.b.0 + b.a.0");
        assert_eq!(normalize_f(&p("a!.b.0 + c.0")).unwrap().to_string(), "a!.b.0");
        assert_eq!(normalize_f(&p("0 |[a]| 0")).unwrap(), Process::Nil);
    }

    #[test]
    fn trace_names_axioms() {
        let (_, steps) = normalize_f_traced(&p("a!.b.0 + c.0")).unwrap();
        assert_eq!(steps[0].to_string(), "A_F,7 @ root");
        let (_, steps) = normalize_f_traced(&p("c.0 + a!.b!.0")).unwrap();
        let shown: Vec<String> = steps.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["A_F,6 @ +r", "A_F,2 @ root", "A_F,7 @ root"]);
    }

    #[test]
    fn expansion_law_single_step() {
        let none = SyncSet::empty();
        let e = expansion_law_f(&p("a.0"), &p("b.0"), &none).unwrap();
        assert_eq!(e.to_string(), "a.(0 |[]| b.0) + b.(a.0 |[]| 0) + 0");
        let e = expansion_law_f(&Process::Nil, &Process::Nil, &parse_sync_list("a").unwrap()).unwrap();
        assert_eq!(e.to_string(), "0 + 0 + 0");
        let e = expansion_law_f(&p("a!.b.0"), &p("c.0"), &none).unwrap();
        assert_eq!(e.to_string(), "a!.(b.(0 |[]| c.0) + c.(b.0 |[]| 0) + 0)");
        assert!(matches!(
            expansion_law_f(&p("a.0 |[]| b.0"), &p("c.0"), &none),
            Err(Error::NotNormal { .. })
        ));
    }

    #[test]
    fn canonical_forward() {
        let c = |s: &str| canonical_f(&p(s)).unwrap();
        assert_eq!(c("a!.b.0"), c("c!.b.0"));
        assert_eq!(c("a.0 + a.0"), c("a.0"));
        assert_eq!(c("b.0 + a.0"), c("a.0 + b.0"));
        assert!(canonical_f(&p("a.0 |[]| b.0")).is_err());
    }

    #[test]
    fn reverse_normal_forms() {
        assert_eq!(normalize_r(&enc("a.b.0")), BrsProcess::Nil);
        assert_eq!(normalize_r(&enc("a!.b!.0")).to_string(), "<a!,{a}>.<b!,{b}>.0");
        assert_eq!(normalize_r(&enc("a!.b.0 + c.0")).to_string(), "<a!,{a}>.0");
    }

    #[test]
    fn forward_reverse_normal_forms() {
        assert_eq!(normalize_fr(&enc("a.0 + 0")), enc("a.0"));
        let u = enc("a!.0 |[]| b.0");
        assert_eq!(
            normalize_fr(&u).to_string(),
            "<a!,{a}>.<b,{a,b}>.0 + <b,{b}>.<a,{b,a}>.0"
        );
        let twice = normalize_fr(&enc("a.0 + a.0"));
        assert_eq!(twice.summands().len(), 2);
        assert_eq!(canonical_brs(&twice, NormalFormTag::FRnf).unwrap(), enc("a.0"));
        let head = crate::syntax::parse_brs("<a!,{a}>.0 + <a,{a}>.0").unwrap();
        assert_eq!(
            canonical_brs(&head, NormalFormTag::FRnf).unwrap().to_string(),
            "<a!,{a}>.0"
        );
    }

    #[test]
    fn proofs() {
        assert!(prove_eq(&p("a.0 |[]| b.0"), &p("a.b.0 + b.a.0"), Theory::F).unwrap());
        assert!(!prove_eq(&p("a.0 |[]| b.0"), &p("a.b.0 + b.a.0"), Theory::FR).unwrap());
        assert!(prove_eq(&p("a!.b.0"), &p("c!.b.0"), Theory::F).unwrap());
        for t in Theory::ALL {
            assert!(prove_eq(&p("a!.0 |[]| b.0"), &p("a!.0 |[]| b.0"), t).unwrap());
        }
    }
}
