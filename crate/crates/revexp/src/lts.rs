//! Proved transition relations and finite transition systems built from them.

use std::collections::{HashMap, VecDeque};
use std::fmt::Display;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::encoding::BrsProcess;
use crate::error::{Error, Result};
use crate::terms::{act, is_initial, Action, ActionSet, Process, ProofTerm};

/// Default bound on the number of states of a built system.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// State cap from `REVEXP_STATE_CAP`, or the default.
pub fn state_cap() -> usize {
    std::env::var("REVEXP_STATE_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_STATE_CAP)
}

/// All forward steps of `p`, in rule order with the left operand first.
pub fn forward_steps(p: &Process) -> Vec<(ProofTerm, Process)> {
    let mut out = Vec::new();
    match p {
        Process::Nil => {}
        Process::Prefix {
            action,
            executed: false,
            cont,
        } => {
            if is_initial(cont) {
                out.push((
                    ProofTerm::Act(action.clone()),
                    Process::done(action.clone(), (**cont).clone()),
                ));
            }
        }
        Process::Prefix { action, cont, .. } => {
            for (t, c) in forward_steps(cont) {
                out.push((ProofTerm::Dot(Box::new(t)), Process::done(action.clone(), c)));
            }
        }
        Process::Choice(l, r) => {
            if is_initial(r) {
                for (t, l2) in forward_steps(l) {
                    out.push((ProofTerm::PlusL(Box::new(t)), Process::choice(l2, (**r).clone())));
                }
            }
            if is_initial(l) {
                for (t, r2) in forward_steps(r) {
                    out.push((ProofTerm::PlusR(Box::new(t)), Process::choice((**l).clone(), r2)));
                }
            }
        }
        Process::Par { sync, left, right } => {
            let ls = forward_steps(left);
            let rs = forward_steps(right);
            let action_of = |t: &ProofTerm| act(t).ok().cloned();
            for (t, l2) in &ls {
                if action_of(t).is_some_and(|a| !sync.contains(&a)) {
                    out.push((
                        ProofTerm::ParL(Box::new(t.clone())),
                        Process::par(sync.clone(), l2.clone(), (**right).clone()),
                    ));
                }
            }
            for (t, r2) in &rs {
                if action_of(t).is_some_and(|a| !sync.contains(&a)) {
                    out.push((
                        ProofTerm::ParR(Box::new(t.clone())),
                        Process::par(sync.clone(), (**left).clone(), r2.clone()),
                    ));
                }
            }
            for (t1, l2) in &ls {
                let Some(a) = action_of(t1).filter(|a| sync.contains(a)) else {
                    continue;
                };
                for (t2, r2) in &rs {
                    if action_of(t2).as_ref() == Some(&a) {
                        out.push((
                            ProofTerm::Syn(Box::new(t1.clone()), Box::new(t2.clone())),
                            Process::par(sync.clone(), l2.clone(), r2.clone()),
                        ));
                    }
                }
            }
        }
    }
    out
}

/// Label of a transition between brs-annotated processes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BrsLabel {
    pub proof: ProofTerm,
    pub ready: ActionSet,
}

/// All forward steps of a brs-annotated process; each carries the ready set
/// stored in the prefix it fires.
pub fn brs_forward_steps(u: &BrsProcess) -> Vec<(BrsLabel, BrsProcess)> {
    let mut out = Vec::new();
    match u {
        BrsProcess::Nil => {}
        BrsProcess::Prefix {
            action,
            executed: false,
            ready,
            cont,
        } => {
            if cont.is_initial() {
                out.push((
                    BrsLabel {
                        proof: ProofTerm::Act(action.clone()),
                        ready: ready.clone(),
                    },
                    BrsProcess::Prefix {
                        action: action.clone(),
                        executed: true,
                        ready: ready.clone(),
                        cont: cont.clone(),
                    },
                ));
            }
        }
        BrsProcess::Prefix {
            action, ready, cont, ..
        } => {
            for (l, c) in brs_forward_steps(cont) {
                out.push((
                    BrsLabel {
                        proof: ProofTerm::Dot(Box::new(l.proof)),
                        ready: l.ready,
                    },
                    BrsProcess::Prefix {
                        action: action.clone(),
                        executed: true,
                        ready: ready.clone(),
                        cont: Box::new(c),
                    },
                ));
            }
        }
        BrsProcess::Choice(l, r) => {
            if r.is_initial() {
                for (lab, l2) in brs_forward_steps(l) {
                    out.push((
                        BrsLabel {
                            proof: ProofTerm::PlusL(Box::new(lab.proof)),
                            ready: lab.ready,
                        },
                        BrsProcess::Choice(Box::new(l2), r.clone()),
                    ));
                }
            }
            if l.is_initial() {
                for (lab, r2) in brs_forward_steps(r) {
                    out.push((
                        BrsLabel {
                            proof: ProofTerm::PlusR(Box::new(lab.proof)),
                            ready: lab.ready,
                        },
                        BrsProcess::Choice(l.clone(), Box::new(r2)),
                    ));
                }
            }
        }
    }
    out
}

/// What equivalence checking compares on a transition label.
pub trait Observe {
    type Obs: Clone + Ord + Hash + std::fmt::Debug;
    fn observe(&self) -> Self::Obs;
}

impl Observe for ProofTerm {
    type Obs = Action;
    fn observe(&self) -> Action {
        act(self).cloned().expect("semantics only produces defined proof terms")
    }
}

impl Observe for BrsLabel {
    type Obs = (Action, Vec<Action>);
    fn observe(&self) -> Self::Obs {
        (
            act(&self.proof)
                .cloned()
                .expect("semantics only produces defined proof terms"),
            self.ready.sorted(),
        )
    }
}

/// States of a transition system.
pub trait State: Clone + Eq + Hash + Display {
    type Label: Clone + Observe + Display;
    fn initial(&self) -> bool;
    fn steps(&self) -> Vec<(Self::Label, Self)>;
    fn proof_of(label: &Self::Label) -> &ProofTerm;
    fn ready_of(_label: &Self::Label) -> Option<&ActionSet> {
        None
    }
}

impl State for Process {
    type Label = ProofTerm;
    fn initial(&self) -> bool {
        is_initial(self)
    }
    fn steps(&self) -> Vec<(ProofTerm, Process)> {
        forward_steps(self)
    }
    fn proof_of(label: &ProofTerm) -> &ProofTerm {
        label
    }
}

impl Display for BrsLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} / {}", self.proof, self.ready)
    }
}

impl State for BrsProcess {
    type Label = BrsLabel;
    fn initial(&self) -> bool {
        self.is_initial()
    }
    fn steps(&self) -> Vec<(BrsLabel, BrsProcess)> {
        brs_forward_steps(self)
    }
    fn proof_of(label: &BrsLabel) -> &ProofTerm {
        &label.proof
    }
    fn ready_of(label: &BrsLabel) -> Option<&ActionSet> {
        Some(&label.ready)
    }
}

/// A transition between interned states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition<L> {
    pub src: usize,
    pub label: L,
    pub dst: usize,
}

/// A finite transition system closed under forward steps from `root`.
#[derive(Clone, Debug)]
pub struct Lts<S: State> {
    pub states: Vec<S>,
    pub transitions: Vec<Transition<S::Label>>,
    pub root: usize,
    pub initial: Vec<bool>,
    index: HashMap<S, usize>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
}

pub type ProcessLts = Lts<Process>;
pub type BrsLts = Lts<BrsProcess>;

impl<S: State> Lts<S> {
    /// Breadth-first closure under forward steps.
    pub fn build(root: S, cap: usize) -> Result<Self> {
        let mut lts = Lts::empty();
        lts.root = lts.add_root(root, cap)?;
        Ok(lts)
    }

    /// A transition system with no states.
    pub fn empty() -> Self {
        Lts {
            states: Vec::new(),
            transitions: Vec::new(),
            root: 0,
            initial: Vec::new(),
            index: HashMap::new(),
            outgoing: Vec::new(),
            incoming: Vec::new(),
        }
    }

    /// Adds the closure of `root` to the system, sharing states already
    /// present, and returns the id of `root`.
    pub fn add_root(&mut self, root: S, cap: usize) -> Result<usize> {
        let before = self.states.len();
        let id = self.intern(root, cap)?;
        if id < before {
            return Ok(id);
        }
        let mut queue = VecDeque::from([id]);
        while let Some(s) = queue.pop_front() {
            for (label, target) in self.states[s].steps() {
                let fresh = self.states.len();
                let t = self.intern(target, cap)?;
                if t == fresh {
                    queue.push_back(t);
                }
                let tid = self.transitions.len();
                self.transitions.push(Transition { src: s, label, dst: t });
                self.outgoing[s].push(tid);
                self.incoming[t].push(tid);
            }
        }
        Ok(id)
    }

    fn intern(&mut self, s: S, cap: usize) -> Result<usize> {
        if let Some(&id) = self.index.get(&s) {
            return Ok(id);
        }
        if self.states.len() >= cap {
            return Err(Error::StateBudget(cap));
        }
        let id = self.states.len();
        self.initial.push(s.initial());
        self.index.insert(s.clone(), id);
        self.states.push(s);
        self.outgoing.push(Vec::new());
        self.incoming.push(Vec::new());
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn id_of(&self, s: &S) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn outgoing(&self, s: usize) -> Result<Vec<&Transition<S::Label>>> {
        self.check(s)?;
        Ok(self.outgoing[s].iter().map(|&i| &self.transitions[i]).collect())
    }

    /// Transitions entering `s`; read backward they are the undo steps of `s`.
    pub fn incoming(&self, s: usize) -> Result<Vec<&Transition<S::Label>>> {
        self.check(s)?;
        Ok(self.incoming[s].iter().map(|&i| &self.transitions[i]).collect())
    }

    fn check(&self, s: usize) -> Result<()> {
        if s < self.states.len() {
            Ok(())
        } else {
            Err(Error::UnknownState(s))
        }
    }

    pub fn to_json_value(&self) -> LtsJson {
        LtsJson {
            root: self.root,
            states: self
                .states
                .iter()
                .enumerate()
                .map(|(id, s)| JsonState {
                    id,
                    term: s.to_string(),
                    initial: self.initial[id],
                })
                .collect(),
            transitions: self
                .transitions
                .iter()
                .map(|t| JsonTransition {
                    src: t.src,
                    proof: S::proof_of(&t.label).to_string(),
                    ready: S::ready_of(&t.label).map(|r| r.iter().map(|a| a.to_string()).collect()),
                    dst: t.dst,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("plain data serializes")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph lts {\n");
        for (id, s) in self.states.iter().enumerate() {
            let shape = if id == self.root { ", shape=doublecircle" } else { "" };
            out.push_str(&format!("  s{id} [label=\"{}\"{shape}];\n", escape(&s.to_string())));
        }
        for t in &self.transitions {
            out.push_str(&format!(
                "  s{} -> s{} [label=\"{}\"];\n",
                t.src,
                t.dst,
                escape(&t.label.to_string())
            ));
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Export format.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
}

pub fn export<S: State>(lts: &Lts<S>, format: Format) -> String {
    match format {
        Format::Dot => lts.to_dot(),
        Format::Json => lts.to_json(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LtsJson {
    pub root: usize,
    pub states: Vec<JsonState>,
    pub transitions: Vec<JsonTransition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonState {
    pub id: usize,
    pub term: String,
    pub initial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTransition {
    pub src: usize,
    pub proof: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ready: Option<Vec<String>>,
    pub dst: usize,
}

/// Builds the proved transition system of `root` under the configured cap.
pub fn build_lts(root: &Process) -> Result<ProcessLts> {
    Lts::build(root.clone(), state_cap())
}

pub fn build_brs_lts(root: &BrsProcess) -> Result<BrsLts> {
    Lts::build(root.clone(), state_cap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, parse_brs};

    fn p(s: &str) -> Process {
        parse(s).unwrap()
    }

    fn labels(p: &Process) -> Vec<(String, String)> {
        forward_steps(p)
            .into_iter()
            .map(|(t, q)| (t.to_string(), q.to_string()))
            .collect()
    }

    #[test]
    fn choice_of_equal_prefixes() {
        assert_eq!(
            labels(&p("a.0 + a.0")),
            vec![
                ("+la".to_string(), "a!.0 + a.0".to_string()),
                ("+ra".to_string(), "a.0 + a!.0".to_string())
            ]
        );
    }

    #[test]
    fn blocked_and_synchronized() {
        assert!(forward_steps(&p("a.0 |[a]| 0")).is_empty());
        assert_eq!(
            labels(&p("c.0 |[c]| c.0")),
            vec![("<c,c>".to_string(), "c!.0 |[c]| c!.0".to_string())]
        );
    }

    #[test]
    fn executed_prefix_propagates() {
        assert_eq!(labels(&p("a!.b.0")), vec![(".b".to_string(), "a!.b!.0".to_string())]);
        assert!(forward_steps(&p("a!.0 + b.0")).is_empty());
    }

    #[test]
    fn brs_steps() {
        let u = parse_brs("<a,{a}>.<b,{b}>.0").unwrap();
        let steps = brs_forward_steps(&u);
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].0.to_string(), "a / {a}");
        assert_eq!(crate::syntax::render_brs(&steps[0].1), "<a!,{a}>.<b,{b}>.0");
        let v = parse_brs("<a!,{a}>.<b,{a,b}>.0").unwrap();
        let steps = brs_forward_steps(&v);
        assert_eq!(steps[0].0.to_string(), ".b / {a,b}");
        assert!(brs_forward_steps(&BrsProcess::Nil).is_empty());
    }

    #[test]
    fn interleaving_diamond_shapes() {
        let diamond = build_lts(&p("a.0 |[]| b.0")).unwrap();
        assert_eq!((diamond.len(), diamond.transitions.len()), (4, 4));
        let tree = build_lts(&p("a.b.0 + b.a.0")).unwrap();
        assert_eq!((tree.len(), tree.transitions.len()), (5, 4));
        let bottom = diamond.id_of(&p("a!.0 |[]| b!.0")).unwrap();
        let inc = diamond.incoming(bottom).unwrap();
        let acts: Vec<_> = inc.iter().map(|t| act(&t.label).unwrap().to_string()).collect();
        assert_eq!(acts, vec!["b", "a"]);
        let left = tree.id_of(&p("a!.b!.0 + b.a.0")).unwrap();
        assert_eq!(tree.incoming(left).unwrap().len(), 1);
        assert!(tree.incoming(tree.root).unwrap().is_empty());
        assert_eq!(tree.incoming(99), Err(Error::UnknownState(99)));
    }

    #[test]
    fn state_cap_is_enforced() {
        let r = Lts::build(p("a.0 |[]| b.0"), 3);
        assert_eq!(r.unwrap_err(), Error::StateBudget(3));
    }

    #[test]
    fn exports() {
        let one = build_lts(&Process::Nil).unwrap();
        let dot = one.to_dot();
        assert!(dot.starts_with("digraph lts {"));
        assert_eq!(dot.matches("->").count(), 0);
        let lts = build_lts(&p("a.0 |[]| b.0")).unwrap();
        let back: LtsJson = serde_json::from_str(&lts.to_json()).unwrap();
        assert_eq!((back.states.len(), back.transitions.len()), (4, 4));
        assert!(back.transitions.iter().all(|t| t.ready.is_none()));
    }
}
