//! Backward-ready-set encoding of processes into sequential annotated terms.
//!
//! Each prefix of the encoding carries the backward ready set of the state
//! reached by firing it. Parallel compositions are expanded into choices; the
//! executed part of a parallel composition is serialized by an
//! [`ExecutionOrder`].

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::lts::brs_forward_steps;
use crate::terms::{
    act, brs, is_initial, is_reachable, replace_at, to_initial, upd, wrap_path, Action, ActionSet, Marker, Process,
    ProofTerm, SyncSet,
};

/// A sequential process whose prefixes carry an action set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BrsProcess {
    Nil,
    Prefix {
        action: Action,
        executed: bool,
        ready: ActionSet,
        cont: Box<BrsProcess>,
    },
    Choice(Box<BrsProcess>, Box<BrsProcess>),
}

impl BrsProcess {
    pub fn is_initial(&self) -> bool {
        match self {
            BrsProcess::Nil => true,
            BrsProcess::Prefix { executed, cont, .. } => !executed && cont.is_initial(),
            BrsProcess::Choice(l, r) => l.is_initial() && r.is_initial(),
        }
    }

    pub fn is_wellformed(&self) -> bool {
        match self {
            BrsProcess::Nil => true,
            BrsProcess::Prefix {
                executed: false, cont, ..
            } => cont.is_initial(),
            BrsProcess::Prefix { cont, .. } => cont.is_wellformed(),
            BrsProcess::Choice(l, r) => (l.is_wellformed() && r.is_initial()) || (l.is_initial() && r.is_wellformed()),
        }
    }

    pub fn to_initial(&self) -> BrsProcess {
        match self {
            BrsProcess::Nil => BrsProcess::Nil,
            BrsProcess::Prefix {
                action, ready, cont, ..
            } => BrsProcess::Prefix {
                action: action.clone(),
                executed: false,
                ready: ready.clone(),
                cont: Box::new(cont.to_initial()),
            },
            BrsProcess::Choice(l, r) => BrsProcess::Choice(Box::new(l.to_initial()), Box::new(r.to_initial())),
        }
    }

    /// Backward ready set of the term read as a sequential process.
    pub fn brs(&self) -> ActionSet {
        match self {
            BrsProcess::Nil => ActionSet::new(),
            BrsProcess::Prefix { executed: false, .. } => ActionSet::new(),
            BrsProcess::Prefix { action, cont, .. } => {
                if cont.is_initial() {
                    ActionSet::singleton(action.clone())
                } else {
                    cont.brs()
                }
            }
            BrsProcess::Choice(l, r) => match (l.is_initial(), r.is_initial()) {
                (true, true) => ActionSet::new(),
                (false, _) => l.brs(),
                (true, false) => r.brs(),
            },
        }
    }

    /// The deepest executed action, if any.
    pub fn last_executed(&self) -> Option<&Action> {
        match self {
            BrsProcess::Prefix {
                action,
                executed: true,
                cont,
                ..
            } => cont.last_executed().or(Some(action)),
            BrsProcess::Choice(l, r) => l.last_executed().or_else(|| r.last_executed()),
            _ => None,
        }
    }

    /// Summands of a (nested) choice, left to right.
    pub fn summands(&self) -> Vec<&BrsProcess> {
        match self {
            BrsProcess::Choice(l, r) => {
                let mut v = l.summands();
                v.extend(r.summands());
                v
            }
            other => vec![other],
        }
    }

    /// Left-nested choice of `items`; `0` when empty.
    pub fn sum(items: Vec<BrsProcess>) -> BrsProcess {
        let mut it = items.into_iter();
        match it.next() {
            None => BrsProcess::Nil,
            Some(first) => it.fold(first, |acc, u| BrsProcess::Choice(Box::new(acc), Box::new(u))),
        }
    }

    /// Representative modulo associativity and commutativity of choice.
    pub fn ac_canonical(&self) -> BrsProcess {
        match self {
            BrsProcess::Nil => BrsProcess::Nil,
            BrsProcess::Prefix {
                action,
                executed,
                ready,
                cont,
            } => BrsProcess::Prefix {
                action: action.clone(),
                executed: *executed,
                ready: ActionSet::from_iter(ready.sorted()),
                cont: Box::new(cont.ac_canonical()),
            },
            BrsProcess::Choice(..) => {
                let mut items: Vec<BrsProcess> = self.summands().into_iter().map(|u| u.ac_canonical()).collect();
                items.sort_by_cached_key(|u| u.to_string());
                BrsProcess::sum(items)
            }
        }
    }
}

impl fmt::Display for BrsProcess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::render_brs(self))
    }
}

impl fmt::Debug for BrsProcess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// What a transition shows under the backward-ready-set observation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Observation {
    pub action: Action,
    pub ready: ActionSet,
}

/// Observation of a transition labelled `t` that reaches `target`.
pub fn observe(t: &ProofTerm, target: &Process) -> Result<Observation> {
    Ok(Observation {
        action: act(t)?.clone(),
        ready: brs(target),
    })
}

/// Order in which executed actions of parallel components are serialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExecutionOrder {
    /// Compare proof terms by their textual form.
    Lexicographic,
    /// Earlier entries of a recorded history come first; proof terms that
    /// fire no recorded prefix follow, compared textually.
    History(Vec<ProofTerm>),
}

impl ExecutionOrder {
    pub fn compare(&self, a: &ProofTerm, b: &ProofTerm) -> Ordering {
        match self {
            ExecutionOrder::Lexicographic => a.to_string().cmp(&b.to_string()),
            ExecutionOrder::History(h) => {
                let rank = |t: &ProofTerm| {
                    let addrs = t.addresses();
                    h.iter()
                        .position(|e| e.addresses().iter().any(|x| addrs.contains(x)))
                        .unwrap_or(usize::MAX)
                };
                rank(a).cmp(&rank(b)).then_with(|| a.to_string().cmp(&b.to_string()))
            }
        }
    }

    pub fn le(&self, a: &ProofTerm, b: &ProofTerm) -> bool {
        self.compare(a, b) != Ordering::Greater
    }
}

/// The order induced by the lexicographically least history leading to `p`:
/// at every step the enabled move with the smallest textual proof term that
/// can still reach `p` is taken.
pub fn default_order(p: &Process) -> ExecutionOrder {
    let mut history = Vec::new();
    let mut s = to_initial(p);
    while s != *p {
        let step = crate::lts::forward_steps(&s)
            .into_iter()
            .filter(|(_, next)| executed_subset(next, p))
            .min_by_key(|(t, _)| t.to_string());
        match step {
            Some((t, next)) => {
                history.push(t);
                s = next;
            }
            None => break,
        }
    }
    ExecutionOrder::History(history)
}

// Encoding skeleton: prefixes carry the proof term that fires them, relative
// to the root of the subterm being encoded. Ready sets are filled in later.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Tree {
    Nil,
    Pre {
        proof: ProofTerm,
        executed: bool,
        next: Box<Tree>,
    },
    Sum(Box<Tree>, Box<Tree>),
}

struct Branch {
    proof: ProofTerm,
    executed: bool,
    next: Tree,
}

impl Tree {
    fn pre(proof: ProofTerm, executed: bool, next: Tree) -> Tree {
        Tree::Pre {
            proof,
            executed,
            next: Box::new(next),
        }
    }

    fn wrap(&self, m: Marker) -> Tree {
        match self {
            Tree::Nil => Tree::Nil,
            Tree::Pre { proof, executed, next } => Tree::pre(m.wrap(proof.clone()), *executed, next.wrap(m)),
            Tree::Sum(l, r) => Tree::Sum(Box::new(l.wrap(m)), Box::new(r.wrap(m))),
        }
    }

    fn is_initial(&self) -> bool {
        match self {
            Tree::Nil => true,
            Tree::Pre { executed, next, .. } => !executed && next.is_initial(),
            Tree::Sum(l, r) => l.is_initial() && r.is_initial(),
        }
    }

    fn to_initial(&self) -> Tree {
        match self {
            Tree::Nil => Tree::Nil,
            Tree::Pre { proof, next, .. } => Tree::pre(proof.clone(), false, next.to_initial()),
            Tree::Sum(l, r) => Tree::Sum(Box::new(l.to_initial()), Box::new(r.to_initial())),
        }
    }

    fn branches(&self) -> Vec<Branch> {
        match self {
            Tree::Nil => Vec::new(),
            Tree::Pre { proof, executed, next } => vec![Branch {
                proof: proof.clone(),
                executed: *executed,
                next: (**next).clone(),
            }],
            Tree::Sum(l, r) => {
                let mut v = l.branches();
                v.extend(r.branches());
                v
            }
        }
    }

    // Summation with empty summands dropped.
    fn sum(items: Vec<Tree>) -> Tree {
        let mut it = items.into_iter().filter(|t| *t != Tree::Nil);
        match it.next() {
            None => Tree::Nil,
            Some(first) => it.fold(first, |acc, t| Tree::Sum(Box::new(acc), Box::new(t))),
        }
    }

    // Treats a brs term as a skeleton whose proof terms follow its own shape.
    fn from_brs(u: &BrsProcess) -> Tree {
        match u {
            BrsProcess::Nil => Tree::Nil,
            BrsProcess::Prefix {
                action, executed, cont, ..
            } => Tree::pre(
                ProofTerm::Act(action.clone()),
                *executed,
                Tree::from_brs(cont).wrap(Marker::Dot),
            ),
            BrsProcess::Choice(l, r) => Tree::Sum(
                Box::new(Tree::from_brs(l).wrap(Marker::PlusL)),
                Box::new(Tree::from_brs(r).wrap(Marker::PlusR)),
            ),
        }
    }
}

struct Expander<'a> {
    order: &'a ExecutionOrder,
}

impl Expander<'_> {
    fn build(&self, p: &Process, path: &mut Vec<Marker>) -> Result<Tree> {
        Ok(match p {
            Process::Nil => Tree::Nil,
            Process::Prefix { action, executed, cont } => {
                path.push(Marker::Dot);
                let next = self.build(cont, path)?;
                path.pop();
                Tree::pre(ProofTerm::Act(action.clone()), *executed, next.wrap(Marker::Dot))
            }
            Process::Choice(l, r) => {
                path.push(Marker::PlusL);
                let lt = self.build(l, path)?;
                path.pop();
                path.push(Marker::PlusR);
                let rt = self.build(r, path)?;
                path.pop();
                Tree::Sum(Box::new(lt.wrap(Marker::PlusL)), Box::new(rt.wrap(Marker::PlusR)))
            }
            Process::Par { sync, left, right } => {
                path.push(Marker::ParL);
                let lt = self.build(left, path)?;
                path.pop();
                path.push(Marker::ParR);
                let rt = self.build(right, path)?;
                path.pop();
                self.expand(&lt, &rt, sync, path)?
            }
        })
    }

    fn expand(&self, t1: &Tree, t2: &Tree, sync: &SyncSet, path: &[Marker]) -> Result<Tree> {
        let in_sync = |t: &ProofTerm| -> Result<bool> { Ok(sync.contains(act(t)?)) };
        let same_act = |a: &ProofTerm, b: &ProofTerm| -> Result<bool> { Ok(act(a)? == act(b)?) };
        let left = |t: &ProofTerm| ProofTerm::ParL(Box::new(t.clone()));
        let right = |t: &ProofTerm| ProofTerm::ParR(Box::new(t.clone()));
        let syn = |a: &ProofTerm, b: &ProofTerm| ProofTerm::Syn(Box::new(a.clone()), Box::new(b.clone()));

        let mut out = Vec::new();
        match (t1.is_initial(), t2.is_initial()) {
            (true, true) => {
                let (b1, b2) = (t1.branches(), t2.branches());
                for b in &b1 {
                    if !in_sync(&b.proof)? {
                        out.push(Tree::pre(left(&b.proof), false, self.expand(&b.next, t2, sync, path)?));
                    }
                }
                for b in &b2 {
                    if !in_sync(&b.proof)? {
                        out.push(Tree::pre(right(&b.proof), false, self.expand(t1, &b.next, sync, path)?));
                    }
                }
                for x in &b1 {
                    if !in_sync(&x.proof)? {
                        continue;
                    }
                    for y in &b2 {
                        if same_act(&x.proof, &y.proof)? {
                            out.push(Tree::pre(
                                syn(&x.proof, &y.proof),
                                false,
                                self.expand(&x.next, &y.next, sync, path)?,
                            ));
                        }
                    }
                }
            }
            (false, true) => {
                let (head, alts) = split(t1)?;
                if in_sync(&head.proof)? {
                    return Err(unreachable_shape(&head.proof));
                }
                let init1 = t1.to_initial();
                out.push(Tree::pre(
                    left(&head.proof),
                    true,
                    self.expand(&head.next, t2, sync, path)?,
                ));
                for b in &alts {
                    if !in_sync(&b.proof)? {
                        out.push(Tree::pre(left(&b.proof), false, self.expand(&b.next, t2, sync, path)?));
                    }
                }
                let b2 = t2.branches();
                for b in &b2 {
                    if !in_sync(&b.proof)? {
                        out.push(Tree::pre(
                            right(&b.proof),
                            false,
                            self.expand(&init1, &b.next, sync, path)?,
                        ));
                    }
                }
                self.sync_group(&mut out, &alts, &b2, sync, path)?;
            }
            (true, false) => {
                let (head, alts) = split(t2)?;
                if in_sync(&head.proof)? {
                    return Err(unreachable_shape(&head.proof));
                }
                let init2 = t2.to_initial();
                out.push(Tree::pre(
                    right(&head.proof),
                    true,
                    self.expand(t1, &head.next, sync, path)?,
                ));
                for b in &alts {
                    if !in_sync(&b.proof)? {
                        out.push(Tree::pre(right(&b.proof), false, self.expand(t1, &b.next, sync, path)?));
                    }
                }
                let b1 = t1.branches();
                for b in &b1 {
                    if !in_sync(&b.proof)? {
                        out.push(Tree::pre(
                            left(&b.proof),
                            false,
                            self.expand(&b.next, &init2, sync, path)?,
                        ));
                    }
                }
                self.sync_group(&mut out, &b1, &alts, sync, path)?;
            }
            (false, false) => {
                let (h1, alts1) = split(t1)?;
                let (h2, alts2) = split(t2)?;
                let (s1, s2) = (in_sync(&h1.proof)?, in_sync(&h2.proof)?);
                let (init1, init2) = (t1.to_initial(), t2.to_initial());
                let global_l = wrap_path(path, left(&h1.proof));
                let global_r = wrap_path(path, right(&h2.proof));
                if s1 && s2 {
                    if !same_act(&h1.proof, &h2.proof)? {
                        return Err(Error::OrderIncomparable(
                            wrap_path(path, left(&h1.proof)).to_string(),
                            wrap_path(path, right(&h2.proof)).to_string(),
                        ));
                    }
                    out.push(Tree::pre(
                        syn(&h1.proof, &h2.proof),
                        true,
                        self.expand(&h1.next, &h2.next, sync, path)?,
                    ));
                    self.free_group(&mut out, &alts1, &init2, true, sync, path)?;
                    self.free_group(&mut out, &alts2, &init1, false, sync, path)?;
                    let lefts = with_head(&h1, &alts1);
                    let rights = with_head(&h2, &alts2);
                    for (i, x) in lefts.iter().enumerate() {
                        if !in_sync(&x.proof)? {
                            continue;
                        }
                        for (j, y) in rights.iter().enumerate() {
                            if (i, j) != (0, 0) && same_act(&x.proof, &y.proof)? {
                                out.push(Tree::pre(
                                    syn(&x.proof, &y.proof),
                                    false,
                                    self.expand(&x.next.to_initial(), &y.next.to_initial(), sync, path)?,
                                ));
                            }
                        }
                    }
                } else if !s1 && (s2 || self.order.le(&global_l, &global_r)) {
                    out.push(Tree::pre(left(&h1.proof), true, self.expand(&h1.next, t2, sync, path)?));
                    if !s2 {
                        out.push(Tree::pre(
                            right(&h2.proof),
                            false,
                            self.expand(&init1, &h2.next.to_initial(), sync, path)?,
                        ));
                    }
                    self.free_group(&mut out, &alts1, &init2, true, sync, path)?;
                    self.free_group(&mut out, &alts2, &init1, false, sync, path)?;
                    let rights = if s2 {
                        with_head(&h2, &alts2)
                    } else {
                        alts2.iter().map(copy).collect()
                    };
                    self.sync_group(&mut out, &alts1, &rights, sync, path)?;
                } else {
                    out.push(Tree::pre(
                        right(&h2.proof),
                        true,
                        self.expand(t1, &h2.next, sync, path)?,
                    ));
                    if !s1 {
                        out.push(Tree::pre(
                            left(&h1.proof),
                            false,
                            self.expand(&h1.next.to_initial(), &init2, sync, path)?,
                        ));
                    }
                    self.free_group(&mut out, &alts2, &init1, false, sync, path)?;
                    self.free_group(&mut out, &alts1, &init2, true, sync, path)?;
                    let lefts = if s1 {
                        with_head(&h1, &alts1)
                    } else {
                        alts1.iter().map(copy).collect()
                    };
                    self.sync_group(&mut out, &lefts, &alts2, sync, path)?;
                }
            }
        }
        Ok(Tree::sum(out))
    }

    // Unsynchronized moves of one side from its initial alternatives, the
    // other side being reset to `other`.
    fn free_group(
        &self,
        out: &mut Vec<Tree>,
        alts: &[Branch],
        other: &Tree,
        on_left: bool,
        sync: &SyncSet,
        path: &[Marker],
    ) -> Result<()> {
        for b in alts {
            if sync.contains(act(&b.proof)?) {
                continue;
            }
            let next = b.next.to_initial();
            let (proof, rest) = if on_left {
                (
                    ProofTerm::ParL(Box::new(b.proof.clone())),
                    self.expand(&next, other, sync, path)?,
                )
            } else {
                (
                    ProofTerm::ParR(Box::new(b.proof.clone())),
                    self.expand(other, &next, sync, path)?,
                )
            };
            out.push(Tree::pre(proof, false, rest));
        }
        Ok(())
    }

    fn sync_group(
        &self,
        out: &mut Vec<Tree>,
        lefts: &[Branch],
        rights: &[Branch],
        sync: &SyncSet,
        path: &[Marker],
    ) -> Result<()> {
        for x in lefts {
            let a = act(&x.proof)?;
            if !sync.contains(a) {
                continue;
            }
            for y in rights {
                if act(&y.proof)? == a {
                    out.push(Tree::pre(
                        ProofTerm::Syn(Box::new(x.proof.clone()), Box::new(y.proof.clone())),
                        false,
                        self.expand(&x.next.to_initial(), &y.next.to_initial(), sync, path)?,
                    ));
                }
            }
        }
        Ok(())
    }
}

fn copy(b: &Branch) -> Branch {
    Branch {
        proof: b.proof.clone(),
        executed: b.executed,
        next: b.next.clone(),
    }
}

fn with_head(head: &Branch, alts: &[Branch]) -> Vec<Branch> {
    let mut v = vec![copy(head)];
    v.extend(alts.iter().map(copy));
    v
}

// The executed summand of a non-initial skeleton and its initial alternatives.
fn split(t: &Tree) -> Result<(Branch, Vec<Branch>)> {
    let mut head = None;
    let mut alts = Vec::new();
    for b in t.branches() {
        if b.executed || !b.next.is_initial() {
            if head.is_some() {
                return Err(Error::Invalid("executed actions on both sides of a choice".into()));
            }
            head = Some(b);
        } else {
            alts.push(b);
        }
    }
    head.map(|h| (h, alts))
        .ok_or_else(|| Error::Invalid("expected an executed summand".into()))
}

fn unreachable_shape(t: &ProofTerm) -> Error {
    Error::NotReachable(format!("executed action {t} has no synchronization partner"))
}

// Fills in ready sets by replaying every prefix on the environment, starting
// from `state`; `seen` lists executed actions along the current path so that
// ready sets print in execution order.
fn annotate(t: &Tree, state: &Process, prefix: &[Marker], seen: &mut Vec<Action>) -> Result<BrsProcess> {
    Ok(match t {
        Tree::Nil => BrsProcess::Nil,
        Tree::Sum(l, r) => BrsProcess::Choice(
            Box::new(annotate(l, state, prefix, seen)?),
            Box::new(annotate(r, state, prefix, seen)?),
        ),
        Tree::Pre { proof, executed, next } => {
            let action = act(proof)?.clone();
            let after = upd(state, &wrap_path(prefix, proof.clone()));
            seen.push(action.clone());
            let mut rank: Vec<Action> = Vec::new();
            for a in seen.iter().rev() {
                if !rank.contains(a) {
                    rank.insert(0, a.clone());
                }
            }
            let ready = brs(&after).ordered_by(&rank);
            let cont = annotate(next, &after, prefix, seen)?;
            seen.pop();
            BrsProcess::Prefix {
                action,
                executed: *executed,
                ready,
                cont: Box::new(cont),
            }
        }
    })
}

/// The encoding of a reachable process.
pub fn encode(p: &Process, order: &ExecutionOrder) -> Result<BrsProcess> {
    if !is_reachable(p) {
        return Err(Error::NotReachable(p.to_string()));
    }
    let tree = Expander { order }.build(p, &mut Vec::new())?;
    annotate(&tree, &to_initial(p), &[], &mut Vec::new())
}

/// Expansion of the parallel composition of two encoded operands sitting at
/// `sigma` inside `env`. Operand prefixes are addressed through their own
/// sequential shape.
pub fn expand_parallel(
    u1: &BrsProcess,
    u2: &BrsProcess,
    sync: &SyncSet,
    env: &Process,
    sigma: &[Marker],
    order: &ExecutionOrder,
) -> Result<BrsProcess> {
    if let Some(m) = sigma.iter().find(|m| !m.is_sequential()) {
        return Err(Error::Invalid(format!("path marker {m:?} is not sequential")));
    }
    let (t1, t2) = (Tree::from_brs(u1), Tree::from_brs(u2));
    let tree = Expander { order }.expand(&t1, &t2, sync, sigma)?;
    let start = replace_at(env, sigma, &to_initial);
    annotate(&tree, &start, sigma, &mut Vec::new())
}

/// Whether no parallel subterm of `p` has two non-initial operands whose
/// encodings last executed different actions outside the synchronization
/// set. Under this condition the encoding keeps the backward ready set.
pub fn brs_side_condition(p: &Process) -> Result<bool> {
    Ok(match p {
        Process::Nil => true,
        Process::Prefix { cont, .. } => brs_side_condition(cont)?,
        Process::Choice(l, r) => brs_side_condition(l)? && brs_side_condition(r)?,
        Process::Par { sync, left, right } => {
            let clash = if is_initial(left) || is_initial(right) {
                false
            } else {
                let (u1, u2) = (
                    encode(left, &default_order(left))?,
                    encode(right, &default_order(right))?,
                );
                match (u1.last_executed(), u2.last_executed()) {
                    (Some(b1), Some(b2)) => b1 != b2 && !sync.contains(b1) && !sync.contains(b2),
                    _ => false,
                }
            };
            !clash && brs_side_condition(left)? && brs_side_condition(right)?
        }
    })
}

/// All forward paths from `to_initial(p)` to `p`, as proof-term sequences.
pub fn serializations(p: &Process, limit: usize) -> Result<Vec<Vec<ProofTerm>>> {
    if !is_reachable(p) {
        return Err(Error::NotReachable(p.to_string()));
    }
    let mut out = Vec::new();
    let mut path = Vec::new();
    walk_histories(&to_initial(p), p, &mut path, &mut out, limit);
    Ok(out)
}

fn walk_histories(s: &Process, goal: &Process, path: &mut Vec<ProofTerm>, out: &mut Vec<Vec<ProofTerm>>, limit: usize) {
    if out.len() >= limit {
        return;
    }
    if s == goal {
        out.push(path.clone());
        return;
    }
    for (t, next) in crate::lts::forward_steps(s) {
        if crate::terms::is_initial(&next) || executed_subset(&next, goal) {
            path.push(t);
            walk_histories(&next, goal, path, out, limit);
            path.pop();
        }
    }
}

fn executed_subset(small: &Process, big: &Process) -> bool {
    match (small, big) {
        (Process::Nil, Process::Nil) => true,
        (
            Process::Prefix {
                executed: e1, cont: c1, ..
            },
            Process::Prefix {
                executed: e2, cont: c2, ..
            },
        ) => (!e1 || *e2) && executed_subset(c1, c2),
        (Process::Choice(l1, r1), Process::Choice(l2, r2)) => executed_subset(l1, l2) && executed_subset(r1, r2),
        (
            Process::Par {
                left: l1, right: r1, ..
            },
            Process::Par {
                left: l2, right: r2, ..
            },
        ) => executed_subset(l1, l2) && executed_subset(r1, r2),
        _ => false,
    }
}

/// Encodings of `p` under every history that leads to it, deduplicated
/// modulo reordering of choices.
pub fn encodings_over_histories(p: &Process) -> Result<Vec<BrsProcess>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for h in serializations(p, 100_000)? {
        let u = encode(p, &ExecutionOrder::History(h))?;
        if seen.insert(u.ac_canonical()) {
            out.push(u);
        }
    }
    Ok(out)
}

/// Outcome of a transition-correspondence walk.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub states: usize,
    pub transitions: usize,
    pub violations: Vec<String>,
}

impl CorrespondenceReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Walks the computations of `p0` up to `depth` forward steps, encoding each
/// state with the order induced by the path that reached it, and checks that
/// real and encoded transitions match in both directions.
pub fn verify_correspondence(p0: &Process, depth: usize) -> CorrespondenceReport {
    let mut report = CorrespondenceReport::default();
    let mut stack = vec![(p0.clone(), Vec::<ProofTerm>::new())];
    while let Some((p, history)) = stack.pop() {
        report.states += 1;
        if let Err(e) = check_state(&p, &history, &mut report) {
            report.violations.push(format!("{p}: {e}"));
        }
        if history.len() < depth {
            for (t, q) in crate::lts::forward_steps(&p) {
                let mut h = history.clone();
                h.push(t);
                stack.push((q, h));
            }
        }
    }
    report
}

fn check_state(p: &Process, history: &[ProofTerm], report: &mut CorrespondenceReport) -> Result<()> {
    let here = encode(p, &ExecutionOrder::History(history.to_vec()))?;
    let encoded: Vec<_> = brs_forward_steps(&here)
        .into_iter()
        .map(|(l, u)| (act(&l.proof).cloned(), l.ready, u.ac_canonical()))
        .collect();
    let mut matched = vec![false; encoded.len()];
    for (t, q) in crate::lts::forward_steps(p) {
        report.transitions += 1;
        let mut h = history.to_vec();
        h.push(t.clone());
        let there = encode(&q, &ExecutionOrder::History(h))?.ac_canonical();
        let want = observe(&t, &q)?;
        let hit = encoded
            .iter()
            .position(|(a, r, u)| a.as_ref().ok() == Some(&want.action) && *r == want.ready && *u == there);
        match hit {
            Some(i) => matched[i] = true,
            None => report.violations.push(format!(
                "{p} --{t}--> {q}: no encoded step labelled ({}, {}) reaching {there}",
                want.action, want.ready
            )),
        }
    }
    for (i, (a, r, u)) in encoded.iter().enumerate() {
        if matched[i] {
            continue;
        }
        // A step may match a real transition that another encoded step already claimed.
        let dup = encoded
            .iter()
            .enumerate()
            .any(|(j, (b, s, v))| matched[j] && b == a && s == r && v == u);
        if !dup {
            let name = a.as_ref().map(|x| x.to_string()).unwrap_or_default();
            report.violations.push(format!(
                "{p}: encoded step ({name}, {r}) to {u} has no real counterpart"
            ));
        }
    }
    Ok(())
}
