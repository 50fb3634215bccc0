//! Processes, proof terms and the syntactic predicates over them.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Name of the unobservable action.
pub const TAU: &str = "tau";

/// An action name. Compared by exact string equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Action(Arc<str>);

impl Action {
    pub fn new(name: &str) -> Self {
        Action(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn is_tau(&self) -> bool {
        &*self.0 == TAU
    }
}

impl fmt::Debug for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Action {
    fn from(s: &str) -> Self {
        Action::new(s)
    }
}

/// Synchronization set of a parallel composition. Never contains `tau`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SyncSet(BTreeSet<Action>);

impl SyncSet {
    pub fn empty() -> Self {
        SyncSet(BTreeSet::new())
    }

    pub fn new<I, A>(actions: I) -> Result<Self>
    where
        I: IntoIterator<Item = A>,
        A: Into<Action>,
    {
        let mut set = BTreeSet::new();
        for a in actions {
            let a = a.into();
            if a.is_tau() {
                return Err(Error::Invalid("tau cannot be synchronized".into()));
            }
            set.insert(a);
        }
        Ok(SyncSet(set))
    }

    pub fn contains(&self, a: &Action) -> bool {
        self.0.contains(a)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Action> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Debug for SyncSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// A finite set of actions.
///
/// Equality, ordering and hashing treat it as a set; iteration and display
/// keep the order in which elements were first inserted.
#[derive(Clone, Default)]
pub struct ActionSet(Vec<Action>);

impl ActionSet {
    pub fn new() -> Self {
        ActionSet(Vec::new())
    }

    pub fn singleton(a: Action) -> Self {
        ActionSet(vec![a])
    }

    pub fn insert(&mut self, a: Action) {
        if !self.0.contains(&a) {
            self.0.push(a);
        }
    }

    pub fn contains(&self, a: &Action) -> bool {
        self.0.contains(a)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Action> {
        self.0.iter()
    }

    pub fn union(&self, other: &ActionSet) -> ActionSet {
        let mut out = self.clone();
        for a in other.iter() {
            out.insert(a.clone());
        }
        out
    }

    pub fn sorted(&self) -> Vec<Action> {
        let mut v = self.0.clone();
        v.sort();
        v
    }

    /// Reorders the elements so that those in `rank` come first, in that order.
    pub fn ordered_by(&self, rank: &[Action]) -> ActionSet {
        let mut v = self.0.clone();
        v.sort_by_key(|a| rank.iter().position(|r| r == a).unwrap_or(usize::MAX));
        ActionSet(v)
    }
}

impl PartialEq for ActionSet {
    fn eq(&self, other: &Self) -> bool {
        self.sorted() == other.sorted()
    }
}

impl Eq for ActionSet {}

impl Hash for ActionSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.sorted().hash(state)
    }
}

impl PartialOrd for ActionSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ActionSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sorted().cmp(&other.sorted())
    }
}

impl fmt::Debug for ActionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ActionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

impl<A: Into<Action>> FromIterator<A> for ActionSet {
    fn from_iter<I: IntoIterator<Item = A>>(iter: I) -> Self {
        let mut s = ActionSet::new();
        for a in iter {
            s.insert(a.into());
        }
        s
    }
}

/// A process term. The `executed` flag of a prefix is the dagger decoration.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Process {
    Nil,
    Prefix {
        action: Action,
        executed: bool,
        cont: Box<Process>,
    },
    Choice(Box<Process>, Box<Process>),
    Par {
        sync: SyncSet,
        left: Box<Process>,
        right: Box<Process>,
    },
}

impl Process {
    pub fn prefix(action: impl Into<Action>, cont: Process) -> Process {
        Process::Prefix {
            action: action.into(),
            executed: false,
            cont: Box::new(cont),
        }
    }

    pub fn done(action: impl Into<Action>, cont: Process) -> Process {
        Process::Prefix {
            action: action.into(),
            executed: true,
            cont: Box::new(cont),
        }
    }

    pub fn choice(left: Process, right: Process) -> Process {
        Process::Choice(Box::new(left), Box::new(right))
    }

    pub fn par(sync: SyncSet, left: Process, right: Process) -> Process {
        Process::Par {
            sync,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn is_sequential(&self) -> bool {
        match self {
            Process::Nil => true,
            Process::Prefix { cont, .. } => cont.is_sequential(),
            Process::Choice(l, r) => l.is_sequential() && r.is_sequential(),
            Process::Par { .. } => false,
        }
    }

    /// Actions occurring anywhere in the term.
    pub fn actions(&self) -> BTreeSet<Action> {
        let mut out = BTreeSet::new();
        self.collect_actions(&mut out);
        out
    }

    fn collect_actions(&self, out: &mut BTreeSet<Action>) {
        match self {
            Process::Nil => {}
            Process::Prefix { action, cont, .. } => {
                out.insert(action.clone());
                cont.collect_actions(out);
            }
            Process::Choice(l, r) | Process::Par { left: l, right: r, .. } => {
                l.collect_actions(out);
                r.collect_actions(out);
            }
        }
    }
}

impl fmt::Debug for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::render(self))
    }
}

impl fmt::Display for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::render(self))
    }
}

/// True iff no prefix in `p` is executed.
pub fn is_initial(p: &Process) -> bool {
    match p {
        Process::Nil => true,
        Process::Prefix { executed, cont, .. } => !executed && is_initial(cont),
        Process::Choice(l, r) | Process::Par { left: l, right: r, .. } => is_initial(l) && is_initial(r),
    }
}

/// True iff `p` satisfies the well-formedness predicate.
pub fn is_wellformed(p: &Process) -> bool {
    wf_violation(p).is_none()
}

/// Describes the first violated well-formedness clause, if any.
pub fn wf_violation(p: &Process) -> Option<String> {
    match p {
        Process::Nil => None,
        Process::Prefix {
            action,
            executed: false,
            cont,
        } => {
            if is_initial(cont) {
                None
            } else {
                Some(format!("unexecuted action {action} is followed by executed actions"))
            }
        }
        Process::Prefix { cont, .. } => wf_violation(cont),
        Process::Choice(l, r) => match (is_initial(l), is_initial(r)) {
            (true, true) => None,
            (false, true) => wf_violation(l),
            (true, false) => wf_violation(r),
            (false, false) => Some("executed action on both sides of +".into()),
        },
        Process::Par { left, right, .. } => wf_violation(left).or_else(|| wf_violation(right)),
    }
}

/// Checks well-formedness, reporting the violated clause.
pub fn ensure_wellformed(p: &Process) -> Result<()> {
    match wf_violation(p) {
        None => Ok(()),
        Some(msg) => Err(Error::IllFormed(msg)),
    }
}

/// True iff `p` can be reached by forward steps from `to_initial(p)`.
pub fn is_reachable(p: &Process) -> bool {
    if !is_wellformed(p) {
        return false;
    }
    if is_initial(p) {
        return true;
    }
    // Forward steps only set flags, so a reachable path never leaves the
    // prefixes executed in `p`.
    let mut frontier = vec![to_initial(p)];
    let mut seen = std::collections::HashSet::new();
    while let Some(s) = frontier.pop() {
        if &s == p {
            return true;
        }
        for (_, t) in crate::lts::forward_steps(&s) {
            if executed_within(&t, p) && seen.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    false
}

// Every executed prefix of `small` is executed in `big` (same shape assumed).
fn executed_within(small: &Process, big: &Process) -> bool {
    match (small, big) {
        (Process::Nil, Process::Nil) => true,
        (
            Process::Prefix {
                executed: e1, cont: c1, ..
            },
            Process::Prefix {
                executed: e2, cont: c2, ..
            },
        ) => (!e1 || *e2) && executed_within(c1, c2),
        (Process::Choice(l1, r1), Process::Choice(l2, r2))
        | (
            Process::Par {
                left: l1, right: r1, ..
            },
            Process::Par {
                left: l2, right: r2, ..
            },
        ) => executed_within(l1, l2) && executed_within(r1, r2),
        _ => false,
    }
}

/// Forward ready set: actions `p` can perform next.
pub fn frs(p: &Process) -> ActionSet {
    match p {
        Process::Nil => ActionSet::new(),
        Process::Prefix {
            action,
            executed: false,
            ..
        } => ActionSet::singleton(action.clone()),
        Process::Prefix { cont, .. } => frs(cont),
        Process::Choice(l, r) => match (is_initial(l), is_initial(r)) {
            (true, true) => frs(l).union(&frs(r)),
            (false, _) => frs(l),
            (true, false) => frs(r),
        },
        Process::Par { sync, left, right } => combine_ready(sync, &frs(left), &frs(right)),
    }
}

/// Backward ready set: actions whose execution led to `p`.
pub fn brs(p: &Process) -> ActionSet {
    match p {
        Process::Nil => ActionSet::new(),
        Process::Prefix { executed: false, .. } => ActionSet::new(),
        Process::Prefix { action, cont, .. } => {
            if is_initial(cont) {
                ActionSet::singleton(action.clone())
            } else {
                brs(cont)
            }
        }
        Process::Choice(l, r) => match (is_initial(l), is_initial(r)) {
            (true, true) => ActionSet::new(),
            (false, _) => brs(l),
            (true, false) => brs(r),
        },
        Process::Par { sync, left, right } => combine_ready(sync, &brs(left), &brs(right)),
    }
}

fn combine_ready(sync: &SyncSet, left: &ActionSet, right: &ActionSet) -> ActionSet {
    let mut out = ActionSet::new();
    for a in left.iter() {
        if !sync.contains(a) || right.contains(a) {
            out.insert(a.clone());
        }
    }
    for a in right.iter() {
        if !sync.contains(a) {
            out.insert(a.clone());
        }
    }
    out
}

/// Erases every executed flag.
pub fn to_initial(p: &Process) -> Process {
    match p {
        Process::Nil => Process::Nil,
        Process::Prefix { action, cont, .. } => Process::prefix(action.clone(), to_initial(cont)),
        Process::Choice(l, r) => Process::choice(to_initial(l), to_initial(r)),
        Process::Par { sync, left, right } => Process::par(sync.clone(), to_initial(left), to_initial(right)),
    }
}

/// Upper bound on the length of forward computations.
pub fn size(p: &Process) -> usize {
    match p {
        Process::Nil => 0,
        Process::Prefix { cont, .. } => 1 + size(cont),
        Process::Choice(l, r) => size(l).max(size(r)),
        Process::Par { left, right, .. } => size(left) + size(right),
    }
}

/// Nesting depth of constructors other than `0`.
pub fn depth(p: &Process) -> usize {
    match p {
        Process::Nil => 0,
        Process::Prefix { cont, .. } => 1 + depth(cont),
        Process::Choice(l, r) | Process::Par { left: l, right: r, .. } => 1 + depth(l).max(depth(r)),
    }
}

/// A transition label: the action together with the operators it fired under.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProofTerm {
    Act(Action),
    Dot(Box<ProofTerm>),
    PlusL(Box<ProofTerm>),
    PlusR(Box<ProofTerm>),
    ParL(Box<ProofTerm>),
    ParR(Box<ProofTerm>),
    Syn(Box<ProofTerm>, Box<ProofTerm>),
}

/// One step of an address inside a process.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Marker {
    Dot,
    PlusL,
    PlusR,
    ParL,
    ParR,
}

impl Marker {
    pub fn wrap(self, t: ProofTerm) -> ProofTerm {
        let b = Box::new(t);
        match self {
            Marker::Dot => ProofTerm::Dot(b),
            Marker::PlusL => ProofTerm::PlusL(b),
            Marker::PlusR => ProofTerm::PlusR(b),
            Marker::ParL => ProofTerm::ParL(b),
            Marker::ParR => ProofTerm::ParR(b),
        }
    }

    pub fn is_sequential(self) -> bool {
        matches!(self, Marker::Dot | Marker::PlusL | Marker::PlusR)
    }
}

/// Wraps `t` under `path`, outermost marker first.
pub fn wrap_path(path: &[Marker], t: ProofTerm) -> ProofTerm {
    path.iter().rev().fold(t, |acc, m| m.wrap(acc))
}

impl ProofTerm {
    pub fn act_of(a: impl Into<Action>) -> Self {
        ProofTerm::Act(a.into())
    }

    /// Addresses of the prefixes this proof term fires.
    pub fn addresses(&self) -> Vec<Vec<Marker>> {
        fn go(t: &ProofTerm, path: &mut Vec<Marker>, out: &mut Vec<Vec<Marker>>) {
            let mut step = |m: Marker, inner: &ProofTerm, path: &mut Vec<Marker>| {
                path.push(m);
                go(inner, path, out);
                path.pop();
            };
            match t {
                ProofTerm::Act(_) => out.push(path.clone()),
                ProofTerm::Dot(i) => step(Marker::Dot, i, path),
                ProofTerm::PlusL(i) => step(Marker::PlusL, i, path),
                ProofTerm::PlusR(i) => step(Marker::PlusR, i, path),
                ProofTerm::ParL(i) => step(Marker::ParL, i, path),
                ProofTerm::ParR(i) => step(Marker::ParR, i, path),
                ProofTerm::Syn(l, r) => {
                    path.push(Marker::ParL);
                    go(l, path, out);
                    path.pop();
                    path.push(Marker::ParR);
                    go(r, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Debug for ProofTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ProofTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofTerm::Act(a) => write!(f, "{a}"),
            ProofTerm::Dot(t) => write!(f, ".{t}"),
            ProofTerm::PlusL(t) => write!(f, "+l{t}"),
            ProofTerm::PlusR(t) => write!(f, "+r{t}"),
            ProofTerm::ParL(t) => write!(f, "|l{t}"),
            ProofTerm::ParR(t) => write!(f, "|r{t}"),
            ProofTerm::Syn(l, r) => write!(f, "<{l},{r}>"),
        }
    }
}

/// The action underlying a proof term; undefined when a synchronization pairs
/// different actions.
pub fn act(t: &ProofTerm) -> Result<&Action> {
    match t {
        ProofTerm::Act(a) => Ok(a),
        ProofTerm::Dot(i) | ProofTerm::PlusL(i) | ProofTerm::PlusR(i) | ProofTerm::ParL(i) | ProofTerm::ParR(i) => {
            act(i)
        }
        ProofTerm::Syn(l, r) => {
            let (a, b) = (act(l)?, act(r)?);
            if a == b {
                Ok(a)
            } else {
                Err(Error::UndefinedSync {
                    left: a.to_string(),
                    right: b.to_string(),
                })
            }
        }
    }
}

/// Marks executed the prefix addressed by `t`; leaves `e` unchanged wherever
/// `t` does not address a prefix.
pub fn upd(e: &Process, t: &ProofTerm) -> Process {
    match (e, t) {
        (Process::Nil, _) => Process::Nil,
        (
            Process::Prefix {
                action,
                executed: false,
                cont,
            },
            ProofTerm::Act(b),
        ) if action == b => Process::done(action.clone(), (**cont).clone()),
        (
            Process::Prefix {
                action,
                executed: true,
                cont,
            },
            ProofTerm::Dot(inner),
        ) => Process::done(action.clone(), upd(cont, inner)),
        (Process::Choice(l, r), ProofTerm::PlusL(inner)) => Process::choice(upd(l, inner), (**r).clone()),
        (Process::Choice(l, r), ProofTerm::PlusR(inner)) => Process::choice((**l).clone(), upd(r, inner)),
        (Process::Par { sync, left, right }, ProofTerm::ParL(inner)) => {
            Process::par(sync.clone(), upd(left, inner), (**right).clone())
        }
        (Process::Par { sync, left, right }, ProofTerm::ParR(inner)) => {
            Process::par(sync.clone(), (**left).clone(), upd(right, inner))
        }
        (Process::Par { sync, left, right }, ProofTerm::Syn(l, r)) => {
            Process::par(sync.clone(), upd(left, l), upd(right, r))
        }
        _ => e.clone(),
    }
}

/// The subterm at `path`, if the path fits the term.
pub fn subterm<'a>(p: &'a Process, path: &[Marker]) -> Option<&'a Process> {
    let Some((first, rest)) = path.split_first() else {
        return Some(p);
    };
    match (p, first) {
        (Process::Prefix { cont, .. }, Marker::Dot) => subterm(cont, rest),
        (Process::Choice(l, _), Marker::PlusL) => subterm(l, rest),
        (Process::Choice(_, r), Marker::PlusR) => subterm(r, rest),
        (Process::Par { left, .. }, Marker::ParL) => subterm(left, rest),
        (Process::Par { right, .. }, Marker::ParR) => subterm(right, rest),
        _ => None,
    }
}

/// Replaces the subterm at `path` using `f`.
pub fn replace_at(p: &Process, path: &[Marker], f: &dyn Fn(&Process) -> Process) -> Process {
    let Some((first, rest)) = path.split_first() else {
        return f(p);
    };
    match (p, first) {
        (Process::Prefix { action, executed, cont }, Marker::Dot) => Process::Prefix {
            action: action.clone(),
            executed: *executed,
            cont: Box::new(replace_at(cont, rest, f)),
        },
        (Process::Choice(l, r), Marker::PlusL) => Process::choice(replace_at(l, rest, f), (**r).clone()),
        (Process::Choice(l, r), Marker::PlusR) => Process::choice((**l).clone(), replace_at(r, rest, f)),
        (Process::Par { sync, left, right }, Marker::ParL) => {
            Process::par(sync.clone(), replace_at(left, rest, f), (**right).clone())
        }
        (Process::Par { sync, left, right }, Marker::ParR) => {
            Process::par(sync.clone(), (**left).clone(), replace_at(right, rest, f))
        }
        _ => p.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, parse_unchecked};

    fn p(s: &str) -> Process {
        parse(s).unwrap()
    }

    fn set(xs: &[&str]) -> ActionSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn initial_examples() {
        assert!(is_initial(&Process::Nil));
        assert!(!is_initial(&p("a!.b.0")));
        assert!(is_initial(&p("a.0 |[]| b.0")));
    }

    #[test]
    fn wellformed_examples() {
        assert!(is_wellformed(&p("a!.b.0")));
        assert!(!is_wellformed(&parse_unchecked("b.a!.0").unwrap()));
        let both = parse_unchecked("a!.0 + b!.0").unwrap();
        assert_eq!(
            wf_violation(&both).as_deref(),
            Some("executed action on both sides of +")
        );
    }

    #[test]
    fn reachable_examples() {
        assert!(!is_reachable(&p("a!.0 |[a]| 0")));
        assert!(is_reachable(&p("a.b.0 + c.0")));
        assert!(is_reachable(&p("a!.0 |[]| b!.0")));
        assert!(is_reachable(&p("c!.0 |[c]| c!.0")));
        assert!(!is_reachable(&p("c!.0 |[c]| c.0")));
    }

    #[test]
    fn ready_sets() {
        assert_eq!(frs(&p("a.0 + b.0")), set(&["a", "b"]));
        assert_eq!(frs(&p("a.0 |[a]| 0")), set(&[]));
        assert_eq!(frs(&p("a!.b.0")), set(&["b"]));
        assert_eq!(brs(&p("a!.0 |[]| b!.0")), set(&["a", "b"]));
        assert_eq!(brs(&p("a!.b.0 + b.a.0")), set(&["a"]));
        assert_eq!(brs(&p("a.b.0 |[b]| b.0")), set(&[]));
        assert_eq!(brs(&p("a!.b!.0")), set(&["b"]));
    }

    #[test]
    fn action_set_is_a_set_but_keeps_display_order() {
        let ab = set(&["a", "b"]);
        let ba = set(&["b", "a"]);
        assert_eq!(ab, ba);
        assert_eq!(ba.to_string(), "{b,a}");
        assert_eq!(set(&["a", "a"]), set(&["a"]));
    }

    #[test]
    fn to_initial_examples() {
        assert_eq!(to_initial(&p("a!.b.0")), p("a.b.0"));
        assert_eq!(to_initial(&p("a!.0 |[]| b!.0")), p("a.0 |[]| b.0"));
        let q = p("a.0 + b.c.0");
        assert_eq!(to_initial(&q), q);
    }

    #[test]
    fn act_examples() {
        let t = ProofTerm::ParL(Box::new(ProofTerm::PlusL(Box::new(ProofTerm::act_of("a")))));
        assert_eq!(act(&t).unwrap().name(), "a");
        let s = ProofTerm::Syn(
            Box::new(ProofTerm::Dot(Box::new(ProofTerm::act_of("c")))),
            Box::new(ProofTerm::act_of("c")),
        );
        assert_eq!(act(&s).unwrap().name(), "c");
        let bad = ProofTerm::Syn(Box::new(ProofTerm::act_of("a")), Box::new(ProofTerm::act_of("b")));
        assert!(matches!(act(&bad), Err(Error::UndefinedSync { .. })));
    }

    #[test]
    fn upd_examples() {
        assert_eq!(upd(&p("a.0"), &ProofTerm::act_of("a")), p("a!.0"));
        assert_eq!(upd(&p("a.0"), &ProofTerm::act_of("b")), p("a.0"));
        let t = ProofTerm::ParL(Box::new(ProofTerm::act_of("a")));
        assert_eq!(upd(&p("a.0 |[]| b.0"), &t), p("a!.0 |[]| b.0"));
        let s = ProofTerm::Syn(Box::new(ProofTerm::act_of("c")), Box::new(ProofTerm::act_of("c")));
        assert_eq!(upd(&p("c.0 |[c]| c.0"), &s), p("c!.0 |[c]| c!.0"));
    }

    #[test]
    fn size_examples() {
        assert_eq!(size(&Process::Nil), 0);
        assert_eq!(size(&p("a.b.0 + c.0")), 2);
        assert_eq!(size(&p("a.0 |[]| b.0")), 2);
    }

    #[test]
    fn addresses_of_sync() {
        let s = ProofTerm::Syn(
            Box::new(ProofTerm::Dot(Box::new(ProofTerm::act_of("c")))),
            Box::new(ProofTerm::act_of("c")),
        );
        assert_eq!(s.addresses(), vec![vec![Marker::ParL, Marker::Dot], vec![Marker::ParR]]);
    }

    #[test]
    fn replace_and_subterm_agree() {
        let q = p("d.0 + (a!.0 |[]| b.0)");
        let path = [Marker::PlusR, Marker::ParL];
        assert_eq!(subterm(&q, &path), Some(&p("a!.0")));
        let r = replace_at(&q, &path, &to_initial);
        assert_eq!(r, p("d.0 + (a.0 |[]| b.0)"));
    }
}
