//! Ranking functions on product automata.
//!
//! The rank of a state is the least fixpoint of
//! `ξ(x) = up_α(ξ̂(x), x)`, where `ξ̂` takes `α` at deadlocks, the minimum
//! over controllable successors when no uncontrollable event is enabled,
//! and the maximum over uncontrollable successors otherwise. `up_α` adds
//! one at non-accepting states, capped at `α`. Rank `α` means acceptance
//! cannot be forced.

use std::collections::VecDeque;
use std::io::Write;

use crate::des::EventId;
use crate::error::{Error, Result};
use crate::product::ProductAutomaton;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankingFunction {
    ranks: Vec<u32>,
    alpha: u32,
}

impl RankingFunction {
    /// Wrap arbitrary values, e.g. to check a hand-made or corrupted ranking.
    pub fn from_values(ranks: Vec<u32>, alpha: u32) -> Self {
        RankingFunction { ranks, alpha }
    }

    pub fn rank(&self, x: usize) -> u32 {
        self.ranks[x]
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }
}

/// Work counters from [`compute_ranking_with_stats`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RankingStats {
    /// Number of times a rank strictly increased.
    pub lifts: usize,
    /// Number of `ξ̂` evaluations.
    pub evaluations: usize,
}

/// `ξ̂(x)` under the current ranks.
pub fn estimate(p: &ProductAutomaton, ranks: &[u32], alpha: u32, x: usize) -> u32 {
    let out = p.transitions_from(x);
    if out.is_empty() {
        return alpha;
    }
    let mut has_unc = false;
    let mut worst_unc = 0;
    let mut best_con = u32::MAX;
    for &(e, t) in out {
        if p.is_controllable(e) {
            best_con = best_con.min(ranks[t]);
        } else {
            has_unc = true;
            worst_unc = worst_unc.max(ranks[t]);
        }
    }
    if has_unc {
        worst_unc
    } else {
        best_con
    }
}

/// `up_α(r, x)`.
pub fn lift(p: &ProductAutomaton, alpha: u32, r: u32, x: usize) -> u32 {
    if !p.is_accepting(x) && r < alpha {
        r + 1
    } else {
        r
    }
}

/// Least-fixpoint ranking via a worklist: a state is re-evaluated only after
/// one of its successors was lifted.
pub fn compute_ranking(p: &ProductAutomaton) -> RankingFunction {
    compute_ranking_with_stats(p).0
}

pub fn compute_ranking_with_stats(p: &ProductAutomaton) -> (RankingFunction, RankingStats) {
    let alpha = p.alpha();
    let n = p.num_states();
    let preds = p.predecessors();
    let mut ranks = vec![0u32; n];
    let mut stats = RankingStats::default();
    let mut queued: Vec<bool> = (0..n).map(|x| !p.is_accepting(x)).collect();
    let mut work: VecDeque<usize> = (0..n).filter(|&x| queued[x]).collect();
    while let Some(x) = work.pop_front() {
        queued[x] = false;
        stats.evaluations += 1;
        let v = lift(p, alpha, estimate(p, &ranks, alpha, x), x);
        if v > ranks[x] {
            ranks[x] = v;
            stats.lifts += 1;
            for &y in &preds[x] {
                if !queued[y] && !p.is_accepting(y) {
                    queued[y] = true;
                    work.push_back(y);
                }
            }
        }
    }
    (RankingFunction { ranks, alpha }, stats)
}

/// Reference solver: sweep all non-accepting states until nothing changes.
pub fn compute_ranking_naive(p: &ProductAutomaton) -> RankingFunction {
    let alpha = p.alpha();
    let mut ranks = vec![0u32; p.num_states()];
    loop {
        let mut changed = false;
        for x in (0..p.num_states()).filter(|&x| !p.is_accepting(x)) {
            let v = lift(p, alpha, estimate(p, &ranks, alpha, x), x);
            if ranks[x] < v {
                ranks[x] = v;
                changed = true;
            }
        }
        if !changed {
            return RankingFunction { ranks, alpha };
        }
    }
}

/// States at which `ranks` violates the defining equations (accepting iff
/// zero, and `ξ(x) = up_α(ξ̂(x), x)` elsewhere).
pub fn definition_violations(p: &ProductAutomaton, ranking: &RankingFunction) -> Vec<usize> {
    let alpha = ranking.alpha;
    (0..p.num_states())
        .filter(|&x| {
            let r = ranking.ranks[x];
            if p.is_accepting(x) {
                r != 0
            } else {
                r == 0 || r != lift(p, alpha, estimate(p, &ranking.ranks, alpha, x), x)
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransitionClass {
    Legal,
    Neutral,
    Illegal,
}

/// Classify the transition `(x, e, target)`.
pub fn classify(
    p: &ProductAutomaton,
    ranking: &RankingFunction,
    x: usize,
    e: EventId,
    target: usize,
) -> Result<TransitionClass> {
    match p.try_step(x, e) {
        Some(t) if t == target => {}
        _ => {
            return Err(Error::UndefinedTransition {
                state: format!("#{x}"),
                event: p
                    .events()
                    .get(e.0)
                    .map_or_else(|| format!("#{}", e.0), |i| i.name.clone()),
            })
        }
    }
    let (r, r2) = (ranking.rank(x), ranking.rank(target));
    Ok(if r2 == ranking.alpha {
        TransitionClass::Illegal
    } else if r > r2 {
        TransitionClass::Legal
    } else {
        TransitionClass::Neutral
    })
}

/// The structural properties every ranking function must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    /// `0 < ξ(x) < α` implies a strictly lower-ranked successor.
    LowerSuccessor,
    /// `ξ(x) < α` implies an accepting state is reachable.
    AcceptanceReachable,
    /// Below `α`, every uncontrollable transition from a non-accepting
    /// state decreases the rank.
    UncontrollableDecreases,
    /// `{ξ < α}` is closed under uncontrollable strings that do not pass
    /// through an accepting state.
    UncontrollableClosure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub property: Property,
    pub state: usize,
    /// Offending event string from `state`, where one exists.
    pub witness: Vec<EventId>,
}

#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn holds(&self, property: Property) -> bool {
        self.failures.iter().all(|f| f.property != property)
    }
}

pub fn verify_ranking(p: &ProductAutomaton, ranking: &RankingFunction) -> VerificationReport {
    let alpha = ranking.alpha;
    let rank = |x: usize| ranking.ranks[x];
    let n = p.num_states();
    let mut failures = Vec::new();

    for x in 0..n {
        if rank(x) > 0 && rank(x) < alpha && !p.transitions_from(x).iter().any(|&(_, t)| rank(t) < rank(x)) {
            failures.push(Failure {
                property: Property::LowerSuccessor,
                state: x,
                witness: vec![],
            });
        }
    }

    // backward search from F_P
    let preds = p.predecessors();
    let mut reaches = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&x| p.is_accepting(x)).collect();
    for &x in &queue {
        reaches[x] = true;
    }
    while let Some(t) = queue.pop_front() {
        for &s in &preds[t] {
            if !reaches[s] {
                reaches[s] = true;
                queue.push_back(s);
            }
        }
    }
    for (x, &reached) in reaches.iter().enumerate() {
        if rank(x) < alpha && !reached {
            failures.push(Failure {
                property: Property::AcceptanceReachable,
                state: x,
                witness: vec![],
            });
        }
    }

    for x in 0..n {
        if p.is_accepting(x) || rank(x) >= alpha {
            continue;
        }
        for &(e, t) in p.transitions_from(x) {
            if !p.is_controllable(e) && rank(t) >= rank(x) {
                failures.push(Failure {
                    property: Property::UncontrollableDecreases,
                    state: x,
                    witness: vec![e],
                });
            }
        }
    }

    // multi-source search along uncontrollable edges from {ξ < α}, not
    // continuing out of F_P where control has stopped
    let mut parent: Vec<Option<(usize, EventId)>> = vec![None; n];
    let mut visited = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&x| rank(x) < alpha).collect();
    for &x in &queue {
        visited[x] = true;
    }
    while let Some(s) = queue.pop_front() {
        if p.is_accepting(s) {
            continue;
        }
        for &(e, t) in p.transitions_from(s) {
            if p.is_controllable(e) || visited[t] {
                continue;
            }
            visited[t] = true;
            parent[t] = Some((s, e));
            if rank(t) >= alpha {
                let mut witness = Vec::new();
                let mut cur = t;
                while let Some((prev, ev)) = parent[cur] {
                    witness.push(ev);
                    cur = prev;
                }
                witness.reverse();
                failures.push(Failure {
                    property: Property::UncontrollableClosure,
                    state: cur,
                    witness,
                });
            } else {
                queue.push_back(t);
            }
        }
    }

    VerificationReport { failures }
}

/// Write `state,des_state,dfa_state,rank` rows for every product state.
pub fn write_ranking_csv<W: Write>(p: &ProductAutomaton, ranking: &RankingFunction, writer: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    w.write_record(["state", "des_state", "dfa_state", "rank"])
        .map_err(csv_err)?;
    for x in 0..p.num_states() {
        w.write_record([
            p.state_name(x),
            p.des_name(x).to_string(),
            p.dfa_name(x).to_string(),
            ranking.rank(x).to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Io(std::io::Error::other(format!("{other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::hand_product;

    #[test]
    fn accepting_zero_and_deadlock_alpha() {
        // x --c--> z (accepting), x --c2--> d (deadlock)
        let p = hand_product(
            &[("x", false), ("z", true), ("d", false)],
            &[("c", true), ("c2", true)],
            &[(0, 0, 1), (0, 1, 2)],
        );
        let r = compute_ranking(&p);
        assert_eq!(r.alpha(), 3);
        assert_eq!(r.ranks(), &[1, 0, 3]);
        assert_eq!(classify(&p, &r, 0, EventId(0), 1).unwrap(), TransitionClass::Legal);
        assert_eq!(classify(&p, &r, 0, EventId(1), 2).unwrap(), TransitionClass::Illegal);
        assert!(classify(&p, &r, 0, EventId(0), 2).is_err());
        assert!(verify_ranking(&p, &r).passed());
    }

    #[test]
    fn neutral_self_loop() {
        // x --n--> x, x --c--> y --c--> z
        let p = hand_product(
            &[("x", false), ("y", false), ("z", true)],
            &[("n", true), ("c", true)],
            &[(0, 0, 0), (0, 1, 1), (1, 1, 2)],
        );
        let r = compute_ranking(&p);
        assert_eq!(r.ranks(), &[2, 1, 0]);
        assert_eq!(classify(&p, &r, 0, EventId(0), 0).unwrap(), TransitionClass::Neutral);
    }

    #[test]
    fn mixed_state_uses_uncontrollable_only() {
        // x has controllable c -> z (accepting) and uncontrollable u -> d (deadlock)
        let p = hand_product(
            &[("x", false), ("z", true), ("d", false)],
            &[("c", true), ("u", false)],
            &[(0, 0, 1), (0, 1, 2)],
        );
        let r = compute_ranking(&p);
        assert_eq!(r.rank(0), r.alpha());
    }

    #[test]
    fn empty_accepting_set_ranks_everything_alpha() {
        let p = hand_product(&[("x", false), ("y", false)], &[("c", true)], &[(0, 0, 1), (1, 0, 0)]);
        let r = compute_ranking(&p);
        assert!(r.ranks().iter().all(|&v| v == r.alpha()));
        assert!(verify_ranking(&p, &r).passed());
        assert_eq!(r, compute_ranking_naive(&p));
    }

    #[test]
    fn detects_corrupted_ranking() {
        // x --u--> s where s is a non-accepting deadlock; x also reaches z
        let p = hand_product(
            &[("x", false), ("s", false), ("z", true)],
            &[("u", false), ("c", true)],
            &[(0, 0, 1), (0, 1, 2)],
        );
        let good = compute_ranking(&p);
        assert_eq!(good.rank(0), good.alpha());
        let corrupted = RankingFunction::from_values(vec![1, good.alpha(), 0], good.alpha());
        let report = verify_ranking(&p, &corrupted);
        assert!(!report.holds(Property::UncontrollableClosure));
        assert!(!report.holds(Property::UncontrollableDecreases));
        let f = report
            .failures
            .iter()
            .find(|f| f.property == Property::UncontrollableClosure)
            .unwrap();
        assert_eq!((f.state, f.witness.clone()), (0, vec![EventId(0)]));
        assert!(!definition_violations(&p, &corrupted).is_empty());
    }

    #[test]
    fn csv_quotes_component_names() {
        let p = hand_product(&[("a,b", true)], &[], &[]);
        let r = compute_ranking(&p);
        let mut out = Vec::new();
        write_ranking_csv(&p, &r, &mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "state,des_state,dfa_state,rank\n\"(a,b,z)\",\"a,b\",z,0\n"
        );
    }
}
