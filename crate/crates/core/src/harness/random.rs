//! Seeded generators of random formulas and product automata for
//! property checks and benchmarks.

use crate::des::{EventId, EventInfo};
use crate::formula::{AtomId, Formula, Letter, Vocabulary};
use crate::product::{FullCounts, ProductAutomaton, StateSpec};

use super::rng::SimRng;

/// A random formula over the first `atoms` atoms of `vocab` with temporal
/// and boolean nesting depth at most `depth`.
pub fn random_formula(rng: &mut SimRng, vocab: &Vocabulary, depth: usize) -> Formula {
    let atoms = vocab.len().max(1) as u64;
    let leaf = |rng: &mut SimRng| match rng.below(5) {
        0 => Formula::True,
        1 | 2 if !vocab.is_empty() => Formula::Atom(AtomId(rng.below(atoms) as u16)),
        _ if !vocab.is_empty() => Formula::NegAtom(AtomId(rng.below(atoms) as u16)),
        _ => Formula::True,
    };
    if depth == 0 || rng.below(4) == 0 {
        return leaf(rng);
    }
    let d = depth - 1;
    match rng.below(5) {
        0 => Formula::and(random_formula(rng, vocab, d), random_formula(rng, vocab, d)),
        1 => Formula::or(random_formula(rng, vocab, d), random_formula(rng, vocab, d)),
        2 => Formula::next(random_formula(rng, vocab, d)),
        3 => Formula::until(random_formula(rng, vocab, d), random_formula(rng, vocab, d)),
        _ => Formula::eventually(random_formula(rng, vocab, d)),
    }
}

/// A random product automaton with between 1 and `max_states` states and
/// up to `max_events` events. Each state/event pair has a transition with
/// probability one half; about a fifth of the states are accepting. The
/// full counts add up to three unreachable states of either kind.
pub fn random_product(rng: &mut SimRng, max_states: usize, max_events: usize) -> ProductAutomaton {
    let n = 1 + rng.below(max_states.max(1) as u64) as usize;
    let m = 1 + rng.below(max_events.max(1) as u64) as usize;
    let ap = Vocabulary::new(Vec::<String>::new()).expect("empty vocabulary is valid");
    let events: Vec<EventInfo> = (0..m)
        .map(|e| EventInfo {
            name: format!("e{e}"),
            controllable: rng.below(2) == 0,
        })
        .collect();
    let specs: Vec<StateSpec> = (0..n)
        .map(|i| StateSpec {
            des: format!("g{i}"),
            dfa: "z".into(),
            label: Letter::EMPTY,
            accepting: rng.below(5) == 0,
        })
        .collect();
    let mut edges = Vec::new();
    for x in 0..n {
        for e in 0..m {
            if rng.below(2) == 0 {
                edges.push((x, EventId(e), rng.below(n as u64) as usize));
            }
        }
    }
    let acc = specs.iter().filter(|s| s.accepting).count();
    let extra_rej = rng.below(4) as usize;
    let extra_acc = rng.below(4) as usize;
    let full = FullCounts {
        states: n + extra_rej + extra_acc,
        accepting: acc + extra_acc,
    };
    ProductAutomaton::new(ap, events, specs, 0, edges, full).expect("generated product is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formulas_respect_depth_and_vocabulary() {
        let vocab = Vocabulary::new(["a", "b", "c"]).unwrap();
        let mut rng = SimRng::new(3);
        for _ in 0..200 {
            let f = random_formula(&mut rng, &vocab, 4);
            assert!(f.depth() <= 4);
            assert!(f.atoms().iter().all(|a| a.index() < 3));
        }
    }

    #[test]
    fn products_respect_bounds() {
        let mut rng = SimRng::new(4);
        for _ in 0..100 {
            let p = random_product(&mut rng, 12, 3);
            assert!(p.num_states() <= 12);
            assert!(p.events().len() <= 3);
            assert!(p.full_counts().states >= p.num_states());
        }
    }
}
