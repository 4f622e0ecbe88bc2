use crate::des::{EventId, EventInfo};
use crate::formula::{Letter, Vocabulary};
use crate::product::{FullCounts, ProductAutomaton, StateSpec};

/// Product with reachable-only full counts. States are `(name, accepting)`,
/// events `(name, controllable)`, edges `(from, event, to)`.
pub(crate) fn hand_product(
    states: &[(&str, bool)],
    events: &[(&str, bool)],
    edges: &[(usize, usize, usize)],
) -> ProductAutomaton {
    let acc = states.iter().filter(|s| s.1).count();
    ProductAutomaton::new(
        Vocabulary::new(Vec::<String>::new()).unwrap(),
        events
            .iter()
            .map(|&(n, c)| EventInfo {
                name: n.into(),
                controllable: c,
            })
            .collect(),
        states
            .iter()
            .map(|&(n, a)| StateSpec {
                des: n.into(),
                dfa: "z".into(),
                label: Letter::EMPTY,
                accepting: a,
            })
            .collect(),
        0,
        edges.iter().map(|&(s, e, t)| (s, EventId(e), t)),
        FullCounts {
            states: states.len(),
            accepting: acc,
        },
    )
    .unwrap()
}
