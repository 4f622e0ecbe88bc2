//! Product automaton `P = G ⊗ A` of a DES and a good-prefix DFA.

use std::collections::{HashMap, VecDeque};
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::des::{resolve_parts, Des, Enabled, EventId, EventInfo, TransitionEntry};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::formula::{Letter, Vocabulary};

/// Pair of component indices; `des` indexes the DES state table and `dfa`
/// the DFA state table of the product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProductState {
    pub des: usize,
    pub dfa: usize,
}

/// Sizes of the full product `X × X_A`, including unreachable pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullCounts {
    pub states: usize,
    pub accepting: usize,
}

/// One state of a hand-assembled product, see [`ProductAutomaton::new`].
#[derive(Clone, Debug)]
pub struct StateSpec {
    pub des: String,
    pub dfa: String,
    pub label: Letter,
    pub accepting: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProductAutomaton {
    ap: Vocabulary,
    events: Vec<EventInfo>,
    des_names: Vec<String>,
    dfa_names: Vec<String>,
    states: Vec<ProductState>,
    labels: Vec<Letter>,
    accepting: Vec<bool>,
    edges: Vec<Vec<(EventId, usize)>>,
    initial: usize,
    full: FullCounts,
}

/// Compose `g` and `d`, materializing the part reachable from
/// `(x0, δ_A(x_A0, L(x0)))`.
pub fn build_product(g: &Des, d: &Dfa) -> Result<ProductAutomaton> {
    let mut gn: Vec<&String> = g.ap().names().iter().collect();
    let mut dn: Vec<&String> = d.ap().names().iter().collect();
    gn.sort();
    dn.sort();
    if gn != dn {
        return Err(Error::VocabularyMismatch(format!(
            "DES atoms {:?} differ from DFA atoms {:?}",
            g.ap().names(),
            d.ap().names()
        )));
    }
    let labels: Vec<Letter> = (0..g.num_states())
        .map(|x| g.ap().translate_letter(g.label(x), d.ap()))
        .collect::<Result<_>>()?;

    let start = ProductState {
        des: g.initial(),
        dfa: d.next(d.initial(), labels[g.initial()]),
    };
    let mut ids: HashMap<ProductState, usize> = HashMap::from([(start, 0)]);
    let mut states = vec![start];
    let mut edges: Vec<Vec<(EventId, usize)>> = vec![Vec::new()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let ProductState { des: xg, dfa: xa } = states[i];
        for &(e, tg) in g.transitions_from(xg) {
            let succ = ProductState {
                des: tg,
                dfa: d.next(xa, labels[tg]),
            };
            let next_id = states.len();
            let j = *ids.entry(succ).or_insert(next_id);
            if j == next_id {
                states.push(succ);
                edges.push(Vec::new());
                queue.push_back(j);
            }
            edges[i].push((e, j));
        }
    }

    Ok(ProductAutomaton {
        ap: g.ap().clone(),
        events: g.events().to_vec(),
        des_names: (0..g.num_states()).map(|x| g.state_name(x).to_string()).collect(),
        dfa_names: (0..d.num_states()).map(|z| d.state_name(z).to_string()).collect(),
        labels: states.iter().map(|s| g.label(s.des)).collect(),
        accepting: states.iter().map(|s| d.is_accepting(s.dfa)).collect(),
        states,
        edges,
        initial: 0,
        full: FullCounts {
            states: g.num_states() * d.num_states(),
            accepting: g.num_states() * d.accepting_count(),
        },
    })
}

impl ProductAutomaton {
    /// Assemble a product directly from its reachable states and
    /// transitions. Component names are interned in first-seen order.
    pub fn new(
        ap: Vocabulary,
        events: Vec<EventInfo>,
        specs: Vec<StateSpec>,
        initial: usize,
        transitions: impl IntoIterator<Item = (usize, EventId, usize)>,
        full: FullCounts,
    ) -> Result<Self> {
        let n = specs.len();
        if initial >= n {
            return Err(Error::Schema("initial product state out of range".into()));
        }
        let mut des_names: Vec<String> = Vec::new();
        let mut dfa_names: Vec<String> = Vec::new();
        let mut seen = HashMap::new();
        let mut states = Vec::with_capacity(n);
        for s in &specs {
            let des = intern(&mut des_names, &s.des);
            let dfa = intern(&mut dfa_names, &s.dfa);
            if seen.insert((des, dfa), ()).is_some() {
                return Err(Error::Schema(format!("duplicate product state ({},{})", s.des, s.dfa)));
            }
            states.push(ProductState { des, dfa });
        }
        let accepting: Vec<bool> = specs.iter().map(|s| s.accepting).collect();
        let acc = accepting.iter().filter(|&&a| a).count();
        if full.states < n || full.accepting < acc || full.states - full.accepting < n - acc {
            return Err(Error::Schema("full counts smaller than the reachable part".into()));
        }
        let mut edges: Vec<Vec<(EventId, usize)>> = vec![Vec::new(); n];
        for (from, e, to) in transitions {
            if from >= n || to >= n || e.0 >= events.len() {
                return Err(Error::Schema("product transition out of range".into()));
            }
            if edges[from].iter().any(|&(ev, t)| ev == e && t != to) {
                return Err(Error::Nondeterministic {
                    state: format!("({},{})", specs[from].des, specs[from].dfa),
                    event: events[e.0].name.clone(),
                });
            }
            if !edges[from].contains(&(e, to)) {
                edges[from].push((e, to));
            }
        }
        for out in &mut edges {
            out.sort();
        }
        Ok(ProductAutomaton {
            ap,
            events,
            des_names,
            dfa_names,
            labels: specs.iter().map(|s| s.label).collect(),
            accepting,
            states,
            edges,
            initial,
            full,
        })
    }

    pub fn ap(&self) -> &Vocabulary {
        &self.ap
    }

    pub fn events(&self) -> &[EventInfo] {
        &self.events
    }

    pub fn event(&self, e: EventId) -> &EventInfo {
        &self.events[e.0]
    }

    pub fn event_id(&self, name: &str) -> Option<EventId> {
        self.events.iter().position(|e| e.name == name).map(EventId)
    }

    pub fn is_controllable(&self, e: EventId) -> bool {
        self.events[e.0].controllable
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn full_counts(&self) -> FullCounts {
        self.full
    }

    /// Rank bound `α = |X_P| − |F_P| + 1` over the full product.
    pub fn alpha(&self) -> u32 {
        (self.full.states - self.full.accepting + 1) as u32
    }

    pub fn is_accepting(&self, x: usize) -> bool {
        self.accepting[x]
    }

    pub fn accepting_count(&self) -> usize {
        self.accepting.iter().filter(|&&a| a).count()
    }

    pub fn state(&self, x: usize) -> ProductState {
        self.states[x]
    }

    /// `(J_G(x), J_A(x))` as indices into the component name tables.
    pub fn projections(&self, x: usize) -> Result<(usize, usize)> {
        self.states
            .get(x)
            .map(|s| (s.des, s.dfa))
            .ok_or_else(|| Error::UnknownState(format!("#{x}")))
    }

    pub fn des_name(&self, x: usize) -> &str {
        &self.des_names[self.states[x].des]
    }

    pub fn dfa_name(&self, x: usize) -> &str {
        &self.dfa_names[self.states[x].dfa]
    }

    pub fn state_name(&self, x: usize) -> String {
        format!("({},{})", self.des_name(x), self.dfa_name(x))
    }

    pub fn state_by_components(&self, des: &str, dfa: &str) -> Option<usize> {
        (0..self.num_states()).find(|&x| self.des_name(x) == des && self.dfa_name(x) == dfa)
    }

    /// Label of the DES component, `L(J_G(x))`.
    pub fn label(&self, x: usize) -> Letter {
        self.labels[x]
    }

    pub fn transitions_from(&self, x: usize) -> &[(EventId, usize)] {
        &self.edges[x]
    }

    pub fn enabled(&self, x: usize) -> Enabled {
        let mut out = Enabled::default();
        for &(e, _) in &self.edges[x] {
            out.all.push(e);
            if self.is_controllable(e) {
                out.controllable.push(e);
            } else {
                out.uncontrollable.push(e);
            }
        }
        out
    }

    pub fn try_step(&self, x: usize, e: EventId) -> Option<usize> {
        let out = self.edges.get(x)?;
        out.binary_search_by_key(&e, |&(ev, _)| ev).ok().map(|i| out[i].1)
    }

    pub fn step(&self, x: usize, e: EventId) -> Result<usize> {
        self.try_step(x, e).ok_or_else(|| Error::UndefinedTransition {
            state: self
                .states
                .get(x)
                .map_or_else(|| format!("#{x}"), |_| self.state_name(x)),
            event: self
                .events
                .get(e.0)
                .map_or_else(|| format!("#{}", e.0), |i| i.name.clone()),
        })
    }

    pub fn step_string(&self, x: usize, s: &[EventId]) -> Result<usize> {
        s.iter().try_fold(x, |cur, &e| self.step(cur, e))
    }

    /// Predecessor lists: `preds[t]` holds every `s` with an edge `s → t`
    /// (once per edge).
    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut preds = vec![Vec::new(); self.num_states()];
        for (s, out) in self.edges.iter().enumerate() {
            for &(_, t) in out {
                preds[t].push(s);
            }
        }
        preds
    }
}

fn intern(table: &mut Vec<String>, name: &str) -> usize {
    match table.iter().position(|n| n == name) {
        Some(i) => i,
        None => {
            table.push(name.to_string());
            table.len() - 1
        }
    }
}

// ---------------------------------------------------------------------------
// JSON: the DES schema extended with acceptance, components and full counts.

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProductStateEntry {
    id: String,
    #[serde(default)]
    labels: Vec<String>,
    des_state: String,
    dfa_state: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProductFile {
    ap: Vec<String>,
    events: Vec<EventInfo>,
    states: Vec<ProductStateEntry>,
    initial: String,
    transitions: Vec<TransitionEntry>,
    accepting: Vec<String>,
    full_counts: FullCounts,
}

pub fn export_product_string(p: &ProductAutomaton) -> String {
    let file = ProductFile {
        ap: p.ap.names().to_vec(),
        events: p.events.clone(),
        states: (0..p.num_states())
            .map(|x| ProductStateEntry {
                id: p.state_name(x),
                labels: p.ap.letter_names(p.labels[x]),
                des_state: p.des_name(x).to_string(),
                dfa_state: p.dfa_name(x).to_string(),
            })
            .collect(),
        initial: p.state_name(p.initial),
        transitions: (0..p.num_states())
            .flat_map(|x| {
                p.edges[x].iter().map(move |&(e, t)| TransitionEntry {
                    from: p.state_name(x),
                    event: p.events[e.0].name.clone(),
                    to: p.state_name(t),
                })
            })
            .collect(),
        accepting: (0..p.num_states())
            .filter(|&x| p.accepting[x])
            .map(|x| p.state_name(x))
            .collect(),
        full_counts: p.full,
    };
    serde_json::to_string_pretty(&file).expect("product serialization cannot fail")
}

pub fn export_product<W: Write>(p: &ProductAutomaton, mut writer: W) -> Result<()> {
    writer.write_all(export_product_string(p).as_bytes())?;
    writer.write_all(b"\n")?;
    Ok(())
}

pub fn import_product_str(text: &str) -> Result<ProductAutomaton> {
    let file: ProductFile = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let ap = Vocabulary::new(file.ap.iter().cloned())?;
    let plain: Vec<crate::des::StateEntry> =
        crate::des::state_entries(file.states.iter().map(|s| (s.id.clone(), s.labels.clone())));
    let (resolved, initial, edges) = resolve_parts(&ap, &file.events, &plain, &file.initial, &file.transitions)?;
    let accepting: std::collections::HashSet<&str> = file.accepting.iter().map(String::as_str).collect();
    for a in &accepting {
        if !resolved.iter().any(|(id, _)| id == a) {
            return Err(Error::UnknownState(a.to_string()));
        }
    }
    let specs = file
        .states
        .iter()
        .zip(&resolved)
        .map(|(s, (id, label))| StateSpec {
            des: s.des_state.clone(),
            dfa: s.dfa_state.clone(),
            label: *label,
            accepting: accepting.contains(id.as_str()),
        })
        .collect();
    ProductAutomaton::new(ap, file.events, specs, initial, edges, file.full_counts)
}

pub fn import_product<R: Read>(mut reader: R) -> Result<ProductAutomaton> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    import_product_str(&text)
}
