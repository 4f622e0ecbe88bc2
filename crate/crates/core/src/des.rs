//! Labeled deterministic transition systems with a controllable /
//! uncontrollable event partition.

use std::collections::{HashMap, VecDeque};
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{Letter, Vocabulary};

/// Index of an event in a [`Des`] (or product automaton) event table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventInfo {
    pub name: String,
    pub controllable: bool,
}

/// Enabled events at one state, split by controllability.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Enabled {
    pub all: Vec<EventId>,
    pub controllable: Vec<EventId>,
    pub uncontrollable: Vec<EventId>,
}

/// A labeled deterministic transition system `((X, Σ, δ, x0), AP, L)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Des {
    ap: Vocabulary,
    events: Vec<EventInfo>,
    names: Vec<String>,
    labels: Vec<Letter>,
    initial: usize,
    // per state, sorted by event
    edges: Vec<Vec<(EventId, usize)>>,
}

impl Des {
    /// Assemble a DES from indexed parts, checking determinism and ranges.
    pub fn new(
        ap: Vocabulary,
        events: Vec<EventInfo>,
        states: Vec<(String, Letter)>,
        initial: usize,
        transitions: impl IntoIterator<Item = (usize, EventId, usize)>,
    ) -> Result<Self> {
        let n = states.len();
        if initial >= n {
            return Err(Error::Schema("initial state out of range".into()));
        }
        let mut seen_events = HashMap::new();
        for e in &events {
            if seen_events.insert(e.name.as_str(), ()).is_some() {
                return Err(Error::Schema(format!("duplicate event `{}`", e.name)));
            }
        }
        let mut seen_states = HashMap::new();
        for (name, _) in &states {
            if seen_states.insert(name.as_str(), ()).is_some() {
                return Err(Error::Schema(format!("duplicate state `{name}`")));
            }
        }
        let (names, labels): (Vec<String>, Vec<Letter>) = states.into_iter().unzip();
        let mut edges: Vec<Vec<(EventId, usize)>> = vec![Vec::new(); n];
        for (from, ev, to) in transitions {
            if from >= n || to >= n || ev.0 >= events.len() {
                return Err(Error::Schema("transition out of range".into()));
            }
            match edges[from].iter().find(|(e, _)| *e == ev) {
                Some(&(_, t)) if t == to => {}
                Some(_) => {
                    return Err(Error::Nondeterministic {
                        state: names[from].clone(),
                        event: events[ev.0].name.clone(),
                    })
                }
                None => edges[from].push((ev, to)),
            }
        }
        for out in &mut edges {
            out.sort();
        }
        Ok(Des {
            ap,
            events,
            names,
            labels,
            initial,
            edges,
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
        self.names.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn state_name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn state_id(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn label(&self, x: usize) -> Letter {
        self.labels[x]
    }

    /// Outgoing `(event, target)` pairs of `x`, sorted by event.
    pub fn transitions_from(&self, x: usize) -> &[(EventId, usize)] {
        &self.edges[x]
    }

    fn check_state(&self, x: usize) -> Result<()> {
        if x < self.num_states() {
            Ok(())
        } else {
            Err(Error::UnknownState(format!("#{x}")))
        }
    }

    /// `Σ(x)`, `Σ_c(x)` and `Σ_u(x)`.
    pub fn enabled(&self, x: usize) -> Result<Enabled> {
        self.check_state(x)?;
        let mut out = Enabled::default();
        for &(e, _) in &self.edges[x] {
            out.all.push(e);
            if self.is_controllable(e) {
                out.controllable.push(e);
            } else {
                out.uncontrollable.push(e);
            }
        }
        Ok(out)
    }

    /// Distinct successor states of `x`.
    pub fn successors(&self, x: usize) -> Result<Vec<usize>> {
        self.check_state(x)?;
        let mut out: Vec<usize> = self.edges[x].iter().map(|&(_, t)| t).collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn try_step(&self, x: usize, e: EventId) -> Option<usize> {
        self.edges
            .get(x)?
            .binary_search_by_key(&e, |&(ev, _)| ev)
            .ok()
            .map(|i| self.edges[x][i].1)
    }

    pub fn step(&self, x: usize, e: EventId) -> Result<usize> {
        self.check_state(x)?;
        self.try_step(x, e).ok_or_else(|| Error::UndefinedTransition {
            state: self.names[x].clone(),
            event: self
                .events
                .get(e.0)
                .map_or_else(|| format!("#{}", e.0), |i| i.name.clone()),
        })
    }

    /// Extended transition function over an event string; `δ(x, ε) = x`.
    pub fn step_string(&self, x: usize, s: &[EventId]) -> Result<usize> {
        self.check_state(x)?;
        s.iter().try_fold(x, |cur, &e| self.step(cur, e))
    }

    /// States reachable from the initial state, in breadth-first order.
    pub fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        seen[self.initial] = true;
        let mut order = vec![self.initial];
        let mut at = 0;
        while at < order.len() {
            for &(_, t) in &self.edges[order[at]] {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
            at += 1;
        }
        order
    }

    /// Whether `s` is generated from the initial state (`s ∈ L(G)`).
    pub fn generates(&self, s: &[EventId]) -> bool {
        self.step_string(self.initial, s).is_ok()
    }
}

/// An alternating state/event sequence `x0 σ1 x1 … σn xn` of a DES.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct History {
    pub states: Vec<usize>,
    pub events: Vec<EventId>,
}

impl History {
    pub fn new(start: usize) -> Self {
        History {
            states: vec![start],
            events: Vec::new(),
        }
    }

    pub fn last(&self) -> usize {
        *self.states.last().expect("history is never empty")
    }

    /// Extend by one transition of `des`.
    pub fn push(&mut self, des: &Des, e: EventId) -> Result<usize> {
        let next = des.step(self.last(), e)?;
        self.events.push(e);
        self.states.push(next);
        Ok(next)
    }

    /// The label word `L(x0) L(x1) …`.
    pub fn labels(&self, des: &Des) -> Vec<Letter> {
        self.states.iter().map(|&x| des.label(x)).collect()
    }

    pub fn is_valid(&self, des: &Des) -> bool {
        self.states.len() == self.events.len() + 1
            && self
                .events
                .iter()
                .enumerate()
                .all(|(j, &e)| des.try_step(self.states[j], e) == Some(self.states[j + 1]))
    }
}

/// Synchronous composition: shared events (by name) move both components,
/// private events interleave. Only the reachable part is built; labels are
/// merged by union over the union vocabulary.
pub fn synchronous_product(g1: &Des, g2: &Des) -> Result<Des> {
    let ap = g1.ap.union(&g2.ap)?;

    let mut events = g1.events.clone();
    // (index in g1, index in g2) for each product event
    let mut owners: Vec<(Option<EventId>, Option<EventId>)> =
        (0..g1.events.len()).map(|i| (Some(EventId(i)), None)).collect();
    for (j, e2) in g2.events.iter().enumerate() {
        match g1.event_id(&e2.name) {
            Some(i) => {
                if g1.is_controllable(i) != e2.controllable {
                    return Err(Error::ControllabilityConflict { event: e2.name.clone() });
                }
                owners[i.0].1 = Some(EventId(j));
            }
            None => {
                events.push(e2.clone());
                owners.push((None, Some(EventId(j))));
            }
        }
    }

    let relabel1: Vec<Letter> = g1
        .labels
        .iter()
        .map(|&l| g1.ap.translate_letter(l, &ap))
        .collect::<Result<_>>()?;
    let relabel2: Vec<Letter> = g2
        .labels
        .iter()
        .map(|&l| g2.ap.translate_letter(l, &ap))
        .collect::<Result<_>>()?;

    let start = (g1.initial, g2.initial);
    let mut ids: HashMap<(usize, usize), usize> = HashMap::from([(start, 0)]);
    let mut pairs = vec![start];
    let mut queue = VecDeque::from([start]);
    let mut transitions = Vec::new();
    while let Some((x1, x2)) = queue.pop_front() {
        let from = ids[&(x1, x2)];
        for (ev, &(o1, o2)) in owners.iter().enumerate() {
            let t1 = match o1 {
                Some(e) => match g1.try_step(x1, e) {
                    Some(t) => t,
                    None => continue,
                },
                None => x1,
            };
            let t2 = match o2 {
                Some(e) => match g2.try_step(x2, e) {
                    Some(t) => t,
                    None => continue,
                },
                None => x2,
            };
            let next_id = pairs.len();
            let to = *ids.entry((t1, t2)).or_insert(next_id);
            if to == next_id {
                pairs.push((t1, t2));
                queue.push_back((t1, t2));
            }
            transitions.push((from, EventId(ev), to));
        }
    }

    let states = pairs
        .iter()
        .map(|&(x1, x2)| {
            (
                format!("({},{})", g1.names[x1], g2.names[x2]),
                relabel1[x1].union(relabel2[x2]),
            )
        })
        .collect();
    Des::new(ap, events, states, 0, transitions)
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct StateEntry {
    pub id: String,
    #[serde(default)]
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct TransitionEntry {
    pub from: String,
    pub event: String,
    pub to: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DesFile {
    ap: Vec<String>,
    events: Vec<EventInfo>,
    states: Vec<StateEntry>,
    initial: String,
    transitions: Vec<TransitionEntry>,
}

/// Labeled states, initial state and transitions by index.
pub(crate) type ResolvedParts = (Vec<(String, Letter)>, usize, Vec<(usize, EventId, usize)>);

/// Resolve string ids of a DES-shaped file to indices.
pub(crate) fn resolve_parts(
    ap: &Vocabulary,
    events: &[EventInfo],
    states: &[StateEntry],
    initial: &str,
    transitions: &[TransitionEntry],
) -> Result<ResolvedParts> {
    let mut index = HashMap::new();
    let mut resolved = Vec::with_capacity(states.len());
    for (i, s) in states.iter().enumerate() {
        if index.insert(s.id.as_str(), i).is_some() {
            return Err(Error::Schema(format!("duplicate state `{}`", s.id)));
        }
        let label = ap
            .letter(&s.labels)
            .map_err(|e| Error::Schema(format!("state `{}`: {e}", s.id)))?;
        resolved.push((s.id.clone(), label));
    }
    let state = |name: &str| index.get(name).copied().ok_or_else(|| Error::UnknownState(name.into()));
    let event_index: HashMap<&str, usize> = events.iter().enumerate().map(|(i, e)| (e.name.as_str(), i)).collect();
    let init = state(initial)?;
    let mut edges = Vec::with_capacity(transitions.len());
    for t in transitions {
        let ev = event_index
            .get(t.event.as_str())
            .copied()
            .ok_or_else(|| Error::UnknownEvent(t.event.clone()))?;
        edges.push((state(&t.from)?, EventId(ev), state(&t.to)?));
    }
    Ok((resolved, init, edges))
}

pub fn load_des_str(text: &str) -> Result<Des> {
    let file: DesFile = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let ap = Vocabulary::new(file.ap.iter().cloned())?;
    let (states, initial, edges) = resolve_parts(&ap, &file.events, &file.states, &file.initial, &file.transitions)?;
    Des::new(ap, file.events, states, initial, edges)
}

pub fn load_des<R: Read>(mut reader: R) -> Result<Des> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    load_des_str(&text)
}

pub(crate) fn state_entries(des_like: impl Iterator<Item = (String, Vec<String>)>) -> Vec<StateEntry> {
    des_like.map(|(id, labels)| StateEntry { id, labels }).collect()
}

pub fn save_des_string(g: &Des) -> String {
    let file = DesFile {
        ap: g.ap.names().to_vec(),
        events: g.events.clone(),
        states: state_entries((0..g.num_states()).map(|x| (g.names[x].clone(), g.ap.letter_names(g.labels[x])))),
        initial: g.names[g.initial].clone(),
        transitions: (0..g.num_states())
            .flat_map(|x| {
                g.edges[x].iter().map(move |&(e, t)| TransitionEntry {
                    from: g.names[x].clone(),
                    event: g.events[e.0].name.clone(),
                    to: g.names[t].clone(),
                })
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("DES serialization cannot fail")
}

pub fn save_des<W: Write>(g: &Des, mut writer: W) -> Result<()> {
    writer.write_all(save_des_string(g).as_bytes())?;
    writer.write_all(b"\n")?;
    Ok(())
}
