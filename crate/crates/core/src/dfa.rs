//! Complete deterministic finite acceptors over 2^AP for good prefixes.

use std::collections::{HashMap, VecDeque};
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{Formula, Letter, Vocabulary};

/// Largest vocabulary a [`Dfa`] can be built over (the table is dense in 2^AP).
pub const MAX_DFA_ATOMS: usize = 16;

/// Default cap on the number of formula states explored by [`translate`].
pub const DEFAULT_MAX_STATES: usize = 1_000_000;

pub type StateIdx = usize;

/// A complete DFA with a dense transition table.
///
/// Accepting states are absorbing. Prefix acceptance and final-state
/// acceptance coincide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    ap: Vocabulary,
    names: Vec<String>,
    table: Vec<StateIdx>,
    initial: StateIdx,
    accepting: Vec<bool>,
}

impl Dfa {
    /// Build from a row-major table (`table[s * 2^|AP| + letter]`).
    pub fn from_table(
        ap: Vocabulary,
        names: Vec<String>,
        table: Vec<StateIdx>,
        initial: StateIdx,
        accepting: Vec<bool>,
    ) -> Result<Self> {
        if ap.len() > MAX_DFA_ATOMS {
            return Err(Error::Resource {
                what: "DFA vocabulary size",
                limit: MAX_DFA_ATOMS,
            });
        }
        let n = names.len();
        if n == 0 {
            return Err(Error::Schema("a DFA needs at least one state".into()));
        }
        if accepting.len() != n || table.len() != n * ap.alphabet_size() {
            return Err(Error::Schema("DFA table dimensions do not match".into()));
        }
        if initial >= n || table.iter().any(|&t| t >= n) {
            return Err(Error::Schema("DFA refers to a state out of range".into()));
        }
        let dfa = Dfa {
            ap,
            names,
            table,
            initial,
            accepting,
        };
        if let Some(s) = dfa.absorbing_violation() {
            return Err(Error::Schema(format!(
                "accepting state `{}` has a transition to a rejecting state",
                dfa.names[s]
            )));
        }
        Ok(dfa)
    }

    pub fn ap(&self) -> &Vocabulary {
        &self.ap
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn alphabet_size(&self) -> usize {
        self.ap.alphabet_size()
    }

    pub fn initial(&self) -> StateIdx {
        self.initial
    }

    pub fn state_name(&self, s: StateIdx) -> &str {
        &self.names[s]
    }

    pub fn state_index(&self, name: &str) -> Option<StateIdx> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_accepting(&self, s: StateIdx) -> bool {
        self.accepting[s]
    }

    pub fn accepting_count(&self) -> usize {
        self.accepting.iter().filter(|&&a| a).count()
    }

    pub fn next(&self, s: StateIdx, letter: Letter) -> StateIdx {
        self.table[s * self.alphabet_size() + letter.bits() as usize]
    }

    pub fn run(&self, word: &[Letter]) -> StateIdx {
        word.iter().fold(self.initial, |s, &l| self.next(s, l))
    }

    /// True iff some prefix of `word` (including the empty one) drives the
    /// DFA into an accepting state.
    pub fn accepts(&self, word: &[Letter]) -> bool {
        let mut s = self.initial;
        if self.accepting[s] {
            return true;
        }
        for &l in word {
            s = self.next(s, l);
            if self.accepting[s] {
                return true;
            }
        }
        false
    }

    /// Some accepting state with an edge to a rejecting state, if any.
    fn absorbing_violation(&self) -> Option<StateIdx> {
        let k = self.alphabet_size();
        (0..self.num_states())
            .find(|&s| self.accepting[s] && self.table[s * k..(s + 1) * k].iter().any(|&t| !self.accepting[t]))
    }

    /// Copy with every state rejecting. Breaks the language on purpose; used
    /// to check that validators notice.
    pub fn with_accepting_cleared(&self) -> Dfa {
        Dfa {
            accepting: vec![false; self.num_states()],
            ..self.clone()
        }
    }

    /// Renumber states in breadth-first discovery order from the initial
    /// state (letters in bit order), dropping unreachable ones. Names become
    /// `z0`, `z1`, ...
    pub fn canonicalize(&self) -> Dfa {
        let k = self.alphabet_size();
        let mut order = vec![usize::MAX; self.num_states()];
        let mut queue = VecDeque::from([self.initial]);
        let mut visited = vec![self.initial];
        order[self.initial] = 0;
        while let Some(s) = queue.pop_front() {
            for &t in &self.table[s * k..(s + 1) * k] {
                if order[t] == usize::MAX {
                    order[t] = visited.len();
                    visited.push(t);
                    queue.push_back(t);
                }
            }
        }
        let mut table = Vec::with_capacity(visited.len() * k);
        for &s in &visited {
            table.extend(self.table[s * k..(s + 1) * k].iter().map(|&t| order[t]));
        }
        Dfa {
            ap: self.ap.clone(),
            names: (0..visited.len()).map(|i| format!("z{i}")).collect(),
            table,
            initial: 0,
            accepting: visited.iter().map(|&s| self.accepting[s]).collect(),
        }
    }

    /// Language-equivalent minimal DFA (Hopcroft partition refinement over
    /// the reachable part), canonically numbered.
    pub fn minimize(&self) -> Dfa {
        let reach = self.canonicalize();
        let n = reach.num_states();
        let k = reach.alphabet_size();

        // inverse[c][t] = states s with δ(s, c) = t
        let mut inverse = vec![vec![Vec::new(); n]; k];
        for s in 0..n {
            for c in 0..k {
                inverse[c][reach.table[s * k + c]].push(s);
            }
        }

        let (acc, rej): (Vec<usize>, Vec<usize>) = (0..n).partition(|&s| reach.accepting[s]);
        let mut blocks: Vec<Vec<usize>> = [acc, rej].into_iter().filter(|b| !b.is_empty()).collect();
        let mut block_of = vec![0; n];
        for (b, members) in blocks.iter().enumerate() {
            for &s in members {
                block_of[s] = b;
            }
        }
        let mut in_work = vec![false; blocks.len()];
        let mut work = Vec::new();
        if blocks.len() == 2 {
            let smaller = if blocks[0].len() <= blocks[1].len() { 0 } else { 1 };
            work.push(smaller);
            in_work[smaller] = true;
        }

        let mut marked = vec![false; n];
        while let Some(splitter) = work.pop() {
            in_work[splitter] = false;
            let members = blocks[splitter].clone();
            for inv in &inverse {
                let mut touched: Vec<usize> = Vec::new();
                let mut marked_count: HashMap<usize, usize> = HashMap::new();
                for &t in &members {
                    for &s in &inv[t] {
                        if !marked[s] {
                            marked[s] = true;
                            let b = block_of[s];
                            let c = marked_count.entry(b).or_insert(0);
                            if *c == 0 {
                                touched.push(b);
                            }
                            *c += 1;
                        }
                    }
                }
                for b in touched {
                    if marked_count[&b] < blocks[b].len() {
                        let (inside, outside): (Vec<usize>, Vec<usize>) = blocks[b].iter().partition(|&&s| marked[s]);
                        let new_id = blocks.len();
                        let (keep, split) = (outside, inside);
                        for &s in &split {
                            block_of[s] = new_id;
                        }
                        let split_smaller = split.len() <= keep.len();
                        blocks[b] = keep;
                        blocks.push(split);
                        in_work.push(false);
                        if in_work[b] {
                            in_work[new_id] = true;
                            work.push(new_id);
                        } else {
                            let pick = if split_smaller { new_id } else { b };
                            in_work[pick] = true;
                            work.push(pick);
                        }
                    }
                }
                for &t in &members {
                    for &s in &inv[t] {
                        marked[s] = false;
                    }
                }
            }
        }

        let mut table = Vec::with_capacity(blocks.len() * k);
        for members in &blocks {
            let rep = members[0];
            table.extend(reach.table[rep * k..(rep + 1) * k].iter().map(|&t| block_of[t]));
        }
        Dfa {
            ap: reach.ap.clone(),
            names: (0..blocks.len()).map(|i| format!("b{i}")).collect(),
            table,
            initial: block_of[reach.initial],
            accepting: blocks.iter().map(|m| reach.accepting[m[0]]).collect(),
        }
        .canonicalize()
    }

    /// A shortest word on which the two acceptors disagree, or `None` if
    /// they are language-equivalent. Searches the product of both automata
    /// for a pair with mismatched acceptance.
    pub fn distinguishing_word(&self, other: &Dfa) -> Result<Option<Vec<Letter>>> {
        if self.ap.names() != other.ap.names() {
            return Err(Error::VocabularyMismatch("DFAs are over different vocabularies".into()));
        }
        let start = (self.initial, other.initial);
        type Pair = (StateIdx, StateIdx);
        let mut parent: HashMap<Pair, Option<(Pair, Letter)>> = HashMap::from([(start, None)]);
        let mut queue = VecDeque::from([start]);
        while let Some(pair) = queue.pop_front() {
            if self.accepting[pair.0] != other.accepting[pair.1] {
                let mut word = Vec::new();
                let mut cur = pair;
                while let Some(Some((prev, l))) = parent.get(&cur) {
                    word.push(*l);
                    cur = *prev;
                }
                word.reverse();
                return Ok(Some(word));
            }
            for l in self.ap.letters() {
                let succ = (self.next(pair.0, l), other.next(pair.1, l));
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(succ) {
                    e.insert(Some((pair, l)));
                    queue.push_back(succ);
                }
            }
        }
        Ok(None)
    }
}

/// Options for [`translate_with`].
#[derive(Clone, Copy, Debug)]
pub struct TranslateOptions {
    pub max_states: usize,
}

impl Default for TranslateOptions {
    fn default() -> Self {
        TranslateOptions {
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

/// Translate a formula into the minimal complete DFA of its good prefixes
/// over 2^`ap`.
pub fn translate(formula: &Formula, ap: &Vocabulary) -> Result<Dfa> {
    translate_with(formula, ap, TranslateOptions::default())
}

/// Unminimized progression automaton: one state per reachable canonical
/// residual formula.
pub fn progression_automaton(formula: &Formula, ap: &Vocabulary, opts: TranslateOptions) -> Result<Dfa> {
    if ap.len() > MAX_DFA_ATOMS {
        return Err(Error::Resource {
            what: "DFA vocabulary size",
            limit: MAX_DFA_ATOMS,
        });
    }
    if let Some(a) = formula.atoms().into_iter().find(|a| a.index() >= ap.len()) {
        return Err(Error::VocabularyMismatch(format!("atom #{} outside vocabulary", a.0)));
    }
    let k = ap.alphabet_size();
    let init = formula.canonical();
    let mut ids: HashMap<Formula, StateIdx> = HashMap::from([(init.clone(), 0)]);
    let mut states = vec![init];
    let mut table = Vec::new();
    let mut at = 0;
    while at < states.len() {
        let current = states[at].clone();
        for bits in 0..k as u64 {
            let succ = current.progress(Letter::from_bits(bits));
            let next_id = states.len();
            let id = *ids.entry(succ.clone()).or_insert(next_id);
            if id == next_id {
                if states.len() == opts.max_states {
                    return Err(Error::Resource {
                        what: "translator formula states",
                        limit: opts.max_states,
                    });
                }
                states.push(succ);
            }
            table.push(id);
        }
        at += 1;
    }
    let accepting = states.iter().map(|f| *f == Formula::True).collect();
    let names = states.iter().map(|f| f.display(ap).to_string()).collect();
    Dfa::from_table(ap.clone(), names, table, 0, accepting)
}

pub fn translate_with(formula: &Formula, ap: &Vocabulary, opts: TranslateOptions) -> Result<Dfa> {
    Ok(progression_automaton(formula, ap, opts)?.minimize())
}

/// Bounds and budgets for [`lasso_validate`].
#[derive(Clone, Copy, Debug)]
pub struct LassoOptions {
    pub max_atoms: usize,
    pub max_words: usize,
}

impl Default for LassoOptions {
    fn default() -> Self {
        LassoOptions {
            max_atoms: 4,
            max_words: 10_000_000,
        }
    }
}

/// One disagreement between a DFA and the progression oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub prefix: Vec<Letter>,
    /// `None` for a finite-word check.
    pub cycle: Option<Vec<Letter>>,
    pub dfa: bool,
    pub oracle: bool,
}

#[derive(Clone, Debug, Default)]
pub struct LassoReport {
    pub words_checked: usize,
    pub lassos_checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl LassoReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

const MAX_REPORTED_MISMATCHES: usize = 16;

/// Memoized progression over interned residual formulas.
struct Progression {
    ids: HashMap<Formula, u32>,
    formulas: Vec<Formula>,
    steps: HashMap<(u32, u64), u32>,
}

impl Progression {
    fn new() -> Self {
        Progression {
            ids: HashMap::new(),
            formulas: Vec::new(),
            steps: HashMap::new(),
        }
    }

    fn intern(&mut self, f: Formula) -> u32 {
        if let Some(&id) = self.ids.get(&f) {
            return id;
        }
        let id = self.formulas.len() as u32;
        self.ids.insert(f.clone(), id);
        self.formulas.push(f);
        id
    }

    fn step(&mut self, id: u32, letter: Letter) -> u32 {
        if let Some(&t) = self.steps.get(&(id, letter.bits())) {
            return t;
        }
        let succ = self.formulas[id as usize].progress(letter);
        let t = self.intern(succ);
        self.steps.insert((id, letter.bits()), t);
        t
    }

    fn is_true(&self, id: u32) -> bool {
        self.formulas[id as usize] == Formula::True
    }
}

fn words_of_length(alphabet: usize, len: usize) -> Vec<Vec<Letter>> {
    let mut out: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..alphabet as u64).map(move |b| {
                    let mut w = w.clone();
                    w.push(Letter::from_bits(b));
                    w
                })
            })
            .collect();
    }
    out
}

/// Cross-check a DFA against progression semantics.
///
/// Every finite word of length at most `prefix_bound` must be accepted
/// exactly when it is a good prefix; every lasso `u·v^ω` with
/// `|u| ≤ prefix_bound` and `1 ≤ |v| ≤ loop_bound` must have an accepted
/// finite prefix exactly when it satisfies the formula.
pub fn lasso_validate(
    dfa: &Dfa,
    formula: &Formula,
    prefix_bound: usize,
    loop_bound: usize,
    opts: LassoOptions,
) -> Result<LassoReport> {
    if prefix_bound == 0 || loop_bound == 0 {
        return Err(Error::Config("lasso bounds must be at least 1".into()));
    }
    if dfa.ap().len() > opts.max_atoms {
        return Err(Error::Resource {
            what: "lasso enumeration atoms",
            limit: opts.max_atoms,
        });
    }
    let k = dfa.alphabet_size();
    let total_words: usize = (0..=prefix_bound).map(|i| k.saturating_pow(i as u32)).sum();
    if total_words > opts.max_words {
        return Err(Error::Resource {
            what: "lasso enumeration words",
            limit: opts.max_words,
        });
    }

    let cycles: Vec<Vec<Letter>> = (1..=loop_bound).flat_map(|n| words_of_length(k, n)).collect();
    let mut prog = Progression::new();
    let root = prog.intern(formula.canonical());
    let mut report = LassoReport::default();
    // (residual, dfa state, dfa visited accepting) -> already checked
    let mut lasso_done: HashMap<(u32, StateIdx, bool), ()> = HashMap::new();

    // Depth-first walk of the word tree; each frame is one prefix.
    let mut stack = vec![(
        Vec::<Letter>::new(),
        root,
        dfa.initial(),
        dfa.is_accepting(dfa.initial()),
    )];
    while let Some((word, f, q, seen_acc)) = stack.pop() {
        report.words_checked += 1;
        let oracle = prog.is_true(f);
        if oracle != seen_acc {
            push_mismatch(&mut report, word.clone(), None, seen_acc, oracle);
        }

        if lasso_done.insert((f, q, seen_acc), ()).is_none() {
            for cycle in &cycles {
                report.lassos_checked += 1;
                let sat = lasso_sat(&mut prog, f, cycle);
                let acc = seen_acc || lasso_dfa_accepts(dfa, q, cycle);
                if sat != acc {
                    push_mismatch(&mut report, word.clone(), Some(cycle.clone()), acc, sat);
                }
            }
        }

        if word.len() < prefix_bound {
            for b in (0..k as u64).rev() {
                let l = Letter::from_bits(b);
                let q2 = dfa.next(q, l);
                let mut w = word.clone();
                w.push(l);
                stack.push((w, prog.step(f, l), q2, seen_acc || dfa.is_accepting(q2)));
            }
        }
    }
    Ok(report)
}

fn push_mismatch(report: &mut LassoReport, prefix: Vec<Letter>, cycle: Option<Vec<Letter>>, dfa: bool, oracle: bool) {
    if report.mismatches.len() < MAX_REPORTED_MISMATCHES {
        report.mismatches.push(Mismatch {
            prefix,
            cycle,
            dfa,
            oracle,
        });
    }
}

fn lasso_sat(prog: &mut Progression, mut f: u32, cycle: &[Letter]) -> bool {
    let mut seen = std::collections::HashSet::new();
    loop {
        if prog.is_true(f) {
            return true;
        }
        if !seen.insert(f) {
            return false;
        }
        for &l in cycle {
            f = prog.step(f, l);
            if prog.is_true(f) {
                return true;
            }
        }
    }
}

fn lasso_dfa_accepts(dfa: &Dfa, mut q: StateIdx, cycle: &[Letter]) -> bool {
    let mut seen = std::collections::HashSet::new();
    while seen.insert(q) {
        for &l in cycle {
            q = dfa.next(q, l);
            if dfa.is_accepting(q) {
                return true;
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// JSON import / export

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum StateId {
    Name(String),
    Number(u64),
}

impl StateId {
    fn into_name(self) -> String {
        match self {
            StateId::Name(s) => s,
            StateId::Number(n) => n.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Cube {
    #[serde(default)]
    pos: Vec<String>,
    #[serde(default)]
    neg: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Guard {
    Const(String),
    Cube(Cube),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DfaEdge {
    from: StateId,
    guard: Guard,
    to: StateId,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DfaFile {
    ap: Vec<String>,
    states: Vec<StateId>,
    initial: StateId,
    accepting: Vec<StateId>,
    transitions: Vec<DfaEdge>,
}

/// How [`import_dfa`] treats incomplete or non-absorbing input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImportMode {
    /// Reject anything that is not already complete and absorbing.
    Strict,
    /// Route missing letters to a fresh rejecting sink and turn accepting
    /// states into self-loops (prefix acceptance is unchanged).
    Lenient,
}

fn schema(e: serde_json::Error) -> Error {
    Error::Schema(e.to_string())
}

/// Parse a DFA from its JSON form, expanding guards over 2^AP.
pub fn import_dfa_str(text: &str, mode: ImportMode) -> Result<Dfa> {
    let file: DfaFile = serde_json::from_str(text).map_err(schema)?;
    let ap = Vocabulary::new(file.ap)?;
    if ap.len() > MAX_DFA_ATOMS {
        return Err(Error::Resource {
            what: "DFA vocabulary size",
            limit: MAX_DFA_ATOMS,
        });
    }
    let mut names: Vec<String> = file.states.into_iter().map(StateId::into_name).collect();
    let mut index: HashMap<String, StateIdx> = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(Error::Schema(format!("duplicate state `{n}`")));
        }
    }
    let lookup = |id: StateId, index: &HashMap<String, StateIdx>| -> Result<StateIdx> {
        let n = id.into_name();
        index.get(&n).copied().ok_or(Error::UnknownState(n))
    };
    let initial = lookup(file.initial, &index)?;
    let mut accepting = vec![false; names.len()];
    for a in file.accepting {
        accepting[lookup(a, &index)?] = true;
    }

    let k = ap.alphabet_size();
    let mut table: Vec<Option<StateIdx>> = vec![None; names.len() * k];
    for edge in file.transitions {
        let from = lookup(edge.from, &index)?;
        let to = lookup(edge.to, &index)?;
        let (care, value) = match edge.guard {
            Guard::Const(c) if c == "true" => (0u64, 0u64),
            Guard::Const(c) => return Err(Error::Schema(format!("unknown guard `{c}`"))),
            Guard::Cube(cube) => {
                let pos = ap.letter(&cube.pos).map_err(|e| Error::Schema(e.to_string()))?;
                let neg = ap.letter(&cube.neg).map_err(|e| Error::Schema(e.to_string()))?;
                if pos.bits() & neg.bits() != 0 {
                    return Err(Error::Schema(format!(
                        "guard from `{}` requires an atom both true and false",
                        names[from]
                    )));
                }
                (pos.bits() | neg.bits(), pos.bits())
            }
        };
        for bits in 0..k as u64 {
            if bits & care == value {
                let slot = &mut table[from * k + bits as usize];
                if slot.is_some() {
                    return Err(Error::Nondeterministic {
                        state: names[from].clone(),
                        event: format!("{:?}", ap.letter_names(Letter::from_bits(bits))),
                    });
                }
                *slot = Some(to);
            }
        }
    }

    let mut sink: Option<StateIdx> = None;
    let n = names.len();
    let mut dense = Vec::with_capacity(n * k);
    for s in 0..n {
        for c in 0..k {
            match table[s * k + c] {
                Some(t) => dense.push(t),
                None if mode == ImportMode::Strict => {
                    return Err(Error::NonTotal {
                        state: names[s].clone(),
                    })
                }
                None => dense.push(*sink.get_or_insert(n)),
            }
        }
    }
    if let Some(sink) = sink {
        let mut name = "sink".to_string();
        while index.contains_key(&name) {
            name.push('_');
        }
        names.push(name);
        accepting.push(false);
        dense.extend(std::iter::repeat_n(sink, k));
    }

    let total = names.len();
    for s in 0..total {
        if accepting[s] && dense[s * k..(s + 1) * k].iter().any(|&t| !accepting[t]) {
            match mode {
                ImportMode::Strict => {
                    return Err(Error::Schema(format!(
                        "accepting state `{}` is not absorbing",
                        names[s]
                    )))
                }
                ImportMode::Lenient => dense[s * k..(s + 1) * k].fill(s),
            }
        }
    }
    Dfa::from_table(ap, names, dense, initial, accepting)
}

pub fn import_dfa<R: Read>(mut reader: R, mode: ImportMode) -> Result<Dfa> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    import_dfa_str(&text, mode)
}

/// Merge disjoint cubes that differ in exactly one fixed literal. The
/// result still partitions the same letter set.
fn merge_cubes(mut cubes: Vec<(u64, u64)>) -> Vec<(u64, u64)> {
    loop {
        let mut merged = None;
        'search: for i in 0..cubes.len() {
            for j in i + 1..cubes.len() {
                let (ci, vi) = cubes[i];
                let (cj, vj) = cubes[j];
                let diff = vi ^ vj;
                if ci == cj && diff.count_ones() == 1 && diff & ci == diff {
                    merged = Some((i, j, (ci & !diff, vi & !diff)));
                    break 'search;
                }
            }
        }
        match merged {
            Some((i, j, cube)) => {
                cubes.remove(j);
                cubes[i] = cube;
            }
            None => return cubes,
        }
    }
}

fn export_file(dfa: &Dfa) -> DfaFile {
    let ap = dfa.ap();
    let full: u64 = if ap.is_empty() { 0 } else { u64::MAX >> (64 - ap.len()) };
    let mut transitions = Vec::new();
    for s in 0..dfa.num_states() {
        let mut by_target: Vec<(StateIdx, Vec<(u64, u64)>)> = Vec::new();
        for l in ap.letters() {
            let t = dfa.next(s, l);
            match by_target.iter_mut().find(|(tt, _)| *tt == t) {
                Some((_, cubes)) => cubes.push((full, l.bits())),
                None => by_target.push((t, vec![(full, l.bits())])),
            }
        }
        for (t, cubes) in by_target {
            for (care, value) in merge_cubes(cubes) {
                let guard = if care == 0 {
                    Guard::Const("true".into())
                } else {
                    Guard::Cube(Cube {
                        pos: ap.letter_names(Letter::from_bits(care & value)),
                        neg: ap.letter_names(Letter::from_bits(care & !value)),
                    })
                };
                transitions.push(DfaEdge {
                    from: StateId::Name(dfa.state_name(s).into()),
                    guard,
                    to: StateId::Name(dfa.state_name(t).into()),
                });
            }
        }
    }
    DfaFile {
        ap: ap.names().to_vec(),
        states: (0..dfa.num_states())
            .map(|s| StateId::Name(dfa.state_name(s).into()))
            .collect(),
        initial: StateId::Name(dfa.state_name(dfa.initial()).into()),
        accepting: (0..dfa.num_states())
            .filter(|&s| dfa.is_accepting(s))
            .map(|s| StateId::Name(dfa.state_name(s).into()))
            .collect(),
        transitions,
    }
}

pub fn export_dfa_string(dfa: &Dfa) -> String {
    serde_json::to_string_pretty(&export_file(dfa)).expect("DFA serialization cannot fail")
}

pub fn export_dfa<W: Write>(dfa: &Dfa, mut writer: W) -> Result<()> {
    writer.write_all(export_dfa_string(dfa).as_bytes())?;
    writer.write_all(b"\n")?;
    Ok(())
}
