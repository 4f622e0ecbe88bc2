//! Co-safe LTL formulas: vocabulary, letters, syntax trees, parsing, printing
//! and one-step progression.
//!
//! Surface syntax (ASCII): `true`, atom identifiers, `!` (atoms only), `X`,
//! `F`, `U`, `&`, `|` and parentheses. Precedence from tightest to loosest is
//! `!`, then `X`/`F`, then `U` (right-associative), then `&`, then `|`.
//! `F φ` is sugar for `true U φ`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// Maximum number of atomic propositions a [`Letter`] can carry.
pub const MAX_ATOMS: usize = 64;

/// Index of an atomic proposition within a [`Vocabulary`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomId(pub u16);

impl AtomId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A set of atomic propositions that hold at one position of a word.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u64);

impl Letter {
    pub const EMPTY: Letter = Letter(0);

    pub fn from_bits(bits: u64) -> Self {
        Letter(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, atom: AtomId) -> bool {
        self.0 >> atom.0 & 1 == 1
    }

    pub fn with(self, atom: AtomId) -> Self {
        Letter(self.0 | 1 << atom.0)
    }

    pub fn union(self, other: Letter) -> Self {
        Letter(self.0 | other.0)
    }

    pub fn atoms(self) -> impl Iterator<Item = AtomId> {
        (0..MAX_ATOMS as u16).filter(move |i| self.0 >> i & 1 == 1).map(AtomId)
    }
}

/// A finite, ordered set of uniquely named atomic propositions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Vocabulary {
    names: Vec<String>,
    index: HashMap<String, AtomId>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_keyword(s: &str) -> bool {
    matches!(s, "true" | "false" | "X" | "F" | "U")
}

impl Vocabulary {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut vocab = Vocabulary::default();
        for name in names {
            let name = name.into();
            if !is_identifier(&name) || is_keyword(&name) {
                return Err(Error::Vocabulary(format!("`{name}` is not a valid atom name")));
            }
            if vocab.index.contains_key(&name) {
                return Err(Error::Vocabulary(format!("duplicate atom `{name}`")));
            }
            if vocab.names.len() == MAX_ATOMS {
                return Err(Error::Vocabulary(format!("more than {MAX_ATOMS} atoms")));
            }
            vocab.index.insert(name.clone(), AtomId(vocab.names.len() as u16));
            vocab.names.push(name);
        }
        Ok(vocab)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, atom: AtomId) -> &str {
        &self.names[atom.index()]
    }

    pub fn atom(&self, name: &str) -> Option<AtomId> {
        self.index.get(name).copied()
    }

    /// Letter holding exactly the named atoms.
    pub fn letter<S: AsRef<str>>(&self, names: &[S]) -> Result<Letter> {
        names.iter().try_fold(Letter::EMPTY, |acc, n| {
            let n = n.as_ref();
            self.atom(n).map(|a| acc.with(a)).ok_or_else(|| Error::UnknownAtom {
                name: n.to_string(),
                pos: 0,
            })
        })
    }

    /// Sorted names of the atoms in `letter`.
    pub fn letter_names(&self, letter: Letter) -> Vec<String> {
        let mut out: Vec<String> = letter
            .atoms()
            .filter(|a| a.index() < self.len())
            .map(|a| self.name(a).to_string())
            .collect();
        out.sort();
        out
    }

    /// Number of letters in 2^AP, if it fits in memory-sized enumerations.
    pub fn alphabet_size(&self) -> usize {
        1usize << self.len()
    }

    /// All letters of 2^AP in bit order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.alphabet_size() as u64).map(Letter)
    }

    /// Vocabulary containing the atoms of `self` followed by the new atoms of `other`.
    pub fn union(&self, other: &Vocabulary) -> Result<Vocabulary> {
        Vocabulary::new(
            self.names
                .iter()
                .chain(other.names.iter().filter(|n| !self.index.contains_key(*n)))
                .cloned(),
        )
    }

    /// Re-express a letter over `self` as a letter over `target`.
    pub fn translate_letter(&self, letter: Letter, target: &Vocabulary) -> Result<Letter> {
        letter.atoms().try_fold(Letter::EMPTY, |acc, a| {
            let name = self.name(a);
            target
                .atom(name)
                .map(|b| acc.with(b))
                .ok_or_else(|| Error::VocabularyMismatch(format!("atom `{name}` missing")))
        })
    }
}

/// Abstract syntax of co-safe LTL.
///
/// `And`/`Or` are n-ary and never directly nest themselves. `False` is never
/// produced by the parser; it only appears as a progression result.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    False,
    True,
    Atom(AtomId),
    NegAtom(AtomId),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Next(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
}

impl Formula {
    /// Conjunction with nested conjunctions flattened (operand order kept).
    pub fn and(lhs: Formula, rhs: Formula) -> Formula {
        let mut ops = Vec::new();
        for f in [lhs, rhs] {
            match f {
                Formula::And(inner) => ops.extend(inner),
                other => ops.push(other),
            }
        }
        Formula::And(ops)
    }

    /// Disjunction with nested disjunctions flattened (operand order kept).
    pub fn or(lhs: Formula, rhs: Formula) -> Formula {
        let mut ops = Vec::new();
        for f in [lhs, rhs] {
            match f {
                Formula::Or(inner) => ops.extend(inner),
                other => ops.push(other),
            }
        }
        Formula::Or(ops)
    }

    pub fn next(f: Formula) -> Formula {
        Formula::Next(Box::new(f))
    }

    pub fn until(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Until(Box::new(lhs), Box::new(rhs))
    }

    pub fn eventually(f: Formula) -> Formula {
        Formula::until(Formula::True, f)
    }

    /// Atoms referenced anywhere in the formula.
    pub fn atoms(&self) -> HashSet<AtomId> {
        let mut out = HashSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut HashSet<AtomId>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) | Formula::NegAtom(a) => {
                out.insert(*a);
            }
            Formula::And(ops) | Formula::Or(ops) => ops.iter().for_each(|f| f.collect_atoms(out)),
            Formula::Next(f) => f.collect_atoms(out),
            Formula::Until(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Nesting depth of operators; atoms and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) | Formula::NegAtom(_) => 0,
            Formula::And(ops) | Formula::Or(ops) => 1 + ops.iter().map(Formula::depth).max().unwrap_or(0),
            Formula::Next(f) => 1 + f.depth(),
            Formula::Until(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Canonical form: constants folded, And/Or operands flattened, sorted and
    /// deduplicated. Two formulas equal modulo commutativity and
    /// associativity of And/Or have identical canonical forms.
    pub fn canonical(&self) -> Formula {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) | Formula::NegAtom(_) => self.clone(),
            Formula::And(ops) => mk_and(ops.iter().map(Formula::canonical).collect()),
            Formula::Or(ops) => mk_or(ops.iter().map(Formula::canonical).collect()),
            Formula::Next(f) => Formula::next(f.canonical()),
            Formula::Until(l, r) => Formula::until(l.canonical(), r.canonical()),
        }
    }

    /// One-step progression through `letter`.
    ///
    /// The result is in residual normal form: a minimal disjunction of
    /// conjunctions of literals, `X` and `U` subformulas. Equivalent
    /// residuals share one normal form, and a formula has finitely many
    /// residuals.
    pub fn progress(&self, letter: Letter) -> Formula {
        from_clauses(dnf(&self.progress_raw(letter)))
    }

    fn progress_raw(&self, letter: Letter) -> Formula {
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(a) => bool_formula(letter.contains(*a)),
            Formula::NegAtom(a) => bool_formula(!letter.contains(*a)),
            Formula::And(ops) => mk_and(ops.iter().map(|f| f.progress_raw(letter)).collect()),
            Formula::Or(ops) => mk_or(ops.iter().map(|f| f.progress_raw(letter)).collect()),
            Formula::Next(f) => (**f).clone(),
            Formula::Until(l, r) => {
                let now = r.progress_raw(letter);
                if now == Formula::True {
                    return Formula::True;
                }
                let keep = mk_and(vec![l.progress_raw(letter), self.clone()]);
                mk_or(vec![now, keep])
            }
        }
    }

    pub fn display<'a>(&'a self, vocab: &'a Vocabulary) -> FormulaDisplay<'a> {
        FormulaDisplay { formula: self, vocab }
    }
}

fn bool_formula(b: bool) -> Formula {
    if b {
        Formula::True
    } else {
        Formula::False
    }
}

fn mk_and(ops: Vec<Formula>) -> Formula {
    let mut flat = Vec::with_capacity(ops.len());
    for f in ops {
        match f {
            Formula::False => return Formula::False,
            Formula::True => {}
            Formula::And(inner) => flat.extend(inner),
            other => flat.push(other),
        }
    }
    flat.sort();
    flat.dedup();
    match flat.len() {
        0 => Formula::True,
        1 => flat.pop().unwrap(),
        _ => Formula::And(flat),
    }
}

fn mk_or(ops: Vec<Formula>) -> Formula {
    let mut flat = Vec::with_capacity(ops.len());
    for f in ops {
        match f {
            Formula::True => return Formula::True,
            Formula::False => {}
            Formula::Or(inner) => flat.extend(inner),
            other => flat.push(other),
        }
    }
    flat.sort();
    flat.dedup();
    match flat.len() {
        0 => Formula::False,
        1 => flat.pop().unwrap(),
        _ => Formula::Or(flat),
    }
}

type Clause = BTreeSet<Formula>;

/// Disjunctive normal form with absorbed clauses. Anything other than a
/// constant or an `And`/`Or` is treated as an opaque element.
fn dnf(f: &Formula) -> Vec<Clause> {
    match f {
        Formula::True => vec![Clause::new()],
        Formula::False => Vec::new(),
        Formula::And(ops) => {
            let mut acc = vec![Clause::new()];
            for op in ops {
                let rhs = dnf(op);
                let mut next = Vec::with_capacity(acc.len() * rhs.len());
                for c in &acc {
                    for d in &rhs {
                        next.push(c.union(d).cloned().collect());
                    }
                }
                acc = absorb(next);
            }
            acc
        }
        Formula::Or(ops) => absorb(ops.iter().flat_map(dnf).collect()),
        other => vec![Clause::from([other.clone()])],
    }
}

fn absorb(mut clauses: Vec<Clause>) -> Vec<Clause> {
    clauses.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    clauses.dedup();
    let mut kept: Vec<Clause> = Vec::with_capacity(clauses.len());
    for c in clauses {
        if !kept.iter().any(|k| k.is_subset(&c)) {
            kept.push(c);
        }
    }
    kept
}

fn from_clauses(clauses: Vec<Clause>) -> Formula {
    mk_or(clauses.into_iter().map(|c| mk_and(c.into_iter().collect())).collect())
}

/// Progress `formula` through `word` and report whether the result is `True`.
///
/// Sound but not complete: a residual that is valid without being the
/// constant `True` is reported as not (yet) a good prefix.
pub fn is_good_prefix(formula: &Formula, word: &[Letter]) -> bool {
    let mut f = formula.canonical();
    for &letter in word {
        if f == Formula::True {
            return true;
        }
        f = f.progress(letter);
    }
    f == Formula::True
}

/// Decide whether the infinite word `prefix · cycle^ω` satisfies `formula`.
///
/// Progression is iterated around the cycle; a residual that repeats at a
/// cycle boundary without having become `True` never will.
pub fn satisfies_lasso(formula: &Formula, prefix: &[Letter], cycle: &[Letter]) -> bool {
    assert!(!cycle.is_empty(), "lasso cycle must be nonempty");
    let mut f = formula.canonical();
    for &letter in prefix {
        if f == Formula::True {
            return true;
        }
        f = f.progress(letter);
    }
    let mut seen = HashSet::new();
    loop {
        if f == Formula::True {
            return true;
        }
        if f == Formula::False || !seen.insert(f.clone()) {
            return false;
        }
        for &letter in cycle {
            f = f.progress(letter);
        }
    }
}

pub struct FormulaDisplay<'a> {
    formula: &'a Formula,
    vocab: &'a Vocabulary,
}

// Binding strength used by the printer; higher binds tighter.
const PREC_OR: u8 = 0;
const PREC_AND: u8 = 1;
const PREC_UNTIL: u8 = 2;
const PREC_UNARY: u8 = 3;

impl FormulaDisplay<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, node: &Formula, ctx: u8) -> fmt::Result {
        let (prec, parens) = match node {
            Formula::Or(_) => (PREC_OR, ctx > PREC_OR),
            Formula::And(_) => (PREC_AND, ctx > PREC_AND),
            Formula::Until(..) => (PREC_UNTIL, ctx > PREC_UNTIL),
            _ => (PREC_UNARY, false),
        };
        if parens {
            f.write_str("(")?;
        }
        match node {
            Formula::True => f.write_str("true")?,
            Formula::False => f.write_str("false")?,
            Formula::Atom(a) => f.write_str(self.vocab.name(*a))?,
            Formula::NegAtom(a) => write!(f, "!{}", self.vocab.name(*a))?,
            Formula::And(ops) | Formula::Or(ops) => {
                let sep = if prec == PREC_AND { " & " } else { " | " };
                for (i, op) in ops.iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    self.write(f, op, prec + 1)?;
                }
            }
            Formula::Next(inner) => {
                f.write_str("X ")?;
                self.write(f, inner, PREC_UNARY)?;
            }
            Formula::Until(l, r) => {
                self.write(f, l, PREC_UNARY)?;
                f.write_str(" U ")?;
                self.write(f, r, PREC_UNTIL)?;
            }
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.formula, PREC_OR)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    True,
    Not,
    And,
    Or,
    Next,
    Eventually,
    Until,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'!' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = match word {
                    "true" => Tok::True,
                    "X" => Tok::Next,
                    "F" => Tok::Eventually,
                    "U" => Tok::Until,
                    "false" => {
                        return Err(Error::Syntax {
                            pos: start,
                            msg: "`false` is not part of the grammar".into(),
                        })
                    }
                    _ => Tok::Ident(word.to_string()),
                };
                out.push((tok, start));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((tok, i));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    vocab: &'a Vocabulary,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn or(&mut self) -> Result<Formula> {
        let mut f = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            f = Formula::or(f, self.and()?);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut f = self.until()?;
        while *self.peek() == Tok::And {
            self.bump();
            f = Formula::and(f, self.until()?);
        }
        Ok(f)
    }

    fn until(&mut self) -> Result<Formula> {
        let lhs = self.unary()?;
        if *self.peek() == Tok::Until {
            self.bump();
            let rhs = self.until()?;
            return Ok(Formula::until(lhs, rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::True => Ok(Formula::True),
            Tok::Ident(name) => self
                .vocab
                .atom(&name)
                .map(Formula::Atom)
                .ok_or(Error::UnknownAtom { name, pos }),
            Tok::Not => match self.unary()? {
                Formula::Atom(a) => Ok(Formula::NegAtom(a)),
                _ => Err(Error::NegationOnNonAtom { pos }),
            },
            Tok::Next => Ok(Formula::next(self.unary()?)),
            Tok::Eventually => Ok(Formula::eventually(self.unary()?)),
            Tok::LParen => {
                let f = self.or()?;
                match self.bump() {
                    (Tok::RParen, _) => Ok(f),
                    (_, p) => Err(Error::Syntax {
                        pos: p,
                        msg: "expected `)`".into(),
                    }),
                }
            }
            Tok::End => Err(Error::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
            other => Err(Error::Syntax {
                pos,
                msg: format!("unexpected token {other:?}"),
            }),
        }
    }
}

/// Parse `text` into a formula over `vocab`.
pub fn parse_formula(text: &str, vocab: &Vocabulary) -> Result<Formula> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        vocab,
    };
    let f = p.or()?;
    if *p.peek() != Tok::End {
        return Err(Error::Syntax {
            pos: p.pos(),
            msg: "trailing input".into(),
        });
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vocab(names: &[&str]) -> Vocabulary {
        Vocabulary::new(names.iter().copied()).unwrap()
    }

    #[test]
    fn parses_constant() {
        assert_eq!(parse_formula("true", &vocab(&["a"])).unwrap(), Formula::True);
    }

    #[test]
    fn rejects_negated_until() {
        let err = parse_formula("!(a U b)", &vocab(&["a", "b"])).unwrap_err();
        assert!(matches!(err, Error::NegationOnNonAtom { pos: 0 }), "{err}");
        assert!(err.to_string().contains("negation on non-atom"));
    }

    #[test]
    fn rejects_double_negation_and_false() {
        let v = vocab(&["a"]);
        assert!(matches!(parse_formula("!!a", &v), Err(Error::NegationOnNonAtom { .. })));
        assert!(matches!(
            parse_formula("!true", &v),
            Err(Error::NegationOnNonAtom { .. })
        ));
        assert!(matches!(
            parse_formula("F false", &v),
            Err(Error::Syntax { pos: 2, .. })
        ));
    }

    #[test]
    fn unknown_atom_reports_position() {
        let err = parse_formula("a & zz", &vocab(&["a"])).unwrap_err();
        assert!(matches!(err, Error::UnknownAtom { ref name, pos: 4 } if name == "zz"));
    }

    #[test]
    fn syntax_errors() {
        let v = vocab(&["a", "b"]);
        assert!(matches!(parse_formula("(a & b", &v), Err(Error::Syntax { pos: 6, .. })));
        assert!(matches!(parse_formula("a b", &v), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_formula("a # b", &v), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_formula("", &v), Err(Error::Syntax { .. })));
    }

    #[test]
    fn precedence_and_associativity() {
        let v = vocab(&["a", "b", "c"]);
        let a = Formula::Atom(AtomId(0));
        let b = Formula::Atom(AtomId(1));
        let c = Formula::Atom(AtomId(2));
        assert_eq!(
            parse_formula("a U b U c", &v).unwrap(),
            Formula::until(a.clone(), Formula::until(b.clone(), c.clone()))
        );
        assert_eq!(
            parse_formula("X a U b", &v).unwrap(),
            Formula::until(Formula::next(a.clone()), b.clone())
        );
        assert_eq!(
            parse_formula("a | b & c", &v).unwrap(),
            Formula::Or(vec![a.clone(), Formula::And(vec![b.clone(), c.clone()])])
        );
        assert_eq!(
            parse_formula("a & b U c", &v).unwrap(),
            Formula::And(vec![a, Formula::until(b, c)])
        );
    }

    #[test]
    fn eventually_desugars_to_until() {
        let v = vocab(&["a"]);
        assert_eq!(
            parse_formula("F a", &v).unwrap(),
            parse_formula("true U a", &v).unwrap()
        );
    }

    #[test]
    fn progression_examples() {
        let v = vocab(&["a", "b"]);
        let a = v.letter(&["a"]).unwrap();
        let b = v.letter(&["b"]).unwrap();
        let fa = parse_formula("F a", &v).unwrap();
        assert_eq!(fa.progress(a), Formula::True);
        let ab = parse_formula("a U b", &v).unwrap();
        assert_eq!(ab.progress(Letter::EMPTY), Formula::False);
        assert_eq!(parse_formula("X (a U b)", &v).unwrap().progress(b), ab);
        // a holds, b does not: the until persists unchanged
        assert_eq!(ab.progress(a), ab);
    }

    #[test]
    fn good_prefix_examples() {
        let v = vocab(&["a"]);
        let fa = parse_formula("F a", &v).unwrap();
        let a = v.letter(&["a"]).unwrap();
        assert!(is_good_prefix(&fa, &[a]));
        assert!(!is_good_prefix(&fa, &[Letter::EMPTY, Letter::EMPTY]));
        assert!(!is_good_prefix(&fa, &[]));
        assert!(is_good_prefix(&Formula::True, &[]));
    }

    #[test]
    fn lasso_semantics() {
        let v = vocab(&["a", "b"]);
        let a = v.letter(&["a"]).unwrap();
        let b = v.letter(&["b"]).unwrap();
        let fb = parse_formula("F b", &v).unwrap();
        assert!(satisfies_lasso(&fb, &[], &[a, b]));
        assert!(!satisfies_lasso(&fb, &[a], &[a]));
        let ab = parse_formula("a U b", &v).unwrap();
        assert!(satisfies_lasso(&ab, &[a, a], &[b]));
        assert!(!satisfies_lasso(&ab, &[a, Letter::EMPTY], &[b]));
    }

    #[test]
    fn canonical_ignores_operand_order() {
        let v = vocab(&["a", "b", "c"]);
        let f = parse_formula("(a | b) & c & F a", &v).unwrap();
        let g = parse_formula("F a & (c & (b | a))", &v).unwrap();
        assert_ne!(f, g);
        assert_eq!(f.canonical(), g.canonical());
    }

    #[test]
    fn display_round_trips() {
        let v = vocab(&["a", "b", "c"]);
        for text in [
            "a U b U c",
            "(a U b) U c",
            "X (a | b) & !c",
            "a | b & (c | X X a)",
            "F (a & !b) | true",
            "X a U b",
        ] {
            let f = parse_formula(text, &v).unwrap();
            let printed = f.display(&v).to_string();
            assert_eq!(parse_formula(&printed, &v).unwrap(), f, "{text} -> {printed}");
        }
    }

    #[test]
    fn vocabulary_validation() {
        assert!(Vocabulary::new(["a", "a"]).is_err());
        assert!(Vocabulary::new(["X"]).is_err());
        assert!(Vocabulary::new(["1a"]).is_err());
        assert!(Vocabulary::new((0..65).map(|i| format!("p{i}"))).is_err());
        let v = vocab(&["b", "a"]);
        assert_eq!(v.letter_names(v.letter(&["b", "a"]).unwrap()), vec!["a", "b"]);
    }
}
