//! On-line permissive supervisor.
//!
//! At product state `x` and step `k` the supervisor enables
//! `{σ ∈ Σ_P(x) : ξ(δ_P(x, σ)) < max(ξ(x), η(k))}`: every rank-decreasing
//! event, plus rank-nondecreasing ones while the permissiveness level `η(k)`
//! is still above their target rank.

use serde::Serialize;

use crate::des::EventId;
use crate::error::{Error, Result};
use crate::product::ProductAutomaton;
use crate::ranking::RankingFunction;

/// A permissiveness level schedule `η: ℕ → ℝ`.
///
/// Valid schedules start at or below `α`, never increase, and reach zero.
pub trait Permissiveness: Send + Sync {
    fn level(&self, k: u64) -> f64;
}

/// `η(k) = max(a·k + b, 0)` with `a < 0` and `b ≤ α`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearSchedule {
    a: f64,
    b: f64,
}

impl LinearSchedule {
    pub fn new(a: f64, b: f64, alpha: u32) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidSchedule("parameters must be finite".into()));
        }
        if a >= 0.0 {
            return Err(Error::InvalidSchedule(format!("slope a = {a} must be negative")));
        }
        if b > f64::from(alpha) {
            return Err(Error::InvalidSchedule(format!(
                "offset b = {b} exceeds alpha = {alpha}"
            )));
        }
        Ok(LinearSchedule { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// First step at which the level is zero.
    pub fn zero_step(&self) -> u64 {
        if self.b <= 0.0 {
            0
        } else {
            (-self.b / self.a).ceil() as u64
        }
    }
}

impl Permissiveness for LinearSchedule {
    fn level(&self, k: u64) -> f64 {
        (self.a * k as f64 + self.b).max(0.0)
    }
}

/// Explicit levels for the first steps, zero afterwards.
#[derive(Clone, Debug, PartialEq)]
pub struct TabulatedSchedule {
    levels: Vec<f64>,
}

impl TabulatedSchedule {
    pub fn new(levels: Vec<f64>, alpha: u32) -> Result<Self> {
        if levels.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidSchedule("levels must be finite and nonnegative".into()));
        }
        if levels.first().is_some_and(|&v| v > f64::from(alpha)) {
            return Err(Error::InvalidSchedule("initial level exceeds alpha".into()));
        }
        if levels.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InvalidSchedule("levels must be nonincreasing".into()));
        }
        Ok(TabulatedSchedule { levels })
    }

    /// `η ≡ 0`: only rank-decreasing events are ever enabled.
    pub fn zero() -> Self {
        TabulatedSchedule { levels: Vec::new() }
    }
}

impl Permissiveness for TabulatedSchedule {
    fn level(&self, k: u64) -> f64 {
        usize::try_from(k)
            .ok()
            .and_then(|i| self.levels.get(i))
            .copied()
            .unwrap_or(0.0)
    }
}

/// Enabled events issued to the plant, sorted by event index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ControlPattern {
    events: Vec<EventId>,
}

impl ControlPattern {
    pub fn events(&self) -> &[EventId] {
        &self.events
    }

    pub fn contains(&self, e: EventId) -> bool {
        self.events.binary_search(&e).is_ok()
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }
}

/// The on-line supervisor over a ranked product.
#[derive(Clone, Copy)]
pub struct Supervisor<'a> {
    product: &'a ProductAutomaton,
    ranking: &'a RankingFunction,
    schedule: &'a dyn Permissiveness,
}

impl<'a> Supervisor<'a> {
    pub fn new(product: &'a ProductAutomaton, ranking: &'a RankingFunction, schedule: &'a dyn Permissiveness) -> Self {
        Supervisor {
            product,
            ranking,
            schedule,
        }
    }

    pub fn product(&self) -> &'a ProductAutomaton {
        self.product
    }

    pub fn ranking(&self) -> &'a RankingFunction {
        self.ranking
    }

    pub fn level(&self, k: u64) -> f64 {
        self.schedule.level(k)
    }

    /// Control pattern for product state `x` at step `k`.
    pub fn online(&self, x: usize, k: u64) -> ControlPattern {
        let bound = f64::from(self.ranking.rank(x)).max(self.schedule.level(k));
        let events = self
            .product
            .transitions_from(x)
            .iter()
            .filter(|&&(_, t)| f64::from(self.ranking.rank(t)) < bound)
            .map(|&(e, _)| e)
            .collect();
        ControlPattern { events }
    }

    /// Pattern of the finite-state realization after observing `s`:
    /// `online(δ_P(x_P0, s), |s|)`.
    pub fn realized_pattern(&self, s: &[EventId]) -> Result<ControlPattern> {
        let m = self.product.step_string(self.product.initial(), s)?;
        Ok(self.online(m, s.len() as u64))
    }

    pub fn start_session(&self) -> Result<Session<'a>> {
        let m = self.product.initial();
        let rank = self.ranking.rank(m);
        if rank >= self.ranking.alpha() {
            return Err(Error::Unenforceable { rank });
        }
        Ok(Session {
            sup: *self,
            m,
            k: 0,
            stopped: rank == 0,
        })
    }

    /// Closed-loop language up to `depth` events: `ε` is in it, and `sσ`
    /// is in it iff `sσ` is generated by the plant and `σ` is in the
    /// pattern issued after `s`. Strings are listed by length, then in
    /// event order.
    pub fn supervised_language(&self, depth: usize, max_strings: usize) -> Result<Vec<Vec<EventId>>> {
        let p = self.product;
        let mut out = vec![Vec::new()];
        let mut frontier = vec![(Vec::new(), p.initial())];
        for len in 0..depth {
            let mut next = Vec::new();
            for (s, m) in &frontier {
                let pattern = self.online(*m, len as u64);
                for &(e, t) in p.transitions_from(*m) {
                    if pattern.contains(e) {
                        let mut s2: Vec<EventId> = s.clone();
                        s2.push(e);
                        if out.len() == max_strings {
                            return Err(Error::Resource {
                                what: "supervised language strings",
                                limit: max_strings,
                            });
                        }
                        out.push(s2.clone());
                        next.push((s2, t));
                    }
                }
            }
            frontier = next;
        }
        Ok(out)
    }
}

/// One observed step of a session, in the JSON-lines transcript format.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TranscriptRecord {
    pub k: u64,
    pub state: [String; 2],
    pub rank: u32,
    pub level: f64,
    pub pattern: Vec<String>,
    pub observed: String,
}

/// A running control session: memory `m = δ_P(x_P0, s)` and step `k = |s|`.
pub struct Session<'a> {
    sup: Supervisor<'a>,
    m: usize,
    k: u64,
    stopped: bool,
}

impl Session<'_> {
    pub fn state(&self) -> usize {
        self.m
    }

    pub fn step(&self) -> u64 {
        self.k
    }

    pub fn rank(&self) -> u32 {
        self.sup.ranking.rank(self.m)
    }

    pub fn is_stopped(&self) -> bool {
        self.stopped
    }

    /// Pattern for the next event, or `None` once stopped.
    pub fn pattern(&self) -> Option<ControlPattern> {
        (!self.stopped).then(|| self.sup.online(self.m, self.k))
    }

    /// Advance on an event executed by the plant.
    pub fn observe(&mut self, e: EventId) -> Result<()> {
        self.observe_recorded(e).map(|_| ())
    }

    /// Like [`observe`](Self::observe), also returning the transcript record
    /// for the step.
    pub fn observe_recorded(&mut self, e: EventId) -> Result<TranscriptRecord> {
        if self.stopped {
            return Err(Error::Stopped);
        }
        let p = self.sup.product;
        let pattern = self.sup.online(self.m, self.k);
        let name = |e: EventId| {
            p.events()
                .get(e.0)
                .map_or_else(|| format!("#{}", e.0), |i| i.name.clone())
        };
        if !pattern.contains(e) {
            return Err(Error::IllegalObservation {
                event: name(e),
                k: self.k,
            });
        }
        let next = p.step(self.m, e)?;
        let record = TranscriptRecord {
            k: self.k,
            state: [p.des_name(self.m).to_string(), p.dfa_name(self.m).to_string()],
            rank: self.rank(),
            level: self.sup.level(self.k),
            pattern: pattern.events().iter().map(|&e| name(e)).collect(),
            observed: name(e),
        };
        self.m = next;
        self.k += 1;
        self.stopped = self.rank() == 0;
        Ok(record)
    }
}
