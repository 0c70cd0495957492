//! Wasserstein and bottleneck distances between extended diagrams and
//! between transforms.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::assignment::{bottleneck_assignment, min_cost_assignment};
use crate::diagram::{BarType, ExtParam, ExtendedDiagram, Interval};
use crate::error::{Error, Result};
use crate::transform::Xpht;

/// The exponent `p` of a Wasserstein distance; `Infinity` is the bottleneck.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Norm {
    Finite(f64),
    Infinity,
}

impl Norm {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_infinite() && p > 0.0 {
            Ok(Norm::Infinity)
        } else if p >= 1.0 {
            Ok(Norm::Finite(p))
        } else {
            Err(Error::Incompatible(format!("p must be at least 1, got {p}")))
        }
    }

    /// Combines per-item costs: `(Σ c^p)^(1/p)`, or the maximum.
    pub fn combine(self, costs: impl IntoIterator<Item = f64>) -> f64 {
        self.root(self.accumulate(costs))
    }

    /// `Σ c^p`, or the maximum for the bottleneck.
    pub fn accumulate(self, costs: impl IntoIterator<Item = f64>) -> f64 {
        match self {
            Norm::Finite(p) => costs.into_iter().map(|c| c.powf(p)).sum(),
            Norm::Infinity => costs.into_iter().fold(0.0, f64::max),
        }
    }

    /// Inverse of the outer power applied by [`Norm::accumulate`].
    pub fn root(self, total: f64) -> f64 {
        match self {
            Norm::Finite(p) => total.powf(1.0 / p),
            Norm::Infinity => total,
        }
    }
}

impl FromStr for Norm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Norm::Infinity),
            other => other
                .parse::<f64>()
                .map_err(|_| Error::Incompatible(format!("cannot parse p from {s:?}")))
                .and_then(Norm::new),
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Norm::Finite(p) => write!(f, "{p}"),
            Norm::Infinity => write!(f, "inf"),
        }
    }
}

/// `|s - t|` within one phase, `+∞` across phases.
pub fn ext_param_dist(a: ExtParam, b: ExtParam) -> f64 {
    if a.phase == b.phase {
        (a.value - b.value).abs()
    } else {
        f64::INFINITY
    }
}

pub fn interval_dist(i: &Interval, j: &Interval, p: Norm) -> f64 {
    p.combine([ext_param_dist(i.birth, j.birth), ext_param_dist(i.death, j.death)])
}

/// Distance from `i` to the nearest zero-length interval `[(t, ·), (t, ·))`.
pub fn eph_cost(i: &Interval, p: Norm) -> f64 {
    let length = (i.birth.value - i.death.value).abs();
    match p {
        Norm::Finite(p) => length * 2f64.powf((1.0 - p) / p),
        Norm::Infinity => length / 2.0,
    }
}

/// An optimal transportation plan between two multisets of bars.
#[derive(Clone, Debug, PartialEq)]
pub struct TransportCost {
    pub p: Norm,
    /// `(index in first, index in second, interval distance)`.
    pub matched: Vec<(usize, usize, f64)>,
    /// Bars of the first multiset sent to the ephemeral set, with their cost.
    pub unmatched_first: Vec<(usize, f64)>,
    pub unmatched_second: Vec<(usize, f64)>,
}

impl TransportCost {
    fn costs(&self) -> impl Iterator<Item = f64> + '_ {
        self.matched
            .iter()
            .map(|m| m.2)
            .chain(self.unmatched_first.iter().map(|u| u.1))
            .chain(self.unmatched_second.iter().map(|u| u.1))
    }

    /// `Σ c^p` over every part of the plan (maximum for the bottleneck).
    pub fn powered(&self) -> f64 {
        self.p.accumulate(self.costs())
    }

    /// The p-cost of the plan.
    pub fn total(&self) -> f64 {
        self.p.root(self.powered())
    }
}

/// Optimal plan between two multisets of bars of the same type.
pub fn optimal_plan(first: &[Interval], second: &[Interval], p: Norm) -> TransportCost {
    let (n, m) = (first.len(), second.len());
    let size = n + m;
    let lift = |c: f64| match p {
        Norm::Finite(p) => c.powf(p),
        Norm::Infinity => c,
    };
    // Rows: bars of `first`, then ghosts of `second`.
    // Columns: bars of `second`, then ghosts of `first`.
    let mut cost = vec![vec![f64::INFINITY; size]; size];
    for i in 0..n {
        for j in 0..m {
            cost[i][j] = lift(interval_dist(&first[i], &second[j], p));
        }
        cost[i][m + i] = lift(eph_cost(&first[i], p));
    }
    for j in 0..m {
        cost[n + j][j] = lift(eph_cost(&second[j], p));
        for i in 0..n {
            cost[n + j][m + i] = 0.0;
        }
    }
    let assignment = match p {
        Norm::Finite(_) => min_cost_assignment(&cost),
        Norm::Infinity => bottleneck_assignment(&cost).0,
    };

    let mut plan = TransportCost { p, matched: Vec::new(), unmatched_first: Vec::new(), unmatched_second: Vec::new() };
    for (row, &col) in assignment.iter().enumerate() {
        match (row < n, col < m) {
            (true, true) => plan.matched.push((row, col, interval_dist(&first[row], &second[col], p))),
            (true, false) => plan.unmatched_first.push((row, eph_cost(&first[row], p))),
            (false, true) => plan.unmatched_second.push((col, eph_cost(&second[col], p))),
            (false, false) => {}
        }
    }
    plan
}

/// Optimal `Σ c^p` (or bottleneck) with both multisets sorted and put in a
/// fixed order, so the value does not depend on argument or bar order.
fn type_powered(first: &[Interval], second: &[Interval], p: Norm) -> f64 {
    let sorted = |bars: &[Interval]| {
        let mut v = bars.to_vec();
        v.sort_by(Interval::cmp_values);
        v
    };
    let (mut a, mut b) = (sorted(first), sorted(second));
    let key = |bars: &[Interval]| bars.iter().flat_map(|i| [i.birth.value, i.death.value]).collect::<Vec<f64>>();
    let order = a.len().cmp(&b.len()).then_with(|| {
        let (ka, kb) = (key(&a), key(&b));
        ka.iter().zip(&kb).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    });
    if order.is_gt() {
        std::mem::swap(&mut a, &mut b);
    }
    optimal_plan(&a, &b, p).powered()
}

/// Wasserstein distance between two multisets of bars of one type.
pub fn wasserstein_type(first: &[Interval], second: &[Interval], p: Norm) -> f64 {
    p.root(type_powered(first, second, p))
}

fn diagram_powered(d1: &ExtendedDiagram, d2: &ExtendedDiagram, p: Norm) -> f64 {
    let parts = (0..2)
        .flat_map(|k| BarType::ALL.into_iter().map(move |ty| type_powered(d1.dim(k).bars(ty), d2.dim(k).bars(ty), p)));
    match p {
        Norm::Finite(_) => parts.sum(),
        Norm::Infinity => parts.fold(0.0, f64::max),
    }
}

/// Wasserstein distance between extended diagrams, computed separately for
/// each dimension and bar type and then combined.
pub fn wasserstein(d1: &ExtendedDiagram, d2: &ExtendedDiagram, p: Norm) -> f64 {
    p.root(diagram_powered(d1, d2, p))
}

/// Distance between two transforms on the same direction grid: the
/// quadrature `((2π/K) Σ W_p^p)^(1/p)`, or the maximum for `p = ∞`.
pub fn xpht_distance(x1: &Xpht, x2: &Xpht, p: Norm) -> Result<f64> {
    if x1.len() != x2.len() {
        return Err(Error::Incompatible(format!("{} directions vs {}", x1.len(), x2.len())));
    }
    if x1.centered != x2.centered {
        return Err(Error::Incompatible("one transform is centred and the other is not".into()));
    }
    if x1.is_empty() {
        return Err(Error::Incompatible("no directions".into()));
    }
    let terms: Vec<f64> = x1.diagrams.par_iter().zip(&x2.diagrams).map(|(a, b)| diagram_powered(a, b, p)).collect();
    Ok(match p {
        Norm::Finite(_) => {
            let weight = 2.0 * PI / x1.len() as f64;
            p.root(weight * terms.iter().sum::<f64>())
        }
        Norm::Infinity => terms.iter().copied().fold(0.0, f64::max),
    })
}
