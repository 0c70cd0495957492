//! Transport costs by exhaustive enumeration of plans.

use crate::diagram::{DimDiagram, Interval};
use crate::error::{Error, Result};
use crate::metric::{eph_cost, interval_dist, Norm};

/// Largest `|S1| + |S2|` accepted by the enumerations.
pub const BRUTE_FORCE_CAP: usize = 10;

/// Minimum p-cost over every partial bijection between `first` and
/// `second`, unmatched bars going to the ephemeral set.
pub fn brute_force_wasserstein(first: &[Interval], second: &[Interval], p: Norm) -> Result<f64> {
    let total = first.len() + second.len();
    if total > BRUTE_FORCE_CAP {
        return Err(Error::SizeCap { cap: BRUTE_FORCE_CAP, got: total });
    }
    let mut used = vec![false; second.len()];
    let mut costs = Vec::with_capacity(total);
    let mut best = f64::INFINITY;
    enumerate(first, second, p, 0, &mut used, &mut costs, &mut best);
    Ok(best)
}

fn enumerate(
    first: &[Interval],
    second: &[Interval],
    p: Norm,
    i: usize,
    used: &mut Vec<bool>,
    costs: &mut Vec<f64>,
    best: &mut f64,
) {
    if i == first.len() {
        let depth = costs.len();
        for (j, bar) in second.iter().enumerate() {
            if !used[j] {
                costs.push(eph_cost(bar, p));
            }
        }
        *best = best.min(p.combine(costs.iter().copied()));
        costs.truncate(depth);
        return;
    }
    costs.push(eph_cost(&first[i], p));
    enumerate(first, second, p, i + 1, used, costs, best);
    costs.pop();
    for j in 0..second.len() {
        if used[j] {
            continue;
        }
        let c = interval_dist(&first[i], &second[j], p);
        if c.is_infinite() {
            continue;
        }
        used[j] = true;
        costs.push(c);
        enumerate(first, second, p, i + 1, used, costs, best);
        costs.pop();
        used[j] = false;
    }
}

/// Like [`brute_force_wasserstein`] on all bars of one dimension at once,
/// allowing matches between bars of different types.
pub fn brute_force_joint(first: &DimDiagram, second: &DimDiagram, p: Norm) -> Result<f64> {
    let a: Vec<Interval> = first.all_bars().collect();
    let b: Vec<Interval> = second.all_bars().collect();
    brute_force_wasserstein(&a, &b, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let two = Norm::Finite(2.0);
        assert_eq!(brute_force_wasserstein(&[], &[], two).unwrap(), 0.0);
        let bar = Interval::ord(0.0, 2.0);
        assert_eq!(brute_force_wasserstein(&[bar], &[], Norm::Finite(1.0)).unwrap(), 2.0);
        assert_eq!(brute_force_wasserstein(&[bar], &[], Norm::Infinity).unwrap(), 1.0);
        let near = Interval::ord(0.0, 2.5);
        assert_eq!(brute_force_wasserstein(&[bar], &[near], Norm::Infinity).unwrap(), 0.5);
    }

    #[test]
    fn cap_is_enforced() {
        let bars = vec![Interval::ord(0.0, 1.0); 6];
        assert!(matches!(
            brute_force_wasserstein(&bars, &bars, Norm::Finite(1.0)),
            Err(Error::SizeCap { cap: 10, got: 12 })
        ));
    }
}
