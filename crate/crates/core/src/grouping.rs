//! Random partitioning of a layered circuit into runs of consecutive layers.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, LayeredCircuit};

/// Resampling budget before giving up and using a single group.
pub const MAX_RESAMPLES: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupingPlan {
    pub lengths: Vec<usize>,
}

impl GroupingPlan {
    pub fn single(depth: usize) -> Self {
        GroupingPlan {
            lengths: vec![depth],
        }
    }

    pub fn n_groups(&self) -> usize {
        self.lengths.len()
    }

    pub fn total(&self) -> usize {
        self.lengths.iter().sum()
    }
}

/// Number of groups, uniform over `[lo, hi]` with `lo = min(b, d)` and
/// `hi = max(lo, floor(d / n_q))`.
pub fn sample_group_count<R: Rng + ?Sized>(d: usize, n_q: usize, b: usize, rng: &mut R) -> usize {
    let d = d.max(1);
    let lo = b.max(1).min(d);
    let hi = lo.max(d / n_q.max(1));
    rng.gen_range(lo..=hi)
}

/// Splits `d` layers into `n_s` groups of at least `min_len` layers each.
/// The first `n_s - 1` lengths are drawn uniformly from whatever range still
/// leaves room for the rest; the last group takes the remainder.
///
/// Returns `None` if `d < n_s * min_len`.
pub fn sample_group_lengths<R: Rng + ?Sized>(
    d: usize,
    n_s: usize,
    min_len: usize,
    rng: &mut R,
) -> Option<GroupingPlan> {
    let min_len = min_len.max(1);
    if n_s == 0 || d < n_s * min_len {
        return None;
    }
    let mut lengths = Vec::with_capacity(n_s);
    let mut left = d;
    for i in 0..n_s - 1 {
        let reserve = (n_s - 1 - i) * min_len;
        let m = rng.gen_range(min_len..=left - reserve);
        lengths.push(m);
        left -= m;
    }
    lengths.push(left);
    Some(GroupingPlan { lengths })
}

/// Full sampling step: count, then lengths, resampling on infeasibility and
/// falling back to one group after [`MAX_RESAMPLES`] attempts.
pub fn sample_plan<R: Rng + ?Sized>(
    d: usize,
    n_q: usize,
    b: usize,
    min_len: usize,
    rng: &mut R,
) -> GroupingPlan {
    if d == 0 {
        return GroupingPlan { lengths: vec![] };
    }
    for _ in 0..MAX_RESAMPLES {
        let n_s = sample_group_count(d, n_q, b, rng);
        if let Some(p) = sample_group_lengths(d, n_s, min_len, rng) {
            return p;
        }
    }
    GroupingPlan::single(d)
}

/// Cuts the layered circuit into one subcircuit per group. Each keeps the
/// full qubit count and the original relative order of its gates.
///
/// Panics if the plan does not cover exactly `lc.depth()` layers.
pub fn slice_subcircuits(lc: &LayeredCircuit, plan: &GroupingPlan) -> Vec<Circuit> {
    assert_eq!(
        plan.total(),
        lc.depth(),
        "grouping plan covers {} layers, circuit has {}",
        plan.total(),
        lc.depth()
    );
    let mut group_of_layer = Vec::with_capacity(lc.depth());
    for (gi, &m) in plan.lengths.iter().enumerate() {
        group_of_layer.extend(std::iter::repeat_n(gi, m));
    }
    let n = lc.circuit.n_qubits();
    let mut parts: Vec<Vec<_>> = vec![Vec::new(); plan.n_groups()];
    for (i, g) in lc.circuit.gates().iter().enumerate() {
        parts[group_of_layer[lc.layer_of[i] - 1]].push(*g);
    }
    parts
        .into_iter()
        .map(|gs| Circuit::from_gates_unchecked(n, gs))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::tests::nine_layer_example;
    use crate::circuit::{compute_layers, Gate};
    use crate::generate::random_circuit;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use statrs::distribution::{ChiSquared, ContinuousCDF};

    #[test]
    fn worked_example_admits_three_groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let seen: std::collections::HashSet<_> =
            (0..200).map(|_| sample_group_count(9, 3, 3, &mut rng)).collect();
        assert!(seen.contains(&3));
    }

    #[test]
    fn one_layer_means_one_group() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for b in 1..10 {
            assert_eq!(sample_group_count(1, 4, b, &mut rng), 1);
        }
    }

    #[test]
    fn group_count_is_uniform_on_its_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut counts = [0usize; 21];
        let n = 10_000;
        for _ in 0..n {
            let s = sample_group_count(100, 5, 5, &mut rng);
            assert!((5..=20).contains(&s), "{s}");
            counts[s] += 1;
        }
        let cells = &counts[5..=20];
        assert!(cells.iter().all(|&c| c > 0));
        let expect = n as f64 / cells.len() as f64;
        let stat: f64 = cells.iter().map(|&c| (c as f64 - expect).powi(2) / expect).sum();
        let dist = ChiSquared::new((cells.len() - 1) as f64).unwrap();
        let p = 1.0 - dist.cdf(stat);
        assert!(p > 0.01, "chi-square p = {p}");
    }

    #[test]
    fn lengths_always_sum_to_depth() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10_000 {
            let p = sample_group_lengths(20, 4, 1, &mut rng).unwrap();
            assert_eq!(p.n_groups(), 4);
            assert_eq!(p.total(), 20);
            assert!(p.lengths.iter().all(|&m| m >= 1));
        }
    }

    #[test]
    fn worked_example_lengths_are_reachable() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let hit = (0..2000).any(|_| sample_group_lengths(9, 3, 1, &mut rng).unwrap().lengths == [4, 3, 2]);
        assert!(hit);
    }

    #[test]
    fn single_group_takes_everything() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(sample_group_lengths(5, 1, 1, &mut rng).unwrap().lengths, vec![5]);
        assert_eq!(sample_group_lengths(3, 4, 1, &mut rng), None);
    }

    #[test]
    fn sampled_plans_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for d in 1..60 {
            for n_q in 1..6 {
                let p = sample_plan(d, n_q, 5, 1, &mut rng);
                assert_eq!(p.total(), d);
                assert!(p.n_groups() >= 1 && p.n_groups() <= d);
            }
        }
    }

    #[test]
    fn worked_example_first_group_holds_first_five_gates() {
        let c = nine_layer_example();
        let lc = compute_layers(&c);
        let parts = slice_subcircuits(
            &lc,
            &GroupingPlan {
                lengths: vec![4, 3, 2],
            },
        );
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0].gates(), &c.gates()[..5]);
        assert_eq!(parts[1].gates(), &c.gates()[5..8]);
        assert_eq!(parts[2].gates(), &c.gates()[8..]);
    }

    #[test]
    fn single_plan_returns_input() {
        let c = nine_layer_example();
        let lc = compute_layers(&c);
        let parts = slice_subcircuits(&lc, &GroupingPlan::single(9));
        assert_eq!(parts, vec![c]);
    }

    #[test]
    fn slices_preserve_per_qubit_sequences() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let c = random_circuit(4, 40, &mut rng);
            let lc = compute_layers(&c);
            let plan = sample_plan(lc.depth(), 4, 2, 1, &mut rng);
            let parts = slice_subcircuits(&lc, &plan);
            assert_eq!(parts.len(), plan.n_groups());
            let joined: Vec<Gate> = parts.iter().flat_map(|p| p.gates().iter().copied()).collect();
            assert_eq!(joined.len(), c.len());
            for q in 0..4 {
                let a: Vec<_> = joined.iter().filter(|g| g.acts_on(q)).collect();
                let b: Vec<_> = c.gates_on(q).collect();
                assert_eq!(a, b);
            }
        }
    }
}
