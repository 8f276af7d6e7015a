//! Exhaustive enumeration of fixed-point data allowed by the G-signature
//! theorem.
//!
//! A dataset consists of `m` isolated fixed points with rotation numbers `q`
//! and `n` fixed spheres with self-intersections `[S_i]^2`, subject to
//!
//! ```text
//! m + 2n = chi
//! (p - 1) sigma = sum_x def(p; q_x, 1) + (p^2 - 1)/3 * sum_i [S_i]^2
//! ```
//!
//! Rotation numbers are free parameters in `1..p`; no realizability check
//! beyond these two identities is made, so the enumeration over-approximates
//! actual actions. Solutions that differ only by swapping `q` with its inverse
//! mod `p` have equal defects and are listed separately.
//!
//! Multiplying the signature identity by 3 makes every term an integer, since
//! `3 def(p; q, 1) = -2 (q, p)`. For each `n` the sphere multisets are grouped
//! by their sum and the remaining point condition is solved by meet in the
//! middle: the rotation numbers are split into two halves, each half tabulates
//! its multisets by `(size, defect sum)`, and matching pairs are joined.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::ToPrimitive;

use crate::dedekind::{defect, dedekind_sum_direct, PrimeOrder, RotationNumber};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Allowed range of sphere self-intersections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SearchWindow {
    pub s_min: i64,
    pub s_max: i64,
    /// Property (*): cap squares at -1.
    pub require_star: bool,
    /// Minimal manifold with (*): cap squares at -2.
    pub require_minimal: bool,
    pub allow_zero_square: bool,
}

impl SearchWindow {
    pub fn new(s_min: i64, s_max: i64) -> Result<Self> {
        if s_min > s_max {
            return Err(Error::Domain(format!("window [{s_min}, {s_max}] has s_min > s_max")));
        }
        Ok(SearchWindow {
            s_min,
            s_max,
            require_star: false,
            require_minimal: false,
            allow_zero_square: false,
        })
    }

    pub fn star(mut self) -> Self {
        self.require_star = true;
        self
    }

    pub fn minimal(mut self) -> Self {
        self.require_minimal = true;
        self
    }

    pub fn allow_zero(mut self) -> Self {
        self.allow_zero_square = true;
        self
    }

    /// Upper end of the window after the caps.
    pub fn effective_max(&self) -> i64 {
        let mut hi = self.s_max;
        if self.require_star {
            hi = hi.min(-1);
        }
        if self.require_minimal {
            hi = hi.min(-2);
        }
        hi
    }

    /// Allowed squares, ascending.
    pub fn squares(&self) -> Result<Vec<i64>> {
        let squares: Vec<i64> = (self.s_min..=self.effective_max())
            .filter(|&s| s != 0 || self.allow_zero_square)
            .collect();
        if squares.is_empty() {
            return Err(Error::EmptyWindow);
        }
        Ok(squares)
    }
}

/// One solution: sorted rotation numbers of the isolated points and sorted
/// sphere self-intersections.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FixedPointData {
    points: Vec<RotationNumber>,
    spheres: Vec<i64>,
}

impl FixedPointData {
    pub fn new(mut points: Vec<RotationNumber>, mut spheres: Vec<i64>) -> Self {
        points.sort_unstable();
        spheres.sort_unstable();
        FixedPointData { points, spheres }
    }

    pub fn points(&self) -> &[RotationNumber] {
        &self.points
    }

    pub fn spheres(&self) -> &[i64] {
        &self.spheres
    }

    pub fn m(&self) -> usize {
        self.points.len()
    }

    pub fn n(&self) -> usize {
        self.spheres.len()
    }

    /// Checks both identities exactly, with defects computed from the direct
    /// Dedekind sum.
    pub fn verify(&self, p: PrimeOrder, chi: i64, sigma: i64) -> bool {
        if (self.m() + 2 * self.n()) as i64 != chi {
            return false;
        }
        if self.points.iter().any(|q| q.order() != p) {
            return false;
        }
        let pi = i64::from(p.get());
        let defects: Rational = self
            .points
            .iter()
            .map(|&q| Rational::from_integer(-4 * pi) * dedekind_sum_direct(q))
            .sum();
        let sphere_coeff = Rational::new(pi * pi - 1, 3).expect("nonzero");
        let spheres = Rational::from_integer(self.spheres.iter().sum::<i64>());
        Rational::from_integer((pi - 1) * sigma) == defects + sphere_coeff * spheres
    }
}

impl Ord for FixedPointData {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n()
            .cmp(&other.n())
            .then_with(|| self.spheres.cmp(&other.spheres))
            .then_with(|| self.points.cmp(&other.points))
    }
}

impl PartialOrd for FixedPointData {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn check_inputs(chi: i64, sigma: i64) -> Result<()> {
    if chi < 3 {
        return Err(Error::Domain(format!("chi must be at least 3, got {chi}")));
    }
    if sigma.abs() > chi - 2 {
        return Err(Error::Domain(format!("|sigma| must be at most chi - 2, got sigma = {sigma}")));
    }
    Ok(())
}

/// Multisets of rotation numbers from one half, by size and by scaled
/// defect sum. Each multiset is stored as a count vector over the half.
struct HalfTable {
    values: Vec<RotationNumber>,
    by_size: Vec<BTreeMap<i64, Vec<Vec<u32>>>>,
}

impl HalfTable {
    fn build(values: Vec<RotationNumber>, weights: &[i64], max_size: usize) -> Self {
        let mut by_size = vec![BTreeMap::new(); max_size + 1];
        let mut counts = vec![0u32; values.len()];
        Self::fill(weights, 0, 0, 0, max_size, &mut counts, &mut by_size);
        HalfTable { values, by_size }
    }

    fn fill(
        weights: &[i64],
        index: usize,
        size: usize,
        sum: i64,
        max_size: usize,
        counts: &mut Vec<u32>,
        out: &mut Vec<BTreeMap<i64, Vec<Vec<u32>>>>,
    ) {
        if index == weights.len() {
            out[size].entry(sum).or_default().push(counts.clone());
            return;
        }
        for extra in 0..=(max_size - size) {
            counts[index] = extra as u32;
            Self::fill(
                weights,
                index + 1,
                size + extra,
                sum + weights[index] * extra as i64,
                max_size,
                counts,
                out,
            );
        }
        counts[index] = 0;
    }

    fn get(&self, size: usize, sum: i64) -> Option<&Vec<Vec<u32>>> {
        self.by_size.get(size).and_then(|m| m.get(&sum))
    }

    fn expand(&self, counts: &[u32], out: &mut Vec<RotationNumber>) {
        for (&q, &c) in self.values.iter().zip(counts) {
            out.extend(core::iter::repeat_n(q, c as usize));
        }
    }
}

/// Point multisets of every size up to `max_points`, split for meet in the
/// middle.
struct PointSolver {
    left: HalfTable,
    right: HalfTable,
}

impl PointSolver {
    fn new(p: PrimeOrder, max_points: usize) -> Self {
        let rotations: Vec<RotationNumber> = p.rotations().collect();
        let weights: Vec<i64> = rotations.iter().map(|&q| scaled_defect(q)).collect();
        let half = rotations.len().div_ceil(2);
        let (lw, rw) = weights.split_at(half);
        PointSolver {
            left: HalfTable::build(rotations[..half].to_vec(), lw, max_points),
            right: HalfTable::build(rotations[half..].to_vec(), rw, max_points),
        }
    }

    /// Sorted multisets of size `m` whose scaled defects sum to `target`.
    fn solve(&self, m: usize, target: i64) -> Vec<Vec<RotationNumber>> {
        let mut out = Vec::new();
        for j in 0..=m {
            let Some(lefts) = self.left.by_size.get(j) else { continue };
            for (&a, left_sets) in lefts {
                let Some(right_sets) = self.right.get(m - j, target - a) else { continue };
                for l in left_sets {
                    for r in right_sets {
                        let mut points = Vec::with_capacity(m);
                        self.left.expand(l, &mut points);
                        self.right.expand(r, &mut points);
                        out.push(points);
                    }
                }
            }
        }
        out
    }

    fn exists(&self, m: usize, target: i64) -> bool {
        (0..=m).any(|j| {
            self.left.by_size.get(j).is_some_and(|lefts| {
                lefts.keys().any(|&a| self.right.get(m - j, target - a).is_some())
            })
        })
    }
}

/// `3 def(p; q, 1)`, an integer.
fn scaled_defect(q: RotationNumber) -> i64 {
    let scaled = defect(q) * Rational::from_integer(3);
    assert!(scaled.is_integer(), "3 * def(p; q, 1) must be an integer");
    scaled.numer().to_i64().expect("defect fits in i64")
}

/// Scaled target for the point defects once the sphere squares sum to
/// `sphere_sum`: `3(p-1) sigma - (p^2 - 1) sphere_sum`.
fn point_target(p: PrimeOrder, sigma: i64, sphere_sum: i64) -> i64 {
    let p = i64::from(p.get());
    3 * (p - 1) * sigma - (p * p - 1) * sphere_sum
}

/// Nondecreasing sequences of length `n` drawn from `squares`, grouped by sum.
fn sphere_multisets(squares: &[i64], n: usize) -> BTreeMap<i64, Vec<Vec<i64>>> {
    fn go(
        squares: &[i64],
        start: usize,
        left: usize,
        current: &mut Vec<i64>,
        out: &mut BTreeMap<i64, Vec<Vec<i64>>>,
    ) {
        if left == 0 {
            out.entry(current.iter().sum()).or_default().push(current.clone());
            return;
        }
        for i in start..squares.len() {
            current.push(squares[i]);
            go(squares, i, left - 1, current, out);
            current.pop();
        }
    }
    let mut out = BTreeMap::new();
    go(squares, 0, n, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Sums reachable by `n` squares from `squares`.
fn sphere_sums(squares: &[i64], n: usize) -> Vec<i64> {
    let mut sums = alloc::collections::BTreeSet::from([0i64]);
    for _ in 0..n {
        sums = sums.iter().flat_map(|&a| squares.iter().map(move |&s| a + s)).collect();
    }
    sums.into_iter().collect()
}

/// Every fixed-point dataset for `Z_p` acting with `chi`, `sigma` and sphere
/// squares in the window, in canonical order.
pub fn enumerate(
    p: PrimeOrder,
    chi: i64,
    sigma: i64,
    window: &SearchWindow,
) -> Result<Vec<FixedPointData>> {
    check_inputs(chi, sigma)?;
    let squares = window.squares()?;
    let solver = PointSolver::new(p, chi as usize);
    let mut out = Vec::new();
    for n in 0..=(chi / 2) as usize {
        let m = chi as usize - 2 * n;
        for (sum, sphere_sets) in sphere_multisets(&squares, n) {
            let point_sets = solver.solve(m, point_target(p, sigma, sum));
            for spheres in &sphere_sets {
                for points in &point_sets {
                    out.push(FixedPointData::new(points.clone(), spheres.clone()));
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Largest number of spheres over all solutions, or `None` if there are none.
pub fn max_spheres(
    p: PrimeOrder,
    chi: i64,
    sigma: i64,
    window: &SearchWindow,
) -> Result<Option<u64>> {
    check_inputs(chi, sigma)?;
    let squares = window.squares()?;
    let solver = PointSolver::new(p, chi as usize);
    for n in (0..=(chi / 2) as usize).rev() {
        let m = chi as usize - 2 * n;
        if sphere_sums(&squares, n)
            .into_iter()
            .any(|sum| solver.exists(m, point_target(p, sigma, sum)))
        {
            return Ok(Some(n as u64));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> PrimeOrder {
        PrimeOrder::new(n).unwrap()
    }

    fn w(lo: i64, hi: i64) -> SearchWindow {
        SearchWindow::new(lo, hi).unwrap()
    }

    fn summary(sols: &[FixedPointData]) -> Vec<(usize, Vec<i64>, Vec<u32>)> {
        sols.iter()
            .map(|s| (s.m(), s.spheres().to_vec(), s.points().iter().map(|q| q.get()).collect()))
            .collect()
    }

    #[test]
    fn window_caps() {
        assert!(SearchWindow::new(1, 0).is_err());
        assert_eq!(w(-2, 2).squares().unwrap(), [-2, -1, 1, 2]);
        assert_eq!(w(-2, 2).allow_zero().squares().unwrap(), [-2, -1, 0, 1, 2]);
        assert_eq!(w(-3, 3).star().squares().unwrap(), [-3, -2, -1]);
        assert_eq!(w(-3, 3).minimal().squares().unwrap(), [-3, -2]);
        assert_eq!(w(-1, -1).minimal().squares(), Err(Error::EmptyWindow));
        assert_eq!(w(0, 0).squares(), Err(Error::EmptyWindow));
        assert_eq!(enumerate(p(2), 4, 0, &w(0, 0)), Err(Error::EmptyWindow));
    }

    #[test]
    fn involution_free_window() {
        let sols = enumerate(p(2), 4, 0, &w(-2, 2).allow_zero()).unwrap();
        assert_eq!(
            summary(&sols),
            [
                (4, vec![], vec![1, 1, 1, 1]),
                (2, vec![0], vec![1, 1]),
                (0, vec![-2, 2], vec![]),
                (0, vec![-1, 1], vec![]),
                (0, vec![0, 0], vec![]),
            ]
        );
    }

    #[test]
    fn star_windows() {
        let sols = enumerate(p(2), 4, 0, &w(-1, -1).star()).unwrap();
        assert_eq!(summary(&sols), [(4, vec![], vec![1, 1, 1, 1])]);

        let sols = enumerate(p(3), 4, 0, &w(-1, -1).star()).unwrap();
        assert_eq!(summary(&sols), [(4, vec![], vec![1, 1, 2, 2])]);

        assert!(enumerate(p(2), 4, 1, &w(-1, -1).star()).unwrap().is_empty());
    }

    #[test]
    fn max_spheres_examples() {
        assert_eq!(max_spheres(p(2), 4, 0, &w(-1, -1)).unwrap(), Some(0));
        assert_eq!(max_spheres(p(2), 4, 1, &w(-1, -1)).unwrap(), None);
        assert_eq!(max_spheres(p(2), 6, -2, &w(-2, -1)).unwrap(), Some(2));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(enumerate(p(2), 2, 0, &w(-1, -1)), Err(Error::Domain(_))));
        assert!(matches!(enumerate(p(2), 4, 3, &w(-1, -1)), Err(Error::Domain(_))));
        // Parity of chi + sigma is not a precondition.
        let sols = enumerate(p(2), 5, 0, &w(-1, -1).star()).unwrap();
        assert_eq!(summary(&sols), [(5, vec![], vec![1; 5])]);
    }

    #[test]
    fn every_solution_verifies_and_max_agrees() {
        for pn in [2u64, 3, 5, 7] {
            for chi in 3..=9i64 {
                for sigma in -(chi - 2)..=(chi - 2) {
                    if (chi + sigma) % 2 != 0 {
                        continue;
                    }
                    let win = w(-3, 3).allow_zero();
                    let sols = enumerate(p(pn), chi, sigma, &win).unwrap();
                    assert!(sols.iter().all(|s| s.verify(p(pn), chi, sigma)));
                    assert!(sols.windows(2).all(|x| x[0] < x[1]), "sorted, no duplicates");
                    let max = sols.iter().map(|s| s.n() as u64).max();
                    assert_eq!(max_spheres(p(pn), chi, sigma, &win).unwrap(), max);
                }
            }
        }
    }

    #[test]
    fn verifier_rejects_wrong_data() {
        let two = p(2);
        let q = RotationNumber::new(two, 1).unwrap();
        assert!(FixedPointData::new(vec![q; 4], vec![]).verify(two, 4, 0));
        assert!(!FixedPointData::new(vec![q; 4], vec![]).verify(two, 4, 2));
        assert!(!FixedPointData::new(vec![q; 2], vec![]).verify(two, 4, 0));
        let three = RotationNumber::new(p(3), 1).unwrap();
        assert!(!FixedPointData::new(vec![three; 4], vec![]).verify(two, 4, 0));
    }
}
