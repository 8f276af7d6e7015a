//! Independent reference computations for the acceptance suite.
//!
//! Everything here uses plain integer arithmetic and shares no code with the
//! fast paths under test.

/// `4 p^2 s(q, p) = sum_{k=1}^{p-1} (2k - p)(2 (qk mod p) - p)`.
pub fn scaled_dedekind(p: u32, q: u32) -> i128 {
    let (p, q) = (i128::from(p), i128::from(q));
    (1..p).map(|k| (2 * k - p) * (2 * (q * k % p) - p)).sum()
}

/// `p def(p; q, 1) = -4p^2 s(q, p)`, exact integer.
pub fn scaled_defect(p: u32, q: u32) -> i128 {
    -scaled_dedekind(p, q)
}

/// All nondecreasing tuples of length `len` drawn from `values`.
pub fn multisets(values: &[i64], len: usize) -> Vec<Vec<i64>> {
    fn go(values: &[i64], len: usize, start: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..values.len() {
            cur.push(values[i]);
            go(values, len, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(values, len, 0, &mut Vec::new(), &mut out);
    out
}

pub struct Window {
    pub lo: i64,
    pub hi: i64,
    pub star: bool,
    pub minimal: bool,
    pub allow_zero: bool,
}

impl Window {
    pub fn squares(&self) -> Vec<i64> {
        (self.lo..=self.hi)
            .filter(|&s| !(self.star && s > -1))
            .filter(|&s| !(self.minimal && s > -2))
            .filter(|&s| s != 0 || self.allow_zero)
            .collect()
    }
}

/// `(n, spheres, points)` for every dataset with `m + 2n = chi` satisfying
/// `3p(p-1) sigma = 3 sum_x p def_x + p(p^2-1) sum_i [S_i]^2`, in lexicographic order.
pub fn naive_enumerate(p: u32, chi: i64, sigma: i64, w: &Window) -> Vec<(usize, Vec<i64>, Vec<i64>)> {
    let squares = w.squares();
    let rotations: Vec<i64> = (1..i64::from(p)).collect();
    let pi = i128::from(p);
    let lhs = 3 * pi * (pi - 1) * i128::from(sigma);
    let mut out = Vec::new();
    for n in 0..=(chi / 2) as usize {
        let m = chi as usize - 2 * n;
        for spheres in multisets(&squares, n) {
            let sphere_term = pi * (pi * pi - 1) * spheres.iter().map(|&s| i128::from(s)).sum::<i128>();
            for points in multisets(&rotations, m) {
                let point_term: i128 = points.iter().map(|&q| 3 * scaled_defect(p, q as u32)).sum();
                if point_term + sphere_term == lhs {
                    out.push((n, spheres.clone(), points));
                }
            }
        }
    }
    out.sort();
    out
}
