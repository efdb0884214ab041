//! Discrete Cantor sets, their continuous lifts, and Ahlfors–David
//! regularity scans.
//!
//! The regularity scanners return the *minimal* constants over exhaustive
//! finite interval families, documented per function. Counting and mass
//! queries are exact (prefix sums, closed-form interval intersection).

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FractalError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

type Result<T> = std::result::Result<T, FractalError>;

/// Finite subset of Z_N = {0, …, N−1}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSet {
    #[serde(rename = "N")]
    pub n: u64,
    pub members: Vec<u64>,
}

impl IndexSet {
    pub fn new(n: u64, mut members: Vec<u64>) -> Result<Self> {
        if n == 0 {
            return Err(FractalError::InvalidArgument("modulus must be >= 1".into()));
        }
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&m| m >= n) {
            return Err(FractalError::InvalidArgument(format!(
                "member {bad} outside Z_{n}"
            )));
        }
        Ok(Self { n, members })
    }

    pub fn full(n: u64) -> Self {
        Self {
            n,
            members: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, j: u64) -> bool {
        self.members.binary_search(&j).is_ok()
    }

    /// Mirror image {N−1−j}.
    pub fn reflected(&self) -> Self {
        let mut members: Vec<u64> = self.members.iter().map(|&j| self.n - 1 - j).collect();
        members.sort_unstable();
        Self {
            n: self.n,
            members,
        }
    }
}

/// Finite atomic measure on an interval: sorted atoms with positive weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomicMeasure {
    pub interval: (f64, f64),
    /// (position, weight), strictly increasing positions.
    pub atoms: Vec<(f64, f64)>,
}

impl AtomicMeasure {
    pub fn new(interval: (f64, f64), atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(FractalError::InvalidArgument("empty atom list".into()));
        }
        for w in atoms.windows(2) {
            if !(w[0].0 < w[1].0) {
                return Err(FractalError::InvalidArgument(format!(
                    "atom positions must be strictly increasing: {} then {}",
                    w[0].0, w[1].0
                )));
            }
        }
        for &(x, w) in &atoms {
            if !(w > 0.0) || !x.is_finite() || !w.is_finite() {
                return Err(FractalError::InvalidArgument(format!(
                    "bad atom ({x}, {w})"
                )));
            }
            if x < interval.0 || x > interval.1 {
                return Err(FractalError::InvalidArgument(format!(
                    "atom {x} outside bounding interval [{}, {}]",
                    interval.0, interval.1
                )));
            }
        }
        Ok(Self { interval, atoms })
    }

    pub fn total_mass(&self) -> f64 {
        crate::numerics::pairwise_sum_f64(&self.atoms.iter().map(|a| a.1).collect::<Vec<_>>())
    }

    /// Mass of the closed interval [a, b].
    pub fn mass(&self, a: f64, b: f64) -> f64 {
        let lo = self.atoms.partition_point(|&(x, _)| x < a);
        let hi = self.atoms.partition_point(|&(x, _)| x <= b);
        self.atoms[lo..hi].iter().map(|a| a.1).sum()
    }

    pub fn positions(&self) -> impl Iterator<Item = f64> + '_ {
        self.atoms.iter().map(|a| a.0)
    }
}

/// Finite union of disjoint closed intervals carrying a constant density.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalMeasure {
    /// Disjoint, sorted.
    pub intervals: Vec<(f64, f64)>,
    pub density: f64,
}

impl IntervalMeasure {
    pub fn new(intervals: Vec<(f64, f64)>, density: f64) -> Result<Self> {
        if intervals.is_empty() || !(density > 0.0) {
            return Err(FractalError::InvalidArgument(
                "need at least one interval and a positive density".into(),
            ));
        }
        for w in intervals.windows(2) {
            if !(w[0].1 < w[1].0) {
                return Err(FractalError::InvalidArgument(format!(
                    "intervals not disjoint/sorted near {}",
                    w[0].1
                )));
            }
        }
        Ok(Self { intervals, density })
    }

    pub fn total_mass(&self) -> f64 {
        self.density * self.intervals.iter().map(|&(a, b)| b - a).sum::<f64>()
    }

    /// Mass of [a, b]: density × |union ∩ [a, b]|, closed form.
    pub fn mass(&self, a: f64, b: f64) -> f64 {
        let mut len = 0.0;
        for &(c, d) in &self.intervals {
            if d < a {
                continue;
            }
            if c > b {
                break;
            }
            len += (d.min(b) - c.max(a)).max(0.0);
        }
        self.density * len
    }
}

/// Either kind of measure the continuous regularity scanner accepts.
#[derive(Debug, Clone)]
pub enum Measure {
    Atomic(AtomicMeasure),
    Intervals(IntervalMeasure),
}

impl Measure {
    fn mass(&self, a: f64, b: f64) -> f64 {
        match self {
            Measure::Atomic(m) => m.mass(a, b),
            Measure::Intervals(m) => m.mass(a, b),
        }
    }

    /// Event grid for upper-bound scans: atom positions / interval
    /// endpoints, plus ±h offsets of each.
    fn event_grid(&self, h: f64) -> Vec<f64> {
        let mut pts = Vec::new();
        match self {
            Measure::Atomic(m) => {
                for (x, _) in &m.atoms {
                    pts.extend([*x, x - h, x + h]);
                }
            }
            Measure::Intervals(m) => {
                for &(a, b) in &m.intervals {
                    pts.extend([a, b, a - h, a + h, b - h, b + h]);
                }
            }
        }
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts.dedup();
        pts
    }

    /// Centers for lower-bound scans: every atom, or the midpoint of each
    /// constituent interval. Boundary points of an interval support are
    /// deliberately not centers (half of any small ball around them falls
    /// outside the support, which would report the constant 2 for plain
    /// Lebesgue measure on [0,1]).
    fn support_points(&self) -> Vec<f64> {
        match self {
            Measure::Atomic(m) => m.positions().collect(),
            Measure::Intervals(m) => m.intervals.iter().map(|&(a, b)| 0.5 * (a + b)).collect(),
        }
    }
}

/// Result of a regularity scan: the smallest constants making the upper and
/// lower mass bounds hold over the scanned family.
#[derive(Debug, Clone, Serialize)]
pub struct RegularityReport {
    pub delta: f64,
    pub h: f64,
    pub min_constant_upper: f64,
    pub min_constant_lower: f64,
    /// Interval achieving the binding (larger) constant.
    pub worst_interval: (f64, f64),
    /// δ ∈ (0,1) is the meaningful regime; degenerate δ is allowed for
    /// sanity tests but flagged here.
    pub delta_in_range: bool,
}

/// Discrete Cantor set in Z_{M^k}: all `Σ a_j M^j` with digits from the
/// alphabet.
pub fn cantor_set(m: u64, alphabet: &[u64], k: u32) -> Result<IndexSet> {
    validate_alphabet(m, alphabet)?;
    if k == 0 {
        return Err(FractalError::InvalidArgument("depth k must be >= 1".into()));
    }
    let n = m
        .checked_pow(k)
        .ok_or_else(|| FractalError::InvalidArgument(format!("M^k overflows u64: {m}^{k}")))?;
    let mut members = vec![0u64];
    let mut place = 1u64;
    for _ in 0..k {
        let mut next = Vec::with_capacity(members.len() * alphabet.len());
        for &a in alphabet {
            let offset = a * place;
            next.extend(members.iter().map(|&x| x + offset));
        }
        members = next;
        place *= m;
    }
    members.sort_unstable();
    IndexSet::new(n, members)
}

/// Dilated Cantor set in Z_N, N a multiple of M with M^k ≤ N < M^{k+1}:
/// members ⌈jN/M^k⌉ over the base set (injective since N ≥ M^k).
pub fn dilated_cantor(m: u64, alphabet: &[u64], k: u32, n: u64) -> Result<IndexSet> {
    let base = cantor_set(m, alphabet, k)?;
    let mk = base.n;
    let upper = mk.checked_mul(m);
    if n % m != 0 || n < mk || upper.map_or(false, |u| n >= u) {
        return Err(FractalError::InvalidArgument(format!(
            "N={n} must be a multiple of {m} with {mk} <= N < {}",
            upper.map_or("u64::MAX".into(), |u| u.to_string())
        )));
    }
    let members = base
        .members
        .iter()
        .map(|&j| {
            j.checked_mul(n)
                .map(|jn| jn.div_ceil(mk))
                .ok_or_else(|| FractalError::InvalidArgument("j*N overflows u64".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    IndexSet::new(n, members)
}

/// δ = log|A| / log M, the dimension of the Cantor family.
pub fn cantor_dimension(m: u64, alphabet_len: usize) -> f64 {
    (alphabet_len as f64).ln() / (m as f64).ln()
}

fn validate_alphabet(m: u64, alphabet: &[u64]) -> Result<()> {
    if m < 2 {
        return Err(FractalError::InvalidArgument("base must be >= 2".into()));
    }
    if alphabet.is_empty() || alphabet.len() > m as usize {
        return Err(FractalError::InvalidArgument(
            "alphabet must be nonempty with at most M letters".into(),
        ));
    }
    for w in alphabet.windows(2) {
        if w[0] >= w[1] {
            return Err(FractalError::InvalidArgument(
                "alphabet must be sorted and distinct".into(),
            ));
        }
    }
    if *alphabet.last().unwrap() >= m {
        return Err(FractalError::InvalidArgument(
            "alphabet letters must lie in [0, M)".into(),
        ));
    }
    Ok(())
}

/// Minimal discrete regularity constants for X ⊂ Z_N.
///
/// Upper family: all intervals [a, b] with half-integer endpoints in
/// [−1, N+1] and b − a ≥ 1. For any member of that family the count/size
/// ratio does not decrease when the interval shrinks onto the members it
/// contains, so the scan reduces exactly to member pairs (l ≤ r) with
/// length max(1, x_r − x_l).
///
/// Lower family: intervals of every half-integer size in [1, N] centered at
/// each member. For a fixed center the worst size per count is just below
/// the next count jump, which reduces the scan to member distances.
pub fn min_regularity_discrete(x: &IndexSet, delta: f64) -> Result<RegularityReport> {
    if x.is_empty() {
        return Err(FractalError::InvalidArgument("empty index set".into()));
    }
    if !(0.0..=1.0).contains(&delta) {
        return Err(FractalError::InvalidArgument(format!(
            "delta must lie in [0, 1], got {delta}"
        )));
    }
    let pts = &x.members;
    let nn = x.n as f64;

    let mut upper: f64 = 0.0;
    let mut worst_upper = (0.0, 1.0);
    for l in 0..pts.len() {
        for r in l..pts.len() {
            let count = (r - l + 1) as f64;
            let len = ((pts[r] - pts[l]) as f64).max(1.0);
            let ratio = count / len.powf(delta);
            if ratio > upper {
                upper = ratio;
                worst_upper = (pts[l] as f64, pts[l] as f64 + len);
            }
        }
    }

    let mut lower: f64 = 0.0;
    let mut worst_lower = (0.0, 1.0);
    for &c in pts {
        // Distinct doubled distances to the other members, ascending.
        let mut jumps: Vec<u64> = pts.iter().map(|&p| 2 * p.abs_diff(c)).collect();
        jumps.sort_unstable();
        jumps.dedup();
        // Candidate sizes: largest half-integer before each jump, plus N
        // (and 1, reachable when the set is a singleton).
        let mut candidates: Vec<f64> = jumps[1..]
            .iter()
            .map(|&d| d as f64 - 0.5)
            .filter(|&s| (1.0..=nn).contains(&s))
            .collect();
        if nn >= 1.0 {
            candidates.push(nn);
        }
        if candidates.is_empty() {
            candidates.push(1.0);
        }
        for s in candidates {
            let half = s / 2.0;
            let lo = pts.partition_point(|&p| (p as f64) < c as f64 - half);
            let hi = pts.partition_point(|&p| (p as f64) <= c as f64 + half);
            let count = (hi - lo) as f64;
            let ratio = s.powf(delta) / count;
            if ratio > lower {
                lower = ratio;
                worst_lower = (c as f64 - half, c as f64 + half);
            }
        }
    }

    let worst = if upper >= lower {
        worst_upper
    } else {
        worst_lower
    };
    Ok(RegularityReport {
        delta,
        h: 1.0,
        min_constant_upper: upper,
        min_constant_lower: lower,
        worst_interval: worst,
        delta_in_range: delta > 0.0 && delta < 1.0,
    })
}

/// Minimal continuous regularity constants up to scale h.
///
/// Upper family: all intervals with endpoints in the event grid (atom
/// positions / interval endpoints, each also shifted by ±h) of size ≥ h.
/// Lower family: intervals of sizes h·ρ^i ∩ [h, 1] (ρ = 2^{1/4}, the exact
/// size 1 appended) centered at every support point.
pub fn min_regularity_continuous(mu: &Measure, delta: f64, h: f64) -> Result<RegularityReport> {
    if !(h > 0.0) {
        return Err(FractalError::InvalidArgument("scale h must be > 0".into()));
    }
    let empty = match mu {
        Measure::Atomic(m) => m.atoms.is_empty(),
        Measure::Intervals(m) => m.intervals.is_empty(),
    };
    if empty {
        return Err(FractalError::InvalidArgument("empty support".into()));
    }

    let grid = mu.event_grid(h);
    let mut upper: f64 = 0.0;
    let mut worst_upper = (0.0, 0.0);
    for (i, &a) in grid.iter().enumerate() {
        for &b in &grid[i..] {
            let len = b - a;
            if len < h {
                continue;
            }
            let ratio = mu.mass(a, b) / len.powf(delta);
            if ratio > upper {
                upper = ratio;
                worst_upper = (a, b);
            }
        }
    }

    // Geometric size grid.
    let rho = 2f64.powf(0.25);
    let mut sizes = Vec::new();
    let mut s = h;
    while s <= 1.0 {
        sizes.push(s);
        s *= rho;
    }
    if sizes.last().map_or(true, |&s| s < 1.0) && h <= 1.0 {
        sizes.push(1.0);
    }
    let mut lower: f64 = 0.0;
    let mut worst_lower = (0.0, 0.0);
    for c in mu.support_points() {
        for &s in &sizes {
            let (a, b) = (c - s / 2.0, c + s / 2.0);
            let m = mu.mass(a, b);
            if m <= 0.0 {
                return Err(FractalError::InvalidArgument(format!(
                    "zero mass around support point {c} at size {s}"
                )));
            }
            let ratio = s.powf(delta) / m;
            if ratio > lower {
                lower = ratio;
                worst_lower = (a, b);
            }
        }
    }

    let worst = if upper >= lower {
        worst_upper
    } else {
        worst_lower
    };
    Ok(RegularityReport {
        delta,
        h,
        min_constant_upper: upper,
        min_constant_lower: lower,
        worst_interval: worst,
        delta_in_range: delta > 0.0 && delta < 1.0,
    })
}

/// Lift X ⊂ Z_N to atoms at j/N in [0, 1], each of weight N^{−δ}.
pub fn lift_to_unit(x: &IndexSet, delta: f64) -> Result<AtomicMeasure> {
    if x.is_empty() {
        return Err(FractalError::InvalidArgument("empty index set".into()));
    }
    let n = x.n as f64;
    let w = n.powf(-delta);
    AtomicMeasure::new(
        (0.0, 1.0),
        x.members.iter().map(|&j| (j as f64 / n, w)).collect(),
    )
}

/// Fatten an atomic measure: the union of [p−h, p+h] over atoms, merged
/// where overlapping or touching, carrying density h^{δ−1}.
pub fn fatten(mu: &AtomicMeasure, h: f64, delta: f64) -> Result<IntervalMeasure> {
    if !(h > 0.0) {
        return Err(FractalError::InvalidArgument("h must be > 0".into()));
    }
    let mut intervals: Vec<(f64, f64)> = Vec::new();
    for (x, _) in &mu.atoms {
        let (a, b) = (x - h, x + h);
        match intervals.last_mut() {
            Some(last) if a <= last.1 => last.1 = b.max(last.1),
            _ => intervals.push((a, b)),
        }
    }
    IntervalMeasure::new(intervals, h.powf(delta - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    const LOG2_3: f64 = 0.6309297535714574; // log 2 / log 3

    #[test]
    fn cantor_examples() {
        let c1 = cantor_set(3, &[0, 2], 1).unwrap();
        assert_eq!(c1.members, vec![0, 2]);
        let c2 = cantor_set(3, &[0, 2], 2).unwrap();
        assert_eq!(c2.members, vec![0, 2, 6, 8]);
        let full = cantor_set(2, &[0, 1], 3).unwrap();
        assert_eq!(full.members, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn cantor_cardinality_and_digits() {
        for (m, alph, k) in [(3u64, vec![0u64, 2], 5u32), (5, vec![1, 2, 4], 4)] {
            let c = cantor_set(m, &alph, k).unwrap();
            assert_eq!(c.len(), alph.len().pow(k));
            // Membership ⟺ every base-M digit lies in the alphabet.
            for j in 0..c.n {
                let mut v = j;
                let mut ok = true;
                for _ in 0..k {
                    if !alph.contains(&(v % m)) {
                        ok = false;
                        break;
                    }
                    v /= m;
                }
                assert_eq!(c.contains(j), ok, "j={j}");
            }
        }
    }

    #[test]
    fn cantor_overflow_rejected() {
        assert!(cantor_set(10, &[0, 9], 30).is_err());
    }

    #[test]
    fn dilated_examples() {
        let d = dilated_cantor(3, &[0, 2], 2, 12).unwrap();
        assert_eq!(d.members, vec![0, 3, 8, 11]);
        let d = dilated_cantor(3, &[0, 2], 1, 6).unwrap();
        assert_eq!(d.members, vec![0, 4]);
        // N = M^k reduces to the plain set.
        let d = dilated_cantor(3, &[0, 2], 3, 27).unwrap();
        assert_eq!(d.members, cantor_set(3, &[0, 2], 3).unwrap().members);
        assert!(dilated_cantor(3, &[0, 2], 2, 10).is_err()); // not a multiple of 3
        assert!(dilated_cantor(3, &[0, 2], 2, 6).is_err()); // below M^k
    }

    #[test]
    fn dilation_preserves_count_and_cell() {
        for n in [9u64, 12, 18, 24] {
            let base = cantor_set(3, &[0, 2], 2).unwrap();
            let d = dilated_cantor(3, &[0, 2], 2, n).unwrap();
            assert_eq!(d.len(), base.len());
            for (&j, &b) in base.members.iter().zip(&d.members) {
                // b lands in [jN/M^k, (j+1)N/M^k).
                assert!((b as u128 * 9) >= j as u128 * n as u128);
                assert!(((b as u128) * 9) < (j as u128 + 1) * n as u128);
            }
        }
    }

    #[test]
    fn singleton_regularity() {
        let x = IndexSet::new(10, vec![0]).unwrap();
        let r = min_regularity_discrete(&x, 0.0).unwrap();
        assert_eq!(r.min_constant_upper, 1.0);
        assert_eq!(r.min_constant_lower, 1.0);
        assert!(!r.delta_in_range);
    }

    #[test]
    fn ternary_cantor_bound() {
        // Two-letter ternary sets satisfy the 2M^{2δ} bound at every depth.
        let bound = 2.0 * 3f64.powf(2.0 * LOG2_3);
        for k in 1..=7 {
            let c = cantor_set(3, &[0, 2], k).unwrap();
            let r = min_regularity_discrete(&c, LOG2_3).unwrap();
            assert!(r.min_constant_upper <= bound, "k={k}: {}", r.min_constant_upper);
            assert!(r.min_constant_lower <= bound, "k={k}: {}", r.min_constant_lower);
        }
    }

    #[test]
    fn reflection_symmetry() {
        let c = cantor_set(5, &[0, 1, 3], 3).unwrap();
        let delta = cantor_dimension(5, 3);
        let a = min_regularity_discrete(&c, delta).unwrap();
        let b = min_regularity_discrete(&c.reflected(), delta).unwrap();
        assert_eq!(a.min_constant_upper, b.min_constant_upper);
        assert_eq!(a.min_constant_lower, b.min_constant_lower);
    }

    #[test]
    fn lift_examples() {
        let x = IndexSet::new(3, vec![0, 2]).unwrap();
        let mu = lift_to_unit(&x, LOG2_3).unwrap();
        // 3^{log2/log3} = 2, so each atom weighs 1/2.
        assert!((mu.atoms[0].1 - 0.5).abs() < 1e-12);
        assert!((mu.atoms[1].0 - 2.0 / 3.0).abs() < 1e-15);
        assert!((mu.total_mass() - 1.0).abs() < 1e-12);

        let full = IndexSet::full(8);
        let mu = lift_to_unit(&full, 1.0).unwrap();
        assert!((mu.total_mass() - 1.0).abs() < 1e-12);
        for (_, w) in &mu.atoms {
            assert!((w - 0.125).abs() < 1e-15);
        }

        let single = IndexSet::new(7, vec![0]).unwrap();
        let mu = lift_to_unit(&single, 0.37).unwrap();
        assert!((mu.total_mass() - 7f64.powf(-0.37)).abs() < 1e-15);
    }

    #[test]
    fn fatten_examples() {
        let one = AtomicMeasure::new((0.0, 1.0), vec![(0.5, 1.0)]).unwrap();
        let f = fatten(&one, 0.1, 1.0).unwrap();
        assert_eq!(f.intervals, vec![(0.4, 0.6)]);
        assert!((f.density - 1.0).abs() < 1e-15);
        assert!((f.total_mass() - 0.2).abs() < 1e-15);

        let two = AtomicMeasure::new((0.0, 1.0), vec![(0.0, 0.5), (2.0 / 3.0, 0.5)]).unwrap();
        let f = fatten(&two, 0.4, 0.5).unwrap();
        assert_eq!(f.intervals.len(), 1);
        assert!((f.intervals[0].0 + 0.4).abs() < 1e-15);
        assert!((f.intervals[0].1 - (2.0 / 3.0 + 0.4)).abs() < 1e-12);
    }

    #[test]
    fn fatten_mass_matches_exact_union_sweep() {
        // Independent oracle: integer sweep over the covered cells. Atoms
        // sit at j/27 with h = 1/27, so in units of 1/27 the union covers
        // [j−1, j+1] per atom.
        let c = cantor_set(3, &[0, 2], 3).unwrap();
        let mu = lift_to_unit(&c, LOG2_3).unwrap();
        let h = 3f64.powi(-3);
        let f = fatten(&mu, h, LOG2_3).unwrap();
        let mut covered = vec![false; 29];
        for &j in &c.members {
            covered[j as usize] = true;
            covered[j as usize + 1] = true;
        }
        let cells = covered.iter().filter(|&&c| c).count();
        let exact_len = cells as f64 * h;
        assert!(
            (f.total_mass() - h.powf(LOG2_3 - 1.0) * exact_len).abs() < 1e-10,
            "mass {} vs exact {}",
            f.total_mass(),
            h.powf(LOG2_3 - 1.0) * exact_len
        );
    }

    #[test]
    fn lebesgue_density_is_one_regular() {
        let mu = Measure::Intervals(IntervalMeasure::new(vec![(0.0, 1.0)], 1.0).unwrap());
        let r = min_regularity_continuous(&mu, 1.0, 1e-3).unwrap();
        assert!(r.min_constant_upper <= 1.0 + 1e-9, "{}", r.min_constant_upper);
        assert!(r.min_constant_lower <= 1.0 + 1e-9, "{}", r.min_constant_lower);
    }

    #[test]
    fn lifted_scanner_matches_discrete_scanner() {
        // Bridge between the two scanners: on a lifted set the continuous
        // constants agree with the discrete ones up to the documented
        // family slack 2^δ.
        for (m, alph) in [(3u64, vec![0u64, 2]), (4, vec![0, 2, 3]), (5, vec![0, 3])] {
            for k in 1..=4u32 {
                let c = cantor_set(m, &alph, k).unwrap();
                let delta = cantor_dimension(m, alph.len());
                let disc = min_regularity_discrete(&c, delta).unwrap();
                let mu = Measure::Atomic(lift_to_unit(&c, delta).unwrap());
                let cont = min_regularity_continuous(&mu, delta, 1.0 / c.n as f64).unwrap();
                let slack = 2f64.powf(delta);
                assert!(
                    cont.min_constant_upper <= disc.min_constant_upper * slack + 1e-9,
                    "M={m} k={k}: {} vs {}",
                    cont.min_constant_upper,
                    disc.min_constant_upper
                );
                assert!(
                    cont.min_constant_lower <= disc.min_constant_lower * slack + 1e-9,
                    "M={m} k={k}: {} vs {}",
                    cont.min_constant_lower,
                    disc.min_constant_lower
                );
            }
        }
    }

    #[test]
    fn fattened_cantor_regularity_bound() {
        // Fattening a lifted set keeps regularity with constant ≤ 30·C_R².
        let c = cantor_set(3, &[0, 2], 4).unwrap();
        let delta = LOG2_3;
        let disc = min_regularity_discrete(&c, delta).unwrap();
        let cr = disc.min_constant_upper.max(disc.min_constant_lower);
        let mu = lift_to_unit(&c, delta).unwrap();
        let h = 1.0 / c.n as f64;
        let fat = Measure::Intervals(fatten(&mu, h, delta).unwrap());
        let r = min_regularity_continuous(&fat, delta, h).unwrap();
        let bound = 30.0 * cr * cr;
        assert!(r.min_constant_upper <= bound, "{} vs {bound}", r.min_constant_upper);
        assert!(r.min_constant_lower <= bound, "{} vs {bound}", r.min_constant_lower);
    }

    #[test]
    fn index_set_json_shape() {
        let x = IndexSet::new(12, vec![0, 3, 8, 11]).unwrap();
        let js = serde_json::to_string(&x).unwrap();
        assert_eq!(js, r#"{"N":12,"members":[0,3,8,11]}"#);
        let back: IndexSet = serde_json::from_str(&js).unwrap();
        assert_eq!(back, x);
    }
}
