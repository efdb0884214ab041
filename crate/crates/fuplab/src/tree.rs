//! Base-L discretization tree of an atomic measure.
//!
//! Level k partitions the line into half-open cells [q, q+1)·L^{−k}
//! (an atom sitting exactly on a grid point belongs to the cell on its
//! right; decided by exact rational arithmetic, never by float rounding).
//! Cells of zero mass are discarded and maximal runs of consecutive
//! occupied cells merge into one node, so distinct nodes of a level are at
//! least one cell apart and flanking cells carry no mass.
//!
//! Positions are f64 and therefore dyadic rationals; an atom meant to sit
//! at j/N lands within half an ulp of the grid point it names. Scaled
//! positions within 8 ulps of an integer are snapped onto it before the
//! exact floor, so intended grid hits are recovered and everything else is
//! compared exactly.

use crate::fractal::AtomicMeasure;
use crate::mp::MpFix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TreeError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// One interval of the discretization: cells [cell_lo, cell_hi) at its
/// level, i.e. the real interval [cell_lo·L^{−k}, cell_hi·L^{−k}].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreeNode {
    pub level: u32,
    pub cell_lo: i64,
    pub cell_hi: i64,
    pub mass: f64,
    /// Contiguous range into the measure's atom list.
    pub atom_lo: usize,
    pub atom_hi: usize,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

impl TreeNode {
    pub fn len_cells(&self) -> i64 {
        self.cell_hi - self.cell_lo
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscretizationTree {
    pub base: u32,
    /// Actual depth; may be smaller than requested (see `clamped`).
    pub depth: u32,
    pub requested_depth: u32,
    /// True when the requested depth descended below atom spacing and was
    /// reduced.
    pub clamped: bool,
    /// levels[k] holds the nodes of height k, ordered left to right.
    pub levels: Vec<Vec<TreeNode>>,
    pub measure: AtomicMeasure,
}

impl DiscretizationTree {
    pub fn node(&self, level: u32, idx: usize) -> &TreeNode {
        &self.levels[level as usize][idx]
    }

    /// Interval [lo, hi] of a node in real coordinates.
    pub fn interval(&self, node: &TreeNode) -> (f64, f64) {
        let scale = (self.base as f64).powi(-(node.level as i32));
        (node.cell_lo as f64 * scale, node.cell_hi as f64 * scale)
    }

    pub fn center(&self, node: &TreeNode) -> f64 {
        let (a, b) = self.interval(node);
        0.5 * (a + b)
    }

    pub fn size(&self, node: &TreeNode) -> f64 {
        let (a, b) = self.interval(node);
        b - a
    }

    pub fn atom_slice<'a>(&'a self, node: &TreeNode) -> &'a [(f64, f64)] {
        &self.measure.atoms[node.atom_lo..node.atom_hi]
    }

    /// JSON dump: one list per level of
    /// {"num", "den_pow", "len_cells", "mass", "children"}.
    pub fn dump_json(&self) -> serde_json::Value {
        let levels: Vec<serde_json::Value> = self
            .levels
            .iter()
            .map(|nodes| {
                nodes
                    .iter()
                    .map(|n| {
                        json!({
                            "num": n.cell_lo,
                            "den_pow": n.level,
                            "len_cells": n.len_cells(),
                            "mass": n.mass,
                            "children": n.children,
                        })
                    })
                    .collect()
            })
            .collect();
        json!({ "base": self.base, "levels": levels })
    }
}

/// Build the discretization tree of `mu` with the given base, to `depth`
/// levels below the root level 0.
///
/// Depth is clamped to the last level whose grid size is at least the
/// minimum atom spacing; below that resolution every atom is its own node
/// forever and the tree carries no further information.
pub fn build_tree(mu: &AtomicMeasure, base: u32, depth: u32) -> Result<DiscretizationTree, TreeError> {
    if base < 2 {
        return Err(TreeError::InvalidArgument("base must be >= 2".into()));
    }
    if mu.atoms.is_empty() {
        return Err(TreeError::InvalidArgument("empty measure".into()));
    }

    // Clamp: largest K with L^{-K} >= min gap, i.e. L^K <= 1/min_gap.
    let min_gap = mu
        .atoms
        .windows(2)
        .map(|w| w[1].0 - w[0].0)
        .fold(f64::INFINITY, f64::min);
    let mut depth_eff = depth;
    if min_gap.is_finite() {
        let mut k = 0u32;
        let mut scale = 1.0f64;
        while k < depth && scale / base as f64 >= min_gap {
            scale /= base as f64;
            k += 1;
        }
        depth_eff = k;
    }
    let clamped = depth_eff < depth;

    // Exact rational atom positions, reused across levels.
    let rationals: Vec<BigRational> = mu
        .atoms
        .iter()
        .map(|&(x, _)| {
            BigRational::from_float(x)
                .ok_or_else(|| TreeError::InvalidArgument(format!("non-finite atom {x}")))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut levels: Vec<Vec<TreeNode>> = Vec::with_capacity(depth_eff as usize + 1);
    for k in 0..=depth_eff {
        let lk = BigInt::from(base).pow(k);
        // Cell of each atom: floor(x·L^k) exactly, after snapping scaled
        // positions within 8 ulps of an integer onto it.
        let cells: Vec<i64> = rationals
            .iter()
            .map(|r| {
                let scaled = r * &lk;
                let nearest = (&scaled + BigRational::new(BigInt::from(1), BigInt::from(2)))
                    .floor();
                let diff = if scaled >= nearest {
                    &scaled - &nearest
                } else {
                    &nearest - &scaled
                };
                let tol_scale = scaled.abs().max(BigRational::from_integer(BigInt::from(1)));
                let snapped = if diff * BigInt::from(1u64 << 49) <= tol_scale {
                    nearest
                } else {
                    scaled.floor()
                };
                snapped
                    .to_integer()
                    .to_i64()
                    .ok_or_else(|| TreeError::InvalidArgument("cell index overflows i64".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        // Atoms are sorted, so cells are nondecreasing; nodes are maximal
        // runs of consecutive occupied cells.
        let mut nodes: Vec<TreeNode> = Vec::new();
        let mut i = 0usize;
        while i < cells.len() {
            let start_atom = i;
            let mut hi_cell = cells[i] + 1;
            let lo_cell = cells[i];
            i += 1;
            while i < cells.len() && cells[i] <= hi_cell {
                hi_cell = hi_cell.max(cells[i] + 1);
                i += 1;
            }
            let weights: Vec<f64> = mu.atoms[start_atom..i].iter().map(|a| a.1).collect();
            nodes.push(TreeNode {
                level: k,
                cell_lo: lo_cell,
                cell_hi: hi_cell,
                mass: crate::numerics::pairwise_sum_f64(&weights),
                atom_lo: start_atom,
                atom_hi: i,
                parent: None,
                children: Vec::new(),
            });
        }
        levels.push(nodes);
    }

    // Parent/child links by atom-range containment (children partition the
    // parent's atoms, so range containment is equivalent to inclusion).
    for k in 0..depth_eff as usize {
        let (upper, lower) = {
            let (a, b) = levels.split_at_mut(k + 1);
            (&mut a[k], &mut b[0])
        };
        let mut pi = 0usize;
        for (ci, child) in lower.iter_mut().enumerate() {
            while upper[pi].atom_hi <= child.atom_lo {
                pi += 1;
            }
            debug_assert!(
                upper[pi].atom_lo <= child.atom_lo && child.atom_hi <= upper[pi].atom_hi
            );
            child.parent = Some(pi);
            upper[pi].children.push(ci);
        }
    }

    Ok(DiscretizationTree {
        base,
        depth: depth_eff,
        requested_depth: depth,
        clamped,
        levels,
        measure: mu.clone(),
    })
}

/// Per-clause outcome of the structural validation.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub delta: f64,
    pub c_r: f64,
    pub c_r_prime: f64,
    /// δ ∈ (0,1) required for the mass/size clauses to be meaningful.
    pub delta_in_range: bool,
    /// (level, index) of nodes failing the size clause
    /// L^{−H} ≤ |I| ≤ C′_R L^{−H}.
    pub size_failures: Vec<(u32, usize)>,
    /// Nodes failing C_R^{−1} L^{−δH} ≤ μ(I) ≤ C_R (C′_R)^δ L^{−δH}.
    pub mass_failures: Vec<(u32, usize)>,
    /// Children failing μ(child)/μ(parent) ≥ L^{−δ}/C′_R.
    pub child_ratio_failures: Vec<(u32, usize)>,
    /// Whether L ≥ (4C_R)^{6/(δ(1−δ))} holds, so the separated-children
    /// clause applies; the log10 of that threshold for the report.
    pub separation_hypothesis_met: bool,
    pub separation_log10_l_min: f64,
    /// Non-leaf nodes without two children separated by
    /// [½ C_R^{−2/δ} L^{−H−2/3}, 2 L^{−H−2/3}] (only when the hypothesis
    /// is met).
    pub separation_failures: Vec<(u32, usize)>,
    pub nodes_checked: usize,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.size_failures.is_empty()
            && self.mass_failures.is_empty()
            && self.child_ratio_failures.is_empty()
            && (!self.separation_hypothesis_met || self.separation_failures.is_empty())
    }
}

/// Check the structural inequalities a regular measure's tree must satisfy.
/// Failures are reported as data, never as errors.
pub fn validate_tree(tree: &DiscretizationTree, delta: f64, c_r: f64) -> ValidationReport {
    let l = tree.base as f64;
    let delta_in_range = delta > 0.0 && delta < 1.0;
    let c_r_prime = if delta_in_range {
        (3.0 * c_r * c_r).powf(1.0 / (1.0 - delta))
    } else {
        f64::INFINITY
    };

    let mut size_failures = Vec::new();
    let mut mass_failures = Vec::new();
    let mut child_ratio_failures = Vec::new();
    let mut nodes_checked = 0usize;

    for (k, nodes) in tree.levels.iter().enumerate() {
        let lk = l.powi(-(k as i32));
        for (i, node) in nodes.iter().enumerate() {
            nodes_checked += 1;
            let size = tree.size(node);
            if !(lk <= size * (1.0 + 1e-12)) || (delta_in_range && size > c_r_prime * lk * (1.0 + 1e-12)) {
                size_failures.push((k as u32, i));
            }
            if delta_in_range {
                let lkd = lk.powf(delta);
                if node.mass < lkd / c_r * (1.0 - 1e-12)
                    || node.mass > c_r * c_r_prime.powf(delta) * lkd * (1.0 + 1e-12)
                {
                    mass_failures.push((k as u32, i));
                }
                for &ci in &node.children {
                    let child = &tree.levels[k + 1][ci];
                    if child.mass / node.mass < l.powf(-delta) / c_r_prime * (1.0 - 1e-12) {
                        child_ratio_failures.push((k as u32 + 1, ci));
                    }
                }
            }
        }
    }

    // Separated-children clause: applies only when the base is at least
    // (4C_R)^{6/(δ(1−δ))} — astronomically large for realistic C_R, so the
    // threshold is evaluated in log space and usually reported as not met.
    let (hypothesis_met, log10_l_min) = if delta_in_range {
        let log10_l_min = MpFix::from_f64(4.0 * c_r)
            .log10()
            .mul(&MpFix::from_f64(6.0 / (delta * (1.0 - delta))))
            .to_f64();
        ((tree.base as f64).log10() >= log10_l_min, log10_l_min)
    } else {
        (false, f64::INFINITY)
    };

    let mut separation_failures = Vec::new();
    if hypothesis_met {
        for (k, nodes) in tree.levels.iter().enumerate() {
            if k + 1 > tree.depth as usize {
                break;
            }
            let want_lo = 0.5 * c_r.powf(-2.0 / delta) * l.powf(-(k as f64) - 2.0 / 3.0);
            let want_hi = 2.0 * l.powf(-(k as f64) - 2.0 / 3.0);
            for (i, node) in nodes.iter().enumerate() {
                if node.children.is_empty() {
                    continue;
                }
                let kids: Vec<(f64, f64)> = node
                    .children
                    .iter()
                    .map(|&ci| tree.interval(&tree.levels[k + 1][ci]))
                    .collect();
                let mut found = false;
                'outer: for (a, ka) in kids.iter().enumerate() {
                    for kb in kids.iter().skip(a + 1) {
                        let gap = (kb.0 - ka.1).max(ka.0 - kb.1).max(0.0);
                        let span = (kb.1 - ka.0).max(ka.1 - kb.0);
                        if gap >= want_lo && span <= want_hi {
                            found = true;
                            break 'outer;
                        }
                    }
                }
                if !found {
                    separation_failures.push((k as u32, i));
                }
            }
        }
    }

    ValidationReport {
        delta,
        c_r,
        c_r_prime,
        delta_in_range,
        size_failures,
        mass_failures,
        child_ratio_failures,
        separation_hypothesis_met: hypothesis_met,
        separation_log10_l_min: log10_l_min,
        separation_failures,
        nodes_checked,
    }
}
