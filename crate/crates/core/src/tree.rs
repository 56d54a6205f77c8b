//! Array-encoded rooted trees with integer labels, and their profiles.

use serde::{Deserialize, Serialize};

use crate::family::TreeFamily;

/// A rooted tree in preorder: node 0 is the root and every parent precedes
/// its children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledTree {
    family: TreeFamily,
    parent: Vec<Option<usize>>,
    /// 0 = left, 1 = right for binary families; sibling index for plane trees.
    child_role: Vec<u32>,
    label: Vec<i64>,
    depth: Vec<u32>,
}

impl LabelledTree {
    /// Assembles a tree from preorder parent links; depths are derived.
    pub fn new(family: TreeFamily, parent: Vec<Option<usize>>, child_role: Vec<u32>, label: Vec<i64>) -> Self {
        assert!(!parent.is_empty() && parent.len() == child_role.len() && parent.len() == label.len());
        let mut depth = vec![0u32; parent.len()];
        for v in 1..parent.len() {
            let p = parent[v].expect("only the root lacks a parent");
            assert!(p < v, "parents must precede children");
            depth[v] = depth[p] + 1;
        }
        LabelledTree { family, parent, child_role, label, depth }
    }

    /// Binary-type tree from a preorder list of `(has_left, has_right)` flags,
    /// with the natural labelling (left child -1, right child +1).
    pub fn from_binary_code(family: TreeFamily, code: &[(bool, bool)]) -> Self {
        let n = code.len();
        let mut parent = vec![None; n];
        let mut role = vec![0u32; n];
        let mut label = vec![0i64; n];
        // pending child slots, innermost last: (parent, role)
        let mut slots: Vec<(usize, u32)> = Vec::new();
        for (v, &(l, r)) in code.iter().enumerate() {
            if v > 0 {
                let (p, side) = slots.pop().expect("code describes a single tree");
                parent[v] = Some(p);
                role[v] = side;
                label[v] = label[p] + if side == 0 { -1 } else { 1 };
            }
            if r {
                slots.push((v, 1));
            }
            if l {
                slots.push((v, 0));
            }
        }
        assert!(slots.is_empty(), "code leaves dangling children");
        LabelledTree::new(family, parent, role, label)
    }

    /// Plane tree from a Dyck word (`true` = up) and one increment per edge,
    /// in the order the edges are first traversed.
    pub fn from_dyck(family: TreeFamily, steps: &[bool], increments: &[i64]) -> Self {
        let n_nodes = increments.len() + 1;
        let mut parent = Vec::with_capacity(n_nodes);
        let mut role = Vec::with_capacity(n_nodes);
        let mut label = Vec::with_capacity(n_nodes);
        let mut kids: Vec<u32> = Vec::with_capacity(n_nodes);
        parent.push(None);
        role.push(0);
        label.push(0);
        kids.push(0);
        let mut cur = 0usize;
        let mut edge = 0usize;
        for &up in steps {
            if up {
                let v = parent.len();
                parent.push(Some(cur));
                role.push(kids[cur]);
                kids[cur] += 1;
                label.push(label[cur] + increments[edge]);
                kids.push(0);
                edge += 1;
                cur = v;
            } else {
                cur = parent[cur].expect("Dyck word dips below zero");
            }
        }
        assert_eq!(edge, increments.len(), "increment count must match the number of up steps");
        LabelledTree::new(family, parent, role, label)
    }

    pub fn family(&self) -> TreeFamily {
        self.family
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn child_role(&self) -> &[u32] {
        &self.child_role
    }

    pub fn labels(&self) -> &[i64] {
        &self.label
    }

    pub fn depths(&self) -> &[u32] {
        &self.depth
    }

    /// Checks root label, edge increments, depths and preorder.
    pub fn check_invariants(&self) -> Result<(), String> {
        if self.parent[0].is_some() || self.label[0] != 0 || self.depth[0] != 0 {
            return Err("root must be node 0 with label 0 and depth 0".into());
        }
        let binary = !self.family.is_plane();
        let mut kids = vec![0u32; self.node_count()];
        for v in 1..self.node_count() {
            let Some(p) = self.parent[v] else {
                return Err(format!("node {v} has no parent"));
            };
            if p >= v {
                return Err(format!("node {v} precedes its parent {p}"));
            }
            if self.depth[v] != self.depth[p] + 1 {
                return Err(format!("depth mismatch at node {v}"));
            }
            let inc = self.label[v] - self.label[p];
            if binary {
                let want = if self.child_role[v] == 0 { -1 } else { 1 };
                if self.child_role[v] > 1 || inc != want {
                    return Err(format!("node {v} breaks the natural labelling"));
                }
            } else if !self.family.increments().contains(&inc) {
                return Err(format!("edge into node {v} has increment {inc}"));
            }
            kids[p] += 1;
        }
        if binary && kids.iter().any(|&k| k > 2) {
            return Err("binary node with more than two children".into());
        }
        if self.family == TreeFamily::CompleteBinary && kids.contains(&1) {
            return Err("complete binary node with exactly one child".into());
        }
        Ok(())
    }

    /// Label-independent encoding of the shape (preorder child roles).
    pub fn shape_key(&self) -> String {
        let mut s = String::with_capacity(2 * self.node_count());
        for v in 1..self.node_count() {
            s.push_str(&format!("{}:{};", self.parent[v].unwrap(), self.child_role[v]));
        }
        s
    }

    /// `Σ_v ℓ(v)^k`.
    pub fn label_power_sum(&self, k: u32) -> i128 {
        self.label.iter().map(|&l| (l as i128).pow(k)).sum()
    }

    /// `Σ_v d(v)^k`.
    pub fn depth_power_sum(&self, k: u32) -> i128 {
        self.depth.iter().map(|&d| (d as i128).pow(k)).sum()
    }

    /// `max_v |ℓ(v)|`.
    pub fn max_label(&self) -> u64 {
        self.label.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn vertical_profile(&self) -> Profile {
        Profile::from_values(self.label.iter().copied())
    }

    pub fn horizontal_profile(&self) -> Profile {
        Profile::from_values(self.depth.iter().map(|&d| d as i64))
    }
}

/// Occupation counts `X(j)` for `j` in `offset .. offset + counts.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    pub offset: i64,
    pub counts: Vec<u64>,
    pub total: u64,
}

impl Profile {
    pub fn from_values(values: impl Iterator<Item = i64> + Clone) -> Self {
        let lo = values.clone().min().expect("a tree has at least one node");
        let hi = values.clone().max().unwrap();
        let mut counts = vec![0u64; (hi - lo + 1) as usize];
        let mut total = 0;
        for v in values {
            counts[(v - lo) as usize] += 1;
            total += 1;
        }
        Profile { offset: lo, counts, total }
    }

    pub fn min(&self) -> i64 {
        self.offset
    }

    pub fn max(&self) -> i64 {
        self.offset + self.counts.len() as i64 - 1
    }

    pub fn at(&self, j: i64) -> u64 {
        let i = j - self.offset;
        if i < 0 || i as usize >= self.counts.len() {
            0
        } else {
            self.counts[i as usize]
        }
    }

    /// Piecewise-linear interpolant of `j -> X(j)`, zero outside `[min-1, max+1]`.
    pub fn interpolate(&self, y: f64) -> f64 {
        let j = y.floor();
        let frac = y - j;
        let j = j as i64;
        (1.0 - frac) * self.at(j) as f64 + frac * self.at(j + 1) as f64
    }

    /// Rescaled density `g(x) = N^{-1} s X̄(s x)` with `s = γ^{-1} N^{1/4}`,
    /// `N` the node count.
    pub fn rescaled_density(&self, family: TreeFamily, x: f64) -> f64 {
        let n = self.total as f64;
        let s = n.powf(0.25) / family.gamma();
        s * self.interpolate(s * x) / n
    }

    /// Exact `∫ g` of the piecewise-linear rescaled density (always 1).
    pub fn rescaled_integral(&self, family: TreeFamily) -> f64 {
        // trapezoid over integer nodes is exact for the interpolant; the
        // change of variables cancels the scale factor
        let _ = family;
        self.counts.iter().sum::<u64>() as f64 / self.total as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn left_chain_profiles() {
        let t = LabelledTree::from_binary_code(TreeFamily::Binary, &[(true, false), (true, false), (false, false)]);
        t.check_invariants().unwrap();
        assert_eq!(t.labels(), &[0, -1, -2]);
        assert_eq!(t.vertical_profile(), Profile { offset: -2, counts: vec![1, 1, 1], total: 3 });
        assert_eq!(t.horizontal_profile(), Profile { offset: 0, counts: vec![1, 1, 1], total: 3 });
        assert_eq!(t.max_label(), 2);
    }

    #[test]
    fn single_node() {
        let t = LabelledTree::from_binary_code(TreeFamily::Binary, &[(false, false)]);
        assert_eq!(t.vertical_profile(), Profile { offset: 0, counts: vec![1], total: 1 });
        assert_eq!(t.max_label(), 0);
        assert_eq!(t.vertical_profile().rescaled_density(TreeFamily::Binary, 50.0), 0.0);
        let p = LabelledTree::from_dyck(TreeFamily::PlanePM1, &[], &[]);
        assert_eq!(p.node_count(), 1);
    }

    #[test]
    fn figure_style_profile() {
        // labels -3..2 with counts [2,2,4,2,1,1]: a plane {-1,0,1} tree
        let (u, d) = (true, false);
        let steps = [u, u, u, d, d, u, d, u, u, d, u, d, u, d, d, d, u, u, u, d, d, d];
        let inc = [-1, 0, 0, 0, -1, -1, -1, 0, 0, 1, 1];
        let t = LabelledTree::from_dyck(TreeFamily::Plane0PM1, &steps, &inc);
        t.check_invariants().unwrap();
        let p = t.vertical_profile();
        assert_eq!(p.offset, -3);
        assert_eq!(p.counts, vec![2, 2, 4, 2, 1, 1]);
        assert_eq!(p.total, 12);
    }

    #[test]
    fn invariant_checker_catches_bad_increment() {
        let t = LabelledTree::new(TreeFamily::PlanePM1, vec![None, Some(0)], vec![0, 0], vec![0, 0]);
        assert!(t.check_invariants().is_err());
    }

    #[test]
    fn two_node_density_at_zero() {
        let t = LabelledTree::from_binary_code(TreeFamily::Binary, &[(true, false), (false, false)]);
        let g0 = t.vertical_profile().rescaled_density(TreeFamily::Binary, 0.0);
        assert!((g0 - 2f64.powf(-0.5)).abs() < 1e-15);
    }
}
