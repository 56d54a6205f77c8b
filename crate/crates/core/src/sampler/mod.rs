//! Exactly uniform random generation of the four labelled tree families,
//! with one independent random stream per sample.

pub mod dump;
pub mod stats;

use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::TreeFamily;
use crate::tree::LabelledTree;

pub use stats::{
    chi_square_uniformity, dyck_empirical_moment, dyck_moment, empirical_moment, label_moment, profile_grid, ChiSquare,
    GridPoint, MeanEstimate,
};

/// Name of the generator, recorded in output metadata.
pub const RNG_NAME: &str = "ChaCha8 (rand_chacha), stream = stream_id";

/// A reproducible random stream: the master seed fixes the key and the
/// stream id selects one of 2^64 non-overlapping ChaCha streams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        SeedSpec { master_seed, stream_id }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

/// Complete binary tree with `n` internal nodes by Rémy's algorithm, as a
/// preorder `(has_left, has_right)`-style child table: `children[v]` is
/// `None` for leaves.
fn remy(n: usize, rng: &mut ChaCha8Rng) -> (usize, Vec<Option<[usize; 2]>>) {
    let mut children: Vec<Option<[usize; 2]>> = Vec::with_capacity(2 * n + 1);
    let mut parent: Vec<Option<usize>> = Vec::with_capacity(2 * n + 1);
    children.push(None);
    parent.push(None);
    let mut root = 0usize;
    for _ in 0..n {
        let x = rng.random_range(0..children.len());
        let side = rng.random_range(0..2usize);
        let y = children.len();
        let z = y + 1;
        let mut kids = [z, z];
        kids[side] = x;
        children.push(Some(kids));
        children.push(None);
        parent.push(parent[x]);
        parent.push(Some(y));
        match parent[x] {
            None => root = y,
            Some(p) => {
                let slot = children[p].as_mut().unwrap();
                let i = if slot[0] == x { 0 } else { 1 };
                slot[i] = y;
            }
        }
        parent[x] = Some(y);
    }
    (root, children)
}

/// Preorder code of a child table, keeping only the nodes `keep` accepts.
fn preorder_code(root: usize, children: &[Option<[usize; 2]>], keep: impl Fn(usize) -> bool) -> Vec<(bool, bool)> {
    let mut code = Vec::new();
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        let (l, r) = match children[v] {
            Some([l, r]) => (Some(l).filter(|&c| keep(c)), Some(r).filter(|&c| keep(c))),
            None => (None, None),
        };
        code.push((l.is_some(), r.is_some()));
        stack.extend(r);
        stack.extend(l);
    }
    code
}

/// Uniform binary tree with `n ≥ 1` nodes, naturally labelled.
pub fn sample_binary(n: usize, seed: SeedSpec) -> Result<LabelledTree> {
    if n == 0 {
        return Err(Error::OutOfRange("binary trees have at least one node".into()));
    }
    let mut rng = seed.rng();
    let (root, children) = remy(n, &mut rng);
    let code = preorder_code(root, &children, |v| children[v].is_some());
    Ok(LabelledTree::from_binary_code(TreeFamily::Binary, &code))
}

/// Uniform complete binary tree with `n` internal nodes, naturally labelled.
pub fn sample_complete_binary(n: usize, seed: SeedSpec) -> LabelledTree {
    let mut rng = seed.rng();
    let (root, children) = remy(n, &mut rng);
    let code = preorder_code(root, &children, |_| true);
    LabelledTree::from_binary_code(TreeFamily::CompleteBinary, &code)
}

/// Uniform Dyck word with `n` up steps: a shuffled sequence of `n` ups and
/// `n + 1` downs, rotated to start after its first minimum (cycle lemma),
/// with the final down step dropped.
pub fn sample_dyck(n: usize, rng: &mut ChaCha8Rng) -> Vec<bool> {
    let mut seq: Vec<bool> = std::iter::repeat_n(true, n).chain(std::iter::repeat_n(false, n + 1)).collect();
    seq.shuffle(rng);
    let (mut h, mut min, mut argmin) = (0i64, 0i64, 0usize);
    for (i, &up) in seq.iter().enumerate() {
        h += if up { 1 } else { -1 };
        if h < min {
            min = h;
            argmin = i;
        }
    }
    seq.rotate_left(argmin + 1);
    seq.pop();
    seq
}

/// Uniform plane tree with `n` edges and independent uniform increments.
pub fn sample_plane(n: usize, family: TreeFamily, seed: SeedSpec) -> Result<LabelledTree> {
    if !family.is_plane() {
        return Err(Error::OutOfRange(format!("{family} is not a plane family")));
    }
    let mut rng = seed.rng();
    let steps = sample_dyck(n, &mut rng);
    let inc = family.increments();
    let increments: Vec<i64> = (0..n).map(|_| inc[rng.random_range(0..inc.len())]).collect();
    Ok(LabelledTree::from_dyck(family, &steps, &increments))
}

/// Uniform object of size `n` of any family.
pub fn sample(family: TreeFamily, n: usize, seed: SeedSpec) -> Result<LabelledTree> {
    let tree = match family {
        TreeFamily::Binary => sample_binary(n, seed)?,
        TreeFamily::CompleteBinary => sample_complete_binary(n, seed),
        TreeFamily::PlanePM1 | TreeFamily::Plane0PM1 => sample_plane(n, family, seed)?,
    };
    debug_assert_eq!(tree.check_invariants(), Ok(()));
    Ok(tree)
}

/// Runs `f` on streams `0..samples` in parallel; results come back in
/// stream order regardless of scheduling.
pub fn map_streams<T: Send>(master_seed: u64, samples: usize, f: impl Fn(SeedSpec) -> T + Sync) -> Vec<T> {
    (0..samples as u64).into_par_iter().map(|s| f(SeedSpec::new(master_seed, s))).collect()
}
