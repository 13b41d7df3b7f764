//! Balanced tree partitioning and the integer arithmetic around it.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{MixedGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("input is not an undirected tree")]
    NotATree,
    #[error("number of removals must be at least 1")]
    ZeroRemovals,
}

/// Result of [`balanced_tree_partition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePartition {
    /// Removed vertices in the order they were chosen.
    pub removed: Vec<Vertex>,
    /// Components of the tree minus `removed`, each sorted.
    pub components: Vec<Vec<Vertex>>,
    /// Number of vertices dropped from the working tree per iteration.
    pub pruned: Vec<usize>,
}

impl TreePartition {
    pub fn max_component(&self) -> usize {
        self.components.iter().map(|c| c.len()).max().unwrap_or(0)
    }
}

pub fn ceil_div(x: usize, d: usize) -> usize {
    x.div_ceil(d)
}

/// Smallest `L >= 1` with `L^r >= n`.
pub fn int_root_ceil(n: usize, r: usize) -> usize {
    assert!(r >= 1, "root order must be positive");
    if n <= 1 {
        return 1;
    }
    let reaches = |l: usize| -> bool {
        let mut acc: u128 = 1;
        for _ in 0..r {
            acc *= l as u128;
            if acc >= n as u128 {
                return true;
            }
        }
        false
    };
    let (mut lo, mut hi) = (1usize, n);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if reaches(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// `ceil(log2 n)`, with 0 for `n <= 1`.
pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Applies `ceil(. / d)` for each divisor in turn and checks the result
/// against a single division by the product.
///
/// Panics on a zero divisor.
pub fn nested_ceiling_div(x: u64, divisors: &[u64]) -> u64 {
    assert!(divisors.iter().all(|&d| d > 0), "divisors must be positive");
    let iterated = divisors.iter().fold(x, |acc, &d| acc.div_ceil(d));
    let product = divisors.iter().try_fold(1u128, |acc, &d| acc.checked_mul(d as u128));
    let single = match product {
        Some(p) => (x as u128).div_ceil(p) as u64,
        None => u64::from(x > 0),
    };
    assert_eq!(iterated, single, "nested ceiling identity failed");
    iterated
}

/// Removes at most `l` vertices from a tree so every remaining component has
/// at most `ceil(n / (l + 1))` vertices.
///
/// Each iteration roots the working tree at its lowest-index vertex. If some
/// subtree has exactly `t + 1` vertices (`t` the target size) the
/// lowest-index such root is removed with its subtree; otherwise the search
/// descends from the root into the lowest-index oversized child until all
/// children are small.
pub fn balanced_tree_partition(tree: &MixedGraph, l: usize) -> Result<TreePartition, PartitionError> {
    if l == 0 {
        return Err(PartitionError::ZeroRemovals);
    }
    let n = tree.n();
    if n == 0 {
        return Ok(TreePartition { removed: Vec::new(), components: Vec::new(), pruned: Vec::new() });
    }
    if tree.arc_count() > 0 || tree.edge_count() + 1 != n || !tree.is_connected() {
        return Err(PartitionError::NotATree);
    }
    let adj: Vec<Vec<usize>> = (0..n).map(|v| tree.neighbors(v).to_vec()).collect();
    Ok(partition_adjacency(&adj, l))
}

/// [`balanced_tree_partition`] on adjacency lists already known to form a
/// tree.
pub(crate) fn partition_adjacency(adj: &[Vec<usize>], l: usize) -> TreePartition {
    let n = adj.len();
    let t = ceil_div(n, l + 1);
    let mut alive = vec![true; n];
    let mut remaining = n;
    let mut removed = Vec::new();
    let mut components = Vec::new();
    let mut pruned = Vec::new();
    let mut parent = vec![usize::MAX; n];
    let mut size = vec![0usize; n];

    while remaining > t {
        let root = (0..n).find(|&v| alive[v]).expect("working tree is non-empty");
        let mut order = Vec::with_capacity(remaining);
        parent[root] = usize::MAX;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &adj[v] {
                if alive[w] && w != parent[v] {
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        for &v in order.iter().rev() {
            size[v] = 1 + adj[v]
                .iter()
                .filter(|&&w| alive[w] && parent[w] == v && w != parent[v])
                .map(|&w| size[w])
                .sum::<usize>();
        }
        let children = |v: usize| -> Vec<usize> {
            adj[v].iter().copied().filter(|&w| alive[w] && parent[w] == v && w != parent[v]).collect()
        };

        let u = match order.iter().copied().filter(|&v| size[v] == t + 1).min() {
            Some(u) => u,
            None => {
                let mut u = root;
                while let Some(w) = children(u).into_iter().filter(|&w| size[w] > t).min() {
                    u = w;
                }
                u
            }
        };

        for w in children(u) {
            let mut comp = Vec::new();
            let mut stack = vec![w];
            while let Some(x) = stack.pop() {
                comp.push(x);
                for &y in &adj[x] {
                    if alive[y] && y != u && parent[y] == x && y != parent[x] {
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            for &x in &comp {
                alive[x] = false;
            }
            components.push(comp);
        }
        alive[u] = false;
        removed.push(u);
        pruned.push(size[u]);
        remaining -= size[u];
    }

    let rest: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    if !rest.is_empty() {
        components.push(rest);
    }
    TreePartition { removed, components, pruned }
}
