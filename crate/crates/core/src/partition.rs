//! Delta-partitionable fractional perfect matchings.
//!
//! A fractional perfect matching `f` is delta-partitionable when its support
//! splits into `delta` vertex-disjoint partites, each carrying total weight
//! `|V| / (2 delta)`. Since `f` is perfect, a partite's weight is half the
//! number of vertices it touches, so every partite spans exactly `|V| / delta`
//! vertices and delta must divide `|V|`.
//!
//! Deciding existence is NP-complete; the searches here are exact and
//! exponential, guarded by [`SearchLimits::partition`](crate::SearchLimits).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::Zero;

use crate::graph::{vertices_of, Edge, EdgeSet, Graph, Vertex};
use crate::matching::{double_cover_matching, FractionalMatching};
use crate::reduce::canonicalize_fpm;
use crate::{integer, Error, Rational, Result};

/// Partites `E_1, ..., E_delta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePartition {
    partites: Vec<EdgeSet>,
}

impl EdgePartition {
    pub fn new(partites: Vec<EdgeSet>) -> Self {
        EdgePartition { partites }
    }

    pub fn partites(&self) -> &[EdgeSet] {
        &self.partites
    }

    pub fn len(&self) -> usize {
        self.partites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partites.is_empty()
    }

    pub fn into_partites(self) -> Vec<EdgeSet> {
        self.partites
    }

    /// No vertex is touched by two different partites.
    pub fn is_vertex_disjoint(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.partites
            .iter()
            .all(|p| vertices_of(p).into_iter().all(|v| seen.insert(v)))
    }
}

/// Checks that `p` is a delta-partition of `f`.
///
/// Returns an error when the partites do not partition the support `E(f)`
/// (overlap, missing or foreign edges); otherwise `true` iff `f` is perfect,
/// there are `delta` non-empty vertex-disjoint partites, and each partite's
/// weight is exactly `|V| / (2 delta)`.
pub fn verify_partitionable(f: &FractionalMatching<'_>, p: &EdgePartition, delta: usize) -> Result<bool> {
    let support = f.support();
    let mut union = EdgeSet::new();
    for partite in p.partites() {
        for e in partite {
            if !union.insert(*e) {
                return Err(Error::NotAPartition);
            }
        }
    }
    if union != support {
        return Err(Error::NotAPartition);
    }
    if delta == 0 || p.len() != delta || !f.is_perfect() || !p.is_vertex_disjoint() {
        return Ok(false);
    }
    let target = integer(f.graph().vertex_count()) / integer(2 * delta);
    Ok(p.partites().iter().all(|partite| {
        !partite.is_empty() && partite.iter().map(|e| f.weight(e)).sum::<Rational>() == target
    }))
}

fn check_bound(g: &Graph, bound: usize) -> Result<()> {
    let n = g.vertex_count();
    if n > bound || n > 64 {
        return Err(Error::SearchBoundExceeded {
            vertices: n,
            bound: bound.min(64),
        });
    }
    Ok(())
}

/// Searches for a delta-partitionable fractional perfect matching.
///
/// The vertex set is split into `delta` groups of `|V| / delta` vertices,
/// taking the group of the lowest unassigned vertex first and trying its
/// companions in lexicographic order; a group is acceptable when its induced
/// subgraph is spanned by disjoint single edges and odd cycles, i.e. has a
/// fractional perfect matching. The first complete grouping found is the
/// lexicographically least one. Each group's matching is then canonicalized,
/// so the returned `f` has weight 1 on single edges and 1/2 on cycle edges.
pub fn find_delta_partitionable<'g>(
    g: &'g Graph,
    delta: usize,
    bound: usize,
) -> Result<Option<(FractionalMatching<'g>, EdgePartition)>> {
    if delta == 0 {
        return Err(Error::InvalidDelta(delta));
    }
    let n = g.vertex_count();
    if n % delta != 0 {
        return Ok(None);
    }
    check_bound(g, bound)?;
    let size = n / delta;
    if size < 2 {
        return Ok(None);
    }

    let mut search = GroupSearch {
        g,
        size,
        failed: BTreeSet::new(),
        spannable: BTreeMap::new(),
        chosen: Vec::new(),
    };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    if !search.assign(all) {
        return Ok(None);
    }
    let groups = search.chosen;

    let mut weights: BTreeMap<Edge, Rational> = BTreeMap::new();
    for &mask in &groups {
        let members = members_of(mask);
        let arcs = double_cover_matching(g, &members).expect("group was accepted");
        let half = crate::rational(1, 2);
        for (u, v) in arcs {
            *weights.entry(Edge::new(u, v)).or_insert_with(Rational::zero) += &half;
        }
    }
    let f = FractionalMatching::from_parts(g, weights);
    let f = canonicalize_fpm(&f)?;
    let partites = groups
        .iter()
        .map(|&mask| {
            f.weights()
                .keys()
                .filter(|e| mask >> e.u() & 1 == 1)
                .copied()
                .collect()
        })
        .collect();
    let partition = EdgePartition::new(partites);
    debug_assert_eq!(verify_partitionable(&f, &partition, delta), Ok(true));
    Ok(Some((f, partition)))
}

fn members_of(mask: u64) -> Vec<Vertex> {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}

struct GroupSearch<'g> {
    g: &'g Graph,
    size: usize,
    /// Remaining-vertex masks already shown to admit no grouping.
    failed: BTreeSet<u64>,
    spannable: BTreeMap<u64, bool>,
    chosen: Vec<u64>,
}

impl GroupSearch<'_> {
    fn assign(&mut self, remaining: u64) -> bool {
        if remaining == 0 {
            return true;
        }
        if self.failed.contains(&remaining) {
            return false;
        }
        let first = remaining.trailing_zeros() as usize;
        let rest: Vec<Vertex> = members_of(remaining & !(1u64 << first));
        let mut found = false;
        crate::matching::for_each_combination(rest.len(), self.size - 1, &mut |pick| {
            let mut group = 1u64 << first;
            for &i in pick {
                group |= 1u64 << rest[i];
            }
            if !self.is_spannable(group) {
                return false;
            }
            self.chosen.push(group);
            if self.assign(remaining & !group) {
                found = true;
                return true;
            }
            self.chosen.pop();
            false
        });
        if !found {
            self.failed.insert(remaining);
        }
        found
    }

    fn is_spannable(&mut self, group: u64) -> bool {
        if let Some(&known) = self.spannable.get(&group) {
            return known;
        }
        let members = members_of(group);
        let ok = double_cover_matching(self.g, &members).is_some();
        self.spannable.insert(group, ok);
        ok
    }
}

/// Partition of the vertices into triangles of `g`, lowest-vertex-first.
pub fn partition_into_triangles(g: &Graph, bound: usize) -> Result<Option<Vec<[Vertex; 3]>>> {
    let n = g.vertex_count();
    if n % 3 != 0 {
        return Err(Error::NotDivisible { value: n, divisor: 3 });
    }
    check_bound(g, bound)?;

    fn go(g: &Graph, used: &mut [bool], out: &mut Vec<[Vertex; 3]>) -> bool {
        let Some(v) = used.iter().position(|&u| !u) else {
            return true;
        };
        used[v] = true;
        let nbrs = g.neighbors(v);
        for (i, &a) in nbrs.iter().enumerate() {
            if used[a] {
                continue;
            }
            for &b in &nbrs[i + 1..] {
                if used[b] || !g.has_edge(&Edge::new(a, b)) {
                    continue;
                }
                used[a] = true;
                used[b] = true;
                out.push([v, a, b]);
                if go(g, used, out) {
                    return true;
                }
                out.pop();
                used[a] = false;
                used[b] = false;
            }
        }
        used[v] = false;
        false
    }

    let mut used = alloc::vec![false; n];
    let mut out = Vec::new();
    Ok(go(g, &mut used, &mut out).then_some(out))
}

pub use crate::matching::has_perfect_matching;
