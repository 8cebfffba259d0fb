//! Defense-optimal equilibria and the defender regimes that govern them.
//!
//! With `beta'` the edge cover number, `delta` defenders are few when
//! `delta <= |V|/2`, many when `|V|/2 < delta < beta'`, and too many when
//! `delta >= beta'`. Few defenders admit a defense-optimal equilibrium iff the
//! graph has a delta-partitionable fractional perfect matching, many never do,
//! and too many always do.

use alloc::vec::Vec;

use num_traits::One;

use crate::game::{MixedProfile, PureProfile};
use crate::graph::{Edge, Graph, Vertex};
use crate::matching::{edge_cover_number, maximum_matching, minimum_edge_cover, FractionalMatching};
use crate::partition::{find_delta_partitionable, verify_partitionable, EdgePartition};
use crate::{integer, Error, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RegimeKind {
    Few,
    Many,
    TooMany,
}

impl RegimeKind {
    pub fn name(&self) -> &'static str {
        match self {
            RegimeKind::Few => "few",
            RegimeKind::Many => "many",
            RegimeKind::TooMany => "too-many",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Regime {
    /// Too many wins when `delta = |V|/2 = beta'`.
    pub kind: RegimeKind,
    pub beta_prime: usize,
    pub vertex_count: usize,
    pub delta: usize,
}

impl Regime {
    /// `delta <= |V|/2`, regardless of precedence.
    pub fn is_few(&self) -> bool {
        2 * self.delta <= self.vertex_count
    }

    pub fn is_too_many(&self) -> bool {
        self.delta >= self.beta_prime
    }

    /// Both few and too many; only possible when `beta' = |V|/2`.
    pub fn is_boundary(&self) -> bool {
        self.is_few() && self.is_too_many()
    }
}

pub fn classify_regime(g: &Graph, delta: usize) -> Result<Regime> {
    if delta == 0 {
        return Err(Error::InvalidDelta(delta));
    }
    let beta_prime = edge_cover_number(g);
    let n = g.vertex_count();
    let kind = if delta >= beta_prime {
        RegimeKind::TooMany
    } else if 2 * delta <= n {
        RegimeKind::Few
    } else {
        RegimeKind::Many
    };
    Ok(Regime {
        kind,
        beta_prime,
        vertex_count: n,
        delta,
    })
}

/// Every defender pure on an edge yields an equilibrium iff `delta >= beta'`.
pub fn is_defender_pure_graph(g: &Graph, delta: usize) -> bool {
    delta >= edge_cover_number(g)
}

fn uniform_attackers(g: &Graph, alpha: usize) -> Vec<Vec<(Vertex, Rational)>> {
    let p = Rational::new(1.into(), g.vertex_count().into());
    let row: Vec<(Vertex, Rational)> = g.vertices().map(|v| (v, p.clone())).collect();
    alloc::vec![row; alpha]
}

/// Defender `j` plays `(2 delta / |V|) f(e)` on partite `E_j`; attackers are
/// uniform over the vertices. Every vertex is then hit with probability
/// exactly `2 delta / |V|`.
pub fn construct_from_partitionable<'g>(
    g: &'g Graph,
    f: &FractionalMatching<'g>,
    p: &EdgePartition,
    alpha: usize,
) -> Result<MixedProfile<'g>> {
    if alpha == 0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    let delta = p.len();
    if !verify_partitionable(f, p, delta)? {
        return Err(Error::Precondition(
            "not a delta-partition of a fractional perfect matching",
        ));
    }
    let scale = integer(2 * delta) / integer(g.vertex_count());
    let defenders = p
        .partites()
        .iter()
        .map(|partite| {
            partite
                .iter()
                .map(|e| (*e, &scale * f.weight(e)))
                .collect::<Vec<_>>()
        })
        .collect();
    MixedProfile::new(g, uniform_attackers(g, alpha), defenders)
}

/// Splits a perfect matching into `delta` blocks of `|V| / (2 delta)` edges,
/// each defender uniform on its block. Absent unless `2 delta` divides `|V|`.
pub fn construct_perfect_matching_ne(
    g: &Graph,
    alpha: usize,
    delta: usize,
) -> Result<Option<MixedProfile<'_>>> {
    if alpha == 0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    if delta == 0 {
        return Err(Error::InvalidDelta(delta));
    }
    let n = g.vertex_count();
    let matching = maximum_matching(g);
    if 2 * matching.len() != n {
        return Err(Error::NoPerfectMatching);
    }
    if 2 * delta > n {
        return Err(Error::Precondition("more defenders than perfect-matching edges"));
    }
    if n % (2 * delta) != 0 {
        return Ok(None);
    }
    let block = n / (2 * delta);
    let p = Rational::new(1.into(), block.into());
    let edges: Vec<Edge> = matching.into_iter().collect();
    let defenders = edges
        .chunks(block)
        .map(|chunk| chunk.iter().map(|e| (*e, p.clone())).collect::<Vec<_>>())
        .collect();
    MixedProfile::new(g, uniform_attackers(g, alpha), defenders).map(Some)
}

/// Defender `j` sits on edge `j mod |EC|` of the minimum edge cover.
fn round_robin(g: &Graph, delta: usize) -> Result<Vec<Edge>> {
    if delta == 0 {
        return Err(Error::InvalidDelta(delta));
    }
    let cover: Vec<Edge> = minimum_edge_cover(g).into_iter().collect();
    if delta < cover.len() {
        return Err(Error::TooFewDefenders {
            delta,
            beta_prime: cover.len(),
        });
    }
    Ok((0..delta).map(|j| cover[j % cover.len()]).collect())
}

fn multiplicities(g: &Graph, defenders: &[Edge]) -> Vec<usize> {
    let mut counts = alloc::vec![0; g.vertex_count()];
    for e in defenders {
        counts[e.u()] += 1;
        counts[e.v()] += 1;
    }
    counts
}

/// Defenders pure on a minimum edge cover; every attacker plays
/// `|D(v)| / (2 delta)` on each vertex `v`, so the load on `v` is
/// `|D(v)| alpha / (2 delta)`.
pub fn defender_pure_vertex_balanced_ne(g: &Graph, alpha: usize, delta: usize) -> Result<MixedProfile<'_>> {
    if alpha == 0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    let defenders = round_robin(g, delta)?;
    let counts = multiplicities(g, &defenders);
    let row: Vec<(Vertex, Rational)> = g
        .vertices()
        .map(|v| (v, Rational::new(counts[v].into(), (2 * delta).into())))
        .collect();
    MixedProfile::new(
        g,
        alloc::vec![row; alpha],
        defenders.into_iter().map(|e| [(e, Rational::one())]).collect(),
    )
}

/// Pure version of [`defender_pure_vertex_balanced_ne`]: exactly
/// `|D(v)| alpha / (2 delta)` attackers on each vertex, filled in vertex order.
/// Requires `2 delta` to divide `alpha`.
pub fn pure_vertex_balanced_ne(g: &Graph, alpha: usize, delta: usize) -> Result<PureProfile<'_>> {
    if alpha == 0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    if delta == 0 {
        return Err(Error::InvalidDelta(delta));
    }
    if alpha % (2 * delta) != 0 {
        return Err(Error::NotDivisible {
            value: alpha,
            divisor: 2 * delta,
        });
    }
    let defenders = round_robin(g, delta)?;
    let per = alpha / (2 * delta);
    let attackers = multiplicities(g, &defenders)
        .into_iter()
        .enumerate()
        .flat_map(|(v, c)| core::iter::repeat(v).take(c * per))
        .collect();
    PureProfile::new(g, attackers, defenders)
}

/// A defense-optimal equilibrium, or `None` when the regime rules one out.
///
/// Few defenders search for a delta-partitionable fractional perfect matching
/// (exact and exponential, bounded by `bound` vertices); many defenders never
/// succeed; too many defenders use the defender-pure vertex-balanced profile.
pub fn construct_defense_optimal(
    g: &Graph,
    alpha: usize,
    delta: usize,
    bound: usize,
) -> Result<Option<MixedProfile<'_>>> {
    if alpha == 0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    let regime = classify_regime(g, delta)?;
    match regime.kind {
        RegimeKind::TooMany => defender_pure_vertex_balanced_ne(g, alpha, delta).map(Some),
        RegimeKind::Many => Ok(None),
        RegimeKind::Few => match find_delta_partitionable(g, delta, bound)? {
            Some((f, p)) => construct_from_partitionable(g, &f, &p, alpha).map(Some),
            None => Ok(None),
        },
    }
}
