//! The game `AD(alpha, delta)` on a graph: profiles, hitting probabilities,
//! expected utilities and Nash-equilibrium verification.
//!
//! Attackers pick vertices, defenders pick edges. An attacker scores 1 when no
//! defender's edge touches its vertex; a defender collects a fair share of the
//! attackers sitting on the endpoints of its edge.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::graph::{
    is_edge_cover, is_matching, is_vertex_cover, vertices_of, Edge, EdgeSet, Graph, Vertex, VertexSet,
};
use crate::matching::{edge_cover_number, for_each_combination};
use crate::{integer, Error, Rational, Result};

/// One mixed strategy per player. Zero-probability entries are dropped, so
/// the stored maps are exactly the supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedProfile<'g> {
    graph: &'g Graph,
    attackers: Vec<BTreeMap<Vertex, Rational>>,
    defenders: Vec<BTreeMap<Edge, Rational>>,
}

fn distribution<K, I>(
    entries: I,
    player: &'static str,
    index: usize,
    check: impl Fn(&K) -> Result<()>,
) -> Result<BTreeMap<K, Rational>>
where
    K: Ord + Copy,
    I: IntoIterator<Item = (K, Rational)>,
{
    let bad = || Error::InvalidDistribution(player, index);
    let mut map = BTreeMap::new();
    let mut total = Rational::zero();
    let mut keys = BTreeSet::new();
    for (k, p) in entries {
        check(&k)?;
        if !keys.insert(k) || p.is_negative() || p > Rational::one() {
            return Err(bad());
        }
        total += &p;
        if !p.is_zero() {
            map.insert(k, p);
        }
    }
    if !total.is_one() {
        return Err(bad());
    }
    Ok(map)
}

impl<'g> MixedProfile<'g> {
    pub fn new<A, D>(graph: &'g Graph, attackers: Vec<A>, defenders: Vec<D>) -> Result<Self>
    where
        A: IntoIterator<Item = (Vertex, Rational)>,
        D: IntoIterator<Item = (Edge, Rational)>,
    {
        if attackers.is_empty() {
            return Err(Error::InvalidAlpha(0));
        }
        if defenders.is_empty() {
            return Err(Error::InvalidDelta(0));
        }
        let n = graph.vertex_count();
        let attackers = attackers
            .into_iter()
            .enumerate()
            .map(|(i, a)| {
                distribution(a, "attacker", i, |&v| {
                    if v < n {
                        Ok(())
                    } else {
                        Err(Error::VertexOutOfRange {
                            vertex: v,
                            vertex_count: n,
                        })
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let defenders = defenders
            .into_iter()
            .enumerate()
            .map(|(j, d)| {
                distribution(d, "defender", j, |e| {
                    if graph.has_edge(e) {
                        Ok(())
                    } else {
                        Err(Error::NotAnEdge(*e))
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MixedProfile {
            graph,
            attackers,
            defenders,
        })
    }

    pub fn from_pure(s: &PureProfile<'g>) -> Self {
        MixedProfile {
            graph: s.graph,
            attackers: s
                .attackers
                .iter()
                .map(|&v| BTreeMap::from([(v, Rational::one())]))
                .collect(),
            defenders: s
                .defenders
                .iter()
                .map(|&e| BTreeMap::from([(e, Rational::one())]))
                .collect(),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn alpha(&self) -> usize {
        self.attackers.len()
    }

    pub fn delta(&self) -> usize {
        self.defenders.len()
    }

    pub fn attacker(&self, a: usize) -> &BTreeMap<Vertex, Rational> {
        &self.attackers[a]
    }

    pub fn defender(&self, d: usize) -> &BTreeMap<Edge, Rational> {
        &self.defenders[d]
    }

    pub fn attackers(&self) -> &[BTreeMap<Vertex, Rational>] {
        &self.attackers
    }

    pub fn defenders(&self) -> &[BTreeMap<Edge, Rational>] {
        &self.defenders
    }

    pub fn attacker_supports(&self) -> VertexSet {
        self.attackers.iter().flat_map(|a| a.keys().copied()).collect()
    }

    pub fn defender_supports(&self) -> EdgeSet {
        self.defenders.iter().flat_map(|d| d.keys().copied()).collect()
    }

    /// Defenders whose support touches `v`.
    pub fn defenders_hitting(&self, v: Vertex) -> BTreeSet<usize> {
        (0..self.delta())
            .filter(|&d| self.defenders[d].keys().any(|e| e.contains(v)))
            .collect()
    }

    /// Every vertex is hit by at most one defender's support.
    pub fn is_unidefender(&self) -> bool {
        self.graph
            .vertices()
            .all(|v| self.defenders_hitting(v).len() <= 1)
    }

    /// Every vertex is hit by exactly one defender's support.
    pub fn is_monodefender(&self) -> bool {
        self.graph
            .vertices()
            .all(|v| self.defenders_hitting(v).len() == 1)
    }

    pub fn is_defender_pure(&self) -> bool {
        self.defenders.iter().all(|d| d.len() == 1)
    }
}

/// One vertex per attacker, one edge per defender.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureProfile<'g> {
    graph: &'g Graph,
    attackers: Vec<Vertex>,
    defenders: Vec<Edge>,
}

impl<'g> PureProfile<'g> {
    pub fn new(graph: &'g Graph, attackers: Vec<Vertex>, defenders: Vec<Edge>) -> Result<Self> {
        if attackers.is_empty() {
            return Err(Error::InvalidAlpha(0));
        }
        if defenders.is_empty() {
            return Err(Error::InvalidDelta(0));
        }
        let n = graph.vertex_count();
        if let Some(&v) = attackers.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: n,
            });
        }
        graph.check_edges(&defenders)?;
        Ok(PureProfile {
            graph,
            attackers,
            defenders,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn attackers(&self) -> &[Vertex] {
        &self.attackers
    }

    pub fn defenders(&self) -> &[Edge] {
        &self.defenders
    }

    pub fn alpha(&self) -> usize {
        self.attackers.len()
    }

    pub fn delta(&self) -> usize {
        self.defenders.len()
    }

    /// `|A_s(v)|` for every vertex.
    pub fn attacker_counts(&self) -> Vec<usize> {
        let mut counts = alloc::vec![0; self.graph.vertex_count()];
        for &v in &self.attackers {
            counts[v] += 1;
        }
        counts
    }

    /// `|D_s(v)|` for every vertex.
    pub fn defender_counts(&self) -> Vec<usize> {
        let mut counts = alloc::vec![0; self.graph.vertex_count()];
        for e in &self.defenders {
            counts[e.u()] += 1;
            counts[e.v()] += 1;
        }
        counts
    }

    /// `U_d(s)` with fair shares.
    pub fn defender_utility(&self, d: usize) -> Rational {
        let (a, dc) = (self.attacker_counts(), self.defender_counts());
        let e = self.defenders[d];
        [e.u(), e.v()]
            .into_iter()
            .map(|x| Rational::new(a[x].into(), dc[x].into()))
            .sum()
    }
}

/// `P(Hit(d, v))`.
pub fn hit_probability(p: &MixedProfile<'_>, d: usize, v: Vertex) -> Rational {
    p.defenders[d]
        .iter()
        .filter(|(e, _)| e.contains(v))
        .map(|(_, w)| w)
        .sum()
}

/// `P(Hit(v))`, the probability that some defender hits `v`. The per-defender
/// events are independent, so this is one minus the product of the misses.
pub fn hit_probability_vertex(p: &MixedProfile<'_>, v: Vertex) -> Rational {
    let miss = (0..p.delta())
        .map(|d| Rational::one() - hit_probability(p, d, v))
        .fold(Rational::one(), |acc, m| acc * m);
    Rational::one() - miss
}

pub fn min_hit(p: &MixedProfile<'_>) -> Rational {
    p.graph
        .vertices()
        .map(|v| hit_probability_vertex(p, v))
        .min()
        .expect("graphs are non-empty")
}

/// `|A|(v)`, the expected number of attackers on `v`.
pub fn expected_attackers(p: &MixedProfile<'_>, v: Vertex) -> Rational {
    p.attackers.iter().filter_map(|a| a.get(&v)).sum()
}

/// Expected share `E[1 / (1 + X)]`, where `X` counts how many of the
/// independent events with probabilities `q` occur.
pub fn expected_share(q: &[Rational]) -> Rational {
    // exactly[k] = P(X = k) over the events seen so far
    let mut exactly = alloc::vec![Rational::one()];
    for x in q.iter().filter(|x| !x.is_zero()) {
        let miss = Rational::one() - x;
        let mut next = alloc::vec![Rational::zero(); exactly.len() + 1];
        for (k, pk) in exactly.iter().enumerate() {
            next[k] += pk * &miss;
            next[k + 1] += pk * x;
        }
        exactly = next;
    }
    exactly
        .iter()
        .enumerate()
        .map(|(k, pk)| pk / integer(k + 1))
        .sum()
}

/// The same share through the alternating sum
/// `sum_k (-1)^k e_k(q) / (k + 1)` over elementary symmetric polynomials.
pub fn expected_share_alternating(q: &[Rational]) -> Rational {
    let mut elementary = alloc::vec![Rational::one()];
    for x in q.iter().filter(|x| !x.is_zero()) {
        elementary.push(Rational::zero());
        for k in (1..elementary.len()).rev() {
            let term = &elementary[k - 1] * x;
            elementary[k] += term;
        }
    }
    elementary
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let t = e / integer(k + 1);
            if k % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum()
}

fn share_of_others(hits: &[Rational], d: usize) -> Rational {
    let others: Vec<Rational> = hits
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != d)
        .map(|(_, q)| q.clone())
        .collect();
    let share = expected_share(&others);
    debug_assert_eq!(share, expected_share_alternating(&others));
    share
}

/// `Prop_d(sigma_-d <> v)`: the expected proportion defender `d` would get on
/// `v` if it hit `v`, given the other defenders' strategies.
pub fn conditional_expected_proportion(p: &MixedProfile<'_>, d: usize, v: Vertex) -> Rational {
    let hits: Vec<Rational> = (0..p.delta()).map(|k| hit_probability(p, k, v)).collect();
    share_of_others(&hits, d)
}

pub fn expected_utility_attacker(p: &MixedProfile<'_>, a: usize) -> Rational {
    p.attackers[a]
        .iter()
        .map(|(&v, w)| w * (Rational::one() - hit_probability_vertex(p, v)))
        .sum()
}

pub fn expected_utility_defender(p: &MixedProfile<'_>, d: usize) -> Rational {
    p.graph
        .vertices()
        .map(|v| {
            let hit = hit_probability(p, d, v);
            if hit.is_zero() {
                return hit;
            }
            hit * conditional_expected_proportion(p, d, v) * expected_attackers(p, v)
        })
        .sum()
}

/// All per-vertex quantities of a profile, computed once.
struct Evaluation {
    /// hit[d][v] = P(Hit(d, v))
    hit: Vec<Vec<Rational>>,
    hit_vertex: Vec<Rational>,
    load: Vec<Rational>,
    /// prop[d][v] = Prop_d(sigma_-d <> v)
    prop: Vec<Vec<Rational>>,
}

impl Evaluation {
    fn new(p: &MixedProfile<'_>) -> Self {
        let n = p.graph.vertex_count();
        let hit: Vec<Vec<Rational>> = (0..p.delta())
            .map(|d| (0..n).map(|v| hit_probability(p, d, v)).collect())
            .collect();
        let mut hit_vertex = Vec::with_capacity(n);
        let mut prop = alloc::vec![Vec::with_capacity(n); p.delta()];
        for v in 0..n {
            let column: Vec<Rational> = hit.iter().map(|h| h[v].clone()).collect();
            let miss = column
                .iter()
                .fold(Rational::one(), |acc, q| acc * (Rational::one() - q));
            hit_vertex.push(Rational::one() - miss);
            for (d, row) in prop.iter_mut().enumerate() {
                row.push(share_of_others(&column, d));
            }
        }
        let load = (0..n).map(|v| expected_attackers(p, v)).collect();
        Evaluation {
            hit,
            hit_vertex,
            load,
            prop,
        }
    }

    fn edge_value(&self, d: usize, e: &Edge) -> Rational {
        &self.prop[d][e.u()] * &self.load[e.u()] + &self.prop[d][e.v()] * &self.load[e.v()]
    }

    fn defender_utility(&self, d: usize) -> Rational {
        self.hit[d]
            .iter()
            .zip(&self.prop[d])
            .zip(&self.load)
            .filter(|((h, _), _)| !h.is_zero())
            .map(|((h, pr), l)| h * pr * l)
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Player {
    Attacker(usize),
    Defender(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Deviation {
    Vertex(Vertex),
    Edge(Edge),
}

/// A pure strategy that strictly improves on the player's current utility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub player: Player,
    pub deviation: Deviation,
    pub gain: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProfileClasses {
    pub attacker_uniform: bool,
    pub defender_uniform: bool,
    pub attacker_symmetric: bool,
    pub defender_symmetric: bool,
    pub attacker_fully_mixed: bool,
    pub defender_fully_mixed: bool,
    pub defender_pure: bool,
    /// Defender supports form a perfect matching.
    pub perfect_matching: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    /// Every attacker-support vertex is hit with probability MinHit.
    pub min_hit_condition: bool,
    /// Every edge in a defender's support maximizes its conditional utility.
    pub defender_condition: bool,
    /// Defender supports form an edge cover.
    pub edge_cover: bool,
    /// Attacker supports form a vertex cover of the defender-support subgraph.
    pub vertex_cover: bool,
    pub unidefender: bool,
    pub monodefender: bool,
    pub maxhit_vertices: VertexSet,
    pub maxhitters: BTreeSet<usize>,
    pub total_defender_utility: Rational,
    pub classes: ProfileClasses,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeReport {
    pub is_ne: bool,
    pub min_hit: Rational,
    /// `alpha` over the total defender utility; absent when that total is 0.
    pub defense_ratio: Option<Rational>,
    pub is_defense_optimal: bool,
    pub violations: Vec<Violation>,
    pub diagnostics: Diagnostics,
}

/// `max{1, |V| / (2 delta)}`.
pub fn optimal_defense_ratio(g: &Graph, delta: usize) -> Rational {
    let bound = integer(g.vertex_count()) / integer(2 * delta);
    bound.max(Rational::one())
}

fn is_uniform<K>(m: &BTreeMap<K, Rational>) -> bool {
    let target = Rational::new(1.into(), m.len().into());
    m.values().all(|w| *w == target)
}

fn all_equal<T: PartialEq>(items: &[T]) -> bool {
    items.windows(2).all(|w| w[0] == w[1])
}

fn classes(p: &MixedProfile<'_>) -> ProfileClasses {
    let supports = p.defender_supports();
    ProfileClasses {
        attacker_uniform: p.attackers.iter().all(is_uniform),
        defender_uniform: p.defenders.iter().all(is_uniform),
        attacker_symmetric: all_equal(&p.attackers),
        defender_symmetric: all_equal(&p.defenders),
        attacker_fully_mixed: p.attackers.iter().all(|a| a.len() == p.graph.vertex_count()),
        defender_fully_mixed: p.defenders.iter().all(|d| d.len() == p.graph.edge_count()),
        defender_pure: p.is_defender_pure(),
        perfect_matching: is_matching(&supports) && is_edge_cover(p.graph, &supports),
    }
}

fn diagnostics(p: &MixedProfile<'_>, ev: &Evaluation, min_hit: &Rational) -> Diagnostics {
    let g = p.graph;
    let attacked = p.attacker_supports();
    let defended = p.defender_supports();
    let min_hit_condition = attacked.iter().all(|&v| ev.hit_vertex[v] == *min_hit);
    let defender_condition = (0..p.delta()).all(|d| {
        let best = g
            .edges()
            .iter()
            .map(|e| ev.edge_value(d, e))
            .max()
            .expect("edges exist");
        p.defenders[d].keys().all(|e| ev.edge_value(d, e) == best)
    });
    let maxhit_vertices = g.vertices().filter(|&v| ev.hit_vertex[v].is_one()).collect();
    let maxhitters = (0..p.delta())
        .filter(|&d| ev.hit[d].iter().any(|h| h.is_one()))
        .collect();
    Diagnostics {
        min_hit_condition,
        defender_condition,
        edge_cover: is_edge_cover(g, &defended),
        vertex_cover: is_vertex_cover(&defended, &attacked),
        unidefender: p.is_unidefender(),
        monodefender: p.is_monodefender(),
        maxhit_vertices,
        maxhitters,
        total_defender_utility: (0..p.delta()).map(|d| ev.defender_utility(d)).sum(),
        classes: classes(p),
    }
}

fn report(
    g: &Graph,
    alpha: usize,
    delta: usize,
    min_hit: Rational,
    violations: Vec<Violation>,
    diagnostics: Diagnostics,
) -> NeReport {
    let is_ne = violations.is_empty();
    let total = &diagnostics.total_defender_utility;
    let defense_ratio = (!total.is_zero()).then(|| integer(alpha) / total);
    let is_defense_optimal = is_ne && defense_ratio.as_ref() == Some(&optimal_defense_ratio(g, delta));
    if is_ne {
        debug_assert!(!diagnostics.unidefender || diagnostics.monodefender);
        debug_assert_eq!(defense_ratio.as_ref().map(|r| r.recip()), Some(min_hit.clone()));
    }
    NeReport {
        is_ne,
        min_hit,
        defense_ratio,
        is_defense_optimal,
        violations,
        diagnostics,
    }
}

/// Checks every pure deviation of every player against the profile.
///
/// `violations` lists each strictly improving deviation, so `is_ne` holds iff
/// it is empty. The diagnostics carry the two conditions of the combinatorial
/// characterization, which agree with the direct check on every profile.
pub fn verify_ne(p: &MixedProfile<'_>) -> NeReport {
    let g = p.graph;
    let ev = Evaluation::new(p);
    let min_hit = ev.hit_vertex.iter().min().expect("graphs are non-empty").clone();
    let mut violations = Vec::new();

    for (a, strategy) in p.attackers.iter().enumerate() {
        let current: Rational = strategy
            .iter()
            .map(|(&v, w)| w * (Rational::one() - &ev.hit_vertex[v]))
            .sum();
        for v in g.vertices() {
            let gain = Rational::one() - &ev.hit_vertex[v] - &current;
            if gain.is_positive() {
                violations.push(Violation {
                    player: Player::Attacker(a),
                    deviation: Deviation::Vertex(v),
                    gain,
                });
            }
        }
    }
    for d in 0..p.delta() {
        let current = ev.defender_utility(d);
        for e in g.edges() {
            let gain = ev.edge_value(d, e) - &current;
            if gain.is_positive() {
                violations.push(Violation {
                    player: Player::Defender(d),
                    deviation: Deviation::Edge(*e),
                    gain,
                });
            }
        }
    }

    let diagnostics = diagnostics(p, &ev, &min_hit);
    debug_assert_eq!(
        violations.is_empty(),
        diagnostics.min_hit_condition && diagnostics.defender_condition
    );
    report(g, p.alpha(), p.delta(), min_hit, violations, diagnostics)
}

/// Pure-profile verification with integer attacker and defender counts.
///
/// An attacker can only gain by moving from a hit vertex to an unhit one; a
/// defender moving to `(u', v')` collects `|A(x)| / (|D_-d(x)| + 1)` at each
/// endpoint.
pub fn verify_pure_ne(s: &PureProfile<'_>) -> NeReport {
    let g = s.graph;
    let attackers = s.attacker_counts();
    let defenders = s.defender_counts();
    let unhit: Vec<Vertex> = g.vertices().filter(|&v| defenders[v] == 0).collect();
    let mut violations = Vec::new();

    for (a, &v) in s.attackers.iter().enumerate() {
        if defenders[v] > 0 {
            for &w in &unhit {
                violations.push(Violation {
                    player: Player::Attacker(a),
                    deviation: Deviation::Vertex(w),
                    gain: Rational::one(),
                });
            }
        }
    }
    for (d, own) in s.defenders.iter().enumerate() {
        let current = s.defender_utility(d);
        let others = |x: Vertex| defenders[x] - usize::from(own.contains(x));
        for e in g.edges() {
            let value: Rational = [e.u(), e.v()]
                .into_iter()
                .map(|x| Rational::new(attackers[x].into(), (others(x) + 1).into()))
                .sum();
            let gain = value - &current;
            if gain.is_positive() {
                violations.push(Violation {
                    player: Player::Defender(d),
                    deviation: Deviation::Edge(*e),
                    gain,
                });
            }
        }
    }

    let mixed = MixedProfile::from_pure(s);
    let ev = Evaluation::new(&mixed);
    let min_hit = if unhit.is_empty() {
        Rational::one()
    } else {
        Rational::zero()
    };
    let mut diagnostics = diagnostics(&mixed, &ev, &min_hit);
    diagnostics.total_defender_utility = (0..s.delta()).map(|d| s.defender_utility(d)).sum();
    report(g, s.alpha(), s.delta(), min_hit, violations, diagnostics)
}

/// Smallest dominating set size. A vertex set is a vertex cover of the
/// subgraph formed by some edge cover iff it dominates the graph, so this is
/// the minimum of `beta(G(EC))` over all edge covers `EC`.
pub fn min_edge_cover_vertex_cover(g: &Graph, bound: usize) -> Result<usize> {
    let n = g.vertex_count();
    if n > bound {
        return Err(Error::SearchBoundExceeded { vertices: n, bound });
    }
    for k in 1..=n {
        let mut found = false;
        for_each_combination(n, k, &mut |pick| {
            let mut dominated = alloc::vec![false; n];
            for &v in pick {
                dominated[v] = true;
                for &w in g.neighbors(v) {
                    dominated[w] = true;
                }
            }
            found = dominated.iter().all(|&x| x);
            found
        });
        if found {
            return Ok(k);
        }
    }
    unreachable!("the full vertex set dominates")
}

/// The two necessary conditions for a pure equilibrium:
/// `(delta >= beta'(G), alpha >= min over edge covers EC of beta(G(EC)))`.
pub fn pure_ne_necessary(g: &Graph, alpha: usize, delta: usize, bound: usize) -> Result<(bool, bool)> {
    let domination = min_edge_cover_vertex_cover(g, bound)?;
    Ok((delta >= edge_cover_number(g), alpha >= domination))
}

/// Vertices touched by a defender's support.
pub fn defender_vertices(p: &MixedProfile<'_>, d: usize) -> VertexSet {
    vertices_of(p.defenders[d].keys())
}
