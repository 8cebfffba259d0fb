//! Plain-text formats: edge lists, fractional matchings and profiles.
//!
//! All three are line oriented and whitespace separated. Blank lines and
//! lines starting with `#` are skipped. Rationals are written `p/q` in lowest
//! terms, always with the denominator, so one is `1/1`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use adgame_core::game::{MixedProfile, PureProfile};
use adgame_core::matching::FractionalMatching;
use adgame_core::{Edge, Graph, Rational, Vertex};
use num_traits::Signed;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: expected {expected}")]
    Malformed { line: usize, expected: &'static str },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: adgame_core::Error },
    #[error("missing header line")]
    MissingHeader,
    #[error("header announces {expected} {what}, found {found}")]
    Count {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Core(#[from] adgame_core::Error),
}

type Result<T> = std::result::Result<T, FormatError>;

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        (!line.is_empty() && !line.starts_with('#')).then(|| (i + 1, line.split_whitespace().collect()))
    })
}

fn number(token: &str, line: usize, expected: &'static str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| FormatError::Malformed { line, expected })
}

fn probability(token: &str, line: usize) -> Result<Rational> {
    let malformed = FormatError::Malformed {
        line,
        expected: "a rational p/q",
    };
    let value: Rational = token.parse().map_err(|_| malformed)?;
    if value.is_negative() {
        return Err(FormatError::Malformed {
            line,
            expected: "a non-negative rational",
        });
    }
    Ok(value)
}

pub fn rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `n m` followed by `m` lines `u v`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let [n, m] = header[..] else {
        return Err(FormatError::Malformed {
            line,
            expected: "header \"n m\"",
        });
    };
    let n = number(n, line, "a vertex count")?;
    let m = number(m, line, "an edge count")?;
    let mut edges = Vec::with_capacity(m);
    let mut seen = BTreeSet::new();
    for (line, tokens) in lines {
        let [u, v] = tokens[..] else {
            return Err(FormatError::Malformed {
                line,
                expected: "an edge \"u v\"",
            });
        };
        let (u, v) = (number(u, line, "a vertex")?, number(v, line, "a vertex")?);
        let invalid = |source| FormatError::Invalid { line, source };
        if u == v {
            return Err(invalid(adgame_core::Error::SelfLoop(u)));
        }
        if let Some(&vertex) = [u, v].iter().find(|&&x| x >= n) {
            return Err(invalid(adgame_core::Error::VertexOutOfRange {
                vertex,
                vertex_count: n,
            }));
        }
        if !seen.insert(Edge::new(u, v)) {
            return Err(invalid(adgame_core::Error::DuplicateEdge(Edge::new(u, v))));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(FormatError::Count {
            what: "edges",
            expected: m,
            found: edges.len(),
        });
    }
    Ok(Graph::new(n, edges)?)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.u(), e.v());
    }
    out
}

/// Parses lines `u v p/q`; omitted edges weigh zero.
pub fn parse_fpm<'g>(text: &str, g: &'g Graph) -> Result<FractionalMatching<'g>> {
    let mut weights = Vec::new();
    for (line, tokens) in content_lines(text) {
        let [u, v, w] = tokens[..] else {
            return Err(FormatError::Malformed {
                line,
                expected: "\"u v p/q\"",
            });
        };
        let (u, v) = (number(u, line, "a vertex")?, number(v, line, "a vertex")?);
        if u == v {
            return Err(FormatError::Invalid {
                line,
                source: adgame_core::Error::SelfLoop(u),
            });
        }
        weights.push((Edge::new(u, v), probability(w, line)?));
    }
    Ok(FractionalMatching::new(g, weights)?)
}

pub fn write_fpm(f: &FractionalMatching<'_>) -> String {
    let mut out = String::new();
    for (e, w) in f.weights() {
        let _ = writeln!(out, "{} {} {}", e.u(), e.v(), rational(w));
    }
    out
}

fn tagged<'a, 't>(
    tokens: &'a [&'t str],
    tag: &str,
    line: usize,
    expected: &'static str,
) -> Result<&'a [&'t str]> {
    match tokens.split_first() {
        Some((&first, rest)) if first == tag => Ok(rest),
        _ => Err(FormatError::Malformed { line, expected }),
    }
}

/// Parses the header `alpha delta`, then `alpha` lines `a v p/q ...` and
/// `delta` lines `d u v p/q ...`.
pub fn parse_profile<'g>(text: &str, g: &'g Graph) -> Result<MixedProfile<'g>> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let [alpha, delta] = header[..] else {
        return Err(FormatError::Malformed {
            line,
            expected: "header \"alpha delta\"",
        });
    };
    let alpha = number(alpha, line, "an attacker count")?;
    let delta = number(delta, line, "a defender count")?;
    let rest: Vec<(usize, Vec<&str>)> = lines.collect();
    if rest.len() != alpha + delta {
        return Err(FormatError::Count {
            what: "strategy lines",
            expected: alpha + delta,
            found: rest.len(),
        });
    }

    let mut attackers = Vec::with_capacity(alpha);
    for (line, tokens) in &rest[..alpha] {
        let line = *line;
        let pairs = tagged(tokens, "a", line, "an attacker line \"a v p/q ...\"")?;
        if pairs.is_empty() || pairs.len() % 2 != 0 {
            return Err(FormatError::Malformed {
                line,
                expected: "vertex and probability pairs",
            });
        }
        let strategy = pairs
            .chunks(2)
            .map(|c| Ok((number(c[0], line, "a vertex")?, probability(c[1], line)?)))
            .collect::<Result<Vec<(Vertex, Rational)>>>()?;
        attackers.push(strategy);
    }
    let mut defenders = Vec::with_capacity(delta);
    for (line, tokens) in &rest[alpha..] {
        let line = *line;
        let triples = tagged(tokens, "d", line, "a defender line \"d u v p/q ...\"")?;
        if triples.is_empty() || triples.len() % 3 != 0 {
            return Err(FormatError::Malformed {
                line,
                expected: "edge and probability triples",
            });
        }
        let strategy = triples
            .chunks(3)
            .map(|c| {
                let (u, v) = (number(c[0], line, "a vertex")?, number(c[1], line, "a vertex")?);
                if u == v {
                    return Err(FormatError::Invalid {
                        line,
                        source: adgame_core::Error::SelfLoop(u),
                    });
                }
                Ok((Edge::new(u, v), probability(c[2], line)?))
            })
            .collect::<Result<Vec<(Edge, Rational)>>>()?;
        defenders.push(strategy);
    }
    Ok(MixedProfile::new(g, attackers, defenders)?)
}

pub fn write_profile(p: &MixedProfile<'_>) -> String {
    let mut out = format!("{} {}\n", p.alpha(), p.delta());
    for a in p.attackers() {
        out.push('a');
        for (v, w) in a {
            let _ = write!(out, " {v} {}", rational(w));
        }
        out.push('\n');
    }
    for d in p.defenders() {
        out.push('d');
        for (e, w) in d {
            let _ = write!(out, " {} {} {}", e.u(), e.v(), rational(w));
        }
        out.push('\n');
    }
    out
}

pub fn write_pure_profile(s: &PureProfile<'_>) -> String {
    write_profile(&MixedProfile::from_pure(s))
}

/// The pure profile a mixed one describes, if every player is deterministic.
pub fn as_pure<'g>(p: &MixedProfile<'g>) -> Option<PureProfile<'g>> {
    let single = |len: usize| len == 1;
    if !p.attackers().iter().all(|a| single(a.len())) || !p.defenders().iter().all(|d| single(d.len())) {
        return None;
    }
    let attackers = p.attackers().iter().map(|a| *a.keys().next().unwrap()).collect();
    let defenders = p.defenders().iter().map(|d| *d.keys().next().unwrap()).collect();
    PureProfile::new(p.graph(), attackers, defenders).ok()
}
