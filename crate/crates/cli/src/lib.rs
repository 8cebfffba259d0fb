//! Batch analysis of attacker-defender graph games from plain-text files.
//!
//! Each subcommand is a function from parsed input to an [`Outcome`]: the text
//! to print and whether the verdict was positive. The binary maps a negative
//! verdict to exit status 1 and any [`Error`] to exit status 2.

pub mod format;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use adgame_core::construct::{
    classify_regime, construct_defense_optimal, pure_vertex_balanced_ne, Regime, RegimeKind,
};
use adgame_core::game::{verify_ne, verify_pure_ne, Deviation, NeReport, Player};
use adgame_core::matching::{
    edge_cover_number, fractional_perfect_matching, has_perfect_matching, minimum_edge_cover,
};
use adgame_core::partition::find_delta_partitionable;
use adgame_core::reduce::canonicalize_fpm;
use adgame_core::{Graph, SearchLimits};
use thiserror::Error;

use crate::format::{rational, FormatError};

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Format { path: PathBuf, source: FormatError },
    #[error(transparent)]
    Core(#[from] adgame_core::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub success: bool,
}

impl Outcome {
    fn yes(text: String) -> Self {
        Outcome { text, success: true }
    }

    fn none(reason: impl std::fmt::Display) -> Self {
        Outcome {
            text: format!("NONE {reason}\n"),
            success: false,
        }
    }
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    format::parse_graph(&read(path)?).map_err(|source| Error::Format {
        path: path.to_owned(),
        source,
    })
}

fn regime_line(r: &Regime) -> String {
    let mut line = format!("{} {}", r.delta, r.kind.name());
    if r.is_boundary() {
        line.push_str(" boundary");
    }
    line
}

pub fn analyze(g: &Graph) -> Result<Outcome> {
    let mut out = String::new();
    let _ = writeln!(out, "vertices {}", g.vertex_count());
    let _ = writeln!(out, "edges {}", g.edge_count());
    let _ = writeln!(out, "beta_prime {}", edge_cover_number(g));
    let _ = writeln!(out, "perfect_matching {}", has_perfect_matching(g));
    let _ = writeln!(
        out,
        "fractional_perfect_matching {}",
        fractional_perfect_matching(g).is_some()
    );
    out.push_str("delta regime\n");
    for delta in 1..=g.vertex_count() {
        let _ = writeln!(out, "{}", regime_line(&classify_regime(g, delta)?));
    }
    Ok(Outcome::yes(out))
}

pub fn classify(g: &Graph, delta: usize) -> Result<Outcome> {
    let r = classify_regime(g, delta)?;
    let mut out = String::new();
    let _ = writeln!(out, "regime {}", r.kind.name());
    let _ = writeln!(out, "delta {}", r.delta);
    let _ = writeln!(out, "vertices {}", r.vertex_count);
    let _ = writeln!(out, "beta_prime {}", r.beta_prime);
    let _ = writeln!(out, "boundary {}", r.is_boundary());
    Ok(Outcome::yes(out))
}

pub fn min_edge_cover(g: &Graph) -> Outcome {
    let cover = minimum_edge_cover(g);
    let mut out = format!("size {}\n", cover.len());
    for e in &cover {
        let _ = writeln!(out, "{} {}", e.u(), e.v());
    }
    Outcome::yes(out)
}

pub fn fpm(g: &Graph) -> Outcome {
    match fractional_perfect_matching(g) {
        Some(f) => Outcome::yes(format::write_fpm(&f)),
        None => Outcome::none("no fractional perfect matching"),
    }
}

/// Canonical form of the given matching, or of the one `fpm` finds.
pub fn reduce(g: &Graph, fpm_path: Option<&Path>) -> Result<Outcome> {
    let f = match fpm_path {
        Some(path) => format::parse_fpm(&read(path)?, g).map_err(|source| Error::Format {
            path: path.to_owned(),
            source,
        })?,
        None => match fractional_perfect_matching(g) {
            Some(f) => f,
            None => return Ok(Outcome::none("no fractional perfect matching")),
        },
    };
    Ok(Outcome::yes(format::write_fpm(&canonicalize_fpm(&f)?)))
}

pub fn partition(g: &Graph, delta: usize, limits: SearchLimits) -> Result<Outcome> {
    let n = g.vertex_count();
    if delta != 0 && n % delta != 0 {
        return Ok(Outcome::none(format_args!(
            "{delta} does not divide {n} vertices"
        )));
    }
    let Some((f, p)) = find_delta_partitionable(g, delta, limits.partition)? else {
        return Ok(Outcome::none(format_args!(
            "no {delta}-partitionable fractional perfect matching"
        )));
    };
    let mut out = String::new();
    for (i, partite) in p.partites().iter().enumerate() {
        let _ = writeln!(out, "partite {}", i + 1);
        for e in partite {
            let w = f.weight(e);
            let _ = writeln!(out, "{} {} {}", e.u(), e.v(), rational(&w));
        }
    }
    Ok(Outcome::yes(out))
}

pub fn construct_ne(
    g: &Graph,
    alpha: usize,
    delta: usize,
    pure: bool,
    limits: SearchLimits,
) -> Result<Outcome> {
    if pure {
        return match pure_vertex_balanced_ne(g, alpha, delta) {
            Ok(s) => Ok(Outcome::yes(format::write_pure_profile(&s))),
            Err(adgame_core::Error::TooFewDefenders { delta, beta_prime }) => Ok(Outcome::none(
                format_args!("too few defenders for a pure equilibrium ({delta} < beta' = {beta_prime})"),
            )),
            Err(adgame_core::Error::NotDivisible { value, divisor }) => Ok(Outcome::none(format_args!(
                "{divisor} does not divide {value} attackers"
            ))),
            Err(e) => Err(e.into()),
        };
    }
    if let Some(p) = construct_defense_optimal(g, alpha, delta, limits.partition)? {
        return Ok(Outcome::yes(format::write_profile(&p)));
    }
    Ok(match classify_regime(g, delta)?.kind {
        RegimeKind::Many => Outcome::none("many-defenders regime"),
        _ => Outcome::none(format_args!(
            "few-defenders regime without a {delta}-partitionable fractional perfect matching"
        )),
    })
}

pub fn verify(g: &Graph, profile_path: &Path) -> Result<Outcome> {
    let p = format::parse_profile(&read(profile_path)?, g).map_err(|source| Error::Format {
        path: profile_path.to_owned(),
        source,
    })?;
    let report = match format::as_pure(&p) {
        Some(s) => verify_pure_ne(&s),
        None => verify_ne(&p),
    };
    Ok(Outcome {
        success: report.is_ne,
        text: write_report(&report),
    })
}

fn flag_list<I: IntoIterator<Item = usize>>(items: I) -> String {
    items.into_iter().map(|x| format!(" {x}")).collect()
}

pub fn write_report(r: &NeReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "is_ne {}", r.is_ne);
    let _ = writeln!(out, "min_hit {}", rational(&r.min_hit));
    match &r.defense_ratio {
        Some(dr) => {
            let _ = writeln!(out, "defense_ratio {}", rational(dr));
        }
        None => out.push_str("defense_ratio none\n"),
    }
    let _ = writeln!(out, "defense_optimal {}", r.is_defense_optimal);
    for v in &r.violations {
        let player = match v.player {
            Player::Attacker(i) => format!("attacker {i}"),
            Player::Defender(i) => format!("defender {i}"),
        };
        let deviation = match v.deviation {
            Deviation::Vertex(x) => format!("vertex {x}"),
            Deviation::Edge(e) => format!("edge {} {}", e.u(), e.v()),
        };
        let _ = writeln!(out, "violation {player} {deviation} gain {}", rational(&v.gain));
    }
    let d = &r.diagnostics;
    let _ = writeln!(out, "min_hit_condition {}", d.min_hit_condition);
    let _ = writeln!(out, "defender_condition {}", d.defender_condition);
    let _ = writeln!(out, "edge_cover {}", d.edge_cover);
    let _ = writeln!(out, "vertex_cover {}", d.vertex_cover);
    let _ = writeln!(out, "unidefender {}", d.unidefender);
    let _ = writeln!(out, "monodefender {}", d.monodefender);
    let _ = writeln!(
        out,
        "maxhit_vertices{}",
        flag_list(d.maxhit_vertices.iter().copied())
    );
    let _ = writeln!(out, "maxhitters{}", flag_list(d.maxhitters.iter().copied()));
    let _ = writeln!(
        out,
        "total_defender_utility {}",
        rational(&d.total_defender_utility)
    );
    let c = &d.classes;
    let classes = [
        ("attacker-uniform", c.attacker_uniform),
        ("defender-uniform", c.defender_uniform),
        ("attacker-symmetric", c.attacker_symmetric),
        ("defender-symmetric", c.defender_symmetric),
        ("attacker-fully-mixed", c.attacker_fully_mixed),
        ("defender-fully-mixed", c.defender_fully_mixed),
        ("defender-pure", c.defender_pure),
        ("perfect-matching", c.perfect_matching),
    ];
    out.push_str("classes");
    for (name, _) in classes.iter().filter(|(_, on)| *on) {
        let _ = write!(out, " {name}");
    }
    out.push('\n');
    out
}
