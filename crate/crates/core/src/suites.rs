//! Table-wide verification sweeps. Each suite emits one record per target;
//! failures are recorded, never raised, so one bad diagram can't hide others.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::alexpoly::{alexander_det, permutation_term_count};
use crate::clocknum::{
    audit_path_counts, audit_star_bound, cross_part_moves, placement_lattices, report_from_lattices,
    two_bridge_condition, KnotMeta,
};
use crate::diagram::Diagram;
use crate::generators::{connected_sum, gen_two_bridge, two_bridge_specs, KnotTableEntry, TwoBridgeDiagram};
use crate::lattice::{build_lattice, Lattice};
use crate::states::{greedy_ascent, Direction};
use crate::verdict::{Outcome, VerdictRecord};

pub const DEFAULT_SEED: u64 = 0x6b6e_6f74;

/// Largest crossing count of the generated two-bridge family.
pub const TWO_BRIDGE_MAX: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    ClockTheorem,
    Oracle,
    Alexander,
    Thm41,
    Lemma42,
    Lemma43,
    Lemma51,
    Lemma52,
    Prop53,
    Main,
    ExampleNonprime,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::ClockTheorem,
        Suite::Oracle,
        Suite::Alexander,
        Suite::Thm41,
        Suite::Lemma42,
        Suite::Lemma43,
        Suite::Lemma51,
        Suite::Lemma52,
        Suite::Prop53,
        Suite::Main,
        Suite::ExampleNonprime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ClockTheorem => "clock-theorem",
            Suite::Oracle => "oracle",
            Suite::Alexander => "alexander",
            Suite::Thm41 => "thm41",
            Suite::Lemma42 => "lemma42",
            Suite::Lemma43 => "lemma43",
            Suite::Lemma51 => "lemma51",
            Suite::Lemma52 => "lemma52",
            Suite::Prop53 => "prop53",
            Suite::Main => "main",
            Suite::ExampleNonprime => "example-nonprime",
        }
    }

    /// Parses a suite name; `all` expands to every suite.
    pub fn parse_selection(s: &str) -> Option<Vec<Suite>> {
        if s == "all" {
            return Some(Suite::ALL.to_vec());
        }
        s.parse().ok().map(|x| vec![x])
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

struct TableKnot<'a> {
    entry: &'a KnotTableEntry,
    index: usize,
    lattices: Result<Vec<Lattice>, String>,
}

impl TableKnot<'_> {
    fn meta(&self) -> KnotMeta {
        KnotMeta {
            name: self.entry.name.clone(),
            crossing_number: self.entry.crossing_number,
            bridge_number: self.entry.bridge_number,
            prime: true,
        }
    }

    fn diagram(&self) -> &Diagram {
        &self.entry.diagram
    }
}

/// Runs `suites` over the table and the generated families; records come
/// back sorted by suite, then target.
pub fn run_suites(suites: &[Suite], table: &[KnotTableEntry], seed: u64) -> Vec<VerdictRecord> {
    let needs_table = suites.iter().any(|s| {
        !matches!(s, Suite::Lemma43 | Suite::ExampleNonprime)
    });
    let knots: Vec<TableKnot> = if needs_table {
        table
            .par_iter()
            .enumerate()
            .map(|(index, entry)| TableKnot {
                entry,
                index,
                lattices: placement_lattices(&entry.diagram.universe).map_err(|e| e.to_string()),
            })
            .collect()
    } else {
        Vec::new()
    };
    let needs_family = suites.iter().any(|s| matches!(s, Suite::Lemma42 | Suite::Prop53 | Suite::Main));
    let family: Vec<Result<TwoBridgeDiagram, String>> = if needs_family {
        two_bridge_specs(TWO_BRIDGE_MAX)
            .par_iter()
            .map(|s| gen_two_bridge(s).map_err(|e| e.to_string()))
            .collect()
    } else {
        Vec::new()
    };

    let mut records: Vec<VerdictRecord> = suites
        .par_iter()
        .flat_map_iter(|&suite| match suite {
            Suite::ClockTheorem => per_knot(&knots, |k| clock_theorem(k, seed)),
            Suite::Oracle => per_knot(&knots, state_count_oracle),
            Suite::Alexander => per_knot(&knots, alexander),
            Suite::Thm41 => {
                let mut r = per_knot(&knots, thm41);
                r.push(granny_thm41(table));
                r
            }
            Suite::Lemma42 => {
                let mut r = per_knot(&knots, lemma42);
                r.extend(family.iter().map(lemma42_standard));
                r
            }
            Suite::Lemma43 => lemma43(table),
            Suite::Lemma51 => per_knot(&knots, lemma51),
            Suite::Lemma52 => per_knot(&knots, lemma52),
            Suite::Prop53 => {
                let mut r = per_knot(&knots, prop53_table);
                r.extend(family.iter().map(prop53_standard));
                r
            }
            Suite::Main => main_theorem(&knots, &family),
            Suite::ExampleNonprime => vec![example_nonprime(table)],
        })
        .collect();
    records.sort_by(|a, b| (&a.suite, &a.target).cmp(&(&b.suite, &b.target)));
    records
}

fn per_knot(knots: &[TableKnot], f: impl Fn(&TableKnot) -> VerdictRecord + Sync + Send) -> Vec<VerdictRecord> {
    knots.par_iter().map(f).collect()
}

/// Unwraps the lattices or produces the failure record.
macro_rules! lattices_or_fail {
    ($suite:expr, $k:expr) => {
        match &$k.lattices {
            Ok(l) => l,
            Err(e) => {
                return VerdictRecord::new($suite, &$k.entry.name, Outcome::Fail, format!("lattice: {e}"))
            }
        }
    };
}

fn clock_theorem(k: &TableKnot, seed: u64) -> VerdictRecord {
    const SUITE: &str = "clock-theorem";
    let lattices = lattices_or_fail!(SUITE, k);
    let u = &k.diagram().universe;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k.index as u64));
    let mut starts = 0;
    for l in lattices {
        for _ in 0..4 {
            let s = &l.states[rng.gen_range(0..l.states.len())];
            starts += 1;
            let top = greedy_ascent(u, s, Direction::Counterclockwise);
            let bottom = greedy_ascent(u, s, Direction::Clockwise);
            if top.as_ref() != Ok(&l.states[l.clocked]) || bottom.as_ref() != Ok(&l.states[l.counterclocked]) {
                return VerdictRecord::new(
                    SUITE,
                    &k.entry.name,
                    Outcome::Fail,
                    format!("greedy route from {s} disagrees at stars {}", l.stars),
                );
            }
        }
    }
    let states: usize = lattices.iter().map(|l| l.states.len()).sum();
    VerdictRecord::new(
        SUITE,
        &k.entry.name,
        Outcome::Pass,
        format!(
            "{} placements: unique clocked/counterclocked, closure complete",
            lattices.len()
        ),
    )
    .with("placements", lattices.len())
    .with("states", states)
    .with("random_starts", starts)
}

fn state_count_oracle(k: &TableKnot) -> VerdictRecord {
    const SUITE: &str = "oracle";
    let lattices = lattices_or_fail!(SUITE, k);
    let u = &k.diagram().universe;
    let bad: Vec<String> = lattices
        .iter()
        .filter(|l| permutation_term_count(u, l.stars) != l.states.len() as u64)
        .map(|l| l.stars.to_string())
        .collect();
    VerdictRecord::pass_if(
        SUITE,
        &k.entry.name,
        bad.is_empty(),
        if bad.is_empty() {
            "state counts equal determinant term counts".to_string()
        } else {
            format!("mismatch at {}", bad.join(" "))
        },
    )
    .with("placements", lattices.len())
    .with("mismatches", bad.len())
}

fn alexander(k: &TableKnot) -> VerdictRecord {
    const SUITE: &str = "alexander";
    let u = &k.diagram().universe;
    let mut bad = Vec::new();
    let pairs = u.adjacent_pairs();
    for &stars in &pairs {
        match alexander_det(k.diagram(), stars) {
            Ok(p) if p.coeffs == k.entry.alexander => {}
            Ok(p) => bad.push(format!("{stars}: {p}")),
            Err(e) => bad.push(format!("{stars}: {e}")),
        }
    }
    VerdictRecord::pass_if(
        SUITE,
        &k.entry.name,
        bad.is_empty(),
        if bad.is_empty() {
            format!("matches stored polynomial at all {} placements", pairs.len())
        } else {
            bad.join("; ")
        },
    )
    .with("placements", pairs.len())
    .with("mismatches", bad.len())
}

fn thm41(k: &TableKnot) -> VerdictRecord {
    const SUITE: &str = "thm41";
    let lattices = lattices_or_fail!(SUITE, k);
    let report = report_from_lattices(&k.diagram().universe, lattices, Some(k.meta()));
    let c = k.entry.crossing_number;
    let low = report.placements.iter().find(|p| p.height < c);
    let min = report.min_over_stars.unwrap_or(0);
    VerdictRecord::pass_if(
        SUITE,
        &k.entry.name,
        low.is_none(),
        match low {
            None => format!("all heights >= c = {c} (min {min})"),
            Some(p) => format!("height {} < c = {c} at stars {}", p.height, p.stars),
        },
    )
    .with("c", c)
    .with("min_height", min)
    .with("heights_agree", report.heights_agree() as i64)
}

fn granny(table: &[KnotTableEntry]) -> Result<Diagram, String> {
    let t = table
        .iter()
        .find(|e| e.name == "3_1")
        .ok_or("table lacks 3_1")?;
    connected_sum(&t.diagram, &t.diagram)
        .map(|s| s.diagram)
        .map_err(|e| e.to_string())
}

fn granny_thm41(table: &[KnotTableEntry]) -> VerdictRecord {
    let target = "3_1#3_1";
    let min = granny(table).and_then(|d| {
        let ls = placement_lattices(&d.universe).map_err(|e| e.to_string())?;
        Ok(ls.iter().map(|l| l.height).min().unwrap_or(0))
    });
    match min {
        Ok(m) => VerdictRecord::new(
            "thm41",
            target,
            Outcome::HypothesisUnmet,
            format!("composite knot; min height {m} vs c = 6"),
        )
        .with("c", 6)
        .with("min_height", m),
        Err(e) => VerdictRecord::new("thm41", target, Outcome::Fail, e),
    }
}

fn lemma42(k: &TableKnot) -> VerdictRecord {
    const SUITE: &str = "lemma42";
    let lattices = lattices_or_fail!(SUITE, k);
    let u = &k.diagram().universe;
    let mut exact = 0;
    let mut bad = Vec::new();
    for l in lattices {
        match audit_path_counts(u, l) {
            Ok(a) if a.holds() => exact += a.exact() as usize,
            Ok(a) => bad.push(format!("{}: counts {:?} need {:?}", a.stars, a.counts, a.required)),
            Err(e) => bad.push(format!("{}: {e}", l.stars)),
        }
    }
    VerdictRecord::pass_if(
        SUITE,
        &k.entry.name,
        bad.is_empty(),
        if bad.is_empty() {
            format!("counts meet (1,2,4); {exact}/{} placements exact", lattices.len())
        } else {
            bad.join("; ")
        },
    )
    .with("placements", lattices.len())
    .with("exact", exact)
}

fn lemma42_standard(g: &Result<TwoBridgeDiagram, String>) -> VerdictRecord {
    const SUITE: &str = "lemma42";
    let g = match g {
        Ok(g) => g,
        Err(e) => return VerdictRecord::new(SUITE, "2b?", Outcome::Fail, e.clone()),
    };
    let target = format!("2b{}", g.spec);
    let u = &g.diagram.universe;
    let c = u.vertex_count();
    let audit = build_lattice(u, g.stars)
        .map_err(|e| e.to_string())
        .and_then(|l| audit_path_counts(u, &l).map_err(|e| e.to_string()));
    match audit {
        Ok(a) => {
            let ones = a.counts.iter().filter(|&&x| x == 1).count();
            let twos = a.counts.iter().filter(|&&x| x == 2).count();
            VerdictRecord::pass_if(
                SUITE,
                target,
                a.holds() && ones == 2 && twos == c - 2,
                format!("{ones} vertices moved once, {twos} twice (c = {c})"),
            )
            .with("ones", ones)
            .with("twos", twos)
        }
        Err(e) => VerdictRecord::new(SUITE, target, Outcome::Fail, e),
    }
}

fn lemma43(table: &[KnotTableEntry]) -> Vec<VerdictRecord> {
    const SUITE: &str = "lemma43";
    let get = |name: &str| table.iter().find(|e| e.name == name).map(|e| &e.diagram);
    let mut out = Vec::new();
    for (a, b) in [("3_1", "3_1"), ("3_1", "4_1")] {
        let target = format!("{a}#{b}");
        let (Some(da), Some(db)) = (get(a), get(b)) else {
            out.push(VerdictRecord::new(SUITE, target, Outcome::Fail, "summand missing from table"));
            continue;
        };
        let result = connected_sum(da, db)
            .map_err(|e| e.to_string())
            .and_then(|s| {
                let u = &s.diagram.universe;
                let ls = placement_lattices(u).map_err(|e| e.to_string())?;
                let mut crossing = 0;
                for l in &ls {
                    crossing += cross_part_moves(u, l).map_err(|e| e.to_string())?.len();
                }
                Ok((ls.len(), crossing))
            });
        out.push(match result {
            Ok((placements, crossing)) => VerdictRecord::pass_if(
                SUITE,
                target,
                crossing == 0,
                format!("{crossing} cross-part moves over {placements} placements"),
            )
            .with("placements", placements)
            .with("cross_part_moves", crossing),
            Err(e) => VerdictRecord::new(SUITE, target, Outcome::Fail, e),
        });
    }
    if let Some(t) = get("3_1") {
        let u = &t.universe;
        let rec = match build_lattice(u, u.adjacent_pairs()[0]) {
            Ok(l) => match cross_part_moves(u, &l) {
                Err(e) => VerdictRecord::new(SUITE, "3_1", Outcome::HypothesisUnmet, e.to_string()),
                Ok(_) => VerdictRecord::new(SUITE, "3_1", Outcome::Fail, "proper diagram reported parts"),
            },
            Err(e) => VerdictRecord::new(SUITE, "3_1", Outcome::Fail, e.to_string()),
        };
        out.push(rec);
    }
    out
}

fn lemma51(k: &TableKnot) -> VerdictRecord {
    const SUITE: &str = "lemma51";
    let u = &k.diagram().universe;
    let pairs = u.adjacent_pairs();
    let bad: Vec<String> = pairs
        .iter()
        .filter_map(|s| match u.shared_vertices(s.star_a, s.star_b) {
            Ok(v) if v.len() == 2 => None,
            Ok(v) => Some(format!("{s} share {}", v.len())),
            Err(e) => Some(e.to_string()),
        })
        .collect();
    VerdictRecord::pass_if(
        SUITE,
        &k.entry.name,
        bad.is_empty() && u.is_proper(),
        if bad.is_empty() {
            format!("all {} adjacent pairs share exactly 2 vertices", pairs.len())
        } else {
            bad.join("; ")
        },
    )
    .with("pairs", pairs.len())
}

fn lemma52(k: &TableKnot) -> VerdictRecord {
    const SUITE: &str = "lemma52";
    let lattices = lattices_or_fail!(SUITE, k);
    let u = &k.diagram().universe;
    let c = k.entry.crossing_number;
    let mut slack = usize::MAX;
    let mut bad = Vec::new();
    for l in lattices {
        match audit_star_bound(u, l.stars, l.height, c) {
            Ok(a) if a.inequality_holds() && a.star_sizes_bounded(u.vertex_count()) => {
                slack = slack.min(a.height + a.r.0 + a.r.1 - (2 * c + 2));
            }
            Ok(a) => bad.push(format!("{}: {} + {} + {} < {}", a.stars, a.height, a.r.0, a.r.1, 2 * c + 2)),
            Err(e) => bad.push(e.to_string()),
        }
    }
    VerdictRecord::pass_if(
        SUITE,
        &k.entry.name,
        bad.is_empty(),
        if bad.is_empty() {
            format!("height + r_i + r_j >= 2c+2 everywhere (least slack {slack})")
        } else {
            bad.join("; ")
        },
    )
    .with("least_slack", slack)
}

fn prop53_table(k: &TableKnot) -> VerdictRecord {
    const SUITE: &str = "prop53";
    let u = &k.diagram().universe;
    let b = k.entry.bridge_number;
    match two_bridge_condition(u) {
        Ok(Some(w)) => VerdictRecord::pass_if(
            SUITE,
            &k.entry.name,
            b == 2,
            format!("condition holds at {w}; bridge number {b}"),
        )
        .with("condition", 1),
        Ok(None) => VerdictRecord::new(
            SUITE,
            &k.entry.name,
            Outcome::Pass,
            if b == 2 {
                "condition fails on this diagram (not in standard form)".to_string()
            } else {
                format!("condition fails; bridge number {b}")
            },
        )
        .with("condition", 0),
        Err(e) => VerdictRecord::new(SUITE, &k.entry.name, Outcome::Fail, e.to_string()),
    }
}

fn prop53_standard(g: &Result<TwoBridgeDiagram, String>) -> VerdictRecord {
    const SUITE: &str = "prop53";
    let g = match g {
        Ok(g) => g,
        Err(e) => return VerdictRecord::new(SUITE, "2b?", Outcome::Fail, e.clone()),
    };
    let target = format!("2b{}", g.spec);
    match two_bridge_condition(&g.diagram.universe) {
        Ok(w) => VerdictRecord::pass_if(
            SUITE,
            target,
            w.is_some(),
            match w {
                Some(w) => format!("condition holds at {w}"),
                None => "no adjacent pair with r_i + r_j = c + 2".to_string(),
            },
        ),
        Err(e) => VerdictRecord::new(SUITE, target, Outcome::Fail, e.to_string()),
    }
}

fn main_theorem(knots: &[TableKnot], family: &[Result<TwoBridgeDiagram, String>]) -> Vec<VerdictRecord> {
    const SUITE: &str = "main";
    let table: Vec<&KnotTableEntry> = knots.iter().map(|k| k.entry).collect();
    let mut out: Vec<VerdictRecord> = family
        .par_iter()
        .map(|g| {
            let g = match g {
                Ok(g) => g,
                Err(e) => return VerdictRecord::new(SUITE, "2b?", Outcome::Fail, e.clone()),
            };
            let target = format!("2b{}", g.spec);
            let u = &g.diagram.universe;
            let c = g.spec.crossings();
            let poly = match alexander_det(&g.diagram, g.stars) {
                Ok(p) => p,
                Err(e) => return VerdictRecord::new(SUITE, target, Outcome::Fail, e.to_string()),
            };
            let names: Vec<&str> = table
                .iter()
                .filter(|e| e.bridge_number == 2 && e.crossing_number == c && e.alexander == poly.coeffs)
                .map(|e| e.name.as_str())
                .collect();
            let heights = placement_lattices(u).map_err(|e| e.to_string()).map(|ls| {
                let fixed = ls.iter().find(|l| l.stars == g.stars).map_or(0, |l| l.height);
                (fixed, ls.iter().map(|l| l.height).min().unwrap_or(0))
            });
            match heights {
                Ok((fixed, min)) => VerdictRecord::pass_if(
                    SUITE,
                    target,
                    !names.is_empty() && fixed == c && min == c,
                    format!("{} c = {c}: recommended stars height {fixed}, min {min}", names.join("/")),
                )
                .with("c", c)
                .with("height", fixed)
                .with("min_height", min),
                Err(e) => VerdictRecord::new(SUITE, target, Outcome::Fail, e),
            }
        })
        .collect();

    for k in knots {
        let name = &k.entry.name;
        let c = k.entry.crossing_number;
        if k.entry.bridge_number == 2 {
            // The table knot must be realised by some generated standard diagram.
            let found = family.iter().flatten().find(|g| {
                g.spec.crossings() == c
                    && alexander_det(&g.diagram, g.stars).is_ok_and(|p| p.coeffs == k.entry.alexander)
            });
            out.push(match found {
                Some(g) => VerdictRecord::new(
                    SUITE,
                    name.as_str(),
                    Outcome::Pass,
                    format!("standard form 2b{} realises p = c = {c}", g.spec),
                )
                .with("c", c),
                None => VerdictRecord::new(SUITE, name.as_str(), Outcome::Fail, "no standard two-bridge form found"),
            });
            continue;
        }
        let rec = match &k.lattices {
            Ok(ls) => {
                let min = ls.iter().map(|l| l.height).min().unwrap_or(0);
                VerdictRecord::pass_if(
                    SUITE,
                    name.as_str(),
                    min > c,
                    format!("bridge number {}: min height {min} vs c = {c}", k.entry.bridge_number),
                )
                .with("c", c)
                .with("min_height", min)
            }
            Err(e) => VerdictRecord::new(SUITE, name.as_str(), Outcome::Fail, e.clone()),
        };
        out.push(rec);
    }
    out
}

fn example_nonprime(table: &[KnotTableEntry]) -> VerdictRecord {
    const SUITE: &str = "example-nonprime";
    let target = "3_1#3_1";
    let result = granny(table).and_then(|d| {
        let ls = placement_lattices(&d.universe).map_err(|e| e.to_string())?;
        let best = ls
            .iter()
            .min_by_key(|l| (l.height, l.stars))
            .ok_or("no placements")?
            .clone();
        Ok((d.universe.vertex_count(), best))
    });
    match result {
        Ok((c, l)) => VerdictRecord::pass_if(
            SUITE,
            target,
            l.height == 5 && c == 6,
            format!("height {} < {c} crossings at stars {}", l.height, l.stars),
        )
        .with("c", c)
        .with("height", l.height)
        .with("states", l.states.len())
        .with("arrows", l.arrows.len()),
        Err(e) => VerdictRecord::new(SUITE, target, Outcome::Fail, e),
    }
}
