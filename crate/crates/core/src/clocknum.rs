//! Heights over all star placements and the audits behind the crossing-number
//! bounds.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{DiagramError, SplitWitness, StarPlacement, Universe, VertexId};
use crate::lattice::{build_lattice, Lattice, LatticeError};
use crate::states::ClockMove;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClockError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("universe is not proper: edges {} and {} split it", .0.edges.0, .0.edges.1)]
    NotProper(SplitWitness),
    #[error("universe is proper, so it has no splittable parts")]
    Proper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotMeta {
    pub name: String,
    pub crossing_number: usize,
    pub bridge_number: usize,
    pub prime: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacementHeight {
    pub stars: StarPlacement,
    pub states: usize,
    pub arrows: usize,
    pub height: usize,
    pub directed_height: usize,
    /// Distinct vertices on each starred face.
    pub r: (usize, usize),
}

/// What a set of diagrams pins down about p(K).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClockBounds {
    /// c(K) for prime knots, otherwise 1.
    pub lower: usize,
    /// Smallest observed height, if any placement exists.
    pub upper: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClockReport {
    pub crossing_count: usize,
    pub proper: bool,
    pub placements: Vec<PlacementHeight>,
    pub min_over_stars: Option<usize>,
    pub clock_number: ClockBounds,
    pub knot: Option<KnotMeta>,
}

impl ClockReport {
    pub fn min_placement(&self) -> Option<&PlacementHeight> {
        self.placements.iter().min_by_key(|p| (p.height, p.stars))
    }

    pub fn heights_agree(&self) -> bool {
        self.placements.iter().all(|p| p.height == p.directed_height)
    }
}

/// Lattices for every adjacent face pair, in placement order.
pub fn placement_lattices(u: &Universe) -> Result<Vec<Lattice>, LatticeError> {
    u.adjacent_pairs()
        .into_par_iter()
        .map(|stars| build_lattice(u, stars))
        .collect()
}

pub fn report_from_lattices(u: &Universe, lattices: &[Lattice], knot: Option<KnotMeta>) -> ClockReport {
    let placements: Vec<PlacementHeight> = lattices
        .iter()
        .map(|l| PlacementHeight {
            stars: l.stars,
            states: l.states.len(),
            arrows: l.arrows.len(),
            height: l.height,
            directed_height: l.directed_height,
            r: star_sizes(u, l.stars),
        })
        .collect();
    let min_over_stars = placements.iter().map(|p| p.height).min();
    let lower = match &knot {
        Some(k) if k.prime => k.crossing_number,
        _ => 1,
    };
    ClockReport {
        crossing_count: u.vertex_count(),
        proper: u.is_proper(),
        placements,
        min_over_stars,
        clock_number: ClockBounds {
            lower,
            upper: min_over_stars,
        },
        knot,
    }
}

pub fn clock_number_of_diagram(u: &Universe, knot: Option<KnotMeta>) -> Result<ClockReport, ClockError> {
    let lattices = placement_lattices(u)?;
    Ok(report_from_lattices(u, &lattices, knot))
}

/// Height of a single placement.
pub fn clock_height(u: &Universe, stars: StarPlacement) -> Result<PlacementHeight, ClockError> {
    let l = build_lattice(u, stars)?;
    Ok(report_from_lattices(u, std::slice::from_ref(&l), None).placements.remove(0))
}

fn star_sizes(u: &Universe, stars: StarPlacement) -> (usize, usize) {
    let r = |f| u.face_vertices(f).map_or(0, |s| s.len());
    (r(stars.star_a), r(stars.star_b))
}

fn require_proper(u: &Universe) -> Result<(), ClockError> {
    match u.properness() {
        crate::diagram::Properness::Proper => Ok(()),
        crate::diagram::Properness::NonProper(w) => Err(ClockError::NotProper(w)),
    }
}

/// Transposition counts along the minimal path, by vertex class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCountAudit {
    pub stars: StarPlacement,
    pub height: usize,
    pub input: VertexId,
    pub output: VertexId,
    pub counts: Vec<usize>,
    pub boundary: BTreeSet<VertexId>,
    pub interior: BTreeSet<VertexId>,
    /// Least count demanded of each vertex: 1 at input/output, 2 elsewhere on
    /// the boundary, 4 inside.
    pub required: Vec<usize>,
    /// `1 + sum(required) / 2`.
    pub height_bound: usize,
}

impl PathCountAudit {
    pub fn counts_hold(&self) -> bool {
        self.counts.iter().zip(&self.required).all(|(c, r)| c >= r)
    }

    pub fn sum_holds(&self) -> bool {
        self.counts.iter().sum::<usize>() == 2 * (self.height - 1)
    }

    pub fn bound_holds(&self) -> bool {
        self.height >= self.height_bound
    }

    pub fn holds(&self) -> bool {
        self.counts_hold() && self.sum_holds() && self.bound_holds()
    }

    /// Every count equals its requirement.
    pub fn exact(&self) -> bool {
        self.counts == self.required
    }
}

pub fn audit_path_counts(u: &Universe, lattice: &Lattice) -> Result<PathCountAudit, ClockError> {
    require_proper(u)?;
    let b = u.classify_boundary(lattice.stars)?;
    let path = lattice.minimal_path();
    let required: Vec<usize> = (0..u.vertex_count())
        .map(|v| {
            if v == b.input_point || v == b.output_point {
                1
            } else if b.boundary_points.contains(&v) {
                2
            } else {
                4
            }
        })
        .collect();
    let height_bound = 1 + required.iter().sum::<usize>() / 2;
    Ok(PathCountAudit {
        stars: lattice.stars,
        height: lattice.height,
        input: b.input_point,
        output: b.output_point,
        counts: path.counts,
        boundary: b.boundary_points,
        interior: b.interior_points,
        required,
        height_bound,
    })
}

/// Moves anywhere in the lattice whose two markers lie in different
/// splittable parts; empty when the parts never interact.
pub fn cross_part_moves(u: &Universe, lattice: &Lattice) -> Result<Vec<(usize, ClockMove)>, ClockError> {
    if u.is_proper() {
        return Err(ClockError::Proper);
    }
    let parts = u.splittable_parts();
    let mut part_of = vec![usize::MAX; u.vertex_count()];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            part_of[v] = i;
        }
    }
    Ok(lattice.moves_where(|a, b| part_of[a] != part_of[b]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarBoundAudit {
    pub stars: StarPlacement,
    pub shared_vertices: usize,
    pub r: (usize, usize),
    pub height: usize,
    pub crossing_number: usize,
}

impl StarBoundAudit {
    pub fn shares_two(&self) -> bool {
        self.shared_vertices == 2
    }

    /// `height + r_i + r_j >= 2c + 2`.
    pub fn inequality_holds(&self) -> bool {
        self.height + self.r.0 + self.r.1 >= 2 * self.crossing_number + 2
    }

    /// `r_i + r_j - 2 <= c(diagram)`; checked against the diagram's own crossings.
    pub fn star_sizes_bounded(&self, diagram_crossings: usize) -> bool {
        self.r.0 + self.r.1 <= diagram_crossings + 2
    }
}

pub fn audit_star_bound(
    u: &Universe,
    stars: StarPlacement,
    height: usize,
    crossing_number: usize,
) -> Result<StarBoundAudit, ClockError> {
    require_proper(u)?;
    let shared = u.shared_vertices(stars.star_a, stars.star_b)?;
    Ok(StarBoundAudit {
        stars,
        shared_vertices: shared.len(),
        r: star_sizes(u, stars),
        height,
        crossing_number,
    })
}

/// An adjacent pair with `r_i + r_j = c + 2`, if any.
pub fn two_bridge_condition(u: &Universe) -> Result<Option<StarPlacement>, ClockError> {
    require_proper(u)?;
    let c = u.vertex_count();
    Ok(u.adjacent_pairs().into_iter().find(|&s| {
        let (a, b) = star_sizes(u, s);
        a + b == c + 2
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;
    use crate::generators::connected_sum;

    const TREFOIL: &str = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)";

    #[test]
    fn trefoil_report() {
        let u = parse_diagram(TREFOIL).unwrap().universe;
        let meta = KnotMeta {
            name: "3_1".into(),
            crossing_number: 3,
            bridge_number: 2,
            prime: true,
        };
        let r = clock_number_of_diagram(&u, Some(meta)).unwrap();
        assert_eq!(r.placements.len(), u.adjacent_pairs().len());
        assert_eq!(r.min_over_stars, Some(3));
        assert_eq!(r.clock_number, ClockBounds { lower: 3, upper: Some(3) });
        assert!(r.heights_agree());
    }

    #[test]
    fn trefoil_path_count_profile() {
        let u = parse_diagram(TREFOIL).unwrap().universe;
        for l in placement_lattices(&u).unwrap() {
            let a = audit_path_counts(&u, &l).unwrap();
            assert!(a.holds());
            assert_ne!(a.input, a.output);
            let mut c = a.counts.clone();
            c.sort_unstable();
            assert_eq!(c, vec![1, 1, 2]);
        }
    }

    #[test]
    fn star_bound_and_condition() {
        let u = parse_diagram(TREFOIL).unwrap().universe;
        for l in placement_lattices(&u).unwrap() {
            let a = audit_star_bound(&u, l.stars, l.height, 3).unwrap();
            assert!(a.shares_two() && a.inequality_holds() && a.star_sizes_bounded(3));
        }
        let w = two_bridge_condition(&u).unwrap().unwrap();
        let (a, b) = star_sizes(&u, w);
        assert_eq!(a + b, 5);
    }

    #[test]
    fn nonproper_gates() {
        let t = parse_diagram(TREFOIL).unwrap();
        let g = connected_sum(&t, &t).unwrap().diagram.universe;
        assert!(matches!(two_bridge_condition(&g), Err(ClockError::NotProper(_))));
        let l = build_lattice(&g, g.adjacent_pairs()[0]).unwrap();
        assert!(matches!(audit_path_counts(&g, &l), Err(ClockError::NotProper(_))));
        assert!(cross_part_moves(&g, &l).unwrap().is_empty());
        let tl = build_lattice(&t.universe, t.universe.adjacent_pairs()[0]).unwrap();
        assert_eq!(cross_part_moves(&t.universe, &tl), Err(ClockError::Proper));
    }
}
