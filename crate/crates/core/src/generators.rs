//! Diagram families: standard two-bridge 4-plats, connected sums, and the
//! embedded table of prime knots up to eight crossings.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alexpoly::alexander_det;
use crate::diagram::{parse_diagram, Dart, Diagram, DiagramError, EdgeId, StarPlacement, Universe, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("two-bridge spec needs at least one box")]
    EmptySpec,
    #[error("box {index} has {twists} half-twists; need at least 1")]
    ZeroBox { index: usize, twists: usize },
    #[error("bad two-bridge spec {0:?}: expected comma-separated positive integers")]
    BadSpec(String),
    #[error("spec {0} closes to a link, not a knot")]
    NotAKnot(TwoBridgeSpec),
    #[error("spec {0} has no {1} form")]
    NoParityForm(TwoBridgeSpec, ClosureForm),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Half-twist counts of the boxes of a 4-plat, top to bottom.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TwoBridgeSpec(pub Vec<usize>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureForm {
    Odd,
    Even,
}

impl fmt::Display for ClosureForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClosureForm::Odd => "odd",
            ClosureForm::Even => "even",
        })
    }
}

impl TwoBridgeSpec {
    pub fn validate(&self) -> Result<(), GenError> {
        if self.0.is_empty() {
            return Err(GenError::EmptySpec);
        }
        if let Some(index) = self.0.iter().position(|&a| a == 0) {
            return Err(GenError::ZeroBox { index, twists: 0 });
        }
        Ok(())
    }

    pub fn crossings(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn form(&self) -> ClosureForm {
        if self.0.len() % 2 == 1 {
            ClosureForm::Odd
        } else {
            ClosureForm::Even
        }
    }

    /// `p/q` of the continued fraction `a_1 + 1/(a_2 + ...)`.
    pub fn fraction(&self) -> (u64, u64) {
        let mut it = self.0.iter().rev();
        let Some(&last) = it.next() else {
            return (1, 0);
        };
        let (mut num, mut den) = (last as u64, 1u64);
        for &a in it {
            (num, den) = (a as u64 * num + den, num);
        }
        (num, den)
    }

    /// The same knot with the other box-count parity, via `[.., a] = [.., a-1, 1]`.
    pub fn with_form(&self, form: ClosureForm) -> Result<TwoBridgeSpec, GenError> {
        self.validate()?;
        if self.form() == form {
            return Ok(self.clone());
        }
        let mut boxes = self.0.clone();
        let last = *boxes.last().unwrap_or(&0);
        if last > 1 {
            *boxes.last_mut().unwrap_or(&mut 0) -= 1;
            boxes.push(1);
        } else if boxes.len() >= 2 {
            boxes.pop();
            *boxes.last_mut().unwrap_or(&mut 0) += 1;
        } else {
            return Err(GenError::NoParityForm(self.clone(), form));
        }
        Ok(TwoBridgeSpec(boxes))
    }
}

impl fmt::Display for TwoBridgeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for TwoBridgeSpec {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let boxes = t
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| GenError::BadSpec(s.to_string()))?;
        let spec = TwoBridgeSpec(boxes);
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoBridgeDiagram {
    pub spec: TwoBridgeSpec,
    pub diagram: Diagram,
    /// The faces on either side of the strand through the right-hand top cap.
    pub stars: StarPlacement,
    pub knotted: bool,
}

// Crossing ports in counterclockwise order.
const NE: usize = 0;
const NW: usize = 1;
const SW: usize = 2;
const SE: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum End {
    Port(usize, usize),
    /// Side 0 or 1 of a cap or cup with no crossing on it.
    Joint(usize, usize),
}

/// The standard 4-plat: top caps on strands (0,1),(2,3); box `k` twists
/// strands (1,2) for even `k` and (0,1) for odd `k`; bottom cups on
/// (0,1),(2,3) after an odd number of boxes and on (1,2),(0,3) after an even one.
pub fn gen_two_bridge(spec: &TwoBridgeSpec) -> Result<TwoBridgeDiagram, GenError> {
    spec.validate()?;
    let mut links: HashMap<End, End> = HashMap::new();
    let mut link = |a: End, b: End| {
        links.insert(a, b);
        links.insert(b, a);
    };
    let right_cap = 1;
    let mut strand = [End::Joint(0, 0), End::Joint(0, 1), End::Joint(right_cap, 0), End::Joint(right_cap, 1)];
    let mut n = 0;
    for (k, &twists) in spec.0.iter().enumerate() {
        let left = if k % 2 == 0 { 1 } else { 0 };
        for _ in 0..twists {
            link(strand[left], End::Port(n, NW));
            link(strand[left + 1], End::Port(n, NE));
            strand[left] = End::Port(n, SW);
            strand[left + 1] = End::Port(n, SE);
            n += 1;
        }
    }
    match spec.form() {
        ClosureForm::Odd => {
            link(strand[0], strand[1]);
            link(strand[2], strand[3]);
        }
        ClosureForm::Even => {
            link(strand[1], strand[2]);
            link(strand[0], strand[3]);
        }
    }

    // Walk the strand from crossing 0, labelling edges 1, 2, ...
    let mut labels = vec![[0usize; 4]; n];
    let mut star_edge = None;
    let (mut x, mut p) = (0, NW);
    let mut label = 0;
    loop {
        label += 1;
        let out = End::Port(x, (p + 2) % 4);
        labels[x][(p + 2) % 4] = label;
        let mut at = links[&out];
        while let End::Joint(j, side) = at {
            if j == right_cap {
                star_edge = Some(label);
            }
            at = links[&End::Joint(j, 1 - side)];
        }
        let End::Port(y, q) = at else { unreachable!() };
        labels[y][q] = label;
        (x, p) = (y, q);
        if (x, p) == (0, NW) {
            break;
        }
    }
    if label != 2 * n {
        return Err(GenError::NotAKnot(spec.clone()));
    }
    let universe = Universe::from_crossings(&labels)?;
    let star_edge = EdgeId(star_edge.unwrap_or(1));
    let (a, b) = universe.edge_faces(star_edge);
    let stars = StarPlacement::new(&universe, a, b)?;
    let (p, _) = spec.fraction();
    Ok(TwoBridgeDiagram {
        spec: spec.clone(),
        diagram: Diagram::alternating(universe),
        stars,
        knotted: p > 1,
    })
}

/// Every spec with `3 <= sum <= max_crossings` that closes to a nontrivial knot.
pub fn two_bridge_specs(max_crossings: usize) -> Vec<TwoBridgeSpec> {
    fn compositions(n: usize, prefix: &mut Vec<usize>, out: &mut Vec<TwoBridgeSpec>) {
        if n == 0 {
            out.push(TwoBridgeSpec(prefix.clone()));
            return;
        }
        for a in 1..=n {
            prefix.push(a);
            compositions(n - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for total in 3..=max_crossings {
        compositions(total, &mut Vec::new(), &mut out);
    }
    out.retain(|s| {
        let (p, _) = s.fraction();
        p > 1 && p % 2 == 1
    });
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectedSum {
    pub diagram: Diagram,
    /// Vertex sets of the two summands.
    pub parts: (Vec<VertexId>, Vec<VertexId>),
    /// The two edges joining the summands.
    pub splice_edges: (EdgeId, EdgeId),
}

/// Cuts the last edge of each summand and rejoins them crosswise. The sum's
/// vertices are those of `d1` followed by those of `d2`.
pub fn connected_sum(d1: &Diagram, d2: &Diagram) -> Result<ConnectedSum, GenError> {
    let (v1, v2) = (d1.crossing_count(), d2.crossing_count());
    let n1 = 2 * v1;
    let n2 = 2 * v2;
    let total = n1 + n2;
    let (diagram, splice_edges) = if v2 == 0 {
        (d1.clone(), (EdgeId(n1.max(1)), EdgeId(n1.max(1))))
    } else if v1 == 0 {
        (d2.clone(), (EdgeId(n2), EdgeId(n2)))
    } else {
        let relabel = |u: &Universe, v: usize, slot: usize, last: usize, f: &dyn Fn(usize, bool) -> usize| {
            let d = Dart::new(v, slot);
            let l = u.dart_edge(d).0;
            if l == last {
                f(l, u.is_head(d))
            } else {
                f(l, false)
            }
        };
        let mut crossings = Vec::with_capacity(v1 + v2);
        let u1 = &d1.universe;
        for v in 0..v1 {
            let mut c = [0; 4];
            for (slot, x) in c.iter_mut().enumerate() {
                *x = relabel(u1, v, slot, n1, &|l, head| if l == n1 && head { total } else { l });
            }
            crossings.push(c);
        }
        let u2 = &d2.universe;
        for v in 0..v2 {
            let mut c = [0; 4];
            for (slot, x) in c.iter_mut().enumerate() {
                *x = relabel(u2, v, slot, n2, &|l, head| {
                    if l == n2 {
                        if head {
                            n1
                        } else {
                            total
                        }
                    } else {
                        l + n1
                    }
                });
            }
            crossings.push(c);
        }
        let universe = Universe::from_crossings(&crossings)?;
        let over_strand = match (&d1.over_strand, &d2.over_strand) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        (
            Diagram {
                universe,
                over_strand,
            },
            (EdgeId(n1), EdgeId(total)),
        )
    };
    let parts = ((0..v1).collect(), (v1..v1 + v2).collect());
    Ok(ConnectedSum {
        diagram,
        parts,
        splice_edges,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table line {line}: {reason}")]
    Line { line: usize, reason: String },
    #[error("table entry {name}: {reason}")]
    Entry { name: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KnotTableEntry {
    pub name: String,
    pub pd_code: String,
    #[serde(skip)]
    pub diagram: Diagram,
    pub crossing_number: usize,
    pub bridge_number: usize,
    /// Lowest degree first.
    pub alexander: Vec<i64>,
}

const EMBEDDED_TABLE: &str = include_str!("../../../data/knots_le8.pdtab");

/// The embedded table of prime knots with at most eight crossings.
pub fn load_table() -> Result<Vec<KnotTableEntry>, TableError> {
    parse_table(EMBEDDED_TABLE)
}

/// Parses and validates `name|pd|c|bridge|alex` lines.
pub fn parse_table(text: &str) -> Result<Vec<KnotTableEntry>, TableError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |reason: String| TableError::Line { line: i + 1, reason };
        let fields: Vec<&str> = line.split('|').map(str::trim).collect();
        let [name, pd, c, bridge, alex] = fields[..] else {
            return Err(bad(format!("expected 5 fields, found {}", fields.len())));
        };
        let num = |s: &str, what: &str| s.parse::<usize>().map_err(|_| bad(format!("bad {what} {s:?}")));
        let crossing_number = num(c, "crossing number")?;
        let bridge_number = num(bridge, "bridge number")?;
        let alexander = alex
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad(format!("bad Alexander coefficients {alex:?}")))?;
        let entry_err = |reason: String| TableError::Entry {
            name: name.to_string(),
            reason,
        };
        let diagram = parse_diagram(pd).map_err(|e| entry_err(e.to_string()))?;
        let u = &diagram.universe;
        if u.vertex_count() != crossing_number {
            return Err(entry_err(format!(
                "{} crossings in the code, crossing number {crossing_number}",
                u.vertex_count()
            )));
        }
        if !u.is_proper() {
            return Err(entry_err("diagram is not proper".into()));
        }
        let stars = *u
            .adjacent_pairs()
            .first()
            .ok_or_else(|| entry_err("no adjacent faces".into()))?;
        let det = alexander_det(&diagram, stars).map_err(|e| entry_err(e.to_string()))?;
        if det.coeffs != alexander {
            return Err(entry_err(format!("Alexander determinant {det} disagrees with the stored coefficients")));
        }
        out.push(KnotTableEntry {
            name: name.to_string(),
            pd_code: pd.to_string(),
            diagram,
            crossing_number,
            bridge_number,
            alexander,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_and_parity() {
        let s: TwoBridgeSpec = "2,2".parse().unwrap();
        assert_eq!(s.fraction(), (5, 2));
        assert_eq!(TwoBridgeSpec(vec![3]).fraction(), (3, 1));
        let odd = s.with_form(ClosureForm::Odd).unwrap();
        assert_eq!(odd, TwoBridgeSpec(vec![2, 1, 1]));
        assert_eq!(odd.fraction().0, 5);
        assert_eq!(odd.with_form(ClosureForm::Even).unwrap(), s);
        assert!(TwoBridgeSpec(vec![1]).with_form(ClosureForm::Even).is_err());
        assert!("2,0".parse::<TwoBridgeSpec>().is_err());
        assert!("".parse::<TwoBridgeSpec>().is_err());
    }

    #[test]
    fn small_two_bridge() {
        let t = gen_two_bridge(&TwoBridgeSpec(vec![3])).unwrap();
        assert_eq!(t.diagram.crossing_count(), 3);
        assert!(t.knotted);
        let f = gen_two_bridge(&TwoBridgeSpec(vec![2, 2])).unwrap();
        assert_eq!(f.diagram.crossing_count(), 4);
        let curl = gen_two_bridge(&TwoBridgeSpec(vec![1])).unwrap();
        assert_eq!(curl.diagram.crossing_count(), 1);
        assert!(!curl.knotted);
        assert!(matches!(
            gen_two_bridge(&TwoBridgeSpec(vec![2])),
            Err(GenError::NotAKnot(..))
        ));
    }

    #[test]
    fn granny_sum() {
        let t = parse_diagram("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)").unwrap();
        let g = connected_sum(&t, &t).unwrap();
        let u = &g.diagram.universe;
        assert_eq!(u.vertex_count(), 6);
        assert!(!u.is_proper());
        assert_eq!(g.parts, (vec![0, 1, 2], vec![3, 4, 5]));
        let unknot = parse_diagram("").unwrap();
        assert_eq!(connected_sum(&t, &unknot).unwrap().diagram, t);
        assert_eq!(connected_sum(&unknot, &t).unwrap().diagram, t);
    }

    #[test]
    fn table_loads() {
        let table = load_table().unwrap();
        assert_eq!(table.len(), 35);
        let trefoil = &table[0];
        assert_eq!((trefoil.name.as_str(), trefoil.crossing_number, trefoil.bridge_number), ("3_1", 3, 2));
    }

    #[test]
    fn table_errors_name_entry() {
        let err = parse_table("3_1|X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)|4|2|1,-1,1").unwrap_err();
        assert!(matches!(err, TableError::Entry { ref name, .. } if name == "3_1"));
        let err = parse_table("3_1|X(1,5,2,4)|3").unwrap_err();
        assert!(matches!(err, TableError::Line { line: 1, .. }));
    }
}
