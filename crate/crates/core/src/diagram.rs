//! Knot universes as oriented 4-valent planar combinatorial maps.
//!
//! A crossing is a vertex with four darts listed counterclockwise; the dart
//! at slot `k` continues the strand through the dart at slot `k + 2`. The
//! corner at slot `k` sits between darts `k` and `k + 1`. Faces are the
//! orbits of `twin ∘ next_ccw`, and corner `(v, k)` belongs to the face of
//! dart `(v, k)`, so corners and darts are in one-to-one correspondence.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FaceId(pub usize);

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.0)
    }
}

impl FromStr for FaceId {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let digits = s.strip_prefix(['F', 'f']).unwrap_or(s);
        digits
            .parse()
            .map(FaceId)
            .map_err(|_| DiagramError::BadFaceName(s.to_string()))
    }
}

/// An edge, named by its label `1..=2n` along the knot orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart(pub usize);

impl Dart {
    pub fn new(vertex: VertexId, slot: usize) -> Self {
        Dart(4 * vertex + slot % 4)
    }

    pub fn vertex(self) -> VertexId {
        self.0 / 4
    }

    pub fn slot(self) -> usize {
        self.0 % 4
    }

    pub fn next_ccw(self) -> Dart {
        Dart::new(self.vertex(), self.slot() + 1)
    }

    pub fn prev_ccw(self) -> Dart {
        Dart::new(self.vertex(), self.slot() + 3)
    }

    /// Strand continuation through the crossing.
    pub fn opposite(self) -> Dart {
        Dart::new(self.vertex(), self.slot() + 2)
    }
}

/// The corner between rotation darts `slot` and `slot + 1` at `vertex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Corner {
    pub vertex: VertexId,
    pub slot: u8,
}

impl Corner {
    pub fn dart(self) -> Dart {
        Dart::new(self.vertex, self.slot as usize)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("line {line}: malformed token `{token}`: {reason}")]
    Malformed {
        line: usize,
        token: String,
        reason: String,
    },
    #[error("edge label {label} out of range 1..={max}")]
    LabelOutOfRange { label: usize, max: usize },
    #[error("edge label {label} used {count} time(s)")]
    LabelCount { label: usize, count: usize },
    #[error("traversal not a single knot: edge {label} does not continue into edge {next}")]
    NotSingleKnot { label: usize, next: usize },
    #[error("non-planar rotation system: {faces} faces, expected {expected}")]
    NonPlanar { faces: usize, expected: usize },
    #[error("over-strand marking given for {marked} of {total} crossings")]
    PartialOverInfo { marked: usize, total: usize },
    #[error("crossing {vertex}: over label {label} does not name exactly one strand")]
    BadOverLabel { vertex: VertexId, label: usize },
    #[error("unknown face {0}")]
    UnknownFace(FaceId),
    #[error("bad face name `{0}`")]
    BadFaceName(String),
    #[error("stars must be two distinct faces, got {0} twice")]
    SameStar(FaceId),
    #[error("starred faces {0} and {1} are not adjacent")]
    NotAdjacent(FaceId, FaceId),
    #[error("universe is not proper: edges {0} and {1} cut off a splittable part")]
    NotProper(EdgeId, EdgeId),
}

/// An oriented 4-valent planar map: the shadow of a knot diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    crossings: Vec<[usize; 4]>,
    dart_edge: Vec<EdgeId>,
    dart_is_head: Vec<bool>,
    twin: Vec<Dart>,
    /// Indexed by `label - 1`: (tail dart, head dart).
    edge_darts: Vec<(Dart, Dart)>,
    dart_face: Vec<FaceId>,
    faces: Vec<Vec<Dart>>,
}

impl Universe {
    /// Builds a universe from crossings given as counterclockwise edge labels.
    pub fn from_crossings(crossings: &[[usize; 4]]) -> Result<Self, DiagramError> {
        let n = crossings.len();
        let max = 2 * n;
        if n == 0 {
            // A crossingless circle: two faces, no darts.
            return Ok(Universe {
                crossings: Vec::new(),
                dart_edge: Vec::new(),
                dart_is_head: Vec::new(),
                twin: Vec::new(),
                edge_darts: Vec::new(),
                dart_face: Vec::new(),
                faces: vec![Vec::new(), Vec::new()],
            });
        }

        let mut occurrences = vec![Vec::new(); max + 1];
        for (v, c) in crossings.iter().enumerate() {
            for (slot, &label) in c.iter().enumerate() {
                if label == 0 || label > max {
                    return Err(DiagramError::LabelOutOfRange { label, max });
                }
                occurrences[label].push(Dart::new(v, slot));
            }
        }
        for (label, occ) in occurrences.iter().enumerate().skip(1) {
            if occ.len() != 2 {
                return Err(DiagramError::LabelCount {
                    label,
                    count: occ.len(),
                });
            }
        }

        let succ = |l: usize| l % max + 1;
        let label_at = |d: Dart| crossings[d.vertex()][d.slot()];
        // Head of label k: the occurrence whose opposite dart carries k + 1.
        let mut candidates: Vec<Vec<usize>> = vec![Vec::new(); max + 1];
        for label in 1..=max {
            for (i, d) in occurrences[label].iter().enumerate() {
                if label_at(d.opposite()) == succ(label) {
                    candidates[label].push(i);
                }
            }
            if candidates[label].is_empty() {
                return Err(DiagramError::NotSingleKnot {
                    label,
                    next: succ(label),
                });
            }
        }

        // Only one-crossing codes leave a choice; take the first combination
        // in which every head continues into the tail of the next label.
        let combos: usize = candidates.iter().skip(1).map(Vec::len).product();
        let mut heads = vec![0usize; max + 1];
        let mut failing = 1;
        let mut found = false;
        for mut code in 0..combos {
            for label in 1..=max {
                let opts = &candidates[label];
                heads[label] = opts[code % opts.len()];
                code /= opts.len();
            }
            let bad = (1..=max).find(|&label| {
                let head = occurrences[label][heads[label]];
                let next = succ(label);
                head.opposite() != occurrences[next][1 - heads[next]]
            });
            match bad {
                None => {
                    found = true;
                    break;
                }
                Some(label) => failing = label,
            }
        }
        if !found {
            return Err(DiagramError::NotSingleKnot {
                label: failing,
                next: succ(failing),
            });
        }
        let mut dart_is_head = vec![false; 4 * n];
        for label in 1..=max {
            dart_is_head[occurrences[label][heads[label]].0] = true;
        }

        let mut dart_edge = vec![EdgeId(0); 4 * n];
        let mut twin = vec![Dart(0); 4 * n];
        let mut edge_darts = vec![(Dart(0), Dart(0)); max];
        for (label, occ) in occurrences.iter().enumerate().skip(1) {
            let (x, y) = (occ[0], occ[1]);
            dart_edge[x.0] = EdgeId(label);
            dart_edge[y.0] = EdgeId(label);
            twin[x.0] = y;
            twin[y.0] = x;
            edge_darts[label - 1] = if dart_is_head[y.0] { (x, y) } else { (y, x) };
        }

        let mut dart_face = vec![FaceId(usize::MAX); 4 * n];
        let mut faces = Vec::new();
        for start in 0..4 * n {
            if dart_face[start].0 != usize::MAX {
                continue;
            }
            let id = FaceId(faces.len());
            let mut walk = Vec::new();
            let mut d = Dart(start);
            while dart_face[d.0].0 == usize::MAX {
                dart_face[d.0] = id;
                walk.push(d);
                d = twin[d.next_ccw().0];
            }
            faces.push(walk);
        }
        if faces.len() != n + 2 {
            return Err(DiagramError::NonPlanar {
                faces: faces.len(),
                expected: n + 2,
            });
        }

        let universe = Universe {
            crossings: crossings.to_vec(),
            dart_edge,
            dart_is_head,
            twin,
            edge_darts,
            dart_face,
            faces,
        };
        debug_assert_eq!(universe.traversal().len(), max);
        Ok(universe)
    }

    pub fn vertex_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_darts.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Counterclockwise edge labels at each crossing.
    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        (1..=self.edge_darts.len()).map(EdgeId)
    }

    pub fn faces(&self) -> impl Iterator<Item = FaceId> {
        (0..self.faces.len()).map(FaceId)
    }

    /// Boundary walk of a face; each dart doubles as the corner it names.
    pub fn face_darts(&self, face: FaceId) -> Result<&[Dart], DiagramError> {
        self.faces
            .get(face.0)
            .map(Vec::as_slice)
            .ok_or(DiagramError::UnknownFace(face))
    }

    pub fn check_face(&self, face: FaceId) -> Result<(), DiagramError> {
        self.face_darts(face).map(|_| ())
    }

    pub fn dart_face(&self, d: Dart) -> FaceId {
        self.dart_face[d.0]
    }

    pub fn corner_face(&self, c: Corner) -> FaceId {
        self.dart_face[c.dart().0]
    }

    pub fn dart_edge(&self, d: Dart) -> EdgeId {
        self.dart_edge[d.0]
    }

    pub fn twin(&self, d: Dart) -> Dart {
        self.twin[d.0]
    }

    pub fn is_head(&self, d: Dart) -> bool {
        self.dart_is_head[d.0]
    }

    /// (tail dart, head dart) of an edge.
    pub fn edge_darts(&self, e: EdgeId) -> (Dart, Dart) {
        self.edge_darts[e.0 - 1]
    }

    pub fn edge_vertices(&self, e: EdgeId) -> (VertexId, VertexId) {
        let (t, h) = self.edge_darts(e);
        (t.vertex(), h.vertex())
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (t, h) = self.edge_vertices(e);
        t == h
    }

    /// The two faces bordering an edge, as (face of tail dart, face of head dart).
    pub fn edge_faces(&self, e: EdgeId) -> (FaceId, FaceId) {
        let (t, h) = self.edge_darts(e);
        (self.dart_face(t), self.dart_face(h))
    }

    /// Darts in strand order: the tail dart of each edge, labels ascending.
    pub fn traversal(&self) -> Vec<Dart> {
        let mut walk = Vec::with_capacity(self.edge_count());
        if self.edge_darts.is_empty() {
            return walk;
        }
        let start = self.edge_darts[0].0;
        let mut tail = start;
        loop {
            walk.push(tail);
            let head = self.twin(tail);
            tail = head.opposite();
            if tail == start || walk.len() > self.edge_count() {
                break;
            }
        }
        walk
    }

    pub fn face_vertices(&self, face: FaceId) -> Result<BTreeSet<VertexId>, DiagramError> {
        Ok(self.face_darts(face)?.iter().map(|d| d.vertex()).collect())
    }

    /// Distinct vertex count and corner count of a face.
    pub fn face_stats(&self, face: FaceId) -> Result<FaceStats, DiagramError> {
        let darts = self.face_darts(face)?;
        Ok(FaceStats {
            distinct_vertices: self.face_vertices(face)?.len(),
            corners: darts.len(),
        })
    }

    pub fn shared_vertices(
        &self,
        f1: FaceId,
        f2: FaceId,
    ) -> Result<BTreeSet<VertexId>, DiagramError> {
        let a = self.face_vertices(f1)?;
        let b = self.face_vertices(f2)?;
        Ok(a.intersection(&b).copied().collect())
    }

    /// Edges with `f1` on one side and `f2` on the other, ascending.
    pub fn shared_edges(&self, f1: FaceId, f2: FaceId) -> Result<Vec<EdgeId>, DiagramError> {
        self.check_face(f1)?;
        self.check_face(f2)?;
        Ok(self
            .edges()
            .filter(|&e| {
                let (a, b) = self.edge_faces(e);
                (a, b) == (f1, f2) || (a, b) == (f2, f1)
            })
            .collect())
    }

    pub fn adjacent(&self, f1: FaceId, f2: FaceId) -> Result<bool, DiagramError> {
        Ok(f1 != f2 && !self.shared_edges(f1, f2)?.is_empty())
    }

    /// Every unordered pair of adjacent faces, ascending.
    pub fn adjacent_pairs(&self) -> Vec<StarPlacement> {
        let pairs: BTreeSet<(FaceId, FaceId)> = self
            .edges()
            .filter_map(|e| {
                let (a, b) = self.edge_faces(e);
                (a != b).then(|| (a.min(b), a.max(b)))
            })
            .collect();
        pairs
            .into_iter()
            .map(|(star_a, star_b)| StarPlacement { star_a, star_b })
            .collect()
    }

    /// Non-loop edges grouped by the unordered pair of faces they separate.
    fn edges_by_face_pair(&self) -> BTreeMap<(FaceId, FaceId), Vec<EdgeId>> {
        let mut map: BTreeMap<_, Vec<EdgeId>> = BTreeMap::new();
        for e in self.edges().filter(|&e| !self.is_loop(e)) {
            let (a, b) = self.edge_faces(e);
            map.entry((a.min(b), a.max(b))).or_default().push(e);
        }
        map
    }

    /// Connected components of the vertex graph with some edges removed.
    fn components_without(&self, removed: &BTreeSet<EdgeId>) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for e in self.edges().filter(|e| !removed.contains(e)) {
            let (u, v) = self.edge_vertices(e);
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Every pair of edges that cuts off a splittable part, ascending.
    pub fn splitting_pairs(&self) -> Vec<SplitWitness> {
        let mut out = Vec::new();
        for edges in self.edges_by_face_pair().values() {
            for (i, &e) in edges.iter().enumerate() {
                for &f in &edges[i + 1..] {
                    let removed = BTreeSet::from([e, f]);
                    let comps = self.components_without(&removed);
                    if comps.len() == 2 && comps.iter().all(|c| !c.is_empty()) {
                        out.push(SplitWitness {
                            edges: (e, f),
                            sides: (comps[0].clone(), comps[1].clone()),
                        });
                    }
                }
            }
        }
        out.sort_by_key(|w| w.edges);
        out
    }

    /// Properness verdict with the lowest splitting edge pair as witness.
    pub fn properness(&self) -> Properness {
        match self.splitting_pairs().into_iter().next() {
            None => Properness::Proper,
            Some(w) => Properness::NonProper(w),
        }
    }

    pub fn is_proper(&self) -> bool {
        matches!(self.properness(), Properness::Proper)
    }

    /// Vertex sets of the pieces left after cutting every splitting edge pair.
    pub fn splittable_parts(&self) -> Vec<Vec<VertexId>> {
        let removed: BTreeSet<EdgeId> = self
            .splitting_pairs()
            .iter()
            .flat_map(|w| [w.edges.0, w.edges.1])
            .collect();
        if removed.is_empty() {
            return vec![(0..self.vertex_count()).collect()];
        }
        self.components_without(&removed)
    }

    pub fn classify_boundary(
        &self,
        stars: StarPlacement,
    ) -> Result<BoundaryClassification, DiagramError> {
        if let Properness::NonProper(w) = self.properness() {
            return Err(DiagramError::NotProper(w.edges.0, w.edges.1));
        }
        let shared = self.shared_edges(stars.star_a, stars.star_b)?;
        let start = *shared
            .first()
            .ok_or(DiagramError::NotAdjacent(stars.star_a, stars.star_b))?;
        let (tail, head) = self.edge_vertices(start);
        let mut boundary = self.face_vertices(stars.star_a)?;
        boundary.extend(self.face_vertices(stars.star_b)?);
        let interior = (0..self.vertex_count())
            .filter(|v| !boundary.contains(v))
            .collect();
        Ok(BoundaryClassification {
            start_edge: start,
            input_point: head,
            output_point: tail,
            boundary_points: boundary,
            interior_points: interior,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceStats {
    pub distinct_vertices: usize,
    pub corners: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitWitness {
    pub edges: (EdgeId, EdgeId),
    pub sides: (Vec<VertexId>, Vec<VertexId>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Properness {
    Proper,
    NonProper(SplitWitness),
}

/// Two adjacent faces carrying the stars, stored with `star_a < star_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StarPlacement {
    pub star_a: FaceId,
    pub star_b: FaceId,
}

impl StarPlacement {
    pub fn new(universe: &Universe, a: FaceId, b: FaceId) -> Result<Self, DiagramError> {
        universe.check_face(a)?;
        universe.check_face(b)?;
        if a == b {
            return Err(DiagramError::SameStar(a));
        }
        if !universe.adjacent(a, b)? {
            return Err(DiagramError::NotAdjacent(a, b));
        }
        Ok(StarPlacement {
            star_a: a.min(b),
            star_b: a.max(b),
        })
    }

    pub fn contains(&self, f: FaceId) -> bool {
        f == self.star_a || f == self.star_b
    }

    /// Parses `F_i,F_j` (the `F` prefix is optional).
    pub fn parse(universe: &Universe, text: &str) -> Result<Self, DiagramError> {
        let (a, b) = text
            .split_once(',')
            .ok_or_else(|| DiagramError::BadFaceName(text.to_string()))?;
        StarPlacement::new(universe, a.parse()?, b.parse()?)
    }
}

impl fmt::Display for StarPlacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.star_a, self.star_b)
    }
}

/// Input/output/boundary/interior split of the vertices for a star placement.
///
/// The walk starts on the lowest-labelled edge shared by the stars and runs
/// with the orientation, so the input point is that edge's head and the
/// output point its tail. Walking against the orientation swaps the two.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryClassification {
    pub start_edge: EdgeId,
    pub input_point: VertexId,
    pub output_point: VertexId,
    pub boundary_points: BTreeSet<VertexId>,
    pub interior_points: BTreeSet<VertexId>,
}

impl BoundaryClassification {
    /// Input and output points under the reversed walk direction.
    pub fn reversed(&self) -> (VertexId, VertexId) {
        (self.output_point, self.input_point)
    }
}

/// A universe plus optional over-strand data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub universe: Universe,
    /// Per crossing: 0 if the slot-0/slot-2 strand is over, 1 for slots 1/3.
    pub over_strand: Option<Vec<u8>>,
}

impl Diagram {
    pub fn shadow(universe: Universe) -> Self {
        Diagram {
            universe,
            over_strand: None,
        }
    }

    /// Over/under data making the diagram alternating along the traversal.
    pub fn alternating(universe: Universe) -> Self {
        let n = universe.vertex_count();
        let mut over = vec![u8::MAX; n];
        for (i, tail) in universe.traversal().iter().enumerate() {
            let head = universe.twin(*tail);
            if i % 2 == 0 {
                over[head.vertex()] = (head.slot() % 2) as u8;
            }
        }
        debug_assert!(over.iter().all(|&o| o < 2));
        Diagram {
            universe,
            over_strand: Some(over),
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.universe.vertex_count()
    }

    /// Canonical text form, parseable by [`parse_diagram`]. Over markers are
    /// dropped when some crossing's marker label would name both strand pairs
    /// (a curl), since the text could not be read back unambiguously.
    pub fn to_text(&self) -> String {
        let crossings = self.universe.crossings();
        let over = self.over_strand.as_ref().filter(|over| {
            crossings.iter().zip(over.iter()).all(|(c, &o)| {
                let label = c[o as usize];
                !(c[1 - o as usize] == label || c[3 - o as usize] == label)
            })
        });
        crossings
            .iter()
            .enumerate()
            .map(|(v, c)| {
                let mut s = format!("X({},{},{},{})", c[0], c[1], c[2], c[3]);
                if let Some(over) = over {
                    s.push_str(&format!(";over={}", c[over[v] as usize]));
                }
                s
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn parse_crossing(token: &str) -> Result<([usize; 4], Option<usize>), String> {
    let (body, over) = match token.split_once(';') {
        Some((body, rest)) => {
            let label = rest
                .strip_prefix("over=")
                .ok_or_else(|| format!("unknown suffix `{rest}`"))?
                .parse::<usize>()
                .map_err(|e| format!("bad over label: {e}"))?;
            (body, Some(label))
        }
        None => (token, None),
    };
    let inner = body
        .strip_prefix("X(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or("expected X(a,b,c,d)")?;
    let labels: Vec<usize> = inner
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| format!("bad label: {e}"))?;
    let labels: [usize; 4] = labels
        .try_into()
        .map_err(|v: Vec<usize>| format!("expected 4 labels, got {}", v.len()))?;
    Ok((labels, over))
}

/// Parses the diagram-code text format into a validated [`Diagram`].
pub fn parse_diagram(text: &str) -> Result<Diagram, DiagramError> {
    let mut crossings = Vec::new();
    let mut overs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let code = line.split('#').next().unwrap_or("");
        for token in code.split_whitespace() {
            let (labels, over) = parse_crossing(token).map_err(|reason| {
                DiagramError::Malformed {
                    line: i + 1,
                    token: token.to_string(),
                    reason,
                }
            })?;
            crossings.push(labels);
            overs.push(over);
        }
    }
    let universe = Universe::from_crossings(&crossings)?;
    let marked = overs.iter().filter(|o| o.is_some()).count();
    let over_strand = match marked {
        0 => None,
        m if m == overs.len() => {
            let mut pairs = Vec::with_capacity(m);
            for (v, (c, over)) in crossings.iter().zip(&overs).enumerate() {
                let label = over.unwrap_or_default();
                let hits: Vec<u8> = (0..2u8)
                    .filter(|&p| c[p as usize] == label || c[p as usize + 2] == label)
                    .collect();
                match hits.as_slice() {
                    [p] => pairs.push(*p),
                    _ => return Err(DiagramError::BadOverLabel { vertex: v, label }),
                }
            }
            Some(pairs)
        }
        m => {
            return Err(DiagramError::PartialOverInfo {
                marked: m,
                total: overs.len(),
            })
        }
    };
    Ok(Diagram {
        universe,
        over_strand,
    })
}
