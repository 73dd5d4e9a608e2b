//! Kauffman states, clock moves, and the clocked/counterclocked states.
//!
//! A transposition involves two faces `A`, `B` that share at least one edge.
//! The marker in `A` sits in a corner touching a shared edge and swings
//! across it into `B`; the marker in `B` does the same into `A`. Each marker
//! rotates one slot around its vertex and both rotate in the same sense.
//! When the two markers touch the same edge they sit at its two ends; on
//! non-proper universes they may touch different shared edges.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Corner, Dart, DiagramError, EdgeId, FaceId, StarPlacement, Universe, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("move {0} is not available in this state")]
    MoveNotAvailable(ClockMove),
    #[error("rotation senses disagree across edge {edge} at vertices {u} and {v}")]
    SenseDisagreement { edge: EdgeId, u: VertexId, v: VertexId },
    #[error("no states exist for stars {0}")]
    NoStates(StarPlacement),
    #[error("{count} states admit only {only} transpositions; expected exactly one")]
    Ambiguous { only: Direction, count: usize },
    #[error("filter and greedy routes disagree on the {0} state")]
    RouteMismatch(&'static str),
    #[error("greedy ascent did not terminate within {0} moves")]
    NoTermination(usize),
}

/// Rotation sense of a transposition. Slot `k -> k+1` is counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Clockwise,
    Counterclockwise,
}

impl Direction {
    pub fn reverse(self) -> Direction {
        match self {
            Direction::Clockwise => Direction::Counterclockwise,
            Direction::Counterclockwise => Direction::Clockwise,
        }
    }

    fn slot_step(self) -> u8 {
        match self {
            Direction::Clockwise => 3,
            Direction::Counterclockwise => 1,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Clockwise => "clockwise",
            Direction::Counterclockwise => "counterclockwise",
        })
    }
}

/// A marker per vertex, stored as the corner slot; ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct State(pub Vec<u8>);

impl State {
    pub fn slots(&self) -> &[u8] {
        &self.0
    }

    pub fn corner(&self, v: VertexId) -> Corner {
        Corner {
            vertex: v,
            slot: self.0[v],
        }
    }

    fn marker_face(&self, u: &Universe, v: VertexId) -> FaceId {
        u.corner_face(self.corner(v))
    }

    /// Marker owner of each face; `None` for the two starred faces.
    fn owners(&self, u: &Universe) -> Result<Vec<Option<VertexId>>, StateError> {
        let n = u.vertex_count();
        if self.0.len() != n {
            return Err(StateError::InvalidState(format!(
                "{} markers for {} vertices",
                self.0.len(),
                n
            )));
        }
        let mut owner = vec![None; u.face_count()];
        for v in 0..n {
            if self.0[v] > 3 {
                return Err(StateError::InvalidState(format!("slot {} at vertex {v}", self.0[v])));
            }
            let f = self.marker_face(u, v);
            if let Some(w) = owner[f.0] {
                return Err(StateError::InvalidState(format!(
                    "face {f} holds markers of vertices {w} and {v}"
                )));
            }
            owner[f.0] = Some(v);
        }
        Ok(owner)
    }

    /// Checks the bijection onto the non-starred faces.
    pub fn validate(&self, u: &Universe, stars: StarPlacement) -> Result<(), StateError> {
        let owner = self.owners(u)?;
        for star in [stars.star_a, stars.star_b] {
            if let Some(v) = owner.get(star.0).copied().flatten() {
                return Err(StateError::InvalidState(format!(
                    "vertex {v} has its marker in starred face {star}"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, s) in self.0.iter().enumerate() {
            if v > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}:{s}")?;
        }
        Ok(())
    }
}

/// A transposition of the markers at `u < v`. The marker at `u` crosses
/// `edge`, the one at `v` crosses `partner_edge`; both rotate `direction`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClockMove {
    pub edge: EdgeId,
    pub partner_edge: EdgeId,
    pub direction: Direction,
    pub u: VertexId,
    pub v: VertexId,
}

impl ClockMove {
    pub fn reverse(self) -> ClockMove {
        ClockMove {
            direction: self.direction.reverse(),
            ..self
        }
    }

    pub fn single_edge(&self) -> bool {
        self.edge == self.partner_edge
    }

    fn sort_key(&self) -> (EdgeId, EdgeId, EdgeId, VertexId, VertexId, Direction) {
        (
            self.edge.min(self.partner_edge),
            self.edge,
            self.partner_edge,
            self.u,
            self.v,
            self.direction,
        )
    }
}

impl PartialOrd for ClockMove {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ClockMove {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for ClockMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.single_edge() {
            write!(f, "{} at edge {} ({}-{})", self.direction, self.edge, self.u, self.v)
        } else {
            write!(
                f,
                "{} at edges {}/{} ({}-{})",
                self.direction, self.edge, self.partner_edge, self.u, self.v
            )
        }
    }
}

/// The ways a marker at `v` in `slot` can swing one corner: (sense, crossed edge, target face).
fn swings(u: &Universe, v: VertexId, slot: u8) -> [(Direction, EdgeId, FaceId); 2] {
    let here = Dart::new(v, slot as usize);
    [
        (
            Direction::Clockwise,
            u.dart_edge(here),
            u.dart_face(here.prev_ccw()),
        ),
        (
            Direction::Counterclockwise,
            u.dart_edge(here.next_ccw()),
            u.dart_face(here.next_ccw()),
        ),
    ]
}

/// Every transposition available in `state`, sorted by edge.
pub fn available_moves(u: &Universe, state: &State) -> Result<Vec<ClockMove>, StateError> {
    let owner = state.owners(u)?;
    let mut moves = Vec::new();
    for a_vertex in 0..u.vertex_count() {
        let a_face = state.marker_face(u, a_vertex);
        for (sense, edge, b_face) in swings(u, a_vertex, state.0[a_vertex]) {
            if b_face == a_face {
                continue;
            }
            let Some(b_vertex) = owner[b_face.0] else {
                continue;
            };
            if b_vertex < a_vertex {
                // Found from the other marker's side.
                continue;
            }
            for (b_sense, b_edge, target) in swings(u, b_vertex, state.0[b_vertex]) {
                if target != a_face {
                    continue;
                }
                if b_sense == sense {
                    moves.push(ClockMove {
                        edge,
                        partner_edge: b_edge,
                        direction: sense,
                        u: a_vertex,
                        v: b_vertex,
                    });
                } else if b_edge == edge {
                    return Err(StateError::SenseDisagreement {
                        edge,
                        u: a_vertex,
                        v: b_vertex,
                    });
                }
            }
        }
    }
    moves.sort();
    Ok(moves)
}

fn apply_unchecked(state: &State, mv: &ClockMove) -> State {
    let step = mv.direction.slot_step();
    let mut slots = state.0.clone();
    slots[mv.u] = (slots[mv.u] + step) % 4;
    slots[mv.v] = (slots[mv.v] + step) % 4;
    State(slots)
}

pub fn apply_move(u: &Universe, state: &State, mv: &ClockMove) -> Result<State, StateError> {
    if !available_moves(u, state)?.contains(mv) {
        return Err(StateError::MoveNotAvailable(*mv));
    }
    Ok(apply_unchecked(state, mv))
}

/// All states for a star placement in lexicographic slot order.
pub fn enumerate_states(u: &Universe, stars: StarPlacement) -> Vec<State> {
    fn extend(
        u: &Universe,
        v: VertexId,
        used: &mut [bool],
        slots: &mut Vec<u8>,
        out: &mut Vec<State>,
    ) {
        if v == u.vertex_count() {
            out.push(State(slots.clone()));
            return;
        }
        for slot in 0..4u8 {
            let f = u.corner_face(Corner { vertex: v, slot });
            if used[f.0] {
                continue;
            }
            used[f.0] = true;
            slots.push(slot);
            extend(u, v + 1, used, slots, out);
            slots.pop();
            used[f.0] = false;
        }
    }

    let mut used = vec![false; u.face_count()];
    used[stars.star_a.0] = true;
    used[stars.star_b.0] = true;
    let mut out = Vec::new();
    extend(u, 0, &mut used, &mut Vec::new(), &mut out);
    out
}

/// Applies moves of one direction, lowest edge first, until none remain.
pub fn greedy_ascent(u: &Universe, start: &State, direction: Direction) -> Result<State, StateError> {
    let limit = 1usize << 24;
    let mut state = start.clone();
    for _ in 0..limit {
        let next = available_moves(u, &state)?
            .into_iter()
            .find(|m| m.direction == direction);
        match next {
            Some(mv) => state = apply_unchecked(&state, &mv),
            None => return Ok(state),
        }
    }
    Err(StateError::NoTermination(limit))
}

/// States admitting no move in `absent` direction.
fn filter_sinks(u: &Universe, states: &[State], absent: Direction) -> Result<Vec<State>, StateError> {
    let mut out = Vec::new();
    for s in states {
        if available_moves(u, s)?.iter().all(|m| m.direction != absent) {
            out.push(s.clone());
        }
    }
    Ok(out)
}

fn find_extreme(
    u: &Universe,
    stars: StarPlacement,
    absent: Direction,
    name: &'static str,
) -> Result<State, StateError> {
    let states = enumerate_states(u, stars);
    let first = states.first().ok_or(StateError::NoStates(stars))?;
    let mut sinks = filter_sinks(u, &states, absent)?;
    if sinks.len() != 1 {
        return Err(StateError::Ambiguous {
            only: absent.reverse(),
            count: sinks.len(),
        });
    }
    let by_filter = sinks.pop().unwrap_or_else(|| first.clone());
    let by_greedy = greedy_ascent(u, first, absent)?;
    if by_filter != by_greedy {
        return Err(StateError::RouteMismatch(name));
    }
    Ok(by_filter)
}

/// The unique state admitting only clockwise transpositions.
pub fn find_clocked(u: &Universe, stars: StarPlacement) -> Result<State, StateError> {
    find_extreme(u, stars, Direction::Counterclockwise, "clocked")
}

/// The unique state admitting only counterclockwise transpositions.
pub fn find_counterclocked(u: &Universe, stars: StarPlacement) -> Result<State, StateError> {
    find_extreme(u, stars, Direction::Clockwise, "counterclocked")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    const TREFOIL: &str = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)";
    const FIGURE_EIGHT: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";
    const CURL: &str = "X(1,2,2,1)";

    fn universe(text: &str) -> Universe {
        parse_diagram(text).unwrap().universe
    }

    #[test]
    fn trefoil_three_states_per_placement() {
        let u = universe(TREFOIL);
        for stars in u.adjacent_pairs() {
            let states = enumerate_states(&u, stars);
            assert_eq!(states.len(), 3);
            let mut sorted = states.clone();
            sorted.sort();
            assert_eq!(sorted, states);
            for s in &states {
                s.validate(&u, stars).unwrap();
            }
        }
    }

    #[test]
    fn figure_eight_five_states() {
        let u = universe(FIGURE_EIGHT);
        for stars in u.adjacent_pairs() {
            assert_eq!(enumerate_states(&u, stars).len(), 5);
        }
    }

    #[test]
    fn curl_single_state_without_moves() {
        let u = universe(CURL);
        for stars in u.adjacent_pairs() {
            let states = enumerate_states(&u, stars);
            assert_eq!(states.len(), 1);
            // Loop edges never carry a transposition.
            assert!(available_moves(&u, &states[0]).unwrap().is_empty());
            let c = find_clocked(&u, stars).unwrap();
            assert_eq!(c, find_counterclocked(&u, stars).unwrap());
        }
    }

    #[test]
    fn trefoil_chain() {
        let u = universe(TREFOIL);
        for stars in u.adjacent_pairs() {
            let top = find_clocked(&u, stars).unwrap();
            let bottom = find_counterclocked(&u, stars).unwrap();
            assert_ne!(top, bottom);
            let moves = available_moves(&u, &top).unwrap();
            assert_eq!(moves.len(), 1);
            assert_eq!(moves[0].direction, Direction::Clockwise);
            let middle = apply_move(&u, &top, &moves[0]).unwrap();
            assert_ne!(middle, top);
            assert_ne!(middle, bottom);
            let down: Vec<ClockMove> = available_moves(&u, &middle)
                .unwrap()
                .into_iter()
                .filter(|m| m.direction == Direction::Clockwise)
                .collect();
            assert_eq!(down.len(), 1);
            assert_eq!(apply_move(&u, &middle, &down[0]).unwrap(), bottom);
        }
    }

    #[test]
    fn move_swaps_faces_locally() {
        let u = universe(FIGURE_EIGHT);
        for stars in u.adjacent_pairs() {
            for s in enumerate_states(&u, stars) {
                for m in available_moves(&u, &s).unwrap() {
                    let t = apply_move(&u, &s, &m).unwrap();
                    t.validate(&u, stars).unwrap();
                    let before = (s.marker_face(&u, m.u), s.marker_face(&u, m.v));
                    let after = (t.marker_face(&u, m.u), t.marker_face(&u, m.v));
                    assert_eq!(after, (before.1, before.0));
                    for w in (0..u.vertex_count()).filter(|&w| w != m.u && w != m.v) {
                        assert_eq!(s.0[w], t.0[w]);
                    }
                    let back = m.reverse();
                    assert!(available_moves(&u, &t).unwrap().contains(&back));
                    assert_eq!(apply_move(&u, &t, &back).unwrap(), s);
                }
            }
        }
    }

    #[test]
    fn unavailable_move_rejected() {
        let u = universe(TREFOIL);
        let stars = u.adjacent_pairs()[0];
        let top = find_clocked(&u, stars).unwrap();
        let m = available_moves(&u, &top).unwrap()[0];
        let err = apply_move(&u, &top, &m.reverse()).unwrap_err();
        assert_eq!(err, StateError::MoveNotAvailable(m.reverse()));
    }

    #[test]
    fn invalid_states_rejected() {
        let u = universe(TREFOIL);
        let stars = u.adjacent_pairs()[0];
        assert!(matches!(
            available_moves(&u, &State(vec![0, 0])),
            Err(StateError::InvalidState(_))
        ));
        assert!(matches!(
            available_moves(&u, &State(vec![0, 7, 0])),
            Err(StateError::InvalidState(_))
        ));
        let good = &enumerate_states(&u, stars)[0];
        let other = u.adjacent_pairs()[1];
        if enumerate_states(&u, other).iter().all(|s| s != good) {
            assert!(good.validate(&u, other).is_err());
        }
    }

    #[test]
    fn state_display() {
        assert_eq!(State(vec![1, 2, 3]).to_string(), "0:1 1:2 2:3");
    }
}
