//! The clock lattice: all states of a star placement joined by clockwise
//! transpositions, with the clocked state on top.

use std::collections::{HashMap, VecDeque};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{StarPlacement, Universe, VertexId};
use crate::states::{
    available_moves, enumerate_states, greedy_ascent, ClockMove, Direction, State, StateError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error("clockwise closure of the clocked state reaches {reached} of {total} states")]
    ClosureIncomplete { reached: usize, total: usize },
    #[error("only {reaching} of {total} states reach the counterclocked state")]
    SinkUnreachable { reaching: usize, total: usize },
    #[error("move {mv} from state {from} leads outside the state set")]
    DanglingMove { from: usize, mv: ClockMove },
    #[error("unknown export format {0:?} (expected dot or json)")]
    UnknownFormat(String),
    #[error("lattice json: {0}")]
    Json(String),
}

/// A clockwise transposition taking `states[from]` to `states[to]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    #[serde(rename = "move")]
    pub mv: ClockMove,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice {
    pub stars: StarPlacement,
    /// Lexicographic slot order.
    pub states: Vec<State>,
    pub arrows: Vec<Arrow>,
    pub clocked: usize,
    pub counterclocked: usize,
    /// One plus the fewest transpositions of either sense joining the extremes.
    pub height: usize,
    /// The same, counting clockwise transpositions only.
    pub directed_height: usize,
}

/// A shortest transposition sequence from the clocked state downwards.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalPath {
    pub states: Vec<usize>,
    pub moves: Vec<ClockMove>,
    /// How many moves of the path involve each vertex.
    pub counts: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl FromStr for ExportFormat {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            _ => Err(LatticeError::UnknownFormat(s.to_string())),
        }
    }
}

impl fmt::Display for ExportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExportFormat::Dot => "dot",
            ExportFormat::Json => "json",
        })
    }
}

fn reach(adj: &[Vec<usize>], start: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        for &t in &adj[s] {
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    seen
}

/// BFS parents with neighbours taken in index order; `None` if unreachable.
fn bfs_path(adj: &[Vec<usize>], start: usize, goal: usize) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; adj.len()];
    parent[start] = start;
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        if s == goal {
            break;
        }
        for &t in &adj[s] {
            if parent[t] == usize::MAX {
                parent[t] = s;
                queue.push_back(t);
            }
        }
    }
    if parent[goal] == usize::MAX {
        return None;
    }
    let mut path = vec![goal];
    while *path.last()? != start {
        path.push(parent[*path.last()?]);
    }
    path.reverse();
    Some(path)
}

pub fn build_lattice(u: &Universe, stars: StarPlacement) -> Result<Lattice, LatticeError> {
    let states = enumerate_states(u, stars);
    if states.is_empty() {
        return Err(StateError::NoStates(stars).into());
    }
    let index: HashMap<&State, usize> = states.iter().enumerate().map(|(i, s)| (s, i)).collect();

    let mut arrows = Vec::new();
    let mut sources = Vec::new();
    let mut sinks = Vec::new();
    for (i, s) in states.iter().enumerate() {
        let moves = available_moves(u, s)?;
        if moves.iter().all(|m| m.direction == Direction::Clockwise) {
            sources.push(i);
        }
        if moves.iter().all(|m| m.direction == Direction::Counterclockwise) {
            sinks.push(i);
        }
        for mv in moves.into_iter().filter(|m| m.direction == Direction::Clockwise) {
            let mut slots = s.0.clone();
            slots[mv.u] = (slots[mv.u] + 3) % 4;
            slots[mv.v] = (slots[mv.v] + 3) % 4;
            let to = *index
                .get(&State(slots))
                .ok_or(LatticeError::DanglingMove { from: i, mv })?;
            arrows.push(Arrow { from: i, to, mv });
        }
    }
    if sources.len() != 1 {
        return Err(StateError::Ambiguous {
            only: Direction::Clockwise,
            count: sources.len(),
        }
        .into());
    }
    if sinks.len() != 1 {
        return Err(StateError::Ambiguous {
            only: Direction::Counterclockwise,
            count: sinks.len(),
        }
        .into());
    }
    let (clocked, counterclocked) = (sources[0], sinks[0]);
    if greedy_ascent(u, &states[0], Direction::Counterclockwise)? != states[clocked] {
        return Err(StateError::RouteMismatch("clocked").into());
    }
    if greedy_ascent(u, &states[0], Direction::Clockwise)? != states[counterclocked] {
        return Err(StateError::RouteMismatch("counterclocked").into());
    }

    let total = states.len();
    let mut down = vec![Vec::new(); total];
    let mut up = vec![Vec::new(); total];
    for a in &arrows {
        down[a.from].push(a.to);
        up[a.to].push(a.from);
    }
    let reached = reach(&down, clocked).into_iter().filter(|&b| b).count();
    if reached != total {
        return Err(LatticeError::ClosureIncomplete { reached, total });
    }
    let reaching = reach(&up, counterclocked).into_iter().filter(|&b| b).count();
    if reaching != total {
        return Err(LatticeError::SinkUnreachable { reaching, total });
    }

    let mut lattice = Lattice {
        stars,
        states,
        arrows,
        clocked,
        counterclocked,
        height: 0,
        directed_height: 0,
    };
    let undirected = lattice.undirected_adjacency();
    let directed: Vec<Vec<usize>> = down
        .into_iter()
        .map(|mut v| {
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    // Both exist: the closure checks above guarantee connectivity.
    let hop = |adj: &[Vec<usize>]| bfs_path(adj, clocked, counterclocked).map_or(0, |p| p.len());
    lattice.height = hop(&undirected);
    lattice.directed_height = hop(&directed);
    Ok(lattice)
}

impl Lattice {
    fn undirected_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.states.len()];
        for a in &self.arrows {
            adj[a.from].push(a.to);
            adj[a.to].push(a.from);
        }
        for v in &mut adj {
            v.sort_unstable();
            v.dedup();
        }
        adj
    }

    pub fn state_index(&self, s: &State) -> Option<usize> {
        self.states.binary_search(s).ok()
    }

    pub fn vertex_count(&self) -> usize {
        self.states.first().map_or(0, |s| s.0.len())
    }

    /// Shortest path in the undirected move graph, ties broken by lowest state index.
    pub fn minimal_path(&self) -> MinimalPath {
        let adj = self.undirected_adjacency();
        let states = bfs_path(&adj, self.clocked, self.counterclocked)
            .unwrap_or_else(|| vec![self.clocked]);
        let mut counts = vec![0; self.vertex_count()];
        let mut moves = Vec::with_capacity(states.len().saturating_sub(1));
        for w in states.windows(2) {
            let mv = self
                .arrows
                .iter()
                .find_map(|a| {
                    if (a.from, a.to) == (w[0], w[1]) {
                        Some(a.mv)
                    } else if (a.from, a.to) == (w[1], w[0]) {
                        Some(a.mv.reverse())
                    } else {
                        None
                    }
                })
                .expect("path steps follow arrows");
            counts[mv.u] += 1;
            counts[mv.v] += 1;
            moves.push(mv);
        }
        MinimalPath {
            states,
            moves,
            counts,
        }
    }

    /// Moves available in some lattice state whose endpoints satisfy `pred`.
    pub fn moves_where(&self, mut pred: impl FnMut(VertexId, VertexId) -> bool) -> Vec<(usize, ClockMove)> {
        let mut out = Vec::new();
        for a in &self.arrows {
            if pred(a.mv.u, a.mv.v) {
                out.push((a.from, a.mv));
                out.push((a.to, a.mv.reverse()));
            }
        }
        out.sort_by_key(|&(s, m)| (s, m));
        out
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Json => {
                serde_json::to_string_pretty(self).expect("lattice serializes") + "\n"
            }
            ExportFormat::Dot => self.to_dot(),
        }
    }

    fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph lattice {{");
        let _ = writeln!(out, "  rankdir=TB;");
        let _ = writeln!(
            out,
            "  label=\"stars {}  height {}\";",
            self.stars, self.height
        );
        for (i, s) in self.states.iter().enumerate() {
            let shape = if i == self.clocked || i == self.counterclocked {
                ", shape=box"
            } else {
                ""
            };
            let _ = writeln!(out, "  s{i} [label=\"{s}\"{shape}];");
        }
        let _ = writeln!(out, "  {{ rank=min; s{}; }}", self.clocked);
        if self.counterclocked != self.clocked {
            let _ = writeln!(out, "  {{ rank=max; s{}; }}", self.counterclocked);
        }
        for a in &self.arrows {
            let _ = writeln!(out, "  s{} -> s{} [label=\"{}\"];", a.from, a.to, edge_label(&a.mv));
        }
        out.push_str("}\n");
        out
    }

    pub fn from_json(text: &str) -> Result<Lattice, LatticeError> {
        serde_json::from_str(text).map_err(|e| LatticeError::Json(e.to_string()))
    }
}

fn edge_label(mv: &ClockMove) -> String {
    if mv.single_edge() {
        format!("e{}", mv.edge)
    } else {
        format!("e{}/e{}", mv.edge, mv.partner_edge)
    }
}

pub fn export_lattice(lattice: &Lattice, format: &str) -> Result<String, LatticeError> {
    Ok(lattice.export(format.parse()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;
    use crate::states::{find_clocked, find_counterclocked};

    const TREFOIL: &str = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)";
    const FIGURE_EIGHT: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";

    fn universe(text: &str) -> Universe {
        parse_diagram(text).unwrap().universe
    }

    #[test]
    fn trefoil_chain_lattice() {
        let u = universe(TREFOIL);
        for stars in u.adjacent_pairs() {
            let l = build_lattice(&u, stars).unwrap();
            assert_eq!(l.states.len(), 3);
            assert_eq!(l.arrows.len(), 2);
            assert_eq!(l.height, 3);
            assert_eq!(l.directed_height, 3);
            assert_eq!(l.states[l.clocked], find_clocked(&u, stars).unwrap());
            assert_eq!(l.states[l.counterclocked], find_counterclocked(&u, stars).unwrap());
            let p = l.minimal_path();
            assert_eq!(p.moves.len(), 2);
            assert_eq!(p.counts.iter().sum::<usize>(), 4);
            let mut c = p.counts.clone();
            c.sort_unstable();
            assert_eq!(c, vec![1, 1, 2]);
        }
    }

    #[test]
    fn curl_single_node() {
        let u = universe("X(1,2,2,1)");
        for stars in u.adjacent_pairs() {
            let l = build_lattice(&u, stars).unwrap();
            assert_eq!((l.states.len(), l.arrows.len(), l.height), (1, 0, 1));
            assert_eq!(l.clocked, l.counterclocked);
            let dot = l.export(ExportFormat::Dot);
            assert_eq!(dot.matches(" [label=\"").count(), 1);
            assert!(l.minimal_path().moves.is_empty());
        }
    }

    #[test]
    fn figure_eight_heights() {
        let u = universe(FIGURE_EIGHT);
        let min = u
            .adjacent_pairs()
            .into_iter()
            .map(|s| build_lattice(&u, s).unwrap())
            .inspect(|l| assert_eq!(l.height, l.directed_height))
            .map(|l| l.height)
            .min();
        assert_eq!(min, Some(4));
    }

    #[test]
    fn exports() {
        let u = universe(TREFOIL);
        let l = build_lattice(&u, u.adjacent_pairs()[0]).unwrap();
        let dot = export_lattice(&l, "dot").unwrap();
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches(" -> ").count(), 2);
        assert_eq!(dot.matches(" [label=\"").count(), 3 + 2);
        let json = export_lattice(&l, "json").unwrap();
        assert_eq!(Lattice::from_json(&json).unwrap(), l);
        assert_eq!(
            export_lattice(&l, "svg").unwrap_err(),
            LatticeError::UnknownFormat("svg".into())
        );
    }

    #[test]
    fn path_starts_on_top() {
        let u = universe(FIGURE_EIGHT);
        for stars in u.adjacent_pairs() {
            let l = build_lattice(&u, stars).unwrap();
            let p = l.minimal_path();
            assert_eq!(p.states.first(), Some(&l.clocked));
            assert_eq!(p.states.last(), Some(&l.counterclocked));
            assert_eq!(p.states.len(), l.height);
            assert_eq!(p.counts.iter().sum::<usize>(), 2 * (l.height - 1));
            assert_eq!(l.state_index(&l.states[2]), Some(2));
        }
    }
}
