//! Knot and link diagrams in PD notation: parsing, traversal, bridge
//! length, Reidemeister simplification, the skein computation of Q and the
//! knot signature.

mod build;
mod moves;
mod signature;
mod skein;
mod surgery;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use build::{from_braid, from_dt};
pub use moves::{
    clasp_sites, curl_sites, insert_clasp, insert_curl, simplify, ClaspSite, CurlSite,
};
pub use signature::{goeritz_matrix, signature};
pub use skein::{
    q_at_minus_one, q_polynomial, q_polynomial_with_budget, unlink_value, MinusOneValue, QEngine,
    QResult, DEFAULT_NODE_BUDGET,
};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed PD text at byte {at}: {msg}")]
    Parse { at: usize, msg: String },
    #[error("edge label {label} occurs {count} time(s), expected exactly twice")]
    DanglingEdge { label: u32, count: usize },
    #[error("PD code is not planar: {faces} faces for {crossings} crossings in a connected piece")]
    NonPlanar { crossings: usize, faces: usize },
    #[error("expected a knot, found {components} components")]
    NotAKnot { components: usize },
    #[error("skein expansion exceeded the node budget of {budget}")]
    BudgetExceeded { budget: u64 },
    #[error("Q(-1) = {value} is not an integer")]
    NonIntegralValue { value: String },
    #[error("Q(-1) = {value} is not a power of -3")]
    NotPowerOfMinus3 { value: String },
    #[error("bad braid generator {0}")]
    BadBraid(i32),
    #[error("DT code {0}")]
    BadDt(String),
}

/// Half-edge: crossing index and port `0..4` (counterclockwise).
pub type Dart = (usize, usize);

/// One crossing: four edge labels counterclockwise. Ports 0 and 2 form the
/// understrand unless `flipped`, in which case they form the overstrand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub edges: [u32; 4],
    pub flipped: bool,
}

impl Crossing {
    pub fn new(edges: [u32; 4]) -> Self {
        Self {
            edges,
            flipped: false,
        }
    }

    /// Whether the strand through `port` passes over.
    pub fn is_over(&self, port: usize) -> bool {
        port.is_multiple_of(2) == self.flipped
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    /// Crossingless unknotted circles.
    free_loops: usize,
}

/// Per component, the visits `(crossing index, passes over)` in traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedGaussSequence {
    pub components: Vec<Vec<(usize, bool)>>,
}

impl SignedGaussSequence {
    pub fn len(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every visit alternates with the next, cyclically.
    pub fn is_alternating(&self) -> bool {
        self.components
            .iter()
            .all(|c| (0..c.len()).all(|k| c[k].1 != c[(k + 1) % c.len()].1))
    }
}

impl LinkDiagram {
    /// Validates labels and planarity.
    pub fn new(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self, DiagramError> {
        let d = Self {
            crossings,
            free_loops,
        };
        d.validate()?;
        Ok(d)
    }

    pub(crate) fn new_unchecked(crossings: Vec<Crossing>, free_loops: usize) -> Self {
        Self {
            crossings,
            free_loops,
        }
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    pub fn unlink(components: usize) -> Self {
        Self {
            crossings: Vec::new(),
            free_loops: components,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    /// c(D).
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    fn validate(&self) -> Result<(), DiagramError> {
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for c in &self.crossings {
            for &e in &c.edges {
                *counts.entry(e).or_default() += 1;
            }
        }
        if let Some((&label, &count)) = counts.iter().find(|(_, &k)| k != 2) {
            return Err(DiagramError::DanglingEdge { label, count });
        }
        self.check_planar()
    }

    /// Both darts of every edge label.
    pub(crate) fn edge_map(&self) -> HashMap<u32, [Dart; 2]> {
        let mut m: HashMap<u32, Vec<Dart>> = HashMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            for (p, &e) in c.edges.iter().enumerate() {
                m.entry(e).or_default().push((i, p));
            }
        }
        m.into_iter()
            .map(|(k, v)| {
                debug_assert_eq!(v.len(), 2, "edge {k}");
                (k, [v[0], v[1]])
            })
            .collect()
    }

    /// The other end of the edge leaving `d`.
    pub(crate) fn twin(edges: &HashMap<u32, [Dart; 2]>, label: u32, d: Dart) -> Dart {
        let [a, b] = edges[&label];
        if a == d {
            b
        } else {
            a
        }
    }

    pub(crate) fn label(&self, d: Dart) -> u32 {
        self.crossings[d.0].edges[d.1]
    }

    /// Face orbits of the 4-valent map; `face_of[i][p]` is the face whose
    /// boundary leaves crossing `i` through port `p`, which is also the
    /// face filling the angle between ports `p - 1` and `p`.
    pub(crate) fn faces(&self) -> (Vec<Vec<Dart>>, Vec<[usize; 4]>) {
        let edges = self.edge_map();
        let mut face_of = vec![[usize::MAX; 4]; self.crossings.len()];
        let mut faces = Vec::new();
        for i in 0..self.crossings.len() {
            for p in 0..4 {
                if face_of[i][p] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut face = Vec::new();
                let mut d = (i, p);
                while face_of[d.0][d.1] == usize::MAX {
                    face_of[d.0][d.1] = id;
                    face.push(d);
                    let t = Self::twin(&edges, self.label(d), d);
                    d = (t.0, (t.1 + 1) % 4);
                }
                faces.push(face);
            }
        }
        (faces, face_of)
    }

    /// Connected pieces of the underlying 4-valent graph, as crossing sets.
    pub(crate) fn pieces(&self) -> Vec<Vec<usize>> {
        let edges = self.edge_map();
        let n = self.crossings.len();
        let mut piece = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if piece[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            piece[s] = id;
            let mut members = Vec::new();
            while let Some(i) = stack.pop() {
                members.push(i);
                for p in 0..4 {
                    let (j, _) = Self::twin(&edges, self.crossings[i].edges[p], (i, p));
                    if piece[j] == usize::MAX {
                        piece[j] = id;
                        stack.push(j);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    fn check_planar(&self) -> Result<(), DiagramError> {
        let (faces, _) = self.faces();
        let mut face_piece = vec![0usize; faces.len()];
        let pieces = self.pieces();
        let mut piece_of = vec![0usize; self.crossings.len()];
        for (k, members) in pieces.iter().enumerate() {
            for &i in members {
                piece_of[i] = k;
            }
        }
        for (f, face) in faces.iter().enumerate() {
            face_piece[f] = piece_of[face[0].0];
        }
        for (k, members) in pieces.iter().enumerate() {
            let nf = face_piece.iter().filter(|&&p| p == k).count();
            if nf != members.len() + 2 {
                return Err(DiagramError::NonPlanar {
                    crossings: members.len(),
                    faces: nf,
                });
            }
        }
        Ok(())
    }

    /// Closed strands through the crossings, each as its sequence of
    /// entering darts. Components are ordered by their least edge label and
    /// start on that edge; when a component uses ports 0/2 it is oriented so
    /// that port 0 is entered.
    pub(crate) fn strands(&self) -> Vec<Vec<Dart>> {
        let edges = self.edge_map();
        let mut labels: Vec<u32> = edges.keys().copied().collect();
        labels.sort_unstable();
        let mut seen: HashMap<u32, bool> = HashMap::new();
        let mut out = Vec::new();
        for &l in &labels {
            if seen.contains_key(&l) {
                continue;
            }
            let walk = |entry: Dart| -> Vec<Dart> {
                let mut visits = Vec::new();
                let mut d = entry;
                loop {
                    visits.push(d);
                    let exit = (d.0, (d.1 + 2) % 4);
                    let nxt = Self::twin(&edges, self.label(exit), exit);
                    if nxt == entry {
                        break;
                    }
                    d = nxt;
                }
                visits
            };
            let [a, b] = edges[&l];
            let mut visits = walk(a);
            if let Some(first) = visits.iter().find(|d| d.1 % 2 == 0) {
                if first.1 == 2 {
                    visits = walk(b);
                }
            }
            for &(i, p) in &visits {
                seen.insert(self.crossings[i].edges[p], true);
                seen.insert(self.crossings[i].edges[(p + 2) % 4], true);
            }
            out.push(visits);
        }
        out
    }

    /// Number of link components, including free circles.
    pub fn component_count(&self) -> usize {
        self.strands().len() + self.free_loops
    }

    pub fn gauss_sequence(&self) -> SignedGaussSequence {
        SignedGaussSequence {
            components: self
                .strands()
                .into_iter()
                .map(|s| {
                    s.into_iter()
                        .map(|(i, p)| (i, self.crossings[i].is_over(p)))
                        .collect()
                })
                .collect(),
        }
    }

    /// d(D): the longest cyclic run of overpasses or underpasses.
    pub fn bridge_length(&self) -> usize {
        self.gauss_sequence()
            .components
            .iter()
            .map(|c| longest_cyclic_run(c).map_or(0, |r| r.len))
            .max()
            .unwrap_or(0)
    }

    /// ⌊(c − l)/2⌋ for the longest bridge `l`, with the crossings to switch
    /// so that the diagram becomes layered.
    pub fn unknotting_bound_from_bridge(&self) -> Result<(usize, Vec<usize>), DiagramError> {
        let strands = self.gauss_sequence();
        let comps = strands.components.len() + self.free_loops;
        if comps != 1 {
            return Err(DiagramError::NotAKnot { components: comps });
        }
        let Some(seq) = strands.components.first() else {
            return Ok((0, Vec::new()));
        };
        let run = longest_cyclic_run(seq).expect("knot with crossings has visits");
        let n = seq.len();
        let bridge: Vec<usize> = (0..run.len).map(|k| seq[(run.start + k) % n].0).collect();
        // the rest, read from just after the bridge
        let rest: Vec<(usize, bool)> = (run.len..n).map(|k| seq[(run.start + k) % n]).collect();
        let mut first_seen: HashMap<usize, bool> = HashMap::new();
        for &(i, over) in &rest {
            if !bridge.contains(&i) {
                first_seen.entry(i).or_insert(over);
            }
        }
        let mut k: Vec<usize> = first_seen.keys().copied().collect();
        k.sort_unstable();
        // either the rest ascends read from just after the bridge, or it
        // descends read from the bridge start; both leave the bridge layered
        let asc: Vec<usize> = k.iter().copied().filter(|i| first_seen[i]).collect();
        let desc: Vec<usize> = k.iter().copied().filter(|i| !first_seen[i]).collect();
        let switch = if asc.len() <= desc.len() { asc } else { desc };
        debug_assert!(switch.len() <= (self.crossing_count() - run.len) / 2);
        Ok(((self.crossing_count() - run.len) / 2, switch))
    }

    /// The same diagram with the listed crossings switched.
    pub fn switched(&self, which: &[usize]) -> Self {
        let mut d = self.clone();
        for &i in which {
            d.crossings[i].flipped = !d.crossings[i].flipped;
        }
        d
    }

    /// All crossings switched.
    pub fn mirror(&self) -> Self {
        let all: Vec<usize> = (0..self.crossings.len()).collect();
        self.switched(&all)
    }

    /// Whether the knot diagram is descending from some basepoint in some
    /// direction (every crossing met first as an overpass), or ascending.
    pub fn is_layered(&self) -> bool {
        let seq = self.gauss_sequence();
        if seq.components.len() != 1 {
            return seq.components.is_empty();
        }
        let s = &seq.components[0];
        let n = s.len();
        let check = |start: usize, step: isize, want_over: bool| {
            let mut seen = std::collections::HashSet::new();
            (0..n).all(|k| {
                let idx = (start as isize + step * k as isize).rem_euclid(n as isize) as usize;
                let (i, over) = s[idx];
                !seen.insert(i) || over == want_over
            })
        };
        (0..n).any(|st| {
            check(st, 1, true) || check(st, 1, false) || check(st, -1, true) || check(st, -1, false)
        })
    }
}

#[derive(Clone, Copy, Debug)]
struct Run {
    start: usize,
    len: usize,
}

fn longest_cyclic_run(seq: &[(usize, bool)]) -> Option<Run> {
    let n = seq.len();
    if n == 0 {
        return None;
    }
    if seq.iter().all(|v| v.1 == seq[0].1) {
        return Some(Run { start: 0, len: n });
    }
    let mut best = Run { start: 0, len: 0 };
    for start in 0..n {
        if seq[(start + n - 1) % n].1 == seq[start].1 {
            continue;
        }
        let len = (0..n)
            .take_while(|&k| seq[(start + k) % n].1 == seq[start].1)
            .count();
        if len > best.len {
            best = Run { start, len };
        }
    }
    Some(best)
}

/// `X(a,b,c,d)` per crossing, `-X(...)` when ports 0/2 pass over, and `O`
/// per free circle; space separated.
impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.crossings {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let [a, b, cc, d] = c.edges;
            write!(f, "{}X({a},{b},{cc},{d})", if c.flipped { "-" } else { "" })?;
        }
        for _ in 0..self.free_loops {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str("O")?;
        }
        Ok(())
    }
}

impl FromStr for LinkDiagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, DiagramError> {
        parse_pd(s)
    }
}

/// Parses the crossing groups of a PD line. Text without any group is the
/// crossingless unknot.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, DiagramError> {
    let b = text.as_bytes();
    let err = |at: usize, msg: &str| DiagramError::Parse {
        at,
        msg: msg.to_string(),
    };
    let mut i = 0;
    let mut crossings = Vec::new();
    let mut loops = 0;
    let skip_ws = |i: &mut usize| {
        while *i < b.len() && (b[*i] as char).is_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip_ws(&mut i);
        if i >= b.len() {
            break;
        }
        let mut flipped = false;
        if b[i] == b'-' {
            flipped = true;
            i += 1;
        }
        match b.get(i) {
            Some(b'O') if !flipped => {
                loops += 1;
                i += 1;
                continue;
            }
            Some(b'X') => i += 1,
            _ => return Err(err(i, "expected X(...) or O")),
        }
        skip_ws(&mut i);
        if b.get(i) != Some(&b'(') {
            return Err(err(i, "expected '('"));
        }
        i += 1;
        let mut labels = Vec::with_capacity(4);
        loop {
            skip_ws(&mut i);
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(err(i, "expected an edge label"));
            }
            let v: u32 = text[start..i]
                .parse()
                .map_err(|_| err(start, "edge label out of range"))?;
            labels.push(v);
            skip_ws(&mut i);
            match b.get(i) {
                Some(b',') => i += 1,
                Some(b')') => {
                    i += 1;
                    break;
                }
                _ => return Err(err(i, "expected ',' or ')'")),
            }
        }
        let edges: [u32; 4] = labels
            .try_into()
            .map_err(|_| err(i, "a crossing needs exactly four edge labels"))?;
        crossings.push(Crossing { edges, flipped });
    }
    if crossings.is_empty() && loops == 0 {
        loops = 1;
    }
    LinkDiagram::new(crossings, loops)
}

/// `name: groups...`; returns the trimmed name and the diagram.
pub fn parse_pd_line(line: &str) -> Result<(String, LinkDiagram), DiagramError> {
    let (name, rest) = line.split_once(':').ok_or(DiagramError::Parse {
        at: 0,
        msg: "expected 'name:' prefix".into(),
    })?;
    let d = parse_pd(rest).map_err(|e| match e {
        DiagramError::Parse { at, msg } => DiagramError::Parse {
            at: at + name.len() + 1,
            msg,
        },
        other => other,
    })?;
    Ok((name.trim().to_string(), d))
}

#[cfg(test)]
pub(crate) mod fixtures {
    pub const TREFOIL: &str = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)";
    pub const FIGURE_EIGHT: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";
    pub const CURLED_UNKNOT: &str = "X(1,1,2,2)";
    /// An unknot drawn as a two-crossing clasp.
    pub const CLASP_UNKNOT: &str = "X(1,3,2,4) -X(3,1,4,2)";
    pub const HOPF: &str = "X(1,3,2,4) X(3,1,4,2)";
}
