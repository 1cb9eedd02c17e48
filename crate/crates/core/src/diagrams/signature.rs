//! Knot signature from a checkerboard coloring (Gordon–Litherland).

use num_bigint::BigInt;

use super::{DiagramError, LinkDiagram};
use crate::linalg::symmetric_signature;

struct Coloring {
    /// Per face: true when black.
    black: Vec<bool>,
    face_of: Vec<[usize; 4]>,
}

impl Coloring {
    /// Region in corner `k`, between ports `k` and `k + 1`.
    fn corner(&self, i: usize, k: usize) -> usize {
        self.face_of[i][(k + 1) % 4]
    }
}

fn color(d: &LinkDiagram) -> Coloring {
    let (faces, face_of) = d.faces();
    let edges = d.edge_map();
    let mut black: Vec<Option<bool>> = vec![None; faces.len()];
    black[face_of[0][0]] = Some(false);
    let mut stack = vec![face_of[0][0]];
    while let Some(f) = stack.pop() {
        let c = black[f].expect("colored when pushed");
        for &dart in &faces[f] {
            let t = LinkDiagram::twin(&edges, d.label(dart), dart);
            let g = face_of[t.0][t.1];
            match black[g] {
                None => {
                    black[g] = Some(!c);
                    stack.push(g);
                }
                Some(x) => debug_assert_ne!(x, c, "faces across an edge differ in color"),
            }
        }
    }
    Coloring {
        black: black.into_iter().map(|b| b.unwrap_or(false)).collect(),
        face_of,
    }
}

/// Goeritz incidence `±1` per crossing.
fn eta(d: &LinkDiagram, col: &Coloring, i: usize) -> i64 {
    let even_black = col.black[col.corner(i, 0)];
    if even_black != d.crossings[i].flipped {
        -1
    } else {
        1
    }
}

fn check_knot(d: &LinkDiagram) -> Result<(), DiagramError> {
    let comps = d.component_count();
    if comps != 1 {
        return Err(DiagramError::NotAKnot { components: comps });
    }
    Ok(())
}

/// Goeritz matrix of the white regions, with the last row and column
/// dropped.
pub fn goeritz_matrix(d: &LinkDiagram) -> Result<Vec<Vec<i64>>, DiagramError> {
    check_knot(d)?;
    if d.crossings.is_empty() {
        return Ok(Vec::new());
    }
    let col = color(d);
    let white: Vec<usize> = (0..col.black.len()).filter(|&f| !col.black[f]).collect();
    let idx = |f: usize| white.iter().position(|&w| w == f).expect("white face");
    let n = white.len();
    let mut g = vec![vec![0i64; n]; n];
    for i in 0..d.crossings.len() {
        let l = eta(d, &col, i);
        let (u, v) = if col.black[col.corner(i, 0)] {
            (idx(col.corner(i, 1)), idx(col.corner(i, 3)))
        } else {
            (idx(col.corner(i, 0)), idx(col.corner(i, 2)))
        };
        if u != v {
            g[u][u] += l;
            g[v][v] += l;
            g[u][v] -= l;
            g[v][u] -= l;
        }
    }
    g.pop();
    for row in &mut g {
        row.pop();
    }
    Ok(g)
}

/// σ(K) for a knot diagram; positive knots come out negative.
pub fn signature(d: &LinkDiagram) -> Result<i64, DiagramError> {
    let g = goeritz_matrix(d)?;
    if d.crossings.is_empty() {
        return Ok(0);
    }
    let col = color(d);
    let mut entered = vec![[false; 4]; d.crossings.len()];
    for s in d.strands() {
        for (i, p) in s {
            entered[i][p] = true;
        }
    }
    let mut correction = 0;
    for (i, ent) in entered.iter().enumerate() {
        let in_a = if ent[0] { 0 } else { 2 };
        let in_b = if ent[1] { 1 } else { 3 };
        let corner_between = |a: usize, b: usize| if (a + 1) % 4 == b { a } else { b };
        // the oriented smoothing cuts off the corners from each incoming
        // strand to the other outgoing one; the other two get joined
        let cut = corner_between(in_a, (in_b + 2) % 4);
        let joined = (cut + 1) % 4;
        if col.black[col.corner(i, joined)] {
            correction += eta(d, &col, i);
        }
    }
    let big: Vec<Vec<BigInt>> = g
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    Ok(symmetric_signature(&big) - correction)
}
