//! Slow reference implementations used to cross-check the main code paths.
//! They share only the public data types with the rest of the crate.

use std::collections::HashMap;

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::curves::PlanarCurveMap;
use crate::diagrams::{clasp_sites, curl_sites, insert_clasp, insert_curl, Crossing, LinkDiagram};
use crate::laurent::LaurentPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub input: String,
    pub main: String,
    pub oracle: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleReport {
    pub cases: usize,
    pub mismatches: Vec<Mismatch>,
}

impl OracleReport {
    pub fn check<T: PartialEq + std::fmt::Display>(
        &mut self,
        input: impl std::fmt::Display,
        main: T,
        oracle: T,
    ) {
        self.cases += 1;
        if main != oracle {
            self.mismatches.push(Mismatch {
                input: input.to_string(),
                main: main.to_string(),
                oracle: oracle.to_string(),
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Clone, Debug)]
struct Pd {
    x: Vec<([u32; 4], bool)>,
    loops: usize,
}

impl Pd {
    fn from(d: &LinkDiagram) -> Self {
        Pd {
            x: d.crossings().iter().map(|c| (c.edges, c.flipped)).collect(),
            loops: d.free_loops(),
        }
    }

    fn rename(&mut self, from: u32, to: u32) {
        for (e, _) in &mut self.x {
            for l in e.iter_mut() {
                if *l == from {
                    *l = to;
                }
            }
        }
    }

    fn without(&self, i: usize) -> Pd {
        let mut p = self.clone();
        p.x.remove(i);
        p
    }

    /// Removes crossing `i`, joining its ports in the two given pairs.
    fn joined(&self, i: usize, pairs: [(usize, usize); 2]) -> Pd {
        let e = self.x[i].0;
        let mut p = self.without(i);
        let mut labels = pairs.map(|(a, b)| (e[a], e[b]));
        for k in 0..2 {
            let (a, b) = labels[k];
            if a == b {
                p.loops += 1;
            } else {
                p.rename(b, a);
                for l in labels.iter_mut().skip(k + 1) {
                    if l.0 == b {
                        l.0 = a;
                    }
                    if l.1 == b {
                        l.1 = a;
                    }
                }
            }
        }
        p
    }

    fn drop_curls(mut self) -> Pd {
        while let Some((i, p)) = (0..self.x.len())
            .flat_map(|i| (0..4).map(move |p| (i, p)))
            .find(|&(i, p)| self.x[i].0[p] == self.x[i].0[(p + 1) % 4])
        {
            self = self.joined(i, [(p, (p + 1) % 4), ((p + 2) % 4, (p + 3) % 4)]);
            // the kink loop itself is not a new component
            self.loops -= 1;
        }
        self
    }

    fn over(&self, i: usize, port: usize) -> bool {
        port.is_multiple_of(2) == self.x[i].1
    }

    /// Components as (crossing, port entered) sequences.
    fn walks(&self) -> Vec<Vec<(usize, usize)>> {
        let mut at: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
        for (i, (e, _)) in self.x.iter().enumerate() {
            for (p, &l) in e.iter().enumerate() {
                at.entry(l).or_default().push((i, p));
            }
        }
        let other = |d: (usize, usize)| {
            let v = &at[&self.x[d.0].0[d.1]];
            if v[0] == d {
                v[1]
            } else {
                v[0]
            }
        };
        let mut used = vec![[false; 4]; self.x.len()];
        let mut out = Vec::new();
        for i in 0..self.x.len() {
            for p in 0..4 {
                if used[i][p] {
                    continue;
                }
                let mut walk = Vec::new();
                let mut d = (i, p);
                while !used[d.0][d.1] {
                    used[d.0][d.1] = true;
                    walk.push(d);
                    let exit = (d.0, (d.1 + 2) % 4);
                    used[exit.0][exit.1] = true;
                    d = other(exit);
                }
                out.push(walk);
            }
        }
        out
    }
}

fn mu_power(k: usize) -> LaurentPoly {
    let mu = LaurentPoly::from_terms([(-1i64, 2i64), (0, -1)]);
    (0..k).fold(LaurentPoly::one(), |acc, _| &acc * &mu)
}

fn naive(p: Pd, rng: &mut impl Rng) -> LaurentPoly {
    let p = p.drop_curls();
    if p.x.is_empty() {
        return mu_power(p.loops.max(1) - 1);
    }
    let mut walks = p.walks();
    walks.shuffle(rng);
    for w in &mut walks {
        let s = rng.gen_range(0..w.len());
        w.rotate_left(s);
        if rng.gen_bool(0.5) {
            // same circuit run backwards
            w.reverse();
            for d in w.iter_mut() {
                d.1 = (d.1 + 2) % 4;
            }
        }
    }
    naive_with(p, &walks, rng)
}

/// One skein step with the traversal held fixed, so switching a blocking
/// crossing always brings the diagram closer to descending.
fn naive_with(p: Pd, walks: &[Vec<(usize, usize)>], rng: &mut impl Rng) -> LaurentPoly {
    let mut seen = vec![false; p.x.len()];
    let mut bad = Vec::new();
    for w in walks {
        for &(i, port) in w {
            if !seen[i] {
                seen[i] = true;
                if !p.over(i, port) {
                    bad.push(i);
                }
            }
        }
    }
    let Some(&v) = bad.choose(rng) else {
        return mu_power(walks.len() + p.loops - 1);
    };
    let a = naive(p.joined(v, [(0, 1), (2, 3)]), rng);
    let b = naive(p.joined(v, [(0, 3), (1, 2)]), rng);
    let mut switched = p;
    switched.x[v].1 = !switched.x[v].1;
    let rest = naive_with(switched, walks, rng);
    &(&LaurentPoly::z() * &(&a + &b)) - &rest
}

/// Q by unmemoized skein expansion with random basepoints and random
/// choice among the crossings blocking a descending diagram.
pub fn q_naive(d: &LinkDiagram, rng: &mut impl Rng) -> LaurentPoly {
    naive(Pd::from(d), rng)
}

/// σ(K) from the Gordon–Litherland form of the checkerboard surface that
/// contains the region at port 0 of the first crossing, with eigenvalues
/// taken numerically.
///
/// # Panics
/// If `d` is not a knot diagram.
pub fn checkerboard_signature(d: &LinkDiagram) -> i64 {
    assert_eq!(d.component_count(), 1, "knot expected");
    let p = Pd::from(d);
    let n = p.x.len();
    if n == 0 {
        return 0;
    }
    let mut at: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
    for (i, (e, _)) in p.x.iter().enumerate() {
        for (q, &l) in e.iter().enumerate() {
            at.entry(l).or_default().push((i, q));
        }
    }
    let other = |dd: (usize, usize)| {
        let v = &at[&p.x[dd.0].0[dd.1]];
        if v[0] == dd {
            v[1]
        } else {
            v[0]
        }
    };
    let mut face = vec![[usize::MAX; 4]; n];
    let mut faces = 0;
    for i in 0..n {
        for q in 0..4 {
            let mut dd = (i, q);
            if face[i][q] != usize::MAX {
                continue;
            }
            while face[dd.0][dd.1] == usize::MAX {
                face[dd.0][dd.1] = faces;
                let t = other(dd);
                dd = (t.0, (t.1 + 1) % 4);
            }
            faces += 1;
        }
    }
    let mut shade: Vec<Option<bool>> = vec![None; faces];
    shade[face[0][0]] = Some(true);
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for q in 0..4 {
                let t = other((i, q));
                let (f, g) = (face[i][q], face[t.0][t.1]);
                if let (Some(x), None) = (shade[f], shade[g]) {
                    shade[g] = Some(!x);
                    changed = true;
                }
                if let (None, Some(x)) = (shade[f], shade[g]) {
                    shade[f] = Some(!x);
                    changed = true;
                }
            }
        }
    }
    let surface: Vec<bool> = shade
        .into_iter()
        .map(|s| s.expect("connected diagram"))
        .collect();
    let corner = |i: usize, k: usize| face[i][(k + 1) % 4];
    let rest: Vec<usize> = (0..faces).filter(|&f| !surface[f]).collect();
    let slot = |f: usize| rest.iter().position(|&r| r == f).expect("unshaded");
    let lambda = |i: usize| {
        if surface[corner(i, 0)] != p.x[i].1 {
            -1.0
        } else {
            1.0
        }
    };

    let r = rest.len();
    let mut g = DMatrix::<f64>::zeros(r, r);
    for i in 0..n {
        let (u, v) = if surface[corner(i, 0)] {
            (slot(corner(i, 1)), slot(corner(i, 3)))
        } else {
            (slot(corner(i, 0)), slot(corner(i, 2)))
        };
        let l = lambda(i);
        g[(u, u)] += l;
        g[(v, v)] += l;
        g[(u, v)] -= l;
        g[(v, u)] -= l;
    }
    let g = g.view((0, 0), (r - 1, r - 1)).into_owned();
    let eig = g.symmetric_eigen();
    let pos = eig.eigenvalues.iter().filter(|&&x| x > 1e-7).count() as i64;
    let neg = eig.eigenvalues.iter().filter(|&&x| x < -1e-7).count() as i64;

    let mut entered = vec![[false; 4]; n];
    for w in p.walks() {
        for (i, q) in w {
            entered[i][q] = true;
        }
    }
    let mut correction = 0.0;
    for i in 0..n {
        // the oriented smoothing joins the corner between the two incoming
        // ports to the opposite one
        let merged = (0..4)
            .find(|&k| entered[i][k] && entered[i][(k + 1) % 4])
            .expect("the incoming ports are adjacent");
        if surface[corner(i, merged)] {
            correction += lambda(i);
        }
    }
    pos - neg - correction as i64
}

/// d(γ) by enumerating every simple path in the region graph, with faces
/// found by merging the corners around each vertex.
pub fn distance_exhaustive(map: &PlanarCurveMap) -> usize {
    let n = map.crossing_count();
    let darts = 4 * n + 2;
    // vertex rotations: endpoints hold one dart each
    let mut rot: Vec<Vec<usize>> = vec![vec![0], vec![4 * n + 1]];
    for label in 1..=n as u32 {
        rot.push(map.rotation(label).to_vec());
    }
    let mut place = vec![(0usize, 0usize); darts];
    for (v, r) in rot.iter().enumerate() {
        for (k, &d) in r.iter().enumerate() {
            place[d] = (v, k);
        }
    }
    let corner_id = |v: usize, k: usize| rot[..v].iter().map(Vec::len).sum::<usize>() + k;
    let total: usize = rot.iter().map(Vec::len).sum();
    let mut uf: Vec<usize> = (0..total).collect();
    fn find(uf: &mut [usize], x: usize) -> usize {
        if uf[x] != x {
            let r = find(uf, uf[x]);
            uf[x] = r;
        }
        uf[x]
    }
    // corner after dart h (counterclockwise) at its vertex sits left of h
    // going out, which is right of its twin coming back: the corner before
    // the twin
    for h in 0..darts {
        let t = h ^ 1;
        let (v, k) = place[h];
        let (w, j) = place[t];
        let deg_w = rot[w].len();
        let a = corner_id(v, k);
        let b = corner_id(w, (j + deg_w - 1) % deg_w);
        let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
        uf[ra] = rb;
    }
    let mut face_index: HashMap<usize, usize> = HashMap::new();
    let mut face = |uf: &mut Vec<usize>, c: usize| {
        let r = find(uf, c);
        let next = face_index.len();
        *face_index.entry(r).or_insert(next)
    };
    let mut edges = Vec::new();
    for seg in 0..=2 * n {
        let h = 2 * seg;
        let (v, k) = place[h];
        let deg = rot[v].len();
        let left = face(&mut uf, corner_id(v, k));
        let right = face(&mut uf, corner_id(v, (k + deg - 1) % deg));
        edges.push((left, right));
    }
    let start = face(&mut uf, corner_id(0, 0));
    let end = face(&mut uf, corner_id(1, 0));
    let faces = face_index.len();
    let mut best = usize::MAX;
    let mut on_path = vec![false; faces];
    fn dfs(
        f: usize,
        end: usize,
        len: usize,
        edges: &[(usize, usize)],
        on_path: &mut [bool],
        best: &mut usize,
    ) {
        if f == end {
            *best = (*best).min(len);
            return;
        }
        on_path[f] = true;
        for &(a, b) in edges {
            let g = if a == f {
                b
            } else if b == f {
                a
            } else {
                continue;
            };
            if !on_path[g] {
                dfs(g, end, len + 1, edges, on_path, best);
            }
        }
        on_path[f] = false;
    }
    dfs(start, end, 0, &edges, &mut on_path, &mut best);
    best
}

/// Applies `steps` random kink or clasp insertions, then shuffles crossing
/// order and edge labels and rotates each crossing's port listing.
pub fn perturb(d: &LinkDiagram, steps: usize, rng: &mut impl Rng) -> LinkDiagram {
    let mut cur = d.clone();
    for _ in 0..steps {
        let clasps = clasp_sites(&cur);
        if !clasps.is_empty() && rng.gen_bool(0.5) {
            cur = insert_clasp(&cur, *clasps.choose(rng).expect("nonempty"));
        } else {
            let curls = curl_sites(&cur);
            if let Some(s) = curls.choose(rng) {
                cur = insert_curl(&cur, *s);
            }
        }
    }
    relabel(&cur, rng)
}

/// Same diagram with shuffled crossings, permuted labels and rotated
/// listings.
pub fn relabel(d: &LinkDiagram, rng: &mut impl Rng) -> LinkDiagram {
    let mut labels: Vec<u32> = d.crossings().iter().flat_map(|c| c.edges).collect();
    labels.sort_unstable();
    labels.dedup();
    let mut fresh: Vec<u32> = (1..=labels.len() as u32).collect();
    fresh.shuffle(rng);
    let map: HashMap<u32, u32> = labels.into_iter().zip(fresh).collect();
    let mut xs: Vec<Crossing> = d
        .crossings()
        .iter()
        .map(|c| {
            let r = rng.gen_range(0..4);
            let mut edges = c.edges.map(|e| map[&e]);
            edges.rotate_left(r);
            Crossing {
                edges,
                flipped: c.flipped ^ (r % 2 == 1),
            }
        })
        .collect();
    xs.shuffle(rng);
    LinkDiagram::new(xs, d.free_loops()).expect("relabeling preserves validity")
}
