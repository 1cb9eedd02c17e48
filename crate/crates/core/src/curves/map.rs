use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::code::OpenGaussCode;
use super::CurveError;

/// A combinatorial realization of an open curve on the sphere.
///
/// Segment `j` of a code with `n` crossings runs from word position `j - 1`
/// to word position `j` (segment `0` starts at γ(0), segment `2n` ends at
/// γ(1)). Dart `2j` is its tail half-edge and `2j + 1` its head half-edge.
///
/// At a crossing first passed at position `p` and again at `q`, the four
/// half-edges are `I1 = 2p+1`, `O1 = 2p+2`, `I2 = 2q+1`, `O2 = 2q+2`; the
/// counterclockwise rotation is `(I1, I2, O1, O2)` when the crossing's flip
/// bit is clear and `(I1, O2, O1, I2)` when set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlanarCurveMap {
    code: OpenGaussCode,
    flips: Vec<bool>,
}

/// Faces of the curve complement and their adjacency across segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionGraph {
    /// Darts on the boundary of each face.
    pub regions: Vec<Vec<usize>>,
    /// One `(face, face)` pair per curve segment, in segment order.
    pub adjacency: Vec<(usize, usize)>,
    pub start_region: usize,
    pub end_region: usize,
}

impl RegionGraph {
    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    /// BFS distance (in segments crossed) between two faces.
    pub fn shortest_path(&self, from: usize, to: usize) -> usize {
        let mut nbrs = vec![Vec::new(); self.regions.len()];
        for &(a, b) in &self.adjacency {
            if a != b {
                nbrs[a].push(b);
                nbrs[b].push(a);
            }
        }
        let mut dist = vec![usize::MAX; self.regions.len()];
        dist[from] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(f) = queue.pop_front() {
            if f == to {
                break;
            }
            for &g in &nbrs[f] {
                if dist[g] == usize::MAX {
                    dist[g] = dist[f] + 1;
                    queue.push_back(g);
                }
            }
        }
        dist[to]
    }
}

struct Tracing {
    face_of: Vec<usize>,
    faces: Vec<Vec<usize>>,
}

impl PlanarCurveMap {
    /// Checks that the rotation system is planar (Euler characteristic 2).
    pub fn new(code: OpenGaussCode, flips: Vec<bool>) -> Result<Self, CurveError> {
        if flips.len() != code.crossing_count() {
            return Err(CurveError::FlipCount {
                expected: code.crossing_count(),
                got: flips.len(),
            });
        }
        let map = Self { code, flips };
        if map.trace().faces.len() != map.crossing_count() + 1 {
            return Err(CurveError::NonPlanar {
                code: map.code.clone(),
                flips: map.flips.clone(),
            });
        }
        Ok(map)
    }

    pub fn code(&self) -> &OpenGaussCode {
        &self.code
    }

    pub fn flips(&self) -> &[bool] {
        &self.flips
    }

    pub fn crossing_count(&self) -> usize {
        self.code.crossing_count()
    }

    fn dart_count(&self) -> usize {
        2 * (self.code.word().len() + 1)
    }

    /// Counterclockwise half-edges at the crossing with label `label`.
    pub fn rotation(&self, label: u32) -> [usize; 4] {
        let (p, q) = self.code.positions()[label as usize - 1];
        rotation_at(p, q, self.flips[label as usize - 1])
    }

    fn rotations(&self) -> Vec<[usize; 4]> {
        self.code
            .positions()
            .iter()
            .zip(&self.flips)
            .map(|(&(p, q), &f)| rotation_at(p, q, f))
            .collect()
    }

    /// Next dart counterclockwise around the vertex of `d`, for every dart.
    fn rot_table(&self) -> Vec<usize> {
        let mut rot: Vec<usize> = (0..self.dart_count()).collect();
        for r in self.rotations() {
            for k in 0..4 {
                rot[r[k]] = r[(k + 1) % 4];
            }
        }
        rot
    }

    fn trace(&self) -> Tracing {
        let rot = self.rot_table();
        let nd = rot.len();
        let mut face_of = vec![usize::MAX; nd];
        let mut faces = Vec::new();
        for start in 0..nd {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut face = Vec::new();
            let mut d = start;
            while face_of[d] == usize::MAX {
                face_of[d] = id;
                face.push(d);
                d = rot[d ^ 1];
            }
            faces.push(face);
        }
        Tracing { face_of, faces }
    }

    /// Faces of the complement; always `c + 1` of them.
    pub fn regions(&self) -> RegionGraph {
        let Tracing { face_of, faces } = self.trace();
        assert_eq!(
            faces.len(),
            self.crossing_count() + 1,
            "planar curve map with wrong face count: {self:?}"
        );
        let segs = self.code.word().len() + 1;
        RegionGraph {
            adjacency: (0..segs)
                .map(|j| (face_of[2 * j], face_of[2 * j + 1]))
                .collect(),
            start_region: face_of[0],
            end_region: face_of[2 * segs - 1],
            regions: faces,
        }
    }

    /// d(γ): fewest curve segments an arc from γ(0) to γ(1) must cross.
    pub fn distance(&self) -> usize {
        let g = self.regions();
        g.shortest_path(g.start_region, g.end_region)
    }

    /// Faces of the four angles at a crossing, angle `k` lying between
    /// rotation slots `k` and `k + 1`.
    fn angle_faces(&self, face_of: &[usize], label: u32) -> [usize; 4] {
        let r = self.rotation(label);
        [0, 1, 2, 3].map(|k| face_of[r[(k + 1) % 4]])
    }

    /// Crossings at which two opposite angles lie in the same face.
    pub fn isolated_crossings(&self) -> Vec<u32> {
        let face_of = self.trace().face_of;
        (1..=self.crossing_count() as u32)
            .filter(|&l| {
                let a = self.angle_faces(&face_of, l);
                a[0] == a[2] || a[1] == a[3]
            })
            .collect()
    }

    /// Removes the loop closed at an isolated crossing and smooths it away.
    pub fn reduce_isolated(&self, label: u32) -> Result<Self, CurveError> {
        if label == 0
            || label as usize > self.crossing_count()
            || !self.isolated_crossings().contains(&label)
        {
            return Err(CurveError::NotIsolated { crossing: label });
        }
        let (p, q) = self.code.positions()[label as usize - 1];
        let word = self.code.word();
        let inner = &word[p + 1..q];
        let outer: Vec<u32> = word[..p].iter().chain(&word[q + 1..]).copied().collect();
        if inner.iter().any(|l| outer.contains(l)) {
            // an isolating circle always cuts the loop off from the rest
            return Err(CurveError::Internal(format!(
                "crossing {label} of {} is isolated but its loop meets the rest of the curve",
                self.code
            )));
        }
        let flips: Vec<bool> = {
            let mut seen = Vec::new();
            for &l in &outer {
                if !seen.contains(&l) {
                    seen.push(l);
                }
            }
            seen.iter().map(|&l| self.flips[l as usize - 1]).collect()
        };
        let code = OpenGaussCode::new(&outer)?;
        Self::new(code, flips)
            .map_err(|e| CurveError::Internal(format!("reduction broke planarity: {e}")))
    }

    /// The same drawing traversed backwards.
    pub fn reversed(&self) -> Self {
        let n = self.crossing_count() as u32;
        let word = self.code.word();
        // first-appearance order of labels in the reversed word
        let mut order = Vec::new();
        for &l in word.iter().rev() {
            if !order.contains(&l) {
                order.push(l);
            }
        }
        debug_assert_eq!(order.len() as u32, n);
        let flips = order.iter().map(|&l| !self.flips[l as usize - 1]).collect();
        Self {
            code: self.code.reversed(),
            flips,
        }
    }

    /// Reflection of the drawing.
    pub fn mirrored(&self) -> Self {
        Self {
            code: self.code.clone(),
            flips: self.flips.iter().map(|f| !f).collect(),
        }
    }

    /// Whether γ(0) and γ(1) lie in the same face.
    pub fn endpoints_share_face(&self) -> bool {
        let g = self.regions();
        g.start_region == g.end_region
    }

    /// Connected sum in the plane. Each summand is drawn with γ(1) of its
    /// unreversed form on the outer face, so a reversed summand has its
    /// original start outside. The sum exists when γ₁(1) or γ₂(0) can be
    /// reached from the outer face.
    pub fn connected_sum(
        a: &Self,
        b: &Self,
        reverse_a: bool,
        reverse_b: bool,
    ) -> Result<Self, CurveError> {
        let a_end_outer = !reverse_a || a.endpoints_share_face();
        let b_start_outer = reverse_b || b.endpoints_share_face();
        if !a_end_outer && !b_start_outer {
            return Err(CurveError::NotComposable);
        }
        let a = if reverse_a { a.reversed() } else { a.clone() };
        let b = if reverse_b { b.reversed() } else { b.clone() };
        let code = a.code.concat(&b.code);
        let flips = a.flips.iter().chain(&b.flips).copied().collect();
        Self::new(code, flips)
            .map_err(|e| CurveError::Internal(format!("connected sum broke planarity: {e}")))
    }
}

fn rotation_at(p: usize, q: usize, flip: bool) -> [usize; 4] {
    let (i1, o1, i2, o2) = (2 * p + 1, 2 * p + 2, 2 * q + 1, 2 * q + 2);
    if flip {
        [i1, o2, o1, i2]
    } else {
        [i1, i2, o1, o2]
    }
}

/// Every planar rotation system of `code` up to global reflection, in
/// increasing flip-mask order (the first crossing's flip bit is clear).
pub fn realizations(code: &OpenGaussCode) -> Vec<PlanarCurveMap> {
    let n = code.crossing_count();
    if n == 0 {
        return vec![PlanarCurveMap {
            code: code.clone(),
            flips: Vec::new(),
        }];
    }
    (0u64..1 << (n - 1))
        .filter_map(|mask| {
            let flips = (0..n).map(|i| i > 0 && mask >> (i - 1) & 1 == 1).collect();
            PlanarCurveMap::new(code.clone(), flips).ok()
        })
        .collect()
}

/// Exhaustive search over the per-crossing interleavings.
pub fn realize(code: &OpenGaussCode) -> Result<PlanarCurveMap, CurveError> {
    realizations(code)
        .into_iter()
        .next()
        .ok_or_else(|| CurveError::NotRealizable { code: code.clone() })
}
