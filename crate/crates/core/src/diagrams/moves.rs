//! Crossing-removing Reidemeister I/II reductions and the inverse
//! insertions used to perturb diagrams.

use super::{Crossing, Dart, LinkDiagram};

/// Where to add a kink.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurlSite {
    /// On the edge at this dart; the dart's end of the edge is relabeled.
    Edge {
        dart: Dart,
        loop_after: bool,
        flipped: bool,
    },
    /// On one of the crossingless circles.
    FreeLoop { flipped: bool },
}

/// Two edge sides facing the same region; the second is pushed across the
/// first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClaspSite {
    pub under: Dart,
    pub over: Dart,
    /// Whether the pushed strand goes under instead.
    pub pushed_under: bool,
}

fn next_label(d: &LinkDiagram) -> u32 {
    d.crossings
        .iter()
        .flat_map(|c| c.edges)
        .max()
        .map_or(1, |m| m + 1)
}

pub fn curl_sites(d: &LinkDiagram) -> Vec<CurlSite> {
    let mut out = Vec::new();
    for i in 0..d.crossings.len() {
        for p in 0..4 {
            for loop_after in [false, true] {
                for flipped in [false, true] {
                    out.push(CurlSite::Edge {
                        dart: (i, p),
                        loop_after,
                        flipped,
                    });
                }
            }
        }
    }
    if d.free_loops > 0 {
        out.push(CurlSite::FreeLoop { flipped: false });
        out.push(CurlSite::FreeLoop { flipped: true });
    }
    out
}

/// Adds a one-crossing kink.
pub fn insert_curl(d: &LinkDiagram, site: CurlSite) -> LinkDiagram {
    let mut out = d.clone();
    let x = next_label(d);
    let y = x + 1;
    match site {
        CurlSite::FreeLoop { flipped } => {
            assert!(d.free_loops > 0, "no free circle to kink");
            out.free_loops -= 1;
            out.crossings.push(Crossing {
                edges: [x, x, y, y],
                flipped,
            });
        }
        CurlSite::Edge {
            dart,
            loop_after,
            flipped,
        } => {
            let e = d.label(dart);
            out.crossings[dart.0].edges[dart.1] = x;
            let edges = if loop_after {
                [e, x, y, y]
            } else {
                [e, y, y, x]
            };
            out.crossings.push(Crossing { edges, flipped });
        }
    }
    out
}

/// Pairs of darts on a common face with distinct edges.
pub fn clasp_sites(d: &LinkDiagram) -> Vec<ClaspSite> {
    let (faces, _) = d.faces();
    let mut out = Vec::new();
    for face in &faces {
        for &a in face {
            for &b in face {
                if d.label(a) == d.label(b) {
                    continue;
                }
                for pushed_under in [false, true] {
                    out.push(ClaspSite {
                        under: a,
                        over: b,
                        pushed_under,
                    });
                }
            }
        }
    }
    out
}

/// Pushes a finger of one edge across another through their common face,
/// adding two crossings that bound a bigon.
pub fn insert_clasp(d: &LinkDiagram, site: ClaspSite) -> LinkDiagram {
    let (_, face_of) = d.faces();
    let face = |x: Dart| face_of[x.0][x.1];
    assert_eq!(face(site.under), face(site.over), "darts must share a face");
    let e = d.label(site.under);
    let f = d.label(site.over);
    assert_ne!(e, f, "clasp needs two distinct edges");

    let mut out = d.clone();
    let e2 = next_label(d);
    let e3 = e2 + 1;
    let f2 = e2 + 2;
    let f3 = e2 + 3;
    // the face lies to the left of each edge read towards these darts
    out.crossings[site.under.0].edges[site.under.1] = e3;
    out.crossings[site.over.0].edges[site.over.1] = f3;
    let flipped = site.pushed_under;
    out.crossings.push(Crossing {
        edges: [e3, f, e2, f2],
        flipped,
    });
    out.crossings.push(Crossing {
        edges: [e2, f3, e, f2],
        flipped,
    });
    out
}

impl LinkDiagram {
    fn find_curl(&self) -> Option<usize> {
        self.crossings
            .iter()
            .position(|c| (0..4).any(|p| c.edges[p] == c.edges[(p + 1) % 4]))
    }

    fn find_bigon(&self) -> Option<[usize; 2]> {
        let (faces, _) = self.faces();
        let edges = self.edge_map();
        for face in faces.iter().filter(|f| f.len() == 2) {
            let (d1, d2) = (face[0], face[1]);
            if d1.0 == d2.0 || self.label(d1) == self.label(d2) {
                continue;
            }
            let e_far = LinkDiagram::twin(&edges, self.label(d1), d1);
            let f_far = LinkDiagram::twin(&edges, self.label(d2), d2);
            let (ci, cj) = (&self.crossings[d1.0], &self.crossings[d2.0]);
            if ci.is_over(d1.1) == cj.is_over(e_far.1) && cj.is_over(d2.1) == ci.is_over(f_far.1) {
                return Some([d1.0, d2.0]);
            }
        }
        None
    }
}

/// Repeatedly removes kinks and bigons whose strand passes over at both
/// ends.
pub fn simplify(d: &LinkDiagram) -> LinkDiagram {
    let mut cur = d.clone();
    loop {
        if let Some(i) = cur.find_curl() {
            cur = cur.erased(&[i]);
            continue;
        }
        if let Some(pair) = cur.find_bigon() {
            cur = cur.erased(&pair);
            continue;
        }
        return cur;
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::parse_pd;
    use super::*;

    fn revalidate(d: &LinkDiagram) {
        LinkDiagram::new(d.crossings.clone(), d.free_loops).unwrap();
    }

    #[test]
    fn simplify_examples() {
        let u = simplify(&parse_pd(CURLED_UNKNOT).unwrap());
        assert_eq!((u.crossing_count(), u.component_count()), (0, 1));
        let u = simplify(&parse_pd(CLASP_UNKNOT).unwrap());
        assert_eq!((u.crossing_count(), u.component_count()), (0, 2));
        let t = parse_pd(TREFOIL).unwrap();
        assert_eq!(simplify(&t), t);
        let h = parse_pd(HOPF).unwrap();
        assert_eq!(simplify(&h), h);
    }

    #[test]
    fn insertions_stay_planar_and_simplify_back() {
        let t = parse_pd(FIGURE_EIGHT).unwrap();
        for site in curl_sites(&t) {
            let c = insert_curl(&t, site);
            revalidate(&c);
            assert_eq!(c.crossing_count(), 5);
            assert_eq!(c.component_count(), 1);
            assert_eq!(simplify(&c).crossing_count(), 4);
        }
        for site in clasp_sites(&t) {
            let c = insert_clasp(&t, site);
            revalidate(&c);
            assert_eq!(c.crossing_count(), 6);
            assert_eq!(c.component_count(), 1);
            assert_eq!(simplify(&c).crossing_count(), 4, "{site:?}");
        }
    }

    #[test]
    fn kink_on_a_free_circle() {
        let u = LinkDiagram::unknot();
        let c = insert_curl(&u, CurlSite::FreeLoop { flipped: true });
        revalidate(&c);
        assert_eq!(
            (c.crossing_count(), c.free_loops(), c.component_count()),
            (1, 0, 1)
        );
        assert_eq!(simplify(&c), LinkDiagram::unknot());
    }
}
