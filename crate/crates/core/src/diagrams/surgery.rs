//! Local rewiring of a diagram: drop some crossings and reconnect their
//! ports in pairs. Smoothing, switching and Reidemeister reductions are all
//! expressed through this.

use std::collections::{HashMap, HashSet};

use super::{Dart, LinkDiagram};

/// The two smoothings of a crossing; `A` joins ports 0–1 and 2–3, `B`
/// joins 0–3 and 1–2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Smoothing {
    A,
    B,
}

impl LinkDiagram {
    /// Removes `remove` and joins their ports as listed in `links` (every
    /// port of a removed crossing must appear exactly once). Strands that
    /// close up entirely inside the removed set become free circles.
    pub(crate) fn surgery(&self, remove: &[usize], links: &[(Dart, Dart)]) -> LinkDiagram {
        let edges = self.edge_map();
        let removed: HashSet<usize> = remove.iter().copied().collect();
        let mut partner: HashMap<Dart, Dart> = HashMap::with_capacity(links.len() * 2);
        for &(a, b) in links {
            partner.insert(a, b);
            partner.insert(b, a);
        }
        debug_assert_eq!(
            partner.len(),
            4 * removed.len(),
            "every removed port needs a partner"
        );

        let mut crossings = self.crossings.clone();
        let mut visited: HashSet<Dart> = HashSet::new();
        let darts: Vec<Dart> = remove
            .iter()
            .flat_map(|&i| (0..4).map(move |p| (i, p)))
            .collect();

        for &d in &darts {
            if visited.contains(&d) {
                continue;
            }
            let outside = LinkDiagram::twin(&edges, self.label(d), d);
            if removed.contains(&outside.0) {
                continue;
            }
            visited.insert(d);
            let keep = self.label(d);
            let mut cur = d;
            loop {
                let n = partner[&cur];
                visited.insert(n);
                let t = LinkDiagram::twin(&edges, self.label(n), n);
                if !removed.contains(&t.0) {
                    crossings[t.0].edges[t.1] = keep;
                    break;
                }
                visited.insert(t);
                cur = t;
            }
        }

        let mut loops = self.free_loops;
        for &d in &darts {
            if visited.contains(&d) {
                continue;
            }
            loops += 1;
            let mut cur = d;
            while visited.insert(cur) {
                let n = partner[&cur];
                visited.insert(n);
                cur = LinkDiagram::twin(&edges, self.label(n), n);
            }
        }

        let crossings = crossings
            .into_iter()
            .enumerate()
            .filter(|(i, _)| !removed.contains(i))
            .map(|(_, c)| c)
            .collect();
        LinkDiagram::new_unchecked(crossings, loops)
    }

    pub(crate) fn smoothed(&self, i: usize, s: Smoothing) -> LinkDiagram {
        let links = match s {
            Smoothing::A => [((i, 0), (i, 1)), ((i, 2), (i, 3))],
            Smoothing::B => [((i, 0), (i, 3)), ((i, 1), (i, 2))],
        };
        self.surgery(&[i], &links)
    }

    /// Removes crossings, letting both strands run straight through each.
    pub(crate) fn erased(&self, which: &[usize]) -> LinkDiagram {
        let links: Vec<(Dart, Dart)> = which
            .iter()
            .flat_map(|&i| [((i, 0), (i, 2)), ((i, 1), (i, 3))])
            .collect();
        self.surgery(which, &links)
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::parse_pd;
    use super::*;

    #[test]
    fn smoothing_a_curl() {
        let d = parse_pd(CURLED_UNKNOT).unwrap();
        let a = d.smoothed(0, Smoothing::A);
        assert_eq!((a.crossing_count(), a.free_loops()), (0, 2));
        let b = d.smoothed(0, Smoothing::B);
        assert_eq!((b.crossing_count(), b.free_loops()), (0, 1));
    }

    #[test]
    fn smoothing_keeps_labels_paired() {
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        for i in 0..4 {
            for s in [Smoothing::A, Smoothing::B] {
                let r = d.smoothed(i, s);
                assert_eq!(r.crossing_count(), 3);
                LinkDiagram::new(r.crossings.clone(), r.free_loops).unwrap();
            }
        }
    }

    #[test]
    fn erasing_the_hopf_clasp() {
        let d = parse_pd(HOPF).unwrap();
        let e = d.erased(&[0, 1]);
        assert_eq!((e.crossing_count(), e.free_loops()), (0, 2));
        let t = parse_pd(TREFOIL).unwrap().erased(&[0]);
        assert_eq!(t.crossing_count(), 2);
        assert_eq!(t.component_count(), 1);
    }
}
