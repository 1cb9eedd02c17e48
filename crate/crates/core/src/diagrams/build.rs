//! Diagrams from braid words and Dowker–Thistlethwaite codes.

use super::{Crossing, DiagramError, LinkDiagram};

/// Closure of a braid on `strands` strands. Generator `i` crosses positions
/// `i` and `i + 1` (1-based) positively, `-i` negatively. Untouched strands
/// close up into free circles.
pub fn from_braid(strands: usize, word: &[i32]) -> Result<LinkDiagram, DiagramError> {
    let mut cur: Vec<u32> = (1..=strands as u32).collect();
    let mut touched = vec![false; strands];
    let mut next = strands as u32 + 1;
    let mut crossings = Vec::with_capacity(word.len());
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if i == 0 || i >= strands {
            return Err(DiagramError::BadBraid(g));
        }
        let (l, r) = (i - 1, i);
        touched[l] = true;
        touched[r] = true;
        let (a, b) = (cur[l], cur[r]);
        let (top_l, top_r) = (next, next + 1);
        next += 2;
        // ports run counterclockwise from the incoming understrand
        let edges = if g > 0 {
            [b, top_r, top_l, a]
        } else {
            [a, b, top_r, top_l]
        };
        crossings.push(Crossing::new(edges));
        cur[l] = top_l;
        cur[r] = top_r;
    }
    for c in &mut crossings {
        for e in &mut c.edges {
            if let Some(k) = cur.iter().position(|x| x == e) {
                if touched[k] {
                    *e = k as u32 + 1;
                }
            }
        }
    }
    let loops = touched.iter().filter(|t| !**t).count();
    LinkDiagram::new(crossings, loops)
}

/// Largest DT code accepted; realization tries every rotation system.
pub const MAX_DT_CROSSINGS: usize = 20;

/// Knot diagram from a DT code (the even partners of 1, 3, 5, ...). A
/// negative entry marks the even visit as the overpass. The planar
/// embedding is found by search, so which of the code's two mirror images
/// comes out is unspecified.
pub fn from_dt(code: &[i32]) -> Result<LinkDiagram, DiagramError> {
    let n = code.len();
    if n == 0 {
        return Ok(LinkDiagram::unknot());
    }
    if n > MAX_DT_CROSSINGS {
        return Err(DiagramError::BadDt(format!(
            "more than {MAX_DT_CROSSINGS} crossings"
        )));
    }
    let mut seen = vec![false; 2 * n + 1];
    for &a in code {
        let e = a.unsigned_abs() as usize;
        if e % 2 == 1 || e < 2 || e > 2 * n || seen[e] {
            return Err(DiagramError::BadDt(format!("bad entry {a}")));
        }
        seen[e] = true;
    }
    let m = 2 * n as u32;
    let after = |v: u32| v % m + 1;
    // visit v is entered along edge v and left along edge v + 1
    let layout: Vec<(u32, u32)> = code
        .iter()
        .enumerate()
        .map(|(k, &a)| {
            let odd = 2 * k as u32 + 1;
            let even = a.unsigned_abs();
            if a > 0 {
                (even, odd)
            } else {
                (odd, even)
            }
        })
        .collect();
    for mask in 0u32..(1 << n) {
        let crossings: Vec<Crossing> = layout
            .iter()
            .enumerate()
            .map(|(k, &(under, over))| {
                let (u_in, u_out) = (under, after(under));
                let (o_in, o_out) = (over, after(over));
                if mask >> k & 1 == 0 {
                    Crossing::new([u_in, o_in, u_out, o_out])
                } else {
                    Crossing::new([u_in, o_out, u_out, o_in])
                }
            })
            .collect();
        if let Ok(d) = LinkDiagram::new(crossings, 0) {
            return Ok(d);
        }
    }
    Err(DiagramError::BadDt("no planar realization".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braids() {
        let t = from_braid(2, &[1, 1, 1]).unwrap();
        assert_eq!((t.crossing_count(), t.component_count()), (3, 1));
        assert_eq!(from_braid(2, &[1, 1]).unwrap().component_count(), 2);
        assert_eq!(from_braid(3, &[1, -2, 1, -2]).unwrap().component_count(), 1);
        assert_eq!(from_braid(3, &[1]).unwrap().component_count(), 2);
        assert_eq!(from_braid(2, &[2]), Err(DiagramError::BadBraid(2)));
        assert_eq!(from_braid(2, &[0]), Err(DiagramError::BadBraid(0)));
    }

    #[test]
    fn dt_codes() {
        let t = from_dt(&[4, 6, 2]).unwrap();
        assert_eq!((t.crossing_count(), t.component_count()), (3, 1));
        assert!(t.gauss_sequence().is_alternating());
        let f = from_dt(&[4, 6, 8, 2]).unwrap();
        assert!(f.gauss_sequence().is_alternating());
        assert!(from_dt(&[4, 6, 3]).is_err());
        assert!(from_dt(&[4, 4, 2]).is_err());
        assert_eq!(from_dt(&[]).unwrap(), LinkDiagram::unknot());
    }
}
