//! Memoized skein expansion of the Q polynomial.
//!
//! Each node fixes a traversal, collects the crossings that keep the diagram
//! from being descending and switches them one at a time. Switching one
//! crossing relates the two diagrams through the smoothings at that crossing,
//! so `Q(D)` telescopes into smoothed diagrams (fewer crossings) plus the
//! value of the resulting unlink.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::moves::simplify;
use super::surgery::Smoothing;
use super::{DiagramError, LinkDiagram};
use crate::laurent::LaurentPoly;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Q of the `k`-component unlink, `(2z⁻¹ − 1)^(k−1)`.
pub fn unlink_value(k: usize) -> LaurentPoly {
    let mu = LaurentPoly::from_terms([(-1, 2), (0, -1)]);
    mu.pow(k.saturating_sub(1) as u32)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QResult {
    pub poly: LaurentPoly,
    /// Diagrams expanded (memo misses).
    pub nodes_expanded: u64,
    pub cache_hits: u64,
}

/// A skein evaluator whose memo table persists across calls.
#[derive(Debug)]
pub struct QEngine {
    memo: HashMap<Vec<u32>, LaurentPoly>,
    budget: u64,
    nodes: u64,
    hits: u64,
}

impl Default for QEngine {
    fn default() -> Self {
        Self::new(DEFAULT_NODE_BUDGET)
    }
}

impl QEngine {
    pub fn new(budget: u64) -> Self {
        Self {
            memo: HashMap::new(),
            budget,
            nodes: 0,
            hits: 0,
        }
    }

    pub fn nodes_expanded(&self) -> u64 {
        self.nodes
    }

    pub fn cache_hits(&self) -> u64 {
        self.hits
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn q(&mut self, d: &LinkDiagram) -> Result<LaurentPoly, DiagramError> {
        self.eval(d)
    }

    fn eval(&mut self, d: &LinkDiagram) -> Result<LaurentPoly, DiagramError> {
        let d = simplify(d);
        if d.crossings.is_empty() {
            return Ok(unlink_value(d.free_loops.max(1)));
        }
        let pieces = d.pieces();
        if pieces.len() == 1 && d.free_loops == 0 {
            return self.eval_connected(&d);
        }
        // split unions multiply, with one factor of the unlink value per
        // extra piece
        let mut acc = unlink_value(pieces.len() + d.free_loops);
        for members in &pieces {
            let sub =
                LinkDiagram::new_unchecked(members.iter().map(|&i| d.crossings[i]).collect(), 0);
            acc = &acc * &self.eval_connected(&sub)?;
        }
        Ok(acc)
    }

    fn eval_connected(&mut self, d: &LinkDiagram) -> Result<LaurentPoly, DiagramError> {
        let key = canonical_key(d);
        if let Some(q) = self.memo.get(&key) {
            self.hits += 1;
            return Ok(q.clone());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(DiagramError::BudgetExceeded {
                budget: self.budget,
            });
        }
        let z = LaurentPoly::z();
        let mut acc = LaurentPoly::zero();
        let mut positive = true;
        let mut cur = d.clone();
        for v in descending_defect(d) {
            let a = self.eval(&cur.smoothed(v, Smoothing::A))?;
            let b = self.eval(&cur.smoothed(v, Smoothing::B))?;
            let term = &z * &(&a + &b);
            acc = if positive { &acc + &term } else { &acc - &term };
            positive = !positive;
            cur = cur.switched(&[v]);
        }
        let tail = unlink_value(d.component_count());
        acc = if positive { &acc + &tail } else { &acc - &tail };
        self.memo.insert(key, acc.clone());
        Ok(acc)
    }
}

pub fn q_polynomial(d: &LinkDiagram) -> Result<QResult, DiagramError> {
    q_polynomial_with_budget(d, DEFAULT_NODE_BUDGET)
}

pub fn q_polynomial_with_budget(d: &LinkDiagram, budget: u64) -> Result<QResult, DiagramError> {
    let mut engine = QEngine::new(budget);
    let poly = engine.q(d)?;
    Ok(QResult {
        poly,
        nodes_expanded: engine.nodes,
        cache_hits: engine.hits,
    })
}

/// Crossings to switch so that the diagram becomes descending for the
/// cheapest traversal found: per component the best basepoint and
/// direction, then the best stacking order of the components (all orders
/// when there are at most five). The ascending alternative is tried too.
fn descending_defect(d: &LinkDiagram) -> Vec<usize> {
    let seqs = d.gauss_sequence().components;
    let mut comp_of: HashMap<usize, Vec<(usize, bool)>> = HashMap::new();
    for (k, s) in seqs.iter().enumerate() {
        for &(i, over) in s {
            comp_of.entry(i).or_default().push((k, over));
        }
    }
    let mut best: Option<Vec<usize>> = None;
    for want_over in [true, false] {
        let mut bad = Vec::new();
        for s in &seqs {
            bad.extend(best_self_defect(s, &comp_of, want_over));
        }
        let mixed: Vec<(usize, usize, usize)> = comp_of
            .iter()
            .filter(|(_, v)| v[0].0 != v[1].0)
            .map(|(&i, v)| {
                let (over, under) = if v[0].1 {
                    (v[0].0, v[1].0)
                } else {
                    (v[1].0, v[0].0)
                };
                (i, over, under)
            })
            .collect();
        bad.extend(best_stacking(seqs.len(), &mixed, want_over));
        bad.sort_unstable();
        if best.as_ref().is_none_or(|b| bad.len() < b.len()) {
            best = Some(bad);
        }
    }
    best.unwrap_or_default()
}

fn best_self_defect(
    s: &[(usize, bool)],
    comp_of: &HashMap<usize, Vec<(usize, bool)>>,
    want_over: bool,
) -> Vec<usize> {
    let n = s.len();
    let is_self = |i: usize| comp_of[&i][0].0 == comp_of[&i][1].0;
    let mut best: Option<Vec<usize>> = None;
    for start in 0..n {
        for step in [1isize, -1] {
            let mut seen = std::collections::HashSet::new();
            let mut bad = Vec::new();
            for k in 0..n {
                let idx = (start as isize + step * k as isize).rem_euclid(n as isize) as usize;
                let (i, over) = s[idx];
                if is_self(i) && seen.insert(i) && over != want_over {
                    bad.push(i);
                }
            }
            if best.as_ref().is_none_or(|b| bad.len() < b.len()) {
                best = Some(bad);
            }
        }
    }
    best.unwrap_or_default()
}

fn best_stacking(k: usize, mixed: &[(usize, usize, usize)], want_over: bool) -> Vec<usize> {
    let cost = |rank: &[usize]| -> Vec<usize> {
        mixed
            .iter()
            .filter(|&&(_, over, under)| (rank[over] < rank[under]) != want_over)
            .map(|&(i, _, _)| i)
            .collect()
    };
    let identity: Vec<usize> = (0..k).collect();
    if k > 5 {
        return cost(&identity);
    }
    let mut best = cost(&identity);
    let mut perm = identity;
    while next_permutation(&mut perm) {
        let c = cost(&perm);
        if c.len() < best.len() {
            best = c;
        }
    }
    best
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n)
        .rev()
        .find(|&j| p[j] > p[i])
        .expect("a larger element exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Least BFS encoding over all root darts, both rotation senses and both
/// crossing states. Two connected diagrams get the same key exactly when
/// they agree up to relabeling, planar reflection and mirroring, all of
/// which preserve Q.
pub(crate) fn canonical_key(d: &LinkDiagram) -> Vec<u32> {
    let n = d.crossings.len();
    let edges = d.edge_map();
    let mut labels: Vec<u32> = edges.keys().copied().collect();
    labels.sort_unstable();
    let dense: HashMap<u32, usize> = labels.iter().enumerate().map(|(k, &l)| (l, k)).collect();
    let mut twin = vec![[(0usize, 0usize); 4]; n];
    let mut edge_of = vec![[0usize; 4]; n];
    for i in 0..n {
        for p in 0..4 {
            let l = d.crossings[i].edges[p];
            twin[i][p] = LinkDiagram::twin(&edges, l, (i, p));
            edge_of[i][p] = dense[&l];
        }
    }
    let over0: Vec<[bool; 4]> = d
        .crossings
        .iter()
        .map(|c| [c.is_over(0), c.is_over(1), c.is_over(2), c.is_over(3)])
        .collect();

    let mut best: Option<Vec<u32>> = None;
    let mut cross_id = vec![u32::MAX; n];
    let mut entry = vec![0usize; n];
    let mut edge_id = vec![u32::MAX; labels.len()];
    let mut code = Vec::with_capacity(5 * n);
    for i0 in 0..n {
        for p0 in 0..4 {
            for reflect in [false, true] {
                for mirror in [false, true] {
                    cross_id.iter_mut().for_each(|x| *x = u32::MAX);
                    edge_id.iter_mut().for_each(|x| *x = u32::MAX);
                    code.clear();
                    let mut next_cross = 1;
                    let mut next_edge = 0;
                    cross_id[i0] = 0;
                    entry[i0] = p0;
                    let mut queue = VecDeque::from([i0]);
                    let mut worse = false;
                    while let Some(i) = queue.pop_front() {
                        code.push(u32::from(over0[i][entry[i]] ^ mirror));
                        for k in 0..4 {
                            let p = if reflect {
                                (entry[i] + 4 - k) % 4
                            } else {
                                (entry[i] + k) % 4
                            };
                            let e = edge_of[i][p];
                            if edge_id[e] == u32::MAX {
                                edge_id[e] = next_edge;
                                next_edge += 1;
                            }
                            code.push(edge_id[e]);
                            let (j, q) = twin[i][p];
                            if cross_id[j] == u32::MAX {
                                cross_id[j] = next_cross;
                                next_cross += 1;
                                entry[j] = q;
                                queue.push_back(j);
                            }
                        }
                        if let Some(b) = &best {
                            let m = code.len();
                            if code[..] > b[..m] {
                                worse = true;
                                break;
                            }
                        }
                    }
                    if !worse && best.as_ref().is_none_or(|b| code < *b) {
                        best = Some(code.clone());
                    }
                }
            }
        }
    }
    best.unwrap_or_default()
}

/// Exact `Q(−1)` and the exponent `m` with `Q(−1) = (−3)^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinusOneValue {
    pub value: BigInt,
    pub exponent: u32,
}

pub fn q_at_minus_one(q: &LaurentPoly) -> Result<MinusOneValue, DiagramError> {
    let v = q.eval_int(-1).expect("-1 is not a pole");
    if !v.is_integer() {
        return Err(DiagramError::NonIntegralValue {
            value: v.to_string(),
        });
    }
    let value = v.to_integer();
    let not_power = || DiagramError::NotPowerOfMinus3 {
        value: value.to_string(),
    };
    let three = BigInt::from(-3);
    let mut rest = value.clone();
    let mut exponent = 0;
    while !rest.is_one() {
        if rest.is_zero() || !(&rest % &three).is_zero() {
            return Err(not_power());
        }
        rest /= &three;
        exponent += 1;
    }
    Ok(MinusOneValue { value, exponent })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::parse_pd;
    use super::*;

    fn q(s: &str) -> LaurentPoly {
        q_polynomial(&parse_pd(s).unwrap()).unwrap().poly
    }

    fn poly(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(q(""), LaurentPoly::one());
        assert_eq!(q("O O"), poly("2z^-1-1"));
        assert_eq!(q(CURLED_UNKNOT), LaurentPoly::one());
        assert_eq!(q(CLASP_UNKNOT), poly("2z^-1-1"));
        assert_eq!(q(TREFOIL), poly("2z^2+2z-3"));
        assert_eq!(q(FIGURE_EIGHT), poly("2z^3+4z^2-2z-3"));
        // Hopf link
        assert_eq!(q(HOPF), poly("-2z^-1+1+2z"));
    }

    #[test]
    fn mirror_and_split_union() {
        let t = parse_pd(TREFOIL).unwrap();
        let qt = q_polynomial(&t).unwrap().poly;
        assert_eq!(q_polynomial(&t.mirror()).unwrap().poly, qt);
        let two = parse_pd(
            "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2) X(11,15,12,14) X(13,11,14,16) X(15,13,16,12)",
        )
        .unwrap();
        assert_eq!(
            q_polynomial(&two).unwrap().poly,
            &(&qt * &qt) * &unlink_value(2)
        );
    }

    #[test]
    fn keys_ignore_labels_and_mirroring() {
        let a = parse_pd(TREFOIL).unwrap();
        let b = parse_pd("X(10,50,20,40) X(30,10,40,60) X(50,30,60,20)").unwrap();
        assert_eq!(canonical_key(&a), canonical_key(&b));
        assert_eq!(canonical_key(&a), canonical_key(&a.mirror()));
        assert_ne!(
            canonical_key(&a),
            canonical_key(&parse_pd(FIGURE_EIGHT).unwrap())
        );
    }

    #[test]
    fn budget_is_enforced() {
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        assert_eq!(
            q_polynomial_with_budget(&d, 1),
            Err(DiagramError::BudgetExceeded { budget: 1 })
        );
    }

    #[test]
    fn minus_one() {
        let m = q_at_minus_one(&poly("2z^-1-1")).unwrap();
        assert_eq!((m.value, m.exponent), (BigInt::from(-3), 1));
        assert_eq!(q_at_minus_one(&LaurentPoly::one()).unwrap().exponent, 0);
        assert_eq!(q_at_minus_one(&poly("9")).unwrap().exponent, 2);
        assert!(matches!(
            q_at_minus_one(&LaurentPoly::z()),
            Err(DiagramError::NotPowerOfMinus3 { .. })
        ));
        assert!(q_at_minus_one(&poly("-9")).is_err());
        assert!(q_at_minus_one(&LaurentPoly::zero()).is_err());
    }
}
