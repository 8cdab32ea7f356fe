//! The ε-separation oracle and its derivatives: separability tests with
//! exact witnesses, conflict sparsification, hiding-set detection, and the
//! brute-force reference oracles used by the acceptance suite.

use crate::exactlp::{self, LinearProgram, LpStatus, Rel, Sense};
use crate::geometry::{self, FacetList, Inequality, Point, PointSet};
use crate::rat::Rat;
use std::collections::HashMap;

/// Stateless ε-separation oracle for a fixed feasible set X.
///
/// An inequality `a·x <= b` with `a ∈ [-1,1]^d`, `b ∈ [-dρ_X, dρ_X]`
/// separates a set F from X at margin ε when it is valid on X and every
/// point of F violates it by at least ε.
#[derive(Clone, Debug)]
pub struct SeparationOracle {
    x: PointSet,
    eps: Rat,
    rho_x: Rat,
    b_box: Rat,
}

impl SeparationOracle {
    pub fn new(x: &PointSet, eps: &Rat) -> SeparationOracle {
        assert!(eps.is_positive(), "eps must be positive");
        let rho_x = geometry::linf_radius(x);
        let b_box = Rat::from_int(x.dim() as i64) * &rho_x;
        SeparationOracle {
            x: x.clone(),
            eps: eps.clone(),
            rho_x,
            b_box,
        }
    }

    pub fn x(&self) -> &PointSet {
        &self.x
    }

    pub fn eps(&self) -> &Rat {
        &self.eps
    }

    pub fn rho_x(&self) -> &Rat {
        &self.rho_x
    }

    /// Decides whether `f` and X are ε-separable; returns a witness
    /// inequality with the Eq.-(2)-style variable boxes when they are.
    pub fn separates(&self, f: &[Point]) -> Option<Inequality> {
        let d = self.x.dim();
        if f.is_empty() {
            return Some(Inequality::new(vec![Rat::zero(); d], Rat::zero()));
        }
        let mut lp = LinearProgram::new(d + 1, Sense::Min);
        for j in 0..d {
            lp.bounds[j] = (Some(-Rat::one()), Some(Rat::one()));
        }
        lp.bounds[d] = (Some(-self.b_box.clone()), Some(self.b_box.clone()));
        for p in self.x.points() {
            let mut coeffs: Vec<(usize, Rat)> = p
                .0
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(j, &v)| (j, Rat::from_int(v)))
                .collect();
            coeffs.push((d, -Rat::one()));
            lp.add_row(coeffs, Rel::Le, Rat::zero());
        }
        for p in f {
            let mut coeffs: Vec<(usize, Rat)> = p
                .0
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(j, &v)| (j, Rat::from_int(v)))
                .collect();
            coeffs.push((d, -Rat::one()));
            lp.add_row(coeffs, Rel::Ge, self.eps.clone());
        }
        let sol = exactlp::solve(&lp);
        match sol.status {
            LpStatus::Optimal => {
                let a = sol.primal[..d].to_vec();
                let b = sol.primal[d].clone();
                let ineq = Inequality::new(a, b);
                debug_assert!(self.check_witness(&ineq, f));
                Some(ineq)
            }
            LpStatus::Infeasible => None,
            LpStatus::Unbounded => unreachable!("separation LP is boxed"),
        }
    }

    /// Exact re-check: valid on all of X, margin ε on all of `f`.
    pub fn check_witness(&self, ineq: &Inequality, f: &[Point]) -> bool {
        self.x.points().iter().all(|p| ineq.satisfied_by(p))
            && f.iter().all(|p| ineq.separates_with_margin(p, &self.eps))
    }
}

/// Free-function form of the oracle.
pub fn eps_separable(x: &PointSet, f: &[Point], eps: &Rat) -> Option<Inequality> {
    SeparationOracle::new(x, eps).separates(f)
}

/// A set of points that cannot be ε-separated from X.
#[derive(Clone, Debug)]
pub struct ConflictCertificate {
    pub members: Vec<Point>,
    pub minimal: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum SeparabilityError {
    #[error("sparsify_conflict called on a separable set")]
    NotAConflict,
}

/// Shrinks an inseparable set to an inclusion-minimal conflict using the
/// add-then-remove sweep: points are added in input order until the prefix
/// is inseparable, then each member is dropped iff the rest remains
/// inseparable. Deterministic by construction.
pub fn sparsify_conflict(
    oracle: &SeparationOracle,
    f: &[Point],
) -> Result<ConflictCertificate, SeparabilityError> {
    let mut prefix: Vec<Point> = Vec::new();
    let mut inseparable = false;
    for p in f {
        prefix.push(p.clone());
        if oracle.separates(&prefix).is_none() {
            inseparable = true;
            break;
        }
    }
    if !inseparable {
        return Err(SeparabilityError::NotAConflict);
    }
    let mut members = prefix;
    let mut i = 0;
    while i < members.len() {
        let mut probe = members.clone();
        probe.remove(i);
        if oracle.separates(&probe).is_none() {
            members = probe;
        } else {
            i += 1;
        }
    }
    debug_assert!(oracle.separates(&members).is_none());
    Ok(ConflictCertificate {
        members,
        minimal: true,
    })
}

/// All unordered pairs `{y1, y2} ⊆ Y` whose segment meets `conv(X)`, as
/// index pairs into `y`. These are exactly the hiding sets of size two:
/// each such pair makes a valid cut because an inequality valid for X that
/// cuts both endpoints with margin ε would cut the whole segment, including
/// its point inside `conv(X)`.
pub fn hiding_pair_indices(y: &PointSet, hull_x: &FacetList) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..y.len() {
        for j in i + 1..y.len() {
            if geometry::segment_hits_hull(&y.points()[i], &y.points()[j], hull_x) {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Point form of [`hiding_pair_indices`].
pub fn hiding_pairs(x: &PointSet, y: &PointSet) -> Vec<(Point, Point)> {
    let hull = geometry::convex_hull_facets(x);
    hiding_pair_indices(y, &hull)
        .into_iter()
        .map(|(i, j)| (y.points()[i].clone(), y.points()[j].clone()))
        .collect()
}

/// Maximum cardinality of a Y-hiding set, via max clique over the
/// hiding-pair graph. Exponential; intended for small Y.
pub fn max_hiding_set_bruteforce(x: &PointSet, y: &PointSet) -> usize {
    let hull = geometry::convex_hull_facets(x);
    let pairs = hiding_pair_indices(y, &hull);
    let n = y.len();
    if n == 0 {
        return 0;
    }
    let mut adj = vec![vec![false; n]; n];
    for (i, j) in pairs {
        adj[i][j] = true;
        adj[j][i] = true;
    }
    let nodes: Vec<usize> = (0..n).collect();
    let mut best = 1;
    let mut clique: Vec<usize> = Vec::new();
    fn extend(
        nodes: &[usize],
        start: usize,
        adj: &[Vec<bool>],
        clique: &mut Vec<usize>,
        best: &mut usize,
    ) {
        if clique.len() > *best {
            *best = clique.len();
        }
        for k in start..nodes.len() {
            let v = nodes[k];
            if clique.len() + (nodes.len() - k) <= *best {
                break;
            }
            if clique.iter().all(|&u| adj[u][v]) {
                clique.push(v);
                extend(nodes, k + 1, adj, clique, best);
                clique.pop();
            }
        }
    }
    extend(&nodes, 0, &adj, &mut clique, &mut best);
    best
}

/// Minimum number of ε-separable subsets of Y covering Y, by exhaustive
/// search with memoized separability of canonical subsets. The independent
/// reference oracle for all three models; exponential, use for small Y only.
pub fn rc_bruteforce(x: &PointSet, y: &PointSet, eps: &Rat) -> Option<usize> {
    let n = y.len();
    assert!(n <= 20, "brute-force oracle limited to small Y");
    if n == 0 {
        return Some(0);
    }
    let oracle = SeparationOracle::new(x, eps);
    let pts = y.points();
    let mut sep_cache: HashMap<u32, bool> = HashMap::new();
    let mut is_sep = move |mask: u32| -> bool {
        if let Some(&v) = sep_cache.get(&mask) {
            return v;
        }
        let subset: Vec<Point> = (0..n)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| pts[i].clone())
            .collect();
        let v = oracle.separates(&subset).is_some();
        sep_cache.insert(mask, v);
        v
    };
    // Any singleton that is not separable means no cover exists at this eps.
    for i in 0..n {
        if !is_sep(1 << i) {
            return None;
        }
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut memo: HashMap<u32, usize> = HashMap::new();
    memo.insert(0, 0);
    fn cover(
        mask: u32,
        memo: &mut HashMap<u32, usize>,
        is_sep: &mut dyn FnMut(u32) -> bool,
    ) -> usize {
        if let Some(&v) = memo.get(&mask) {
            return v;
        }
        let first = mask.trailing_zeros();
        let rest = mask & !(1u32 << first);
        // submasks of `rest`, each unioned with `first`
        let mut best = usize::MAX;
        let mut s = rest;
        loop {
            let cand = s | (1 << first);
            if is_sep(cand) {
                let sub = cover(mask & !cand, memo, is_sep);
                if sub + 1 < best {
                    best = sub + 1;
                }
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & rest;
        }
        memo.insert(mask, best);
        best
    }
    Some(cover(full, &mut memo, &mut is_sep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    fn pset(dim: usize, rows: &[&[i64]]) -> PointSet {
        PointSet::from_rows(dim, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn pts(rows: &[&[i64]]) -> Vec<Point> {
        rows.iter().map(|r| Point(r.to_vec())).collect()
    }

    fn unit_square() -> PointSet {
        pset(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
    }

    /// The 12 infeasible points at l-infinity distance 1 from the unit square.
    pub fn square_ring() -> PointSet {
        let x = unit_square();
        let mut rows = Vec::new();
        for a in -1..=2i64 {
            for b in -1..=2i64 {
                let p = Point(vec![a, b]);
                if !x.contains(&p) {
                    rows.push(vec![a, b]);
                }
            }
        }
        PointSet::from_rows(2, rows).unwrap()
    }

    #[test]
    fn separable_examples() {
        let origin = pset(1, &[&[0]]);
        let w = eps_separable(&origin, &pts(&[&[1]]), &ratio(1, 2));
        assert!(w.is_some());

        assert!(eps_separable(&origin, &pts(&[&[-1], &[1]]), &ratio(1, 1000)).is_none());

        let sq = unit_square();
        let w = eps_separable(&sq, &pts(&[&[2, 0], &[2, 1]]), &ratio(1, 1000));
        assert!(w.is_some());
    }

    #[test]
    fn sparsify_examples() {
        let origin = pset(1, &[&[0]]);
        let oracle = SeparationOracle::new(&origin, &ratio(1, 1000));
        let cert = sparsify_conflict(&oracle, &pts(&[&[-1], &[1]])).unwrap();
        assert_eq!(cert.members.len(), 2);
        assert!(cert.minimal);

        // whole l1-neighborhood of the square is a conflict; the sweep must
        // return an inclusion-minimal sub-conflict
        let sq = unit_square();
        let oracle = SeparationOracle::new(&sq, &ratio(1, 1000));
        let y = geometry::l1_neighborhood(&sq, 1);
        let cert = sparsify_conflict(&oracle, y.points()).unwrap();
        assert!(cert.members.len() >= 2);
        assert!(oracle.separates(&cert.members).is_none());
        for i in 0..cert.members.len() {
            let mut probe = cert.members.clone();
            probe.remove(i);
            assert!(
                oracle.separates(&probe).is_some(),
                "conflict not minimal: {probe:?}"
            );
        }

        // precondition violation
        assert!(sparsify_conflict(&oracle, &pts(&[&[2, 0]])).is_err());
    }

    #[test]
    fn hiding_pairs_examples() {
        let origin = pset(1, &[&[0]]);
        let y = pset(1, &[&[-1], &[1]]);
        let pairs = hiding_pairs(&origin, &y);
        assert_eq!(pairs.len(), 1);

        // every hiding pair is a conflict (correctness of hiding-set cuts)
        let sq = unit_square();
        let ring = square_ring();
        let hull = geometry::convex_hull_facets(&sq);
        let pairs = hiding_pair_indices(&ring, &hull);
        assert!(!pairs.is_empty());
        let oracle = SeparationOracle::new(&sq, &ratio(1, 1000));
        for (i, j) in &pairs {
            let f = vec![ring.points()[*i].clone(), ring.points()[*j].clone()];
            assert!(oracle.separates(&f).is_none(), "hiding pair separable: {f:?}");
        }

        // no straddling pairs
        let tri = pset(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        let y = pset(2, &[&[2, 0], &[2, 1]]);
        assert!(hiding_pairs(&tri, &y).is_empty());
    }

    #[test]
    fn hiding_pairs_on_lower_dimensional_x() {
        // X on a line in Z^2: only the collinear straddling pair qualifies
        let x = pset(2, &[&[0, 0], &[1, 0]]);
        let y = pset(2, &[&[-1, 0], &[2, 0], &[0, 1], &[1, 1]]);
        let pairs = hiding_pairs(&x, &y);
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0], (Point(vec![-1, 0]), Point(vec![2, 0])));
    }

    #[test]
    fn max_hiding_examples() {
        let sq = unit_square();
        assert_eq!(max_hiding_set_bruteforce(&sq, &square_ring()), 2);

        let origin = pset(1, &[&[0]]);
        assert_eq!(
            max_hiding_set_bruteforce(&origin, &pset(1, &[&[-1], &[1]])),
            2
        );

        // {(-1,1),(1,-1),(1,1)} is pairwise straddling for the simplex: the
        // segments pass through (0,0), (0,1) and (1,0) respectively.
        let tri = pset(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        let y = geometry::l1_neighborhood(&tri, 1);
        assert_eq!(max_hiding_set_bruteforce(&tri, &y), 3);
    }

    #[test]
    fn rc_bruteforce_examples() {
        let eps = ratio(1, 1000);
        let origin = pset(1, &[&[0]]);
        assert_eq!(
            rc_bruteforce(&origin, &pset(1, &[&[-1], &[1]]), &eps),
            Some(2)
        );
        let empty = PointSet::new(1, vec![]).unwrap();
        assert_eq!(rc_bruteforce(&origin, &empty, &eps), Some(0));

        // hiding-set lower bound on a handful of instances
        for (x, y) in [
            (unit_square(), geometry::l1_neighborhood(&unit_square(), 1)),
            (
                pset(2, &[&[0, 0], &[1, 0], &[0, 1]]),
                geometry::l1_neighborhood(&pset(2, &[&[0, 0], &[1, 0], &[0, 1]]), 1),
            ),
        ] {
            let rc = rc_bruteforce(&x, &y, &eps).unwrap();
            let h = max_hiding_set_bruteforce(&x, &y);
            assert!(h <= rc, "hiding bound violated: H={h} rc={rc}");
        }
    }

    #[test]
    fn monotonicity_of_inseparability() {
        let eps = ratio(1, 1000);
        let sq = unit_square();
        let oracle = SeparationOracle::new(&sq, &eps);
        let ring = square_ring();
        // if F is inseparable then every superset is
        let base = pts(&[&[-1, 1], &[2, 0]]);
        assert!(oracle.separates(&base).is_none());
        for extra in ring.points() {
            let mut f = base.clone();
            if !f.contains(extra) {
                f.push(extra.clone());
            }
            assert!(oracle.separates(&f).is_none());
        }
    }
}
