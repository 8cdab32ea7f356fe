//! Exact rational polyhedral primitives in low dimension: convex hulls as
//! facet lists, lattice-convexity checks, ℓ1 neighborhoods and segment–hull
//! intersection.
//!
//! Hulls are computed by gift wrapping with exact pivots. Degenerate
//! (non-simplicial) facets need no perturbation: the ridges of a facet are
//! obtained by recursively wrapping the facet's own vertex set one dimension
//! down, and each pivot is an exact argmin over a two-dimensional quotient of
//! the hyperplane pencil through a ridge.

use crate::linalg;
use crate::rat::{dot, Rat};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// A lattice point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point(pub Vec<i64>);

impl Point {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn to_rats(&self) -> Vec<Rat> {
        self.0.iter().map(|&c| Rat::from_int(c)).collect()
    }

    pub fn l1_distance(&self, other: &Point) -> i64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .sum()
    }

    pub fn linf_norm(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }
}

impl std::fmt::Debug for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<i64>> for Point {
    fn from(v: Vec<i64>) -> Point {
        Point(v)
    }
}

/// An ordered set of distinct lattice points of a common dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
}

#[derive(Debug, thiserror::Error)]
pub enum GeometryError {
    #[error("point set is empty")]
    Empty,
    #[error("point {0:?} has dimension {1}, expected {2}")]
    DimensionMismatch(Point, usize, usize),
    #[error("duplicate point {0:?}")]
    Duplicate(Point),
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<PointSet, GeometryError> {
        let mut seen = std::collections::HashSet::new();
        for p in &points {
            if p.dim() != dim {
                return Err(GeometryError::DimensionMismatch(p.clone(), p.dim(), dim));
            }
            if !seen.insert(p.clone()) {
                return Err(GeometryError::Duplicate(p.clone()));
            }
        }
        Ok(PointSet { dim, points })
    }

    pub fn from_rows(dim: usize, rows: Vec<Vec<i64>>) -> Result<PointSet, GeometryError> {
        PointSet::new(dim, rows.into_iter().map(Point).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.contains(p)
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    pub fn is_disjoint_from(&self, other: &PointSet) -> bool {
        let set: std::collections::HashSet<_> = other.points.iter().collect();
        self.points.iter().all(|p| !set.contains(p))
    }

    /// Coordinate-wise bounding box, or `None` for the empty set.
    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        if self.points.is_empty() {
            return None;
        }
        let mut lo = self.points[0].0.clone();
        let mut hi = lo.clone();
        for p in &self.points[1..] {
            for j in 0..self.dim {
                lo[j] = lo[j].min(p.0[j]);
                hi[j] = hi[j].max(p.0[j]);
            }
        }
        Some((Point(lo), Point(hi)))
    }
}

/// A linear inequality `a·x <= b` with `‖a‖_∞ <= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inequality {
    pub a: Vec<Rat>,
    pub b: Rat,
}

impl Inequality {
    pub fn new(a: Vec<Rat>, b: Rat) -> Inequality {
        let ineq = Inequality { a, b };
        debug_assert!(ineq.is_normalized());
        ineq
    }

    /// Rescales so that `‖a‖_∞ = 1` (no-op for the zero normal).
    pub fn normalized(a: Vec<Rat>, b: Rat) -> Inequality {
        let norm = a
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rat::zero);
        if norm.is_zero() || norm.is_one() {
            return Inequality { a, b };
        }
        let inv = norm.recip();
        Inequality {
            a: a.into_iter().map(|c| c * &inv).collect(),
            b: b * &inv,
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.a.iter().all(|c| c.abs() <= Rat::one())
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        dot(&self.a, x)
    }

    pub fn eval_point(&self, p: &Point) -> Rat {
        let mut acc = Rat::zero();
        for (c, &v) in self.a.iter().zip(&p.0) {
            if !c.is_zero() && v != 0 {
                acc += c * &Rat::from_int(v);
            }
        }
        acc
    }

    /// `a·p <= b`.
    pub fn satisfied_by(&self, p: &Point) -> bool {
        self.eval_point(p) <= self.b
    }

    /// `a·p >= b + eps`.
    pub fn separates_with_margin(&self, p: &Point, eps: &Rat) -> bool {
        self.eval_point(p) >= &self.b + eps
    }
}

/// An affine equation `a·x = b` (part of an affine hull description).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equation {
    pub a: Vec<Rat>,
    pub b: Rat,
}

impl Equation {
    pub fn eval_point(&self, p: &Point) -> Rat {
        let x = p.to_rats();
        dot(&self.a, &x)
    }
}

/// Irredundant outer description of the convex hull of a point set: facets
/// within the affine hull plus the affine hull equations themselves.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FacetList {
    pub ambient_dim: usize,
    pub dim_of_hull: usize,
    pub facets: Vec<Inequality>,
    pub equations: Vec<Equation>,
}

impl FacetList {
    /// Exact membership test for a rational point.
    pub fn contains_rat(&self, x: &[Rat]) -> bool {
        self.equations.iter().all(|e| dot(&e.a, x) == e.b)
            && self.facets.iter().all(|f| f.eval(x) <= f.b)
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        self.contains_rat(&p.to_rats())
    }

    /// Membership in the affine hull only.
    pub fn in_affine_hull(&self, p: &Point) -> bool {
        let x = p.to_rats();
        self.equations.iter().all(|e| dot(&e.a, &x) == e.b)
    }
}

// ---------------------------------------------------------------------------
// Convex hull by recursive gift wrapping
// ---------------------------------------------------------------------------

struct RawFacet {
    normal: Vec<Rat>,
    rhs: Rat,
    tight: Vec<usize>,
}

struct HullDesc {
    affine_dim: usize,
    equations: Vec<(Vec<Rat>, Rat)>,
    facets: Vec<RawFacet>,
}

fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Full hull description of a set of rational points given in any ambient
/// dimension. Facet tight sets are indices into `pts`.
fn hull_core(pts: &[Vec<Rat>]) -> HullDesc {
    assert!(!pts.is_empty());
    let n = pts[0].len();
    let base = &pts[0];

    // Affine hull: independent difference vectors + equations from nullspace.
    let mut dirs: Vec<Vec<Rat>> = Vec::new();
    for p in &pts[1..] {
        let d = sub(p, base);
        if d.iter().all(|c| c.is_zero()) {
            continue;
        }
        let mut probe = dirs.clone();
        probe.push(d.clone());
        if linalg::rank(&probe) > dirs.len() {
            dirs.push(d);
        }
    }
    let r = dirs.len();
    let equations: Vec<(Vec<Rat>, Rat)> = linalg::nullspace_basis(&dirs, n)
        .into_iter()
        .map(|c| {
            let rhs = dot(&c, base);
            (c, rhs)
        })
        .collect();
    debug_assert_eq!(equations.len(), n - r);

    if r == 0 {
        return HullDesc {
            affine_dim: 0,
            equations,
            facets: Vec::new(),
        };
    }

    // Reduced coordinates: z with p = base + B z, where B has the dirs as
    // columns. Solve through r independent rows of B.
    let b_rows: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..r).map(|j| dirs[j][i].clone()).collect())
        .collect();
    let mut probe: Vec<Vec<Rat>> = Vec::new();
    let mut chosen_rows = Vec::new();
    for (i, row) in b_rows.iter().enumerate() {
        if chosen_rows.len() == r {
            break;
        }
        probe.push(row.clone());
        if linalg::rank(&probe) > chosen_rows.len() {
            chosen_rows.push(i);
        } else {
            probe.pop();
        }
    }
    let m_inv = linalg::invert(&probe).expect("chosen rows are independent");
    let reduced: Vec<Vec<Rat>> = pts
        .iter()
        .map(|p| {
            let d = sub(p, base);
            let rhs: Vec<Rat> = chosen_rows.iter().map(|&i| d[i].clone()).collect();
            linalg::mat_vec(&m_inv, &rhs)
        })
        .collect();

    let reduced_facets = wrap_fulldim(&reduced, r);

    // Lift each reduced facet g·z <= c to ambient coordinates: solve Bᵀ a = g,
    // then a·p <= c + a·base for points of the affine hull.
    let bt: Vec<Vec<Rat>> = (0..r)
        .map(|j| (0..n).map(|i| dirs[j][i].clone()).collect())
        .collect();
    let facets = reduced_facets
        .into_iter()
        .map(|f| {
            let a = linalg::solve_any(&bt, &f.normal).expect("Bᵀ has full row rank");
            let rhs = &f.rhs + &dot(&a, base);
            RawFacet {
                normal: a,
                rhs,
                tight: f.tight,
            }
        })
        .collect();

    HullDesc {
        affine_dim: r,
        equations,
        facets,
    }
}

/// Facets of a full-dimensional point set in dimension `r >= 1`.
fn wrap_fulldim(pts: &[Vec<Rat>], r: usize) -> Vec<RawFacet> {
    if r == 1 {
        let mut min_i = 0;
        let mut max_i = 0;
        for (i, p) in pts.iter().enumerate() {
            if p[0] < pts[min_i][0] {
                min_i = i;
            }
            if p[0] > pts[max_i][0] {
                max_i = i;
            }
        }
        let tight_at = |v: &Rat| -> Vec<usize> {
            pts.iter()
                .enumerate()
                .filter(|(_, p)| &p[0] == v)
                .map(|(i, _)| i)
                .collect()
        };
        return vec![
            RawFacet {
                normal: vec![Rat::one()],
                rhs: pts[max_i][0].clone(),
                tight: tight_at(&pts[max_i][0]),
            },
            RawFacet {
                normal: vec![-Rat::one()],
                rhs: -pts[min_i][0].clone(),
                tight: tight_at(&pts[min_i][0]),
            },
        ];
    }

    let first = initial_facet(pts, r);
    let mut facets: Vec<RawFacet> = Vec::new();
    let mut seen: HashMap<Vec<Rat>, usize> = HashMap::new();
    let mut queue: Vec<usize> = Vec::new();

    let key_of = |normal: &[Rat], rhs: &Rat| -> Vec<Rat> {
        let mut k = normal.to_vec();
        k.push(rhs.clone());
        let norm = normal.iter().map(|c| c.abs()).max().unwrap();
        let inv = norm.recip();
        for v in &mut k {
            *v = &*v * &inv;
        }
        k
    };

    seen.insert(key_of(&first.normal, &first.rhs), 0);
    facets.push(first);
    queue.push(0);

    while let Some(fi) = queue.pop() {
        let (tight, normal, rhs) = {
            let f = &facets[fi];
            (f.tight.clone(), f.normal.clone(), f.rhs.clone())
        };
        let facet_pts: Vec<Vec<Rat>> = tight.iter().map(|&i| pts[i].clone()).collect();
        let sub_desc = hull_core(&facet_pts);
        debug_assert_eq!(sub_desc.affine_dim, r - 1);
        for ridge in &sub_desc.facets {
            let ridge_global: Vec<usize> = ridge.tight.iter().map(|&i| tight[i]).collect();
            let nf = pivot_over_ridge(pts, &normal, &rhs, &tight, &ridge_global);
            let key = key_of(&nf.normal, &nf.rhs);
            if !seen.contains_key(&key) {
                seen.insert(key, facets.len());
                queue.push(facets.len());
                facets.push(nf);
            }
        }
    }
    facets
}

/// Finds one facet: start from a supporting hyperplane and rotate until the
/// tight set spans a hyperplane.
fn initial_facet(pts: &[Vec<Rat>], r: usize) -> RawFacet {
    let mut normal = vec![Rat::zero(); r];
    normal[0] = -Rat::one();
    let mut rhs = pts
        .iter()
        .map(|p| -p[0].clone())
        .max()
        .unwrap();
    loop {
        let tight: Vec<usize> = pts
            .iter()
            .enumerate()
            .filter(|(_, p)| dot(&normal, p) == rhs)
            .map(|(i, _)| i)
            .collect();
        let dirs: Vec<Vec<Rat>> = tight[1..]
            .iter()
            .map(|&i| sub(&pts[i], &pts[tight[0]]))
            .collect();
        let t_rank = linalg::rank(&dirs);
        if t_rank == r - 1 {
            return RawFacet {
                normal,
                rhs,
                tight,
            };
        }
        // Rotation axis: a functional vanishing on the tight directions and
        // independent of the current normal.
        let null = linalg::nullspace_basis(&dirs, r);
        let g = null
            .iter()
            .find(|g| {
                let probe = vec![normal.clone(), (*g).clone()];
                linalg::rank(&probe) == 2
            })
            .expect("tight set not yet a facet leaves rotation room")
            .clone();
        let (n2, r2) = pivot_pencil(pts, &normal, &rhs, &g, &pts[tight[0]]);
        normal = n2;
        rhs = r2;
    }
}

/// Rotates the supporting hyperplane of facet `(normal, rhs)` around the
/// affine hull of `ridge` to obtain the adjacent facet.
fn pivot_over_ridge(
    pts: &[Vec<Rat>],
    normal: &[Rat],
    rhs: &Rat,
    facet_tight: &[usize],
    ridge: &[usize],
) -> RawFacet {
    let r = normal.len();
    let p0 = &pts[ridge[0]];
    let dirs: Vec<Vec<Rat>> = ridge[1..].iter().map(|&i| sub(&pts[i], p0)).collect();
    let null = linalg::nullspace_basis(&dirs, r);
    let g = null
        .iter()
        .find(|g| {
            let probe = vec![normal.to_vec(), (*g).clone()];
            linalg::rank(&probe) == 2
        })
        .expect("ridge has codimension 2")
        .clone();
    // A facet vertex off the ridge orients the rotation away from the facet.
    let ridge_aff: Vec<usize> = ridge.to_vec();
    let v_f = facet_tight
        .iter()
        .copied()
        .find(|i| {
            !ridge_aff.contains(i) && {
                let x = dot(&g, &pts[*i]) - dot(&g, p0);
                !x.is_zero()
            }
        })
        .expect("facet has a vertex outside the ridge hyperplane");
    let x_vf = dot(&g, &pts[v_f]) - dot(&g, p0);
    let g_oriented: Vec<Rat> = if x_vf.is_positive() {
        g.iter().map(|c| -c).collect()
    } else {
        g
    };
    let (n2, r2) = pivot_pencil(pts, normal, rhs, &g_oriented, p0);
    let tight: Vec<usize> = pts
        .iter()
        .enumerate()
        .filter(|(_, p)| dot(&n2, p) == r2)
        .map(|(i, _)| i)
        .collect();
    RawFacet {
        normal: n2,
        rhs: r2,
        tight,
    }
}

/// Core pivot: in the pencil of hyperplanes spanned by the supporting
/// `(normal, rhs)` and the functional `g` (both vanishing on the rotation
/// axis through `p0`), find the member that first touches the point set when
/// rotating towards the `g` side. Candidates are scored in the 2-d quotient
/// `(x, y) = (g·p − g·p0, normal·p − rhs)`; the touched hyperplane is the one
/// through the candidate of smallest clockwise angle from the positive x-axis.
fn pivot_pencil(
    pts: &[Vec<Rat>],
    normal: &[Rat],
    rhs: &Rat,
    g: &[Rat],
    p0: &[Rat],
) -> (Vec<Rat>, Rat) {
    let g_p0 = dot(g, p0);
    let mut best: Option<(Rat, Rat)> = None; // (x, y) of current argmin
    for p in pts {
        let y = dot(normal, p) - rhs;
        if y.is_zero() {
            continue;
        }
        debug_assert!(y.is_negative(), "supporting hyperplane violated");
        let x = dot(g, p) - &g_p0;
        match &best {
            None => best = Some((x, y)),
            Some((bx, by)) => {
                // smaller clockwise angle <=> cross((x,y),(bx,by)) < 0
                let cross = &x * by - &y * bx;
                if cross.is_negative() {
                    best = Some((x, y));
                }
            }
        }
    }
    let (x_star, y_star) = best.expect("full-dimensional set has points off the hyperplane");
    // New hyperplane h = x*·normal − y*·g through p0 and the touched point.
    let h: Vec<Rat> = normal
        .iter()
        .zip(g)
        .map(|(a, gg)| &x_star * a - &y_star * gg)
        .collect();
    let h_rhs = dot(&h, p0);
    debug_assert!(pts.iter().all(|p| dot(&h, p) <= h_rhs));
    (h, h_rhs)
}

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

/// Exact irredundant facet description of `conv(S)` within its affine hull.
/// For sets that are not full-dimensional the affine hull equations are
/// returned alongside; a single point yields no facets and `d` equations.
pub fn convex_hull_facets(s: &PointSet) -> FacetList {
    assert!(!s.is_empty(), "hull of empty set");
    let pts: Vec<Vec<Rat>> = s.points().iter().map(|p| p.to_rats()).collect();
    let desc = hull_core(&pts);
    FacetList {
        ambient_dim: s.dim(),
        dim_of_hull: desc.affine_dim,
        facets: desc
            .facets
            .into_iter()
            .map(|f| Inequality::normalized(f.normal, f.rhs))
            .collect(),
        equations: desc
            .equations
            .into_iter()
            .map(|(a, b)| Equation { a, b })
            .collect(),
    }
}

/// Hull of an arbitrary list of lattice points (possibly non-distinct), used
/// by propagators on subsets of Y.
pub fn hull_of_points(dim: usize, points: &[Point]) -> FacetList {
    assert!(!points.is_empty());
    let mut uniq: Vec<Point> = Vec::new();
    for p in points {
        if !uniq.contains(p) {
            uniq.push(p.clone());
        }
    }
    convex_hull_facets(&PointSet::new(dim, uniq).expect("deduplicated"))
}

/// True iff every integer point of `conv(S)` belongs to `S`.
pub fn is_lattice_convex(s: &PointSet) -> bool {
    if s.is_empty() {
        return true;
    }
    let hull = convex_hull_facets(s);
    let bbox = s.bounding_box().unwrap();
    let inside = integer_points_in_hull(&hull, &bbox);
    inside.len() == s.len()
}

/// All integer points of the polytope described by `hull` within `bbox`.
pub fn integer_points_in_hull(hull: &FacetList, bbox: &(Point, Point)) -> PointSet {
    let d = hull.ambient_dim;
    let (lo, hi) = bbox;
    let mut result = Vec::new();
    let mut cursor: Vec<i64> = lo.0.clone();
    if d == 0 {
        return PointSet::new(0, vec![]).unwrap();
    }
    loop {
        let p = Point(cursor.clone());
        if hull.contains_point(&p) {
            result.push(p);
        }
        // advance odometer
        let mut j = 0;
        loop {
            if j == d {
                return PointSet::new(d, result).expect("grid points are distinct");
            }
            cursor[j] += 1;
            if cursor[j] <= hi.0[j] {
                break;
            }
            cursor[j] = lo.0[j];
            j += 1;
        }
    }
}

/// `Y = { y ∈ Z^d \ X : min_{x∈X} ‖y−x‖₁ <= radius }`.
pub fn l1_neighborhood(x: &PointSet, radius: i64) -> PointSet {
    assert!(radius >= 1);
    assert!(!x.is_empty());
    let d = x.dim();
    let (lo, hi) = x.bounding_box().unwrap();
    let lo = Point(lo.0.iter().map(|c| c - radius).collect());
    let hi = Point(hi.0.iter().map(|c| c + radius).collect());
    let mut result = Vec::new();
    let mut cursor = lo.0.clone();
    loop {
        let p = Point(cursor.clone());
        if !x.contains(&p) {
            let dist = x.points().iter().map(|q| p.l1_distance(q)).min().unwrap();
            if dist <= radius {
                result.push(p);
            }
        }
        let mut j = 0;
        loop {
            if j == d {
                return PointSet::new(d, result).expect("grid points are distinct");
            }
            cursor[j] += 1;
            if cursor[j] <= hi.0[j] {
                break;
            }
            cursor[j] = lo.0[j];
            j += 1;
        }
    }
}

/// `max { ‖p‖_∞ : p ∈ S }` as an exact rational.
pub fn linf_radius(s: &PointSet) -> Rat {
    assert!(!s.is_empty());
    Rat::from_int(s.points().iter().map(|p| p.linf_norm()).max().unwrap())
}

/// Exact test `target ∈ conv(points)` via LP feasibility over the convex
/// multipliers (no hull computation needed).
pub fn point_in_conv(points: &[Point], target: &Point) -> bool {
    use crate::exactlp::{self, LinearProgram, LpStatus, Rel, Sense};
    if points.is_empty() {
        return false;
    }
    let d = target.dim();
    let mut lp = LinearProgram::new(points.len(), Sense::Min);
    for b in lp.bounds.iter_mut() {
        *b = (Some(Rat::zero()), Some(Rat::one()));
    }
    for j in 0..d {
        let coeffs: Vec<(usize, Rat)> = points
            .iter()
            .enumerate()
            .filter(|(_, p)| p.0[j] != 0)
            .map(|(l, p)| (l, Rat::from_int(p.0[j])))
            .collect();
        lp.add_row(coeffs, Rel::Eq, Rat::from_int(target.0[j]));
    }
    lp.add_row(
        (0..points.len()).map(|l| (l, Rat::one())).collect(),
        Rel::Eq,
        Rat::one(),
    );
    exactlp::solve(&lp).status == LpStatus::Optimal
}

/// Exact test `conv(a) ∩ conv(b) ≠ ∅` via LP feasibility.
pub fn hulls_intersect(a: &[Point], b: &[Point]) -> bool {
    use crate::exactlp::{self, LinearProgram, LpStatus, Rel, Sense};
    if a.is_empty() || b.is_empty() {
        return false;
    }
    let d = a[0].dim();
    let na = a.len();
    let mut lp = LinearProgram::new(na + b.len(), Sense::Min);
    for bd in lp.bounds.iter_mut() {
        *bd = (Some(Rat::zero()), Some(Rat::one()));
    }
    for j in 0..d {
        let mut coeffs: Vec<(usize, Rat)> = a
            .iter()
            .enumerate()
            .filter(|(_, p)| p.0[j] != 0)
            .map(|(l, p)| (l, Rat::from_int(p.0[j])))
            .collect();
        coeffs.extend(
            b.iter()
                .enumerate()
                .filter(|(_, p)| p.0[j] != 0)
                .map(|(l, p)| (na + l, Rat::from_int(-p.0[j]))),
        );
        lp.add_row(coeffs, Rel::Eq, Rat::zero());
    }
    lp.add_row((0..na).map(|l| (l, Rat::one())).collect(), Rel::Eq, Rat::one());
    lp.add_row(
        (0..b.len()).map(|l| (na + l, Rat::one())).collect(),
        Rel::Eq,
        Rat::one(),
    );
    exactlp::solve(&lp).status == LpStatus::Optimal
}

/// True iff the closed segment `[y1, y2]` meets the polytope described by
/// `hull`: substituting `λ y1 + (1−λ) y2` into every facet and equation gives
/// bounds on λ, and the segment hits the hull iff the final bounds intersect
/// `[0, 1]`.
pub fn segment_hits_hull(y1: &Point, y2: &Point, hull: &FacetList) -> bool {
    let v1 = y1.to_rats();
    let v2 = y2.to_rats();
    let mut lo = Rat::zero();
    let mut hi = Rat::one();

    let mut apply = |coef_1: Rat, coef_2: Rat, rhs: &Rat, eq: bool| -> bool {
        // value(λ) = λ·coef_1 + (1−λ)·coef_2 = coef_2 + λ(coef_1 − coef_2)
        let slope = &coef_1 - &coef_2;
        let offset = coef_2;
        if eq {
            if slope.is_zero() {
                return &offset == rhs;
            }
            let lambda = (rhs - &offset) / &slope;
            if lambda < lo {
                return false;
            }
            if lambda > hi {
                return false;
            }
            lo = lo.clone().max(lambda.clone());
            hi = hi.clone().min(lambda);
            true
        } else {
            // offset + λ·slope <= rhs
            if slope.is_zero() {
                return &offset <= rhs;
            }
            let bound = (rhs - &offset) / &slope;
            if slope.is_positive() {
                hi = hi.clone().min(bound);
            } else {
                lo = lo.clone().max(bound);
            }
            lo <= hi
        }
    };

    for e in &hull.equations {
        if !apply(dot(&e.a, &v1), dot(&e.a, &v2), &e.b, true) {
            return false;
        }
    }
    for f in &hull.facets {
        if !apply(dot(&f.a, &v1), dot(&f.a, &v2), &f.b, false) {
            return false;
        }
    }
    lo <= hi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    pub fn pset(dim: usize, rows: &[&[i64]]) -> PointSet {
        PointSet::from_rows(dim, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    pub fn unit_square() -> PointSet {
        pset(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
    }

    pub fn simplex(d: usize) -> PointSet {
        let mut rows = vec![vec![0i64; d]];
        for i in 0..d {
            let mut e = vec![0i64; d];
            e[i] = 1;
            rows.push(e);
        }
        PointSet::from_rows(d, rows).unwrap()
    }

    pub fn cross(d: usize) -> PointSet {
        let mut rows = vec![vec![0i64; d]];
        for i in 0..d {
            for s in [1i64, -1] {
                let mut e = vec![0i64; d];
                e[i] = s;
                rows.push(e);
            }
        }
        PointSet::from_rows(d, rows).unwrap()
    }

    pub fn cube(d: usize) -> PointSet {
        let mut rows = Vec::new();
        for mask in 0..(1u32 << d) {
            rows.push((0..d).map(|j| ((mask >> j) & 1) as i64).collect());
        }
        PointSet::from_rows(d, rows).unwrap()
    }

    fn check_facets(s: &PointSet, hull: &FacetList) {
        // every point satisfies every facet and equation
        for p in s.points() {
            assert!(hull.contains_point(p), "{p:?} escapes its own hull");
        }
        // every facet is tight at >= dim_of_hull affinely independent points
        for f in &hull.facets {
            let tight: Vec<Vec<Rat>> = s
                .points()
                .iter()
                .filter(|p| f.eval_point(p) == f.b)
                .map(|p| p.to_rats())
                .collect();
            assert!(!tight.is_empty());
            let dirs: Vec<Vec<Rat>> = tight[1..]
                .iter()
                .map(|t| {
                    t.iter()
                        .zip(&tight[0])
                        .map(|(a, b)| a - b)
                        .collect::<Vec<Rat>>()
                })
                .collect();
            assert_eq!(
                linalg::rank(&dirs) + 1,
                hull.dim_of_hull,
                "facet not tight at enough independent points"
            );
            assert!(f.is_normalized());
        }
    }

    #[test]
    fn hull_unit_square() {
        let s = unit_square();
        let hull = convex_hull_facets(&s);
        assert_eq!(hull.dim_of_hull, 2);
        assert_eq!(hull.facets.len(), 4);
        assert!(hull.equations.is_empty());
        check_facets(&s, &hull);
    }

    #[test]
    fn hull_simplex_3d() {
        let s = simplex(3);
        let hull = convex_hull_facets(&s);
        assert_eq!(hull.dim_of_hull, 3);
        assert_eq!(hull.facets.len(), 4);
        check_facets(&s, &hull);
    }

    #[test]
    fn hull_crosspolytope_3d() {
        let s = cross(3);
        let hull = convex_hull_facets(&s);
        assert_eq!(hull.facets.len(), 8);
        check_facets(&s, &hull);
        // all facets are ±x1±x2±x3 <= 1 after normalization
        for f in &hull.facets {
            assert!(f.a.iter().all(|c| c.abs() == rat(1)));
            assert_eq!(f.b, rat(1));
        }
    }

    #[test]
    fn hull_cube_4d() {
        let s = cube(4);
        let hull = convex_hull_facets(&s);
        assert_eq!(hull.facets.len(), 8);
        check_facets(&s, &hull);
    }

    #[test]
    fn hull_lower_dimensional() {
        // segment in Z^2
        let s = pset(2, &[&[0, 0], &[2, 2]]);
        let hull = convex_hull_facets(&s);
        assert_eq!(hull.dim_of_hull, 1);
        assert_eq!(hull.facets.len(), 2);
        assert_eq!(hull.equations.len(), 1);
        assert!(hull.contains_point(&Point(vec![1, 1])));
        assert!(!hull.contains_point(&Point(vec![1, 0])));

        // single point
        let s = pset(3, &[&[5, -1, 2]]);
        let hull = convex_hull_facets(&s);
        assert_eq!(hull.dim_of_hull, 0);
        assert!(hull.facets.is_empty());
        assert_eq!(hull.equations.len(), 3);
        assert!(hull.contains_point(&Point(vec![5, -1, 2])));
        assert!(!hull.contains_point(&Point(vec![5, -1, 3])));
    }

    #[test]
    fn hull_degenerate_with_interior_points() {
        // square plus its center and edge midpoints: hull unchanged
        let s = pset(
            2,
            &[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1], &[1, 0], &[0, 1]],
        );
        let hull = convex_hull_facets(&s);
        assert_eq!(hull.facets.len(), 4);
        check_facets(&s, &hull);
    }

    #[test]
    fn lattice_convexity() {
        assert!(!is_lattice_convex(&pset(1, &[&[0], &[2]])));
        assert!(is_lattice_convex(&cube(3)));
        assert!(is_lattice_convex(&unit_square()));
        assert!(is_lattice_convex(&simplex(2)));
        assert!(!is_lattice_convex(&pset(2, &[&[0, 0], &[1, 1], &[2, 0]])));
    }

    #[test]
    fn l1_neighborhood_examples() {
        let x = pset(1, &[&[0]]);
        let y = l1_neighborhood(&x, 1);
        assert_eq!(y, pset(1, &[&[-1], &[1]]));

        // brute-force oracle over an inflated box
        let x = simplex(2);
        let oracle: Vec<Point> = {
            let mut out = Vec::new();
            for a in -2..=3i64 {
                for b in -2..=3i64 {
                    let p = Point(vec![a, b]);
                    if x.contains(&p) {
                        continue;
                    }
                    let dist = x.points().iter().map(|q| p.l1_distance(q)).min().unwrap();
                    if dist <= 1 {
                        out.push(p);
                    }
                }
            }
            out
        };
        let y = l1_neighborhood(&x, 1);
        assert_eq!(y.len(), oracle.len());
        for p in &oracle {
            assert!(y.contains(p));
        }
        // frozen value from the brute-force enumeration above
        assert_eq!(y.len(), 7);

        let y = l1_neighborhood(&unit_square(), 1);
        assert_eq!(y.len(), 8);
    }

    #[test]
    fn linf_radius_examples() {
        assert_eq!(linf_radius(&cube(3)), rat(1));
        assert_eq!(linf_radius(&cross(4)), rat(1));
        assert_eq!(linf_radius(&pset(2, &[&[-3, 2]])), rat(3));
    }

    #[test]
    fn segment_tests() {
        let hull = convex_hull_facets(&unit_square());
        assert!(segment_hits_hull(
            &Point(vec![-1, 0]),
            &Point(vec![2, 1]),
            &hull
        ));
        assert!(!segment_hits_hull(
            &Point(vec![-1, -1]),
            &Point(vec![-1, 2]),
            &hull
        ));
        let hull0 = convex_hull_facets(&pset(1, &[&[0]]));
        assert!(segment_hits_hull(&Point(vec![-1]), &Point(vec![1]), &hull0));
        assert!(!segment_hits_hull(&Point(vec![1]), &Point(vec![2]), &hull0));
    }

    #[test]
    fn integer_points_examples() {
        let h = convex_hull_facets(&pset(1, &[&[0], &[2]]));
        let pts = integer_points_in_hull(&h, &(Point(vec![0]), Point(vec![2])));
        assert_eq!(pts.len(), 3);

        let h = convex_hull_facets(&simplex(2));
        let pts = integer_points_in_hull(&h, &(Point(vec![0, 0]), Point(vec![1, 1])));
        assert_eq!(pts.len(), 3);

        let h = convex_hull_facets(&cube(3));
        let pts = integer_points_in_hull(&h, &(Point(vec![0, 0, 0]), Point(vec![1, 1, 1])));
        assert_eq!(pts.len(), 8);
    }

    #[test]
    fn hull_of_lattice_points_idempotent() {
        for s in [unit_square(), simplex(3), cross(2)] {
            let hull = convex_hull_facets(&s);
            let bbox = s.bounding_box().unwrap();
            let recovered = integer_points_in_hull(&hull, &bbox);
            assert_eq!(recovered.len(), s.len());
            for p in s.points() {
                assert!(recovered.contains(p));
            }
        }
    }
}
