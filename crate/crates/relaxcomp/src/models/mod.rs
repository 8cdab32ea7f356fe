//! Builders for the compact and cutting-plane formulations of rc_ε(X,Y),
//! including all enhancements: hiding-set cuts, convexity and intersection
//! propagation, simple symmetry handling (sorted u and first-coefficient
//! rows), advanced lexicographic symmetry handling, and the redundancy
//! coupling that pins unused inequality slots to a trivial row.
//!
//! Both models share the binary matrix `s` (point y is cut by inequality i)
//! and the indicator vector `u` (inequality i is used). The compact model
//! carries the inequality coefficients `a, b` explicitly with big-M linking;
//! the cutting-plane model replaces them by lazily separated conflict rows.

mod plugins;

use crate::exactlp::{self, LinearProgram, Rel, Sense};
use crate::geometry::{self, FacetList, Inequality, PointSet};
use crate::mip::{Limits, MipModel, MipResult, MipStatus};
use crate::rat::Rat;
use crate::separability::{self, SeparationOracle};
use crate::symmetry::PointPermutation;
use std::rc::Rc;

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("X must be lattice-convex")]
    NotLatticeConvex,
    #[error("X and Y must be disjoint")]
    NotDisjoint,
    #[error("eps must be positive")]
    BadEps,
    #[error("X is not full-dimensional; pass an explicit inequality budget k")]
    NeedExplicitK,
    #[error("inequality budget k must be positive when Y is nonempty")]
    ZeroBudget,
    #[error(
        "a-coefficient sorting and column-lexicographic symmetry handling cannot be combined"
    )]
    IncompatibleSymmetry,
    #[error("point set error: {0}")]
    Geometry(#[from] geometry::GeometryError),
}

/// A fully resolved rc_ε(X,Y) instance: both point sets, the margin, the
/// inequality budget k, the big-M constant, norm radii and the facets of
/// conv(X).
#[derive(Clone, Debug)]
pub struct RcInstance {
    pub x: PointSet,
    pub y: PointSet,
    pub eps: Rat,
    pub k: usize,
    pub big_m: Rat,
    pub rho_x: Rat,
    pub rho_y: Rat,
    pub facets_of_x: FacetList,
}

impl RcInstance {
    /// Validates the invariants and derives k (facet count unless
    /// overridden), M = d(ρ_X + ρ_Y) + ε, and the hull of X.
    pub fn new(
        x: PointSet,
        y: PointSet,
        eps: Rat,
        k_override: Option<usize>,
    ) -> Result<RcInstance, ModelError> {
        if !eps.is_positive() {
            return Err(ModelError::BadEps);
        }
        if !x.is_disjoint_from(&y) {
            return Err(ModelError::NotDisjoint);
        }
        if !geometry::is_lattice_convex(&x) {
            return Err(ModelError::NotLatticeConvex);
        }
        let facets_of_x = geometry::convex_hull_facets(&x);
        let k = match k_override {
            Some(k) => k,
            None => {
                // the facet-count bound presumes a full-dimensional X
                if facets_of_x.dim_of_hull != x.dim() {
                    return Err(ModelError::NeedExplicitK);
                }
                facets_of_x.facets.len()
            }
        };
        if k == 0 && !y.is_empty() {
            return Err(ModelError::ZeroBudget);
        }
        let rho_x = geometry::linf_radius(&x);
        let rho_y = if y.is_empty() {
            Rat::zero()
        } else {
            geometry::linf_radius(&y)
        };
        let d = Rat::from_int(x.dim() as i64);
        let big_m = &d * &(&rho_x + &rho_y) + &eps;
        Ok(RcInstance {
            x,
            y,
            eps,
            k,
            big_m,
            rho_x,
            rho_y,
            facets_of_x,
        })
    }

    pub fn dim(&self) -> usize {
        self.x.dim()
    }

    /// `dρ_X`, the box bound for the right-hand sides b.
    pub fn b_box(&self) -> Rat {
        Rat::from_int(self.dim() as i64) * &self.rho_x
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryMode {
    None,
    Simple,
    Advanced,
}

/// Which §4 enhancements a build enables.
#[derive(Clone, Debug)]
pub struct EnhancementOptions {
    pub hiding: bool,
    pub sym: SymmetryMode,
    pub prop: bool,
    pub prop_intersection: bool,
    pub redundancy_coupling: bool,
}

impl Default for EnhancementOptions {
    fn default() -> Self {
        EnhancementOptions {
            hiding: false,
            sym: SymmetryMode::None,
            prop: false,
            prop_intersection: false,
            redundancy_coupling: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Compact,
    Cut,
}

/// Variable index layout shared by the two matrix models. The cut model has
/// no a/b block.
#[derive(Clone, Copy, Debug)]
pub struct VariableMap {
    pub kind: ModelKind,
    pub d: usize,
    pub k: usize,
    pub ny: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarRole {
    A(usize, usize),
    B(usize),
    S(usize, usize),
    U(usize),
}

impl VariableMap {
    pub fn a(&self, i: usize, j: usize) -> usize {
        debug_assert_eq!(self.kind, ModelKind::Compact);
        i * self.d + j
    }

    pub fn b(&self, i: usize) -> usize {
        debug_assert_eq!(self.kind, ModelKind::Compact);
        self.k * self.d + i
    }

    pub fn s(&self, y: usize, i: usize) -> usize {
        let base = match self.kind {
            ModelKind::Compact => self.k * self.d + self.k,
            ModelKind::Cut => 0,
        };
        base + y * self.k + i
    }

    pub fn u(&self, i: usize) -> usize {
        let base = match self.kind {
            ModelKind::Compact => self.k * self.d + self.k,
            ModelKind::Cut => 0,
        };
        base + self.ny * self.k + i
    }

    pub fn total(&self) -> usize {
        match self.kind {
            ModelKind::Compact => self.k * self.d + self.k + self.ny * self.k + self.k,
            ModelKind::Cut => self.ny * self.k + self.k,
        }
    }

    pub fn role(&self, var: usize) -> VarRole {
        match self.kind {
            ModelKind::Compact => {
                let kd = self.k * self.d;
                if var < kd {
                    VarRole::A(var / self.d, var % self.d)
                } else if var < kd + self.k {
                    VarRole::B(var - kd)
                } else if var < kd + self.k + self.ny * self.k {
                    let off = var - kd - self.k;
                    VarRole::S(off / self.k, off % self.k)
                } else {
                    VarRole::U(var - kd - self.k - self.ny * self.k)
                }
            }
            ModelKind::Cut => {
                if var < self.ny * self.k {
                    VarRole::S(var / self.k, var % self.k)
                } else {
                    VarRole::U(var - self.ny * self.k)
                }
            }
        }
    }
}

/// A built model coupled with its instance and variable layout.
pub struct RcModel {
    pub mip: MipModel,
    pub vars: VariableMap,
    pub kind: ModelKind,
    pub inst: Rc<RcInstance>,
    has_u_sort: bool,
    has_a_sort: bool,
    has_column_lex: bool,
}

/// Builds the compact big-M model with the requested enhancements and the
/// facet-derived initial incumbent.
pub fn build_compact(inst: &RcInstance, opts: &EnhancementOptions) -> Result<RcModel, ModelError> {
    let inst = Rc::new(inst.clone());
    let d = inst.dim();
    let k = inst.k;
    let ny = inst.y.len();
    let vars = VariableMap {
        kind: ModelKind::Compact,
        d,
        k,
        ny,
    };
    let mut lp = LinearProgram::new(vars.total(), Sense::Min);
    let b_box = inst.b_box();
    for i in 0..k {
        for j in 0..d {
            lp.bounds[vars.a(i, j)] = (Some(-Rat::one()), Some(Rat::one()));
        }
        lp.bounds[vars.b(i)] = (Some(-b_box.clone()), Some(b_box.clone()));
        lp.bounds[vars.u(i)] = (Some(Rat::zero()), Some(Rat::one()));
        lp.objective[vars.u(i)] = Rat::one();
    }
    for y in 0..ny {
        for i in 0..k {
            lp.bounds[vars.s(y, i)] = (Some(Rat::zero()), Some(Rat::one()));
        }
    }

    // validity rows: a_i · x <= b_i for all x in X
    for p in inst.x.points() {
        for i in 0..k {
            let mut coeffs: Vec<(usize, Rat)> = p
                .0
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(j, &v)| (vars.a(i, j), Rat::from_int(v)))
                .collect();
            coeffs.push((vars.b(i), -Rat::one()));
            lp.add_row(coeffs, Rel::Le, Rat::zero());
        }
    }
    // covering rows
    for y in 0..ny {
        let coeffs = (0..k).map(|i| (vars.s(y, i), Rat::one())).collect();
        lp.add_row(coeffs, Rel::Ge, Rat::one());
    }
    // big-M rows: a_i · y - b_i - M s_yi >= eps - M   (vacuous when s_yi = 0)
    let mut guards: Vec<(usize, usize)> = Vec::new();
    for (y, p) in inst.y.points().iter().enumerate() {
        for i in 0..k {
            let mut coeffs: Vec<(usize, Rat)> = p
                .0
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(j, &v)| (vars.a(i, j), Rat::from_int(v)))
                .collect();
            coeffs.push((vars.b(i), -Rat::one()));
            coeffs.push((vars.s(y, i), -inst.big_m.clone()));
            let r = lp.add_row(coeffs, Rel::Ge, &inst.eps - &inst.big_m);
            guards.push((r, vars.s(y, i)));
        }
    }
    // linking rows: s_yi <= u_i   (vacuous when s_yi = 0)
    for y in 0..ny {
        for i in 0..k {
            let r = lp.add_row(
                vec![(vars.s(y, i), Rat::one()), (vars.u(i), -Rat::one())],
                Rel::Le,
                Rat::zero(),
            );
            guards.push((r, vars.s(y, i)));
        }
    }

    let mut integrality = vec![false; vars.total()];
    for y in 0..ny {
        for i in 0..k {
            integrality[vars.s(y, i)] = true;
        }
    }
    for i in 0..k {
        integrality[vars.u(i)] = true;
    }

    let mut mip = MipModel::new(lp, integrality);
    mip.integral_objective = true;
    for (r, v) in guards {
        mip.set_row_guard(r, v);
    }

    let mut model = RcModel {
        mip,
        vars,
        kind: ModelKind::Compact,
        inst: inst.clone(),
        has_u_sort: false,
        has_a_sort: false,
        has_column_lex: false,
    };
    apply_enhancements(&mut model, opts)?;
    model.mip.initial_solution = facet_incumbent(&model);
    Ok(model)
}

/// Builds the cutting-plane model: s/u variables only, covering and linking
/// rows, and the conflict inequalities enforced lazily (integral separation
/// is mandatory, fractional separation heuristic).
pub fn build_cut_model(inst: &RcInstance, opts: &EnhancementOptions) -> Result<RcModel, ModelError> {
    let inst = Rc::new(inst.clone());
    let k = inst.k;
    let ny = inst.y.len();
    let vars = VariableMap {
        kind: ModelKind::Cut,
        d: inst.dim(),
        k,
        ny,
    };
    let mut lp = LinearProgram::new(vars.total(), Sense::Min);
    for i in 0..k {
        lp.bounds[vars.u(i)] = (Some(Rat::zero()), Some(Rat::one()));
        lp.objective[vars.u(i)] = Rat::one();
    }
    for y in 0..ny {
        for i in 0..k {
            lp.bounds[vars.s(y, i)] = (Some(Rat::zero()), Some(Rat::one()));
        }
    }
    for y in 0..ny {
        let coeffs = (0..k).map(|i| (vars.s(y, i), Rat::one())).collect();
        lp.add_row(coeffs, Rel::Ge, Rat::one());
    }
    let mut guards = Vec::new();
    for y in 0..ny {
        for i in 0..k {
            let r = lp.add_row(
                vec![(vars.s(y, i), Rat::one()), (vars.u(i), -Rat::one())],
                Rel::Le,
                Rat::zero(),
            );
            guards.push((r, vars.s(y, i)));
        }
    }
    let mut integrality = vec![true; vars.total()];
    integrality.truncate(vars.total());
    let mut mip = MipModel::new(lp, integrality);
    mip.integral_objective = true;
    for (r, v) in guards {
        mip.set_row_guard(r, v);
    }

    let oracle = Rc::new(SeparationOracle::new(&inst.x, &inst.eps));
    mip.register_lazy_checker(Box::new(plugins::ConflictChecker::new(
        inst.clone(),
        vars,
        oracle.clone(),
    )));
    mip.register_separator(Box::new(plugins::FractionalConflictSeparator::new(
        inst.clone(),
        vars,
        oracle,
    )));

    let mut model = RcModel {
        mip,
        vars,
        kind: ModelKind::Cut,
        inst: inst.clone(),
        has_u_sort: false,
        has_a_sort: false,
        has_column_lex: false,
    };
    apply_enhancements(&mut model, opts)?;
    model.mip.initial_solution = facet_incumbent(&model);
    Ok(model)
}

fn apply_enhancements(model: &mut RcModel, opts: &EnhancementOptions) -> Result<(), ModelError> {
    // linking implications are cheap and part of the base formulation
    model
        .mip
        .register_propagator(Box::new(plugins::LinkPropagator::new(model.vars)));
    if opts.redundancy_coupling {
        add_redundancy_coupling(model)?;
    }
    if opts.hiding {
        add_hiding_cuts(model);
    }
    match opts.sym {
        SymmetryMode::None => {}
        SymmetryMode::Simple => add_simple_symmetry(model)?,
        SymmetryMode::Advanced => {
            let gens = crate::symmetry::automorphism_generators(
                &crate::symmetry::build_symmetry_graph(&model.inst.x, &model.inst.y),
            );
            add_advanced_symmetry(model, &gens)?;
        }
    }
    if opts.prop {
        model
            .mip
            .register_propagator(Box::new(plugins::ConvexityPropagator::new(
                model.inst.clone(),
                model.vars,
            )));
    }
    if opts.prop_intersection {
        model
            .mip
            .register_propagator(Box::new(plugins::IntersectionPropagator::new(
                model.inst.clone(),
                model.vars,
            )));
    }
    Ok(())
}

/// Registers the hiding-set pair cuts: the pool of size-2 hiding sets is
/// precomputed once, rows `s_{y1,i} + s_{y2,i} <= 1` are separated when
/// violated.
pub fn add_hiding_cuts(model: &mut RcModel) {
    let pairs = separability::hiding_pair_indices(&model.inst.y, &model.inst.facets_of_x);
    model
        .mip
        .register_separator(Box::new(plugins::HidingCutSeparator::new(
            model.vars, pairs,
        )));
}

/// Appends the static symmetry rows (5) `u_i >= u_{i+1}` and, for the
/// compact model, (6) `a_{i,1} >= a_{(i+1),1} - 2(u_i - u_{i+1})`.
pub fn add_simple_symmetry(model: &mut RcModel) -> Result<(), ModelError> {
    if model.kind == ModelKind::Compact && model.has_column_lex {
        return Err(ModelError::IncompatibleSymmetry);
    }
    let vars = model.vars;
    if !model.has_u_sort {
        for i in 0..vars.k.saturating_sub(1) {
            model.mip.lp.add_row(
                vec![(vars.u(i), Rat::one()), (vars.u(i + 1), -Rat::one())],
                Rel::Ge,
                Rat::zero(),
            );
        }
        model.has_u_sort = true;
    }
    if model.kind == ModelKind::Compact && vars.d > 0 {
        for i in 0..vars.k.saturating_sub(1) {
            model.mip.lp.add_row(
                vec![
                    (vars.a(i, 0), Rat::one()),
                    (vars.a(i + 1, 0), -Rat::one()),
                    (vars.u(i), Rat::from_int(2)),
                    (vars.u(i + 1), Rat::from_int(-2)),
                ],
                Rel::Ge,
                Rat::zero(),
            );
        }
        model.has_a_sort = true;
    }
    Ok(())
}

/// Registers the advanced symmetry handling: lexicographically nonincreasing
/// columns of `s` (propagation plus cover cuts on adjacent column pairs),
/// the (5) rows, and one `s ⪰_lex γ(s)` constraint per detected generator
/// of the point symmetry group, in row-major order.
pub fn add_advanced_symmetry(
    model: &mut RcModel,
    generators: &[PointPermutation],
) -> Result<(), ModelError> {
    if model.kind == ModelKind::Compact && model.has_a_sort {
        return Err(ModelError::IncompatibleSymmetry);
    }
    let vars = model.vars;
    let mut lex_lists: Vec<Vec<(usize, usize)>> = Vec::new();
    for i in 0..vars.k.saturating_sub(1) {
        let pairs: Vec<(usize, usize)> = (0..vars.ny)
            .map(|y| (vars.s(y, i), vars.s(y, i + 1)))
            .collect();
        if let Some(&(v0, w0)) = pairs.first() {
            // first-position row of each lex constraint is globally valid
            model.mip.lp.add_row(
                vec![(v0, Rat::one()), (w0, -Rat::one())],
                Rel::Ge,
                Rat::zero(),
            );
        }
        lex_lists.push(pairs);
    }
    for g in generators {
        let pairs: Vec<(usize, usize)> = (0..vars.ny)
            .flat_map(|y| (0..vars.k).map(move |i| (y, i)))
            .map(|(y, i)| (vars.s(y, i), vars.s(g.phi[y], i)))
            .collect();
        lex_lists.push(pairs);
    }
    if !lex_lists.is_empty() {
        model
            .mip
            .register_propagator(Box::new(plugins::LexPlugin::new(lex_lists.clone())));
        model
            .mip
            .register_separator(Box::new(plugins::LexPlugin::new(lex_lists)));
    }
    if !model.has_u_sort {
        for i in 0..vars.k.saturating_sub(1) {
            model.mip.lp.add_row(
                vec![(vars.u(i), Rat::one()), (vars.u(i + 1), -Rat::one())],
                Rel::Ge,
                Rat::zero(),
            );
        }
        model.has_u_sort = true;
    }
    model.has_column_lex = true;
    Ok(())
}

/// Replaces the (2f) boxes by `-u_i <= a_ij <= u_i` and the lower half of
/// (2g) by `dρ_X <= b_i + 2dρ_X u_i`: an unused slot becomes the trivial
/// inequality `0·x <= dρ_X`.
pub fn add_redundancy_coupling(model: &mut RcModel) -> Result<(), ModelError> {
    assert_eq!(
        model.kind,
        ModelKind::Compact,
        "redundancy coupling needs a/b variables"
    );
    let vars = model.vars;
    let b_box = model.inst.b_box();
    for i in 0..vars.k {
        for j in 0..vars.d {
            model.mip.lp.add_row(
                vec![(vars.a(i, j), Rat::one()), (vars.u(i), -Rat::one())],
                Rel::Le,
                Rat::zero(),
            );
            model.mip.lp.add_row(
                vec![(vars.a(i, j), Rat::one()), (vars.u(i), Rat::one())],
                Rel::Ge,
                Rat::zero(),
            );
        }
        // d rho_X <= b_i + 2 d rho_X u_i
        model.mip.lp.add_row(
            vec![
                (vars.b(i), Rat::one()),
                (vars.u(i), Rat::from_int(2) * &b_box),
            ],
            Rel::Ge,
            b_box.clone(),
        );
    }
    Ok(())
}

/// The facet-derived initial solution: u_i = 1 on facet slots, s from the
/// facet ε-separation pattern. Returns `None` when some infeasible point is
/// not ε-separated by any facet (the incumbent is then discarded).
fn facet_incumbent(model: &RcModel) -> Option<Vec<Rat>> {
    let inst = &model.inst;
    let vars = model.vars;
    let nf = inst.facets_of_x.facets.len();
    if nf > vars.k || inst.facets_of_x.dim_of_hull != inst.dim() {
        return None;
    }
    // separation pattern per facet
    let mut pattern: Vec<(usize, Vec<bool>)> = (0..nf)
        .map(|i| {
            let f = &inst.facets_of_x.facets[i];
            let seps: Vec<bool> = inst
                .y
                .points()
                .iter()
                .map(|p| f.separates_with_margin(p, &inst.eps))
                .collect();
            (i, seps)
        })
        .collect();
    for y in 0..vars.ny {
        if !pattern.iter().any(|(_, seps)| seps[y]) {
            return None;
        }
    }
    // order slots so the static symmetry rows hold: nonincreasing first
    // coefficient for (6), lexicographically nonincreasing s-columns for the
    // column-lex constraints. Both orders also satisfy (5) with all-ones u.
    if model.has_a_sort {
        pattern.sort_by(|(i, _), (j, _)| {
            let ai = &inst.facets_of_x.facets[*i].a[0];
            let aj = &inst.facets_of_x.facets[*j].a[0];
            aj.cmp(ai).then(i.cmp(j))
        });
    } else if model.has_column_lex {
        pattern.sort_by(|(i, si), (j, sj)| sj.cmp(si).then(i.cmp(j)));
    }
    let mut x = vec![Rat::zero(); model.mip.lp.num_vars];
    for (slot, (fi, seps)) in pattern.iter().enumerate() {
        let f = &inst.facets_of_x.facets[*fi];
        if vars.kind == ModelKind::Compact {
            for j in 0..vars.d {
                x[vars.a(slot, j)] = f.a[j].clone();
            }
            x[vars.b(slot)] = f.b.clone();
        }
        x[vars.u(slot)] = Rat::one();
        for (y, sep) in seps.iter().enumerate() {
            if *sep {
                x[vars.s(y, slot)] = Rat::one();
            }
        }
    }
    // unused slots: trivial row 0·x <= dρ_X keeps the redundancy coupling
    // rows satisfied; plain boxes accept it as well
    if vars.kind == ModelKind::Compact {
        for slot in nf..vars.k {
            x[vars.b(slot)] = inst.b_box();
        }
    }
    if !crate::mip::check_solution(&model.mip, &x) {
        return None;
    }
    Some(x)
}

/// Exposes the s-matrix of a solution vector.
pub fn s_matrix(vars: &VariableMap, x: &[Rat]) -> Vec<Vec<Rat>> {
    (0..vars.ny)
        .map(|y| (0..vars.k).map(|i| x[vars.s(y, i)].clone()).collect())
        .collect()
}

/// The LP relaxation value of a built model at its root (no cuts beyond the
/// static rows).
pub fn root_lp_value(model: &RcModel) -> Rat {
    let sol = exactlp::solve(&model.mip.lp);
    assert_eq!(sol.status, exactlp::LpStatus::Optimal);
    sol.objective_value
}

#[derive(Debug, thiserror::Error)]
pub enum ExtractError {
    #[error("solution has no value for inequality slot {0}")]
    MissingSlot(usize),
    #[error("selected set for slot {0} is not ε-separable: engine bug")]
    OracleFailure(usize),
    #[error("extracted relaxation fails the exact re-check")]
    RecheckFailed,
}

/// Reads the certified relaxation out of an optimal solution: for the
/// compact model the used (a, b) rows, for the cut model an oracle witness
/// per selected set (the post-processing step of the covering formulations).
/// The result is re-checked exactly: valid on X, margin ε on every y.
pub fn extract_relaxation(
    model: &RcModel,
    x: &[Rat],
) -> Result<Vec<Inequality>, ExtractError> {
    let vars = model.vars;
    let inst = &model.inst;
    let mut out = Vec::new();
    for i in 0..vars.k {
        if !x[vars.u(i)].is_one() {
            continue;
        }
        match model.kind {
            ModelKind::Compact => {
                let a: Vec<Rat> = (0..vars.d).map(|j| x[vars.a(i, j)].clone()).collect();
                let b = x[vars.b(i)].clone();
                out.push(Inequality::new(a, b));
            }
            ModelKind::Cut => {
                let members: Vec<_> = (0..vars.ny)
                    .filter(|&y| x[vars.s(y, i)].is_one())
                    .map(|y| inst.y.points()[y].clone())
                    .collect();
                let oracle = SeparationOracle::new(&inst.x, &inst.eps);
                let w = oracle
                    .separates(&members)
                    .ok_or(ExtractError::OracleFailure(i))?;
                out.push(w);
            }
        }
    }
    verify_relaxation(inst, &out).map_err(|_| ExtractError::RecheckFailed)?;
    Ok(out)
}

/// Exact certification: every inequality is valid on X with `‖a‖_∞ <= 1`,
/// and every y ∈ Y is violated by at least one inequality with margin >= ε.
pub fn verify_relaxation(inst: &RcInstance, ineqs: &[Inequality]) -> Result<(), String> {
    for (i, q) in ineqs.iter().enumerate() {
        if !q.is_normalized() {
            return Err(format!("inequality {i} violates the sup-norm bound"));
        }
        for p in inst.x.points() {
            if !q.satisfied_by(p) {
                return Err(format!("inequality {i} cuts feasible point {p:?}"));
            }
        }
    }
    for p in inst.y.points() {
        if !ineqs
            .iter()
            .any(|q| q.separates_with_margin(p, &inst.eps))
        {
            return Err(format!("infeasible point {p:?} not ε-separated"));
        }
    }
    Ok(())
}

/// Convenience: build + solve a model and return the engine result.
pub fn solve_model(model: &mut RcModel, limits: &Limits) -> MipResult {
    crate::mip::solve_bnb(&mut model.mip, limits)
}

/// Solved rc value of an optimal result (objective is integral).
pub fn rc_value(res: &MipResult) -> Option<usize> {
    if res.status != MipStatus::Optimal {
        return None;
    }
    res.primal_bound
        .as_ref()
        .and_then(|b| b.to_i64())
        .map(|v| v as usize)
}

// Re-exported plugin entry points used directly by tests and the harness.
pub use plugins::{
    convexity_propagate, intersection_propagate, separate_conflicts_fractional,
    separate_conflicts_integral,
};

#[cfg(test)]
mod tests;
