//! Engine plugins realizing the model enhancements: linking implications,
//! convexity and intersection propagation, hiding-set cut separation,
//! mandatory integral conflict separation with sparsification, heuristic
//! fractional conflict separation, and the lexicographic symmetry plugin.

use super::{RcInstance, VariableMap, VarRole};
use crate::exactlp::{Rel, Row};
use crate::geometry::{self, Point};
use crate::mip::{
    lex_ge_propagate, Annotation, Cut, LexOutcome, PropCtx, Propagator, SepCtx, Separator,
    LazyChecker,
};
use crate::rat::Rat;
use crate::separability::{sparsify_conflict, SeparationOracle};
use std::rc::Rc;

/// `u_i = 0` forces `s_yi = 0`; `s_yi = 1` forces `u_i = 1`.
pub struct LinkPropagator {
    vars: VariableMap,
}

impl LinkPropagator {
    pub fn new(vars: VariableMap) -> Self {
        LinkPropagator { vars }
    }
}

impl Propagator for LinkPropagator {
    fn name(&self) -> &'static str {
        "linking"
    }

    fn propagate(&mut self, ctx: &mut PropCtx<'_>) {
        let v = self.vars;
        for i in 0..v.k {
            if ctx.is_fixed_zero(v.u(i)) {
                for y in 0..v.ny {
                    ctx.fix_zero(v.s(y, i));
                    if ctx.infeasible {
                        return;
                    }
                }
            }
        }
        for y in 0..v.ny {
            for i in 0..v.k {
                if ctx.is_fixed_one(v.s(y, i)) {
                    ctx.fix_one(v.u(i));
                    if ctx.infeasible {
                        return;
                    }
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PropOutcome {
    Prune,
    FixOnes(Vec<usize>),
}

/// Convexity propagation for one inequality index: every infeasible point
/// inside `conv(F_i)` can be assigned to inequality i as well; a point of
/// `conv(F_i)` already fixed to 0 prunes the node.
pub fn convexity_propagate(
    inst: &RcInstance,
    fixed_one: &[usize],
    is_fixed_zero: &dyn Fn(usize) -> bool,
) -> PropOutcome {
    if fixed_one.len() < 2 {
        return PropOutcome::FixOnes(Vec::new());
    }
    let f_points: Vec<Point> = fixed_one
        .iter()
        .map(|&y| inst.y.points()[y].clone())
        .collect();
    let mut fixes = Vec::new();
    for y in 0..inst.y.len() {
        if fixed_one.contains(&y) {
            continue;
        }
        if geometry::point_in_conv(&f_points, &inst.y.points()[y]) {
            if is_fixed_zero(y) {
                return PropOutcome::Prune;
            }
            fixes.push(y);
        }
    }
    PropOutcome::FixOnes(fixes)
}

/// Intersection propagation for one inequality index: a point whose
/// addition would make `conv(F_i ∪ {y})` meet `conv(X)` can never join
/// inequality i, so `s_yi` is fixed to 0.
pub fn intersection_propagate(
    inst: &RcInstance,
    fixed_one: &[usize],
    is_unfixed: &dyn Fn(usize) -> bool,
) -> Vec<usize> {
    let mut fixes = Vec::new();
    let f_points: Vec<Point> = fixed_one
        .iter()
        .map(|&y| inst.y.points()[y].clone())
        .collect();
    for y in 0..inst.y.len() {
        if fixed_one.contains(&y) || !is_unfixed(y) {
            continue;
        }
        let mut probe = f_points.clone();
        probe.push(inst.y.points()[y].clone());
        if geometry::hulls_intersect(&probe, inst.x.points()) {
            fixes.push(y);
        }
    }
    fixes
}

fn branched_index(vars: &VariableMap, annotation: &Annotation) -> Option<usize> {
    match annotation {
        Annotation::Var { var, .. } => match vars.role(*var) {
            VarRole::S(_, i) => Some(i),
            _ => None,
        },
        _ => None,
    }
}

pub struct ConvexityPropagator {
    inst: Rc<RcInstance>,
    vars: VariableMap,
}

impl ConvexityPropagator {
    pub fn new(inst: Rc<RcInstance>, vars: VariableMap) -> Self {
        ConvexityPropagator { inst, vars }
    }
}

impl Propagator for ConvexityPropagator {
    fn name(&self) -> &'static str {
        "convexity"
    }

    fn propagate(&mut self, ctx: &mut PropCtx<'_>) {
        // only when the branching decision at the parent was on some s_yi,
        // and then only for that inequality index
        let Some(i) = branched_index(&self.vars, ctx.annotation) else {
            return;
        };
        let v = self.vars;
        let fixed_one: Vec<usize> = (0..v.ny).filter(|&y| ctx.is_fixed_one(v.s(y, i))).collect();
        let zeros: Vec<bool> = (0..v.ny).map(|y| ctx.is_fixed_zero(v.s(y, i))).collect();
        match convexity_propagate(&self.inst, &fixed_one, &|y| zeros[y]) {
            PropOutcome::Prune => ctx.infeasible = true,
            PropOutcome::FixOnes(fixes) => {
                for y in fixes {
                    ctx.fix_one(v.s(y, i));
                    if ctx.infeasible {
                        return;
                    }
                }
            }
        }
    }
}

pub struct IntersectionPropagator {
    inst: Rc<RcInstance>,
    vars: VariableMap,
}

impl IntersectionPropagator {
    pub fn new(inst: Rc<RcInstance>, vars: VariableMap) -> Self {
        IntersectionPropagator { inst, vars }
    }
}

impl Propagator for IntersectionPropagator {
    fn name(&self) -> &'static str {
        "intersection"
    }

    fn propagate(&mut self, ctx: &mut PropCtx<'_>) {
        let Some(i) = branched_index(&self.vars, ctx.annotation) else {
            return;
        };
        let v = self.vars;
        let fixed_one: Vec<usize> = (0..v.ny).filter(|&y| ctx.is_fixed_one(v.s(y, i))).collect();
        if fixed_one.is_empty() {
            return;
        }
        let unfixed: Vec<bool> = (0..v.ny)
            .map(|y| !ctx.is_fixed_one(v.s(y, i)) && !ctx.is_fixed_zero(v.s(y, i)))
            .collect();
        for y in intersection_propagate(&self.inst, &fixed_one, &|y| unfixed[y]) {
            ctx.fix_zero(v.s(y, i));
            if ctx.infeasible {
                return;
            }
        }
    }
}

/// Separates the precomputed pool of size-2 hiding-set cuts
/// `s_{y1,i} + s_{y2,i} <= 1`, returning only the rows the current LP point
/// violates.
pub struct HidingCutSeparator {
    vars: VariableMap,
    pairs: Vec<(usize, usize)>,
}

impl HidingCutSeparator {
    pub fn new(vars: VariableMap, pairs: Vec<(usize, usize)>) -> Self {
        HidingCutSeparator { vars, pairs }
    }
}

impl Separator for HidingCutSeparator {
    fn name(&self) -> &'static str {
        "hiding-set-cuts"
    }

    fn separate(&mut self, ctx: &SepCtx<'_>) -> Vec<Cut> {
        let v = self.vars;
        let one = Rat::one();
        let mut cuts = Vec::new();
        for &(y1, y2) in &self.pairs {
            for i in 0..v.k {
                let lhs = &ctx.x[v.s(y1, i)] + &ctx.x[v.s(y2, i)];
                if lhs > one {
                    cuts.push(Cut {
                        row: Row::new(
                            vec![(v.s(y1, i), Rat::one()), (v.s(y2, i), Rat::one())],
                            Rel::Le,
                            Rat::one(),
                        ),
                        global: true,
                    });
                }
            }
        }
        cuts
    }
}

/// Integral conflict separation: for each inequality index, the assigned
/// set `F_i = {y : s*_yi = 1}` is tested by the oracle; inseparable sets are
/// sparsified to inclusion-minimal conflicts. Returns the member index sets.
pub fn separate_conflicts_integral(
    inst: &RcInstance,
    vars: &VariableMap,
    oracle: &SeparationOracle,
    x: &[Rat],
) -> Vec<Vec<usize>> {
    let mut conflicts: Vec<Vec<usize>> = Vec::new();
    for i in 0..vars.k {
        let members: Vec<usize> = (0..vars.ny).filter(|&y| x[vars.s(y, i)].is_one()).collect();
        if members.is_empty() {
            continue;
        }
        let pts: Vec<Point> = members.iter().map(|&y| inst.y.points()[y].clone()).collect();
        if oracle.separates(&pts).is_some() {
            continue;
        }
        let cert = sparsify_conflict(oracle, &pts).expect("oracle said inseparable");
        let idx: Vec<usize> = cert
            .members
            .iter()
            .map(|p| inst.y.index_of(p).expect("member came from Y"))
            .collect();
        if !conflicts.contains(&idx) {
            conflicts.push(idx);
        }
    }
    conflicts
}

/// Expands a conflict member set into the rows
/// `sum_{y in C} s_{y,i} <= |C| - 1` for every inequality index i.
pub fn conflict_rows(vars: &VariableMap, members: &[usize]) -> Vec<Row> {
    let rhs = Rat::from_int(members.len() as i64 - 1);
    (0..vars.k)
        .map(|i| {
            Row::new(
                members.iter().map(|&y| (vars.s(y, i), Rat::one())).collect(),
                Rel::Le,
                rhs.clone(),
            )
        })
        .collect()
}

/// Mandatory feasibility check of integral candidates in the cut model.
pub struct ConflictChecker {
    inst: Rc<RcInstance>,
    vars: VariableMap,
    oracle: Rc<SeparationOracle>,
}

impl ConflictChecker {
    pub fn new(inst: Rc<RcInstance>, vars: VariableMap, oracle: Rc<SeparationOracle>) -> Self {
        ConflictChecker { inst, vars, oracle }
    }
}

impl LazyChecker for ConflictChecker {
    fn name(&self) -> &'static str {
        "conflict-integral"
    }

    fn check(&mut self, ctx: &SepCtx<'_>) -> Vec<Cut> {
        let conflicts = separate_conflicts_integral(&self.inst, &self.vars, &self.oracle, ctx.x);
        conflicts
            .iter()
            .flat_map(|members| conflict_rows(&self.vars, members))
            .map(|row| Cut { row, global: true })
            .collect()
    }
}

/// Heuristic fractional conflict separation: per inequality index, add
/// points by nonincreasing `s*_yi` while a violated conflict row is still
/// possible; emit the first inseparable prefix whose row the point violates.
/// Returns the member index sets found (may miss violated rows: heuristic).
pub fn separate_conflicts_fractional(
    inst: &RcInstance,
    vars: &VariableMap,
    oracle: &SeparationOracle,
    x: &[Rat],
) -> Vec<Vec<usize>> {
    let mut conflicts: Vec<Vec<usize>> = Vec::new();
    for i in 0..vars.k {
        let mut order: Vec<(usize, Rat)> = (0..vars.ny)
            .map(|y| (y, x[vars.s(y, i)].clone()))
            .filter(|(_, v)| v.is_positive())
            .collect();
        order.sort_by(|(ya, va), (yb, vb)| vb.cmp(va).then(ya.cmp(yb)));
        let mut members: Vec<usize> = Vec::new();
        let mut pts: Vec<Point> = Vec::new();
        // violation margin of sum(s*) - (|F| - 1), monotone nonincreasing
        let mut margin = Rat::one();
        for (y, v) in order {
            let next = &margin + &v - Rat::one();
            if !next.is_positive() {
                break;
            }
            margin = next;
            members.push(y);
            pts.push(inst.y.points()[y].clone());
            if pts.len() >= 2 && oracle.separates(&pts).is_none() {
                if !conflicts.contains(&members) {
                    conflicts.push(members.clone());
                }
                break;
            }
        }
    }
    conflicts
}

pub struct FractionalConflictSeparator {
    inst: Rc<RcInstance>,
    vars: VariableMap,
    oracle: Rc<SeparationOracle>,
}

impl FractionalConflictSeparator {
    pub fn new(inst: Rc<RcInstance>, vars: VariableMap, oracle: Rc<SeparationOracle>) -> Self {
        FractionalConflictSeparator { inst, vars, oracle }
    }
}

impl Separator for FractionalConflictSeparator {
    fn name(&self) -> &'static str {
        "conflict-fractional"
    }

    fn separate(&mut self, ctx: &SepCtx<'_>) -> Vec<Cut> {
        if ctx.is_integral {
            return Vec::new(); // integral points go through the lazy checker
        }
        let conflicts =
            separate_conflicts_fractional(&self.inst, &self.vars, &self.oracle, ctx.x);
        conflicts
            .iter()
            .flat_map(|members| conflict_rows(&self.vars, members))
            .map(|row| Cut { row, global: true })
            .collect()
    }
}

/// Lexicographic order enforcement `v ⪰_lex w` for a family of index lists:
/// adjacent s-columns (orbitope style) and one list per symmetry generator
/// (symresack style). Acts as a propagator (fixing logic) and as a separator
/// emitting locally valid first-undecided-position cover cuts.
pub struct LexPlugin {
    lists: Vec<Vec<(usize, usize)>>,
}

impl LexPlugin {
    pub fn new(lists: Vec<Vec<(usize, usize)>>) -> Self {
        LexPlugin { lists }
    }
}

impl Propagator for LexPlugin {
    fn name(&self) -> &'static str {
        "lex-order"
    }

    fn propagate(&mut self, ctx: &mut PropCtx<'_>) {
        for list in &self.lists {
            match lex_ge_propagate(ctx.lower, ctx.upper, list) {
                LexOutcome::Infeasible => {
                    ctx.infeasible = true;
                    return;
                }
                LexOutcome::Fixings(fixes) => {
                    for (var, val) in fixes {
                        if val {
                            ctx.fix_one(var);
                        } else {
                            ctx.fix_zero(var);
                        }
                        if ctx.infeasible {
                            return;
                        }
                    }
                }
            }
        }
    }
}

impl Separator for LexPlugin {
    fn name(&self) -> &'static str {
        "lex-cover-cuts"
    }

    fn separate(&mut self, ctx: &SepCtx<'_>) -> Vec<Cut> {
        let fixed = |v: usize| -> Option<bool> {
            if ctx.lower[v].as_ref().map_or(false, |l| l.is_one()) {
                Some(true)
            } else if ctx.upper[v].as_ref().map_or(false, |u| u.is_zero()) {
                Some(false)
            } else {
                None
            }
        };
        let mut cuts = Vec::new();
        for list in &self.lists {
            for &(v, w) in list {
                if v == w {
                    continue;
                }
                match (fixed(v), fixed(w)) {
                    (Some(a), Some(b)) if a == b => continue,
                    (Some(true), Some(false)) => break, // satisfied strictly
                    (Some(false), Some(true)) => break, // propagator prunes
                    _ => {
                        // first undecided position: v >= w holds given the
                        // fixed-equal prefix, valid for this subtree
                        if ctx.x[v] < ctx.x[w] {
                            cuts.push(Cut {
                                row: Row::new(
                                    vec![(v, Rat::one()), (w, -Rat::one())],
                                    Rel::Ge,
                                    Rat::zero(),
                                ),
                                global: false,
                            });
                        }
                        break;
                    }
                }
            }
        }
        cuts
    }
}
