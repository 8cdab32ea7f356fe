//! Exact rational linear programming.
//!
//! A bounded-variable primal simplex over [`Rat`] with Bland's rule as an
//! anti-cycling guard, two phases (artificial variables), exact duals with
//! strong duality on every optimal solve, and Farkas certificates on
//! infeasible ones. Large LPs are solved through a row-activation loop so the
//! simplex only ever factors the rows that matter.

use crate::rat::{sparse_dot, Rat};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rel {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<(usize, Rat)>,
    pub rel: Rel,
    pub rhs: Rat,
}

impl Row {
    pub fn new(coeffs: Vec<(usize, Rat)>, rel: Rel, rhs: Rat) -> Row {
        Row { coeffs, rel, rhs }
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        sparse_dot(&self.coeffs, x)
    }

    pub fn satisfied_by(&self, x: &[Rat]) -> bool {
        let v = self.eval(x);
        match self.rel {
            Rel::Le => v <= self.rhs,
            Rel::Eq => v == self.rhs,
            Rel::Ge => v >= self.rhs,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Min,
    Max,
}

/// A bounded mixed-sign linear program. Bounds of `None` are infinite.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rat>,
    pub sense: Sense,
    pub bounds: Vec<(Option<Rat>, Option<Rat>)>,
    pub rows: Vec<Row>,
}

impl LinearProgram {
    pub fn new(num_vars: usize, sense: Sense) -> LinearProgram {
        LinearProgram {
            num_vars,
            objective: vec![Rat::zero(); num_vars],
            sense,
            bounds: vec![(None, None); num_vars],
            rows: Vec::new(),
        }
    }

    pub fn add_row(&mut self, coeffs: Vec<(usize, Rat)>, rel: Rel, rhs: Rat) -> usize {
        debug_assert!(coeffs.iter().all(|(j, _)| *j < self.num_vars));
        self.rows.push(Row::new(coeffs, rel, rhs));
        self.rows.len() - 1
    }

    pub fn add_var(&mut self, obj: Rat, lower: Option<Rat>, upper: Option<Rat>) -> usize {
        self.objective.push(obj);
        self.bounds.push((lower, upper));
        self.num_vars += 1;
        self.num_vars - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Structural variable values (optimal solves only).
    pub primal: Vec<Rat>,
    /// One multiplier per row. On optimal solves these are the LP duals (for
    /// `Min`: `<=` rows nonpositive, `>=` rows nonnegative). On infeasible
    /// solves they form a Farkas certificate, see [`verify_farkas`].
    pub duals: Vec<Rat>,
    pub objective_value: Rat,
    pub pivots: u64,
}

const ROW_ACTIVATION_THRESHOLD: usize = 220;
const BLAND_TRIGGER: u32 = 30;
const PIVOT_LIMIT: u64 = 2_000_000;

/// Solves the LP exactly. All outcomes are encoded in the returned status.
pub fn solve(lp: &LinearProgram) -> LpSolution {
    solve_hinted(lp, &[])
}

/// Like [`solve`], with a caller-provided initial working row set (row ids).
/// Useful when re-solving a slightly modified LP.
pub fn solve_hinted(lp: &LinearProgram, hint_rows: &[usize]) -> LpSolution {
    let minimize = prepare_objective(lp);
    if lp.rows.len() <= ROW_ACTIVATION_THRESHOLD && hint_rows.is_empty() {
        let all: Vec<usize> = (0..lp.rows.len()).collect();
        return finish(lp, Core::run(lp, &minimize, &all));
    }

    // Row activation: start from the rows violated at the default bound
    // point (plus hints), then add violated rows until optimal.
    let x0 = default_point(lp);
    let mut active = vec![false; lp.rows.len()];
    for &r in hint_rows {
        active[r] = true;
    }
    for (r, row) in lp.rows.iter().enumerate() {
        if !row.satisfied_by(&x0) {
            active[r] = true;
        }
    }
    loop {
        let working: Vec<usize> = (0..lp.rows.len()).filter(|&r| active[r]).collect();
        let res = Core::run(lp, &minimize, &working);
        match res.status {
            LpStatus::Infeasible => return finish(lp, res),
            LpStatus::Unbounded => {
                if working.len() == lp.rows.len() {
                    return finish(lp, res);
                }
                for a in active.iter_mut() {
                    *a = true;
                }
            }
            LpStatus::Optimal => {
                let mut added = false;
                for (r, row) in lp.rows.iter().enumerate() {
                    if !active[r] && !row.satisfied_by(&res.primal) {
                        active[r] = true;
                        added = true;
                    }
                }
                if !added {
                    return finish(lp, res);
                }
            }
        }
    }
}

fn prepare_objective(lp: &LinearProgram) -> Vec<Rat> {
    match lp.sense {
        Sense::Min => lp.objective.clone(),
        Sense::Max => lp.objective.iter().map(|c| -c).collect(),
    }
}

fn finish(lp: &LinearProgram, mut res: CoreResult) -> LpSolution {
    if lp.sense == Sense::Max {
        res.objective_value = -res.objective_value;
        if res.status == LpStatus::Optimal {
            for d in res.duals.iter_mut() {
                *d = -d.clone();
            }
        }
    }
    let sol = LpSolution {
        status: res.status,
        primal: res.primal,
        duals: res.duals,
        objective_value: res.objective_value,
        pivots: res.pivots,
    };
    debug_assert!(match sol.status {
        LpStatus::Optimal => verify_optimal(lp, &sol).is_ok(),
        LpStatus::Infeasible => verify_farkas(lp, &sol.duals),
        LpStatus::Unbounded => true,
    });
    sol
}

fn default_point(lp: &LinearProgram) -> Vec<Rat> {
    lp.bounds
        .iter()
        .map(|(l, u)| match (l, u) {
            (Some(l), _) => l.clone(),
            (None, Some(u)) => u.clone(),
            (None, None) => Rat::zero(),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Core simplex
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum VStatus {
    Basic,
    AtLower,
    AtUpper,
    FreeZero,
}

struct CoreResult {
    status: LpStatus,
    primal: Vec<Rat>,
    duals: Vec<Rat>,
    objective_value: Rat,
    pivots: u64,
}

struct Core<'a> {
    lp: &'a LinearProgram,
    working: &'a [usize],
    n: usize,
    m: usize,
    /// Sparse column per structural variable, restricted to working rows.
    cols: Vec<Vec<(usize, Rat)>>,
    /// Artificial columns: (working row, sign).
    art: Vec<(usize, Rat)>,
    lower: Vec<Option<Rat>>,
    upper: Vec<Option<Rat>>,
    status: Vec<VStatus>,
    value: Vec<Rat>,
    basis: Vec<usize>,
    binv: Vec<Vec<Rat>>,
    cost: Vec<Rat>,
    one: Rat,
    pivots: u64,
    degen_streak: u32,
    bland: bool,
}

impl<'a> Core<'a> {
    /// var id layout: [0, n) structural, [n, n+m) slack per working row,
    /// [n+m, ...) artificial.
    fn run(lp: &'a LinearProgram, minimize: &[Rat], working: &'a [usize]) -> CoreResult {
        let n = lp.num_vars;
        let m = working.len();

        let mut cols: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); n];
        for (wi, &r) in working.iter().enumerate() {
            for (j, c) in &lp.rows[r].coeffs {
                if !c.is_zero() {
                    cols[*j].push((wi, c.clone()));
                }
            }
        }

        let mut lower: Vec<Option<Rat>> = lp.bounds.iter().map(|(l, _)| l.clone()).collect();
        let mut upper: Vec<Option<Rat>> = lp.bounds.iter().map(|(_, u)| u.clone()).collect();
        let mut status = Vec::with_capacity(n + m);
        let mut value = Vec::with_capacity(n + m);
        for j in 0..n {
            let (st, v) = match (&lower[j], &upper[j]) {
                (Some(l), _) => (VStatus::AtLower, l.clone()),
                (None, Some(u)) => (VStatus::AtUpper, u.clone()),
                (None, None) => (VStatus::FreeZero, Rat::zero()),
            };
            status.push(st);
            value.push(v);
        }

        // Slack variables and the initial (possibly artificial) basis.
        let mut basis = Vec::with_capacity(m);
        let mut art: Vec<(usize, Rat)> = Vec::new();
        let mut art_ids: Vec<usize> = Vec::new();
        let mut residuals: Vec<Rat> = Vec::with_capacity(m);
        for &r in working.iter() {
            residuals.push(&lp.rows[r].rhs - &lp.rows[r].eval(&value[..n]));
        }
        for (wi, &r) in working.iter().enumerate() {
            let row = &lp.rows[r];
            let (sl, su) = match row.rel {
                Rel::Le => (Some(Rat::zero()), None),
                Rel::Ge => (None, Some(Rat::zero())),
                Rel::Eq => (Some(Rat::zero()), Some(Rat::zero())),
            };
            let rho = residuals[wi].clone();
            let feasible = sl.as_ref().map_or(true, |l| &rho >= l)
                && su.as_ref().map_or(true, |u| &rho <= u);
            lower.push(sl);
            upper.push(su);
            if feasible {
                status.push(VStatus::Basic);
                value.push(rho);
                basis.push(n + wi);
            } else {
                // Slack parked at its zero bound, artificial carries the residual.
                status.push(match row.rel {
                    Rel::Ge => VStatus::AtUpper,
                    _ => VStatus::AtLower,
                });
                value.push(Rat::zero());
                let sign = if rho.is_positive() {
                    Rat::one()
                } else {
                    -Rat::one()
                };
                art.push((wi, sign));
                art_ids.push(n + m + art.len() - 1);
                basis.push(n + m + art.len() - 1);
            }
        }
        for &(wi, ref sign) in &art {
            lower.push(Some(Rat::zero()));
            upper.push(None);
            status.push(VStatus::Basic);
            value.push(&residuals[wi] * sign); // |rho|
        }

        let total = n + m + art.len();
        // Initial basis matrix is diagonal: +1 for slack rows, the artificial
        // sign for artificial rows. Its inverse is the same diagonal.
        let mut binv: Vec<Vec<Rat>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        for &(wi, ref sign) in &art {
            binv[wi][wi] = sign.clone();
        }
        let mut core = Core {
            lp,
            working,
            n,
            m,
            cols,
            art,
            lower,
            upper,
            status,
            value,
            basis,
            binv,
            cost: vec![Rat::zero(); total],
            one: Rat::one(),
            pivots: 0,
            degen_streak: 0,
            bland: false,
        };

        // Phase 1: drive artificials to zero.
        if !art_ids.is_empty() {
            for &a in &art_ids {
                core.cost[a] = Rat::one();
            }
            let st = core.iterate();
            assert_eq!(st, IterExit::Optimal, "phase 1 cannot be unbounded");
            let infeas: Rat = art_ids.iter().map(|&a| core.value[a].clone()).sum();
            if infeas.is_positive() {
                let duals = core.extract_duals();
                return CoreResult {
                    status: LpStatus::Infeasible,
                    primal: Vec::new(),
                    duals,
                    objective_value: infeas,
                    pivots: core.pivots,
                };
            }
            // Pin artificials at zero for phase 2.
            for &a in &art_ids {
                core.upper[a] = Some(Rat::zero());
                core.cost[a] = Rat::zero();
            }
        }

        for j in 0..n {
            core.cost[j] = minimize[j].clone();
        }
        core.bland = false;
        core.degen_streak = 0;
        match core.iterate() {
            IterExit::Optimal => {
                let duals = core.extract_duals();
                let primal = core.value[..n].to_vec();
                let objective_value = crate::rat::dot(&minimize[..n], &primal);
                CoreResult {
                    status: LpStatus::Optimal,
                    primal,
                    duals,
                    objective_value,
                    pivots: core.pivots,
                }
            }
            IterExit::Unbounded => CoreResult {
                status: LpStatus::Unbounded,
                primal: Vec::new(),
                duals: Vec::new(),
                objective_value: Rat::zero(),
                pivots: core.pivots,
            },
        }
    }

    fn for_col<F: FnMut(usize, &Rat)>(&self, var: usize, mut f: F) {
        if var < self.n {
            for (wi, a) in &self.cols[var] {
                f(*wi, a);
            }
        } else if var < self.n + self.m {
            f(var - self.n, &self.one);
        } else {
            let (wi, ref sign) = self.art[var - self.n - self.m];
            f(wi, sign);
        }
    }

    /// y = cost_B · B^{-1}
    fn btran(&self) -> Vec<Rat> {
        let mut y = vec![Rat::zero(); self.m];
        for i in 0..self.m {
            let cb = &self.cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.m {
                let b = &self.binv[i][j];
                if !b.is_zero() {
                    y[j] += cb * b;
                }
            }
        }
        y
    }

    /// w = B^{-1} · column(var)
    fn ftran(&self, var: usize) -> Vec<Rat> {
        let mut w = vec![Rat::zero(); self.m];
        self.for_col(var, |wi, a| {
            if !a.is_zero() {
                for i in 0..self.m {
                    let b = &self.binv[i][wi];
                    if !b.is_zero() {
                        w[i] += a * b;
                    }
                }
            }
        });
        w
    }

    fn reduced_cost(&self, var: usize, y: &[Rat]) -> Rat {
        let mut d = self.cost[var].clone();
        self.for_col(var, |wi, a| {
            if !a.is_zero() && !y[wi].is_zero() {
                d -= a * &y[wi];
            }
        });
        d
    }

    fn is_fixed(&self, var: usize) -> bool {
        matches!((&self.lower[var], &self.upper[var]), (Some(l), Some(u)) if l == u)
    }

    fn iterate(&mut self) -> IterExit {
        let total = self.cost.len();
        loop {
            self.pivots += 1;
            assert!(
                self.pivots < PIVOT_LIMIT,
                "simplex pivot limit exceeded (cycling guard failure?)"
            );
            let y = self.btran();

            // entering variable
            let mut entering: Option<(usize, Rat, i32)> = None; // (var, |d|, dir)
            for v in 0..total {
                if self.status[v] == VStatus::Basic || self.is_fixed(v) {
                    continue;
                }
                let d = self.reduced_cost(v, &y);
                let dir = match self.status[v] {
                    VStatus::AtLower if d.is_negative() => 1,
                    VStatus::AtUpper if d.is_positive() => -1,
                    VStatus::FreeZero if !d.is_zero() => {
                        if d.is_negative() {
                            1
                        } else {
                            -1
                        }
                    }
                    _ => continue,
                };
                if self.bland {
                    entering = Some((v, d.abs(), dir));
                    break;
                }
                let mag = d.abs();
                match &entering {
                    Some((_, best, _)) if *best >= mag => {}
                    _ => entering = Some((v, mag, dir)),
                }
            }
            let Some((e, _, dir)) = entering else {
                return IterExit::Optimal;
            };

            // ratio test
            let w = self.ftran(e);
            let dirr = Rat::from_int(dir as i64);
            let mut limit: Option<(Rat, Option<usize>)> = None; // (t, leaving row)
            if let (Some(l), Some(u)) = (&self.lower[e], &self.upper[e]) {
                limit = Some((u - l, None));
            }
            for i in 0..self.m {
                if w[i].is_zero() {
                    continue;
                }
                let q = -(&dirr * &w[i]); // per-unit change of basic i
                let bv = self.basis[i];
                let target = if q.is_positive() {
                    self.upper[bv].as_ref()
                } else {
                    self.lower[bv].as_ref()
                };
                let Some(target) = target else { continue };
                let t = (target - &self.value[bv]) / &q;
                debug_assert!(!t.is_negative(), "basic variable out of bounds");
                let better = match &limit {
                    None => true,
                    Some((cur, leave)) => {
                        t < *cur
                            || (t == *cur
                                && leave.map_or(false, |lr| self.basis[i] < self.basis[lr]))
                    }
                };
                if better {
                    limit = Some((t, Some(i)));
                }
            }

            let Some((t, leaving)) = limit else {
                return IterExit::Unbounded;
            };
            if t.is_zero() {
                self.degen_streak += 1;
                if self.degen_streak > BLAND_TRIGGER {
                    self.bland = true;
                }
            } else {
                self.degen_streak = 0;
                self.bland = false;
            }

            let delta = &dirr * &t;
            // move entering and basics
            if !delta.is_zero() {
                for i in 0..self.m {
                    if w[i].is_zero() {
                        continue;
                    }
                    let bv = self.basis[i];
                    let change = &delta * &w[i];
                    self.value[bv] = &self.value[bv] - &change;
                }
                self.value[e] = &self.value[e] + &delta;
            }

            match leaving {
                None => {
                    // bound flip
                    self.status[e] = if dir > 0 {
                        VStatus::AtUpper
                    } else {
                        VStatus::AtLower
                    };
                    self.value[e] = if dir > 0 {
                        self.upper[e].clone().unwrap()
                    } else {
                        self.lower[e].clone().unwrap()
                    };
                }
                Some(lr) => {
                    let lv = self.basis[lr];
                    let q_pos = (&dirr * &w[lr]).is_negative();
                    self.status[lv] = if q_pos {
                        VStatus::AtUpper
                    } else {
                        VStatus::AtLower
                    };
                    self.value[lv] = if q_pos {
                        self.upper[lv].clone().unwrap()
                    } else {
                        self.lower[lv].clone().unwrap()
                    };
                    self.status[e] = VStatus::Basic;
                    self.basis[lr] = e;
                    // binv update
                    let piv = w[lr].clone();
                    let inv = piv.recip();
                    for j in 0..self.m {
                        if !self.binv[lr][j].is_zero() {
                            self.binv[lr][j] = &self.binv[lr][j] * &inv;
                        }
                    }
                    for i in 0..self.m {
                        if i == lr || w[i].is_zero() {
                            continue;
                        }
                        for j in 0..self.m {
                            if !self.binv[lr][j].is_zero() {
                                let delta = &w[i] * &self.binv[lr][j];
                                self.binv[i][j] -= delta;
                            }
                        }
                    }
                }
            }
        }
    }

    fn extract_duals(&self) -> Vec<Rat> {
        let y = self.btran();
        let mut duals = vec![Rat::zero(); self.lp.rows.len()];
        for (wi, &r) in self.working.iter().enumerate() {
            duals[r] = y[wi].clone();
        }
        duals
    }
}

#[derive(PartialEq, Eq, Debug)]
enum IterExit {
    Optimal,
    Unbounded,
}

// ---------------------------------------------------------------------------
// Exact verification
// ---------------------------------------------------------------------------

/// Checks primal feasibility, dual feasibility, complementary slackness and
/// exact strong duality of an optimal solution.
pub fn verify_optimal(lp: &LinearProgram, sol: &LpSolution) -> Result<(), String> {
    if sol.status != LpStatus::Optimal {
        return Err("not an optimal solution".into());
    }
    let x = &sol.primal;
    if x.len() != lp.num_vars {
        return Err("primal length mismatch".into());
    }
    for (j, (l, u)) in lp.bounds.iter().enumerate() {
        if l.as_ref().map_or(false, |l| &x[j] < l) || u.as_ref().map_or(false, |u| &x[j] > u) {
            return Err(format!("variable {j} out of bounds"));
        }
    }
    for (r, row) in lp.rows.iter().enumerate() {
        if !row.satisfied_by(x) {
            return Err(format!("row {r} violated"));
        }
    }
    let minimize = prepare_objective(lp);
    let y: Vec<Rat> = match lp.sense {
        Sense::Min => sol.duals.clone(),
        Sense::Max => sol.duals.iter().map(|d| -d).collect(),
    };
    // dual sign conditions + complementary slackness on rows
    for (r, row) in lp.rows.iter().enumerate() {
        match row.rel {
            Rel::Le => {
                if y[r].is_positive() {
                    return Err(format!("row {r}: dual sign")); // Min & <= : y <= 0
                }
            }
            Rel::Ge => {
                if y[r].is_negative() {
                    return Err(format!("row {r}: dual sign"));
                }
            }
            Rel::Eq => {}
        }
        if !y[r].is_zero() && row.eval(x) != row.rhs {
            return Err(format!("row {r}: complementary slackness"));
        }
    }
    // reduced costs vs bounds + strong duality
    let mut dual_obj: Rat = lp
        .rows
        .iter()
        .zip(&y)
        .map(|(row, yr)| yr * &row.rhs)
        .sum();
    let mut col_dual = vec![Rat::zero(); lp.num_vars];
    for (row, yr) in lp.rows.iter().zip(&y) {
        if yr.is_zero() {
            continue;
        }
        for (j, c) in &row.coeffs {
            col_dual[*j] += yr * c;
        }
    }
    for j in 0..lp.num_vars {
        let d = &minimize[j] - &col_dual[j];
        if d.is_zero() {
            continue;
        }
        let (l, u) = &lp.bounds[j];
        if d.is_positive() {
            match l {
                Some(l) => {
                    if &x[j] != l {
                        return Err(format!("var {j}: positive reduced cost off lower bound"));
                    }
                    dual_obj += &d * l;
                }
                None => return Err(format!("var {j}: dual infeasible (no lower bound)")),
            }
        } else {
            match u {
                Some(u) => {
                    if &x[j] != u {
                        return Err(format!("var {j}: negative reduced cost off upper bound"));
                    }
                    dual_obj += &d * u;
                }
                None => return Err(format!("var {j}: dual infeasible (no upper bound)")),
            }
        }
    }
    let primal_obj = crate::rat::dot(&minimize, x);
    if primal_obj != dual_obj {
        return Err(format!(
            "strong duality gap: primal {primal_obj} vs dual {dual_obj}"
        ));
    }
    let reported = match lp.sense {
        Sense::Min => primal_obj,
        Sense::Max => -primal_obj,
    };
    if reported != sol.objective_value {
        return Err("objective value mismatch".into());
    }
    Ok(())
}

/// Audits a Farkas certificate: the row combination `y` must prove that no
/// point within the variable bounds satisfies all rows. Relations are folded
/// in through the implied slack bounds.
pub fn verify_farkas(lp: &LinearProgram, y: &[Rat]) -> bool {
    if y.len() != lp.rows.len() {
        return false;
    }
    // box-max of sum_j (y·A)_j x_j + sum_r y_r s_r subject to bound/slack boxes
    let mut col_dual = vec![Rat::zero(); lp.num_vars];
    for (row, yr) in lp.rows.iter().zip(y) {
        if yr.is_zero() {
            continue;
        }
        for (j, c) in &row.coeffs {
            col_dual[*j] += yr * c;
        }
    }
    let mut box_max = Rat::zero();
    for (j, kappa) in col_dual.iter().enumerate() {
        if kappa.is_zero() {
            continue;
        }
        let (l, u) = &lp.bounds[j];
        if kappa.is_positive() {
            match u {
                Some(u) => box_max += kappa * u,
                None => return false, // unbounded above: no contradiction
            }
        } else {
            match l {
                Some(l) => box_max += kappa * l,
                None => return false,
            }
        }
    }
    for (row, yr) in lp.rows.iter().zip(y) {
        if yr.is_zero() {
            continue;
        }
        // slack bounds: Le -> s in [0, inf), Ge -> s in (-inf, 0], Eq -> 0
        match row.rel {
            Rel::Le => {
                if yr.is_positive() {
                    return false; // sup over s >= 0 of yr*s unbounded
                }
            }
            Rel::Ge => {
                if yr.is_negative() {
                    return false;
                }
            }
            Rel::Eq => {}
        }
        // max of yr*s over the slack box is 0 in all remaining cases
    }
    let rhs_combo: Rat = lp.rows.iter().zip(y).map(|(row, yr)| yr * &row.rhs).sum();
    box_max < rhs_combo
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};
    use proptest::prelude::*;

    fn simple_lp(sense: Sense) -> LinearProgram {
        let mut lp = LinearProgram::new(1, sense);
        lp.objective[0] = rat(1);
        lp.bounds[0] = (Some(rat(0)), None);
        lp.add_row(vec![(0, rat(1))], Rel::Le, rat(3));
        lp
    }

    #[test]
    fn maximize_simple() {
        let sol = solve(&simple_lp(Sense::Max));
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.primal[0], rat(3));
        assert_eq!(sol.objective_value, rat(3));
        verify_optimal(&simple_lp(Sense::Max), &sol).unwrap();
    }

    #[test]
    fn infeasible_with_farkas() {
        // min 0 s.t. x <= -1, x >= 0
        let mut lp = LinearProgram::new(1, Sense::Min);
        lp.bounds[0] = (Some(rat(0)), None);
        lp.add_row(vec![(0, rat(1))], Rel::Le, rat(-1));
        let sol = solve(&lp);
        assert_eq!(sol.status, LpStatus::Infeasible);
        assert!(verify_farkas(&lp, &sol.duals));
    }

    #[test]
    fn unbounded_detected() {
        let mut lp = LinearProgram::new(1, Sense::Max);
        lp.objective[0] = rat(1);
        lp.bounds[0] = (Some(rat(0)), None);
        let sol = solve(&lp);
        assert_eq!(sol.status, LpStatus::Unbounded);
    }

    #[test]
    fn restricted_master_dual_example() {
        // Covering master for X={0} in Z^1, Y={-1,1}, columns {{-1}},{{1}}:
        // min z1+z2 s.t. z1 >= 1, z2 >= 1; duals are (1,1), objective 2.
        let mut lp = LinearProgram::new(2, Sense::Min);
        lp.objective = vec![rat(1), rat(1)];
        lp.bounds = vec![(Some(rat(0)), None), (Some(rat(0)), None)];
        lp.add_row(vec![(0, rat(1))], Rel::Ge, rat(1));
        lp.add_row(vec![(1, rat(1))], Rel::Ge, rat(1));
        let sol = solve(&lp);
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.objective_value, rat(2));
        assert_eq!(sol.duals, vec![rat(1), rat(1)]);
        verify_optimal(&lp, &sol).unwrap();
    }

    #[test]
    fn equality_rows_and_free_vars() {
        // min x + y s.t. x + y = 4, x - y = 2, free vars
        let mut lp = LinearProgram::new(2, Sense::Min);
        lp.objective = vec![rat(1), rat(1)];
        lp.add_row(vec![(0, rat(1)), (1, rat(1))], Rel::Eq, rat(4));
        lp.add_row(vec![(0, rat(1)), (1, rat(-1))], Rel::Eq, rat(2));
        let sol = solve(&lp);
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.primal, vec![rat(3), rat(1)]);
        verify_optimal(&lp, &sol).unwrap();
    }

    #[test]
    fn beale_cycling_guard() {
        // Beale's classic cycling example; Dantzig pricing with the Bland
        // fallback must terminate in a bounded number of pivots.
        let mut lp = LinearProgram::new(4, Sense::Min);
        lp.objective = vec![ratio(-3, 4), rat(150), ratio(-1, 50), rat(6)];
        for j in 0..4 {
            lp.bounds[j] = (Some(rat(0)), None);
        }
        lp.add_row(
            vec![
                (0, ratio(1, 4)),
                (1, rat(-60)),
                (2, ratio(-1, 25)),
                (3, rat(9)),
            ],
            Rel::Le,
            rat(0),
        );
        lp.add_row(
            vec![
                (0, ratio(1, 2)),
                (1, rat(-90)),
                (2, ratio(-1, 50)),
                (3, rat(3)),
            ],
            Rel::Le,
            rat(0),
        );
        lp.add_row(vec![(2, rat(1))], Rel::Le, rat(1));
        let sol = solve(&lp);
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.objective_value, ratio(-1, 20));
        assert!(sol.pivots < 100, "pivot count {} too large", sol.pivots);
        verify_optimal(&lp, &sol).unwrap();
    }

    #[test]
    fn degenerate_fixed_vars() {
        let mut lp = LinearProgram::new(2, Sense::Min);
        lp.objective = vec![rat(1), rat(0)];
        lp.bounds = vec![(Some(rat(2)), Some(rat(2))), (Some(rat(0)), Some(rat(1)))];
        lp.add_row(vec![(0, rat(1)), (1, rat(1))], Rel::Ge, rat(2));
        let sol = solve(&lp);
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.primal[0], rat(2));
        verify_optimal(&lp, &sol).unwrap();
    }

    fn arb_lp() -> impl Strategy<Value = LinearProgram> {
        let coeff = -4i64..5;
        (2usize..5, 1usize..7).prop_flat_map(move |(n, m)| {
            (
                proptest::collection::vec(coeff.clone(), n),
                proptest::collection::vec(
                    (
                        proptest::collection::vec(coeff.clone(), n),
                        0usize..3,
                        -6i64..7,
                    ),
                    m,
                ),
                proptest::collection::vec((0i64..2, 1i64..6), n),
            )
                .prop_map(move |(obj, rows, boxes)| {
                    let mut lp = LinearProgram::new(n, Sense::Min);
                    lp.objective = obj.into_iter().map(rat).collect();
                    for (j, (lo, width)) in boxes.into_iter().enumerate() {
                        lp.bounds[j] = (Some(rat(lo)), Some(rat(lo + width)));
                    }
                    for (coeffs, rel, rhs) in rows {
                        let rel = match rel {
                            0 => Rel::Le,
                            1 => Rel::Ge,
                            _ => Rel::Eq,
                        };
                        let coeffs = coeffs
                            .into_iter()
                            .enumerate()
                            .map(|(j, c)| (j, rat(c)))
                            .collect();
                        lp.add_row(coeffs, rel, rat(rhs));
                    }
                    lp
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn certificates_always_verify(lp in arb_lp()) {
            let sol = solve(&lp);
            match sol.status {
                LpStatus::Optimal => prop_assert!(verify_optimal(&lp, &sol).is_ok()),
                LpStatus::Infeasible => prop_assert!(verify_farkas(&lp, &sol.duals)),
                LpStatus::Unbounded => unreachable!("boxed variables"),
            }
        }

        #[test]
        fn row_permutation_invariance(lp in arb_lp(), seed in 0u64..1000) {
            let sol = solve(&lp);
            let mut permuted = lp.clone();
            // deterministic shuffle
            let mut order: Vec<usize> = (0..lp.rows.len()).collect();
            let mut s = seed.wrapping_add(0x9e3779b97f4a7c15);
            for i in (1..order.len()).rev() {
                s ^= s << 13; s ^= s >> 7; s ^= s << 17;
                order.swap(i, (s % (i as u64 + 1)) as usize);
            }
            permuted.rows = order.iter().map(|&r| lp.rows[r].clone()).collect();
            let sol2 = solve(&permuted);
            prop_assert_eq!(sol.status, sol2.status);
            if sol.status == LpStatus::Optimal {
                prop_assert_eq!(sol.objective_value, sol2.objective_value);
            }
        }
    }
}
