//! A generic exact branch-and-bound engine over bounded mixed-binary
//! programs, with plugin contracts for propagators, cut separators, lazy
//! (feasibility-critical) constraint checkers, a pricer, and branching
//! rules. Node selection is best-bound with depth-first plunging and
//! deterministic tie-breaks; all arithmetic is exact, so integrality means
//! membership in Z, not closeness to it.

use crate::exactlp::{self, LinearProgram, LpStatus, Rel, Row, Sense};
use crate::rat::Rat;
use std::collections::{BinaryHeap, HashSet};
use std::time::Instant;

/// How a node came into existence; plugins use this to scope their work.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Annotation {
    Root,
    /// Bound split on a variable (`up` = the `>=`-child).
    Var { var: usize, up: bool },
    /// Ryan–Foster style branching on a pair of point indices.
    PointPair { a: usize, b: usize, together: bool },
}

/// Propagation context: node-local bounds with fix helpers.
pub struct PropCtx<'a> {
    pub lower: &'a mut Vec<Option<Rat>>,
    pub upper: &'a mut Vec<Option<Rat>>,
    /// Annotation of the branching that created this node.
    pub annotation: &'a Annotation,
    pub changed: bool,
    pub infeasible: bool,
}

impl PropCtx<'_> {
    pub fn is_fixed_one(&self, v: usize) -> bool {
        self.lower[v].as_ref().map_or(false, |l| l.is_one())
    }

    pub fn is_fixed_zero(&self, v: usize) -> bool {
        self.upper[v].as_ref().map_or(false, |u| u.is_zero())
    }

    pub fn fix_one(&mut self, v: usize) {
        if self.is_fixed_zero(v) {
            self.infeasible = true;
        } else if !self.is_fixed_one(v) {
            self.lower[v] = Some(Rat::one());
            self.changed = true;
        }
    }

    pub fn fix_zero(&mut self, v: usize) {
        if self.is_fixed_one(v) {
            self.infeasible = true;
        } else if !self.is_fixed_zero(v) {
            self.upper[v] = Some(Rat::zero());
            self.changed = true;
        }
    }
}

pub trait Propagator {
    fn name(&self) -> &'static str;
    fn propagate(&mut self, ctx: &mut PropCtx<'_>);
}

/// A cut produced by a separator or lazy checker. Global cuts join the pool
/// shared by the whole tree; local ones bind the current subtree only.
#[derive(Clone, Debug)]
pub struct Cut {
    pub row: Row,
    pub global: bool,
}

pub struct SepCtx<'a> {
    pub x: &'a [Rat],
    pub lower: &'a [Option<Rat>],
    pub upper: &'a [Option<Rat>],
    pub is_integral: bool,
}

pub trait Separator {
    fn name(&self) -> &'static str;
    fn separate(&mut self, ctx: &SepCtx<'_>) -> Vec<Cut>;
}

/// Feasibility-critical check of integral LP solutions. Returning no cuts
/// accepts the candidate as a genuine solution.
pub trait LazyChecker {
    fn name(&self) -> &'static str;
    fn check(&mut self, ctx: &SepCtx<'_>) -> Vec<Cut>;
}

#[derive(Clone, Debug)]
pub struct NewColumn {
    /// Objective coefficient in the model's original sense.
    pub objective: Rat,
    /// Sparse entries over the model's static rows.
    pub entries: Vec<(usize, Rat)>,
    pub lower: Rat,
    pub upper: Rat,
    pub integral: bool,
}

pub trait Pricer {
    fn name(&self) -> &'static str;
    /// Given duals of the static rows, return columns with improving reduced
    /// cost. `next_var` is the variable id the first returned column gets.
    fn price(&mut self, duals: &[Rat], path: &[Annotation], next_var: usize) -> Vec<NewColumn>;
    /// Bounds for pricer-created columns when a node with `path` is loaded;
    /// `None` keeps the column's default bounds.
    fn column_bounds(&self, var: usize, path: &[Annotation]) -> Option<(Rat, Rat)>;
}

pub struct BranchCtx<'a> {
    pub x: &'a [Rat],
    pub lower: &'a [Option<Rat>],
    pub upper: &'a [Option<Rat>],
    pub path: &'a [Annotation],
    pub integrality: &'a [bool],
}

#[derive(Clone, Debug)]
pub struct ChildSpec {
    pub annotation: Annotation,
    /// (var, new lower, new upper); `None` keeps the inherited bound.
    pub fixes: Vec<(usize, Option<Rat>, Option<Rat>)>,
    pub rows: Vec<Row>,
}

pub trait BranchingRule {
    fn name(&self) -> &'static str;
    /// `None` falls back to most-fractional variable branching.
    fn branch(&mut self, ctx: &BranchCtx<'_>) -> Option<Vec<ChildSpec>>;
}

#[derive(Debug, thiserror::Error)]
pub enum RegistryError {
    #[error("a pricer is already registered")]
    DuplicatePricer,
}

/// A bounded mixed-binary program plus its plugin registry.
pub struct MipModel {
    pub lp: LinearProgram,
    pub integrality: Vec<bool>,
    /// Objective takes integer values on integral solutions, so dual bounds
    /// may be rounded.
    pub integral_objective: bool,
    pub initial_solution: Option<Vec<Rat>>,
    /// Row guards: `guards[r] = Some(v)` deactivates static row `r` at nodes
    /// where variable `v` is fixed to zero (the row must be implied there).
    guards: Vec<Option<usize>>,
    propagators: Vec<Box<dyn Propagator>>,
    separators: Vec<Box<dyn Separator>>,
    lazy_checkers: Vec<Box<dyn LazyChecker>>,
    pricer: Option<Box<dyn Pricer>>,
    brancher: Option<Box<dyn BranchingRule>>,
}

impl MipModel {
    pub fn new(lp: LinearProgram, integrality: Vec<bool>) -> MipModel {
        assert_eq!(lp.num_vars, integrality.len());
        let nrows = lp.rows.len();
        MipModel {
            lp,
            integrality,
            integral_objective: false,
            initial_solution: None,
            guards: vec![None; nrows],
            propagators: Vec::new(),
            separators: Vec::new(),
            lazy_checkers: Vec::new(),
            pricer: None,
            brancher: None,
        }
    }

    pub fn set_row_guard(&mut self, row: usize, var: usize) {
        self.guards[row] = Some(var);
    }

    pub fn register_propagator(&mut self, p: Box<dyn Propagator>) {
        self.propagators.push(p);
    }

    pub fn register_separator(&mut self, s: Box<dyn Separator>) {
        self.separators.push(s);
    }

    pub fn register_lazy_checker(&mut self, c: Box<dyn LazyChecker>) {
        self.lazy_checkers.push(c);
    }

    pub fn register_pricer(&mut self, p: Box<dyn Pricer>) -> Result<(), RegistryError> {
        if self.pricer.is_some() {
            return Err(RegistryError::DuplicatePricer);
        }
        self.pricer = Some(p);
        Ok(())
    }

    pub fn register_branching(&mut self, b: Box<dyn BranchingRule>) {
        self.brancher = Some(b);
    }

    pub fn has_pricer(&self) -> bool {
        self.pricer.is_some()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Limits {
    pub time_seconds: Option<f64>,
    pub nodes: Option<u64>,
}

/// Extra controls used by callers embedding the engine (pricing MIPs).
#[derive(Clone, Debug, Default)]
pub struct SolveControls {
    /// Prune nodes that cannot beat this objective value (original sense).
    pub cutoff: Option<Rat>,
    /// Stop the search once an incumbent strictly better than this exists.
    pub target: Option<Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum MipStatus {
    Optimal,
    Infeasible,
    Limit,
}

#[derive(Clone, Debug)]
pub struct MipResult {
    pub status: MipStatus,
    pub incumbent: Option<Vec<Rat>>,
    pub primal_bound: Option<Rat>,
    pub dual_bound: Option<Rat>,
    pub node_count: u64,
    pub lp_count: u64,
    pub wall_time: f64,
    /// (nodes processed, global dual bound) checkpoints, original sense.
    pub bound_trail: Vec<(u64, Rat)>,
}

struct Node {
    id: u64,
    parent: Option<usize>,
    depth: u32,
    annotation: Annotation,
    fixes: Vec<(usize, Option<Rat>, Option<Rat>)>,
    local_rows: Vec<Row>,
    /// Effective dual bound inherited/computed (min sense, rounded when the
    /// objective is integral). None = unknown (-inf).
    bound: Option<Rat>,
    open: bool,
}

struct HeapEntry {
    bound: Option<Rat>,
    id: u64,
    idx: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // BinaryHeap is a max-heap; invert so the smallest bound pops first,
        // ties by node id (older first).
        let ord = match (&self.bound, &other.bound) {
            (None, None) => std::cmp::Ordering::Equal,
            (None, Some(_)) => std::cmp::Ordering::Less,
            (Some(_), None) => std::cmp::Ordering::Greater,
            (Some(a), Some(b)) => a.cmp(b),
        };
        ord.reverse().then(self.id.cmp(&other.id).reverse())
    }
}

/// Selects the variable maximizing `min(frac, 1-frac)` of its fractional
/// part; ties break to the lowest index. `None` if everything is integral.
pub fn branch_most_fractional(x: &[Rat], integrality: &[bool]) -> Option<usize> {
    let mut best: Option<(usize, Rat)> = None;
    for (j, v) in x.iter().enumerate() {
        if !integrality[j] || v.is_integer() {
            continue;
        }
        let f = v - v.floor();
        let score = f.clone().min(Rat::one() - &f);
        match &best {
            Some((_, s)) if *s >= score => {}
            _ => best = Some((j, score)),
        }
    }
    best.map(|(j, _)| j)
}

/// Outcome of symresack-style propagation of `v ⪰_lex w` over binaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LexOutcome {
    Infeasible,
    /// (variable, value) fixings implied by the lex order.
    Fixings(Vec<(usize, bool)>),
}

/// Walks the positions of `pairs = [(v_i, w_i)]` left to right, treating a
/// pair as decided when both sides are fixed. At the first undecided
/// position the standard fixing logic applies; the walk continues only while
/// positions are forced equal.
pub fn lex_ge_propagate(
    lower: &[Option<Rat>],
    upper: &[Option<Rat>],
    pairs: &[(usize, usize)],
) -> LexOutcome {
    let fixed = |v: usize, fixes: &Vec<(usize, bool)>| -> Option<bool> {
        for (fv, val) in fixes.iter().rev() {
            if *fv == v {
                return Some(*val);
            }
        }
        if lower[v].as_ref().map_or(false, |l| l.is_one()) {
            Some(true)
        } else if upper[v].as_ref().map_or(false, |u| u.is_zero()) {
            Some(false)
        } else {
            None
        }
    };
    let mut fixes: Vec<(usize, bool)> = Vec::new();
    for &(v, w) in pairs {
        if v == w {
            continue; // fixed point of the permutation
        }
        match (fixed(v, &fixes), fixed(w, &fixes)) {
            (Some(true), Some(true)) | (Some(false), Some(false)) => continue,
            (Some(true), Some(false)) => break, // strictly greater, satisfied
            (Some(false), Some(true)) => return LexOutcome::Infeasible,
            (Some(false), None) => fixes.push((w, false)), // forces equality
            (None, Some(true)) => fixes.push((v, true)),
            _ => break, // no forced fixing at the first free position
        }
    }
    LexOutcome::Fixings(fixes)
}

/// Exact branch-and-bound. Plugins run in registration order; see module
/// docs for the node pipeline.
pub fn solve_bnb(model: &mut MipModel, limits: &Limits) -> MipResult {
    solve_bnb_controlled(model, limits, &SolveControls::default())
}

pub fn solve_bnb_controlled(
    model: &mut MipModel,
    limits: &Limits,
    controls: &SolveControls,
) -> MipResult {
    let start = Instant::now();
    let sense = model.lp.sense;
    let to_min = |v: &Rat| -> Rat {
        match sense {
            Sense::Min => v.clone(),
            Sense::Max => -v.clone(),
        }
    };
    let from_min = |v: &Rat| -> Rat {
        match sense {
            Sense::Min => v.clone(),
            Sense::Max => -v.clone(),
        }
    };
    let cutoff_min = controls.cutoff.as_ref().map(|c| to_min(c));
    let target_min = controls.target.as_ref().map(|c| to_min(c));

    let effective = |v: &Rat| -> Rat {
        if model.integral_objective {
            v.ceil()
        } else {
            v.clone()
        }
    };

    // incumbent: (values, objective in min sense)
    let mut incumbent: Option<(Vec<Rat>, Rat)> = None;
    if let Some(init) = model.initial_solution.clone() {
        if check_solution(model, &init) {
            let obj = to_min(&crate::rat::dot(&model.lp.objective, &init));
            incumbent = Some((init, obj));
        }
    }

    let mut pool: Vec<Row> = Vec::new();
    let mut pool_keys: HashSet<String> = HashSet::new();
    let row_key = |row: &Row| -> String {
        use std::fmt::Write;
        let mut k = String::new();
        let mut cs = row.coeffs.clone();
        cs.sort_by_key(|(j, _)| *j);
        for (j, c) in cs {
            let _ = write!(k, "{j}:{c},");
        }
        let _ = write!(k, "{:?}{}", row.rel, row.rhs);
        k
    };

    let mut arena: Vec<Node> = vec![Node {
        id: 0,
        parent: None,
        depth: 0,
        annotation: Annotation::Root,
        fixes: Vec::new(),
        local_rows: Vec::new(),
        bound: None,
        open: true,
    }];
    let mut heap: BinaryHeap<HeapEntry> = BinaryHeap::new();
    heap.push(HeapEntry {
        bound: None,
        id: 0,
        idx: 0,
    });
    let mut dive_next: Option<usize> = None;
    let mut next_id: u64 = 1;
    let mut node_count: u64 = 0;
    let mut lp_count: u64 = 0;
    let mut trail: Vec<(u64, Rat)> = Vec::new();
    let mut status = MipStatus::Optimal;

    let static_rows = model.lp.rows.len();

    'search: loop {
        // node selection: plunge if possible, else best bound
        let idx = match dive_next.take().filter(|&i| arena[i].open) {
            Some(i) => i,
            None => loop {
                match heap.pop() {
                    None => break 'search,
                    Some(e) if arena[e.idx].open => break e.idx,
                    Some(_) => continue,
                }
            },
        };
        arena[idx].open = false;

        if let Some(limit) = limits.time_seconds {
            if start.elapsed().as_secs_f64() > limit {
                arena[idx].open = true; // keep it for the dual bound
                heap.push(HeapEntry {
                    bound: arena[idx].bound.clone(),
                    id: arena[idx].id,
                    idx,
                });
                status = MipStatus::Limit;
                break;
            }
        }
        if let Some(nl) = limits.nodes {
            if node_count >= nl {
                arena[idx].open = true;
                heap.push(HeapEntry {
                    bound: arena[idx].bound.clone(),
                    id: arena[idx].id,
                    idx,
                });
                status = MipStatus::Limit;
                break;
            }
        }

        // prune against incumbent / cutoff before doing any work
        let prunable = |bound: &Option<Rat>| -> bool {
            if let Some(b) = bound {
                if let Some((_, inc)) = &incumbent {
                    if b >= inc {
                        return true;
                    }
                }
                if let Some(c) = &cutoff_min {
                    if b >= c {
                        return true;
                    }
                }
            }
            false
        };
        if prunable(&arena[idx].bound) {
            continue;
        }

        node_count += 1;

        // assemble node state: path, bounds, local rows
        let mut chain: Vec<usize> = Vec::new();
        let mut cur = Some(idx);
        while let Some(i) = cur {
            chain.push(i);
            cur = arena[i].parent;
        }
        chain.reverse();
        let path: Vec<Annotation> = chain
            .iter()
            .map(|&i| arena[i].annotation.clone())
            .collect();
        let mut lower: Vec<Option<Rat>> = model.lp.bounds.iter().map(|(l, _)| l.clone()).collect();
        let mut upper: Vec<Option<Rat>> = model.lp.bounds.iter().map(|(_, u)| u.clone()).collect();
        // pricer-managed column bounds for this path
        if let Some(pricer) = &model.pricer {
            for v in 0..model.lp.num_vars {
                if let Some((l, u)) = pricer.column_bounds(v, &path) {
                    lower[v] = Some(l);
                    upper[v] = Some(u);
                }
            }
        }
        let mut local_rows: Vec<Row> = Vec::new();
        for &i in &chain {
            for (v, l, u) in &arena[i].fixes {
                if let Some(l) = l {
                    if lower[*v].as_ref().map_or(true, |cur| l > cur) {
                        lower[*v] = Some(l.clone());
                    }
                }
                if let Some(u) = u {
                    if upper[*v].as_ref().map_or(true, |cur| u < cur) {
                        upper[*v] = Some(u.clone());
                    }
                }
            }
            local_rows.extend(arena[i].local_rows.iter().cloned());
        }

        // propagation to a fixpoint, bounded rounds
        let annotation = arena[idx].annotation.clone();
        let mut infeasible = false;
        for _round in 0..10 {
            let mut ctx = PropCtx {
                lower: &mut lower,
                upper: &mut upper,
                annotation: &annotation,
                changed: false,
                infeasible: false,
            };
            for p in model.propagators.iter_mut() {
                p.propagate(&mut ctx);
                if ctx.infeasible {
                    break;
                }
            }
            if ctx.infeasible {
                infeasible = true;
                break;
            }
            if !ctx.changed {
                break;
            }
        }
        if infeasible {
            continue;
        }
        // inconsistent bounds from branching
        if lower
            .iter()
            .zip(&upper)
            .any(|(l, u)| matches!((l, u), (Some(l), Some(u)) if l > u))
        {
            continue;
        }

        // LP / pricing / separation loop
        let parent_bound = arena[idx].parent.and_then(|p| arena[p].bound.clone());
        let mut node_bound: Option<Rat> = None;
        let mut accepted: Option<(Vec<Rat>, Rat)> = None;
        let mut fractional_x: Option<Vec<Rat>> = None;
        'lps: loop {
            // build the node LP
            let mut lp = LinearProgram::new(model.lp.num_vars, Sense::Min);
            lp.objective = match sense {
                Sense::Min => model.lp.objective.clone(),
                Sense::Max => model.lp.objective.iter().map(|c| -c).collect(),
            };
            lp.bounds = lower
                .iter()
                .cloned()
                .zip(upper.iter().cloned())
                .collect::<Vec<_>>()
                .into_iter()
                .map(|(l, u)| (l, u))
                .collect();
            let mut row_map: Vec<Option<usize>> = Vec::new(); // node row -> static row
            for (r, row) in model.lp.rows.iter().enumerate() {
                if let Some(g) = model.guards[r] {
                    if upper[g].as_ref().map_or(false, |u| u.is_zero()) {
                        continue;
                    }
                }
                lp.rows.push(row.clone());
                row_map.push(Some(r));
            }
            for row in &pool {
                lp.rows.push(row.clone());
                row_map.push(None);
            }
            for row in &local_rows {
                lp.rows.push(row.clone());
                row_map.push(None);
            }

            let sol = exactlp::solve(&lp);
            lp_count += 1;
            match sol.status {
                LpStatus::Infeasible => {
                    infeasible = true;
                    break 'lps;
                }
                LpStatus::Unbounded => {
                    panic!("node LP unbounded: model objective must be boxed");
                }
                LpStatus::Optimal => {}
            }

            // pricing to convergence
            if model.pricer.is_some() {
                let mut static_duals = vec![Rat::zero(); static_rows];
                for (pos, orig) in row_map.iter().enumerate() {
                    if let Some(r) = orig {
                        static_duals[*r] = match sense {
                            Sense::Min => sol.duals[pos].clone(),
                            Sense::Max => -sol.duals[pos].clone(),
                        };
                    }
                }
                let next_var = model.lp.num_vars;
                let cols = model
                    .pricer
                    .as_mut()
                    .unwrap()
                    .price(&static_duals, &path, next_var);
                if !cols.is_empty() {
                    for c in cols {
                        let v = model.lp.add_var(c.objective, Some(c.lower.clone()), Some(c.upper.clone()));
                        debug_assert_eq!(v, model.lp.num_vars - 1);
                        model.integrality.push(c.integral);
                        for (r, coef) in c.entries {
                            debug_assert!(r < static_rows);
                            model.lp.rows[r].coeffs.push((v, coef));
                        }
                        lower.push(Some(c.lower));
                        upper.push(Some(c.upper));
                    }
                    continue 'lps;
                }
            }

            let bound = effective(&sol.objective_value);
            node_bound = Some(bound.clone());
            // bound-based pruning
            if let Some((_, inc)) = &incumbent {
                if &bound >= inc {
                    break 'lps;
                }
            }
            if let Some(c) = &cutoff_min {
                if &bound >= c {
                    break 'lps;
                }
            }

            let is_integral = model
                .integrality
                .iter()
                .zip(&sol.primal)
                .all(|(int, v)| !*int || v.is_integer());

            let ctx = SepCtx {
                x: &sol.primal,
                lower: &lower,
                upper: &upper,
                is_integral,
            };

            // separators: every returned global cut joins the pool, but a
            // re-solve happens only when the current point violates one
            let mut ingest = |cuts: Vec<Cut>,
                              pool: &mut Vec<Row>,
                              pool_keys: &mut HashSet<String>,
                              local_rows: &mut Vec<Row>,
                              node_local: &mut Vec<Row>|
             -> bool {
                let mut violated = false;
                for cut in cuts {
                    violated |= !cut.row.satisfied_by(&sol.primal);
                    if cut.global {
                        let key = row_key(&cut.row);
                        if pool_keys.insert(key) {
                            pool.push(cut.row);
                        }
                    } else {
                        local_rows.push(cut.row.clone());
                        node_local.push(cut.row);
                    }
                }
                violated
            };
            let mut added = false;
            for s in model.separators.iter_mut() {
                let cuts = s.separate(&ctx);
                added |= ingest(
                    cuts,
                    &mut pool,
                    &mut pool_keys,
                    &mut local_rows,
                    &mut arena[idx].local_rows,
                );
            }
            if added {
                continue 'lps;
            }

            if is_integral {
                // mandatory lazy feasibility checks
                let mut rejected = false;
                for c in model.lazy_checkers.iter_mut() {
                    let cuts = c.check(&ctx);
                    rejected |= !cuts.is_empty();
                    ingest(
                        cuts,
                        &mut pool,
                        &mut pool_keys,
                        &mut local_rows,
                        &mut arena[idx].local_rows,
                    );
                }
                if rejected {
                    continue 'lps;
                }
                accepted = Some((sol.primal.clone(), sol.objective_value.clone()));
            } else {
                fractional_x = Some(sol.primal.clone());
            }
            break 'lps;
        }

        if infeasible {
            continue;
        }
        let Some(bound) = node_bound else { continue };
        debug_assert!(
            parent_bound.as_ref().map_or(true, |pb| &bound >= pb),
            "dual bound not monotone along the path"
        );
        arena[idx].bound = Some(bound.clone());

        // prune by bound
        if prunable(&Some(bound.clone())) {
            continue;
        }

        if let Some((x, obj)) = accepted {
            let obj_min = obj;
            let better = incumbent
                .as_ref()
                .map_or(true, |(_, cur)| &obj_min < cur);
            if better {
                incumbent = Some((x, obj_min.clone()));
                if let Some(t) = &target_min {
                    if &obj_min < t {
                        status = MipStatus::Limit;
                        break 'search;
                    }
                }
            }
            continue;
        }

        let Some(x) = fractional_x else { continue };

        // branch
        let specs: Vec<ChildSpec> = {
            let ctx = BranchCtx {
                x: &x,
                lower: &lower,
                upper: &upper,
                path: &path,
                integrality: &model.integrality,
            };
            let custom = model.brancher.as_mut().and_then(|b| b.branch(&ctx));
            match custom {
                Some(s) => s,
                None => {
                    let var = branch_most_fractional(&x, &model.integrality)
                        .expect("fractional solution must have a fractional integer variable");
                    let val = &x[var];
                    vec![
                        ChildSpec {
                            annotation: Annotation::Var { var, up: false },
                            fixes: vec![(var, None, Some(val.floor()))],
                            rows: Vec::new(),
                        },
                        ChildSpec {
                            annotation: Annotation::Var { var, up: true },
                            fixes: vec![(var, Some(val.ceil()), None)],
                            rows: Vec::new(),
                        },
                    ]
                }
            }
        };
        debug_assert!(!specs.is_empty());
        let mut first_child = None;
        for spec in specs {
            let child_idx = arena.len();
            arena.push(Node {
                id: next_id,
                parent: Some(idx),
                depth: arena[idx].depth + 1,
                annotation: spec.annotation,
                fixes: spec.fixes,
                local_rows: spec.rows,
                bound: Some(bound.clone()),
                open: true,
            });
            heap.push(HeapEntry {
                bound: Some(bound.clone()),
                id: next_id,
                idx: child_idx,
            });
            next_id += 1;
            if first_child.is_none() {
                first_child = Some(child_idx);
            }
        }
        dive_next = first_child;

        if node_count % 256 == 0 {
            if let Some(gb) = global_bound(&arena, &heap, &dive_next) {
                let gb = from_min(&gb);
                if trail.last().map_or(true, |(_, last)| *last != gb) {
                    trail.push((node_count, gb));
                }
            }
        }
    }

    // final bounds
    let open_bound = global_bound(&arena, &heap, &dive_next);
    let (primal_bound, dual_bound, inc_vec) = match (&incumbent, status) {
        (Some((x, obj)), MipStatus::Optimal) => {
            (Some(obj.clone()), Some(obj.clone()), Some(x.clone()))
        }
        (Some((x, obj)), _) => {
            let db = match &open_bound {
                Some(ob) => ob.clone().min(obj.clone()),
                None => obj.clone(),
            };
            (Some(obj.clone()), Some(db), Some(x.clone()))
        }
        (None, MipStatus::Optimal) => (None, None, None), // infeasible
        (None, _) => (None, open_bound.clone(), None),
    };
    let status = match (&inc_vec, status) {
        (None, MipStatus::Optimal) => MipStatus::Infeasible,
        (_, s) => s,
    };
    if let Some(db) = &dual_bound {
        let db = from_min(db);
        if trail.last().map_or(true, |(_, last)| *last != db) {
            trail.push((node_count, db));
        }
    }
    MipResult {
        status,
        incumbent: inc_vec,
        primal_bound: primal_bound.map(|v| from_min(&v)),
        dual_bound: dual_bound.map(|v| from_min(&v)),
        node_count,
        lp_count,
        wall_time: start.elapsed().as_secs_f64(),
        bound_trail: trail,
    }
}

fn global_bound(
    arena: &[Node],
    heap: &BinaryHeap<HeapEntry>,
    dive_next: &Option<usize>,
) -> Option<Rat> {
    let mut best: Option<Rat> = None;
    let mut consider = |b: &Option<Rat>| {
        if let Some(b) = b {
            if best.as_ref().map_or(true, |cur| b < cur) {
                best = Some(b.clone());
            }
        }
    };
    for e in heap.iter() {
        if arena[e.idx].open {
            consider(&arena[e.idx].bound);
        }
    }
    if let Some(i) = dive_next {
        if arena[*i].open {
            consider(&arena[*i].bound);
        }
    }
    best
}

/// Exact check of a candidate solution against static rows, bounds and
/// integrality (pool rows are derived, hence implied).
pub fn check_solution(model: &MipModel, x: &[Rat]) -> bool {
    if x.len() != model.lp.num_vars {
        return false;
    }
    for (j, (l, u)) in model.lp.bounds.iter().enumerate() {
        if l.as_ref().map_or(false, |l| &x[j] < l) || u.as_ref().map_or(false, |u| &x[j] > u) {
            return false;
        }
    }
    if model
        .integrality
        .iter()
        .zip(x)
        .any(|(int, v)| *int && !v.is_integer())
    {
        return false;
    }
    model.lp.rows.iter().all(|r| r.satisfied_by(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    fn covering_toy() -> MipModel {
        // min u1 + u2 s.t. u1 + u2 >= 1, binaries
        let mut lp = LinearProgram::new(2, Sense::Min);
        lp.objective = vec![rat(1), rat(1)];
        lp.bounds = vec![(Some(rat(0)), Some(rat(1))); 2];
        lp.add_row(vec![(0, rat(1)), (1, rat(1))], Rel::Ge, rat(1));
        let mut m = MipModel::new(lp, vec![true, true]);
        m.integral_objective = true;
        m
    }

    #[test]
    fn plain_bnb_on_covering_toy() {
        let mut m = covering_toy();
        let res = solve_bnb(&mut m, &Limits::default());
        assert_eq!(res.status, MipStatus::Optimal);
        assert_eq!(res.primal_bound, Some(rat(1)));
        assert_eq!(res.dual_bound, Some(rat(1)));
    }

    #[test]
    fn preloaded_optimal_incumbent_is_never_worsened() {
        let mut m = covering_toy();
        m.initial_solution = Some(vec![rat(1), rat(0)]);
        let res = solve_bnb(&mut m, &Limits::default());
        assert_eq!(res.primal_bound, Some(rat(1)));
    }

    #[test]
    fn invalid_initial_solution_is_dropped() {
        let mut m = covering_toy();
        m.initial_solution = Some(vec![rat(0), rat(0)]); // violates covering
        let res = solve_bnb(&mut m, &Limits::default());
        assert_eq!(res.primal_bound, Some(rat(1)));
    }

    #[test]
    fn infeasible_model() {
        let mut lp = LinearProgram::new(1, Sense::Min);
        lp.bounds = vec![(Some(rat(0)), Some(rat(1)))];
        lp.add_row(vec![(0, rat(1))], Rel::Ge, rat(2));
        let mut m = MipModel::new(lp, vec![true]);
        let res = solve_bnb(&mut m, &Limits::default());
        assert_eq!(res.status, MipStatus::Infeasible);
    }

    #[test]
    fn node_limit_reports_bounds() {
        // a small knapsack-style problem that needs branching
        let mut lp = LinearProgram::new(3, Sense::Max);
        lp.objective = vec![rat(2), rat(3), rat(4)];
        lp.bounds = vec![(Some(rat(0)), Some(rat(1))); 3];
        lp.add_row(
            vec![(0, rat(3)), (1, rat(4)), (2, rat(5))],
            Rel::Le,
            rat(6),
        );
        let mut m = MipModel::new(lp, vec![true; 3]);
        m.integral_objective = true;
        let res = solve_bnb(
            &mut m,
            &Limits {
                nodes: Some(1),
                time_seconds: None,
            },
        );
        assert_eq!(res.status, MipStatus::Limit);
        assert!(res.dual_bound.is_some());
    }

    #[test]
    fn most_fractional_selection() {
        let x = vec![ratio(1, 2), ratio(1, 5)];
        assert_eq!(branch_most_fractional(&x, &[true, true]), Some(0));
        let x = vec![ratio(9, 10), ratio(3, 5)];
        assert_eq!(branch_most_fractional(&x, &[true, true]), Some(1));
        // tie -> lowest index
        let x = vec![ratio(1, 4), ratio(1, 4)];
        assert_eq!(branch_most_fractional(&x, &[true, true]), Some(0));
        let x = vec![rat(1), rat(0)];
        assert_eq!(branch_most_fractional(&x, &[true, true]), None);
        // continuous fractional vars are not branching candidates
        let x = vec![ratio(1, 2)];
        assert_eq!(branch_most_fractional(&x, &[false]), None);
    }

    #[test]
    fn lex_propagation_cases() {
        let free = vec![
            (Some(rat(0)), Some(rat(1))),
            (Some(rat(0)), Some(rat(1))),
            (Some(rat(0)), Some(rat(1))),
            (Some(rat(0)), Some(rat(1))),
        ];
        let mk = |fixed: &[(usize, i64)]| -> (Vec<Option<Rat>>, Vec<Option<Rat>>) {
            let mut lower: Vec<Option<Rat>> = free.iter().map(|(l, _)| l.clone()).collect();
            let mut upper: Vec<Option<Rat>> = free.iter().map(|(_, u)| u.clone()).collect();
            for (v, val) in fixed {
                lower[*v] = Some(rat(*val));
                upper[*v] = Some(rat(*val));
            }
            (lower, upper)
        };
        // v = (x0, x1), w = (x2, x3)
        let pairs = vec![(0, 2), (1, 3)];

        // v1 fixed 1, w1 fixed 1 -> no fixing at position 1, recurse
        let (l, u) = mk(&[(0, 1), (2, 1)]);
        assert_eq!(lex_ge_propagate(&l, &u, &pairs), LexOutcome::Fixings(vec![]));

        // v1 fixed 0, w1 free -> fix w1 = 0
        let (l, u) = mk(&[(0, 0)]);
        assert_eq!(
            lex_ge_propagate(&l, &u, &pairs),
            LexOutcome::Fixings(vec![(2, false)])
        );

        // v1 fixed 0, w1 fixed 1 -> prune
        let (l, u) = mk(&[(0, 0), (2, 1)]);
        assert_eq!(lex_ge_propagate(&l, &u, &pairs), LexOutcome::Infeasible);

        // chained fixing: v=(0,0) forces w=(0,0)
        let (l, u) = mk(&[(0, 0), (1, 0)]);
        assert_eq!(
            lex_ge_propagate(&l, &u, &pairs),
            LexOutcome::Fixings(vec![(2, false), (3, false)])
        );
    }

    #[test]
    fn second_pricer_rejected() {
        struct P;
        impl Pricer for P {
            fn name(&self) -> &'static str {
                "p"
            }
            fn price(&mut self, _: &[Rat], _: &[Annotation], _: usize) -> Vec<NewColumn> {
                Vec::new()
            }
            fn column_bounds(&self, _: usize, _: &[Annotation]) -> Option<(Rat, Rat)> {
                None
            }
        }
        let mut m = covering_toy();
        assert!(m.register_pricer(Box::new(P)).is_ok());
        assert!(m.register_pricer(Box::new(P)).is_err());
    }

    #[test]
    fn custom_branching_overrides_default() {
        struct FirstVar;
        impl BranchingRule for FirstVar {
            fn name(&self) -> &'static str {
                "first-var"
            }
            fn branch(&mut self, ctx: &BranchCtx<'_>) -> Option<Vec<ChildSpec>> {
                let var = (0..ctx.x.len())
                    .find(|&j| ctx.integrality[j] && !ctx.x[j].is_integer())?;
                Some(vec![
                    ChildSpec {
                        annotation: Annotation::Var { var, up: false },
                        fixes: vec![(var, None, Some(ctx.x[var].floor()))],
                        rows: Vec::new(),
                    },
                    ChildSpec {
                        annotation: Annotation::Var { var, up: true },
                        fixes: vec![(var, Some(ctx.x[var].ceil()), None)],
                        rows: Vec::new(),
                    },
                ])
            }
        }
        let mut lp = LinearProgram::new(3, Sense::Max);
        lp.objective = vec![rat(2), rat(3), rat(4)];
        lp.bounds = vec![(Some(rat(0)), Some(rat(1))); 3];
        lp.add_row(
            vec![(0, rat(3)), (1, rat(4)), (2, rat(5))],
            Rel::Le,
            rat(6),
        );
        let mut m = MipModel::new(lp.clone(), vec![true; 3]);
        m.integral_objective = true;
        m.register_branching(Box::new(FirstVar));
        let res = solve_bnb(&mut m, &Limits::default());
        let mut plain = MipModel::new(lp, vec![true; 3]);
        plain.integral_objective = true;
        let res2 = solve_bnb(&mut plain, &Limits::default());
        assert_eq!(res.primal_bound, res2.primal_bound);
    }

    #[test]
    fn lazy_checker_enforces_hidden_constraint() {
        // min u1+u2 s.t. u1+u2 >= 1 plus a lazily revealed u1 <= 0
        struct NoU1;
        impl LazyChecker for NoU1 {
            fn name(&self) -> &'static str {
                "no-u1"
            }
            fn check(&mut self, ctx: &SepCtx<'_>) -> Vec<Cut> {
                if ctx.x[0].is_one() {
                    vec![Cut {
                        row: Row::new(vec![(0, rat(1))], Rel::Le, rat(0)),
                        global: true,
                    }]
                } else {
                    Vec::new()
                }
            }
        }
        let mut m = covering_toy();
        m.register_lazy_checker(Box::new(NoU1));
        let res = solve_bnb(&mut m, &Limits::default());
        assert_eq!(res.status, MipStatus::Optimal);
        let x = res.incumbent.unwrap();
        assert!(x[0].is_zero());
        assert!(x[1].is_one());
    }

    #[test]
    fn cutoff_prunes_and_target_stops() {
        let mut lp = LinearProgram::new(3, Sense::Max);
        lp.objective = vec![rat(2), rat(3), rat(4)];
        lp.bounds = vec![(Some(rat(0)), Some(rat(1))); 3];
        lp.add_row(
            vec![(0, rat(3)), (1, rat(4)), (2, rat(5))],
            Rel::Le,
            rat(6),
        );
        let mut m = MipModel::new(lp, vec![true; 3]);
        m.integral_objective = true;
        // optimum is 4 (x = (0,0,1) fits: 5 <= 6); everything else <= 6
        let res = solve_bnb_controlled(
            &mut m,
            &Limits::default(),
            &SolveControls {
                cutoff: None,
                target: Some(rat(3)),
            },
        );
        // stops as soon as an incumbent better than 3 is found
        assert!(res.primal_bound.unwrap() > rat(3));
    }
}
