//! Certified global lower bounds for polynomials on boxes via interval
//! branch-and-bound, with replayable leaf-box certificates and an
//! independent grid-scan oracle.
//!
//! Enclosures are intersections of three sound term-wise interval
//! evaluations with exact rational endpoints: the plain term-wise range with
//! the sharp power rule, a mean-value form around the box midpoint, and (for
//! objectives in at most four variables) the term-wise range of the exactly
//! Taylor-shifted polynomial over the centered box. Every piece is exact
//! rational arithmetic, so the certificate needs no rounding caveats.
//!
//! The search is breadth-first and level-synchronous: each level is a
//! deterministic list of boxes, processed (possibly in parallel) in order,
//! so the subdivision tree, all counters, and the certificate depend only on
//! the inputs, the subdivision policy, and the budget, never on scheduling.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::interval::{Interval, IntervalBox};
use crate::poly::{Polynomial, NVARS};
use crate::rational::{parse_rational, rat_int, rational_to_string, Rational};

/// Constraint relations: g = 0 or g <= 0 on the feasible set.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    EqZero,
    LeZero,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Constraint {
    pub poly: Polynomial,
    pub relation: Relation,
}

impl Constraint {
    pub fn eq_zero(poly: Polynomial) -> Self {
        Constraint {
            poly,
            relation: Relation::EqZero,
        }
    }

    pub fn le_zero(poly: Polynomial) -> Self {
        Constraint {
            poly,
            relation: Relation::LeZero,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Budget {
    pub max_depth: u32,
    pub max_boxes: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CertStatus {
    Certified,
    Inconclusive,
    InfeasibleDomain,
}

impl CertStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CertStatus::Certified => "certified",
            CertStatus::Inconclusive => "inconclusive",
            CertStatus::InfeasibleDomain => "infeasible-domain",
        }
    }
}

/// Outcome of a branch-and-bound run. When `status` is `Certified`, no
/// feasible point of the domain has objective value below
/// `certified_lower_bound`; the bound is a true lower bound on the feasible
/// part of the root box in every status.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CertificateResult {
    pub certified_lower_bound: Rational,
    pub status: CertStatus,
    pub boxes_processed: u64,
    pub max_depth_reached: u32,
    pub budget_exhausted: bool,
    /// Smallest upper enclosure endpoint seen over feasible leaves: an upper
    /// bound for the global minimum (diagnostic only).
    pub min_upper_enclosure: Option<Rational>,
}

// ---------------------------------------------------------------------------
// Interval enclosures
// ---------------------------------------------------------------------------

/// Polynomials in more variables than this skip the Taylor-shift refinement;
/// the shift expansion grows too fast to be worth it there.
const SHIFT_MAX_VARS: usize = 4;

/// Reusable range evaluator for one polynomial: caches the partial
/// derivatives the mean-value form needs.
pub struct RangeEvaluator {
    poly: Polynomial,
    derivs: Vec<Polynomial>,
    use_shift: bool,
}

impl RangeEvaluator {
    pub fn new(p: &Polynomial) -> Self {
        let derivs = (0..NVARS).map(|v| p.diff(v)).collect();
        let used = p.vars_used().iter().filter(|&&u| u).count();
        RangeEvaluator {
            poly: p.clone(),
            derivs,
            use_shift: used <= SHIFT_MAX_VARS,
        }
    }

    /// Sound enclosure of the polynomial over the box.
    pub fn range(&self, b: &IntervalBox) -> Interval {
        check_dims(&self.poly, b);
        let mut out = range_termwise(&self.poly, b);
        out = out.intersect(&self.mean_value_range(b, &out));
        if self.use_shift && !b.is_point() {
            out = out.intersect(&shifted_range(&self.poly, b));
        }
        out
    }

    /// f(mid) + sum_v range(df/dv) * [-r_v, r_v]; second-order tight near
    /// interior minima where the gradient enclosure shrinks.
    fn mean_value_range(&self, b: &IntervalBox, fallback: &Interval) -> Interval {
        let mut mid: [Rational; NVARS] = std::array::from_fn(|_| Rational::zero());
        for (v, iv) in b.dims().iter().enumerate() {
            mid[v] = iv.midpoint();
        }
        let center = self.poly.eval(&mid);
        let mut lo = center.clone();
        let mut hi = center;
        for (v, iv) in b.dims().iter().enumerate() {
            let half = iv.width() / rat_int(2);
            if half.is_zero() || self.derivs[v].is_zero() {
                continue;
            }
            let dr = range_termwise(&self.derivs[v], b);
            let mag = dr.lo().abs().max(dr.hi().abs());
            let slack = mag * half;
            lo -= &slack;
            hi += slack;
        }
        // The mean-value interval always contains f(mid), so it meets every
        // sound enclosure; clamp against the term-wise range for safety.
        Interval::new(lo, hi).intersect(fallback).clone()
    }
}

fn check_dims(p: &Polynomial, b: &IntervalBox) {
    if let Some(max_var) = p.max_var_used() {
        assert!(
            max_var < b.dim(),
            "polynomial uses coordinate {} outside a {}-dimensional box",
            max_var,
            b.dim()
        );
    }
}

/// Plain term-wise interval evaluation with the sharp power rule.
fn range_termwise(p: &Polynomial, b: &IntervalBox) -> Interval {
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    for (e, c) in p.terms() {
        let mut t = Interval::point(rat_int(1));
        for (v, &exp) in e.0.iter().enumerate() {
            if exp > 0 {
                t = t.mul(&b.dims()[v].pow(exp));
            }
        }
        let t = t.scale(c);
        lo += t.lo();
        hi += t.hi();
    }
    Interval::new(lo, hi)
}

/// Exact Taylor shift to the box midpoint followed by a term-wise evaluation
/// over the centered box: slack shrinks quadratically with the box width.
fn shifted_range(p: &Polynomial, b: &IntervalBox) -> Interval {
    let n = b.dim();
    let mut max_exp = [0u32; NVARS];
    for (e, _) in p.terms() {
        for v in 0..NVARS {
            max_exp[v] = max_exp[v].max(e.0[v]);
        }
    }
    // Powers of (mid_v + x_v) per variable.
    let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(n);
    for (v, iv) in b.dims().iter().enumerate() {
        let base = Polynomial::constant(iv.midpoint()).add(&Polynomial::var(v));
        let mut pows = vec![Polynomial::one()];
        for k in 1..=max_exp[v] as usize {
            let next = pows[k - 1].mul(&base);
            pows.push(next);
        }
        powers.push(pows);
    }
    let mut shifted = Polynomial::zero();
    for (e, c) in p.terms() {
        let mut t = Polynomial::constant(c.clone());
        for (v, pows) in powers.iter().enumerate() {
            let exp = e.0[v] as usize;
            if exp > 0 {
                t = t.mul(&pows[exp]);
            }
        }
        shifted = shifted.add(&t);
    }
    let centered = IntervalBox::new(
        b.dims()
            .iter()
            .map(|iv| {
                let half = iv.width() / rat_int(2);
                Interval::new(-&half, half)
            })
            .collect(),
    );
    range_termwise(&shifted, &centered)
}

/// Sound interval enclosure of `p` over the box: the intersection of the
/// term-wise, mean-value, and (when affordable) Taylor-shifted term-wise
/// evaluations. Collapses to the exact value on point boxes.
pub fn poly_range(p: &Polynomial, b: &IntervalBox) -> Interval {
    RangeEvaluator::new(p).range(b)
}

// ---------------------------------------------------------------------------
// Branch and bound
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LeafStatus {
    /// Feasibility undecided, objective enclosure at or above the target.
    Resolved { bound: Rational, range: Interval },
    /// Evaluated but below target at the depth limit.
    Unresolved { bound: Rational, range: Interval },
    /// Never evaluated (box budget); carries the parent's enclosure.
    UnresolvedInherited { bound: Rational, range: Interval },
    /// Discarded: the indexed constraint's range excludes feasibility.
    Infeasible { constraint: usize, range: Interval },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LeafRecord {
    /// Bisection path from the root: '0' = lower half, '1' = upper half.
    pub path: String,
    pub status: LeafStatus,
}

/// Replayable output of a branch-and-bound run: the full leaf partition of
/// the root box with the enclosures that justify the bound.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    pub dim: usize,
    pub objective: Polynomial,
    pub constraints: Vec<Constraint>,
    pub root: IntervalBox,
    pub target: Rational,
    pub status: CertStatus,
    pub bound: Rational,
    pub boxes_processed: u64,
    pub max_depth_reached: u32,
    pub leaves: Vec<LeafRecord>,
}

struct Node {
    bx: IntervalBox,
    path: String,
    /// Greatest raw lower enclosure endpoint over the ancestors, if any.
    inherited: Option<(Rational, Interval)>,
}

enum Outcome {
    Infeasible { constraint: usize, range: Interval },
    Evaluated { range: Interval, eff_lo: Rational },
}

fn process_node(
    node: &Node,
    obj: &RangeEvaluator,
    cons: &[(Relation, RangeEvaluator)],
) -> Outcome {
    for (ci, (relation, eval)) in cons.iter().enumerate() {
        let range = eval.range(&node.bx);
        let violated = match relation {
            Relation::EqZero => !range.contains_zero(),
            Relation::LeZero => range.lo().is_positive(),
        };
        if violated {
            return Outcome::Infeasible {
                constraint: ci,
                range,
            };
        }
    }
    let range = obj.range(&node.bx);
    let eff_lo = match &node.inherited {
        Some((lo, _)) => lo.clone().max(range.lo().clone()),
        None => range.lo().clone(),
    };
    Outcome::Evaluated { range, eff_lo }
}

/// Breadth-limited interval branch-and-bound lower bound. A box is discarded
/// when a constraint's range excludes feasibility, resolved when its
/// effective objective lower bound reaches the target, and bisected (widest
/// dimension, lowest index on ties) otherwise, until the tree is closed or
/// the budget runs out. Budget exhaustion is a status, not an error; the
/// returned bound is a true lower bound in every case.
pub fn bb_lower_bound(
    p: &Polynomial,
    root: &IntervalBox,
    constraints: &[Constraint],
    target: &Rational,
    budget: &Budget,
    workers: usize,
) -> (CertificateResult, Certificate) {
    check_dims(p, root);
    for c in constraints {
        check_dims(&c.poly, root);
    }
    assert!(workers >= 1);
    let obj = RangeEvaluator::new(p);
    let cons: Vec<(Relation, RangeEvaluator)> = constraints
        .iter()
        .map(|c| (c.relation, RangeEvaluator::new(&c.poly)))
        .collect();

    let run = || {
        let mut frontier = vec![Node {
            bx: root.clone(),
            path: String::new(),
            inherited: None,
        }];
        let mut leaves: Vec<LeafRecord> = Vec::new();
        let mut boxes_processed: u64 = 0;
        let mut depth: u32 = 0;
        let mut max_depth_reached: u32 = 0;
        let mut budget_exhausted = false;

        while !frontier.is_empty() {
            if boxes_processed + frontier.len() as u64 > budget.max_boxes {
                budget_exhausted = true;
                for node in frontier.drain(..) {
                    let (bound, range) = node
                        .inherited
                        .clone()
                        .expect("budget-cut leaves always have a processed parent");
                    leaves.push(LeafRecord {
                        path: node.path,
                        status: LeafStatus::UnresolvedInherited { bound, range },
                    });
                }
                break;
            }
            max_depth_reached = depth;
            let at_depth_limit = depth >= budget.max_depth;
            let outcomes: Vec<Outcome> = if workers == 1 {
                frontier
                    .iter()
                    .map(|n| process_node(n, &obj, &cons))
                    .collect()
            } else {
                frontier
                    .par_iter()
                    .map(|n| process_node(n, &obj, &cons))
                    .collect()
            };
            boxes_processed += frontier.len() as u64;

            let mut next = Vec::new();
            for (node, outcome) in frontier.drain(..).zip(outcomes) {
                match outcome {
                    Outcome::Infeasible { constraint, range } => {
                        leaves.push(LeafRecord {
                            path: node.path,
                            status: LeafStatus::Infeasible { constraint, range },
                        });
                    }
                    Outcome::Evaluated { range, eff_lo } => {
                        if &eff_lo >= target {
                            leaves.push(LeafRecord {
                                path: node.path,
                                status: LeafStatus::Resolved {
                                    bound: eff_lo,
                                    range,
                                },
                            });
                        } else if at_depth_limit {
                            budget_exhausted = true;
                            leaves.push(LeafRecord {
                                path: node.path,
                                status: LeafStatus::Unresolved {
                                    bound: eff_lo,
                                    range,
                                },
                            });
                        } else {
                            let (lo_half, hi_half) = node.bx.split();
                            let inherited = Some((eff_lo, range));
                            next.push(Node {
                                bx: lo_half,
                                path: format!("{}0", node.path),
                                inherited: inherited.clone(),
                            });
                            next.push(Node {
                                bx: hi_half,
                                path: format!("{}1", node.path),
                                inherited,
                            });
                        }
                    }
                }
            }
            frontier = next;
            depth += 1;
        }
        (leaves, boxes_processed, max_depth_reached, budget_exhausted)
    };

    let (leaves, boxes_processed, max_depth_reached, budget_exhausted) = if workers == 1 {
        run()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("failed to build worker pool");
        pool.install(run)
    };

    let mut bound: Option<Rational> = None;
    let mut min_upper: Option<Rational> = None;
    let mut any_unresolved = false;
    let mut any_resolved = false;
    for leaf in &leaves {
        let (leaf_bound, leaf_hi) = match &leaf.status {
            LeafStatus::Resolved { bound, range } => {
                any_resolved = true;
                (bound, Some(range.hi()))
            }
            LeafStatus::Unresolved { bound, range } => {
                any_unresolved = true;
                (bound, Some(range.hi()))
            }
            LeafStatus::UnresolvedInherited { bound, .. } => {
                any_unresolved = true;
                (bound, None)
            }
            LeafStatus::Infeasible { .. } => continue,
        };
        bound = Some(match bound {
            None => leaf_bound.clone(),
            Some(b) => b.min(leaf_bound.clone()),
        });
        if let Some(hi) = leaf_hi {
            min_upper = Some(match min_upper {
                None => hi.clone(),
                Some(m) => m.min(hi.clone()),
            });
        }
    }

    let (status, bound) = match bound {
        // Vacuous: every box excluded by constraints. Any bound holds; the
        // target is reported.
        None => (CertStatus::InfeasibleDomain, target.clone()),
        Some(b) => {
            if any_unresolved {
                (CertStatus::Inconclusive, b)
            } else {
                debug_assert!(any_resolved);
                (CertStatus::Certified, b)
            }
        }
    };

    let result = CertificateResult {
        certified_lower_bound: bound.clone(),
        status,
        boxes_processed,
        max_depth_reached,
        budget_exhausted,
        min_upper_enclosure: min_upper,
    };
    let certificate = Certificate {
        dim: root.dim(),
        objective: p.clone(),
        constraints: constraints.to_vec(),
        root: root.clone(),
        target: target.clone(),
        status,
        bound,
        boxes_processed,
        max_depth_reached,
        leaves,
    };
    (result, certificate)
}

// ---------------------------------------------------------------------------
// Certificate replay
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReplayError {
    #[error("duplicate leaf path {0:?}")]
    DuplicatePath(String),
    #[error("leaf tree is not a complete frontier at {0:?}")]
    IncompleteTree(String),
    #[error("leaf {path:?}: recomputed enclosure [{lo}, {hi}] differs from the recorded one")]
    EnclosureMismatch {
        path: String,
        lo: String,
        hi: String,
    },
    #[error("leaf {path:?}: recorded bound differs from the recomputed effective bound {bound}")]
    BoundMismatch { path: String, bound: String },
    #[error("leaf {path:?}: constraint {constraint} does not exclude feasibility")]
    InfeasibilityNotConfirmed { path: String, constraint: usize },
    #[error("leaf {path:?}: an earlier constraint already excludes feasibility")]
    WrongConstraintOrder { path: String },
    #[error("leaf {path:?}: resolved bound is below the target")]
    ResolvedBelowTarget { path: String },
    #[error("internal node {path:?} should have been resolved, not split")]
    SplitResolvedNode { path: String },
    #[error("certificate bound {recorded} does not match the replayed minimum {replayed}")]
    GlobalBoundMismatch { recorded: String, replayed: String },
    #[error("certificate status is inconsistent with its leaves")]
    StatusMismatch,
}

/// Successful replay summary.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReplayOutcome {
    pub leaves_checked: usize,
    pub confirmed_bound: Rational,
}

/// Independent verification pass: re-derives every leaf enclosure from the
/// recorded root box and subdivision policy, confirms infeasible discards,
/// checks the leaf set tiles the root box (complete binary frontier), and
/// re-computes the certified bound. Succeeds only with zero discrepancies.
pub fn replay_certificate(cert: &Certificate) -> Result<ReplayOutcome, ReplayError> {
    let obj = RangeEvaluator::new(&cert.objective);
    let cons: Vec<(Relation, RangeEvaluator)> = cert
        .constraints
        .iter()
        .map(|c| (c.relation, RangeEvaluator::new(&c.poly)))
        .collect();

    let mut by_path: std::collections::BTreeMap<&str, &LeafRecord> =
        std::collections::BTreeMap::new();
    for leaf in &cert.leaves {
        if by_path.insert(leaf.path.as_str(), leaf).is_some() {
            return Err(ReplayError::DuplicatePath(leaf.path.clone()));
        }
    }
    let all_paths: Vec<&str> = by_path.keys().copied().collect();

    struct Walker<'a> {
        cert: &'a Certificate,
        obj: &'a RangeEvaluator,
        cons: &'a [(Relation, RangeEvaluator)],
        by_path: &'a std::collections::BTreeMap<&'a str, &'a LeafRecord>,
        all_paths: &'a [&'a str],
        leaves_checked: usize,
        min_bound: Option<Rational>,
        any_unresolved: bool,
        any_resolved: bool,
    }

    impl<'a> Walker<'a> {
        fn subtree_exists(&self, prefix: &str) -> bool {
            // Any recorded path extending `prefix`?
            let idx = self.all_paths.partition_point(|p| *p < prefix);
            self.all_paths
                .get(idx)
                .is_some_and(|p| p.starts_with(prefix))
        }

        fn verify_infeasible(
            &self,
            path: &str,
            bx: &IntervalBox,
            constraint: usize,
            recorded: &Interval,
        ) -> Result<(), ReplayError> {
            for (ci, (relation, eval)) in self.cons.iter().enumerate().take(constraint) {
                let range = eval.range(bx);
                let violated = match relation {
                    Relation::EqZero => !range.contains_zero(),
                    Relation::LeZero => range.lo().is_positive(),
                };
                let _ = ci;
                if violated {
                    return Err(ReplayError::WrongConstraintOrder {
                        path: path.to_string(),
                    });
                }
            }
            let (relation, eval) = &self.cons[constraint];
            let range = eval.range(bx);
            if &range != recorded {
                return Err(ReplayError::EnclosureMismatch {
                    path: path.to_string(),
                    lo: rational_to_string(range.lo()),
                    hi: rational_to_string(range.hi()),
                });
            }
            let violated = match relation {
                Relation::EqZero => !range.contains_zero(),
                Relation::LeZero => range.lo().is_positive(),
            };
            if !violated {
                return Err(ReplayError::InfeasibilityNotConfirmed {
                    path: path.to_string(),
                    constraint,
                });
            }
            Ok(())
        }

        fn note_bound(&mut self, b: &Rational) {
            self.min_bound = Some(match self.min_bound.take() {
                None => b.clone(),
                Some(m) => m.min(b.clone()),
            });
        }

        fn walk(
            &mut self,
            bx: IntervalBox,
            path: String,
            inherited: Option<(Rational, Interval)>,
        ) -> Result<(), ReplayError> {
            if let Some(leaf) = self.by_path.get(path.as_str()) {
                self.leaves_checked += 1;
                match &leaf.status {
                    LeafStatus::Infeasible { constraint, range } => {
                        self.verify_infeasible(&path, &bx, *constraint, range)?;
                    }
                    LeafStatus::UnresolvedInherited { bound, range } => {
                        let (parent_eff, parent_range) = inherited
                            .ok_or_else(|| ReplayError::IncompleteTree(path.clone()))?;
                        if bound != &parent_eff || range != &parent_range {
                            return Err(ReplayError::BoundMismatch {
                                path: path.clone(),
                                bound: rational_to_string(&parent_eff),
                            });
                        }
                        self.any_unresolved = true;
                        self.note_bound(bound);
                    }
                    LeafStatus::Resolved { bound, range }
                    | LeafStatus::Unresolved { bound, range } => {
                        let recomputed = self.obj.range(&bx);
                        if &recomputed != range {
                            return Err(ReplayError::EnclosureMismatch {
                                path: path.clone(),
                                lo: rational_to_string(recomputed.lo()),
                                hi: rational_to_string(recomputed.hi()),
                            });
                        }
                        let eff = match &inherited {
                            Some((lo, _)) => lo.clone().max(recomputed.lo().clone()),
                            None => recomputed.lo().clone(),
                        };
                        if bound != &eff {
                            return Err(ReplayError::BoundMismatch {
                                path: path.clone(),
                                bound: rational_to_string(&eff),
                            });
                        }
                        match &leaf.status {
                            LeafStatus::Resolved { .. } => {
                                if bound < &self.cert.target {
                                    return Err(ReplayError::ResolvedBelowTarget {
                                        path: path.clone(),
                                    });
                                }
                                self.any_resolved = true;
                            }
                            _ => self.any_unresolved = true,
                        }
                        self.note_bound(bound);
                    }
                }
                return Ok(());
            }
            // Internal node: both children must exist, and the node must have
            // been feasible-undecided and below target (it was split).
            let child0 = format!("{path}0");
            let child1 = format!("{path}1");
            if !self.subtree_exists(&child0) || !self.subtree_exists(&child1) {
                return Err(ReplayError::IncompleteTree(path));
            }
            let range = self.obj.range(&bx);
            let eff = match &inherited {
                Some((lo, _)) => lo.clone().max(range.lo().clone()),
                None => range.lo().clone(),
            };
            if eff >= self.cert.target {
                return Err(ReplayError::SplitResolvedNode { path });
            }
            let (lo_half, hi_half) = bx.split();
            let pass_down = Some((eff, range));
            self.walk(lo_half, child0, pass_down.clone())?;
            self.walk(hi_half, child1, pass_down)?;
            Ok(())
        }
    }

    let mut walker = Walker {
        cert,
        obj: &obj,
        cons: &cons,
        by_path: &by_path,
        all_paths: &all_paths,
        leaves_checked: 0,
        min_bound: None,
        any_unresolved: false,
        any_resolved: false,
    };
    walker.walk(cert.root.clone(), String::new(), None)?;

    let replayed_bound = match &walker.min_bound {
        None => cert.target.clone(),
        Some(b) => b.clone(),
    };
    if replayed_bound != cert.bound {
        return Err(ReplayError::GlobalBoundMismatch {
            recorded: rational_to_string(&cert.bound),
            replayed: rational_to_string(&replayed_bound),
        });
    }
    let expected_status = if walker.min_bound.is_none() {
        CertStatus::InfeasibleDomain
    } else if walker.any_unresolved {
        CertStatus::Inconclusive
    } else {
        CertStatus::Certified
    };
    if expected_status != cert.status
        || (cert.status == CertStatus::Certified && cert.bound < cert.target)
    {
        return Err(ReplayError::StatusMismatch);
    }
    Ok(ReplayOutcome {
        leaves_checked: walker.leaves_checked,
        confirmed_bound: replayed_bound,
    })
}

// ---------------------------------------------------------------------------
// Certificate text serialization
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertificateParseError {
    #[error("line {0}: {1}")]
    Malformed(usize, String),
    #[error("missing section {0:?}")]
    MissingSection(&'static str),
}

impl Certificate {
    /// Structured text, rational endpoints verbatim; parses back exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("certificate v1\n");
        out.push_str(&format!("dim {}\n", self.dim));
        out.push_str(&format!("target {}\n", rational_to_string(&self.target)));
        out.push_str(&format!("status {}\n", self.status.as_str()));
        out.push_str(&format!("bound {}\n", rational_to_string(&self.bound)));
        out.push_str(&format!("boxes-processed {}\n", self.boxes_processed));
        out.push_str(&format!("max-depth {}\n", self.max_depth_reached));
        out.push_str(&format!("objective {}\n", self.objective));
        out.push_str(&format!("constraints {}\n", self.constraints.len()));
        for c in &self.constraints {
            let rel = match c.relation {
                Relation::EqZero => "eq",
                Relation::LeZero => "le",
            };
            out.push_str(&format!("constraint {} {}\n", rel, c.poly));
        }
        let mut root_line = String::from("root");
        for iv in self.root.dims() {
            root_line.push_str(&format!(
                " {} {}",
                rational_to_string(iv.lo()),
                rational_to_string(iv.hi())
            ));
        }
        out.push_str(&root_line);
        out.push('\n');
        out.push_str(&format!("leaves {}\n", self.leaves.len()));
        for leaf in &self.leaves {
            let path = if leaf.path.is_empty() { "-" } else { &leaf.path };
            match &leaf.status {
                LeafStatus::Resolved { bound, range } => out.push_str(&format!(
                    "leaf {} resolved {} {} {}\n",
                    path,
                    rational_to_string(bound),
                    rational_to_string(range.lo()),
                    rational_to_string(range.hi())
                )),
                LeafStatus::Unresolved { bound, range } => out.push_str(&format!(
                    "leaf {} unresolved {} {} {}\n",
                    path,
                    rational_to_string(bound),
                    rational_to_string(range.lo()),
                    rational_to_string(range.hi())
                )),
                LeafStatus::UnresolvedInherited { bound, range } => out.push_str(&format!(
                    "leaf {} unresolved-inherited {} {} {}\n",
                    path,
                    rational_to_string(bound),
                    rational_to_string(range.lo()),
                    rational_to_string(range.hi())
                )),
                LeafStatus::Infeasible { constraint, range } => out.push_str(&format!(
                    "leaf {} infeasible {} {} {}\n",
                    path,
                    constraint,
                    rational_to_string(range.lo()),
                    rational_to_string(range.hi())
                )),
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Certificate, CertificateParseError> {
        let err = |n: usize, m: &str| CertificateParseError::Malformed(n, m.to_string());
        let mut lines = text.lines().enumerate();
        let mut expect = |section: &'static str| -> Result<(usize, String), CertificateParseError> {
            let (n, line) = lines
                .next()
                .ok_or(CertificateParseError::MissingSection(section))?;
            let rest = line
                .strip_prefix(section)
                .ok_or(CertificateParseError::MissingSection(section))?;
            Ok((n, rest.trim().to_string()))
        };
        expect("certificate v1")?;
        let (n, dim_text) = expect("dim ")?;
        let dim: usize = dim_text.parse().map_err(|_| err(n, "bad dimension"))?;
        let (n, target_text) = expect("target ")?;
        let target = parse_rational(&target_text).map_err(|_| err(n, "bad target"))?;
        let (n, status_text) = expect("status ")?;
        let status = match status_text.as_str() {
            "certified" => CertStatus::Certified,
            "inconclusive" => CertStatus::Inconclusive,
            "infeasible-domain" => CertStatus::InfeasibleDomain,
            _ => return Err(err(n, "bad status")),
        };
        let (n, bound_text) = expect("bound ")?;
        let bound = parse_rational(&bound_text).map_err(|_| err(n, "bad bound"))?;
        let (n, bp_text) = expect("boxes-processed ")?;
        let boxes_processed: u64 = bp_text.parse().map_err(|_| err(n, "bad box count"))?;
        let (n, md_text) = expect("max-depth ")?;
        let max_depth_reached: u32 = md_text.parse().map_err(|_| err(n, "bad depth"))?;
        let (n, obj_text) = expect("objective ")?;
        let objective: Polynomial = obj_text.parse().map_err(|_| err(n, "bad objective"))?;
        let (n, ncons_text) = expect("constraints ")?;
        let ncons: usize = ncons_text
            .parse()
            .map_err(|_| err(n, "bad constraint count"))?;
        let mut constraints = Vec::with_capacity(ncons);
        for _ in 0..ncons {
            let (n, c_text) = expect("constraint ")?;
            let (rel_text, poly_text) = c_text
                .split_once(' ')
                .ok_or_else(|| err(n, "bad constraint"))?;
            let relation = match rel_text {
                "eq" => Relation::EqZero,
                "le" => Relation::LeZero,
                _ => return Err(err(n, "bad constraint relation")),
            };
            let poly: Polynomial = poly_text
                .parse()
                .map_err(|_| err(n, "bad constraint polynomial"))?;
            constraints.push(Constraint { poly, relation });
        }
        let (n, root_text) = expect("root ")?;
        let tokens: Vec<&str> = root_text.split_whitespace().collect();
        if tokens.len() != 2 * dim {
            return Err(err(n, "bad root box"));
        }
        let mut dims = Vec::with_capacity(dim);
        for pair in tokens.chunks(2) {
            let lo = parse_rational(pair[0]).map_err(|_| err(n, "bad root endpoint"))?;
            let hi = parse_rational(pair[1]).map_err(|_| err(n, "bad root endpoint"))?;
            dims.push(Interval::new(lo, hi));
        }
        let root = IntervalBox::new(dims);
        let (n, nleaves_text) = expect("leaves ")?;
        let nleaves: usize = nleaves_text.parse().map_err(|_| err(n, "bad leaf count"))?;
        let mut leaves = Vec::with_capacity(nleaves);
        for _ in 0..nleaves {
            let (n, l_text) = expect("leaf ")?;
            let tokens: Vec<&str> = l_text.split_whitespace().collect();
            if tokens.len() != 5 {
                return Err(err(n, "bad leaf line"));
            }
            let path = if tokens[0] == "-" {
                String::new()
            } else {
                if !tokens[0].chars().all(|c| c == '0' || c == '1') {
                    return Err(err(n, "bad leaf path"));
                }
                tokens[0].to_string()
            };
            let lo = parse_rational(tokens[3]).map_err(|_| err(n, "bad leaf endpoint"))?;
            let hi = parse_rational(tokens[4]).map_err(|_| err(n, "bad leaf endpoint"))?;
            let range = Interval::new(lo, hi);
            let status = match tokens[1] {
                "resolved" => LeafStatus::Resolved {
                    bound: parse_rational(tokens[2]).map_err(|_| err(n, "bad leaf bound"))?,
                    range,
                },
                "unresolved" => LeafStatus::Unresolved {
                    bound: parse_rational(tokens[2]).map_err(|_| err(n, "bad leaf bound"))?,
                    range,
                },
                "unresolved-inherited" => LeafStatus::UnresolvedInherited {
                    bound: parse_rational(tokens[2]).map_err(|_| err(n, "bad leaf bound"))?,
                    range,
                },
                "infeasible" => LeafStatus::Infeasible {
                    constraint: tokens[2].parse().map_err(|_| err(n, "bad constraint index"))?,
                    range,
                },
                _ => return Err(err(n, "bad leaf status")),
            };
            leaves.push(LeafRecord { path, status });
        }
        Ok(Certificate {
            dim,
            objective,
            constraints,
            root,
            target,
            status,
            bound,
            boxes_processed,
            max_depth_reached,
            leaves,
        })
    }
}

// ---------------------------------------------------------------------------
// Grid oracle
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("no grid node satisfies the constraints")]
    EmptyFeasibleGrid,
}

/// Exhaustive rational-grid scan at the given step: the independent,
/// non-certified minimum estimate. Equality constraints are relaxed to
/// |g| <= step * (sum of |coefficients| of g); inequality constraints are
/// exact. Returns the first minimizing node in row-major order.
pub fn grid_oracle_min(
    p: &Polynomial,
    b: &IntervalBox,
    constraints: &[Constraint],
    step: &Rational,
) -> Result<(Vec<Rational>, Rational), OracleError> {
    assert!(step.is_positive(), "grid step must be positive");
    check_dims(p, b);
    let dim = b.dim();
    let axes: Vec<Vec<Rational>> = b
        .dims()
        .iter()
        .map(|iv| {
            let mut vals = Vec::new();
            let mut v = iv.lo().clone();
            while &v <= iv.hi() {
                vals.push(v.clone());
                v += step;
            }
            vals
        })
        .collect();
    let tolerances: Vec<Rational> = constraints
        .iter()
        .map(|c| {
            let coeff_mass: Rational = c
                .poly
                .terms()
                .map(|(_, coeff)| coeff.abs())
                .fold(Rational::zero(), |acc, x| acc + x);
            step * coeff_mass
        })
        .collect();

    let mut best: Option<(Vec<Rational>, Rational)> = None;
    let mut indices = vec![0usize; dim];
    'outer: loop {
        let mut point: [Rational; NVARS] = std::array::from_fn(|_| Rational::zero());
        for (v, &i) in indices.iter().enumerate() {
            point[v] = axes[v][i].clone();
        }
        let feasible = constraints.iter().zip(&tolerances).all(|(c, tol)| {
            let g = c.poly.eval(&point);
            match c.relation {
                Relation::EqZero => g.abs() <= *tol,
                Relation::LeZero => !g.is_positive(),
            }
        });
        if feasible {
            let value = p.eval(&point);
            let node: Vec<Rational> = point[..dim].to_vec();
            match &best {
                None => best = Some((node, value)),
                Some((_, best_val)) if &value < best_val => best = Some((node, value)),
                _ => {}
            }
        }
        // Row-major advance: last dimension fastest.
        for v in (0..dim).rev() {
            indices[v] += 1;
            if indices[v] < axes[v].len() {
                continue 'outer;
            }
            indices[v] = 0;
        }
        break;
    }
    best.ok_or(OracleError::EmptyFeasibleGrid)
}
