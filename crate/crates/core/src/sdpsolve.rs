//! Dense primal-dual interior-point solver for small semidefinite programs
//!
//! ```text
//! minimize    ⟨C, X⟩
//! subject to  ⟨B_m, X⟩  {=, ≤, ≥}  b_m      m = 1..M
//!             X ⪰ 0
//! ```
//!
//! Inequalities get a nonnegative slack each, so internally the cone is
//! `S^n_+ × R^p_+`. Search directions are HKM (`dX = sym(…Z⁻¹)`) with a
//! Mehrotra predictor-corrector. Rows and the objective are equilibrated to
//! unit Frobenius norm before iterating; reported quantities are in the
//! caller's units.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{domain, MagbbError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SdpConstraint {
    pub matrix: DMatrix<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

impl SdpConstraint {
    pub fn new(matrix: DMatrix<f64>, relation: Relation, rhs: f64) -> Self {
        Self {
            matrix,
            relation,
            rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SdpProblem {
    objective: DMatrix<f64>,
    constraints: Vec<SdpConstraint>,
}

const SYMMETRY_TOL: f64 = 1e-12;

impl SdpProblem {
    pub fn new(objective: DMatrix<f64>, constraints: Vec<SdpConstraint>) -> Result<Self> {
        let n = objective.nrows();
        if n == 0 || objective.ncols() != n {
            return domain("objective must be a non-empty square matrix");
        }
        if constraints.is_empty() {
            return domain("constraint list must be non-empty");
        }
        check_symmetric("objective", &objective)?;
        for (idx, c) in constraints.iter().enumerate() {
            if c.matrix.nrows() != n || c.matrix.ncols() != n {
                return Err(MagbbError::Dimension {
                    expected: n,
                    got: c.matrix.nrows(),
                });
            }
            if !c.rhs.is_finite() {
                return domain(format!("constraint {idx} has non-finite rhs"));
            }
            check_symmetric(&format!("constraint {idx}"), &c.matrix)?;
        }
        Ok(Self {
            objective,
            constraints,
        })
    }

    pub fn dimension(&self) -> usize {
        self.objective.nrows()
    }

    pub fn objective(&self) -> &DMatrix<f64> {
        &self.objective
    }

    pub fn constraints(&self) -> &[SdpConstraint] {
        &self.constraints
    }
}

fn check_symmetric(what: &str, m: &DMatrix<f64>) -> Result<()> {
    let scale = m.amax().max(1.0);
    if m.iter().any(|v| !v.is_finite()) {
        return domain(format!("{what} has non-finite entries"));
    }
    if (m - m.transpose()).amax() > SYMMETRY_TOL * scale {
        return domain(format!("{what} is not symmetric"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SdpStatus {
    Optimal,
    Infeasible,
    MaxIterations,
}

/// Relative KKT residuals of the final iterate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct KktResiduals {
    /// `‖b − 𝒜(X)‖ / (1 + ‖b‖)`
    pub primal: f64,
    /// `‖C − 𝒜*(y) − Z‖ / (1 + ‖C‖)`
    pub dual: f64,
    /// `|⟨C,X⟩ − bᵀy| / (1 + |⟨C,X⟩| + |bᵀy|)`
    pub gap: f64,
}

impl KktResiduals {
    pub fn max(&self) -> f64 {
        self.primal.max(self.dual).max(self.gap)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SdpSolution {
    pub x_matrix: DMatrix<f64>,
    pub status: SdpStatus,
    /// `⟨C, X⟩` in the caller's units.
    pub objective_value: f64,
    /// Largest constraint violation relative to `max(1, |rhs|)`, or the
    /// Farkas certificate residual when `status` is `Infeasible`.
    pub feasibility_residual: f64,
    /// Eigenvalues of `x_matrix`, largest first.
    pub eigenvalues: Vec<f64>,
    /// One multiplier per constraint, in input order.
    pub dual: Vec<f64>,
    pub kkt: KktResiduals,
    pub iterations: usize,
}

impl SdpSolution {
    /// `λ_max / Σλ⁺`; 1 for an exactly rank-one matrix.
    pub fn rank_one_ratio(&self) -> f64 {
        let total: f64 = self.eigenvalues.iter().map(|l| l.max(0.0)).sum();
        if total <= 0.0 {
            return 0.0;
        }
        self.eigenvalues[0].max(0.0) / total
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Declare the primal infeasible once the (equilibrated) dual objective
    /// exceeds this value.
    pub infeasibility_bound: f64,
    /// Fraction of the distance to the cone boundary taken per step.
    pub step_fraction: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-9,
            max_iterations: 100,
            infeasibility_bound: 1e8,
            step_fraction: 0.98,
        }
    }
}

pub fn solve(problem: &SdpProblem, tolerance: f64, max_iterations: usize) -> Result<SdpSolution> {
    solve_with(
        problem,
        &SolverOptions {
            tolerance,
            max_iterations,
            ..SolverOptions::default()
        },
    )
}

pub fn solve_with(problem: &SdpProblem, opts: &SolverOptions) -> Result<SdpSolution> {
    if !(opts.tolerance.is_finite() && opts.tolerance > 0.0) {
        return domain(format!("tolerance must be > 0, got {}", opts.tolerance));
    }
    if !(opts.step_fraction > 0.0 && opts.step_fraction < 1.0) {
        return domain("step_fraction must lie in (0, 1)");
    }
    let scaled = ScaledProblem::from_problem(problem);
    let active = match presolve(&scaled) {
        Presolve::Rows(rows) => rows,
        Presolve::Inconsistent(certificate) => {
            let n = problem.dimension();
            let mut dual = vec![0.0; problem.constraints.len()];
            for (i, w) in certificate.iter().enumerate() {
                dual[i] = w / scaled.row_scale[i];
            }
            return Ok(finish(
                problem,
                DMatrix::zeros(n, n),
                SdpStatus::Infeasible,
                dual,
                KktResiduals::default(),
                0,
                Some(0.0),
            ));
        }
    };
    let reduced = scaled.restrict(&active);
    let state = Ipm::new(&reduced, opts).run();

    let mut dual = vec![0.0; problem.constraints.len()];
    for (k, &i) in active.iter().enumerate() {
        dual[i] = state.y[k] * scaled.objective_scale / scaled.row_scale[i];
    }
    Ok(finish(
        problem,
        state.x,
        state.status,
        dual,
        state.kkt,
        state.iterations,
        state.certificate,
    ))
}

fn finish(
    problem: &SdpProblem,
    x: DMatrix<f64>,
    status: SdpStatus,
    dual: Vec<f64>,
    kkt: KktResiduals,
    iterations: usize,
    certificate: Option<f64>,
) -> SdpSolution {
    let x = symmetrize(&x);
    let mut eigenvalues: Vec<f64> = SymmetricEigen::new(x.clone())
        .eigenvalues
        .iter()
        .copied()
        .collect();
    eigenvalues.sort_by(|a, b| b.total_cmp(a));
    let objective_value = frobenius_dot(&problem.objective, &x);
    let feasibility_residual = match (status, certificate) {
        (SdpStatus::Infeasible, Some(c)) => c,
        _ => problem
            .constraints
            .iter()
            .map(|c| constraint_violation(c, &x) / c.rhs.abs().max(1.0))
            .fold(0.0, f64::max),
    };
    SdpSolution {
        x_matrix: x,
        status,
        objective_value,
        feasibility_residual,
        eigenvalues,
        dual,
        kkt,
        iterations,
    }
}

fn constraint_violation(c: &SdpConstraint, x: &DMatrix<f64>) -> f64 {
    let residual = frobenius_dot(&c.matrix, x) - c.rhs;
    match c.relation {
        Relation::Eq => residual.abs(),
        Relation::Le => residual.max(0.0),
        Relation::Ge => (-residual).max(0.0),
    }
}

/// Independent re-evaluation of a candidate solution.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    /// `⟨B_m, X⟩ − b_m` per constraint.
    pub residuals: Vec<f64>,
    /// Non-negative violation per constraint (zero when satisfied).
    pub violations: Vec<f64>,
    pub max_violation: f64,
    pub min_eigenvalue: f64,
    /// `max(0, −λ_min)`
    pub psd_violation: f64,
    pub objective_value: f64,
}

pub fn validate(problem: &SdpProblem, solution: &SdpSolution) -> Result<ResidualReport> {
    let n = problem.dimension();
    let x = &solution.x_matrix;
    if x.nrows() != n || x.ncols() != n {
        return Err(MagbbError::Dimension {
            expected: n,
            got: x.nrows(),
        });
    }
    let residuals: Vec<f64> = problem
        .constraints
        .iter()
        .map(|c| frobenius_dot(&c.matrix, x) - c.rhs)
        .collect();
    let violations: Vec<f64> = problem
        .constraints
        .iter()
        .map(|c| constraint_violation(c, x))
        .collect();
    let min_eigenvalue = SymmetricEigen::new(symmetrize(x))
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    Ok(ResidualReport {
        max_violation: violations.iter().copied().fold(0.0, f64::max),
        residuals,
        violations,
        min_eigenvalue,
        psd_violation: (-min_eigenvalue).max(0.0),
        objective_value: frobenius_dot(&problem.objective, x),
    })
}

pub(crate) fn frobenius_dot(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.iter().zip(b.iter()).map(|(p, q)| p * q).sum()
}

fn symmetrize(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

/// Equilibrated standard form: `⟨A_i, X⟩ + g_i s_i = b_i`.
struct ScaledProblem {
    c: DMatrix<f64>,
    rows: Vec<DMatrix<f64>>,
    /// slack coefficient, 0 for equality rows
    slack: Vec<f64>,
    b: Vec<f64>,
    row_scale: Vec<f64>,
    objective_scale: f64,
}

impl ScaledProblem {
    fn from_problem(p: &SdpProblem) -> Self {
        let objective_scale = match p.objective.norm() {
            s if s > 0.0 => s,
            _ => 1.0,
        };
        let mut rows = Vec::new();
        let mut slack = Vec::new();
        let mut b = Vec::new();
        let mut row_scale = Vec::new();
        for c in &p.constraints {
            let scale = match c.matrix.norm() {
                s if s > 0.0 => s,
                _ => 1.0,
            };
            rows.push(&c.matrix / scale);
            slack.push(match c.relation {
                Relation::Eq => 0.0,
                Relation::Le => 1.0 / scale,
                Relation::Ge => -1.0 / scale,
            });
            b.push(c.rhs / scale);
            row_scale.push(scale);
        }
        Self {
            c: &p.objective / objective_scale,
            rows,
            slack,
            b,
            row_scale,
            objective_scale,
        }
    }

    fn restrict(&self, keep: &[usize]) -> Reduced {
        Reduced {
            c: self.c.clone(),
            rows: keep.iter().map(|&i| self.rows[i].clone()).collect(),
            slack: keep.iter().map(|&i| self.slack[i]).collect(),
            b: keep.iter().map(|&i| self.b[i]).collect(),
        }
    }
}

struct Reduced {
    c: DMatrix<f64>,
    rows: Vec<DMatrix<f64>>,
    slack: Vec<f64>,
    b: Vec<f64>,
}

enum Presolve {
    /// Indices of rows kept for the interior-point phase.
    Rows(Vec<usize>),
    /// Weights `w` (over all rows) with `Σ w_i A_i = 0`, `bᵀw = 1`.
    Inconsistent(Vec<f64>),
}

/// Drops equality rows that are linear combinations of earlier equality
/// rows, or reports an inconsistency. Inequality rows each own a slack and
/// can never be dependent.
fn presolve(p: &ScaledProblem) -> Presolve {
    const DEPENDENCE_TOL: f64 = 1e-10;
    const CONSISTENCY_TOL: f64 = 1e-9;
    let total = p.rows.len();
    // orthonormal basis of accepted equality rows, each with its expansion
    // coefficients over the original rows
    let mut basis: Vec<(DMatrix<f64>, Vec<f64>)> = Vec::new();
    let mut keep = Vec::new();
    for i in 0..total {
        if p.slack[i] != 0.0 {
            keep.push(i);
            continue;
        }
        let mut residual = p.rows[i].clone();
        let mut coeffs = vec![0.0; total];
        coeffs[i] = 1.0;
        for (q, qc) in &basis {
            let proj = frobenius_dot(&residual, q);
            residual -= q * proj;
            for (c, qv) in coeffs.iter_mut().zip(qc) {
                *c -= proj * qv;
            }
        }
        let norm = residual.norm();
        if norm > DEPENDENCE_TOL * p.rows[i].norm().max(f64::MIN_POSITIVE) {
            basis.push((residual / norm, coeffs.iter().map(|c| c / norm).collect()));
            keep.push(i);
            continue;
        }
        let mismatch: f64 = coeffs.iter().zip(&p.b).map(|(w, b)| w * b).sum();
        if mismatch.abs() > CONSISTENCY_TOL * (1.0 + p.b[i].abs()) {
            return Presolve::Inconsistent(coeffs.iter().map(|w| w / mismatch).collect());
        }
    }
    Presolve::Rows(keep)
}

struct IpmOutcome {
    x: DMatrix<f64>,
    y: Vec<f64>,
    status: SdpStatus,
    kkt: KktResiduals,
    iterations: usize,
    certificate: Option<f64>,
}

struct Ipm<'a> {
    p: &'a Reduced,
    opts: &'a SolverOptions,
    n: usize,
    x: DMatrix<f64>,
    z: DMatrix<f64>,
    s: Vec<f64>,
    w: Vec<f64>,
    y: Vec<f64>,
    /// indices of rows that carry a slack
    slack_rows: Vec<usize>,
}

struct Direction {
    dx: DMatrix<f64>,
    dz: DMatrix<f64>,
    ds: Vec<f64>,
    dw: Vec<f64>,
    dy: Vec<f64>,
}

impl<'a> Ipm<'a> {
    fn new(p: &'a Reduced, opts: &'a SolverOptions) -> Self {
        let n = p.c.nrows();
        let slack_rows: Vec<usize> = (0..p.rows.len()).filter(|&i| p.slack[i] != 0.0).collect();
        let dim = (n + slack_rows.len()) as f64;
        let b_max = p.b.iter().fold(0.0_f64, |m, b| m.max(b.abs()));
        let xi = 10.0_f64.max(dim.sqrt()).max(1.0 + b_max);
        let eta = 10.0_f64.max(dim.sqrt());
        Self {
            p,
            opts,
            n,
            x: DMatrix::identity(n, n) * xi,
            z: DMatrix::identity(n, n) * eta,
            s: vec![xi; slack_rows.len()],
            w: vec![eta; slack_rows.len()],
            y: vec![0.0; p.rows.len()],
            slack_rows,
        }
    }

    fn slack_value(&self, row: usize, s: &[f64]) -> f64 {
        self.slack_rows
            .iter()
            .position(|&r| r == row)
            .map_or(0.0, |k| self.p.slack[row] * s[k])
    }

    fn primal_residual(&self) -> Vec<f64> {
        (0..self.p.rows.len())
            .map(|i| {
                self.p.b[i] - frobenius_dot(&self.p.rows[i], &self.x) - self.slack_value(i, &self.s)
            })
            .collect()
    }

    fn adjoint(&self, y: &[f64]) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(self.n, self.n);
        for (row, yi) in self.p.rows.iter().zip(y) {
            out += row * *yi;
        }
        out
    }

    /// Dual residual: matrix part and slack part (`0 − w − g y`).
    fn dual_residual(&self) -> (DMatrix<f64>, Vec<f64>) {
        let rd = &self.p.c - &self.z - self.adjoint(&self.y);
        let rw = self
            .slack_rows
            .iter()
            .enumerate()
            .map(|(k, &i)| -self.w[k] - self.p.slack[i] * self.y[i])
            .collect();
        (rd, rw)
    }

    fn mu(&self) -> f64 {
        let dim = (self.n + self.s.len()) as f64;
        (frobenius_dot(&self.x, &self.z) + dot(&self.s, &self.w)) / dim
    }

    fn residuals(&self, rp: &[f64], rd: &DMatrix<f64>, rw: &[f64]) -> KktResiduals {
        let b_norm = norm(&self.p.b);
        let c_norm = self.p.c.norm();
        let pobj = frobenius_dot(&self.p.c, &self.x);
        let dobj = dot(&self.p.b, &self.y);
        KktResiduals {
            primal: norm(rp) / (1.0 + b_norm),
            dual: (rd.norm_squared() + dot(rw, rw)).sqrt() / (1.0 + c_norm),
            gap: (pobj - dobj).abs() / (1.0 + pobj.abs() + dobj.abs()),
        }
    }

    /// Farkas residual of the current dual ray `y / bᵀy`: how far
    /// `𝒜*(y)/bᵀy` is from being negative semidefinite.
    fn certificate_residual(&self) -> f64 {
        let dobj = dot(&self.p.b, &self.y);
        let ray = self.adjoint(&self.y) / dobj;
        let lmax = SymmetricEigen::new(symmetrize(&ray))
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        let slack_part = self
            .slack_rows
            .iter()
            .map(|&i| self.p.slack[i] * self.y[i] / dobj)
            .fold(f64::NEG_INFINITY, f64::max);
        lmax.max(slack_part).max(0.0)
    }

    fn run(mut self) -> IpmOutcome {
        let mut best: Option<(f64, DMatrix<f64>, Vec<f64>, KktResiduals)> = None;
        let mut iterations = 0;
        for iter in 0..self.opts.max_iterations {
            iterations = iter;
            let rp = self.primal_residual();
            let (rd, rw) = self.dual_residual();
            let kkt = self.residuals(&rp, &rd, &rw);
            if kkt.max() <= self.opts.tolerance {
                return self.outcome(SdpStatus::Optimal, kkt, iter, None);
            }
            let dobj = dot(&self.p.b, &self.y);
            if dobj > self.opts.infeasibility_bound {
                let cert = self.certificate_residual();
                return self.outcome(SdpStatus::Infeasible, kkt, iter, Some(cert));
            }
            if best.as_ref().is_none_or(|b| kkt.max() < b.0) {
                best = Some((kkt.max(), self.x.clone(), self.y.clone(), kkt));
            }

            let Some(zinv) = spd_inverse(&self.z) else {
                break;
            };
            let schur = self.schur(&zinv);
            let mu = self.mu();

            // predictor
            let g = -&self.x;
            let g_lp: Vec<f64> = self.s.iter().map(|s| -s).collect();
            let Some(pred) = self.direction(&schur, &zinv, &rp, &rd, &rw, g, g_lp) else {
                break;
            };
            let ap = self.primal_step(&pred).min(1.0);
            let ad = self.dual_step(&pred).min(1.0);
            let x_aff = &self.x + &pred.dx * ap;
            let z_aff = &self.z + &pred.dz * ad;
            let lp_aff: f64 = self
                .s
                .iter()
                .zip(&pred.ds)
                .zip(self.w.iter().zip(&pred.dw))
                .map(|((s, ds), (w, dw))| (s + ap * ds) * (w + ad * dw))
                .sum();
            let dim = (self.n + self.s.len()) as f64;
            let mu_aff = (frobenius_dot(&x_aff, &z_aff) + lp_aff) / dim;
            let sigma = (mu_aff / mu).clamp(0.0, 1.0).powi(3);

            // corrector
            let g = &zinv * (sigma * mu) - &self.x - &pred.dx * &pred.dz * &zinv;
            let g_lp: Vec<f64> = (0..self.s.len())
                .map(|k| (sigma * mu - pred.ds[k] * pred.dw[k]) / self.w[k] - self.s[k])
                .collect();
            let Some(dir) = self.direction(&schur, &zinv, &rp, &rd, &rw, g, g_lp) else {
                break;
            };
            let ap = (self.opts.step_fraction * self.primal_step(&dir)).min(1.0);
            let ad = (self.opts.step_fraction * self.dual_step(&dir)).min(1.0);
            self.x = symmetrize(&(&self.x + &dir.dx * ap));
            self.z = symmetrize(&(&self.z + &dir.dz * ad));
            for k in 0..self.s.len() {
                self.s[k] += ap * dir.ds[k];
                self.w[k] += ad * dir.dw[k];
            }
            for (y, dy) in self.y.iter_mut().zip(&dir.dy) {
                *y += ad * dy;
            }
            if ap < 1e-12 && ad < 1e-12 {
                break;
            }
        }
        let rp = self.primal_residual();
        let (rd, rw) = self.dual_residual();
        let kkt = self.residuals(&rp, &rd, &rw);
        iterations += 1;
        if kkt.max() <= self.opts.tolerance {
            return self.outcome(SdpStatus::Optimal, kkt, iterations, None);
        }
        if let Some((score, x, y, best_kkt)) = best {
            if score < kkt.max() {
                self.x = x;
                self.y = y;
                return self.outcome(SdpStatus::MaxIterations, best_kkt, iterations, None);
            }
        }
        self.outcome(SdpStatus::MaxIterations, kkt, iterations, None)
    }

    fn outcome(
        self,
        status: SdpStatus,
        kkt: KktResiduals,
        iterations: usize,
        certificate: Option<f64>,
    ) -> IpmOutcome {
        IpmOutcome {
            x: self.x,
            y: self.y,
            status,
            kkt,
            iterations,
            certificate,
        }
    }

    /// `M_ij = tr(A_i X A_j Z⁻¹) + g_i g_j s/w` (slack term only when both
    /// rows share a slack, i.e. i = j).
    fn schur(&self, zinv: &DMatrix<f64>) -> DMatrix<f64> {
        let m = self.p.rows.len();
        let products: Vec<DMatrix<f64>> = self
            .p
            .rows
            .iter()
            .map(|a| (&self.x * a * zinv).transpose())
            .collect();
        let mut schur = DMatrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                schur[(i, j)] = frobenius_dot(&self.p.rows[i], &products[j]);
            }
        }
        for (k, &i) in self.slack_rows.iter().enumerate() {
            let g = self.p.slack[i];
            schur[(i, i)] += g * g * self.s[k] / self.w[k];
        }
        symmetrize(&schur)
    }

    #[allow(clippy::too_many_arguments)]
    fn direction(
        &self,
        schur: &DMatrix<f64>,
        zinv: &DMatrix<f64>,
        rp: &[f64],
        rd: &DMatrix<f64>,
        rw: &[f64],
        g: DMatrix<f64>,
        g_lp: Vec<f64>,
    ) -> Option<Direction> {
        let k_mat = &g - &self.x * rd * zinv;
        let k_lp: Vec<f64> = (0..self.s.len())
            .map(|k| g_lp[k] - self.s[k] * rw[k] / self.w[k])
            .collect();
        let mut rhs = DVector::from_iterator(
            rp.len(),
            (0..rp.len()).map(|i| rp[i] - frobenius_dot(&self.p.rows[i], &k_mat.transpose())),
        );
        for (k, &i) in self.slack_rows.iter().enumerate() {
            rhs[i] -= self.p.slack[i] * k_lp[k];
        }
        let dy = solve_spd(schur, &rhs)?;
        let dy: Vec<f64> = dy.iter().copied().collect();
        let dz = rd - self.adjoint(&dy);
        let dx = symmetrize(&(&g - &self.x * &dz * zinv));
        let dw: Vec<f64> = self
            .slack_rows
            .iter()
            .enumerate()
            .map(|(k, &i)| rw[k] - self.p.slack[i] * dy[i])
            .collect();
        let ds: Vec<f64> = (0..self.s.len())
            .map(|k| g_lp[k] - self.s[k] * dw[k] / self.w[k])
            .collect();
        Some(Direction { dx, dz, ds, dw, dy })
    }

    fn primal_step(&self, d: &Direction) -> f64 {
        max_psd_step(&self.x, &d.dx).min(max_lp_step(&self.s, &d.ds))
    }

    fn dual_step(&self, d: &Direction) -> f64 {
        max_psd_step(&self.z, &d.dz).min(max_lp_step(&self.w, &d.dw))
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn spd_inverse(m: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let inv = m.clone().cholesky()?.inverse();
    Some(symmetrize(&inv))
}

fn solve_spd(m: &DMatrix<f64>, rhs: &DVector<f64>) -> Option<DVector<f64>> {
    if let Some(chol) = m.clone().cholesky() {
        return Some(chol.solve(rhs));
    }
    // nearly singular Schur complement late in the run: ridge, then LU
    let ridge = 1e-14 * m.diagonal().amax().max(f64::MIN_POSITIVE);
    let shifted = m + DMatrix::identity(m.nrows(), m.ncols()) * ridge;
    if let Some(chol) = shifted.clone().cholesky() {
        return Some(chol.solve(rhs));
    }
    shifted.lu().solve(rhs)
}

/// Largest α with `X + α·dX ⪰ 0` (∞ when dX keeps X in the cone).
fn max_psd_step(x: &DMatrix<f64>, dx: &DMatrix<f64>) -> f64 {
    let Some(chol) = x.clone().cholesky() else {
        return 0.0;
    };
    let l = chol.l();
    let Some(left) = l.solve_lower_triangular(dx) else {
        return 0.0;
    };
    let Some(scaled) = l.solve_lower_triangular(&left.transpose()) else {
        return 0.0;
    };
    let lmin = SymmetricEigen::new(symmetrize(&scaled))
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if lmin < 0.0 {
        -1.0 / lmin
    } else {
        f64::INFINITY
    }
}

fn max_lp_step(v: &[f64], dv: &[f64]) -> f64 {
    v.iter()
        .zip(dv)
        .filter(|(_, d)| **d < 0.0)
        .map(|(x, d)| -x / d)
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trace_one(n: usize) -> SdpConstraint {
        SdpConstraint::new(DMatrix::identity(n, n), Relation::Eq, 1.0)
    }

    #[test]
    fn diagonal_objective_picks_smallest_eigenvalue() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 2.0, 3.0]));
        let p = SdpProblem::new(a, vec![trace_one(3)]).unwrap();
        let sol = solve(&p, 1e-9, 100).unwrap();
        assert_eq!(sol.status, SdpStatus::Optimal);
        assert!((sol.objective_value - 1.0).abs() < 1e-7);
        let mut e1 = DMatrix::zeros(3, 3);
        e1[(0, 0)] = 1.0;
        assert!((&sol.x_matrix - e1).amax() < 1e-6);
        assert!(sol.eigenvalues[1] / sol.eigenvalues[0] <= 1e-4);
    }

    #[test]
    fn contradictory_equalities_are_infeasible() {
        let i3 = DMatrix::identity(3, 3);
        let p = SdpProblem::new(
            DMatrix::zeros(3, 3),
            vec![
                SdpConstraint::new(i3.clone(), Relation::Eq, 1.0),
                SdpConstraint::new(i3, Relation::Eq, 2.0),
            ],
        )
        .unwrap();
        let sol = solve(&p, 1e-9, 100).unwrap();
        assert_eq!(sol.status, SdpStatus::Infeasible);
        // Farkas ray: y1 + y2 annihilates the rows, bᵀy > 0
        let ray = sol.dual[0] + sol.dual[1];
        assert!(ray.abs() < 1e-12);
        assert!(sol.dual[0] * 1.0 + sol.dual[1] * 2.0 > 0.0);
    }

    #[test]
    fn redundant_consistent_equality_is_dropped() {
        let i2 = DMatrix::identity(2, 2);
        let c = DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 1.0]);
        let p = SdpProblem::new(
            c,
            vec![
                SdpConstraint::new(i2.clone(), Relation::Eq, 1.0),
                SdpConstraint::new(i2 * 2.0, Relation::Eq, 2.0),
            ],
        )
        .unwrap();
        let sol = solve(&p, 1e-9, 100).unwrap();
        assert_eq!(sol.status, SdpStatus::Optimal);
        assert!((sol.objective_value - 1.0).abs() < 1e-7);
    }

    #[test]
    fn psd_incompatible_inequality_is_infeasible() {
        // X11 = 1, X22 = 1 and X12 ≥ 2 cannot hold for a PSD X
        let e = |r: usize, c: usize| {
            let mut m = DMatrix::zeros(2, 2);
            m[(r, c)] = 1.0;
            m[(c, r)] = 1.0;
            if r != c {
                m *= 0.5;
            }
            m
        };
        let p = SdpProblem::new(
            DMatrix::identity(2, 2),
            vec![
                SdpConstraint::new(e(0, 0), Relation::Eq, 1.0),
                SdpConstraint::new(e(1, 1), Relation::Eq, 1.0),
                SdpConstraint::new(e(0, 1), Relation::Ge, 2.0),
            ],
        )
        .unwrap();
        let sol = solve(&p, 1e-9, 200).unwrap();
        assert_eq!(sol.status, SdpStatus::Infeasible);
        assert!(sol.feasibility_residual < 1e-6);
    }

    #[test]
    fn inequality_constraints_bind_correctly() {
        // minimize −X11 with tr X ≤ 3 → X = 3 e1e1ᵀ
        let mut c = DMatrix::zeros(2, 2);
        c[(0, 0)] = -1.0;
        let p = SdpProblem::new(
            c,
            vec![SdpConstraint::new(
                DMatrix::identity(2, 2),
                Relation::Le,
                3.0,
            )],
        )
        .unwrap();
        let sol = solve(&p, 1e-9, 100).unwrap();
        assert_eq!(sol.status, SdpStatus::Optimal);
        assert!((sol.objective_value + 3.0).abs() < 1e-6);

        // minimize tr X with X11 ≥ 2 → X = 2 e1e1ᵀ
        let mut e11 = DMatrix::zeros(2, 2);
        e11[(0, 0)] = 1.0;
        let p = SdpProblem::new(
            DMatrix::identity(2, 2),
            vec![SdpConstraint::new(e11, Relation::Ge, 2.0)],
        )
        .unwrap();
        let sol = solve(&p, 1e-9, 100).unwrap();
        assert_eq!(sol.status, SdpStatus::Optimal);
        assert!((sol.objective_value - 2.0).abs() < 1e-6);
    }

    #[test]
    fn max_iterations_reports_best_iterate() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 2.0, 3.0]));
        let p = SdpProblem::new(a, vec![trace_one(3)]).unwrap();
        let sol = solve(&p, 1e-9, 2).unwrap();
        assert_eq!(sol.status, SdpStatus::MaxIterations);
        assert_eq!(sol.x_matrix.nrows(), 3);
    }

    #[test]
    fn validate_reports_equality_and_psd_violations() {
        let p = SdpProblem::new(DMatrix::identity(2, 2), vec![trace_one(2)]).unwrap();
        let zero = SdpSolution {
            x_matrix: DMatrix::zeros(2, 2),
            status: SdpStatus::Optimal,
            objective_value: 0.0,
            feasibility_residual: 0.0,
            eigenvalues: vec![0.0, 0.0],
            dual: vec![0.0],
            kkt: KktResiduals::default(),
            iterations: 0,
        };
        let report = validate(&p, &zero).unwrap();
        assert_eq!(report.violations, vec![1.0]);
        assert_eq!(report.residuals, vec![-1.0]);

        let indefinite = SdpSolution {
            x_matrix: DMatrix::from_diagonal(&DVector::from_vec(vec![1.1, -0.1])),
            ..zero.clone()
        };
        let report = validate(&p, &indefinite).unwrap();
        assert!((report.psd_violation - 0.1).abs() < 1e-15);
        assert!(report.max_violation < 1e-15);

        let wrong = SdpSolution {
            x_matrix: DMatrix::zeros(3, 3),
            ..zero
        };
        assert!(matches!(
            validate(&p, &wrong),
            Err(MagbbError::Dimension { .. })
        ));
    }

    #[test]
    fn problem_validation() {
        let asym = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0]);
        assert!(SdpProblem::new(asym, vec![trace_one(2)]).is_err());
        assert!(SdpProblem::new(DMatrix::identity(2, 2), vec![]).is_err());
        assert!(SdpProblem::new(DMatrix::identity(2, 2), vec![trace_one(3)]).is_err());
        let p = SdpProblem::new(DMatrix::identity(2, 2), vec![trace_one(2)]).unwrap();
        assert!(solve(&p, 0.0, 10).is_err());
    }
}
