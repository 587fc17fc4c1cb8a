//! Exact feasibility for small linear systems over arbitrary-precision
//! rationals.
//!
//! The solver runs the simplex method with Bland's rule on the Farkas
//! alternative of the system, so it always terminates and is fully
//! deterministic. Every
//! answer carries a certificate: a satisfying point, or a Farkas combination
//! of the constraints that collapses to `0 >= c` with `c > 0`. Certificates
//! are re-checked by exact substitution before they are returned.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Ge,
    Le,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("constraint has {found} coefficients, expected {expected}")]
    Arity { expected: usize, found: usize },
    #[error("variable {0} does not exist")]
    NoSuchVariable(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    num_vars: usize,
    constraints: Vec<Constraint>,
    nonneg: Vec<bool>,
}

impl LinearProgram {
    /// A system over `num_vars` free variables and no constraints.
    pub fn new(num_vars: usize) -> Self {
        Self { num_vars, constraints: Vec::new(), nonneg: vec![false; num_vars] }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn is_nonneg(&self, var: usize) -> bool {
        self.nonneg[var]
    }

    pub fn set_nonneg(&mut self, var: usize) -> Result<(), LpError> {
        *self.nonneg.get_mut(var).ok_or(LpError::NoSuchVariable(var))? = true;
        Ok(())
    }

    pub fn set_all_nonneg(&mut self) {
        self.nonneg.iter_mut().for_each(|b| *b = true);
    }

    pub fn add(
        &mut self,
        coeffs: Vec<BigRational>,
        relation: Relation,
        rhs: BigRational,
    ) -> Result<(), LpError> {
        if coeffs.len() != self.num_vars {
            return Err(LpError::Arity { expected: self.num_vars, found: coeffs.len() });
        }
        self.constraints.push(Constraint { coeffs, relation, rhs });
        Ok(())
    }

    /// Convenience for integer data.
    pub fn add_int(&mut self, coeffs: &[i64], relation: Relation, rhs: i64) -> Result<(), LpError> {
        self.add(coeffs.iter().map(|&c| int(c)).collect(), relation, int(rhs))
    }

    /// Multiply constraint `index` by a positive factor.
    pub fn scale_constraint(&mut self, index: usize, factor: &BigRational) {
        assert!(factor.is_positive(), "scaling factor must be positive");
        let c = &mut self.constraints[index];
        c.coeffs.iter_mut().for_each(|a| *a *= factor);
        c.rhs *= factor;
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FeasibilityResult {
    Feasible {
        point: Vec<BigRational>,
    },
    /// `multipliers[i] >= 0` weights constraint `i` after rewriting it as
    /// `a x >= b` (a `<=` row is negated first). The weighted sum has zero
    /// coefficients on free variables, nonpositive coefficients on
    /// nonnegative ones, and a positive right-hand side.
    Infeasible {
        multipliers: Vec<BigRational>,
    },
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityResult::Feasible { .. })
    }

    pub fn point(&self) -> Option<&[BigRational]> {
        match self {
            FeasibilityResult::Feasible { point } => Some(point),
            FeasibilityResult::Infeasible { .. } => None,
        }
    }

    pub fn verify(&self, lp: &LinearProgram) -> Result<(), CertificateError> {
        match self {
            FeasibilityResult::Feasible { point } => verify_point(lp, point),
            FeasibilityResult::Infeasible { multipliers } => verify_farkas(lp, multipliers),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("certificate has {found} entries, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("variable {0} is negative but declared nonnegative")]
    NegativeVariable(usize),
    #[error("constraint {0} is violated")]
    Violated(usize),
    #[error("multiplier {0} is negative")]
    NegativeMultiplier(usize),
    #[error("combined coefficient of variable {0} does not vanish")]
    Residual(usize),
    #[error("combined right-hand side {0} is not positive")]
    NoContradiction(BigRational),
}

pub fn verify_point(lp: &LinearProgram, point: &[BigRational]) -> Result<(), CertificateError> {
    if point.len() != lp.num_vars {
        return Err(CertificateError::Length { expected: lp.num_vars, found: point.len() });
    }
    if let Some(j) = (0..lp.num_vars).find(|&j| lp.nonneg[j] && point[j].is_negative()) {
        return Err(CertificateError::NegativeVariable(j));
    }
    for (i, c) in lp.constraints.iter().enumerate() {
        let lhs: BigRational = c.coeffs.iter().zip(point).map(|(a, x)| a * x).sum();
        let ok = match c.relation {
            Relation::Ge => lhs >= c.rhs,
            Relation::Le => lhs <= c.rhs,
        };
        if !ok {
            return Err(CertificateError::Violated(i));
        }
    }
    Ok(())
}

pub fn verify_farkas(lp: &LinearProgram, multipliers: &[BigRational]) -> Result<(), CertificateError> {
    let m = lp.constraints.len();
    if multipliers.len() != m {
        return Err(CertificateError::Length { expected: m, found: multipliers.len() });
    }
    if let Some(i) = multipliers.iter().position(|y| y.is_negative()) {
        return Err(CertificateError::NegativeMultiplier(i));
    }
    let mut combined = vec![BigRational::zero(); lp.num_vars];
    let mut rhs = BigRational::zero();
    for (c, y) in lp.constraints.iter().zip(multipliers) {
        if y.is_zero() {
            continue;
        }
        let signed = match c.relation {
            Relation::Ge => y.clone(),
            Relation::Le => -y,
        };
        for (acc, a) in combined.iter_mut().zip(&c.coeffs) {
            *acc += &signed * a;
        }
        rhs += &signed * &c.rhs;
    }
    for (j, coef) in combined.iter().enumerate() {
        let ok = if lp.nonneg[j] { !coef.is_positive() } else { coef.is_zero() };
        if !ok {
            return Err(CertificateError::Residual(j));
        }
    }
    if !rhs.is_positive() {
        return Err(CertificateError::NoContradiction(rhs));
    }
    Ok(())
}

static SOLVES: AtomicU64 = AtomicU64::new(0);
static VERIFIED: AtomicU64 = AtomicU64::new(0);

/// Process-wide solve and certificate-check counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveStats {
    pub solves: u64,
    pub certificates_verified: u64,
}

pub fn solve_stats() -> SolveStats {
    SolveStats {
        solves: SOLVES.load(Ordering::Relaxed),
        certificates_verified: VERIFIED.load(Ordering::Relaxed),
    }
}

/// Decide feasibility exactly.
///
/// # Panics
///
/// If the produced certificate fails re-verification, which would indicate
/// a bug in the pivoting code rather than a property of the input.
pub fn solve_feasibility(lp: &LinearProgram) -> FeasibilityResult {
    SOLVES.fetch_add(1, Ordering::Relaxed);
    let result = Tableau::build(lp).run();
    if let Err(e) = result.verify(lp) {
        panic!("simplex produced an invalid certificate: {e}");
    }
    VERIFIED.fetch_add(1, Ordering::Relaxed);
    result
}

/// Simplex tableau for the alternative system.
///
/// Write every constraint as `c_i x >= d_i` and split free variables so all
/// columns are nonnegative. The tableau maximises `d y` over
/// `C^T y + s = 0`, `d y + t = 1`, `y, s, t >= 0`. The slack basis is
/// feasible from the start, so a single phase suffices. A positive optimum
/// yields the Farkas multipliers `y`; a zero optimum means the original
/// system is feasible, and the simplex multipliers of the first rows form a
/// solution. Row count is the number of columns, which keeps the tableau
/// small for systems with few variables and many constraints.
struct Tableau {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    /// Reduced profits `p_j - pi A_j`.
    reduced: Vec<BigRational>,
    objective: BigRational,
    basis: Vec<usize>,
    constraints: usize,
    /// For each original variable: (positive column, optional negative column).
    var_cols: Vec<(usize, Option<usize>)>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let m = lp.constraints.len();
        let mut var_cols = Vec::with_capacity(lp.num_vars);
        let mut split = 0;
        for j in 0..lp.num_vars {
            if lp.nonneg[j] {
                var_cols.push((split, None));
                split += 1;
            } else {
                var_cols.push((split, Some(split + 1)));
                split += 2;
            }
        }
        let cols = m + split + 1;
        let mut rows = vec![vec![BigRational::zero(); cols]; split + 1];
        let mut reduced = vec![BigRational::zero(); cols];
        for (i, c) in lp.constraints.iter().enumerate() {
            let flip = c.relation == Relation::Le;
            for (j, a) in c.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let v = if flip { -a } else { a.clone() };
                let (pos, neg) = var_cols[j];
                if let Some(neg) = neg {
                    rows[neg][i] = -v.clone();
                }
                rows[pos][i] = v;
            }
            let d = if flip { -&c.rhs } else { c.rhs.clone() };
            rows[split][i] = d.clone();
            reduced[i] = d;
        }
        for (k, row) in rows.iter_mut().enumerate() {
            row[m + k] = BigRational::one();
        }
        let mut rhs = vec![BigRational::zero(); split + 1];
        rhs[split] = BigRational::one();
        let basis = (0..=split).map(|k| m + k).collect();
        Self { rows, rhs, reduced, objective: BigRational::zero(), basis, constraints: m, var_cols }
    }

    fn run(mut self) -> FeasibilityResult {
        while let Some(enter) = self.reduced.iter().position(|r| r.is_positive()) {
            let leave = self.ratio_test(enter).expect("objective is bounded by the normalising row");
            self.pivot(leave, enter);
        }
        let m = self.constraints;
        if self.objective.is_positive() {
            let mut multipliers = vec![BigRational::zero(); m];
            for (k, &b) in self.basis.iter().enumerate() {
                if b < m {
                    multipliers[b] = self.rhs[k].clone();
                }
            }
            FeasibilityResult::Infeasible { multipliers }
        } else {
            let dual = |col: usize| -&self.reduced[m + col];
            let point = self
                .var_cols
                .iter()
                .map(|&(pos, neg)| match neg {
                    Some(neg) => dual(pos) - dual(neg),
                    None => dual(pos),
                })
                .collect();
            FeasibilityResult::Feasible { point }
        }
    }

    /// Minimum ratio row; ties go to the smallest basic column (Bland).
    fn ratio_test(&self, enter: usize) -> Option<usize> {
        let mut best: Option<(usize, BigRational)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            let a = &row[enter];
            if !a.is_positive() {
                continue;
            }
            let ratio = &self.rhs[i] / a;
            let better = match &best {
                None => true,
                Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    fn pivot(&mut self, r: usize, enter: usize) {
        let inv = self.rows[r][enter].recip();
        if !inv.is_one() {
            for a in self.rows[r].iter_mut().filter(|a| !a.is_zero()) {
                *a *= &inv;
            }
            self.rhs[r] *= &inv;
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let support: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        let pivot_rhs = self.rhs[r].clone();

        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let factor = self.rows[i][enter].clone();
            if factor.is_zero() {
                continue;
            }
            let row = &mut self.rows[i];
            for &j in &support {
                row[j] -= &factor * &pivot_row[j];
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        let factor = self.reduced[enter].clone();
        if !factor.is_zero() {
            for &j in &support {
                self.reduced[j] -= &factor * &pivot_row[j];
            }
            self.objective += &factor * &pivot_rhs;
        }
        self.rows[r] = pivot_row;
        self.basis[r] = enter;
    }
}

impl fmt::Display for LinearProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.constraints {
            let terms: Vec<String> = c
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(j, a)| format!("{a}*x{j}"))
                .collect();
            let op = match c.relation {
                Relation::Ge => ">=",
                Relation::Le => "<=",
            };
            let lhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            writeln!(f, "{lhs} {op} {}", c.rhs)?;
        }
        Ok(())
    }
}
