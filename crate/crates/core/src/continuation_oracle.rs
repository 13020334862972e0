//! Numerical analytic continuation of the 4-quasihole Pfaffian wave functions.
//!
//! The two qubit functions are
//!
//! ```text
//! Ψ^{0,1} = (η₁₃η₂₄)^{1/4} / √(1 ± √x) · (Ψ_(13)(24) ± √x · Ψ_(14)(23)),
//! x = η₁₄η₂₃ / (η₁₃η₂₄),
//! ```
//!
//! optionally times the Abelian factor `∏_{a<b} η_ab^γ`. The Pfaffian parts
//! are single valued; only the scalar roots are multivalued, so a braid is
//! followed by moving two quasiholes along a half circle and tracking each
//! root by nearest continuation. At the endpoint the transported functions
//! are re-expressed in the initial basis by a least-squares fit over several
//! electron configurations, giving the 2×2 braid matrix.
//!
//! This path is floating point on purpose: it is an independent check on
//! the exact generators in [`crate::rep_builder`].

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact_arith::CMatrix;

pub type Matrix2 = [[Complex64; 2]; 2];

pub const MIN_SEPARATION: f64 = 1e-9;
pub const DEFAULT_STEPS: usize = 4096;
pub const DEFAULT_ABELIAN_EXPONENT: f64 = 0.125;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Quasihole positions `η₁…η₄` and electron positions `z₁…z_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct QhConfig {
    eta: [Complex64; 4],
    z: Vec<Complex64>,
}

impl QhConfig {
    pub fn new(eta: [Complex64; 4], z: Vec<Complex64>) -> Result<Self> {
        if z.is_empty() || z.len() % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "electron count must be even and positive, got {}",
                z.len()
            )));
        }
        let labelled: Vec<(String, Complex64)> = eta
            .iter()
            .enumerate()
            .map(|(i, &p)| (format!("eta{}", i + 1), p))
            .chain(
                z.iter()
                    .enumerate()
                    .map(|(i, &p)| (format!("z{}", i + 1), p)),
            )
            .collect();
        for (i, (ni, pi)) in labelled.iter().enumerate() {
            if !pi.re.is_finite() || !pi.im.is_finite() {
                return Err(Error::InvalidArgument(format!("{ni} is not finite")));
            }
            for (nj, pj) in &labelled[i + 1..] {
                if (pi - pj).norm() < MIN_SEPARATION {
                    return Err(Error::CoincidentPoints(ni.clone(), nj.clone()));
                }
            }
        }
        Ok(Self { eta, z })
    }

    /// `η = (0, 1, 2+i, 4)`, `z = (0.3-0.7i, 2.5+1.8i)`.
    pub fn default_config() -> Self {
        Self::new(
            [c(0.0, 0.0), c(1.0, 0.0), c(2.0, 1.0), c(4.0, 0.0)],
            vec![c(0.3, -0.7), c(2.5, 1.8)],
        )
        .expect("default configuration is valid")
    }

    pub fn eta(&self) -> &[Complex64; 4] {
        &self.eta
    }

    pub fn z(&self) -> &[Complex64] {
        &self.z
    }

    pub fn crossratio(&self) -> Complex64 {
        crossratio(&self.eta)
    }

    /// The configured electrons plus deterministic displacements of them,
    /// used to separate the two basis functions in the final fit.
    fn electron_samples(&self) -> Vec<Vec<Complex64>> {
        let mut out = vec![self.z.clone()];
        let mut s = 1;
        while out.len() < 4 {
            let shift = Complex64::from_polar(0.37 * s as f64, 1.3 * s as f64);
            let cand: Vec<Complex64> = self
                .z
                .iter()
                .enumerate()
                .map(|(i, &p)| {
                    p + shift * Complex64::from_polar(1.0 + 0.2 * i as f64, 0.9 * i as f64)
                })
                .collect();
            let distinct = cand
                .iter()
                .enumerate()
                .all(|(i, p)| cand[i + 1..].iter().all(|q| (p - q).norm() > 1e-3));
            if distinct {
                out.push(cand);
            }
            s += 1;
        }
        out
    }
}

fn diff(eta: &[Complex64; 4], a: usize, b: usize) -> Complex64 {
    eta[a - 1] - eta[b - 1]
}

pub fn crossratio(eta: &[Complex64; 4]) -> Complex64 {
    diff(eta, 1, 4) * diff(eta, 2, 3) / (diff(eta, 1, 3) * diff(eta, 2, 4))
}

/// A pairing `(ab)(cd)` of the four quasiholes, labels 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pairing {
    first: (usize, usize),
    second: (usize, usize),
}

impl Pairing {
    pub const P13_24: Pairing = Pairing {
        first: (1, 3),
        second: (2, 4),
    };
    pub const P14_23: Pairing = Pairing {
        first: (1, 4),
        second: (2, 3),
    };
    pub const P12_34: Pairing = Pairing {
        first: (1, 2),
        second: (3, 4),
    };

    pub fn new(first: (usize, usize), second: (usize, usize)) -> Result<Self> {
        let mut all = [first.0, first.1, second.0, second.1];
        all.sort_unstable();
        if first.0 >= first.1 || second.0 >= second.1 || all != [1, 2, 3, 4] {
            return Err(Error::InvalidArgument(format!(
                "({}{})({}{}) is not an ordered pairing of 1..4",
                first.0, first.1, second.0, second.1
            )));
        }
        Ok(Self { first, second })
    }
}

/// Pfaffian by expansion along the first row.
pub fn pfaffian(m: &[Vec<Complex64>]) -> Complex64 {
    let n = m.len();
    if n == 0 {
        return c(1.0, 0.0);
    }
    if n % 2 == 1 {
        return c(0.0, 0.0);
    }
    let mut total = c(0.0, 0.0);
    for j in 1..n {
        if m[0][j] == c(0.0, 0.0) {
            continue;
        }
        let keep: Vec<usize> = (1..n).filter(|&k| k != j).collect();
        let minor: Vec<Vec<Complex64>> = keep
            .iter()
            .map(|&r| keep.iter().map(|&col| m[r][col]).collect())
            .collect();
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        total += m[0][j] * pfaffian(&minor) * sign;
    }
    total
}

fn pairing_value(eta: &[Complex64; 4], z: &[Complex64], p: Pairing) -> Complex64 {
    let (a, b) = p.first;
    let (cc, d) = p.second;
    let (ea, eb, ec, ed) = (eta[a - 1], eta[b - 1], eta[cc - 1], eta[d - 1]);
    let n = z.len();
    let mut kernel = vec![vec![c(0.0, 0.0); n]; n];
    let mut vandermonde_sq = c(1.0, 0.0);
    for i in 0..n {
        for j in i + 1..n {
            let (zi, zj) = (z[i], z[j]);
            let num = (zi - ea) * (zi - eb) * (zj - ec) * (zj - ed)
                + (zj - ea) * (zj - eb) * (zi - ec) * (zi - ed);
            let k = num / (zi - zj);
            kernel[i][j] = k;
            kernel[j][i] = -k;
            vandermonde_sq *= (zi - zj) * (zi - zj);
        }
    }
    pfaffian(&kernel) * vandermonde_sq
}

/// `Ψ_(ab)(cd) = Pf(K) · ∏_{i<j}(z_i − z_j)²` at the configuration.
pub fn eval_pfaffian_basis(config: &QhConfig, pairing: Pairing) -> Complex64 {
    pairing_value(&config.eta, &config.z, pairing)
}

/// Continuously tracked values of the multivalued scalars.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchState {
    /// `(η₁₃η₂₄)^{1/4}`.
    pub quarter_root: Complex64,
    /// `√x`.
    pub sqrt_x: Complex64,
    /// `√(1 + √x)`.
    pub sqrt_plus: Complex64,
    /// `√(1 − √x)`.
    pub sqrt_minus: Complex64,
    /// Continuous logarithms of `η_ab`, `a < b`, in lexicographic pair order.
    pub pair_logs: [Complex64; 6],
    /// Exponent `γ` of the Abelian factor; `None` leaves it out.
    pub abelian_exponent: Option<f64>,
}

const PAIRS: [(usize, usize); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

fn root_candidates(base: Complex64, k: u32) -> Vec<Complex64> {
    let principal = base.powf(1.0 / k as f64);
    (0..k)
        .map(|j| principal * Complex64::from_polar(1.0, 2.0 * PI * j as f64 / k as f64))
        .collect()
}

fn nearest_root(
    base: Complex64,
    k: u32,
    previous: Complex64,
    fraction: f64,
    quantity: &'static str,
    step: usize,
) -> Result<Complex64> {
    let cands = root_candidates(base, k);
    let mut dist: Vec<(f64, Complex64)> =
        cands.iter().map(|&r| ((r - previous).norm(), r)).collect();
    dist.sort_by(|p, q| p.0.total_cmp(&q.0));
    let spacing = (cands[0] - cands[1]).norm();
    if dist[1].0 - dist[0].0 < fraction * spacing {
        return Err(Error::BranchAmbiguity { quantity, step });
    }
    Ok(dist[0].1)
}

impl BranchState {
    /// Principal branches at the configuration.
    pub fn initial(eta: &[Complex64; 4], abelian_exponent: Option<f64>) -> Self {
        let w = diff(eta, 1, 3) * diff(eta, 2, 4);
        let sqrt_x = crossratio(eta).sqrt();
        Self {
            quarter_root: w.powf(0.25),
            sqrt_x,
            sqrt_plus: (1.0 + sqrt_x).sqrt(),
            sqrt_minus: (1.0 - sqrt_x).sqrt(),
            pair_logs: PAIRS.map(|(a, b)| diff(eta, a, b).ln()),
            abelian_exponent,
        }
    }

    /// The branch with `√x` replaced by `−√x`; it exchanges `Ψ⁰` and `Ψ¹`.
    pub fn conjugate_root(&self) -> Self {
        Self {
            sqrt_x: -self.sqrt_x,
            sqrt_plus: self.sqrt_minus,
            sqrt_minus: self.sqrt_plus,
            ..self.clone()
        }
    }

    pub fn abelian_factor(&self) -> Complex64 {
        match self.abelian_exponent {
            Some(g) => (self.pair_logs.iter().sum::<Complex64>() * g).exp(),
            None => c(1.0, 0.0),
        }
    }

    fn advance(&mut self, eta: &[Complex64; 4], fraction: f64, step: usize) -> Result<()> {
        let w = diff(eta, 1, 3) * diff(eta, 2, 4);
        self.quarter_root = nearest_root(
            w,
            4,
            self.quarter_root,
            fraction,
            "(eta13 eta24)^(1/4)",
            step,
        )?;
        self.sqrt_x = nearest_root(crossratio(eta), 2, self.sqrt_x, fraction, "sqrt(x)", step)?;
        self.sqrt_plus = nearest_root(
            1.0 + self.sqrt_x,
            2,
            self.sqrt_plus,
            fraction,
            "sqrt(1+sqrt(x))",
            step,
        )?;
        self.sqrt_minus = nearest_root(
            1.0 - self.sqrt_x,
            2,
            self.sqrt_minus,
            fraction,
            "sqrt(1-sqrt(x))",
            step,
        )?;
        for (log, (a, b)) in self.pair_logs.iter_mut().zip(PAIRS) {
            let fresh = diff(eta, a, b).ln();
            let turns = (fresh.im - log.im) / (2.0 * PI);
            let wrapped = turns.round();
            if (turns - wrapped).abs() > 0.5 * (1.0 - fraction) {
                return Err(Error::BranchAmbiguity {
                    quantity: "abelian factor",
                    step,
                });
            }
            *log = c(fresh.re, fresh.im - 2.0 * PI * wrapped);
        }
        Ok(())
    }

    /// Largest relative deviation between a tracked root's power and its base.
    pub fn consistency(&self, eta: &[Complex64; 4]) -> f64 {
        let rel = |v: Complex64, base: Complex64| (v - base).norm() / base.norm().max(1e-300);
        let w = diff(eta, 1, 3) * diff(eta, 2, 4);
        let mut worst = rel(self.quarter_root.powi(4), w)
            .max(rel(self.sqrt_x * self.sqrt_x, crossratio(eta)))
            .max(rel(self.sqrt_plus * self.sqrt_plus, 1.0 + self.sqrt_x))
            .max(rel(self.sqrt_minus * self.sqrt_minus, 1.0 - self.sqrt_x));
        for (log, (a, b)) in self.pair_logs.iter().zip(PAIRS) {
            worst = worst.max(rel(log.exp(), diff(eta, a, b)));
        }
        worst
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleOptions {
    pub steps: usize,
    pub abelian_exponent: Option<f64>,
    /// Fraction of the inter-root distance below which two candidate
    /// branches count as indistinguishable.
    pub ambiguity_fraction: f64,
    pub consistency_tolerance: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            steps: DEFAULT_STEPS,
            abelian_exponent: Some(DEFAULT_ABELIAN_EXPONENT),
            ambiguity_fraction: 0.1,
            consistency_tolerance: 1e-8,
        }
    }
}

fn qubit_values(eta: &[Complex64; 4], z: &[Complex64], branch: &BranchState) -> [Complex64; 2] {
    let a = pairing_value(eta, z, Pairing::P13_24);
    let b = pairing_value(eta, z, Pairing::P14_23);
    let pre = branch.quarter_root * branch.abelian_factor();
    [
        pre / branch.sqrt_plus * (a + branch.sqrt_x * b),
        pre / branch.sqrt_minus * (a - branch.sqrt_x * b),
    ]
}

/// `(Ψ⁰, Ψ¹)` using the branch values carried by `branch`.
pub fn eval_qubit_functions(config: &QhConfig, branch: &BranchState) -> Result<[Complex64; 2]> {
    let deviation = branch.consistency(&config.eta);
    if !(deviation <= 1e-8) {
        return Err(Error::BranchInconsistency {
            quantity: "branch state",
            deviation,
        });
    }
    Ok(qubit_values(&config.eta, &config.z, branch))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Continuation {
    /// `(Ψ⁰, Ψ¹)_final = matrix · (Ψ⁰, Ψ¹)_initial`.
    pub matrix: Matrix2,
    /// Relative residual of the final least-squares re-expression.
    pub fit_residual: f64,
    /// Worst relative root-consistency deviation seen along the path.
    pub branch_deviation: f64,
}

impl Continuation {
    /// Error estimate with a floor at accumulated round-off.
    pub fn error_estimate(&self) -> f64 {
        self.fit_residual.max(self.branch_deviation).max(1e-12)
    }
}

fn solve_least_squares(basis: &[[Complex64; 2]], values: &[Complex64]) -> [Complex64; 2] {
    // Normal equations of min Σ_s |b0(s) m0 + b1(s) m1 − v(s)|².
    let mut g = [[c(0.0, 0.0); 2]; 2];
    let mut r = [c(0.0, 0.0); 2];
    for (b, &v) in basis.iter().zip(values) {
        for p in 0..2 {
            for q in 0..2 {
                g[p][q] += b[p].conj() * b[q];
            }
            r[p] += b[p].conj() * v;
        }
    }
    let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    [
        (g[1][1] * r[0] - g[0][1] * r[1]) / det,
        (g[0][0] * r[1] - g[1][0] * r[0]) / det,
    ]
}

/// Moves quasiholes `a` and `b` (1-based) around their midpoint along
/// `η_a(t) = m + e^{iπt}(η_a − η_b)/2`, `η_b(t) = m − e^{iπt}(η_a − η_b)/2`
/// for `t ∈ [0, 2·turns]`. `turns = 0.5` is one counterclockwise exchange,
/// `turns = 1` a full monodromy; negative values run clockwise. The other
/// two quasiholes stay put.
pub fn continue_exchange(
    config: &QhConfig,
    a: usize,
    b: usize,
    turns: f64,
    opts: &OracleOptions,
) -> Result<Continuation> {
    if a == b || !(1..=4).contains(&a) || !(1..=4).contains(&b) {
        return Err(Error::InvalidArgument(format!(
            "cannot exchange quasiholes {a} and {b}"
        )));
    }
    let half_turns = 2.0 * turns;
    if turns == 0.0 || (half_turns - half_turns.round()).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "turns must be a nonzero multiple of 1/2, got {turns}"
        )));
    }
    if opts.steps < 8 {
        return Err(Error::InvalidArgument(
            "at least 8 steps are required".into(),
        ));
    }
    let eta0 = config.eta;
    let mid = (eta0[a - 1] + eta0[b - 1]) * 0.5;
    let half = (eta0[a - 1] - eta0[b - 1]) * 0.5;
    let position = |t: f64| -> [Complex64; 4] {
        let rot = Complex64::from_polar(1.0, PI * t);
        let mut e = eta0;
        e[a - 1] = mid + rot * half;
        e[b - 1] = mid - rot * half;
        e
    };

    let samples = config.electron_samples();
    let mut branch = BranchState::initial(&eta0, opts.abelian_exponent);
    let initial: Vec<[Complex64; 2]> = samples
        .iter()
        .map(|z| qubit_values(&eta0, z, &branch))
        .collect();

    let mut worst = branch.consistency(&eta0);
    let mut eta = eta0;
    for step in 1..=opts.steps {
        let t = half_turns * step as f64 / opts.steps as f64;
        eta = position(t);
        branch.advance(&eta, opts.ambiguity_fraction, step)?;
        let dev = branch.consistency(&eta);
        if dev > opts.consistency_tolerance {
            return Err(Error::BranchInconsistency {
                quantity: "tracked roots",
                deviation: dev,
            });
        }
        worst = worst.max(dev);
    }

    let finals: Vec<[Complex64; 2]> = samples
        .iter()
        .map(|z| qubit_values(&eta, z, &branch))
        .collect();
    let mut matrix = [[c(0.0, 0.0); 2]; 2];
    let mut residual: f64 = 0.0;
    for row in 0..2 {
        let values: Vec<Complex64> = finals.iter().map(|f| f[row]).collect();
        let m = solve_least_squares(&initial, &values);
        matrix[row] = m;
        let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        for (b, v) in initial.iter().zip(&values) {
            let fit = b[0] * m[0] + b[1] * m[1];
            residual = residual.max((fit - v).norm() / scale);
        }
    }
    Ok(Continuation {
        matrix,
        fit_residual: residual,
        branch_deviation: worst,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactComparison {
    pub max_entry_error: f64,
    pub phase: Complex64,
}

/// Best global phase from the largest-magnitude target entry, and the worst
/// entry deviation of `m` from `phase · target`.
pub fn compare_to_exact(m: &Matrix2, target: &CMatrix) -> Result<ExactComparison> {
    if target.dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "oracle matrices are 2x2, target is {0}x{0}",
            target.dim()
        )));
    }
    let t = target.to_complex();
    let (mut p, mut q, mut best) = (0, 0, -1.0);
    for (i, row) in t.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if v.norm() > best {
                (p, q, best) = (i, j, v.norm());
            }
        }
    }
    let ratio = m[p][q] / t[p][q];
    let phase = if ratio.norm() > 0.0 {
        ratio / ratio.norm()
    } else {
        c(1.0, 0.0)
    };
    let mut err: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            err = err.max((m[i][j] - phase * t[i][j]).norm());
        }
    }
    Ok(ExactComparison {
        max_entry_error: err,
        phase,
    })
}

pub fn mat2_mul(x: &Matrix2, y: &Matrix2) -> Matrix2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

pub fn mat2_inverse(x: &Matrix2) -> Matrix2 {
    let det = x[0][0] * x[1][1] - x[0][1] * x[1][0];
    [
        [x[1][1] / det, -x[0][1] / det],
        [-x[1][0] / det, x[0][0] / det],
    ]
}

pub fn mat2_max_diff(x: &Matrix2, y: &Matrix2) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            d = d.max((x[i][j] - y[i][j]).norm());
        }
    }
    d
}

/// Largest entry deviation after removing the best global phase of `y`
/// relative to `x`.
pub fn mat2_diff_up_to_phase(x: &Matrix2, y: &Matrix2) -> f64 {
    let (mut p, mut q, mut best) = (0, 0, -1.0);
    for i in 0..2 {
        for j in 0..2 {
            if y[i][j].norm() > best {
                (p, q, best) = (i, j, y[i][j].norm());
            }
        }
    }
    let ratio = x[p][q] / y[p][q];
    let phase = ratio / ratio.norm();
    let scaled = y.map(|row| row.map(|v| v * phase));
    mat2_max_diff(x, &scaled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep_builder::reference_matrices;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn config_validation() {
        let eta = [c(0.0, 0.0), c(1.0, 0.0), c(2.0, 1.0), c(4.0, 0.0)];
        assert!(QhConfig::new(eta, vec![c(0.3, 0.1)]).is_err());
        assert!(matches!(
            QhConfig::new(eta, vec![c(1.0, 0.0), c(5.0, 5.0)]),
            Err(Error::CoincidentPoints(..))
        ));
        let d = QhConfig::default_config();
        assert_eq!(d.z().len(), 2);
    }

    #[test]
    fn pairing_validation() {
        assert!(Pairing::new((1, 3), (2, 4)).is_ok());
        assert!(Pairing::new((3, 1), (2, 4)).is_err());
        assert!(Pairing::new((1, 2), (2, 4)).is_err());
    }

    #[test]
    fn two_electron_pfaffian_is_the_antisymmetric_kernel() {
        let cfg = QhConfig::default_config();
        let (z1, z2) = (cfg.z()[0], cfg.z()[1]);
        let e = cfg.eta();
        let k = ((z1 - e[0]) * (z1 - e[2]) * (z2 - e[1]) * (z2 - e[3])
            + (z2 - e[0]) * (z2 - e[2]) * (z1 - e[1]) * (z1 - e[3]))
            / (z1 - z2);
        let expected = k * (z1 - z2) * (z1 - z2);
        assert!(close(
            eval_pfaffian_basis(&cfg, Pairing::P13_24),
            expected,
            1e-14
        ));
        let swapped = QhConfig::new(*e, vec![z2, z1]).unwrap();
        assert!(close(
            eval_pfaffian_basis(&swapped, Pairing::P13_24),
            -eval_pfaffian_basis(&cfg, Pairing::P13_24),
            1e-14
        ));
    }

    fn det(mut m: Vec<Vec<Complex64>>) -> Complex64 {
        let n = m.len();
        let mut d = c(1.0, 0.0);
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm()))
                .unwrap();
            if piv != col {
                m.swap(piv, col);
                d = -d;
            }
            d *= m[col][col];
            for r in col + 1..n {
                let f = m[r][col] / m[col][col];
                for k in col..n {
                    let t = m[col][k];
                    m[r][k] -= f * t;
                }
            }
        }
        d
    }

    #[test]
    fn pfaffian_squares_to_determinant() {
        let vals = [
            c(0.3, 1.1),
            c(-0.7, 0.2),
            c(1.5, -0.4),
            c(0.1, 0.9),
            c(-1.2, -0.6),
            c(0.8, 0.05),
        ];
        let mut m = vec![vec![c(0.0, 0.0); 4]; 4];
        let mut it = vals.iter();
        for i in 0..4 {
            for j in i + 1..4 {
                let v = *it.next().unwrap();
                m[i][j] = v;
                m[j][i] = -v;
            }
        }
        let pf = pfaffian(&m);
        assert!((pf * pf - det(m.clone())).norm() < 1e-10);
        // Pf of the 4x4 is a12 a34 - a13 a24 + a14 a23.
        let direct = m[0][1] * m[2][3] - m[0][2] * m[1][3] + m[0][3] * m[1][2];
        assert!((pf - direct).norm() < 1e-14);
    }

    #[test]
    fn four_electron_kernel_pfaffian() {
        let cfg = QhConfig::new(
            *QhConfig::default_config().eta(),
            vec![c(0.3, -0.7), c(2.5, 1.8), c(-1.1, 0.4), c(1.7, -1.3)],
        )
        .unwrap();
        let v = eval_pfaffian_basis(&cfg, Pairing::P14_23);
        assert!(v.norm().is_finite() && v.norm() > 0.0);
    }

    #[test]
    fn qubit_functions_match_reference_values() {
        // Reference computed independently at 40 significant digits.
        let cfg = QhConfig::default_config();
        let branch = BranchState::initial(cfg.eta(), None);
        let [p0, p1] = eval_qubit_functions(&cfg, &branch).unwrap();
        assert!(close(
            p0,
            c(-49.17779216541622472, 57.43546448317705506),
            1e-12
        ));
        assert!(close(
            p1,
            c(282.7772150251483232, -84.01401334658926082),
            1e-12
        ));
        let a = eval_pfaffian_basis(&cfg, Pairing::P13_24);
        let b = eval_pfaffian_basis(&cfg, Pairing::P14_23);
        assert!(close(
            a,
            c(4.424600000000002129, -3.902519999999999449),
            1e-12
        ));
        assert!(close(
            b,
            c(-36.10439999999999760, 68.04948000000000133),
            1e-12
        ));
    }

    #[test]
    fn other_root_swaps_the_qubit_functions() {
        let cfg = QhConfig::default_config();
        let branch = BranchState::initial(cfg.eta(), Some(0.125));
        let [p0, p1] = eval_qubit_functions(&cfg, &branch).unwrap();
        let [q0, q1] = eval_qubit_functions(&cfg, &branch.conjugate_root()).unwrap();
        assert!(close(q0, p1, 1e-14) && close(q1, p0, 1e-14));
    }

    #[test]
    fn small_crossratio_limit() {
        let eta = [c(0.0, 0.0), c(2.0, 1.0), c(2.0 + 1e-7, 1.0), c(4.0, 0.0)];
        let cfg = QhConfig::new(eta, vec![c(0.3, -0.7), c(2.5, 1.8)]).unwrap();
        assert!(cfg.crossratio().norm() < 1e-6);
        let branch = BranchState::initial(cfg.eta(), None);
        let [p0, p1] = eval_qubit_functions(&cfg, &branch).unwrap();
        let limit = branch.quarter_root * eval_pfaffian_basis(&cfg, Pairing::P13_24);
        assert!(close(p0, limit, 1e-3) && close(p1, limit, 1e-3));
    }

    #[test]
    fn inconsistent_branch_is_rejected() {
        let cfg = QhConfig::default_config();
        let mut branch = BranchState::initial(cfg.eta(), None);
        branch.sqrt_plus *= c(0.0, 1.0);
        assert!(matches!(
            eval_qubit_functions(&cfg, &branch),
            Err(Error::BranchInconsistency { .. })
        ));
    }

    #[test]
    fn exchange_argument_checks() {
        let cfg = QhConfig::default_config();
        let o = OracleOptions::default();
        assert!(continue_exchange(&cfg, 1, 1, 0.5, &o).is_err());
        assert!(continue_exchange(&cfg, 1, 5, 0.5, &o).is_err());
        assert!(continue_exchange(&cfg, 1, 2, 0.3, &o).is_err());
        assert!(continue_exchange(&cfg, 1, 2, 0.0, &o).is_err());
    }

    #[test]
    fn too_few_steps_is_ambiguous() {
        let cfg = QhConfig::default_config();
        // Half a turn per step leaves two equally near branches.
        let o = OracleOptions {
            steps: 8,
            ..Default::default()
        };
        let r = continue_exchange(&cfg, 2, 3, 4.0, &o);
        assert!(
            matches!(
                r,
                Err(Error::BranchAmbiguity { .. }) | Err(Error::BranchInconsistency { .. })
            ),
            "{r:?}"
        );
    }

    #[test]
    fn exchange_of_first_pair() {
        let cfg = QhConfig::default_config();
        let r = continue_exchange(&cfg, 1, 2, 0.5, &OracleOptions::default()).unwrap();
        let cmp = compare_to_exact(&r.matrix, &reference_matrices()["R4_12"]).unwrap();
        assert!(cmp.max_entry_error < 1e-8, "{cmp:?}");
        assert!(r.error_estimate() < 1e-9);
    }

    #[test]
    fn without_abelian_factor_phases_match_exactly() {
        let cfg = QhConfig::default_config();
        let o = OracleOptions {
            abelian_exponent: None,
            ..Default::default()
        };
        let c = reference_matrices();
        for (a, b, name) in [(1, 2, "R4_12"), (2, 3, "R4_23"), (3, 4, "R4_34")] {
            let r = continue_exchange(&cfg, a, b, 0.5, &o).unwrap();
            let cmp = compare_to_exact(&r.matrix, &c[name]).unwrap();
            assert!(cmp.max_entry_error < 1e-8, "{name}: {cmp:?}");
            assert!(
                (cmp.phase - Complex64::new(1.0, 0.0)).norm() < 1e-8,
                "{name}: {cmp:?}"
            );
        }
    }

    #[test]
    fn abelian_factor_adds_an_eighth_turn_phase() {
        let cfg = QhConfig::default_config();
        let r = continue_exchange(&cfg, 1, 2, 0.5, &OracleOptions::default()).unwrap();
        let cmp = compare_to_exact(&r.matrix, &reference_matrices()["R4_12"]).unwrap();
        assert!((cmp.phase - Complex64::from_polar(1.0, PI / 8.0)).norm() < 1e-8);
    }

    #[test]
    fn path_reversal_inverts() {
        let cfg = QhConfig::default_config();
        let o = OracleOptions::default();
        let fwd = continue_exchange(&cfg, 2, 3, 0.5, &o).unwrap();
        let back = continue_exchange(&cfg, 2, 3, -0.5, &o).unwrap();
        assert!(mat2_max_diff(&back.matrix, &mat2_inverse(&fwd.matrix)) < 1e-8);
    }

    #[test]
    fn two_half_turns_equal_one_full_turn() {
        let cfg = QhConfig::default_config();
        let o = OracleOptions::default();
        let half = continue_exchange(&cfg, 2, 3, 0.5, &o).unwrap();
        let full = continue_exchange(&cfg, 2, 3, 1.0, &o).unwrap();
        let sq = mat2_mul(&half.matrix, &half.matrix);
        assert!(mat2_diff_up_to_phase(&sq, &full.matrix) < 1e-8);
    }

    #[test]
    fn moving_spectators_only_changes_a_phase() {
        let base = QhConfig::default_config();
        let moved = QhConfig::new(
            [c(-0.8, -0.6), c(1.0, 0.0), c(2.0, 1.0), c(5.5, 1.4)],
            base.z().to_vec(),
        )
        .unwrap();
        let o = OracleOptions::default();
        let m1 = continue_exchange(&base, 2, 3, 0.5, &o).unwrap();
        let m2 = continue_exchange(&moved, 2, 3, 0.5, &o).unwrap();
        assert!(mat2_diff_up_to_phase(&m1.matrix, &m2.matrix) < 1e-6);
    }

    #[test]
    fn continued_matrices_satisfy_artin() {
        let cfg = QhConfig::default_config();
        let o = OracleOptions::default();
        let m12 = continue_exchange(&cfg, 1, 2, 0.5, &o).unwrap().matrix;
        let m23 = continue_exchange(&cfg, 2, 3, 0.5, &o).unwrap().matrix;
        let lhs = mat2_mul(&mat2_mul(&m12, &m23), &m12);
        let rhs = mat2_mul(&mat2_mul(&m23, &m12), &m23);
        assert!(mat2_max_diff(&lhs, &rhs) < 1e-6);
    }

    #[test]
    fn comparison_examples() {
        let i = c(0.0, 1.0);
        let zero = c(0.0, 0.0);
        let one = c(1.0, 0.0);
        let s = [[one, zero], [zero, i]];
        let cmp = compare_to_exact(&s, &reference_matrices()["R4_12"]).unwrap();
        assert!(cmp.max_entry_error < 1e-15 && (cmp.phase - one).norm() < 1e-15);
        let h = reference_matrices()["H"].to_complex();
        let zeta = Complex64::from_polar(1.0, PI / 4.0);
        let zh = [
            [h[0][0] * zeta, h[0][1] * zeta],
            [h[1][0] * zeta, h[1][1] * zeta],
        ];
        let cmp = compare_to_exact(&zh, &reference_matrices()["H"]).unwrap();
        assert!(cmp.max_entry_error < 1e-15 && (cmp.phase - zeta).norm() < 1e-15);
        assert!(compare_to_exact(&s, &CMatrix::identity(4)).is_err());
    }
}
