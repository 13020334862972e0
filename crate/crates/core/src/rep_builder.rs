//! Braid generators for `2n` Ising anyons.
//!
//! Anyons `2j-1, 2j` form pair `j`; each pair carries one tensor factor
//! `C²` whose basis states are the fusion channels `+` (`σ₊σ₊`, bit 0) and
//! `-` (`σ₊σ₋`, bit 1). The first pair is the most significant factor.
//!
//! Odd generators `k = 2j-1` act on factor `j` by `diag(1, i)`; even
//! generators `k = 2j` act on factors `j, j+1` by
//! `(1/√2)·(I - i·X⊗X)`. Restricting to even total parity and re-indexing
//! by the qubit encoding gives the `2^{n-1}`-dimensional computational
//! representation.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact_arith::{CMatrix, CycloNumber};

/// Global phase convention of the even generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Convention {
    /// Even generators carry an extra `ζ = e^{iπ/4}`, which reproduces the
    /// exchange matrices obtained from the Pfaffian wave functions.
    #[default]
    Wavefunction,
    /// The spinor `R` matrices exactly as given by the quantum group.
    Quantumgroup,
}

impl Convention {
    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Wavefunction => "wavefunction",
            Convention::Quantumgroup => "quantumgroup",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "wavefunction" | "wf" => Ok(Convention::Wavefunction),
            "quantumgroup" | "qg" => Ok(Convention::Quantumgroup),
            other => Err(Error::InvalidArgument(format!(
                "unknown convention `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RepSpec {
    anyons: usize,
    pub convention: Convention,
    pub projected: bool,
}

impl RepSpec {
    pub fn new(anyons: usize, convention: Convention, projected: bool) -> Result<Self> {
        if anyons < 4 || anyons % 2 != 0 {
            return Err(Error::InvalidAnyonCount(anyons));
        }
        Ok(Self {
            anyons,
            convention,
            projected,
        })
    }

    /// Projected wavefunction-convention spec, the computational default.
    pub fn computational(anyons: usize) -> Result<Self> {
        Self::new(anyons, Convention::Wavefunction, true)
    }

    pub fn anyons(&self) -> usize {
        self.anyons
    }

    pub fn n_pairs(&self) -> usize {
        self.anyons / 2
    }

    pub fn full_dim(&self) -> usize {
        1 << self.n_pairs()
    }

    pub fn projected_dim(&self) -> usize {
        self.full_dim() / 2
    }

    /// Dimension of the matrices this spec produces.
    pub fn dim(&self) -> usize {
        if self.projected {
            self.projected_dim()
        } else {
            self.full_dim()
        }
    }

    pub fn generator_count(&self) -> usize {
        self.anyons - 1
    }

    pub fn with_projected(self, projected: bool) -> Self {
        Self { projected, ..self }
    }

    pub fn with_convention(self, convention: Convention) -> Self {
        Self { convention, ..self }
    }

    fn check_index(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.generator_count() {
            return Err(Error::GeneratorOutOfRange {
                index: k as i64,
                max: self.generator_count(),
            });
        }
        Ok(())
    }
}

/// Map from computational basis states to pair-channel bit strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QubitEncoding {
    n_pairs: usize,
    images: Vec<usize>,
}

impl QubitEncoding {
    pub fn n_pairs(&self) -> usize {
        self.n_pairs
    }

    pub fn n_qubits(&self) -> usize {
        self.n_pairs - 1
    }

    /// Channel index (bit string read with pair 1 most significant) of
    /// computational state `q`, for `q` in `0..2^{n-1}`.
    pub fn channel_of(&self, q: usize) -> usize {
        self.images[q]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn channel_bits(&self, q: usize) -> String {
        format!("{:0width$b}", self.images[q], width = self.n_pairs)
    }

    pub fn qubit_bits(&self, q: usize) -> String {
        format!("{:0width$b}", q, width = self.n_qubits())
    }
}

fn phase_gate() -> CMatrix {
    CMatrix::diag(vec![CycloNumber::one(), CycloNumber::i()])
}

/// The 4×4 spinor `R` matrix `(1/√2)·[[1,0,0,-i],[0,1,-i,0],[0,-i,1,0],[-i,0,0,1]]`.
pub fn even_r_matrix() -> CMatrix {
    let (o, m) = (Some(0), Some(6));
    CMatrix::from_zeta_powers(&[
        &[o, None, None, m],
        &[None, o, m, None],
        &[None, m, o, None],
        &[m, None, None, o],
    ])
    .expect("square")
    .scale(&CycloNumber::inv_sqrt2())
}

/// Unprojected generator `k` (dimension `2ⁿ`), whatever `spec.projected` says.
pub fn build_generator(spec: &RepSpec, k: usize) -> Result<CMatrix> {
    spec.check_index(k)?;
    let n = spec.n_pairs();
    let (block, first_factor, width) = if k % 2 == 1 {
        (phase_gate(), (k + 1) / 2, 1)
    } else {
        let r = match spec.convention {
            Convention::Wavefunction => even_r_matrix().scale(&CycloNumber::zeta()),
            Convention::Quantumgroup => even_r_matrix(),
        };
        (r, k / 2, 2)
    };
    let left = CMatrix::identity(1 << (first_factor - 1));
    let right = CMatrix::identity(1 << (n + 1 - first_factor - width));
    Ok(left.tensor(&block).tensor(&right))
}

/// Diagonal projector onto even-weight channel strings.
pub fn parity_projector(n_pairs: usize) -> CMatrix {
    CMatrix::diag(
        (0..1usize << n_pairs)
            .map(|s| {
                if s.count_ones() % 2 == 0 {
                    CycloNumber::one()
                } else {
                    CycloNumber::zero()
                }
            })
            .collect(),
    )
}

/// `e₁ = q₁`, `e_j = q_{j-1} ⊕ q_j`, `e_n = q_{n-1}`.
pub fn qubit_basis_map(n_pairs: usize) -> QubitEncoding {
    assert!(n_pairs >= 2, "need at least two pairs for one qubit");
    let nq = n_pairs - 1;
    let images = (0..1usize << nq)
        .map(|q| {
            let bit = |j: usize| (q >> (nq - 1 - j)) & 1;
            let mut e = 0usize;
            for j in 0..n_pairs {
                let v = match j {
                    0 => bit(0),
                    j if j == n_pairs - 1 => bit(nq - 1),
                    j => bit(j - 1) ^ bit(j),
                };
                e = (e << 1) | v;
            }
            e
        })
        .collect();
    QubitEncoding { n_pairs, images }
}

/// `P·M·P` with the null rows and columns deleted, surviving states kept in
/// lexicographic order.
pub fn compress_by_projector(m: &CMatrix, projector: &CMatrix) -> Result<CMatrix> {
    if m.dim() != projector.dim() {
        return Err(Error::DimensionMismatch(format!(
            "projector is {0}x{0}, matrix is {1}x{1}",
            projector.dim(),
            m.dim()
        )));
    }
    let keep: Vec<usize> = (0..m.dim())
        .filter(|&i| projector.get(i, i).is_one())
        .collect();
    let p = projector.try_mul(m)?.try_mul(projector)?;
    Ok(p.submatrix(&keep))
}

/// Generator `k` restricted to even parity and indexed by computational states.
pub fn project_generator(spec: &RepSpec, k: usize) -> Result<CMatrix> {
    let full = build_generator(spec, k)?;
    let enc = qubit_basis_map(spec.n_pairs());
    Ok(full.submatrix(enc.images()))
}

/// Generator `k`, projected or not according to `spec.projected`.
pub fn generator(spec: &RepSpec, k: usize) -> Result<CMatrix> {
    if spec.projected {
        project_generator(spec, k)
    } else {
        build_generator(spec, k)
    }
}

pub fn generators(spec: &RepSpec) -> Vec<CMatrix> {
    (1..=spec.generator_count())
        .map(|k| generator(spec, k).expect("index in range"))
        .collect()
}

/// Explicit matrices quoted for 4 and 6 anyons, plus the standard gates.
pub fn reference_matrices() -> BTreeMap<&'static str, CMatrix> {
    let z = CycloNumber::zeta_pow;
    let r4_12 = CMatrix::diag(vec![z(0), z(2)]);
    let r4_23 = CMatrix::from_zeta_powers(&[&[Some(0), Some(6)], &[Some(6), Some(0)]])
        .expect("square")
        .scale(&(CycloNumber::zeta() * CycloNumber::inv_sqrt2()));
    let six_23 = {
        let (o, m) = (Some(0), Some(6));
        CMatrix::from_zeta_powers(&[
            &[o, None, m, None],
            &[None, o, None, m],
            &[m, None, o, None],
            &[None, m, None, o],
        ])
    };
    let six_45 = {
        let (o, m) = (Some(0), Some(6));
        CMatrix::from_zeta_powers(&[
            &[o, m, None, None],
            &[m, o, None, None],
            &[None, None, o, m],
            &[None, None, m, o],
        ])
    };
    let pref = CycloNumber::zeta() * CycloNumber::inv_sqrt2();
    let h = CMatrix::from_zeta_powers(&[&[Some(0), Some(0)], &[Some(0), Some(4)]])
        .expect("square")
        .scale(&CycloNumber::inv_sqrt2());
    let cnot = CMatrix::from_zeta_powers(&[
        &[Some(0), None, None, None],
        &[None, Some(0), None, None],
        &[None, None, None, Some(0)],
        &[None, None, Some(0), None],
    ])
    .expect("square");

    let mut out = BTreeMap::new();
    out.insert("R4_12", r4_12.clone());
    out.insert("R4_23", r4_23);
    out.insert("R4_34", r4_12);
    out.insert("R6_12", CMatrix::diag(vec![z(0), z(0), z(2), z(2)]));
    out.insert("R6_23", six_23.expect("square").scale(&pref));
    out.insert("R6_34", CMatrix::diag(vec![z(0), z(2), z(2), z(0)]));
    out.insert("R6_45", six_45.expect("square").scale(&pref));
    out.insert("R6_56", CMatrix::diag(vec![z(0), z(2), z(0), z(2)]));
    out.insert("H", h);
    out.insert("T", CMatrix::diag(vec![z(0), z(1)]));
    out.insert("CNOT", cnot);
    out
}

/// Decides whether a 4×4 matrix is `A⊗B` for 2×2 `A`, `B`.
///
/// The realigned matrix `R[(i₁j₁),(i₂j₂)] = M[(i₁i₂),(j₁j₂)]` has rank at
/// most one exactly for product matrices.
pub fn is_tensor_factorizable(m: &CMatrix) -> Result<bool> {
    if m.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "factorizability needs a 4x4 matrix, got {0}x{0}",
            m.dim()
        )));
    }
    let mut realigned = CMatrix::zeros(4);
    for i1 in 0..2 {
        for i2 in 0..2 {
            for j1 in 0..2 {
                for j2 in 0..2 {
                    realigned.set(
                        i1 * 2 + j1,
                        i2 * 2 + j2,
                        m.get(i1 * 2 + i2, j1 * 2 + j2).clone(),
                    );
                }
            }
        }
    }
    Ok(realigned.rank() <= 1)
}
