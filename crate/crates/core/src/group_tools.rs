//! Finite matrix groups generated by braid generators.
//!
//! Elements are deduplicated by exact structural equality of their canonical
//! entries, never by floating-point hashing.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact_arith::{CMatrix, CycloNumber};
use crate::rep_builder::{self, RepSpec};

pub const DEFAULT_ELEMENT_LIMIT: usize = 10_000_000;

/// An enumerated finite group, elements in discovery order.
pub struct GroupImage {
    dim: usize,
    generators: Vec<CMatrix>,
    elements: Vec<CMatrix>,
    index: HashMap<CMatrix, usize>,
    gauged: OnceLock<HashSet<CMatrix>>,
}

impl GroupImage {
    fn new(dim: usize, generators: Vec<CMatrix>) -> Self {
        let mut g = Self {
            dim,
            generators,
            elements: Vec::new(),
            index: HashMap::new(),
            gauged: OnceLock::new(),
        };
        g.insert(CMatrix::identity(dim));
        g
    }

    fn insert(&mut self, m: CMatrix) -> bool {
        if self.index.contains_key(&m) {
            return false;
        }
        self.index.insert(m.clone(), self.elements.len());
        self.elements.push(m);
        true
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    pub fn contains_exact(&self, m: &CMatrix) -> bool {
        self.index.contains_key(m)
    }

    fn gauged_keys(&self) -> &HashSet<CMatrix> {
        self.gauged.get_or_init(|| {
            self.elements
                .iter()
                .filter_map(CMatrix::phase_gauged)
                .collect()
        })
    }

    /// Number of distinct elements modulo global phase.
    pub fn projective_order(&self) -> usize {
        self.gauged_keys().len()
    }
}

impl fmt::Debug for GroupImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupImage")
            .field("dim", &self.dim)
            .field("generators", &self.generators.len())
            .field("order", &self.order())
            .finish()
    }
}

fn check_generators(generators: &[CMatrix]) -> Result<usize> {
    let first = generators
        .first()
        .ok_or_else(|| Error::InvalidArgument("at least one generator is required".into()))?;
    let dim = first.dim();
    for (i, g) in generators.iter().enumerate() {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch(format!(
                "generator {} is {1}x{1}, expected {dim}x{dim}",
                i + 1,
                g.dim()
            )));
        }
        if !g.is_unitary() {
            return Err(Error::InvalidArgument(format!(
                "generator {} is not unitary",
                i + 1
            )));
        }
    }
    Ok(dim)
}

/// Dimino's algorithm.
///
/// Starting from the cyclic group of the first generator, each further
/// generator `s` extends the current subgroup `H` by right cosets `H·g`: new
/// coset representatives are products `g·t` of a representative with any
/// generator `t` seen so far that land outside the group.
pub fn dimino_enumerate(generators: &[CMatrix], limit: usize) -> Result<GroupImage> {
    let dim = check_generators(generators)?;
    let mut group = GroupImage::new(dim, generators.to_vec());
    let exceeded = |count| Error::LimitExceeded { limit, count };

    let s1 = &generators[0];
    let mut power = s1.clone();
    while !power.is_identity() {
        group.insert(power.clone());
        if group.order() > limit {
            return Err(exceeded(group.order()));
        }
        power = &power * s1;
    }

    for i in 1..generators.len() {
        let s = &generators[i];
        if group.contains_exact(s) {
            continue;
        }
        let sub_order = group.order();
        let push_coset = |group: &mut GroupImage, rep: &CMatrix| -> Result<()> {
            if group.order() + sub_order > limit {
                return Err(exceeded(group.order() + sub_order));
            }
            for h in 0..sub_order {
                let e = &group.elements[h] * rep;
                group.insert(e);
            }
            Ok(())
        };
        push_coset(&mut group, s)?;
        let mut rep_pos = sub_order;
        while rep_pos < group.order() {
            let rep = group.elements[rep_pos].clone();
            for t in &generators[..=i] {
                let candidate = &rep * t;
                if !group.contains_exact(&candidate) {
                    push_coset(&mut group, &candidate)?;
                }
            }
            rep_pos += sub_order;
        }
    }
    Ok(group)
}

/// Breadth-first closure under right multiplication by the generators.
/// Slower than Dimino; kept as an independent cross-check.
pub fn naive_closure(generators: &[CMatrix], limit: usize) -> Result<GroupImage> {
    let dim = check_generators(generators)?;
    let mut group = GroupImage::new(dim, generators.to_vec());
    let mut queue = VecDeque::from([0usize]);
    while let Some(pos) = queue.pop_front() {
        for g in generators {
            let next = &group.elements[pos] * g;
            if group.insert(next) {
                if group.order() > limit {
                    return Err(Error::LimitExceeded {
                        limit,
                        count: group.order(),
                    });
                }
                queue.push_back(group.order() - 1);
            }
        }
    }
    Ok(group)
}

/// Image order for `2n >= 6` anyons: `2^{2n-1}(2n)!` for even `n`,
/// `2^{2n}(2n)!` for odd `n`.
pub fn read_order_formula(two_n: usize) -> Result<BigUint> {
    if two_n < 6 || two_n % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "closed-form image order needs an even anyon count >= 6, got {two_n}"
        )));
    }
    let n = two_n / 2;
    let exponent = if n % 2 == 0 { two_n - 1 } else { two_n };
    let factorial = (1..=two_n as u64).fold(BigUint::one(), |acc, k| acc * k);
    Ok((BigUint::one() << exponent) * factorial)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `g_k g_{k+1} g_k = g_{k+1} g_k g_{k+1}`.
    Artin { k: usize },
    /// `g_k g_l = g_l g_k` for `|k - l| >= 2`.
    FarCommutation { k: usize, l: usize },
    /// `(R⊗I)(I⊗R)(R⊗I) = (I⊗R)(R⊗I)(I⊗R)`.
    YangBaxter,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Artin { k } => write!(f, "artin({k},{})", k + 1),
            Relation::FarCommutation { k, l } => write!(f, "far({k},{l})"),
            Relation::YangBaxter => write!(f, "yang-baxter"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Exact,
    /// `left = phase·right` with `phase ≠ 1` of unit modulus.
    Projective(CycloNumber),
    Fail,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        !matches!(self, Verdict::Fail)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Verdict::Exact)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationMode {
    Exact,
    Projective,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub relation: Relation,
    pub verdict: Verdict,
}

fn compare(left: &CMatrix, right: &CMatrix, mode: RelationMode) -> Verdict {
    if left == right {
        return Verdict::Exact;
    }
    if mode == RelationMode::Projective {
        if let Some(phase) = left.equal_up_to_phase(right) {
            return Verdict::Projective(phase);
        }
    }
    Verdict::Fail
}

/// One report per adjacent pair; generators are numbered from 1.
pub fn check_artin_relations(generators: &[CMatrix], mode: RelationMode) -> Vec<RelationReport> {
    generators
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let (a, b) = (&w[0], &w[1]);
            let left = &(a * b) * a;
            let right = &(b * a) * b;
            RelationReport {
                relation: Relation::Artin { k: i + 1 },
                verdict: compare(&left, &right, mode),
            }
        })
        .collect()
}

pub fn check_far_commutativity(generators: &[CMatrix]) -> Vec<RelationReport> {
    let mut out = Vec::new();
    for k in 0..generators.len() {
        for l in k + 2..generators.len() {
            let (a, b) = (&generators[k], &generators[l]);
            out.push(RelationReport {
                relation: Relation::FarCommutation { k: k + 1, l: l + 1 },
                verdict: compare(&(a * b), &(b * a), RelationMode::Projective),
            });
        }
    }
    out
}

pub fn check_yang_baxter(r: &CMatrix) -> Result<RelationReport> {
    if r.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "Yang-Baxter check needs a 4x4 matrix, got {0}x{0}",
            r.dim()
        )));
    }
    let i2 = CMatrix::identity(2);
    let r12 = r.tensor(&i2);
    let r23 = i2.tensor(r);
    let left = &(&r12 * &r23) * &r12;
    let right = &(&r23 * &r12) * &r23;
    Ok(RelationReport {
        relation: Relation::YangBaxter,
        verdict: compare(&left, &right, RelationMode::Projective),
    })
}

pub fn projector_commutes_with(projector: &CMatrix, generators: &[CMatrix]) -> Result<bool> {
    for g in generators {
        let lhs = projector.try_mul(g)?;
        let rhs = g.try_mul(projector)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the parity projector commutes with every unprojected generator.
pub fn check_projector_commutation(spec: &RepSpec) -> Result<bool> {
    let full = spec.with_projected(false);
    let gens = rep_builder::generators(&full);
    projector_commutes_with(&rep_builder::parity_projector(spec.n_pairs()), &gens)
}

pub fn contains(image: &GroupImage, m: &CMatrix, up_to_phase: bool) -> bool {
    if m.dim() != image.dim() {
        return false;
    }
    if !up_to_phase {
        return image.contains_exact(m);
    }
    m.phase_gauged()
        .is_some_and(|g| image.gauged_keys().contains(&g))
}

pub fn element_order(m: &CMatrix, bound: u64) -> Result<u64> {
    let mut p = m.clone();
    for order in 1..=bound {
        if p.is_identity() {
            return Ok(order);
        }
        p = &p * m;
    }
    Err(Error::OrderBoundExceeded(bound))
}
