//! Braid words as programs over the braid generators.
//!
//! A word `l₁ l₂ … l_m` evaluates to the matrix product `g(l₁)·g(l₂)···g(l_m)`:
//! the rightmost letter acts first on a state vector. Letter `+k` is
//! generator `k`, `-k` its inverse.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact_arith::{CMatrix, CycloNumber};
use crate::group_tools::DEFAULT_ELEMENT_LIMIT;
use crate::rep_builder::{self, RepSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    spec: RepSpec,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(spec: RepSpec, letters: Vec<i32>) -> Result<Self> {
        let max = spec.generator_count();
        if let Some(&bad) = letters
            .iter()
            .find(|&&l| l == 0 || l.unsigned_abs() as usize > max)
        {
            return Err(Error::GeneratorOutOfRange {
                index: bad as i64,
                max,
            });
        }
        Ok(Self { spec, letters })
    }

    /// Parses whitespace-separated signed integers, e.g. `"-3 4 3 1 5 4 -3"`.
    pub fn parse(spec: RepSpec, text: &str) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .map(|t| {
                t.parse::<i32>()
                    .map_err(|_| Error::InvalidArgument(format!("bad braid letter `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(spec, letters)
    }

    pub fn spec(&self) -> &RepSpec {
        &self.spec
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Reversed with every sign flipped; evaluates to the inverse matrix.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            spec: self.spec,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.spec != other.spec {
            return Err(Error::InvalidArgument(
                "words over different representations".into(),
            ));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            spec: self.spec,
            letters,
        })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(i32::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Generators and their inverses for one representation.
#[derive(Debug, Clone)]
pub struct GeneratorTable {
    spec: RepSpec,
    forward: Vec<CMatrix>,
    inverse: Vec<CMatrix>,
}

impl GeneratorTable {
    pub fn new(spec: RepSpec) -> Self {
        let forward = rep_builder::generators(&spec);
        let inverse = forward.iter().map(CMatrix::dagger).collect();
        Self {
            spec,
            forward,
            inverse,
        }
    }

    pub fn letter(&self, l: i32) -> &CMatrix {
        let k = l.unsigned_abs() as usize - 1;
        if l > 0 {
            &self.forward[k]
        } else {
            &self.inverse[k]
        }
    }

    /// Letters in search order `+1, -1, +2, -2, …`.
    pub fn alphabet(&self) -> Vec<i32> {
        (1..=self.forward.len() as i32)
            .flat_map(|k| [k, -k])
            .collect()
    }

    pub fn evaluate(&self, word: &BraidWord) -> Result<CMatrix> {
        if *word.spec() != self.spec {
            return Err(Error::InvalidArgument(
                "word belongs to a different representation".into(),
            ));
        }
        Ok(word
            .letters()
            .iter()
            .fold(CMatrix::identity(self.spec.dim()), |acc, &l| {
                &acc * self.letter(l)
            }))
    }
}

pub fn evaluate_word(word: &BraidWord) -> Result<CMatrix> {
    GeneratorTable::new(*word.spec()).evaluate(word)
}

/// `Some(λ)` with `evaluate_word(word) = λ·target`; with `up_to_phase = false`
/// only exact equality (`λ = 1`) counts.
pub fn verify_gate(
    word: &BraidWord,
    target: &CMatrix,
    up_to_phase: bool,
) -> Result<Option<CycloNumber>> {
    let dim = word.spec().dim();
    if target.dim() != dim {
        return Err(Error::DimensionMismatch(format!(
            "target is {0}x{0}, representation is {dim}x{dim}",
            target.dim()
        )));
    }
    let value = evaluate_word(word)?;
    if up_to_phase {
        Ok(value.equal_up_to_phase(target))
    } else {
        Ok((value == *target).then(CycloNumber::one))
    }
}

/// Free reduction: cancels adjacent `k, -k` pairs until none remain.
pub fn reduce_word(word: &BraidWord) -> BraidWord {
    let mut out: Vec<i32> = Vec::with_capacity(word.len());
    for &l in word.letters() {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    BraidWord {
        spec: *word.spec(),
        letters: out,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisResult {
    pub word: BraidWord,
    /// `target = phase · evaluate_word(word)`.
    pub phase: CycloNumber,
    /// Distinct states visited before the target was reached.
    pub explored: usize,
    pub minimal: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub max_len: usize,
    pub up_to_phase: bool,
    pub state_limit: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            max_len: 12,
            up_to_phase: true,
            state_limit: DEFAULT_ELEMENT_LIMIT,
        }
    }
}

struct Node {
    parent: usize,
    letter: i32,
}

/// Breadth-first search over the Cayley graph of the image.
///
/// Each state is reached first by its lexicographically smallest shortest
/// word (letters ordered `+1 < -1 < +2 < …`): layers are expanded in
/// discovery order and appending letters preserves lexicographic order.
pub fn synthesize(
    spec: &RepSpec,
    target: &CMatrix,
    opts: SearchOptions,
) -> Result<Option<SynthesisResult>> {
    if target.dim() != spec.dim() {
        return Err(Error::DimensionMismatch(format!(
            "target is {0}x{0}, representation is {1}x{1}",
            target.dim(),
            spec.dim()
        )));
    }
    if !target.is_unitary() {
        return Err(Error::InvalidArgument("target is not unitary".into()));
    }
    let table = GeneratorTable::new(*spec);
    let alphabet = table.alphabet();
    let key = |m: &CMatrix| -> CMatrix {
        if opts.up_to_phase {
            m.phase_gauged().expect("unitary matrices are nonzero")
        } else {
            m.clone()
        }
    };
    let goal = key(target);

    let mut values: Vec<CMatrix> = vec![CMatrix::identity(spec.dim())];
    let mut nodes = vec![Node {
        parent: usize::MAX,
        letter: 0,
    }];
    let mut seen: HashMap<CMatrix, usize> = HashMap::from([(key(&values[0]), 0)]);

    let finish = |hit: usize,
                  values: &[CMatrix],
                  nodes: &[Node],
                  explored: usize|
     -> Result<SynthesisResult> {
        let mut letters = Vec::new();
        let mut at = hit;
        while at != 0 {
            letters.push(nodes[at].letter);
            at = nodes[at].parent;
        }
        letters.reverse();
        let word = BraidWord::new(*spec, letters)?;
        let phase = if opts.up_to_phase {
            target
                .equal_up_to_phase(&values[hit])
                .expect("gauged keys agree, so the matrices are proportional")
        } else {
            CycloNumber::one()
        };
        Ok(SynthesisResult {
            word,
            phase,
            explored,
            minimal: true,
        })
    };

    if seen.contains_key(&goal) {
        return finish(0, &values, &nodes, 1).map(Some);
    }

    let mut layer: Vec<usize> = vec![0];
    for _depth in 0..opts.max_len {
        let mut next = Vec::new();
        for &idx in &layer {
            for &l in &alphabet {
                let m = &values[idx] * table.letter(l);
                let k = key(&m);
                if seen.contains_key(&k) {
                    continue;
                }
                let id = values.len();
                if k == goal {
                    values.push(m);
                    nodes.push(Node {
                        parent: idx,
                        letter: l,
                    });
                    return finish(id, &values, &nodes, id + 1).map(Some);
                }
                seen.insert(k, id);
                values.push(m);
                nodes.push(Node {
                    parent: idx,
                    letter: l,
                });
                next.push(id);
                if values.len() > opts.state_limit {
                    return Err(Error::LimitExceeded {
                        limit: opts.state_limit,
                        count: values.len(),
                    });
                }
            }
        }
        if next.is_empty() {
            // The image is closed and the target is not in it.
            return Ok(None);
        }
        layer = next;
    }
    Ok(None)
}

/// Number of states and closure depth of the search space, or `None` if it
/// does not close within `max_depth` layers.
pub fn cayley_closure(
    spec: &RepSpec,
    up_to_phase: bool,
    max_depth: usize,
) -> Option<(usize, usize)> {
    let table = GeneratorTable::new(*spec);
    let alphabet = table.alphabet();
    let key = |m: &CMatrix| {
        if up_to_phase {
            m.phase_gauged().expect("nonzero")
        } else {
            m.clone()
        }
    };
    let id = CMatrix::identity(spec.dim());
    let mut seen = std::collections::HashSet::from([key(&id)]);
    let mut layer = vec![id];
    for depth in 0..=max_depth {
        let mut next = Vec::new();
        for m in &layer {
            for &l in &alphabet {
                let p = m * table.letter(l);
                if seen.insert(key(&p)) {
                    next.push(p);
                }
            }
        }
        if next.is_empty() {
            return Some((seen.len(), depth));
        }
        layer = next;
    }
    None
}
