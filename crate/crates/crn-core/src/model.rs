//! Core data model for chemical reaction networks.
//!
//! A network is a list of named species together with irreversible
//! reactions between integer complexes. Everything in this layer is
//! exact: complexes are integer vectors, weight vectors are rational.
//! Values are immutable after construction and safe to share.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Species multiplicity vector. The zero vector is the empty complex `∅`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Complex(pub Vec<u32>);

impl Complex {
    pub fn zero(dim: usize) -> Self {
        Complex(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Indices of species occurring with positive multiplicity.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// `‖c‖₁`, the total molecularity.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// An irreversible reaction `input -> output` with mass-action rate constant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reaction {
    pub input: Complex,
    pub output: Complex,
    pub rate_constant: f64,
}

impl Reaction {
    pub fn new(input: Complex, output: Complex, rate_constant: f64) -> Result<Self, ModelError> {
        if input.dim() != output.dim() {
            return Err(ModelError::DimensionMismatch {
                expected: input.dim(),
                got: output.dim(),
            });
        }
        if !(rate_constant > 0.0) || !rate_constant.is_finite() {
            return Err(ModelError::NonpositiveRate(rate_constant));
        }
        if input == output {
            return Err(ModelError::NoOpReaction);
        }
        Ok(Reaction {
            input,
            output,
            rate_constant,
        })
    }

    /// Net effect `c^r = c_out - c_in` of one firing.
    pub fn reaction_vector(&self) -> Vec<i64> {
        self.input
            .0
            .iter()
            .zip(&self.output.0)
            .map(|(&i, &o)| o as i64 - i as i64)
            .collect()
    }
}

/// A validated reaction network over an ordered species list.
///
/// Species order is fixed at construction; all complex vectors use it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Network {
    species: Vec<String>,
    reactions: Vec<Reaction>,
}

impl Network {
    pub fn new(species: Vec<String>, reactions: Vec<Reaction>) -> Result<Self, ValidationReport> {
        let draft = NetworkDraft {
            species,
            reactions: reactions
                .iter()
                .map(|r| (r.input.clone(), r.output.clone(), r.rate_constant))
                .collect(),
        };
        let report = validate(&draft);
        if report.is_ok() {
            Ok(Network {
                species: draft.species,
                reactions,
            })
        } else {
            Err(report)
        }
    }

    pub fn species(&self) -> &[String] {
        &self.species
    }

    pub fn dim(&self) -> usize {
        self.species.len()
    }

    pub fn reactions(&self) -> &[Reaction] {
        &self.reactions
    }

    pub fn num_reactions(&self) -> usize {
        self.reactions.len()
    }

    /// `R(P)`: indices of reactions whose input is supported inside `P`.
    pub fn restricted_reactions(&self, p: &SupportSet) -> Vec<usize> {
        self.reactions
            .iter()
            .enumerate()
            .filter(|(_, r)| r.input.support().iter().all(|&i| p.contains(i)))
            .map(|(i, _)| i)
            .collect()
    }

    /// All reaction vectors `c^r` in reaction order.
    pub fn reaction_vectors(&self) -> Vec<Vec<i64>> {
        self.reactions.iter().map(|r| r.reaction_vector()).collect()
    }
}

/// Unvalidated network parts, as produced by a parser or by hand.
#[derive(Clone, Debug, Default)]
pub struct NetworkDraft {
    pub species: Vec<String>,
    /// `(input, output, rate_constant)` triples.
    pub reactions: Vec<(Complex, Complex, f64)>,
}

impl NetworkDraft {
    pub fn build(self) -> Result<Network, ValidationReport> {
        let report = validate(&self);
        if !report.is_ok() {
            return Err(report);
        }
        let reactions = self
            .reactions
            .into_iter()
            .map(|(i, o, k)| Reaction {
                input: i,
                output: o,
                rate_constant: k,
            })
            .collect();
        Ok(Network {
            species: self.species,
            reactions,
        })
    }
}

/// One invariant violation, located by reaction index where applicable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Index into the draft's reaction list; `None` for network-level issues.
    pub reaction: Option<usize>,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "detail")]
pub enum ViolationKind {
    EmptySpeciesList,
    EmptyReactionList,
    DuplicateSpecies(String),
    NonpositiveRateConstant(String),
    DimensionMismatch { expected: usize, got: usize },
    NoOpReaction,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationKind::EmptySpeciesList => write!(f, "network declares no species"),
            ViolationKind::EmptyReactionList => write!(f, "network declares no reactions"),
            ViolationKind::DuplicateSpecies(name) => write!(f, "duplicate species `{name}`"),
            ViolationKind::NonpositiveRateConstant(k) => {
                write!(f, "nonpositive rate constant {k}")
            }
            ViolationKind::DimensionMismatch { expected, got } => {
                write!(f, "complex has {got} entries, species count is {expected}")
            }
            ViolationKind::NoOpReaction => write!(f, "reaction input equals output"),
        }
    }
}

/// Outcome of checking every model invariant on a draft.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for v in &self.violations {
            match v.reaction {
                Some(i) => writeln!(f, "reaction {}: {}", i, v.kind)?,
                None => writeln!(f, "{}", v.kind)?,
            }
        }
        Ok(())
    }
}

/// Check every model invariant, reporting all violations rather than the first.
pub fn validate(draft: &NetworkDraft) -> ValidationReport {
    let mut violations = Vec::new();
    let d = draft.species.len();
    if d == 0 {
        violations.push(Violation {
            reaction: None,
            kind: ViolationKind::EmptySpeciesList,
        });
    }
    if draft.reactions.is_empty() {
        violations.push(Violation {
            reaction: None,
            kind: ViolationKind::EmptyReactionList,
        });
    }
    let mut seen = std::collections::HashSet::new();
    for name in &draft.species {
        if !seen.insert(name) {
            violations.push(Violation {
                reaction: None,
                kind: ViolationKind::DuplicateSpecies(name.clone()),
            });
        }
    }
    for (idx, (input, output, k)) in draft.reactions.iter().enumerate() {
        for c in [input, output] {
            if c.dim() != d {
                violations.push(Violation {
                    reaction: Some(idx),
                    kind: ViolationKind::DimensionMismatch {
                        expected: d,
                        got: c.dim(),
                    },
                });
            }
        }
        if !(*k > 0.0) || !k.is_finite() {
            violations.push(Violation {
                reaction: Some(idx),
                kind: ViolationKind::NonpositiveRateConstant(format!("{k}")),
            });
        }
        if input == output {
            violations.push(Violation {
                reaction: Some(idx),
                kind: ViolationKind::NoOpReaction,
            });
        }
    }
    ValidationReport { violations }
}

/// A subset `P` of species indices, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportSet {
    indices: Vec<usize>,
}

impl SupportSet {
    pub fn new(mut indices: Vec<usize>, dim: usize) -> Result<Self, ModelError> {
        indices.sort_unstable();
        indices.dedup();
        if indices.iter().any(|&i| i >= dim) {
            return Err(ModelError::SpeciesIndexOutOfRange(dim));
        }
        Ok(SupportSet { indices })
    }

    /// The full species set `P = S`.
    pub fn full(dim: usize) -> Self {
        SupportSet {
            indices: (0..dim).collect(),
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_subset_of(&self, other: &SupportSet) -> bool {
        self.indices.iter().all(|&i| other.contains(i))
    }

    /// `π_P v`: the coordinates of `v` with indices in `P`, in index order.
    pub fn project<T: Clone>(&self, v: &[T]) -> Vec<T> {
        self.indices.iter().map(|&i| v[i].clone()).collect()
    }
}

/// Positive rational species weights with `‖a‖₁ = d` enforced on construction.
///
/// Rescaling by any positive factor yields the identical object, so weight
/// vectors can be compared for equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    a: Vec<BigRational>,
}

impl WeightVector {
    pub fn new(a: Vec<BigRational>) -> Result<Self, ModelError> {
        if a.is_empty() {
            return Err(ModelError::EmptyWeightVector);
        }
        if a.iter().any(|x| !x.is_positive()) {
            return Err(ModelError::NonpositiveWeight);
        }
        let d = BigRational::from_integer(BigInt::from(a.len()));
        let sum: BigRational = a.iter().sum();
        let a = a.into_iter().map(|x| x * &d / &sum).collect();
        Ok(WeightVector { a })
    }

    /// The all-ones weight `a = 1`.
    pub fn ones(dim: usize) -> Self {
        WeightVector {
            a: vec![BigRational::one(); dim],
        }
    }

    pub fn components(&self) -> &[BigRational] {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.a.iter().map(rational_to_f64).collect()
    }

    /// `c^{r,a}` with `c^{r,a}_i = c^r_i a_i`.
    pub fn weighted_reaction_vector(&self, r: &Reaction) -> Vec<BigRational> {
        r.reaction_vector()
            .iter()
            .zip(&self.a)
            .map(|(&c, a)| BigRational::from_integer(BigInt::from(c)) * a)
            .collect()
    }
}

/// Exact-to-float conversion via the integer quotient at `f64` precision.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    // num's ToPrimitive on BigRational goes through i64 and fails on big
    // numerators; divide in floating point after scaling down instead.
    let numer = x.numer();
    let denom = x.denom();
    let nbits = numer.bits().max(1) as i64;
    let dbits = denom.bits().max(1) as i64;
    // keep both operands within f64 range by a common power-of-two shift
    let shift = (nbits.max(dbits) - 900).max(0) as u64;
    let n = big_to_f64(&(numer >> shift));
    let d = big_to_f64(&(denom >> shift));
    if d == 0.0 {
        return if n >= 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
    }
    n / d
}

fn big_to_f64(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational from a float (every finite `f64` is a dyadic rational).
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

pub fn rational_from_i64(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn zero_rational() -> BigRational {
    BigRational::zero()
}

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("complex dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("nonpositive rate constant {0}")]
    NonpositiveRate(f64),
    #[error("no-op reaction: input equals output")]
    NoOpReaction,
    #[error("species index out of range (network has {0} species)")]
    SpeciesIndexOutOfRange(usize),
    #[error("weight vector must be non-empty")]
    EmptyWeightVector,
    #[error("weight vector entries must be positive")]
    NonpositiveWeight,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex1_forward() -> Reaction {
        // A + 2B -> 3B
        Reaction::new(Complex(vec![1, 2]), Complex(vec![0, 3]), 1.0).unwrap()
    }

    #[test]
    fn reaction_vector_examples() {
        assert_eq!(ex1_forward().reaction_vector(), vec![-1, 1]);
        let source = Reaction::new(Complex(vec![0, 0]), Complex(vec![1, 2]), 1.0).unwrap();
        assert_eq!(source.reaction_vector(), vec![1, 2]);
    }

    #[test]
    fn noop_reaction_rejected() {
        let err = Reaction::new(Complex(vec![1, 0]), Complex(vec![1, 0]), 1.0).unwrap_err();
        assert_eq!(err, ModelError::NoOpReaction);
    }

    #[test]
    fn reverse_reaction_negates_vector() {
        let fwd = ex1_forward();
        let rev = Reaction::new(fwd.output.clone(), fwd.input.clone(), 2.0).unwrap();
        let neg: Vec<i64> = fwd.reaction_vector().iter().map(|c| -c).collect();
        assert_eq!(rev.reaction_vector(), neg);
    }

    #[test]
    fn validate_collects_all_violations() {
        let draft = NetworkDraft {
            species: vec!["A".into(), "A".into()],
            reactions: vec![
                (Complex(vec![1, 0]), Complex(vec![1, 0]), 0.0),
                (Complex(vec![1]), Complex(vec![0, 1]), 1.0),
            ],
        };
        let report = validate(&draft);
        assert!(!report.is_ok());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v.kind, ViolationKind::DuplicateSpecies(_))));
        assert!(report.violations.iter().any(
            |v| matches!(v.kind, ViolationKind::NonpositiveRateConstant(_)) && v.reaction == Some(0)
        ));
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v.kind, ViolationKind::NoOpReaction) && v.reaction == Some(0)));
        assert!(report.violations.iter().any(
            |v| matches!(v.kind, ViolationKind::DimensionMismatch { .. }) && v.reaction == Some(1)
        ));
    }

    #[test]
    fn restricted_reactions_monotone_in_p() {
        // ex32: A -> 2A -> 3A + 2B -> A
        let net = Network::new(
            vec!["A".into(), "B".into()],
            vec![
                Reaction::new(Complex(vec![1, 0]), Complex(vec![2, 0]), 1.0).unwrap(),
                Reaction::new(Complex(vec![2, 0]), Complex(vec![3, 2]), 1.0).unwrap(),
                Reaction::new(Complex(vec![3, 2]), Complex(vec![1, 0]), 1.0).unwrap(),
            ],
        )
        .unwrap();
        let p_a = SupportSet::new(vec![0], 2).unwrap();
        let p_b = SupportSet::new(vec![1], 2).unwrap();
        let full = SupportSet::full(2);
        assert_eq!(net.restricted_reactions(&p_a), vec![0, 1]);
        assert_eq!(net.restricted_reactions(&p_b), Vec::<usize>::new());
        assert_eq!(net.restricted_reactions(&full), vec![0, 1, 2]);
    }

    #[test]
    fn weight_vector_normalization_is_idempotent() {
        let a = WeightVector::new(vec![
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::from_integer(BigInt::from(1)),
        ])
        .unwrap();
        let scaled = WeightVector::new(
            a.components()
                .iter()
                .map(|x| x * BigRational::from_integer(BigInt::from(7)))
                .collect(),
        )
        .unwrap();
        assert_eq!(a, scaled);
        let sum: BigRational = a.components().iter().sum();
        assert_eq!(sum, BigRational::from_integer(BigInt::from(2)));
    }
}
