//! Classification-level queries on K-theory results: comparison of two
//! boundary algebras through their K-data and unit classes, recovery of
//! |chi| from the torsion, the UCT KK-group, and Künneth products used to
//! build higher-rank examples.

use num_bigint::BigUint;
use thiserror::Error;

use crate::abelian::FgAbGroup;
use crate::ktheory::{KTheoryResult, UnitClass};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompareVerdict {
    Isomorphic,
    NotIsomorphic { witness: String },
    Undetermined { reason: String },
}

impl CompareVerdict {
    pub fn token(&self) -> &'static str {
        match self {
            CompareVerdict::Isomorphic => "ISOMORPHIC",
            CompareVerdict::NotIsomorphic { .. } => "NOT_ISOMORPHIC",
            CompareVerdict::Undetermined { .. } => "UNDETERMINED",
        }
    }
}

fn group_witness(name: &str, a: &FgAbGroup, b: &FgAbGroup) -> String {
    if a.torsion_order() != b.torsion_order() {
        format!(
            "{name} torsion order {} vs {}",
            a.torsion_order(),
            b.torsion_order()
        )
    } else if a.rank() != b.rank() {
        format!("{name} rank {} vs {}", a.rank(), b.rank())
    } else {
        format!("{name} = {a} vs {b}")
    }
}

fn unit_witness(a: &UnitClass, b: &UnitClass) -> String {
    let describe = |u: &UnitClass| match u {
        UnitClass::TrivialClass => "trivial".to_string(),
        UnitClass::FreeGenerator => "free generator".to_string(),
        UnitClass::TorsionGenerator { order } => format!("torsion generator of order {order}"),
    };
    format!("unit class {} vs {}", describe(a), describe(b))
}

/// Compares two boundary algebras through their K-data.
///
/// Differing K-groups (as abstract groups) or differing unit classes decide
/// NOT_ISOMORPHIC outright; these are isomorphism invariants with no side
/// conditions. ISOMORPHIC needs the classification hypotheses: exact
/// results from compact rank-1 spaces with the unit a generator (chi not
/// equal to 1). Everything else is UNDETERMINED with the reason spelled
/// out.
pub fn compare(r1: &KTheoryResult, r2: &KTheoryResult) -> CompareVerdict {
    if !r1.is_exact() || !r2.is_exact() {
        return CompareVerdict::Undetermined {
            reason: "a torsion-bounded K0 cannot be compared exactly".to_string(),
        };
    }
    if r1.k0 != r2.k0 {
        return CompareVerdict::NotIsomorphic {
            witness: group_witness("K0", &r1.k0, &r2.k0),
        };
    }
    if r1.k1 != r2.k1 {
        return CompareVerdict::NotIsomorphic {
            witness: group_witness("K1", &r1.k1, &r2.k1),
        };
    }
    if r1.unit_class != r2.unit_class {
        return CompareVerdict::NotIsomorphic {
            witness: unit_witness(&r1.unit_class, &r2.unit_class),
        };
    }
    if r1.source_rank != 1 || r2.source_rank != 1 {
        return CompareVerdict::Undetermined {
            reason: "the classification result covers rank-1 spaces only".to_string(),
        };
    }
    if !r1.compact || !r2.compact {
        return CompareVerdict::Undetermined {
            reason: "the classification result covers cocompact lattices only".to_string(),
        };
    }
    if r1.unit_class == UnitClass::TrivialClass {
        return CompareVerdict::Undetermined {
            reason: "the classification result requires the unit to be a generator (chi != 1)"
                .to_string(),
        };
    }
    CompareVerdict::Isomorphic
}

/// Recovers |chi| from an exact compact rank-1 result whose unit is a
/// torsion generator: |chi| is the order of the K⁰ torsion subgroup.
/// Returns `None` when the unit is not a torsion generator (chi in
/// {0, 1} or noncompact) or the preconditions fail.
pub fn recover_euler(r: &KTheoryResult) -> Option<BigUint> {
    if !r.is_exact() || !r.compact || r.source_rank != 1 {
        return None;
    }
    match &r.unit_class {
        UnitClass::TorsionGenerator { order } => {
            debug_assert_eq!(order, &r.k0.torsion_order());
            Some(r.k0.torsion_order())
        }
        _ => None,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("exact K-groups required; a torsion-bounded result was supplied")]
    NotExact,
}

/// The UCT KK-group in two readings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KkGroups {
    /// `Hom(K0, K0') ⊕ Ext(K0, K0')`, the headline formula.
    pub headline: FgAbGroup,
    /// Fully graded variant
    /// `Hom(K0, K0') ⊕ Hom(K1, K1') ⊕ Ext(K0, K1') ⊕ Ext(K1, K0')`,
    /// emitted alongside as informational output.
    pub graded: FgAbGroup,
}

pub fn kk_group(r1: &KTheoryResult, r2: &KTheoryResult) -> Result<KkGroups, ClassifyError> {
    if !r1.is_exact() || !r2.is_exact() {
        return Err(ClassifyError::NotExact);
    }
    let headline = r1.k0.hom(&r2.k0).direct_sum(&r1.k0.ext(&r2.k0));
    let graded = r1
        .k0
        .hom(&r2.k0)
        .direct_sum(&r1.k1.hom(&r2.k1))
        .direct_sum(&r1.k0.ext(&r2.k1))
        .direct_sum(&r1.k1.ext(&r2.k0));
    Ok(KkGroups { headline, graded })
}

/// Graded Künneth product with Tor terms:
///
/// ```text
/// k0 = (k0 ⊗ k0') ⊕ (k1 ⊗ k1') ⊕ Tor(k0, k1') ⊕ Tor(k1, k0')
/// k1 = (k0 ⊗ k1') ⊕ (k1 ⊗ k0') ⊕ Tor(k0, k0') ⊕ Tor(k1, k1')
/// ```
///
/// Used to construct product examples; not a general product formula for
/// boundary algebras.
pub fn kunneth_k(
    ra: &KTheoryResult,
    rb: &KTheoryResult,
) -> Result<(FgAbGroup, FgAbGroup), ClassifyError> {
    if !ra.is_exact() || !rb.is_exact() {
        return Err(ClassifyError::NotExact);
    }
    let k0 = ra
        .k0
        .tensor(&rb.k0)
        .direct_sum(&ra.k1.tensor(&rb.k1))
        .direct_sum(&ra.k0.tor(&rb.k1))
        .direct_sum(&ra.k1.tor(&rb.k0));
    let k1 = ra
        .k0
        .tensor(&rb.k1)
        .direct_sum(&ra.k1.tensor(&rb.k0))
        .direct_sum(&ra.k0.tor(&rb.k0))
        .direct_sum(&ra.k1.tor(&rb.k1));
    Ok((k0, k1))
}
