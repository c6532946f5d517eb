//! K-theory of the boundary crossed-product algebra, assembled from the
//! sphere-bundle cohomology with a dimension shift by `n`: K⁰ collects the
//! bundle degrees congruent to `n` mod 2, K¹ the others. Implements the
//! unit-class trichotomy for rank 1 and the partially determined
//! higher-rank form.

use num_bigint::BigUint;
use thiserror::Error;

use crate::abelian::FgAbGroup;
use crate::gysin::{closed_form_cohomology, BundleCohomology, CaseTag};
use crate::spaces::{validate, SpaceInput};

/// Class of the unit in K⁰.
///
/// In a `TorsionBounded` result the stored order is the divisor bound: the
/// true order is only known to divide it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnitClass {
    TrivialClass,
    FreeGenerator,
    TorsionGenerator { order: BigUint },
}

/// Whether the K-groups are exact or only bounded.
///
/// `TorsionBounded` applies to compact higher-rank spaces with
/// chi not in {0, 1}: K⁰ is `Z^free_rank ⊕ Z/t` with `t` unknown except
/// that it divides `torsion_divides`. K¹ is always exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Determinacy {
    Exact,
    TorsionBounded {
        free_rank: usize,
        torsion_divides: BigUint,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KTheoryResult {
    /// K⁰; when `determinacy` is `TorsionBounded` this holds the certain
    /// free part only.
    pub k0: FgAbGroup,
    /// K¹; always exact.
    pub k1: FgAbGroup,
    pub unit_class: UnitClass,
    pub determinacy: Determinacy,
    /// Real rank of the underlying space; routes interpretation.
    pub source_rank: u32,
    pub compact: bool,
    pub chi: Option<i64>,
    pub dim_n: usize,
}

impl KTheoryResult {
    pub fn is_exact(&self) -> bool {
        matches!(self.determinacy, Determinacy::Exact)
    }

    /// Rendering of K⁰; bounded torsion is shown symbolically.
    pub fn k0_string(&self) -> String {
        match &self.determinacy {
            Determinacy::Exact => self.k0.to_string(),
            Determinacy::TorsionBounded {
                torsion_divides, ..
            } => {
                if self.k0.is_trivial() {
                    format!("Z/t, t | {torsion_divides}")
                } else {
                    format!("{} + Z/t, t | {torsion_divides}", self.k0)
                }
            }
        }
    }

    pub fn k1_string(&self) -> String {
        self.k1.to_string()
    }

    pub fn unit_string(&self) -> String {
        match (&self.unit_class, &self.determinacy) {
            (UnitClass::TrivialClass, _) => "trivial class".to_string(),
            (UnitClass::FreeGenerator, _) => "free generator".to_string(),
            (UnitClass::TorsionGenerator { order }, Determinacy::Exact) => {
                format!("torsion generator of order {order}")
            }
            (
                UnitClass::TorsionGenerator { .. },
                Determinacy::TorsionBounded {
                    torsion_divides, ..
                },
            ) => format!("torsion generator of order t, t | {torsion_divides}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KTheoryError {
    #[error("space fails validation: {first}")]
    InvalidSpace { first: String },
    #[error(
        "bundle cohomology is not exact (torsion in base degrees {degrees:?}); refusing K-theory"
    )]
    NonExactBundle { degrees: Vec<usize> },
    #[error("torsion-free cohomology required, but degrees {degrees:?} have torsion")]
    TorsionInCohomology { degrees: Vec<usize> },
    #[error("route expects rank {expected}, space has rank {actual}")]
    RankRoute { expected: &'static str, actual: u32 },
    #[error("higher-rank computation requires the attestation `assume_baum_connes = true`")]
    BaumConnesNotAttested,
}

/// Sums the bundle degrees of parity `n` into `k0_raw` and the others into
/// `k1_raw`. Refuses bundles tagged non-exact.
pub fn assemble_k(
    bundle: &BundleCohomology,
    n: usize,
) -> Result<(FgAbGroup, FgAbGroup), KTheoryError> {
    if !bundle.exact {
        return Err(KTheoryError::NonExactBundle {
            degrees: bundle.base_torsion_degrees.clone(),
        });
    }
    Ok(assemble_unchecked(bundle, n))
}

fn assemble_unchecked(bundle: &BundleCohomology, n: usize) -> (FgAbGroup, FgAbGroup) {
    let mut k0 = FgAbGroup::trivial();
    let mut k1 = FgAbGroup::trivial();
    for d in 0..=(2 * bundle.dim_n).saturating_sub(1) {
        let g = bundle.groups.get(d);
        if d % 2 == n % 2 {
            k0 = k0.direct_sum(&g);
        } else {
            k1 = k1.direct_sum(&g);
        }
    }
    (k0, k1)
}

fn check_hypotheses(s: &SpaceInput) -> Result<(), KTheoryError> {
    let report = validate(s);
    if let Some(v) = report.violations.first() {
        return Err(KTheoryError::InvalidSpace {
            first: v.to_string(),
        });
    }
    let torsion = s.cohomology.torsion_degrees();
    if !torsion.is_empty() {
        return Err(KTheoryError::TorsionInCohomology { degrees: torsion });
    }
    Ok(())
}

/// Unit class for an exactly determined result: trivial when the unit has
/// order 1 (chi = 1, or |chi| = 1 in the torsion case), a torsion
/// generator of order |chi| for compact chi not in {0, 1}, and a free
/// generator otherwise (noncompact, or chi = 0).
fn exact_unit_class(case: CaseTag, chi: i64) -> UnitClass {
    match case {
        CaseTag::CompactChiOne => UnitClass::TrivialClass,
        CaseTag::CompactChiOther => {
            if chi.unsigned_abs() == 1 {
                // an element of order 1 is zero
                UnitClass::TrivialClass
            } else {
                UnitClass::TorsionGenerator {
                    order: BigUint::from(chi.unsigned_abs()),
                }
            }
        }
        CaseTag::CompactChiZero | CaseTag::Noncompact => UnitClass::FreeGenerator,
    }
}

/// Exact K-theory for rank-1 spaces with torsion-free cohomology.
pub fn boundary_k_theory_rank1(s: &SpaceInput) -> Result<KTheoryResult, KTheoryError> {
    if s.rank != 1 {
        return Err(KTheoryError::RankRoute {
            expected: "1",
            actual: s.rank,
        });
    }
    check_hypotheses(s)?;
    let bundle = closed_form_cohomology(s);
    let (k0, k1) = assemble_k(&bundle, s.dim_n)?;
    let chi = s.euler_characteristic();
    Ok(KTheoryResult {
        k0,
        k1,
        unit_class: exact_unit_class(bundle.case_tag, chi),
        determinacy: Determinacy::Exact,
        source_rank: s.rank,
        compact: s.compact,
        chi: s.euler_char,
        dim_n: s.dim_n,
    })
}

/// K-theory for higher-rank spaces (rank >= 2), which requires the
/// Baum-Connes attestation flag. Noncompact spaces and compact ones with
/// chi in {0, 1} get the exact formulas; compact spaces with chi not in
/// {0, 1} get K¹ exactly but K⁰ only as `Z^s ⊕ Z/t` with `t | |chi|`.
pub fn furstenberg_k_theory(s: &SpaceInput) -> Result<KTheoryResult, KTheoryError> {
    if s.rank < 2 {
        return Err(KTheoryError::RankRoute {
            expected: "at least 2",
            actual: s.rank,
        });
    }
    if !s.assume_baum_connes {
        return Err(KTheoryError::BaumConnesNotAttested);
    }
    check_hypotheses(s)?;
    let bundle = closed_form_cohomology(s);
    let (k0, k1) = assemble_k(&bundle, s.dim_n)?;
    let chi = s.euler_characteristic();

    let exact_shape = match bundle.case_tag {
        CaseTag::Noncompact | CaseTag::CompactChiZero | CaseTag::CompactChiOne => true,
        // t | 1 forces t = 1, so |chi| = 1 is exact after all
        CaseTag::CompactChiOther => chi.unsigned_abs() == 1,
    };
    if exact_shape {
        return Ok(KTheoryResult {
            k0,
            k1,
            unit_class: exact_unit_class(bundle.case_tag, chi),
            determinacy: Determinacy::Exact,
            source_rank: s.rank,
            compact: s.compact,
            chi: s.euler_char,
            dim_n: s.dim_n,
        });
    }

    let free_rank = k0.rank();
    let bound = BigUint::from(chi.unsigned_abs());
    Ok(KTheoryResult {
        k0: FgAbGroup::free(free_rank),
        k1,
        unit_class: UnitClass::TorsionGenerator {
            order: bound.clone(),
        },
        determinacy: Determinacy::TorsionBounded {
            free_rank,
            torsion_divides: bound,
        },
        source_rank: s.rank,
        compact: s.compact,
        chi: s.euler_char,
        dim_n: s.dim_n,
    })
}

/// Routes by the rank of the space.
pub fn boundary_k_theory(s: &SpaceInput) -> Result<KTheoryResult, KTheoryError> {
    if s.rank == 1 {
        boundary_k_theory_rank1(s)
    } else {
        furstenberg_k_theory(s)
    }
}
