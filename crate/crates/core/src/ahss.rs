//! Spectral-sequence consistency layer: torsion order and generator-count
//! bounds per parity, plus a brute-force enumeration of the K-groups
//! compatible with the filtration extension problem. Differentials are not
//! modeled (the bounds are inequalities, and extension ambiguity is
//! exactly the slack the bounded higher-rank results leave).

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::One;

use crate::abelian::{enumerate_extensions, FgAbGroup, OracleRefused};
use crate::ktheory::KTheoryResult;
use crate::spaces::GradedGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn matches(&self, degree: usize) -> bool {
        matches!(
            (self, degree % 2),
            (Parity::Even, 0) | (Parity::Odd, 1)
        )
    }
}

/// Upper bounds on K-theory torsion extracted from a graded cohomology:
/// the torsion order of K of each parity is at most the product of the
/// torsion orders of the cohomology in that parity, and the number of
/// torsion generators at most the sum of the generator counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionBounds {
    pub even_order_bound: BigUint,
    pub odd_order_bound: BigUint,
    pub even_generator_bound: usize,
    pub odd_generator_bound: usize,
}

pub fn torsion_bounds(coh: &GradedGroup) -> TorsionBounds {
    let mut even_order = BigUint::one();
    let mut odd_order = BigUint::one();
    let mut even_gens = 0usize;
    let mut odd_gens = 0usize;
    for (d, g) in coh.iter().enumerate() {
        if d % 2 == 0 {
            even_order *= g.torsion_order();
            even_gens += g.torsion_generator_count();
        } else {
            odd_order *= g.torsion_order();
            odd_gens += g.torsion_generator_count();
        }
    }
    TorsionBounds {
        even_order_bound: even_order,
        odd_order_bound: odd_order,
        even_generator_bound: even_gens,
        odd_generator_bound: odd_gens,
    }
}

/// Verdict of `check_result`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundCheck {
    Pass,
    Fail { reason: String },
    /// Torsion-bounded results carry no exact torsion to check.
    VacuouslyPasses,
}

impl BoundCheck {
    pub fn passes(&self) -> bool {
        !matches!(self, BoundCheck::Fail { .. })
    }
}

/// Checks an exact K-theory result against the bounds. K⁰ collects the
/// degrees of parity `n`, so it is held against the bound of that parity
/// and K¹ against the other. Monotone: enlarging the bounds never turns a
/// pass into a failure.
pub fn check_result(r: &KTheoryResult, b: &TorsionBounds, n: usize) -> BoundCheck {
    if !r.is_exact() {
        return BoundCheck::VacuouslyPasses;
    }
    let (k0_order, k0_gens, k1_order, k1_gens) = match Parity::of(n) {
        Parity::Even => (
            &b.even_order_bound,
            b.even_generator_bound,
            &b.odd_order_bound,
            b.odd_generator_bound,
        ),
        Parity::Odd => (
            &b.odd_order_bound,
            b.odd_generator_bound,
            &b.even_order_bound,
            b.even_generator_bound,
        ),
    };
    let checks: [(&str, BigUint, &BigUint, usize, usize); 2] = [
        (
            "K0",
            r.k0.torsion_order(),
            k0_order,
            r.k0.torsion_generator_count(),
            k0_gens,
        ),
        (
            "K1",
            r.k1.torsion_order(),
            k1_order,
            r.k1.torsion_generator_count(),
            k1_gens,
        ),
    ];
    for (name, order, order_bound, gens, gen_bound) in checks {
        if order > *order_bound {
            return BoundCheck::Fail {
                reason: format!("{name} torsion order {order} exceeds bound {order_bound}"),
            };
        }
        if gens > gen_bound {
            return BoundCheck::Fail {
                reason: format!(
                    "{name} needs {gens} torsion generators, bound allows {gen_bound}"
                ),
            };
        }
    }
    BoundCheck::Pass
}

/// All groups obtainable by iterated extensions of the cohomology columns
/// of the given parity, folded from the top degree down (matching the
/// filtration `0 = F^n ⊂ ... ⊂ F^0`). With no differentials modeled the
/// columns are the E-infinity terms, so every member has torsion order
/// exactly the parity's order bound.
pub fn consistent_k_groups(
    coh: &GradedGroup,
    parity: Parity,
    cap: u64,
) -> Result<BTreeSet<FgAbGroup>, OracleRefused> {
    let mut acc: BTreeSet<FgAbGroup> = BTreeSet::new();
    acc.insert(FgAbGroup::trivial());
    for d in (0..coh.len()).rev() {
        if !parity.matches(d) {
            continue;
        }
        let column = coh.get(d);
        let mut next = BTreeSet::new();
        for g in &acc {
            next.extend(enumerate_extensions(g, &column, cap)?);
        }
        acc = next;
    }
    Ok(acc)
}
