use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

/// A finitely generated abelian group in canonical form.
///
/// The group is `Z^rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk` where the invariant factors
/// satisfy `2 <= d1`, `d1 | d2 | ... | dk`. By the structure theorem this
/// form is unique, so structural equality decides isomorphism.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FgAbGroup {
    rank: usize,
    invariant_factors: Vec<BigUint>,
}

impl FgAbGroup {
    /// The trivial group `0` (rank 0, no torsion).
    pub fn trivial() -> Self {
        FgAbGroup {
            rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    /// The free group `Z^rank`.
    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            rank,
            invariant_factors: Vec::new(),
        }
    }

    /// The cyclic group `Z/order`, with the conventions `Z/0 = Z` and
    /// `Z/1 = 0`.
    pub fn cyclic(order: u64) -> Self {
        Self::from_parts(0, vec![BigUint::from(order)])
    }

    /// Builds the canonical form of `Z^rank ⊕ Z/f1 ⊕ Z/f2 ⊕ ...` from an
    /// arbitrary list of cyclic orders. Orders 0 contribute to the rank,
    /// orders 1 are dropped, and the rest are renormalized into a
    /// divisibility chain (`Z/2 ⊕ Z/3` becomes `Z/6`).
    pub fn from_parts(rank: usize, factors: Vec<BigUint>) -> Self {
        let mut rank = rank;
        let mut torsion: Vec<BigUint> = Vec::with_capacity(factors.len());
        for f in factors {
            if f.is_zero() {
                rank += 1;
            } else if !f.is_one() {
                torsion.push(f);
            }
        }
        normalize_chain(&mut torsion);
        FgAbGroup {
            rank,
            invariant_factors: torsion,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn invariant_factors(&self) -> &[BigUint] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Order of the torsion subgroup (1 for torsion-free groups).
    pub fn torsion_order(&self) -> BigUint {
        self.invariant_factors
            .iter()
            .fold(BigUint::one(), |acc, f| acc * f)
    }

    /// Minimal number of generators of the torsion subgroup.
    pub fn torsion_generator_count(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Canonical form decides isomorphism, so this is structural equality.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self == other
    }

    /// Canonical form of `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut factors = self.invariant_factors.clone();
        factors.extend_from_slice(&other.invariant_factors);
        Self::from_parts(self.rank + other.rank, factors)
    }

    /// `Hom(self, other)` over the integers.
    ///
    /// Additive in both slots, with `Hom(Z, B) = B`, `Hom(Z/a, Z) = 0` and
    /// `Hom(Z/a, Z/b) = Z/gcd(a, b)`.
    pub fn hom(&self, other: &Self) -> Self {
        let mut factors = Vec::new();
        for b in &other.invariant_factors {
            for _ in 0..self.rank {
                factors.push(b.clone());
            }
        }
        for a in &self.invariant_factors {
            for b in &other.invariant_factors {
                factors.push(a.gcd(b));
            }
        }
        Self::from_parts(self.rank * other.rank, factors)
    }

    /// `Ext¹(self, other)` over the integers.
    ///
    /// Vanishes when `self` is free, with `Ext(Z/a, Z) = Z/a` and
    /// `Ext(Z/a, Z/b) = Z/gcd(a, b)`.
    pub fn ext(&self, other: &Self) -> Self {
        let mut factors = Vec::new();
        for a in &self.invariant_factors {
            for _ in 0..other.rank {
                factors.push(a.clone());
            }
            for b in &other.invariant_factors {
                factors.push(a.gcd(b));
            }
        }
        Self::from_parts(0, factors)
    }

    /// `self ⊗ other` over the integers: `Z ⊗ B = B`,
    /// `Z/a ⊗ Z/b = Z/gcd(a, b)`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut factors = Vec::new();
        for b in &other.invariant_factors {
            for _ in 0..self.rank {
                factors.push(b.clone());
            }
        }
        for a in &self.invariant_factors {
            for _ in 0..other.rank {
                factors.push(a.clone());
            }
            for b in &other.invariant_factors {
                factors.push(a.gcd(b));
            }
        }
        Self::from_parts(self.rank * other.rank, factors)
    }

    /// `Tor₁(self, other)`: vanishes when either argument is free,
    /// `Tor(Z/a, Z/b) = Z/gcd(a, b)`.
    pub fn tor(&self, other: &Self) -> Self {
        let mut factors = Vec::new();
        for a in &self.invariant_factors {
            for b in &other.invariant_factors {
                factors.push(a.gcd(b));
            }
        }
        Self::from_parts(0, factors)
    }
}

/// Renormalizes a list of cyclic orders (each >= 2) into a divisibility
/// chain. Any pair in which neither order divides the other is replaced by
/// (gcd, lcm); the lcm strictly exceeds both, so the multiset ordered
/// descending strictly grows lexicographically and the loop terminates.
fn normalize_chain(factors: &mut Vec<BigUint>) {
    loop {
        let mut changed = false;
        for i in 0..factors.len() {
            for j in (i + 1)..factors.len() {
                let a = factors[i].clone();
                let b = factors[j].clone();
                if (&b % &a).is_zero() || (&a % &b).is_zero() {
                    continue;
                }
                let g = a.gcd(&b);
                let l = &a / &g * &b;
                factors[i] = g;
                factors[j] = l;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    factors.sort();
    factors.retain(|f| !f.is_one());
}

impl fmt::Display for FgAbGroup {
    /// Renders the group grammar token: `0`, `Z`, `Z^r`, `Z/d`, joined
    /// with ` + ` (for example `Z^5 + Z/2`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupParseError {
    #[error("empty group expression")]
    Empty,
    #[error("malformed group term `{0}` (expected 0, Z, Z^r or Z/d)")]
    BadTerm(String),
    #[error("`0` cannot be combined with other terms")]
    ZeroInSum,
    #[error("free rank must be at least 1 in `{0}`")]
    BadRank(String),
    #[error("cyclic order must be at least 2 in `{0}`")]
    BadOrder(String),
}

impl FromStr for FgAbGroup {
    type Err = GroupParseError;

    /// Parses the group grammar: `0 | Z | Z^r | Z/d | term + term + ...`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(GroupParseError::Empty);
        }
        let terms: Vec<&str> = s.split('+').map(str::trim).collect();
        if terms.contains(&"0") {
            if terms.len() == 1 {
                return Ok(FgAbGroup::trivial());
            }
            return Err(GroupParseError::ZeroInSum);
        }
        let mut rank = 0usize;
        let mut factors = Vec::new();
        for term in terms {
            if term == "Z" {
                rank += 1;
            } else if let Some(r) = term.strip_prefix("Z^") {
                let r: usize = r
                    .parse()
                    .map_err(|_| GroupParseError::BadTerm(term.to_string()))?;
                if r == 0 {
                    return Err(GroupParseError::BadRank(term.to_string()));
                }
                rank += r;
            } else if let Some(d) = term.strip_prefix("Z/") {
                let d = BigUint::from_str(d)
                    .map_err(|_| GroupParseError::BadTerm(term.to_string()))?;
                if d < BigUint::from(2u32) {
                    return Err(GroupParseError::BadOrder(term.to_string()));
                }
                factors.push(d);
            } else {
                return Err(GroupParseError::BadTerm(term.to_string()));
            }
        }
        Ok(FgAbGroup::from_parts(rank, factors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form_drops_ones_and_sorts() {
        let grp = FgAbGroup::from_parts(1, vec![4u32.into(), 1u32.into(), 2u32.into()]);
        assert_eq!(grp, g("Z + Z/2 + Z/4"));
    }

    #[test]
    fn zero_factor_contributes_rank() {
        assert_eq!(FgAbGroup::cyclic(0), g("Z"));
        assert_eq!(FgAbGroup::cyclic(1), g("0"));
        assert_eq!(FgAbGroup::cyclic(5), g("Z/5"));
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(g("Z").direct_sum(&g("Z/2")), g("Z + Z/2"));
        assert_eq!(g("Z/2").direct_sum(&g("Z/2")), g("Z/2 + Z/2"));
        // CRT renormalization, not Z/4:
        assert_eq!(g("Z/2").direct_sum(&g("Z/3")), g("Z/6"));
        assert_eq!(g("Z/4").direct_sum(&g("Z/6")), g("Z/2 + Z/12"));
    }

    #[test]
    fn trivial_group_is_unit_for_direct_sum() {
        let grp = g("Z^3 + Z/2 + Z/6");
        assert_eq!(grp.direct_sum(&FgAbGroup::trivial()), grp);
        assert_eq!(FgAbGroup::trivial().direct_sum(&grp), grp);
    }

    #[test]
    fn torsion_readouts() {
        assert_eq!(g("Z^3").torsion_order(), BigUint::one());
        assert_eq!(g("Z^5 + Z/2").torsion_order(), BigUint::from(2u32));
        assert_eq!(g("Z/2 + Z/4").torsion_generator_count(), 2);
        assert_eq!(g("0").torsion_order(), BigUint::one());
    }

    #[test]
    fn hom_ext_formulas() {
        let a = g("Z^2 + Z/4");
        assert_eq!(g("Z").hom(&a), a);
        assert_eq!(g("Z/6").hom(&g("Z/4")), g("Z/2"));
        assert_eq!(g("Z/6").ext(&g("Z/4")), g("Z/2"));
        assert_eq!(g("Z^3").ext(&a), g("0"));
        assert_eq!(g("Z/6").hom(&g("Z")), g("0"));
        assert_eq!(g("Z/6").ext(&g("Z")), g("Z/6"));
    }

    #[test]
    fn tensor_tor_formulas() {
        assert_eq!(g("Z").tor(&g("Z^4 + Z/9")), g("0"));
        assert_eq!(g("Z/4").tor(&g("Z/6")), g("Z/2"));
        assert_eq!(g("Z/2").tor(&g("Z/2")), g("Z/2"));
        assert_eq!(g("Z/4").tensor(&g("Z/6")), g("Z/2"));
        assert_eq!(g("Z").tensor(&g("Z^2 + Z/3")), g("Z^2 + Z/3"));
    }

    #[test]
    fn display_grammar() {
        assert_eq!(g("0").to_string(), "0");
        assert_eq!(g("Z").to_string(), "Z");
        assert_eq!(FgAbGroup::free(5).to_string(), "Z^5");
        assert_eq!(
            FgAbGroup::from_parts(5, vec![2u32.into()]).to_string(),
            "Z^5 + Z/2"
        );
        assert_eq!(FgAbGroup::from_parts(0, vec![2u32.into(), 4u32.into()]).to_string(), "Z/2 + Z/4");
    }

    #[test]
    fn parse_rejects_malformed_terms() {
        assert!("Z^0".parse::<FgAbGroup>().is_err());
        assert!("Z/1".parse::<FgAbGroup>().is_err());
        assert!("Z/0".parse::<FgAbGroup>().is_err());
        assert!("0 + Z".parse::<FgAbGroup>().is_err());
        assert!("Q".parse::<FgAbGroup>().is_err());
        assert!("".parse::<FgAbGroup>().is_err());
    }
}
