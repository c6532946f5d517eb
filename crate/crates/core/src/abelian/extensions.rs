use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use super::FgAbGroup;

/// Default guard on `|A_t| * |B_t|` for the extension enumerator.
pub const DEFAULT_EXTENSION_CAP: u64 = 10_000;

/// Upper bound on the number of generator-image tuples the realizability
/// search is willing to walk before refusing.
const SEARCH_BUDGET: u128 = 2_000_000;

/// The oracle refuses rather than answer outside its budget; it never
/// returns a wrong set.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleRefused {
    #[error("extension oracle refused: torsion order {torsion_order} exceeds cap {cap}")]
    TorsionCapExceeded { torsion_order: BigUint, cap: u64 },
    #[error("extension oracle refused: search space of {tuples} generator images exceeds budget")]
    SearchBudgetExceeded { tuples: u128 },
}

/// All groups `G` (up to isomorphism) fitting into a short exact sequence
/// `0 -> a -> G -> b -> 0` with `rank(G) = rank(a) + rank(b)` and
/// `|G_t| = |a_t| * |b_t|`.
///
/// Candidates are the canonical forms with that rank and torsion order;
/// each candidate is accepted exactly when its torsion part contains a
/// subgroup isomorphic to `a_t` with quotient isomorphic to `b_t`,
/// checked by exhaustive search inside a concrete product-of-cyclic-groups
/// model. Free parts split off: `Ext(Z^k, -) = 0` and the torsion-order
/// constraint pins the torsion sequence `0 -> a_t -> G_t -> b_t -> 0`.
pub fn enumerate_extensions(
    a: &FgAbGroup,
    b: &FgAbGroup,
    cap: u64,
) -> Result<BTreeSet<FgAbGroup>, OracleRefused> {
    let torsion_order = a.torsion_order() * b.torsion_order();
    let order = match torsion_order.to_u64() {
        Some(order) if order <= cap => order,
        _ => {
            return Err(OracleRefused::TorsionCapExceeded { torsion_order, cap });
        }
    };
    let rank = a.rank() + b.rank();
    let a_factors = small_factors(a);
    let b_factors = small_factors(b);
    let b_census = CyclicModel::new(b_factors.clone()).order_census();

    let mut found = BTreeSet::new();
    for torsion in factor_chains(order) {
        // a finite abelian group contains a subgroup (equivalently, has a
        // quotient) of a given canonical form exactly when the invariant
        // factors divide its own, aligned from the largest down
        if !chain_dominates(&a_factors, &torsion) || !chain_dominates(&b_factors, &torsion) {
            continue;
        }
        let model = CyclicModel::new(torsion.clone());
        if admits_subgroup_with_quotient(&model, &a_factors, &b_census)? {
            let factors = torsion.iter().map(|&d| BigUint::from(d)).collect();
            found.insert(FgAbGroup::from_parts(rank, factors));
        }
    }
    Ok(found)
}

/// True when `small` (ascending invariant factors) divides into `big`
/// aligned from the top: `small[end - i]` divides `big[end - i]`.
fn chain_dominates(small: &[u64], big: &[u64]) -> bool {
    if small.len() > big.len() {
        return false;
    }
    small
        .iter()
        .rev()
        .zip(big.iter().rev())
        .all(|(s, b)| b % s == 0)
}

fn small_factors(g: &FgAbGroup) -> Vec<u64> {
    g.invariant_factors()
        .iter()
        .map(|f| f.to_u64().expect("guarded by the torsion cap"))
        .collect()
}

/// Does `model` contain a subgroup generated like `Z/a1 ⊕ Z/a2 ⊕ ...`
/// (injectively) whose quotient has the given element-order census?
fn admits_subgroup_with_quotient(
    model: &CyclicModel,
    a_factors: &[u64],
    b_census: &BTreeMap<u64, u64>,
) -> Result<bool, OracleRefused> {
    let a_order: u64 = a_factors.iter().product();

    // candidate images for the generator of Z/a: an injection preserves
    // orders, so only elements of order exactly a qualify
    let candidates: Vec<Vec<Vec<u64>>> = a_factors
        .iter()
        .map(|&a| {
            model
                .elements()
                .filter(|e| model.element_order(e) == a)
                .collect()
        })
        .collect();

    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(false);
    }
    let tuples: u128 = candidates
        .iter()
        .map(|c| c.len() as u128)
        .product();
    if tuples > SEARCH_BUDGET {
        return Err(OracleRefused::SearchBudgetExceeded { tuples });
    }

    let mut seen_subgroups: HashSet<Vec<Vec<u64>>> = HashSet::new();
    let mut indices = vec![0usize; candidates.len()];
    loop {
        let gens: Vec<&Vec<u64>> = indices
            .iter()
            .zip(&candidates)
            .map(|(&i, c)| &c[i])
            .collect();
        // None signals a repeated sum, i.e. a non-injective assignment
        if let Some(subgroup) = model.generated_subgroup(&gens, a_factors) {
            debug_assert_eq!(subgroup.len() as u64, a_order);
            let mut key: Vec<Vec<u64>> = subgroup.iter().cloned().collect();
            key.sort();
            if seen_subgroups.insert(key) && model.quotient_census(&subgroup) == *b_census {
                return Ok(true);
            }
        }
        // odometer step
        let mut pos = 0;
        loop {
            if pos == indices.len() {
                return Ok(false);
            }
            indices[pos] += 1;
            if indices[pos] < candidates[pos].len() {
                break;
            }
            indices[pos] = 0;
            pos += 1;
        }
    }
}

/// Ascending divisibility chains `d1 | d2 | ... | dk`, each `di >= 2`,
/// with product `n`. These are exactly the invariant-factor lists of
/// abelian groups of order `n`.
fn factor_chains(n: u64) -> Vec<Vec<u64>> {
    fn rec(product: u64, top: u64) -> Vec<Vec<u64>> {
        if product == 1 {
            return vec![Vec::new()];
        }
        let mut chains = Vec::new();
        // pick the largest remaining factor first
        for e in divisors(product) {
            if e >= 2 && top.is_multiple_of(e) {
                for mut chain in rec(product / e, e) {
                    chain.push(e);
                    chains.push(chain);
                }
            }
        }
        chains
    }
    rec(n, n)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Concrete model of `Z/m1 ⊕ Z/m2 ⊕ ...` with elements as tuples.
struct CyclicModel {
    moduli: Vec<u64>,
}

impl CyclicModel {
    fn new(moduli: Vec<u64>) -> Self {
        assert!(moduli.iter().all(|&m| m >= 2));
        CyclicModel { moduli }
    }

    fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let total = self.order();
        (0..total).map(move |mut k| {
            let mut e = Vec::with_capacity(self.moduli.len());
            for &m in &self.moduli {
                e.push(k % m);
                k /= m;
            }
            e
        })
    }

    fn element_order(&self, e: &[u64]) -> u64 {
        self.moduli
            .iter()
            .zip(e)
            .map(|(&m, &x)| m / gcd(m, x))
            .fold(1, lcm)
    }

    fn scale(&self, k: u64, e: &[u64]) -> Vec<u64> {
        self.moduli
            .iter()
            .zip(e)
            .map(|(&m, &x)| (x % m * (k % m)) % m)
            .collect()
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.moduli
            .iter()
            .zip(a.iter().zip(b))
            .map(|(&m, (&x, &y))| (x + y) % m)
            .collect()
    }

    /// Subgroup generated by images of the generators of
    /// `Z/a1 ⊕ Z/a2 ⊕ ...`: all sums `c1*g1 + ... + ck*gk` with
    /// `0 <= ci < ai`. Returns `None` as soon as two coefficient tuples
    /// collide, which is exactly failure of injectivity.
    fn generated_subgroup(&self, gens: &[&Vec<u64>], orders: &[u64]) -> Option<HashSet<Vec<u64>>> {
        let mut set = HashSet::new();
        let mut coeffs = vec![0u64; gens.len()];
        loop {
            let mut sum = vec![0u64; self.moduli.len()];
            for (c, g) in coeffs.iter().zip(gens) {
                sum = self.add(&sum, &self.scale(*c, g));
            }
            if !set.insert(sum) {
                return None;
            }
            let mut pos = 0;
            loop {
                if pos == coeffs.len() {
                    return Some(set);
                }
                coeffs[pos] += 1;
                if coeffs[pos] < orders[pos] {
                    break;
                }
                coeffs[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Element-order census: order -> number of elements of that order.
    fn order_census(&self) -> BTreeMap<u64, u64> {
        let mut census = BTreeMap::new();
        for e in self.elements() {
            *census.entry(self.element_order(&e)).or_insert(0) += 1;
        }
        census
    }

    /// Census of coset orders in `model / subgroup`. The order of a coset
    /// `g + S` is the least `k >= 1` with `k*g` in `S`; every coset is hit
    /// `|S|` times when iterating over all elements.
    fn quotient_census(&self, subgroup: &HashSet<Vec<u64>>) -> BTreeMap<u64, u64> {
        let sub_order = subgroup.len() as u64;
        let mut census: BTreeMap<u64, u64> = BTreeMap::new();
        for e in self.elements() {
            let order = divisors(self.element_order(&e))
                .into_iter()
                .find(|&k| subgroup.contains(&self.scale(k, &e)))
                .expect("the full element order always lands in the subgroup");
            *census.entry(order).or_insert(0) += 1;
        }
        for count in census.values_mut() {
            debug_assert_eq!(*count % sub_order, 0);
            *count /= sub_order;
        }
        census
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
