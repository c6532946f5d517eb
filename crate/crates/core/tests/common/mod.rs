//! Shared test oracles, written independently of the library code they
//! check: a determinant-divisor route to the Smith diagonal, a tiny
//! finite-abelian-group model for element-order censuses, and a generator
//! of random valid space inputs.

#![allow(dead_code)] // each integration target uses a subset

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use boundaryk_core::abelian::IntMatrix;
use boundaryk_core::spaces::{GradedGroup, SpaceInput};
use boundaryk_core::FgAbGroup;

/// Expected Smith diagonal by the determinant-divisor theorem:
/// `d_k = gcd(k x k minors) / gcd((k-1) x (k-1) minors)`, with zeros once
/// the rank is exhausted.
pub fn determinant_divisor_diagonal(m: &IntMatrix) -> Vec<BigUint> {
    let steps = m.rows().min(m.cols());
    let mut out = Vec::with_capacity(steps);
    let mut prev = BigUint::one();
    for k in 1..=steps {
        let g = minor_gcd(m, k);
        if g.is_zero() {
            out.resize(steps, BigUint::zero());
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn minor_gcd(m: &IntMatrix, k: usize) -> BigUint {
    let mut g = BigUint::zero();
    for rows in combinations(m.rows(), k) {
        for cols in combinations(m.cols(), k) {
            let det = laplace_det(m, &rows, &cols).magnitude().clone();
            g = g.gcd(&det);
        }
    }
    g
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Determinant of the submatrix by first-row Laplace expansion; fine for
/// the small minors the oracle needs.
fn laplace_det(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
    if rows.is_empty() {
        return BigInt::one();
    }
    let mut det = BigInt::zero();
    for (j, &c) in cols.iter().enumerate() {
        let minor_cols: Vec<usize> = cols
            .iter()
            .copied()
            .filter(|&cc| cc != c)
            .collect();
        let sub = laplace_det(m, &rows[1..], &minor_cols);
        let term = m.get(rows[0], c) * sub;
        if j % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

/// Concrete model of a finite abelian group `Z/m1 x Z/m2 x ...`,
/// independent of the library's internal models.
pub struct SmallAbelian {
    pub moduli: Vec<u64>,
}

impl SmallAbelian {
    pub fn new(moduli: Vec<u64>) -> Self {
        assert!(moduli.iter().all(|&m| m >= 1));
        SmallAbelian { moduli }
    }

    /// Model of the torsion part of a canonical-form group.
    pub fn of_torsion(g: &FgAbGroup) -> Self {
        let moduli = g
            .invariant_factors()
            .iter()
            .map(|f| u64::try_from(f.clone()).expect("desk-scale torsion"))
            .collect();
        SmallAbelian::new(moduli)
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for &m in &self.moduli {
            let mut next = Vec::with_capacity(out.len() * m as usize);
            for e in &out {
                for x in 0..m {
                    let mut e = e.clone();
                    e.push(x);
                    next.push(e);
                }
            }
            out = next;
        }
        out
    }

    pub fn element_order(&self, e: &[u64]) -> u64 {
        self.moduli
            .iter()
            .zip(e)
            .map(|(&m, &x)| m / gcd(m, x))
            .fold(1, lcm)
    }

    /// Element-order census: order -> count.
    pub fn census(&self) -> BTreeMap<u64, u64> {
        let mut census = BTreeMap::new();
        for e in self.elements() {
            *census.entry(self.element_order(&e)).or_insert(0) += 1;
        }
        census
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// All additive maps `Z/m -> Z/n`, found by brute force over every set
/// map, as censuses of the group they form under pointwise addition.
pub fn additive_map_census(m: u64, n: u64) -> BTreeMap<u64, u64> {
    let mut maps: Vec<Vec<u64>> = Vec::new();
    let total = n.pow(m as u32);
    for code in 0..total {
        let mut f = Vec::with_capacity(m as usize);
        let mut c = code;
        for _ in 0..m {
            f.push(c % n);
            c /= n;
        }
        let additive = (0..m).all(|a| {
            (0..m).all(|b| f[((a + b) % m) as usize] == (f[a as usize] + f[b as usize]) % n)
        });
        if additive {
            maps.push(f);
        }
    }
    // order of a map under pointwise addition mod n
    let mut census = BTreeMap::new();
    for f in &maps {
        let order = (1..).find(|k| f.iter().all(|&x| (x * k) % n == 0)).unwrap();
        *census.entry(order).or_insert(0) += 1;
    }
    census
}

/// `Z/b / (a * Z/b)` computed concretely; the quotient of a cyclic group
/// is cyclic, so its order pins it down.
pub fn cyclic_quotient_by_multiples(a: u64, b: u64) -> FgAbGroup {
    let subgroup: std::collections::BTreeSet<u64> = (0..b).map(|x| (a % b) * x % b).collect();
    FgAbGroup::cyclic(b / subgroup.len() as u64)
}

/// Builds a valid space input from a dimension, compactness flag and a
/// seed of candidate Betti numbers. Compact inputs get Poincaré-symmetric
/// ranks and the matching declared Euler characteristic; noncompact inputs
/// get a vanishing top degree.
#[allow(clippy::needless_range_loop)]
pub fn build_valid_space(n: usize, compact: bool, rank_seed: &[usize]) -> SpaceInput {
    assert!(n >= 2);
    let pick = |i: usize| -> usize {
        if rank_seed.is_empty() {
            0
        } else {
            rank_seed[(i - 1) % rank_seed.len()] % 7
        }
    };
    let mut ranks = vec![0usize; n + 1];
    ranks[0] = 1;
    if compact {
        ranks[n] = 1;
        for i in 1..=n / 2 {
            ranks[i] = pick(i);
            ranks[n - i] = ranks[i];
        }
    } else {
        for i in 1..n {
            ranks[i] = pick(i);
        }
        ranks[n] = 0;
    }
    let cohomology = GradedGroup::new(ranks.iter().map(|&r| FgAbGroup::free(r)).collect());
    let euler_char = compact.then(|| cohomology.alternating_rank_sum());
    SpaceInput {
        name: format!("random-n{n}-{}", if compact { "compact" } else { "open" }),
        dim_n: n,
        rank: 1,
        compact,
        orientable: true,
        euler_char,
        cohomology,
        assume_baum_connes: false,
    }
}
