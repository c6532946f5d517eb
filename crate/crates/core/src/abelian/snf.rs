use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{FgAbGroup, IntMatrix};
use num_bigint::BigUint;

/// Result of `snf`: unimodular `u`, `v` and diagonal `d` with
/// `u * m * v = d` and `d[0][0] | d[1][1] | ...`, all diagonal entries
/// non-negative.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

/// Quotient of `a / b` rounded to nearest, so the remainder satisfies
/// `|a - q*b| <= |b| / 2`. Keeps entries small during elimination.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    if r.abs() * 2u32 > b.abs() {
        if r.sign() == b.sign() {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Smith normal form over the integers.
///
/// Pivoting picks the smallest nonzero absolute value of the remaining
/// block, reduces its row and column by nearest-integer division (a matrix
/// form of the euclidean algorithm), and folds any block entry not
/// divisible by the pivot into the pivot row. Each repeat strictly shrinks
/// the smallest absolute value, so the loop terminates with a pivot that
/// divides the whole remaining block; the diagonal divisibility chain
/// follows.
pub fn snf(m: &IntMatrix) -> SnfDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d.get(i, j).is_zero() {
                        continue;
                    }
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => d.get(i, j).abs() < d.get(pi, pj).abs(),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break; // remaining block is zero
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -div_nearest(d.get(i, t), d.get(t, t));
                if !q.is_zero() {
                    d.row_axpy(i, t, &q);
                    u.row_axpy(i, t, &q);
                }
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -div_nearest(d.get(t, j), d.get(t, t));
                if !q.is_zero() {
                    d.col_axpy(j, t, &q);
                    v.col_axpy(j, t, &q);
                }
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue; // a remainder smaller than the pivot appeared
            }

            let p = d.get(t, t).clone();
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !(d.get(i, j) % &p).is_zero())
            });
            if let Some(i) = offender {
                let one = BigInt::from(1);
                d.row_axpy(t, i, &one);
                u.row_axpy(t, i, &one);
                continue;
            }
            break;
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfDecomposition { u, d, v }
}

/// Canonical form of `Z^rows / image(m)`.
///
/// Diagonal entries 1 of the Smith form are dropped, entries 0 (and the
/// rows not reached by the diagonal) contribute free rank.
pub fn cokernel(m: &IntMatrix) -> FgAbGroup {
    let dec = snf(m);
    let steps = m.rows().min(m.cols());
    let factors: Vec<BigUint> = (0..steps)
        .map(|i| {
            dec.d
                .get(i, i)
                .to_biguint()
                .expect("snf diagonal is non-negative")
        })
        .collect();
    FgAbGroup::from_parts(m.rows() - steps, factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_decomposition(m: &IntMatrix) {
        let dec = snf(m);
        assert_eq!(dec.u.mul(m).mul(&dec.v), dec.d, "u*m*v != d");
        assert!(dec.u.is_unimodular(), "u not unimodular");
        assert!(dec.v.is_unimodular(), "v not unimodular");
        let steps = m.rows().min(m.cols());
        for i in 0..steps {
            assert!(!dec.d.get(i, i).is_negative());
            for j in 0..m.cols() {
                if j != i {
                    assert!(dec.d.get(i, j).is_zero(), "off-diagonal entry");
                }
            }
        }
        for i in 1..steps {
            let prev = dec.d.get(i - 1, i - 1);
            let cur = dec.d.get(i, i);
            if prev.is_zero() {
                assert!(cur.is_zero(), "zero must be last in the chain");
            } else {
                assert!((cur % prev).is_zero(), "divisibility chain broken");
            }
        }
    }

    #[test]
    fn identity_is_fixed() {
        let m = IntMatrix::identity(2);
        let dec = snf(&m);
        assert_eq!(dec.u, IntMatrix::identity(2));
        assert_eq!(dec.d, IntMatrix::identity(2));
        assert_eq!(dec.v, IntMatrix::identity(2));
    }

    #[test]
    fn zero_map() {
        let m = IntMatrix::from_i64_rows(&[&[0]]);
        let dec = snf(&m);
        assert_eq!(dec.d, IntMatrix::from_i64_rows(&[&[0]]));
        check_decomposition(&m);
    }

    #[test]
    fn two_by_two() {
        let m = IntMatrix::from_i64_rows(&[&[2, 4], &[6, 8]]);
        let dec = snf(&m);
        assert_eq!(dec.d, IntMatrix::diagonal(2, 2, &[2, 4]));
        check_decomposition(&m);
    }

    #[test]
    fn rectangular_shapes() {
        let wide = IntMatrix::from_i64_rows(&[&[6, 10, 15]]);
        check_decomposition(&wide);
        assert_eq!(snf(&wide).d.get(0, 0), &BigInt::from(1));

        let tall = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 4], &[0, 0]]);
        check_decomposition(&tall);
    }

    #[test]
    fn cokernel_examples() {
        let m = IntMatrix::diagonal(3, 3, &[1, 2, 0]);
        assert_eq!(cokernel(&m), FgAbGroup::from_parts(1, vec![2u32.into()]));

        let m = IntMatrix::from_i64_rows(&[&[3]]);
        assert_eq!(cokernel(&m), FgAbGroup::cyclic(3));

        let m = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 4], &[0, 0]]);
        assert_eq!(
            cokernel(&m),
            FgAbGroup::from_parts(1, vec![2u32.into(), 4u32.into()])
        );

        // empty presentation: cokernel of the 2x0 map is Z^2
        let m = IntMatrix::zero(2, 0);
        assert_eq!(cokernel(&m), FgAbGroup::free(2));
    }

    #[test]
    fn needs_divisibility_fixup() {
        // diag(2, 3) is not in Smith form; the chain requires (1, 6)
        let m = IntMatrix::diagonal(2, 2, &[2, 3]);
        let dec = snf(&m);
        assert_eq!(dec.d, IntMatrix::diagonal(2, 2, &[1, 6]));
        check_decomposition(&m);
    }
}
