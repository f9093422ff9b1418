//! Fraction-free linear algebra on integer vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) type IntVec = Vec<BigInt>;

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn is_zero(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Divides out the content of `v`. Returns `false` for the zero vector.
pub(crate) fn make_primitive(v: &mut [BigInt]) -> bool {
    let mut g = BigInt::zero();
    for x in v.iter() {
        g = g.gcd(x);
        if g.is_one() {
            return true;
        }
    }
    if g.is_zero() {
        return false;
    }
    for x in v.iter_mut() {
        *x /= &g;
    }
    true
}

/// Clears denominators and divides by the content; direction is preserved.
pub(crate) fn primitive_from_rationals(coords: &[BigRational]) -> Option<IntVec> {
    let lcm = coords
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut v: IntVec = coords
        .iter()
        .map(|q| q.numer() * (&lcm / q.denom()))
        .collect();
    make_primitive(&mut v).then_some(v)
}

/// Row echelon basis built incrementally; rows keep integer entries.
#[derive(Debug, Clone, Default)]
pub(crate) struct Echelon {
    rows: Vec<IntVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis so it vanishes on every pivot column.
    /// The result is a positive multiple of `v` plus an element of the span.
    pub(crate) fn reduce(&self, v: &mut IntVec) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            let c = row[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x = &*x * &c - &f * r;
            }
            make_primitive(v);
        }
    }

    /// Inserts `v`; returns whether the rank increased.
    pub(crate) fn insert(&mut self, mut v: IntVec) -> bool {
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if v[p].is_negative() {
            v.iter_mut().for_each(|x| *x = -&*x);
        }
        make_primitive(&mut v);
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// Reduced row echelon form, rows scaled to primitive integers with a
    /// positive pivot, sorted by pivot column. Unique for a given span.
    pub(crate) fn into_rref(mut self) -> Echelon {
        let k = self.rows.len();
        for i in 0..k {
            let p = self.pivots[i];
            for j in 0..k {
                if i == j || self.rows[j][p].is_zero() {
                    continue;
                }
                let f = self.rows[j][p].clone();
                let c = self.rows[i][p].clone();
                let (ri, rj) = if i < j {
                    let (a, b) = self.rows.split_at_mut(j);
                    (&a[i], &mut b[0])
                } else {
                    let (a, b) = self.rows.split_at_mut(i);
                    (&b[0], &mut a[j])
                };
                for (x, r) in rj.iter_mut().zip(ri) {
                    *x = &*x * &c - &f * r;
                }
                make_primitive(rj);
            }
        }
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let rows = order.iter().map(|&i| self.rows[i].clone()).collect();
        let pivots = order.iter().map(|&i| self.pivots[i]).collect();
        Echelon { rows, pivots }
    }

    pub(crate) fn rows(&self) -> &[IntVec] {
        &self.rows
    }

    /// Basis of the orthogonal complement of the span (standard dot product),
    /// in canonical reduced form. Requires `self` in RREF.
    pub(crate) fn orthogonal_complement(&self, dim: usize) -> Echelon {
        let mut out = Echelon::new();
        let pivot_set: Vec<Option<usize>> = {
            let mut m = vec![None; dim];
            for (i, &p) in self.pivots.iter().enumerate() {
                m[p] = Some(i);
            }
            m
        };
        for free in 0..dim {
            if pivot_set[free].is_some() {
                continue;
            }
            // x_free = 1, x_pivot(i) = -row_i[free] / row_i[pivot(i)]
            let mut q: Vec<BigRational> = vec![BigRational::zero(); dim];
            q[free] = BigRational::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                q[p] = -BigRational::new(row[free].clone(), row[p].clone());
            }
            let v = primitive_from_rationals(&q).expect("nonzero by construction");
            out.insert(v);
        }
        out.into_rref()
    }
}

/// Answers "do these vectors reach rank `r`" for subsets of a fixed list,
/// by fraction-free elimination in `i64` with a `BigInt` fallback.
pub(crate) struct RankOracle {
    small: Option<Vec<Vec<i64>>>,
    big: Vec<IntVec>,
}

impl RankOracle {
    pub(crate) fn new(big: Vec<IntVec>) -> Self {
        let small = big
            .iter()
            .map(|r| {
                r.iter()
                    .map(ToPrimitive::to_i64)
                    .collect::<Option<Vec<i64>>>()
            })
            .collect();
        Self { small, big }
    }

    /// Whether the vectors at `indices` have rank at least `target`.
    pub(crate) fn reaches(
        &self,
        indices: impl Iterator<Item = usize> + Clone,
        target: usize,
    ) -> bool {
        if target == 0 {
            return true;
        }
        if let Some(small) = &self.small {
            if let Some(r) = rank_i64(small, indices.clone(), target) {
                return r >= target;
            }
        }
        let mut e = Echelon::new();
        for i in indices {
            e.insert(self.big[i].clone());
            if e.rank() >= target {
                return true;
            }
        }
        false
    }
}

/// Rank capped at `target`, or `None` on overflow.
fn rank_i64(
    rows: &[Vec<i64>],
    indices: impl Iterator<Item = usize>,
    target: usize,
) -> Option<usize> {
    let mut basis: Vec<(usize, Vec<i64>)> = Vec::with_capacity(target);
    for i in indices {
        let mut v = rows[i].clone();
        for (p, b) in &basis {
            let c = v[*p];
            if c != 0 {
                let bp = b[*p];
                for (x, y) in v.iter_mut().zip(b) {
                    *x = x.checked_mul(bp)?.checked_sub(y.checked_mul(c)?)?;
                    if *x == i64::MIN {
                        return None;
                    }
                }
                let g = v.iter().fold(0i64, |g, x| g.gcd(x));
                if g > 1 {
                    v.iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        if let Some(p) = v.iter().position(|x| *x != 0) {
            basis.push((p, v));
            if basis.len() >= target {
                break;
            }
        }
    }
    Some(basis.len())
}

/// Canonical basis of the span of `rows`.
pub(crate) fn span_rref<'a>(rows: impl IntoIterator<Item = &'a IntVec>) -> Echelon {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r.clone());
    }
    e.into_rref()
}

/// Solves `A x = b` over the rationals, returning one solution if consistent.
pub(crate) fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(xs: &[i64]) -> IntVec {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn primitive_keeps_sign() {
        let mut v = iv(&[-4, 6, 0]);
        assert!(make_primitive(&mut v));
        assert_eq!(v, iv(&[-2, 3, 0]));
        let mut z = iv(&[0, 0]);
        assert!(!make_primitive(&mut z));
    }

    #[test]
    fn rationals_clear_denominators() {
        let q = vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-1).into(), 3.into()),
        ];
        assert_eq!(primitive_from_rationals(&q), Some(iv(&[3, -2])));
    }

    #[test]
    fn rref_is_canonical() {
        let a = span_rref([&iv(&[1, 1, 0]), &iv(&[0, 1, 1])]);
        let b = span_rref([&iv(&[1, 2, 1]), &iv(&[2, 1, -1])]);
        assert_eq!(a.rows(), b.rows());
        assert_eq!(a.rows(), &[iv(&[1, 0, -1]), iv(&[0, 1, 1])]);
    }

    #[test]
    fn complement_is_orthogonal() {
        let a = span_rref([&iv(&[1, 1, 0, 2]), &iv(&[0, 3, 1, 1])]);
        let c = a.orthogonal_complement(4);
        assert_eq!(c.rank(), 2);
        for x in a.rows() {
            for y in c.rows() {
                assert!(dot(x, y).is_zero());
            }
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let q = |x: i64| BigRational::from_integer(x.into());
        let a = vec![vec![q(1), q(1)], vec![q(1), q(-1)], vec![q(2), q(0)]];
        let x = solve(&a, &[q(3), q(1), q(4)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        assert!(solve(&a, &[q(3), q(1), q(5)]).is_none());
    }
}
