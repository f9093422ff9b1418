//! Integer backends for the double description loop.
//!
//! Every cone in this crate has small coefficients, so the conversion runs on
//! `i64` with checked arithmetic and restarts on `BigInt` if anything overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Overflow;

pub(crate) trait Exact: Clone + Eq + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn mul(&self, o: &Self) -> Result<Self, Overflow>;
    fn add(&self, o: &Self) -> Result<Self, Overflow>;
    fn sub(&self, o: &Self) -> Result<Self, Overflow>;
    fn neg(&self) -> Result<Self, Overflow>;
    fn gcd(&self, o: &Self) -> Self;
    fn div_exact(&self, o: &Self) -> Self;
    fn sign(&self) -> Ordering;
    fn is_unit(&self) -> bool;
}

// i64::MIN has no absolute value; keep it out so gcd never overflows.
fn guard(x: Option<i64>) -> Result<i64, Overflow> {
    match x {
        Some(v) if v != i64::MIN => Ok(v),
        _ => Err(Overflow),
    }
}

impl Exact for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i64().filter(|&v| v != i64::MIN)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn mul(&self, o: &Self) -> Result<Self, Overflow> {
        guard(self.checked_mul(*o))
    }
    fn add(&self, o: &Self) -> Result<Self, Overflow> {
        guard(self.checked_add(*o))
    }
    fn sub(&self, o: &Self) -> Result<Self, Overflow> {
        guard(self.checked_sub(*o))
    }
    fn neg(&self) -> Result<Self, Overflow> {
        guard(self.checked_neg())
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn sign(&self) -> Ordering {
        self.cmp(&0)
    }
    fn is_unit(&self) -> bool {
        self.abs() == 1
    }
}

impl Exact for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn mul(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self * o)
    }
    fn add(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self + o)
    }
    fn sub(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self - o)
    }
    fn neg(&self) -> Result<Self, Overflow> {
        Ok(-self)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn sign(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
    fn is_unit(&self) -> bool {
        self.abs() == num_traits::One::one()
    }
}

pub(crate) fn dot<N: Exact>(a: &[N], b: &[N]) -> Result<N, Overflow> {
    let mut acc = N::zero();
    for (x, y) in a.iter().zip(b) {
        if x.sign() == Ordering::Equal || y.sign() == Ordering::Equal {
            continue;
        }
        acc = acc.add(&x.mul(y)?)?;
    }
    Ok(acc)
}

/// `a * u - b * v`, divided by its content.
pub(crate) fn combine<N: Exact>(a: &N, u: &[N], b: &N, v: &[N]) -> Result<Vec<N>, Overflow> {
    let mut out = Vec::with_capacity(u.len());
    for (x, y) in u.iter().zip(v) {
        out.push(a.mul(x)?.sub(&b.mul(y)?)?);
    }
    make_primitive(&mut out);
    Ok(out)
}

pub(crate) fn make_primitive<N: Exact>(v: &mut [N]) {
    let mut g = N::zero();
    for x in v.iter() {
        g = g.gcd(x);
        if g.is_unit() {
            return;
        }
    }
    if g.sign() == Ordering::Equal {
        return;
    }
    for x in v.iter_mut() {
        *x = x.div_exact(&g);
    }
}
