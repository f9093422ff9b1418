//! Divisor and curve classes on the blow-up `X^n_s` of `P^n` at `s` general
//! points, the intersection pairing, and the Cremona/Weyl action.
//!
//! Divisors are `D = d H - sum m_i E_i`, stored as `(d, m_1, ..., m_s)`.
//! Curves are `c = delta h - sum mu_i e_i`, stored as `(delta, mu_1, ..., mu_s)`.
//! The pairing is `D . c = d delta - sum m_i mu_i`.

use crate::cone::{LatticeVec, RatVec};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// A sorted set of point indices in `1..=s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(mut indices: Vec<usize>, s: usize) -> Result<Self> {
        indices.sort_unstable();
        for w in indices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::OutOfRange(format!("index {} repeated", w[0])));
            }
        }
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > s) {
            return Err(Error::IndexOutOfRange { index: bad, s });
        }
        Ok(Self(indices))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// All `k`-subsets of `1..=s`, in lexicographic order.
    pub fn all_of_size(s: usize, k: usize) -> Vec<IndexSet> {
        let mut out = Vec::new();
        if k > s {
            return out;
        }
        let mut cur: Vec<usize> = (1..=k).collect();
        loop {
            out.push(IndexSet(cur.clone()));
            // advance to the next combination
            let Some(pos) = (0..k).rev().find(|&i| cur[i] < s - (k - 1 - i)) else {
                return out;
            };
            cur[pos] += 1;
            for i in pos + 1..k {
                cur[i] = cur[i - 1] + 1;
            }
        }
    }

    fn check_cremona(&self, n: usize, s: usize) -> Result<()> {
        if self.len() != n + 1 {
            return Err(Error::IndexSetSize {
                expected: n + 1,
                got: self.len(),
            });
        }
        if let Some(&bad) = self.0.iter().find(|&&i| i == 0 || i > s) {
            return Err(Error::IndexOutOfRange { index: bad, s });
        }
        Ok(())
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub n: usize,
    pub d: BigRational,
    pub m: Vec<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveClass {
    pub n: usize,
    pub delta: BigRational,
    pub mu: Vec<BigRational>,
}

impl DivisorClass {
    pub fn new(n: usize, d: BigRational, m: Vec<BigRational>) -> Self {
        Self { n, d, m }
    }

    /// `d H - sum m_i E_i` with integer data.
    pub fn from_ints(n: usize, d: i64, m: &[i64]) -> Self {
        Self::new(n, q(d), m.iter().map(|&x| q(x)).collect())
    }

    pub fn hyperplane(n: usize, s: usize) -> Self {
        Self::new(n, q(1), vec![BigRational::zero(); s])
    }

    /// The exceptional divisor `E_i` (so `m_i = -1`).
    pub fn exceptional(n: usize, s: usize, i: usize) -> Result<Self> {
        check_index(i, s)?;
        let mut m = vec![BigRational::zero(); s];
        m[i - 1] = q(-1);
        Ok(Self::new(n, BigRational::zero(), m))
    }

    pub fn s(&self) -> usize {
        self.m.len()
    }

    /// Coordinates `(d, m_1, ..., m_s)`.
    pub fn coords(&self) -> RatVec {
        let mut c = Vec::with_capacity(self.s() + 1);
        c.push(self.d.clone());
        c.extend(self.m.iter().cloned());
        RatVec::new(c)
    }

    pub fn from_coords(n: usize, coords: &[BigRational]) -> Result<Self> {
        let (d, m) = coords
            .split_first()
            .ok_or_else(|| Error::Format("empty divisor coordinates".into()))?;
        Ok(Self::new(n, d.clone(), m.to_vec()))
    }

    pub fn from_lattice(n: usize, v: &LatticeVec) -> Self {
        let c: Vec<BigRational> = v
            .coords()
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        Self::new(n, c[0].clone(), c[1..].to_vec())
    }

    fn same_shape(&self, n: usize, s: usize) -> Result<()> {
        shape(self.n, self.s(), n, s)
    }
}

impl CurveClass {
    pub fn new(n: usize, delta: BigRational, mu: Vec<BigRational>) -> Self {
        Self { n, delta, mu }
    }

    /// `delta h - sum mu_i e_i` with integer data.
    pub fn from_ints(n: usize, delta: i64, mu: &[i64]) -> Self {
        Self::new(n, q(delta), mu.iter().map(|&x| q(x)).collect())
    }

    pub fn line(n: usize, s: usize) -> Self {
        Self::new(n, q(1), vec![BigRational::zero(); s])
    }

    /// The line class `e_i` in the exceptional divisor (so `mu_i = -1`).
    pub fn exceptional_line(n: usize, s: usize, i: usize) -> Result<Self> {
        check_index(i, s)?;
        let mut mu = vec![BigRational::zero(); s];
        mu[i - 1] = q(-1);
        Ok(Self::new(n, BigRational::zero(), mu))
    }

    pub fn s(&self) -> usize {
        self.mu.len()
    }

    /// Coordinates `(delta, mu_1, ..., mu_s)`.
    pub fn coords(&self) -> RatVec {
        let mut c = Vec::with_capacity(self.s() + 1);
        c.push(self.delta.clone());
        c.extend(self.mu.iter().cloned());
        RatVec::new(c)
    }

    /// The linear form `w` on divisor coordinates with `D . c = <coords(D), w>`.
    pub fn pairing_vector(&self) -> RatVec {
        let mut c = Vec::with_capacity(self.s() + 1);
        c.push(self.delta.clone());
        c.extend(self.mu.iter().map(|x| -x));
        RatVec::new(c)
    }

    /// Inverse of [`CurveClass::pairing_vector`].
    pub fn from_pairing_vector(n: usize, w: &[BigRational]) -> Self {
        Self::new(n, w[0].clone(), w[1..].iter().map(|x| -x).collect())
    }

    pub fn from_pairing_lattice(n: usize, w: &LatticeVec) -> Self {
        let c: Vec<BigRational> = w
            .coords()
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        Self::from_pairing_vector(n, &c)
    }

    /// `delta (n+1) - (n-1) sum mu_i`, the pairing with the anticanonical
    /// class `(n+1) H - (n-1) sum E_i`.
    pub fn anticanonical_degree(&self) -> BigRational {
        let n = self.n as i64;
        let total: BigRational = self.mu.iter().sum();
        &self.delta * q(n + 1) - total * q(n - 1)
    }

    /// The permutation-invariant form: multiplicities sorted descending.
    pub fn canonical_form(&self) -> (BigRational, Vec<BigRational>) {
        let mut mu = self.mu.clone();
        mu.sort_by(|a, b| b.cmp(a));
        (self.delta.clone(), mu)
    }

    /// Is this `2h - e_i - e_j - e_k` for some distinct `i, j, k`?
    pub fn is_conic_through_three_points(&self) -> bool {
        let (delta, mu) = self.canonical_form();
        delta == q(2)
            && mu.len() >= 3
            && mu[..3].iter().all(|x| x.is_one())
            && mu[3..].iter().all(Zero::is_zero)
    }
}

fn shape(n: usize, s: usize, other_n: usize, other_s: usize) -> Result<()> {
    if n == other_n && s == other_s {
        Ok(())
    } else {
        Err(Error::ShapeMismatch {
            n,
            s,
            other_n,
            other_s,
        })
    }
}

fn check_index(i: usize, s: usize) -> Result<()> {
    if i == 0 || i > s {
        Err(Error::IndexOutOfRange { index: i, s })
    } else {
        Ok(())
    }
}

macro_rules! linear_ops {
    ($ty:ident, $head:ident, $tail:ident) => {
        impl Add for &$ty {
            type Output = $ty;
            fn add(self, o: &$ty) -> $ty {
                assert_eq!((self.n, self.$tail.len()), (o.n, o.$tail.len()));
                $ty::new(
                    self.n,
                    &self.$head + &o.$head,
                    self.$tail
                        .iter()
                        .zip(&o.$tail)
                        .map(|(a, b)| a + b)
                        .collect(),
                )
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, o: &$ty) -> $ty {
                self + &(-o)
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty::new(
                    self.n,
                    -&self.$head,
                    self.$tail.iter().map(|a| -a).collect(),
                )
            }
        }

        impl Mul<&$ty> for &BigRational {
            type Output = $ty;
            fn mul(self, o: &$ty) -> $ty {
                $ty::new(
                    o.n,
                    self * &o.$head,
                    o.$tail.iter().map(|a| self * a).collect(),
                )
            }
        }
    };
}

linear_ops!(DivisorClass, d, m);
linear_ops!(CurveClass, delta, mu);

fn write_combination(
    f: &mut fmt::Formatter<'_>,
    head: (&BigRational, &str),
    tail: &[BigRational],
    sym: &str,
) -> fmt::Result {
    let mut terms: Vec<(BigRational, String)> = Vec::new();
    if !head.0.is_zero() {
        terms.push((head.0.clone(), head.1.to_string()));
    }
    for (i, m) in tail.iter().enumerate() {
        if !m.is_zero() {
            terms.push((-m, format!("{sym}{}", i + 1)));
        }
    }
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (k, (c, name)) in terms.iter().enumerate() {
        let neg = *c < BigRational::zero();
        let abs = if neg { -c } else { c.clone() };
        match (k, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        if abs.is_one() {
            write!(f, "{name}")?;
        } else {
            write!(f, "{abs}{name}")?;
        }
    }
    Ok(())
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, (&self.d, "H"), &self.m, "E")
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, (&self.delta, "h"), &self.mu, "e")
    }
}

/// `D . c = d delta - sum m_i mu_i`.
pub fn pair(d: &DivisorClass, c: &CurveClass) -> Result<BigRational> {
    d.same_shape(c.n, c.s())?;
    let tail: BigRational = d.m.iter().zip(&c.mu).map(|(a, b)| a * b).sum();
    Ok(&d.d * &c.delta - tail)
}

/// The Cremona transformation based at the `n+1` points of `gamma`, acting on
/// curve classes. With `a = sum_{j in gamma} mu_j - delta` the image is
/// `(delta - (n-1) a) h - sum_{j in gamma} (mu_j - a) e_j - sum_{i not in gamma} mu_i e_i`.
pub fn cremona_curve(c: &CurveClass, gamma: &IndexSet) -> Result<CurveClass> {
    gamma.check_cremona(c.n, c.s())?;
    let a: BigRational = gamma.iter().map(|j| &c.mu[j - 1]).sum::<BigRational>() - &c.delta;
    let mut mu = c.mu.clone();
    for j in gamma.iter() {
        mu[j - 1] -= &a;
    }
    let delta = &c.delta - q(c.n as i64 - 1) * &a;
    Ok(CurveClass::new(c.n, delta, mu))
}

/// The Cremona action on divisors, adjoint to [`cremona_curve`] under the
/// pairing: with `t = (n-1) d - sum_{j in gamma} m_j`, the degree and the
/// multiplicities in `gamma` all shift by `t`.
pub fn cremona_divisor(d: &DivisorClass, gamma: &IndexSet) -> Result<DivisorClass> {
    gamma.check_cremona(d.n, d.s())?;
    let t = q(d.n as i64 - 1) * &d.d - gamma.iter().map(|j| &d.m[j - 1]).sum::<BigRational>();
    let mut m = d.m.clone();
    for j in gamma.iter() {
        m[j - 1] += &t;
    }
    Ok(DivisorClass::new(d.n, &d.d + &t, m))
}

/// Breadth-first search over Cremona moves for a class satisfying `target`.
///
/// Moves are tried in lexicographic order of index sets, so the returned path
/// is the lexicographically first among the shortest ones reached. Classes
/// that agree up to permuting the points are expanded only once.
pub fn weyl_orbit_search(
    c: &CurveClass,
    target: impl Fn(&CurveClass) -> bool,
    max_depth: usize,
) -> Option<Vec<IndexSet>> {
    if target(c) {
        return Some(Vec::new());
    }
    if c.n + 1 > c.s() {
        return None;
    }
    let moves = IndexSet::all_of_size(c.s(), c.n + 1);
    let mut seen = HashSet::from([c.canonical_form()]);
    let mut frontier: VecDeque<(CurveClass, Vec<IndexSet>)> = VecDeque::from([(c.clone(), vec![])]);
    while let Some((cur, path)) = frontier.pop_front() {
        if path.len() >= max_depth {
            continue;
        }
        for g in &moves {
            let next = cremona_curve(&cur, g).expect("move has n+1 indices");
            let mut next_path = path.clone();
            next_path.push(g.clone());
            if target(&next) {
                return Some(next_path);
            }
            if seen.insert(next.canonical_form()) {
                frontier.push_back((next, next_path));
            }
        }
    }
    None
}

/// Applies a sequence of Cremona moves.
pub fn replay(c: &CurveClass, path: &[IndexSet]) -> Result<CurveClass> {
    path.iter()
        .try_fold(c.clone(), |acc, g| cremona_curve(&acc, g))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Divisor,
    Curve,
}

/// JSON form of a class: `{"n", "s", "basis", "coords"}` with rationals as
/// strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDocument {
    pub n: usize,
    pub s: usize,
    pub basis: Basis,
    pub coords: Vec<String>,
}

impl ClassDocument {
    fn new(n: usize, basis: Basis, coords: &RatVec) -> Self {
        Self {
            n,
            s: coords.dim() - 1,
            basis,
            coords: coords.coords().iter().map(ToString::to_string).collect(),
        }
    }

    fn parse_coords(&self, expected: Basis) -> Result<Vec<BigRational>> {
        if self.basis != expected {
            return Err(Error::Format(format!(
                "expected a {expected:?} class, found {:?}",
                self.basis
            )));
        }
        if self.coords.len() != self.s + 1 {
            return Err(Error::DimensionMismatch {
                expected: self.s + 1,
                got: self.coords.len(),
            });
        }
        self.coords
            .iter()
            .map(|x| {
                x.parse::<BigRational>()
                    .or_else(|_| x.parse::<BigInt>().map(BigRational::from_integer))
                    .map_err(|_| Error::Format(format!("bad rational {x:?}")))
            })
            .collect()
    }
}

impl From<&DivisorClass> for ClassDocument {
    fn from(d: &DivisorClass) -> Self {
        ClassDocument::new(d.n, Basis::Divisor, &d.coords())
    }
}

impl From<&CurveClass> for ClassDocument {
    fn from(c: &CurveClass) -> Self {
        ClassDocument::new(c.n, Basis::Curve, &c.coords())
    }
}

impl TryFrom<&ClassDocument> for DivisorClass {
    type Error = Error;
    fn try_from(doc: &ClassDocument) -> Result<Self> {
        let c = doc.parse_coords(Basis::Divisor)?;
        DivisorClass::from_coords(doc.n, &c)
    }
}

impl TryFrom<&ClassDocument> for CurveClass {
    type Error = Error;
    fn try_from(doc: &ClassDocument) -> Result<Self> {
        let c = doc.parse_coords(Basis::Curve)?;
        Ok(CurveClass::new(doc.n, c[0].clone(), c[1..].to_vec()))
    }
}
