//! Exact characteristic-polynomial machinery for `Δ(K_{n_1,...,n_t})`.
//!
//! Everything here is integer (or dyadic rational) arithmetic. The
//! characteristic polynomial factors as
//!
//! ```text
//! P(x) = (x+4)^(n-t) (x+1)^(h-1) p(x)            (h >= 1)
//! P(x) = (x+4)^(n-t) det(xI - B)                 (h = 0)
//! ```
//!
//! and the residual further splits off `(x - (3m-4))^(k-1)` for every part
//! size `m` occurring `k` times, leaving the [`SecularForm`] numerator whose
//! roots are all simple.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::Partition;

pub type ExactInt = BigInt;
pub type ExactRational = BigRational;

/// Polynomial with integer coefficients, ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x + c`
    pub fn x_plus(c: i64) -> Self {
        Self::from_i64(&[c, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from(c.clone())
            })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Coefficients as decimal strings, ascending.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        IntPolynomial::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = deg == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match deg {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{deg}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("IntPolynomial", 2)?;
        st.serialize_field("coeffs", &self.coeff_strings())?;
        st.serialize_field("ascending", &true)?;
        st.end()
    }
}

/// `Π_i (x - c_i) - Σ_i w_i Π_{j≠i} (x - c_j)`
fn product_minus_weighted(terms: &[(i64, i64)]) -> IntPolynomial {
    let linear: Vec<IntPolynomial> = terms
        .iter()
        .map(|&(c, _)| IntPolynomial::x_plus(-c))
        .collect();
    let full = linear.iter().fold(IntPolynomial::one(), |acc, f| &acc * f);
    let mut sum = IntPolynomial::zero();
    for (i, &(_, w)) in terms.iter().enumerate() {
        let others = linear
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(IntPolynomial::one(), |acc, (_, f)| &acc * f);
        sum = &sum + &others.scale(&BigInt::from(w));
    }
    &full - &sum
}

fn pole(size: usize) -> i64 {
    3 * size as i64 - 4
}

/// The `t × t` matrix `B` with diagonal `4(n_i - 1)` and row `i` off-diagonal `n_i`.
pub fn reduced_matrix_b(p: &Partition) -> Vec<Vec<i64>> {
    reduced_matrix_of(p.parts())
}

fn reduced_matrix_of(parts: &[usize]) -> Vec<Vec<i64>> {
    parts
        .iter()
        .enumerate()
        .map(|(i, &ni)| {
            (0..parts.len())
                .map(|j| {
                    if i == j {
                        4 * (ni as i64 - 1)
                    } else {
                        ni as i64
                    }
                })
                .collect()
        })
        .collect()
}

fn det_b_of(parts: &[usize]) -> IntPolynomial {
    let terms: Vec<(i64, i64)> = parts.iter().map(|&m| (pole(m), m as i64)).collect();
    product_minus_weighted(&terms)
}

/// `det(xI_t - B_t)`, monic of degree `t`.
pub fn det_b_charpoly(p: &Partition) -> IntPolynomial {
    det_b_of(p.parts())
}

/// `p(G,x) = (x+1) det(xI - B_s) - h Π_{i≤s} (x+4-3n_i)`, monic of degree `s+1`.
pub fn reduced_poly_p(p: &Partition) -> Result<IntPolynomial> {
    let h = p.h();
    if h == 0 {
        return Err(Error::NoSingletonParts);
    }
    let big = p.nonsingleton_parts();
    let x_plus_one = IntPolynomial::x_plus(1);
    let shifted = big.iter().fold(IntPolynomial::one(), |acc, &m| {
        &acc * &IntPolynomial::x_plus(-pole(m))
    });
    let lhs = &x_plus_one * &det_b_of(big);
    Ok(&lhs - &shifted.scale(&BigInt::from(h)))
}

/// `(x+4)^(n-t) (x+1)^(h-1) · residual`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactoredCharPoly {
    /// Exponent of `(x+4)`.
    pub minus_four_mult: usize,
    /// Exponent of `(x+1)`; zero when `h <= 1`.
    pub minus_one_mult: usize,
    /// `det(xI - B_t)` when `h = 0`, otherwise `p(G,x)`.
    pub residual: IntPolynomial,
}

impl FactoredCharPoly {
    pub fn degree(&self) -> usize {
        self.minus_four_mult + self.minus_one_mult + self.residual.degree().unwrap_or(0)
    }

    pub fn expand(&self) -> IntPolynomial {
        let a = IntPolynomial::x_plus(4).pow(self.minus_four_mult);
        let b = IntPolynomial::x_plus(1).pow(self.minus_one_mult);
        &(&a * &b) * &self.residual
    }

    /// Evaluates the product form at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let a = num_traits::pow(x + 4, self.minus_four_mult);
        let b = num_traits::pow(x + 1, self.minus_one_mult);
        a * b * self.residual.eval(x)
    }
}

pub fn char_poly_factored(p: &Partition) -> FactoredCharPoly {
    let (n, t, h) = (p.n(), p.t(), p.h());
    let residual = if h == 0 {
        det_b_charpoly(p)
    } else {
        reduced_poly_p(p).expect("h >= 1")
    };
    FactoredCharPoly {
        minus_four_mult: n - t,
        minus_one_mult: h.saturating_sub(1),
        residual,
    }
}

/// `det Δ = (-4)^(n-t) [Σ_i n_i Π_{j≠i} (3n_j-4) + Π_i (3n_i-4)]`.
pub fn det_delta_exact(p: &Partition) -> BigInt {
    let factors: Vec<BigInt> = p.parts().iter().map(|&m| BigInt::from(pole(m))).collect();
    let full: BigInt = factors.iter().product();
    let sum: BigInt = p
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &ni)| {
            let others: BigInt = factors
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, f)| f.clone())
                .product();
            BigInt::from(ni) * others
        })
        .sum();
    num_traits::pow(BigInt::from(-4), p.n() - p.t()) * (sum + full)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RootSign {
    Positive,
    Zero,
    Negative,
}

impl RootSign {
    fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Greater => Self::Positive,
            Ordering::Equal => Self::Zero,
            Ordering::Less => Self::Negative,
        }
    }
}

/// Sign of `λ_{s+1}`, decided by comparing `(h-1) Π(3n_i-4)` against
/// `Σ n_i Π_{j≠i}(3n_j-4)` over the `s` non-singleton parts.
pub fn lambda_s1_sign(p: &Partition) -> Result<RootSign> {
    let (h, s) = (p.h(), p.s());
    if h == 0 || s == 0 {
        return Err(Error::NotApplicable(format!(
            "needs h >= 1 and s >= 1, got h = {h}, s = {s}"
        )));
    }
    let big = p.nonsingleton_parts();
    let factors: Vec<BigInt> = big.iter().map(|&m| BigInt::from(pole(m))).collect();
    let lhs = BigInt::from(h - 1) * factors.iter().product::<BigInt>();
    let rhs: BigInt = big
        .iter()
        .enumerate()
        .map(|(i, &ni)| {
            BigInt::from(ni)
                * factors
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, f)| f.clone())
                    .product::<BigInt>()
        })
        .sum();
    Ok(RootSign::from_ordering(lhs.cmp(&rhs)))
}

/// Exact rational `mant / 2^shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    pub mant: BigInt,
    pub shift: u32,
}

impl Dyadic {
    pub fn integer(v: i64) -> Self {
        Self {
            mant: BigInt::from(v),
            shift: 0,
        }
    }

    fn aligned(&self, shift: u32) -> BigInt {
        &self.mant << (shift - self.shift)
    }

    pub fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        let shift = a.shift.max(b.shift);
        Dyadic {
            mant: a.aligned(shift) + b.aligned(shift),
            shift: shift + 1,
        }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mant.clone(), BigInt::one() << self.shift)
    }

    /// `b - a` as a rational.
    pub fn width(a: &Dyadic, b: &Dyadic) -> BigRational {
        b.to_rational() - a.to_rational()
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let shift = self.shift.max(other.shift);
        self.aligned(shift).cmp(&other.aligned(shift))
    }
}

/// Deflated residual of the characteristic polynomial:
///
/// ```text
/// F(x) = Π_m (x - c_m) - Σ_m w_m Π_{m'≠m} (x - c_{m'})
/// ```
///
/// over the distinct part sizes `m` (singletons included), with poles
/// `c_m = 3m - 4` and weights `w_m = k_m · m`. `F` has exactly one simple
/// root between consecutive poles and one above the largest pole.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecularForm {
    /// `(pole, weight)` in ascending pole order.
    poles: Vec<(i64, i64)>,
    /// `(value, multiplicity)` of the eigenvalues `3m-4` removed by deflation.
    deflated: Vec<(i64, usize)>,
}

impl SecularForm {
    pub fn from_partition(p: &Partition) -> Self {
        let counts = p.size_counts();
        let poles = counts
            .iter()
            .rev()
            .map(|&(m, k)| (pole(m), (k * m) as i64))
            .collect();
        let deflated = counts
            .iter()
            .filter(|&&(_, k)| k >= 2)
            .map(|&(m, k)| (pole(m), k - 1))
            .collect();
        Self { poles, deflated }
    }

    pub fn poles(&self) -> &[(i64, i64)] {
        &self.poles
    }

    /// Number of simple roots.
    pub fn degree(&self) -> usize {
        self.poles.len()
    }

    pub fn deflated(&self) -> &[(i64, usize)] {
        &self.deflated
    }

    pub fn numerator(&self) -> IntPolynomial {
        product_minus_weighted(&self.poles)
    }

    /// Sign of `F(x)`, computed exactly.
    pub fn sign_at(&self, x: &Dyadic) -> Ordering {
        // F(a / 2^k) · 2^(k·d) with every factor scaled by 2^k
        let scale = BigInt::one() << x.shift;
        let factors: Vec<BigInt> = self
            .poles
            .iter()
            .map(|&(c, _)| &x.mant - BigInt::from(c) * &scale)
            .collect();
        let d = factors.len();
        let mut prefix = vec![BigInt::one(); d + 1];
        for i in 0..d {
            prefix[i + 1] = &prefix[i] * &factors[i];
        }
        let mut suffix = vec![BigInt::one(); d + 1];
        for i in (0..d).rev() {
            suffix[i] = &suffix[i + 1] * &factors[i];
        }
        let mut value = prefix[d].clone();
        for (i, &(_, w)) in self.poles.iter().enumerate() {
            value -= BigInt::from(w) * &scale * &prefix[i] * &suffix[i + 1];
        }
        value.sign_ordering()
    }

    pub fn sign_at_int(&self, x: i64) -> Ordering {
        self.sign_at(&Dyadic::integer(x))
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}
