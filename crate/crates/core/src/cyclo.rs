//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! Elements are dense coefficient vectors of length `φ(n)` in the power basis
//! `1, ζ, …, ζ^{φ(n)-1}`, reduced modulo the `n`-th cyclotomic polynomial, so
//! equality and zero-testing are exact. Most of the crate works in the field of
//! order `2p` where `ζ = e^{iπ/p}`; the modular side also needs `i`, which for
//! odd `p` lives in the field of order `lcm(2p, 4)`. [`CycloNum::lift`] moves
//! values between the two.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Static data for `Q(ζ_n)`.
#[derive(Debug)]
pub struct Field {
    order: u32,
    degree: usize,
    /// Coefficients of `Φ_n`, lowest degree first.
    phi: Vec<i64>,
    /// `ζ^k mod Φ_n` for `0 <= k < order`.
    powers: Vec<Vec<i64>>,
}

impl Field {
    /// Returns the shared field of root order `n` (`ζ_n = e^{2πi/n}`).
    pub fn of_order(n: u32) -> Arc<Field> {
        assert!(n >= 1, "root order must be positive");
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Field>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("field cache poisoned");
        guard
            .entry(n)
            .or_insert_with(|| Arc::new(Field::build(n)))
            .clone()
    }

    fn build(n: u32) -> Field {
        let phi = cyclotomic_poly(n);
        let degree = phi.len() - 1;
        // ζ^k for k < n by repeated multiplication with x and reduction.
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            let top = cur[degree - 1];
            let mut next = vec![0i64; degree];
            next[1..degree].copy_from_slice(&cur[..degree - 1]);
            if top != 0 {
                for (c, &f) in next.iter_mut().zip(&phi) {
                    *c -= top * f;
                }
            }
            cur = next;
        }
        Field {
            order: n,
            degree,
            phi,
            powers,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Euler totient of the order, i.e. the field degree.
    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// Integer coefficients of the `n`-th cyclotomic polynomial.
fn cyclotomic_poly(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = exact_div_monic(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn exact_div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let dq = rem.len() - 1 - db;
    let mut q = vec![0i64; dq + 1];
    for k in (0..=dq).rev() {
        let c = rem[k + db];
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            rem[k + j] -= c * bj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// An element of `Q(ζ_n)`.
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<Field>,
    coeffs: Vec<BigRational>,
}

impl CycloNum {
    pub fn zero(order: u32) -> Self {
        let field = Field::of_order(order);
        let coeffs = vec![BigRational::zero(); field.degree];
        CycloNum { field, coeffs }
    }

    pub fn one(order: u32) -> Self {
        Self::from_int(order, 1)
    }

    pub fn from_int(order: u32, k: i64) -> Self {
        Self::from_rational(order, BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_frac(order: u32, num: i64, den: i64) -> Self {
        Self::from_rational(order, BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(order: u32, r: BigRational) -> Self {
        let mut x = Self::zero(order);
        x.coeffs[0] = r;
        x
    }

    /// `ζ_n^k` for any integer `k`.
    pub fn root(order: u32, k: i64) -> Self {
        let field = Field::of_order(order);
        let idx = k.rem_euclid(order as i64) as usize;
        let coeffs = field.powers[idx]
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        CycloNum { field, coeffs }
    }

    /// Builds an element from explicit power-basis coefficients (reducing if too long).
    pub fn from_coeffs(order: u32, coeffs: Vec<BigRational>) -> Self {
        let field = Field::of_order(order);
        reduce(field, coeffs)
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    /// The integer value, if the element is a rational integer.
    pub fn to_integer(&self) -> Option<i64> {
        self.to_rational()
            .filter(|r| r.is_integer())
            .and_then(|r| r.to_integer().to_i64())
    }

    /// Embeds into `Q(ζ_m)` via `ζ_n = ζ_m^{m/n}`; `m` must be a multiple of `n`.
    pub fn lift(&self, m: u32) -> Result<Self> {
        let n = self.order();
        if m % n != 0 {
            return Err(Error::Parameter(format!(
                "cannot lift from order {n} to order {m}"
            )));
        }
        let step = (m / n) as i64;
        let mut out = Self::zero(m);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out += &(&Self::root(m, step * k as i64) * c);
            }
        }
        Ok(out)
    }

    /// Complex conjugate (the Galois automorphism `ζ ↦ ζ^{-1}`).
    pub fn conj(&self) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out += &(&Self::root(n, -(k as i64)) * c);
            }
        }
        out
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("division by zero in cyclotomic field".into()));
        }
        let phi: Vec<BigRational> = self
            .field
            .phi
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        let inv = poly_inverse_mod(&self.coeffs, &phi);
        Ok(reduce(self.field.clone(), inv))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        check_same(self, rhs)?;
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycloNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(k.into()))
    }

    /// Evaluates at `ζ_n = e^{2πi/n}` in double precision.
    ///
    /// `precision` is the requested bit precision and must be at least 53; the
    /// evaluation is carried out in IEEE double, which meets the bound for 53.
    pub fn embed_complex(&self, precision: u32) -> Result<Complex64> {
        if precision < 53 {
            return Err(Error::Parameter(format!(
                "precision must be at least 53 bits, got {precision}"
            )));
        }
        Ok(self.to_complex())
    }

    /// Double-precision embedding at `ζ_n = e^{2πi/n}`.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.order() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let ang = 2.0 * std::f64::consts::PI * k as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), ang)
            })
            .sum()
    }

    /// Comma-separated power-basis coefficients, e.g. `"1,-1/2,0,0"`.
    pub fn to_cyclo_string(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn check_same(a: &CycloNum, b: &CycloNum) -> Result<()> {
    if a.order() != b.order() {
        return Err(Error::Parameter(format!(
            "mismatched cyclotomic orders {} and {}",
            a.order(),
            b.order()
        )));
    }
    Ok(())
}

fn reduce(field: Arc<Field>, coeffs: Vec<BigRational>) -> CycloNum {
    let d = field.degree;
    let n = field.order as usize;
    let mut out = vec![BigRational::zero(); d];
    for (k, c) in coeffs.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if k < d {
            out[k] += c;
        } else {
            for (o, &w) in out.iter_mut().zip(&field.powers[k % n]) {
                if w != 0 {
                    *o += &c * BigRational::from_integer(w.into());
                }
            }
        }
    }
    CycloNum { field, coeffs: out }
}

/// Field operation selector for [`field_arithmetic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary operation; rejects operands from different fields.
pub fn field_arithmetic(a: &CycloNum, b: &CycloNum, op: FieldOp) -> Result<CycloNum> {
    check_same(a, b)?;
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => a.checked_div(b)?,
    })
}

/// `q = ζ_{2p} = e^{iπ/p}`.
pub fn q(p: u32) -> CycloNum {
    CycloNum::root(2 * p, 1)
}

/// `{k}_q = q^k - q^{-k}` in `Q(ζ_{2p})`.
pub fn brace(k: i64, p: u32) -> CycloNum {
    let n = 2 * p;
    &CycloNum::root(n, k) - &CycloNum::root(n, -k)
}

/// `2cos(πk/p) = q^k + q^{-k}`.
pub fn two_cos(k: i64, p: u32) -> CycloNum {
    let n = 2 * p;
    &CycloNum::root(n, k) + &CycloNum::root(n, -k)
}

/// `sin(πa/p) / sin(πb/p)` exactly.
pub fn sin_ratio(a: i64, b: i64, p: u32) -> Result<CycloNum> {
    if b.rem_euclid(p as i64) == 0 {
        return Err(Error::Arithmetic(format!(
            "sin_ratio: sin(π·{b}/{p}) vanishes"
        )));
    }
    brace(a, p).checked_div(&brace(b, p))
}

/// `(-1)^k` as an `i64`.
pub fn sign_pow(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNum {}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("({c})ζ"),
                _ => format!("({c})ζ^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        assert_eq!(self.order(), rhs.order(), "mismatched cyclotomic orders");
        CycloNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        assert_eq!(self.order(), rhs.order(), "mismatched cyclotomic orders");
        CycloNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        assert_eq!(self.order(), rhs.order(), "mismatched cyclotomic orders");
        let d = self.field.degree;
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        reduce(self.field.clone(), prod)
    }
}

impl<'a> Mul<&'a BigRational> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &BigRational) -> CycloNum {
        self.scale(rhs)
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl Add for CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: CycloNum) -> CycloNum {
        &self + &rhs
    }
}

impl Sub for CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: CycloNum) -> CycloNum {
        &self - &rhs
    }
}

impl Mul for CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: CycloNum) -> CycloNum {
        &self * &rhs
    }
}

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &CycloNum) {
        assert_eq!(self.order(), rhs.order(), "mismatched cyclotomic orders");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

// Dense polynomial helpers over Q for the extended Euclidean algorithm.

fn trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() <= db {
        return (vec![BigRational::zero()], rem);
    }
    let mut quo = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quo.len()).rev() {
        let c = &rem[k + db] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
        }
        quo[k] = c;
    }
    rem.truncate(db.max(1));
    trim(&mut rem);
    (quo, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn is_zero_poly(p: &[BigRational]) -> bool {
    p.iter().all(Zero::is_zero)
}

/// Inverse of `a` modulo the irreducible `m`.
fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    // Invariant: s_i * a ≡ r_i (mod m).
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while !is_zero_poly(&r1) {
        let (quo, rem) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&quo, &s1));
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is a nonzero constant since m is irreducible and a ≢ 0.
    let c = r0[0].clone();
    debug_assert!(r0.len() == 1 && !c.is_zero());
    s0.iter().map(|x| x / &c).collect()
}

/// Helper used in tests and diagnostics: `|coeff|` sum as f64.
pub fn coeff_l1(x: &CycloNum) -> f64 {
    x.coeffs
        .iter()
        .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(Field::of_order(10).degree(), 4);
    }

    #[test]
    fn root_times_inverse_root_is_one() {
        let p = 3;
        let z = q(p);
        let z5 = CycloNum::root(2 * p, 2 * p as i64 - 1);
        assert!((&z * &z5).is_one());
    }

    #[test]
    fn i_plus_minus_i_is_zero() {
        assert!(two_cos(1, 2).is_zero());
    }

    #[test]
    fn self_division_is_one() {
        let x = brace(1, 5);
        assert!(field_arithmetic(&x, &x, FieldOp::Div).unwrap().is_one());
    }

    #[test]
    fn mismatched_orders_rejected() {
        let a = CycloNum::one(4);
        let b = CycloNum::one(6);
        assert!(matches!(
            field_arithmetic(&a, &b, FieldOp::Add),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn division_by_zero_rejected() {
        let a = CycloNum::one(6);
        let z = CycloNum::zero(6);
        assert!(matches!(a.checked_div(&z), Err(Error::Arithmetic(_))));
    }

    #[test]
    fn sin_ratio_examples() {
        assert!(sin_ratio(2, 1, 3).unwrap().is_one());
        assert!(sin_ratio(0, 1, 4).unwrap().is_zero());
        let v = sin_ratio(2, 1, 4).unwrap().to_complex();
        let direct = (std::f64::consts::PI / 2.0).sin() / (std::f64::consts::PI / 4.0).sin();
        assert!((v.re - direct).abs() < 1e-12 && v.im.abs() < 1e-12);
        assert!(matches!(sin_ratio(1, 3, 3), Err(Error::Arithmetic(_))));
    }

    #[test]
    fn embedding_examples() {
        let one = CycloNum::one(4).embed_complex(53).unwrap();
        assert_eq!(one, Complex64::new(1.0, 0.0));
        let z = q(2).embed_complex(53).unwrap();
        assert!(z.re.abs() < 1e-15 && (z.im - 1.0).abs() < 1e-15);
        let golden = two_cos(1, 5).to_complex();
        let direct = 2.0 * (std::f64::consts::PI / 5.0).cos();
        assert!((golden.re - direct).abs() < 1e-12);
        assert!((golden.re - 1.6180339887).abs() < 1e-9);
        assert!(q(3).embed_complex(32).is_err());
    }

    #[test]
    fn lift_preserves_value() {
        let x = sin_ratio(2, 1, 5).unwrap();
        let y = x.lift(20).unwrap();
        assert!((x.to_complex() - y.to_complex()).norm() < 1e-12);
        let i = CycloNum::root(12, 3);
        assert!((&i * &i).to_integer() == Some(-1));
        assert!(x.lift(7).is_err());
    }

    #[test]
    fn full_period_round_trip() {
        for p in 2..8u32 {
            let v = CycloNum::root(2 * p, 2 * p as i64).to_complex();
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
    }

    fn arb_cyclo(p: u32) -> impl Strategy<Value = CycloNum> {
        let d = Field::of_order(2 * p).degree();
        proptest::collection::vec((-1000i64..1000, 1i64..50), d).prop_map(move |v| {
            CycloNum::from_coeffs(
                2 * p,
                v.into_iter()
                    .map(|(a, b)| BigRational::new(a.into(), b.into()))
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn sin_ratio_reciprocal(p in 2u32..9, a in 1i64..40, b in 1i64..40) {
            prop_assume!(a % p as i64 != 0 && b % p as i64 != 0);
            let x = sin_ratio(a, b, p).unwrap();
            let y = sin_ratio(b, a, p).unwrap();
            prop_assert!((&x * &y).is_one());
        }

        #[test]
        fn sin_ratio_reflection(p in 2u32..9, a in 0i64..40, b in 1i64..40) {
            prop_assume!(b % p as i64 != 0);
            prop_assert_eq!(sin_ratio(p as i64 - a, b, p).unwrap(), sin_ratio(a, b, p).unwrap());
        }

        #[test]
        fn embedding_is_multiplicative(x in arb_cyclo(5), y in arb_cyclo(5)) {
            let lhs = (&x * &y).to_complex();
            let rhs = x.to_complex() * y.to_complex();
            prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
        }

        #[test]
        fn field_axioms(x in arb_cyclo(6), y in arb_cyclo(6), z in arb_cyclo(6)) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            if !x.is_zero() {
                prop_assert!((&x * &x.inv().unwrap()).is_one());
            }
        }
    }
}
