//! Spatial closed forms. Both cases are piecewise polynomials in `r`.
//!
//! Coefficients are integer-coefficient rational expressions in `R1`, `R2`,
//! evaluated exactly on the (dyadic) input radii. The outer branch is then
//! re-expanded, still exactly, in Chebyshev polynomials of
//! `s = (r - R2) / R1 ∈ [-1, 1]` and only those are rounded to `f64`. The
//! monomial form loses all accuracy when `R1 ≪ R2`: the branch lives on a
//! window of width `2 R1` around `R2`, where the thirteen terms cancel.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::config::{check_radius, Scenario};
use crate::error::{Error, Result};

type Q = BigRational;

/// Horner evaluation of `Σ c[n] r^n`.
fn horner(coeffs: &[f64], r: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * r + c)
}

fn q(v: f64) -> Q {
    Q::from_float(v).expect("finite radius")
}

fn k(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

fn pow(x: &Q, n: u32) -> Q {
    num_traits::pow(x.clone(), n as usize)
}

fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Chebyshev series on `[center - half, center + half]`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Chebyshev {
    center: f64,
    half: f64,
    c: [f64; 14],
}

impl Chebyshev {
    /// Exact re-expansion of `Σ b[n] rⁿ`.
    fn from_monomial(b: &[Q; 14], center: &Q, half: &Q) -> Self {
        // shifted and scaled monomials: p(center + half·s) = Σ d[j] sʲ
        let mut d: Vec<Q> = vec![Q::zero(); 14];
        for (n, bn) in b.iter().enumerate() {
            if bn.is_zero() {
                continue;
            }
            let mut binom = BigInt::one();
            for (j, dj) in d.iter_mut().enumerate().take(n + 1) {
                *dj += bn * Q::from_integer(binom.clone()) * pow(center, (n - j) as u32) * pow(half, j as u32);
                binom = binom * BigInt::from(n - j) / BigInt::from(j + 1);
            }
        }
        // sⁿ = 2^(1-n) Σ_j C(n, j) T_{n-2j}, the T_0 term halved
        let mut t: Vec<Q> = vec![Q::zero(); 14];
        for (n, dn) in d.iter().enumerate() {
            if dn.is_zero() {
                continue;
            }
            if n == 0 {
                t[0] += dn;
                continue;
            }
            let scale = Q::new(BigInt::one(), BigInt::one() << (n - 1));
            let mut binom = BigInt::one();
            for j in 0..=n / 2 {
                let mut w = dn * &scale * Q::from_integer(binom.clone());
                if 2 * j == n {
                    w /= k(2);
                }
                t[n - 2 * j] += w;
                binom = binom * BigInt::from(n - j) / BigInt::from(j + 1);
            }
        }
        let mut c = [0.0; 14];
        for (ci, ti) in c.iter_mut().zip(&t) {
            *ci = to_f64(ti);
        }
        Chebyshev { center: to_f64(center), half: to_f64(half), c }
    }

    fn eval(&self, r: f64) -> f64 {
        let s = (r - self.center) / self.half;
        let (mut b1, mut b2) = (0.0, 0.0);
        for &ck in self.c[1..].iter().rev() {
            let b0 = 2.0 * s * b1 - b2 + ck;
            b2 = b1;
            b1 = b0;
        }
        s * b1 - b2 + self.c[0]
    }
}

/// Inner branch `a2 r² + a4 r⁴ + a6 r⁶` and outer branch `Σ_{n=1}^{13} b_n rⁿ`.
///
/// `a` and `b` are the correctly rounded coefficients; the outer branch is
/// evaluated from an exactly derived Chebyshev form, not from `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pdf3DGeneralCoeffs {
    r1: f64,
    r2: f64,
    a: [f64; 3],
    b: [f64; 14],
    outer: Chebyshev,
}

impl Pdf3DGeneralCoeffs {
    pub fn new(scenario: Scenario, r1: f64, r2: f64) -> Result<Self> {
        check_general(r1, r2)?;
        let (x1, x2) = (q(r1), q(r2));
        let a = inner_coeffs(scenario, &x1, &x2).map(|v| to_f64(&v));
        let b = outer_coeffs(scenario, &x1, &x2);
        Ok(Self::assemble(r1, r2, a, &b))
    }

    /// Builds the record from explicit coefficients, each taken as the exact
    /// value of its `f64`.
    pub fn from_parts(r1: f64, r2: f64, a: [f64; 3], b: [f64; 14]) -> Result<Self> {
        check_general(r1, r2)?;
        if a.iter().chain(&b).any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput("coefficient"));
        }
        Ok(Self::assemble(r1, r2, a, &b.map(q)))
    }

    fn assemble(r1: f64, r2: f64, a: [f64; 3], b: &[Q; 14]) -> Self {
        let outer = Chebyshev::from_monomial(b, &q(r2), &q(r1));
        let mut rounded = [0.0; 14];
        for (ri, bi) in rounded.iter_mut().zip(b) {
            *ri = to_f64(bi);
        }
        Pdf3DGeneralCoeffs { r1, r2, a, b: rounded, outer }
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }

    /// `[a2, a4, a6]`.
    pub fn a(&self) -> [f64; 3] {
        self.a
    }

    /// `b()[n]` multiplies `rⁿ`; entry 0 is always zero.
    pub fn b(&self) -> [f64; 14] {
        self.b
    }

    pub fn inner_branch(&self, r: f64) -> f64 {
        let x = r * r;
        x * (self.a[0] + x * (self.a[1] + x * self.a[2]))
    }

    pub fn outer_branch(&self, r: f64) -> f64 {
        self.outer.eval(r)
    }

    pub fn pdf(&self, r: f64) -> f64 {
        if r <= 0.0 || r >= self.r1 + self.r2 {
            return 0.0;
        }
        let value = if r < self.r2 - self.r1 { self.inner_branch(r) } else { self.outer_branch(r) };
        value.max(0.0)
    }
}

fn check_general(r1: f64, r2: f64) -> Result<()> {
    check_radius(r1)?;
    check_radius(r2)?;
    if r1 >= r2 {
        return Err(Error::InvalidConfig(format!("general spatial form needs r1 < r2, got r1={r1}, r2={r2}")));
    }
    Ok(())
}

fn inner_coeffs(scenario: Scenario, r1: &Q, r2: &Q) -> [Q; 3] {
    let (p, q) = (pow(r1, 2), pow(r2, 2));
    let r2_7 = pow(r2, 7);
    match scenario {
        Scenario::S1 | Scenario::S4 => [k(3) / pow(r2, 3), Q::zero(), Q::zero()],
        Scenario::S2 => [
            (k(65) * &p * &p - k(238) * &p * &q + k(245) * &q * &q) / (k(24) * &r2_7),
            k(35) * (k(13) * &p - k(17) * &q) / (k(36) * &r2_7),
            k(455) / (k(72) * &r2_7),
        ],
        Scenario::S3 => [
            k(35) * (k(2275) * &p * &p - k(11594) * &p * &q + k(18711) * &q * &q) / (k(64152) * &r2_7),
            k(35) * (k(2015) * &p - k(4131) * &q) / (k(8748) * &r2_7),
            k(455) / (k(72) * &r2_7),
        ],
    }
}

// s1 and s2 share a table with the roles of R1 and R2 swapped.
fn one_mobile_outer(m: &Q, o: &Q) -> [Q; 14] {
    let (mm, oo) = (pow(m, 2), pow(o, 2));
    let den = pow(m, 7) * pow(o, 3);
    let diff = &oo - &mm;
    let mut b: [Q; 14] = std::array::from_fn(|_| Q::zero());
    b[1] = k(35) * (k(29) * &mm - k(13) * &oo) * pow(&diff, 3) / (k(2304) * &den);
    b[2] = (k(72) * pow(m, 7) + k(245) * pow(m, 4) * pow(o, 3) - k(238) * &mm * pow(o, 5) + k(65) * pow(o, 7))
        / (k(48) * &den);
    b[3] = k(35) * &diff * (k(25) * &mm * &mm + k(88) * &mm * &oo - k(65) * &oo * &oo) / (k(576) * &den);
    b[4] = k(35) * (k(13) * &oo - k(17) * &mm) / (k(72) * pow(m, 7));
    b[5] = k(35) * (k(7) * &mm * &mm + k(34) * &mm * &oo - k(65) * &oo * &oo) / (k(384) * &den);
    b[6] = k(455) / (k(144) * pow(m, 7));
    b[7] = k(-7) * (k(17) * &mm + k(65) * &oo) / (k(576) * &den);
    b[9] = k(65) / (k(2304) * &den);
    b
}

fn outer_coeffs(scenario: Scenario, r1: &Q, r2: &Q) -> [Q; 14] {
    let (p, q) = (pow(r1, 2), pow(r2, 2));
    match scenario {
        Scenario::S1 => one_mobile_outer(r1, r2),
        // The s2 column is the s1 column with R1 and R2 exchanged.
        Scenario::S2 => one_mobile_outer(r2, r1),
        Scenario::S4 => {
            let den = pow(r1, 3) * pow(r2, 3);
            let mut b: [Q; 14] = std::array::from_fn(|_| Q::zero());
            b[1] = k(-9) * pow(&(&q - &p), 2) / (k(16) * &den);
            b[2] = k(3) * (pow(r1, 3) + pow(r2, 3)) / (k(2) * &den);
            b[3] = k(-9) * (&p + &q) / (k(8) * &den);
            b[5] = k(3) / (k(16) * &den);
            b
        }
        Scenario::S3 => {
            let den = pow(r1, 7) * pow(r2, 7);
            let (p2, q2) = (pow(&p, 2), pow(&q, 2));
            let mut b: [Q; 14] = std::array::from_fn(|_| Q::zero());
            b[1] = k(245) * pow(&(&q - &p), 4) * (k(1442) * &p * &q - k(481) * (&p2 + &q2)) / (k(1_492_992) * &den);
            b[2] = k(35)
                * (k(2275) * (pow(r1, 11) + pow(r2, 11)) - k(11594) * (pow(r1, 9) * &q + &p * pow(r2, 9))
                    + k(18711) * (pow(r1, 7) * &q2 + &p2 * pow(r2, 7)))
                / (k(128_304) * &den);
            b[3] = k(1225) * pow(&(&q - &p), 2) * (&p + &q) * (k(350) * &p * &q - k(143) * (&p2 + &q2))
                / (k(82_944) * &den);
            b[4] = k(35) * (k(2015) * (pow(r1, 9) + pow(r2, 9)) - k(4131) * (pow(r1, 7) * &q + &p * pow(r2, 7)))
                / (k(17_496) * &den);
            b[5] = k(1225)
                * (k(1700) * (&p2 * &p * &q + &p * &q2 * &q) + k(882) * &p2 * &q2 - k(1885) * (&p2 * &p2 + &q2 * &q2))
                / (k(497_664) * &den);
            b[6] = k(455) * (pow(r1, 7) + pow(r2, 7)) / (k(144) * &den);
            b[7] = k(245) * (&p + &q) * (k(554) * &p * &q - k(1625) * (&p2 + &q2)) / (k(373_248) * &den);
            b[9] = k(35) * (k(455) * (&p2 + &q2) + k(578) * &p * &q) / (k(165_888) * &den);
            b[11] = k(-7735) * (&p + &q) / (k(746_496) * &den);
            b[13] = k(29575) / (k(49_268_736) * &den);
            b
        }
    }
}

/// Equal-radius polynomial `Σ_{n=2}^{13} c_n rⁿ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pdf3DEqualCoeffs {
    pub radius: f64,
    /// `c[n]` multiplies `rⁿ`.
    pub c: [f64; 14],
}

impl Pdf3DEqualCoeffs {
    pub fn new(scenario: Scenario, radius: f64) -> Result<Self> {
        check_radius(radius)?;
        let big = radius;
        let mut c = [0.0; 14];
        match scenario {
            Scenario::S1 | Scenario::S2 => {
                c[2] = 3.0 / big.powi(3);
                c[4] = -35.0 / (18.0 * big.powi(5));
                c[5] = -35.0 / (16.0 * big.powi(6));
                c[6] = 455.0 / (144.0 * big.powi(7));
                c[7] = -287.0 / (288.0 * big.powi(8));
                c[9] = 65.0 / (2304.0 * big.powi(10));
            }
            Scenario::S3 => {
                c[2] = 41090.0 / (8019.0 * big.powi(3));
                c[4] = -18515.0 / (2187.0 * big.powi(5));
                c[5] = 1225.0 / (972.0 * big.powi(6));
                c[6] = 455.0 / (72.0 * big.powi(7));
                c[7] = -82565.0 / (23328.0 * big.powi(8));
                c[9] = 1085.0 / (3456.0 * big.powi(10));
                c[11] = -7735.0 / (373_248.0 * big.powi(12));
                c[13] = 29575.0 / (49_268_736.0 * big.powi(14));
            }
            Scenario::S4 => {
                c[2] = 3.0 / big.powi(3);
                c[3] = -9.0 / (4.0 * big.powi(4));
                c[5] = 3.0 / (16.0 * big.powi(6));
            }
        }
        Ok(Pdf3DEqualCoeffs { radius, c })
    }

    pub fn formula(&self, r: f64) -> f64 {
        horner(&self.c, r)
    }

    pub fn pdf(&self, r: f64) -> f64 {
        if r <= 0.0 || r >= 2.0 * self.radius {
            return 0.0;
        }
        self.formula(r).max(0.0)
    }
}

pub fn pdf_3d_general(scenario: Scenario, r1: f64, r2: f64, r: f64) -> Result<f64> {
    Ok(Pdf3DGeneralCoeffs::new(scenario, r1, r2)?.pdf(r))
}

pub fn pdf_3d_equal(scenario: Scenario, radius: f64, r: f64) -> Result<f64> {
    Ok(Pdf3DEqualCoeffs::new(scenario, radius)?.pdf(r))
}
