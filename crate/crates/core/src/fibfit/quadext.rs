use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `a + b√5` with rational `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadExt {
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadExt {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadExt { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        QuadExt {
            a,
            b: BigRational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn sqrt5() -> Self {
        QuadExt::new(BigRational::zero(), BigRational::one())
    }

    /// The golden ratio `(1 + √5)/2`.
    pub fn phi() -> Self {
        let half = BigRational::new(1.into(), 2.into());
        QuadExt::new(half.clone(), half)
    }

    /// `1/φ = (√5 - 1)/2`, the limit of `F_s / F_{s+1}`.
    pub fn inv_phi() -> Self {
        let half = BigRational::new(1.into(), 2.into());
        QuadExt::new(-half.clone(), half)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// `a² - 5b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(5.into()) * &self.b * &self.b
    }

    pub fn conjugate(&self) -> Self {
        QuadExt::new(self.a.clone(), -self.b.clone())
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(QuadExt::new(&self.a / &n, -(&self.b / &n)))
    }

    /// Sign under the real embedding `√5 ≈ 2.236`, decided exactly.
    pub fn is_positive(&self) -> bool {
        let five = BigRational::from_integer(5.into());
        let a2 = &self.a * &self.a;
        let b2 = &self.b * &self.b * five;
        match (self.a.is_positive(), self.b.is_positive()) {
            _ if self.is_zero() => false,
            (true, true) => true,
            (true, false) => self.b.is_zero() || a2 > b2,
            (false, true) => self.a.is_zero() || b2 > a2,
            (false, false) => false,
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = QuadExt::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * 5f64.sqrt()
    }
}

impl From<BigRational> for QuadExt {
    fn from(a: BigRational) -> Self {
        QuadExt::rational(a)
    }
}

impl Add for &QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        QuadExt::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        QuadExt::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        let five = BigRational::from_integer(5.into());
        QuadExt::new(
            &self.a * &rhs.a + five * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

impl Div for &QuadExt {
    type Output = QuadExt;
    /// Panics on division by zero, like the rational division it wraps.
    fn div(self, rhs: &QuadExt) -> QuadExt {
        self * &rhs.inv().expect("division by zero in Q(sqrt 5)")
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::new(-self.a.clone(), -self.b.clone())
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        &self + &rhs
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        &self - &rhs
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        &self * &rhs
    }
}

impl Div for QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: QuadExt) -> QuadExt {
        &self / &rhs
    }
}

/// `a + b*sqrt(5)`; just `a` when `b = 0`.
impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{} {} {}*sqrt(5)", self.a, sign, self.b.abs())
    }
}
