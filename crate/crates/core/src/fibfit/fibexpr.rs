use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::quadext::QuadExt;
use super::spoly::SPoly;
use crate::genfunc::fibonacci;

/// `Σ_i c_i(s) · r^i` where `r` stands for `F_s / F_{s+1}`.
///
/// Distinct coefficient arrays represent distinct functions of integer `s`
/// only as far as the fits have been checked; comparisons that matter are
/// done by evaluation over a range.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "FibExprJson", try_from = "FibExprJson")]
pub struct FibExpr {
    r_terms: Vec<SPoly>,
}

impl FibExpr {
    pub fn zero() -> Self {
        FibExpr { r_terms: Vec::new() }
    }

    pub fn one() -> Self {
        FibExpr::from_r_terms(vec![SPoly::one()])
    }

    pub fn from_r_terms(mut r_terms: Vec<SPoly>) -> Self {
        while r_terms.last().is_some_and(SPoly::is_zero) {
            r_terms.pop();
        }
        FibExpr { r_terms }
    }

    /// `a(s) · r + b(s)`, the shape fitted for raw moments.
    pub fn linear(a: SPoly, b: SPoly) -> Self {
        FibExpr::from_r_terms(vec![b, a])
    }

    pub fn r_terms(&self) -> &[SPoly] {
        &self.r_terms
    }

    /// Coefficient of `r^i`.
    pub fn r_coeff(&self, i: usize) -> SPoly {
        self.r_terms.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.r_terms.is_empty()
    }

    pub fn r_degree(&self) -> Option<usize> {
        self.r_terms.len().checked_sub(1)
    }

    pub fn s_degree(&self) -> Option<usize> {
        self.r_terms.iter().filter_map(SPoly::degree).max()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        FibExpr::from_r_terms(self.r_terms.iter().map(|p| p.scale(c)).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = FibExpr::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value at `s`, given `F_s` and `F_{s+1}`.
    pub fn eval_with(&self, s: usize, f_s: &BigInt, f_s1: &BigInt) -> BigRational {
        let s = BigRational::from_integer(s.into());
        let r = BigRational::new(f_s.clone(), f_s1.clone());
        self.r_terms
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &r + c.eval(&s))
    }

    /// Exact value at `s ≥ 1`.
    pub fn eval(&self, s: usize) -> BigRational {
        self.eval_with(s, &fibonacci(s), &fibonacci(s + 1))
    }

    /// Replaces `r` by a constant, leaving a polynomial in `s` over `Q(√5)`
    /// (coefficient of `s^j` at index `j`, trailing zeros trimmed).
    pub fn substitute_r(&self, r: &QuadExt) -> Vec<QuadExt> {
        let len = self.r_terms.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
        let mut out = vec![QuadExt::zero(); len];
        let mut r_pow = QuadExt::one();
        for term in &self.r_terms {
            for (j, c) in term.coeffs().iter().enumerate() {
                out[j] = &out[j] + &(&r_pow * &QuadExt::rational(c.clone()));
            }
            r_pow = &r_pow * r;
        }
        while out.last().is_some_and(QuadExt::is_zero) {
            out.pop();
        }
        out
    }

    /// Numerator over a common denominator:
    /// the value equals `Σ c · s^j F_s^i F_{s+1}^{d-i} / (D · F_{s+1}^d)` with
    /// `d` the r-degree. Terms come as `(j, i, c)` ordered by decreasing `j`,
    /// then decreasing `i`, with zero terms omitted.
    pub fn common_denominator(&self) -> CommonDenominator {
        let denom = self
            .r_terms
            .iter()
            .flat_map(|p| p.coeffs().iter().map(|c| c.denom().clone()))
            .fold(BigInt::one(), |acc, d| acc.lcm(&d));
        let mut terms = Vec::new();
        for (i, p) in self.r_terms.iter().enumerate() {
            for (j, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let scaled = c * BigRational::from_integer(denom.clone());
                terms.push((j, i, scaled.to_integer()));
            }
        }
        terms.sort_by(|x, y| (y.0, y.1).cmp(&(x.0, x.1)));
        CommonDenominator {
            denominator: denom,
            r_degree: self.r_degree().unwrap_or(0),
            terms,
        }
    }
}

/// See [`FibExpr::common_denominator`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonDenominator {
    pub denominator: BigInt,
    pub r_degree: usize,
    /// `(power of s, power of F_s, integer coefficient)`.
    pub terms: Vec<(usize, usize, BigInt)>,
}

impl CommonDenominator {
    fn monomial(&self, j: usize, i: usize, latex: bool) -> Vec<String> {
        let fs1 = self.r_degree - i;
        let (fs, fsp1) = if latex {
            ("F_{s}", "F_{s+1}")
        } else {
            ("F[s]", "F[s+1]")
        };
        let mut factors = Vec::new();
        let pow = |base: &str, e: usize| match (e, latex) {
            (1, _) => base.to_string(),
            (_, false) => format!("{base}^{e}"),
            (_, true) => format!("{base}^{{{e}}}"),
        };
        if j > 0 {
            factors.push(pow("s", j));
        }
        if i > 0 {
            factors.push(pow(fs, i));
        }
        if fs1 > 0 {
            factors.push(pow(fsp1, fs1));
        }
        factors
    }

    fn render_numerator(&self, latex: bool) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let sep = if latex { "\\," } else { "*" };
        let mut out = String::new();
        for (n, (j, i, c)) in self.terms.iter().enumerate() {
            let factors = self.monomial(*j, *i, latex);
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mut parts = Vec::new();
            if !mag.is_one() || factors.is_empty() {
                parts.push(mag.to_string());
            }
            parts.extend(factors);
            out.push_str(&parts.join(sep));
        }
        out
    }

    fn render_denominator(&self, latex: bool) -> String {
        let mut parts = Vec::new();
        if !self.denominator.is_one() || self.r_degree == 0 {
            parts.push(self.denominator.to_string());
        }
        if self.r_degree > 0 {
            parts.extend(self.monomial(0, 0, latex));
        }
        parts.join(if latex { "\\," } else { "*" })
    }

    /// `(5*s^2*F[s+1] - 6*s*F[s] + ...)/(50*F[s+1])`.
    pub fn to_text(&self) -> String {
        format!("({})/({})", self.render_numerator(false), self.render_denominator(false))
    }

    /// `\frac{5\,s^{2}\,F_{s+1} - ...}{50\,F_{s+1}}`.
    pub fn to_latex(&self) -> String {
        format!(
            "\\frac{{{}}}{{{}}}",
            self.render_numerator(true),
            self.render_denominator(true)
        )
    }
}

fn fmt_r_power(i: usize) -> String {
    match i {
        0 => String::new(),
        1 => "*F[s]/F[s+1]".into(),
        _ => format!("*(F[s]/F[s+1])^{i}"),
    }
}

/// Highest power of `r` first: `(-3/25*s - 3/25)*F[s]/F[s+1] + (1/10*s^2 + 7/50*s)`.
impl fmt::Display for FibExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, p) in self.r_terms.iter().enumerate().rev() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({p}){}", fmt_r_power(i))?;
        }
        Ok(())
    }
}

impl Add for &FibExpr {
    type Output = FibExpr;
    fn add(self, rhs: &FibExpr) -> FibExpr {
        let len = self.r_terms.len().max(rhs.r_terms.len());
        FibExpr::from_r_terms((0..len).map(|i| &self.r_coeff(i) + &rhs.r_coeff(i)).collect())
    }
}

impl Sub for &FibExpr {
    type Output = FibExpr;
    fn sub(self, rhs: &FibExpr) -> FibExpr {
        let len = self.r_terms.len().max(rhs.r_terms.len());
        FibExpr::from_r_terms((0..len).map(|i| &self.r_coeff(i) - &rhs.r_coeff(i)).collect())
    }
}

impl Neg for &FibExpr {
    type Output = FibExpr;
    fn neg(self) -> FibExpr {
        FibExpr::from_r_terms(self.r_terms.iter().map(|p| -p).collect())
    }
}

impl Mul for &FibExpr {
    type Output = FibExpr;
    fn mul(self, rhs: &FibExpr) -> FibExpr {
        if self.is_zero() || rhs.is_zero() {
            return FibExpr::zero();
        }
        let mut terms = vec![SPoly::zero(); self.r_terms.len() + rhs.r_terms.len() - 1];
        for (i, a) in self.r_terms.iter().enumerate() {
            for (j, b) in rhs.r_terms.iter().enumerate() {
                terms[i + j] = &terms[i + j] + &(a * b);
            }
        }
        FibExpr::from_r_terms(terms)
    }
}

/// Wire form: `{"r_terms": [[["num","den"], ...], ...]}`, index `i` of
/// `r_terms` holding the coefficients of `s^0, s^1, ...` multiplying `r^i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibExprJson {
    pub r_terms: Vec<Vec<[String; 2]>>,
}

impl From<FibExpr> for FibExprJson {
    fn from(e: FibExpr) -> Self {
        FibExprJson {
            r_terms: e
                .r_terms
                .iter()
                .map(|p| {
                    p.coeffs()
                        .iter()
                        .map(|c| [c.numer().to_string(), c.denom().to_string()])
                        .collect()
                })
                .collect(),
        }
    }
}

impl TryFrom<FibExprJson> for FibExpr {
    type Error = String;
    fn try_from(j: FibExprJson) -> Result<Self, String> {
        let parse = |s: &str| s.parse::<BigInt>().map_err(|e| format!("bad integer {s:?}: {e}"));
        let mut terms = Vec::with_capacity(j.r_terms.len());
        for poly in &j.r_terms {
            let mut coeffs = Vec::with_capacity(poly.len());
            for [n, d] in poly {
                let d = parse(d)?;
                if d.is_zero() {
                    return Err("zero denominator".into());
                }
                coeffs.push(BigRational::new(parse(n)?, d));
            }
            terms.push(SPoly::from_coeffs(coeffs));
        }
        Ok(FibExpr::from_r_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn expectation() -> FibExpr {
        FibExpr::linear(SPoly::from_ratios(&[-6, -6], 50), SPoly::from_ratios(&[0, 7, 5], 50))
    }

    #[test]
    fn display_forms() {
        let e = expectation();
        assert_eq!(e.to_string(), "(-3/25*s - 3/25)*F[s]/F[s+1] + (1/10*s^2 + 7/50*s)");
        assert_eq!(
            e.common_denominator().to_text(),
            "(5*s^2*F[s+1] - 6*s*F[s] + 7*s*F[s+1] - 6*F[s])/(50*F[s+1])"
        );
        assert_eq!(
            e.common_denominator().to_latex(),
            "\\frac{5\\,s^{2}\\,F_{s+1} - 6\\,s\\,F_{s} + 7\\,s\\,F_{s+1} - 6\\,F_{s}}{50\\,F_{s+1}}"
        );
        assert_eq!(FibExpr::zero().to_string(), "0");
        assert_eq!(FibExpr::one().common_denominator().to_text(), "(1)/(1)");
    }

    #[test]
    fn evaluation() {
        let e = expectation();
        assert_eq!(e.eval(2), BigRational::new(1.into(), 2.into()));
        assert_eq!(e.eval(4), BigRational::new(9.into(), 5.into()));
        assert_eq!(e.eval(1), BigRational::zero());
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(expectation()).unwrap();
        assert_eq!(v["r_terms"][0][2], serde_json::json!(["1", "10"]));
        assert_eq!(v["r_terms"][1][0], serde_json::json!(["-3", "25"]));
        let bad = serde_json::json!({"r_terms": [[["1", "0"]]]});
        assert!(serde_json::from_value::<FibExpr>(bad).is_err());
    }

    fn arb_expr() -> impl Strategy<Value = FibExpr> {
        prop::collection::vec(prop::collection::vec((-40i64..40, 1i64..30), 0..4), 0..4).prop_map(|terms| {
            FibExpr::from_r_terms(
                terms
                    .into_iter()
                    .map(|p| SPoly::from_coeffs(p.into_iter().map(|(n, d)| BigRational::new(n.into(), d.into())).collect()))
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn json_round_trip(e in arb_expr()) {
            let text = serde_json::to_string(&e).unwrap();
            prop_assert_eq!(serde_json::from_str::<FibExpr>(&text).unwrap(), e);
        }

        #[test]
        fn arithmetic_is_pointwise(a in arb_expr(), b in arb_expr(), s in 1usize..30) {
            prop_assert_eq!((&a * &b).eval(s), a.eval(s) * b.eval(s));
            prop_assert_eq!((&a - &b).eval(s), a.eval(s) - b.eval(s));
        }

        #[test]
        fn common_denominator_is_faithful(e in arb_expr(), s in 1usize..25) {
            let cd = e.common_denominator();
            let (fs, fs1) = (fibonacci(s), fibonacci(s + 1));
            let mut num = BigInt::zero();
            for (j, i, c) in &cd.terms {
                num += c * num_traits::pow(BigInt::from(s), *j) * num_traits::pow(fs.clone(), *i)
                    * num_traits::pow(fs1.clone(), cd.r_degree - i);
            }
            let den = &cd.denominator * num_traits::pow(fs1.clone(), cd.r_degree);
            prop_assert_eq!(BigRational::new(num, den), e.eval(s));
        }
    }
}
