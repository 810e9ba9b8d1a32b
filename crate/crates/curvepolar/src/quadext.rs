//! Exact arithmetic in a real quadratic field ℚ(√m).
//!
//! Numbers are stored as `a + b·√m` with rational `a`, `b` and a positive
//! integer radicand `m`. The radicand is kept as given (not reduced to a
//! squarefree core); mixed-radicand arithmetic is only allowed when one side
//! is rational (`b = 0`).

use crate::poly::{Poly, Rat};
use crate::uni::{rat_sqrt, rat_to_f64};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadExt {
    pub a: Rat,
    pub b: Rat,
    pub m: BigInt,
}

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

impl QuadExt {
    pub fn new(a: Rat, b: Rat, m: BigInt) -> Self {
        assert!(m.is_positive(), "radicand must be positive");
        QuadExt { a, b, m }
    }

    pub fn from_rat(a: Rat) -> Self {
        QuadExt {
            a,
            b: Rat::zero(),
            m: BigInt::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        // a = -b√m with b ≠ 0 would force √m rational; such radicands are
        // not supposed to reach here, but handle them anyway
        if self.b.is_zero() {
            return self.a.is_zero();
        }
        if self.a.is_zero() {
            return self.b.is_zero() || rat_sqrt(&Rat::from_integer(self.m.clone())).is_some();
        }
        self.sign() == 0
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Exact sign of `a + b√m`.
    pub fn sign(&self) -> i32 {
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // a and b√m pull in opposite directions; compare a² with b²m
        let d = &(&self.a * &self.a) - &(&self.b * &self.b) * Rat::from_integer(self.m.clone());
        sa * rat_sign(&d)
    }

    pub fn conj(&self) -> QuadExt {
        QuadExt {
            a: self.a.clone(),
            b: -self.b.clone(),
            m: self.m.clone(),
        }
    }

    fn join(&self, other: &QuadExt) -> BigInt {
        if self.b.is_zero() {
            other.m.clone()
        } else if other.b.is_zero() {
            self.m.clone()
        } else {
            assert_eq!(self.m, other.m, "mixed radicands");
            self.m.clone()
        }
    }

    pub fn add(&self, other: &QuadExt) -> QuadExt {
        let m = self.join(other);
        QuadExt::new(&self.a + &other.a, &self.b + &other.b, m)
    }

    pub fn sub(&self, other: &QuadExt) -> QuadExt {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt {
            a: -self.a.clone(),
            b: -self.b.clone(),
            m: self.m.clone(),
        }
    }

    pub fn mul(&self, other: &QuadExt) -> QuadExt {
        let m = self.join(other);
        let mr = Rat::from_integer(m.clone());
        QuadExt::new(
            &(&self.a * &other.a) + &(&self.b * &other.b) * &mr,
            &(&self.a * &other.b) + &(&self.b * &other.a),
            m,
        )
    }

    pub fn scale(&self, k: &Rat) -> QuadExt {
        QuadExt {
            a: &self.a * k,
            b: &self.b * k,
            m: self.m.clone(),
        }
    }

    pub fn inv(&self) -> QuadExt {
        assert!(!self.is_zero());
        // 1/(a+b√m) = (a−b√m)/(a²−b²m)
        let n = &(&self.a * &self.a) - &(&self.b * &self.b) * Rat::from_integer(self.m.clone());
        self.conj().scale(&(Rat::one() / n))
    }

    pub fn div(&self, other: &QuadExt) -> QuadExt {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: u32) -> QuadExt {
        let mut acc = QuadExt::from_rat(Rat::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Square root inside the same field, when it exists:
    /// `(α + β√m)² = a + b√m` via the resolvent `z² − az + b²m/4`.
    pub fn sqrt_in_field(&self) -> Option<QuadExt> {
        if self.sign() < 0 {
            return None;
        }
        if self.b.is_zero() {
            // √r: rational square, or r = s²·m
            if let Some(s) = rat_sqrt(&self.a) {
                return Some(QuadExt::from_rat(s));
            }
            let mr = Rat::from_integer(self.m.clone());
            if let Some(s) = rat_sqrt(&(&self.a / &mr)) {
                return Some(QuadExt::new(Rat::zero(), s, self.m.clone()));
            }
            return None;
        }
        let mr = Rat::from_integer(self.m.clone());
        let disc = &(&self.a * &self.a) - &(&self.b * &self.b) * &mr;
        let sd = rat_sqrt(&disc)?;
        for z in [(&self.a + &sd) / rat(2), (&self.a - &sd) / rat(2)] {
            if let Some(alpha) = rat_sqrt(&z) {
                if alpha.is_zero() {
                    continue;
                }
                let beta = &self.b / (&alpha * rat(2));
                let cand = QuadExt::new(alpha, beta, self.m.clone());
                if cand.mul(&cand) == *self {
                    let c = if cand.sign() >= 0 { cand } else { cand.neg() };
                    return Some(c);
                }
            }
        }
        None
    }

    pub fn approx(&self) -> f64 {
        let m = rat_to_f64(&Rat::from_integer(self.m.clone()));
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * m.sqrt()
    }
}

fn rat_sign(x: &Rat) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let root = if self.b.abs() == Rat::one() {
            format!("sqrt({})", self.m)
        } else {
            format!("{}*sqrt({})", self.b.abs(), self.m)
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{root}")
            } else {
                write!(f, "{root}")
            }
        } else if self.b.is_negative() {
            write!(f, "{} - {root}", self.a)
        } else {
            write!(f, "{} + {root}", self.a)
        }
    }
}

/// Evaluate an affine (bivariate) polynomial at a point of ℚ(√m)².
pub fn eval_poly(f: &Poly, x: &QuadExt, y: &QuadExt) -> QuadExt {
    let mut acc = QuadExt::zero();
    for (e, c) in f.terms() {
        let t = x.pow(e[1]).mul(&y.pow(e[2])).scale(c);
        acc = acc.add(&t);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, m: i64) -> QuadExt {
        QuadExt::new(rat(a), rat(b), m.into())
    }

    #[test]
    fn arithmetic_in_sqrt3() {
        let x = q(1, 1, 3); // 1 + √3
        let y = q(2, -1, 3); // 2 − √3
        let p = x.mul(&y); // 2 − √3 + 2√3 − 3 = −1 + √3
        assert_eq!(p, q(-1, 1, 3));
        assert_eq!(x.add(&y), q(3, 0, 3));
        assert!(x.mul(&x.inv()).sub(&QuadExt::from_rat(Rat::one())).is_zero());
    }

    #[test]
    fn exact_sign() {
        // 7/4 − √3 > 0 since 49/16 > 3
        let v = QuadExt::new(Rat::new(7.into(), 4.into()), rat(-1), 3.into());
        assert_eq!(v.sign(), 1);
        // 12/7 − √3 < 0 since 144/49 < 3
        let w = QuadExt::new(Rat::new(12.into(), 7.into()), rat(-1), 3.into());
        assert_eq!(w.sign(), -1);
        assert_eq!(q(0, -2, 5).sign(), -1);
        assert_eq!(QuadExt::zero().sign(), 0);
    }

    #[test]
    fn field_square_roots() {
        // (1 + √3)² = 4 + 2√3
        let s = q(4, 2, 3).sqrt_in_field().unwrap();
        assert_eq!(s, q(1, 1, 3));
        // √12 = 2√3
        let t = QuadExt::new(rat(12), rat(0), 3.into());
        assert_eq!(t.sqrt_in_field().unwrap(), q(0, 2, 3));
        // √2 does not live in ℚ(√3)
        let u = QuadExt::new(rat(2), rat(0), 3.into());
        assert!(u.sqrt_in_field().is_none());
        // negative numbers have no real square root
        assert!(q(-4, 0, 3).sqrt_in_field().is_none());
    }

    #[test]
    fn poly_evaluation() {
        use crate::poly::Poly;
        // f = x² + y² − 1 at (√3/2, 1/2) gives 3/4 + 1/4 − 1 = 0
        let f = Poly::parse("X1^2 + X2^2 - 1").unwrap();
        let x = QuadExt::new(Rat::zero(), Rat::new(1.into(), 2.into()), 3.into());
        let y = QuadExt::from_rat(Rat::new(1.into(), 2.into()));
        assert!(eval_poly(&f, &x, &y).is_zero());
    }

    #[test]
    fn display_surds() {
        assert_eq!(q(0, -1, 3).to_string(), "-sqrt(3)");
        assert_eq!(q(2, 1, 3).to_string(), "2 + sqrt(3)");
        assert_eq!(
            QuadExt::new(rat(2), Rat::new((-1).into(), 2.into()), 3.into()).to_string(),
            "2 - 1/2*sqrt(3)"
        );
        assert_eq!(QuadExt::from_rat(Rat::new(3.into(), 4.into())).to_string(), "3/4");
    }
}
