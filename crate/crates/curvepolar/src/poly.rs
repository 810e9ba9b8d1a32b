//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Polynomials live in `ℚ[X0,X1,X2]` (homogeneous trivariate forms) or in
//! `ℚ[X1,X2]` (affine curves; the `X0` exponent is then always zero). Terms
//! are a map from exponent vectors to nonzero coefficients; the zero
//! polynomial is the empty map. Printed output uses graded lexicographic
//! order so it is deterministic and round-trips through [`Poly::parse`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;
pub type Int = BigInt;

/// Exponent vector `(e0, e1, e2)` for `X0^e0 X1^e1 X2^e2`.
pub type Exp = [u32; 3];

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at offset {0}: {1}")]
    Syntax(usize, String),
    #[error("unknown identifier `{1}` at offset {0}")]
    UnknownIdent(usize, String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("operation on zero polynomial")]
    ZeroPolynomial,
    #[error("variable index {0} out of range")]
    BadVariable(usize),
    #[error("incompatible variable counts {0} and {1}")]
    NvarsMismatch(usize, usize),
    #[error("polynomial has positive degree in more than the expected variables")]
    NotUnivariate,
}

/// A polynomial in `X0,X1,X2` (nvars = 3) or `X1,X2` (nvars = 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exp, Rat>,
}

fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars == 2 || nvars == 3);
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert([0, 0, 0], c);
        }
        p
    }

    pub fn int_const(nvars: usize, c: i64) -> Self {
        Poly::constant(nvars, rat_int(c))
    }

    /// The monomial `X_var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < 3);
        assert!(nvars == 3 || var > 0);
        let mut e = [0u32; 3];
        e[var] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(e, Rat::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exp, Rat)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e[0] + e[1] + e[2]).max()
    }

    /// Degree in a single variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    fn add_term(&mut self, e: Exp, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    o.insert(s);
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        if k.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.clone() * k))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut r = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                r.add_term(e, ca.clone() * cb.clone());
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::constant(self.nvars, Rat::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    /// Formal partial derivative with respect to `X_var`.
    pub fn partial(&self, var: usize) -> Poly {
        assert!(var < 3);
        let mut r = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[var] -= 1;
            r.add_term(e2, c.clone() * rat_int(e[var] as i64));
        }
        r
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e[0] + e[1] + e[2]);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Multiply each term by the power of `X0` that brings it to top degree.
    pub fn homogenize(&self) -> Poly {
        assert_eq!(self.nvars, 2, "homogenize expects an affine polynomial");
        let d = match self.degree() {
            None => return Poly::zero(3),
            Some(d) => d,
        };
        let mut r = Poly::zero(3);
        for (e, c) in &self.terms {
            let e2 = [d - e[1] - e[2], e[1], e[2]];
            r.add_term(e2, c.clone());
        }
        r
    }

    /// Substitute `X0 = 1`. Errors when the input is not homogeneous.
    pub fn dehomogenize(&self) -> Result<Poly, PolyError> {
        if !self.is_homogeneous() {
            return Err(PolyError::NotHomogeneous);
        }
        let mut r = Poly::zero(2);
        for (e, c) in &self.terms {
            r.add_term([0, e[1], e[2]], c.clone());
        }
        Ok(r)
    }

    /// Substitute `X0 = 1` on any trivariate polynomial (no homogeneity check).
    pub fn set_x0_one(&self) -> Poly {
        let mut r = Poly::zero(2);
        for (e, c) in &self.terms {
            r.add_term([0, e[1], e[2]], c.clone());
        }
        r
    }

    /// View an affine polynomial as trivariate (same terms, `X0` absent).
    pub fn as_trivariate(&self) -> Poly {
        Poly {
            nvars: 3,
            terms: self.terms.clone(),
        }
    }

    /// Evaluate at a rational point. `point` has one entry per variable:
    /// `(x0,x1,x2)` for trivariate, `(x1,x2)` for affine.
    pub fn eval_rat(&self, point: &[Rat]) -> Rat {
        let offset = 3 - self.nvars;
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rat::zero();
        // Powers are cached per variable; exponents in paper-scale inputs
        // stay small so simple repeated squaring per term would also do.
        let maxes: Exp = self.max_exps();
        let mut pows: Vec<Vec<Rat>> = Vec::with_capacity(3);
        for v in 0..3 {
            let n = if v < offset { 0 } else { maxes[v] as usize };
            let mut col = Vec::with_capacity(n + 1);
            col.push(Rat::one());
            for i in 0..n {
                let last: Rat = col[i].clone();
                col.push(last * &point[v - offset]);
            }
            pows.push(col);
        }
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for v in offset..3 {
                if e[v] > 0 {
                    t *= &pows[v][e[v] as usize];
                }
            }
            acc += t;
        }
        acc
    }

    fn max_exps(&self) -> Exp {
        let mut m = [0u32; 3];
        for e in self.terms.keys() {
            for v in 0..3 {
                m[v] = m[v].max(e[v]);
            }
        }
        m
    }

    /// Evaluate over a box with interval arithmetic. The result encloses the
    /// true range of the polynomial over the box.
    pub fn eval_interval(&self, box_: &[Interval]) -> Interval {
        let offset = 3 - self.nvars;
        assert_eq!(box_.len(), self.nvars);
        let maxes = self.max_exps();
        let mut pows: Vec<Vec<Interval>> = Vec::with_capacity(3);
        for v in 0..3 {
            let n = if v < offset { 0 } else { maxes[v] as usize };
            let mut col = Vec::with_capacity(n + 1);
            col.push(Interval::point(Rat::one()));
            for i in 1..=n {
                col.push(box_[v - offset].pow(i as u32));
            }
            pows.push(col);
        }
        let mut acc = Interval::point(Rat::zero());
        for (e, c) in &self.terms {
            let mut t = Interval::point(c.clone());
            for v in offset..3 {
                if e[v] > 0 {
                    t = t.mul(&pows[v][e[v] as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitute `X_var = value` (a polynomial in the same variables).
    pub fn substitute(&self, var: usize, value: &Poly) -> Poly {
        assert_eq!(self.nvars, value.nvars);
        let mut r = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut rest = *e;
            let k = rest[var];
            rest[var] = 0;
            let mut t = Poly::zero(self.nvars);
            t.add_term(rest, c.clone());
            if k > 0 {
                t = t.mul(&value.pow(k));
            }
            r = r.add(&t);
        }
        r
    }

    /// Coefficients of the polynomial viewed as univariate in `var`, lowest
    /// degree first; the entries are polynomials in the remaining variables.
    pub fn coeffs_in(&self, var: usize) -> Vec<Poly> {
        let d = match self.degree_in(var) {
            None => return vec![],
            Some(d) => d,
        };
        let mut out = vec![Poly::zero(self.nvars); d as usize + 1];
        for (e, c) in &self.terms {
            let mut rest = *e;
            let k = rest[var] as usize;
            rest[var] = 0;
            out[k].add_term(rest, c.clone());
        }
        out
    }

    /// Clear denominators and divide by integer content; the sign is fixed so
    /// the graded-lex leading coefficient is positive. The zero set is
    /// unchanged.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut denom_lcm = Int::one();
        for c in self.terms.values() {
            denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
        }
        let mut content = Int::zero();
        for c in self.terms.values() {
            let scaled = c.numer() * (&denom_lcm / c.denom());
            content = num_integer::gcd(content, scaled);
        }
        let mut p = self.scale(&Rat::new(denom_lcm, content));
        let lead = p.lead_coeff_grlex();
        if lead.is_negative() {
            p = p.neg();
        }
        p
    }

    /// Leading coefficient in graded lexicographic order.
    pub fn lead_coeff_grlex(&self) -> Rat {
        self.terms
            .iter()
            .max_by_key(|(e, _)| (e[0] + e[1] + e[2], **e))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    /// Exact division; `None` if `other` does not divide `self`.
    pub fn exact_div(&self, other: &Poly) -> Option<Poly> {
        assert_eq!(self.nvars, other.nvars);
        if other.is_zero() {
            return None;
        }
        let (le, lc) = other
            .terms
            .iter()
            .max_by_key(|(e, _)| (e[0] + e[1] + e[2], **e))
            .map(|(e, c)| (*e, c.clone()))
            .unwrap();
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while !rem.is_zero() {
            let (re, rc) = rem
                .terms
                .iter()
                .max_by_key(|(e, _)| (e[0] + e[1] + e[2], **e))
                .map(|(e, c)| (*e, c.clone()))
                .unwrap();
            if re[0] < le[0] || re[1] < le[1] || re[2] < le[2] {
                return None;
            }
            let qe = [re[0] - le[0], re[1] - le[1], re[2] - le[2]];
            let qc = rc / &lc;
            let mut m = Poly::zero(self.nvars);
            m.add_term(qe, qc);
            quot = quot.add(&m);
            rem = rem.sub(&m.mul(other));
        }
        Some(quot)
    }
}

// ---------------------------------------------------------------------------
// Printing

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // graded lex, highest first
        let mut ts: Vec<(&Exp, &Rat)> = self.terms.iter().collect();
        ts.sort_by_key(|(e, _)| std::cmp::Reverse((e[0] + e[1] + e[2], **e)));
        for (i, (e, c)) in ts.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -(*c).clone() } else { (*c).clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let is_const = e[0] == 0 && e[1] == 0 && e[2] == 0;
            let mut wrote = false;
            if !abs.is_one() || is_const {
                if abs.denom().is_one() {
                    write!(f, "{}", abs.numer())?;
                } else {
                    write!(f, "{}/{}", abs.numer(), abs.denom())?;
                }
                wrote = true;
            }
            for v in 0..3 {
                if e[v] == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                write!(f, "X{}", v)?;
                if e[v] > 1 {
                    write!(f, "^{}", e[v])?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parsing

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, PolyError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let n = self.nat()?;
            if n > 64 {
                return Err(PolyError::Syntax(at, "exponent too large".into()));
            }
            Ok(base.pow(n))
        } else {
            Ok(base)
        }
    }

    fn nat(&mut self) -> Result<u32, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(PolyError::Syntax(start, "expected a number".into()));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| PolyError::Syntax(start, "number too large".into()))
    }

    fn bigint(&mut self) -> Result<Int, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(PolyError::Syntax(start, "expected a number".into()));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .unwrap())
    }

    fn base(&mut self) -> Result<Poly, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(PolyError::Syntax(self.pos, "expected `)`".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.bigint()?;
                if self.peek() == Some(b'/') {
                    // `p/q` is a rational literal, not a division operator
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.bigint()?;
                    if d.is_zero() {
                        return Err(PolyError::Syntax(at, "zero denominator".into()));
                    }
                    Ok(Poly::constant(self.nvars, Rat::new(n, d)))
                } else {
                    Ok(Poly::constant(self.nvars, Rat::from_integer(n)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let var = match word {
                    "X0" => 0,
                    "X1" | "x" => 1,
                    "X2" | "y" => 2,
                    _ => return Err(PolyError::UnknownIdent(start, word.to_string())),
                };
                if var == 0 && self.nvars == 2 {
                    return Err(PolyError::UnknownIdent(start, word.to_string()));
                }
                Ok(Poly::var(self.nvars, var))
            }
            _ => Err(PolyError::Syntax(self.pos, "expected a factor".into())),
        }
    }
}

impl Poly {
    /// Parse an affine polynomial over `X1,X2` (aliases `x`,`y`).
    pub fn parse(text: &str) -> Result<Poly, PolyError> {
        Self::parse_nvars(text, 2)
    }

    /// Parse a polynomial over `X0,X1,X2`.
    pub fn parse3(text: &str) -> Result<Poly, PolyError> {
        Self::parse_nvars(text, 3)
    }

    fn parse_nvars(text: &str, nvars: usize) -> Result<Poly, PolyError> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
            nvars,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(PolyError::Syntax(p.pos, "trailing input".into()));
        }
        Ok(e)
    }
}

// ---------------------------------------------------------------------------
// Intervals

/// A closed rational interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval bounds out of order");
        Interval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat_int(2)
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    /// Tight power: even powers of sign-straddling intervals start at 0.
    pub fn pow(&self, k: u32) -> Interval {
        if k == 0 {
            return Interval::point(Rat::one());
        }
        let plo = num_traits::pow::pow(self.lo.clone(), k as usize);
        let phi = num_traits::pow::pow(self.hi.clone(), k as usize);
        if k % 2 == 1 {
            Interval { lo: plo, hi: phi }
        } else if !self.lo.is_negative() {
            Interval { lo: plo, hi: phi }
        } else if !self.hi.is_positive() {
            Interval { lo: phi, hi: plo }
        } else {
            Interval {
                lo: Rat::zero(),
                hi: plo.max(phi),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Resultants

/// Determinant of a square rational matrix, exact, by fraction-free Bareiss
/// elimination on a denominator-cleared integer matrix.
pub fn det_rat(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    if n == 0 {
        return Rat::one();
    }
    let mut scale = Rat::one();
    let mut a: Vec<Vec<Int>> = Vec::with_capacity(n);
    for row in m {
        assert_eq!(row.len(), n);
        let mut l = Int::one();
        for c in row {
            l = num_integer::lcm(l, c.denom().clone());
        }
        scale *= Rat::new(Int::one(), l.clone());
        a.push(
            row.iter()
                .map(|c| c.numer() * (&l / c.denom()))
                .collect::<Vec<_>>(),
        );
    }
    let mut sign = 1i32;
    let mut prev = Int::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Rat::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = Int::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone() * Int::from(sign);
    scale * Rat::from_integer(det)
}

/// Sylvester matrix of `p`, `q` with respect to `var`, entries being
/// polynomials in the remaining variables.
pub fn sylvester_matrix(p: &Poly, q: &Poly, var: usize) -> Result<Vec<Vec<Poly>>, PolyError> {
    let dp = p.degree_in(var).ok_or(PolyError::ZeroPolynomial)? as usize;
    let dq = q.degree_in(var).ok_or(PolyError::ZeroPolynomial)? as usize;
    if dp == 0 && dq == 0 {
        return Err(PolyError::NotUnivariate);
    }
    let pc = p.coeffs_in(var);
    let qc = q.coeffs_in(var);
    let n = dp + dq;
    let zero = Poly::zero(p.nvars());
    let mut m = vec![vec![zero; n]; n];
    for r in 0..dq {
        for (j, c) in pc.iter().enumerate() {
            m[r][r + dp - j] = c.clone();
        }
    }
    for r in 0..dp {
        for (j, c) in qc.iter().enumerate() {
            m[dq + r][r + dq - j] = c.clone();
        }
    }
    Ok(m)
}

/// Resultant of `p` and `q` with respect to `var`: the determinant of their
/// Sylvester matrix, a polynomial in the remaining variables.
///
/// When exactly one other variable occurs, the determinant is computed by
/// evaluation at integer points and Newton interpolation, which keeps the
/// arithmetic in plain rational determinants.
pub fn resultant(p: &Poly, q: &Poly, var: usize) -> Result<Poly, PolyError> {
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    assert_eq!(p.nvars(), q.nvars());
    let dp = p.degree_in(var).unwrap_or(0);
    let dq = q.degree_in(var).unwrap_or(0);
    if dp == 0 || dq == 0 {
        return Err(PolyError::NotUnivariate);
    }
    // Which other variables actually occur?
    let mut others = vec![];
    for v in 0..3 {
        if v == var {
            continue;
        }
        let in_p = p.degree_in(v).unwrap_or(0) > 0;
        let in_q = q.degree_in(v).unwrap_or(0) > 0;
        if in_p || in_q {
            others.push(v);
        }
    }
    match others.len() {
        0 => {
            // both univariate in `var`: plain rational determinant
            let m = sylvester_matrix(p, q, var)?;
            let mr: Vec<Vec<Rat>> = m
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| {
                            e.terms
                                .get(&[0, 0, 0])
                                .cloned()
                                .unwrap_or_else(Rat::zero)
                        })
                        .collect()
                })
                .collect();
            Ok(Poly::constant(p.nvars(), det_rat(&mr)))
        }
        1 => resultant_interp(p, q, var, others[0]),
        _ => resultant_bareiss(p, q, var),
    }
}

/// Interpolation route: evaluate the Sylvester determinant at integer values
/// of the single remaining variable `rvar` and interpolate.
fn resultant_interp(p: &Poly, q: &Poly, var: usize, rvar: usize) -> Result<Poly, PolyError> {
    let dp = p.degree_in(var).unwrap() as usize;
    let dq = q.degree_in(var).unwrap() as usize;
    let pr = p.degree_in(rvar).unwrap_or(0) as usize;
    let qr = q.degree_in(rvar).unwrap_or(0) as usize;
    // Every matrix entry from p appears dq times per product term, degree in
    // rvar at most pr; similarly for q.
    let bound = dq * pr + dp * qr;
    let pc = p.coeffs_in(var);
    let qc = q.coeffs_in(var);
    // evaluation points 0, 1, -1, 2, -2, ...
    let mut xs: Vec<Rat> = Vec::with_capacity(bound + 1);
    let mut ys: Vec<Rat> = Vec::with_capacity(bound + 1);
    let mut k: i64 = 0;
    while xs.len() < bound + 1 {
        let x = rat_int(k);
        let pt = vec![x.clone()];
        let n = dp + dq;
        let mut m = vec![vec![Rat::zero(); n]; n];
        let pe: Vec<Rat> = pc.iter().map(|c| eval_single(c, rvar, &pt[0])).collect();
        let qe: Vec<Rat> = qc.iter().map(|c| eval_single(c, rvar, &pt[0])).collect();
        for r in 0..dq {
            for (j, c) in pe.iter().enumerate() {
                m[r][r + dp - j] = c.clone();
            }
        }
        for r in 0..dp {
            for (j, c) in qe.iter().enumerate() {
                m[dq + r][r + dq - j] = c.clone();
            }
        }
        ys.push(det_rat(&m));
        xs.push(x);
        k = if k >= 0 { -(k + 1) } else { -k };
    }
    // Newton divided differences
    let n = xs.len();
    let mut dd = ys.clone();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - j];
            dd[i] = num / den;
        }
    }
    // expand Newton form into a polynomial in rvar
    let x = Poly::var(p.nvars(), rvar);
    let mut acc = Poly::zero(p.nvars());
    for i in (0..n).rev() {
        let c = Poly::constant(p.nvars(), dd[i].clone());
        if i + 1 < n {
            let shift = x.sub(&Poly::constant(p.nvars(), xs[i].clone()));
            acc = acc.mul(&shift);
        }
        acc = acc.add(&c);
    }
    Ok(acc)
}

fn eval_single(c: &Poly, rvar: usize, x: &Rat) -> Rat {
    // c is a polynomial in rvar only
    let mut acc = Rat::zero();
    let mut pow_cache: Vec<Rat> = vec![Rat::one()];
    for (e, coef) in &c.terms {
        let k = e[rvar] as usize;
        while pow_cache.len() <= k {
            let last = pow_cache.last().unwrap().clone();
            pow_cache.push(last * x);
        }
        acc += coef * &pow_cache[k];
    }
    acc
}

/// Generic route: Bareiss elimination directly over the polynomial ring,
/// with exact polynomial divisions.
fn resultant_bareiss(p: &Poly, q: &Poly, var: usize) -> Result<Poly, PolyError> {
    let mut m = sylvester_matrix(p, q, var)?;
    let n = m.len();
    let nv = p.nvars();
    let mut sign = 1i32;
    let mut prev = Poly::constant(nv, Rat::one());
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(pi) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(Poly::zero(nv));
            };
            m.swap(k, pi);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss division is exact");
            }
            m[i][k] = Poly::zero(nv);
        }
        prev = m[k][k].clone();
    }
    let mut det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det = det.neg();
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn parse_circle() {
        let c = p("X1^2+X2^2-1");
        assert_eq!(c.degree(), Some(2));
        assert_eq!(c.num_terms(), 3);
    }

    #[test]
    fn parse_paper_g() {
        let g = p("(X2-1/2)*(X2+1/2)*(X1-7/2)*(X1-9/2)");
        assert_eq!(g.degree(), Some(4));
        // g(7/2, y) = 0 for any y
        let v = g.eval_rat(&[Rat::new(7.into(), 2.into()), Rat::new(1.into(), 3.into())]);
        assert!(v.is_zero());
    }

    #[test]
    fn parse_error_offset() {
        let e = Poly::parse("X1^^2").unwrap_err();
        assert_eq!(e, PolyError::Syntax(3, "expected a number".into()));
    }

    #[test]
    fn parse_unknown_ident() {
        assert!(matches!(
            Poly::parse("Z1+1"),
            Err(PolyError::UnknownIdent(0, _))
        ));
        // X0 is not a valid affine variable
        assert!(Poly::parse("X0+1").is_err());
        assert!(Poly::parse3("X0+1").is_ok());
    }

    #[test]
    fn mul_square() {
        let x = p("X1");
        assert_eq!(x.mul(&x), p("X1^2"));
    }

    #[test]
    fn additive_inverse() {
        let q = p("3*X1^2*X2-7/5*X2+1");
        assert!(q.add(&q.scale(&rat_int(-1))).is_zero());
    }

    #[test]
    fn paper_h_degree_12() {
        let f = p("(X1^2+X2^2-1)*((X1-4)^2+(X2-2)^2-1)");
        let g = p("(X2-1/2)*(X2+1/2)*(X1-7/2)*(X1-9/2)");
        let h = f.pow(2).add(&g.pow(3).scale(&Rat::new(1.into(), 100.into())));
        assert_eq!(h.degree(), Some(12));
    }

    #[test]
    fn partials() {
        assert_eq!(p("X1^2+X2^2-1").partial(2), p("2*X2"));
        assert_eq!(p("5").partial(1), Poly::zero(2));
    }

    #[test]
    fn homogenize_dehomogenize() {
        let c = p("X1^2+X2^2-1");
        let hc = c.homogenize();
        assert_eq!(hc, Poly::parse3("X1^2+X2^2-X0^2").unwrap());
        assert_eq!(hc.dehomogenize().unwrap(), c);
        assert_eq!(
            p("X2-X1^3").homogenize(),
            Poly::parse3("X0^2*X2-X1^3").unwrap()
        );
        assert_eq!(
            Poly::parse3("X0*X2-X1^2").unwrap().dehomogenize().unwrap(),
            p("X2-X1^2")
        );
        assert!(Poly::parse3("X0+X1^2").unwrap().dehomogenize().is_err());
    }

    #[test]
    fn eval_on_circle() {
        let c = p("X1^2+X2^2-1");
        assert!(c.eval_rat(&[rat_int(1), rat_int(0)]).is_zero());
    }

    #[test]
    fn eval_interval_square() {
        let q = p("X1^2");
        let i = q.eval_interval(&[
            Interval::new(rat_int(-1), rat_int(1)),
            Interval::new(rat_int(0), rat_int(0)),
        ]);
        assert!(i.contains(&Rat::zero()));
        assert!(i.contains(&Rat::one()));
        // the tight power rule gives exactly [0,1]
        assert_eq!(i, Interval::new(rat_int(0), rat_int(1)));
    }

    #[test]
    fn resultant_substitution_case() {
        let c = p("X1^2+X2^2-1");
        let r = resultant(&c, &p("X2"), 2).unwrap();
        assert_eq!(r, p("X1^2-1"));
    }

    #[test]
    fn resultant_scaled() {
        // oracle: direct 3x3 Sylvester determinant expansion.
        // Sylvester(X2^2 + (X1^2-1), 2*X2; X2) =
        // | 1 0 X1^2-1 |
        // | 2 0 0      |
        // | 0 2 0      |  -> det = 4*(X1^2-1)
        let c = p("X1^2+X2^2-1");
        let r = resultant(&c, &p("2*X2"), 2).unwrap();
        assert_eq!(r, p("4*X1^2-4"));
    }

    #[test]
    fn resultant_common_factor_is_zero() {
        let q = p("(X1+X2)*(X1-2*X2+1)");
        let r = resultant(&q, &q, 2).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn resultant_agrees_with_bareiss() {
        let a = p("X1^3*X2^2-7*X2+X1-2");
        let b = p("X1*X2^3+5*X1^2-X2+3");
        let via_interp = resultant(&a, &b, 2).unwrap();
        let via_bareiss = resultant_bareiss(&a, &b, 2).unwrap();
        assert_eq!(via_interp, via_bareiss);
    }

    #[test]
    fn print_parse_roundtrip_simple() {
        for s in [
            "X1^2+X2^2-1",
            "-X1+3/7*X2^4-2",
            "0",
            "5/3",
            "-X1^2*X2^3",
        ] {
            let q = p(s);
            assert_eq!(Poly::parse(&q.to_string()).unwrap(), q);
        }
    }

    #[test]
    fn primitive_part_clears_denominators() {
        let q = p("1/2*X1^2-1/3");
        let pp = q.primitive_part();
        assert_eq!(pp, p("3*X1^2-2"));
    }

    #[test]
    fn exact_division() {
        let a = p("X1^2-X2^2");
        let b = p("X1-X2");
        assert_eq!(a.exact_div(&b).unwrap(), p("X1+X2"));
        assert!(p("X1^2+1").exact_div(&b).is_none());
    }
}
