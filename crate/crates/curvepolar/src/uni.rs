//! Univariate machinery: exact gcds, square-free decomposition and real-root
//! isolation by Descartes' rule with interval bisection.
//!
//! Isolation runs on primitive integer coefficient vectors; every returned
//! [`RootLoc`] carries the square-free polynomial it isolates a root of, so
//! the interval can be refined later by plain sign bisection.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::poly::{Int, Interval, Poly, PolyError, Rat};

/// Dense univariate polynomial over `ℚ`, coefficients lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    pub coeffs: Vec<Rat>,
}

fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Extract the univariate polynomial in `var` from a [`Poly`]; errors if
    /// any other variable occurs.
    pub fn from_poly(p: &Poly, var: usize) -> Result<Self, PolyError> {
        let d = p.degree_in(var).unwrap_or(0) as usize;
        let mut coeffs = vec![Rat::zero(); d + 1];
        for (e, c) in p.terms() {
            for v in 0..3 {
                if v != var && e[v] != 0 {
                    return Err(PolyError::NotUnivariate);
                }
            }
            coeffs[e[var] as usize] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn to_poly(&self, nvars: usize, var: usize) -> Poly {
        let mut acc = Poly::zero(nvars);
        let x = Poly::var(nvars, var);
        for (i, c) in self.coeffs.iter().enumerate() {
            let term = x.pow(i as u32).scale(c);
            acc = acc.add(&term);
        }
        acc
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign of `p(x)`, via homogeneous integer Horner evaluation: much
    /// cheaper than rational arithmetic, which reduces at every step.
    pub fn sign_at(&self, x: &Rat) -> i32 {
        use num_integer::Integer;
        if self.coeffs.is_empty() {
            return 0;
        }
        let mut l = Int::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<Int> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let a = x.numer();
        let b = x.denom();
        let n = ints.len();
        let mut v = ints[n - 1].clone();
        let mut bp = Int::one();
        for i in (0..n - 1).rev() {
            bp = &bp * b;
            v = v * a + &ints[i] * &bp;
        }
        match v.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rat) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        UniPoly::new(out)
    }

    /// Euclidean division, `(quotient, remainder)`.
    pub fn divrem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero());
        let dd = divisor.degree().unwrap();
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![
            Rat::zero();
            self.coeffs.len().saturating_sub(divisor.coeffs.len()) + 1
        ];
        while rem.len() > dd && !rem.is_empty() {
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
            let shift = rem.len() - 1 - dd;
            let q = rem.last().unwrap() / &lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let delta = &q * c;
                rem[shift + i] -= delta;
            }
            quot[shift] = q;
            rem.pop();
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn exact_div(&self, divisor: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(divisor);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Primitive integer coefficient vector (denominators cleared, content
    /// removed, positive leading coefficient).
    pub fn primitive_int(&self) -> Vec<Int> {
        if self.is_zero() {
            return vec![];
        }
        let mut l = Int::one();
        for c in &self.coeffs {
            l = num_integer::lcm(l, c.denom().clone());
        }
        let mut v: Vec<Int> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let mut g = Int::zero();
        for c in &v {
            g = num_integer::gcd(g, c.clone());
        }
        if v.last().unwrap().is_negative() {
            g = -g;
        }
        for c in &mut v {
            *c = &*c / &g;
        }
        v
    }

    pub fn from_int(v: &[Int]) -> UniPoly {
        UniPoly::new(v.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    pub fn monic(&self) -> UniPoly {
        match self.degree() {
            None => UniPoly::zero(),
            Some(d) => {
                let inv = self.coeffs[d].recip();
                self.scale(&inv)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Gcd and square-free decomposition

/// Gcd over `ℚ[x]` via the subresultant PRS on primitive integer forms;
/// the result is primitive with positive leading coefficient.
pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if a.is_zero() {
        return UniPoly::from_int(&b.primitive_int());
    }
    if b.is_zero() {
        return UniPoly::from_int(&a.primitive_int());
    }
    let fi = a.primitive_int();
    let gi = b.primitive_int();
    // Modular fast path: compute the gcd images modulo word-size primes,
    // lift by CRT, and confirm by trial division. The subresultant
    // remainder sequence below is only a fallback — its coefficient growth
    // is prohibitive at the degrees the resultant pipeline produces.
    if fi.len() > 1 && gi.len() > 1 {
        if let Some(h) = modular_gcd(&fi, &gi) {
            return UniPoly::from_int(&h);
        }
    }
    let mut f = UniPoly::from_int(&fi);
    let mut g = UniPoly::from_int(&gi);
    if f.degree() < g.degree() {
        std::mem::swap(&mut f, &mut g);
    }
    // subresultant PRS
    let mut h = Rat::one();
    let mut s = Rat::one();
    loop {
        let df = f.degree().unwrap();
        let dg = g.degree().unwrap();
        let delta = df - dg;
        // pseudo-remainder of f by g
        let lead = g.coeffs[dg].clone();
        let factor = num_traits::pow::pow(lead.clone(), delta + 1);
        let (_, r) = f.scale(&factor).divrem(&g);
        if r.is_zero() {
            return UniPoly::from_int(&g.primitive_int());
        }
        if r.degree() == Some(0) {
            return UniPoly::new(vec![Rat::one()]);
        }
        let divisor = &s * num_traits::pow::pow(h.clone(), delta);
        f = g;
        g = r.scale(&divisor.recip());
        s = f.coeffs[f.degree().unwrap()].clone();
        let hp = num_traits::pow::pow(s.clone(), delta.max(1));
        h = if delta == 0 {
            h
        } else {
            hp / num_traits::pow::pow(h, delta - 1)
        };
    }
}

fn mulmod(x: u64, y: u64, p: u64) -> u64 {
    ((x as u128 * y as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for `u64` (the listed witness set decides
/// primality for every 64-bit integer).
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Reduce integer coefficients modulo `p`; `None` when the leading
/// coefficient vanishes mod `p` (the image would lose degree information).
fn reduce_mod(v: &[Int], p: u64) -> Option<Vec<u64>> {
    use num_traits::ToPrimitive;
    let pm = Int::from(p);
    let out: Vec<u64> = v
        .iter()
        .map(|c| (((c % &pm) + &pm) % &pm).to_u64().unwrap())
        .collect();
    if out.last() == Some(&0) {
        None
    } else {
        Some(out)
    }
}

/// Monic gcd of two nonzero polynomials over `ℤ/p` (coefficients lowest
/// degree first; a constant gcd is returned as `[1]`).
fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut f = a.to_vec();
    let mut g = b.to_vec();
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        let dg = g.len() - 1;
        let inv = powmod(g[dg], p - 2, p);
        while f.len() > dg {
            let df = f.len() - 1;
            let c = mulmod(f[df], inv, p);
            if c != 0 {
                for (i, gi) in g.iter().enumerate() {
                    let t = mulmod(c, *gi, p);
                    let idx = df - dg + i;
                    f[idx] = (f[idx] + p - t) % p;
                }
            }
            f.pop();
            while f.last() == Some(&0) {
                f.pop();
            }
        }
        std::mem::swap(&mut f, &mut g);
    }
    if f.is_empty() {
        return vec![1];
    }
    let inv = powmod(*f.last().unwrap(), p - 2, p);
    for c in &mut f {
        *c = mulmod(*c, inv, p);
    }
    f
}

/// Gcd of primitive integer polynomials via modular images: the monic gcd is
/// computed modulo word-size primes, scaled by `gcd(lc a, lc b)` so the
/// images of the true integer gcd agree across primes, combined by the
/// Chinese remainder theorem, symmetrically lifted, and confirmed by trial
/// division over `ℚ`. Unlucky primes (images of too-high degree) are
/// discarded; `None` only if the prime budget runs out.
fn modular_gcd(a: &[Int], b: &[Int]) -> Option<Vec<Int>> {
    use num_traits::ToPrimitive;
    let lcg = num_integer::gcd(a.last().unwrap().clone(), b.last().unwrap().clone());
    let mut best_deg = usize::MAX;
    // CRT state: residues in [0, modulus) per coefficient.
    let mut residues: Vec<Int> = vec![];
    let mut modulus = Int::one();
    let mut p = (1u64 << 60) + 1;
    let mut used = 0u32;
    while used < 40 {
        p += 2;
        if !is_prime_u64(p) {
            continue;
        }
        used += 1;
        let (fa, fb) = match (reduce_mod(a, p), reduce_mod(b, p)) {
            (Some(x), Some(y)) => (x, y),
            _ => continue,
        };
        let img = gcd_mod(&fa, &fb, p);
        let d = img.len() - 1;
        if d == 0 {
            return Some(vec![Int::one()]);
        }
        if d > best_deg {
            continue; // unlucky prime
        }
        if d < best_deg {
            best_deg = d;
            residues.clear();
            modulus = Int::one();
        }
        let lcp = (((&lcg % Int::from(p)) + Int::from(p)) % Int::from(p))
            .to_u64()
            .unwrap();
        let scaled: Vec<u64> = img.iter().map(|&c| mulmod(c, lcp, p)).collect();
        if residues.is_empty() {
            residues = scaled.iter().map(|&c| Int::from(c)).collect();
            modulus = Int::from(p);
        } else {
            let minv = powmod((&modulus % Int::from(p)).to_u64().unwrap() % p, p - 2, p);
            let pm = Int::from(p);
            for (r, &s) in residues.iter_mut().zip(&scaled) {
                let rp = ((&*r % &pm) + &pm) % &pm;
                let diff = ((Int::from(s) - rp) % &pm + &pm) % &pm;
                let t = mulmod(diff.to_u64().unwrap(), minv, p);
                *r += &modulus * Int::from(t);
            }
            modulus *= &pm;
        }
        // Symmetric lift and primitive part, then confirm by division.
        let mut cand: Vec<Int> = residues
            .iter()
            .map(|r| {
                if r * 2 > modulus {
                    r - &modulus
                } else {
                    r.clone()
                }
            })
            .collect();
        if cand.last().map(|c| c.is_zero()).unwrap_or(true) {
            continue;
        }
        let mut content = Int::zero();
        for c in &cand {
            content = num_integer::gcd(content, c.clone());
        }
        if cand.last().unwrap().is_negative() {
            content = -content;
        }
        for c in &mut cand {
            *c = &*c / &content;
        }
        let h = UniPoly::from_int(&cand);
        if UniPoly::from_int(a).exact_div(&h).is_some()
            && UniPoly::from_int(b).exact_div(&h).is_some()
        {
            return Some(cand);
        }
    }
    None
}

/// `p / gcd(p, p')`: same distinct roots, all simple.
pub fn squarefree(p: &UniPoly) -> UniPoly {
    assert!(!p.is_zero());
    if p.degree() == Some(0) {
        return p.clone();
    }
    let g = gcd(p, &p.derivative());
    let q = p.exact_div(&g).expect("gcd divides");
    UniPoly::from_int(&q.primitive_int())
}

/// Yun's square-free decomposition: returns pairwise-coprime square-free
/// factors with their multiplicities, `p = lc · Π fᵢ^{mᵢ}`.
pub fn squarefree_factor(p: &UniPoly) -> Vec<(UniPoly, u32)> {
    assert!(!p.is_zero());
    if p.degree() == Some(0) {
        return vec![];
    }
    let dp = p.derivative();
    let g = gcd(p, &dp);
    let mut c = p.exact_div(&g).unwrap();
    let mut d = dp.exact_div(&g).unwrap().sub(&c.derivative());
    let mut out = vec![];
    let mut i = 1u32;
    loop {
        if c.degree() == Some(0) {
            break;
        }
        let a = gcd(&c, &d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        c = c.exact_div(&a).unwrap();
        d = d.exact_div(&a).unwrap().sub(&c.derivative());
        i += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// Root isolation (Descartes / Vincent-Collins-Akritas bisection)

/// An isolating interval for one real root.
///
/// `poly` is square-free; the open interval contains exactly one of its real
/// roots and the endpoints are not roots (unless `exact` pins the root).
#[derive(Debug, Clone)]
pub struct RootLoc {
    pub poly: Arc<UniPoly>,
    pub interval: Interval,
    pub exact: Option<Rat>,
    pub multiplicity: u32,
}

impl RootLoc {
    /// Shrink the isolating interval below `width` by sign bisection.
    pub fn refine(&self, width: &Rat) -> RootLoc {
        let mut out = self.clone();
        if let Some(x) = &out.exact {
            out.interval = Interval::point(x.clone());
            return out;
        }
        let mut lo = out.interval.lo.clone();
        let mut hi = out.interval.hi.clone();
        let mut slo = self.poly.sign_at(&lo);
        debug_assert!(slo != 0 && self.poly.sign_at(&hi) != 0);
        while &hi - &lo > *width {
            let mid = (&lo + &hi) / rat_int(2);
            let sm = self.poly.sign_at(&mid);
            if sm == 0 {
                out.exact = Some(mid.clone());
                out.interval = Interval::point(mid);
                return out;
            }
            if sm == slo {
                lo = mid;
                slo = sm;
            } else {
                hi = mid;
            }
        }
        out.interval = Interval::new(lo, hi);
        out
    }

    /// Recover the root exactly if it is rational (of moderate height):
    /// refine deep, take the simplest rational in the interval, verify.
    pub fn try_rational(&self) -> Option<Rat> {
        if let Some(x) = &self.exact {
            return Some(x.clone());
        }
        let width = Rat::new(Int::one(), Int::one() << 96);
        let r = self.refine(&width);
        if let Some(x) = &r.exact {
            return Some(x.clone());
        }
        let cand = simplest_rational(&r.interval.lo, &r.interval.hi);
        if self.poly.eval(&cand).is_zero() {
            Some(cand)
        } else {
            None
        }
    }

    /// A displayable approximation of the root.
    pub fn approx(&self) -> f64 {
        let m = self.interval.midpoint();
        rat_to_f64(&m)
    }
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

fn sign_variations(v: &[Int]) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for c in v {
        let s = if c.is_zero() {
            continue;
        } else if c.is_positive() {
            1i8
        } else {
            -1
        };
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// In-place Taylor shift `p(x) -> p(x+1)`, coefficients lowest first.
fn shift1(v: &mut [Int]) {
    let n = v.len();
    for i in 0..n.saturating_sub(1) {
        for j in (i..n - 1).rev() {
            let add = v[j + 1].clone();
            v[j] += add;
        }
    }
}

/// Descartes bound for the number of roots of `q` in the open interval (0,1).
fn bound01(q: &[Int]) -> usize {
    let mut r: Vec<Int> = q.iter().rev().cloned().collect();
    shift1(&mut r);
    sign_variations(&r)
}

/// `2^n q(x/2)` with integer coefficients.
fn scale_half(q: &[Int]) -> Vec<Int> {
    let n = q.len();
    q.iter()
        .enumerate()
        .map(|(i, c)| c << (n - 1 - i))
        .collect()
}

fn eval_at_half_numer(q: &[Int]) -> Int {
    // 2^(n-1) q(1/2)
    let n = q.len();
    let mut acc = Int::zero();
    for (i, c) in q.iter().enumerate() {
        acc += c << (n - 1 - i);
    }
    acc
}

/// Divide an integer polynomial with root 1/2 by `(2x-1)`, returning an
/// integer polynomial with the same remaining roots.
fn deflate_half(q: &[Int]) -> Vec<Int> {
    // synthetic division by (x - 1/2) over Q, then clear powers of two
    let mut out: Vec<Rat> = vec![Rat::zero(); q.len() - 1];
    let mut carry = Rat::zero();
    for i in (0..q.len()).rev() {
        let cur = Rat::from_integer(q[i].clone()) + &carry;
        if i == 0 {
            debug_assert!(cur.is_zero());
            break;
        }
        out[i - 1] = cur.clone();
        carry = cur * Rat::new(Int::one(), Int::from(2));
    }
    UniPoly::new(out).primitive_int()
}

struct Isolator {
    out: Vec<(Rat, Rat, Option<Rat>)>,
}

impl Isolator {
    /// Roots of `q` in (0,1) mapped affinely onto (lo,hi).
    fn isolate01(&mut self, q: Vec<Int>, lo: Rat, hi: Rat, depth: usize) {
        assert!(depth < 4096, "root isolation failed to converge");
        let v = bound01(&q);
        if v == 0 {
            return;
        }
        if v == 1 {
            self.out.push((lo, hi, None));
            return;
        }
        let mid = (&lo + &hi) / rat_int(2);
        let mut q = q;
        if eval_at_half_numer(&q).is_zero() {
            self.out.push((mid.clone(), mid.clone(), Some(mid.clone())));
            q = deflate_half(&q);
        }
        let l = scale_half(&q);
        let mut r = l.clone();
        shift1(&mut r);
        self.isolate01(l, lo, mid.clone(), depth + 1);
        self.isolate01(r, mid, hi, depth + 1);
    }
}

/// Cauchy root bound, rounded up to a power of two.
fn root_bound_pow2(q: &[Int]) -> Int {
    let lead = q.last().unwrap().magnitude().clone();
    let maxc = q
        .iter()
        .map(|c| c.magnitude().clone())
        .max()
        .unwrap();
    // B = 2^k >= 1 + maxc/lead
    let mut b = Int::one();
    loop {
        if b.magnitude() * &lead > &maxc + &lead {
            return b;
        }
        b <<= 1;
    }
}

/// Isolate all distinct real roots of `p`, sorted increasing. Multiplicities
/// refer to `p` itself (computed from its square-free decomposition).
pub fn isolate_roots(p: &UniPoly) -> Result<Vec<RootLoc>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(vec![]);
    }
    let sf = squarefree(p);
    let sfa = Arc::new(sf.clone());
    let q = sf.primitive_int();
    let n = q.len();
    // strip root at zero
    let k0 = q.iter().take_while(|c| c.is_zero()).count();
    let q: Vec<Int> = q[k0..].to_vec();
    let mut locs: Vec<(Rat, Rat, Option<Rat>)> = vec![];
    if q.len() > 1 {
        let b = root_bound_pow2(&q);
        let brat = Rat::from_integer(b.clone());
        // positive roots: p(Bx) on (0,1)
        let scaled: Vec<Int> = {
            let mut pw = Int::one();
            q.iter()
                .map(|c| {
                    let r = c * &pw;
                    pw *= &b;
                    r
                })
                .collect()
        };
        let mut iso = Isolator { out: vec![] };
        iso.isolate01(scaled, Rat::zero(), brat.clone(), 0);
        locs.extend(iso.out);
        // negative roots: p(-Bx) on (0,1), mirrored
        let scaled_neg: Vec<Int> = {
            let mut pw = Int::one();
            q.iter()
                .enumerate()
                .map(|(i, c)| {
                    let r = if i % 2 == 0 { c * &pw } else { -(c * &pw) };
                    pw *= &b;
                    r
                })
                .collect()
        };
        let mut iso = Isolator { out: vec![] };
        iso.isolate01(scaled_neg, Rat::zero(), brat, 0);
        for (lo, hi, exact) in iso.out {
            locs.push((-hi, -lo, exact.map(|x| -x)));
        }
        let _ = n;
    }
    // An interval endpoint may itself be a root of the square-free
    // polynomial: either zero (stripped above) or an exactly-found dyadic
    // root whose neighbors were isolated against the deflated polynomial.
    // Shrink such intervals until both endpoints have nonzero sign.
    let sfd = sf.derivative();
    for (lo, hi, exact) in &mut locs {
        if exact.is_some() {
            continue;
        }
        for bad_is_lo in [true, false] {
            let (bad, good) = if bad_is_lo {
                (lo.clone(), hi.clone())
            } else {
                (hi.clone(), lo.clone())
            };
            if sf.sign_at(&bad) != 0 {
                continue;
            }
            // `bad` is a simple root of sf, so just inside the interval sf has
            // the sign of ±sf'(bad); the interior root flips it once.
            let s_in = if bad_is_lo {
                sfd.sign_at(&bad)
            } else {
                -sfd.sign_at(&bad)
            };
            debug_assert!(s_in != 0);
            let mut ub = good;
            loop {
                let t = (&bad + &ub) / rat_int(2);
                let st = sf.sign_at(&t);
                if st == 0 {
                    *exact = Some(t.clone());
                    *lo = t.clone();
                    *hi = t;
                    break;
                }
                if st == s_in {
                    if bad_is_lo {
                        *lo = t;
                    } else {
                        *hi = t;
                    }
                    break;
                }
                ub = t;
            }
            if exact.is_some() {
                break;
            }
        }
    }
    if k0 > 0 {
        locs.push((Rat::zero(), Rat::zero(), Some(Rat::zero())));
    }
    locs.sort_by(|a, b| a.0.cmp(&b.0));

    // multiplicities via Yun factors of the original polynomial
    let factors = squarefree_factor(p);
    let mut out = vec![];
    for (lo, hi, exact) in locs {
        let mult = factors
            .iter()
            .find(|(f, _)| match &exact {
                Some(x) => f.eval(x).is_zero(),
                None => f.sign_at(&lo) * f.sign_at(&hi) < 0,
            })
            .map(|(_, m)| *m)
            .unwrap_or(1);
        out.push(RootLoc {
            poly: sfa.clone(),
            interval: Interval::new(lo, hi),
            exact,
            multiplicity: mult,
        });
    }
    Ok(out)
}

/// All rational roots of `p` (of moderate height) with multiplicities.
pub fn rational_roots(p: &UniPoly) -> Vec<(Rat, u32)> {
    let Ok(locs) = isolate_roots(p) else {
        return vec![];
    };
    locs.iter()
        .filter_map(|l| l.try_rational().map(|r| (r, l.multiplicity)))
        .collect()
}

/// Simplest rational (smallest denominator, then smallest numerator) in the
/// closed interval `[lo, hi]`, by Stern-Brocot descent.
pub fn simplest_rational(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return Rat::zero();
    }
    if hi.is_negative() {
        return -simplest_rational(&-hi.clone(), &-lo.clone());
    }
    // 0 < lo <= hi
    let fl = lo.floor();
    let ceil_lo = if lo.is_integer() {
        lo.clone()
    } else {
        &fl + Rat::one()
    };
    if ceil_lo <= *hi {
        return ceil_lo;
    }
    // same integer part; recurse on the fractional parts, flipped
    let a = fl;
    let inner = simplest_rational(&(hi - &a).recip(), &(lo - &a).recip());
    a + inner.recip()
}

// ---------------------------------------------------------------------------
// Quadratic factor recovery (for singular points in a real quadratic field)

/// Monic quadratic factor `x^2 + b x + c` of `p` having a root inside
/// `interval`, if one exists with rational `b, c` of moderate height.
///
/// Rational roots are stripped first; the remainder is handled directly at
/// degree 2 and through the depressed-quartic resolvent at degree 4.
pub fn quadratic_factor_through(p: &UniPoly, interval: &Interval) -> Option<(Rat, Rat)> {
    let sf = squarefree(p);
    let mut core = sf.clone();
    for (r, _) in rational_roots(&sf) {
        let lin = UniPoly::new(vec![-r, Rat::one()]);
        while let Some(q) = core.exact_div(&lin) {
            core = q;
        }
    }
    let has_root_in = |b: &Rat, c: &Rat| -> bool {
        // roots of x^2 + b x + c
        let disc = b * b - c * rat_int(4);
        if disc.is_negative() {
            return false;
        }
        let q = UniPoly::new(vec![c.clone(), b.clone(), Rat::one()]);
        // sign change across the interval, or vertex root inside
        if q.sign_at(&interval.lo) * q.sign_at(&interval.hi) <= 0 {
            return true;
        }
        // both roots inside the interval (possible for a wide interval)
        let vx = -b / rat_int(2);
        interval.contains(&vx) && !q.eval(&vx).is_positive()
    };
    match core.degree() {
        Some(2) => {
            let m = core.monic();
            let (c, b) = (m.coeffs[0].clone(), m.coeffs[1].clone());
            if has_root_in(&b, &c) {
                Some((b, c))
            } else {
                None
            }
        }
        Some(4) => {
            let m = core.monic();
            // depress: x = y - p3/4
            let p3 = m.coeffs[3].clone();
            let shift = -&p3 / rat_int(4);
            let dep = taylor_shift_rat(&m, &shift);
            let pp = dep.coeffs[2].clone();
            let qq = dep.coeffs[1].clone();
            let rr = dep.coeffs[0].clone();
            // (y^2+ay+b)(y^2-ay+c): z = a^2 satisfies z(P+z)^2 - 4Rz - Q^2 = 0
            let cubic = UniPoly::new(vec![
                -(&qq * &qq),
                &pp * &pp - rat_int(4) * &rr,
                rat_int(2) * &pp,
                Rat::one(),
            ]);
            for (z, _) in rational_roots(&cubic) {
                if z.is_negative() {
                    continue;
                }
                let Some(a) = rat_sqrt(&z) else { continue };
                let (b, c) = if a.is_zero() {
                    // biquadratic: y^4 + P y^2 + R = (y^2+b)(y^2+c),
                    // so b and c are the roots of t^2 - P t + R
                    let quad = UniPoly::new(vec![rr.clone(), -pp.clone(), Rat::one()]);
                    let roots = rational_roots(&quad);
                    if roots.is_empty() {
                        continue;
                    }
                    let b = roots[0].0.clone();
                    let c = &pp - &b;
                    (b, c)
                } else {
                    let sum = &pp + &z; // b + c
                    let diff = &qq / &a; // c - b
                    let b = (&sum - &diff) / rat_int(2);
                    let c = (&sum + &diff) / rat_int(2);
                    (b, c)
                };
                // candidate monic quadratics in y; shift back to x
                for (lin, cst) in [(a.clone(), b.clone()), (-a.clone(), c.clone())] {
                    let fy = UniPoly::new(vec![cst, lin, Rat::one()]);
                    let fx = taylor_shift_rat(&fy, &(-shift.clone()));
                    if core.exact_div(&fx).is_some() {
                        let (cb, cc) = (fx.coeffs[0].clone(), fx.coeffs[1].clone());
                        if has_root_in(&cc, &cb) {
                            return Some((cc, cb));
                        }
                    }
                }
            }
            None
        }
        _ => None,
    }
}

/// `p(x + t)` over the rationals.
pub fn taylor_shift_rat(p: &UniPoly, t: &Rat) -> UniPoly {
    // Horner: p(x+t) built from the top coefficient down
    let mut acc = UniPoly::zero();
    let x_plus_t = UniPoly::new(vec![t.clone(), Rat::one()]);
    for c in p.coeffs.iter().rev() {
        acc = acc.mul(&x_plus_t);
        if !acc.coeffs.is_empty() || !c.is_zero() {
            let mut v = acc.coeffs.clone();
            if v.is_empty() {
                v.push(Rat::zero());
            }
            v[0] += c;
            acc = UniPoly::new(v);
        }
    }
    acc
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rat_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}
