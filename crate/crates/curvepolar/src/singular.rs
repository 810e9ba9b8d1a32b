//! Tangent cones and singularity classification.
//!
//! A singular point is classified from the lowest homogeneous part of the
//! curve translated to the point (its tangent cone):
//! - distinct tangent directions → ordinary real multiple point,
//! - multiplicity 2 with a squared real tangent and one real branch → cusp,
//! - repeated tangents otherwise → non-ordinary.
//!
//! Points with coordinates in a real quadratic extension ℚ(√m) are handled
//! exactly; anything beyond that scope is reported `Unclassified`, never
//! guessed.

use crate::poly::{Poly, Rat};
use crate::quadext::{eval_poly, QuadExt};
use crate::solve::{Certificate, CertifiedPoint};
use crate::uni::{self, quadratic_factor_through, RootLoc, UniPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, thiserror::Error)]
pub enum SingularError {
    #[error("point does not lie on the curve")]
    NotOnCurve,
    #[error("point is nonsingular on the curve")]
    NotSingular,
    #[error("point is singular; the Gauss direction is undefined")]
    SingularPoint,
}

/// Verdict kinds for a singular point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SingKind {
    /// Squarefree tangent cone with `k` distinct real tangent directions.
    OrdinaryRealMultiple(u32),
    /// Multiplicity 2, squared real tangent, one real branch.
    Cusp,
    /// Repeated tangents that are not a cusp (tacnodes and worse).
    NonOrdinary,
    /// Outside the decision procedure's exact scope.
    Unclassified,
}

impl fmt::Display for SingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingKind::OrdinaryRealMultiple(k) => write!(f, "ordinary-real-multiple({k})"),
            SingKind::Cusp => write!(f, "cusp"),
            SingKind::NonOrdinary => write!(f, "non-ordinary"),
            SingKind::Unclassified => write!(f, "unclassified"),
        }
    }
}

/// A real tangent direction reported as the coefficients `(a : b)` of the
/// linear form `a·u + b·v` in local coordinates.
#[derive(Debug, Clone)]
pub struct TangentFactor {
    pub coeffs: (QuadExt, QuadExt),
    pub multiplicity: u32,
}

impl fmt::Display for TangentFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {})", self.coeffs.0, self.coeffs.1)
    }
}

/// Full classification of one singular point.
#[derive(Debug, Clone)]
pub struct SingularityReport {
    pub location: CertifiedPoint,
    pub multiplicity: u32,
    pub tangent_cone_factors: Vec<TangentFactor>,
    pub quadratic_factor_count: u32,
    pub kind: SingKind,
}

impl SingularityReport {
    pub fn is_ordinary_real(&self) -> bool {
        matches!(self.kind, SingKind::OrdinaryRealMultiple(k) if k >= 2)
    }
}

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Exact coordinates of a certified point in ℚ(√m)², when the certificate
/// pins at least one coordinate rationally and the other satisfies a
/// recoverable linear or quadratic equation.
pub fn exact_coordinates(p: &CertifiedPoint) -> Option<(QuadExt, QuadExt)> {
    match &p.cert {
        Certificate::Exact { x, y } => Some((
            QuadExt::from_rat(x.clone()),
            QuadExt::from_rat(y.clone()),
        )),
        Certificate::ExactX { x, yroot } => {
            let yq = surd_from_root(yroot)?;
            Some((QuadExt::from_rat(x.clone()), yq))
        }
        Certificate::ExactY { y, xroot } => {
            let xq = surd_from_root(xroot)?;
            Some((xq, QuadExt::from_rat(y.clone())))
        }
        Certificate::Pair { xroot, yroot, .. } => {
            let xq = surd_from_root(xroot)?;
            let yq = surd_from_root(yroot)?;
            if !xq.is_rational() && !yq.is_rational() && xq.m != yq.m {
                return None; // mixed radicands are out of scope
            }
            Some((xq, yq))
        }
    }
}

/// Strip perfect-square factors (by trial division with small primes) so the
/// reported radicand is small when possible.
fn reduce_radicand(m: BigInt) -> (BigInt, BigInt) {
    let mut m = m;
    let mut outside = BigInt::one();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(100_000);
    while &(&p * &p) <= &m && p <= limit {
        let sq = &p * &p;
        while (&m % &sq).is_zero() {
            m /= &sq;
            outside *= &p;
        }
        p += 1;
    }
    (m, outside)
}

/// Recover the root of `loc` as an element of some ℚ(√m), when it is
/// rational or satisfies a monic rational quadratic.
fn surd_from_root(loc: &RootLoc) -> Option<QuadExt> {
    if let Some(x) = loc.try_rational() {
        return Some(QuadExt::from_rat(x));
    }
    let (b, c) = quadratic_factor_through(&loc.poly, &loc.interval)?;
    // x² + bx + c = 0, x = −b/2 ± √d/2 with d = b² − 4c
    let d = &(&b * &b) - &c * rat(4);
    if !d.is_positive() {
        return None;
    }
    // √d = (s/den)·√m with d = num/den²·... : clear the denominator first
    let num = d.numer().clone();
    let den = d.denom().clone();
    let (m, s) = reduce_radicand(&num * &den);
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let a = -&b * &half;
    let coef = Rat::new(s, den) * &half;
    for sign in [1i64, -1] {
        let cand = QuadExt::new(a.clone(), &coef * rat(sign), m.clone());
        if surd_in_interval(&cand, loc) {
            return Some(cand);
        }
    }
    None
}

fn surd_in_interval(x: &QuadExt, loc: &RootLoc) -> bool {
    let lo = QuadExt::from_rat(loc.interval.lo.clone());
    let hi = QuadExt::from_rat(loc.interval.hi.clone());
    x.sub(&lo).sign() >= 0 && hi.sub(x).sign() >= 0
}

/// The shifted terms of `f(X + P)` in local coordinates, exactly over ℚ(√m).
fn shifted_terms(f: &Poly, px: &QuadExt, py: &QuadExt) -> BTreeMap<(u32, u32), QuadExt> {
    let dmax = f.degree().unwrap_or(0) as usize;
    let mut powx = vec![QuadExt::from_rat(Rat::one())];
    let mut powy = vec![QuadExt::from_rat(Rat::one())];
    for k in 1..=dmax {
        powx.push(powx[k - 1].mul(px));
        powy.push(powy[k - 1].mul(py));
    }
    let binom = binomial_table(dmax);
    let mut out: BTreeMap<(u32, u32), QuadExt> = BTreeMap::new();
    for (e, c) in f.terms() {
        let (a, b) = (e[1] as usize, e[2] as usize);
        for i in 0..=a {
            for j in 0..=b {
                let coef = powx[a - i]
                    .mul(&powy[b - j])
                    .scale(&(c * &binom[a][i] * &binom[b][j]));
                let key = (i as u32, j as u32);
                let acc = out.entry(key).or_insert_with(QuadExt::zero);
                *acc = acc.add(&coef);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn binomial_table(n: usize) -> Vec<Vec<Rat>> {
    let mut t = vec![vec![Rat::one()]];
    for i in 1..=n {
        let mut row = vec![Rat::one()];
        for j in 1..i {
            row.push(&t[i - 1][j - 1] + &t[i - 1][j]);
        }
        row.push(Rat::one());
        t.push(row);
    }
    t
}

/// Tangent cone of `f` at a rational singular point: the lowest-degree
/// homogeneous part of `f(X + P)` in local coordinates `(u, v)`, returned
/// with `u, v` in the `X1, X2` slots.
pub fn tangent_cone(f: &Poly, px: &Rat, py: &Rat) -> Result<Poly, SingularError> {
    let terms = shifted_terms(
        f,
        &QuadExt::from_rat(px.clone()),
        &QuadExt::from_rat(py.clone()),
    );
    let mu = cone_multiplicity(&terms)?;
    let mut cone = Poly::zero(2);
    for ((i, j), c) in &terms {
        if i + j == mu {
            debug_assert!(c.is_rational());
            cone = cone.add(&Poly::from_terms(2, [([0, *i, *j], c.a.clone())]));
        }
    }
    Ok(cone)
}

fn cone_multiplicity(terms: &BTreeMap<(u32, u32), QuadExt>) -> Result<u32, SingularError> {
    if terms.contains_key(&(0, 0)) {
        return Err(SingularError::NotOnCurve);
    }
    let mu = terms.keys().map(|(i, j)| i + j).min().unwrap_or(0);
    if mu < 2 {
        return Err(SingularError::NotSingular);
    }
    Ok(mu)
}

/// The Gauss direction `(∂f/∂X1(P) : ∂f/∂X2(P))` at a nonsingular exact point.
pub fn gauss_direction(
    f: &Poly,
    px: &QuadExt,
    py: &QuadExt,
) -> Result<(QuadExt, QuadExt), SingularError> {
    let gx = eval_poly(&f.partial(1), px, py);
    let gy = eval_poly(&f.partial(2), px, py);
    if gx.is_zero() && gy.is_zero() {
        return Err(SingularError::SingularPoint);
    }
    Ok(normalize_pair(gx, gy))
}

/// Scale a projective pair over ℚ(√m) so the components are integral with no
/// common content and the first nonzero component is positive.
pub fn normalize_pair(a: QuadExt, b: QuadExt) -> (QuadExt, QuadExt) {
    let mut l = BigInt::one();
    for r in [&a.a, &a.b, &b.a, &b.b] {
        l = l.lcm(r.denom());
    }
    let mut g = BigInt::zero();
    for r in [&a.a, &a.b, &b.a, &b.b] {
        if !r.is_zero() {
            g = g.gcd(&(r.numer() * &l / r.denom()));
        }
    }
    if g.is_zero() {
        g = BigInt::one();
    }
    let s = Rat::new(l, g);
    let mut a = a.scale(&s);
    let mut b = b.scale(&s);
    let lead = if a.sign() != 0 { a.sign() } else { b.sign() };
    if lead < 0 {
        a = a.neg();
        b = b.neg();
    }
    (a, b)
}

/// Classify a certified singular point of `f`.
pub fn classify(f: &Poly, p: &CertifiedPoint) -> Result<SingularityReport, SingularError> {
    let Some((px, py)) = exact_coordinates(p) else {
        return Ok(SingularityReport {
            location: p.clone(),
            multiplicity: 0,
            tangent_cone_factors: vec![],
            quadratic_factor_count: 0,
            kind: SingKind::Unclassified,
        });
    };
    let terms = shifted_terms(f, &px, &py);
    let mu = cone_multiplicity(&terms)?;
    // cone coefficients c_i of u^i v^(mu−i), i = 0..mu
    let mut cone: Vec<QuadExt> = vec![QuadExt::zero(); mu as usize + 1];
    for ((i, j), c) in &terms {
        if i + j == mu {
            cone[*i as usize] = c.clone();
        }
    }

    let report = |factors: Vec<TangentFactor>, quads: u32, kind: SingKind| SingularityReport {
        location: p.clone(),
        multiplicity: mu,
        tangent_cone_factors: factors,
        quadratic_factor_count: quads,
        kind,
    };

    if mu == 2 {
        // cone = γv² + βuv + αu², directions from αt² + βt + γ = 0, (u:v)=(t:1)
        let al = cone[2].clone();
        let be = cone[1].clone();
        let ga = cone[0].clone();
        if al.is_zero() && be.is_zero() {
            // cone = γ v²: doubled tangent V(v)
            let dir = (QuadExt::zero(), QuadExt::from_rat(Rat::one()));
            return Ok(branch_decide(f, &px, &py, dir, mu, report));
        }
        if al.is_zero() {
            // roots t = −γ/β and ∞: two distinct real tangents
            let t = ga.div(&be).neg();
            let f1 = factor_from_root(&t);
            let f2 = TangentFactor {
                coeffs: (QuadExt::zero(), QuadExt::from_rat(Rat::one())),
                multiplicity: 1,
            };
            return Ok(report(vec![f1, f2], 0, SingKind::OrdinaryRealMultiple(2)));
        }
        let disc = be.mul(&be).sub(&al.mul(&ga).scale(&rat(4)));
        match disc.sign() {
            0 => {
                // perfect square: doubled tangent through t0 = −β/(2α)
                let t0 = be.div(&al.scale(&rat(2))).neg();
                let dir = factor_from_root(&t0).coeffs;
                Ok(branch_decide(f, &px, &py, dir, mu, report))
            }
            s if s > 0 => {
                let factors = match disc.sqrt_in_field() {
                    Some(sd) => {
                        let two_al = al.scale(&rat(2));
                        let t1 = be.neg().add(&sd).div(&two_al);
                        let t2 = be.neg().sub(&sd).div(&two_al);
                        vec![factor_from_root(&t1), factor_from_root(&t2)]
                    }
                    // real distinct tangents whose directions do not live in
                    // the point's field; kind is still decided
                    None => vec![],
                };
                Ok(report(factors, 0, SingKind::OrdinaryRealMultiple(2)))
            }
            _ => {
                // negative discriminant: conjugate complex tangents, the
                // point is isolated in the real curve
                Ok(report(vec![], 1, SingKind::OrdinaryRealMultiple(0)))
            }
        }
    } else {
        // multiplicity ≥ 3: exact analysis for rational cones only
        if cone.iter().any(|c| !c.is_rational()) {
            return Ok(report(vec![], 0, SingKind::Unclassified));
        }
        let g = UniPoly::new(cone.iter().map(|c| c.a.clone()).collect());
        let v_mult = mu - g.degree().unwrap_or(0) as u32;
        let g_squarefree = g.degree().unwrap_or(0) == 0
            || uni::gcd(&g, &g.derivative()).degree() == Some(0);
        let squarefree = g_squarefree && v_mult <= 1;
        let Ok(roots) = uni::isolate_roots(&g) else {
            return Ok(report(vec![], 0, SingKind::Unclassified));
        };
        let mut factors: Vec<TangentFactor> = vec![];
        let mut real_dirs = 0u32;
        let mut accounted = v_mult;
        for r in &roots {
            real_dirs += 1;
            accounted += r.multiplicity;
            if let Some(t) = surd_from_root(r) {
                let mut fac = factor_from_root(&t);
                fac.multiplicity = r.multiplicity;
                factors.push(fac);
            }
        }
        if v_mult > 0 {
            real_dirs += 1;
            factors.push(TangentFactor {
                coeffs: (QuadExt::zero(), QuadExt::from_rat(Rat::one())),
                multiplicity: v_mult,
            });
        }
        // remaining degree comes in conjugate complex pairs
        let quads = (mu - accounted) / 2;
        let kind = if squarefree {
            SingKind::OrdinaryRealMultiple(real_dirs)
        } else {
            SingKind::NonOrdinary
        };
        Ok(report(factors, quads, kind))
    }
}

fn factor_from_root(t: &QuadExt) -> TangentFactor {
    // root (u:v) = (t:1) of the cone ↦ linear factor u − t·v, coefficients (1, −t)
    let (a, b) = normalize_pair(QuadExt::from_rat(Rat::one()), t.neg());
    TangentFactor {
        coeffs: (a, b),
        multiplicity: 1,
    }
}

fn branch_decide(
    f: &Poly,
    px: &QuadExt,
    py: &QuadExt,
    dir: (QuadExt, QuadExt),
    mu: u32,
    report: impl Fn(Vec<TangentFactor>, u32, SingKind) -> SingularityReport,
) -> SingularityReport {
    let factor = TangentFactor {
        coeffs: dir.clone(),
        multiplicity: 2,
    };
    let kind = match real_branches(f, px, py) {
        Some(1) => SingKind::Cusp,
        Some(_) => SingKind::NonOrdinary,
        None => SingKind::Unclassified,
    };
    let _ = mu;
    report(vec![factor], 0, kind)
}

/// Count the real branches through the singular point: intersect the curve
/// with small rational-radius circles about the point and shrink the radius
/// until the crossing count stabilizes for two consecutive radii. Crossings
/// are counted exactly, so arbitrarily flat branches are not missed.
pub fn real_branches(f: &Poly, px: &QuadExt, py: &QuadExt) -> Option<u32> {
    let mut prev: Option<u32> = None;
    for k in 6..=16u32 {
        let r = Rat::new(BigInt::one(), BigInt::one() << k);
        let count = circle_crossings(f, px, py, &r);
        if let (Some(p), Some(c)) = (prev, count) {
            if p == c && p % 2 == 0 {
                return Some(p / 2);
            }
        }
        prev = count;
    }
    None
}

/// Number of transversal crossings of the curve with the circle of radius
/// `r` about the point, counted exactly: the restriction of `f` to the
/// circle under the half-angle parametrization
/// `θ ↦ ((1−t²)/(1+t²), 2t/(1+t²))` is a univariate polynomial over ℚ(√m),
/// and its real roots are counted with a Sturm sequence. Returns `None`
/// when the circle is tangent to the curve or meets it at `θ = π` (the
/// parameter's point at infinity); a smaller radius resolves both.
fn circle_crossings(f: &Poly, px: &QuadExt, py: &QuadExt, r: &Rat) -> Option<u32> {
    let d = f.degree()? as usize;
    let p = restrict_to_circle(f, px, py, r);
    // a dropped leading coefficient means the curve passes through the
    // circle's θ = π point, where a crossing would be invisible
    if p.len() != 2 * d + 1 {
        return None;
    }
    // Root counting over ℚ(√m)[t] goes through the rational norm
    // N = P·P̄ ∈ ℚ[t]: isolate N's roots with the integer machinery, then
    // attribute each to P or its conjugate by an exact endpoint sign check.
    // When N is squarefree, P and P̄ share no roots and all roots are
    // simple, so a root of P is a sign change (a transversal crossing).
    let rational = p.iter().all(|c| c.b.is_zero());
    let norm = if rational {
        UniPoly::new(p.iter().map(|c| c.a.clone()).collect())
    } else {
        let pbar: QPoly = p.iter().map(QuadExt::conj).collect();
        let n = qp_mul(&p, &pbar);
        debug_assert!(n.iter().all(|c| c.b.is_zero()));
        UniPoly::new(n.iter().map(|c| c.a.clone()).collect())
    };
    if uni::gcd(&norm, &norm.derivative()).degree() != Some(0) {
        // a repeated root: tangential crossing or conjugate-circle
        // coincidence; a smaller radius resolves it
        return None;
    }
    let roots = uni::isolate_roots(&norm).ok()?;
    if rational {
        return Some(roots.len() as u32);
    }
    let mut count = 0u32;
    for root in &roots {
        if let Some(x0) = &root.exact {
            if qp_eval(&p, x0).is_zero() {
                count += 1;
            }
            continue;
        }
        // endpoints of an isolating interval are not roots of N, hence not
        // of P; a sign change pins the root on P rather than P̄
        let slo = qp_eval(&p, &root.interval.lo).sign();
        let shi = qp_eval(&p, &root.interval.hi).sign();
        if slo != shi {
            count += 1;
        }
    }
    Some(count)
}

// Dense univariate polynomials over ℚ(√m), lowest degree first.
type QPoly = Vec<QuadExt>;

fn qp_trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn qp_mul(a: &[QuadExt], b: &[QuadExt]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![QuadExt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&ai.mul(bj));
        }
    }
    qp_trim(&mut out);
    out
}

/// Horner evaluation at a rational argument.
fn qp_eval(p: &[QuadExt], x: &Rat) -> QuadExt {
    let mut acc = QuadExt::zero();
    for c in p.iter().rev() {
        acc = acc.scale(x).add(c);
    }
    acc
}

/// `(1+t²)^d · f(px + r·(1−t²)/(1+t²), py + r·2t/(1+t²))` as a polynomial
/// in `t`, where `d = deg f`.
fn restrict_to_circle(f: &Poly, px: &QuadExt, py: &QuadExt, r: &Rat) -> QPoly {
    let d = f.degree().unwrap_or(0) as usize;
    let one = QuadExt::from_rat(Rat::one());
    let rq = QuadExt::from_rat(r.clone());
    let u: QPoly = vec![one.clone(), QuadExt::zero(), one.clone()];
    let a: QPoly = vec![px.add(&rq), QuadExt::zero(), px.sub(&rq)];
    let b: QPoly = vec![py.clone(), QuadExt::from_rat(r * rat(2)), py.clone()];
    let pows = |base: &QPoly| -> Vec<QPoly> {
        let mut v = vec![vec![one.clone()]];
        for i in 1..=d {
            let next = qp_mul(&v[i - 1], base);
            v.push(next);
        }
        v
    };
    let (ap, bp, up) = (pows(&a), pows(&b), pows(&u));
    let mut acc: QPoly = vec![];
    for (e, c) in f.terms() {
        let (i, j) = (e[1] as usize, e[2] as usize);
        let t = qp_mul(&qp_mul(&ap[i], &bp[j]), &up[d - i - j]);
        if acc.len() < t.len() {
            acc.resize(t.len(), QuadExt::zero());
        }
        for (k, tv) in t.iter().enumerate() {
            acc[k] = acc[k].add(&tv.scale(c));
        }
    }
    qp_trim(&mut acc);
    acc
}

/// f64 angle of a tangent factor's line direction (for rendering).
pub fn factor_angle(fac: &TangentFactor) -> f64 {
    let ta = fac.coeffs.1.approx();
    let tb = -fac.coeffs.0.approx();
    tb.atan2(ta)
}

pub fn surd_pair_to_string(pair: &(QuadExt, QuadExt)) -> String {
    format!("({} : {})", pair.0, pair.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::singular_points;

    fn p2(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn tangent_cone_of_node() {
        let f = p2("X1*X2 + X1^3");
        let cone = tangent_cone(&f, &rat(0), &rat(0)).unwrap();
        assert_eq!(cone, p2("X1*X2"));
    }

    #[test]
    fn tangent_cone_of_cusp() {
        let f = p2("X2^2 - X1^3");
        let cone = tangent_cone(&f, &rat(0), &rat(0)).unwrap();
        assert_eq!(cone, p2("X2^2"));
    }

    #[test]
    fn tangent_cone_rejects_smooth_point() {
        let f = p2("X1^2 + X2^2 - 1");
        assert!(matches!(
            tangent_cone(&f, &rat(1), &rat(0)),
            Err(SingularError::NotSingular)
        ));
        assert!(matches!(
            tangent_cone(&f, &rat(5), &rat(5)),
            Err(SingularError::NotOnCurve)
        ));
    }

    #[test]
    fn classify_node() {
        let f = p2("X2^2 - X1^2*(X1 + 1)");
        let s = singular_points(&f).unwrap();
        let rep = classify(&f, &s.points[0]).unwrap();
        assert_eq!(rep.multiplicity, 2);
        assert_eq!(rep.kind, SingKind::OrdinaryRealMultiple(2));
        assert_eq!(rep.tangent_cone_factors.len(), 2);
    }

    #[test]
    fn classify_cusp() {
        let f = p2("X2^2 - X1^3");
        let s = singular_points(&f).unwrap();
        let rep = classify(&f, &s.points[0]).unwrap();
        assert_eq!(rep.multiplicity, 2);
        assert_eq!(rep.kind, SingKind::Cusp);
        assert_eq!(rep.tangent_cone_factors.len(), 1);
        assert_eq!(surd_pair_to_string(&rep.tangent_cone_factors[0].coeffs), "(0 : 1)");
    }

    #[test]
    fn classify_tacnode() {
        let f = p2("(X2 - X1^2)*(X2 + X1^2)");
        let s = singular_points(&f).unwrap();
        let rep = classify(&f, &s.points[0]).unwrap();
        assert_eq!(rep.kind, SingKind::NonOrdinary);
    }

    #[test]
    fn classify_isolated_point() {
        // x² + y² = 0 only at the origin; embed in a curve: y² + x² − x³
        let f = p2("X2^2 + X1^2 - X1^3");
        let s = singular_points(&f).unwrap();
        let rep = classify(&f, &s.points[0]).unwrap();
        assert_eq!(rep.kind, SingKind::OrdinaryRealMultiple(0));
        assert_eq!(rep.quadratic_factor_count, 1);
    }

    #[test]
    fn classify_ordinary_triple_point() {
        // three lines through the origin: x·y·(x−y), perturbed at higher order
        let f = p2("X1*X2*(X1 - X2) + X1^4");
        let s = singular_points(&f).unwrap();
        let origin = s
            .points
            .iter()
            .find(|p| p.exact_coords() == Some((rat(0), rat(0))))
            .unwrap();
        let rep = classify(&f, origin).unwrap();
        assert_eq!(rep.multiplicity, 3);
        assert_eq!(rep.kind, SingKind::OrdinaryRealMultiple(3));
    }

    #[test]
    fn transversal_product_is_ordinary_double() {
        let f = p2("(X1^2 + X2^2 - 1)*(X2 - X1)");
        // intersection points of circle and line are irrational (±√2/2, ±√2/2)
        let s = singular_points(&f).unwrap();
        assert_eq!(s.points.len(), 2);
        for p in &s.points {
            let rep = classify(&f, p).unwrap();
            assert_eq!(rep.kind, SingKind::OrdinaryRealMultiple(2));
        }
    }

    #[test]
    fn gauss_directions() {
        let f = p2("X1^2 + X2^2 - 1");
        let d = gauss_direction(
            &f,
            &QuadExt::from_rat(rat(1)),
            &QuadExt::from_rat(rat(0)),
        )
        .unwrap();
        assert_eq!(surd_pair_to_string(&d), "(1 : 0)");
        let g = p2("X2 - X1^2");
        let d2 = gauss_direction(
            &g,
            &QuadExt::from_rat(rat(1)),
            &QuadExt::from_rat(rat(1)),
        )
        .unwrap();
        // gradient (−2, 1), normalized to positive leading entry
        assert_eq!(surd_pair_to_string(&d2), "(2 : -1)");
    }

    #[test]
    fn translation_invariance_of_classification() {
        let f = p2("X2^2 - X1^3");
        let s0 = singular_points(&f).unwrap();
        let rep0 = classify(&f, &s0.points[0]).unwrap();
        let shifted = p2("(X2 - 2)^2 - (X1 - 1)^3");
        let s = singular_points(&shifted).unwrap();
        assert_eq!(s.points[0].exact_coords().unwrap(), (rat(1), rat(2)));
        let rep = classify(&shifted, &s.points[0]).unwrap();
        assert_eq!(rep.kind, rep0.kind);
        assert_eq!(rep.kind, SingKind::Cusp);
        assert_eq!(surd_pair_to_string(&rep.tangent_cone_factors[0].coeffs), "(0 : 1)");
    }
}
