//! Projective points and lines, quadric polarity, and polar-curve
//! constructions.
//!
//! The classical polar of `V(f)` with respect to a point `A` is
//! `V(Σ aᵢ ∂f/∂Xᵢ)`; the reciprocal polar with respect to a non-degenerate
//! quadric `Q = V(q)` and a row vector `A` is the determinant curve
//! `V(det(f,q,A))`, where the 3×3 matrix has rows `A`, `∇f`, `∇q`.

use crate::poly::{det_rat, Poly, PolyError, Rat};
use num_traits::{One, Zero};
use std::fmt;

/// A point of P² over the rationals, stored unnormalized.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    pub coords: [Rat; 3],
}

/// A line of P², given by its coefficient triple: `V(b0 X0 + b1 X1 + b2 X2)`.
#[derive(Clone, Debug)]
pub struct ProjLine {
    pub coeffs: [Rat; 3],
}

fn canonicalize(v: &[Rat; 3]) -> [Rat; 3] {
    let pivot = v.iter().find(|c| !c.is_zero());
    match pivot {
        None => v.clone(),
        Some(p) => {
            let p = p.clone();
            [&v[0] / &p, &v[1] / &p, &v[2] / &p]
        }
    }
}

impl ProjPoint {
    pub fn new(a0: Rat, a1: Rat, a2: Rat) -> Self {
        let coords = [a0, a1, a2];
        assert!(coords.iter().any(|c| !c.is_zero()), "zero triple");
        ProjPoint { coords }
    }

    pub fn from_ints(a0: i64, a1: i64, a2: i64) -> Self {
        Self::new(rat(a0), rat(a1), rat(a2))
    }

    /// Affine point (1, x, y).
    pub fn affine(x: Rat, y: Rat) -> Self {
        Self::new(Rat::one(), x, y)
    }

    /// Scaled so the first nonzero coordinate is 1.
    pub fn canonical(&self) -> [Rat; 3] {
        canonicalize(&self.coords)
    }

    pub fn is_at_infinity(&self) -> bool {
        self.coords[0].is_zero()
    }

    /// Affine coordinates (a1/a0, a2/a0); `None` at infinity.
    pub fn to_affine(&self) -> Option<(Rat, Rat)> {
        if self.is_at_infinity() {
            return None;
        }
        Some((
            &self.coords[1] / &self.coords[0],
            &self.coords[2] / &self.coords[0],
        ))
    }

    pub fn incident(&self, l: &ProjLine) -> bool {
        let s: Rat = self
            .coords
            .iter()
            .zip(l.coeffs.iter())
            .map(|(a, b)| a * b)
            .sum();
        s.is_zero()
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}
impl Eq for ProjPoint {}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        write!(f, "({} : {} : {})", c[0], c[1], c[2])
    }
}

impl ProjLine {
    pub fn new(b0: Rat, b1: Rat, b2: Rat) -> Self {
        let coeffs = [b0, b1, b2];
        assert!(coeffs.iter().any(|c| !c.is_zero()), "zero triple");
        ProjLine { coeffs }
    }

    /// The line at infinity `V(X0)`.
    pub fn at_infinity() -> Self {
        Self::new(Rat::one(), Rat::zero(), Rat::zero())
    }

    pub fn canonical(&self) -> [Rat; 3] {
        canonicalize(&self.coeffs)
    }

    /// The defining linear form as a trivariate polynomial.
    pub fn to_poly(&self) -> Poly {
        Poly::from_terms(
            3,
            [
                ([1, 0, 0], self.coeffs[0].clone()),
                ([0, 1, 0], self.coeffs[1].clone()),
                ([0, 0, 1], self.coeffs[2].clone()),
            ],
        )
    }
}

impl PartialEq for ProjLine {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}
impl Eq for ProjLine {}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        write!(f, "[{} : {} : {}]", c[0], c[1], c[2])
    }
}

/// The flag L0 ⊂ L1 used for classical polars: a point on the line at
/// infinity.
#[derive(Clone, Debug)]
pub struct Flag2D {
    pub point: ProjPoint,
    pub line_at_infinity: ProjLine,
}

impl Flag2D {
    /// Flag with L1 = V(X0) and L0 = (0 : a : b) on it.
    pub fn direction(a: Rat, b: Rat) -> Self {
        let point = ProjPoint::new(Rat::zero(), a, b);
        let line_at_infinity = ProjLine::at_infinity();
        assert!(point.incident(&line_at_infinity));
        Flag2D {
            point,
            line_at_infinity,
        }
    }
}

/// Errors from polarity constructions.
#[derive(Debug, thiserror::Error)]
pub enum PolarError {
    #[error("polynomial must be homogeneous")]
    NotHomogeneous,
    #[error("quadric is degenerate (det = 0)")]
    DegenerateQuadric,
    #[error("quadric polynomial must be homogeneous of degree 2")]
    NotAQuadric,
    #[error("classical polar vanishes identically: the point has full multiplicity on the curve")]
    DegeneratePolar,
    #[error("center must be an affine point (a0 != 0)")]
    CenterAtInfinity,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A non-degenerate quadric `V(q)` with its symmetric matrix, `q = Xᵀ·sym·X`.
#[derive(Clone, Debug)]
pub struct Quadric {
    pub q: Poly,
    pub sym: [[Rat; 3]; 3],
}

impl Quadric {
    /// Build from a homogeneous degree-2 polynomial; rejects degenerate ones.
    pub fn new(q: Poly) -> Result<Self, PolarError> {
        let q = q.as_trivariate();
        if !q.is_homogeneous() || q.degree() != Some(2) {
            return Err(PolarError::NotAQuadric);
        }
        let mut sym: [[Rat; 3]; 3] = Default::default();
        for (e, c) in q.terms() {
            let vars: Vec<usize> = (0..3).filter(|&i| e[i] > 0).collect();
            match vars[..] {
                [i] => sym[i][i] = c.clone(),
                [i, j] => {
                    let half = c / rat(2);
                    sym[i][j] = half.clone();
                    sym[j][i] = half;
                }
                _ => unreachable!(),
            }
        }
        let det = det_rat(&sym.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
        if det.is_zero() {
            return Err(PolarError::DegenerateQuadric);
        }
        Ok(Quadric { q, sym })
    }

    /// The standard quadric `X0² + X1² + X2²`.
    pub fn standard() -> Self {
        let q = Poly::from_terms(
            3,
            [
                ([2, 0, 0], Rat::one()),
                ([0, 2, 0], Rat::one()),
                ([0, 0, 2], Rat::one()),
            ],
        );
        Quadric::new(q).unwrap()
    }

    /// The affine restriction q(1, X1, X2) as a bivariate polynomial.
    pub fn affine_part(&self) -> Poly {
        self.q.set_x0_one()
    }

    /// Whether the affine part of the quadric is the squared distance to a
    /// point, i.e. the lower-right 2×2 block is positive definite.
    pub fn is_distance_like(&self) -> bool {
        let a = &self.sym[1][1];
        let det2 = &(&self.sym[1][1] * &self.sym[2][2]) - &(&self.sym[1][2] * &self.sym[2][1]);
        a > &Rat::zero() && det2 > Rat::zero()
    }
}

/// The classical polar `Σ aᵢ ∂f/∂Xᵢ` of a homogeneous curve with respect to
/// the point `A`; degree d−1 when nonzero.
pub fn classical_polar(f: &Poly, a: &ProjPoint) -> Result<Poly, PolarError> {
    let f = f.as_trivariate();
    if !f.is_homogeneous() {
        return Err(PolarError::NotHomogeneous);
    }
    let mut out = Poly::zero(3);
    for i in 0..3 {
        out = out.add(&f.partial(i).scale(&a.coords[i]));
    }
    if out.is_zero() {
        return Err(PolarError::DegeneratePolar);
    }
    Ok(out)
}

/// The polar line `A^⊥` of a point with respect to a quadric:
/// coefficients `(∂q/∂X0(A), ∂q/∂X1(A), ∂q/∂X2(A)) = 2·sym·A`.
pub fn polar_line(q: &Quadric, a: &ProjPoint) -> ProjLine {
    let mut coeffs: [Rat; 3] = Default::default();
    for i in 0..3 {
        let mut s = Rat::zero();
        for j in 0..3 {
            s += &q.sym[i][j] * &a.coords[j];
        }
        coeffs[i] = s * rat(2);
    }
    ProjLine {
        coeffs: coeffs.clone(),
    }
}

/// The polar point `L^⊥` of a line: the unique `P` with
/// `polar_line(Q, P) = L`, computed via the adjugate of sym.
pub fn polar_point(q: &Quadric, l: &ProjLine) -> ProjPoint {
    // adjugate(sym) · coeffs; the missing 1/(2 det) factor is a scalar
    let s = &q.sym;
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
        &(&s[r0][c0] * &s[r1][c1]) - &(&s[r0][c1] * &s[r1][c0])
    };
    let mut adj: [[Rat; 3]; 3] = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = match j {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (c0, c1) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let m = minor(r0, r1, c0, c1);
            adj[i][j] = if (i + j) % 2 == 0 { m } else { -m };
        }
    }
    let mut coords: [Rat; 3] = Default::default();
    for i in 0..3 {
        let mut sum = Rat::zero();
        for j in 0..3 {
            sum += &adj[i][j] * &l.coeffs[j];
        }
        coords[i] = sum;
    }
    ProjPoint { coords }
}

/// The reciprocal polar `V(det(f,q,A))`: determinant of the 3×3 matrix with
/// rows `A`, `∇f`, `∇q`, expanded by cofactors along the constant row.
pub fn reciprocal_polar(f: &Poly, q: &Quadric, a: &ProjPoint) -> Result<Poly, PolarError> {
    let f = f.as_trivariate();
    if !f.is_homogeneous() {
        return Err(PolarError::NotHomogeneous);
    }
    let df: Vec<Poly> = (0..3).map(|i| f.partial(i)).collect();
    let dq: Vec<Poly> = (0..3).map(|i| q.q.partial(i)).collect();
    let cof = |i: usize, j: usize| df[i].mul(&dq[j]).sub(&df[j].mul(&dq[i]));
    let mut out = Poly::zero(3);
    out = out.add(&cof(1, 2).scale(&a.coords[0]));
    out = out.sub(&cof(0, 2).scale(&a.coords[1]));
    out = out.add(&cof(0, 1).scale(&a.coords[2]));
    Ok(out)
}

/// The 2×2 matrix with rows `∇f`, `∇q_aff` in the affine variables; its
/// determinant is the affine reciprocal polar (up to scalar) for the
/// standard flag.
pub fn reciprocal_minor_matrix(f: &Poly, q_aff: &Poly) -> [[Poly; 2]; 2] {
    [
        [f.partial(1), f.partial(2)],
        [q_aff.partial(1), q_aff.partial(2)],
    ]
}

/// Determinant of the minor matrix: `∂f/∂X1·∂q/∂X2 − ∂f/∂X2·∂q/∂X1`.
pub fn reciprocal_minor_det(f: &Poly, q_aff: &Poly) -> Poly {
    let m = reciprocal_minor_matrix(f, q_aff);
    m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0]))
}

/// The re-centered quadric `q′ = (1+Σaᵢ²)X0² − 2Σ aᵢX0Xᵢ + ΣXᵢ²` whose polar
/// point of the line at infinity is the affine point `A = (1:a1:a2)`.
pub fn quadric_for_center(a: &ProjPoint) -> Result<Quadric, PolarError> {
    if a.is_at_infinity() {
        return Err(PolarError::CenterAtInfinity);
    }
    let (a1, a2) = a.to_affine().unwrap();
    let c00 = Rat::one() + &a1 * &a1 + &a2 * &a2;
    let q = Poly::from_terms(
        3,
        [
            ([2, 0, 0], c00),
            ([1, 1, 0], -(&a1 * rat(2))),
            ([1, 0, 1], -(&a2 * rat(2))),
            ([0, 2, 0], Rat::one()),
            ([0, 0, 2], Rat::one()),
        ],
    );
    Quadric::new(q)
}

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }
    fn p3(s: &str) -> Poly {
        Poly::parse3(s).unwrap()
    }

    #[test]
    fn classical_polar_of_circle() {
        let f = p3("X1^2 + X2^2 - X0^2");
        let a = ProjPoint::from_ints(0, 0, 1);
        let v = classical_polar(&f, &a).unwrap();
        assert_eq!(v, p3("2*X2"));
    }

    #[test]
    fn classical_polar_is_partial_for_coordinate_direction() {
        let f = p2("X1^3 - X1*X2 + 2").homogenize();
        let a = ProjPoint::from_ints(0, 0, 1);
        let v = classical_polar(&f, &a).unwrap();
        assert_eq!(v, f.partial(2));
        assert_eq!(v.degree(), Some(2));
    }

    #[test]
    fn degenerate_polar_detected() {
        // A = (1:0:0) has full multiplicity on X1^d
        let f = p3("X1^3");
        let a = ProjPoint::from_ints(1, 0, 0);
        assert!(matches!(
            classical_polar(&f, &a),
            Err(PolarError::DegeneratePolar)
        ));
    }

    #[test]
    fn euler_relation_point_on_curve() {
        // if A ∈ V(f) then A ∈ V(polar_A f), by Euler's relation
        let f = p3("X0*X1^2 - X2^3 + X0^2*X2");
        let a = ProjPoint::from_ints(0, 1, 1); // not on f; use one on it
        let on = ProjPoint::from_ints(1, 0, 0);
        assert!(f.eval_rat(&on.coords).is_zero());
        let v = classical_polar(&f, &on).unwrap();
        assert!(v.eval_rat(&on.coords).is_zero());
        let _ = a;
    }

    #[test]
    fn standard_polar_line_is_identity_on_coords() {
        let q = Quadric::standard();
        let a = ProjPoint::from_ints(3, -1, 2);
        let l = polar_line(&q, &a);
        assert_eq!(l, ProjLine::new(rat(3), rat(-1), rat(2)));
    }

    #[test]
    fn polarity_involution() {
        let q = Quadric::new(p3("2*X0^2 - 2*X0*X1 + X1^2 + X2^2")).unwrap();
        let a = ProjPoint::from_ints(1, 1, 0);
        let l = polar_line(&q, &a);
        assert_eq!(l, ProjLine::at_infinity());
        assert_eq!(polar_point(&q, &l), a);
    }

    #[test]
    fn polar_point_of_infinity_standard() {
        let q = Quadric::standard();
        let h = ProjLine::at_infinity();
        assert_eq!(polar_point(&q, &h), ProjPoint::from_ints(1, 0, 0));
    }

    #[test]
    fn recentered_quadric_examples() {
        let q = quadric_for_center(&ProjPoint::from_ints(1, 1, 0)).unwrap();
        assert_eq!(q.q, p3("2*X0^2 - 2*X0*X1 + X1^2 + X2^2"));

        let q0 = quadric_for_center(&ProjPoint::from_ints(1, 0, 0)).unwrap();
        assert_eq!(q0.q, p3("X0^2 + X1^2 + X2^2"));

        let q2 = quadric_for_center(&ProjPoint::from_ints(1, 2, -1)).unwrap();
        assert_eq!(
            q2.q,
            p3("6*X0^2 - 4*X0*X1 + 2*X0*X2 + X1^2 + X2^2")
        );
        assert_eq!(
            polar_point(&q2, &ProjLine::at_infinity()),
            ProjPoint::from_ints(1, 2, -1)
        );
        assert!(q2.is_distance_like());
    }

    #[test]
    fn recentered_quadric_gradient_at_center() {
        let a = ProjPoint::from_ints(1, 2, -1);
        let q = quadric_for_center(&a).unwrap();
        assert_eq!(q.q.partial(0).eval_rat(&a.coords), rat(2));
        assert!(q.q.partial(1).eval_rat(&a.coords).is_zero());
        assert!(q.q.partial(2).eval_rat(&a.coords).is_zero());
    }

    #[test]
    fn reciprocal_polar_of_offset_circle() {
        // circle centered at (2,0): distance extrema to origin on the X1-axis
        let f = p2("(X1-2)^2 + X2^2 - 1").homogenize();
        let q = Quadric::standard();
        let a = ProjPoint::from_ints(1, 0, 0);
        let v = reciprocal_polar(&f, &q, &a).unwrap();
        let aff = v.set_x0_one();
        // proportional to X2
        assert_eq!(aff.exact_div(&p2("X2")).map(|g| g.degree()), Some(Some(0)));
        for x in [1i64, 3] {
            assert!(f
                .eval_rat(&[rat(1), rat(x), rat(0)])
                .is_zero());
        }
    }

    #[test]
    fn reciprocal_minor_matches_determinant_form() {
        let f = p2("X1^4 - X1*X2 + X2^3 - 1");
        let fh = f.homogenize();
        let q = Quadric::standard();
        let a = ProjPoint::from_ints(1, 0, 0);
        let v = reciprocal_polar(&fh, &q, &a).unwrap();
        let aff = v.set_x0_one();
        // affine part equals 2(X2 ∂f/∂X1 − X1 ∂f/∂X2) + (terms from X0-derivatives)?
        // For the standard quadric the X0 row contributes nothing after
        // dehomogenizing against the minor with q_aff = X1²+X2²:
        let minor = reciprocal_minor_det(&f, &p2("X1^2 + X2^2"));
        // aff = -minor here (cofactor sign); compare up to scalar
        let ratio = aff.exact_div(&minor);
        assert!(ratio.is_some_and(|r| r.degree() == Some(0)));
    }

    #[test]
    fn centered_circle_minor_vanishes() {
        let f = p2("X1^2 + X2^2 - 1");
        let m = reciprocal_minor_det(&f, &p2("X1^2 + X2^2"));
        assert!(m.is_zero());
    }

    #[test]
    fn incidence_reciprocity() {
        let q = Quadric::new(p3("X0^2 + 3*X1^2 - X2^2 + X0*X1")).unwrap();
        let a = ProjPoint::from_ints(1, 2, 3);
        let b = ProjPoint::from_ints(-1, 0, 5);
        let la = polar_line(&q, &a);
        let lb = polar_line(&q, &b);
        assert_eq!(a.incident(&lb), b.incident(&la));
    }

    #[test]
    fn degenerate_quadric_rejected() {
        assert!(matches!(
            Quadric::new(p3("X1^2 + X2^2")),
            Err(PolarError::DegenerateQuadric)
        ));
        assert!(matches!(
            Quadric::new(p3("X0^3")),
            Err(PolarError::NotAQuadric)
        ));
    }
}
