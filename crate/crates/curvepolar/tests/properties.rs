//! Randomized invariant suites for the core algebra: parsing, calculus,
//! interval evaluation, resultants, and polarity.

use curvepolar::polar::{classical_polar, polar_line, polar_point, ProjPoint, Quadric};
use curvepolar::poly::{resultant, sylvester_matrix, det_rat, Interval, Poly, Rat};
use curvepolar::uni;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Small rational coefficients.
fn arb_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

/// Sparse affine polynomial in X1, X2 of total degree at most `maxdeg`.
fn arb_poly(maxdeg: u32, maxterms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0..=maxdeg, 0..=maxdeg), arb_rat()), 1..=maxterms).prop_map(
        move |terms| {
            Poly::from_terms(
                2,
                terms.into_iter().filter_map(|((i, j), c)| {
                    (i + j <= maxdeg).then_some(([0u32, i, j], c))
                }),
            )
        },
    )
}

fn arb_point() -> impl Strategy<Value = ProjPoint> {
    ([arb_rat(), arb_rat(), arb_rat()])
        .prop_filter("nonzero point", |c| c.iter().any(|x| !x.is_zero()))
        .prop_map(|[a, b, c]| ProjPoint::new(a, b, c))
}

fn arb_quadric() -> impl Strategy<Value = Quadric> {
    prop::collection::vec(arb_rat(), 6)
        .prop_filter_map("non-degenerate quadric", |c| {
            let q = Poly::from_terms(
                3,
                [
                    ([2, 0, 0], c[0].clone()),
                    ([1, 1, 0], c[1].clone()),
                    ([1, 0, 1], c[2].clone()),
                    ([0, 2, 0], c[3].clone()),
                    ([0, 1, 1], c[4].clone()),
                    ([0, 0, 2], c[5].clone()),
                ],
            );
            Quadric::new(q).ok()
        })
}

proptest! {
    /// Printing and re-parsing is the identity.
    #[test]
    fn parser_round_trips(f in arb_poly(6, 8)) {
        let text = f.to_string();
        let back = Poly::parse(&text).unwrap();
        prop_assert_eq!(back, f);
    }

    /// Euler's relation `Σ Xᵢ·∂F/∂Xᵢ = d·F` for homogeneous polynomials.
    #[test]
    fn euler_relation(f in arb_poly(6, 8)) {
        prop_assume!(!f.is_zero());
        let fh = f.homogenize();
        let d = fh.degree().unwrap();
        let mut sum = Poly::zero(3);
        for i in 0..3 {
            sum = sum.add(&fh.partial(i).mul(&Poly::var(3, i)));
        }
        prop_assert_eq!(sum, fh.scale(&Rat::from_integer(d.into())));
    }

    /// Interval evaluation encloses every rational point evaluation.
    #[test]
    fn interval_evaluation_is_sound(
        f in arb_poly(5, 8),
        cx in arb_rat(), cy in arb_rat(),
        wx in 1i64..=8, wy in 1i64..=8,
        tx in 0i64..=16, ty in 0i64..=16,
    ) {
        let half = |w: i64| rat(w, 5);
        let bx = Interval::new(&cx - half(wx), &cx + half(wx));
        let by = Interval::new(&cy - half(wy), &cy + half(wy));
        // a point inside the box, at fraction (tx/16, ty/16) of its extent
        let px = &bx.lo + bx.width() * rat(tx, 16);
        let py = &by.lo + by.width() * rat(ty, 16);
        let range = f.eval_interval(&[bx, by]);
        let v = f.eval_rat(&[px, py]);
        prop_assert!(range.lo <= v && v <= range.hi);
    }

    /// Interval multiplication encloses all products of members.
    #[test]
    fn interval_product_is_sound(
        a in arb_rat(), b in arb_rat(), c in arb_rat(), d in arb_rat(),
        s in 0i64..=8, t in 0i64..=8,
    ) {
        let (alo, ahi) = if a <= b { (a, b) } else { (b, a) };
        let (blo, bhi) = if c <= d { (c, d) } else { (d, c) };
        let ia = Interval::new(alo.clone(), ahi.clone());
        let ib = Interval::new(blo.clone(), bhi.clone());
        let x = &alo + ia.width() * rat(s, 8);
        let y = &blo + ib.width() * rat(t, 8);
        let prod = ia.mul(&ib);
        let v = x * y;
        prop_assert!(prod.lo <= v && v <= prod.hi);
    }

    /// Resultants commute with specialization of the kept variable when the
    /// leading coefficients survive.
    #[test]
    fn resultant_specializes(
        p in arb_poly(4, 6),
        q in arb_poly(4, 6),
        x0 in arb_rat(),
    ) {
        prop_assume!(p.degree_in(2).unwrap_or(0) > 0 && q.degree_in(2).unwrap_or(0) > 0);
        let syl = sylvester_matrix(&p, &q, 2).unwrap();
        // entries are polynomials in X1 alone; specialize then take the
        // determinant, which must agree with evaluating the symbolic resultant
        let dummy = Rat::zero();
        let spec: Vec<Vec<Rat>> = syl
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.eval_rat(&[x0.clone(), dummy.clone()]))
                    .collect()
            })
            .collect();
        let res = resultant(&p, &q, 2).unwrap();
        let lhs = res.eval_rat(&[x0.clone(), dummy]);
        prop_assert_eq!(lhs, det_rat(&spec));
    }

    /// The classical polar is linear in the pole.
    #[test]
    fn classical_polar_is_linear_in_the_pole(
        f in arb_poly(5, 8),
        a in arb_point(),
        b in arb_point(),
        s in arb_rat(),
        t in arb_rat(),
    ) {
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let fh = f.homogenize();
        let coords: Vec<Rat> = (0..3)
            .map(|i| &(&s * &a.coords[i]) + &(&t * &b.coords[i]))
            .collect();
        prop_assume!(coords.iter().any(|c| !c.is_zero()));
        let combo = ProjPoint::new(coords[0].clone(), coords[1].clone(), coords[2].clone());
        let lhs = classical_polar(&fh, &combo);
        let pa = classical_polar(&fh, &a);
        let pb = classical_polar(&fh, &b);
        // compare as raw polynomials; degenerate (zero) polars short-circuit
        let pa = pa.map_or(Poly::zero(3), |p| p);
        let pb = pb.map_or(Poly::zero(3), |p| p);
        let rhs = pa.scale(&s).add(&pb.scale(&t));
        match lhs {
            Ok(p) => prop_assert_eq!(p, rhs),
            Err(_) => prop_assert!(rhs.is_zero()),
        }
    }

    /// Degree laws: `deg(polar) = d − 1` for the classical polar of a
    /// squarefree-independent pole choice (when nonzero).
    #[test]
    fn classical_polar_degree(f in arb_poly(5, 8), a in arb_point()) {
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let fh = f.homogenize();
        let d = fh.degree().unwrap();
        if let Ok(p) = classical_polar(&fh, &a) {
            prop_assert_eq!(p.degree(), Some(d - 1));
        }
    }

    /// Polarity is an involution: the pole of the polar line of `A` is `A`.
    #[test]
    fn polarity_involution(q in arb_quadric(), a in arb_point()) {
        let l = polar_line(&q, &a);
        let back = polar_point(&q, &l);
        prop_assert_eq!(back.canonical(), a.canonical());
    }

    /// Incidence reciprocity: `B` on the polar of `A` iff `A` on the polar
    /// of `B`.
    #[test]
    fn incidence_reciprocity(q in arb_quadric(), a in arb_point(), b in arb_point()) {
        let la = polar_line(&q, &a);
        let lb = polar_line(&q, &b);
        prop_assert_eq!(b.incident(&la), a.incident(&lb));
    }

    /// Root isolation on a product of distinct linear factors finds exactly
    /// the constructed roots.
    #[test]
    fn isolation_finds_constructed_rational_roots(
        mut roots in prop::collection::btree_set((-12i64..=12, 1i64..=4), 1..=5),
    ) {
        // de-duplicate as rationals (e.g. 2/1 vs 4/2)
        let vals: std::collections::BTreeSet<Rat> =
            roots.iter().map(|&(n, d)| rat(n, d)).collect();
        roots.clear();
        let mut p = uni::UniPoly::new(vec![Rat::one()]);
        for r in &vals {
            p = p.mul(&uni::UniPoly::new(vec![-r.clone(), Rat::one()]));
        }
        let found = uni::isolate_roots(&p).unwrap();
        prop_assert_eq!(found.len(), vals.len());
        for loc in &found {
            let hit = vals
                .iter()
                .any(|r| loc.interval.contains(r));
            prop_assert!(hit, "isolated interval contains no constructed root");
        }
    }

    /// The square-free part has the same real roots, each exactly once.
    #[test]
    fn squarefree_preserves_roots(
        coeffs in prop::collection::vec(-9i64..=9, 2..=6),
        e in 1u32..=3,
    ) {
        let p = uni::UniPoly::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect());
        prop_assume!(p.degree().map_or(false, |d| d >= 1));
        let mut pe = p.clone();
        for _ in 1..e {
            pe = pe.mul(&p);
        }
        let sf = uni::squarefree(&pe);
        let r1 = uni::isolate_roots(&sf).unwrap();
        let r0 = uni::isolate_roots(&uni::squarefree(&p)).unwrap();
        prop_assert_eq!(r1.len(), r0.len());
    }
}
