//! The embedded example curves with their expected, machine-checkable facts.

use crate::poly::Poly;
use crate::singular::SingKind;
use std::sync::OnceLock;

/// Documented expectations for one corpus curve.
#[derive(Debug, Clone)]
pub struct Expected {
    pub degree: u32,
    /// Connected components of the real curve inside the default window.
    pub components: u32,
    /// Whether all components are compact (stay clear of the window boundary).
    pub all_compact: bool,
    /// Number of real singular points.
    pub singular_count: u32,
    /// Common kind of all singular points, when uniform.
    pub singular_kind: Option<SingKind>,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub title: &'static str,
    pub source: &'static str,
    pub poly: Poly,
    /// Default window (x_lo, x_hi, y_lo, y_hi) for components and rendering.
    pub window: (i64, i64, i64, i64),
    pub resolution: u32,
    pub expected: Expected,
}

pub const F1: &str = "X1^6 + 3*X1^4*X2^2 - 12*X1^4*X2 + 7*X1^4 + 3*X1^2*X2^4 - 24*X1^2*X2^3 \
                      + 66*X1^2*X2^2 - 132*X1^2*X2 + 136*X1^2 + X2^6 - 12*X2^5 + 59*X2^4 \
                      - 132*X2^3 + 84*X2^2 + 144*X2 - 143";

pub const F2: &str =
    "((X1+2)*X2 - (X1+2)^6 - X2^6)*(X1*X2 - X1^6 - X2^6) + 1/100*X2^6";

pub const F3: &str =
    "144 - 24*X2^2 - 88*X1^2 + X2^4 - X1^6 + 17*X1^4 - 14*X2^2*X1^2 + 1/100*X2^6";

pub const F4: &str = "X1^2 - X2*(X2+1)*(X2+2)";

pub const F5: &str = "((X1-4)^2 + (X2-2)^2 - 1)^2 + 1/100*((X1-7/2)*(X1-9/2))^3";

/// Product of two disjoint unit circles; the base of the counterexample.
pub const CIRCLES_F: &str = "(X1^2 + X2^2 - 1)*((X1-4)^2 + (X2-2)^2 - 1)";

/// Two horizontal and two vertical lines cutting the circles.
pub const LINES_G: &str = "(X2-1/2)*(X2+1/2)*(X1-7/2)*(X1-9/2)";

/// The counterexample curve h = f² + (1/100)·g³.
pub const COUNTEREXAMPLE_H: &str = "((X1^2 + X2^2 - 1)*((X1-4)^2 + (X2-2)^2 - 1))^2 \
                                    + 1/100*((X2-1/2)*(X2+1/2)*(X1-7/2)*(X1-9/2))^3";

fn build() -> Vec<CorpusEntry> {
    let entry = |id,
                 title,
                 source: &'static str,
                 window,
                 resolution,
                 expected: Expected| CorpusEntry {
        id,
        title,
        source,
        poly: Poly::parse(source).expect("corpus polynomial must parse"),
        window,
        resolution,
        expected,
    };
    vec![
        entry(
            "ex1",
            "compact smooth sextic with three ovals",
            F1,
            (-5, 5, -5, 5),
            512,
            Expected {
                degree: 6,
                components: 3,
                all_compact: true,
                singular_count: 0,
                singular_kind: None,
            },
        ),
        entry(
            "ex2",
            "two ovals, one ordinary double point on each",
            F2,
            (-4, 2, -2, 2),
            512,
            Expected {
                degree: 12,
                components: 2,
                all_compact: true,
                singular_count: 2,
                singular_kind: Some(SingKind::OrdinaryRealMultiple(2)),
            },
        ),
        entry(
            "ex3",
            "two non-compact branches, one ordinary double point on each",
            F3,
            (-6, 6, -6, 6),
            512,
            Expected {
                degree: 6,
                components: 2,
                all_compact: false,
                singular_count: 2,
                singular_kind: Some(SingKind::OrdinaryRealMultiple(2)),
            },
        ),
        entry(
            "ex4",
            "smooth cubic through the origin: oval plus open branch",
            F4,
            (-4, 4, -4, 4),
            256,
            Expected {
                degree: 3,
                components: 2,
                all_compact: false,
                singular_count: 0,
                singular_kind: None,
            },
        ),
        entry(
            "ex5",
            "perturbed circle with four cusps",
            F5,
            (2, 6, 0, 4),
            512,
            Expected {
                degree: 6,
                components: 2,
                all_compact: true,
                singular_count: 4,
                singular_kind: Some(SingKind::Cusp),
            },
        ),
        entry(
            "counterexample-h",
            "four cusped ovals with disjoint Gauss sectors",
            COUNTEREXAMPLE_H,
            (-3, 7, -3, 7),
            1024,
            Expected {
                degree: 12,
                components: 4,
                all_compact: true,
                singular_count: 8,
                singular_kind: Some(SingKind::Cusp),
            },
        ),
        entry(
            "circles-f",
            "two disjoint unit circles",
            CIRCLES_F,
            (-3, 7, -3, 7),
            512,
            Expected {
                degree: 4,
                components: 2,
                all_compact: true,
                singular_count: 0,
                singular_kind: None,
            },
        ),
        entry(
            "lines-g",
            "two horizontal and two vertical lines",
            LINES_G,
            (-3, 7, -3, 7),
            256,
            Expected {
                degree: 4,
                components: 1,
                all_compact: false,
                singular_count: 4,
                singular_kind: Some(SingKind::OrdinaryRealMultiple(2)),
            },
        ),
    ]
}

pub fn all() -> &'static [CorpusEntry] {
    static CORPUS: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    CORPUS.get_or_init(build)
}

pub fn get(id: &str) -> Option<&'static CorpusEntry> {
    all().iter().find(|e| e.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::singular_points;

    #[test]
    fn corpus_parses_with_stated_degrees() {
        for e in all() {
            assert_eq!(
                e.poly.degree(),
                Some(e.expected.degree),
                "degree mismatch for {}",
                e.id
            );
        }
    }

    #[test]
    fn ids_are_unique_and_resolvable() {
        for e in all() {
            assert_eq!(get(e.id).unwrap().id, e.id);
        }
        assert!(get("nope").is_none());
    }

    #[test]
    fn h_is_f_squared_plus_g_cubed_over_100() {
        let f = Poly::parse(CIRCLES_F).unwrap();
        let g = Poly::parse(LINES_G).unwrap();
        let h = Poly::parse(COUNTEREXAMPLE_H).unwrap();
        let hundredth = crate::poly::Rat::new(1.into(), 100.into());
        assert_eq!(h, f.mul(&f).add(&g.pow(3).scale(&hundredth)));
    }

    #[test]
    fn smooth_entries_have_no_singular_points() {
        for id in ["ex1", "ex4", "circles-f"] {
            let e = get(id).unwrap();
            let s = singular_points(&e.poly).unwrap();
            assert_eq!(
                s.points.len(),
                e.expected.singular_count as usize,
                "{id}"
            );
        }
    }

    #[test]
    fn line_arrangement_has_four_nodes() {
        let e = get("lines-g").unwrap();
        let s = singular_points(&e.poly).unwrap();
        assert_eq!(s.points.len(), 4);
        for p in &s.points {
            let rep = crate::singular::classify(&e.poly, p).unwrap();
            assert_eq!(rep.kind, SingKind::OrdinaryRealMultiple(2));
        }
    }
}
