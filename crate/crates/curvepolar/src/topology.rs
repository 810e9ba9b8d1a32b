//! Connected components of a real affine curve inside a box, and coverage
//! verdicts for polar-variety witness points.
//!
//! The curve is covered by grid cells on which interval evaluation cannot
//! exclude a zero (so no real curve point is ever missed), the carrying
//! cells are grouped by edge-adjacency, and certified points are assigned to
//! the resulting components. Cell covers can merge near-tangent ovals, so a
//! component count is an upper approximation that stabilizes under
//! refinement; the stated counts for the embedded examples are checked at
//! two consecutive resolutions.

use crate::polar::ProjPoint;
use crate::poly::{Interval, Poly, Rat};
use crate::singular::SingularityReport;
use crate::solve::{CertifiedPoint, SolutionSet};
use crate::uni::rat_to_f64;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error)]
pub enum TopologyError {
    #[error("resolution must be a positive power of two, got {0}")]
    BadResolution(u32),
    #[error("window must have positive width in both directions")]
    EmptyWindow,
    #[error("cannot build a component map for the zero polynomial")]
    ZeroPolynomial,
    #[error("point's box does not meet any curve-carrying cell")]
    OffMap,
    #[error("point cannot be separated between components {0:?}")]
    Ambiguous(Vec<usize>),
    #[error("component {0} does not exist")]
    NoSuchComponent(usize),
}

/// One connected group of curve-carrying cells.
#[derive(Debug, Clone)]
pub struct ComponentInfo {
    pub cell_count: usize,
    /// `false` when the component touches the window boundary: it may
    /// continue outside, so it is not certified compact.
    pub compact_in_box: bool,
    /// Bounding box of the component's cells.
    pub xbox: Interval,
    pub ybox: Interval,
}

/// A discretized decomposition of the curve inside a window: the set of
/// curve-carrying cells partitioned into edge-connected components.
#[derive(Debug, Clone)]
pub struct ComponentMap {
    pub window: (Interval, Interval),
    pub resolution: u32,
    /// Carrying cell `(i, j)` (column, row from the low corner) → component.
    cells: BTreeMap<(u32, u32), usize>,
    components: Vec<ComponentInfo>,
}

impl ComponentMap {
    pub fn components(&self) -> &[ComponentInfo] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn carrying_cells(&self) -> impl Iterator<Item = (&(u32, u32), &usize)> {
        self.cells.iter()
    }

    pub fn cells_of(&self, id: usize) -> Vec<(u32, u32)> {
        self.cells
            .iter()
            .filter(|(_, &c)| c == id)
            .map(|(&ij, _)| ij)
            .collect()
    }

    /// Closed box of cell `(i, j)`; cells share their edges.
    pub fn cell_box(&self, i: u32, j: u32) -> (Interval, Interval) {
        (
            sub_interval(&self.window.0, i, 1, self.resolution),
            sub_interval(&self.window.1, j, 1, self.resolution),
        )
    }

    /// Component ids of carrying cells whose closed boxes meet `bx × by`.
    pub fn components_meeting(&self, bx: &Interval, by: &Interval) -> Vec<usize> {
        let is = index_range(&self.window.0, bx, self.resolution);
        let js = index_range(&self.window.1, by, self.resolution);
        let mut ids: Vec<usize> = vec![];
        for i in is.clone() {
            for j in js.clone() {
                if let Some(&c) = self.cells.get(&(i, j)) {
                    if !ids.contains(&c) {
                        ids.push(c);
                    }
                }
            }
        }
        ids.sort_unstable();
        ids
    }
}

/// Indices of the grid cells whose closed boxes meet `q`.
fn index_range(w: &Interval, q: &Interval, res: u32) -> std::ops::RangeInclusive<u32> {
    let width = w.width();
    let pos = |x: &Rat| -> Rat { (x - &w.lo) * Rat::from_integer(res.into()) / &width };
    let lo = rat_floor(&pos(&q.lo));
    let hi = rat_ceil(&pos(&q.hi));
    let clamp = |v: BigInt| -> u32 {
        use num_traits::ToPrimitive;
        v.max(BigInt::zero())
            .min(BigInt::from(res - 1))
            .to_u32()
            .unwrap()
    };
    // a query endpoint exactly on a cell edge belongs to both neighbors
    clamp(lo)..=clamp(hi)
}

fn rat_floor(x: &Rat) -> BigInt {
    x.floor().to_integer()
}

fn rat_ceil(x: &Rat) -> BigInt {
    x.ceil().to_integer()
}

/// `[lo + i·w/res, lo + (i+size)·w/res]` inside the window interval.
fn sub_interval(w: &Interval, i: u32, size: u32, res: u32) -> Interval {
    let step = w.width() / Rat::from_integer(res.into());
    Interval::new(
        &w.lo + &(&step * Rat::from_integer(i.into())),
        &w.lo + &(&step * Rat::from_integer((i + size).into())),
    )
}

/// Denominator-cleared form of a bivariate polynomial for fast certified
/// interval tests: all arithmetic is over `ℤ`, avoiding the gcd
/// normalization that dominates rational interval evaluation.
struct IntPoly {
    terms: Vec<(u32, u32, BigInt)>,
    degree: u32,
    /// The coefficient scaling (lcm of denominators): `terms` represent
    /// `scale · f`, and `range_on` divides the scale back out.
    scale: BigInt,
}

fn int_pow(b: &BigInt, n: u32) -> BigInt {
    num_traits::pow::pow(b.clone(), n as usize)
}

/// `[lo, hi]^n` for an integer interval, with the tight even-power rule.
fn ipow(lo: &BigInt, hi: &BigInt, n: u32) -> (BigInt, BigInt) {
    let a = int_pow(lo, n);
    let b = int_pow(hi, n);
    if n % 2 == 1 || lo.sign() != num_bigint::Sign::Minus {
        (a, b)
    } else if hi.sign() != num_bigint::Sign::Plus {
        (b, a)
    } else {
        (BigInt::zero(), a.max(b))
    }
}

impl IntPoly {
    fn new(f: &Poly) -> Self {
        use num_integer::Integer;
        let mut l = BigInt::one();
        for (_, c) in f.terms() {
            l = l.lcm(c.denom());
        }
        IntPoly {
            terms: f
                .terms()
                .map(|(e, c)| (e[1], e[2], c.numer() * (&l / c.denom())))
                .collect(),
            degree: f.degree().unwrap_or(0),
            scale: l,
        }
    }

    /// Range enclosure of the scaled polynomial over `bx × by` by monomial
    /// interval evaluation.
    fn range_on(&self, bx: &Interval, by: &Interval) -> Interval {
        use num_integer::Integer;
        // scale both directions onto a common integer denominator
        let dx = bx.lo.denom().lcm(bx.hi.denom());
        let dy = by.lo.denom().lcm(by.hi.denom());
        let scaled = |r: &Rat, d: &BigInt| r.numer() * (d / r.denom());
        let (xa, xb) = (scaled(&bx.lo, &dx), scaled(&bx.hi, &dx));
        let (ya, yb) = (scaled(&by.lo, &dy), scaled(&by.hi, &dy));
        let d = self.degree;
        let xp: Vec<(BigInt, BigInt)> = (0..=d).map(|n| ipow(&xa, &xb, n)).collect();
        let yp: Vec<(BigInt, BigInt)> = (0..=d).map(|n| ipow(&ya, &yb, n)).collect();
        let dxp: Vec<BigInt> = (0..=d).map(|n| int_pow(&dx, n)).collect();
        let dyp: Vec<BigInt> = (0..=d).map(|n| int_pow(&dy, n)).collect();
        // term value is c·X^i·Y^j / (dx^i·dy^j); bring all terms onto the
        // common positive denominator dx^d·dy^d, which cannot change signs
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (i, j, c) in &self.terms {
            let s = c * &dxp[(d - i) as usize] * &dyp[(d - j) as usize];
            let (pa, pb) = (&xp[*i as usize], &yp[*j as usize]);
            let cand = [&pa.0 * &pb.0, &pa.0 * &pb.1, &pa.1 * &pb.0, &pa.1 * &pb.1];
            let (mlo, mhi) = (
                cand.iter().min().unwrap().clone(),
                cand.iter().max().unwrap().clone(),
            );
            if s.sign() == num_bigint::Sign::Minus {
                lo += &mhi * &s;
                hi += &mlo * &s;
            } else {
                lo += &mlo * &s;
                hi += &mhi * &s;
            }
        }
        let den = &dxp[d as usize] * &dyp[d as usize] * &self.scale;
        Interval::new(Rat::new(lo, den.clone()), Rat::new(hi, den))
    }
}

/// Certified zero test for one polynomial on grid cells, combining the
/// direct monomial range with a second-order mean-value form. The monomial
/// range loses cancellation between terms and would keep a thick band of
/// cells around the curve; the mean-value form
/// `f(c) + ∇f(cell)·(cell − c)` — with the gradient itself enclosed by a
/// mean-value form through the Hessian — is tight on small cells and
/// separates nearby ovals.
struct CellTester {
    f: IntPoly,
    fx: IntPoly,
    fy: IntPoly,
    fxx: IntPoly,
    fxy: IntPoly,
    fyy: IntPoly,
}

fn max_abs(iv: &Interval) -> Rat {
    iv.lo.abs().max(iv.hi.abs())
}

fn intersect(a: &Interval, b: &Interval) -> Interval {
    Interval::new(
        a.lo.clone().max(b.lo.clone()),
        a.hi.clone().min(b.hi.clone()),
    )
}

impl CellTester {
    fn new(f: &Poly) -> Self {
        let fx = f.partial(1);
        let fy = f.partial(2);
        CellTester {
            f: IntPoly::new(f),
            fxx: IntPoly::new(&fx.partial(1)),
            fxy: IntPoly::new(&fx.partial(2)),
            fyy: IntPoly::new(&fy.partial(2)),
            fx: IntPoly::new(&fx),
            fy: IntPoly::new(&fy),
        }
    }

    /// `g(c) ± (max|gx|·wx + max|gy|·wy)/2`, intersected with the direct
    /// range of `g`; both enclose the true range of `g` over the cell.
    #[allow(clippy::too_many_arguments)]
    fn mv_range(
        g: &IntPoly,
        gx: &IntPoly,
        gy: &IntPoly,
        bx: &Interval,
        by: &Interval,
        cx: &Interval,
        cy: &Interval,
        half: &Rat,
    ) -> Interval {
        let direct = g.range_on(bx, by);
        let v = g.range_on(cx, cy);
        let radius = max_abs(&gx.range_on(bx, by)) * bx.width() * half
            + max_abs(&gy.range_on(bx, by)) * by.width() * half;
        intersect(
            &direct,
            &Interval::new(&v.lo - &radius, &v.hi + &radius),
        )
    }

    fn may_vanish(&self, bx: &Interval, by: &Interval) -> bool {
        if !self.f.range_on(bx, by).contains_zero() {
            return false;
        }
        self.mean_value_range(bx, by).contains_zero()
    }

    /// Enclosure of the range of `f` over the cell by the second-order
    /// mean-value form (value at the midpoint plus a gradient bound).
    fn mean_value_range(&self, bx: &Interval, by: &Interval) -> Interval {
        let cx = Interval::point(bx.midpoint());
        let cy = Interval::point(by.midpoint());
        let half = Rat::new(BigInt::one(), BigInt::from(2));
        let m1 = max_abs(&Self::mv_range(
            &self.fx, &self.fxx, &self.fxy, bx, by, &cx, &cy, &half,
        ));
        let m2 = max_abs(&Self::mv_range(
            &self.fy, &self.fxy, &self.fyy, bx, by, &cx, &cy, &half,
        ));
        let v = self.f.range_on(&cx, &cy);
        let radius = m1 * bx.width() * &half + m2 * by.width() * &half;
        Interval::new(&v.lo - &radius, &v.hi + &radius)
    }

    /// Certified constant sign over the whole cell: `Some(true)` proves
    /// `f > 0`, `Some(false)` proves `f < 0`, `None` is inconclusive (the
    /// internal representation is scaled by a positive constant, which
    /// does not affect the sign).
    fn certain_sign(&self, bx: &Interval, by: &Interval) -> Option<bool> {
        let direct = self.f.range_on(bx, by);
        if direct.lo.is_positive() {
            return Some(true);
        }
        if direct.hi.is_negative() {
            return Some(false);
        }
        let mv = self.mean_value_range(bx, by);
        if mv.lo.is_positive() {
            Some(true)
        } else if mv.hi.is_negative() {
            Some(false)
        } else {
            None
        }
    }
}

/// Cover the real points of `V(f)` inside the window by grid cells at the
/// given resolution and group the carrying cells into connected components.
/// Subdivision prunes any region where interval evaluation of `f` excludes
/// zero, so the cover is sound: every curve point lies in a carrying cell.
pub fn component_map(
    f: &Poly,
    window: &(Interval, Interval),
    resolution: u32,
) -> Result<ComponentMap, TopologyError> {
    if f.is_zero() {
        return Err(TopologyError::ZeroPolynomial);
    }
    if resolution == 0 || !resolution.is_power_of_two() {
        return Err(TopologyError::BadResolution(resolution));
    }
    if !window.0.width().is_positive() || !window.1.width().is_positive() {
        return Err(TopologyError::EmptyWindow);
    }
    let tester = CellTester::new(f);
    let mut carrying: Vec<(u32, u32)> = vec![];
    let mut stack: Vec<(u32, u32, u32)> = vec![(0, 0, resolution)];
    while let Some((i, j, size)) = stack.pop() {
        let bx = sub_interval(&window.0, i, size, resolution);
        let by = sub_interval(&window.1, j, size, resolution);
        if !tester.may_vanish(&bx, &by) {
            continue;
        }
        if size == 1 {
            // confirm below cell size: borderline cells with no curve
            // inside are excluded by six more levels of subdivision, while
            // soundness keeps every true curve cell
            if confirmed(&tester, &bx, &by, 6) {
                carrying.push((i, j));
            }
            continue;
        }
        let h = size / 2;
        for (di, dj) in [(0, 0), (0, h), (h, 0), (h, h)] {
            stack.push((i + di, j + dj, h));
        }
    }
    carrying.sort_unstable();

    // union-find over carrying cells, edge (4-) adjacency
    let index: BTreeMap<(u32, u32), usize> =
        carrying.iter().enumerate().map(|(k, &ij)| (ij, k)).collect();
    let mut parent: Vec<usize> = (0..carrying.len()).collect();
    fn find(parent: &mut Vec<usize>, mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for (k, &(i, j)) in carrying.iter().enumerate() {
        let join = |ni: u32, nj: u32, parent: &mut Vec<usize>| {
            if let Some(&m) = index.get(&(ni, nj)) {
                let (ra, rb) = (find(parent, k), find(parent, m));
                parent[ra] = rb;
            }
        };
        join(i + 1, j, &mut parent);
        join(i, j + 1, &mut parent);
    }

    // stable component ids in order of first (sorted) cell
    let mut id_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut cells: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    let mut components: Vec<ComponentInfo> = vec![];
    for (k, &(i, j)) in carrying.iter().enumerate() {
        let root = find(&mut parent, k);
        let next = components.len();
        let id = *id_of_root.entry(root).or_insert(next);
        let bx = sub_interval(&window.0, i, 1, resolution);
        let by = sub_interval(&window.1, j, 1, resolution);
        if id == components.len() {
            components.push(ComponentInfo {
                cell_count: 0,
                compact_in_box: true,
                xbox: bx.clone(),
                ybox: by.clone(),
            });
        }
        let info = &mut components[id];
        info.cell_count += 1;
        if i == 0 || j == 0 || i == resolution - 1 || j == resolution - 1 {
            info.compact_in_box = false;
        }
        info.xbox = hull(&info.xbox, &bx);
        info.ybox = hull(&info.ybox, &by);
        cells.insert((i, j), id);
    }
    Ok(ComponentMap {
        window: window.clone(),
        resolution,
        cells,
        components,
    })
}

/// Whether some descendant of the cell still passes the zero test after
/// `depth` binary subdivisions in both directions. Quadrants are visited
/// smallest `|f|`-at-midpoint first, so cells genuinely containing the
/// curve confirm along a short path while borderline cells with no curve
/// inside are fully excluded.
fn confirmed(t: &CellTester, bx: &Interval, by: &Interval, depth: u32) -> bool {
    if depth == 0 {
        return t.may_vanish(bx, by);
    }
    if !t.may_vanish(bx, by) {
        return false;
    }
    let mx = bx.midpoint();
    let my = by.midpoint();
    let xs = [
        Interval::new(bx.lo.clone(), mx.clone()),
        Interval::new(mx, bx.hi.clone()),
    ];
    let ys = [
        Interval::new(by.lo.clone(), my.clone()),
        Interval::new(my, by.hi.clone()),
    ];
    let mut quads: Vec<(Rat, &Interval, &Interval)> = xs
        .iter()
        .flat_map(|qx| ys.iter().map(move |qy| (qx, qy)))
        .map(|(qx, qy)| {
            let cx = Interval::point(qx.midpoint());
            let cy = Interval::point(qy.midpoint());
            let v = t.f.range_on(&cx, &cy);
            (v.lo.abs().min(v.hi.abs()), qx, qy)
        })
        .collect();
    quads.sort_by(|a, b| a.0.cmp(&b.0));
    quads
        .iter()
        .any(|(_, qx, qy)| confirmed(t, qx, qy, depth - 1))
}

/// Interval certificate that `g` has no zero on the given component: every
/// carrying cell of the component — refined by up to `extra_depth` further
/// subdivision levels where the cell-level test is inconclusive — has a
/// range of `g` that excludes zero. Since the component's real points all
/// lie inside its carrying cells, `true` proves `g ≠ 0` on the component;
/// `false` is merely inconclusive.
pub fn certify_nonvanishing(
    g: &Poly,
    map: &ComponentMap,
    component: usize,
    extra_depth: u32,
) -> bool {
    certify_nonvanishing_outside(g, map, component, &[], extra_depth)
}

/// Like [`certify_nonvanishing`], but cells meeting one of the `holes`
/// boxes are exempt from the proof: `true` certifies that every zero of
/// `g` on the component lies inside a hole. Used when `g` necessarily
/// vanishes at known points (e.g. singular points of a curve) that a
/// separate local argument accounts for.
pub fn certify_nonvanishing_outside(
    g: &Poly,
    map: &ComponentMap,
    component: usize,
    holes: &[(Interval, Interval)],
    extra_depth: u32,
) -> bool {
    nonvanishing_obstructions(g, map, component, holes, extra_depth).is_empty()
}

/// Interval certificate that `a·b > 0` at every point of `V(f)` on the
/// given component, outside the `holes` boxes: each carrying cell is
/// recursively subdivided (up to `extra_depth` extra levels) until every
/// box either provably avoids the curve or has enclosures of `a` and `b`
/// strictly on the same side of zero. The factors are enclosed separately
/// — much tighter than any enclosure of the expanded product. Unlike
/// [`certify_nonvanishing_outside`], this tolerates sign changes of the
/// factors close to — but not on — the curve, as happens between
/// near-tangent branches.
pub fn certify_product_positive_on_curve(
    f: &Poly,
    a: &Poly,
    b: &Poly,
    map: &ComponentMap,
    component: usize,
    holes: &[(Interval, Interval)],
    extra_depth: u32,
) -> bool {
    product_positivity_obstructions(f, a, b, map, component, holes, extra_depth).is_empty()
}

/// The cells of the component (outside the holes) where the positivity
/// proof for `a·b` on the curve fails; empty means certified.
#[doc(hidden)]
pub fn product_positivity_obstructions(
    f: &Poly,
    a: &Poly,
    b: &Poly,
    map: &ComponentMap,
    component: usize,
    holes: &[(Interval, Interval)],
    extra_depth: u32,
) -> Vec<(u32, u32)> {
    let tf = CellTester::new(f);
    let ta = CellTester::new(a);
    let tb = CellTester::new(b);
    let overlaps = |a: &Interval, b: &Interval| a.lo <= b.hi && b.lo <= a.hi;
    map.cells_of(component)
        .into_iter()
        .filter(|&(i, j)| {
            let (bx, by) = map.cell_box(i, j);
            if holes
                .iter()
                .any(|(hx, hy)| overlaps(&bx, hx) && overlaps(&by, hy))
            {
                return false;
            }
            !product_positive_rec(&tf, &ta, &tb, &bx, &by, extra_depth)
        })
        .collect()
}

fn product_positive_rec(
    tf: &CellTester,
    ta: &CellTester,
    tb: &CellTester,
    bx: &Interval,
    by: &Interval,
    depth: u32,
) -> bool {
    if !tf.may_vanish(bx, by) {
        return true;
    }
    match (ta.certain_sign(bx, by), tb.certain_sign(bx, by)) {
        (Some(sa), Some(sb)) if sa == sb => return true,
        _ => {}
    }
    if depth == 0 {
        return false;
    }
    let mx = bx.midpoint();
    let my = by.midpoint();
    let xs = [
        Interval::new(bx.lo.clone(), mx.clone()),
        Interval::new(mx, bx.hi.clone()),
    ];
    let ys = [
        Interval::new(by.lo.clone(), my.clone()),
        Interval::new(my, by.hi.clone()),
    ];
    xs.iter().all(|qx| {
        ys.iter()
            .all(|qy| product_positive_rec(tf, ta, tb, qx, qy, depth - 1))
    })
}

/// The cells of the component (outside the holes) where the zero-exclusion
/// proof for `g` fails; empty means certified.
#[doc(hidden)]
pub fn nonvanishing_obstructions(
    g: &Poly,
    map: &ComponentMap,
    component: usize,
    holes: &[(Interval, Interval)],
    extra_depth: u32,
) -> Vec<(u32, u32)> {
    let tester = CellTester::new(g);
    let overlaps = |a: &Interval, b: &Interval| a.lo <= b.hi && b.lo <= a.hi;
    map.cells_of(component)
        .into_iter()
        .filter(|&(i, j)| {
            let (bx, by) = map.cell_box(i, j);
            if holes
                .iter()
                .any(|(hx, hy)| overlaps(&bx, hx) && overlaps(&by, hy))
            {
                return false;
            }
            !excluded(&tester, &bx, &by, extra_depth)
        })
        .collect()
}

/// Whether every descendant of the cell excludes zero within `depth`
/// subdivision levels.
fn excluded(t: &CellTester, bx: &Interval, by: &Interval, depth: u32) -> bool {
    if !t.may_vanish(bx, by) {
        return true;
    }
    if depth == 0 {
        return false;
    }
    let mx = bx.midpoint();
    let my = by.midpoint();
    let xs = [
        Interval::new(bx.lo.clone(), mx.clone()),
        Interval::new(mx, bx.hi.clone()),
    ];
    let ys = [
        Interval::new(by.lo.clone(), my.clone()),
        Interval::new(my, by.hi.clone()),
    ];
    xs.iter()
        .all(|qx| ys.iter().all(|qy| excluded(t, qx, qy, depth - 1)))
}

fn hull(a: &Interval, b: &Interval) -> Interval {
    Interval::new(
        a.lo.clone().min(b.lo.clone()),
        a.hi.clone().max(b.hi.clone()),
    )
}

fn pow2_inv(bits: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << bits)
}

/// Assign a certified point to the unique component whose carrying cells
/// its refined box meets. The box is shrunk below the cell size (and
/// further on contention); an assignment that still straddles two
/// components is reported as ambiguous, never guessed.
pub fn assign(point: &CertifiedPoint, map: &ComponentMap) -> Result<usize, TopologyError> {
    let mut last: Vec<usize> = vec![];
    for bits in [30u32, 45, 60] {
        let r = point.refine(&pow2_inv(bits));
        let ids = map.components_meeting(&r.xbox, &r.ybox);
        match ids.len() {
            0 => return Err(TopologyError::OffMap),
            1 => return Ok(ids[0]),
            _ => last = ids,
        }
    }
    Err(TopologyError::Ambiguous(last))
}

/// Per-component coverage verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// At least one nonsingular witness lies on the component.
    Covered,
    /// Witnesses exist but all are singular points of the curve.
    OnlySingularWitnesses,
    /// No witness lies on the component.
    Uncovered,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Covered => "covered",
            Verdict::OnlySingularWitnesses => "only-singular-witnesses",
            Verdict::Uncovered => "uncovered",
        };
        write!(f, "{s}")
    }
}

/// Coverage of one component by witness points (indices into the witness
/// solution set).
#[derive(Debug, Clone)]
pub struct ComponentCoverage {
    pub component: usize,
    pub nonsingular_witnesses: Vec<usize>,
    pub singular_witnesses: Vec<usize>,
    pub verdict: Verdict,
}

/// The hypotheses of the coverage propositions, evaluated on the inputs.
#[derive(Debug, Clone)]
pub struct Hypotheses {
    pub all_components_compact: bool,
    /// Every reported singular point is an ordinary real multiple point.
    pub all_singularities_ordinary: bool,
    /// The polar center (the pole of the line at infinity) avoids the
    /// curve; `None` when no center applies (classical polars).
    pub pole_off_curve: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct CoverageReport {
    pub per_component: Vec<ComponentCoverage>,
    pub hypotheses: Hypotheses,
    /// Witness indices whose component assignment stayed ambiguous.
    pub ambiguous_witnesses: Vec<usize>,
    /// Witness indices meeting no carrying cell (outside the window or map).
    pub off_map_witnesses: Vec<usize>,
}

impl CoverageReport {
    pub fn verdict(&self, component: usize) -> Option<Verdict> {
        self.per_component
            .iter()
            .find(|c| c.component == component)
            .map(|c| c.verdict)
    }

    pub fn all_covered(&self) -> bool {
        self.per_component
            .iter()
            .all(|c| c.verdict == Verdict::Covered)
    }
}

/// Whether the certified point is a singular point of `V(f)`: both partial
/// derivatives fail to be excluded from zero under repeated refinement.
/// Witnesses lie on the curve and singular points are isolated, so interval
/// exclusion terminates for every nonsingular witness.
fn is_singular_witness(f: &Poly, p: &CertifiedPoint) -> bool {
    let f1 = f.partial(1);
    let f2 = f.partial(2);
    for bits in [20u32, 40, 60, 80] {
        let r = p.refine(&pow2_inv(bits));
        let b = [r.xbox.clone(), r.ybox.clone()];
        if !f1.eval_interval(&b).contains_zero() || !f2.eval_interval(&b).contains_zero() {
            return false;
        }
    }
    true
}

/// Assign every witness to a component, tag it nonsingular or singular on
/// `V(f)`, and produce per-component verdicts plus the hypothesis
/// checklist of the coverage propositions.
pub fn verify_coverage(
    f: &Poly,
    witnesses: &SolutionSet,
    singulars: &[SingularityReport],
    map: &ComponentMap,
    pole: Option<&ProjPoint>,
) -> CoverageReport {
    let mut cov: Vec<ComponentCoverage> = (0..map.component_count())
        .map(|component| ComponentCoverage {
            component,
            nonsingular_witnesses: vec![],
            singular_witnesses: vec![],
            verdict: Verdict::Uncovered,
        })
        .collect();
    let mut ambiguous = vec![];
    let mut off_map = vec![];
    for (idx, p) in witnesses.points.iter().enumerate() {
        match assign(p, map) {
            Ok(id) => {
                if is_singular_witness(f, p) {
                    cov[id].singular_witnesses.push(idx);
                } else {
                    cov[id].nonsingular_witnesses.push(idx);
                }
            }
            Err(TopologyError::OffMap) => off_map.push(idx),
            Err(_) => ambiguous.push(idx),
        }
    }
    for c in &mut cov {
        c.verdict = if !c.nonsingular_witnesses.is_empty() {
            Verdict::Covered
        } else if !c.singular_witnesses.is_empty() {
            Verdict::OnlySingularWitnesses
        } else {
            Verdict::Uncovered
        };
    }
    let pole_off_curve = pole.map(|a| match a.to_affine() {
        // a pole at infinity is off the affine curve
        None => true,
        Some((x, y)) => !f.eval_rat(&[x, y]).is_zero(),
    });
    CoverageReport {
        per_component: cov,
        hypotheses: Hypotheses {
            all_components_compact: map.components().iter().all(|c| c.compact_in_box),
            all_singularities_ordinary: singulars.iter().all(|s| s.is_ordinary_real()),
            pole_off_curve,
        },
        ambiguous_witnesses: ambiguous,
        off_map_witnesses: off_map,
    }
}

/// Sample the Gauss direction `(∂f/∂X₁ : ∂f/∂X₂)` along a component's cells
/// and merge the sampled angles (directions mod π, in `[0, π)`) into a
/// union of intervals on the projective circle. The gradient is evaluated
/// exactly at cell midpoints; cells where it vanishes (singular points) are
/// skipped.
pub fn gauss_sector_scan(
    f: &Poly,
    map: &ComponentMap,
    component: usize,
    samples: u32,
) -> Result<Vec<(f64, f64)>, TopologyError> {
    if component >= map.component_count() {
        return Err(TopologyError::NoSuchComponent(component));
    }
    let cells = map.cells_of(component);
    let f1 = f.partial(1);
    let f2 = f.partial(2);
    let stride = (cells.len() / (samples.max(1) as usize)).max(1);
    let mut angles: Vec<f64> = vec![];
    for (i, j) in cells.into_iter().step_by(stride) {
        let (bx, by) = map.cell_box(i, j);
        let c = [bx.midpoint(), by.midpoint()];
        let g1 = f1.eval_rat(&c);
        let g2 = f2.eval_rat(&c);
        // the gradient vanishes only at (isolated) singular points
        if g1.is_zero() && g2.is_zero() {
            continue;
        }
        let a = rat_to_f64(&g1);
        let bb = rat_to_f64(&g2);
        angles.push(bb.atan2(a).rem_euclid(std::f64::consts::PI));
    }
    Ok(merge_circular(&mut angles, std::f64::consts::PI / 16.0))
}

/// Merge sorted angle samples on a circle of circumference π into maximal
/// intervals whose sample gaps stay below `tol`.
fn merge_circular(angles: &mut Vec<f64>, tol: f64) -> Vec<(f64, f64)> {
    use std::f64::consts::PI;
    if angles.is_empty() {
        return vec![];
    }
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    angles.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let n = angles.len();
    if n == 1 {
        return vec![(angles[0], angles[0])];
    }
    // find gaps; the arc complement of large gaps forms the intervals
    let mut gap_starts: Vec<usize> = vec![]; // gap between k and k+1 (cyclic)
    for k in 0..n {
        let next = angles[(k + 1) % n] + if k + 1 == n { PI } else { 0.0 };
        if next - angles[k] > tol {
            gap_starts.push(k);
        }
    }
    if gap_starts.is_empty() {
        return vec![(0.0, PI)];
    }
    let mut out = vec![];
    for (g, &k) in gap_starts.iter().enumerate() {
        let start = angles[(k + 1) % n];
        let prev_gap = gap_starts[(g + 1) % gap_starts.len()];
        let end = angles[prev_gap];
        out.push((start, end)); // end < start means the interval wraps
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::solve_system;

    fn win(x0: i64, x1: i64, y0: i64, y1: i64) -> (Interval, Interval) {
        (
            Interval::new(
                Rat::from_integer(x0.into()),
                Rat::from_integer(x1.into()),
            ),
            Interval::new(
                Rat::from_integer(y0.into()),
                Rat::from_integer(y1.into()),
            ),
        )
    }

    fn p2(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn integer_range_matches_rational_interval_evaluation() {
        let f = p2(crate::corpus::F3);
        let fi = IntPoly::new(&f);
        let w = win(-6, 6, -6, 6);
        for (i, j) in [(128u32, 250u32), (0, 0), (511, 511), (341, 256), (255, 300)] {
            let bx = sub_interval(&w.0, i, 1, 512);
            let by = sub_interval(&w.1, j, 1, 512);
            let got = fi.range_on(&bx, &by);
            let want = f.eval_interval(&[bx.clone(), by.clone()]);
            assert_eq!(got.lo, want.lo, "cell ({i},{j}) lo");
            assert_eq!(got.hi, want.hi, "cell ({i},{j}) hi");
        }
    }

    #[test]
    fn unit_circle_is_one_compact_component() {
        let f = p2("X1^2 + X2^2 - 1");
        let map = component_map(&f, &win(-2, 2, -2, 2), 64).unwrap();
        assert_eq!(map.component_count(), 1);
        assert!(map.components()[0].compact_in_box);
    }

    #[test]
    fn two_circles_two_components_stable_under_refinement() {
        let f = p2(crate::corpus::CIRCLES_F);
        let w = win(-3, 7, -3, 7);
        for res in [128, 256] {
            let map = component_map(&f, &w, res).unwrap();
            assert_eq!(map.component_count(), 2, "resolution {res}");
            assert!(map.components().iter().all(|c| c.compact_in_box));
        }
    }

    #[test]
    fn open_branch_is_flagged_non_compact() {
        // an oval plus a branch leaving the window
        let f = p2(crate::corpus::F4);
        let map = component_map(&f, &win(-4, 4, -4, 4), 128).unwrap();
        assert_eq!(map.component_count(), 2);
        let compact: Vec<bool> = map
            .components()
            .iter()
            .map(|c| c.compact_in_box)
            .collect();
        assert!(compact.contains(&true) && compact.contains(&false));
    }

    #[test]
    fn bad_inputs_are_rejected()  {
        let f = p2("X1^2 + X2^2 - 1");
        assert!(matches!(
            component_map(&f, &win(-2, 2, -2, 2), 100),
            Err(TopologyError::BadResolution(100))
        ));
        assert!(matches!(
            component_map(&f, &win(2, 2, -2, 2), 64),
            Err(TopologyError::EmptyWindow)
        ));
        assert!(matches!(
            component_map(&Poly::parse("0").unwrap(), &win(-2, 2, -2, 2), 64),
            Err(TopologyError::ZeroPolynomial)
        ));
    }

    #[test]
    fn assign_circle_point_and_off_curve_point() {
        let f = p2("X1^2 + X2^2 - 1");
        let map = component_map(&f, &win(-2, 2, -2, 2), 64).unwrap();
        // (1, 0) via the solved system f = 0, X2 = 0
        let s = solve_system(&f, &p2("X2"), None).unwrap();
        assert_eq!(s.points.len(), 2);
        for p in &s.points {
            assert_eq!(assign(p, &map).unwrap(), 0);
        }
        // the origin is off the curve entirely
        let origin = solve_system(&p2("X1"), &p2("X2"), None).unwrap();
        assert!(matches!(
            assign(&origin.points[0], &map),
            Err(TopologyError::OffMap)
        ));
    }

    #[test]
    fn soundness_every_solved_point_lands_in_a_component() {
        // all four nodes of the line arrangement stay assignable
        let e = crate::corpus::get("lines-g").unwrap();
        let map = component_map(&e.poly, &win(-3, 7, -3, 7), 128).unwrap();
        let s = crate::solve::singular_points(&e.poly).unwrap();
        assert_eq!(s.points.len(), 4);
        for p in &s.points {
            assign(p, &map).unwrap();
        }
    }

    #[test]
    fn circle_coverage_by_vertical_tangency_points() {
        // witnesses (±1, 0): the X1-extremes of the circle, nonsingular
        let f = p2("X1^2 + X2^2 - 1");
        let map = component_map(&f, &win(-2, 2, -2, 2), 64).unwrap();
        let wit = solve_system(&f, &f.partial(2), None).unwrap();
        let rep = verify_coverage(&f, &wit, &[], &map, None);
        assert!(rep.all_covered());
        assert_eq!(rep.per_component[0].nonsingular_witnesses.len(), 2);
        assert!(rep.hypotheses.all_components_compact);
        assert!(rep.hypotheses.all_singularities_ordinary);
        assert_eq!(rep.hypotheses.pole_off_curve, None);
    }

    #[test]
    fn singular_witnesses_degrade_the_verdict() {
        // the node of the alpha curve is a witness of every polar
        let f = p2("X2^2 - X1^2*(X1+1)");
        let map = component_map(&f, &win(-2, 2, -2, 2), 128).unwrap();
        let sing = crate::solve::singular_points(&f).unwrap();
        let rep = verify_coverage(&f, &sing, &[], &map, None);
        let only_singular: usize = rep
            .per_component
            .iter()
            .filter(|c| c.verdict == Verdict::OnlySingularWitnesses)
            .count();
        assert_eq!(only_singular, 1);
        assert!(!rep.all_covered());
    }

    #[test]
    fn pole_check_in_hypotheses() {
        let f = p2("X1^2 + X2^2 - 1");
        let map = component_map(&f, &win(-2, 2, -2, 2), 64).unwrap();
        let wit = solve_system(&f, &f.partial(2), None).unwrap();
        let on = ProjPoint::from_ints(1, 1, 0);
        let off = ProjPoint::from_ints(1, 2, 0);
        let rep = verify_coverage(&f, &wit, &[], &map, Some(&on));
        assert_eq!(rep.hypotheses.pole_off_curve, Some(false));
        let rep = verify_coverage(&f, &wit, &[], &map, Some(&off));
        assert_eq!(rep.hypotheses.pole_off_curve, Some(true));
    }

    #[test]
    fn circle_gauss_directions_fill_the_projective_circle() {
        let f = p2("X1^2 + X2^2 - 1");
        let map = component_map(&f, &win(-2, 2, -2, 2), 64).unwrap();
        let sectors = gauss_sector_scan(&f, &map, 0, 64).unwrap();
        assert_eq!(sectors, vec![(0.0, std::f64::consts::PI)]);
    }

    #[test]
    fn vertical_line_gauss_direction_is_a_point_sector() {
        // f = X1: gradient everywhere (1 : 0), angle 0 mod π
        let f = p2("X1");
        let map = component_map(&f, &win(-2, 2, -2, 2), 32).unwrap();
        let sectors = gauss_sector_scan(&f, &map, 0, 16).unwrap();
        assert_eq!(sectors.len(), 1);
        assert!(sectors[0].0.abs() < 1e-9 && sectors[0].1.abs() < 1e-9);
    }
}
