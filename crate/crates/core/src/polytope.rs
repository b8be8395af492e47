//! Independence and base polytopes with exact rational membership.
//!
//! `I_ρ = { x >= 0 : Σ_{e∈A} x_e <= ρ(A) for all A }`, and `B_ρ` is the face of
//! `I_ρ` where the total equals `ρ(E)`.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{permutations, RankTable};
use crate::subset::{all_subsets, Subset};

pub type Rational = Ratio<i64>;

/// A point of `Q^E`, coordinates in ground order. `Ratio` keeps every
/// coordinate reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint(pub Vec<Rational>);

impl RationalPoint {
    pub fn from_ints(xs: &[i64]) -> Self {
        RationalPoint(xs.iter().map(|&x| Rational::from_integer(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for RationalPoint {
    type Err = Error;

    /// Comma-separated coordinates such as `1/2,3,0`.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(RationalPoint(Vec::new()));
        }
        s.split(',')
            .map(|c| {
                c.trim()
                    .parse::<Rational>()
                    .map_err(|_| Error::Format(format!("bad coordinate {c:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(RationalPoint)
    }
}

impl fmt::Debug for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn check_dim(table: &RankTable, got: usize) -> Result<()> {
    if got != table.len() {
        return Err(Error::DimensionMismatch {
            expected: table.len(),
            got,
        });
    }
    Ok(())
}

pub fn in_independence_polytope(table: &RankTable, x: &RationalPoint) -> Result<bool> {
    check_dim(table, x.len())?;
    if x.0.iter().any(|c| *c < Rational::from_integer(0)) {
        return Ok(false);
    }
    Ok(all_subsets(table.len()).all(|s| {
        let sum: Rational = s.elements().map(|e| x.0[e]).sum();
        sum <= Rational::from_integer(table.rank(s))
    }))
}

pub fn in_base_polytope(table: &RankTable, x: &RationalPoint) -> Result<bool> {
    let total: Rational = x.0.iter().sum();
    Ok(in_independence_polytope(table, x)? && total == Rational::from_integer(table.total_rank()))
}

/// Integer membership in `I_ρ`; the point must have the table's dimension.
pub fn is_independent_integer(table: &RankTable, x: &[i64]) -> bool {
    debug_assert_eq!(x.len(), table.len());
    if x.iter().any(|&c| c < 0) {
        return false;
    }
    all_subsets(table.len()).all(|s| s.elements().map(|e| x[e]).sum::<i64>() <= table.rank(s))
}

fn box_points(bounds: &[i64], first: i64, mut emit: impl FnMut(&[i64])) {
    let mut p = vec![0i64; bounds.len()];
    p[0] = first;
    loop {
        emit(&p);
        // odometer over coordinates 1.., last coordinate fastest
        let mut i = bounds.len() - 1;
        loop {
            if i == 0 {
                return;
            }
            if p[i] < bounds[i] {
                p[i] += 1;
                break;
            }
            p[i] = 0;
            i -= 1;
        }
    }
}

/// Integer points of `I_ρ`, or of `B_ρ` when `base` is set, in
/// lexicographic order.
pub fn lattice_points(table: &RankTable, base: bool) -> Vec<Vec<i64>> {
    let n = table.len();
    if n == 0 {
        return vec![Vec::new()];
    }
    let bounds: Vec<i64> = (0..n).map(|e| table.element_rank(e)).collect();
    let total = table.total_rank();
    (0..=bounds[0])
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            box_points(&bounds, first, |p| {
                if (!base || p.iter().sum::<i64>() == total) && is_independent_integer(table, p) {
                    out.push(p.to_vec());
                }
            });
            out
        })
        .collect::<Vec<_>>()
        .concat()
}

/// The greedy vertex for an ordering: `v_{σ(i)} = ρ(σ_1..σ_i) − ρ(σ_1..σ_{i−1})`.
pub fn greedy_vertex(table: &RankTable, order: &[usize]) -> Vec<i64> {
    let mut v = vec![0; table.len()];
    let mut prefix = Subset::EMPTY;
    for &e in order {
        let next = prefix.with(e);
        v[e] = table.rank(next) - table.rank(prefix);
        prefix = next;
    }
    v
}

/// Distinct greedy vertices over all orderings, sorted.
pub fn base_vertices(table: &RankTable) -> Vec<Vec<i64>> {
    let mut vs: Vec<Vec<i64>> = permutations(table.len())
        .iter()
        .map(|p| greedy_vertex(table, p))
        .collect();
    vs.sort();
    vs.dedup();
    vs
}

/// The slice of `I_ρ` with `x_e = ρ({e})` on `contract` and `x_e = 0` on
/// `delete`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorFace {
    pub contract: Subset,
    pub delete: Subset,
    /// Pinned value per coordinate, `None` where free.
    pub fixed: Vec<Option<i64>>,
    /// Lattice points of the slice, full dimension, lexicographic.
    pub points: Vec<Vec<i64>>,
}

pub fn minor_face(table: &RankTable, contract: Subset, delete: Subset) -> Result<MinorFace> {
    if !contract.is_disjoint(delete) {
        return Err(Error::OverlappingSets);
    }
    let n = table.len();
    let full = Subset::full(n);
    if !(contract | delete).is_subset_of(full) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: 32 - (contract | delete).bits().leading_zeros() as usize,
        });
    }
    let fixed: Vec<Option<i64>> = (0..n)
        .map(|e| {
            if contract.contains(e) {
                Some(table.element_rank(e))
            } else if delete.contains(e) {
                Some(0)
            } else {
                None
            }
        })
        .collect();
    let points = lattice_points(table, false)
        .into_iter()
        .filter(|p| p.iter().zip(&fixed).all(|(x, f)| f.is_none_or(|v| *x == v)))
        .collect();
    Ok(MinorFace {
        contract,
        delete,
        fixed,
        points,
    })
}

impl MinorFace {
    /// Points shifted by `−ρ({e})` on the contracted coordinates with every
    /// pinned coordinate projected out.
    pub fn translated(&self) -> Vec<Vec<i64>> {
        self.points
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&self.fixed)
                    .filter(|(_, f)| f.is_none())
                    .map(|(x, _)| *x)
                    .collect()
            })
            .collect()
    }

    /// Whether the translated slice is exactly the lattice of `I` of the
    /// minor `ρ / contract \ delete`.
    pub fn matches_minor(&self, table: &RankTable) -> Result<bool> {
        let minor = table.minor(self.contract, self.delete)?;
        Ok(self.translated() == lattice_points(&minor, false))
    }

    /// The coordinate box the slice lives in: pinned coordinates are single
    /// points, the rest span `[0,k]`.
    pub fn face_box(&self, k: i64) -> Vec<(i64, i64)> {
        self.fixed
            .iter()
            .map(|f| f.map_or((0, k), |v| (v, v)))
            .collect()
    }
}

/// Vertices of `I_ρ` for `|E| = 2`, counterclockwise from the origin.
fn independence_polygon(table: &RankTable) -> Vec<(i64, i64)> {
    let (re, rf, m) = (table.element_rank(0), table.element_rank(1), table.total_rank());
    let mut vs = vec![(0, 0), (re, 0), (re, m - re), (m - rf, rf), (0, rf)];
    vs.dedup();
    if vs.len() > 1 && vs.first() == vs.last() {
        vs.pop();
    }
    vs
}

/// Draws `I_ρ`, the segment `B_ρ` and the lattice points of a two-element
/// polymatroid on the `[0,k]^2` grid.
pub fn to_svg(table: &RankTable) -> Result<String> {
    check_dim(table, 2)?;
    const CELL: i64 = 40;
    const PAD: i64 = 30;
    let k = table.k();
    let size = k * CELL + 2 * PAD;
    let px = |x: i64| PAD + x * CELL;
    let py = |y: i64| size - PAD - y * CELL;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}" data-format="1">"#
    );
    for i in 0..=k {
        let _ = writeln!(
            s,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#ddd"/>"##,
            px(i),
            py(0),
            px(i),
            py(k)
        );
        let _ = writeln!(
            s,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#ddd"/>"##,
            px(0),
            py(i),
            px(k),
            py(i)
        );
    }
    let poly: Vec<String> = independence_polygon(table)
        .iter()
        .map(|&(x, y)| format!("{},{}", px(x), py(y)))
        .collect();
    let _ = writeln!(
        s,
        r##"<polygon points="{}" fill="#9ecae1" fill-opacity="0.5" stroke="#3182bd"/>"##,
        poly.join(" ")
    );
    let vs = base_vertices(table);
    let (a, b) = (&vs[0], &vs[vs.len() - 1]);
    let _ = writeln!(
        s,
        r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#e6550d" stroke-width="3"/>"##,
        px(a[0]),
        py(a[1]),
        px(b[0]),
        py(b[1])
    );
    for p in lattice_points(table, false) {
        let _ = writeln!(
            s,
            r#"<circle cx="{}" cy="{}" r="4"/>"#,
            px(p[0]),
            py(p[1])
        );
    }
    let g = table.ground();
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}">{}</text>"#,
        px(k) + 5,
        py(0) + 15,
        g.label(0)
    );
    let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, px(0) - 20, py(k), g.label(1));
    s.push_str("</svg>\n");
    Ok(s)
}

/// One point per row, coordinates comma-separated, with a label header.
pub fn points_csv(table: &RankTable, points: &[Vec<i64>]) -> String {
    let mut s = table.ground().labels().join(",");
    s.push('\n');
    for p in points {
        let row: Vec<String> = p.iter().map(i64::to_string).collect();
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::GroundSet;

    fn example() -> RankTable {
        RankTable::doubleton(3, 3, 2, 4).unwrap()
    }

    fn hexagon() -> RankTable {
        RankTable::from_fn(GroundSet::standard(3), 3, |s| [0, 3, 5, 6][s.len()]).unwrap()
    }

    fn pt(s: &str) -> RationalPoint {
        s.parse().unwrap()
    }

    #[test]
    fn independence_membership() {
        assert!(in_independence_polytope(&example(), &pt("0,0")).unwrap());
        assert!(in_independence_polytope(&example(), &pt("3,1")).unwrap());
        assert!(!in_independence_polytope(&example(), &pt("2,3")).unwrap());
        assert!(in_independence_polytope(&example(), &pt("5/2,3/2")).unwrap());
        assert!(!in_independence_polytope(&example(), &pt("-1/2,0")).unwrap());
        assert!(matches!(
            in_independence_polytope(&example(), &pt("1")).unwrap_err(),
            Error::DimensionMismatch { .. }
        ));
    }

    #[test]
    fn permutohedron_membership() {
        let r = hexagon();
        for p in permutations(3) {
            let x: Vec<i64> = p.iter().map(|&i| i as i64 + 1).collect();
            assert!(in_base_polytope(&r, &RationalPoint::from_ints(&x)).unwrap());
        }
        assert!(!in_base_polytope(&r, &pt("0,0,6")).unwrap());
        assert!(in_base_polytope(&r, &pt("2,2,2")).unwrap());
        assert!(!in_base_polytope(&r, &pt("1,1,1")).unwrap());
    }

    #[test]
    fn lattice_listings() {
        let u12 = RankTable::uniform(1, 2).unwrap();
        assert_eq!(lattice_points(&u12, true), vec![vec![0, 1], vec![1, 0]]);
        let u22 = RankTable::uniform(2, 2).unwrap().with_k(2).unwrap();
        let mut pts = lattice_points(&u22, false);
        pts.sort();
        assert_eq!(pts, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let free = RankTable::from_fn(GroundSet::standard(2), 2, |s| (2 * s.len() as i64).min(2))
            .unwrap();
        assert_eq!(lattice_points(&free, false).len(), 6);
        // cells under the pentagon 0 ≤ x ≤ 3, 0 ≤ y ≤ 2, x + y ≤ 4
        assert_eq!(lattice_points(&example(), false).len(), 11);
        assert_eq!(lattice_points(&example(), true), vec![vec![2, 2], vec![3, 1]]);
    }

    #[test]
    fn greedy_vertices() {
        assert_eq!(base_vertices(&example()), vec![vec![2, 2], vec![3, 1]]);
        assert_eq!(base_vertices(&RankTable::uniform(1, 1).unwrap()), vec![vec![1]]);
        let hv = base_vertices(&hexagon());
        assert_eq!(hv.len(), 6);
        for v in hv {
            let mut s = v.clone();
            s.sort();
            assert_eq!(s, vec![1, 2, 3]);
        }
    }

    #[test]
    fn minor_faces() {
        let r = hexagon();
        let whole = minor_face(&r, Subset::EMPTY, Subset::EMPTY).unwrap();
        assert_eq!(whole.points, lattice_points(&r, false));
        let face = minor_face(&r, Subset(0b001), Subset::EMPTY).unwrap();
        assert!(face.points.iter().all(|p| p[0] == 3));
        assert!(face.matches_minor(&r).unwrap());
        assert_eq!(
            minor_face(&r, Subset(1), Subset(1)).unwrap_err(),
            Error::OverlappingSets
        );
        assert_eq!(face.face_box(3), vec![(3, 3), (0, 3), (0, 3)]);
    }

    #[test]
    fn svg_has_polygon_and_points() {
        let svg = to_svg(&example()).unwrap();
        assert!(svg.contains("<polygon"));
        assert_eq!(svg.matches("<circle").count(), 11);
        assert!(to_svg(&hexagon()).is_err());
    }
}
