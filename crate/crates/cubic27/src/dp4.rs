//! Quartic del Pezzo surfaces as pencils of quadrics in P^4.
//!
//! For p != 2 the pencil is diagonal:
//!   q1 = x1^2 + x2^2 + x3^2 + b x4^2,  q2 = x0^2 + x2^2 + a x3^2 + x4^2.
//! For p = 2, in coordinates (x1, x2, x3, y1, y2):
//!   q1 = (ab+b+1) x2^2 + a x3^2 + x2 y1 + x3 y2,
//!   q2 = b x1^2 + (ab+a+1) x2^2 + x1 y1 + x2 y2.
//! In both cases the singular members sit at (1:0), (0:1), (1:-1), (-a:1), (1:-b).

use crate::gf::{Fe, Field};
use crate::linalg;
use crate::mpoly::MPoly;
use crate::projgeom::{pgl2_stabilizer, Pgl2Stabilizer, Point1, ProjMap};
use crate::weyl::{self, SignedCycle};
use std::collections::BTreeSet;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Dp4Error {
    #[error("singular surface: the five roots are not distinct")]
    Singular,
    #[error("only defined in characteristic 2")]
    NotChar2,
    #[error("degenerate pencil member: {0}")]
    Degenerate(&'static str),
}

pub type Vec5 = [Fe; 5];
pub type Map4 = ProjMap<5>;

#[derive(Clone, Debug)]
pub struct QuadricPencil {
    pub field: Field,
    pub a: Fe,
    pub b: Fe,
    pub q1: MPoly,
    pub q2: MPoly,
    pub roots: [Point1; 5],
}

/// The five parameters (lambda:mu) of singular members, in the fixed order above.
pub fn dp4_delta_roots(f: &Field, a: Fe, b: Fe) -> Result<[Point1; 5], Dp4Error> {
    let (o, z) = (f.one(), f.zero());
    let raw = [[o, z], [z, o], [o, f.neg(o)], [f.neg(a), o], [o, f.neg(b)]];
    let pts: Vec<Point1> = raw.iter().map(|c| Point1::new(f, *c).ok_or(Dp4Error::Singular)).collect::<Result<_, _>>()?;
    let distinct: BTreeSet<Point1> = pts.iter().copied().collect();
    if distinct.len() != 5 {
        return Err(Dp4Error::Singular);
    }
    Ok(std::array::from_fn(|i| pts[i]))
}

fn quad(f: &Field, terms: &[(Fe, usize, usize)]) -> MPoly {
    terms.iter().fold(MPoly::zero(), |acc, &(c, i, j)| {
        acc.add(f, &MPoly::var(f, i).mul(f, &MPoly::var(f, j)).scale(f, c))
    })
}

impl QuadricPencil {
    pub fn new(f: &Field, a: Fe, b: Fe) -> Result<Self, Dp4Error> {
        let roots = dp4_delta_roots(f, a, b)?;
        let o = f.one();
        let (q1, q2) = if f.p() == 2 {
            let ab = f.mul(a, b);
            (
                quad(f, &[(f.add(f.add(ab, b), o), 1, 1), (a, 2, 2), (o, 1, 3), (o, 2, 4)]),
                quad(f, &[(b, 0, 0), (f.add(f.add(ab, a), o), 1, 1), (o, 0, 3), (o, 1, 4)]),
            )
        } else {
            (
                quad(f, &[(o, 1, 1), (o, 2, 2), (o, 3, 3), (b, 4, 4)]),
                quad(f, &[(o, 0, 0), (o, 2, 2), (a, 3, 3), (o, 4, 4)]),
            )
        };
        Ok(QuadricPencil { field: f.clone(), a, b, q1, q2, roots })
    }

    pub fn member(&self, lm: [Fe; 2]) -> MPoly {
        let f = &self.field;
        self.q1.scale(f, lm[0]).add(f, &self.q2.scale(f, lm[1]))
    }

    /// Polar bilinear form q(u+v) - q(u) - q(v).
    pub fn polar(&self, q: &MPoly, u: &Vec5, v: &Vec5) -> Fe {
        let f = &self.field;
        let uv: Vec5 = std::array::from_fn(|i| f.add(u[i], v[i]));
        f.sub(f.sub(q.eval(f, &uv), q.eval(f, u)), q.eval(f, v))
    }

    fn polar_matrix(&self, q: &MPoly) -> linalg::Mat {
        let e = |i: usize| -> Vec5 { std::array::from_fn(|k| if k == i { self.field.one() } else { self.field.zero() }) };
        (0..5).map(|i| (0..5).map(|j| self.polar(q, &e(i), &e(j))).collect()).collect()
    }

    /// The vertex of the cone over the root `lm`.
    pub fn singular_point(&self, lm: [Fe; 2]) -> Result<Vec5, Dp4Error> {
        let f = &self.field;
        let q = self.member(lm);
        let ker = linalg::kernel(f, &self.polar_matrix(&q), 5);
        let pts: Vec<Vec<Fe>> = if f.p() == 2 {
            // q is additive up to Frobenius on the radical: q(sum t n) = (sum t sqrt q(n))^2
            let s: Vec<Fe> = ker.iter().map(|n| f.sqrt_char2(q.eval(f, n))).collect();
            let sol = linalg::kernel(f, &vec![s], ker.len());
            sol.iter()
                .map(|t| (0..5).map(|i| (0..ker.len()).fold(f.zero(), |acc, k| f.add(acc, f.mul(t[k], ker[k][i])))).collect())
                .collect()
        } else {
            ker
        };
        if pts.len() != 1 {
            return Err(Dp4Error::Degenerate("singular locus is not a single point"));
        }
        Ok(std::array::from_fn(|i| pts[0][i]))
    }

    /// The reflection attached to a singular member with vertex z.
    pub fn reflection(&self, z: &Vec5) -> Result<Map4, Dp4Error> {
        let f = &self.field;
        let (o, zero) = (f.one(), f.zero());
        let q = std::iter::once([o, zero])
            .chain(std::iter::once([zero, o]))
            .chain(f.elements().into_iter().map(|t| [o, t]))
            .map(|lm| self.member(lm))
            .find(|q| !q.eval(f, z).is_zero())
            .ok_or(Dp4Error::Degenerate("every member vanishes at the vertex"))?;
        let qz = q.eval(f, z);
        let mut m = [[zero; 5]; 5];
        for j in 0..5 {
            let e: Vec5 = std::array::from_fn(|k| if k == j { o } else { zero });
            let c = f.div(self.polar(&q, z, &e), qz);
            for i in 0..5 {
                m[i][j] = f.sub(e[i], f.mul(c, z[i]));
            }
        }
        ProjMap::new(f, m).ok_or(Dp4Error::Degenerate("reflection is not invertible"))
    }

    pub fn contains(&self, x: &Vec5) -> bool {
        let f = &self.field;
        self.q1.eval(f, x).is_zero() && self.q2.eval(f, x).is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct Dp4Aut {
    pub order: usize,
    pub g_tag: &'static str,
    pub g: Pgl2Stabilizer,
    /// permutation of the five roots induced by each element of G
    pub root_perms: Vec<[usize; 5]>,
    pub vertices: [Vec5; 5],
    pub reflections: [Map4; 5],
    /// size of the group generated by the reflections, up to scalars
    pub reflection_group_order: usize,
}

fn g_notation(tag: &str) -> &'static str {
    match tag {
        "1" => "1",
        "C2" => "2",
        "C4" => "4",
        "C2^2" => "2^2",
        "S3" => "S3",
        "D10" => "D10",
        "C5:C4" => "5:4",
        "A5" => "A5",
        _ => "?",
    }
}

fn closure(f: &Field, gens: &[Map4]) -> BTreeSet<Map4> {
    let mut seen: BTreeSet<Map4> = [ProjMap::identity(f)].into();
    let mut frontier: Vec<Map4> = seen.iter().copied().collect();
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g.compose(f, &x);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen
}

/// Aut(Y) = 2^4 : G with G the PGL_2 stabiliser of the roots.
pub fn dp4_aut(f: &Field, a: Fe, b: Fe) -> Result<Dp4Aut, Dp4Error> {
    let pencil = QuadricPencil::new(f, a, b)?;
    let g = pgl2_stabilizer(f, &pencil.roots).map_err(|_| Dp4Error::Singular)?;
    let root_perms = g
        .elements
        .iter()
        .map(|m| std::array::from_fn(|i| pencil.roots.iter().position(|r| *r == m.apply(f, &pencil.roots[i])).unwrap()))
        .collect();
    let vertices: Vec<Vec5> = pencil.roots.iter().map(|r| pencil.singular_point(r.c)).collect::<Result<_, _>>()?;
    let reflections: Vec<Map4> = vertices.iter().map(|z| pencil.reflection(z)).collect::<Result<_, _>>()?;
    let reflection_group_order = closure(f, &reflections).len();
    Ok(Dp4Aut {
        order: 16 * g.order,
        g_tag: g_notation(g.tag),
        root_perms,
        vertices: std::array::from_fn(|i| vertices[i]),
        reflections: std::array::from_fn(|i| reflections[i]),
        reflection_group_order,
        g,
    })
}

/// Signed-cycle class names of W(D5) met by 2^4 : G, where G acts on the
/// coordinates of Z^5 through its permutation of the roots.
pub fn d5_classes(aut: &Dp4Aut) -> BTreeSet<&'static str> {
    let mut out = BTreeSet::new();
    for sigma in &aut.root_perms {
        for flips in (0u8..32).filter(|x| x.count_ones() % 2 == 0) {
            let mut cyc = weyl::signed_cycle_type(sigma, flips);
            cyc.sort();
            let row = weyl::D5_TABLE.iter().find(|r| {
                let mut c: Vec<SignedCycle> = r.1.to_vec();
                c.sort();
                c == cyc
            });
            out.insert(row.expect("every signed cycle type is tabulated").0);
        }
    }
    out
}

/// Whether a W(D5) class can occur on some quartic del Pezzo surface in characteristic p.
pub fn realizable(name: &str, p: u32) -> bool {
    match weyl::D5_TABLE.iter().find(|r| r.0 == name).map(|r| r.3) {
        Some("1A" | "2A" | "2B" | "4A" | "4B" | "5A") => true,
        Some("3C" | "6F" | "6C") => p != 3,
        Some("4D") => name == "41" && p != 2,
        Some("8A") => p != 2,
        _ => false,
    }
}

/// (a sqrt b + a + sqrt a : sqrt(ab) : b sqrt a + b + sqrt b : 0 : 0).
pub fn dp4_canonical_point(f: &Field, a: Fe, b: Fe) -> Result<Vec5, Dp4Error> {
    if f.p() != 2 {
        return Err(Dp4Error::NotChar2);
    }
    QuadricPencil::new(f, a, b)?;
    let (sa, sb) = (f.sqrt_char2(a), f.sqrt_char2(b));
    let z = f.zero();
    Ok([
        f.add(f.add(f.mul(a, sb), a), sa),
        f.sqrt_char2(f.mul(a, b)),
        f.add(f.add(f.mul(b, sa), b), sb),
        z,
        z,
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixedLocus {
    TwoTangentConics,
    CuspidalRationalCurve,
}

impl FixedLocus {
    pub fn tag(&self) -> &'static str {
        match self {
            FixedLocus::TwoTangentConics => "two tangent conics",
            FixedLocus::CuspidalRationalCurve => "cuspidal rational curve",
        }
    }
}

/// Fixed locus of the first-kind involution attached to the root (1:1), in characteristic 2.
///
/// The involution fixes the hyperplane y1 = y2. Only the member (a:b) of the
/// restricted pencil can split, and then as L (b x1 + (a+b) x2 + a x3 + y1)
/// with L = b x1 + (a+b) x2 + a x3; the curve is two conics iff that happens.
pub fn dp4_fixed_locus_type(f: &Field, a: Fe, b: Fe) -> Result<FixedLocus, Dp4Error> {
    if f.p() != 2 {
        return Err(Dp4Error::NotChar2);
    }
    let pencil = QuadricPencil::new(f, a, b)?;
    let x: Vec<MPoly> = (0..5).map(|i| MPoly::var(f, i)).collect();
    let on_h = [x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone(), x[3].clone()];
    let member = pencil.member([a, b]).substitute(f, &on_h);
    let ab = f.add(a, b);
    let l = MPoly::linear(&[b, ab, a, f.zero(), f.zero()]);
    let other = MPoly::linear(&[b, ab, a, f.one(), f.zero()]);
    Ok(if member == l.mul(f, &other) { FixedLocus::TwoTangentConics } else { FixedLocus::CuspidalRationalCurve })
}

/// Special parameter values of the automorphism table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Special {
    /// general a, b
    General,
    /// a = b general
    Equal,
    /// a = b = i, i^2 + 1 = 0
    I,
    /// a = b = zeta, zeta^2 + zeta + 1 = 0
    Zeta,
    /// a = b = phi, phi^2 - phi - 1 = 0
    Phi,
}

#[derive(Clone, Copy, Debug)]
pub struct Dp4Row {
    pub g: &'static str,
    pub g_order: usize,
    pub params: Special,
    pub orbits: &'static [usize],
}

const fn row(g: &'static str, g_order: usize, params: Special, orbits: &'static [usize]) -> Dp4Row {
    Dp4Row { g, g_order, params, orbits }
}

/// Possible groups G for each characteristic.
pub fn dp4_table(p: u32) -> Vec<Dp4Row> {
    use Special::*;
    match p {
        2 => vec![row("1", 1, General, &[1, 1, 1, 1, 1]), row("2^2", 4, Equal, &[4, 1]), row("A5", 60, Zeta, &[5])],
        3 => vec![
            row("1", 1, General, &[1, 1, 1, 1, 1]),
            row("2", 2, Equal, &[2, 2, 1]),
            row("4", 4, I, &[4, 1]),
            row("D10", 10, Phi, &[5]),
        ],
        5 => vec![
            row("1", 1, General, &[1, 1, 1, 1, 1]),
            row("2", 2, Equal, &[2, 2, 1]),
            row("S3", 6, Zeta, &[3, 2]),
            row("5:4", 20, I, &[5]),
        ],
        _ => vec![
            row("1", 1, General, &[1, 1, 1, 1, 1]),
            row("2", 2, Equal, &[2, 2, 1]),
            row("4", 4, I, &[4, 1]),
            row("S3", 6, Zeta, &[3, 2]),
            row("D10", 10, Phi, &[5]),
        ],
    }
}

fn quadratic_root(f: &Field, c1: i64, c0: i64) -> Option<Fe> {
    f.elements().into_iter().find(|&x| f.add(f.add(f.mul(x, x), f.mul(f.from_i64(c1), x)), f.from_i64(c0)).is_zero())
}

/// Parameters (a, b) realising a row of the table over `f`, if the field is large enough.
pub fn instantiate(row: &Dp4Row, f: &Field) -> Option<(Fe, Fe)> {
    let fits = |a: Fe, b: Fe| dp4_aut(f, a, b).map(|g| g.g.order == row.g_order).unwrap_or(false);
    match row.params {
        Special::I => quadratic_root(f, 0, 1).map(|i| (i, i)),
        Special::Zeta => quadratic_root(f, 1, 1).map(|z| (z, z)),
        Special::Phi => quadratic_root(f, -1, -1).map(|x| (x, x)),
        Special::Equal => f.elements().into_iter().map(|a| (a, a)).find(|&(a, b)| fits(a, b)),
        Special::General => {
            let els = f.elements();
            els.iter().flat_map(|&a| els.iter().map(move |&b| (a, b))).find(|&(a, b)| fits(a, b))
        }
    }
    .filter(|&(a, b)| dp4_aut(f, a, b).is_ok_and(|g| g.g.order == row.g_order))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn preserves(p: &QuadricPencil, m: &Map4) -> bool {
        let f = &p.field;
        let subs: Vec<MPoly> = (0..5).map(|i| MPoly::linear(&m.m[i])).collect();
        let (r1, r2) = (p.q1.substitute(f, &subs), p.q2.substitute(f, &subs));
        // the matrix is normalised up to a scalar c, and q(cx) = c^2 q(x)
        let scale = |q: &MPoly, r: &MPoly| {
            let (e, c) = q.terms.iter().next().unwrap();
            f.div(r.coeff(e), *c)
        };
        let s = scale(&p.q1, &r1);
        r1 == p.q1.scale(f, s) && r2 == p.q2.scale(f, s)
    }

    #[test]
    fn roots_and_singular_choices() {
        let f = Field::prime(11).unwrap();
        let phi = f.from_i64(8);
        assert!(dp4_delta_roots(&f, phi, phi).is_ok());
        assert_eq!(dp4_delta_roots(&f, f.one(), f.from_i64(3)), Err(Dp4Error::Singular));
        let f4 = Field::gf(2, 2).unwrap();
        assert_eq!(dp4_delta_roots(&f4, f4.one(), f4.one()), Err(Dp4Error::Singular));
        let w = f4.gen();
        // a b = 1 makes (-a:1) and (1:-b) coincide
        assert_eq!(dp4_delta_roots(&f4, w, f4.mul(w, w)), Err(Dp4Error::Singular));
    }

    #[test]
    fn reflections_generate_2_4_and_preserve_pencil() {
        for (p, k) in [(11, 1), (2, 4)] {
            let f = Field::gf(p, k).unwrap();
            let (a, b) = if p == 2 { (f.gen(), f.mul(f.gen(), f.gen())) } else { (f.from_i64(2), f.from_i64(7)) };
            let pencil = QuadricPencil::new(&f, a, b).unwrap();
            let aut = dp4_aut(&f, a, b).unwrap();
            assert_eq!(aut.reflection_group_order, 16);
            for r in &aut.reflections {
                assert!(preserves(&pencil, r));
                assert_eq!(r.order(&f), 2);
                for s in &aut.reflections {
                    assert_eq!(r.compose(&f, s), s.compose(&f, r));
                }
            }
        }
    }

    #[test]
    fn char2_canonical_point_and_fixed_locus() {
        let f = Field::gf(2, 4).unwrap();
        let w = quadratic_root(&f, 1, 1).unwrap();
        let g = f.gen();
        for (a, b) in [(w, w), (w, g), (g, f.mul(g, g))] {
            let pencil = QuadricPencil::new(&f, a, b).unwrap();
            let p0 = dp4_canonical_point(&f, a, b).unwrap();
            assert!(pencil.contains(&p0));
            let aut = dp4_aut(&f, a, b).unwrap();
            let pt = crate::projgeom::ProjPoint::<5>::new(&f, p0).unwrap();
            assert!(aut.reflections.iter().all(|r| r.apply(&f, &pt) == pt));
            let want = if a == b { FixedLocus::TwoTangentConics } else { FixedLocus::CuspidalRationalCurve };
            assert_eq!(dp4_fixed_locus_type(&f, a, b).unwrap(), want);
        }
        assert_eq!(dp4_canonical_point(&Field::prime(7).unwrap(), f.one(), f.one()), Err(Dp4Error::NotChar2));
    }

    #[test]
    fn table_rows_over_small_fields() {
        for (p, k) in [(11, 2), (2, 4), (3, 4), (5, 2)] {
            let f = Field::gf(p, k).unwrap();
            for row in dp4_table(f.p()) {
                let (a, b) = instantiate(&row, &f).unwrap_or_else(|| panic!("p={p} row {}", row.g));
                let aut = dp4_aut(&f, a, b).unwrap();
                assert_eq!(aut.order, 16 * row.g_order);
                assert_eq!(aut.g_tag, row.g, "p={p}");
                let mut orbits: Vec<usize> = (0..5)
                    .map(|i| aut.root_perms.iter().map(|s| s[i]).collect::<BTreeSet<_>>().len())
                    .collect();
                orbits.sort();
                let mut want: Vec<usize> = row.orbits.iter().flat_map(|&o| std::iter::repeat(o).take(o)).collect();
                want.sort();
                assert_eq!(orbits, want);
                for c in d5_classes(&aut) {
                    assert!(realizable(c, f.p()), "{c} at p={p}");
                }
            }
        }
    }

    #[test]
    fn translations_act_simply_transitively_on_16_lines() {
        let odd: Vec<u8> = (0u8..32).filter(|v| v.count_ones() % 2 == 1).collect();
        assert_eq!(odd.len(), 16);
        let model: BTreeSet<u8> = weyl::d5_model().iter().map(|m| m.1).collect();
        assert_eq!(model, odd.iter().copied().collect());
        for &u in &odd {
            let moves: BTreeSet<u8> = (0u8..32).filter(|t| t.count_ones() % 2 == 0).map(|t| u ^ t).collect();
            assert_eq!(moves.len(), 16);
            assert_eq!(moves, odd.iter().copied().collect());
        }
    }
}
