//! The 27 lines of a smooth cubic surface and their incidence structure.
//!
//! Lines disjoint from L = {x0 = x1 = 0} meet the plane {x1 = 0} in a point
//! (1 : 0 : a : c). Writing such a line through P = (1,0,a,c) and
//! Q = (0,1,b,d), the pencil F(sP + tQ) = s^3 C0 + s^2 t C1 + s t^2 C2 + t^3 C3
//! must vanish identically. C1 is linear in d, which is eliminated; a
//! resultant in b and then one in c leave a univariate eliminant rho(a).
//! Every root a0 of rho is followed up exactly: through each point
//! (1,0,a0,c0) of X the lines are found in the tangent plane, and every
//! candidate is verified by direct containment. Lines meeting L are found
//! through the points of L on X.

use crate::gf::{Embedding, Fe, Field, GfError};
use crate::linalg;
use crate::mpoly::MPoly;
use crate::poly::{self, UniPoly};
use crate::projgeom::Line3;
use crate::surface::{self, CubicForm, MONOMIALS, QUAD_MONOMIALS};
use crate::weyl;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum LinesError {
    #[error("not 27 distinct lines: the surface is not smooth")]
    NotSmooth,
    #[error("not 27 distinct lines: only {found} found over extensions of degree <= {max_ext}; max_ext too small")]
    ExtensionTooSmall { found: usize, max_ext: usize },
    #[error("line configuration does not match the abstract incidence")]
    BadConfiguration,
}

/// The 27 lines over a working field, indexed by a geometric marking:
/// `lines[i]` is the line labelled `weyl::label(i)`.
#[derive(Clone, Debug)]
pub struct LineConfiguration {
    pub field: Field,
    /// the input form, carried into the working field
    pub form: CubicForm,
    pub lines: Vec<Line3>,
    pub incidence: [[bool; 27]; 27],
}

impl LineConfiguration {
    pub fn trios(&self) -> &'static Vec<[usize; 3]> {
        weyl::trios()
    }
    pub fn double_sixes(&self) -> Vec<([usize; 6], [usize; 6])> {
        weyl::double_sixes()
    }
    pub fn index_of(&self, l: &Line3) -> Option<usize> {
        self.lines.iter().position(|m| m == l)
    }
    /// Meeting point of two incident lines.
    pub fn meet(&self, a: usize, b: usize) -> Option<[Fe; 4]> {
        self.lines[a].meet(&self.field, &self.lines[b]).ok().flatten().map(|p| p.c)
    }
}

/// Whether the line spanned by u and v lies on the surface.
pub fn line_on_surface(form: &CubicForm, u: &[Fe; 4], v: &[Fe; 4]) -> bool {
    form.eval(u).is_zero()
        && form.eval(v).is_zero()
        && form.polar_at(u, v).is_zero()
        && form.polar_at(v, u).is_zero()
}

fn lin(f: &Field, a: &[Fe; 4], x: Fe, b: &[Fe; 4], y: Fe) -> [Fe; 4] {
    std::array::from_fn(|i| f.add(f.mul(x, a[i]), f.mul(y, b[i])))
}

/// Points (l : m) of P^1 where a binary form vanishes; coefficients are
/// indexed by the power of l and the form has formal degree `coeffs.len() - 1`.
/// Returns None if the form is identically zero.
fn binary_roots(f: &Field, coeffs: &[Fe]) -> Option<Vec<[Fe; 2]>> {
    let p = UniPoly::from_vec(coeffs.to_vec());
    if p.is_zero() {
        return None;
    }
    let mut out: Vec<[Fe; 2]> = poly::roots(f, &p).into_iter().map(|r| [r, f.one()]).collect();
    if coeffs.last().unwrap().is_zero() {
        out.push([f.one(), f.zero()]);
    }
    Some(out)
}

/// All lines on X through the point p of X.
pub fn lines_through_point(form: &CubicForm, p: &[Fe; 4]) -> Result<Vec<Line3>, LinesError> {
    let f = &form.field;
    let g = form.grad(p);
    if g.iter().all(|x| x.is_zero()) {
        return Err(LinesError::NotSmooth);
    }
    let ker = linalg::kernel(f, &vec![g.to_vec()], 4);
    let ker: Vec<[Fe; 4]> = ker.into_iter().map(|v| v.try_into().unwrap()).collect();
    let mut basis = None;
    'o: for i in 0..3 {
        for j in i + 1..3 {
            if linalg::rank(f, &vec![p.to_vec(), ker[i].to_vec(), ker[j].to_vec()]) == 3 {
                basis = Some((ker[i], ker[j]));
                break 'o;
            }
        }
    }
    let (u1, u2) = basis.expect("tangent plane basis");
    // v = l u1 + m u2; line p + v lies on X iff P.grad F(v) = F(v) = 0
    let qa = form.polar_at(p, &u1);
    let qc = form.polar_at(p, &u2);
    let qb = f.sub(f.sub(form.polar_at(p, &lin(f, &u1, f.one(), &u2, f.one())), qa), qc);
    let q = [qc, qb, qa];
    let c = [form.eval(&u2), form.polar_at(&u1, &u2), form.polar_at(&u2, &u1), form.eval(&u1)];
    let qp = UniPoly::from_vec(q.to_vec());
    let cp = UniPoly::from_vec(c.to_vec());
    if qp.is_zero() && cp.is_zero() {
        return Err(LinesError::NotSmooth);
    }
    let g = poly::gcd(f, &qp, &cp);
    let mut dirs: Vec<[Fe; 4]> = if g.deg().unwrap_or(0) > 0 {
        poly::roots(f, &g).into_iter().map(|l| lin(f, &u1, l, &u2, f.one())).collect()
    } else {
        vec![]
    };
    if qa.is_zero() && c[3].is_zero() {
        dirs.push(u1);
    }
    let mut out = vec![];
    for v in dirs {
        if line_on_surface(form, p, &v) {
            out.push(Line3::through(f, *p, v).expect("independent"));
        }
    }
    Ok(out)
}

/// The lines of X meeting the line `l0`, which must lie on X: the residual
/// conics of the planes through `l0` degenerate in five planes.
pub fn lines_meeting_line(form: &CubicForm, l0: &Line3) -> Result<Vec<Line3>, LinesError> {
    let f = &form.field;
    let (p, q) = (l0.u, l0.v);
    let mut rest = vec![];
    for i in 0..4 {
        let mut e = [f.zero(); 4];
        e[i] = f.one();
        let mut m = vec![p.to_vec(), q.to_vec()];
        m.extend(rest.iter().map(|r: &[Fe; 4]| r.to_vec()));
        m.push(e.to_vec());
        if linalg::rank(f, &m) == m.len() {
            rest.push(e);
        }
    }
    let (r, s) = (rest[0], rest[1]);
    // F(x p + y q + z (al r + be s)) in variables x, y, z, al, be
    let vars: Vec<MPoly> = (0..5).map(|i| MPoly::var(f, i)).collect();
    let za = vars[2].mul(f, &vars[3]);
    let zb = vars[2].mul(f, &vars[4]);
    let subs: Vec<MPoly> = (0..4)
        .map(|i| {
            vars[0]
                .scale(f, p[i])
                .add(f, &vars[1].scale(f, q[i]))
                .add(f, &za.scale(f, r[i]))
                .add(f, &zb.scale(f, s[i]))
        })
        .collect();
    let g = form.to_mpoly().substitute(f, &subs);
    // conic coefficient of x^i y^j z^k (after dividing by z) as a binary form in al
    let conic_coeff = |e: [u8; 3]| -> Vec<Fe> {
        let k = e[2] as usize + 1;
        let mut v = vec![f.zero(); k + 1];
        for (ex, &c) in &g.terms {
            if ex[0] == e[0] && ex[1] == e[1] && ex[2] as usize == k {
                v[ex[3] as usize] = f.add(v[ex[3] as usize], c);
            }
        }
        v
    };
    if g.terms.keys().any(|e| e[2] == 0) {
        return Err(LinesError::BadConfiguration);
    }
    let (ca, cb, cc) = (conic_coeff([2, 0, 0]), conic_coeff([0, 2, 0]), conic_coeff([0, 0, 2]));
    let (cd, ce, cf) = (conic_coeff([0, 1, 1]), conic_coeff([1, 0, 1]), conic_coeff([1, 1, 0]));
    let up = |v: &Vec<Fe>| UniPoly::from_vec(v.clone());
    let (a, b, c, d, e, ff) = (up(&ca), up(&cb), up(&cc), up(&cd), up(&ce), up(&cf));
    // half-discriminant 4abc + def - ad^2 - be^2 - cf^2, a binary quintic
    let delta = a
        .mul(f, &b)
        .mul(f, &c)
        .scale(f, f.from_u64(4))
        .add(f, &d.mul(f, &e).mul(f, &ff))
        .sub(f, &a.mul(f, &d).mul(f, &d))
        .sub(f, &b.mul(f, &e).mul(f, &e))
        .sub(f, &c.mul(f, &ff).mul(f, &ff));
    let mut dc = delta.c.clone();
    dc.resize(6, f.zero());
    let planes = binary_roots(f, &dc).ok_or(LinesError::NotSmooth)?;
    let eval_bin = |v: &Vec<Fe>, t: &[Fe; 2]| -> Fe {
        let k = v.len() - 1;
        v.iter().enumerate().fold(f.zero(), |acc, (j, &cj)| {
            f.add(acc, f.mul(cj, f.mul(f.pow(t[0], j as u128), f.pow(t[1], (k - j) as u128))))
        })
    };
    let mut out = vec![];
    for t in &planes {
        let w = lin(f, &r, t[0], &s, t[1]);
        let [qa, qb, qc, qd, qe, qf] = [&ca, &cb, &cc, &cd, &ce, &cf].map(|v| eval_bin(v, t));
        let qeval = |x: &[Fe; 3]| -> Fe {
            let terms = [
                f.mul(qa, f.mul(x[0], x[0])),
                f.mul(qb, f.mul(x[1], x[1])),
                f.mul(qc, f.mul(x[2], x[2])),
                f.mul(qd, f.mul(x[1], x[2])),
                f.mul(qe, f.mul(x[0], x[2])),
                f.mul(qf, f.mul(x[0], x[1])),
            ];
            terms.iter().fold(f.zero(), |s, &y| f.add(s, y))
        };
        let two = f.from_u64(2);
        let m = vec![
            vec![f.mul(two, qa), qf, qe],
            vec![qf, f.mul(two, qb), qd],
            vec![qe, qd, f.mul(two, qc)],
        ];
        let ker = linalg::kernel(f, &m, 3);
        if ker.len() != 1 {
            return Err(LinesError::NotSmooth);
        }
        let sing: [Fe; 3] = ker[0].clone().try_into().unwrap();
        if !qeval(&sing).is_zero() {
            return Err(LinesError::NotSmooth);
        }
        // intersect the conic with a coordinate line not through the singular point
        let k = (0..3).find(|&i| !sing[i].is_zero()).unwrap();
        let (i, j) = match k {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let unit = |n: usize| -> [Fe; 3] { std::array::from_fn(|x| if x == n { f.one() } else { f.zero() }) };
        let (ei, ej) = (unit(i), unit(j));
        let q_ii = qeval(&ei);
        let q_jj = qeval(&ej);
        let sum: [Fe; 3] = std::array::from_fn(|x| f.add(ei[x], ej[x]));
        let q_ij = f.sub(f.sub(qeval(&sum), q_ii), q_jj);
        let Some(pts) = binary_roots(f, &[q_jj, q_ij, q_ii]) else {
            return Err(LinesError::NotSmooth);
        };
        let to_p3 = |x: &[Fe; 3]| -> [Fe; 4] {
            std::array::from_fn(|n| f.add(f.add(f.mul(x[0], p[n]), f.mul(x[1], q[n])), f.mul(x[2], w[n])))
        };
        let sp = to_p3(&sing);
        for pt in pts {
            let tp: [Fe; 3] = std::array::from_fn(|x| f.add(f.mul(pt[0], ei[x]), f.mul(pt[1], ej[x])));
            let tp = to_p3(&tp);
            if line_on_surface(form, &sp, &tp) {
                out.push(Line3::through(f, sp, tp).expect("distinct points"));
            }
        }
    }
    Ok(out)
}

/// Coefficients (formal degree `deg`) of the binary form obtained by
/// substituting univariate linear polynomials into a form given by
/// (coefficient, exponent) terms.
fn substitute(f: &Field, terms: &[(Fe, [u8; 4])], subs: &[UniPoly; 4], deg: usize) -> Vec<Fe> {
    let mut acc = UniPoly::zero();
    for (c, e) in terms {
        if c.is_zero() {
            continue;
        }
        let mut t = UniPoly::constant(*c);
        for v in 0..4 {
            for _ in 0..e[v] {
                t = t.mul(f, &subs[v]);
            }
        }
        acc = acc.add(f, &t);
    }
    let mut v = acc.c;
    v.resize(deg + 1, f.zero());
    v
}

/// Determinant of the Sylvester matrix of a and b with the given formal degrees
/// (coefficient vectors of lengths m+1 and n+1, low degree first).
pub fn sylvester_det(f: &Field, a: &[Fe], b: &[Fe]) -> Fe {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut mat = linalg::zeros(f, size, size);
    for i in 0..n {
        for (j, &c) in a.iter().rev().enumerate() {
            mat[i][i + j] = c;
        }
    }
    for i in 0..m {
        for (j, &c) in b.iter().rev().enumerate() {
            mat[n + i][i + j] = c;
        }
    }
    linalg::det(f, &mat)
}

/// R(a, c): the b-resultant of gamma^2 C2 and gamma^3 C3 after eliminating d.
pub fn chart_resultant(form: &CubicForm, a: Fe, c: Fe) -> Fe {
    let f = &form.field;
    let p = [f.one(), f.zero(), a, c];
    let gr = form.grad(&p);
    let (al, be, ga) = (gr[1], gr[2], gr[3]);
    // gamma * (0, 1, b, d) with d = -(al + be b)/gamma
    let subs = [
        UniPoly::zero(),
        UniPoly::constant(ga),
        UniPoly::from_vec(vec![f.zero(), ga]),
        UniPoly::from_vec(vec![f.neg(al), f.neg(be)]),
    ];
    let polar = form.polar(&p);
    let quad: Vec<(Fe, [u8; 4])> = QUAD_MONOMIALS.iter().zip(polar.iter()).map(|(e, &c)| (c, *e)).collect();
    let cub: Vec<(Fe, [u8; 4])> = MONOMIALS.iter().zip(form.c.iter()).map(|(e, &c)| (c, *e)).collect();
    let g2 = substitute(f, &quad, &subs, 2);
    let g3 = substitute(f, &cub, &subs, 3);
    sylvester_det(f, &g2, &g3)
}

/// Coefficients of C0(a, c) = F(1, 0, a, c) in c (formal degree 3).
fn c0_coeffs(form: &CubicForm, a: Fe) -> [Fe; 4] {
    let f = &form.field;
    let p0 = [f.one(), f.zero(), a, f.zero()];
    let e3 = [f.zero(), f.zero(), f.zero(), f.one()];
    [form.eval(&p0), form.polar_at(&e3, &p0), form.polar_at(&p0, &e3), form.eval(&e3)]
}

/// Newton interpolation through (xs[i], ys[i]).
pub fn interpolate(f: &Field, xs: &[Fe], ys: &[Fe]) -> UniPoly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = f.div(f.sub(dd[i], dd[i - 1]), f.sub(xs[i], xs[i - j]));
        }
    }
    let mut p = UniPoly::constant(dd[n - 1]);
    for i in (0..n - 1).rev() {
        p = p.mul(f, &UniPoly::linear(f, xs[i])).add(f, &UniPoly::constant(dd[i]));
    }
    p
}

/// The eliminant rho(a) = Res_c(C0, R) over the field of `form`, computed by
/// evaluation at 82 points of an extension and interpolation.
pub fn eliminant(form: &CubicForm) -> Result<UniPoly, GfError> {
    let k = &form.field;
    let mut deg = 1;
    while k.order().map_or(false, |q| q.checked_pow(deg as u32).map_or(false, |x| x < 82)) {
        deg += 1;
    }
    let e = k.extend(deg)?;
    let emb = Embedding::new(k, &e).unwrap();
    let fe = form.map(&emb);
    let cs: Vec<Fe> = (0..28).map(|i| e.from_index(i)).collect();
    let xs: Vec<Fe> = (0..82).map(|i| e.from_index(i)).collect();
    let ys: Vec<Fe> = xs
        .iter()
        .map(|&a| {
            let rv: Vec<Fe> = cs.iter().map(|&c| chart_resultant(&fe, a, c)).collect();
            let mut rc = interpolate(&e, &cs, &rv).c;
            rc.resize(28, e.zero());
            sylvester_det(&e, &c0_coeffs(&fe, a), &rc)
        })
        .collect();
    let rho = interpolate(&e, &xs, &ys);
    Ok(rho.preimage(&emb).expect("eliminant has coefficients in the base field"))
}

/// Lines of X over the field of `form`, given the factored eliminant.
fn lines_over(form: &CubicForm, emb: &Embedding, fac: &[(UniPoly, usize)]) -> Result<BTreeSet<Line3>, LinesError> {
    let f = &form.field;
    let mut found = BTreeSet::new();
    let add_all = |v: Vec<Line3>, found: &mut BTreeSet<Line3>| found.extend(v);
    for a0 in poly::roots_from_factors(emb, fac) {
        let c0 = c0_coeffs(form, a0);
        if c0.iter().all(|x| x.is_zero()) {
            let l = Line3::through(f, [f.one(), f.zero(), a0, f.zero()], [f.zero(), f.zero(), f.zero(), f.one()]).unwrap();
            add_all(lines_meeting_line(form, &l)?, &mut found);
            found.insert(l);
            continue;
        }
        let cp = UniPoly::from_vec(c0.to_vec());
        if cp.deg() == Some(0) {
            continue;
        }
        for c in poly::roots(f, &cp) {
            if chart_resultant(form, a0, c).is_zero() {
                add_all(lines_through_point(form, &[f.one(), f.zero(), a0, c])?, &mut found);
            }
        }
        if found.len() > 27 {
            return Err(LinesError::NotSmooth);
        }
    }
    // lines meeting {x0 = x1 = 0}
    let inf: Vec<Fe> = (0..4).map(|j| form.coeff([0, 0, j as u8, 3 - j as u8])).collect();
    match binary_roots(f, &inf) {
        None => {
            let l = Line3::through(f, [f.zero(), f.zero(), f.one(), f.zero()], [f.zero(), f.zero(), f.zero(), f.one()]).unwrap();
            add_all(lines_meeting_line(form, &l)?, &mut found);
            found.insert(l);
        }
        Some(pts) => {
            for t in pts {
                add_all(lines_through_point(form, &[f.zero(), f.zero(), t[0], t[1]])?, &mut found);
            }
        }
    }
    if found.len() > 27 {
        return Err(LinesError::NotSmooth);
    }
    Ok(found)
}

fn random_invertible(f: &Field, rng: &mut ChaCha8Rng) -> [[Fe; 4]; 4] {
    loop {
        let m: [[Fe; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| f.random(rng)));
        let mm: linalg::Mat = m.iter().map(|r| r.to_vec()).collect();
        if !linalg::det(f, &mm).is_zero() {
            return m;
        }
    }
}

/// Find the 27 lines over the smallest extension of degree <= max_ext
/// containing all of them.
pub fn find_lines(form: &CubicForm, max_ext: usize) -> Result<LineConfiguration, LinesError> {
    let k = &form.field;
    let mut rng = ChaCha8Rng::seed_from_u64(0x27);
    let mut best = 0;
    for attempt in 0..4 {
        let a = if attempt == 0 {
            None
        } else {
            Some(random_invertible(k, &mut rng))
        };
        let g = match &a {
            None => form.clone(),
            Some(m) => form.transform(m),
        };
        let rho = eliminant(&g).map_err(|_| LinesError::ExtensionTooSmall { found: 0, max_ext })?;
        if rho.is_zero() {
            continue;
        }
        let fac = poly::factor(k, &rho);
        let mut failed = false;
        for d in 1..=max_ext {
            let Ok(l) = k.extend(d) else { break };
            let emb = Embedding::new(k, &l).unwrap();
            let gl = g.map(&emb);
            let set = match lines_over(&gl, &emb, &fac) {
                Ok(s) => s,
                Err(_) => {
                    failed = true;
                    break;
                }
            };
            best = best.max(set.len());
            if set.len() == 27 {
                return configuration(form.map(&emb), untransform(&l, &emb, a.as_ref(), set));
            }
        }
        if !failed {
            break;
        }
    }
    // Small base fields can leave every rational chart degenerate; then draw the
    // coordinate change over each candidate extension instead.
    for d in 1..=max_ext {
        let Ok(l) = k.extend(d) else { break };
        let emb = Embedding::new(k, &l).unwrap();
        let id = Embedding::identity(&l);
        let gl = form.map(&emb);
        for _ in 0..4 {
            let m = random_invertible(&l, &mut rng);
            let g = gl.transform(&m);
            let Ok(rho) = eliminant(&g) else { break };
            if rho.is_zero() {
                continue;
            }
            let fac = poly::factor(&l, &rho);
            if let Ok(set) = lines_over(&g, &id, &fac) {
                best = best.max(set.len());
                if set.len() == 27 {
                    return configuration(gl, untransform(&l, &id, Some(&m), set));
                }
                break;
            }
        }
    }
    // distinguish a singular input from an insufficient extension bound
    match surface::is_smooth(form, max_ext) {
        Ok(s) if !s.smooth => Err(LinesError::NotSmooth),
        _ => Err(LinesError::ExtensionTooSmall { found: best, max_ext }),
    }
}

/// Map lines found on F(Ax) back to the surface F = 0.
fn untransform(l: &Field, emb: &Embedding, a: Option<&[[Fe; 4]; 4]>, set: BTreeSet<Line3>) -> Vec<Line3> {
    match a {
        None => set.into_iter().collect(),
        Some(m) => {
            let ml: [[Fe; 4]; 4] = m.map(|r| r.map(|x| emb.apply(x)));
            let act = |v: &[Fe; 4]| -> [Fe; 4] {
                std::array::from_fn(|i| (0..4).fold(l.zero(), |s, j| l.add(s, l.mul(ml[i][j], v[j]))))
            };
            set.into_iter().map(|ln| Line3::through(l, act(&ln.u), act(&ln.v)).unwrap()).collect()
        }
    }
}

/// Lexicographically first set of six pairwise skew lines.
fn first_six(inc: &[Vec<bool>]) -> Option<Vec<usize>> {
    fn rec(start: usize, cur: &mut Vec<usize>, inc: &[Vec<bool>]) -> bool {
        if cur.len() == 6 {
            return true;
        }
        for l in start..inc.len() {
            if cur.iter().all(|&c| !inc[c][l]) {
                cur.push(l);
                if rec(l + 1, cur, inc) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    let mut cur = vec![];
    rec(0, &mut cur, inc).then_some(cur)
}

/// Build a marked configuration from 27 lines on the form's surface.
pub fn configuration(form: CubicForm, mut lines: Vec<Line3>) -> Result<LineConfiguration, LinesError> {
    let f = form.field.clone();
    if lines.len() != 27 || lines.iter().any(|l| !line_on_surface(&form, &l.u, &l.v)) {
        return Err(LinesError::BadConfiguration);
    }
    lines.sort();
    let inc: Vec<Vec<bool>> = (0..27).map(|a| (0..27).map(|b| a != b && lines[a].meets(&f, &lines[b])).collect()).collect();
    let six = first_six(&inc).ok_or(LinesError::BadConfiguration)?;
    let mut label = [usize::MAX; 27];
    for (i, &l) in six.iter().enumerate() {
        label[i] = l;
    }
    for l in 0..27 {
        if six.contains(&l) {
            continue;
        }
        let hit: Vec<usize> = (0..6).filter(|&i| inc[l][six[i]]).collect();
        let slot = match hit.len() {
            2 => weyl::f_index(hit[0], hit[1]),
            5 => 21 + (0..6).find(|i| !hit.contains(i)).unwrap(),
            _ => return Err(LinesError::BadConfiguration),
        };
        if label[slot] != usize::MAX {
            return Err(LinesError::BadConfiguration);
        }
        label[slot] = l;
    }
    let marked: Vec<Line3> = label.iter().map(|&l| lines[l]).collect();
    let incidence: [[bool; 27]; 27] = std::array::from_fn(|a| std::array::from_fn(|b| inc[label[a]][label[b]]));
    if incidence != *weyl::incidence() {
        return Err(LinesError::BadConfiguration);
    }
    Ok(LineConfiguration { field: f, form, lines: marked, incidence })
}

/// All lines of P^3 over a (small) field, by Schubert cells of 2x4 row echelon forms.
pub fn all_lines_of_p3(f: &Field) -> Vec<Line3> {
    let els = f.elements();
    let mut out = vec![];
    for i in 0..4 {
        for j in i + 1..4 {
            let free1: Vec<usize> = (i + 1..4).filter(|&k| k != j).collect();
            let free2: Vec<usize> = (j + 1..4).collect();
            let nfree = free1.len() + free2.len();
            let total = els.len().pow(nfree as u32);
            for mut idx in 0..total {
                let mut u = [f.zero(); 4];
                let mut v = [f.zero(); 4];
                u[i] = f.one();
                v[j] = f.one();
                for &k in free1.iter() {
                    u[k] = els[idx % els.len()];
                    idx /= els.len();
                }
                for &k in free2.iter() {
                    v[k] = els[idx % els.len()];
                    idx /= els.len();
                }
                out.push(Line3::through(f, u, v).unwrap());
            }
        }
    }
    out
}

/// All points of P^3 over a (small) field.
pub fn all_points_of_p3(f: &Field) -> Vec<[Fe; 4]> {
    let els = f.elements();
    let mut out = vec![];
    for lead in 0..4 {
        let total = els.len().pow((3 - lead) as u32);
        for mut idx in 0..total {
            let mut p = [f.zero(); 4];
            p[lead] = f.one();
            for k in lead + 1..4 {
                p[k] = els[idx % els.len()];
                idx /= els.len();
            }
            out.push(p);
        }
    }
    out
}

/// Exhaustive search for lines on X over the form's own field.
pub fn lines_exhaustive(form: &CubicForm) -> Vec<Line3> {
    let mut v: Vec<Line3> = all_lines_of_p3(&form.field)
        .into_iter()
        .filter(|l| line_on_surface(form, &l.u, &l.v))
        .collect();
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fermat(f: &Field) -> CubicForm {
        CubicForm::from_terms(f, &[(1, [3, 0, 0, 0]), (1, [0, 3, 0, 0]), (1, [0, 0, 3, 0]), (1, [0, 0, 0, 3])])
    }

    #[test]
    fn sylvester_matches_euclid() {
        let f = Field::prime(13).unwrap();
        let a: Vec<Fe> = [3, 1, 4, 1].iter().map(|&x| f.from_u64(x)).collect();
        let b: Vec<Fe> = [5, 9, 2].iter().map(|&x| f.from_u64(x)).collect();
        let s = sylvester_det(&f, &a, &b);
        let r = poly::resultant(&f, &UniPoly::from_vec(a), &UniPoly::from_vec(b));
        assert_eq!(s, r);
    }

    #[test]
    fn interpolation_roundtrip() {
        let f = Field::gf(2, 7).unwrap();
        let p = UniPoly::from_vec((0..10).map(|i| f.from_index(i * 7 + 1)).collect());
        let xs: Vec<Fe> = (0..10).map(|i| f.from_index(i)).collect();
        let ys: Vec<Fe> = xs.iter().map(|&x| p.eval(&f, x)).collect();
        assert_eq!(interpolate(&f, &xs, &ys), p);
    }

    #[test]
    fn fermat_gf4_lines() {
        let f = Field::gf(2, 2).unwrap();
        let cfg = find_lines(&fermat(&f), 12).unwrap();
        assert_eq!(cfg.field.k(), 2);
        let ex = lines_exhaustive(&cfg.form);
        let mut got = cfg.lines.clone();
        got.sort();
        assert_eq!(got, ex);
    }

    #[test]
    fn fermat_gf7_lines() {
        let f = Field::prime(7).unwrap();
        let cfg = find_lines(&fermat(&f), 12).unwrap();
        assert_eq!(cfg.field.k(), 1);
    }

    #[test]
    fn p3_counts() {
        let f = Field::gf(2, 2).unwrap();
        assert_eq!(all_lines_of_p3(&f).len(), 357);
        assert_eq!(all_points_of_p3(&f).len(), 85);
    }

    #[test]
    fn singular_rejected() {
        let f = Field::prime(7).unwrap();
        // cone over a plane cubic
        let cone = CubicForm::from_terms(&f, &[(1, [3, 0, 0, 0]), (1, [0, 3, 0, 0]), (1, [0, 0, 3, 0])]);
        assert_eq!(find_lines(&cone, 4).unwrap_err(), LinesError::NotSmooth);
    }
}
