//! Cubic forms in four variables and their differential calculus.

use crate::gf::{Embedding, Fe, Field};
use crate::groebner::{self, SolveError};
use crate::linalg::{self, Mat};
use crate::mpoly::{Exp, MPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

/// Degree 3 monomials in x0..x3, graded lex with x0 > x1 > x2 > x3.
pub const MONOMIALS: [[u8; 4]; 20] = [
    [3, 0, 0, 0],
    [2, 1, 0, 0],
    [2, 0, 1, 0],
    [2, 0, 0, 1],
    [1, 2, 0, 0],
    [1, 1, 1, 0],
    [1, 1, 0, 1],
    [1, 0, 2, 0],
    [1, 0, 1, 1],
    [1, 0, 0, 2],
    [0, 3, 0, 0],
    [0, 2, 1, 0],
    [0, 2, 0, 1],
    [0, 1, 2, 0],
    [0, 1, 1, 1],
    [0, 1, 0, 2],
    [0, 0, 3, 0],
    [0, 0, 2, 1],
    [0, 0, 1, 2],
    [0, 0, 0, 3],
];

/// Degree 2 monomials, same order.
pub const QUAD_MONOMIALS: [[u8; 4]; 10] = [
    [2, 0, 0, 0],
    [1, 1, 0, 0],
    [1, 0, 1, 0],
    [1, 0, 0, 1],
    [0, 2, 0, 0],
    [0, 1, 1, 0],
    [0, 1, 0, 1],
    [0, 0, 2, 0],
    [0, 0, 1, 1],
    [0, 0, 0, 2],
];

pub fn monomial_index(e: [u8; 4]) -> Option<usize> {
    MONOMIALS.iter().position(|m| *m == e)
}
pub fn quad_index(e: [u8; 4]) -> Option<usize> {
    QUAD_MONOMIALS.iter().position(|m| *m == e)
}

/// Index of x_i x_j x_k.
pub fn cubic_index(i: usize, j: usize, k: usize) -> usize {
    let mut e = [0u8; 4];
    e[i] += 1;
    e[j] += 1;
    e[k] += 1;
    monomial_index(e).unwrap()
}

struct Tables {
    /// (quad index, var) -> cubic index
    qv: [[usize; 4]; 10],
    /// (var, var) -> quad index
    vv: [[usize; 4]; 4],
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let mut qv = [[0; 4]; 10];
        for (q, m) in QUAD_MONOMIALS.iter().enumerate() {
            for v in 0..4 {
                let mut e = *m;
                e[v] += 1;
                qv[q][v] = monomial_index(e).unwrap();
            }
        }
        let mut vv = [[0; 4]; 4];
        for (i, row) in vv.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                let mut e = [0u8; 4];
                e[i] += 1;
                e[j] += 1;
                *x = quad_index(e).unwrap();
            }
        }
        Tables { qv, vv }
    })
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("not characteristic 2")]
    NotChar2,
    #[error("not characteristic 3")]
    NotChar3,
    #[error("polar not a perfect square")]
    PolarNotSquare,
    #[error("nonempty intersection with X")]
    CriticalOnSurface,
    #[error("zero form")]
    ZeroForm,
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// A homogeneous cubic in x0..x3 over `field`.
#[derive(Clone, Debug)]
pub struct CubicForm {
    pub field: Field,
    pub c: [Fe; 20],
}

impl PartialEq for CubicForm {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && self.c == o.c
    }
}

impl CubicForm {
    pub fn new(field: &Field, c: [Fe; 20]) -> Self {
        CubicForm { field: field.clone(), c }
    }
    pub fn zero(field: &Field) -> Self {
        Self::new(field, [field.zero(); 20])
    }
    pub fn from_mpoly(field: &Field, p: &MPoly) -> Self {
        let mut c = [field.zero(); 20];
        for (e, &a) in &p.terms {
            assert!(e[4] == 0, "cubic forms use four variables");
            let i = monomial_index([e[0], e[1], e[2], e[3]]).expect("not a homogeneous cubic");
            c[i] = a;
        }
        Self::new(field, c)
    }
    pub fn to_mpoly(&self) -> MPoly {
        let mut p = MPoly::zero();
        for (i, m) in MONOMIALS.iter().enumerate() {
            let e: Exp = [m[0], m[1], m[2], m[3], 0];
            p = p.add(&self.field, &MPoly::term(self.c[i], e));
        }
        p
    }
    /// Build from integer coefficients of monomials given as (coefficient, [e0,e1,e2,e3]).
    pub fn from_terms(field: &Field, terms: &[(i64, [u8; 4])]) -> Self {
        let mut c = [field.zero(); 20];
        for &(a, e) in terms {
            let i = monomial_index(e).expect("not a cubic monomial");
            c[i] = field.add(c[i], field.from_i64(a));
        }
        Self::new(field, c)
    }
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    pub fn coeff(&self, e: [u8; 4]) -> Fe {
        self.c[monomial_index(e).unwrap()]
    }

    pub fn eval(&self, x: &[Fe; 4]) -> Fe {
        let f = &self.field;
        let mut s = f.zero();
        for (i, m) in MONOMIALS.iter().enumerate() {
            if self.c[i].is_zero() {
                continue;
            }
            let mut t = self.c[i];
            for v in 0..4 {
                for _ in 0..m[v] {
                    t = f.mul(t, x[v]);
                }
            }
            s = f.add(s, t);
        }
        s
    }

    pub fn grad(&self, x: &[Fe; 4]) -> [Fe; 4] {
        let f = &self.field;
        let mut g = [f.zero(); 4];
        for (i, m) in MONOMIALS.iter().enumerate() {
            if self.c[i].is_zero() {
                continue;
            }
            for v in 0..4 {
                if m[v] == 0 {
                    continue;
                }
                let mut t = f.mul(self.c[i], f.from_u64(m[v] as u64));
                for w in 0..4 {
                    let e = if w == v { m[w] - 1 } else { m[w] };
                    for _ in 0..e {
                        t = f.mul(t, x[w]);
                    }
                }
                g[v] = f.add(g[v], t);
            }
        }
        g
    }

    /// Directional derivative sum y_i dF/dx_i evaluated at x.
    pub fn polar_at(&self, y: &[Fe; 4], x: &[Fe; 4]) -> Fe {
        let f = &self.field;
        let g = self.grad(x);
        (0..4).fold(f.zero(), |s, i| f.add(s, f.mul(y[i], g[i])))
    }

    /// The quadratic form P_y(F) = sum y_i dF/dx_i, coefficients in QUAD_MONOMIALS order.
    pub fn polar(&self, y: &[Fe; 4]) -> [Fe; 10] {
        let f = &self.field;
        let mut q = [f.zero(); 10];
        for (i, m) in MONOMIALS.iter().enumerate() {
            if self.c[i].is_zero() {
                continue;
            }
            for v in 0..4 {
                if m[v] == 0 || y[v].is_zero() {
                    continue;
                }
                let mut e = *m;
                e[v] -= 1;
                let qi = quad_index(e).unwrap();
                let t = f.mul(f.mul(self.c[i], f.from_u64(m[v] as u64)), y[v]);
                q[qi] = f.add(q[qi], t);
            }
        }
        q
    }

    /// Second partial derivatives as linear forms: h[i][j] = coefficients of d2F/dxi dxj.
    pub fn second_partials(&self) -> [[[Fe; 4]; 4]; 4] {
        let f = &self.field;
        let mut h = [[[f.zero(); 4]; 4]; 4];
        for (n, m) in MONOMIALS.iter().enumerate() {
            if self.c[n].is_zero() {
                continue;
            }
            for i in 0..4 {
                for j in 0..4 {
                    let mut e = *m;
                    if e[i] == 0 {
                        continue;
                    }
                    let a = e[i] as u64;
                    e[i] -= 1;
                    if e[j] == 0 {
                        continue;
                    }
                    let b = e[j] as u64;
                    e[j] -= 1;
                    let v = e.iter().position(|&x| x == 1).unwrap();
                    let t = f.mul(self.c[n], f.from_u64(a * b));
                    h[i][j][v] = f.add(h[i][j][v], t);
                }
            }
        }
        h
    }

    /// The Hessian matrix evaluated at y.
    pub fn hessian_matrix_at(&self, y: &[Fe; 4]) -> Mat {
        let f = &self.field;
        let h = self.second_partials();
        (0..4)
            .map(|i| (0..4).map(|j| (0..4).fold(f.zero(), |s, v| f.add(s, f.mul(h[i][j][v], y[v])))).collect())
            .collect()
    }

    /// det of second partials, a quartic form (possibly zero).
    pub fn hessian(&self) -> MPoly {
        let f = &self.field;
        let h = self.second_partials();
        let m: Vec<Vec<MPoly>> = (0..4).map(|i| (0..4).map(|j| MPoly::linear(&h[i][j])).collect()).collect();
        det_mpoly(f, &m)
    }

    /// F(A x) for a 4x4 matrix A.
    pub fn transform(&self, a: &[[Fe; 4]; 4]) -> CubicForm {
        let f = &self.field;
        let t = tables();
        // quadratic products of the rows of A
        let mut quad = [[f.zero(); 10]; 10];
        for (qi, m) in QUAD_MONOMIALS.iter().enumerate() {
            let mut vars = vec![];
            for v in 0..4 {
                for _ in 0..m[v] {
                    vars.push(v);
                }
            }
            let (r0, r1) = (&a[vars[0]], &a[vars[1]]);
            for i in 0..4 {
                if r0[i].is_zero() {
                    continue;
                }
                for j in 0..4 {
                    let k = t.vv[i][j];
                    quad[qi][k] = f.add(quad[qi][k], f.mul(r0[i], r1[j]));
                }
            }
        }
        let mut out = [f.zero(); 20];
        for (n, m) in MONOMIALS.iter().enumerate() {
            if self.c[n].is_zero() {
                continue;
            }
            // split m = (quad monomial) * x_v with v the last variable present
            let v = (0..4).rev().find(|&v| m[v] > 0).unwrap();
            let mut e = *m;
            e[v] -= 1;
            let qi = quad_index(e).unwrap();
            let row = &a[v];
            for (k, &qc) in quad[qi].iter().enumerate() {
                if qc.is_zero() {
                    continue;
                }
                let qc = f.mul(qc, self.c[n]);
                for (w, &rw) in row.iter().enumerate() {
                    if !rw.is_zero() {
                        let idx = t.qv[k][w];
                        out[idx] = f.add(out[idx], f.mul(qc, rw));
                    }
                }
            }
        }
        CubicForm::new(f, out)
    }

    /// Coefficients scaled so the first nonzero one is 1.
    pub fn normalized(&self) -> [Fe; 20] {
        let f = &self.field;
        match self.c.iter().find(|x| !x.is_zero()) {
            None => self.c,
            Some(&lead) => {
                let i = f.inv(lead);
                self.c.map(|x| f.mul(x, i))
            }
        }
    }
    pub fn proportional(&self, o: &CubicForm) -> bool {
        self.normalized() == o.normalized()
    }
    pub fn map(&self, e: &Embedding) -> CubicForm {
        CubicForm::new(&e.to, self.c.map(|x| e.apply(x)))
    }
    pub fn scale(&self, a: Fe) -> CubicForm {
        let f = &self.field;
        CubicForm::new(f, self.c.map(|x| f.mul(x, a)))
    }
    pub fn add(&self, o: &CubicForm) -> CubicForm {
        let f = &self.field;
        CubicForm::new(f, std::array::from_fn(|i| f.add(self.c[i], o.c[i])))
    }

    pub fn partials_mpoly(&self) -> Vec<MPoly> {
        let p = self.to_mpoly();
        (0..4).map(|i| p.deriv(&self.field, i)).collect()
    }

    pub fn display(&self) -> String {
        let f = &self.field;
        let names = ["x0", "x1", "x2", "x3"];
        let mut parts = vec![];
        for (i, m) in MONOMIALS.iter().enumerate() {
            if self.c[i].is_zero() {
                continue;
            }
            let mono: Vec<String> = (0..4)
                .filter(|&v| m[v] > 0)
                .map(|v| if m[v] == 1 { names[v].to_string() } else { format!("{}^{}", names[v], m[v]) })
                .collect();
            let c = f.show(&self.c[i]);
            let c = if c.contains('+') { format!("({c})") } else { c };
            parts.push(if self.c[i] == f.one() { mono.join("*") } else { format!("{c}*{}", mono.join("*")) });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn det_mpoly(f: &Field, m: &[Vec<MPoly>]) -> MPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut r = MPoly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MPoly>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
        let t = m[0][j].mul(f, &det_mpoly(f, &minor));
        r = if j % 2 == 0 { r.add(f, &t) } else { r.sub(f, &t) };
    }
    r
}

/// Result of the smoothness test.
#[derive(Clone, Debug)]
pub struct Smoothness {
    pub smooth: bool,
    /// a singular point, with the field it is defined over
    pub witness: Option<(Field, [Fe; 4])>,
}

/// Exact smoothness test over the algebraic closure: X is smooth iff F and its
/// partials have no common projective zero.
pub fn is_smooth(form: &CubicForm, max_ext: usize) -> Result<Smoothness, SurfaceError> {
    if form.is_zero() {
        return Err(SurfaceError::ZeroForm);
    }
    let mut sys = vec![form.to_mpoly()];
    sys.extend(form.partials_mpoly());
    let sols = groebner::projective_zeros(&form.field, &sys, max_ext)?;
    let witness = sols.points.first().map(|p| (sols.field.clone(), *p));
    Ok(Smoothness { smooth: witness.is_none(), witness })
}

/// Point of the critical scheme with its local multiplicity.
#[derive(Clone, Debug)]
pub struct CriticalScheme {
    pub field: Field,
    pub points: Vec<([Fe; 4], usize)>,
    pub total_degree: usize,
}

impl CriticalScheme {
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m: Vec<usize> = self.points.iter().map(|p| p.1).collect();
        m.sort_by(|a, b| b.cmp(a));
        m
    }
}

/// Zero scheme of the four partials (characteristic 3).
pub fn critical_locus(form: &CubicForm, max_ext: usize) -> Result<CriticalScheme, SurfaceError> {
    if form.field.p() != 3 {
        return Err(SurfaceError::NotChar3);
    }
    let parts = form.partials_mpoly();
    let sols = groebner::projective_zeros(&form.field, &parts, max_ext)?;
    let l = sols.field.clone();
    let emb = Embedding::new(&form.field, &l).unwrap();
    let fl = form.map(&emb);
    let parts_l: Vec<MPoly> = parts.iter().map(|g| g.map(&emb)).collect();
    let mut points = vec![];
    for p in &sols.points {
        if fl.eval(p).is_zero() {
            return Err(SurfaceError::CriticalOnSurface);
        }
        points.push((*p, local_multiplicity(&l, &parts_l, p, 6)));
    }
    let total_degree = points.iter().map(|x| x.1).sum();
    Ok(CriticalScheme { field: l, points, total_degree })
}

/// dim k[y]/(I + m^cap) at the point p, computed in the affine chart of its
/// first nonzero coordinate.
pub fn local_multiplicity(f: &Field, forms: &[MPoly], p: &[Fe; 4], cap: usize) -> usize {
    let c = p.iter().position(|x| !x.is_zero()).unwrap();
    let others: Vec<usize> = (0..4).filter(|&j| j != c).collect();
    // x_c = 1, x_j = y + p_j
    let subs: Vec<MPoly> = (0..4)
        .map(|j| {
            if j == c {
                MPoly::constant(f.one())
            } else {
                let k = others.iter().position(|&o| o == j).unwrap();
                MPoly::var(f, k).add(f, &MPoly::constant(p[j]))
            }
        })
        .collect();
    let gens: Vec<MPoly> = forms.iter().map(|g| g.substitute(f, &subs)).collect();
    // monomials of degree < cap in 3 variables
    let mut monos: Vec<Exp> = vec![];
    for a in 0..cap as u8 {
        for b in 0..cap as u8 - a {
            for d in 0..cap as u8 - a - b {
                monos.push([a, b, d, 0, 0]);
            }
        }
    }
    let idx = |e: &Exp| monos.iter().position(|m| m == e);
    let mut rows: Mat = vec![];
    for g in &gens {
        for m in &monos {
            let mut row = vec![f.zero(); monos.len()];
            for (e, &coef) in &g.terms {
                let s: Exp = std::array::from_fn(|i| e[i] + m[i]);
                if let Some(i) = idx(&s) {
                    row[i] = f.add(row[i], coef);
                }
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    monos.len() - linalg::rank(f, &rows)
}

/// Where the canonical point of a characteristic 2 cubic sits relative to X.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum CanonicalCase {
    /// no canonical point (Fermat)
    A,
    /// canonical point off X
    B,
    /// canonical point on X, plane not tritangent
    C,
    /// canonical plane tritangent, point Eckardt
    D,
}

impl CanonicalCase {
    pub fn tag(&self) -> &'static str {
        match self {
            CanonicalCase::A => "a",
            CanonicalCase::B => "b",
            CanonicalCase::C => "c",
            CanonicalCase::D => "d",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalData {
    pub point: Option<[Fe; 4]>,
    /// L with P_v(F) = L^2
    pub plane: Option<[Fe; 4]>,
    pub case: CanonicalCase,
}

/// The characteristic 2 canonical point v = (a123, a023, a013, a012), its plane and case.
pub fn canonical_point(form: &CubicForm) -> Result<CanonicalData, SurfaceError> {
    let f = &form.field;
    if !f.is_char2() {
        return Err(SurfaceError::NotChar2);
    }
    let v = [
        form.c[cubic_index(1, 2, 3)],
        form.c[cubic_index(0, 2, 3)],
        form.c[cubic_index(0, 1, 3)],
        form.c[cubic_index(0, 1, 2)],
    ];
    if v.iter().all(|x| x.is_zero()) {
        return Ok(CanonicalData { point: None, plane: None, case: CanonicalCase::A });
    }
    let vn = crate::projgeom::ProjPoint::new(f, v).unwrap().c;
    debug_assert!(hessian_kills(form, &vn, 20));
    let q = form.polar(&vn);
    // no cross terms allowed
    for (i, m) in QUAD_MONOMIALS.iter().enumerate() {
        if m.iter().all(|&e| e < 2) && !q[i].is_zero() {
            return Err(SurfaceError::PolarNotSquare);
        }
    }
    let plane: [Fe; 4] = std::array::from_fn(|i| {
        let mut e = [0u8; 4];
        e[i] = 2;
        f.sqrt_char2(q[quad_index(e).unwrap()])
    });
    let case = if !form.eval(&vn).is_zero() {
        CanonicalCase::B
    } else {
        let g = form.grad(&vn);
        let proportional = crate::projgeom::ProjPoint::new(f, g) == crate::projgeom::ProjPoint::new(f, plane);
        if proportional {
            CanonicalCase::D
        } else {
            CanonicalCase::C
        }
    };
    Ok(CanonicalData { point: Some(vn), plane: Some(plane), case })
}

/// Check H(F)(y) v = 0 at `trials` random y.
pub fn hessian_kills(form: &CubicForm, v: &[Fe; 4], trials: usize) -> bool {
    let f = &form.field;
    let mut rng = ChaCha8Rng::seed_from_u64(0x4e55);
    (0..trials).all(|_| {
        let y: [Fe; 4] = std::array::from_fn(|_| f.random(&mut rng));
        linalg::mat_vec(f, &form.hessian_matrix_at(&y), v).iter().all(|x| x.is_zero())
    })
}

/// The 16 x 4 system H_k v = 0 (k = 0..3) whose solutions are the vectors killed by H(F)(y) for all y.
pub fn hessian_kernel_system(form: &CubicForm) -> Mat {
    let h = form.second_partials();
    let mut rows = vec![];
    for k in 0..4 {
        for i in 0..4 {
            rows.push((0..4).map(|j| h[i][j][k]).collect());
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fermat(f: &Field) -> CubicForm {
        CubicForm::from_terms(f, &[(1, [3, 0, 0, 0]), (1, [0, 3, 0, 0]), (1, [0, 0, 3, 0]), (1, [0, 0, 0, 3])])
    }

    #[test]
    fn euler_identity() {
        for p in [2, 3, 5, 7] {
            let f = Field::prime(p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p);
            let form = CubicForm::new(&f, std::array::from_fn(|_| f.random(&mut rng)));
            let x: [Fe; 4] = std::array::from_fn(|_| f.random(&mut rng));
            let g = form.grad(&x);
            let lhs = (0..4).fold(f.zero(), |s, i| f.add(s, f.mul(x[i], g[i])));
            assert_eq!(lhs, f.mul(f.from_u64(3), form.eval(&x)));
        }
    }

    #[test]
    fn transform_matches_evaluation() {
        let f = Field::gf(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let form = CubicForm::new(&f, std::array::from_fn(|_| f.random(&mut rng)));
        let a: [[Fe; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| f.random(&mut rng)));
        let g = form.transform(&a);
        for _ in 0..10 {
            let x: [Fe; 4] = std::array::from_fn(|_| f.random(&mut rng));
            let ax: [Fe; 4] = std::array::from_fn(|i| (0..4).fold(f.zero(), |s, j| f.add(s, f.mul(a[i][j], x[j]))));
            assert_eq!(g.eval(&x), form.eval(&ax));
        }
    }

    #[test]
    fn polar_of_fermat() {
        let f = Field::prime(7).unwrap();
        let q = fermat(&f).polar(&[f.one(), f.zero(), f.zero(), f.zero()]);
        let mut want = [f.zero(); 10];
        want[0] = f.from_u64(3);
        assert_eq!(q, want);
    }

    #[test]
    fn hessian_of_fermat_and_char2() {
        let f = Field::prime(7).unwrap();
        let h = fermat(&f).hessian();
        assert_eq!(h.terms.len(), 1);
        assert_eq!(h.coeff(&[1, 1, 1, 1, 0]), f.from_u64(6u64.pow(4) % 7));
        let f2 = Field::gf(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..5 {
            let form = CubicForm::new(&f2, std::array::from_fn(|_| f2.random(&mut rng)));
            assert!(form.hessian().is_zero());
        }
    }

    #[test]
    fn hessian_covariance() {
        // H(F o A) = det(A)^2 H(F) o A
        let f = Field::prime(11).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let form = CubicForm::new(&f, std::array::from_fn(|_| f.random(&mut rng)));
        let a: [[Fe; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| f.random(&mut rng)));
        let d = linalg::det(&f, &a.iter().map(|r| r.to_vec()).collect());
        let lhs = form.transform(&a).hessian();
        let h = form.hessian();
        for _ in 0..5 {
            let x: [Fe; 5] = std::array::from_fn(|i| if i < 4 { f.random(&mut rng) } else { f.zero() });
            let ax: Vec<Fe> = (0..4).map(|i| (0..4).fold(f.zero(), |s, j| f.add(s, f.mul(a[i][j], x[j])))).chain([f.zero()]).collect();
            assert_eq!(lhs.eval(&f, &x), f.mul(f.mul(d, d), h.eval(&f, &ax)));
        }
    }

    #[test]
    fn smoothness() {
        let f7 = Field::prime(7).unwrap();
        assert!(is_smooth(&fermat(&f7), 12).unwrap().smooth);
        let f3 = Field::prime(3).unwrap();
        let s = is_smooth(&fermat(&f3), 12).unwrap();
        assert!(!s.smooth);
        // cone over a plane cubic is singular at the vertex
        let cone = CubicForm::from_terms(&f7, &[(1, [3, 0, 0, 0]), (1, [0, 3, 0, 0]), (1, [0, 0, 3, 0])]);
        let s = is_smooth(&cone, 12).unwrap();
        assert!(!s.smooth);
    }

    #[test]
    fn canonical_point_cases() {
        let f4 = Field::gf(2, 2).unwrap();
        assert_eq!(canonical_point(&fermat(&f4)).unwrap().case, CanonicalCase::A);
        let emch = fermat(&f4).add(&CubicForm::from_terms(
            &f4,
            &[(1, [1, 1, 1, 0]), (1, [1, 1, 0, 1]), (1, [1, 0, 1, 1]), (1, [0, 1, 1, 1])],
        ));
        let cd = canonical_point(&emch).unwrap();
        assert_eq!(cd.point, Some([f4.one(); 4]));
        let ker = linalg::kernel(&f4, &hessian_kernel_system(&emch), 4);
        assert_eq!(ker.len(), 1);
    }
}

