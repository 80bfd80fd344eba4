//! Buchberger's algorithm (grevlex) and exact solving of zero-dimensional systems.

use crate::gf::{Embedding, Fe, Field};
use crate::linalg;
use crate::mpoly::{MPoly, MAX_VARS};
use crate::poly::{self, UniPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

pub type Mono = [u8; MAX_VARS];

fn deg(m: &Mono) -> u32 {
    m.iter().map(|&x| x as u32).sum()
}

/// Graded reverse lexicographic order.
pub fn grevlex(a: &Mono, b: &Mono) -> Ordering {
    match deg(a).cmp(&deg(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..MAX_VARS).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}
fn lcm(a: &Mono, b: &Mono) -> Mono {
    std::array::from_fn(|i| a[i].max(b[i]))
}
fn msub(a: &Mono, b: &Mono) -> Mono {
    std::array::from_fn(|i| a[i] - b[i])
}
fn madd(a: &Mono, b: &Mono) -> Mono {
    std::array::from_fn(|i| a[i] + b[i])
}

/// Terms sorted decreasingly in grevlex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GPoly {
    pub t: Vec<(Mono, Fe)>,
}

impl GPoly {
    pub fn from_mpoly(p: &MPoly) -> Self {
        let mut t: Vec<(Mono, Fe)> = p.terms.iter().map(|(e, &c)| (*e, c)).collect();
        t.sort_by(|a, b| grevlex(&b.0, &a.0));
        GPoly { t }
    }
    pub fn to_mpoly(&self) -> MPoly {
        MPoly { terms: self.t.iter().copied().collect() }
    }
    pub fn is_zero(&self) -> bool {
        self.t.is_empty()
    }
    pub fn lm(&self) -> &Mono {
        &self.t[0].0
    }
    fn monic(mut self, f: &Field) -> Self {
        if let Some(&(_, c)) = self.t.first() {
            let i = f.inv(c);
            for x in self.t.iter_mut() {
                x.1 = f.mul(x.1, i);
            }
        }
        self
    }
    /// self - c * m * o
    fn sub_mul(&self, f: &Field, c: Fe, m: &Mono, o: &GPoly) -> GPoly {
        let mut out = Vec::with_capacity(self.t.len() + o.t.len());
        let (mut i, mut j) = (0, 0);
        while i < self.t.len() || j < o.t.len() {
            let oj = (j < o.t.len()).then(|| madd(&o.t[j].0, m));
            let ord = match (i < self.t.len(), &oj) {
                (true, Some(om)) => grevlex(&self.t[i].0, om),
                (true, None) => Ordering::Greater,
                (false, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.t[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((oj.unwrap(), f.neg(f.mul(c, o.t[j].1))));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.sub(self.t[i].1, f.mul(c, o.t[j].1));
                    if !v.is_zero() {
                        out.push((self.t[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        GPoly { t: out }
    }
}

/// Full reduction of p modulo a list of monic polynomials.
pub fn normal_form(f: &Field, p: &GPoly, g: &[GPoly]) -> GPoly {
    let mut p = p.clone();
    let mut rem = vec![];
    while !p.is_zero() {
        let (m, c) = p.t[0];
        if let Some(d) = g.iter().find(|d| divides(d.lm(), &m)) {
            p = p.sub_mul(f, c, &msub(&m, d.lm()), d);
        } else {
            rem.push((m, c));
            p.t.remove(0);
        }
    }
    GPoly { t: rem }
}

fn spoly(f: &Field, a: &GPoly, b: &GPoly) -> GPoly {
    let l = lcm(a.lm(), b.lm());
    let x = GPoly { t: vec![] }.sub_mul(f, f.neg(f.one()), &msub(&l, a.lm()), a);
    x.sub_mul(f, f.one(), &msub(&l, b.lm()), b)
}

/// Reduced Gröbner basis, monic, sorted by leading monomial.
pub fn groebner(f: &Field, gens: &[MPoly]) -> Vec<GPoly> {
    let mut g: Vec<GPoly> = vec![];
    for p in gens {
        let gp = GPoly::from_mpoly(p);
        if !gp.is_zero() {
            g.push(gp.monic(f));
        }
    }
    let mut pairs: Vec<(usize, usize)> = vec![];
    for j in 0..g.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while !pairs.is_empty() {
        // normal strategy: smallest lcm first
        let (k, _) = pairs
            .iter()
            .enumerate()
            .min_by(|x, y| grevlex(&lcm(g[x.1 .0].lm(), g[x.1 .1].lm()), &lcm(g[y.1 .0].lm(), g[y.1 .1].lm())))
            .unwrap();
        let (i, j) = pairs.swap_remove(k);
        let (a, b) = (g[i].lm(), g[j].lm());
        // product criterion
        if a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0) {
            continue;
        }
        // chain criterion
        let l = lcm(a, b);
        let chain = (0..g.len()).any(|m| {
            m != i
                && m != j
                && divides(g[m].lm(), &l)
                && !pairs.contains(&(i.min(m), i.max(m)))
                && !pairs.contains(&(j.min(m), j.max(m)))
        });
        if chain {
            continue;
        }
        let s = normal_form(f, &spoly(f, &g[i], &g[j]), &g);
        if s.is_zero() {
            continue;
        }
        let s = s.monic(f);
        if deg(s.lm()) == 0 {
            return vec![s];
        }
        let n = g.len();
        g.push(s);
        for i in 0..n {
            pairs.push((i, n));
        }
    }
    reduce_basis(f, g)
}

fn reduce_basis(f: &Field, g: Vec<GPoly>) -> Vec<GPoly> {
    // drop redundant leading monomials
    let mut keep: Vec<GPoly> = vec![];
    for (i, p) in g.iter().enumerate() {
        let red = g.iter().enumerate().any(|(j, q)| {
            j != i && divides(q.lm(), p.lm()) && (q.lm() != p.lm() || j < i)
        });
        if !red {
            keep.push(p.clone());
        }
    }
    let mut out = vec![];
    for i in 0..keep.len() {
        let others: Vec<GPoly> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        let head = GPoly { t: vec![keep[i].t[0]] };
        let tail = normal_form(f, &GPoly { t: keep[i].t[1..].to_vec() }, &others);
        let mut t = head.t;
        t.extend(tail.t);
        out.push(GPoly { t }.monic(f));
    }
    out.sort_by(|a, b| grevlex(a.lm(), b.lm()));
    out
}

pub fn is_unit_ideal(gb: &[GPoly]) -> bool {
    gb.len() == 1 && deg(gb[0].lm()) == 0
}

/// Standard monomials of a zero-dimensional ideal, or None if positive dimensional.
pub fn standard_monomials(gb: &[GPoly], nvars: usize) -> Option<Vec<Mono>> {
    if is_unit_ideal(gb) {
        return Some(vec![]);
    }
    let mut bound = [0u8; MAX_VARS];
    for v in 0..nvars {
        let pure = gb.iter().filter_map(|p| {
            let m = p.lm();
            (m.iter().enumerate().all(|(i, &e)| i == v || e == 0) && m[v] > 0).then_some(m[v])
        }).min()?;
        bound[v] = pure;
    }
    let mut out = vec![];
    let mut cur = [0u8; MAX_VARS];
    loop {
        if !gb.iter().any(|p| divides(p.lm(), &cur)) {
            out.push(cur);
        }
        // odometer
        let mut i = 0;
        loop {
            if i == nvars {
                out.sort_by(grevlex);
                return Some(out);
            }
            cur[i] += 1;
            if cur[i] < bound[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Matrix of multiplication by x_var on the quotient basis (columns = images).
pub fn mult_matrix(f: &Field, gb: &[GPoly], basis: &[Mono], var: usize) -> linalg::Mat {
    let n = basis.len();
    let mut m = linalg::zeros(f, n, n);
    for (j, b) in basis.iter().enumerate() {
        let mut e = *b;
        e[var] += 1;
        let nf = normal_form(f, &GPoly { t: vec![(e, f.one())] }, gb);
        for (mono, c) in nf.t {
            let i = basis.iter().position(|x| *x == mono).expect("normal form outside basis");
            m[i][j] = c;
        }
    }
    m
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("solutions need an extension of degree {0} > max_ext {1}")]
    ExtensionTooLarge(usize, usize),
    #[error("could not reduce to a zero-dimensional system")]
    NotZeroDim,
}

fn lcm_u(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// Zero-dimensional system after Gröbner analysis over its base field.
pub struct ZeroDim {
    pub nvars: usize,
    pub gb: Vec<GPoly>,
    /// factorisations of the characteristic polynomials of the multiplication maps
    pub factors: Vec<Vec<(UniPoly, usize)>>,
    /// number of standard monomials = number of solutions with multiplicity
    pub degree: usize,
}

impl ZeroDim {
    /// Smallest extension degree containing all coordinates.
    pub fn splitting_degree(&self) -> usize {
        self.factors.iter().flatten().fold(1, |d, (g, _)| lcm_u(d, g.deg().unwrap()))
    }
}

/// Analyse an affine system in `nvars` variables; Ok(None) if positive dimensional.
pub fn analyse(f: &Field, gens: &[MPoly], nvars: usize) -> Option<ZeroDim> {
    let gb = groebner(f, gens);
    let basis = standard_monomials(&gb, nvars)?;
    let factors = if basis.is_empty() {
        vec![]
    } else {
        (0..nvars).map(|v| poly::factor(f, &linalg::charpoly(f, &mult_matrix(f, &gb, &basis, v)))).collect()
    };
    Some(ZeroDim { nvars, gb, factors, degree: basis.len() })
}

/// All solutions in the field `emb.to`, assuming it contains them.
pub fn solutions_in(z: &ZeroDim, gens: &[MPoly], emb: &Embedding) -> Vec<Vec<Fe>> {
    if z.degree == 0 {
        return vec![];
    }
    let l = &emb.to;
    let roots: Vec<Vec<Fe>> = z.factors.iter().map(|fac| poly::roots_from_factors(emb, fac)).collect();
    let gl: Vec<MPoly> = gens.iter().map(|g| g.map(emb)).collect();
    let mut out: Vec<Vec<Fe>> = vec![vec![]];
    for (v, rv) in roots.iter().enumerate() {
        let mut next = vec![];
        for partial in &out {
            for &r in rv {
                let mut p = partial.clone();
                p.push(r);
                // prune with generators that only involve the first v+1 variables
                let ok = gl.iter().all(|g| {
                    if g.terms.keys().any(|e| e[v + 1..].iter().any(|&x| x > 0)) {
                        return true;
                    }
                    let mut x = p.clone();
                    x.resize(MAX_VARS, l.zero());
                    g.eval(l, &x).is_zero()
                });
                if ok {
                    next.push(p);
                }
            }
        }
        out = next;
    }
    out.retain(|p| {
        let mut x = p.clone();
        x.resize(MAX_VARS, l.zero());
        gl.iter().all(|g| g.eval(l, &x).is_zero())
    });
    out.sort();
    out
}

/// Points of P^3 (over the algebraic closure, found in a finite extension) where all
/// homogeneous `forms` vanish. Returns the field and normalised coordinates.
/// Positive-dimensional components are cut by seeded random hyperplanes, so in that
/// case only witness points are returned and `complete` is false.
pub struct ProjSolutions {
    pub field: Field,
    pub points: Vec<[Fe; 4]>,
    pub complete: bool,
}

pub fn projective_zeros(f: &Field, forms: &[MPoly], max_ext: usize) -> Result<ProjSolutions, SolveError> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5017e);
    // chart c: x_j = 0 for j < c, x_c = 1, free variables x_{c+1..3} renamed to y_0..
    let mut systems: Vec<(usize, Vec<MPoly>, ZeroDim)> = vec![];
    let mut complete = true;
    for c in 0..4 {
        let nv = 3 - c;
        let subs: Vec<MPoly> = (0..4)
            .map(|j| match j.cmp(&c) {
                Ordering::Less => MPoly::zero(),
                Ordering::Equal => MPoly::constant(f.one()),
                Ordering::Greater => MPoly::var(f, j - c - 1),
            })
            .collect();
        let mut gens: Vec<MPoly> = forms.iter().map(|g| g.substitute(f, &subs)).filter(|g| !g.is_zero()).collect();
        let mut tries = 0;
        let z = loop {
            if let Some(z) = analyse(f, &gens, nv) {
                break z;
            }
            complete = false;
            tries += 1;
            if tries > 3 * nv + 3 {
                return Err(SolveError::NotZeroDim);
            }
            // random affine hyperplane
            let mut h = MPoly::constant(f.random(&mut rng));
            for v in 0..nv {
                h = h.add(f, &MPoly::var(f, v).scale(f, f.random(&mut rng)));
            }
            gens.push(h);
        };
        systems.push((c, gens, z));
    }
    let d = systems.iter().fold(1, |d, s| lcm_u(d, s.2.splitting_degree()));
    if d > max_ext {
        return Err(SolveError::ExtensionTooLarge(d, max_ext));
    }
    let l = f.extend(d).expect("extension degree within bounds");
    let emb = Embedding::new(f, &l).unwrap();
    let mut points = vec![];
    for (c, gens, z) in &systems {
        for s in solutions_in(z, gens, &emb) {
            let mut p = [l.zero(); 4];
            p[*c] = l.one();
            for (k, &x) in s.iter().enumerate() {
                p[c + 1 + k] = x;
            }
            points.push(p);
        }
    }
    Ok(ProjSolutions { field: l, points, complete })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_ideal_detected() {
        let f = Field::prime(5).unwrap();
        let x = MPoly::var(&f, 0);
        let y = MPoly::var(&f, 1);
        let one = MPoly::constant(f.one());
        // x y - 1, x
        let g = groebner(&f, &[x.mul(&f, &y).sub(&f, &one), x.clone()]);
        assert!(is_unit_ideal(&g));
    }

    #[test]
    fn solve_small_system() {
        let f = Field::prime(7).unwrap();
        let x = MPoly::var(&f, 0);
        let y = MPoly::var(&f, 1);
        // x^2 - 2 = 0 (roots 3, 4), y - x - 1 = 0
        let g1 = x.mul(&f, &x).sub(&f, &MPoly::constant(f.from_u64(2)));
        let g2 = y.sub(&f, &x).sub(&f, &MPoly::constant(f.one()));
        let z = analyse(&f, &[g1.clone(), g2.clone()], 2).unwrap();
        assert_eq!(z.degree, 2);
        let sols = solutions_in(&z, &[g1, g2], &Embedding::identity(&f));
        let want = vec![vec![f.from_u64(3), f.from_u64(4)], vec![f.from_u64(4), f.from_u64(5)]];
        assert_eq!(sols, want);
    }

    #[test]
    fn needs_extension() {
        let f = Field::prime(3).unwrap();
        let x = MPoly::var(&f, 0);
        // x^2 + 1 has roots only in GF(9)
        let g = x.mul(&f, &x).add(&f, &MPoly::constant(f.one()));
        let z = analyse(&f, &[g], 1).unwrap();
        assert_eq!(z.splitting_degree(), 2);
    }
}
