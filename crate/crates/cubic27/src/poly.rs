//! Dense univariate polynomials over a [`Field`], with factorisation and root finding.

use crate::gf::{Embedding, Fe, Field};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Coefficients low degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct UniPoly {
    pub c: Vec<Fe>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { c: vec![] }
    }
    pub fn from_vec(mut c: Vec<Fe>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly { c }
    }
    pub fn constant(a: Fe) -> Self {
        Self::from_vec(vec![a])
    }
    pub fn x(f: &Field) -> Self {
        UniPoly { c: vec![f.zero(), f.one()] }
    }
    /// x - a
    pub fn linear(f: &Field, a: Fe) -> Self {
        UniPoly { c: vec![f.neg(a), f.one()] }
    }
    pub fn monomial(f: &Field, a: Fe, n: usize) -> Self {
        let mut c = vec![f.zero(); n + 1];
        c[n] = a;
        Self::from_vec(c)
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    /// Degree with deg 0 = -1 convention.
    pub fn degi(&self) -> isize {
        self.c.len() as isize - 1
    }
    pub fn lead(&self) -> Fe {
        *self.c.last().unwrap_or(&Fe::ZERO)
    }
    pub fn coeff(&self, i: usize) -> Fe {
        self.c.get(i).copied().unwrap_or(Fe::ZERO)
    }
    pub fn is_one(&self, f: &Field) -> bool {
        self.c.len() == 1 && self.c[0] == f.one()
    }

    pub fn add(&self, f: &Field, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::from_vec((0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }
    pub fn sub(&self, f: &Field, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::from_vec((0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }
    pub fn neg(&self, f: &Field) -> Self {
        UniPoly { c: self.c.iter().map(|&a| f.neg(a)).collect() }
    }
    pub fn scale(&self, f: &Field, a: Fe) -> Self {
        Self::from_vec(self.c.iter().map(|&x| f.mul(x, a)).collect())
    }
    pub fn mul(&self, f: &Field, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut r = vec![f.zero(); self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                r[i + j] = f.add(r[i + j], f.mul(a, b));
            }
        }
        Self::from_vec(r)
    }
    pub fn pow(&self, f: &Field, mut e: u64) -> Self {
        let mut r = Self::constant(f.one());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(f, &b);
            }
            b = b.mul(f, &b);
            e >>= 1;
        }
        r
    }

    pub fn divrem(&self, f: &Field, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let li = f.inv(d.lead());
        let mut r = self.c.clone();
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], li);
            if c.is_zero() {
                continue;
            }
            q[i - dd] = c;
            for (j, &b) in d.c.iter().enumerate() {
                r[i - dd + j] = f.sub(r[i - dd + j], f.mul(c, b));
            }
        }
        r.truncate(dd);
        (Self::from_vec(q), Self::from_vec(r))
    }
    pub fn rem(&self, f: &Field, d: &Self) -> Self {
        self.divrem(f, d).1
    }
    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, f: &Field, d: &Self) -> Self {
        let (q, r) = self.divrem(f, d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }
    pub fn monic(&self, f: &Field) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(f, f.inv(self.lead()))
    }
    pub fn eval(&self, f: &Field, x: Fe) -> Fe {
        let mut r = f.zero();
        for &a in self.c.iter().rev() {
            r = f.add(f.mul(r, x), a);
        }
        r
    }
    pub fn derivative(&self, f: &Field) -> Self {
        Self::from_vec(
            self.c.iter().enumerate().skip(1).map(|(i, &a)| f.mul(a, f.from_u64(i as u64))).collect(),
        )
    }
    pub fn map(&self, e: &Embedding) -> Self {
        Self::from_vec(self.c.iter().map(|&a| e.apply(a)).collect())
    }
    /// Pull coefficients back along an embedding, if they all lie in the subfield.
    pub fn preimage(&self, e: &Embedding) -> Option<Self> {
        Some(Self::from_vec(self.c.iter().map(|&a| e.preimage(a)).collect::<Option<Vec<_>>>()?))
    }

    pub fn mulmod(&self, f: &Field, o: &Self, m: &Self) -> Self {
        self.mul(f, o).rem(f, m)
    }
    pub fn powmod(&self, f: &Field, mut e: u128, m: &Self) -> Self {
        let mut r = Self::constant(f.one()).rem(f, m);
        let mut b = self.rem(f, m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mulmod(f, &b, m);
            }
            b = b.mulmod(f, &b, m);
            e >>= 1;
        }
        r
    }
    /// self^(p^n) mod m, as n successive p-th powers.
    pub fn pow_p_iter(&self, f: &Field, n: usize, m: &Self) -> Self {
        let mut r = self.rem(f, m);
        for _ in 0..n {
            r = r.powmod(f, f.p() as u128, m);
        }
        r
    }
    /// self^q mod m for q = |f|.
    pub fn pow_q(&self, f: &Field, m: &Self) -> Self {
        match f.order() {
            Some(q) => self.powmod(f, q, m),
            None => self.pow_p_iter(f, f.k(), m),
        }
    }
}

pub fn gcd(f: &Field, a: &UniPoly, b: &UniPoly) -> UniPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.rem(f, &b);
        a = b;
        b = r;
    }
    a.monic(f)
}

/// Extended gcd: returns (g, s, t) with s a + t b = g monic.
pub fn xgcd(f: &Field, a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (UniPoly::constant(f.one()), UniPoly::zero());
    let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::constant(f.one()));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(f, &r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = s0.sub(f, &q.mul(f, &s1));
        s0 = std::mem::replace(&mut s1, s);
        let t = t0.sub(f, &q.mul(f, &t1));
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.is_zero() {
        return (r0, s0, t0);
    }
    let li = f.inv(r0.lead());
    (r0.scale(f, li), s0.scale(f, li), t0.scale(f, li))
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &Field, m: &UniPoly) -> bool {
    let Some(n) = m.deg() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let m = m.monic(f);
    let x = UniPoly::x(f);
    let mut primes = vec![];
    let mut t = n;
    let mut d = 2;
    while t > 1 {
        if t % d == 0 {
            primes.push(d);
            while t % d == 0 {
                t /= d;
            }
        }
        d += 1;
    }
    for r in primes {
        let h = x.pow_q_n(f, n / r, &m).sub(f, &x);
        if !gcd(f, &h, &m).is_one(f) {
            return false;
        }
    }
    x.pow_q_n(f, n, &m).sub(f, &x).rem(f, &m).is_zero()
}

impl UniPoly {
    /// self^(q^n) mod m
    pub fn pow_q_n(&self, f: &Field, n: usize, m: &Self) -> Self {
        let mut r = self.rem(f, m);
        for _ in 0..n {
            r = r.pow_q(f, m);
        }
        r
    }
}

/// Square-free factorisation: pairs (g, e) with f = lc * prod g^e, g squarefree and coprime.
pub fn squarefree(f: &Field, a: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = vec![];
    sqf_rec(f, &a.monic(f), 1, &mut out);
    // merge equal exponents
    out.sort_by_key(|(_, e)| *e);
    let mut merged: Vec<(UniPoly, usize)> = vec![];
    for (g, e) in out {
        if let Some(last) = merged.last_mut() {
            if last.1 == e {
                last.0 = last.0.mul(f, &g);
                continue;
            }
        }
        merged.push((g, e));
    }
    merged
}

fn sqf_rec(f: &Field, a: &UniPoly, mult: usize, out: &mut Vec<(UniPoly, usize)>) {
    if a.deg().unwrap_or(0) == 0 {
        return;
    }
    let p = f.p() as usize;
    let d = a.derivative(f);
    if d.is_zero() {
        // a = b(x^p)
        let b = UniPoly::from_vec(a.c.iter().step_by(p).map(|&c| f.frob_inv(c)).collect());
        sqf_rec(f, &b, mult * p, out);
        return;
    }
    let mut c = gcd(f, a, &d);
    let mut w = a.div_exact(f, &c);
    let mut i = 1;
    while w.deg().unwrap_or(0) > 0 {
        let y = gcd(f, &w, &c);
        let z = w.div_exact(f, &y);
        if z.deg().unwrap_or(0) > 0 {
            out.push((z, i * mult));
        }
        i += 1;
        w = y;
        c = c.div_exact(f, &w);
    }
    if c.deg().unwrap_or(0) > 0 {
        // remaining part is a p-th power
        let b = UniPoly::from_vec(c.c.iter().step_by(p).map(|&x| f.frob_inv(x)).collect());
        sqf_rec(f, &b, mult * p, out);
    }
}

/// Distinct degree factorisation of a monic squarefree polynomial.
pub fn distinct_degree(f: &Field, a: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = vec![];
    let mut a = a.monic(f);
    let x = UniPoly::x(f);
    let mut h = x.clone();
    let mut d = 0;
    while let Some(n) = a.deg() {
        if n < 2 * (d + 1) {
            if n > 0 {
                out.push((a.clone(), n));
            }
            break;
        }
        d += 1;
        h = h.pow_q(f, &a);
        let g = gcd(f, &h.sub(f, &x), &a);
        if g.deg().unwrap() > 0 {
            out.push((g.clone(), d));
            a = a.div_exact(f, &g);
            h = h.rem(f, &a);
        }
    }
    out
}

/// Split a monic squarefree product of irreducibles of degree d into its factors.
pub fn equal_degree(f: &Field, a: &UniPoly, d: usize) -> Vec<UniPoly> {
    let n = a.deg().unwrap_or(0);
    if n == 0 {
        return vec![];
    }
    if n == d {
        return vec![a.monic(f)];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xedf0 + n as u64 * 31 + d as u64);
    let mut stack = vec![a.monic(f)];
    let mut out = vec![];
    while let Some(g) = stack.pop() {
        let gn = g.deg().unwrap();
        if gn == d {
            out.push(g);
            continue;
        }
        loop {
            let r = UniPoly::from_vec((0..gn).map(|_| f.random(&mut rng)).collect());
            if r.deg().unwrap_or(0) == 0 {
                continue;
            }
            let s = split_candidate(f, &r, &g, d);
            let h = gcd(f, &s, &g);
            let hd = h.deg().unwrap_or(0);
            if hd > 0 && hd < gn {
                let other = g.div_exact(f, &h);
                stack.push(h);
                stack.push(other);
                break;
            }
        }
    }
    out.sort();
    out
}

/// Odd p: r^((Q-1)/2) - 1 with Q = q^d. Char 2: the trace r + r^2 + .. + r^(Q/2).
fn split_candidate(f: &Field, r: &UniPoly, m: &UniPoly, d: usize) -> UniPoly {
    let n = f.k() * d; // Q = p^n
    if f.is_char2() {
        let mut t = r.rem(f, m);
        let mut acc = t.clone();
        for _ in 1..n {
            t = t.mulmod(f, &t, m);
            acc = acc.add(f, &t);
        }
        acc
    } else {
        // (Q-1)/2 = (p-1)/2 * (1 + p + .. + p^(n-1))
        let c = r.powmod(f, (f.p() as u128 - 1) / 2, m);
        let mut t = c.clone();
        let mut acc = c;
        for _ in 1..n {
            t = t.powmod(f, f.p() as u128, m);
            acc = acc.mulmod(f, &t, m);
        }
        acc.sub(f, &UniPoly::constant(f.one()))
    }
}

/// Complete factorisation into monic irreducibles with multiplicities, sorted.
pub fn factor(f: &Field, a: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = vec![];
    for (s, e) in squarefree(f, a) {
        for (g, d) in distinct_degree(f, &s) {
            for h in equal_degree(f, &g, d) {
                out.push((h, e));
            }
        }
    }
    out.sort();
    out
}

/// Distinct roots of `a` in its own coefficient field, sorted.
pub fn roots(f: &Field, a: &UniPoly) -> Vec<Fe> {
    if a.deg().unwrap_or(0) == 0 {
        return vec![];
    }
    let a = a.monic(f);
    let x = UniPoly::x(f);
    let g = gcd(f, &x.pow_q(f, &a).sub(f, &x), &a);
    let mut r: Vec<Fe> = equal_degree(f, &g, 1).iter().map(|l| f.neg(l.c[0])).collect();
    r.sort();
    r
}

/// Roots with multiplicity.
pub fn roots_with_multiplicity(f: &Field, a: &UniPoly) -> Vec<(Fe, usize)> {
    roots(f, a)
        .into_iter()
        .map(|r| {
            let lin = UniPoly::linear(f, r);
            let mut m = 0;
            let mut cur = a.clone();
            loop {
                let (q, rem) = cur.divrem(f, &lin);
                if !rem.is_zero() {
                    break;
                }
                m += 1;
                cur = q;
            }
            (r, m)
        })
        .collect()
}

/// Roots of a in K[x] lying in L, where e: K -> L.
pub fn roots_over(e: &Embedding, a: &UniPoly) -> Vec<Fe> {
    roots_from_factors(e, &factor(&e.from, a))
}

/// Roots in L from a precomputed factorisation over K.
pub fn roots_from_factors(e: &Embedding, fac: &[(UniPoly, usize)]) -> Vec<Fe> {
    let deg = e.degree();
    let l = &e.to;
    let mut out = vec![];
    for (g, _) in fac {
        let d = g.deg().unwrap();
        if deg % d != 0 {
            continue;
        }
        let gl = g.map(e);
        for lin in equal_degree(l, &gl, 1) {
            out.push(l.neg(lin.c[0]));
        }
    }
    out.sort();
    out
}

/// Resultant of two univariate polynomials by the Euclidean algorithm.
pub fn resultant(f: &Field, a: &UniPoly, b: &UniPoly) -> Fe {
    if a.is_zero() || b.is_zero() {
        return f.zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut res = f.one();
    loop {
        let (da, db) = (a.deg().unwrap(), b.deg().unwrap());
        if db == 0 {
            return f.mul(res, f.pow(b.c[0], da as u128));
        }
        let r = a.rem(f, &b);
        if r.is_zero() {
            return f.zero();
        }
        let dr = r.deg().unwrap();
        // res(a,b) = (-1)^(da db) lc(b)^(da - dr) res(b, r) ... swapped to res(b, r)
        let mut s = f.pow(b.lead(), (da - dr) as u128);
        if (da * db) % 2 == 1 {
            s = f.neg(s);
        }
        res = f.mul(res, s);
        a = b;
        b = r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_ints(f: &Field, c: &[i64]) -> UniPoly {
        UniPoly::from_vec(c.iter().map(|&x| f.from_i64(x)).collect())
    }

    #[test]
    fn factor_reconstructs() {
        for (p, k) in [(2, 1), (2, 3), (3, 1), (3, 2), (7, 1), (5, 2)] {
            let f = Field::gf(p, k).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p * 10 + k as u64);
            for deg in [3usize, 6, 11, 17] {
                let mut a = UniPoly::from_vec((0..=deg).map(|_| f.random(&mut rng)).collect());
                // force repeated factors
                let b = UniPoly::from_vec((0..3).map(|_| f.random(&mut rng)).collect());
                if b.deg().unwrap_or(0) > 0 {
                    a = a.mul(&f, &b.pow(&f, p));
                }
                if a.deg().unwrap_or(0) == 0 {
                    continue;
                }
                let fac = factor(&f, &a);
                let mut prod = UniPoly::constant(f.one());
                for (g, e) in &fac {
                    assert!(is_irreducible(&f, g));
                    prod = prod.mul(&f, &g.pow(&f, *e as u64));
                }
                assert_eq!(prod, a.monic(&f));
            }
        }
    }

    #[test]
    fn roots_match_exhaustive_search() {
        let f = Field::gf(3, 2).unwrap();
        let a = from_ints(&f, &[2, 0, 1, 1, 0, 2, 1]);
        let mut brute: Vec<Fe> = f.elements().into_iter().filter(|&x| a.eval(&f, x).is_zero()).collect();
        brute.sort();
        assert_eq!(roots(&f, &a), brute);
    }

    #[test]
    fn roots_over_extension() {
        let k = Field::gf(2, 2).unwrap();
        let l = k.extend(3).unwrap();
        let e = Embedding::new(&k, &l).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = UniPoly::from_vec((0..=9).map(|_| k.random(&mut rng)).collect());
        let al = a.map(&e);
        let mut brute: Vec<Fe> = l.elements().into_iter().filter(|&x| al.eval(&l, x).is_zero()).collect();
        brute.sort();
        assert_eq!(roots_over(&e, &a), brute);
    }

    #[test]
    fn resultant_vanishes_iff_common_root() {
        let f = Field::prime(7).unwrap();
        let a = from_ints(&f, &[-1, 0, 1]); // (x-1)(x+1)
        let b = from_ints(&f, &[-2, 1]);
        let c = from_ints(&f, &[-1, 1]);
        assert!(!resultant(&f, &a, &b).is_zero());
        assert!(resultant(&f, &a, &c).is_zero());
        // Res(x^2-1, x-2) = (1-2)(-1-2) = 3 up to the sign convention
        let r = resultant(&f, &a, &b);
        assert!(r == f.from_i64(3) || r == f.from_i64(-3));
    }
}
