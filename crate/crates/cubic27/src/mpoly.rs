//! Sparse multivariate polynomials in up to five variables.

use crate::gf::{Embedding, Fe, Field};
use std::collections::BTreeMap;

pub const MAX_VARS: usize = 5;
pub type Exp = [u8; MAX_VARS];

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MPoly {
    pub terms: BTreeMap<Exp, Fe>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn constant(a: Fe) -> Self {
        let mut p = Self::zero();
        if !a.is_zero() {
            p.terms.insert([0; MAX_VARS], a);
        }
        p
    }
    pub fn var(f: &Field, i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Self::term(f.one(), e)
    }
    pub fn term(a: Fe, e: Exp) -> Self {
        let mut p = Self::zero();
        if !a.is_zero() {
            p.terms.insert(e, a);
        }
        p
    }
    /// Linear form sum c_i x_i.
    pub fn linear(c: &[Fe]) -> Self {
        let mut p = Self::zero();
        for (i, &a) in c.iter().enumerate() {
            let mut e = [0; MAX_VARS];
            e[i] = 1;
            if !a.is_zero() {
                p.terms.insert(e, a);
            }
        }
        p
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn coeff(&self, e: &Exp) -> Fe {
        self.terms.get(e).copied().unwrap_or(Fe::ZERO)
    }
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max()
    }
    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum::<usize>());
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    fn add_term(&mut self, f: &Field, e: Exp, a: Fe) {
        if a.is_zero() {
            return;
        }
        let v = self.terms.entry(e).or_insert(Fe::ZERO);
        *v = f.add(*v, a);
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, f: &Field, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, &a) in &o.terms {
            r.add_term(f, *e, a);
        }
        r
    }
    pub fn sub(&self, f: &Field, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, &a) in &o.terms {
            r.add_term(f, *e, f.neg(a));
        }
        r
    }
    pub fn scale(&self, f: &Field, a: Fe) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        MPoly { terms: self.terms.iter().map(|(e, &c)| (*e, f.mul(c, a))).collect() }
    }
    pub fn mul(&self, f: &Field, o: &Self) -> Self {
        let mut r = Self::zero();
        for (e1, &a) in &self.terms {
            for (e2, &b) in &o.terms {
                let mut e = [0; MAX_VARS];
                for i in 0..MAX_VARS {
                    e[i] = e1[i] + e2[i];
                }
                r.add_term(f, e, f.mul(a, b));
            }
        }
        r
    }
    pub fn pow(&self, f: &Field, n: usize) -> Self {
        let mut r = Self::constant(f.one());
        for _ in 0..n {
            r = r.mul(f, self);
        }
        r
    }
    pub fn eval(&self, f: &Field, x: &[Fe]) -> Fe {
        let mut s = f.zero();
        for (e, &c) in &self.terms {
            let mut t = c;
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = f.mul(t, f.pow(x[i], k as u128));
                }
            }
            s = f.add(s, t);
        }
        s
    }
    pub fn deriv(&self, f: &Field, i: usize) -> Self {
        let mut r = Self::zero();
        for (e, &c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[i] -= 1;
            r.add_term(f, e2, f.mul(c, f.from_u64(e[i] as u64)));
        }
        r
    }
    /// Substitute x_i -> subs[i].
    pub fn substitute(&self, f: &Field, subs: &[MPoly]) -> Self {
        let mut r = Self::zero();
        for (e, &c) in &self.terms {
            let mut t = Self::constant(c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(f, &subs[i].pow(f, k as usize));
                }
            }
            r = r.add(f, &t);
        }
        r
    }
    pub fn map(&self, e: &Embedding) -> Self {
        MPoly { terms: self.terms.iter().map(|(x, &c)| (*x, e.apply(c))).collect() }
    }
    pub fn preimage(&self, e: &Embedding) -> Option<Self> {
        let mut t = BTreeMap::new();
        for (x, &c) in &self.terms {
            t.insert(*x, e.preimage(c)?);
        }
        Some(MPoly { terms: t })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule() {
        let f = Field::prime(5).unwrap();
        let x = MPoly::var(&f, 0);
        let y = MPoly::var(&f, 1);
        let a = x.mul(&f, &x).add(&f, &y.scale(&f, f.from_u64(3)));
        let b = x.mul(&f, &y).add(&f, &MPoly::constant(f.one()));
        let lhs = a.mul(&f, &b).deriv(&f, 0);
        let rhs = a.deriv(&f, 0).mul(&f, &b).add(&f, &a.mul(&f, &b.deriv(&f, 0)));
        assert_eq!(lhs, rhs);
        let pt = [f.from_u64(2), f.from_u64(4)];
        assert_eq!(a.mul(&f, &b).eval(&f, &pt), f.mul(a.eval(&f, &pt), b.eval(&f, &pt)));
    }
}
