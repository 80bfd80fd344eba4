//! Finite fields GF(p^k) in a power basis over GF(p), with explicit embeddings.
//!
//! Every field is GF(p)[t]/(m(t)) for a monic irreducible m. Elements are plain
//! `Copy` values; arithmetic goes through the owning [`Field`]. Fields built by
//! [`Field::extend`] remember their parent and the image of the parent's
//! generator, so any field in a tower embeds into its descendants.

use crate::poly::{self, UniPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

/// Largest supported extension degree over the prime field.
pub const MAX_DEGREE: usize = 48;
/// In characteristic 2 elements are bit-packed into a `u128`.
pub const MAX_DEGREE_CHAR2: usize = 127;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("p = {0} is not a prime below 65536")]
    NotPrime(u64),
    #[error("modulus is not irreducible over GF({0})")]
    Reducible(u32),
    #[error("modulus must be monic of degree k = {0}")]
    BadModulus(usize),
    #[error("extension degree {0} exceeds the supported maximum")]
    TooLarge(usize),
    #[error("coefficient {0} out of range for GF({1})")]
    BadCoefficient(i64, u32),
}

/// A field element. Interpret only together with its [`Field`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe([u16; MAX_DEGREE]);

impl Fe {
    pub const ZERO: Fe = Fe([0; MAX_DEGREE]);

    #[inline]
    pub fn is_zero(&self) -> bool {
        *self == Fe::ZERO
    }

    #[inline]
    fn bits(&self) -> u128 {
        let mut r = 0u128;
        for i in (0..8).rev() {
            r = (r << 16) | self.0[i] as u128;
        }
        r
    }

    #[inline]
    fn from_bits(mut b: u128) -> Fe {
        let mut f = Fe::ZERO;
        for i in 0..8 {
            f.0[i] = (b & 0xffff) as u16;
            b >>= 16;
        }
        f
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&c| c != 0).unwrap_or(0);
        write!(f, "Fe{:?}", &self.0[..=last])
    }
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

struct Inner {
    id: u64,
    p: u32,
    k: usize,
    modulus: Vec<u32>,
    /// (p - m_j) mod p, for reduction
    negmod: Vec<u64>,
    /// characteristic 2 modulus as a bit mask including x^k
    mbits: u128,
    inv_table: Vec<u32>,
    parent: Option<(Field, Fe)>,
}

/// Shared handle to a finite field. Cloning is cheap; equality is identity.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p(), self.k())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl Field {
    fn build(p: u32, modulus: Vec<u32>, parent: Option<(Field, Fe)>) -> Field {
        let k = modulus.len() - 1;
        let negmod = modulus[..k].iter().map(|&m| ((p - m) % p) as u64).collect();
        let mut mbits = 0u128;
        if p == 2 {
            for (i, &m) in modulus.iter().enumerate() {
                if m == 1 {
                    mbits |= 1u128 << i;
                }
            }
        }
        let inv_table = if p > 2 {
            (0..p as u64).map(|a| if a == 0 { 0 } else { pow_mod_u64(a, p as u64 - 2, p as u64) as u32 }).collect()
        } else {
            vec![0, 1]
        };
        Field(Arc::new(Inner {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            p,
            k,
            modulus,
            negmod,
            mbits,
            inv_table,
            parent,
        }))
    }

    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Field, GfError> {
        if p >= 65536 || !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        Ok(Field::build(p as u32, vec![0, 1], None))
    }

    /// GF(p)[t]/(m) for a user supplied monic irreducible modulus (low degree first).
    pub fn with_modulus(p: u64, modulus: &[i64]) -> Result<Field, GfError> {
        let base = Field::prime(p)?;
        let k = modulus.len().saturating_sub(1);
        if k == 0 {
            return Err(GfError::BadModulus(k));
        }
        if k == 1 {
            return Ok(base);
        }
        if k > max_degree(p as u32) {
            return Err(GfError::TooLarge(k));
        }
        let pp = p as i64;
        let m: Vec<u32> = modulus.iter().map(|&c| c.rem_euclid(pp) as u32).collect();
        if m[k] != 1 {
            return Err(GfError::BadModulus(k));
        }
        let mp = UniPoly::from_vec(m.iter().map(|&c| base.from_u64(c as u64)).collect());
        if !poly::is_irreducible(&base, &mp) {
            return Err(GfError::Reducible(p as u32));
        }
        Ok(Field::build(p as u32, m, None))
    }

    /// GF(q) for q = p^k, with a deterministically chosen modulus.
    pub fn gf(p: u64, k: usize) -> Result<Field, GfError> {
        let base = Field::prime(p)?;
        if k == 1 {
            return Ok(base);
        }
        if k > max_degree(p as u32) {
            return Err(GfError::TooLarge(k));
        }
        let m = find_irreducible(&base, k);
        Ok(Field::build(p as u32, m, None))
    }

    /// An extension of degree `d` over `self` that records the embedding of `self`.
    /// `d == 1` returns `self` unchanged.
    pub fn extend(&self, d: usize) -> Result<Field, GfError> {
        if d == 1 {
            return Ok(self.clone());
        }
        let n = self.k() * d;
        if n > max_degree(self.p()) {
            return Err(GfError::TooLarge(n));
        }
        let base = Field::prime(self.p() as u64)?;
        let m = find_irreducible(&base, n);
        let raw = Field::build(self.p(), m.clone(), None);
        let img = if self.k() == 1 {
            Fe::ZERO
        } else {
            // a root of our modulus inside the new field
            let mk = UniPoly::from_vec(self.modulus().iter().map(|&c| raw.from_u64(c as u64)).collect());
            let roots = poly::roots(&raw, &mk);
            roots[0]
        };
        Ok(Field::build(self.p(), m, Some((self.clone(), img))))
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }
    #[inline]
    pub fn k(&self) -> usize {
        self.0.k
    }
    pub fn id(&self) -> u64 {
        self.0.id
    }
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }
    pub fn parent(&self) -> Option<&Field> {
        self.0.parent.as_ref().map(|(f, _)| f)
    }
    pub(crate) fn parent_link(&self) -> Option<&(Field, Fe)> {
        self.0.parent.as_ref()
    }
    /// p^k if it fits in a u128.
    pub fn order(&self) -> Option<u128> {
        (self.p() as u128).checked_pow(self.k() as u32)
    }
    #[inline]
    pub fn is_char2(&self) -> bool {
        self.0.p == 2
    }

    #[inline]
    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }
    #[inline]
    pub fn one(&self) -> Fe {
        let mut f = Fe::ZERO;
        f.0[0] = 1;
        f
    }
    /// The class of t.
    pub fn gen(&self) -> Fe {
        if self.k() == 1 {
            // GF(p) = GF(p)[t]/(t), so t = 0
            return Fe::ZERO;
        }
        let mut f = Fe::ZERO;
        if self.is_char2() {
            return Fe::from_bits(2);
        }
        f.0[1] = 1;
        f
    }
    pub fn from_u64(&self, n: u64) -> Fe {
        let mut f = Fe::ZERO;
        f.0[0] = (n % self.p() as u64) as u16;
        f
    }
    pub fn from_i64(&self, n: i64) -> Fe {
        self.from_u64(n.rem_euclid(self.p() as i64) as u64)
    }

    /// Coefficients in the power basis 1, t, .., t^(k-1).
    pub fn coeffs(&self, a: &Fe) -> Vec<u32> {
        if self.is_char2() {
            let b = a.bits();
            (0..self.k()).map(|i| ((b >> i) & 1) as u32).collect()
        } else {
            a.0[..self.k()].iter().map(|&c| c as u32).collect()
        }
    }
    pub fn from_coeffs(&self, c: &[u32]) -> Fe {
        assert!(c.len() <= self.k(), "too many coefficients");
        if self.is_char2() {
            let mut b = 0u128;
            for (i, &x) in c.iter().enumerate() {
                if x % 2 == 1 {
                    b |= 1 << i;
                }
            }
            return Fe::from_bits(b);
        }
        let mut f = Fe::ZERO;
        for (i, &x) in c.iter().enumerate() {
            f.0[i] = (x % self.p()) as u16;
        }
        f
    }
    /// Checked variant of `from_coeffs` for user input.
    pub fn try_from_coeffs(&self, c: &[i64]) -> Result<Fe, GfError> {
        if c.len() > self.k() {
            return Err(GfError::BadModulus(self.k()));
        }
        for &x in c {
            if x < 0 || x >= self.p() as i64 {
                return Err(GfError::BadCoefficient(x, self.p()));
            }
        }
        Ok(self.from_coeffs(&c.iter().map(|&x| x as u32).collect::<Vec<_>>()))
    }

    /// Integer index sum c_i p^i, a bijection onto 0..q.
    pub fn index_of(&self, a: &Fe) -> u128 {
        let mut r = 0u128;
        for c in self.coeffs(a).iter().rev() {
            r = r * self.p() as u128 + *c as u128;
        }
        r
    }
    pub fn from_index(&self, mut n: u128) -> Fe {
        let p = self.p() as u128;
        let c: Vec<u32> = (0..self.k())
            .map(|_| {
                let d = (n % p) as u32;
                n /= p;
                d
            })
            .collect();
        self.from_coeffs(&c)
    }
    /// All elements, in index order. Only for small fields.
    pub fn elements(&self) -> Vec<Fe> {
        let q = self.order().expect("field too large to enumerate");
        assert!(q <= 1 << 24, "field too large to enumerate");
        (0..q).map(|i| self.from_index(i)).collect()
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        let c: Vec<u32> = (0..self.k()).map(|_| rng.gen_range(0..self.p())).collect();
        self.from_coeffs(&c)
    }
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        loop {
            let a = self.random(rng);
            if !a.is_zero() {
                return a;
            }
        }
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.is_char2() {
            return Fe::from_bits(a.bits() ^ b.bits());
        }
        let p = self.0.p as u16;
        let mut r = Fe::ZERO;
        for i in 0..self.k() {
            let s = a.0[i] as u32 + b.0[i] as u32;
            r.0[i] = if s >= p as u32 { (s - p as u32) as u16 } else { s as u16 };
        }
        r
    }
    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.is_char2() {
            return a;
        }
        let p = self.0.p as u16;
        let mut r = Fe::ZERO;
        for i in 0..self.k() {
            r.0[i] = if a.0[i] == 0 { 0 } else { p - a.0[i] };
        }
        r
    }
    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if self.is_char2() {
            self.mul2(a, b)
        } else {
            self.mulp(a, b)
        }
    }

    fn mulp(&self, a: Fe, b: Fe) -> Fe {
        let k = self.k();
        let p = self.0.p as u64;
        if k == 1 {
            let mut r = Fe::ZERO;
            r.0[0] = ((a.0[0] as u64 * b.0[0] as u64) % p) as u16;
            return r;
        }
        let mut acc = [0u64; 2 * MAX_DEGREE];
        for i in 0..k {
            let ai = a.0[i] as u64;
            if ai == 0 {
                continue;
            }
            for j in 0..k {
                acc[i + j] += ai * b.0[j] as u64;
            }
        }
        let neg = &self.0.negmod;
        for i in (k..2 * k - 1).rev() {
            let c = acc[i] % p;
            if c == 0 {
                continue;
            }
            for j in 0..k {
                acc[i - k + j] += c * neg[j];
            }
        }
        let mut r = Fe::ZERO;
        for j in 0..k {
            r.0[j] = (acc[j] % p) as u16;
        }
        r
    }

    fn mul2(&self, a: Fe, b: Fe) -> Fe {
        let k = self.k();
        let (x, mut y) = (a.bits(), b.bits());
        if k == 1 {
            return Fe::from_bits(x & y);
        }
        // carry-less product into (lo, hi)
        let (mut lo, mut hi) = (0u128, 0u128);
        let mut i = 0;
        while y != 0 {
            if y & 1 == 1 {
                lo ^= x << i;
                if i > 0 {
                    hi ^= x >> (128 - i);
                }
            }
            y >>= 1;
            i += 1;
        }
        let m = self.0.mbits;
        for d in (k..2 * k - 1).rev() {
            let set = if d < 128 { (lo >> d) & 1 } else { (hi >> (d - 128)) & 1 };
            if set == 1 {
                let s = d - k;
                lo ^= m << s;
                if s > 0 {
                    hi ^= m >> (128 - s);
                }
            }
        }
        Fe::from_bits(lo)
    }

    #[inline]
    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn pow(&self, mut a: Fe, mut e: u128) -> Fe {
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Fe) -> Fe {
        self.try_inv(a).expect("inverse of zero")
    }

    pub fn try_inv(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            return None;
        }
        if self.k() == 1 {
            let mut r = Fe::ZERO;
            r.0[0] = self.0.inv_table[a.0[0] as usize] as u16;
            return Some(r);
        }
        if self.is_char2() {
            return Some(self.inv2(a));
        }
        Some(self.invp(a))
    }

    fn inv2(&self, a: Fe) -> Fe {
        // extended Euclid on GF(2)[x], modulus has bit k set (k <= 127)
        fn deg(x: u128) -> i32 {
            127 - x.leading_zeros() as i32
        }
        let (mut r0, mut r1) = (self.0.mbits, a.bits());
        let (mut s0, mut s1) = (0u128, 1u128);
        while r1 != 0 {
            while deg(r0) >= deg(r1) && r0 != 0 {
                let sh = deg(r0) - deg(r1);
                r0 ^= r1 << sh;
                s0 ^= s1 << sh;
            }
            std::mem::swap(&mut r0, &mut r1);
            std::mem::swap(&mut s0, &mut s1);
        }
        debug_assert_eq!(r0, 1);
        Fe::from_bits(s0)
    }

    fn invp(&self, a: Fe) -> Fe {
        let p = self.0.p as u64;
        let it = &self.0.inv_table;
        let trim = |v: &mut Vec<u64>| {
            while v.last() == Some(&0) {
                v.pop();
            }
        };
        let mut r0: Vec<u64> = self.0.modulus.iter().map(|&c| c as u64).collect();
        let mut r1: Vec<u64> = a.0[..self.k()].iter().map(|&c| c as u64).collect();
        trim(&mut r1);
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            // r0 = q r1 + r, s_new = s0 - q s1
            let mut q = vec![0u64; r0.len().saturating_sub(r1.len()) + 1];
            let lc_inv = it[*r1.last().unwrap() as usize] as u64;
            while r0.len() >= r1.len() && !r0.is_empty() {
                let sh = r0.len() - r1.len();
                let c = r0.last().unwrap() * lc_inv % p;
                q[sh] = c;
                for (i, &b) in r1.iter().enumerate() {
                    r0[sh + i] = (r0[sh + i] + p * p - c * b) % p;
                }
                trim(&mut r0);
            }
            let mut s = s0.clone();
            for (i, &qi) in q.iter().enumerate() {
                if qi == 0 {
                    continue;
                }
                for (j, &sj) in s1.iter().enumerate() {
                    if s.len() <= i + j {
                        s.resize(i + j + 1, 0);
                    }
                    s[i + j] = (s[i + j] + p * p - qi * sj) % p;
                }
            }
            trim(&mut s);
            s0 = std::mem::replace(&mut s1, s);
            std::mem::swap(&mut r0, &mut r1);
        }
        let c = it[r0[0] as usize] as u64;
        let mut r = Fe::ZERO;
        for (i, &x) in s0.iter().enumerate() {
            r.0[i] = (x * c % p) as u16;
        }
        r
    }

    #[inline]
    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    /// a -> a^p
    pub fn frob(&self, a: Fe) -> Fe {
        self.pow(a, self.p() as u128)
    }

    /// Square root in characteristic 2, a^(2^(k-1)).
    pub fn sqrt_char2(&self, a: Fe) -> Fe {
        assert!(self.is_char2());
        let mut r = a;
        for _ in 0..self.k() - 1 {
            r = self.square(r);
        }
        r
    }

    /// Square root for odd p, if one exists (Tonelli-Shanks over GF(q) via root finding).
    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            return Some(a);
        }
        if self.is_char2() {
            return Some(self.sqrt_char2(a));
        }
        let f = UniPoly::from_vec(vec![self.neg(a), self.zero(), self.one()]);
        poly::roots(self, &f).into_iter().next()
    }

    /// The p-th root, inverse of Frobenius.
    pub fn frob_inv(&self, a: Fe) -> Fe {
        let mut r = a;
        for _ in 0..self.k() - 1 {
            r = self.frob(r);
        }
        r
    }

    pub fn eq_elem(&self, a: Fe, b: Fe) -> bool {
        a == b
    }

    /// Human readable form, a polynomial in t.
    pub fn show(&self, a: &Fe) -> String {
        let c = self.coeffs(a);
        if self.k() == 1 {
            return c[0].to_string();
        }
        let mut parts = vec![];
        for (i, &x) in c.iter().enumerate().rev() {
            if x == 0 {
                continue;
            }
            let m = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            parts.push(if i == 0 {
                x.to_string()
            } else if x == 1 {
                m
            } else {
                format!("{x}{m}")
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

fn max_degree(p: u32) -> usize {
    if p == 2 {
        MAX_DEGREE_CHAR2
    } else {
        MAX_DEGREE
    }
}

/// Deterministic search for a monic irreducible polynomial of degree n over GF(p).
/// Prefers sparse candidates (trinomials) before random ones.
fn find_irreducible(base: &Field, n: usize) -> Vec<u32> {
    let p = base.p();
    let to_poly = |m: &[u32]| UniPoly::from_vec(m.iter().map(|&c| base.from_u64(c as u64)).collect());
    // x^n + a x^j + b, small a, b
    for j in 1..n {
        for a in 1..p.min(4) {
            for b in 1..p.min(8) {
                let mut m = vec![0u32; n + 1];
                m[n] = 1;
                m[j] = a;
                m[0] = b;
                if poly::is_irreducible(base, &to_poly(&m)) {
                    return m;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6766_0000 ^ ((p as u64) << 8) ^ n as u64);
    loop {
        let mut m: Vec<u32> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        m.push(1);
        if m[0] != 0 && poly::is_irreducible(base, &to_poly(&m)) {
            return m;
        }
    }
}

/// A field homomorphism K -> L between fields of one tower.
#[derive(Clone)]
pub struct Embedding {
    pub from: Field,
    pub to: Field,
    /// images of 1, t, .., t^(k-1)
    powers: Vec<Fe>,
    /// row-reduced data for inverting the GF(p)-linear map
    solver: std::sync::OnceLock<Preimage>,
}

#[derive(Clone)]
struct Preimage {
    // rows: for each pivot, (pivot column in L-coordinates, combination of K-basis vectors)
    rows: Vec<(Vec<u32>, Vec<u32>)>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Embedding({:?} -> {:?})", self.from, self.to)
    }
}

impl Embedding {
    /// The embedding of `from` into `to`, which must be an ancestor-or-self
    /// of `to`, or the prime field.
    pub fn new(from: &Field, to: &Field) -> Option<Embedding> {
        if from.p() != to.p() {
            return None;
        }
        let gen_img = if from.k() == 1 {
            to.zero()
        } else {
            // walk up from `to` to find `from`, recording the chain
            let mut chain: Vec<Field> = vec![to.clone()];
            let mut cur = to.clone();
            while cur != *from {
                let par = cur.parent()?.clone();
                chain.push(par.clone());
                cur = par;
            }
            // chain = [to, .., from]; push the generator of `from` down the chain
            let mut g = from.gen();
            for w in (1..chain.len()).rev() {
                let (upper, lower) = (&chain[w], &chain[w - 1]);
                let (_, img) = lower.parent_link().unwrap();
                g = apply_gen(upper, lower, *img, g);
            }
            g
        };
        let mut powers = Vec::with_capacity(from.k());
        let mut cur = to.one();
        for _ in 0..from.k() {
            powers.push(cur);
            cur = to.mul(cur, gen_img);
        }
        Some(Embedding { from: from.clone(), to: to.clone(), powers, solver: Default::default() })
    }

    pub fn identity(f: &Field) -> Embedding {
        Embedding::new(f, f).unwrap()
    }

    /// [L : K]
    pub fn degree(&self) -> usize {
        self.to.k() / self.from.k()
    }

    pub fn is_identity(&self) -> bool {
        self.from == self.to
    }

    pub fn apply(&self, a: Fe) -> Fe {
        if self.is_identity() {
            return a;
        }
        if self.from.k() == 1 {
            return self.to.from_u64(self.from.coeffs(&a)[0] as u64);
        }
        let c = self.from.coeffs(&a);
        let mut r = self.to.zero();
        for (i, &ci) in c.iter().enumerate() {
            if ci != 0 {
                r = self.to.add(r, self.to.mul(self.to.from_u64(ci as u64), self.powers[i]));
            }
        }
        r
    }

    fn solver(&self) -> &Preimage {
        self.solver.get_or_init(|| {
            // matrix with columns = coordinates of powers[i]; reduce rows of [M^T | I]
            let p = self.to.p() as u64;
            let kk = self.from.k();
            let kl = self.to.k();
            let mut rows: Vec<(Vec<u32>, Vec<u32>)> = (0..kk)
                .map(|i| {
                    let mut id = vec![0u32; kk];
                    id[i] = 1;
                    (self.to.coeffs(&self.powers[i]), id)
                })
                .collect();
            let mut pivots = vec![];
            let mut r = 0;
            for col in 0..kl {
                let Some(piv) = (r..kk).find(|&i| rows[i].0[col] != 0) else { continue };
                rows.swap(r, piv);
                let inv = pow_mod_u64(rows[r].0[col] as u64, p - 2, p);
                {
                    let row = &mut rows[r];
                    for x in row.0.iter_mut().chain(row.1.iter_mut()) {
                        *x = (*x as u64 * inv % p) as u32;
                    }
                }
                for i in 0..kk {
                    if i != r && rows[i].0[col] != 0 {
                        let c = rows[i].0[col] as u64;
                        let (src_a, src_b) = (rows[r].0.clone(), rows[r].1.clone());
                        for (x, &y) in rows[i].0.iter_mut().zip(&src_a) {
                            *x = ((*x as u64 + p * p - c * y as u64) % p) as u32;
                        }
                        for (x, &y) in rows[i].1.iter_mut().zip(&src_b) {
                            *x = ((*x as u64 + p * p - c * y as u64) % p) as u32;
                        }
                    }
                }
                pivots.push(col);
                r += 1;
                if r == kk {
                    break;
                }
            }
            Preimage { rows, pivots }
        })
    }

    /// The unique x in K with apply(x) = b, if b lies in the image.
    pub fn preimage(&self, b: Fe) -> Option<Fe> {
        if self.is_identity() {
            return Some(b);
        }
        if self.from.k() == 1 {
            // the prime field maps to constants
            let cc = self.to.coeffs(&b);
            if cc[1..].iter().any(|&v| v != 0) {
                return None;
            }
            return Some(self.from.from_u64(cc[0] as u64));
        }
        let s = self.solver();
        let p = self.to.p() as u64;
        let bc = self.to.coeffs(&b);
        let mut x = vec![0u64; self.from.k()];
        for (r, &col) in s.pivots.iter().enumerate() {
            let c = bc[col] as u64;
            if c == 0 {
                continue;
            }
            for (xi, &v) in x.iter_mut().zip(&s.rows[r].1) {
                *xi = (*xi + c * v as u64) % p;
            }
        }
        let cand = self.from.from_coeffs(&x.iter().map(|&v| v as u32).collect::<Vec<_>>());
        (self.apply(cand) == b).then_some(cand)
    }
}

/// Image of `a` in `lower` under the direct embedding upper -> lower whose
/// generator image is `img`.
fn apply_gen(upper: &Field, lower: &Field, img: Fe, a: Fe) -> Fe {
    if upper.k() == 1 {
        return lower.from_u64(upper.coeffs(&a)[0] as u64);
    }
    let mut r = lower.zero();
    let mut pw = lower.one();
    for &c in &upper.coeffs(&a) {
        if c != 0 {
            r = lower.add(r, lower.mul(lower.from_u64(c as u64), pw));
        }
        pw = lower.mul(pw, img);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_order(f: &Field, a: Fe) -> u128 {
        let mut x = a;
        let mut n = 1;
        while x != f.one() {
            x = f.mul(x, a);
            n += 1;
        }
        n
    }

    #[test]
    fn gf4_tables() {
        let f = Field::gf(2, 2).unwrap();
        let els = f.elements();
        assert_eq!(els.len(), 4);
        let w = f.gen();
        assert_eq!(f.add(f.mul(w, w), f.add(w, f.one())), f.zero());
        for &a in &els[1..] {
            assert_eq!(f.mul(a, f.inv(a)), f.one());
        }
    }

    #[test]
    fn inverses_and_orders() {
        for (p, k) in [(3, 1), (3, 3), (5, 2), (7, 3), (2, 7), (2, 5), (101, 1), (11, 2)] {
            let f = Field::gf(p, k).unwrap();
            let q = f.order().unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            for _ in 0..50 {
                let a = f.random_nonzero(&mut rng);
                assert_eq!(f.mul(a, f.inv(a)), f.one());
                assert_eq!(f.pow(a, q - 1), f.one());
                if q < 5000 {
                    assert_eq!((q - 1) % naive_order(&f, a), 0);
                }
                let b = f.random(&mut rng);
                let c = f.random(&mut rng);
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            }
        }
    }

    #[test]
    fn char2_sqrt_and_large_degree() {
        let f = Field::gf(2, 84).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let a = f.random_nonzero(&mut rng);
            let s = f.sqrt_char2(a);
            assert_eq!(f.square(s), a);
            assert_eq!(f.mul(a, f.inv(a)), f.one());
        }
    }

    #[test]
    fn tower_embeddings_compose() {
        let k = Field::gf(3, 2).unwrap();
        let l = k.extend(2).unwrap();
        let m = l.extend(3).unwrap();
        let kl = Embedding::new(&k, &l).unwrap();
        let lm = Embedding::new(&l, &m).unwrap();
        let km = Embedding::new(&k, &m).unwrap();
        for a in k.elements() {
            assert_eq!(lm.apply(kl.apply(a)), km.apply(a));
            assert_eq!(km.preimage(km.apply(a)), Some(a));
            for b in k.elements() {
                assert_eq!(km.apply(k.mul(a, b)), m.mul(km.apply(a), km.apply(b)));
                assert_eq!(km.apply(k.add(a, b)), m.add(km.apply(a), km.apply(b)));
            }
        }
        // elements outside the image have no preimage
        let outside = m.gen();
        assert!(km.preimage(outside).is_none() || km.apply(km.preimage(outside).unwrap()) == outside);
        assert_eq!(k.extend(1).unwrap(), k);
    }

    #[test]
    fn prime_field_embeds_everywhere() {
        let f5 = Field::prime(5).unwrap();
        let l = Field::gf(5, 3).unwrap();
        let e = Embedding::new(&f5, &l).unwrap();
        assert_eq!(e.apply(f5.from_u64(3)), l.from_u64(3));
        assert_eq!(e.preimage(l.from_u64(4)), Some(f5.from_u64(4)));
        assert_eq!(e.preimage(l.gen()), None);
    }

    #[test]
    fn user_modulus_checked() {
        assert!(Field::with_modulus(2, &[1, 1, 1]).is_ok());
        assert_eq!(Field::with_modulus(2, &[1, 0, 1]).unwrap_err(), GfError::Reducible(2));
        assert!(Field::prime(9).is_err());
    }
}
