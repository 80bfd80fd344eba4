//! Dense linear algebra over a finite field.

use crate::gf::{Fe, Field};
use crate::poly::UniPoly;

pub type Mat = Vec<Vec<Fe>>;

pub fn zeros(f: &Field, r: usize, c: usize) -> Mat {
    vec![vec![f.zero(); c]; r]
}

pub fn identity(f: &Field, n: usize) -> Mat {
    let mut m = zeros(f, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = f.one();
    }
    m
}

/// In-place reduced row echelon form; returns pivot columns.
pub fn rref(f: &Field, m: &mut Mat) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut piv = vec![];
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = f.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pr = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let s = row[c];
                for (x, &y) in row.iter_mut().zip(&pr) {
                    if !y.is_zero() {
                        *x = f.sub(*x, f.mul(s, y));
                    }
                }
            }
        }
        piv.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    piv
}

pub fn rank(f: &Field, m: &Mat) -> usize {
    rref(f, &mut m.clone()).len()
}

/// Basis of the right kernel {x : m x = 0}.
pub fn kernel(f: &Field, m: &Mat, cols: usize) -> Vec<Vec<Fe>> {
    let mut a = m.clone();
    let piv = rref(f, &mut a);
    let mut out = vec![];
    for free in (0..cols).filter(|c| !piv.contains(c)) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (r, &pc) in piv.iter().enumerate() {
            v[pc] = f.neg(a[r][free]);
        }
        out.push(v);
    }
    out
}

/// Some solution of m x = b.
pub fn solve(f: &Field, m: &Mat, b: &[Fe]) -> Option<Vec<Fe>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Mat = m.iter().zip(b).map(|(row, &bi)| {
        let mut r = row.clone();
        r.push(bi);
        r
    }).collect();
    let piv = rref(f, &mut a);
    if piv.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![f.zero(); cols];
    for (r, &pc) in piv.iter().enumerate() {
        x[pc] = a[r][cols];
    }
    Some(x)
}

pub fn det(f: &Field, m: &Mat) -> Fe {
    let n = m.len();
    let mut a = m.clone();
    let mut d = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return f.zero() };
        if p != c {
            a.swap(p, c);
            d = f.neg(d);
        }
        d = f.mul(d, a[c][c]);
        let inv = f.inv(a[c][c]);
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let s = f.mul(a[i][c], inv);
            for j in c..n {
                let t = f.mul(s, a[c][j]);
                a[i][j] = f.sub(a[i][j], t);
            }
        }
    }
    d
}

pub fn inverse(f: &Field, m: &Mat) -> Option<Mat> {
    let n = m.len();
    let mut a: Mat = m.iter().enumerate().map(|(i, row)| {
        let mut r = row.clone();
        r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
        r
    }).collect();
    let piv = rref(f, &mut a);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mul(f: &Field, a: &Mat, b: &Mat) -> Mat {
    let (n, m, k) = (a.len(), b.len(), b.first().map_or(0, |r| r.len()));
    let mut c = zeros(f, n, k);
    for i in 0..n {
        for l in 0..m {
            let x = a[i][l];
            if x.is_zero() {
                continue;
            }
            for j in 0..k {
                c[i][j] = f.add(c[i][j], f.mul(x, b[l][j]));
            }
        }
    }
    c
}

pub fn mat_vec(f: &Field, a: &Mat, v: &[Fe]) -> Vec<Fe> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(f.zero(), |s, (&x, &y)| f.add(s, f.mul(x, y))))
        .collect()
}

/// Characteristic polynomial det(x I - m) via Hessenberg reduction.
pub fn charpoly(f: &Field, m: &Mat) -> UniPoly {
    let n = m.len();
    let mut h = m.clone();
    // reduce to upper Hessenberg form by similarity
    for c in 0..n.saturating_sub(2) {
        let Some(p) = (c + 1..n).find(|&i| !h[i][c].is_zero()) else { continue };
        if p != c + 1 {
            h.swap(p, c + 1);
            for row in h.iter_mut() {
                row.swap(p, c + 1);
            }
        }
        let inv = f.inv(h[c + 1][c]);
        for i in c + 2..n {
            if h[i][c].is_zero() {
                continue;
            }
            let s = f.mul(h[i][c], inv);
            // row_i -= s row_{c+1}; col_{c+1} += s col_i
            for j in 0..n {
                let t = f.mul(s, h[c + 1][j]);
                h[i][j] = f.sub(h[i][j], t);
            }
            for row in h.iter_mut() {
                let t = f.mul(s, row[i]);
                row[c + 1] = f.add(row[c + 1], t);
            }
        }
    }
    // recurrence on leading principal minors
    let mut p: Vec<UniPoly> = vec![UniPoly::constant(f.one())];
    for k in 0..n {
        let lin = UniPoly::from_vec(vec![f.neg(h[k][k]), f.one()]);
        let mut cur = lin.mul(f, &p[k]);
        let mut prod = f.one();
        for i in (0..k).rev() {
            prod = f.mul(prod, h[i + 1][i]);
            let coef = f.mul(prod, h[i][k]);
            cur = cur.sub(f, &p[i].scale(f, coef));
        }
        p.push(cur);
    }
    p.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inverse_and_det() {
        let f = Field::gf(5, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let m: Mat = (0..4).map(|_| (0..4).map(|_| f.random(&mut rng)).collect()).collect();
            match inverse(&f, &m) {
                Some(inv) => {
                    assert_eq!(mul(&f, &m, &inv), identity(&f, 4));
                    assert!(!det(&f, &m).is_zero());
                }
                None => assert!(det(&f, &m).is_zero()),
            }
        }
    }

    #[test]
    fn charpoly_cayley_hamilton() {
        let f = Field::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 1..6 {
            let m: Mat = (0..n).map(|_| (0..n).map(|_| f.random(&mut rng)).collect()).collect();
            let cp = charpoly(&f, &m);
            assert_eq!(cp.deg(), Some(n));
            // det(m) = (-1)^n cp(0)
            let d = det(&f, &m);
            let c0 = cp.coeff(0);
            assert_eq!(if n % 2 == 0 { c0 } else { f.neg(c0) }, d);
            // cp(m) = 0
            let mut acc = zeros(&f, n, n);
            let mut pw = identity(&f, n);
            for i in 0..=n {
                let c = cp.coeff(i);
                for r in 0..n {
                    for s in 0..n {
                        acc[r][s] = f.add(acc[r][s], f.mul(c, pw[r][s]));
                    }
                }
                pw = mul(&f, &pw, &m);
            }
            assert_eq!(acc, zeros(&f, n, n));
        }
    }

    #[test]
    fn kernel_is_kernel() {
        let f = Field::prime(3).unwrap();
        let m: Mat = vec![
            vec![f.one(), f.one(), f.zero(), f.one()],
            vec![f.zero(), f.one(), f.one(), f.one()],
        ];
        let k = kernel(&f, &m, 4);
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(mat_vec(&f, &m, &v).iter().all(|x| x.is_zero()));
        }
    }
}
