//! The abstract configuration of 27 lines and its symmetry group W(E6).
//!
//! Lines are indexed 0..27: E1..E6 are 0..5, F_ij (i<j, lexicographic) are
//! 6..20 and G1..G6 are 21..26. An element of W(E6) is stored as the
//! permutation `p` with line i sent to line p[i].

use std::collections::HashMap;
use std::io::{Read, Write};
use std::sync::OnceLock;

pub type Perm = [u8; 27];

pub const IDENTITY: Perm = {
    let mut p = [0u8; 27];
    let mut i = 0;
    while i < 27 {
        p[i] = i as u8;
        i += 1;
    }
    p
};

/// Picard class (h; e1..e6) of each line.
pub fn picard_class(line: usize) -> [i32; 7] {
    let mut v = [0i32; 7];
    if line < 6 {
        v[1 + line] = 1;
    } else if line < 21 {
        let (i, j) = f_pair(line);
        v[0] = 1;
        v[1 + i] = -1;
        v[1 + j] = -1;
    } else {
        let i = line - 21;
        v[0] = 2;
        for j in 0..6 {
            if j != i {
                v[1 + j] = -1;
            }
        }
    }
    v
}

/// (i, j) with i < j (0-based) for an F line index.
pub fn f_pair(line: usize) -> (usize, usize) {
    let mut k = 6;
    for i in 0..6 {
        for j in i + 1..6 {
            if k == line {
                return (i, j);
            }
            k += 1;
        }
    }
    panic!("not an F line: {line}")
}

pub fn f_index(i: usize, j: usize) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    let mut k = 6;
    for a in 0..6 {
        for b in a + 1..6 {
            if (a, b) == (i, j) {
                return k;
            }
            k += 1;
        }
    }
    panic!("bad pair")
}

pub fn label(line: usize) -> String {
    if line < 6 {
        format!("E{}", line + 1)
    } else if line < 21 {
        let (i, j) = f_pair(line);
        format!("F{}{}", i + 1, j + 1)
    } else {
        format!("G{}", line - 20)
    }
}

/// Intersection form of the Picard lattice: diag(1, -1, ..., -1).
pub fn dot(a: &[i32; 7], b: &[i32; 7]) -> i32 {
    a[0] * b[0] - (1..7).map(|i| a[i] * b[i]).sum::<i32>()
}

fn line_of_class(v: &[i32; 7]) -> usize {
    (0..27).find(|&l| picard_class(l) == *v).expect("class is not a line")
}

/// Abstract incidence: distinct lines meet iff their classes have product 1.
pub fn meets(a: usize, b: usize) -> bool {
    a != b && dot(&picard_class(a), &picard_class(b)) == 1
}

pub fn incidence() -> &'static [[bool; 27]; 27] {
    static T: OnceLock<[[bool; 27]; 27]> = OnceLock::new();
    T.get_or_init(|| std::array::from_fn(|a| std::array::from_fn(|b| meets(a, b))))
}

/// The 45 tritangent trios: {E_i, G_j, F_ij} and partitions into three F's.
pub fn trios() -> &'static Vec<[usize; 3]> {
    static T: OnceLock<Vec<[usize; 3]>> = OnceLock::new();
    T.get_or_init(|| {
        let inc = incidence();
        let mut out = vec![];
        for a in 0..27 {
            for b in a + 1..27 {
                for c in b + 1..27 {
                    if inc[a][b] && inc[b][c] && inc[a][c] {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    })
}

/// All 72 sets of six pairwise skew lines, sorted.
pub fn sixes() -> Vec<[usize; 6]> {
    let inc = incidence();
    let mut out = vec![];
    let mut cur = vec![];
    fn rec(start: usize, cur: &mut Vec<usize>, inc: &[[bool; 27]; 27], out: &mut Vec<[usize; 6]>) {
        if cur.len() == 6 {
            out.push(cur.clone().try_into().unwrap());
            return;
        }
        for l in start..27 {
            if cur.iter().all(|&c| !inc[c][l]) {
                cur.push(l);
                rec(l + 1, cur, inc, out);
                cur.pop();
            }
        }
    }
    rec(0, &mut cur, inc, &mut out);
    out
}

/// The 36 double-sixes as pairs (a, b) where a_i meets b_j iff i != j.
pub fn double_sixes() -> Vec<([usize; 6], [usize; 6])> {
    let inc = incidence();
    let six = sixes();
    let mut out = vec![];
    for a in &six {
        for b in &six {
            if a >= b {
                continue;
            }
            // need an ordering of b with b_j skew to a_j only
            let mut ord = [0usize; 6];
            let ok = (0..6).all(|i| {
                let skew: Vec<usize> = b.iter().copied().filter(|&y| !inc[a[i]][y]).collect();
                if skew.len() == 1 && !a.contains(&skew[0]) {
                    ord[i] = skew[0];
                    true
                } else {
                    false
                }
            });
            if ok {
                out.push((*a, ord));
            }
        }
    }
    out
}

pub fn compose(p: &Perm, q: &Perm) -> Perm {
    std::array::from_fn(|i| p[q[i] as usize])
}
pub fn inverse(p: &Perm) -> Perm {
    let mut r = [0u8; 27];
    for i in 0..27 {
        r[p[i] as usize] = i as u8;
    }
    r
}
pub fn order(p: &Perm) -> usize {
    let mut q = *p;
    let mut n = 1;
    while q != IDENTITY {
        q = compose(p, &q);
        n += 1;
    }
    n
}
pub fn preserves_incidence(p: &Perm) -> bool {
    let inc = incidence();
    (0..27).all(|a| (0..27).all(|b| inc[a][b] == inc[p[a] as usize][p[b] as usize]))
}

/// Permutation induced by an isometry of the Picard lattice.
fn perm_of_isometry(m: impl Fn(&[i32; 7]) -> [i32; 7]) -> Perm {
    std::array::from_fn(|l| line_of_class(&m(&picard_class(l))) as u8)
}

/// Simple roots: a1 = h - e1 - e2 - e3, a_i = e_{i-1} - e_i.
pub fn simple_roots() -> [[i32; 7]; 6] {
    let mut r = [[0i32; 7]; 6];
    r[0] = [1, -1, -1, -1, 0, 0, 0];
    for i in 1..6 {
        r[i][i] = 1;
        r[i][i + 1] = -1;
    }
    r
}

/// Reflections in the six simple roots, as permutations.
pub fn generators() -> Vec<Perm> {
    simple_roots()
        .iter()
        .map(|a| {
            let a = *a;
            perm_of_isometry(move |x| {
                let c = dot(x, &a);
                std::array::from_fn(|i| x[i] + c * a[i])
            })
        })
        .collect()
}

/// Permutation of lines induced by permuting the indices 1..6 (`s[i]` = image of i, 0-based).
pub fn index_permutation(s: &[usize; 6]) -> Perm {
    std::array::from_fn(|l| {
        (if l < 6 {
            s[l]
        } else if l < 21 {
            let (i, j) = f_pair(l);
            f_index(s[i], s[j])
        } else {
            21 + s[l - 21]
        }) as u8
    })
}

/// Quadratic transformation centred at E1, E2, E3.
pub fn cremona() -> Perm {
    let a = simple_roots()[0];
    perm_of_isometry(move |x| {
        let c = dot(x, &a);
        std::array::from_fn(|i| x[i] + c * a[i])
    })
}

/// 7x7 integer matrix (columns = images of h, e1..e6) of the Picard action.
pub fn picard_matrix(p: &Perm) -> [[i32; 7]; 7] {
    let mut cols = [[0i32; 7]; 7];
    let img = |l: usize| picard_class(p[l] as usize);
    // h = F12 + E1 + E2
    let (f12, e1, e2) = (img(f_index(0, 1)), img(0), img(1));
    cols[0] = std::array::from_fn(|i| f12[i] + e1[i] + e2[i]);
    for i in 0..6 {
        cols[1 + i] = img(i);
    }
    std::array::from_fn(|r| std::array::from_fn(|c| cols[c][r]))
}

fn root_coords(v: &[i32; 7]) -> [i64; 6] {
    // v = sum c_i a_i
    let mut c = [0i64; 6];
    c[0] = v[0] as i64;
    let mut w: [i64; 7] = std::array::from_fn(|i| v[i] as i64);
    for i in 0..7 {
        w[i] -= c[0] * simple_roots()[0][i] as i64;
    }
    c[1] = w[1];
    for k in 2..6 {
        c[k] = w[k] + c[k - 1];
    }
    debug_assert_eq!(w[6], -c[5]);
    c
}

/// Action on the root lattice K^perp in the simple-root basis.
pub fn root_matrix(p: &Perm) -> [[i64; 6]; 6] {
    let m = picard_matrix(p);
    let roots = simple_roots();
    let mut out = [[0i64; 6]; 6];
    for (j, a) in roots.iter().enumerate() {
        let img: [i32; 7] = std::array::from_fn(|r| (0..7).map(|c| m[r][c] * a[c]).sum());
        let c = root_coords(&img);
        for i in 0..6 {
            out[i][j] = c[i];
        }
    }
    out
}

/// Integer characteristic polynomial det(xI - A), low degree first (Faddeev-LeVerrier).
pub fn charpoly_int<const N: usize>(a: &[[i64; N]; N]) -> Vec<i64> {
    let mut c = vec![0i64; N + 1];
    c[N] = 1;
    let mut m = [[0i64; N]; N];
    for k in 1..=N {
        // M_k = A M_{k-1} + c_{N-k+1} I
        let mut nm = [[0i64; N]; N];
        for i in 0..N {
            for j in 0..N {
                nm[i][j] = (0..N).map(|l| a[i][l] * m[l][j]).sum::<i64>();
            }
            nm[i][i] += c[N - k + 1];
        }
        m = nm;
        let tr: i64 = (0..N).map(|i| (0..N).map(|l| a[i][l] * m[l][i]).sum::<i64>()).sum();
        assert_eq!(tr % k as i64, 0);
        c[N - k] = -tr / k as i64;
    }
    c
}

/// Cyclotomic polynomials Phi_d for the orders occurring in W(E6).
pub fn cyclotomic(d: usize) -> Vec<i64> {
    match d {
        1 => vec![-1, 1],
        2 => vec![1, 1],
        3 => vec![1, 1, 1],
        4 => vec![1, 0, 1],
        5 => vec![1, 1, 1, 1, 1],
        6 => vec![1, -1, 1],
        8 => vec![1, 0, 0, 0, 1],
        9 => vec![1, 0, 0, 1, 0, 0, 1],
        12 => vec![1, 0, -1, 0, 1],
        _ => panic!("unsupported cyclotomic index"),
    }
}

pub const CYCLOTOMIC_INDICES: [usize; 9] = [1, 2, 3, 4, 5, 6, 8, 9, 12];

fn div_exact_int(a: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    // b monic
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.to_vec();
    let mut q = vec![0i64; a.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let c = r[i + b.len() - 1];
        q[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    r.iter().all(|&x| x == 0).then_some(q)
}

/// Factor a product of the supported cyclotomics; returns (d, exponent) pairs.
pub fn cyclotomic_signature(cp: &[i64]) -> Option<Vec<(usize, usize)>> {
    let mut rest = cp.to_vec();
    let mut sig = vec![];
    for &d in &CYCLOTOMIC_INDICES {
        let phi = cyclotomic(d);
        let mut e = 0;
        while let Some(q) = div_exact_int(&rest, &phi) {
            rest = q;
            e += 1;
        }
        if e > 0 {
            sig.push((d, e));
        }
    }
    (rest == vec![1]).then_some(sig)
}

/// One row of the class table of W(E6).
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ClassInfo {
    pub name: &'static str,
    pub order: usize,
    pub centralizer: usize,
    pub trace: i64,
    pub signature: &'static [(usize, usize)],
}

impl ClassInfo {
    pub fn size(&self) -> usize {
        51840 / self.centralizer
    }
    pub fn charpoly_string(&self) -> String {
        self.signature.iter().map(|(d, e)| format!("Phi{d}^{e}")).collect::<Vec<_>>().join(" ")
    }
}

macro_rules! cls {
    ($n:expr, $o:expr, $c:expr, $t:expr, [$(($d:expr, $e:expr)),*]) => {
        ClassInfo { name: $n, order: $o, centralizer: $c, trace: $t, signature: &[$(($d, $e)),*] }
    };
}

pub const CLASSES: [ClassInfo; 25] = [
    cls!("1A", 1, 51840, 6, [(1, 6)]),
    cls!("2A", 2, 1152, -2, [(1, 2), (2, 4)]),
    cls!("2B", 2, 192, 2, [(1, 4), (2, 2)]),
    cls!("2C", 2, 1440, 4, [(1, 5), (2, 1)]),
    cls!("2D", 2, 96, 0, [(1, 3), (2, 3)]),
    cls!("3A", 3, 648, -3, [(3, 3)]),
    cls!("3C", 3, 216, 3, [(1, 4), (3, 1)]),
    cls!("3D", 3, 108, 0, [(1, 2), (3, 2)]),
    cls!("4A", 4, 96, 2, [(1, 2), (4, 2)]),
    cls!("4B", 4, 16, 0, [(1, 2), (2, 2), (4, 1)]),
    cls!("4C", 4, 96, -2, [(1, 1), (2, 3), (4, 1)]),
    cls!("4D", 4, 32, 2, [(1, 3), (2, 1), (4, 1)]),
    cls!("5A", 5, 10, 1, [(1, 2), (5, 1)]),
    cls!("6A", 6, 72, 1, [(3, 1), (6, 2)]),
    cls!("6C", 6, 36, 1, [(1, 2), (2, 2), (6, 1)]),
    cls!("6E", 6, 36, -2, [(2, 2), (3, 1), (6, 1)]),
    cls!("6F", 6, 24, -1, [(1, 2), (2, 2), (3, 1)]),
    cls!("6G", 6, 36, 1, [(1, 3), (2, 1), (3, 1)]),
    cls!("6H", 6, 36, -2, [(1, 1), (2, 1), (3, 2)]),
    cls!("6I", 6, 12, 0, [(1, 1), (2, 1), (3, 1), (6, 1)]),
    cls!("8A", 8, 8, 0, [(1, 1), (2, 1), (8, 1)]),
    cls!("9A", 9, 9, 0, [(9, 1)]),
    cls!("10A", 10, 10, -1, [(1, 1), (2, 1), (5, 1)]),
    cls!("12A", 12, 12, -1, [(3, 1), (12, 1)]),
    cls!("12C", 12, 12, 1, [(1, 1), (2, 1), (4, 1), (6, 1)]),
];

pub fn class_info(name: &str) -> Option<&'static ClassInfo> {
    CLASSES.iter().find(|c| c.name == name)
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("no cyclotomic factorization match")]
    NoMatch,
    #[error("permutation does not preserve incidence")]
    NotIncidencePreserving,
}

/// Atlas class of a W(E6) element from its characteristic polynomial on K^perp.
pub fn class_of(p: &Perm) -> Result<&'static ClassInfo, WeylError> {
    let cp = charpoly_int(&root_matrix(p));
    let sig = cyclotomic_signature(&cp).ok_or(WeylError::NoMatch)?;
    CLASSES.iter().find(|c| c.signature == sig.as_slice()).ok_or(WeylError::NoMatch)
}

/// The full group, materialised.
pub struct WeylGroup {
    pub elements: Vec<Perm>,
    pub index: HashMap<Perm, u32>,
    pub generators: Vec<Perm>,
    /// class id per element, and class representatives
    pub class_id: Vec<u8>,
    pub classes: Vec<ConjClass>,
    movers: OnceLock<[Perm; 27]>,
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub representative: Perm,
    pub size: usize,
    pub info: &'static ClassInfo,
}

const CACHE_MAGIC: &[u8; 8] = b"CUBWE6\0\x01";

fn cache_path() -> std::path::PathBuf {
    std::env::temp_dir().join("cubic27-we6-v1.bin")
}

fn load_cache() -> Option<Vec<Perm>> {
    let mut f = std::fs::File::open(cache_path()).ok()?;
    let mut buf = vec![];
    f.read_to_end(&mut buf).ok()?;
    if buf.len() != 8 + 4 + 51840 * 27 || &buf[..8] != CACHE_MAGIC {
        return None;
    }
    let n = u32::from_le_bytes(buf[8..12].try_into().ok()?) as usize;
    if n != 51840 {
        return None;
    }
    let els: Vec<Perm> = buf[12..].chunks(27).map(|c| c.try_into().unwrap()).collect();
    // spot check validity
    if els[0] != IDENTITY || !els.iter().step_by(997).all(preserves_incidence) {
        return None;
    }
    Some(els)
}

fn store_cache(els: &[Perm]) {
    let path = cache_path();
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    let write = || -> std::io::Result<()> {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(CACHE_MAGIC)?;
        f.write_all(&(els.len() as u32).to_le_bytes())?;
        for p in els {
            f.write_all(p)?;
        }
        f.sync_all()?;
        std::fs::rename(&tmp, &path)
    };
    if write().is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
}

/// Breadth-first closure of the generators.
pub fn enumerate_group(gens: &[Perm]) -> Vec<Perm> {
    let mut seen: HashMap<Perm, ()> = HashMap::with_capacity(60000);
    let mut els = vec![IDENTITY];
    seen.insert(IDENTITY, ());
    let mut i = 0;
    while i < els.len() {
        let x = els[i];
        for g in gens {
            let y = compose(g, &x);
            if seen.insert(y, ()).is_none() {
                els.push(y);
            }
        }
        i += 1;
    }
    els
}

impl WeylGroup {
    fn build(use_cache: bool) -> WeylGroup {
        let generators = generators();
        let elements = match use_cache.then(load_cache).flatten() {
            Some(e) => e,
            None => {
                let e = enumerate_group(&generators);
                if use_cache {
                    store_cache(&e);
                }
                e
            }
        };
        let index: HashMap<Perm, u32> = elements.iter().enumerate().map(|(i, p)| (*p, i as u32)).collect();
        // conjugacy classes by closure under conjugation by generators
        let mut class_id = vec![u8::MAX; elements.len()];
        let mut classes = vec![];
        let ginv: Vec<Perm> = generators.iter().map(inverse).collect();
        for start in 0..elements.len() {
            if class_id[start] != u8::MAX {
                continue;
            }
            let cid = classes.len() as u8;
            let mut stack = vec![start];
            class_id[start] = cid;
            let mut size = 0;
            while let Some(i) = stack.pop() {
                size += 1;
                for (g, gi) in generators.iter().zip(&ginv) {
                    let y = compose(g, &compose(&elements[i], gi));
                    let j = index[&y] as usize;
                    if class_id[j] == u8::MAX {
                        class_id[j] = cid;
                        stack.push(j);
                    }
                }
            }
            let info = class_of(&elements[start]).expect("element of W(E6) has a class");
            classes.push(ConjClass { representative: elements[start], size, info });
        }
        WeylGroup { elements, index, generators, class_id, classes, movers: OnceLock::new() }
    }

    /// Shared instance (uses the disk cache).
    pub fn get() -> &'static WeylGroup {
        static G: OnceLock<WeylGroup> = OnceLock::new();
        G.get_or_init(|| WeylGroup::build(true))
    }

    /// Fresh construction without the cache.
    pub fn build_uncached() -> WeylGroup {
        WeylGroup::build(false)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Class info by table lookup (faster than `class_of`).
    pub fn class_of_element(&self, p: &Perm) -> &'static ClassInfo {
        self.classes[self.class_id[self.index[p] as usize] as usize].info
    }

    /// For each line, some element sending it to E6.
    pub fn movers_to_e6(&self) -> &[Perm; 27] {
        self.movers.get_or_init(|| self.find_movers())
    }

    fn find_movers(&self) -> [Perm; 27] {
        let mut out = [IDENTITY; 27];
        let mut have = [false; 27];
        for p in &self.elements {
            for l in 0..27 {
                if !have[l] && p[l] == 5 {
                    out[l] = *p;
                    have[l] = true;
                }
            }
            if have.iter().all(|&h| h) {
                break;
            }
        }
        out
    }
}

// ---------------------------------------------------------------- W(D5)

/// The 16 lines skew to E6 as odd-weight vectors of F_2^5 (bit i = coordinate i).
pub fn d5_model() -> [(usize, u8); 16] {
    let mut out = [(0usize, 0u8); 16];
    let mut k = 0;
    for i in 0..5 {
        out[k] = (i, 1 << i);
        k += 1;
    }
    for i in 0..5 {
        for j in i + 1..5 {
            out[k] = (f_index(i, j), 0b11111 ^ (1 << i) ^ (1 << j));
            k += 1;
        }
    }
    out[k] = (26, 0b11111);
    out
}

/// A signed cycle: (length, negative).
pub type SignedCycle = (usize, bool);

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct D5Class {
    pub name: &'static str,
    pub cycles: Vec<SignedCycle>,
    pub trace: i64,
    pub e6_class: &'static str,
}

/// Rows of the W(D5) class table: (name, signed cycles, trace, W(E6) class).
pub const D5_TABLE: [(&str, &[SignedCycle], i64, &str); 18] = [
    ("11111", &[(1, false), (1, false), (1, false), (1, false), (1, false)], 5, "1A"),
    ("1111\u{0304}1\u{0304}", &[(1, false), (1, false), (1, false), (1, true), (1, true)], 1, "2B"),
    ("11\u{0304}1\u{0304}1\u{0304}1\u{0304}", &[(1, false), (1, true), (1, true), (1, true), (1, true)], -3, "2A"),
    ("2111", &[(2, false), (1, false), (1, false), (1, false)], 3, "2C"),
    ("211\u{0304}1\u{0304}", &[(2, false), (1, false), (1, true), (1, true)], -1, "2D"),
    ("221", &[(2, false), (2, false), (1, false)], 1, "2B"),
    ("311", &[(3, false), (1, false), (1, false)], 2, "3C"),
    ("22\u{0304}1\u{0304}", &[(2, false), (2, true), (1, true)], -1, "4B"),
    ("41", &[(4, false), (1, false)], 1, "4D"),
    ("2\u{0304}111\u{0304}", &[(2, true), (1, false), (1, false), (1, true)], 1, "4D"),
    ("2\u{0304}1\u{0304}1\u{0304}1\u{0304}", &[(2, true), (1, true), (1, true), (1, true)], -3, "4C"),
    ("2\u{0304}2\u{0304}1", &[(2, true), (2, true), (1, false)], 1, "4A"),
    ("5", &[(5, false)], 0, "5A"),
    ("32", &[(3, false), (2, false)], 0, "6G"),
    ("31\u{0304}1\u{0304}", &[(3, false), (1, true), (1, true)], -2, "6F"),
    ("3\u{0304}11\u{0304}", &[(3, true), (1, false), (1, true)], 0, "6C"),
    ("4\u{0304}1\u{0304}", &[(4, true), (1, true)], -1, "8A"),
    ("3\u{0304}2\u{0304}", &[(3, true), (2, true)], 0, "12C"),
];

/// Signed permutation (sigma, flips) realising a permutation of the 16 odd-weight vectors.
/// `w16[v]` is the image of vector v (as a 5-bit mask).
pub fn d5_signed_perm(w16: &HashMap<u8, u8>) -> Result<([usize; 5], u8), WeylError> {
    let wt = |x: u8| x.count_ones();
    // relation check
    for (&u, &gu) in w16 {
        for (&v, &gv) in w16 {
            if wt(u ^ v) != wt(gu ^ gv) {
                return Err(WeylError::NotIncidencePreserving);
            }
        }
    }
    // g(e_i) + g(e_j) = e_s(i) + e_s(j)
    let mut sigma = [0usize; 5];
    for i in 0..5 {
        let gi = w16[&(1 << i)];
        let mut common = 0b11111u8;
        for j in 0..5 {
            if j != i {
                common &= gi ^ w16[&(1 << j)];
            }
        }
        if common.count_ones() != 1 {
            return Err(WeylError::NotIncidencePreserving);
        }
        sigma[i] = common.trailing_zeros() as usize;
    }
    let perm = |v: u8| -> u8 { (0..5).filter(|&i| v >> i & 1 == 1).fold(0u8, |a, i| a | 1 << sigma[i]) };
    let a = w16[&1] ^ perm(1);
    if a.count_ones() % 2 != 0 || w16.iter().any(|(&v, &gv)| perm(v) ^ a != gv) {
        return Err(WeylError::NotIncidencePreserving);
    }
    Ok((sigma, a))
}

/// Signed cycle type of x -> flips . sigma on Z^5.
pub fn signed_cycle_type(sigma: &[usize; 5], flips: u8) -> Vec<SignedCycle> {
    let mut seen = [false; 5];
    let mut out = vec![];
    for s in 0..5 {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut neg = false;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            len += 1;
            // coordinate i is sent to sigma[i], then flipped if in A
            neg ^= flips >> sigma[i] & 1 == 1;
            i = sigma[i];
        }
        out.push((len, neg));
    }
    out
}

fn canonical_cycles(c: &[SignedCycle]) -> Vec<SignedCycle> {
    let mut v = c.to_vec();
    v.sort();
    v
}

/// Classify a permutation of the 16 odd-weight vectors.
pub fn d5_class_of(w16: &HashMap<u8, u8>) -> Result<D5Class, WeylError> {
    let (sigma, flips) = d5_signed_perm(w16)?;
    let cyc = canonical_cycles(&signed_cycle_type(&sigma, flips));
    let row = D5_TABLE.iter().find(|r| canonical_cycles(r.1) == cyc).ok_or(WeylError::NoMatch)?;
    Ok(D5Class { name: row.0, cycles: cyc, trace: row.2, e6_class: row.3 })
}

/// Restrict an element fixing E6 to the 16-line model.
pub fn restrict_to_d5(p: &Perm) -> Option<HashMap<u8, u8>> {
    if p[5] != 5 {
        return None;
    }
    let model = d5_model();
    let vec_of: HashMap<usize, u8> = model.iter().copied().collect();
    Some(model.iter().map(|&(l, v)| (v, vec_of[&(p[l] as usize)])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn incidence_counts() {
        let inc = incidence();
        for a in 0..27 {
            assert_eq!(inc[a].iter().filter(|&&x| x).count(), 10);
        }
        assert_eq!(trios().len(), 45);
        assert_eq!(sixes().len(), 72);
        assert_eq!(double_sixes().len(), 36);
    }

    #[test]
    fn generators_preserve_incidence() {
        for g in generators() {
            assert!(preserves_incidence(&g));
            assert_eq!(order(&g), 2);
        }
        let c = cremona();
        assert_eq!(c[0] as usize, f_index(1, 2));
        assert_eq!(c[1] as usize, f_index(0, 2));
        assert_eq!(c[2] as usize, f_index(0, 1));
    }

    #[test]
    fn identity_and_small_classes() {
        assert_eq!(class_of(&IDENTITY).unwrap().name, "1A");
        let five = index_permutation(&[1, 2, 3, 4, 0, 5]);
        assert_eq!(class_of(&five).unwrap().name, "5A");
        let cp = charpoly_int(&root_matrix(&five));
        assert_eq!(cyclotomic_signature(&cp).unwrap(), vec![(1, 2), (5, 1)]);
    }

    #[test]
    fn signatures_distinct_and_sizes_sum() {
        let mut sigs: Vec<_> = CLASSES.iter().map(|c| c.signature).collect();
        sigs.sort();
        sigs.dedup();
        assert_eq!(sigs.len(), 25);
        assert_eq!(CLASSES.iter().map(|c| c.size()).sum::<usize>(), 51840);
        for c in &CLASSES {
            let tr: i64 = c.signature.iter().map(|&(d, e)| e as i64 * -cyclotomic(d)[cyclotomic(d).len() - 2]).sum();
            assert_eq!(tr, c.trace, "{}", c.name);
        }
    }

    #[test]
    fn d5_involutions() {
        let model = d5_model();
        let mk = |f: &dyn Fn(u8) -> u8| -> HashMap<u8, u8> { model.iter().map(|&(_, v)| (v, f(v))).collect() };
        assert_eq!(d5_class_of(&mk(&|v| v ^ 0b01111)).unwrap().e6_class, "2A");
        assert_eq!(d5_class_of(&mk(&|v| v ^ 0b00011)).unwrap().e6_class, "2B");
        assert_eq!(d5_class_of(&mk(&|v| v)).unwrap().name, "11111");
    }

    #[test]
    fn full_group_classes() {
        let g = WeylGroup::build_uncached();
        assert_eq!(g.order(), 51840);
        assert_eq!(g.classes.len(), 25);
        for c in &g.classes {
            assert_eq!(c.size, c.info.size(), "{}", c.info.name);
            assert_eq!(order(&c.representative), c.info.order);
        }
        let mut names: Vec<_> = g.classes.iter().map(|c| c.info.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 25);
        // every element of the stabiliser of E6 agrees with the W(D5) table
        let mut stab = 0;
        for p in &g.elements {
            if let Some(w) = restrict_to_d5(p) {
                stab += 1;
                let d = d5_class_of(&w).unwrap();
                assert_eq!(d.e6_class, g.class_of_element(p).name, "{}", d.name);
            }
        }
        assert_eq!(stab, 1920);
    }
}
