//! Points, lines and projectivities of P^1 and P^3.

use crate::gf::{Fe, Field};
use crate::linalg;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("equal lines")]
    EqualLines,
    #[error("not a frame")]
    NotAFrame,
    #[error("degenerate configuration")]
    Degenerate,
    #[error("points do not span a line")]
    Dependent,
}

/// A point of P^(N-1), first nonzero coordinate equal to 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ProjPoint<const N: usize> {
    pub c: [Fe; N],
}

pub type Point1 = ProjPoint<2>;
pub type Point3 = ProjPoint<4>;

impl<const N: usize> ProjPoint<N> {
    pub fn new(f: &Field, mut c: [Fe; N]) -> Option<Self> {
        let i = c.iter().position(|x| !x.is_zero())?;
        let inv = f.inv(c[i]);
        for x in c.iter_mut() {
            *x = f.mul(*x, inv);
        }
        Some(ProjPoint { c })
    }
    pub fn from_ints(f: &Field, c: [i64; N]) -> Option<Self> {
        Self::new(f, c.map(|x| f.from_i64(x)))
    }
}

/// Plücker coordinates in the order 01, 02, 03, 12, 13, 23.
pub const PLUCKER_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// A line of P^3, identified by its normalised Plücker vector.
#[derive(Clone, Copy, Debug)]
pub struct Line3 {
    pub u: [Fe; 4],
    pub v: [Fe; 4],
    pub pl: [Fe; 6],
}

impl PartialEq for Line3 {
    fn eq(&self, o: &Self) -> bool {
        self.pl == o.pl
    }
}
impl Eq for Line3 {}
impl std::hash::Hash for Line3 {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.pl.hash(h)
    }
}
impl PartialOrd for Line3 {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Line3 {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.pl.cmp(&o.pl)
    }
}

pub fn plucker(f: &Field, u: &[Fe; 4], v: &[Fe; 4]) -> [Fe; 6] {
    PLUCKER_PAIRS.map(|(i, j)| f.sub(f.mul(u[i], v[j]), f.mul(u[j], v[i])))
}

impl Line3 {
    pub fn through(f: &Field, u: [Fe; 4], v: [Fe; 4]) -> Result<Self, GeomError> {
        let p = plucker(f, &u, &v);
        let pl = ProjPoint::new(f, p).ok_or(GeomError::Dependent)?.c;
        // keep a reduced spanning pair for later use
        let mut m = vec![u.to_vec(), v.to_vec()];
        linalg::rref(f, &mut m);
        let u2: [Fe; 4] = m[0].clone().try_into().unwrap();
        let v2: [Fe; 4] = m[1].clone().try_into().unwrap();
        Ok(Line3 { u: u2, v: v2, pl })
    }
    pub fn from_points(f: &Field, a: &Point3, b: &Point3) -> Result<Self, GeomError> {
        Self::through(f, a.c, b.c)
    }

    /// The Plücker pairing; zero iff the lines meet.
    pub fn pairing(&self, f: &Field, o: &Line3) -> Fe {
        let (p, q) = (&self.pl, &o.pl);
        let t = [
            f.mul(p[0], q[5]),
            f.mul(p[5], q[0]),
            f.neg(f.mul(p[1], q[4])),
            f.neg(f.mul(p[4], q[1])),
            f.mul(p[2], q[3]),
            f.mul(p[3], q[2]),
        ];
        t.iter().fold(f.zero(), |s, &x| f.add(s, x))
    }

    pub fn meets(&self, f: &Field, o: &Line3) -> bool {
        self.pairing(f, o).is_zero()
    }

    /// Intersection point: Some if coplanar, None if skew.
    pub fn meet(&self, f: &Field, o: &Line3) -> Result<Option<Point3>, GeomError> {
        if self == o {
            return Err(GeomError::EqualLines);
        }
        if !self.meets(f, o) {
            return Ok(None);
        }
        // a u1 + b v1 = c u2 + d v2
        let m: linalg::Mat = (0..4).map(|i| vec![self.u[i], self.v[i], f.neg(o.u[i]), f.neg(o.v[i])]).collect();
        let k = linalg::kernel(f, &m, 4);
        let s = &k[0];
        let pt: [Fe; 4] = std::array::from_fn(|i| f.add(f.mul(s[0], self.u[i]), f.mul(s[1], self.v[i])));
        Ok(ProjPoint::new(f, pt))
    }

    pub fn contains(&self, f: &Field, x: &[Fe; 4]) -> bool {
        let m = vec![self.u.to_vec(), self.v.to_vec(), x.to_vec()];
        linalg::rank(f, &m) == 2
    }

    /// The point u s + v t.
    pub fn point_at(&self, f: &Field, s: Fe, t: Fe) -> [Fe; 4] {
        std::array::from_fn(|i| f.add(f.mul(s, self.u[i]), f.mul(t, self.v[i])))
    }
}

/// Plücker quadric relation p01 p23 - p02 p13 + p03 p12.
pub fn plucker_relation(f: &Field, p: &[Fe; 6]) -> Fe {
    f.add(f.sub(f.mul(p[0], p[5]), f.mul(p[1], p[4])), f.mul(p[2], p[3]))
}

/// An invertible N x N matrix up to scalar, normalised so the first nonzero entry is 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ProjMap<const N: usize> {
    pub m: [[Fe; N]; N],
}

pub type Map1 = ProjMap<2>;
pub type Map3 = ProjMap<4>;

impl<const N: usize> ProjMap<N> {
    pub fn new(f: &Field, mut m: [[Fe; N]; N]) -> Option<Self> {
        let first = m.iter().flatten().find(|x| !x.is_zero()).copied()?;
        let inv = f.inv(first);
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        let r = ProjMap { m };
        if linalg::det(f, &r.to_mat()).is_zero() {
            return None;
        }
        Some(r)
    }
    pub fn identity(f: &Field) -> Self {
        let mut m = [[f.zero(); N]; N];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = f.one();
        }
        ProjMap { m }
    }
    pub fn to_mat(&self) -> linalg::Mat {
        self.m.iter().map(|r| r.to_vec()).collect()
    }
    fn from_mat(f: &Field, a: &linalg::Mat) -> Option<Self> {
        let m: [[Fe; N]; N] = std::array::from_fn(|i| std::array::from_fn(|j| a[i][j]));
        Self::new(f, m)
    }
    pub fn apply_vec(&self, f: &Field, x: &[Fe; N]) -> [Fe; N] {
        std::array::from_fn(|i| (0..N).fold(f.zero(), |s, j| f.add(s, f.mul(self.m[i][j], x[j]))))
    }
    pub fn apply(&self, f: &Field, x: &ProjPoint<N>) -> ProjPoint<N> {
        ProjPoint::new(f, self.apply_vec(f, &x.c)).unwrap()
    }
    /// self after o.
    pub fn compose(&self, f: &Field, o: &Self) -> Self {
        Self::from_mat(f, &linalg::mul(f, &self.to_mat(), &o.to_mat())).unwrap()
    }
    pub fn inverse(&self, f: &Field) -> Self {
        Self::from_mat(f, &linalg::inverse(f, &self.to_mat()).unwrap()).unwrap()
    }
    pub fn is_identity(&self, f: &Field) -> bool {
        *self == Self::identity(f)
    }
    pub fn order(&self, f: &Field) -> usize {
        let mut g = *self;
        let mut n = 1;
        while !g.is_identity(f) {
            g = g.compose(f, self);
            n += 1;
        }
        n
    }
}

/// Columns lambda_i p_i with p_N = sum lambda_i p_i; None unless the N+1 points form a frame.
pub fn frame_matrix<const N: usize>(f: &Field, pts: &[[Fe; N]]) -> Option<linalg::Mat> {
    assert_eq!(pts.len(), N + 1);
    let a: linalg::Mat = (0..N).map(|i| (0..N).map(|j| pts[j][i]).collect()).collect();
    let lam = linalg::solve(f, &a, &pts[N])?;
    if linalg::rank(f, &a) < N || lam.iter().any(|x| x.is_zero()) {
        return None;
    }
    Some((0..N).map(|i| (0..N).map(|j| f.mul(lam[j], pts[j][i])).collect()).collect())
}

/// The unique projectivity sending src[i] to dst[i] for i = 0..=N.
pub fn map_from_points<const N: usize>(f: &Field, src: &[[Fe; N]], dst: &[[Fe; N]]) -> Result<ProjMap<N>, GeomError> {
    let s = frame_matrix::<N>(f, src).ok_or(GeomError::NotAFrame)?;
    let d = frame_matrix::<N>(f, dst).ok_or(GeomError::NotAFrame)?;
    let si = linalg::inverse(f, &s).ok_or(GeomError::NotAFrame)?;
    ProjMap::from_mat(f, &linalg::mul(f, &d, &si)).ok_or(GeomError::NotAFrame)
}

/// Result of the P^1 set-stabiliser computation.
#[derive(Clone, Debug)]
pub struct Pgl2Stabilizer {
    pub elements: Vec<Map1>,
    pub generators: Vec<Map1>,
    pub order: usize,
    pub tag: &'static str,
}

/// Set-stabiliser in PGL_2 of five distinct points.
pub fn pgl2_stabilizer(f: &Field, points: &[Point1]) -> Result<Pgl2Stabilizer, GeomError> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() != 5 || points.len() != 5 {
        return Err(GeomError::Degenerate);
    }
    let src = [pts[0].c, pts[1].c, pts[2].c];
    let mut elements = vec![];
    for a in 0..5 {
        for b in 0..5 {
            for c in 0..5 {
                if a == b || b == c || a == c {
                    continue;
                }
                let dst = [pts[a].c, pts[b].c, pts[c].c];
                let Ok(g) = map_from_points::<2>(f, &src, &dst) else { continue };
                let mut img: Vec<Point1> = pts.iter().map(|p| g.apply(f, p)).collect();
                img.sort();
                if img == pts {
                    elements.push(g);
                }
            }
        }
    }
    elements.sort();
    let order = elements.len();
    let generators = small_generating_set(f, &elements);
    let orders: Vec<usize> = elements.iter().map(|g| g.order(f)).collect();
    let has = |k: usize| orders.contains(&k);
    let tag = match order {
        1 => "1",
        2 => "C2",
        3 => "C3",
        4 if has(4) => "C4",
        4 => "C2^2",
        5 => "C5",
        6 if has(6) => "C6",
        6 => "S3",
        8 => "D8",
        10 if has(10) => "C10",
        10 => "D10",
        12 => "A4",
        20 => "C5:C4",
        24 => "S4",
        60 => "A5",
        120 => "S5",
        _ => "?",
    };
    Ok(Pgl2Stabilizer { elements, generators, order, tag })
}

/// Greedy generating set: add elements not already in the generated subgroup.
pub fn small_generating_set<const N: usize>(f: &Field, elements: &[ProjMap<N>]) -> Vec<ProjMap<N>> {
    let mut gens: Vec<ProjMap<N>> = vec![];
    let mut span: std::collections::BTreeSet<ProjMap<N>> = [ProjMap::identity(f)].into();
    for g in elements {
        if span.contains(g) {
            continue;
        }
        gens.push(*g);
        // closure
        let mut frontier: Vec<ProjMap<N>> = span.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            for h in &gens {
                let y = x.compose(f, h);
                if span.insert(y) {
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt4(f: &Field, c: [i64; 4]) -> [Fe; 4] {
        c.map(|x| f.from_i64(x))
    }

    #[test]
    fn meet_and_skew() {
        let f = Field::prime(2).unwrap();
        let l1 = Line3::through(&f, pt4(&f, [1, 1, 0, 0]), pt4(&f, [0, 0, 1, 1])).unwrap();
        let l2 = Line3::through(&f, pt4(&f, [1, 0, 1, 0]), pt4(&f, [0, 1, 0, 1])).unwrap();
        // both satisfy x0+x1 = x2+x3 = 0 resp. x0+x2 = x1+x3 = 0
        let m = l1.meet(&f, &l2).unwrap().unwrap();
        assert_eq!(m, ProjPoint::from_ints(&f, [1, 1, 1, 1]).unwrap());
        let f7 = Field::prime(7).unwrap();
        let a = Line3::through(&f7, pt4(&f7, [1, 0, 0, 0]), pt4(&f7, [0, 1, 0, 0])).unwrap();
        let b = Line3::through(&f7, pt4(&f7, [0, 0, 1, 0]), pt4(&f7, [0, 0, 0, 1])).unwrap();
        assert_eq!(a.meet(&f7, &b).unwrap(), None);
        assert_eq!(a.meet(&f7, &a), Err(GeomError::EqualLines));
        assert!(plucker_relation(&f7, &a.pl).is_zero());
    }

    #[test]
    fn frame_maps() {
        let f = Field::prime(7).unwrap();
        let std: Vec<[Fe; 4]> = vec![
            pt4(&f, [1, 0, 0, 0]),
            pt4(&f, [0, 1, 0, 0]),
            pt4(&f, [0, 0, 1, 0]),
            pt4(&f, [0, 0, 0, 1]),
            pt4(&f, [1, 1, 1, 1]),
        ];
        assert!(map_from_points::<4>(&f, &std, &std).unwrap().is_identity(&f));
        let d = [1, 2, 4, 1];
        let img: Vec<[Fe; 4]> = std
            .iter()
            .map(|p| std::array::from_fn(|i| f.mul(p[i], f.from_i64(d[i]))))
            .collect();
        let g = map_from_points::<4>(&f, &std, &img).unwrap();
        let want = ProjMap::new(&f, std::array::from_fn(|i| std::array::from_fn(|j| if i == j { f.from_i64(d[i]) } else { f.zero() }))).unwrap();
        assert_eq!(g, want);
        let bad = vec![std[0], std[1], std[2], pt4(&f, [1, 1, 0, 0]), std[4]];
        assert_eq!(map_from_points::<4>(&f, &bad, &std), Err(GeomError::NotAFrame));
    }

    fn five(f: &Field, a: Fe, b: Fe) -> Vec<Point1> {
        let one = f.one();
        vec![
            ProjPoint::new(f, [one, f.zero()]).unwrap(),
            ProjPoint::new(f, [f.zero(), one]).unwrap(),
            ProjPoint::new(f, [one, f.neg(one)]).unwrap(),
            ProjPoint::new(f, [f.neg(a), one]).unwrap(),
            ProjPoint::new(f, [one, f.neg(b)]).unwrap(),
        ]
    }

    #[test]
    fn stabilizers_of_five_points() {
        let f = Field::prime(11).unwrap();
        let s = pgl2_stabilizer(&f, &five(&f, f.from_u64(8), f.from_u64(8))).unwrap();
        assert_eq!((s.order, s.tag), (10, "D10"));
        let f4 = Field::gf(2, 2).unwrap();
        let z = f4.gen();
        let s = pgl2_stabilizer(&f4, &five(&f4, z, z)).unwrap();
        assert_eq!(s.order, 60);
        let f101 = Field::prime(101).unwrap();
        let s = pgl2_stabilizer(&f101, &five(&f101, f101.from_u64(17), f101.from_u64(33))).unwrap();
        assert_eq!(s.order, 1);
        let dup = five(&f101, f101.from_u64(1), f101.from_u64(2));
        assert_eq!(pgl2_stabilizer(&f101, &dup).unwrap_err(), GeomError::Degenerate);
    }

    #[test]
    fn no_nontrivial_map_fixes_three_points() {
        let f = Field::prime(5).unwrap();
        let pts: Vec<[Fe; 2]> = vec![[f.one(), f.zero()], [f.zero(), f.one()], [f.one(), f.one()]];
        let g = map_from_points::<2>(&f, &pts, &pts).unwrap();
        assert!(g.is_identity(&f));
    }
}
