//! Projective automorphism groups of smooth cubic surfaces.
//!
//! Every automorphism permutes the 27 lines through an element of W(E6), and
//! is determined by that permutation. Each group element is transported to
//! the geometric lines through the marking; five intersection points of
//! incident lines and their images determine the only possible lift, which
//! is then verified on all 27 lines and on the form.

use crate::eckardt::{self, EckardtGeometry};
use crate::gf::{Fe, Field};
use crate::linalg;
use crate::lines::LineConfiguration;
use crate::projgeom::{frame_matrix, Line3, Map3, ProjMap, ProjPoint};
use crate::weyl::{self, ClassInfo, Perm, WeylGroup};
use std::collections::{BTreeMap, HashSet};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum AutError {
    #[error("frame extraction failed: no five intersection points in general position")]
    FrameExtraction,
    #[error("profile contains excluded class {0}")]
    ExcludedClass(&'static str),
    #[error("automorphisms do not form a group")]
    NotAGroup,
    #[error("reflections and Eckardt points are not in bijection")]
    ReflectionMismatch,
    #[error(transparent)]
    Eckardt(#[from] eckardt::EckardtError),
}

/// How the candidate scan is executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    Parallel,
    Sequential,
}

impl Default for ScanMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ScanMode::Parallel
        } else {
            ScanMode::Sequential
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    /// only try elements preserving the set of Eckardt trios
    pub prefilter: bool,
    pub mode: ScanMode,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { prefilter: true, mode: ScanMode::default() }
    }
}

#[derive(Clone, Debug)]
pub struct AutElement {
    pub matrix: Map3,
    pub perm: Perm,
    pub class: &'static ClassInfo,
}

/// Moduli stratum label with characteristic-dependent coincidences.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct StratumLabel {
    pub name: &'static str,
    pub display: &'static str,
    /// order of the automorphism group of a general member
    pub generic_order: usize,
}

#[derive(Clone, Debug)]
pub struct AutGroup {
    pub field: Field,
    pub elements: Vec<AutElement>,
    pub order: usize,
    /// counts per class, in class-table order
    pub profile: Vec<(&'static str, usize)>,
    /// indices into `elements`
    pub generators: Vec<usize>,
    pub reflection_order: usize,
    pub reflection_index: usize,
    pub stratum: StratumLabel,
    pub eckardt: EckardtGeometry,
}

impl AutGroup {
    pub fn profile_map(&self) -> BTreeMap<&'static str, usize> {
        self.profile.iter().copied().collect()
    }
    pub fn count(&self, class: &str) -> usize {
        self.profile.iter().find(|p| p.0 == class).map_or(0, |p| p.1)
    }
    pub fn perms(&self) -> Vec<Perm> {
        self.elements.iter().map(|e| e.perm).collect()
    }
    pub fn tag(&self) -> &'static str {
        self.eckardt.tag()
    }
}

/// Strata with the order of the generic automorphism group per characteristic.
pub fn stratum_label(name: &str, p: u32) -> Option<StratumLabel> {
    let l = |name, display, generic_order| Some(StratumLabel { name, display, generic_order });
    match (name, p) {
        ("1A", _) => l("1A", "1A", 1),
        ("2A", _) => l("2A", "2A", 2),
        ("2B", 2) => l("2B", "2B", 16),
        ("2B", _) => l("2B", "2B", 4),
        ("3A", _) => l("3A", "3A", 54),
        ("3C" | "5A" | "12A", 2) => l("3C", "3C (=5A=12A)", 25920),
        ("3C", 3) => None,
        ("3C", _) => l("3C", "3C", 648),
        ("3D", _) => l("3D", "3D", 6),
        ("4A" | "4B" | "6E", 2) => l("4A", "4A (=4B=6E)", 192),
        ("4A", _) => l("4A", "4A", 4),
        ("4B", _) => l("4B", "4B", 24),
        ("5A", 5) => None,
        ("5A", _) => l("5A", "5A", 120),
        ("6E", _) => l("6E", "6E", 12),
        ("8A", 2) => None,
        ("8A" | "12A", 3) => l("8A", "8A (=12A)", 216),
        ("8A", _) => l("8A", "8A", 8),
        ("12A", _) => l("12A", "12A", 108),
        _ => None,
    }
}

pub const STRATA: [&str; 12] = ["1A", "2A", "2B", "3A", "3C", "3D", "4A", "4B", "5A", "6E", "8A", "12A"];

/// Classes that never occur, plus the characteristic-specific exclusions.
pub fn excluded_classes(p: u32) -> Vec<&'static str> {
    let mut v = vec!["2C", "2D", "4C", "4D", "6G", "6H", "6I", "10A", "12C"];
    if p == 2 {
        v.push("8A");
    }
    if p == 3 {
        v.extend(["3C", "6C", "6F"]);
    }
    v
}

/// The deepest stratum whose defining class occurs in the profile.
pub fn stratum(profile: &[(&'static str, usize)], p: u32) -> Result<StratumLabel, AutError> {
    for ex in excluded_classes(p) {
        if profile.iter().any(|&(c, n)| c == ex && n > 0) {
            return Err(AutError::ExcludedClass(ex));
        }
    }
    let best = STRATA
        .iter()
        .filter(|s| profile.iter().any(|&(c, n)| c == **s && n > 0))
        .filter_map(|s| stratum_label(s, p))
        .max_by_key(|s| s.generic_order)
        .expect("identity is always present");
    Ok(best)
}

fn same_point(f: &Field, a: &[Fe; 4], b: &[Fe; 4]) -> bool {
    ProjPoint::new(f, *a) == ProjPoint::new(f, *b)
}

/// Precomputed geometric data shared by all candidates.
struct Lifter<'a> {
    cfg: &'a LineConfiguration,
    meet: Vec<Vec<Option<[Fe; 4]>>>,
    src_pairs: [(usize, usize); 5],
    src_inv: linalg::Mat,
    check_pairs: Vec<(usize, usize)>,
}

impl<'a> Lifter<'a> {
    fn new(cfg: &'a LineConfiguration) -> Result<Self, AutError> {
        let f = &cfg.field;
        let meet: Vec<Vec<Option<[Fe; 4]>>> =
            (0..27).map(|a| (0..27).map(|b| if cfg.incidence[a][b] { cfg.meet(a, b) } else { None }).collect()).collect();
        let pairs: Vec<(usize, usize)> = (0..27).flat_map(|a| (a + 1..27).map(move |b| (a, b))).filter(|&(a, b)| cfg.incidence[a][b]).collect();
        let frames = frames(f, &pairs, &meet, 10);
        let first = *frames.first().ok_or(AutError::FrameExtraction)?;
        let src: Vec<[Fe; 4]> = first.iter().map(|&(a, b)| meet[a][b].unwrap()).collect();
        let s = frame_matrix::<4>(f, &src).ok_or(AutError::FrameExtraction)?;
        let src_inv = linalg::inverse(f, &s).ok_or(AutError::FrameExtraction)?;
        // a few further points for early rejection, spread over the pair list
        let check_pairs = pairs.iter().copied().filter(|p| !first.contains(p)).step_by(17).take(6).collect();
        Ok(Lifter { cfg, meet, src_pairs: first, src_inv, check_pairs })
    }

    fn point(&self, a: usize, b: usize) -> [Fe; 4] {
        self.meet[a][b].expect("incident pair")
    }

    /// The automorphism realising w, if any.
    fn lift(&self, w: &Perm) -> Option<Map3> {
        let f = &self.cfg.field;
        let dst: Vec<[Fe; 4]> = self.src_pairs.iter().map(|&(a, b)| self.point(w[a] as usize, w[b] as usize)).collect();
        let d = frame_matrix::<4>(f, &dst)?;
        let m = linalg::mul(f, &d, &self.src_inv);
        let arr: [[Fe; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| m[i][j]));
        let map = ProjMap::new(f, arr)?;
        for &(a, b) in &self.check_pairs {
            let img = map.apply_vec(f, &self.point(a, b));
            if !same_point(f, &img, &self.point(w[a] as usize, w[b] as usize)) {
                return None;
            }
        }
        for (i, l) in self.cfg.lines.iter().enumerate() {
            let ml = Line3::through(f, map.apply_vec(f, &l.u), map.apply_vec(f, &l.v)).ok()?;
            if ml != self.cfg.lines[w[i] as usize] {
                return None;
            }
        }
        // F(M x) must be proportional to F
        if !self.cfg.form.transform(&map.m).proportional(&self.cfg.form) {
            return None;
        }
        Some(map)
    }
}

/// Up to `count` five-tuples of incident pairs whose meeting points form a frame.
fn frames(f: &Field, pairs: &[(usize, usize)], meet: &[Vec<Option<[Fe; 4]>>], count: usize) -> Vec<[(usize, usize); 5]> {
    let pts: Vec<[Fe; 4]> = pairs.iter().map(|&(a, b)| meet[a][b].unwrap()).collect();
    let indep = |idx: &[usize]| linalg::rank(f, &idx.iter().map(|&i| pts[i].to_vec()).collect()) == idx.len();
    let mut out = vec![];
    let mut cur: Vec<usize> = vec![];
    fn rec(
        start: usize,
        cur: &mut Vec<usize>,
        n: usize,
        ok: &dyn Fn(&[usize]) -> bool,
        out: &mut Vec<Vec<usize>>,
        count: usize,
    ) {
        if out.len() >= count {
            return;
        }
        if cur.len() == 5 {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            if ok(cur) {
                rec(i + 1, cur, n, ok, out, count);
            }
            cur.pop();
            if out.len() >= count {
                return;
            }
        }
    }
    // general position: every subset of size <= 4 independent
    let ok = |c: &[usize]| -> bool {
        let k = c.len();
        if k <= 4 {
            return indep(c);
        }
        (0..5).all(|skip| {
            let sub: Vec<usize> = (0..5).filter(|&j| j != skip).map(|j| c[j]).collect();
            indep(&sub)
        })
    };
    let mut found = vec![];
    rec(0, &mut cur, pts.len(), &ok, &mut found, count);
    for c in found {
        out.push(std::array::from_fn(|i| pairs[c[i]]));
    }
    out
}

/// Candidate elements of W(E6) to try.
fn candidates<'g>(g: &'g WeylGroup, geom: &EckardtGeometry, prefilter: bool) -> Vec<&'g Perm> {
    if !prefilter {
        return g.elements.iter().collect();
    }
    let trios = weyl::trios();
    let mut is_eck = vec![false; trios.len()];
    for &(_, t) in &geom.points {
        is_eck[t] = true;
    }
    let index: std::collections::HashMap<[usize; 3], usize> = trios.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    g.elements
        .iter()
        .filter(|w| {
            trios.iter().enumerate().filter(|(i, _)| is_eck[*i]).all(|(_, t)| {
                let mut img = t.map(|l| w[l] as usize);
                img.sort();
                is_eck[index[&img]]
            })
        })
        .collect()
}

fn scan(lifter: &Lifter, cands: &[&Perm], mode: ScanMode) -> Vec<(Map3, Perm)> {
    let one = |w: &&Perm| lifter.lift(w).map(|m| (m, **w));
    match mode {
        #[cfg(feature = "parallel")]
        ScanMode::Parallel => {
            use rayon::prelude::*;
            cands.par_iter().filter_map(one).collect()
        }
        _ => cands.iter().filter_map(one).collect(),
    }
}

/// Subgroup of W(E6) generated by the given permutations.
pub fn generated_subgroup(gens: &[Perm]) -> HashSet<Perm> {
    let mut set: HashSet<Perm> = [weyl::IDENTITY].into();
    let mut frontier = vec![weyl::IDENTITY];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = weyl::compose(g, &x);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

/// The full automorphism group of the surface of `cfg`.
pub fn compute_aut(cfg: &LineConfiguration, opts: ScanOptions) -> Result<AutGroup, AutError> {
    let g = WeylGroup::get();
    let geom = eckardt::eckardt_points(cfg)?;
    let lifter = Lifter::new(cfg)?;
    let cands = candidates(g, &geom, opts.prefilter);
    let found = scan(&lifter, &cands, opts.mode);
    let elements: Vec<AutElement> =
        found.into_iter().map(|(matrix, perm)| AutElement { matrix, perm, class: g.class_of_element(&perm) }).collect();
    let order = elements.len();
    let perms: HashSet<Perm> = elements.iter().map(|e| e.perm).collect();
    // closure under composition
    let mut generators = vec![];
    let mut span: HashSet<Perm> = [weyl::IDENTITY].into();
    for (i, e) in elements.iter().enumerate() {
        if !span.contains(&e.perm) {
            generators.push(i);
            let gens: Vec<Perm> = generators.iter().map(|&j| elements[j].perm).collect();
            span = generated_subgroup(&gens);
        }
    }
    if span != perms || 51840 % order != 0 {
        return Err(AutError::NotAGroup);
    }
    let profile: Vec<(&'static str, usize)> = weyl::CLASSES
        .iter()
        .map(|c| (c.name, elements.iter().filter(|e| e.class.name == c.name).count()))
        .filter(|x| x.1 > 0)
        .collect();
    let refl: Vec<Perm> = elements.iter().filter(|e| e.class.name == "2A").map(|e| e.perm).collect();
    if refl.len() != geom.points.len() {
        return Err(AutError::ReflectionMismatch);
    }
    let reflection_order = generated_subgroup(&refl).len();
    let stratum = stratum(&profile, cfg.field.p())?;
    Ok(AutGroup {
        field: cfg.field.clone(),
        order,
        profile,
        generators,
        reflection_order,
        reflection_index: order / reflection_order,
        stratum,
        eckardt: geom,
        elements,
    })
}

/// Lines fixed by a permutation.
pub fn fixed_lines(p: &Perm) -> Vec<usize> {
    (0..27).filter(|&i| p[i] as usize == i).collect()
}

/// Each class-2A element fixes exactly the three lines of one Eckardt trio,
/// and distinct reflections give distinct Eckardt points.
pub fn reflections_match_eckardt(g: &AutGroup) -> bool {
    let trios = weyl::trios();
    let mut seen = HashSet::new();
    for e in g.elements.iter().filter(|e| e.class.name == "2A") {
        let fixed = fixed_lines(&e.perm);
        if fixed.len() != 3 {
            return false;
        }
        let t = [fixed[0], fixed[1], fixed[2]];
        let Some(ti) = trios.iter().position(|x| *x == t) else { return false };
        if !g.eckardt.points.iter().any(|p| p.1 == ti) || !seen.insert(ti) {
            return false;
        }
    }
    seen.len() == g.eckardt.points.len()
}

/// A class-2B involution fixes pointwise the invariant line meeting all other invariant lines.
pub fn involution_2b_fixes_line(cfg: &LineConfiguration, e: &AutElement) -> bool {
    let f = &cfg.field;
    let fixed = fixed_lines(&e.perm);
    let Some(&l) = fixed.iter().find(|&&l| fixed.iter().all(|&m| m == l || cfg.incidence[l][m])) else { return false };
    let line = &cfg.lines[l];
    let uv: [Fe; 4] = std::array::from_fn(|i| f.add(line.u[i], line.v[i]));
    [line.u, line.v, uv].iter().all(|x| same_point(f, &e.matrix.apply_vec(f, x), x))
}

/// For an element fixing some line, the class of its action on the 16 lines
/// skew to that line, mapped into W(E6); None if it fixes no line.
pub fn d5_image_class(e: &AutElement) -> Option<&'static str> {
    let l = fixed_lines(&e.perm).into_iter().next()?;
    let g = WeylGroup::get();
    let h = g.movers_to_e6()[l];
    let conj = weyl::compose(&h, &weyl::compose(&e.perm, &weyl::inverse(&h)));
    let w16 = weyl::restrict_to_d5(&conj)?;
    weyl::d5_class_of(&w16).ok().map(|c| c.e6_class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lines::find_lines;
    use crate::surface::CubicForm;

    fn fermat(f: &Field) -> CubicForm {
        CubicForm::from_terms(f, &[(1, [3, 0, 0, 0]), (1, [0, 3, 0, 0]), (1, [0, 0, 3, 0]), (1, [0, 0, 0, 3])])
    }

    #[test]
    fn fermat_char7() {
        let cfg = find_lines(&fermat(&Field::prime(7).unwrap()), 12).unwrap();
        let g = compute_aut(&cfg, ScanOptions::default()).unwrap();
        assert_eq!(g.order, 648);
        assert_eq!(g.stratum.display, "3C");
        assert_eq!(g.reflection_index, 1);
        assert!(reflections_match_eckardt(&g));
    }

    #[test]
    fn stratum_merges() {
        assert_eq!(stratum(&[("1A", 1), ("2A", 1)], 7).unwrap().name, "2A");
        assert_eq!(stratum(&[("1A", 1), ("5A", 1)], 2).unwrap().display, "3C (=5A=12A)");
        assert!(stratum(&[("1A", 1), ("2C", 1)], 7).is_err());
    }
}
