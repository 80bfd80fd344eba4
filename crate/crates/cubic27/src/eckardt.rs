//! Eckardt points, trihedral lines and the classification of Eckardt
//! configurations.

use crate::gf::Fe;
use crate::linalg;
use crate::lines::LineConfiguration;
use crate::projgeom::{Line3, ProjPoint};
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum EckardtError {
    #[error("no configuration row matches (span {span}, E {e}, L {l}, T {t}, p {p})")]
    NoRowMatches { span: i32, e: usize, l: usize, t: usize, p: u32 },
    #[error("a line through two Eckardt points off X carries {0} of them, not 3")]
    TrihedralCount(usize),
    #[error("Hesse check needs configuration C9")]
    NotC9,
}

/// Characteristic condition of a configuration row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharCond {
    Any,
    Is2,
    Not2,
    Not3,
    Not2Or5,
}

impl CharCond {
    pub fn holds(&self, p: u32) -> bool {
        match self {
            CharCond::Any => true,
            CharCond::Is2 => p == 2,
            CharCond::Not2 => p != 2,
            CharCond::Not3 => p != 3,
            CharCond::Not2Or5 => p != 2 && p != 5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConfigRow {
    pub name: &'static str,
    pub span_dim: i32,
    pub points: usize,
    pub exceptional: usize,
    pub trihedral: usize,
    pub cond: CharCond,
    /// order of the group generated by the reflections
    pub reflection_order: usize,
    pub reflection_group: &'static str,
}

macro_rules! row {
    ($n:expr, $s:expr, $e:expr, $l:expr, $t:expr, $c:ident, $g:expr, $gn:expr) => {
        ConfigRow {
            name: $n,
            span_dim: $s,
            points: $e,
            exceptional: $l,
            trihedral: $t,
            cond: CharCond::$c,
            reflection_order: $g,
            reflection_group: $gn,
        }
    };
}

pub const CONFIGURATIONS: [ConfigRow; 12] = [
    row!("C0", -1, 0, 0, 0, Any, 1, "1"),
    row!("C1", 0, 1, 0, 0, Any, 2, "2"),
    row!("C2", 1, 2, 1, 0, Not2, 4, "2^2"),
    row!("C3", 1, 3, 0, 1, Any, 6, "S3"),
    row!("C5", 1, 5, 1, 0, Is2, 16, "2^4"),
    row!("C4", 2, 4, 3, 1, Not2, 12, "S3 x S2"),
    row!("C6", 2, 6, 3, 4, Not2, 24, "S4"),
    row!("C9", 2, 9, 0, 12, Any, 54, "H3(3) : 2"),
    row!("C13", 2, 13, 3, 16, Is2, 192, "2^3 : S4"),
    row!("C10", 3, 10, 15, 10, Not2Or5, 120, "S5"),
    row!("C18", 3, 18, 27, 42, Not3, 648, "3^3 : S4"),
    row!("C45", 3, 45, 27, 240, Is2, 25920, "PSU4(2)"),
];

pub fn config_row(name: &str) -> Option<&'static ConfigRow> {
    CONFIGURATIONS.iter().find(|r| r.name == name)
}

/// Eckardt data of a line configuration.
#[derive(Clone, Debug)]
pub struct EckardtGeometry {
    /// Eckardt points with the index of their trio in `weyl::trios()`
    pub points: Vec<([Fe; 4], usize)>,
    /// lines off X through three Eckardt points, with the point indices
    pub trihedral: Vec<(Line3, [usize; 3])>,
    /// exceptional lines (by label) carrying at least two Eckardt points
    pub exceptional: Vec<usize>,
    pub per_line: [usize; 27],
    pub separable: [bool; 27],
    pub span_dim: i32,
    pub row: &'static ConfigRow,
}

impl EckardtGeometry {
    pub fn tag(&self) -> &'static str {
        self.row.name
    }
}

/// Whether the degree-2 map from the line to P^1 given by its tangent planes is separable.
pub fn separability(cfg: &LineConfiguration, line: usize) -> bool {
    let f = &cfg.field;
    if f.p() != 2 {
        return true;
    }
    let l = &cfg.lines[line];
    let mut comp = vec![];
    for i in 0..4 {
        let mut e = [f.zero(); 4];
        e[i] = f.one();
        let mut m = vec![l.u.to_vec(), l.v.to_vec()];
        m.extend(comp.iter().map(|r: &[Fe; 4]| r.to_vec()));
        m.push(e.to_vec());
        if linalg::rank(f, &m) == m.len() {
            comp.push(e);
        }
    }
    let uv: [Fe; 4] = std::array::from_fn(|i| f.add(l.u[i], l.v[i]));
    // the s t coefficient of r . grad F(s u + t v) for both complementary directions
    let inseparable = comp.iter().take(2).all(|r| {
        let mid = f.sub(f.sub(cfg.form.polar_at(r, &uv), cfg.form.polar_at(r, &l.u)), cfg.form.polar_at(r, &l.v));
        mid.is_zero()
    });
    !inseparable
}

pub fn eckardt_points(cfg: &LineConfiguration) -> Result<EckardtGeometry, EckardtError> {
    let f = &cfg.field;
    let mut points = vec![];
    let mut per_line = [0usize; 27];
    for (ti, t) in cfg.trios().iter().enumerate() {
        let pt = cfg.meet(t[0], t[1]).expect("trio lines meet");
        if cfg.lines[t[2]].contains(f, &pt) {
            points.push((ProjPoint::new(f, pt).unwrap().c, ti));
            for &l in t {
                per_line[l] += 1;
            }
        }
    }
    let span_dim = if points.is_empty() {
        -1
    } else {
        linalg::rank(f, &points.iter().map(|p| p.0.to_vec()).collect()) as i32 - 1
    };
    let mut exceptional = std::collections::BTreeSet::new();
    let mut tri: BTreeMap<Line3, Vec<usize>> = BTreeMap::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let l = Line3::through(f, points[i].0, points[j].0).unwrap();
            if let Some(x) = cfg.index_of(&l) {
                exceptional.insert(x);
            } else {
                tri.entry(l).or_default();
            }
        }
    }
    let mut trihedral = vec![];
    for (l, _) in tri {
        let on: Vec<usize> = (0..points.len()).filter(|&k| l.contains(f, &points[k].0)).collect();
        if on.len() != 3 {
            return Err(EckardtError::TrihedralCount(on.len()));
        }
        trihedral.push((l, [on[0], on[1], on[2]]));
    }
    let p = f.p();
    let (e, lc, t) = (points.len(), exceptional.len(), trihedral.len());
    let row = CONFIGURATIONS
        .iter()
        .find(|r| r.span_dim == span_dim && r.points == e && r.exceptional == lc && r.trihedral == t && r.cond.holds(p))
        .ok_or(EckardtError::NoRowMatches { span: span_dim, e, l: lc, t, p })?;
    let separable = std::array::from_fn(|l| separability(cfg, l));
    Ok(EckardtGeometry { points, trihedral, exceptional: exceptional.into_iter().collect(), per_line, separable, span_dim, row })
}

/// The nine Eckardt points and twelve trihedral lines of a C9 configuration
/// form a (9_4 12_3) configuration.
pub fn hesse_check(g: &EckardtGeometry) -> Result<bool, EckardtError> {
    if g.row.name != "C9" {
        return Err(EckardtError::NotC9);
    }
    let mut on = vec![0usize; g.points.len()];
    for (_, pts) in &g.trihedral {
        for &p in pts {
            on[p] += 1;
        }
    }
    Ok(g.points.len() == 9 && g.trihedral.len() == 12 && on.iter().all(|&c| c == 4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::lines::find_lines;
    use crate::surface::CubicForm;

    fn fermat(f: &Field) -> CubicForm {
        CubicForm::from_terms(f, &[(1, [3, 0, 0, 0]), (1, [0, 3, 0, 0]), (1, [0, 0, 3, 0]), (1, [0, 0, 0, 3])])
    }

    #[test]
    fn fermat_char2() {
        let f = Field::gf(2, 2).unwrap();
        let g = eckardt_points(&find_lines(&fermat(&f), 12).unwrap()).unwrap();
        assert_eq!(g.tag(), "C45");
        assert_eq!(g.trihedral.len(), 240);
        assert!(g.per_line.iter().all(|&c| c == 5));
        assert!(g.separable.iter().all(|&s| !s));
    }

    #[test]
    fn fermat_char7() {
        let f = Field::prime(7).unwrap();
        let g = eckardt_points(&find_lines(&fermat(&f), 12).unwrap()).unwrap();
        assert_eq!((g.points.len(), g.exceptional.len(), g.trihedral.len()), (18, 27, 42));
        assert_eq!(g.tag(), "C18");
        assert!(g.per_line.iter().all(|&c| c == 2));
        assert!(hesse_check(&g).is_err());
    }
}
