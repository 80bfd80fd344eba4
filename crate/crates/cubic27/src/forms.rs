//! Normal forms for every automorphism stratum, plus the Sylvester and Emch
//! general forms.

use crate::gf::{Fe, Field};
use crate::mpoly::MPoly;
use crate::surface::CubicForm;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum FormsError {
    #[error("unknown stratum {0}")]
    UnknownStratum(String),
    #[error("no normal form for stratum {stratum} in characteristic {p}")]
    InvalidCharacteristic { stratum: String, p: u32 },
    #[error("stratum {stratum} takes {expected} parameters, got {got}")]
    Arity { stratum: String, expected: usize, got: usize },
    #[error("parameter {0} must be nonzero")]
    ZeroParameter(usize),
    #[error("the supplied value does not square to 3")]
    NotSqrt3,
    #[error("Sylvester forms need characteristic other than 2 and 3")]
    SylvesterCharacteristic,
}

/// Characteristics in which a normal form applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharRule {
    Any,
    Is(u32),
    Not(&'static [u32]),
}

impl CharRule {
    pub fn holds(&self, p: u32) -> bool {
        match self {
            CharRule::Any => true,
            CharRule::Is(q) => p == *q,
            CharRule::Not(qs) => !qs.contains(&p),
        }
    }
    pub fn describe(&self) -> String {
        match self {
            CharRule::Any => "any".into(),
            CharRule::Is(q) => format!("= {q}"),
            CharRule::Not(qs) => qs.iter().map(|q| format!("!= {q}")).collect::<Vec<_>>().join(", "),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct NormalFormSpec {
    pub stratum: &'static str,
    pub chars: CharRule,
    pub arity: usize,
    pub params: &'static [&'static str],
    pub formula: &'static str,
}

macro_rules! nf {
    ($s:expr, $c:expr, [$($p:expr),*], $f:expr) => {
        NormalFormSpec { stratum: $s, chars: $c, arity: { let a: &[&str] = &[$($p),*]; a.len() }, params: &[$($p),*], formula: $f }
    };
}

pub const NORMAL_FORMS: [NormalFormSpec; 18] = [
    nf!("2A", CharRule::Not(&[2]), ["c0", "c1", "c2"], "(x0+x1)(x0x1+c0x2^2+c1x3^2+c2x2x3)+x2x3(x2+x3)"),
    nf!("2A", CharRule::Is(2), ["c0", "c1", "c2"], "x0x1x2+(x0+x1)^2x3+c0(x0+x1)x3^2+c1x2^3+c2x2x3^2+x3^3"),
    nf!("2B", CharRule::Not(&[2]), ["c0", "c1"], "x0^2(x2+c0x3)+x1^2(c1x2+x3)+x2x3(x2+x3)"),
    nf!("2B", CharRule::Is(2), ["c0", "c1"], "x0^3+x1^3+x2^3+x3^3+c0x2x3(x0+x1)+c1x0x1(x2+x3)"),
    nf!("3A", CharRule::Not(&[3]), ["c"], "x0^3+x1^3+x2^3+x3^3+cx0x1x2"),
    nf!("3A", CharRule::Is(3), ["c"], "x0^3+x0x3^2-x1x2^2+x1^2x3+cx1x3^2"),
    nf!("3C", CharRule::Not(&[3]), [], "x0^3+x1^3+x2^3+x3^3"),
    nf!("3D", CharRule::Not(&[3]), ["c0", "c1"], "x0^3+x1^3+x2^3+x3^3+c0x0x1x2+c1(x0+x1+x2)x3^2"),
    nf!("3D", CharRule::Is(3), ["c0", "c1"], "(c0(x0+x1+x2)+c1x3)(x0x1+x0x2+x1x2)+x0x1x2+(x0+x1+x2)x3^2"),
    nf!("4A", CharRule::Not(&[2]), ["c"], "x3^2x2+x2^2x0+x1(x1-x0)(x1-cx0)"),
    nf!("4A", CharRule::Is(2), ["c"], "x0^3+x1^3+x2^3+x3^3+c(x0x1x2+x0x1x3+x0x2x3+x1x2x3)"),
    nf!("4B", CharRule::Any, ["c"], "x0^3+x1^3+x2^3+x3^3+c(x0x1x2+x0x1x3+x0x2x3+x1x2x3)"),
    nf!("5A", CharRule::Not(&[2, 5]), [], "sum_{i!=j} xi^2xj + 2 sum_{i<j<k} xixjxk"),
    nf!("6E", CharRule::Not(&[2, 3]), ["c"], "x0^3+x1^3+x2^3+(x0+x1+x2)x3^2+cx0x1x2"),
    nf!("6E", CharRule::Is(3), ["c"], "c(x0+x1+x2)(x0x1+x0x2+x1x2)+x0x1x2+(x0+x1+x2)x3^2"),
    nf!("6E", CharRule::Is(2), ["c"], "x0^3+x1^3+x2^3+x3^3+c(x0x1x2+x0x1x3+x0x2x3+x1x2x3)"),
    nf!("8A", CharRule::Not(&[2]), [], "x0^3+x0x3^2-x1x2^2+x1^2x3"),
    nf!("12A", CharRule::Not(&[2, 3]), ["sqrt3"], "x0^3+x1^3+x2^3+x3^3+3(sqrt3-1)x0x1x2"),
];

/// The normal form row for a stratum in characteristic `p`.
pub fn spec_for(stratum: &str, p: u32) -> Result<&'static NormalFormSpec, FormsError> {
    let mut rows = NORMAL_FORMS.iter().filter(|s| s.stratum == stratum).peekable();
    if rows.peek().is_none() {
        return Err(FormsError::UnknownStratum(stratum.into()));
    }
    rows.find(|s| s.chars.holds(p)).ok_or(FormsError::InvalidCharacteristic { stratum: stratum.into(), p })
}

/// Small helper for writing forms as polynomial expressions.
struct Ring<'a> {
    f: &'a Field,
}

impl Ring<'_> {
    fn x(&self, i: usize) -> MPoly {
        MPoly::var(self.f, i)
    }
    fn k(&self, a: Fe) -> MPoly {
        MPoly::constant(a)
    }
    fn n(&self, a: i64) -> MPoly {
        MPoly::constant(self.f.from_i64(a))
    }
    fn sum(&self, ps: &[MPoly]) -> MPoly {
        ps.iter().fold(MPoly::zero(), |acc, p| acc.add(self.f, p))
    }
    fn prod(&self, ps: &[MPoly]) -> MPoly {
        ps.iter().fold(self.n(1), |acc, p| acc.mul(self.f, p))
    }
    fn cube(&self, p: &MPoly) -> MPoly {
        p.pow(self.f, 3)
    }
    fn fermat(&self) -> MPoly {
        self.sum(&(0..4).map(|i| self.cube(&self.x(i))).collect::<Vec<_>>())
    }
    fn sigma3(&self) -> MPoly {
        let x: Vec<MPoly> = (0..4).map(|i| self.x(i)).collect();
        let mut terms = vec![];
        for i in 0..4 {
            for j in i + 1..4 {
                for k in j + 1..4 {
                    terms.push(self.prod(&[x[i].clone(), x[j].clone(), x[k].clone()]));
                }
            }
        }
        self.sum(&terms)
    }
}

/// Instantiate the normal form of `stratum` over `field` with the given parameters.
pub fn generate(field: &Field, stratum: &str, params: &[Fe]) -> Result<CubicForm, FormsError> {
    let p = field.p();
    let spec = spec_for(stratum, p)?;
    if params.len() != spec.arity {
        return Err(FormsError::Arity { stratum: stratum.into(), expected: spec.arity, got: params.len() });
    }
    let r = Ring { f: field };
    let f = field;
    let x: Vec<MPoly> = (0..4).map(|i| r.x(i)).collect();
    let c = |i: usize| r.k(params[i]);
    let s012 = r.sum(&[x[0].clone(), x[1].clone(), x[2].clone()]);
    let e2 = r.sum(&[
        x[0].mul(f, &x[1]),
        x[0].mul(f, &x[2]),
        x[1].mul(f, &x[2]),
    ]);
    let x012 = r.prod(&[x[0].clone(), x[1].clone(), x[2].clone()]);
    let x3sq = x[3].pow(f, 2);
    let poly = match (stratum, p) {
        ("2A", 2) => {
            let s01 = x[0].add(f, &x[1]);
            r.sum(&[
                x012.clone(),
                s01.pow(f, 2).mul(f, &x[3]),
                r.prod(&[c(0), s01.clone(), x3sq.clone()]),
                c(1).mul(f, &r.cube(&x[2])),
                r.prod(&[c(2), x[2].clone(), x3sq.clone()]),
                r.cube(&x[3]),
            ])
        }
        ("2A", _) => {
            let inner = r.sum(&[
                x[0].mul(f, &x[1]),
                c(0).mul(f, &x[2].pow(f, 2)),
                c(1).mul(f, &x3sq),
                r.prod(&[c(2), x[2].clone(), x[3].clone()]),
            ]);
            r.sum(&[
                x[0].add(f, &x[1]).mul(f, &inner),
                r.prod(&[x[2].clone(), x[3].clone(), x[2].add(f, &x[3])]),
            ])
        }
        ("2B", 2) => r.sum(&[
            r.fermat(),
            r.prod(&[c(0), x[2].clone(), x[3].clone(), x[0].add(f, &x[1])]),
            r.prod(&[c(1), x[0].clone(), x[1].clone(), x[2].add(f, &x[3])]),
        ]),
        ("2B", _) => r.sum(&[
            x[0].pow(f, 2).mul(f, &x[2].add(f, &c(0).mul(f, &x[3]))),
            x[1].pow(f, 2).mul(f, &c(1).mul(f, &x[2]).add(f, &x[3])),
            r.prod(&[x[2].clone(), x[3].clone(), x[2].add(f, &x[3])]),
        ]),
        ("3A", 3) => r.sum(&[
            r.cube(&x[0]),
            x[0].mul(f, &x3sq),
            r.prod(&[r.n(-1), x[1].clone(), x[2].pow(f, 2)]),
            x[1].pow(f, 2).mul(f, &x[3]),
            r.prod(&[c(0), x[1].clone(), x3sq.clone()]),
        ]),
        ("3A", _) => r.fermat().add(f, &c(0).mul(f, &x012)),
        ("3C", _) => r.fermat(),
        ("3D", 3) => r.sum(&[
            c(0).mul(f, &s012).add(f, &c(1).mul(f, &x[3])).mul(f, &e2),
            x012.clone(),
            s012.mul(f, &x3sq),
        ]),
        ("3D", _) => r.sum(&[r.fermat(), c(0).mul(f, &x012), r.prod(&[c(1), s012.clone(), x3sq.clone()])]),
        ("4A" | "4B" | "6E", 2) | ("4B", _) => r.fermat().add(f, &c(0).mul(f, &r.sigma3())),
        ("4A", _) => r.sum(&[
            x3sq.mul(f, &x[2]),
            x[2].pow(f, 2).mul(f, &x[0]),
            r.prod(&[x[1].clone(), x[1].sub(f, &x[0]), x[1].sub(f, &c(0).mul(f, &x[0]))]),
        ]),
        ("5A", _) => {
            let mut terms = vec![];
            for i in 0..4 {
                for j in 0..4 {
                    if i != j {
                        terms.push(x[i].pow(f, 2).mul(f, &x[j]));
                    }
                }
            }
            terms.push(r.n(2).mul(f, &r.sigma3()));
            r.sum(&terms)
        }
        ("6E", 3) => r.sum(&[r.prod(&[c(0), s012.clone(), e2.clone()]), x012.clone(), s012.mul(f, &x3sq)]),
        ("6E", _) => r.sum(&[
            r.cube(&x[0]),
            r.cube(&x[1]),
            r.cube(&x[2]),
            s012.mul(f, &x3sq),
            c(0).mul(f, &x012),
        ]),
        ("8A", _) => r.sum(&[
            r.cube(&x[0]),
            x[0].mul(f, &x3sq),
            r.prod(&[r.n(-1), x[1].clone(), x[2].pow(f, 2)]),
            x[1].pow(f, 2).mul(f, &x[3]),
        ]),
        ("12A", _) => {
            let s = params[0];
            if f.mul(s, s) != f.from_i64(3) {
                return Err(FormsError::NotSqrt3);
            }
            let lambda = f.mul(f.from_i64(3), f.sub(s, f.one()));
            r.fermat().add(f, &r.k(lambda).mul(f, &x012))
        }
        _ => unreachable!("every row of NORMAL_FORMS is handled"),
    };
    Ok(CubicForm::from_mpoly(field, &poly))
}

/// Sum of c_i x_i^3 over five coordinates with x4 = -(x0+x1+x2+x3).
pub fn sylvester(field: &Field, c: &[Fe; 5]) -> Result<CubicForm, FormsError> {
    if matches!(field.p(), 2 | 3) {
        return Err(FormsError::SylvesterCharacteristic);
    }
    if let Some(i) = c.iter().position(|a| a.is_zero()) {
        return Err(FormsError::ZeroParameter(i));
    }
    let r = Ring { f: field };
    let mut x: Vec<MPoly> = (0..4).map(|i| r.x(i)).collect();
    x.push(r.sum(&x).scale(field, field.from_i64(-1)));
    let terms: Vec<MPoly> = (0..5).map(|i| r.k(c[i]).mul(field, &r.cube(&x[i]))).collect();
    Ok(CubicForm::from_mpoly(field, &r.sum(&terms)))
}

/// Fermat plus a_012 x0x1x2 + a_013 x0x1x3 + a_023 x0x2x3 + a_123 x1x2x3.
pub fn emch(field: &Field, a: &[Fe; 4]) -> CubicForm {
    let r = Ring { f: field };
    let triples = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    let mut terms = vec![r.fermat()];
    for (t, &ai) in triples.iter().zip(a) {
        terms.push(r.prod(&[r.k(ai), r.x(t[0]), r.x(t[1]), r.x(t[2])]));
    }
    CubicForm::from_mpoly(field, &r.sum(&terms))
}

/// Stratum specializations: arrows `from -> to` meaning the closure of `from`
/// contains `to`. Merged strata are written with `=`.
pub fn strata_poset(p: u32) -> Vec<(&'static str, &'static str)> {
    match p {
        2 => vec![
            ("1A", "2A"),
            ("2A", "2B"),
            ("2A", "3D"),
            ("2B", "4A=4B=6E"),
            ("3D", "4A=4B=6E"),
            ("3D", "3A"),
            ("4A=4B=6E", "3C=5A=12A"),
            ("3A", "3C=5A=12A"),
        ],
        3 => vec![
            ("1A", "2A"),
            ("2A", "2B"),
            ("2A", "3D"),
            ("2A", "4A"),
            ("2B", "4B"),
            ("2B", "6E"),
            ("3D", "4B"),
            ("3D", "6E"),
            ("3D", "3A"),
            ("4B", "5A"),
            ("6E", "5A"),
            ("3A", "8A=12A"),
            ("4A", "8A=12A"),
        ],
        5 => vec![
            ("1A", "2A"),
            ("2A", "2B"),
            ("2A", "3D"),
            ("2A", "4A"),
            ("2B", "4B"),
            ("2B", "6E"),
            ("3D", "4B"),
            ("3D", "6E"),
            ("3D", "3A"),
            ("4B", "3C"),
            ("6E", "3C"),
            ("3A", "3C"),
            ("3A", "12A"),
            ("4A", "12A"),
            ("4A", "8A"),
        ],
        _ => vec![
            ("1A", "2A"),
            ("2A", "2B"),
            ("2A", "3D"),
            ("2A", "4A"),
            ("2B", "4B"),
            ("2B", "6E"),
            ("3D", "4B"),
            ("3D", "6E"),
            ("3D", "3A"),
            ("4B", "5A"),
            ("4B", "3C"),
            ("6E", "5A"),
            ("6E", "3C"),
            ("3A", "3C"),
            ("3A", "12A"),
            ("4A", "12A"),
            ("4A", "8A"),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn permuted(form: &CubicForm, perm: [usize; 4]) -> CubicForm {
        let f = &form.field;
        let mut a = [[f.zero(); 4]; 4];
        for (i, &j) in perm.iter().enumerate() {
            a[i][j] = f.one();
        }
        form.transform(&a)
    }

    #[test]
    fn fermat_and_12a_coefficient() {
        let f = Field::prime(7).unwrap();
        let g = generate(&f, "3C", &[]).unwrap();
        assert_eq!(g, CubicForm::from_terms(&f, &[(1, [3, 0, 0, 0]), (1, [0, 3, 0, 0]), (1, [0, 0, 3, 0]), (1, [0, 0, 0, 3])]));
        let f = Field::prime(11).unwrap();
        let g = generate(&f, "12A", &[f.from_i64(5)]).unwrap();
        assert_eq!(g.coeff([1, 1, 1, 0]), f.one());
        assert_eq!(generate(&f, "12A", &[f.from_i64(4)]), Err(FormsError::NotSqrt3));
    }

    #[test]
    fn clebsch_expansion() {
        let f = Field::prime(7).unwrap();
        let g = generate(&f, "5A", &[]).unwrap();
        for m in crate::surface::MONOMIALS {
            let distinct = m.iter().filter(|&&e| e > 0).count();
            let want = match (m.iter().max().unwrap(), distinct) {
                (3, _) => 0,
                (2, 2) => 1,
                (1, 3) => 2,
                _ => unreachable!(),
            };
            assert_eq!(g.coeff(m), f.from_i64(want), "{m:?}");
        }
    }

    #[test]
    fn characteristic_and_arity_checks() {
        let f = Field::prime(3).unwrap();
        assert!(matches!(generate(&f, "3C", &[]), Err(FormsError::InvalidCharacteristic { .. })));
        assert!(matches!(generate(&f, "9Z", &[]), Err(FormsError::UnknownStratum(_))));
        assert!(matches!(generate(&f, "3A", &[]), Err(FormsError::Arity { expected: 1, .. })));
        let f2 = Field::prime(2).unwrap();
        assert!(generate(&f2, "8A", &[]).is_err());
        assert!(generate(&Field::prime(5).unwrap(), "5A", &[]).is_err());
    }

    #[test]
    fn advertised_symmetries() {
        let f = Field::prime(101).unwrap();
        let (a, b) = (f.from_i64(17), f.from_i64(29));
        let g3d = generate(&f, "3D", &[a, b]).unwrap();
        assert_eq!(permuted(&g3d, [1, 2, 0, 3]), g3d);
        let f2 = Field::gf(2, 7).unwrap();
        let (a2, b2) = (f2.gen(), f2.mul(f2.gen(), f2.gen()));
        let g2b = generate(&f2, "2B", &[a2, b2]).unwrap();
        assert_eq!(permuted(&g2b, [1, 0, 3, 2]), g2b);
        let g4b = generate(&f, "4B", &[a]).unwrap();
        assert_eq!(permuted(&g4b, [2, 0, 3, 1]), g4b);
        // 4A: diag(1,1,-1,i) over GF(5), where i = 2
        let f5 = Field::prime(5).unwrap();
        let g4a = generate(&f5, "4A", &[f5.from_i64(3)]).unwrap();
        let mut m = [[f5.zero(); 4]; 4];
        m[0][0] = f5.one();
        m[1][1] = f5.one();
        m[2][2] = f5.from_i64(-1);
        m[3][3] = f5.from_i64(2);
        assert_eq!(g4a.transform(&m), g4a);
    }

    #[test]
    fn sylvester_and_emch() {
        let f = Field::prime(7).unwrap();
        assert!(matches!(sylvester(&f, &[f.one(), f.zero(), f.one(), f.one(), f.one()]), Err(FormsError::ZeroParameter(1))));
        let ones = [f.one(); 5];
        let s = sylvester(&f, &ones).unwrap();
        // -3 (sum xi^2xj + 2 sigma3) is the Clebsch form
        assert!(s.proportional(&generate(&f, "5A", &[]).unwrap()));
        let e = emch(&f, &[f.zero(); 4]);
        assert_eq!(e, generate(&f, "3C", &[]).unwrap());
        let m1 = emch(&f, &[f.from_i64(-1); 4]);
        let one = [f.one(); 4];
        assert!(m1.grad(&one).iter().all(|g| g.is_zero()));
    }
}
