//! Polynomial stability data: the coefficient vectors `rho_i(b)`, exact
//! phase-ordering checks, the five limit types, polynomial central charges
//! `Z(m)` and their asymptotic phase comparison.
//!
//! Phases are never computed as angles. A half-plane is given by a boundary
//! direction `d`: it is `{z : cross(d, z) > 0}` together with the ray `-d`,
//! and inside it `phi(z1) < phi(z2)` iff `cross(z1, z2) > 0`.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::charges::ComplexExact;
use crate::chern::{frac, int, scalar_str, sign, twist, ChernCharacter, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabCoeffs {
    #[serde(with = "scalar_str")]
    pub b: Scalar,
    pub rho: [ComplexExact; 4],
}

impl StabCoeffs {
    pub fn rho0(&self) -> &ComplexExact {
        &self.rho[0]
    }
    pub fn rho1(&self) -> &ComplexExact {
        &self.rho[1]
    }
    pub fn rho2(&self) -> &ComplexExact {
        &self.rho[2]
    }
    pub fn rho3(&self) -> &ComplexExact {
        &self.rho[3]
    }
}

/// `rho_0 = -1`, `rho_1 = b + i`, `rho_2 = (1/2 - b^2/2) - i b`,
/// `rho_3 = (-b/2 + b^3/6) + i(-1/6 + b^2/2)`.
pub fn rho_coeffs(b: &Scalar) -> StabCoeffs {
    let b2 = b * b;
    let half = frac(1, 2);
    StabCoeffs {
        b: b.clone(),
        rho: [
            ComplexExact::real(int(-1)),
            ComplexExact::new(b.clone(), int(1)),
            ComplexExact::new(&half - &b2 * &half, -b.clone()),
            ComplexExact::new(-b * &half + &b2 * b / int(6), frac(-1, 6) + &b2 * &half),
        ],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LimitType {
    DT,
    PT,
    LargeVolume,
    DualPT,
    DualDT,
}

impl LimitType {
    pub const ALL: [LimitType; 5] = [
        LimitType::DT,
        LimitType::PT,
        LimitType::LargeVolume,
        LimitType::DualPT,
        LimitType::DualDT,
    ];
}

/// Interval rule with thresholds `-1/sqrt(3)`, `0`, `1/sqrt(3)`, decided by
/// comparing `b^2` with `1/3` exactly.
pub fn classify_limit_type(b: &Scalar) -> LimitType {
    let big = b * b > frac(1, 3);
    match (sign(b), big) {
        (Ordering::Equal, _) => LimitType::LargeVolume,
        (Ordering::Less, true) => LimitType::DT,
        (Ordering::Less, false) => LimitType::PT,
        (Ordering::Greater, false) => LimitType::DualPT,
        (Ordering::Greater, true) => LimitType::DualDT,
    }
}

/// The half-plane `{z : cross(boundary, z) > 0} ∪ (-boundary) R_{>0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfPlane {
    pub boundary: ComplexExact,
}

impl HalfPlane {
    pub fn new(boundary: ComplexExact) -> Result<Self> {
        if boundary.is_zero() {
            return Err(Error::domain("half-plane boundary must be nonzero"));
        }
        Ok(HalfPlane { boundary })
    }

    /// Phases in `(0, 1]`.
    pub fn upper() -> Self {
        HalfPlane {
            boundary: ComplexExact::real(int(1)),
        }
    }

    pub fn contains(&self, z: &ComplexExact) -> bool {
        match sign(&self.boundary.cross(z)) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => !z.is_zero() && self.boundary.dot(z).is_negative(),
        }
    }
}

impl Default for HalfPlane {
    fn default() -> Self {
        Self::upper()
    }
}

impl Serialize for HalfPlane {
    /// `[start, end]`: directions from `boundary` (excluded) counterclockwise
    /// to `-boundary` (included).
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.boundary.clone(), -&self.boundary].serialize(s)
    }
}

/// Relation between consecutive entries of a claimed phase chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rel {
    Greater,
    Equal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub name: String,
    #[serde(with = "scalar_str")]
    pub value: Scalar,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderingCheck {
    pub holds: bool,
    /// A half-plane containing every vector, in which the chain holds.
    pub witness: Option<HalfPlane>,
    pub breakdown: Vec<Inequality>,
}

/// Checks `phi(z_0) R_0 phi(z_1) R_1 ... phi(z_n)` (descending) inside some
/// half-plane. Every pair is tested by the sign of its determinant; a
/// witness boundary is `z_last - z_first`, or a normal of `z_0` if all are tied.
pub fn check_chain(zs: &[ComplexExact], rels: &[Rel]) -> OrderingCheck {
    assert_eq!(
        rels.len() + 1,
        zs.len(),
        "one relation per consecutive pair"
    );
    let mut holds = zs.iter().all(|z| !z.is_zero());
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            let tied = rels[i..j].iter().all(|r| *r == Rel::Equal);
            let cross = zs[j].cross(&zs[i]);
            let ok = if tied {
                cross.is_zero() && zs[i].dot(&zs[j]).is_positive()
            } else {
                cross.is_positive()
            };
            holds &= ok;
        }
    }
    let witness = holds.then(|| {
        let first = &zs[0];
        let last = &zs[zs.len() - 1];
        let d = if first.cross(last).is_zero() {
            ComplexExact::new(first.im.clone(), -first.re.clone())
        } else {
            last - first
        };
        let hp = HalfPlane { boundary: d };
        debug_assert!(zs.iter().all(|z| hp.contains(z)));
        hp
    });
    OrderingCheck {
        holds,
        witness,
        breakdown: Vec::new(),
    }
}

/// The vectors and relations whose phase chain characterizes each type.
pub fn limit_chain(c: &StabCoeffs, ty: LimitType) -> (Vec<ComplexExact>, Vec<Rel>) {
    let r0 = c.rho0().clone();
    let r1 = c.rho1().clone();
    let m1 = -c.rho1();
    let m2 = -c.rho2();
    let r3 = c.rho3().clone();
    let m3 = -c.rho3();
    use Rel::*;
    match ty {
        LimitType::PT => (vec![m2, r0, m3, r1], vec![Greater, Greater, Greater]),
        LimitType::DT => (vec![m2, m3, r0, r1], vec![Greater, Greater, Greater]),
        LimitType::LargeVolume => (vec![m2, r0, m3, r1], vec![Equal, Greater, Equal]),
        LimitType::DualPT => (vec![r0, m2, r1, m3], vec![Greater, Greater, Greater]),
        LimitType::DualDT => (vec![m1, r0, r3, m2], vec![Greater, Greater, Greater]),
    }
}

pub fn check_limit_type(c: &StabCoeffs, ty: LimitType) -> OrderingCheck {
    let (zs, rels) = limit_chain(c, ty);
    check_chain(&zs, &rels)
}

fn ineq(name: &str, value: Scalar) -> Inequality {
    Inequality {
        name: name.into(),
        holds: value.is_positive(),
        value,
    }
}

/// `phi(-rho_2) > phi(rho_0) > phi(-rho_3) > phi(rho_1)`, with the four
/// sign conditions reported individually: `Im(-rho_2) < 0` (that is, `b < 0`),
/// `Im(-rho_3) > 0`, `det(rho_1, -rho_3) > 0` and `det(rho_1, -rho_2) > 0`.
pub fn pt_config_check(c: &StabCoeffs) -> OrderingCheck {
    let mut out = check_limit_type(c, LimitType::PT);
    let m2 = -c.rho2();
    let m3 = -c.rho3();
    out.breakdown = vec![
        ineq("-Im(-rho2)", -m2.im.clone()),
        ineq("Im(-rho3)", m3.im.clone()),
        ineq("det(rho1,-rho3)", c.rho1().cross(&m3)),
        ineq("det(rho1,-rho2)", c.rho1().cross(&m2)),
    ];
    out
}

pub fn dt_config_check(c: &StabCoeffs) -> OrderingCheck {
    check_limit_type(c, LimitType::DT)
}

pub fn dual_pt_config_check(c: &StabCoeffs) -> OrderingCheck {
    check_limit_type(c, LimitType::DualPT)
}

pub fn dual_dt_config_check(c: &StabCoeffs) -> OrderingCheck {
    check_limit_type(c, LimitType::DualDT)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub b: Scalar,
    pub ty: LimitType,
    pub witness: Option<HalfPlane>,
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Classification", 3)?;
        st.serialize_field("b", &self.b.to_string())?;
        st.serialize_field("type", &self.ty)?;
        st.serialize_field("witness_interval", &self.witness)?;
        st.end()
    }
}

/// Interval classification together with the half-plane witnessing its chain.
pub fn classify(b: &Scalar) -> Classification {
    let ty = classify_limit_type(b);
    let check = check_limit_type(&rho_coeffs(b), ty);
    Classification {
        b: b.clone(),
        ty,
        witness: check.witness,
    }
}

/// `Z(m) = sum_k coeff[k] m^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyCharge {
    pub coeff: [ComplexExact; 4],
}

impl PolyCharge {
    pub fn is_zero(&self) -> bool {
        self.coeff.iter().all(ComplexExact::is_zero)
    }

    pub fn eval(&self, m: &Scalar) -> ComplexExact {
        self.coeff
            .iter()
            .rev()
            .fold(ComplexExact::zero(), |acc, c| &acc.scale(m) + c)
    }

    pub fn scale(&self, k: &Scalar) -> PolyCharge {
        PolyCharge {
            coeff: self.coeff.clone().map(|c| c.scale(k)),
        }
    }

    /// Highest-degree nonzero coefficient.
    pub fn leading(&self) -> Option<&ComplexExact> {
        self.coeff.iter().rev().find(|c| !c.is_zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChargeMode {
    /// `Z(m) = sum rho_k(b) m^k v_{3-k}`.
    RhoOfB(Scalar),
    /// `Z(m) = (f2 m^2 / 2) ch_1^B - ch_3^B + i m (ch_2^B - (g2 m^2 / 6) ch_0^B)`
    /// with `B = beta` times the polarization.
    General {
        f2: Scalar,
        g2: Scalar,
        beta: Scalar,
    },
}

pub fn poly_charge(v: &ChernCharacter, mode: &ChargeMode) -> Result<PolyCharge> {
    match mode {
        ChargeMode::RhoOfB(b) => {
            let c = rho_coeffs(b);
            let a = v.as_array();
            Ok(PolyCharge {
                coeff: std::array::from_fn(|k| c.rho[k].scale(&a[3 - k])),
            })
        }
        ChargeMode::General { f2, g2, beta } => {
            if !f2.is_positive() || !g2.is_positive() {
                return Err(Error::domain("f2 and g2 must be positive"));
            }
            let t = twist(v, beta);
            Ok(PolyCharge {
                coeff: [
                    ComplexExact::real(-t.c3().clone()),
                    ComplexExact::new(Scalar::zero(), t.c2().clone()),
                    ComplexExact::real(f2 / int(2) * t.c1()),
                    ComplexExact::new(Scalar::zero(), -(g2 / int(6)) * t.c0()),
                ],
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseOrder {
    Precedes,
    Equal,
    Succeeds,
}

/// Coefficients of `sum_k (sum_{i+j=k} f(a_i, b_j)) m^k`.
fn pair_poly(
    a: &PolyCharge,
    b: &PolyCharge,
    f: impl Fn(&ComplexExact, &ComplexExact) -> Scalar,
) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); 7];
    for (i, x) in a.coeff.iter().enumerate() {
        for (j, y) in b.coeff.iter().enumerate() {
            out[i + j] += f(x, y);
        }
    }
    out
}

fn leading_sign(p: &[Scalar]) -> Ordering {
    p.iter()
        .rev()
        .map(sign)
        .find(|s| *s != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

/// Whether `Z(m)` lies in `hp` for all `m >> 0`.
pub fn eventually_in(z: &PolyCharge, hp: &HalfPlane) -> bool {
    let d = PolyCharge {
        coeff: [
            hp.boundary.clone(),
            ComplexExact::zero(),
            ComplexExact::zero(),
            ComplexExact::zero(),
        ],
    };
    match leading_sign(&pair_poly(&d, z, ComplexExact::cross)) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => leading_sign(&pair_poly(&d, z, ComplexExact::dot)) == Ordering::Less,
    }
}

/// Asymptotic order of `phi(F)(m)` and `phi(E)(m)` for `m >> 0`, inside the
/// half-plane `hp`. Decided by the leading sign of the polynomial
/// `cross(Z_F(m), Z_E(m))`, which covers ties between leading terms.
pub fn compare_poly_phase_in(f: &PolyCharge, e: &PolyCharge, hp: &HalfPlane) -> Result<PhaseOrder> {
    if f.leading().is_none() || e.leading().is_none() {
        return Err(Error::domain("zero polynomial charge"));
    }
    if !eventually_in(f, hp) || !eventually_in(e, hp) {
        return Err(Error::domain(
            "charge not in the chosen half-plane for large m",
        ));
    }
    Ok(match leading_sign(&pair_poly(f, e, ComplexExact::cross)) {
        Ordering::Greater => PhaseOrder::Precedes,
        Ordering::Less => PhaseOrder::Succeeds,
        Ordering::Equal => PhaseOrder::Equal,
    })
}

/// [`compare_poly_phase_in`] with phases in `(0, 1]`.
pub fn compare_poly_phase(f: &PolyCharge, e: &PolyCharge) -> Result<PhaseOrder> {
    compare_poly_phase_in(f, e, &HalfPlane::upper())
}

/// `3 f2 - g2 > 0`.
pub fn check_3f2_minus_g2(f2: &Scalar, g2: &Scalar) -> bool {
    (int(3) * f2 - g2).is_positive()
}
