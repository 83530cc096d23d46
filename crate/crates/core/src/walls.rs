//! Plane-curve geometry in the `(beta, t = alpha^2)` half-plane: the curves
//! `Theta_v` (`Im Z = 0`) and `Gamma_{v,s}` (`Re Z = 0`), tilt walls,
//! lambda-walls, their intersections and float sampling for plots.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::charges::{rho, PlanePoint};
use crate::chern::{delta, int, mu, scalar_str, ChernCharacter, Scalar, Slope};
use crate::error::{Error, Result};
use crate::poly::{twisted_polys, BiPoly, UniPoly};
use crate::roots::{QuadSurd, QuadraticRoot};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CurveKind {
    Theta,
    Gamma,
    TiltWall,
    LambdaWall,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Provenance {
    pub classes: Vec<ChernCharacter>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "ser_opt_scalar"
    )]
    pub s: Option<Scalar>,
    pub degree_beta: u32,
    pub degree_t: u32,
    /// True when the polynomial is a nonzero constant, so the curve has no points.
    pub empty: bool,
    /// Indices into `classes` whose `Theta` curve divides this polynomial.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub theta_factors: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn ser_opt_scalar<S: Serializer>(x: &Option<Scalar>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// An implicit curve `sum c_ij beta^i t^j = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallCurve {
    pub poly: BiPoly,
    pub kind: CurveKind,
    pub provenance: Provenance,
}

impl WallCurve {
    fn build(poly: BiPoly, kind: CurveKind, mut provenance: Provenance) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::domain("curve polynomial is identically zero"));
        }
        provenance.degree_beta = poly.degree_beta();
        provenance.degree_t = poly.degree_t();
        provenance.empty = poly.is_constant();
        Ok(WallCurve {
            poly,
            kind,
            provenance,
        })
    }

    pub fn eval(&self, p: &PlanePoint) -> Scalar {
        self.poly.eval(&p.beta, &p.t)
    }

    pub fn contains(&self, p: &PlanePoint) -> bool {
        self.eval(p).is_zero()
    }
}

impl Serialize for WallCurve {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coefficients: Vec<(u32, u32, String)> = self
            .poly
            .terms()
            .map(|(&(i, j), c)| (i, j, c.to_string()))
            .collect();
        let mut st = s.serialize_struct("WallCurve", 3)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("coefficients", &coefficients)?;
        st.serialize_field("provenance", &self.provenance)?;
        st.end()
    }
}

/// `ch_k^beta(v)` as bivariate polynomials (constant in `t`).
fn twisted(v: &ChernCharacter) -> [BiPoly; 4] {
    twisted_polys(v).map(|p| BiPoly::from_beta_poly(&p))
}

fn im_z_poly(v: &ChernCharacter) -> BiPoly {
    let c = twisted(v);
    &c[2] - &(&BiPoly::t() * &c[0]).scale(&Scalar::new(1.into(), 2.into()))
}

fn re_z_poly(v: &ChernCharacter, s: &Scalar) -> BiPoly {
    let c = twisted(v);
    let k = s + Scalar::new(1.into(), 6.into());
    &(&BiPoly::t() * &c[1]).scale(&k) - &c[3]
}

/// `t` along `Theta_v` as a polynomial in `beta`: `(2/v0) ch_2^beta(v)`.
pub fn theta_t_of_beta(v: &ChernCharacter) -> Result<UniPoly> {
    if v.v0().is_zero() {
        return Err(Error::domain("Theta undefined for rank 0"));
    }
    Ok(twisted_polys(v)[2].scale(&(int(2) / v.v0())))
}

/// `Theta_v: 2 ch_2^beta(v) - t v0 = 0`.
pub fn theta_curve(v: &ChernCharacter) -> Result<WallCurve> {
    if v.v0().is_zero() {
        return Err(Error::domain("Theta undefined for rank 0"));
    }
    let poly = im_z_poly(v).scale(&int(2));
    WallCurve::build(
        poly,
        CurveKind::Theta,
        Provenance {
            classes: vec![v.clone()],
            ..Default::default()
        },
    )
}

/// `Gamma_{v,s}: 6 ch_3^beta(v) - (6s+1) t ch_1^beta(v) = 0`, which is `Re Z = 0`.
pub fn gamma_curve(v: &ChernCharacter, s: &Scalar) -> Result<WallCurve> {
    let poly = re_z_poly(v, s).scale(&int(-6));
    WallCurve::build(
        poly,
        CurveKind::Gamma,
        Provenance {
            classes: vec![v.clone()],
            s: Some(s.clone()),
            ..Default::default()
        },
    )
}

/// `6 ch_3^beta(v) - (6s+1) ch_1^beta(v) = 0` with no `t` factor. Kept for
/// comparison only; this is not the locus `Re Z = 0`.
pub fn gamma_curve_without_t(v: &ChernCharacter, s: &Scalar) -> Result<WallCurve> {
    let c = twisted(v);
    let poly = &c[3].scale(&int(6)) - &c[1].scale(&(int(6) * s + int(1)));
    WallCurve::build(
        poly,
        CurveKind::Gamma,
        Provenance {
            classes: vec![v.clone()],
            s: Some(s.clone()),
            notes: vec!["without t factor".into()],
            ..Default::default()
        },
    )
}

/// A numerical tilt wall `(beta - center)^2 + t = radius_sq`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CircleWall {
    #[serde(with = "scalar_str")]
    pub center_beta: Scalar,
    #[serde(with = "scalar_str")]
    pub radius_sq: Scalar,
    pub pair: (ChernCharacter, ChernCharacter),
}

impl CircleWall {
    fn deltas(&self) -> (Scalar, Scalar, Scalar) {
        let (u, v) = &self.pair;
        (delta(u, v, 1, 0), delta(u, v, 2, 0), delta(u, v, 2, 1))
    }

    /// `(delta_10/2)(beta^2 + t) - delta_20 beta + delta_21`.
    pub fn curve(&self) -> WallCurve {
        let (d10, d20, d21) = self.deltas();
        let half = &d10 / int(2);
        let mut p = BiPoly::zero();
        p.add_term(2, 0, half.clone());
        p.add_term(0, 1, half);
        p.add_term(1, 0, -d20);
        p.add_term(0, 0, d21);
        WallCurve::build(
            p,
            CurveKind::TiltWall,
            Provenance {
                classes: vec![self.pair.0.clone(), self.pair.1.clone()],
                ..Default::default()
            },
        )
        .expect("delta_10 != 0 for a circle wall")
    }

    /// Highest point `(center, radius_sq)`.
    pub fn apex(&self) -> PlanePoint {
        PlanePoint {
            beta: self.center_beta.clone(),
            t: self.radius_sq.clone(),
        }
    }

    /// Exact point on the wall above `beta`, if `beta` lies strictly inside.
    pub fn point_at(&self, beta: &Scalar) -> Option<PlanePoint> {
        let d = beta - &self.center_beta;
        let t = &self.radius_sq - &d * &d;
        t.is_positive().then(|| PlanePoint {
            beta: beta.clone(),
            t,
        })
    }

    /// Grouping key for walls generated by different classes.
    pub fn key(&self) -> (Scalar, Scalar) {
        (self.center_beta.clone(), self.radius_sq.clone())
    }
}

/// The semicircular wall where `nu(u) = nu(v)`.
pub fn tilt_wall(u: &ChernCharacter, v: &ChernCharacter) -> Result<CircleWall> {
    let d10 = delta(u, v, 1, 0);
    let d20 = delta(u, v, 2, 0);
    let d21 = delta(u, v, 2, 1);
    if d10.is_zero() {
        if d20.is_zero() && d21.is_zero() {
            return Err(Error::domain("degenerate wall (delta identically zero)"));
        }
        return Err(Error::VerticalWall);
    }
    let c = &d20 / &d10;
    let radius_sq = &c * &c - int(2) * &d21 / &d10;
    if !radius_sq.is_positive() {
        return Err(Error::EmptyWall(radius_sq.to_string()));
    }
    Ok(CircleWall {
        center_beta: c,
        radius_sq,
        pair: (u.clone(), v.clone()),
    })
}

/// The linear locus `-delta_20 beta + delta_21 = 0` when `delta_10 = 0`.
pub fn vertical_wall(u: &ChernCharacter, v: &ChernCharacter) -> Result<WallCurve> {
    if !delta(u, v, 1, 0).is_zero() {
        return Err(Error::domain("vertical wall needs delta_10 = 0"));
    }
    let mut p = BiPoly::zero();
    p.add_term(1, 0, -delta(u, v, 2, 0));
    p.add_term(0, 0, delta(u, v, 2, 1));
    if p.is_constant() {
        return Err(Error::domain("degenerate wall (delta identically zero)"));
    }
    WallCurve::build(
        p,
        CurveKind::TiltWall,
        Provenance {
            classes: vec![u.clone(), v.clone()],
            notes: vec!["vertical".into()],
            ..Default::default()
        },
    )
}

fn proportional(u: &ChernCharacter, v: &ChernCharacter) -> bool {
    (0..4).all(|i| (i + 1..4).all(|j| delta(u, v, i, j).is_zero()))
}

/// Polynomial `Re Z(u) Im Z(v) - Re Z(v) Im Z(u)` with its positive content
/// removed. Factors such as `Theta` are kept and flagged in the provenance.
pub fn lambda_wall(u: &ChernCharacter, v: &ChernCharacter, s: &Scalar) -> Result<WallCurve> {
    if proportional(u, v) {
        return Err(Error::DegenerateLambdaWall);
    }
    let raw = &(&re_z_poly(u, s) * &im_z_poly(v)) - &(&re_z_poly(v, s) * &im_z_poly(u));
    if raw.is_zero() {
        return Err(Error::DegenerateLambdaWall);
    }
    let poly = raw.primitive();
    let classes = vec![u.clone(), v.clone()];
    let theta_factors = classes
        .iter()
        .enumerate()
        .filter(|(_, w)| {
            theta_t_of_beta(w)
                .map(|q| poly.substitute_t(&q).is_zero())
                .unwrap_or(false)
        })
        .map(|(i, _)| i)
        .collect();
    WallCurve::build(
        poly,
        CurveKind::LambdaWall,
        Provenance {
            classes,
            s: Some(s.clone()),
            theta_factors,
            ..Default::default()
        },
    )
}

/// A point where a tilt wall meets `Theta_v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaCrossing {
    pub beta: QuadraticRoot,
    pub t: QuadSurd,
}

impl ThetaCrossing {
    /// Both implicit equations vanish exactly at the crossing.
    pub fn certify(&self, v: &ChernCharacter, wall: &CircleWall) -> bool {
        let b = self.beta.value();
        let on_theta = theta_curve(v)
            .map(|c| c.poly.eval_surd(b, &self.t).is_zero())
            .unwrap_or(false);
        on_theta && wall.curve().poly.eval_surd(b, &self.t).is_zero()
    }

    pub fn alpha_f64(&self) -> f64 {
        self.t.to_f64().max(0.0).sqrt()
    }
}

/// Intersections of `Theta_v` with a circle wall in the open upper half-plane.
pub fn intersect_theta_tilt(v: &ChernCharacter, wall: &CircleWall) -> Result<Vec<ThetaCrossing>> {
    let q = theta_t_of_beta(v)?;
    let restricted = wall.curve().poly.substitute_t(&q);
    let (a, b, c) = (
        restricted.coeff(2),
        restricted.coeff(1),
        restricted.coeff(0),
    );
    if restricted.degree().unwrap_or(0) > 2 {
        return Err(Error::domain(
            "unexpected degree in Theta/wall intersection",
        ));
    }
    if a.is_zero() {
        return Err(Error::domain("Theta/wall intersection is not quadratic"));
    }
    let mut out = Vec::new();
    for root in QuadraticRoot::solve(&a, &b, &c)? {
        let t = q.eval_surd(root.value());
        if t.sign() == Ordering::Greater {
            out.push(ThetaCrossing { beta: root, t });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Region {
    RMinus,
    RZero,
    RPlus,
    OnTheta,
    OnMuLine,
}

/// Position of `p` relative to `Theta_v` and the line `beta = mu(v)`.
pub fn region_classify(v: &ChernCharacter, p: &PlanePoint) -> Result<Region> {
    if !v.v0().is_positive() {
        return Err(Error::domain("region classification needs v0 > 0"));
    }
    if !p.t.is_positive() {
        return Err(Error::domain("region classification needs t > 0"));
    }
    let m = match mu(v) {
        Slope::Finite(m) => m,
        Slope::Infinite => unreachable!("v0 > 0"),
    };
    let r = rho(v, p);
    Ok(match (r.cmp(&Scalar::zero()), p.beta.cmp(&m)) {
        (Ordering::Equal, _) => Region::OnTheta,
        (Ordering::Less, _) => Region::RZero,
        (Ordering::Greater, Ordering::Less) => Region::RMinus,
        (Ordering::Greater, Ordering::Greater) => Region::RPlus,
        (Ordering::Greater, Ordering::Equal) => Region::OnMuLine,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleBranch {
    Single,
    Minus,
    Plus,
    /// `t = 0`, reported with `alpha = 0`.
    Boundary,
    /// The whole vertical line at this `beta` lies on the curve.
    Vertical,
}

impl SampleBranch {
    pub fn as_str(&self) -> &'static str {
        match self {
            SampleBranch::Single => "single",
            SampleBranch::Minus => "minus",
            SampleBranch::Plus => "plus",
            SampleBranch::Boundary => "boundary",
            SampleBranch::Vertical => "vertical",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub beta: f64,
    pub alpha: f64,
    pub branch: SampleBranch,
}

fn sample_at(curve: &WallCurve, beta: &Scalar) -> Vec<Sample> {
    let bf = beta.to_f64().unwrap_or(f64::NAN);
    let p = curve.poly.at_beta(beta);
    let mk = |t: &QuadSurd, branch| {
        let boundary = t.is_zero();
        Sample {
            beta: bf,
            alpha: if boundary {
                0.0
            } else {
                t.to_f64().max(0.0).sqrt()
            },
            branch: if boundary {
                SampleBranch::Boundary
            } else {
                branch
            },
        }
    };
    match p.degree() {
        None => vec![Sample {
            beta: bf,
            alpha: 0.0,
            branch: SampleBranch::Vertical,
        }],
        Some(0) => Vec::new(),
        Some(1) => {
            let t = QuadSurd::rational(-p.coeff(0) / p.coeff(1));
            if t.sign() == Ordering::Less {
                Vec::new()
            } else {
                vec![mk(&t, SampleBranch::Single)]
            }
        }
        Some(2) => {
            let roots = QuadraticRoot::solve(&p.coeff(2), &p.coeff(1), &p.coeff(0))
                .expect("degree 2 has nonzero lead");
            let single = roots.len() == 1;
            roots
                .iter()
                .enumerate()
                .filter(|(_, r)| r.value().sign() != Ordering::Less)
                .map(|(k, r)| {
                    let branch = match (single, k) {
                        (true, _) => SampleBranch::Single,
                        (false, 0) => SampleBranch::Minus,
                        _ => SampleBranch::Plus,
                    };
                    mk(r.value(), branch)
                })
                .collect()
        }
        Some(_) => panic!("curves are at most quadratic in t"),
    }
}

/// Samples `(beta, sqrt(t))` for every nonnegative real branch on a uniform
/// grid of `n_samples` exact `beta` values in `[lo, hi]`. Output order is by
/// grid index, then branch, independent of parallelism.
pub fn sample_curve(
    curve: &WallCurve,
    range: (&Scalar, &Scalar),
    n_samples: usize,
) -> Result<Vec<Sample>> {
    if n_samples < 2 {
        return Err(Error::domain("n_samples must be at least 2"));
    }
    let (lo, hi) = range;
    let step = (hi - lo) / int(n_samples as i64 - 1);
    let per: Vec<Vec<Sample>> = (0..n_samples)
        .into_par_iter()
        .map(|k| sample_at(curve, &(lo + &step * int(k as i64))))
        .collect();
    Ok(per.into_iter().flatten().collect())
}

/// Fixed six-decimal formatting; avoids printing `-0.000000`.
pub fn fmt_f64(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// CSV with header `beta,alpha,branch`.
pub fn samples_to_csv(samples: &[Sample]) -> String {
    let mut out = String::from("beta,alpha,branch\n");
    for s in samples {
        let _ = writeln!(
            out,
            "{},{},{}",
            fmt_f64(s.beta),
            fmt_f64(s.alpha),
            s.branch.as_str()
        );
    }
    out
}
