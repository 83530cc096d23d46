//! Bounded exact enumeration of numerical tilt-wall destabilizers for a class
//! `v`, the largest wall, the last wall along `Theta^-_v`, and a finiteness
//! probe for lambda-walls.
//!
//! The search box comes from the following facts, valid for `v0 > 0` and
//! `Delta(v) >= 0`. Every wall for `v` has its apex `(c, r^2)` on `Theta_v`,
//! so `r^2 = (c - mu)^2 - Delta/v0^2`. Constraint (c) forces `c < mu`, hence
//! `r^2 > t_min` gives `c < c_max = mu - sqrt(Delta/v0^2 + t_min)`, and `c_max`
//! lies inside the chord of every such wall. At the apex `rho_u = rho_v = 0`,
//! and Bogomolov for `u` and `v - u` yields `u0^2, (v0 - u0)^2 <= v0^2 + Delta/t_min`.
//! Evaluating (c) at `c_max` bounds `u1`; Bogomolov and `c <= c_max` (plus
//! `ch_1^c >= 0` at the apex) bound `u2`. Every point of the box is then
//! re-checked exactly, so the box only has to be an outer approximation.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::charges::{epsilon_bound, PlanePoint};
use crate::chern::{delta, discriminant, frac, int, mu, scalar_str, ChernCharacter, Scalar};
use crate::error::{Error, Result};
use crate::poly::{twisted_polys, UniPoly};
use crate::roots::{sqrt_bounds, QuadSurd, QuadraticRoot};
use crate::walls::{intersect_theta_tilt, lambda_wall, theta_t_of_beta, tilt_wall, CircleWall};

/// A class `u` (with `ch_3` set to zero) destabilizing `v` along `wall`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DestabilizerCandidate {
    pub u: ChernCharacter,
    pub wall: CircleWall,
    #[serde(with = "scalar_str")]
    pub delta_u: Scalar,
    #[serde(with = "scalar_str")]
    pub delta_quot: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct U1Range {
    pub u0: i64,
    pub lo: i64,
    pub hi: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    #[serde(with = "scalar_str")]
    pub t_min: Scalar,
    pub u0_lo: i64,
    pub u0_hi: i64,
    /// Rational enclosure of `c_max`.
    #[serde(with = "scalar_str")]
    pub c_max_lo: Scalar,
    #[serde(with = "scalar_str")]
    pub c_max_hi: Scalar,
    pub u1: Vec<U1Range>,
    /// Number of `(u0, u1, u2)` triples examined.
    pub scanned: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallGroup {
    #[serde(with = "scalar_str")]
    pub center_beta: Scalar,
    #[serde(with = "scalar_str")]
    pub radius_sq: Scalar,
    /// Indices into `EnumerationReport::candidates`.
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationReport {
    pub v: ChernCharacter,
    pub candidates: Vec<DestabilizerCandidate>,
    /// Distinct walls, largest radius first.
    pub walls: Vec<WallGroup>,
    pub search_bounds: SearchBounds,
    pub wall_count: usize,
    pub truncated: bool,
}

impl EnumerationReport {
    /// CSV with header `u0,u1,u2,center,radius_sq`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("u0,u1,u2,center,radius_sq\n");
        for c in &self.candidates {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                c.u.v0(),
                c.u.v1(),
                c.u.v2(),
                c.wall.center_beta,
                c.wall.radius_sq
            );
        }
        out
    }

    pub fn largest(&self) -> Option<&WallGroup> {
        self.walls.first()
    }

    pub fn wall(&self, g: &WallGroup) -> &CircleWall {
        &self.candidates[g.members[0]].wall
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Additionally require `Delta(u) + Delta(v - u) <= Delta(v)`.
    pub strengthened_bogomolov: bool,
}

fn check_input(v: &ChernCharacter) -> Result<Scalar> {
    if !v.v0().is_positive() {
        return Err(Error::domain("enumeration needs v0 > 0"));
    }
    let d = discriminant(v);
    if d.is_negative() {
        return Err(Error::domain("no bounded wall theory below Bogomolov"));
    }
    Ok(d)
}

fn floor_i64(x: &Scalar) -> Result<i64> {
    x.floor()
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::domain("search bound out of range"))
}

fn ceil_i64(x: &Scalar) -> Result<i64> {
    x.ceil()
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::domain("search bound out of range"))
}

fn mu_of(v: &ChernCharacter) -> Scalar {
    mu(v).finite().cloned().expect("v0 > 0")
}

/// `x >= 0` at both chord endpoints: `a + b r' >= 0` and `a - b r' >= 0`.
fn nonneg_at_endpoints(a: &Scalar, b: &Scalar, r_sq: &Scalar) -> bool {
    let plus = QuadSurd::new(a.clone(), b.clone(), r_sq.clone());
    let minus = QuadSurd::new(a.clone(), -b, r_sq.clone());
    plus.sign() != Ordering::Less && minus.sign() != Ordering::Less
}

/// Exact check of the candidate conditions, independent of the search box.
pub fn is_destabilizer(
    u: &ChernCharacter,
    v: &ChernCharacter,
    t_min: &Scalar,
    opts: EnumerationOptions,
) -> Option<DestabilizerCandidate> {
    let d10 = delta(u, v, 1, 0);
    if d10.is_zero() {
        return None;
    }
    if (0..3).all(|i| (i + 1..3).all(|j| delta(u, v, i, j).is_zero())) {
        return None;
    }
    let wall = tilt_wall(u, v).ok()?;
    if wall.radius_sq <= *t_min {
        return None;
    }
    let w = v - u;
    let delta_u = discriminant(u);
    let delta_quot = discriminant(&w);
    if delta_u.is_negative() || delta_quot.is_negative() {
        return None;
    }
    if opts.strengthened_bogomolov && &delta_u + &delta_quot > discriminant(v) {
        return None;
    }
    // ch_1^beta(x) = (x1 - c x0) -/+ x0 r' at beta = c +/- r'.
    let r_sq = &wall.radius_sq - t_min;
    let c = &wall.center_beta;
    let ok_u = nonneg_at_endpoints(&(u.v1() - c * u.v0()), &-u.v0().clone(), &r_sq);
    let ok_w = nonneg_at_endpoints(&(w.v1() - c * w.v0()), &-w.v0().clone(), &r_sq);
    if !(ok_u && ok_w) {
        return None;
    }
    Some(DestabilizerCandidate {
        u: u.clone(),
        wall,
        delta_u,
        delta_quot,
    })
}

fn tighten_lo(lo: &mut Option<Scalar>, x: Scalar) {
    if lo.as_ref().is_none_or(|l| x > *l) {
        *lo = Some(x);
    }
}

fn tighten_hi(hi: &mut Option<Scalar>, x: Scalar) {
    if hi.as_ref().is_none_or(|h| x < *h) {
        *hi = Some(x);
    }
}

/// Outer bounds for `u2` given `(u0, u1)`, or `None` if some side is open.
fn u2_window(
    v: &ChernCharacter,
    u0: i64,
    u1: i64,
    c_max_hi: &Scalar,
) -> Option<(Option<Scalar>, Option<Scalar>)> {
    let (v0, v1, v2) = (v.v0(), v.v1(), v.v2());
    let (su0, su1) = (int(u0), int(u1));
    let w0 = v0 - &su0;
    let w1 = v1 - &su1;
    let mut lo = None;
    let mut hi = None;

    match su0.cmp(&Scalar::zero()) {
        Ordering::Greater => tighten_hi(&mut hi, &su1 * &su1 / (int(2) * &su0)),
        Ordering::Less => tighten_lo(&mut lo, &su1 * &su1 / (int(2) * &su0)),
        Ordering::Equal => {}
    }
    match w0.cmp(&Scalar::zero()) {
        Ordering::Greater => tighten_lo(&mut lo, v2 - &w1 * &w1 / (int(2) * &w0)),
        Ordering::Less => tighten_hi(&mut hi, v2 - &w1 * &w1 / (int(2) * &w0)),
        Ordering::Equal => {}
    }

    // c = (u2 v0 - u0 v2) / d10 must lie in [c_lo, c_max].
    let d10 = &su1 * v0 - &su0 * v1;
    if d10.is_zero() {
        return None;
    }
    let c_lo = if su0.is_negative() {
        Some(&su1 / &su0)
    } else if su0 > *v0 {
        Some(&w1 / &w0)
    } else {
        None
    };
    let u2_of_c = |c: &Scalar| (c * &d10 + &su0 * v2) / v0;
    let positive = d10.is_positive();
    let at_max = u2_of_c(c_max_hi);
    if positive {
        tighten_hi(&mut hi, at_max);
    } else {
        tighten_lo(&mut lo, at_max);
    }
    if let Some(cl) = c_lo {
        let at_lo = u2_of_c(&cl);
        if positive {
            tighten_lo(&mut lo, at_lo);
        } else {
            tighten_hi(&mut hi, at_lo);
        }
    }
    Some((lo, hi))
}

/// One `(u0, u1)` line of the search box: `u2 = k/2` for `k_lo <= k <= k_hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoxLine {
    pub u0: i64,
    pub u1: i64,
    pub k_lo: i64,
    pub k_hi: i64,
}

/// The finite search box for `(v, t_min)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBox {
    pub u0_lo: i64,
    pub u0_hi: i64,
    pub c_max_lo: Scalar,
    pub c_max_hi: Scalar,
    pub u1: Vec<U1Range>,
    pub lines: Vec<BoxLine>,
    /// Some `(u0, u1)` had an unbounded `u2` window (not expected to occur).
    pub open: bool,
}

struct Row {
    u1_range: Option<U1Range>,
    lines: Vec<BoxLine>,
    open: bool,
}

fn box_row(v: &ChernCharacter, u0: i64, c_max_lo: &Scalar, c_max_hi: &Scalar) -> Result<Row> {
    let w0 = v.v0() - int(u0);
    let min_prod = |x: &Scalar| std::cmp::min(c_max_lo * x, c_max_hi * x);
    let u1_lo = ceil_i64(&min_prod(&int(u0)))?;
    let u1_hi = floor_i64(&(v.v1() - min_prod(&w0)))?;
    let mut row = Row {
        u1_range: None,
        lines: Vec::new(),
        open: false,
    };
    if u1_lo > u1_hi {
        return Ok(row);
    }
    row.u1_range = Some(U1Range {
        u0,
        lo: u1_lo,
        hi: u1_hi,
    });
    for u1 in u1_lo..=u1_hi {
        let Some((lo, hi)) = u2_window(v, u0, u1, c_max_hi) else {
            continue;
        };
        let (Some(lo), Some(hi)) = (lo, hi) else {
            row.open = true;
            continue;
        };
        let k_lo = ceil_i64(&(lo * int(2)))?;
        let k_hi = floor_i64(&(hi * int(2)))?;
        if k_lo <= k_hi {
            row.lines.push(BoxLine { u0, u1, k_lo, k_hi });
        }
    }
    Ok(row)
}

fn u0_and_c_max(v: &ChernCharacter, t_min: &Scalar) -> Result<(i64, i64, Scalar, Scalar)> {
    let disc = check_input(v)?;
    if !t_min.is_positive() {
        return Err(Error::domain("t_min must be positive"));
    }
    let v0 = v.v0();
    let (_, b_hi) = sqrt_bounds(&(v0 * v0 + &disc / t_min));
    let u0_lo = ceil_i64(&(v0 - &b_hi))?;
    let u0_hi = floor_i64(&b_hi)?;
    let m = mu_of(v);
    let (s_lo, s_hi) = sqrt_bounds(&(&disc / (v0 * v0) + t_min));
    Ok((u0_lo, u0_hi, &m - s_hi, m - s_lo))
}

/// The finite box of `(u0, u1, u2)` that provably contains every candidate.
pub fn search_box(v: &ChernCharacter, t_min: &Scalar) -> Result<SearchBox> {
    let (u0_lo, u0_hi, c_max_lo, c_max_hi) = u0_and_c_max(v, t_min)?;
    let rows: Vec<Result<Row>> = (u0_lo..=u0_hi)
        .into_par_iter()
        .map(|u0| box_row(v, u0, &c_max_lo, &c_max_hi))
        .collect();
    let mut out = SearchBox {
        u0_lo,
        u0_hi,
        c_max_lo,
        c_max_hi,
        u1: Vec::new(),
        lines: Vec::new(),
        open: false,
    };
    for row in rows {
        let row = row?;
        out.u1.extend(row.u1_range);
        out.lines.extend(row.lines);
        out.open |= row.open;
    }
    Ok(out)
}

/// All classes `u = (u0, u1, u2)` whose tilt wall for `v` has `radius_sq > t_min`
/// and which satisfy Bogomolov for `u` and `v - u` and
/// `0 <= ch_1^beta(u) <= ch_1^beta(v)` along the chord above `t_min`.
pub fn enumerate_tilt_destabilizers(
    v: &ChernCharacter,
    t_min: &Scalar,
    opts: EnumerationOptions,
) -> Result<EnumerationReport> {
    let sb = search_box(v, t_min)?;
    let found: Vec<Result<Vec<DestabilizerCandidate>>> = sb
        .lines
        .par_iter()
        .map(|l| {
            let mut out = Vec::new();
            for k in l.k_lo..=l.k_hi {
                let u = ChernCharacter::truncated(int(l.u0), int(l.u1), frac(k, 2))?;
                out.extend(is_destabilizer(&u, v, t_min, opts));
            }
            Ok(out)
        })
        .collect();
    let mut candidates = Vec::new();
    for f in found {
        candidates.extend(f?);
    }
    let scanned = sb.lines.iter().map(|l| (l.k_hi - l.k_lo + 1) as u64).sum();
    let walls = group_walls(&candidates);
    Ok(EnumerationReport {
        v: v.clone(),
        wall_count: walls.len(),
        candidates,
        walls,
        search_bounds: SearchBounds {
            t_min: t_min.clone(),
            u0_lo: sb.u0_lo,
            u0_hi: sb.u0_hi,
            c_max_lo: sb.c_max_lo,
            c_max_hi: sb.c_max_hi,
            u1: sb.u1,
            scanned,
        },
        truncated: sb.open,
    })
}

fn group_walls(candidates: &[DestabilizerCandidate]) -> Vec<WallGroup> {
    let mut map: BTreeMap<(Scalar, Scalar), Vec<usize>> = BTreeMap::new();
    for (i, c) in candidates.iter().enumerate() {
        map.entry(c.wall.key()).or_default().push(i);
    }
    let mut groups: Vec<WallGroup> = map
        .into_iter()
        .map(|((center_beta, radius_sq), members)| WallGroup {
            center_beta,
            radius_sq,
            members,
        })
        .collect();
    groups.sort_by(|a, b| {
        b.radius_sq
            .cmp(&a.radius_sq)
            .then_with(|| a.center_beta.cmp(&b.center_beta))
    });
    groups
}

/// Smallest `t_min` tried by [`largest_tilt_wall`].
pub fn default_t_floor() -> Scalar {
    frac(1, 1 << 12)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LargestWallSearch {
    pub wall: Option<CircleWall>,
    /// All candidates on the largest wall.
    pub members: Vec<DestabilizerCandidate>,
    /// `t_min` of the level that produced the answer, or the floor.
    #[serde(with = "scalar_str")]
    pub t_level: Scalar,
    /// True when no wall was found above the floor; walls with
    /// `radius_sq <= t_level` are then not excluded.
    pub floor_reached: bool,
}

/// Searches levels `t_min = 4^-k` downwards. Walls for `v` are nested, so the
/// first nonempty level already contains the largest wall.
pub fn largest_tilt_wall_search(v: &ChernCharacter, t_floor: &Scalar) -> Result<LargestWallSearch> {
    let disc = check_input(v)?;
    if !t_floor.is_positive() {
        return Err(Error::domain("t_floor must be positive"));
    }
    if disc.is_zero() {
        // At the apex Bogomolov is then tight for u and v - u, forcing both
        // to be proportional to v: there are no walls at all.
        return Ok(LargestWallSearch {
            wall: None,
            members: Vec::new(),
            t_level: Scalar::zero(),
            floor_reached: false,
        });
    }
    let mut t = std::cmp::max(int(1), disc.clone());
    loop {
        let rep = enumerate_tilt_destabilizers(v, &t, EnumerationOptions::default())?;
        if let Some(g) = rep.largest() {
            return Ok(LargestWallSearch {
                wall: Some(rep.wall(g).clone()),
                members: g
                    .members
                    .iter()
                    .map(|&i| rep.candidates[i].clone())
                    .collect(),
                t_level: t,
                floor_reached: false,
            });
        }
        if t <= *t_floor {
            return Ok(LargestWallSearch {
                wall: None,
                members: Vec::new(),
                t_level: t,
                floor_reached: true,
            });
        }
        t = std::cmp::max(&t / int(4), t_floor.clone());
    }
}

/// The wall of maximal radius for `v`, searched down to [`default_t_floor`].
pub fn largest_tilt_wall(v: &ChernCharacter) -> Result<Option<CircleWall>> {
    Ok(largest_tilt_wall_search(v, &default_t_floor())?.wall)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LastWall {
    pub beta: QuadraticRoot,
    pub t: QuadSurd,
    /// Every wall through the point.
    pub walls: Vec<CircleWall>,
}

/// The intersection of `Theta^-_v` with the largest wall: the point where
/// the PT-type chamber along `Theta^-_v` ends.
pub fn last_wall_on_theta(v: &ChernCharacter) -> Result<Option<LastWall>> {
    let search = largest_tilt_wall_search(v, &default_t_floor())?;
    if search.wall.is_none() {
        return Ok(None);
    }
    let rep = enumerate_tilt_destabilizers(v, &search.t_level, EnumerationOptions::default())?;
    last_wall_in(&rep)
}

/// The highest point of `Theta^-_v` on any wall of `rep`.
pub fn last_wall_in(rep: &EnumerationReport) -> Result<Option<LastWall>> {
    let v = &rep.v;
    let m = QuadSurd::rational(mu_of(v));
    let mut best: Option<LastWall> = None;
    for g in &rep.walls {
        let wall = rep.wall(g);
        for x in intersect_theta_tilt(v, wall)? {
            if *x.beta.value() >= m {
                continue;
            }
            match best.as_mut() {
                Some(b) if x.t < b.t => {}
                Some(b) if x.t == b.t => b.walls.push(wall.clone()),
                _ => {
                    best = Some(LastWall {
                        beta: x.beta,
                        t: x.t,
                        walls: vec![wall.clone()],
                    })
                }
            }
        }
    }
    Ok(best)
}

/// A point of `Theta^-_v` above every wall for `v`, with integral `beta`.
pub fn wall_free_point(v: &ChernCharacter) -> Result<PlanePoint> {
    check_input(v)?;
    let q = theta_t_of_beta(v)?;
    let mut beta = match largest_tilt_wall(v)? {
        Some(w) => {
            let f = w.center_beta.floor();
            if f == w.center_beta {
                f - int(1)
            } else {
                f
            }
        }
        None => mu_of(v).floor() - int(1),
    };
    while !q.eval(&beta).is_positive() {
        beta -= int(1);
    }
    PlanePoint::new(beta.clone(), q.eval(&beta))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ProbeOptions {
    /// Also range `u3` over the values allowed by the `ch_3` bound for `u`
    /// and `v - u` at a wall-free point, instead of only `u3 = 0`.
    pub refine_ch3: bool,
}

/// Maximum number of `u3` values examined per candidate.
const CH3_CAP: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinitenessReport {
    #[serde(with = "scalar_str")]
    pub t_min: Scalar,
    #[serde(with = "scalar_str")]
    pub s: Scalar,
    pub tilt_walls: usize,
    pub theta_crossings: usize,
    pub lambda_candidates: usize,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt")]
    pub max_radius_sq: Option<Scalar>,
    /// Every lambda-wall meets `Theta_v` only at its tilt-wall point or at
    /// zeros of `Z_v`.
    pub consistent: bool,
    pub inconsistent: Vec<ChernCharacter>,
    /// Lambda-walls along which `Z_v` vanishes on all of `Theta_v`.
    pub degenerate: usize,
    pub truncated: bool,
    pub assumptions: Vec<String>,
}

fn ser_opt<S: serde::Serializer>(x: &Option<Scalar>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// `Re Z_v` restricted to `Theta_v`, as a polynomial in `beta`.
fn re_z_on_theta(v: &ChernCharacter, s: &Scalar, q: &UniPoly) -> UniPoly {
    let c = twisted_polys(v);
    let k = s + frac(1, 6);
    &(q * &c[1]).scale(&k) - &c[3]
}

fn ch3_range(u: &ChernCharacter, v: &ChernCharacter, p: &PlanePoint) -> Option<(i64, i64)> {
    let w = v - u;
    let hi = epsilon_bound(u, p).ok()?;
    let lo = v.v3() - epsilon_bound(&w, p).ok()?;
    let k_lo = (lo * int(6)).ceil().to_integer().to_i64()?;
    let k_hi = (hi * int(6)).floor().to_integer().to_i64()?;
    Some((k_lo, k_hi))
}

/// Counts tilt walls above `t_min`, their crossings with `Theta_v`, and the
/// lambda-walls of the same candidates, and checks that each lambda-wall meets
/// `Theta_v` only where its tilt wall does (or where `Z_v = 0`).
pub fn finiteness_probe(
    v: &ChernCharacter,
    t_min: &Scalar,
    s: &Scalar,
    opts: ProbeOptions,
) -> Result<FinitenessReport> {
    let rep = enumerate_tilt_destabilizers(v, t_min, EnumerationOptions::default())?;
    let q = theta_t_of_beta(v)?;
    let g = re_z_on_theta(v, s, &q);

    let mut theta_crossings = 0;
    for grp in &rep.walls {
        theta_crossings += intersect_theta_tilt(v, rep.wall(grp))?.len();
    }

    let mut assumptions =
        vec!["tilt walls only; actual walls need sheaf-theoretic input".to_string()];
    let p0 = if opts.refine_ch3 {
        assumptions
            .push("ch_3 of both factors bounded as for 2-Gieseker semistable sheaves".into());
        Some(wall_free_point(v)?)
    } else {
        None
    };

    let mut lambda_candidates = 0;
    let mut inconsistent = Vec::new();
    let mut degenerate = 0;
    let mut truncated = rep.truncated;
    for cand in &rep.candidates {
        let mut u3s = vec![0i64];
        if let Some(p) = &p0 {
            if let Some((lo, hi)) = ch3_range(&cand.u, v, p) {
                u3s = (lo..=hi).take(CH3_CAP).collect();
                truncated |= hi - lo + 1 > CH3_CAP as i64;
            }
        }
        for k in u3s {
            let u = cand.u.with_ch3(frac(k, 6))?;
            let lw = match lambda_wall(&u, v, s) {
                Ok(lw) => lw,
                Err(Error::DegenerateLambdaWall) => continue,
                Err(e) => return Err(e),
            };
            lambda_candidates += 1;
            let r = lw.poly.substitute_t(&q);
            if r.is_zero() {
                degenerate += 1;
                continue;
            }
            let c = &cand.wall.center_beta;
            let (mut rest, rem) = r.div_rem(&UniPoly::linear_root(c));
            if !rem.is_zero() {
                inconsistent.push(u);
                continue;
            }
            loop {
                let d = rest.gcd(&g);
                if d.degree().unwrap_or(0) == 0 {
                    break;
                }
                rest = rest.div_rem(&d).0;
            }
            if rest.degree() != Some(0) {
                inconsistent.push(u);
            }
        }
    }

    Ok(FinitenessReport {
        t_min: t_min.clone(),
        s: s.clone(),
        tilt_walls: rep.wall_count,
        theta_crossings,
        lambda_candidates,
        max_radius_sq: rep.largest().map(|g| g.radius_sq.clone()),
        consistent: inconsistent.is_empty(),
        inconsistent,
        degenerate,
        truncated,
        assumptions,
    })
}
