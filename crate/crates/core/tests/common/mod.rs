#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use wallforge::chern::{frac, int};
use wallforge::{ChernCharacter, Scalar};

pub fn ch(s: &str) -> ChernCharacter {
    ChernCharacter::parse(s).unwrap()
}

pub fn random_class(rng: &mut ChaCha8Rng) -> ChernCharacter {
    ChernCharacter::new(
        int(rng.gen_range(-4..=4)),
        int(rng.gen_range(-6..=6)),
        frac(rng.gen_range(-12..=12), 2),
        frac(rng.gen_range(-36..=36), 6),
    )
    .unwrap()
}

pub fn random_rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Scalar {
    frac(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

pub fn random_positive(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Scalar {
    frac(rng.gen_range(1..=num), rng.gen_range(1..=den))
}

/// Twist by direct expansion of `exp(-beta) * ch` as a truncated power series.
pub fn twist_series(v: &ChernCharacter, beta: &Scalar) -> [Scalar; 4] {
    let a = v.as_array();
    let mut e = vec![Scalar::one()];
    for k in 1..4 {
        let next = &e[k - 1] * -beta / int(k as i64);
        e.push(next);
    }
    std::array::from_fn(|n| (0..=n).map(|k| &e[k] * &a[n - k]).sum())
}

/// Integer form of `(v0, v1, 2 v2)`.
pub fn int_triple(v: &ChernCharacter) -> (i128, i128, i128) {
    let f = |x: &Scalar| -> i128 {
        assert!(x.is_integer());
        x.to_integer().to_i128().unwrap()
    };
    (f(v.v0()), f(v.v1()), f(&(v.v2() * int(2))))
}

/// Independent candidate test in integer arithmetic for `u = (u0, u1, h/2)`,
/// `v = (v0, v1, w/2)` and `t_min = p/q`. Uses the reformulation
/// `ch_1^beta(x) >= 0` at both chord ends iff `a >= |x0| r'` with `a = ch_1^c(x)`.
pub fn oracle_candidate(u: (i128, i128, i128), v: (i128, i128, i128), p: i128, q: i128) -> bool {
    let (u0, u1, h) = u;
    let (v0, v1, w) = v;
    let d = u1 * v0 - u0 * v1;
    if d == 0 {
        return false;
    }
    let n2 = h * v0 - u0 * w;
    let n1 = h * v1 - u1 * w;
    // r^2 = (n2^2 - 4 n1 d) / (4 d^2)
    let r_num = n2 * n2 - 4 * n1 * d;
    if r_num * q <= 4 * d * d * p {
        return false;
    }
    if u1 * u1 - u0 * h < 0 {
        return false;
    }
    let (x0, x1, xh) = (v0 - u0, v1 - u1, w - h);
    if x1 * x1 - x0 * xh < 0 {
        return false;
    }
    let chord_ok = |y0: i128, y1: i128| {
        let a2d = 2 * d * y1 - y0 * n2; // a = a2d / (2d)
        if a2d * d < 0 {
            return false;
        }
        q * a2d * a2d >= y0 * y0 * (r_num * q - 4 * d * d * p)
    };
    chord_ok(u0, u1) && chord_ok(x0, x1)
}

pub fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap()
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

#[derive(Debug, Default)]
pub struct SweepResult {
    pub oracle_hits: usize,
    pub reported: usize,
    /// Oracle candidates absent from the enumeration.
    pub missing: Vec<(i128, i128, i128)>,
    /// Reported candidates the oracle rejects.
    pub unsound: Vec<(i128, i128, i128)>,
}

/// Compares `enumerate_tilt_destabilizers(v, p/q)` with the integer oracle on
/// the search box padded by 2 in every coordinate (4 half-steps for `u2`).
pub fn padded_sweep(v: &ChernCharacter, p: i64, q: i64) -> SweepResult {
    use std::collections::{BTreeMap, BTreeSet};
    use wallforge::destabilizers::{enumerate_tilt_destabilizers, search_box, EnumerationOptions};

    let t_min = frac(p, q);
    let sb = search_box(v, &t_min).unwrap();
    let rep = enumerate_tilt_destabilizers(v, &t_min, EnumerationOptions::default()).unwrap();
    let vi = int_triple(v);

    let rows: BTreeMap<i64, (i64, i64)> = sb.u1.iter().map(|r| (r.u0, (r.lo, r.hi))).collect();
    let lines: BTreeMap<(i64, i64), (i64, i64)> = sb
        .lines
        .iter()
        .map(|l| ((l.u0, l.u1), (l.k_lo, l.k_hi)))
        .collect();
    let g_u1 = (
        sb.u1.iter().map(|r| r.lo).min().unwrap_or(0) - 2,
        sb.u1.iter().map(|r| r.hi).max().unwrap_or(0) + 2,
    );
    let g_k = (
        sb.lines.iter().map(|l| l.k_lo).min().unwrap_or(-8) - 4,
        sb.lines.iter().map(|l| l.k_hi).max().unwrap_or(8) + 4,
    );

    let mut hits = BTreeSet::new();
    for u0 in sb.u0_lo - 2..=sb.u0_hi + 2 {
        let (a, b) = rows.get(&u0).map(|&(l, h)| (l - 2, h + 2)).unwrap_or(g_u1);
        for u1 in a..=b {
            let (ka, kb) = lines
                .get(&(u0, u1))
                .map(|&(l, h)| (l - 4, h + 4))
                .unwrap_or(g_k);
            for k in ka..=kb {
                let u = (u0 as i128, u1 as i128, k as i128);
                if oracle_candidate(u, vi, p as i128, q as i128) {
                    hits.insert(u);
                }
            }
        }
    }
    let reported: BTreeSet<_> = rep.candidates.iter().map(|c| int_triple(&c.u)).collect();
    SweepResult {
        oracle_hits: hits.len(),
        reported: reported.len(),
        missing: hits.difference(&reported).cloned().collect(),
        unsound: reported
            .iter()
            .filter(|u| !oracle_candidate(**u, vi, p as i128, q as i128))
            .cloned()
            .collect(),
    }
}

/// Every `v` with `0 < v0 <= 3`, `|v1| <= 3`, `|2 v2| <= 6` and `Delta(v) >= 0`.
pub fn desk_scale_classes() -> Vec<ChernCharacter> {
    let mut out = Vec::new();
    for v0 in 1..=3i64 {
        for v1 in -3..=3i64 {
            for k in -6..=6i64 {
                if v1 * v1 - v0 * k >= 0 {
                    out.push(ChernCharacter::truncated(int(v0), int(v1), frac(k, 2)).unwrap());
                }
            }
        }
    }
    out
}
