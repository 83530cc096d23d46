//! Exact quadratic irrationals `p + q sqrt(d)` and isolated roots of rational
//! quadratics.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::chern::{int, scalar_str, sign, Scalar};
use crate::error::{Error, Result};

/// Exact square root of a nonnegative rational, if it is rational.
pub fn rational_sqrt(x: &Scalar) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Scalar::new(n, d))
    } else {
        None
    }
}

/// Rational bounds `lo <= sqrt(x) <= hi` for `x >= 0`, tight to `1/denom(x)`.
pub fn sqrt_bounds(x: &Scalar) -> (Scalar, Scalar) {
    assert!(!x.is_negative(), "sqrt of a negative rational");
    if let Some(r) = rational_sqrt(x) {
        return (r.clone(), r);
    }
    let den = x.denom().clone();
    let s = (x.numer() * &den).sqrt();
    (
        Scalar::new(s.clone(), den.clone()),
        Scalar::new(s + BigInt::one(), den),
    )
}

/// `p + q sqrt(d)` with `d >= 0`. Normalized so that `q = 0` iff `d = 0`,
/// and `d` is never a rational square.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QuadSurd {
    #[serde(with = "scalar_str")]
    pub p: Scalar,
    #[serde(with = "scalar_str")]
    pub q: Scalar,
    #[serde(with = "scalar_str")]
    pub d: Scalar,
}

impl QuadSurd {
    pub fn new(p: Scalar, q: Scalar, d: Scalar) -> Self {
        assert!(!d.is_negative(), "negative radicand");
        if q.is_zero() || d.is_zero() {
            return Self::rational(p);
        }
        match rational_sqrt(&d) {
            Some(r) => Self::rational(p + q * r),
            None => QuadSurd { p, q, d },
        }
    }

    pub fn rational(p: Scalar) -> Self {
        QuadSurd {
            p,
            q: Scalar::zero(),
            d: Scalar::zero(),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Scalar> {
        self.is_rational().then_some(&self.p)
    }

    fn common_radicand(&self, o: &QuadSurd) -> Scalar {
        match (self.is_rational(), o.is_rational()) {
            (true, _) => o.d.clone(),
            (_, true) => self.d.clone(),
            _ => {
                assert_eq!(self.d, o.d, "surds from different quadratic fields");
                self.d.clone()
            }
        }
    }

    pub fn add(&self, o: &QuadSurd) -> QuadSurd {
        let d = self.common_radicand(o);
        QuadSurd::new(&self.p + &o.p, &self.q + &o.q, d)
    }

    pub fn sub(&self, o: &QuadSurd) -> QuadSurd {
        let d = self.common_radicand(o);
        QuadSurd::new(&self.p - &o.p, &self.q - &o.q, d)
    }

    pub fn mul(&self, o: &QuadSurd) -> QuadSurd {
        let d = self.common_radicand(o);
        QuadSurd::new(
            &self.p * &o.p + &self.q * &o.q * &d,
            &self.p * &o.q + &self.q * &o.p,
            d,
        )
    }

    pub fn add_rational(&self, x: &Scalar) -> QuadSurd {
        QuadSurd::new(&self.p + x, self.q.clone(), self.d.clone())
    }

    pub fn scale(&self, x: &Scalar) -> QuadSurd {
        QuadSurd::new(&self.p * x, &self.q * x, self.d.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// Exact sign.
    pub fn sign(&self) -> Ordering {
        surd_sign(&self.p, &self.q, &self.d)
    }

    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        if self.is_rational() {
            return p;
        }
        p + self.q.to_f64().unwrap_or(f64::NAN) * self.d.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    /// Rational enclosure `[lo, hi]` of the value.
    pub fn bounds(&self) -> (Scalar, Scalar) {
        if self.is_rational() {
            return (self.p.clone(), self.p.clone());
        }
        let (lo, hi) = sqrt_bounds(&self.d);
        let a = &self.p + &self.q * &lo;
        let b = &self.p + &self.q * &hi;
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }
}

/// Sign of `p + q sqrt(d)`.
fn surd_sign(p: &Scalar, q: &Scalar, d: &Scalar) -> Ordering {
    let sq = if d.is_zero() {
        Ordering::Equal
    } else {
        sign(q)
    };
    let sp = sign(p);
    if sq == Ordering::Equal || sp == sq {
        return sp;
    }
    if sp == Ordering::Equal {
        return sq;
    }
    // Opposite signs: the larger magnitude wins.
    match (p * p).cmp(&(q * q * d)) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => Ordering::Equal,
    }
}

impl PartialOrd for QuadSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadSurd {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.is_rational() || other.is_rational() || self.d == other.d {
            return self.sub(other).sign();
        }
        // sign(L - R) with L = p1 - p2 + q1 sqrt(d1) and R = q2 sqrt(d2).
        let l = QuadSurd::new(&self.p - &other.p, self.q.clone(), self.d.clone());
        let r = QuadSurd::new(Scalar::zero(), other.q.clone(), other.d.clone());
        let (sl, sr) = (l.sign(), r.sign());
        if sl != sr {
            return sl.cmp(&sr);
        }
        let r2 = &other.q * &other.q * &other.d;
        let diff_sq = l.mul(&l).add_rational(&-r2).sign();
        match sl {
            Ordering::Less => diff_sq.reverse(),
            _ => diff_sq,
        }
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{} + {}*sqrt({})", self.p, self.q, self.d)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Minus,
    Plus,
}

/// A real root of `a x^2 + b x + c` (`a != 0`) with a rational isolating interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticRoot {
    #[serde(with = "scalar_str")]
    pub a: Scalar,
    #[serde(with = "scalar_str")]
    pub b: Scalar,
    #[serde(with = "scalar_str")]
    pub c: Scalar,
    pub which: Branch,
    pub multiplicity: u8,
    #[serde(serialize_with = "ser_interval")]
    pub interval: (Scalar, Scalar),
    #[serde(skip)]
    value: QuadSurd,
}

fn ser_interval<S: serde::Serializer>(
    iv: &(Scalar, Scalar),
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    [iv.0.to_string(), iv.1.to_string()].serialize(s)
}

impl QuadraticRoot {
    /// Real roots in ascending order. A double root is reported once with
    /// multiplicity 2.
    pub fn solve(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<Vec<QuadraticRoot>> {
        if a.is_zero() {
            return Err(Error::domain("leading coefficient of quadratic is zero"));
        }
        let disc = b * b - int(4) * a * c;
        if disc.is_negative() {
            return Ok(Vec::new());
        }
        let two_a = int(2) * a;
        let p = -b / &two_a;
        if disc.is_zero() {
            let r = QuadSurd::rational(p.clone());
            return Ok(vec![QuadraticRoot {
                a: a.clone(),
                b: b.clone(),
                c: c.clone(),
                which: Branch::Minus,
                multiplicity: 2,
                interval: (p.clone(), p),
                value: r,
            }]);
        }
        // x = p +/- sqrt(disc) / (2a) = p +/- (1/|2a|) sqrt(disc) up to orientation.
        let q = Scalar::one() / &two_a;
        let minus = QuadSurd::new(p.clone(), -&q, disc.clone());
        let plus = QuadSurd::new(p, q, disc);
        let mut roots: Vec<QuadraticRoot> = [(Branch::Minus, minus), (Branch::Plus, plus)]
            .into_iter()
            .map(|(which, value)| {
                let interval = value.bounds();
                QuadraticRoot {
                    a: a.clone(),
                    b: b.clone(),
                    c: c.clone(),
                    which,
                    multiplicity: 1,
                    interval,
                    value,
                }
            })
            .collect();
        roots.sort_by(|x, y| x.value.cmp(&y.value));
        let other: Vec<QuadSurd> = roots.iter().rev().map(|r| r.value.clone()).collect();
        for (r, o) in roots.iter_mut().zip(other) {
            r.isolate_from(&o);
        }
        Ok(roots)
    }

    pub fn value(&self) -> &QuadSurd {
        &self.value
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    fn contains(&self, x: &QuadSurd) -> bool {
        QuadSurd::rational(self.interval.0.clone()) <= *x
            && *x <= QuadSurd::rational(self.interval.1.clone())
    }

    fn isolate_from(&mut self, other: &QuadSurd) {
        while self.contains(other) {
            self.bisect();
        }
    }

    fn bisect(&mut self) {
        let (lo, hi) = &self.interval;
        if lo == hi {
            return;
        }
        let mid = (lo + hi) / int(2);
        match self.value.sub(&QuadSurd::rational(mid.clone())).sign() {
            Ordering::Less => self.interval.1 = mid,
            Ordering::Greater => self.interval.0 = mid,
            Ordering::Equal => self.interval = (mid.clone(), mid),
        }
    }

    /// Bisects until the interval is no wider than `width`.
    pub fn refine(&mut self, width: &Scalar) {
        while &self.interval.1 - &self.interval.0 > *width {
            self.bisect();
        }
    }

    /// Residual `a x^2 + b x + c` at the stored value; exactly zero.
    pub fn residual(&self) -> QuadSurd {
        let x = &self.value;
        x.mul(x)
            .scale(&self.a)
            .add(&x.scale(&self.b))
            .add_rational(&self.c)
    }
}

impl PartialOrd for QuadraticRoot {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.value.cmp(&other.value))
    }
}
