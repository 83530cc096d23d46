//! Slopes, central charges and the constants derived from them, evaluated at a
//! point of the `(beta, t = alpha^2)` half-plane.
//!
//! Everything is a rational function of `(beta, t)`. The only place `alpha`
//! itself appears is the denominator of the tilt slope; [`nu`] returns
//! `nu * alpha` instead, which orders objects the same way since `alpha > 0`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::chern::{delta, int, mu, scalar_str, twist, ChernCharacter, Scalar, Slope};
use crate::error::{Error, Result};

/// A point `(beta, t)` with `t = alpha^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlanePoint {
    #[serde(with = "scalar_str")]
    pub beta: Scalar,
    #[serde(with = "scalar_str")]
    pub t: Scalar,
}

impl PlanePoint {
    /// Interior point; requires `t > 0`.
    pub fn new(beta: Scalar, t: Scalar) -> Result<Self> {
        if !t.is_positive() {
            return Err(Error::domain(format!("t must be positive, got {t}")));
        }
        Ok(PlanePoint { beta, t })
    }

    /// Allows the boundary `t = 0`.
    pub fn boundary(beta: Scalar, t: Scalar) -> Result<Self> {
        if t.is_negative() {
            return Err(Error::domain(format!("t must be nonnegative, got {t}")));
        }
        Ok(PlanePoint { beta, t })
    }
}

/// An exact complex number.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComplexExact {
    pub re: Scalar,
    pub im: Scalar,
}

impl ComplexExact {
    pub fn new(re: Scalar, im: Scalar) -> Self {
        ComplexExact { re, im }
    }

    pub fn real(re: Scalar) -> Self {
        ComplexExact {
            re,
            im: Scalar::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::real(Scalar::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        ComplexExact::new(&self.re * k, &self.im * k)
    }

    pub fn conj(&self) -> Self {
        ComplexExact::new(self.re.clone(), -&self.im)
    }

    /// `re(self) im(other) - im(self) re(other)`: positive iff `other` is a
    /// counter-clockwise turn of less than a half circle from `self`.
    pub fn cross(&self, other: &ComplexExact) -> Scalar {
        &self.re * &other.im - &self.im * &other.re
    }

    pub fn dot(&self, other: &ComplexExact) -> Scalar {
        &self.re * &other.re + &self.im * &other.im
    }
}

impl fmt::Display for ComplexExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

impl Add for &ComplexExact {
    type Output = ComplexExact;
    fn add(self, o: &ComplexExact) -> ComplexExact {
        ComplexExact::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &ComplexExact {
    type Output = ComplexExact;
    fn sub(self, o: &ComplexExact) -> ComplexExact {
        ComplexExact::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &ComplexExact {
    type Output = ComplexExact;
    fn mul(self, o: &ComplexExact) -> ComplexExact {
        ComplexExact::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &ComplexExact {
    type Output = ComplexExact;
    fn neg(self) -> ComplexExact {
        ComplexExact::new(-&self.re, -&self.im)
    }
}

impl Serialize for ComplexExact {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.re.to_string())?;
        t.serialize_element(&self.im.to_string())?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for ComplexExact {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (re, im) = <(String, String)>::deserialize(d)?;
        let p = |s: &str| crate::chern::parse_scalar(s).map_err(serde::de::Error::custom);
        Ok(ComplexExact::new(p(&re)?, p(&im)?))
    }
}

/// `s + 1/6`, the coefficient of `t ch_1^beta` in the real part of `Z`.
fn s_shift(s: &Scalar) -> Scalar {
    s + Scalar::new(1.into(), 6.into())
}

/// `ch_2^beta - (t/2) ch_0`.
pub fn rho(v: &ChernCharacter, p: &PlanePoint) -> Scalar {
    let c = twist(v, &p.beta);
    c.c2() - &p.t * c.c0() / int(2)
}

/// Tilt slope times `alpha`: `rho / ch_1^beta`, or `+inf` when `ch_1^beta = 0`.
pub fn nu(v: &ChernCharacter, p: &PlanePoint) -> Slope {
    let c = twist(v, &p.beta);
    Slope::ratio(rho(v, p), c.c1())
}

/// `ch_3^beta - (s + 1/6) t ch_1^beta`, i.e. `-Re Z`.
fn lambda_numerator(v: &ChernCharacter, p: &PlanePoint, s: &Scalar) -> Scalar {
    let c = twist(v, &p.beta);
    c.c3() - s_shift(s) * &p.t * c.c1()
}

/// `Z = -(ch_3^beta - (s+1/6) t ch_1^beta) + i (ch_2^beta - (t/2) ch_0)`.
pub fn central_charge(v: &ChernCharacter, p: &PlanePoint, s: &Scalar) -> ComplexExact {
    ComplexExact::new(-lambda_numerator(v, p, s), rho(v, p))
}

/// The quarter-rotated charge: `Zhat.re = Z.im`, `Zhat.im = -Z.re`.
pub fn zhat(v: &ChernCharacter, p: &PlanePoint, s: &Scalar) -> ComplexExact {
    ComplexExact::new(rho(v, p), lambda_numerator(v, p, s))
}

/// Bridgeland slope; `+inf` when `rho = 0`.
pub fn lambda(v: &ChernCharacter, p: &PlanePoint, s: &Scalar) -> Slope {
    Slope::ratio(lambda_numerator(v, p, s), &rho(v, p))
}

/// `(ch^beta(F))^T B ch^beta(A)` with
/// `B = [[0,0,-Kt,0],[0,Kt,0,-3],[-Kt,0,4,0],[0,-3,0,0]]`.
pub fn q_pairing(f: &ChernCharacter, a: &ChernCharacter, p: &PlanePoint, k: &Scalar) -> Scalar {
    let x = twist(f, &p.beta).c;
    let y = twist(a, &p.beta).c;
    let kt = k * &p.t;
    -&kt * (&x[0] * &y[2] + &x[2] * &y[0]) + &kt * &x[1] * &y[1]
        - int(3) * (&x[1] * &y[3] + &x[3] * &y[1])
        + int(4) * &x[2] * &y[2]
}

pub fn q_form(v: &ChernCharacter, p: &PlanePoint, k: &Scalar) -> Scalar {
    q_pairing(v, v, p, k)
}

/// Whether `K` lies in `[1, 6s + 1)`, the window where `Q` is known to give a
/// support property. `Q` itself is defined for every `K`.
pub fn is_supported_range(k: &Scalar, s: &Scalar) -> bool {
    *k >= int(1) && *k < int(6) * s + int(1)
}

fn finite_mu(v: &ChernCharacter, what: &str) -> Result<Scalar> {
    match mu(v) {
        Slope::Finite(m) => Ok(m),
        Slope::Infinite => Err(Error::domain(format!("{what} undefined for v0=0"))),
    }
}

/// `C = (6s+1)/3 (mu(v) - beta) + beta`.
pub fn c_const(v: &ChernCharacter, beta: &Scalar, s: &Scalar) -> Result<Scalar> {
    let m = finite_mu(v, "C")?;
    Ok((int(6) * s + int(1)) / int(3) * (m - beta) + beta)
}

/// `D(F, A) = (s+1/6)(mu(A) - beta) delta_20^beta(F,A) - 1/2 delta_30^beta(F,A)`.
pub fn d_pairing(
    f: &ChernCharacter,
    a: &ChernCharacter,
    beta: &Scalar,
    s: &Scalar,
) -> Result<Scalar> {
    let m = finite_mu(a, "D")?;
    let tf = twist(f, beta);
    let ta = twist(a, beta);
    Ok(s_shift(s) * (m - beta) * delta(&tf, &ta, 2, 0) - delta(&tf, &ta, 3, 0) / int(2))
}

/// `D(F, A)` written as `quadratic * beta^2 + linear * beta + constant`
/// using untwisted `delta`s. When `delta_10(F, A) = 0` the quadratic term
/// vanishes and the linear coefficient is `-(s - 1/3) delta_20(F, A)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DExpansion {
    #[serde(with = "scalar_str")]
    pub quadratic: Scalar,
    #[serde(with = "scalar_str")]
    pub linear: Scalar,
    #[serde(with = "scalar_str")]
    pub constant: Scalar,
}

impl DExpansion {
    pub fn eval(&self, beta: &Scalar) -> Scalar {
        (&self.quadratic * beta + &self.linear) * beta + &self.constant
    }
}

pub fn d_expansion(f: &ChernCharacter, a: &ChernCharacter, s: &Scalar) -> Result<DExpansion> {
    let m = finite_mu(a, "D")?;
    let k = s_shift(s);
    let d10 = delta(f, a, 1, 0);
    let d20 = delta(f, a, 2, 0);
    let d30 = delta(f, a, 3, 0);
    let third = Scalar::new(1.into(), 3.into());
    let twelfth = Scalar::new(1.into(), 12.into());
    Ok(DExpansion {
        quadratic: (s - twelfth) * &d10,
        linear: -(s - third) * &d20 - &k * &m * &d10,
        constant: k * m * d20 - d30 / int(2),
    })
}

/// The threshold `beta_0'` below which `D > 0` for the pair `(C, B)`.
/// `mu(A)` is read from `B`, whose slope it shares.
pub fn beta0_prime(
    c: &ChernCharacter,
    b: &ChernCharacter,
    ch3_h0a: &Scalar,
    s: &Scalar,
) -> Result<Scalar> {
    let third = Scalar::new(1.into(), 3.into());
    let d20 = delta(c, b, 2, 0);
    let denom = (s - third) * &d20;
    if denom.is_zero() {
        return Err(Error::domain("threshold undefined (degenerate slope)"));
    }
    let m = finite_mu(b, "beta0'")?;
    let inner = delta(c, b, 3, 0) / int(2) - ch3_h0a * c.v0() - s_shift(s) * m;
    Ok(-inner / denom)
}

/// Upper bound for `ch_3` of a 2-Gieseker semistable sheaf with
/// `ch_{<=2} = v`, read off at a wall-free point `p` of `Theta^-_v`:
/// `(t/6)(v1 - b v0) + b v2 - (b^2/2) v1 + (b^3/6) v0`.
///
/// The caller is responsible for `p` being wall-free; only `v0 > 0` is checked.
pub fn epsilon_bound(v: &ChernCharacter, p: &PlanePoint) -> Result<Scalar> {
    if !v.v0().is_positive() {
        return Err(Error::domain("epsilon bound needs v0 > 0"));
    }
    let b = &p.beta;
    let b2 = b * b;
    Ok(
        &p.t / int(6) * (v.v1() - b * v.v0()) + b * v.v2() - &b2 * v.v1() / int(2)
            + &b2 * b * v.v0() / int(6),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern::frac;

    fn ch(s: &str) -> ChernCharacter {
        ChernCharacter::parse(s).unwrap()
    }

    fn pt(b: Scalar, t: Scalar) -> PlanePoint {
        PlanePoint::new(b, t).unwrap()
    }

    #[test]
    fn nu_examples() {
        let v = ch("2,-1,-1/2,-1/6");
        assert_eq!(nu(&v, &pt(int(-2), int(1))), Slope::Finite(frac(1, 6)));
        assert_eq!(nu(&v, &pt(int(-2), frac(3, 2))), Slope::Finite(int(0)));
        assert_eq!(nu(&ch("0,0,1,0"), &pt(int(3), int(1))), Slope::Infinite);
    }

    #[test]
    fn rho_examples() {
        let v = ch("2,-1,-1/2,-1/6");
        assert_eq!(rho(&v, &pt(int(-2), frac(3, 2))), int(0));
        assert_eq!(rho(&v, &pt(int(-2), int(2))), frac(-1, 2));
        assert_eq!(rho(&ch("0,0,5/2,0"), &pt(frac(7, 3), int(9))), frac(5, 2));
    }

    #[test]
    fn charge_examples() {
        let v = ch("2,-1,-1/2,-1/6");
        let p = pt(int(-2), int(1));
        let s = frac(1, 3);
        assert_eq!(
            central_charge(&v, &p, &s),
            ComplexExact::new(int(2), frac(1, 2))
        );
        assert_eq!(zhat(&v, &p, &s), ComplexExact::new(frac(1, 2), int(-2)));
        assert_eq!(lambda(&v, &p, &s), Slope::Finite(int(-4)));

        let z = central_charge(&ch("0,0,0,7"), &pt(frac(-5, 2), frac(1, 9)), &int(2));
        assert_eq!(z, ComplexExact::real(int(-7)));

        // On Theta_v with nonzero numerator lambda is infinite.
        assert_eq!(lambda(&v, &pt(int(-2), frac(3, 2)), &s), Slope::Infinite);
    }

    #[test]
    fn q_form_examples() {
        let p = pt(frac(1, 2), int(3));
        assert_eq!(q_form(&ch("0,0,0,1"), &p, &int(2)), int(0));
        let v = ch("2,-1,-1/2,-1/6");
        assert_eq!(q_pairing(&v, &v, &p, &int(3)), q_form(&v, &p, &int(3)));
        assert!(is_supported_range(&int(1), &frac(1, 3)));
        assert!(!is_supported_range(&int(3), &frac(1, 3)));
    }

    #[test]
    fn c_const_examples() {
        let v = ch("2,-1,-1/2,-1/6");
        assert_eq!(c_const(&v, &int(-2), &frac(1, 3)).unwrap(), frac(-1, 2));
        assert_eq!(c_const(&v, &frac(-1, 2), &int(5)).unwrap(), frac(-1, 2));
        assert_eq!(
            c_const(&ch("1,0,0,0"), &int(0), &frac(1, 3)).unwrap(),
            int(0)
        );
        let err = c_const(&ch("0,1,0,0"), &int(0), &int(1)).unwrap_err();
        assert_eq!(err.to_string(), "C undefined for v0=0");
    }

    #[test]
    fn d_pairing_examples() {
        let f = ch("1,-1,1/2,-1/6");
        let a = ch("2,-1,-1/2,-1/6");
        let s = frac(1, 3);
        assert_eq!(d_pairing(&a, &a, &int(-2), &s).unwrap(), int(0));
        let direct = d_pairing(&f, &a, &int(-2), &s).unwrap();
        let expanded = d_expansion(&f, &a, &s).unwrap().eval(&int(-2));
        assert_eq!(direct, expanded);
        assert!(d_pairing(&f, &ch("0,1,0,0"), &int(0), &s).is_err());
    }

    #[test]
    fn d_is_beta_free_at_s_one_third_when_slopes_agree() {
        // delta_10 = 0 pair: same slope.
        let f = ch("2,-2,1,0");
        let a = ch("1,-1,0,1/6");
        let e = d_expansion(&f, &a, &frac(1, 3)).unwrap();
        assert!(e.quadratic.is_zero() && e.linear.is_zero());
        let d1 = d_pairing(&f, &a, &int(-3), &frac(1, 3)).unwrap();
        let d2 = d_pairing(&f, &a, &frac(7, 5), &frac(1, 3)).unwrap();
        assert_eq!(d1, d2);
    }

    #[test]
    fn beta0_prime_examples() {
        // delta_20(C,B) = 1, delta_30(C,B) = 1, mu(B) = -1/2.
        let c = ch("0,0,1/2,1/2");
        let b = ch("2,-1,0,0");
        assert_eq!(delta(&c, &b, 2, 0), int(1));
        assert_eq!(delta(&c, &b, 3, 0), int(1));
        let s = frac(5, 6);
        let got = beta0_prime(&c, &b, &int(0), &s).unwrap();
        // Second evaluation order: numerator first, then divide.
        let num = frac(1, 2) - int(0) - (frac(5, 6) + frac(1, 6)) * frac(-1, 2);
        let den = (frac(5, 6) - frac(1, 3)) * int(1);
        assert_eq!(got, -num / den);
        assert_eq!(got, int(-2));

        // Linearity in ch3(H^0(A)).
        let c2 = ch("1,-1,1,1/2");
        let b2 = ch("2,-1,-1/2,-1/6");
        let s2 = frac(2, 3);
        let base = beta0_prime(&c2, &b2, &int(0), &s2).unwrap();
        let shifted = beta0_prime(&c2, &b2, &int(1), &s2).unwrap();
        let d20 = delta(&c2, &b2, 2, 0);
        assert_eq!(&shifted - &base, c2.v0() / ((&s2 - frac(1, 3)) * d20));

        // Vanishing numerator.
        let c3 = ch("0,0,1,0");
        let b3 = ch("1,0,0,0");
        assert_eq!(beta0_prime(&c3, &b3, &int(0), &int(1)).unwrap(), int(0));

        assert!(beta0_prime(&c2, &b2, &int(0), &frac(1, 3)).is_err());
        assert!(beta0_prime(&ch("2,-2,1,0"), &ch("1,-1,1/2,0"), &int(0), &int(1)).is_err());
    }

    #[test]
    fn epsilon_bound_examples() {
        let v = ch("2,-1,-1/2,0");
        let e = epsilon_bound(&v, &pt(int(-2), frac(3, 2))).unwrap();
        assert_eq!(e, frac(13, 12));
        assert!(e >= frac(5, 6));
        let o = ch("1,0,0,0");
        assert_eq!(epsilon_bound(&o, &pt(int(-1), int(1))).unwrap(), int(0));
        assert!(epsilon_bound(&ch("0,1,0,0"), &pt(int(-1), int(1))).is_err());
    }

    #[test]
    fn complex_json() {
        let z = ComplexExact::new(frac(1, 2), int(-2));
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"["1/2","-2"]"#);
        assert_eq!(serde_json::from_str::<ComplexExact>(&s).unwrap(), z);
    }
}
