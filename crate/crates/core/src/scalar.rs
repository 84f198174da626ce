//! Exact rational and Gaussian-rational helpers.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;
pub type GQ = Complex<BigRational>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn gq(re: Q, im: Q) -> GQ {
    Complex::new(re, im)
}

pub fn gq_real(re: Q) -> GQ {
    Complex::new(re, Q::zero())
}

pub fn gq_zero() -> GQ {
    Complex::new(Q::zero(), Q::zero())
}

pub fn scale_gq(s: &Q, z: &GQ) -> GQ {
    Complex::new(s * &z.re, s * &z.im)
}

pub fn abs2(z: &GQ) -> Q {
    &z.re * &z.re + &z.im * &z.im
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn is_integer(x: &Q) -> bool {
    x.is_integer()
}

/// Nonnegative integer value of `x`, if it is one.
pub fn as_nonneg_int(x: &Q) -> Option<u64> {
    if x.is_integer() && !x.is_negative() {
        x.to_integer().to_u64()
    } else {
        None
    }
}

/// Rising factorial (x)_n.
pub fn rising(x: &Q, n: u32) -> Q {
    let mut acc = Q::one();
    let mut t = x.clone();
    for _ in 0..n {
        acc *= &t;
        t += Q::one();
    }
    acc
}

pub fn rising_f64(x: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (x + i as f64))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Parses `"3"`, `"-7/2"`, `"4.5"` or `"1.25e-2"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Q::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    let shift = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut v = if shift >= 0 {
        Q::from_integer(n * num_traits::pow(ten, shift as usize))
    } else {
        Q::new(n, num_traits::pow(ten, (-shift) as usize))
    };
    if neg {
        v = -v;
    }
    Ok(v)
}

pub fn format_rational(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `"p/q"` for real values, otherwise `"a+bi"` or `"a-bi"`.
pub fn format_gq(z: &GQ) -> String {
    if z.im.is_zero() {
        return format_rational(&z.re);
    }
    let im_abs = z.im.abs();
    let sign = if z.im.is_negative() { '-' } else { '+' };
    let im = if im_abs.is_one() {
        String::new()
    } else {
        format_rational(&im_abs)
    };
    if z.re.is_zero() {
        let lead = if z.im.is_negative() { "-" } else { "" };
        format!("{lead}{im}i")
    } else {
        format!("{}{sign}{im}i", format_rational(&z.re))
    }
}

/// Parses `"a"`, `"bi"`, `"a+bi"` with rational parts.
pub fn parse_gq(s: &str) -> Result<GQ> {
    let s = s.trim().replace(' ', "");
    if let Some(body) = s.strip_suffix('i') {
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(i, c)| {
                (c == '+' || c == '-') && !matches!(body.as_bytes()[i - 1], b'e' | b'E')
            })
            .map(|(i, _)| i)
            .last();
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => Q::one(),
            "-" => -Q::one(),
            other => parse_rational(other)?,
        };
        Ok(gq(parse_rational(re)?, im))
    } else {
        Ok(gq_real(parse_rational(&s)?))
    }
}
