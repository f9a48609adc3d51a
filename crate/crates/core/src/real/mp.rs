//! Thin helpers over `astro_float` with the precision carried explicitly.

use std::cell::RefCell;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Arithmetic at a fixed binary precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Mp {
    pub p: usize,
}

impl Mp {
    pub fn new(p: usize) -> Self {
        Mp { p }
    }

    pub fn f(&self, v: f64) -> BigFloat {
        BigFloat::from_f64(v, self.p)
    }

    pub fn u(&self, v: u64) -> BigFloat {
        BigFloat::from_u64(v, self.p)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, RM)
    }

    pub fn recip(&self, a: &BigFloat) -> BigFloat {
        a.reciprocal(self.p, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.p, RM)
    }

    pub fn powi(&self, a: &BigFloat, n: usize) -> BigFloat {
        a.powi(n, self.p, RM)
    }

    pub fn ln(&self, a: &BigFloat) -> BigFloat {
        with_consts(|cc| a.ln(self.p, RM, cc))
    }

    pub fn exp(&self, a: &BigFloat) -> BigFloat {
        with_consts(|cc| a.exp(self.p, RM, cc))
    }

    pub fn sin(&self, a: &BigFloat) -> BigFloat {
        with_consts(|cc| a.sin(self.p, RM, cc))
    }

    pub fn cos(&self, a: &BigFloat) -> BigFloat {
        with_consts(|cc| a.cos(self.p, RM, cc))
    }

    pub fn pi(&self) -> BigFloat {
        with_consts(|cc| cc.pi(self.p, RM))
    }

    pub fn ln2(&self) -> BigFloat {
        with_consts(|cc| cc.ln_2(self.p, RM))
    }

    pub fn round(&self, a: &BigFloat) -> BigFloat {
        let mut r = a.clone();
        let _ = r.set_precision(self.p, RM);
        r
    }

    pub fn int(&self, n: &BigInt) -> BigFloat {
        if n.is_zero() {
            return BigFloat::new(self.p);
        }
        let (sign, mag) = n.clone().into_parts();
        let bits = mag.bits() as usize;
        let words_len = bits.div_ceil(64);
        let shift = words_len * 64 - bits;
        let words = (mag << shift).to_u64_digits();
        let s = if sign == num_bigint::Sign::Minus {
            Sign::Neg
        } else {
            Sign::Pos
        };
        let exact = BigFloat::from_words(&words, s, bits as astro_float::Exponent);
        self.round(&exact)
    }

    pub fn rat(&self, q: &BigRational) -> BigFloat {
        let guard = Mp::new(self.p + 64);
        self.div(&guard.int(q.numer()), &guard.int(q.denom()))
    }
}

pub(crate) fn abs(a: &BigFloat) -> BigFloat {
    if a.is_negative() {
        a.neg()
    } else {
        a.clone()
    }
}

pub(crate) fn is_pos(a: &BigFloat) -> bool {
    a.is_positive() && !a.is_zero()
}

/// `log2 |a|` as a float, `-inf` for zero. Safe for exponents far outside
/// the `f64` range.
pub(crate) fn log2_abs(a: &BigFloat) -> f64 {
    match a.as_raw_parts() {
        Some((m, _, _, e, _)) if !a.is_zero() => {
            let top = *m.last().unwrap_or(&0) as f64 / 18_446_744_073_709_551_616.0;
            e as f64 + top.log2()
        }
        _ => f64::NEG_INFINITY,
    }
}

pub(crate) fn to_f64(a: &BigFloat) -> f64 {
    if a.is_nan() {
        return f64::NAN;
    }
    if a.is_inf_pos() {
        return f64::INFINITY;
    }
    if a.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let Some((m, _, sign, e, _)) = a.as_raw_parts() else {
        return f64::NAN;
    };
    if a.is_zero() {
        return 0.0;
    }
    let top = *m.last().unwrap_or(&0) as f64 / 18_446_744_073_709_551_616.0;
    let e = e as i64;
    let mag = if e > 1025 {
        f64::INFINITY
    } else if e < -1100 {
        0.0
    } else {
        let half = (e / 2) as i32;
        top * 2f64.powi(half) * 2f64.powi(e as i32 - half)
    };
    if sign == Sign::Neg {
        -mag
    } else {
        mag
    }
}

/// Signed decimal digits and decimal exponent: value = 0.d1d2d3... × 10^exp.
fn decimal_digits(a: &BigFloat) -> (bool, Vec<u8>, i64) {
    let s = with_consts(|cc| a.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".to_string());
    let negative = s.starts_with('-');
    let body = s.trim_start_matches('-');
    let (mant, exp) = match body.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (body, 0),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    let mut digits: Vec<u8> = int_part.bytes().chain(frac_part.bytes()).map(|b| b - b'0').collect();
    let mut point = int_part.len() as i64 + exp;
    while digits.first() == Some(&0) {
        digits.remove(0);
        point -= 1;
    }
    (negative, digits, point)
}

/// Decimal rendering rounded to `sig` significant digits. Plain notation for
/// moderate magnitudes, scientific otherwise.
pub(crate) fn format_sig(a: &BigFloat, sig: usize) -> String {
    if a.is_nan() {
        return "NaN".into();
    }
    if a.is_zero() {
        return "0".into();
    }
    let sig = sig.max(1);
    let (negative, mut digits, mut point) = decimal_digits(a);
    if digits.is_empty() {
        return "0".into();
    }
    if digits.len() > sig {
        let round_up = digits[sig] >= 5;
        digits.truncate(sig);
        if round_up {
            let mut i = sig;
            loop {
                if i == 0 {
                    digits.insert(0, 1);
                    digits.truncate(sig);
                    point += 1;
                    break;
                }
                i -= 1;
                if digits[i] == 9 {
                    digits[i] = 0;
                } else {
                    digits[i] += 1;
                    break;
                }
            }
        }
    }
    while digits.len() > 1 && digits.last() == Some(&0) {
        digits.pop();
    }
    let ds: String = digits.iter().map(|d| char::from(b'0' + d)).collect();
    let body = if (-5..=21).contains(&point) {
        if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), ds)
        } else if point as usize >= ds.len() {
            format!("{}{}", ds, "0".repeat(point as usize - ds.len()))
        } else {
            format!("{}.{}", &ds[..point as usize], &ds[point as usize..])
        }
    } else {
        let (head, tail) = ds.split_at(1);
        if tail.is_empty() {
            format!("{}e{}", head, point - 1)
        } else {
            format!("{}.{}e{}", head, tail, point - 1)
        }
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}
