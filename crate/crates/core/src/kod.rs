//! The Kodaira-dimension value type and the sign-to-dimension map.

use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;
use core::str::FromStr;

use num_traits::{Signed, Zero};

use crate::lattice::Rational;

/// Extended Kodaira dimension, one of −∞, 0, 1, 2.
///
/// Ordered with `NegInf` minimal. Addition treats `NegInf` as absorbing; a
/// finite sum above 2 is outside every computation here, so `+` panics on it
/// and [`KodDim::checked_add`] reports it as `None`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KodDim {
    NegInf,
    Zero,
    One,
    Two,
}

impl KodDim {
    pub const ALL: [KodDim; 4] = [KodDim::NegInf, KodDim::Zero, KodDim::One, KodDim::Two];

    /// `None` for −∞, otherwise the finite value.
    pub fn finite(self) -> Option<u8> {
        match self {
            KodDim::NegInf => None,
            KodDim::Zero => Some(0),
            KodDim::One => Some(1),
            KodDim::Two => Some(2),
        }
    }

    pub fn from_finite(v: u8) -> Option<KodDim> {
        match v {
            0 => Some(KodDim::Zero),
            1 => Some(KodDim::One),
            2 => Some(KodDim::Two),
            _ => None,
        }
    }

    pub fn checked_add(self, rhs: KodDim) -> Option<KodDim> {
        match (self.finite(), rhs.finite()) {
            (Some(a), Some(b)) => KodDim::from_finite(a + b),
            _ => Some(KodDim::NegInf),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            KodDim::NegInf => "-inf",
            KodDim::Zero => "0",
            KodDim::One => "1",
            KodDim::Two => "2",
        }
    }

    /// Maximum over a collection; the empty collection gives −∞.
    pub fn max_of<I: IntoIterator<Item = KodDim>>(it: I) -> KodDim {
        it.into_iter().max().unwrap_or(KodDim::NegInf)
    }
}

impl Add for KodDim {
    type Output = KodDim;

    fn add(self, rhs: KodDim) -> KodDim {
        self.checked_add(rhs)
            .expect("Kodaira dimension sum exceeds 2")
    }
}

impl fmt::Display for KodDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseKodDimError;

impl fmt::Display for ParseKodDimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected one of -inf, 0, 1, 2")
    }
}

impl FromStr for KodDim {
    type Err = ParseKodDimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "-inf" => Ok(KodDim::NegInf),
            "0" => Ok(KodDim::Zero),
            "1" => Ok(KodDim::One),
            "2" => Ok(KodDim::Two),
            _ => Err(ParseKodDimError),
        }
    }
}

/// Sign of an exact quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(r: &Rational) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn of_int(v: i64) -> Sign {
        match v.cmp(&0) {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Zero => '0',
            Sign::Positive => '+',
        }
    }
}

/// Kodaira dimension of a number: −∞, 0 or 1 according to its sign.
pub fn kappa_number(r: &Rational) -> KodDim {
    kappa_of_sign(Sign::of(r))
}

pub fn kappa_of_sign(s: Sign) -> KodDim {
    match s {
        Sign::Negative => KodDim::NegInf,
        Sign::Zero => KodDim::Zero,
        Sign::Positive => KodDim::One,
    }
}

/// The four-row sign table shared by the absolute and relative definitions.
///
/// `pairing` is the sign of the class against the symplectic form and
/// `square` the sign of its self-intersection. The cell (0, +) cannot occur
/// for symplectic data and is returned as `None`.
pub fn sign_table(pairing: Sign, square: Sign) -> Option<KodDim> {
    match (pairing, square) {
        (Sign::Negative, _) | (_, Sign::Negative) => Some(KodDim::NegInf),
        (Sign::Zero, Sign::Zero) => Some(KodDim::Zero),
        (Sign::Positive, Sign::Zero) => Some(KodDim::One),
        (Sign::Positive, Sign::Positive) => Some(KodDim::Two),
        (Sign::Zero, Sign::Positive) => None,
    }
}
