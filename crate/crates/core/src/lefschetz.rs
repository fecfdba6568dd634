//! Lefschetz fibrations over closed surfaces: Euler characteristic, Endo's
//! signature for hyperelliptic fibrations over the sphere, the weight
//! divisor on the base, and κ^s of the total space.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::kod::{kappa_number, KodDim};
use crate::lattice::{int, ratio, Rational};
use crate::low_dim::{kappa_surface, kappa_surface_divisor, surface_bundle_kappa, QDivisor};

/// A relatively minimal Lefschetz fibration.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LefschetzData {
    /// Fiber genus.
    pub g: u32,
    /// Base genus.
    pub h: u32,
    /// Number of non-separating singular fibers.
    pub a: u32,
    /// `s[p − 1]` separating singular fibers of type `(p, g − p)`.
    pub s: Vec<u32>,
    pub hyperelliptic: bool,
    /// Whether the total space is minimal.
    pub minimal: bool,
    /// Number of −1 spheres blown down to reach a minimal model.
    pub c: u32,
    /// `Σ [F]·Eᵢ` over those spheres.
    pub c_prime: u32,
    /// Fiber null-homologous in the total space.
    pub fiber_null_homologous: bool,
}

impl LefschetzData {
    /// Minimal fibration over the sphere with the given singular fibers.
    pub fn over_sphere(g: u32, a: u32, s: Vec<u32>) -> Self {
        LefschetzData {
            g,
            h: 0,
            a,
            s,
            hyperelliptic: true,
            minimal: true,
            c: 0,
            c_prime: 0,
            fiber_null_homologous: false,
        }
    }

    pub fn singular_fibers(&self) -> u64 {
        u64::from(self.a) + self.s.iter().map(|&x| u64::from(x)).sum::<u64>()
    }

    fn check(&self) -> Result<()> {
        if self.g == 0 {
            return Err(Error::Precondition(
                "fiber genus must be at least 1; sphere fibrations with singular fibers are not relatively minimal".into(),
            ));
        }
        let max_p = (self.g / 2) as usize;
        if self.s.len() > max_p && self.s[max_p..].iter().any(|&x| x != 0) {
            return Err(Error::InconsistentInput(format!(
                "separating fibers of type p > {max_p} do not exist in genus {}",
                self.g
            )));
        }
        Ok(())
    }

    fn s_at(&self, p: usize) -> u32 {
        self.s.get(p - 1).copied().unwrap_or(0)
    }
}

/// `χ = (2 − 2g)(2 − 2h) + a + Σ s_p`.
pub fn euler_char(l: &LefschetzData) -> i64 {
    (2 - 2 * i64::from(l.g)) * (2 - 2 * i64::from(l.h)) + l.singular_fibers() as i64
}

/// Endo's signature without the integrality check.
pub fn endo_signature_raw(g: u32, a: u32, s: &[u32]) -> Rational {
    let g = i64::from(g);
    let mut sigma = ratio(-(g + 1), 2 * g + 1) * int(i64::from(a));
    for (i, &sp) in s.iter().enumerate() {
        let p = i as i64 + 1;
        sigma += (ratio(4 * p * (g - p), 2 * g + 1) - int(1)) * int(i64::from(sp));
    }
    sigma
}

/// Endo's signature of a hyperelliptic fibration over the sphere; rejects
/// data whose signature is not an integer.
pub fn endo_signature(g: u32, a: u32, s: &[u32]) -> Result<Rational> {
    if g < 2 {
        return Err(Error::Precondition("the signature formula needs fiber genus >= 2".into()));
    }
    let sigma = endo_signature_raw(g, a, s);
    if !sigma.is_integer() {
        return Err(Error::NonIntegralSignature(format!(
            "signature {sigma} for g={g}, a={a}, s={s:?} is not an integer; no such fibration"
        )));
    }
    Ok(sigma)
}

/// `K² = 3σ + 2χ` for a minimal hyperelliptic fibration over the sphere,
/// evaluated from the signature and Euler characteristic and again from the
/// expanded closed form; the two must agree exactly.
pub fn k_squared_hyperelliptic(g: u32, a: u32, s: &[u32]) -> Result<Rational> {
    if g < 2 {
        return Err(Error::Precondition("fiber genus must be at least 2".into()));
    }
    let l = LefschetzData::over_sphere(g, a, s.to_vec());
    l.check()?;
    let direct = int(3) * endo_signature_raw(g, a, s) + int(2 * euler_char(&l));
    let expanded = k_squared_expanded(g, a, s);
    if direct != expanded {
        return Err(Error::InternalConsistency(format!(
            "3 sigma + 2 chi = {direct} but the closed form gives {expanded}"
        )));
    }
    Ok(direct)
}

fn k_squared_expanded(g: u32, a: u32, s: &[u32]) -> Rational {
    let g = i64::from(g);
    let mut k2 = int(4 * (2 - 2 * g)) + ratio(g - 1, 2 * g + 1) * int(i64::from(a));
    for (i, &sp) in s.iter().enumerate() {
        let p = i as i64 + 1;
        let num = 6 * p * (g - 2 * p) + 2 * g * (p - 1) + (4 * g * p - 1);
        k2 += ratio(num, 2 * g + 1) * int(i64::from(sp));
    }
    k2
}

/// Weights of the singular-fiber types.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightSystem {
    pub b_ns: Rational,
    /// `b_sep[p − 1]` for `p = 1..⌊g/2⌋`.
    pub b_sep: Vec<Rational>,
}

pub fn weights(g: u32) -> Result<WeightSystem> {
    match g {
        0 => Err(Error::Precondition("fiber genus must be at least 1".into())),
        1 => Ok(WeightSystem { b_ns: ratio(1, 12), b_sep: Vec::new() }),
        _ => {
            let g = i64::from(g);
            let den = (4 * g - 4) * (2 * g + 1);
            let b_sep = (1..=g / 2)
                .map(|p| ratio(6 * p * (g - 2 * p) + 2 * g * (p - 1) + (4 * g * p - 1), den))
                .collect();
            Ok(WeightSystem { b_ns: ratio(g - 1, den), b_sep })
        }
    }
}

/// One point per singular fiber, weighted by its type.
pub fn base_divisor(l: &LefschetzData) -> Result<QDivisor> {
    l.check()?;
    let w = weights(l.g)?;
    let mut d = QDivisor::uniform("ns", l.a as usize, &w.b_ns);
    for (i, b) in w.b_sep.iter().enumerate() {
        let sp = l.s_at(i + 1) as usize;
        d = d.merged(QDivisor::uniform(&format!("sep{}_", i + 1), sp, b))?;
    }
    if l.g == 1 && l.s.iter().any(|&x| x != 0) {
        return Err(Error::InconsistentInput(
            "genus-1 fibrations have a single singular-fiber type".into(),
        ));
    }
    Ok(d)
}

/// Intermediate values of [`kappa_total`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzKappa {
    pub kappa: KodDim,
    pub euler: i64,
    /// Degree `c(D)` of the weight divisor.
    pub divisor_degree: Rational,
    pub signature: Option<Rational>,
    pub k_squared: Option<Rational>,
}

/// κ^s of the total space.
pub fn kappa_total(l: &LefschetzData) -> Result<LefschetzKappa> {
    l.check()?;
    if l.g == 1 && l.h == 0 && l.fiber_null_homologous {
        return Err(Error::Unsupported(
            "genus-1 fibration over the sphere with null-homologous fiber (Hopf-type surfaces carry no symplectic form)".into(),
        ));
    }
    let euler = euler_char(l);
    let d = base_divisor(l)?;
    let divisor_degree = d.degree();
    let mut out = LefschetzKappa {
        kappa: KodDim::NegInf,
        euler,
        divisor_degree: divisor_degree.clone(),
        signature: None,
        k_squared: None,
    };
    if l.singular_fibers() == 0 {
        out.kappa = surface_bundle_kappa(l.h, l.g);
        return Ok(out);
    }
    if l.h >= 1 || l.g == 1 {
        out.kappa = kappa_surface_divisor(l.h, &d) + kappa_surface(l.g);
        return Ok(out);
    }
    if !l.hyperelliptic {
        return Err(Error::Unsupported(
            "fibrations over the sphere with fiber genus >= 2 must be hyperelliptic".into(),
        ));
    }
    out.signature = Some(endo_signature(l.g, l.a, &l.s)?);
    let k2 = k_squared_hyperelliptic(l.g, l.a, &l.s)?;
    out.k_squared = Some(k2.clone());
    let fiber = kappa_surface(l.g);
    if l.minimal {
        let by_k2 = kappa_number(&k2) + fiber;
        let by_base = kappa_surface_divisor(0, &d) + fiber;
        if by_k2 != by_base {
            return Err(Error::InternalConsistency(format!(
                "kappa from K^2 ({by_k2}) differs from kappa from the base divisor ({by_base})"
            )));
        }
        out.kappa = by_k2;
    } else {
        let g4 = 4 * i64::from(l.g) - 4;
        let base = int(-2) + divisor_degree + ratio(i64::from(l.c), g4);
        let fiber_side = int(2 * i64::from(l.g) - 2 - i64::from(l.c_prime));
        out.kappa = kappa_number(&base) + kappa_number(&fiber_side);
    }
    Ok(out)
}

/// `K_τ² = 2(K + [F])²` for the self fiber sum.
pub fn double_k_squared(k_plus_f_squared: &Rational) -> Rational {
    int(2) * k_plus_f_squared
}

/// `K_τ² = 2(c(D) − 1)(4g − 4)` of the self fiber sum, from the weights.
pub fn self_sum_k_squared(l: &LefschetzData) -> Result<Rational> {
    let d = base_divisor(l)?;
    Ok(int(2) * (d.degree() - int(1)) * int(4 * i64::from(l.g) - 4))
}

/// Whether every weight is positive.
pub fn weights_positive(w: &WeightSystem) -> bool {
    w.b_ns.is_positive() && w.b_sep.iter().all(|b| b.is_positive())
}

/// `K² / (4g − 4) + 2`, the base degree implied by a value of `K²`.
pub fn implied_divisor_degree(g: u32, k_squared: &Rational) -> Rational {
    let g4 = int(4 * i64::from(g) - 4);
    if g4.is_zero() {
        return int(2);
    }
    k_squared / g4 + int(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn euler_characteristic() {
        let mut l = LefschetzData::over_sphere(1, 24, vec![]);
        assert_eq!(euler_char(&l), 24);
        l = LefschetzData::over_sphere(2, 40, vec![0]);
        assert_eq!(euler_char(&l), 36);
        l.a = 0;
        l.h = 2;
        assert_eq!(euler_char(&l), 4);
    }

    #[test]
    fn signatures() {
        assert_eq!(endo_signature(2, 20, &[0]).unwrap(), int(-12));
        assert_eq!(endo_signature(2, 6, &[2]).unwrap(), int(-4));
        assert_eq!(endo_signature(3, 0, &[0]).unwrap(), int(0));
        assert!(matches!(endo_signature(2, 1, &[]), Err(Error::NonIntegralSignature(_))));
    }

    #[test]
    fn k_squared_values() {
        assert_eq!(k_squared_hyperelliptic(2, 40, &[0]).unwrap(), int(0));
        assert_eq!(k_squared_hyperelliptic(2, 12, &[4]).unwrap(), int(0));
        assert_eq!(k_squared_hyperelliptic(2, 20, &[0]).unwrap(), int(-4));
    }

    #[test]
    fn weight_values() {
        assert_eq!(weights(1).unwrap().b_ns, ratio(1, 12));
        let w2 = weights(2).unwrap();
        assert_eq!((w2.b_ns.clone(), w2.b_sep.clone()), (ratio(1, 20), vec![ratio(7, 20)]));
        let w3 = weights(3).unwrap();
        assert_eq!((w3.b_ns, w3.b_sep), (ratio(1, 28), vec![ratio(17, 56)]));
        for g in 1..12 {
            assert!(weights_positive(&weights(g).unwrap()));
        }
    }

    #[test]
    fn divisors() {
        let e2 = LefschetzData::over_sphere(1, 24, vec![]);
        assert_eq!(base_divisor(&e2).unwrap().degree(), int(2));
        let g2 = LefschetzData::over_sphere(2, 20, vec![]);
        assert_eq!(base_divisor(&g2).unwrap().degree(), int(1));
        let none = LefschetzData::over_sphere(2, 0, vec![]);
        assert!(base_divisor(&none).unwrap().is_empty());
    }

    #[test]
    fn elliptic_surfaces() {
        for (n, k) in [(1, KodDim::NegInf), (2, KodDim::Zero), (3, KodDim::One)] {
            let l = LefschetzData::over_sphere(1, 12 * n, vec![]);
            assert_eq!(kappa_total(&l).unwrap().kappa, k);
        }
    }

    #[test]
    fn genus_two_cases() {
        let l = LefschetzData::over_sphere(2, 40, vec![0]);
        assert_eq!(kappa_total(&l).unwrap().kappa, KodDim::One);
        let mut l = LefschetzData::over_sphere(2, 20, vec![]);
        l.h = 2;
        assert_eq!(kappa_total(&l).unwrap().kappa, KodDim::Two);
        l.h = 1;
        assert_eq!(kappa_total(&l).unwrap().kappa, KodDim::Two);
    }

    #[test]
    fn rejected_configurations() {
        let mut l = LefschetzData::over_sphere(2, 20, vec![]);
        l.hyperelliptic = false;
        assert!(matches!(kappa_total(&l), Err(Error::Unsupported(_))));
        let mut hopf = LefschetzData::over_sphere(1, 0, vec![]);
        hopf.fiber_null_homologous = true;
        assert!(matches!(kappa_total(&hopf), Err(Error::Unsupported(_))));
        let sep = LefschetzData::over_sphere(1, 12, vec![1]);
        assert!(kappa_total(&sep).is_err());
        let too_many = LefschetzData::over_sphere(3, 12, vec![0, 1]);
        assert!(matches!(kappa_total(&too_many), Err(Error::InconsistentInput(_))));
    }

    #[test]
    fn non_minimal_reduces() {
        let mut l = LefschetzData::over_sphere(2, 40, vec![0]);
        let minimal = kappa_total(&l).unwrap().kappa;
        l.minimal = false;
        assert_eq!(kappa_total(&l).unwrap().kappa, minimal);
        l.c = 4;
        l.c_prime = 1;
        assert_eq!(kappa_total(&l).unwrap().kappa, KodDim::Two);
    }

    #[test]
    fn fiber_sum_doubling() {
        assert_eq!(double_k_squared(&int(3)), int(6));
        let single = LefschetzData::over_sphere(2, 20, vec![]);
        assert_eq!(self_sum_k_squared(&single).unwrap(), int(0));
        assert_eq!(k_squared_hyperelliptic(2, 40, &[]).unwrap(), int(0));
    }
}
