//! Kodaira dimensions in dimensions 0 through 3, surfaces relative to
//! rational divisors, branched covers, Seifert fibrations and low-dimensional
//! bundles.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::kod::{kappa_number, KodDim};
use crate::lattice::{int, ratio, Rational};

/// A finite rational combination of labeled points on a surface.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QDivisor {
    entries: Vec<(String, Rational)>,
}

impl QDivisor {
    pub fn empty() -> Self {
        QDivisor::default()
    }

    /// Fails if a point id repeats.
    pub fn new(entries: Vec<(String, Rational)>) -> Result<Self> {
        for (i, (id, _)) in entries.iter().enumerate() {
            if entries[..i].iter().any(|(other, _)| other == id) {
                return Err(Error::InconsistentInput(format!("repeated divisor point `{id}`")));
            }
        }
        Ok(QDivisor { entries })
    }

    /// `count` points `{prefix}1..{prefix}count` of equal weight.
    pub fn uniform(prefix: &str, count: usize, weight: &Rational) -> Self {
        QDivisor {
            entries: (1..=count).map(|i| (format!("{prefix}{i}"), weight.clone())).collect(),
        }
    }

    /// Union of two divisors with disjoint supports.
    pub fn merged(mut self, other: QDivisor) -> Result<Self> {
        self.entries.extend(other.entries);
        QDivisor::new(self.entries)
    }

    pub fn entries(&self) -> &[(String, Rational)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total weight `c(D)`.
    pub fn degree(&self) -> Rational {
        self.entries.iter().map(|(_, w)| w).sum()
    }

    pub fn is_effective(&self) -> bool {
        self.entries.iter().all(|(_, w)| !w.is_negative())
    }

    pub fn is_negative(&self) -> bool {
        self.entries.iter().all(|(_, w)| !w.is_positive())
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|(_, w)| w.is_integer())
    }
}

/// The eight Thurston geometries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Geometry {
    S3,
    S2xR,
    E3,
    Nil,
    Sol,
    H2xR,
    SL2RTilde,
    H3,
}

impl Geometry {
    pub const ALL: [Geometry; 8] = [
        Geometry::S3,
        Geometry::S2xR,
        Geometry::E3,
        Geometry::Nil,
        Geometry::Sol,
        Geometry::H2xR,
        Geometry::SL2RTilde,
        Geometry::H3,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Geometry::S3 => "S3",
            Geometry::S2xR => "S2xR",
            Geometry::E3 => "E3",
            Geometry::Nil => "Nil",
            Geometry::Sol => "Sol",
            Geometry::H2xR => "H2xR",
            Geometry::SL2RTilde => "SL2R_tilde",
            Geometry::H3 => "H3",
        }
    }

    /// Kodaira dimension of a single piece carrying this geometry.
    pub fn kappa(self) -> KodDim {
        match self {
            Geometry::S3 | Geometry::S2xR => KodDim::NegInf,
            Geometry::E3 | Geometry::Nil | Geometry::Sol => KodDim::Zero,
            Geometry::H2xR | Geometry::SL2RTilde | Geometry::H3 => KodDim::One,
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Geometry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Geometry::ALL
            .into_iter()
            .find(|g| g.label() == s)
            .ok_or_else(|| Error::InconsistentInput(format!("unknown geometry label `{s}`")))
    }
}

/// Seifert fibration data: closed base of the given genus and the
/// multiplicities of the exceptional fibers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertData {
    pub base_genus: u32,
    pub multiplicities: Vec<u32>,
    pub base_orientable: bool,
}

impl SeifertData {
    pub fn new(base_genus: u32, multiplicities: Vec<u32>) -> Self {
        SeifertData { base_genus, multiplicities, base_orientable: true }
    }

    /// Orbifold divisor `Σ (1 − 1/aᵢ) pᵢ`.
    pub fn orbifold_divisor(&self) -> Result<QDivisor> {
        self.validate()?;
        Ok(QDivisor {
            entries: self
                .multiplicities
                .iter()
                .enumerate()
                .map(|(i, &a)| (format!("p{}", i + 1), int(1) - ratio(1, a as i64)))
                .collect(),
        })
    }

    /// `χ(B) − Σ (1 − 1/aᵢ)`.
    pub fn orbifold_euler_characteristic(&self) -> Result<Rational> {
        let chi = int(2 - 2 * self.base_genus as i64);
        Ok(chi - self.orbifold_divisor()?.degree())
    }

    fn validate(&self) -> Result<()> {
        if !self.base_orientable {
            return Err(Error::Unsupported("non-orientable Seifert base".into()));
        }
        if let Some(a) = self.multiplicities.iter().find(|&&a| a < 2) {
            return Err(Error::InconsistentInput(format!("fiber multiplicity {a} is below 2")));
        }
        Ok(())
    }
}

/// Dimension 0 or 1: zero for a nonempty manifold, −∞ for the empty one.
pub fn kappa_dim_le1(dim: u8, components: usize) -> Result<KodDim> {
    if dim > 1 {
        return Err(Error::Precondition(format!("dimension {dim} is not 0 or 1")));
    }
    Ok(if components == 0 { KodDim::NegInf } else { KodDim::Zero })
}

/// A closed orientable surface of genus `g`.
pub fn kappa_surface(g: u32) -> KodDim {
    kappa_number(&int(2 * g as i64 - 2))
}

/// Surface of genus `g` relative to `D`: the sign of `2g − 2 + c(D)`.
pub fn kappa_surface_divisor(g: u32, d: &QDivisor) -> KodDim {
    kappa_number(&(int(2 * g as i64 - 2) + d.degree()))
}

/// Closed 3-manifold from the geometries of the pieces of one decomposition.
pub fn kappa_3manifold(pieces: &[Geometry]) -> KodDim {
    if pieces.is_empty() {
        return KodDim::NegInf;
    }
    KodDim::max_of(pieces.iter().map(|g| g.kappa()))
}

/// Disconnected manifold: maximum over the components.
pub fn kappa_disconnected(ks: &[KodDim]) -> KodDim {
    KodDim::max_of(ks.iter().copied())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchedCover {
    pub chi_cover: i64,
    pub divisor: QDivisor,
    pub kappa: KodDim,
}

/// Riemann–Hurwitz for a degree-`degree` branched cover, with the base read
/// as a surface relative to `Σ (eₚ − 1)/N · p`.
pub fn riemann_hurwitz(degree: u32, chi_base: i64, indices: &[u32]) -> Result<BranchedCover> {
    if degree == 0 {
        return Err(Error::Precondition("cover degree must be at least 1".into()));
    }
    if chi_base > 2 || chi_base % 2 != 0 {
        return Err(Error::InconsistentInput(format!(
            "Euler characteristic {chi_base} is not that of a closed orientable surface"
        )));
    }
    if let Some(e) = indices.iter().find(|&&e| e == 0 || e > degree) {
        return Err(Error::Precondition(format!("ramification index {e} outside 1..={degree}")));
    }
    let n = degree as i64;
    let defect: i64 = indices.iter().map(|&e| e as i64 - 1).sum();
    let chi_cover = n * chi_base - defect;
    if chi_cover % 2 != 0 {
        return Err(Error::InconsistentInput(format!("cover Euler characteristic {chi_cover} is odd")));
    }
    let divisor = QDivisor {
        entries: indices
            .iter()
            .enumerate()
            .map(|(i, &e)| (format!("p{}", i + 1), ratio(e as i64 - 1, n)))
            .collect(),
    };
    let base_genus = ((2 - chi_base) / 2) as u32;
    let kappa = kappa_surface_divisor(base_genus, &divisor);
    if chi_cover <= 2 {
        let cover = kappa_surface(((2 - chi_cover) / 2) as u32);
        if cover != kappa {
            return Err(Error::InternalConsistency(format!(
                "relative base value {kappa} differs from cover value {cover}"
            )));
        }
    }
    Ok(BranchedCover { chi_cover, divisor, kappa })
}

/// Seifert fibered 3-manifold: the sign of `−χ^orb(B)`.
pub fn seifert_kappa(s: &SeifertData) -> Result<KodDim> {
    let d = s.orbifold_divisor()?;
    Ok(kappa_surface_divisor(s.base_genus, &d) + KodDim::Zero)
}

/// Fiber bundles of total dimension at most 3 are additive.
pub fn bundle_kappa_le3(kappa_base: KodDim, kappa_fiber: KodDim) -> KodDim {
    kappa_base + kappa_fiber
}

/// `M³ × S¹`, assumed symplectic or complex by the caller.
pub fn product_circle_kappa(kappa_m3: KodDim) -> KodDim {
    kappa_m3 + KodDim::Zero
}

/// Surface bundle over a surface whose total space is symplectic.
pub fn surface_bundle_kappa(g_base: u32, g_fiber: u32) -> KodDim {
    kappa_surface(g_base) + kappa_surface(g_fiber)
}
