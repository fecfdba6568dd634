//! JSON input formats for models, surfaces, divisors and fibrations.
//!
//! Rationals travel as canonical strings (`"n"` or `"p/q"`, lowest terms,
//! positive denominator); JSON integers are accepted on input.

use std::fmt;
use std::str::FromStr;

use kodlib_core::four_manifold::MinimalModelKind;
use kodlib_core::lattice::{ClassVector, Rational};
use kodlib_core::lefschetz::LefschetzData;
use kodlib_core::low_dim::{Geometry, QDivisor};
use kodlib_core::relative::{PairingRecord, SurfaceComponent, SurfaceConfig};
use kodlib_core::{Error, FourManifoldModel, KodDim, OmegaClass};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational read from a string or an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl FromStr for Q {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim();
        let valid = !t.is_empty()
            && t.split('/').count() <= 2
            && t.split('/').enumerate().all(|(i, part)| {
                let digits = if i == 0 { part.strip_prefix('-').unwrap_or(part) } else { part };
                !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
            });
        if !valid {
            return Err(format!("`{s}` is not a rational of the form n or p/q"));
        }
        if t.split('/').nth(1).is_some_and(|d| d.bytes().all(|b| b == b'0')) {
            return Err(format!("`{s}` has a zero denominator"));
        }
        t.parse::<Rational>().map(Q).map_err(|e| format!("`{s}`: {e}"))
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct QVisitor;

        impl Visitor<'_> for QVisitor {
            type Value = Q;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string \"p/q\" or an integer")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Q, E> {
                Ok(Q(kodlib_core::lattice::int(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Q, E> {
                v.to_string().parse().map_err(E::custom)
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Q, E> {
                Err(E::custom(format!("{v} is a float; rationals must be strings such as \"1/3\"")))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Q, E> {
                v.parse().map_err(E::custom)
            }
        }

        d.deserialize_any(QVisitor)
    }
}

fn rationals(v: &[Q]) -> Vec<Rational> {
    v.iter().map(|q| q.0.clone()).collect()
}

/// Canonical string of an exact rational.
pub fn rational_string(r: &Rational) -> String {
    r.to_string()
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind")]
pub enum MinimalJson {
    #[serde(rename = "RationalCP2", alias = "CP2")]
    RationalCp2,
    #[serde(rename = "RationalS2xS2", alias = "S2xS2")]
    RationalS2xS2,
    RuledTrivial { h: u32 },
    RuledNontrivial { h: u32 },
    General { ksq: Q, k_torsion: bool, k_dot_omega_positive: bool, b_plus: u32 },
}

impl MinimalJson {
    pub fn to_kind(&self) -> Result<MinimalModelKind, Error> {
        let k = match self {
            MinimalJson::RationalCp2 => MinimalModelKind::RationalCp2,
            MinimalJson::RationalS2xS2 => MinimalModelKind::RationalS2xS2,
            MinimalJson::RuledTrivial { h } => MinimalModelKind::RuledTrivial { h: *h },
            MinimalJson::RuledNontrivial { h } => MinimalModelKind::RuledNontrivial { h: *h },
            MinimalJson::General { ksq, k_torsion, k_dot_omega_positive, b_plus } => {
                MinimalModelKind::general(ksq.0.clone(), *k_torsion, *k_dot_omega_positive, *b_plus)?
            }
        };
        k.validate()?;
        Ok(k)
    }
}

/// `ω` as explicit coordinates, catalog areas, or the sign of `K·ω`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum OmegaJson {
    Coords { coords: Vec<Q> },
    Catalog { head: Vec<Q>, areas: Vec<Q> },
    Signs { k_dot_omega_positive: bool },
}

impl OmegaJson {
    pub fn to_omega(&self) -> OmegaClass {
        match self {
            OmegaJson::Coords { coords } => OmegaClass::Explicit(ClassVector::new(rationals(coords))),
            OmegaJson::Catalog { head, areas } => OmegaClass::catalog(&rationals(head), &rationals(areas)),
            OmegaJson::Signs { k_dot_omega_positive } => {
                OmegaClass::Signs { k_dot_omega_positive: *k_dot_omega_positive }
            }
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct ModelJson {
    pub minimal: MinimalJson,
    #[serde(default)]
    pub blowups: u32,
    /// Optional for General models, where it defaults to the sign forced by
    /// the minimal datum and the blow-ups.
    pub omega: Option<OmegaJson>,
}

impl ModelJson {
    pub fn to_model(&self) -> Result<(FourManifoldModel, OmegaClass), Error> {
        let kind = self.minimal.to_kind()?;
        let omega = match (&self.omega, &kind) {
            (Some(w), _) => w.to_omega(),
            (None, MinimalModelKind::General { k_dot_omega_positive, .. }) => {
                OmegaClass::Signs { k_dot_omega_positive: *k_dot_omega_positive || self.blowups > 0 }
            }
            (None, _) => {
                return Err(Error::InvalidOmega(format!("{} models need an explicit omega", kind.name())))
            }
        };
        Ok((FourManifoldModel::new(kind, self.blowups)?, omega))
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingJson {
    #[serde(rename = "K_dot_F")]
    pub k_dot_f: Q,
    #[serde(rename = "F_sq")]
    pub f_sq: Q,
    #[serde(rename = "F_dot_E", default)]
    pub f_dot_e: Vec<Q>,
    #[serde(rename = "F_omega_pos")]
    pub f_omega_pos: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ComponentJson {
    Coords(Vec<Q>),
    Pairing(PairingJson),
}

#[derive(Clone, Debug, Default, Deserialize)]
pub struct SurfaceJson {
    #[serde(default)]
    pub components: Vec<ComponentJson>,
}

impl SurfaceJson {
    pub fn to_surface(&self) -> SurfaceConfig {
        SurfaceConfig::new(
            self.components
                .iter()
                .map(|c| match c {
                    ComponentJson::Coords(v) => SurfaceComponent::Class(ClassVector::new(rationals(v))),
                    ComponentJson::Pairing(p) => SurfaceComponent::Pairing(PairingRecord {
                        k_dot_f: p.k_dot_f.0.clone(),
                        f_squared: p.f_sq.0.clone(),
                        f_dot_e: rationals(&p.f_dot_e),
                        f_dot_omega_positive: p.f_omega_pos,
                    }),
                })
                .collect(),
        )
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointJson {
    pub id: String,
    pub weight: Q,
}

/// A divisor as `{"points": [...]}` or as the bare list of points.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum DivisorJson {
    Points { points: Vec<PointJson> },
    List(Vec<PointJson>),
}

impl Default for DivisorJson {
    fn default() -> Self {
        DivisorJson::List(Vec::new())
    }
}

impl DivisorJson {
    pub fn to_divisor(&self) -> Result<QDivisor, Error> {
        let points = match self {
            DivisorJson::Points { points } | DivisorJson::List(points) => points,
        };
        QDivisor::new(points.iter().map(|p| (p.id.clone(), p.weight.0.clone())).collect())
    }
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibrationJson {
    pub g: u32,
    #[serde(default)]
    pub h: u32,
    #[serde(default)]
    pub a: u32,
    #[serde(default)]
    pub s: Vec<u32>,
    #[serde(default = "default_true")]
    pub hyperelliptic: bool,
    #[serde(default = "default_true")]
    pub minimal: bool,
    #[serde(default)]
    pub c: u32,
    #[serde(default)]
    pub c_prime: u32,
    #[serde(default)]
    pub fiber_null_homologous: bool,
}

impl FibrationJson {
    pub fn to_data(&self) -> LefschetzData {
        LefschetzData {
            g: self.g,
            h: self.h,
            a: self.a,
            s: self.s.clone(),
            hyperelliptic: self.hyperelliptic,
            minimal: self.minimal,
            c: self.c,
            c_prime: self.c_prime,
            fiber_null_homologous: self.fiber_null_homologous,
        }
    }
}

/// A Thurston geometry label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeometryJson(pub Geometry);

impl<'de> Deserialize<'de> for GeometryJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map(GeometryJson).map_err(de::Error::custom)
    }
}

/// A Kodaira dimension written as `"-inf"`, `"0"`, `"1"`, `"2"` or an integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KodJson(pub KodDim);

impl<'de> Deserialize<'de> for KodJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u8),
            Str(String),
        }
        let k = match Raw::deserialize(d)? {
            Raw::Int(n) => KodDim::from_finite(n),
            Raw::Str(s) => s.parse().ok(),
        };
        k.map(KodJson).ok_or_else(|| de::Error::custom("expected one of \"-inf\", 0, 1, 2"))
    }
}
