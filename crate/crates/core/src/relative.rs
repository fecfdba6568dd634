//! Embedded symplectic surfaces, the relative minimal model and the relative
//! Kodaira dimension κ^s(M, ω, F).
//!
//! A surface is a list of disjoint components. On explicit models each
//! component is a class in ambient coordinates; on General models it is a
//! pairing record `(K·F, F², F·E₁..F·E_k, F·ω > 0)`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::four_manifold::{
    blow_down, class_label, kappa_s, validate_omega, ExceptionalSearch, FourManifoldModel,
    IntClass, MinimalModelKind, MinusOneSet, OmegaClass,
};
use crate::kod::{sign_table, KodDim, Sign};
use crate::lattice::{int, to_i64, ClassVector, Rational};

/// Pairing data of a surface component on a General model.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairingRecord {
    pub k_dot_f: Rational,
    pub f_squared: Rational,
    /// `F·Eᵢ` for every blow-up class, in order.
    pub f_dot_e: Vec<Rational>,
    pub f_dot_omega_positive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceComponent {
    Class(ClassVector),
    Pairing(PairingRecord),
}

/// A possibly empty disjoint union of embedded surfaces.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SurfaceConfig {
    components: Vec<SurfaceComponent>,
}

impl SurfaceConfig {
    pub fn new(components: Vec<SurfaceComponent>) -> Self {
        SurfaceConfig { components }
    }

    pub fn empty() -> Self {
        SurfaceConfig::default()
    }

    /// A single component given by an integral class.
    pub fn single(coords: &[i64]) -> Self {
        SurfaceConfig::new(alloc::vec![SurfaceComponent::Class(ClassVector::from_ints(coords))])
    }

    pub fn components(&self) -> &[SurfaceComponent] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelativeTriple {
    pub manifold: FourManifoldModel,
    pub omega: OmegaClass,
    pub surface: SurfaceConfig,
}

impl RelativeTriple {
    pub fn new(manifold: FourManifoldModel, omega: OmegaClass, surface: SurfaceConfig) -> Self {
        RelativeTriple { manifold, omega, surface }
    }
}

/// Numerical data of a class: `K·F`, `F²`, and `F·ω` (exact or sign only).
struct Numbers {
    k_dot_f: Rational,
    f_squared: Rational,
    omega: Sign,
}

fn numbers(m: &FourManifoldModel, w: &OmegaClass, c: &SurfaceComponent) -> Result<Numbers> {
    match c {
        SurfaceComponent::Class(v) => {
            let Some(k) = m.canonical() else {
                return Err(Error::InvalidSurface(
                    "General models take pairing records, not classes".into(),
                ));
            };
            let Some(wv) = w.as_vector() else {
                return Err(Error::InvalidOmega("explicit model needs explicit omega".into()));
            };
            Ok(Numbers {
                k_dot_f: m.pair(&k, v)?,
                f_squared: m.pair(v, v)?,
                omega: Sign::of(&m.pair(wv, v)?),
            })
        }
        SurfaceComponent::Pairing(p) => {
            if m.explicit().is_some() {
                return Err(Error::InvalidSurface(
                    "explicit models take classes, not pairing records".into(),
                ));
            }
            if p.f_dot_e.len() != m.blowups() as usize {
                return Err(Error::InvalidSurface(format!(
                    "pairing record lists {} values of F.E, the model has {} blow-ups",
                    p.f_dot_e.len(),
                    m.blowups()
                )));
            }
            Ok(Numbers {
                k_dot_f: p.k_dot_f.clone(),
                f_squared: p.f_squared.clone(),
                omega: if p.f_dot_omega_positive { Sign::Positive } else { Sign::Zero },
            })
        }
    }
}

/// Genus by adjunction, `2g − 2 = K·F + F²`.
pub fn genus(m: &FourManifoldModel, w: &OmegaClass, c: &SurfaceComponent) -> Result<u32> {
    let n = numbers(m, w, c)?;
    genus_of(&n.k_dot_f, &n.f_squared)
}

fn genus_of(k_dot_f: &Rational, f_squared: &Rational) -> Result<u32> {
    let adj = k_dot_f + f_squared;
    let Some(a) = to_i64(&adj) else {
        return Err(Error::InvalidSurface(format!("K.F + F^2 = {adj} is not an integer")));
    };
    if a < -2 || a % 2 != 0 {
        return Err(Error::InvalidSurface(format!(
            "K.F + F^2 = {a} must be an even integer >= -2"
        )));
    }
    u32::try_from((a + 2) / 2).map_err(|_| Error::InvalidSurface("genus out of range".into()))
}

/// `Σ(2gᵢ − 2)` over the components.
pub fn total_genus_defect(m: &FourManifoldModel, w: &OmegaClass, f: &SurfaceConfig) -> Result<Rational> {
    let mut s = Rational::zero();
    for c in f.components() {
        s += int(2 * i64::from(genus(m, w, c)?) - 2);
    }
    Ok(s)
}

/// The components of positive genus.
pub fn f_plus(m: &FourManifoldModel, w: &OmegaClass, f: &SurfaceConfig) -> Result<SurfaceConfig> {
    let mut out = Vec::new();
    for c in f.components() {
        if genus(m, w, c)? >= 1 {
            out.push(c.clone());
        }
    }
    Ok(SurfaceConfig::new(out))
}

/// Hard validity checks of a triple; returns nothing on success.
pub fn validate_triple(t: &RelativeTriple) -> Result<()> {
    let m = &t.manifold;
    validate_omega(m, &t.omega)?;
    for (i, c) in t.surface.components().iter().enumerate() {
        let n = numbers(m, &t.omega, c)?;
        genus_of(&n.k_dot_f, &n.f_squared)?;
        if n.omega != Sign::Positive {
            return Err(Error::InvalidSurface(format!("component {i} has non-positive area")));
        }
        if let SurfaceComponent::Class(v) = c {
            let x = m.explicit().expect("class components only on explicit models");
            let Some(iv) = v.to_ints() else {
                return Err(Error::InvalidSurface(format!("component {i} is not integral")));
            };
            if !x.in_current(&iv) {
                return Err(Error::InvalidSurface(format!(
                    "component {i} meets a blown-down class"
                )));
            }
        }
    }
    let comps = t.surface.components();
    for i in 0..comps.len() {
        for j in (i + 1)..comps.len() {
            if let (SurfaceComponent::Class(a), SurfaceComponent::Class(b)) = (&comps[i], &comps[j]) {
                let p = m.pair(a, b)?;
                if !p.is_zero() {
                    return Err(Error::InvalidSurface(format!(
                        "components {i} and {j} intersect (pairing {p})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Pairings `[F]·E` of a surface with the members of a −1 set.
fn pairings_with(
    m: &FourManifoldModel,
    f: &SurfaceConfig,
    set: &MinusOneSet,
) -> Result<Vec<(IntClass, Rational)>> {
    let members = set.members();
    let mut out: Vec<(IntClass, Rational)> =
        members.iter().map(|e| ((*e).clone(), Rational::zero())).collect();
    for c in f.components() {
        match c {
            SurfaceComponent::Class(v) => {
                for (e, acc) in out.iter_mut() {
                    *acc += pair_with_int(m, v, e)?;
                }
            }
            SurfaceComponent::Pairing(p) => {
                for (e, acc) in out.iter_mut() {
                    let i = e.iter().position(|&x| x != 0).expect("unit vector");
                    *acc += &p.f_dot_e[i];
                }
            }
        }
    }
    Ok(out)
}

/// Checks that every positive-genus component pairs non-negatively with
/// every −1 class.
fn check_nonnegative_on_exceptional(
    m: &FourManifoldModel,
    w: &OmegaClass,
    f: &SurfaceConfig,
    set: &MinusOneSet,
) -> Result<()> {
    for (i, c) in f.components().iter().enumerate() {
        if genus(m, w, c)? == 0 {
            continue;
        }
        let single = SurfaceConfig::new(alloc::vec![c.clone()]);
        for (e, p) in pairings_with(m, &single, set)? {
            if p.is_negative() {
                return Err(Error::InvalidSurface(format!(
                    "component {i} of positive genus pairs negatively ({p}) with the -1 class {}",
                    label(m, &e)
                )));
            }
        }
    }
    Ok(())
}

fn label(m: &FourManifoldModel, v: &[i64]) -> String {
    match m.explicit() {
        Some(x) => class_label(x.ambient().labels(), v),
        None => {
            let labels: Vec<String> = (1..=v.len()).map(|i| format!("E{i}")).collect();
            class_label(&labels, v)
        }
    }
}

/// Necessary conditions from pairing with GW stable classes: a component
/// with `F² ≥ 0` pairs non-negatively with every such class. Violations are
/// reported as warnings.
pub fn stability_warnings(t: &RelativeTriple, set: &MinusOneSet) -> Result<Vec<String>> {
    let m = &t.manifold;
    let mut warnings = Vec::new();
    // named classes; −1 classes are labelled only when a warning fires
    let mut stable: Vec<(String, IntClass)> = Vec::new();
    if let Some(x) = m.explicit() {
        let lat = x.ambient();
        let n = lat.rank();
        let unit = |i: usize| {
            let mut v = alloc::vec![0; n];
            v[i] = 1;
            v
        };
        let mut spheres: Vec<IntClass> = Vec::new();
        match m.minimal() {
            MinimalModelKind::RationalCp2 => {
                spheres.push(unit(0));
                for i in 1..n {
                    let mut v = unit(0);
                    v[i] = -1;
                    spheres.push(v);
                }
            }
            MinimalModelKind::RationalS2xS2 => {
                spheres.push(unit(0));
                spheres.push(unit(1));
            }
            _ => spheres.push(unit(1)),
        }
        for s in spheres {
            if x.in_current(&s) {
                stable.push((class_label(lat.labels(), &s), s));
            }
        }
        let k = x.canonical();
        if m.is_minimal() && lat.pair_int(&k, &k) >= 0 {
            stable.push((String::from("-K"), k.iter().map(|c| -c).collect()));
        }
    }
    for (i, c) in t.surface.components().iter().enumerate() {
        let n = numbers(m, &t.omega, c)?;
        if n.f_squared.is_negative() {
            continue;
        }
        let single = SurfaceConfig::new(alloc::vec![c.clone()]);
        if let SurfaceComponent::Class(v) = c {
            let named = stable.iter().map(|(name, s)| (Some(name), s));
            for (name, s) in named.chain(set.members().iter().map(|e| (None, *e))) {
                let p = pair_with_int(m, v, s)?;
                if p.is_negative() {
                    let name = name.cloned().unwrap_or_else(|| label(m, s));
                    warnings.push(format!(
                        "component {i} with F^2 >= 0 pairs negatively ({p}) with the GW stable class {name}"
                    ));
                }
            }
        } else {
            for (e, p) in pairings_with(m, &single, set)? {
                if p.is_negative() {
                    warnings.push(format!(
                        "component {i} with F^2 >= 0 pairs negatively ({p}) with the -1 class {}",
                        label(m, &e)
                    ));
                }
            }
            if let (MinimalModelKind::General { b_plus, .. }, SurfaceComponent::Pairing(p)) =
                (m.minimal(), c)
            {
                // K − ΣEᵢ (b⁺ > 1) or 2K − ΣEᵢ (b⁺ = 1) over the worst subset
                let mult = if *b_plus > 1 { 1 } else { 2 };
                let mut worst = &p.k_dot_f * int(mult);
                for x in &p.f_dot_e {
                    if x.is_positive() {
                        worst -= x;
                    }
                }
                if worst.is_negative() {
                    let name = if mult == 1 { "K - sum E_i" } else { "2K - sum E_i" };
                    warnings.push(format!(
                        "component {i} with F^2 >= 0 pairs negatively ({worst}) with the GW stable class {name}"
                    ));
                }
            }
        }
    }
    Ok(warnings)
}

/// Maximality of `F⁺`, together with whether the answer is bound-qualified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Maximality {
    pub maximal: bool,
    pub bound_qualified: bool,
}

pub fn is_maximal(t: &RelativeTriple, bound: u32) -> Result<Maximality> {
    is_maximal_with(t, &ExceptionalSearch::new(&t.manifold, bound))
}

pub fn is_maximal_with(t: &RelativeTriple, search: &ExceptionalSearch) -> Result<Maximality> {
    validate_triple(t)?;
    let set = search.minus_one_set(&t.manifold, &t.omega)?;
    check_nonnegative_on_exceptional(&t.manifold, &t.omega, &t.surface, &set)?;
    let fp = f_plus(&t.manifold, &t.omega, &t.surface)?;
    let bound_qualified = set.bound_qualified();
    if fp.is_empty() {
        return Ok(Maximality { maximal: set.is_empty(), bound_qualified });
    }
    let maximal = pairings_with(&t.manifold, &fp, &set)?.iter().all(|(_, p)| !p.is_zero());
    Ok(Maximality { maximal, bound_qualified })
}

/// `(K + [F])²` and the sign of `(K + [F])·ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjoint {
    pub square: Rational,
    pub omega_sign: Sign,
}

/// Adjoint invariants of the positive-genus part of the surface.
pub fn adjoint_invariants(t: &RelativeTriple) -> Result<Adjoint> {
    let m = &t.manifold;
    validate_triple(t)?;
    let fp = f_plus(m, &t.omega, &t.surface)?;
    match (m.explicit(), &t.omega) {
        (Some(x), OmegaClass::Explicit(w)) => {
            let mut a: Vec<Rational> = x.canonical().iter().map(|&c| int(c)).collect();
            for c in fp.components() {
                let SurfaceComponent::Class(v) = c else { unreachable!("validated") };
                for (ai, vi) in a.iter_mut().zip(v.coords()) {
                    *ai += vi;
                }
            }
            let a = ClassVector::new(a);
            Ok(Adjoint { square: m.pair(&a, &a)?, omega_sign: Sign::of(&m.pair(&a, w)?) })
        }
        (None, OmegaClass::Signs { k_dot_omega_positive }) => {
            let mut kf = Rational::zero();
            let mut ff = Rational::zero();
            for c in fp.components() {
                let SurfaceComponent::Pairing(p) = c else { unreachable!("validated") };
                kf += &p.k_dot_f;
                ff += &p.f_squared;
            }
            let square = m.k_squared() + int(2) * kf + ff;
            // F·ω > 0 for each component and K·ω ≥ 0 on these models
            let omega_sign = if !fp.is_empty() || *k_dot_omega_positive {
                Sign::Positive
            } else {
                Sign::Zero
            };
            Ok(Adjoint { square, omega_sign })
        }
        _ => Err(Error::InvalidOmega("omega does not match the model".into())),
    }
}

/// The relative minimal model and how it was reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeMinimal {
    pub triple: RelativeTriple,
    /// Classes blown down, in the input model's coordinates.
    pub blown_down: Vec<IntClass>,
    pub bound_qualified: bool,
    /// Size of the −1 set of the input model.
    pub enumeration_size: usize,
}

pub fn relative_minimal_model(t: &RelativeTriple, bound: u32) -> Result<RelativeMinimal> {
    relative_minimal_model_with(t, &ExceptionalSearch::new(&t.manifold, bound))
}

/// [`relative_minimal_model`] with a precomputed search on the input's
/// ambient lattice.
pub fn relative_minimal_model_with(
    t: &RelativeTriple,
    search: &ExceptionalSearch,
) -> Result<RelativeMinimal> {
    validate_triple(t)?;
    let m = &t.manifold;
    let set = search.minus_one_set(m, &t.omega)?;
    check_nonnegative_on_exceptional(m, &t.omega, &t.surface, &set)?;
    let fp = f_plus(m, &t.omega, &t.surface)?;
    let chosen: Vec<IntClass> = if fp.is_empty() {
        // any maximal orthogonal subset; minimal models are not unique here
        let mut chosen: Vec<IntClass> = Vec::new();
        for e in set.members() {
            if chosen.iter().all(|c| pair_int(m, c, e) == 0) {
                chosen.push(e.clone());
            }
        }
        chosen
    } else {
        let orth: Vec<IntClass> = pairings_with(m, &fp, &set)?
            .into_iter()
            .filter(|(_, p)| p.is_zero())
            .map(|(e, _)| e)
            .collect();
        for (i, a) in orth.iter().enumerate() {
            for b in &orth[i + 1..] {
                if pair_int(m, a, b) != 0 {
                    return Err(Error::UniquenessViolation(format!(
                        "-1 classes {} and {} are both orthogonal to F but meet",
                        label(m, a),
                        label(m, b)
                    )));
                }
            }
        }
        orth
    };
    let bd = blow_down(m, &chosen.iter().map(|c| ClassVector::from_ints(c)).collect::<Vec<_>>())?;
    let omega = bd.pushforward_omega(&t.omega)?;
    let mut comps = Vec::with_capacity(fp.len());
    for c in fp.components() {
        comps.push(match c {
            SurfaceComponent::Class(v) => SurfaceComponent::Class(bd.pushforward(v)?),
            SurfaceComponent::Pairing(p) => {
                let f_dot_e = bd.pushforward(&ClassVector::new(p.f_dot_e.clone()))?.into_inner();
                let removed: Vec<&Rational> = bd
                    .classes()
                    .iter()
                    .map(|g| &p.f_dot_e[g.iter().position(|&x| x != 0).expect("unit vector")])
                    .collect();
                // F' = F + Σcᵢ Eᵢ: K·F' = K·F − Σcᵢ, F'² = F² + Σcᵢ²
                let (mut kf, mut ff) = (p.k_dot_f.clone(), p.f_squared.clone());
                for c in removed {
                    kf -= c;
                    ff += c * c;
                }
                SurfaceComponent::Pairing(PairingRecord {
                    k_dot_f: kf,
                    f_squared: ff,
                    f_dot_e,
                    f_dot_omega_positive: p.f_dot_omega_positive,
                })
            }
        });
    }
    Ok(RelativeMinimal {
        triple: RelativeTriple::new(bd.into_model(), omega, SurfaceConfig::new(comps)),
        blown_down: chosen,
        bound_qualified: set.bound_qualified(),
        enumeration_size: set.len(),
    })
}

/// `v·e` for an integral `e`, in `i128` when `v` is integral with
/// coordinates below 2³¹, which keeps every partial sum far from overflow.
fn pair_with_int(m: &FourManifoldModel, v: &ClassVector, e: &[i64]) -> Result<Rational> {
    const SMALL: i64 = 1 << 31;
    if let (Some(x), Some(a)) = (m.explicit(), v.to_ints()) {
        let form = x.ambient().form();
        if a.len() == e.len() && a.len() == form.len() && a.iter().chain(e).all(|c| c.abs() < SMALL) {
            let mut acc = 0i128;
            for (i, &ai) in a.iter().enumerate().filter(|(_, &ai)| ai != 0) {
                let s: i128 = form[i].iter().zip(e).map(|(&f, &ej)| i128::from(f) * i128::from(ej)).sum();
                acc += i128::from(ai) * s;
            }
            return Ok(Rational::from_integer(acc.into()));
        }
    }
    m.pair(v, &ClassVector::from_ints(e))
}

fn pair_int(m: &FourManifoldModel, a: &[i64], b: &[i64]) -> i64 {
    match m.explicit() {
        Some(x) => x.ambient().pair_int(a, b),
        None => -a.iter().zip(b).map(|(p, q)| p * q).sum::<i64>(),
    }
}

/// Full evaluation of κ^s(M, ω, F).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeKappa {
    pub kappa: KodDim,
    pub minimal: RelativeMinimal,
    /// Adjoint invariants on the relative minimal model, when `F⁺ ≠ ∅`.
    pub adjoint: Option<Adjoint>,
    pub warnings: Vec<String>,
}

pub fn kappa_relative(t: &RelativeTriple, bound: u32) -> Result<RelativeKappa> {
    kappa_relative_with(t, &ExceptionalSearch::new(&t.manifold, bound))
}

pub fn kappa_relative_with(t: &RelativeTriple, search: &ExceptionalSearch) -> Result<RelativeKappa> {
    let minimal = relative_minimal_model_with(t, search)?;
    let set = search.minus_one_set(&t.manifold, &t.omega)?;
    let warnings = stability_warnings(t, &set)?;
    let r = &minimal.triple;
    if r.surface.is_empty() {
        return Ok(RelativeKappa {
            kappa: kappa_s(&r.manifold, &r.omega)?,
            minimal,
            adjoint: None,
            warnings,
        });
    }
    let adj = adjoint_invariants(r)?;
    let Some(kappa) = sign_table(adj.omega_sign, Sign::of(&adj.square)) else {
        return Err(Error::TheoremViolation(format!(
            "(K+F).omega = 0 with (K+F)^2 = {} > 0 on a relatively minimal triple",
            adj.square
        )));
    };
    check_adjoint_statements(r, &adj)?;
    Ok(RelativeKappa { kappa, minimal, adjoint: Some(adj), warnings })
}

/// Statements about the adjoint class of a maximal positive-genus surface.
fn check_adjoint_statements(r: &RelativeTriple, adj: &Adjoint) -> Result<()> {
    let m = &r.manifold;
    let absolute = kappa_s(m, &r.omega)?;
    if absolute >= KodDim::Zero {
        if adj.square.is_negative() {
            return Err(Error::TheoremViolation(format!(
                "(K+F)^2 = {} < 0 with kappa^s >= 0",
                adj.square
            )));
        }
        if adj.omega_sign != Sign::Positive {
            return Err(Error::TheoremViolation(
                "(K+F).omega <= 0 with kappa^s >= 0 and F nonempty".into(),
            ));
        }
        if adj.square.is_zero() {
            for c in r.surface.components() {
                if genus(m, &r.omega, c)? != 1 {
                    return Err(Error::TheoremViolation(
                        "(K+F)^2 = 0 with kappa^s >= 0 but a component is not a torus".into(),
                    ));
                }
            }
        }
    } else if m.explicit().is_some() && !is_ruled_section(r)? {
        if adj.omega_sign == Sign::Negative {
            return Err(Error::TheoremViolation(
                "(K+F).omega < 0 for a maximal surface that is not a section".into(),
            ));
        }
        if adj.omega_sign == Sign::Zero && !is_anticanonical(r)? {
            return Err(Error::TheoremViolation(
                "(K+F).omega = 0 but [F] is not -K".into(),
            ));
        }
    }
    Ok(())
}

fn total_class(r: &RelativeTriple) -> Option<ClassVector> {
    let n = r.manifold.class_len();
    let mut acc = ClassVector::zeros(n);
    for c in r.surface.components() {
        let SurfaceComponent::Class(v) = c else {
            return None;
        };
        acc = &acc + v;
    }
    Some(acc)
}

/// A single component that is a section of a minimal ruled model.
fn is_ruled_section(r: &RelativeTriple) -> Result<bool> {
    let m = &r.manifold;
    if !m.minimal().is_ruled() || !m.is_minimal() || r.surface.len() != 1 {
        return Ok(false);
    }
    let (Some(t), Some(f)) = (m.fiber_class(), total_class(r)) else {
        return Ok(false);
    };
    Ok(m.pair(&f, &ClassVector::from_ints(&t))? == int(1))
}

fn is_anticanonical(r: &RelativeTriple) -> Result<bool> {
    let (Some(k), Some(f)) = (r.manifold.canonical(), total_class(r)) else {
        return Ok(false);
    };
    Ok((&k + &f).is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    NegInfCase,
    ZeroCase,
    Other,
}

/// Case of the classification theorems for a nonempty maximal surface
/// whose components all have positive genus.
pub fn classify(t: &RelativeTriple, bound: u32) -> Result<Classification> {
    if t.surface.is_empty() {
        return Err(Error::Precondition("surface must be nonempty".into()));
    }
    for c in t.surface.components() {
        if genus(&t.manifold, &t.omega, c)? == 0 {
            return Err(Error::Precondition("every component needs positive genus".into()));
        }
    }
    if !is_maximal(t, bound)?.maximal {
        return Err(Error::Precondition("surface must be maximal".into()));
    }
    classify_unchecked(t)
}

/// [`classify`] without the maximality and genus preconditions.
pub fn classify_unchecked(t: &RelativeTriple) -> Result<Classification> {
    if is_ruled_section(t)? {
        return Ok(Classification::NegInfCase);
    }
    if kappa_s(&t.manifold, &t.omega)? == KodDim::NegInf && is_anticanonical(t)? {
        return Ok(Classification::ZeroCase);
    }
    Ok(Classification::Other)
}

/// κ^s of the fiber sum along connected surfaces of equal positive genus.
pub fn fiber_sum_kappa(t1: &RelativeTriple, t2: &RelativeTriple, bound: u32) -> Result<KodDim> {
    Ok(fiber_sum(t1, t2, bound)?.kappa)
}

/// A fiber sum's κ with the relative evaluations of both summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberSum {
    pub kappa: KodDim,
    pub summands: [RelativeKappa; 2],
}

pub fn fiber_sum(t1: &RelativeTriple, t2: &RelativeTriple, bound: u32) -> Result<FiberSum> {
    let mut genera = [0u32; 2];
    for (i, t) in [t1, t2].into_iter().enumerate() {
        if t.surface.len() != 1 {
            return Err(Error::Precondition("fiber sum needs connected surfaces".into()));
        }
        genera[i] = genus(&t.manifold, &t.omega, &t.surface.components()[0])?;
        if genera[i] == 0 {
            return Err(Error::Precondition("fiber sum along spheres is excluded".into()));
        }
    }
    if genera[0] != genera[1] {
        return Err(Error::Precondition(format!(
            "genus mismatch: {} and {}",
            genera[0], genera[1]
        )));
    }
    let a = kappa_relative(t1, bound)?;
    let b = kappa_relative(t2, bound)?;
    Ok(FiberSum { kappa: a.kappa.max(b.kappa), summands: [a, b] })
}
