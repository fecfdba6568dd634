//! Symplectic 4-manifolds as a minimal model plus blow-ups.
//!
//! Rational and ruled models carry an explicit lattice: the catalog lattice
//! of the minimal model with one `⟨−1⟩` summand per blow-up (the *ambient*
//! lattice), plus the list of −1 classes that have since been blown down.
//! The homology of the current manifold is the orthogonal complement of the
//! contracted classes, its canonical class is `K_ambient − ΣG`, and a class
//! is pushed forward by `v ↦ v + Σ(v·G)G`. Classes are always written in
//! ambient coordinates; [`FourManifoldModel::current_basis`] gives an
//! explicit Z-basis of the complement.
//!
//! General models (κ ≥ 0) carry only `K²`, the torsion flag of `K`, the sign
//! of `K·ω` and `b⁺`. Their blow-up classes `E₁..E_k` are the only classes
//! they know, written as unit vectors of length `k`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exceptional::SplitLattice;
use crate::kod::{kappa_number, sign_table, KodDim, Sign};
use crate::lattice::{
    determinant, echelon_basis, echelon_coordinates, int, ClassVector, IntersectionLattice,
    Rational,
};

/// An integral class in ambient coordinates.
pub type IntClass = Vec<i64>;

/// Default coefficient bound for −1-class enumeration.
pub const DEFAULT_BOUND: u32 = 30;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MinimalModelKind {
    RationalCp2,
    RationalS2xS2,
    /// `S² × Σ_h`.
    RuledTrivial { h: u32 },
    /// The nontrivial `S²`-bundle over `Σ_h`.
    RuledNontrivial { h: u32 },
    General { ksq: Rational, k_torsion: bool, k_dot_omega_positive: bool, b_plus: u32 },
}

impl MinimalModelKind {
    pub fn general(
        ksq: Rational,
        k_torsion: bool,
        k_dot_omega_positive: bool,
        b_plus: u32,
    ) -> Result<Self> {
        let k = MinimalModelKind::General { ksq, k_torsion, k_dot_omega_positive, b_plus };
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MinimalModelKind::RuledTrivial { h } | MinimalModelKind::RuledNontrivial { h }
                if *h == 0 =>
            {
                Err(Error::InvalidModel(
                    "ruled models need base genus >= 1; genus 0 bundles are rational".into(),
                ))
            }
            MinimalModelKind::General { ksq, k_torsion, k_dot_omega_positive, b_plus } => {
                if *b_plus == 0 {
                    return Err(Error::InvalidModel("b+ must be at least 1".into()));
                }
                if ksq.is_negative() {
                    return Err(Error::InvalidModel(
                        "a minimal model that is neither rational nor ruled has K^2 >= 0".into(),
                    ));
                }
                if *k_torsion && (!ksq.is_zero() || *k_dot_omega_positive) {
                    return Err(Error::InvalidModel(
                        "torsion K requires K^2 = 0 and K.omega = 0".into(),
                    ));
                }
                if !*k_torsion && !*k_dot_omega_positive {
                    return Err(Error::InvalidModel(
                        "non-torsion K on a minimal model with K^2 >= 0 has K.omega > 0".into(),
                    ));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MinimalModelKind::RationalCp2 => "RationalCP2",
            MinimalModelKind::RationalS2xS2 => "RationalS2xS2",
            MinimalModelKind::RuledTrivial { .. } => "RuledTrivial",
            MinimalModelKind::RuledNontrivial { .. } => "RuledNontrivial",
            MinimalModelKind::General { .. } => "General",
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, MinimalModelKind::RationalCp2 | MinimalModelKind::RationalS2xS2)
    }

    pub fn is_ruled(&self) -> bool {
        matches!(self, MinimalModelKind::RuledTrivial { .. } | MinimalModelKind::RuledNontrivial { .. })
    }

    pub fn is_general(&self) -> bool {
        matches!(self, MinimalModelKind::General { .. })
    }

    /// Base genus of a ruled model.
    pub fn base_genus(&self) -> Option<u32> {
        match self {
            MinimalModelKind::RuledTrivial { h } | MinimalModelKind::RuledNontrivial { h } => {
                Some(*h)
            }
            _ => None,
        }
    }

    /// κ^s of the minimal model.
    pub fn kappa(&self) -> KodDim {
        match self {
            MinimalModelKind::General { ksq, k_torsion, .. } => {
                if *k_torsion {
                    KodDim::Zero
                } else {
                    match Sign::of(ksq) {
                        Sign::Negative => KodDim::NegInf,
                        Sign::Zero => KodDim::One,
                        Sign::Positive => KodDim::Two,
                    }
                }
            }
            _ => KodDim::NegInf,
        }
    }

    /// Catalog head lattice and canonical class, for explicit kinds.
    fn head(&self) -> Option<(IntersectionLattice, Vec<i64>)> {
        let (lat, k) = match self {
            MinimalModelKind::RationalCp2 => {
                (IntersectionLattice::diagonal(&["H"], &[1]).ok()?, vec![-3])
            }
            MinimalModelKind::RationalS2xS2 => {
                (IntersectionLattice::hyperbolic("H1", "H2"), vec![-2, -2])
            }
            MinimalModelKind::RuledTrivial { h } => {
                (IntersectionLattice::hyperbolic("U", "T"), vec![-2, 2 * i64::from(*h) - 2])
            }
            MinimalModelKind::RuledNontrivial { h } => (
                IntersectionLattice::new(
                    vec!["U".into(), "T".into()],
                    vec![vec![1, 1], vec![1, 0]],
                )
                .ok()?,
                vec![-2, 2 * i64::from(*h) - 1],
            ),
            MinimalModelKind::General { .. } => return None,
        };
        Some((lat, k))
    }
}

impl fmt::Display for MinimalModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinimalModelKind::RationalCp2 => f.write_str("CP2"),
            MinimalModelKind::RationalS2xS2 => f.write_str("S2xS2"),
            MinimalModelKind::RuledTrivial { h } => write!(f, "S2 x Sigma_{h}"),
            MinimalModelKind::RuledNontrivial { h } => write!(f, "S2 ~x Sigma_{h}"),
            MinimalModelKind::General { ksq, k_torsion, k_dot_omega_positive, b_plus } => write!(
                f,
                "General(K^2={ksq}, torsion={k_torsion}, K.omega>0={k_dot_omega_positive}, b+={b_plus})"
            ),
        }
    }
}

/// Explicit lattice data of a rational or ruled model.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExplicitLattice {
    ambient: IntersectionLattice,
    head_rank: usize,
    /// Canonical class of the ambient lattice.
    canonical: IntClass,
    /// Classes blown down so far, pairwise orthogonal −1 classes.
    contracted: Vec<IntClass>,
}

impl ExplicitLattice {
    pub fn ambient(&self) -> &IntersectionLattice {
        &self.ambient
    }

    pub fn head_rank(&self) -> usize {
        self.head_rank
    }

    pub fn contracted(&self) -> &[IntClass] {
        &self.contracted
    }

    /// Number of `⟨−1⟩` summands in the ambient lattice.
    pub fn tail_rank(&self) -> usize {
        self.ambient.rank() - self.head_rank
    }

    /// Current canonical class `K_ambient − ΣG`.
    pub fn canonical(&self) -> IntClass {
        let mut k = self.canonical.clone();
        for g in &self.contracted {
            for (a, b) in k.iter_mut().zip(g) {
                *a -= b;
            }
        }
        k
    }

    pub fn ambient_canonical(&self) -> &[i64] {
        &self.canonical
    }

    pub fn in_current(&self, v: &[i64]) -> bool {
        self.contracted.iter().all(|g| self.ambient.pair_int(g, v) == 0)
    }

    /// `v + Σ(v·G)G`.
    pub fn project(&self, v: &[i64]) -> IntClass {
        let mut out = v.to_vec();
        for g in &self.contracted {
            let c = self.ambient.pair_int(v, g);
            for (a, b) in out.iter_mut().zip(g) {
                *a += c * b;
            }
        }
        out
    }

    fn unit(&self, i: usize) -> IntClass {
        let mut v = vec![0; self.ambient.rank()];
        v[i] = 1;
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FourManifoldModel {
    minimal: MinimalModelKind,
    blowups: u32,
    explicit: Option<ExplicitLattice>,
}

impl FourManifoldModel {
    /// The catalog model of `minimal` blown up `blowups` times.
    pub fn new(minimal: MinimalModelKind, blowups: u32) -> Result<Self> {
        minimal.validate()?;
        let explicit = minimal.head().map(|(head, k_head)| {
            let n = blowups as usize;
            let labels: Vec<String> = (1..=n).map(|i| format!("E{i}")).collect();
            let label_refs: Vec<&str> = labels.iter().map(String::as_str).collect();
            let head_rank = head.rank();
            let ambient = if n == 0 {
                head
            } else {
                let tail = IntersectionLattice::diagonal(&label_refs, &vec![-1; n])
                    .expect("labels and entries have equal length");
                head.direct_sum(&tail)
            };
            let mut canonical = k_head;
            canonical.extend(core::iter::repeat_n(1, n));
            ExplicitLattice { ambient, head_rank, canonical, contracted: Vec::new() }
        });
        Ok(FourManifoldModel { minimal, blowups, explicit })
    }

    pub fn minimal(&self) -> &MinimalModelKind {
        &self.minimal
    }

    pub fn blowups(&self) -> u32 {
        self.blowups
    }

    pub fn is_minimal(&self) -> bool {
        self.blowups == 0
    }

    pub fn explicit(&self) -> Option<&ExplicitLattice> {
        self.explicit.as_ref()
    }

    /// Length of class vectors for this model: the ambient rank for explicit
    /// models, the number of blow-ups for General ones.
    pub fn class_len(&self) -> usize {
        match &self.explicit {
            Some(x) => x.ambient.rank(),
            None => self.blowups as usize,
        }
    }

    /// Current canonical class in ambient coordinates.
    pub fn canonical(&self) -> Option<ClassVector> {
        self.explicit.as_ref().map(|x| ClassVector::from_ints(&x.canonical()))
    }

    /// `K²` of the current manifold.
    pub fn k_squared(&self) -> Rational {
        match (&self.explicit, &self.minimal) {
            (Some(x), _) => {
                let k = x.canonical();
                int(x.ambient.pair_int(&k, &k))
            }
            (None, MinimalModelKind::General { ksq, .. }) => ksq - int(i64::from(self.blowups)),
            (None, _) => unreachable!("rational and ruled models are explicit"),
        }
    }

    /// `b⁺`: 1 for rational and ruled models.
    pub fn b_plus(&self) -> u32 {
        match &self.minimal {
            MinimalModelKind::General { b_plus, .. } => *b_plus,
            _ => 1,
        }
    }

    /// Ambient pairing of two classes of this model.
    pub fn pair(&self, a: &ClassVector, b: &ClassVector) -> Result<Rational> {
        match &self.explicit {
            Some(x) => x.ambient.pair(a, b),
            None => {
                let n = self.blowups as usize;
                for v in [a, b] {
                    if v.len() != n {
                        return Err(Error::DimensionMismatch { expected: n, found: v.len() });
                    }
                }
                let mut s = Rational::zero();
                for (p, q) in a.coords().iter().zip(b.coords()) {
                    s -= p * q;
                }
                Ok(s)
            }
        }
    }

    /// The fiber class `T` of a ruled model.
    pub fn fiber_class(&self) -> Option<IntClass> {
        if !self.minimal.is_ruled() {
            return None;
        }
        self.explicit.as_ref().map(|x| x.unit(1))
    }

    /// A Z-basis of the current lattice (complement of the contracted
    /// classes) in ambient coordinates, with its induced lattice.
    pub fn current_basis(&self) -> Option<(Vec<IntClass>, IntersectionLattice)> {
        let x = self.explicit.as_ref()?;
        let n = x.ambient.rank();
        let basis = if x.contracted.is_empty() {
            (0..n).map(|i| x.unit(i)).collect()
        } else {
            echelon_basis((0..n).map(|i| x.project(&x.unit(i))).collect())
        };
        let labels = basis.iter().map(|b| class_label(x.ambient.labels(), b)).collect();
        let lattice = IntersectionLattice::new(labels, x.ambient.gram(&basis))
            .expect("Gram matrices are symmetric and nonempty");
        Some((basis, lattice))
    }

    /// Coordinates of a class of the current manifold in
    /// [`current_basis`](Self::current_basis).
    pub fn current_coordinates(&self, v: &ClassVector) -> Option<Vec<Rational>> {
        let (basis, _) = self.current_basis()?;
        let den = v.coords().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let d = den.to_i64()?;
        let scaled: Option<Vec<i64>> =
            v.coords().iter().map(|c| (c * int(d)).to_integer().to_i64()).collect();
        let coords = echelon_coordinates(&basis, &scaled?)?;
        Some(coords.into_iter().map(|c| Rational::new(BigInt::from(c), den.clone())).collect())
    }

    /// Classes that have positive area for every admissible symplectic form
    /// on the catalog model and survive in the current manifold.
    fn structural_classes(&self) -> Vec<IntClass> {
        let Some(x) = &self.explicit else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let head = x.head_rank;
        for i in 0..x.ambient.rank() {
            out.push(x.unit(i));
        }
        if self.minimal.is_ruled() {
            for i in head..x.ambient.rank() {
                let mut v = x.unit(1);
                v[i] = -1;
                out.push(v);
            }
        }
        out.retain(|v| x.in_current(v));
        out
    }

    /// One more blow-up.
    pub fn blow_up(&self) -> FourManifoldModel {
        let mut m = self.clone();
        m.blowups += 1;
        if let Some(x) = &mut m.explicit {
            let idx = x.tail_rank() + 1;
            let e = IntersectionLattice::diagonal(&[format!("E{idx}").as_str()], &[-1])
                .expect("one label, one entry");
            x.ambient = x.ambient.direct_sum(&e);
            x.canonical.push(1);
            for g in &mut x.contracted {
                g.push(0);
            }
        }
        m
    }
}

/// Human-readable label of an integral combination of basis labels.
pub fn class_label(labels: &[String], v: &[i64]) -> String {
    let mut s = String::new();
    for (l, &c) in labels.iter().zip(v) {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else if s.is_empty() { "" } else { "+" };
        s.push_str(sign);
        if c.abs() != 1 {
            s.push_str(&format!("{}", c.abs()));
        }
        s.push_str(l);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// The symplectic class: explicit coordinates, or the sign datum of `K·ω`
/// for General models.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OmegaClass {
    Explicit(ClassVector),
    Signs { k_dot_omega_positive: bool },
}

impl OmegaClass {
    /// The form after one more blow-up with exceptional area `z > 0`.
    pub fn blown_up(&self, z: &Rational) -> OmegaClass {
        match self {
            OmegaClass::Explicit(v) => {
                let mut c = v.coords().to_vec();
                c.push(-z.clone());
                OmegaClass::Explicit(ClassVector::new(c))
            }
            // K·ω gains the new exceptional area.
            OmegaClass::Signs { .. } => OmegaClass::Signs { k_dot_omega_positive: true },
        }
    }

    /// `[x, y, −z₁, …]` in ambient coordinates.
    pub fn catalog(head: &[Rational], areas: &[Rational]) -> OmegaClass {
        let mut c = head.to_vec();
        c.extend(areas.iter().map(|z| -z.clone()));
        OmegaClass::Explicit(ClassVector::new(c))
    }

    pub fn as_vector(&self) -> Option<&ClassVector> {
        match self {
            OmegaClass::Explicit(v) => Some(v),
            OmegaClass::Signs { .. } => None,
        }
    }
}

/// Cheap validity check of `ω`: shape, `ω² > 0`, orthogonality to the
/// contracted classes and positivity on the catalog classes.
pub fn validate_omega(m: &FourManifoldModel, w: &OmegaClass) -> Result<()> {
    match (&m.explicit, w) {
        (None, OmegaClass::Signs { k_dot_omega_positive }) => {
            let MinimalModelKind::General { k_dot_omega_positive: minimal_sign, .. } = &m.minimal
            else {
                unreachable!("rational and ruled models are explicit")
            };
            // K·ω grows by the exceptional areas under blow-up
            let expected = *minimal_sign || m.blowups > 0;
            if *k_dot_omega_positive != expected {
                return Err(Error::InvalidOmega(format!(
                    "K.omega > 0 is {expected} on this model"
                )));
            }
            Ok(())
        }
        (None, OmegaClass::Explicit(_)) => Err(Error::InvalidOmega(
            "General models take a sign datum for omega".into(),
        )),
        (Some(_), OmegaClass::Signs { .. }) => Err(Error::InvalidOmega(
            "rational and ruled models need explicit omega coordinates".into(),
        )),
        (Some(x), OmegaClass::Explicit(v)) => {
            if v.len() != x.ambient.rank() {
                return Err(Error::DimensionMismatch { expected: x.ambient.rank(), found: v.len() });
            }
            if !x.ambient.square(v)?.is_positive() {
                return Err(Error::InvalidOmega("omega^2 must be positive".into()));
            }
            for g in &x.contracted {
                if !x.ambient.pair(v, &ClassVector::from_ints(g))?.is_zero() {
                    return Err(Error::InvalidOmega(format!(
                        "omega must vanish on the blown-down class {}",
                        class_label(x.ambient.labels(), g)
                    )));
                }
            }
            for c in m.structural_classes() {
                if !x.ambient.pair(v, &ClassVector::from_ints(&c))?.is_positive() {
                    return Err(Error::InvalidOmega(format!(
                        "omega must have positive area on {}",
                        class_label(x.ambient.labels(), &c)
                    )));
                }
            }
            Ok(())
        }
    }
}

/// κ^s of the model, independent of blow-ups.
pub fn kappa_s(m: &FourManifoldModel, w: &OmegaClass) -> Result<KodDim> {
    validate_omega(m, w)?;
    Ok(m.minimal.kappa())
}

/// κ^s of a minimal General model through the additive form
/// `κ(K²) + κ(K·ω)`, or −∞ when `K² < 0`.
pub fn kappa_additive(ksq: &Rational, k_dot_omega: Sign) -> Option<KodDim> {
    if ksq.is_negative() {
        return Some(KodDim::NegInf);
    }
    sign_table(k_dot_omega, Sign::of(ksq))
}

/// The −1 classes of a model that pair positively with `ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinusOneSet {
    /// Pairwise orthogonal blow-up classes.
    Orthogonal(Vec<IntClass>),
    /// `(E_i, T − E_i)` pairs of a ruled model.
    RuledPairs(Vec<(IntClass, IntClass)>),
    /// Bounded search result; `complete` when the bound is known to reach
    /// every −1 class.
    Enumerated { bound: u32, complete: bool, classes: Vec<IntClass> },
}

impl MinusOneSet {
    pub fn members(&self) -> Vec<&IntClass> {
        match self {
            MinusOneSet::Orthogonal(v) => v.iter().collect(),
            MinusOneSet::RuledPairs(p) => p.iter().flat_map(|(a, b)| [a, b]).collect(),
            MinusOneSet::Enumerated { classes, .. } => classes.iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            MinusOneSet::Orthogonal(v) => v.len(),
            MinusOneSet::RuledPairs(p) => 2 * p.len(),
            MinusOneSet::Enumerated { classes, .. } => classes.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Whether answers derived from this set hold only within the bound.
    pub fn bound_qualified(&self) -> bool {
        matches!(self, MinusOneSet::Enumerated { complete: false, .. })
    }

    pub fn bound(&self) -> Option<u32> {
        match self {
            MinusOneSet::Enumerated { bound, .. } => Some(*bound),
            _ => None,
        }
    }
}

/// Smallest coefficient bound that reaches every −1 class of `CP²#k`.
const CP2_COMPLETE: [u32; 9] = [0, 1, 1, 1, 1, 2, 2, 3, 6];
/// The same for `S²×S²#k`.
const S2XS2_COMPLETE: [u32; 8] = [0, 1, 1, 1, 1, 2, 2, 4];

/// Ambient −1 classes of a rational model found by bounded search, reusable
/// across the models obtained from it by blow-downs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalSearch {
    bound: u32,
    complete: bool,
    ambient: Option<IntersectionLattice>,
    candidates: Vec<IntClass>,
}

impl ExceptionalSearch {
    pub fn new(m: &FourManifoldModel, bound: u32) -> ExceptionalSearch {
        let Some(x) = &m.explicit else {
            return ExceptionalSearch {
                bound,
                complete: true,
                ambient: None,
                candidates: Vec::new(),
            };
        };
        let tail = x.tail_rank();
        let (candidates, complete) = if m.minimal.is_rational() {
            let head_form: Vec<Vec<i64>> =
                x.ambient.form()[..x.head_rank].iter().map(|r| r[..x.head_rank].to_vec()).collect();
            let split = SplitLattice {
                head_form: &head_form,
                head_canonical: &x.canonical[..x.head_rank],
                tail,
            };
            let table: &[u32] = if x.head_rank == 1 { &CP2_COMPLETE } else { &S2XS2_COMPLETE };
            let complete = table.get(tail).is_some_and(|&t| bound >= t);
            (split.minus_one_classes(i64::from(bound)), complete)
        } else {
            (Vec::new(), true)
        };
        ExceptionalSearch { bound, complete, ambient: Some(x.ambient.clone()), candidates }
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Every ambient class found, before the orthogonality and area filters.
    pub fn candidates(&self) -> &[IntClass] {
        &self.candidates
    }

    /// Whether every class of square −1 and `K·v = −1` on this ambient
    /// lattice is a symplectic −1 class, so that a nonpositive area exposes
    /// an invalid ω.
    fn all_exceptional(&self, x: &ExplicitLattice) -> bool {
        x.tail_rank() + x.head_rank <= 10
    }

    /// The −1 set of `m`, which must share this search's ambient lattice.
    pub fn minus_one_set(&self, m: &FourManifoldModel, w: &OmegaClass) -> Result<MinusOneSet> {
        validate_omega(m, w)?;
        match &m.explicit {
            None => Ok(MinusOneSet::Orthogonal(
                (0..m.blowups as usize)
                    .map(|i| {
                        let mut v = vec![0; m.blowups as usize];
                        v[i] = 1;
                        v
                    })
                    .collect(),
            )),
            Some(x) if m.minimal.is_ruled() => {
                let t = x.unit(1);
                let pairs = (x.head_rank..x.ambient.rank())
                    .filter_map(|i| {
                        let e = x.unit(i);
                        let mut te = t.clone();
                        te[i] = -1;
                        (x.in_current(&e) && x.in_current(&te)).then_some((e, te))
                    })
                    .collect();
                Ok(MinusOneSet::RuledPairs(pairs))
            }
            Some(x) => {
                if self.ambient.as_ref() != Some(&x.ambient) {
                    return Err(Error::Precondition(
                        "exceptional search was built for a different lattice".into(),
                    ));
                }
                let w = w.as_vector().expect("validated explicit omega");
                let area = OmegaPairing::new(&x.ambient, w)?;
                let strict = self.all_exceptional(x);
                let mut classes = Vec::new();
                for v in &self.candidates {
                    if !x.in_current(v) {
                        continue;
                    }
                    match area.sign(v) {
                        Sign::Positive => classes.push(v.clone()),
                        _ if strict => {
                            return Err(Error::InvalidOmega(format!(
                                "omega must have positive area on the -1 class {}",
                                class_label(x.ambient.labels(), v)
                            )))
                        }
                        _ => {}
                    }
                }
                Ok(MinusOneSet::Enumerated { bound: self.bound, complete: self.complete, classes })
            }
        }
    }
}

/// `v ↦ sign(ω·v)` for integral `v`, in machine integers when `ω` allows.
struct OmegaPairing {
    scaled: Option<Vec<i128>>,
    exact: ClassVector,
}

impl OmegaPairing {
    fn new(lat: &IntersectionLattice, w: &ClassVector) -> Result<Self> {
        let exact = lat.dual(w)?;
        let den = exact.coords().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled = exact
            .coords()
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer().to_i64().map(i128::from))
            .collect();
        Ok(OmegaPairing { scaled, exact })
    }

    fn sign(&self, v: &[i64]) -> Sign {
        if let Some(s) = &self.scaled {
            let t: i128 = s.iter().zip(v).map(|(a, &b)| a * i128::from(b)).sum();
            return match t.signum() {
                -1 => Sign::Negative,
                0 => Sign::Zero,
                _ => Sign::Positive,
            };
        }
        let mut acc = Rational::zero();
        for (a, &b) in self.exact.coords().iter().zip(v) {
            acc += a * int(b);
        }
        Sign::of(&acc)
    }
}

/// The −1 classes of `m` with positive `ω`-area, coefficients within `bound`.
pub fn enumerate_minus_one(
    m: &FourManifoldModel,
    w: &OmegaClass,
    bound: u32,
) -> Result<MinusOneSet> {
    ExceptionalSearch::new(m, bound).minus_one_set(m, w)
}

/// Result of a blow-down: the new model and the pushforward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowDown {
    model: FourManifoldModel,
    /// Classes contracted by this step, in the source model's coordinates.
    classes: Vec<IntClass>,
    /// For General models, the retained blow-up indices.
    kept: Option<Vec<usize>>,
}

impl BlowDown {
    pub fn model(&self) -> &FourManifoldModel {
        &self.model
    }

    pub fn into_model(self) -> FourManifoldModel {
        self.model
    }

    pub fn classes(&self) -> &[IntClass] {
        &self.classes
    }

    /// Correction coefficients `cᵢ = v·Gᵢ`, one per contracted class.
    pub fn corrections(&self, v: &ClassVector) -> Result<Vec<Rational>> {
        self.classes
            .iter()
            .map(|g| self.source_pair(v, g))
            .collect()
    }

    fn source_pair(&self, v: &ClassVector, g: &[i64]) -> Result<Rational> {
        match &self.model.explicit {
            Some(x) => x.ambient.pair(v, &ClassVector::from_ints(g)),
            None => {
                if v.len() != g.len() {
                    return Err(Error::DimensionMismatch { expected: g.len(), found: v.len() });
                }
                let mut s = Rational::zero();
                for (a, &b) in v.coords().iter().zip(g) {
                    s -= a * int(b);
                }
                Ok(s)
            }
        }
    }

    /// Image of a class: `v + Σ(v·G)G` for explicit models, the retained
    /// coordinates for General ones.
    pub fn pushforward(&self, v: &ClassVector) -> Result<ClassVector> {
        match &self.kept {
            Some(kept) => {
                let n = self.classes.first().map_or(kept.len(), Vec::len);
                if v.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: v.len() });
                }
                Ok(ClassVector::new(kept.iter().map(|&i| v.coords()[i].clone()).collect()))
            }
            None => {
                let mut out = v.clone();
                for (g, c) in self.classes.iter().zip(self.corrections(v)?) {
                    out = &out + &ClassVector::from_ints(g).scaled(&c);
                }
                Ok(out)
            }
        }
    }

    /// Pushforward of `ω`; for General models the sign datum is recomputed
    /// for the smaller model.
    pub fn pushforward_omega(&self, w: &OmegaClass) -> Result<OmegaClass> {
        match w {
            OmegaClass::Explicit(v) => Ok(OmegaClass::Explicit(self.pushforward(v)?)),
            OmegaClass::Signs { .. } => {
                let MinimalModelKind::General { k_dot_omega_positive: minimal, .. } =
                    &self.model.minimal
                else {
                    return Err(Error::InvalidOmega("sign datum on an explicit model".into()));
                };
                Ok(OmegaClass::Signs { k_dot_omega_positive: *minimal || self.model.blowups > 0 })
            }
        }
    }
}

/// Blow down a pairwise orthogonal set of −1 classes of `m`.
pub fn blow_down(m: &FourManifoldModel, subset: &[ClassVector]) -> Result<BlowDown> {
    let mut ints = Vec::with_capacity(subset.len());
    for v in subset {
        if v.len() != m.class_len() {
            return Err(Error::DimensionMismatch { expected: m.class_len(), found: v.len() });
        }
        ints.push(v.to_ints().ok_or_else(|| Error::NotExceptional("class is not integral".into()))?);
    }
    match &m.explicit {
        None => blow_down_general(m, ints),
        Some(x) => blow_down_explicit(m, x, ints),
    }
}

fn blow_down_general(m: &FourManifoldModel, ints: Vec<IntClass>) -> Result<BlowDown> {
    let n = m.blowups as usize;
    let mut removed = vec![false; n];
    for v in &ints {
        let ones: Vec<usize> = (0..n).filter(|&i| v[i] != 0).collect();
        if ones.len() != 1 || v[ones[0]] != 1 {
            return Err(Error::NotExceptional(format!(
                "{} is not a blow-up class of a General model",
                class_label(&e_labels(n), v)
            )));
        }
        if removed[ones[0]] {
            return Err(Error::NonOrthogonal(format!("E{} listed twice", ones[0] + 1)));
        }
        removed[ones[0]] = true;
    }
    let kept: Vec<usize> = (0..n).filter(|&i| !removed[i]).collect();
    let model = FourManifoldModel::new(m.minimal.clone(), kept.len() as u32)?;
    Ok(BlowDown { model, classes: ints, kept: Some(kept) })
}

fn e_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("E{i}")).collect()
}

fn blow_down_explicit(
    m: &FourManifoldModel,
    x: &ExplicitLattice,
    ints: Vec<IntClass>,
) -> Result<BlowDown> {
    let lat = &x.ambient;
    let k = x.canonical();
    for v in &ints {
        let label = class_label(lat.labels(), v);
        if !x.in_current(v) {
            return Err(Error::NotExceptional(format!("{label} was already blown down")));
        }
        if lat.pair_int(v, v) != -1 || lat.pair_int(&k, v) != -1 {
            return Err(Error::NotExceptional(format!("{label} needs square -1 and K.v = -1")));
        }
    }
    for (i, a) in ints.iter().enumerate() {
        for b in &ints[i + 1..] {
            if lat.pair_int(a, b) != 0 {
                return Err(Error::NonOrthogonal(format!(
                    "{} . {} = {}",
                    class_label(lat.labels(), a),
                    class_label(lat.labels(), b),
                    lat.pair_int(a, b)
                )));
            }
        }
    }
    if m.minimal.is_ruled() {
        let pairs = x.head_rank..lat.rank();
        let t = x.unit(1);
        let in_pairs = |v: &IntClass| {
            pairs.clone().any(|i| {
                let mut te = t.clone();
                te[i] = -1;
                *v == x.unit(i) || *v == te
            })
        };
        if let Some(v) = ints.iter().find(|v| !in_pairs(v)) {
            return Err(Error::NotExceptional(format!(
                "{} is not one of the classes E_i, T-E_i",
                class_label(lat.labels(), v)
            )));
        }
    }
    let mut nx = x.clone();
    nx.contracted.extend(ints.iter().cloned());
    let rank = lat.rank() - nx.contracted.len();
    let mut probe = FourManifoldModel { minimal: m.minimal.clone(), blowups: 0, explicit: Some(nx) };
    let parity_odd = || {
        let (_, l) = probe.current_basis().expect("explicit");
        !l.is_even()
    };
    let (minimal, blowups) = match &m.minimal {
        MinimalModelKind::RationalCp2 | MinimalModelKind::RationalS2xS2 => {
            if rank == 1 {
                (MinimalModelKind::RationalCp2, 0)
            } else if rank == 2 {
                if parity_odd() {
                    (MinimalModelKind::RationalCp2, 1)
                } else {
                    (MinimalModelKind::RationalS2xS2, 0)
                }
            } else if matches!(m.minimal, MinimalModelKind::RationalS2xS2) {
                (MinimalModelKind::RationalS2xS2, rank - 2)
            } else {
                (MinimalModelKind::RationalCp2, rank - 1)
            }
        }
        MinimalModelKind::RuledTrivial { h } | MinimalModelKind::RuledNontrivial { h } => {
            // blowing down T − E_i changes the bundle's parity
            let h = *h;
            if rank == 2 {
                if parity_odd() {
                    (MinimalModelKind::RuledNontrivial { h }, 0)
                } else {
                    (MinimalModelKind::RuledTrivial { h }, 0)
                }
            } else {
                (m.minimal.clone(), rank - 2)
            }
        }
        MinimalModelKind::General { .. } => unreachable!("General models are not explicit"),
    };
    probe.minimal = minimal;
    probe.blowups = blowups as u32;
    Ok(BlowDown { model: probe, classes: ints, kept: None })
}

/// Whether the current basis together with the contracted classes is a
/// unimodular basis of the ambient lattice.
pub fn basis_change_is_unimodular(m: &FourManifoldModel) -> bool {
    let Some(x) = &m.explicit else {
        return true;
    };
    let Some((mut rows, _)) = m.current_basis() else {
        return true;
    };
    rows.extend(x.contracted.iter().cloned());
    if rows.len() != x.ambient.rank() {
        return false;
    }
    determinant(&rows).abs().is_one()
}

/// A covering of the model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covering {
    pub model: FourManifoldModel,
    pub note: Option<String>,
}

/// The `n`-fold covering induced by a covering of the base (ruled), a
/// covering of a General model with the characteristic data scaled, or the
/// trivial cover of a simply connected rational model.
///
/// Blow-ups lift to `n` copies each. A nontrivial ruled model pulled back by
/// an even-degree base covering becomes the trivial bundle, since `w₂`
/// pulls back to `n·w₂`.
pub fn cover(m: &FourManifoldModel, n: u32) -> Result<Covering> {
    if n == 0 {
        return Err(Error::Precondition("covering degree must be at least 1".into()));
    }
    if n == 1 {
        return Ok(Covering { model: m.clone(), note: None });
    }
    let (kind, note) = match &m.minimal {
        MinimalModelKind::RationalCp2 | MinimalModelKind::RationalS2xS2 => {
            return Ok(Covering {
                model: m.clone(),
                note: Some(format!(
                    "{} is simply connected; only the trivial cover exists",
                    m.minimal
                )),
            })
        }
        MinimalModelKind::RuledTrivial { h } => (MinimalModelKind::RuledTrivial { h: n * (h - 1) + 1 }, None),
        MinimalModelKind::RuledNontrivial { h } => {
            let h = n * (h - 1) + 1;
            if n.is_multiple_of(2) {
                (
                    MinimalModelKind::RuledTrivial { h },
                    Some("an even-degree pullback of the nontrivial bundle is trivial".into()),
                )
            } else {
                (MinimalModelKind::RuledNontrivial { h }, None)
            }
        }
        MinimalModelKind::General { ksq, k_torsion, k_dot_omega_positive, b_plus } => (
            MinimalModelKind::General {
                ksq: ksq * int(i64::from(n)),
                k_torsion: *k_torsion,
                k_dot_omega_positive: *k_dot_omega_positive,
                b_plus: *b_plus,
            },
            None,
        ),
    };
    Ok(Covering { model: FourManifoldModel::new(kind, n * m.blowups)?, note })
}

/// The pulled-back symplectic class on [`cover`]`(m, n)`.
///
/// Areas of base-direction classes scale by `n`, fiber areas are unchanged,
/// and each exceptional area is repeated `n` times. Requires a catalog model
/// without blown-down classes.
pub fn pullback_omega(m: &FourManifoldModel, w: &OmegaClass, n: u32) -> Result<OmegaClass> {
    validate_omega(m, w)?;
    if n == 0 {
        return Err(Error::Precondition("covering degree must be at least 1".into()));
    }
    if n == 1 || m.minimal.is_rational() {
        return Ok(w.clone());
    }
    let OmegaClass::Explicit(v) = w else {
        return Ok(w.clone());
    };
    let x = m.explicit.as_ref().expect("explicit omega on an explicit model");
    if !x.contracted.is_empty() {
        return Err(Error::Unsupported("pullback after blow-downs".into()));
    }
    let nn = int(i64::from(n));
    let c = v.coords();
    let (a, y) = (&c[0], &c[1]);
    let head = match &m.minimal {
        MinimalModelKind::RuledTrivial { .. } => vec![a.clone(), y * &nn],
        MinimalModelKind::RuledNontrivial { .. } if n % 2 == 1 => {
            // U ↦ U' + (n−1)/2 T' on the odd pullback
            vec![a.clone(), y * &nn + a * int(i64::from((n - 1) / 2))]
        }
        MinimalModelKind::RuledNontrivial { .. } => {
            // odd section class of square 1 pulls back to square n = 2·(n/2)
            vec![a.clone(), y * &nn + a * int(i64::from(n / 2))]
        }
        _ => unreachable!("rational and General handled above"),
    };
    let mut coords = head;
    for z in &c[2..] {
        for _ in 0..n {
            coords.push(z.clone());
        }
    }
    Ok(OmegaClass::Explicit(ClassVector::new(coords)))
}

/// `κ(2g̃ − 2 − Σcᵢ)` for the lift of a pencil curve.
pub fn kappa_komega_from_pencil(g_tilde: u32, c: &[u32]) -> KodDim {
    let total: i64 = c.iter().map(|&x| i64::from(x)).sum();
    kappa_number(&int(2 * i64::from(g_tilde) - 2 - total))
}
