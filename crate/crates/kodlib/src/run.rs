//! Dispatch of a request to the computation it names.

use kodlib_core::four_manifold::{class_label, cover, enumerate_minus_one, kappa_s, pullback_omega};
use kodlib_core::kod::Sign;
use kodlib_core::lefschetz::kappa_total;
use kodlib_core::low_dim::{
    bundle_kappa_le3, kappa_3manifold, kappa_disconnected, kappa_surface_divisor, riemann_hurwitz,
    seifert_kappa, surface_bundle_kappa, SeifertData,
};
use kodlib_core::relative::{fiber_sum, kappa_relative, RelativeKappa, RelativeTriple};
use kodlib_core::{Error, FourManifoldModel, KodDim, OmegaClass};
use serde::de::DeserializeOwned;

use crate::error::RunError;
use crate::format::rational_string;
use crate::report::{Report, Trace};
use crate::request::{
    BundlePayload, Command, CoverPayload, Dim2Payload, Dim3Payload, Dim4Payload, FibersumPayload,
    LefschetzPayload, RelativePayload, Request, RhurwitzPayload, SeifertPayload, Settings,
};

/// Evaluate one request; `defaults` supplies options the request omits.
pub fn run(req: &Request, defaults: Settings) -> Result<Report, RunError> {
    run_payload(req.command, &req.payload, defaults.resolve(&req.options))
}

pub fn run_payload(command: Command, payload: &serde_json::Value, s: Settings) -> Result<Report, RunError> {
    let mut trace = Trace::new(s.trace);
    let mut report = match command {
        Command::Dim2 => dim2(parse(payload)?, &mut trace)?,
        Command::Dim3 => dim3(parse(payload)?, &mut trace),
        Command::Dim4 => dim4(parse(payload)?, s.bound, &mut trace)?,
        Command::Relative => relative(parse(payload)?, s.bound, &mut trace)?,
        Command::Fibersum => fibersum(parse(payload)?, s.bound, &mut trace)?,
        Command::Lefschetz => lefschetz(parse(payload)?, &mut trace)?,
        Command::Seifert => seifert(parse(payload)?, &mut trace)?,
        Command::Rhurwitz => rhurwitz(parse(payload)?, &mut trace)?,
        Command::Cover => cover_cmd(parse(payload)?, &mut trace)?,
        Command::Bundle => bundle(parse(payload)?)?,
    };
    report.command = command.as_str().to_string();
    report.trace = trace.into_lines();
    Ok(report)
}

fn parse<T: DeserializeOwned>(payload: &serde_json::Value) -> Result<T, RunError> {
    T::deserialize(payload).map_err(|e| RunError::Payload(e.to_string()))
}

fn sign_str(s: Sign) -> &'static str {
    match s {
        Sign::Negative => "negative",
        Sign::Zero => "zero",
        Sign::Positive => "positive",
    }
}

fn dim2(p: Dim2Payload, trace: &mut Trace) -> Result<Report, RunError> {
    let d = p.divisor.to_divisor()?;
    let total = kodlib_core::lattice::int(2 * i64::from(p.genus) - 2) + d.degree();
    trace.push("c(D)", rational_string(&d.degree()));
    trace.push("2g-2+c(D)", rational_string(&total));
    Ok(Report::new("dim2", kappa_surface_divisor(p.genus, &d)))
}

fn dim3(p: Dim3Payload, trace: &mut Trace) -> Report {
    let components = match p {
        Dim3Payload::Pieces { pieces } => vec![pieces],
        Dim3Payload::Components { components } => components,
    };
    let ks: Vec<KodDim> = components
        .iter()
        .map(|c| kappa_3manifold(&c.iter().map(|g| g.0).collect::<Vec<_>>()))
        .collect();
    for (i, (c, k)) in components.iter().zip(&ks).enumerate() {
        let labels: Vec<&str> = c.iter().map(|g| g.0.label()).collect();
        trace.push(&format!("component {} [{}]", i + 1, labels.join(", ")), k);
    }
    Report::new("dim3", kappa_disconnected(&ks))
}

fn k_dot_omega(m: &FourManifoldModel, w: &OmegaClass) -> Result<String, Error> {
    match (m.canonical(), w) {
        (Some(k), OmegaClass::Explicit(v)) => Ok(rational_string(&m.pair(&k, v)?)),
        (_, OmegaClass::Signs { k_dot_omega_positive: true }) => Ok(sign_str(Sign::Positive).into()),
        (_, OmegaClass::Signs { k_dot_omega_positive: false }) => Ok(sign_str(Sign::Zero).into()),
        (None, OmegaClass::Explicit(_)) => Err(Error::InvalidOmega("explicit omega on a General model".into())),
    }
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

fn dim4(p: Dim4Payload, bound: u32, trace: &mut Trace) -> Result<Report, RunError> {
    let (m, w) = p.model.to_model()?;
    let kappa = kappa_s(&m, &w)?;
    trace.push("minimal model", m.minimal());
    trace.push("blow-ups", m.blowups());
    trace.push("K^2", rational_string(&m.k_squared()));
    trace.push("K.omega", k_dot_omega(&m, &w)?);
    trace.push("b+", m.b_plus());
    let mut report = Report::new("dim4", kappa);
    if p.enumerate {
        let set = enumerate_minus_one(&m, &w, bound)?;
        trace.push("-1 classes", set.len());
        let labels: Vec<String> = set.members().iter().map(|v| label(&m, v)).collect();
        trace.push("-1 set", format!("{{{}}}", labels.join(", ")));
        if set.bound().is_some() {
            trace.push("enumeration complete", !set.bound_qualified());
        }
        report = report.qualified_by(set.bound());
    }
    Ok(report)
}

fn triple(p: &RelativePayload) -> Result<RelativeTriple, Error> {
    let (m, w) = p.model.to_model()?;
    Ok(RelativeTriple::new(m, w, p.surface.to_surface()))
}

fn enumeration_bound(t: &RelativeTriple, bound: u32) -> Option<u32> {
    t.manifold.minimal().is_rational().then_some(bound)
}

fn trace_relative(prefix: &str, t: &RelativeTriple, r: &RelativeKappa, trace: &mut Trace) {
    let m = &t.manifold;
    trace.push(&format!("{prefix}K^2"), rational_string(&m.k_squared()));
    trace.push(&format!("{prefix}-1 classes"), r.minimal.enumeration_size);
    let blown: Vec<String> = r.minimal.blown_down.iter().map(|v| label(m, v)).collect();
    trace.push(&format!("{prefix}blown down"), format!("{{{}}}", blown.join(", ")));
    trace.push(&format!("{prefix}F+ components"), r.minimal.triple.surface.len());
    if let Some(a) = &r.adjoint {
        trace.push(&format!("{prefix}(K+F)^2"), rational_string(&a.square));
        trace.push(&format!("{prefix}(K+F).omega"), sign_str(a.omega_sign));
    }
    if t.manifold.minimal().is_rational() {
        trace.push(&format!("{prefix}enumeration complete"), !r.minimal.bound_qualified);
    }
}

fn relative(p: RelativePayload, bound: u32, trace: &mut Trace) -> Result<Report, RunError> {
    let t = triple(&p)?;
    let r = kappa_relative(&t, bound)?;
    trace_relative("", &t, &r, trace);
    let mut report = Report::new("relative", r.kappa).qualified_by(enumeration_bound(&t, bound));
    report.warnings = r.warnings;
    Ok(report)
}

fn fibersum(p: FibersumPayload, bound: u32, trace: &mut Trace) -> Result<Report, RunError> {
    let (t1, t2) = (triple(&p.first)?, triple(&p.second)?);
    let sum = fiber_sum(&t1, &t2, bound)?;
    let mut warnings = Vec::new();
    for ((prefix, t), r) in [("first: ", &t1), ("second: ", &t2)].into_iter().zip(&sum.summands) {
        trace.push(&format!("{prefix}kappa_rel"), r.kappa);
        trace_relative(prefix, t, r, trace);
        warnings.extend(r.warnings.iter().map(|w| format!("{prefix}{w}")));
    }
    let kappa = sum.kappa;
    let qualified = enumeration_bound(&t1, bound).or(enumeration_bound(&t2, bound));
    let mut report = Report::new("fibersum", kappa).qualified_by(qualified);
    report.warnings = warnings;
    Ok(report)
}

fn lefschetz(p: LefschetzPayload, trace: &mut Trace) -> Result<Report, RunError> {
    let r = kappa_total(&p.to_data())?;
    trace.push("euler", r.euler);
    trace.push("c(D)", rational_string(&r.divisor_degree));
    if let Some(s) = &r.signature {
        trace.push("signature", rational_string(s));
    }
    if let Some(k) = &r.k_squared {
        trace.push("K^2", rational_string(k));
    }
    Ok(Report::new("lefschetz", r.kappa))
}

fn seifert(p: SeifertPayload, trace: &mut Trace) -> Result<Report, RunError> {
    let s = SeifertData::new(p.base_genus, p.multiplicities);
    let kappa = seifert_kappa(&s)?;
    trace.push("chi_orb", rational_string(&s.orbifold_euler_characteristic()?));
    Ok(Report::new("seifert", kappa))
}

fn rhurwitz(p: RhurwitzPayload, trace: &mut Trace) -> Result<Report, RunError> {
    let c = riemann_hurwitz(p.degree, p.chi_base, &p.indices)?;
    trace.push("chi_cover", c.chi_cover);
    trace.push("c(D)", rational_string(&c.divisor.degree()));
    Ok(Report::new("rhurwitz", c.kappa))
}

fn cover_cmd(p: CoverPayload, trace: &mut Trace) -> Result<Report, RunError> {
    let (m, w) = p.model.to_model()?;
    let c = cover(&m, p.n)?;
    let wc = pullback_omega(&m, &w, p.n)?;
    let kappa = kappa_s(&c.model, &wc)?;
    let base = kappa_s(&m, &w)?;
    if kappa != base {
        return Err(RunError::Consistency(format!(
            "covering changed kappa from {base} to {kappa}"
        )));
    }
    trace.push("cover model", c.model.minimal());
    trace.push("cover blow-ups", c.model.blowups());
    trace.push("cover K^2", rational_string(&c.model.k_squared()));
    trace.push("cover K.omega", k_dot_omega(&c.model, &wc)?);
    let mut report = Report::new("cover", kappa);
    report.warnings.extend(c.note);
    Ok(report)
}

fn bundle(p: BundlePayload) -> Result<Report, RunError> {
    let kappa = match p {
        BundlePayload::Surface { base_genus, fiber_genus } => surface_bundle_kappa(base_genus, fiber_genus),
        BundlePayload::Low { kappa_base, kappa_fiber } => {
            if kappa_base.0.checked_add(kappa_fiber.0).is_none_or(|k| k > KodDim::One) {
                return Err(RunError::Payload(
                    "base and fiber values sum above 1, which no bundle of dimension <= 3 reaches".into(),
                ));
            }
            bundle_kappa_le3(kappa_base.0, kappa_fiber.0)
        }
    };
    Ok(Report::new("bundle", kappa))
}
