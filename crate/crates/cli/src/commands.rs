use crate::output::to_json;
use crate::{fail, Command, Failure, SasakiArgs, Surface};
use serde::Serialize;
use serde_json::{json, Value};
use std::f64::consts::PI;
use wcs_core::geometry::{riemann_at, Cp2FubiniStudy, FlatTorus, MetricChart, S2xS2};
use wcs_core::sasaki::{
    bterms, h4_order, k3_bracket, positivity_certificate, random_k3_operator, rotation_threshold, wcs5_integrand_kahler,
    wcs5_integrand_lifted, ClosedForms, KahlerPointData, Orientation, SurfaceSummary,
};
use wcs_core::wcsform::{run_trials, Normalization};
use wcs_core::ypq::{einstein_residual, integrate, solve_params, QuadRule, QuadratureSpec};
use wcs_core::SIGN_CONVENTION;

fn envelope(command: &str, params: Value, result: impl Serialize, warnings: Vec<String>) -> Result<String, Failure> {
    let doc = json!({
        "command": command,
        "constant_c3": Normalization::default().c3,
        "sign_convention": SIGN_CONVENTION,
        "params_echo": params,
        "result": result,
        "warnings": warnings,
    });
    to_json(&doc).map_err(|e| fail("Serialization", e.to_string()))
}

pub fn run(cmd: &Command) -> Result<String, Failure> {
    let norm = Normalization::default();
    match cmd {
        Command::Cs3Check(a) => {
            if a.dim != 3 {
                return Err(fail("UnsupportedDimension", format!("cs3-check needs --dim 3, got {}", a.dim)));
            }
            let s = run_trials(2, a.trials, a.seed, false, &norm)?;
            let mut warnings = Vec::new();
            if s.max_rel >= 1e-12 {
                warnings.push(format!("max |CS3|/scale = {:e} is not below 1e-12", s.max_rel));
            }
            envelope("cs3-check", json!({"dim": a.dim, "trials": a.trials, "seed": a.seed}), s, warnings)
        }
        Command::WcsEquiv(a) => {
            if a.k != 2 && a.k != 3 {
                return Err(fail("Invalid", format!("--k must be 2 or 3, got {}", a.k)));
            }
            let s = run_trials(a.k, a.trials, a.seed, true, &norm)?;
            let mut warnings = Vec::new();
            if s.max_rel >= 1e-10 || s.max_interior >= 1e-10 {
                warnings.push(format!("full/reduced gap {:e}, interior term {:e}", s.max_rel, s.max_interior));
            }
            envelope("wcs-equiv", json!({"k": a.k, "trials": a.trials, "seed": a.seed}), s, warnings)
        }
        Command::Sasaki(a) => sasaki(a, &norm),
        Command::Threshold(a) => {
            let s = SurfaceSummary::new(a.r_inf, a.vol, a.sigma)?;
            let rep = rotation_threshold(&s);
            let cert = positivity_certificate(&s, rep.p0);
            envelope(
                "threshold",
                json!({"r_inf": a.r_inf, "vol": a.vol, "sigma": a.sigma}),
                json!({"p0": rep.p0, "monotone_from": rep.monotone_from, "certificate_at_p0": cert, "verdicts": rep.verdicts}),
                vec![],
            )
        }
        Command::Ypq(a) => {
            let params = solve_params(a.p, a.q)?;
            let mut quad = QuadratureSpec::default();
            if let Some(t) = a.rel_tol {
                quad.rel_tol = t;
            }
            if let Some(m) = a.max_refine {
                quad.max_refinements = m;
            }
            if let Some(n) = a.grid {
                quad.rule = QuadRule::GaussLegendreTensor;
                quad.orders = [n, n];
            }
            quad.validate()?;
            let rep = integrate(&params, &quad, &norm)?;
            let doc = to_json(&rep).map_err(|e| fail("Serialization", e.to_string()))?;
            if rep.converged {
                Ok(doc)
            } else {
                Err(Failure::NotConverged(doc))
            }
        }
        Command::YpqEinstein(a) => {
            let params = solve_params(a.p, a.q)?;
            if a.samples == 0 {
                return Err(fail("Invalid", "--samples must be positive"));
            }
            let rep = einstein_residual(&params, a.samples, a.seed)?;
            let mut warnings = Vec::new();
            if rep.residual >= 1e-8 || (rep.lambda - 4.0).abs() >= 1e-8 {
                warnings.push(format!("Einstein check failed: lambda {}, residual {:e}", rep.lambda, rep.residual));
            }
            envelope("ypq-einstein", json!({"p": a.p, "q": a.q, "samples": a.samples, "seed": a.seed}), rep, warnings)
        }
        Command::H4(a) => {
            let order = h4_order(&a.coeffs)?;
            envelope("h4", json!({"coeffs": a.coeffs}), json!({"order": order}), vec![])
        }
        Command::Report(a) => {
            let text = std::fs::read_to_string(&a.input)
                .map_err(|e| fail("Io", format!("cannot read {}: {e}", a.input.display())))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| fail("MalformedReport", e.to_string()))?;
            to_json(&v).map_err(|e| fail("Serialization", e.to_string()))
        }
    }
}

/// Sample point away from coordinate singularities.
const SAMPLE: [f64; 4] = [1.1, 0.7, 2.0, 1.3];

fn sasaki(a: &SasakiArgs, norm: &Normalization) -> Result<String, Failure> {
    if !(a.lambda > 0.0) {
        return Err(fail("Invalid", format!("--lambda must be positive, got {}", a.lambda)));
    }
    let echo = json!({"surface": format!("{:?}", a.surface).to_lowercase(), "p": a.p, "a": a.a, "b": a.b,
        "lambda": a.lambda, "seed": a.seed});
    if a.surface == Surface::K3 {
        let op = random_k3_operator(a.seed, true);
        let integrand = op.integrand(a.p, Orientation::Reversed, norm)?;
        let result = json!({
            "integrand": integrand,
            "bracket": k3_bracket(&op)?,
            "p1": op.p1(Orientation::Reversed),
            "lambda_minus": op.lambda_minus,
            "integral": Value::Null,
            "note": "no canonical volume for K3; only the pointwise integrand is reported",
        });
        return envelope("sasaki", echo, result, vec![]);
    }
    let (chart, closed, vol): (Box<dyn MetricChart>, f64, f64) = match a.surface {
        Surface::T4 => (Box::new(FlatTorus::new(4)), ClosedForms::flat(a.p, norm), 1.0),
        Surface::Cp2 => (Box::new(Cp2FubiniStudy::default()), ClosedForms::cp2(a.p, norm), PI * PI / 2.0),
        Surface::S2xs2 => {
            let c = S2xS2::new(a.a, a.b)?;
            (Box::new(c), ClosedForms::s2xs2(a.a, a.b, a.p, norm), 16.0 * PI * PI * a.a * a.b)
        }
        Surface::K3 => unreachable!(),
    };
    let x = chart.domain().from_unit(&[0.3, 0.6, 0.45, 0.2]);
    let x = if a.surface == Surface::Cp2 { SAMPLE.to_vec() } else { x };
    let kd = KahlerPointData::from_chart(chart.as_ref(), &x)?;
    let lifted = wcs5_integrand_lifted(&kd, a.p, norm)?;
    let bracket_form = wcs5_integrand_kahler(&kd, a.p, norm);
    let r_inf = riemann_at(chart.as_ref(), &x)?.frame_curvature().max_abs();
    let mut warnings = Vec::new();
    let gap = (lifted - bracket_form).abs() / bracket_form.abs().max(1.0);
    if gap > 1e-9 {
        warnings.push(format!("lifted and reduced integrands differ by {gap:e}"));
    }
    let result = json!({
        "integrand": lifted,
        "integrand_from_scalars": bracket_form,
        "closed_form": closed,
        "closed_form_diff": lifted - closed,
        "scalars": kd.rfive,
        "p1": kd.p1,
        "b_terms": bterms(&kd.rfull, kd.p1, a.p),
        "r_inf_at_sample": r_inf,
        "base_volume": vol,
        "integral": lifted * vol * a.lambda,
        "sample_point": x,
    });
    envelope("sasaki", echo, result, warnings)
}
