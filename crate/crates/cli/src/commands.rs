//! Subcommand implementations. Each returns an [`Outcome`] so that `main`
//! only prints and exits.

use std::fmt::Write as _;

use clap::ValueEnum;
use core_moments::fibfit::{
    asymptotic_leading, fit_raw_moment, normal_moment, symbolic_central, validate_fit, DegreeBound, FitConfig,
    Limit, MomentTheory, Target,
};
use core_moments::decimal::quad_to_decimal;
use core_moments::genfunc::{self, fibonacci_table, verify_all_methods, GfMethod};
use core_moments::moments::MomentTable;
use core_moments::partitions::{brute_force_gf_hooks, WorkBudget};
use core_moments::{Error, FibExpr, PowerSums, QPoly, QuadExt};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::report::{CheckedRange, ReportDocument, ReportEntry, Status};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GfChoice {
    Sum,
    Closed,
    Recurrence,
    Brute,
    CrossCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MomentKind {
    Raw,
    Central,
    Standardized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FitKind {
    Raw,
    Central,
}

/// What a command printed and how the process should exit.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            ..Default::default()
        }
    }

    fn mismatch(stdout: String, stderr: String) -> Self {
        Outcome {
            stdout,
            stderr,
            code: EXIT_MISMATCH,
        }
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::InvalidArgument(_) | Error::OutsideBox { .. } | Error::ZeroVariance { .. } => EXIT_USAGE,
            Error::NoFit { .. } | Error::Underdetermined { .. } | Error::NonPositiveVariance(_) => EXIT_MISMATCH,
        };
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code,
        }
    }
}

type CmdResult = Result<Outcome, Outcome>;

fn json_line(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json value serializes");
    s.push('\n');
    s
}

fn latex_poly(p: &QPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, c) in p.coeffs().iter().enumerate() {
        if c.sign() == num_bigint::Sign::NoSign {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let coeff = if mag.is_one() && n > 0 { String::new() } else { mag.to_string() };
        match n {
            0 => out.push_str(&coeff),
            1 => write!(out, "{coeff}q").unwrap(),
            _ => write!(out, "{coeff}q^{{{n}}}").unwrap(),
        }
    }
    out
}

fn latex_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_string()
    } else {
        let sign = if x.is_negative() { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", x.numer().abs(), x.denom())
    }
}

fn latex_quad(x: &QuadExt) -> String {
    if x.is_rational() {
        return latex_rational(&x.a);
    }
    let sign = if x.b.is_negative() { "-" } else { "+" };
    format!("{} {sign} {}\\sqrt{{5}}", latex_rational(&x.a), latex_rational(&x.b.abs()))
}

fn limit_decimal(l: &Limit, digits: usize) -> String {
    match l {
        Limit::Finite(v) => quad_to_decimal(&v.a, &v.b, digits),
        Limit::Diverges => "inf".into(),
    }
}

fn render_poly(s: usize, method: &str, p: &QPoly, format: Format) -> String {
    match format {
        Format::Text => format!("{p}\n"),
        Format::Latex => format!("G_{{{s}}}(q) = {}\n", latex_poly(p)),
        Format::Json => json_line(json!({
            "s": s,
            "method": method,
            "coefficients": p.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
        })),
    }
}

/// `gf`: prints `G_s(q)` in ascending powers.
pub fn gf(s: usize, choice: Option<GfChoice>, format: Format, budget: WorkBudget) -> CmdResult {
    let single = |m: GfMethod| -> CmdResult {
        let p = genfunc::gs(s, m, budget)?;
        Ok(Outcome::ok(render_poly(s, m.name(), &p, format)))
    };
    match choice {
        None => single(GfMethod::default_for(s)),
        Some(GfChoice::Sum) => single(GfMethod::Sum),
        Some(GfChoice::Closed) => single(GfMethod::Closed),
        Some(GfChoice::Recurrence) => single(GfMethod::Recurrence),
        Some(GfChoice::Brute) => single(GfMethod::Brute),
        Some(GfChoice::CrossCheck) => cross_check(s, format, budget),
    }
}

fn cross_check(s: usize, format: Format, budget: WorkBudget) -> CmdResult {
    let reference = genfunc::gs_recurrence(s)?;
    let mut results: Vec<(&str, Option<QPoly>)> = vec![
        ("sum", Some(genfunc::gs_sum(s)?)),
        ("closed", Some(genfunc::gs_closed(s)?)),
    ];
    // brute-force routes count as applicable only while they fit the budget
    for (name, r) in [
        ("brute", genfunc::gs(s, GfMethod::Brute, budget)),
        ("brute-hooks", brute_force_gf_hooks(s, budget)),
    ] {
        match r {
            Ok(p) => results.push((name, Some(p))),
            Err(Error::BudgetExceeded { .. }) => results.push((name, None)),
            Err(e) => return Err(e.into()),
        }
    }
    let mut lines = String::new();
    let mut diagnostics = String::new();
    let mut statuses = Vec::new();
    for (name, p) in &results {
        let status = match p {
            None => "skipped (work budget)".to_string(),
            Some(p) => match p.first_difference(&reference) {
                None => "agrees".to_string(),
                Some(n) => {
                    writeln!(
                        diagnostics,
                        "{name} disagrees with recurrence at q^{n}: {} vs {}",
                        p.coeff(n),
                        reference.coeff(n)
                    )
                    .unwrap();
                    format!("differs at q^{n}")
                }
            },
        };
        writeln!(lines, "{name}: {status}").unwrap();
        statuses.push(json!({"method": name, "status": status}));
    }
    let stdout = match format {
        Format::Json => json_line(json!({
            "s": s,
            "coefficients": reference.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "checks": statuses,
        })),
        _ => format!("{}{lines}", render_poly(s, "recurrence", &reference, format)),
    };
    if diagnostics.is_empty() {
        Ok(Outcome::ok(stdout))
    } else {
        Err(Outcome::mismatch(stdout, diagnostics))
    }
}

/// `count`: `G_s(1)` against `F_{s+1}`.
pub fn count(max_s: usize, format: Format) -> CmdResult {
    let table = genfunc::gs_recurrence_table(max_s)?;
    let fib = fibonacci_table(max_s + 1);
    let mut rows = Vec::new();
    let mut all_ok = true;
    for (i, g) in table.iter().enumerate() {
        let s = i + 1;
        let value = g.eval_one();
        let ok = value == fib[s + 1];
        all_ok &= ok;
        rows.push((s, value, fib[s + 1].clone(), ok));
    }
    let stdout = match format {
        Format::Json => json_line(json!(rows
            .iter()
            .map(|(s, v, f, ok)| json!({"s": s, "count": v.to_string(), "fibonacci": f.to_string(), "match": ok}))
            .collect::<Vec<_>>())),
        Format::Latex => {
            let mut out = String::from("\\begin{tabular}{rrrc}\n$s$ & $G_s(1)$ & $F_{s+1}$ & match \\\\\n");
            for (s, v, f, ok) in &rows {
                writeln!(out, "{s} & {v} & {f} & {} \\\\", if *ok { "yes" } else { "no" }).unwrap();
            }
            out.push_str("\\end{tabular}\n");
            out
        }
        Format::Text => {
            let mut out = String::from("s\tG_s(1)\tF_(s+1)\tmatch\n");
            for (s, v, f, ok) in &rows {
                writeln!(out, "{s}\t{v}\t{f}\t{}", if *ok { "yes" } else { "NO" }).unwrap();
            }
            out
        }
    };
    if all_ok {
        Ok(Outcome::ok(stdout))
    } else {
        Err(Outcome::mismatch(stdout, "count mismatch\n".into()))
    }
}

/// `moments`: exact moments of `X_s` for `k = 0..=max_k`.
pub fn moments(s: usize, max_k: usize, kind: MomentKind, format: Format, digits: usize) -> CmdResult {
    let table = MomentTable::compute(s, max_k.max(2))?;
    let mut values: Vec<(String, Option<String>)> = Vec::new();
    for k in 0..=max_k {
        values.push(match kind {
            MomentKind::Raw => (table.raw[k].to_string(), None),
            MomentKind::Central => (table.central[k].to_string(), None),
            MomentKind::Standardized => {
                let st = table.standardized(k)?;
                let exact = match st.exact() {
                    Some(v) => v.to_string(),
                    None if st.squared().is_zero() => "0".into(),
                    None => format!("{}sqrt({})", if st.is_negative() { "-" } else { "" }, st.squared()),
                };
                (exact, Some(st.to_decimal(digits)))
            }
        });
    }
    let stdout = match format {
        Format::Json => json_line(json!({
            "s": s,
            "kind": format!("{kind:?}").to_lowercase(),
            "moments": values.iter().enumerate().map(|(k, (v, d))| {
                let mut o = json!({"k": k, "value": v});
                if let Some(d) = d {
                    o["decimal"] = json!(d);
                }
                o
            }).collect::<Vec<_>>(),
        })),
        Format::Latex => values
            .iter()
            .enumerate()
            .map(|(k, (v, _))| format!("k={k}: {v}\n"))
            .collect(),
        Format::Text => values
            .iter()
            .map(|(v, d)| match d {
                Some(d) => format!("{v}\t{d}\n"),
                None => format!("{v}\n"),
            })
            .collect(),
    };
    Ok(Outcome::ok(stdout))
}

fn fit_config(degree: Option<usize>, holdout: usize) -> FitConfig {
    FitConfig {
        degree: degree.map_or(DegreeBound::Auto, DegreeBound::Fixed),
        holdout,
        ..FitConfig::default()
    }
}

fn render_expr(label: &str, latex_label: &str, e: &FibExpr, format: Format, report: &str) -> String {
    let cd = e.common_denominator();
    match format {
        Format::Text => format!("{label} = {}\n  = {e}\n{report}\n", cd.to_text()),
        Format::Latex => format!("{latex_label} = {}\n", cd.to_latex()),
        Format::Json => json_line(json!({
            "claim": format!("{label} = {}", cd.to_text()),
            "expression": e,
            "validation": report,
        })),
    }
}

/// `fit`: closed form of a raw or central moment.
pub fn fit(k: usize, kind: FitKind, degree: Option<usize>, holdout: usize, format: Format) -> CmdResult {
    let config = fit_config(degree, holdout);
    let sums = PowerSums::by_recurrence(config.required_max_s(k.max(1)), k.max(2))?;
    match kind {
        FitKind::Raw => {
            let f = fit_raw_moment(k, &config, &sums)?;
            let report = format!(
                "fitted on s in [{}, {}] (degree {}); {}",
                f.sample.start(),
                f.sample.end(),
                f.degree,
                f.validation
            );
            let (label, latex_label) = raw_label(k);
            Ok(Outcome::ok(render_expr(
                &label,
                &latex_label,
                &f.expr,
                format,
                &report,
            )))
        }
        FitKind::Central => {
            let fits = (1..=k)
                .map(|j| fit_raw_moment(j, &config, &sums))
                .collect::<core_moments::Result<Vec<_>>>()?;
            let exprs: Vec<FibExpr> = fits.iter().map(|f| f.expr.clone()).collect();
            let central = symbolic_central(k, &exprs)?;
            let end = fits.last().map_or(config.start_s, |f| *f.validation.range.end());
            let validation = validate_fit(&central, Target::Central(k), config.start_s..=end, &sums)?;
            let (label, latex_label) = central_label(k);
            let text = render_expr(
                &label,
                &latex_label,
                &central,
                format,
                &validation.to_string(),
            );
            if validation.passed() {
                Ok(Outcome::ok(text))
            } else {
                Err(Outcome::mismatch(text, format!("validation failed: {validation}\n")))
            }
        }
    }
}

fn normal_limit(k: usize) -> Limit {
    Limit::Finite(QuadExt::rational(BigRational::from_integer(normal_moment(k))))
}

/// `limits`: `s → ∞` limits of the standardized moments against the normal law.
pub fn limits(max_k: usize, format: Format, digits: usize) -> CmdResult {
    if max_k < 2 {
        return Err(Error::InvalidArgument("--max-k must be at least 2".into()).into());
    }
    let config = FitConfig::default();
    let sums = MomentTheory::power_sums(max_k, &config)?;
    let theory = MomentTheory::derive(max_k, &config, &sums)?;
    let mut rows = vec![(1usize, Limit::Finite(QuadExt::zero()))];
    rows.extend(theory.limits.iter().cloned());
    let stdout = match format {
        Format::Json => json_line(json!({
            "limits": rows.iter().map(|(k, l)| json!({
                "k": k,
                "limit": l.to_string(),
                "decimal": limit_decimal(l, digits),
                "normal": normal_moment(*k).to_string(),
                "match": *l == normal_limit(*k),
            })).collect::<Vec<_>>(),
            "status": "verified-on-range",
        })),
        Format::Latex => {
            let mut out = String::from("\\begin{tabular}{rrr}\n$k$ & limit & normal \\\\\n");
            for (k, l) in &rows {
                let v = match l {
                    Limit::Finite(v) => latex_quad(v),
                    Limit::Diverges => "\\infty".into(),
                };
                writeln!(out, "{k} & {v} & {} \\\\", normal_moment(*k)).unwrap();
            }
            out.push_str("\\end{tabular}\n");
            out
        }
        Format::Text => {
            let mut out = String::from("k\tlimit\tdecimal\tnormal\tmatch\n");
            for (k, l) in &rows {
                let ok = *l == normal_limit(*k);
                let dec = limit_decimal(l, digits);
                writeln!(out, "{k}\t{l}\t{dec}\t{}\t{}", normal_moment(*k), if ok { "yes" } else { "NO" }).unwrap();
            }
            out
        }
    };
    if !theory.all_validated() {
        return Err(Outcome::mismatch(stdout, "a moment fit failed validation\n".into()));
    }
    if rows.iter().all(|(k, l)| *l == normal_limit(*k)) {
        Ok(Outcome::ok(stdout))
    } else {
        Err(Outcome::mismatch(stdout, "limit differs from the normal moment\n".into()))
    }
}

/// `verify`: all generating-function routes against each other.
pub fn verify(max_s: usize, brute_max: usize, format: Format, budget: WorkBudget) -> CmdResult {
    let report = verify_all_methods(max_s, brute_max, budget)?;
    let stdout = match format {
        Format::Json => json_line(json!({
            "max_s": max_s,
            "brute_max": brute_max,
            "checks": report.checks.iter().map(|c| json!({
                "s": c.s,
                "check": c.description,
                "passed": c.passed,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
            "all_passed": report.all_passed(),
        })),
        _ => {
            let mut out = String::new();
            for c in &report.checks {
                let mark = if c.passed { "pass" } else { "FAIL" };
                write!(out, "{mark}\ts={}\t{}", c.s, c.description).unwrap();
                if let Some(d) = &c.detail {
                    write!(out, "\t{d}").unwrap();
                }
                out.push('\n');
            }
            let failed = report.failures().count();
            writeln!(out, "{} checks, {failed} failed", report.checks.len()).unwrap();
            out
        }
    };
    if report.all_passed() {
        Ok(Outcome::ok(stdout))
    } else {
        let diag: String = report
            .failures()
            .map(|c| format!("s = {}: {} ({})\n", c.s, c.description, c.detail.clone().unwrap_or_default()))
            .collect();
        Err(Outcome::mismatch(stdout, diag))
    }
}

fn raw_label(k: usize) -> (String, String) {
    if k == 1 {
        ("E[X_s]".into(), "\\mathbb{E}[X_s]".into())
    } else {
        (format!("E[X_s^{k}]"), format!("\\mathbb{{E}}[X_s^{{{k}}}]"))
    }
}

fn central_label(k: usize) -> (String, String) {
    if k == 2 {
        ("Var(X_s)".into(), "\\mathrm{Var}(X_s)".into())
    } else {
        (
            format!("E[(X_s - E[X_s])^{k}]"),
            format!("\\mathbb{{E}}[(X_s-\\mathbb{{E}}[X_s])^{{{k}}}]"),
        )
    }
}

/// Builds the theorem document for moments `1..=max_k`.
pub fn theorem_document(max_k: usize) -> Result<ReportDocument, Outcome> {
    if max_k < 1 {
        return Err(Error::InvalidArgument("--max-k must be at least 1".into()).into());
    }
    let config = FitConfig::default();
    let sums = MomentTheory::power_sums(max_k, &config)?;
    let theory = MomentTheory::derive(max_k, &config, &sums)?;
    for f in &theory.raw {
        if let Some(m) = &f.validation.mismatch {
            return Err(Outcome::mismatch(String::new(), format!("raw moment k = {} fails at s = {}\n", f.k, m.s)));
        }
    }
    for v in &theory.central_validation {
        if let Some(m) = &v.mismatch {
            return Err(Outcome::mismatch(
                String::new(),
                format!("central moment k = {} fails at s = {}\n", v.target.k(), m.s),
            ));
        }
    }

    let mut entries = Vec::new();
    for k in 1..=max_k {
        let fit = &theory.raw[k - 1];
        let cd = fit.expr.common_denominator();
        let (label, latex_label) = raw_label(k);
        entries.push(ReportEntry {
            claim: format!("{label} = {}", cd.to_text()),
            latex: format!("{latex_label} = {}", cd.to_latex()),
            status: Status::VerifiedOnRange,
            range: CheckedRange::s(*fit.sample.start(), *fit.validation.range.end()),
            expression: Some(fit.expr.clone()),
            value: None,
        });
        if k >= 2 {
            let central = &theory.central[k];
            let validation = &theory.central_validation[k];
            let cd = central.common_denominator();
            let (label, latex_label) = central_label(k);
            entries.push(ReportEntry {
                claim: format!("{label} = {}", cd.to_text()),
                latex: format!("{latex_label} = {}", cd.to_latex()),
                status: Status::VerifiedOnRange,
                range: CheckedRange::s(*validation.range.start(), *validation.range.end()),
                expression: Some(central.clone()),
                value: None,
            });
            let (_, limit) = &theory.limits[k - 2];
            let leading = asymptotic_leading(central)
                .map(|(d, c)| format!("({c})*s^{d}"))
                .unwrap_or_else(|| "0".into());
            let value = limit.to_string();
            let latex_value = match limit {
                Limit::Finite(v) => latex_quad(v),
                Limit::Diverges => "\\infty".into(),
            };
            entries.push(ReportEntry {
                claim: format!(
                    "lim_(s->oo) E[(X_s - E[X_s])^{k}] / Var(X_s)^({k}/2) = {value} \
                     (normal law: {}; central moment ~ {leading})",
                    normal_moment(k)
                ),
                latex: format!(
                    "\\lim_{{s\\to\\infty}} \\frac{{\\mathbb{{E}}[(X_s-\\mu)^{{{k}}}]}}{{\\sigma^{{{k}}}}} = {latex_value}"
                ),
                status: Status::Limit,
                range: CheckedRange::k(k, k),
                expression: None,
                value: Some(value),
            });
        }
    }
    if max_k >= 2 {
        let normal = theory.limits_are_normal();
        let seq: Vec<String> = (1..=max_k).map(|k| normal_moment(k).to_string()).collect();
        entries.push(ReportEntry {
            claim: format!(
                "standardized central moments k = 1..{max_k} {} the standard normal sequence {} in the limit s -> oo",
                if normal { "agree with" } else { "DO NOT agree with" },
                seq.join(", ")
            ),
            latex: format!(
                "\\lim_{{s\\to\\infty}} \\frac{{\\mathbb{{E}}[(X_s-\\mu)^{{k}}]}}{{\\sigma^{{k}}}} = {}",
                seq.join(", ")
            ),
            status: Status::VerifiedOnRange,
            range: CheckedRange::k(1, max_k),
            expression: None,
            value: Some(normal.to_string()),
        });
        if !normal {
            return Err(Outcome::mismatch(String::new(), "standardized limits are not normal\n".into()));
        }
    }
    Ok(ReportDocument::new(entries))
}

/// `theorems`: the document rendered in `format`.
pub fn theorems(max_k: usize, format: Format) -> CmdResult {
    let doc = theorem_document(max_k)?;
    Ok(Outcome::ok(match format {
        Format::Text => doc.to_text(),
        Format::Latex => doc.to_latex(),
        Format::Json => doc.to_json(),
    }))
}

/// Collapses `CmdResult` into the outcome to print.
pub fn finish(r: CmdResult) -> Outcome {
    r.unwrap_or_else(|e| e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn latex_rendering() {
        assert_eq!(latex_poly(&QPoly::from_i64s(&[1, 1, 1, 2])), "1 + q + q^{2} + 2q^{3}");
        assert_eq!(latex_poly(&QPoly::from_i64s(&[0, -1])), "-q");
        assert_eq!(latex_rational(&BigRational::new((-3).into(), 4.into())), "-\\frac{3}{4}");
        assert_eq!(latex_quad(&QuadExt::inv_phi()), "-\\frac{1}{2} + \\frac{1}{2}\\sqrt{5}");
    }

    #[test]
    fn error_codes() {
        assert_eq!(Outcome::from(Error::BudgetExceeded { budget: 1 }).code, EXIT_BUDGET);
        assert_eq!(Outcome::from(Error::InvalidArgument("x".into())).code, EXIT_USAGE);
        assert_eq!(Outcome::from(Error::NoFit { k: 1, max_degree: 2 }).code, EXIT_MISMATCH);
    }
}
