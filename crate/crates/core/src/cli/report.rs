//! Report documents: titled sections of text lines plus one CSV table.
//!
//! Text renders every rational exactly with a 12-digit decimal annotation;
//! CSV fields are exact fractions only.

use std::io;

use crate::envelopes::{classify_values, envelope_table, exceptional_points, EnvelopeValues, Property};
use crate::error::Error;
use crate::integration::{
    compare_report, darboux_integrals, lebesgue_integral, measurability_report, ExceptionSet, Verdict,
};
use crate::model::FunctionModel;
use crate::numeric::{annotate, Enclosure, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub title: String,
    pub lines: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportDocument {
    /// One-line summary printed before the sections.
    pub headline: Option<String>,
    pub sections: Vec<Section>,
    pub table: Table,
}

impl ReportDocument {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(h) = &self.headline {
            out.push_str(h);
            out.push_str("\n\n");
        }
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&format!("[{}]\n", s.title));
            for line in &s.lines {
                out.push_str(line);
                out.push('\n');
            }
        }
        out
    }

    pub fn write_csv<W: io::Write>(&self, w: W) -> csv::Result<()> {
        let mut writer = csv::Writer::from_writer(w);
        writer.write_record(&self.table.header)?;
        for row in &self.table.rows {
            writer.write_record(row)?;
        }
        writer.flush()?;
        Ok(())
    }
}

#[derive(Debug)]
pub enum ReportError {
    Engine(Error),
    /// A computed result broke one of its structural invariants.
    Invariant(String),
}

impl From<Error> for ReportError {
    fn from(e: Error) -> Self {
        ReportError::Engine(e)
    }
}

type Built = std::result::Result<ReportDocument, ReportError>;

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn enclosure_text(e: &Enclosure) -> String {
    if e.is_exact() {
        annotate(e.lo())
    } else {
        format!(
            "[{}, {}] width {} converged {}",
            annotate(e.lo()),
            annotate(e.hi()),
            annotate(&e.width),
            yes_no(e.converged)
        )
    }
}

fn opt(q: &Option<Rational>) -> String {
    q.as_ref().map_or(String::new(), |v| v.to_string())
}

fn checked_table(f: &FunctionModel, points: &[Rational]) -> std::result::Result<Vec<(Rational, EnvelopeValues)>, ReportError> {
    let rows = envelope_table(f, points)?;
    for (x, env) in &rows {
        env.check().map_err(|m| ReportError::Invariant(format!("envelope at {x}: {m}")))?;
        let class = classify_values(env);
        let flat = env.oscillation == Rational::from_integer(0.into()) && env.two_sided_sup == env.value;
        if class.is_cont != flat || (class.is_cont && !(class.is_left_cont && class.is_right_cont)) {
            return Err(ReportError::Invariant(format!("incoherent classification at {x}")));
        }
    }
    Ok(rows)
}

pub fn classification(f: &FunctionModel, points: &[Rational]) -> Built {
    let rows = checked_table(f, points)?;
    let mut lines = Vec::new();
    let mut table = Vec::new();
    for (x, env) in &rows {
        let c = classify_values(env);
        lines.push(format!("x = {}: {c}", annotate(x)));
        table.push(vec![
            x.to_string(),
            yes_no(c.is_usc).into(),
            yes_no(c.is_lsc).into(),
            yes_no(c.is_left_cont).into(),
            yes_no(c.is_right_cont).into(),
            yes_no(c.is_cont).into(),
        ]);
    }
    Ok(ReportDocument {
        headline: None,
        sections: vec![Section { title: "classification".into(), lines }],
        table: Table { header: vec!["x", "usc", "lsc", "left", "right", "cont"], rows: table },
    })
}

pub fn envelopes(f: &FunctionModel, points: &[Rational]) -> Built {
    let rows = checked_table(f, points)?;
    let mut lines = Vec::new();
    let mut table = Vec::new();
    let side = |s: &Option<Rational>, i: &Option<Rational>| match (s, i) {
        (Some(s), Some(i)) => format!("sup {}, inf {}", annotate(s), annotate(i)),
        _ => "undefined".to_string(),
    };
    for (x, e) in &rows {
        lines.push(format!("x = {}", annotate(x)));
        lines.push(format!("  f = {}", annotate(&e.value)));
        lines.push(format!("  f* = {}", annotate(&e.two_sided_sup)));
        lines.push(format!("  f_* = {}", annotate(&e.two_sided_inf)));
        lines.push(format!("  left: {}", side(&e.left_sup, &e.left_inf)));
        lines.push(format!("  right: {}", side(&e.right_sup, &e.right_inf)));
        lines.push(format!("  oscillation = {}", annotate(&e.oscillation)));
        table.push(vec![
            x.to_string(),
            e.value.to_string(),
            e.two_sided_sup.to_string(),
            e.two_sided_inf.to_string(),
            opt(&e.left_sup),
            opt(&e.left_inf),
            opt(&e.right_sup),
            opt(&e.right_inf),
            e.oscillation.to_string(),
        ]);
    }
    Ok(ReportDocument {
        headline: None,
        sections: vec![Section { title: "envelopes".into(), lines }],
        table: Table {
            header: vec!["x", "f", "fstar", "flstar", "fstar_left", "finf_left", "fstar_right", "finf_right", "osc"],
            rows: table,
        },
    })
}

pub fn analysis(f: &FunctionModel) -> Built {
    let mut lines = Vec::new();
    let mut table = Vec::new();
    for property in Property::ALL {
        let r = exceptional_points(f, property);
        let points: Vec<String> = r.points.iter().map(annotate).collect();
        let mut line = format!(
            "{}: {}",
            property.name(),
            if points.is_empty() { "no isolated failures".to_string() } else { points.join(", ") }
        );
        let dense = r.describe_dense().unwrap_or_default();
        if !dense.is_empty() {
            line.push_str(&format!("; dense failure: {dense}"));
        }
        if let Some(d) = r.dense.as_ref().filter(|d| !d.member_breakpoints.is_empty()) {
            let bps: Vec<String> = d.member_breakpoints.iter().map(annotate).collect();
            line.push_str(&format!("; failing breakpoints in the dense set: {}", bps.join(", ")));
        }
        lines.push(line);
        let joined: Vec<String> = r.points.iter().map(|x| x.to_string()).collect();
        table.push(vec![format!("exceptions_{}", property.name()), joined.join(" ")]);
        table.push(vec![format!("dense_{}", property.name()), dense]);
    }
    let c = measurability_report(f)?;
    if !c.measurable {
        return Err(ReportError::Invariant("measurability spot check failed".into()));
    }
    let exceptions = match c.exceptions {
        ExceptionSet::Empty => "empty".to_string(),
        ExceptionSet::Finite(n) => format!("{n} point(s)"),
        ExceptionSet::Dense(set) => format!("{set} (countable, dense)"),
    };
    let mut cert = vec![
        format!("pieces: {}", c.pieces),
        format!("breakpoints: {}", c.breakpoints),
        format!("exception set: {exceptions}"),
        format!("base is Borel (finitely many continuous pieces): {}", yes_no(c.base_is_borel)),
        format!("exception set countable: {}", yes_no(c.exceptions_countable)),
        format!("measurable: {}", yes_no(c.measurable)),
    ];
    for (i, s) in c.spot_checks.iter().enumerate() {
        cert.push(format!(
            "level set {}: {{f {} {}}} measure {} (unmodified {}), certified {}",
            i + 1,
            s.relation,
            annotate(&s.level),
            enclosure_text(&s.measure),
            enclosure_text(&s.unmodified_measure),
            yes_no(s.certified)
        ));
    }
    table.push(vec!["pieces".into(), c.pieces.to_string()]);
    table.push(vec!["breakpoints".into(), c.breakpoints.to_string()]);
    table.push(vec!["exception_set".into(), exceptions]);
    table.push(vec!["measurable".into(), yes_no(c.measurable).into()]);
    Ok(ReportDocument {
        headline: None,
        sections: vec![
            Section { title: "exceptional points".into(), lines },
            Section { title: "measurability".into(), lines: cert },
        ],
        table: Table { header: vec!["key", "value"], rows: table },
    })
}

fn enclosure_rows(name: &str, e: &Enclosure, rows: &mut Vec<Vec<String>>) {
    rows.push(vec![format!("{name}_lo"), e.lo().to_string()]);
    rows.push(vec![format!("{name}_hi"), e.hi().to_string()]);
    rows.push(vec![format!("{name}_converged"), yes_no(e.converged).into()]);
}

pub fn integration(f: &FunctionModel, tol: &Rational, max_depth: u32) -> Built {
    let d = darboux_integrals(f, tol, max_depth)?;
    let l = lebesgue_integral(f, tol)?;
    if d.lower_integral.lo() > d.upper_integral.hi() {
        return Err(ReportError::Invariant("lower integral exceeds upper integral".into()));
    }
    if d.lower_integral.lo() > l.hi() || l.lo() > d.upper_integral.hi() {
        return Err(ReportError::Invariant("Lebesgue value outside the Darboux bounds".into()));
    }
    let lines = vec![
        format!("tolerance: {}", annotate(tol)),
        format!("partition depth: {}", d.partition_depth),
        format!("lower Darboux integral: {}", enclosure_text(&d.lower_integral)),
        format!("upper Darboux integral: {}", enclosure_text(&d.upper_integral)),
        format!("gap: {}", annotate(&d.gap)),
        format!("Lebesgue integral: {}", enclosure_text(&l)),
    ];
    let mut rows = vec![vec!["tolerance".into(), tol.to_string()], vec!["depth".into(), d.partition_depth.to_string()]];
    enclosure_rows("lower_integral", &d.lower_integral, &mut rows);
    enclosure_rows("upper_integral", &d.upper_integral, &mut rows);
    rows.push(vec!["gap".into(), d.gap.to_string()]);
    enclosure_rows("lebesgue", &l, &mut rows);
    Ok(ReportDocument {
        headline: None,
        sections: vec![Section { title: "integrals".into(), lines }],
        table: Table { header: vec!["key", "value"], rows },
    })
}

// Exact-only rendering for the one-line verdict.
fn exact_text(e: &Enclosure) -> String {
    e.to_string()
}

pub fn comparison(f: &FunctionModel, tol: &Rational, max_depth: u32) -> Built {
    let r = compare_report(f, tol, max_depth)?;
    let zero = Rational::from_integer(0.into());
    match r.riemann_integrable {
        Verdict::Yes => {
            let overlaps = r.riemann_value.as_ref().is_some_and(|v| v.overlaps(&r.lebesgue_value));
            if !overlaps {
                return Err(ReportError::Invariant("Riemann and Lebesgue values disagree".into()));
            }
            if r.oscillation_evidence.iter().any(|(_, m)| !m.contains(&zero)) {
                return Err(ReportError::Invariant("integrable but oscillation set has positive measure".into()));
            }
        }
        Verdict::No => {
            if !r.oscillation_evidence.iter().any(|(_, m)| m.lo() > &zero) {
                return Err(ReportError::Invariant("non-integrable without oscillation evidence".into()));
            }
        }
        Verdict::UndecidedAtTolerance => {}
    }
    let riemann = match (&r.riemann_integrable, &r.riemann_value) {
        (Verdict::Yes, Some(v)) => format!("integrable (value={})", exact_text(v)),
        (Verdict::No, _) => format!("NOT integrable (gap={})", r.darboux.gap),
        _ => format!("undecided at tolerance (gap={})", r.darboux.gap),
    };
    let headline = format!("riemann: {riemann}, lebesgue: {}", exact_text(&r.lebesgue_value));
    let agree = r.agree.map_or("not applicable", yes_no);
    let mut lines = vec![
        format!("verdict: {}", r.riemann_integrable),
        format!("tolerance: {}", annotate(tol)),
        format!("partition depth: {}", r.darboux.partition_depth),
        format!("lower Darboux integral: {}", enclosure_text(&r.darboux.lower_integral)),
        format!("upper Darboux integral: {}", enclosure_text(&r.darboux.upper_integral)),
        format!("gap: {}", annotate(&r.darboux.gap)),
    ];
    if let Some(v) = &r.riemann_value {
        lines.push(format!("Riemann integral: {}", enclosure_text(v)));
    }
    lines.push(format!("Lebesgue integral: {}", enclosure_text(&r.lebesgue_value)));
    lines.push(format!("agree: {agree}"));
    let mut evidence = Vec::new();
    let mut rows = vec![
        vec!["verdict".into(), r.riemann_integrable.to_string()],
        vec!["tolerance".into(), tol.to_string()],
        vec!["depth".into(), r.darboux.partition_depth.to_string()],
    ];
    enclosure_rows("lower_integral", &r.darboux.lower_integral, &mut rows);
    enclosure_rows("upper_integral", &r.darboux.upper_integral, &mut rows);
    rows.push(vec!["gap".into(), r.darboux.gap.to_string()]);
    if let Some(v) = &r.riemann_value {
        enclosure_rows("riemann", v, &mut rows);
    }
    enclosure_rows("lebesgue", &r.lebesgue_value, &mut rows);
    rows.push(vec!["agree".into(), r.agree.map_or("", yes_no).into()]);
    for (eps, m) in &r.oscillation_evidence {
        evidence.push(format!("measure{{oscillation >= {}}} = {}", annotate(eps), enclosure_text(m)));
        rows.push(vec![format!("oscillation_measure_lo[{eps}]"), m.lo().to_string()]);
        rows.push(vec![format!("oscillation_measure_hi[{eps}]"), m.hi().to_string()]);
    }
    Ok(ReportDocument {
        headline: Some(headline),
        sections: vec![
            Section { title: "comparison".into(), lines },
            Section { title: "oscillation".into(), lines: evidence },
        ],
        table: Table { header: vec!["key", "value"], rows },
    })
}
