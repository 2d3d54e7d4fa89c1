//! Front end for `qjf`: builds named series and invariant tables from
//! `qjf-core` and renders them as JSON, CSV or text.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use qjf_core::genfun::{self, Surface};
use qjf_core::invariants::{self, RefinedInvariant};
use qjf_core::qseries::{QTSeries, Series, EXACT};
use qjf_core::ring::{Coeff, Rational, TLaurent, ULaurent, VarDisplay};
use qjf_core::verify::{self, Ctx, Suite};
use qjf_core::{forms, par};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] qjf_core::Error),
    #[error("output: {0}")]
    Output(String),
    #[error("{failed} of {total} checks failed")]
    Verification { report: String, failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification { .. } => 1,
            CliError::Config(_) => 2,
            CliError::Core(e) => match e {
                qjf_core::Error::InvalidArgument(_)
                | qjf_core::Error::InsufficientPrecision { .. }
                | qjf_core::Error::OutOfRange { .. } => 2,
                _ => 1,
            },
            CliError::Output(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

macro_rules! named_enum {
    ($name:ident { $($var:ident => $s:literal),* $(,)? }) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq)]
        pub enum $name { $($var),* }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$var),*];
            pub fn as_str(self) -> &'static str {
                match self { $($name::$var => $s),* }
            }
        }

        impl FromStr for $name {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                Self::ALL.iter().copied().find(|v| v.as_str().eq_ignore_ascii_case(s)).ok_or_else(|| {
                    let names: Vec<_> = Self::ALL.iter().map(|v| v.as_str()).collect();
                    format!("unknown value {s:?}; expected one of {}", names.join(", "))
                })
            }
        }
    };
}

named_enum!(SeriesName {
    A => "A",
    K => "K",
    H => "H",
    X => "X",
    Theta => "theta",
    G2 => "G2",
    Delta => "Delta",
    Phi101 => "phi101",
    TildeDelta => "tildeDelta",
    TildeDg2 => "tildeDG2",
});

named_enum!(Format {
    Json => "json",
    Csv => "csv",
    Text => "text",
});

named_enum!(SurfaceArg {
    Abelian => "abelian",
    K3 => "k3",
});

impl From<SurfaceArg> for Surface {
    fn from(s: SurfaceArg) -> Surface {
        match s {
            SurfaceArg::Abelian => Surface::Abelian,
            SurfaceArg::K3 => Surface::K3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YSpec {
    Formal,
    One,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Series { name: SeriesName },
    Table { surface: SurfaceArg, k: u32, gmax: i64 },
    Ninv { surface: SurfaceArg, g: i64, k: u32 },
    Verify { suites: Vec<Suite>, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub order: i64,
    pub t_order: i64,
    pub y: YSpec,
    pub format: Format,
    pub parallel: bool,
}

pub const DEFAULT_ORDER: i64 = 10;
pub const DEFAULT_T_ORDER: i64 = 24;

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            order: DEFAULT_ORDER,
            t_order: DEFAULT_T_ORDER,
            y: YSpec::Formal,
            format: Format::Text,
            parallel: true,
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.order < 1 {
            return bad(format!("order must be at least 1, got {}", self.order));
        }
        if self.t_order < 0 {
            return bad(format!("t-order must be nonnegative, got {}", self.t_order));
        }
        match &self.command {
            Command::Table { surface, gmax: g, .. } | Command::Ninv { surface, g, .. } => {
                if *g < 0 {
                    return bad(format!("genus must be nonnegative, got {g}"));
                }
                if *surface == SurfaceArg::K3 && self.t_order < 2 * g + 4 {
                    return bad(format!("K3 polynomiality needs t-order >= 2g+4 = {}, got {}", 2 * g + 4, self.t_order));
                }
            }
            Command::Series { .. } | Command::Verify { .. } => {}
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub q: i64,
    pub t: i64,
    pub u: i64,
    pub c: String,
}

/// Exact sparse form of a series in `q`, `t`, `u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerializedSeries {
    pub variable_order: Vec<String>,
    pub terms: Vec<Term>,
}

/// Coefficient types that flatten to `(t, u, c)` monomials.
pub trait Flatten {
    fn flatten(&self, out: &mut Vec<(i64, i64, Rational)>);
}

impl Flatten for Rational {
    fn flatten(&self, out: &mut Vec<(i64, i64, Rational)>) {
        out.push((0, 0, self.clone()));
    }
}

impl Flatten for ULaurent {
    fn flatten(&self, out: &mut Vec<(i64, i64, Rational)>) {
        out.extend(self.terms().map(|(u, c)| (0, u, c.clone())));
    }
}

impl Flatten for TLaurent {
    fn flatten(&self, out: &mut Vec<(i64, i64, Rational)>) {
        for (t, p) in self.terms() {
            out.extend(p.terms().map(|(u, c)| (t, u, c.clone())));
        }
    }
}

/// `t`-series coefficients: only the known part is emitted.
impl Flatten for Series<ULaurent> {
    fn flatten(&self, out: &mut Vec<(i64, i64, Rational)>) {
        for (t, p) in self.terms() {
            out.extend(p.terms().map(|(u, c)| (t, u, c.clone())));
        }
    }
}

fn rat(s: &str) -> CliResult<Rational> {
    s.parse().map_err(|e| CliError::Output(format!("bad coefficient {s:?}: {e}")))
}

impl SerializedSeries {
    fn from_monomials(mons: impl IntoIterator<Item = ((i64, i64, i64), Rational)>, y: YSpec) -> Self {
        let mut acc: BTreeMap<(i64, i64, i64), Rational> = BTreeMap::new();
        for ((q, t, u), c) in mons {
            let u = if y == YSpec::One { 0 } else { u };
            acc.entry((q, t, u)).or_insert_with(Rational::zero).add_assign(&c);
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((q, t, u), c)| Term { q, t, u, c: c.to_fraction_string() })
            .collect();
        SerializedSeries { variable_order: vec!["q".into(), "t".into(), "u".into()], terms }
    }

    /// Known coefficients of `s`, with `u -> 1` applied afterwards for `YSpec::One`.
    pub fn from_series<C: Coeff + Flatten>(s: &Series<C>, y: YSpec) -> Self {
        let mut mons = Vec::new();
        let mut buf = Vec::new();
        for (q, c) in s.terms() {
            buf.clear();
            c.flatten(&mut buf);
            mons.extend(buf.drain(..).map(|(t, u, c)| ((q, t, u), c)));
        }
        Self::from_monomials(mons, y)
    }

    /// Rebuilds the series with `TLaurent` coefficients, known below `q^prec`.
    pub fn to_qt_series(&self, prec: i64) -> CliResult<QTSeries> {
        let mut by_q: BTreeMap<i64, Vec<(i64, i64, Rational)>> = BTreeMap::new();
        for term in &self.terms {
            by_q.entry(term.q).or_default().push((term.t, term.u, rat(&term.c)?));
        }
        let coeffs = by_q.into_iter().map(|(q, mons)| {
            let mut by_t: BTreeMap<i64, Vec<(i64, Rational)>> = BTreeMap::new();
            for (t, u, c) in mons {
                by_t.entry(t).or_default().push((u, c));
            }
            (q, TLaurent::from_terms(by_t.into_iter().map(|(t, us)| (t, ULaurent::from_terms(us)))))
        });
        Ok(Series::from_terms(coeffs, prec))
    }

    pub fn to_json(&self) -> CliResult<String> {
        serde_json::to_string_pretty(self).map_err(|e| CliError::Output(e.to_string()))
    }

    pub fn from_json(s: &str) -> CliResult<Self> {
        let parsed: Self = serde_json::from_str(s).map_err(|e| CliError::Output(e.to_string()))?;
        parsed.check()?;
        Ok(parsed)
    }

    /// Sorted, nonzero and well-formed coefficients.
    pub fn check(&self) -> CliResult<()> {
        if self.variable_order != ["q", "t", "u"] {
            return Err(CliError::Output(format!("unexpected variable order {:?}", self.variable_order)));
        }
        for w in self.terms.windows(2) {
            if (w[0].q, w[0].t, w[0].u) >= (w[1].q, w[1].t, w[1].u) {
                return Err(CliError::Output(format!("terms out of order at q^{} t^{} u^{}", w[1].q, w[1].t, w[1].u)));
            }
        }
        for t in &self.terms {
            if rat(&t.c)?.is_zero() {
                return Err(CliError::Output(format!("zero coefficient at q^{} t^{} u^{}", t.q, t.t, t.u)));
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> CliResult<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for t in &self.terms {
            w.serialize(t).map_err(|e| CliError::Output(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
    }

    /// One line per power of `q`, coefficient as a polynomial in `t` and `u`.
    pub fn to_text(&self) -> CliResult<String> {
        let s = self.to_qt_series(EXACT)?;
        let mut out = String::new();
        for (q, c) in s.terms() {
            let _ = writeln!(out, "q^{q}: {}", c.render(&["t", "u"]));
        }
        Ok(out)
    }
}

/// Computes a named series to `q^order`; `t_order` bounds the `t`-expansion of `K`.
pub fn compute_series(name: SeriesName, order: i64, t_order: i64, y: YSpec) -> CliResult<SerializedSeries> {
    use SerializedSeries as S;
    Ok(match name {
        SeriesName::A => S::from_series(&*genfun::series_a(order)?, y),
        SeriesName::K => S::from_series(&*genfun::series_k(order, t_order)?, y),
        SeriesName::H => S::from_series(&genfun::series_h(order)?, y),
        SeriesName::X => S::from_series(&genfun::series_x(order)?, y),
        SeriesName::Theta => S::from_series(&forms::theta_hat(order), y),
        SeriesName::G2 => S::from_series(&forms::eisenstein_g2(order), y),
        SeriesName::Delta => S::from_series(&forms::discriminant(order), y),
        SeriesName::Phi101 => S::from_series(&forms::phi_10_1(order), y),
        SeriesName::TildeDelta => S::from_series(&forms::tilde_delta(order), y),
        SeriesName::TildeDg2 => S::from_series(&forms::tilde_dg2(order), y),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantRow {
    pub surface: &'static str,
    pub g: i64,
    pub k: u32,
    pub delta: i64,
    pub i: i64,
    /// Monomials in `u = y^{1/2}`.
    pub value: Vec<UTerm>,
    pub at_y1: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UTerm {
    pub u: i64,
    pub c: String,
}

impl InvariantRow {
    fn new(r: &RefinedInvariant, k: u32) -> Self {
        InvariantRow {
            surface: match r.surface {
                Surface::Abelian => "abelian",
                Surface::K3 => "k3",
            },
            g: r.g,
            k,
            delta: r.delta,
            i: r.i,
            value: r.value.terms().map(|(u, c)| UTerm { u, c: c.to_fraction_string() }).collect(),
            at_y1: r.value.at_one().to_fraction_string(),
        }
    }
}

pub fn compute_table(surface: SurfaceArg, k: u32, gmin: i64, gmax: i64, window: i64) -> CliResult<Vec<(InvariantRow, ULaurent)>> {
    let rows = invariants::ninv_table(surface.into(), k, gmax, window)?;
    Ok(rows
        .iter()
        .filter(|r| r.g >= gmin)
        .map(|r| (InvariantRow::new(r, k), r.value.clone()))
        .collect())
}

pub fn render_table(rows: &[(InvariantRow, ULaurent)], format: Format, y: YSpec) -> CliResult<String> {
    match format {
        Format::Json => {
            let plain: Vec<&InvariantRow> = rows.iter().map(|(r, _)| r).collect();
            serde_json::to_string_pretty(&plain).map_err(|e| CliError::Output(e.to_string()))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let out = |e: csv::Error| CliError::Output(e.to_string());
            w.write_record(["surface", "g", "k", "delta", "i", "u", "c"]).map_err(out)?;
            for (r, v) in rows {
                let terms: Vec<(i64, Rational)> = match y {
                    YSpec::Formal => v.terms().map(|(u, c)| (u, c.clone())).collect(),
                    YSpec::One => vec![(0, v.at_one())],
                };
                for (u, c) in terms {
                    let rec = [
                        r.surface.to_string(),
                        r.g.to_string(),
                        r.k.to_string(),
                        r.delta.to_string(),
                        r.i.to_string(),
                        u.to_string(),
                        c.to_fraction_string(),
                    ];
                    w.write_record(&rec).map_err(out)?;
                }
            }
            let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
        }
        Format::Text => {
            let mut s = String::new();
            for (r, v) in rows {
                let shown = match y {
                    YSpec::Formal => v.to_string(),
                    YSpec::One => v.at_one().to_string(),
                };
                let _ = writeln!(s, "g={} delta={} N^{} = {shown}", r.g, r.delta, r.i);
            }
            Ok(s)
        }
    }
}

/// Runs the command; returns what should go to stdout.
pub fn run(config: &RunConfig) -> CliResult<String> {
    config.validate()?;
    par::set_parallel(config.parallel);
    match &config.command {
        Command::Series { name } => {
            let s = compute_series(*name, config.order, config.t_order, config.y)?;
            match config.format {
                Format::Json => s.to_json().map(|j| j + "\n"),
                Format::Csv => s.to_csv(),
                Format::Text => s.to_text(),
            }
        }
        Command::Table { surface, k, gmax } => {
            let rows = compute_table(*surface, *k, 0, *gmax, config.t_order)?;
            render_table(&rows, config.format, config.y)
        }
        Command::Ninv { surface, g, k } => {
            let rows = compute_table(*surface, *k, *g, *g, config.t_order)?;
            render_table(&rows, config.format, config.y)
        }
        Command::Verify { suites, seed } => {
            let outcomes = verify::run(suites, Ctx { order: config.order, seed: *seed });
            let mut s = String::new();
            for o in &outcomes {
                let _ = writeln!(s, "{o}");
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            let _ = writeln!(s, "{} passed, {failed} failed", outcomes.len() - failed);
            if failed > 0 {
                return Err(CliError::Verification { report: s, failed, total: outcomes.len() });
            }
            Ok(s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_first_coefficient_is_x() {
        let s = compute_series(SeriesName::A, 2, 0, YSpec::Formal).unwrap();
        let q1: Vec<_> = s.terms.iter().filter(|t| t.q == 1).collect();
        assert!(q1.contains(&&Term { q: 1, t: 1, u: 0, c: "1/1".into() }));
        assert!(q1.contains(&&Term { q: 1, t: 0, u: 1, c: "-1/1".into() }));
        s.check().unwrap();
    }

    #[test]
    fn y1_collapses_u() {
        let s = compute_series(SeriesName::A, 2, 0, YSpec::One).unwrap();
        assert!(s.terms.iter().all(|t| t.u == 0));
        // x at y = 1 is t - 2 + 1/t
        let q1: Vec<_> = s.terms.iter().filter(|t| t.q == 1).map(|t| (t.t, t.c.as_str())).collect();
        assert_eq!(q1, vec![(-1, "1/1"), (0, "-2/1"), (1, "1/1")]);
    }

    #[test]
    fn ninv_abelian_genus_two() {
        let rows = compute_table(SurfaceArg::Abelian, 0, 2, 2, 24).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].0.i, 0);
        assert!(rows[0].1.is_one());
    }

    #[test]
    fn k3_window_is_validated() {
        let mut cfg = RunConfig::new(Command::Ninv { surface: SurfaceArg::K3, g: 12, k: 0 });
        cfg.t_order = 20;
        assert_eq!(run(&cfg).unwrap_err().exit_code(), 2);
        cfg.order = 0;
        assert_eq!(run(&cfg).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn names_parse_case_insensitively() {
        assert_eq!("tildedelta".parse::<SeriesName>().unwrap(), SeriesName::TildeDelta);
        assert!("nope".parse::<SeriesName>().is_err());
        for n in SeriesName::ALL {
            assert_eq!(n.as_str().parse::<SeriesName>().unwrap(), *n);
        }
    }

    #[test]
    fn csv_has_header_and_rows() {
        let s = compute_series(SeriesName::Delta, 3, 0, YSpec::Formal).unwrap();
        let csv = s.to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("q,t,u,c"));
        assert_eq!(lines.next(), Some("1,0,0,1/1"));
        assert_eq!(lines.next(), Some("2,0,0,-24/1"));
    }
}
