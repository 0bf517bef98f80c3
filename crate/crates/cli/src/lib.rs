//! Commands behind the `supertrace` binary. Every command returns a typed
//! output that renders either as JSON (see `docs/report-schema.md`) or as a
//! plain-text table, together with its exit status.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use supertrace::exactnum::{fmt_rational, parse_rational, Rational};
use supertrace::invtensor::{
    default_probe_weights, verify_tensor_properties, AdjointData, DimensionRow, GramTable, ProbeSet,
};
use supertrace::mtrace::{verify_trace_properties, TraceRoster};
use supertrace::report::CheckRecord;
use supertrace::repmod::{fmt_weight, ModuleCache};
use supertrace::rootdata::{build_root_system, Family, Root, RootSystem, Weight};
use supertrace::structural::{module_checks, verify_structural_properties};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_CHECK_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Environment variable naming the module cache directory.
pub const CACHE_ENV: &str = "SUPERTRACE_CACHE";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

/// Algebra selected on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub family: Family,
    pub m: usize,
    pub n: usize,
}

impl AlgebraSpec {
    /// `sl m n` or `osp2 n` as positional arguments.
    pub fn from_args(family: &str, dims: &[usize]) -> Result<Self, CliError> {
        let family: Family = family.parse().map_err(|e: supertrace::rootdata::RootError| CliError::Usage(e.to_string()))?;
        match (family, dims) {
            (Family::Sl, [m, n]) => Ok(AlgebraSpec { family, m: *m, n: *n }),
            (Family::Osp2, [n]) => Ok(AlgebraSpec { family, m: 2, n: *n }),
            (Family::Sl, _) => Err(CliError::Usage("sl takes two ranks: sl M N".into())),
            (Family::Osp2, _) => Err(CliError::Usage("osp2 takes one rank: osp2 N for osp(2|2N)".into())),
        }
    }

    /// Compact names: `sl21`, `sl(3|1)`, `sl3|1`, `osp22`, `osp(2|4)`.
    pub fn parse_compact(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::Usage(format!("cannot read algebra {s:?}; use e.g. sl21, sl(3|1) or osp(2|4)"));
        let t: String = s.chars().filter(|c| !matches!(c, '(' | ')' | ' ')).collect::<String>().to_ascii_lowercase();
        let nums = |rest: &str| -> Option<(usize, usize)> {
            if let Some((a, b)) = rest.split_once(['|', ',']) {
                Some((a.parse().ok()?, b.parse().ok()?))
            } else if rest.len() == 2 && rest.chars().all(|c| c.is_ascii_digit()) {
                Some((rest[..1].parse().ok()?, rest[1..].parse().ok()?))
            } else {
                None
            }
        };
        if let Some(rest) = t.strip_prefix("osp") {
            let (two, n2) = nums(rest).ok_or_else(bad)?;
            if two != 2 || n2 % 2 != 0 || n2 == 0 {
                return Err(bad());
            }
            return Ok(AlgebraSpec { family: Family::Osp2, m: 2, n: n2 / 2 });
        }
        let rest = t.strip_prefix("sl").ok_or_else(bad)?;
        let (m, n) = nums(rest).ok_or_else(bad)?;
        Ok(AlgebraSpec { family: Family::Sl, m, n })
    }

    pub fn build(&self) -> Result<RootSystem, CliError> {
        build_root_system(self.family, self.m, self.n).map_err(|e| CliError::Usage(e.to_string()))
    }
}

pub fn parse_weight(rs: &RootSystem, s: &str) -> Result<Weight, CliError> {
    let w = Weight::parse(s).map_err(|e| CliError::Usage(format!("weight {s:?}: {e}")))?;
    if w.rank() != rs.rank() {
        return Err(CliError::Usage(format!("weight {s:?} has {} coordinates, {} has rank {}", w.rank(), rs.name(), rs.rank())));
    }
    Ok(w)
}

pub fn parse_rational_arg(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::Usage(format!("{s:?}: {e}")))
}

fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

/// Anything the CLI prints.
pub trait Render: Serialize {
    fn table(&self) -> String;

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("output serializes"),
            Format::Table => self.table(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootOut {
    pub coeffs: Vec<i64>,
    pub label: String,
}

impl RootOut {
    fn new(r: &Root) -> Self {
        RootOut { coeffs: r.coeffs.clone(), label: r.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDataOutput {
    pub algebra: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// One-based index of the odd simple root.
    pub odd_index: usize,
    pub symmetrizer: Vec<i64>,
    pub even_positive_roots: Vec<RootOut>,
    pub odd_positive_roots: Vec<RootOut>,
    pub rho0: Vec<String>,
    pub rho1: Vec<String>,
    pub rho: Vec<String>,
}

pub fn cmd_root_data(spec: &AlgebraSpec) -> Result<RootDataOutput, CliError> {
    let rs = spec.build()?;
    Ok(RootDataOutput {
        algebra: rs.name(),
        rank: rs.rank(),
        cartan: rs.cartan.a.clone(),
        odd_index: rs.s() + 1,
        symmetrizer: rs.cartan.d.clone(),
        even_positive_roots: rs.pos_even.iter().map(RootOut::new).collect(),
        odd_positive_roots: rs.pos_odd.iter().map(RootOut::new).collect(),
        rho0: rationals(&rs.rho0),
        rho1: rationals(&rs.rho1),
        rho: rationals(&rs.rho),
    })
}

impl Render for RootDataOutput {
    fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "algebra      {}", self.algebra);
        let _ = writeln!(s, "rank         {}", self.rank);
        let _ = writeln!(s, "odd index    {}", self.odd_index);
        let _ = writeln!(s, "symmetrizer  {:?}", self.symmetrizer);
        let _ = writeln!(s, "cartan");
        for row in &self.cartan {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            let _ = writeln!(s, "  {}", cells.join(" "));
        }
        let label = |r: &[RootOut]| r.iter().map(|x| x.label.clone()).collect::<Vec<_>>().join(", ");
        let _ = writeln!(s, "even positive roots ({}): {}", self.even_positive_roots.len(), label(&self.even_positive_roots));
        let _ = writeln!(s, "odd positive roots ({}): {}", self.odd_positive_roots.len(), label(&self.odd_positive_roots));
        let _ = writeln!(s, "rho0 (root coordinates)  [{}]", self.rho0.join(", "));
        let _ = writeln!(s, "rho1 (root coordinates)  [{}]", self.rho1.join(", "));
        let _ = write!(s, "rho  (root coordinates)  [{}]", self.rho.join(", "));
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRow {
    pub weight: String,
    pub typical: bool,
    pub mod_sdim: Option<String>,
    /// Coefficients of `h^0, h^1, …` for the quantum version.
    pub series: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimOutput {
    pub algebra: String,
    pub order: Option<usize>,
    pub rows: Vec<DimRow>,
}

/// `d(λ)` for each weight, and the `h`-series to `order` when given. Atypical rows are marked.
pub fn cmd_dims(spec: &AlgebraSpec, weights: &[String], order: Option<usize>) -> Result<DimOutput, CliError> {
    let rs = spec.build()?;
    let parsed = weights.iter().map(|w| parse_weight(&rs, w)).collect::<Result<Vec<_>, _>>()?;
    let rows = supertrace::par::map_slice(&parsed, Default::default(), |w| {
        let typical = rs.is_typical(w).unwrap_or(false);
        let mod_sdim = typical.then(|| rs.mod_sdim(w).ok()).flatten().map(|d| fmt_rational(&d));
        let series = match order {
            Some(k) if typical => rs.qmod_sdim(w, k).ok().map(|q| rationals(q.coeffs())),
            _ => None,
        };
        DimRow { weight: fmt_weight(&rs, w), typical, mod_sdim, series }
    });
    Ok(DimOutput { algebra: rs.name(), order, rows })
}

impl Render for DimOutput {
    fn table(&self) -> String {
        let mut s = format!("{}\n{:<16} {:<9} value\n", self.algebra, "weight", "typical");
        for r in &self.rows {
            let value = match (&r.series, &r.mod_sdim) {
                _ if !r.typical => "atypical".to_string(),
                (Some(c), _) => format!("[{}]", c.join(", ")),
                (None, Some(d)) => d.clone(),
                (None, None) => "-".into(),
            };
            let _ = writeln!(s, "{:<16} {:<9} {value}", r.weight, if r.typical { "yes" } else { "no" });
        }
        s.trim_end().to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub a_s: String,
    pub typical: bool,
    pub mod_sdim: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanOutput {
    pub algebra: String,
    /// The `a_i` with `i != s`, in order.
    pub fixed: Vec<String>,
    pub from: String,
    pub to: String,
    pub step: String,
    pub rows: Vec<ScanRow>,
    pub atypical: Vec<String>,
    pub atypical_all_integers: bool,
}

impl ScanOutput {
    pub fn exit_code(&self) -> u8 {
        if self.atypical_all_integers {
            EXIT_PASS
        } else {
            EXIT_CHECK_FAILURE
        }
    }
}

/// Scans `a_s` over `from, from+step, …, ≤ to` with the other coordinates fixed.
pub fn cmd_scan_typical(spec: &AlgebraSpec, fixed: &str, from: &str, to: &str, step: &str) -> Result<ScanOutput, CliError> {
    let rs = spec.build()?;
    let fixed_vals: Vec<Rational> = if fixed.trim().is_empty() {
        Vec::new()
    } else {
        fixed.split(',').map(parse_rational_arg).collect::<Result<_, _>>()?
    };
    if fixed_vals.len() + 1 != rs.rank() {
        return Err(CliError::Usage(format!("--fixed needs {} values for {}", rs.rank() - 1, rs.name())));
    }
    let (lo, hi, dx) = (parse_rational_arg(from)?, parse_rational_arg(to)?, parse_rational_arg(step)?);
    if dx <= Rational::from_integer(0.into()) || lo > hi {
        return Err(CliError::Usage("scan needs from ≤ to and a positive step".into()));
    }
    let mut grid = Vec::new();
    let mut a = lo.clone();
    while a <= hi {
        grid.push(a.clone());
        a += &dx;
    }
    let s = rs.s();
    let rows = supertrace::par::map_slice(&grid, Default::default(), |a| {
        let mut coords = fixed_vals.clone();
        coords.insert(s, a.clone());
        let w = Weight::new(coords);
        let typical = rs.is_typical(&w).unwrap_or(false);
        let mod_sdim = typical.then(|| rs.mod_sdim(&w).ok()).flatten().map(|d| fmt_rational(&d));
        ScanRow { a_s: fmt_rational(a), typical, mod_sdim }
    });
    let atypical: Vec<Rational> = grid.iter().zip(&rows).filter(|(_, r)| !r.typical).map(|(a, _)| a.clone()).collect();
    Ok(ScanOutput {
        algebra: rs.name(),
        fixed: rationals(&fixed_vals),
        from: fmt_rational(&lo),
        to: fmt_rational(&hi),
        step: fmt_rational(&dx),
        atypical_all_integers: atypical.iter().all(|a| a.is_integer()),
        atypical: rationals(&atypical),
        rows,
    })
}

impl Render for ScanOutput {
    fn table(&self) -> String {
        let mut s = format!("{} with fixed [{}], a_s from {} to {} step {}\n", self.algebra, self.fixed.join(", "), self.from, self.to, self.step);
        let _ = writeln!(s, "{:<8} {:<9} d", "a_s", "typical");
        for r in &self.rows {
            let d = r.mod_sdim.as_deref().unwrap_or("atypical");
            let _ = writeln!(s, "{:<8} {:<9} {d}", r.a_s, if r.typical { "yes" } else { "no" });
        }
        let _ = write!(
            s,
            "atypical set {{{}}}, {}",
            self.atypical.join(", "),
            if self.atypical_all_integers { "all integers" } else { "NOT all integers" }
        );
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Superlin,
    Trace,
    Tensors,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Superlin => "superlin",
            Suite::Trace => "trace",
            Suite::Tensors => "tensors",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheStatus {
    pub path: String,
    pub records: Option<usize>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub algebra: String,
    pub suite: String,
    pub passed: bool,
    pub total: usize,
    pub failed: usize,
    pub cache: Option<CacheStatus>,
    pub notes: Vec<String>,
    pub tensor_dimensions: Vec<DimensionRow>,
    pub grams: Vec<GramTable>,
    pub checks: Vec<CheckRecord>,
}

impl VerifyOutput {
    pub fn exit_code(&self) -> u8 {
        if self.passed {
            EXIT_PASS
        } else {
            EXIT_CHECK_FAILURE
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub algebra: AlgebraSpec,
    pub suite: Suite,
    pub max_degree: Option<usize>,
    pub degree_cap: Option<usize>,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
}

pub fn cmd_verify(cfg: &VerifyConfig) -> Result<VerifyOutput, CliError> {
    let rs = cfg.algebra.build()?;
    if rs.family != Family::Sl {
        return Err(CliError::Usage(format!("verify supports sl(m|n) only, got {}", rs.name())));
    }
    let adj = if cfg.suite.includes(Suite::Tensors) {
        Some(AdjointData::new(&rs).map_err(|e| CliError::Usage(e.to_string()))?)
    } else {
        None
    };
    let cap = cfg.degree_cap.or_else(|| adj.as_ref().map(|a| a.default_cap())).unwrap_or(1);
    let max_degree = cfg.max_degree.unwrap_or(cap);
    if adj.is_some() && max_degree > cap {
        return Err(CliError::Usage(format!("--max-degree {max_degree} exceeds the degree cap {cap} for {}; raise --degree-cap to force", rs.name())));
    }

    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let mut cache_status = None;
    let cache = cfg.cache_dir.as_ref().map(ModuleCache::new);
    let usable = match &cache {
        Some(c) => {
            let path = c.path().display().to_string();
            match c.validate() {
                Ok(n) => {
                    checks.push(CheckRecord::predicate("cache", "module cache is intact", path.clone(), true));
                    cache_status = Some(CacheStatus { path, records: Some(n), error: None });
                    Some(c)
                }
                Err(e) => {
                    checks.push(CheckRecord::error("cache", "module cache is intact", path.clone(), &e));
                    notes.push("the module cache failed validation and was bypassed".into());
                    cache_status = Some(CacheStatus { path, records: None, error: Some(e.to_string()) });
                    None
                }
            }
        }
        None => None,
    };

    if cfg.suite.includes(Suite::Superlin) || cfg.suite.includes(Suite::Trace) {
        match TraceRoster::build(&rs, usable) {
            Ok(roster) => {
                if cfg.suite.includes(Suite::Superlin) {
                    checks.extend(verify_structural_properties(&roster, cfg.seed));
                }
                if cfg.suite.includes(Suite::Trace) {
                    checks.extend(verify_trace_properties(&roster, cfg.seed, 10));
                }
            }
            Err(e) => checks.push(CheckRecord::error("trace", "roster construction", rs.name(), e)),
        }
    }
    let mut tensor_dimensions = Vec::new();
    let mut grams = Vec::new();
    if let Some(adj) = &adj {
        checks.extend(module_checks(adj.module(), None));
        match ProbeSet::build(&rs, &default_probe_weights(&rs), usable) {
            Ok(probes) => match verify_tensor_properties(adj, &probes, max_degree, cfg.seed) {
                Ok(r) => {
                    checks.extend(r.checks);
                    notes.extend(r.notes);
                    tensor_dimensions = r.dimensions;
                    grams = r.grams;
                }
                Err(e) => checks.push(CheckRecord::error("tensors", "tensor suite", rs.name(), e)),
            },
            Err(e) => checks.push(CheckRecord::error("tensors", "probe construction", rs.name(), e)),
        }
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    Ok(VerifyOutput {
        algebra: rs.name(),
        suite: cfg.suite.name().into(),
        passed: failed == 0 && !checks.is_empty(),
        total: checks.len(),
        failed,
        cache: cache_status,
        notes,
        tensor_dimensions,
        grams,
        checks,
    })
}

impl Render for VerifyOutput {
    fn table(&self) -> String {
        let mut s = format!("{} suite {}\n", self.algebra, self.suite);
        let mut suites: Vec<&str> = Vec::new();
        for c in &self.checks {
            if !suites.contains(&c.suite.as_str()) {
                suites.push(&c.suite);
            }
        }
        for name in suites {
            let all: Vec<&CheckRecord> = self.checks.iter().filter(|c| c.suite == name).collect();
            let ok = all.iter().filter(|c| c.passed).count();
            let _ = writeln!(s, "  {name:<10} {ok}/{} passed", all.len());
        }
        for c in self.checks.iter().filter(|c| !c.passed) {
            let _ = writeln!(s, "  FAIL [{}] {} ({}): expected {}, got {}", c.suite, c.name, c.inputs, c.expected, c.actual);
        }
        if !self.tensor_dimensions.is_empty() {
            let _ = writeln!(s, "degree  invariants  IT (joint)  IT by probe");
            for d in &self.tensor_dimensions {
                let probes: Vec<String> = d.it_by_probe.iter().map(|(p, k)| format!("{p}: {k}")).collect();
                let _ = writeln!(s, "{:<7} {:<11} {:<11} {}", d.degree, d.invariants, d.it_joint, probes.join(", "));
            }
        }
        for g in &self.grams {
            let rows: Vec<String> = g.matrix.iter().map(|r| format!("[{}]", r.join(", "))).collect();
            let _ = writeln!(s, "{} (degree {}): [{}]", g.label, g.degree, rows.join(", "));
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        let _ = write!(s, "{} {} of {} checks passed", if self.passed { "PASS" } else { "FAIL" }, self.total - self.failed, self.total);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_algebra_names() {
        assert_eq!(AlgebraSpec::parse_compact("sl21").unwrap(), AlgebraSpec { family: Family::Sl, m: 2, n: 1 });
        assert_eq!(AlgebraSpec::parse_compact("sl(3|1)").unwrap(), AlgebraSpec { family: Family::Sl, m: 3, n: 1 });
        assert_eq!(AlgebraSpec::parse_compact("osp(2|4)").unwrap(), AlgebraSpec { family: Family::Osp2, m: 2, n: 2 });
        assert!(AlgebraSpec::parse_compact("gl21").is_err());
        assert!(AlgebraSpec::parse_compact("osp23").is_err());
    }

    #[test]
    fn positional_algebra_args() {
        assert!(AlgebraSpec::from_args("sl", &[2, 1]).is_ok());
        assert!(AlgebraSpec::from_args("sl", &[2]).is_err());
        assert!(AlgebraSpec::from_args("sl", &[2, 2]).unwrap().build().is_err());
        assert_eq!(AlgebraSpec::from_args("osp2", &[3]).unwrap().build().unwrap().name(), "osp(2|6)");
    }

    #[test]
    fn scan_marks_atypical_points() {
        let spec = AlgebraSpec::from_args("sl", &[2, 1]).unwrap();
        let out = cmd_scan_typical(&spec, "1", "-3", "3", "1/2").unwrap();
        assert_eq!(out.atypical, vec!["-2", "0"]);
        assert_eq!(out.exit_code(), EXIT_PASS);
    }
}
