//! Experiment runner behind the `sfdd` binary.
//!
//! Every command reads a [`Settings`] map (config file values overridden by
//! flags) and produces a [`CsvTable`] whose `#` header echoes the resolved
//! configuration, so the output can be regenerated bit for bit.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use schwarz_fourier::dtd::{
    dtd_exact_profile, dtd_projection_profile, interp_bound_profile, interp_contraction_bound,
    snapped_plateau, DtDProfile,
};
use schwarz_fourier::fourier::arc_fn;
use schwarz_fourier::geometry::{
    contraction_symmetric, contraction_unequal, discs_from_angles, discs_from_center_radius,
    nearest_even, snap_pair, theta2_for_radius, DiscPair, GridConfig, SnappedScenario,
};
use schwarz_fourier::kernels::{
    epsilon_bound, epsilon_quadrature, positivity_radius_numeric, positivity_radius_theory,
};
use schwarz_fourier::schwarz::{
    manufactured, observed_rate, ManufacturedKind, Mode, SchwarzConfig, SchwarzSolver, Variant,
    DEFAULT_LOG_SOURCE, DEFAULT_TRACE_SAMPLES,
};
use schwarz_fourier::verify::{self, Fault, Suite};
use schwarz_fourier::Error;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NONCONVERGED: i32 = 3;

/// Default order list of the ε table.
pub const EPSILON_ORDERS: [usize; 7] = [5, 10, 20, 30, 40, 60, 80];
/// Default Γ2 sample count of profiles.
pub const PROFILE_SAMPLES: usize = 401;

/// Failure of a command, carrying its exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Config(String),
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => EXIT_CONFIG,
            Self::Numeric(_) => EXIT_VERIFY,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Config(m) => write!(f, "configuration error: {m}"),
            Self::Numeric(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Infeasible(_) | Error::Assumption(_) | Error::InvalidInput(_) => {
                Self::Config(e.to_string())
            }
            Error::Quadrature(_) | Error::Resolution(_) | Error::InsufficientData(_) => {
                Self::Numeric(e.to_string())
            }
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Resolved key/value configuration. Keys are the long flag names without
/// the leading dashes.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    map: BTreeMap<String, String>,
}

pub const KNOWN_KEYS: [&str; 20] = [
    "m", "R", "theta1", "theta2", "N", "n1", "n2", "n2-factor", "variant", "mode", "samples",
    "grid-only", "tol", "max-sweeps", "out", "seed", "data", "suite", "theta1-count", "fault",
];

impl Settings {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses a flat `key = value` file; `#` starts a comment line.
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut s = Self::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| config_err(format!("line {}: expected key = value", lineno + 1)))?;
            s.set(k.trim().trim_start_matches("--"), v.trim())?;
        }
        Ok(s)
    }

    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| config_err(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) -> CliResult<()> {
        if !KNOWN_KEYS.contains(&key) {
            return Err(config_err(format!("unknown key '{key}'")));
        }
        self.map.insert(key.to_string(), value.into());
        Ok(())
    }

    /// Values of `other` replace ours.
    pub fn merge(&mut self, other: &Settings) {
        for (k, v) in &other.map {
            self.map.insert(k.clone(), v.clone());
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }

    pub fn has(&self, key: &str) -> bool {
        self.map.contains_key(key)
    }

    fn parsed<T: std::str::FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        self.get(key)
            .map(|v| v.parse::<T>().map_err(|_| config_err(format!("cannot parse {key} = '{v}'"))))
            .transpose()
    }

    pub fn f64(&self, key: &str) -> CliResult<Option<f64>> {
        self.parsed(key)
    }

    pub fn usize(&self, key: &str) -> CliResult<Option<usize>> {
        self.parsed(key)
    }

    pub fn flag(&self, key: &str) -> CliResult<bool> {
        match self.get(key) {
            None => Ok(false),
            Some("true" | "1" | "yes") => Ok(true),
            Some("false" | "0" | "no") => Ok(false),
            Some(v) => Err(config_err(format!("cannot parse {key} = '{v}' as a boolean"))),
        }
    }

    /// Comma-separated list; `a-b` expands to the inclusive range.
    pub fn usize_list(&self, key: &str) -> CliResult<Option<Vec<usize>>> {
        let Some(v) = self.get(key) else {
            return Ok(None);
        };
        let mut out = Vec::new();
        for part in v.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let bad = || config_err(format!("cannot parse {key} entry '{part}'"));
            if let Some((a, b)) = part.split_once('-') {
                let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            } else {
                out.push(part.parse().map_err(|_| bad())?);
            }
        }
        if out.is_empty() {
            return Err(config_err(format!("{key} is empty")));
        }
        Ok(Some(out))
    }

    /// `# config: k=v ...` line, excluding the output path.
    pub fn echo(&self) -> String {
        let body: Vec<String> = self
            .map
            .iter()
            .filter(|(k, _)| k.as_str() != "out")
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        if body.is_empty() {
            "(defaults)".into()
        } else {
            body.join(" ")
        }
    }
}

/// A CSV table with `#` provenance lines.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CsvTable {
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// Formats a float with 9 significant digits.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let e = x.abs().log10().floor() as i32;
    if (-4..9).contains(&e) {
        let s = format!("{:.*}", (8 - e).max(0) as usize, x);
        // Rounding can carry into a new leading digit; fall back to scientific.
        let digits = s.chars().filter(|c| c.is_ascii_digit()).collect::<String>();
        if digits.trim_start_matches('0').len() <= 9 {
            return s;
        }
    }
    format!("{x:.8e}")
}

pub fn fmt_bool(b: bool) -> String {
    if b { "1" } else { "0" }.into()
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            comments: Vec::new(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn comment(&mut self, line: impl Into<String>) {
        self.comments.push(line.into());
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width differs from header");
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.comments {
            let _ = writeln!(s, "# {c}");
        }
        let _ = writeln!(s, "{}", self.header.join(","));
        for r in &self.rows {
            let _ = writeln!(s, "{}", r.join(","));
        }
        s
    }

    /// Column index by header name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Parsed float column; empty cells become `None`.
    pub fn floats(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let i = self.column(name)?;
        Some(self.rows.iter().map(|r| r[i].parse().ok()).collect())
    }
}

/// Output of a command.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub table: Option<CsvTable>,
    /// Lines for standard output when no table is produced.
    pub lines: Vec<String>,
    pub exit: i32,
}

impl Outcome {
    fn table(t: CsvTable) -> Self {
        Self {
            table: Some(t),
            lines: Vec::new(),
            exit: EXIT_OK,
        }
    }
}

fn provenance(t: &mut CsvTable, command: &str, settings: &Settings, target: &str) {
    t.comment(format!("sfdd {VERSION} {command}"));
    t.comment(format!("config: {}", settings.echo()));
    t.comment(format!("target: {target}"));
}

/// Geometry from either `(m, R)` or `(theta1, theta2)`, never both.
pub fn resolve_geometry(s: &Settings) -> CliResult<DiscPair> {
    let by_center = s.has("m") || s.has("R");
    let by_angle = s.has("theta1") || s.has("theta2");
    match (by_center, by_angle) {
        (true, true) => Err(config_err("give either --m/--R or --theta1/--theta2, not both")),
        (false, false) => Err(config_err("geometry missing: give --m and --R or --theta1 and --theta2")),
        (true, false) => {
            let (Some(m), Some(r)) = (s.f64("m")?, s.f64("R")?) else {
                return Err(config_err("both --m and --R are required"));
            };
            Ok(discs_from_center_radius(m, r)?)
        }
        (false, true) => {
            let (Some(a), Some(b)) = (s.f64("theta1")?, s.f64("theta2")?) else {
                return Err(config_err("both --theta1 and --theta2 are required"));
            };
            Ok(discs_from_angles(a, b)?)
        }
    }
}

/// Grid from `n1` (and `n2`, else `n2 ≈ factor·R·n1`) or from the order `N`.
/// Returns `None` when neither is given.
pub fn resolve_grid(s: &Settings, radius: f64) -> CliResult<Option<GridConfig>> {
    let factor = s.f64("n2-factor")?.unwrap_or(1.0);
    if let Some(n1) = s.usize("n1")? {
        let n2 = match s.usize("n2")? {
            Some(n2) => n2,
            None => nearest_even(factor * radius * n1 as f64),
        };
        return Ok(Some(GridConfig::new(n1, n2)?));
    }
    if s.has("n2") {
        return Err(config_err("--n2 requires --n1"));
    }
    match s.usize_list("N")? {
        Some(ns) if ns.len() == 1 => Ok(Some(GridConfig::for_order(ns[0], radius, factor)?)),
        Some(_) => Err(config_err("a grid needs a single --N")),
        None => Ok(None),
    }
}

fn single_order(s: &Settings) -> CliResult<Option<usize>> {
    match s.usize_list("N")? {
        None => Ok(None),
        Some(v) if v.len() == 1 => Ok(Some(v[0])),
        Some(_) => Err(config_err("this command takes a single --N")),
    }
}

fn snapped_comments(t: &mut CsvTable, sn: &SnappedScenario) {
    let g = sn.grid();
    t.comment(format!(
        "snapped: n1={} n2={} ell1={} ell2={} theta1_int={} theta2_int={} plateau={}",
        g.n1(),
        g.n2(),
        sn.ell1(),
        sn.ell2(),
        fmt_float(sn.theta1_int()),
        fmt_float(sn.theta2_int()),
        fmt_float(snapped_plateau(sn))
    ));
}

pub fn cmd_geometry(s: &Settings) -> CliResult<Outcome> {
    let pair = resolve_geometry(s)?;
    let grid = resolve_grid(s, pair.radius())?;
    let mut header = vec!["theta1_star", "theta2_star", "m", "R", "C1", "degenerate"];
    if grid.is_some() {
        header.extend(["n1", "n2", "ell1", "ell2", "theta1_int", "theta2_int", "C1_snapped"]);
    }
    let mut t = CsvTable::new(&header);
    provenance(&mut t, "geometry", s, "intersection angles and C1 of the example geometries");
    let mut row = vec![
        fmt_float(pair.theta1_star()),
        fmt_float(pair.theta2_star()),
        fmt_float(pair.m()),
        fmt_float(pair.radius()),
        fmt_float(pair.contraction()),
        fmt_bool(pair.is_degenerate()),
    ];
    if let Some(g) = grid {
        let sn = snap_pair(&pair, g)?;
        row.extend([
            g.n1().to_string(),
            g.n2().to_string(),
            sn.ell1().to_string(),
            sn.ell2().to_string(),
            fmt_float(sn.theta1_int()),
            fmt_float(sn.theta2_int()),
            fmt_float(snapped_plateau(&sn)),
        ]);
    }
    t.push(row);
    Ok(Outcome::table(t))
}

pub fn cmd_epsilon_table(s: &Settings) -> CliResult<Outcome> {
    let orders = s.usize_list("N")?.unwrap_or_else(|| EPSILON_ORDERS.to_vec());
    if let Some(&n) = orders.iter().find(|&&n| n < 4) {
        return Err(config_err(format!("epsilon-table needs N >= 4, got {n}")));
    }
    let rows = orders
        .par_iter()
        .map(|&n| -> CliResult<Vec<String>> {
            let rs = positivity_radius_theory(n)?;
            Ok(vec![
                n.to_string(),
                fmt_float(rs),
                fmt_float(epsilon_quadrature(n, rs)?),
                fmt_float(epsilon_bound(n)?),
            ])
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut t = CsvTable::new(&["N", "r_star", "epsilon", "bound"]);
    provenance(&mut t, "epsilon-table", s, "epsilon(r_N*) and its bound for the reference orders");
    for r in rows {
        t.push(r);
    }
    Ok(Outcome::table(t))
}

pub fn cmd_kernel_scan(s: &Settings) -> CliResult<Outcome> {
    let orders = s.usize_list("N")?.unwrap_or_else(|| (4..=100).collect());
    if let Some(&n) = orders.iter().find(|&&n| !(4..=200).contains(&n)) {
        return Err(config_err(format!("kernel-scan orders must lie in [4, 200], got {n}")));
    }
    let rows: Vec<Vec<String>> = orders
        .par_iter()
        .map(|&n| match positivity_radius_numeric(n, 4 * n, 1e-5) {
            Ok(rep) => vec![
                n.to_string(),
                fmt_float(rep.delta_theory),
                fmt_float(rep.delta_numeric),
                fmt_float(1.0 / rep.delta_theory),
                fmt_float(1.0 / rep.delta_numeric),
                fmt_float(rep.q),
                String::new(),
            ],
            Err(e) => {
                let dt = positivity_radius_theory(n).map(|r| 1.0 - r).unwrap_or(f64::NAN);
                vec![
                    n.to_string(),
                    fmt_float(dt),
                    String::new(),
                    fmt_float(1.0 / dt),
                    String::new(),
                    String::new(),
                    format!("\"{e}\""),
                ]
            }
        })
        .collect();
    let mut t = CsvTable::new(&["N", "delta_th", "delta_num", "inv_delta_th", "inv_delta_num", "q", "flag"]);
    provenance(&mut t, "kernel-scan", s, "positivity distances of K_N (q checked as q <= 1)");
    t.comment("scan: 4N angles on [0, pi], radius step 0.002, bisection to 1e-5");
    for r in rows {
        t.push(r);
    }
    Ok(Outcome::table(t))
}

fn parse_variant(s: &Settings, default: &str) -> CliResult<String> {
    let v = s.get("variant").unwrap_or(default).to_string();
    match v.as_str() {
        "exact" | "projection" | "interpolation" => Ok(v),
        _ => Err(config_err(format!("unknown variant '{v}'"))),
    }
}

fn profile_rows(t: &mut CsvTable, prof: &DtDProfile, order: Option<usize>) -> CliResult<()> {
    let flags = match order {
        Some(n) if n >= 4 => Some(prof.in_b1_plus(n)?),
        _ => None,
    };
    for i in 0..prof.thetas.len() {
        t.push(vec![
            fmt_float(prof.thetas[i]),
            fmt_float(prof.values[i]),
            flags.as_ref().map(|f| fmt_bool(f[i])).unwrap_or_default(),
            prof.grid_marks.as_ref().map(|g| fmt_bool(g[i])).unwrap_or_else(|| "0".into()),
        ]);
    }
    Ok(())
}

pub fn cmd_dtd_profile(s: &Settings) -> CliResult<Outcome> {
    let pair = resolve_geometry(s)?;
    let variant = parse_variant(s, "projection")?;
    let samples = s.usize("samples")?.unwrap_or(PROFILE_SAMPLES);
    let grid_only = s.flag("grid-only")?;
    let order = single_order(s)?;
    let mut t = CsvTable::new(&["theta_tilde", "value", "in_B1_plus", "is_grid_node"]);
    provenance(&mut t, "dtd-profile", s, "DtD profile (projection) or interpolation bound along Gamma2");
    t.comment(format!(
        "geometry: theta1_star={} theta2_star={} m={} R={} C1={}",
        fmt_float(pair.theta1_star()),
        fmt_float(pair.theta2_star()),
        fmt_float(pair.m()),
        fmt_float(pair.radius()),
        fmt_float(pair.contraction())
    ));
    let one = || arc_fn(|_| 1.0);
    match variant.as_str() {
        "exact" => {
            let prof = dtd_exact_profile(&pair, one(), samples)?;
            t.comment(format!("datum: v = 1 on Gamma1; endpoints (extrapolated): {} {}", fmt_float(prof.endpoints.0), fmt_float(prof.endpoints.1)));
            profile_rows(&mut t, &prof, order)?;
        }
        "projection" => {
            let n = order.ok_or_else(|| config_err("projection profile needs --N"))?;
            let prof = dtd_projection_profile(&pair, n, one(), samples)?;
            t.comment(format!(
                "datum: v = 1 on Gamma1; N={n} r_N*={}; endpoints (series at z1, z2): {} {}",
                fmt_float(positivity_radius_theory(n).unwrap_or(f64::NAN)),
                fmt_float(prof.endpoints.0),
                fmt_float(prof.endpoints.1)
            ));
            profile_rows(&mut t, &prof, Some(n))?;
        }
        _ => {
            let grid = resolve_grid(s, pair.radius())?
                .ok_or_else(|| config_err("interpolation profile needs --N or --n1"))?;
            let sn = snap_pair(&pair, grid)?;
            snapped_comments(&mut t, &sn);
            let prof = interp_bound_profile(&sn, samples, grid_only)?;
            t.comment(format!(
                "value: l1 bound of the masked interpolation map; C(N)={}",
                fmt_float(prof.max_on_grid())
            ));
            profile_rows(&mut t, &prof, Some(grid.n1() / 2 - 1))?;
        }
    }
    Ok(Outcome::table(t))
}

trait GridMax {
    fn max_on_grid(&self) -> f64;
}

impl GridMax for DtDProfile {
    fn max_on_grid(&self) -> f64 {
        match &self.grid_marks {
            Some(m) => self
                .values
                .iter()
                .zip(m)
                .filter(|(_, &g)| g)
                .map(|(v, _)| *v)
                .fold(0.0, f64::max),
            None => self.max(),
        }
    }
}

pub fn cmd_contraction_sweep(s: &Settings) -> CliResult<Outcome> {
    let radius = s.f64("R")?.ok_or_else(|| config_err("contraction-sweep needs --R"))?;
    if !(radius >= 1.0) {
        return Err(config_err(format!("contraction-sweep needs R >= 1, got {radius}")));
    }
    let orders = s.usize_list("N")?.unwrap_or_else(|| vec![20, 40]);
    let factor = s.f64("n2-factor")?.unwrap_or(1.0);
    let count = s.usize("theta1-count")?.unwrap_or(99);
    if count < 1 {
        return Err(config_err("theta1-count must be positive"));
    }
    let symmetric = radius == 1.0;
    let top = if symmetric { PI / 2.0 } else { PI };
    let thetas: Vec<f64> = (1..=count).map(|k| top * k as f64 / (count + 1) as f64).collect();
    let oracle = |t1: f64| -> f64 {
        if symmetric {
            contraction_symmetric(t1).unwrap_or(f64::NAN)
        } else {
            contraction_unequal(t1, radius).unwrap_or(f64::NAN)
        }
    };
    let grids = orders
        .iter()
        .map(|&n| Ok(GridConfig::for_order(n, radius, factor)?))
        .collect::<CliResult<Vec<_>>>()?;

    let mut header: Vec<String> = vec!["theta1_star".into()];
    for n in &orders {
        header.push(format!("theta1_int_N{n}"));
        header.push(format!("C_bound_N{n}"));
        header.push(format!("C_cont_int_N{n}"));
    }
    header.push("C_continuous".into());
    let href: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut t = CsvTable::new(&href);
    provenance(&mut t, "contraction-sweep", s, "C(N, theta1*) against the continuous C1");
    for (n, g) in orders.iter().zip(&grids) {
        t.comment(format!("grid N={n}: n1={} n2={} (n2-factor {factor})", g.n1(), g.n2()));
    }
    let rows = thetas
        .par_iter()
        .map(|&t1| -> CliResult<(Vec<String>, Vec<String>)> {
            let t2 = if symmetric { PI - t1 } else { theta2_for_radius(t1, radius)? };
            let pair = discs_from_angles(t1, t2)?;
            let mut row = vec![fmt_float(t1)];
            let mut skipped = Vec::new();
            for (n, g) in orders.iter().zip(&grids) {
                match snap_pair(&pair, *g) {
                    Ok(sn) => {
                        row.push(fmt_float(sn.theta1_int()));
                        row.push(fmt_float(interp_contraction_bound(&sn)?));
                        row.push(fmt_float(oracle(sn.theta1_int())));
                    }
                    Err(e @ (Error::Infeasible(_) | Error::Assumption(_))) => {
                        row.extend([String::new(), String::new(), String::new()]);
                        skipped.push(format!("theta1*={} N={n}: {e}", fmt_float(t1)));
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            row.push(fmt_float(oracle(t1)));
            Ok((row, skipped))
        })
        .collect::<CliResult<Vec<_>>>()?;
    for (row, skipped) in rows {
        for m in skipped {
            t.comment(format!("skipped {m}"));
        }
        t.push(row);
    }
    Ok(Outcome::table(t))
}

/// Boundary data from the `data` key: `log` (default source), `log:x0,y0`
/// or `poly:k`.
pub fn resolve_data(s: &Settings) -> CliResult<ManufacturedKind> {
    let spec = s.get("data").unwrap_or("log");
    let bad = || config_err(format!("cannot parse data = '{spec}' (expected log, log:x0,y0 or poly:k)"));
    if spec == "log" {
        return Ok(ManufacturedKind::LogSource(DEFAULT_LOG_SOURCE.0, DEFAULT_LOG_SOURCE.1));
    }
    if let Some(rest) = spec.strip_prefix("log:") {
        let (a, b) = rest.split_once(',').ok_or_else(bad)?;
        return Ok(ManufacturedKind::LogSource(
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ));
    }
    if let Some(k) = spec.strip_prefix("poly:") {
        return Ok(ManufacturedKind::HarmonicPolynomial(k.trim().parse().map_err(|_| bad())?));
    }
    Err(bad())
}

pub fn cmd_schwarz_run(s: &Settings) -> CliResult<Outcome> {
    let base = resolve_geometry(s)?;
    let variant_name = parse_variant(s, "exact")?;
    let mode = match s.get("mode").unwrap_or("additive") {
        "additive" => Mode::Additive,
        "multiplicative" => Mode::Multiplicative,
        m => return Err(config_err(format!("unknown mode '{m}'"))),
    };
    let tol = s.f64("tol")?.unwrap_or(1e-10);
    let max_sweeps = s.usize("max-sweeps")?.unwrap_or(100);
    let samples = s.usize("samples")?.unwrap_or(DEFAULT_TRACE_SAMPLES);
    let mut snapped = None;
    let variant = match variant_name.as_str() {
        "exact" => Variant::Exact,
        "projection" => Variant::Projection {
            order: single_order(s)?.ok_or_else(|| config_err("projection variant needs --N"))?,
        },
        _ => {
            let grid = resolve_grid(s, base.radius())?
                .ok_or_else(|| config_err("interpolation variant needs --N or --n1"))?;
            let sn = snap_pair(&base, grid)?;
            snapped = Some(sn);
            Variant::Interpolation(sn)
        }
    };
    let config = SchwarzConfig::new(base, variant, mode, max_sweeps, tol, samples)?;
    let pair = *config.pair();
    let u = manufactured(resolve_data(s)?, &pair)?;
    let f = u.function();
    let reference = move |x: f64, y: f64| f(x, y);
    let solver = SchwarzSolver::new(config, u.boundary_data());
    let trace = solver.run(Some(&reference))?;

    let c1 = pair.contraction();
    let (bound_name, bound) = match (&snapped, mode) {
        (Some(sn), _) => ("interp_bound", interp_contraction_bound(sn)?),
        (None, Mode::Additive) => ("C1", c1),
        (None, Mode::Multiplicative) => ("C1_squared", c1 * c1),
    };
    let with_nodes = trace.intersection_errors.is_some();
    let mut header = vec!["sweep", "update", "ratio", "true_error"];
    if with_nodes {
        header.push("intersection_node_error");
    }
    header.push(bound_name);
    let mut t = CsvTable::new(&header);
    provenance(&mut t, "schwarz-run", s, "Schwarz iteration rates against C1, C1^2 or the interpolation bound");
    t.comment(format!(
        "resolved: variant={} mode={} theta1_star={} theta2_star={} m={} R={} C1={} tol={} max_sweeps={} trace_samples={}",
        variant.name(),
        mode.name(),
        fmt_float(pair.theta1_star()),
        fmt_float(pair.theta2_star()),
        fmt_float(pair.m()),
        fmt_float(pair.radius()),
        fmt_float(c1),
        tol,
        max_sweeps,
        samples
    ));
    if let Some(sn) = &snapped {
        snapped_comments(&mut t, sn);
    }
    let rate = observed_rate(&trace.updates);
    t.comment(format!(
        "summary: converged={} sweeps={} observed_rate={} {bound_name}={}",
        trace.converged,
        trace.sweeps,
        rate.as_ref().map(|r| fmt_float(*r)).unwrap_or_else(|e| format!("n/a ({e})")),
        fmt_float(bound)
    ));
    let errs = trace.true_errors.clone().unwrap_or_default();
    for (i, upd) in trace.updates.iter().enumerate() {
        let mut row = vec![
            (i + 1).to_string(),
            fmt_float(*upd),
            if i == 0 { String::new() } else { fmt_float(trace.ratios[i - 1]) },
            errs.get(i).map(|e| fmt_float(*e)).unwrap_or_default(),
        ];
        if let Some(ne) = &trace.intersection_errors {
            row.push(fmt_float(ne[i]));
        }
        row.push(fmt_float(bound));
        t.push(row);
    }
    let mut out = Outcome::table(t);
    if !trace.converged {
        out.exit = EXIT_NONCONVERGED;
    }
    Ok(out)
}

pub fn cmd_verify(s: &Settings) -> CliResult<Outcome> {
    let suite: Suite = s.get("suite").unwrap_or("all").parse()?;
    let seed = match s.get("seed") {
        Some(v) => v.parse().map_err(|_| config_err(format!("cannot parse seed = '{v}'")))?,
        None => verify::DEFAULT_SEED,
    };
    let fault: Fault = s.get("fault").unwrap_or("none").parse()?;
    let outcomes = verify::run_suite(suite, seed, fault);
    let mut lines: Vec<String> = outcomes.iter().map(|o| o.to_string()).collect();
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    lines.push(format!("{} checks, {} failed (seed {seed})", outcomes.len(), failed));
    Ok(Outcome {
        table: None,
        lines,
        exit: if failed == 0 { EXIT_OK } else { EXIT_VERIFY },
    })
}

/// Dispatches a subcommand by name.
pub fn run_command(command: &str, s: &Settings) -> CliResult<Outcome> {
    match command {
        "geometry" => cmd_geometry(s),
        "epsilon-table" => cmd_epsilon_table(s),
        "kernel-scan" => cmd_kernel_scan(s),
        "dtd-profile" => cmd_dtd_profile(s),
        "contraction-sweep" => cmd_contraction_sweep(s),
        "schwarz-run" => cmd_schwarz_run(s),
        "verify" => cmd_verify(s),
        _ => Err(config_err(format!("unknown command '{command}'"))),
    }
}
