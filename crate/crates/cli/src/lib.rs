//! Batch front end for `stcalc-core`.
//!
//! A parsed command line is a [`RunConfig`]; [`run`] executes one and returns the
//! rendered output together with a verdict for `verify`.

pub mod output;
pub mod suites;

use std::collections::BTreeMap;
use std::fs;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use stcalc_core::affweyl::parse_int_list;
use stcalc_core::hecke::{
    char_thm43, direct_sum, load_module_file, steinberg_module, trace_t, trivial_module,
};
use stcalc_core::{
    facet_euler_check, unipotent_expansion, AffineElt, AffineWeylGroup, Cochar, DatumSpec,
    HeckeAlgebra, HeckeElt, ModuleFile, ModuleSpec, SteinbergCalculator, UnipotentData, WeylGroup,
    DEFAULT_RANK_CAP,
};

use output::Output;

pub const DEFAULT_MAX_ROWS: usize = 10_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct Caps {
    /// Largest rank accepted for any datum.
    #[arg(long, global = true, default_value_t = DEFAULT_RANK_CAP)]
    pub max_rank: usize,
    /// Largest radius accepted for breadth-first searches in the affine group.
    #[arg(long, global = true, default_value_t = stcalc_core::affweyl::DEFAULT_BFS_RADIUS_CAP)]
    pub radius_cap: usize,
    /// Largest number of grid points in a table.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ROWS)]
    pub max_rows: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            max_rank: DEFAULT_RANK_CAP,
            radius_cap: stcalc_core::affweyl::DEFAULT_BFS_RADIUS_CAP,
            max_rows: DEFAULT_MAX_ROWS,
        }
    }
}

/// Exact Steinberg character values, Iwahori-Hecke traces and their cross-checks.
#[derive(Clone, Debug, PartialEq, Eq, Parser, Serialize, Deserialize)]
#[command(name = "stcalc", version)]
pub struct RunConfig {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub caps: Caps,
    /// Print the parsed configuration as JSON instead of running it.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub print_config: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "command")]
pub enum Command {
    /// Character value at a split very regular element with valuation datum y.
    Char {
        /// Root datum, e.g. `A2`, `B3:adjoint`, `A3:basis=[[..],..]`.
        datum: String,
        /// Coordinates of y in the basis of Y.
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// `sign`, `trivial`, or a module file.
        #[arg(long)]
        module: Option<String>,
    },
    /// Run an invariant suite.
    Verify(VerifyArgs),
    /// Table of l(y), <y,2rho>, tr(T_y) and the character over a box of dominant y.
    Table {
        datum: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        ymin: i64,
        #[arg(long, default_value_t = 3)]
        ymax: i64,
        /// `sign`, `trivial`, or a module file.
        #[arg(long, default_value = "sign")]
        module: String,
    },
    /// Iwahori-Matsumoto length and reduced decomposition of an affine element.
    Length {
        datum: String,
        /// `y=[1,0] w=s1s2` or a generator word such as `s0 s1 | omega=1`.
        element: String,
        /// Also compute the distance by breadth-first search up to this radius.
        #[arg(long)]
        bfs: Option<usize>,
    },
    /// Product T_a T_b in the Iwahori-Hecke algebra.
    HeckeMul { datum: String, a: String, b: String },
    /// Signed facet count of the split torus.
    Euler { datum: String },
    /// Character value at a topologically unipotent element.
    Unipotent {
        datum: String,
        /// n for every positive root, in root order.
        #[arg(long, conflicts_with_all = ["n_map", "uniform"])]
        n: Option<String>,
        /// JSON map from positive-root index to n.
        #[arg(long, conflicts_with = "uniform")]
        n_map: Option<String>,
        /// The same n on every root.
        #[arg(long)]
        uniform: Option<u64>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: suites::Suite,
    /// Cartan types to sweep, on both lattices unless one is given; the rank-based
    /// suites (cw, euler, unipotent) otherwise sweep every type up to `--max-rank`.
    #[arg(long, alias = "type", value_delimiter = ',')]
    pub types: Option<Vec<String>>,
    /// Largest coordinate of y on the grid.
    #[arg(long, default_value_t = 3)]
    pub ymax: i64,
    /// Ball radius for the length suite.
    #[arg(long, default_value_t = 12)]
    pub radius: usize,
    /// Number of random samples where the suite draws any.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

/// Outcome of a run: output to print and whether every check held.
pub struct Run {
    pub output: Output,
    pub passed: bool,
}

pub fn parse_datum(s: &str, caps: &Caps) -> anyhow::Result<Arc<WeylGroup>> {
    let spec: DatumSpec = s.parse().with_context(|| format!("datum {s:?}"))?;
    let d = spec.build_with_cap(caps.max_rank).with_context(|| format!("datum {s:?}"))?;
    Ok(Arc::new(WeylGroup::enumerate(Arc::new(d))?))
}

pub fn parse_affine(s: &str, caps: &Caps) -> anyhow::Result<Arc<AffineWeylGroup>> {
    let g = AffineWeylGroup::new(parse_datum(s, caps)?)?.with_bfs_radius_cap(caps.radius_cap);
    Ok(Arc::new(g))
}

/// `sign`, `trivial`, `sign+trivial`, or a path to a module file.
pub fn load_module(group: &AffineWeylGroup, name: &str) -> anyhow::Result<ModuleSpec> {
    match name {
        "sign" => Ok(steinberg_module(group)),
        "trivial" => Ok(trivial_module(group)),
        "sign+trivial" => Ok(direct_sum(&steinberg_module(group), &trivial_module(group))),
        path => {
            let text = fs::read_to_string(path).with_context(|| format!("reading module file {path}"))?;
            let file: ModuleFile =
                serde_json::from_str(&text).with_context(|| format!("module file {path}"))?;
            Ok(load_module_file(group, path, &file).with_context(|| format!("module file {path}"))?)
        }
    }
}

/// Accepts the `y=[..] w=..` form or a word in `s0..sr` with an optional `| omega=k`.
pub fn parse_element(g: &AffineWeylGroup, s: &str) -> anyhow::Result<AffineElt> {
    if s.contains("y=") || s.contains("w=") {
        return Ok(g.parse(s)?);
    }
    let (word_part, omega) = match s.split_once('|') {
        Some((w, o)) => {
            let o = o.trim();
            let k = o
                .strip_prefix("omega=")
                .ok_or_else(|| anyhow!("expected omega=k after '|' in {s:?}"))?
                .trim()
                .parse::<usize>()
                .with_context(|| format!("omega index in {s:?}"))?;
            (w, k)
        }
        None => (s, 0),
    };
    if omega >= g.omega().len() {
        bail!("omega={omega} out of range, |Omega| = {}", g.omega().len());
    }
    let mut word = Vec::new();
    for tok in word_part.split_whitespace().filter(|t| *t != "1") {
        let k: usize = tok
            .strip_prefix('s')
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| anyhow!("bad generator {tok:?} in {s:?}"))?;
        if k >= g.num_generators() {
            bail!("generator s{k} out of range in {s:?}");
        }
        word.push(k);
    }
    Ok(g.compose(&word, omega))
}

fn parse_y(g: &WeylGroup, s: &str) -> anyhow::Result<Cochar> {
    let coords = parse_int_list(s)?;
    g.datum().cochar(&coords).with_context(|| format!("y = {s:?}"))
}

pub fn run(config: &RunConfig) -> anyhow::Result<Run> {
    let caps = &config.caps;
    let ok = |output| Ok(Run { output, passed: true });
    match &config.command {
        Command::Char { datum, y, module } => ok(cmd_char(datum, y, module.as_deref(), caps)?),
        Command::Verify(args) => {
            let report = suites::run_suite(args, caps)?;
            let passed = report.passed;
            Ok(Run { output: report.into_output(), passed })
        }
        Command::Table { datum, ymin, ymax, module } => ok(cmd_table(datum, *ymin, *ymax, module, caps)?),
        Command::Length { datum, element, bfs } => ok(cmd_length(datum, element, *bfs, caps)?),
        Command::HeckeMul { datum, a, b } => ok(cmd_hecke_mul(datum, a, b, caps)?),
        Command::Euler { datum } => ok(cmd_euler(datum, caps)?),
        Command::Unipotent { datum, n, n_map, uniform } => {
            ok(cmd_unipotent(datum, n.as_deref(), n_map.as_deref(), *uniform, caps)?)
        }
    }
}

fn cmd_char(datum: &str, y: &str, module: Option<&str>, caps: &Caps) -> anyhow::Result<Output> {
    let g = parse_affine(datum, caps)?;
    let y = parse_y(g.weyl(), y)?;
    let calc = SteinbergCalculator::new(g.weyl().clone());
    let mut results = vec![calc.closed_form(&y)?];
    // the remaining routes need a dominant representative; the character is W-invariant
    let (_, dom) = g.weyl().dominant_conjugate(&y);
    results.push(calc.alternating_sum(&dom)?);
    results.push(calc.xw_form(&dom)?);
    if let Some(name) = module {
        let m = load_module(&g, name)?;
        let value = char_thm43(&g, &dom, &m)?;
        let mut r = calc.closed_form(&dom)?;
        r.method = stcalc_core::Method::Thm43;
        r.value = value;
        results.push(r);
    }
    let rows = results
        .iter()
        .map(|r| vec![r.datum.clone(), fmt_list(&r.y), r.method.to_string(), r.value.to_string()])
        .collect();
    Ok(Output::table(serde_json::to_value(&results)?, &["datum", "y", "method", "value"], rows))
}

fn fmt_list<T: ToString>(v: &[T]) -> String {
    format!("[{}]", v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
}

fn cmd_table(datum: &str, ymin: i64, ymax: i64, module: &str, caps: &Caps) -> anyhow::Result<Output> {
    if ymin > ymax {
        bail!("empty range {ymin}..={ymax}");
    }
    let g = parse_affine(datum, caps)?;
    let d = g.datum().clone();
    let side = (ymax - ymin + 1) as u128;
    let points = side.checked_pow(d.rank() as u32).unwrap_or(u128::MAX);
    if points > caps.max_rows as u128 {
        bail!("grid has {points} points, cap is {} (raise with --max-rows)", caps.max_rows);
    }
    let m = load_module(&g, module)?;
    let r = d.rank();
    let mut coords = vec![ymin; r];
    let mut rows = Vec::new();
    let mut records = Vec::new();
    loop {
        let y = d.cochar(&coords)?;
        if d.dominance(&y).is_dominant() {
            let t = g.translation(&y);
            let length = g.im_length(&t);
            let pairing = d.pair_two_rho(&y);
            let trace = trace_t(&g, &t, &m);
            let phi = char_thm43(&g, &y, &m)?;
            rows.push(vec![
                fmt_list(&coords),
                length.to_string(),
                pairing.to_string(),
                trace.to_string(),
                phi.to_string(),
            ]);
            records.push(json!({
                "y": coords, "length": length, "pairing_2rho": pairing, "trace": trace, "phi": phi,
            }));
        }
        let mut i = 0;
        while i < r && coords[i] == ymax {
            coords[i] = ymin;
            i += 1;
        }
        if i == r {
            break;
        }
        coords[i] += 1;
    }
    let js = json!({ "datum": d.spec().to_string(), "module": m.name(), "rows": records });
    Ok(Output::table(js, &["y", "length", "pairing_2rho", "trace", "phi"], rows))
}

fn cmd_length(datum: &str, element: &str, bfs: Option<usize>, caps: &Caps) -> anyhow::Result<Output> {
    let g = parse_affine(datum, caps)?;
    let a = parse_element(&g, element)?;
    let length = g.im_length(&a);
    let dec = g.decompose(&a);
    let mut row = vec![g.format(&a), length.to_string(), dec.to_string()];
    let mut js = json!({
        "datum": g.datum().spec().to_string(),
        "element": g.format(&a),
        "length": length,
        "word": dec.word,
        "omega": dec.omega,
    });
    let mut cols = vec!["element", "length", "decomposition"];
    if let Some(radius) = bfs {
        let dist = g.length_bfs_oracle(&a, radius)?;
        let shown = dist.map_or_else(|| format!(">{radius}"), |d| d.to_string());
        row.push(shown);
        js["bfs"] = json!(dist);
        cols.push("bfs");
    }
    Ok(Output::table(js, &cols, vec![row]))
}

fn cmd_hecke_mul(datum: &str, a: &str, b: &str, caps: &Caps) -> anyhow::Result<Output> {
    let g = parse_affine(datum, caps)?;
    let x = parse_element(&g, a)?;
    let z = parse_element(&g, b)?;
    let h = HeckeAlgebra::new(g.clone());
    let prod: HeckeElt = h.mul_basis(&x, &z);
    let rows: Vec<Vec<String>> = prod.iter().map(|(e, c)| vec![g.format(e), c.to_string()]).collect();
    let terms: Vec<_> = prod
        .iter()
        .map(|(e, c)| json!({ "element": g.format(e), "coefficient": c }))
        .collect();
    let js = json!({
        "datum": g.datum().spec().to_string(),
        "a": g.format(&x),
        "b": g.format(&z),
        "terms": terms,
    });
    Ok(Output::table(js, &["element", "coefficient"], rows))
}

fn cmd_euler(datum: &str, caps: &Caps) -> anyhow::Result<Output> {
    let g = parse_datum(datum, caps)?;
    let report = facet_euler_check(&g);
    let mut rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| vec![r.j.clone(), r.subgroup_order.to_string(), r.facets.to_string(), r.sign.to_string()])
        .collect();
    rows.push(vec![
        "total".into(),
        String::new(),
        report.total.to_string(),
        format!("expected {}", report.expected),
    ]);
    Ok(Output::table(serde_json::to_value(&report)?, &["J", "|W_J|", "facets", "sign"], rows))
}

fn cmd_unipotent(
    datum: &str,
    n: Option<&str>,
    n_map: Option<&str>,
    uniform: Option<u64>,
    caps: &Caps,
) -> anyhow::Result<Output> {
    let g = parse_datum(datum, caps)?;
    let d = g.datum();
    let u = match (n, n_map, uniform) {
        (Some(list), _, _) => {
            let values = parse_int_list(list)?
                .into_iter()
                .map(|x| u64::try_from(x).map_err(|_| anyhow!("n must be >= 1, got {x}")))
                .collect::<anyhow::Result<Vec<_>>>()?;
            UnipotentData::new(d, values)?
        }
        (_, Some(map), _) => {
            let map: BTreeMap<usize, u64> = serde_json::from_str(map).context("--n-map")?;
            UnipotentData::from_map(d, &map)?
        }
        (_, _, Some(k)) => UnipotentData::uniform(d, k)?,
        _ => bail!("one of --n, --n-map, --uniform is required"),
    };
    let value = unipotent_expansion(&g, &u);
    let (e, c) = value.leading()?;
    let js = json!({
        "datum": d.spec().to_string(),
        "positive_roots": d.positive_roots().map(|k| d.root(k).to_vec()).collect::<Vec<_>>(),
        "n": u.values(),
        "value": value,
        "leading": { "v_exponent": e, "coefficient": c.to_string() },
    });
    let row = vec![d.spec().to_string(), fmt_list(u.values()), value.to_string()];
    Ok(Output::table(js, &["datum", "n", "value"], vec![row]))
}
