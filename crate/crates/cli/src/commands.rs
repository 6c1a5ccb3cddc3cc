//! One function per subcommand. Argument structs double as clap argument
//! groups and as the parameter records of sweep grid points.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context as _, Result};
use clap::{Args, Subcommand};
use num_rational::BigRational;
use serde::{Deserialize, Deserializer};
use serde_json::Value;

use systolic_core::bounds::{self, BoundConstants, UpperIngredients};
use systolic_core::complex::SimplicialComplex;
use systolic_core::genfun::{self, RationalSequence};
use systolic_core::graphs::{self, ConstructionBudget, Girth, Graph};
use systolic_core::groups::{self, Presentation};
use systolic_core::homology;
use systolic_core::ratio::{format_rational, parse_rational, to_f64};
use systolic_core::sleeve::{self, CubicalModel};
use systolic_core::{corpus, waring};

use crate::output::{float, Report, Row};

/// Settings shared by every command.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub seed: u64,
    pub constants: BoundConstants,
}

macro_rules! row {
    ($($key:expr => $value:expr),* $(,)?) => {{
        let mut r = Row::new();
        $( r.insert($key.to_string(), Value::from($value)); )*
        r
    }};
}

fn json_text<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serialisable")
}

/// JSON number when it fits in `i64`, decimal string otherwise.
fn big(value: &num_bigint::BigInt) -> Value {
    i64::try_from(value).map_or_else(|_| Value::from(value.to_string()), Value::from)
}

/// Accept a JSON string, number or boolean as text.
fn text<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<String, D::Error> {
    match Value::deserialize(de)? {
        Value::String(s) => Ok(s),
        Value::Number(n) => Ok(n.to_string()),
        Value::Bool(b) => Ok(b.to_string()),
        other => Err(serde::de::Error::custom(format!("expected a scalar, got {other}"))),
    }
}

/// Accept a single value or a list.
fn one_or_many<'de, D, T>(de: D) -> std::result::Result<Vec<T>, D::Error>
where
    D: Deserializer<'de>,
    T: serde::de::DeserializeOwned,
{
    match Value::deserialize(de)? {
        Value::Array(items) => {
            items.into_iter().map(|v| serde_json::from_value(v).map_err(serde::de::Error::custom)).collect()
        }
        Value::Null => Ok(Vec::new()),
        v => Ok(vec![serde_json::from_value(v).map_err(serde::de::Error::custom)?]),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// `"a..b"` (inclusive), `"a..b:step"`, or a comma-separated list.
pub fn parse_range(spec: &str) -> Result<Vec<u64>> {
    let spec = spec.trim();
    if let Some((lo, rest)) = spec.split_once("..") {
        let (hi, step) = rest.split_once(':').unwrap_or((rest, "1"));
        let (lo, hi, step): (u64, u64, u64) = (lo.trim().parse()?, hi.trim().parse()?, step.trim().parse()?);
        if step == 0 || lo > hi {
            bail!("empty range {spec:?}");
        }
        return Ok((lo..=hi).step_by(step as usize).collect());
    }
    let values = spec.split(',').map(|s| s.trim().parse::<u64>()).collect::<std::result::Result<Vec<_>, _>>()?;
    if values.is_empty() {
        bail!("empty list {spec:?}");
    }
    Ok(values)
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexArgs {
    /// Complex JSON file (repeatable).
    #[arg(long = "file")]
    #[serde(default, alias = "file", deserialize_with = "one_or_many")]
    pub files: Vec<PathBuf>,
    /// Built-in complex name (repeatable). With no inputs, every built-in complex.
    #[arg(long)]
    #[serde(default, deserialize_with = "one_or_many")]
    pub corpus: Vec<String>,
}

fn load_complexes(args: &ComplexArgs) -> Result<Vec<(String, SimplicialComplex)>> {
    let mut out = Vec::new();
    for path in &args.files {
        out.push((path.display().to_string(), SimplicialComplex::from_json(&read(path)?)?));
    }
    for name in &args.corpus {
        let complex = corpus::complex(name).ok_or_else(|| anyhow!("unknown corpus complex {name:?}"))?;
        out.push((name.clone(), complex));
    }
    if out.is_empty() {
        out = corpus::complexes().into_iter().map(|c| (c.name.to_string(), c.complex)).collect();
    }
    Ok(out)
}

pub fn homology(args: &ComplexArgs) -> Result<Report> {
    let mut report = Report::default();
    for (name, x) in load_complexes(args)? {
        let h = homology::homology(&x);
        let pm = x.is_pseudomanifold();
        let orientable = if pm { Value::from(x.orient()?.is_orientable()) } else { Value::Null };
        let admissible = match x.dim() {
            Some(2) => Value::from(x.is_admissible_dim2()?),
            _ => Value::Null,
        };
        let torsion: Vec<Vec<Value>> = h.torsion.iter().map(|t| t.iter().map(big).collect()).collect();
        let mut r = row! {
            "name" => name,
            "dim" => x.dim().map(|d| d as u64),
            "face_counts" => json_text(&x.face_counts()),
            "euler" => x.euler_characteristic(),
            "betti" => json_text(&h.betti),
            "torsion" => json_text(&torsion),
            "pseudomanifold" => pm,
        };
        r.insert("orientable".into(), orientable);
        r.insert("admissible_dim2".into(), admissible);
        // Euler-Poincaré is an identity; a mismatch is a bug.
        let violated = h.euler_characteristic() != x.euler_characteristic();
        report.push(r, violated);
    }
    Ok(report)
}

pub fn check_torsion_bound(args: &ComplexArgs) -> Result<Report> {
    let mut report = Report::default();
    for (name, x) in load_complexes(args)? {
        let check = homology::check_s2_torsion_bound(&x);
        let mut r = row! {
            "name" => name,
            "s2" => check.s2 as u64,
            "torsion_h1" => check.torsion_order.to_string(),
            "two_log3_torsion" => float(check.bound),
            "holds" => check.holds,
        };
        let mut violated = !check.holds;
        if let Ok(d2) = x.boundary_matrix(2) {
            let minor = homology::minor_gcd_check(&d2);
            r.insert("rank_d2".into(), Value::from(minor.rank as u64));
            r.insert("factor_product".into(), Value::from(minor.t_d.to_string()));
            r.insert("factor_bound_holds".into(), Value::from(minor.bound_holds));
            r.insert("brute_force_agrees".into(), minor.brute_force_agrees.map_or(Value::Null, Value::from));
            violated |= !minor.passed();
        }
        report.push(r, violated);
    }
    Ok(report)
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianizeArgs {
    /// Presentation text, e.g. `a,b,c ; [a,b]c^-5, [a,c], [b,c]`.
    #[arg(long)]
    #[serde(default)]
    pub presentation: Option<String>,
    /// Heisenberg lattice of index n.
    #[arg(long)]
    #[serde(default)]
    pub heisenberg: Option<u64>,
    /// Cyclic group of order n.
    #[arg(long)]
    #[serde(default)]
    pub cyclic: Option<u64>,
}

pub fn abelianize(args: &AbelianizeArgs) -> Result<Report> {
    let p = match (&args.presentation, args.heisenberg, args.cyclic) {
        (Some(text), None, None) => Presentation::parse(text)?,
        (None, Some(n), None) => groups::heisenberg_presentation(n)?,
        (None, None, Some(n)) => groups::cyclic_presentation(n)?,
        _ => bail!("give exactly one of --presentation, --heisenberg, --cyclic"),
    };
    let ab = groups::abelianization(&p);
    let factors: Vec<Value> = ab.torsion_factors.iter().map(big).collect();
    Ok(Report::single(row! {
        "presentation" => p.to_string(),
        "free_rank" => ab.free_rank as u64,
        "torsion" => json_text(&factors),
        "group" => ab.to_string(),
    }))
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphArgs {
    /// Graph JSON file (repeatable).
    #[arg(long = "file")]
    #[serde(default, alias = "file", deserialize_with = "one_or_many")]
    pub files: Vec<PathBuf>,
    /// Built-in graph name (repeatable). With no inputs, every built-in graph.
    #[arg(long)]
    #[serde(default, deserialize_with = "one_or_many")]
    pub corpus: Vec<String>,
}

fn load_graph(path: &Path) -> Result<Graph> {
    Ok(Graph::from_json(&read(path)?)?)
}

fn graph_row(name: String, g: &Graph) -> (Row, bool) {
    let girth = graphs::girth(g);
    let degree = g.regular_degree();
    let mut r = row! {
        "name" => name,
        "vertices" => g.vertex_count() as u64,
        "edges" => g.edges().len() as u64,
        "regular_degree" => degree.map(|d| d as u64),
        "girth" => girth.to_string(),
    };
    let mut violated = false;
    if let (Some(c), Girth::Finite(len)) = (degree, girth) {
        if let Ok(moore) = graphs::moore_bound(c, len) {
            let meets = num_bigint::BigInt::from(g.vertex_count()) >= moore;
            r.insert("moore_bound".into(), Value::from(moore.to_string()));
            r.insert("meets_moore".into(), Value::from(meets));
            violated = !meets;
        }
    }
    (r, violated)
}

pub fn girth(args: &GraphArgs) -> Result<Report> {
    let mut inputs = Vec::new();
    for path in &args.files {
        inputs.push((path.display().to_string(), load_graph(path)?));
    }
    for name in &args.corpus {
        inputs.push((name.clone(), corpus::graph(name).ok_or_else(|| anyhow!("unknown corpus graph {name:?}"))?));
    }
    if inputs.is_empty() {
        inputs = corpus::graphs().into_iter().map(|g| (g.name.to_string(), g.graph)).collect();
    }
    let mut report = Report::default();
    for (name, g) in inputs {
        let (r, violated) = graph_row(name, &g);
        report.push(r, violated);
    }
    Ok(report)
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuildGraphArgs {
    /// Valency.
    #[arg(long)]
    pub c: usize,
    /// Minimum girth.
    #[arg(long)]
    pub girth: usize,
    #[arg(long)]
    pub vertices: usize,
    #[arg(long)]
    #[serde(default)]
    pub attempts: Option<usize>,
    #[arg(long)]
    #[serde(default)]
    pub swap_tries: Option<usize>,
    /// Write the graph as JSON here.
    #[arg(long)]
    #[serde(skip)]
    pub save: Option<PathBuf>,
}

fn budget(attempts: Option<usize>, swap_tries: Option<usize>) -> ConstructionBudget {
    let d = ConstructionBudget::default();
    ConstructionBudget { attempts: attempts.unwrap_or(d.attempts), swap_tries: swap_tries.unwrap_or(d.swap_tries) }
}

pub fn build_graph(args: &BuildGraphArgs, ctx: &Ctx) -> Result<Report> {
    let g = graphs::construct_regular_girth(
        args.c,
        args.girth,
        args.vertices,
        ctx.seed,
        budget(args.attempts, args.swap_tries),
    )?;
    if let Some(path) = &args.save {
        let mut file = g.to_file();
        file.provenance = Some(format!("random {}-regular graph, girth >= {}, seed {}", args.c, args.girth, ctx.seed));
        let text = serde_json::to_string(&file)? + "\n";
        std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
    }
    let (mut r, _) = graph_row("constructed".into(), &g);
    r.insert("target_girth".into(), Value::from(args.girth as u64));
    r.insert("seed".into(), Value::from(ctx.seed));
    let violated = g.regular_degree() != Some(args.c) || graphs::girth(&g) < Girth::Finite(args.girth);
    let mut report = Report::default();
    report.push(r, violated);
    Ok(report)
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SleeveArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub c: u32,
    /// Sleeve width as an exact rational, e.g. `1/10`.
    #[arg(long)]
    #[serde(deserialize_with = "text")]
    pub eps: String,
    /// Gluing graph JSON file.
    #[arg(long)]
    #[serde(default)]
    pub graph: Option<PathBuf>,
    /// Build the gluing graph instead, with girth ⌊1/(2ε)⌋ + 1.
    #[arg(long)]
    #[serde(default)]
    pub construct: bool,
    /// Vertex count for `--construct`; defaults to the smallest even count in the window.
    #[arg(long)]
    #[serde(default)]
    pub vertices: Option<usize>,
}

pub fn sleeve(args: &SleeveArgs, ctx: &Ctx) -> Result<Report> {
    let model = CubicalModel::new(args.m, args.c)?;
    let eps = parse_rational(&args.eps)?;
    let graph = match (&args.graph, args.construct) {
        (Some(path), false) => load_graph(path)?,
        (None, true) => {
            let l = sleeve::girth_level(&eps)?;
            let (min, _) = graphs::vertex_window(args.c as usize, l as usize)?;
            let min: usize = min.try_into().map_err(|_| anyhow!("vertex window too large"))?;
            let vertices = args.vertices.unwrap_or(min + min % 2);
            graphs::construct_regular_girth(
                args.c as usize,
                l as usize + 1,
                vertices,
                ctx.seed,
                ConstructionBudget::default(),
            )?
        }
        _ => bail!("give exactly one of --graph or --construct"),
    };
    let a = sleeve::assemble(&model, &eps, &graph)?;
    let single = sleeve::sleeve_volume_single(&model, &eps)?;
    let expected = &single * num_bigint::BigInt::from(a.vertices);
    let r = row! {
        "m" => a.m,
        "c" => a.c,
        "eps" => format_rational(&a.eps),
        "l" => a.l,
        "vertices" => a.vertices as u64,
        "girth" => a.girth.to_string(),
        "sleeve_volume" => format_rational(&single),
        "volume" => format_rational(&a.volume),
        "volume_float" => float(to_f64(&a.volume)),
        "systole_lower_bound" => a.systole_lower_bound,
        "upper_bound_even" => float(a.upper_bound),
        "asymptotic_constant" => float(sleeve::asymptotic_constant(&model)),
        "handles" => a.handles.to_string(),
    };
    let mut report = Report::default();
    report.push(r, a.volume != expected || a.systole_lower_bound < 1);
    Ok(report)
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundMultipleArgs {
    /// Multiples: `a..b`, `a..b:step` or `k1,k2,...`.
    #[arg(long)]
    #[serde(deserialize_with = "text")]
    pub k: String,
    /// Constant of the `C k / ln(1 + k)` bound.
    #[arg(long = "C")]
    #[serde(rename = "C")]
    pub constant: f64,
}

pub fn bound_multiple(args: &BoundMultipleArgs) -> Result<Report> {
    let mut report = Report::default();
    let mut last_per_unit = f64::INFINITY;
    for k in parse_range(&args.k)? {
        let v = sleeve::multiple_class_bound(k, args.constant)?;
        let per_unit = v / k as f64;
        // Only meaningful for increasing k lists.
        let violated = per_unit > last_per_unit;
        last_per_unit = per_unit;
        report.push(
            row! { "k" => k, "C" => float(args.constant), "value" => float(v), "per_unit" => float(per_unit) },
            violated,
        );
    }
    Ok(report)
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaringArgs {
    #[arg(long)]
    pub k: u64,
    #[arg(long, default_value_t = 4)]
    #[serde(default = "four")]
    pub d: u32,
}

fn four() -> u32 {
    4
}

pub fn waring_decompose(args: &WaringArgs) -> Result<Report> {
    let dec = waring::min_powers(args.k, args.d)?;
    let bound = waring::waring_number(args.d)?;
    let verified = dec.verify();
    let r = row! {
        "k" => dec.k,
        "d" => dec.d,
        "count" => dec.count() as u64,
        "parts" => json_text(&dec.parts),
        "verified" => verified,
        "waring_number" => bound,
    };
    let mut report = Report::default();
    report.push(r, !verified || dec.count() as u64 > bound);
    Ok(report)
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaringVerifyArgs {
    #[arg(long, default_value_t = 4)]
    #[serde(default = "four")]
    pub d: u32,
    #[arg(long)]
    pub limit: u64,
}

pub fn waring_verify(args: &WaringVerifyArgs) -> Result<Report> {
    let bound = waring::waring_number(args.d)?;
    let r = waring::verify_waring(args.limit, args.d, bound as usize, waring::configured_cap())?;
    let row = row! {
        "d" => r.d,
        "limit" => r.limit,
        "max_count" => r.max_count as u64,
        "argmax" => json_text(&r.argmax),
        "bound" => r.bound as u64,
        "bound_holds" => r.bound_holds,
        "all_verified" => r.all_verified,
    };
    let mut report = Report::default();
    report.push(row, !(r.bound_holds && r.all_verified));
    Ok(report)
}

#[derive(Debug, Clone, Subcommand)]
pub enum GenfunCmd {
    /// Shortest exact linear recurrence.
    Detect(GenfunDetectArgs),
    /// Partial sum of the generating function at a rational point.
    Series(GenfunSeriesArgs),
    /// Compare terms with the multiple-class sandwich.
    Scan(GenfunScanArgs),
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenfunDetectArgs {
    /// Sequence JSON: `{"terms": ["3/2", "2", ...]}`.
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long, default_value_t = genfun::DEFAULT_MAX_ORDER)]
    #[serde(default = "default_max_order")]
    pub max_order: usize,
}

fn default_max_order() -> usize {
    genfun::DEFAULT_MAX_ORDER
}

fn load_sequence(path: &Path) -> Result<RationalSequence> {
    Ok(RationalSequence::from_json(&read(path)?)?)
}

pub fn genfun_detect(args: &GenfunDetectArgs) -> Result<Report> {
    let seq = load_sequence(&args.file)?;
    let v = genfun::detect_linear_recurrence(&seq, args.max_order)?;
    let coefficients: Vec<String> = v.coefficients.iter().map(format_rational).collect();
    Ok(Report::single(row! {
        "file" => args.file.display().to_string(),
        "terms" => seq.len() as u64,
        "max_order" => v.max_order as u64,
        "found" => v.found,
        "order" => v.order as u64,
        "coefficients" => json_text(&coefficients),
        "verified_prefix_length" => v.verified_prefix_length as u64,
    }))
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenfunSeriesArgs {
    #[arg(long)]
    pub file: PathBuf,
    /// Evaluation point, exact rational with |z| < 1.
    #[arg(long)]
    #[serde(deserialize_with = "text")]
    pub z: String,
    /// Number of terms; defaults to all.
    #[arg(long)]
    #[serde(default)]
    pub n: Option<usize>,
}

pub fn genfun_series(args: &GenfunSeriesArgs) -> Result<Report> {
    let seq = load_sequence(&args.file)?;
    let z: BigRational = parse_rational(&args.z)?;
    let n = args.n.unwrap_or(seq.len());
    let value = genfun::partial_series(&seq, &z, n)?;
    Ok(Report::single(row! {
        "file" => args.file.display().to_string(),
        "z" => format_rational(&z),
        "n" => n as u64,
        "value" => format_rational(&value),
        "value_float" => float(to_f64(&value)),
    }))
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenfunScanArgs {
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    #[serde(default = "one")]
    pub c_tilde: f64,
    #[arg(long, default_value_t = 1.0)]
    #[serde(default = "one")]
    pub c: f64,
}

fn one() -> f64 {
    1.0
}

pub fn genfun_scan(args: &GenfunScanArgs, ctx: &Ctx) -> Result<Report> {
    let seq = load_sequence(&args.file)?;
    let scan = genfun::sandwich_scan(seq.terms(), args.c_tilde, args.c, ctx.constants.m)?;
    let mut report = Report::default();
    for r in scan.rows {
        report.push(
            row! { "k" => r.k as u64, "value" => float(r.value), "lower" => float(r.lower), "upper" => float(r.upper), "inside" => r.inside },
            false,
        );
    }
    Ok(report)
}

pub fn corpus_list() -> Report {
    let mut report = Report::default();
    for e in corpus::list() {
        report.push(row! { "name" => e.name, "kind" => e.kind, "provenance" => e.provenance }, false);
    }
    report
}

#[derive(Debug, Clone, Subcommand)]
pub enum BoundsCmd {
    /// C_m h / exp(C'_m sqrt(ln h)).
    Height(HeightArgs),
    /// C''_m v / ln(2 + v)^m.
    Simvol(SimvolArgs),
    /// C_m ln t / exp(C'_m sqrt(ln ln t)).
    Torsion(TorsionArgs),
    /// 2 log_3 t.
    HeightFromTorsion(HeightFromTorsionArgs),
    /// Lower and upper bounds for multiples of a class.
    Sandwich(SandwichArgs),
    /// Lens space lower bound.
    Lens(LensArgs),
    /// 3-manifolds with finite fundamental group.
    #[command(name = "pi1-3manifold")]
    Pi1ThreeManifold(Pi1Args),
    /// Simplicial complexity from systolic area.
    Kappa(KappaArgs),
    /// Systolic area from simplicial complexity.
    Area(AreaArgs),
    /// Number of groups of bounded complexity.
    GroupCount(GroupCountArgs),
    /// Complexity of surface groups.
    Surface(SurfaceArgs),
    /// Complexity of free abelian groups.
    Abelian(AbelianArgs),
    /// Classes of the torus.
    Torus(TorusArgs),
    /// Nilmanifold classes through Waring decompositions.
    WaringNil(WaringNilArgs),
    /// Best upper bound for multiples by subadditive composition.
    Best(BestArgs),
    /// Run an experiment spec.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepArgs {
    #[arg(long)]
    pub spec: PathBuf,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeightArgs {
    #[arg(long)]
    pub h: f64,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimvolArgs {
    #[arg(long)]
    pub v: f64,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorsionArgs {
    #[arg(long)]
    pub t1: f64,
    /// Also test `(ln t)^(1-eps) <= value`.
    #[arg(long)]
    #[serde(default)]
    pub eps: Option<f64>,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeightFromTorsionArgs {
    #[arg(long)]
    pub t1: f64,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SandwichArgs {
    #[arg(long)]
    #[serde(deserialize_with = "text")]
    pub k: String,
    #[arg(long, default_value_t = 1.0)]
    #[serde(default = "one")]
    pub c_tilde: f64,
    #[arg(long, default_value_t = 1.0)]
    #[serde(default = "one")]
    pub c: f64,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LensArgs {
    #[arg(long)]
    pub n: u64,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pi1Args {
    #[arg(long)]
    pub order: u64,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KappaArgs {
    /// Systolic area, at least π/16.
    #[arg(long)]
    pub s: f64,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AreaArgs {
    #[arg(long)]
    pub kappa: f64,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupCountArgs {
    /// Complexity budget K.
    #[arg(long)]
    pub k: u64,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceArgs {
    /// Genus.
    #[arg(long)]
    pub l: u64,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianArgs {
    /// Rank.
    #[arg(long)]
    pub n: u64,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub m: u64,
    /// Systolic volume of the m-torus; falls back to the constants file.
    #[arg(long)]
    #[serde(default)]
    pub s_tm: Option<f64>,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaringNilArgs {
    #[arg(long, default_value_t = 4)]
    #[serde(default = "four")]
    pub d: u32,
    /// Systolic volume of the base class.
    #[arg(long)]
    pub s_a: f64,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BestArgs {
    #[arg(long)]
    #[serde(deserialize_with = "text")]
    pub k: String,
    /// Known bound for a multiple, as `j:value` (repeatable).
    #[arg(long)]
    #[serde(default, deserialize_with = "one_or_many")]
    pub base: Vec<String>,
    /// Constant of a `C k / ln(1 + k)` bound (repeatable).
    #[arg(long = "log-c")]
    #[serde(default, deserialize_with = "one_or_many")]
    pub log_c: Vec<f64>,
    /// Slope of a linear bound (repeatable).
    #[arg(long)]
    #[serde(default, deserialize_with = "one_or_many")]
    pub linear: Vec<f64>,
}

fn value_row(name: &str, value: f64) -> Row {
    row! { "bound" => name, "value" => float(value) }
}

pub fn bounds(cmd: &BoundsCmd, ctx: &Ctx) -> Result<Report> {
    let k = &ctx.constants;
    let mut report = Report::default();
    match cmd {
        BoundsCmd::Height(a) => {
            let mut r = value_row("height", bounds::height_lb(a.h, k)?);
            r.insert("h".into(), float(a.h));
            report.push(r, false);
        }
        BoundsCmd::Simvol(a) => {
            let mut r = value_row("simvol", bounds::simvol_lb(a.v, k)?);
            r.insert("v".into(), float(a.v));
            report.push(r, false);
        }
        BoundsCmd::Torsion(a) => {
            let mut r = value_row("torsion", bounds::torsion_lb(a.t1, k)?);
            r.insert("t1".into(), float(a.t1));
            if let Some(eps) = a.eps {
                r.insert("eps".into(), float(eps));
                r.insert("power_dominated".into(), Value::from(bounds::torsion_power_dominated(a.t1, eps, k)?));
            }
            report.push(r, false);
        }
        BoundsCmd::HeightFromTorsion(a) => {
            let mut r = value_row("height_from_torsion", bounds::height_from_torsion(a.t1)?);
            r.insert("t1".into(), float(a.t1));
            report.push(r, false);
        }
        BoundsCmd::Sandwich(a) => {
            for kk in parse_range(&a.k)? {
                let s = bounds::sandwich(kk, a.c_tilde, a.c, k.m)?;
                report.push(
                    row! { "k" => kk, "m" => k.m, "lower" => float(s.lower), "upper" => float(s.upper), "consistent" => s.consistent },
                    false,
                );
            }
        }
        BoundsCmd::Lens(a) => {
            let mut r = value_row("lens", bounds::lens_lb(a.n, k)?);
            r.insert("n".into(), Value::from(a.n));
            report.push(r, false);
        }
        BoundsCmd::Pi1ThreeManifold(a) => {
            let mut r = value_row("pi1_3manifold", bounds::finite_pi1_3manifold_lb(a.order, k)?);
            r.insert("order".into(), Value::from(a.order));
            r.insert("cyclic_cover_order".into(), Value::from(a.order.div_ceil(12)));
            report.push(r, false);
        }
        BoundsCmd::Kappa(a) => {
            let v = bounds::kappa_upper_from_systole(a.s)?;
            report.push(row! { "s" => float(a.s), "kappa_upper" => float(v.value), "alpha" => float(v.alpha) }, false);
        }
        BoundsCmd::Area(a) => {
            let mut r = value_row("systolic_area_upper", bounds::systolic_area_upper_from_kappa(a.kappa)?);
            r.insert("kappa".into(), float(a.kappa));
            report.push(r, false);
        }
        BoundsCmd::GroupCount(a) => {
            let b = bounds::group_count_bound(a.k)?;
            let r = row! {
                "K" => b.k,
                "M" => b.vertices,
                "triples" => b.triples.to_string(),
                "exponent" => format_rational(&b.exponent),
                "bound" => format!("2^({})", format_rational(&b.exponent)),
                "subsets_within_power" => b.subsets_within_power,
                "power_within_bound" => b.power_within_bound,
            };
            report.push(r, !b.chain_holds());
        }
        BoundsCmd::Surface(a) => {
            let (lo, hi) = bounds::surface_kappa_bounds(a.l)?;
            let ok = lo <= BigRational::from_integer(hi.clone());
            report.push(
                row! { "l" => a.l, "lower" => format_rational(&lo), "upper" => hi.to_string(), "consistent" => ok },
                !ok,
            );
        }
        BoundsCmd::Abelian(a) => {
            let (lo, hi) = bounds::abelian_kappa_bounds(a.n);
            report.push(row! { "n" => a.n, "lower" => lo.to_string(), "upper" => hi.to_string() }, lo > hi);
        }
        BoundsCmd::Torus(a) => {
            let s = a
                .s_tm
                .or(k.s_tm)
                .ok_or_else(|| anyhow!("no torus systolic volume: pass --s-tm or set s_tm in the constants file"))?;
            let mut r = value_row("torus_class", bounds::torus_class_bound(a.n, a.m, s)?);
            r.insert("n".into(), Value::from(a.n));
            r.insert("m".into(), Value::from(a.m));
            r.insert("s_tm".into(), float(s));
            report.push(r, false);
        }
        BoundsCmd::WaringNil(a) => {
            let kd = waring::waring_number(a.d)?;
            let mut r = value_row("waring_nil", bounds::waring_nil_bound(kd, a.s_a)?);
            r.insert("d".into(), Value::from(a.d));
            r.insert("waring_number".into(), Value::from(kd));
            r.insert("s_a".into(), float(a.s_a));
            report.push(r, false);
        }
        BoundsCmd::Best(a) => {
            let mut base = Vec::new();
            for item in &a.base {
                let (j, v) =
                    item.split_once(':').ok_or_else(|| anyhow!("base entries look like j:value, got {item:?}"))?;
                base.push((j.trim().parse()?, v.trim().parse()?));
            }
            let ingredients =
                UpperIngredients { base, log_constants: a.log_c.clone(), linear_slopes: a.linear.clone() };
            for kk in parse_range(&a.k)? {
                let v = bounds::best_upper_bound(kk, &ingredients)?;
                report.push(row! { "k" => kk, "best" => float(v), "per_unit" => float(v / kk as f64) }, false);
            }
        }
        BoundsCmd::Sweep(_) => bail!("sweeps are dispatched by the caller"),
    }
    Ok(report)
}

/// Run a command named as in a sweep spec on one grid point.
pub fn run_named(name: &str, params: Value, ctx: &Ctx) -> Result<Report> {
    fn args<T: serde::de::DeserializeOwned>(params: Value) -> Result<T> {
        serde_json::from_value(params).context("bad grid point")
    }
    let bounds_cmd = |sub: &str, p: Value| -> Result<BoundsCmd> {
        Ok(match sub {
            "height" => BoundsCmd::Height(args(p)?),
            "simvol" => BoundsCmd::Simvol(args(p)?),
            "torsion" => BoundsCmd::Torsion(args(p)?),
            "height-from-torsion" => BoundsCmd::HeightFromTorsion(args(p)?),
            "sandwich" => BoundsCmd::Sandwich(args(p)?),
            "lens" => BoundsCmd::Lens(args(p)?),
            "pi1-3manifold" => BoundsCmd::Pi1ThreeManifold(args(p)?),
            "kappa" => BoundsCmd::Kappa(args(p)?),
            "area" => BoundsCmd::Area(args(p)?),
            "group-count" => BoundsCmd::GroupCount(args(p)?),
            "surface" => BoundsCmd::Surface(args(p)?),
            "abelian" => BoundsCmd::Abelian(args(p)?),
            "torus" => BoundsCmd::Torus(args(p)?),
            "waring-nil" => BoundsCmd::WaringNil(args(p)?),
            "best" => BoundsCmd::Best(args(p)?),
            other => bail!("unknown bound {other:?}"),
        })
    };
    match name {
        "homology" => homology(&args(params)?),
        "check-torsion-bound" => check_torsion_bound(&args(params)?),
        "abelianize" => abelianize(&args(params)?),
        "girth" => girth(&args(params)?),
        "build-graph" => build_graph(&args(params)?, ctx),
        "sleeve" => sleeve(&args(params)?, ctx),
        "bound-multiple" => bound_multiple(&args(params)?),
        "waring" => waring_decompose(&args(params)?),
        "waring-verify" => waring_verify(&args(params)?),
        "genfun-detect" => genfun_detect(&args(params)?),
        "genfun-series" => genfun_series(&args(params)?),
        "genfun-scan" => genfun_scan(&args(params)?, ctx),
        "corpus" => Ok(corpus_list()),
        other => match other.strip_prefix("bounds.").or_else(|| other.strip_prefix("bounds ")) {
            Some(sub) => bounds(&bounds_cmd(sub, params)?, ctx),
            None => bail!("unknown command {other:?}"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_range("0..10:5").unwrap(), vec![0, 5, 10]);
        assert_eq!(parse_range("7, 3").unwrap(), vec![7, 3]);
        assert!(parse_range("5..1").is_err());
        assert!(parse_range("").is_err());
    }

    #[test]
    fn grid_points_deserialize_leniently() {
        let a: SleeveArgs =
            serde_json::from_value(serde_json::json!({"m": 3, "c": 7, "eps": "1/6", "construct": true})).unwrap();
        assert_eq!(a.eps, "1/6");
        let b: BoundMultipleArgs = serde_json::from_value(serde_json::json!({"k": 10, "C": 2.0})).unwrap();
        assert_eq!(b.k, "10");
        let c: ComplexArgs = serde_json::from_value(serde_json::json!({"corpus": "rp2_min"})).unwrap();
        assert_eq!(c.corpus, vec!["rp2_min".to_string()]);
        assert!(serde_json::from_value::<HeightArgs>(serde_json::json!({"h": 3, "x": 1})).is_err());
    }
}
