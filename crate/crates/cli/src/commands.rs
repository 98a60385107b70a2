//! Command-line grammar and the implementation of each subcommand.

use std::fmt::Write as _;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use milnor_alg::bigraded::{bigraded_ring, minimal_syzygy_search, SyzygySearch};
use milnor_alg::families::{
    classify_free_nearly_free, cone_over_plane_curve, generic_determinantal, generic_hyperplane_arrangement, plane_and_cone,
    random_smooth_surfaces, surface_arrangement, two_cones, SurfaceArrangement,
};
use milnor_alg::groebner::Ideal;
use milnor_alg::hilbert::{hilbert_series_of_quotient, HilbertReport};
use milnor_alg::milnor::{hessian_degree, isolated_bounds_check, jacobian_ideal, milnor_report, ReportOptions};
use milnor_alg::polyring::{
    format_polynomial, parse_polynomial, Field, FieldSpec, MonomialOrder, Polynomial, PrimeField, Rationals, Ring,
};
use milnor_alg::resolution::{betti_table, free_resolution, minimalize, ResolutionStatus};
use serde_json::json;

use crate::config::{CliError, Format, Outcome, RunConfig};
use crate::input::InputDoc;
use crate::verify::{self, SuiteOptions};

#[derive(Debug, Parser)]
#[command(name = "milnor", version, about = "Exact invariants of Milnor algebras of projective hypersurfaces")]
pub struct Cli {
    /// Coefficient field: a prime below 2^31, or QQ
    #[arg(long, global = true, default_value = "32003", value_parser = FieldSpec::parse)]
    pub field: FieldSpec,
    /// Seed for every random construction
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Stop resolutions and Gröbner bases above this degree
    #[arg(long, global = true)]
    pub degree_cap: Option<i64>,
    /// Stop resolutions after this many maps
    #[arg(long, global = true)]
    pub length_cap: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn config(&self) -> RunConfig {
        RunConfig { field: self.field, seed: self.seed, degree_cap: self.degree_cap, length_cap: self.length_cap, format: self.format }
    }
}

#[derive(Debug, Args)]
pub struct PolyInput {
    /// Polynomials, or an input document on stdin when omitted
    pub polys: Vec<String>,
    /// Number of variables; inferred from the input otherwise
    #[arg(long)]
    pub nvars: Option<usize>,
    /// Use the bigraded ring k[x0,x1;x2,x3]
    #[arg(long)]
    pub bigraded: bool,
    /// Treat the single polynomial given as a hypersurface and work with its
    /// Jacobian ideal
    #[arg(long)]
    pub jacobian: bool,
}

impl PolyInput {
    fn document(&self) -> Result<InputDoc, CliError> {
        if self.polys.is_empty() {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            let mut doc = InputDoc::parse(&s)?;
            if self.jacobian && doc.hypersurface.is_none() && doc.generators.len() == 1 {
                doc.hypersurface = doc.generators.pop();
            }
            Ok(doc)
        } else {
            InputDoc::from_args(&self.polys, self.jacobian)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Grevlex,
    Lex,
    Elim,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced Gröbner basis of an ideal
    Gb {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long, value_enum, default_value_t = OrderArg::Grevlex)]
        order: OrderArg,
        /// Number of eliminated leading variables for `--order elim`
        #[arg(long, default_value_t = 1)]
        block: usize,
    },
    /// Hilbert function, polynomial and stability threshold of S/I
    Hilbert {
        #[command(flatten)]
        input: PolyInput,
        /// Number of Hilbert function values to print
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Minimal free resolution and Betti table of S/I
    Resolve {
        #[command(flatten)]
        input: PolyInput,
    },
    /// Every invariant of the Milnor algebra of one hypersurface
    MilnorReport {
        #[command(flatten)]
        input: PolyInput,
        /// Degree window for N(f), as `lo..hi`
        #[arg(long, value_parser = parse_window)]
        n_window: Option<(i64, i64)>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Build a hypersurface from one of the standard families
    Family {
        #[command(subcommand)]
        kind: FamilyKind,
    },
    /// Minimal bigraded syzygy search for a bihomogeneous surface
    BigradedSyzygy {
        /// Degree in x0, x1
        #[arg(long)]
        k: Option<u32>,
        /// Total degree
        #[arg(long)]
        d: Option<u32>,
        /// Explicit bihomogeneous polynomial instead of a random one
        #[arg(long, conflicts_with_all = ["k", "d"])]
        poly: Option<String>,
    },
    /// Run the acceptance suite
    Verify {
        /// Include the degree 8 surface in item 3
        #[arg(long)]
        extended: bool,
        /// Run item 9 with a deliberately broken minimalization
        #[arg(long, hide = true)]
        mutate_minimalize: bool,
        /// Seeds to run the suite under; verdicts must agree across them
        #[arg(long, value_delimiter = ',')]
        seeds: Vec<u64>,
        /// Only these items
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SurfacePreset {
    PlaneCone,
    TwoCones,
}

#[derive(Debug, Subcommand)]
pub enum FamilyKind {
    /// Cone over a plane curve g(x0, x1, x2)
    Cone {
        #[arg(long)]
        curve: String,
    },
    /// Product of d generic linear forms in P^n
    Arrangement {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Determinant of the generic or the generic symmetric n × n matrix
    Determinantal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        symmetric: bool,
        /// Allow n above the default cap
        #[arg(long)]
        allow_large: bool,
    },
    /// Union of surfaces in P^3
    Surfaces {
        /// Components in the polynomial grammar
        components: Vec<String>,
        #[arg(long, value_enum, conflicts_with = "components")]
        preset: Option<SurfacePreset>,
        /// Degree parameter of the preset
        #[arg(long, default_value_t = 2)]
        d: u16,
        /// Random smooth components of these degrees
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["components", "preset"])]
        random: Vec<u32>,
    },
    /// Random bihomogeneous surface of bidegree (k, d-k)
    Bigraded {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        d: u32,
    },
    /// A hypersurface given explicitly
    Explicit {
        poly: String,
        #[arg(long)]
        nvars: Option<usize>,
    },
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got '{s}'"))?;
    let lo = a.trim().parse().map_err(|_| format!("bad bound '{a}'"))?;
    let hi = b.trim().parse().map_err(|_| format!("bad bound '{b}'"))?;
    if lo > hi {
        return Err(format!("empty window {s}"));
    }
    Ok((lo, hi))
}

macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            FieldSpec::Rationals => {
                let $f = Rationals;
                $body
            }
            FieldSpec::Prime(p) => {
                let $f = PrimeField::new(p);
                $body
            }
        }
    };
}

/// Runs one parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = cli.config();
    with_field!(cfg.field, field => dispatch(field, &cli.command, &cfg))
}

fn dispatch<F: Field>(field: F, cmd: &Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cmd {
        Command::Gb { input, order, block } => {
            let order = match order {
                OrderArg::Grevlex => MonomialOrder::Grevlex,
                OrderArg::Lex => MonomialOrder::Lex,
                OrderArg::Elim => MonomialOrder::Elimination { block: *block },
            };
            gb(field, input, order, cfg)
        }
        Command::Hilbert { input, samples } => hilbert(field, input, *samples, cfg),
        Command::Resolve { input } => resolve(field, input, cfg),
        Command::MilnorReport { input, n_window, samples } => report(field, input, *n_window, *samples, cfg),
        Command::Family { kind } => family(field, kind, cfg),
        Command::BigradedSyzygy { k, d, poly } => bigraded_syzygy(field, *k, *d, poly.as_deref(), cfg),
        Command::Verify { extended, mutate_minimalize, seeds, only } => {
            let opts = SuiteOptions { extended: *extended, mutate_minimalize: *mutate_minimalize, only: only.clone() };
            let seeds = if seeds.is_empty() { vec![cfg.seed] } else { seeds.clone() };
            let summary = verify::run_seeds(field, &seeds, &opts);
            let mut json = summary.to_json();
            json["config"] = config_json(cfg);
            Ok(Outcome { text: format!("{}\n{}", cfg.header("verify"), summary.to_text()), json, verified: summary.passed() })
        }
    }
}

fn config_json(cfg: &RunConfig) -> serde_json::Value {
    serde_json::to_value(cfg).expect("config serializes")
}

/// The ideal a command works on: `J_f` for a hypersurface document, the
/// listed generators otherwise.
fn target<F: Field>(field: F, input: &PolyInput) -> Result<(Ideal<F>, Option<Polynomial<F>>), CliError> {
    let doc = input.document()?;
    let ring = doc.ring(field, input.nvars, input.bigraded)?;
    let gens = doc.generators(&ring)?;
    match doc.hypersurface(&ring)? {
        Some(f) if gens.is_empty() => Ok((jacobian_ideal(&f)?, Some(f))),
        Some(_) => Err(CliError::Usage("give either a hypersurface or ideal generators, not both".into())),
        None if gens.is_empty() => Err(CliError::Usage("no polynomials given".into())),
        None => Ok((Ideal::new(&ring, gens), None)),
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn gb<F: Field>(field: F, input: &PolyInput, order: MonomialOrder, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (ideal, _) = target(field, input)?;
    let basis = match (order, cfg.degree_cap) {
        (MonomialOrder::Grevlex, None) => ideal.groebner_basis().clone(),
        (o, cap) => milnor_alg::groebner::buchberger_capped(&ideal, o, cap),
    };
    let elems: Vec<String> = basis.elements().iter().map(format_polynomial).collect();
    let mut text = cfg.header("gb");
    let _ = writeln!(text, "\norder: {order:?}");
    let _ = writeln!(text, "complete: {}", basis.is_complete());
    let _ = writeln!(text, "elements: {}", elems.len());
    for e in &elems {
        let _ = writeln!(text, "{e}");
    }
    let json = json!({
        "config": config_json(cfg),
        "order": order,
        "complete": basis.is_complete(),
        "basis": elems,
    });
    Ok(Outcome::ok(text, json))
}

fn hilbert<F: Field>(field: F, input: &PolyInput, samples: Option<usize>, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (ideal, f) = target(field, input)?;
    let series = hilbert_series_of_quotient(&ideal);
    let default = match &f {
        Some(f) => (hessian_degree(f.ring().nvars(), f.homogeneous_degree().unwrap_or(2)) + 3).max(1) as usize,
        None => 10,
    };
    let rep = HilbertReport::new(&series, samples.unwrap_or(default));
    let opt = |x: Option<i64>| x.map_or("none".to_string(), |v| v.to_string());
    let mut text = cfg.header("hilbert");
    let _ = writeln!(text, "\nHF: {}", join(&rep.hf_samples));
    let _ = writeln!(text, "HP: {}", rep.hp.display());
    let _ = writeln!(text, "st: {}", opt(rep.st));
    let _ = writeln!(text, "dim: {}", series.dimension());
    let _ = writeln!(text, "numerator: {}", join(&series.numerator));
    let mut json = serde_json::to_value(&rep).expect("report serializes");
    json["config"] = config_json(cfg);
    json["dim"] = json!(series.dimension());
    json["numerator"] = json!(series.numerator);
    Ok(Outcome::ok(text, json))
}

fn status_text(s: ResolutionStatus) -> String {
    match s {
        ResolutionStatus::Complete => "complete".into(),
        ResolutionStatus::Truncated { length, degree } => {
            let mut parts = Vec::new();
            if length {
                parts.push("length cap");
            }
            if degree {
                parts.push("degree cap");
            }
            format!("truncated ({})", parts.join(", "))
        }
    }
}

fn resolve<F: Field>(field: F, input: &PolyInput, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (ideal, _) = target(field, input)?;
    let nvars = ideal.ring().nvars();
    let res = minimalize(&free_resolution(&ideal, cfg.length_cap, cfg.degree_cap)?);
    let table = betti_table(&res)?;
    let complete = res.is_complete();
    let reg = table.regularity();
    let pd = table.projective_dimension();
    let depth = if complete { pd.map(|p| nvars - p) } else { None };
    let check = complete.then(|| table.hilbert_series() == hilbert_series_of_quotient(&ideal));
    let opt = |x: Option<i64>| x.map_or("none".to_string(), |v| v.to_string());
    let mut text = cfg.header("resolve");
    text.push('\n');
    text.push_str(&table.to_text());
    let bound = if complete { "" } else { " (lower bound)" };
    let _ = writeln!(text, "reg: {}{bound}", opt(reg));
    let _ = writeln!(text, "pd: {}{bound}", opt(pd.map(|x| x as i64)));
    let _ = writeln!(text, "depth: {}", opt(depth.map(|x| x as i64)));
    let _ = writeln!(text, "status: {}", status_text(res.status()));
    if let Some(ok) = check {
        let _ = writeln!(text, "hilbert series check: {}", if ok { "pass" } else { "FAIL" });
    }
    let mut bidegrees = Vec::new();
    for i in 0..=res.length() {
        if let Some(b) = table.bidegrees(i) {
            let _ = writeln!(text, "bidegrees F_{i}: {}", b.iter().map(|(a, b)| format!("({a},{b})")).collect::<Vec<_>>().join(" "));
            bidegrees.push(b);
        }
    }
    let mut json = json!({
        "config": config_json(cfg),
        "betti": table.to_json(),
        "reg": reg,
        "pd": pd,
        "depth": depth,
        "exact": complete,
        "status": res.status(),
        "hilbert_series_check": check,
    });
    if !bidegrees.is_empty() {
        json["bidegrees"] = json!(bidegrees);
    }
    Ok(Outcome { text, json, verified: check != Some(false) })
}

fn report<F: Field>(
    field: F,
    input: &PolyInput,
    window: Option<(i64, i64)>,
    samples: Option<usize>,
    cfg: &RunConfig,
) -> Result<Outcome, CliError> {
    let doc = input.document()?;
    let ring = doc.ring(field, input.nvars, input.bigraded)?;
    let f = match (doc.hypersurface(&ring)?, doc.generators(&ring)?.as_slice()) {
        (Some(f), []) => f,
        (None, [f]) => f.clone(),
        _ => return Err(CliError::Usage("milnor-report takes exactly one hypersurface".into())),
    };
    let opts = ReportOptions { length_cap: cfg.length_cap, degree_cap: cfg.degree_cap, n_window: window, hf_samples: samples };
    let rep = milnor_report(&f, &opts)?;
    let invariants = rep.invariants();
    let verified = invariants.iter().all(|(_, ok)| *ok != Some(false));
    let freeness = rep.exact.then(|| classify_free_nearly_free(&rep.betti, rep.d as i64));
    let isolated = isolated_bounds_check(&rep).ok();
    let mut text = cfg.header("milnor-report");
    let _ = writeln!(text, "\nf: {}", format_polynomial(&f));
    text.push_str(&rep.to_text());
    for (name, ok) in &invariants {
        let v = match ok {
            Some(true) => "pass",
            Some(false) => "FAIL",
            None => "unknown",
        };
        let _ = writeln!(text, "check {name}: {v}");
    }
    if let Some(fr) = &freeness {
        let _ = writeln!(text, "freeness: {}", serde_json::to_value(fr).expect("serializes")["kind"].as_str().unwrap_or("?"));
    }
    if let Some(iso) = &isolated {
        let b = |x: Option<i64>| x.map_or("none".to_string(), |v| v.to_string());
        let _ = writeln!(
            text,
            "isolated bounds ({:?}): st <= {} ({}), reg <= {} ({})",
            iso.branch,
            b(iso.st_bound),
            iso.st_ok,
            b(iso.reg_bound),
            iso.reg_ok
        );
    }
    let mut json = rep.to_json();
    json["config"] = config_json(cfg);
    json["f"] = json!(format_polynomial(&f));
    json["invariants"] = invariants.iter().map(|(n, ok)| json!({"name": n, "holds": ok})).collect();
    json["freeness"] = json!(freeness);
    json["isolated_bounds"] = json!(isolated);
    Ok(Outcome { text, json, verified })
}

/// Text and JSON for a family member, readable back as an input document.
fn family_document<F: Field>(name: &str, f: &Polynomial<F>, extra: Vec<(String, String)>, cfg: &RunConfig) -> Outcome {
    let ring = f.ring();
    let bigraded = !matches!(ring.grading(), milnor_alg::polyring::Grading::Standard);
    let mut text = cfg.header(&format!("family {name}"));
    let _ = writeln!(text, "\nfamily: {name}");
    let _ = writeln!(text, "nvars: {}", ring.nvars());
    if bigraded {
        let _ = writeln!(text, "grading: bigraded");
    }
    for (k, v) in &extra {
        let _ = writeln!(text, "{k}: {v}");
    }
    let _ = writeln!(text, "hypersurface: {}", format_polynomial(f));
    let mut json = json!({
        "config": config_json(cfg),
        "family": name,
        "nvars": ring.nvars(),
        "degree": f.homogeneous_degree(),
        "hypersurface": format_polynomial(f),
    });
    if bigraded {
        json["grading"] = json!("bigraded");
    }
    for (k, v) in extra {
        json[k] = json!(v);
    }
    Outcome::ok(text, json)
}

fn family<F: Field>(field: F, kind: &FamilyKind, cfg: &RunConfig) -> Result<Outcome, CliError> {
    match kind {
        FamilyKind::Cone { curve } => {
            let g = parse_polynomial(&Ring::new(field, 3), curve)?;
            let f = cone_over_plane_curve(&g)?;
            Ok(family_document("cone", &f, vec![("curve".into(), format_polynomial(&g))], cfg))
        }
        FamilyKind::Arrangement { n, d } => {
            let a = generic_hyperplane_arrangement(field, *n, *d, cfg.seed)?;
            let extra = a.forms.iter().map(|l| ("form".to_string(), format_polynomial(l))).collect();
            let mut out = family_document("arrangement", &a.f, extra, cfg);
            out.json["forms"] = a.forms.iter().map(format_polynomial).collect();
            Ok(out)
        }
        FamilyKind::Determinantal { n, symmetric, allow_large } => {
            let det = generic_determinantal(field, *n, *symmetric, *allow_large)?;
            let name = if *symmetric { "determinantal-symmetric" } else { "determinantal" };
            Ok(family_document(name, &det.f, vec![("size".into(), n.to_string())], cfg))
        }
        FamilyKind::Surfaces { components, preset, d, random } => {
            let ring = Ring::new(field, 4);
            let arr = if let Some(p) = preset {
                match p {
                    SurfacePreset::PlaneCone => plane_and_cone(&ring, *d)?,
                    SurfacePreset::TwoCones => two_cones(&ring, *d)?,
                }
            } else if !random.is_empty() {
                surface_arrangement(random_smooth_surfaces(&ring, random, cfg.seed)?)?
            } else if !components.is_empty() {
                let comps = components.iter().map(|c| parse_polynomial(&ring, c)).collect::<Result<Vec<_>, _>>()?;
                surface_arrangement(comps)?
            } else {
                return Err(CliError::Usage("give components, --preset or --random".into()));
            };
            surfaces_document(&arr, cfg)
        }
        FamilyKind::Bigraded { k, d } => {
            let f = verify::certified_bigraded(field, *k, *d, cfg.seed)?.0;
            Ok(family_document("bigraded", &f, vec![("bidegree".into(), format!("({k},{})", d - k))], cfg))
        }
        FamilyKind::Explicit { poly, nvars } => {
            let doc = InputDoc::from_args(std::slice::from_ref(poly), true)?;
            let ring = doc.ring(field, *nvars, false)?;
            let f = doc.hypersurface(&ring)?.expect("hypersurface present");
            Ok(family_document("explicit", &f, Vec::new(), cfg))
        }
    }
}

fn surfaces_document<F: Field>(arr: &SurfaceArrangement<F>, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let degrees = arr.degrees();
    let mut extra: Vec<(String, String)> = arr.components.iter().map(|c| ("component".to_string(), format_polynomial(c))).collect();
    extra.push(("degrees".into(), join(&degrees)));
    let mut out = family_document("surfaces", &arr.f, extra, cfg);
    let factors = arr.jacobian_factors();
    let minors = arr.psi_minors_match();
    let saturated = arr.saturation_is_ideal()?;
    let bounds = milnor_alg::milnor::Codim2Bounds::for_arrangement(&degrees).ok();
    let _ = writeln!(out.text, "# jacobian = (g_i) * H: {factors}");
    let _ = writeln!(out.text, "# maximal minors of psi are the g_i: {minors}");
    let _ = writeln!(out.text, "# saturation of J_f equals (g_i): {saturated}");
    if let Some(b) = &bounds {
        let _ = writeln!(out.text, "# st bound: {}, reg bound: {}", b.st_bound, b.reg_bound);
    }
    out.json["components"] = arr.components.iter().map(format_polynomial).collect();
    out.json["jacobian_factors"] = json!(factors);
    out.json["psi_minors_match"] = json!(minors);
    out.json["saturation_is_ideal"] = json!(saturated);
    out.json["bounds"] = json!(bounds);
    Ok(out)
}

fn bigraded_syzygy<F: Field>(field: F, k: Option<u32>, d: Option<u32>, poly: Option<&str>, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (f, samples) = match (k, d, poly) {
        (_, _, Some(p)) => (parse_polynomial(&bigraded_ring(field), p)?, 0),
        (Some(k), Some(d), None) => verify::certified_bigraded(field, k, d, cfg.seed)?,
        _ => return Err(CliError::Usage("give --k and --d, or --poly".into())),
    };
    let s: SyzygySearch = minimal_syzygy_search(&f)?;
    let mut text = cfg.header("bigraded-syzygy");
    let _ = writeln!(text);
    let _ = writeln!(text, "k: {}", s.k);
    let _ = writeln!(text, "d: {}", s.d);
    let _ = writeln!(text, "mu: {}", s.mu);
    if samples > 0 {
        let _ = writeln!(text, "samples: {samples}");
    }
    let _ = writeln!(text, "bidegree: ({},{})", s.bidegree.0, s.bidegree.1);
    let _ = writeln!(text, "predicted: ({},{})", s.predicted.0, s.predicted.1);
    let _ = writeln!(text, "total degree: {}", s.total_degree);
    let _ = writeln!(text, "certificate: {}", if s.certificate.passed { "passed" } else { "failed" });
    let _ = writeln!(text, "reg lower bound: {}", s.regularity_lower_bound);
    let mut json = serde_json::to_value(&s).expect("search serializes");
    json["config"] = config_json(cfg);
    json["samples"] = json!(samples);
    if poly.is_some() {
        json["f"] = json!(format_polynomial(&f));
    }
    Ok(Outcome { text, json, verified: s.bidegree == s.predicted })
}
