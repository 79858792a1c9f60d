use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qfold::canonical::{canonical_slice_cached, CanonicalSlice, DiskCache};
use qfold::cartan::{builtin, DatumJson};
use qfold::fold::{congruence_report, CongruenceRow, Folding};
use qfold::freealg::FreeElt;
use qfold::pbw::PbwBasis;
use qfold::qarith::{BaseRing, LaurentPoly};
use qfold::weyl::{parse_word, root_name, word_string, RootSystem};
use qfold::{Error, Result};
use qfold_cli::suites::{self, Options};

#[derive(Parser)]
#[command(name = "qfold", version, about = "PBW bases, canonical bases and folding checks for small-rank quantum groups")]
struct Cli {
    /// Cartan type: A1, A2, A3, B2, G2, D4, A2xA2, ...
    #[arg(long = "type", global = true)]
    ty: Option<String>,
    /// Folding X:ulX, one of A2xA2:A2, A3:B2, D4:G2.
    #[arg(long, global = true)]
    pair: Option<String>,
    /// Height bound (default per type: 6, or 5 for A2xA2, 4 for D4/G2).
    #[arg(long, global = true)]
    height: Option<u32>,
    /// Reduced word of the longest element, e.g. 2,1,2,1.
    #[arg(long, global = true)]
    hword: Option<String>,
    #[arg(long, global = true, value_enum)]
    out: Option<Format>,
    /// Directory of the canonical-slice cache (default: $QFOLD_CACHE).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Include wall times in reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Tex,
}

#[derive(Subcommand)]
enum Command {
    /// Print a Cartan datum, or a folding with its folded datum.
    Datum,
    /// Positive roots in the order given by a reduced word.
    Roots,
    /// Expand an element of U_q⁻, e.g. "f2 f1 - q f1 f2", in a PBW basis.
    PbwExpand { expr: String },
    /// Canonical basis in PBW coordinates, weight by weight.
    Canonical,
    /// Lemma, PBW-unit, surjectivity and bijection checks for a folding.
    FoldCheck,
    /// Canonical-basis coefficients of both sides of a folding, compared mod ε.
    Congruence,
    /// Run a verification suite: serre, pbw-orth, canonical, section3, section4, fold, congruence, all.
    Verify { suite: String },
    /// Manage the canonical-slice cache.
    Cache {
        #[command(subcommand)]
        op: CacheOp,
    },
}

#[derive(Subcommand)]
enum CacheOp {
    List,
    Clear,
    Path,
}

enum Failure {
    Usage(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Run = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn usage(m: impl Into<String>) -> Failure {
    Failure::Usage(m.into())
}

fn format(cli: &Cli, allowed: &[Format]) -> std::result::Result<Format, Failure> {
    let f = cli.out.unwrap_or(allowed[0]);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(usage("this output format is not available for this command"))
    }
}

fn cache(cli: &Cli) -> Option<Arc<DiskCache>> {
    match &cli.cache_dir {
        Some(d) => Some(Arc::new(DiskCache::new(d))),
        None => DiskCache::from_env().map(Arc::new),
    }
}

fn datum_of(cli: &Cli) -> Result<Arc<qfold::cartan::CartanDatum>> {
    let ty = cli.ty.as_deref().ok_or_else(|| Error::Parse("--type is required".into()))?;
    suites::datum(ty)
}

fn word_of(cli: &Cli, d: &Arc<qfold::cartan::CartanDatum>) -> Result<Vec<usize>> {
    let rs = RootSystem::new(d.clone())?;
    match &cli.hword {
        Some(s) => {
            let w = parse_word(d, s)?;
            if !rs.is_longest_word(&w) {
                return Err(Error::Parse(format!("{s} is not a reduced word of the longest element")));
            }
            Ok(w)
        }
        None => Ok(rs.longest_element().1),
    }
}

fn exps(c: &[u32]) -> String {
    let v: Vec<String> = c.iter().map(u32::to_string).collect();
    format!("({})", v.join(","))
}

fn tex_poly(p: &LaurentPoly) -> String {
    let s = p.to_string();
    let mut out = String::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        out.push(c);
        if c == '^' {
            let mut e = String::new();
            while let Some(&d) = chars.peek() {
                if d == '-' && e.is_empty() || d.is_ascii_digit() {
                    e.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push_str(&format!("{{{e}}}"));
        }
    }
    out
}

fn run(cli: &Cli) -> Run {
    let mut out = std::io::stdout().lock();
    let mut emit = |s: String| {
        let _ = out.write_all(s.as_bytes());
    };
    match &cli.command {
        Command::Datum => {
            let fmt = format(cli, &[Format::Text, Format::Json])?;
            if let Some(p) = &cli.pair {
                let f = Folding::builtin(p)?;
                if fmt == Format::Json {
                    let v = json!({
                        "x": DatumJson::from_datum(f.x(), Some(f.aut())),
                        "folded": DatumJson::from_datum(f.ulx(), None),
                        "eps": f.eps(),
                        "orbits": (0..f.ulx().rank()).map(|e| f.orbit(e).iter().map(|&i| f.x().label(i).to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    });
                    emit(format!("{v:#}\n"));
                } else {
                    emit(describe(f.x()));
                    emit(format!("ε = {}\n", f.eps()));
                    for e in 0..f.ulx().rank() {
                        let o: Vec<&str> = f.orbit(e).iter().map(|&i| f.x().label(i)).collect();
                        emit(format!("orbit {} = {{{}}}\n", f.ulx().label(e), o.join(", ")));
                    }
                    emit("folded:\n".into());
                    emit(describe(f.ulx()));
                }
            } else {
                let ty = cli.ty.as_deref().ok_or_else(|| usage("--type or --pair is required"))?;
                let (d, aut) = builtin(ty)?;
                if fmt == Format::Json {
                    emit(format!("{:#}\n", json!(DatumJson::from_datum(&d, aut.as_ref()))));
                } else {
                    emit(describe(&d));
                }
            }
        }
        Command::Roots => {
            let fmt = format(cli, &[Format::Text, Format::Json])?;
            let d = datum_of(cli)?;
            let h = word_of(cli, &d)?;
            let rs = RootSystem::new(d.clone())?;
            let betas = rs.beta_sequence(&h)?;
            if fmt == Format::Json {
                let v: Vec<_> = betas.iter().zip(&h).map(|(b, &i)| json!({"letter": d.label(i), "root": b, "name": root_name(&d, b)})).collect();
                emit(format!("{:#}\n", json!({"h": word_string(&d, &h), "roots": v})));
            } else {
                emit(format!("h = {}\n", word_string(&d, &h)));
                for (k, (b, &i)) in betas.iter().zip(&h).enumerate() {
                    emit(format!("{:>3}  {:<3} {}\n", k + 1, d.label(i), root_name(&d, b)));
                }
            }
        }
        Command::PbwExpand { expr } => {
            let fmt = format(cli, &[Format::Text, Format::Json])?;
            let d = datum_of(cli)?;
            let h = word_of(cli, &d)?;
            let x = FreeElt::parse(&d, BaseRing::Integers, expr)?;
            let basis = PbwBasis::get(&d, BaseRing::Integers, &h)?;
            let e = basis.expand(&x)?;
            if fmt == Format::Json {
                let v: Vec<_> = e.coords.iter().map(|(c, a)| json!([c, a.to_string()])).collect();
                emit(format!("{:#}\n", json!({"h": word_string(&d, &h), "coords": v})));
            } else if e.coords.is_empty() {
                emit("0\n".into());
            } else {
                for (c, a) in &e.coords {
                    emit(format!("({a}) L{}\n", exps(c)));
                }
            }
        }
        Command::Canonical => {
            let fmt = format(cli, &[Format::Text, Format::Json, Format::Tex])?;
            let d = datum_of(cli)?;
            let h = word_of(cli, &d)?;
            let height = cli.height.unwrap_or_else(|| suites::default_height(d.name()));
            let basis = PbwBasis::get(&d, BaseRing::Integers, &h)?;
            let c = cache(cli);
            for w in suites::weights_up_to(d.rank(), height) {
                let s = canonical_slice_cached(&basis, &w, c.as_deref())?;
                emit(match fmt {
                    Format::Json => format!("{}\n", serde_json::to_string(&*s).map_err(|e| usage(e.to_string()))?),
                    Format::Tex => slice_tex(&s),
                    _ => slice_text(&s),
                });
            }
        }
        Command::FoldCheck => {
            let fmt = format(cli, &[Format::Text, Format::Json])?;
            let pair = cli.pair.clone().ok_or_else(|| usage("--pair is required"))?;
            return report(cli, "fold", Options { pair: Some(pair), ..options(cli) }, fmt, &mut emit);
        }
        Command::Congruence => {
            let fmt = format(cli, &[Format::Csv, Format::Text, Format::Json])?;
            let pair = cli.pair.as_deref().ok_or_else(|| usage("--pair is required"))?;
            let f = Folding::builtin(pair)?;
            let ulh = match &cli.hword {
                Some(s) => parse_word(f.ulx(), s)?,
                None => qfold_cli::identities::reference_word(&f.name()),
            };
            if !f.longest_words().contains(&ulh) {
                return Err(usage("--hword is not a reduced word of the folded longest element"));
            }
            let height = cli.height.unwrap_or_else(|| suites::default_height(&f.name()));
            let c = cache(cli);
            let mut rows: Vec<CongruenceRow> = Vec::new();
            for w in f.weights_up_to(height) {
                rows.extend(congruence_report(&f, &w, &ulh, c.as_deref())?);
            }
            match fmt {
                Format::Json => {
                    let v: Vec<_> = rows
                        .iter()
                        .map(|r| json!({"weight": r.weight, "ulc": r.ulc, "uld": r.uld, "a_uld": r.a_ul.to_string(), "a_d": r.a_x.to_string(), "congruent": r.congruent}))
                        .collect();
                    emit(format!("{:#}\n", json!(v)));
                }
                Format::Csv => {
                    emit(format!("{}\n", CongruenceRow::CSV_HEADER));
                    for r in &rows {
                        emit(format!("{}\n", r.csv()));
                    }
                }
                _ => {
                    for r in &rows {
                        emit(format!(
                            "{} {} {}: {} | {} {}\n",
                            exps(&r.weight),
                            exps(&r.ulc),
                            exps(&r.uld),
                            r.a_ul,
                            r.a_x,
                            if r.congruent { "ok" } else { "NOT CONGRUENT" }
                        ));
                    }
                }
            }
            if rows.iter().any(|r| !r.congruent) {
                return Err(Failure::Check);
            }
        }
        Command::Verify { suite } => {
            let fmt = format(cli, &[Format::Text, Format::Json])?;
            if !suites::SUITES.contains(&suite.as_str()) {
                return Err(usage(format!("unknown suite {suite:?}; expected one of {}", suites::SUITES.join(", "))));
            }
            return report(cli, suite, options(cli), fmt, &mut emit);
        }
        Command::Cache { op } => {
            let c = cache(cli).ok_or_else(|| usage("no cache directory: pass --cache-dir or set QFOLD_CACHE"))?;
            match op {
                CacheOp::Path => emit(format!("{}\n", c.path().display())),
                CacheOp::Clear => c.clear()?,
                CacheOp::List => {
                    for (d, h, w, m) in c.list()? {
                        let m = m.map_or(String::new(), |m| format!(" mod {m}"));
                        emit(format!("{d} h={h:?} weight={w:?}{m}\n"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn options(cli: &Cli) -> Options {
    Options { height: cli.height, ty: cli.ty.clone(), pair: cli.pair.clone(), hword: cli.hword.clone(), cache: cache(cli) }
}

fn report(cli: &Cli, suite: &str, opts: Options, fmt: Format, emit: &mut impl FnMut(String)) -> Run {
    let r = suites::run_suite(suite, &opts)?;
    if fmt == Format::Json {
        emit(format!("{:#}\n", r.to_json(cli.timing)));
    } else {
        emit(r.to_text(cli.timing));
    }
    if r.passed() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn describe(d: &qfold::cartan::CartanDatum) -> String {
    let mut s = format!("{}  labels {}\n", d.name(), d.labels().join(" "));
    s.push_str("form (α_i, α_j):\n");
    for row in d.form_matrix() {
        let r: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        s.push_str(&format!("  {}\n", r.join("")));
    }
    let ds: Vec<String> = (0..d.rank()).map(|i| d.d(i).to_string()).collect();
    s.push_str(&format!("d_i: {}\n", ds.join(" ")));
    s
}

fn slice_text(s: &CanonicalSlice) -> String {
    let mut out = format!("weight {}\n", exps(&s.weight));
    for (i, row) in s.rows.iter().enumerate() {
        let terms: Vec<String> = row
            .iter()
            .zip(&s.cs)
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, d)| if a.is_one() { format!("L{}", exps(d)) } else { format!("({a}) L{}", exps(d)) })
            .collect();
        out.push_str(&format!("  b{} = {}\n", exps(&s.cs[i]), terms.join(" + ")));
    }
    out
}

fn slice_tex(s: &CanonicalSlice) -> String {
    let mut out = format!("% weight {}\n\\begin{{align*}}\n", exps(&s.weight));
    for (i, row) in s.rows.iter().enumerate() {
        let terms: Vec<String> = row
            .iter()
            .zip(&s.cs)
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, d)| {
                if a.is_one() {
                    format!("L{}", exps(d))
                } else {
                    format!("({})L{}", tex_poly(a), exps(d))
                }
            })
            .collect();
        out.push_str(&format!("b{} &= {} \\\\\n", exps(&s.cs[i]), terms.join(" + ")));
    }
    out.push_str("\\end{align*}\n");
    out
}
