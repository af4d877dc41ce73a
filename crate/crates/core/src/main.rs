use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hhloop::barcobar::{cobar_of_bar, minimalize, BarComplex, BarHomologyRing, FreeDgaModel};
use hhloop::builtins;
use hhloop::dga::{format_combination, validate, Dga};
use hhloop::ffla::SparseVec;
use hhloop::hochschild::{rho_star, ChainProduct, HochschildComplex, HomologyPresentation, ShuffleProduct};
use hhloop::input::parse_input;
use hhloop::shcmodel::{lift_hat_differential, lift_mu, mu0_through_minimalization, Mu0, SectionStrategy, ShcContext, ShcProduct};
use hhloop::{Error, Result};

/// Degree through which the built-in G₂ model is known.
const G2_COMPLETE: usize = 12;

#[derive(Parser, Debug)]
#[command(name = "hhloop", version, about = "Hochschild homology rings of cochain algebras over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// The prime p. Chooses the field of `sphere` and `cpn`; for input files it
    /// must agree with FIELD.
    #[arg(long, alias = "p", global = true)]
    field: Option<u32>,

    /// Report homology in degrees 0..=N; the algebra is expanded to N + 2.
    #[arg(long, global = true, default_value_t = 8)]
    max_degree: usize,

    /// Also print structure constants.
    #[arg(long, global = true)]
    ring: bool,

    #[arg(long, global = true, value_enum, default_value_t = Pipeline::Auto)]
    pipeline: Pipeline,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Print images of classes under HH -> H(BA).
    #[arg(long, global = true)]
    rho: bool,

    /// Scalar in the linear part of the G₂ model.
    #[arg(long, global = true, default_value_t = 1)]
    epsilon: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the algebra axioms of an input file.
    Validate { file: PathBuf },
    /// Hochschild homology dimensions, optionally with the ring.
    Hh { file: PathBuf },
    /// k-th power of a class given by a representative such as `1[x3]`.
    Power {
        file: PathBuf,
        #[arg(long)]
        class: String,
        #[arg(long)]
        k: usize,
    },
    /// Homology of the bar construction.
    Loop { file: PathBuf },
    /// Run a built-in example.
    Example {
        #[arg(value_enum)]
        name: Builtin,
        /// Half the degree of the sphere.
        #[arg(long, default_value_t = 1)]
        even: usize,
        /// Complex dimension for `cpn`.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// With `--power`, the class to raise.
        #[arg(long)]
        class: Option<String>,
        /// Print the k-th power of `--class`
        #[arg(long)]
        power: Option<usize>,
        /// Bar homology instead of Hochschild homology.
        #[arg(long = "loop")]
        bar: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Pipeline {
    Commutative,
    Shc,
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Builtin {
    Sphere,
    Cpn,
    SigmaCp2,
    G2,
}

/// What the pipelines run on.
enum Source {
    /// A finite presentation of the algebra itself.
    Algebra(Dga),
    /// A free model, with the linear part of `μ` when known.
    Free { model: FreeDgaModel, mu0: Option<Mu0> },
}

struct Settings {
    top: usize,
    ring: bool,
    pipeline: Pipeline,
    format: Format,
    rho: bool,
}

fn check_field(cli: &Cli, actual: u32) -> Result<()> {
    match cli.field {
        Some(p) if p != actual => Err(Error::Invalid(format!("--field {p} disagrees with the input field {actual}"))),
        _ => Ok(()),
    }
}

fn load_file(cli: &Cli, path: &PathBuf) -> Result<Source> {
    let text = std::fs::read_to_string(path)?;
    let input = parse_input(&text)?;
    check_field(cli, input.field.p())?;
    let top = cli.max_degree + 2;
    if input.is_free() {
        let model = input.free_model(top)?;
        let mu0 = input.mu0(&model)?;
        Ok(Source::Free { model, mu0 })
    } else {
        Ok(Source::Algebra(input.algebra(top)?))
    }
}

fn load_builtin(cli: &Cli, name: Builtin, even: usize, n: usize) -> Result<Source> {
    let top = cli.max_degree + 2;
    Ok(match name {
        Builtin::Sphere => Source::Algebra(builtins::sphere(cli.field.unwrap_or(2), even, top)?),
        Builtin::Cpn => Source::Algebra(builtins::cpn(cli.field.unwrap_or(2), n, top)?),
        Builtin::SigmaCp2 => {
            check_field(cli, 2)?;
            let (model, mu0) = builtins::sigma_cp2(top)?;
            Source::Free { model, mu0: Some(mu0) }
        }
        Builtin::G2 => {
            check_field(cli, 5)?;
            if top > G2_COMPLETE {
                return Err(Error::Truncation(format!(
                    "the G2 model is known through degree {G2_COMPLETE}, so --max-degree is at most {}",
                    G2_COMPLETE - 2
                )));
            }
            let (model, mu0) = builtins::g2(cli.epsilon, top)?;
            Source::Free { model, mu0: Some(mu0) }
        }
    })
}

type Body<'f, R> =
    Box<dyn for<'a, 'b> FnOnce(&'b HochschildComplex<'a>, &HomologyPresentation, Option<&dyn ChainProduct>) -> Result<R> + 'f>;

fn run_shc<R>(model: &FreeDgaModel, mu0: &Mu0, n: usize, body: Body<'_, R>) -> Result<R> {
    let hat = lift_hat_differential(model)?;
    let structure = lift_mu(hat, mu0)?;
    let ctx = ShcContext::new(structure, n + 2)?;
    let hc = HochschildComplex::new(ctx.tv().dga())?;
    let pres = HomologyPresentation::new(&hc, n)?;
    let engine = ShcProduct::new(&ctx, &hc, SectionStrategy::CycleLift)?;
    body(&hc, &pres, Some(&engine))
}

fn run_plain<R>(alg: &Dga, n: usize, needs_product: bool, body: Body<'_, R>) -> Result<R> {
    let hc = HochschildComplex::new(alg)?;
    let pres = HomologyPresentation::new(&hc, n)?;
    if needs_product {
        let engine = ShuffleProduct::new(&hc)?;
        body(&hc, &pres, Some(&engine))
    } else {
        body(&hc, &pres, None)
    }
}

/// Builds `HH` of the source, with a product engine when one is needed, and
/// hands both to `body`.
fn with_homology<'f, R>(
    src: &Source,
    s: &Settings,
    needs_product: bool,
    body: impl for<'a, 'b> FnOnce(&'b HochschildComplex<'a>, &HomologyPresentation, Option<&dyn ChainProduct>) -> Result<R>
        + 'f,
) -> Result<R> {
    let n = s.top;
    let body: Body<'f, R> = Box::new(body);
    match src {
        Source::Algebra(alg) => {
            if needs_product && s.pipeline == Pipeline::Shc {
                let cobar = cobar_of_bar(alg, n + 2)?;
                let min = minimalize(cobar.model())?;
                let mu0 = mu0_through_minimalization(alg, &cobar, &min)?;
                run_shc(&min.minimal, &mu0, n, body)
            } else {
                run_plain(alg, n, needs_product, body)
            }
        }
        Source::Free { model, mu0 } => {
            if needs_product && s.pipeline != Pipeline::Commutative {
                let mu0 = mu0.as_ref().ok_or_else(|| {
                    Error::Invalid("the shc product needs MU0 or HSTAR_BA_PRODUCT on a minimal model".into())
                })?;
                run_shc(model, mu0, n, body)
            } else {
                let tv = model.algebra(n + 2)?;
                run_plain(tv.dga(), n, needs_product, body)
            }
        }
    }
}

fn class_name(pres: &HomologyPresentation, i: usize) -> String {
    let label = &pres.class(i).label;
    if label.contains([' ', '*']) {
        format!("({label})")
    } else {
        label.clone()
    }
}

/// Like `format_combination`, with coefficients as residues `0..p`.
fn format_residues(v: &SparseVec, name: impl Fn(usize) -> String) -> String {
    let terms: Vec<String> = v
        .iter()
        .map(|(i, c)| if c == 1 { name(i) } else { format!("{c}*{}", name(i)) })
        .collect();
    terms.join(" + ")
}

fn write_dims(out: &mut String, dims: &[usize], format: Format) {
    match format {
        Format::Table => {
            writeln!(out, "degree  dim").unwrap();
            for (d, k) in dims.iter().enumerate() {
                writeln!(out, "{d:>6}  {k}").unwrap();
            }
        }
        Format::Csv => {
            writeln!(out, "degree,dim").unwrap();
            for (d, k) in dims.iter().enumerate() {
                writeln!(out, "{d},{k}").unwrap();
            }
        }
    }
}

fn write_ring(
    out: &mut String,
    pres: &HomologyPresentation,
    constants: &[(usize, usize, SparseVec)],
    format: Format,
    names: impl Fn(usize) -> String,
) {
    let f = pres.field();
    match format {
        Format::Table => {
            writeln!(out, "\nclasses").unwrap();
            for i in 0..pres.len() {
                writeln!(out, "  c{i}  degree {}  {}", pres.class(i).degree, names(i)).unwrap();
            }
            writeln!(out, "\nproducts").unwrap();
            let unit = pres.unit();
            for (i, j, v) in constants {
                if !v.is_zero() && *i != unit && *j != unit {
                    writeln!(out, "  c{i} * c{j} = {}", format_combination(f, v, |k| format!("c{k}"))).unwrap();
                }
            }
        }
        Format::Csv => {
            writeln!(out, "\ni,j,k,coeff").unwrap();
            for (i, j, v) in constants {
                for (k, c) in v.iter() {
                    writeln!(out, "{i},{j},{k},{c}").unwrap();
                }
            }
        }
    }
}

fn write_rho(out: &mut String, hc: &HochschildComplex, pres: &HomologyPresentation, s: &Settings) -> Result<()> {
    let alg = hc.algebra();
    let bar = BarComplex::new(alg, s.top)?;
    let slices = (0..=s.top).map(|n| bar.homology(n)).collect::<Result<Vec<_>>>()?;
    let mut offsets = vec![0];
    for sl in &slices {
        offsets.push(offsets.last().unwrap() + sl.dim());
    }
    let ring = BarHomologyRing {
        slices,
        offsets,
        products: Default::default(),
    };
    let f = alg.field();
    writeln!(out, "\nrho").unwrap();
    if s.format == Format::Csv {
        writeln!(out, "i,k,coeff").unwrap();
    }
    for i in 0..pres.len() {
        let v = rho_star(hc, &bar, &ring, pres.class(i))?;
        match s.format {
            Format::Table => {
                let name = |k: usize| {
                    let n = ring.degree_of(k);
                    let rep = ring.representative(k);
                    format!("<{}>", format_combination(f, rep, |w| BarComplex::format_word(alg, &bar.basis(n)[w])))
                };
                writeln!(out, "  c{i} -> {}", format_combination(f, &v, name)).unwrap();
            }
            Format::Csv => {
                for (k, c) in v.iter() {
                    writeln!(out, "{i},{k},{c}").unwrap();
                }
            }
        }
    }
    Ok(())
}

fn cmd_hh(src: &Source, s: &Settings) -> Result<String> {
    with_homology(src, s, s.ring, |hc, pres, engine| {
        let mut out = String::new();
        write_dims(&mut out, &pres.dims(), s.format);
        if let Some(engine) = engine {
            pres.fill_products(hc, engine)?;
            write_ring(&mut out, pres, &pres.structure_constants(), s.format, |i| class_name(pres, i));
        }
        if s.rho {
            write_rho(&mut out, hc, pres, s)?;
        }
        Ok(out)
    })
}

fn cmd_power(src: &Source, s: &Settings, class: &str, k: usize) -> Result<String> {
    if k == 0 {
        return Err(Error::Invalid("the power must be at least 1".into()));
    }
    with_homology(src, s, true, |hc, pres, engine| {
        let key = hc.parse_key(class)?;
        let x = pres.class_of_key(hc, &key)?;
        let y = pres.power(hc, engine.expect("product requested"), &x, k)?;
        let mut out = String::new();
        match s.format {
            Format::Table => {
                let value = if y.is_zero() {
                    "zero".to_string()
                } else {
                    format_residues(&y, |i| class_name(pres, i))
                };
                writeln!(out, "({})^{k} = {value}", hc.format_key(&key)).unwrap();
            }
            Format::Csv => {
                writeln!(out, "class,coeff").unwrap();
                for (i, c) in y.iter() {
                    writeln!(out, "{},{c}", pres.class(i).label).unwrap();
                }
            }
        }
        Ok(out)
    })
}

fn cmd_loop(src: &Source, s: &Settings) -> Result<String> {
    let free;
    let alg = match src {
        Source::Algebra(a) => a,
        Source::Free { model, .. } => {
            free = model.algebra(s.top + 2)?;
            free.dga()
        }
    };
    let bar = BarComplex::new(alg, s.top)?;
    let mut out = String::new();
    let dims = (0..=s.top).map(|n| bar.homology(n).map(|h| h.dim())).collect::<Result<Vec<_>>>()?;
    write_dims(&mut out, &dims, s.format);
    if s.ring {
        let ring = BarHomologyRing::new(alg, &bar, s.top)?;
        let f = alg.field();
        let mut constants: Vec<_> = ring.products.iter().map(|(&(i, j), v)| (i, j, v.clone())).collect();
        constants.sort_by_key(|c| (c.0, c.1));
        match s.format {
            Format::Table => {
                writeln!(out, "\nclasses").unwrap();
                for c in 0..ring.len() {
                    let n = ring.degree_of(c);
                    let rep = format_combination(f, ring.representative(c), |w| {
                        BarComplex::format_word(alg, &bar.basis(n)[w])
                    });
                    writeln!(out, "  b{c}  degree {n}  {rep}").unwrap();
                }
                writeln!(out, "\nproducts").unwrap();
                for (i, j, v) in &constants {
                    if !v.is_zero() && *i != 0 && *j != 0 {
                        writeln!(out, "  b{i} * b{j} = {}", format_combination(f, v, |k| format!("b{k}"))).unwrap();
                    }
                }
            }
            Format::Csv => {
                writeln!(out, "\ni,j,k,coeff").unwrap();
                for (i, j, v) in &constants {
                    for (k, c) in v.iter() {
                        writeln!(out, "{i},{j},{k},{c}").unwrap();
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Returns the report and whether the input passed.
fn cmd_validate(cli: &Cli, path: &PathBuf) -> Result<(String, bool)> {
    let text = std::fs::read_to_string(path)?;
    let input = parse_input(&text)?;
    check_field(cli, input.field.p())?;
    let top = input.truncate.unwrap_or(cli.max_degree + 2);
    let alg = input.algebra(top)?;
    let report = validate(&alg);
    let mut out = String::new();
    writeln!(out, "field {}, checked through degree {top}", alg.field().p()).unwrap();
    writeln!(out, "{report}").unwrap();
    Ok((out, report.is_pass()))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Io(_) => 2,
        Error::Truncation(_) => 3,
        _ => 1,
    }
}

fn run(cli: &Cli) -> Result<(String, bool)> {
    let s = Settings {
        top: cli.max_degree,
        ring: cli.ring,
        pipeline: cli.pipeline,
        format: cli.format,
        rho: cli.rho,
    };
    let out = match &cli.command {
        Command::Validate { file } => return cmd_validate(cli, file),
        Command::Hh { file } => cmd_hh(&load_file(cli, file)?, &s)?,
        Command::Power { file, class, k } => cmd_power(&load_file(cli, file)?, &s, class, *k)?,
        Command::Loop { file } => cmd_loop(&load_file(cli, file)?, &s)?,
        Command::Example {
            name,
            even,
            n,
            class,
            power,
            bar,
        } => {
            let src = load_builtin(cli, *name, *even, *n)?;
            match (power, bar) {
                (Some(k), false) => {
                    let class = class.as_deref().unwrap_or("1[x3]");
                    cmd_power(&src, &s, class, *k)?
                }
                (None, true) => cmd_loop(&src, &s)?,
                (None, false) => cmd_hh(&src, &s)?,
                (Some(_), true) => return Err(Error::Invalid("--power and --loop exclude each other".into())),
            }
        }
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, pass)) => {
            print!("{out}");
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
