//! Command-line front end: compute Γ on subspace files, enumerate
//! Grassmannians, emit group tables, extract pairs, imbed pairs into matrix
//! algebras, and run the verification suites.
//!
//! Exit codes: 0 = pass, 1 = counterexample found, 2 = usage or parse error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use assocgeo::chart::Chart;
use assocgeo::field::{Field, FieldSpec, PrimeField};
use assocgeo::gamma::{gamma_bruteforce, gamma_extended, gamma_operator, Quintuple};
use assocgeo::io::{
    format_algebra, format_subspace, format_subspace_line, parse_subspace, ParsedSubspace,
};
use assocgeo::pairs::{extract_pair, standard_imbedding, AssociativePair, HomPair};
use assocgeo::subspace::{common_complement, Subspace};
use assocgeo::torsors::{table_is_cyclic, GroupContext, TorsorContext};
use assocgeo::verify::{
    all_passed, render_json, render_text, run_corrupted_axioms, run_suites, RunConfig,
};
use assocgeo::GeomError;

#[derive(Parser)]
#[command(
    name = "assocgeo",
    about = "Exact computations on Grassmannian geometries: the product map Γ, dilations, torsors, relations and associative pairs over GF(p) and Q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GammaForm {
    Extended,
    Operator,
    Bruteforce,
}

#[derive(Subcommand)]
enum Command {
    /// Compute Γ(x,a,y,b,z) from five subspace files and print the result.
    Gamma {
        x: PathBuf,
        a: PathBuf,
        y: PathBuf,
        b: PathBuf,
        z: PathBuf,
        /// Implementation to use; all forms agree on their common domain.
        #[arg(long, value_enum, default_value = "extended")]
        form: GammaForm,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite (or `all`) and print its report.
    Verify {
        /// semitorsor | klein | lattice-diagonals | torsor | affine |
        /// structural | dilation | pair | axioms | all
        suite: String,
        #[arg(long, default_value = "p=2")]
        field: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        budget: usize,
        #[arg(long)]
        exhaustive: bool,
        /// Self-test: corrupt the Γ table by one swap and show the axioms
        /// catching it (the run is expected to fail).
        #[arg(long)]
        corrupt_gamma: bool,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate the subspaces of F^n, one per line.
    Enumerate {
        #[arg(long)]
        field: String,
        #[arg(long)]
        n: usize,
        /// Restrict to one dimension.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Emit the multiplication table of the group (U_ab, unit).
    GroupTable {
        #[arg(long)]
        field: String,
        #[arg(long)]
        n: usize,
        /// Subspace file for a (default: first coordinate half).
        #[arg(long)]
        a: Option<PathBuf>,
        /// Subspace file for b (default: second coordinate half).
        #[arg(long)]
        b: Option<PathBuf>,
        /// Subspace file for the unit (default: a deterministic common
        /// complement of a and b).
        #[arg(long)]
        unit: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Extract the associative pair at a base point and print its triple
    /// products in chart coordinates.
    Pair {
        #[arg(long)]
        field: String,
        #[arg(long)]
        n: usize,
        /// Subspace file for o⁺ (default: first n/2 coordinates).
        #[arg(long)]
        o_plus: Option<PathBuf>,
        /// Subspace file for o⁻ (default: remaining coordinates).
        #[arg(long)]
        o_minus: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Standard imbedding of a Hom pair into End(E ⊕ F): structure
    /// constants, idempotent and Peirce block dimensions.
    Imbed {
        /// Preset pair: scalar-gf2, scalar-gf3, hom-gf2-1-2; or use
        /// --field/--dim-e/--dim-f.
        #[arg(long)]
        pair: Option<String>,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        dim_e: Option<usize>,
        #[arg(long)]
        dim_f: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}


/// Print without panicking when the consumer closes the pipe early.
fn emit(text: impl AsRef<str>) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_ref().as_bytes());
}

fn emitln(text: impl AsRef<str>) {
    emit(text);
    emit("\n");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, GeomError> {
    match cli.command {
        Command::Gamma {
            x,
            a,
            y,
            b,
            z,
            form,
            json,
        } => cmd_gamma(&[x, a, y, b, z], form, json),
        Command::Verify {
            suite,
            field,
            n,
            seed,
            budget,
            exhaustive,
            corrupt_gamma,
            json,
        } => cmd_verify(&suite, &field, n, seed, budget, exhaustive, corrupt_gamma, json),
        Command::Enumerate { field, n, dim, json } => cmd_enumerate(&field, n, dim, json),
        Command::GroupTable {
            field,
            n,
            a,
            b,
            unit,
            json,
        } => cmd_group_table(&field, n, a, b, unit, json),
        Command::Pair {
            field,
            n,
            o_plus,
            o_minus,
            json,
        } => cmd_pair(&field, n, o_plus, o_minus, json),
        Command::Imbed {
            pair,
            field,
            dim_e,
            dim_f,
            json,
        } => cmd_imbed(pair.as_deref(), field.as_deref(), dim_e, dim_f, json),
    }
}

fn read_file(path: &PathBuf) -> Result<String, GeomError> {
    fs::read_to_string(path)
        .map_err(|e| GeomError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn load_gf_subspace(path: &PathBuf) -> Result<Subspace<PrimeField>, GeomError> {
    let text = read_file(path)?;
    match parse_subspace(&text)
        .map_err(|e| GeomError::Parse(format!("{}: {e}", path.display())))?
    {
        ParsedSubspace::Gf(s) => Ok(s),
        ParsedSubspace::Q(_) => Err(GeomError::Parse(format!(
            "{}: expected a prime-field subspace here",
            path.display()
        ))),
    }
}

fn cmd_gamma(paths: &[PathBuf; 5], form: GammaForm, json: bool) -> Result<ExitCode, GeomError> {
    let blocks: Vec<ParsedSubspace> = paths
        .iter()
        .map(|p| {
            let text = read_file(p)?;
            parse_subspace(&text).map_err(|e| GeomError::Parse(format!("{}: {e}", p.display())))
        })
        .collect::<Result<_, _>>()?;
    let spec = blocks[0].field_spec();
    let ambient = blocks[0].ambient();
    for (p, b) in paths.iter().zip(&blocks) {
        if b.field_spec() != spec {
            return Err(GeomError::FieldMismatch(
                spec.name(),
                format!("{} in {}", b.field_spec().name(), p.display()),
            ));
        }
        if b.ambient() != ambient {
            return Err(GeomError::AmbientMismatch(ambient, b.ambient()));
        }
    }
    let output = match spec {
        FieldSpec::Prime(_) => {
            let subs: Vec<Subspace<PrimeField>> = blocks
                .into_iter()
                .map(|b| match b {
                    ParsedSubspace::Gf(s) => s,
                    _ => unreachable!(),
                })
                .collect();
            let mut it = subs.into_iter();
            let q = Quintuple::new(
                it.next().unwrap(),
                it.next().unwrap(),
                it.next().unwrap(),
                it.next().unwrap(),
                it.next().unwrap(),
            )?;
            let result = match form {
                GammaForm::Extended => gamma_extended(&q),
                GammaForm::Operator => gamma_operator(&q)?,
                GammaForm::Bruteforce => gamma_bruteforce(&q)?,
            };
            format_subspace(&result)
        }
        FieldSpec::Rational => {
            let subs: Vec<Subspace<assocgeo::Rationals>> = blocks
                .into_iter()
                .map(|b| match b {
                    ParsedSubspace::Q(s) => s,
                    _ => unreachable!(),
                })
                .collect();
            let mut it = subs.into_iter();
            let q = Quintuple::new(
                it.next().unwrap(),
                it.next().unwrap(),
                it.next().unwrap(),
                it.next().unwrap(),
                it.next().unwrap(),
            )?;
            let result = match form {
                GammaForm::Extended => gamma_extended(&q),
                GammaForm::Operator => gamma_operator(&q)?,
                GammaForm::Bruteforce => gamma_bruteforce(&q)?,
            };
            format_subspace(&result)
        }
    };
    if json {
        let rows: Vec<&str> = output.lines().collect();
        emitln(serde_json::json!({ "subspace": rows }).to_string());
    } else {
        emit(&output);
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: &str,
    field: &str,
    n: usize,
    seed: u64,
    budget: usize,
    exhaustive: bool,
    corrupt_gamma: bool,
    json: bool,
) -> Result<ExitCode, GeomError> {
    if n == 0 || n > 16 {
        return Err(GeomError::Parse(
            "--n must be between 1 and 16 (exact arithmetic, dense ambient)".into(),
        ));
    }
    let cfg = RunConfig {
        field: FieldSpec::parse(field)?,
        ambient: n,
        seed,
        budget,
        exhaustive,
    };
    let reports = if corrupt_gamma {
        vec![run_corrupted_axioms(&cfg)?]
    } else {
        run_suites(suite, &cfg)?
    };
    if json {
        emitln(render_json(&reports));
    } else {
        emit(render_text(&reports));
    }
    Ok(if all_passed(&reports) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_enumerate(
    field: &str,
    n: usize,
    dim: Option<usize>,
    json: bool,
) -> Result<ExitCode, GeomError> {
    let FieldSpec::Prime(p) = FieldSpec::parse(field)? else {
        return Err(GeomError::NotFinite);
    };
    let f = PrimeField::new(p)?;
    let subs = Subspace::enumerate(f, n, dim)?;
    if json {
        let lines: Vec<String> = subs.iter().map(format_subspace_line).collect();
        emitln(serde_json::json!({ "count": subs.len(), "subspaces": lines }).to_string());
    } else {
        for s in &subs {
            emitln(format_subspace_line(s));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_group_table(
    field: &str,
    n: usize,
    a: Option<PathBuf>,
    b: Option<PathBuf>,
    unit: Option<PathBuf>,
    json: bool,
) -> Result<ExitCode, GeomError> {
    let FieldSpec::Prime(p) = FieldSpec::parse(field)? else {
        return Err(GeomError::NotFinite);
    };
    let f = PrimeField::new(p)?;
    let half = n / 2;
    let a = match a {
        Some(path) => load_gf_subspace(&path)?,
        None => Subspace::coordinate(f, n, &(0..half).collect::<Vec<_>>()),
    };
    let b = match b {
        Some(path) => load_gf_subspace(&path)?,
        None => Subspace::coordinate(f, n, &(half..n).collect::<Vec<_>>()),
    };
    let ctx = TorsorContext::new(a, b)?;
    let unit = match unit {
        Some(path) => load_gf_subspace(&path)?,
        None => common_complement(&ctx.a, &ctx.b).ok_or_else(|| {
            GeomError::Membership("common complement".into(), "C_ab".into())
        })?,
    };
    let group = GroupContext::new(ctx, unit.clone())?;
    let (elements, table) = group.table()?;
    let unit_idx = elements
        .iter()
        .position(|e| *e == unit)
        .expect("unit is a member");
    let cyclic = table_is_cyclic(&table, unit_idx);
    if json {
        let elems: Vec<String> = elements.iter().map(format_subspace_line).collect();
        let doc = serde_json::json!({
            "order": elements.len(),
            "elements": elems,
            "unit": unit_idx,
            "table": table,
            "cyclic": cyclic,
        });
        emitln(doc.to_string());
    } else {
        emitln(&format!("order: {}", elements.len()));
        for (i, e) in elements.iter().enumerate() {
            emitln(&format!("{i}: {}", format_subspace_line(e)));
        }
        emitln(&format!("unit: {unit_idx}"));
        emitln("table:");
        for row in &table {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            emitln(cells.join(" "));
        }
        emitln(&format!("cyclic: {cyclic}"));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_pair(
    field: &str,
    n: usize,
    o_plus: Option<PathBuf>,
    o_minus: Option<PathBuf>,
    json: bool,
) -> Result<ExitCode, GeomError> {
    let FieldSpec::Prime(p) = FieldSpec::parse(field)? else {
        return Err(GeomError::NotFinite);
    };
    if n < 2 {
        return Err(GeomError::DimensionMismatch(
            "pair extraction needs n >= 2".into(),
        ));
    }
    let f = PrimeField::new(p)?;
    let k = n / 2;
    let o_plus = match o_plus {
        Some(path) => load_gf_subspace(&path)?,
        None => Subspace::coordinate(f, n, &(0..k).collect::<Vec<_>>()),
    };
    let o_minus = match o_minus {
        Some(path) => load_gf_subspace(&path)?,
        None => Subspace::coordinate(f, n, &(k..n).collect::<Vec<_>>()),
    };
    let pair = extract_pair(&o_plus, &o_minus)?;
    // chart coordinates: plus elements are graphs over o⁺ into o⁻
    let chart = Chart::new(o_minus.clone(), o_plus.clone())?;
    let (dm, dp) = (chart.dim_minus(), chart.dim_plus());
    let plus_dim = dm * dp;
    let minus_dim = dm * dp;
    if plus_dim * minus_dim * plus_dim > 4096 {
        return Err(GeomError::SizeGuard(
            "pair table too large to print; lower --n".into(),
        ));
    }
    let basis_plus = |idx: usize| {
        let mut m = assocgeo::Matrix::zero(f, dm, dp);
        m.set(idx / dp, idx % dp, f.one());
        chart.encode_plus(&m)
    };
    let basis_minus = |idx: usize| {
        let mut m = assocgeo::Matrix::zero(f, dp, dm);
        m.set(idx / dm, idx % dm, f.one());
        chart.encode_minus(&m)
    };
    let mut plus_lines = Vec::new();
    for i in 0..plus_dim {
        for j in 0..minus_dim {
            for l in 0..plus_dim {
                let prod = pair.triple_plus(&basis_plus(i), &basis_minus(j), &basis_plus(l));
                let coords = chart
                    .decode_plus(&prod)
                    .ok_or_else(|| GeomError::Membership("⟨e_i f_j e_l⟩⁺".into(), "U_{o⁻}".into()))?;
                let cells: Vec<String> = coords.data().iter().map(|v| f.format_elem(v)).collect();
                plus_lines.push(format!("<e{i} f{j} e{l}>+ = {}", cells.join(" ")));
            }
        }
    }
    let mut minus_lines = Vec::new();
    for i in 0..minus_dim {
        for j in 0..plus_dim {
            for l in 0..minus_dim {
                let prod = pair.triple_minus(&basis_minus(i), &basis_plus(j), &basis_minus(l));
                let coords = chart
                    .decode_minus(&prod)
                    .ok_or_else(|| GeomError::Membership("⟨f_i e_j f_l⟩⁻".into(), "U_{o⁺}".into()))?;
                let cells: Vec<String> = coords.data().iter().map(|v| f.format_elem(v)).collect();
                minus_lines.push(format!("<f{i} e{j} f{l}>- = {}", cells.join(" ")));
            }
        }
    }
    if json {
        let doc = serde_json::json!({
            "field": format!("p={p}"),
            "ambient": n,
            "plus_hom_dims": [dm, dp],
            "plus_module_dim": plus_dim,
            "minus_module_dim": minus_dim,
            "plus_products": plus_lines,
            "minus_products": minus_lines,
        });
        emitln(doc.to_string());
    } else {
        emitln(&format!("pair at base point (o+, o-) in GF({p})^{n}"));
        emitln(&format!("A+ = U_(o-) ~ Hom({dp},{dm}) (module dim {plus_dim})"));
        emitln(&format!("A- = U_(o+) ~ Hom({dm},{dp}) (module dim {minus_dim})"));
        for l in &plus_lines {
            emitln(l);
        }
        for l in &minus_lines {
            emitln(l);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_imbed(
    preset: Option<&str>,
    field: Option<&str>,
    dim_e: Option<usize>,
    dim_f: Option<usize>,
    json: bool,
) -> Result<ExitCode, GeomError> {
    let (p, e, fdim) = match (preset, field, dim_e, dim_f) {
        (Some("scalar-gf2"), _, _, _) => (2u64, 1usize, 1usize),
        (Some("scalar-gf3"), _, _, _) => (3, 1, 1),
        (Some("hom-gf2-1-2"), _, _, _) => (2, 1, 2),
        (Some(other), _, _, _) => {
            return Err(GeomError::Parse(format!(
                "unknown pair preset `{other}` (try scalar-gf2, scalar-gf3, hom-gf2-1-2)"
            )))
        }
        (None, Some(fs), Some(e), Some(fd)) => {
            let FieldSpec::Prime(p) = FieldSpec::parse(fs)? else {
                return Err(GeomError::NotFinite);
            };
            (p, e, fd)
        }
        _ => {
            return Err(GeomError::Parse(
                "imbed needs --pair PRESET or all of --field/--dim-e/--dim-f".into(),
            ))
        }
    };
    let f = PrimeField::new(p)?;
    let pair = HomPair::new(f, e, fdim);
    let imb = standard_imbedding(&pair);
    let dims = imb.peirce_dims();
    let idem: Vec<String> = imb.idempotent.iter().map(|v| f.format_elem(v)).collect();
    if json {
        let doc = serde_json::json!({
            "algebra_dim": imb.algebra.dim(),
            "field": format!("p={p}"),
            "idempotent": idem,
            "peirce_dims": { "a00": dims[0], "a01": dims[1], "a10": dims[2], "a11": dims[3] },
        });
        emitln(doc.to_string());
    } else {
        emit(format_algebra(&f, imb.algebra.dim(), imb.algebra.consts()));
        emitln(&format!("idempotent: {}", idem.join(" ")));
        emitln(&format!(
            "peirce dims: a00={} a01={} a10={} a11={}",
            dims[0], dims[1], dims[2], dims[3]
        ));
    }
    Ok(ExitCode::SUCCESS)
}
