use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use homtqft::json as wire;
use homtqft::{casson, cut, johnson_morita, lescop, modular, suites, tables, tqft, Error};

/// Exact homological TQFT invariants of 3-manifolds on JSON inputs.
#[derive(Parser)]
#[command(name = "homtqft", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// input JSON file ("-" for stdin); required by most commands
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// random seed for sampled checks
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// prime modulus for the p-modular commands
    #[arg(long, global = true, default_value_t = 5)]
    p: u64,
    /// genus bound for the check suites
    #[arg(long, global = true, default_value_t = 3)]
    gmax: usize,
    /// output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// write the report here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Alexander polynomial of a cobordism word as a Lefschetz trace
    Alexander,
    /// Fundamental torsion weights of a word, or of a polynomial
    Weights,
    /// Lescop invariant from a polynomial, weights, or word
    Lescop,
    /// Twist value, eta and eigenspace data of a bounding curve
    Casson,
    /// Casson-Morita cocycle matrix element of two degree-3 classes
    Cocycle,
    /// p-modular weights and the two mod-p Alexander routes of a word
    Pmod,
    /// Specht-module dimension and character checks
    Specht,
    /// Exactness of a quotient-theory resolution
    Resolution,
    /// Cut-number certificates for a monodromy or polynomial
    Cut,
    /// Run a named check suite ("all" by default)
    Check,
    /// Emit the coefficient and dimension tables
    Tables,
    /// Verify the coboundary relations of solvable block samples
    Solvable,
}

/// Accepts both a bare payload and the enveloped job form
/// `{"command": .., "input": {..}, <options>}`; envelope options are
/// folded into the payload when the payload leaves them unset.
fn unwrap_envelope(value: Value) -> Value {
    let Value::Object(mut map) = value else { return value };
    if !map.contains_key("command") || !map.contains_key("input") {
        return Value::Object(map);
    }
    let payload = map.remove("input").unwrap();
    let Value::Object(mut inner) = payload else { return payload };
    for key in ["p", "seed", "gmax", "samples", "suite", "b1"] {
        if let Some(v) = map.get(key) {
            inner.entry(key).or_insert_with(|| v.clone());
        }
    }
    Value::Object(inner)
}

fn read_input(cli: &Cli) -> Result<Value, Error> {
    let Some(path) = &cli.input else {
        return Err(Error::InconsistentInput("this command needs --input FILE".into()));
    };
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::InconsistentInput(format!("reading stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::InconsistentInput(format!("reading {}: {e}", path.display())))?
    };
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Error::Json { pointer: String::new(), message: e.to_string() })?;
    Ok(unwrap_envelope(value))
}

fn run(cli: &Cli) -> Result<String, Error> {
    let payload = match &cli.command {
        Command::Alexander => {
            let input = read_input(cli)?;
            if input.get("a_plus").is_some() {
                // presentation form: ±t^{-g}·tors·det(A⁺ - tA⁻)
                let read_mat = |key: &str| -> Result<homtqft::linalg::IntMat, Error> {
                    let rows = wire::int_rows_from_value(
                        wire::get(&input, "", key)?,
                        &format!("/{key}"),
                    )?;
                    Ok(homtqft::linalg::IntMat::from_rows(
                        rows.into_iter()
                            .map(|r| r.into_iter().map(Into::into).collect())
                            .collect(),
                    ))
                };
                let a_plus = read_mat("a_plus")?;
                let a_minus = read_mat("a_minus")?;
                let tors = input.get("tors").map_or(Ok(1), |v| wire::as_u64(v, "/tors"))?;
                if a_plus.rows % 2 != 0 {
                    return Err(Error::InconsistentInput("matrices must be 2g x 2g".into()));
                }
                let g = a_plus.rows / 2;
                let poly = tqft::alexander_from_presentation(&a_plus, &a_minus, tors, g)?;
                json!({ "poly": wire::laurent_to_value(&poly) })
            } else {
                let word = parse_word_input(&input)?;
                let poly = tqft::alexander_trace(&word)?;
                let mut out = serde_json::Map::new();
                out.insert("poly".into(), wire::laurent_to_value(&poly));
                if word.has_handles() {
                    out.insert("sign_ambiguous".into(), json!(true));
                }
                Value::Object(out)
            }
        }
        Command::Weights => {
            let input = read_input(cli)?;
            let weights = if input.get("poly").is_some() {
                let poly = wire::laurent_from_value(input.get("poly").unwrap(), "/poly")?;
                lescop::weights_from_alexander(&poly)?
            } else {
                tqft::fundamental_weights(&parse_word_input(&input)?)?
            };
            wire::weights_to_value(&weights)
        }
        Command::Lescop => {
            let input = read_input(cli)?;
            let value = if input.get("poly").is_some() {
                let poly = wire::laurent_from_value(input.get("poly").unwrap(), "/poly")?;
                lescop::lescop_from_alexander(&poly)?
            } else if input.get("weights").is_some() {
                lescop::lescop_from_weights(&wire::weights_from_value(&input, "")?)
            } else {
                let word = parse_word_input(&input)?;
                let poly = tqft::alexander_trace(&word)?;
                lescop::lescop_from_alexander(&poly)?
            };
            wire::lescop_to_value(&value)
        }
        Command::Casson => {
            let input = read_input(cli)?;
            let spec = wire::curve_from_value(&input, "")?;
            let twist = casson::casson_twist(&spec);
            let eigen = |data: &[(homtqft::rings::Rational, u128)]| -> Vec<Value> {
                data.iter()
                    .map(|(e, dim)| {
                        json!({
                            "eigenvalue": homtqft::rings::rational_to_string(e),
                            "dimension": *dim as u64,
                        })
                    })
                    .collect()
            };
            json!({
                "twist": wire::bigint_to_value(&twist),
                "eta": homtqft::rings::rational_to_string(&casson::morita_eta(
                    spec.subgenus as u64
                )),
                "casimir_eigenspaces": eigen(&casson::eigenspace_data(&spec, casson::CasimirKind::Q)),
                "degree_block_eigenspaces": eigen(&casson::eigenspace_data(&spec, casson::CasimirKind::D)),
            })
        }
        Command::Cocycle => {
            let input = read_input(cli)?;
            let u1 = casson::UClass::new(wire::multivector_from_value(
                wire::get(&input, "", "u1")?,
                "/u1",
            )?)?;
            let u2 = casson::UClass::new(wire::multivector_from_value(
                wire::get(&input, "", "u2")?,
                "/u2",
            )?)?;
            json!({ "value": wire::bigint_to_value(&casson::casson_cocycle(&u1, &u2)?) })
        }
        Command::Pmod => {
            let input = read_input(cli)?;
            let word = parse_word_input(&input)?;
            let p = input.get("p").map_or(Ok(cli.p), |v| wire::as_u64(v, "/p"))?;
            let weights = modular::pmod_weights(&word, p)?;
            let alexander = modular::pmod_alexander(&word, p)?;
            let weight_map: serde_json::Map<String, Value> =
                weights.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            let mut out = serde_json::Map::new();
            out.insert("p".into(), json!(p));
            out.insert("weights".into(), Value::Object(weight_map));
            out.insert("alexander".into(), wire::pmod_alexander_to_value(&alexander));
            if p >= 5 {
                out.insert("lescop_mod_p".into(), json!(modular::lescop_mod_p(&weights, p)));
            }
            Value::Object(out)
        }
        Command::Specht => {
            let input = read_input(cli)?;
            let n = wire::as_usize(wire::get(&input, "", "n")?, "/n")?;
            let k = wire::as_usize(wire::get(&input, "", "k")?, "/k")?;
            let p = input.get("p").map_or(Ok(cli.p), |v| wire::as_u64(v, "/p"))?;
            let samples =
                input.get("samples").map_or(Ok(10), |v| wire::as_usize(v, "/samples"))?;
            let seed = input.get("seed").map_or(Ok(cli.seed), |v| wire::as_u64(v, "/seed"))?;
            let perms = sample_permutations(n, samples, seed);
            let report = modular::specht_check(n, k, p, &perms)?;
            wire::specht_report_to_value(&report)
        }
        Command::Resolution => {
            let input = read_input(cli)?;
            let k = wire::as_usize(wire::get(&input, "", "k")?, "/k")?;
            let g = wire::as_usize(wire::get(&input, "", "g")?, "/g")?;
            let p = input.get("p").map_or(Ok(cli.p), |v| wire::as_u64(v, "/p"))?;
            wire::resolution_report_to_value(&modular::resolution_check(k, p, g)?)
        }
        Command::Cut => {
            let input = read_input(cli)?;
            let report = cut::cut_report(&wire::cut_input_from_value(&input, "")?)?;
            wire::cut_report_to_value(&report)
        }
        Command::Check => {
            let (suite, gmax, p, seed) = if cli.input.is_some() {
                let input = read_input(cli)?;
                (
                    input.get("suite").and_then(Value::as_str).unwrap_or("all").to_string(),
                    input.get("gmax").map_or(Ok(cli.gmax), |v| wire::as_usize(v, "/gmax"))?,
                    input.get("p").map_or(Ok(cli.p), |v| wire::as_u64(v, "/p"))?,
                    input.get("seed").map_or(Ok(cli.seed), |v| wire::as_u64(v, "/seed"))?,
                )
            } else {
                ("all".to_string(), cli.gmax, cli.p, cli.seed)
            };
            let report = suites::run_suite(&suite, gmax, p, seed)?;
            let value = report.to_value();
            if !report.pass {
                emit(cli, &render(cli, &value)?)?;
                return Err(Error::Mismatch("check suite reported failures".into()));
            }
            value
        }
        Command::Tables => {
            if cli.format == Format::Csv {
                return Ok(tables::emit_tables_csv());
            }
            tables::emit_tables()
        }
        Command::Solvable => {
            let input = read_input(cli)?;
            let sample = wire::solvable_sample_from_value(&input, "")?;
            let report = johnson_morita::check_solvable(&sample)?;
            let value = wire::solvable_report_to_value(&report);
            if !report.pass {
                emit(cli, &render(cli, &value)?)?;
                return Err(Error::Mismatch("solvable sample violates the relations".into()));
            }
            value
        }
    };
    render(cli, &payload)
}

fn render(cli: &Cli, value: &Value) -> Result<String, Error> {
    if cli.format == Format::Csv {
        return Err(Error::InconsistentInput(
            "csv output is only available for the tables command".into(),
        ));
    }
    Ok(format!("{}\n", serde_json::to_string(value).expect("serializable")))
}

fn emit(cli: &Cli, text: &str) -> Result<(), Error> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InconsistentInput(format!("writing {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_word_input(input: &Value) -> Result<tqft::CobordismWord, Error> {
    if input.get("start_g").is_some() {
        wire::word_from_value(input, "")
    } else if let Some(inner) = input.get("input") {
        wire::word_from_value(inner, "/input")
    } else if let Some(word) = input.get("word") {
        wire::word_from_value(word, "/word")
    } else {
        Err(Error::Json {
            pointer: "/".into(),
            message: "expected a cobordism word ({\"start_g\": g, \"ops\": [..]})".into(),
        })
    }
}

fn sample_permutations(n: usize, count: usize, seed: u64) -> Vec<Vec<usize>> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut rng);
            p
        })
        .collect()
}

fn main() -> ExitCode {
    homtqft::exterior::check_conventions();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            if emit(&cli, &text).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Json { .. } | Error::InconsistentInput(_) | Error::Precondition(_) => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}
