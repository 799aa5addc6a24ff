use std::error::Error as StdError;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use insitu::dynamics::{self, census, orbit, orbit_checked, trajectory};
use insitu::io::{format_vector, parse_coding, parse_matrix, parse_vector, peek_field, Coding};
use insitu::regularizer::{regularize_general_traced, regularize_traced, RegularizeTrace};
use insitu::sequentializer::{preimage_search, sequentialize, sequentialize_perm};
use insitu::{
    Binary, Digraph, Error, Field, FieldSpec, Matrix, PrimeField, Rationals, SearchGuard, Vector,
};

type CliResult<T> = Result<T, Box<dyn StdError>>;

const DEFAULT_MAX_ITER: u64 = 10_000_000;

/// In-place (sequential) interpretation of matrices over exact fields.
///
/// Every INPUT is a path to a matrix or coding file, or `-` for standard input.
#[derive(Parser)]
#[command(name = "insitu", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a matrix to a vector, in parallel or in place
    Apply {
        #[arg(long, value_enum, default_value_t = Mode::Sequential)]
        mode: Mode,
        /// Comma- or space-separated entries
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        input: String,
    },
    /// Print the matrix whose parallel map is the sequential map of INPUT
    Smatrix { input: String },
    /// Print the rows of INPUT as in-place assignments
    Program { input: String },
    /// Compile INPUT into an in-place program and print it with its coding
    Sequentialize {
        #[arg(long, value_enum, default_value_t = Method::Theorem1)]
        method: Method,
        /// Print only the coding
        #[arg(long)]
        coding_only: bool,
        input: String,
    },
    /// Expand a coding file back into its program
    Decode { input: String },
    /// Search exhaustively for a sequential preimage, or print "none"
    Preimage {
        #[arg(long, default_value_t = SearchGuard::default().max_candidates)]
        max_candidates: u128,
        input: String,
    },
    /// Print a regular sequential constructor of INPUT
    Regularize {
        /// Diagonal of the constructor, comma-separated; all ones if omitted
        #[arg(long, allow_hyphen_values = true)]
        units: Option<String>,
        /// Also print the working matrix after each step
        #[arg(long)]
        trace: bool,
        input: String,
    },
    /// Sequential matrix with the diagonal reset to ones (GF(2), regular input)
    Phi { input: String },
    /// Cycle length of a regular GF(2) matrix under regularize
    Orbit {
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: u64,
        /// Keep every visited state and fail on any non-initial repeat
        #[arg(long)]
        checked: bool,
        input: String,
    },
    /// Print the first STEPS iterates of regularize from INPUT
    Trajectory {
        #[arg(long)]
        steps: usize,
        input: String,
    },
    /// Cycle-length histogram over all regular n x n GF(2) matrices
    Census {
        #[arg(long)]
        n: usize,
        /// Raise the dimension limit from 5 to 6
        #[arg(long)]
        allow_large: bool,
    },
    /// Print whether two matrices have the same sequential matrix
    Equiv { left: String, right: String },
    /// Digraphs given by GF(2) adjacency matrices
    #[command(subcommand)]
    Graph(GraphCommand),
}

#[derive(Subcommand)]
enum GraphCommand {
    /// The graph INPUT sequentially constructs
    Constructs { input: String },
    /// A sequential constructor of INPUT, or "none"
    Constructor {
        #[arg(long, default_value_t = SearchGuard::default().max_candidates)]
        max_candidates: u128,
        input: String,
    },
    /// Redirect the chain arc out of x_{i+1} to x_j (1-based, p <= j <= i < q)
    Chain {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        input: String,
    },
    /// Reduce a strict linear order on x_p..x_q to its first arc (1-based)
    Linorder {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        input: String,
    },
    /// DOT rendering
    Dot { input: String },
    /// Print whether two graphs construct the same graph
    Equiv { left: String, right: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Parallel,
    Sequential,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Theorem1,
    Perm,
}

/// Runs `$body` with `$f` bound to the field type named by `$spec`.
macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            FieldSpec::Gf2 => {
                type $f = Binary;
                $body
            }
            FieldSpec::Gfp(_) => {
                type $f = PrimeField;
                $body
            }
            FieldSpec::Rational => {
                type $f = Rationals;
                $body
            }
        }
    };
}

fn read_input(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| format!("cannot read standard input: {e}"))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}").into())
}

fn one_based(name: &str, value: usize) -> CliResult<usize> {
    value
        .checked_sub(1)
        .ok_or_else(|| format!("--{name} is 1-based, got 0").into())
}

fn apply<F: Field>(text: &str, mode: Mode, vector: &str) -> CliResult<String> {
    let m = parse_matrix::<F>(text)?;
    let x = parse_vector(m.field(), vector)?;
    let y = match mode {
        Mode::Parallel => m.parallel_apply(&x)?,
        Mode::Sequential => m.seq_apply(&x)?,
    };
    Ok(format!("{}\n", format_vector(&y)))
}

fn sequentialize_cmd<F: Field>(text: &str, method: Method, coding_only: bool) -> CliResult<String> {
    let m = parse_matrix::<F>(text)?;
    let (program, coding) = match method {
        Method::Theorem1 => {
            let (p, c) = sequentialize(&m);
            (p, c.to_string())
        }
        Method::Perm => {
            let (p, c) = sequentialize_perm(&m);
            (p, c.to_string())
        }
    };
    if coding_only {
        return Ok(coding);
    }
    Ok(format!("{program}\n{coding}"))
}

fn decode<F: Field>(text: &str) -> CliResult<String> {
    let program = match parse_coding::<F>(text)? {
        Coding::InSitu(c) => c.decode()?,
        Coding::Perm(c) => c.decode()?,
    };
    Ok(program.to_string())
}

fn preimage<F: Field>(text: &str, max_candidates: u128) -> CliResult<String> {
    let m = parse_matrix::<F>(text)?;
    Ok(match preimage_search(&m, SearchGuard { max_candidates })? {
        Some(p) => p.to_string(),
        None => "none\n".to_string(),
    })
}

fn regularize_cmd<F: Field>(text: &str, units: Option<&str>, trace: bool) -> CliResult<String> {
    let m = parse_matrix::<F>(text)?;
    let field = m.field().clone();
    let RegularizeTrace { steps } = match units {
        None if field.spec() == FieldSpec::Gf2 => regularize_traced(&m)?,
        None => {
            regularize_general_traced(&m, &Vector::new(field.clone(), vec![field.one(); m.n()])?)?
        }
        Some(units) => regularize_general_traced(&m, &parse_vector(&field, units)?)?,
    };
    let mut out = String::new();
    if trace {
        for (i, step) in steps[..steps.len() - 1].iter().enumerate() {
            write!(out, "# step {}\n{step}", i + 1)?;
        }
        out.push_str("# result\n");
    }
    write!(out, "{}", steps.last().expect("n >= 1"))?;
    Ok(out)
}

fn equiv<F: Field>(left: &str, right: &str) -> CliResult<String> {
    let a = parse_matrix::<F>(left)?;
    let b = parse_matrix::<F>(right)?;
    Ok(format!("{}\n", a.seq_equivalent(&b)?))
}

fn same_field(left: &str, right: &str) -> CliResult<FieldSpec> {
    let (l, r) = (peek_field(left)?, peek_field(right)?);
    if l != r {
        return Err(Error::FieldMismatch { left: l, right: r }.into());
    }
    Ok(l)
}

fn gf2_matrix(text: &str) -> CliResult<Matrix<Binary>> {
    let spec = peek_field(text)?;
    if spec != FieldSpec::Gf2 {
        return Err(Error::UnsupportedField {
            required: "gf2",
            found: spec,
        }
        .into());
    }
    Ok(parse_matrix::<Binary>(text)?)
}

fn graph(text: &str) -> CliResult<Digraph> {
    Ok(Digraph::new(gf2_matrix(text)?))
}

fn run_graph(command: GraphCommand) -> CliResult<String> {
    Ok(match command {
        GraphCommand::Constructs { input } => graph(&read_input(&input)?)?
            .constructs()
            .adjacency()
            .to_string(),
        GraphCommand::Constructor {
            max_candidates,
            input,
        } => match graph(&read_input(&input)?)?.constructor_of(SearchGuard { max_candidates })? {
            Some(c) => c.adjacency().to_string(),
            None => "none\n".to_string(),
        },
        GraphCommand::Chain { p, q, i, j, input } => {
            let (p, q, i, j) = (
                one_based("p", p)?,
                one_based("q", q)?,
                one_based("i", i)?,
                one_based("j", j)?,
            );
            graph(&read_input(&input)?)?
                .chain_rewrite(p, q, i, j)?
                .adjacency()
                .to_string()
        }
        GraphCommand::Linorder { p, q, input } => {
            let (p, q) = (one_based("p", p)?, one_based("q", q)?);
            graph(&read_input(&input)?)?
                .linorder_rewrite(p, q)?
                .adjacency()
                .to_string()
        }
        GraphCommand::Dot { input } => graph(&read_input(&input)?)?.to_dot(),
        GraphCommand::Equiv { left, right } => {
            let a = graph(&read_input(&left)?)?;
            let b = graph(&read_input(&right)?)?;
            format!("{}\n", a.equivalent(&b)?)
        }
    })
}

fn run(command: Command) -> CliResult<String> {
    Ok(match command {
        Command::Apply {
            mode,
            vector,
            input,
        } => {
            let text = read_input(&input)?;
            with_field!(peek_field(&text)?, F => apply::<F>(&text, mode, &vector)?)
        }
        Command::Smatrix { input } => {
            let text = read_input(&input)?;
            with_field!(peek_field(&text)?, F => parse_matrix::<F>(&text)?.seq_matrix().to_string())
        }
        Command::Program { input } => {
            let text = read_input(&input)?;
            with_field!(peek_field(&text)?, F => parse_matrix::<F>(&text)?.seq_program().to_string())
        }
        Command::Sequentialize {
            method,
            coding_only,
            input,
        } => {
            let text = read_input(&input)?;
            with_field!(peek_field(&text)?, F => sequentialize_cmd::<F>(&text, method, coding_only)?)
        }
        Command::Decode { input } => {
            let text = read_input(&input)?;
            with_field!(peek_field(&text)?, F => decode::<F>(&text)?)
        }
        Command::Preimage {
            max_candidates,
            input,
        } => {
            let text = read_input(&input)?;
            with_field!(peek_field(&text)?, F => preimage::<F>(&text, max_candidates)?)
        }
        Command::Regularize {
            units,
            trace,
            input,
        } => {
            let text = read_input(&input)?;
            with_field!(peek_field(&text)?, F => regularize_cmd::<F>(&text, units.as_deref(), trace)?)
        }
        Command::Phi { input } => dynamics::phi(&gf2_matrix(&read_input(&input)?)?)?.to_string(),
        Command::Orbit {
            max_iter,
            checked,
            input,
        } => {
            let m = gf2_matrix(&read_input(&input)?)?;
            let report = if checked {
                orbit_checked(&m, max_iter)?
            } else {
                orbit(&m, max_iter)?
            };
            format!("cycle_length {}\n", report.cycle_length)
        }
        Command::Trajectory { steps, input } => {
            let m = gf2_matrix(&read_input(&input)?)?;
            let mut out = String::new();
            for (k, state) in trajectory(&m, steps)?.iter().enumerate() {
                write!(out, "# step {k}\n{state}")?;
            }
            out
        }
        Command::Census { n, allow_large } => {
            let c = census(n, allow_large)?;
            let mut out = String::new();
            for (length, count) in &c.matrices_by_length {
                writeln!(out, "{length} {count}")?;
            }
            writeln!(out, "max {}", c.max_length())?;
            out
        }
        Command::Equiv { left, right } => {
            let (left, right) = (read_input(&left)?, read_input(&right)?);
            with_field!(same_field(&left, &right)?, F => equiv::<F>(&left, &right)?)
        }
        Command::Graph(command) => run_graph(command)?,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|()| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
