use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use treelike::abpoly::{self, fraction_string};
use treelike::bijection::{
    cut_at_corner, glue, phi, phi_inverse, run_to_triplet, triplet_words_to_run, Cut,
    MarkedRunPermutation, Triplet,
};
use treelike::counting;
use treelike::enumerate;
use treelike::tableau::{read_block, read_maybe_block, MaybeBlock, EMPTY_TABLEAU};
use treelike::verify::{self, Options, Planned};
use treelike::{BorderPath, Cell, Error, NonAmbiguousTree, TreeLikeTableau};

#[derive(Parser)]
#[command(
    name = "treelike",
    version,
    about = "Tree-like tableaux, their bijections and corner statistics"
)]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lists objects in canonical order.
    Enumerate {
        #[arg(long, value_enum)]
        object: Object,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long)]
        height: Option<usize>,
        #[arg(long)]
        width: Option<usize>,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value_t = ObjectFormat::Text)]
        format: ObjectFormat,
    },
    /// Compares closed forms with exhaustive computation.
    Verify {
        /// A check name, or `all`.
        #[arg(long)]
        check: String,
        #[arg(long)]
        max_n: usize,
        /// Raise the per-check size caps.
        #[arg(long)]
        long: bool,
        #[arg(long, value_enum, default_value_t = RowFormat::Csv)]
        format: RowFormat,
        /// Write 0 in the elapsed_ms column.
        #[arg(long)]
        no_timing: bool,
    },
    /// Applies one bijection to an object read from a file or stdin.
    Biject {
        #[arg(long, value_enum)]
        map: Map,
        /// Corner for `cut`: a row label `i` or a cell `i,j`.
        #[arg(long)]
        corner: Option<String>,
        /// Marked position for `run-inv`, if the input has no `mark` line.
        #[arg(long)]
        mark: Option<usize>,
        /// Input file; stdin when absent or `-`.
        input: Option<PathBuf>,
    },
    /// Prints the side-by-side comparisons that are reported but not asserted.
    Report {
        #[arg(value_enum)]
        which: Report,
        #[arg(long)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Object {
    Tlt,
    Pt,
    Nat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ObjectFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum RowFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Map {
    Phi,
    PhiInv,
    Cut,
    Glue,
    Run,
    RunInv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Report {
    Displacement,
    ExpectedJumps,
}

/// Failure modes mapped onto exit codes.
enum Failure {
    Mismatch,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("treelike: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("treelike: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    match command {
        Command::Enumerate {
            object,
            size,
            height,
            width,
            limit,
            format,
        } => enumerate_cmd(&mut out, object, size, height, width, limit, format)?,
        Command::Verify {
            check,
            max_n,
            long,
            format,
            no_timing,
        } => {
            let checks = verify::parse_checks(&check)?;
            let opts = Options {
                max_n,
                long,
                timing: !no_timing,
            };
            for p in verify::plan(&checks, &opts) {
                if let Planned::Skipped { check, n, cap } = p {
                    let hint = if long { "" } else { " (try --long)" };
                    eprintln!("skipping {check} at n = {n}: above the cap {cap}{hint}");
                }
            }
            let rows = verify::run(&checks, &opts)?;
            match format {
                RowFormat::Csv => verify::write_csv(&rows, &mut out)?,
                RowFormat::Json => {
                    serde_json::to_writer_pretty(&mut out, &rows)
                        .map_err(|e| Failure::Usage(e.to_string()))?;
                    writeln!(out)?;
                }
            }
            out.flush()?;
            if rows.iter().any(|r| !r.matches) {
                return Err(Failure::Mismatch);
            }
        }
        Command::Biject {
            map,
            corner,
            mark,
            input,
        } => {
            let text = read_input(input)?;
            let image = biject(map, &text, corner.as_deref(), mark)?;
            writeln!(out, "{image}")?;
        }
        Command::Report { which, max_n } => {
            let value = report(which, max_n)?;
            serde_json::to_writer_pretty(&mut out, &value)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn object_json(path: &BorderPath, text: &str) -> serde_json::Value {
    let rows: Vec<&str> = text.lines().skip(1).collect();
    json!({ "path": path.to_string(), "rows": rows })
}

fn enumerate_cmd(
    out: &mut impl Write,
    object: Object,
    size: Option<usize>,
    height: Option<usize>,
    width: Option<usize>,
    limit: Option<usize>,
    format: ObjectFormat,
) -> Result<(), Failure> {
    let need_size = || size.ok_or_else(|| Failure::Usage("--size is required".into()));
    let items: Box<dyn Iterator<Item = (BorderPath, String)>> = match object {
        Object::Tlt => Box::new(
            enumerate::tree_like_tableaux(need_size()?)?.map(|t| (t.path().clone(), t.to_text())),
        ),
        Object::Pt => Box::new(
            enumerate::permutation_tableaux(need_size()?)?.map(|p| (p.path().clone(), p.to_text())),
        ),
        Object::Nat => {
            let (Some(h), Some(w)) = (height, width) else {
                return Err(Failure::Usage("--height and --width are required".into()));
            };
            Box::new(
                enumerate::non_ambiguous_trees(h, w)?
                    .into_iter()
                    .map(|t| (t.tableau().path().clone(), t.tableau().to_text())),
            )
        }
    };
    let items = items.take(limit.unwrap_or(usize::MAX));
    match format {
        ObjectFormat::Text => {
            for (i, (_, text)) in items.enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                writeln!(out, "{text}")?;
            }
        }
        ObjectFormat::Json => {
            let all: Vec<_> = items.map(|(p, t)| object_json(&p, &t)).collect();
            serde_json::to_writer_pretty(&mut *out, &all)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn read_input(input: Option<PathBuf>) -> io::Result<String> {
    match input {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn one_tableau(text: &str) -> Result<TreeLikeTableau, Failure> {
    let mut lines = text.lines();
    let block = read_block(&mut lines)?.ok_or_else(|| Failure::Usage("empty input".into()))?;
    Ok(block.into_tree_like()?)
}

/// `i` names the corner in row `i`; `i,j` or `(i,j)` names a cell.
fn parse_corner(t: &TreeLikeTableau, arg: &str) -> Result<Cell, Failure> {
    let bad = || Failure::Usage(format!("cannot read corner {arg:?}"));
    let inner = arg.trim().trim_start_matches('(').trim_end_matches(')');
    let cell = match inner.split_once(',') {
        Some((i, j)) => Cell::new(
            i.trim().parse().map_err(|_| bad())?,
            j.trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let i: usize = inner.parse().map_err(|_| bad())?;
            Cell::new(i, i + 1)
        }
    };
    if !t.path().is_corner(cell) {
        return Err(Error::NotACorner {
            row: cell.row,
            col: cell.col,
        }
        .into());
    }
    Ok(cell)
}

fn side_text(t: &Option<TreeLikeTableau>) -> String {
    t.as_ref()
        .map_or_else(|| EMPTY_TABLEAU.to_string(), TreeLikeTableau::to_text)
}

fn read_side<'a>(
    lines: &mut impl Iterator<Item = &'a str>,
) -> Result<Option<TreeLikeTableau>, Failure> {
    match read_maybe_block(lines)? {
        None => Err(Failure::Usage(
            "glue needs three blocks: left, right, nat".into(),
        )),
        Some(MaybeBlock::Empty) => Ok(None),
        Some(MaybeBlock::Block(b)) => Ok(Some(b.into_tree_like()?)),
    }
}

fn biject(
    map: Map,
    text: &str,
    corner: Option<&str>,
    mark: Option<usize>,
) -> Result<String, Failure> {
    Ok(match map {
        Map::Phi => phi(&one_tableau(text)?).to_text(),
        Map::PhiInv => {
            let mut lines = text.lines();
            let block =
                read_block(&mut lines)?.ok_or_else(|| Failure::Usage("empty input".into()))?;
            phi_inverse(&block.into_permutation_tableau()?)?.to_text()
        }
        Map::Cut => {
            let t = one_tableau(text)?;
            let arg = corner.ok_or_else(|| Failure::Usage("cut needs --corner".into()))?;
            let cut = cut_at_corner(&t, parse_corner(&t, arg)?)?;
            format!(
                "{}\n\n{}\n\n{}",
                side_text(&cut.left),
                side_text(&cut.right),
                cut.nat
            )
        }
        Map::Glue => {
            let mut lines = text.lines();
            let left = read_side(&mut lines)?;
            let right = read_side(&mut lines)?;
            let nat = read_block(&mut lines)?.ok_or_else(|| {
                Failure::Usage("glue needs three blocks: left, right, nat".into())
            })?;
            let nat = NonAmbiguousTree::new(nat.into_tree_like()?)?;
            let (t, c) = glue(&Cut { left, right, nat })?;
            format!("{}\ncorner {c}", t.to_text())
        }
        Map::Run => triplet_words_to_run(&Triplet::parse(text)?)?.to_text(),
        Map::RunInv => {
            let mut lines = text.lines().filter(|l| !l.trim().is_empty());
            let perm_line = lines
                .next()
                .ok_or_else(|| Failure::Usage("empty input".into()))?;
            let perm: Vec<usize> = perm_line
                .split_whitespace()
                .map(|tok| {
                    tok.parse()
                        .map_err(|_| Failure::Usage(format!("bad permutation entry {tok:?}")))
                })
                .collect::<Result<_, _>>()?;
            let from_file = match lines.next() {
                Some(l) => {
                    let k = l.trim().strip_prefix("mark").map(str::trim);
                    Some(k.and_then(|k| k.parse().ok()).ok_or_else(|| {
                        Failure::Usage(format!("expected \"mark k\", found {l:?}"))
                    })?)
                }
                None => None,
            };
            let k = mark.or(from_file).ok_or_else(|| {
                Failure::Usage("run-inv needs --mark or a \"mark k\" line".into())
            })?;
            run_to_triplet(&MarkedRunPermutation::new(perm, k)?)?.to_text()
        }
    })
}

fn report(which: Report, max_n: usize) -> Result<serde_json::Value, Failure> {
    let mut rows = Vec::new();
    match which {
        Report::Displacement => {
            for n in 1..=max_n {
                rows.push(
                    serde_json::to_value(counting::displacement_report(n)?).expect("plain struct"),
                );
            }
        }
        Report::ExpectedJumps => {
            for n in 2..=max_n {
                let e = abpoly::expected_jumps(n)?;
                rows.push(json!({
                    "n": n,
                    "defining_at_one": e.defining_at_one,
                    "corrected_at_one": fraction_string(&e.corrected.eval_at_one()),
                    "printed_at_one": e.printed_at_one,
                    "corrected_matches": e.corrected_matches,
                    "printed_matches": e.printed_matches,
                }));
            }
        }
    }
    Ok(serde_json::Value::Array(rows))
}
