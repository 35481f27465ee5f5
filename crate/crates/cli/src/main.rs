use bwtruns::{
    bwt_fast, bwt_invert, bwt_matrix, one_bit_catastrophe, render_matrix, rho, rho_table,
    standard_plus, standard_word, stdplus_rho_max, verify_closed_forms, DirectiveSequence, Parity,
    SearchOptions, StdPlusReport, Word, DEFAULT_MATRIX_LIMIT, DEFAULT_SEARCH_CAP,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "bwtruns",
    version,
    about = "Burrows-Wheeler transforms of circular words: run counts, ratios, word families, exhaustive search"
)]
struct Cli {
    /// Output format; csv applies to the table commands only.
    #[arg(long, global = true, value_enum, default_value = "plain")]
    format: Format,

    /// Worker threads for searches and verification (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Search length cap; overrides the BWTRUNS_CAP environment variable.
    #[arg(long, global = true)]
    cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Transform one word: output string, row array, run counts, ratio.
    Bwt { word: String },
    /// Runs-ratio of one word.
    Rho { word: String },
    /// Least word whose transform is the given string.
    Invert { transform: String },
    /// Sorted rotation matrix of a word.
    Matrix {
        word: String,
        /// Refuse words longer than this.
        #[arg(long, default_value_t = DEFAULT_MATRIX_LIMIT)]
        limit: usize,
    },
    /// Generate a word from one of the families.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Sweep a range of lengths and report the maximum ratio per length.
    #[command(subcommand)]
    Table(TableCommand),
    /// Replay the closed-form run-count predictions against the engine.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Show how prepending one letter multiplies the run count by k.
    Catastrophe {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// i-th Fibonacci word.
    Fib { i: usize },
    /// Standard word of a directive sequence, e.g. 2,3,1,2,1.
    Std { directive: String },
    /// Fibonacci plus-word of scale k (even order unless --odd).
    Fibplus {
        k: usize,
        #[arg(long)]
        odd: bool,
    },
    /// Standard plus-word of a directive sequence.
    Stdplus { directive: String },
}

#[derive(Subcommand)]
enum TableCommand {
    /// Maximum ratio over all words of each length.
    Rho(TableRange),
    /// Maximum ratio over the standard plus-words of each length.
    Stdplus(TableRange),
}

#[derive(Args)]
struct TableRange {
    #[arg(long)]
    from: usize,
    #[arg(long)]
    to: usize,
    /// Run past the length cap.
    #[arg(long)]
    force: bool,
    /// Alphabet size: 2 or 3 (table rho only).
    #[arg(long, default_value_t = 2)]
    alphabet: usize,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Fibonacci plus-words, both parities, k = 2..=kmax.
    Fibplus {
        #[arg(long, default_value_t = 12)]
        kmax: usize,
    },
    /// Randomly sampled standard plus-word directives of even order.
    Stdplus {
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32, String> {
    let cap = resolve_cap(cli.cap)?;
    if cli.format == Format::Csv && !matches!(cli.command, Command::Table(_)) {
        return Err("csv output is only available for the table commands".into());
    }
    match cli.jobs {
        Some(jobs) if jobs == 0 => Err("--jobs must be at least 1".into()),
        Some(jobs) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| e.to_string())?;
            pool.install(|| dispatch(cli, cap))
        }
        None => dispatch(cli, cap),
    }
}

fn dispatch(cli: Cli, cap: usize) -> Result<i32, String> {
    let format = cli.format;
    match cli.command {
        Command::Bwt { word } => cmd_bwt(&parse_word(&word)?, format),
        Command::Rho { word } => cmd_rho(&parse_word(&word)?, format),
        Command::Invert { transform } => cmd_invert(&parse_word(&transform)?, format),
        Command::Matrix { word, limit } => cmd_matrix(&parse_word(&word)?, limit, format),
        Command::Gen(gen) => cmd_gen(gen, format),
        Command::Table(TableCommand::Rho(range)) => cmd_table_rho(range, cap, format),
        Command::Table(TableCommand::Stdplus(range)) => cmd_table_stdplus(range, cap, format),
        Command::Verify(VerifyCommand::Fibplus { kmax }) => cmd_verify_fibplus(kmax, format),
        Command::Verify(VerifyCommand::Stdplus { trials, seed }) => {
            cmd_verify_stdplus(trials, seed, format)
        }
        Command::Catastrophe { k } => cmd_catastrophe(k, format),
    }
}

fn resolve_cap(flag: Option<usize>) -> Result<usize, String> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var("BWTRUNS_CAP") {
        Ok(value) => value
            .trim()
            .parse()
            .map_err(|_| format!("invalid BWTRUNS_CAP value {value:?}")),
        Err(_) => Ok(DEFAULT_SEARCH_CAP),
    }
}

fn parse_word(s: &str) -> Result<Word, String> {
    s.parse().map_err(|e: bwtruns::Error| e.to_string())
}

fn rho_suffix(value: &bwtruns::RhoValue) -> String {
    if value.den() > 1 {
        format!("{} ({})", value.decimal(), value.exact())
    } else {
        value.decimal()
    }
}

fn cmd_bwt(word: &Word, format: Format) -> Result<i32, String> {
    let record = bwtruns::WordRecord::compute(word).map_err(|e| e.to_string())?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&record).unwrap()),
        _ => {
            println!("word: {word}");
            println!("bwt: {}", record.bwt);
            println!("rle: {}", record.bwt.rle());
            let rows: Vec<String> = record.bw_array.iter().map(|k| k.to_string()).collect();
            println!("bw-array: {}", rows.join(" "));
            println!("r: {}", record.r);
            println!("r(rev): {}", record.r_rev);
            println!("rho: {}", rho_suffix(&record.rho()));
        }
    }
    Ok(0)
}

fn cmd_rho(word: &Word, format: Format) -> Result<i32, String> {
    let value = rho(word);
    match format {
        Format::Json => {
            let out = json!({
                "word": word.to_string(),
                "rho_decimal": value.decimal(),
                "rho_exact": value.exact(),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        _ => println!("{}", rho_suffix(&value)),
    }
    Ok(0)
}

fn cmd_invert(transform: &Word, format: Format) -> Result<i32, String> {
    let word = bwt_invert(transform).map_err(|e| e.to_string())?;
    match format {
        Format::Json => {
            let out = json!({ "transform": transform.to_string(), "word": word.to_string() });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        _ => println!("{word}"),
    }
    Ok(0)
}

fn cmd_matrix(word: &Word, limit: usize, format: Format) -> Result<i32, String> {
    let rows = bwt_matrix(word, limit).map_err(|e| e.to_string())?;
    match format {
        Format::Json => {
            let out: Vec<_> = rows
                .iter()
                .enumerate()
                .map(|(i, (start, rotation))| {
                    json!({ "rank": i + 1, "start": start, "rotation": rotation.to_string() })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        _ => print!("{}", render_matrix(&rows)),
    }
    Ok(0)
}

fn cmd_gen(gen: GenCommand, format: Format) -> Result<i32, String> {
    let word = match &gen {
        GenCommand::Fib { i } => bwtruns::fibonacci_word(*i),
        GenCommand::Std { directive } => {
            let d: DirectiveSequence = directive
                .parse()
                .map_err(|e: bwtruns::Error| e.to_string())?;
            standard_word(&d)
        }
        GenCommand::Fibplus { k, odd } => {
            bwtruns::fibonacci_plus(*k, if *odd { Parity::Odd } else { Parity::Even })
        }
        GenCommand::Stdplus { directive } => {
            let d: DirectiveSequence = directive
                .parse()
                .map_err(|e: bwtruns::Error| e.to_string())?;
            standard_plus(&d)
        }
    }
    .map_err(|e| e.to_string())?;
    match format {
        Format::Json => {
            let out = json!({ "word": word.to_string(), "length": word.len() });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        _ => println!("{word}"),
    }
    Ok(0)
}

fn search_options(range: &TableRange, cap: usize) -> SearchOptions {
    let mut opts = SearchOptions::default();
    opts.cap = cap;
    opts.force = range.force;
    opts.alphabet = range.alphabet;
    opts
}

fn fmt_seconds(seconds: f64) -> String {
    format!("{seconds:.2}")
}

fn csv_field(value: &str) -> String {
    if value.contains(',') {
        format!("\"{value}\"")
    } else {
        value.to_string()
    }
}

fn cmd_table_rho(range: TableRange, cap: usize, format: Format) -> Result<i32, String> {
    if range.to > 26 && range.alphabet == 2 {
        let mut estimate = 0.0;
        for n in range.from.max(27)..=range.to {
            // one core scans roughly 2.5M rotation classes per second
            estimate += (2f64).powi(n as i32) / n as f64 / 2.5e6;
        }
        eprintln!(
            "note: lengths {}..{} are exhaustive; expect roughly {:.0}s on one core",
            range.from.max(27),
            range.to,
            estimate.max(1.0)
        );
    }
    let opts = search_options(&range, cap);
    let reports = rho_table(range.from, range.to, &opts).map_err(|e| e.to_string())?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&reports).unwrap()),
        Format::Csv => {
            println!("n,rho_decimal,rho_exact,witness,words_scanned,seconds");
            for r in &reports {
                println!(
                    "{},{},{},{},{},{}",
                    r.n,
                    r.rho.decimal(),
                    csv_field(&r.rho.exact()),
                    r.witnesses.first().map(String::as_str).unwrap_or(""),
                    r.words_scanned,
                    fmt_seconds(r.elapsed.as_secs_f64())
                );
            }
        }
        Format::Plain => {
            println!(
                "{:>4}  {:>5}  {:>6}  {:<26}  {:>12}  {:>8}",
                "n", "rho", "exact", "witness", "scanned", "seconds"
            );
            for r in &reports {
                let witness = match r.witnesses.len() {
                    0 => String::new(),
                    1 => r.witnesses[0].clone(),
                    more => format!("{} (+{} more)", r.witnesses[0], more - 1),
                };
                println!(
                    "{:>4}  {:>5}  {:>6}  {:<26}  {:>12}  {:>8}",
                    r.n,
                    r.rho.decimal(),
                    r.rho.exact(),
                    witness,
                    r.words_scanned,
                    fmt_seconds(r.elapsed.as_secs_f64())
                );
            }
        }
    }
    Ok(0)
}

fn cmd_table_stdplus(range: TableRange, cap: usize, format: Format) -> Result<i32, String> {
    if range.alphabet != 2 {
        return Err("table stdplus is defined over the two-letter alphabet".into());
    }
    let opts = search_options(&range, cap);
    let mut reports: Vec<StdPlusReport> = Vec::new();
    if range.from > range.to {
        return Err(format!("empty length range {}..{}", range.from, range.to));
    }
    for n in range.from..=range.to {
        reports.push(stdplus_rho_max(n, &opts).map_err(|e| e.to_string())?);
    }
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&reports).unwrap()),
        Format::Csv => {
            println!("n,rho_decimal,rho_exact,directive,word,words_scanned,seconds");
            for r in &reports {
                println!(
                    "{},{},{},{},{},{},{}",
                    r.n,
                    r.rho.map(|v| v.decimal()).unwrap_or_default(),
                    r.rho.map(|v| csv_field(&v.exact())).unwrap_or_default(),
                    r.directive
                        .as_ref()
                        .map(|d| csv_field(&d.to_string()))
                        .unwrap_or_default(),
                    r.word.as_ref().map(Word::to_string).unwrap_or_default(),
                    r.words_scanned,
                    fmt_seconds(r.elapsed.as_secs_f64())
                );
            }
        }
        Format::Plain => {
            println!(
                "{:>4}  {:>5}  {:>6}  {:<14}  {:<28}  {:>8}",
                "n", "rho", "exact", "directive", "word", "scanned"
            );
            for r in &reports {
                println!(
                    "{:>4}  {:>5}  {:>6}  {:<14}  {:<28}  {:>8}",
                    r.n,
                    r.rho.map(|v| v.decimal()).unwrap_or_else(|| "-".into()),
                    r.rho.map(|v| v.exact()).unwrap_or_else(|| "-".into()),
                    r.directive
                        .as_ref()
                        .map(|d| d.to_string())
                        .unwrap_or_else(|| "-".into()),
                    r.word
                        .as_ref()
                        .map(Word::to_string)
                        .unwrap_or_else(|| "-".into()),
                    r.words_scanned
                );
            }
        }
    }
    Ok(0)
}

fn report_outcome(report: &bwtruns::VerificationReport, format: Format) -> i32 {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).unwrap()),
        _ => {
            for case in &report.cases {
                println!("{case}");
            }
            println!("{}", report.summary());
        }
    }
    if report.all_match() {
        0
    } else {
        1
    }
}

fn cmd_verify_fibplus(kmax: usize, format: Format) -> Result<i32, String> {
    if kmax < 2 {
        return Err("--kmax must be at least 2".into());
    }
    let report =
        verify_closed_forms(kmax, &[Parity::Even, Parity::Odd], &[]).map_err(|e| e.to_string())?;
    Ok(report_outcome(&report, format))
}

fn cmd_verify_stdplus(trials: usize, seed: u64, format: Format) -> Result<i32, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut directives = Vec::with_capacity(trials);
    for _ in 0..trials {
        let order = 2 * rng.gen_range(2..=8usize);
        let entries: Vec<u32> = (0..order - 1).map(|_| rng.gen_range(1..=4u32)).collect();
        directives.push(DirectiveSequence::new(entries).map_err(|e| e.to_string())?);
    }
    if format != Format::Json {
        println!("seed: {seed}");
    }
    let report = verify_closed_forms(1, &[], &directives).map_err(|e| e.to_string())?;
    Ok(report_outcome(&report, format))
}

fn cmd_catastrophe(k: usize, format: Format) -> Result<i32, String> {
    let report = one_bit_catastrophe(k).map_err(|e| e.to_string())?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
        _ => {
            let show = |w: &Word| {
                if w.len() <= 72 {
                    w.to_string()
                } else {
                    format!("({} letters)", w.len())
                }
            };
            println!("k: {}", report.k);
            println!("base: {}", show(&report.base));
            println!("r(base): {}", report.r_base);
            println!("extended: {}", show(&report.extended));
            println!("r(extended): {}", report.r_extended);
            println!("ratio: {}", report.ratio().exact());
        }
    }
    // engine cross-check, independent of the stored counts
    debug_assert_eq!(
        bwt_fast(&report.base).transformed.count_runs(),
        report.r_base
    );
    Ok(0)
}
