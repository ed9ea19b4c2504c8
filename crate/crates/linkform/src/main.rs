use clap::{Parser, ValueEnum};
use linkform::cli::{run, Format, Job, Verb};
use linkform::{io, LinkError};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerbArg {
    Classify,
    Jumps,
    Sigfn,
    Witt,
    Metabolic,
    Representable,
    Represent,
    Verify,
    Reduce,
}

impl From<VerbArg> for Verb {
    fn from(v: VerbArg) -> Verb {
        match v {
            VerbArg::Classify => Verb::Classify,
            VerbArg::Jumps => Verb::Jumps,
            VerbArg::Sigfn => Verb::Sigfn,
            VerbArg::Witt => Verb::Witt,
            VerbArg::Metabolic => Verb::Metabolic,
            VerbArg::Representable => Verb::Representable,
            VerbArg::Represent => Verb::Represent,
            VerbArg::Verify => Verb::Verify,
            VerbArg::Reduce => Verb::Reduce,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

/// Exact linking form computations over R[t, 1/t] and C[t, 1/t].
#[derive(Parser, Debug)]
#[command(name = "linkform", version)]
struct Args {
    verb: VerbArg,
    /// Input JSON document, or - for stdin.
    #[arg(long = "in", default_value = "-")]
    input: PathBuf,
    /// Output file, or - for stdout.
    #[arg(long = "out", default_value = "-")]
    output: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Adjoin the square root of this integer to the rationals.
    #[arg(long)]
    field_sqrt: Option<u32>,
    /// Fixed truncation order for local power series.
    #[arg(long)]
    truncation: Option<usize>,
}

fn read_input(p: &Path) -> std::io::Result<String> {
    if p == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(p)
    }
}

// Writes through a sibling temp file so a failed run never leaves partial output.
fn write_output(p: &Path, text: &str) -> std::io::Result<()> {
    if p == Path::new("-") {
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes())?;
        return out.flush();
    }
    let mut tmp = p.as_os_str().to_owned();
    tmp.push(".partial");
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, p)
}

fn fail(e: LinkError) -> ExitCode {
    let text = serde_json::to_string_pretty(&io::error_json(&e)).unwrap_or_default();
    eprintln!("{text}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let input = match read_input(&args.input) {
        Ok(s) => s,
        Err(e) => return fail(LinkError::Parse(format!("cannot read {}: {e}", args.input.display()))),
    };
    let job = Job {
        verb: args.verb.into(),
        input,
        format: match args.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        },
        field_sqrt: args.field_sqrt,
        truncation: args.truncation,
    };
    let out = run(&job);
    if !out.stderr.is_empty() {
        eprint!("{}", out.stderr);
    }
    if !out.stdout.is_empty() {
        if let Err(e) = write_output(&args.output, &out.stdout) {
            return fail(LinkError::Parse(format!("cannot write {}: {e}", args.output.display())));
        }
    }
    ExitCode::from(out.status as u8)
}
