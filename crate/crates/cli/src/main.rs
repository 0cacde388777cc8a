use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use toric_monoid_cli::commands::{run, Command, INPUT_ERROR};

/// Spectra of monoids, abstract fans and toric classification.
#[derive(Parser)]
#[command(name = "toricmon", version)]
struct Cli {
    /// Sort every output list by name.
    #[arg(long, global = true)]
    seedless: bool,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args)]
struct Input {
    /// Input document; `-` or omitted for stdin.
    file: Option<PathBuf>,
}

#[derive(Args)]
struct Bound {
    /// Degree bound for presentations and bounded monoid checks.
    #[arg(long, default_value_t = 4)]
    degree: usize,
}

#[derive(Subcommand)]
enum Sub {
    /// Spec of a monoid as a space document.
    Spec {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        bound: Bound,
    },
    /// A classic fan or polytope as a space document.
    Convert {
        #[command(flatten)]
        input: Input,
    },
    /// Hilbert basis of a cone.
    Hilbert {
        #[command(flatten)]
        input: Input,
    },
    /// Saturation of a monoid.
    Saturate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        bound: Bound,
    },
    /// Binomial presentation of a monoid algebra, or of each chart of a space.
    Algebra {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 6)]
        degree: usize,
        #[arg(long, default_value = "k")]
        base: String,
    },
    /// Charts and transition maps of the glued scheme.
    Atlas {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 6)]
        degree: usize,
        #[arg(long, default_value = "k")]
        base: String,
    },
    /// Decide whether a space is a classic toric variety.
    Classify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        bound: Bound,
    },
    /// The specialization poset in DOT format.
    Dot {
        #[command(flatten)]
        input: Input,
    },
    /// The classification as a markdown report.
    Report {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        bound: Bound,
    },
}

fn read(input: &Input) -> std::io::Result<String> {
    match &input.file {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (input, cmd) = match cli.command {
        Sub::Spec { input, bound } => (input, Command::Spec { degree: bound.degree }),
        Sub::Convert { input } => (input, Command::Convert),
        Sub::Hilbert { input } => (input, Command::Hilbert),
        Sub::Saturate { input, bound } => (input, Command::Saturate { degree: bound.degree }),
        Sub::Algebra { input, degree, base } => (input, Command::Algebra { degree, base }),
        Sub::Atlas { input, degree, base } => (input, Command::Atlas { degree, base }),
        Sub::Classify { input, bound } => (input, Command::Classify { degree: bound.degree }),
        Sub::Dot { input } => (input, Command::Dot),
        Sub::Report { input, bound } => (input, Command::Report { degree: bound.degree }),
    };
    let text = match read(&input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("toricmon: cannot read input: {e}");
            return ExitCode::from(INPUT_ERROR as u8);
        }
    };
    match run(&cmd, &text, cli.seedless) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(INPUT_ERROR as u8);
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("toricmon: {e}");
            ExitCode::from(INPUT_ERROR as u8)
        }
    }
}
