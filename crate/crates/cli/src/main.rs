use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use fockeq::dump::{build_operator, render_dump, OperatorKind};
use fockeq::spectrum::{spectrum_deviation, Hamiltonian, AGREEMENT_TOLERANCE};
use fockeq::verify::render_text;
use fockeq::{
    run_verification, AnnihilatorOrder, ModelFile, Representation, SignConvention, SpectrumResult,
    VerifyConfig,
};

/// Fermionic Fock-space toolkit: verify the first/second-quantization
/// correspondence, diagonalize models, dump operators.
#[derive(Parser)]
#[command(name = "fockeq", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    JsonLines,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Rep {
    First,
    Second,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Op {
    F1,
    F2,
    H,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite on one (M, N) sector.
    Verify {
        #[arg(long)]
        orbitals: usize,
        #[arg(long)]
        particles: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Use a broken annihilation sign (negative control).
        #[arg(long, hide = true)]
        corrupt_signs: bool,
        /// Swap the annihilator order in the two-body term (negative control).
        #[arg(long, hide = true)]
        swap_annihilators: bool,
    },
    /// Eigenvalues of H = F1 + F2 on an N-particle sector.
    Spectrum {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        particles: usize,
        #[arg(long, value_enum, default_value_t = Rep::Second)]
        rep: Rep,
    },
    /// Print an assembled operator as a sparse matrix.
    Dump {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        particles: usize,
        #[arg(long, value_enum, default_value_t = Op::H)]
        op: Op,
    },
}

/// Exit status: 0 pass, 1 a check failed, 2 bad input.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = match cli.command {
        Command::Verify {
            orbitals,
            particles,
            seed,
            trials,
            corrupt_signs,
            swap_annihilators,
        } => {
            let mut cfg = VerifyConfig::new(orbitals, particles, seed, trials);
            if corrupt_signs {
                cfg.convention = SignConvention::AnnihilationOffByOne;
            }
            if swap_annihilators {
                cfg.annihilator_order = AnnihilatorOrder::Swapped;
            }
            verify(cfg, cli.format, &mut out)
        }
        Command::Spectrum {
            model,
            particles,
            rep,
        } => spectrum(&model, particles, rep, cli.format, &mut out),
        Command::Dump {
            model,
            particles,
            op,
        } => dump(&model, particles, op, cli.format, &mut out),
    };
    // a closed pipe is not worth a panic
    let _ = io::stdout().write_all(out.as_bytes());
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn verify(cfg: VerifyConfig, format: Format, out: &mut String) -> fockeq::Result<Outcome> {
    fockeq::fock::check_orbitals(cfg.orbitals)?;
    if cfg.particles > cfg.orbitals {
        return Err(fockeq::Error::EmptySector {
            orbitals: cfg.orbitals,
            particles: cfg.particles,
        });
    }
    let report = run_verification(&cfg);
    match format {
        Format::Text => out.push_str(&render_text(&report)),
        Format::JsonLines => {
            for check in &report.checks {
                out.push_str(&serde_json::to_string(check).expect("check serializes"));
                out.push('\n');
            }
        }
    }
    Ok(if report.all_pass() {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

fn render_spectrum(s: &SpectrumResult, format: Format, out: &mut String) {
    match format {
        Format::Text => {
            out.push_str(&format!(
                "# {} M={} N={} dim={}\n",
                s.representation.label(),
                s.orbitals,
                s.particles,
                s.eigenvalues.len()
            ));
            for e in &s.eigenvalues {
                out.push_str(&format!("{e:.15e}\n"));
            }
        }
        Format::JsonLines => {
            out.push_str(&serde_json::to_string(s).expect("spectrum serializes"));
            out.push('\n');
        }
    }
}

fn spectrum(
    path: &Path,
    particles: usize,
    rep: Rep,
    format: Format,
    out: &mut String,
) -> fockeq::Result<Outcome> {
    let h = Hamiltonian::from_model(&ModelFile::load(path)?)?;
    let reps = match rep {
        Rep::First => vec![Representation::FirstQuantized],
        Rep::Second => vec![Representation::SecondQuantized],
        Rep::Both => vec![
            Representation::FirstQuantized,
            Representation::SecondQuantized,
        ],
    };
    let results = reps
        .into_iter()
        .map(|r| h.spectrum(particles, r))
        .collect::<fockeq::Result<Vec<_>>>()?;
    for s in &results {
        render_spectrum(s, format, out);
    }
    if let [a, b] = results.as_slice() {
        let deviation = spectrum_deviation(a, b);
        let pass = deviation <= AGREEMENT_TOLERANCE;
        match format {
            Format::Text => out.push_str(&format!(
                "{}  representation_agreement  max_dev={deviation:.3e}  tol={AGREEMENT_TOLERANCE:.1e}\n",
                if pass { "PASS" } else { "FAIL" }
            )),
            Format::JsonLines => {
                let line = json!({
                    "name": "representation_agreement",
                    "deviation": deviation,
                    "tolerance": AGREEMENT_TOLERANCE,
                    "pass": pass,
                });
                out.push_str(&line.to_string());
                out.push('\n');
            }
        }
        if !pass {
            return Ok(Outcome::Fail);
        }
    }
    Ok(Outcome::Pass)
}

fn dump(
    path: &Path,
    particles: usize,
    op: Op,
    format: Format,
    out: &mut String,
) -> fockeq::Result<Outcome> {
    let kind = match op {
        Op::F1 => OperatorKind::OneBody,
        Op::F2 => OperatorKind::TwoBody,
        Op::H => OperatorKind::Hamiltonian,
    };
    let operator = build_operator(&ModelFile::load(path)?, particles, kind)?;
    match format {
        Format::Text => out.push_str(&render_dump(&operator, kind)),
        Format::JsonLines => {
            for (row, col, v) in operator.entries() {
                let line = json!({"row": row, "col": col, "re": v.re, "im": v.im});
                out.push_str(&line.to_string());
                out.push('\n');
            }
        }
    }
    Ok(Outcome::Pass)
}
