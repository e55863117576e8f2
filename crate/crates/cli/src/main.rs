use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mclp::Mode;
use mclp_cli::{
    decode, encode, read_wav, simulate_loss, write_wav, CliError, EncodeOptions, InfoReport,
    Result,
};

#[derive(Parser, Debug)]
#[command(name = "mclp", version, about = "CELP speech codec tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Encode a PCM16 mono WAV file into a container.
    Encode {
        input: PathBuf,
        output: PathBuf,
        /// nb-low, nb-high, wb-low or wb-high.
        #[arg(long, default_value = "nb-high")]
        mode: Mode,
        /// Expected input sample rate (8000 or 16000); checked against the
        /// WAV header and the mode.
        #[arg(long)]
        rate: Option<u32>,
        /// Skip the DC notch.
        #[arg(long)]
        no_notch: bool,
        /// Skip the high-pass pre-filter.
        #[arg(long)]
        no_highpass: bool,
    },
    /// Decode a container into a PCM16 mono WAV file.
    Decode { input: PathBuf, output: PathBuf },
    /// Mark frames lost at random (seeded) and write a new container.
    SimulateLoss {
        input: PathBuf,
        output: PathBuf,
        #[arg(long)]
        loss_rate: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print stream statistics and the VoIP bit-rate projection.
    Info { input: PathBuf },
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Encode {
            input,
            output,
            mode,
            rate,
            no_notch,
            no_highpass,
        } => {
            if let Some(rate) = rate {
                if rate != mode.sample_rate() {
                    return Err(CliError::Usage(format!(
                        "mode {mode} runs at {} Hz, not {rate} Hz",
                        mode.sample_rate()
                    )));
                }
            }
            let pcm = read_wav(BufReader::new(File::open(&input)?))?;
            let opts = EncodeOptions {
                mode,
                notch: !no_notch,
                highpass: !no_highpass,
            };
            let (bytes, summary) = encode(&pcm, &opts)?;
            fs::write(&output, bytes)?;
            if let Some(w) = summary.peak_warning() {
                eprintln!("{w}");
            }
            eprintln!("{summary}");
        }
        Command::Decode { input, output } => {
            let pcm = decode(&fs::read(&input)?)?;
            write_wav(BufWriter::new(File::create(&output)?), &pcm)?;
            eprintln!("{} samples at {} Hz", pcm.samples.len(), pcm.sample_rate);
        }
        Command::SimulateLoss {
            input,
            output,
            loss_rate,
            seed,
        } => {
            let (bytes, report) = simulate_loss(&fs::read(&input)?, loss_rate, seed)?;
            fs::write(&output, bytes)?;
            println!("{report}");
        }
        Command::Info { input } => {
            println!("{}", InfoReport::from_container(&fs::read(&input)?)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
