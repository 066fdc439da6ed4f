use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use serde::Serialize;

use oddsphere_core::doc::{
    to_json, BettiDoc, CatalogDoc, ComplexDoc, ComplexInput, NonFaceDoc, PointsDoc, VerdictDoc,
};
use oddsphere_core::gale::recover_nonfaces;
use oddsphere_core::realize::{realize_certificate, realize_nonfaces, verify_realization};
use oddsphere_core::{
    betti_mod2, boundary_complex, catalog, recognize, BettiProfile, CatalogOptions, NonFaceFamily,
    SimplicialComplex, SphereCertificate, Verdict,
};

const EXIT_INPUT: u8 = 64;

#[derive(Parser)]
#[command(
    name = "oddsphere",
    version,
    about = "Recognize, realize and catalog simplicial spheres with few vertices"
)]
struct Cli {
    /// Input JSON file; standard input when omitted.
    #[arg(short, long, global = true)]
    input: Option<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Print certificates in cyclic notation on standard error.
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a complex is a sphere (exit 0 sphere, 1 not, 2 out of scope).
    Check,
    /// Minimal non-faces of a complex.
    Nonfaces,
    /// Facets of the complex with the given minimal non-faces.
    Complex,
    /// Exact rational points realizing a maximum-odd-cycle family.
    Realize {
        /// Compare the hull boundary with the complex.
        #[arg(long)]
        verify: bool,
    },
    /// Boundary facets of the convex hull of a point configuration.
    Hull,
    /// Reduced mod-2 Betti numbers.
    Homology,
    /// Spheres on m = d + 4 vertices up to isomorphism.
    Catalog {
        #[arg(long)]
        m: usize,
        /// Verify bracelets in parallel.
        #[arg(long)]
        parallel: bool,
    },
    /// Run every cross-check on a complex and report each stage.
    Verify,
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn input(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: EXIT_INPUT,
            error: error.into(),
        }
    }

    fn runtime(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: 1,
            error: error.into(),
        }
    }
}

struct Outcome {
    document: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => match emit(&cli, &outcome.document) {
            Ok(()) => ExitCode::from(outcome.code),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        },
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn emit(cli: &Cli, document: &str) -> anyhow::Result<()> {
    match &cli.output {
        Some(path) => {
            fs::write(path, document).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(document.as_bytes())?;
            Ok(out.flush()?)
        }
    }
}

fn read_input(cli: &Cli) -> Result<String, Failure> {
    match &cli.input {
        Some(path) => fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))
            .map_err(Failure::input),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .context("reading standard input")
                .map_err(Failure::input)?;
            Ok(s)
        }
    }
}

fn read_complex(cli: &Cli) -> Result<(SimplicialComplex, NonFaceFamily), Failure> {
    let text = read_input(cli)?;
    let input = ComplexInput::parse(&text)
        .context("expected {\"m\", \"facets\"} or {\"m\", \"nonfaces\"}")
        .map_err(Failure::input)?;
    input.resolve().map_err(Failure::input)
}

fn describe(cert: &SphereCertificate) {
    match cert {
        SphereCertificate::SimplexBoundary { m } => {
            eprintln!("boundary of the simplex on {m} vertices")
        }
        SphereCertificate::TwoPartition(a, b) => eprintln!("join of simplex boundaries {a} | {b}"),
        SphereCertificate::MaxOddCycle(c) => {
            eprintln!("cycle:  {}", c.ordering);
            let blocks: Vec<String> = c
                .blocks
                .iter()
                .enumerate()
                .map(|(i, b)| format!("B_{i} = {b}"))
                .collect();
            eprintln!("blocks: {}", blocks.join(", "));
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let ok = |document: String| Outcome { document, code: 0 };
    match &cli.command {
        Command::Check => {
            let (c, _) = read_complex(cli)?;
            let verdict = recognize(&c).map_err(Failure::runtime)?;
            if let (true, Verdict::Sphere { certificate, .. }) = (cli.verbose, &verdict) {
                describe(certificate);
            }
            let code = match verdict {
                Verdict::Sphere { .. } => 0,
                Verdict::NotSphere(_) => 1,
                Verdict::OutOfScope { .. } => 2,
            };
            Ok(Outcome {
                document: to_json(&VerdictDoc::from(&verdict)),
                code,
            })
        }
        Command::Nonfaces => {
            let (_, f) = read_complex(cli)?;
            Ok(ok(to_json(&NonFaceDoc::from(&f))))
        }
        Command::Complex => {
            let (c, _) = read_complex(cli)?;
            Ok(ok(to_json(&ComplexDoc::from(&c))))
        }
        Command::Realize { verify } => {
            let (c, f) = read_complex(cli)?;
            let r = realize_nonfaces(&f).map_err(Failure::runtime)?;
            if cli.verbose {
                if let Some(d) = &r.diagram {
                    eprintln!("polygon slots: {:?}", d.slots());
                }
            }
            if *verify {
                verify_realization(&c, &r.points).map_err(Failure::runtime)?;
                eprintln!("verification: hull boundary equals the complex");
            }
            Ok(ok(to_json(&PointsDoc::from(&r.points))))
        }
        Command::Hull => {
            let text = read_input(cli)?;
            let doc: PointsDoc = serde_json::from_str(&text)
                .context("expected {\"dim\", \"points\"}")
                .map_err(Failure::input)?;
            let pc = doc.to_points().map_err(Failure::input)?;
            let boundary = boundary_complex(&pc).map_err(Failure::runtime)?;
            Ok(ok(to_json(&ComplexDoc::from(&boundary))))
        }
        Command::Homology => {
            let (c, _) = read_complex(cli)?;
            Ok(ok(to_json(&BettiDoc::from(&betti_mod2(&c)))))
        }
        Command::Catalog { m, parallel } => {
            let options = CatalogOptions {
                parallel: *parallel,
                ..CatalogOptions::default()
            };
            let report = catalog(*m, options).map_err(|e| match e {
                oddsphere_core::CatalogError::OutOfRange { .. } => Failure::input(e),
                _ => Failure::runtime(e),
            })?;
            if cli.verbose {
                for class in &report.classes {
                    let e = class.representative();
                    eprintln!("{:?}: {}", e.bracelet.sizes(), e.certificate.ordering);
                }
            }
            Ok(ok(to_json(&CatalogDoc::from(&report))))
        }
        Command::Verify => {
            let (c, f) = read_complex(cli)?;
            let report = verify(&c, &f, cli.verbose);
            let code = if report.pass { 0 } else { 1 };
            Ok(Outcome {
                document: to_json(&report),
                code,
            })
        }
    }
}

#[derive(Serialize)]
struct StageReport {
    stage: &'static str,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

#[derive(Serialize)]
struct VerifyReport {
    pass: bool,
    stages: Vec<StageReport>,
}

impl VerifyReport {
    fn record(&mut self, stage: &'static str, result: Result<(), String>) -> bool {
        let passed = result.is_ok();
        self.pass &= passed;
        self.stages.push(StageReport {
            stage,
            status: if passed { "pass" } else { "fail" },
            detail: result.err(),
        });
        passed
    }

    fn skip(&mut self, stage: &'static str, why: &str) {
        self.stages.push(StageReport {
            stage,
            status: "skipped",
            detail: Some(why.to_string()),
        });
    }
}

fn verify(c: &SimplicialComplex, f: &NonFaceFamily, verbose: bool) -> VerifyReport {
    let mut report = VerifyReport {
        pass: true,
        stages: Vec::new(),
    };
    let certified = match recognize(c) {
        Ok(Verdict::Sphere { d, certificate }) => {
            if verbose {
                describe(&certificate);
            }
            report.record("recognize", Ok(()));
            Some((d, certificate))
        }
        Ok(other) => {
            let doc = VerdictDoc::from(&other);
            let why = doc.reason.unwrap_or(doc.verdict);
            report.record(
                "recognize",
                Err(format!("not certified as a sphere: {why}")),
            );
            None
        }
        Err(e) => {
            report.record("recognize", Err(e.to_string()));
            None
        }
    };
    let Some((d, certificate)) = certified else {
        for stage in ["realize", "hull", "homology", "recover"] {
            report.skip(stage, "no certificate");
        }
        return report;
    };

    let realization = realize_certificate(&certificate, c.vertex_count());
    match &realization {
        Ok(r) => {
            report.record("realize", Ok(()));
            report.record(
                "hull",
                verify_realization(c, &r.points).map_err(|e| e.to_string()),
            );
        }
        Err(e) => {
            report.record("realize", Err(e.to_string()));
            report.skip("hull", "no realization");
        }
    }

    let betti = betti_mod2(c);
    let expected = BettiProfile::sphere(d as usize);
    report.record(
        "homology",
        if betti == expected {
            Ok(())
        } else {
            Err(format!(
                "reduced Betti numbers {:?}, expected {:?}",
                betti.0, expected.0
            ))
        },
    );

    match (&certificate, &realization) {
        (SphereCertificate::MaxOddCycle(_), Ok(r)) => {
            let recovered = recover_nonfaces(&r.gale).map(|(g, _)| g);
            report.record(
                "recover",
                match recovered {
                    Some(g) if g == *f => Ok(()),
                    Some(_) => Err("diagram reads back a different family".to_string()),
                    None => Err("realized diagram is not in standard position".to_string()),
                },
            );
        }
        (SphereCertificate::MaxOddCycle(_), Err(_)) => report.skip("recover", "no realization"),
        _ => report.skip("recover", "certificate has no planar diagram"),
    }
    report
}
