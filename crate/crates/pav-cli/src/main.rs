//! `pav`: JSON front end for the morphism-type toolkit. Subcommands wrap
//! the library operations one to one; documents arrive on stdin or from a
//! file argument and reports leave on stdout.
//!
//! Exit codes: 0 success or valid verdict; 1 well-formed input with an
//! invalid verdict or a semantic error (singular matrix, inadmissible
//! divisor, dimension clash); 2 malformed input or internal error, with a
//! message on stderr.

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;

use pav_cli::doc::*;
use pav_core::exact::IntMatrix;
use pav_core::morphisms::{
    check_embedding_type, check_isogeny_type, check_morphism_type, decompose_morphism,
    elliptic_canonical, hecke_factor, is_in_stabilizer, kernel_structure,
    search_embedding_matrices_with_jobs, search_isogeny_matrices_with_jobs, EmbeddingType,
    IsogenyType,
};
use pav_core::siegel::{
    realize_embedding, realize_morphism, sp_action, transport, validate_siegel, SiegelPoint,
};
use pav_core::symplectic::PolarizationType;

#[derive(Parser)]
#[command(name = "pav", version, about = "Exact classification of morphism types of polarized abelian varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Tolerance for the floating-point Siegel layer.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Entry bound for the bounded searches.
    #[arg(long, global = true, default_value_t = 2)]
    bound: u32,
    /// Cap for kernel coset enumeration in reports.
    #[arg(long, global = true, default_value_t = 64)]
    max_order: u64,
    /// Worker threads for the searches; the output order is unaffected.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Degree-p step for hecke-factor (overrides the document field).
    #[arg(long, global = true)]
    p: Option<String>,
}

#[derive(Args)]
struct InputArg {
    /// Input document path; stdin when omitted.
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check an isogeny type document (chains D, E; matrix M).
    CheckIsogeny(InputArg),
    /// Check an embedding type document (chains D, D', E; matrix M).
    CheckEmbedding(InputArg),
    /// Check a morphism type document (six chains; matrices M, N, P).
    CheckMorphism(InputArg),
    /// Smith normal form of a matrix document.
    Snf(InputArg),
    /// Row Hermite normal form of a matrix document.
    Hnf(InputArg),
    /// Kernel structure (invariant factors) of a nonsingular matrix.
    Kernel(InputArg),
    /// Canonical diagonal form (d1, d2) of a 2x2 matrix.
    EllipticCanonical(InputArg),
    /// Factor a 2x2 matrix through a degree-p step (set --p).
    HeckeFactor(InputArg),
    /// Stabilizer membership: isogeny document with matrices [M, A].
    Stabilizer(InputArg),
    /// All isogeny matrices for (D, E) within --bound.
    SearchIsogeny(InputArg),
    /// All embedding matrices for (D, D', E) within --bound.
    SearchEmbedding(InputArg),
    /// Poincare decomposition of a rational representation
    /// (isogeny-layout document: ambient chains E, K; matrix Q).
    Decompose(InputArg),
    /// Transport a Siegel point along an isogeny type
    /// (document: chains D, E; matrix M; point of the target).
    Transport(InputArg),
    /// Symplectic action on a Siegel point (chains D, D; matrix R; point).
    SpAction(InputArg),
    /// Ambient Siegel point of an embedding (points of X and X').
    RealizeEmbedding(InputArg),
    /// Realize a morphism from points of X, X' and Y'.
    RealizeMorphism(InputArg),
    /// Validate a Siegel point document.
    ValidateSiegel(InputArg),
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(Outcome::Semantic(err)) => {
            emit(&error_report(&err));
            1
        }
        Err(Outcome::Malformed(msg)) => {
            eprintln!("pav: {msg}");
            2
        }
    }
}

enum Outcome {
    Semantic(pav_core::Error),
    Malformed(String),
}

impl From<pav_core::Error> for Outcome {
    fn from(e: pav_core::Error) -> Self {
        Outcome::Semantic(e)
    }
}

impl From<Malformed> for Outcome {
    fn from(e: Malformed) -> Self {
        Outcome::Malformed(e.0)
    }
}

fn emit<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("reports serialize"));
}

fn read_input(arg: &InputArg) -> Result<String, Outcome> {
    match &arg.input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Outcome::Malformed(format!("cannot read {}: {e}", path.display()))),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Outcome::Malformed(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, Outcome> {
    serde_json::from_str(text).map_err(|e| Outcome::Malformed(format!("bad JSON: {e}")))
}

/// Reads a type document and converts its chains and matrices, enforcing
/// the layout (chain count, matrix count) of the subcommand.
fn read_type_document(
    arg: &InputArg,
    kind: Kind,
    chains: usize,
    matrices: usize,
    points: usize,
) -> Result<(Vec<PolarizationType>, Vec<IntMatrix>, Vec<SiegelPoint>, TypeDocument), Outcome> {
    let text = read_input(arg)?;
    let document: TypeDocument = parse_json(&text)?;
    if document.kind != kind {
        return Err(Outcome::Malformed(format!(
            "expected a {kind:?} document for this subcommand"
        )));
    }
    if document.polarizations.len() != chains {
        return Err(Outcome::Malformed(format!(
            "expected {chains} polarization chains, found {}",
            document.polarizations.len()
        )));
    }
    if document.matrices.len() != matrices {
        return Err(Outcome::Malformed(format!(
            "expected {matrices} matrices, found {}",
            document.matrices.len()
        )));
    }
    let mut parsed_chains = Vec::with_capacity(chains);
    for c in &document.polarizations {
        parsed_chains.push(chain_from_doc(c)?.map_err(Outcome::Semantic)?);
    }
    let mut parsed_matrices = Vec::with_capacity(matrices);
    for m in &document.matrices {
        parsed_matrices.push(matrix_from_doc(m)?);
    }
    let empty = Vec::new();
    let point_docs = document.siegel_points.as_deref().unwrap_or(&empty);
    if point_docs.len() != points {
        return Err(Outcome::Malformed(format!(
            "expected {points} Siegel points, found {}",
            point_docs.len()
        )));
    }
    let mut parsed_points = Vec::with_capacity(points);
    for p in point_docs {
        parsed_points.push(siegel_from_doc(p)?);
    }
    Ok((parsed_chains, parsed_matrices, parsed_points, document))
}

fn verdict(report: &pav_core::morphisms::CheckReport) -> i32 {
    emit(&report_to_doc(report));
    if report.valid {
        0
    } else {
        1
    }
}

fn dispatch(cli: &Cli) -> Result<i32, Outcome> {
    match &cli.command {
        Command::CheckIsogeny(arg) => {
            let (chains, mats, _, _) = read_type_document(arg, Kind::Isogeny, 2, 1, 0)?;
            let report = check_isogeny_type(&chains[0], &chains[1], &mats[0])?;
            Ok(verdict(&report))
        }
        Command::CheckEmbedding(arg) => {
            let (chains, mats, _, _) = read_type_document(arg, Kind::Embedding, 3, 1, 0)?;
            let report = check_embedding_type(&chains[0], &chains[1], &chains[2], &mats[0])?;
            Ok(verdict(&report))
        }
        Command::CheckMorphism(arg) => {
            let (chains, mats, _, _) = read_type_document(arg, Kind::Morphism, 6, 3, 0)?;
            let t = morphism_from_parts(&chains, &mats)?;
            let report = check_morphism_type(&t)?;
            Ok(verdict(&report))
        }
        Command::Snf(arg) => {
            let document: MatrixDocument = parse_json(&read_input(arg)?)?;
            let m = matrix_from_doc(&document.matrix)?;
            let (s, u, v) = m.snf();
            #[derive(Serialize)]
            struct SnfDoc {
                s: MatrixDoc,
                u: MatrixDoc,
                v: MatrixDoc,
            }
            emit(&SnfDoc { s: matrix_to_doc(&s), u: matrix_to_doc(&u), v: matrix_to_doc(&v) });
            Ok(0)
        }
        Command::Hnf(arg) => {
            let document: MatrixDocument = parse_json(&read_input(arg)?)?;
            let m = matrix_from_doc(&document.matrix)?;
            let (h, u) = m.hnf();
            #[derive(Serialize)]
            struct HnfDoc {
                h: MatrixDoc,
                u: MatrixDoc,
            }
            emit(&HnfDoc { h: matrix_to_doc(&h), u: matrix_to_doc(&u) });
            Ok(0)
        }
        Command::Kernel(arg) => {
            let document: MatrixDocument = parse_json(&read_input(arg)?)?;
            let m = matrix_from_doc(&document.matrix)?;
            let group = kernel_structure(&m)?;
            let cosets = if group.order() <= BigInt::from(cli.max_order) {
                Some(
                    m.kernel_cosets(cli.max_order)?
                        .iter()
                        .map(|rep| {
                            (0..rep.rows()).map(|i| rep.entry(i, 0).to_string()).collect()
                        })
                        .collect::<Vec<Vec<String>>>(),
                )
            } else {
                None
            };
            #[derive(Serialize)]
            struct KernelDoc {
                invariant_factors: Vec<String>,
                order: String,
                #[serde(skip_serializing_if = "Option::is_none")]
                cosets: Option<Vec<Vec<String>>>,
            }
            emit(&KernelDoc {
                invariant_factors: group.invariant_factors().iter().map(|f| f.to_string()).collect(),
                order: group.order().to_string(),
                cosets,
            });
            Ok(0)
        }
        Command::EllipticCanonical(arg) => {
            let document: MatrixDocument = parse_json(&read_input(arg)?)?;
            let m = matrix_from_doc(&document.matrix)?;
            let (d1, d2) = elliptic_canonical(&m)?;
            #[derive(Serialize)]
            struct EllipticDoc {
                d1: String,
                d2: String,
            }
            emit(&EllipticDoc { d1: d1.to_string(), d2: d2.to_string() });
            Ok(0)
        }
        Command::HeckeFactor(arg) => {
            let document: MatrixDocument = parse_json(&read_input(arg)?)?;
            let m = matrix_from_doc(&document.matrix)?;
            let p_text = cli
                .p
                .clone()
                .or(document.p.clone())
                .ok_or_else(|| Outcome::Malformed("hecke-factor needs --p or a \"p\" field".into()))?;
            let p = parse_bigint(&p_text)?;
            let (m_u, m_g) = hecke_factor(&m, &p)?;
            #[derive(Serialize)]
            struct HeckeDoc {
                m_u: MatrixDoc,
                m_g: MatrixDoc,
            }
            emit(&HeckeDoc { m_u: matrix_to_doc(&m_u), m_g: matrix_to_doc(&m_g) });
            Ok(0)
        }
        Command::Stabilizer(arg) => {
            let (chains, mats, _, _) = read_type_document(arg, Kind::Isogeny, 2, 2, 0)?;
            let t = IsogenyType::new(chains[0].clone(), chains[1].clone(), mats[0].clone())?;
            let (member, conjugate) = is_in_stabilizer(&mats[1], &t)?;
            #[derive(Serialize)]
            struct StabilizerDoc {
                member: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                conjugate: Option<MatrixDoc>,
            }
            emit(&StabilizerDoc { member, conjugate: conjugate.as_ref().map(matrix_to_doc) });
            Ok(if member { 0 } else { 1 })
        }
        Command::SearchIsogeny(arg) => {
            let (chains, _, _, _) = read_type_document(arg, Kind::Isogeny, 2, 0, 0)?;
            let found =
                search_isogeny_matrices_with_jobs(&chains[0], &chains[1], cli.bound, cli.jobs);
            emit_search(&found);
            Ok(0)
        }
        Command::SearchEmbedding(arg) => {
            let (chains, _, _, document) = read_type_document(arg, Kind::Embedding, 3, 0, 0)?;
            let constraints = match &document.column_constraints {
                Some(docs) => constraints_from_doc(docs)?,
                None => Vec::new(),
            };
            let found = search_embedding_matrices_with_jobs(
                &chains[0],
                &chains[1],
                &chains[2],
                cli.bound,
                &constraints,
                cli.jobs,
            );
            emit_search(&found);
            Ok(0)
        }
        Command::Decompose(arg) => {
            let (chains, mats, _, _) = read_type_document(arg, Kind::Isogeny, 2, 1, 0)?;
            let dec = decompose_morphism(&chains[0], &chains[1], &mats[0])?;
            #[derive(Serialize)]
            struct DecomposeDoc {
                morphism: TypeDocument,
                basis_change: [MatrixDoc; 2],
                compatible: bool,
            }
            emit(&DecomposeDoc {
                morphism: morphism_to_doc(&dec.morphism),
                basis_change: [
                    matrix_to_doc(&dec.basis_change.0),
                    matrix_to_doc(&dec.basis_change.1),
                ],
                compatible: dec.compatible,
            });
            Ok(if dec.compatible { 0 } else { 1 })
        }
        Command::Transport(arg) => {
            let (chains, mats, points, _) = read_type_document(arg, Kind::Isogeny, 2, 1, 1)?;
            let out = transport(&points[0], &chains[1], &chains[0], &mats[0], cli.tol)?;
            emit_point(&out);
            Ok(0)
        }
        Command::SpAction(arg) => {
            let (chains, mats, points, _) = read_type_document(arg, Kind::Isogeny, 2, 1, 1)?;
            if chains[0] != chains[1] {
                return Err(Outcome::Semantic(pav_core::Error::SizeMismatch(
                    "sp-action needs equal source and target chains".into(),
                )));
            }
            let out = sp_action(&points[0], &chains[0], &mats[0], cli.tol)?;
            emit_point(&out);
            Ok(0)
        }
        Command::RealizeEmbedding(arg) => {
            let (chains, mats, points, _) = read_type_document(arg, Kind::Embedding, 3, 1, 2)?;
            let t = EmbeddingType::new(
                chains[0].clone(),
                chains[1].clone(),
                chains[2].clone(),
                mats[0].clone(),
            )?;
            let out = realize_embedding(&points[0], &points[1], &t, cli.tol)?;
            emit_point(&out);
            Ok(0)
        }
        Command::RealizeMorphism(arg) => {
            let (chains, mats, points, _) = read_type_document(arg, Kind::Morphism, 6, 3, 3)?;
            let t = morphism_from_parts(&chains, &mats)?;
            let (z_v, z_w, q) = realize_morphism(&points[0], &points[1], &points[2], &t, cli.tol)?;
            #[derive(Serialize)]
            struct RealizeDoc {
                z_v: ComplexMatrixDoc,
                z_w: ComplexMatrixDoc,
                q: MatrixDoc,
            }
            emit(&RealizeDoc {
                z_v: siegel_to_doc(&z_v),
                z_w: siegel_to_doc(&z_w),
                q: matrix_to_doc(&q),
            });
            Ok(0)
        }
        Command::ValidateSiegel(arg) => {
            let document: SiegelDocument = parse_json(&read_input(arg)?)?;
            let z = siegel_from_doc(&document.siegel_point)?;
            let valid = validate_siegel(&z, cli.tol);
            #[derive(Serialize)]
            struct ValidateDoc {
                valid: bool,
            }
            emit(&ValidateDoc { valid });
            Ok(if valid { 0 } else { 1 })
        }
    }
}

fn emit_search(found: &[IntMatrix]) {
    #[derive(Serialize)]
    struct SearchDoc {
        count: usize,
        matrices: Vec<MatrixDoc>,
    }
    emit(&SearchDoc { count: found.len(), matrices: found.iter().map(matrix_to_doc).collect() });
}

fn emit_point(z: &SiegelPoint) {
    #[derive(Serialize)]
    struct PointDoc {
        siegel_point: ComplexMatrixDoc,
    }
    emit(&PointDoc { siegel_point: siegel_to_doc(z) });
}
