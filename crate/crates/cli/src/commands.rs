//! Subcommand implementations, generic over the scalar domain.

use std::path::Path;
use std::process::ExitCode;

use qf_algebra::{inertia, AlgebraError, Field, Involution, Matrix};
use quiverforms::canon::{
    canon_congruence, canon_contragredient, canon_equivalence, canon_pencil, canon_similarity, canon_star_congruence,
    decompose_representation, CanonOptions, Decomposition, DEFAULT_CLUSTER_TOLERANCE,
};
use quiverforms::doubling::{algorithm3_forms, double_graph, double_representation, ArrowKind, DoubledQuiver, FormDomain};
use quiverforms::io::{matrix_json, parse_graph, parse_matrices, parse_representation, print_graph, print_matrix, print_representation};
use quiverforms::path_algebra::{
    algebra_to_quiver, parse_quiver_with_relations, parse_structured_algebra, quiver_with_relations_json, PathAlgebra,
};
use quiverforms::tits::{classify, indecomposable_dimensions, parameter_count, TitsForm};
use quiverforms::wild::{embed_pair_to_commuting_nilpotent, embed_quiver_rep_to_pair, MatrixPair};
use quiverforms::CoreError;
use serde_json::{json, Value};

use crate::{CanonProblem, Command, EmbedKind, PalgCommand, Settings};

/// Output of a successful command in both formats.
pub struct Report {
    pub json: Value,
    pub text: String,
}

impl Report {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Report { json, text: text.into() }
    }

    /// A report whose human-readable form is the indented JSON.
    fn json_only(json: Value) -> Self {
        let text = serde_json::to_string_pretty(&json).expect("values serialize") + "\n";
        Report { json, text }
    }
}

/// A failed command: exit code 1 for unreadable input, 2 for domain errors.
#[derive(Debug)]
pub struct Failure {
    kind: &'static str,
    message: String,
    position: Option<(usize, usize)>,
    code: u8,
}

impl Failure {
    pub fn usage(message: String) -> Self {
        Failure { kind: "usage", message, position: None, code: 1 }
    }

    pub fn domain(e: AlgebraError) -> Self {
        Failure { kind: "domain", message: e.to_string(), position: None, code: 2 }
    }

    fn parse(message: String) -> Self {
        Failure { kind: "parse", message, position: None, code: 1 }
    }

    pub fn emit(&self) -> ExitCode {
        let mut obj = json!({ "error": { "kind": self.kind, "message": self.message } });
        if let Some((line, column)) = self.position {
            obj["error"]["line"] = line.into();
            obj["error"]["column"] = column.into();
        }
        eprintln!("{obj}");
        ExitCode::from(self.code)
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Parse { line, column, message } => {
                Failure { kind: "parse", message, position: Some((line, column)), code: 1 }
            }
            other => Failure { kind: "domain", message: other.to_string(), position: None, code: 2 },
        }
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::domain(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure { kind: "io", message: format!("{}: {e}", path.display()), position: None, code: 1 })
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure::from(CoreError::Invalid(message.into()))
}

fn options(s: Settings, default: Involution) -> CanonOptions {
    CanonOptions {
        involution: s.involution.unwrap_or(default),
        tol: s.tol,
        cluster_tol: if s.tol == 0.0 { 0.0 } else { DEFAULT_CLUSTER_TOLERANCE.max(s.tol) },
    }
}

fn decomposition<T: Field>(d: &Decomposition<T>) -> Report {
    Report::new(d.to_json(), format!("{d}\n"))
}

fn exactly<T: Field, const N: usize>(mut ms: Vec<Matrix<T>>, what: &str) -> Result<[Matrix<T>; N], Failure> {
    if ms.len() != N {
        return Err(invalid(format!("{what} takes {N} matrices, got {}", ms.len())));
    }
    Ok(std::array::from_fn(|_| ms.remove(0)))
}

fn check_len(z: &[i64], t: usize) -> Result<(), Failure> {
    if z.len() != t {
        return Err(invalid(format!("the vector has {} components but the graph has {t} vertices", z.len())));
    }
    Ok(())
}

pub fn run<T: Field>(cmd: &Command, s: Settings) -> Result<Report, Failure> {
    match cmd {
        Command::Classify { graph } => {
            let t = classify(&parse_graph(&read(graph)?)?)?;
            let mut json = json!({ "type": t.kind() });
            if let Some(d) = t.diagram() {
                json["diagram"] = d.into();
            }
            Ok(Report::new(json, format!("{t}\n")))
        }
        Command::Tits { graph, eval } => {
            let g = parse_graph(&read(graph)?)?;
            let form = TitsForm::of(&g);
            let (plus, minus, zero) = form.signature();
            let mut json = json!({
                "vertices": form.vertices(),
                "gram2": form.gram2(),
                "signature": { "plus": plus, "minus": minus, "zero": zero },
            });
            if let Some(z) = eval {
                check_len(z, g.vertices())?;
                json["z"] = json!(z);
                json["value"] = form.eval(z).into();
            }
            Ok(Report::json_only(json))
        }
        Command::Roots { graph, bound } => {
            let g = parse_graph(&read(graph)?)?;
            let t = classify(&g)?;
            let roots = indecomposable_dimensions(&g, *bound)?;
            let text: String = roots.iter().map(|z| format!("{z:?}\n")).collect();
            Ok(Report::new(json!({ "type": t.kind(), "count": roots.len(), "roots": roots }), text))
        }
        Command::Params { graph, z } => {
            let g = parse_graph(&read(graph)?)?;
            check_len(z, g.vertices())?;
            let json = json!({ "z": z, "q": TitsForm::of(&g).eval(z), "parameters": parameter_count(&g, z) });
            Ok(Report::json_only(json))
        }
        Command::Canon { problem, matrices } => {
            let ms = parse_matrices::<T>(&read(matrices)?)?;
            let opts = options(s, Involution::Identity);
            let d = match problem {
                CanonProblem::Equiv => {
                    let [a] = exactly(ms, "equivalence")?;
                    canon_equivalence(&a, &opts)
                }
                CanonProblem::Sim => {
                    let [a] = exactly(ms, "similarity")?;
                    canon_similarity(&a, &opts)?
                }
                CanonProblem::Pencil => {
                    let [a, b] = exactly(ms, "a pencil")?;
                    canon_pencil(&a, &b, &opts)?
                }
                CanonProblem::Contra => {
                    let [a, b] = exactly(ms, "the contragredient problem")?;
                    canon_contragredient(&a, &b, &opts)?
                }
                CanonProblem::Congr => {
                    let [a] = exactly(ms, "congruence")?;
                    canon_congruence(&a, &CanonOptions { involution: Involution::Identity, ..opts })?
                }
                CanonProblem::Starcongr => {
                    let [a] = exactly(ms, "*congruence")?;
                    canon_star_congruence(&a, &CanonOptions { involution: Involution::Conjugation, ..opts })?
                }
            };
            Ok(decomposition(&d))
        }
        Command::Decompose { rep } => {
            let r = parse_representation::<T>(&read(rep)?)?;
            Ok(decomposition(&decompose_representation(&r, &options(s, Involution::Identity))?))
        }
        Command::Palg { command } => palg::<T>(command, s),
        Command::Double { input } => double::<T>(&read(input)?, s),
        Command::Inertia { matrix } => {
            let [m] = exactly(parse_matrices::<T>(&read(matrix)?)?, "inertia")?;
            let i = inertia(&m, s.tol)?;
            let json = json!({ "plus": i.plus, "minus": i.minus, "zero": i.zero });
            Ok(Report::new(json, format!("plus {} minus {} zero {}\n", i.plus, i.minus, i.zero)))
        }
        Command::Formcanon { matrix, real } => {
            let [m] = exactly(parse_matrices::<T>(&read(matrix)?)?, "a form")?;
            let domain = match (real, s.involution) {
                (true, Some(Involution::Conjugation)) => return Err(invalid("--real takes the identity involution")),
                (true, _) => FormDomain::RealSymmetric,
                (false, Some(Involution::Conjugation)) => FormDomain::Sesquilinear,
                (false, _) => FormDomain::Bilinear,
            };
            Ok(decomposition(&algorithm3_forms(&m, domain, &options(s, Involution::Identity))?))
        }
        Command::Embed { kind, input, scalars } => embed::<T>(*kind, &read(input)?, scalars.as_deref(), s),
    }
}

fn palg<T: Field>(cmd: &PalgCommand, s: Settings) -> Result<Report, Failure> {
    match cmd {
        PalgCommand::Mul { left, right, quiver, bound } => {
            let qr = parse_quiver_with_relations::<T>(&read(quiver)?)?;
            let alg = PathAlgebra::new(qr, *bound, s.tol)?;
            let product = alg.multiply(&alg.parse(left)?, &alg.parse(right)?)?;
            let shown = alg.display(&product);
            let terms: Vec<Value> = product
                .terms()
                .map(|(p, c)| json!({ "path": p.display(alg.quiver()), "coeff": c.to_string() }))
                .collect();
            Ok(Report::new(json!({ "product": shown, "terms": terms }), format!("{shown}\n")))
        }
        PalgCommand::FromAlgebra { algebra, bound } => {
            let alg = parse_structured_algebra::<T>(&read(algebra)?, s.tol)?;
            let bound = bound.unwrap_or(2 * alg.dim());
            let qr = algebra_to_quiver(&alg, bound)?;
            let mut json = quiver_with_relations_json(&qr);
            json["bound"] = bound.into();
            Ok(Report::json_only(json))
        }
    }
}

fn kind_name(k: ArrowKind) -> &'static str {
    match k {
        ArrowKind::Arrow => "arrow",
        ArrowKind::ArrowStar => "arrow-star",
        ArrowKind::Edge => "edge",
        ArrowKind::EdgeStar => "edge-star",
    }
}

fn doubled_labels(dq: &DoubledQuiver) -> Value {
    let q = dq.quiver();
    json!({
        "vertex_labels": (1..=q.vertices()).map(|v| dq.vertex_label(v)).collect::<Vec<_>>(),
        "arrow_kinds": (0..q.arrows().len())
            .map(|k| json!({ "id": q.arrows()[k].id, "kind": kind_name(dq.kind(k)), "star": q.arrows()[dq.arrow_star(k)].id }))
            .collect::<Vec<_>>(),
    })
}

fn double<T: Field>(text: &str, s: Settings) -> Result<Report, Failure> {
    let has_dims = serde_json::from_str::<Value>(text).ok().is_some_and(|v| v.get("dims").is_some());
    let (mut json, body) = if has_dims {
        let rep = parse_representation::<T>(text)?;
        let (dq, doubled) = double_representation(&rep, s.involution.unwrap_or_default())?;
        (doubled_labels(&dq), print_representation(&doubled))
    } else {
        let dq = double_graph(&parse_graph(text)?)?;
        (doubled_labels(&dq), print_graph(dq.quiver()))
    };
    let key = if has_dims { "representation" } else { "graph" };
    json[key] = serde_json::from_str(&body).map_err(|e| Failure::parse(e.to_string()))?;
    Ok(Report::new(json, body))
}

fn embed<T: Field>(kind: EmbedKind, text: &str, scalars: Option<&[String]>, s: Settings) -> Result<Report, Failure> {
    let pair: MatrixPair<T> = match kind {
        EmbedKind::Pair => {
            if scalars.is_some() {
                return Err(invalid("--scalars only applies to quiverrep"));
            }
            let [a, b] = exactly(parse_matrices::<T>(text)?, "a pair")?;
            embed_pair_to_commuting_nilpotent(&a, &b)?
        }
        EmbedKind::Quiverrep => {
            let rep = parse_representation::<T>(text)?;
            let given: Vec<T> = match scalars {
                None => (1..=4).map(T::from_i64).collect(),
                Some(list) => list
                    .iter()
                    .map(|x| T::parse_scalar(x.trim()).map_err(|e| Failure::parse(e.to_string())))
                    .collect::<Result<_, _>>()?,
            };
            let four: [T; 4] = given.try_into().map_err(|_| invalid("--scalars takes exactly four values"))?;
            embed_quiver_rep_to_pair(&rep, &four, s.tol)?
        }
    };
    let json = json!({ "first": matrix_json(&pair.first), "second": matrix_json(&pair.second) });
    Ok(Report::new(json, format!("{}{}", print_matrix(&pair.first), print_matrix(&pair.second))))
}
