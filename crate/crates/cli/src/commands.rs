use qclone::cloner::{clone_outputs_mixture, entropic_check, fidelity_in_basis, fourier_dual, EntropicCheck};
use qclone::families::{FamilyKind, FamilyParams};
use qclone::hilbert::DensityMatrix;
use qclone::mub::BasisLabel;
use qclone::optimizer::{symmetric_point, tradeoff_curve};
use serde_json::{json, Value};

use crate::input::{load_matrix, load_state, LoadedMatrix};
use crate::numfmt::{fmt_f64, round_f64};
use crate::{Args, CliError, Format, Report};

/// Rows of comma-separated cells, LF-terminated.
#[derive(Default)]
struct Csv(String);

impl Csv {
    fn row<S: AsRef<str>>(&mut self, cells: impl IntoIterator<Item = S>) {
        let cells: Vec<String> = cells.into_iter().map(|c| c.as_ref().to_string()).collect();
        self.0.push_str(&cells.join(","));
        self.0.push('\n');
    }
}

fn ok(body: String, warnings: Vec<String>) -> Report {
    Report {
        body,
        success: true,
        warnings,
    }
}

fn to_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

fn num(x: f64) -> Value {
    json!(round_f64(x))
}

fn cloner(args: &Args) -> Result<LoadedMatrix, CliError> {
    match (&args.matrix, args.family) {
        (Some(_), Some(_)) => Err(CliError::Usage("give either --matrix or --family, not both".into())),
        (None, None) => Err(CliError::Usage("a cloner is required: --matrix or --family".into())),
        (Some(source), None) => load_matrix(source),
        (None, Some(kind)) => {
            let params = symmetric_point(kind, args.dim as usize)?.params;
            Ok(LoadedMatrix {
                matrix: params.build()?,
                family: Some(params),
            })
        }
    }
}

fn bases_for(dim: usize) -> Result<&'static [BasisLabel], CliError> {
    match dim {
        2 | 3 => Ok(BasisLabel::all(dim)),
        _ => Err(CliError::Usage(format!(
            "basis tables exist for qubits and qutrits, not dimension {dim}"
        ))),
    }
}

pub fn table(args: &Args) -> Result<Report, CliError> {
    let loaded = cloner(args)?;
    let dim = loaded.matrix.dim();
    let bases = bases_for(dim)?;
    let p = loaded.matrix.probabilities();
    let q = fourier_dual(&loaded.matrix).probabilities();
    let mut rows = Vec::new();
    for (clone, probs) in [("A", &p), ("B", &q)] {
        for &basis in bases {
            rows.push((clone, basis, fidelity_in_basis(probs, basis)?));
        }
    }
    let body = match args.format {
        Format::Csv => {
            let mut csv = Csv::default();
            csv.row(["clone", "basis", "F", "D1", "D2"]);
            for (clone, basis, f) in &rows {
                csv.row([clone.to_string(), basis.to_string(), fmt_f64(f.fidelity), fmt_f64(f.d1), fmt_f64(f.d2)]);
            }
            csv.0
        }
        Format::Json => to_json(&Value::Array(
            rows.iter()
                .map(|(clone, basis, f)| {
                    json!({"clone": clone, "basis": basis, "F": num(f.fidelity), "D1": num(f.d1), "D2": num(f.d2)})
                })
                .collect(),
        )),
    };
    Ok(ok(body, Vec::new()))
}

fn param_columns(kind: FamilyKind) -> &'static [&'static str] {
    match kind {
        FamilyKind::Universal => &["alpha", "beta"],
        FamilyKind::ThreeBasisSym => &["x", "y", "z"],
        _ => &["v", "x", "y"],
    }
}

fn param_values(params: &FamilyParams) -> Vec<f64> {
    match *params {
        FamilyParams::TwoBasis(p) => vec![p.v, p.x, p.y],
        FamilyParams::ThreeBasisSym(p) => vec![p.x, p.y, p.z],
        FamilyParams::ThreeBasisAsym(p) => vec![p.v, p.x, p.y],
        FamilyParams::Universal(p) => vec![p.alpha, p.beta],
        FamilyParams::QubitPhaseCov(p) => vec![p.v, p.x, p.y],
    }
}

pub fn tradeoff(args: &Args) -> Result<Report, CliError> {
    let kind = args
        .family
        .ok_or_else(|| CliError::Usage("tradeoff needs --family".into()))?;
    let dim = args.dim as usize;
    let curve = tradeoff_curve(kind, args.grid as usize, dim)?;
    let columns = param_columns(kind);
    let body = match args.format {
        Format::Csv => {
            let mut csv = Csv::default();
            let mut meta = format!("# family={kind} grid={}", args.grid);
            if kind == FamilyKind::Universal {
                meta.push_str(&format!(" dim={dim}"));
            }
            csv.0.push_str(&meta);
            csv.0.push('\n');
            csv.row(["F", "F_tilde"].iter().chain(columns));
            for point in &curve {
                let mut cells = vec![fmt_f64(point.f_a), fmt_f64(point.f_b)];
                cells.extend(param_values(&point.params).into_iter().map(fmt_f64));
                csv.row(cells);
            }
            csv.0
        }
        Format::Json => {
            let points: Vec<Value> = curve
                .iter()
                .map(|point| {
                    let params: serde_json::Map<String, Value> = columns
                        .iter()
                        .zip(param_values(&point.params))
                        .map(|(name, v)| (name.to_string(), num(v)))
                        .collect();
                    json!({"F": num(point.f_a), "F_tilde": num(point.f_b), "params": params})
                })
                .collect();
            let mut doc = json!({"family": kind, "grid": args.grid, "points": points});
            if kind == FamilyKind::Universal {
                doc["dim"] = json!(dim);
            }
            to_json(&doc)
        }
    };
    Ok(ok(body, Vec::new()))
}

fn entropic_cells(check: &EntropicCheck) -> [(&'static str, f64); 4] {
    [
        ("H_p", check.entropy_p),
        ("H_q", check.entropy_q),
        ("total", check.total),
        ("bound", check.bound),
    ]
}

pub fn entropy(args: &Args) -> Result<Report, CliError> {
    let loaded = cloner(args)?;
    let p = loaded.matrix.probabilities();
    let q = fourier_dual(&loaded.matrix).probabilities();
    let check = entropic_check(&p, &q)?;
    let body = match args.format {
        Format::Csv => {
            let mut csv = Csv::default();
            csv.row(["H_p", "H_q", "total", "bound", "satisfied"]);
            let mut cells: Vec<String> = entropic_cells(&check).iter().map(|(_, v)| fmt_f64(*v)).collect();
            cells.push(check.satisfied.to_string());
            csv.row(cells);
            csv.0
        }
        Format::Json => {
            let mut doc: serde_json::Map<String, Value> =
                entropic_cells(&check).iter().map(|(k, v)| (k.to_string(), num(*v))).collect();
            doc.insert("satisfied".into(), json!(check.satisfied));
            to_json(&Value::Object(doc))
        }
    };
    Ok(ok(body, Vec::new()))
}

fn matrix_json(dim: usize, entry: impl Fn(usize, usize) -> (f64, f64)) -> Value {
    Value::Array(
        (0..dim)
            .map(|r| Value::Array((0..dim).map(|c| { let (re, im) = entry(r, c); json!([round_f64(re), round_f64(im)]) }).collect()))
            .collect(),
    )
}

fn density_entry(rho: &DensityMatrix) -> impl Fn(usize, usize) -> (f64, f64) + '_ {
    |r, c| {
        let z = rho.get(r, c);
        (z.re, z.im)
    }
}

pub fn clone(args: &Args) -> Result<Report, CliError> {
    let loaded = cloner(args)?;
    let source = args
        .state
        .as_ref()
        .ok_or_else(|| CliError::Usage("clone needs --state".into()))?;
    let mut warnings = Vec::new();
    let psi = load_state(source, &mut warnings)?;
    let out = clone_outputs_mixture(&loaded.matrix, &psi)?;
    let (f_a, f_b) = out.fidelities(&psi)?;
    let check = entropic_check(&out.p, &out.q)?;
    let dim = psi.dim();
    let body = match args.format {
        Format::Csv => {
            let mut csv = Csv::default();
            csv.row(["quantity", "row", "col", "re", "im"]);
            for (name, rho) in [("rho_a", &out.rho_a), ("rho_b", &out.rho_b)] {
                for r in 0..dim {
                    for c in 0..dim {
                        let z = rho.get(r, c);
                        csv.row([name.to_string(), r.to_string(), c.to_string(), fmt_f64(z.re), fmt_f64(z.im)]);
                    }
                }
            }
            for (name, probs) in [("p", &out.p), ("q", &out.q)] {
                for r in 0..dim {
                    for c in 0..dim {
                        csv.row([name.to_string(), r.to_string(), c.to_string(), fmt_f64(probs.get(r, c)), "0".into()]);
                    }
                }
            }
            csv.row(["F_A".to_string(), String::new(), String::new(), fmt_f64(f_a), "0".into()]);
            csv.row(["F_B".to_string(), String::new(), String::new(), fmt_f64(f_b), "0".into()]);
            for (name, v) in entropic_cells(&check) {
                csv.row([format!("entropy_{name}"), String::new(), String::new(), fmt_f64(v), "0".into()]);
            }
            let flag = if check.satisfied { "1" } else { "0" };
            csv.row(["entropic_bound_satisfied", "", "", flag, "0"]);
            csv.0
        }
        Format::Json => {
            let probs = |m: &qclone::cloner::ProbabilityMatrix| {
                Value::Array((0..dim).map(|r| Value::Array((0..dim).map(|c| num(m.get(r, c))).collect())).collect())
            };
            let mut entropic: serde_json::Map<String, Value> =
                entropic_cells(&check).iter().map(|(k, v)| (k.to_string(), num(*v))).collect();
            entropic.insert("satisfied".into(), json!(check.satisfied));
            to_json(&json!({
                "rho_a": matrix_json(dim, density_entry(&out.rho_a)),
                "rho_b": matrix_json(dim, density_entry(&out.rho_b)),
                "F_A": num(f_a),
                "F_B": num(f_b),
                "p": probs(&out.p),
                "q": probs(&out.q),
                "entropic": entropic,
            }))
        }
    };
    Ok(ok(body, warnings))
}
