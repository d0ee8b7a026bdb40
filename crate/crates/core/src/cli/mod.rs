//! The `milnor` command line. [`run`] parses an argument vector and returns
//! a [`CommandResult`]; printing and the process exit code are left to the
//! binary.

mod render;
mod repro;

use std::ffi::OsString;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

pub use repro::{eval_order_formula, repro, ReproCheck, ReproReport, ReproTarget};

use crate::bundle::{
    canonical_solution, classify_pair, cohomology_report, euler_class, mv_matrix, s7_bundle_class,
    s7_orientation_partner, solve_euler, ActionParams, BundleParams, CohomologyKind, S7_ACHIEVABLE,
};
use crate::cheeger::{
    cheeger_quotient_factors, find_negative_plane, sampled_minimum, DeformedMetric,
};
use crate::classify::{
    brieskorn_classify, diffeo_equiv_congruence, diffeo_equiv_product, eells_kuiper, euler_m,
    rp5_type,
};
use crate::disc_glue::{nonneg_certificate, ProfileFunction};
use crate::error::{Error, Result};
use crate::isotropy::{
    binary_dihedral_lift, check_principal_freeness, dihedral_orders, find_almost_free_lift,
    hopf_family, hopf_family_orders, is_almost_free, isotropy_table, mod56_family,
    oliver_obstruction, orbit_types, validate_diagram, GroupDiagram,
};
use crate::quat_lie::ReductiveSplit;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_CERTIFICATE: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "milnor",
    version,
    about = "Curvature of Cheeger-deformed metrics, S^3 bundles over S^4 and their SO(3) actions"
)]
struct Cli {
    /// Print the structured result as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All slope pairs (p-, p+) with Euler class k.
    #[command(allow_negative_numbers = true)]
    Solve {
        k: i64,
        /// Largest |p-| to list (required for k = 0).
        #[arg(long)]
        bound: Option<i64>,
    },
    /// The standard slope pair for Euler class k.
    #[command(allow_negative_numbers = true)]
    Canonical { k: i64 },
    /// Classes (k, l), Euler class and sphere type of the bundle with
    /// slopes (p-, q-, p+, q+).
    #[command(allow_negative_numbers = true)]
    Classify {
        p_minus: i64,
        q_minus: i64,
        p_plus: i64,
        q_plus: i64,
    },
    /// Euler class of the principal bundle with slopes (p-, p+).
    #[command(allow_negative_numbers = true)]
    Euler { p_minus: i64, p_plus: i64 },
    /// Orbit types of the SO(3) action with slopes (p-, q-, p+, q+).
    #[command(allow_negative_numbers = true)]
    Isotropy {
        p_minus: i64,
        q_minus: i64,
        p_plus: i64,
        q_plus: i64,
    },
    /// Orbit types of the standard action on the bundle with classes (k, l).
    #[command(name = "table42", allow_negative_numbers = true)]
    Table42 {
        k: i64,
        l: i64,
        /// For l = 0, list the members n in [-N, N].
        #[arg(long, default_value_t = 3)]
        family_bound: i64,
    },
    /// Class in Z_28 of the homotopy sphere with classes (k, 1-k).
    #[command(allow_negative_numbers = true)]
    Ek { k: i64 },
    /// Whether the spheres for k and m are oriented diffeomorphic.
    #[command(allow_negative_numbers = true)]
    Diffeo { k: i64, m: i64 },
    /// The link of z0^d + z1^2 + ... + zn^2 = 0.
    #[command(allow_negative_numbers = true)]
    Brieskorn { n: i64, d: i64 },
    /// The RP^5 quotient of the 5-dimensional Brieskorn link with exponent d.
    #[command(allow_negative_numbers = true)]
    Rp5 { d: i64 },
    /// Residue k(k+1)/2 mod 12 of the S^3 bundle over S^7.
    #[command(name = "s7class", allow_negative_numbers = true)]
    S7class { k: i64 },
    /// Integral cohomology of P_k, M_k, M_kl or P_kl.
    #[command(allow_negative_numbers = true)]
    Cohomology {
        kind: String,
        k: i64,
        l: Option<i64>,
    },
    /// Search for negatively curved planes of the deformed metric.
    #[command(name = "curvature-scan")]
    CurvatureScan {
        /// su2 or su2^n.
        #[arg(long, default_value = "su2^2")]
        algebra: String,
        /// diag, factor:<f>, circle:<f>, diag-circle, torus or slope:<s1>,...
        #[arg(long)]
        subalgebra: String,
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Curvature evaluations for the optimizer.
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        /// Uniformly sampled planes.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Disc profile and nonnegativity certificate for a codimension-two end.
    Glue {
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        /// Grid step of the profile checks.
        #[arg(long)]
        step: Option<f64>,
        /// Print the profile as CSV (t, f, orbit factor).
        #[arg(long)]
        csv: bool,
    },
    /// Almost free actions on the bundle with classes (k, l).
    #[command(allow_negative_numbers = true)]
    Lift {
        k: i64,
        l: i64,
        #[arg(long)]
        bound: Option<i64>,
    },
    /// The action (-3, 4n+1, 1, 4n+1) on S^7.
    #[command(allow_negative_numbers = true)]
    Hopf { n: i64 },
    /// The action for k + 56n on the sphere with class k.
    #[command(allow_negative_numbers = true)]
    Mod56 { k: i64, n: i64 },
    /// Validate a group diagram: `base`, `p p- p+` or `pp p- q- p+ q+`.
    #[command(allow_negative_numbers = true)]
    Diagram { kind: String, params: Vec<i64> },
    /// Scale factors of the quotient (g × k, Q + λQ) → g.
    Quotient { lambda: f64 },
    /// Recompute a reference table and compare with the shipped values.
    Repro {
        #[arg(value_enum)]
        target: ReproTarget,
    },
}

/// Outcome of one command line.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommandResult {
    pub command: Vec<String>,
    pub exit: i32,
    pub notes: Vec<String>,
    pub payload: Value,
    #[serde(skip)]
    pub json: bool,
    /// Human rendering, when it differs from the generic one.
    #[serde(skip)]
    pub text: Option<String>,
}

impl CommandResult {
    /// Usage and validation failures go to standard error.
    pub fn is_error(&self) -> bool {
        matches!(self.exit, EXIT_USAGE | EXIT_VALIDATION) || self.payload.get("error").is_some()
    }

    pub fn render(&self) -> String {
        if self.json {
            let mut s = serde_json::to_string_pretty(self).expect("values serialize");
            s.push('\n');
            return s;
        }
        let mut out = match &self.text {
            Some(t) => t.clone(),
            None => render::human(&self.payload),
        };
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

struct Output {
    payload: Value,
    notes: Vec<String>,
    exit: i32,
    text: Option<String>,
}

impl Output {
    fn new(payload: impl Serialize) -> Result<Self> {
        Ok(Output {
            payload: serde_json::to_value(payload)
                .map_err(|e| Error::Construction(e.to_string()))?,
            notes: vec![],
            exit: EXIT_OK,
            text: None,
        })
    }

    fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    fn text(mut self, t: String) -> Self {
        self.text = Some(t);
        self
    }

    fn exit(mut self, code: i32) -> Self {
        self.exit = code;
        self
    }
}

pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let command: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let json_flag = command.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let exit = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let message = e.render().to_string();
            let payload = if exit == EXIT_OK {
                json!({ "message": message })
            } else {
                json!({ "error": message, "kind": "usage" })
            };
            return CommandResult {
                command,
                exit,
                notes: vec![],
                payload,
                json: json_flag,
                text: Some(message),
            };
        }
    };
    let json = cli.json;
    match dispatch(cli.command) {
        Ok(out) => CommandResult {
            command,
            exit: out.exit,
            notes: out.notes,
            payload: out.payload,
            json,
            text: out.text,
        },
        Err(e) => {
            let exit = if e.is_validation() {
                EXIT_VALIDATION
            } else {
                EXIT_CERTIFICATE
            };
            CommandResult {
                command,
                exit,
                notes: vec![],
                payload: json!({ "error": e.to_string(), "kind": if exit == EXIT_VALIDATION { "validation" } else { "numeric" } }),
                json,
                text: Some(format!("error: {e}\n")),
            }
        }
    }
}

fn parse_algebra(s: &str) -> Result<usize> {
    let n = match s.strip_prefix("su2") {
        Some("") => Some(1),
        Some(rest) => rest.strip_prefix('^').and_then(|n| n.parse().ok()),
        None => None,
    };
    match n {
        Some(n) if n >= 1 => Ok(n),
        _ => Err(Error::UnknownKind(format!(
            "algebra {s}: expected su2 or su2^n"
        ))),
    }
}

fn dispatch(command: Command) -> Result<Output> {
    match command {
        Command::Solve { k, bound } => {
            let solutions = solve_euler(k, bound)?;
            let text = render::pairs(&solutions);
            let mut out =
                Output::new(json!({ "k": k, "count": solutions.len(), "solutions": solutions }))?
                    .text(text);
            if k == 0 {
                out = out.note(format!(
                    "k = 0 has the infinite family p- = p+ = 4n+1; listed up to |p-| <= {}",
                    bound.unwrap_or_default()
                ));
            }
            Ok(out)
        }
        Command::Canonical { k } => {
            Output::new(json!({ "k": k, "solution": canonical_solution(k)? }))
        }
        Command::Classify {
            p_minus,
            q_minus,
            p_plus,
            q_plus,
        } => {
            let params = ActionParams::new(p_minus, q_minus, p_plus, q_plus)?;
            let (k, l) = classify_pair(&params)?;
            let e = euler_m(k, l);
            let mut payload = json!({ "params": params, "k": k, "l": l, "euler": e.euler, "homotopy_sphere": e.homotopy_sphere });
            let mut out_notes = vec![];
            if e.euler == 1 {
                payload["diffeo_class"] =
                    serde_json::to_value(eells_kuiper(k)).expect("serializes");
            } else if e.euler == -1 {
                out_notes
                    .push("Euler class -1: reverse the orientation to get k + l = 1".to_string());
            }
            let mut out = Output::new(payload)?;
            for n in out_notes {
                out = out.note(n);
            }
            Ok(out)
        }
        Command::Euler { p_minus, p_plus } => {
            let p = BundleParams::new(p_minus, p_plus)?;
            Output::new(
                json!({ "params": p, "k": euler_class(&p)?, "mayer_vietoris": mv_matrix(&p)? }),
            )
        }
        Command::Isotropy {
            p_minus,
            q_minus,
            p_plus,
            q_plus,
        } => {
            let params = ActionParams::new(p_minus, q_minus, p_plus, q_plus)?;
            let types = orbit_types(&params)?;
            let multiplicity: serde_json::Map<String, Value> = types
                .types()
                .iter()
                .map(|t| (t.to_string(), json!(types.multiplicity(*t))))
                .collect();
            Output::new(json!({
                "params": params,
                "classes": classify_pair(&params)?,
                "dihedral_orders": dihedral_orders(&params)?,
                "orbit_types": types,
                "multiplicity": multiplicity,
                "lifted_types": types.lifted(),
                "almost_free": is_almost_free(&types),
                "disc_extension": oliver_obstruction(&types),
                "s3_isotropy_of_p": binary_dihedral_lift(&params.p())?,
            }))
        }
        Command::Table42 { k, l, family_bound } => {
            let entry = isotropy_table(k, l, family_bound)?;
            let text = render::table_entry(&entry);
            Ok(Output::new(&entry)?.text(text))
        }
        Command::Ek { k } => {
            let c = eells_kuiper(k);
            Output::new(
                json!({ "k": k, "value": c.value, "orientation_folded": c.orientation_folded, "label": c.label() }),
            )
        }
        Command::Diffeo { k, m } => {
            let product = diffeo_equiv_product(k, m);
            let congruence = diffeo_equiv_congruence(k, m);
            let out = Output::new(json!({
                "k": k, "m": m,
                "equivalent": product,
                "by_product_mod_56": product,
                "by_residues_mod_7_and_8": congruence,
            }))?;
            Ok(if product == congruence {
                out
            } else {
                out.exit(EXIT_CERTIFICATE)
            })
        }
        Command::Brieskorn { n, d } => Output::new(brieskorn_classify(n, d)?),
        Command::Rp5 { d } => Output::new(rp5_type(d)?),
        Command::S7class { k } => {
            let r = s7_bundle_class(k);
            Output::new(json!({
                "k": k,
                "residue": r,
                "achievable_set": S7_ACHIEVABLE,
                "orientation_partner": s7_orientation_partner(r),
            }))
        }
        Command::Cohomology { kind, k, l } => {
            let kind: CohomologyKind = kind.parse()?;
            let report = cohomology_report(kind, k, l)?;
            let out = Output::new(&report)?;
            Ok(report.notes.iter().fold(out, |o, n| o.note(n.clone())))
        }
        Command::CurvatureScan {
            algebra,
            subalgebra,
            a,
            seed,
            budget,
            samples,
        } => {
            let factors = parse_algebra(&algebra)?;
            let split = ReductiveSplit::parse(factors, &subalgebra)?;
            let label = split.label().to_string();
            let metric = DeformedMetric::new(split, a)?;
            let sampled = sampled_minimum(&metric, samples, seed);
            let search = find_negative_plane(&metric, budget, seed);
            let result = if search.witness.is_some() {
                "negative-plane"
            } else {
                "none-found"
            };
            Output::new(json!({
                "algebra": algebra,
                "subalgebra": label,
                "a": a,
                "seed": seed,
                "result": result,
                "sampled_min": sampled.min,
                "samples": sampled.samples,
                "search": search,
            }))
        }
        Command::Glue { a, r, step, csv } => {
            let mut profile = ProfileFunction::sine_cap(a, r)?;
            if let Some(s) = step {
                profile = profile.with_step(s)?;
            }
            let metric = DeformedMetric::new(ReductiveSplit::circle(1, 0)?, a)?;
            let cert = nonneg_certificate(&profile, &metric)?;
            let passed = cert.passed();
            let mut payload = json!({
                "params": profile.params(),
                "report": profile.check(),
                "certificate": cert,
                "passed": passed,
            });
            let mut out = if csv {
                let table = profile.to_csv();
                payload["csv"] = json!(table);
                Output::new(payload)?.text(table)
            } else {
                Output::new(payload)?
            };
            if !passed {
                out = out.exit(EXIT_CERTIFICATE);
            }
            Ok(out)
        }
        Command::Lift { k, l, bound } => {
            let lifts = find_almost_free_lift(k, l, bound)?;
            let text = render::lifts(&lifts);
            Ok(
                Output::new(json!({ "k": k, "l": l, "count": lifts.len(), "lifts": lifts }))?
                    .text(text),
            )
        }
        Command::Hopf { n } => {
            let (params, types) = hopf_family(n)?;
            Output::new(json!({
                "n": n,
                "params": params,
                "orders": hopf_family_orders(n),
                "orbit_types": types,
                "almost_free": is_almost_free(&types),
                "disc_extension": oliver_obstruction(&types),
            }))
        }
        Command::Mod56 { k, n } => {
            let m = mod56_family(k, n)?;
            Output::new(json!({
                "member": m,
                "diffeo_class": eells_kuiper(k),
                "same_class": eells_kuiper(k) == eells_kuiper(m.shifted_k),
            }))
        }
        Command::Diagram { kind, params } => {
            let d = match (kind.as_str(), &params[..]) {
                ("base", []) => GroupDiagram::s4_base(),
                ("p", &[pm, pp]) => GroupDiagram::principal_s3(pm, pp),
                ("pp", &[pm, qm, pp, qp]) => GroupDiagram::principal_s3xs3(pm, qm, pp, qp),
                _ => {
                    return Err(Error::UnknownKind(format!(
                        "diagram {kind} with {} parameters",
                        params.len()
                    )))
                }
            };
            validate_diagram(&d)?;
            Output::new(json!({
                "diagram": d,
                "valid": true,
                "principal_free": check_principal_freeness(&d),
                "end_codimensions": d.end_codimensions(),
            }))
        }
        Command::Quotient { lambda } => {
            let (m, p) = cheeger_quotient_factors(lambda)?;
            Output::new(json!({ "lambda": lambda, "factor_m": m, "factor_k": p }))
        }
        Command::Repro { target } => {
            let report = repro(target)?;
            let text = render::repro(&report);
            let out = Output::new(&report)?.text(text);
            Ok(if report.passed() {
                out
            } else {
                out.exit(EXIT_CERTIFICATE)
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CommandResult {
        run(std::iter::once("milnor").chain(args.iter().copied()))
    }

    #[test]
    fn solve_lists_eight_pairs() {
        let r = run_args(&["solve", "105", "--json"]);
        assert_eq!(r.exit, 0);
        assert_eq!(r.payload["count"], 8);
    }

    #[test]
    fn negative_arguments_parse() {
        let r = run_args(&["isotropy", "5", "-3", "1", "5"]);
        assert_eq!(r.exit, 0, "{}", r.render());
        assert_eq!(r.payload["almost_free"], true);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["frobnicate"]).exit, EXIT_USAGE);
        assert_eq!(run_args(&["euler", "3", "1"]).exit, EXIT_VALIDATION);
        assert_eq!(run_args(&["glue", "--a", "1.5"]).exit, EXIT_CERTIFICATE);
        assert_eq!(run_args(&["glue", "--a", "0.9"]).exit, EXIT_VALIDATION);
        assert_eq!(run_args(&["--help"]).exit, EXIT_OK);
    }

    #[test]
    fn ek_generator_label() {
        let r = run_args(&["ek", "2"]);
        assert_eq!(r.payload["value"], 1);
        assert_eq!(r.payload["label"], "generator of Z_28");
    }

    #[test]
    fn algebra_names() {
        assert_eq!(parse_algebra("su2").unwrap(), 1);
        assert_eq!(parse_algebra("su2^3").unwrap(), 3);
        assert!(parse_algebra("so3").is_err());
        assert!(parse_algebra("su2^0").is_err());
    }
}
