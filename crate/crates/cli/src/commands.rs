//! Subcommand definitions and dispatch.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use pcurv_core::arith::{reduce_ratfun_mod_p, Fp, Rationals};
use pcurv_core::criteria::{
    eisenstein_check, grothendieck_scan, hypergeom_classify, kronecker_scan, local_logs_at_zero,
    order1_char0_classify, order1_charp_has_rational, p_integrality_check, EisensteinOutcome,
    HypergeomClass, HypergeomParams, IntegralityOutcome, KroneckerVerdict,
};
use pcurv_core::ore::reduce_op_mod_p;
use pcurv_core::pcurvature::{
    cartier_test, pcurvature_local_series_crt, pcurvature_recurrence, pcurvature_via_remainders,
    PCurvatureMatrix,
};
use pcurv_core::primes::is_prime;
use pcurv_core::series::{
    check_algebraic_relation, diagonal_small, hypergeom_series, series_solve, TruncatedSeries,
};

use crate::parser::{
    parse_bivar_poly, parse_multivariate, parse_operator, parse_poly, parse_ratfun,
    parse_rational_list, ParseError,
};
use crate::report::{
    self, cartier_value, operator_value, rational_value, ratfun_value, series_value, status_value,
    Report,
};

#[derive(Parser, Debug)]
#[command(
    name = "pcurv",
    about = "Exact p-curvatures, Cartier tests and algebraicity criteria for linear differential operators over Q(x)",
    version
)]
pub struct Cli {
    /// Write a machine-readable JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Method {
    Recurrence,
    Remainders,
    LocalCrt,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Euclidean division A = Q*B + R in the Ore ring, exactly.
    Divide {
        #[arg(long)]
        num: String,
        #[arg(long)]
        den: String,
        /// Divide over F_p instead of Q.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// The p-curvature matrix of an operator reduced mod p.
    Pcurvature {
        #[arg(long)]
        op: String,
        #[arg(long)]
        prime: u64,
        #[arg(long, value_enum, default_value_t = Method::Recurrence)]
        method: Method,
    },
    /// Cartier test: status, characteristic polynomial and witness.
    Cartier {
        #[arg(long)]
        op: String,
        #[arg(long)]
        prime: u64,
    },
    /// Scan a prime range and report the p-curvature status per prime.
    Scan {
        #[arg(long)]
        op: String,
        #[arg(long)]
        pmin: u64,
        #[arg(long)]
        pmax: u64,
    },
    /// Order-1 classification of y' = a(x) y (char 0, or mod a prime).
    Order1 {
        #[arg(long)]
        a: String,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Algebraicity of a generalized hypergeometric function by interlacing.
    Hypergeom {
        /// Upper parameters, e.g. "1/2,1/2".
        #[arg(long)]
        upper: String,
        /// Lower parameters (the trailing 1 is implicit), e.g. "1".
        #[arg(long)]
        lower: String,
        /// Also print this many series coefficients.
        #[arg(long)]
        series: Option<usize>,
    },
    /// Eisenstein rescaling check on a series prefix.
    Eisenstein {
        #[arg(long, requires = "init", conflicts_with_all = ["upper", "lower"])]
        op: Option<String>,
        #[arg(long)]
        init: Option<String>,
        #[arg(long, requires = "lower")]
        upper: Option<String>,
        #[arg(long)]
        lower: Option<String>,
        #[arg(long, default_value_t = 60)]
        terms: usize,
        /// Bound on the rescaling integer N.
        #[arg(long, default_value = "1000000")]
        nbound: String,
    },
    /// p-integrality of the series solution at the ordinary point 0.
    Integrality {
        #[arg(long)]
        op: String,
        /// Initial series coefficients, comma separated.
        #[arg(long)]
        init: String,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 200)]
        terms: usize,
    },
    /// Logarithms in the local solutions at 0 (Frobenius analysis).
    Locallogs {
        #[arg(long)]
        op: String,
    },
    /// Series solution at the ordinary point 0.
    Series {
        #[arg(long)]
        op: String,
        #[arg(long)]
        init: String,
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
    /// Diagonal of a rational function in x,y or x,y,z.
    Diagonal {
        #[arg(long)]
        fun: String,
        #[arg(long, default_value_t = 12)]
        terms: usize,
    },
    /// Kronecker scan: X^p = X mod (P, p) over a prime range.
    Kronecker {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        pmin: u64,
        #[arg(long)]
        pmax: u64,
    },
    /// Check P(x, s(x)) = 0 mod x^T for a computed series s.
    Relation {
        #[arg(long, requires = "init", conflicts_with_all = ["upper", "lower"])]
        op: Option<String>,
        #[arg(long)]
        init: Option<String>,
        #[arg(long, requires = "lower")]
        upper: Option<String>,
        #[arg(long)]
        lower: Option<String>,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 30)]
        terms: usize,
    },
}

#[derive(Debug)]
pub enum CmdError {
    Parse(ParseError),
    Domain(pcurv_core::Error),
    Usage(String),
}

impl From<ParseError> for CmdError {
    fn from(e: ParseError) -> Self {
        CmdError::Parse(e)
    }
}

impl From<pcurv_core::Error> for CmdError {
    fn from(e: pcurv_core::Error) -> Self {
        CmdError::Domain(e)
    }
}

impl CmdError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CmdError::Parse(_) | CmdError::Usage(_) => 2,
            CmdError::Domain(_) => 3,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            CmdError::Parse(_) => "parse-error",
            CmdError::Usage(_) => "usage-error",
            CmdError::Domain(_) => "domain-error",
        }
    }

    pub fn message(&self) -> String {
        match self {
            CmdError::Parse(e) => e.to_string(),
            CmdError::Domain(e) => e.to_string(),
            CmdError::Usage(m) => m.clone(),
        }
    }
}

fn check_prime(p: u64) -> Result<Fp, CmdError> {
    if !is_prime(p) || p >= (1 << 62) {
        return Err(CmdError::Usage(format!("{p} is not a prime below 2^62")));
    }
    Ok(Fp::new(p))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Divide { .. } => "divide",
        Command::Pcurvature { .. } => "pcurvature",
        Command::Cartier { .. } => "cartier",
        Command::Scan { .. } => "scan",
        Command::Order1 { .. } => "order1",
        Command::Hypergeom { .. } => "hypergeom",
        Command::Eisenstein { .. } => "eisenstein",
        Command::Integrality { .. } => "integrality",
        Command::Locallogs { .. } => "locallogs",
        Command::Series { .. } => "series",
        Command::Diagonal { .. } => "diagonal",
        Command::Kronecker { .. } => "kronecker",
        Command::Relation { .. } => "relation",
    }
}

fn pcurv_matrix_result(m: &PCurvatureMatrix) -> Value {
    json!({
        "prime": m.prime(),
        "size": m.size(),
        "is_zero": m.is_zero(),
        "entries": report::matrix_value(m.entries()),
        "charpoly": report::charpoly_value(&m.charpoly()),
        "denominator_base": m.denom_base().to_string(),
        "degree_bound": m.degree_bound(),
    })
}

fn series_source(
    op: &Option<String>,
    init: &Option<String>,
    upper: &Option<String>,
    lower: &Option<String>,
    terms: usize,
) -> Result<(TruncatedSeries<Rationals>, Value), CmdError> {
    match (op, upper) {
        (Some(op_text), None) => {
            let l = parse_operator(op_text)?;
            let init = parse_rational_list(init.as_deref().unwrap_or_default())?;
            let s = series_solve(&l, &init, terms)?;
            let echo = json!({
                "op": operator_value(&l),
                "init": Value::Array(init.iter().map(rational_value).collect()),
            });
            Ok((s, echo))
        }
        (None, Some(upper_text)) => {
            let upper_v = parse_rational_list(upper_text)?;
            let lower_v = parse_rational_list(lower.as_deref().unwrap_or_default())?;
            let s = hypergeom_series(&upper_v, &lower_v, terms)?;
            let echo = json!({ "upper": upper_text, "lower": lower.clone().unwrap_or_default() });
            Ok((s, echo))
        }
        _ => Err(CmdError::Usage(
            "provide either --op with --init, or --upper with --lower".into(),
        )),
    }
}

/// Runs one subcommand; returns the report and the human-readable text.
pub fn run(command: &Command) -> Result<(Report, String), (Report, CmdError)> {
    let name = command_name(command);
    let input = input_echo(command);
    match execute(command) {
        Ok((result, human)) => Ok((Report::ok(name, input, result), human)),
        Err(e) => {
            let rep = Report::error(name, input, e.status(), e.message());
            Err((rep, e))
        }
    }
}

fn input_echo(command: &Command) -> Value {
    match command {
        Command::Divide { num, den, prime } => json!({"num": num, "den": den, "prime": prime}),
        Command::Pcurvature { op, prime, method } => {
            json!({"op": op, "prime": prime, "method": format!("{method:?}")})
        }
        Command::Cartier { op, prime } => json!({"op": op, "prime": prime}),
        Command::Scan { op, pmin, pmax } => json!({"op": op, "pmin": pmin, "pmax": pmax}),
        Command::Order1 { a, prime } => json!({"a": a, "prime": prime}),
        Command::Hypergeom { upper, lower, series } => {
            json!({"upper": upper, "lower": lower, "series": series})
        }
        Command::Eisenstein { op, init, upper, lower, terms, nbound } => {
            json!({"op": op, "init": init, "upper": upper, "lower": lower, "terms": terms, "nbound": nbound})
        }
        Command::Integrality { op, init, prime, terms } => {
            json!({"op": op, "init": init, "prime": prime, "terms": terms})
        }
        Command::Locallogs { op } => json!({"op": op}),
        Command::Series { op, init, terms } => json!({"op": op, "init": init, "terms": terms}),
        Command::Diagonal { fun, terms } => json!({"fun": fun, "terms": terms}),
        Command::Kronecker { poly, pmin, pmax } => {
            json!({"poly": poly, "pmin": pmin, "pmax": pmax})
        }
        Command::Relation { op, init, upper, lower, poly, terms } => {
            json!({"op": op, "init": init, "upper": upper, "lower": lower, "poly": poly, "terms": terms})
        }
    }
}

fn execute(command: &Command) -> Result<(Value, String), CmdError> {
    match command {
        Command::Divide { num, den, prime } => {
            let a = parse_operator(num)?;
            let b = parse_operator(den)?;
            match prime {
                None => {
                    let (quo, rem) = a.right_divmod(&b)?;
                    let human = format!("Q = {quo}\nR = {rem}\nremainder zero: {}", rem.is_zero());
                    Ok((
                        json!({
                            "quotient": operator_value(&quo),
                            "remainder": operator_value(&rem),
                            "remainder_zero": rem.is_zero(),
                        }),
                        human,
                    ))
                }
                Some(p) => {
                    let fp = check_prime(*p)?;
                    let ap = reduce_op_mod_p(&a, fp)?;
                    let bp = reduce_op_mod_p(&b, fp)?;
                    let (quo, rem) = ap.right_divmod(&bp)?;
                    let human = format!(
                        "over F_{p}:\nQ = {quo}\nR = {rem}\nremainder zero: {}",
                        rem.is_zero()
                    );
                    Ok((
                        json!({
                            "prime": p,
                            "quotient": operator_value(&quo),
                            "remainder": operator_value(&rem),
                            "remainder_zero": rem.is_zero(),
                        }),
                        human,
                    ))
                }
            }
        }
        Command::Pcurvature { op, prime, method } => {
            let l = parse_operator(op)?;
            let fp = check_prime(*prime)?;
            let lp = reduce_op_mod_p(&l, fp)?;
            let m = match method {
                Method::Recurrence => pcurvature_recurrence(&lp),
                Method::Remainders => pcurvature_via_remainders(&lp),
                Method::LocalCrt => pcurvature_local_series_crt(&lp)?,
            };
            let mut human = format!("p-curvature of {l} mod {prime}:\n");
            for row in m.entries().rows() {
                let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
                let _ = writeln!(human, "  [{}]", cells.join(", "));
            }
            let _ = writeln!(human, "zero: {}", m.is_zero());
            Ok((pcurv_matrix_result(&m), human))
        }
        Command::Cartier { op, prime } => {
            let l = parse_operator(op)?;
            let fp = check_prime(*prime)?;
            let lp = reduce_op_mod_p(&l, fp)?;
            let rep = cartier_test(&lp);
            let human = format!("p = {}: status {}", rep.prime, rep.status.as_str());
            Ok((cartier_value(&rep), human))
        }
        Command::Scan { op, pmin, pmax } => {
            let l = parse_operator(op)?;
            if pmin > pmax {
                return Err(CmdError::Usage("--pmin must not exceed --pmax".into()));
            }
            let rep = grothendieck_scan(&l, *pmin, *pmax);
            let mut human = String::new();
            for (p, s) in &rep.statuses {
                let _ = writeln!(human, "p = {p}: {}", s.as_str());
            }
            let _ = writeln!(
                human,
                "zero: {}, nilpotent: {}, nonzero: {}, bad reduction: {}",
                rep.zero_count, rep.nilpotent_count, rep.nonzero_count, rep.bad_reduction_count
            );
            let _ = writeln!(
                human,
                "heuristic: {} (per-prime statuses are facts; the summary proves nothing)",
                if rep.all_zero() {
                    "consistent with a full basis of algebraic solutions".to_string()
                } else {
                    format!("exceptional primes {:?}", rep.exceptions)
                }
            );
            Ok((
                json!({
                    "statuses": rep.statuses.iter().map(|(p, s)| json!({"prime": p, "status": status_value(*s)})).collect::<Vec<_>>(),
                    "zero_count": rep.zero_count,
                    "nilpotent_count": rep.nilpotent_count,
                    "nonzero_count": rep.nonzero_count,
                    "bad_reduction_count": rep.bad_reduction_count,
                    "exceptions": rep.exceptions,
                }),
                human,
            ))
        }
        Command::Order1 { a, prime } => {
            let af = parse_ratfun(a)?;
            match prime {
                None => {
                    let v = order1_char0_classify(&af);
                    let human = format!(
                        "y' = a y with a = {af}\nrational solution: {}\nalgebraic solution: {}\nvanishes at infinity: {}",
                        v.has_rational_solution, v.has_algebraic_solution, v.vanishes_at_infinity
                    );
                    let diag: Vec<Value> = v
                        .diagnostics
                        .iter()
                        .map(|d| {
                            json!({
                                "factor": d.factor.to_string(),
                                "multiplicity": d.multiplicity,
                                "residue_constant": d.residue_constant,
                                "residue": d.residue.as_ref().map(rational_value),
                                "residue_integral": d.residue_integral,
                            })
                        })
                        .collect();
                    Ok((
                        json!({
                            "has_rational_solution": v.has_rational_solution,
                            "has_algebraic_solution": v.has_algebraic_solution,
                            "vanishes_at_infinity": v.vanishes_at_infinity,
                            "factors": diag,
                        }),
                        human,
                    ))
                }
                Some(p) => {
                    let fp = check_prime(*p)?;
                    // y' = a y is Dx - a, i.e. y' + b y = 0 with b = -a
                    let b = reduce_ratfun_mod_p(&af.neg(), fp)?;
                    let has = order1_charp_has_rational(&b);
                    let bp = pcurv_core::pcurvature::pcurvature_order1_closed_form(&b);
                    let human = format!(
                        "mod {p}: nonzero rational solution: {has} (p-curvature {})",
                        if bp.is_zero() { "0".to_string() } else { bp.to_string() }
                    );
                    Ok((
                        json!({
                            "prime": p,
                            "has_rational_solution": has,
                            "p_curvature": ratfun_value(&bp),
                        }),
                        human,
                    ))
                }
            }
        }
        Command::Hypergeom { upper, lower, series } => {
            let upper_v = parse_rational_list(upper)?;
            let lower_v = parse_rational_list(lower)?;
            let params = HypergeomParams::new(upper_v.clone(), lower_v.clone())?;
            let verdict = hypergeom_classify(&params)?;
            let class = match verdict.class {
                HypergeomClass::Algebraic => "algebraic",
                HypergeomClass::Transcendental => "transcendental",
            };
            let mut human = format!("classification: {class}\n");
            for c in &verdict.certificates {
                let _ = writeln!(
                    human,
                    "  l = {}: {}",
                    c.multiplier,
                    if c.interlaced { "interlaced" } else { "not interlaced" }
                );
            }
            let mut result = json!({
                "class": class,
                "common_denominator": params.common_denominator(),
                "certificates": verdict.certificates.iter().map(|c| json!({
                    "multiplier": c.multiplier,
                    "interlaced": c.interlaced,
                    "pattern": c.pattern.iter().map(|(v, up)| json!({"value": v, "upper": up})).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            });
            if let Some(t) = series {
                let s = hypergeom_series(&upper_v, &lower_v, *t)?;
                let _ = writeln!(human, "series: {:?}", s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
                result["series"] = series_value(&s);
            }
            Ok((result, human))
        }
        Command::Eisenstein { op, init, upper, lower, terms, nbound } => {
            let (s, echo) = series_source(op, init, upper, lower, *terms)?;
            let bound: BigInt = nbound
                .parse()
                .map_err(|_| CmdError::Usage("--nbound must be an integer".into()))?;
            let out = eisenstein_check(s.coeffs(), &bound)?;
            let (human, result) = match &out {
                EisensteinOutcome::Pass { n } => (
                    format!("pass with N = {n} over {terms} terms (heuristic for the prefix)"),
                    json!({"source": echo, "outcome": "pass", "n": report::bigint_value(n)}),
                ),
                EisensteinOutcome::Fail { witness_primes } => (
                    format!("fail: witness primes {witness_primes:?} (definitive for the prefix and bound)"),
                    json!({"source": echo, "outcome": "fail", "witness_primes": witness_primes}),
                ),
            };
            Ok((result, human))
        }
        Command::Integrality { op, init, prime, terms } => {
            let l = parse_operator(op)?;
            let fp = check_prime(*prime)?;
            let init = parse_rational_list(init)?;
            let (out, series) = p_integrality_check(&l, &init, fp.modulus(), *terms)?;
            let (human, result) = match out {
                IntegralityOutcome::Pass => (
                    format!("p-integral to index {} for p = {prime}", terms - 1),
                    json!({"outcome": "pass", "prime": prime, "terms": terms}),
                ),
                IntegralityOutcome::FirstFailure { index, valuation } => (
                    format!("first failure at index {index} (valuation {valuation}) for p = {prime}"),
                    json!({
                        "outcome": "fail",
                        "prime": prime,
                        "first_failure_index": index,
                        "valuation": valuation,
                        "coefficient": rational_value(&series.coeff(index)),
                    }),
                ),
            };
            Ok((result, human))
        }
        Command::Locallogs { op } => {
            let l = parse_operator(op)?;
            let rep = local_logs_at_zero(&l)?;
            let human = format!(
                "logs present: {}\nindicial polynomial: {}\nrational exponents: {:?}",
                rep.logs_present,
                rep.indicial_polynomial,
                rep.rational_exponents
                    .iter()
                    .map(|(r, m)| format!("{r} (x{m})"))
                    .collect::<Vec<_>>()
            );
            Ok((
                json!({
                    "logs_present": rep.logs_present,
                    "indicial_polynomial": rep.indicial_polynomial.to_string(),
                    "rational_exponents": rep.rational_exponents.iter().map(|(r, m)| json!({
                        "exponent": rational_value(r), "multiplicity": m
                    })).collect::<Vec<_>>(),
                    "logfree_prefixes": rep.logfree_prefixes.iter().map(|(r, c)| json!({
                        "exponent": rational_value(r),
                        "coefficients": c.iter().map(rational_value).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                }),
                human,
            ))
        }
        Command::Series { op, init, terms } => {
            let l = parse_operator(op)?;
            let init = parse_rational_list(init)?;
            let s = series_solve(&l, &init, *terms)?;
            let human = s
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| format!("c_{k} = {c}"))
                .collect::<Vec<_>>()
                .join("\n");
            Ok((json!({"coefficients": series_value(&s)}), human))
        }
        Command::Diagonal { fun, terms } => {
            let arity = if fun.contains('z') { 3 } else { 2 };
            let f = parse_multivariate(fun, arity)?;
            let d = diagonal_small(&f, *terms)?;
            let human = d
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| format!("a_{k} = {c}"))
                .collect::<Vec<_>>()
                .join("\n");
            Ok((
                json!({"arity": arity, "coefficients": series_value(&d)}),
                human,
            ))
        }
        Command::Kronecker { poly, pmin, pmax } => {
            let p = parse_poly(poly)?;
            if p.degree_or_zero() < 1 {
                return Err(CmdError::Usage("--poly must have degree >= 1".into()));
            }
            let primes = pcurv_core::primes::primes_in((*pmin).max(2), *pmax);
            let out = kronecker_scan(&p, &primes);
            let splitting: Vec<u64> = out
                .iter()
                .filter(|(_, v)| *v == KroneckerVerdict::SplitsCompletely)
                .map(|(p, _)| *p)
                .collect();
            let mut human = String::new();
            for (pr, v) in &out {
                let s = match v {
                    KroneckerVerdict::SplitsCompletely => "splits completely",
                    KroneckerVerdict::DoesNotSplit => "does not split",
                    KroneckerVerdict::Excluded => "excluded (not squarefree mod p)",
                };
                let _ = writeln!(human, "p = {pr}: {s}");
            }
            let _ = writeln!(human, "splitting primes: {splitting:?}");
            Ok((
                json!({
                    "verdicts": out.iter().map(|(pr, v)| json!({
                        "prime": pr,
                        "verdict": match v {
                            KroneckerVerdict::SplitsCompletely => "splits",
                            KroneckerVerdict::DoesNotSplit => "does-not-split",
                            KroneckerVerdict::Excluded => "excluded",
                        }
                    })).collect::<Vec<_>>(),
                    "splitting_primes": splitting,
                }),
                human,
            ))
        }
        Command::Relation { op, init, upper, lower, poly, terms } => {
            let (s, echo) = series_source(op, init, upper, lower, *terms)?;
            let p = parse_bivar_poly(poly)?;
            let holds = check_algebraic_relation(&s, &p, *terms);
            let human = format!("P(x, s(x)) = 0 mod x^{terms}: {holds}");
            Ok((json!({"source": echo, "holds": holds, "terms": terms}), human))
        }
    }
}
