//! Batch command-line surface over the `trispin` library.
//!
//! Every subcommand reads JSON (from `--in`, `--inline`, or stdin),
//! writes one JSON document to stdout, and reports failures as JSON on
//! stderr. Exit codes: 0 on success, 1 on a domain error (an operation
//! rejected valid JSON), 2 on a parse error (malformed input or flags).
//! Outputs are byte-identical across runs for identical inputs in the
//! exact scalar modes.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Map, Value};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use trispin::arthur::{
    param_satake_at_p, remix, spin_shape_of_siegel, tensor_constituent, validate_param,
    ArthurError, VariantSource,
};
use trispin::jsonio::{self, JsonError, SCHEMA_VERSION};
use trispin::lfactor::{
    epsilon_sign, euler_eval, g2_euler_identity_check, gamma_eval, gamma_factor, LFactorError,
    LocalFactor, DEFAULT_ABSCISSA,
};
use trispin::octonion::OctonionError;
use trispin::satake::{
    embed_spin_torus, g2_test, siegel_weights, spinbar, theta_satake, EmbedCase, GSpinParam,
    HalfSpinSign, SatakeError,
};
use trispin::scalar::{Scalar, ScalarError, ScalarMode};
use trispin::spin8::{
    center_sign_patterns, kernel_of_rho, lift_reflection_pair, SpinError, TripleDefect,
};
use trispin::trispin::TriSpinError;

#[derive(Parser)]
#[command(name = "trispin", version, about = "Exact triality, Satake transfer, and spinor L-factor calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the intertwining relations of a spin triple
    VerifyTriple(IoArgs),
    /// Apply the order-three rotation to a spin triple
    Theta(IoArgs),
    /// Lift a pair of non-isotropic vectors to a spin triple
    Lift(IoArgs),
    /// Enumerate the center and the projection kernels
    Center(CenterArgs),
    /// Validate a scaled triple and report its canonical representative
    TrispinCheck(IoArgs),
    /// Torus-level Satake calculus
    #[command(subcommand)]
    Satake(SatakeCmd),
    /// Parameter shapes and their evaluation
    #[command(subcommand)]
    Arthur(ArthurCmd),
    /// Local factors, gamma factors, Euler products
    #[command(subcommand)]
    Lfun(LfunCmd),
}

#[derive(Subcommand)]
enum SatakeCmd {
    /// Spin eigenvalue multiset of an odd parameter
    Spin(IoArgs),
    /// Standard eigenvalue multiset of a parameter
    Std(IoArgs),
    /// Half-spin eigenvalue multiset of an even parameter
    Halfspin(HalfspinArgs),
    /// Embed two parameters along the direct-sum inclusion
    Embed(IoArgs),
    /// Theta transfer from rank n to SO(2m) parameters
    ThetaLift(ThetaLiftArgs),
    /// Membership test for the exceptional-subgroup locus
    G2(IoArgs),
    /// Archimedean weight bookkeeping for a genus-3 weight
    Weights(WeightsArgs),
    /// Spin multiset up to a common scalar
    Spinbar(IoArgs),
}

#[derive(Subcommand)]
enum ArthurCmd {
    /// Structural diagnostics for a parameter
    Validate(ValidateArgs),
    /// Eigenvalue multiset of a parameter at one prime
    Eval(EvalArgs),
    /// Spin shape attached to a standard shape
    SpinShape(IoArgs),
    /// Degree-8 shapes of the low-genus pullbacks
    Variant(VariantArgs),
    /// Exchange tensor pairings on four degree-2 constituents
    Remix(IoArgs),
    /// Tensor product of two constituents
    Tensor(IoArgs),
}

#[derive(Subcommand)]
enum LfunCmd {
    /// Reciprocal local factor of an eigenvalue multiset
    Factor(FactorArgs),
    /// Gamma-factor shifts of a genus-3 weight, optionally evaluated
    Gamma(GammaArgs),
    /// Truncated Euler product with a tail report
    Euler(EulerArgs),
    /// Functional-equation sign predicted from self-duality data
    Epsilon(IoArgs),
    /// Zeta-times-standard factorization check for a rank-3 parameter
    G2Identity(IoArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Rational,
    Qhalf,
    Complex,
}

impl From<ModeArg> for ScalarMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Rational => ScalarMode::Rational,
            ModeArg::Qhalf => ScalarMode::QHalf,
            ModeArg::Complex => ScalarMode::Complex,
        }
    }
}

#[derive(Args, Clone)]
struct IoArgs {
    /// Scalar mode for parsing and arithmetic
    #[arg(long, value_enum, default_value_t = ModeArg::Rational)]
    mode: ModeArg,
    /// Comparison tolerance (only meaningful in complex mode)
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    /// Read the input document from this file
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    /// Take the input document from the command line
    #[arg(long, value_name = "JSON")]
    inline: Option<String>,
}

#[derive(Args)]
struct CenterArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Rational)]
    mode: ModeArg,
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
}

#[derive(Args)]
struct HalfspinArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Which half-spin representation
    #[arg(long, value_enum)]
    sign: SignArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Args)]
struct ThetaLiftArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Target rank m (the transfer lands in SO(2m) parameters)
    #[arg(long)]
    m: usize,
    /// Residue cardinality q; defaults to the symbolic u^2 in qhalf mode
    #[arg(long)]
    q: Option<String>,
}

#[derive(Args)]
struct WeightsArgs {
    k1: i64,
    k2: i64,
    k3: i64,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Degree the parameter must sum to
    #[arg(long, default_value_t = 8)]
    degree: usize,
    /// Apply the duality-parity constraints of discrete parameters
    #[arg(long)]
    discrete: bool,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Prime whose stored Satake data is evaluated
    #[arg(long)]
    prime: u64,
    /// Residue cardinality q as a scalar in the current mode
    #[arg(long)]
    q: String,
}

#[derive(Args)]
struct VariantArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Which low-genus pullback the two constituents come from
    #[arg(long, value_enum)]
    source: SourceArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceArg {
    Pgsp2,
    Pgsp4,
}

#[derive(Args)]
struct FactorArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Prime the factor is attached to
    #[arg(long)]
    p: u64,
}

#[derive(Args)]
struct GammaArgs {
    k1: i64,
    k2: i64,
    k3: i64,
    /// Evaluate the product at s = re [im]
    #[arg(long, num_args = 1..=2, value_name = "RE [IM]", allow_negative_numbers = true)]
    s: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1e-9)]
    eps: f64,
}

#[derive(Args)]
struct EulerArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Built-in family instead of an input document
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    /// Evaluation point s = re [im]
    #[arg(long, num_args = 1..=2, required = true, value_name = "RE [IM]", allow_negative_numbers = true)]
    s: Vec<f64>,
    /// Multiply factors at primes up to this bound
    #[arg(long, default_value_t = 1000)]
    cutoff: u64,
    /// Restrict the family to these primes
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Declared convergence abscissa of the family
    #[arg(long, default_value_t = DEFAULT_ABSCISSA)]
    abscissa: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    /// The constant factor 1 - T at every prime
    Zeta,
}

// ---- failure plumbing ---------------------------------------------------

struct Failure {
    exit: u8,
    code: String,
    message: String,
    location: Option<String>,
}

impl Failure {
    fn domain(code: &str, message: impl Into<String>) -> Self {
        Failure {
            exit: 1,
            code: code.to_string(),
            message: message.into(),
            location: None,
        }
    }

    fn parse(message: impl Into<String>) -> Self {
        Failure {
            exit: 2,
            code: "parse".to_string(),
            message: message.into(),
            location: None,
        }
    }
}

impl From<JsonError> for Failure {
    fn from(e: JsonError) -> Self {
        Failure {
            exit: 2,
            code: "parse".to_string(),
            message: e.reason.clone(),
            location: Some(e.location),
        }
    }
}

fn scalar_code(e: &ScalarError) -> &'static str {
    match e {
        ScalarError::ModeMismatch { .. } => "mode-mismatch",
        ScalarError::DivisionByZero => "division-by-zero",
        ScalarError::NoExactSqrt { .. } => "no-exact-sqrt",
        ScalarError::HalfIntegralPower => "half-integral-power",
        ScalarError::Parse { .. } => "scalar-parse",
        ScalarError::VariableInRationalMode => "variable-in-rational-mode",
    }
}

fn octonion_code(e: &OctonionError) -> &'static str {
    match e {
        OctonionError::Scalar(s) => scalar_code(s),
        OctonionError::IsotropicVector => "isotropic-vector",
        OctonionError::NotASimilitude => "not-a-similitude",
    }
}

fn spin_code(e: &SpinError) -> &'static str {
    match e {
        SpinError::Octonion(o) => octonion_code(o),
        SpinError::NormProductNotSquare { .. } => "norm-product-not-square",
        SpinError::BadComponentIndex(_) => "bad-component-index",
    }
}

fn trispin_code(e: &TriSpinError) -> &'static str {
    match e {
        TriSpinError::Scalar(s) => scalar_code(s),
        TriSpinError::Spin(s) => spin_code(s),
        TriSpinError::ZeroScaling { .. } => "zero-scaling",
    }
}

fn satake_code(e: &SatakeError) -> &'static str {
    match e {
        SatakeError::Scalar(s) => scalar_code(s),
        SatakeError::ZeroEntry { .. } => "zero-entry",
        SatakeError::WrongRank { .. } => "wrong-rank",
        SatakeError::RankTooSmall { .. } => "rank-too-small",
        SatakeError::ParityMismatch { .. } => "parity-mismatch",
        SatakeError::DeterminantMismatch { .. } => "determinant-mismatch",
        SatakeError::NotPGSp6Param { .. } => "not-pgsp6-param",
        SatakeError::WeightConstraintViolated { .. } => "weight-constraint-violated",
        SatakeError::BadPermutation { .. } => "bad-permutation",
        SatakeError::IndexOutOfRange { .. } => "index-out-of-range",
    }
}

fn arthur_code(e: &ArthurError) -> &'static str {
    match e {
        ArthurError::Scalar(s) => scalar_code(s),
        ArthurError::MissingSatakeData { .. } => "missing-satake-data",
        ArthurError::SizeMismatch { .. } => "size-mismatch",
        ArthurError::DegreeMismatch { .. } => "degree-mismatch",
        ArthurError::SymplecticOddDegree { .. } => "symplectic-odd-degree",
        ArthurError::SatakeSizeMismatch { .. } => "satake-size-mismatch",
        ArthurError::CentralCharacterMismatch { .. } => "central-character-mismatch",
        ArthurError::ShapeInvalid { .. } => "shape-invalid",
    }
}

fn lfactor_code(e: &LFactorError) -> &'static str {
    match e {
        LFactorError::Scalar(s) => scalar_code(s),
        LFactorError::Satake(s) => satake_code(s),
        LFactorError::Arthur(a) => arthur_code(a),
        LFactorError::PrimeMismatch { .. } => "prime-mismatch",
        LFactorError::NotG2Type => "not-g2-type",
        LFactorError::PoleAt { .. } => "pole-at",
        LFactorError::MissingSelfdualType { .. } => "missing-selfdual-type",
        LFactorError::MissingEpsilon { .. } => "missing-epsilon",
        LFactorError::NonNumericScalar { .. } => "non-numeric-scalar",
    }
}

macro_rules! domain_failure {
    ($($ty:ty => $code_fn:ident),* $(,)?) => {
        $(impl From<$ty> for Failure {
            fn from(e: $ty) -> Self {
                Failure::domain($code_fn(&e), e.to_string())
            }
        })*
    };
}

domain_failure!(
    ScalarError => scalar_code,
    OctonionError => octonion_code,
    SpinError => spin_code,
    TriSpinError => trispin_code,
    SatakeError => satake_code,
    ArthurError => arthur_code,
    LFactorError => lfactor_code,
);

// ---- input plumbing ------------------------------------------------------

impl IoArgs {
    fn mode(&self) -> ScalarMode {
        self.mode.into()
    }

    fn document(&self) -> Result<Value, Failure> {
        let text = match (&self.input, &self.inline) {
            (Some(_), Some(_)) => {
                return Err(Failure::parse("choose one of --in and --inline, not both"))
            }
            (Some(path), None) => std::fs::read_to_string(path)
                .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?,
            (None, Some(inline)) => inline.clone(),
            (None, None) => {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| Failure::parse(format!("cannot read stdin: {e}")))?;
                buf
            }
        };
        Ok(jsonio::parse_document(&text)?)
    }

    /// A scalar passed on the command line rather than inside a document.
    fn scalar_arg(&self, text: &str, what: &str) -> Result<Scalar, Failure> {
        match self.mode() {
            ScalarMode::Complex => {
                let re: f64 = text
                    .parse()
                    .map_err(|_| Failure::parse(format!("{what}: expected a number, got {text:?}")))?;
                Ok(Scalar::Cpx(Complex64::new(re, 0.0)))
            }
            mode => Scalar::parse(text, mode)
                .map_err(|e| Failure::parse(format!("{what}: {e}"))),
        }
    }
}

fn schema_obj(pairs: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    m.insert("schema".to_string(), json!(SCHEMA_VERSION));
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

fn defect_message(d: &TripleDefect) -> String {
    match d {
        TripleDefect::NotSpecialOrthogonal { component } => {
            format!("component {component} is not special orthogonal for the norm form")
        }
        TripleDefect::RelationFailed { i, j } => {
            format!("intertwining relation failed at basis pair ({i}, {j})")
        }
    }
}

fn odd_param(p: GSpinParam) -> Result<trispin::satake::GSpinOddParam, Failure> {
    match p {
        GSpinParam::Odd(c) => Ok(c),
        GSpinParam::Even(_) => Err(Failure::domain(
            "parity-mismatch",
            "this operation takes an odd parameter",
        )),
    }
}

fn eigen_out(e: &trispin::satake::EigenMultiset) -> Value {
    schema_obj(vec![("eigen", jsonio::multiset_to_value(e))])
}

fn complex_point(s: &[f64]) -> Complex64 {
    Complex64::new(s[0], s.get(1).copied().unwrap_or(0.0))
}

// ---- command bodies ------------------------------------------------------

fn run(cli: Cli) -> Result<Value, Failure> {
    match cli.command {
        Command::VerifyTriple(io) => {
            let doc = io.document()?;
            let triple = jsonio::spin_triple_from_value(&doc, "", io.mode())?;
            Ok(match triple.validate(io.eps) {
                Ok(()) => schema_obj(vec![("valid", json!(true))]),
                Err(d) => schema_obj(vec![
                    ("valid", json!(false)),
                    ("defect", json!(defect_message(&d))),
                ]),
            })
        }
        Command::Theta(io) => {
            let doc = io.document()?;
            let triple = jsonio::spin_triple_from_value(&doc, "", io.mode())?;
            Ok(jsonio::spin_triple_to_value(&triple.theta()))
        }
        Command::Lift(io) => {
            let doc = io.document()?;
            let x = jsonio::octonion_from_value(
                jsonio::field_of(&doc, "x")?,
                "/x",
                io.mode(),
            )?;
            let y = jsonio::octonion_from_value(
                jsonio::field_of(&doc, "y")?,
                "/y",
                io.mode(),
            )?;
            let triple = lift_reflection_pair(&x, &y, io.eps)?;
            Ok(jsonio::spin_triple_to_value(&triple))
        }
        Command::Center(args) => {
            let mode = args.mode.into();
            let patterns = center_sign_patterns(mode, args.eps);
            let mut kernel_sizes = Vec::new();
            for j in 1..=3 {
                kernel_sizes.push(kernel_of_rho(j, mode, args.eps)?.len());
            }
            Ok(schema_obj(vec![
                ("order", json!(patterns.len())),
                ("patterns", json!(patterns)),
                ("kernel_sizes", json!(kernel_sizes)),
            ]))
        }
        Command::TrispinCheck(io) => {
            let doc = io.document()?;
            let z = jsonio::trispin_from_value(&doc, "", io.mode())?;
            let valid = z.is_valid(io.eps);
            Ok(schema_obj(vec![
                ("valid", json!(valid)),
                ("canonical", jsonio::trispin_to_value(&z.canonical_form(io.eps))),
            ]))
        }
        Command::Satake(cmd) => run_satake(cmd),
        Command::Arthur(cmd) => run_arthur(cmd),
        Command::Lfun(cmd) => run_lfun(cmd),
    }
}

fn run_satake(cmd: SatakeCmd) -> Result<Value, Failure> {
    match cmd {
        SatakeCmd::Spin(io) => {
            let c = odd_param(jsonio::gspin_from_value(&io.document()?, "", io.mode())?)?;
            Ok(eigen_out(&c.spin_eigen()))
        }
        SatakeCmd::Std(io) => {
            let p = jsonio::gspin_from_value(&io.document()?, "", io.mode())?;
            let eigen = match &p {
                GSpinParam::Odd(c) => c.std_eigen(),
                GSpinParam::Even(c) => c.std_eigen(),
            };
            Ok(eigen_out(&eigen))
        }
        SatakeCmd::Halfspin(args) => {
            let p = jsonio::gspin_from_value(&args.io.document()?, "", args.io.mode())?;
            let c = match p {
                GSpinParam::Even(c) => c,
                GSpinParam::Odd(_) => {
                    return Err(Failure::domain(
                        "parity-mismatch",
                        "half-spin representations belong to even parameters",
                    ))
                }
            };
            let sign = match args.sign {
                SignArg::Plus => HalfSpinSign::Plus,
                SignArg::Minus => HalfSpinSign::Minus,
            };
            Ok(eigen_out(&c.halfspin_eigen(sign)))
        }
        SatakeCmd::Embed(io) => {
            let doc = io.document()?;
            let first =
                jsonio::gspin_from_value(jsonio::field_of(&doc, "first")?, "/first", io.mode())?;
            let second =
                jsonio::gspin_from_value(jsonio::field_of(&doc, "second")?, "/second", io.mode())?;
            let case = match (&first, &second) {
                (GSpinParam::Odd(_), GSpinParam::Odd(_)) => EmbedCase::OddOdd,
                (GSpinParam::Even(_), GSpinParam::Even(_)) => EmbedCase::EvenEven,
                (GSpinParam::Odd(_), GSpinParam::Even(_)) => EmbedCase::OddEvenToOdd,
                (GSpinParam::Even(_), GSpinParam::Odd(_)) => {
                    return Err(Failure::domain(
                        "parity-mismatch",
                        "list the odd parameter first in a mixed embedding",
                    ))
                }
            };
            let embedded = embed_spin_torus(case, &first, &second)?;
            Ok(jsonio::gspin_to_value(&embedded))
        }
        SatakeCmd::ThetaLift(args) => {
            let io = &args.io;
            let c = odd_param(jsonio::gspin_from_value(&io.document()?, "", io.mode())?)?;
            let q = match &args.q {
                Some(text) => io.scalar_arg(text, "--q")?,
                None if io.mode() == ScalarMode::QHalf => Scalar::q_symbolic(),
                None => {
                    return Err(Failure::parse(
                        "--q is required outside qhalf mode (no symbolic default)",
                    ))
                }
            };
            let lifted = theta_satake(&c, args.m, &q)?;
            Ok(jsonio::gspin_to_value(&GSpinParam::Even(lifted)))
        }
        SatakeCmd::G2(io) => {
            let c = odd_param(jsonio::gspin_from_value(&io.document()?, "", io.mode())?)?;
            Ok(schema_obj(vec![("g2", json!(g2_test(&c, io.eps)?))]))
        }
        SatakeCmd::Weights(args) => {
            let wp = siegel_weights(args.k1, args.k2, args.k3)?;
            let [a, b, c] = wp.abc();
            Ok(json!({"a": a, "b": b, "c": c, "w": wp.w()}))
        }
        SatakeCmd::Spinbar(io) => {
            let c = odd_param(jsonio::gspin_from_value(&io.document()?, "", io.mode())?)?;
            let classes = spinbar(&c)?;
            Ok(schema_obj(vec![(
                "ratios",
                Value::Array(classes.ratios().iter().map(jsonio::scalar_to_value).collect()),
            )]))
        }
    }
}

fn run_arthur(cmd: ArthurCmd) -> Result<Value, Failure> {
    match cmd {
        ArthurCmd::Validate(args) => {
            let io = &args.io;
            let p = jsonio::arthur_from_value(&io.document()?, "", io.mode())?;
            let diagnostics = validate_param(&p, args.degree, args.discrete);
            let issues: Vec<Value> = diagnostics
                .issues
                .iter()
                .map(|d| json!({"code": d.code.to_string(), "message": d.message}))
                .collect();
            Ok(schema_obj(vec![
                ("clean", json!(diagnostics.is_clean())),
                ("issues", Value::Array(issues)),
            ]))
        }
        ArthurCmd::Eval(args) => {
            let io = &args.io;
            let p = jsonio::arthur_from_value(&io.document()?, "", io.mode())?;
            let q = io.scalar_arg(&args.q, "--q")?;
            Ok(eigen_out(&param_satake_at_p(&p, args.prime, &q)?))
        }
        ArthurCmd::SpinShape(io) => {
            let shape = jsonio::shape_from_value(&io.document()?, "", io.mode())?;
            Ok(jsonio::arthur_to_value(&spin_shape_of_siegel(&shape)?))
        }
        ArthurCmd::Variant(args) => {
            let io = &args.io;
            let doc = io.document()?;
            let std_pi =
                jsonio::constituent_from_value(jsonio::field_of(&doc, "std")?, "/std", io.mode())?;
            let spin_pi = jsonio::constituent_from_value(
                jsonio::field_of(&doc, "spin")?,
                "/spin",
                io.mode(),
            )?;
            let source = match args.source {
                SourceArg::Pgsp2 => VariantSource::PGSp2,
                SourceArg::Pgsp4 => VariantSource::PGSp4,
            };
            let (f1, f2) = trispin::arthur::variant_shape(source, &std_pi, &spin_pi)?;
            Ok(schema_obj(vec![
                ("f1", jsonio::arthur_to_value(&f1)),
                ("f2", jsonio::arthur_to_value(&f2)),
            ]))
        }
        ArthurCmd::Remix(io) => {
            let doc = io.document()?;
            let mut pulled = Vec::new();
            for name in ["a", "b", "c", "d"] {
                pulled.push(jsonio::constituent_from_value(
                    jsonio::field_of(&doc, name)?,
                    &format!("/{name}"),
                    io.mode(),
                )?);
            }
            let (before, after) = remix(&pulled[0], &pulled[1], &pulled[2], &pulled[3])?;
            Ok(schema_obj(vec![
                ("before", jsonio::arthur_to_value(&before)),
                ("after", jsonio::arthur_to_value(&after)),
            ]))
        }
        ArthurCmd::Tensor(io) => {
            let doc = io.document()?;
            let left = jsonio::constituent_from_value(
                jsonio::field_of(&doc, "left")?,
                "/left",
                io.mode(),
            )?;
            let right = jsonio::constituent_from_value(
                jsonio::field_of(&doc, "right")?,
                "/right",
                io.mode(),
            )?;
            let product = tensor_constituent(&left, &right)?;
            Ok(schema_obj(vec![(
                "constituent",
                jsonio::constituent_to_value(&product),
            )]))
        }
    }
}

fn run_lfun(cmd: LfunCmd) -> Result<Value, Failure> {
    match cmd {
        LfunCmd::Factor(args) => {
            let io = &args.io;
            let doc = io.document()?;
            let (body, path) = match doc.as_object() {
                Some(obj) if obj.contains_key("eigen") => (&obj["eigen"], "/eigen".to_string()),
                _ => (&doc, String::new()),
            };
            let eigen = jsonio::multiset_from_value(body, &path, io.mode())?;
            Ok(jsonio::factor_to_value(&LocalFactor::from_eigen(&eigen, args.p)))
        }
        LfunCmd::Gamma(args) => {
            let wp = siegel_weights(args.k1, args.k2, args.k3)?;
            let gp = gamma_factor(&wp);
            let mut pairs = vec![("shifts", json!(gp.shifts()))];
            if let Some(s) = &args.s {
                let value = gamma_eval(&gp, complex_point(s), args.eps)?;
                pairs.push(("value", json!([value.re, value.im])));
            }
            Ok(schema_obj(pairs))
        }
        LfunCmd::Euler(args) => {
            let io = &args.io;
            let s = complex_point(&args.s);
            let allowed = |p: u64| args.primes.as_ref().map_or(true, |list| list.contains(&p));
            let report = match args.family {
                Some(FamilyArg::Zeta) => {
                    let one = trispin::satake::EigenMultiset::new(vec![Scalar::one(
                        ScalarMode::Rational,
                    )]);
                    euler_eval(
                        |p| allowed(p).then(|| LocalFactor::from_eigen(&one, p)),
                        s,
                        args.cutoff,
                        1.0,
                    )?
                }
                None => {
                    let doc = io.document()?;
                    let list = jsonio::field_of(&doc, "factors")?;
                    let list = list
                        .as_array()
                        .ok_or_else(|| JsonError {
                            location: "/factors".to_string(),
                            reason: "expected an array".to_string(),
                        })?;
                    let mut factors = std::collections::BTreeMap::new();
                    for (i, f) in list.iter().enumerate() {
                        let factor =
                            jsonio::factor_from_value(f, &format!("/factors/{i}"), io.mode())?;
                        factors.insert(factor.p(), factor);
                    }
                    euler_eval(
                        |p| {
                            if allowed(p) {
                                factors.get(&p).cloned()
                            } else {
                                None
                            }
                        },
                        s,
                        args.cutoff,
                        args.abscissa,
                    )?
                }
            };
            Ok(jsonio::report_to_value(&report))
        }
        LfunCmd::Epsilon(io) => {
            let p = jsonio::arthur_from_value(&io.document()?, "", io.mode())?;
            let (sign, trace) = epsilon_sign(&p)?;
            Ok(schema_obj(vec![
                ("sign", json!(sign)),
                ("trace", json!(trace)),
            ]))
        }
        LfunCmd::G2Identity(io) => {
            let c = odd_param(jsonio::gspin_from_value(&io.document()?, "", io.mode())?)?;
            Ok(schema_obj(vec![(
                "holds",
                json!(g2_euler_identity_check(&c, io.eps)?),
            )]))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(value) => {
            use std::io::Write;
            // a closed pipe downstream (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout(), "{}", jsonio::to_json_string(&value));
            ExitCode::SUCCESS
        }
        Err(f) => {
            let mut err = Map::new();
            err.insert("code".to_string(), json!(f.code));
            err.insert("message".to_string(), json!(f.message));
            if let Some(loc) = f.location {
                err.insert("location".to_string(), json!(loc));
            }
            eprintln!("{}", jsonio::to_json_string(&json!({ "error": err })));
            ExitCode::from(f.exit)
        }
    }
}
