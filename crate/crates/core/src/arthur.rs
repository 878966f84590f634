//! Formal isobaric parameter arithmetic.
//!
//! An `ArthurParam` is a multiset of summands `pi (x) S_d`: a labeled
//! cuspidal constituent `pi` of some degree together with the dimension
//! `d` of an attached SL(2) factor. The module evaluates parameters at a
//! prime (tensoring each constituent's stored eigenvalue multiset with
//! the geometric chain `q^{(d-1)/2}, ..., q^{-(d-1)/2}`), validates the
//! usual bookkeeping (degree sums, duality parities, distinctness of
//! discrete summands), and builds the specific degree-8 spin shapes that
//! arise from genus-3 Siegel forms and their low-genus variants.
//!
//! Constituents are bookkeeping devices, not representations: Satake
//! data is user-ingested per prime, self-duality types and central
//! characters are declared labels, and every identity asserted here is a
//! statement about multisets and degrees.

use crate::satake::EigenMultiset;
use crate::scalar::{Scalar, ScalarError};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum ArthurError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("no Satake data for constituent {label:?} at prime {prime}")]
    MissingSatakeData { label: String, prime: u64 },
    #[error("multiset of size {got} where size {expected} is required")]
    SizeMismatch { expected: usize, got: usize },
    #[error("constituent {label:?} has degree {got} but {context} requires degree {expected}")]
    DegreeMismatch {
        label: String,
        context: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("symplectic constituent {label:?} must have even degree, got {degree}")]
    SymplecticOddDegree { label: String, degree: usize },
    #[error("Satake data at prime {prime} has size {got}, expected the degree {expected}")]
    SatakeSizeMismatch {
        prime: u64,
        expected: usize,
        got: usize,
    },
    #[error("central characters do not match: {left} vs {right}")]
    CentralCharacterMismatch { left: String, right: String },
    #[error("invalid shape: {reason}")]
    ShapeInvalid { reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SelfDualType {
    Orthogonal,
    Symplectic,
    NotSelfDual,
}

impl fmt::Display for SelfDualType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SelfDualType::Orthogonal => "orthogonal",
            SelfDualType::Symplectic => "symplectic",
            SelfDualType::NotSelfDual => "none",
        };
        write!(f, "{name}")
    }
}

/// A labeled cuspidal constituent: a degree, a declared self-duality
/// type, optionally a declared sign of the central epsilon value and a
/// central-character label, and per-prime eigenvalue multisets.
#[derive(Clone, Debug, PartialEq)]
pub struct CuspConstituent {
    label: String,
    degree: usize,
    selfdual: SelfDualType,
    epsilon: Option<i8>,
    central_char: Option<String>,
    satake: BTreeMap<u64, EigenMultiset>,
}

impl CuspConstituent {
    pub fn new(
        label: impl Into<String>,
        degree: usize,
        selfdual: SelfDualType,
    ) -> Result<Self, ArthurError> {
        let label = label.into();
        if degree == 0 {
            return Err(ArthurError::ShapeInvalid {
                reason: format!("constituent {label:?} must have positive degree"),
            });
        }
        if selfdual == SelfDualType::Symplectic && degree % 2 != 0 {
            return Err(ArthurError::SymplecticOddDegree { label, degree });
        }
        Ok(CuspConstituent {
            label,
            degree,
            selfdual,
            epsilon: None,
            central_char: None,
            satake: BTreeMap::new(),
        })
    }

    /// The trivial GL(1) constituent, written `1`. Its Satake multiset is
    /// `{1}` at every prime and never needs to be ingested.
    pub fn trivial() -> Self {
        CuspConstituent {
            label: "1".to_string(),
            degree: 1,
            selfdual: SelfDualType::Orthogonal,
            epsilon: Some(1),
            central_char: Some("1".to_string()),
            satake: BTreeMap::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.label == "1" && self.degree == 1
    }

    pub fn with_satake(mut self, prime: u64, data: EigenMultiset) -> Result<Self, ArthurError> {
        if data.len() != self.degree {
            return Err(ArthurError::SatakeSizeMismatch {
                prime,
                expected: self.degree,
                got: data.len(),
            });
        }
        self.satake.insert(prime, data);
        Ok(self)
    }

    pub fn with_epsilon(mut self, sign: i8) -> Self {
        self.epsilon = Some(sign.signum());
        self
    }

    pub fn with_central_char(mut self, label: impl Into<String>) -> Self {
        self.central_char = Some(label.into());
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn selfdual(&self) -> SelfDualType {
        self.selfdual
    }

    pub fn epsilon(&self) -> Option<i8> {
        self.epsilon
    }

    pub fn central_char(&self) -> Option<&str> {
        self.central_char.as_deref()
    }

    pub fn satake_at(&self, prime: u64) -> Option<&EigenMultiset> {
        self.satake.get(&prime)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.satake.keys().copied()
    }
}

/// One isobaric summand `pi (x) S_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct ArthurSummand {
    pub pi: CuspConstituent,
    pub d: usize,
}

impl ArthurSummand {
    pub fn new(pi: CuspConstituent, d: usize) -> Self {
        ArthurSummand { pi, d }
    }

    pub fn degree(&self) -> usize {
        self.pi.degree() * self.d
    }
}

/// A formal isobaric sum of summands.
#[derive(Clone, Debug, PartialEq)]
pub struct ArthurParam {
    summands: Vec<ArthurSummand>,
}

impl ArthurParam {
    pub fn new(summands: Vec<ArthurSummand>) -> Self {
        ArthurParam { summands }
    }

    pub fn summands(&self) -> &[ArthurSummand] {
        &self.summands
    }

    pub fn degree(&self) -> usize {
        self.summands.iter().map(|s| s.degree()).sum()
    }

    /// Formal sum: concatenation of summand lists.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().cloned());
        ArthurParam { summands }
    }

    /// Whether the parameter contains the trivial constituent with no
    /// SL(2) factor. For the spin shapes built here this is exactly the
    /// branch whose L-function acquires a pole at s = 1.
    pub fn contains_trivial(&self) -> bool {
        self.summands.iter().any(|s| s.d == 1 && s.pi.is_trivial())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagnosticCode {
    DegreeSum,
    DualityParity,
    DuplicateSummand,
    SatakeSize,
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            DiagnosticCode::DegreeSum => "degree-sum",
            DiagnosticCode::DualityParity => "duality-parity",
            DiagnosticCode::DuplicateSummand => "duplicate-summand",
            DiagnosticCode::SatakeSize => "satake-size",
        };
        write!(f, "{name}")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Diagnostics {
    pub issues: Vec<Diagnostic>,
}

impl Diagnostics {
    pub fn is_clean(&self) -> bool {
        self.issues.is_empty()
    }

    fn push(&mut self, code: DiagnosticCode, message: String) {
        self.issues.push(Diagnostic { code, message });
    }
}

/// Bookkeeping checks on a parameter against a declared target degree.
/// Never fails: all findings are returned as diagnostics.
///
/// When `discrete` is set the summands must be pairwise distinct and
/// each summand's duality parity must follow the degree of its SL(2)
/// factor: even `d` wants a symplectic constituent, odd `d` an
/// orthogonal one.
pub fn validate_param(p: &ArthurParam, target_degree: usize, discrete: bool) -> Diagnostics {
    let mut out = Diagnostics::default();
    let total = p.degree();
    if total != target_degree {
        out.push(
            DiagnosticCode::DegreeSum,
            format!("total degree {total} does not match target {target_degree}"),
        );
    }
    for s in p.summands() {
        for prime in s.pi.primes() {
            let size = s.pi.satake_at(prime).map(|m| m.len()).unwrap_or(0);
            if size != s.pi.degree() {
                out.push(
                    DiagnosticCode::SatakeSize,
                    format!(
                        "constituent {:?} stores size-{size} data at prime {prime}, degree is {}",
                        s.pi.label(),
                        s.pi.degree()
                    ),
                );
            }
        }
    }
    if discrete {
        for s in p.summands() {
            let want = if s.d % 2 == 0 {
                SelfDualType::Symplectic
            } else {
                SelfDualType::Orthogonal
            };
            if s.pi.selfdual() != want {
                out.push(
                    DiagnosticCode::DualityParity,
                    format!(
                        "summand {:?} (x) S_{} should be {want}, declared {}",
                        s.pi.label(),
                        s.d,
                        s.pi.selfdual()
                    ),
                );
            }
        }
        for (i, a) in p.summands().iter().enumerate() {
            for b in p.summands().iter().skip(i + 1) {
                if a.pi.label() == b.pi.label() && a.pi.degree() == b.pi.degree() && a.d == b.d {
                    out.push(
                        DiagnosticCode::DuplicateSummand,
                        format!("summand {:?} (x) S_{} appears twice", a.pi.label(), a.d),
                    );
                }
            }
        }
    }
    out
}

/// The geometric chain `q^{(d-1)/2}, q^{(d-3)/2}, ..., q^{-(d-1)/2}`.
/// Even `d` needs half-integral powers of `q`, hence the qhalf mode or a
/// square rational `q`.
fn sl2_chain(q: &Scalar, d: usize) -> Result<Vec<Scalar>, ScalarError> {
    let d = d as i64;
    (0..d).map(|i| q.pow_half(d - 1 - 2 * i)).collect()
}

/// Evaluation of a parameter at a prime: the union over summands of the
/// constituent's stored multiset tensored with the SL(2) chain.
pub fn param_satake_at_p(
    p: &ArthurParam,
    prime: u64,
    q: &Scalar,
) -> Result<EigenMultiset, ArthurError> {
    let mut out = EigenMultiset::new(Vec::new());
    for s in p.summands() {
        let data = match s.pi.satake_at(prime) {
            Some(d) => d.clone(),
            None if s.pi.is_trivial() => EigenMultiset::new(vec![Scalar::one(q.mode())]),
            None => {
                return Err(ArthurError::MissingSatakeData {
                    label: s.pi.label().to_string(),
                    prime,
                })
            }
        };
        if let Some(first) = data.entries().first() {
            first.require_same_mode(q)?;
        }
        let chain = EigenMultiset::new(sl2_chain(q, s.d)?);
        out = out.union(&data.tensor(&chain));
    }
    Ok(out)
}

fn require_degree(
    pi: &CuspConstituent,
    expected: usize,
    context: &'static str,
) -> Result<(), ArthurError> {
    if pi.degree() != expected {
        return Err(ArthurError::DegreeMismatch {
            label: pi.label().to_string(),
            context,
            expected,
            got: pi.degree(),
        });
    }
    Ok(())
}

/// Formal tensor product of constituents: degrees multiply, Satake data
/// is tensored at every prime where both factors have data, and the
/// self-duality type follows the product rule (matching types give an
/// orthogonal product, mixed types a symplectic one).
pub fn tensor_constituent(
    a: &CuspConstituent,
    b: &CuspConstituent,
) -> Result<CuspConstituent, ArthurError> {
    use SelfDualType::*;
    let selfdual = match (a.selfdual(), b.selfdual()) {
        (NotSelfDual, _) | (_, NotSelfDual) => NotSelfDual,
        (Orthogonal, Orthogonal) | (Symplectic, Symplectic) => Orthogonal,
        _ => Symplectic,
    };
    let mut out = CuspConstituent::new(
        format!("{}*{}", a.label(), b.label()),
        a.degree() * b.degree(),
        selfdual,
    )?;
    for p in a.primes() {
        if let (Some(da), Some(db)) = (a.satake_at(p), b.satake_at(p)) {
            out = out.with_satake(p, da.tensor(db))?;
        }
    }
    Ok(out)
}

/// Pairwise-product multiset of a size-2 and a size-4 eigenvalue list.
pub fn rankin_selberg_tensor(
    c2: &EigenMultiset,
    c4: &EigenMultiset,
) -> Result<EigenMultiset, ArthurError> {
    if c2.len() != 2 {
        return Err(ArthurError::SizeMismatch {
            expected: 2,
            got: c2.len(),
        });
    }
    if c4.len() != 4 {
        return Err(ArthurError::SizeMismatch {
            expected: 4,
            got: c4.len(),
        });
    }
    Ok(c2.tensor(c4))
}

/// Trivial-central-character normalization of the symmetric square of a
/// GL(2) multiset `{g1, g2}`: `{g1/g2, 1, g2/g1}`.
pub fn sym2_normalized(c: &EigenMultiset) -> Result<EigenMultiset, ArthurError> {
    if c.len() != 2 {
        return Err(ArthurError::SizeMismatch {
            expected: 2,
            got: c.len(),
        });
    }
    let g1 = &c.entries()[0];
    let g2 = &c.entries()[1];
    let det_inv = (g1 * g2).inv()?;
    Ok(EigenMultiset::new(vec![
        &(g1 * g1) * &det_inv,
        Scalar::one(g1.mode()),
        &(g2 * g2) * &det_inv,
    ]))
}

/// The symmetric-square constituent of a degree-2 constituent under the
/// trivial-central-character normalization: degree 3, orthogonal, with
/// Satake data mapped prime by prime.
pub fn sym2_constituent(pi: &CuspConstituent) -> Result<CuspConstituent, ArthurError> {
    require_degree(pi, 2, "the symmetric square")?;
    let mut out = CuspConstituent::new(
        format!("sym2({})", pi.label()),
        3,
        SelfDualType::Orthogonal,
    )?;
    for p in pi.primes() {
        if let Some(d) = pi.satake_at(p) {
            out = out.with_satake(p, sym2_normalized(d)?)?;
        }
    }
    Ok(out)
}

/// The three standard-parameter shapes of a genus-3 Siegel form: a
/// cuspidal degree-7 parameter (possibly of G2 type), the tempered
/// endoscopic shape built from three degree-2 constituents, and the
/// non-tempered shape.
#[derive(Clone, Debug, PartialEq)]
pub enum SiegelStdShape {
    GenericCuspidal { pi: CuspConstituent, g2: bool },
    EndoscopicTempered {
        pi1: CuspConstituent,
        pi2: CuspConstituent,
        pi3: CuspConstituent,
    },
    NonTempered {
        pi1: CuspConstituent,
        pi3: CuspConstituent,
    },
}

impl SiegelStdShape {
    pub fn validate(&self) -> Result<(), ArthurError> {
        match self {
            SiegelStdShape::GenericCuspidal { pi, .. } => {
                require_degree(pi, 7, "the cuspidal standard shape")
            }
            SiegelStdShape::EndoscopicTempered { pi1, pi2, pi3 } => {
                require_degree(pi1, 2, "the endoscopic shape")?;
                require_degree(pi2, 2, "the endoscopic shape")?;
                require_degree(pi3, 2, "the endoscopic shape")?;
                if pi1.label() == pi2.label() {
                    return Err(ArthurError::ShapeInvalid {
                        reason: format!(
                            "the endoscopic shape needs distinct first constituents, both are {:?}",
                            pi1.label()
                        ),
                    });
                }
                Ok(())
            }
            SiegelStdShape::NonTempered { pi1, pi3 } => {
                require_degree(pi1, 2, "the non-tempered shape")?;
                require_degree(pi3, 2, "the non-tempered shape")
            }
        }
    }

    /// The degree-7 standard parameter of the shape.
    pub fn std_param(&self) -> Result<ArthurParam, ArthurError> {
        self.validate()?;
        Ok(match self {
            SiegelStdShape::GenericCuspidal { pi, .. } => {
                ArthurParam::new(vec![ArthurSummand::new(pi.clone(), 1)])
            }
            SiegelStdShape::EndoscopicTempered { pi1, pi2, pi3 } => ArthurParam::new(vec![
                ArthurSummand::new(tensor_constituent(pi1, pi2)?, 1),
                ArthurSummand::new(sym2_constituent(pi3)?, 1),
            ]),
            SiegelStdShape::NonTempered { pi1, pi3 } => ArthurParam::new(vec![
                ArthurSummand::new(pi1.clone(), 2),
                ArthurSummand::new(sym2_constituent(pi3)?, 1),
            ]),
        })
    }
}

/// The degree-8 spin parameter attached to each standard shape:
///
/// * endoscopic tempered: `(pi1 (x) pi3) ⊞ (pi2 (x) pi3)`;
/// * non-tempered: `(pi1 (x) pi3) ⊞ pi3 (x) S_2`;
/// * cuspidal of G2 type: `1 ⊞ pi` (the standard constituent survives
///   next to a trivial summand);
/// * cuspidal otherwise: a single degree-8 cuspidal constituent, labeled
///   after the input but carrying no derived Satake data.
pub fn spin_shape_of_siegel(s: &SiegelStdShape) -> Result<ArthurParam, ArthurError> {
    s.validate()?;
    Ok(match s {
        SiegelStdShape::EndoscopicTempered { pi1, pi2, pi3 } => ArthurParam::new(vec![
            ArthurSummand::new(tensor_constituent(pi1, pi3)?, 1),
            ArthurSummand::new(tensor_constituent(pi2, pi3)?, 1),
        ]),
        SiegelStdShape::NonTempered { pi1, pi3 } => ArthurParam::new(vec![
            ArthurSummand::new(tensor_constituent(pi1, pi3)?, 1),
            ArthurSummand::new(pi3.clone(), 2),
        ]),
        SiegelStdShape::GenericCuspidal { pi, g2: true } => ArthurParam::new(vec![
            ArthurSummand::new(CuspConstituent::trivial(), 1),
            ArthurSummand::new(pi.clone(), 1),
        ]),
        SiegelStdShape::GenericCuspidal { pi, g2: false } => {
            let lift = CuspConstituent::new(
                format!("spin({})", pi.label()),
                8,
                SelfDualType::Orthogonal,
            )?;
            ArthurParam::new(vec![ArthurSummand::new(lift, 1)])
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariantSource {
    PGSp2,
    PGSp4,
}

/// The two degree-8 shapes of the low-genus variants. The source carries
/// two data sets — the standard-parameter constituent (degree 3 or 5)
/// and the spin-side constituent (degree 2 or 4) — and each pullback
/// selects one:
///
/// * first pullback: `std ⊞ S_{8-deg}` (a trivial chain fills the rank);
/// * second pullback: `spin (x) S_{8/deg}`.
pub fn variant_shape(
    source: VariantSource,
    std_pi: &CuspConstituent,
    spin_pi: &CuspConstituent,
) -> Result<(ArthurParam, ArthurParam), ArthurError> {
    let (std_deg, spin_deg, chain_d, spin_d) = match source {
        VariantSource::PGSp2 => (3, 2, 5, 4),
        VariantSource::PGSp4 => (5, 4, 3, 2),
    };
    require_degree(std_pi, std_deg, "the first pullback")?;
    require_degree(spin_pi, spin_deg, "the second pullback")?;
    let f1 = ArthurParam::new(vec![
        ArthurSummand::new(std_pi.clone(), 1),
        ArthurSummand::new(CuspConstituent::trivial(), chain_d),
    ]);
    let f2 = ArthurParam::new(vec![ArthurSummand::new(spin_pi.clone(), spin_d)]);
    Ok((f1, f2))
}

/// The exchange of tensor pairings on a quadruple of degree-2
/// constituents with matched central-character labels: returns
/// `(a (x) b) ⊞ (c (x) d)` and the remixed `(a (x) c) ⊞ (b (x) d)`.
pub fn remix(
    a: &CuspConstituent,
    b: &CuspConstituent,
    c: &CuspConstituent,
    d: &CuspConstituent,
) -> Result<(ArthurParam, ArthurParam), ArthurError> {
    for pi in [a, b, c, d] {
        require_degree(pi, 2, "the remix")?;
    }
    check_central_match(a, b)?;
    check_central_match(c, d)?;
    let before = ArthurParam::new(vec![
        ArthurSummand::new(tensor_constituent(a, b)?, 1),
        ArthurSummand::new(tensor_constituent(c, d)?, 1),
    ]);
    let after = ArthurParam::new(vec![
        ArthurSummand::new(tensor_constituent(a, c)?, 1),
        ArthurSummand::new(tensor_constituent(b, d)?, 1),
    ]);
    Ok((before, after))
}

fn check_central_match(a: &CuspConstituent, b: &CuspConstituent) -> Result<(), ArthurError> {
    let describe = |pi: &CuspConstituent| {
        pi.central_char()
            .map(|c| format!("{:?} has central character {c:?}", pi.label()))
            .unwrap_or_else(|| format!("{:?} has no declared central character", pi.label()))
    };
    match (a.central_char(), b.central_char()) {
        (Some(x), Some(y)) if x == y => Ok(()),
        _ => Err(ArthurError::CentralCharacterMismatch {
            left: describe(a),
            right: describe(b),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::satake::{
        embed_spin_torus, gspin4_from_gl2_pair, nu_embed, EmbedCase, GSpinOddParam, GSpinParam,
        HalfSpinSign,
    };
    use crate::scalar::ScalarMode;

    const R: ScalarMode = ScalarMode::Rational;

    fn rat(n: i64) -> Scalar {
        Scalar::from_i64(n, R)
    }

    fn ms_i64(values: &[i64]) -> EigenMultiset {
        EigenMultiset::new(values.iter().map(|&v| rat(v)).collect())
    }

    fn gl2(label: &str, e: [i64; 2], p: u64) -> CuspConstituent {
        CuspConstituent::new(label, 2, SelfDualType::Symplectic)
            .unwrap()
            .with_satake(p, ms_i64(&[e[0], e[1]]))
            .unwrap()
    }

    #[test]
    fn trivial_chain_evaluation() {
        let p = ArthurParam::new(vec![ArthurSummand::new(CuspConstituent::trivial(), 5)]);
        let eval = param_satake_at_p(&p, 2, &rat(2)).unwrap();
        assert_eq!(
            eval,
            EigenMultiset::new(vec![
                rat(4),
                rat(2),
                rat(1),
                Scalar::from_ratio(1, 2, R),
                Scalar::from_ratio(1, 4, R),
            ])
        );
        assert_eq!(p.degree(), 5);
    }

    #[test]
    fn degree_one_factor_is_identity() {
        let pi = gl2("pi", [3, 5], 7);
        let p = ArthurParam::new(vec![ArthurSummand::new(pi, 1)]);
        assert_eq!(param_satake_at_p(&p, 7, &rat(7)).unwrap(), ms_i64(&[3, 5]));
    }

    #[test]
    fn even_chain_needs_half_powers() {
        let pi = gl2("pi", [3, 5], 2);
        let p = ArthurParam::new(vec![ArthurSummand::new(pi, 4)]);
        assert!(matches!(
            param_satake_at_p(&p, 2, &rat(2)),
            Err(ArthurError::Scalar(ScalarError::HalfIntegralPower))
        ));
        // square q works over the rationals: chain 27, 3, 1/3, 1/27
        let eval = param_satake_at_p(&p, 2, &rat(9)).unwrap();
        let chain = EigenMultiset::new(vec![
            rat(27),
            rat(3),
            Scalar::from_ratio(1, 3, R),
            Scalar::from_ratio(1, 27, R),
        ]);
        assert_eq!(eval, ms_i64(&[3, 5]).tensor(&chain));
        assert_eq!(eval.len(), 8);
    }

    #[test]
    fn symbolic_even_chain() {
        let u = Scalar::u();
        let alpha = u.pow(3).unwrap();
        let data = EigenMultiset::new(vec![alpha.clone(), alpha.inv().unwrap()]);
        let pi = CuspConstituent::new("pi", 2, SelfDualType::Symplectic)
            .unwrap()
            .with_satake(5, data)
            .unwrap();
        let p = ArthurParam::new(vec![ArthurSummand::new(pi, 4)]);
        let eval = param_satake_at_p(&p, 5, &Scalar::q_symbolic()).unwrap();
        let expect = EigenMultiset::new(
            [3i64, -3]
                .iter()
                .flat_map(|&a| [3i64, 1, -1, -3].iter().map(move |&k| a + k))
                .map(|e| u.pow(e).unwrap())
                .collect(),
        );
        assert_eq!(eval, expect);
    }

    #[test]
    fn evaluation_is_additive_and_reports_missing_data() {
        let pi = gl2("pi", [3, 5], 7);
        let a = ArthurParam::new(vec![ArthurSummand::new(pi.clone(), 1)]);
        let b = ArthurParam::new(vec![ArthurSummand::new(CuspConstituent::trivial(), 3)]);
        let joined = a.direct_sum(&b);
        assert_eq!(joined.degree(), 5);
        let lhs = param_satake_at_p(&joined, 7, &rat(7)).unwrap();
        let rhs = param_satake_at_p(&a, 7, &rat(7))
            .unwrap()
            .union(&param_satake_at_p(&b, 7, &rat(7)).unwrap());
        assert_eq!(lhs, rhs);
        assert!(matches!(
            param_satake_at_p(&a, 11, &rat(11)),
            Err(ArthurError::MissingSatakeData { prime: 11, .. })
        ));
    }

    #[test]
    fn validation_diagnostics() {
        let pi = gl2("pi", [3, 5], 7);
        let clean = ArthurParam::new(vec![
            ArthurSummand::new(pi.clone(), 2),
            ArthurSummand::new(
                CuspConstituent::new("tau", 3, SelfDualType::Orthogonal).unwrap(),
                1,
            ),
        ]);
        assert!(validate_param(&clean, 7, true).is_clean());

        let wrong_total = validate_param(&clean, 8, true);
        assert!(wrong_total
            .issues
            .iter()
            .any(|i| i.code == DiagnosticCode::DegreeSum));

        let dup = ArthurParam::new(vec![
            ArthurSummand::new(pi.clone(), 1),
            ArthurSummand::new(pi.clone(), 1),
        ]);
        let diag = validate_param(&dup, 4, true);
        assert!(diag
            .issues
            .iter()
            .any(|i| i.code == DiagnosticCode::DuplicateSummand));
        // odd SL(2) factor on a symplectic constituent breaks parity
        assert!(diag
            .issues
            .iter()
            .any(|i| i.code == DiagnosticCode::DualityParity));
        // without the discreteness flag neither is reported
        assert!(validate_param(&dup, 4, false).is_clean());
    }

    #[test]
    fn constituent_constraints() {
        assert!(matches!(
            CuspConstituent::new("pi", 3, SelfDualType::Symplectic),
            Err(ArthurError::SymplecticOddDegree { .. })
        ));
        let pi = CuspConstituent::new("pi", 2, SelfDualType::Symplectic).unwrap();
        assert!(matches!(
            pi.with_satake(2, ms_i64(&[1, 2, 3])),
            Err(ArthurError::SatakeSizeMismatch { .. })
        ));
    }

    #[test]
    fn tensor_duality_rule() {
        let o = CuspConstituent::new("o", 3, SelfDualType::Orthogonal).unwrap();
        let s = CuspConstituent::new("s", 2, SelfDualType::Symplectic).unwrap();
        assert_eq!(
            tensor_constituent(&o, &o).unwrap().selfdual(),
            SelfDualType::Orthogonal
        );
        assert_eq!(
            tensor_constituent(&s, &s).unwrap().selfdual(),
            SelfDualType::Orthogonal
        );
        assert_eq!(
            tensor_constituent(&o, &s).unwrap().selfdual(),
            SelfDualType::Symplectic
        );
        assert_eq!(tensor_constituent(&s, &s).unwrap().degree(), 4);
    }

    #[test]
    fn rankin_selberg_sizes() {
        let c2 = ms_i64(&[2, 3]);
        let c4 = ms_i64(&[1, 5, 7, 11]);
        let t = rankin_selberg_tensor(&c2, &c4).unwrap();
        assert_eq!(t, ms_i64(&[2, 10, 14, 22, 3, 15, 21, 33]));
        assert!(matches!(
            rankin_selberg_tensor(&c4, &c4),
            Err(ArthurError::SizeMismatch { expected: 2, .. })
        ));
    }

    #[test]
    fn sym2_normalization() {
        let c = ms_i64(&[5, 7]);
        let s = sym2_normalized(&c).unwrap();
        assert_eq!(
            s,
            EigenMultiset::new(vec![
                Scalar::from_ratio(5, 7, R),
                rat(1),
                Scalar::from_ratio(7, 5, R),
            ])
        );
    }

    #[test]
    fn endoscopic_spin_shape_matches_the_composite_embedding() {
        // inverse-closed (determinant 1) data, so that the constituents
        // coincide with their duals and both the spin and the standard
        // evaluations match the composite-embedding multisets
        let p = 2u64;
        let a = [rat(2), Scalar::from_ratio(1, 2, R)];
        let b = [rat(6), Scalar::from_ratio(1, 6, R)];
        let c = [rat(5), rat(7)];
        let gl2_ms = |e: &[Scalar; 2]| EigenMultiset::new(e.to_vec());
        let mk = |label: &str, e: &[Scalar; 2]| {
            CuspConstituent::new(label, 2, SelfDualType::Symplectic)
                .unwrap()
                .with_satake(p, gl2_ms(e))
                .unwrap()
                .with_central_char("1")
        };
        let shape = SiegelStdShape::EndoscopicTempered {
            pi1: mk("pi1", &a),
            pi2: mk("pi2", &b),
            pi3: mk("pi3", &c),
        };

        let std = shape.std_param().unwrap();
        assert_eq!(std.degree(), 7);
        let spin = spin_shape_of_siegel(&shape).unwrap();
        assert_eq!(spin.degree(), 8);

        // evaluations agree with the composite rank-7 embedding
        let nu = nu_embed(&a, &b, &c, 0.0).unwrap();
        let eval = param_satake_at_p(&spin, p, &rat(2)).unwrap();
        assert_eq!(eval, nu.spin_eigen());
        let std_eval = param_satake_at_p(&std, p, &rat(2)).unwrap();
        assert_eq!(std_eval, nu.std_eigen());
    }

    #[test]
    fn g2_spin_shape_is_one_plus_std() {
        let p = 3u64;
        let c = GSpinOddParam::new(
            vec![rat(4), rat(9), Scalar::from_ratio(1, 36, R)],
            rat(1),
        )
        .unwrap();
        let pi = CuspConstituent::new("pi", 7, SelfDualType::Orthogonal)
            .unwrap()
            .with_satake(p, c.std_eigen())
            .unwrap();
        let shape = SiegelStdShape::GenericCuspidal { pi, g2: true };
        let spin = spin_shape_of_siegel(&shape).unwrap();
        assert_eq!(spin.degree(), 8);
        assert!(spin.contains_trivial());
        let eval = param_satake_at_p(&spin, p, &rat(3)).unwrap();
        assert_eq!(eval, ms_i64(&[1]).union(&c.std_eigen()));
        assert_eq!(eval, c.spin_eigen());

        // the non-G2 cuspidal branch is a single degree-8 constituent
        let pi8 = CuspConstituent::new("pi", 7, SelfDualType::Orthogonal).unwrap();
        let shape = SiegelStdShape::GenericCuspidal { pi: pi8, g2: false };
        let spin = spin_shape_of_siegel(&shape).unwrap();
        assert_eq!(spin.summands().len(), 1);
        assert_eq!(spin.degree(), 8);
        assert!(!spin.contains_trivial());
    }

    #[test]
    fn nontempered_spin_shape_degrees() {
        let p = 2u64;
        let pi1 = gl2("pi1", [2, 3], p);
        let pi3 = gl2("pi3", [5, 7], p);
        let shape = SiegelStdShape::NonTempered {
            pi1: pi1.clone(),
            pi3: pi3.clone(),
        };
        let std = shape.std_param().unwrap();
        assert_eq!(std.degree(), 7);
        let spin = spin_shape_of_siegel(&shape).unwrap();
        assert_eq!(spin.degree(), 8);
        let ds: Vec<usize> = spin.summands().iter().map(|s| s.d).collect();
        assert_eq!(ds, vec![1, 2]);
        // evaluation needs q^{1/2}: works with a square q
        let eval = param_satake_at_p(&spin, p, &rat(4)).unwrap();
        assert_eq!(eval.len(), 8);
        let tensor_part = ms_i64(&[2, 3]).tensor(&ms_i64(&[5, 7]));
        let chain_part = ms_i64(&[5, 7]).tensor(&EigenMultiset::new(vec![
            rat(2),
            Scalar::from_ratio(1, 2, R),
        ]));
        assert_eq!(eval, tensor_part.union(&chain_part));
    }

    #[test]
    fn shape_validation_rejects_bad_degrees() {
        let pi = gl2("pi", [2, 3], 2);
        let bad = SiegelStdShape::GenericCuspidal {
            pi: pi.clone(),
            g2: false,
        };
        assert!(matches!(
            spin_shape_of_siegel(&bad),
            Err(ArthurError::DegreeMismatch { expected: 7, .. })
        ));
        let same = SiegelStdShape::EndoscopicTempered {
            pi1: pi.clone(),
            pi2: pi.clone(),
            pi3: pi.clone(),
        };
        assert!(matches!(
            spin_shape_of_siegel(&same),
            Err(ArthurError::ShapeInvalid { .. })
        ));
    }

    #[test]
    fn variant_shapes_bookkeeping() {
        let p = 7u64;
        let std3 = CuspConstituent::new("tau", 3, SelfDualType::Orthogonal)
            .unwrap()
            .with_satake(p, ms_i64(&[2, 1, -2]))
            .unwrap();
        let spin2 = gl2("tau'", [3, 5], p);
        let (f1, f2) = variant_shape(VariantSource::PGSp2, &std3, &spin2).unwrap();
        assert_eq!(f1.degree(), 8);
        assert_eq!(f2.degree(), 8);
        let f1_eval = param_satake_at_p(&f1, p, &rat(7)).unwrap();
        let chain = EigenMultiset::new(vec![
            rat(49),
            rat(7),
            rat(1),
            Scalar::from_ratio(1, 7, R),
            Scalar::from_ratio(1, 49, R),
        ]);
        assert_eq!(f1_eval, ms_i64(&[2, 1, -2]).union(&chain));

        let std5 = CuspConstituent::new("sigma", 5, SelfDualType::Orthogonal).unwrap();
        let spin4 = CuspConstituent::new("sigma'", 4, SelfDualType::Symplectic).unwrap();
        let (f1, f2) = variant_shape(VariantSource::PGSp4, &std5, &spin4).unwrap();
        assert_eq!(f1.degree(), 8);
        assert_eq!(f2.degree(), 8);
        assert_eq!(f2.summands()[0].d, 2);

        assert!(matches!(
            variant_shape(VariantSource::PGSp2, &std5, &spin2),
            Err(ArthurError::DegreeMismatch { expected: 3, .. })
        ));
    }

    #[test]
    fn remix_swaps_pairings() {
        let p = 2u64;
        let hearts = gl2("h", [2, 3], p).with_central_char("w1");
        let diamonds = gl2("d", [6, 1], p).with_central_char("w1");
        let spades = gl2("s", [5, 7], p).with_central_char("w2");
        let clubs = gl2("c", [35, 1], p).with_central_char("w2");

        let (before, after) = remix(&hearts, &diamonds, &spades, &clubs).unwrap();
        assert_eq!(before.degree(), 8);
        assert_eq!(after.degree(), 8);
        let before_eval = param_satake_at_p(&before, p, &rat(2)).unwrap();
        let after_eval = param_satake_at_p(&after, p, &rat(2)).unwrap();
        assert_ne!(before_eval, after_eval);

        // the remixed pairing is a half-spin of the even+even embedding
        let g1 = gspin4_from_gl2_pair(&[rat(2), rat(3)], &[rat(6), rat(1)], 0.0).unwrap();
        let g2 = gspin4_from_gl2_pair(&[rat(5), rat(7)], &[rat(35), rat(1)], 0.0).unwrap();
        let joined = embed_spin_torus(
            EmbedCase::EvenEven,
            &GSpinParam::Even(g1),
            &GSpinParam::Even(g2),
        )
        .unwrap();
        match joined {
            GSpinParam::Even(ev) => {
                assert_eq!(after_eval, ev.halfspin_eigen(HalfSpinSign::Plus));
            }
            _ => panic!("expected even parameter"),
        }

        // identical inputs collapse the two pairings
        let (b2, a2) = remix(&hearts, &hearts, &hearts, &hearts).unwrap();
        assert_eq!(
            param_satake_at_p(&b2, p, &rat(2)).unwrap(),
            param_satake_at_p(&a2, p, &rat(2)).unwrap()
        );

        // central-character labels are enforced
        assert!(matches!(
            remix(&hearts, &spades, &diamonds, &clubs),
            Err(ArthurError::CentralCharacterMismatch { .. })
        ));
        let unlabeled = gl2("u", [2, 3], p);
        assert!(matches!(
            remix(&hearts, &unlabeled, &spades, &clubs),
            Err(ArthurError::CentralCharacterMismatch { .. })
        ));
    }
}
