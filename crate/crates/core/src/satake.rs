//! Dual-side torus calculus for spin similitude groups.
//!
//! A semisimple conjugacy class in `GSpin_{2n+1}(C)` or `GSpin_{2n}(C)`
//! is recorded by torus coordinates: a tuple `chi = (x_1, ..., x_n)` of
//! nonzero scalars and a similitude coordinate `mu`. The module computes
//! eigenvalue multisets of the standard, spin, and half-spin
//! representations in the frozen coordinate convention
//!
//! * odd standard: `{x_i^{+-1}} ∪ {1}`, size `2n + 1`;
//! * even standard: `{x_i^{+-1}}`, size `2n`;
//! * spin: `{mu * prod_{i in S} x_i : S ⊆ {1..n}}`, size `2^n`;
//! * half-spin `+`/`-`: the even-size/odd-size subsets, size `2^{n-1}`;
//! * central character: `mu^2 * prod_i x_i`.
//!
//! On top of that sit the torus-level transfer maps: the rank-3-to-4
//! inclusion `iota_7to8`, the three concatenation embeddings, the
//! determinant-matched low-rank coordinatizations from pairs of GL(2)
//! parameters, the unramified theta-lift map with its half-integral
//! similitude exponent, the G2 membership criterion, Siegel weight
//! bookkeeping, and projectivized spin multisets.
//!
//! No square root of a coordinate is ever taken implicitly: maps whose
//! closed form involves `q^{1/2}` work in the qhalf scalar mode (or with
//! a rational `q` that happens to be a perfect square) and fail loudly
//! otherwise.

use crate::scalar::{Scalar, ScalarError, ScalarMode};

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum SatakeError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("{which} must be nonzero")]
    ZeroEntry { which: String },
    #[error("rank {got} where rank {expected} is required")]
    WrongRank { expected: usize, got: usize },
    #[error("target rank {m} is too small for source rank {n}")]
    RankTooSmall { n: usize, m: usize },
    #[error("embedding case expects parities {expected}, got {got}")]
    ParityMismatch {
        expected: &'static str,
        got: &'static str,
    },
    #[error("GL2 determinants differ: {left} vs {right}")]
    DeterminantMismatch { left: String, right: String },
    #[error("central character {value} is not trivial, so the parameter is not of PGSp6 type")]
    NotPGSp6Param { value: String },
    #[error("weight constraint violated: {reason}")]
    WeightConstraintViolated { reason: String },
    #[error("not a permutation of 0..{expected}")]
    BadPermutation { expected: usize },
    #[error("coordinate index {index} out of range for rank {n}")]
    IndexOutOfRange { index: usize, n: usize },
}

/// A finite multiset of scalars, kept sorted by the canonical scalar
/// order so that exact equality is order-free.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenMultiset {
    entries: Vec<Scalar>,
}

impl EigenMultiset {
    pub fn new(mut entries: Vec<Scalar>) -> Self {
        entries.sort_by(|a, b| a.cmp_canonical(b));
        EigenMultiset { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &Scalar> {
        self.entries.iter()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        EigenMultiset::new(entries)
    }

    /// All pairwise products, with multiplicity.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut entries = Vec::with_capacity(self.len() * other.len());
        for a in &self.entries {
            for b in &other.entries {
                entries.push(a * b);
            }
        }
        EigenMultiset::new(entries)
    }

    /// Products over all size-`k` index subsets (the k-th exterior power
    /// of the underlying diagonal action).
    pub fn exterior(&self, k: usize) -> Self {
        let mut entries = Vec::new();
        for_each_combination(self.len(), k, |idx| {
            let mut prod = Scalar::one(self.mode_or_rational());
            for &i in idx {
                prod = &prod * &self.entries[i];
            }
            entries.push(prod);
        });
        EigenMultiset::new(entries)
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        EigenMultiset::new(self.entries.iter().map(|e| e * c).collect())
    }

    pub fn inverses(&self) -> Result<Self, ScalarError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.inv())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(EigenMultiset::new(entries))
    }

    pub fn contains(&self, value: &Scalar, eps: f64) -> bool {
        self.entries.iter().any(|e| e.eq_eps(value, eps))
    }

    /// Order-free comparison: both sides are canonically sorted, so a
    /// positional comparison with tolerance decides multiset equality.
    pub fn eq_eps(&self, other: &Self, eps: f64) -> bool {
        self.len() == other.len()
            && self
                .entries
                .iter()
                .zip(other.entries.iter())
                .all(|(a, b)| a.eq_eps(b, eps))
    }

    pub fn is_inverse_closed(&self, eps: f64) -> Result<bool, ScalarError> {
        Ok(self.eq_eps(&self.inverses()?, eps))
    }

    fn mode_or_rational(&self) -> ScalarMode {
        self.entries
            .first()
            .map(|e| e.mode())
            .unwrap_or(ScalarMode::Rational)
    }
}

fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    if k == 0 {
        f(&[]);
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn check_coords(chi: &[Scalar], mu: &Scalar) -> Result<(), SatakeError> {
    if mu.is_zero() {
        return Err(SatakeError::ZeroEntry {
            which: "mu".to_string(),
        });
    }
    for (i, x) in chi.iter().enumerate() {
        if x.is_zero() {
            return Err(SatakeError::ZeroEntry {
                which: format!("chi[{i}]"),
            });
        }
        x.require_same_mode(mu)?;
    }
    Ok(())
}

/// Torus parameter for `GSpin_{2n+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GSpinOddParam {
    chi: Vec<Scalar>,
    mu: Scalar,
}

/// Torus parameter for `GSpin_{2n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GSpinEvenParam {
    chi: Vec<Scalar>,
    mu: Scalar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HalfSpinSign {
    Plus,
    Minus,
}

fn subset_products(chi: &[Scalar], mu: &Scalar, parity: Option<bool>) -> EigenMultiset {
    // parity: None = all subsets, Some(true) = even-size, Some(false) = odd-size
    let n = chi.len();
    let mut entries = Vec::new();
    for mask in 0u64..(1u64 << n) {
        if let Some(even) = parity {
            if (mask.count_ones() % 2 == 0) != even {
                continue;
            }
        }
        let mut prod = mu.clone();
        for (i, x) in chi.iter().enumerate() {
            if mask >> i & 1 == 1 {
                prod = &prod * x;
            }
        }
        entries.push(prod);
    }
    EigenMultiset::new(entries)
}

impl GSpinOddParam {
    pub fn new(chi: Vec<Scalar>, mu: Scalar) -> Result<Self, SatakeError> {
        check_coords(&chi, &mu)?;
        Ok(GSpinOddParam { chi, mu })
    }

    pub fn n(&self) -> usize {
        self.chi.len()
    }

    pub fn chi(&self) -> &[Scalar] {
        &self.chi
    }

    pub fn mu(&self) -> &Scalar {
        &self.mu
    }

    pub fn mode(&self) -> ScalarMode {
        self.mu.mode()
    }

    /// Eigenvalues of the standard `(2n+1)`-dimensional representation.
    pub fn std_eigen(&self) -> EigenMultiset {
        let mut entries = vec![Scalar::one(self.mode())];
        for x in &self.chi {
            entries.push(x.clone());
            entries.push(x.inv().expect("nonzero by construction"));
        }
        EigenMultiset::new(entries)
    }

    /// Eigenvalues of the `2^n`-dimensional spin representation.
    pub fn spin_eigen(&self) -> EigenMultiset {
        subset_products(&self.chi, &self.mu, None)
    }

    pub fn central_char(&self) -> Scalar {
        let mut c = &self.mu * &self.mu;
        for x in &self.chi {
            c = &c * x;
        }
        c
    }

    /// Coordinate permutation; a Weyl group element.
    pub fn weyl_permuted(&self, perm: &[usize]) -> Result<Self, SatakeError> {
        apply_permutation(&self.chi, perm)
            .map(|chi| GSpinOddParam {
                chi,
                mu: self.mu.clone(),
            })
            .ok_or(SatakeError::BadPermutation {
                expected: self.n(),
            })
    }

    /// The Weyl reflection inverting one coordinate: `x_i -> x_i^{-1}`
    /// with the compensating move `mu -> mu * x_i` that fixes the spin
    /// multiset.
    pub fn weyl_inverted(&self, i: usize) -> Result<Self, SatakeError> {
        if i >= self.n() {
            return Err(SatakeError::IndexOutOfRange {
                index: i,
                n: self.n(),
            });
        }
        let mut chi = self.chi.clone();
        let mu = &self.mu * &chi[i];
        chi[i] = chi[i].inv()?;
        Ok(GSpinOddParam { chi, mu })
    }
}

impl GSpinEvenParam {
    pub fn new(chi: Vec<Scalar>, mu: Scalar) -> Result<Self, SatakeError> {
        check_coords(&chi, &mu)?;
        Ok(GSpinEvenParam { chi, mu })
    }

    pub fn n(&self) -> usize {
        self.chi.len()
    }

    pub fn chi(&self) -> &[Scalar] {
        &self.chi
    }

    pub fn mu(&self) -> &Scalar {
        &self.mu
    }

    pub fn mode(&self) -> ScalarMode {
        self.mu.mode()
    }

    /// Eigenvalues of the standard `2n`-dimensional representation.
    pub fn std_eigen(&self) -> EigenMultiset {
        let mut entries = Vec::with_capacity(2 * self.n());
        for x in &self.chi {
            entries.push(x.clone());
            entries.push(x.inv().expect("nonzero by construction"));
        }
        EigenMultiset::new(entries)
    }

    /// Eigenvalues of one half-spin representation: even-size subsets
    /// carry the `+` label, odd-size subsets the `-` label.
    pub fn halfspin_eigen(&self, sign: HalfSpinSign) -> EigenMultiset {
        subset_products(&self.chi, &self.mu, Some(sign == HalfSpinSign::Plus))
    }

    pub fn central_char(&self) -> Scalar {
        let mut c = &self.mu * &self.mu;
        for x in &self.chi {
            c = &c * x;
        }
        c
    }

    pub fn weyl_permuted(&self, perm: &[usize]) -> Result<Self, SatakeError> {
        apply_permutation(&self.chi, perm)
            .map(|chi| GSpinEvenParam {
                chi,
                mu: self.mu.clone(),
            })
            .ok_or(SatakeError::BadPermutation {
                expected: self.n(),
            })
    }

    /// The even Weyl group inverts coordinates in pairs: `x_i, x_j ->
    /// x_i^{-1}, x_j^{-1}` with `mu -> mu * x_i * x_j`, preserving each
    /// half-spin multiset separately.
    pub fn weyl_pair_inverted(&self, i: usize, j: usize) -> Result<Self, SatakeError> {
        let n = self.n();
        for index in [i, j] {
            if index >= n {
                return Err(SatakeError::IndexOutOfRange { index, n });
            }
        }
        if i == j {
            return Err(SatakeError::IndexOutOfRange { index: j, n });
        }
        let mut chi = self.chi.clone();
        let mu = &(&self.mu * &chi[i]) * &chi[j];
        chi[i] = chi[i].inv()?;
        chi[j] = chi[j].inv()?;
        Ok(GSpinEvenParam { chi, mu })
    }
}

fn apply_permutation(chi: &[Scalar], perm: &[usize]) -> Option<Vec<Scalar>> {
    let n = chi.len();
    if perm.len() != n {
        return None;
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return None;
        }
        seen[p] = true;
    }
    Some(perm.iter().map(|&p| chi[p].clone()).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub enum GSpinParam {
    Odd(GSpinOddParam),
    Even(GSpinEvenParam),
}

impl GSpinParam {
    fn parity_name(&self) -> &'static str {
        match self {
            GSpinParam::Odd(_) => "odd",
            GSpinParam::Even(_) => "even",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbedCase {
    /// `GSpin_{2a+1} x GSpin_{2b+1} -> GSpin_{2(a+b)+2}`; both half-spins
    /// of the target restrict to `spin x spin`.
    OddOdd,
    /// `GSpin_{2a} x GSpin_{2b} -> GSpin_{2(a+b)}`; the target half-spins
    /// split as `(+,+) u (-,-)` and `(+,-) u (-,+)`.
    EvenEven,
    /// `GSpin_{2a+1} x GSpin_{2b} -> GSpin_{2(a+b)+1}`; the target spin
    /// restricts to `spin x (halfspin+ u halfspin-)`.
    OddEvenToOdd,
}

/// Torus form of the direct-sum embeddings: coordinates concatenate and
/// the similitude coordinates multiply; the odd+odd case appends one
/// extra coordinate `1` for the new even rank.
pub fn embed_spin_torus(
    case: EmbedCase,
    c1: &GSpinParam,
    c2: &GSpinParam,
) -> Result<GSpinParam, SatakeError> {
    let mismatch = |expected| SatakeError::ParityMismatch {
        expected,
        got: match (c1.parity_name(), c2.parity_name()) {
            ("odd", "odd") => "odd, odd",
            ("odd", "even") => "odd, even",
            ("even", "odd") => "even, odd",
            _ => "even, even",
        },
    };
    match (case, c1, c2) {
        (EmbedCase::OddOdd, GSpinParam::Odd(a), GSpinParam::Odd(b)) => {
            a.mu.require_same_mode(&b.mu)?;
            let mut chi = a.chi.clone();
            chi.extend(b.chi.iter().cloned());
            chi.push(Scalar::one(a.mode()));
            Ok(GSpinParam::Even(GSpinEvenParam::new(chi, &a.mu * &b.mu)?))
        }
        (EmbedCase::OddOdd, _, _) => Err(mismatch("odd, odd")),
        (EmbedCase::EvenEven, GSpinParam::Even(a), GSpinParam::Even(b)) => {
            a.mu.require_same_mode(&b.mu)?;
            let mut chi = a.chi.clone();
            chi.extend(b.chi.iter().cloned());
            Ok(GSpinParam::Even(GSpinEvenParam::new(chi, &a.mu * &b.mu)?))
        }
        (EmbedCase::EvenEven, _, _) => Err(mismatch("even, even")),
        (EmbedCase::OddEvenToOdd, GSpinParam::Odd(a), GSpinParam::Even(b)) => {
            a.mu.require_same_mode(&b.mu)?;
            let mut chi = a.chi.clone();
            chi.extend(b.chi.iter().cloned());
            Ok(GSpinParam::Odd(GSpinOddParam::new(chi, &a.mu * &b.mu)?))
        }
        (EmbedCase::OddEvenToOdd, _, _) => Err(mismatch("odd, even")),
    }
}

/// Rank-3 to rank-4 inclusion: append the coordinate `1` and keep the
/// similitude coordinate. The target standard multiset gains exactly one
/// eigenvalue `1` and both target half-spins restrict to the source spin.
pub fn iota_7to8(c: &GSpinOddParam) -> Result<GSpinEvenParam, SatakeError> {
    if c.n() != 3 {
        return Err(SatakeError::WrongRank {
            expected: 3,
            got: c.n(),
        });
    }
    let mut chi = c.chi.clone();
    chi.push(Scalar::one(c.mode()));
    GSpinEvenParam::new(chi, c.mu.clone())
}

fn check_det_match(a: &[Scalar; 2], b: &[Scalar; 2], eps: f64) -> Result<(), SatakeError> {
    let da = &a[0] * &a[1];
    let db = &b[0] * &b[1];
    if da.eq_eps(&db, eps) {
        Ok(())
    } else {
        Err(SatakeError::DeterminantMismatch {
            left: da.to_string(),
            right: db.to_string(),
        })
    }
}

/// Coordinates for `GSpin_4` from a determinant-matched pair of GL(2)
/// parameters `{a1, a2}`, `{b1, b2}`: `chi = (b1/a1, b2/a1)`, `mu = a1`.
/// The two half-spins recover the two inputs.
pub fn gspin4_from_gl2_pair(
    a: &[Scalar; 2],
    b: &[Scalar; 2],
    eps: f64,
) -> Result<GSpinEvenParam, SatakeError> {
    check_det_match(a, b, eps)?;
    let a1_inv = a[0].inv()?;
    GSpinEvenParam::new(vec![&b[0] * &a1_inv, &b[1] * &a1_inv], a[0].clone())
}

/// Coordinates for `GSpin_3` from a GL(2) parameter `{c1, c2}`:
/// `chi = (c1/c2)`, `mu = c2`. The spin multiset recovers the input.
pub fn gspin3_from_gl2(c: &[Scalar; 2]) -> Result<GSpinOddParam, SatakeError> {
    GSpinOddParam::new(vec![&c[0] * &c[1].inv()?], c[1].clone())
}

/// The composite rank-7 embedding on GL(2)-parameter triples `A, B, C`
/// with `det A = det B`, in frozen coordinate order:
/// `chi = (b1/a1, c1/c2, b2/a1)`, `mu = a1 * c2`. Its spin multiset is
/// `(A u B) (x) C` and its standard multiset is
/// `A (x) B^{-1} u Sym^2(C) * (det C)^{-1}`.
pub fn nu_embed(
    a: &[Scalar; 2],
    b: &[Scalar; 2],
    c: &[Scalar; 2],
    eps: f64,
) -> Result<GSpinOddParam, SatakeError> {
    check_det_match(a, b, eps)?;
    let a1_inv = a[0].inv()?;
    let c2_inv = c[1].inv()?;
    GSpinOddParam::new(
        vec![&b[0] * &a1_inv, &c[0] * &c2_inv, &b[1] * &a1_inv],
        &a[0] * &c[1],
    )
}

/// Unramified theta-lift transfer on torus parameters, rank `n` to even
/// rank `m >= n + 1`: the coordinates gain the chain
/// `q^{m-n-1}, ..., q, 1` and the similitude coordinate is multiplied by
/// `q^{-(m-n)(m-n-1)/4}` — a half-integral power exactly when
/// `(m-n)(m-n-1)/2` is odd, which is why this map may require the qhalf
/// scalar mode.
pub fn theta_satake(
    c: &GSpinOddParam,
    m: usize,
    q: &Scalar,
) -> Result<GSpinEvenParam, SatakeError> {
    let n = c.n();
    if m < n + 1 {
        return Err(SatakeError::RankTooSmall { n, m });
    }
    if q.is_zero() {
        return Err(SatakeError::ZeroEntry {
            which: "q".to_string(),
        });
    }
    q.require_same_mode(&c.mu)?;
    let mut chi = c.chi.clone();
    for k in (1..=(m - n - 1) as i64).rev() {
        chi.push(q.pow(k)?);
    }
    chi.push(Scalar::one(c.mode()));
    let d = (m - n) as i64;
    let mu = &c.mu * &q.pow_half(-(d * (d - 1) / 2))?;
    GSpinEvenParam::new(chi, mu)
}

/// Torus parameter of the trivial representation at rank `n` (the
/// principal chain): `chi = (q^n, ..., q)`, `mu = q^{-n(n+1)/4}`.
pub fn satake_of_trivial(n: usize, q: &Scalar) -> Result<GSpinOddParam, SatakeError> {
    if q.is_zero() {
        return Err(SatakeError::ZeroEntry {
            which: "q".to_string(),
        });
    }
    let chi = (1..=n as i64).rev().map(|k| q.pow(k)).collect::<Result<Vec<_>, _>>()?;
    let k = n as i64;
    let mu = q.pow_half(-(k * (k + 1) / 2))?;
    GSpinOddParam::new(chi, mu)
}

/// G2 membership criterion for rank-3 parameters with trivial central
/// character: the spin multiset contains the eigenvalue 1. When it does,
/// the spin multiset equals `{1}` union the standard multiset.
pub fn g2_test(c: &GSpinOddParam, eps: f64) -> Result<bool, SatakeError> {
    if c.n() != 3 {
        return Err(SatakeError::WrongRank {
            expected: 3,
            got: c.n(),
        });
    }
    let cc = c.central_char();
    if !cc.eq_eps(&Scalar::one(c.mode()), eps) {
        return Err(SatakeError::NotPGSp6Param {
            value: cc.to_string(),
        });
    }
    Ok(c.spin_eigen().contains(&Scalar::one(c.mode()), eps))
}

/// Archimedean weight data of a genus-3 Siegel form of weight
/// `(k1, k2, k3)`: the cohomological exponents `(a, b, c)` and the four
/// spin exponents `(w1, w2, w3, w4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArchWeightParam {
    k: [i64; 3],
    abc: [i64; 3],
    w: [i64; 4],
}

impl ArchWeightParam {
    pub fn k(&self) -> [i64; 3] {
        self.k
    }

    pub fn abc(&self) -> [i64; 3] {
        self.abc
    }

    pub fn w(&self) -> [i64; 4] {
        self.w
    }
}

/// Weight bookkeeping: `(a, b, c) = (k1 - 1, k2 - 2, k3 - 3)` and
/// `w = ((a+b+c)/2, (a+b-c)/2, (a-b+c)/2, |a-b-c|/2)`. Requires
/// `k1 >= k2 >= k3 >= 4` and an even weight sum, which makes every `w_i`
/// an integer and the sequence strictly decreasing with `w4 >= 0`.
pub fn siegel_weights(k1: i64, k2: i64, k3: i64) -> Result<ArchWeightParam, SatakeError> {
    if !(k1 >= k2 && k2 >= k3) {
        return Err(SatakeError::WeightConstraintViolated {
            reason: format!("weights must be non-increasing, got ({k1}, {k2}, {k3})"),
        });
    }
    if k3 < 4 {
        return Err(SatakeError::WeightConstraintViolated {
            reason: format!("smallest weight must be at least 4, got {k3}"),
        });
    }
    if (k1 + k2 + k3) % 2 != 0 {
        return Err(SatakeError::WeightConstraintViolated {
            reason: format!("weight sum {} is odd", k1 + k2 + k3),
        });
    }
    let (a, b, c) = (k1 - 1, k2 - 2, k3 - 3);
    let w = [
        (a + b + c) / 2,
        (a + b - c) / 2,
        (a - b + c) / 2,
        (a - b - c).abs() / 2,
    ];
    Ok(ArchWeightParam {
        k: [k1, k2, k3],
        abc: [a, b, c],
        w,
    })
}

/// Additive spin exponents `{+-w1, +-w2, +-w3, +-w4}` as exact rationals.
pub fn arch_spin(wp: &ArchWeightParam) -> EigenMultiset {
    let mut entries = Vec::with_capacity(8);
    for wi in wp.w {
        entries.push(Scalar::from_i64(wi, ScalarMode::Rational));
        entries.push(Scalar::from_i64(-wi, ScalarMode::Rational));
    }
    EigenMultiset::new(entries)
}

/// Additive standard exponents `{0, +-a, +-b, +-c}` as exact rationals.
pub fn arch_std(wp: &ArchWeightParam) -> EigenMultiset {
    let mut entries = vec![Scalar::from_i64(0, ScalarMode::Rational)];
    for e in wp.abc {
        entries.push(Scalar::from_i64(e, ScalarMode::Rational));
        entries.push(Scalar::from_i64(-e, ScalarMode::Rational));
    }
    EigenMultiset::new(entries)
}

/// A multiset of nonzero scalars up to a common scalar factor.
///
/// The canonical representative stores, among the candidate rescalings
/// that divide every entry by one fixed entry, the lexicographically
/// least sorted list. Two multisets are projectively equal exactly when
/// their canonical representatives agree; no root extraction is needed,
/// so the construction stays inside every scalar mode.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveMultiset {
    ratios: Vec<Scalar>,
}

impl ProjectiveMultiset {
    pub fn from_multiset(m: &EigenMultiset) -> Result<Self, SatakeError> {
        if m.is_empty() {
            return Ok(ProjectiveMultiset { ratios: Vec::new() });
        }
        let mut best: Option<Vec<Scalar>> = None;
        for pivot in m.iter() {
            if pivot.is_zero() {
                return Err(SatakeError::ZeroEntry {
                    which: "projective multiset entry".to_string(),
                });
            }
            let inv = pivot.inv()?;
            let mut candidate: Vec<Scalar> = m.iter().map(|e| e * &inv).collect();
            candidate.sort_by(|a, b| a.cmp_canonical(b));
            let better = match &best {
                None => true,
                Some(current) => lex_less(&candidate, current),
            };
            if better {
                best = Some(candidate);
            }
        }
        Ok(ProjectiveMultiset {
            ratios: best.expect("nonempty"),
        })
    }

    pub fn ratios(&self) -> &[Scalar] {
        &self.ratios
    }

    pub fn eq_eps(&self, other: &Self, eps: f64) -> bool {
        self.ratios.len() == other.ratios.len()
            && self
                .ratios
                .iter()
                .zip(other.ratios.iter())
                .all(|(a, b)| a.eq_eps(b, eps))
    }
}

fn lex_less(a: &[Scalar], b: &[Scalar]) -> bool {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.cmp_canonical(y) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    false
}

/// The spin multiset of a rank-3 parameter up to a common scalar — the
/// value of the parameter in the projectivized spin representation.
pub fn spinbar(c: &GSpinOddParam) -> Result<ProjectiveMultiset, SatakeError> {
    if c.n() != 3 {
        return Err(SatakeError::WrongRank {
            expected: 3,
            got: c.n(),
        });
    }
    ProjectiveMultiset::from_multiset(&c.spin_eigen())
}
