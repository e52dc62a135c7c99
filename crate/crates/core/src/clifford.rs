//! Explicit γ-matrix algebra in two and four dimensions.
//!
//! Conventions:
//!
//! * Minkowski metric, mostly minus: `g = diag(+, -)` or `diag(+, -, -, -)`.
//! * `γ5 = γ⁰γ¹` in D = 2 and `γ5 = iγ⁰γ¹γ²γ³` in D = 4. Both are hermitian
//!   and square to the identity in every representation offered here.
//! * `σ^{μν} = (i/2)[γ^μ, γ^ν]`.
//! * Two representations per dimension ([`Representation::Dirac`] and
//!   [`Representation::Chiral`]):
//!   - D = 2 Dirac: `γ⁰ = σ₃`, `γ¹ = iσ₂` (so `γ5 = σ₁`);
//!     D = 2 chiral: `γ⁰ = σ₁`, `γ¹ = iσ₂` (so `γ5 = -σ₃`).
//!   - D = 4 Dirac: `γ⁰ = diag(1, 1, -1, -1)`, `γ^i = [[0, σ_i], [-σ_i, 0]]`;
//!     D = 4 chiral: `γ⁰ = [[0, 1], [1, 0]]`, same `γ^i`.
//! * Euclidean matrices (used by the anomaly computation) are obtained by
//!   Wick rotation with the time direction placed last: `γ_E^a = -iγ^{a+1}`
//!   for the spatial directions and `γ_E^{D-1} = γ⁰`. They are hermitian and
//!   satisfy `{γ_E^a, γ_E^b} = 2δ^{ab}`. The Euclidean Levi-Civita symbol has
//!   `ε_{01..D-1} = +1` in that ordering.
//!
//! All entries are small dyadic rationals times powers of `i`, so products of
//! basis elements are exact in floating point and identities are checked with
//! exact equality.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Minkowski metric `diag(+1, -1, ..., -1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricSignature {
    dimension: usize,
    diag: Vec<i8>,
}

impl MetricSignature {
    pub fn minkowski(dimension: usize) -> Result<Self> {
        if dimension != 2 && dimension != 4 {
            return Err(Error::UnsupportedDimension(dimension));
        }
        let diag = (0..dimension).map(|m| if m == 0 { 1 } else { -1 }).collect();
        Ok(Self { dimension, diag })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn diag(&self) -> &[i8] {
        &self.diag
    }

    /// `g_{μν}` (equal to `g^{μν}` for a diagonal ±1 metric).
    pub fn g(&self, mu: usize, nu: usize) -> f64 {
        if mu == nu {
            self.diag[mu] as f64
        } else {
            0.0
        }
    }

    /// Minkowski inner product `a·b`.
    pub fn dot(&self, a: &[f64], b: &[f64]) -> f64 {
        self.diag
            .iter()
            .zip(a.iter().zip(b))
            .map(|(&s, (x, y))| s as f64 * x * y)
            .sum()
    }

    fn check_index(&self, mu: usize) -> Result<()> {
        if mu < self.dimension {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: mu,
                dim: self.dimension,
            })
        }
    }
}

/// Dense complex square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DiracMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = ONE;
        }
        m
    }

    /// Builds a matrix from rows. Panics if the rows are not square.
    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Self {
            dim,
            entries: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.entries[c * n + r] = self.get(r, c).conj();
            }
        }
        out
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| *e == ZERO)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self * other - other * self
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        self * other + other * self
    }

    /// Matrix exponential `exp(i θ G)` for an involution `G` (`G² = 𝕀`):
    /// `cos θ 𝕀 + i sin θ G`.
    pub fn exp_i_involution(&self, theta: f64) -> Self {
        let id = Self::identity(self.dim);
        id.scale(Complex64::new(theta.cos(), 0.0)) + self.scale(Complex64::new(0.0, theta.sin()))
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.get(r, c) * v[c]).sum())
            .collect()
    }

    fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(self * other)
    }
}

impl Mul for &DiracMatrix {
    type Output = DiracMatrix;
    fn mul(self, rhs: &DiracMatrix) -> DiracMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = DiracMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a == ZERO {
                    continue;
                }
                for c in 0..n {
                    out.entries[r * n + c] += a * rhs.get(k, c);
                }
            }
        }
        out
    }
}

impl Mul for DiracMatrix {
    type Output = DiracMatrix;
    fn mul(self, rhs: DiracMatrix) -> DiracMatrix {
        &self * &rhs
    }
}

impl Add for DiracMatrix {
    type Output = DiracMatrix;
    fn add(mut self, rhs: DiracMatrix) -> DiracMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        self.entries.iter_mut().zip(rhs.entries).for_each(|(a, b)| *a += b);
        self
    }
}

impl Sub for DiracMatrix {
    type Output = DiracMatrix;
    fn sub(self, rhs: DiracMatrix) -> DiracMatrix {
        self + (-rhs)
    }
}

impl Neg for DiracMatrix {
    type Output = DiracMatrix;
    fn neg(self) -> DiracMatrix {
        self.scale(-ONE)
    }
}

/// Sign of a permutation given as a list of indices; 0 if any index repeats.
pub fn permutation_sign(indices: &[usize]) -> i32 {
    let n = indices.len();
    let mut sign = 1;
    for i in 0..n {
        for j in (i + 1)..n {
            if indices[i] == indices[j] {
                return 0;
            }
            if indices[i] > indices[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Totally antisymmetric symbol with a chosen orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeviCivita {
    dim: usize,
    /// Value of `ε^{01}` (D = 2) or `ε^{0123}` (D = 4), upper indices.
    orientation: i32,
}

impl LeviCivita {
    pub fn new(dim: usize, orientation: i32) -> Result<Self> {
        if dim != 2 && dim != 4 {
            return Err(Error::UnsupportedDimension(dim));
        }
        if orientation != 1 && orientation != -1 {
            return Err(Error::InvalidParameter {
                name: "orientation",
                reason: format!("must be +1 or -1, got {orientation}"),
            });
        }
        Ok(Self { dim, orientation })
    }

    /// `ε^{01} = +1` or `ε^{0123} = +1`.
    pub fn standard(dim: usize) -> Result<Self> {
        Self::new(dim, 1)
    }

    pub fn flipped(self) -> Self {
        Self {
            orientation: -self.orientation,
            ..self
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn orientation(&self) -> i32 {
        self.orientation
    }

    /// Upper-index component.
    pub fn upper(&self, idx: &[usize]) -> f64 {
        debug_assert_eq!(idx.len(), self.dim);
        (self.orientation * permutation_sign(idx)) as f64
    }

    /// Lower-index component: the upper one times `det g = (-1)^{D-1}`.
    pub fn lower(&self, idx: &[usize]) -> f64 {
        let det = if self.dim.is_multiple_of(2) { -1.0 } else { 1.0 };
        det * self.upper(idx)
    }
}

/// Euclidean symbol `ε_{a b ...}` with `ε_{01..} = +1` (time direction last).
pub fn euclidean_epsilon(idx: &[usize]) -> f64 {
    permutation_sign(idx) as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub enum Representation {
    #[default]
    Dirac,
    Chiral,
}

/// A concrete set of γ matrices for one signature and representation.
#[derive(Debug, Clone)]
pub struct GammaBasis {
    sig: MetricSignature,
    rep: Representation,
    gammas: Vec<DiracMatrix>,
    gamma5: DiracMatrix,
}

fn pauli(k: usize) -> [[Complex64; 2]; 2] {
    match k {
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -I], [I, ZERO]],
        3 => [[ONE, ZERO], [ZERO, -ONE]],
        _ => unreachable!(),
    }
}

fn mat2(p: [[Complex64; 2]; 2]) -> DiracMatrix {
    DiracMatrix::from_rows(&[&p[0], &p[1]])
}

fn block4(tl: [[Complex64; 2]; 2], tr: [[Complex64; 2]; 2], bl: [[Complex64; 2]; 2], br: [[Complex64; 2]; 2]) -> DiracMatrix {
    let mut m = DiracMatrix::zeros(4);
    for r in 0..2 {
        for c in 0..2 {
            m.entries[r * 4 + c] = tl[r][c];
            m.entries[r * 4 + c + 2] = tr[r][c];
            m.entries[(r + 2) * 4 + c] = bl[r][c];
            m.entries[(r + 2) * 4 + c + 2] = br[r][c];
        }
    }
    m
}

fn neg2(p: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    p.map(|row| row.map(|e| -e))
}

const ID2: [[Complex64; 2]; 2] = [[ONE, ZERO], [ZERO, ONE]];
const ZERO2: [[Complex64; 2]; 2] = [[ZERO, ZERO], [ZERO, ZERO]];

impl GammaBasis {
    pub fn new(sig: MetricSignature, rep: Representation) -> Self {
        let gammas = match (sig.dimension, rep) {
            (2, Representation::Dirac) => vec![mat2(pauli(3)), mat2(pauli(2)).scale(I)],
            (2, Representation::Chiral) => vec![mat2(pauli(1)), mat2(pauli(2)).scale(I)],
            (4, rep) => {
                let g0 = match rep {
                    Representation::Dirac => block4(ID2, ZERO2, ZERO2, neg2(ID2)),
                    Representation::Chiral => block4(ZERO2, ID2, ID2, ZERO2),
                };
                let mut v = vec![g0];
                for k in 1..=3 {
                    v.push(block4(ZERO2, pauli(k), neg2(pauli(k)), ZERO2));
                }
                v
            }
            _ => unreachable!("MetricSignature only admits D = 2 or 4"),
        };
        let gamma5 = match sig.dimension {
            2 => &gammas[0] * &gammas[1],
            _ => (&(&gammas[0] * &gammas[1]) * &(&gammas[2] * &gammas[3])).scale(I),
        };
        Self {
            sig,
            rep,
            gammas,
            gamma5,
        }
    }

    /// Dirac representation in the given dimension.
    pub fn standard(dim: usize) -> Result<Self> {
        Ok(Self::new(MetricSignature::minkowski(dim)?, Representation::Dirac))
    }

    pub fn signature(&self) -> &MetricSignature {
        &self.sig
    }

    pub fn representation(&self) -> Representation {
        self.rep
    }

    pub fn dim(&self) -> usize {
        self.sig.dimension
    }

    pub fn spinor_dim(&self) -> usize {
        self.gamma5.dim
    }

    pub fn identity(&self) -> DiracMatrix {
        DiracMatrix::identity(self.spinor_dim())
    }

    /// `γ^μ` (upper index).
    pub fn gamma(&self, mu: usize) -> Result<&DiracMatrix> {
        self.sig.check_index(mu)?;
        Ok(&self.gammas[mu])
    }

    /// `γ_μ = g_{μμ} γ^μ`.
    pub fn gamma_lower(&self, mu: usize) -> Result<DiracMatrix> {
        let g = self.gamma(mu)?;
        Ok(g.scale(Complex64::new(self.sig.g(mu, mu), 0.0)))
    }

    pub fn gamma5(&self) -> &DiracMatrix {
        &self.gamma5
    }

    /// `σ^{μν} = (i/2)[γ^μ, γ^ν]`.
    pub fn sigma(&self, mu: usize, nu: usize) -> Result<DiracMatrix> {
        let a = self.gamma(mu)?;
        let b = self.gamma(nu)?;
        Ok(a.commutator(b).scale(Complex64::new(0.0, 0.5)))
    }

    /// Chiral projector `(1 + s γ5)/2` for `s = ±1`.
    pub fn projector(&self, s: i32) -> DiracMatrix {
        (self.identity() + self.gamma5.scale(Complex64::new(s as f64, 0.0))).scale(Complex64::new(0.5, 0.0))
    }

    /// Hermitian Euclidean matrices `γ_E^a`, time direction last.
    pub fn euclidean_gammas(&self) -> Vec<DiracMatrix> {
        let d = self.dim();
        (0..d)
            .map(|a| {
                if a + 1 < d {
                    self.gammas[a + 1].scale(-I)
                } else {
                    self.gammas[0].clone()
                }
            })
            .collect()
    }

    /// `σ_E^{ab} = (i/2)[γ_E^a, γ_E^b]`.
    pub fn euclidean_sigma(&self, a: usize, b: usize) -> Result<DiracMatrix> {
        self.sig.check_index(a)?;
        self.sig.check_index(b)?;
        let e = self.euclidean_gammas();
        Ok(e[a].commutator(&e[b]).scale(Complex64::new(0.0, 0.5)))
    }
}

/// `γ^μ` in the Dirac representation of `sig`.
pub fn gamma(sig: &MetricSignature, mu: usize) -> Result<DiracMatrix> {
    GammaBasis::new(sig.clone(), Representation::Dirac).gamma(mu).cloned()
}

/// `γ5` in the Dirac representation of `sig`.
pub fn gamma5(sig: &MetricSignature) -> DiracMatrix {
    GammaBasis::new(sig.clone(), Representation::Dirac).gamma5.clone()
}

/// `σ^{μν}` in the Dirac representation of `sig`.
pub fn sigma(sig: &MetricSignature, mu: usize, nu: usize) -> Result<DiracMatrix> {
    GammaBasis::new(sig.clone(), Representation::Dirac).sigma(mu, nu)
}

/// Trace of the ordered product `ms[0] ms[1] ...`.
pub fn trace_product(ms: &[&DiracMatrix]) -> Result<Complex64> {
    let Some(first) = ms.first() else {
        return Err(Error::InvalidParameter {
            name: "ms",
            reason: "empty product".into(),
        });
    };
    let mut acc = (*first).clone();
    for m in &ms[1..] {
        acc = acc.checked_mul(m)?;
    }
    Ok(acc.trace())
}

/// Commutators of chirally projected gammas.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ChiralityReport {
    /// max over μ, ν of ‖[γ^μ(1+γ5), γ^ν(1+γ5)]‖
    pub plus_plus: f64,
    /// max over μ, ν of ‖[γ^μ(1-γ5), γ^ν(1-γ5)]‖
    pub minus_minus: f64,
    /// max over μ, ν of ‖[γ^μ(1+γ5), γ^ν(1-γ5)]‖
    pub mixed: f64,
}

impl ChiralityReport {
    /// Largest defect among the same-chirality branches.
    pub fn max_same_chirality(&self) -> f64 {
        self.plus_plus.max(self.minus_minus)
    }
}

pub fn chirality_commutator_check_in(basis: &GammaBasis) -> ChiralityReport {
    let d = basis.dim();
    let id = basis.identity();
    let chiral = |mu: usize, s: f64| &basis.gammas[mu] * &(id.clone() + basis.gamma5.scale(Complex64::new(s, 0.0)));
    let branch = |s1: f64, s2: f64| {
        let mut worst: f64 = 0.0;
        for mu in 0..d {
            for nu in 0..d {
                worst = worst.max(chiral(mu, s1).commutator(&chiral(nu, s2)).max_norm());
            }
        }
        worst
    };
    ChiralityReport {
        plus_plus: branch(1.0, 1.0),
        minus_minus: branch(-1.0, -1.0),
        mixed: branch(1.0, -1.0),
    }
}

pub fn chirality_commutator_check(sig: &MetricSignature) -> ChiralityReport {
    chirality_commutator_check_in(&GammaBasis::new(sig.clone(), Representation::Dirac))
}

/// Outcome of the two-dimensional identity `γ^μ ε_{μν} = s γ5 γ_ν`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct DualityReport {
    pub sign: i32,
    /// Max-norm defect for ν = 0 and ν = 1.
    pub defect_per_index: [f64; 2],
}

impl DualityReport {
    pub fn defect(&self) -> f64 {
        self.defect_per_index[0].max(self.defect_per_index[1])
    }
}

pub fn duality_identity_2d_in(basis: &GammaBasis, eps: LeviCivita) -> Result<DualityReport> {
    if basis.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: basis.dim(),
        });
    }
    if eps.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: eps.dim(),
        });
    }
    let lhs = |nu: usize| -> DiracMatrix {
        (0..2).fold(DiracMatrix::zeros(2), |acc, mu| {
            acc + basis.gammas[mu].scale(Complex64::new(eps.lower(&[mu, nu]), 0.0))
        })
    };
    let rhs = |nu: usize| -> Result<DiracMatrix> { Ok(&basis.gamma5 * &basis.gamma_lower(nu)?) };

    // Read the sign off the ν = 0 component, then check both components.
    let l0 = lhs(0);
    let r0 = rhs(0)?;
    let sign = if (l0.clone() - r0.clone()).is_zero() {
        1
    } else if (l0 + r0).is_zero() {
        -1
    } else {
        // Not proportional: report the smaller of the two defects.
        let plus = (lhs(0) - rhs(0)?).max_norm();
        let minus = (lhs(0) + rhs(0)?).max_norm();
        if plus <= minus {
            1
        } else {
            -1
        }
    };
    let s = Complex64::new(sign as f64, 0.0);
    let mut defect_per_index = [0.0; 2];
    for (nu, d) in defect_per_index.iter_mut().enumerate() {
        *d = (lhs(nu) - rhs(nu)?.scale(s)).max_norm();
    }
    Ok(DualityReport {
        sign,
        defect_per_index,
    })
}

/// Checks `γ^μ ε_{μν} = s γ5 γ_ν` in the D = 2 Dirac representation.
pub fn duality_identity_2d(eps: LeviCivita) -> Result<DualityReport> {
    duality_identity_2d_in(&GammaBasis::standard(2)?, eps)
}

/// `tr[γ5 σ^{01}]` in D = 2: the representation's convention constant.
pub fn trace_gamma5_sigma01(basis: &GammaBasis) -> Result<Complex64> {
    if basis.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: basis.dim(),
        });
    }
    trace_product(&[basis.gamma5(), &basis.sigma(0, 1)?])
}

/// `tr[γ5 σ^{μν} σ^{ρσ}] = c ε^{μνρσ}` in D = 4, checked over all index tuples.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct EpsilonProportionality {
    /// `c`, read off at `(0, 1, 2, 3)`.
    pub constant: Complex64,
    /// Largest `|tr - c ε|` over all 256 tuples.
    pub max_deviation: f64,
    /// Number of tuples with `ε != 0` (24).
    pub permutations: usize,
}

pub fn sigma_epsilon_proportionality(basis: &GammaBasis, eps: LeviCivita) -> Result<EpsilonProportionality> {
    if basis.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: basis.dim(),
        });
    }
    let sig: Vec<DiracMatrix> = (0..16).map(|i| basis.sigma(i / 4, i % 4)).collect::<Result<_>>()?;
    let g5 = basis.gamma5();
    let constant = trace_product(&[g5, &sig[1], &sig[11]])? / eps.upper(&[0, 1, 2, 3]);
    let mut max_deviation: f64 = 0.0;
    let mut permutations = 0;
    for i in 0..16 {
        for j in 0..16 {
            let e = eps.upper(&[i / 4, i % 4, j / 4, j % 4]);
            if e != 0.0 {
                permutations += 1;
            }
            let t = trace_product(&[g5, &sig[i], &sig[j]])?;
            max_deviation = max_deviation.max((t - constant * e).norm());
        }
    }
    Ok(EpsilonProportionality {
        constant,
        max_deviation,
        permutations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_pair_trace_is_epsilon() {
        for rep in [Representation::Dirac, Representation::Chiral] {
            let b = GammaBasis::new(MetricSignature::minkowski(4).unwrap(), rep);
            let r = sigma_epsilon_proportionality(&b, LeviCivita::standard(4).unwrap()).unwrap();
            assert_eq!(r.permutations, 24);
            assert!(r.max_deviation < 1e-13);
            assert!(r.constant.norm() > 1.0);
        }
    }

    fn bases() -> Vec<GammaBasis> {
        let mut v = Vec::new();
        for d in [2, 4] {
            for rep in [Representation::Dirac, Representation::Chiral] {
                v.push(GammaBasis::new(MetricSignature::minkowski(d).unwrap(), rep));
            }
        }
        v
    }

    #[test]
    fn clifford_relation_is_exact() {
        for b in bases() {
            for mu in 0..b.dim() {
                for nu in 0..b.dim() {
                    let ac = b.gamma(mu).unwrap().anticommutator(b.gamma(nu).unwrap());
                    let expected = b.identity().scale(Complex64::new(2.0 * b.signature().g(mu, nu), 0.0));
                    assert_eq!(ac, expected, "{:?} D={} ({mu},{nu})", b.representation(), b.dim());
                }
            }
        }
    }

    #[test]
    fn small_examples() {
        let s2 = MetricSignature::minkowski(2).unwrap();
        let g0 = gamma(&s2, 0).unwrap();
        let g1 = gamma(&s2, 1).unwrap();
        assert!(g0.anticommutator(&g1).is_zero());
        assert_eq!(&g0 * &g0, DiracMatrix::identity(2));
        let s4 = MetricSignature::minkowski(4).unwrap();
        let g = gamma(&s4, 1).unwrap();
        assert_eq!(&g * &g, -DiracMatrix::identity(4));
        assert!(matches!(gamma(&s4, 4), Err(Error::IndexOutOfRange { index: 4, dim: 4 })));
        assert!(MetricSignature::minkowski(3).is_err());
    }

    #[test]
    fn gamma5_properties() {
        for b in bases() {
            let g5 = b.gamma5();
            assert_eq!(g5.trace(), ZERO);
            assert_eq!(g5 * g5, b.identity());
            assert_eq!(&g5.adjoint(), g5);
            for mu in 0..b.dim() {
                assert!(g5.anticommutator(b.gamma(mu).unwrap()).is_zero());
            }
        }
        // D = 2: γ5 γ⁰ γ¹ = 𝕀
        let b = GammaBasis::standard(2).unwrap();
        let p = &(b.gamma5() * b.gamma(0).unwrap()) * b.gamma(1).unwrap();
        assert_eq!(p, b.identity());
    }

    #[test]
    fn projectors() {
        for b in bases() {
            let (p, m) = (b.projector(1), b.projector(-1));
            assert_eq!(&p * &p, p);
            assert_eq!(&m * &m, m);
            assert!((&p * &m).is_zero());
            assert_eq!(p + m, b.identity());
        }
    }

    #[test]
    fn sigma_antisymmetry() {
        let s4 = MetricSignature::minkowski(4).unwrap();
        assert!(sigma(&s4, 0, 0).unwrap().is_zero());
        assert!((sigma(&s4, 0, 1).unwrap() + sigma(&s4, 1, 0).unwrap()).is_zero());
    }

    #[test]
    fn traces() {
        let b4 = GammaBasis::standard(4).unwrap();
        assert_eq!(b4.identity().trace(), Complex64::new(4.0, 0.0));
        let b2 = GammaBasis::standard(2).unwrap();
        for mu in 0..2 {
            for nu in 0..2 {
                let t = trace_product(&[b2.gamma(mu).unwrap(), b2.gamma(nu).unwrap()]).unwrap();
                assert_eq!(t, Complex64::new(2.0 * b2.signature().g(mu, nu), 0.0));
            }
        }
        for mu in 0..4 {
            for nu in 0..4 {
                let t = trace_product(&[b4.gamma5(), b4.gamma(mu).unwrap(), b4.gamma(nu).unwrap()]).unwrap();
                assert_eq!(t, ZERO);
            }
        }
        let err = trace_product(&[b2.gamma5(), b4.gamma5()]);
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn d2_convention_constant() {
        // σ^{01} = iγ⁰γ¹ = iγ5, so tr[γ5 σ^{01}] = 2i in both representations.
        for rep in [Representation::Dirac, Representation::Chiral] {
            let b = GammaBasis::new(MetricSignature::minkowski(2).unwrap(), rep);
            assert_eq!(trace_gamma5_sigma01(&b).unwrap(), Complex64::new(0.0, 2.0));
        }
    }

    #[test]
    fn chirality_commutators() {
        for d in [2, 4] {
            let r = chirality_commutator_check(&MetricSignature::minkowski(d).unwrap());
            assert_eq!(r.plus_plus, 0.0);
            assert_eq!(r.minus_minus, 0.0);
            assert!(r.mixed > 0.0);
        }
    }

    #[test]
    fn duality_sign_follows_epsilon_orientation() {
        let eps = LeviCivita::standard(2).unwrap();
        let r = duality_identity_2d(eps).unwrap();
        assert_eq!(r.defect_per_index, [0.0, 0.0]);
        assert_eq!(r.sign, -1);
        let f = duality_identity_2d(eps.flipped()).unwrap();
        assert_eq!(f.defect(), 0.0);
        assert_eq!(f.sign, -r.sign);
        // Representation independence of the sign.
        let chiral = GammaBasis::new(MetricSignature::minkowski(2).unwrap(), Representation::Chiral);
        assert_eq!(duality_identity_2d_in(&chiral, eps).unwrap().sign, r.sign);
    }

    #[test]
    fn euclidean_gammas_are_hermitian_and_clifford() {
        for b in bases() {
            let e = b.euclidean_gammas();
            for a in 0..b.dim() {
                assert_eq!(e[a].adjoint(), e[a]);
                for c in 0..b.dim() {
                    let ac = e[a].anticommutator(&e[c]);
                    let expected = if a == c { b.identity().scale(Complex64::new(2.0, 0.0)) } else { DiracMatrix::zeros(b.spinor_dim()) };
                    assert_eq!(ac, expected);
                }
                assert!(b.gamma5().anticommutator(&e[a]).is_zero());
            }
        }
    }
}
