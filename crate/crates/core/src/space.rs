//! Points of the half-plane `σ > 1/2`, space descriptors, point sequences and
//! Dirichlet polynomials.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum Euclidean distance between two members of a [`PointSequence`].
pub const MIN_POINT_SEPARATION: f64 = 1e-12;

/// A point `s = σ + it` with `σ > 1/2`. Serialized as `[sigma, t]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 2]", try_from = "[f64; 2]")]
pub struct HalfPlanePoint {
    sigma: f64,
    t: f64,
}

impl HalfPlanePoint {
    pub fn new(sigma: f64, t: f64) -> Result<Self> {
        if !(sigma > 0.5 && sigma.is_finite() && t.is_finite()) {
            return Err(Error::Domain(format!("point must satisfy sigma > 1/2, got ({sigma}, {t})")));
        }
        Ok(Self { sigma, t })
    }

    pub fn from_complex(s: Complex64) -> Result<Self> {
        Self::new(s.re, s.im)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }

    /// The point moved vertically by `tau`.
    pub fn shifted(&self, tau: f64) -> Self {
        Self { sigma: self.sigma, t: self.t + tau }
    }
}

impl From<HalfPlanePoint> for [f64; 2] {
    fn from(p: HalfPlanePoint) -> Self {
        [p.sigma, p.t]
    }
}

impl TryFrom<[f64; 2]> for HalfPlanePoint {
    type Error = Error;

    fn try_from(v: [f64; 2]) -> Result<Self> {
        Self::new(v[0], v[1])
    }
}

/// Which reproducing-kernel Hilbert space a computation refers to.
///
/// Text form: `h`, `h2`, `h_alpha:<α>`, `d_alpha:<α>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpaceId {
    /// `𝓗`: square-summable coefficients, kernel `ζ(s + w̄)`.
    HardyDirichlet,
    /// McCarthy's `𝓗_α`, `α ≤ 1`, kernel `Z_α(s + w̄)`.
    WeightedDirichlet { alpha: f64 },
    /// `H²(C_{1/2})`, kernel `1/(s + w̄ - 1)`.
    HardyHalfPlane,
    /// `D_α(C_{1/2})`: weighted Bergman (`α < 0`), Dirichlet-type (`0 < α < 1`)
    /// or Dirichlet (`α = 1`).
    BergmanDirichletHalfPlane { alpha: f64 },
}

impl SpaceId {
    pub fn weighted_dirichlet(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha <= 1.0) {
            return Err(Error::Domain(format!("h_alpha needs alpha <= 1, got {alpha}")));
        }
        Ok(SpaceId::WeightedDirichlet { alpha })
    }

    pub fn bergman_dirichlet(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha <= 1.0 && alpha != 0.0) {
            return Err(Error::Domain(format!("d_alpha needs alpha <= 1, alpha != 0, got {alpha}")));
        }
        Ok(SpaceId::BergmanDirichletHalfPlane { alpha })
    }

    pub fn alpha(&self) -> Option<f64> {
        match *self {
            SpaceId::WeightedDirichlet { alpha } | SpaceId::BergmanDirichletHalfPlane { alpha } => Some(alpha),
            _ => None,
        }
    }

    /// True for the spaces of Dirichlet series (`𝓗`, `𝓗_α`).
    pub fn is_dirichlet_series_space(&self) -> bool {
        matches!(self, SpaceId::HardyDirichlet | SpaceId::WeightedDirichlet { .. })
    }

    /// The half-plane space with the same local kernel behaviour: `H²` for
    /// `𝓗` (and `𝓗_0`), `D_α` for `𝓗_α`. Half-plane spaces map to themselves.
    pub fn half_plane_counterpart(&self) -> SpaceId {
        match *self {
            SpaceId::HardyDirichlet => SpaceId::HardyHalfPlane,
            SpaceId::WeightedDirichlet { alpha } if alpha == 0.0 => SpaceId::HardyHalfPlane,
            SpaceId::WeightedDirichlet { alpha } => SpaceId::BergmanDirichletHalfPlane { alpha },
            other => other,
        }
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceId::HardyDirichlet => write!(f, "h"),
            SpaceId::HardyHalfPlane => write!(f, "h2"),
            SpaceId::WeightedDirichlet { alpha } => write!(f, "h_alpha:{alpha}"),
            SpaceId::BergmanDirichletHalfPlane { alpha } => write!(f, "d_alpha:{alpha}"),
        }
    }
}

impl FromStr for SpaceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_alpha = |a: &str| {
            a.trim()
                .parse::<f64>()
                .map_err(|_| Error::Domain(format!("bad alpha in space tag {s:?}")))
        };
        match s.trim() {
            "h" => Ok(SpaceId::HardyDirichlet),
            "h2" => Ok(SpaceId::HardyHalfPlane),
            other => {
                if let Some(a) = other.strip_prefix("h_alpha:") {
                    SpaceId::weighted_dirichlet(parse_alpha(a)?)
                } else if let Some(a) = other.strip_prefix("d_alpha:") {
                    SpaceId::bergman_dirichlet(parse_alpha(a)?)
                } else {
                    Err(Error::Domain(format!("unknown space tag {s:?}")))
                }
            }
        }
    }
}

impl Serialize for SpaceId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SpaceId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `(max σ, max |t|)` over a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundBox {
    pub max_sigma: f64,
    pub max_abs_t: f64,
}

/// An ordered list of pairwise distinct half-plane points.
/// Serialized as a JSON array of `[sigma, t]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "Vec<HalfPlanePoint>", try_from = "Vec<HalfPlanePoint>")]
pub struct PointSequence {
    points: Vec<HalfPlanePoint>,
    bound_box: BoundBox,
}

impl PointSequence {
    pub fn new(points: Vec<HalfPlanePoint>) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            for (j, q) in points.iter().enumerate().skip(i + 1) {
                if (p.to_complex() - q.to_complex()).norm() <= MIN_POINT_SEPARATION {
                    return Err(Error::Domain(format!("points {i} and {j} coincide: {p:?} vs {q:?}")));
                }
            }
        }
        let bound_box = BoundBox {
            max_sigma: points.iter().map(|p| p.sigma).fold(f64::NEG_INFINITY, f64::max),
            max_abs_t: points.iter().map(|p| p.t.abs()).fold(0.0, f64::max),
        };
        Ok(Self { points, bound_box })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        let points = pairs
            .iter()
            .map(|&(sigma, t)| HalfPlanePoint::new(sigma, t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }

    pub fn points(&self) -> &[HalfPlanePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn bound_box(&self) -> BoundBox {
        self.bound_box
    }

    pub fn iter(&self) -> std::slice::Iter<'_, HalfPlanePoint> {
        self.points.iter()
    }

    /// Every point moved vertically by `tau`.
    pub fn translated(&self, tau: f64) -> Self {
        let points: Vec<_> = self.points.iter().map(|p| p.shifted(tau)).collect();
        Self::new(points).expect("translation preserves distinctness")
    }

    /// The subsequence at the given indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> Self {
        Self::new(indices.iter().map(|&i| self.points[i]).collect())
            .expect("subsequence of distinct points")
    }

    /// The sequence with one more point appended.
    pub fn extended(&self, p: HalfPlanePoint) -> Result<Self> {
        let mut points = self.points.clone();
        points.push(p);
        Self::new(points)
    }
}

impl From<PointSequence> for Vec<HalfPlanePoint> {
    fn from(s: PointSequence) -> Self {
        s.points
    }
}

impl TryFrom<Vec<HalfPlanePoint>> for PointSequence {
    type Error = Error;

    fn try_from(points: Vec<HalfPlanePoint>) -> Result<Self> {
        Self::new(points)
    }
}

impl<'a> IntoIterator for &'a PointSequence {
    type Item = &'a HalfPlanePoint;
    type IntoIter = std::slice::Iter<'a, HalfPlanePoint>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// `f(s) = Σ_{n=1}^{N} a_n n^{-s}`, stored as `[a_1, ..., a_N]` with a nonzero
/// trailing coefficient (the zero polynomial is `[0]`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "Vec<[f64; 2]>", try_from = "Vec<[f64; 2]>")]
pub struct DirichletPolynomial {
    coeffs: Vec<Complex64>,
}

impl DirichletPolynomial {
    /// Trims trailing zeros. Fails only on an empty vector.
    pub fn new(mut coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("a Dirichlet polynomial needs at least one coefficient".into()));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("non-finite Dirichlet coefficient".into()));
        }
        while coeffs.len() > 1 && coeffs.last() == Some(&Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Ok(Self { coeffs })
    }

    /// `n^{-s}`.
    pub fn monomial(n: usize, coeff: Complex64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("Dirichlet monomials start at n = 1".into()));
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
        coeffs[n - 1] = coeff;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Length `N` of the coefficient vector.
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm() == 0.0)
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() != 0.0)
            .map(|(k, a)| a * (-s * ((k + 1) as f64).ln()).exp())
            .sum()
    }

    /// `f'(s) = -Σ a_n log n · n^{-s}`.
    pub fn eval_derivative(&self, s: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| {
                let ln = ((k + 1) as f64).ln();
                -a * ln * (-s * ln).exp()
            })
            .sum()
    }

    /// `‖f‖²_𝓗 = Σ |a_n|²`.
    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `‖f‖²_{𝓗_α} = Σ |a_n|² log^α(n+1)`.
    pub fn weighted_norm_sq(&self, alpha: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.norm_sqr() * ((k + 2) as f64).ln().powf(alpha))
            .sum()
    }
}

impl From<DirichletPolynomial> for Vec<[f64; 2]> {
    fn from(p: DirichletPolynomial) -> Self {
        p.coeffs.iter().map(|c| [c.re, c.im]).collect()
    }
}

impl TryFrom<Vec<[f64; 2]>> for DirichletPolynomial {
    type Error = Error;

    fn try_from(v: Vec<[f64; 2]>) -> Result<Self> {
        Self::new(v.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_rejects_boundary() {
        assert!(HalfPlanePoint::new(0.5, 0.0).is_err());
        assert!(HalfPlanePoint::new(0.4, 1.0).is_err());
        assert!(HalfPlanePoint::new(f64::NAN, 1.0).is_err());
        assert!(HalfPlanePoint::new(0.5 + 1e-12, 1.0).is_ok());
    }

    #[test]
    fn sequence_rejects_coincident_points() {
        let err = PointSequence::from_pairs(&[(1.0, 0.0), (1.0, 1e-13)]).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        let ok = PointSequence::from_pairs(&[(1.0, 0.0), (1.0, 1e-9)]).unwrap();
        assert_eq!(ok.len(), 2);
    }

    #[test]
    fn bound_box_tracks_extremes() {
        let s = PointSequence::from_pairs(&[(0.7, -3.0), (2.5, 1.0)]).unwrap();
        assert_eq!(s.bound_box(), BoundBox { max_sigma: 2.5, max_abs_t: 3.0 });
    }

    #[test]
    fn space_tags_round_trip() {
        for tag in ["h", "h2", "h_alpha:0.5", "h_alpha:-1", "d_alpha:1", "d_alpha:-2.5"] {
            let s: SpaceId = tag.parse().unwrap();
            assert_eq!(s.to_string(), tag);
        }
        assert!("d_alpha:0".parse::<SpaceId>().is_err());
        assert!("h_alpha:1.5".parse::<SpaceId>().is_err());
        assert!("bergman".parse::<SpaceId>().is_err());
    }

    #[test]
    fn sequence_json_is_array_of_pairs() {
        let s = PointSequence::from_pairs(&[(1.0, 0.0), (0.75, 2.0)]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[[1.0,0.0],[0.75,2.0]]");
        let back: PointSequence = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<PointSequence>("[[0.5,0.0]]").is_err());
    }

    #[test]
    fn polynomial_canonical_form() {
        let p = DirichletPolynomial::new(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 0.0),
        ])
        .unwrap();
        assert_eq!(p.degree(), 2);
        let z = DirichletPolynomial::new(vec![Complex64::new(0.0, 0.0); 3]).unwrap();
        assert_eq!(z.degree(), 1);
        assert!(z.is_zero());
    }

    #[test]
    fn polynomial_evaluation() {
        let p = DirichletPolynomial::monomial(2, Complex64::new(1.0, 0.0)).unwrap();
        let s = Complex64::new(1.0, 0.0);
        assert!((p.eval(s) - 0.5).norm() < 1e-15);
        assert!((p.eval_derivative(s) + 0.5 * 2f64.ln()).norm() < 1e-15);
        assert!((p.weighted_norm_sq(-1.0) - 1.0 / 3f64.ln()).abs() < 1e-15);
    }
}
