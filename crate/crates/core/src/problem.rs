//! Problem descriptions: second-order divergence-form operators on an
//! interval or a rectangle with first-order boundary operators.
//!
//! A [`ProblemSpec`] carries the coefficient fields of the sesquilinear form
//!
//! ```text
//! (u, v) = int_D sum_ij a_ij d_j(u) conj(d_i(v))
//!        + int_D a00 u conj(v)
//!        + int_{bd D \ S} (b00 / b1) u conj(v) ds
//! ```
//!
//! split into an unperturbed part (`a_matrix`, `a00`, `b00/b1`) and a
//! perturbation (`a_vec` convection, `delta_a0`, tangential `t_field` and
//! `delta_b0` on the boundary). `S` is the Dirichlet part of the boundary,
//! described as a set of faces; `b1` must vanish exactly on `S` and stay
//! away from zero elsewhere.
//!
//! Hypotheses are checked by [`validate`] with deterministic sampling: a
//! midpoint tensor grid in the interior plus fixed direction sets. Strong
//! ellipticity tests the form on real directions; coercivity tests it on
//! complex directions, which is strictly stronger. The `one of three`
//! positivity condition (nonempty `S`, positive mass of `a00`, positive
//! boundary mass of `b00/b1`) is what makes the unperturbed form a scalar
//! product.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

/// Spatial point; one-dimensional problems use only the first coordinate.
pub type Point = [f64; 2];

pub type MatrixField = Arc<dyn Fn(Point) -> Vec<Complex64> + Send + Sync>;
pub type VectorField = Arc<dyn Fn(Point) -> Vec<Complex64> + Send + Sync>;
pub type RealField = Arc<dyn Fn(Point) -> f64 + Send + Sync>;
pub type ScalarField = Arc<dyn Fn(Point) -> Complex64 + Send + Sync>;
pub type BoundaryField = Arc<dyn Fn(Point, Face) -> Complex64 + Send + Sync>;
pub type BoundaryRealField = Arc<dyn Fn(Point, Face) -> f64 + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Face {
    Left,
    Right,
    Bottom,
    Top,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Domain {
    Interval { a: f64, b: f64 },
    Rectangle { x0: f64, x1: f64, y0: f64, y1: f64 },
}

impl Domain {
    pub fn unit_interval() -> Self {
        Domain::Interval { a: 0.0, b: 1.0 }
    }

    pub fn unit_square() -> Self {
        Domain::Rectangle { x0: 0.0, x1: 1.0, y0: 0.0, y1: 1.0 }
    }

    pub fn dim(&self) -> usize {
        match self {
            Domain::Interval { .. } => 1,
            Domain::Rectangle { .. } => 2,
        }
    }

    pub fn faces(&self) -> Vec<Face> {
        match self {
            Domain::Interval { .. } => vec![Face::Left, Face::Right],
            Domain::Rectangle { .. } => vec![Face::Left, Face::Right, Face::Bottom, Face::Top],
        }
    }

    /// Counterclockwise unit tangent of a rectangle face; interval endpoints
    /// have no tangential direction.
    pub fn tangent(&self, face: Face) -> [f64; 2] {
        match self {
            Domain::Interval { .. } => [0.0, 0.0],
            Domain::Rectangle { .. } => match face {
                Face::Bottom => [1.0, 0.0],
                Face::Right => [0.0, 1.0],
                Face::Top => [-1.0, 0.0],
                Face::Left => [0.0, -1.0],
            },
        }
    }

    /// Midpoint sample grid of `n` points along a face (a single endpoint in
    /// one dimension).
    pub fn face_points(&self, face: Face, n: usize) -> Vec<Point> {
        match *self {
            Domain::Interval { a, b } => match face {
                Face::Left => vec![[a, 0.0]],
                Face::Right => vec![[b, 0.0]],
                _ => vec![],
            },
            Domain::Rectangle { x0, x1, y0, y1 } => {
                let mut pts = Vec::with_capacity(n);
                for i in 0..n {
                    let t = (i as f64 + 0.5) / n as f64;
                    pts.push(match face {
                        Face::Left => [x0, y0 + t * (y1 - y0)],
                        Face::Right => [x1, y0 + t * (y1 - y0)],
                        Face::Bottom => [x0 + t * (x1 - x0), y0],
                        Face::Top => [x0 + t * (x1 - x0), y1],
                    });
                }
                pts
            }
        }
    }

    /// Midpoint tensor grid of `n` points per axis in the interior.
    pub fn interior_points(&self, n: usize) -> Vec<Point> {
        match *self {
            Domain::Interval { a, b } => (0..n)
                .map(|i| [a + (i as f64 + 0.5) / n as f64 * (b - a), 0.0])
                .collect(),
            Domain::Rectangle { x0, x1, y0, y1 } => {
                let mut pts = Vec::with_capacity(n * n);
                for j in 0..n {
                    for i in 0..n {
                        pts.push([
                            x0 + (i as f64 + 0.5) / n as f64 * (x1 - x0),
                            y0 + (j as f64 + 0.5) / n as f64 * (y1 - y0),
                        ]);
                    }
                }
                pts
            }
        }
    }

    pub fn face_measure(&self, face: Face) -> f64 {
        match *self {
            Domain::Interval { .. } => 1.0,
            Domain::Rectangle { x0, x1, y0, y1 } => match face {
                Face::Left | Face::Right => y1 - y0,
                Face::Bottom | Face::Top => x1 - x0,
            },
        }
    }

    pub fn volume(&self) -> f64 {
        match *self {
            Domain::Interval { a, b } => b - a,
            Domain::Rectangle { x0, x1, y0, y1 } => (x1 - x0) * (y1 - y0),
        }
    }
}

/// Immutable description of one boundary value problem. Coefficient fields
/// are shared closures so a spec can be evaluated concurrently.
#[derive(Clone)]
pub struct ProblemSpec {
    pub name: String,
    pub domain: Domain,
    /// Hermitian coefficient matrix of the principal part, row-major
    /// `dim x dim`.
    pub a_matrix: MatrixField,
    /// First-order perturbation coefficients (length `dim`).
    pub a_vec: VectorField,
    /// Nonnegative zero-order coefficient of the unperturbed form.
    pub a00: RealField,
    /// Zero-order perturbation.
    pub delta_a0: ScalarField,
    /// Dirichlet faces `S`.
    pub dirichlet: BTreeSet<Face>,
    /// Leading boundary coefficient; vanishes exactly on `S`, bounded away
    /// from zero elsewhere.
    pub b1: BoundaryField,
    /// Unperturbed zero-order boundary coefficient; `b00 / b1 >= 0` on the
    /// retained boundary.
    pub b00: BoundaryRealField,
    /// Zero-order boundary perturbation.
    pub delta_b0: BoundaryField,
    /// Tangential coefficient of the oblique part, as the signed multiple of
    /// the counterclockwise unit tangent; vanishes on `S`.
    pub t_field: BoundaryRealField,
    /// Declared ellipticity constant.
    pub ellipticity_m: f64,
    /// Smoothness exponent of the form domain, in (0, 1].
    pub s_exponent: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PositivityCondition {
    SNonempty,
    A00PositiveMass,
    B00PositiveMass,
    None,
}

impl PositivityCondition {
    pub fn as_str(&self) -> &'static str {
        match self {
            PositivityCondition::SNonempty => "s_nonempty",
            PositivityCondition::A00PositiveMass => "a00_positive_mass",
            PositivityCondition::B00PositiveMass => "b00_positive_mass",
            PositivityCondition::None => "none",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub strongly_elliptic: bool,
    pub coercive: bool,
    pub condition_one_of_three: PositivityCondition,
    /// Whether the root-completeness sector criterion is non-vacuous for
    /// this problem, i.e. `sin(pi s / dim) > 0`; the comparison of the
    /// computed perturbation size against that threshold lives in the
    /// spectral report.
    pub completeness_angle_ok: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("unknown problem '{0}'")]
    UnknownProblem(String),
    #[error("problem '{problem}' does not take a parameter '{param}'")]
    UnknownParam { problem: String, param: String },
    #[error("parameter '{param}': {reason}")]
    BadParam { param: String, reason: String },
    #[error("invalid sample count {0}; need at least 1")]
    BadSampleCount(usize),
}

/// Builtin problem registry, in presentation order.
pub const BUILTIN_PROBLEMS: [&str; 7] = [
    "neumann_1d",
    "robin_1d",
    "zaremba_1d",
    "convection_1d",
    "zaremba_2d",
    "convection_2d",
    "dbar_noncoercive_2d",
];

fn const_scalar(z: Complex64) -> ScalarField {
    Arc::new(move |_| z)
}

fn const_real(x: f64) -> RealField {
    Arc::new(move |_| x)
}

fn const_boundary(z: Complex64) -> BoundaryField {
    Arc::new(move |_, _| z)
}

fn const_boundary_real(x: f64) -> BoundaryRealField {
    Arc::new(move |_, _| x)
}

struct Params<'a> {
    problem: &'a str,
    values: &'a BTreeMap<String, Complex64>,
    allowed: &'a [&'a str],
}

impl<'a> Params<'a> {
    fn check_keys(&self) -> Result<(), ProblemError> {
        for key in self.values.keys() {
            if !self.allowed.contains(&key.as_str()) {
                return Err(ProblemError::UnknownParam {
                    problem: self.problem.to_string(),
                    param: key.clone(),
                });
            }
        }
        Ok(())
    }

    fn complex(&self, key: &str, default: Complex64) -> Complex64 {
        self.values.get(key).copied().unwrap_or(default)
    }

    fn real(&self, key: &str, default: f64, min: Option<f64>) -> Result<f64, ProblemError> {
        let v = self.values.get(key).copied().unwrap_or(Complex64::new(default, 0.0));
        if v.im != 0.0 {
            return Err(ProblemError::BadParam {
                param: key.to_string(),
                reason: format!("must be real, got imaginary part {}", v.im),
            });
        }
        if let Some(lo) = min {
            if v.re < lo {
                return Err(ProblemError::BadParam {
                    param: key.to_string(),
                    reason: format!("must be at least {lo}, got {}", v.re),
                });
            }
        }
        Ok(v.re)
    }
}

/// Constructs a builtin problem. Unknown names, unknown parameters and
/// out-of-range values are rejected.
pub fn builtin_problem(
    name: &str,
    params: &BTreeMap<String, Complex64>,
) -> Result<ProblemSpec, ProblemError> {
    match name {
        "neumann_1d" => {
            let p = Params { problem: name, values: params, allowed: &["a00", "delta_a0"] };
            p.check_keys()?;
            let a00 = p.real("a00", 1.0, Some(0.0))?;
            let delta_a0 = p.complex("delta_a0", Complex64::new(0.0, 0.0));
            Ok(ProblemSpec {
                name: name.to_string(),
                domain: Domain::unit_interval(),
                a_matrix: Arc::new(|_| vec![Complex64::new(1.0, 0.0)]),
                a_vec: Arc::new(|_| vec![Complex64::new(0.0, 0.0)]),
                a00: const_real(a00),
                delta_a0: const_scalar(delta_a0),
                dirichlet: BTreeSet::new(),
                b1: const_boundary(Complex64::new(1.0, 0.0)),
                b00: const_boundary_real(0.0),
                delta_b0: const_boundary(Complex64::new(0.0, 0.0)),
                t_field: const_boundary_real(0.0),
                ellipticity_m: 1.0,
                s_exponent: 1.0,
            })
        }
        "robin_1d" => {
            let p = Params {
                problem: name,
                values: params,
                allowed: &["a00", "b00", "delta_a0", "delta_b0"],
            };
            p.check_keys()?;
            let a00 = p.real("a00", 1.0, Some(0.0))?;
            let b00 = p.real("b00", 1.0, Some(0.0))?;
            let delta_a0 = p.complex("delta_a0", Complex64::new(0.0, 0.0));
            let delta_b0 = p.complex("delta_b0", Complex64::new(0.0, 0.0));
            Ok(ProblemSpec {
                name: name.to_string(),
                domain: Domain::unit_interval(),
                a_matrix: Arc::new(|_| vec![Complex64::new(1.0, 0.0)]),
                a_vec: Arc::new(|_| vec![Complex64::new(0.0, 0.0)]),
                a00: const_real(a00),
                delta_a0: const_scalar(delta_a0),
                dirichlet: BTreeSet::new(),
                b1: const_boundary(Complex64::new(1.0, 0.0)),
                b00: const_boundary_real(b00),
                delta_b0: const_boundary(delta_b0),
                t_field: const_boundary_real(0.0),
                ellipticity_m: 1.0,
                s_exponent: 1.0,
            })
        }
        "zaremba_1d" => {
            let p = Params { problem: name, values: params, allowed: &["a00", "delta_a0"] };
            p.check_keys()?;
            let a00 = p.real("a00", 0.0, Some(0.0))?;
            let delta_a0 = p.complex("delta_a0", Complex64::new(0.0, 0.0));
            let mut dirichlet = BTreeSet::new();
            dirichlet.insert(Face::Left);
            Ok(ProblemSpec {
                name: name.to_string(),
                domain: Domain::unit_interval(),
                a_matrix: Arc::new(|_| vec![Complex64::new(1.0, 0.0)]),
                a_vec: Arc::new(|_| vec![Complex64::new(0.0, 0.0)]),
                a00: const_real(a00),
                delta_a0: const_scalar(delta_a0),
                dirichlet,
                b1: Arc::new(|_, face| {
                    if face == Face::Left {
                        Complex64::new(0.0, 0.0)
                    } else {
                        Complex64::new(1.0, 0.0)
                    }
                }),
                b00: const_boundary_real(0.0),
                delta_b0: const_boundary(Complex64::new(0.0, 0.0)),
                t_field: const_boundary_real(0.0),
                ellipticity_m: 1.0,
                s_exponent: 1.0,
            })
        }
        "convection_1d" => {
            let p = Params {
                problem: name,
                values: params,
                allowed: &["a00", "b", "delta_a0"],
            };
            p.check_keys()?;
            let a00 = p.real("a00", 1.0, Some(0.0))?;
            let b = p.complex("b", Complex64::new(1.0, 0.0));
            let delta_a0 = p.complex("delta_a0", Complex64::new(0.0, 0.0));
            Ok(ProblemSpec {
                name: name.to_string(),
                domain: Domain::unit_interval(),
                a_matrix: Arc::new(|_| vec![Complex64::new(1.0, 0.0)]),
                a_vec: Arc::new(move |_| vec![b]),
                a00: const_real(a00),
                delta_a0: const_scalar(delta_a0),
                dirichlet: BTreeSet::new(),
                b1: const_boundary(Complex64::new(1.0, 0.0)),
                b00: const_boundary_real(0.0),
                delta_b0: const_boundary(Complex64::new(0.0, 0.0)),
                t_field: const_boundary_real(0.0),
                ellipticity_m: 1.0,
                s_exponent: 1.0,
            })
        }
        "zaremba_2d" => {
            let p = Params { problem: name, values: params, allowed: &["a00", "eps"] };
            p.check_keys()?;
            let a00 = p.real("a00", 0.0, Some(0.0))?;
            let eps = p.real("eps", 0.0, None)?;
            let mut dirichlet = BTreeSet::new();
            dirichlet.insert(Face::Left);
            Ok(ProblemSpec {
                name: name.to_string(),
                domain: Domain::unit_square(),
                a_matrix: Arc::new(|_| {
                    vec![
                        Complex64::new(1.0, 0.0),
                        Complex64::new(0.0, 0.0),
                        Complex64::new(0.0, 0.0),
                        Complex64::new(1.0, 0.0),
                    ]
                }),
                a_vec: Arc::new(|_| vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)]),
                a00: const_real(a00),
                delta_a0: const_scalar(Complex64::new(0.0, 0.0)),
                dirichlet,
                b1: Arc::new(|_, face| {
                    if face == Face::Left {
                        Complex64::new(0.0, 0.0)
                    } else {
                        Complex64::new(1.0, 0.0)
                    }
                }),
                b00: const_boundary_real(0.0),
                delta_b0: const_boundary(Complex64::new(0.0, 0.0)),
                t_field: Arc::new(move |_, face| if face == Face::Left { 0.0 } else { eps }),
                ellipticity_m: 1.0,
                s_exponent: 1.0,
            })
        }
        "convection_2d" => {
            let p = Params {
                problem: name,
                values: params,
                allowed: &["a00", "b", "delta_a0"],
            };
            p.check_keys()?;
            let a00 = p.real("a00", 1.0, Some(0.0))?;
            let b = p.complex("b", Complex64::new(1.0, 0.0));
            let delta_a0 = p.complex("delta_a0", Complex64::new(0.0, 0.0));
            Ok(ProblemSpec {
                name: name.to_string(),
                domain: Domain::unit_square(),
                a_matrix: Arc::new(|_| {
                    vec![
                        Complex64::new(1.0, 0.0),
                        Complex64::new(0.0, 0.0),
                        Complex64::new(0.0, 0.0),
                        Complex64::new(1.0, 0.0),
                    ]
                }),
                a_vec: Arc::new(move |_| vec![b, b]),
                a00: const_real(a00),
                delta_a0: const_scalar(delta_a0),
                dirichlet: BTreeSet::new(),
                b1: const_boundary(Complex64::new(1.0, 0.0)),
                b00: const_boundary_real(0.0),
                delta_b0: const_boundary(Complex64::new(0.0, 0.0)),
                t_field: const_boundary_real(0.0),
                ellipticity_m: 1.0,
                s_exponent: 1.0,
            })
        }
        "dbar_noncoercive_2d" => {
            let p = Params {
                problem: name,
                values: params,
                allowed: &["b00", "delta", "delta_a0"],
            };
            p.check_keys()?;
            let b00 = p.real("b00", 1.0, Some(0.0))?;
            if b00 == 0.0 {
                return Err(ProblemError::BadParam {
                    param: "b00".to_string(),
                    reason: "must be strictly positive".to_string(),
                });
            }
            let delta = p.complex("delta", Complex64::new(0.0, 0.0));
            let delta_a0 = p.complex("delta_a0", Complex64::new(0.0, 0.0));
            Ok(ProblemSpec {
                name: name.to_string(),
                domain: Domain::unit_square(),
                // Principal coefficients of |2 dbar u|^2: strongly elliptic
                // on real directions but annihilating the complex direction
                // (1, i), hence not coercive.
                a_matrix: Arc::new(|_| {
                    vec![
                        Complex64::new(1.0, 0.0),
                        Complex64::new(0.0, 1.0),
                        Complex64::new(0.0, -1.0),
                        Complex64::new(1.0, 0.0),
                    ]
                }),
                // Convection delta * d/d(zbar) = delta/2 (d_x + i d_y).
                a_vec: Arc::new(move |_| vec![delta * 0.5, delta * Complex64::new(0.0, 0.5)]),
                a00: const_real(1.0),
                delta_a0: const_scalar(delta_a0),
                dirichlet: BTreeSet::new(),
                b1: const_boundary(Complex64::new(1.0, 0.0)),
                b00: const_boundary_real(b00),
                delta_b0: const_boundary(Complex64::new(0.0, 0.0)),
                t_field: const_boundary_real(0.0),
                ellipticity_m: 1.0,
                s_exponent: 0.5,
            })
        }
        other => Err(ProblemError::UnknownProblem(other.to_string())),
    }
}

/// Fixed real test directions (unit vectors) per dimension.
fn real_directions(dim: usize) -> Vec<Vec<f64>> {
    if dim == 1 {
        return vec![vec![1.0]];
    }
    (0..16)
        .map(|k| {
            let th = k as f64 * std::f64::consts::PI / 16.0;
            vec![th.cos(), th.sin()]
        })
        .collect()
}

/// Fixed complex test directions (unit vectors) per dimension; the set
/// includes all real directions (phase 0) and the isotropic directions
/// `(cos t, +-i sin t)` that witness non-coercivity of Cauchy-Riemann type
/// coefficients.
fn complex_directions(dim: usize) -> Vec<Vec<Complex64>> {
    if dim == 1 {
        return vec![vec![Complex64::new(1.0, 0.0)]];
    }
    let mut dirs = Vec::new();
    for k in 0..=8 {
        let th = k as f64 * std::f64::consts::PI / 8.0;
        for phase_idx in 0..4 {
            let ph = phase_idx as f64 * std::f64::consts::PI / 2.0;
            dirs.push(vec![
                Complex64::new(th.cos(), 0.0),
                Complex64::from_polar(th.sin(), ph),
            ]);
        }
    }
    dirs
}

/// Checks the standing hypotheses by deterministic sampling with `n_samples`
/// points per axis. Identical flags must come out for any sufficiently large
/// sample count; the sample grid is a midpoint tensor grid plus fixed
/// direction sets, so the whole report is reproducible bit for bit.
pub fn validate(spec: &ProblemSpec, n_samples: usize) -> Result<ValidationReport, ProblemError> {
    if n_samples == 0 {
        return Err(ProblemError::BadSampleCount(n_samples));
    }
    let dim = spec.domain.dim();
    let mut notes = Vec::new();

    if !(spec.s_exponent > 0.0 && spec.s_exponent <= 1.0) {
        notes.push(format!(
            "s_exponent {} outside (0, 1]; spectral order predictions are unreliable",
            spec.s_exponent
        ));
    }

    let interior = spec.domain.interior_points(n_samples);
    let mut hermitian_defect = 0.0f64;
    let mut scale = 0.0f64;
    for &pt in &interior {
        let a = (spec.a_matrix)(pt);
        for i in 0..dim {
            for j in 0..dim {
                hermitian_defect = hermitian_defect.max((a[i * dim + j] - a[j * dim + i].conj()).norm());
                scale = scale.max(a[i * dim + j].norm());
            }
        }
    }
    let hermitian_ok = hermitian_defect <= 1e-13 * scale.max(1.0);
    if !hermitian_ok {
        notes.push(format!(
            "a_matrix is not Hermitian at sampled points (defect {hermitian_defect:.3e})"
        ));
    }

    let m = spec.ellipticity_m;
    let slack = 1.0 - 1e-9;
    let mut elliptic_min = f64::INFINITY;
    for &pt in &interior {
        let a = (spec.a_matrix)(pt);
        for xi in real_directions(dim) {
            let mut q = Complex64::new(0.0, 0.0);
            for i in 0..dim {
                for j in 0..dim {
                    q += a[i * dim + j] * xi[i] * xi[j];
                }
            }
            elliptic_min = elliptic_min.min(q.re);
        }
    }
    let strongly_elliptic = hermitian_ok && elliptic_min >= m * slack;

    let mut coercive_min = f64::INFINITY;
    for &pt in &interior {
        let a = (spec.a_matrix)(pt);
        for w in complex_directions(dim) {
            let mut q = Complex64::new(0.0, 0.0);
            for i in 0..dim {
                for j in 0..dim {
                    q += w[i].conj() * a[i * dim + j] * w[j];
                }
            }
            coercive_min = coercive_min.min(q.re);
        }
    }
    let coercive = hermitian_ok && coercive_min >= m * slack;

    // Boundary hypotheses: b1 vanishes on S, stays above the floor
    // elsewhere, and b00 / b1 is real nonnegative on the retained part.
    for face in spec.domain.faces() {
        let pts = spec.domain.face_points(face, n_samples);
        if spec.dirichlet.contains(&face) {
            for &pt in &pts {
                if (spec.b1)(pt, face).norm() > 1e-14 {
                    notes.push(format!("b1 does not vanish on the Dirichlet face {face:?}"));
                    break;
                }
            }
            for &pt in &pts {
                if (spec.t_field)(pt, face).abs() > 1e-14 {
                    notes.push(format!("t_field does not vanish on the Dirichlet face {face:?}"));
                    break;
                }
            }
        } else {
            for &pt in &pts {
                let b1 = (spec.b1)(pt, face);
                if b1.norm() < 1e-12 {
                    notes.push(format!(
                        "b1 falls below the 1e-12 floor on the retained face {face:?}"
                    ));
                    break;
                }
                let ratio = Complex64::new((spec.b00)(pt, face), 0.0) / b1;
                if ratio.im.abs() > 1e-12 * ratio.norm().max(1.0) || ratio.re < -1e-12 {
                    notes.push(format!(
                        "b00 / b1 is not real nonnegative on face {face:?} (got {ratio})"
                    ));
                    break;
                }
            }
        }
    }

    // One-of-three positivity, in the order the alternatives are stated:
    // nonempty Dirichlet set, interior mass of a00, boundary mass of b00/b1.
    let condition = if !spec.dirichlet.is_empty() {
        PositivityCondition::SNonempty
    } else {
        let vol = spec.domain.volume();
        let mut a00_mass = 0.0;
        for &pt in &interior {
            a00_mass += (spec.a00)(pt);
        }
        a00_mass *= vol / interior.len() as f64;
        if a00_mass > 1e-12 * vol.max(1.0) {
            PositivityCondition::A00PositiveMass
        } else {
            let mut b_mass = 0.0;
            for face in spec.domain.faces() {
                let pts = spec.domain.face_points(face, n_samples);
                let meas = spec.domain.face_measure(face);
                for &pt in &pts {
                    let b1 = (spec.b1)(pt, face);
                    if b1.norm() >= 1e-12 {
                        b_mass += ((spec.b00)(pt, face) / b1).re * meas / pts.len() as f64;
                    }
                }
            }
            if b_mass > 1e-12 {
                PositivityCondition::B00PositiveMass
            } else {
                PositivityCondition::None
            }
        }
    };
    if condition == PositivityCondition::None {
        notes.push(
            "no positivity source: S empty, a00 mass zero, b00/b1 boundary mass zero; \
             the unperturbed form is only a seminorm"
                .to_string(),
        );
    }

    let angle_threshold = (std::f64::consts::PI * spec.s_exponent / dim as f64).sin();
    let completeness_angle_ok = angle_threshold > 1e-12;

    Ok(ValidationReport {
        strongly_elliptic,
        coercive,
        condition_one_of_three: condition,
        completeness_angle_ok,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_params() -> BTreeMap<String, Complex64> {
        BTreeMap::new()
    }

    #[test]
    fn builtin_registry_constructs_with_defaults() {
        for name in BUILTIN_PROBLEMS {
            let spec = builtin_problem(name, &no_params()).unwrap();
            assert_eq!(spec.name, name);
        }
    }

    #[test]
    fn unknown_problem_is_rejected() {
        assert!(matches!(
            builtin_problem("helmholtz_3d", &no_params()),
            Err(ProblemError::UnknownProblem(_))
        ));
    }

    #[test]
    fn unknown_and_out_of_range_params_are_rejected() {
        let mut p = no_params();
        p.insert("frequency".into(), Complex64::new(1.0, 0.0));
        assert!(matches!(
            builtin_problem("neumann_1d", &p),
            Err(ProblemError::UnknownParam { .. })
        ));
        let mut neg = no_params();
        neg.insert("a00".into(), Complex64::new(-1.0, 0.0));
        assert!(matches!(
            builtin_problem("neumann_1d", &neg),
            Err(ProblemError::BadParam { .. })
        ));
        let mut imag = no_params();
        imag.insert("a00".into(), Complex64::new(1.0, 0.5));
        assert!(matches!(
            builtin_problem("neumann_1d", &imag),
            Err(ProblemError::BadParam { .. })
        ));
    }

    #[test]
    fn neumann_coefficients_are_as_documented() {
        let spec = builtin_problem("neumann_1d", &no_params()).unwrap();
        assert_eq!(spec.domain, Domain::unit_interval());
        let a = (spec.a_matrix)([0.3, 0.0]);
        assert_eq!(a, vec![Complex64::new(1.0, 0.0)]);
        assert!(spec.dirichlet.is_empty());
        assert_eq!((spec.b00)([0.0, 0.0], Face::Left), 0.0);
        assert_eq!(spec.s_exponent, 1.0);
    }

    #[test]
    fn zaremba_1d_mixes_dirichlet_and_neumann() {
        let spec = builtin_problem("zaremba_1d", &no_params()).unwrap();
        assert!(spec.dirichlet.contains(&Face::Left));
        assert!(!spec.dirichlet.contains(&Face::Right));
        assert_eq!((spec.b1)([0.0, 0.0], Face::Left), Complex64::new(0.0, 0.0));
        assert_eq!((spec.b1)([1.0, 0.0], Face::Right), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn dbar_coefficient_matrix_is_the_cauchy_riemann_one() {
        let spec = builtin_problem("dbar_noncoercive_2d", &no_params()).unwrap();
        let a = (spec.a_matrix)([0.5, 0.5]);
        assert_eq!(a[0], Complex64::new(1.0, 0.0));
        assert_eq!(a[1], Complex64::new(0.0, 1.0));
        assert_eq!(a[2], Complex64::new(0.0, -1.0));
        assert_eq!(a[3], Complex64::new(1.0, 0.0));
        assert_eq!(spec.s_exponent, 0.5);
    }

    #[test]
    fn validate_flags_coercive_problems() {
        let spec = builtin_problem("neumann_1d", &no_params()).unwrap();
        let report = validate(&spec, 16).unwrap();
        assert!(report.strongly_elliptic);
        assert!(report.coercive);
        assert_eq!(report.condition_one_of_three, PositivityCondition::A00PositiveMass);
    }

    #[test]
    fn validate_flags_zaremba_via_nonempty_dirichlet_set() {
        let spec = builtin_problem("zaremba_1d", &no_params()).unwrap();
        let report = validate(&spec, 16).unwrap();
        assert_eq!(report.condition_one_of_three, PositivityCondition::SNonempty);
        assert!(report.strongly_elliptic);
    }

    // The Cauchy-Riemann coefficients annihilate the gradient of u(z) = z,
    // i.e. the complex direction (1, i), so the sampled coercivity test must
    // fail while real directions still see the full quadratic form.
    #[test]
    fn validate_sees_dbar_as_elliptic_but_not_coercive() {
        let spec = builtin_problem("dbar_noncoercive_2d", &no_params()).unwrap();
        let report = validate(&spec, 16).unwrap();
        assert!(report.strongly_elliptic);
        assert!(!report.coercive);
        assert_eq!(report.condition_one_of_three, PositivityCondition::A00PositiveMass);
    }

    #[test]
    fn validate_is_stable_under_sample_refinement() {
        for name in BUILTIN_PROBLEMS {
            let spec = builtin_problem(name, &no_params()).unwrap();
            let coarse = validate(&spec, 16).unwrap();
            let fine = validate(&spec, 64).unwrap();
            assert_eq!(coarse.strongly_elliptic, fine.strongly_elliptic, "{name}");
            assert_eq!(coarse.coercive, fine.coercive, "{name}");
            assert_eq!(coarse.condition_one_of_three, fine.condition_one_of_three, "{name}");
            assert_eq!(coarse.completeness_angle_ok, fine.completeness_angle_ok, "{name}");
        }
    }

    #[test]
    fn coercive_implies_strongly_elliptic_on_builtins() {
        for name in BUILTIN_PROBLEMS {
            let spec = builtin_problem(name, &no_params()).unwrap();
            let report = validate(&spec, 16).unwrap();
            if report.coercive {
                assert!(report.strongly_elliptic, "{name}");
            }
        }
    }

    #[test]
    fn robin_without_volume_terms_relies_on_boundary_mass() {
        let mut p = no_params();
        p.insert("a00".into(), Complex64::new(0.0, 0.0));
        let spec = builtin_problem("robin_1d", &p).unwrap();
        let report = validate(&spec, 16).unwrap();
        assert_eq!(report.condition_one_of_three, PositivityCondition::B00PositiveMass);
    }

    #[test]
    fn neumann_without_any_mass_reports_none() {
        let mut p = no_params();
        p.insert("a00".into(), Complex64::new(0.0, 0.0));
        let spec = builtin_problem("neumann_1d", &p).unwrap();
        let report = validate(&spec, 16).unwrap();
        assert_eq!(report.condition_one_of_three, PositivityCondition::None);
        assert!(!report.notes.is_empty());
    }
}
