use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::born::CurvatureCouplings;
use crate::geometry::{validate_profile, GaussianBump, RadialProfile, TabulatedProfile};
use crate::lattice::LatticeSpec;
use crate::perturbation::PerturbedGaussianSpec;
use crate::quadrature::{QuadratureOptions, Truncation};

/// What a run computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Radial-quadrature amplitudes, exact in the bump height.
    Amplitude,
    /// First-order closed-form amplitudes of a Gaussian bump.
    Sweep,
    /// Total cross sections.
    TotalXsec,
    /// Perturbed Gaussian amplitudes with the Z₁, Z₂ factors.
    Perturb,
    /// Lattice of identical Gaussian bumps.
    Lattice,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Amplitude => "amplitude",
            Command::Sweep => "sweep",
            Command::TotalXsec => "total-xsec",
            Command::Perturb => "perturb",
            Command::Lattice => "lattice",
        })
    }
}

/// A JSON run configuration. Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    pub surface: SurfaceConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub couplings: Option<CouplingsConfig>,
    pub kinematics: KinematicsConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<PerturbationConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<QuadratureConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SurfaceConfig {
    /// `δ e^{−r²/2σ²}`; give exactly one of `delta` and `eta`.
    Gaussian {
        sigma: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        delta: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        eta: Option<f64>,
    },
    /// Two-column `r,f` CSV; relative paths resolve against the config file.
    Tabulated { path: PathBuf, decay_scale: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CouplingsConfig {
    One(CouplingEntry),
    Many(Vec<CouplingEntry>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CouplingEntry {
    /// Only `"thin-layer"` is recognised.
    Named(String),
    Pair(CouplingPair),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingPair {
    pub lambda1: f64,
    pub lambda2: f64,
}

/// `k_steps` wavenumbers spaced evenly over `[k_min, k_max]`, crossed with
/// the scattering angles in `theta` (radians).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KinematicsConfig {
    pub k_min: f64,
    pub k_max: f64,
    pub k_steps: usize,
    #[serde(default)]
    pub theta: Vec<f64>,
}

/// Lengths of the perturbed Gaussian; an omitted length switches its
/// harmonic off.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerturbationConfig {
    pub epsilon: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta2: Option<f64>,
}

/// Either `a` with a named `basis` (`"triangular"`, the default, or
/// `"square"`), or explicit `a_vec` and `b_vec`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_vec: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_vec: Option<[f64; 2]>,
    pub m_range: [i32; 2],
    pub n_range: [i32; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_panels: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub envelope_threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation_radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub panel_width: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{tag}: {}", self.message)
    }
}

/// The surface a plan runs on.
#[derive(Clone)]
pub enum Surface {
    Gaussian(GaussianBump),
    Tabulated(Arc<TabulatedProfile>),
}

impl Surface {
    /// Length used for `σk` and `|f|²/σ`: the Gaussian width or the
    /// tabulated decay scale.
    pub fn sigma(&self) -> f64 {
        match self {
            Surface::Gaussian(g) => g.sigma(),
            Surface::Tabulated(t) => t.decay_scale(),
        }
    }

    pub fn profile(&self) -> &dyn RadialProfile {
        match self {
            Surface::Gaussian(g) => g,
            Surface::Tabulated(t) => t.as_ref(),
        }
    }
}

/// A validated configuration ready to run.
#[derive(Clone)]
pub struct RunPlan {
    pub command: Command,
    pub surface: Surface,
    pub couplings: Vec<CurvatureCouplings>,
    pub k_values: Vec<f64>,
    pub thetas: Vec<f64>,
    pub perturbation: Option<PerturbedGaussianSpec>,
    pub lattice: Option<LatticeSpec>,
    pub quadrature: QuadratureOptions,
    pub output: Option<PathBuf>,
}

/// Outcome of checking a configuration.
pub struct CheckReport {
    pub plan: Option<RunPlan>,
    pub diagnostics: Vec<Diagnostic>,
}

impl CheckReport {
    pub fn has_errors(&self) -> bool {
        self.diagnostics.iter().any(|d| d.severity == Severity::Error)
    }
}

impl RunConfig {
    /// Parse JSON, naming the offending key on failure.
    pub fn from_json(text: &str) -> Result<Self, String> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            if path == "." {
                e.inner().to_string()
            } else {
                format!("{path}: {}", e.inner())
            }
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Validate against `command` (falling back to the config's own
    /// `command`) and build a plan if there are no errors. Relative paths
    /// resolve against `base_dir`.
    pub fn check(&self, command: Option<Command>, base_dir: &Path) -> CheckReport {
        let mut diags = Vec::new();
        let mut error = |msg: String| {
            diags.push(Diagnostic {
                severity: Severity::Error,
                message: msg,
            })
        };

        let command = match command.or(self.command) {
            Some(c) => Some(c),
            None => {
                error("command: no command given on the command line or in the config".into());
                None
            }
        };

        let surface = match &self.surface {
            SurfaceConfig::Gaussian { sigma, delta, eta } => {
                let bump = match (delta, eta) {
                    (Some(_), Some(_)) => Err("surface: give only one of delta and eta".to_string()),
                    (None, None) => Err("surface: gaussian needs delta or eta".to_string()),
                    (Some(d), None) => GaussianBump::new(*d, *sigma).map_err(|e| format!("surface: {e}")),
                    (None, Some(h)) => GaussianBump::from_eta(*h, *sigma).map_err(|e| format!("surface: {e}")),
                };
                bump.map(Surface::Gaussian).map_err(&mut error).ok()
            }
            SurfaceConfig::Tabulated { path, decay_scale } => {
                let full = base_dir.join(path);
                match std::fs::read_to_string(&full) {
                    Err(e) => {
                        error(format!("surface.path: cannot read {}: {e}", full.display()));
                        None
                    }
                    Ok(text) => match TabulatedProfile::from_csv(&text, *decay_scale) {
                        Ok(t) => Some(Surface::Tabulated(Arc::new(t))),
                        Err(e) => {
                            error(format!("surface.path: {e}"));
                            None
                        }
                    },
                }
            }
        };

        let couplings = match &self.couplings {
            None => vec![Ok(CurvatureCouplings::THIN_LAYER)],
            Some(CouplingsConfig::One(e)) => vec![coupling(e)],
            Some(CouplingsConfig::Many(list)) if list.is_empty() => vec![Err("couplings: list is empty".to_string())],
            Some(CouplingsConfig::Many(list)) => list.iter().map(coupling).collect(),
        };
        let couplings: Vec<CurvatureCouplings> = couplings
            .into_iter()
            .filter_map(|c| c.map_err(&mut error).ok())
            .collect();

        let kin = &self.kinematics;
        if !(kin.k_min > 0.0 && kin.k_min.is_finite()) {
            error(format!("kinematics.k_min must be positive, got {}", kin.k_min));
        }
        if !(kin.k_max >= kin.k_min && kin.k_max.is_finite()) {
            error(format!("kinematics.k_max must be finite and >= k_min, got {}", kin.k_max));
        }
        if kin.k_steps == 0 {
            error("kinematics.k_steps must be at least 1".into());
        }
        if kin.theta.iter().any(|t| !t.is_finite()) {
            error("kinematics.theta: angles must be finite".into());
        }
        if command.is_some_and(|c| c != Command::TotalXsec) && kin.theta.is_empty() {
            error("kinematics.theta: at least one angle is required".into());
        }
        let k_values = linspace(kin.k_min, kin.k_max, kin.k_steps);

        let gaussian = match &surface {
            Some(Surface::Gaussian(g)) => Some(*g),
            _ => None,
        };
        if let (Some(c), Some(Surface::Tabulated(_))) = (command, &surface) {
            if matches!(c, Command::Sweep | Command::Perturb | Command::Lattice) {
                error(format!("surface: command {c} needs a gaussian surface"));
            }
        }

        let perturbation = match (&self.perturbation, gaussian) {
            (None, _) => {
                if command == Some(Command::Perturb) {
                    error("perturbation: block required by the perturb command".into());
                }
                None
            }
            (Some(p), Some(bump)) => {
                let len = |v: Option<f64>| v.unwrap_or(f64::INFINITY);
                match PerturbedGaussianSpec::new(bump, len(p.alpha1), len(p.alpha2), len(p.beta1), len(p.beta2), p.epsilon) {
                    Ok(s) => Some(s),
                    Err(e) => {
                        error(format!("perturbation: {e}"));
                        None
                    }
                }
            }
            (Some(_), None) => None,
        };

        let lattice = match &self.lattice {
            None => {
                if command == Some(Command::Lattice) {
                    error("lattice: block required by the lattice command".into());
                }
                None
            }
            Some(l) => match lattice_spec(l) {
                Ok(spec) => Some(spec),
                Err(e) => {
                    error(e);
                    None
                }
            },
        };

        let quadrature = match quadrature_options(self.quadrature.unwrap_or_default()) {
            Ok(q) => Some(q),
            Err(e) => {
                error(e);
                None
            }
        };

        // Invariant checks that do not block a run.
        let mut warn = |msg: String| {
            diags.push(Diagnostic {
                severity: Severity::Warning,
                message: msg,
            })
        };
        if let Some(s) = &surface {
            for issue in validate_profile(s.profile()) {
                warn(format!("surface: {issue}"));
            }
        }
        if let Some(p) = &perturbation {
            for issue in p.to_perturbation_spec().validate() {
                warn(format!("perturbation: {issue}"));
            }
        }
        if let (Some(l), Some(s)) = (&lattice, &surface) {
            let eta = gaussian.map(|g| g.eta());
            for issue in l.diagnostics(s.sigma(), eta) {
                warn(format!("lattice: {issue}"));
            }
        }

        let has_errors = diags.iter().any(|d| d.severity == Severity::Error);
        let plan = match (has_errors, command, surface, quadrature) {
            (false, Some(command), Some(surface), Some(quadrature)) => Some(RunPlan {
                command,
                surface,
                couplings,
                k_values,
                thetas: kin.theta.clone(),
                perturbation,
                lattice,
                quadrature,
                output: self.output.as_ref().map(|p| base_dir.join(p)),
            }),
            _ => None,
        };
        CheckReport {
            plan,
            diagnostics: diags,
        }
    }
}

fn coupling(entry: &CouplingEntry) -> Result<CurvatureCouplings, String> {
    match entry {
        CouplingEntry::Named(name) if name == "thin-layer" => Ok(CurvatureCouplings::THIN_LAYER),
        CouplingEntry::Named(name) => Err(format!("couplings: unknown preset {name:?} (known: \"thin-layer\")")),
        CouplingEntry::Pair(p) => CurvatureCouplings::new(p.lambda1, p.lambda2).map_err(|e| format!("couplings: {e}")),
    }
}

fn lattice_spec(l: &LatticeConfig) -> Result<LatticeSpec, String> {
    let m = (l.m_range[0], l.m_range[1]);
    let n = (l.n_range[0], l.n_range[1]);
    let spec = match (l.a_vec, l.b_vec, l.a, l.basis.as_deref()) {
        (Some(a), Some(b), None, None) => LatticeSpec::new(a, b, m, n),
        (None, None, Some(a), None | Some("triangular")) => LatticeSpec::triangular(a, m, n),
        (None, None, Some(a), Some("square")) => LatticeSpec::new([a, 0.0], [0.0, a], m, n),
        (None, None, Some(_), Some(other)) => {
            return Err(format!("lattice.basis: unknown basis {other:?} (known: \"triangular\", \"square\")"))
        }
        _ => return Err("lattice: give either a (with optional basis) or both a_vec and b_vec".into()),
    };
    spec.map_err(|e| format!("lattice: {e}"))
}

fn quadrature_options(q: QuadratureConfig) -> Result<QuadratureOptions, String> {
    let mut o = QuadratureOptions::default();
    if let Some(v) = q.abs_tol {
        o.abs_tol = v;
    }
    if let Some(v) = q.rel_tol {
        o.rel_tol = v;
    }
    if let Some(v) = q.max_panels {
        o.max_panels = v;
    }
    match (q.envelope_threshold, q.truncation_radius) {
        (Some(_), Some(_)) => return Err("quadrature: give only one of envelope_threshold and truncation_radius".into()),
        (Some(t), None) => o.truncation = Truncation::Envelope { threshold: t },
        (None, Some(r)) => o.truncation = Truncation::FixedRadius(r),
        (None, None) => {}
    }
    o.panel_width = q.panel_width;
    o.validate().map_err(|e| format!("quadrature: {e}"))?;
    Ok(o)
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// Built-in configurations reproducing the published figures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Preset {
    /// `|f|²/σ` against `σk` for a Gaussian bump, four angles.
    Fig1,
    /// Total cross sections for four coupling choices.
    Fig2,
    /// `Z₁` of the perturbed Gaussian, four angles.
    Fig3,
    /// `|𝔣|²/σ` of a 3×3 triangular lattice, four angles.
    Fig5,
}

impl Preset {
    pub fn config(self) -> RunConfig {
        let angles = vec![0.0, PI / 6.0, PI / 4.0, PI];
        let sigma_k = KinematicsConfig {
            k_min: 0.01,
            k_max: 4.0,
            k_steps: 400,
            theta: angles,
        };
        let gaussian = |eta: f64| SurfaceConfig::Gaussian {
            sigma: 1.0,
            delta: None,
            eta: Some(eta),
        };
        let thin = Some(CouplingsConfig::One(CouplingEntry::Named("thin-layer".into())));
        let base = RunConfig {
            command: Some(Command::Sweep),
            surface: gaussian(0.1),
            couplings: thin,
            kinematics: sigma_k.clone(),
            perturbation: None,
            lattice: None,
            quadrature: None,
            output: None,
        };
        match self {
            Preset::Fig1 => base,
            Preset::Fig2 => RunConfig {
                command: Some(Command::TotalXsec),
                couplings: Some(CouplingsConfig::Many(
                    [(0.5, -0.5), (0.5, 0.5), (0.5, 0.0), (0.0, -0.5)]
                        .map(|(lambda1, lambda2)| CouplingEntry::Pair(CouplingPair { lambda1, lambda2 }))
                        .to_vec(),
                )),
                kinematics: KinematicsConfig {
                    theta: vec![],
                    ..sigma_k
                },
                ..base
            },
            Preset::Fig3 => RunConfig {
                command: Some(Command::Perturb),
                perturbation: Some(PerturbationConfig {
                    epsilon: 0.001,
                    alpha1: Some(1.0),
                    alpha2: Some(1.0),
                    beta1: Some(1.0),
                    beta2: Some(1.0),
                }),
                ..base
            },
            Preset::Fig5 => RunConfig {
                command: Some(Command::Lattice),
                surface: gaussian(0.01),
                lattice: Some(LatticeConfig {
                    a: Some(10.0),
                    basis: Some("triangular".into()),
                    a_vec: None,
                    b_vec: None,
                    m_range: [-1, 1],
                    n_range: [-1, 1],
                }),
                ..base
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(json: &str) -> CheckReport {
        RunConfig::from_json(json).unwrap().check(None, Path::new("."))
    }

    #[test]
    fn presets_are_clean() {
        for p in [Preset::Fig1, Preset::Fig2, Preset::Fig3, Preset::Fig5] {
            let cfg = p.config();
            let report = cfg.check(None, Path::new("."));
            assert!(report.diagnostics.is_empty(), "{p:?}: {:?}", report.diagnostics);
            let back = RunConfig::from_json(&cfg.to_json()).unwrap();
            assert_eq!(back, cfg);
        }
    }

    #[test]
    fn unknown_keys_are_named() {
        let err = RunConfig::from_json(
            r#"{"surface": {"type": "gaussian", "sigma": 1, "eta": 0.1, "colour": 3},
                "kinematics": {"k_min": 1, "k_max": 2, "k_steps": 2}}"#,
        )
        .unwrap_err();
        assert!(err.contains("surface") && err.contains("colour"), "{err}");
        let err = RunConfig::from_json(r#"{"surface": {"type": "gaussian", "sigma": 1}, "kinematics": {"k_min": 1, "k_max": 2, "k_steps": 2, "extra": 1}}"#).unwrap_err();
        assert!(err.contains("kinematics") && err.contains("extra"), "{err}");
    }

    #[test]
    fn bad_values_are_named() {
        let r = check(
            r#"{"command": "sweep", "surface": {"type": "gaussian", "sigma": 1, "eta": 0.1},
                "kinematics": {"k_min": 0, "k_max": 2, "k_steps": 2, "theta": [1]}}"#,
        );
        assert!(r.has_errors() && r.plan.is_none());
        assert!(r.diagnostics.iter().any(|d| d.message.contains("k_min")));
    }

    #[test]
    fn lattice_guard_warning() {
        let r = check(
            r#"{"command": "lattice", "surface": {"type": "gaussian", "sigma": 1, "eta": 0.5},
                "kinematics": {"k_min": 1, "k_max": 2, "k_steps": 2, "theta": [1]},
                "lattice": {"a": 10, "m_range": [-1, 1], "n_range": [-1, 1]}}"#,
        );
        assert!(!r.has_errors());
        let msgs: Vec<String> = r.diagnostics.iter().map(|d| d.to_string()).collect();
        assert!(msgs.iter().any(|m| m.contains("(m₂−m₁)(n₂−n₁)η = 2 ≥ 0.1")), "{msgs:?}");
    }

    #[test]
    fn coupling_forms() {
        let base = |c: &str| {
            format!(
                r#"{{"command": "sweep", "surface": {{"type": "gaussian", "sigma": 1, "delta": 0.1}}, "couplings": {c},
                    "kinematics": {{"k_min": 1, "k_max": 1, "k_steps": 1, "theta": [0]}}}}"#
            )
        };
        let plan = check(&base(r#""thin-layer""#)).plan.unwrap();
        assert_eq!(plan.couplings, vec![CurvatureCouplings::THIN_LAYER]);
        let plan = check(&base(r#"[{"lambda1": 1, "lambda2": 2}, "thin-layer"]"#)).plan.unwrap();
        assert_eq!(plan.couplings.len(), 2);
        assert!(check(&base(r#""bogus""#)).has_errors());
    }

    #[test]
    fn grid() {
        assert_eq!(linspace(1.0, 2.0, 3), vec![1.0, 1.5, 2.0]);
        assert_eq!(linspace(1.0, 2.0, 1), vec![1.0]);
    }
}
