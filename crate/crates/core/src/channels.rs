//! Kraus-operator noise channels on the qubit and the qutrit.
//!
//! Every operator is stored already embedded in the 6-dimensional composite
//! space (`K (x) I3` for the qubit, `I2 (x) K` for the qutrit).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{pauli, ComplexMatrix};
use crate::states::{validate_density, DensityMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChannelKind {
    Dephasing,
    PhaseFlip,
    /// Bit flip on the qubit, trit flip on the qutrit.
    BitFlip,
    /// Bit-phase flip on the qubit, trit-phase flip on the qutrit.
    BitPhaseFlip,
    Depolarizing,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 5] = [
        ChannelKind::Dephasing,
        ChannelKind::PhaseFlip,
        ChannelKind::BitFlip,
        ChannelKind::BitPhaseFlip,
        ChannelKind::Depolarizing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChannelKind::Dephasing => "dephasing",
            ChannelKind::PhaseFlip => "phase-flip",
            ChannelKind::BitFlip => "bit-flip",
            ChannelKind::BitPhaseFlip => "bit-phase-flip",
            ChannelKind::Depolarizing => "depolarizing",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Locality {
    /// Independent channels on both subsystems.
    MultiLocal,
    QubitOnly,
    QutritOnly,
}

impl Locality {
    pub const ALL: [Locality; 3] = [Locality::MultiLocal, Locality::QubitOnly, Locality::QutritOnly];

    pub fn name(self) -> &'static str {
        match self {
            Locality::MultiLocal => "multi-local",
            Locality::QubitOnly => "qubit-only",
            Locality::QutritOnly => "qutrit-only",
        }
    }
}

macro_rules! named_enum_impls {
    ($ty:ty, $what:literal) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                Self::ALL
                    .iter()
                    .copied()
                    .find(|k| k.name() == s)
                    .ok_or_else(|| Error::UnknownName {
                        what: $what,
                        name: s.to_string(),
                    })
            }
        }

        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(self.name())
            }
        }
    };
}

named_enum_impls!(ChannelKind, "channel");
named_enum_impls!(Locality, "locality");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Subsystem {
    Qubit,
    Qutrit,
}

/// Kraus operators for one subsystem, embedded at 6x6.
#[derive(Debug, Clone)]
pub struct KrausSet {
    subsystem: Subsystem,
    kind: ChannelKind,
    gamma: f64,
    ops: Vec<ComplexMatrix>,
}

impl KrausSet {
    pub fn subsystem(&self) -> Subsystem {
        self.subsystem
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    /// `sum_k K_k^dagger K_k`; the identity for a trace-preserving set.
    pub fn completeness(&self) -> ComplexMatrix {
        self.ops.iter().fold(ComplexMatrix::zeros(6, 6), |acc, k| {
            &acc + &(&k.adjoint() * k)
        })
    }

    /// `sum_k K_k K_k^dagger`; the identity for a unital set.
    pub fn unitality(&self) -> ComplexMatrix {
        self.ops.iter().fold(ComplexMatrix::zeros(6, 6), |acc, k| {
            &acc + &(k * &k.adjoint())
        })
    }
}

/// Validated noise configuration for one run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseScenario {
    kind: ChannelKind,
    locality: Locality,
    gamma_a: f64,
    gamma_b: f64,
}

impl NoiseScenario {
    pub fn new(kind: ChannelKind, locality: Locality, gamma_a: f64, gamma_b: f64) -> Result<Self> {
        check_unit("gamma_a", gamma_a)?;
        check_unit("gamma_b", gamma_b)?;
        match locality {
            Locality::QubitOnly if gamma_b != 0.0 => Err(Error::InvalidScenario(format!(
                "qubit-only noise requires gamma_b = 0, got {gamma_b}"
            ))),
            Locality::QutritOnly if gamma_a != 0.0 => Err(Error::InvalidScenario(format!(
                "qutrit-only noise requires gamma_a = 0, got {gamma_a}"
            ))),
            _ => Ok(Self {
                kind,
                locality,
                gamma_a,
                gamma_b,
            }),
        }
    }

    /// Builds a scenario from raw strengths, zeroing the one the locality
    /// leaves untouched.
    pub fn with_locality(kind: ChannelKind, locality: Locality, gamma_a: f64, gamma_b: f64) -> Result<Self> {
        let (ga, gb) = match locality {
            Locality::MultiLocal => (gamma_a, gamma_b),
            Locality::QubitOnly => (gamma_a, 0.0),
            Locality::QutritOnly => (0.0, gamma_b),
        };
        Self::new(kind, locality, ga, gb)
    }

    pub fn multi_local(kind: ChannelKind, gamma_a: f64, gamma_b: f64) -> Result<Self> {
        Self::new(kind, Locality::MultiLocal, gamma_a, gamma_b)
    }

    pub fn qubit_only(kind: ChannelKind, gamma_a: f64) -> Result<Self> {
        Self::new(kind, Locality::QubitOnly, gamma_a, 0.0)
    }

    pub fn qutrit_only(kind: ChannelKind, gamma_b: f64) -> Result<Self> {
        Self::new(kind, Locality::QutritOnly, 0.0, gamma_b)
    }

    /// The identity channel.
    pub fn noiseless() -> Self {
        Self {
            kind: ChannelKind::Dephasing,
            locality: Locality::MultiLocal,
            gamma_a: 0.0,
            gamma_b: 0.0,
        }
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn locality(&self) -> Locality {
        self.locality
    }

    pub fn gamma_a(&self) -> f64 {
        self.gamma_a
    }

    pub fn gamma_b(&self) -> f64 {
        self.gamma_b
    }
}

fn check_unit(name: &'static str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::OutOfRange { name, value: v })
    }
}

/// Noise strength `1 - exp(-t * rate)` for elapsed time `t` and decay rate.
pub fn gamma_of_t(t: f64, decay_rate: f64) -> Result<f64> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::NegativeInput { name: "t", value: t });
    }
    if decay_rate.is_nan() || decay_rate < 0.0 {
        return Err(Error::NegativeInput {
            name: "decay_rate",
            value: decay_rate,
        });
    }
    if decay_rate == 0.0 || t == 0.0 {
        return Ok(0.0);
    }
    Ok((-(-t * decay_rate).exp_m1()).clamp(0.0, 1.0))
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `e^{i 2pi/3}`; its conjugate is taken from this same value.
fn omega() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / 3.0)
}

fn embed_qubit(op: &ComplexMatrix) -> ComplexMatrix {
    op.kron(&ComplexMatrix::identity(3))
}

fn embed_qutrit(op: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::identity(2).kron(op)
}

pub fn qubit_kraus(kind: ChannelKind, gamma_a: f64) -> Result<KrausSet> {
    check_unit("gamma_a", gamma_a)?;
    let g = gamma_a;
    let i2 = ComplexMatrix::identity(2);
    let [sx, sy, sz] = pauli();
    let ops = match kind {
        ChannelKind::Dephasing => vec![
            ComplexMatrix::real_diag(&[1.0, (1.0 - g).sqrt()]),
            ComplexMatrix::real_diag(&[0.0, g.sqrt()]),
        ],
        ChannelKind::PhaseFlip => vec![
            i2.scale_real((1.0 - g / 2.0).sqrt()),
            sz.scale_real((g / 2.0).sqrt()),
        ],
        ChannelKind::BitFlip => vec![
            i2.scale_real((1.0 - g / 2.0).sqrt()),
            sx.scale_real((g / 2.0).sqrt()),
        ],
        ChannelKind::BitPhaseFlip => vec![
            i2.scale_real((1.0 - g / 2.0).sqrt()),
            sy.scale_real((g / 2.0).sqrt()),
        ],
        ChannelKind::Depolarizing => {
            let w = (g / 4.0).sqrt();
            vec![
                i2.scale_real((1.0 - 3.0 * g / 4.0).sqrt()),
                sx.scale_real(w),
                sy.scale_real(w),
                sz.scale_real(w),
            ]
        }
    };
    Ok(KrausSet {
        subsystem: Subsystem::Qubit,
        kind,
        gamma: g,
        ops: ops.iter().map(embed_qubit).collect(),
    })
}

pub fn qutrit_kraus(kind: ChannelKind, gamma_b: f64) -> Result<KrausSet> {
    check_unit("gamma_b", gamma_b)?;
    let g = gamma_b;
    let w = omega();
    let wc = w.conj();
    let zero = re(0.0);
    let one = re(1.0);
    let i3 = ComplexMatrix::identity(3);
    let ops = match kind {
        ChannelKind::Dephasing => {
            let s = (1.0 - g).sqrt();
            vec![
                ComplexMatrix::real_diag(&[1.0, s, s]),
                ComplexMatrix::real_diag(&[0.0, g.sqrt(), 0.0]),
                ComplexMatrix::real_diag(&[0.0, 0.0, g.sqrt()]),
            ]
        }
        ChannelKind::PhaseFlip => {
            let s = (g / 3.0).sqrt();
            vec![
                i3.scale_real((1.0 - 2.0 * g / 3.0).sqrt()),
                ComplexMatrix::diag(&[one, wc, w]).scale_real(s),
                ComplexMatrix::diag(&[one, w, wc]).scale_real(s),
            ]
        }
        ChannelKind::BitFlip => {
            let s = (g / 3.0).sqrt();
            vec![
                i3.scale_real((1.0 - 2.0 * g / 3.0).sqrt()),
                ComplexMatrix::from_real_rows(&[[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
                    .scale_real(s),
                ComplexMatrix::from_real_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]])
                    .scale_real(s),
            ]
        }
        ChannelKind::BitPhaseFlip => {
            let s = (g / 6.0).sqrt();
            vec![
                i3.scale_real((1.0 - 2.0 * g / 3.0).sqrt()),
                ComplexMatrix::from_rows(&[[zero, zero, w], [one, zero, zero], [zero, wc, zero]])
                    .scale_real(s),
                ComplexMatrix::from_rows(&[[zero, zero, wc], [one, zero, zero], [zero, w, zero]])
                    .scale_real(s),
                ComplexMatrix::from_rows(&[[zero, wc, zero], [zero, zero, w], [one, zero, zero]])
                    .scale_real(s),
                ComplexMatrix::from_rows(&[[zero, w, zero], [zero, zero, wc], [one, zero, zero]])
                    .scale_real(s),
            ]
        }
        ChannelKind::Depolarizing => {
            // Weyl operators Y^j Z^k, (j, k) != (0, 0).
            let shift = ComplexMatrix::from_real_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]);
            let clock = ComplexMatrix::diag(&[one, w, wc]);
            let shift2 = &shift * &shift;
            let clock2 = &clock * &clock;
            let s = g.sqrt() / 3.0;
            let weyl = [
                shift.clone(),
                clock.clone(),
                shift2.clone(),
                &shift * &clock,
                &shift2 * &clock,
                &shift * &clock2,
                &shift2 * &clock2,
                clock2.clone(),
            ];
            std::iter::once(i3.scale_real((1.0 - 8.0 * g / 9.0).sqrt()))
                .chain(weyl.iter().map(|m| m.scale_real(s)))
                .collect()
        }
    };
    Ok(KrausSet {
        subsystem: Subsystem::Qutrit,
        kind,
        gamma: g,
        ops: ops.iter().map(embed_qutrit).collect(),
    })
}

/// `rho -> sum_k K_k rho K_k^dagger` without re-validating.
pub fn apply_kraus(rho: &ComplexMatrix, set: &KrausSet) -> ComplexMatrix {
    set.ops.iter().fold(ComplexMatrix::zeros(6, 6), |acc, k| {
        &acc + &(&(k * rho) * &k.adjoint())
    })
}

/// Evolves a 6x6 state through the scenario's channels: the double sum
/// `sum_ij F_j E_i rho E_i^dagger F_j^dagger` over the full operator lists.
pub fn apply_scenario(rho: &DensityMatrix, s: &NoiseScenario) -> Result<DensityMatrix> {
    if rho.dim() != 6 {
        return Err(Error::DimMismatch {
            expected: (6, 6),
            found: (rho.dim(), rho.dim()),
        });
    }
    let identity = || vec![ComplexMatrix::identity(6)];
    let qubit_ops = match s.locality {
        Locality::QutritOnly => identity(),
        _ => qubit_kraus(s.kind, s.gamma_a)?.ops,
    };
    let qutrit_ops = match s.locality {
        Locality::QubitOnly => identity(),
        _ => qutrit_kraus(s.kind, s.gamma_b)?.ops,
    };
    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(6, 6);
    for e in &qubit_ops {
        for f in &qutrit_ops {
            let k = f * e;
            out = &out + &(&(&k * m) * &k.adjoint());
        }
    }
    validate_density(out)
}
