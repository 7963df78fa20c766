use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::scalar::{Real, Scalar};

/// One row of a user-supplied sequence table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Scalar + Serialize",
    deserialize = "T: Scalar + Deserialize<'de>"
))]
pub struct TableEntry<T> {
    pub k: u64,
    pub point: Vector<T>,
}

/// Parametric sequence families in `R^d`, indexed from `k = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[serde(bound(
    serialize = "T: Scalar + Serialize",
    deserialize = "T: Scalar + Deserialize<'de>"
))]
pub enum SequenceSpec<T> {
    /// `limit + coefficient * k^(-exponent) * direction`
    ConvergentPower {
        limit: Vector<T>,
        direction: Vector<T>,
        coefficient: T,
        exponent: T,
    },
    /// `k * direction`
    DivergentLinear {
        direction: Vector<T>,
    },
    /// `center + (-1)^k * amplitude * direction`
    Oscillating {
        center: Vector<T>,
        direction: Vector<T>,
        amplitude: T,
    },
    Constant {
        value: Vector<T>,
    },
    /// Finite table with strictly increasing `k`.
    Custom {
        table: Vec<TableEntry<T>>,
    },
}

/// How the scalar factor `phi(k)` in `x_k = base + phi(k) * direction` behaves.
#[derive(Debug, Clone, PartialEq)]
pub enum Profile<T> {
    /// `coefficient * k^(-exponent)`, tends to zero.
    Vanishing { coefficient: T, exponent: T },
    /// `k`, grows without bound.
    Linear,
    /// `(-1)^k * amplitude`.
    Alternating { amplitude: T },
    /// No moving part.
    Still,
}

/// `x_k = base + phi(k) * direction` for the closed-form kinds.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedForm<T> {
    pub base: Vector<T>,
    pub direction: Option<Vector<T>>,
    pub profile: Profile<T>,
}

impl<T: Real> ClosedForm<T> {
    pub fn phi(&self, k: u64) -> T {
        let kf = T::from_u64(k).unwrap_or_else(T::max_value);
        match &self.profile {
            Profile::Vanishing {
                coefficient,
                exponent,
            } => *coefficient * kf.powf(-*exponent),
            Profile::Linear => kf,
            Profile::Alternating { amplitude } => {
                if k.is_multiple_of(2) {
                    *amplitude
                } else {
                    -*amplitude
                }
            }
            Profile::Still => T::zero(),
        }
    }

    pub fn at(&self, k: u64) -> Vector<T> {
        match &self.direction {
            Some(v) => self.base.axpy(&self.phi(k), v),
            None => self.base.clone(),
        }
    }

    /// Whether `phi` is not identically zero.
    pub fn moves(&self) -> bool {
        self.direction.is_some()
            && match &self.profile {
                Profile::Vanishing { coefficient, .. } => !coefficient.is_zero(),
                Profile::Linear => true,
                Profile::Alternating { amplitude } => !amplitude.is_zero(),
                Profile::Still => false,
            }
    }

    /// `sup_k |phi(k)|` when finite.
    pub fn phi_bound(&self) -> Option<T> {
        match &self.profile {
            Profile::Vanishing { coefficient, .. } => Some(coefficient.abs()),
            Profile::Linear => None,
            Profile::Alternating { amplitude } => Some(amplitude.abs()),
            Profile::Still => Some(T::zero()),
        }
    }
}

impl<T: Real> SequenceSpec<T> {
    pub fn dim(&self) -> Option<usize> {
        match self {
            SequenceSpec::ConvergentPower { limit, .. } => Some(limit.dim()),
            SequenceSpec::DivergentLinear { direction } => Some(direction.dim()),
            SequenceSpec::Oscillating { center, .. } => Some(center.dim()),
            SequenceSpec::Constant { value } => Some(value.dim()),
            SequenceSpec::Custom { table } => table.first().map(|e| e.point.dim()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidSequence(msg.to_string()));
        let same = |a: &Vector<T>, b: &Vector<T>| {
            if a.dim() == b.dim() {
                Ok(())
            } else {
                Err(Error::DimensionMismatch {
                    expected: a.dim(),
                    actual: b.dim(),
                })
            }
        };
        match self {
            SequenceSpec::ConvergentPower {
                limit,
                direction,
                exponent,
                ..
            } => {
                same(limit, direction)?;
                if direction.is_zero() {
                    return bad("direction must be nonzero");
                }
                if exponent.partial_cmp(&T::zero()) != Some(Ordering::Greater) {
                    return bad("exponent must be positive");
                }
            }
            SequenceSpec::DivergentLinear { direction } => {
                if direction.is_zero() {
                    return bad("direction must be nonzero");
                }
            }
            SequenceSpec::Oscillating {
                center, direction, ..
            } => {
                same(center, direction)?;
                if direction.is_zero() {
                    return bad("direction must be nonzero");
                }
            }
            SequenceSpec::Constant { .. } => {}
            SequenceSpec::Custom { table } => {
                let Some(first) = table.first() else {
                    return bad("table is empty");
                };
                if first.k == 0 {
                    return bad("sequences are indexed from k = 1");
                }
                for w in table.windows(2) {
                    if w[0].k >= w[1].k {
                        return bad("table indices must be strictly increasing");
                    }
                    same(&w[0].point, &w[1].point)?;
                }
            }
        }
        Ok(())
    }

    pub fn closed_form(&self) -> Option<ClosedForm<T>> {
        Some(match self {
            SequenceSpec::ConvergentPower {
                limit,
                direction,
                coefficient,
                exponent,
            } => ClosedForm {
                base: limit.clone(),
                direction: Some(direction.clone()),
                profile: Profile::Vanishing {
                    coefficient: *coefficient,
                    exponent: *exponent,
                },
            },
            SequenceSpec::DivergentLinear { direction } => ClosedForm {
                base: Vector::zeros(direction.dim()),
                direction: Some(direction.clone()),
                profile: Profile::Linear,
            },
            SequenceSpec::Oscillating {
                center,
                direction,
                amplitude,
            } => ClosedForm {
                base: center.clone(),
                direction: Some(direction.clone()),
                profile: Profile::Alternating {
                    amplitude: *amplitude,
                },
            },
            SequenceSpec::Constant { value } => ClosedForm {
                base: value.clone(),
                direction: None,
                profile: Profile::Still,
            },
            SequenceSpec::Custom { .. } => return None,
        })
    }

    /// The limit in `R^d` for kinds that converge by construction.
    pub fn known_limit(&self) -> Option<&Vector<T>> {
        match self {
            SequenceSpec::ConvergentPower { limit, .. } => Some(limit),
            SequenceSpec::Constant { value } => Some(value),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            SequenceSpec::ConvergentPower { .. } => "convergent_power",
            SequenceSpec::DivergentLinear { .. } => "divergent_linear",
            SequenceSpec::Oscillating { .. } => "oscillating",
            SequenceSpec::Constant { .. } => "constant",
            SequenceSpec::Custom { .. } => "custom",
        }
    }
}

/// `x_k`, exactly from the closed form or by table lookup.
pub fn eval_sequence<T: Real>(spec: &SequenceSpec<T>, k: u64) -> Result<Vector<T>> {
    spec.validate()?;
    if k == 0 {
        return Err(Error::SequenceIndex { k });
    }
    match spec {
        SequenceSpec::Custom { table } => table
            .binary_search_by_key(&k, |e| e.k)
            .map(|i| table[i].point.clone())
            .map_err(|_| Error::SequenceIndex { k }),
        _ => Ok(spec.closed_form().expect("closed-form kind").at(k)),
    }
}
