//! One-variable profile functions `F(r)` used by the solution families.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// A named built-in profile together with its first two derivatives.
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileFunction {
    /// `F(r) = c`.
    Constant(f64),
    /// `F(r) = slope * r + intercept`.
    Linear { slope: f64, intercept: f64 },
    /// `F(r) = sum_i coeffs[i] * r^i`.
    Polynomial(Vec<f64>),
    /// `F(r) = amp * sin(freq * r + phase)`.
    Sin { amp: f64, freq: f64, phase: f64 },
    /// `F(r) = amp * cos(freq * r + phase)`.
    Cos { amp: f64, freq: f64, phase: f64 },
}

/// Value and first two derivatives of a profile at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileJet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl ProfileFunction {
    pub fn sin() -> Self {
        ProfileFunction::Sin { amp: 1.0, freq: 1.0, phase: 0.0 }
    }

    pub fn cos() -> Self {
        ProfileFunction::Cos { amp: 1.0, freq: 1.0, phase: 0.0 }
    }

    pub fn zero() -> Self {
        ProfileFunction::Constant(0.0)
    }

    pub fn eval(&self, r: f64) -> ProfileJet {
        match self {
            ProfileFunction::Constant(c) => ProfileJet { value: *c, d1: 0.0, d2: 0.0 },
            ProfileFunction::Linear { slope, intercept } => ProfileJet {
                value: slope * r + intercept,
                d1: *slope,
                d2: 0.0,
            },
            ProfileFunction::Polynomial(coeffs) => {
                // Horner for the value and both derivatives at once.
                let (mut v, mut d1, mut d2) = (0.0, 0.0, 0.0);
                for &c in coeffs.iter().rev() {
                    d2 = d2 * r + 2.0 * d1;
                    d1 = d1 * r + v;
                    v = v * r + c;
                }
                ProfileJet { value: v, d1, d2 }
            }
            ProfileFunction::Sin { amp, freq, phase } => {
                let (s, c) = (freq * r + phase).sin_cos();
                ProfileJet {
                    value: amp * s,
                    d1: amp * freq * c,
                    d2: -amp * freq * freq * s,
                }
            }
            ProfileFunction::Cos { amp, freq, phase } => {
                let (s, c) = (freq * r + phase).sin_cos();
                ProfileJet {
                    value: amp * c,
                    d1: -amp * freq * s,
                    d2: -amp * freq * freq * c,
                }
            }
        }
    }

    pub fn value(&self, r: f64) -> f64 {
        self.eval(r).value
    }

    /// `sup |F'|` over the real line, when it is finite and known in closed form.
    pub fn sup_abs_derivative(&self) -> Option<f64> {
        match self {
            ProfileFunction::Constant(_) => Some(0.0),
            ProfileFunction::Linear { slope, .. } => Some(slope.abs()),
            ProfileFunction::Polynomial(c) => match c.len() {
                0 | 1 => Some(0.0),
                2 => Some(c[1].abs()),
                _ if c[2..].iter().all(|&x| x == 0.0) => Some(c[1].abs()),
                _ => None,
            },
            ProfileFunction::Sin { amp, freq, .. } | ProfileFunction::Cos { amp, freq, .. } => {
                Some((amp * freq).abs())
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ProfileFunction::Constant(_) => "const",
            ProfileFunction::Linear { .. } => "linear",
            ProfileFunction::Polynomial(_) => "poly",
            ProfileFunction::Sin { .. } => "sin",
            ProfileFunction::Cos { .. } => "cos",
        }
    }
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(",")
}

impl fmt::Display for ProfileFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileFunction::Constant(c) => write!(f, "const:{c:?}"),
            ProfileFunction::Linear { slope, intercept } => {
                write!(f, "linear:{}", join(&[*slope, *intercept]))
            }
            ProfileFunction::Polynomial(c) => write!(f, "poly:{}", join(c)),
            ProfileFunction::Sin { amp, freq, phase } => {
                write!(f, "sin:{}", join(&[*amp, *freq, *phase]))
            }
            ProfileFunction::Cos { amp, freq, phase } => {
                write!(f, "cos:{}", join(&[*amp, *freq, *phase]))
            }
        }
    }
}

/// Parses `kind[:p1,p2,...]`:
///
/// | spec                      | profile                         |
/// |---------------------------|---------------------------------|
/// | `const:c`                 | `c`                             |
/// | `linear:slope,intercept`  | `slope*r + intercept`           |
/// | `poly:c0,c1,...`          | `c0 + c1 r + ...`               |
/// | `sin[:amp[,freq[,phase]]]`| `amp sin(freq r + phase)`       |
/// | `cos[:amp[,freq[,phase]]]`| `amp cos(freq r + phase)`       |
/// | `zero`                    | `0`                             |
impl FromStr for ProfileFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = match s.split_once(':') {
            Some((k, r)) => (k.trim(), Some(r)),
            None => (s.trim(), None),
        };
        let params: Vec<f64> = match rest {
            None => Vec::new(),
            Some(r) if r.trim().is_empty() => Vec::new(),
            Some(r) => r
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite())
                        .ok_or_else(|| Error::InvalidArgument(format!("bad profile parameter {p:?} in {s:?}")))
                })
                .collect::<Result<_>>()?,
        };
        let bad = |msg: &str| Error::InvalidArgument(format!("profile {s:?}: {msg}"));
        match kind {
            "zero" if params.is_empty() => Ok(ProfileFunction::zero()),
            "const" => match params[..] {
                [c] => Ok(ProfileFunction::Constant(c)),
                _ => Err(bad("expected const:c")),
            },
            "linear" => match params[..] {
                [slope, intercept] => Ok(ProfileFunction::Linear { slope, intercept }),
                [slope] => Ok(ProfileFunction::Linear { slope, intercept: 0.0 }),
                _ => Err(bad("expected linear:slope,intercept")),
            },
            "poly" if !params.is_empty() => Ok(ProfileFunction::Polynomial(params)),
            "poly" => Err(bad("expected at least one coefficient")),
            "sin" | "cos" => {
                if params.len() > 3 {
                    return Err(bad("expected at most amp,freq,phase"));
                }
                let amp = params.first().copied().unwrap_or(1.0);
                let freq = params.get(1).copied().unwrap_or(1.0);
                let phase = params.get(2).copied().unwrap_or(0.0);
                Ok(if kind == "sin" {
                    ProfileFunction::Sin { amp, freq, phase }
                } else {
                    ProfileFunction::Cos { amp, freq, phase }
                })
            }
            _ => Err(bad("unknown profile kind")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd_check(p: &ProfileFunction, r: f64) {
        let h = 1e-4;
        let j = p.eval(r);
        let d1 = (p.value(r + h) - p.value(r - h)) / (2.0 * h);
        let d2 = (p.value(r + h) - 2.0 * j.value + p.value(r - h)) / (h * h);
        assert!((d1 - j.d1).abs() < 1e-6 * (1.0 + j.d1.abs()), "{p}: d1 {d1} vs {}", j.d1);
        assert!((d2 - j.d2).abs() < 1e-4 * (1.0 + j.d2.abs()), "{p}: d2 {d2} vs {}", j.d2);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let profiles = [
            ProfileFunction::Constant(7.0),
            ProfileFunction::Linear { slope: -2.0, intercept: 0.5 },
            ProfileFunction::Polynomial(vec![1.0, -2.0, 0.5, 0.25]),
            ProfileFunction::Sin { amp: 1.5, freq: 2.0, phase: 0.3 },
            ProfileFunction::cos(),
        ];
        for p in &profiles {
            for r in [-1.3, 0.0, 0.7, 2.1] {
                fd_check(p, r);
            }
        }
    }

    #[test]
    fn polynomial_horner() {
        let p = ProfileFunction::Polynomial(vec![0.0, 0.0, 0.5]);
        assert_eq!(p.eval(2.0), ProfileJet { value: 2.0, d1: 2.0, d2: 1.0 });
    }

    #[test]
    fn parse_round_trip() {
        for s in ["sin", "cos:2,3", "const:1.5", "linear:2,-1", "poly:0,0,0.5", "zero"] {
            let p: ProfileFunction = s.parse().unwrap();
            let again: ProfileFunction = p.to_string().parse().unwrap();
            assert_eq!(p, again, "{s}");
        }
        assert!("tan".parse::<ProfileFunction>().is_err());
        assert!("const".parse::<ProfileFunction>().is_err());
        assert!("poly:1,x".parse::<ProfileFunction>().is_err());
    }

    #[test]
    fn sup_derivative() {
        assert_eq!(ProfileFunction::sin().sup_abs_derivative(), Some(1.0));
        assert_eq!(ProfileFunction::Polynomial(vec![0.0, 0.0, 1.0]).sup_abs_derivative(), None);
        assert_eq!(ProfileFunction::Constant(3.0).sup_abs_derivative(), Some(0.0));
    }
}
