use rug::ops::Pow;
use rug::Float;

use super::{hurwitz_zeta_series, ZetaArgs};
use crate::error::{Error, Result};
use crate::mpcore::{CompensatedSum, EvalConfig, SumReport, Tolerance};

/// Integer coefficients `c(1), …, c(m)` of period `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicCoefficients {
    values: Vec<i64>,
}

impl PeriodicCoefficients {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("a periodic table needs at least one value"));
        }
        if u32::try_from(values.len()).is_err() {
            return Err(Error::domain("period too large"));
        }
        Ok(PeriodicCoefficients { values })
    }

    pub fn modulus(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `c(k)` for any `k ≥ 1`.
    pub fn at(&self, k: u64) -> i64 {
        let m = self.values.len() as u64;
        self.values[((k + m - 1) % m) as usize]
    }

    /// Pointwise sum; the periods must match.
    pub fn add(&self, other: &PeriodicCoefficients) -> Result<PeriodicCoefficients> {
        if self.values.len() != other.values.len() {
            return Err(Error::domain(format!(
                "periods differ: {} and {}",
                self.values.len(),
                other.values.len()
            )));
        }
        let values = self.values.iter().zip(&other.values).map(|(x, y)| x + y).collect();
        PeriodicCoefficients::new(values)
    }
}

/// A real Dirichlet character modulo `m`, given by its table `χ(1..=m)`.
///
/// Invariants: values in `{-1, 0, 1}`; `χ(k) = 0` exactly when
/// `gcd(k, m) > 1`; `χ(jk) = χ(j)χ(k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletCharacter {
    table: PeriodicCoefficients,
    principal: bool,
}

impl DirichletCharacter {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        let table = PeriodicCoefficients::new(values)?;
        let m = u64::from(table.modulus());
        for k in 1..=m {
            let v = table.at(k);
            if !(-1..=1).contains(&v) {
                return Err(Error::InvalidCharacter(format!("chi({k}) = {v} is not in {{-1, 0, 1}}")));
            }
            let coprime = gcd(k, m) == 1;
            if coprime == (v == 0) {
                return Err(Error::InvalidCharacter(format!(
                    "chi({k}) = {v} but gcd({k}, {m}) = {}",
                    gcd(k, m)
                )));
            }
        }
        for j in 1..=m {
            for k in j..=m {
                if table.at(j * k) != table.at(j) * table.at(k) {
                    return Err(Error::InvalidCharacter(format!(
                        "chi({}) != chi({j}) chi({k})",
                        j * k
                    )));
                }
            }
        }
        let principal = (1..=m).all(|k| table.at(k) >= 0);
        Ok(DirichletCharacter { table, principal })
    }

    /// The principal character modulo `m`.
    pub fn principal(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::domain("modulus must be positive"));
        }
        let m = u64::from(m);
        DirichletCharacter::new((1..=m).map(|k| i64::from(gcd(k, m) == 1)).collect())
    }

    pub fn modulus(&self) -> u32 {
        self.table.modulus()
    }

    pub fn is_principal(&self) -> bool {
        self.principal
    }

    pub fn value(&self, k: u64) -> i64 {
        self.table.at(k)
    }

    pub fn coefficients(&self) -> &PeriodicCoefficients {
        &self.table
    }
}

fn gcd(mut x: u64, mut y: u64) -> u64 {
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

/// `L(s, χ) = m^{-s} Σ_{k=1}^{m} χ(k) ζ(s, k/m)` for `s > 1`.
pub fn dirichlet_l(s: &Float, chi: &DirichletCharacter, tol: &Tolerance, cfg: &EvalConfig) -> Result<SumReport> {
    periodic_l(s, chi.coefficients(), tol, cfg)
}

/// `Σ_{n≥1} c(n) n^{-s} = m^{-s} Σ_{k=1}^{m} c(k) ζ(s, k/m)` for `s > 1`.
///
/// Each Hurwitz value gets an equal share of the error budget.
pub fn periodic_l(s: &Float, coeffs: &PeriodicCoefficients, tol: &Tolerance, cfg: &EvalConfig) -> Result<SumReport> {
    let bits = cfg.prec.bits();
    let s = cfg.prec.float(s);
    super::check_s(&s)?;
    let m = coeffs.modulus();
    let weight: u64 = coeffs.values().iter().map(|c| c.unsigned_abs()).sum();
    let scale = Float::with_val(bits, Float::with_val(bits, m).pow(&Float::with_val(bits, -&s)));
    if weight == 0 {
        return Ok(SumReport::exact(Float::new(bits)));
    }
    let component = tol.divided_by(&Float::with_val(bits, &scale * (2 * weight)));

    let mut acc = CompensatedSum::new(bits);
    let mut bound = Float::new(bits);
    let mut outer_terms = 0;
    let mut inner_terms = 0;
    let mut slowest = 0.0f64;
    for (k, &c) in (1u64..).zip(coeffs.values()) {
        if c == 0 {
            continue;
        }
        let a = Float::with_val(bits, k) / m;
        let z = hurwitz_zeta_series(&ZetaArgs::new(s.clone(), a)?, &component, cfg)?;
        acc.add(&Float::with_val(bits, &z.value * c));
        bound += Float::with_val(bits, &z.error_bound * c.unsigned_abs());
        outer_terms += z.outer_terms;
        inner_terms += z.inner_terms_total;
        slowest = slowest.max(z.decay_ratio);
    }
    Ok(SumReport {
        value: acc.value() * &scale,
        error_bound: bound * &scale,
        outer_terms,
        inner_terms_total: inner_terms,
        decay_ratio: slowest,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn character_validation() {
        assert!(DirichletCharacter::new(vec![1, 0, -1, 0]).is_ok());
        assert!(!DirichletCharacter::new(vec![1, 0, -1, 0]).unwrap().is_principal());
        assert!(DirichletCharacter::new(vec![1, 0]).unwrap().is_principal());
        assert!(DirichletCharacter::new(vec![1]).unwrap().is_principal());
        // values outside {-1,0,1}
        assert!(DirichletCharacter::new(vec![2, 0]).is_err());
        // nonzero at a non-unit
        assert!(DirichletCharacter::new(vec![1, 1, -1, 0]).is_err());
        // zero at a unit
        assert!(DirichletCharacter::new(vec![1, 0, 0, 0]).is_err());
        // not multiplicative: chi(2)chi(2) = 1 but chi(4) = -1
        assert!(DirichletCharacter::new(vec![1, 1, 1, -1, 0]).is_err());
        // Legendre symbol mod 5
        assert!(DirichletCharacter::new(vec![1, -1, -1, 1, 0]).is_ok());
    }

    #[test]
    fn principal_tables() {
        let chi = DirichletCharacter::principal(6).unwrap();
        assert_eq!(chi.coefficients().values(), &[1, 0, 0, 0, 1, 0]);
        assert!(chi.is_principal());
        assert_eq!(chi.value(7), 1);
        assert_eq!(chi.value(12), 0);
        assert!(DirichletCharacter::principal(0).is_err());
    }

    #[test]
    fn catalan_constant() {
        let cfg = EvalConfig::default();
        let tol = Tolerance::from_f64(1e-12).unwrap();
        let chi = DirichletCharacter::new(vec![1, 0, -1, 0]).unwrap();
        let r = dirichlet_l(&cfg.prec.float(2), &chi, &tol, &cfg).unwrap();
        assert!((r.value.to_f64() - 0.915_965_594_177_219).abs() < 1e-12);
        assert!(r.error_bound <= 1e-12);
    }

    #[test]
    fn mismatched_periods_do_not_add() {
        let x = PeriodicCoefficients::new(vec![1, 0]).unwrap();
        let y = PeriodicCoefficients::new(vec![1, 0, 1]).unwrap();
        assert!(x.add(&y).is_err());
        assert_eq!(x.add(&x).unwrap().values(), &[2, 0]);
    }
}
