//! Parameter sweeps producing report tables.

use num_complex::Complex64;

use crate::error::Result;
use crate::inequalities::{certify_on_grid, CheckConfig, CheckReport, InequalityId, Subject};
use crate::lab::generate::{generate, GeneratorSpec};
use crate::lab::probe::{Family, ParameterGrid};
use crate::poly::ComplexPolynomial;

/// Where the swept polynomial of each degree comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepSource {
    Family { family: Family, lambda: Complex64 },
    /// The generator degree is replaced by each grid degree; the seed is kept.
    Generated(GeneratorSpec),
}

impl SweepSource {
    pub fn polynomial(&self, n: usize) -> Result<ComplexPolynomial> {
        match self {
            SweepSource::Family { family, lambda } => Ok(family.polynomial(n, *lambda)),
            SweepSource::Generated(spec) => generate(&GeneratorSpec { degree: n, ..*spec }),
        }
    }
}

/// Reports over the Cartesian grid, rows ordered lexicographically by the
/// grid indices `(R, α, β, a, n)` and then by radius. Pair inequalities
/// compare each polynomial with itself.
pub fn sweep(
    ineq: InequalityId,
    grid: &ParameterGrid,
    source: &SweepSource,
    cfg: &CheckConfig,
) -> Result<Vec<CheckReport>> {
    let mut rows = Vec::new();
    for (params, n) in grid.points()? {
        let p = source.polynomial(n)?;
        let subject = if ineq.needs_dominant() {
            Subject::Pair { p: &p, dominant: &p }
        } else {
            Subject::Single(&p)
        };
        rows.extend(certify_on_grid(ineq, subject, &params, cfg)?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::generate::ZeroRegion;
    use crate::operators::ParameterSet;
    use crate::poly::{ONE, ZERO};

    fn singleton() -> ParameterGrid {
        ParameterGrid {
            dilation: vec![2.0],
            alpha: vec![Complex64::new(0.3, 0.0)],
            beta: vec![Complex64::new(0.7, 0.0)],
            a: vec![Complex64::new(0.4, 0.0)],
            degrees: vec![4],
            radius_grid: vec![1.0, 2.0],
            k: 1.0,
        }
    }

    #[test]
    fn singleton_grid_matches_certification() {
        let spec = GeneratorSpec::new(4, ZeroRegion::Anywhere, 8);
        let rows = sweep(InequalityId::M3, &singleton(), &SweepSource::Generated(spec), &CheckConfig::default())
            .unwrap();
        let p = generate(&spec).unwrap();
        let params = ParameterSet::new(
            2.0,
            Complex64::new(0.3, 0.0),
            Complex64::new(0.7, 0.0),
            Complex64::new(0.4, 0.0),
            1.0,
            vec![1.0, 2.0],
        )
        .unwrap();
        let direct = certify_on_grid(InequalityId::M3, &p, &params, &CheckConfig::default()).unwrap();
        assert_eq!(rows, direct);
    }

    #[test]
    fn equality_family_over_dilations() {
        let grid = ParameterGrid { dilation: vec![1.0, 2.0], radius_grid: vec![1.0], ..singleton() };
        let source = SweepSource::Family { family: Family::LambdaZn, lambda: Complex64::new(0.5, 0.5) };
        let rows = sweep(InequalityId::M1, &grid, &source, &CheckConfig::default()).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].params.dilation, 1.0);
        for row in rows {
            assert!(row.relative_margin.abs() <= 1e-10, "{row:?}");
        }
    }

    #[test]
    fn degree_grid_on_l4_gives_rhs_n() {
        let grid = ParameterGrid {
            degrees: (1..=6).collect(),
            a: vec![ZERO],
            radius_grid: vec![1.0],
            ..ParameterGrid::default()
        };
        let source = SweepSource::Family { family: Family::LambdaZn, lambda: ONE };
        let rows = sweep(InequalityId::L4, &grid, &source, &CheckConfig::default()).unwrap();
        for (n, row) in (1..=6).zip(&rows) {
            assert!((row.rhs - n as f64).abs() <= 1e-9 * n as f64, "{n}: {row:?}");
        }
    }
}
