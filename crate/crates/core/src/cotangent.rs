//! The cotangent complex of a presentation, realized as the
//! conformal-weight-one subcomplex of its level-1 arc algebra, and the
//! bounded-range weak-smoothness check built on it.
//!
//! Conformal homogeneity of the arc differential makes the weight-one span a
//! subcomplex for free; its basis monomials carry exactly one jet-index-1
//! factor. Homotopy groups of the complex are queried column by column, so
//! the check certifies or refutes weak smoothness only inside the stated
//! range.

use crate::arcs::{arc_presentation, ArcPresentation};
use crate::error::{Error, Result};
use crate::gradedalg::{GenId, Monomial, Polynomial, Presentation, Weighting};
use crate::homology::{cohomology_dim, witness_class, ColumnRange, PiEntry};
use crate::scalar::{FieldScalar, Scalar};
use crate::Rat;

/// The weight-one subcomplex of the level-1 arc presentation.
#[derive(Clone, Debug)]
pub struct CotangentComplex<C = Rat> {
    arc1: ArcPresentation<C>,
}

impl<C: Scalar> CotangentComplex<C> {
    pub fn arc(&self) -> &ArcPresentation<C> {
        &self.arc1
    }

    pub fn presentation(&self) -> &Presentation<C> {
        self.arc1.presentation()
    }

    /// Basis of the degree-`d` piece of the complex in the selected column.
    pub fn basis(&self, d: i32, weighting: &Weighting) -> Result<Vec<Monomial>> {
        self.presentation().bidegree_basis(d, 1, weighting)
    }

    /// `dim pi_i` of the cotangent complex in one column.
    pub fn pi_dim(&self, i: u32, weighting: &Weighting) -> Result<usize> {
        cohomology_dim(self.presentation(), i, 1, weighting)
    }
}

/// Builds the cotangent complex of a validated presentation.
pub fn cotangent_complex<C: Scalar>(base: &Presentation<C>) -> Result<CotangentComplex<C>> {
    Ok(CotangentComplex {
        arc1: arc_presentation(base, 1)?,
    })
}

/// Result of scanning the cotangent complex for higher homotopy over a
/// range of columns.
#[derive(Clone, Debug)]
pub struct WeakSmoothness<C = Rat> {
    pub complex: CotangentComplex<C>,
    pub range: ColumnRange,
    /// Every computed `dim pi_i`, `i >= 1`, at conformal weight one.
    pub entries: Vec<PiEntry>,
    /// First nonzero class found, if any.
    pub witness: Option<(PiEntry, Polynomial<C>)>,
}

impl<C: Scalar> WeakSmoothness<C> {
    pub fn weakly_smooth_in_range(&self) -> bool {
        self.witness.is_none()
    }
}

/// Computes `dim pi_i` of the cotangent complex for every column in the
/// range and every `i` up to the column bound, returning the first nonzero
/// witness class when weak smoothness fails.
pub fn weakly_smooth_check<C: FieldScalar>(
    base: &Presentation<C>,
    range: ColumnRange,
) -> Result<WeakSmoothness<C>> {
    let complex = cotangent_complex(base)?;
    let pres = complex.presentation();
    let mut entries = Vec::new();
    let mut witness = None;
    for weighting in range.weightings() {
        let buckets = pres.column_bases(1, &weighting)?;
        let i_max = buckets
            .keys()
            .filter(|&&d| d < 0)
            .map(|&d| (-d) as u32)
            .max()
            .unwrap_or(0);
        for i in 1..=i_max {
            let dim = cohomology_dim(pres, i, 1, &weighting)?;
            let entry = PiEntry {
                i,
                w: 1,
                weighting,
                dim,
            };
            if dim > 0 && witness.is_none() {
                let class = witness_class(pres, i, 1, &weighting)?
                    .ok_or_else(|| Error::Internal("nonzero dimension without witness".into()))?;
                witness = Some((entry, class));
            }
            entries.push(entry);
        }
    }
    Ok(WeakSmoothness {
        complex,
        range,
        entries,
        witness,
    })
}

/// The symbolic Jacobian of a classical complete-intersection presentation:
/// one row per relation (odd generator), one column per coordinate (even
/// generator), entries rendered in the jet-0 variables.
#[derive(Clone, Debug)]
pub struct JacobianMatrix<C = Rat> {
    pub arc0: ArcPresentation<C>,
    /// Odd base generators, ascending.
    pub rows: Vec<GenId>,
    /// Even base generators, ascending.
    pub cols: Vec<GenId>,
    /// `entries[r][c]` is the partial derivative of relation `r` by
    /// coordinate `c`, over [`ArcPresentation::presentation`] of `arc0`.
    pub entries: Vec<Vec<Polynomial<C>>>,
}

/// Formal partial derivatives of the relations of a classical
/// complete-intersection presentation. Rejects non-ci input.
pub fn jacobian<C: Scalar>(base: &Presentation<C>) -> Result<JacobianMatrix<C>> {
    base.validated()?;
    for g in base.generators() {
        if g.coh_degree() < -1 {
            return Err(Error::NotClassicalInput(format!(
                "generator {} sits in degree {}",
                g.display_name(),
                g.coh_degree()
            )));
        }
    }
    let arc0 = arc_presentation(base, 0)?;
    let jet0: Vec<GenId> = base
        .gen_ids()
        .map(|g| arc0.jet(g, 0).expect("every base generator has a jet"))
        .collect();
    let rows: Vec<GenId> = base
        .gen_ids()
        .filter(|&g| base.generator(g).coh_degree() == -1)
        .collect();
    let cols: Vec<GenId> = base
        .gen_ids()
        .filter(|&g| base.generator(g).coh_degree() == 0)
        .collect();
    let mut entries = Vec::with_capacity(rows.len());
    for &r in &rows {
        let f = base.diff(r);
        let mut row = Vec::with_capacity(cols.len());
        for &c in &cols {
            let d = base.partial_derivative(f, c)?;
            row.push(d.map_generators(|g| jet0[g.0 as usize]));
        }
        entries.push(row);
    }
    Ok(JacobianMatrix {
        arc0,
        rows,
        cols,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::rat;

    #[test]
    fn fat_point_weight_one_differential() {
        let complex = cotangent_complex(&presets::fat_point()).unwrap();
        let p = complex.presentation();
        let z1 = p.find("zeta", Some(1)).unwrap();
        assert_eq!(p.polynomial_string(p.diff(z1)), "2*x_0*x_1");
        // the weight-one span is closed under the differential
        for iw in 0..=5 {
            for (_, bucket) in p.column_bases(1, &Weighting::Internal(iw)).unwrap() {
                for m in bucket {
                    let dm = p.differentiate(&Polynomial::single(m, rat(1))).unwrap();
                    for (t, _) in dm.terms() {
                        assert_eq!(p.monomial_conformal_weight(t), 1);
                    }
                }
            }
        }
    }

    #[test]
    fn smooth_line_complex_is_concentrated_in_degree_zero() {
        let complex = cotangent_complex(&presets::smooth_line()).unwrap();
        for iw in 0..=4 {
            assert!(complex
                .basis(-1, &Weighting::Internal(iw))
                .unwrap()
                .is_empty());
        }
        let basis = complex.basis(0, &Weighting::Internal(1)).unwrap();
        assert_eq!(basis.len(), 1);
        let p = complex.presentation();
        assert!(p.diff(p.find("x", Some(1)).unwrap()).is_zero());
    }

    #[test]
    fn node_weight_one_differential_encodes_the_jacobian_row() {
        let complex = cotangent_complex(&presets::node()).unwrap();
        let p = complex.presentation();
        let z1 = p.find("zeta", Some(1)).unwrap();
        assert_eq!(
            p.polynomial_string(p.diff(z1)),
            "x_0*y_1 + x_1*y_0 - 2*z_0*z_1"
        );
    }

    #[test]
    fn jacobian_entries() {
        let jac = jacobian(&presets::fat_point()).unwrap();
        let p = jac.arc0.presentation();
        assert_eq!(p.polynomial_string(&jac.entries[0][0]), "2*x_0");

        let jac = jacobian(&presets::node()).unwrap();
        let p = jac.arc0.presentation();
        let rendered: Vec<String> = jac.entries[0]
            .iter()
            .map(|e| p.polynomial_string(e))
            .collect();
        assert_eq!(rendered, vec!["y_0", "x_0", "-2*z_0"]);

        // a linear relation has a constant Jacobian entry
        let mut b = crate::gradedalg::PresentationBuilder::new();
        b.generator("x", 0, Some(1));
        b.generator("zeta", -1, Some(1));
        let free: crate::gradedalg::Presentation = b.free().unwrap();
        let x = free.find("x", None).unwrap();
        let zeta = free.find("zeta", None).unwrap();
        let dx = free.gen_poly(x);
        let lin = free.with_differentials(vec![(zeta, dx)]).unwrap();
        let jac = jacobian(&lin).unwrap();
        let p = jac.arc0.presentation();
        assert_eq!(p.polynomial_string(&jac.entries[0][0]), "1");
    }

    #[test]
    fn jacobian_rejects_deep_generators() {
        assert!(matches!(
            jacobian(&presets::depth_two()),
            Err(Error::NotClassicalInput(_))
        ));
    }

    #[test]
    fn cotangent_degree_minus_one_differential_is_the_jacobian() {
        // d(zeta_1) must equal the Jacobian row contracted with the jet-1
        // variables; two independent computations of the same linearization
        for base in [
            presets::fat_point(),
            presets::node(),
            presets::quadric_cone(),
            presets::parabola(),
        ] {
            let complex = cotangent_complex(&base).unwrap();
            let p = complex.presentation();
            let jac = jacobian(&base).unwrap();
            for (k, &r) in jac.rows.iter().enumerate() {
                let name = base.generator(r).base();
                let z1 = p.find(name, Some(1)).unwrap();
                let mut expected = Polynomial::zero();
                for (entry, &c) in jac.entries[k].iter().zip(&jac.cols) {
                    // jet-0 names agree between arc levels 0 and 1
                    let lifted = entry.map_generators(|g| {
                        let gen = jac.arc0.presentation().generator(g);
                        p.find(gen.base(), gen.jet()).unwrap()
                    });
                    let col_name = base.generator(c).base();
                    let v1 = p.gen_poly(p.find(col_name, Some(1)).unwrap());
                    expected = &expected + &p.multiply(&lifted, &v1).unwrap();
                }
                assert_eq!(p.diff(z1), &expected);
            }
        }
    }

    #[test]
    fn fat_point_is_not_weakly_smooth() {
        let result =
            weakly_smooth_check(&presets::fat_point(), ColumnRange::InternalUpTo(4)).unwrap();
        assert!(!result.weakly_smooth_in_range());
        let (entry, class) = result.witness.as_ref().unwrap();
        assert_eq!((entry.i, entry.weighting), (1, Weighting::Internal(3)));
        assert_eq!(entry.dim, 1);
        // the witness lies on the eta direction
        let eta = presets::eta(result.complex.arc());
        let (m0, c0) = class.terms().next().unwrap();
        let ratio = c0.clone() / eta.coefficient(m0).unwrap().clone();
        assert_eq!(*class, eta.scaled(&ratio));
    }

    #[test]
    fn reduced_ci_examples_are_weakly_smooth_in_range() {
        for base in [
            presets::node(),
            presets::quadric_cone(),
            presets::parabola(),
        ] {
            let result = weakly_smooth_check(&base, ColumnRange::InternalUpTo(8)).unwrap();
            assert!(result.weakly_smooth_in_range());
            assert!(result.entries.iter().all(|e| e.dim == 0));
        }
    }

    #[test]
    fn smooth_line_is_weakly_smooth() {
        let result =
            weakly_smooth_check(&presets::smooth_line(), ColumnRange::InternalUpTo(6)).unwrap();
        assert!(result.weakly_smooth_in_range());
        assert!(result.entries.is_empty());
    }

    #[test]
    fn pi_dims_match_the_homology_route() {
        let base = presets::fat_point();
        let complex = cotangent_complex(&base).unwrap();
        let arc1 = arc_presentation(&base, 1).unwrap();
        for iw in 0..=5 {
            assert_eq!(
                complex.pi_dim(1, &Weighting::Internal(iw)).unwrap(),
                cohomology_dim(arc1.presentation(), 1, 1, &Weighting::Internal(iw)).unwrap()
            );
        }
    }
}
