//! Homotopy-group dimensions of bigraded pieces by exact linear algebra.
//!
//! `pi_i` is read off as the cohomology of the piece complex in degree `-i`:
//! the kernel dimension of the outgoing differential minus the rank of the
//! incoming one. Every computation is confined to one finite (conformal
//! weight, internal weight) column; columns are independent of each other.

use std::collections::BTreeMap;

use crate::arcs::{arc_presentation, ArcPresentation};
use crate::error::{Error, Result};
use crate::gradedalg::{Monomial, Polynomial, Presentation, Weighting};
use crate::linalg::Matrix;
use crate::scalar::{FieldScalar, Scalar};
use crate::Rat;

/// The differential of one bigraded piece as a matrix: rows indexed by the
/// target basis, columns by the source basis, both in canonical order.
#[derive(Clone, Debug)]
pub struct PieceMatrix<C = Rat> {
    pub source: Vec<Monomial>,
    pub target: Vec<Monomial>,
    pub matrix: Matrix<C>,
}

fn cap_of<C: Scalar>(pres: &Presentation<C>, weighting: &Weighting) -> Result<Option<u32>> {
    match weighting {
        Weighting::Internal(_) => Ok(None),
        Weighting::Cap(c) => {
            if pres.has_constant_differential_term() {
                return Err(Error::CapUnsupported(
                    "a differential carries a constant term, so the cap does not cut out a quotient complex"
                        .into(),
                ));
            }
            Ok(Some(*c))
        }
    }
}

fn matrix_from_bases<C: Scalar>(
    pres: &Presentation<C>,
    source: &[Monomial],
    target: &[Monomial],
    weighting: &Weighting,
) -> Result<Matrix<C>> {
    let cap = cap_of(pres, weighting)?;
    let index: BTreeMap<&Monomial, usize> =
        target.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut out = Matrix::zero(target.len(), source.len());
    for (j, sm) in source.iter().enumerate() {
        let dp = pres.differentiate(&Polynomial::single(sm.clone(), C::one()))?;
        for (tm, c) in dp.terms() {
            if let Some(cap) = cap {
                if tm.total_exponent() > cap {
                    continue;
                }
            }
            let i = *index.get(tm).ok_or_else(|| {
                Error::Internal(
                    "differential leaves the bigraded piece; presentation is not homogeneous"
                        .into(),
                )
            })?;
            out.set(i, j, c.clone());
        }
    }
    Ok(out)
}

/// Matrix of the differential restricted to the piece (degree `d`, conformal
/// weight `w`, third grading per `weighting`), mapping into degree `d + 1`.
pub fn differential_matrix<C: Scalar>(
    pres: &Presentation<C>,
    d: i32,
    w: u32,
    weighting: &Weighting,
) -> Result<PieceMatrix<C>> {
    let source = pres.bidegree_basis(d, w, weighting)?;
    let target = pres.bidegree_basis(d + 1, w, weighting)?;
    let matrix = matrix_from_bases(pres, &source, &target, weighting)?;
    Ok(PieceMatrix {
        source,
        target,
        matrix,
    })
}

fn dim_in_column<C: Scalar>(
    pres: &Presentation<C>,
    buckets: &BTreeMap<i32, Vec<Monomial>>,
    i: u32,
    weighting: &Weighting,
) -> Result<usize> {
    let empty = Vec::new();
    let d = -(i as i32);
    let source = buckets.get(&d).unwrap_or(&empty);
    let above = buckets.get(&(d + 1)).unwrap_or(&empty);
    let below = buckets.get(&(d - 1)).unwrap_or(&empty);
    let outgoing = matrix_from_bases(pres, source, above, weighting)?;
    let incoming = matrix_from_bases(pres, below, source, weighting)?;
    let cycles = source.len() - outgoing.rank();
    let boundaries = incoming.rank();
    if boundaries > cycles {
        return Err(Error::Internal(
            "boundaries exceed cycles; differential does not square to zero".into(),
        ));
    }
    Ok(cycles - boundaries)
}

/// `dim pi_i` of the presentation in the given column: kernel of the
/// outgoing differential in degree `-i` minus the rank of the incoming one,
/// both over exact scalars.
pub fn cohomology_dim<C: Scalar>(
    pres: &Presentation<C>,
    i: u32,
    w: u32,
    weighting: &Weighting,
) -> Result<usize> {
    let buckets = pres.column_bases(w, weighting)?;
    dim_in_column(pres, &buckets, i, weighting)
}

/// Whether the differential of `p` vanishes.
pub fn is_cycle<C: Scalar>(pres: &Presentation<C>, p: &Polynomial<C>) -> Result<bool> {
    Ok(pres.differentiate(p)?.is_zero())
}

fn homogeneous_piece<C: Scalar>(
    pres: &Presentation<C>,
    p: &Polynomial<C>,
    weighting: &Weighting,
) -> Result<(i32, u32)> {
    let d = pres
        .homogeneous_degree(p)?
        .ok_or_else(|| Error::Inhomogeneous("zero polynomial has no bidegree".into()))?;
    let mut w = None;
    for (m, _) in p.terms() {
        let mw = pres.monomial_conformal_weight(m);
        match w {
            None => w = Some(mw),
            Some(prev) if prev != mw => {
                return Err(Error::Inhomogeneous(format!(
                    "terms of conformal weights {prev} and {mw}"
                )))
            }
            _ => {}
        }
        match weighting {
            Weighting::Internal(iw) => {
                let found = pres.monomial_internal_weight(m);
                if found != Some(*iw) {
                    return Err(Error::Inhomogeneous(format!(
                        "term {} does not have internal weight {iw}",
                        pres.monomial_string(m)
                    )));
                }
            }
            Weighting::Cap(cap) => {
                if m.total_exponent() > *cap {
                    return Err(Error::Inhomogeneous(format!(
                        "term {} exceeds the degree cap {cap}",
                        pres.monomial_string(m)
                    )));
                }
            }
        }
    }
    Ok((d, w.unwrap()))
}

/// Whether `p` is the differential of something, decided by an exact linear
/// solve in its bigraded piece. `p` must be homogeneous.
pub fn is_boundary<C: FieldScalar>(
    pres: &Presentation<C>,
    p: &Polynomial<C>,
    weighting: &Weighting,
) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    let (d, w) = homogeneous_piece(pres, p, weighting)?;
    let piece = differential_matrix(pres, d - 1, w, weighting)?;
    let index: BTreeMap<&Monomial, usize> = piece
        .target
        .iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut rhs = vec![C::zero(); piece.target.len()];
    for (m, c) in p.terms() {
        let i = *index.get(m).ok_or_else(|| {
            Error::Internal("polynomial term missing from its own piece basis".into())
        })?;
        rhs[i] = c.clone();
    }
    Ok(piece.matrix.solve(&rhs).is_some())
}

/// A cycle of the piece (degree `-i`, weight `w`) that is not a boundary,
/// if one exists.
pub fn witness_class<C: FieldScalar>(
    pres: &Presentation<C>,
    i: u32,
    w: u32,
    weighting: &Weighting,
) -> Result<Option<Polynomial<C>>> {
    let d = -(i as i32);
    let outgoing = differential_matrix(pres, d, w, weighting)?;
    let incoming = differential_matrix(pres, d - 1, w, weighting)?;
    for v in outgoing.matrix.kernel_basis() {
        if incoming.matrix.solve(&v).is_none() {
            let mut p = Polynomial::zero();
            for (c, m) in v.into_iter().zip(&outgoing.source) {
                p.insert_add(m.clone(), c);
            }
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// The family of third-grading columns a report ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColumnRange {
    /// Every internal weight from 0 up to the bound.
    InternalUpTo(i64),
    /// A single total-exponent cap (ungraded presentations).
    Cap(u32),
}

impl ColumnRange {
    pub fn weightings(&self) -> Vec<Weighting> {
        match *self {
            ColumnRange::InternalUpTo(m) => (0..=m).map(Weighting::Internal).collect(),
            ColumnRange::Cap(c) => vec![Weighting::Cap(c)],
        }
    }
}

/// One computed dimension `dim pi_i` at a (w, weighting) column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PiEntry {
    pub i: u32,
    pub w: u32,
    pub weighting: Weighting,
    pub dim: usize,
}

/// Largest homotopy index that can be nonzero in a column, as bounded by the
/// lowest degree its monomials reach.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColumnBound {
    pub w: u32,
    pub weighting: Weighting,
    pub i_max: u32,
}

/// Bounded-range classicality table of an arc presentation: every
/// `dim pi_i`, `i >= 1`, over the requested rectangle of columns, with the
/// verdict and a witness class for the first nonzero entry.
#[derive(Clone, Debug)]
pub struct ClassicalityReport<C = Rat> {
    pub arc: ArcPresentation<C>,
    pub w_max: u32,
    pub range: ColumnRange,
    pub column_bounds: Vec<ColumnBound>,
    pub entries: Vec<PiEntry>,
    pub classical_in_range: bool,
    pub witness: Option<(PiEntry, Polynomial<C>)>,
}

impl<C: Scalar> ClassicalityReport<C> {
    pub fn level(&self) -> u32 {
        self.arc.level()
    }
}

/// Computes `dim pi_i` for all `1 <= i <= i_max(column)` over the rectangle
/// `w <= w_max` times the column range, on the level-`n` arc presentation of
/// the base. Classical in range means every entry vanishes.
pub fn classicality_report<C: FieldScalar>(
    base: &Presentation<C>,
    level: u32,
    w_max: u32,
    range: ColumnRange,
) -> Result<ClassicalityReport<C>> {
    let arc = arc_presentation(base, level)?;
    let pres = arc.presentation();
    let mut entries = Vec::new();
    let mut column_bounds = Vec::new();
    let mut witness = None;
    for w in 0..=w_max {
        for weighting in range.weightings() {
            let buckets = pres.column_bases(w, &weighting)?;
            let i_max = buckets
                .keys()
                .filter(|&&d| d < 0)
                .map(|&d| (-d) as u32)
                .max()
                .unwrap_or(0);
            column_bounds.push(ColumnBound {
                w,
                weighting,
                i_max,
            });
            for i in 1..=i_max {
                let dim = dim_in_column(pres, &buckets, i, &weighting)?;
                let entry = PiEntry {
                    i,
                    w,
                    weighting,
                    dim,
                };
                if dim > 0 && witness.is_none() {
                    let class = witness_class(pres, i, w, &weighting)?.ok_or_else(|| {
                        Error::Internal("nonzero dimension without witness".into())
                    })?;
                    witness = Some((entry, class));
                }
                entries.push(entry);
            }
        }
    }
    let classical_in_range = entries.iter().all(|e| e.dim == 0);
    Ok(ClassicalityReport {
        arc,
        w_max,
        range,
        column_bounds,
        entries,
        classical_in_range,
        witness,
    })
}
