//! The top-weight filtration on an arc presentation and its associated
//! graded, together with the symmetric-algebra model it degenerates onto.
//!
//! At level `n+1` the filtration counts the total exponent of jet-index
//! `n+1` variables. It respects the differential, and the associated graded
//! keeps exactly the exponent-preserving part: for a top generator that is
//! the part of its differential containing one top variable, whose cofactor
//! is forced into conformal weight zero. The symmetric model builds the same
//! algebra with the top differentials assembled from symbolic Jacobian
//! entries instead, giving a second, independent route to the same
//! linearization.

use crate::arcs::{arc_presentation, top_weight_exponent};
use crate::error::{Error, Result};
use crate::gradedalg::{GenId, Monomial, Polynomial, Presentation};
use crate::homology::ColumnRange;
use crate::scalar::Scalar;

/// Total exponent of jet-index-`n` generators in a monomial.
pub fn filtration_degree<C: Scalar>(pres: &Presentation<C>, m: &Monomial, n: u32) -> u32 {
    top_weight_exponent(pres, m, n)
}

/// The associated graded of the level-`level` arc presentation under the
/// top-weight filtration: same generators, with the differential of each top
/// generator cut down to its filtration-degree-one part. Lower generators
/// keep their differential, which already has filtration degree zero.
pub fn associated_graded<C: Scalar>(base: &Presentation<C>, level: u32) -> Result<Presentation<C>> {
    if level == 0 {
        return Err(Error::LevelMismatch(
            "the associated graded needs level >= 1".into(),
        ));
    }
    let arc = arc_presentation(base, level)?;
    let pres = arc.presentation().clone();
    let mut replacements = Vec::new();
    for g in pres.gen_ids() {
        if pres.generator(g).jet() != Some(level) {
            continue;
        }
        let mut kept = Polynomial::zero();
        for (m, c) in pres.diff(g).terms() {
            if top_weight_exponent(&pres, m, level) == 1 {
                kept.insert_add(m.clone(), c.clone());
            }
        }
        replacements.push((g, kept));
    }
    pres.with_differentials(replacements)
}

/// The symmetric-algebra model on the cotangent fiber: the level-`n` arc
/// presentation with one adjoined generator per base generator, placed in
/// conformal weight `n+1` under the top jet's name, whose differential is
/// the Jacobian linearization with jet-0 coefficients.
///
/// The linearization is applied as an even substitution derivation: one
/// occurrence of a jet-0 variable at a time is replaced, in place, by the
/// adjoined generator. On even variables this is the familiar
/// `sum_mu (df/dx_mu)(x_0) e_mu`; in-place replacement also fixes the Koszul
/// signs for odd variables.
pub fn sym_model<C: Scalar>(base: &Presentation<C>, n: u32) -> Result<Presentation<C>> {
    let arc = arc_presentation(base, n + 1)?;
    let pres = arc.presentation().clone();
    let jet0: Vec<GenId> = base
        .gen_ids()
        .map(|g| arc.jet(g, 0).expect("every base generator has a jet"))
        .collect();
    let top_of_jet0: std::collections::BTreeMap<GenId, GenId> = base
        .gen_ids()
        .map(|g| {
            (
                jet0[g.0 as usize],
                arc.jet(g, n + 1).expect("top jet exists"),
            )
        })
        .collect();
    let mut replacements = Vec::new();
    for lam in base.gen_ids() {
        let top = arc.jet(lam, n + 1).expect("top jet exists");
        let f = base.diff(lam);
        let mut d = Polynomial::zero();
        if !f.is_zero() {
            let f0 = f.map_generators(|g| jet0[g.0 as usize]);
            for (m, c) in f0.terms() {
                for (pos, &(g, e)) in m.factors().iter().enumerate() {
                    let mut fs: Vec<(GenId, u32)> = Vec::with_capacity(m.factors().len() + 1);
                    fs.extend_from_slice(&m.factors()[..pos]);
                    if e > 1 {
                        fs.push((g, e - 1));
                    }
                    fs.push((top_of_jet0[&g], 1));
                    fs.extend_from_slice(&m.factors()[pos + 1..]);
                    let (sign, mono) = pres.normalize(&fs)?;
                    if let Some(mono) = mono {
                        let coeff = c.clone() * crate::gradedalg::scalar_from_u32::<C>(e);
                        d.insert_add(mono, if sign < 0 { -coeff } else { coeff });
                    }
                }
            }
        }
        replacements.push((top, d));
    }
    pres.with_differentials(replacements)
}

/// Which differential the symmetric side of [`compare_graded`] carries:
/// Jacobian coefficients evaluated at the jet-0 variables (`Zero`), or the
/// filtration-degree-one part of the true arc differential (`Full`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffConvention {
    Zero,
    Full,
}

impl std::fmt::Display for CoeffConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoeffConvention::Zero => write!(f, "zero"),
            CoeffConvention::Full => write!(f, "full"),
        }
    }
}

/// Outcome of comparing the associated graded against the symmetric model.
#[derive(Clone, Debug)]
pub struct GradedComparison {
    pub level: u32,
    pub convention: CoeffConvention,
    pub w_max: u32,
    pub range: ColumnRange,
    pub pieces_checked: usize,
    pub dims_match: bool,
    pub differentials_match: bool,
    pub first_mismatch: Option<String>,
}

impl GradedComparison {
    pub fn matches(&self) -> bool {
        self.dims_match && self.differentials_match
    }
}

/// Compares the associated graded of the level-`level` arc presentation
/// with the symmetric model under the generator correspondence (which is
/// the identity, the adjoined generators being named as the top jets):
/// bigraded basis dimensions in the requested rectangle, and the
/// differentials themselves.
pub fn compare_graded<C: Scalar>(
    base: &Presentation<C>,
    level: u32,
    w_max: u32,
    range: ColumnRange,
    convention: CoeffConvention,
) -> Result<GradedComparison> {
    if level == 0 {
        return Err(Error::LevelMismatch(
            "the comparison needs level >= 1".into(),
        ));
    }
    let gr = associated_graded(base, level)?;
    let model = match convention {
        CoeffConvention::Zero => sym_model(base, level - 1)?,
        CoeffConvention::Full => associated_graded(base, level)?,
    };
    let mut first_mismatch = None;
    let mut dims_match = true;
    let mut pieces_checked = 0;
    'outer: for w in 0..=w_max {
        for weighting in range.weightings() {
            let a = gr.column_bases(w, &weighting)?;
            let b = model.column_bases(w, &weighting)?;
            let degrees: std::collections::BTreeSet<i32> =
                a.keys().chain(b.keys()).copied().collect();
            for d in degrees {
                pieces_checked += 1;
                let da = a.get(&d).map(|v| v.len()).unwrap_or(0);
                let db = b.get(&d).map(|v| v.len()).unwrap_or(0);
                if da != db {
                    dims_match = false;
                    first_mismatch = Some(format!(
                        "piece (d={d}, w={w}, {weighting:?}): {da} monomials against {db}"
                    ));
                    break 'outer;
                }
            }
        }
    }
    let mut differentials_match = true;
    if dims_match {
        for g in gr.gen_ids() {
            if gr.diff(g) != model.diff(g) {
                differentials_match = false;
                if first_mismatch.is_none() {
                    first_mismatch = Some(format!(
                        "generator {}: graded differential {} against model {}",
                        gr.generator(g).display_name(),
                        gr.polynomial_string(gr.diff(g)),
                        model.polynomial_string(model.diff(g)),
                    ));
                }
                break;
            }
        }
    } else {
        differentials_match = false;
    }
    Ok(GradedComparison {
        level,
        convention,
        w_max,
        range,
        pieces_checked,
        dims_match,
        differentials_match,
        first_mismatch,
    })
}
