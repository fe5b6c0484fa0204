//! The arc functor on presentations: adjoins jet variables `x_i` for each
//! base generator `x`, with the differential obtained by expanding each
//! `d(x) = f(x, y, ...)` through the truncated generating series
//! `x(t) = x_0 + x_1 t + ... + x_n t^n` and reading off `t`-coefficients.
//!
//! Jet index equals conformal weight; every differential of the resulting
//! presentation is conformal-weight homogeneous, which is what makes the
//! bigraded pieces finite and computable.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gradedalg::{GenId, Monomial, Polynomial, Presentation, PresentationBuilder};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::Rat;

/// A base presentation together with its level-`n` arc extension.
#[derive(Clone, Debug)]
pub struct ArcPresentation<C = Rat> {
    base: Presentation<C>,
    level: u32,
    result: Presentation<C>,
}

impl<C: Scalar> ArcPresentation<C> {
    pub fn base(&self) -> &Presentation<C> {
        &self.base
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn presentation(&self) -> &Presentation<C> {
        &self.result
    }

    /// The jet generator `x_i` of a base generator.
    pub fn jet(&self, base_gen: GenId, i: u32) -> Option<GenId> {
        self.result
            .find(self.base.generator(base_gen).base(), Some(i))
    }

    /// Expands a base polynomial through the generating series of this
    /// level; entry `i` is the `t^i` coefficient, a polynomial of conformal
    /// weight `i` over [`Self::presentation`].
    pub fn expand(&self, f: &Polynomial<C>) -> Result<Vec<Polynomial<C>>> {
        expand_over(&self.result, &self.base, f, self.level)
    }
}

fn require_base<C: Scalar>(base: &Presentation<C>) -> Result<()> {
    if let Some(g) = base.generators().iter().find(|g| g.jet().is_some()) {
        return Err(Error::MalformedPresentation(format!(
            "arc construction expects a base presentation, found jet variable {}",
            g.display_name()
        )));
    }
    Ok(())
}

/// Builds the level-`n` arc presentation of a validated base presentation.
pub fn arc_presentation<C: Scalar>(
    base: &Presentation<C>,
    level: u32,
) -> Result<ArcPresentation<C>> {
    require_base(base)?;
    base.validated()?;
    let mut b = PresentationBuilder::new();
    for g in base.generators() {
        for i in 0..=level {
            b.jet_generator(g.base(), i, g.coh_degree(), i, g.internal_weight());
        }
    }
    let scaffold: Presentation<C> = b.free()?;
    let mut diffs = Vec::new();
    for g in base.gen_ids() {
        let f = base.diff(g);
        if f.is_zero() {
            continue;
        }
        let coeffs = expand_over(&scaffold, base, f, level)?;
        for (i, c) in coeffs.into_iter().enumerate() {
            let jet = scaffold
                .find(base.generator(g).base(), Some(i as u32))
                .ok_or_else(|| Error::Internal("missing jet generator".into()))?;
            diffs.push((jet, c));
        }
    }
    let result = scaffold.with_differentials(diffs)?;
    Ok(ArcPresentation {
        base: base.clone(),
        level,
        result,
    })
}

/// Coefficients of `t^0..t^n` after substituting every base generator by its
/// truncated jet series. Returns the arc presentation the coefficients live
/// over together with the list.
pub fn expand_series<C: Scalar>(
    base: &Presentation<C>,
    f: &Polynomial<C>,
    level: u32,
) -> Result<(ArcPresentation<C>, Vec<Polynomial<C>>)> {
    let arc = arc_presentation(base, level)?;
    let coeffs = arc.expand(f)?;
    Ok((arc, coeffs))
}

fn expand_over<C: Scalar>(
    target: &Presentation<C>,
    base: &Presentation<C>,
    f: &Polynomial<C>,
    level: u32,
) -> Result<Vec<Polynomial<C>>> {
    base.check_poly(f)?;
    let n = level as usize;
    let mut out = vec![Polynomial::zero(); n + 1];
    for (m, c) in f.terms() {
        let mut acc: Vec<Polynomial<C>> = vec![Polynomial::zero(); n + 1];
        acc[0] = target.one();
        for &(g, e) in m.factors() {
            let name = base.generator(g).base();
            let series: Vec<Polynomial<C>> = (0..=level)
                .map(|i| {
                    target
                        .find(name, Some(i))
                        .map(|id| target.gen_poly(id))
                        .ok_or_else(|| Error::Internal("missing jet generator".into()))
                })
                .collect::<Result<_>>()?;
            for _ in 0..e {
                acc = convolve(target, &acc, &series)?;
            }
        }
        for (slot, a) in out.iter_mut().zip(acc) {
            *slot = &*slot + &a.scaled(c);
        }
    }
    Ok(out)
}

/// Truncated Cauchy product of two coefficient lists of equal length.
fn convolve<C: Scalar>(
    pres: &Presentation<C>,
    a: &[Polynomial<C>],
    b: &[Polynomial<C>],
) -> Result<Vec<Polynomial<C>>> {
    let n = a.len();
    let mut out = vec![Polynomial::zero(); n];
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..n - i {
            if b[j].is_zero() {
                continue;
            }
            let prod = pres.multiply(&a[i], &b[j])?;
            out[i + j] = &out[i + j] + &prod;
        }
    }
    Ok(out)
}

/// The algebra map from level `n+1` to level `n` sending every top jet
/// variable to zero and every lower jet to itself.
///
/// Restricted to the subalgebra generated by jets of index at most `n` it is
/// inverse to the tower inclusion and commutes with the differentials; on
/// polynomials containing top jet variables it is still an algebra map, but
/// not a chain map (the fat point at level 2 gives `trunc(d zeta_2) = x_1^2`
/// against `d(trunc zeta_2) = 0`).
pub fn truncation_map<C: Scalar>(
    source: &ArcPresentation<C>,
    target: &ArcPresentation<C>,
    p: &Polynomial<C>,
) -> Result<Polynomial<C>> {
    if source.level != target.level + 1 {
        return Err(Error::LevelMismatch(format!(
            "source level {} is not one above target level {}",
            source.level, target.level
        )));
    }
    if !source.base.structurally_equal(&target.base, true) {
        return Err(Error::LevelMismatch(
            "arc presentations have different bases".into(),
        ));
    }
    let src = source.presentation();
    src.check_poly(p)?;
    let tgt = target.presentation();
    let mut out = Polynomial::zero();
    'terms: for (m, c) in p.terms() {
        let mut factors: Vec<(GenId, u32)> = Vec::with_capacity(m.factors().len());
        for &(g, e) in m.factors() {
            let gen = src.generator(g);
            if gen.jet() == Some(source.level) {
                continue 'terms;
            }
            let tg = tgt
                .find(gen.base(), gen.jet())
                .ok_or_else(|| Error::Internal("missing jet generator in target".into()))?;
            factors.push((tg, e));
        }
        let (sign, mono) = tgt.normalize(&factors)?;
        debug_assert_eq!(sign, 1);
        if let Some(mono) = mono {
            out.insert_add(mono, c.clone());
        }
    }
    Ok(out)
}

/// The classical truncated jet ring of a complete-intersection input:
/// polynomial variables `x_i` (the even jets) modulo the expanded relations.
/// Quotient dimensions are computed by a plain commutative span of relation
/// multiples, independent of the differential machinery.
#[derive(Clone, Debug)]
pub struct ClassicalJetRing<C = Rat> {
    arc: ArcPresentation<C>,
    vars: Vec<GenId>,
    relations: Vec<Polynomial<C>>,
}

impl<C: Scalar> ClassicalJetRing<C> {
    pub fn arc(&self) -> &ArcPresentation<C> {
        &self.arc
    }

    /// Even jet variables, ascending.
    pub fn vars(&self) -> &[GenId] {
        &self.vars
    }

    /// Expanded relations, over [`ArcPresentation::presentation`].
    pub fn relations(&self) -> &[Polynomial<C>] {
        &self.relations
    }

    /// Dimension of the (conformal weight, internal weight) piece of the
    /// quotient ring: monomials in the variables minus the rank of the span
    /// of relation multiples landing in the piece.
    pub fn graded_quotient_dim(&self, w: u32, iw: i64) -> Result<usize> {
        let pres = self.arc.presentation();
        let mut meta = Vec::with_capacity(self.vars.len());
        let mut index_of = BTreeMap::new();
        for (k, &v) in self.vars.iter().enumerate() {
            let g = pres.generator(v);
            let giw = g.internal_weight().ok_or_else(|| {
                Error::InfinitePiece(format!(
                    "variable {} has no internal weight",
                    g.display_name()
                ))
            })?;
            if giw <= 0 {
                return Err(Error::InfinitePiece(format!(
                    "variable {} has non-positive internal weight {giw}",
                    g.display_name()
                )));
            }
            meta.push((g.conformal_weight(), giw));
            index_of.insert(v, k);
        }
        let basis = expvec_monomials(&meta, w as i64, iw);
        if basis.is_empty() {
            return Ok(0);
        }
        let basis_index: BTreeMap<&Vec<u32>, usize> =
            basis.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut rows: Vec<Vec<C>> = Vec::new();
        for rel in &self.relations {
            if rel.is_zero() {
                continue;
            }
            let terms: Vec<(Vec<u32>, C)> = rel
                .terms()
                .map(|(m, c)| {
                    let mut ev = vec![0u32; self.vars.len()];
                    for &(g, e) in m.factors() {
                        let k = *index_of.get(&g).ok_or_else(|| {
                            Error::Internal("relation mentions a non-variable".into())
                        })?;
                        ev[k] = e;
                    }
                    Ok((ev, c.clone()))
                })
                .collect::<Result<_>>()?;
            let (rw, riw) = weight_of(&meta, &terms[0].0);
            if rw > w as i64 || riw > iw {
                continue;
            }
            for mult in expvec_monomials(&meta, w as i64 - rw, iw - riw) {
                let mut row = vec![C::zero(); basis.len()];
                for (ev, c) in &terms {
                    let prod: Vec<u32> = ev.iter().zip(&mult).map(|(a, b)| a + b).collect();
                    let idx = *basis_index.get(&prod).ok_or_else(|| {
                        Error::Internal("relation multiple leaves the piece".into())
                    })?;
                    row[idx] = row[idx].clone() + c.clone();
                }
                rows.push(row);
            }
        }
        let rank = if rows.is_empty() {
            0
        } else {
            Matrix::from_rows(rows)?.rank()
        };
        Ok(basis.len() - rank)
    }
}

fn weight_of(meta: &[(u32, i64)], ev: &[u32]) -> (i64, i64) {
    let mut w = 0i64;
    let mut iw = 0i64;
    for (e, &(gw, giw)) in ev.iter().zip(meta) {
        w += *e as i64 * gw as i64;
        iw += *e as i64 * giw;
    }
    (w, iw)
}

fn expvec_monomials(meta: &[(u32, i64)], w: i64, iw: i64) -> Vec<Vec<u32>> {
    fn rec(
        meta: &[(u32, i64)],
        idx: usize,
        rem_w: i64,
        rem_iw: i64,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if rem_w < 0 || rem_iw < 0 {
            return;
        }
        if idx == meta.len() {
            if rem_w == 0 && rem_iw == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let (gw, giw) = meta[idx];
        let mut e_max = rem_iw / giw;
        if gw > 0 {
            e_max = e_max.min(rem_w / gw as i64);
        }
        for e in 0..=e_max as u32 {
            cur.push(e);
            rec(
                meta,
                idx + 1,
                rem_w - e as i64 * gw as i64,
                rem_iw - e as i64 * giw,
                cur,
                out,
            );
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(meta, 0, w, iw, &mut Vec::new(), &mut out);
    out
}

/// Extracts the classical truncated jet ring from a complete-intersection
/// presentation (even generators in degree zero, odd generators in degree
/// minus one). Rejects presentations with generators below degree minus one.
pub fn classical_jet_ring<C: Scalar>(
    base: &Presentation<C>,
    level: u32,
) -> Result<ClassicalJetRing<C>> {
    require_base(base)?;
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
    let arc = arc_presentation(base, level)?;
    let pres = arc.presentation();
    let vars: Vec<GenId> = pres
        .gen_ids()
        .filter(|&g| pres.generator(g).coh_degree() == 0)
        .collect();
    let mut relations = Vec::new();
    for g in base.gen_ids() {
        if base.generator(g).coh_degree() != -1 {
            continue;
        }
        for i in 0..=level {
            let jet = arc
                .jet(g, i)
                .ok_or_else(|| Error::Internal("missing jet generator".into()))?;
            relations.push(pres.diff(jet).clone());
        }
    }
    Ok(ClassicalJetRing {
        arc,
        vars,
        relations,
    })
}

/// Total exponent of weight-`n` jet variables in a monomial; see
/// [`crate::degeneration`].
pub(crate) fn top_weight_exponent<C: Scalar>(pres: &Presentation<C>, m: &Monomial, n: u32) -> u32 {
    m.factors()
        .iter()
        .filter(|&&(g, _)| pres.generator(g).jet() == Some(n))
        .map(|&(_, e)| e)
        .sum()
}
