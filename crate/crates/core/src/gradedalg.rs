//! Free non-positively graded super-commutative algebras over an exact
//! scalar ring, with differentials defined on generators and extended by the
//! graded Leibniz rule.
//!
//! A [`Presentation`] owns a sorted list of generators and one differential
//! polynomial per generator. Polynomials are sparse maps from sign-normalized
//! [`Monomial`]s to nonzero coefficients; every constructor routes through
//! Koszul-sign normalization, so equality of polynomials is structural.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rat;

/// Index of a generator inside its presentation. Generators are stored
/// sorted by the global order (base name, then jet index), so ids double as
/// global order positions.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GenId(pub u32);

impl GenId {
    fn idx(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
}

/// A free variable of the algebra: a named symbol carrying cohomological
/// degree, conformal weight and an optional internal weight. Parity is
/// derived from the degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Generator {
    base: String,
    jet: Option<u32>,
    coh_degree: i32,
    conformal_weight: u32,
    internal_weight: Option<i64>,
}

impl Generator {
    pub fn base(&self) -> &str {
        &self.base
    }

    /// Jet index; `None` for base generators.
    pub fn jet(&self) -> Option<u32> {
        self.jet
    }

    pub fn coh_degree(&self) -> i32 {
        self.coh_degree
    }

    pub fn conformal_weight(&self) -> u32 {
        self.conformal_weight
    }

    pub fn internal_weight(&self) -> Option<i64> {
        self.internal_weight
    }

    pub fn parity(&self) -> Parity {
        if self.coh_degree.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == Parity::Odd
    }

    /// The printable name: `x` for a base generator, `x_3` for jet 3 of `x`.
    pub fn display_name(&self) -> String {
        match self.jet {
            None => self.base.clone(),
            Some(i) => format!("{}_{}", self.base, i),
        }
    }

    fn order_key(&self) -> (&str, Option<u32>) {
        (&self.base, self.jet)
    }
}

/// A sign-normalized super-commutative monomial: factors strictly increasing
/// in the global generator order, exponents positive, odd generators with
/// exponent exactly one.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    factors: Vec<(GenId, u32)>,
}

impl Monomial {
    /// The empty product.
    pub fn one() -> Self {
        Monomial {
            factors: Vec::new(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(GenId, u32)] {
        &self.factors
    }

    /// Sum of all exponents.
    pub fn total_exponent(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent_of(&self, g: GenId) -> u32 {
        self.factors
            .iter()
            .find(|&&(h, _)| h == g)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    /// Renames generators through a strictly monotone map; canonical form is
    /// preserved, so no sign appears.
    pub fn map_generators(&self, f: impl Fn(GenId) -> GenId) -> Monomial {
        let factors: Vec<(GenId, u32)> = self.factors.iter().map(|&(g, e)| (f(g), e)).collect();
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        Monomial { factors }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.total_exponent(), &self.factors).cmp(&(other.total_exponent(), &other.factors))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse linear combination of monomials with nonzero exact coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<C = Rat> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn single(m: Monomial, c: C) -> Self {
        let mut p = Self::zero();
        p.insert_add(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    /// Largest generator id referenced, if any.
    pub fn max_gen_id(&self) -> Option<GenId> {
        self.terms
            .keys()
            .filter_map(|m| m.factors.last().map(|&(g, _)| g))
            .max()
    }

    pub fn scaled(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    /// Renames generators through a strictly monotone map.
    pub fn map_generators(&self, f: impl Fn(GenId) -> GenId) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.map_generators(&f), c.clone()))
                .collect(),
        }
    }

    pub(crate) fn insert_add(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }
}

impl<C: Scalar> std::ops::Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, other: Self) -> Polynomial<C> {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }
}

impl<C: Scalar> std::ops::Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, other: Self) -> Polynomial<C> {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.insert_add(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Scalar> std::ops::Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

/// Selects the third grading of a bigraded piece beyond (degree, conformal
/// weight): a fixed internal weight on fully graded presentations, or a
/// total-exponent cap when internal weights are absent.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Weighting {
    Internal(i64),
    Cap(u32),
}

/// One failure found by [`Presentation::check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationIssue {
    DegreeNotRaised {
        gen: String,
        monomial: String,
        expected: i32,
        found: i32,
    },
    NotSquareZero {
        gen: String,
        witness: String,
    },
    InternalWeightInhomogeneous {
        gen: String,
        monomial: String,
        expected: i64,
        found: i64,
    },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::DegreeNotRaised { gen, monomial, expected, found } => write!(
                f,
                "generator {gen}: differential term {monomial} has degree {found}, expected {expected}"
            ),
            ValidationIssue::NotSquareZero { gen, witness } => {
                write!(f, "generator {gen}: d^2 = {witness}, not zero")
            }
            ValidationIssue::InternalWeightInhomogeneous { gen, monomial, expected, found } => write!(
                f,
                "generator {gen}: differential term {monomial} has internal weight {found}, expected {expected}"
            ),
        }
    }
}

/// Outcome of checking the differential-graded axioms on a presentation.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            write!(f, "valid")
        } else {
            for (k, issue) in self.issues.iter().enumerate() {
                if k > 0 {
                    writeln!(f)?;
                }
                write!(f, "{issue}")?;
            }
            Ok(())
        }
    }
}

/// Collects generators before a presentation is frozen.
#[derive(Default)]
pub struct PresentationBuilder {
    gens: Vec<Generator>,
}

impl PresentationBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a base generator (conformal weight zero).
    pub fn generator(
        &mut self,
        base: &str,
        coh_degree: i32,
        internal_weight: Option<i64>,
    ) -> &mut Self {
        self.gens.push(Generator {
            base: base.to_string(),
            jet: None,
            coh_degree,
            conformal_weight: 0,
            internal_weight,
        });
        self
    }

    /// Declares a jet generator carrying an explicit conformal weight.
    pub(crate) fn jet_generator(
        &mut self,
        base: &str,
        jet: u32,
        coh_degree: i32,
        conformal_weight: u32,
        internal_weight: Option<i64>,
    ) -> &mut Self {
        self.gens.push(Generator {
            base: base.to_string(),
            jet: Some(jet),
            coh_degree,
            conformal_weight,
            internal_weight,
        });
        self
    }

    /// Freezes the generator list into a presentation with zero
    /// differentials. Generators are sorted into the global order.
    pub fn free<C: Scalar>(self) -> Result<Presentation<C>> {
        let mut gens = self.gens;
        for g in &gens {
            if g.coh_degree > 0 {
                return Err(Error::MalformedPresentation(format!(
                    "generator {} has positive cohomological degree {}",
                    g.display_name(),
                    g.coh_degree
                )));
            }
        }
        gens.sort_by(|a, b| a.order_key().cmp(&b.order_key()));
        for pair in gens.windows(2) {
            if pair[0].order_key() == pair[1].order_key() {
                return Err(Error::MalformedPresentation(format!(
                    "duplicate generator {}",
                    pair[0].display_name()
                )));
            }
        }
        // display-name clashes (a base literally named "x_1" next to jet 1
        // of "x") would make printed polynomials ambiguous
        let mut names: Vec<String> = gens.iter().map(|g| g.display_name()).collect();
        names.sort();
        for pair in names.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::MalformedPresentation(format!(
                    "generator name {} is ambiguous",
                    pair[0]
                )));
            }
        }
        let n = gens.len();
        Ok(Presentation {
            gens,
            diffs: vec![Polynomial::zero(); n],
            graded: false,
        }
        .recompute_graded())
    }
}

/// A free graded-commutative algebra with a differential assignment on its
/// generators. Immutable once constructed; all operations borrow it.
#[derive(Clone, Debug)]
pub struct Presentation<C = Rat> {
    gens: Vec<Generator>,
    diffs: Vec<Polynomial<C>>,
    graded: bool,
}

impl<C: Scalar> Presentation<C> {
    pub fn builder() -> PresentationBuilder {
        PresentationBuilder::new()
    }

    fn recompute_graded(mut self) -> Self {
        self.graded = self.gens.iter().all(|g| g.internal_weight.is_some());
        self
    }

    /// Replaces differentials wholesale, consuming the presentation. Each
    /// target may appear once; polynomials must live over these generators.
    pub fn with_differentials(mut self, diffs: Vec<(GenId, Polynomial<C>)>) -> Result<Self> {
        let mut seen = vec![false; self.gens.len()];
        for (g, p) in diffs {
            if g.idx() >= self.gens.len() {
                return Err(Error::ForeignGenerator(g.0));
            }
            if seen[g.idx()] {
                return Err(Error::MalformedPresentation(format!(
                    "differential of {} assigned twice",
                    self.gens[g.idx()].display_name()
                )));
            }
            seen[g.idx()] = true;
            self.check_poly(&p)?;
            self.diffs[g.idx()] = p;
        }
        Ok(self)
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, g: GenId) -> &Generator {
        &self.gens[g.idx()]
    }

    pub fn gen_ids(&self) -> impl Iterator<Item = GenId> {
        (0..self.gens.len() as u32).map(GenId)
    }

    pub fn diff(&self, g: GenId) -> &Polynomial<C> {
        &self.diffs[g.idx()]
    }

    /// Whether every generator carries an internal weight.
    pub fn is_graded(&self) -> bool {
        self.graded
    }

    /// Binary search by (base, jet).
    pub fn find(&self, base: &str, jet: Option<u32>) -> Option<GenId> {
        self.gens
            .binary_search_by(|g| g.order_key().cmp(&(base, jet)))
            .ok()
            .map(|i| GenId(i as u32))
    }

    /// Lookup by printable name (`x` or `x_3`).
    pub fn find_display(&self, name: &str) -> Option<GenId> {
        self.gens
            .iter()
            .position(|g| g.display_name() == name)
            .map(|i| GenId(i as u32))
    }

    pub(crate) fn check_poly(&self, p: &Polynomial<C>) -> Result<()> {
        if let Some(g) = p.max_gen_id() {
            if g.idx() >= self.gens.len() {
                return Err(Error::ForeignGenerator(g.0));
            }
        }
        Ok(())
    }

    pub fn one(&self) -> Polynomial<C> {
        Polynomial::single(Monomial::one(), C::one())
    }

    pub fn constant(&self, c: C) -> Polynomial<C> {
        Polynomial::single(Monomial::one(), c)
    }

    pub fn gen_poly(&self, g: GenId) -> Polynomial<C> {
        Polynomial::single(
            Monomial {
                factors: vec![(g, 1)],
            },
            C::one(),
        )
    }

    /// Builds the polynomial `c * prod factors`, normalizing signs.
    pub fn monomial(&self, c: C, factors: &[(GenId, u32)]) -> Result<Polynomial<C>> {
        let (sign, m) = self.normalize(factors)?;
        Ok(match m {
            None => Polynomial::zero(),
            Some(m) => Polynomial::single(m, apply_sign(c, sign)),
        })
    }

    fn factor_parity(&self, g: GenId, e: u32) -> bool {
        self.gens[g.idx()].is_odd() && e % 2 == 1
    }

    /// Sorts an unordered factor list into the canonical monomial, returning
    /// the Koszul sign picked up by the reordering. Sign `0` (monomial
    /// `None`) signals that an odd generator appeared with total exponent at
    /// least two.
    pub fn normalize(&self, factors: &[(GenId, u32)]) -> Result<(i8, Option<Monomial>)> {
        let mut fs: Vec<(GenId, u32)> = Vec::with_capacity(factors.len());
        for &(g, e) in factors {
            if g.idx() >= self.gens.len() {
                return Err(Error::ForeignGenerator(g.0));
            }
            if e > 0 {
                fs.push((g, e));
            }
        }
        let mut sign = 1i8;
        // insertion sort, counting odd-odd transpositions
        for i in 1..fs.len() {
            let mut j = i;
            while j > 0 && fs[j].0 < fs[j - 1].0 {
                if self.factor_parity(fs[j].0, fs[j].1)
                    && self.factor_parity(fs[j - 1].0, fs[j - 1].1)
                {
                    sign = -sign;
                }
                fs.swap(j - 1, j);
                j -= 1;
            }
        }
        let mut merged: Vec<(GenId, u32)> = Vec::with_capacity(fs.len());
        for (g, e) in fs {
            match merged.last_mut() {
                Some((h, acc)) if *h == g => *acc += e,
                _ => merged.push((g, e)),
            }
        }
        for &(g, e) in &merged {
            if self.gens[g.idx()].is_odd() && e >= 2 {
                return Ok((0, None));
            }
        }
        Ok((sign, Some(Monomial { factors: merged })))
    }

    /// Graded-commutative product. Operands must live over this
    /// presentation; polynomials referencing foreign generators are
    /// rejected.
    pub fn multiply(&self, p: &Polynomial<C>, q: &Polynomial<C>) -> Result<Polynomial<C>> {
        self.check_poly(p)?;
        self.check_poly(q)?;
        let mut out = Polynomial::zero();
        for (m1, c1) in p.terms() {
            for (m2, c2) in q.terms() {
                let mut fs = m1.factors.clone();
                fs.extend_from_slice(&m2.factors);
                let (sign, m) = self.normalize(&fs)?;
                if let Some(m) = m {
                    out.insert_add(m, apply_sign(c1.clone() * c2.clone(), sign));
                }
            }
        }
        Ok(out)
    }

    /// The differential, extended from generators by the graded Leibniz
    /// rule: `d(ab) = d(a) b + (-1)^{|a|} a d(b)`.
    pub fn differentiate(&self, p: &Polynomial<C>) -> Result<Polynomial<C>> {
        self.check_poly(p)?;
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            let mut prefix_odd = false;
            for (pos, &(g, e)) in m.factors.iter().enumerate() {
                let dg = &self.diffs[g.idx()];
                if !dg.is_zero() {
                    let lead = if prefix_odd { -C::one() } else { C::one() };
                    let coeff = c.clone() * scalar_from_u32::<C>(e) * lead;
                    for (dm, dc) in dg.terms() {
                        // d replaces one power of g in place: prefix, g^{e-1},
                        // then the term of d(g), then the suffix
                        let mut fs: Vec<(GenId, u32)> =
                            Vec::with_capacity(m.factors.len() + dm.factors.len());
                        fs.extend_from_slice(&m.factors[..pos]);
                        if e > 1 {
                            fs.push((g, e - 1));
                        }
                        fs.extend_from_slice(&dm.factors);
                        fs.extend_from_slice(&m.factors[pos + 1..]);
                        let (sign, nm) = self.normalize(&fs)?;
                        if let Some(nm) = nm {
                            out.insert_add(nm, apply_sign(coeff.clone() * dc.clone(), sign));
                        }
                    }
                }
                if self.factor_parity(g, e) {
                    prefix_odd = !prefix_odd;
                }
            }
        }
        Ok(out)
    }

    /// Formal left partial derivative with respect to a generator.
    pub fn partial_derivative(&self, p: &Polynomial<C>, h: GenId) -> Result<Polynomial<C>> {
        self.check_poly(p)?;
        if h.idx() >= self.gens.len() {
            return Err(Error::ForeignGenerator(h.0));
        }
        let h_odd = self.gens[h.idx()].is_odd();
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            let mut prefix_odd = false;
            for (pos, &(g, e)) in m.factors.iter().enumerate() {
                if g == h {
                    let mut factors = m.factors.clone();
                    if e > 1 {
                        factors[pos].1 = e - 1;
                    } else {
                        factors.remove(pos);
                    }
                    let mut coeff = c.clone() * scalar_from_u32::<C>(e);
                    if h_odd && prefix_odd {
                        coeff = -coeff;
                    }
                    out.insert_add(Monomial { factors }, coeff);
                }
                if self.factor_parity(g, e) {
                    prefix_odd = !prefix_odd;
                }
            }
        }
        Ok(out)
    }

    pub fn monomial_coh_degree(&self, m: &Monomial) -> i32 {
        m.factors
            .iter()
            .map(|&(g, e)| e as i32 * self.gens[g.idx()].coh_degree)
            .sum()
    }

    pub fn monomial_conformal_weight(&self, m: &Monomial) -> u32 {
        m.factors
            .iter()
            .map(|&(g, e)| e * self.gens[g.idx()].conformal_weight)
            .sum()
    }

    pub fn monomial_internal_weight(&self, m: &Monomial) -> Option<i64> {
        m.factors
            .iter()
            .map(|&(g, e)| self.gens[g.idx()].internal_weight.map(|w| e as i64 * w))
            .sum()
    }

    pub fn monomial_parity(&self, m: &Monomial) -> Parity {
        if self.monomial_coh_degree(m).rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Degree of a nonzero homogeneous polynomial; `Err` if terms mix
    /// degrees.
    pub fn homogeneous_degree(&self, p: &Polynomial<C>) -> Result<Option<i32>> {
        let mut deg = None;
        for (m, _) in p.terms() {
            let d = self.monomial_coh_degree(m);
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => {
                    return Err(Error::Inhomogeneous(format!(
                        "terms of degrees {prev} and {d}"
                    )))
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Checks the differential-graded axioms: the differential raises
    /// cohomological degree by one, squares to zero, and (in graded mode)
    /// preserves internal weight.
    pub fn check(&self) -> ValidationReport {
        let mut issues = Vec::new();
        for g in self.gen_ids() {
            let d = &self.diffs[g.idx()];
            if d.is_zero() {
                continue;
            }
            let gen = &self.gens[g.idx()];
            let expected = gen.coh_degree + 1;
            for (m, _) in d.terms() {
                let found = self.monomial_coh_degree(m);
                if found != expected {
                    issues.push(ValidationIssue::DegreeNotRaised {
                        gen: gen.display_name(),
                        monomial: self.monomial_string(m),
                        expected,
                        found,
                    });
                }
            }
            if self.graded {
                let expected_iw = gen.internal_weight.unwrap();
                for (m, _) in d.terms() {
                    let found = self.monomial_internal_weight(m).unwrap();
                    if found != expected_iw {
                        issues.push(ValidationIssue::InternalWeightInhomogeneous {
                            gen: gen.display_name(),
                            monomial: self.monomial_string(m),
                            expected: expected_iw,
                            found,
                        });
                    }
                }
            }
            match self.differentiate(d) {
                Ok(dd) if dd.is_zero() => {}
                Ok(dd) => issues.push(ValidationIssue::NotSquareZero {
                    gen: gen.display_name(),
                    witness: self.polynomial_string(&dd),
                }),
                Err(_) => issues.push(ValidationIssue::NotSquareZero {
                    gen: gen.display_name(),
                    witness: "<undifferentiable>".into(),
                }),
            }
        }
        ValidationReport { issues }
    }

    /// `Err(InvalidPresentation)` unless [`check`](Self::check) is clean.
    pub fn validated(&self) -> Result<()> {
        let report = self.check();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidPresentation(report.to_string()))
        }
    }

    /// Whether every differential is conformal-weight homogeneous of its
    /// generator's weight.
    pub fn conformally_homogeneous(&self) -> bool {
        self.gen_ids().all(|g| {
            let w = self.gens[g.idx()].conformal_weight;
            self.diffs[g.idx()]
                .terms()
                .all(|(m, _)| self.monomial_conformal_weight(m) == w)
        })
    }

    /// Whether some differential has a constant (empty-monomial) term.
    pub fn has_constant_differential_term(&self) -> bool {
        self.diffs
            .iter()
            .any(|d| d.terms().any(|(m, _)| m.is_one()))
    }

    fn internal_grading_for_enumeration(&self) -> Result<()> {
        if !self.graded {
            return Err(Error::InfinitePiece(
                "presentation lacks a full internal grading; supply a total-degree cap".into(),
            ));
        }
        if let Some(g) = self.gens.iter().find(|g| g.internal_weight.unwrap() <= 0) {
            return Err(Error::InfinitePiece(format!(
                "generator {} has non-positive internal weight {}; finiteness cannot be certified",
                g.display_name(),
                g.internal_weight.unwrap()
            )));
        }
        Ok(())
    }

    /// All monomials of conformal weight `w` in the selected third grading,
    /// bucketed by cohomological degree. Canonically ordered within each
    /// bucket.
    pub fn column_bases(
        &self,
        w: u32,
        weighting: &Weighting,
    ) -> Result<BTreeMap<i32, Vec<Monomial>>> {
        let budget = match *weighting {
            Weighting::Internal(iw) => {
                self.internal_grading_for_enumeration()?;
                if iw < 0 {
                    return Ok(BTreeMap::new());
                }
                Budget::Internal(iw)
            }
            Weighting::Cap(cap) => Budget::Cap(cap),
        };
        let mut buckets: BTreeMap<i32, Vec<Monomial>> = BTreeMap::new();
        let mut stack: Vec<(GenId, u32)> = Vec::new();
        self.enumerate(0, w as i64, budget, 0, &mut stack, &mut buckets);
        for bucket in buckets.values_mut() {
            bucket.sort();
        }
        Ok(buckets)
    }

    fn enumerate(
        &self,
        idx: usize,
        rem_w: i64,
        budget: Budget,
        deg: i32,
        stack: &mut Vec<(GenId, u32)>,
        out: &mut BTreeMap<i32, Vec<Monomial>>,
    ) {
        if rem_w < 0 {
            return;
        }
        if idx == self.gens.len() {
            let complete = rem_w == 0
                && match budget {
                    Budget::Internal(rem) => rem == 0,
                    Budget::Cap(_) => true,
                };
            if complete {
                out.entry(deg).or_default().push(Monomial {
                    factors: stack.clone(),
                });
            }
            return;
        }
        let g = &self.gens[idx];
        let mut e_max = match budget {
            Budget::Internal(rem) => {
                let iw = g.internal_weight.unwrap();
                (rem / iw) as u32
            }
            Budget::Cap(rem) => rem,
        };
        if g.conformal_weight > 0 {
            e_max = e_max.min((rem_w / g.conformal_weight as i64) as u32);
        }
        if g.is_odd() {
            e_max = e_max.min(1);
        }
        for e in 0..=e_max {
            let next_budget = match budget {
                Budget::Internal(rem) => {
                    Budget::Internal(rem - e as i64 * g.internal_weight.unwrap())
                }
                Budget::Cap(rem) => Budget::Cap(rem - e),
            };
            if e > 0 {
                stack.push((GenId(idx as u32), e));
            }
            self.enumerate(
                idx + 1,
                rem_w - e as i64 * g.conformal_weight as i64,
                next_budget,
                deg + e as i32 * g.coh_degree,
                stack,
                out,
            );
            if e > 0 {
                stack.pop();
            }
        }
    }

    /// The complete, canonically ordered monomial basis of the bigraded
    /// piece (degree `d`, conformal weight `w`, third grading per
    /// `weighting`). Refuses pieces whose finiteness cannot be certified.
    pub fn bidegree_basis(&self, d: i32, w: u32, weighting: &Weighting) -> Result<Vec<Monomial>> {
        let mut buckets = self.column_bases(w, weighting)?;
        Ok(buckets.remove(&d).unwrap_or_default())
    }

    pub fn monomial_string(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        m.factors
            .iter()
            .map(|&(g, e)| {
                let name = self.gens[g.idx()].display_name();
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Renders a polynomial in the expression grammar accepted back by the
    /// tool's parser.
    pub fn polynomial_string(&self, p: &Polynomial<C>) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in p.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_is_one = abs.is_one();
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if coeff_is_one {
                out.push_str(&self.monomial_string(m));
            } else {
                out.push_str(&format!("{}*{}", abs, self.monomial_string(m)));
            }
        }
        out
    }

    /// Structural comparison under the order-preserving generator
    /// correspondence: same graded data and differentials, with names
    /// compared only when `match_names` is set.
    pub fn structurally_equal(&self, other: &Presentation<C>, match_names: bool) -> bool {
        if self.gens.len() != other.gens.len() {
            return false;
        }
        for (a, b) in self.gens.iter().zip(&other.gens) {
            if a.coh_degree != b.coh_degree
                || a.conformal_weight != b.conformal_weight
                || a.internal_weight != b.internal_weight
            {
                return false;
            }
            if match_names && a.display_name() != b.display_name() {
                return false;
            }
        }
        self.diffs == other.diffs
    }
}

#[derive(Clone, Copy)]
enum Budget {
    Internal(i64),
    Cap(u32),
}

fn apply_sign<C: Scalar>(c: C, sign: i8) -> C {
    match sign {
        1 => c,
        -1 => -c,
        _ => C::zero(),
    }
}

pub(crate) fn scalar_from_u32<C: Scalar>(n: u32) -> C {
    let mut acc = C::zero();
    for _ in 0..n {
        acc = acc + C::one();
    }
    acc
}
