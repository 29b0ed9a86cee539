use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Algebra, BasisMonomial, GluedMultidegree, LieError, Multidegree, RawExpr};
use crate::graph::VertexSet;
use crate::poly::AssocPoly;

/// An element of `M(X;G)` in normal form: integer combination of
/// generators (the linear part) and basis monomials (the derived part).
#[derive(Clone)]
pub struct LieElement {
    alg: Arc<Algebra>,
    linear: BTreeMap<usize, BigInt>,
    derived: BTreeMap<BasisMonomial, BigInt>,
}

fn add_into<K: Ord + Clone>(map: &mut BTreeMap<K, BigInt>, key: K, c: BigInt) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            map.insert(key, c);
        }
    }
}

fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl LieElement {
    pub fn zero(alg: &Arc<Algebra>) -> Self {
        LieElement {
            alg: Arc::clone(alg),
            linear: BTreeMap::new(),
            derived: BTreeMap::new(),
        }
    }

    pub fn generator(alg: &Arc<Algebra>, i: usize) -> Result<Self, LieError> {
        alg.check_generator(i)?;
        let mut e = LieElement::zero(alg);
        e.linear.insert(i, BigInt::one());
        Ok(e)
    }

    /// Sum of `coeff * x_i`.
    pub fn linear_combination(alg: &Arc<Algebra>, terms: &[(usize, BigInt)]) -> Result<Self, LieError> {
        let mut e = LieElement::zero(alg);
        for (i, c) in terms {
            alg.check_generator(*i)?;
            add_into(&mut e.linear, *i, c.clone());
        }
        Ok(e)
    }

    /// Normal form of the left-normed monomial on `letters` (at least one).
    pub fn left_normed(alg: &Arc<Algebra>, letters: &[usize]) -> Result<Self, LieError> {
        for &l in letters {
            alg.check_generator(l)?;
        }
        match letters {
            [] => Ok(LieElement::zero(alg)),
            [g] => LieElement::generator(alg, *g),
            [a, b, tail @ ..] => {
                let mut e = LieElement::zero(alg);
                for (m, s) in alg.reduce_left_normed(*a, *b, tail) {
                    add_into(&mut e.derived, m, BigInt::from(s));
                }
                Ok(e)
            }
        }
    }

    /// Builds a derived element from monomials already known to be basis
    /// monomials of `alg`.
    pub(crate) fn from_derived_terms(
        alg: &Arc<Algebra>,
        terms: impl IntoIterator<Item = (BasisMonomial, BigInt)>,
    ) -> Self {
        let mut e = LieElement::zero(alg);
        for (m, c) in terms {
            add_into(&mut e.derived, m, c);
        }
        e
    }

    /// The basis monomial itself as an element.
    pub fn from_monomial(alg: &Arc<Algebra>, m: &BasisMonomial) -> Self {
        LieElement::from_derived_terms(alg, [(m.clone(), BigInt::one())])
    }

    pub fn from_expr(alg: &Arc<Algebra>, expr: &RawExpr) -> Result<Self, LieError> {
        Ok(match expr {
            RawExpr::Zero => LieElement::zero(alg),
            RawExpr::Gen(i) => LieElement::generator(alg, *i)?,
            RawExpr::Sum(ts) => {
                let mut acc = LieElement::zero(alg);
                for t in ts {
                    acc.add_assign(&LieElement::from_expr(alg, t)?);
                }
                acc
            }
            RawExpr::Scale(c, e) => LieElement::from_expr(alg, e)?.scale(c),
            RawExpr::Bracket(a, b) => LieElement::from_expr(alg, a)?.bracket(&LieElement::from_expr(alg, b)?)?,
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn linear_terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.linear.iter().map(|(i, c)| (*i, c))
    }

    pub fn derived_terms(&self) -> impl Iterator<Item = (&BasisMonomial, &BigInt)> {
        self.derived.iter()
    }

    pub fn linear_coefficient(&self, i: usize) -> BigInt {
        self.linear.get(&i).cloned().unwrap_or_default()
    }

    pub fn coefficient(&self, m: &BasisMonomial) -> BigInt {
        self.derived.get(m).cloned().unwrap_or_default()
    }

    pub fn linear_part(&self) -> LieElement {
        LieElement {
            alg: Arc::clone(&self.alg),
            linear: self.linear.clone(),
            derived: BTreeMap::new(),
        }
    }

    pub fn derived_part(&self) -> LieElement {
        LieElement {
            alg: Arc::clone(&self.alg),
            linear: BTreeMap::new(),
            derived: self.derived.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.linear.is_empty() && self.derived.is_empty()
    }

    pub fn is_linear(&self) -> bool {
        self.derived.is_empty()
    }

    pub fn is_derived(&self) -> bool {
        self.linear.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.linear.len() + self.derived.len()
    }

    /// Generators occurring in any term.
    pub fn support(&self) -> VertexSet {
        let mut s: VertexSet = self.linear.keys().copied().collect();
        for m in self.derived.keys() {
            s = s.union(m.support());
        }
        s
    }

    pub fn max_degree(&self) -> usize {
        let d = self.derived.keys().map(|m| m.degree()).max().unwrap_or(0);
        if d == 0 && !self.linear.is_empty() {
            1
        } else {
            d
        }
    }

    fn check_same(&self, other: &LieElement) -> Result<(), LieError> {
        if same_algebra(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(LieError::AlgebraMismatch)
        }
    }

    pub fn equal(&self, other: &LieElement) -> Result<bool, LieError> {
        self.check_same(other)?;
        Ok(self.linear == other.linear && self.derived == other.derived)
    }

    pub fn add_assign(&mut self, other: &LieElement) {
        assert!(same_algebra(&self.alg, &other.alg), "elements of different algebras");
        for (i, c) in &other.linear {
            add_into(&mut self.linear, *i, c.clone());
        }
        for (m, c) in &other.derived {
            add_into(&mut self.derived, m.clone(), c.clone());
        }
    }

    pub fn checked_add(&self, other: &LieElement) -> Result<LieElement, LieError> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &LieElement) -> Result<LieElement, LieError> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.add_assign(&-other);
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> LieElement {
        if c.is_zero() {
            return LieElement::zero(&self.alg);
        }
        LieElement {
            alg: Arc::clone(&self.alg),
            linear: self.linear.iter().map(|(i, v)| (*i, v * c)).collect(),
            derived: self.derived.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Adds `c * [u.first, u.second].(u.tail + extra)` in normal form.
    fn push_extended(&mut self, u: &BasisMonomial, extra: &[usize], c: &BigInt) {
        let mut tail = u.tail().to_vec();
        tail.extend_from_slice(extra);
        for (m, s) in self.alg.reduce_left_normed(u.first(), u.second(), &tail) {
            add_into(&mut self.derived, m, c * s);
        }
    }

    /// The Lie product; products of two derived terms vanish.
    pub fn bracket(&self, other: &LieElement) -> Result<LieElement, LieError> {
        self.check_same(other)?;
        let mut out = LieElement::zero(&self.alg);
        for (&a, ca) in &self.linear {
            for (&b, cb) in &other.linear {
                let c = ca * cb;
                for (m, s) in self.alg.reduce_left_normed(a, b, &[]) {
                    add_into(&mut out.derived, m, &c * s);
                }
            }
        }
        for (u, cu) in &self.derived {
            for (&b, cb) in &other.linear {
                out.push_extended(u, &[b], &(cu * cb));
            }
        }
        for (&a, ca) in &self.linear {
            for (v, cv) in &other.derived {
                out.push_extended(v, &[a], &-(ca * cv));
            }
        }
        Ok(out)
    }

    /// The module action `u.f` of a commutative polynomial on a derived
    /// element.
    pub fn act(&self, f: &AssocPoly) -> Result<LieElement, LieError> {
        if !self.is_derived() {
            return Err(LieError::NonzeroLinearPart);
        }
        let n = self.alg.generator_count();
        if f.variable_bound() > n {
            return Err(LieError::UnknownGenerator {
                index: f.variable_bound() - 1,
                n,
            });
        }
        let mut out = LieElement::zero(&self.alg);
        for (w, cw) in f.terms() {
            let letters = w.letters();
            for (u, cu) in &self.derived {
                out.push_extended(u, &letters, &(cw * cu));
            }
        }
        Ok(out)
    }

    /// Groups terms by multidegree; parts are nonzero and sum to `self`.
    pub fn homogeneous_components(&self) -> Vec<(Multidegree, LieElement)> {
        let n = self.alg.generator_count();
        let mut parts: BTreeMap<Multidegree, LieElement> = BTreeMap::new();
        for (&i, c) in &self.linear {
            let e = parts
                .entry(Multidegree::unit(n, i))
                .or_insert_with(|| LieElement::zero(&self.alg));
            e.linear.insert(i, c.clone());
        }
        for (m, c) in &self.derived {
            let e = parts.entry(m.mdeg(n)).or_insert_with(|| LieElement::zero(&self.alg));
            e.derived.insert(m.clone(), c.clone());
        }
        parts.into_iter().collect()
    }

    /// The common multidegree of all terms, if there is exactly one.
    pub fn multidegree(&self) -> Option<Multidegree> {
        let comps = self.homogeneous_components();
        match comps.as_slice() {
            [(d, _)] => Some(d.clone()),
            _ => None,
        }
    }

    /// Glued decomposition for the merge of `x_{n-1}` onto `x_{n-2}`.
    pub fn glued_decomposition(&self) -> Result<Vec<GluedComponent>, LieError> {
        let n = self.alg.generator_count();
        if n < 2 {
            return Err(LieError::InvalidPair(n.wrapping_sub(1), n.wrapping_sub(2)));
        }
        self.glued_decomposition_for(n - 1, n - 2)
    }

    /// Splits the derived element into components sharing a glued
    /// multidegree and a first letter; inside a component the monomials are
    /// indexed by how many times `removed` occurs.
    pub fn glued_decomposition_for(&self, removed: usize, kept: usize) -> Result<Vec<GluedComponent>, LieError> {
        let n = self.alg.generator_count();
        if removed >= n || kept >= n || removed == kept {
            return Err(LieError::InvalidPair(removed, kept));
        }
        if !self.is_derived() {
            return Err(LieError::NonzeroLinearPart);
        }
        let mut comps: BTreeMap<(GluedMultidegree, usize), GluedComponent> = BTreeMap::new();
        for (m, c) in &self.derived {
            let mdeg = m.mdeg(n);
            let glued = mdeg.glued(removed, kept);
            let eps = (mdeg.get(removed) + mdeg.get(kept)) as usize;
            let j = mdeg.get(removed) as usize;
            let comp = comps
                .entry((glued.clone(), m.first()))
                .or_insert_with(|| GluedComponent {
                    glued,
                    head: m.first(),
                    removed,
                    kept,
                    coefficients: vec![BigInt::zero(); eps + 1],
                    monomials: vec![None; eps + 1],
                });
            comp.coefficients[j] = c.clone();
            comp.monomials[j] = Some(m.clone());
        }
        Ok(comps.into_values().collect())
    }

    /// Rewrites `self` on the basis of another order of the same graph.
    pub fn reexpress(&self, target: &Arc<Algebra>) -> Result<LieElement, LieError> {
        if self.alg.graph() != target.graph() {
            return Err(LieError::GraphMismatch);
        }
        let mut out = LieElement::zero(target);
        out.linear = self.linear.clone();
        for (m, c) in &self.derived {
            for (b, s) in target.reduce_left_normed(m.first(), m.second(), m.tail()) {
                add_into(&mut out.derived, b, c * s);
            }
        }
        Ok(out)
    }

    pub fn to_expr(&self) -> RawExpr {
        let mut terms = Vec::with_capacity(self.term_count());
        for (&i, c) in &self.linear {
            terms.push(RawExpr::scale(c.clone(), RawExpr::Gen(i)));
        }
        for (m, c) in &self.derived {
            let letters: Vec<usize> = m.letters().collect();
            terms.push(RawExpr::scale(c.clone(), RawExpr::left_normed(&letters)));
        }
        if terms.is_empty() {
            RawExpr::Zero
        } else {
            RawExpr::Sum(terms)
        }
    }

    /// Prints with generator `k` named `x{labels[k]}`.
    pub fn display_with(&self, labels: &[usize]) -> String {
        self.render(Some(labels))
    }

    fn render(&self, labels: Option<&[usize]>) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let name = |v: usize| match labels {
            Some(l) => format!("x{}", l[v]),
            None => format!("x{v}"),
        };
        let mut out = String::new();
        let mut first = true;
        let mut push = |c: &BigInt, body: String| {
            let negative = c.is_negative();
            if first {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            first = false;
            let abs = c.abs();
            if !abs.is_one() {
                out.push_str(&format!("{abs}*"));
            }
            out.push_str(&body);
        };
        for (&i, c) in &self.linear {
            push(c, name(i));
        }
        for (m, c) in &self.derived {
            push(c, m.fmt_with(labels));
        }
        out
    }
}

impl PartialEq for LieElement {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.linear == other.linear && self.derived == other.derived
    }
}

impl Eq for LieElement {}

impl Hash for LieElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.linear.hash(state);
        self.derived.hash(state);
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(None))
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieElement({})", self.render(None))
    }
}

impl Add for &LieElement {
    type Output = LieElement;
    fn add(self, rhs: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &LieElement {
    type Output = LieElement;
    fn sub(self, rhs: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_assign(&-rhs);
        out
    }
}

impl Neg for &LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        self.scale(&BigInt::from(-1))
    }
}

/// One block `Σ_j α_j [u_{i,j}]` of a glued decomposition: fixed glued
/// multidegree and first letter, `j` counting occurrences of the removed
/// generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluedComponent {
    pub glued: GluedMultidegree,
    pub head: usize,
    pub removed: usize,
    pub kept: usize,
    /// `coefficients[j] = α_j`, length `ε + 1`.
    pub coefficients: Vec<BigInt>,
    /// `monomials[j]` is the basis monomial carrying `α_j` when it is nonzero.
    pub monomials: Vec<Option<BasisMonomial>>,
}

impl GluedComponent {
    /// Combined count `ε` of the merged pair.
    pub fn epsilon(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `p(λ) = Σ_j α_j λ^j`.
    pub fn lambda_polynomial(&self) -> AssocPoly {
        AssocPoly::univariate(&self.coefficients)
    }

    pub fn to_element(&self, alg: &Arc<Algebra>) -> LieElement {
        let mut e = LieElement::zero(alg);
        for (m, c) in self.monomials.iter().zip(&self.coefficients) {
            if let Some(m) = m {
                add_into(&mut e.derived, m.clone(), c.clone());
            }
        }
        e
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::lie::parse_expr;

    fn nf(alg: &Arc<Algebra>, s: &str) -> LieElement {
        alg.parse_element(s).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let c4 = Algebra::new(Graph::cycle(4).unwrap());
        assert!(nf(&c4, "[x1,x1]").is_zero());
        assert!(nf(&c4, "[x0,x1]").is_zero());

        let free = Algebra::new(Graph::edgeless(3).unwrap());
        let lhs = nf(&free, "[[x1,x2],x0]");
        let rhs = nf(&free, "[x1,x0;x2] - [x2,x0;x1]");
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "[x1,x0;x2] - [x2,x0;x1]");

        let c5 = Algebra::new(Graph::cycle(5).unwrap());
        assert!(nf(&c5, "[[x0,x2],x1]").is_zero());
        assert!(!nf(&c5, "[[x0,x2],x3]").is_zero());
    }

    #[test]
    fn unknown_generator() {
        let c4 = Algebra::new(Graph::cycle(4).unwrap());
        assert!(matches!(
            c4.parse_element("[x0,x7]"),
            Err(LieError::UnknownGenerator { index: 7, n: 4 })
        ));
    }

    #[test]
    fn bracket_examples() {
        let c3 = Algebra::new(Graph::cycle(3).unwrap());
        let x0 = LieElement::generator(&c3, 0).unwrap();
        let x2 = LieElement::generator(&c3, 2).unwrap();
        assert!(x0.bracket(&x0).unwrap().is_zero());
        assert!(x0.bracket(&x2).unwrap().is_zero());

        let free = Algebra::new(Graph::edgeless(3).unwrap());
        let a = nf(&free, "[x1,x0]");
        let b = nf(&free, "[x2,x0]");
        assert!(a.bracket(&b).unwrap().is_zero());

        let other = Algebra::new(Graph::edgeless(3).unwrap());
        let c = LieElement::generator(&other, 1).unwrap();
        // equal-valued algebras are interchangeable
        assert!(a.bracket(&c).is_ok());
        let c4 = Algebra::new(Graph::cycle(4).unwrap());
        let d = LieElement::generator(&c4, 1).unwrap();
        assert_eq!(a.bracket(&d), Err(LieError::AlgebraMismatch));
    }

    #[test]
    fn action_examples() {
        let free = Algebra::new(Graph::edgeless(4).unwrap());
        let u = nf(&free, "[x1,x0]");
        assert_eq!(
            u.act(&AssocPoly::parse("x2").unwrap()).unwrap(),
            nf(&free, "[[x1,x0],x2]")
        );
        assert_eq!(
            u.act(&AssocPoly::parse("x2*x3").unwrap()).unwrap(),
            u.act(&AssocPoly::parse("x3*x2").unwrap()).unwrap()
        );
        assert_eq!(
            u.act(&AssocPoly::parse("x2*x3").unwrap()).unwrap(),
            nf(&free, "[x1,x0,x3,x2]")
        );
        let c4 = Algebra::new(Graph::cycle(4).unwrap());
        let v = nf(&c4, "[x2,x0]");
        assert!(v.act(&AssocPoly::parse("x1").unwrap()).unwrap().is_zero());
        let g = nf(&c4, "x1");
        assert_eq!(
            g.act(&AssocPoly::parse("x1").unwrap()),
            Err(LieError::NonzeroLinearPart)
        );
    }

    #[test]
    fn homogeneous_split() {
        let alg = Algebra::new(Graph::edgeless(3).unwrap());
        let g = nf(&alg, "x0 + [x1,x0]");
        let parts = g.homogeneous_components();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0.counts(), &[1, 0, 0]);
        assert_eq!(parts[1].0.counts(), &[1, 1, 0]);
        let total = parts.iter().fold(LieElement::zero(&alg), |acc, (_, p)| &acc + p);
        assert_eq!(total, g);
        assert_eq!(nf(&alg, "[x2,x0;x1]").homogeneous_components().len(), 1);
        assert!(LieElement::zero(&alg).homogeneous_components().is_empty());
    }

    #[test]
    fn glued_components() {
        let alg = Algebra::new(Graph::edgeless(4).unwrap());
        // [u_{1,0}] = [x1,x0;x2], [u_{1,1}] = [x1,x0;x3]: same glued mdeg, head x1
        let g = nf(&alg, "2*[x1,x0;x2] + 3*[x1,x0;x3]");
        let comps = g.glued_decomposition().unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].coefficients, vec![BigInt::from(2), BigInt::from(3)]);
        assert_eq!(comps[0].glued.counts(), &[1, 1, 1]);

        let single = nf(&alg, "[x1,x0;x2]").glued_decomposition().unwrap();
        assert_eq!(single[0].coefficients, vec![BigInt::one(), BigInt::zero()]);

        let two_heads = nf(&alg, "[x1,x0;x2] + [x2,x0;x1]").glued_decomposition().unwrap();
        assert_eq!(two_heads.len(), 2);

        assert_eq!(nf(&alg, "x0").glued_decomposition(), Err(LieError::NonzeroLinearPart));
    }

    #[test]
    fn printing_roundtrip() {
        let alg = Algebra::new(Graph::edgeless(4).unwrap());
        let e = nf(&alg, "2*[x2,x0;x1] - x3");
        assert_eq!(e.term_count(), 2);
        assert_eq!(e.to_string(), "-x3 + 2*[x2,x0;x1]");
        assert_eq!(nf(&alg, &e.to_string()), e);
        assert_eq!(nf(&alg, "[x0,x0]").to_string(), "0");
        let back = LieElement::from_expr(&alg, &parse_expr(&e.to_string()).unwrap()).unwrap();
        assert_eq!(back.to_string(), e.to_string());
    }

    #[test]
    fn reexpress_preserves_zero_and_degree() {
        let g = Graph::cycle(5).unwrap();
        let asc = Algebra::new(g.clone());
        let rev = Algebra::with_order(
            g,
            super::super::GeneratorOrder::from_sequence(vec![4, 3, 2, 1, 0]).unwrap(),
        )
        .unwrap();
        let e = nf(&asc, "[x3,x0;x1,x1] - 2*[x2,x4;x0]");
        let r = e.reexpress(&rev).unwrap();
        assert_eq!(r.reexpress(&asc).unwrap(), e);
        let degs: Vec<_> = e.homogeneous_components().into_iter().map(|(d, _)| d).collect();
        let rdegs: Vec<_> = r.homogeneous_components().into_iter().map(|(d, _)| d).collect();
        assert_eq!(degs, rdegs);
    }
}
