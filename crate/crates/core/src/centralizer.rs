//! Bounded-degree derived centralizers of linear combinations of
//! generators.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::circ;
use crate::lie::{Algebra, BasisMonomial, LieElement, LieError, Multidegree};
use crate::linalg::{self, Vector};
use crate::poly::{AssocMonomial, AssocPoly};
use crate::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CentralizerError {
    #[error("the element has a nonzero derived part")]
    NotLinear,
    #[error("coefficient of x{0} is zero")]
    ZeroCoefficient(usize),
    #[error("generator x{0} is listed twice")]
    RepeatedIndex(usize),
    #[error("{0} indices but {1} coefficients")]
    LengthMismatch(usize, usize),
    #[error("degree bound must be at least 2, got {0}")]
    DegreeBound(u32),
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// A basis of `{h ∈ M' : [h,g] = 0, deg h ≤ d}` for a linear element `g`.
#[derive(Debug, Clone)]
pub struct CentralizerSlice {
    pub degree_bound: u32,
    pub element: LieElement,
    pub basis: Vec<LieElement>,
}

impl CentralizerSlice {
    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Number of basis elements in each multidegree; inhomogeneous basis
    /// elements are not counted.
    pub fn counts_by_multidegree(&self) -> BTreeMap<Multidegree, usize> {
        let mut out = BTreeMap::new();
        for h in &self.basis {
            if let Some(d) = h.multidegree() {
                *out.entry(d).or_insert(0) += 1;
            }
        }
        out
    }
}

fn column_key(d: &Multidegree, involved: &BTreeSet<usize>) -> (Vec<u32>, u32) {
    let mut rest = d.counts().to_vec();
    let mut sum = 0;
    for &i in involved {
        sum += rest[i];
        rest[i] = 0;
    }
    (rest, sum)
}

/// Solves `[h, g] = 0` for `h` in the span of `columns`.
fn kernel(alg: &Arc<Algebra>, columns: &[BasisMonomial], g: &LieElement) -> Vec<LieElement> {
    let mut row_of: BTreeMap<BasisMonomial, usize> = BTreeMap::new();
    let mut images = Vec::with_capacity(columns.len());
    for m in columns {
        let img = LieElement::from_monomial(alg, m).bracket(g).expect("same algebra");
        for (b, _) in img.derived_terms() {
            let next = row_of.len();
            row_of.entry(b.clone()).or_insert(next);
        }
        images.push(img);
    }
    let mut rows = vec![vec![BigRational::zero(); columns.len()]; row_of.len()];
    for (c, img) in images.iter().enumerate() {
        for (b, v) in img.derived_terms() {
            rows[row_of[b]][c] = BigRational::from_integer(v.clone());
        }
    }
    linalg::nullspace(&rows, columns.len())
        .into_iter()
        .map(|v| {
            let ints = linalg::clear_denominators(&v);
            let terms = columns.iter().cloned().zip(ints).filter(|(_, c)| !c.is_zero());
            LieElement::from_derived_terms(alg, terms)
        })
        .collect()
}

/// The derived centralizer of the linear element `g` up to total degree
/// `d`, solved separately on each class of multidegrees the bracket with
/// `g` can mix.
pub fn derived_centralizer(g: &LieElement, d: u32) -> Result<CentralizerSlice, CentralizerError> {
    if !g.is_linear() {
        return Err(CentralizerError::NotLinear);
    }
    if d < 2 {
        return Err(CentralizerError::DegreeBound(d));
    }
    let alg = g.algebra();
    let n = alg.generator_count();
    let involved: BTreeSet<usize> = g.linear_terms().map(|(i, _)| i).collect();
    let mut basis = Vec::new();
    for k in 2..=d {
        let mut blocks: BTreeMap<(Vec<u32>, u32), Vec<BasisMonomial>> = BTreeMap::new();
        for delta in Multidegree::all_of_total(n, k) {
            let monomials = alg.basis_monomials(&delta);
            if monomials.is_empty() {
                continue;
            }
            blocks
                .entry(column_key(&delta, &involved))
                .or_default()
                .extend(monomials);
        }
        for columns in blocks.values() {
            basis.extend(kernel(alg, columns, g));
        }
    }
    Ok(CentralizerSlice {
        degree_bound: d,
        element: g.clone(),
        basis,
    })
}

fn combination(alg: &Arc<Algebra>, indices: &[usize], coefficients: &[BigInt]) -> Result<LieElement, CentralizerError> {
    if indices.len() != coefficients.len() {
        return Err(CentralizerError::LengthMismatch(indices.len(), coefficients.len()));
    }
    let mut seen = BTreeSet::new();
    for (&i, c) in indices.iter().zip(coefficients) {
        alg.check_generator(i)?;
        if !seen.insert(i) {
            return Err(CentralizerError::RepeatedIndex(i));
        }
        if c.is_zero() {
            return Err(CentralizerError::ZeroCoefficient(i));
        }
    }
    let terms: Vec<(usize, BigInt)> = indices.iter().copied().zip(coefficients.iter().cloned()).collect();
    Ok(LieElement::linear_combination(alg, &terms)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionReport {
    /// Dimension of the centralizer of the combination.
    pub combined: usize,
    /// Dimension of the intersection of the single-generator centralizers.
    pub intersection: usize,
    pub holds: bool,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Compares the centralizer of `Σ α_j x_{i_j}` with the intersection of the
/// centralizers of the individual generators as subspaces.
pub fn check_intersection_theorem(
    alg: &Arc<Algebra>,
    indices: &[usize],
    coefficients: &[BigInt],
    d: u32,
) -> Result<IntersectionReport, CentralizerError> {
    let g = combination(alg, indices, coefficients)?;
    let combined = derived_centralizer(&g, d)?;
    let singles = indices
        .iter()
        .map(|&i| derived_centralizer(&LieElement::generator(alg, i)?, d))
        .collect::<Result<Vec<_>, _>>()?;

    // Coordinates are basis monomials; vectors sharing a coordinate are
    // linked so that the comparison splits into independent pieces.
    let mut coord: BTreeMap<BasisMonomial, usize> = BTreeMap::new();
    let spaces: Vec<&[LieElement]> = std::iter::once(combined.basis.as_slice())
        .chain(singles.iter().map(|s| s.basis.as_slice()))
        .collect();
    for space in &spaces {
        for h in space.iter() {
            for (m, _) in h.derived_terms() {
                let next = coord.len();
                coord.entry(m.clone()).or_insert(next);
            }
        }
    }
    let mut parent: Vec<usize> = (0..coord.len()).collect();
    for space in &spaces {
        for h in space.iter() {
            let ids: Vec<usize> = h.derived_terms().map(|(m, _)| coord[m]).collect();
            for w in ids.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a] = b;
            }
        }
    }
    let mut local: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
    for c in 0..coord.len() {
        let root = find(&mut parent, c);
        let piece = local.entry(root).or_default();
        let next = piece.len();
        piece.insert(c, next);
    }
    let vectorize = |h: &LieElement, parent: &mut [usize]| -> (usize, Vector) {
        let first = h.derived_terms().next().map(|(m, _)| coord[m]).expect("nonzero");
        let root = find(parent, first);
        let piece = &local[&root];
        let mut v = vec![BigRational::zero(); piece.len()];
        for (m, c) in h.derived_terms() {
            v[piece[&coord[m]]] = BigRational::from_integer(c.clone());
        }
        (root, v)
    };
    let mut pieces: BTreeMap<usize, Vec<Vec<Vector>>> = BTreeMap::new();
    for (s, space) in spaces.iter().enumerate() {
        for h in space.iter() {
            let (root, v) = vectorize(h, &mut parent);
            let entry = pieces.entry(root).or_insert_with(|| vec![Vec::new(); spaces.len()]);
            entry[s].push(v);
        }
    }
    let mut combined_dim = 0;
    let mut inter_dim = 0;
    let mut holds = true;
    for (root, lists) in &pieces {
        let width = local[root].len();
        let mut inter = linalg::row_space(&lists[1]);
        for other in &lists[2..] {
            inter = linalg::intersection(&inter, other, width);
        }
        let a = linalg::rank(&lists[0]);
        let mut both = lists[0].clone();
        both.extend(inter.iter().cloned());
        combined_dim += a;
        inter_dim += inter.len();
        if a != inter.len() || linalg::rank(&both) != a {
            holds = false;
        }
    }
    Ok(IntersectionReport {
        combined: combined_dim,
        intersection: inter_dim,
        holds,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleCase {
    /// `x_i` and `x_j` are adjacent: the centralizer should vanish.
    Adjacent,
    /// `x_i` and `x_j` are at circular distance at least two.
    Separated,
}

#[derive(Debug, Clone)]
pub struct CycleCentralizerReport {
    pub case: CycleCase,
    pub dimension: usize,
    pub counts: BTreeMap<Multidegree, usize>,
    /// Every monomial of every basis element avoids exactly `x_i, x_j`.
    pub support_ok: bool,
    /// Every basis element is `[x_{i-1}, x_{i+1}].f` for a polynomial `f`.
    pub form_ok: bool,
}

impl CycleCentralizerReport {
    pub fn holds(&self) -> bool {
        match self.case {
            CycleCase::Adjacent => self.dimension == 0,
            CycleCase::Separated => self.support_ok && self.form_ok,
        }
    }
}

/// Finds an integer polynomial `f` and a nonzero integer `c` with
/// `u.f = c·h`, if there are any.
fn as_multiple(u: &LieElement, h: &LieElement) -> Option<(AssocPoly, BigInt)> {
    let n = u.algebra().generator_count();
    let head = u.multidegree()?;
    let mut parts: Vec<(AssocMonomial, BigRational)> = Vec::new();
    for (d, part) in h.homogeneous_components() {
        let w = (0..n)
            .map(|i| d.get(i).checked_sub(head.get(i)))
            .collect::<Option<Vec<u32>>>()?;
        let w = AssocMonomial::new(w);
        let image = u.act(&AssocPoly::monomial(w.clone(), 1)).ok()?;
        let (m, c) = image.derived_terms().next()?;
        let ratio = BigRational::new(part.coefficient(m), c.clone());
        if part.scale(ratio.denom()) != image.scale(ratio.numer()) {
            return None;
        }
        parts.push((w, ratio));
    }
    let lcm = parts
        .iter()
        .fold(BigInt::one(), |acc, (_, r)| num_integer::Integer::lcm(&acc, r.denom()));
    let mut f = AssocPoly::zero();
    for (w, r) in parts {
        f.add_term(w, (r * BigRational::from_integer(lcm.clone())).to_integer());
    }
    (u.act(&f).ok()? == h.scale(&lcm)).then_some((f, lcm))
}

/// Verifies the structure of the derived centralizer of `x_i + x_j` in the
/// cycle algebra `M(C_n)`.
pub fn classify_cycle_centralizer(
    n: usize,
    i: usize,
    j: usize,
    d: u32,
) -> Result<CycleCentralizerReport, CentralizerError> {
    if n < 4 {
        return Err(CentralizerError::Precondition(format!(
            "cycle needs at least 4 vertices, got {n}"
        )));
    }
    if i >= n || j >= n || i == j {
        return Err(CentralizerError::Precondition(format!(
            "need two distinct vertices of C_{n}, got {i} and {j}"
        )));
    }
    let graph = Graph::cycle(n).map_err(|e| CentralizerError::Precondition(e.to_string()))?;
    let alg = Algebra::new(graph);
    let g = combination(&alg, &[i, j], &[BigInt::one(), BigInt::one()])?;
    let slice = derived_centralizer(&g, d)?;
    let case = if circ(n, i, j) <= 1 {
        CycleCase::Adjacent
    } else {
        CycleCase::Separated
    };
    let mut support_ok = true;
    let mut form_ok = true;
    if case == CycleCase::Separated {
        let expected = crate::VertexSet::full(n).without(i).without(j);
        let u = LieElement::left_normed(&alg, &[(i + n - 1) % n, (i + 1) % n])?;
        for h in &slice.basis {
            if h.derived_terms().any(|(m, _)| m.support() != expected) {
                support_ok = false;
            }
            if as_multiple(&u, h).is_none() {
                form_ok = false;
            }
        }
    }
    Ok(CycleCentralizerReport {
        case,
        dimension: slice.dimension(),
        counts: slice.counts_by_multidegree(),
        support_ok,
        form_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn lin(alg: &Arc<Algebra>, s: &str) -> LieElement {
        alg.parse_element(s).unwrap()
    }

    #[test]
    fn cycle_five_examples() {
        let alg = Algebra::new(Graph::cycle(5).unwrap());
        assert!(derived_centralizer(&lin(&alg, "x0 + x1"), 6).unwrap().is_empty());
        let s = derived_centralizer(&lin(&alg, "x0 + x2"), 3).unwrap();
        assert_eq!(s.dimension(), 1);
        let expected = lin(&alg, "[x4,x1;x3]");
        assert!(s.basis[0] == expected || s.basis[0] == -&expected);
        assert!(derived_centralizer(&lin(&alg, "x0 + x2 + x4"), 6).unwrap().is_empty());
        assert_eq!(
            derived_centralizer(&lin(&alg, "[x0,x2]"), 3).unwrap_err(),
            CentralizerError::NotLinear
        );
    }

    #[test]
    fn slices_are_centralizing_and_match_oracle() {
        let graph = Graph::new(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let alg = Algebra::new(graph.clone());
        let g = lin(&alg, "2*x1 - x3");
        let s = derived_centralizer(&g, 4).unwrap();
        for h in &s.basis {
            assert!(h.bracket(&g).unwrap().is_zero());
        }
        let terms = [(1, BigInt::from(2)), (3, BigInt::from(-1))];
        for k in 2..=4u32 {
            let ours = s.basis.iter().filter(|h| h.max_degree() == k as usize).count();
            assert_eq!(ours, oracle::centralizer_dimension(&graph, &terms, k), "degree {k}");
        }
    }

    #[test]
    fn intersection_examples() {
        let alg = Algebra::new(Graph::cycle(5).unwrap());
        let r = check_intersection_theorem(&alg, &[0, 2], &[BigInt::from(2), BigInt::from(3)], 4).unwrap();
        assert!(r.holds);
        assert_eq!(r.combined, r.intersection);
        assert!(
            check_intersection_theorem(&alg, &[1], &[BigInt::from(5)], 4)
                .unwrap()
                .holds
        );
        assert_eq!(
            check_intersection_theorem(&alg, &[1, 2], &[BigInt::from(5), BigInt::zero()], 4).unwrap_err(),
            CentralizerError::ZeroCoefficient(2)
        );
    }

    #[test]
    fn cycle_classification() {
        let r = classify_cycle_centralizer(5, 0, 2, 3).unwrap();
        assert_eq!(r.case, CycleCase::Separated);
        assert!(r.holds());
        assert!(r.dimension > 0);
        let r = classify_cycle_centralizer(6, 0, 3, 4).unwrap();
        assert!(r.holds());
        let r = classify_cycle_centralizer(5, 0, 1, 4).unwrap();
        assert_eq!(r.case, CycleCase::Adjacent);
        assert_eq!(r.dimension, 0);
        assert!(classify_cycle_centralizer(3, 0, 1, 4).is_err());
    }
}
