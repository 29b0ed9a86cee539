//! Sentences separating cycle algebras, and the merging homomorphisms
//! `φ_λ` behind compaction.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{circ, Graph, GraphError, VertexSet};
use crate::lie::{is_basis_monomial, Algebra, BasisMonomial, GeneratorOrder, GluedComponent, LieElement, LieError};
use crate::poly::horner;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivalenceError {
    #[error("the sentence needs at least {min} variables, got {got}")]
    TooFewVariables { min: usize, got: usize },
    #[error("assignment has {got} values for {expected} variables")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{0}")]
    Precondition(String),
    #[error("x{0} and x{1} do not have equal closed neighbourhoods")]
    NotMergeable(usize, usize),
    #[error("no class of vertices with equal closed neighbourhoods has two members")]
    NoMergeableClass,
    #[error("lambda must be a positive integer")]
    BadLambda,
    #[error("the element is zero")]
    ZeroElement,
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// One conjunct of `Θ(z_0, ..., z_{m-1})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// `[z_a, z_b] = 0`
    Commute(usize, usize),
    /// `[z_a, z_b] ≠ 0`
    Noncommute(usize, usize),
    /// `[[z_a, z_b], z_c] ≠ 0`
    Triple(usize, usize, usize),
}

impl Atom {
    fn variables(self) -> Vec<usize> {
        match self {
            Atom::Commute(a, b) | Atom::Noncommute(a, b) => vec![a, b],
            Atom::Triple(a, b, c) => vec![a, b, c],
        }
    }

    fn last_variable(self) -> usize {
        self.variables().into_iter().max().expect("atoms mention variables")
    }

    /// Evaluates the atom given which brackets of values vanish.
    fn holds(
        self,
        pair_zero: &mut impl FnMut(usize, usize) -> bool,
        triple_zero: &mut impl FnMut(usize, usize, usize) -> bool,
    ) -> bool {
        match self {
            Atom::Commute(a, b) => pair_zero(a, b),
            Atom::Noncommute(a, b) => !pair_zero(a, b),
            Atom::Triple(a, b, c) => !triple_zero(a, b, c),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Commute(a, b) => write!(f, "[z{a},z{b}]=0"),
            Atom::Noncommute(a, b) => write!(f, "[z{a},z{b}]!=0"),
            Atom::Triple(a, b, c) => write!(f, "[[z{a},z{b}],z{c}]!=0"),
        }
    }
}

/// The conjuncts of `Θ` on `m` variables, in the order they are checked.
pub fn theta_atoms(m: usize) -> Vec<Atom> {
    let mut out = Vec::new();
    for i in 0..m {
        out.push(Atom::Commute(i, (i + 1) % m));
    }
    for i in 0..m {
        for j in i + 1..m {
            if circ(m, i, j) > 1 {
                out.push(Atom::Noncommute(i, j));
            }
        }
    }
    for i in 0..m {
        let k = (i + 2) % m;
        for j in 0..m {
            if circ(m, i, j) * circ(m, k, j) != 1 {
                out.push(Atom::Triple(i, k, j));
            }
        }
    }
    out
}

/// `Θ` on `m` variables over a fixed algebra.
#[derive(Debug, Clone)]
pub struct ThetaInstance {
    alg: Arc<Algebra>,
    m: usize,
    atoms: Vec<Atom>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaOutcome {
    pub holds: bool,
    pub failed: Option<Atom>,
}

impl ThetaInstance {
    pub fn new(alg: &Arc<Algebra>, m: usize) -> Result<Self, EquivalenceError> {
        if m < 4 {
            return Err(EquivalenceError::TooFewVariables { min: 4, got: m });
        }
        Ok(ThetaInstance {
            alg: Arc::clone(alg),
            m,
            atoms: theta_atoms(m),
        })
    }

    pub fn variable_count(&self) -> usize {
        self.m
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }
}

/// Evaluates `Θ(g_0, ..., g_{m-1})`, reporting the first false conjunct.
pub fn eval_theta(inst: &ThetaInstance, assignment: &[LieElement]) -> Result<ThetaOutcome, EquivalenceError> {
    if assignment.len() != inst.m {
        return Err(EquivalenceError::LengthMismatch {
            expected: inst.m,
            got: assignment.len(),
        });
    }
    for g in assignment {
        if g.algebra().as_ref() != inst.alg.as_ref() {
            return Err(LieError::AlgebraMismatch.into());
        }
    }
    let mut pair_zero = |a: usize, b: usize| assignment[a].bracket(&assignment[b]).expect("same algebra").is_zero();
    let mut triple_zero = |a: usize, b: usize, c: usize| {
        assignment[a]
            .bracket(&assignment[b])
            .and_then(|p| p.bracket(&assignment[c]))
            .expect("same algebra")
            .is_zero()
    };
    for &atom in &inst.atoms {
        if !atom.holds(&mut pair_zero, &mut triple_zero) {
            return Ok(ThetaOutcome {
                holds: false,
                failed: Some(atom),
            });
        }
    }
    Ok(ThetaOutcome {
        holds: true,
        failed: None,
    })
}

/// Vanishing pattern of the brackets of generators in `M(C_n)`.
struct BracketTable {
    n: usize,
    pair: Vec<bool>,
    triple: Vec<bool>,
}

impl BracketTable {
    fn new(alg: &Arc<Algebra>) -> Self {
        let n = alg.generator_count();
        let mut pair = vec![false; n * n];
        let mut triple = vec![false; n * n * n];
        for a in 0..n {
            for b in 0..n {
                pair[a * n + b] = LieElement::left_normed(alg, &[a, b]).expect("valid").is_zero();
                for c in 0..n {
                    triple[(a * n + b) * n + c] = LieElement::left_normed(alg, &[a, b, c]).expect("valid").is_zero();
                }
            }
        }
        BracketTable { n, pair, triple }
    }

    fn pair_zero(&self, a: usize, b: usize) -> bool {
        self.pair[a * self.n + b]
    }

    fn triple_zero(&self, a: usize, b: usize, c: usize) -> bool {
        self.triple[(a * self.n + b) * self.n + c]
    }

    fn atom_holds(&self, atom: Atom, j: &[usize]) -> bool {
        atom.holds(&mut |a, b| self.pair_zero(j[a], j[b]), &mut |a, b, c| {
            self.triple_zero(j[a], j[b], j[c])
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Every map `z_i ↦ x_{j_i}`, pruned by the conjuncts already decided.
    GeneratorAssignments,
    /// Index sequences with consecutive entries equal or adjacent, each
    /// refuted by a repeated index.
    JSequences,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub mode: SearchMode,
    pub n: usize,
    pub m: usize,
    /// `j_0, ..., j_{m-1}` of an assignment satisfying `Θ`.
    pub witness: Option<Vec<usize>>,
    /// Partial assignments examined (generator mode) or sequences
    /// enumerated (sequence mode).
    pub checked: u64,
    /// Sequences refuted by a repeated index (sequence mode only).
    pub repeated_index_refutations: u64,
}

impl SearchOutcome {
    pub fn exhausted(&self) -> bool {
        self.witness.is_none()
    }
}

/// Searches for `z_i = x_{j_i}` satisfying `Θ` on `m` variables in `M(C_n)`.
pub fn search_theta_witness(n: usize, m: usize, mode: SearchMode) -> Result<SearchOutcome, EquivalenceError> {
    if m < 5 {
        return Err(EquivalenceError::TooFewVariables { min: 5, got: m });
    }
    if n < 4 {
        return Err(EquivalenceError::Precondition(format!(
            "the cycle must have at least 4 vertices, got {n}; smaller cycles are separated by commutativity"
        )));
    }
    let alg = Algebra::new(Graph::cycle(n)?);
    let table = BracketTable::new(&alg);
    let atoms = theta_atoms(m);
    let mut out = SearchOutcome {
        mode,
        n,
        m,
        witness: None,
        checked: 0,
        repeated_index_refutations: 0,
    };
    match mode {
        SearchMode::GeneratorAssignments => {
            let mut by_last = vec![Vec::new(); m];
            for &a in &atoms {
                by_last[a.last_variable()].push(a);
            }
            let mut j = vec![0; m];
            if assign(0, &mut j, &by_last, &table, &mut out.checked) {
                out.witness = Some(j);
            }
        }
        SearchMode::JSequences => {
            let mut j = vec![0; m];
            walk_sequences(0, &mut j, &atoms, &table, &mut out);
        }
    }
    Ok(out)
}

fn assign(t: usize, j: &mut [usize], by_last: &[Vec<Atom>], table: &BracketTable, checked: &mut u64) -> bool {
    if t == j.len() {
        return true;
    }
    for v in 0..table.n {
        j[t] = v;
        *checked += 1;
        if by_last[t].iter().all(|&a| table.atom_holds(a, j)) && assign(t + 1, j, by_last, table, checked) {
            return true;
        }
    }
    false
}

/// A pair `i ≠ k` with `j_i = j_k` for which the conjunct
/// `[[z_{i-1}, z_{i+1}], z_k] ≠ 0` is required but fails.
fn repeated_index_refutation(j: &[usize], table: &BracketTable) -> Option<(usize, usize)> {
    let m = j.len();
    for i in 0..m {
        for k in 0..m {
            if k == i || j[k] != j[i] {
                continue;
            }
            let (a, b) = ((i + m - 1) % m, (i + 1) % m);
            let required = circ(m, a, k) * circ(m, b, k) != 1;
            if required && table.triple_zero(j[a], j[b], j[k]) {
                return Some((i, k));
            }
        }
    }
    None
}

fn walk_sequences(t: usize, j: &mut [usize], atoms: &[Atom], table: &BracketTable, out: &mut SearchOutcome) {
    if out.witness.is_some() {
        return;
    }
    let m = j.len();
    let n = table.n;
    if t == m {
        if circ(n, j[m - 1], j[0]) > 1 {
            return;
        }
        out.checked += 1;
        if repeated_index_refutation(j, table).is_some() {
            out.repeated_index_refutations += 1;
        } else if atoms.iter().all(|&a| table.atom_holds(a, j)) {
            out.witness = Some(j.to_vec());
        }
        return;
    }
    let choices: Vec<usize> = if t == 0 {
        (0..n).collect()
    } else {
        let p = j[t - 1];
        let mut c = vec![(p + n - 1) % n, p, (p + 1) % n];
        c.sort_unstable();
        c.dedup();
        c
    };
    for v in choices {
        j[t] = v;
        walk_sequences(t + 1, j, atoms, table, out);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Equal lengths: the algebras are isomorphic.
    Equivalent,
    /// `[g,h] = 0` for all `g,h` holds in `M(C_3)` and fails in the longer
    /// cycle at the given pair of generators.
    SeparatedByCommutativity { counterexample: (usize, usize) },
    /// `Φ(m)` holds in the longer cycle through the identity assignment and
    /// has no generator witness in the shorter one.
    SeparatedByTheta { m: usize, search: SearchOutcome },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinguishReport {
    pub n: usize,
    pub m: usize,
    pub verdict: Verdict,
}

impl DistinguishReport {
    pub fn separated(&self) -> bool {
        !matches!(self.verdict, Verdict::Equivalent)
    }
}

/// Separates `M(C_n)` from `M(C_m)` for `n ≠ m` by an explicit sentence.
pub fn distinguish_cycles(n: usize, m: usize) -> Result<DistinguishReport, EquivalenceError> {
    if n < 3 || m < 3 {
        return Err(EquivalenceError::Precondition(format!(
            "cycles need at least 3 vertices, got {n} and {m}"
        )));
    }
    let (small, large) = (n.min(m), n.max(m));
    let verdict = if small == large {
        Verdict::Equivalent
    } else if small == 3 {
        let c3 = Algebra::new(Graph::cycle(3)?);
        for a in 0..3 {
            for b in 0..3 {
                if !LieElement::left_normed(&c3, &[a, b])?.is_zero() {
                    return Err(EquivalenceError::Verification(format!("[x{a},x{b}] != 0 in M(C_3)")));
                }
            }
        }
        let big = Algebra::new(Graph::cycle(large)?);
        if LieElement::left_normed(&big, &[1, 3])?.is_zero() {
            return Err(EquivalenceError::Verification(format!("[x1,x3] = 0 in M(C_{large})")));
        }
        Verdict::SeparatedByCommutativity { counterexample: (1, 3) }
    } else {
        let big = Algebra::new(Graph::cycle(large)?);
        let inst = ThetaInstance::new(&big, large)?;
        let identity = (0..large)
            .map(|i| LieElement::generator(&big, i))
            .collect::<Result<Vec<_>, _>>()?;
        let outcome = eval_theta(&inst, &identity)?;
        if !outcome.holds {
            return Err(EquivalenceError::Verification(format!(
                "identity assignment fails {} in M(C_{large})",
                outcome.failed.expect("a failing atom")
            )));
        }
        let search = search_theta_witness(small, large, SearchMode::GeneratorAssignments)?;
        if let Some(w) = &search.witness {
            return Err(EquivalenceError::Verification(format!(
                "generator witness {w:?} for Phi({large}) in M(C_{small})"
            )));
        }
        Verdict::SeparatedByTheta { m: large, search }
    };
    Ok(DistinguishReport { n, m, verdict })
}

/// The order in which `kept` and then `removed` are the two least
/// generators, the rest ascending.
pub fn merge_order(n: usize, removed: usize, kept: usize) -> GeneratorOrder {
    let mut seq = vec![kept, removed];
    seq.extend((0..n).filter(|&v| v != kept && v != removed));
    GeneratorOrder::from_sequence(seq).expect("a permutation")
}

/// Picks `(removed, kept)`: the two greatest members of the first class of
/// size at least two.
pub fn default_merge_pair(graph: &Graph) -> Option<(usize, usize)> {
    graph.perp_classes().blocks().iter().find(|b| b.len() >= 2).map(|b| {
        let members: Vec<usize> = b.iter().collect();
        (members[members.len() - 1], members[members.len() - 2])
    })
}

/// `φ_λ`: sends `x_removed` to `λ x_kept` and fixes the other generators,
/// landing in the algebra of the graph without `x_removed`.
#[derive(Debug, Clone)]
pub struct PhiHom {
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    removed: usize,
    kept: usize,
    lambda: BigInt,
    /// Source generator to target generator; `None` for `removed`.
    relabel: Vec<Option<usize>>,
    /// Target generator to source generator.
    labels: Vec<usize>,
}

impl PhiHom {
    pub fn new(graph: &Graph, removed: usize, kept: usize, lambda: BigInt) -> Result<Self, EquivalenceError> {
        let n = graph.vertex_count();
        if removed >= n || kept >= n || removed == kept || !graph.perp_equivalent(removed, kept) {
            return Err(EquivalenceError::NotMergeable(removed, kept));
        }
        if !lambda.is_positive() {
            return Err(EquivalenceError::BadLambda);
        }
        let source = Algebra::with_order(graph.clone(), merge_order(n, removed, kept))?;
        let sub = graph.induced_subgraph(VertexSet::full(n).without(removed))?;
        let mut relabel = vec![None; n];
        for (new, &old) in sub.vertices.iter().enumerate() {
            relabel[old] = Some(new);
        }
        let kept_new = relabel[kept].expect("kept survives");
        let mut seq = vec![kept_new];
        seq.extend((0..n - 1).filter(|&v| v != kept_new));
        let target = Algebra::with_order(sub.graph, GeneratorOrder::from_sequence(seq)?)?;
        Ok(PhiHom {
            source,
            target,
            removed,
            kept,
            lambda,
            relabel,
            labels: sub.vertices,
        })
    }

    pub fn with_lambda(&self, lambda: BigInt) -> Result<Self, EquivalenceError> {
        if !lambda.is_positive() {
            return Err(EquivalenceError::BadLambda);
        }
        let mut h = self.clone();
        h.lambda = lambda;
        Ok(h)
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    pub fn removed(&self) -> usize {
        self.removed
    }

    pub fn kept(&self) -> usize {
        self.kept
    }

    pub fn lambda(&self) -> &BigInt {
        &self.lambda
    }

    /// `labels()[k]` is the source name of target generator `k`.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Rewrites `g` over the source algebra when it uses another order of
    /// the same graph.
    pub fn lift(&self, g: &LieElement) -> Result<LieElement, EquivalenceError> {
        if g.algebra().as_ref() == self.source.as_ref() {
            Ok(g.clone())
        } else {
            Ok(g.reexpress(&self.source)?)
        }
    }

    fn map_letter(&self, v: usize) -> usize {
        self.relabel[v].unwrap_or_else(|| self.relabel[self.kept].expect("kept survives"))
    }

    /// Image under the homomorphism, evaluated monomial by monomial.
    pub fn apply(&self, g: &LieElement) -> Result<LieElement, EquivalenceError> {
        let g = self.lift(g)?;
        let mut out = LieElement::zero(&self.target);
        for (i, c) in g.linear_terms() {
            let scale = if i == self.removed { &self.lambda * c } else { c.clone() };
            out.add_assign(&LieElement::generator(&self.target, self.map_letter(i))?.scale(&scale));
        }
        for (m, c) in g.derived_terms() {
            let letters: Vec<usize> = m.letters().map(|v| self.map_letter(v)).collect();
            let power = self.lambda.pow(m.count(self.removed) as u32);
            out.add_assign(&LieElement::left_normed(&self.target, &letters)?.scale(&(c * power)));
        }
        Ok(out)
    }

    /// `[u_{i,0}]`: the monomial with every `x_removed` replaced by
    /// `x_kept`, tail re-sorted, over the source algebra.
    pub fn collapse(&self, m: &BasisMonomial) -> (usize, usize, Vec<usize>) {
        let swap = |v: usize| if v == self.removed { self.kept } else { v };
        let mut tail: Vec<usize> = m.tail().iter().map(|&v| swap(v)).collect();
        self.source.order().sort(&mut tail);
        (swap(m.first()), swap(m.second()), tail)
    }

    /// Image of a glued component through `p(λ) [u_{i,0}]`, without
    /// rewriting.
    pub fn component_image(&self, comp: &GluedComponent) -> Result<LieElement, EquivalenceError> {
        let Some(m) = comp.monomials.iter().flatten().next() else {
            return Ok(LieElement::zero(&self.target));
        };
        let (a, b, tail) = self.collapse(m);
        let (a, b) = (self.map_letter(a), self.map_letter(b));
        let tail: Vec<usize> = tail.into_iter().map(|v| self.map_letter(v)).collect();
        if !is_basis_monomial(a, b, &tail, &self.target) {
            return Err(EquivalenceError::Verification(format!(
                "collapsed monomial of {m} is not a basis monomial of the target"
            )));
        }
        let p = horner(&comp.coefficients, &self.lambda);
        let mut letters = vec![a, b];
        letters.extend(tail);
        let u = LieElement::left_normed(&self.target, &letters)?;
        if u.term_count() != 1 || u.derived_terms().next().map(|(_, c)| c.is_one()) != Some(true) {
            return Err(EquivalenceError::Verification(format!(
                "{m} does not collapse to a single monomial"
            )));
        }
        Ok(u.scale(&p))
    }

    /// Image computed from the glued decomposition; must agree with
    /// [`PhiHom::apply`].
    pub fn apply_by_components(&self, g: &LieElement) -> Result<LieElement, EquivalenceError> {
        let g = self.lift(g)?;
        let mut out = self.apply(&g.linear_part())?;
        for comp in g.derived_part().glued_decomposition_for(self.removed, self.kept)? {
            out.add_assign(&self.component_image(&comp)?);
        }
        Ok(out)
    }

    /// Coefficient vectors `(α_0, ..., α_ε)` of every glued component of
    /// `g`, the linear part included; `φ_λ(g) = 0` exactly when all of them
    /// vanish at `λ`.
    pub fn component_polynomials(&self, g: &LieElement) -> Result<Vec<Vec<BigInt>>, EquivalenceError> {
        let g = self.lift(g)?;
        let mut out = Vec::new();
        let (ck, cr) = (g.linear_coefficient(self.kept), g.linear_coefficient(self.removed));
        if !ck.is_zero() || !cr.is_zero() {
            out.push(vec![ck, cr]);
        }
        for (i, c) in g.linear_terms() {
            if i != self.kept && i != self.removed {
                out.push(vec![c.clone()]);
            }
        }
        for comp in g.derived_part().glued_decomposition_for(self.removed, self.kept)? {
            out.push(comp.coefficients);
        }
        Ok(out)
    }
}

/// Positive integer roots of `Σ coeffs[j] λ^j`, which must not be the zero
/// polynomial.
pub fn positive_integer_roots(coeffs: &[BigInt]) -> Vec<BigInt> {
    let Some(low) = coeffs.iter().position(|c| !c.is_zero()) else {
        return Vec::new();
    };
    let high = coeffs.iter().rposition(|c| !c.is_zero()).expect("nonzero");
    let q = &coeffs[low..=high];
    if q.len() == 1 {
        return Vec::new();
    }
    let a0 = q[0].abs();
    let mut roots = BTreeSet::new();
    let mut d = BigInt::one();
    while &d * &d <= a0 {
        if a0.is_multiple_of(&d) {
            for cand in [d.clone(), &a0 / &d] {
                if horner(q, &cand).is_zero() {
                    roots.insert(cand);
                }
            }
        }
        d += 1;
    }
    roots.into_iter().collect()
}

/// A `λ_0` with `φ_λ(g) ≠ 0` for every `λ ≥ λ_0`: one more than the
/// largest positive root over all component polynomials.
pub fn lambda_zero(g: &LieElement, h: &PhiHom) -> Result<BigInt, EquivalenceError> {
    if g.is_zero() {
        return Err(EquivalenceError::ZeroElement);
    }
    let mut best = BigInt::zero();
    for p in h.component_polynomials(g)? {
        if let Some(r) = positive_integer_roots(&p).into_iter().max() {
            best = best.max(r);
        }
    }
    Ok(best + 1)
}

/// Checks on one glued component that every present monomial collapses to
/// the same `[u_{i,0}]` and that it is a basis monomial.
pub fn check_hombas(comp: &GluedComponent, h: &PhiHom) -> bool {
    let mut collapsed = BTreeSet::new();
    for m in comp.monomials.iter().flatten() {
        collapsed.insert(h.collapse(m));
    }
    collapsed.len() <= 1
        && collapsed
            .iter()
            .all(|(a, b, t)| is_basis_monomial(*a, *b, t, h.source()))
}

/// Whether `φ_λ(g) = 0` agrees with the vanishing of every component
/// polynomial at `λ`.
pub fn check_subhomogeneous(g: &LieElement, h: &PhiHom) -> Result<bool, EquivalenceError> {
    let direct = h.apply(g)?.is_zero();
    let all_vanish = h
        .component_polynomials(g)?
        .iter()
        .all(|p| horner(p, h.lambda()).is_zero());
    Ok(direct == all_vanish)
}

#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub removed: usize,
    pub kept: usize,
    pub lambda: BigInt,
    /// Elements of `Γ̄` before removing duplicates.
    pub closure_size: usize,
    pub distinct: usize,
    pub nonzero: usize,
    pub kernel_disjoint: bool,
    pub images_distinct: bool,
    pub relations_preserved: bool,
}

impl WitnessReport {
    pub fn ok(&self) -> bool {
        self.kernel_disjoint && self.images_distinct && self.relations_preserved
    }
}

/// `Γ ∪ {g_i − g_j} ∪ {g_i + g_j − g_k} ∪ {[g_i, g_j] − g_k}`, with
/// repetitions.
pub fn gamma_closure(gamma: &[LieElement]) -> Result<Vec<LieElement>, EquivalenceError> {
    let mut out = gamma.to_vec();
    for a in gamma {
        for b in gamma {
            out.push(a.checked_sub(b)?);
        }
    }
    for a in gamma {
        for b in gamma {
            let s = a.checked_add(b)?;
            for c in gamma {
                out.push(s.checked_sub(c)?);
            }
        }
    }
    for a in gamma {
        for b in gamma {
            let p = a.bracket(b)?;
            for c in gamma {
                out.push(p.checked_sub(c)?);
            }
        }
    }
    Ok(out)
}

/// Finds `λ` with `φ_λ` injective on `Γ̄` and checks that it preserves the
/// sum and bracket relations among the elements of `Γ`.
pub fn compaction_witness(
    graph: &Graph,
    gamma: &[LieElement],
    pair: Option<(usize, usize)>,
) -> Result<WitnessReport, EquivalenceError> {
    let (removed, kept) = match pair {
        Some(p) => p,
        None => default_merge_pair(graph).ok_or(EquivalenceError::NoMergeableClass)?,
    };
    let base = PhiHom::new(graph, removed, kept, BigInt::one())?;
    let gamma = gamma.iter().map(|g| base.lift(g)).collect::<Result<Vec<_>, _>>()?;
    let closure = gamma_closure(&gamma)?;
    let mut distinct: Vec<LieElement> = Vec::new();
    for g in &closure {
        if !distinct.contains(g) {
            distinct.push(g.clone());
        }
    }
    let nonzero: Vec<&LieElement> = distinct.iter().filter(|g| !g.is_zero()).collect();
    let mut lambda = BigInt::one();
    for g in &nonzero {
        lambda = lambda.max(lambda_zero(g, &base)?);
    }
    let h = base.with_lambda(lambda.clone())?;
    let mut kernel_disjoint = true;
    for g in &nonzero {
        if h.apply(g)?.is_zero() {
            kernel_disjoint = false;
        }
    }
    let images = gamma.iter().map(|g| h.apply(g)).collect::<Result<Vec<_>, _>>()?;
    let mut images_distinct = true;
    let mut relations_preserved = true;
    for i in 0..gamma.len() {
        for j in 0..gamma.len() {
            if i != j && gamma[i] != gamma[j] && images[i] == images[j] {
                images_distinct = false;
            }
            let sum = gamma[i].checked_add(&gamma[j])?;
            let isum = images[i].checked_add(&images[j])?;
            let prod = gamma[i].bracket(&gamma[j])?;
            let iprod = images[i].bracket(&images[j])?;
            for k in 0..gamma.len() {
                if (sum == gamma[k]) != (isum == images[k]) || (prod == gamma[k]) != (iprod == images[k]) {
                    relations_preserved = false;
                }
            }
        }
    }
    Ok(WitnessReport {
        removed,
        kept,
        lambda,
        closure_size: closure.len(),
        distinct: distinct.len(),
        nonzero: nonzero.len(),
        kernel_disjoint,
        images_distinct,
        relations_preserved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(alg: &Arc<Algebra>, js: &[usize]) -> Vec<LieElement> {
        js.iter().map(|&j| LieElement::generator(alg, j).unwrap()).collect()
    }

    fn example_graph() -> Graph {
        Graph::new(4, &[(2, 3), (1, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn theta_examples() {
        let c5 = Algebra::new(Graph::cycle(5).unwrap());
        let inst = ThetaInstance::new(&c5, 5).unwrap();
        assert!(eval_theta(&inst, &gens(&c5, &[0, 1, 2, 3, 4])).unwrap().holds);
        let zeros = vec![LieElement::zero(&c5); 5];
        assert!(!eval_theta(&inst, &zeros).unwrap().holds);
        let inst6 = ThetaInstance::new(&c5, 6).unwrap();
        let out = eval_theta(&inst6, &gens(&c5, &[0, 1, 2, 3, 4, 0])).unwrap();
        assert!(!out.holds);
        assert_eq!(out.failed, Some(Atom::Noncommute(0, 4)));
        assert!(eval_theta(&inst6, &gens(&c5, &[0, 1])).is_err());
        assert!(ThetaInstance::new(&c5, 3).is_err());
    }

    #[test]
    fn four_variable_atoms_skip_both_middles() {
        let atoms = theta_atoms(4);
        assert!(!atoms.contains(&Atom::Triple(0, 2, 1)));
        assert!(!atoms.contains(&Atom::Triple(0, 2, 3)));
        assert!(atoms.contains(&Atom::Triple(0, 2, 0)));
        let c4 = Algebra::new(Graph::cycle(4).unwrap());
        let inst = ThetaInstance::new(&c4, 4).unwrap();
        assert!(eval_theta(&inst, &gens(&c4, &[0, 1, 2, 3])).unwrap().holds);
    }

    #[test]
    fn searches() {
        let w = search_theta_witness(5, 5, SearchMode::GeneratorAssignments).unwrap();
        assert_eq!(w.witness, Some(vec![0, 1, 2, 3, 4]));
        assert!(search_theta_witness(5, 6, SearchMode::GeneratorAssignments)
            .unwrap()
            .exhausted());
        assert!(search_theta_witness(6, 6, SearchMode::GeneratorAssignments)
            .unwrap()
            .witness
            .is_some());
        let s = search_theta_witness(5, 6, SearchMode::JSequences).unwrap();
        assert!(s.exhausted());
        assert_eq!(s.checked, s.repeated_index_refutations);
        assert!(search_theta_witness(5, 5, SearchMode::JSequences)
            .unwrap()
            .witness
            .is_some());
        assert!(search_theta_witness(3, 5, SearchMode::JSequences).is_err());
        assert!(search_theta_witness(5, 4, SearchMode::JSequences).is_err());
    }

    #[test]
    fn distinguish_examples() {
        assert_eq!(distinguish_cycles(5, 5).unwrap().verdict, Verdict::Equivalent);
        let r = distinguish_cycles(3, 4).unwrap();
        assert_eq!(r.verdict, Verdict::SeparatedByCommutativity { counterexample: (1, 3) });
        let r = distinguish_cycles(5, 6).unwrap();
        assert!(matches!(r.verdict, Verdict::SeparatedByTheta { m: 6, .. }));
        assert!(distinguish_cycles(2, 5).is_err());
    }

    #[test]
    fn phi_examples() {
        let graph = example_graph();
        let h = PhiHom::new(&graph, 3, 2, BigInt::from(3)).unwrap();
        let s = h.source();
        let x3 = LieElement::generator(s, 3).unwrap();
        let img = h.apply(&x3).unwrap();
        assert_eq!(img.display_with(h.labels()), "3*x2");
        let x0 = LieElement::generator(s, 0).unwrap();
        assert_eq!(h.apply(&x0).unwrap().display_with(h.labels()), "x0");

        let g = s.parse_element("[x2,x0] - [x3,x0]").unwrap();
        let h1 = h.with_lambda(BigInt::one()).unwrap();
        assert!(h1.apply(&g).unwrap().is_zero());
        let h2 = h.with_lambda(BigInt::from(2)).unwrap();
        assert!(!h2.apply(&g).unwrap().is_zero());
        assert_eq!(lambda_zero(&g, &h).unwrap(), BigInt::from(2));
        assert_eq!(lambda_zero(&x0, &h).unwrap(), BigInt::one());
        assert!(PhiHom::new(&graph, 3, 0, BigInt::one()).is_err());
        assert_eq!(
            lambda_zero(&LieElement::zero(s), &h),
            Err(EquivalenceError::ZeroElement)
        );
    }

    #[test]
    fn scaling_law_and_hombas() {
        let graph = example_graph();
        let h = PhiHom::new(&graph, 3, 2, BigInt::from(5)).unwrap();
        let g = h
            .source()
            .parse_element("[x3,x0] + 2*[x0,x3;x2,x3] - [x1,x0;x2]")
            .unwrap();
        assert_eq!(h.apply(&g).unwrap(), h.apply_by_components(&g).unwrap());
        for comp in g.glued_decomposition_for(3, 2).unwrap() {
            assert!(check_hombas(&comp, &h));
        }
        assert!(check_subhomogeneous(&g, &h).unwrap());
    }

    #[test]
    fn collapse_of_one_removed_letter() {
        let graph = example_graph();
        let h = PhiHom::new(&graph, 3, 2, BigInt::one()).unwrap();
        let g = h.source().parse_element("[x3,x0]").unwrap();
        let comps = g.glued_decomposition_for(3, 2).unwrap();
        assert_eq!(comps.len(), 1);
        assert!(check_hombas(&comps[0], &h));
        let m = comps[0].monomials[1].as_ref().unwrap();
        let (a, b, tail) = h.collapse(m);
        let u0 = h.source().parse_element("[x2,x0]").unwrap();
        let (m0, _) = u0.derived_terms().next().unwrap();
        assert_eq!((a, b, tail.as_slice()), (m0.first(), m0.second(), m0.tail()));
    }

    #[test]
    fn roots() {
        let c = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(positive_integer_roots(&c(&[0, -2, 1])), c(&[2]));
        assert_eq!(positive_integer_roots(&c(&[6, -5, 1])), c(&[2, 3]));
        assert!(positive_integer_roots(&c(&[3])).is_empty());
        assert!(positive_integer_roots(&c(&[1, 1])).is_empty());
    }

    #[test]
    fn witness_examples() {
        let graph = example_graph();
        let alg = Algebra::new(graph.clone());
        let r = compaction_witness(&graph, &[LieElement::generator(&alg, 0).unwrap()], None).unwrap();
        assert_eq!(r.lambda, BigInt::one());
        assert!(r.ok());
        let gamma = [
            alg.parse_element("[x2,x0]").unwrap(),
            alg.parse_element("[x3,x0]").unwrap(),
        ];
        let r = compaction_witness(&graph, &gamma, None).unwrap();
        assert_eq!((r.removed, r.kept), (3, 2));
        assert!(r.lambda >= BigInt::from(2));
        assert!(r.ok());
        assert_eq!(r.closure_size, 2 + 4 + 8 + 8);
        assert!(compaction_witness(&Graph::cycle(5).unwrap(), &gamma, None).is_err());
    }
}
