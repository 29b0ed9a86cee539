use std::cmp::Ordering;
use std::fmt;

use crate::graph::VertexSet;

/// Occurrence counts of each generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multidegree(Vec<u32>);

impl Multidegree {
    pub fn new(counts: Vec<u32>) -> Self {
        Multidegree(counts)
    }

    pub fn zero(n: usize) -> Self {
        Multidegree(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Multidegree(v)
    }

    pub fn of_letters(n: usize, letters: impl IntoIterator<Item = usize>) -> Self {
        let mut v = vec![0; n];
        for l in letters {
            v[l] += 1;
        }
        Multidegree(v)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn support(&self) -> VertexSet {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn increment(&mut self, i: usize) {
        self.0[i] += 1;
    }

    pub(crate) fn decrement(&mut self, i: usize) {
        self.0[i] -= 1;
    }

    /// Letters with repetition, ascending by index.
    pub fn letters(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.total() as usize);
        for (i, &c) in self.0.iter().enumerate() {
            out.extend(std::iter::repeat_n(i, c as usize));
        }
        out
    }

    pub fn add(&self, other: &Multidegree) -> Multidegree {
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Drops coordinate `removed`, adding its count onto `kept`.
    pub fn glued(&self, removed: usize, kept: usize) -> GluedMultidegree {
        let mut v = Vec::with_capacity(self.0.len().saturating_sub(1));
        for (i, &c) in self.0.iter().enumerate() {
            if i == removed {
                continue;
            }
            if i == kept {
                v.push(c + self.0[removed]);
            } else {
                v.push(c);
            }
        }
        GluedMultidegree(v)
    }

    /// All multidegrees on `n` generators of the given total degree,
    /// in lexicographic order.
    pub fn all_of_total(n: usize, total: u32) -> Vec<Multidegree> {
        fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Multidegree>) {
            if cur.len() + 1 == n {
                cur.push(left);
                out.push(Multidegree(cur.clone()));
                cur.pop();
                return;
            }
            for c in (0..=left).rev() {
                cur.push(c);
                rec(n, left - c, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if total == 0 {
                out.push(Multidegree(Vec::new()));
            }
            return out;
        }
        rec(n, total, &mut Vec::with_capacity(n), &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A multidegree with the counts of a merged pair of generators added
/// together; length `n - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GluedMultidegree(Vec<u32>);

impl GluedMultidegree {
    pub fn counts(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for GluedMultidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `[x_first, x_second].x_{t1}...x_{tk}` with the tail sorted by the
/// generator order of the owning algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisMonomial {
    first: usize,
    second: usize,
    tail: Vec<usize>,
}

impl BasisMonomial {
    pub(crate) fn new_unchecked(first: usize, second: usize, tail: Vec<usize>) -> Self {
        BasisMonomial { first, second, tail }
    }

    pub fn first(&self) -> usize {
        self.first
    }

    pub fn second(&self) -> usize {
        self.second
    }

    pub fn tail(&self) -> &[usize] {
        &self.tail
    }

    pub fn degree(&self) -> usize {
        self.tail.len() + 2
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        [self.first, self.second].into_iter().chain(self.tail.iter().copied())
    }

    pub fn mdeg(&self, n: usize) -> Multidegree {
        Multidegree::of_letters(n, self.letters())
    }

    pub fn glued_mdeg(&self, n: usize) -> GluedMultidegree {
        assert!(n >= 2, "gluing needs at least two generators");
        self.mdeg(n).glued(n - 1, n - 2)
    }

    pub fn support(&self) -> VertexSet {
        self.letters().collect()
    }

    pub fn count(&self, g: usize) -> usize {
        self.letters().filter(|&l| l == g).count()
    }

    pub(crate) fn fmt_with(&self, labels: Option<&[usize]>) -> String {
        let name = |v: usize| match labels {
            Some(l) => format!("x{}", l[v]),
            None => format!("x{v}"),
        };
        let mut s = format!("[{},{}", name(self.first), name(self.second));
        if !self.tail.is_empty() {
            s.push(';');
            let t: Vec<String> = self.tail.iter().map(|&v| name(v)).collect();
            s.push_str(&t.join(","));
        }
        s.push(']');
        s
    }
}

impl Ord for BasisMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.tail
            .len()
            .cmp(&other.tail.len())
            .then(self.first.cmp(&other.first))
            .then(self.second.cmp(&other.second))
            .then_with(|| self.tail.cmp(&other.tail))
    }
}

impl PartialOrd for BasisMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multidegrees() {
        let m = BasisMonomial::new_unchecked(1, 0, vec![1]);
        assert_eq!(m.mdeg(3).counts(), &[1, 2, 0]);
        assert_eq!(m.glued_mdeg(3).counts(), &[1, 2]);

        let a = BasisMonomial::new_unchecked(2, 0, vec![3]);
        let b = BasisMonomial::new_unchecked(3, 0, vec![2]);
        assert_eq!(a.mdeg(4).counts(), &[1, 0, 1, 1]);
        assert_eq!(a.glued_mdeg(4).counts(), &[1, 0, 2]);
        assert_eq!(a.mdeg(4), b.mdeg(4));
        assert_eq!(a.glued_mdeg(4), b.glued_mdeg(4));
    }

    #[test]
    fn supports() {
        let m = BasisMonomial::new_unchecked(2, 0, vec![1]);
        assert_eq!(m.support(), [0, 1, 2].into_iter().collect());
        let m = BasisMonomial::new_unchecked(3, 1, vec![]);
        assert_eq!(m.support(), [1, 3].into_iter().collect());
    }

    #[test]
    fn enumerate_totals() {
        assert_eq!(Multidegree::all_of_total(4, 2).len(), 10);
        assert_eq!(Multidegree::all_of_total(4, 5).len(), 56);
        assert!(Multidegree::all_of_total(3, 3).iter().all(|d| d.total() == 3));
    }
}
