//! Permutations on {0..m-1} in image-array form. The JSON encoding and all
//! user-facing output are 1-indexed; the internal representation is 0-indexed.

use std::fmt;

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &i in &images {
            if i >= m || seen[i] {
                return Err(Error::InvalidInput(format!(
                    "not a permutation of 0..{m}: {images:?}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(m: usize) -> Self {
        Permutation {
            images: (0..m).collect(),
        }
    }

    /// The cycle (0, 1, …, m−1): i ↦ i+1 mod m.
    pub fn full_cycle(m: usize) -> Self {
        Permutation {
            images: (0..m).map(|i| (i + 1) % m).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// 1-indexed images, as serialized in reports.
    pub fn images_one_indexed(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// `self` followed by `other`: (self.then(other))(i) = other(self(i)).
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.len(), other.len());
        Permutation {
            images: self.images.iter().map(|&i| other.apply(i)).collect(),
        }
    }

    /// Conjugate: g ∘ self ∘ g⁻¹ (with `then`-composition this maps the
    /// point g(i) to g(self(i))).
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut images = vec![0; self.len()];
        for i in 0..self.len() {
            images[g.apply(i)] = g.apply(self.apply(i));
        }
        Permutation { images }
    }

    /// True when the permutation is a single cycle through all m points.
    pub fn is_full_cycle(&self) -> bool {
        let m = self.len();
        if m == 0 {
            return false;
        }
        let mut i = 0;
        for step in 1..=m {
            i = self.images[i];
            if i == 0 {
                return step == m;
            }
        }
        false
    }

    /// Disjoint cycles of length >= 2, each rotated to start at its
    /// smallest element, sorted by that element. 0-indexed.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let m = self.len();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut i = self.images[start];
            while i != start {
                seen[i] = true;
                cyc.push(i);
                i = self.images[i];
            }
            out.push(cyc);
        }
        out
    }

    /// Written form of a full cycle starting at point 0:
    /// (p_1 = 0, p_2 = σ(0), …, p_m). Errors if not an m-cycle.
    pub fn cycle_order(&self) -> Result<Vec<usize>> {
        if !self.is_full_cycle() {
            return Err(Error::NotFullCycle(self.len()));
        }
        let mut order = Vec::with_capacity(self.len());
        let mut i = 0;
        for _ in 0..self.len() {
            order.push(i);
            i = self.images[i];
        }
        Ok(order)
    }

    /// Relabel points by `relab`: point i becomes relab(i).
    pub fn relabeled(&self, relab: &Permutation) -> Permutation {
        self.conjugate_by(relab)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "id");
        }
        for cyc in cycles {
            write!(f, "(")?;
            for (k, i) in cyc.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Orbit of `start` under the group generated by `gens`.
pub fn orbit(gens: &[Permutation], start: usize) -> Vec<usize> {
    let m = gens.first().map_or(0, |g| g.len());
    let mut seen = vec![false; m];
    let mut queue = vec![start];
    seen[start] = true;
    let mut k = 0;
    while k < queue.len() {
        let i = queue[k];
        k += 1;
        for g in gens {
            let j = g.apply(i);
            if !seen[j] {
                seen[j] = true;
                queue.push(j);
            }
        }
    }
    queue
}

/// True when the generated group acts transitively on all points.
pub fn is_transitive(gens: &[Permutation], m: usize) -> bool {
    if m == 0 {
        return false;
    }
    if gens.is_empty() {
        return m == 1;
    }
    orbit(gens, 0).len() == m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_inverse() {
        let a = Permutation::new(vec![1, 0, 2]).unwrap();
        let b = Permutation::new(vec![0, 2, 1]).unwrap();
        // then: apply a first, then b
        let ab = a.then(&b);
        assert_eq!(ab.images(), &[2, 0, 1]);
        assert_eq!(a.then(&a.inverse()), Permutation::identity(3));
    }

    #[test]
    fn full_cycle_checks() {
        assert!(Permutation::full_cycle(5).is_full_cycle());
        assert!(!Permutation::identity(3).is_full_cycle());
        let double = Permutation::new(vec![1, 0, 3, 2]).unwrap();
        assert!(!double.is_full_cycle());
        assert_eq!(double.cycles(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn cycle_order_of_tau() {
        let tau = Permutation::full_cycle(4);
        assert_eq!(tau.cycle_order().unwrap(), vec![0, 1, 2, 3]);
        assert!(Permutation::identity(4).cycle_order().is_err());
    }

    #[test]
    fn conjugation_moves_support() {
        let tau = Permutation::full_cycle(4);
        let g = Permutation::new(vec![1, 0, 2, 3]).unwrap();
        let c = tau.conjugate_by(&g);
        // conjugate of a 4-cycle is a 4-cycle
        assert!(c.is_full_cycle());
        assert_eq!(c.apply(g.apply(0)), g.apply(tau.apply(0)));
    }

    #[test]
    fn transitivity() {
        let tau = Permutation::full_cycle(6);
        assert!(is_transitive(&[tau], 6));
        let swap = Permutation::new(vec![1, 0, 2]).unwrap();
        assert!(!is_transitive(&[swap], 3));
    }
}
