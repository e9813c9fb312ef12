//! Seeded, reproducible sampling of scalars and subspaces.
//!
//! Every verification suite draws its instances through a [`Sampler`] so a
//! run is fully determined by its seed.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_core::RngCore;

use crate::field::Field;
use crate::gamma::Quintuple;
use crate::subspace::Subspace;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        (self.rng.next_u64() % n as u64) as usize
    }

    pub fn scalar<F: Field>(&mut self, field: &F) -> F::Elem {
        field.sample(&mut self.rng)
    }

    pub fn nonzero_scalar<F: Field>(&mut self, field: &F) -> F::Elem {
        loop {
            let s = field.sample(&mut self.rng);
            if !field.is_zero(&s) {
                return s;
            }
        }
    }

    pub fn vector<F: Field>(&mut self, field: &F, n: usize) -> Vec<F::Elem> {
        (0..n).map(|_| field.sample(&mut self.rng)).collect()
    }

    /// Random subspace: random target dimension, random spanning rows.
    pub fn subspace<F: Field>(&mut self, field: F, ambient: usize) -> Subspace<F> {
        let k = self.below(ambient + 1);
        let rows = (0..k).map(|_| self.vector(&field, ambient)).collect();
        Subspace::from_rows(field, ambient, rows)
    }

    /// Random subspace of the given dimension (retries until the rank hits).
    pub fn subspace_of_dim<F: Field>(&mut self, field: F, ambient: usize, k: usize) -> Subspace<F> {
        assert!(k <= ambient);
        loop {
            let rows = (0..k).map(|_| self.vector(&field, ambient)).collect();
            let s = Subspace::from_rows(field.clone(), ambient, rows);
            if s.dim() == k {
                return s;
            }
        }
    }

    /// Random complement of `a` (uniform-ish via rejection).
    pub fn complement_of<F: Field>(&mut self, a: &Subspace<F>) -> Subspace<F> {
        let k = a.ambient() - a.dim();
        loop {
            let s = self.subspace_of_dim(a.field().clone(), a.ambient(), k);
            if s.is_transversal(a).unwrap() {
                return s;
            }
        }
    }

    /// Random common complement of `a` and `b` (requires equal dimensions).
    pub fn common_complement_of<F: Field>(
        &mut self,
        a: &Subspace<F>,
        b: &Subspace<F>,
    ) -> Subspace<F> {
        assert_eq!(a.dim(), b.dim());
        let k = a.ambient() - a.dim();
        loop {
            let s = self.subspace_of_dim(a.field().clone(), a.ambient(), k);
            if s.is_transversal(a).unwrap() && s.is_transversal(b).unwrap() {
                return s;
            }
        }
    }

    pub fn quintuple<F: Field>(&mut self, field: F, ambient: usize) -> Quintuple<F> {
        Quintuple::new(
            self.subspace(field.clone(), ambient),
            self.subspace(field.clone(), ambient),
            self.subspace(field.clone(), ambient),
            self.subspace(field.clone(), ambient),
            self.subspace(field, ambient),
        )
        .expect("same field and ambient by construction")
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len())]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn same_seed_same_stream() {
        let f = PrimeField::new(3).unwrap();
        let mut s1 = Sampler::new(7);
        let mut s2 = Sampler::new(7);
        for _ in 0..50 {
            assert_eq!(s1.subspace(f, 3), s2.subspace(f, 3));
        }
    }

    #[test]
    fn dim_constrained_sampling() {
        let f = PrimeField::new(2).unwrap();
        let mut s = Sampler::new(1);
        for k in 0..=3 {
            assert_eq!(s.subspace_of_dim(f, 3, k).dim(), k);
        }
        let a = s.subspace_of_dim(f, 4, 2);
        let c = s.complement_of(&a);
        assert!(c.is_transversal(&a).unwrap());
    }
}
