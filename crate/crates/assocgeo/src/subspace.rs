//! Subspaces of F^n as lattice elements: meet, join, transversality,
//! projectors, complements, enumeration and connected components.
//!
//! A subspace is stored as the RREF basis of its row space (zero rows
//! removed), so two subspaces are equal iff their representations are equal.

use std::collections::HashSet;

use crate::error::GeomError;
use crate::field::Field;
use crate::matrix::Matrix;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Matrix<F>,
}

impl<F: Field> Subspace<F> {
    /// Span of the given rows, canonicalized.
    pub fn from_rows(field: F, ambient: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), ambient, "basis row length must equal ambient");
        }
        let m = Matrix::from_rows(field.clone(), ambient, rows);
        Subspace {
            field,
            ambient,
            basis: m.rref().0,
        }
    }

    pub fn from_matrix(m: &Matrix<F>) -> Self {
        Subspace {
            field: m.field().clone(),
            ambient: m.cols(),
            basis: m.rref().0,
        }
    }

    pub fn from_i64(field: F, ambient: usize, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Subspace::from_rows(field, ambient, rows)
    }

    pub fn zero(field: F, ambient: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            basis: Matrix::zero(field, 0, ambient),
        }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            basis: Matrix::identity(field, ambient),
        }
    }

    /// Coordinate subspace spanned by the given standard basis vectors.
    pub fn coordinate(field: F, ambient: usize, indices: &[usize]) -> Self {
        let rows = indices
            .iter()
            .map(|&i| {
                let mut v = vec![field.zero(); ambient];
                v[i] = field.one();
                v
            })
            .collect();
        Subspace::from_rows(field, ambient, rows)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn check_compatible(&self, other: &Self) -> Result<(), GeomError> {
        if self.field != other.field {
            return Err(GeomError::FieldMismatch(
                self.field.name(),
                other.field.name(),
            ));
        }
        if self.ambient != other.ambient {
            return Err(GeomError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.ambient);
        // v lies in the row space iff the transposed system has a solution
        self.basis.transpose().solve(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    pub fn join(&self, other: &Self) -> Result<Self, GeomError> {
        self.check_compatible(other)?;
        let mut rows = self.basis.row_vecs();
        rows.extend(other.basis.row_vecs());
        Ok(Subspace::from_rows(self.field.clone(), self.ambient, rows))
    }

    pub fn meet(&self, other: &Self) -> Result<Self, GeomError> {
        self.check_compatible(other)?;
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        // left kernel of [B1; -B2] gives the coefficient pairs (s,t) with
        // s·B1 = t·B2; the meet is spanned by the s·B1
        let stacked = self.basis.vstack(&other.basis.neg());
        let lk = stacked.transpose().kernel();
        let d1 = self.dim();
        let mut rows = Vec::with_capacity(lk.rows());
        for i in 0..lk.rows() {
            let coeffs = &lk.row(i)[..d1];
            rows.push(self.basis.mul_row(coeffs));
        }
        Ok(Subspace::from_rows(self.field.clone(), self.ambient, rows))
    }

    pub fn is_transversal(&self, other: &Self) -> Result<bool, GeomError> {
        self.check_compatible(other)?;
        if self.dim() + other.dim() != self.ambient {
            return Ok(false);
        }
        Ok(self.join(other)?.dim() == self.ambient)
    }

    /// Image of the subspace under an operator acting on column vectors.
    pub fn apply(&self, op: &Matrix<F>) -> Self {
        assert_eq!(op.cols(), self.ambient);
        let image = self.basis.mul(&op.transpose());
        Subspace {
            field: self.field.clone(),
            ambient: op.rows(),
            basis: image.rref().0,
        }
    }

    /// Deterministic complement: greedily extend by standard basis vectors in
    /// index order.
    pub fn complement(&self) -> Self {
        let f = &self.field;
        let mut rows: Vec<Vec<F::Elem>> = Vec::new();
        let mut span = self.clone();
        for i in 0..self.ambient {
            if span.dim() == self.ambient {
                break;
            }
            let mut e = vec![f.zero(); self.ambient];
            e[i] = f.one();
            if !span.contains(&e) {
                let bigger =
                    Subspace::from_rows(f.clone(), self.ambient, {
                        let mut r = span.basis.row_vecs();
                        r.push(e.clone());
                        r
                    });
                span = bigger;
                rows.push(e);
            }
        }
        Subspace::from_rows(f.clone(), self.ambient, rows)
    }

    /// Every subspace of F^n of dimension `k` (or of every dimension) exactly
    /// once, in canonical order, by enumerating RREF shapes directly.
    pub fn enumerate(field: F, ambient: usize, dim: Option<usize>) -> Result<Vec<Self>, GeomError> {
        let Some(p) = field.order() else {
            return Err(GeomError::NotFinite);
        };
        let size = (p as f64).powi(ambient as i32);
        if size > (1u64 << 20) as f64 {
            return Err(GeomError::SizeGuard(format!(
                "enumeration needs p^n <= 2^20, got {p}^{ambient}"
            )));
        }
        let elems = field.elements().expect("finite field enumerates");
        let dims: Vec<usize> = match dim {
            Some(k) => {
                if k > ambient {
                    return Err(GeomError::DimensionMismatch(format!(
                        "dim {k} exceeds ambient {ambient}"
                    )));
                }
                vec![k]
            }
            None => (0..=ambient).collect(),
        };
        let mut out = Vec::new();
        for k in dims {
            for pivots in combinations(ambient, k) {
                // free positions: (row i, col j) with j > pivots[i], j not a pivot
                let mut free = Vec::new();
                for (i, &pc) in pivots.iter().enumerate() {
                    for j in pc + 1..ambient {
                        if !pivots.contains(&j) {
                            free.push((i, j));
                        }
                    }
                }
                let mut counters = vec![0usize; free.len()];
                loop {
                    let mut m = Matrix::zero(field.clone(), k, ambient);
                    for (i, &pc) in pivots.iter().enumerate() {
                        m.set(i, pc, field.one());
                    }
                    for (slot, &(i, j)) in free.iter().enumerate() {
                        m.set(i, j, elems[counters[slot]].clone());
                    }
                    out.push(Subspace {
                        field: field.clone(),
                        ambient,
                        basis: m,
                    });
                    // odometer over free entries, last position fastest
                    let mut carry = true;
                    for slot in (0..counters.len()).rev() {
                        counters[slot] += 1;
                        if counters[slot] < elems.len() {
                            carry = false;
                            break;
                        }
                        counters[slot] = 0;
                    }
                    if carry || free.is_empty() {
                        break;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Over a field, two subspaces lie in the same connected component iff
    /// they have the same dimension.
    pub fn same_component(&self, other: &Self) -> Result<bool, GeomError> {
        self.check_compatible(other)?;
        Ok(self.dim() == other.dim())
    }
}

/// Gaussian binomial coefficient `[n choose k]_p`.
pub fn gaussian_binomial(p: u64, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let q = p as u128;
    let qpow = |e: usize| -> u128 { q.pow(e as u32) };
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= qpow(n - i) - 1;
        den *= qpow(i + 1) - 1;
    }
    num / den
}

/// Projector onto `image` with kernel `kernel` (as a column-action operator).
pub fn projector<F: Field>(
    image: &Subspace<F>,
    kernel: &Subspace<F>,
) -> Result<Matrix<F>, GeomError> {
    image.check_compatible(kernel)?;
    let n = image.ambient();
    if image.dim() + kernel.dim() != n {
        return Err(GeomError::NotTransversal(format!(
            "dims {} + {} != {}",
            image.dim(),
            kernel.dim(),
            n
        )));
    }
    let c = image.basis().transpose().hstack(&kernel.basis().transpose());
    let Some(c_inv) = c.inverse() else {
        return Err(GeomError::NotTransversal(
            "image and kernel overlap".to_string(),
        ));
    };
    let d = image
        .basis()
        .transpose()
        .hstack(&Matrix::zero(image.field().clone(), n, kernel.dim()));
    Ok(d.mul(&c_inv))
}

/// Some common complement of `a` and `b`, or `None` when there is none.
/// Over a field a common complement exists iff the dimensions agree; the
/// search greedily extends a basis avoiding both subspaces, scanning
/// candidate vectors in a deterministic order.
pub fn common_complement<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> Option<Subspace<F>> {
    a.check_compatible(b).ok()?;
    if a.dim() != b.dim() {
        return None;
    }
    let f = a.field().clone();
    let n = a.ambient();
    let target = n - a.dim();
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    let mut span_a = a.clone();
    let mut span_b = b.clone();
    // a union of two proper subspaces is never the whole space, so the greedy
    // extension below cannot get stuck
    for v in CandidateVectors::new(f.clone(), n) {
        if rows.len() == target {
            break;
        }
        if span_a.contains(&v) || span_b.contains(&v) {
            continue;
        }
        rows.push(v.clone());
        let extend = |s: &Subspace<F>| {
            let mut r = s.basis().row_vecs();
            r.push(v.clone());
            Subspace::from_rows(f.clone(), n, r)
        };
        span_a = extend(&span_a);
        span_b = extend(&span_b);
    }
    if rows.len() == target {
        Some(Subspace::from_rows(f, n, rows))
    } else {
        None
    }
}

/// A transversal triple exists in Gras(F^n) iff n is even; the witness is
/// (first-half coordinates, diagonal, second-half coordinates).
pub fn transversal_triple<F: Field>(
    field: F,
    n: usize,
) -> Option<(Subspace<F>, Subspace<F>, Subspace<F>)> {
    if n % 2 != 0 {
        return None;
    }
    let h = n / 2;
    let o_plus = Subspace::coordinate(field.clone(), n, &(0..h).collect::<Vec<_>>());
    let o_minus = Subspace::coordinate(field.clone(), n, &(h..n).collect::<Vec<_>>());
    let diag_rows = (0..h)
        .map(|i| {
            let mut v = vec![field.zero(); n];
            v[i] = field.one();
            v[h + i] = field.one();
            v
        })
        .collect();
    let diag = Subspace::from_rows(field, n, diag_rows);
    Some((o_plus, diag, o_minus))
}

/// Deterministic stream of candidate vectors: for finite fields, all of F^n
/// in lexicographic order; over Q, integer vectors on growing boxes.
struct CandidateVectors<F: Field> {
    field: F,
    n: usize,
    finite_elems: Option<Vec<F::Elem>>,
    counters: Vec<usize>,
    exhausted: bool,
    q_radius: i64,
    q_counters: Vec<i64>,
}

impl<F: Field> CandidateVectors<F> {
    fn new(field: F, n: usize) -> Self {
        let finite_elems = field.elements();
        CandidateVectors {
            field,
            n,
            finite_elems,
            counters: vec![0; n],
            exhausted: n == 0,
            q_radius: 1,
            q_counters: vec![0; n],
        }
    }
}

impl<F: Field> Iterator for CandidateVectors<F> {
    type Item = Vec<F::Elem>;

    fn next(&mut self) -> Option<Vec<F::Elem>> {
        if self.exhausted {
            return None;
        }
        match &self.finite_elems {
            Some(elems) => {
                let v: Vec<F::Elem> = self
                    .counters
                    .iter()
                    .map(|&i| elems[i].clone())
                    .collect();
                let mut carry = true;
                for slot in (0..self.n).rev() {
                    self.counters[slot] += 1;
                    if self.counters[slot] < elems.len() {
                        carry = false;
                        break;
                    }
                    self.counters[slot] = 0;
                }
                if carry {
                    self.exhausted = true;
                }
                Some(v)
            }
            None => {
                // integer boxes of growing radius; recycles re-seen interior
                // points, which is harmless for a greedy scan
                let v: Vec<F::Elem> = self
                    .q_counters
                    .iter()
                    .map(|&i| self.field.from_i64(i))
                    .collect();
                let r = self.q_radius;
                let mut carry = true;
                for slot in (0..self.n).rev() {
                    self.q_counters[slot] += 1;
                    if self.q_counters[slot] <= r {
                        carry = false;
                        break;
                    }
                    self.q_counters[slot] = -r;
                }
                if carry {
                    self.q_radius += 1;
                    if self.q_radius > 64 {
                        self.exhausted = true;
                    }
                    self.q_counters = vec![-self.q_radius; self.n];
                }
                Some(v)
            }
        }
    }
}

/// k-subsets of {0..n} in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Sanity helper used by tests and the verify suites: all subspaces distinct.
pub fn all_distinct<F: Field>(subs: &[Subspace<F>]) -> bool {
    let mut seen = HashSet::new();
    subs.iter().all(|s| seen.insert(s.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn span(field: PrimeField, ambient: usize, rows: &[&[i64]]) -> Subspace<PrimeField> {
        Subspace::from_i64(field, ambient, rows)
    }

    #[test]
    fn meet_and_join_basics() {
        let f = gf(2);
        let e12 = span(f, 3, &[&[1, 0, 0], &[0, 1, 0]]);
        let e23 = span(f, 3, &[&[0, 1, 0], &[0, 0, 1]]);
        let e2 = span(f, 3, &[&[0, 1, 0]]);
        assert_eq!(e12.meet(&e12).unwrap(), e12);
        assert_eq!(Subspace::full(f, 3).meet(&e23).unwrap(), e23);
        assert_eq!(e12.meet(&e23).unwrap(), e2);

        let e1 = span(f, 3, &[&[1, 0, 0]]);
        let d = span(f, 3, &[&[1, 1, 0]]);
        assert_eq!(e1.join(&d).unwrap(), e12);
        assert_eq!(e1.join(&Subspace::zero(f, 3)).unwrap(), e1);
        assert_eq!(e1.join(&e1).unwrap(), e1);
    }

    #[test]
    fn meet_rejects_mismatch() {
        let a = Subspace::full(gf(2), 2);
        let b = Subspace::full(gf(2), 3);
        assert!(matches!(a.meet(&b), Err(GeomError::AmbientMismatch(2, 3))));
        let c = Subspace::full(gf(3), 2);
        assert!(matches!(a.meet(&c), Err(GeomError::FieldMismatch(_, _))));
    }

    #[test]
    fn transversality() {
        let f = gf(2);
        let e1 = span(f, 2, &[&[1, 0]]);
        let e2 = span(f, 2, &[&[0, 1]]);
        let d = span(f, 2, &[&[1, 1]]);
        assert!(e1.is_transversal(&e2).unwrap());
        assert!(e1.is_transversal(&d).unwrap());
        assert!(!e1.is_transversal(&e1).unwrap());
    }

    #[test]
    fn projector_examples() {
        let f = gf(2);
        assert!(projector(&Subspace::full(f, 2), &Subspace::zero(f, 2))
            .unwrap()
            .is_identity());

        let e1 = span(f, 2, &[&[1, 0]]);
        let e2 = span(f, 2, &[&[0, 1]]);
        let p = projector(&e1, &e2).unwrap();
        assert_eq!(p, Matrix::from_i64(f, 2, 2, &[1, 0, 0, 0]));

        // GF(3): image span{(1,1)}, kernel span{e2} -> rows (1,0),(1,0)
        let g = gf(3);
        let diag = Subspace::from_i64(g, 2, &[&[1, 1]]);
        let ker = Subspace::from_i64(g, 2, &[&[0, 1]]);
        let p = projector(&diag, &ker).unwrap();
        assert_eq!(p, Matrix::from_i64(g, 2, 2, &[1, 0, 1, 0]));

        assert!(projector(&e1, &e1).is_err());
    }

    #[test]
    fn projector_laws() {
        // P_x^a ∘ P_z^a = P_x^a, P_x^a ∘ P_x^b = P_x^b, P_b^z ∘ P_z^a = 0
        let f = gf(3);
        let x = span(f, 2, &[&[1, 0]]);
        let a = span(f, 2, &[&[0, 1]]);
        let z = span(f, 2, &[&[1, 1]]);
        let b = span(f, 2, &[&[1, 2]]);
        let pxa = projector(&x, &a).unwrap();
        let pza = projector(&z, &a).unwrap();
        let pxb = projector(&x, &b).unwrap();
        let pbz = projector(&b, &z).unwrap();
        assert_eq!(pxa.mul(&pza), pxa);
        assert_eq!(pxa.mul(&pxb), pxb);
        assert!(pbz.mul(&pza).is_zero());
        // complementary projectors sum to the identity
        let pax = projector(&a, &x).unwrap();
        assert!(pxa.add(&pax).is_identity());
    }

    #[test]
    fn complement_examples() {
        let f = gf(2);
        assert_eq!(Subspace::zero(f, 2).complement(), Subspace::full(f, 2));
        assert_eq!(Subspace::full(f, 2).complement(), Subspace::zero(f, 2));
        let anti = span(f, 2, &[&[1, 1]]);
        assert_eq!(anti.complement(), span(f, 2, &[&[1, 0]]));
        assert!(anti.complement().is_transversal(&anti).unwrap());
    }

    #[test]
    fn common_complement_examples() {
        let f = gf(2);
        let e1 = span(f, 2, &[&[1, 0]]);
        let e2 = span(f, 2, &[&[0, 1]]);
        let c = common_complement(&e1, &e2).unwrap();
        assert_eq!(c, span(f, 2, &[&[1, 1]]));
        assert!(c.is_transversal(&e1).unwrap());
        assert!(c.is_transversal(&e2).unwrap());

        // dimension obstruction
        let z = Subspace::zero(f, 2);
        assert!(common_complement(&e1, &z).is_none());

        // a = b: any complement works twice
        let s = common_complement(&e1, &e1).unwrap();
        assert!(s.is_transversal(&e1).unwrap());
    }

    #[test]
    fn common_complement_over_q() {
        let f = Rationals;
        let a = Subspace::from_i64(f, 3, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = Subspace::from_i64(f, 3, &[&[0, 1, 0], &[0, 0, 1]]);
        let c = common_complement(&a, &b).unwrap();
        assert!(c.is_transversal(&a).unwrap());
        assert!(c.is_transversal(&b).unwrap());
    }

    #[test]
    fn enumeration_counts_match_gaussian_binomials() {
        for &p in &[2u64, 3] {
            let f = gf(p);
            for n in 0..=4usize {
                for k in 0..=n {
                    let subs = Subspace::enumerate(f, n, Some(k)).unwrap();
                    assert_eq!(
                        subs.len() as u128,
                        gaussian_binomial(p, n, k),
                        "count mismatch for p={p} n={n} k={k}"
                    );
                    assert!(all_distinct(&subs));
                }
            }
        }
        // n=1: exactly {0, F}
        let all = Subspace::enumerate(gf(2), 1, None).unwrap();
        assert_eq!(all.len(), 2);
        // GF(2), n=3, k=1 -> 7; GF(3), n=2, k=1 -> 4
        assert_eq!(Subspace::enumerate(gf(2), 3, Some(1)).unwrap().len(), 7);
        assert_eq!(Subspace::enumerate(gf(3), 2, Some(1)).unwrap().len(), 4);
    }

    #[test]
    fn enumeration_guard() {
        assert!(matches!(
            Subspace::enumerate(gf(2), 25, None),
            Err(GeomError::SizeGuard(_))
        ));
        assert!(matches!(
            Subspace::<Rationals>::enumerate(Rationals, 2, None),
            Err(GeomError::NotFinite)
        ));
    }

    #[test]
    fn components_and_triples() {
        let f = gf(2);
        let e1 = span(f, 2, &[&[1, 0]]);
        let d = span(f, 2, &[&[1, 1]]);
        assert!(e1.same_component(&e1).unwrap());
        assert!(e1.same_component(&d).unwrap());
        assert!(!e1.same_component(&Subspace::full(f, 2)).unwrap());
        // two distinct lines always admit a common complement
        assert!(common_complement(&e1, &d).is_some());

        let (op, diag, om) = transversal_triple(f, 2).unwrap();
        assert_eq!(op, e1);
        assert_eq!(diag, d);
        assert_eq!(om, span(f, 2, &[&[0, 1]]));
        assert!(op.is_transversal(&diag).unwrap());
        assert!(diag.is_transversal(&om).unwrap());
        assert!(op.is_transversal(&om).unwrap());

        assert!(transversal_triple(f, 3).is_none());
        let (a, b, c) = transversal_triple(f, 0).unwrap();
        assert_eq!(a, b);
        assert_eq!(b, c);
    }

    fn arb_subspace(n: usize) -> impl Strategy<Value = Subspace<PrimeField>> {
        proptest::collection::vec(proptest::collection::vec(0i64..3, n), 0..=n).prop_map(
            move |rows| {
                let refs: Vec<Vec<i64>> = rows;
                Subspace::from_rows(
                    gf(3),
                    n,
                    refs.iter()
                        .map(|r| r.iter().map(|&v| gf(3).from_i64(v)).collect())
                        .collect(),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn absorption_laws(u in arb_subspace(3), v in arb_subspace(3)) {
            prop_assert_eq!(u.join(&u.meet(&v).unwrap()).unwrap(), u.clone());
            prop_assert_eq!(u.meet(&u.join(&v).unwrap()).unwrap(), u);
        }

        #[test]
        fn dimension_formula(u in arb_subspace(3), v in arb_subspace(3)) {
            let m = u.meet(&v).unwrap();
            let j = u.join(&v).unwrap();
            prop_assert_eq!(u.dim() + v.dim(), m.dim() + j.dim());
        }

        #[test]
        fn modular_identity(x in arb_subspace(3), a in arb_subspace(3), z in arb_subspace(3)) {
            // ((z ∧ x) ∨ a) ∧ x = (z ∧ x) ∨ (a ∧ x) holds in submodule lattices
            let lhs = z.meet(&x).unwrap().join(&a).unwrap().meet(&x).unwrap();
            let rhs = z.meet(&x).unwrap().join(&a.meet(&x).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
