//! Associative pairs and unital algebras attached to base points of the
//! geometry, homotopes, the Jordan-pair quadratic map, invertibility, the
//! standard imbedding into a block-matrix algebra, and the reverse
//! direction: the geometry of right ideals built from a pair.

use std::collections::BTreeSet;

use crate::chart::Chart;
use crate::error::GeomError;
use crate::field::Field;
use crate::gamma::{gamma, pi_extended};
use crate::matrix::Matrix;
use crate::subspace::Subspace;

/// An associative pair: two modules with para-associative trilinear products
/// ⟨···⟩±: A± × A∓ × A± → A±. Implementations provide the module structure
/// explicitly so that trilinearity can be tested slot by slot.
pub trait AssociativePair<F: Field> {
    type Plus: Clone + PartialEq + Eq + Ord + std::fmt::Debug;
    type Minus: Clone + PartialEq + Eq + Ord + std::fmt::Debug;

    fn field(&self) -> &F;
    fn plus_zero(&self) -> Self::Plus;
    fn minus_zero(&self) -> Self::Minus;
    fn plus_add(&self, x: &Self::Plus, y: &Self::Plus) -> Self::Plus;
    fn minus_add(&self, x: &Self::Minus, y: &Self::Minus) -> Self::Minus;
    fn plus_scale(&self, r: &F::Elem, x: &Self::Plus) -> Self::Plus;
    fn minus_scale(&self, r: &F::Elem, x: &Self::Minus) -> Self::Minus;
    fn triple_plus(&self, x: &Self::Plus, y: &Self::Minus, z: &Self::Plus) -> Self::Plus;
    fn triple_minus(&self, x: &Self::Minus, y: &Self::Plus, z: &Self::Minus) -> Self::Minus;
    /// All elements in canonical order, when finite and small.
    fn plus_elements(&self) -> Option<Vec<Self::Plus>>;
    fn minus_elements(&self) -> Option<Vec<Self::Minus>>;
}

/// The prototype pair (Hom(E,F), Hom(F,E)) with ⟨XYZ⟩⁺ = X∘Y∘Z and
/// ⟨XYZ⟩⁻ = Z∘Y∘X. Plus elements are f×e matrices (column action).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomPair<F: Field> {
    field: F,
    dim_e: usize,
    dim_f: usize,
}

impl<F: Field> HomPair<F> {
    pub fn new(field: F, dim_e: usize, dim_f: usize) -> Self {
        HomPair {
            field,
            dim_e,
            dim_f,
        }
    }

    pub fn dim_e(&self) -> usize {
        self.dim_e
    }
    pub fn dim_f(&self) -> usize {
        self.dim_f
    }

    fn enumerate_matrices(&self, rows: usize, cols: usize) -> Option<Vec<Matrix<F>>> {
        let elems = self.field.elements()?;
        let cells = rows * cols;
        if (elems.len() as f64).powi(cells as i32) > 65536.0 {
            return None;
        }
        let mut out = Vec::new();
        let mut counters = vec![0usize; cells];
        loop {
            let data: Vec<F::Elem> = counters.iter().map(|&i| elems[i].clone()).collect();
            out.push(Matrix::new(self.field.clone(), rows, cols, data));
            let mut carry = true;
            for slot in (0..cells).rev() {
                counters[slot] += 1;
                if counters[slot] < elems.len() {
                    carry = false;
                    break;
                }
                counters[slot] = 0;
            }
            if carry || cells == 0 {
                break;
            }
        }
        Some(out)
    }
}

impl<F: Field> AssociativePair<F> for HomPair<F> {
    type Plus = Matrix<F>;
    type Minus = Matrix<F>;

    fn field(&self) -> &F {
        &self.field
    }
    fn plus_zero(&self) -> Matrix<F> {
        Matrix::zero(self.field.clone(), self.dim_f, self.dim_e)
    }
    fn minus_zero(&self) -> Matrix<F> {
        Matrix::zero(self.field.clone(), self.dim_e, self.dim_f)
    }
    fn plus_add(&self, x: &Matrix<F>, y: &Matrix<F>) -> Matrix<F> {
        x.add(y)
    }
    fn minus_add(&self, x: &Matrix<F>, y: &Matrix<F>) -> Matrix<F> {
        x.add(y)
    }
    fn plus_scale(&self, r: &F::Elem, x: &Matrix<F>) -> Matrix<F> {
        x.scale(r)
    }
    fn minus_scale(&self, r: &F::Elem, x: &Matrix<F>) -> Matrix<F> {
        x.scale(r)
    }
    fn triple_plus(&self, x: &Matrix<F>, y: &Matrix<F>, z: &Matrix<F>) -> Matrix<F> {
        x.mul(y).mul(z)
    }
    fn triple_minus(&self, x: &Matrix<F>, y: &Matrix<F>, z: &Matrix<F>) -> Matrix<F> {
        z.mul(y).mul(x)
    }
    fn plus_elements(&self) -> Option<Vec<Matrix<F>>> {
        self.enumerate_matrices(self.dim_f, self.dim_e)
    }
    fn minus_elements(&self) -> Option<Vec<Matrix<F>>> {
        self.enumerate_matrices(self.dim_e, self.dim_f)
    }
}

/// The pair extracted from a geometry at a base point (o⁺, o⁻):
/// A⁺ = U_{o⁻}, A⁻ = U_{o⁺}, ⟨xbz⟩⁺ = Γ(x,o⁻,b,o⁺,z) and
/// ⟨ayc⟩⁻ = Γ(a,o⁻,y,o⁺,c). The module structure is the affine structure
/// with origins o±. When `universe` is set (a sub-geometry such as the right
/// ideals of an algebra), element enumeration is filtered through it.
#[derive(Clone, Debug)]
pub struct GeometricPair<F: Field> {
    o_plus: Subspace<F>,
    o_minus: Subspace<F>,
    universe: Option<Vec<Subspace<F>>>,
}

impl<F: Field> GeometricPair<F> {
    pub fn new(o_plus: Subspace<F>, o_minus: Subspace<F>) -> Result<Self, GeomError> {
        if !o_plus.is_transversal(&o_minus)? {
            return Err(GeomError::NotTransversal("base point (o⁺, o⁻)".into()));
        }
        Ok(GeometricPair {
            o_plus,
            o_minus,
            universe: None,
        })
    }

    pub fn with_universe(
        o_plus: Subspace<F>,
        o_minus: Subspace<F>,
        universe: Vec<Subspace<F>>,
    ) -> Result<Self, GeomError> {
        if !o_plus.is_transversal(&o_minus)? {
            return Err(GeomError::NotTransversal("base point (o⁺, o⁻)".into()));
        }
        Ok(GeometricPair {
            o_plus,
            o_minus,
            universe: Some(universe),
        })
    }

    pub fn o_plus(&self) -> &Subspace<F> {
        &self.o_plus
    }
    pub fn o_minus(&self) -> &Subspace<F> {
        &self.o_minus
    }

    fn complements_of(&self, base: &Subspace<F>) -> Option<Vec<Subspace<F>>> {
        match &self.universe {
            Some(points) => Some(
                points
                    .iter()
                    .filter(|s| s.is_transversal(base).unwrap_or(false))
                    .cloned()
                    .collect(),
            ),
            None => {
                let k = base.ambient() - base.dim();
                let all =
                    Subspace::enumerate(base.field().clone(), base.ambient(), Some(k)).ok()?;
                Some(
                    all.into_iter()
                        .filter(|s| s.is_transversal(base).unwrap())
                        .collect(),
                )
            }
        }
    }
}

impl<F: Field> AssociativePair<F> for GeometricPair<F> {
    type Plus = Subspace<F>;
    type Minus = Subspace<F>;

    fn field(&self) -> &F {
        self.o_plus.field()
    }
    fn plus_zero(&self) -> Subspace<F> {
        self.o_plus.clone()
    }
    fn minus_zero(&self) -> Subspace<F> {
        self.o_minus.clone()
    }
    fn plus_add(&self, x: &Subspace<F>, y: &Subspace<F>) -> Subspace<F> {
        gamma(x, &self.o_minus, &self.o_plus, &self.o_minus, y)
    }
    fn minus_add(&self, x: &Subspace<F>, y: &Subspace<F>) -> Subspace<F> {
        gamma(x, &self.o_plus, &self.o_minus, &self.o_plus, y)
    }
    fn plus_scale(&self, r: &F::Elem, x: &Subspace<F>) -> Subspace<F> {
        pi_extended(r, &self.o_plus, &self.o_minus, x)
    }
    fn minus_scale(&self, r: &F::Elem, x: &Subspace<F>) -> Subspace<F> {
        pi_extended(r, &self.o_minus, &self.o_plus, x)
    }
    fn triple_plus(&self, x: &Subspace<F>, y: &Subspace<F>, z: &Subspace<F>) -> Subspace<F> {
        gamma(x, &self.o_minus, y, &self.o_plus, z)
    }
    fn triple_minus(&self, x: &Subspace<F>, y: &Subspace<F>, z: &Subspace<F>) -> Subspace<F> {
        gamma(x, &self.o_minus, y, &self.o_plus, z)
    }
    fn plus_elements(&self) -> Option<Vec<Subspace<F>>> {
        self.complements_of(&self.o_minus)
    }
    fn minus_elements(&self) -> Option<Vec<Subspace<F>>> {
        self.complements_of(&self.o_plus)
    }
}

/// Extract the associative pair of a Grassmannian geometry at a transversal
/// base point.
pub fn extract_pair<F: Field>(
    o_plus: &Subspace<F>,
    o_minus: &Subspace<F>,
) -> Result<GeometricPair<F>, GeomError> {
    GeometricPair::new(o_plus.clone(), o_minus.clone())
}

/// Quadratic map of the associated Jordan pair: Q⁺(x)y = ⟨xyx⟩⁺.
pub fn jordan_q_plus<F: Field, P: AssociativePair<F>>(
    pair: &P,
    x: &P::Plus,
    y: &P::Minus,
) -> P::Plus {
    pair.triple_plus(x, y, x)
}

pub fn jordan_q_minus<F: Field, P: AssociativePair<F>>(
    pair: &P,
    x: &P::Minus,
    y: &P::Plus,
) -> P::Minus {
    pair.triple_minus(x, y, x)
}

/// Polarized version T⁺(x,y,z) = Q(x+z)y - Q(x)y - Q(z)y; equals
/// ⟨xyz⟩⁺ + ⟨zyx⟩⁺.
pub fn polarized_t_plus<F: Field, P: AssociativePair<F>>(
    pair: &P,
    x: &P::Plus,
    y: &P::Minus,
    z: &P::Plus,
) -> P::Plus {
    let f = pair.field().clone();
    let sum = pair.plus_add(x, z);
    let q_sum = jordan_q_plus(pair, &sum, y);
    let q_x = jordan_q_plus(pair, x, y);
    let q_z = jordan_q_plus(pair, z, y);
    let minus_one = f.from_i64(-1);
    pair.plus_add(
        &q_sum,
        &pair.plus_add(
            &pair.plus_scale(&minus_one, &q_x),
            &pair.plus_scale(&minus_one, &q_z),
        ),
    )
}

/// Check the para-associative pair law on one (x,y,z,u,v) tuple:
/// ⟨xy⟨zuv⟩⁺⟩⁺ = ⟨⟨xyz⟩⁺uv⟩⁺ = ⟨x⟨uzy⟩⁻v⟩⁺ with x,z,v ∈ A⁺, y,u ∈ A⁻.
pub fn pair_para_associative<F: Field, P: AssociativePair<F>>(
    pair: &P,
    x: &P::Plus,
    y: &P::Minus,
    z: &P::Plus,
    u: &P::Minus,
    v: &P::Plus,
) -> bool {
    let lhs = pair.triple_plus(x, y, &pair.triple_plus(z, u, v));
    let mid = pair.triple_plus(x, &pair.triple_minus(u, z, y), v);
    let rhs = pair.triple_plus(&pair.triple_plus(x, y, z), u, v);
    lhs == mid && mid == rhs
}

/// Invertibility of a minus element in the Hom model: x is invertible iff
/// Q(x): A⁺ → A⁻, y ↦ x·y·x is a bijective operator; then x⁻¹ = Q(x)⁻¹ x and
/// the homotope A⁺ with u ·_x v = ⟨uxv⟩⁺ is unital with unit x⁻¹.
pub fn invert_minus<F: Field>(pair: &HomPair<F>, x: &Matrix<F>) -> Option<Matrix<F>> {
    let f = pair.field().clone();
    let (e, fdim) = (pair.dim_e(), pair.dim_f());
    let cells = e * fdim;
    // matrix of Q(x) on the standard basis of A⁺ (f×e matrices, row-major)
    let mut q = Matrix::zero(f.clone(), cells, cells);
    for k in 0..cells {
        let mut basis = Matrix::zero(f.clone(), fdim, e);
        basis.set(k / e, k % e, f.one());
        let image = x.mul(&basis).mul(x); // e×f
        for (idx, v) in image.data().iter().enumerate() {
            q.set(idx, k, v.clone());
        }
    }
    let x_flat: Vec<F::Elem> = x.data().to_vec();
    let sol = q.solve(&x_flat)?;
    if q.rank() < cells {
        return None;
    }
    Some(Matrix::new(f, fdim, e, sol))
}

/// Plus-side version: X ∈ A⁺ is invertible iff Q(X): A⁻ → A⁺, y ↦ ⟨XyX⟩⁺
/// is bijective; then X⁻¹ = Q(X)⁻¹ X lives in A⁻.
pub fn invert_plus<F: Field>(pair: &HomPair<F>, x: &Matrix<F>) -> Option<Matrix<F>> {
    let f = pair.field().clone();
    let (e, fdim) = (pair.dim_e(), pair.dim_f());
    let cells = e * fdim;
    let mut q = Matrix::zero(f.clone(), cells, cells);
    for k in 0..cells {
        let mut basis = Matrix::zero(f.clone(), e, fdim);
        basis.set(k / fdim, k % fdim, f.one());
        let image = x.mul(&basis).mul(x); // f×e
        for (idx, v) in image.data().iter().enumerate() {
            q.set(idx, k, v.clone());
        }
    }
    let x_flat: Vec<F::Elem> = x.data().to_vec();
    let sol = q.solve(&x_flat)?;
    if q.rank() < cells {
        return None;
    }
    Some(Matrix::new(f, e, fdim, sol))
}

/// An associative algebra given by structure constants over a field:
/// `c[i][j][k]` = coefficient of e_k in e_i · e_j.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructureAlgebra<F: Field> {
    field: F,
    dim: usize,
    consts: Vec<F::Elem>,
}

impl<F: Field> StructureAlgebra<F> {
    pub fn new(field: F, dim: usize, consts: Vec<F::Elem>) -> Result<Self, GeomError> {
        if consts.len() != dim * dim * dim {
            return Err(GeomError::DimensionMismatch(format!(
                "expected {} structure constants, got {}",
                dim * dim * dim,
                consts.len()
            )));
        }
        Ok(StructureAlgebra { field, dim, consts })
    }

    /// The full matrix algebra M(m, F) on the basis E_ij (row-major).
    pub fn matrix_algebra(field: F, m: usize) -> Self {
        let d = m * m;
        let mut consts = vec![field.zero(); d * d * d];
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        // E_ij · E_kl = δ_jk E_il
                        if j == k {
                            let bi = i * m + j;
                            let bj = k * m + l;
                            let bk = i * m + l;
                            consts[(bi * d + bj) * d + bk] = field.one();
                        }
                    }
                }
            }
        }
        StructureAlgebra {
            field,
            dim: d,
            consts,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn consts(&self) -> &[F::Elem] {
        &self.consts
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &F::Elem {
        &self.consts[(i * self.dim + j) * self.dim + k]
    }

    pub fn mul(&self, u: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let d = self.dim;
        let mut out = vec![f.zero(); d];
        for i in 0..d {
            if f.is_zero(&u[i]) {
                continue;
            }
            for j in 0..d {
                if f.is_zero(&v[j]) {
                    continue;
                }
                let uv = f.mul(&u[i], &v[j]);
                for k in 0..d {
                    let c = self.c(i, j, k);
                    if !f.is_zero(c) {
                        out[k] = f.add(&out[k], &f.mul(&uv, c));
                    }
                }
            }
        }
        out
    }

    pub fn is_associative_on_basis(&self) -> bool {
        let d = self.dim;
        let f = &self.field;
        let basis = |i: usize| {
            let mut v = vec![f.zero(); d];
            v[i] = f.one();
            v
        };
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let lhs = self.mul(&self.mul(&basis(i), &basis(j)), &basis(k));
                    let rhs = self.mul(&basis(i), &self.mul(&basis(j), &basis(k)));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Column-action matrix of left multiplication by `u`.
    pub fn left_mult_matrix(&self, u: &[F::Elem]) -> Matrix<F> {
        let f = self.field.clone();
        let d = self.dim;
        let mut m = Matrix::zero(f.clone(), d, d);
        for j in 0..d {
            let mut basis = vec![f.zero(); d];
            basis[j] = f.one();
            let col = self.mul(u, &basis);
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn right_mult_matrix(&self, u: &[F::Elem]) -> Matrix<F> {
        let f = self.field.clone();
        let d = self.dim;
        let mut m = Matrix::zero(f.clone(), d, d);
        for j in 0..d {
            let mut basis = vec![f.zero(); d];
            basis[j] = f.one();
            let col = self.mul(&basis, u);
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// The two-sided unit, when one exists (solved as a linear system).
    pub fn unit(&self) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let d = self.dim;
        // unknowns u_i; equations: u·e_j = e_j and e_j·u = e_j for all j
        let mut m = Matrix::zero(f.clone(), 2 * d * d, d);
        let mut rhs = vec![f.zero(); 2 * d * d];
        for j in 0..d {
            for k in 0..d {
                for i in 0..d {
                    m.set(j * d + k, i, self.c(i, j, k).clone());
                    m.set(d * d + j * d + k, i, self.c(j, i, k).clone());
                }
                let target = if j == k { f.one() } else { f.zero() };
                rhs[j * d + k] = target.clone();
                rhs[d * d + j * d + k] = target;
            }
        }
        m.solve(&rhs)
    }

    pub fn is_idempotent(&self, e: &[F::Elem]) -> bool {
        self.mul(e, e) == e
    }

    /// Peirce block A_ij = {x : e·x = i·x, x·e = j·x} for an idempotent e.
    pub fn peirce_block(&self, e: &[F::Elem], i: u8, j: u8) -> Subspace<F> {
        let f = self.field.clone();
        let d = self.dim;
        let id = Matrix::identity(f.clone(), d);
        let le = self.left_mult_matrix(e);
        let re = self.right_mult_matrix(e);
        let li = if i == 1 { le.sub(&id) } else { le };
        let rj = if j == 1 { re.sub(&id) } else { re };
        let ker = li.vstack(&rj).kernel();
        Subspace::from_matrix(&ker)
    }
}

/// Peirce decomposition of an algebra with idempotent, with the off-diagonal
/// blocks carrying the associative pair (A⁺, A⁻) = (eÂf, fÂe).
#[derive(Clone, Debug)]
pub struct ImbeddedAlgebra<F: Field> {
    pub algebra: StructureAlgebra<F>,
    pub idempotent: Vec<F::Elem>,
    pub a00: Subspace<F>,
    pub a01: Subspace<F>,
    pub a10: Subspace<F>,
    pub a11: Subspace<F>,
}

impl<F: Field> ImbeddedAlgebra<F> {
    pub fn peirce_dims(&self) -> [usize; 4] {
        [
            self.a00.dim(),
            self.a01.dim(),
            self.a10.dim(),
            self.a11.dim(),
        ]
    }
}

/// Standard imbedding of the Hom pair: Â = End(E ⊕ F) with e the projector
/// onto E. The plus space is A₁₀ = eÂf ≅ Hom(F,E) and the minus space
/// A₀₁ = fÂe ≅ Hom(E,F); the reverse labeling is also in circulation, which
/// is why pair isomorphism below is checked up to swapping ±.
pub fn standard_imbedding<F: Field>(pair: &HomPair<F>) -> ImbeddedAlgebra<F> {
    let f = pair.field().clone();
    let m = pair.dim_e() + pair.dim_f();
    let algebra = StructureAlgebra::matrix_algebra(f.clone(), m);
    let mut idem = vec![f.zero(); m * m];
    for i in 0..pair.dim_e() {
        idem[i * m + i] = f.one();
    }
    let a00 = algebra.peirce_block(&idem, 0, 0);
    let a01 = algebra.peirce_block(&idem, 0, 1);
    let a10 = algebra.peirce_block(&idem, 1, 0);
    let a11 = algebra.peirce_block(&idem, 1, 1);
    ImbeddedAlgebra {
        algebra,
        idempotent: idem,
        a00,
        a01,
        a10,
        a11,
    }
}

/// All right ideals of a finite unital algebra, enumerated as the join
/// closure of the cyclic ideals vÂ. Every right ideal is a sum of cyclic
/// ones, so the closure is exhaustive; each result is verified closed under
/// right multiplication by the basis.
pub fn right_ideals<F: Field>(alg: &StructureAlgebra<F>) -> Result<Vec<Subspace<F>>, GeomError> {
    let f = alg.field().clone();
    let d = alg.dim();
    let Some(p) = f.order() else {
        return Err(GeomError::NotFinite);
    };
    if (p as f64).powi(d as i32) > 65536.0 {
        return Err(GeomError::SizeGuard(format!(
            "right-ideal enumeration needs p^dim <= 2^16, got {p}^{d}"
        )));
    }
    let elems = f.elements().expect("finite field");
    let mut ideals: BTreeSet<Subspace<F>> = BTreeSet::new();
    ideals.insert(Subspace::zero(f.clone(), d));
    // cyclic ideals vÂ = span{v·e_k}
    let mut counters = vec![0usize; d];
    loop {
        let v: Vec<F::Elem> = counters.iter().map(|&i| elems[i].clone()).collect();
        let mut rows = Vec::with_capacity(d);
        for k in 0..d {
            let mut basis = vec![f.zero(); d];
            basis[k] = f.one();
            rows.push(alg.mul(&v, &basis));
        }
        ideals.insert(Subspace::from_rows(f.clone(), d, rows));
        let mut carry = true;
        for slot in (0..d).rev() {
            counters[slot] += 1;
            if counters[slot] < elems.len() {
                carry = false;
                break;
            }
            counters[slot] = 0;
        }
        if carry || d == 0 {
            break;
        }
    }
    // close under joins
    loop {
        let snapshot: Vec<Subspace<F>> = ideals.iter().cloned().collect();
        let before = ideals.len();
        for i in 0..snapshot.len() {
            for j in i + 1..snapshot.len() {
                ideals.insert(snapshot[i].join(&snapshot[j])?);
            }
        }
        if ideals.len() == before {
            break;
        }
    }
    let out: Vec<Subspace<F>> = ideals.into_iter().collect();
    // closure verification
    for ideal in &out {
        for r in 0..ideal.dim() {
            let row = ideal.basis().row(r).to_vec();
            for k in 0..d {
                let mut basis = vec![f.zero(); d];
                basis[k] = f.one();
                let prod = alg.mul(&row, &basis);
                if !ideal.contains(&prod) {
                    return Err(GeomError::Membership(
                        "v·e_k".into(),
                        "right ideal".into(),
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// The Grassmannian geometry of right ideals of Â with base point
/// (eÂ, fÂ), realized as F-subspaces of Â closed under right multiplication.
#[derive(Clone, Debug)]
pub struct RightIdealGeometry<F: Field> {
    pub algebra: StructureAlgebra<F>,
    pub ideals: Vec<Subspace<F>>,
    pub o_plus: Subspace<F>,
    pub o_minus: Subspace<F>,
}

/// Build the associative geometry of an associative pair: imbed the pair
/// into Â = End(E ⊕ F), take the Grassmannian of right ideals of Â, and use
/// (eÂ, fÂ) as base point.
pub fn geometry_from_pair<F: Field>(
    pair: &HomPair<F>,
) -> Result<(ImbeddedAlgebra<F>, RightIdealGeometry<F>), GeomError> {
    let imbedded = standard_imbedding(pair);
    let alg = imbedded.algebra.clone();
    let f = alg.field().clone();
    let d = alg.dim();
    let ideals = right_ideals(&alg)?;
    let one = alg.unit().expect("matrix algebra is unital");
    let mut fplus = imbedded.idempotent.clone();
    for i in 0..d {
        fplus[i] = f.sub(&one[i], &imbedded.idempotent[i]);
    }
    // eÂ and fÂ as row spaces of {e·basis_k}, {f·basis_k}
    let principal = |gen: &[F::Elem]| {
        let rows: Vec<Vec<F::Elem>> = (0..d)
            .map(|k| {
                let mut basis = vec![f.zero(); d];
                basis[k] = f.one();
                alg.mul(gen, &basis)
            })
            .collect();
        Subspace::from_rows(f.clone(), d, rows)
    };
    let o_plus = principal(&imbedded.idempotent);
    let o_minus = principal(&fplus);
    Ok((
        imbedded,
        RightIdealGeometry {
            algebra: alg,
            ideals,
            o_plus,
            o_minus,
        },
    ))
}

impl<F: Field> RightIdealGeometry<F> {
    /// The pair of the geometry at (eÂ, fÂ), elements restricted to ideals.
    pub fn pair(&self) -> Result<GeometricPair<F>, GeomError> {
        GeometricPair::with_universe(
            self.o_plus.clone(),
            self.o_minus.clone(),
            self.ideals.clone(),
        )
    }
}

/// Extract the unital algebra of a transversal triple (a, u, c): the module
/// U_c with origin a, unit u and product x·z = Γ(x,a,u,c,z), returned as
/// structure constants on the chart basis of Hom(a, c) together with the
/// chart used for the coordinates.
pub fn extract_algebra<F: Field>(
    a: &Subspace<F>,
    u: &Subspace<F>,
    c: &Subspace<F>,
) -> Result<(StructureAlgebra<F>, Vec<F::Elem>, Chart<F>), GeomError> {
    for (s, t) in [(a, u), (a, c), (u, c)] {
        if !s.is_transversal(t)? {
            return Err(GeomError::NotTransversal("triple (a,u,c)".into()));
        }
    }
    let f = a.field().clone();
    let chart = Chart::new(c.clone(), a.clone())?;
    let (dm, dp) = (chart.dim_minus(), chart.dim_plus());
    let d = dm * dp;
    let basis_mat = |idx: usize| {
        let mut m = Matrix::zero(f.clone(), dm, dp);
        m.set(idx / dp, idx % dp, f.one());
        m
    };
    let mut consts = vec![f.zero(); d * d * d];
    for i in 0..d {
        let xi = chart.encode_plus(&basis_mat(i));
        for j in 0..d {
            let zj = chart.encode_plus(&basis_mat(j));
            let prod = gamma(&xi, a, u, c, &zj);
            let m = chart
                .decode_plus(&prod)
                .ok_or_else(|| GeomError::Membership("x·z".into(), "U_c chart".into()))?;
            for (k, v) in m.data().iter().enumerate() {
                consts[(i * d + j) * d + k] = v.clone();
            }
        }
    }
    let unit_mat = chart
        .decode_plus(u)
        .ok_or_else(|| GeomError::Membership("u".into(), "U_c chart".into()))?;
    let unit = unit_mat.data().to_vec();
    Ok((StructureAlgebra::new(f, d, consts)?, unit, chart))
}

/// Structure constants of a homotope algebra x ·_a y = ⟨x a y⟩⁺ on the plus
/// space of a Hom pair (standard basis, row-major).
pub fn homotope_algebra<F: Field>(pair: &HomPair<F>, a: &Matrix<F>) -> StructureAlgebra<F> {
    let f = pair.field().clone();
    let (e, fdim) = (pair.dim_e(), pair.dim_f());
    let d = e * fdim;
    let basis_mat = |idx: usize| {
        let mut m = Matrix::zero(f.clone(), fdim, e);
        m.set(idx / e, idx % e, f.one());
        m
    };
    let mut consts = vec![f.zero(); d * d * d];
    for i in 0..d {
        for j in 0..d {
            let prod = pair.triple_plus(&basis_mat(i), a, &basis_mat(j));
            for (k, v) in prod.data().iter().enumerate() {
                consts[(i * d + j) * d + k] = v.clone();
            }
        }
    }
    StructureAlgebra::new(f, d, consts).expect("constant count matches")
}

/// An abstract associative pair given by structure constants: elements are
/// coordinate vectors, and `plus_consts[((i*dm)+j)*dp+k]` holds the
/// coordinates of ⟨e_i f_j e_k⟩⁺ (a vector of length `dp`), likewise for the
/// minus side. This is how pairs that do not come from a Hom model enter the
/// system.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TablePair<F: Field> {
    field: F,
    dim_plus: usize,
    dim_minus: usize,
    plus_consts: Vec<Vec<F::Elem>>,
    minus_consts: Vec<Vec<F::Elem>>,
}

impl<F: Field> TablePair<F> {
    pub fn new(
        field: F,
        dim_plus: usize,
        dim_minus: usize,
        plus_consts: Vec<Vec<F::Elem>>,
        minus_consts: Vec<Vec<F::Elem>>,
    ) -> Result<Self, GeomError> {
        if plus_consts.len() != dim_plus * dim_minus * dim_plus
            || plus_consts.iter().any(|v| v.len() != dim_plus)
        {
            return Err(GeomError::DimensionMismatch(
                "plus-product table has the wrong shape".into(),
            ));
        }
        if minus_consts.len() != dim_minus * dim_plus * dim_minus
            || minus_consts.iter().any(|v| v.len() != dim_minus)
        {
            return Err(GeomError::DimensionMismatch(
                "minus-product table has the wrong shape".into(),
            ));
        }
        Ok(TablePair {
            field,
            dim_plus,
            dim_minus,
            plus_consts,
            minus_consts,
        })
    }

    /// Linearize a Hom pair into its structure-constant presentation.
    pub fn from_hom(pair: &HomPair<F>) -> Self {
        let f = pair.field().clone();
        let (e, fd) = (pair.dim_e(), pair.dim_f());
        let (dp, dm) = (e * fd, e * fd);
        let basis_plus = |idx: usize| {
            let mut m = Matrix::zero(f.clone(), fd, e);
            m.set(idx / e, idx % e, f.one());
            m
        };
        let basis_minus = |idx: usize| {
            let mut m = Matrix::zero(f.clone(), e, fd);
            m.set(idx / fd, idx % fd, f.one());
            m
        };
        let mut plus_consts = Vec::with_capacity(dp * dm * dp);
        for i in 0..dp {
            for j in 0..dm {
                for k in 0..dp {
                    let prod = pair.triple_plus(&basis_plus(i), &basis_minus(j), &basis_plus(k));
                    plus_consts.push(prod.data().to_vec());
                }
            }
        }
        let mut minus_consts = Vec::with_capacity(dm * dp * dm);
        for i in 0..dm {
            for j in 0..dp {
                for k in 0..dm {
                    let prod = pair.triple_minus(&basis_minus(i), &basis_plus(j), &basis_minus(k));
                    minus_consts.push(prod.data().to_vec());
                }
            }
        }
        TablePair {
            field: f,
            dim_plus: dp,
            dim_minus: dm,
            plus_consts,
            minus_consts,
        }
    }

    pub fn dim_plus(&self) -> usize {
        self.dim_plus
    }
    pub fn dim_minus(&self) -> usize {
        self.dim_minus
    }
    pub fn plus_consts(&self) -> &[Vec<F::Elem>] {
        &self.plus_consts
    }
    pub fn minus_consts(&self) -> &[Vec<F::Elem>] {
        &self.minus_consts
    }

    fn trilinear(
        &self,
        consts: &[Vec<F::Elem>],
        out_dim: usize,
        mid_dim: usize,
        x: &[F::Elem],
        y: &[F::Elem],
        z: &[F::Elem],
    ) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); out_dim];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let xy = f.mul(xi, yj);
                for (k, zk) in z.iter().enumerate() {
                    if f.is_zero(zk) {
                        continue;
                    }
                    let coeff = f.mul(&xy, zk);
                    let entry = &consts[(i * mid_dim + j) * out_dim + k];
                    for (slot, c) in entry.iter().enumerate() {
                        if !f.is_zero(c) {
                            out[slot] = f.add(&out[slot], &f.mul(&coeff, c));
                        }
                    }
                }
            }
        }
        out
    }

    fn enumerate_vectors(&self, dim: usize) -> Option<Vec<Vec<F::Elem>>> {
        let elems = self.field.elements()?;
        if (elems.len() as f64).powi(dim as i32) > 65536.0 {
            return None;
        }
        let mut out = Vec::new();
        let mut counters = vec![0usize; dim];
        loop {
            out.push(counters.iter().map(|&i| elems[i].clone()).collect());
            let mut carry = true;
            for slot in (0..dim).rev() {
                counters[slot] += 1;
                if counters[slot] < elems.len() {
                    carry = false;
                    break;
                }
                counters[slot] = 0;
            }
            if carry || dim == 0 {
                break;
            }
        }
        Some(out)
    }
}

impl<F: Field> AssociativePair<F> for TablePair<F> {
    type Plus = Vec<F::Elem>;
    type Minus = Vec<F::Elem>;

    fn field(&self) -> &F {
        &self.field
    }
    fn plus_zero(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim_plus]
    }
    fn minus_zero(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim_minus]
    }
    fn plus_add(&self, x: &Vec<F::Elem>, y: &Vec<F::Elem>) -> Vec<F::Elem> {
        x.iter().zip(y).map(|(a, b)| self.field.add(a, b)).collect()
    }
    fn minus_add(&self, x: &Vec<F::Elem>, y: &Vec<F::Elem>) -> Vec<F::Elem> {
        x.iter().zip(y).map(|(a, b)| self.field.add(a, b)).collect()
    }
    fn plus_scale(&self, r: &F::Elem, x: &Vec<F::Elem>) -> Vec<F::Elem> {
        x.iter().map(|a| self.field.mul(r, a)).collect()
    }
    fn minus_scale(&self, r: &F::Elem, x: &Vec<F::Elem>) -> Vec<F::Elem> {
        x.iter().map(|a| self.field.mul(r, a)).collect()
    }
    fn triple_plus(&self, x: &Vec<F::Elem>, y: &Vec<F::Elem>, z: &Vec<F::Elem>) -> Vec<F::Elem> {
        self.trilinear(&self.plus_consts, self.dim_plus, self.dim_minus, x, y, z)
    }
    fn triple_minus(&self, x: &Vec<F::Elem>, y: &Vec<F::Elem>, z: &Vec<F::Elem>) -> Vec<F::Elem> {
        self.trilinear(&self.minus_consts, self.dim_minus, self.dim_plus, x, y, z)
    }
    fn plus_elements(&self) -> Option<Vec<Vec<F::Elem>>> {
        self.enumerate_vectors(self.dim_plus)
    }
    fn minus_elements(&self) -> Option<Vec<Vec<F::Elem>>> {
        self.enumerate_vectors(self.dim_minus)
    }
}

/// A finite K-module presented by index tables, used to search for pair and
/// ring isomorphisms without caring about the concrete element type.
#[derive(Clone, Debug)]
struct IndexModule {
    zero: usize,
    add: Vec<Vec<usize>>,
    scale: Vec<Vec<usize>>, // [scalar][elem]
}

impl IndexModule {
    fn size(&self) -> usize {
        self.add.len()
    }
}

/// Pair data flattened to index tables over canonical element lists.
pub struct LinearizedPair {
    plus: IndexModule,
    minus: IndexModule,
    tp: Vec<usize>, // [x*|M|*|P| + y*|P| + z]
    tm: Vec<usize>,
}

impl LinearizedPair {
    fn swap(self) -> Self {
        LinearizedPair {
            plus: self.minus,
            minus: self.plus,
            tp: self.tm,
            tm: self.tp,
        }
    }
}

/// Flatten a finite pair to index tables. `None` if enumeration is
/// unavailable or too big.
pub fn linearize<F: Field, P: AssociativePair<F>>(pair: &P) -> Option<LinearizedPair> {
    let f = pair.field();
    let scalars = f.elements()?;
    let plus: Vec<P::Plus> = {
        let mut v = pair.plus_elements()?;
        v.sort();
        v
    };
    let minus: Vec<P::Minus> = {
        let mut v = pair.minus_elements()?;
        v.sort();
        v
    };
    if plus.len() * plus.len() * minus.len() > 1 << 20 {
        return None;
    }
    let pidx = |x: &P::Plus| plus.binary_search(x).ok();
    let midx = |x: &P::Minus| minus.binary_search(x).ok();

    let mut pm = IndexModule {
        zero: pidx(&pair.plus_zero())?,
        add: vec![vec![0; plus.len()]; plus.len()],
        scale: vec![vec![0; plus.len()]; scalars.len()],
    };
    for (i, x) in plus.iter().enumerate() {
        for (j, y) in plus.iter().enumerate() {
            pm.add[i][j] = pidx(&pair.plus_add(x, y))?;
        }
        for (s, r) in scalars.iter().enumerate() {
            pm.scale[s][i] = pidx(&pair.plus_scale(r, x))?;
        }
    }
    let mut mm = IndexModule {
        zero: midx(&pair.minus_zero())?,
        add: vec![vec![0; minus.len()]; minus.len()],
        scale: vec![vec![0; minus.len()]; scalars.len()],
    };
    for (i, x) in minus.iter().enumerate() {
        for (j, y) in minus.iter().enumerate() {
            mm.add[i][j] = midx(&pair.minus_add(x, y))?;
        }
        for (s, r) in scalars.iter().enumerate() {
            mm.scale[s][i] = midx(&pair.minus_scale(r, x))?;
        }
    }
    let (np, nm) = (plus.len(), minus.len());
    let mut tp = vec![0; np * nm * np];
    for (i, x) in plus.iter().enumerate() {
        for (j, y) in minus.iter().enumerate() {
            for (k, z) in plus.iter().enumerate() {
                tp[(i * nm + j) * np + k] = pidx(&pair.triple_plus(x, y, z))?;
            }
        }
    }
    let mut tm = vec![0; nm * np * nm];
    for (i, x) in minus.iter().enumerate() {
        for (j, y) in plus.iter().enumerate() {
            for (k, z) in minus.iter().enumerate() {
                tm[(i * np + j) * nm + k] = midx(&pair.triple_minus(x, y, z))?;
            }
        }
    }
    Some(LinearizedPair {
        plus: pm,
        minus: mm,
        tp,
        tm,
    })
}

/// Greedy basis of an index module: elements outside the span of the ones
/// already chosen, where the span is closed under add and scalar action.
fn module_basis(m: &IndexModule) -> Vec<usize> {
    let n = m.size();
    let mut span = vec![false; n];
    span[m.zero] = true;
    let mut basis = Vec::new();
    for cand in 0..n {
        if span[cand] {
            continue;
        }
        basis.push(cand);
        span[cand] = true;
        // close the span under scalar action and addition
        loop {
            let mut changed = false;
            let members: Vec<usize> = (0..n).filter(|&i| span[i]).collect();
            for &x in &members {
                for row in &m.scale {
                    if !span[row[x]] {
                        span[row[x]] = true;
                        changed = true;
                    }
                }
                for &y in &members {
                    let s = m.add[x][y];
                    if !span[s] {
                        span[s] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }
    basis
}

/// All module isomorphisms source → target as index maps, by assigning
/// basis images and extending linearly.
fn module_isomorphisms(src: &IndexModule, dst: &IndexModule, scalars: usize) -> Vec<Vec<usize>> {
    let n = src.size();
    if dst.size() != n {
        return Vec::new();
    }
    let basis = module_basis(src);
    let g = basis.len();
    let mut out = Vec::new();
    // odometer over image tuples
    let mut images = vec![0usize; g];
    loop {
        if let Some(map) = extend_linearly(src, dst, &basis, &images, scalars) {
            out.push(map);
        }
        let mut carry = true;
        for slot in (0..g).rev() {
            images[slot] += 1;
            if images[slot] < n {
                carry = false;
                break;
            }
            images[slot] = 0;
        }
        if carry || g == 0 {
            break;
        }
    }
    if g == 0 {
        // zero module: the unique map
        out.push(vec![dst.zero; n.max(1)]);
        out.truncate(1);
    }
    out
}

/// Extend basis images to a full linear map by enumerating coefficient
/// tuples; `None` unless the result is a bijection.
fn extend_linearly(
    src: &IndexModule,
    dst: &IndexModule,
    basis: &[usize],
    images: &[usize],
    scalars: usize,
) -> Option<Vec<usize>> {
    let n = src.size();
    let g = basis.len();
    let mut map = vec![usize::MAX; n];
    let mut coeffs = vec![0usize; g];
    loop {
        let mut s_elem = src.zero;
        let mut d_elem = dst.zero;
        for i in 0..g {
            let sb = src.scale[coeffs[i]][basis[i]];
            let db = dst.scale[coeffs[i]][images[i]];
            s_elem = src.add[s_elem][sb];
            d_elem = dst.add[d_elem][db];
        }
        if map[s_elem] != usize::MAX && map[s_elem] != d_elem {
            return None; // same source reached with conflicting images
        }
        map[s_elem] = d_elem;
        let mut carry = true;
        for slot in (0..g).rev() {
            coeffs[slot] += 1;
            if coeffs[slot] < scalars {
                carry = false;
                break;
            }
            coeffs[slot] = 0;
        }
        if carry || g == 0 {
            break;
        }
    }
    // total and bijective?
    if map.iter().any(|&v| v == usize::MAX) {
        return None;
    }
    let mut seen = vec![false; n];
    for &v in &map {
        if seen[v] {
            return None;
        }
        seen[v] = true;
    }
    Some(map)
}

/// A pair isomorphism as index maps (plus, minus), found by search.
pub struct PairIso {
    pub plus_map: Vec<usize>,
    pub minus_map: Vec<usize>,
    pub swapped: bool,
}

/// Search for an isomorphism of associative pairs, trying both the direct
/// orientation and the one with ± swapped.
pub fn find_pair_isomorphism<F, P, Q>(p: &P, q: &Q) -> Option<PairIso>
where
    F: Field,
    P: AssociativePair<F>,
    Q: AssociativePair<F>,
{
    let scalars = p.field().elements()?.len();
    let lp = linearize(p)?;
    let lq = linearize(q)?;
    if let Some((pm, mm)) = find_linearized_iso(&lp, &lq, scalars) {
        return Some(PairIso {
            plus_map: pm,
            minus_map: mm,
            swapped: false,
        });
    }
    let lq_swapped = linearize(q)?.swap();
    find_linearized_iso(&lp, &lq_swapped, scalars).map(|(pm, mm)| PairIso {
        plus_map: pm,
        minus_map: mm,
        swapped: true,
    })
}

fn find_linearized_iso(
    p: &LinearizedPair,
    q: &LinearizedPair,
    scalars: usize,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let (np, nm) = (p.plus.size(), p.minus.size());
    if q.plus.size() != np || q.minus.size() != nm {
        return None;
    }
    let plus_isos = module_isomorphisms(&p.plus, &q.plus, scalars);
    let minus_isos = module_isomorphisms(&p.minus, &q.minus, scalars);
    for pm in &plus_isos {
        for mm in &minus_isos {
            let ok_plus = (0..np).all(|x| {
                (0..nm).all(|y| {
                    (0..np).all(|z| {
                        let src = p.tp[(x * nm + y) * np + z];
                        let dst = q.tp[(pm[x] * nm + mm[y]) * np + pm[z]];
                        pm[src] == dst
                    })
                })
            });
            if !ok_plus {
                continue;
            }
            let ok_minus = (0..nm).all(|x| {
                (0..np).all(|y| {
                    (0..nm).all(|z| {
                        let src = p.tm[(x * np + y) * nm + z];
                        let dst = q.tm[(mm[x] * np + pm[y]) * nm + mm[z]];
                        mm[src] == dst
                    })
                })
            });
            if ok_minus {
                return Some((pm.clone(), mm.clone()));
            }
        }
    }
    None
}

/// Search for a unit-preserving ring isomorphism between two structure
/// algebras of equal small dimension, enumerating invertible matrices.
pub fn find_ring_isomorphism<F: Field>(
    a: &StructureAlgebra<F>,
    b: &StructureAlgebra<F>,
) -> Option<Matrix<F>> {
    let f = a.field().clone();
    if a.dim() != b.dim() || *b.field() != f {
        return None;
    }
    let d = a.dim();
    let elems = f.elements()?;
    let p = elems.len();
    if (p as f64).powi((d * d) as i32) > 1e6 {
        return None;
    }
    let unit_a = a.unit()?;
    let unit_b = b.unit()?;
    let basis = |i: usize| {
        let mut v = vec![f.zero(); d];
        v[i] = f.one();
        v
    };
    let mut counters = vec![0usize; d * d];
    loop {
        let data: Vec<F::Elem> = counters.iter().map(|&i| elems[i].clone()).collect();
        let t = Matrix::new(f.clone(), d, d, data);
        if t.mul_col(&unit_a) == unit_b && t.inverse().is_some() {
            let multiplicative = (0..d).all(|i| {
                (0..d).all(|j| {
                    let lhs = t.mul_col(&a.mul(&basis(i), &basis(j)));
                    let rhs = b.mul(&t.mul_col(&basis(i)), &t.mul_col(&basis(j)));
                    lhs == rhs
                })
            });
            if multiplicative {
                return Some(t);
            }
        }
        let mut carry = true;
        for slot in (0..d * d).rev() {
            counters[slot] += 1;
            if counters[slot] < p {
                carry = false;
                break;
            }
            counters[slot] = 0;
        }
        if carry {
            break;
        }
    }
    None
}
