//! Affine charts: Hom-coordinates on the Grassmannian and the rational
//! formulas for Γ in those coordinates.
//!
//! A chart is a decomposition W = m ⊕ p ("minus" and "plus" part). Elements
//! transversal to m are graphs {(Xv, v)} of maps X: p → m; elements
//! transversal to p are graphs {(u, Au)} of maps A: m → p. Sign convention:
//! the subspace with upper coordinate A is the kernel of the row (-A, 1), so
//! products like `ax` evaluate to `1 - AX`. All formulas below depend on it.

use crate::error::GeomError;
use crate::field::Field;
use crate::matrix::Matrix;
use crate::subspace::Subspace;

#[derive(Clone, Debug)]
pub struct Chart<F: Field> {
    field: F,
    minus: Subspace<F>,
    plus: Subspace<F>,
    /// Inverse of the stacked bases, for coordinate extraction.
    to_coords: Matrix<F>,
}

impl<F: Field> Chart<F> {
    /// Chart along an arbitrary transversal decomposition.
    pub fn new(minus: Subspace<F>, plus: Subspace<F>) -> Result<Self, GeomError> {
        minus.check_compatible(&plus)?;
        if !minus.is_transversal(&plus)? {
            return Err(GeomError::NotTransversal(
                "chart needs a transversal decomposition".into(),
            ));
        }
        let stacked = minus.basis().vstack(plus.basis());
        let to_coords = stacked.inverse().expect("transversal pair stacks invertibly");
        Ok(Chart {
            field: minus.field().clone(),
            minus,
            plus,
            to_coords,
        })
    }

    /// The coordinate chart W = F^q ⊕ F^p on the standard basis.
    pub fn coordinate(field: F, dim_minus: usize, dim_plus: usize) -> Self {
        let n = dim_minus + dim_plus;
        let minus = Subspace::coordinate(field.clone(), n, &(0..dim_minus).collect::<Vec<_>>());
        let plus = Subspace::coordinate(field, n, &(dim_minus..n).collect::<Vec<_>>());
        Chart::new(minus, plus).expect("coordinate split is transversal")
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ambient(&self) -> usize {
        self.minus.ambient()
    }
    pub fn dim_minus(&self) -> usize {
        self.minus.dim()
    }
    pub fn dim_plus(&self) -> usize {
        self.plus.dim()
    }
    pub fn o_minus(&self) -> &Subspace<F> {
        &self.minus
    }
    pub fn o_plus(&self) -> &Subspace<F> {
        &self.plus
    }

    /// Graph of X: plus → minus, an element of U_{o⁻}. X is q×p.
    pub fn encode_plus(&self, x: &Matrix<F>) -> Subspace<F> {
        assert_eq!((x.rows(), x.cols()), (self.dim_minus(), self.dim_plus()));
        // row for plus-basis vector j: (X e_j)·B_minus + e_j·B_plus
        let rows = x
            .transpose()
            .mul(self.minus.basis())
            .add(self.plus.basis());
        Subspace::from_matrix(&rows)
    }

    /// Graph of A: minus → plus, an element of U_{o⁺}. A is p×q.
    pub fn encode_minus(&self, a: &Matrix<F>) -> Subspace<F> {
        assert_eq!((a.rows(), a.cols()), (self.dim_plus(), self.dim_minus()));
        let rows = self
            .minus
            .basis()
            .add(&a.transpose().mul(self.plus.basis()));
        Subspace::from_matrix(&rows)
    }

    /// Image of a subspace in split coordinates (minus block first). Under
    /// this map a subspace of W becomes a linear relation between the minus
    /// and plus coordinate spaces.
    pub fn to_split_coords(&self, s: &Subspace<F>) -> Subspace<F> {
        Subspace::from_matrix(&s.basis().mul(&self.to_coords))
    }

    /// Inverse of [`Chart::to_split_coords`].
    pub fn from_split_coords(&self, s: &Subspace<F>) -> Subspace<F> {
        let stacked = self.minus.basis().vstack(self.plus.basis());
        Subspace::from_matrix(&s.basis().mul(&stacked))
    }

    /// Coordinates of a subspace transversal to the minus part.
    pub fn decode_plus(&self, s: &Subspace<F>) -> Option<Matrix<F>> {
        if s.dim() != self.dim_plus() {
            return None;
        }
        let coords = s.basis().mul(&self.to_coords);
        let q = self.dim_minus();
        let c_minus = coords.col_slice(0, q);
        let c_plus = coords.col_slice(q, q + self.dim_plus());
        let inv = c_plus.inverse()?;
        Some(inv.mul(&c_minus).transpose())
    }

    /// Coordinates of a subspace transversal to the plus part.
    pub fn decode_minus(&self, s: &Subspace<F>) -> Option<Matrix<F>> {
        if s.dim() != self.dim_minus() {
            return None;
        }
        let coords = s.basis().mul(&self.to_coords);
        let q = self.dim_minus();
        let c_minus = coords.col_slice(0, q);
        let c_plus = coords.col_slice(q, q + self.dim_plus());
        let inv = c_minus.inverse()?;
        Some(inv.mul(&c_plus).transpose())
    }
}

/// The general rational formula `Γ(X,A,Y,B,Z) = N·D⁻¹` with
/// `D = (1-AX)⁻¹(1-AY) - 1 + (1-BZ)⁻¹(1-BY)` and
/// `N = X(1-AX)⁻¹(1-AY) - Y + Z(1-BZ)⁻¹(1-BY)`.
///
/// A singular denominator means the value of Γ leaves the chart; that is a
/// property of the chart, not of Γ, and callers may fall back to
/// `gamma_extended` on the encoded subspaces.
pub fn gamma_affine<F: Field>(
    x: &Matrix<F>,
    a: &Matrix<F>,
    y: &Matrix<F>,
    b: &Matrix<F>,
    z: &Matrix<F>,
) -> Result<Matrix<F>, GeomError> {
    let f = x.field().clone();
    let p = x.cols();
    let id = Matrix::identity(f, p);
    let fax = id.sub(&a.mul(x)).inverse().ok_or(GeomError::Singular)?;
    let fbz = id.sub(&b.mul(z)).inverse().ok_or(GeomError::Singular)?;
    let fay = id.sub(&a.mul(y));
    let fby = id.sub(&b.mul(y));
    let left = fax.mul(&fay);
    let right = fbz.mul(&fby);
    let d = left.sub(&id).add(&right);
    let n = x.mul(&left).sub(y).add(&z.mul(&right));
    let d_inv = d.inverse().ok_or(GeomError::SingularDenominator)?;
    Ok(n.mul(&d_inv))
}

/// Special case B = O⁻: `Γ(X,A,Y,O⁻,Z) = X - (Y-Z)(1-AY)⁻¹(1-AX)`.
pub fn gamma_affine_b_zero<F: Field>(
    x: &Matrix<F>,
    a: &Matrix<F>,
    y: &Matrix<F>,
    z: &Matrix<F>,
) -> Result<Matrix<F>, GeomError> {
    let f = x.field().clone();
    let p = x.cols();
    let id = Matrix::identity(f, p);
    let fay = id
        .sub(&a.mul(y))
        .inverse()
        .ok_or(GeomError::SingularDenominator)?;
    let fax = id.sub(&a.mul(x));
    Ok(x.sub(&y.sub(z).mul(&fay).mul(&fax)))
}

/// Special case Y = O⁺, B = O⁻: `Γ(X,A,O⁺,O⁻,Z) = X - ZAX + Z`, defined for
/// all coordinates (the product is tri-affine on the chart).
pub fn gamma_affine_unit<F: Field>(x: &Matrix<F>, a: &Matrix<F>, z: &Matrix<F>) -> Matrix<F> {
    x.sub(&z.mul(&a.mul(x))).add(z)
}

/// First-kind picture with a = O⁻, b = O⁺ and invertible middle coordinate:
/// `Γ(X,0,Y,∞,Z) = X·Y⁻¹·Z`. With Y = 1 this is the algebra product.
pub fn gamma_first_kind<F: Field>(
    x: &Matrix<F>,
    y: &Matrix<F>,
    z: &Matrix<F>,
) -> Result<Matrix<F>, GeomError> {
    let y_inv = y.inverse().ok_or(GeomError::Singular)?;
    Ok(x.mul(&y_inv).mul(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::gamma::{gamma, gamma_extended, Quintuple};
    use crate::sample::Sampler;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn mat(f: PrimeField, r: usize, c: usize, e: &[i64]) -> Matrix<PrimeField> {
        Matrix::from_i64(f, r, c, e)
    }

    #[test]
    fn encode_decode_round_trip() {
        let f = gf(3);
        let ch = Chart::coordinate(f, 2, 1);
        let x = mat(f, 2, 1, &[1, 2]);
        let s = ch.encode_plus(&x);
        assert!(s.is_transversal(ch.o_minus()).unwrap());
        assert_eq!(ch.decode_plus(&s).unwrap(), x);

        let a = mat(f, 1, 2, &[2, 1]);
        let t = ch.encode_minus(&a);
        assert!(t.is_transversal(ch.o_plus()).unwrap());
        assert_eq!(ch.decode_minus(&t).unwrap(), a);

        // base points carry zero coordinates
        assert_eq!(ch.encode_plus(&Matrix::zero(f, 2, 1)), *ch.o_plus());
        assert_eq!(ch.encode_minus(&Matrix::zero(f, 1, 2)), *ch.o_minus());
    }

    #[test]
    fn unit_formula_matches_geometry() {
        // scalar chart over GF(2): X=A=Z=1 gives 1-1+1 = 1
        let f = gf(2);
        let one = mat(f, 1, 1, &[1]);
        assert_eq!(gamma_affine_unit(&one, &one, &one), one);

        let ch = Chart::coordinate(f, 1, 1);
        let x = ch.encode_plus(&one);
        let a = ch.encode_minus(&one);
        let z = ch.encode_plus(&one);
        let g = gamma(&x, &a, ch.o_plus(), ch.o_minus(), &z);
        assert_eq!(ch.decode_plus(&g).unwrap(), one);
    }

    #[test]
    fn affine_formulas_agree_with_gamma_extended() {
        for &p in &[2u64, 3, 5] {
            let f = gf(p);
            let ch = Chart::coordinate(f, 1, 1);
            let mut s = Sampler::new(31 + p);
            let mut chart_hits = 0;
            for _ in 0..200 {
                let pick = |s: &mut Sampler| mat(f, 1, 1, &[s.below(p as usize) as i64]);
                let (xm, am, ym, bm, zm) = (
                    pick(&mut s),
                    pick(&mut s),
                    pick(&mut s),
                    pick(&mut s),
                    pick(&mut s),
                );
                let q = Quintuple::new(
                    ch.encode_plus(&xm),
                    ch.encode_minus(&am),
                    ch.encode_plus(&ym),
                    ch.encode_minus(&bm),
                    ch.encode_plus(&zm),
                )
                .unwrap();
                let geometric = gamma_extended(&q);
                if let Ok(nd) = gamma_affine(&xm, &am, &ym, &bm, &zm) {
                    chart_hits += 1;
                    assert_eq!(ch.encode_plus(&nd), geometric, "ND^-1 vs geometry");
                }
                // unit special case is total
                let unit = gamma_affine_unit(&xm, &am, &zm);
                let qu = Quintuple::new(
                    q.x.clone(),
                    q.a.clone(),
                    ch.o_plus().clone(),
                    ch.o_minus().clone(),
                    q.z.clone(),
                )
                .unwrap();
                assert_eq!(ch.encode_plus(&unit), gamma_extended(&qu), "X - ZAX + Z");
                // B = O⁻ special case where defined
                if let Ok(g) = gamma_affine_b_zero(&xm, &am, &ym, &zm) {
                    let qb = Quintuple::new(
                        q.x.clone(),
                        q.a.clone(),
                        q.y.clone(),
                        ch.o_minus().clone(),
                        q.z.clone(),
                    )
                    .unwrap();
                    assert_eq!(ch.encode_plus(&g), gamma_extended(&qb), "B=O⁻ formula");
                }
            }
            assert!(chart_hits > 0, "denominators were never invertible");
        }
    }

    #[test]
    fn affine_formulas_agree_in_higher_rank() {
        let f = gf(3);
        let ch = Chart::coordinate(f, 2, 2);
        let mut s = Sampler::new(99);
        for _ in 0..60 {
            let pick = |s: &mut Sampler| {
                let e: Vec<i64> = (0..4).map(|_| s.below(3) as i64).collect();
                mat(f, 2, 2, &e)
            };
            let (xm, am, ym, bm, zm) = (
                pick(&mut s),
                pick(&mut s),
                pick(&mut s),
                pick(&mut s),
                pick(&mut s),
            );
            let unit = gamma_affine_unit(&xm, &am, &zm);
            let q = Quintuple::new(
                ch.encode_plus(&xm),
                ch.encode_minus(&am),
                ch.o_plus().clone(),
                ch.o_minus().clone(),
                ch.encode_plus(&zm),
            )
            .unwrap();
            assert_eq!(ch.encode_plus(&unit), gamma_extended(&q));
            if let Ok(nd) = gamma_affine(&xm, &am, &ym, &bm, &zm) {
                let q = Quintuple::new(
                    ch.encode_plus(&xm),
                    ch.encode_minus(&am),
                    ch.encode_plus(&ym),
                    ch.encode_minus(&bm),
                    ch.encode_plus(&zm),
                )
                .unwrap();
                assert_eq!(ch.encode_plus(&nd), gamma_extended(&q));
            }
        }
    }

    #[test]
    fn first_kind_examples() {
        let f = gf(5);
        let m = |v: i64| mat(f, 1, 1, &[v]);
        // X=Y=Z=1 -> 1; Y=1 -> XZ; X=2,Y=3,Z=4 -> 2·3⁻¹·4 = 1 mod 5
        assert_eq!(gamma_first_kind(&m(1), &m(1), &m(1)).unwrap(), m(1));
        assert_eq!(gamma_first_kind(&m(2), &m(1), &m(3)).unwrap(), m(6 % 5));
        assert_eq!(gamma_first_kind(&m(2), &m(3), &m(4)).unwrap(), m(1));
        assert!(gamma_first_kind(&m(2), &m(0), &m(4)).is_err());

        // geometric cross-check: Γ(graph X, o⁻, graph Y, o⁺, graph Z) = graph XY⁻¹Z
        let ch = Chart::coordinate(f, 1, 1);
        let g = gamma(
            &ch.encode_plus(&m(2)),
            ch.o_minus(),
            &ch.encode_plus(&m(3)),
            ch.o_plus(),
            &ch.encode_plus(&m(4)),
        );
        assert_eq!(ch.decode_plus(&g).unwrap(), m(1));
    }

    #[test]
    fn eq_coinc_in_chart_coordinates() {
        // X - (X - ZAX + Z) + Z = ZAX, and the geometric middle-slot product
        // Γ(z, o⁻, a, o⁺, x) decodes to ZAX
        let f = gf(3);
        let ch = Chart::coordinate(f, 1, 1);
        let mut s = Sampler::new(5);
        for _ in 0..50 {
            let m = |s: &mut Sampler| mat(f, 1, 1, &[s.below(3) as i64]);
            let (xm, am, zm) = (m(&mut s), m(&mut s), m(&mut s));
            let g = gamma_affine_unit(&xm, &am, &zm);
            let lhs = xm.sub(&g).add(&zm);
            let zax = zm.mul(&am).mul(&xm);
            assert_eq!(lhs, zax);
            let geo = gamma(
                &ch.encode_plus(&zm),
                ch.o_minus(),
                &ch.encode_minus(&am),
                ch.o_plus(),
                &ch.encode_plus(&xm),
            );
            assert_eq!(geo, ch.encode_plus(&zax));
        }
    }
}
