//! Torsor, group and affine structures carved out of Γ: the torsor U_ab on
//! common complements, the groups (U_ab, y), the affine space C_a, left and
//! right actions on the whole Grassmannian, and generic law verifiers for
//! the torsor identities (G1), (G2) and the para-associative law (G3).

use crate::error::GeomError;
use crate::field::Field;
use crate::gamma::{gamma, pi_extended};
use crate::subspace::{projector, Subspace};

/// The fixed pair (a, b) defining the semitorsor 𝒳_ab and the torsor U_ab.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorsorContext<F: Field> {
    pub a: Subspace<F>,
    pub b: Subspace<F>,
}

impl<F: Field> TorsorContext<F> {
    pub fn new(a: Subspace<F>, b: Subspace<F>) -> Result<Self, GeomError> {
        a.check_compatible(&b)?;
        Ok(TorsorContext { a, b })
    }

    pub fn is_member(&self, x: &Subspace<F>) -> bool {
        x.is_transversal(&self.a).unwrap_or(false) && x.is_transversal(&self.b).unwrap_or(false)
    }

    fn require_member(&self, name: &str, x: &Subspace<F>) -> Result<(), GeomError> {
        if self.is_member(x) {
            Ok(())
        } else {
            Err(GeomError::Membership(name.to_string(), "C_ab".to_string()))
        }
    }

    /// The ternary torsor product (xyz) = Γ(x,a,y,b,z) on C_ab.
    /// Membership is checked eagerly; closure of the result is a theorem and
    /// is asserted.
    pub fn product(
        &self,
        x: &Subspace<F>,
        y: &Subspace<F>,
        z: &Subspace<F>,
    ) -> Result<Subspace<F>, GeomError> {
        self.require_member("x", x)?;
        self.require_member("y", y)?;
        self.require_member("z", z)?;
        let out = gamma(x, &self.a, y, &self.b, z);
        self.require_member("(xyz)", &out)?;
        Ok(out)
    }

    /// All elements of U_ab (finite fields only).
    pub fn members(&self) -> Result<Vec<Subspace<F>>, GeomError> {
        let n = self.a.ambient();
        if self.a.dim() != self.b.dim() {
            return Ok(Vec::new());
        }
        let k = n - self.a.dim();
        let all = Subspace::enumerate(self.a.field().clone(), n, Some(k))?;
        Ok(all.into_iter().filter(|s| self.is_member(s)).collect())
    }
}

/// A torsor context with a chosen unit y ∈ U_ab, i.e. the group (U_ab, y).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupContext<F: Field> {
    pub ctx: TorsorContext<F>,
    pub unit: Subspace<F>,
}

impl<F: Field> GroupContext<F> {
    pub fn new(ctx: TorsorContext<F>, unit: Subspace<F>) -> Result<Self, GeomError> {
        ctx.require_member("unit", &unit)?;
        Ok(GroupContext { ctx, unit })
    }

    pub fn mul(&self, x: &Subspace<F>, z: &Subspace<F>) -> Result<Subspace<F>, GeomError> {
        self.ctx.product(x, &self.unit, z)
    }

    pub fn inv(&self, x: &Subspace<F>) -> Result<Subspace<F>, GeomError> {
        self.ctx.product(&self.unit, x, &self.unit)
    }

    /// Left action of the group on the whole Grassmannian: z ↦ Γ(x,a,y,b,z).
    pub fn left_action(&self, x: &Subspace<F>, z: &Subspace<F>) -> Result<Subspace<F>, GeomError> {
        self.ctx.require_member("x", x)?;
        Ok(gamma(x, &self.ctx.a, &self.unit, &self.ctx.b, z))
    }

    /// Right action: x ↦ Γ(x,a,y,b,z) for z ∈ U_ab.
    pub fn right_action(&self, x: &Subspace<F>, z: &Subspace<F>) -> Result<Subspace<F>, GeomError> {
        self.ctx.require_member("z", z)?;
        Ok(gamma(x, &self.ctx.a, &self.unit, &self.ctx.b, z))
    }

    /// Multiplication table over the full member list, as indices.
    /// Returns (members, table) with `table[i][j]` = index of `members[i]·members[j]`.
    pub fn table(&self) -> Result<(Vec<Subspace<F>>, Vec<Vec<usize>>), GeomError> {
        let members = self.ctx.members()?;
        let mut table = Vec::with_capacity(members.len());
        for x in &members {
            let mut row = Vec::with_capacity(members.len());
            for z in &members {
                let prod = self.mul(x, z)?;
                let idx = members
                    .iter()
                    .position(|m| *m == prod)
                    .ok_or_else(|| GeomError::Membership("x·z".into(), "U_ab".into()))?;
                row.push(idx);
            }
            table.push(row);
        }
        Ok((members, table))
    }
}

/// Is the finite group given by a multiplication table cyclic?
pub fn table_is_cyclic(table: &[Vec<usize>], unit: usize) -> bool {
    let n = table.len();
    if n == 0 {
        return false;
    }
    (0..n).any(|g| {
        let mut seen = vec![false; n];
        let mut cur = unit;
        for _ in 0..n {
            cur = table[cur][g];
            seen[cur] = true;
        }
        seen.iter().all(|&s| s)
    })
}

/// Affine addition on C_a: the sum of x and z with respect to the origin y,
/// x +_y z = Γ(x,a,y,a,z). Membership of all three points is required.
pub fn affine_add<F: Field>(
    a: &Subspace<F>,
    x: &Subspace<F>,
    y: &Subspace<F>,
    z: &Subspace<F>,
) -> Result<Subspace<F>, GeomError> {
    for (name, s) in [("x", x), ("y", y), ("z", z)] {
        if !s.is_transversal(a)? {
            return Err(GeomError::Membership(name.to_string(), "C_a".to_string()));
        }
    }
    Ok(gamma(x, a, y, a, z))
}

/// Scalar action on C_a: r ·_x y = (1-r)x + ry = Π_r(x,a,y).
pub fn affine_scale<F: Field>(
    a: &Subspace<F>,
    r: &F::Elem,
    x: &Subspace<F>,
    y: &Subspace<F>,
) -> Result<Subspace<F>, GeomError> {
    for (name, s) in [("x", x), ("y", y)] {
        if !s.is_transversal(a)? {
            return Err(GeomError::Membership(name.to_string(), "C_a".to_string()));
        }
    }
    Ok(pi_extended(r, x, a, y))
}

/// The projector form of affine addition: image of P_x^a - P_y^a + P_z^a.
pub fn affine_add_projector<F: Field>(
    a: &Subspace<F>,
    x: &Subspace<F>,
    y: &Subspace<F>,
    z: &Subspace<F>,
) -> Result<Subspace<F>, GeomError> {
    let px = projector(x, a)?;
    let py = projector(y, a)?;
    let pz = projector(z, a)?;
    let op = px.sub(&py).add(&pz);
    Ok(Subspace::full(a.field().clone(), a.ambient()).apply(&op))
}

/// Report of a law verification run: the first counterexample, if any.
#[derive(Clone, Debug, Default)]
pub struct LawReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn note(&mut self, msg: String) {
        if self.failures.len() < 8 {
            self.failures.push(msg);
        }
    }
}

/// Exhaustively check the torsor laws (G1), (G2) and their consequences
/// (Chasle relation for left translations, m_{x,z} ∘ m_{z,x} = id) for a
/// black-box ternary product on a finite element list.
pub fn verify_torsor<T, P>(elements: &[T], product: P) -> LawReport
where
    T: Clone + PartialEq + std::fmt::Debug,
    P: Fn(&T, &T, &T) -> T,
{
    let mut report = verify_semitorsor(elements, &product);
    let n = elements.len();
    // (G2): (xxy) = y = (yxx)
    for x in 0..n {
        for y in 0..n {
            report.checked += 1;
            let lhs = product(&elements[x], &elements[x], &elements[y]);
            let rhs = product(&elements[y], &elements[x], &elements[x]);
            if lhs != elements[y] || rhs != elements[y] {
                report.note(format!("(G2) fails at x={x}, y={y}"));
            }
        }
    }
    // (G1): (xy(zuv)) = ((xyz)uv)
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for u in 0..n {
                    for v in 0..n {
                        report.checked += 1;
                        let inner = product(&elements[z], &elements[u], &elements[v]);
                        let lhs = product(&elements[x], &elements[y], &inner);
                        let outer = product(&elements[x], &elements[y], &elements[z]);
                        let rhs = product(&outer, &elements[u], &elements[v]);
                        if lhs != rhs {
                            report.note(format!("(G1) fails at ({x},{y},{z},{u},{v})"));
                        }
                    }
                }
            }
        }
    }
    // Chasle relation: l_{x,y} ∘ l_{y,u} = l_{x,u}
    for x in 0..n {
        for y in 0..n {
            for u in 0..n {
                for z in 0..n {
                    report.checked += 1;
                    let lhs = product(
                        &elements[x],
                        &elements[y],
                        &product(&elements[y], &elements[u], &elements[z]),
                    );
                    let rhs = product(&elements[x], &elements[u], &elements[z]);
                    if lhs != rhs {
                        report.note(format!("Chasle fails at ({x},{y},{u},{z})"));
                    }
                }
            }
        }
    }
    // middle multiplications: m_{x,z} ∘ m_{z,x} = id
    for x in 0..n {
        for z in 0..n {
            for y in 0..n {
                report.checked += 1;
                let inner = product(&elements[z], &elements[y], &elements[x]);
                let back = product(&elements[x], &inner, &elements[z]);
                if back != elements[y] {
                    report.note(format!("m_xz∘m_zx fails at ({x},{z},{y})"));
                }
            }
        }
    }
    report
}

/// Sampled check that (U_a, U_b) is a semitorsored pair for the given (a,b):
/// Γ(U_a,a,U_b,b,U_a) ⊆ U_a and the mirror inclusion, plus affineness of the
/// ternary map in each slot; when a ⊤ b also trilinearity with respect to
/// the origins b ∈ U_a and a ∈ U_b.
pub fn semitorsored_pair_check<F: Field>(
    a: &Subspace<F>,
    b: &Subspace<F>,
    sampler: &mut crate::sample::Sampler,
    budget: usize,
) -> LawReport {
    let mut report = LawReport::default();
    let transversal = a.is_transversal(b).unwrap_or(false);
    for _ in 0..budget {
        report.checked += 1;
        let x = sampler.complement_of(a);
        let z = sampler.complement_of(a);
        let y = sampler.complement_of(b);
        let out = gamma(&x, a, &y, b, &z);
        if !out.is_transversal(a).unwrap() {
            report.note("Γ(U_a,a,U_b,b,U_a) leaves U_a".into());
            continue;
        }
        let xb = sampler.complement_of(b);
        let zb = sampler.complement_of(b);
        let ya = sampler.complement_of(a);
        if !gamma(&xb, a, &ya, b, &zb).is_transversal(b).unwrap() {
            report.note("Γ(U_b,a,U_a,b,U_b) leaves U_b".into());
            continue;
        }
        // affine in the first slot: Γ respects u -_v w within C_a
        let (u, v, w) = (
            sampler.complement_of(a),
            sampler.complement_of(a),
            sampler.complement_of(a),
        );
        let comb = gamma(&u, a, &v, a, &w);
        let lhs = gamma(&comb, a, &y, b, &z);
        let rhs = gamma(
            &gamma(&u, a, &y, b, &z),
            a,
            &gamma(&v, a, &y, b, &z),
            a,
            &gamma(&w, a, &y, b, &z),
        );
        if lhs != rhs {
            report.note("first slot of the pair product is not affine".into());
            continue;
        }
        // affine in the middle slot (combinations within C_b)
        let (pm, qm, rm) = (
            sampler.complement_of(b),
            sampler.complement_of(b),
            sampler.complement_of(b),
        );
        let comb = gamma(&pm, b, &qm, b, &rm);
        let lhs = gamma(&x, a, &comb, b, &z);
        let rhs = gamma(
            &gamma(&x, a, &pm, b, &z),
            a,
            &gamma(&x, a, &qm, b, &z),
            a,
            &gamma(&x, a, &rm, b, &z),
        );
        if lhs != rhs {
            report.note("middle slot of the pair product is not affine".into());
            continue;
        }
        if transversal {
            // trilinearity at the origins: b is the zero of U_a, a of U_b
            let sum = gamma(&u, a, b, a, &v); // u + v with origin b in C_a
            let lhs = gamma(&sum, a, &y, b, &z);
            let rhs = gamma(
                &gamma(&u, a, &y, b, &z),
                a,
                b,
                a,
                &gamma(&v, a, &y, b, &z),
            );
            if lhs != rhs {
                report.note("pair product is not additive in the first slot".into());
                continue;
            }
            let r = sampler.scalar(a.field());
            let scaled = crate::gamma::pi_extended(&r, b, a, &u);
            let lhs = gamma(&scaled, a, &y, b, &z);
            let rhs = crate::gamma::pi_extended(&r, b, a, &gamma(&u, a, &y, b, &z));
            if lhs != rhs {
                report.note("pair product is not homogeneous in the first slot".into());
            }
        }
    }
    report
}

/// Exhaustively check the para-associative law (G3):
/// (xy(zuv)) = (x(uzy)v) = ((xyz)uv).
pub fn verify_semitorsor<T, P>(elements: &[T], product: P) -> LawReport
where
    T: Clone + PartialEq + std::fmt::Debug,
    P: Fn(&T, &T, &T) -> T,
{
    let mut report = LawReport::default();
    let n = elements.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for u in 0..n {
                    for v in 0..n {
                        report.checked += 1;
                        let lhs = product(
                            &elements[x],
                            &elements[y],
                            &product(&elements[z], &elements[u], &elements[v]),
                        );
                        let mid = product(
                            &elements[x],
                            &product(&elements[u], &elements[z], &elements[y]),
                            &elements[v],
                        );
                        let rhs = product(
                            &product(&elements[x], &elements[y], &elements[z]),
                            &elements[u],
                            &elements[v],
                        );
                        if lhs != mid || mid != rhs {
                            report.note(format!("(G3) fails at ({x},{y},{z},{u},{v})"));
                        }
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::relations::LinearRelation;
    use crate::sample::Sampler;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn axes_ctx(p: u64) -> TorsorContext<PrimeField> {
        let f = gf(p);
        TorsorContext::new(
            Subspace::from_i64(f, 2, &[&[1, 0]]),
            Subspace::from_i64(f, 2, &[&[0, 1]]),
        )
        .unwrap()
    }

    #[test]
    fn torsor_product_laws() {
        let ctx = axes_ctx(3);
        let members = ctx.members().unwrap();
        // |U_ab| = p - 1 for the two axes in F_p^2
        assert_eq!(members.len(), 2);
        for x in &members {
            for z in &members {
                assert_eq!(ctx.product(x, x, z).unwrap(), *z);
                assert_eq!(ctx.product(x, z, z).unwrap(), *x);
            }
        }
        let report = verify_torsor(&members, |x, y, z| ctx.product(x, y, z).unwrap());
        assert!(report.passed(), "{:?}", report.failures);
        // membership is enforced
        assert!(ctx.product(&ctx.a.clone(), &members[0], &members[0]).is_err());
    }

    #[test]
    fn group_structure_and_cyclicity() {
        // axes in GF(5)^2: the group is GL(1,5), cyclic of order 4
        let ctx = axes_ctx(5);
        let members = ctx.members().unwrap();
        assert_eq!(members.len(), 4);
        let diag = Subspace::from_i64(gf(5), 2, &[&[1, 1]]);
        let g = GroupContext::new(ctx, diag.clone()).unwrap();
        let (elems, table) = g.table().unwrap();
        let unit_idx = elems.iter().position(|e| *e == diag).unwrap();
        assert!(table_is_cyclic(&table, unit_idx));
        // unit laws and inverses
        for x in &elems {
            assert_eq!(g.mul(&g.unit, x).unwrap(), *x);
            assert_eq!(g.mul(x, &g.unit).unwrap(), *x);
            let xi = g.inv(x).unwrap();
            assert_eq!(g.mul(x, &xi).unwrap(), g.unit);
            assert_eq!(g.mul(&xi, x).unwrap(), g.unit);
        }
        assert_eq!(g.inv(&g.unit).unwrap(), g.unit);
    }

    #[test]
    fn affine_space_on_complements() {
        let f = gf(2);
        let a = Subspace::from_i64(f, 2, &[&[0, 1]]);
        let e1 = Subspace::from_i64(f, 2, &[&[1, 0]]);
        let d = Subspace::from_i64(f, 2, &[&[1, 1]]);
        // add(x, y, y) = x
        assert_eq!(affine_add(&a, &e1, &d, &d).unwrap(), e1);
        // GF(2)^2, a = span{e2}: add(e1, diag, e1) = diag
        assert_eq!(affine_add(&a, &e1, &d, &e1).unwrap(), d);
        // scale r=1 is the identity on the second argument
        assert_eq!(affine_scale(&a, &1, &e1, &d).unwrap(), d);
        assert_eq!(affine_scale(&a, &0, &e1, &d).unwrap(), e1);
        // projector form agrees
        assert_eq!(
            affine_add_projector(&a, &e1, &d, &e1).unwrap(),
            affine_add(&a, &e1, &d, &e1).unwrap()
        );
        // membership required
        assert!(affine_add(&a, &a.clone(), &d, &e1).is_err());
    }

    #[test]
    fn actions_commute_and_fix_a_b() {
        let f = gf(2);
        let mut s = Sampler::new(91);
        let a = Subspace::from_i64(f, 3, &[&[1, 0, 0]]);
        let b = Subspace::from_i64(f, 3, &[&[0, 1, 0]]);
        // pick a unit in U_ab
        let ctx = TorsorContext::new(a.clone(), b.clone()).unwrap();
        let members = ctx.members().unwrap();
        assert!(!members.is_empty());
        let y = members[0].clone();
        let g = GroupContext::new(ctx, y.clone()).unwrap();
        // unit acts trivially; a and b are fixed points
        for z in [&a, &b] {
            for x in &members {
                assert_eq!(&g.left_action(x, z).unwrap(), z);
            }
        }
        for _ in 0..20 {
            let z = s.subspace(f, 3);
            assert_eq!(g.left_action(&y, &z).unwrap(), z);
            // commutation of left and right translations on 𝒳
            let x = members[s.below(members.len())].clone();
            let w = members[s.below(members.len())].clone();
            let lr = g
                .left_action(&x, &g.right_action(&z, &w).unwrap())
                .unwrap();
            let rl = g
                .right_action(&g.left_action(&x, &z).unwrap(), &w)
                .unwrap();
            assert_eq!(lr, rl);
        }
    }

    #[test]
    fn z4_is_a_torsor_and_relations_are_only_a_semitorsor() {
        // Z/4 with x - y + z
        let z4: Vec<u8> = vec![0, 1, 2, 3];
        let report = verify_torsor(&z4, |x, y, z| (x + 4 - y + z) % 4);
        assert!(report.passed());

        // all linear relations on GF(2)^1 with z∘y⁻¹∘x: semitorsor, not torsor
        let f = gf(2);
        let all = Subspace::enumerate(f, 2, None).unwrap();
        let rels: Vec<LinearRelation<PrimeField>> = all
            .into_iter()
            .map(|g| LinearRelation::new(1, 1, g).unwrap())
            .collect();
        let prod = |x: &LinearRelation<PrimeField>,
                    y: &LinearRelation<PrimeField>,
                    z: &LinearRelation<PrimeField>| {
            LinearRelation::semitorsor_product(x, y, z).unwrap()
        };
        assert_eq!(rels.len(), 5);
        let semi = verify_semitorsor(&rels, prod);
        assert!(semi.passed(), "{:?}", semi.failures);
        let tor = verify_torsor(&rels, prod);
        assert!(!tor.passed());
        assert!(tor.failures.iter().any(|m| m.contains("(G2)")));
    }

    #[test]
    fn semitorsored_pair_check_passes() {
        let f = gf(2);
        let mut s = Sampler::new(17);
        // a = b reduces to closure of the affine addition
        let a = Subspace::from_i64(f, 3, &[&[1, 0, 0]]);
        let report = semitorsored_pair_check(&a, &a, &mut s, 20);
        assert!(report.passed(), "{:?}", report.failures);
        // random equal-dimension pairs in GF(2)^4
        let f4 = gf(2);
        for _ in 0..4 {
            let a = s.subspace_of_dim(f4, 4, 2);
            let b = s.subspace_of_dim(f4, 4, 2);
            let report = semitorsored_pair_check(&a, &b, &mut s, 10);
            assert!(report.passed(), "{:?}", report.failures);
        }
        // transversal pair in GF(3)^2: trilinearity branch included
        let g = gf(3);
        let a = Subspace::from_i64(g, 2, &[&[1, 0]]);
        let b = Subspace::from_i64(g, 2, &[&[0, 1]]);
        let report = semitorsored_pair_check(&a, &b, &mut s, 25);
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn opposite_and_commutative_torsors() {
        let f = gf(3);
        let mut s = Sampler::new(13);
        for _ in 0..15 {
            let a = s.subspace(f, 2);
            let b = s.subspace(f, 2);
            let (x, y, z) = (s.subspace(f, 2), s.subspace(f, 2), s.subspace(f, 2));
            // Γ(x,a,y,b,z) = Γ(z,b,y,a,x): U_ab is opposite to U_ba
            assert_eq!(gamma(&x, &a, &y, &b, &z), gamma(&z, &b, &y, &a, &x));
            // U_aa is commutative
            assert_eq!(gamma(&x, &a, &y, &a, &z), gamma(&z, &a, &y, &a, &x));
        }
    }
}
