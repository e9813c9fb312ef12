//! Exhaustive verification of the associative-geometry axioms (1)–(6) on a
//! finite geometry, driven by a precomputed Γ table.
//!
//! The table stores the index of Γ(x,a,y,b,z) for every quintuple of points,
//! so the seven-variable semitorsor axiom and the structurality axiom reduce
//! to array lookups. A mutation harness corrupts the table to show the
//! axioms actually bite.

use std::collections::{HashMap, HashSet};

use crate::error::GeomError;
use crate::field::Field;
use crate::gamma::{gamma_extended, pi_extended, Quintuple};
use crate::subspace::Subspace;

/// A finite point set closed under Γ, with fast index lookup.
pub struct FiniteGeometry<F: Field> {
    field: F,
    ambient: usize,
    points: Vec<Subspace<F>>,
    index: HashMap<Subspace<F>, u32>,
}

impl<F: Field> FiniteGeometry<F> {
    /// The full Grassmannian of F^n (finite fields, small n).
    pub fn grassmannian(field: F, ambient: usize) -> Result<Self, GeomError> {
        let points = Subspace::enumerate(field.clone(), ambient, None)?;
        Ok(Self::from_points(field, ambient, points))
    }

    /// A sub-geometry given by an explicit point list (e.g. right ideals).
    pub fn from_points(field: F, ambient: usize, points: Vec<Subspace<F>>) -> Self {
        let index = points
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as u32))
            .collect();
        FiniteGeometry {
            field,
            ambient,
            points,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn point(&self, i: u32) -> &Subspace<F> {
        &self.points[i as usize]
    }
    pub fn points(&self) -> &[Subspace<F>] {
        &self.points
    }
    pub fn idx(&self, s: &Subspace<F>) -> Option<u32> {
        self.index.get(s).copied()
    }
}

/// Γ on point indices, as a flat N⁵ table.
pub struct GammaTable {
    n: usize,
    data: Vec<u32>,
}

impl GammaTable {
    /// Evaluate Γ on every quintuple. Guarded to keep the table in memory.
    pub fn build<F: Field>(geom: &FiniteGeometry<F>) -> Result<Self, GeomError> {
        let n = geom.len();
        if n.pow(5) > (1 << 21) {
            return Err(GeomError::SizeGuard(format!(
                "Γ table needs |X|^5 <= 2^21, got {n}^5"
            )));
        }
        let mut data = vec![0u32; n.pow(5)];
        let mut pos = 0usize;
        for x in 0..n {
            for a in 0..n {
                for y in 0..n {
                    for b in 0..n {
                        for z in 0..n {
                            let q = Quintuple::new(
                                geom.points[x].clone(),
                                geom.points[a].clone(),
                                geom.points[y].clone(),
                                geom.points[b].clone(),
                                geom.points[z].clone(),
                            )?;
                            let out = gamma_extended(&q);
                            data[pos] = geom.idx(&out).ok_or_else(|| {
                                GeomError::Membership(
                                    "Γ(x,a,y,b,z)".into(),
                                    "point set (geometry not closed under Γ)".into(),
                                )
                            })?;
                            pos += 1;
                        }
                    }
                }
            }
        }
        Ok(GammaTable { n, data })
    }

    pub fn len(&self) -> usize {
        self.n
    }
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, x: u32, a: u32, y: u32, b: u32, z: u32) -> u32 {
        let n = self.n;
        self.data
            [((((x as usize * n) + a as usize) * n + y as usize) * n + b as usize) * n + z as usize]
    }

    /// Swap the values of two distinct table entries (mutation self-test).
    pub fn corrupt_swap(&mut self, i: usize, j: usize) {
        self.data.swap(i, j);
    }

    /// Indices of two entries with different values, deterministically.
    pub fn find_swappable(&self) -> Option<(usize, usize)> {
        let first = self.data.first()?;
        let j = self.data.iter().position(|v| v != first)?;
        Some((0, j))
    }
}

/// Π_r on point indices for one scalar r.
pub fn pi_table<F: Field>(geom: &FiniteGeometry<F>, r: &F::Elem) -> Result<Vec<u32>, GeomError> {
    let n = geom.len();
    let mut data = vec![0u32; n.pow(3)];
    let mut pos = 0;
    for x in 0..n {
        for a in 0..n {
            for z in 0..n {
                let out = pi_extended(r, &geom.points[x], &geom.points[a], &geom.points[z]);
                data[pos] = geom.idx(&out).ok_or_else(|| {
                    GeomError::Membership("Π_r(x,a,z)".into(), "point set".into())
                })?;
                pos += 1;
            }
        }
    }
    Ok(data)
}

/// One named check of the verifier.
#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub name: String,
    pub checked: u64,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct AxiomsReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomsReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failure.is_none())
    }

    pub fn failures(&self) -> Vec<&AxiomCheck> {
        self.checks.iter().filter(|c| c.failure.is_some()).collect()
    }
}

struct LatticeTables {
    meet: Vec<u32>,
    join: Vec<u32>,
    transversal: Vec<bool>,
}

fn lattice_tables<F: Field>(geom: &FiniteGeometry<F>) -> Result<LatticeTables, GeomError> {
    let n = geom.len();
    let mut meet = vec![0u32; n * n];
    let mut join = vec![0u32; n * n];
    let mut transversal = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            let m = geom.points[i].meet(&geom.points[j])?;
            let jn = geom.points[i].join(&geom.points[j])?;
            meet[i * n + j] = geom
                .idx(&m)
                .ok_or_else(|| GeomError::Membership("x∧y".into(), "point set".into()))?;
            join[i * n + j] = geom
                .idx(&jn)
                .ok_or_else(|| GeomError::Membership("x∨y".into(), "point set".into()))?;
            transversal[i * n + j] = m.is_zero() && jn.is_full();
        }
    }
    Ok(LatticeTables {
        meet,
        join,
        transversal,
    })
}

/// Run the full axiom battery (1)–(6) plus the derived operator-inverse
/// facts and the torsor stability of C_ab, exhaustively over the geometry.
/// `scalars` is the list of field scalars used for the dilation axioms.
pub fn verify_axioms<F: Field>(
    geom: &FiniteGeometry<F>,
    table: &GammaTable,
) -> Result<AxiomsReport, GeomError> {
    let n = geom.len() as u32;
    let lat = lattice_tables(geom)?;
    let scalars = geom
        .field()
        .elements()
        .ok_or(GeomError::NotFinite)?;
    let pi_tables: Vec<Vec<u32>> = scalars
        .iter()
        .map(|r| pi_table(geom, r))
        .collect::<Result<_, _>>()?;

    let mut report = AxiomsReport::default();
    report.checks.push(axiom1_semitorsor(geom, n, table));
    report.checks.push(axiom2_klein(n, table));
    report.checks.push(axiom3_structurality(n, table));
    report.checks.push(axiom4_diagonals(geom, n, table, &lat));
    report
        .checks
        .push(axiom5_affine(geom, n, table, &lat, &pi_tables));
    report.checks.push(axiom6_semitorsored_pairs(n, table, &lat));
    report.checks.push(operator_inverses(n, table, &lat));
    report.checks.push(torsor_stability(n, table, &lat));
    Ok(report)
}

fn witness_quintuple<F: Field>(
    geom: &FiniteGeometry<F>,
    x: u32,
    a: u32,
    y: u32,
    b: u32,
    z: u32,
) -> String {
    let q = Quintuple::new(
        geom.point(x).clone(),
        geom.point(a).clone(),
        geom.point(y).clone(),
        geom.point(b).clone(),
        geom.point(z).clone(),
    )
    .expect("points share the ambient");
    crate::io::format_quintuple(&q)
}

/// Axiom (1): Γ(Γ(x,a,y,b,z),a,u,b,v) = Γ(x,a,Γ(u,a,z,b,y),b,v)
///          = Γ(x,a,y,b,Γ(z,a,u,b,v)).
fn axiom1_semitorsor<F: Field>(geom: &FiniteGeometry<F>, n: u32, t: &GammaTable) -> AxiomCheck {
    let mut checked = 0u64;
    for a in 0..n {
        for b in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let xyz = t.get(x, a, y, b, z);
                        for u in 0..n {
                            let uzy = t.get(u, a, z, b, y);
                            for v in 0..n {
                                checked += 1;
                                let lhs = t.get(xyz, a, u, b, v);
                                let mid = t.get(x, a, uzy, b, v);
                                let zuv = t.get(z, a, u, b, v);
                                let rhs = t.get(x, a, y, b, zuv);
                                if lhs != mid || mid != rhs {
                                    return AxiomCheck {
                                        name: "axiom 1 (semitorsor)".into(),
                                        checked,
                                        failure: Some(format!(
                                            "violated at (x,a,y,b,z,u,v) = \
                                             ({x},{a},{y},{b},{z},{u},{v}); inner quintuple:\n{}",
                                            witness_quintuple(geom, x, a, y, b, z)
                                        )),
                                    };
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    AxiomCheck {
        name: "axiom 1 (semitorsor)".into(),
        checked,
        failure: None,
    }
}

/// Axiom (2): Γ(x,a,y,b,z) = Γ(z,b,y,a,x) = Γ(a,x,y,z,b).
fn axiom2_klein(n: u32, t: &GammaTable) -> AxiomCheck {
    let mut checked = 0u64;
    for x in 0..n {
        for a in 0..n {
            for y in 0..n {
                for b in 0..n {
                    for z in 0..n {
                        checked += 1;
                        let g = t.get(x, a, y, b, z);
                        if g != t.get(z, b, y, a, x) || g != t.get(a, x, y, z, b) {
                            return AxiomCheck {
                                name: "axiom 2 (Klein symmetry)".into(),
                                checked,
                                failure: Some(format!(
                                    "violated at (x,a,y,b,z) = ({x},{a},{y},{b},{z})"
                                )),
                            };
                        }
                    }
                }
            }
        }
    }
    AxiomCheck {
        name: "axiom 2 (Klein symmetry)".into(),
        checked,
        failure: None,
    }
}

/// Axiom (3): the pairs (L_{xayb}, L_{yaxb}), (M_{xabz}, M_{zabx}),
/// (R_{aybz}, R_{azby}) are structural. The distinct map pairs are collected
/// first (many parameter tuples induce the same pair), then each is checked
/// against all quintuples.
fn axiom3_structurality(n: u32, t: &GammaTable) -> AxiomCheck {
    let nn = n as usize;
    let mut pairs: HashSet<(Vec<u32>, Vec<u32>)> = HashSet::new();
    for p0 in 0..n {
        for p1 in 0..n {
            for p2 in 0..n {
                for p3 in 0..n {
                    // L pair: f = L_{p0,p1,p2,p3}, g = L_{p2,p1,p0,p3}
                    let f: Vec<u32> = (0..n).map(|w| t.get(p0, p1, p2, p3, w)).collect();
                    let g: Vec<u32> = (0..n).map(|w| t.get(p2, p1, p0, p3, w)).collect();
                    pairs.insert((f.clone(), g.clone()));
                    pairs.insert((g, f));
                    // M pair: f = M_{p0,p1,p2,p3} (y-slot), g = M_{p3,p1,p2,p0}
                    let f: Vec<u32> = (0..n).map(|w| t.get(p0, p1, w, p2, p3)).collect();
                    let g: Vec<u32> = (0..n).map(|w| t.get(p3, p1, w, p2, p0)).collect();
                    pairs.insert((f.clone(), g.clone()));
                    pairs.insert((g, f));
                    // R pairs are L pairs of the opposite geometry, covered by
                    // the Klein symmetry together with the L family
                }
            }
        }
    }
    let mut checked = 0u64;
    for (f, g) in &pairs {
        for a1 in 0..nn {
            let ga = g[a1];
            for b1 in 0..nn {
                let gb = g[b1];
                for x in 0..nn {
                    let fx = f[x];
                    for y in 0..nn {
                        let fy = f[y];
                        for z in 0..nn {
                            checked += 1;
                            let lhs = f[t.get(x as u32, ga, y as u32, gb, z as u32) as usize];
                            let rhs = t.get(fx, a1 as u32, fy, b1 as u32, f[z]);
                            if lhs != rhs {
                                return AxiomCheck {
                                    name: "axiom 3 (structurality of partial maps)".into(),
                                    checked,
                                    failure: Some(format!(
                                        "violated at (x,a',y,b',z) = ({x},{a1},{y},{b1},{z})"
                                    )),
                                };
                            }
                        }
                    }
                }
            }
        }
    }
    AxiomCheck {
        name: "axiom 3 (structurality of partial maps)".into(),
        checked,
        failure: None,
    }
}

/// Axiom (4): the five diagonal-value identities.
fn axiom4_diagonals<F: Field>(
    geom: &FiniteGeometry<F>,
    n: u32,
    t: &GammaTable,
    lat: &LatticeTables,
) -> AxiomCheck {
    let nn = n as usize;
    let mut checked = 0u64;
    let fail = |checked: u64, msg: String| AxiomCheck {
        name: "axiom 4 (diagonal values)".into(),
        checked,
        failure: Some(msg),
    };
    for a in 0..n {
        for b in 0..n {
            let ab = (a * n + b) as usize;
            for y in 0..n {
                checked += 2;
                if t.get(a, a, y, b, b) != lat.join[ab] {
                    let doc = witness_quintuple(geom, a, a, y, b, b);
                    return fail(checked, format!("(i) fails:\n{doc}"));
                }
                if t.get(a, b, y, a, b) != lat.meet[ab] {
                    let doc = witness_quintuple(geom, a, b, y, a, b);
                    return fail(checked, format!("(ii) fails:\n{doc}"));
                }
            }
            for x in 0..n {
                let xa = (x * n + a) as usize;
                let xb = (x * n + b) as usize;
                if lat.transversal[xa] && lat.transversal[xb] {
                    for z in 0..n {
                        checked += 2;
                        if t.get(x, a, x, b, z) != z {
                            let doc = witness_quintuple(geom, x, a, x, b, z);
                            return fail(checked, format!("(iii) fails:\n{doc}"));
                        }
                        if t.get(z, b, x, a, x) != z {
                            let doc = witness_quintuple(geom, z, b, x, a, x);
                            return fail(checked, format!("(iii') fails:\n{doc}"));
                        }
                    }
                }
                for y in 0..n {
                    checked += 2;
                    let ya = (y as usize) * nn + a as usize;
                    let yb = (y as usize) * nn + b as usize;
                    if lat.transversal[xa] && lat.transversal[yb] && t.get(x, a, y, b, b) != b {
                        return fail(checked, format!("(iv) fails at ({x},{a},{y},{b})"));
                    }
                    if lat.transversal[ya] && lat.transversal[xb] && t.get(x, a, y, b, a) != a {
                        return fail(checked, format!("(v) fails at ({x},{a},{y},{b})"));
                    }
                }
            }
        }
    }
    AxiomCheck {
        name: "axiom 4 (diagonal values)".into(),
        checked,
        failure: None,
    }
}

/// Axiom (5): C_a is Π-stable and an affine space over the field, with
/// x +_y z = Γ(x,a,y,a,z) and r ·_x y = Π_r(x,a,y), checked for every a and
/// every origin.
fn axiom5_affine<F: Field>(
    geom: &FiniteGeometry<F>,
    n: u32,
    t: &GammaTable,
    lat: &LatticeTables,
    pi_tables: &[Vec<u32>],
) -> AxiomCheck {
    let f = geom.field();
    let scalars = f.elements().expect("finite field");
    let nn = n as usize;
    let pi = |r: usize, x: u32, a: u32, z: u32| -> u32 {
        pi_tables[r][((x as usize) * nn + a as usize) * nn + z as usize]
    };
    let mut checked = 0u64;
    let fail = |checked: u64, msg: String| AxiomCheck {
        name: "axiom 5 (affine space on C_a)".into(),
        checked,
        failure: Some(msg),
    };
    for a in 0..n {
        let members: Vec<u32> = (0..n)
            .filter(|&x| lat.transversal[(x * n + a) as usize])
            .collect();
        // Π-stability
        for &x in &members {
            for &y in &members {
                for r in 0..scalars.len() {
                    checked += 1;
                    let out = pi(r, x, a, y);
                    if !lat.transversal[(out * n + a) as usize] {
                        return fail(checked, format!("C_a not Π-stable at a={a},x={x},y={y},r={r}"));
                    }
                }
            }
        }
        // affine module laws for every origin
        for &o in &members {
            let add = |u: u32, v: u32| t.get(u, a, o, a, v);
            let smul = |r: usize, u: u32| pi(r, o, a, u);
            for &u in &members {
                for &v in &members {
                    checked += 2;
                    if add(u, v) != add(v, u) {
                        return fail(checked, format!("addition not commutative at a={a},o={o}"));
                    }
                    for &w in &members {
                        checked += 1;
                        if add(add(u, v), w) != add(u, add(v, w)) {
                            return fail(checked, format!("addition not associative at a={a},o={o}"));
                        }
                    }
                    for (r, rv) in scalars.iter().enumerate() {
                        checked += 1;
                        if smul(r, add(u, v)) != add(smul(r, u), smul(r, v)) {
                            return fail(
                                checked,
                                format!("scalar distributivity fails at a={a},o={o},r={rv:?}"),
                            );
                        }
                    }
                }
                checked += 2;
                if add(o, u) != u || add(u, o) != u {
                    return fail(checked, format!("origin not neutral at a={a},o={o}"));
                }
                // inverse: Γ(o,a,u,a,o) is the negative of u
                let neg = t.get(o, a, u, a, o);
                checked += 1;
                if add(u, neg) != o {
                    return fail(checked, format!("no additive inverse at a={a},o={o},u={u}"));
                }
                // scalar laws
                for (r, rv) in scalars.iter().enumerate() {
                    for (s, sv) in scalars.iter().enumerate() {
                        checked += 2;
                        let rs = scalars
                            .iter()
                            .position(|e| *e == f.mul(rv, sv))
                            .expect("closed");
                        if smul(r, smul(s, u)) != smul(rs, u) {
                            return fail(checked, format!("r(su) != (rs)u at a={a},o={o}"));
                        }
                        let r_plus_s = scalars
                            .iter()
                            .position(|e| *e == f.add(rv, sv))
                            .expect("closed");
                        if add(smul(r, u), smul(s, u)) != smul(r_plus_s, u) {
                            return fail(checked, format!("(r+s)u != ru+su at a={a},o={o}"));
                        }
                    }
                }
                let one = scalars.iter().position(|e| f.is_one(e)).expect("has one");
                let zero = scalars.iter().position(|e| f.is_zero(e)).expect("has zero");
                checked += 2;
                if smul(one, u) != u || smul(zero, u) != o {
                    return fail(checked, format!("unit/zero scalar law fails at a={a},o={o}"));
                }
            }
        }
    }
    AxiomCheck {
        name: "axiom 5 (affine space on C_a)".into(),
        checked,
        failure: None,
    }
}

/// Axiom (6): Γ(U_a, a, U_b, b, U_a) ⊆ U_a and the mirrored inclusion.
fn axiom6_semitorsored_pairs(n: u32, t: &GammaTable, lat: &LatticeTables) -> AxiomCheck {
    let mut checked = 0u64;
    for a in 0..n {
        let ca: Vec<u32> = (0..n)
            .filter(|&x| lat.transversal[(x * n + a) as usize])
            .collect();
        for b in 0..n {
            let cb: Vec<u32> = (0..n)
                .filter(|&x| lat.transversal[(x * n + b) as usize])
                .collect();
            for &x in &ca {
                for &y in &cb {
                    for &z in &ca {
                        checked += 1;
                        let out = t.get(x, a, y, b, z);
                        if !lat.transversal[(out * n + a) as usize] {
                            return AxiomCheck {
                                name: "axiom 6 (semitorsored pairs)".into(),
                                checked,
                                failure: Some(format!(
                                    "Γ(U_a,a,U_b,b,U_a) leaves U_a at a={a},b={b},x={x},y={y},z={z}"
                                )),
                            };
                        }
                    }
                }
            }
            for &x in &cb {
                for &y in &ca {
                    for &z in &cb {
                        checked += 1;
                        let out = t.get(x, a, y, b, z);
                        if !lat.transversal[(out * n + b) as usize] {
                            return AxiomCheck {
                                name: "axiom 6 (semitorsored pairs)".into(),
                                checked,
                                failure: Some(format!(
                                    "Γ(U_b,a,U_a,b,U_b) leaves U_b at a={a},b={b},x={x},y={y},z={z}"
                                )),
                            };
                        }
                    }
                }
            }
        }
    }
    AxiomCheck {
        name: "axiom 6 (semitorsored pairs)".into(),
        checked,
        failure: None,
    }
}

/// Derived operator facts: for x,y ∈ U_ab, (L_{xayb})⁻¹ = L_{yaxb} and
/// (M_{xaby})⁻¹ = M_{xbay} as maps of the whole geometry.
fn operator_inverses(n: u32, t: &GammaTable, lat: &LatticeTables) -> AxiomCheck {
    let mut checked = 0u64;
    for a in 0..n {
        for b in 0..n {
            let cab: Vec<u32> = (0..n)
                .filter(|&x| {
                    lat.transversal[(x * n + a) as usize] && lat.transversal[(x * n + b) as usize]
                })
                .collect();
            for &x in &cab {
                for &y in &cab {
                    for z in 0..n {
                        checked += 2;
                        let l = t.get(x, a, y, b, z);
                        if t.get(y, a, x, b, l) != z {
                            return AxiomCheck {
                                name: "operator inverses (L,M)".into(),
                                checked,
                                failure: Some(format!(
                                    "L_yaxb ∘ L_xayb != id at ({x},{a},{y},{b},{z})"
                                )),
                            };
                        }
                        let m = t.get(x, a, z, b, y);
                        if t.get(x, b, m, a, y) != z {
                            return AxiomCheck {
                                name: "operator inverses (L,M)".into(),
                                checked,
                                failure: Some(format!(
                                    "M_xbay ∘ M_xaby != id at ({x},{a},{y},{b},{z})"
                                )),
                            };
                        }
                    }
                }
            }
        }
    }
    AxiomCheck {
        name: "operator inverses (L,M)".into(),
        checked,
        failure: None,
    }
}

/// C_ab is stable under the ternary map (x,y,z) ↦ Γ(x,a,y,b,z).
fn torsor_stability(n: u32, t: &GammaTable, lat: &LatticeTables) -> AxiomCheck {
    let mut checked = 0u64;
    for a in 0..n {
        for b in 0..n {
            let cab: Vec<u32> = (0..n)
                .filter(|&x| {
                    lat.transversal[(x * n + a) as usize] && lat.transversal[(x * n + b) as usize]
                })
                .collect();
            for &x in &cab {
                for &y in &cab {
                    for &z in &cab {
                        checked += 1;
                        let out = t.get(x, a, y, b, z);
                        let ta = lat.transversal[(out * n + a) as usize];
                        let tb = lat.transversal[(out * n + b) as usize];
                        if !ta || !tb {
                            return AxiomCheck {
                                name: "C_ab stability".into(),
                                checked,
                                failure: Some(format!(
                                    "product leaves C_ab at ({x},{a},{y},{b},{z})"
                                )),
                            };
                        }
                    }
                }
            }
        }
    }
    AxiomCheck {
        name: "C_ab stability".into(),
        checked,
        failure: None,
    }
}

/// Mutation self-test: corrupt the table by one swap and return the reports
/// of axiom (1) and axiom (4) on the corrupted table.
pub fn mutation_probe<F: Field>(
    geom: &FiniteGeometry<F>,
    table: &GammaTable,
) -> Result<(AxiomCheck, AxiomCheck), GeomError> {
    let (i, j) = table
        .find_swappable()
        .ok_or_else(|| GeomError::DimensionMismatch("constant Γ table".into()))?;
    let mut bad = GammaTable {
        n: table.n,
        data: table.data.clone(),
    };
    bad.corrupt_swap(i, j);
    let lat = lattice_tables(geom)?;
    let n = geom.len() as u32;
    Ok((
        axiom1_semitorsor(geom, n, &bad),
        axiom4_diagonals(geom, n, &bad, &lat),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn gras_gf3_2_passes_all_axioms() {
        let geom = FiniteGeometry::grassmannian(gf(3), 2).unwrap();
        assert_eq!(geom.len(), 6);
        let table = GammaTable::build(&geom).unwrap();
        let report = verify_axioms(&geom, &table).unwrap();
        assert!(report.passed(), "{:?}", report.failures());
    }

    #[test]
    fn corrupted_gamma_is_detected() {
        let geom = FiniteGeometry::grassmannian(gf(3), 2).unwrap();
        let table = GammaTable::build(&geom).unwrap();
        let (ax1, ax4) = mutation_probe(&geom, &table).unwrap();
        assert!(
            ax1.failure.is_some() || ax4.failure.is_some(),
            "corruption went unnoticed"
        );
    }

    #[test]
    fn table_agrees_with_direct_evaluation() {
        let geom = FiniteGeometry::grassmannian(gf(2), 2).unwrap();
        assert_eq!(geom.len(), 5);
        let table = GammaTable::build(&geom).unwrap();
        let pts = geom.points();
        let mut spot = 0;
        for (i, x) in pts.iter().enumerate() {
            for (j, a) in pts.iter().enumerate() {
                let g = crate::gamma::gamma(x, a, x, a, a);
                assert_eq!(
                    table.get(i as u32, j as u32, i as u32, j as u32, j as u32),
                    geom.idx(&g).unwrap()
                );
                spot += 1;
            }
        }
        assert_eq!(spot, 25);
    }
}
