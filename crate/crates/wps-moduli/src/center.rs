//! The center of the simply connected group as the quotient of the
//! fundamental-coweight lattice by the coroot lattice, the extended-diagram
//! automorphism attached to a central element, and the orbit, lattice,
//! volume-ratio, and c-special-root data built on it.
//!
//! Automorphisms come from per-type closed-form tables, but every table entry
//! is validated at construction against the honestly built affine Cartan
//! matrix, the affine marks and comarks, the element order, the homomorphism
//! property, and the mark-one anchor node.

use crate::parabolic::ParabolicProfile;
use crate::ratmat::{self, q, Q, Z};
use crate::rootsys::{Family, RootDatum};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

fn frac(x: &Q) -> Q {
    x - x.floor()
}

/// One element of Z(G~) = P^vee/Q^vee.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterElement {
    /// Position in the lexicographic enumeration; 0 is the identity.
    pub index: usize,
    /// Coordinates in the cyclic invariant factors.
    pub tuple: Vec<i64>,
    /// Canonical coweight representative in [0,1)^r, simple-coroot coordinates.
    pub coweight: Vec<Q>,
    pub order: i64,
}

/// The full center with its Smith-normal-form cyclic decomposition.
pub struct CenterGroup {
    /// Invariant factors greater than one, in divisibility order.
    pub factors: Vec<i64>,
    factor_rows: Vec<usize>,
    u: Vec<Vec<Z>>,
    pub elements: Vec<CenterElement>,
}

/// Builds Z(G~) from the Smith normal form of the Cartan matrix: the class of
/// a fundamental-coweight vector x is U x read in the cyclic factors.
pub fn center_group(d: &RootDatum) -> CenterGroup {
    let r = d.rank();
    let a_z: Vec<Vec<Z>> = d
        .cartan()
        .iter()
        .map(|row| row.iter().map(|&x| Z::from(x)).collect())
        .collect();
    let snf = ratmat::snf(&a_z);
    let mut factors = Vec::new();
    let mut factor_rows = Vec::new();
    for (i, di) in snf.d.iter().enumerate() {
        let v = di.to_i64().expect("invariant factor fits i64").abs();
        assert!(v >= 1, "Cartan matrix must be nonsingular");
        if v > 1 {
            factors.push(v);
            factor_rows.push(i);
        }
    }

    // Generator of the k-th factor: the class of U^{-1} e_{row}, converted to
    // simple-coroot coordinates through A^{-1}.
    let cinv = d.cartan_inv();
    let gens: Vec<Vec<Q>> = factor_rows
        .iter()
        .map(|&row| {
            let y: Vec<Q> = (0..r).map(|k| Q::from(snf.uinv[k][row].clone())).collect();
            let z: Vec<Q> = (0..r)
                .map(|i| (0..r).map(|k| &cinv[i][k] * &y[k]).sum())
                .collect();
            z.iter().map(frac).collect()
        })
        .collect();

    let total: i64 = factors.iter().product();
    let mut elements = Vec::new();
    for index in 0..total as usize {
        let mut rem = index as i64;
        let mut tuple = vec![0i64; factors.len()];
        for k in (0..factors.len()).rev() {
            tuple[k] = rem % factors[k];
            rem /= factors[k];
        }
        let order = tuple
            .iter()
            .zip(factors.iter())
            .map(|(&t, &s)| s / t.gcd(&s))
            .fold(1i64, |acc, o| acc.lcm(&o));
        let mut z = vec![Q::zero(); r];
        for (k, &t) in tuple.iter().enumerate() {
            for i in 0..r {
                z[i] += q(t) * &gens[k][i];
            }
        }
        let coweight: Vec<Q> = z.iter().map(frac).collect();
        // The denominator lcm of the representative must equal the order.
        let denom_order = coweight
            .iter()
            .fold(Z::one(), |acc, c| acc.lcm(c.denom()))
            .to_i64()
            .unwrap();
        assert_eq!(denom_order, order, "coweight representative order mismatch");
        elements.push(CenterElement {
            index,
            tuple,
            coweight,
            order,
        });
    }
    // Canonical representatives must be pairwise distinct.
    let distinct: BTreeSet<String> = elements
        .iter()
        .map(|e| format!("{:?}", e.coweight))
        .collect();
    assert_eq!(distinct.len(), elements.len(), "center enumeration collided");

    CenterGroup {
        factors,
        factor_rows,
        u: snf.u,
        elements,
    }
}

impl CenterGroup {
    pub fn order(&self) -> i64 {
        self.factors.iter().product()
    }

    pub fn element(&self, index: usize) -> Result<&CenterElement, String> {
        self.elements.get(index).ok_or_else(|| {
            format!(
                "center index {index} out of range: the center has {} elements",
                self.elements.len()
            )
        })
    }

    pub fn is_full_generator(&self, c: &CenterElement) -> bool {
        c.order == self.order()
    }

    /// Class tuple of the fundamental coweight varpi_{alpha}^vee (0-based).
    pub fn coweight_class_tuple(&self, alpha: usize) -> Vec<i64> {
        self.factor_rows
            .iter()
            .zip(self.factors.iter())
            .map(|(&row, &s)| {
                let v = self.u[row][alpha].to_i64().expect("class coordinate fits i64");
                v.rem_euclid(s)
            })
            .collect()
    }

    pub fn tuple_add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter()
            .zip(b.iter())
            .zip(self.factors.iter())
            .map(|((&x, &y), &s)| (x + y).rem_euclid(s))
            .collect()
    }

    pub fn tuple_scale(&self, k: i64, t: &[i64]) -> Vec<i64> {
        t.iter()
            .zip(self.factors.iter())
            .map(|(&x, &s)| (k * x).rem_euclid(s))
            .collect()
    }

    pub fn tuple_order(&self, t: &[i64]) -> i64 {
        t.iter()
            .zip(self.factors.iter())
            .map(|(&x, &s)| s / x.gcd(&s))
            .fold(1i64, |acc, o| acc.lcm(&o))
    }

    pub fn element_by_tuple(&self, t: &[i64]) -> &CenterElement {
        self.elements
            .iter()
            .find(|e| e.tuple == t)
            .expect("tuple must be in range")
    }
}

/// A permutation of the extended node set {0, 1, .., r}, where node 0 is
/// alpha_0 = -(highest root) and node i is alpha_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineAutomorphism {
    pub perm: Vec<usize>,
    /// The mark-one node the identity vertex is carried to (None for c = 1).
    pub anchor: Option<usize>,
}

impl AffineAutomorphism {
    pub fn order(&self) -> i64 {
        let mut k = 1i64;
        let mut cur = self.perm.clone();
        let id: Vec<usize> = (0..self.perm.len()).collect();
        while cur != id {
            cur = compose(&self.perm, &cur);
            k += 1;
            assert!(k <= self.perm.len() as i64 + 1, "permutation order runaway");
        }
        k
    }

    pub fn pow(&self, k: i64) -> Vec<usize> {
        let n = self.perm.len();
        let id: Vec<usize> = (0..n).collect();
        let mut cur = id;
        for _ in 0..k.rem_euclid(self.order()) {
            cur = compose(&self.perm, &cur);
        }
        cur
    }

    /// Cycle decomposition, sorted by smallest member; the orbit of node 0
    /// comes first.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut cur = self.perm[start];
            while cur != start {
                seen[cur] = true;
                cyc.push(cur);
                cur = self.perm[cur];
            }
            cyc.sort_unstable();
            out.push(cyc);
        }
        out.sort_by_key(|c| c[0]);
        out
    }
}

fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

/// Closed-form permutation for the family of `d` anchored at mark-one node
/// `j` (1-based simple index), before validation.
fn tau_table(d: &RootDatum, j: usize) -> Result<Vec<usize>, String> {
    let n = d.rank();
    let mut p: Vec<usize> = (0..=n).collect();
    match d.simple_type().family() {
        Family::A => {
            for (i, slot) in p.iter_mut().enumerate() {
                *slot = (i + j) % (n + 1);
            }
        }
        Family::B => {
            if j != 1 {
                return Err(format!("no automorphism anchored at node {j} for B"));
            }
            p.swap(0, 1);
        }
        Family::C => {
            if j != n {
                return Err(format!("no automorphism anchored at node {j} for C"));
            }
            for (i, slot) in p.iter_mut().enumerate() {
                *slot = n - i;
            }
        }
        Family::D => {
            let spine = |p: &mut Vec<usize>| {
                for i in 2..=n.saturating_sub(2) {
                    p[i] = n - i;
                }
            };
            if j == 1 {
                p.swap(0, 1);
                p.swap(n - 1, n);
            } else if j == n || j == n - 1 {
                spine(&mut p);
                if n % 2 == 0 {
                    if j == n {
                        p[0] = n;
                        p[n] = 0;
                        p[1] = n - 1;
                        p[n - 1] = 1;
                    } else {
                        p[0] = n - 1;
                        p[n - 1] = 0;
                        p[1] = n;
                        p[n] = 1;
                    }
                } else if j == n - 1 {
                    p[0] = n - 1;
                    p[n - 1] = 1;
                    p[1] = n;
                    p[n] = 0;
                } else {
                    p[0] = n;
                    p[n] = 1;
                    p[1] = n - 1;
                    p[n - 1] = 0;
                }
            } else {
                return Err(format!("no automorphism anchored at node {j} for D"));
            }
        }
        Family::E if n == 6 => {
            // Rotation of the three length-2 arms hanging off node 4.
            let rho: [usize; 7] = [1, 6, 3, 5, 4, 2, 0];
            match j {
                1 => p = rho.to_vec(),
                6 => p = compose(&rho, &rho),
                _ => return Err(format!("no automorphism anchored at node {j} for E6")),
            }
        }
        Family::E if n == 7 => {
            if j != 7 {
                return Err(format!("no automorphism anchored at node {j} for E7"));
            }
            p.swap(0, 7);
            p.swap(1, 6);
            p.swap(3, 5);
        }
        other => {
            return Err(format!(
                "family {other:?} rank {n} has a trivial center; no anchored automorphism"
            ))
        }
    }
    Ok(p)
}

fn affine_root(d: &RootDatum, node: usize) -> Vec<i64> {
    if node == 0 {
        d.highest_root().iter().map(|&x| -x).collect()
    } else {
        let mut e = vec![0i64; d.rank()];
        e[node - 1] = 1;
        e
    }
}

fn affine_marks(d: &RootDatum) -> Vec<i64> {
    let mut m = vec![1i64];
    m.extend_from_slice(d.marks());
    m
}

fn affine_comarks(d: &RootDatum) -> Vec<i64> {
    let mut m = vec![1i64];
    m.extend_from_slice(d.comarks());
    m
}

/// The extended-diagram automorphism attached to c, from the per-type table,
/// then validated: affine Cartan integers, marks and comarks, order, the
/// homomorphism property along <c>, the anchor node, and fixed-point-freeness
/// in type A.
pub fn diagram_automorphism(
    d: &RootDatum,
    zc: &CenterGroup,
    c: &CenterElement,
) -> Result<AffineAutomorphism, String> {
    let n = d.rank();
    let aut = if c.order == 1 {
        AffineAutomorphism {
            perm: (0..=n).collect(),
            anchor: None,
        }
    } else {
        let mut anchor = None;
        for jn in 1..=n {
            if d.marks()[jn - 1] == 1 && zc.coweight_class_tuple(jn - 1) == c.tuple {
                assert!(anchor.is_none(), "two mark-one nodes share the class of c");
                anchor = Some(jn);
            }
        }
        let j = anchor.ok_or_else(|| {
            "no mark-one node represents this central element".to_string()
        })?;
        AffineAutomorphism {
            perm: tau_table(d, j)?,
            anchor: Some(j),
        }
    };

    // Validation bundle.
    let perm = &aut.perm;
    for x in 0..=n {
        for y in 0..=n {
            let lhs = d.root_pairing(&affine_root(d, perm[x]), &affine_root(d, perm[y]));
            let rhs = d.root_pairing(&affine_root(d, x), &affine_root(d, y));
            if lhs != rhs {
                return Err(format!(
                    "table permutation does not preserve the affine Cartan matrix at ({x},{y})"
                ));
            }
        }
    }
    let am = affine_marks(d);
    let ag = affine_comarks(d);
    for x in 0..=n {
        if am[perm[x]] != am[x] || ag[perm[x]] != ag[x] {
            return Err(format!("marks or comarks not preserved at node {x}"));
        }
    }
    if aut.order() != c.order {
        return Err(format!(
            "permutation order {} does not match element order {}",
            aut.order(),
            c.order
        ));
    }
    if let Some(jn) = aut.anchor {
        if perm[0] != jn {
            return Err("anchor node is not the image of node 0".into());
        }
    }
    // Homomorphism along <c>: the table for c^k must be the k-th power.
    for k in 0..c.order {
        let ck = zc.element_by_tuple(&zc.tuple_scale(k, &c.tuple));
        let direct = if ck.order == 1 {
            (0..=n).collect::<Vec<usize>>()
        } else {
            let mut anchor_k = None;
            for jn in 1..=n {
                if d.marks()[jn - 1] == 1 && zc.coweight_class_tuple(jn - 1) == ck.tuple {
                    anchor_k = Some(jn);
                }
            }
            tau_table(d, anchor_k.ok_or("power of c lacks a mark-one node")?)?
        };
        if direct != aut.pow(k) {
            return Err(format!("homomorphism property fails at power {k}"));
        }
    }
    if d.simple_type().family() == Family::A && c.order > 1 {
        if perm.iter().enumerate().any(|(i, &y)| i == y) {
            return Err("type-A automorphism for nontrivial c must be fixed-point-free".into());
        }
    }
    Ok(aut)
}

/// One orbit of the automorphism on the extended node set.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub nodes: Vec<usize>,
    pub size: i64,
    /// Comark of any member (constant on the orbit).
    pub g_rep: i64,
    /// g_bar = size * g_rep.
    pub g_bar: i64,
}

/// Orbits with their integers, n_0 = gcd of the g_bar, and r_c.
#[derive(Clone, Debug)]
pub struct OrbitProfile {
    pub orbits: Vec<Orbit>,
    pub n0: i64,
    pub r_c: usize,
}

pub fn orbit_data(d: &RootDatum, aut: &AffineAutomorphism) -> OrbitProfile {
    let ag = affine_comarks(d);
    let mut orbits = Vec::new();
    for nodes in aut.orbits() {
        let g_rep = ag[nodes[0]];
        for &x in &nodes {
            assert_eq!(ag[x], g_rep, "comark must be constant on an orbit");
        }
        let size = nodes.len() as i64;
        orbits.push(Orbit {
            nodes,
            size,
            g_rep,
            g_bar: size * g_rep,
        });
    }
    assert_eq!(orbits[0].nodes[0], 0, "first orbit must contain node 0");
    let total: i64 = orbits.iter().map(|o| o.g_bar).sum();
    assert_eq!(total, d.dual_coxeter_number(), "orbit integers must sum to g");
    let n0 = orbits.iter().map(|o| o.g_bar).fold(0i64, |acc, g| acc.gcd(&g));
    let r_c = orbits.len() - 1;
    OrbitProfile { orbits, n0, r_c }
}

/// Sorted multiset of the orbit integers g_bar.
pub fn orbit_integers(op: &OrbitProfile) -> Vec<i64> {
    let mut v: Vec<i64> = op.orbits.iter().map(|o| o.g_bar).collect();
    v.sort_unstable();
    v
}

/// The invariant lattice basis (orbit coroot sums away from the node-0
/// orbit), its exact Gram data, and the coinvariant torsion.
#[derive(Clone, Debug)]
pub struct LatticeProfile {
    /// Basis vectors in simple-coroot coordinates, one per orbit avoiding 0.
    pub basis: Vec<Vec<i64>>,
    pub gram: Vec<Vec<Q>>,
    pub det: Q,
    /// Computed by Smith reduction of the single relation row; must equal n_0.
    pub torsion: i64,
    pub free_rank: usize,
}

pub fn lattice_profile(d: &RootDatum, op: &OrbitProfile) -> LatticeProfile {
    let r = d.rank();
    let mut basis = Vec::new();
    for o in op.orbits.iter().skip(1) {
        let mut v = vec![0i64; r];
        for &node in &o.nodes {
            assert!(node >= 1, "non-base orbits avoid node 0");
            v[node - 1] += 1;
        }
        basis.push(v);
    }
    assert_eq!(basis.len(), op.r_c);
    let gram: Vec<Vec<Q>> = basis
        .iter()
        .map(|x| {
            basis
                .iter()
                .map(|y| {
                    let xq: Vec<Q> = x.iter().map(|&a| q(a)).collect();
                    let yq: Vec<Q> = y.iter().map(|&a| q(a)).collect();
                    d.i0_pair(&xq, &yq)
                })
                .collect()
        })
        .collect();
    let det = ratmat::det(&gram);
    assert!(det.is_positive() || op.r_c == 0, "Gram determinant must be positive");

    // Coinvariants: free part of rank r_c plus cyclic torsion of order
    // gcd(g_bar), cross-checked through the Smith form of the relation row.
    let row: Vec<Z> = op.orbits.iter().map(|o| Z::from(o.g_bar)).collect();
    let snf = ratmat::snf(&[row]);
    let torsion = snf.d[0].to_i64().unwrap().abs();
    assert_eq!(torsion, op.n0, "Smith torsion must equal the gcd of the g_bar");
    LatticeProfile {
        basis,
        gram,
        det,
        torsion,
        free_rank: op.r_c,
    }
}

/// Vertex data of the fixed simplex and the squared volume ratio
/// vol(T_0)^2/vol(A^c)^2, verified against its closed form.
#[derive(Clone, Debug)]
pub struct AlcoveData {
    /// Orbit-average vertices in simple-coroot coordinates; the first is the
    /// vertex of the node-0 orbit.
    pub vertices: Vec<Vec<Q>>,
    pub ratio_sq: Q,
}

pub fn alcove_fixed_simplex(d: &RootDatum, op: &OrbitProfile, lat: &LatticeProfile) -> AlcoveData {
    let r = d.rank();
    let vertex = |node: usize| -> Vec<Q> {
        if node == 0 {
            vec![Q::zero(); r]
        } else {
            let w = d.fund_coweight(node - 1);
            let h = d.marks()[node - 1];
            w.into_iter().map(|x| x / q(h)).collect()
        }
    };
    let vertices: Vec<Vec<Q>> = op
        .orbits
        .iter()
        .map(|o| {
            let mut v = vec![Q::zero(); r];
            for &node in &o.nodes {
                let x = vertex(node);
                for i in 0..r {
                    v[i] += &x[i];
                }
            }
            v.into_iter().map(|x| x / q(o.size)).collect()
        })
        .collect();
    let base = &vertices[0];
    let edges: Vec<Vec<Q>> = vertices
        .iter()
        .skip(1)
        .map(|v| (0..r).map(|i| &v[i] - &base[i]).collect())
        .collect();
    let e_gram: Vec<Vec<Q>> = edges
        .iter()
        .map(|x| edges.iter().map(|y| d.i0_pair(x, y)).collect())
        .collect();
    let det_e = ratmat::det(&e_gram);
    assert!(!det_e.is_zero(), "fixed simplex must be nondegenerate");
    let rc_fact: i64 = (1..=op.r_c as i64).product();
    let ratio_sq = &lat.det * q(rc_fact * rc_fact) / &det_e;

    // Closed form: ratio = r_c! * prod g_rep * det, squared.
    let g_prod: i64 = op.orbits.iter().skip(1).map(|o| o.g_rep).product();
    let closed = q(rc_fact) * q(g_prod) * &lat.det;
    assert_eq!(
        ratio_sq,
        &closed * &closed,
        "volume ratio disagrees with the closed form"
    );
    AlcoveData { vertices, ratio_sq }
}

/// The covering degree e = r_c! det(I_0|invariant lattice) prod g_bar / n_0,
/// asserted to be a positive integer.
pub fn pairing_degree(op: &OrbitProfile, lat: &LatticeProfile) -> Z {
    let rc_fact: i64 = (1..=op.r_c as i64).product();
    let mut g_prod = Z::one();
    for o in &op.orbits {
        g_prod *= Z::from(o.g_bar);
    }
    let e = q(rc_fact) * &lat.det * Q::from(g_prod) / q(op.n0);
    assert!(e.is_integer() && e.is_positive(), "degree must be a positive integer");
    e.numer().clone()
}

/// Order of the group generated by the simple reflections, by closure on
/// tuples of images of the simple roots. Intended for rank at most 4.
pub fn brute_weyl_order(d: &RootDatum) -> u64 {
    let r = d.rank();
    let id: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut e = vec![0i64; r];
            e[i] = 1;
            e
        })
        .collect();
    let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(w) = frontier.pop() {
        for j in 0..r {
            let next: Vec<Vec<i64>> = w
                .iter()
                .map(|img| d.simple_reflection_root(img, j))
                .collect();
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen.len() as u64
}

/// Order of varpi_alpha(c) in Q/Z: the denominator of the alpha coordinate
/// of the canonical representative.
pub fn o_c_alpha(c: &CenterElement, alpha: usize) -> i64 {
    c.coweight[alpha].denom().to_i64().expect("denominator fits i64")
}

/// Order of the class of varpi_alpha^vee in Z(G~)/<c>, together with the
/// order of the intersection of the two cyclic subgroups.
pub fn n_c_alpha(zc: &CenterGroup, c: &CenterElement, alpha: usize) -> (i64, i64) {
    let t = zc.coweight_class_tuple(alpha);
    let powers_of_c: BTreeSet<Vec<i64>> = (0..c.order)
        .map(|k| zc.tuple_scale(k, &c.tuple))
        .collect();
    let n_alpha = zc.tuple_order(&t);
    let mut image_order = 0;
    for m in 1..=n_alpha {
        if powers_of_c.contains(&zc.tuple_scale(m, &t)) {
            image_order = m;
            break;
        }
    }
    let inter = (0..n_alpha)
        .map(|k| zc.tuple_scale(k, &t))
        .filter(|p| powers_of_c.contains(p))
        .count() as i64;
    assert_eq!(
        n_alpha % image_order,
        0,
        "image order must divide the class order"
    );
    assert_eq!(
        n_alpha / image_order,
        inter,
        "index identity for the intersection subgroup failed"
    );
    (image_order, inter)
}

/// Certificate for a c-special simple root.
#[derive(Clone, Debug)]
pub struct CSpecialCert {
    pub alpha: usize,
    pub o: i64,
    pub d1: i64,
    pub rc_plus_1: i64,
}

/// All c-special simple roots: those with (a) o_{c,alpha} = o(c), (b)
/// varpi_alpha(c) = -1/o(c) mod Z, (c) d_1(alpha)/o(c) = r_c + 1. For the
/// identity element this reduces exactly to the structural special roots,
/// which is asserted.
pub fn c_special_roots(
    d: &RootDatum,
    c: &CenterElement,
    profiles: &[ParabolicProfile],
    op: &OrbitProfile,
) -> Vec<CSpecialCert> {
    let r = d.rank();
    let o = c.order;
    let mut out = Vec::new();
    for alpha in 0..r {
        let oca = o_c_alpha(c, alpha);
        if oca != o {
            continue;
        }
        let target = frac(&(-Q::new(Z::one(), Z::from(o))));
        if c.coweight[alpha] != target {
            continue;
        }
        let d1 = profiles[alpha].d1;
        if d1 % o != 0 || d1 / o != (op.r_c + 1) as i64 {
            continue;
        }
        out.push(CSpecialCert {
            alpha,
            o,
            d1,
            rc_plus_1: (op.r_c + 1) as i64,
        });
    }
    if o == 1 {
        let structural: Vec<usize> = (0..r).filter(|&a| profiles[a].special).collect();
        let detected: Vec<usize> = out.iter().map(|cert| cert.alpha).collect();
        assert_eq!(
            detected, structural,
            "trivial-center detection must match the structural special roots"
        );
    }
    out
}

/// Edge list of the quotient diagram in DOT syntax, orbits labeled with
/// (nodes, n_bar, g_bar).
pub fn quotient_dot(d: &RootDatum, op: &OrbitProfile) -> String {
    let n = d.rank();
    let mut which = vec![0usize; n + 1];
    for (i, o) in op.orbits.iter().enumerate() {
        for &node in &o.nodes {
            which[node] = i;
        }
    }
    let mut s = String::from("graph quotient {\n");
    for (i, o) in op.orbits.iter().enumerate() {
        let nodes: Vec<String> = o.nodes.iter().map(|x| x.to_string()).collect();
        s.push_str(&format!(
            "  o{i} [label=\"{{{}}} n={} g={}\"];\n",
            nodes.join(","),
            o.size,
            o.g_bar
        ));
    }
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for x in 0..=n {
        for y in x + 1..=n {
            let adj = d.root_pairing(&affine_root(d, x), &affine_root(d, y)) != 0;
            if adj && which[x] != which[y] {
                let (a, b) = (which[x].min(which[y]), which[x].max(which[y]));
                edges.insert((a, b));
            }
        }
    }
    for (a, b) in edges {
        s.push_str(&format!("  o{a} -- o{b};\n"));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::parabolic_profile;
    use crate::rootsys::{build_root_system, SimpleType};

    fn datum(f: Family, r: usize) -> RootDatum {
        build_root_system(SimpleType::new(f, r).unwrap()).unwrap()
    }

    fn profiles(d: &RootDatum) -> Vec<ParabolicProfile> {
        (0..d.rank()).map(|a| parabolic_profile(d, a)).collect()
    }

    #[test]
    fn center_orders() {
        for (f, r, n) in [
            (Family::A, 1, 2),
            (Family::A, 4, 5),
            (Family::B, 4, 2),
            (Family::C, 5, 2),
            (Family::D, 4, 4),
            (Family::D, 5, 4),
            (Family::E, 6, 3),
            (Family::E, 7, 2),
            (Family::E, 8, 1),
            (Family::F, 4, 1),
            (Family::G, 2, 1),
        ] {
            let d = datum(f, r);
            let zc = center_group(&d);
            assert_eq!(zc.order(), n, "{f:?}{r}");
        }
        // D_{2m} is Klein, D_{odd} is cyclic of order 4.
        let d4 = center_group(&datum(Family::D, 4));
        assert_eq!(d4.factors, vec![2, 2]);
        let d5 = center_group(&datum(Family::D, 5));
        assert_eq!(d5.factors, vec![4]);
    }

    #[test]
    fn automorphisms_validate_everywhere() {
        for (f, r) in [
            (Family::A, 1),
            (Family::A, 4),
            (Family::B, 2),
            (Family::B, 5),
            (Family::C, 2),
            (Family::C, 5),
            (Family::D, 3),
            (Family::D, 4),
            (Family::D, 5),
            (Family::D, 6),
            (Family::E, 6),
            (Family::E, 7),
            (Family::E, 8),
            (Family::F, 4),
            (Family::G, 2),
        ] {
            let d = datum(f, r);
            let zc = center_group(&d);
            for c in &zc.elements {
                diagram_automorphism(&d, &zc, c).unwrap();
            }
        }
    }

    #[test]
    fn e7_flip_orbits() {
        let d = datum(Family::E, 7);
        let zc = center_group(&d);
        let c = zc.element(1).unwrap();
        assert_eq!(c.order, 2);
        let aut = diagram_automorphism(&d, &zc, c).unwrap();
        assert_eq!(aut.anchor, Some(7));
        let op = orbit_data(&d, &aut);
        assert_eq!(orbit_integers(&op), vec![2, 2, 4, 4, 6]);
        assert_eq!(op.n0, 2);
        assert_eq!(op.r_c, 4);
    }

    #[test]
    fn a1_lattices_and_degrees() {
        let d = datum(Family::A, 1);
        let zc = center_group(&d);
        // Trivial element.
        let aut0 = diagram_automorphism(&d, &zc, zc.element(0).unwrap()).unwrap();
        let op0 = orbit_data(&d, &aut0);
        let lat0 = lattice_profile(&d, &op0);
        assert_eq!(lat0.basis, vec![vec![1]]);
        assert_eq!(lat0.det, q(2));
        assert_eq!(lat0.torsion, 1);
        assert_eq!(pairing_degree(&op0, &lat0), Z::from(2));
        let alc0 = alcove_fixed_simplex(&d, &op0, &lat0);
        assert_eq!(alc0.ratio_sq, q(4));
        // Order-2 element.
        let aut1 = diagram_automorphism(&d, &zc, zc.element(1).unwrap()).unwrap();
        let op1 = orbit_data(&d, &aut1);
        assert_eq!(op1.r_c, 0);
        assert_eq!(op1.n0, 2);
        let lat1 = lattice_profile(&d, &op1);
        assert!(lat1.basis.is_empty());
        assert_eq!(lat1.det, q(1));
        assert_eq!(lat1.torsion, 2);
        assert_eq!(pairing_degree(&op1, &lat1), Z::one());
        let alc1 = alcove_fixed_simplex(&d, &op1, &lat1);
        assert_eq!(alc1.ratio_sq, q(1));
        assert_eq!(alc1.vertices.len(), 1);
        assert_eq!(alc1.vertices[0], vec![Q::new(Z::one(), Z::from(4))]);
    }

    #[test]
    fn e8_degree_formula() {
        let d = datum(Family::E, 8);
        let zc = center_group(&d);
        let aut = diagram_automorphism(&d, &zc, zc.element(0).unwrap()).unwrap();
        let op = orbit_data(&d, &aut);
        let lat = lattice_profile(&d, &op);
        assert_eq!(pairing_degree(&op, &lat), Z::from(696729600i64));
    }

    #[test]
    fn brute_weyl_small() {
        let table = [
            (Family::A, 1, 2u64),
            (Family::A, 2, 6),
            (Family::A, 3, 24),
            (Family::A, 4, 120),
            (Family::B, 2, 8),
            (Family::B, 3, 48),
            (Family::B, 4, 384),
            (Family::C, 3, 48),
            (Family::D, 3, 24),
            (Family::D, 4, 192),
            (Family::G, 2, 12),
            (Family::F, 4, 1152),
        ];
        for (f, r, expect) in table {
            assert_eq!(brute_weyl_order(&datum(f, r)), expect, "{f:?}{r}");
        }
    }

    #[test]
    fn o_and_n_orders() {
        // A_3, c the class of varpi_2 (order 2): varpi_1(c) = 1/2.
        let d = datum(Family::A, 3);
        let zc = center_group(&d);
        let c2 = zc
            .elements
            .iter()
            .find(|e| e.order == 2)
            .unwrap();
        assert_eq!(o_c_alpha(c2, 0), 2);
        assert_eq!(o_c_alpha(c2, 1), 1);
        assert_eq!(o_c_alpha(c2, 2), 2);
        // Cyclic center, c a full generator: n_{c,alpha} = 1 for all alpha.
        let c4 = zc.elements.iter().find(|e| e.order == 4).unwrap();
        for a in 0..3 {
            assert_eq!(n_c_alpha(&zc, c4, a).0, 1);
        }
        // Quotient by the order-2 subgroup leaves Z/2: the outer nodes drop
        // to order 2, the middle node becomes trivial.
        assert_eq!(n_c_alpha(&zc, c2, 0).0, 2);
        assert_eq!(n_c_alpha(&zc, c2, 1).0, 1);
        assert_eq!(n_c_alpha(&zc, c2, 2).0, 2);
        // Spin(2n), c of order 2 away from the vector class.
        let d6 = datum(Family::D, 6);
        let zc6 = center_group(&d6);
        for c in zc6.elements.iter().filter(|e| e.order == 2) {
            let aut = diagram_automorphism(&d6, &zc6, c).unwrap();
            if aut.anchor == Some(1) {
                continue;
            }
            for a in [0usize, 4, 5] {
                let expect = if zc6.coweight_class_tuple(a) == c.tuple { 1 } else { 2 };
                assert_eq!(n_c_alpha(&zc6, c, a).0, expect);
            }
        }
    }

    #[test]
    fn c_special_census_rows() {
        // SO(7): B_3 with c of order 2: the unique short simple root.
        let d = datum(Family::B, 3);
        let zc = center_group(&d);
        let c = zc.element(1).unwrap();
        let aut = diagram_automorphism(&d, &zc, c).unwrap();
        let op = orbit_data(&d, &aut);
        let pr = profiles(&d);
        let certs = c_special_roots(&d, c, &pr, &op);
        assert_eq!(certs.len(), 1);
        assert_eq!(certs[0].alpha, 2);
        assert_eq!(certs[0].d1, 6);
        assert_eq!(certs[0].rc_plus_1, 3);

        // Sp(8)/{1,-1}: C_4, c order 2: alpha_3, d_1 = 6, r_c + 1 = 3.
        let d = datum(Family::C, 4);
        let zc = center_group(&d);
        let c = zc.element(1).unwrap();
        let aut = diagram_automorphism(&d, &zc, c).unwrap();
        let op = orbit_data(&d, &aut);
        let pr = profiles(&d);
        let certs = c_special_roots(&d, c, &pr, &op);
        assert_eq!(certs.len(), 1);
        assert_eq!(certs[0].alpha, 2);
        assert_eq!(certs[0].d1, 6);
        assert_eq!(certs[0].rc_plus_1, 3);

        // SO(10): D_5 with the vector class: the two ear nodes.
        let d = datum(Family::D, 5);
        let zc = center_group(&d);
        let v = zc.elements.iter().find(|e| e.order == 2).unwrap();
        let aut = diagram_automorphism(&d, &zc, v).unwrap();
        assert_eq!(aut.anchor, Some(1));
        let op = orbit_data(&d, &aut);
        let pr = profiles(&d);
        let certs = c_special_roots(&d, v, &pr, &op);
        let alphas: Vec<usize> = certs.iter().map(|c| c.alpha).collect();
        assert_eq!(alphas, vec![3, 4]);
        assert!(certs.iter().all(|c| c.d1 == 8 && c.rc_plus_1 == 4));

        // Spin(10)/<c> with c of order 4: exactly one ear.
        let s = zc.elements.iter().find(|e| e.order == 4).unwrap();
        let aut = diagram_automorphism(&d, &zc, s).unwrap();
        let op = orbit_data(&d, &aut);
        let certs = c_special_roots(&d, s, &pr, &op);
        assert_eq!(certs.len(), 1);
        assert!(certs[0].alpha == 3 || certs[0].alpha == 4);
        assert_eq!(certs[0].d1, 8);
        assert_eq!(certs[0].rc_plus_1, 2);

        // ad E_6: one arm node with varpi(c) = -1/3; d_1 = 9, r_c + 1 = 3.
        let d = datum(Family::E, 6);
        let zc = center_group(&d);
        let c = zc.element(1).unwrap();
        assert_eq!(c.order, 3);
        let aut = diagram_automorphism(&d, &zc, c).unwrap();
        let op = orbit_data(&d, &aut);
        let pr = profiles(&d);
        let certs = c_special_roots(&d, c, &pr, &op);
        assert_eq!(certs.len(), 1);
        assert!(certs[0].alpha == 2 || certs[0].alpha == 4);
        assert_eq!(certs[0].d1, 9);
        assert_eq!(certs[0].rc_plus_1, 3);

        // ad E_7: alpha_5, d_1 = 10, r_c + 1 = 5.
        let d = datum(Family::E, 7);
        let zc = center_group(&d);
        let c = zc.element(1).unwrap();
        let aut = diagram_automorphism(&d, &zc, c).unwrap();
        let op = orbit_data(&d, &aut);
        let pr = profiles(&d);
        let certs = c_special_roots(&d, c, &pr, &op);
        assert_eq!(certs.len(), 1);
        assert_eq!(certs[0].alpha, 4);
        assert_eq!(certs[0].d1, 10);
        assert_eq!(certs[0].rc_plus_1, 5);
    }

    #[test]
    fn simply_laced_det_is_center_order() {
        for (f, r) in [
            (Family::A, 2),
            (Family::A, 5),
            (Family::D, 4),
            (Family::D, 5),
            (Family::E, 6),
            (Family::E, 7),
            (Family::E, 8),
        ] {
            let d = datum(f, r);
            let zc = center_group(&d);
            let aut = diagram_automorphism(&d, &zc, zc.element(0).unwrap()).unwrap();
            let op = orbit_data(&d, &aut);
            let lat = lattice_profile(&d, &op);
            assert_eq!(lat.det, q(zc.order()), "{f:?}{r}");
        }
    }
}
