//! Weighted-projective weight profiles for the moduli spaces, degree
//! consistency along independent routes, twisted cohomology dimension
//! counts, singular-stratum structure, and the sweep driver that evaluates
//! the whole claim catalog over a configurable family of group data.

use crate::center::{
    alcove_fixed_simplex, brute_weyl_order, c_special_roots, center_group, diagram_automorphism,
    lattice_profile, n_c_alpha, o_c_alpha, orbit_data, pairing_degree, CSpecialCert, CenterElement,
    CenterGroup, LatticeProfile, OrbitProfile,
};
use crate::farey::{circular_complete, is_circularly_symmetric, CircularCheck, Completion};
use crate::parabolic::{
    levi_special_structure, parabolic_profile, subsystem_r_alpha_k, verify_lambda_props,
    ParabolicProfile,
};
use crate::ratmat::{q, Q, Z};
use crate::report::{q_str, ClaimRecord, GroupKey, VerificationReport};
use crate::rootsys::{build_root_system, Family, RootDatum, SimpleType};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// Weight data of the weighted projective space attached to (G, c) and a
/// c-special node alpha.
#[derive(Clone, Debug)]
pub struct WpsProfile {
    pub alpha: usize,
    /// Raw weights n_{c,alpha} g_bar / n_0 per orbit, ascending.
    pub weights: Vec<i64>,
    /// gcd of the raw weights; equals n_{c,alpha}.
    pub weight_gcd: i64,
    /// Normalized weights g_bar/n_0, ascending; the underlying space.
    pub moduli_weights: Vec<i64>,
    /// Degree parameter -2g n_{c,alpha}/n_0 of the distinguished bundle.
    pub a: i64,
    pub r_c: usize,
    pub n0: i64,
    /// Set when c does not generate the full center.
    pub flagged_nongenerator: bool,
}

pub fn wps_profile(
    d: &RootDatum,
    zc: &CenterGroup,
    c: &CenterElement,
    cert: &CSpecialCert,
    op: &OrbitProfile,
) -> WpsProfile {
    let (nca, _) = n_c_alpha(zc, c, cert.alpha);
    let mut weights: Vec<i64> = op
        .orbits
        .iter()
        .map(|o| {
            assert_eq!(o.g_bar % op.n0, 0);
            nca * o.g_bar / op.n0
        })
        .collect();
    weights.sort_unstable();
    let gcd = weights.iter().fold(0i64, |a, &w| a.gcd(&w));
    assert_eq!(gcd, nca, "weight gcd must be n_c_alpha");
    let moduli_weights: Vec<i64> = weights.iter().map(|w| w / gcd).collect();
    let g = d.dual_coxeter_number();
    assert_eq!(2 * g * nca % op.n0, 0);
    let a = -2 * g * nca / op.n0;
    let sum: i64 = weights.iter().sum();
    assert_eq!(sum, nca * g / op.n0, "weights must sum to n_c_alpha g/n_0");
    WpsProfile {
        alpha: cert.alpha,
        weights,
        weight_gcd: gcd,
        moduli_weights,
        a,
        r_c: op.r_c,
        n0: op.n0,
        flagged_nongenerator: !zc.is_full_generator(c),
    }
}

/// Top self-intersection number a^r gcd(w)/prod(w) of O(a) on P(w_0..w_r);
/// each weight must divide a.
pub fn wps_top_intersection(weights: &[i64], a: i64) -> Result<Q, String> {
    assert!(!weights.is_empty());
    for &w in weights {
        if a % w != 0 {
            return Err(format!(
                "weight {w} does not divide the degree parameter {a}"
            ));
        }
    }
    let r = weights.len() - 1;
    let gcd = weights.iter().fold(0i64, |acc, &w| acc.gcd(&w));
    let mut num = Z::from(a).pow(r as u32) * Z::from(gcd);
    let mut den = Z::one();
    for &w in weights {
        den *= Z::from(w);
    }
    if den.is_negative() {
        den = -den;
        num = -num;
    }
    Ok(Q::new(num, den))
}

/// Self-intersection of the determinant bundle: (-2g)^{r_c} n_0/prod(g_bar).
pub fn det_bundle_self_intersection(d: &RootDatum, op: &OrbitProfile) -> Q {
    let g = d.dual_coxeter_number();
    let num = Z::from(-2 * g).pow(op.r_c as u32) * Z::from(op.n0);
    let mut den = Z::one();
    for o in &op.orbits {
        den *= Z::from(o.g_bar);
    }
    Q::new(num, den)
}

/// r! det(J) for a symmetric rational matrix J: the top power of the
/// associated quadratic form.
pub fn quadratic_top_power(j: &[Vec<Q>]) -> Q {
    let r = j.len();
    for (i, row) in j.iter().enumerate() {
        assert_eq!(row.len(), r);
        for (k, x) in row.iter().enumerate() {
            assert_eq!(*x, j[k][i], "matrix must be symmetric");
        }
    }
    let mut fact = Z::one();
    for i in 1..=r {
        fact *= Z::from(i as i64);
    }
    Q::from(fact) * crate::ratmat::det(j)
}

/// Independent oracle for `quadratic_top_power`: expands
/// Omega = sum J_ik x_i wedge y_k over 2r anticommuting generators and reads
/// the coefficient of the full volume form in Omega^r. Intended for small r.
pub fn exterior_top_power(j: &[Vec<Q>]) -> Q {
    let r = j.len();
    assert!(r <= 6, "oracle is meant for small ranks");
    if r == 0 {
        return Q::one();
    }
    let mut omega: BTreeMap<u64, Q> = BTreeMap::new();
    for (i, row) in j.iter().enumerate() {
        for (k, c) in row.iter().enumerate() {
            if !c.is_zero() {
                omega.insert((1u64 << i) | (1u64 << (r + k)), c.clone());
            }
        }
    }
    let mut acc: BTreeMap<u64, Q> = BTreeMap::from([(0u64, Q::one())]);
    for _ in 0..r {
        let mut next: BTreeMap<u64, Q> = BTreeMap::new();
        for (&ma, ca) in &acc {
            for (&mb, cb) in &omega {
                if ma & mb != 0 {
                    continue;
                }
                let mut sign = 0u32;
                let mut bits = mb;
                while bits != 0 {
                    let b = bits.trailing_zeros();
                    sign += (ma >> (b + 1)).count_ones();
                    bits &= bits - 1;
                }
                let term = if sign % 2 == 0 {
                    ca * cb
                } else {
                    -(ca * cb)
                };
                *next.entry(ma | mb).or_insert_with(Q::zero) += term;
            }
        }
        acc = next;
    }
    let full = (1u64 << (2 * r)) - 1;
    acc.remove(&full).unwrap_or_else(Q::zero)
}

/// Dimensions of the twisted cohomology attached to an admissible negative
/// degree and an auxiliary rank.
#[derive(Clone, Debug)]
pub struct CohomologyDims {
    /// One entry per level k = 1..=h_alpha.
    pub per_level: Vec<i64>,
    pub total: i64,
}

pub fn cohomology_dimensions(
    p: &ParabolicProfile,
    c: &CenterElement,
    deg_eta: i64,
    r_hat: i64,
) -> Result<CohomologyDims, String> {
    if deg_eta >= 0 {
        return Err(format!("the twisting degree must be negative, got {deg_eta}"));
    }
    if r_hat < 0 {
        return Err(format!("the auxiliary rank must be nonnegative, got {r_hat}"));
    }
    let o = o_c_alpha(c, p.alpha);
    let z = &c.coweight[p.alpha];
    let p_num = (z * q(o)).numer().clone();
    let rem = (Z::from(deg_eta) - &p_num).mod_floor(&Z::from(o));
    if !rem.is_zero() {
        return Err(format!(
            "degree {deg_eta} is not admissible: {deg_eta}/{o} must equal varpi_alpha(c) = {}/{o} modulo 1, but {o} does not divide {deg_eta} - {}",
            p_num, p_num
        ));
    }
    let mut per_level = Vec::new();
    for l in &p.levels {
        let num = -deg_eta * l.i_val;
        if num % o != 0 {
            return Err(format!(
                "level {}: {o} does not divide {num}; the per-level dimension is not integral",
                l.k
            ));
        }
        per_level.push(num / o);
    }
    let total = 1 + r_hat + per_level.iter().sum::<i64>();
    assert_eq!(total, 1 + r_hat + (-deg_eta) * p.d1 / o);
    Ok(CohomologyDims { per_level, total })
}

/// Scan of 1 + n d_1(beta) over all nodes and twist multiplicities.
#[derive(Clone, Debug)]
pub struct MinimalityScan {
    pub min_total: i64,
    /// (beta, n) pairs attaining the minimum r+2.
    pub attained: Vec<(usize, i64)>,
    pub pass: bool,
}

pub fn minimality_scan(d: &RootDatum, profiles: &[ParabolicProfile]) -> MinimalityScan {
    let r = d.rank() as i64;
    let bound = d.coxeter_number();
    let mut min_total = i64::MAX;
    let mut attained = Vec::new();
    let mut ok = true;
    for p in profiles {
        for n in 1..=bound {
            let t = 1 + n * p.d1;
            min_total = min_total.min(t);
            if t < r + 2 {
                ok = false;
            }
            if t == r + 2 {
                attained.push((p.alpha, n));
                if n != 1 || !p.special {
                    ok = false;
                }
            }
        }
    }
    // Every system has a special root, so the bound is attained.
    ok &= min_total == r + 2
        && attained.len() == profiles.iter().filter(|p| p.special).count();
    MinimalityScan {
        min_total,
        attained,
        pass: ok,
    }
}

/// Diagram structure of the index-k singular stratum.
#[derive(Clone, Debug)]
pub struct SingularStratum {
    pub components: Vec<(Vec<usize>, SimpleType)>,
    /// Index into `components` of the component containing -lambda_k.
    pub lambda_component: usize,
    /// Whether every other component is of type A.
    pub away_all_a: bool,
    /// Count of raw weights divisible by k n_{c,alpha}.
    pub weight_div_count: i64,
}

pub fn singular_locus_structure(
    d: &RootDatum,
    p: &ParabolicProfile,
    wps: &WpsProfile,
    k: i64,
) -> Result<SingularStratum, String> {
    let (simples, components) = subsystem_r_alpha_k(d, p, k)?;
    let lam = simples.len() - 1;
    let lambda_component = components
        .iter()
        .position(|(nodes, _)| nodes.contains(&lam))
        .ok_or("lowered level root missing from its own subsystem")?;
    let away_all_a = components
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != lambda_component)
        .all(|(_, (_, t))| t.family() == Family::A);
    let div = k * wps.weight_gcd;
    let weight_div_count = wps.weights.iter().filter(|&&w| w % div == 0).count() as i64;
    Ok(SingularStratum {
        components,
        lambda_component,
        away_all_a,
        weight_div_count,
    })
}

/// Both degree routes, plus the weight-space route when a profile is given.
#[derive(Clone, Debug)]
pub struct DegreeCheck {
    pub e: Z,
    /// r_c! det((2g) I_0 restricted to the invariant lattice) / e.
    pub lhs: Q,
    /// Absolute value of the determinant-bundle self-intersection.
    pub rhs: Q,
    pub det_route: Q,
    pub wps_route: Option<Q>,
    pub wps_err: Option<String>,
    pub pass: bool,
}

pub fn degree_consistency(
    d: &RootDatum,
    op: &OrbitProfile,
    lat: &LatticeProfile,
    wps: Option<&WpsProfile>,
) -> DegreeCheck {
    let e = pairing_degree(op, lat);
    let g = d.dual_coxeter_number();
    let j: Vec<Vec<Q>> = lat
        .gram
        .iter()
        .map(|row| row.iter().map(|x| x * q(2 * g)).collect())
        .collect();
    let lhs = quadratic_top_power(&j) / Q::from(e.clone());
    let det_route = det_bundle_self_intersection(d, op);
    let rhs = det_route.abs();
    let (wps_route, wps_err, wps_ok) = match wps {
        None => (None, None, true),
        Some(w) => match wps_top_intersection(&w.weights, w.a) {
            Ok(v) => {
                let ok = v == det_route;
                (Some(v), None, ok)
            }
            Err(e) => (None, Some(e), false),
        },
    };
    let pass = lhs == rhs && wps_ok;
    DegreeCheck {
        e,
        lhs,
        rhs,
        det_route,
        wps_route,
        wps_err,
        pass,
    }
}

/// Which center elements a sweep visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CenterPolicy {
    TrivialOnly,
    AllElements,
    Explicit(usize),
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub types: Vec<SimpleType>,
    pub center_policy: CenterPolicy,
    pub jobs: usize,
    pub fail_fast: bool,
    /// Test-harness hook: perturbs one comark inside the normalization claim
    /// so the sweep must fail there first.
    pub corrupt_comark: bool,
}

impl SweepConfig {
    pub fn default_types(max_rank: usize) -> Vec<SimpleType> {
        let mut v = Vec::new();
        let mut push = |f, r| {
            if let Ok(t) = SimpleType::new(f, r) {
                v.push(t);
            }
        };
        for r in 1..=max_rank {
            push(Family::A, r);
        }
        for r in 2..=max_rank {
            push(Family::B, r);
        }
        for r in 2..=max_rank {
            push(Family::C, r);
        }
        for r in 3..=max_rank {
            push(Family::D, r);
        }
        for r in [6usize, 7, 8] {
            if r <= max_rank {
                push(Family::E, r);
            }
        }
        if 4 <= max_rank {
            push(Family::F, 4);
        }
        if 2 <= max_rank {
            push(Family::G, 2);
        }
        v
    }

    pub fn sweep(max_rank: usize) -> Self {
        SweepConfig {
            types: Self::default_types(max_rank),
            center_policy: CenterPolicy::AllElements,
            jobs: 1,
            fail_fast: false,
            corrupt_comark: false,
        }
    }
}

fn phi(n: i64) -> i64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn expected_root_count(st: SimpleType) -> i64 {
    let n = st.rank() as i64;
    match st.family() {
        Family::A => n * (n + 1),
        Family::B | Family::C => 2 * n * n,
        Family::D => 2 * n * (n - 1),
        Family::E => match n {
            6 => 72,
            7 => 126,
            _ => 240,
        },
        Family::F => 48,
        Family::G => 12,
    }
}

fn expected_c_special_count(
    st: SimpleType,
    c: &CenterElement,
    anchor: Option<usize>,
    structural: usize,
) -> i64 {
    if c.order == 1 {
        return structural as i64;
    }
    let r = st.rank();
    match st.family() {
        Family::A => (r as i64 + 1) / c.order,
        Family::B | Family::C => 1,
        Family::D => {
            if anchor == Some(1) {
                2
            } else if c.order == 4 {
                1
            } else if r == 4 {
                2
            } else {
                1
            }
        }
        Family::E => 1,
        _ => unreachable!("trivial centers have no nontrivial elements"),
    }
}

struct Ctx {
    key: GroupKey,
    label: String,
}

impl Ctx {
    fn new(st: SimpleType, center_index: usize, z_order: i64) -> Self {
        let key = GroupKey {
            family: st.family().letter().to_string(),
            rank: st.rank(),
            center: center_index,
        };
        let label = key.label(z_order);
        Ctx { key, label }
    }

    #[allow(clippy::too_many_arguments)]
    fn claim(
        &self,
        tag: &str,
        statement: &str,
        params: &[(&str, String)],
        lhs: String,
        rhs: String,
        pass: bool,
        witness: Option<String>,
    ) -> ClaimRecord {
        ClaimRecord {
            id: format!("{tag}/{}", self.label),
            anchor: tag.to_string(),
            group: self.key.clone(),
            params: params
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
            lhs,
            rhs,
            pass,
            witness,
            statement: statement.to_string(),
        }
    }
}

fn bool_claim(
    ctx: &Ctx,
    tag: &str,
    statement: &str,
    params: &[(&str, String)],
    ok: bool,
    witness: Option<String>,
) -> ClaimRecord {
    ctx.claim(
        tag,
        statement,
        params,
        if ok { "1" } else { "0" }.to_string(),
        "1".to_string(),
        ok,
        if ok { None } else { witness },
    )
}

fn looform_claim(ctx: &Ctx, d: &RootDatum, corrupt: bool) -> ClaimRecord {
    let r = d.rank();
    let g = d.dual_coxeter_number();
    let mut comarks = d.comarks().to_vec();
    if corrupt {
        comarks[0] += 1;
    }
    let mut q_at = 0i64;
    for b in d.roots() {
        let v: i64 = (0..r)
            .map(|jn| comarks[jn] * d.pairing_with_simple_coroot(b, jn))
            .sum();
        q_at += v * v;
    }
    let mut gram_ok = true;
    'outer: for i in 0..r {
        for jn in 0..r {
            let s: i64 = d
                .roots()
                .iter()
                .map(|b| d.pairing_with_simple_coroot(b, i) * d.pairing_with_simple_coroot(b, jn))
                .sum();
            if q(2 * s) != q(q_at) * &d.i0_coroot_gram()[i][jn] {
                gram_ok = false;
                break 'outer;
            }
        }
    }
    let pass = q_at == 4 * g && gram_ok;
    ctx.claim(
        "looform",
        "form value on the highest coroot is 4g and the full Gram matrix is 2g I_0",
        &[],
        q_at.to_string(),
        (4 * g).to_string(),
        pass,
        if pass {
            None
        } else {
            Some("normalized coroot Gram matrix deviates from 2g I_0".into())
        },
    )
}

fn type_level_claims(
    ctx: &Ctx,
    d: &RootDatum,
    profiles: &[ParabolicProfile],
    out: &mut Vec<ClaimRecord>,
) {
    let st = d.simple_type();
    let r = d.rank();
    let g = d.dual_coxeter_number();
    let cinv = d.cartan_inv();

    out.push({
        let lhs = d.roots().len() as i64;
        let rhs = expected_root_count(st);
        ctx.claim(
            "rootcount",
            "the reflection closure has the classical cardinality",
            &[],
            lhs.to_string(),
            rhs.to_string(),
            lhs == rhs,
            None,
        )
    });

    for p in profiles {
        let alpha = p.alpha;
        let pa = [("alpha", alpha.to_string())];

        // d_1 along two independent routes.
        let route_a = q(2) * (0..r).map(|k| &cinv[k][alpha]).sum::<Q>() / &cinv[alpha][alpha];
        let route_c = q(d.coroot_coords(&p.levels[0].lambda).iter().sum::<i64>() + 1);
        out.push(ctx.claim(
            "d1",
            "two routes for d_1 agree",
            &pa,
            q_str(&route_a),
            q_str(&route_c),
            route_a == route_c && route_a == q(p.d1),
            None,
        ));

        let lhs_phi: i64 = p
            .d_seq
            .iter()
            .enumerate()
            .map(|(i, &dk)| phi(i as i64 + 1) * dk)
            .sum();
        let rhs_phi = q(p.h_alpha * g) / q(p.g_alpha);
        out.push(ctx.claim(
            "formulas",
            "sum of phi(k) d_k equals h_alpha g/g_alpha",
            &pa,
            lhs_phi.to_string(),
            q_str(&rhs_phi),
            q(lhs_phi) == rhs_phi,
            None,
        ));

        let lhs_fc = p.d_seq[0] + p.d_seq[p.d_seq.len() - 1];
        let rhs_fc = q(2 * g) / q(p.g_alpha);
        out.push(ctx.claim(
            "firstcase",
            "d_1 + d_{h_alpha} = 2g/g_alpha",
            &pa,
            lhs_fc.to_string(),
            q_str(&rhs_fc),
            q(lhs_fc) == rhs_fc,
            None,
        ));

        for l in &p.levels {
            let k = l.k as usize;
            let lhs_dk = p.d_seq[0] + p.d_seq[k - 1];
            let rho_val = d.coroot_coords(&l.lambda).iter().sum::<i64>();
            let rhs_dk = q(2 * (rho_val + 1)) / q(l.kprime);
            out.push(ctx.claim(
                "dkprop",
                "d_1 + d_k = (2/k')(rho(lambda_k) + 1)",
                &[("alpha", alpha.to_string()), ("k", k.to_string())],
                lhs_dk.to_string(),
                q_str(&rhs_dk),
                q(lhs_dk) == rhs_dk,
                None,
            ));
        }

        let m_big = g * p.h_alpha / p.g_alpha;
        let circ = is_circularly_symmetric(&p.d_seq, p.h_alpha, m_big);
        let (ok, wit) = match circ {
            Ok(CircularCheck::Symmetric) => (true, None),
            Ok(CircularCheck::FailsAt { x, y }) => {
                (false, Some(format!("fails at the pair with denominators {x}, {y}")))
            }
            Err(e) => (false, Some(e)),
        };
        out.push(bool_claim(
            ctx,
            "circular",
            "the d-sequence is circularly symmetric",
            &pa,
            ok,
            wit,
        ));

        let comp = circular_complete(p.d1, p.h_alpha, m_big);
        let (ok, wit) = match comp {
            Ok(Completion::Complete(seq)) if seq == p.d_seq => (true, None),
            Ok(Completion::Complete(seq)) => {
                (false, Some(format!("completion produced {seq:?}")))
            }
            Ok(Completion::ForcedFailure { x, y }) => {
                (false, Some(format!("forced failure at denominators {x}, {y}")))
            }
            Err(e) => (false, Some(e)),
        };
        out.push(bool_claim(
            ctx,
            "circdet",
            "the d-sequence is determined by d_1 through circular symmetry",
            &pa,
            ok,
            wit,
        ));

        let lp = verify_lambda_props(d, p);
        out.push(bool_claim(
            ctx,
            "lambdaprops",
            "longest-element transport, dominance, and reflection identities for the levels",
            &pa,
            lp.is_ok(),
            lp.err(),
        ));

        if p.special {
            let (ok, lhs_s, rhs_s, wit) = match levi_special_structure(p) {
                Ok((sizes, l)) => (q(l) == q(p.m_alpha), l.to_string(), p.m_alpha.to_string(),
                    if q(l) == q(p.m_alpha) { None } else { Some(format!("factor sizes {sizes:?}")) }),
                Err(e) => (false, "0".into(), p.m_alpha.to_string(), Some(e)),
            };
            out.push(ctx.claim(
                "lalpha2",
                "m_alpha is the lcm of the Levi factor sizes",
                &pa,
                lhs_s,
                rhs_s,
                ok,
                wit,
            ));

            for k in 1..=p.h_alpha {
                let expected = d
                    .roots()
                    .iter()
                    .filter(|b| b[alpha].rem_euclid(k) == 0)
                    .count() as i64;
                let (ok, lhs_k, wit) = match subsystem_r_alpha_k(d, p, k) {
                    Ok((_, comps)) => {
                        let total: i64 = comps.iter().map(|(_, t)| t.root_count()).sum();
                        (total == expected, total.to_string(), None)
                    }
                    Err(e) => (false, "0".into(), Some(e)),
                };
                out.push(ctx.claim(
                    "rk",
                    "the level-k subsystem is generated by the punctured base and the lowered level root",
                    &[("alpha", alpha.to_string()), ("k", k.to_string())],
                    lhs_k,
                    expected.to_string(),
                    ok,
                    wit,
                ));
            }
        }
    }

    let scan = minimality_scan(d, profiles);
    out.push(ctx.claim(
        "mindim",
        "1 + n d_1(beta) is minimized exactly at n = 1 over special beta",
        &[],
        scan.min_total.to_string(),
        (r as i64 + 2).to_string(),
        scan.pass,
        if scan.pass {
            None
        } else {
            Some(format!("attained at {:?}", scan.attained))
        },
    ));

    let specials: Vec<usize> = profiles.iter().filter(|p| p.special).map(|p| p.alpha).collect();
    let expected_specials: i64 = match st.family() {
        Family::A => r as i64,
        Family::D if r == 3 => 3,
        _ => 1,
    };
    out.push(ctx.claim(
        "census",
        "the number of special nodes matches the census",
        &[],
        (specials.len() as i64).to_string(),
        expected_specials.to_string(),
        specials.len() as i64 == expected_specials,
        None,
    ));

    let mut d2_ok = true;
    let mut d2_wit = None;
    for p in profiles {
        let want = p.d1 == r as i64 + 1;
        if p.special != want {
            d2_ok = false;
            d2_wit = Some(format!("node {} has d_1 = {}", p.alpha, p.d1));
            break;
        }
    }
    out.push(bool_claim(
        ctx,
        "d2",
        "a node is special exactly when d_1 = r + 1",
        &[],
        d2_ok,
        d2_wit,
    ));

    // Divisor counts of the affine comark multiset are circular.
    let mut acm = vec![1i64];
    acm.extend_from_slice(d.comarks());
    let nmax = *acm.iter().max().unwrap();
    let counts: Vec<i64> = (1..=nmax)
        .map(|k| acm.iter().filter(|&&x| x % k == 0).count() as i64)
        .collect();
    let (ok, wit) = match is_circularly_symmetric(&counts, nmax, g) {
        Ok(CircularCheck::Symmetric) => (true, None),
        Ok(CircularCheck::FailsAt { x, y }) => {
            (false, Some(format!("fails at denominators {x}, {y}")))
        }
        Err(e) => (false, Some(e)),
    };
    out.push(bool_claim(
        ctx,
        "gcirc",
        "divisor counts of the affine comarks are circular for (max comark, g)",
        &[],
        ok,
        wit,
    ));
}

#[allow(clippy::too_many_arguments)]
fn element_claims(
    ctx: &Ctx,
    d: &RootDatum,
    zc: &CenterGroup,
    c: &CenterElement,
    profiles: &[ParabolicProfile],
    out: &mut Vec<ClaimRecord>,
) {
    let st = d.simple_type();
    let r = d.rank();
    let g = d.dual_coxeter_number();

    let aut = match diagram_automorphism(d, zc, c) {
        Ok(a) => a,
        Err(e) => {
            out.push(bool_claim(
                ctx,
                "aut",
                "the table automorphism passes its validation bundle",
                &[],
                false,
                Some(e),
            ));
            return;
        }
    };
    let op = orbit_data(d, &aut);
    let lat = lattice_profile(d, &op);
    let alc = alcove_fixed_simplex(d, &op, &lat);
    let e = pairing_degree(&op, &lat);

    let sum_g: i64 = op.orbits.iter().map(|o| o.g_bar).sum();
    out.push(ctx.claim(
        "orbits",
        "orbit integers sum to the dual Coxeter number",
        &[],
        sum_g.to_string(),
        g.to_string(),
        sum_g == g,
        None,
    ));

    out.push(ctx.claim(
        "torsorder",
        "Smith-form torsion of the coinvariants equals the gcd of the orbit integers",
        &[],
        lat.torsion.to_string(),
        op.n0.to_string(),
        lat.torsion == op.n0,
        None,
    ));

    if c.order == 1 && st.is_simply_laced() {
        out.push(ctx.claim(
            "latdet",
            "the coroot Gram determinant equals the center order",
            &[],
            q_str(&lat.det),
            zc.order().to_string(),
            lat.det == q(zc.order()),
            None,
        ));
    }

    let rc_fact: i64 = (1..=op.r_c as i64).product();
    let g_rep_prod: i64 = op.orbits.iter().skip(1).map(|o| o.g_rep).product();
    let closed = q(rc_fact) * q(g_rep_prod) * &lat.det;
    out.push(ctx.claim(
        "alcove",
        "the squared volume ratio has its closed form",
        &[],
        q_str(&alc.ratio_sq),
        q_str(&(&closed * &closed)),
        alc.ratio_sq == &closed * &closed,
        None,
    ));

    let mut n_prod = Z::one();
    for o in &op.orbits {
        n_prod *= Z::from(o.size);
    }
    let lhs_e = Q::from(e.clone() * Z::from(op.n0)).pow(2);
    let rhs_e = &alc.ratio_sq * Q::from(n_prod).pow(2);
    out.push(ctx.claim(
        "evol",
        "the covering degree squared matches the volume route",
        &[],
        q_str(&lhs_e),
        q_str(&rhs_e),
        lhs_e == rhs_e,
        None,
    ));

    if c.order == 1 && r <= 4 {
        let w = brute_weyl_order(d) as i64;
        out.push(ctx.claim(
            "weylorder",
            "the covering degree equals the reflection group order",
            &[],
            q_str(&Q::from(e.clone())),
            w.to_string(),
            Q::from(e.clone()) == q(w),
            None,
        ));
    }

    for p in profiles {
        let alpha = p.alpha;
        let t_ord = zc.tuple_order(&zc.coweight_class_tuple(alpha));
        let (nca, inter) = n_c_alpha(zc, c, alpha);
        let lhs = q(p.n_alpha) / q(nca);
        out.push(ctx.claim(
            "ncalpha",
            "n_alpha/n_{c,alpha} equals the order of the subgroup intersection",
            &[("alpha", alpha.to_string())],
            q_str(&lhs),
            inter.to_string(),
            lhs == q(inter) && t_ord == p.n_alpha,
            if t_ord == p.n_alpha {
                None
            } else {
                Some(format!(
                    "class order {t_ord} differs from the denominator order {}",
                    p.n_alpha
                ))
            },
        ));
    }

    let certs = c_special_roots(d, c, profiles, &op);
    let structural = profiles.iter().filter(|p| p.special).count();
    let expected = expected_c_special_count(st, c, aut.anchor, structural);
    out.push(ctx.claim(
        "cspecial",
        "the number of c-special nodes matches the census",
        &[],
        (certs.len() as i64).to_string(),
        expected.to_string(),
        certs.len() as i64 == expected,
        None,
    ));

    let n_max = op.orbits.iter().map(|o| o.g_bar).max().unwrap();

    if c.order > 1 {
        let vals: Vec<i64> = op.orbits.iter().map(|o| o.g_bar / op.n0).collect();
        let top = *vals.iter().max().unwrap();
        let counts: Vec<i64> = (1..=top)
            .map(|k| vals.iter().filter(|&&x| x % k == 0).count() as i64)
            .collect();
        assert_eq!(g % op.n0, 0);
        let (ok, wit) = match is_circularly_symmetric(&counts, top, g / op.n0) {
            Ok(CircularCheck::Symmetric) => (true, None),
            Ok(CircularCheck::FailsAt { x, y }) => {
                (false, Some(format!("fails at denominators {x}, {y}")))
            }
            Err(e) => (false, Some(e)),
        };
        out.push(bool_claim(
            ctx,
            "ccirc",
            "divisor counts of the normalized orbit integers are circular",
            &[],
            ok,
            wit,
        ));
    }

    for cert in &certs {
        let alpha = cert.alpha;
        let p = &profiles[alpha];
        let pa = [("alpha", alpha.to_string())];

        out.push(ctx.claim(
            "cthm",
            "d1/o = r_c+1",
            &pa,
            format!("{}/{}", cert.d1, cert.o),
            cert.rc_plus_1.to_string(),
            cert.d1 == cert.o * cert.rc_plus_1,
            None,
        ));

        let non_a = p
            .levi_components
            .iter()
            .filter(|(_, t)| t.family() != Family::A)
            .count() as i64;
        out.push(ctx.claim(
            "cthmlevi",
            "the complement of a c-special node is a union of type-A chains",
            &pa,
            non_a.to_string(),
            "0".to_string(),
            non_a == 0,
            None,
        ));

        let rhs_n0 = q(cert.o * p.g_alpha) / q(p.h_alpha);
        out.push(ctx.claim(
            "n0formula",
            "n_0 = o(c) g_alpha/h_alpha",
            &pa,
            op.n0.to_string(),
            q_str(&rhs_n0),
            q(op.n0) == rhs_n0,
            None,
        ));

        let rhs_h = q(n_max) / q(op.n0);
        out.push(ctx.claim(
            "hN",
            "h_alpha = (max orbit integer)/n_0",
            &pa,
            p.h_alpha.to_string(),
            q_str(&rhs_h),
            q(p.h_alpha) == rhs_h,
            None,
        ));

        for l in &p.levels {
            let count = op
                .orbits
                .iter()
                .filter(|o| o.g_bar == l.k * op.n0)
                .count() as i64;
            let rhs_i = q(l.i_val) / q(cert.o);
            out.push(ctx.claim(
                "icounts",
                "the orbit multiplicity at level k is i(alpha,k)/o",
                &[("alpha", alpha.to_string()), ("k", l.k.to_string())],
                count.to_string(),
                q_str(&rhs_i),
                q(count) == rhs_i,
                None,
            ));
        }

        let (ok, lhs_cm, wit) = match cohomology_dimensions(p, c, -1, 0) {
            Ok(dims) => (
                dims.total == op.r_c as i64 + 2,
                dims.total.to_string(),
                None,
            ),
            Err(e) => (false, "0".into(), Some(e)),
        };
        out.push(ctx.claim(
            "cmindim",
            "the minimal admissible twisted dimension is r_c+2",
            &pa,
            lhs_cm,
            (op.r_c as i64 + 2).to_string(),
            ok,
            wit,
        ));

        let wps = wps_profile(d, zc, c, cert, &op);

        out.push(ctx.claim(
            "weightcount",
            "the number of weights is r_c+1",
            &pa,
            wps.weights.len().to_string(),
            (op.r_c + 1).to_string(),
            wps.weights.len() == op.r_c + 1,
            None,
        ));

        let sum_w: i64 = wps.weights.iter().sum();
        let rhs_sum = q(wps.weight_gcd * g) / q(op.n0);
        out.push(ctx.claim(
            "weightsum",
            "the weights sum to n_{c,alpha} g/n_0",
            &pa,
            sum_w.to_string(),
            q_str(&rhs_sum),
            q(sum_w) == rhs_sum,
            None,
        ));

        let (nca, _) = n_c_alpha(zc, c, alpha);
        out.push(ctx.claim(
            "weightgcd",
            "the weight gcd is n_{c,alpha}",
            &pa,
            wps.weight_gcd.to_string(),
            nca.to_string(),
            wps.weight_gcd == nca,
            None,
        ));

        let dc = degree_consistency(d, &op, &lat, Some(&wps));
        let wit = dc
            .wps_err
            .clone()
            .or_else(|| dc.wps_route.as_ref().map(|v| format!("weight route {}", q_str(v))));
        out.push(ctx.claim(
            "cor55",
            "the weight-space intersection number matches the determinant route",
            &pa,
            dc.wps_route.as_ref().map(q_str).unwrap_or_else(|| "none".into()),
            q_str(&dc.det_route),
            dc.wps_route.as_ref() == Some(&dc.det_route),
            if dc.wps_route.as_ref() == Some(&dc.det_route) { None } else { wit },
        ));

        match singular_locus_structure(d, p, &wps, 1) {
            Ok(s) => out.push(ctx.claim(
                "singcount",
                "every weight is divisible by n_{c,alpha} at level 1",
                &pa,
                s.weight_div_count.to_string(),
                (op.r_c + 1).to_string(),
                s.weight_div_count == op.r_c as i64 + 1,
                None,
            )),
            Err(e) => out.push(bool_claim(ctx, "singcount", "level-1 stratum", &pa, false, Some(e))),
        }

        if c.order == 1 {
            for k in 2..=p.h_alpha {
                let (ok, wit) = match singular_locus_structure(d, p, &wps, k) {
                    Ok(s) => (
                        s.away_all_a,
                        if s.away_all_a {
                            None
                        } else {
                            Some("a component away from the lowered root is not of type A".into())
                        },
                    ),
                    Err(e) => (false, Some(e)),
                };
                out.push(bool_claim(
                    ctx,
                    "singa",
                    "components away from the lowered level root are of type A",
                    &[("alpha", alpha.to_string()), ("k", k.to_string())],
                    ok,
                    wit,
                ));
            }
        }
    }

    let dc = degree_consistency(d, &op, &lat, None);
    out.push(ctx.claim(
        "moddegree",
        "the quadratic-power route equals the determinant-bundle route",
        &[],
        q_str(&dc.lhs),
        q_str(&dc.rhs),
        dc.pass,
        None,
    ));
}

fn type_claims(st: SimpleType, cfg: &SweepConfig) -> Vec<ClaimRecord> {
    let d = build_root_system(st).expect("swept type must construct");
    let zc = center_group(&d);
    let profiles: Vec<ParabolicProfile> =
        (0..d.rank()).map(|a| parabolic_profile(&d, a)).collect();
    let indices: Vec<usize> = match cfg.center_policy {
        CenterPolicy::TrivialOnly => vec![0],
        CenterPolicy::AllElements => (0..zc.elements.len()).collect(),
        CenterPolicy::Explicit(i) => vec![i],
    };
    let mut out = Vec::new();
    for (pos, &idx) in indices.iter().enumerate() {
        let c = zc.element(idx).expect("center index was validated");
        let ctx = Ctx::new(st, idx, zc.order());
        if pos == 0 {
            out.push(looform_claim(&ctx, &d, cfg.corrupt_comark));
        }
        if idx == 0 {
            type_level_claims(&ctx, &d, &profiles, &mut out);
        }
        element_claims(&ctx, &d, &zc, c, &profiles, &mut out);
    }
    out
}

fn panic_message(payload: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "non-string panic payload".to_string()
    }
}

fn guarded_type_claims(st: SimpleType, cfg: &SweepConfig) -> Vec<ClaimRecord> {
    catch_unwind(AssertUnwindSafe(|| type_claims(st, cfg))).unwrap_or_else(|p| {
        let ctx = Ctx::new(st, 0, 0);
        vec![bool_claim(
            &ctx,
            "internal",
            "construction and claim evaluation complete without internal errors",
            &[],
            false,
            Some(panic_message(p)),
        )]
    })
}

/// Evaluates the claim catalog over the configured sweep. Output is
/// independent of the worker count; fail-fast runs sequentially and truncates
/// at the first failing claim.
pub fn run_verification(cfg: &SweepConfig) -> Result<VerificationReport, String> {
    if let CenterPolicy::Explicit(i) = cfg.center_policy {
        for &st in &cfg.types {
            let d = build_root_system(st)?;
            let n = center_group(&d).elements.len();
            if i >= n {
                return Err(format!(
                    "center index {i} out of range: {} has {n} central elements",
                    st
                ));
            }
        }
    }

    if cfg.fail_fast {
        let mut records = Vec::new();
        let mut halted = None;
        'types: for &st in &cfg.types {
            for rec in guarded_type_claims(st, cfg) {
                let bad = !rec.pass;
                let id = rec.id.clone();
                records.push(rec);
                if bad {
                    halted = Some(id);
                    break 'types;
                }
            }
        }
        return Ok(VerificationReport::new(records, halted));
    }

    let jobs = cfg.jobs.max(1).min(cfg.types.len().max(1));
    let slots: Vec<Mutex<Option<Vec<ClaimRecord>>>> =
        cfg.types.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= cfg.types.len() {
                    break;
                }
                let recs = guarded_type_claims(cfg.types[i], cfg);
                *slots[i].lock().unwrap() = Some(recs);
            });
        }
    });
    let records: Vec<ClaimRecord> = slots
        .into_iter()
        .flat_map(|m| m.into_inner().unwrap().expect("every slot was filled"))
        .collect();
    Ok(VerificationReport::new(records, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmat::qq;

    fn datum(f: Family, r: usize) -> RootDatum {
        build_root_system(SimpleType::new(f, r).unwrap()).unwrap()
    }

    fn setup(
        f: Family,
        r: usize,
        idx: usize,
    ) -> (RootDatum, CenterGroup, Vec<ParabolicProfile>, OrbitProfile, LatticeProfile) {
        let d = datum(f, r);
        let zc = center_group(&d);
        let profiles: Vec<ParabolicProfile> =
            (0..d.rank()).map(|a| parabolic_profile(&d, a)).collect();
        let c = zc.element(idx).unwrap().clone();
        let aut = diagram_automorphism(&d, &zc, &c).unwrap();
        let op = orbit_data(&d, &aut);
        let lat = lattice_profile(&d, &op);
        (d, zc, profiles, op, lat)
    }

    #[test]
    fn e7_adjoint_weights() {
        let (d, zc, profiles, op, _lat) = setup(Family::E, 7, 1);
        let c = zc.element(1).unwrap();
        let certs = c_special_roots(&d, c, &profiles, &op);
        let wps = wps_profile(&d, &zc, c, &certs[0], &op);
        assert_eq!(wps.weights, vec![1, 1, 2, 2, 3]);
        assert_eq!(wps.moduli_weights, vec![1, 1, 2, 2, 3]);
        assert_eq!(wps.weight_gcd, 1);
        assert_eq!(wps.a, -18);
        let dc = degree_consistency(&d, &op, &lat_of(&d, &op), Some(&wps));
        assert!(dc.pass);
        assert_eq!(dc.lhs, q(8748));
        assert_eq!(dc.det_route, q(8748));
        assert_eq!(dc.wps_route, Some(q(8748)));
    }

    fn lat_of(d: &RootDatum, op: &OrbitProfile) -> LatticeProfile {
        lattice_profile(d, op)
    }

    #[test]
    fn e8_weights_and_strata() {
        let (d, zc, profiles, op, lat) = setup(Family::E, 8, 0);
        let c = zc.element(0).unwrap();
        let certs = c_special_roots(&d, c, &profiles, &op);
        assert_eq!(certs.len(), 1);
        let wps = wps_profile(&d, &zc, c, &certs[0], &op);
        assert_eq!(wps.weights, vec![1, 2, 2, 3, 3, 4, 4, 5, 6]);
        assert_eq!(wps.a, -60);
        let p = &profiles[certs[0].alpha];
        let s2 = singular_locus_structure(&d, p, &wps, 2).unwrap();
        assert_eq!(s2.weight_div_count, 5);
        assert!(s2.away_all_a);
        let s4 = singular_locus_structure(&d, p, &wps, 4).unwrap();
        assert_eq!(s4.weight_div_count, 2);
        let s1 = singular_locus_structure(&d, p, &wps, 1).unwrap();
        assert_eq!(s1.weight_div_count, op.r_c as i64 + 1);
        let dc = degree_consistency(&d, &op, &lat, Some(&wps));
        assert!(dc.pass);
    }

    #[test]
    fn a1_degree_routes() {
        // Simply connected: both routes give 4.
        let (d, _zc, _profiles, op, lat) = setup(Family::A, 1, 0);
        let dc = degree_consistency(&d, &op, &lat, None);
        assert!(dc.pass);
        assert_eq!(dc.lhs, q(4));
        assert_eq!(dc.det_route, q(-4));
        // Order-2 quotient: e = 1 and both routes give 1.
        let (d, _zc, _profiles, op, lat) = setup(Family::A, 1, 1);
        let dc = degree_consistency(&d, &op, &lat, None);
        assert!(dc.pass);
        assert_eq!(dc.e, Z::one());
        assert_eq!(dc.lhs, q(1));
        assert_eq!(dc.rhs, q(1));
    }

    #[test]
    fn b2_hand_degree() {
        let (d, zc, profiles, op, lat) = setup(Family::B, 2, 0);
        let c = zc.element(0).unwrap();
        let certs = c_special_roots(&d, c, &profiles, &op);
        assert_eq!(certs.len(), 1);
        assert_eq!(certs[0].alpha, 0);
        let wps = wps_profile(&d, &zc, c, &certs[0], &op);
        assert_eq!(wps.weights, vec![2, 2, 2]);
        assert_eq!(wps.moduli_weights, vec![1, 1, 1]);
        assert_eq!(wps.a, -12);
        let dc = degree_consistency(&d, &op, &lat, Some(&wps));
        assert!(dc.pass);
        assert_eq!(dc.e, Z::from(8));
        assert_eq!(dc.lhs, q(36));
        assert_eq!(dc.wps_route, Some(q(36)));
    }

    #[test]
    fn exterior_oracle_matches() {
        let j = vec![vec![q(2), q(1)], vec![q(1), q(2)]];
        assert_eq!(quadratic_top_power(&j), q(6));
        assert_eq!(exterior_top_power(&j), q(6));
        let j = vec![
            vec![q(1), q(2), q(0)],
            vec![q(2), q(-1), qq(1, 2)],
            vec![q(0), qq(1, 2), q(3)],
        ];
        assert_eq!(exterior_top_power(&j), quadratic_top_power(&j));
        assert_eq!(exterior_top_power(&[]), q(1));
    }

    #[test]
    fn cohomology_spot_values() {
        let d = datum(Family::E, 8);
        let zc = center_group(&d);
        let c = zc.element(0).unwrap();
        let p = parabolic_profile(&d, 3);
        let dims = cohomology_dimensions(&p, c, -1, 0).unwrap();
        assert_eq!(dims.per_level, vec![1, 2, 2, 2, 1, 1]);
        assert_eq!(dims.total, 10);
        assert!(cohomology_dimensions(&p, c, 1, 0).is_err());
        assert!(cohomology_dimensions(&p, c, -1, -1).is_err());
        // ad E_7 at the c-special node: degree -1 is admissible, -2 is not.
        let d = datum(Family::E, 7);
        let zc = center_group(&d);
        let c = zc.element(1).unwrap();
        let p = parabolic_profile(&d, 4);
        let dims = cohomology_dimensions(&p, c, -1, 0).unwrap();
        assert_eq!(dims.total, 1 + p.d1 / 2);
        let err = cohomology_dimensions(&p, c, -2, 0).unwrap_err();
        assert!(err.contains("not admissible"));
    }

    #[test]
    fn minimality_all_sc() {
        for (f, r) in [
            (Family::A, 4),
            (Family::B, 3),
            (Family::C, 3),
            (Family::D, 4),
            (Family::G, 2),
            (Family::F, 4),
        ] {
            let d = datum(f, r);
            let profiles: Vec<ParabolicProfile> =
                (0..d.rank()).map(|a| parabolic_profile(&d, a)).collect();
            let scan = minimality_scan(&d, &profiles);
            assert!(scan.pass, "{f:?}{r}");
            assert_eq!(scan.min_total, d.rank() as i64 + 2);
        }
    }

    #[test]
    fn small_sweep_passes() {
        let cfg = SweepConfig {
            types: vec![
                SimpleType::new(Family::A, 2).unwrap(),
                SimpleType::new(Family::B, 2).unwrap(),
                SimpleType::new(Family::G, 2).unwrap(),
            ],
            center_policy: CenterPolicy::AllElements,
            jobs: 2,
            fail_fast: false,
            corrupt_comark: false,
        };
        let rep = run_verification(&cfg).unwrap();
        assert!(rep.all_pass(), "{}", rep.to_text());
        assert!(rep.total > 50);
    }

    #[test]
    fn corrupted_comark_fails_first() {
        let cfg = SweepConfig {
            types: vec![SimpleType::new(Family::A, 2).unwrap()],
            center_policy: CenterPolicy::TrivialOnly,
            jobs: 1,
            fail_fast: true,
            corrupt_comark: true,
        };
        let rep = run_verification(&cfg).unwrap();
        assert!(!rep.all_pass());
        assert_eq!(rep.records.len(), 1);
        assert!(rep.records[0].id.starts_with("looform/"));
        assert_eq!(rep.halted_at.as_deref(), Some("looform/A2-sc"));
    }

    #[test]
    fn explicit_center_bounds() {
        let cfg = SweepConfig {
            types: vec![SimpleType::new(Family::E, 8).unwrap()],
            center_policy: CenterPolicy::Explicit(1),
            jobs: 1,
            fail_fast: false,
            corrupt_comark: false,
        };
        assert!(run_verification(&cfg).is_err());
    }

    #[test]
    fn jobs_do_not_change_output() {
        let mk = |jobs| {
            let cfg = SweepConfig {
                types: SweepConfig::default_types(4),
                center_policy: CenterPolicy::AllElements,
                jobs,
                fail_fast: false,
                corrupt_comark: false,
            };
            run_verification(&cfg).unwrap().to_json()
        };
        assert_eq!(mk(1), mk(3));
    }
}
