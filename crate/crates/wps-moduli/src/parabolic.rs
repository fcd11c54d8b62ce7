//! Maximal-parabolic combinatorics per simple root alpha: the coweight-ray
//! generator zeta_alpha, the level sets S(alpha,k) with extreme roots, the
//! integer sequences i(alpha,k) and d_k(alpha), and the divisibility
//! subsystems R(alpha,k).

use crate::ratmat::{q, Q, Z};
use crate::rootsys::{classify_components, RootDatum, SimpleType};
use num_integer::Integer;
use num_traits::{One, Signed};
use std::collections::{BTreeMap, BTreeSet};

/// One graded level S(alpha,k) of the positive side of R.
#[derive(Clone, Debug)]
pub struct LevelData {
    pub k: i64,
    /// c(alpha,k) = |S(alpha,k)|.
    pub size: i64,
    /// Lowest root of the level, simple-root coordinates.
    pub sigma: Vec<i64>,
    /// Highest root of the level.
    pub lambda: Vec<i64>,
    /// Coefficient of alpha^vee in lambda^vee; equals k d_alpha / d_lambda.
    pub kprime: i64,
    /// i(alpha,k) = k n_alpha c(alpha,k) / m_alpha, always a positive integer.
    pub i_val: i64,
}

/// All integer invariants of the maximal parabolic attached to alpha.
#[derive(Clone, Debug)]
pub struct ParabolicProfile {
    pub alpha: usize,
    /// Connected components of the diagram minus alpha, with their types.
    pub levi_components: Vec<(Vec<usize>, SimpleType)>,
    /// zeta_alpha = n_alpha varpi_alpha^vee, integer simple-coroot coordinates.
    pub zeta: Vec<i64>,
    pub n_alpha: i64,
    /// m_alpha = varpi_alpha(zeta_alpha).
    pub m_alpha: i64,
    /// h_alpha = mark of alpha (top level index).
    pub h_alpha: i64,
    /// g_alpha = comark of alpha.
    pub g_alpha: i64,
    /// Levels k = 1..=h_alpha in order.
    pub levels: Vec<LevelData>,
    /// d_k(alpha) = sum of i(alpha,x) over multiples x of k, k = 1..=h_alpha.
    pub d_seq: Vec<i64>,
    pub d1: i64,
    /// Whether alpha is special: the diagram minus alpha is a disjoint union
    /// of A-type chains, alpha meets each chain at an end, and alpha is long.
    pub special: bool,
}

fn euler_phi(n: i64) -> i64 {
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

/// Dominance scan: the unique element m with b - m componentwise >= 0 for all
/// b in the slice. Panics if no element dominates from below.
fn lowest_by_dominance(set: &[Vec<i64>]) -> Vec<i64> {
    set.iter()
        .find(|m| {
            set.iter()
                .all(|b| m.iter().zip(b.iter()).all(|(&mi, &bi)| bi >= mi))
        })
        .expect("level must have a unique lowest root")
        .clone()
}

fn highest_by_dominance(set: &[Vec<i64>]) -> Vec<i64> {
    set.iter()
        .find(|m| {
            set.iter()
                .all(|b| m.iter().zip(b.iter()).all(|(&mi, &bi)| mi >= bi))
        })
        .expect("level must have a unique highest root")
        .clone()
}

/// Sub-Cartan matrix on a node subset, in the subset's own indexing.
fn sub_cartan(d: &RootDatum, nodes: &[usize]) -> Vec<Vec<i64>> {
    nodes
        .iter()
        .map(|&i| nodes.iter().map(|&j| d.cartan()[i][j]).collect())
        .collect()
}

/// Three-clause test: every component of the diagram minus alpha is an
/// A-chain, alpha attaches to each at an end, and alpha is long.
pub fn is_special_root(d: &RootDatum, alpha: usize) -> bool {
    let r = d.rank();
    let long = {
        let mut e = vec![0i64; r];
        e[alpha] = 1;
        d.root_half_length(&e) == Q::one()
    };
    if !long {
        return false;
    }
    let others: Vec<usize> = (0..r).filter(|&i| i != alpha).collect();
    let comps = match classify_components(&sub_cartan(d, &others)) {
        Ok(c) => c,
        Err(_) => return false,
    };
    for (members, t) in &comps {
        if t.family() != crate::rootsys::Family::A {
            return false;
        }
        let attach: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&loc| d.cartan()[others[loc]][alpha] != 0)
            .collect();
        if attach.len() != 1 {
            return false;
        }
        let a0 = attach[0];
        let deg_inside = members
            .iter()
            .filter(|&&loc| loc != a0 && d.cartan()[others[a0]][others[loc]] != 0)
            .count();
        if deg_inside > 1 {
            return false;
        }
    }
    true
}

/// Builds the full parabolic profile for alpha, asserting every identity the
/// construction is supposed to satisfy.
pub fn parabolic_profile(d: &RootDatum, alpha: usize) -> ParabolicProfile {
    let r = d.rank();
    assert!(alpha < r, "alpha out of range");
    let cinv = d.cartan_inv();

    // zeta_alpha: primitive integral point on the ray through varpi_alpha^vee.
    let mut n_alpha_z = Z::one();
    for row in cinv.iter().take(r) {
        n_alpha_z = n_alpha_z.lcm(row[alpha].denom());
    }
    let n_alpha = i64::try_from(&n_alpha_z).expect("n_alpha fits i64");
    let zeta: Vec<i64> = (0..r)
        .map(|k| {
            let v = q(n_alpha) * &cinv[k][alpha];
            assert!(v.is_integer() && v.is_positive(), "zeta must be positive integral");
            i64::try_from(v.numer()).unwrap()
        })
        .collect();
    let m_alpha_q = q(n_alpha) * &cinv[alpha][alpha];
    assert!(m_alpha_q.is_integer(), "m_alpha must be integral");
    let m_alpha = i64::try_from(m_alpha_q.numer()).unwrap();
    // alpha(zeta_alpha) = n_alpha by construction; asserted anyway.
    let alpha_of_zeta: i64 = (0..r).map(|k| d.cartan()[alpha][k] * zeta[k]).sum();
    assert_eq!(alpha_of_zeta, n_alpha);

    let h_alpha = d.marks()[alpha];
    let g_alpha = d.comarks()[alpha];

    // Level sets on the positive side, graded by the alpha-coefficient.
    let mut by_level: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
    for b in d.roots() {
        if b[alpha] > 0 {
            by_level.entry(b[alpha]).or_default().push(b.clone());
        }
    }
    let keys: Vec<i64> = by_level.keys().copied().collect();
    assert_eq!(
        keys,
        (1..=h_alpha).collect::<Vec<_>>(),
        "levels must be exactly 1..=h_alpha"
    );

    let alpha_e = {
        let mut e = vec![0i64; r];
        e[alpha] = 1;
        e
    };
    let d6_alpha_num = d.root_half_length(&alpha_e);

    let mut levels = Vec::new();
    for k in 1..=h_alpha {
        let set = &by_level[&k];
        let size = set.len() as i64;
        let sigma = lowest_by_dominance(set);
        let lambda = highest_by_dominance(set);
        let kprime_q = q(k) * &d6_alpha_num / d.root_half_length(&lambda);
        assert!(kprime_q.is_integer(), "kprime must be integral");
        let kprime = i64::try_from(kprime_q.numer()).unwrap();
        assert_eq!(
            kprime,
            d.coroot_coords(&lambda)[alpha],
            "kprime must match the alpha^vee coefficient of lambda^vee"
        );
        let i_q = q(k) * q(n_alpha) * q(size) / q(m_alpha);
        assert!(
            i_q.is_integer() && i_q.is_positive(),
            "i(alpha,k) must be a positive integer"
        );
        let i_val = i64::try_from(i_q.numer()).unwrap();
        levels.push(LevelData {
            k,
            size,
            sigma,
            lambda,
            kprime,
            i_val,
        });
    }

    assert_eq!(levels[0].sigma, alpha_e, "sigma_1 must be alpha");
    assert_eq!(
        &levels[(h_alpha - 1) as usize].lambda,
        d.highest_root(),
        "top lambda must be the highest root"
    );

    let d_seq: Vec<i64> = (1..=h_alpha)
        .map(|k| {
            levels
                .iter()
                .filter(|l| l.k % k == 0)
                .map(|l| l.i_val)
                .sum()
        })
        .collect();
    let d1 = d_seq[0];

    // d_1 three ways: the character route, the Cartan-integer sum, and the
    // highest-coroot route.
    let rho_pair: Q = (0..r).map(|k| cinv[k][alpha].clone()).sum();
    let route_a = q(2) * rho_pair / &cinv[alpha][alpha];
    assert!(route_a.is_integer());
    assert_eq!(i64::try_from(route_a.numer()).unwrap(), d1);
    let route_b: i64 = d
        .roots()
        .iter()
        .filter(|b| b[alpha] > 0)
        .map(|b| d.pairing_with_simple_coroot(b, alpha))
        .sum();
    assert_eq!(route_b, d1);
    let lambda1_co = d.coroot_coords(&levels[0].lambda);
    let route_c: i64 = lambda1_co.iter().sum::<i64>() + 1;
    assert_eq!(route_c, d1);

    // Global d-identities.
    let phi_sum: i64 = (1..=h_alpha)
        .map(|k| euler_phi(k) * d_seq[(k - 1) as usize])
        .sum();
    assert_eq!(
        q(phi_sum),
        q(h_alpha) * q(d.dual_coxeter_number()) / q(g_alpha),
        "totient-weighted d sum must be h_alpha g / g_alpha"
    );
    assert_eq!(
        q(d1 + d_seq[(h_alpha - 1) as usize]),
        q(2 * d.dual_coxeter_number()) / q(g_alpha),
        "d_1 + d_top must be 2g/g_alpha"
    );
    for l in &levels {
        let rho_l: i64 = d.coroot_coords(&l.lambda).iter().sum();
        assert_eq!(
            q(d1 + d_seq[(l.k - 1) as usize]),
            q(2) / q(l.kprime) * q(rho_l + 1),
            "level identity for d_1 + d_k failed"
        );
    }

    // Moment identities feeding i(alpha,k): first and second level moments.
    let m1: i64 = levels.iter().map(|l| l.k * l.size).sum();
    let m1_expected = q(2) * (0..r).map(|k| cinv[k][alpha].clone()).sum::<Q>();
    assert_eq!(q(m1), m1_expected, "first moment must be 2 rho(varpi^vee)");
    let m2: i64 = levels.iter().map(|l| l.k * l.k * l.size).sum();
    let m2_expected = q(d.dual_coxeter_number()) * &cinv[alpha][alpha] * q(h_alpha) / q(g_alpha);
    assert_eq!(q(m2), m2_expected, "second moment must be g (A^-1)_aa h_a/g_a");

    let others: Vec<usize> = (0..r).filter(|&i| i != alpha).collect();
    let levi_components: Vec<(Vec<usize>, SimpleType)> = classify_components(&sub_cartan(d, &others))
        .expect("Levi diagram must classify")
        .into_iter()
        .map(|(members, t)| (members.into_iter().map(|loc| others[loc]).collect(), t))
        .collect();

    let special = is_special_root(d, alpha);

    ParabolicProfile {
        alpha,
        levi_components,
        zeta,
        n_alpha,
        m_alpha,
        h_alpha,
        g_alpha,
        levels,
        d_seq,
        d1,
        special,
    }
}

/// The (k, i(alpha,k), d_k(alpha)) table of the profile.
pub fn dk_sequence(p: &ParabolicProfile) -> Vec<(i64, i64, i64)> {
    p.levels
        .iter()
        .zip(p.d_seq.iter())
        .map(|(l, &dk)| (l.k, l.i_val, dk))
        .collect()
}

/// The subsystem R(alpha,k) = {beta : k divides the alpha-coefficient}:
/// returns its simple roots (Delta minus alpha, plus -lambda_k) and the
/// component types of its diagram.
pub fn subsystem_r_alpha_k(
    d: &RootDatum,
    p: &ParabolicProfile,
    k: i64,
) -> Result<(Vec<Vec<i64>>, Vec<(Vec<usize>, SimpleType)>), String> {
    if !(1..=p.h_alpha).contains(&k) {
        return Err(format!("k = {k} out of range 1..={}", p.h_alpha));
    }
    let r = d.rank();
    let mut simples: Vec<Vec<i64>> = Vec::new();
    for i in 0..r {
        if i != p.alpha {
            let mut e = vec![0i64; r];
            e[i] = 1;
            simples.push(e);
        }
    }
    let lambda = &p.levels[(k - 1) as usize].lambda;
    simples.push(lambda.iter().map(|&x| -x).collect());

    // Closure of the simple set under its own reflections.
    let mut set: BTreeSet<Vec<i64>> = simples.iter().cloned().collect();
    loop {
        let mut fresh = Vec::new();
        for b in &set {
            for s in &simples {
                let n = d.root_pairing(b, s);
                if n != 0 {
                    let nb: Vec<i64> = (0..r).map(|i| b[i] - n * s[i]).collect();
                    if nb.iter().any(|&x| x != 0) && !set.contains(&nb) {
                        fresh.push(nb);
                    }
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        set.extend(fresh);
    }

    let expected: BTreeSet<Vec<i64>> = d
        .roots()
        .iter()
        .filter(|b| b[p.alpha].rem_euclid(k) == 0)
        .cloned()
        .collect();
    if set != expected {
        return Err("closure of the candidate simple set missed the divisibility subsystem".into());
    }

    let n = simples.len();
    let sub_a: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| d.root_pairing(&simples[i], &simples[j])).collect())
        .collect();
    let comps = classify_components(&sub_a)?;
    Ok((simples, comps))
}

/// For special alpha: the Levi semisimple part is a product of SL factors;
/// returns the factor sizes n_i = |component| + 1 and their lcm, which must
/// equal m_alpha.
pub fn levi_special_structure(p: &ParabolicProfile) -> Result<(Vec<i64>, i64), String> {
    if !p.special {
        return Err(format!("node {} is not special", p.alpha));
    }
    let mut sizes = Vec::new();
    let mut m = 1i64;
    for (members, t) in &p.levi_components {
        assert_eq!(t.family(), crate::rootsys::Family::A);
        let ni = members.len() as i64 + 1;
        m = m.lcm(&ni);
        sizes.push(ni);
    }
    if m != p.m_alpha {
        return Err(format!(
            "lcm of SL factor sizes is {m}, but m_alpha = {}",
            p.m_alpha
        ));
    }
    Ok((sizes, m))
}

/// Checks the extreme-root relations on every level: the parabolic longest
/// element carries sigma_k to lambda_k; the dual level-1 highest coroot is
/// the coroot of lambda_1; and sigma_k = k lambda_1 - tau(lambda_k) + k alpha
/// with tau the diagram permutation induced on Delta minus alpha.
pub fn verify_lambda_props(d: &RootDatum, p: &ParabolicProfile) -> Result<(), String> {
    let r = d.rank();
    let j_set: Vec<usize> = (0..r).filter(|&i| i != p.alpha).collect();
    let word = d.w0prime_word(&j_set);
    for l in &p.levels {
        let sigma_q: Vec<Q> = l.sigma.iter().map(|&x| q(x)).collect();
        let image = d.apply_word_root_side(&word, &sigma_q);
        let lambda_q: Vec<Q> = l.lambda.iter().map(|&x| q(x)).collect();
        if image != lambda_q {
            return Err(format!(
                "w0' does not carry sigma_{} to lambda_{} at alpha = {}",
                l.k, l.k, p.alpha
            ));
        }
    }

    // Dual route to lambda_1: grade coroots by the alpha^vee coefficient and
    // take the dominance-highest coroot on level 1.
    let level1_coroots: Vec<Vec<i64>> = d
        .roots()
        .iter()
        .map(|b| d.coroot_coords(b))
        .filter(|z| z[p.alpha] == 1)
        .collect();
    let top = highest_by_dominance(&level1_coroots);
    if top != d.coroot_coords(&p.levels[0].lambda) {
        return Err(format!(
            "highest level-1 coroot is not the coroot of lambda_1 at alpha = {}",
            p.alpha
        ));
    }

    let tau = d.minus_w0prime_permutation(&j_set);
    let lambda1 = &p.levels[0].lambda;
    for l in &p.levels {
        let mut tau_lambda = vec![0i64; r];
        for i in 0..r {
            let target = if i == p.alpha { i } else { tau[&i] };
            tau_lambda[target] += l.lambda[i];
        }
        let derived: Vec<i64> = (0..r)
            .map(|i| {
                l.k * lambda1[i] - tau_lambda[i] + if i == p.alpha { l.k } else { 0 }
            })
            .collect();
        if derived != l.sigma {
            return Err(format!(
                "sigma_{} does not match k lambda_1 - tau(lambda_k) + k alpha at alpha = {}",
                l.k, p.alpha
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, Family};

    fn datum(f: Family, r: usize) -> RootDatum {
        build_root_system(SimpleType::new(f, r).unwrap()).unwrap()
    }

    #[test]
    fn e8_special_node_sequences() {
        let d = datum(Family::E, 8);
        let special: Vec<usize> = (0..8).filter(|&a| is_special_root(&d, a)).collect();
        assert_eq!(special, vec![3], "E_8 special node is the trivalent one");
        let p = parabolic_profile(&d, 3);
        assert_eq!(p.h_alpha, 6);
        assert_eq!(p.d_seq, vec![9, 5, 3, 2, 1, 1]);
        assert_eq!(
            dk_sequence(&p)
                .iter()
                .map(|&(_, i, _)| i)
                .collect::<Vec<_>>(),
            vec![1, 2, 2, 2, 1, 1]
        );
        assert_eq!(p.d1 + p.d_seq[5], 10);
        assert_eq!(p.d1, 9);
        let (sizes, m) = levi_special_structure(&p).unwrap();
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![2, 3, 5]);
        assert_eq!(m, 30);
    }

    #[test]
    fn g2_profile() {
        let d = datum(Family::G, 2);
        assert!(!is_special_root(&d, 0));
        assert!(is_special_root(&d, 1));
        let p = parabolic_profile(&d, 1);
        assert_eq!(p.n_alpha, 1);
        assert_eq!(p.m_alpha, 2);
        assert_eq!(p.h_alpha, 2);
        assert_eq!(p.d_seq, vec![3, 1]);
        assert_eq!(
            dk_sequence(&p).iter().map(|&(_, i, _)| i).collect::<Vec<_>>(),
            vec![2, 1]
        );
        let (sizes, m) = levi_special_structure(&p).unwrap();
        assert_eq!(sizes, vec![2]);
        assert_eq!(m, 2);
    }

    #[test]
    fn n_alpha_census() {
        // A_{n-1} datum: node k (1-based) has n_alpha = n/gcd(k,n).
        let d = datum(Family::A, 5);
        for k in 1..=5usize {
            let p = parabolic_profile(&d, k - 1);
            assert_eq!(p.n_alpha, 6 / (k as i64).gcd(&6));
        }
        // C_n long simple root: n_alpha = 2.
        for n in 2..=5 {
            let d = datum(Family::C, n);
            let p = parabolic_profile(&d, n - 1);
            assert_eq!(p.n_alpha, 2);
        }
        // Trivial-center types: n_alpha = 1 everywhere.
        for (f, r) in [(Family::E, 8), (Family::F, 4), (Family::G, 2)] {
            let d = datum(f, r);
            for a in 0..r {
                assert_eq!(parabolic_profile(&d, a).n_alpha, 1);
            }
        }
    }

    #[test]
    fn special_census() {
        // A_n: every node. B/C/F/G and D/E (n >= 4): exactly one.
        for r in 1..=6 {
            let d = datum(Family::A, r);
            assert!((0..r).all(|a| is_special_root(&d, a)));
        }
        let expectations = [
            (Family::B, 4, vec![2]),
            (Family::C, 4, vec![3]),
            (Family::D, 5, vec![2]),
            (Family::E, 6, vec![3]),
            (Family::E, 7, vec![3]),
            (Family::F, 4, vec![1]),
            (Family::G, 2, vec![1]),
        ];
        for (f, r, expect) in expectations {
            let d = datum(f, r);
            let special: Vec<usize> = (0..r).filter(|&a| is_special_root(&d, a)).collect();
            assert_eq!(special, expect, "{f:?}{r}");
        }
        // D_3 carries A_3 data: all three nodes special.
        let d3 = datum(Family::D, 3);
        assert!((0..3).all(|a| is_special_root(&d3, a)));
    }

    #[test]
    fn d1_dichotomy() {
        for (f, r) in [
            (Family::A, 4),
            (Family::B, 3),
            (Family::C, 3),
            (Family::D, 4),
            (Family::F, 4),
            (Family::G, 2),
            (Family::E, 6),
        ] {
            let d = datum(f, r);
            for a in 0..r {
                let p = parabolic_profile(&d, a);
                if p.special {
                    assert_eq!(p.d1, r as i64 + 1, "{f:?}{r} node {a}");
                } else {
                    assert!(p.d1 >= r as i64 + 2, "{f:?}{r} node {a}");
                }
            }
        }
    }

    #[test]
    fn lambda_props_sweep() {
        for (f, r) in [
            (Family::A, 3),
            (Family::B, 3),
            (Family::C, 3),
            (Family::D, 4),
            (Family::G, 2),
            (Family::F, 4),
        ] {
            let d = datum(f, r);
            for a in 0..r {
                let p = parabolic_profile(&d, a);
                verify_lambda_props(&d, &p).unwrap();
            }
        }
    }

    #[test]
    fn r_alpha_k_types() {
        let d = datum(Family::E, 8);
        let p = parabolic_profile(&d, 3);
        // k = 1 gives back all of R.
        let (_, comps) = subsystem_r_alpha_k(&d, &p, 1).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].1, SimpleType::new(Family::E, 8).unwrap());
        // k = 2: E_7 x A_1.
        let (_, comps) = subsystem_r_alpha_k(&d, &p, 2).unwrap();
        let mut types: Vec<String> = comps.iter().map(|(_, t)| t.to_string()).collect();
        types.sort();
        assert_eq!(types, vec!["A1", "E7"]);
        // k = 4: contains an A_7 component.
        let (_, comps) = subsystem_r_alpha_k(&d, &p, 4).unwrap();
        assert!(comps
            .iter()
            .any(|(_, t)| *t == SimpleType::new(Family::A, 7).unwrap()));
        assert!(subsystem_r_alpha_k(&d, &p, 7).is_err());
    }

    #[test]
    fn zeta_and_moments_b2() {
        let d = datum(Family::B, 2);
        // Long node: A^{-1} column 0 is (1, 1/2), so zeta = (2, 1).
        let p = parabolic_profile(&d, 0);
        assert_eq!(p.n_alpha, 2);
        assert_eq!(p.zeta, vec![2, 1]);
        assert_eq!(p.m_alpha, 2);
        assert!(p.special);
        assert_eq!(p.d1, 3);
        // Short node: column 1 is (1, 1).
        let p1 = parabolic_profile(&d, 1);
        assert_eq!(p1.n_alpha, 1);
        assert_eq!(p1.zeta, vec![1, 1]);
        assert_eq!(p1.m_alpha, 1);
        assert_eq!(p1.d1, 4);
    }
}
