//! Simple root systems of type A..G over exact rational arithmetic.
//!
//! Roots are stored in the simple-root basis, where every root has integer
//! coordinates. Coweights are stored in the simple-coroot basis. The invariant
//! form `I_0` is normalized so long roots have squared length 2; it is
//! constructed by scaling the summed form `Q(x) = sum over R of <beta,x>^2`
//! and the closed form is asserted, not assumed.

use crate::ratmat::{self, q, Q, Z};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Dynkin family letter.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn parse(s: &str) -> Result<Family, String> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(format!("unknown family {other:?}; expected one of A,B,C,D,E,F,G")),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A simple type: family letter plus rank, with the rank bounds enforced.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    /// Validates the rank bounds: A >= 1, B >= 2, C >= 2, D >= 3,
    /// E in {6,7,8}, F = 4, G = 2.
    pub fn new(family: Family, rank: usize) -> Result<SimpleType, String> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { family, rank })
        } else {
            Err(format!(
                "construction rejected: rank {rank} out of bounds for family {family} \
                 (A>=1, B>=2, C>=2, D>=3, E in 6..8, F=4, G=2)"
            ))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// D_3 carries A_3 data; callers flag it in reports.
    pub fn is_d3(&self) -> bool {
        self.family == Family::D && self.rank == 3
    }

    /// Number of roots predicted for this type.
    pub fn root_count(&self) -> usize {
        let r = self.rank;
        match self.family {
            Family::A => r * (r + 1),
            Family::B | Family::C => 2 * r * r,
            Family::D => 2 * r * (r - 1),
            Family::E => match r {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Family::F => 48,
            Family::G => 12,
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Cartan matrix `a[i][j] = n(alpha_i, alpha_j) = alpha_i(alpha_j^vee)`,
/// 0-based node indices for Bourbaki nodes alpha_1..alpha_r.
fn cartan_matrix(t: SimpleType) -> Vec<Vec<i64>> {
    let r = t.rank;
    let mut a = vec![vec![0i64; r]; r];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match t.family {
        Family::A => {
            for i in 0..r - 1 {
                link(&mut a, i, i + 1);
            }
        }
        Family::B => {
            for i in 0..r - 2 {
                link(&mut a, i, i + 1);
            }
            a[r - 2][r - 1] = -2;
            a[r - 1][r - 2] = -1;
        }
        Family::C => {
            for i in 0..r - 2 {
                link(&mut a, i, i + 1);
            }
            a[r - 2][r - 1] = -1;
            a[r - 1][r - 2] = -2;
        }
        Family::D => {
            for i in 0..r.saturating_sub(3) {
                link(&mut a, i, i + 1);
            }
            link(&mut a, r - 3, r - 2);
            link(&mut a, r - 3, r - 1);
        }
        Family::E => {
            // Chain alpha_1-alpha_3-alpha_4-...-alpha_r, with alpha_2 on alpha_4.
            link(&mut a, 0, 2);
            for i in 2..r - 1 {
                link(&mut a, i, i + 1);
            }
            link(&mut a, 1, 3);
        }
        Family::F => {
            link(&mut a, 0, 1);
            link(&mut a, 2, 3);
            a[1][2] = -2;
            a[2][1] = -1;
        }
        Family::G => {
            a[0][1] = -1;
            a[1][0] = -3;
        }
    }
    a
}

/// Six times the half squared lengths d_i (long roots have d = 1).
fn d6_vector(t: SimpleType) -> Vec<i64> {
    let r = t.rank;
    match t.family {
        Family::A | Family::D | Family::E => vec![6; r],
        Family::B => {
            let mut v = vec![6; r];
            v[r - 1] = 3;
            v
        }
        Family::C => {
            let mut v = vec![3; r];
            v[r - 1] = 6;
            v
        }
        Family::F => vec![6, 6, 3, 3],
        Family::G => vec![2, 6],
    }
}

/// A complete simple root system with all global invariants, immutable after
/// construction.
pub struct RootDatum {
    stype: SimpleType,
    cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Q>>,
    /// 6 * Gram matrix of the simple roots for the invariant form.
    b6: Vec<Vec<i64>>,
    /// 6 * d_i, where d_i = half squared length of alpha_i (long = 1).
    d6: Vec<i64>,
    roots: Vec<Vec<i64>>,
    positive: Vec<Vec<i64>>,
    highest: Vec<i64>,
    marks: Vec<i64>,
    comarks: Vec<i64>,
    coxeter: i64,
    dual_coxeter: i64,
    /// I_0 on the simple coroot basis.
    i0: Vec<Vec<Q>>,
}

/// Builds the root system for `t`: the set R is the closure of the simple
/// roots under the simple reflections, iterated to a fixpoint.
pub fn build_root_system(t: SimpleType) -> Result<RootDatum, String> {
    RootDatum::new(t)
}

impl RootDatum {
    pub fn new(stype: SimpleType) -> Result<RootDatum, String> {
        let r = stype.rank();
        let cartan = cartan_matrix(stype);
        let d6 = d6_vector(stype);
        let mut b6 = vec![vec![0i64; r]; r];
        for i in 0..r {
            for j in 0..r {
                b6[i][j] = cartan[i][j] * d6[j];
                assert_eq!(
                    cartan[i][j] * d6[j],
                    cartan[j][i] * d6[i],
                    "length vector inconsistent with Cartan matrix"
                );
            }
        }

        // Reflection closure of the simple roots.
        let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
        for i in 0..r {
            let mut e = vec![0i64; r];
            e[i] = 1;
            set.insert(e);
        }
        loop {
            let mut fresh: Vec<Vec<i64>> = Vec::new();
            for b in &set {
                for j in 0..r {
                    let p: i64 = (0..r).map(|i| b[i] * cartan[i][j]).sum();
                    if p != 0 {
                        let mut nb = b.clone();
                        nb[j] -= p;
                        if !set.contains(&nb) {
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
        let mut roots: Vec<Vec<i64>> = set.into_iter().collect();
        roots.sort_by_key(|b| (b.iter().sum::<i64>(), b.clone()));

        let mut positive: Vec<Vec<i64>> = Vec::new();
        for b in &roots {
            let pos = b.iter().all(|&x| x >= 0);
            let neg = b.iter().all(|&x| x <= 0);
            if !(pos || neg) {
                return Err(format!("root {b:?} is not uniformly signed"));
            }
            if pos {
                positive.push(b.clone());
            }
        }
        if positive.len() * 2 != roots.len() {
            return Err("positive roots are not half of R".into());
        }

        let highest = positive
            .iter()
            .max_by_key(|b| (b.iter().sum::<i64>(), (*b).clone()))
            .expect("nonempty root set")
            .clone();
        for b in &positive {
            if (0..r).any(|i| highest[i] < b[i]) {
                return Err("highest root does not dominate some positive root".into());
            }
        }

        let marks = highest.clone();
        let coxeter = 1 + marks.iter().sum::<i64>();

        let d6_of = |b: &[i64]| -> i64 {
            let s: i64 = (0..r)
                .map(|i| (0..r).map(|j| b[i] * b[j] * b6[i][j]).sum::<i64>())
                .sum();
            assert!(s > 0 && s % 2 == 0, "squared length must be a positive even multiple of 1/6");
            s / 2
        };
        assert_eq!(d6_of(&highest), 6, "highest root must be long");

        let coroot_coords = |b: &[i64]| -> Vec<i64> {
            let db = d6_of(b);
            (0..r)
                .map(|i| {
                    let num = b[i] * d6[i];
                    assert_eq!(num % db, 0, "coroot coordinates must be integral");
                    num / db
                })
                .collect()
        };
        let comarks = coroot_coords(&highest);
        let dual_coxeter = 1 + comarks.iter().sum::<i64>();

        // I_0, normalized honestly: scale Q so the highest coroot has length 2.
        let pair_simple = |b: &[i64], j: usize| -> i64 { (0..r).map(|i| b[i] * cartan[i][j]).sum() };
        let mut q_gram = vec![vec![0i64; r]; r];
        let mut q_at: i64 = 0;
        for b in &roots {
            let p: Vec<i64> = (0..r).map(|j| pair_simple(b, j)).collect();
            for i in 0..r {
                for j in 0..r {
                    q_gram[i][j] += p[i] * p[j];
                }
            }
            let at: i64 = (0..r).map(|j| p[j] * comarks[j]).sum();
            q_at += at * at;
        }
        let i0: Vec<Vec<Q>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| Q::new(Z::from(2 * q_gram[i][j]), Z::from(q_at)))
                    .collect()
            })
            .collect();
        // Closed form I0[i][j] = cartan[i][j]/d_i, asserted as a consequence.
        for i in 0..r {
            for j in 0..r {
                assert_eq!(
                    i0[i][j],
                    Q::new(Z::from(6 * cartan[i][j]), Z::from(d6[i])),
                    "I_0 normalization disagrees with the Cartan data"
                );
            }
        }

        let cartan_q: Vec<Vec<Q>> = cartan
            .iter()
            .map(|row| row.iter().map(|&x| q(x)).collect())
            .collect();
        let cartan_inv =
            ratmat::inverse(&cartan_q).ok_or_else(|| "singular Cartan matrix".to_string())?;

        let datum = RootDatum {
            stype,
            cartan,
            cartan_inv,
            b6,
            d6,
            roots,
            positive,
            highest,
            marks,
            comarks,
            coxeter,
            dual_coxeter,
            i0,
        };
        if datum.roots.len() != stype.root_count() {
            return Err(format!(
                "closure produced {} roots, expected {}",
                datum.roots.len(),
                stype.root_count()
            ));
        }
        Ok(datum)
    }

    pub fn simple_type(&self) -> SimpleType {
        self.stype
    }

    pub fn rank(&self) -> usize {
        self.stype.rank()
    }

    pub fn cartan(&self) -> &Vec<Vec<i64>> {
        &self.cartan
    }

    pub fn cartan_inv(&self) -> &Vec<Vec<Q>> {
        &self.cartan_inv
    }

    /// All roots, simple-root integer coordinates, sorted by height then
    /// lexicographically.
    pub fn roots(&self) -> &Vec<Vec<i64>> {
        &self.roots
    }

    pub fn positive_roots(&self) -> &Vec<Vec<i64>> {
        &self.positive
    }

    pub fn highest_root(&self) -> &Vec<i64> {
        &self.highest
    }

    /// Marks h_beta over the simple nodes (the extended node alpha_0 has mark 1).
    pub fn marks(&self) -> &Vec<i64> {
        &self.marks
    }

    /// Comarks g_beta over the simple nodes (alpha_0 has comark 1).
    pub fn comarks(&self) -> &Vec<i64> {
        &self.comarks
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter
    }

    pub fn dual_coxeter_number(&self) -> i64 {
        self.dual_coxeter
    }

    /// I_0 Gram matrix on the simple coroot basis.
    pub fn i0_coroot_gram(&self) -> &Vec<Vec<Q>> {
        &self.i0
    }

    /// Half squared length d_beta of a root (long roots: 1).
    pub fn root_half_length(&self, b: &[i64]) -> Q {
        Q::new(Z::from(self.d6_of_root(b)), Z::from(6))
    }

    fn d6_of_root(&self, b: &[i64]) -> i64 {
        let r = self.rank();
        let s: i64 = (0..r)
            .map(|i| (0..r).map(|j| b[i] * b[j] * self.b6[i][j]).sum::<i64>())
            .sum();
        assert!(s > 0 && s % 2 == 0);
        s / 2
    }

    /// beta(alpha_j^vee) for a root beta in simple-root coordinates.
    pub fn pairing_with_simple_coroot(&self, b: &[i64], j: usize) -> i64 {
        (0..self.rank()).map(|i| b[i] * self.cartan[i][j]).sum()
    }

    /// n(beta, gamma) = beta(gamma^vee) for two roots.
    pub fn root_pairing(&self, b: &[i64], g: &[i64]) -> i64 {
        let r = self.rank();
        let num: i64 = (0..r)
            .map(|i| (0..r).map(|j| b[i] * g[j] * self.b6[i][j]).sum::<i64>())
            .sum();
        let dg = self.d6_of_root(g);
        assert_eq!(num % dg, 0, "Cartan integer must be integral");
        num / dg
    }

    /// Coordinates of beta^vee in the simple-coroot basis (always integral).
    pub fn coroot_coords(&self, b: &[i64]) -> Vec<i64> {
        let db = self.d6_of_root(b);
        (0..self.rank())
            .map(|i| {
                let num = b[i] * self.d6[i];
                assert_eq!(num % db, 0, "coroot coordinates must be integral");
                num / db
            })
            .collect()
    }

    /// s_j acting on a root in simple-root coordinates.
    pub fn simple_reflection_root(&self, b: &[i64], j: usize) -> Vec<i64> {
        let p = self.pairing_with_simple_coroot(b, j);
        let mut nb = b.to_vec();
        nb[j] -= p;
        nb
    }

    /// Fundamental coweight varpi_i^vee in simple-coroot coordinates.
    pub fn fund_coweight(&self, i: usize) -> Vec<Q> {
        (0..self.rank()).map(|k| self.cartan_inv[k][i].clone()).collect()
    }

    /// Fundamental weight varpi_i in simple-root coordinates.
    pub fn fund_weight(&self, i: usize) -> Vec<Q> {
        self.cartan_inv[i].clone()
    }

    /// rho = sum of the fundamental weights, simple-root coordinates.
    pub fn rho(&self) -> Vec<Q> {
        let r = self.rank();
        (0..r)
            .map(|j| (0..r).map(|i| self.cartan_inv[i][j].clone()).sum())
            .collect()
    }

    /// Pairing of a root-side rational vector with alpha_j^vee.
    pub fn pairing_root_side(&self, x: &[Q], j: usize) -> Q {
        (0..self.rank()).map(|i| &x[i] * q(self.cartan[i][j])).sum()
    }

    /// Pairing alpha_j(z) of a simple root with a coweight in coroot coordinates.
    pub fn pairing_coweight_side(&self, z: &[Q], j: usize) -> Q {
        (0..self.rank()).map(|k| q(self.cartan[j][k]) * &z[k]).sum()
    }

    /// Evaluation beta(z): integer root coordinates against coroot coordinates.
    pub fn eval_root_at_coweight(&self, b: &[i64], z: &[Q]) -> Q {
        (0..self.rank())
            .map(|j| q(self.pairing_with_simple_coroot(b, j)) * &z[j])
            .sum()
    }

    /// I_0(x, y) for two coweights in simple-coroot coordinates.
    pub fn i0_pair(&self, x: &[Q], y: &[Q]) -> Q {
        let r = self.rank();
        (0..r)
            .map(|i| (0..r).map(|j| &x[i] * &self.i0[i][j] * &y[j]).sum::<Q>())
            .sum()
    }

    /// Sweeps a root-side vector to the J-antidominant chamber: repeatedly
    /// applies s_j for the smallest j in J with a strictly positive pairing.
    /// Returns the result and the reflection word in application order.
    pub fn make_antidominant_within(&self, j_set: &[usize], x: &[Q]) -> (Vec<Q>, Vec<usize>) {
        let mut y = x.to_vec();
        let mut word = Vec::new();
        loop {
            let mut acted = false;
            for &j in j_set {
                let p = self.pairing_root_side(&y, j);
                if p.is_positive() {
                    y[j] -= p;
                    word.push(j);
                    acted = true;
                    break;
                }
            }
            if !acted {
                return (y, word);
            }
        }
    }

    /// Same sweep for a coweight in simple-coroot coordinates.
    pub fn make_antidominant_within_coweight(
        &self,
        j_set: &[usize],
        z: &[Q],
    ) -> (Vec<Q>, Vec<usize>) {
        let mut y = z.to_vec();
        let mut word = Vec::new();
        loop {
            let mut acted = false;
            for &j in j_set {
                let p = self.pairing_coweight_side(&y, j);
                if p.is_positive() {
                    y[j] -= p;
                    word.push(j);
                    acted = true;
                    break;
                }
            }
            if !acted {
                return (y, word);
            }
        }
    }

    /// Applies a reflection word (in chronological order) to a root-side vector.
    pub fn apply_word_root_side(&self, word: &[usize], x: &[Q]) -> Vec<Q> {
        let mut y = x.to_vec();
        for &j in word {
            let p = self.pairing_root_side(&y, j);
            y[j] -= p;
        }
        y
    }

    /// Reflection word realizing the longest element of the parabolic Weyl
    /// group W(J), obtained by sweeping a J-regular dominant vector.
    pub fn w0prime_word(&self, j_set: &[usize]) -> Vec<usize> {
        let r = self.rank();
        let mut x = vec![Q::zero(); r];
        for &j in j_set {
            for k in 0..r {
                x[k] += self.cartan_inv[j][k].clone();
            }
        }
        let (y, word) = self.make_antidominant_within(j_set, &x);
        for &j in j_set {
            assert_eq!(
                self.pairing_root_side(&y, j),
                -Q::one(),
                "longest-element sweep did not reach the opposite chamber"
            );
        }
        word
    }

    /// The permutation tau of J induced by -w0', where w0' is the longest
    /// element of W(J).
    pub fn minus_w0prime_permutation(&self, j_set: &[usize]) -> BTreeMap<usize, usize> {
        let word = self.w0prime_word(j_set);
        let r = self.rank();
        let mut tau = BTreeMap::new();
        for &j in j_set {
            let mut e = vec![Q::zero(); r];
            e[j] = Q::one();
            let img = self.apply_word_root_side(&word, &e);
            let neg: Vec<Q> = img.into_iter().map(|c| -c).collect();
            let mut target = None;
            for &k in j_set {
                let mut ek = vec![Q::zero(); r];
                ek[k] = Q::one();
                if neg == ek {
                    target = Some(k);
                    break;
                }
            }
            tau.insert(
                j,
                target.expect("-w0' must permute the simple roots of J"),
            );
        }
        let image: BTreeSet<usize> = tau.values().copied().collect();
        assert_eq!(image.len(), j_set.len(), "tau must be a permutation");
        tau
    }

    /// Checks every structural invariant of the datum exactly.
    pub fn validate(&self) -> Result<(), String> {
        let r = self.rank();
        let fail = |m: String| -> Result<(), String> { Err(m) };

        if self.roots.len() != self.stype.root_count() {
            return fail(format!(
                "|R| = {}, expected {}",
                self.roots.len(),
                self.stype.root_count()
            ));
        }

        // Closure stability and central symmetry.
        let set: BTreeSet<Vec<i64>> = self.roots.iter().cloned().collect();
        for b in &self.roots {
            let neg: Vec<i64> = b.iter().map(|&x| -x).collect();
            if !set.contains(&neg) {
                return fail(format!("R is not symmetric: missing -{b:?}"));
            }
            for j in 0..r {
                if !set.contains(&self.simple_reflection_root(b, j)) {
                    return fail(format!("closure unstable at root {b:?}, reflection {j}"));
                }
            }
        }

        // Cartan reconstruction from the generated roots.
        for i in 0..r {
            for j in 0..r {
                let mut e = vec![0i64; r];
                e[i] = 1;
                let mut f = vec![0i64; r];
                f[j] = 1;
                if self.root_pairing(&e, &f) != self.cartan[i][j] {
                    return fail(format!("Cartan reconstruction failed at ({i},{j})"));
                }
            }
        }

        // Extended-node relations: sum of marks (resp. comarks) over the
        // extended diagram kills the highest root (resp. coroot).
        for i in 0..r {
            let mark_sum: i64 = self.marks[i] - self.highest[i];
            if mark_sum != 0 {
                return fail("mark relation broken".into());
            }
            let co = self.coroot_coords(&self.highest);
            if self.comarks[i] != co[i] {
                return fail("comark relation broken".into());
            }
        }
        if self.coxeter != 1 + self.marks.iter().sum::<i64>() {
            return fail("Coxeter number mismatch".into());
        }
        if self.dual_coxeter != 1 + self.comarks.iter().sum::<i64>() {
            return fail("dual Coxeter number mismatch".into());
        }

        // Comark = mark * half-length, and comark divides mark.
        for i in 0..r {
            if q(self.comarks[i]) != q(self.marks[i]) * Q::new(Z::from(self.d6[i]), Z::from(6)) {
                return fail(format!("comark/mark relation broken at node {i}"));
            }
            if self.marks[i] % self.comarks[i] != 0 {
                return fail(format!("comark does not divide mark at node {i}"));
            }
        }

        // Q = 2g * I_0 on the full coroot Gram, and I_0(highest coroot) = 2.
        let pair_simple =
            |b: &Vec<i64>, j: usize| -> i64 { (0..r).map(|i| b[i] * self.cartan[i][j]).sum() };
        for i in 0..r {
            for j in 0..r {
                let qij: i64 = self
                    .roots
                    .iter()
                    .map(|b| pair_simple(b, i) * pair_simple(b, j))
                    .sum();
                if q(qij) != q(2 * self.dual_coxeter) * &self.i0[i][j] {
                    return fail(format!("invariant-form scaling broken at ({i},{j})"));
                }
            }
        }
        let comarks_q: Vec<Q> = self.comarks.iter().map(|&c| q(c)).collect();
        if self.i0_pair(&comarks_q, &comarks_q) != q(2) {
            return fail("highest coroot does not have length 2".into());
        }
        // Long roots have I_0 squared length 2.
        for b in &self.roots {
            let d6b = self.d6_of_root(b);
            if ![2, 3, 6].contains(&d6b) {
                return fail(format!("unexpected root length at {b:?}"));
            }
        }

        // Dual basis: I_0(alpha_i^vee, g_j varpi_j^vee / h_j) = delta_ij.
        for i in 0..r {
            for jn in 0..r {
                let w = self.fund_coweight(jn);
                let mut e = vec![Q::zero(); r];
                e[i] = Q::one();
                let v = self.i0_pair(&e, &w) * Q::new(Z::from(self.comarks[jn]), Z::from(self.marks[jn]));
                let expect = if i == jn { Q::one() } else { Q::zero() };
                if v != expect {
                    return fail(format!("dual-basis identity broken at ({i},{jn})"));
                }
            }
        }

        // varpi_i(alpha_j^vee) = delta_ij and rho(alpha_j^vee) = 1.
        let rho = self.rho();
        for j in 0..r {
            if self.pairing_root_side(&rho, j) != Q::one() {
                return fail(format!("rho pairing broken at node {j}"));
            }
            for i in 0..r {
                let w = self.fund_weight(i);
                let expect = if i == j { Q::one() } else { Q::zero() };
                if self.pairing_root_side(&w, j) != expect {
                    return fail(format!("weight pairing broken at ({i},{j})"));
                }
            }
        }
        Ok(())
    }
}

/// Connected components of a Cartan matrix, each typed by diagram
/// classification. Returns (member indices, type) per component. The rank-2
/// double-edge diagram is typed B_2 and a 3-node path is typed A_3.
pub fn classify_components(a: &[Vec<i64>]) -> Result<Vec<(Vec<usize>, SimpleType)>, String> {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && a[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        let t = classify_one(a, &comp)?;
        out.push((comp, t));
    }
    out.sort_by_key(|(c, _)| c[0]);
    Ok(out)
}

fn classify_one(a: &[Vec<i64>], comp: &[usize]) -> Result<SimpleType, String> {
    let n = comp.len();
    if n == 1 {
        return SimpleType::new(Family::A, 1);
    }
    let idx = |k: usize| comp[k];
    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let m = a[idx(x)][idx(y)] * a[idx(y)][idx(x)];
            if m != 0 {
                edges.push((x, y, m));
            }
        }
    }
    if edges.len() != n - 1 {
        return Err("component is not a tree".into());
    }
    let mut deg = vec![0usize; n];
    for &(x, y, _) in &edges {
        deg[x] += 1;
        deg[y] += 1;
    }
    let triple = edges.iter().filter(|&&(_, _, m)| m == 3).count();
    let double = edges.iter().filter(|&&(_, _, m)| m == 2).count();
    if triple > 0 {
        if n == 2 && triple == 1 {
            return SimpleType::new(Family::G, 2);
        }
        return Err("triple edge in a component of rank > 2".into());
    }
    if double > 0 {
        if double > 1 || deg.iter().any(|&d| d > 2) {
            return Err("unrecognized multiply-laced diagram".into());
        }
        // A path with one double edge. Orient it: a[i][j] = -2 means i long.
        let &(x, y, _) = edges.iter().find(|&&(_, _, m)| m == 2).unwrap();
        let (long_end, short_end) = if a[idx(x)][idx(y)] == -2 {
            (x, y)
        } else {
            (y, x)
        };
        // Count nodes on each side of the double edge.
        let mut side = vec![0u8; n];
        let mut stack = vec![long_end];
        side[long_end] = 1;
        while let Some(i) = stack.pop() {
            for &(p, qn, _) in &edges {
                if (p, qn) == (long_end, short_end) || (qn, p) == (long_end, short_end) {
                    continue;
                }
                for (u, v) in [(p, qn), (qn, p)] {
                    if u == i && side[v] == 0 {
                        side[v] = 1;
                        stack.push(v);
                    }
                }
            }
        }
        let long_count = side.iter().filter(|&&s| s == 1).count();
        let short_count = n - long_count;
        if n == 2 {
            return SimpleType::new(Family::B, 2);
        }
        if long_count == 2 && short_count == 2 {
            return SimpleType::new(Family::F, 4);
        }
        if short_count == 1 {
            return SimpleType::new(Family::B, n);
        }
        if long_count == 1 {
            return SimpleType::new(Family::C, n);
        }
        return Err("unrecognized multiply-laced diagram".into());
    }
    // Simply laced tree.
    let branch = deg.iter().filter(|&&d| d >= 3).count();
    if branch == 0 {
        return SimpleType::new(Family::A, n);
    }
    if branch > 1 || deg.iter().any(|&d| d > 3) {
        return Err("unrecognized simply-laced diagram".into());
    }
    let center = deg.iter().position(|&d| d == 3).unwrap();
    let mut arms: Vec<usize> = Vec::new();
    let mut visited = vec![false; n];
    visited[center] = true;
    let nbrs: Vec<usize> = (0..n)
        .filter(|&v| edges.iter().any(|&(x, y, _)| (x, y) == (center, v) || (y, x) == (center, v)))
        .collect();
    for nb in nbrs {
        let mut len = 0;
        let mut cur = nb;
        loop {
            visited[cur] = true;
            len += 1;
            let next = (0..n).find(|&v| {
                !visited[v]
                    && edges
                        .iter()
                        .any(|&(x, y, _)| (x, y) == (cur, v) || (y, x) == (cur, v))
            });
            match next {
                Some(v) => cur = v,
                None => break,
            }
        }
        arms.push(len);
    }
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, k] => SimpleType::new(Family::D, k + 3),
        [1, 2, 2] => SimpleType::new(Family::E, 6),
        [1, 2, 3] => SimpleType::new(Family::E, 7),
        [1, 2, 4] => SimpleType::new(Family::E, 8),
        _ => Err("unrecognized simply-laced branched diagram".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(f: Family, r: usize) -> RootDatum {
        build_root_system(SimpleType::new(f, r).unwrap()).unwrap()
    }

    #[test]
    fn rank_bounds() {
        assert!(SimpleType::new(Family::A, 0).is_err());
        assert!(SimpleType::new(Family::B, 1).is_err());
        assert!(SimpleType::new(Family::D, 2).is_err());
        assert!(SimpleType::new(Family::E, 5).is_err());
        assert!(SimpleType::new(Family::F, 3).is_err());
        assert!(SimpleType::new(Family::G, 3).is_err());
        assert!(SimpleType::new(Family::D, 3).is_ok());
    }

    #[test]
    fn small_counts() {
        assert_eq!(datum(Family::A, 1).roots().len(), 2);
        assert_eq!(datum(Family::G, 2).roots().len(), 12);
        assert_eq!(datum(Family::F, 4).roots().len(), 48);
        assert_eq!(datum(Family::E, 8).roots().len(), 240);
    }

    #[test]
    fn coxeter_numbers() {
        for r in 1..=6 {
            let d = datum(Family::A, r);
            assert_eq!(d.coxeter_number(), r as i64 + 1);
            assert_eq!(d.dual_coxeter_number(), r as i64 + 1);
        }
        for r in 2..=6 {
            let d = datum(Family::C, r);
            assert_eq!(d.coxeter_number(), 2 * r as i64);
            assert_eq!(d.dual_coxeter_number(), r as i64 + 1);
            let d = datum(Family::B, r);
            assert_eq!(d.coxeter_number(), 2 * r as i64);
            assert_eq!(d.dual_coxeter_number(), 2 * r as i64 - 1);
        }
        let g2 = datum(Family::G, 2);
        assert_eq!((g2.coxeter_number(), g2.dual_coxeter_number()), (6, 4));
        let f4 = datum(Family::F, 4);
        assert_eq!((f4.coxeter_number(), f4.dual_coxeter_number()), (12, 9));
        let e7 = datum(Family::E, 7);
        assert_eq!((e7.coxeter_number(), e7.dual_coxeter_number()), (18, 18));
        assert_eq!(e7.marks(), &vec![2, 2, 3, 4, 3, 2, 1]);
        let e8 = datum(Family::E, 8);
        assert_eq!((e8.coxeter_number(), e8.dual_coxeter_number()), (30, 30));
        assert_eq!(e8.marks(), &vec![2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn marks_and_comarks_classical() {
        let b4 = datum(Family::B, 4);
        assert_eq!(b4.marks(), &vec![1, 2, 2, 2]);
        assert_eq!(b4.comarks(), &vec![1, 2, 2, 1]);
        let c4 = datum(Family::C, 4);
        assert_eq!(c4.marks(), &vec![2, 2, 2, 1]);
        assert_eq!(c4.comarks(), &vec![1, 1, 1, 1]);
        let d5 = datum(Family::D, 5);
        assert_eq!(d5.marks(), &vec![1, 2, 2, 1, 1]);
        assert_eq!(d5.comarks(), &vec![1, 2, 2, 1, 1]);
        let g2 = datum(Family::G, 2);
        assert_eq!(g2.marks(), &vec![3, 2]);
        assert_eq!(g2.comarks(), &vec![1, 2]);
        let f4 = datum(Family::F, 4);
        assert_eq!(f4.marks(), &vec![2, 3, 4, 2]);
        assert_eq!(f4.comarks(), &vec![2, 3, 2, 1]);
    }

    #[test]
    fn validate_sample() {
        for (f, r) in [
            (Family::A, 3),
            (Family::B, 3),
            (Family::C, 3),
            (Family::D, 4),
            (Family::G, 2),
            (Family::F, 4),
            (Family::E, 6),
        ] {
            datum(f, r).validate().unwrap();
        }
    }

    #[test]
    fn antidominant_a2() {
        // A_2, J = all: varpi_1 sweeps to -varpi_2.
        let d = datum(Family::A, 2);
        let w1 = d.fund_weight(0);
        let (y, _) = d.make_antidominant_within(&[0, 1], &w1);
        let w2 = d.fund_weight(1);
        let minus_w2: Vec<Q> = w2.into_iter().map(|c| -c).collect();
        assert_eq!(y, minus_w2);
        // Empty reflection set: identity.
        let (y, word) = d.make_antidominant_within(&[], &w1);
        assert_eq!(y, d.fund_weight(0));
        assert!(word.is_empty());
    }

    #[test]
    fn tau_permutation_a3() {
        // -w0 on A_3 is the diagram flip.
        let d = datum(Family::A, 3);
        let tau = d.minus_w0prime_permutation(&[0, 1, 2]);
        assert_eq!(tau[&0], 2);
        assert_eq!(tau[&1], 1);
        assert_eq!(tau[&2], 0);
    }

    #[test]
    fn classifier_shapes() {
        let e8 = datum(Family::E, 8);
        let comps = classify_components(e8.cartan()).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].1, SimpleType::new(Family::E, 8).unwrap());

        let b5 = datum(Family::B, 5);
        let comps = classify_components(b5.cartan()).unwrap();
        assert_eq!(comps[0].1, SimpleType::new(Family::B, 5).unwrap());
        let c5 = datum(Family::C, 5);
        let comps = classify_components(c5.cartan()).unwrap();
        assert_eq!(comps[0].1, SimpleType::new(Family::C, 5).unwrap());
        let f4 = datum(Family::F, 4);
        let comps = classify_components(f4.cartan()).unwrap();
        assert_eq!(comps[0].1, SimpleType::new(Family::F, 4).unwrap());
        let g2 = datum(Family::G, 2);
        let comps = classify_components(g2.cartan()).unwrap();
        assert_eq!(comps[0].1, SimpleType::new(Family::G, 2).unwrap());
        let d6 = datum(Family::D, 6);
        let comps = classify_components(d6.cartan()).unwrap();
        assert_eq!(comps[0].1, SimpleType::new(Family::D, 6).unwrap());
        // D_3 data classifies as the 3-node path A_3.
        let d3 = datum(Family::D, 3);
        let comps = classify_components(d3.cartan()).unwrap();
        assert_eq!(comps[0].1, SimpleType::new(Family::A, 3).unwrap());
    }
}
