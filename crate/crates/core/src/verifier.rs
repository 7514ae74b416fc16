//! End-to-end certificate for a case, the brute-force vector search, and the
//! seeded property fuzzers.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cases::{validate_case, FanoCase};
use crate::lattice::{canonical_operator, gram_matrix, BilinearSpace, SeminormalGram};
use crate::matrix::{rat, ExactMatrix};
use crate::modular::{
    check_relations, fricke, fricke_involution_lift, is_half_plane_involution, mul2, sym2_form, sym2_lift,
    Gamma0Element, PAIR_LABELS,
};
use crate::reflection::{
    coxeter_product_alt, coxeter_product_sym, infinity_monodromy, intertwiner_check, is_unipotent,
    monodromy_from_gammas, vanishing_local_system,
};
use crate::report::{CheckOutcome, VerificationReport};

/// Check groups of [`verify_case`], in execution order.
pub const CHECK_GROUPS: [&str; 9] = [
    "validate",
    "relations",
    "psi-orthogonal",
    "elliptic",
    "reflections",
    "gram",
    "rank",
    "intertwiner",
    "unipotent",
];

/// Runs every check group against `case`. Never short-circuits: a defect in
/// one group shows up as failed outcomes there while later groups still run
/// on whatever data remains usable.
pub fn verify_case(case: &FanoCase) -> VerificationReport {
    let mut report = VerificationReport::new(case.name.clone());
    let x = case.x_matrix();
    let u = ExactMatrix::from_i64_rows(&case.u);

    report.extend_group("validate", validate_case(case).checks);
    report.extend_group("relations", check_relations(&case.gammas, &x));
    report.extend_group("psi-orthogonal", psi_orthogonality(case, &u));
    report.extend_group("elliptic", elliptic_checks(case));
    report.extend_group("reflections", reflection_checks(case));

    let sym = x.add(&x.transpose()).expect("4x4");
    let gram = BilinearSpace::new(u.clone())
        .and_then(|space| gram_matrix(&case.vectors(), &space));
    report.extend_group(
        "gram",
        [match gram {
            Ok(g) => CheckOutcome::matrices("v^t U v = X+X^t", &g, &sym),
            Err(e) => CheckOutcome::fail("v^t U v = X+X^t", e.to_string()),
        }],
    );

    let rank = sym.rank();
    report.extend_group(
        "rank",
        [CheckOutcome::from_bool("rank(X+X^t)=3", rank == 3, || {
            format!("rank {rank}")
        })],
    );

    let intertwiner = match intertwiner_check(case) {
        Ok(outcomes) => outcomes,
        Err(e) => Vec::from([CheckOutcome::fail("clauses", e.to_string())]),
    };
    report.extend_group("intertwiner", intertwiner);

    report.extend_group("unipotent", [unipotency_check(case)]);
    report
}

fn psi_orthogonality(case: &FanoCase, u: &ExactMatrix) -> Vec<CheckOutcome> {
    let preserves = |m: &ExactMatrix| m.transpose().mul(u).and_then(|t| t.mul(m));
    let mut out = Vec::with_capacity(7);
    for label in PAIR_LABELS {
        let name = format!("psi(g{label})");
        out.push(match case.gamma(label) {
            Ok(g) => {
                let psi = sym2_lift(&g);
                CheckOutcome::matrices(name, &preserves(&psi).expect("3x3"), u)
            }
            Err(e) => CheckOutcome::fail(name, e.to_string()),
        });
    }
    let i = fricke_involution_lift();
    out.push(CheckOutcome::matrices("I", &preserves(&i).expect("3x3"), u));
    out
}

fn elliptic_checks(case: &FanoCase) -> Vec<CheckOutcome> {
    let Some(level) = case.level_u64() else {
        return Vec::from([CheckOutcome::fail(
            "W",
            format!("level {} is not positive", case.level),
        )]);
    };
    let w = fricke(level).entries();
    let render = |m: &[num_bigint::BigInt; 4]| format!("[[{},{}],[{},{}]]", m[0], m[1], m[2], m[3]);
    let mut out = Vec::with_capacity(4);
    out.push(CheckOutcome::from_bool("W", is_half_plane_involution(&w, level), || {
        format!("W = {} is not an involution", render(&w))
    }));
    for label in ["12", "13", "14"] {
        let idx = PAIR_LABELS.iter().position(|l| *l == label).expect("label");
        let g = case.gammas[idx].map(num_bigint::BigInt::from);
        let m = mul2(&w, &g);
        out.push(CheckOutcome::from_bool(
            format!("W*g{label}"),
            is_half_plane_involution(&m, level),
            || {
                let tr = &m[0] + &m[3];
                let det = &m[0] * &m[3] - &m[1] * &m[2];
                format!("W*g{label} = {} has trace {tr}, det {det}", render(&m))
            },
        ));
    }
    out
}

fn reflection_checks(case: &FanoCase) -> Vec<CheckOutcome> {
    let labels = ["R(v1)=I", "R(v2)=I*psi(g12)", "R(v3)=I*psi(g13)", "R(v4)=I*psi(g14)"];
    let actual = vanishing_local_system(case).map(|t| t.matrices());
    let expected = monodromy_from_gammas(case);
    match (actual, expected) {
        (Ok(actual), Ok(expected)) => labels
            .iter()
            .zip(actual.iter().zip(&expected))
            .map(|(l, (a, e))| CheckOutcome::matrices(*l, a, e))
            .collect(),
        (Err(e), _) | (_, Err(e)) => labels
            .iter()
            .map(|l| CheckOutcome::fail(*l, e.to_string()))
            .collect(),
    }
}

fn unipotency_check(case: &FanoCase) -> CheckOutcome {
    const LABEL: &str = "index=3";
    let tuple = match vanishing_local_system(case) {
        Ok(t) => t,
        Err(e) => return CheckOutcome::fail(LABEL, e.to_string()),
    };
    let m = infinity_monodromy(&tuple);
    let cube = is_unipotent(&m, 3).expect("square");
    let square = is_unipotent(&m, 2).expect("square");
    CheckOutcome::from_bool(LABEL, cube && !square, || {
        if !cube {
            format!("(M-Id)^3 != 0 for M = {m}")
        } else {
            format!("(M-Id)^2 = 0 for M = {m}")
        }
    })
}

pub type VectorTuple = [[i64; 3]; 4];

fn pair(u: &[[i64; 3]; 3], v: &[i64; 3], w: &[i64; 3]) -> i128 {
    let mut acc = 0i128;
    for i in 0..3 {
        for j in 0..3 {
            acc += i128::from(v[i]) * i128::from(u[i][j]) * i128::from(w[j]);
        }
    }
    acc
}

/// First nonzero coordinate negative.
fn is_sign_normalized(v: &[i64; 3]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0)
}

/// All sign-normalized `w ∈ [−bound, bound]³` with `wᵗUw = 2`, in
/// lexicographic order.
pub fn norm_two_vectors(u: &[[i64; 3]; 3], bound: i64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    if bound <= 0 {
        return out;
    }
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                let w = [a, b, c];
                if is_sign_normalized(&w) && pair(u, &w, &w) == 2 {
                    out.push(w);
                }
            }
        }
    }
    out
}

/// The norm-2 vector of smallest sup-norm, ties broken lexicographically.
pub fn minimal_norm_two_vector(candidates: &[[i64; 3]]) -> Option<[i64; 3]> {
    candidates
        .iter()
        .min_by_key(|w| (w.iter().map(|x| x.abs()).max(), **w))
        .copied()
}

/// Brute-force search for 4-tuples of norm-2 vectors whose U-Gram matrix is
/// `X + Xᵗ`.
///
/// Every vector is sign-normalized. With `pin`, w₁ is fixed to
/// [`minimal_norm_two_vector`], which quotients out most of the isometry
/// group. Output is in lexicographic order.
pub fn search_vectors(case: &FanoCase, bound: i64, pin: bool) -> Vec<VectorTuple> {
    let candidates = norm_two_vectors(&case.u, bound);
    let mut target = [[0i128; 4]; 4];
    for (i, row) in target.iter_mut().enumerate() {
        for (j, t) in row.iter_mut().enumerate() {
            *t = i128::from(case.x[i][j]) + i128::from(case.x[j][i]);
        }
    }
    let firsts: Vec<[i64; 3]> = if pin {
        minimal_norm_two_vector(&candidates).into_iter().collect()
    } else {
        candidates.clone()
    };
    let u = &case.u;
    let mut out = Vec::new();
    let mut chosen: Vec<[i64; 3]> = Vec::with_capacity(4);
    for w1 in firsts {
        if i128::from(2) != target[0][0] {
            break;
        }
        chosen.clear();
        chosen.push(w1);
        extend(u, &target, &candidates, &mut chosen, &mut out);
    }
    out
}

fn extend(
    u: &[[i64; 3]; 3],
    target: &[[i128; 4]; 4],
    candidates: &[[i64; 3]],
    chosen: &mut Vec<[i64; 3]>,
    out: &mut Vec<VectorTuple>,
) {
    let k = chosen.len();
    if k == 4 {
        out.push([chosen[0], chosen[1], chosen[2], chosen[3]]);
        return;
    }
    if target[k][k] != 2 {
        return;
    }
    for w in candidates {
        if chosen
            .iter()
            .enumerate()
            .all(|(i, c)| pair(u, c, w) == target[i][k])
        {
            chosen.push(*w);
            extend(u, target, candidates, chosen, out);
            chosen.pop();
        }
    }
}

pub fn random_unitriangular(rng: &mut impl Rng, n: usize) -> SeminormalGram {
    let m = ExactMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        core::cmp::Ordering::Equal => rat(1),
        core::cmp::Ordering::Less => rat(rng.gen_range(-9..=9)),
        core::cmp::Ordering::Greater => rat(0),
    });
    SeminormalGram::new(m).expect("unitriangular by construction")
}

/// Checks both Coxeter identities on seeded random unitriangular matrices of
/// sizes `2..=max_dim`; reports the first counterexample.
pub fn fuzz_coxeter(trials: usize, max_dim: usize, seed: u64) -> CheckOutcome {
    const LABEL: &str = "coxeter-fuzz";
    if trials == 0 || max_dim < 2 {
        return CheckOutcome::fail(LABEL, format!("need trials >= 1 and max_dim >= 2, got {trials}, {max_dim}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let n = rng.gen_range(2..=max_dim);
        let x = random_unitriangular(&mut rng, n);
        let k = canonical_operator(&x);
        let sym = coxeter_product_sym(&x);
        if sym != k.neg() {
            return CheckOutcome::fail(
                LABEL,
                format!("trial {trial}: X = {}, reflection product {sym} != -A^-1A^t = {}", x.matrix(), k.neg()),
            );
        }
        let alt = coxeter_product_alt(&x);
        if alt != k {
            return CheckOutcome::fail(
                LABEL,
                format!("trial {trial}: X = {}, transvection product {alt} != A^-1A^t = {k}", x.matrix()),
            );
        }
    }
    CheckOutcome::pass(LABEL)
}

/// Random word of length at most `max_len` in `[[1,±1],[0,1]]` and
/// `[[1,0],[±N,1]]`, which stays inside Γ₀(N).
pub fn random_gamma0_word(rng: &mut impl Rng, level: u64, max_len: usize) -> Gamma0Element {
    let n = i64::try_from(level).expect("level fits in i64");
    let letters = [[1, 1, 0, 1], [1, -1, 0, 1], [1, 0, n, 1], [1, 0, -n, 1]].map(|[a, b, c, d]| {
        crate::modular::gamma0(a, b, c, d, level).expect("generator of Γ₀(N)")
    });
    let len = rng.gen_range(0..=max_len);
    let mut g = Gamma0Element::identity(level);
    for _ in 0..len {
        let letter = &letters[rng.gen_range(0..letters.len())];
        g = g.mul(letter).expect("same level");
    }
    g
}

/// Checks `ψ(gh) = ψ(g)ψ(h)` and `ψ(g)ᵗ·U_N·ψ(g) = U_N` on seeded random pairs.
pub fn fuzz_psi(trials: usize, level: u64, word_len: usize, seed: u64) -> CheckOutcome {
    let label = format!("psi-fuzz:N={level}");
    if trials == 0 || level == 0 {
        return CheckOutcome::fail(label, format!("need trials >= 1 and level >= 1, got {trials}, {level}"));
    }
    let u = sym2_form(level);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let g = random_gamma0_word(&mut rng, level, word_len);
        let h = random_gamma0_word(&mut rng, level, word_len);
        let (pg, ph) = (sym2_lift(&g), sym2_lift(&h));
        let pgh = sym2_lift(&g.mul(&h).expect("same level"));
        let product = pg.mul(&ph).expect("3x3");
        if pgh != product {
            return CheckOutcome::fail(
                label,
                format!("trial {trial}: g = {g}, h = {h}: psi(gh) = {pgh} != psi(g)psi(h) = {product}"),
            );
        }
        let form = pg.transpose().mul(&u).and_then(|m| m.mul(&pg)).expect("3x3");
        if form != u {
            return CheckOutcome::fail(label, format!("trial {trial}: g = {g}: psi(g)^t U psi(g) = {form}"));
        }
    }
    CheckOutcome::pass(label)
}
