//! Reflections and transvections, Coxeter products, and the two local
//! systems attached to a case: the one read off the exceptional basis and the
//! one generated by the vanishing-cycle reflections.
//!
//! Vectors are columns and a product `R₀R₁…Rₙ` is the matrix product with
//! `R₀` leftmost.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::cases::FanoCase;
use crate::error::{Error, Result};
use crate::lattice::{alternate, canonical_operator, symmetrize, BilinearSpace, FormKind, SeminormalGram};
use crate::matrix::{rat, rat_big, ExactMatrix, Rational};
use crate::modular::{fricke_involution_lift, sym2_lift};
use crate::report::CheckOutcome;

/// Orthogonal reflection `w ↦ w − (vᵗBw)·v` in a norm-2 vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reflection {
    space: BilinearSpace,
    vector: Vec<Rational>,
    matrix: ExactMatrix,
}

impl Reflection {
    pub fn space(&self) -> &BilinearSpace {
        &self.space
    }

    pub fn vector(&self) -> &[Rational] {
        &self.vector
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }
}

/// Builds the reflection in `v`, which must have `vᵗBv = 2`.
pub fn reflection(space: &BilinearSpace, v: &[Rational]) -> Result<Reflection> {
    if space.kind() != FormKind::Symmetric {
        return Err(Error::FormKind("reflections need a symmetric form".into()));
    }
    let norm = space.pair(v, v)?;
    if norm != rat(2) {
        return Err(Error::Norm(format!("vector {} has norm {norm}", render_vec(v))));
    }
    let col = ExactMatrix::column_vector(v);
    let bv = space.gram().mul(&col)?;
    let matrix = ExactMatrix::identity(v.len()).sub(&col.mul(&bv.transpose())?)?;
    debug_assert!(matrix.mul(&matrix)?.is_identity());
    debug_assert_eq!(matrix.determinant()?, rat(-1));
    debug_assert_eq!(&matrix.transpose().mul(space.gram())?.mul(&matrix)?, space.gram());
    Ok(Reflection {
        space: space.clone(),
        vector: v.to_vec(),
        matrix,
    })
}

fn render_vec(v: &[Rational]) -> alloc::string::String {
    let parts: Vec<_> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Symplectic transvection `w ↦ w − χ_a(eⱼ, w)·eⱼ` in the j-th basis vector.
pub fn transvection(space: &BilinearSpace, j: usize) -> Result<ExactMatrix> {
    if space.kind() != FormKind::Alternating && !space.gram().is_zero() {
        return Err(Error::FormKind("transvections need an alternating form".into()));
    }
    let n = space.dim();
    if j >= n {
        return Err(Error::Shape(format!("basis index {j} in dimension {n}")));
    }
    let b = space.gram();
    Ok(ExactMatrix::from_fn(n, n, |r, c| {
        let id = if r == c { rat(1) } else { rat(0) };
        if r == j {
            id - b.get(j, c)
        } else {
            id
        }
    }))
}

/// Reflection in the j-th basis vector of `(ℚⁿ, X + Xᵗ)`; the diagonal of
/// `X + Xᵗ` is 2, so this is `Id − eⱼ·(row j)`.
fn basis_reflection(space: &BilinearSpace, j: usize) -> Reflection {
    let n = space.dim();
    let e: Vec<Rational> = (0..n).map(|i| rat((i == j) as i64)).collect();
    reflection(space, &e).expect("basis vectors have norm 2 under a symmetrized unitriangular form")
}

/// `R₀R₁…Rₙ` for the basis reflections under `X + Xᵗ`; equals `−A⁻¹Aᵗ`.
pub fn coxeter_product_sym(x: &SeminormalGram) -> ExactMatrix {
    let tuple = k0_local_system(x);
    infinity_monodromy(&tuple)
}

/// Product of the basis transvections under `X − Xᵗ`; equals `A⁻¹Aᵗ`.
pub fn coxeter_product_alt(x: &SeminormalGram) -> ExactMatrix {
    let space = alternate(x);
    let factors: Vec<_> = (0..x.dim())
        .map(|j| transvection(&space, j).expect("alternating form"))
        .collect();
    if factors.is_empty() {
        return ExactMatrix::identity(0);
    }
    ExactMatrix::product(&factors).expect("square factors")
}

/// Ordered reflections sharing one space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionTuple {
    space: BilinearSpace,
    generators: Vec<Reflection>,
}

impl ReflectionTuple {
    pub fn new(space: BilinearSpace, generators: Vec<Reflection>) -> Result<Self> {
        if generators.iter().any(|g| g.space != space) {
            return Err(Error::Shape("generators live in different spaces".into()));
        }
        Ok(ReflectionTuple { space, generators })
    }

    pub fn space(&self) -> &BilinearSpace {
        &self.space
    }

    pub fn generators(&self) -> &[Reflection] {
        &self.generators
    }

    pub fn matrices(&self) -> Vec<ExactMatrix> {
        self.generators.iter().map(|g| g.matrix.clone()).collect()
    }
}

/// Reflections in the exceptional basis classes, in basis order.
pub fn k0_local_system(x: &SeminormalGram) -> ReflectionTuple {
    let space = symmetrize(x);
    let generators = (0..x.dim()).map(|j| basis_reflection(&space, j)).collect();
    ReflectionTuple { space, generators }
}

/// Reflections `R_{v₁}..R_{v₄}` under the case's form U.
pub fn vanishing_local_system(case: &FanoCase) -> Result<ReflectionTuple> {
    let space = case.u_space()?;
    let generators = case
        .vectors()
        .iter()
        .map(|v| reflection(&space, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(ReflectionTuple { space, generators })
}

/// `I, I·ψ(γ₁₂), I·ψ(γ₁₃), I·ψ(γ₁₄)` computed from the generators alone.
pub fn monodromy_from_gammas(case: &FanoCase) -> Result<Vec<ExactMatrix>> {
    let i = fricke_involution_lift();
    let mut out = Vec::with_capacity(4);
    out.push(i.clone());
    for label in ["12", "13", "14"] {
        out.push(i.mul(&sym2_lift(&case.gamma(label)?))?);
    }
    Ok(out)
}

/// Ordered product of the generators, first leftmost.
pub fn infinity_monodromy(tuple: &ReflectionTuple) -> ExactMatrix {
    if tuple.generators.is_empty() {
        return ExactMatrix::identity(tuple.space.dim());
    }
    ExactMatrix::product(tuple.generators.iter().map(|g| &g.matrix)).expect("square generators")
}

/// True iff `(M − Id)^max_index = 0`.
pub fn is_unipotent(m: &ExactMatrix, max_index: u32) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::Shape("unipotency of a non-square matrix".into()));
    }
    let nil = m.sub(&ExactMatrix::identity(m.rows()))?;
    Ok(nil.pow(max_index)?.is_zero())
}

/// Certifies that `P: eⱼ ↦ vⱼ` intertwines the exceptional-basis local system
/// with the vanishing-cycle one. Returns one outcome per clause:
///
/// 1. `rank P = 3`
/// 2. `Pᵗ·U·P = X + Xᵗ`
/// 3. `P` kills the radical of `X + Xᵗ`
/// 4. `R_{vⱼ}·P = P·Iⱼ` for each j
/// 5. `(R_{v₁}⋯R_{v₄})·P = P·(−A⁻¹Aᵗ)`
///
/// Fails with `norm` before running any clause if some `vⱼ` is not a norm-2
/// vector, and with `semiorthonormal` if X is malformed.
pub fn intertwiner_check(case: &FanoCase) -> Result<Vec<CheckOutcome>> {
    let vanishing = vanishing_local_system(case)?;
    let x = case.gram()?;
    let k0 = k0_local_system(&x);
    let p = case.vector_matrix();
    let sym = k0.space().gram();
    let u = vanishing.space().gram();
    let mut out = Vec::with_capacity(5);

    let rank = p.rank();
    out.push(CheckOutcome::from_bool("rank", rank == 3, || {
        format!("rank P = {rank}, expected 3")
    }));

    let pulled = p.transpose().mul(u)?.mul(&p)?;
    out.push(CheckOutcome::matrices("gram-pullback", &pulled, sym));

    let mut bad_kernel = Vec::new();
    for w in sym.kernel_basis() {
        let col = ExactMatrix::column_vector(&w.iter().cloned().map(rat_big).collect::<Vec<_>>());
        let image = p.mul(&col)?;
        if !image.is_zero() {
            bad_kernel.push(format!("P{} = {}", col.transpose(), image.transpose()));
        }
    }
    out.push(CheckOutcome::from_bool("radical", bad_kernel.is_empty(), || {
        bad_kernel.join("; ")
    }));

    let mut bad = Vec::new();
    for (j, (r, i)) in vanishing.generators().iter().zip(k0.generators()).enumerate() {
        let lhs = r.matrix().mul(&p)?;
        let rhs = p.mul(i.matrix())?;
        if lhs != rhs {
            bad.push(format!(
                "j={}: R_v*P - P*I = {}",
                j + 1,
                lhs.sub(&rhs)?
            ));
        }
    }
    out.push(CheckOutcome::from_bool("intertwine", bad.is_empty(), || bad.join("; ")));

    let m = infinity_monodromy(&vanishing);
    let lhs = m.mul(&p)?;
    let rhs = p.mul(&canonical_operator(&x).neg())?;
    out.push(CheckOutcome::matrices("coxeter", &lhs, &rhs));

    Ok(out)
}

/// Convenience for callers that only need the clause verdicts.
pub fn all_passed(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(|o| o.passed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::builtin_case;

    fn ivec(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    fn u(level: i64) -> BilinearSpace {
        BilinearSpace::from_i64_rows(&[[0, 0, -1], [0, -2 * level, 0], [-1, 0, 0]]).unwrap()
    }

    fn check_invariants(r: &Reflection) {
        let m = r.matrix();
        assert!(m.mul(m).unwrap().is_identity());
        assert_eq!(m.determinant().unwrap(), rat(-1));
        let b = r.space().gram();
        assert_eq!(&m.transpose().mul(b).unwrap().mul(m).unwrap(), b);
    }

    #[test]
    fn reflection_examples() {
        let r1 = reflection(&u(11), &ivec(&[-1, 0, 1])).unwrap();
        assert_eq!(r1.matrix(), &fricke_involution_lift());
        check_invariants(&r1);
        let r2 = reflection(&u(11), &ivec(&[-4, 1, 3])).unwrap();
        assert_eq!(
            r2.matrix(),
            &ExactMatrix::from_i64_rows(&[[-11, -88, 16], [3, 23, -4], [9, 66, -11]])
        );
        check_invariants(&r2);
        let plane = BilinearSpace::new(ExactMatrix::identity(2).scale(&rat(2))).unwrap();
        let r = reflection(&plane, &ivec(&[1, 0])).unwrap();
        assert_eq!(r.matrix(), &ExactMatrix::from_i64_rows(&[[-1, 0], [0, 1]]));
    }

    #[test]
    fn reflection_rejects_bad_norm() {
        assert_eq!(reflection(&u(11), &ivec(&[0, 0, 0])).unwrap_err().kind(), "norm");
        assert_eq!(reflection(&u(11), &ivec(&[1, 0, 0])).unwrap_err().kind(), "norm");
        let alt = BilinearSpace::from_i64_rows(&[[0, 1], [-1, 0]]).unwrap();
        assert_eq!(reflection(&alt, &ivec(&[1, 0])).unwrap_err().kind(), "form-kind");
    }

    #[test]
    fn transvection_examples() {
        let s = BilinearSpace::from_i64_rows(&[[0, 2], [-2, 0]]).unwrap();
        assert_eq!(
            transvection(&s, 0).unwrap(),
            ExactMatrix::from_i64_rows(&[[1, -2], [0, 1]])
        );
        assert_eq!(
            transvection(&s, 1).unwrap(),
            ExactMatrix::from_i64_rows(&[[1, 0], [2, 1]])
        );
        let zero = BilinearSpace::new(ExactMatrix::zeros(3, 3)).unwrap();
        for j in 0..3 {
            assert!(transvection(&zero, j).unwrap().is_identity());
        }
        let sym = BilinearSpace::from_i64_rows(&[[2, 1], [1, 2]]).unwrap();
        assert_eq!(transvection(&sym, 0).unwrap_err().kind(), "form-kind");
    }

    #[test]
    fn transvection_preserves_form() {
        let x = SeminormalGram::from_i64_rows(&[[1, 5, 5, 7], [0, 1, 3, 10], [0, 0, 1, 5], [0, 0, 0, 1]])
            .unwrap();
        let s = alternate(&x);
        for j in 0..4 {
            let t = transvection(&s, j).unwrap();
            assert_eq!(&t.transpose().mul(s.gram()).unwrap().mul(&t).unwrap(), s.gram());
        }
    }

    #[test]
    fn coxeter_two_by_two() {
        let x = SeminormalGram::from_i64_rows(&[[1, 2], [0, 1]]).unwrap();
        let k0 = k0_local_system(&x);
        assert_eq!(
            k0.generators()[0].matrix(),
            &ExactMatrix::from_i64_rows(&[[-1, -2], [0, 1]])
        );
        assert_eq!(
            k0.generators()[1].matrix(),
            &ExactMatrix::from_i64_rows(&[[1, 0], [-2, -1]])
        );
        assert_eq!(
            coxeter_product_sym(&x),
            ExactMatrix::from_i64_rows(&[[3, 2], [-2, -1]])
        );
        assert_eq!(
            coxeter_product_alt(&x),
            ExactMatrix::from_i64_rows(&[[-3, -2], [2, 1]])
        );
    }

    #[test]
    fn coxeter_identity_matrix() {
        // every reflection flips one coordinate, so the product is −Id in
        // every dimension, matching −A⁻¹Aᵗ = −Id
        for n in 1..6 {
            let x = SeminormalGram::new(ExactMatrix::identity(n)).unwrap();
            assert_eq!(coxeter_product_sym(&x), ExactMatrix::identity(n).neg());
            assert!(coxeter_product_alt(&x).is_identity());
        }
    }

    #[test]
    fn coxeter_v22() {
        let x = builtin_case("V22").unwrap().gram().unwrap();
        assert_eq!(coxeter_product_sym(&x), canonical_operator(&x).neg());
        assert_eq!(coxeter_product_alt(&x), canonical_operator(&x));
    }

    #[test]
    fn k0_local_systems() {
        for name in ["V22", "Q"] {
            let x = builtin_case(name).unwrap().gram().unwrap();
            let t = k0_local_system(&x);
            assert_eq!(t.generators().len(), 4);
            for g in t.generators() {
                check_invariants(g);
            }
        }
        let x = SeminormalGram::new(ExactMatrix::identity(3)).unwrap();
        for (j, g) in k0_local_system(&x).generators().iter().enumerate() {
            let expected = ExactMatrix::from_fn(3, 3, |r, c| {
                if r != c {
                    rat(0)
                } else if r == j {
                    rat(-1)
                } else {
                    rat(1)
                }
            });
            assert_eq!(g.matrix(), &expected);
        }
    }

    #[test]
    fn vanishing_matches_gammas() {
        let v22 = builtin_case("V22").unwrap();
        let t = vanishing_local_system(&v22).unwrap();
        let psi12 = sym2_lift(&v22.gamma("12").unwrap());
        assert_eq!(
            psi12,
            ExactMatrix::from_i64_rows(&[[9, 66, -11], [3, 23, -4], [-11, -88, 16]])
        );
        assert_eq!(
            t.generators()[1].matrix(),
            &fricke_involution_lift().mul(&psi12).unwrap()
        );

        let p3 = builtin_case("P3").unwrap();
        let t = vanishing_local_system(&p3).unwrap();
        let r2 = ExactMatrix::from_i64_rows(&[[-2, -12, 9], [1, 5, -3], [1, 4, -2]]);
        assert_eq!(t.generators()[1].matrix(), &r2);
        assert_eq!(monodromy_from_gammas(&p3).unwrap()[1], r2);

        for case in crate::cases::builtin_cases() {
            let t = vanishing_local_system(&case).unwrap();
            assert_eq!(t.generators()[0].matrix(), &fricke_involution_lift());
            assert_eq!(t.matrices(), monodromy_from_gammas(&case).unwrap());
        }
    }

    #[test]
    fn infinity_monodromy_examples() {
        let p3 = builtin_case("P3").unwrap();
        let m = infinity_monodromy(&vanishing_local_system(&p3).unwrap());
        assert_eq!(m, ExactMatrix::from_i64_rows(&[[1, 16, -32], [0, 1, -4], [0, 0, 1]]));
        assert!(is_unipotent(&m, 3).unwrap());
        assert!(!is_unipotent(&m, 2).unwrap());
        let sq = m.sub(&ExactMatrix::identity(3)).unwrap().pow(2).unwrap();
        assert_eq!(sq, ExactMatrix::from_i64_rows(&[[0, 0, -64], [0, 0, 0], [0, 0, 0]]));

        let v22 = builtin_case("V22").unwrap();
        let m = infinity_monodromy(&vanishing_local_system(&v22).unwrap());
        assert!(is_unipotent(&m, 3).unwrap());

        let single = reflection(&u(11), &ivec(&[-1, 0, 1])).unwrap();
        let t = ReflectionTuple::new(u(11), alloc::vec![single.clone()]).unwrap();
        assert_eq!(&infinity_monodromy(&t), single.matrix());
    }

    #[test]
    fn unipotent_predicate() {
        assert!(is_unipotent(&ExactMatrix::identity(3), 1).unwrap());
        assert!(is_unipotent(&ExactMatrix::identity(3), 5).unwrap());
        assert!(!is_unipotent(&ExactMatrix::from_i64_rows(&[[-1, 0], [0, 1]]), 2).unwrap());
    }

    #[test]
    fn intertwiner_passes_on_builtins() {
        for case in crate::cases::builtin_cases() {
            let out = intertwiner_check(&case).unwrap();
            assert_eq!(out.len(), 5);
            assert!(all_passed(&out), "{}: {out:?}", case.name);
        }
    }

    #[test]
    fn intertwiner_norm_error() {
        let mut c = builtin_case("V22").unwrap();
        c.v[1] = [0, 0, 0];
        assert_eq!(intertwiner_check(&c).unwrap_err().kind(), "norm");
    }

    #[test]
    fn intertwiner_detects_swapped_vectors() {
        let mut c = builtin_case("V5").unwrap();
        c.v.swap(1, 2);
        let out = intertwiner_check(&c).unwrap();
        assert!(out[0].passed);
        assert!(!out[1].passed);
        assert!(out[1].witness.is_some());
    }
}
