//! The four minimal Fano threefold datasets and their schema checks.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::Result;
use crate::lattice::{is_semiorthonormal, BilinearSpace, SeminormalGram};
use crate::matrix::{rat, ExactMatrix, Rational};
use crate::modular::{gamma0, Gamma0Element, PAIR_LABELS};
use crate::report::{CheckOutcome, VerificationReport};

/// Monodromy data for one Fano threefold, stored as the raw integers of the
/// case file so that malformed data can still be loaded and reported on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoCase {
    pub name: String,
    /// Level N of Γ₀(N).
    pub level: i64,
    /// Fano index d.
    pub index: i64,
    /// Anticanonical degree −K³.
    pub minus_k_cubed: i64,
    /// Euler pairing in the exceptional basis, row-major.
    pub x: [[i64; 4]; 4],
    /// Generators `[a,b,c,d]` ordered as [`PAIR_LABELS`].
    pub gammas: [[i64; 4]; 6],
    pub u: [[i64; 3]; 3],
    /// Norm-2 vectors of the four reflections.
    pub v: [[i64; 3]; 4],
    /// Free-form description of the exceptional collection.
    pub collection: Option<String>,
}

impl FanoCase {
    pub fn x_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_i64_rows(&self.x)
    }

    pub fn gram(&self) -> Result<SeminormalGram> {
        SeminormalGram::new(self.x_matrix())
    }

    pub fn u_space(&self) -> Result<BilinearSpace> {
        BilinearSpace::new(ExactMatrix::from_i64_rows(&self.u))
    }

    pub fn vectors(&self) -> Vec<Vec<Rational>> {
        self.v
            .iter()
            .map(|v| v.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    /// The 3×4 matrix with columns v₁..v₄.
    pub fn vector_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_fn(3, 4, |i, j| rat(self.v[j][i]))
    }

    pub fn level_u64(&self) -> Option<u64> {
        u64::try_from(self.level).ok().filter(|&n| n > 0)
    }

    /// Generator for a pair label such as `"13"`, validated against the level.
    pub fn gamma(&self, label: &str) -> Result<Gamma0Element> {
        let idx = PAIR_LABELS
            .iter()
            .position(|l| *l == label)
            .unwrap_or_else(|| panic!("unknown pair label {label}"));
        let level = self
            .level_u64()
            .ok_or_else(|| crate::Error::Level(format!("level {} is not positive", self.level)))?;
        let [a, b, c, d] = self.gammas[idx];
        gamma0(a, b, c, d, level)
    }

    /// The form `U_N` this case's U is required to equal.
    pub fn expected_u(&self) -> [[i64; 3]; 3] {
        [[0, 0, -1], [0, -2 * self.level, 0], [-1, 0, 0]]
    }
}

/// Built-in datasets in the order P3, Q, V5, V22.
pub fn builtin_cases() -> Vec<FanoCase> {
    Vec::from([p3(), quadric(), v5(), v22()])
}

pub fn builtin_case(name: &str) -> Option<FanoCase> {
    builtin_cases().into_iter().find(|c| c.name == name)
}

pub const BUILTIN_NAMES: [&str; 4] = ["P3", "Q", "V5", "V22"];

fn v22() -> FanoCase {
    FanoCase {
        name: "V22".to_string(),
        level: 11,
        index: 1,
        minus_k_cubed: 22,
        x: [[1, 7, 8, 18], [0, 1, 4, 13], [0, 0, 1, 4], [0, 0, 0, 1]],
        gammas: [
            [4, 1, 11, 3],
            [6, 1, 11, 2],
            [15, 2, 22, 3],
            [7, 1, -22, -3],
            [23, 3, -77, -10],
            [8, 1, -33, -4],
        ],
        u: [[0, 0, -1], [0, -22, 0], [-1, 0, 0]],
        v: [[-1, 0, 1], [-4, 1, 3], [-6, 1, 2], [-15, 2, 3]],
        collection: Some("(O, S*, E*, Λ²S*)".to_string()),
    }
}

fn v5() -> FanoCase {
    FanoCase {
        name: "V5".to_string(),
        level: 5,
        index: 2,
        minus_k_cubed: 40,
        x: [[1, 5, 5, 7], [0, 1, 3, 10], [0, 0, 1, 5], [0, 0, 0, 1]],
        gammas: [
            [2, 1, 5, 3],
            [3, 1, 5, 2],
            [6, 1, 5, 1],
            [4, 1, -5, -1],
            [13, 2, -20, -3],
            [7, 1, -15, -2],
        ],
        u: [[0, 0, -1], [0, -10, 0], [-1, 0, 0]],
        v: [[-1, 0, 1], [-2, 1, 3], [-3, 1, 2], [-6, 1, 1]],
        collection: Some("(O, Q, S*, O(1))".to_string()),
    }
}

fn quadric() -> FanoCase {
    FanoCase {
        name: "Q".to_string(),
        level: 3,
        index: 3,
        minus_k_cubed: 54,
        x: [[1, 4, 5, 14], [0, 1, 4, 16], [0, 0, 1, 5], [0, 0, 0, 1]],
        gammas: [
            [2, 1, 3, 2],
            [4, 1, 3, 1],
            [13, 2, 6, 1],
            [5, 1, -6, -1],
            [20, 3, -27, -4],
            [7, 1, -15, -2],
        ],
        u: [[0, 0, -1], [0, -6, 0], [-1, 0, 0]],
        v: [[-1, 0, 1], [-2, 1, 2], [-4, 1, 1], [-13, 2, 1]],
        collection: Some("(O, S*, O(1), O(2)), S the spinor bundle".to_string()),
    }
}

fn p3() -> FanoCase {
    FanoCase {
        name: "P3".to_string(),
        level: 2,
        index: 4,
        minus_k_cubed: 64,
        x: [[1, 4, 10, 20], [0, 1, 4, 10], [0, 0, 1, 4], [0, 0, 0, 1]],
        gammas: [
            [3, 1, 2, 1],
            [9, 2, 4, 1],
            [19, 3, 6, 1],
            [5, 1, -6, -1],
            [13, 2, -20, -3],
            [7, 1, -22, -3],
        ],
        u: [[0, 0, -1], [0, -4, 0], [-1, 0, 0]],
        v: [[-1, 0, 1], [-3, 1, 1], [-9, 2, 1], [-19, 3, 1]],
        collection: Some("(O, O(1), O(2), O(3))".to_string()),
    }
}

/// One outcome per schema invariant of a [`FanoCase`].
pub fn validate_case(case: &FanoCase) -> VerificationReport {
    let mut report = VerificationReport::new(case.name.clone());

    report.push(CheckOutcome::from_bool("level-positive", case.level > 0, || {
        format!("level {} is not positive", case.level)
    }));
    report.push(CheckOutcome::from_bool("index-positive", case.index > 0, || {
        format!("index {} is not positive", case.index)
    }));

    let expected_degree =
        BigInt::from(2) * BigInt::from(case.index) * BigInt::from(case.index) * BigInt::from(case.level);
    report.push(CheckOutcome::from_bool(
        "degree=2d^2N",
        BigInt::from(case.minus_k_cubed) == expected_degree,
        || {
            format!(
                "minus_k_cubed {} != 2*{}^2*{} = {}",
                case.minus_k_cubed, case.index, case.index, expected_degree
            )
        },
    ));

    let x = case.x_matrix();
    report.push(CheckOutcome::from_bool(
        "semiorthonormal",
        is_semiorthonormal(&x),
        || format!("X = {x} is not upper unitriangular"),
    ));

    let expected_u = case.expected_u();
    report.push(CheckOutcome::from_bool("U=U_N", case.u == expected_u, || {
        format!(
            "U = {} but level {} requires {}",
            ExactMatrix::from_i64_rows(&case.u),
            case.level,
            ExactMatrix::from_i64_rows(&expected_u)
        )
    }));

    for label in PAIR_LABELS {
        let outcome = match case.gamma(label) {
            Ok(_) => CheckOutcome::pass(format!("gamma0:{label}")),
            Err(e) => CheckOutcome::fail(format!("gamma0:{label}"), e.to_string()),
        };
        report.push(outcome);
    }

    let u = ExactMatrix::from_i64_rows(&case.u);
    for (j, v) in case.v.iter().enumerate() {
        let col = ExactMatrix::column_i64(v);
        let norm = col
            .transpose()
            .mul(&u)
            .and_then(|m| m.mul(&col))
            .map(|m| m.get(0, 0).clone())
            .expect("3-vectors against a 3x3 form");
        report.push(CheckOutcome::from_bool(
            format!("norm2:v{}", j + 1),
            norm == rat(2),
            || format!("v{} = {:?} has norm {}", j + 1, v, norm),
        ));
    }
    report
}
