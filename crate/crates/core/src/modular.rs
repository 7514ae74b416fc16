//! Γ₀(N), the symmetric-square lift ψ, the Fricke matrix and elliptic fixed
//! points in the upper half-plane.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::report::CheckOutcome;
use crate::matrix::{rat_big, ExactMatrix, Rational};

/// A 2×2 integer matrix of determinant one with `N | c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gamma0Element {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
    level: u64,
}

impl Gamma0Element {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt, level: u64) -> Result<Self> {
        if level == 0 {
            return Err(Error::Level("level must be positive".into()));
        }
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(Error::Determinant(format!(
                "[[{a},{b}],[{c},{d}]] has determinant {det}"
            )));
        }
        if !c.is_multiple_of(&BigInt::from(level)) {
            return Err(Error::Level(format!("{level} does not divide {c}")));
        }
        Ok(Gamma0Element { a, b, c, d, level })
    }

    pub fn identity(level: u64) -> Self {
        Self::new(BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one(), level)
            .expect("identity lies in every Γ₀(N)")
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.level != other.level {
            return Err(Error::Level(format!(
                "product of levels {} and {}",
                self.level, other.level
            )));
        }
        Ok(Gamma0Element {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
            level: self.level,
        })
    }

    pub fn inverse(&self) -> Self {
        Gamma0Element {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
            level: self.level,
        }
    }

    pub fn to_matrix(&self) -> ExactMatrix {
        let e = [&self.a, &self.b, &self.c, &self.d];
        ExactMatrix::from_fn(2, 2, |i, j| rat_big(e[2 * i + j].clone()))
    }
}

impl fmt::Display for Gamma0Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

pub fn gamma0(a: i64, b: i64, c: i64, d: i64, level: u64) -> Result<Gamma0Element> {
    Gamma0Element::new(a.into(), b.into(), c.into(), d.into(), level)
}

/// The symmetric-square lift
///
/// ```text
/// ⎛  d²     2cd    −c²/N ⎞
/// ⎜  bd    bc+ad   −ac/N ⎟
/// ⎝ −Nb²   −2Nab    a²   ⎠
/// ```
///
/// which is integral because `N | c`.
pub fn sym2_lift(g: &Gamma0Element) -> ExactMatrix {
    let n = BigInt::from(g.level);
    let (a, b, c, d) = (&g.a, &g.b, &g.c, &g.d);
    let rows = [
        [d * d, BigInt::from(2) * c * d, -(c * c) / &n],
        [b * d, b * c + a * d, -(a * c) / &n],
        [-(&n * b * b), -(BigInt::from(2) * &n * a * b), a * a],
    ];
    ExactMatrix::from_fn(3, 3, |i, j| rat_big(rows[i][j].clone()))
}

/// The antidiagonal involution `ψ(ι)` that extends ψ to the Fricke coset.
pub fn fricke_involution_lift() -> ExactMatrix {
    ExactMatrix::from_i64_rows(&[[0, 0, 1], [0, 1, 0], [1, 0, 0]])
}

/// `U_N` with rows `(0,0,−1), (0,−2N,0), (−1,0,0)`, the form preserved by ψ.
pub fn sym2_form(level: u64) -> ExactMatrix {
    let n = i64::try_from(level).expect("level fits in i64");
    ExactMatrix::from_i64_rows(&[[0, 0, -1], [0, -2 * n, 0], [-1, 0, 0]])
}

/// The Atkin-Lehner matrix `[[0,−1],[N,0]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrickeMatrix {
    level: u64,
}

impl FrickeMatrix {
    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn entries(&self) -> [BigInt; 4] {
        [
            BigInt::zero(),
            -BigInt::one(),
            BigInt::from(self.level),
            BigInt::zero(),
        ]
    }

    pub fn to_matrix(&self) -> ExactMatrix {
        let e = self.entries();
        ExactMatrix::from_fn(2, 2, |i, j| rat_big(e[2 * i + j].clone()))
    }
}

pub fn fricke(level: u64) -> FrickeMatrix {
    assert!(level >= 1, "level must be positive");
    FrickeMatrix { level }
}

/// `W·γ`, an integer matrix of determinant N.
pub fn w_twist(w: &FrickeMatrix, g: &Gamma0Element) -> Result<[BigInt; 4]> {
    if w.level != g.level {
        return Err(Error::Level(format!(
            "Fricke matrix of level {} against an element of level {}",
            w.level, g.level
        )));
    }
    Ok(mul2(&w.entries(), &[g.a.clone(), g.b.clone(), g.c.clone(), g.d.clone()]))
}

pub fn mul2(x: &[BigInt; 4], y: &[BigInt; 4]) -> [BigInt; 4] {
    [
        &x[0] * &y[0] + &x[1] * &y[2],
        &x[0] * &y[1] + &x[1] * &y[3],
        &x[2] * &y[0] + &x[3] * &y[2],
        &x[2] * &y[1] + &x[3] * &y[3],
    ]
}

/// True iff `det M = N` and `tr M = 0`, i.e. `M² = −N·Id`: M acts as an
/// involution of the upper half-plane with a fixed point.
pub fn is_half_plane_involution(m: &[BigInt; 4], level: u64) -> bool {
    let det = &m[0] * &m[3] - &m[1] * &m[2];
    det == BigInt::from(level) && (&m[0] + &m[3]).is_zero()
}

/// `re + coeff·√disc` with `disc` negative and square-free and `coeff > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSurd {
    pub re: Rational,
    pub disc: BigInt,
    pub coeff: Rational,
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.re, self.coeff, self.disc)
    }
}

/// Writes `n > 0` as `s²·f` with `f` square-free.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut square_root = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let pp = &p * &p;
        while rest.is_multiple_of(&pp) {
            rest /= &pp;
            square_root *= &p;
        }
        p += 1;
    }
    (square_root, rest)
}

/// Fixed point in the upper half-plane of `z ↦ (az+b)/(cz+d)`: the root of
/// `c·z² + (d−a)·z − b = 0` with positive imaginary part.
pub fn fixed_point(m: &[BigInt; 4]) -> Result<QuadraticSurd> {
    let [a, b, c, d] = m;
    if c.is_zero() {
        return Err(Error::Affine);
    }
    let tr = a + d;
    let det = a * d - b * c;
    let disc = &tr * &tr - BigInt::from(4) * det;
    if !disc.is_negative() {
        return Err(Error::ParabolicOrHyperbolic(format!(
            "discriminant {disc} is not negative"
        )));
    }
    let (s, f) = split_square(&-disc);
    let two_c = BigInt::from(2) * c;
    Ok(QuadraticSurd {
        re: Rational::new(a - d, two_c.clone()),
        disc: -f,
        coeff: Rational::new(s, two_c.abs()),
    })
}

/// The six pair labels in the order the generators are listed.
pub const PAIR_LABELS: [&str; 6] = ["12", "13", "14", "23", "24", "34"];

/// The three composition relations `(left, right, product)`.
pub const RELATIONS: [(&str, &str, &str); 3] = [("12", "23", "13"), ("12", "24", "14"), ("23", "34", "24")];

/// Certifies the composition relations among the six generators and the
/// trace identities `tr γᵢⱼ = Xᵢⱼ`.
///
/// `gammas` are raw `[a,b,c,d]` entries ordered as [`PAIR_LABELS`]; `x` is the
/// Gram matrix. Entries are used as given, so a malformed generator makes
/// the affected identities fail rather than erroring.
pub fn check_relations(gammas: &[[i64; 4]; 6], x: &ExactMatrix) -> Vec<CheckOutcome> {
    let big = |g: &[i64; 4]| g.map(BigInt::from);
    let by_label = |label: &str| {
        let idx = PAIR_LABELS.iter().position(|l| *l == label).expect("known label");
        big(&gammas[idx])
    };
    let render = |m: &[BigInt; 4]| format!("[[{},{}],[{},{}]]", m[0], m[1], m[2], m[3]);
    let mut out = Vec::with_capacity(9);
    for (l, r, p) in RELATIONS {
        let product = mul2(&by_label(l), &by_label(r));
        let expected = by_label(p);
        out.push(CheckOutcome::from_bool(
            format!("g{l}*g{r}=g{p}"),
            product == expected,
            || format!("g{l}*g{r} = {} but g{p} = {}", render(&product), render(&expected)),
        ));
    }
    for (idx, label) in PAIR_LABELS.iter().enumerate() {
        let bytes = label.as_bytes();
        let i = usize::from(bytes[0] - b'1');
        let j = usize::from(bytes[1] - b'1');
        let g = &gammas[idx];
        let tr = BigInt::from(g[0]) + BigInt::from(g[3]);
        let entry = if i < x.rows() && j < x.cols() {
            Some(x.get(i, j).clone())
        } else {
            None
        };
        let ok = entry.as_ref().is_some_and(|e| *e == rat_big(tr.clone()));
        out.push(CheckOutcome::from_bool(format!("trace:{label}"), ok, || match entry {
            Some(e) => format!("tr g{label} = {tr} != X{label} = {e}"),
            None => format!("X has no entry ({},{})", i + 1, j + 1),
        }));
    }
    out
}
