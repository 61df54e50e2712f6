//! Generalized Fujiki constants and the ring of Γ-invariant canonical classes
//! on a Kum³-type sixfold.
//!
//! Degree-4 classes are written in the basis `{q̄, z}` with
//! `z = c₂ − (C(c₂)/C(q̄))·q̄`, degree-8 classes in `{q̄², q̄·z}`, and
//! degree-12 classes are identified with their integrals.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::int;
use crate::Rational;

/// Complex dimension of a Kum³-type manifold.
pub const KUM3_DIM: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FujikiError {
    #[error("monomial {0} missing from the Fujiki table")]
    MissingEntry(Monomial),
    #[error("malformed monomial {0:?}")]
    BadMonomial(String),
    #[error("no monomial pair (α, q̄·α) with deg α = {0} in the table")]
    NoApplicablePair(u32),
    #[error("q̄-multiplication factors disagree in degree {degree}: {ratios}")]
    InconsistentFactor { degree: u32, ratios: String },
    #[error("derivation failed: {equation} ({lhs} != {rhs})")]
    Derivation {
        equation: String,
        lhs: Rational,
        rhs: Rational,
    },
    #[error("cannot solve {0}: unknown has zero coefficient")]
    Degenerate(String),
    #[error("product of degrees {0} and {1} exceeds the top degree")]
    DegreeOverflow(u32, u32),
    #[error("degree {0} is not a canonical-class degree")]
    BadDegree(u32),
    #[error(transparent)]
    Kummer(#[from] crate::kummer::KummerError),
}

/// Monomial `q̄^a · c₂^b · c₄^c · c₆^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub qbar: u32,
    pub c2: u32,
    pub c4: u32,
    pub c6: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        qbar: 0,
        c2: 0,
        c4: 0,
        c6: 0,
    };

    pub fn new(qbar: u32, c2: u32, c4: u32, c6: u32) -> Self {
        Self { qbar, c2, c4, c6 }
    }

    /// Real cohomological degree.
    pub fn degree(&self) -> u32 {
        4 * self.qbar + 4 * self.c2 + 8 * self.c4 + 12 * self.c6
    }

    pub fn times_qbar(&self) -> Self {
        Self {
            qbar: self.qbar + 1,
            ..*self
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        for (name, exp) in [
            ("qbar", self.qbar),
            ("c2", self.c2),
            ("c4", self.c4),
            ("c6", self.c6),
        ] {
            match exp {
                0 => {}
                1 => factors.push(name.to_string()),
                e => factors.push(format!("{name}^{e}")),
            }
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

impl FromStr for Monomial {
    type Err = FujikiError;

    /// Parses `"1"`, `"qbar^2*c2"`, `"c2*c4"`, optionally wrapped as `"C(...)"`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || FujikiError::BadMonomial(text.to_string());
        let mut body = text.trim();
        if let Some(inner) = body.strip_prefix("C(").and_then(|s| s.strip_suffix(')')) {
            body = inner.trim();
        }
        if body == "1" {
            return Ok(Monomial::ONE);
        }
        if body.is_empty() {
            return Err(bad());
        }
        let mut out = Monomial::ONE;
        for factor in body.split('*') {
            let (name, exp) = match factor.trim().split_once('^') {
                Some((name, exp)) => (name, exp.parse::<u32>().map_err(|_| bad())?),
                None => (factor.trim(), 1),
            };
            if exp == 0 {
                return Err(bad());
            }
            let slot = match name {
                "qbar" => &mut out.qbar,
                "c2" => &mut out.c2,
                "c4" => &mut out.c4,
                "c6" => &mut out.c6,
                _ => return Err(bad()),
            };
            *slot += exp;
        }
        Ok(out)
    }
}

/// Generalized Fujiki constants `C(ω)` of monomials in `q̄` and Chern classes.
/// For degree-12 monomials the constant is the top intersection number.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FujikiTable {
    entries: BTreeMap<Monomial, Rational>,
}

impl FujikiTable {
    pub fn new(entries: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        Self {
            entries: entries.into_iter().collect(),
        }
    }

    pub fn get(&self, m: &Monomial) -> Option<&Rational> {
        self.entries.get(m)
    }

    pub fn require(&self, m: Monomial) -> Result<Rational, FujikiError> {
        self.entries
            .get(&m)
            .cloned()
            .ok_or(FujikiError::MissingEntry(m))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.entries.iter()
    }

    /// All table pairs `(α, C(α), C(q̄·α))` with `deg α = degree`.
    pub fn qbar_pairs(&self, degree: u32) -> Vec<(Monomial, Rational, Rational)> {
        self.entries
            .iter()
            .filter(|(m, _)| m.degree() == degree)
            .filter_map(|(m, c)| {
                self.entries
                    .get(&m.times_qbar())
                    .map(|cq| (*m, c.clone(), cq.clone()))
            })
            .collect()
    }
}

/// Common ratio `C(q̄·α)/C(α)` over all table monomials of the given degree.
pub fn qbar_factor(table: &FujikiTable, degree: u32) -> Result<Rational, FujikiError> {
    let pairs = table.qbar_pairs(degree);
    let mut ratios = Vec::new();
    let mut zero_pairs_ok = true;
    for (_, c, cq) in &pairs {
        if c.is_zero() {
            zero_pairs_ok &= cq.is_zero();
        } else {
            ratios.push(cq / c);
        }
    }
    let Some(first) = ratios.first().cloned() else {
        return Err(FujikiError::NoApplicablePair(degree));
    };
    if !zero_pairs_ok || ratios.iter().any(|r| *r != first) {
        let listing = pairs
            .iter()
            .map(|(m, c, cq)| format!("C(qbar*{m})/C({m}) = {cq}/{c}"))
            .collect::<Vec<_>>()
            .join(", ");
        return Err(FujikiError::InconsistentFactor {
            degree,
            ratios: listing,
        });
    }
    Ok(first)
}

/// `∫ ω·γ^(dim − 2k) = C(ω)·q(γ,γ)^(dim/2 − k)` for `ω` of real degree `4k`
/// on a manifold of complex dimension `dim`.
pub fn fujiki_integral(
    c_omega: &Rational,
    omega_degree: u32,
    q_gamma: &Rational,
    complex_dim: u32,
) -> Result<Rational, FujikiError> {
    if !omega_degree.is_multiple_of(4) || omega_degree > 2 * complex_dim {
        return Err(FujikiError::BadDegree(omega_degree));
    }
    let exponent = complex_dim / 2 - omega_degree / 4;
    Ok(c_omega * num_traits::pow(q_gamma.clone(), exponent as usize))
}

/// [`fujiki_integral`] on a Kum³-type sixfold.
pub fn evaluate_fujiki(
    c_omega: &Rational,
    omega_degree: u32,
    q_gamma: &Rational,
) -> Result<Rational, FujikiError> {
    fujiki_integral(c_omega, omega_degree, q_gamma, KUM3_DIM)
}

/// A Γ-invariant canonical class in the graded basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GradedClass {
    /// `a·q̄ + b·z`.
    Deg4([Rational; 2]),
    /// `a·q̄² + b·q̄·z`.
    Deg8([Rational; 2]),
    /// Integral of a degree-12 class.
    Top(Rational),
}

impl GradedClass {
    pub fn deg4(a: Rational, b: Rational) -> Self {
        GradedClass::Deg4([a, b])
    }

    pub fn deg8(a: Rational, b: Rational) -> Self {
        GradedClass::Deg8([a, b])
    }

    pub fn qbar() -> Self {
        Self::deg4(int(1), int(0))
    }

    pub fn z() -> Self {
        Self::deg4(int(0), int(1))
    }

    pub fn degree(&self) -> u32 {
        match self {
            GradedClass::Deg4(_) => 4,
            GradedClass::Deg8(_) => 8,
            GradedClass::Top(_) => 12,
        }
    }

    pub fn coordinates(&self) -> Vec<Rational> {
        match self {
            GradedClass::Deg4(c) | GradedClass::Deg8(c) => c.to_vec(),
            GradedClass::Top(t) => vec![t.clone()],
        }
    }

    pub fn top(&self) -> Option<&Rational> {
        match self {
            GradedClass::Top(t) => Some(t),
            _ => None,
        }
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        match self {
            GradedClass::Deg4([a, b]) => Self::deg4(a * factor, b * factor),
            GradedClass::Deg8([a, b]) => Self::deg8(a * factor, b * factor),
            GradedClass::Top(t) => GradedClass::Top(t * factor),
        }
    }

    /// Sum of two classes of equal degree.
    pub fn plus(&self, other: &Self) -> Option<Self> {
        match (self, other) {
            (GradedClass::Deg4([a, b]), GradedClass::Deg4([c, d])) => {
                Some(Self::deg4(a + c, b + d))
            }
            (GradedClass::Deg8([a, b]), GradedClass::Deg8([c, d])) => {
                Some(Self::deg8(a + c, b + d))
            }
            (GradedClass::Top(a), GradedClass::Top(b)) => Some(GradedClass::Top(a + b)),
            _ => None,
        }
    }

    pub fn linear_combination(parts: &[(Rational, &GradedClass)]) -> Option<Self> {
        let mut iter = parts.iter();
        let (c, first) = iter.next()?;
        let mut acc = first.scaled(c);
        for (c, class) in iter {
            acc = acc.plus(&class.scaled(c))?;
        }
        Some(acc)
    }
}

/// Everything the ring structure needs, derived from the Fujiki table.
#[derive(Debug, Clone, PartialEq)]
pub struct ZRelations {
    /// `C(c₂)/C(q̄)`, so that `c₂ = ratio·q̄ + z`.
    pub c2_over_qbar: Rational,
    /// `q̄`-multiplication factors for input degrees 0, 4, 8.
    pub qbar_factors: [Rational; 3],
    pub c_qbar: Rational,
    pub c_qbar_sq: Rational,
    pub c_z: Rational,
    pub c_qbar_z: Rational,
    pub c_z_sq: Rational,
    pub qbar_cubed: Rational,
    pub qbar_sq_z: Rational,
    pub qbar_z_sq: Rational,
    pub z_cubed: Rational,
    /// `z² = a·q̄² + b·q̄·z`.
    pub z_sq: [Rational; 2],
    pub c2_sq: [Rational; 2],
    pub c4: [Rational; 2],
}

impl ZRelations {
    pub fn c2(&self) -> GradedClass {
        GradedClass::deg4(self.c2_over_qbar.clone(), int(1))
    }

    pub fn c2_squared(&self) -> GradedClass {
        GradedClass::Deg8(self.c2_sq.clone())
    }

    pub fn c4_class(&self) -> GradedClass {
        GradedClass::Deg8(self.c4.clone())
    }

    /// Generalized Fujiki constant of a class in the graded basis.
    pub fn fujiki_constant(&self, class: &GradedClass) -> Rational {
        match class {
            GradedClass::Deg4([a, b]) => a * &self.c_qbar + b * &self.c_z,
            GradedClass::Deg8([a, b]) => a * &self.c_qbar_sq + b * &self.c_qbar_z,
            GradedClass::Top(t) => t.clone(),
        }
    }
}

fn require_equal(equation: &str, lhs: Rational, rhs: Rational) -> Result<(), FujikiError> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(FujikiError::Derivation {
            equation: equation.to_string(),
            lhs,
            rhs,
        })
    }
}

fn divide(equation: &str, numer: Rational, denom: &Rational) -> Result<Rational, FujikiError> {
    if denom.is_zero() {
        Err(FujikiError::Degenerate(equation.to_string()))
    } else {
        Ok(numer / denom)
    }
}

/// Derives the ring relations among `q̄`, `z`, `c₂`, `c₄` from the table.
pub fn derive_z_relations(table: &FujikiTable) -> Result<ZRelations, FujikiError> {
    let m = Monomial::new;
    let c_one = table.require(Monomial::ONE)?;
    let c_qbar = table.require(m(1, 0, 0, 0))?;
    let c_qbar_sq = table.require(m(2, 0, 0, 0))?;
    let qbar_cubed = table.require(m(3, 0, 0, 0))?;
    let c_c2 = table.require(m(0, 1, 0, 0))?;
    let c_qbar_c2 = table.require(m(1, 1, 0, 0))?;
    let qbar_sq_c2 = table.require(m(2, 1, 0, 0))?;
    let c_c2_sq = table.require(m(0, 2, 0, 0))?;
    let qbar_c2_sq = table.require(m(1, 2, 0, 0))?;
    let c_c4 = table.require(m(0, 0, 1, 0))?;
    let c2_cubed = table.require(m(0, 3, 0, 0))?;
    let c2_c4 = table.require(m(0, 1, 1, 0))?;

    let qbar_factors = [
        qbar_factor(table, 0)?,
        qbar_factor(table, 4)?,
        qbar_factor(table, 8)?,
    ];
    require_equal(
        "C(qbar) = factor(0)*C(1)",
        c_qbar.clone(),
        &qbar_factors[0] * &c_one,
    )?;

    let r = divide("c2 = r*qbar + z", c_c2.clone(), &c_qbar)?;
    let c_z = &c_c2 - &r * &c_qbar;
    let c_qbar_z = &c_qbar_c2 - &r * &c_qbar_sq;
    let qbar_sq_z = &qbar_sq_c2 - &r * &qbar_cubed;
    require_equal("qbar^2*z = 0", qbar_sq_z.clone(), int(0))?;

    // qbar*c2^2 = r^2 qbar^3 + 2r qbar^2 z + qbar z^2
    let qbar_z_sq = &qbar_c2_sq - &r * &r * &qbar_cubed - int(2) * &r * &qbar_sq_z;
    // c2^3 = r^3 qbar^3 + 3r^2 qbar^2 z + 3r qbar z^2 + z^3
    let z_cubed = &c2_cubed
        - &r * &r * &r * &qbar_cubed
        - int(3) * &r * &r * &qbar_sq_z
        - int(3) * &r * &qbar_z_sq;

    let c_z_sq = divide(
        "C(qbar*z^2) = factor(8)*C(z^2)",
        qbar_z_sq.clone(),
        &qbar_factors[2],
    )?;
    let c_z_sq_direct = &c_c2_sq - int(2) * &r * &c_qbar_c2 + &r * &r * &c_qbar_sq;
    require_equal(
        "C(z^2) from C(c2^2), C(qbar*c2), C(qbar^2)",
        c_z_sq_direct,
        c_z_sq.clone(),
    )?;

    // A degree-8 class a*qbar^2 + b*qbar*z has C = a*C(qbar^2) + b*C(qbar*z);
    // pairing with z isolates b through qbar*z^2.
    let expand = |c_class: &Rational, z_pairing: Rational, name: &str| {
        let a = divide(name, c_class.clone(), &c_qbar_sq)?;
        let a_part = &a * &qbar_sq_z;
        let b = divide(name, z_pairing - a_part, &qbar_z_sq)?;
        Ok::<_, FujikiError>([a, b])
    };

    let z_sq = expand(&(c_z_sq.clone() - int(0)), z_cubed.clone(), "z^2 expansion")?;
    // c2 * c2^2 = r*qbar*c2^2 + z*c2^2, so z*c2^2 = c2^3 - r*(qbar*c2^2).
    let c2_sq = expand(&c_c2_sq, &c2_cubed - &r * &qbar_c2_sq, "c2^2 expansion")?;
    let c4 = expand(
        &c_c4,
        &c2_c4 - &r * table.require(m(1, 0, 1, 0))?,
        "c4 expansion",
    )?;

    let relations = ZRelations {
        c2_over_qbar: r,
        qbar_factors,
        c_qbar,
        c_qbar_sq,
        c_z,
        c_qbar_z,
        c_z_sq,
        qbar_cubed,
        qbar_sq_z,
        qbar_z_sq,
        z_cubed,
        z_sq,
        c2_sq,
        c4,
    };
    require_equal("C(qbar*z) = 0", relations.c_qbar_z.clone(), int(0))?;
    Ok(relations)
}

/// Product in the ring of Γ-invariant canonical classes.
pub fn multiply(
    a: &GradedClass,
    b: &GradedClass,
    rel: &ZRelations,
) -> Result<GradedClass, FujikiError> {
    use GradedClass::*;
    match (a, b) {
        (Deg4([a0, a1]), Deg4([b0, b1])) => {
            let zz = a1 * b1;
            Ok(Deg8([
                a0 * b0 + &zz * &rel.z_sq[0],
                a0 * b1 + a1 * b0 + &zz * &rel.z_sq[1],
            ]))
        }
        (Deg4([a0, a1]), Deg8([b0, b1])) | (Deg8([b0, b1]), Deg4([a0, a1])) => {
            Ok(Top(a0 * b0 * &rel.qbar_cubed
                + (a0 * b1 + a1 * b0) * &rel.qbar_sq_z
                + a1 * b1 * &rel.qbar_z_sq))
        }
        _ => Err(FujikiError::DegreeOverflow(a.degree(), b.degree())),
    }
}

/// Solves `f(x) = target` for an affine `f` given by a closure.
fn solve_affine(
    name: &str,
    target: &Rational,
    f: impl Fn(&Rational) -> Result<Rational, FujikiError>,
) -> Result<Rational, FujikiError> {
    let at_zero = f(&int(0))?;
    let slope = f(&int(1))? - &at_zero;
    divide(name, target - at_zero, &slope)
}

/// Intersection data of the classes `w_τ` and `v_{τ,τ'}` consumed by
/// [`express_w_v`].
#[derive(Debug, Clone, PartialEq)]
pub struct WvInputs {
    /// `C(w_τ)`.
    pub c_w_tau: Rational,
    /// `C(w_τ·w_τ')`, `τ ≠ τ'`.
    pub c_v_pair: Rational,
    /// `w_τ²·w_τ'`.
    pub w_sq_w: Rational,
    /// `w_τ·w_τ'·w_τ''` for pairwise distinct indices.
    pub w_w_w: Rational,
    /// `c₂·v_{τ,τ'}`.
    pub c2_v_pair: Rational,
}

/// Classes `w = Σ w_τ` and `v = ½Σ_{τ≠τ'} v_{τ,τ'}` in the graded basis.
#[derive(Debug, Clone, PartialEq)]
pub struct WvClasses {
    pub c_w: Rational,
    pub c_v: Rational,
    pub w: GradedClass,
    pub v: GradedClass,
    /// Coefficient of `q̄·z` in `v`.
    pub gamma: Rational,
    /// Coefficient of `z` in `w`.
    pub lambda: Rational,
    pub c2_dot_v: Rational,
    pub w_dot_v: Rational,
    pub w_cubed: Rational,
    pub w_tau_cubed: Rational,
    /// `8q̄ − 3c₂`.
    pub integral_w: GradedClass,
    /// `7c₄ − c₂²`.
    pub integral_3v: GradedClass,
}

/// Expresses `w` and `v` in the graded basis, then recovers `w_τ³` by
/// expanding `w³ = (Σ w_τ)³` over orbit types.
pub fn express_w_v(rel: &ZRelations, inputs: &WvInputs) -> Result<WvClasses, FujikiError> {
    use crate::kummer::{expand_sum_power, TuplePattern, A2_ORDER};

    let n = A2_ORDER;
    let pairs = int((n * (n - 1) / 2) as i64);
    let c_w = int(n as i64) * &inputs.c_w_tau;
    let c_v = &pairs * &inputs.c_v_pair;
    let c2_dot_v = &pairs * &inputs.c2_v_pair;

    let v0 = divide(
        "v = C(v)/C(qbar^2) qbar^2 + gamma qbar z",
        c_v.clone(),
        &rel.c_qbar_sq,
    )?;
    let v_of = |gamma: &Rational| GradedClass::deg8(v0.clone(), gamma.clone());
    let gamma = solve_affine("c2.v", &c2_dot_v, |g| {
        Ok(multiply(&rel.c2(), &v_of(g), rel)?
            .top()
            .cloned()
            .expect("top degree"))
    })?;
    let v = v_of(&gamma);

    // w.v = sum over ordered (t, t', t'') with t' != t'' of 1/2 w_t w_t' w_t''
    let triple = |p: &TuplePattern| -> Option<Rational> {
        match p.shape().as_slice() {
            [3] => None,
            [2, 1] => Some(inputs.w_sq_w.clone()),
            [1, 1, 1] => Some(inputs.w_w_w.clone()),
            _ => None,
        }
    };
    let w_dot_v = expand_sum_power(n, 3, |p| {
        if p.same(1, 2) {
            Some(int(0))
        } else {
            triple(p).map(|t| t / int(2))
        }
    })?;

    let w0 = divide("w = C(w)/C(qbar) qbar + lambda z", c_w.clone(), &rel.c_qbar)?;
    let w_of = |lambda: &Rational| GradedClass::deg4(w0.clone(), lambda.clone());
    let lambda = solve_affine("w.v", &w_dot_v, |l| {
        Ok(multiply(&w_of(l), &v, rel)?
            .top()
            .cloned()
            .expect("top degree"))
    })?;
    let w = w_of(&lambda);

    let w_sq = multiply(&w, &w, rel)?;
    let w_cubed = multiply(&w_sq, &w, rel)?
        .top()
        .cloned()
        .expect("top degree");
    // Orbit types other than (3) are known; the (3) type occurs n times.
    let rest = expand_sum_power(n, 3, |p| match p.shape().as_slice() {
        [3] => Some(int(0)),
        _ => triple(p),
    })?;
    let w_tau_cubed = (&w_cubed - rest) / int(n as i64);

    let c2 = rel.c2();
    let integral_w =
        GradedClass::linear_combination(&[(int(8), &GradedClass::qbar()), (int(-3), &c2)])
            .expect("same degree");
    let integral_3v =
        GradedClass::linear_combination(&[(int(7), &rel.c4_class()), (int(-1), &rel.c2_squared())])
            .expect("same degree");

    Ok(WvClasses {
        c_w,
        c_v,
        w,
        v,
        gamma,
        lambda,
        c2_dot_v,
        w_dot_v,
        w_cubed,
        w_tau_cubed,
        integral_w,
        integral_3v,
    })
}

/// Further intersection numbers of a single `w_τ`.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxiliaryValues {
    pub c_w_sq: Rational,
    pub c_w_tau_sq: Rational,
    pub c4_w: Rational,
    pub c4_w_tau: Rational,
    pub qbar_w_tau_sq: Rational,
    pub qbar_w_tau_w_tau2: Rational,
    pub c_v_pair: Rational,
}

pub fn auxiliary_values(
    rel: &ZRelations,
    wv: &WvClasses,
    inputs: &WvInputs,
) -> Result<AuxiliaryValues, FujikiError> {
    use crate::kummer::{expand_sum_power, A2_ORDER};

    let n = A2_ORDER;
    let c_w_sq = rel.fujiki_constant(&multiply(&wv.w, &wv.w, rel)?);
    // C(w^2) = n C(w_t^2) + n(n-1) C(w_t w_t')
    let known = expand_sum_power(n, 2, |p| match p.shape().as_slice() {
        [2] => Some(int(0)),
        [1, 1] => Some(inputs.c_v_pair.clone()),
        _ => None,
    })?;
    let c_w_tau_sq = (&c_w_sq - known) / int(n as i64);
    let c4_w = multiply(&rel.c4_class(), &wv.w, rel)?
        .top()
        .cloned()
        .expect("top degree");
    let c4_w_tau = &c4_w / int(n as i64);
    let factor8 = &rel.qbar_factors[2];
    Ok(AuxiliaryValues {
        qbar_w_tau_sq: factor8 * &c_w_tau_sq,
        qbar_w_tau_w_tau2: factor8 * &inputs.c_v_pair,
        c_w_sq,
        c_w_tau_sq,
        c4_w,
        c4_w_tau,
        c_v_pair: inputs.c_v_pair.clone(),
    })
}

impl ZRelations {
    /// `∫ q̄·z·x` helper used by certificates: the top integral of `q̄·x` for a
    /// degree-8 `x`, and so on, all routed through [`multiply`].
    pub fn integrate(&self, factors: &[GradedClass]) -> Result<Rational, FujikiError> {
        let mut iter = factors.iter();
        let mut acc = iter
            .next()
            .cloned()
            .unwrap_or(GradedClass::Top(Rational::one()));
        for f in iter {
            acc = multiply(&acc, f, self)?;
        }
        acc.top()
            .cloned()
            .ok_or(FujikiError::BadDegree(acc.degree()))
    }
}
