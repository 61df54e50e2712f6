//! Labels of the Γ-invariant classes `w_τ`, `v_{τ,τ'}`, `d_{τ,α}` and the
//! certificates built from their intersection numbers.
//!
//! `A₄ = (Z/4)⁴` stands for the 4-torsion of the abelian surface, `A₂ ⊂ A₄`
//! for the 2-torsion (all coordinates even), and `A_{2,τ} = {α : 2α = τ}`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exact::int;
use crate::fujiki::{AuxiliaryValues, FujikiError, GradedClass, WvClasses, ZRelations};
use crate::{ExactMatrix, Rational};

/// `|A₂|`, the number of classes `w_τ`.
pub const A2_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KummerError {
    #[error("{0} is not a 2-torsion point")]
    NotTwoTorsion(TorsionPoint),
    #[error("{alpha} does not lie over {tau}")]
    NotInFiber {
        tau: TorsionPoint,
        alpha: TorsionPoint,
    },
    #[error("v-label needs two distinct indices, got {0} twice")]
    RepeatedIndex(TorsionPoint),
    #[error("no intersection number for the product {0}")]
    UnsupportedProduct(String),
    #[error("no value supplied for tuple pattern {0:?}")]
    UnknownPattern(Vec<usize>),
    #[error("consistency check failed: {equation} ({lhs} != {rhs})")]
    Inconsistent {
        equation: String,
        lhs: Rational,
        rhs: Rational,
    },
    #[error("{0}")]
    Fujiki(String),
}

impl From<FujikiError> for KummerError {
    fn from(e: FujikiError) -> Self {
        KummerError::Fujiki(e.to_string())
    }
}

/// A point of `(Z/4)⁴`, coordinates kept in `0..4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TorsionPoint(pub [u8; 4]);

impl TorsionPoint {
    pub const ZERO: TorsionPoint = TorsionPoint([0; 4]);

    pub fn new(coords: [i64; 4]) -> Self {
        TorsionPoint(coords.map(|c| c.rem_euclid(4) as u8))
    }

    pub fn double(self) -> Self {
        self + self
    }

    pub fn is_two_torsion(self) -> bool {
        self.0.iter().all(|c| c % 2 == 0)
    }

    /// All 256 points in lexicographic order.
    pub fn all_a4() -> Vec<TorsionPoint> {
        (0..256u32)
            .map(|n| {
                TorsionPoint([
                    (n >> 6) as u8 & 3,
                    (n >> 4) as u8 & 3,
                    (n >> 2) as u8 & 3,
                    n as u8 & 3,
                ])
            })
            .collect()
    }

    /// The 16 points of `A₂` in lexicographic order.
    pub fn all_a2() -> Vec<TorsionPoint> {
        Self::all_a4()
            .into_iter()
            .filter(|p| p.is_two_torsion())
            .collect()
    }

    /// `A_{2,τ}` in lexicographic order.
    pub fn fiber(tau: TorsionPoint) -> Result<Vec<TorsionPoint>, KummerError> {
        if !tau.is_two_torsion() {
            return Err(KummerError::NotTwoTorsion(tau));
        }
        Ok(Self::all_a4()
            .into_iter()
            .filter(|a| a.double() == tau)
            .collect())
    }

    /// Position of a 2-torsion point in [`TorsionPoint::all_a2`].
    pub fn a2_index(self) -> Option<usize> {
        if !self.is_two_torsion() {
            return None;
        }
        let [a, b, c, d] = self.0.map(|x| (x / 2) as usize);
        Some(8 * a + 4 * b + 2 * c + d)
    }
}

impl std::ops::Add for TorsionPoint {
    type Output = TorsionPoint;

    fn add(self, other: Self) -> Self {
        TorsionPoint(std::array::from_fn(|i| (self.0[i] + other.0[i]) % 4))
    }
}

impl std::ops::Neg for TorsionPoint {
    type Output = TorsionPoint;

    fn neg(self) -> Self {
        TorsionPoint(self.0.map(|c| (4 - c) % 4))
    }
}

impl fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// Label of one of the invariant classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    W(TorsionPoint),
    /// Unordered pair, stored with the smaller point first.
    V(TorsionPoint, TorsionPoint),
    D {
        tau: TorsionPoint,
        alpha: TorsionPoint,
    },
}

impl Label {
    pub fn w(tau: TorsionPoint) -> Result<Self, KummerError> {
        if !tau.is_two_torsion() {
            return Err(KummerError::NotTwoTorsion(tau));
        }
        Ok(Label::W(tau))
    }

    pub fn v(a: TorsionPoint, b: TorsionPoint) -> Result<Self, KummerError> {
        for p in [a, b] {
            if !p.is_two_torsion() {
                return Err(KummerError::NotTwoTorsion(p));
            }
        }
        if a == b {
            return Err(KummerError::RepeatedIndex(a));
        }
        Ok(Label::V(a.min(b), a.max(b)))
    }

    pub fn d(tau: TorsionPoint, alpha: TorsionPoint) -> Result<Self, KummerError> {
        if !tau.is_two_torsion() {
            return Err(KummerError::NotTwoTorsion(tau));
        }
        if alpha.double() != tau {
            return Err(KummerError::NotInFiber { tau, alpha });
        }
        Ok(Label::D { tau, alpha })
    }

    pub fn degree(&self) -> u32 {
        match self {
            Label::W(_) => 4,
            Label::V(..) => 8,
            Label::D { .. } => 6,
        }
    }

    pub fn all_w() -> Vec<Label> {
        TorsionPoint::all_a2().into_iter().map(Label::W).collect()
    }

    pub fn all_v() -> Vec<Label> {
        let pts = TorsionPoint::all_a2();
        let mut out = Vec::new();
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                out.push(Label::V(*a, *b));
            }
        }
        out
    }

    /// The 256 `d`-labels, grouped by `τ` in `A₂` order.
    pub fn all_d() -> Vec<Label> {
        TorsionPoint::all_a2()
            .into_iter()
            .flat_map(|tau| {
                TorsionPoint::fiber(tau)
                    .expect("two-torsion")
                    .into_iter()
                    .map(move |alpha| Label::D { tau, alpha })
            })
            .collect()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::W(t) => write!(f, "w{t}"),
            Label::V(a, b) => write!(f, "v{a}{b}"),
            Label::D { tau, alpha } => write!(f, "d{tau}{alpha}"),
        }
    }
}

/// Elements of `Γ = A₄` (translations) and of `G = A₂ ⋊ {±1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElement {
    Translation(TorsionPoint),
    /// `x ↦ ±x + θ` with `θ ∈ A₂`.
    Affine {
        theta: TorsionPoint,
        negate: bool,
    },
}

impl GroupElement {
    pub fn affine(theta: TorsionPoint, negate: bool) -> Result<Self, KummerError> {
        if !theta.is_two_torsion() {
            return Err(KummerError::NotTwoTorsion(theta));
        }
        Ok(GroupElement::Affine { theta, negate })
    }

    pub fn gamma_generators() -> Vec<GroupElement> {
        (0..4)
            .map(|i| {
                let mut e = [0i64; 4];
                e[i] = 1;
                GroupElement::Translation(TorsionPoint::new(e))
            })
            .collect()
    }

    pub fn g_generators() -> Vec<GroupElement> {
        let mut out: Vec<_> = (0..4)
            .map(|i| {
                let mut e = [0i64; 4];
                e[i] = 2;
                GroupElement::Affine {
                    theta: TorsionPoint::new(e),
                    negate: false,
                }
            })
            .collect();
        out.push(GroupElement::Affine {
            theta: TorsionPoint::ZERO,
            negate: true,
        });
        out
    }

    pub fn all_gamma() -> Vec<GroupElement> {
        TorsionPoint::all_a4()
            .into_iter()
            .map(GroupElement::Translation)
            .collect()
    }

    pub fn all_g() -> Vec<GroupElement> {
        [false, true]
            .into_iter()
            .flat_map(|negate| {
                TorsionPoint::all_a2()
                    .into_iter()
                    .map(move |theta| GroupElement::Affine { theta, negate })
            })
            .collect()
    }

    pub fn is_odd(&self) -> bool {
        matches!(self, GroupElement::Affine { negate: true, .. })
    }
}

/// Image of a label under a group element.
pub fn act(g: GroupElement, label: Label) -> Label {
    match g {
        GroupElement::Translation(eps) => {
            let shift = eps.double();
            match label {
                Label::W(t) => Label::W(t + shift),
                Label::V(a, b) => {
                    let (a, b) = (a + shift, b + shift);
                    Label::V(a.min(b), a.max(b))
                }
                Label::D { tau, alpha } => Label::D {
                    tau: tau + shift,
                    alpha: alpha + eps,
                },
            }
        }
        GroupElement::Affine { theta, negate } => match label {
            Label::D { tau, alpha } => Label::D {
                tau,
                alpha: if negate { -alpha } else { alpha } + theta,
            },
            other => other,
        },
    }
}

pub fn orbit(label: Label, group: &[GroupElement]) -> BTreeSet<Label> {
    group.iter().map(|g| act(*g, label)).collect()
}

/// Triple intersections of the classes `w_τ`.
#[derive(Debug, Clone, PartialEq)]
pub struct WTriple {
    pub self_cube: Rational,
    pub double: Rational,
    pub distinct: Rational,
}

impl WTriple {
    pub fn value(&self, a: TorsionPoint, b: TorsionPoint, c: TorsionPoint) -> &Rational {
        let distinct = BTreeSet::from([a, b, c]).len();
        match distinct {
            1 => &self.self_cube,
            2 => &self.double,
            _ => &self.distinct,
        }
    }
}

/// Top-degree intersection numbers of products of labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelIntersections {
    pub triple: WTriple,
    pub d_same: Rational,
    pub d_same_tau: Rational,
    pub d_cross: Rational,
}

impl LabelIntersections {
    pub fn pair(&self, labels: &[Label]) -> Result<Rational, KummerError> {
        use Label::*;
        match labels {
            [W(a), W(b), W(c)] => Ok(self.triple.value(*a, *b, *c).clone()),
            [W(a), V(b, c)] | [V(b, c), W(a)] => Ok(self.triple.value(*a, *b, *c).clone()),
            [D { tau: t1, alpha: a1 }, D { tau: t2, alpha: a2 }] => Ok(if t1 != t2 {
                self.d_cross.clone()
            } else if a1 == a2 {
                self.d_same.clone()
            } else {
                self.d_same_tau.clone()
            }),
            _ => Err(KummerError::UnsupportedProduct(
                labels
                    .iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join("*"),
            )),
        }
    }

    /// Checks `pair(g·x) = pair(x)` over all supported products and the given
    /// elements. Returns the number of products compared.
    pub fn check_equivariance(&self, group: &[GroupElement]) -> Result<usize, KummerError> {
        let ws = Label::all_w();
        let mut products: Vec<Vec<Label>> = Vec::new();
        for a in &ws {
            for b in &ws {
                for c in &ws {
                    products.push(vec![*a, *b, *c]);
                }
            }
            for v in Label::all_v() {
                products.push(vec![*a, v]);
            }
        }
        let ds = Label::all_d();
        for a in &ds {
            for b in &ds {
                products.push(vec![*a, *b]);
            }
        }
        for g in group {
            for p in &products {
                let moved: Vec<Label> = p.iter().map(|l| act(*g, *l)).collect();
                let (lhs, rhs) = (self.pair(&moved)?, self.pair(p)?);
                if lhs != rhs {
                    return Err(KummerError::Inconsistent {
                        equation: format!("{g:?} preserves {}", Label::to_string(&p[0])),
                        lhs,
                        rhs,
                    });
                }
            }
        }
        Ok(products.len() * group.len())
    }
}

/// Equality pattern of a tuple, as a restricted growth string: position `i`
/// carries the index of its block, blocks numbered by first occurrence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TuplePattern(pub Vec<usize>);

impl TuplePattern {
    pub fn from_tuple<T: PartialEq>(items: &[T]) -> Self {
        let mut firsts: Vec<&T> = Vec::new();
        let blocks = items
            .iter()
            .map(|x| match firsts.iter().position(|y| *y == x) {
                Some(i) => i,
                None => {
                    firsts.push(x);
                    firsts.len() - 1
                }
            })
            .collect();
        TuplePattern(blocks)
    }

    pub fn block_count(&self) -> usize {
        self.0.iter().max().map_or(0, |m| m + 1)
    }

    /// Block sizes in decreasing order.
    pub fn shape(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.block_count()];
        for b in &self.0 {
            sizes[*b] += 1;
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    pub fn same(&self, i: usize, j: usize) -> bool {
        self.0[i] == self.0[j]
    }

    /// All set partitions of `n` positions.
    pub fn all(n: usize) -> Vec<TuplePattern> {
        fn grow(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<TuplePattern>) {
            if prefix.len() == n {
                out.push(TuplePattern(prefix.clone()));
                return;
            }
            let next = prefix.iter().max().map_or(0, |m| m + 1);
            for b in 0..=next {
                prefix.push(b);
                grow(prefix, n, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        grow(&mut Vec::new(), n, &mut out);
        out
    }

    /// Number of tuples in `{0..labels}ⁿ` with this pattern.
    pub fn tuple_count(&self, labels: usize) -> usize {
        (0..self.block_count())
            .map(|k| labels.saturating_sub(k))
            .product()
    }
}

/// `Σ_{(i₁..iₙ)} f(i₁..iₙ)` over all tuples of `labels` indices, where `f`
/// depends only on the equality pattern. Grouped by set partition.
pub fn expand_sum_power(
    labels: usize,
    n: usize,
    pattern: impl Fn(&TuplePattern) -> Option<Rational>,
) -> Result<Rational, KummerError> {
    let mut total = int(0);
    for p in TuplePattern::all(n) {
        let count = p.tuple_count(labels);
        if count == 0 {
            continue;
        }
        let value = pattern(&p).ok_or_else(|| KummerError::UnknownPattern(p.0.clone()))?;
        total += value * int(count as i64);
    }
    Ok(total)
}

/// Same sum as [`expand_sum_power`], by enumerating every tuple.
pub fn enumerate_sum_power(
    labels: usize,
    n: usize,
    pattern: impl Fn(&TuplePattern) -> Option<Rational>,
) -> Result<Rational, KummerError> {
    let mut total = int(0);
    let mut tuple = vec![0usize; n];
    let size = labels.pow(n as u32);
    for mut code in 0..size {
        for slot in tuple.iter_mut() {
            *slot = code % labels;
            code /= labels;
        }
        let p = TuplePattern::from_tuple(&tuple);
        total += pattern(&p).ok_or_else(|| KummerError::UnknownPattern(p.0.clone()))?;
    }
    Ok(total)
}

fn require_equal(equation: &str, lhs: Rational, rhs: Rational) -> Result<(), KummerError> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(KummerError::Inconsistent {
            equation: equation.to_string(),
            lhs,
            rhs,
        })
    }
}

/// Intersection numbers of `z` against products of the `w_τ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZWValues {
    pub z_w_tau_sq: Rational,
    pub z_w_tau_w_tau2: Rational,
    pub c2_w_tau_sq: Rational,
    pub c2_w_tau_w_tau2: Rational,
    /// `w·w_τ·w_τ'` computed from the class of `w`.
    pub w_w_tau_w_tau2: Rational,
}

pub fn z_w_values(
    rel: &ZRelations,
    wv: &WvClasses,
    aux: &AuxiliaryValues,
    triple: &WTriple,
) -> Result<ZWValues, KummerError> {
    let n = A2_ORDER as i64;
    let [w0, lambda] = match &wv.w {
        GradedClass::Deg4(c) => c.clone(),
        _ => unreachable!("w has degree 4"),
    };
    if lambda.is_zero() {
        return Err(KummerError::Inconsistent {
            equation: "z-coefficient of w is nonzero".into(),
            lhs: lambda,
            rhs: int(0),
        });
    }
    let r = &rel.c2_over_qbar;
    let w_w_tau_sq = &triple.self_cube + int(n - 1) * &triple.double;
    let z_w_tau_sq = (&w_w_tau_sq - &w0 * &aux.qbar_w_tau_sq) / &lambda;
    let c2_v_pair = &wv.c2_dot_v / int(n * (n - 1) / 2);
    let z_w_tau_w_tau2 = &c2_v_pair - r * &aux.qbar_w_tau_w_tau2;
    let w_w_tau_w_tau2 = &w0 * &aux.qbar_w_tau_w_tau2 + &lambda * &z_w_tau_w_tau2;
    let expected = int(2) * &triple.double + int(n - 2) * &triple.distinct;
    require_equal(
        "w.(w_t w_t') from the class of w",
        w_w_tau_w_tau2.clone(),
        expected,
    )?;
    Ok(ZWValues {
        c2_w_tau_sq: r * &aux.qbar_w_tau_sq + &z_w_tau_sq,
        c2_w_tau_w_tau2: c2_v_pair,
        z_w_tau_sq,
        z_w_tau_w_tau2,
        w_w_tau_w_tau2,
    })
}

/// Pairing matrix of `{c₂, w_τ}` against degree-8 test classes.
#[derive(Debug, Clone)]
pub struct Deg4Certificate {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub matrix: ExactMatrix,
    pub rank: usize,
    /// Relations among the rows, empty when they are independent.
    pub left_kernel: Vec<Vec<Rational>>,
    pub zw: ZWValues,
    /// Coefficient of `β_τ` in `u·(w_τ² − w_τ'²)` for `u = Σ β_σ w_σ`.
    pub gap: Rational,
    /// Whether every ordered pair `τ ≠ τ'` gives the vector `gap·(e_τ − e_τ')`.
    pub gap_uniform: bool,
}

pub fn deg4_independence_certificate(
    rel: &ZRelations,
    wv: &WvClasses,
    aux: &AuxiliaryValues,
    triple: &WTriple,
) -> Result<Deg4Certificate, KummerError> {
    let n = A2_ORDER;
    let pts = TorsionPoint::all_a2();
    let zw = z_w_values(rel, wv, aux, triple)?;
    let qbar_sq = GradedClass::deg8(int(1), int(0));
    let qbar_z = GradedClass::deg8(int(0), int(1));
    let c2 = rel.c2();
    let per_tau = |total: Rational| total / int(n as i64);

    let mut col_labels = vec!["qbar^2".to_string(), "qbar*z".to_string()];
    let mut pairs_idx = Vec::new();
    for s in &pts {
        col_labels.push(format!("w{s}^2"));
    }
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            col_labels.push(format!("w{a}*w{b}"));
            pairs_idx.push((*a, *b));
        }
    }
    let mut row_labels = vec!["c2".to_string()];
    row_labels.extend(pts.iter().map(|t| format!("w{t}")));

    let mut rows = Vec::new();
    let mut c2_row = vec![
        rel.integrate(&[c2.clone(), qbar_sq.clone()])?,
        rel.integrate(&[c2.clone(), qbar_z.clone()])?,
    ];
    c2_row.extend(std::iter::repeat_n(zw.c2_w_tau_sq.clone(), n));
    c2_row.extend(std::iter::repeat_n(
        zw.c2_w_tau_w_tau2.clone(),
        pairs_idx.len(),
    ));
    rows.push(c2_row);
    let w_qbar_sq = per_tau(rel.integrate(&[wv.w.clone(), qbar_sq])?);
    let w_qbar_z = per_tau(rel.integrate(&[wv.w.clone(), qbar_z])?);
    for t in &pts {
        let mut row = vec![w_qbar_sq.clone(), w_qbar_z.clone()];
        row.extend(pts.iter().map(|s| triple.value(*t, *s, *s).clone()));
        row.extend(
            pairs_idx
                .iter()
                .map(|(a, b)| triple.value(*t, *a, *b).clone()),
        );
        rows.push(row);
    }
    let matrix = ExactMatrix::from_rows(rows).expect("rectangular");
    let rank = matrix.rank();
    let left_kernel = matrix.transpose().kernel_basis();

    let beta_vector = |t: TorsionPoint, t2: TorsionPoint| -> Vec<Rational> {
        pts.iter()
            .map(|s| triple.value(*s, t, t) - triple.value(*s, t2, t2))
            .collect()
    };
    let gap = beta_vector(pts[0], pts[1])[0].clone();
    let mut gap_uniform = true;
    for (i, t) in pts.iter().enumerate() {
        for (j, t2) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            let v = beta_vector(*t, *t2);
            gap_uniform &= v.iter().enumerate().all(|(k, x)| {
                *x == if k == i {
                    gap.clone()
                } else if k == j {
                    -gap.clone()
                } else {
                    int(0)
                }
            });
        }
    }
    Ok(Deg4Certificate {
        row_labels,
        col_labels,
        matrix,
        rank,
        left_kernel,
        zw,
        gap,
        gap_uniform,
    })
}

/// Pairing matrix of `{q̄·c₂, q̄·w_τ}` against `{c₂, w_σ}`.
#[derive(Debug, Clone)]
pub struct QbarInjectivity {
    pub matrix: ExactMatrix,
    pub rank: usize,
    pub kernel: Vec<Vec<Rational>>,
}

pub fn qbar_multiplication_injectivity(
    rel: &ZRelations,
    wv: &WvClasses,
    aux: &AuxiliaryValues,
) -> Result<QbarInjectivity, KummerError> {
    let n = A2_ORDER;
    let qbar = GradedClass::qbar();
    let c2 = rel.c2();
    let corner = rel.integrate(&[qbar.clone(), c2.clone(), c2.clone()])?;
    let edge = rel.integrate(&[qbar, c2, wv.w.clone()])? / int(n as i64);
    let matrix = ExactMatrix::from_fn(n + 1, n + 1, |i, j| match (i, j) {
        (0, 0) => corner.clone(),
        (0, _) | (_, 0) => edge.clone(),
        _ if i == j => aux.qbar_w_tau_sq.clone(),
        _ => aux.qbar_w_tau_w_tau2.clone(),
    });
    let rank = matrix.rank();
    let kernel = matrix.kernel_basis();
    Ok(QbarInjectivity {
        matrix,
        rank,
        kernel,
    })
}

/// The `256 × 256` intersection matrix of the classes `d_{τ,α}`.
#[derive(Debug, Clone)]
pub struct DGramCertificate {
    pub labels: Vec<Label>,
    pub matrix: ExactMatrix,
    /// `d_{τ,α}·d_{τ',α'}` for `τ ≠ τ'`, derived assuming it is constant.
    pub d_cross: Rational,
    pub rank: usize,
    pub kernel: Vec<Vec<Rational>>,
    /// `(Σ_α d_{τ,α})²`.
    pub block_sum_square: Rational,
    /// All `1_τ − 1_τ'` lie in the kernel.
    pub differences_in_kernel: bool,
    /// The kernel is spanned by those differences.
    pub kernel_is_differences: bool,
}

pub fn d_gram(d_same: &Rational, d_same_tau: &Rational) -> DGramCertificate {
    let n = A2_ORDER as i64;
    // Σ_α d_{τ,α} does not depend on τ, so its product with d_{τ',α'} is the
    // row sum inside the τ' block, spread over 16 equal cross terms.
    let block_row_sum = d_same + int(n - 1) * d_same_tau;
    let d_cross = &block_row_sum / int(n);
    let labels = Label::all_d();
    let entries = LabelIntersections {
        triple: WTriple {
            self_cube: int(0),
            double: int(0),
            distinct: int(0),
        },
        d_same: d_same.clone(),
        d_same_tau: d_same_tau.clone(),
        d_cross: d_cross.clone(),
    };
    let size = labels.len();
    let matrix = ExactMatrix::from_fn(size, size, |i, j| {
        entries.pair(&[labels[i], labels[j]]).expect("d-labels")
    });
    let echelon = matrix.rref();
    let rank = echelon.rank();
    let kernel = echelon.kernel_basis();
    let block_sum_square = int(n) * &block_row_sum;

    let block = |k: usize| -> Vec<Rational> {
        (0..size)
            .map(|i| int(if i / A2_ORDER == k { 1 } else { 0 }))
            .collect()
    };
    let differences: Vec<Vec<Rational>> = (1..A2_ORDER)
        .map(|k| block(0).iter().zip(block(k)).map(|(a, b)| a - b).collect())
        .collect();
    let differences_in_kernel = differences.iter().all(|v| {
        matrix
            .mul_vec(v)
            .expect("square")
            .iter()
            .all(|x| x.is_zero())
    });
    let mut stacked = kernel.clone();
    stacked.extend(differences.iter().cloned());
    let kernel_is_differences = !kernel.is_empty()
        && ExactMatrix::from_rows(stacked).expect("rectangular").rank() == kernel.len()
        && kernel.len() == differences.len();
    DGramCertificate {
        labels,
        matrix,
        d_cross,
        rank,
        kernel,
        block_sum_square,
        differences_in_kernel,
        kernel_is_differences,
    }
}
