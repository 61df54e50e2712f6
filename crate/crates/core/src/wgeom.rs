//! The K3^[2]-type fixed component `W_τ`, its divisor `V = W_τ ∩ W_τ'`, and
//! restrictions of classes from the sixfold to `H⁴(W_τ)`.
//!
//! `H²(W)` has basis `λ⁺ᵢ, λ⁻ᵢ` (i = 1..3), `s_α` (α ∈ A_{2,τ}) and `δ`.
//! The Kummer-type `H²` has basis `λ̃⁺ᵢ, λ̃⁻ᵢ, ξ`.

use num_traits::Zero;
use thiserror::Error;

use crate::exact::{int, LinAlgError, LinearSolution};
use crate::fujiki::{evaluate_fujiki, FujikiError};
use crate::kummer::{KummerError, TorsionPoint};
use crate::quadspace::{K3TwoConstants, QuadError, Sym2Vector};
use crate::{ExactMatrix, ExactQuadSpace, Rational};

type Sym2 = Sym2Vector<Rational>;

/// Rank of each of the hyperbolic parts `λ⁺`, `λ⁻`.
pub const LAMBDA_RANK: usize = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Kummer(#[from] KummerError),
    #[error(transparent)]
    Fujiki(#[from] FujikiError),
    #[error("{0} must be a nonzero 2-torsion point")]
    BadShift(TorsionPoint),
    #[error("class does not lie in the span of the 19 invariant vectors")]
    NotInSpan,
    #[error("linear system for {0} has no unique solution")]
    NotUnique(String),
    #[error("restriction to V is undefined on {0}")]
    NoRestriction(String),
    #[error("consistency check failed: {equation} ({lhs} != {rhs})")]
    Inconsistent {
        equation: String,
        lhs: Rational,
        rhs: Rational,
    },
}

fn require_equal(equation: &str, lhs: Rational, rhs: Rational) -> Result<(), GeometryError> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(GeometryError::Inconsistent {
            equation: equation.to_string(),
            lhs,
            rhs,
        })
    }
}

fn unique(name: &str, solution: LinearSolution<Rational>) -> Result<Vec<Rational>, GeometryError> {
    solution
        .unique()
        .ok_or_else(|| GeometryError::NotUnique(name.to_string()))
}

/// Numerical input describing `W`, `V` and the restriction maps.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometryInputs {
    /// `q(λ̃⁺ᵢ) = −q(λ̃⁻ᵢ)` on the Kummer-type `H²`.
    pub kummer_lambda_square: Rational,
    /// `q(ξ)`.
    pub xi_square: Rational,
    /// `q_W(ι*x, ι*y) = scale · q(x, y)`.
    pub restriction_scale: Rational,
    /// `q_W(s_α) = q_W(δ)`.
    pub exceptional_square: Rational,
    /// `ι*ξ = a·δ + b·Σ s_α`.
    pub xi_restriction_delta: Rational,
    pub xi_restriction_s: Rational,
    /// `δ|_V = c · Σ` (classes over `τ'`).
    pub delta_restriction_v: Rational,
    /// Square of each exceptional curve class on `V`.
    pub v_curve_square: Rational,
    /// `∫_W v·δ²`.
    pub v_delta_square: Rational,
    /// `c₂(V)`.
    pub k3_euler: Rational,
    /// `c₂` of the normal bundle of `V`.
    pub normal_c2_degree: Rational,
    /// Number of points in `W_τ ∩ W_τ' ∩ W_τ''`.
    pub triple_point_count: Rational,
    /// `∫_V c₂` of the sixfold.
    pub c2_degree_on_v: Rational,
    /// `c₄·w_τ`.
    pub c4_w_tau: Rational,
}

/// `H²(W_τ)` with the 19 Γ-invariant vectors of `Sym²`.
#[derive(Debug, Clone)]
pub struct WLattice {
    pub tau: TorsionPoint,
    pub fiber: Vec<TorsionPoint>,
    pub space: ExactQuadSpace,
    pub inputs: GeometryInputs,
    /// The 19 vectors in the order `q̄_W, δ², Σs², S_θ (θ ≠ 0), δ·Σs`.
    pub basis19: Vec<Sym2>,
    pub basis19_labels: Vec<String>,
    /// Nonzero `θ ∈ A₂` in the order used by `basis19`.
    pub thetas: Vec<TorsionPoint>,
}

impl WLattice {
    pub fn new(
        tau: TorsionPoint,
        inputs: GeometryInputs,
        k3two: K3TwoConstants<Rational>,
    ) -> Result<Self, GeometryError> {
        let fiber = TorsionPoint::fiber(tau)?;
        let mut labels = Vec::new();
        let mut squares = Vec::new();
        let lam = &inputs.restriction_scale * &inputs.kummer_lambda_square;
        for i in 1..=LAMBDA_RANK {
            labels.push(format!("l+{i}"));
            squares.push(lam.clone());
        }
        for i in 1..=LAMBDA_RANK {
            labels.push(format!("l-{i}"));
            squares.push(-lam.clone());
        }
        for a in &fiber {
            labels.push(format!("s{a}"));
            squares.push(inputs.exceptional_square.clone());
        }
        labels.push("delta".into());
        squares.push(inputs.exceptional_square.clone());
        let space = ExactQuadSpace::diagonal(labels, squares)?.with_k3two(k3two);
        let thetas: Vec<TorsionPoint> = TorsionPoint::all_a2()
            .into_iter()
            .filter(|t| *t != TorsionPoint::ZERO)
            .collect();
        let mut lattice = WLattice {
            tau,
            fiber,
            space,
            inputs,
            basis19: Vec::new(),
            basis19_labels: Vec::new(),
            thetas,
        };
        let rank = lattice.rank();
        let delta = lattice.delta();
        let mut basis = vec![
            lattice.space.qbar_dual()?,
            Sym2::monomial(rank, delta, delta),
        ];
        let mut names = vec!["qbar_W".to_string(), "delta^2".to_string()];
        basis.push(lattice.s_pattern(TorsionPoint::ZERO, |i| lattice.unit(i)));
        names.push("sum s^2".into());
        for t in lattice.thetas.clone() {
            basis.push(lattice.s_pattern(t, |i| lattice.unit(i)));
            names.push(format!("S{t}"));
        }
        let mut ds = Sym2::zero(rank);
        for i in 0..lattice.fiber.len() {
            ds.add_term(delta, lattice.s(i), int(1));
        }
        basis.push(ds);
        names.push("delta*sum s".into());
        lattice.basis19 = basis;
        lattice.basis19_labels = names;
        Ok(lattice)
    }

    pub fn rank(&self) -> usize {
        self.space.rank()
    }

    pub fn s(&self, fiber_index: usize) -> usize {
        2 * LAMBDA_RANK + fiber_index
    }

    pub fn delta(&self) -> usize {
        2 * LAMBDA_RANK + self.fiber.len()
    }

    pub fn unit(&self, index: usize) -> Vec<Rational> {
        self.space.basis_vector(index)
    }

    fn fiber_index(&self, alpha: TorsionPoint) -> usize {
        self.fiber
            .iter()
            .position(|a| *a == alpha)
            .expect("point in fiber")
    }

    /// `Σ_α x_α·x_{α+θ}` for classes `x_α` given by `class(s-index)`.
    pub fn s_pattern(&self, theta: TorsionPoint, class: impl Fn(usize) -> Vec<Rational>) -> Sym2 {
        let mut out = Sym2::zero(self.rank());
        for (i, a) in self.fiber.iter().enumerate() {
            let j = self.fiber_index(*a + theta);
            let x = class(self.s(i));
            let y = class(self.s(j));
            out.add_scaled(&Sym2::product(&x, &y).expect("same rank"), &int(1));
        }
        out
    }

    /// `s'_α = 4s_α − δ`.
    pub fn s_prime(&self, s_index: usize) -> Vec<Rational> {
        let mut v = self
            .unit(s_index)
            .into_iter()
            .map(|x| x * int(4))
            .collect::<Vec<_>>();
        v[self.delta()] -= int(1);
        v
    }

    /// `Σ_α s'_α·s'_{α+θ}`.
    pub fn s_prime_pattern(&self, theta: TorsionPoint) -> Sym2 {
        self.s_pattern(theta, |i| self.s_prime(i))
    }

    pub fn pair(&self, a: &Sym2, b: &Sym2) -> Result<Rational, GeometryError> {
        Ok(self.space.sym2_pair(a, b)?)
    }

    pub fn gram19(&self) -> Result<ExactMatrix, GeometryError> {
        Ok(self.space.sym2_gram(&self.basis19)?)
    }

    /// Pairings of a class against the 19 vectors.
    pub fn pairings19(&self, x: &Sym2) -> Result<Vec<Rational>, GeometryError> {
        self.basis19.iter().map(|b| self.pair(b, x)).collect()
    }

    /// Coordinates of a class in the 19 vectors.
    pub fn decompose19(&self, x: &Sym2) -> Result<Vec<Rational>, GeometryError> {
        let columns: Vec<Vec<Rational>> = self.basis19.iter().map(|b| b.dense()).collect();
        let rows = columns[0].len();
        let a = ExactMatrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone());
        match a.solve(&x.dense())? {
            LinearSolution::Unique(v) => Ok(v),
            LinearSolution::Inconsistent(_) => Err(GeometryError::NotInSpan),
            LinearSolution::Underdetermined { .. } => {
                Err(GeometryError::NotUnique("decompose19".into()))
            }
        }
    }

    pub fn combine19(&self, coords: &[Rational]) -> Sym2 {
        Sym2::combination(self.rank(), coords.iter().cloned().zip(self.basis19.iter()))
    }

    /// The Kummer-type `H²` with basis `λ̃⁺, λ̃⁻, ξ`.
    pub fn kummer_h2(&self) -> Result<ExactQuadSpace, GeometryError> {
        let mut labels = Vec::new();
        let mut squares = Vec::new();
        for sign in ["+", "-"] {
            for i in 1..=LAMBDA_RANK {
                labels.push(format!("lk{sign}{i}"));
                squares.push(if sign == "+" {
                    self.inputs.kummer_lambda_square.clone()
                } else {
                    -self.inputs.kummer_lambda_square.clone()
                });
            }
        }
        labels.push("xi".into());
        squares.push(self.inputs.xi_square.clone());
        Ok(ExactQuadSpace::diagonal(labels, squares)?)
    }

    /// `ι*ξ` in `H²(W)`.
    pub fn xi_on_w(&self) -> Vec<Rational> {
        let mut v = vec![int(0); self.rank()];
        for i in 0..self.fiber.len() {
            v[self.s(i)] = self.inputs.xi_restriction_s.clone();
        }
        v[self.delta()] = self.inputs.xi_restriction_delta.clone();
        v
    }

    /// Images of the Kummer-type basis under `ι*`.
    pub fn restriction_images(&self) -> Vec<Vec<Rational>> {
        let mut images: Vec<Vec<Rational>> = (0..2 * LAMBDA_RANK).map(|i| self.unit(i)).collect();
        images.push(self.xi_on_w());
        images
    }

    /// The divisor `V = W_τ ∩ W_{τ+θ}`.
    pub fn v_restriction(&self, theta: TorsionPoint) -> Result<VRestriction, GeometryError> {
        VRestriction::new(self, theta)
    }
}

/// `H²` classes on `V = W_τ ∩ W_τ'` spanned by the 16 exceptional curves
/// `r_β`, β in `A_{2,τ}/⟨θ⟩ ⊔ A_{2,τ'}/⟨θ⟩` with `θ = τ' − τ`.
#[derive(Debug, Clone)]
pub struct VRestriction {
    pub theta: TorsionPoint,
    /// `(half, representative)`; half 0 lies over `τ`, half 1 over `τ'`.
    pub classes: Vec<(u8, TorsionPoint)>,
    pub space: ExactQuadSpace,
    /// `H²(W)` coordinates restricted to `V`, one row per `W` basis vector.
    images: Vec<Option<Vec<Rational>>>,
}

impl VRestriction {
    fn new(w: &WLattice, theta: TorsionPoint) -> Result<Self, GeometryError> {
        if theta == TorsionPoint::ZERO || !theta.is_two_torsion() {
            return Err(GeometryError::BadShift(theta));
        }
        let tau2 = w.tau + theta;
        let mut classes = Vec::new();
        for (half, base) in [(0u8, w.tau), (1u8, tau2)] {
            for a in TorsionPoint::fiber(base)? {
                let rep = a.min(a + theta);
                if !classes.contains(&(half, rep)) {
                    classes.push((half, rep));
                }
            }
        }
        let labels = classes.iter().map(|(h, a)| format!("r{h}{a}")).collect();
        let space =
            ExactQuadSpace::diagonal(labels, vec![w.inputs.v_curve_square.clone(); classes.len()])?;
        let index = |half: u8, a: TorsionPoint| {
            let rep = a.min(a + theta);
            classes
                .iter()
                .position(|c| *c == (half, rep))
                .expect("class")
        };
        let mut images = vec![None; w.rank()];
        for (i, a) in w.fiber.iter().enumerate() {
            let mut v = vec![int(0); classes.len()];
            v[index(0, *a)] = int(1);
            images[w.s(i)] = Some(v);
        }
        let mut d = vec![int(0); classes.len()];
        for a in TorsionPoint::fiber(tau2)? {
            d[index(1, a)] = w.inputs.delta_restriction_v.clone();
        }
        images[w.delta()] = Some(d);
        Ok(VRestriction {
            theta,
            classes,
            space,
            images,
        })
    }

    /// Restriction of a divisor class on `W` to `V`.
    pub fn restrict(&self, w: &WLattice, x: &[Rational]) -> Result<Vec<Rational>, GeometryError> {
        let mut out = vec![int(0); self.classes.len()];
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = self.images[i]
                .as_ref()
                .ok_or_else(|| GeometryError::NoRestriction(w.space.labels()[i].clone()))?;
            for (o, y) in out.iter_mut().zip(img) {
                *o += c * y;
            }
        }
        Ok(out)
    }

    /// `∫_W v·x` for `x ∈ Sym² H²(W)` avoiding the `λ` classes.
    pub fn v_pairing(&self, w: &WLattice, x: &Sym2) -> Result<Rational, GeometryError> {
        let mut total = int(0);
        for ((i, j), c) in x.terms() {
            let a = self.restrict(w, &w.unit(i))?;
            let b = self.restrict(w, &w.unit(j))?;
            total += c * self.space.pair(&a, &b)?;
        }
        Ok(total)
    }
}

/// `ι*ξ` on `W` and `V`, and the Fujiki constants it determines.
#[derive(Debug, Clone, PartialEq)]
pub struct XiRestriction {
    pub on_w: Vec<Rational>,
    pub square_w: Rational,
    pub on_v: Vec<Rational>,
    pub square_v: Rational,
    /// `C(w_τ)` from `∫_W (ι*ξ)⁴ = C(w_τ)·q(ξ)²`.
    pub c_w_tau: Rational,
    /// `C(v)` from `∫_V (ξ|_V)² = C(v)·q(ξ)`.
    pub c_v: Rational,
}

pub fn restriction_of_xi(
    w: &WLattice,
    theta: TorsionPoint,
) -> Result<XiRestriction, GeometryError> {
    let on_w = w.xi_on_w();
    let square_w = w.space.pair(&on_w, &on_w)?;
    require_equal(
        "q_W(i*xi) = scale * q(xi)",
        square_w.clone(),
        &w.inputs.restriction_scale * &w.inputs.xi_square,
    )?;
    let fujiki_w = w.space.k3two().ok_or(QuadError::NotK3Two)?.fujiki.clone();
    let int_w = fujiki_w * &square_w * &square_w;
    let c_w_tau = int_w / evaluate_fujiki(&int(1), 4, &w.inputs.xi_square)?;
    let v = w.v_restriction(theta)?;
    let on_v = v.restrict(w, &on_w)?;
    let square_v = v.space.pair(&on_v, &on_v)?;
    let c_v = &square_v / evaluate_fujiki(&int(1), 8, &w.inputs.xi_square)?;
    Ok(XiRestriction {
        on_w,
        square_w,
        on_v,
        square_v,
        c_w_tau,
        c_v,
    })
}

/// `ι*q̄` of the Kummer-type dual class.
#[derive(Debug, Clone, PartialEq)]
pub struct QbarRestriction {
    pub vector: Sym2,
    pub coords19: Vec<Rational>,
}

pub fn restrict_qbar(w: &WLattice) -> Result<QbarRestriction, GeometryError> {
    let k = w.kummer_h2()?;
    let images = w.restriction_images();
    for i in 0..k.rank() {
        for j in 0..k.rank() {
            let lhs = w.space.pair(&images[i], &images[j])?;
            let rhs = &w.inputs.restriction_scale * k.gram().get(i, j);
            require_equal(
                &format!("q_W(i*{}, i*{})", k.labels()[i], k.labels()[j]),
                lhs,
                rhs,
            )?;
        }
    }
    let vector = k.qbar_dual()?.map_linear(&images, w.rank())?;
    let coords19 = w.decompose19(&vector)?;
    Ok(QbarRestriction { vector, coords19 })
}

/// `ι*w_{τ+θ}` for `θ ≠ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct WOtherRestriction {
    pub theta: TorsionPoint,
    /// Right-hand side: pairings of `v` with the 19 vectors.
    pub rhs: Vec<Rational>,
    pub coords19: Vec<Rational>,
    pub vector: Sym2,
    /// The coupled `3 × 3` block on `q̄_W, δ², Σs²`.
    pub reduced_matrix: ExactMatrix,
    pub reduced_rhs: Vec<Rational>,
    pub reduced_solution: Vec<Rational>,
}

/// `∫_W v·q̄_W` from `q̄_W = c₂(W)/ratio` and adjunction on `V`.
pub fn v_dot_qbar(w: &WLattice) -> Result<Rational, GeometryError> {
    let k3 = w.space.k3two().ok_or(QuadError::NotK3Two)?;
    Ok((&w.inputs.k3_euler + &w.inputs.normal_c2_degree) / &k3.c2_over_qbar)
}

pub fn restrict_w_other(
    w: &WLattice,
    theta: TorsionPoint,
) -> Result<WOtherRestriction, GeometryError> {
    let v = w.v_restriction(theta)?;
    let delta = w.delta();
    let delta_sq = Sym2::monomial(w.rank(), delta, delta);
    require_equal(
        "v.delta^2 from the curve classes on V",
        v.v_pairing(w, &delta_sq)?,
        w.inputs.v_delta_square.clone(),
    )?;
    let mut rhs = vec![v_dot_qbar(w)?, w.inputs.v_delta_square.clone()];
    for b in &w.basis19[2..] {
        rhs.push(v.v_pairing(w, b)?);
    }
    let gram = w.gram19()?;
    let coords19 = unique("i*w_other", gram.solve(&rhs)?)?;

    let block = [0usize, 1, 2];
    for i in block {
        for j in 3..gram.cols() {
            require_equal("gram19 block decoupling", gram.get(i, j).clone(), int(0))?;
        }
    }
    let reduced_matrix = ExactMatrix::from_fn(3, 3, |i, j| gram.get(i, j).clone());
    let reduced_rhs = rhs[..3].to_vec();
    let reduced_solution = unique("reduced i*w_other", reduced_matrix.solve(&reduced_rhs)?)?;
    for (k, x) in reduced_solution.iter().enumerate() {
        require_equal(
            "reduced and full solutions agree",
            x.clone(),
            coords19[k].clone(),
        )?;
    }
    Ok(WOtherRestriction {
        theta,
        vector: w.combine19(&coords19),
        rhs,
        coords19,
        reduced_matrix,
        reduced_rhs,
        reduced_solution,
    })
}

/// Inputs for `ι*w_τ`.
#[derive(Debug, Clone, PartialEq)]
pub struct WSelfInputs {
    /// `c₄·w_τ`.
    pub c4_w_tau: Rational,
    /// `w_τ²·w_τ'`.
    pub w_sq_w: Rational,
    /// `q̄·w_τ²`.
    pub qbar_w_tau_sq: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WSelfRestriction {
    /// `ι*w_τ·q̄_W`, `ι*w_τ·Σ_{τ'≠τ} ι*w_τ'`, `ι*w_τ·ι*q̄`.
    pub rhs: Vec<Rational>,
    pub matrix: ExactMatrix,
    /// Coefficients of `ι*q̄, Σ s'², Σ_{θ≠0} Σ s'_α s'_{α+θ}`.
    pub solution: Vec<Rational>,
    pub vector: Sym2,
    pub coords19: Vec<Rational>,
    /// Pairings of the difference `ι*w_{τ+θ₁} − ι*w_{τ+θ₂}` with
    /// `ι*q̄, Σ s'_α s'_{α+ρ}` (ρ ∈ A₂), for the first two nonzero `θ`.
    pub beta_equation: Vec<Rational>,
    /// Whether every pair `θ₁ ≠ θ₂` gives the same equation up to relabelling.
    pub beta_equation_uniform: bool,
    /// Re-pairings of the solved vector with the three targets.
    pub round_trip: Vec<Rational>,
    /// `ι*w_τ·ι*w_{τ+θ}` for every `θ ≠ 0`.
    pub pairings_with_others: Vec<Rational>,
}

pub fn restrict_w_self(
    w: &WLattice,
    others: &[WOtherRestriction],
    qbar: &QbarRestriction,
    inputs: &WSelfInputs,
) -> Result<WSelfRestriction, GeometryError> {
    let k3 = w.space.k3two().ok_or(QuadError::NotK3Two)?;
    let count = int(others.len() as i64);
    let rhs = vec![
        (&inputs.c4_w_tau - &k3.euler) / &k3.c2_over_qbar,
        &count * &inputs.w_sq_w,
        inputs.qbar_w_tau_sq.clone(),
    ];
    let zero = TorsionPoint::ZERO;
    let mut sum_others = Sym2::zero(w.rank());
    for o in others {
        sum_others.add_scaled(&o.vector, &int(1));
    }
    let mut off_diag = Sym2::zero(w.rank());
    for t in &w.thetas {
        off_diag.add_scaled(&w.s_prime_pattern(*t), &int(1));
    }
    let basis = [qbar.vector.clone(), w.s_prime_pattern(zero), off_diag];
    let targets = [w.basis19[0].clone(), sum_others, qbar.vector.clone()];
    let mut rows = Vec::new();
    for t in &targets {
        rows.push(
            basis
                .iter()
                .map(|b| w.pair(t, b))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let matrix = ExactMatrix::from_rows(rows)?;
    let solution = unique("i*w_self", matrix.solve(&rhs)?)?;
    let vector = Sym2::combination(w.rank(), solution.iter().cloned().zip(basis.iter()));
    let coords19 = w.decompose19(&vector)?;
    let round_trip = targets
        .iter()
        .map(|t| w.pair(&vector, t))
        .collect::<Result<Vec<_>, _>>()?;
    let pairings_with_others = others
        .iter()
        .map(|o| w.pair(&vector, &o.vector))
        .collect::<Result<Vec<_>, _>>()?;

    let patterns: Vec<Sym2> = TorsionPoint::all_a2()
        .into_iter()
        .map(|r| w.s_prime_pattern(r))
        .collect();
    let equation =
        |a: &WOtherRestriction, b: &WOtherRestriction| -> Result<Vec<Rational>, GeometryError> {
            let mut diff = a.vector.clone();
            diff.add_scaled(&b.vector, &int(-1));
            let mut out = vec![w.pair(&qbar.vector, &diff)?];
            for p in &patterns {
                out.push(w.pair(p, &diff)?);
            }
            Ok(out)
        };
    let beta_equation = equation(&others[0], &others[1])?;
    let gap = beta_equation
        .iter()
        .skip(1)
        .find(|x| !x.is_zero())
        .cloned()
        .unwrap_or_else(|| int(0));
    let mut beta_equation_uniform = !gap.is_zero();
    for (i, a) in others.iter().enumerate() {
        for b in &others[i + 1..] {
            let eq = equation(a, b)?;
            let expected: Vec<Rational> = std::iter::once(int(0))
                .chain(TorsionPoint::all_a2().into_iter().map(|r| {
                    if r == a.theta {
                        gap.clone()
                    } else if r == b.theta {
                        -gap.clone()
                    } else {
                        int(0)
                    }
                }))
                .collect();
            beta_equation_uniform &= eq == expected;
        }
    }
    Ok(WSelfRestriction {
        rhs,
        matrix,
        solution,
        vector,
        coords19,
        beta_equation,
        beta_equation_uniform,
        round_trip,
        pairings_with_others,
    })
}

/// `ι*w_τ·s'_α·s'_α'` over all pairs in the fiber.
#[derive(Debug, Clone, PartialEq)]
pub struct DSelfPairings {
    pub same: Rational,
    pub different: Rational,
    /// Whether the value depends only on `α = α'`.
    pub uniform: bool,
}

pub fn d_self_pairings(w: &WLattice, w_self: &Sym2) -> Result<DSelfPairings, GeometryError> {
    let n = w.fiber.len();
    let mut table = vec![vec![int(0); n]; n];
    for (i, row) in table.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let p = Sym2::product(&w.s_prime(w.s(i)), &w.s_prime(w.s(j)))?;
            *slot = w.pair(w_self, &p)?;
        }
    }
    let same = table[0][0].clone();
    let different = table[0][1].clone();
    let uniform = (0..n).all(|i| {
        (0..n).all(|j| {
            table[i][j]
                == if i == j {
                    same.clone()
                } else {
                    different.clone()
                }
        })
    });
    Ok(DSelfPairings {
        same,
        different,
        uniform,
    })
}

/// Coefficients `(a, b, c)` with `Σ s'_α s'_{α+θ} = a·δ² + b·S_θ + c·δΣs`
/// (with `S_0 = Σs²`), one triple per `θ ∈ A₂`, or `None` where the pattern
/// leaves that span.
pub fn restrict_canonical_basis_change(
    w: &WLattice,
) -> Result<Vec<Option<[Rational; 3]>>, GeometryError> {
    let mut out = Vec::new();
    for (k, theta) in TorsionPoint::all_a2().into_iter().enumerate() {
        let coords = w.decompose19(&w.s_prime_pattern(theta))?;
        let s_slot = 2 + k;
        let others_zero = coords
            .iter()
            .enumerate()
            .all(|(i, c)| i == 1 || i == s_slot || i == 18 || c.is_zero());
        out.push(others_zero.then(|| {
            [
                coords[1].clone(),
                coords[s_slot].clone(),
                coords[18].clone(),
            ]
        }));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    pub(crate) fn lattice() -> WLattice {
        let inputs = GeometryInputs {
            kummer_lambda_square: int(2),
            xi_square: int(-8),
            restriction_scale: int(2),
            exceptional_square: int(-2),
            xi_restriction_delta: int(2),
            xi_restriction_s: q(1, 2),
            delta_restriction_v: q(1, 2),
            v_curve_square: int(-2),
            v_delta_square: int(-4),
            k3_euler: int(24),
            normal_c2_degree: int(12),
            triple_point_count: int(4),
            c2_degree_on_v: int(48),
            c4_w_tau: int(408),
        };
        let k3two = K3TwoConstants {
            fujiki: int(3),
            qbar_fujiki: int(25),
            qbar_square: int(575),
            c2_over_qbar: q(6, 5),
            euler: int(324),
        };
        WLattice::new(TorsionPoint::ZERO, inputs, k3two).unwrap()
    }

    #[test]
    fn gram19_entries() {
        let w = lattice();
        let g = w.gram19().unwrap();
        assert_eq!(g.rows(), 19);
        let head = [[575, -50, -800], [-50, 12, 64], [-800, 64, 1152]];
        for (i, row) in head.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(*g.get(i, j), int(*x));
            }
        }
        for i in 3..18 {
            assert_eq!(*g.get(i, i), int(128));
        }
        assert_eq!(*g.get(18, 18), int(64));
        assert_eq!(
            g.differing_entries(&ExactMatrix::from_fn(19, 19, |i, j| {
                if i < 3 && j < 3 {
                    int(head[i][j])
                } else if i == j && i < 18 {
                    int(128)
                } else if i == j {
                    int(64)
                } else {
                    int(0)
                }
            })),
            vec![]
        );
    }

    #[test]
    fn xi_and_qbar() {
        let w = lattice();
        let x = restriction_of_xi(&w, w.thetas[0]).unwrap();
        assert_eq!(x.square_w, int(-16));
        assert_eq!(x.square_v, int(-32));
        assert!(x.on_v.iter().all(|c| *c == int(1)));
        assert_eq!(x.c_w_tau, int(12));
        assert_eq!(x.c_v, int(4));
        let r = restrict_qbar(&w).unwrap();
        let mut expected = vec![int(2), q(1, 2), q(31, 32)];
        expected.extend(std::iter::repeat_n(q(-1, 32), 15));
        expected.push(q(-1, 4));
        assert_eq!(r.coords19, expected);
    }

    #[test]
    fn w_restrictions() {
        let w = lattice();
        let others: Vec<_> = w
            .thetas
            .iter()
            .map(|t| restrict_w_other(&w, *t).unwrap())
            .collect();
        for (k, o) in others.iter().enumerate() {
            assert_eq!(o.reduced_solution, vec![q(2, 5), int(0), q(1, 4)]);
            for (i, c) in o.coords19[3..18].iter().enumerate() {
                assert_eq!(*c, if i == k { q(-1, 4) } else { int(0) });
            }
            assert_eq!(o.coords19[18], int(0));
        }
        let qbar = restrict_qbar(&w).unwrap();
        let inputs = WSelfInputs {
            c4_w_tau: int(408),
            w_sq_w: int(12),
            qbar_w_tau_sq: int(84),
        };
        let s = restrict_w_self(&w, &others, &qbar, &inputs).unwrap();
        assert_eq!(s.rhs, vec![int(70), int(180), int(84)]);
        assert_eq!(s.solution, vec![q(4, 5), q(9, 640), q(1, 640)]);
        let mut expected = vec![q(8, 5), int(1), int(1)];
        expected.extend(std::iter::repeat_n(int(0), 15));
        expected.push(q(-1, 2));
        assert_eq!(s.coords19, expected);
        assert_eq!(s.round_trip, s.rhs);
        assert!(s.pairings_with_others.iter().all(|x| *x == int(12)));
        assert!(s.beta_equation_uniform);
        let d = d_self_pairings(&w, &s.vector).unwrap();
        assert_eq!((d.same, d.different, d.uniform), (int(-52), int(12), true));
    }

    #[test]
    fn basis_change() {
        let w = lattice();
        for c in restrict_canonical_basis_change(&w).unwrap() {
            assert_eq!(c, Some([int(16), int(16), int(-8)]));
        }
    }
}
