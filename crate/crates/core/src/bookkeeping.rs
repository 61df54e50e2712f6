//! Hodge and Betti number bookkeeping for Kum³ and related manifolds.

use thiserror::Error;

use crate::kummer::GroupElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BookkeepingError {
    #[error("Hodge row for degree {degree} has {found} entries, expected {expected}")]
    RowLength {
        degree: usize,
        found: usize,
        expected: usize,
    },
    #[error("expected Hodge rows for degrees 0..={expected}, got {found} rows")]
    RowCount { expected: usize, found: usize },
}

/// Numerical Hodge-theoretic input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeData {
    /// `h^{p,q}` of Kum³ for degrees `0..=6`, indexed by `p` descending.
    pub kum3_rows: Vec<Vec<i64>>,
    /// `h^{p,q}` of an abelian surface for degrees `0..=4`.
    pub abelian_rows: Vec<Vec<i64>>,
    /// `(h^{4,0}, h^{3,1}, h^{2,2})` of `A^[4]`.
    pub hilb4_h4: [i64; 3],
    pub hilb4_b6: i64,
    /// Topological Euler characteristic of the fixed loci of the identity,
    /// of `x ↦ −x + θ`, and of a translation by `θ ≠ 0`.
    pub chi_identity: i64,
    pub chi_odd: i64,
    pub chi_translation: i64,
    pub blowup_loci: i64,
    pub blowup_locus_h20: i64,
    /// `(h^{4,0}, h^{3,1})` of a K3^[3]-type manifold.
    pub k3_3_h4: [i64; 2],
}

/// Hodge numbers of a compact Kähler manifold of complex dimension `dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeDiamond {
    rows: Vec<Vec<i64>>,
}

impl HodgeDiamond {
    /// Builds the diamond from the rows of degree `0..=dim`; the upper half
    /// follows by Poincaré duality.
    pub fn from_lower_half(lower: &[Vec<i64>], dim: usize) -> Result<Self, BookkeepingError> {
        if lower.len() != dim + 1 {
            return Err(BookkeepingError::RowCount {
                expected: dim,
                found: lower.len(),
            });
        }
        for (k, row) in lower.iter().enumerate() {
            if row.len() != k + 1 {
                return Err(BookkeepingError::RowLength {
                    degree: k,
                    found: row.len(),
                    expected: k + 1,
                });
            }
        }
        let mut rows = lower.to_vec();
        // h^{p,q} in degree 2·dim − k equals h^{dim−q, dim−p} in degree k,
        // padded with zeros where p or q would exceed dim.
        for k in (0..dim).rev() {
            let pad = vec![0; dim - k];
            rows.push([pad.clone(), lower[k].clone(), pad].concat());
        }
        Ok(Self { rows })
    }

    pub fn row(&self, degree: usize) -> &[i64] {
        &self.rows[degree]
    }

    pub fn dim(&self) -> usize {
        (self.rows.len() - 1) / 2
    }

    /// Rows that are not symmetric under `h^{p,q} = h^{q,p}`.
    pub fn asymmetric_rows(&self) -> Vec<usize> {
        (0..self.rows.len())
            .filter(|k| {
                let r = &self.rows[*k];
                r.iter().ne(r.iter().rev())
            })
            .collect()
    }

    pub fn betti(&self) -> Vec<i64> {
        self.rows.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn euler(&self) -> i64 {
        self.betti()
            .iter()
            .enumerate()
            .map(|(k, b)| if k % 2 == 0 { *b } else { -b })
            .sum()
    }

    pub fn even_total(&self) -> i64 {
        self.betti().iter().step_by(2).sum()
    }

    pub fn odd_total(&self) -> i64 {
        self.betti().iter().skip(1).step_by(2).sum()
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimensions of `Symᵏ` and `∧ᵏ` of an `n`-dimensional space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepDims {
    pub n: i64,
}

impl RepDims {
    pub fn sym(&self, k: i64) -> i64 {
        binomial(self.n + k - 1, k)
    }

    pub fn wedge(&self, k: i64) -> i64 {
        binomial(self.n, k)
    }
}

pub fn rep_dims(n: i64) -> RepDims {
    RepDims { n }
}

/// Degree-by-degree ranks of the components of the even cohomology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LlvTable {
    pub columns: Vec<(String, Vec<i64>)>,
    pub row_sums: Vec<i64>,
    pub column_totals: Vec<i64>,
    pub even_total: i64,
    pub even_betti: Vec<i64>,
    pub odd_total: i64,
}

/// Ranks of `V(3) ⊕ V(1,1) ⊕ 16·V ⊕ 240·Q` in even degrees `0, 2, .., 12`
/// for `b₂ = n`, compared with the Hodge diamond.
pub fn llv_rank_check(diamond: &HodgeDiamond) -> LlvTable {
    let betti = diamond.betti();
    let r = rep_dims(betti[2]);
    let n = r.n;
    let columns = vec![
        (
            "V(3)".to_string(),
            vec![1, n, r.sym(2), r.sym(3), r.sym(2), n, 1],
        ),
        ("V(1,1)".to_string(), vec![0, 0, n, r.wedge(2) + 1, n, 0, 0]),
        ("16V".to_string(), vec![0, 0, 16, 16 * n, 16, 0, 0]),
        ("240".to_string(), vec![0, 0, 0, 240, 0, 0, 0]),
    ];
    let row_sums = (0..7)
        .map(|k| columns.iter().map(|(_, c)| c[k]).sum())
        .collect::<Vec<i64>>();
    let column_totals = columns.iter().map(|(_, c)| c.iter().sum()).collect();
    LlvTable {
        even_total: row_sums.iter().sum(),
        even_betti: betti.iter().step_by(2).copied().collect(),
        odd_total: diamond.odd_total(),
        columns,
        row_sums,
        column_totals,
    }
}

fn convolve(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Hodge numbers of `Sym²` of a pure Hodge structure of even weight.
pub fn sym2_hodge(h: &[i64]) -> Vec<i64> {
    let mut out = vec![0; 2 * h.len() - 1];
    for i in 0..h.len() {
        for j in i..h.len() {
            out[i + j] += if i == j {
                h[i] * (h[i] + 1) / 2
            } else {
                h[i] * h[j]
            };
        }
    }
    out
}

/// Γ-invariant parts of the cohomology of Kum³ in degrees 4 and 6, read off
/// from `H*(A^[4]) = H*(A) ⊗ H*(Kum³)^Γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaInvariants {
    /// `(h^{4,0}, .., h^{0,4})` of `H⁴(Kum³)^Γ`.
    pub h4_invariant: Vec<i64>,
    pub sym2_h2: Vec<i64>,
    /// Complement of `Sym² H²` in `H⁴(Kum³)^Γ`.
    pub transcendental: Vec<i64>,
    pub b4_invariant: i64,
    /// Contributions to `b₆(A^[4])` other than `H⁶(Kum³)^Γ ⊗ H⁰(A)`.
    pub b6_other: i64,
    pub b6_invariant: i64,
    /// `b₆^Γ − dim Sym³H² − dim ∧²H² − 1 − b₂`.
    pub residual: i64,
}

pub fn gamma_invariant_dims(data: &HodgeData) -> Result<GammaInvariants, BookkeepingError> {
    let k = HodgeDiamond::from_lower_half(&data.kum3_rows, 6)?;
    let a = HodgeDiamond::from_lower_half(&data.abelian_rows, 2)?;
    let mut known = vec![0i64; 5];
    for (i, j) in [(3, 1), (2, 2), (1, 3), (0, 4)] {
        for (slot, x) in known.iter_mut().zip(convolve(k.row(i), a.row(j))) {
            *slot += x;
        }
    }
    let [h40, h31, h22] = data.hilb4_h4;
    let hilb = [h40, h31, h22, h31, h40];
    let h4_invariant: Vec<i64> = hilb.iter().zip(&known).map(|(x, y)| x - y).collect();
    let sym2_h2 = sym2_hodge(k.row(2));
    let transcendental = h4_invariant
        .iter()
        .zip(&sym2_h2)
        .map(|(x, y)| x - y)
        .collect();
    let b4_invariant: i64 = h4_invariant.iter().sum();
    let kb = k.betti();
    let ab = a.betti();
    let b6_other = kb[5] * ab[1] + b4_invariant * ab[2] + kb[3] * ab[3] + kb[2] * ab[4];
    let b6_invariant = (data.hilb4_b6 - b6_other) / ab[0];
    let r = rep_dims(kb[2]);
    Ok(GammaInvariants {
        residual: b6_invariant - r.sym(3) - r.wedge(2) - 1 - r.n,
        h4_invariant,
        sym2_h2,
        transcendental,
        b4_invariant,
        b6_other,
        b6_invariant,
    })
}

/// Traces of `G` on the 240-dimensional summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GTraces {
    pub identity: i64,
    pub odd: i64,
    pub translation: i64,
    /// `(trace, number of elements)` per conjugacy type.
    pub classes: Vec<(i64, usize)>,
    /// `dim (240·Q)^G`.
    pub invariant_dim: i64,
    pub group_order: usize,
}

/// `tr(g | 240) = χ(Fix g) − (rank of the other even summands) ± (odd rank)`,
/// with the sign of `g` on odd cohomology.
pub fn g_trace_invariants(data: &HodgeData, llv: &LlvTable) -> GTraces {
    let other: i64 = llv.column_totals[..3].iter().sum();
    let trace =
        |chi: i64, odd: bool| chi - other + if odd { -llv.odd_total } else { llv.odd_total };
    let group = GroupElement::all_g();
    let mut identity = (trace(data.chi_identity, false), 0usize);
    let mut odd = (trace(data.chi_odd, true), 0usize);
    let mut translation = (trace(data.chi_translation, false), 0usize);
    for g in &group {
        match g {
            GroupElement::Affine { negate: true, .. } => odd.1 += 1,
            GroupElement::Affine { theta, .. } if *theta == crate::kummer::TorsionPoint::ZERO => {
                identity.1 += 1
            }
            _ => translation.1 += 1,
        }
    }
    let classes = vec![identity, odd, translation];
    let total: i64 = classes.iter().map(|(t, c)| t * *c as i64).sum();
    GTraces {
        identity: identity.0,
        odd: odd.0,
        translation: translation.0,
        invariant_dim: total / group.len() as i64,
        classes,
        group_order: group.len(),
    }
}

/// `(h^{4,0}, h^{3,1})` after blowing up `loci` smooth surfaces with
/// `h^{2,0} = locus_h20` in a manifold with the given middle Hodge numbers.
pub fn blowup_hodge_check(h40: i64, h31: i64, loci: i64, locus_h20: i64) -> [i64; 2] {
    [h40, h31 + loci * locus_h20]
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn data() -> HodgeData {
        HodgeData {
            kum3_rows: vec![
                vec![1],
                vec![0, 0],
                vec![1, 5, 1],
                vec![0, 4, 4, 0],
                vec![1, 6, 37, 6, 1],
                vec![0, 4, 24, 24, 4, 0],
                vec![1, 5, 37, 372, 37, 5, 1],
            ],
            abelian_rows: vec![vec![1], vec![2, 2], vec![1, 4, 1]],
            hilb4_h4: [2, 23, 61],
            hilb4_b6: 592,
            chi_identity: 448,
            chi_odd: 464,
            chi_translation: 192,
            blowup_loci: 16,
            blowup_locus_h20: 1,
            k3_3_h4: [1, 22],
        }
    }

    #[test]
    fn kum3_diamond() {
        let d = HodgeDiamond::from_lower_half(&data().kum3_rows, 6).unwrap();
        assert!(d.asymmetric_rows().is_empty());
        assert_eq!(d.betti(), vec![1, 0, 7, 8, 51, 56, 458, 56, 51, 8, 7, 0, 1]);
        assert_eq!(d.row(10), &[0, 0, 0, 0, 1, 5, 1, 0, 0, 0, 0]);
        assert_eq!(d.euler(), 448);
        assert_eq!((d.even_total(), d.odd_total()), (576, 128));
        assert!(HodgeDiamond::from_lower_half(&[vec![1], vec![0]], 1).is_err());
    }

    #[test]
    fn llv_columns() {
        let d = HodgeDiamond::from_lower_half(&data().kum3_rows, 6).unwrap();
        let t = llv_rank_check(&d);
        assert_eq!(t.row_sums, vec![1, 7, 51, 458, 51, 7, 1]);
        assert_eq!(t.row_sums, t.even_betti);
        assert_eq!(t.column_totals, vec![156, 36, 144, 240]);
        assert_eq!(t.even_total, 576);
        assert_eq!(t.odd_total, 128);
    }

    #[test]
    fn invariants_and_traces() {
        let g = gamma_invariant_dims(&data()).unwrap();
        assert_eq!(g.h4_invariant, vec![1, 6, 22, 6, 1]);
        assert_eq!(g.sym2_h2, vec![1, 5, 16, 5, 1]);
        assert_eq!(g.transcendental, vec![0, 1, 6, 1, 0]);
        assert_eq!(g.b4_invariant, 36);
        assert_eq!(g.b6_other, 479);
        assert_eq!(g.b6_invariant, 113);
        assert_eq!(g.residual, 0);

        let d = HodgeDiamond::from_lower_half(&data().kum3_rows, 6).unwrap();
        let t = g_trace_invariants(&data(), &llv_rank_check(&d));
        assert_eq!((t.identity, t.odd, t.translation), (240, 0, -16));
        assert_eq!(
            t.classes.iter().map(|c| c.1).collect::<Vec<_>>(),
            vec![1, 16, 15]
        );
        assert_eq!(t.invariant_dim, 0);
        assert_eq!(blowup_hodge_check(1, 6, 16, 1), [1, 22]);
    }

    #[test]
    fn rep_dimensions() {
        let r = rep_dims(7);
        assert_eq!((r.sym(2), r.sym(3), r.wedge(2)), (28, 84, 21));
    }
}
