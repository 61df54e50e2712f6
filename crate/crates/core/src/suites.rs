//! Verification suites: each one runs a group of certificates against a
//! configuration and records every comparison as a [`Check`].

use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bookkeeping::{
    blowup_hodge_check, g_trace_invariants, gamma_invariant_dims, llv_rank_check, HodgeDiamond,
};
use crate::config::Config;
use crate::exact::{int, q};
use crate::fujiki::{
    auxiliary_values, derive_z_relations, express_w_v, qbar_factor, AuxiliaryValues, GradedClass,
    Monomial, WvClasses, WvInputs, ZRelations,
};
use crate::kummer::{
    act, d_gram, deg4_independence_certificate, enumerate_sum_power, expand_sum_power, orbit,
    qbar_multiplication_injectivity, DGramCertificate, GroupElement, Label, LabelIntersections,
    TorsionPoint, TuplePattern, WTriple, A2_ORDER,
};
use crate::quadspace::Sym2Vector;
use crate::report::{Check, TrailStep, Value, VerificationReport};
use crate::wgeom::{
    d_self_pairings, restrict_canonical_basis_change, restrict_qbar, restrict_w_other,
    restrict_w_self, restriction_of_xi, v_dot_qbar, DSelfPairings, QbarRestriction, WLattice,
    WOtherRestriction, WSelfInputs, WSelfRestriction, XiRestriction,
};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuiteName {
    FujikiTable,
    BasisLemma,
    WClasses,
    W17Rank,
    Gram19,
    Restrictions,
    DClasses,
    Bookkeeping,
    All,
}

impl SuiteName {
    pub const ALL: [SuiteName; 9] = [
        SuiteName::FujikiTable,
        SuiteName::BasisLemma,
        SuiteName::WClasses,
        SuiteName::W17Rank,
        SuiteName::Gram19,
        SuiteName::Restrictions,
        SuiteName::DClasses,
        SuiteName::Bookkeeping,
        SuiteName::All,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteName::FujikiTable => "fujiki-table",
            SuiteName::BasisLemma => "basis-lemma",
            SuiteName::WClasses => "w-classes",
            SuiteName::W17Rank => "w17-rank",
            SuiteName::Gram19 => "gram19",
            SuiteName::Restrictions => "restrictions",
            SuiteName::DClasses => "d-classes",
            SuiteName::Bookkeeping => "bookkeeping",
            SuiteName::All => "all",
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            SuiteName::FujikiTable => "consistency of the Fujiki constant table",
            SuiteName::BasisLemma => "Fujiki constants and expansions of z, c2^2, c4",
            SuiteName::WClasses => "the classes w and v and intersections of w_tau",
            SuiteName::W17Rank => "independence of c2 and the w_tau in degree 4",
            SuiteName::Gram19 => "the 19 invariant vectors of Sym^2 H^2(W_tau)",
            SuiteName::Restrictions => "restrictions of xi, qbar and w_tau to W_tau",
            SuiteName::DClasses => "intersection matrix of the d-classes",
            SuiteName::Bookkeeping => "Hodge, Betti and trace bookkeeping",
            SuiteName::All => "every suite above",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown suite {0:?}")]
pub struct UnknownSuite(pub String);

impl FromStr for SuiteName {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

pub fn run_suite_by_name(name: &str, config: &Config) -> Result<VerificationReport, UnknownSuite> {
    Ok(run_suite(name.parse()?, config))
}

/// Runs a suite. Failures of intermediate derivations become failed checks.
pub fn run_suite(name: SuiteName, config: &Config) -> VerificationReport {
    let p = Pipeline::new(config);
    let checks = match name {
        SuiteName::All => SuiteName::ALL[..8]
            .iter()
            .flat_map(|s| p.checks(*s))
            .collect(),
        other => p.checks(other),
    };
    VerificationReport::new(name.as_str(), checks)
}

type Res<T> = Result<T, String>;

fn err<E: ToString>(e: E) -> String {
    e.to_string()
}

fn cached<T>(cell: &OnceCell<Res<T>>, f: impl FnOnce() -> Res<T>) -> Res<&T> {
    cell.get_or_init(f).as_ref().map_err(Clone::clone)
}

/// Lazily evaluated derivation chain shared by the suites.
struct Pipeline<'a> {
    cfg: &'a Config,
    rel: OnceCell<Res<ZRelations>>,
    lattice: OnceCell<Res<WLattice>>,
    xi: OnceCell<Res<XiRestriction>>,
    wv: OnceCell<Res<WvClasses>>,
    aux: OnceCell<Res<AuxiliaryValues>>,
    qbar: OnceCell<Res<QbarRestriction>>,
    others: OnceCell<Res<Vec<WOtherRestriction>>>,
    w_self: OnceCell<Res<WSelfRestriction>>,
    d_self: OnceCell<Res<DSelfPairings>>,
    d_gram: OnceCell<Res<DGramCertificate>>,
}

struct Suite {
    name: &'static str,
    checks: Vec<Check>,
}

impl Suite {
    fn new(name: SuiteName) -> Self {
        Suite {
            name: name.as_str(),
            checks: Vec::new(),
        }
    }

    fn check(
        &mut self,
        id: &str,
        reference: &str,
        expected: Value,
        computed: Res<Value>,
    ) -> &mut Check {
        self.checks.push(Check::compare(
            format!("{}/{id}", self.name),
            reference,
            expected,
            computed,
        ));
        self.checks.last_mut().expect("just pushed")
    }
}

fn rats(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|x| int(*x)).collect()
}

fn yes_no(b: bool) -> Value {
    Value::of(b)
}

impl<'a> Pipeline<'a> {
    fn new(cfg: &'a Config) -> Self {
        Pipeline {
            cfg,
            rel: OnceCell::new(),
            lattice: OnceCell::new(),
            xi: OnceCell::new(),
            wv: OnceCell::new(),
            aux: OnceCell::new(),
            qbar: OnceCell::new(),
            others: OnceCell::new(),
            w_self: OnceCell::new(),
            d_self: OnceCell::new(),
            d_gram: OnceCell::new(),
        }
    }

    fn checks(&self, name: SuiteName) -> Vec<Check> {
        let mut s = Suite::new(name);
        match name {
            SuiteName::FujikiTable => self.fujiki_table(&mut s),
            SuiteName::BasisLemma => self.basis_lemma(&mut s),
            SuiteName::WClasses => self.w_classes(&mut s),
            SuiteName::W17Rank => self.w17_rank(&mut s),
            SuiteName::Gram19 => self.gram19(&mut s),
            SuiteName::Restrictions => self.restrictions(&mut s),
            SuiteName::DClasses => self.d_classes(&mut s),
            SuiteName::Bookkeeping => self.bookkeeping(&mut s),
            SuiteName::All => unreachable!("expanded by run_suite"),
        }
        s.checks
    }

    fn rel(&self) -> Res<&ZRelations> {
        cached(&self.rel, || {
            derive_z_relations(&self.cfg.fujiki).map_err(err)
        })
    }

    fn lattice(&self) -> Res<&WLattice> {
        cached(&self.lattice, || {
            WLattice::new(
                TorsionPoint::ZERO,
                self.cfg.geometry.clone(),
                self.cfg.k3two.clone(),
            )
            .map_err(err)
        })
    }

    fn first_theta(&self) -> TorsionPoint {
        TorsionPoint::all_a2()[1]
    }

    fn xi(&self) -> Res<&XiRestriction> {
        cached(&self.xi, || {
            restriction_of_xi(self.lattice()?, self.first_theta()).map_err(err)
        })
    }

    fn wv_inputs(&self) -> Res<WvInputs> {
        let xi = self.xi()?;
        let g = &self.cfg.geometry;
        Ok(WvInputs {
            c_w_tau: xi.c_w_tau.clone(),
            c_v_pair: xi.c_v.clone(),
            w_sq_w: g.normal_c2_degree.clone(),
            w_w_w: g.triple_point_count.clone(),
            c2_v_pair: g.c2_degree_on_v.clone(),
        })
    }

    fn wv(&self) -> Res<&WvClasses> {
        cached(&self.wv, || {
            express_w_v(self.rel()?, &self.wv_inputs()?).map_err(err)
        })
    }

    fn aux(&self) -> Res<&AuxiliaryValues> {
        cached(&self.aux, || {
            auxiliary_values(self.rel()?, self.wv()?, &self.wv_inputs()?).map_err(err)
        })
    }

    fn triple(&self) -> Res<WTriple> {
        let g = &self.cfg.geometry;
        Ok(WTriple {
            self_cube: self.wv()?.w_tau_cubed.clone(),
            double: g.normal_c2_degree.clone(),
            distinct: g.triple_point_count.clone(),
        })
    }

    fn qbar(&self) -> Res<&QbarRestriction> {
        cached(&self.qbar, || restrict_qbar(self.lattice()?).map_err(err))
    }

    fn others(&self) -> Res<&Vec<WOtherRestriction>> {
        cached(&self.others, || {
            let w = self.lattice()?;
            w.thetas
                .iter()
                .map(|t| restrict_w_other(w, *t).map_err(err))
                .collect()
        })
    }

    fn w_self(&self) -> Res<&WSelfRestriction> {
        cached(&self.w_self, || {
            let inputs = WSelfInputs {
                c4_w_tau: self.cfg.geometry.c4_w_tau.clone(),
                w_sq_w: self.cfg.geometry.normal_c2_degree.clone(),
                qbar_w_tau_sq: self.aux()?.qbar_w_tau_sq.clone(),
            };
            restrict_w_self(self.lattice()?, self.others()?, self.qbar()?, &inputs).map_err(err)
        })
    }

    fn d_self(&self) -> Res<&DSelfPairings> {
        cached(&self.d_self, || {
            d_self_pairings(self.lattice()?, &self.w_self()?.vector).map_err(err)
        })
    }

    fn d_gram(&self) -> Res<&DGramCertificate> {
        cached(&self.d_gram, || {
            let d = self.d_self()?;
            Ok(d_gram(&d.same, &d.different))
        })
    }

    fn fujiki_table(&self, s: &mut Suite) {
        let t = &self.cfg.fujiki;
        s.check(
            "table-entries",
            "Fujiki constants of Kum3: table size",
            Value::of(14),
            Ok(Value::of(t.len())),
        );
        for (degree, expected) in [(0, q(11, 5)), (4, int(3)), (8, int(7))] {
            let trail = t
                .qbar_pairs(degree)
                .into_iter()
                .map(|(m, c, cq)| {
                    TrailStep::new(format!("C(qbar*{m}) / C({m})"), Value::list([cq, c]))
                })
                .collect();
            s.check(
                &format!("qbar-factor-deg{degree}"),
                "q̄-multiplication factor of generalized Fujiki constants",
                Value::of(expected),
                qbar_factor(t, degree).map(Value::of).map_err(err),
            )
            .trail = trail;
        }
        s.check(
            "c-of-z",
            "C(z) = 0 for z = c2 − (24/11)·q̄",
            Value::of(0),
            self.rel().map(|r| Value::of(&r.c_z)),
        )
        .trail = self
            .rel()
            .map(|r| vec![TrailStep::new("C(c2)/C(qbar)", Value::of(&r.c2_over_qbar))])
            .unwrap_or_default();
        s.check(
            "qbar2-z",
            "top integral q̄²·z vanishes",
            Value::of(0),
            self.rel().map(|r| Value::of(&r.qbar_sq_z)),
        );
        s.check(
            "z3-derivation",
            "z³ derivation from C(c2³)",
            Value::of(q(-22016, 121)),
            self.rel().map(|r| Value::of(&r.z_cubed)),
        )
        .trail = self
            .rel()
            .map(|r| {
                let c = &r.c2_over_qbar;
                vec![
                    TrailStep::new(
                        "c2^3",
                        Value::of(
                            t.get(&Monomial::new(0, 3, 0, 0))
                                .cloned()
                                .unwrap_or_default(),
                        ),
                    ),
                    TrailStep::new("r^3 qbar^3", Value::of(c * c * c * &r.qbar_cubed)),
                    TrailStep::new("3 r qbar z^2", Value::of(int(3) * c * &r.qbar_z_sq)),
                    TrailStep::new("z^3", Value::of(&r.z_cubed)),
                ]
            })
            .unwrap_or_default();
        s.check(
            "ring-closure",
            "products c2³, c2·c4, q̄·c2², q̄·c4 re-integrated in the ring",
            Value::list(rats(&[30208, 6784, 13440, 3360])),
            self.rel().and_then(|r| {
                let (c2, c4, qb) = (r.c2(), r.c4_class(), GradedClass::qbar());
                Ok(Value::list([
                    r.integrate(&[c2.clone(), c2.clone(), c2.clone()])
                        .map_err(err)?,
                    r.integrate(&[c2.clone(), c4.clone()]).map_err(err)?,
                    r.integrate(&[qb.clone(), c2.clone(), c2]).map_err(err)?,
                    r.integrate(&[qb, c4]).map_err(err)?,
                ]))
            }),
        );
        s.check(
            "euler-characteristic",
            "C(c6) equals the Euler characteristic from the Hodge numbers",
            Value::list(["448", "448"]),
            (|| {
                let c6 = t.require(Monomial::new(0, 0, 0, 1)).map_err(err)?;
                let d = HodgeDiamond::from_lower_half(&self.cfg.hodge.kum3_rows, 6).map_err(err)?;
                Ok(Value::list([c6.to_string(), d.euler().to_string()]))
            })(),
        );
    }

    fn basis_lemma(&self, s: &mut Suite) {
        let reference = "Fujiki constants and expansions in the basis q̄², q̄·z";
        s.check(
            "c-z2",
            reference,
            Value::of(q(384, 11)),
            self.rel().map(|r| Value::of(&r.c_z_sq)),
        );
        s.check(
            "qbar-z2",
            reference,
            Value::of(q(2688, 11)),
            self.rel().map(|r| Value::of(&r.qbar_z_sq)),
        );
        s.check(
            "z3",
            reference,
            Value::of(q(-22016, 121)),
            self.rel().and_then(|r| {
                let z = GradedClass::z();
                r.integrate(&[z.clone(), z.clone(), z])
                    .map(Value::of)
                    .map_err(err)
            }),
        );
        s.check(
            "z2-expansion",
            reference,
            Value::list([q(32, 363), q(-172, 231)]),
            self.rel().map(|r| Value::list(r.z_sq.clone())),
        );
        s.check(
            "c2-squared-expansion",
            reference,
            Value::list([q(160, 33), q(76, 21)]),
            self.rel().map(|r| Value::list(r.c2_sq.clone())),
        );
        s.check(
            "c4-expansion",
            reference,
            Value::list([q(40, 33), q(-47, 21)]),
            self.rel().map(|r| Value::list(r.c4.clone())),
        );
    }

    fn w_classes(&self, s: &mut Suite) {
        let reference = "classes w = Σ w_τ and v = ½ Σ v_{τ,τ'}";
        s.check(
            "fujiki-w-v",
            "C(w) = 16·C(w_τ) and C(v) = 120·C(w_τ·w_τ')",
            Value::list(rats(&[192, 480])),
            self.wv().map(|w| Value::list([&w.c_w, &w.c_v])),
        );
        s.check(
            "v-expansion",
            reference,
            Value::list([q(40, 33), q(-45, 7)]),
            self.wv().map(|w| Value::list(w.v.coordinates())),
        )
        .trail = self
            .wv()
            .map(|w| vec![TrailStep::new("c2.v", Value::of(&w.c2_dot_v))])
            .unwrap_or_default();
        s.check(
            "w-dot-v",
            "w·v by orbit types of (τ, τ', τ'')",
            Value::of(9600),
            self.wv().map(|w| Value::of(&w.w_dot_v)),
        );
        s.check(
            "w-dot-v-enumeration",
            "w·v by enumerating all index triples",
            Value::of(9600),
            self.wv_inputs().and_then(|i| {
                enumerate_sum_power(A2_ORDER, 3, |p| {
                    if p.same(1, 2) {
                        return Some(int(0));
                    }
                    let t = match p.shape().as_slice() {
                        [2, 1] => i.w_sq_w.clone(),
                        [1, 1, 1] => i.w_w_w.clone(),
                        _ => return None,
                    };
                    Some(t / int(2))
                })
                .map(Value::of)
                .map_err(err)
            }),
        );
        s.check(
            "w-expansion",
            reference,
            Value::list([q(16, 11), int(-3)]),
            self.wv().map(|w| Value::list(w.w.coordinates())),
        );
        s.check(
            "w-cubed",
            reference,
            Value::of(23040),
            self.wv().map(|w| Value::of(&w.w_cubed)),
        );
        s.check(
            "w-tau-cubed",
            "w_τ³ from w³ by orbit types",
            Value::of(60),
            self.wv().map(|w| Value::of(&w.w_tau_cubed)),
        );
        s.check(
            "integral-w",
            "w = 8q̄ − 3c2",
            Value::list([q(16, 11), int(-3)]),
            self.wv().map(|w| Value::list(w.integral_w.coordinates())),
        );
        s.check(
            "integral-3v",
            "3v = 7c4 − c2²",
            Value::list([q(40, 11), q(-135, 7)]),
            self.wv().map(|w| Value::list(w.integral_3v.coordinates())),
        );
        s.check(
            "c-w-squared",
            "C(w²) and C(w_τ²)",
            Value::list(rats(&[1152, 12])),
            self.aux().map(|a| Value::list([&a.c_w_sq, &a.c_w_tau_sq])),
        );
        s.check(
            "c4-w-tau",
            "c4·w_τ from the ring against the geometric input",
            Value::of(&self.cfg.geometry.c4_w_tau),
            self.aux().map(|a| Value::of(&a.c4_w_tau)),
        );
        s.check(
            "qbar-w-tau",
            "q̄·w_τ² and q̄·w_τ·w_τ'",
            Value::list(rats(&[84, 28])),
            self.aux()
                .map(|a| Value::list([&a.qbar_w_tau_sq, &a.qbar_w_tau_w_tau2])),
        );
        s.check(
            "orbit-count-squares",
            "C(w²) by orbit types agrees with enumeration",
            Value::of(1152),
            self.aux().and_then(|a| {
                let f = |p: &TuplePattern| match p.shape().as_slice() {
                    [2] => Some(a.c_w_tau_sq.clone()),
                    [1, 1] => Some(a.c_v_pair.clone()),
                    _ => None,
                };
                let by_orbit = expand_sum_power(A2_ORDER, 2, f).map_err(err)?;
                let by_tuple = enumerate_sum_power(A2_ORDER, 2, f).map_err(err)?;
                if by_orbit == by_tuple {
                    Ok(Value::of(by_orbit))
                } else {
                    Err(format!("orbit count {by_orbit} != enumeration {by_tuple}"))
                }
            }),
        );
    }

    fn w17_rank(&self, s: &mut Suite) {
        let cert = (|| {
            deg4_independence_certificate(self.rel()?, self.wv()?, self.aux()?, &self.triple()?)
                .map_err(err)
        })();
        let reference = "independence of c2 and the 16 classes w_τ";
        s.check(
            "z-w-values",
            "z·w_τ² and z·w_τ·w_τ'",
            Value::list([q(-432, 11), q(-144, 11)]),
            r(&cert).map(|c| Value::list([&c.zw.z_w_tau_sq, &c.zw.z_w_tau_w_tau2])),
        );
        s.check(
            "c2-w-values",
            "c2·w_τ² and c2·w_τ·w_τ'",
            Value::list(rats(&[144, 48])),
            r(&cert).map(|c| Value::list([&c.zw.c2_w_tau_sq, &c.zw.c2_w_tau_w_tau2])),
        );
        s.check(
            "w-dot-w-tau-w-tau2",
            "w·w_τ·w_τ' from the class of w",
            Value::of(80),
            r(&cert).map(|c| Value::of(&c.zw.w_w_tau_w_tau2)),
        );
        s.check(
            "deg4-entries",
            reference,
            Value::list([int(6048), q(2688, 11), int(252), q(-504, 11)]),
            r(&cert).map(|c| {
                Value::list([
                    c.matrix.get(0, 0),
                    c.matrix.get(0, 1),
                    c.matrix.get(1, 0),
                    c.matrix.get(1, 1),
                ])
            }),
        );
        s.check(
            "deg4-rank",
            reference,
            Value::of(17),
            r(&cert).map(|c| Value::of(c.rank)),
        )
        .trail = r(&cert)
            .map(|c| {
                vec![
                    TrailStep::new(
                        "matrix shape",
                        Value::list([c.matrix.rows(), c.matrix.cols()]),
                    ),
                    TrailStep::new("row relations", Value::rows(c.left_kernel.clone())),
                ]
            })
            .unwrap_or_default();
        s.check(
            "gap",
            "u·(w_τ² − w_τ'²) isolates β_τ − β_τ'",
            Value::list(["48", "true"]),
            r(&cert).map(|c| Value::list([c.gap.to_string(), c.gap_uniform.to_string()])),
        );
        let inj = (|| {
            qbar_multiplication_injectivity(self.rel()?, self.wv()?, self.aux()?).map_err(err)
        })();
        s.check(
            "qbar-injectivity-entries",
            "pairings of q̄·c2, q̄·w_τ with c2, w_σ",
            Value::list(rats(&[13440, 504, 84, 28])),
            inj.as_ref().map_err(Clone::clone).map(|i| {
                Value::list([
                    i.matrix.get(0, 0),
                    i.matrix.get(0, 1),
                    i.matrix.get(1, 1),
                    i.matrix.get(1, 2),
                ])
            }),
        );
        s.check(
            "qbar-injectivity",
            "multiplication by q̄ is injective on the 17 classes",
            Value::list(["17", "0"]),
            inj.map(|i| Value::list([i.rank, i.kernel.len()])),
        );
        s.check(
            "w-orbit",
            "Γ permutes the 16 classes w_τ transitively",
            Value::of(16),
            Ok(Value::of(
                orbit(Label::W(TorsionPoint::ZERO), &GroupElement::all_gamma()).len(),
            )),
        );
    }

    fn gram19(&self, s: &mut Suite) {
        let k3 = &self.cfg.k3two;
        s.check(
            "w-lattice-squares",
            "squares of λ⁺, λ⁻, s_α, δ in H²(W_τ)",
            Value::list(rats(&[4, -4, -2, -2])),
            self.lattice().map(|w| {
                let g = w.space.gram();
                Value::list([0, LAMBDA_MINUS, w.s(0), w.delta()].map(|i| g.get(i, i).clone()))
            }),
        );
        let ones = |n: usize| vec![int(1); n];
        s.check(
            "k3two-fujiki",
            "∫γ⁴ = 3·q(γ)² from the Sym² form",
            Value::of(&k3.fujiki),
            self.lattice().and_then(|w| {
                let mut ratios = Vec::new();
                let mixed: Vec<Rational> = (0..w.rank()).map(|i| int(i as i64 - 7)).collect();
                for v in [w.unit(0), w.unit(w.delta()), ones(w.rank()), mixed] {
                    let sq = Sym2Vector::square(&v);
                    let top = w.pair(&sq, &sq).map_err(err)?;
                    let qv = w.space.pair(&v, &v).map_err(err)?;
                    ratios.push(top / (&qv * &qv));
                }
                uniform(ratios)
            }),
        );
        s.check(
            "k3two-qbar-fujiki",
            "q̄_W·x·y = C(q̄)·q(x, y)",
            Value::of(&k3.qbar_fujiki),
            self.lattice().and_then(|w| {
                let qbar = &w.basis19[0];
                let mixed: Vec<Rational> = (0..w.rank()).map(|i| int(2 * i as i64 - 9)).collect();
                let vs = [
                    w.unit(0),
                    w.unit(4),
                    w.unit(w.delta()),
                    ones(w.rank()),
                    mixed,
                ];
                let mut ratios = Vec::new();
                for x in &vs {
                    for y in &vs {
                        let qxy = w.space.pair(x, y).map_err(err)?;
                        let p = w
                            .pair(qbar, &Sym2Vector::product(x, y).map_err(err)?)
                            .map_err(err)?;
                        if qxy == int(0) {
                            if p != int(0) {
                                return Err(format!("q(x,y) = 0 but q̄·x·y = {p}"));
                            }
                        } else {
                            ratios.push(p / qxy);
                        }
                    }
                }
                uniform(ratios)
            }),
        );
        s.check(
            "k3two-qbar-square",
            "top integral of q̄_W²",
            Value::of(&k3.qbar_square),
            self.lattice().and_then(|w| {
                w.pair(&w.basis19[0], &w.basis19[0])
                    .map(Value::of)
                    .map_err(err)
            }),
        );
        let mut expected = vec![vec![int(0); 19]; 19];
        for (i, row) in [[575, -50, -800], [-50, 12, 64], [-800, 64, 1152]]
            .iter()
            .enumerate()
        {
            for (j, x) in row.iter().enumerate() {
                expected[i][j] = int(*x);
            }
        }
        for (i, row) in expected.iter_mut().enumerate().take(18).skip(3) {
            row[i] = int(128);
        }
        expected[18][18] = int(64);
        let gram = self.lattice().and_then(|w| w.gram19().map_err(err));
        s.check(
            "gram19-matrix",
            "19 x 19 intersection matrix of the invariant vectors",
            Value::rows(expected),
            gram.as_ref().map(Value::matrix).map_err(Clone::clone),
        )
        .trail = self
            .lattice()
            .map(|w| {
                vec![TrailStep::new(
                    "basis",
                    Value::list(w.basis19_labels.clone()),
                )]
            })
            .unwrap_or_default();
        s.check(
            "gram19-rank",
            "the 19 vectors are independent",
            Value::of(19),
            gram.map(|g| Value::of(g.rank())),
        );
    }

    fn restrictions(&self, s: &mut Suite) {
        s.check(
            "xi-on-w",
            "restriction of ξ to W_τ and its square",
            Value::list([
                int(-16),
                &self.cfg.geometry.restriction_scale * &self.cfg.geometry.xi_square,
            ]),
            self.xi().map(|x| {
                let w = self.lattice().expect("xi implies lattice");
                Value::list([
                    x.square_w.clone(),
                    w.space.pair(&x.on_w, &x.on_w).expect("rank"),
                ])
            }),
        );
        s.check(
            "xi-on-v",
            "restriction of ξ to V: 16 curve classes, symmetric in τ and τ'",
            Value::list(["16", "true", "-32"]),
            self.xi().map(|x| {
                let (a, b) = x.on_v.split_at(x.on_v.len() / 2);
                let nonzero = x.on_v.iter().filter(|c| **c != int(0)).count();
                Value::list([
                    nonzero.to_string(),
                    (a == b).to_string(),
                    x.square_v.to_string(),
                ])
            }),
        );
        s.check(
            "fujiki-w-tau-v",
            "C(w_τ) and C(v_{τ,τ'}) from the restrictions of ξ",
            Value::list(rats(&[12, 4])),
            self.xi().map(|x| Value::list([&x.c_w_tau, &x.c_v])),
        )
        .trail = self
            .xi()
            .map(|x| {
                vec![
                    TrailStep::new("q_W(ξ|W)", Value::of(&x.square_w)),
                    TrailStep::new("∫_V (ξ|V)²", Value::of(&x.square_v)),
                ]
            })
            .unwrap_or_default();
        let mut expected = vec![int(2), q(1, 2), q(31, 32)];
        expected.extend(std::iter::repeat_n(q(-1, 32), 15));
        expected.push(q(-1, 4));
        s.check(
            "qbar-restriction",
            "ι*q̄ in the 19 invariant vectors",
            Value::list(expected),
            self.qbar().map(|r| Value::list(r.coords19.clone())),
        );
        s.check(
            "basis-change",
            "Σ s'_α s'_{α+θ} = 16δ² + 16 Σ s_α s_{α+θ} − 8δΣs for every θ",
            Value::rows(vec![rats(&[16, 16, -8]); 16]),
            self.lattice().and_then(|w| {
                restrict_canonical_basis_change(w)
                    .map_err(err)?
                    .into_iter()
                    .map(|c| {
                        c.map(|c| c.to_vec())
                            .ok_or_else(|| "pattern leaves the span".to_string())
                    })
                    .collect::<Res<Vec<_>>>()
                    .map(Value::rows)
            }),
        );
        s.check(
            "v-dot-qbar",
            "v·q̄_W = (5/6)(24 + 12)",
            Value::of(30),
            self.lattice()
                .and_then(|w| v_dot_qbar(w).map(Value::of).map_err(err)),
        );
        s.check(
            "w-other-reduced",
            "coupled 3 x 3 system for ι*w_{τ'}",
            Value::list([q(2, 5), int(0), q(1, 4)]),
            self.others()
                .map(|o| Value::list(o[0].reduced_solution.clone())),
        )
        .trail = self
            .others()
            .map(|o| {
                vec![
                    TrailStep::new("matrix", Value::matrix(&o[0].reduced_matrix)),
                    TrailStep::new("rhs", Value::list(o[0].reduced_rhs.clone())),
                ]
            })
            .unwrap_or_default();
        let thetas: Vec<TorsionPoint> = TorsionPoint::all_a2().into_iter().skip(1).collect();
        let row_for = |theta: TorsionPoint, head: [Rational; 3], hit: Rational| {
            let mut row = head.to_vec();
            row.extend(
                thetas
                    .iter()
                    .map(|t| if *t == theta { hit.clone() } else { int(0) }),
            );
            row.push(int(0));
            row
        };
        s.check(
            "w-other-all",
            "ι*w_{τ+θ} in the 19 invariant vectors, every θ ≠ 0",
            Value::rows(
                thetas
                    .iter()
                    .map(|t| row_for(*t, [q(2, 5), int(0), q(1, 4)], q(-1, 4))),
            ),
            self.others()
                .map(|o| Value::rows(o.iter().map(|x| x.coords19.clone()))),
        );
        s.check(
            "w-other-round-trip",
            "re-pairing ι*w_{τ+θ} with the 19 vectors reproduces its input data",
            Value::rows(
                thetas
                    .iter()
                    .map(|t| row_for(*t, [int(30), int(-4), int(-32)], int(-32))),
            ),
            self.others().and_then(|o| {
                let w = self.lattice()?;
                o.iter()
                    .map(|x| w.pairings19(&x.vector).map_err(err))
                    .collect::<Res<Vec<_>>>()
                    .map(Value::rows)
            }),
        );
        s.check(
            "w-self-rhs",
            "ι*w_τ·q̄_W, ι*w_τ·Σ ι*w_τ', ι*w_τ·ι*q̄",
            Value::list(rats(&[70, 180, 84])),
            self.w_self().map(|x| Value::list(x.rhs.clone())),
        );
        let mut beta = vec![int(0); 17];
        beta[2] = int(-512);
        beta[3] = int(512);
        s.check(
            "beta-equality",
            "ι*w_{τ+θ₁} − ι*w_{τ+θ₂} paired with ι*q̄ and Σ s'_α s'_{α+ρ}",
            Value::list(beta),
            self.w_self().map(|x| Value::list(x.beta_equation.clone())),
        );
        s.check(
            "beta-equality-uniform",
            "the same equation for every pair θ₁ ≠ θ₂",
            yes_no(true),
            self.w_self().map(|x| yes_no(x.beta_equation_uniform)),
        );
        s.check(
            "w-self-solution",
            "coefficients of ι*q̄, Σs'², Σ_{θ≠0} Σ s'_α s'_{α+θ} in ι*w_τ",
            Value::list([q(4, 5), q(9, 640), q(1, 640)]),
            self.w_self().map(|x| Value::list(x.solution.clone())),
        )
        .trail = self
            .w_self()
            .map(|x| {
                vec![
                    TrailStep::new("matrix", Value::matrix(&x.matrix)),
                    TrailStep::new("rhs", Value::list(x.rhs.clone())),
                ]
            })
            .unwrap_or_default();
        let mut fin = vec![q(8, 5), int(1), int(1)];
        fin.extend(std::iter::repeat_n(int(0), 15));
        fin.push(q(-1, 2));
        s.check(
            "w-self-final",
            "ι*w_τ = (8/5)q̄_W + δ² + Σs² − ½δΣs",
            Value::list(fin),
            self.w_self().map(|x| Value::list(x.coords19.clone())),
        );
        s.check(
            "w-self-round-trip",
            "re-pairing ι*w_τ reproduces 70, 180, 84 and 12 against each ι*w_τ'",
            Value::list(["70", "180", "84", "true"]),
            self.w_self().map(|x| {
                let mut v: Vec<String> = x.round_trip.iter().map(|r| r.to_string()).collect();
                v.push(
                    x.pairings_with_others
                        .iter()
                        .all(|p| *p == self.cfg.geometry.normal_c2_degree)
                        .to_string(),
                );
                Value::Vector(v)
            }),
        );
    }

    fn d_classes(&self, s: &mut Suite) {
        s.check(
            "d-self-pairings",
            "ι*w_τ·s'_α·s'_α' for α = α' and α ≠ α'",
            Value::list(["-52", "12", "true"]),
            self.d_self().map(|d| {
                Value::list([
                    d.same.to_string(),
                    d.different.to_string(),
                    d.uniform.to_string(),
                ])
            }),
        );
        s.check(
            "d-cross",
            "d_{τ,α}·d_{τ',α'} for τ ≠ τ'",
            Value::of(8),
            self.d_gram().map(|g| Value::of(&g.d_cross)),
        )
        .trail = self
            .d_self()
            .map(|d| {
                vec![
                    TrailStep::new(
                        "(Σ_α d_{τ,α})·d_{τ',α'}",
                        Value::of(&d.same + int(15) * &d.different),
                    ),
                    TrailStep::new("cross-τ pairing constant", Value::text("assumed")),
                ]
            })
            .unwrap_or_default();
        s.check(
            "d-gram-entries",
            "diagonal, same-τ and cross-τ entries",
            Value::list(rats(&[-52, 12, 8])),
            self.d_gram().map(|g| {
                Value::list([
                    g.matrix.get(0, 0),
                    g.matrix.get(0, 1),
                    g.matrix.get(0, A2_ORDER),
                ])
            }),
        );
        s.check(
            "d-gram-rank",
            "rank and kernel dimension of the 256 x 256 matrix",
            Value::list(rats(&[241, 15])),
            self.d_gram().map(|g| Value::list([g.rank, g.kernel.len()])),
        );
        s.check(
            "d-gram-kernel",
            "kernel spanned by the differences 1_τ − 1_τ'",
            Value::list(["true", "true"]),
            self.d_gram()
                .map(|g| Value::list([g.differences_in_kernel, g.kernel_is_differences])),
        );
        s.check(
            "d-block-square",
            "(Σ_α d_{τ,α})²",
            Value::of(2048),
            self.d_gram().map(|g| Value::of(&g.block_sum_square)),
        );
        let gamma = GroupElement::all_gamma();
        s.check(
            "d-orbit",
            "Γ permutes the 256 classes d_{τ,α} transitively; G keeps τ",
            Value::list(["256", "true"]),
            Ok(Value::list([
                orbit(Label::all_d()[0], &gamma).len().to_string(),
                Label::all_d()
                    .iter()
                    .all(|l| {
                        GroupElement::all_g()
                            .iter()
                            .all(|g| match (act(*g, *l), l) {
                                (Label::D { tau: a, .. }, Label::D { tau: b, .. }) => a == *b,
                                _ => false,
                            })
                    })
                    .to_string(),
            ])),
        );
        let generators: Vec<GroupElement> = GroupElement::gamma_generators()
            .into_iter()
            .chain(GroupElement::g_generators())
            .collect();
        s.check(
            "d-gram-equivariance",
            "the d-class matrix is invariant under the generators of Γ and G",
            yes_no(true),
            self.d_gram().map(|g| {
                let index = |l: Label| g.labels.iter().position(|x| *x == l).expect("d-label");
                let ok = generators.iter().all(|h| {
                    let perm: Vec<usize> = g.labels.iter().map(|l| index(act(*h, *l))).collect();
                    (0..perm.len()).all(|i| {
                        (0..perm.len())
                            .all(|j| g.matrix.get(perm[i], perm[j]) == g.matrix.get(i, j))
                    })
                });
                yes_no(ok)
            }),
        );
        s.check(
            "pairing-equivariance",
            "all label pairings are invariant under the generators of Γ and G",
            yes_no(true),
            (|| {
                let d = self.d_self()?;
                let g = self.d_gram()?;
                let pairing = LabelIntersections {
                    triple: self.triple()?,
                    d_same: d.same.clone(),
                    d_same_tau: d.different.clone(),
                    d_cross: g.d_cross.clone(),
                };
                pairing
                    .check_equivariance(&generators)
                    .map(|_| yes_no(true))
                    .map_err(err)
            })(),
        );
    }

    fn bookkeeping(&self, s: &mut Suite) {
        let h = &self.cfg.hodge;
        let diamond = HodgeDiamond::from_lower_half(&h.kum3_rows, 6).map_err(err);
        s.check(
            "hodge-symmetry",
            "Hodge rows of Kum3 are symmetric",
            Value::list(Vec::<String>::new()),
            diamond
                .as_ref()
                .map(|d| Value::list(d.asymmetric_rows()))
                .map_err(Clone::clone),
        );
        s.check(
            "betti",
            "Betti numbers of Kum3",
            Value::list([1, 0, 7, 8, 51, 56, 458, 56, 51, 8, 7, 0, 1]),
            diamond
                .as_ref()
                .map(|d| Value::list(d.betti()))
                .map_err(Clone::clone),
        );
        let llv = diamond.as_ref().map(llv_rank_check).map_err(Clone::clone);
        s.check(
            "llv-row-sums",
            "ranks of the LLV decomposition per even degree",
            Value::list([1, 7, 51, 458, 51, 7, 1]),
            llv.as_ref()
                .map(|t| Value::list(t.row_sums.clone()))
                .map_err(Clone::clone),
        );
        s.check(
            "llv-matches-betti",
            "LLV ranks equal the even Betti numbers",
            Value::list(["true", "576"]),
            llv.as_ref()
                .map(|t| {
                    Value::list([
                        (t.row_sums == t.even_betti).to_string(),
                        t.even_total.to_string(),
                    ])
                })
                .map_err(Clone::clone),
        );
        s.check(
            "llv-totals",
            "totals of V(3), V(1,1), 16V, 240 and the odd part",
            Value::list([156, 36, 144, 240, 128]),
            llv.as_ref()
                .map(|t| {
                    let mut v = t.column_totals.clone();
                    v.push(t.odd_total);
                    Value::list(v)
                })
                .map_err(Clone::clone),
        );
        s.check(
            "abelian-surface",
            "Hodge numbers of an abelian surface are C(2,p)·C(2,q)",
            yes_no(true),
            HodgeDiamond::from_lower_half(&h.abelian_rows, 2)
                .map_err(err)
                .map(|a| {
                    let c2 = [1, 2, 1];
                    let ok = (0..=4).all(|k: usize| {
                        a.row(k).iter().enumerate().all(|(m, x)| {
                            let p = k as i64 - m as i64;
                            let qd = m as i64;
                            let expected = if (0..=2).contains(&p) && (0..=2).contains(&qd) {
                                c2[p as usize] * c2[qd as usize]
                            } else {
                                0
                            };
                            *x == expected
                        })
                    });
                    yes_no(ok)
                }),
        );
        let gi = gamma_invariant_dims(h).map_err(err);
        s.check(
            "gamma-invariant-h4",
            "Hodge numbers of H⁴(Kum3)^Γ and of its complement to Sym²H²",
            Value::rows([vec![1, 6, 22, 6, 1], vec![0, 1, 6, 1, 0]]),
            gi.as_ref()
                .map(|g| Value::rows([g.h4_invariant.clone(), g.transcendental.clone()]))
                .map_err(Clone::clone),
        );
        s.check(
            "gamma-invariant-counts",
            "b4^Γ, other contributions to b6(A^[4]), b6^Γ, residual",
            Value::list([36, 479, 113, 0]),
            gi.as_ref()
                .map(|g| Value::list([g.b4_invariant, g.b6_other, g.b6_invariant, g.residual]))
                .map_err(Clone::clone),
        );
        let traces = llv
            .as_ref()
            .map(|t| g_trace_invariants(h, t))
            .map_err(Clone::clone);
        s.check(
            "g-traces",
            "traces of G on the 240-dimensional summand",
            Value::list([240, 0, -16]),
            traces
                .as_ref()
                .map(|t| Value::list([t.identity, t.odd, t.translation]))
                .map_err(Clone::clone),
        )
        .trail = vec![TrailStep::new(
            "χ(identity), χ(−x + θ), χ(x + θ)",
            Value::list([h.chi_identity, h.chi_odd, h.chi_translation]),
        )];
        s.check(
            "g-invariants",
            "class sizes, trace of the identity equals the rank, invariant dimension",
            Value::list(["1", "16", "15", "true", "0"]),
            traces
                .as_ref()
                .map(|t| {
                    let mut v: Vec<String> = t.classes.iter().map(|c| c.1.to_string()).collect();
                    v.push((t.identity == 240).to_string());
                    v.push(t.invariant_dim.to_string());
                    Value::Vector(v)
                })
                .map_err(Clone::clone),
        );
        s.check(
            "blowup",
            "h40, h31 after blowing up against a K3^[3]-type manifold",
            Value::list(h.k3_3_h4),
            Ok(Value::list(blowup_hodge_check(
                h.kum3_rows[4][0],
                h.kum3_rows[4][1],
                h.blowup_loci,
                h.blowup_locus_h20,
            ))),
        );
    }
}

const LAMBDA_MINUS: usize = crate::wgeom::LAMBDA_RANK;

fn uniform(ratios: Vec<Rational>) -> Res<Value> {
    match ratios.first() {
        Some(r) if ratios.iter().all(|x| x == r) => Ok(Value::of(r)),
        Some(_) => Err(format!(
            "ratios differ: {}",
            ratios
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )),
        None => Err("no ratios".into()),
    }
}

fn r<T>(x: &Res<T>) -> Res<&T> {
    x.as_ref().map_err(Clone::clone)
}
