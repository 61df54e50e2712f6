//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! lines are always printed; exits nonzero when any criterion fails.

mod common;

use std::process::ExitCode;

use kum3_core::bookkeeping::{
    blowup_hodge_check, g_trace_invariants, gamma_invariant_dims, llv_rank_check, HodgeDiamond,
};
use kum3_core::config::Config;
use kum3_core::exact::{int, q, Matrix};
use kum3_core::fujiki::{
    auxiliary_values, derive_z_relations, express_w_v, qbar_factor, GradedClass, WvInputs,
};
use kum3_core::kummer::{
    act, d_gram, deg4_independence_certificate, enumerate_sum_power, expand_sum_power,
    qbar_multiplication_injectivity, GroupElement, Label, LabelIntersections, TorsionPoint,
    TuplePattern, WTriple, A2_ORDER,
};
use kum3_core::quadspace::{QuadSpace, Sym2Vector};
use kum3_core::wgeom::{
    d_self_pairings, restrict_qbar, restrict_w_other, restrict_w_self, restriction_of_xi,
    v_dot_qbar, WLattice, WSelfInputs,
};
use kum3_core::Rational;
use proptest::strategy::Strategy;
use proptest::test_runner::{Config as RunnerConfig, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<(), String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, computed: T, expected: T) -> Outcome {
    if computed == expected {
        Ok(())
    } else {
        Err(format!(
            "{what}: computed {computed:?}, expected {expected:?}"
        ))
    }
}

fn rs(xs: &[(i64, i64)]) -> Vec<Rational> {
    xs.iter().map(|(n, d)| q(*n, *d)).collect()
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn criterion_1(cfg: &Config) -> Outcome {
    let t = &cfg.fujiki;
    expect("table size", t.len(), 14)?;
    let mut exceptions = 0;
    for (degree, factor) in [(0, q(11, 5)), (4, int(3)), (8, int(7))] {
        expect(
            "q̄-factor",
            qbar_factor(t, degree).map_err(fail)?,
            factor.clone(),
        )?;
        let pairs = t.qbar_pairs(degree);
        if pairs.is_empty() {
            return Err(format!("no pairs in degree {degree}"));
        }
        exceptions += pairs.iter().filter(|(_, c, cq)| *cq != c * &factor).count();
    }
    expect("exceptions", exceptions, 0)
}

fn criterion_2(cfg: &Config) -> Outcome {
    let r = derive_z_relations(&cfg.fujiki).map_err(fail)?;
    let z = GradedClass::z();
    expect("C(z)", r.fujiki_constant(&z), int(0))?;
    expect("C(z²)", r.c_z_sq.clone(), q(384, 11))?;
    expect("C(q̄·z²)", r.qbar_z_sq.clone(), q(2688, 11))?;
    expect(
        "z³",
        r.integrate(&[z.clone(), z.clone(), z]).map_err(fail)?,
        q(-22016, 121),
    )?;
    expect("z²", r.z_sq.to_vec(), rs(&[(32, 363), (-172, 231)]))?;
    expect("c2²", r.c2_sq.to_vec(), rs(&[(160, 33), (76, 21)]))?;
    expect("c4", r.c4.to_vec(), rs(&[(40, 33), (-47, 21)]))?;
    expect("q̄²·z", r.qbar_sq_z.clone(), int(0))
}

fn criterion_3(cfg: &Config) -> Outcome {
    let r = derive_z_relations(&cfg.fujiki).map_err(fail)?;
    let inputs = WvInputs {
        c_w_tau: int(12),
        c_v_pair: int(4),
        w_sq_w: cfg.geometry.normal_c2_degree.clone(),
        w_w_w: cfg.geometry.triple_point_count.clone(),
        c2_v_pair: cfg.geometry.c2_degree_on_v.clone(),
    };
    let wv = express_w_v(&r, &inputs).map_err(fail)?;
    expect("w", wv.w.coordinates(), vec![q(16, 11), int(-3)])?;
    expect("v", wv.v.coordinates(), vec![q(40, 33), q(-45, 7)])?;
    expect("w·v", wv.w_dot_v.clone(), int(9600))?;
    expect("w³", wv.w_cubed.clone(), int(23040))?;
    expect("w_τ³", wv.w_tau_cubed.clone(), int(60))?;
    let eight_qbar_minus_3c2 =
        GradedClass::linear_combination(&[(int(8), &GradedClass::qbar()), (int(-3), &r.c2())])
            .ok_or("degree mismatch")?;
    expect("w = 8q̄ − 3c2", eight_qbar_minus_3c2, wv.w.clone())?;
    let seven_c4_minus_c2_sq =
        GradedClass::linear_combination(&[(int(7), &r.c4_class()), (int(-1), &r.c2_squared())])
            .ok_or("degree mismatch")?;
    expect("3v = 7c4 − c2²", seven_c4_minus_c2_sq, wv.v.scaled(&int(3)))
}

fn criterion_4(cfg: &Config) -> Outcome {
    let r = derive_z_relations(&cfg.fujiki).map_err(fail)?;
    let inputs = WvInputs {
        c_w_tau: int(12),
        c_v_pair: int(4),
        w_sq_w: cfg.geometry.normal_c2_degree.clone(),
        w_w_w: cfg.geometry.triple_point_count.clone(),
        c2_v_pair: cfg.geometry.c2_degree_on_v.clone(),
    };
    let wv = express_w_v(&r, &inputs).map_err(fail)?;
    let aux = auxiliary_values(&r, &wv, &inputs).map_err(fail)?;
    let triple = WTriple {
        self_cube: wv.w_tau_cubed.clone(),
        double: cfg.geometry.normal_c2_degree.clone(),
        distinct: cfg.geometry.triple_point_count.clone(),
    };
    let cert = deg4_independence_certificate(&r, &wv, &aux, &triple).map_err(fail)?;
    expect(
        "deg-4 shape",
        (cert.matrix.rows(), cert.matrix.cols()),
        (17, 138),
    )?;
    expect("deg-4 rank", cert.rank, 17)?;
    let inj = qbar_multiplication_injectivity(&r, &wv, &aux).map_err(fail)?;
    expect("q̄ kernel", inj.kernel.len(), 0)?;
    let g = d_gram(&int(-52), &int(12));
    let m = &g.matrix;
    let n = g.labels.len();
    let mut bad = 0;
    for i in 0..n {
        for j in 0..n {
            let expected = match (&g.labels[i], &g.labels[j]) {
                _ if i == j => -52,
                (Label::D { tau: t1, .. }, Label::D { tau: t2, .. }) if t1 == t2 => 12,
                _ => 8,
            };
            if *m.get(i, j) != int(expected) {
                bad += 1;
            }
        }
    }
    expect("entries off pattern", bad, 0)?;
    expect("d rank", g.rank, 241)?;
    expect("d kernel dimension", g.kernel.len(), 15)?;
    // independent check: the 15 differences 1_{τ₀} − 1_τ span a 15-dimensional
    // subspace of the kernel, which then equals it
    let blocks: Vec<Vec<usize>> = TorsionPoint::all_a2()
        .into_iter()
        .map(|t| {
            (0..n)
                .filter(|i| matches!(g.labels[*i], Label::D { tau, .. } if tau == t))
                .collect()
        })
        .collect();
    let mut diffs = Vec::new();
    for b in &blocks[1..] {
        let mut v = vec![int(0); n];
        for i in &blocks[0] {
            v[*i] = int(1);
        }
        for i in b {
            v[*i] = int(-1);
        }
        expect(
            "difference in kernel",
            m.mul_vec(&v).map_err(fail)?.iter().all(|x| *x == int(0)),
            true,
        )?;
        diffs.push(v);
    }
    expect(
        "difference span",
        Matrix::from_rows(diffs).map_err(fail)?.rank(),
        15,
    )?;
    let ones: Vec<Rational> = (0..n)
        .map(|i| {
            if blocks[0].contains(&i) {
                int(1)
            } else {
                int(0)
            }
        })
        .collect();
    let sq: Rational = ones
        .iter()
        .zip(m.mul_vec(&ones).map_err(fail)?)
        .map(|(a, b)| a * b)
        .sum();
    expect("(Σ d)²", sq, int(2048))
}

/// Pairing of `e_a e_b` with `e_c e_d` for a diagonal form.
fn matching(g: &[Rational], (a, b): (usize, usize), (c, d): (usize, usize)) -> Rational {
    let q = |i: usize, j: usize| if i == j { g[i].clone() } else { int(0) };
    q(a, b) * q(c, d) + q(a, c) * q(b, d) + q(a, d) * q(b, c)
}

fn criterion_5(cfg: &Config) -> Outcome {
    // coordinates: 3 + 3 lattice directions, 16 exceptional s_α (α as 4-bit
    // masks, α + θ = α xor θ), δ
    let mut g = vec![int(4); 3];
    g.extend(vec![int(-4); 3]);
    g.extend(vec![int(-2); 17]);
    let s = |a: usize| 6 + a;
    let delta = 22;
    type Terms = Vec<((usize, usize), Rational)>;
    let mut basis: Vec<Terms> = Vec::new();
    basis.push((0..23).map(|i| ((i, i), int(1) / g[i].clone())).collect());
    basis.push(vec![((delta, delta), int(1))]);
    for theta in 0..16 {
        basis.push((0..16).map(|a| ((s(a), s(a ^ theta)), int(1))).collect());
    }
    basis.push((0..16).map(|a| ((delta, s(a)), int(1))).collect());
    let oracle = Matrix::from_fn(19, 19, |i, j| {
        let mut total = int(0);
        for (m1, c1) in &basis[i] {
            for (m2, c2) in &basis[j] {
                total += c1 * c2 * matching(&g, *m1, *m2);
            }
        }
        total
    });
    let w =
        WLattice::new(TorsionPoint::ZERO, cfg.geometry.clone(), cfg.k3two.clone()).map_err(fail)?;
    let computed = w.gram19().map_err(fail)?;
    expect(
        "differing entries",
        computed.differing_entries(&oracle),
        vec![],
    )?;
    let head = [[575, -50, -800], [-50, 12, 64], [-800, 64, 1152]];
    let literal = Matrix::from_fn(19, 19, |i, j| match (i, j) {
        (i, j) if i < 3 && j < 3 => int(head[i][j]),
        (18, 18) => int(64),
        (i, j) if i == j => int(128),
        _ => int(0),
    });
    expect(
        "differing from literal",
        computed.differing_entries(&literal),
        vec![],
    )
}

fn criterion_6(cfg: &Config) -> Outcome {
    let w =
        WLattice::new(TorsionPoint::ZERO, cfg.geometry.clone(), cfg.k3two.clone()).map_err(fail)?;
    let qbar = restrict_qbar(&w).map_err(fail)?;
    let c = &qbar.coords19;
    expect(
        "ι*q̄",
        (
            c[0].clone(),
            c[1].clone(),
            c[2].clone(),
            c[3..18].to_vec(),
            c[18].clone(),
        ),
        (int(2), q(1, 2), q(31, 32), vec![q(-1, 32); 15], q(-1, 4)),
    )?;
    let others = w
        .thetas
        .iter()
        .map(|t| restrict_w_other(&w, *t).map_err(fail))
        .collect::<Result<Vec<_>, _>>()?;
    for (k, o) in others.iter().enumerate() {
        expect(
            "w_other",
            o.reduced_solution.clone(),
            vec![q(2, 5), int(0), q(1, 4)],
        )?;
        expect("β", o.coords19[3 + k].clone(), q(-1, 4))?;
        let pairings = w.pairings19(&o.vector).map_err(fail)?;
        expect("w_other·q̄_W", pairings[0].clone(), int(30))?;
        expect("w_other·δ²", pairings[1].clone(), int(-4))?;
        let rank = w.rank();
        for i in 0..w.fiber.len() {
            let j = w
                .fiber
                .iter()
                .position(|a| *a == w.fiber[i] + o.theta)
                .ok_or("fiber not closed")?;
            let mono = Sym2Vector::monomial(rank, w.s(i), w.s(j));
            expect(
                "−2 pattern",
                w.pair(&o.vector, &mono).map_err(fail)?,
                int(-2),
            )?;
        }
    }
    expect("v·q̄_W", v_dot_qbar(&w).map_err(fail)?, int(30))?;
    let xi = restriction_of_xi(&w, w.thetas[0]).map_err(fail)?;
    let r = derive_z_relations(&cfg.fujiki).map_err(fail)?;
    let inputs = WvInputs {
        c_w_tau: xi.c_w_tau.clone(),
        c_v_pair: xi.c_v.clone(),
        w_sq_w: cfg.geometry.normal_c2_degree.clone(),
        w_w_w: cfg.geometry.triple_point_count.clone(),
        c2_v_pair: cfg.geometry.c2_degree_on_v.clone(),
    };
    let wv = express_w_v(&r, &inputs).map_err(fail)?;
    let aux = auxiliary_values(&r, &wv, &inputs).map_err(fail)?;
    let ws = restrict_w_self(
        &w,
        &others,
        &qbar,
        &WSelfInputs {
            c4_w_tau: cfg.geometry.c4_w_tau.clone(),
            w_sq_w: cfg.geometry.normal_c2_degree.clone(),
            qbar_w_tau_sq: aux.qbar_w_tau_sq.clone(),
        },
    )
    .map_err(fail)?;
    expect(
        "w_self solution",
        ws.solution.clone(),
        vec![q(4, 5), q(9, 640), q(1, 640)],
    )?;
    let mut fin = vec![q(8, 5), int(1), int(1)];
    fin.extend(vec![int(0); 15]);
    fin.push(q(-1, 2));
    expect("w_self final", ws.coords19.clone(), fin)?;
    expect(
        "w_self round trip",
        ws.round_trip.clone(),
        vec![int(70), int(180), int(84)],
    )?;
    expect(
        "w_self·w_other",
        ws.pairings_with_others.clone(),
        vec![int(12); 15],
    )?;
    let d = d_self_pairings(&w, &ws.vector).map_err(fail)?;
    expect(
        "d self",
        (d.same, d.different, d.uniform),
        (int(-52), int(12), true),
    )
}

fn criterion_7(cfg: &Config) -> Outcome {
    let h = &cfg.hodge;
    let diamond = HodgeDiamond::from_lower_half(&h.kum3_rows, 6).map_err(fail)?;
    let llv = llv_rank_check(&diamond);
    expect(
        "row sums",
        llv.row_sums.clone(),
        vec![1, 7, 51, 458, 51, 7, 1],
    )?;
    let mut totals = llv.column_totals.clone();
    totals.push(llv.odd_total);
    expect("totals", totals, vec![156, 36, 144, 240, 128])?;
    let gi = gamma_invariant_dims(h).map_err(fail)?;
    expect(
        "479 / 113 / 0",
        (gi.b6_other, gi.b6_invariant, gi.residual),
        (479, 113, 0),
    )?;
    expect(
        "trace inputs",
        (h.chi_identity, h.chi_odd, h.chi_translation),
        (448, 464, 192),
    )?;
    let t = g_trace_invariants(h, &llv);
    expect("traces", (t.identity, t.odd, t.translation), (240, 0, -16))?;
    expect("invariant dimension", t.invariant_dim, 0)?;
    let b = blowup_hodge_check(
        h.kum3_rows[4][0],
        h.kum3_rows[4][1],
        h.blowup_loci,
        h.blowup_locus_h20,
    );
    expect("h31", b[1], 22)
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        RunnerConfig {
            failure_persistence: None,
            ..RunnerConfig::with_cases(cases)
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn criterion_8() -> Outcome {
    runner(200)
        .run(&common::small_matrix(), |rows| {
            let m = Matrix::from_fn(rows.len(), rows[0].len(), |i, j| int(rows[i][j]));
            let e = m.rref();
            let oracle = common::brute_rank(&rows);
            proptest::prop_assert_eq!(e.rank(), oracle);
            proptest::prop_assert_eq!(e.rank() + e.kernel_basis().len(), m.cols());
            Ok(())
        })
        .map_err(|e| format!("rank–nullity: {e}"))?;

    let vecs = (1usize..=5).prop_flat_map(|n| {
        (
            proptest::collection::vec(-4i64..=4, n * n),
            proptest::collection::vec(proptest::collection::vec(-6i64..=6, n), 4),
            -5i64..=5,
        )
    });
    runner(100)
        .run(&vecs, |(gram, vs, a)| {
            let n = vs[0].len();
            let space = QuadSpace::new(
                (0..n).map(|i| format!("e{i}")).collect(),
                Matrix::from_fn(n, n, |i, j| int(gram[i.min(j) * n + i.max(j)])),
            )
            .unwrap();
            let v: Vec<Vec<Rational>> = vs
                .iter()
                .map(|x| x.iter().map(|c| int(*c)).collect())
                .collect();
            let u1 = Sym2Vector::product(&v[0], &v[1]).unwrap();
            let u2 = Sym2Vector::product(&v[2], &v[3]).unwrap();
            let u3 = Sym2Vector::square(&v[1]);
            let p =
                |x: &Sym2Vector<Rational>, y: &Sym2Vector<Rational>| space.sym2_pair(x, y).unwrap();
            proptest::prop_assert_eq!(p(&u1, &u2), p(&u2, &u1));
            let mut combo = u1.scaled(&int(a));
            combo.add_scaled(&u3, &int(1));
            proptest::prop_assert_eq!(p(&combo, &u2), int(a) * p(&u1, &u2) + p(&u3, &u2));
            Ok(())
        })
        .map_err(|e| format!("Sym² bilinearity: {e}"))?;

    let pairing = LabelIntersections {
        triple: WTriple {
            self_cube: int(60),
            double: int(12),
            distinct: int(4),
        },
        d_same: int(-52),
        d_same_tau: int(12),
        d_cross: int(8),
    };
    let generators: Vec<GroupElement> = GroupElement::gamma_generators()
        .into_iter()
        .chain(GroupElement::g_generators())
        .collect();
    pairing.check_equivariance(&generators).map_err(fail)?;
    let w = Label::all_w();
    let spot = [w[0], w[1], w[5]];
    for g in &generators {
        let moved: Vec<Label> = spot.iter().map(|l| act(*g, *l)).collect();
        expect(
            "spot equivariance",
            pairing.pair(&moved).map_err(fail)?,
            pairing.pair(&spot).map_err(fail)?,
        )?;
    }

    runner(100)
        .run(&(-100i64..=100, -100i64..=100), |(a, b)| {
            let f = |p: &TuplePattern| Some(int(if p.block_count() == 1 { a } else { b }));
            proptest::prop_assert_eq!(
                expand_sum_power(A2_ORDER, 2, f).unwrap(),
                enumerate_sum_power(A2_ORDER, 2, f).unwrap()
            );
            Ok(())
        })
        .map_err(|e| format!("orbit counting: {e}"))
}

fn criterion_9(cfg: &Config) -> Outcome {
    let all = common::perturbations(&cfg.document);
    let table_entries = all
        .iter()
        .filter(|(l, _)| l.starts_with("fujiki_table."))
        .count();
    expect("table perturbations", table_entries, 14)?;
    let undetected: Vec<String> = all
        .into_iter()
        .filter(|(_, doc)| !common::detected(doc.clone()))
        .map(|(l, _)| l)
        .collect();
    expect("undetected perturbations", undetected, Vec::<String>::new())
}

fn main() -> ExitCode {
    let cfg = Config::bundled();
    let criteria: [Criterion; 9] = [
        ("Fujiki table consistency", Box::new(|| criterion_1(&cfg))),
        ("z-relations and expansions", Box::new(|| criterion_2(&cfg))),
        ("classes w and v", Box::new(|| criterion_3(&cfg))),
        ("rank certificates", Box::new(|| criterion_4(&cfg))),
        ("19 x 19 matrix", Box::new(|| criterion_5(&cfg))),
        ("restriction solves", Box::new(|| criterion_6(&cfg))),
        ("bookkeeping", Box::new(|| criterion_7(&cfg))),
        ("property suites", Box::new(criterion_8)),
        ("mutation sensitivity", Box::new(|| criterion_9(&cfg))),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(()) => println!("criterion {}: pass ({name})", i + 1),
            Err(e) => {
                failures += 1;
                println!("criterion {}: fail ({name}): {e}", i + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
