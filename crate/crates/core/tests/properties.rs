use approx::relative_eq;
use milgrowth_core::{
    calibration::observe, classify_regime, comparative_statics, counterfactual_loss,
    fit_innovation, growth_rate, optimal_burden, peace_war_table, productivity, simulate, solve_a0,
    step, sweep, Country, DemandInputs, DemandParams, EconomyState, Error, GrowthObservation,
    GrowthParams, RegimeClass, RegimePoint, Schedule, SweepGrid,
};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = GrowthParams> {
    (
        0.05..0.4f64,
        0.01..0.12f64,
        0.1..0.6f64,
        0.0..10.0f64,
        0.0..150.0f64,
    )
        .prop_map(|(s, delta, a0, phi, chi)| GrowthParams::new(s, delta, a0, phi, chi).unwrap())
}

fn regime() -> impl Strategy<Value = RegimePoint> {
    (0.0..0.15f64, 0.0..0.05f64).prop_map(|(m, d)| RegimePoint::new(m, d))
}

fn stable_demand() -> impl Strategy<Value = DemandInputs> {
    (
        (0.0..50.0f64, 0.05..0.95f64, 0.0..0.6f64, 0.0..30.0f64),
        (
            0.0..0.3f64,
            1.0..50.0f64,
            0.0..0.1f64,
            0.0..40.0f64,
            0.0..20.0f64,
        ),
    )
        .prop_filter_map("unstable", |((c0, c1, tau, i0), (i1, i2, r, g_c, g_m))| {
            let i1 = i1.max(1e-3);
            (1.0 - c1 * (1.0 - tau) - i1 > 0.02).then_some(DemandInputs {
                c0,
                c1,
                tau,
                i0,
                i1,
                i2,
                r,
                g_c,
                g_m,
            })
        })
}

// Direct evaluation used as an oracle, kept apart from the library code path.
fn g_direct(p: &GrowthParams, m: f64, d: f64) -> f64 {
    -p.delta - d + p.s * (1.0 - m) * p.a0 * (1.0 + p.phi * m - p.chi * m * m)
}

proptest! {
    #[test]
    fn step_realizes_growth_rate(p in params(), r in regime(), k in 1e-3..1e6f64) {
        let g = growth_rate(&p, r).unwrap();
        let st = EconomyState::new(&p, r.m, k).unwrap();
        let res = step(&p, r, st).unwrap();
        prop_assert!(relative_eq!(res.realized_growth, g, epsilon = 1e-15, max_relative = 1e-12));
        prop_assert_eq!(res.next_capital, (1.0 - p.delta - r.d) * k + res.civilian_investment);
    }

    #[test]
    fn growth_independent_of_scale(p in params(), r in regime(), c in 1e-3..1e3f64) {
        let a = step(&p, r, EconomyState::new(&p, r.m, 50.0).unwrap()).unwrap();
        let b = step(&p, r, EconomyState::new(&p, r.m, 50.0 * c).unwrap()).unwrap();
        prop_assert!(relative_eq!(a.realized_growth, b.realized_growth, epsilon = 1e-15, max_relative = 1e-12));
    }

    #[test]
    fn linear_case_reduces(s in 0.05..0.4f64, delta in 0.01..0.1f64, a0 in 0.1..0.6f64, r in regime()) {
        let p = GrowthParams::linear(s, delta, a0).unwrap();
        let g = growth_rate(&p, r).unwrap();
        prop_assert!(relative_eq!(g, -delta + s * (1.0 - r.m) * a0 - r.d, epsilon = 1e-16));
    }

    #[test]
    fn destruction_is_one_for_one(p in params(), m in 0.0..0.15f64, d1 in 0.0..0.05f64, d2 in 0.0..0.05f64) {
        let g1 = growth_rate(&p, RegimePoint::new(m, d1)).unwrap();
        let g2 = growth_rate(&p, RegimePoint::new(m, d2)).unwrap();
        prop_assert!(relative_eq!(g1 - g2, d2 - d1, epsilon = 1e-16));
    }

    #[test]
    fn productivity_rises_then_falls(p in params(), u in 0.0..1.0f64, v in 0.0..1.0f64) {
        prop_assume!(p.chi > 1e-3);
        let vertex = p.productivity_peak().unwrap();
        prop_assume!(vertex < 0.95);
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        prop_assume!(hi - lo > 1e-6);
        let below = (lo * vertex, hi * vertex);
        let above = (vertex + lo * (0.99 - vertex), vertex + hi * (0.99 - vertex));
        prop_assert!(productivity(&p, below.0).unwrap() < productivity(&p, below.1).unwrap());
        prop_assert!(productivity(&p, above.0).unwrap() > productivity(&p, above.1).unwrap());
    }

    #[test]
    fn demand_fixed_point(inp in stable_demand()) {
        let sol = DemandParams::new(inp).unwrap().equilibrium();
        let y = sol.output;
        let c = inp.c0 + inp.c1 * (1.0 - inp.tau) * y;
        let i = inp.i0 + inp.i1 * y - inp.i2 * inp.r;
        prop_assert!(relative_eq!(y, c + i + inp.g_c + inp.g_m, max_relative = 1e-10, epsilon = 1e-10));
        prop_assert!(relative_eq!(y, sol.autonomous_component + sol.multiplier * inp.g_m, max_relative = 1e-12, epsilon = 1e-12));
    }

    #[test]
    fn multiplier_matches_finite_difference(inp in stable_demand()) {
        let p = DemandParams::new(inp).unwrap();
        let h = 1e-6;
        let fd = (p.with_military_spending(inp.g_m + h).unwrap().equilibrium().output
            - p.equilibrium().output) / h;
        prop_assert!(relative_eq!(fd, p.multiplier(), max_relative = 1e-6));
        prop_assert!(p.multiplier() > 0.0);
    }

    #[test]
    fn multiplier_increasing_in_propensities(inp in stable_demand(), bump in 1e-4..0.01f64) {
        let base = DemandParams::new(inp).unwrap().multiplier();
        if let Ok(more_c) = DemandParams::new(DemandInputs { c1: inp.c1 + bump, ..inp }) {
            prop_assert!(more_c.multiplier() > base);
        }
        if let Ok(more_i) = DemandParams::new(DemandInputs { i1: inp.i1 + bump, ..inp }) {
            prop_assert!(more_i.multiplier() > base);
        }
    }

    #[test]
    fn statics_match_finite_differences(p in params(), r in regime()) {
        let ps = comparative_statics(&p, r).unwrap();
        let h = 1e-7;
        let (m, d) = (r.m, r.d);
        // Central difference, or a second-order forward stencil at the m = 0 / d = 0 boundary.
        let fd = |f: &dyn Fn(f64) -> f64, x: f64| {
            if x >= h {
                (f(x + h) - f(x - h)) / (2.0 * h)
            } else {
                (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h)
            }
        };
        let pairs = [
            (ps.s, fd(&|x| g_direct(&GrowthParams { s: x, ..p }, m, d), p.s)),
            (ps.delta, fd(&|x| g_direct(&GrowthParams { delta: x, ..p }, m, d), p.delta)),
            (ps.a0, fd(&|x| g_direct(&GrowthParams { a0: x, ..p }, m, d), p.a0)),
            (ps.phi, fd(&|x| g_direct(&GrowthParams { phi: x, ..p }, m, d), p.phi)),
            (ps.chi, fd(&|x| g_direct(&GrowthParams { chi: x, ..p }, m, d), p.chi)),
            (ps.m, fd(&|x| g_direct(&p, x, d), m)),
            (ps.d, fd(&|x| g_direct(&p, m, x), d)),
        ];
        for (analytic, numeric) in pairs {
            // The floor covers partials that vanish (m = 0 kills phi and chi terms).
            prop_assert!(
                relative_eq!(analytic, numeric, max_relative = 1e-5, epsilon = 1e-9),
                "analytic {} vs numeric {}", analytic, numeric
            );
        }
    }

    #[test]
    fn sweep_level_shift(p in params(), d in 0.0..0.05f64) {
        let grid = SweepGrid::new(0.0, 0.12, 61).unwrap();
        let peace = sweep(&p, &grid, 0.0).unwrap();
        let war = sweep(&p, &grid, d).unwrap();
        for (a, b) in peace.iter().zip(&war) {
            prop_assert_eq!(b.g, a.g - d);
        }
    }

    #[test]
    fn hump_certificate(p in params()) {
        prop_assume!(p.phi > 1.0 && p.chi > 0.0);
        let opt = optimal_burden(&p, 0.0).unwrap();
        prop_assume!(opt.interior);
        let upper = opt.second_root.unwrap().min(0.999);
        let grid = SweepGrid::new(0.0, upper, 2001).unwrap();
        let pts = sweep(&p, &grid, 0.0).unwrap();
        for w in pts.windows(2) {
            if w[1].m <= opt.m_star {
                prop_assert!(w[1].g > w[0].g);
            } else if w[0].m >= opt.m_star {
                prop_assert!(w[1].g < w[0].g);
            }
        }
    }

    #[test]
    fn classification_consistent_with_optimum(p in params(), m in 0.0..0.3f64) {
        prop_assume!(p.chi > 0.0);
        let opt = optimal_burden(&p, 0.0).unwrap();
        let class = classify_regime(&p, m, 1e-4).unwrap();
        let expected = if m < opt.m_star - 1e-4 {
            RegimeClass::BelowOptimum
        } else if m > opt.m_star + 1e-4 {
            RegimeClass::PermanentWarEconomy
        } else {
            RegimeClass::NearOptimum
        };
        prop_assert_eq!(class, expected);
    }

    #[test]
    fn geometric_paths(p in params(), r in regime(), k0 in prop::sample::select(vec![1.0, 1e3, 1e6])) {
        let c = Country::new("x", p, k0).unwrap();
        let traj = simulate(&c, &Schedule::constant(r, 100).unwrap()).unwrap();
        let g = g_direct(&p, r.m, r.d);
        let y0 = traj.records[0].output;
        prop_assume!(y0 != 0.0);
        for rec in &traj.records {
            let expected = y0 * (1.0 + g).powi(rec.period as i32);
            prop_assert!(((rec.output - expected) / rec.output).abs() < 1e-9);
        }
    }

    #[test]
    fn schedules_compose(p in params(), a in regime(), b in regime(), t1 in 1usize..20, t2 in 1usize..20) {
        let c = Country::new("x", p, 100.0).unwrap();
        let whole = simulate(&c, &Schedule::switch(a, b, t1, t1 + t2).unwrap()).unwrap();
        let first = simulate(&c, &Schedule::constant(a, t1).unwrap()).unwrap();
        let cont = Country::new("x", p, first.terminal().capital).unwrap();
        let second = simulate(&cont, &Schedule::constant(b, t2).unwrap()).unwrap();
        prop_assert_eq!(&whole.records[..t1], &first.records[..t1]);
        for (x, y) in whole.records[t1..].iter().zip(&second.records) {
            prop_assert_eq!(x.capital, y.capital);
            prop_assert_eq!(x.output, y.output);
            prop_assert_eq!(x.growth, y.growth);
        }
    }

    #[test]
    fn annihilation_iff_nonpositive_factor(p in params(), m in 0.0..0.99f64, d_frac in 0.0..1.0f64) {
        let d = d_frac * (0.999 - p.delta);
        let r = RegimePoint::new(m, d);
        let factor = (1.0 - p.delta - d) + p.s * (1.0 - m) * p.a0 * (1.0 + p.phi * m - p.chi * m * m);
        let c = Country::new("x", p, 1.0).unwrap();
        let out = simulate(&c, &Schedule::constant(r, 1).unwrap());
        prop_assert_eq!(matches!(out, Err(Error::Annihilated { period: 0, .. })), factor <= 0.0);
    }

    #[test]
    fn country_order_does_not_matter(p1 in params(), p2 in params(), r1 in regime(), r2 in regime()) {
        let a = Country::new("a", p1, 100.0).unwrap();
        let b = Country::new("b", p2, 100.0).unwrap();
        let peace = [RegimePoint::peace(r1.m), RegimePoint::peace(r2.m)];
        let war = [r1, r2];
        let fwd = peace_war_table(&[a.clone(), b.clone()], &peace, &war, 10).unwrap();
        let rev = peace_war_table(&[b, a], &[peace[1], peace[0]], &[war[1], war[0]], 10).unwrap();
        prop_assert_eq!(&fwd.rows[0], &rev.rows[1]);
        prop_assert_eq!(&fwd.rows[1], &rev.rows[0]);
    }

    #[test]
    fn counterfactual_identity(p in params(), r in regime()) {
        let c = Country::new("x", p, 100.0).unwrap();
        let s = Schedule::constant(r, 10).unwrap();
        let rep = counterfactual_loss(&c, &s, &s).unwrap();
        prop_assert!(rep.gaps.iter().all(|&g| g == 0.0));
        prop_assert_eq!(rep.terminal_ratio, 1.0);
    }

    #[test]
    fn a0_round_trip(p in params(), r in regime()) {
        let obs = observe(&p, r).unwrap();
        let a0 = solve_a0(p.s, p.delta, p.phi, p.chi, obs).unwrap();
        let g = growth_rate(&GrowthParams { a0, ..p }, r).unwrap();
        prop_assert!((g - obs.g).abs() <= 1e-12);
        prop_assert!(relative_eq!(a0, p.a0, max_relative = 1e-9));
    }

    #[test]
    fn innovation_round_trip(p in params(), m1 in 0.005..0.15f64, m2 in 0.005..0.15f64, d in 0.0..0.05f64) {
        prop_assume!((m1 - m2).abs() > 0.01);
        prop_assume!(p.phi > 0.1 && p.chi > 0.1);
        let o1 = observe(&p, RegimePoint::peace(m1)).unwrap();
        let o2 = observe(&p, RegimePoint::new(m2, d)).unwrap();
        let fit = fit_innovation(p.s, p.delta, p.a0, o1, o2).unwrap();
        prop_assert!(relative_eq!(fit.phi, p.phi, max_relative = 1e-9));
        prop_assert!(relative_eq!(fit.chi, p.chi, max_relative = 1e-9));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closed_form_optimum_matches_grid(p in params()) {
        prop_assume!(p.chi > 0.0);
        let opt = optimal_burden(&p, 0.0).unwrap();
        let mut best = (0.0, f64::NEG_INFINITY);
        for i in 0..100_000 {
            let m = i as f64 * 1e-5;
            let g = g_direct(&p, m, 0.0);
            if g > best.1 {
                best = (m, g);
            }
        }
        prop_assert!((opt.m_star - best.0).abs() <= 1e-5 + 1e-12, "{} vs {}", opt.m_star, best.0);
    }
}

#[test]
fn observation_needs_valid_regime() {
    let o = GrowthObservation::new(0.02, 0.99, 0.01);
    assert!(solve_a0(0.2, 0.05, 5.0, 60.0, o).is_err());
}
