//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use nearlin::automorphism::{eps_apply, eps_invert, AutoParam, ComplexScalar};
use nearlin::duality::{
    annihilator_basis, double_dual_eval, dual_basis, evaluate, DualFunctional, FiniteNVS,
};
use nearlin::integral::{self, SampledFunction};
use nearlin::limit::{
    binary_limit_add, eps_inv_limit, inf_sum, neg_inf_sum, zero_sum_terms, Direction, LimitMode,
    LimitParam,
};
use nearlin::lp::{
    self, check_identities, lpq_norm, trace_unit_circle, ComplexMatrix, DeformedVector, LpSpace,
    NearInnerProductSpace, PairingSpec,
};
use nearlin::means::{
    expand, kolmogorov_check, mean, mean_with, MeanOptions, WeightSplit, WeightedFamily,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_4, PI};
use std::process::Command;
use std::time::{Duration, Instant};

type C = ComplexScalar;
type Criterion = (&'static str, fn() -> Verdict);

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

fn random_complex(r: &mut ChaCha8Rng, lo: f64, hi: f64) -> C {
    C::from_polar(r.gen_range(lo..hi), r.gen_range(-PI..PI))
}

fn random_vector(r: &mut ChaCha8Rng, dim: usize) -> DeformedVector {
    DeformedVector::new(
        (0..dim)
            .map(|_| c(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0)))
            .collect(),
    )
}

fn fmt_time(d: Duration) -> String {
    format!("{:.3} ms", d.as_secs_f64() * 1e3)
}

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

/// Moduli `m0 * prod ratio_k` with every ratio in `[1.1, 1.25]`, shuffled,
/// each with a random phase.
fn separated_values(r: &mut ChaCha8Rng) -> Vec<C> {
    let n = r.gen_range(2..=6);
    let mut m = r.gen_range(0.5..2.0);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(C::from_polar(m, r.gen_range(-PI..PI)));
        m *= r.gen_range(1.1..1.25);
    }
    out.shuffle(r);
    out
}

/// Values with separated moduli and weights `omega_k e^{-i arg r_k}`, so the
/// rotated weights sum to exactly the positive `omega`s.
fn normalized_family(r: &mut ChaCha8Rng) -> WeightedFamily {
    let values = separated_values(r);
    let raw: Vec<f64> = values.iter().map(|_| r.gen_range(0.1..1.0)).collect();
    let total: f64 = raw.iter().sum();
    WeightedFamily::new(
        values
            .iter()
            .zip(&raw)
            .map(|(&v, &w)| (v, C::from_polar(w / total, -v.arg())))
            .collect(),
    )
}

fn positive_family(r: &mut ChaCha8Rng, max_len: usize) -> Vec<(f64, f64)> {
    let n = r.gen_range(1..=max_len);
    let raw: Vec<(f64, f64)> = (0..n)
        .map(|_| (r.gen_range(0.1..10.0), r.gen_range(0.05..1.0)))
        .collect();
    let total: f64 = raw.iter().map(|e| e.1).sum();
    raw.into_iter().map(|(x, w)| (x, w / total)).collect()
}

fn ac1() -> Verdict {
    let d = Direction::real_axis();
    let add = |a: C, b: C| binary_limit_add(LimitMode::PosInf, &d, a, b);
    let start = Instant::now();
    let left = add(add(c(2.0, 0.0), c(3.0, 0.0)), c(-3.0, 0.0));
    let right = add(c(2.0, 0.0), add(c(3.0, 0.0), c(-3.0, 0.0)));
    let took = start.elapsed();
    let pass = left == c(0.0, 0.0) && right == c(2.0, 0.0) && took < Duration::from_millis(1);
    verdict(
        pass,
        format!(
            "(2+3)+(-3) = {left}, 2+(3+(-3)) = {right}, {}",
            fmt_time(took)
        ),
    )
}

fn ac2() -> Verdict {
    let mut r = rng(2);
    let mut dot_gap = 0.0f64;
    let mut dot_misses = 0usize;
    let mut pulled_gap = 0.0f64;
    let mut add_gap = 0.0f64;
    let mut identity_gap = 0.0f64;
    let mut identity_key = "";
    let start = Instant::now();
    for _ in 0..1000 {
        let dim = r.gen_range(2..=8);
        let s = LpSpace::new(dim, 2.0).unwrap();
        let (u, v, w) = (
            random_vector(&mut r, dim),
            random_vector(&mut r, dim),
            random_vector(&mut r, dim),
        );
        let alpha = random_complex(&mut r, 0.2, 3.0);
        let dot: C = u
            .coords()
            .iter()
            .zip(v.coords())
            .map(|(a, b)| a * b.conj())
            .sum();
        let got = s.pairing(&u, &v).unwrap();
        let scale = u.coords().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
            * v.coords().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let e = (got - dot).norm() / scale.max(1.0);
        dot_gap = dot_gap.max(e);
        if e > 1e-10 {
            dot_misses += 1;
        }
        pulled_gap = pulled_gap.max((s.line().psi_inv(got) - dot).norm() / scale.max(1.0));
        let sum = s.vec_add(&u, &v).unwrap();
        for ((x, a), b) in sum.coords().iter().zip(u.coords()).zip(v.coords()) {
            add_gap = add_gap.max((x - (a + b)).norm() / (a.norm() + b.norm()).max(1.0));
        }
        let rep = check_identities(&s, &u, &v, &w, alpha).unwrap();
        for (k, val) in rep.iter() {
            if val > identity_gap {
                identity_gap = val;
                identity_key = k;
            }
        }
    }
    let took = start.elapsed();
    let pass = dot_gap <= 1e-10
        && add_gap <= 1e-10
        && identity_gap <= 1e-10
        && took < Duration::from_secs(1);
    verdict(
        pass,
        format!(
            "pairing vs Hermitian dot: max gap {dot_gap:.2e}, {dot_misses}/1000 over 1e-10 \
             (pulled back to the classical picture: {pulled_gap:.2e}); vec_add gap {add_gap:.2e}; \
             identities worst {identity_gap:.2e} ({identity_key}); {}",
            fmt_time(took)
        ),
    )
}

fn ac3() -> Verdict {
    const KEYS: [&str; 7] = [
        "cauchy_schwarz",
        "triangle",
        "parallelogram",
        "polarization_real",
        "polarization_complex",
        "bessel",
        "pythagoras",
    ];
    let mut r = rng(3);
    let mut worst = 0.0f64;
    let mut worst_at = String::new();
    let start = Instant::now();
    for p in [1.0, 3.0, 4.0, 7.0] {
        for _ in 0..500 {
            let dim = r.gen_range(2..=6);
            let s = LpSpace::new(dim, p).unwrap();
            let (u, v, w) = (
                random_vector(&mut r, dim),
                random_vector(&mut r, dim),
                random_vector(&mut r, dim),
            );
            let alpha = random_complex(&mut r, 0.2, 3.0);
            let rep = check_identities(&s, &u, &v, &w, alpha).unwrap();
            for k in KEYS {
                let val = rep.get(k).unwrap_or(f64::INFINITY);
                if val > worst {
                    worst = val;
                    worst_at = format!("{k} at p = {p}");
                }
            }
        }
    }
    let took = start.elapsed();
    verdict(
        worst <= 1e-8 && took < Duration::from_secs(10),
        format!(
            "worst residual {worst:.2e} ({worst_at}) over 2000 pairs, {}",
            fmt_time(took)
        ),
    )
}

fn ac4() -> Verdict {
    let mut r = rng(4);
    let mut lp_gap = 0.0f64;
    for _ in 0..1000 {
        let dim = r.gen_range(1..=10);
        let p = r.gen_range(0.5..8.0);
        let u = random_vector(&mut r, dim);
        let want = u
            .coords()
            .iter()
            .map(|z| z.norm().powf(p))
            .sum::<f64>()
            .powf(1.0 / p);
        let got = LpSpace::new(dim, p).unwrap().lp_norm(&u).unwrap();
        lp_gap = lp_gap.max((got - want).abs() / want);
    }
    let mut lpq_gap = 0.0f64;
    for _ in 0..500 {
        let (m, n) = (r.gen_range(1..=5), r.gen_range(1..=5));
        let (p, q) = (r.gen_range(0.5..6.0), r.gen_range(0.5..6.0));
        let rows: Vec<Vec<C>> = (0..m)
            .map(|_| random_vector(&mut r, n).into_coords())
            .collect();
        let want = (0..n)
            .map(|j| {
                (0..m)
                    .map(|i| rows[i][j].norm().powf(p))
                    .sum::<f64>()
                    .powf(q / p)
            })
            .sum::<f64>()
            .powf(1.0 / q);
        let got = lpq_norm(&ComplexMatrix::from_rows(rows).unwrap(), p, q).unwrap();
        lpq_gap = lpq_gap.max((got - want).abs() / want);
    }
    let f = SampledFunction::from_fn(0.0, 2.0, 256, |_| c(1.0, 0.0)).unwrap();
    let lp3 = integral::lp_norm(&f, 3.0).unwrap();
    let int_gap = (lp3 - 2f64.cbrt()).abs();
    verdict(
        lp_gap <= 1e-12 && lpq_gap <= 1e-10 && int_gap <= 1e-6,
        format!("lp rel gap {lp_gap:.2e}; lpq rel gap {lpq_gap:.2e}; L3 norm of 1 on [0,2] = {lp3} (gap {int_gap:.2e})"),
    )
}

fn ac5() -> Verdict {
    let mut r = rng(5);
    let d = Direction::real_axis();
    let (mut worst_inf, mut worst_neg, mut worst_zero) = (0.0f64, 0.0f64, 0.0f64);
    let mut non_monotone = 0usize;
    let sum = |a: f64, vs: &[C]| AutoParam::real(a).unwrap().sum(vs).unwrap();
    for _ in 0..100 {
        let vs = separated_values(&mut r);
        let top = vs.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let lim = inf_sum(&vs, &d);
        let gaps: Vec<f64> = [20.0, 40.0, 80.0]
            .iter()
            .map(|&a| (sum(a, &vs) - lim).norm() / top)
            .collect();
        worst_inf = worst_inf.max(gaps[2]);
        non_monotone += usize::from(!(gaps[0] > gaps[1] && gaps[1] > gaps[2]));

        let vs = separated_values(&mut r);
        let low = vs.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
        let lim = neg_inf_sum(&vs, &d);
        let gaps: Vec<f64> = [-20.0, -40.0, -80.0]
            .iter()
            .map(|&a| (sum(a, &vs) - lim).norm() / low)
            .collect();
        worst_neg = worst_neg.max(gaps[2]);
        non_monotone += usize::from(!(gaps[0] > gaps[1] && gaps[1] > gaps[2]));

        let fam = normalized_family(&mut r);
        let ex = expand(&fam);
        let vs = ex.values();
        let scale = fam.entries().iter().map(|e| e.0.norm()).fold(0.0, f64::max);
        let lim = zero_sum_terms(&ex.terms, &d).unwrap();
        let gaps: Vec<f64> = [20.0, 40.0, 80.0]
            .iter()
            .map(|&a| (sum(1.0 / a, &vs) - lim).norm() / scale)
            .collect();
        worst_zero = worst_zero.max(gaps[2]);
        non_monotone += usize::from(!(gaps[0] > gaps[1] && gaps[1] > gaps[2]));
    }
    verdict(
        worst_inf <= 1e-3 && worst_neg <= 1e-3 && worst_zero <= 1e-3 && non_monotone == 0,
        format!(
            "scaled gaps at |alpha| = 80: inf {worst_inf:.2e}, -inf {worst_neg:.2e}, zero {worst_zero:.2e}; \
             {non_monotone} non-monotone sequences"
        ),
    )
}

fn ac6() -> Verdict {
    let mut r = rng(6);
    let fin = |a: f64| LimitParam::Finite(AutoParam::real(a).unwrap());
    let d = Direction::real_axis();
    let (mut classical, mut geometric) = (0.0f64, 0.0f64);
    let mut extremes_exact = true;
    for _ in 0..500 {
        let es = positive_family(&mut r, 10);
        let f = WeightedFamily::from_real(&es);
        let pm = |a: f64| {
            es.iter()
                .map(|&(x, w)| w * x.powf(a))
                .sum::<f64>()
                .powf(1.0 / a)
        };
        for (a, want) in [(1.0, pm(1.0)), (-1.0, pm(-1.0)), (2.0, pm(2.0))] {
            classical = classical.max(rel(mean(&f, &fin(a)).unwrap(), c(want, 0.0)));
        }
        let geo: f64 = es.iter().map(|&(x, w)| x.powf(w)).product();
        geometric = geometric.max(rel(mean(&f, &LimitParam::Zero(d)).unwrap(), c(geo, 0.0)));
        // extremes only on inputs whose moduli are told apart by the grouping
        let mut xs: Vec<f64> = es.iter().map(|e| e.0).collect();
        xs.sort_by(f64::total_cmp);
        if xs.windows(2).all(|p| p[1] - p[0] > 1e-6 * p[1]) {
            let hi = mean(&f, &LimitParam::PosInf(d)).unwrap();
            let lo = mean(&f, &LimitParam::NegInf(d)).unwrap();
            extremes_exact &= hi == c(xs[xs.len() - 1], 0.0) && lo == c(xs[0], 0.0);
        }
    }
    verdict(
        classical <= 1e-12 && geometric <= 1e-10 && extremes_exact,
        format!("power means rel {classical:.2e}; geometric rel {geometric:.2e}; max/min exact: {extremes_exact}"),
    )
}

fn ac7() -> Verdict {
    let mut r = rng(7);
    let split = MeanOptions {
        split: WeightSplit::Parts(3),
        ..MeanOptions::default()
    };
    let dirs = [Direction::real_axis(), Direction::new(FRAC_PI_4).unwrap()];
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let f = normalized_family(&mut r);
        let mut params: Vec<LimitParam> = [-2.0, -1.0, 0.5, 1.0, 2.0, 3.0]
            .iter()
            .map(|&a| LimitParam::Finite(AutoParam::real(a).unwrap()))
            .collect();
        for d in dirs {
            params.extend([LimitParam::PosInf(d), LimitParam::NegInf(d)]);
        }
        params.extend([
            LimitParam::Zero(Direction::real_axis()),
            LimitParam::Zero(Direction::negative_axis()),
        ]);
        for p in &params {
            worst = worst.max(rel(mean(&f, p).unwrap(), mean_with(&f, p, &split).unwrap()));
        }
    }
    verdict(
        worst <= 1e-9,
        format!("worst relative disagreement {worst:.2e} over 200 families"),
    )
}

fn ac8() -> Verdict {
    let mut r = rng(8);
    let mut worst = 0.0f64;
    let mut worst_at = 0.0;
    for a in [-2.0, -1.0, 0.5, 1.0, 2.0, 3.0] {
        let param = LimitParam::Finite(AutoParam::real(a).unwrap());
        for _ in 0..200 {
            let es = positive_family(&mut r, 10);
            let n = es.len();
            let mut subset: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.5)).collect();
            if subset.is_empty() {
                subset.push(r.gen_range(0..n));
            }
            let rep = kolmogorov_check(&WeightedFamily::from_real(&es), &param, &subset).unwrap();
            if rep.worst() > worst {
                worst = rep.worst();
                worst_at = a;
            }
        }
    }
    verdict(
        worst <= 1e-10,
        format!("worst residual {worst:.2e} (alpha = {worst_at})"),
    )
}

fn ac9() -> Verdict {
    let mut r = rng(9);
    let mut kronecker = true;
    let mut dims_ok = true;
    let mut vanish = true;
    for n in 1..=6 {
        let sig: Vec<f64> = (0..n).map(|_| r.gen_range(0.5..4.0)).collect();
        let rho: Vec<f64> = (0..n).map(|_| r.gen_range(0.5..4.0)).collect();
        for space in [
            FiniteNVS::standard(n).unwrap(),
            FiniteNVS::new(&sig, &rho).unwrap(),
        ] {
            let duals = dual_basis(&space);
            for (i, f) in duals.iter().enumerate() {
                for j in 0..n {
                    let want = if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) };
                    kronecker &= evaluate(f, &space.basis(j).unwrap()).unwrap() == want;
                }
            }
            for mask in 0u32..(1 << n) {
                let inside: Vec<usize> = (0..n).filter(|&j| mask & (1 << j) != 0).collect();
                let ann = annihilator_basis(&space, &inside).unwrap();
                dims_ok &= ann.len() + inside.len() == n;
                for f in &ann {
                    for &j in &inside {
                        vanish &= evaluate(f, &space.basis(j).unwrap()).unwrap() == c(0.0, 0.0);
                    }
                }
            }
        }
    }
    let mut mismatches = 0usize;
    for _ in 0..1000 {
        let n = r.gen_range(1..=6);
        let space = FiniteNVS::standard(n).unwrap();
        let v: Vec<C> = (0..n).map(|_| random_complex(&mut r, 0.1, 5.0)).collect();
        let f = DualFunctional::new((0..n).map(|_| random_complex(&mut r, 0.1, 5.0)).collect());
        if double_dual_eval(&space, &v, &f).unwrap() != evaluate(&f, &v).unwrap() {
            mismatches += 1;
        }
    }
    verdict(
        kronecker && dims_ok && vanish && mismatches == 0,
        format!(
            "Kronecker exact: {kronecker}; dim W + dim W° = n for all subsets: {dims_ok} \
             (annihilators vanish exactly: {vanish}); double dual mismatches {mismatches}/1000"
        ),
    )
}

fn ac10() -> Verdict {
    let space = PairingSpec::mixed_cubic();
    let mut lib_worst = 0.0f64;
    for center in [[0.0, 0.0], [1.0, 1.0]] {
        for p in trace_unit_circle(&space, center, 720).unwrap() {
            lib_worst = lib_worst.max((lp::distance(&space, center, p.x).unwrap() - 1.0).abs());
        }
    }
    let mut cli_worst = 0.0f64;
    let mut cli_ok = true;
    let mut extremes = f64::INFINITY;
    for (center, arg) in [([0.0, 0.0], "0,0"), ([1.0, 1.0], "1,1")] {
        let out = Command::new(env!("CARGO_BIN_EXE_nearlin"))
            .args([
                "circle",
                "--space",
                "example32",
                "--center",
                arg,
                "--samples",
                "360",
                "--format",
                "csv",
            ])
            .output()
            .expect("binary runs");
        cli_ok &= out.status.success();
        let text = String::from_utf8_lossy(&out.stdout);
        let mut lines = text.lines();
        cli_ok &= lines.next() == Some("x1,x2");
        let pts: Vec<[f64; 2]> = lines
            .map(|l| {
                let (a, b) = l.split_once(',').expect("two columns");
                [a.parse().unwrap(), b.parse().unwrap()]
            })
            .collect();
        cli_ok &= pts.len() == 360;
        for x in &pts {
            cli_worst = cli_worst.max((lp::distance(&space, center, *x).unwrap() - 1.0).abs());
        }
        if center == [0.0, 0.0] && pts.len() == 360 {
            // rays at angles 0 and pi land on (1, 0) and (-1, 0)
            extremes = (pts[0][0] - 1.0).abs().max(pts[0][1].abs());
            extremes = extremes
                .max((pts[180][0] + 1.0).abs())
                .max(pts[180][1].abs());
        }
    }
    verdict(
        cli_ok && lib_worst <= 1e-6 && cli_worst <= 1e-6 && extremes <= 1e-9,
        format!(
            "library residual {lib_worst:.2e}; binary residual {cli_worst:.2e} (runs ok: {cli_ok}); \
             passes through (±1, 0) within {extremes:.1e}"
        ),
    )
}

fn ac11() -> Verdict {
    let mut r = rng(11);
    let mut trip = 0.0f64;
    for _ in 0..1000 {
        let re = r.gen_range(0.1..5.0) * if r.gen_bool(0.5) { 1.0 } else { -1.0 };
        let alpha = c(re, r.gen_range(-5.0..5.0));
        let param = AutoParam::new(alpha, r.gen_bool(0.3)).unwrap();
        let z = random_complex(&mut r, 0.1, 10.0);
        trip = trip.max(rel(eps_apply(&eps_invert(&param), eps_apply(&param, z)), z));
    }
    let mut lim = 0.0f64;
    for theta in [0.0, FRAC_PI_4, -FRAC_PI_4] {
        let dir = Direction::new(theta).unwrap();
        let inv = AutoParam::power(C::from_polar(1e3, theta))
            .unwrap()
            .inverse();
        for _ in 0..1000 {
            let a = random_complex(&mut r, 0.5, 1.5);
            lim = lim.max((inv.apply(a) - eps_inv_limit(&dir, a)).norm());
        }
    }
    verdict(
        trip <= 1e-10 && lim <= 1e-3,
        format!("round trip rel {trip:.2e}; |alpha| = 1e3 limit gap {lim:.2e}"),
    )
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("non-associative limit sum", ac1),
        ("classical degeneration at p = 2", ac2),
        ("deformed identity suite", ac3),
        ("norm recovery", ac4),
        ("limit convergence", ac5),
        ("classical means", ac6),
        ("decomposition invariance", ac7),
        ("Kolmogorov axioms", ac8),
        ("duality", ac9),
        ("unit circle point clouds", ac10),
        ("automorphism round trips", ac11),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        let took = start.elapsed();
        println!(
            "AC{:<2} {} {name}: {} [{}]",
            k + 1,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail,
            fmt_time(took)
        );
        failed += usize::from(!v.pass);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
