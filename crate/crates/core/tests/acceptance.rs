//! Acceptance criteria at the canonical configuration p = 3, n = 1, r = 1,
//! D = 18. Expected values come from the small oracles at the top of this
//! file, not from the library's own series code. Prints one line per
//! criterion and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use loopsplit_core::homology::{
    bockstein_homology, subalgebra_generated, verify_splitting, HomologyTable,
};
use loopsplit_core::james::{
    cup, hopf_unit_certificate, small_alphabets, verify_word_suite, FnClass,
};
use loopsplit_core::lie::{bracket_closure, filtration_step, truncated_filtration, CmnModel};
use loopsplit_core::plocal::{binomial, factorial, vp, vp_binomial, vp_factorial};
use loopsplit_core::report::{run_verify, RunConfig};
use loopsplit_core::{Derivation, GradedSubspace, NCPoly, PrimeConfig};
use num_bigint::BigInt;

const D: usize = 18;

// ---- oracles -------------------------------------------------------------

/// Power series `num / den` to degree `cap`, with `den[0] = 1`, by the
/// recurrence `a_d = num_d - sum_{j>=1} den_j a_{d-j}`.
fn expand(num: &[(usize, i64)], den: &[(usize, i64)], cap: usize) -> Vec<i64> {
    let coeff = |terms: &[(usize, i64)], d: usize| -> i64 {
        terms.iter().filter(|(e, _)| *e == d).map(|(_, c)| c).sum()
    };
    assert_eq!(coeff(den, 0), 1);
    let mut a = vec![0i64; cap + 1];
    for d in 0..=cap {
        let mut v = coeff(num, d);
        for j in 1..=d {
            v -= coeff(den, j) * a[d - j];
        }
        a[d] = v;
    }
    a
}

fn product(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len().min(b.len())];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j < out.len() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly(terms: &[(usize, i64)], cap: usize) -> Vec<i64> {
    expand(terms, &[(0, 1)], cap)
}

/// Exponent of `p` in `m > 0` by repeated division.
fn val(p: u64, mut m: u128) -> i64 {
    let mut v = 0;
    while m.is_multiple_of(p as u128) {
        m /= p as u128;
        v += 1;
    }
    v
}

/// `C(m, k)` in u128, exact for the small arguments used here.
fn choose(m: u64, k: u64) -> u128 {
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (m - i) as u128 / (i + 1) as u128;
    }
    c
}

fn dims(s: &GradedSubspace) -> Vec<i64> {
    (0..=D as u32).map(|d| s.dim(d) as i64).collect()
}

fn homology(t: &HomologyTable) -> Vec<i64> {
    t.rows
        .iter()
        .take(D + 1)
        .map(|r| r.homology as i64)
        .collect()
}

// ---- harness --------------------------------------------------------------

struct Outcome {
    ok: bool,
    note: String,
}

fn verdict(ok: bool, note: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        note: note.into(),
    }
}

fn first_mismatch(a: &[i64], b: &[i64]) -> Option<usize> {
    if a.len() != b.len() {
        return Some(a.len().min(b.len()));
    }
    a.iter().zip(b).position(|(x, y)| x != y)
}

fn series_verdict(what: &str, expected: &[i64], computed: &[i64]) -> Outcome {
    match first_mismatch(expected, computed) {
        None => verdict(true, format!("{what}: {} degrees agree", expected.len())),
        Some(d) => verdict(
            false,
            format!(
                "{what}: degree {d} expected {:?} computed {:?}",
                expected.get(d),
                computed.get(d)
            ),
        ),
    }
}

struct Fixture {
    cfg: PrimeConfig,
    model: CmnModel,
    beta: Derivation,
    l_inf: GradedSubspace,
    u0: GradedSubspace,
    u_inf: GradedSubspace,
}

impl Fixture {
    fn build() -> Self {
        let cfg = PrimeConfig::new(3, 1, 1, D as u32).unwrap();
        let model = CmnModel::build(&cfg, D as u32 + 1).expect("filtration builds");
        let beta = Derivation::bockstein(&model.algebra).unwrap();
        let l_inf = model.l_infinity().unwrap();
        let u0 = subalgebra_generated(model.l0(), "L(0)").unwrap().0;
        let u_inf = subalgebra_generated(&l_inf, "L(inf)").unwrap().0;
        Fixture {
            cfg,
            model,
            beta,
            l_inf,
            u0,
            u_inf,
        }
    }
}

// ---- criteria -------------------------------------------------------------

fn tensor_oracle(f: &Fixture) -> Outcome {
    let alg = &f.model.algebra;
    let free = bracket_closure(
        alg,
        &[alg.generator(0).unwrap(), alg.generator(1).unwrap()],
        D as u32,
    )
    .unwrap();
    let u = subalgebra_generated(&free, "L").unwrap().0;
    // a_d = a_{d-1} + a_{d-2}
    let mut fib = vec![1i64, 1];
    while fib.len() <= D {
        fib.push(fib[fib.len() - 1] + fib[fib.len() - 2]);
    }
    let mut o = series_verdict("U(free Lie on u, v)", &fib, &dims(&u));
    o.ok &= fib[D] == 4181;
    o
}

fn enveloping_l0(f: &Fixture) -> Outcome {
    let expected = expand(&[(0, 1), (2, -1)], &[(0, 1), (1, -1), (2, -1)], D);
    series_verdict("U(L(0)) vs (1-t^2)/(1-t-t^2)", &expected, &dims(&f.u0))
}

fn filtration_exactness(f: &Fixture) -> Outcome {
    // The transition that splits off tau_k (degree 2·3^k - 1) and sigma_k
    // (degree 2·3^k - 2) runs from stage k to stage k + 1 of the model;
    // stage 0 -> 1 splits off the bottom class in degree 1.
    let stages = &f.model.stages;
    let mut notes = Vec::new();
    let mut ok = stages.len() >= 3;
    for k in 1..=2usize {
        let (upper, lower) = (&stages[k].subspace, &stages[k + 1].subspace);
        let tau = 2 * 3usize.pow(k as u32) - 1;
        let sigma = tau - 1;
        for d in 0..=D {
            let expect = lower.dim(d as u32) + (d == tau) as usize + (d == sigma) as usize;
            if upper.dim(d as u32) != expect {
                ok = false;
                notes.push(format!("k={k} d={d}"));
            }
        }
    }
    let bottom = (0..=D as u32)
        .all(|d| stages[0].subspace.dim(d) == stages[1].subspace.dim(d) + (d == 1) as usize);
    ok &= bottom;
    ok &= f
        .model
        .certificates
        .iter()
        .all(|c| c.exact && c.bracket_closed && c.kills_decomposables);
    verdict(
        ok,
        if notes.is_empty() {
            format!(
                "{} stages, codimensions at 1; 4,5; 16,17; no degeneracy",
                stages.len()
            )
        } else {
            format!("mismatches at {notes:?}")
        },
    )
}

fn sigma_conditions(f: &Fixture, sigma1: &NCPoly) -> Vec<(String, bool)> {
    let m = &f.model;
    let sigma2 = m.stages[2].sigma.clone().expect("sigma_2 fits at D = 18");
    let dec = |k: usize, e: &NCPoly| m.stages[k].decomposables.contains(e).unwrap();
    let x12 = m
        .algebra
        .commutator(m.x(1).unwrap(), m.x(2).unwrap())
        .unwrap();
    vec![
        ("sigma_1 ∈ [L(0),L(0)]".into(), dec(0, sigma1)),
        ("sigma_1 ∉ [L(1),L(1)]".into(), !dec(1, sigma1)),
        ("sigma_2 ∈ [L(1),L(1)]".into(), dec(1, &sigma2)),
        ("sigma_2 ∉ [L(2),L(2)]".into(), !dec(2, &sigma2)),
        ("sigma_1 = [x_1, x_2]".into(), *sigma1 == x12),
    ]
}

fn sigma_decomposability(f: &Fixture) -> Outcome {
    let sigma1 = f.model.stages[1].sigma.clone().unwrap();
    let conds = sigma_conditions(f, &sigma1);
    let failed: Vec<&String> = conds.iter().filter(|(_, ok)| !ok).map(|(n, _)| n).collect();
    verdict(
        failed.is_empty(),
        format!("{} conditions, failed: {failed:?}", conds.len()),
    )
}

fn splitting(f: &Fixture) -> Outcome {
    let factor = product(
        &product(
            &poly(&[(0, 1), (1, 1)], D),
            &expand(&[(0, 1), (5, 1)], &[(0, 1), (4, -1)], D),
        ),
        &expand(&[(0, 1), (17, 1)], &[(0, 1), (16, -1)], D),
    );
    let expected = product(&factor, &dims(&f.u_inf));
    series_verdict("U(L(0)) vs (1+t)·V_n·U(L(∞))", &expected, &dims(&f.u0))
}

fn bockstein(f: &Fixture) -> Outcome {
    let num = product(
        &product(&poly(&[(0, 1), (1, 1)], D), &poly(&[(0, 1), (5, 1)], D)),
        &poly(&[(0, 1), (17, 1)], D),
    );
    let inv = product(
        &expand(&[(0, 1)], &[(0, 1), (4, -1)], D),
        &expand(&[(0, 1)], &[(0, 1), (16, -1)], D),
    );
    let omega2 = product(&num, &inv);
    let h0 = homology(&bockstein_homology(&f.u0, &f.beta).unwrap());
    let hinf = homology(&bockstein_homology(&f.u_inf, &f.beta).unwrap());
    let mut zero = vec![0i64; D + 1];
    zero[0] = 1;
    let a = series_verdict("H(U(L(0)))", &omega2, &h0);
    let b = series_verdict("H(U(L(∞)))", &zero, &hinf);
    verdict(a.ok && b.ok, format!("{}; {}", a.note, b.note))
}

fn truncated(f: &Fixture) -> Outcome {
    let t = truncated_filtration(&f.model, 1).unwrap();
    let u_s0 = dims(&subalgebra_generated(&t.stages[0], "L_1(0)").unwrap().0);
    let u_top = dims(&subalgebra_generated(&t.stages[2], "L_1(2)").unwrap().0);
    let oracle = expand(&[(0, 1)], &[(0, 1), (1, -1), (3, -1)], D);
    let factor = expand(&[(0, 1), (1, 1)], &[(0, 1), (4, -1)], D);
    let a = series_verdict("U(L_1(0)) vs 1/(1-t-t^3)", &oracle, &u_s0);
    let b = series_verdict(
        "vs (1+t)/(1-t^4)·U(L_1(2))",
        &product(&factor, &u_top),
        &u_s0,
    );
    let inside = t.stages[2].is_subspace_of(&f.l_inf).unwrap();
    verdict(
        a.ok && b.ok && inside,
        format!("{}; {}; L_1(2) ⊆ L(∞): {inside}", a.note, b.note),
    )
}

fn valuations() -> Outcome {
    let mut bad = Vec::new();
    for p in [3u64, 5] {
        for s in 1..=2u32 {
            let ps = p.pow(s);
            for i in 1..=200u64 {
                let lib = vp_binomial(p, ps * i, ps).unwrap() as i64;
                if lib != val(p, i as u128) {
                    bad.push(format!("C({}, {ps}) at p={p}", ps * i));
                }
            }
        }
        for m in 0..=40u64 {
            let direct: i64 = (1..=m).map(|j| val(p, j as u128)).sum();
            let lib_direct = if m == 0 {
                0
            } else {
                vp(p, &BigInt::from(factorial(m))).unwrap() as i64
            };
            if direct != vp_factorial(p, m) as i64 || direct != lib_direct {
                bad.push(format!("{m}! at p={p}"));
            }
        }
        for k in 1..=3u32 {
            let c = choose(p.pow(k), p.pow(k - 1));
            assert_eq!(
                BigInt::from(binomial(p.pow(k), p.pow(k - 1)).unwrap()),
                BigInt::from(c)
            );
            if val(p, c) - val(p, 2 * p as u128) != 0 {
                bad.push(format!("C({p}^{k}, {p}^{})/(2p)", k - 1));
            }
        }
    }
    verdict(bad.is_empty(), format!("failures: {bad:?}"))
}

fn hopf_certificate() -> Outcome {
    let mut bad = Vec::new();
    for p in [3u64, 5] {
        for s in 1..=2u32 {
            let cert = hopf_unit_certificate(p, s, 20).unwrap();
            // v(u_i) = v(u_{i-1}) + v(C(i p^s, p^s)) - v(i), with v(u_1) = 0
            let ps = p.pow(s) as u128;
            let mut v = 0i64;
            let mut oracle = vec![(1u64, 0i64)];
            for i in 2..=20u128 {
                let c = vp_binomial(p, (i * ps) as u64, ps as u64).unwrap() as i64;
                v += c - val(p, i);
                oracle.push((i as u64, v));
            }
            if cert.valuations != oracle || !cert.passed() {
                bad.push(format!("p={p} s={s}: {:?}", cert.first_non_unit()));
            }
        }
        let e = |i| FnClass::generator(p, i);
        for i in 0..=30u64 {
            for j in 0..=30 - i {
                for k in 0..=30 - i - j {
                    let l = cup(&cup(&e(i), &e(j)).unwrap(), &e(k)).unwrap();
                    let r = cup(&e(i), &cup(&e(j), &e(k)).unwrap()).unwrap();
                    if l != r {
                        bad.push(format!("cup ({i},{j},{k}) at p={p}"));
                    }
                }
            }
        }
    }
    let e11 = cup(&FnClass::generator(3, 1), &FnClass::generator(3, 1)).unwrap();
    let ok = bad.is_empty() && e11.coefficient.to_string() == "6";
    verdict(
        ok,
        format!("u_i units for i <= 20; e_1 e_1 = {e11}; failures: {bad:?}"),
    )
}

fn james_words() -> Outcome {
    let alphabets = small_alphabets(3);
    let rep = verify_word_suite(&alphabets, 5);
    let cases: usize = rep.by_length.iter().map(|r| r.1).sum();
    let every_length = rep.by_length.iter().all(|r| r.1 > 0);
    verdict(
        rep.passed() && every_length,
        format!(
            "{} alphabets, {cases} cases; failures: {:?}",
            alphabets.len(),
            rep.failures
        ),
    )
}

fn negative_controls(f: &Fixture) -> Outcome {
    let lowest = (1..=D as u32).find(|&d| f.l_inf.dim(d) > 0).unwrap();
    let mut basis = f.l_inf.basis(lowest);
    basis.remove(0);
    let broken = f.l_inf.with_degree(lowest, &basis).unwrap();
    let split = verify_splitting(&f.cfg, f.model.l0(), &broken).unwrap();

    let stage1 = &f.model.stages[1];
    let sigma = stage1.sigma.clone().unwrap();
    let (i, _) = sigma.indexed_terms().next().unwrap();
    let corrupted = f
        .model
        .algebra
        .add(&sigma, &NCPoly::from_dense(sigma.degree(), i, &[1]))
        .unwrap();
    let mut stage = stage1.clone();
    stage.sigma = Some(corrupted.clone());
    let exact = matches!(filtration_step(&f.cfg, &stage, &f.model.weights), Ok((_, c)) if c.exact);
    let sigma_ok = sigma_conditions(f, &corrupted).iter().all(|(_, ok)| *ok);
    verdict(
        split.first_fail.is_some() && !(exact && sigma_ok),
        format!(
            "drop in degree {lowest}: splitting fails at {:?}; corrupted sigma_1: exactness holds {exact}, sigma checks hold {sigma_ok}",
            split.first_fail
        ),
    )
}

fn determinism_and_caps(f: &Fixture) -> Outcome {
    let cfg = RunConfig::new(f.cfg);
    let a = run_verify(&cfg).unwrap();
    let b = run_verify(&cfg).unwrap();
    let same = a.without_timings().to_json() == b.without_timings().to_json();

    let small_cfg = PrimeConfig::new(3, 1, 1, 12).unwrap();
    let small = CmnModel::build(&small_cfg, 13).unwrap();
    let u0_small = subalgebra_generated(small.l0(), "L(0)").unwrap().0;
    let hs =
        bockstein_homology(&u0_small, &Derivation::bockstein(&small.algebra).unwrap()).unwrap();
    let h0 = bockstein_homology(&f.u0, &f.beta).unwrap();
    let mut agree = (0..=12u32).all(|d| u0_small.dim(d) == f.u0.dim(d));
    agree &= (0..=12usize).all(|d| hs.rows[d].homology == h0.rows[d].homology);
    for (k, s) in small.stages.iter().enumerate() {
        agree &= (0..=12u32).all(|d| s.subspace.dim(d) == f.model.stage(k as u32).dim(d));
    }
    verdict(
        same && agree && a.passed(),
        format!("two full runs identical: {same}; D=12 agrees with D=18 on d <= 12: {agree}; full run passed: {}", a.passed()),
    )
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() -> ExitCode {
    let t = Instant::now();
    let f = Fixture::build();
    println!("fixture built in {:.2?}", t.elapsed());
    let criteria: Vec<(&str, Criterion<'_>)> = vec![
        ("tensor-algebra oracle", Box::new(|| tensor_oracle(&f))),
        ("L(0) enveloping series", Box::new(|| enveloping_l0(&f))),
        (
            "filtration exactness",
            Box::new(|| filtration_exactness(&f)),
        ),
        (
            "sigma decomposability",
            Box::new(|| sigma_decomposability(&f)),
        ),
        ("splitting", Box::new(|| splitting(&f))),
        ("Bockstein homology", Box::new(|| bockstein(&f))),
        ("truncated filtration", Box::new(|| truncated(&f))),
        ("valuation identities", Box::new(valuations)),
        ("Hopf unit certificate", Box::new(hopf_certificate)),
        ("James-word suite", Box::new(james_words)),
        ("negative controls", Box::new(|| negative_controls(&f))),
        (
            "determinism and cap monotonicity",
            Box::new(|| determinism_and_caps(&f)),
        ),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        failed += !o.ok as usize;
        println!(
            "criterion {:>2} {:<34} {} ({:.2?}) {}",
            i + 1,
            name,
            if o.ok { "PASS" } else { "FAIL" },
            t.elapsed(),
            o.note
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
