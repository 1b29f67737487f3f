//! End-to-end acceptance checks. Runs as a plain binary and prints one
//! PASS or FAIL line per criterion; the process exits non-zero if any fail.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use bp_engine::cli::run;
use bp_engine::coproduct::{
    check_coassociativity, check_counit, check_relation_ar1, check_relations, cp_square_check, CoproductScheme,
    RelationSet,
};
use bp_engine::{
    admissible_basis, rewrite_step, Algebra, BinomialTable, Element, Fp, Generator, Grading, Monomial, Prime, Strategy,
    TensorElement,
};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use Generator::{Beta, Power};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn prime(q: u32) -> Prime {
    Prime::new(q).unwrap()
}

fn w(gs: &[Generator]) -> Monomial {
    Monomial::new(gs.to_vec())
}

fn all_words(max_len: usize, max_index: u32) -> Vec<Monomial> {
    let letters: Vec<Generator> = std::iter::once(Beta).chain((0..=max_index).map(Power)).collect();
    let mut out = vec![Monomial::unit()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|v: &Vec<Generator>| {
                letters.iter().map(move |g| {
                    let mut v = v.clone();
                    v.push(*g);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned().map(Monomial::new));
    }
    out
}

/// Binomial coefficient mod p from exact factorials; zero outside `0 <= k <= n`.
struct FactorialBinomials {
    fact: Vec<BigInt>,
    p: BigInt,
}

impl FactorialBinomials {
    fn new(p: u32, n_max: usize) -> Self {
        let mut fact = vec![BigInt::from(1)];
        for i in 1..=n_max {
            let next = &fact[i - 1] * BigInt::from(i);
            fact.push(next);
        }
        FactorialBinomials { fact, p: BigInt::from(p) }
    }

    fn binom(&self, n: i64, k: i64) -> i64 {
        if n < 0 || k < 0 || k > n {
            return 0;
        }
        let (n, k) = (n as usize, k as usize);
        let c = &self.fact[n] / (&self.fact[k] * &self.fact[n - k]);
        let r: BigInt = c % &self.p;
        i64::try_from(r).unwrap()
    }

    fn signed(&self, e: i64, n: i64, k: i64) -> i64 {
        let c = self.binom(n, k);
        if e.rem_euclid(2) == 1 {
            -c
        } else {
            c
        }
    }
}

fn relation_oracle() -> Outcome {
    let mut checked = 0;
    for q in [3u32, 5] {
        let p = prime(q);
        let qi = q as i64;
        let table = BinomialTable::new(p);
        let fb = FactorialBinomials::new(q, (q as usize) * 12 + 4);
        let a_coeff = |k: i64, r: i64, j: i64| fb.signed(r + j, (qi - 1) * (k - j) - 1, r - qi * j);
        let b_coeff = |k: i64, r: i64, j: i64| fb.signed(r + j, (qi - 1) * (k - j), r - qi * j);
        for a in 0..=12u32 {
            for b in 0..=12u32 {
                let (ai, bi) = (a as i64, b as i64);
                if a < q * b {
                    let mut want = Element::zero();
                    for t in 0..=ai / qi {
                        let c = p.reduce(a_coeff(bi, ai, t));
                        want.add_term(p, w(&[Power((ai + bi - t) as u32), Power(t as u32)]), c);
                    }
                    let lhs = w(&[Power(a), Power(b)]);
                    for s in [Strategy::Leftmost, Strategy::Rightmost] {
                        let got = rewrite_step(&lhs, &table, s).ok_or_else(|| format!("P{a} P{b} not rewritten"))?;
                        ensure(got == want, || {
                            format!("p={q} P{a} P{b}: got {} want {}", got.to_text(p), want.to_text(p))
                        })?;
                    }
                    checked += 1;
                }
                if a <= q * b {
                    let mut want = Element::zero();
                    for t in 0..=ai / qi {
                        let c = p.reduce(b_coeff(bi, ai, t));
                        want.add_term(p, w(&[Beta, Power((ai + bi - t) as u32), Power(t as u32)]), c);
                    }
                    if a > 0 {
                        for t in 0..=(ai - 1) / qi {
                            let c = p.reduce(a_coeff(bi, ai - 1, t));
                            want.add_term(p, w(&[Power((ai + bi - t) as u32), Beta, Power(t as u32)]), c);
                        }
                    }
                    let lhs = w(&[Power(a), Beta, Power(b)]);
                    let got = rewrite_step(&lhs, &table, Strategy::Leftmost)
                        .ok_or_else(|| format!("P{a} b P{b} not rewritten"))?;
                    ensure(got == want, || {
                        format!("p={q} P{a} b P{b}: got {} want {}", got.to_text(p), want.to_text(p))
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} relation instances"))
}

fn normal_form_suite() -> Outcome {
    let p = prime(3);
    let left = Algebra::with_options(p, Strategy::Leftmost, 1_000_000);
    let right = Algebra::with_options(p, Strategy::Rightmost, 1_000_000);
    let g = Grading::standard(p);
    let words = all_words(5, 6);
    ensure(words.len() == 37449, || format!("{} words enumerated", words.len()))?;
    words.par_iter().try_for_each(|m| {
        let d = g.bidegree_of(m).unwrap();
        let nf = left.normalize_monomial(m).map_err(|e| format!("{m}: {e}"))?;
        for (u, _) in nf.terms() {
            ensure(u.is_admissible(p), || format!("{m} -> inadmissible {u}"))?;
            ensure(g.bidegree_of(u).unwrap() == d, || format!("{m} -> {u} changes bidegree"))?;
        }
        Ok::<(), String>(())
    })?;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let m = &words[rng.gen_range(0..words.len())];
        let (l, r) = (left.normalize_monomial(m).unwrap(), right.normalize_monomial(m).unwrap());
        ensure(l == r, || format!("{m}: leftmost {} rightmost {}", l.to_text(p), r.to_text(p)))?;
    }
    Ok(format!("{} words normalized, 1000 strategy comparisons", words.len()))
}

fn beta_nilpotence() -> Outcome {
    for q in [3u32, 5, 7] {
        let alg = Algebra::new(prime(q));
        for m in [w(&[Beta, Power(0), Beta, Power(0), Beta]), w(&[Beta, Beta])] {
            let nf = alg.normalize_monomial(&m).map_err(|e| e.to_string())?;
            ensure(nf.is_zero(), || format!("p={q}: {m} -> {}", nf.to_text(prime(q))))?;
        }
    }
    Ok("p = 3, 5, 7".into())
}

/// Every tuple `(e0, t1, e1, ..., ts, es)` obeying `t_j >= p t_(j+1) + e_j`
/// for `1 <= j < s`, bucketed by internal degree.
fn brute_force_tuples(q: u32, n_max: u64, s: usize) -> BTreeMap<u64, BTreeSet<Monomial>> {
    let t_max = n_max / (2 * (q as u64 - 1));
    let mut out: BTreeMap<u64, BTreeSet<Monomial>> = BTreeMap::new();
    let t_count = (t_max + 1).pow(s as u32);
    for code in 0..t_count {
        let mut ts = Vec::with_capacity(s);
        let mut c = code;
        for _ in 0..s {
            ts.push(c % (t_max + 1));
            c /= t_max + 1;
        }
        for eps in 0u32..(1 << (s + 1)) {
            let e = |i: usize| ((eps >> i) & 1) as u64;
            if (0..s.saturating_sub(1)).any(|j| ts[j] < q as u64 * ts[j + 1] + e(j + 1)) {
                continue;
            }
            let n = (0..=s).map(e).sum::<u64>() + ts.iter().map(|t| 2 * t * (q as u64 - 1)).sum::<u64>();
            if n > n_max {
                continue;
            }
            let mut letters = Vec::new();
            if e(0) == 1 {
                letters.push(Beta);
            }
            for (j, t) in ts.iter().enumerate() {
                letters.push(Power(*t as u32));
                if e(j + 1) == 1 {
                    letters.push(Beta);
                }
            }
            out.entry(n).or_default().insert(Monomial::new(letters));
        }
    }
    out
}

fn basis_counts() -> Outcome {
    let p = prime(3);
    let g = Grading::standard(p);
    let text = |n, s| -> Vec<String> { admissible_basis(p, n, s, &g).unwrap().iter().map(|m| m.to_string()).collect() };
    let fixed: [(u64, u64, &[&str]); 5] =
        [(0, 0, &["1"]), (1, 0, &["b"]), (1, 1, &["b P0", "P0 b"]), (2, 1, &["b P0 b"]), (4, 1, &["P1"])];
    for (n, s, want) in fixed {
        let got = text(n, s);
        ensure(got == want, || format!("({n},{s}): {got:?}"))?;
    }
    let mut total = 0;
    for s in 0..=4u64 {
        let buckets = brute_force_tuples(3, 40, s as usize);
        for n in 0..=40u64 {
            let got = admissible_basis(p, n, s, &g).unwrap();
            let set: BTreeSet<Monomial> = got.iter().cloned().collect();
            ensure(set.len() == got.len(), || format!("({n},{s}) has duplicates"))?;
            let want = buckets.get(&n).cloned().unwrap_or_default();
            ensure(set == want, || format!("({n},{s}): {} listed, {} tuples", set.len(), want.len()))?;
            total += got.len();
        }
    }
    Ok(format!("{total} basis words over n <= 40, s <= 4"))
}

fn singer_coproduct() -> Outcome {
    let mut summary = Vec::new();
    for (q, max) in [(3u32, 8u32), (5, 5)] {
        let p = prime(q);
        let alg = Algebra::new(p);
        let scheme = CoproductScheme::singer(p);
        let mut reports = check_relations(&scheme, &alg, max, max, RelationSet::ALL, 4).map_err(|e| e.to_string())?;
        for s in 0..=2 {
            reports.push(check_counit(&scheme, &alg, 12, s).map_err(|e| e.to_string())?);
        }
        reports.push(check_coassociativity(&scheme, &alg, 12, 2).map_err(|e| e.to_string())?);
        for r in &reports {
            ensure(r.passed() && r.instances > 0, || {
                format!("p={q} {} [{}]: {} failures of {}", r.family, r.range, r.failures.len(), r.instances)
            })?;
        }
        let n: usize = reports.iter().map(|r| r.instances).sum();
        summary.push(format!("p={q}: {n} checks"));
    }
    Ok(summary.join(", "))
}

fn geometric_obstruction() -> Outcome {
    for q in [3u32, 5] {
        let p = prime(q);
        let alg = Algebra::new(p);
        let basis = admissible_basis(p, 1, 1, &Grading::standard(p)).unwrap();
        let bp0 = w(&[Beta, Power(0)]);
        let p0b = w(&[Power(0), Beta]);
        ensure(bp0 != p0b && basis.contains(&bp0) && basis.contains(&p0b), || "basis words".into())?;
        for (beta_odd, p0_odd) in [(false, false), (false, true), (true, false), (true, true)] {
            let scheme = CoproductScheme::geometric(p, beta_odd, p0_odd);
            let report = check_relation_ar1(&scheme, &alg).map_err(|e| e.to_string())?;
            ensure(!report.passed(), || format!("p={q} ({beta_odd},{p0_odd}) passed"))?;
            let sign = |odd: bool| if odd { p.neg(Fp::ONE) } else { Fp::ONE };
            let expected = TensorElement::from_terms(
                p,
                [([bp0.clone(), p0b.clone()], sign(p0_odd)), ([p0b.clone(), bp0.clone()], sign(beta_odd))],
            );
            ensure(!expected.is_zero() && expected.len() == 2, || "expected residual degenerate".into())?;
            let residual = &report.failures[0].residual.text;
            ensure(*residual == expected.to_text(p), || {
                format!("p={q} ({beta_odd},{p0_odd}): residual {residual}, expected {}", expected.to_text(p))
            })?;
        }
        let out = run(["bp-engine", "-p", &q.to_string(), "--text", "obstruction"]);
        ensure(out.status == 0 && out.stdout.ends_with("verdict: obstruction reproduced\n"), || out.stdout.clone())?;
    }
    Ok("4 parity classes at p = 3, 5".into())
}

fn subalgebra_square() -> Outcome {
    for q in [3u32, 5, 7] {
        let p = prime(q);
        let alg = Algebra::new(p);
        let report = cp_square_check(&alg).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("p={q}: nonzero square"))?;
        let trace = report.trace.join("\n");
        for needle in [
            "b P0 b P0 -> b b P0 P0   by P0 b P0 = b P0 P0",
            "b b P0 P0 -> 0   by b b = 0",
            "(b P0 ⊗ P0 P0)(P0 P0 ⊗ b P0) = +(",
            "(P0 P0 ⊗ b P0)(b P0 ⊗ P0 P0) = -(",
            "sum = 0",
        ] {
            ensure(trace.contains(needle), || format!("p={q}: trace lacks {needle:?}"))?;
        }
        ensure(report.trace.iter().filter(|l| l.trim() == "= 0").count() == 2, || {
            format!("p={q}: diagonal terms do not both vanish")
        })?;

        // the same square computed directly
        let g = Grading::subalgebra_c(p);
        let x = TensorElement::from_terms(
            p,
            [
                ([w(&[Beta, Power(0)]), w(&[Power(0), Power(0)])], Fp::ONE),
                ([w(&[Power(0), Power(0)]), w(&[Beta, Power(0)])], Fp::ONE),
            ],
        );
        ensure(x.multiply(&x, &g, &alg).unwrap().is_zero(), || format!("p={q}: direct square nonzero"))?;
    }
    Ok("p = 3, 5, 7".into())
}

fn beta_free_sweep() -> Outcome {
    let p = prime(3);
    let alg = Algebra::new(p);
    let reports = check_relations(&CoproductScheme::singer(p), &alg, 8, 8, RelationSet::BETA_FREE, 4)
        .map_err(|e| e.to_string())?;
    let n: usize = reports.iter().map(|r| r.instances).sum();
    ensure(n > 0 && reports.iter().all(|r| r.passed()), || "beta-free sweep failed".into())?;
    Ok(format!("{n} instances"))
}

fn algebra_laws() -> Outcome {
    let p = prime(3);
    let alg = Algebra::new(p);
    let words = all_words(2, 6);
    let products: BTreeMap<(usize, usize), Element> = (0..words.len())
        .into_par_iter()
        .flat_map_iter(|i| (0..words.len()).map(move |j| (i, j)))
        .map(|(i, j)| ((i, j), alg.multiply_monomials(&words[i], &words[j]).unwrap()))
        .collect();
    (0..words.len()).into_par_iter().try_for_each(|i| {
        for j in 0..words.len() {
            let xy = &products[&(i, j)];
            for (k, z) in words.iter().enumerate() {
                let left = alg.multiply(xy, &Element::monomial(z.clone())).unwrap();
                let right = alg.multiply(&Element::monomial(words[i].clone()), &products[&(j, k)]).unwrap();
                ensure(left == right, || format!("({} {}) {} differs", words[i], words[j], z))?;
            }
        }
        Ok::<(), String>(())
    })?;

    let one = Element::one();
    for m in &words {
        let x = Element::monomial(m.clone());
        let nx = alg.normalize(&x).unwrap();
        ensure(alg.multiply(&one, &x).unwrap() == nx && alg.multiply(&x, &one).unwrap() == nx, || {
            format!("unit law fails on {m}")
        })?;
    }

    let mut rng = StdRng::seed_from_u64(17);
    let pool = all_words(4, 6);
    let random_element = |rng: &mut StdRng| {
        let len = rng.gen_range(1..=4);
        Element::from_terms(
            p,
            (0..len).map(|_| (pool[rng.gen_range(0..pool.len())].clone(), p.reduce(rng.gen_range(1..3)))),
        )
    };
    for _ in 0..500 {
        let x = random_element(&mut rng);
        let y = random_element(&mut rng);
        let c = p.reduce(rng.gen_range(0..3));
        let mut combo = x.clone();
        combo.add_scaled(p, &y, c);
        let mut want = alg.normalize(&x).unwrap();
        want.add_scaled(p, &alg.normalize(&y).unwrap(), c);
        ensure(alg.normalize(&combo).unwrap() == want, || {
            format!("linearity fails on {} , {}", x.to_text(p), y.to_text(p))
        })?;
    }
    let n = words.len();
    Ok(format!("{} triples, {n} unit checks, 500 linear pairs", n * n * n))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("relation oracle", relation_oracle),
        ("normal-form suite", normal_form_suite),
        ("beta nilpotence", beta_nilpotence),
        ("basis counts", basis_counts),
        ("singer coproduct", singer_coproduct),
        ("geometric obstruction", geometric_obstruction),
        ("subalgebra square", subalgebra_square),
        ("beta-free sweep", beta_free_sweep),
        ("algebra laws", algebra_laws),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
