//! Acceptance suite: one PASS/FAIL line per criterion. Exact criteria use
//! exact equality; timed criteria use the wall-clock limits in `LIMITS`.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use monogen_cli::parse_input;
use monogen_core::artin::{decompose, fiber_monogenic, FpAlgebra};
use monogen_core::exactring::{discriminant_unipoly, necklace_count};
use monogen_core::indexform::index_form;
use monogen_core::localmono::{
    classify, common_index_divisors, geometric_point_verdict, is_monogenic_at_prime, value_set_mod_p,
};
use monogen_core::report::GlobalStatus;
use monogen_core::search::search_monogenerators;
use monogen_core::twisted::curve_twisted_constraint;
use monogen_core::{BaseRing, Config, Scalar, SparsePoly, StructureAlgebra};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Wall-clock limits in seconds for criteria 1, 2, 3 and 4.
const LIMITS: [f64; 4] = [1.0, 1.0, 5.0, 10.0];
const SEED: u64 = 0x6163_6365;

type Outcome = Result<String, String>;

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn fixture(name: &str) -> StructureAlgebra {
    parse_input(&corpus_dir().join(format!("{name}.json"))).expect("fixture loads")
}

fn poly(n: usize, s: &str) -> SparsePoly {
    SparsePoly::parse(BaseRing::Z, n, s).unwrap()
}

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn timed(limit: f64, f: impl FnOnce() -> Result<(), String>) -> Outcome {
    let start = Instant::now();
    f()?;
    let t = start.elapsed();
    ensure(t <= Duration::from_secs_f64(limit), format!("took {:.3} s, limit {limit} s", t.as_secs_f64()))?;
    Ok(format!("{:.3} s", t.as_secs_f64()))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn criterion_1() -> Outcome {
    timed(LIMITS[0], || {
        let alg = fixture("dedekind");
        let cfg = Config::default();
        let f = index_form(&alg).map_err(err)?;
        let expected = poly(3, "-2*x2^3 - 15*x2^2*x3 - 31*x2*x3^2 - 20*x3^3");
        ensure(f.form() == &expected || f.form() == &-&expected, format!("index form {}", f.form()))?;
        let f2 = f.reduce_mod(2).map_err(err)?;
        ensure(f2.form().to_string() == "x2^2*x3 + x2*x3^2", format!("mod 2: {}", f2.form()))?;
        ensure(common_index_divisors(&alg, &cfg).map_err(err)? == vec![2], "common index divisors")?;
        ensure(geometric_point_verdict(&alg).map_err(err)?.monogenic_over_geometric_points, "geometric")?;
        let r = classify(&alg, &cfg.with_height(10)).map_err(err)?;
        ensure(r.global.status == GlobalStatus::NotMonogenic, format!("status {:?}", r.global.status))
    })
}

fn criterion_2() -> Outcome {
    timed(LIMITS[1], || {
        let alg = fixture("biquadratic");
        let f = index_form(&alg).map_err(err)?;
        let expected = poly(4, "-4*(2*x2^2 - 3*x3^2)*(x2^2 - 3*x4^2)*(x3^2 - 2*x4^2)");
        ensure(f.form() == &expected || f.form() == &-&expected, "index form")?;
        let g = geometric_point_verdict(&alg).map_err(err)?;
        ensure(g.vanishing_fiber_primes == vec![2], "vanishing fibers")?;
        ensure(!g.monogenic_over_geometric_points, "geometric verdict")?;
        let d = decompose(&FpAlgebra::reduce(&alg, 2).map_err(err)?).map_err(err)?;
        ensure(d.factors.len() == 1 && d.factors[0].t == 2, format!("factors {:?}", d.factors))
    })
}

fn criterion_3() -> Outcome {
    timed(LIMITS[2], || {
        let alg = fixture("pure_cubic_175");
        let cfg = Config::default();
        let f = index_form(&alg).map_err(err)?;
        let expected = poly(3, "5*x2^3 - 7*x3^3");
        ensure(f.form() == &expected || f.form() == &-&expected, "index form")?;
        ensure(common_index_divisors(&alg, &cfg).map_err(err)?.is_empty(), "common index divisors")?;
        let values = value_set_mod_p(&f, 7, cfg.max_enum).map_err(err)?;
        ensure(values == BTreeSet::from([0, 2, 5]), format!("values mod 7: {values:?}"))?;
        let s = search_monogenerators(&alg, 20, &cfg).map_err(err)?;
        ensure(s.exhausted && s.witnesses.is_empty(), "search at height 20")
    })
}

fn criterion_4() -> Outcome {
    timed(LIMITS[3], || {
        for n in 2..=6 {
            let alg = StructureAlgebra::split(BaseRing::Z, n).map_err(err)?;
            let f = index_form(&alg).map_err(err)?;
            let mut v = SparsePoly::one(BaseRing::Z, n);
            for i in 0..n {
                for j in i + 1..n {
                    v = &v * &(&SparsePoly::var(BaseRing::Z, n, i) - &SparsePoly::var(BaseRing::Z, n, j));
                }
            }
            ensure(f.form() == &v || f.form() == &-&v, format!("n = {n}"))?;
        }
        Ok(())
    })
}

fn integer_fixtures() -> Vec<StructureAlgebra> {
    let mut names: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json") && !p.to_string_lossy().ends_with(".expected.json"))
        .collect();
    names.sort();
    names
        .iter()
        .filter_map(|p| parse_input(p).ok())
        .filter(|a| a.base() == BaseRing::Z)
        .collect()
}

fn criterion_5() -> Outcome {
    let algs = integer_fixtures();
    ensure(algs.len() >= 8, format!("only {} integer fixtures", algs.len()))?;
    let cfg = Config::default();
    let mut disagreements = Vec::new();
    let mut pairs = 0;
    for alg in &algs {
        for p in [2, 3, 5, 7] {
            let brute = is_monogenic_at_prime(alg, p, &cfg).map_err(err)?.monogenic_at_p;
            let artin = fiber_monogenic(&decompose(&FpAlgebra::reduce(alg, p).map_err(err)?).map_err(err)?);
            pairs += 1;
            if brute != artin {
                disagreements.push(format!("{} at {p}", alg.label()));
            }
        }
    }
    ensure(disagreements.is_empty(), format!("disagreements: {disagreements:?}"))?;
    Ok(format!("{} fixtures, {pairs} pairs, 0 disagreements", algs.len()))
}

fn z(v: i64) -> Scalar {
    BaseRing::Z.from_int(v)
}

/// Random valid algebra of rank at most 4: a product of `Z[x]/(f)` with
/// small monic `f`, then a random unimodular change of basis.
fn random_algebra(rng: &mut ChaCha8Rng) -> StructureAlgebra {
    let mut alg: Option<StructureAlgebra> = None;
    let mut rank = 0;
    loop {
        let d = rng.gen_range(1..=4usize);
        if rank + d > 4 || (alg.is_some() && rng.gen_bool(0.4)) {
            break;
        }
        rank += d;
        let mut f: Vec<Scalar> = (0..d).map(|_| z(rng.gen_range(-3..=3))).collect();
        f.push(z(1));
        let part = StructureAlgebra::power_basis(BaseRing::Z, &f, "part").unwrap();
        alg = Some(match alg {
            None => part,
            Some(a) => a.product(&part).unwrap(),
        });
    }
    let alg = alg.unwrap_or_else(|| StructureAlgebra::split(BaseRing::Z, 1).unwrap());
    let n = alg.rank();
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..3 {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            let k = rng.gen_range(-2..=2);
            for c in 0..n {
                u[i][c] += k * u[j][c];
            }
        }
    }
    let u: Vec<Vec<Scalar>> = u.iter().map(|r| r.iter().map(|&x| z(x)).collect()).collect();
    alg.change_basis(&u).unwrap()
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let ring = BaseRing::Z;
    let mut violations = 0;
    let mut evaluations = 0;
    for _ in 0..100 {
        let alg = random_algebra(&mut rng);
        let f = index_form(&alg).map_err(err)?;
        if !(f.is_zero() || f.form().homogeneous_degree() == Some(f.degree())) {
            violations += 1;
        }
        for _ in 0..20 {
            let v: Vec<Scalar> = (0..alg.rank()).map(|_| z(rng.gen_range(-5..=5))).collect();
            let base = f.evaluate(&v).map_err(err)?;
            for lambda in -3..=3 {
                let scaled: Vec<Scalar> = v.iter().map(|c| ring.mul(c, &z(lambda))).collect();
                let expected = ring.mul(&ring.pow(&z(lambda), f.degree()), &base);
                let shifted: Vec<Scalar> =
                    v.iter().zip(alg.identity()).map(|(c, u)| ring.add(c, &ring.mul(u, &z(lambda)))).collect();
                if f.evaluate(&scaled).map_err(err)? != expected || f.evaluate(&shifted).map_err(err)? != base {
                    violations += 1;
                }
                evaluations += 2;
            }
        }
    }
    ensure(violations == 0, format!("{violations} violations"))?;
    Ok(format!("100 algebras, {evaluations} evaluations, 0 violations"))
}

fn criterion_7() -> Outcome {
    let algs: Vec<StructureAlgebra> = integer_fixtures().into_iter().filter(|a| a.rank() >= 2).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 50 {
        attempts += 1;
        ensure(attempts < 10_000, "could not find elements of full degree")?;
        let alg = &algs[rng.gen_range(0..algs.len())];
        let v: Vec<Scalar> = (0..alg.rank()).map(|_| z(rng.gen_range(-4..=4))).collect();
        let i = index_form(alg).map_err(err)?.evaluate(&v).map_err(err)?.as_integer().unwrap();
        if i == 0.into() {
            continue;
        }
        let lhs = discriminant_unipoly(&alg.char_poly(&v).map_err(err)?).map_err(err)?;
        let rhs = &i * &i * alg.discriminant().map_err(err)?;
        ensure(lhs == rhs, format!("{} at {v:?}: {lhs} != {rhs}", alg.label()))?;
        checked += 1;
    }
    Ok(format!("{checked} elements"))
}

fn criterion_8() -> Outcome {
    let a = curve_twisted_constraint(2, 0, 0).map_err(err)?;
    ensure(a.line_bundle_degree == Some(1), "(2,0,0)")?;
    let b = curve_twisted_constraint(3, 1, 0).map_err(err)?;
    ensure(b.line_bundle_degree == Some(1), "(3,1,0)")?;
    let c = curve_twisted_constraint(3, 0, 0).map_err(err)?;
    ensure(!c.divisible && c.line_bundle_degree.is_none(), "(3,0,0)")?;
    Ok(String::new())
}

/// Counts monic irreducibles of degree `f` over `F_p` by striking out all
/// products of lower-degree monic polynomials.
fn irreducible_count(p: u64, f: u32) -> u64 {
    let monic = |d: u32| -> Vec<Vec<u64>> {
        (0..p.pow(d))
            .map(|mut k| {
                let mut c: Vec<u64> = (0..d)
                    .map(|_| {
                        let r = k % p;
                        k /= p;
                        r
                    })
                    .collect();
                c.push(1);
                c
            })
            .collect()
    };
    let mut reducible = BTreeSet::new();
    for d in 1..f {
        for a in monic(d) {
            for b in monic(f - d) {
                let mut prod = vec![0u64; a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in b.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                reducible.insert(prod);
            }
        }
    }
    p.pow(f) - reducible.len() as u64
}

fn criterion_9() -> Outcome {
    for p in [2u64, 3, 5, 7] {
        for f in 1..=4 {
            let n = necklace_count(p, f);
            let brute = irreducible_count(p, f);
            ensure(n == brute.into(), format!("p = {p}, f = {f}: {n} vs {brute}"))?;
        }
    }
    Ok("p <= 7, f <= 4".into())
}

fn criterion_10() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_monogen"))
            .arg("corpus")
            .arg("--dir")
            .arg(corpus_dir())
            .output()
            .map_err(err)
    };
    let a = run()?;
    let b = run()?;
    ensure(a.status.success(), format!("corpus exit status {}", a.status))?;
    ensure(a.stdout == b.stdout && a.stderr == b.stderr, "outputs differ")?;
    let summary = String::from_utf8_lossy(&a.stdout).lines().last().unwrap_or("").to_string();
    Ok(format!("{} bytes identical; {summary}", a.stdout.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("dedekind cubic: index form, mod-2 form, divisors, verdicts", criterion_1),
        ("Z[sqrt2, sqrt3]: index form, vanishing fiber at 2, tangent dimension 2", criterion_2),
        ("Z[cbrt175]: index form, no divisors, values mod 7, search to height 20", criterion_3),
        ("split algebras Z^n, n = 2..6: Vandermonde", criterion_4),
        ("brute force vs Artinian criterion on corpus, p <= 7", criterion_5),
        ("homogeneity and translation invariance on 100 random algebras", criterion_6),
        ("disc(charpoly) = i^2 disc on 50 elements", criterion_7),
        ("curve constraints (2,0,0), (3,1,0), (3,0,0)", criterion_8),
        ("necklace counts vs enumeration", criterion_9),
        ("corpus output is byte-identical across runs", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) if detail.is_empty() => println!("criterion {:>2}: PASS  {name}", i + 1),
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail})", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {e}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
