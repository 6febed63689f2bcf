//! Acceptance suite. Each numbered criterion prints one PASS/FAIL line; the
//! process fails if any criterion fails. Golden values are checked through
//! the `binfty` binary; the property suites call the library directly.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use binfty_core::binfty::{fixtures, BInftyStructure};
use binfty_core::idem::{self, Omega, TangentEndo, Varpi, Zeta};
use binfty_core::par;
use binfty_core::topo::{self, QuasiOrderClass, TopoElem, TopoTensor};
use binfty_core::words::{self, TensorElem, Word, WordProjection};
use binfty_core::LinComb;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

struct Run {
    stdout: String,
    code: i32,
}

fn cli(args: &[String]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_binfty"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binfty binary runs");
    Run {
        stdout: String::from_utf8_lossy(&out.stdout).trim_end().to_string(),
        code: out.status.code().unwrap_or(-1),
    }
}

fn cli_ok(args: &[&str]) -> Result<String, String> {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let r = cli(&args);
    if r.code != 0 {
        return Err(format!(
            "`binfty {}` exited with {}",
            args.join(" "),
            r.code
        ));
    }
    Ok(r.stdout)
}

/// Splits a command line on whitespace, keeping double-quoted runs together.
fn split_args(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut pending = false;
    for ch in line.chars() {
        match ch {
            '"' => {
                quoted = !quoted;
                pending = true;
            }
            c if c.is_whitespace() && !quoted => {
                if pending {
                    out.push(std::mem::take(&mut cur));
                    pending = false;
                }
            }
            c => {
                cur.push(c);
                pending = true;
            }
        }
    }
    if pending {
        out.push(cur);
    }
    out
}

/// Runs every `$ command` of a golden file and compares its output with the
/// lines that follow it.
fn golden(name: &str) -> Check {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut cases: Vec<(String, Vec<String>)> = Vec::new();
    for line in text.lines() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        if let Some(cmd) = line.strip_prefix("$ ") {
            cases.push((cmd.to_string(), Vec::new()));
        } else if let Some((_, expect)) = cases.last_mut() {
            expect.push(line.to_string());
        }
    }
    let mut failures = Vec::new();
    for (cmd, expect) in &cases {
        let r = cli(&split_args(cmd));
        let expect = expect.join("\n");
        if r.code != 0 || r.stdout != expect {
            failures.push(format!(
                "{name}: `{cmd}` gave `{}` (exit {}), expected `{expect}`",
                r.stdout, r.code
            ));
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures.join("\n    "))
    }
}

fn ensure(ok: bool, what: &str) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn within(limit: Duration, started: Instant) -> Check {
    let took = started.elapsed();
    ensure(took <= limit, &format!("took {took:?}, limit {limit:?}"))
}

fn classes_up_to(n: usize) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(
            cli_ok(&["topo", "classes", &k.to_string()])?
                .lines()
                .map(String::from),
        );
    }
    Ok(out)
}

fn criterion_1() -> Check {
    let t = Instant::now();
    golden("lambda.golden")?;
    within(Duration::from_secs(1), t)
}

fn criterion_2() -> Check {
    golden("upsilon.golden")
}

fn criterion_3() -> Check {
    let t = Instant::now();
    golden("eulerian.golden")?;
    for name in classes_up_to(4)? {
        let via_delta = cli_ok(&["topo", "eulerian", &name])?;
        let direct = cli_ok(&["topo", "eulerian", &name, "--mode", "direct"])?;
        ensure(
            via_delta == direct,
            &format!("e({name}): `{via_delta}` vs `{direct}`"),
        )?;
        if via_delta != "0" {
            let twice = cli_ok(&["topo", "eulerian", &via_delta])?;
            ensure(twice == via_delta, &format!("e(e({name})) = `{twice}`"))?;
        }
    }
    within(Duration::from_secs(30), t)
}

fn criterion_4() -> Check {
    golden("projector.golden")?;
    // On the augmentation ideal the counit vanishes, so the relation reads
    // S(T) = π(-T).
    for name in classes_up_to(4)? {
        let s = cli_ok(&["topo", "antipode", &name])?;
        let minus_pi = cli_ok(&["topo", "pi", &format!("-1*{name}")])?;
        ensure(
            s == minus_pi,
            &format!("S({name}) = `{s}` but -π = `{minus_pi}`"),
        )?;
    }
    Ok(())
}

fn criterion_5() -> Check {
    golden("bracket.golden")
}

fn criterion_6() -> Check {
    golden("flalg.golden")
}

fn omega_suite(b: &BInftyStructure, max_len: usize) -> Check {
    let al = b.alphabet();
    let omega = Omega::new(b, TangentEndo::Eulerian, max_len).map_err(|e| e.to_string())?;
    let zeta = Zeta::new(b);
    let words: Vec<Word> = al
        .words_up_to(max_len)
        .into_iter()
        .filter(|w| !w.is_empty())
        .collect();
    let pairs: Vec<(Word, Word)> = words
        .iter()
        .flat_map(|x| {
            words
                .iter()
                .filter(move |y| x.len() + y.len() <= max_len)
                .map(move |y| (x.clone(), y.clone()))
        })
        .collect();
    let morphism = par::try_all(&pairs, |(x, y)| {
        let lhs = omega.apply(&b.product_words(x, y)?)?;
        let rhs = words::shuffle_lin(
            &omega.apply(&TensorElem::basis(x.clone()))?,
            &omega.apply(&TensorElem::basis(y.clone()))?,
        );
        Ok(lhs == rhs)
    })
    .map_err(|e| e.to_string())?;
    ensure(
        morphism,
        &format!("ω̃ is not multiplicative over {}", al.declaration()),
    )?;
    let inverse = par::try_all(&words, |w| {
        let x = TensorElem::basis(w.clone());
        Ok(zeta.apply(&omega.apply(&x)?)? == x)
    })
    .map_err(|e| e.to_string())?;
    ensure(inverse, &format!("ζ̃∘ω̃ ≠ id over {}", al.declaration()))
}

fn hoffman_suite(b: &BInftyStructure, max_len: usize) -> Check {
    let p = b.letter_product().ok_or("not a quasi-shuffle structure")?;
    let varpi = Varpi::new(b);
    let zeta = Zeta::new(b);
    let omega = Omega::new(b, TangentEndo::Eulerian, max_len).map_err(|e| e.to_string())?;
    let words: Vec<Word> = b
        .alphabet()
        .words_up_to(max_len)
        .into_iter()
        .filter(|w| !w.is_empty())
        .collect();
    let ok = par::try_all(&words, |w| {
        let x = TensorElem::basis(w.clone());
        Ok(varpi.project(w)? == idem::hoffman_log(p, w)
            && zeta.project(w)? == idem::hoffman_exp(p, w)
            && omega.apply(&x)? == idem::hoffman_log_tilde(p, &x)?)
    })
    .map_err(|e| e.to_string())?;
    ensure(
        ok,
        &format!("Hoffman maps disagree over {}", b.alphabet().declaration()),
    )
}

fn criterion_7() -> Check {
    omega_suite(&fixtures::cyclic_group(3), 5)?;
    omega_suite(&fixtures::flalg(), 5)?;
    hoffman_suite(&fixtures::cyclic_group(3), 5)?;
    hoffman_suite(&fixtures::positive_integers(3), 5)
}

fn criterion_8() -> Check {
    let t = Instant::now();
    golden("descent.golden")?;
    for n in 1..=5 {
        let out = cli_ok(&["desc", "check", &n.to_string()])?;
        ensure(!out.contains("false"), &format!("desc check {n}:\n{out}"))?;
    }
    within(Duration::from_secs(60), t)
}

fn tensor_product(
    b: &BInftyStructure,
    x: &LinComb<(Word, Word)>,
    y: &LinComb<(Word, Word)>,
) -> binfty_core::Result<LinComb<(Word, Word)>> {
    let mut out = LinComb::zero();
    for ((a1, a2), c) in x {
        for ((b1, b2), d) in y {
            let left = b.product_words(a1, b1)?;
            let right = b.product_words(a2, b2)?;
            out.add_scaled(&left.tensor(&right), &(c * d));
        }
    }
    Ok(out)
}

/// Coassociativity of deconcatenation and `Δ(x ∗ y) = Δ(x) ∗ Δ(y)`.
fn word_bialgebra(b: &BInftyStructure, budget: usize) -> Check {
    let words = b.alphabet().words_up_to(budget);
    let coassoc = words.iter().all(|w| {
        let d = words::deconcat(w);
        let mut left = LinComb::<(Word, Word, Word)>::zero();
        let mut right = LinComb::<(Word, Word, Word)>::zero();
        for ((u, v), c) in &d {
            for ((u1, u2), e) in &words::deconcat(u) {
                left.add_term((u1.clone(), u2.clone(), v.clone()), c * e);
            }
            for ((v1, v2), e) in &words::deconcat(v) {
                right.add_term((u.clone(), v1.clone(), v2.clone()), c * e);
            }
        }
        left == right
    });
    ensure(coassoc, "deconcatenation is not coassociative")?;
    let pairs: Vec<(Word, Word)> = words
        .iter()
        .flat_map(|x| {
            words
                .iter()
                .filter(move |y| x.len() + y.len() <= budget)
                .map(move |y| (x.clone(), y.clone()))
        })
        .collect();
    let ok = par::try_all(&pairs, |(x, y)| {
        let lhs = words::deconcat_lin(&b.product_words(x, y)?);
        let rhs = tensor_product(b, &words::deconcat(x), &words::deconcat(y))?;
        Ok(lhs == rhs)
    })
    .map_err(|e| e.to_string())?;
    ensure(
        ok,
        &format!("Δ is not multiplicative for {}", b.alphabet().declaration()),
    )
}

type Triple = LinComb<(QuasiOrderClass, QuasiOrderClass, QuasiOrderClass)>;

fn err(e: binfty_core::Error) -> String {
    e.to_string()
}

fn left_tensor(
    x: &TopoTensor,
    f: impl Fn(&QuasiOrderClass) -> binfty_core::Result<TopoTensor>,
) -> binfty_core::Result<Triple> {
    let mut out = Triple::zero();
    for ((a, b), c) in x {
        for ((a1, a2), d) in &f(a)? {
            out.add_term((*a1, *a2, *b), c * d);
        }
    }
    Ok(out)
}

fn right_tensor(
    x: &TopoTensor,
    f: impl Fn(&QuasiOrderClass) -> binfty_core::Result<TopoTensor>,
) -> binfty_core::Result<Triple> {
    let mut out = Triple::zero();
    for ((a, b), c) in x {
        for ((b1, b2), d) in &f(b)? {
            out.add_term((*a, *b1, *b2), c * d);
        }
    }
    Ok(out)
}

/// `(Δ ⊗ Id) ∘ δ = m_{1,3,24} ∘ (δ ⊗ δ) ∘ Δ`.
fn double_bialgebra_law(t: &QuasiOrderClass) -> binfty_core::Result<bool> {
    let lhs = left_tensor(&topo::coproduct_delta(t)?, topo::coproduct)?;
    let mut rhs = Triple::zero();
    for ((t1, t2), c) in &topo::coproduct(t)? {
        for ((a, b), d) in &topo::coproduct_delta(t1)? {
            for ((p, q), e) in &topo::coproduct_delta(t2)? {
                rhs.add_term((*a, *p, topo::mul(b, q)?), c * d * e);
            }
        }
    }
    Ok(lhs == rhs)
}

fn topology_bialgebra() -> Check {
    let mut small = Vec::new();
    for n in 1..=4 {
        small.extend(topo::isoclasses(n).map_err(err)?);
    }
    let coassoc = par::try_all(&small, |t| {
        let d = topo::coproduct(t)?;
        let dd = topo::coproduct_delta(t)?;
        Ok(
            left_tensor(&d, topo::coproduct)? == right_tensor(&d, topo::coproduct)?
                && left_tensor(&dd, topo::coproduct_delta)?
                    == right_tensor(&dd, topo::coproduct_delta)?,
        )
    })
    .map_err(err)?;
    ensure(coassoc, "Δ or δ is not coassociative")?;
    let law = par::try_all(&small, double_bialgebra_law).map_err(err)?;
    ensure(law, "double bialgebra law fails")?;
    let mut pairs = Vec::new();
    for a in &small {
        for b in &small {
            if a.len() + b.len() <= 5 {
                pairs.push((*a, *b));
            }
        }
    }
    let unit = QuasiOrderClass::unit();
    let laws = par::try_all(&pairs, |(a, b)| {
        let (x, y) = (TopoElem::basis(*a), TopoElem::basis(*b));
        let prod = topo::mul(a, b)?;
        let m_delta = topo::coproduct(&prod)?
            == topo::mul_tensor(&topo::coproduct(a)?, &topo::coproduct(b)?)?;
        let m_small_delta = topo::coproduct_delta(&prod)?
            == topo::mul_tensor(&topo::coproduct_delta(a)?, &topo::coproduct_delta(b)?)?;
        let x1 = TopoTensor::basis((*a, unit));
        let y1 = TopoTensor::basis((unit, *b));
        let mut expect = topo::down_tensor(&x1, &topo::coproduct(b)?)?;
        expect += topo::down_tensor(&topo::coproduct(a)?, &y1)?;
        expect -= &x.tensor(&y);
        let infinitesimal = topo::coproduct(&topo::down(a, b)?)? == expect;
        Ok(m_delta && m_small_delta && infinitesimal)
    })
    .map_err(err)?;
    ensure(laws, "Δ/m, δ/m or the infinitesimal law fails")
}

fn criterion_9() -> Check {
    let budget = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let shuffle = BInftyStructure::shuffle(binfty_core::words::Alphabet::parse("a,b").unwrap());
    let report = shuffle.check_axioms(budget).map_err(err)?;
    ensure(
        report.unit && report.assoc && report.comm && report.trivial,
        &format!("shuffle: {report:?}"),
    )?;
    word_bialgebra(&shuffle, budget)?;
    for b in [
        fixtures::cyclic_group(3),
        fixtures::positive_integers(4),
        fixtures::flalg(),
    ] {
        let r = b.check_axioms(budget).map_err(err)?;
        ensure(
            r.unit && r.assoc && r.comm && !r.trivial,
            &format!("{}: {r:?}", b.alphabet().declaration()),
        )?;
        word_bialgebra(&b, budget)?;
    }
    for i in 0..10 {
        let b = fixtures::random_explicit(|| rng.gen_range(-2..=2), budget);
        let r = b.check_axioms(budget).map_err(err)?;
        ensure(r.unit && r.assoc, &format!("random bracket {i}: {r:?}"))?;
        word_bialgebra(&b, budget).map_err(|e| format!("random bracket {i}: {e}"))?;
    }
    let table = cli_ok(&[
        "binf",
        "check",
        "--table",
        "tests/golden/flalg.table",
        "--budget",
        "4",
    ])?;
    ensure(
        table == "unit: true\nassoc: true\ncomm: true\ntrivial: false",
        &format!("binf check on flalg table: {table}"),
    )?;
    topology_bialgebra()
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("λ golden table", criterion_1),
        ("Υ golden table", criterion_2),
        ("Eulerian idempotent on topologies", criterion_3),
        ("infinitesimal projector and antipode", criterion_4),
        ("bracket on primitives of topologies", criterion_5),
        ("flalg product and dual basis change", criterion_6),
        ("isomorphisms onto shuffle algebras", criterion_7),
        ("descent algebra", criterion_8),
        ("axiom and bialgebra properties", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match f() {
            Ok(()) => println!("PASS {} {name} ({:.2?})", i + 1, t.elapsed()),
            Err(e) => {
                failed += 1;
                println!("FAIL {} {name} ({:.2?})\n    {e}", i + 1, t.elapsed());
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
