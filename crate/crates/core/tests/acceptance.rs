//! End-to-end acceptance checks. Each criterion prints one line; the process exits
//! nonzero if any criterion fails or overruns its time limit.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cenalg::centrify::{centrify, obstacle, specialize, verify_obstacle_identity, z_presentation, Presentation};
use cenalg::coeffs::{FieldDescriptor, Scalar};
use cenalg::commands::{compare_with_cocycles, reproduction_checks, run_command, CommandArgs, COMMANDS};
use cenalg::freealg::{Alphabet, NcPoly, Word};
use cenalg::hopf::{
    antipode_convolutions, certify_primitive_family, collapse_counit, coproduct, coproduct_left, coproduct_right,
    counit, HopfContext,
};
use cenalg::presets::{
    abelian3, anticommutator_spin, bannai_ito, build_named, restricted_sl2, ruea, sl2, solvable3, uea, PRESET_NAMES,
};
use cenalg::rewrite::{
    complete, find_compositions, irreducible_words, normal_form, normal_form_with, CompletionOptions,
    CompletionStatus, RewriteSystem, Strategy,
};
use cenalg::text::{bundled_preset, parse_presentation, print_document};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const SEED: u64 = 0x5eed_acce;

type Outcome = Result<String, String>;

/// Id, name, check and time limit in seconds.
type Criterion = (u32, &'static str, fn() -> Outcome, u64);

fn preset(name: &str) -> CommandArgs {
    CommandArgs {
        preset: Some(name.to_string()),
        ..Default::default()
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn single_obstacle(name: &str, j: &str, k: &str, abc: [&str; 3]) -> Outcome {
    let r = run_command("obstacles", &preset(name)).map_err(err)?;
    let obs = r.data["obstacles"].as_array().ok_or("no obstacle list")?;
    ensure(obs.len() == 1, format!("{} compositions", obs.len()))?;
    let o = &obs[0];
    ensure(o["j"] == j && o["k"] == k, format!("composition {}", o["composition"]))?;
    ensure(o["a"] == abc[0] && o["b"] == abc[1] && o["c"] == abc[2], "wrong ambiguity")?;
    ensure(o["element"] == "0", format!("Obs = {}", o["element"]))?;
    ensure(o["identity_verified"] == true, "identity not verified")?;
    Ok(format!("{}: Obs = 0", o["composition"].as_str().unwrap_or("")))
}

fn crit1() -> Outcome {
    single_obstacle("as", "R_Z", "R_X", ["X", "Y", "Z"])
}

fn crit2() -> Outcome {
    single_obstacle("aw2", "R_C", "R_A", ["A", "B", "C"])
}

fn crit3() -> Outcome {
    let mut out = Vec::new();
    for name in ["as", "aw2"] {
        let t = Instant::now();
        let r = run_command("prop-check", &preset(name)).map_err(err)?;
        ensure(r.data["verdict"] == "flat", format!("{}: {}", name, r.data["verdict"]))?;
        ensure(t.elapsed() < Duration::from_secs(1), format!("{} took {:?}", name, t.elapsed()))?;
        out.push(format!("{} flat", name));
    }
    Ok(out.join(", "))
}

fn random_rational(rng: &mut StdRng, f: &FieldDescriptor) -> Scalar {
    let n = f.from_int(rng.gen_range(-100..=100));
    let d = f.from_int(rng.gen_range(1..=30));
    &n * &d.inv().unwrap()
}

fn crit4() -> Outcome {
    let q = FieldDescriptor::Rationals;
    let p = anticommutator_spin(&q).map_err(err)?;
    let zp = z_presentation(&p, p.central()).map_err(err)?;
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut shown = Vec::new();
    for _ in 0..5 {
        let omega = [0, 1, 2].map(|_| random_rational(&mut rng, &q));
        let map: HashMap<String, Scalar> = zp.central_names().iter().cloned().zip(omega.iter().cloned()).collect();
        let spec = specialize(&zp, &map).map_err(err)?;
        let bi = bannai_ito(&q, &omega).map_err(err)?;
        let label = format!("({}, {}, {})", omega[0], omega[1], omega[2]);
        ensure(spec.canonical_relations() == bi.canonical_relations(), format!("mismatch at omega = {}", label))?;
        shown.push(label);
    }
    Ok(format!("omega in {}", shown.join(" ")))
}

fn crit5() -> Outcome {
    let q = FieldDescriptor::Rationals;
    let mut out = Vec::new();
    for d in [sl2(&q), solvable3(&q), abelian3(&q)] {
        let (ok, detail, ids) = compare_with_cocycles(&d, 6).map_err(err)?;
        ensure(ok, detail.clone())?;
        ensure(ids, format!("{}: obstacle identity failed", d.name))?;
        out.push(detail);
    }
    Ok(out.join("; "))
}

fn commutator(a: &NcPoly<Scalar>, b: &NcPoly<Scalar>) -> NcPoly<Scalar> {
    a.mul(b).sub(&b.mul(a))
}

fn crit6() -> Outcome {
    let d = restricted_sl2();
    let f = d.field().clone();
    let restricted = ruea(&d).map_err(err)?;
    let opts = CompletionOptions::new(8);

    let cent = centrify(&restricted, restricted.central()).map_err(err)?;
    let done = complete(&cent.rewrite_system().map_err(err)?, &opts).map_err(err)?;
    let envelope = complete(&uea(&d).map_err(err)?.rewrite_system().map_err(err)?, &opts).map_err(err)?;
    ensure(done.status == CompletionStatus::Complete, "centrification completion truncated")?;
    ensure(
        done.system.canonical_rules() == envelope.system.canonical_rules(),
        "completed centrification differs from the completed enveloping system",
    )?;

    // e^3, f^3, h^3 - h are central in the completed enveloping system
    let sys = &envelope.system;
    let letter = |i: u32| NcPoly::monomial(Word::new(vec![i]), f.one());
    let cube = |i: u32| NcPoly::monomial(Word::new(vec![i; 3]), f.one());
    let idx = |n: &str| sys.alphabet().index(n).ok_or(format!("no generator {}", n));
    let (e, fi, h) = (idx("e")?, idx("f")?, idx("h")?);
    for c in [cube(e), cube(fi), cube(h).sub(&letter(h))] {
        for x in 0..3 {
            let nf = normal_form(&commutator(&letter(x), &c), sys);
            ensure(
                nf.is_zero(),
                format!("[{}, {}] = {}", sys.alphabet().name(x), sys.render(&c), sys.render(&nf)),
            )?;
        }
    }

    let finite = complete(&restricted.rewrite_system().map_err(err)?, &opts).map_err(err)?;
    ensure(finite.status == CompletionStatus::Complete, "restricted completion truncated")?;
    let words = irreducible_words(&finite.system, 7);
    let bounded = words
        .iter()
        .all(|w| (0..3u32).all(|x| w.letters().iter().filter(|&&l| l == x).count() < 3));
    ensure(bounded, "an irreducible word has an exponent >= 3")?;
    ensure(words.len() == 27, format!("{} irreducible words", words.len()))?;
    Ok("rules agree; e^3, f^3, h^3 - h central; 27 irreducible words".to_string())
}

fn crit7() -> Outcome {
    let q = FieldDescriptor::Rationals;
    let f2 = FieldDescriptor::prime(2).map_err(err)?;
    ensure(certify_primitive_family(&uea(&sl2(&q)).map_err(err)?).all_primitive, "sl2 enveloping relations")?;
    ensure(
        certify_primitive_family(&ruea(&restricted_sl2()).map_err(err)?).all_primitive,
        "restricted relations",
    )?;
    let spin = certify_primitive_family(&anticommutator_spin(&q).map_err(err)?);
    ensure(!spin.all_primitive, "spin relations reported primitive over Q")?;
    let expected = [
        ("R_X", "2*Y (x) Z + 2*Z (x) Y"),
        ("R_Y", "2*X (x) Z + 2*Z (x) X"),
        ("R_Z", "2*X (x) Y + 2*Y (x) X"),
    ];
    for (name, defect) in expected {
        let r = spin.relations.iter().find(|r| r.name == name).ok_or(name)?;
        ensure(r.defect == defect, format!("{} defect {}", name, r.defect))?;
    }
    ensure(
        certify_primitive_family(&anticommutator_spin(&f2).map_err(err)?).all_primitive,
        "spin relations over GF(2)",
    )?;
    Ok("sl2, restricted sl2, spin over GF(2) primitive; spin over Q has defect 2*(Y (x) Z + Z (x) Y)".to_string())
}

fn random_poly(rng: &mut StdRng, f: &FieldDescriptor) -> NcPoly<Scalar> {
    let mut p = NcPoly::zero();
    for _ in 0..rng.gen_range(1..=6) {
        let len = rng.gen_range(0..=3);
        let w = Word::new((0..len).map(|_| rng.gen_range(0..3)).collect());
        p.add_term(w, random_rational(rng, f));
    }
    p
}

fn crit8() -> Outcome {
    let q = FieldDescriptor::Rationals;
    let ctx = HopfContext::new(Alphabet::new(&["X", "Y", "Z"]).map_err(err)?, q.clone());
    let mut rng = StdRng::seed_from_u64(SEED ^ 8);
    for i in 0..100 {
        let f = random_poly(&mut rng, &q);
        let d = coproduct(&f, &ctx);
        ensure(coproduct_left(&d) == coproduct_right(&d), format!("coassociativity fails on sample {}", i))?;
        let (l, r) = collapse_counit(&d);
        ensure(l == f && r == f, format!("counit fails on sample {}", i))?;
        let mut unit = NcPoly::zero();
        unit.add_term(Word::empty(), counit(&f, &q));
        let (sl, sr) = antipode_convolutions(&f, &ctx);
        ensure(sl == unit && sr == unit, format!("antipode fails on sample {}", i))?;
    }
    Ok("100 random polynomials of degree <= 3".to_string())
}

fn confluent(sys: &RewriteSystem<Scalar>, max_len: usize) -> Result<usize, String> {
    let one = sys.field().one();
    let mut count = 0;
    for len in 0..=max_len {
        for w in sys.alphabet().words_of_length(len) {
            let f = NcPoly::monomial(w.clone(), one.clone());
            let reference = normal_form_with(&f, sys, Strategy::Deterministic);
            for seed in 0..10 {
                let alt = normal_form_with(&f, sys, Strategy::Random(SEED + seed));
                ensure(
                    alt == reference,
                    format!("{}: {} vs {}", sys.render_word(&w), sys.render(&reference), sys.render(&alt)),
                )?;
            }
            count += 1;
        }
    }
    Ok(count)
}

fn crit9() -> Outcome {
    let q = FieldDescriptor::Rationals;
    let spin = anticommutator_spin(&q).map_err(err)?.rewrite_system().map_err(err)?;
    let env = uea(&sl2(&q)).map_err(err)?.rewrite_system().map_err(err)?;
    let env = complete(&env, &CompletionOptions::new(6)).map_err(err)?;
    ensure(env.status == CompletionStatus::Complete, "sl2 completion truncated")?;
    let a = confluent(&spin, 5)?;
    let b = confluent(&env.system, 5)?;
    Ok(format!("{} + {} words, 11 strategies each", a, b))
}

fn crit10() -> Outcome {
    let q = FieldDescriptor::Rationals;
    let qq = FieldDescriptor::rational_functions("q").map_err(err)?;
    let mut presentations: Vec<Presentation> = vec![
        anticommutator_spin(&q).map_err(err)?,
        build_named("aw2", &HashMap::new(), Some(&qq)).map_err(err)?,
    ];
    for d in [sl2(&q), solvable3(&q), abelian3(&q)] {
        presentations.push(uea(&d).map_err(err)?);
    }
    let mut n = 0;
    for p in &presentations {
        let zp = z_presentation(p, p.central()).map_err(err)?;
        for comp in find_compositions(&zp.base_system().map_err(err)?) {
            let obs = obstacle(&zp, &comp).map_err(err)?;
            ensure(verify_obstacle_identity(&zp, &obs).map_err(err)?, format!("{}: identity fails", p.name))?;
            n += 1;
        }
    }
    let checks = reproduction_checks(16).map_err(err)?;
    let c10 = checks.iter().find(|c| c.id == 10).ok_or("no identity check")?;
    ensure(c10.passed, c10.detail.clone())?;
    Ok(format!("{} obstacles expand exactly", n))
}

fn crit11() -> Outcome {
    for name in PRESET_NAMES {
        let text = bundled_preset(name).ok_or(format!("no bundled file for {}", name))?;
        let doc = parse_presentation(text).map_err(err)?;
        let again = parse_presentation(&print_document(&doc)).map_err(err)?;
        ensure(
            again.presentation.canonical_relations() == doc.presentation.canonical_relations()
                && again.presentation.central() == doc.presentation.central()
                && again.presentation.alphabet().names() == doc.presentation.alphabet().names(),
            format!("{}: round-trip changed the presentation", name),
        )?;
        let src = CommandArgs {
            source: Some(text.to_string()),
            ..Default::default()
        };
        for cmd in COMMANDS.iter().filter(|c| !matches!(**c, "verify-paper" | "preset" | "specialize")) {
            let a = run_command(cmd, &src).map_err(|e| format!("{} {}: {}", cmd, name, e))?;
            let b = run_command(cmd, &src).map_err(err)?;
            ensure(a.structured(false) == b.structured(false), format!("{} {} not deterministic", cmd, name))?;
        }
    }
    let t = Instant::now();
    let r = run_command("verify-paper", &CommandArgs::default()).map_err(err)?;
    ensure(r.exit_code() == 0, r.text())?;
    ensure(t.elapsed() < Duration::from_secs(60), format!("verify-paper took {:?}", t.elapsed()))?;
    Ok(format!(
        "{} bundled presets; verify-paper in {:.0} ms",
        PRESET_NAMES.len(),
        t.elapsed().as_secs_f64() * 1e3
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, "spin algebra obstacle vanishes", crit1, 1),
        (2, "Askey-Wilson obstacle vanishes", crit2, 1),
        (3, "flatness certificates", crit3, 2),
        (4, "Bannai-Ito specialization", crit4, 1),
        (5, "central relations vs cocycle conditions", crit5, 5),
        (6, "restricted sl2 p-centre", crit6, 30),
        (7, "primitivity suite", crit7, 1),
        (8, "Hopf axioms on random polynomials", crit8, 10),
        (9, "strategy-independent normal forms", crit9, 30),
        (10, "obstacle identity by expansion", crit10, 30),
        (11, "round-trip, determinism, verify-paper", crit11, 60),
    ];
    let mut failed = 0;
    for (id, name, run, limit) in criteria {
        let t = Instant::now();
        let outcome = run();
        let elapsed = t.elapsed();
        let outcome = match outcome {
            Ok(d) if elapsed > Duration::from_secs(limit) => Err(format!("{} (over the {} s limit)", d, limit)),
            o => o,
        };
        let ms = elapsed.as_secs_f64() * 1e3;
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {} [{:.0} ms] {}", id, name, ms, detail),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {} [{:.0} ms] {}", id, name, ms, detail);
            }
        }
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
