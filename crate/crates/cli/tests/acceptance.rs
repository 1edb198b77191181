//! One line per acceptance criterion over the checked-in corpus. Exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;

use coprime::chains::audit_chains;
use coprime::classify::audit::{pair_lemma_audit, theorem_audit_with};
use coprime::classify::classify_all;
use coprime::corpus::{load_spec, spec_files};
use coprime::rcp::prop22_suite;
use coprime::verify::{minimality_audit, CHAIN_MAX_LENGTH, CHAIN_TARGET};
use coprime::{Analysis, FiniteRing, RingSpec};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn corpus() -> Vec<(String, Analysis)> {
    spec_files(&corpus_dir())
        .expect("corpus directory")
        .into_iter()
        .map(|path| {
            let name = path.file_stem().unwrap().to_string_lossy().into_owned();
            let ring = load_spec(&path).unwrap().build().unwrap();
            (name, Analysis::new(ring).unwrap())
        })
        .collect()
}

type Outcome = Result<String, String>;

fn criterion_1(rings: &[(String, Analysis)]) -> Outcome {
    let mut pairs = 0;
    for (name, an) in rings {
        let regular = an.is_von_neumann_regular();
        for a in an.ring().elements() {
            for b in an.ring().elements() {
                let r = prop22_suite(an, a, b);
                pairs += 1;
                let same = [r.c4, r.c5, r.c6, r.c7].iter().all(|&c| c == r.c1);
                let forward = !r.c1 || r.c8;
                let converse = !regular || !r.c8 || r.c1;
                if !(same && forward && converse) {
                    return Err(format!("{name}: pair ({a}, {b}) {:?}", r.values()));
                }
            }
        }
    }
    Ok(format!("{pairs} element pairs"))
}

fn criterion_2(rings: &[(String, Analysis)]) -> Outcome {
    let mut classes = 0;
    for (name, an) in rings {
        let audit = minimality_audit(an);
        classes += audit.classes;
        if !audit.disagreements.is_empty() || !audit.minimal_below_failures.is_empty() {
            return Err(format!("{name}: {:?}", audit.disagreements));
        }
    }
    Ok(format!("{classes} classes"))
}

fn criterion_3(rings: &[(String, Analysis)]) -> Outcome {
    let names = ["local", "indecomposable", "vn_regular", "exchange", "quasi_duo"];
    let mut m2_witness = None;
    for (name, an) in rings {
        let report = classify_all(an);
        for predicate in names {
            let record = report
                .record(predicate)
                .ok_or_else(|| format!("{name}: {predicate} did not evaluate"))?;
            if !record.agree {
                return Err(format!("{name}: routes for {predicate} disagree"));
            }
        }
        let value = |p| report.value(p).unwrap();
        match name.as_str() {
            "zmod04" if !value("local") => return Err("zmod04 should be local".into()),
            "zmod06" if value("local") => return Err("zmod06 should not be local".into()),
            "m2_z2" => {
                if !value("vn_regular") || value("quasi_duo") {
                    return Err("m2_z2 should be vN regular and not quasi-duo".into());
                }
                let witness = &report.record("quasi_duo").unwrap().witnesses["left_not_right_coprime"];
                let (a, b): (usize, usize) = serde_json::from_value(witness.clone())
                    .map_err(|_| "m2_z2: no witnessing pair".to_string())?;
                let ring = an.ring();
                if !(oracle_left_coprime(ring, a, b) && !oracle_right_coprime(ring, a, b)) {
                    return Err(format!("m2_z2: ({a}, {b}) does not witness"));
                }
                m2_witness = Some((a, b));
            }
            _ => {}
        }
    }
    let (a, b) = m2_witness.ok_or("m2_z2 missing from corpus")?;
    Ok(format!("m2_z2 witness ({a}, {b}) is left but not right coprime"))
}

fn criterion_4(rings: &[(String, Analysis)]) -> Outcome {
    let mut fewest = usize::MAX;
    let mut annihilator = 0;
    for (name, an) in rings {
        let audit = audit_chains(an, CHAIN_TARGET, CHAIN_MAX_LENGTH);
        fewest = fewest.min(audit.chains);
        annihilator += audit.annihilator_checked;
        if audit.chains < 1000 || !audit.passed {
            return Err(format!("{name}: {audit:?}"));
        }
        if an.is_von_neumann_regular() && audit.annihilator_checked != audit.chains {
            return Err(format!("{name}: annihilator criterion skipped on some chains"));
        }
    }
    Ok(format!("at least {fewest} chains per ring, {annihilator} annihilator checks"))
}

fn criterion_5(rings: &[(String, Analysis)]) -> Outcome {
    let (mut radical, mut refined) = (0, 0);
    for (name, an) in rings {
        let audit = pair_lemma_audit(an);
        radical += audit.radical_pairs;
        refined += audit.non_radical_pairs;
        if !audit.passed() {
            return Err(format!(
                "{name}: {:?} {:?}",
                audit.radical_failures, audit.refinement_failures
            ));
        }
    }
    Ok(format!("{radical} radical pairs, {refined} refined pairs"))
}

fn criterion_6(rings: &[(String, Analysis)]) -> Outcome {
    let mut fired = 0;
    for (name, an) in rings {
        let report = classify_all(an);
        let audit = theorem_audit_with(an, &report);
        for i in audit.implications.iter().chain(&audit.finite_ring_facts) {
            fired += usize::from(i.premise);
            if !i.holds {
                return Err(format!("{name}: {} violated", i.name));
            }
        }
    }
    Ok(format!("{fired} implications with true premise, none violated"))
}

fn oracle_right_ideal(ring: &FiniteRing, a: usize) -> BTreeSet<usize> {
    ring.elements().map(|r| ring.mul(a, r)).collect()
}

fn oracle_left_ideal(ring: &FiniteRing, a: usize) -> BTreeSet<usize> {
    ring.elements().map(|r| ring.mul(r, a)).collect()
}

fn oracle_right_coprime(ring: &FiniteRing, a: usize, b: usize) -> bool {
    let (ar, br) = (oracle_right_ideal(ring, a), oracle_right_ideal(ring, b));
    ar.iter().any(|&x| br.iter().any(|&y| ring.add(x, y) == ring.one()))
}

fn oracle_left_coprime(ring: &FiniteRing, a: usize, b: usize) -> bool {
    let (ra, rb) = (oracle_left_ideal(ring, a), oracle_left_ideal(ring, b));
    ra.iter().any(|&x| rb.iter().any(|&y| ring.add(x, y) == ring.one()))
}

type IdealPair = (BTreeSet<usize>, BTreeSet<usize>);

/// Classes as pairs of principal right ideals, plus the minimal ones.
fn oracle_classes(ring: &FiniteRing) -> (BTreeSet<IdealPair>, Vec<IdealPair>) {
    let mut classes = BTreeSet::new();
    for a in ring.elements() {
        for b in ring.elements() {
            if oracle_right_coprime(ring, a, b) {
                classes.insert((oracle_right_ideal(ring, a), oracle_right_ideal(ring, b)));
            }
        }
    }
    let minimal = classes
        .iter()
        .filter(|(x, y)| {
            !classes
                .iter()
                .any(|(u, v)| u.is_subset(x) && v.is_subset(y) && (u, v) != (x, y))
        })
        .cloned()
        .collect();
    (classes, minimal)
}

fn oracle_is_unit(ring: &FiniteRing, x: usize) -> bool {
    ring.elements()
        .any(|y| ring.mul(x, y) == ring.one() && ring.mul(y, x) == ring.one())
}

fn oracle_radical(ring: &FiniteRing) -> BTreeSet<usize> {
    ring.elements()
        .filter(|&x| {
            ring.elements()
                .all(|r| oracle_is_unit(ring, ring.sub(ring.one(), ring.mul(r, x))))
        })
        .collect()
}

fn criterion_7() -> Outcome {
    let build = |spec: RingSpec| spec.build().unwrap();
    let z6 = build(RingSpec::zmod(6));
    let z4 = build(RingSpec::zmod(4));
    let ut = build(RingSpec::upper_triangular(2, RingSpec::zmod(2)));

    let (classes, minimal) = oracle_classes(&z6);
    if (classes.len(), minimal.len()) != (9, 4) {
        return Err(format!("oracle: zmod06 has {} classes, {} minimal", classes.len(), minimal.len()));
    }
    let an = Analysis::new(z6.clone()).unwrap();
    if (an.poset().len(), an.poset().minimal().len()) != (9, 4) {
        return Err("library disagrees on zmod06".into());
    }

    let (_, minimal) = oracle_classes(&z4);
    let expected: Vec<IdealPair> = vec![
        (oracle_right_ideal(&z4, 0), oracle_right_ideal(&z4, 1)),
        (oracle_right_ideal(&z4, 1), oracle_right_ideal(&z4, 0)),
    ];
    let found: BTreeSet<_> = minimal.into_iter().collect();
    if found != expected.into_iter().collect() {
        return Err("oracle: zmod04 minimal classes differ".into());
    }
    let an4 = Analysis::new(z4).unwrap();
    let mut generators: Vec<_> = an4
        .poset()
        .minimal()
        .iter()
        .map(|&i| an4.poset().class(i).generators())
        .collect();
    generators.sort();
    if generators != [(0, 1), (1, 0)] {
        return Err(format!("library: zmod04 minimal classes {generators:?}"));
    }

    let radical = oracle_radical(&ut);
    let library = Analysis::new(ut.clone()).unwrap().radical().to_vec();
    if radical.len() != 2 || library != radical.iter().copied().collect::<Vec<_>>() {
        return Err(format!("J(ut2_z2): oracle {radical:?}, library {library:?}"));
    }

    let idempotents: Vec<usize> = z6.elements().filter(|&e| z6.mul(e, e) == e).collect();
    if idempotents != [0, 1, 3, 4] || an.idempotents().to_vec() != idempotents {
        return Err(format!("idempotents(zmod06) = {idempotents:?}"));
    }
    Ok("RCP(zmod06) 9/4, zmod04 minimal {<0,1>,<1,0>}, |J(ut2_z2)| = 2, E(zmod06) = {0,1,3,4}".into())
}

fn criterion_8() -> Outcome {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_coprime"))
            .arg("audit")
            .arg(corpus_dir())
            .output()
            .map_err(|e| e.to_string())?;
        if out.status.code() != Some(0) {
            return Err(format!("audit exited with {:?}", out.status.code()));
        }
        Ok(out.stdout)
    };
    let (first, second) = (run()?, run()?);
    if first != second {
        return Err("aggregate reports differ between runs".into());
    }
    Ok(format!("{} identical bytes", first.len()))
}

fn main() {
    let rings = corpus();
    let criteria: [(&str, Box<dyn Fn() -> Outcome>); 8] = [
        ("coprimality characterizations agree", Box::new(|| criterion_1(&rings))),
        ("minimality routes agree", Box::new(|| criterion_2(&rings))),
        ("structural predicate routes agree", Box::new(|| criterion_3(&rings))),
        ("chain audits", Box::new(|| criterion_4(&rings))),
        ("pair refinement audit", Box::new(|| criterion_5(&rings))),
        ("implications", Box::new(|| criterion_6(&rings))),
        ("golden values from oracles", Box::new(criterion_7)),
        ("deterministic audit output", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (i, (label, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} PASS {label}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL {label}: {detail}", i + 1);
            }
        }
    }
    println!("{} rings, {} of 8 criteria passed", rings.len(), 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
