//! Acceptance suite: one test per release criterion, each printing a
//! single PASS/FAIL line (visible with `--nocapture`).
//!
//! Run with: `cargo test -p polynil --test acceptance`

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use polynil::{
    enumerate_abelian_groups, epicenter, is_capable_closed_form, is_capable_oracle,
    largest_capable_quotient, polynilpotent_multiplier, smith_normal_form, witt_u64, ClassRow,
    FGAbelianGroup, IntMatrix, MultiplierStructure,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn report(id: u32, name: &str, failures: &[String]) {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("acceptance criterion {id} ({name}): {verdict}");
    assert!(
        failures.is_empty(),
        "criterion {id} ({name}): {} failure(s), first: {}",
        failures.len(),
        failures[0]
    );
}

fn standard_rows() -> Vec<ClassRow> {
    [vec![1u32], vec![2], vec![3], vec![1, 1], vec![1, 2], vec![2, 1], vec![1, 1, 1]]
        .into_iter()
        .map(|r| ClassRow::new(r).unwrap())
        .collect()
}

#[test]
fn criterion_1_classical_capability_reproduction() {
    let started = Instant::now();
    let row = ClassRow::of(&[1]);
    let mut failures = Vec::new();
    let mut seen = 0usize;
    for g in enumerate_abelian_groups(64) {
        seen += 1;
        let chain = g.torsion();
        let expected = g.is_trivial() || (chain.len() >= 2 && chain[0] == chain[1]);
        let got = is_capable_closed_form(&g, &row).is_capable();
        if got != expected {
            failures.push(format!("{g}: closed form says {got}, criterion says {expected}"));
        }
    }
    // census sanity: one entry per isomorphism type of order <= 64
    if seen != 117 {
        failures.push(format!("census size {seen}, expected 117 isomorphism types"));
    }
    let elapsed = started.elapsed();
    if elapsed.as_secs_f64() >= 1.0 {
        failures.push(format!("runtime {elapsed:?} exceeded 1 s"));
    }
    report(1, "classical capability reproduction", &failures);
}

#[test]
fn criterion_2_oracle_agreement() {
    let started = Instant::now();
    let rows = standard_rows();
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for g in enumerate_abelian_groups(128) {
        for row in &rows {
            let closed = is_capable_closed_form(&g, row);
            let oracle = is_capable_oracle(&g, row).expect("finite census group");
            checked += 1;
            if closed.is_capable() != oracle.is_capable() {
                failures.push(format!(
                    "{g} under {row}: closed form {} vs oracle {} (witness {:?})",
                    closed.is_capable(),
                    oracle.is_capable(),
                    oracle.witness().map(ToString::to_string),
                ));
            }
        }
    }
    println!("  oracle agreement: {checked} (group, row) pairs in {:?}", started.elapsed());
    if started.elapsed().as_secs() >= 300 {
        failures.push(format!("runtime {:?} exceeded 5 min", started.elapsed()));
    }
    report(2, "oracle agreement", &failures);
}

#[test]
fn criterion_3_nilpotent_row_invariance() {
    let rows = [ClassRow::of(&[1]), ClassRow::of(&[2]), ClassRow::of(&[3])];
    let mut failures = Vec::new();
    for g in enumerate_abelian_groups(128) {
        let closed: Vec<bool> =
            rows.iter().map(|r| is_capable_closed_form(&g, r).is_capable()).collect();
        let oracle: Vec<bool> =
            rows.iter().map(|r| is_capable_oracle(&g, r).expect("finite").is_capable()).collect();
        if closed.windows(2).any(|w| w[0] != w[1]) {
            failures
                .push(format!("{g}: closed-form verdicts differ across (1),(2),(3): {closed:?}"));
        }
        if oracle.windows(2).any(|w| w[0] != w[1]) {
            failures.push(format!("{g}: oracle verdicts differ across (1),(2),(3): {oracle:?}"));
        }
    }
    report(3, "nilpotent row invariance", &failures);
}

#[test]
fn criterion_4_square_groups_under_row_one_one() {
    let row = ClassRow::of(&[1, 1]);
    let mut failures = Vec::new();
    for n in 2u64..=12 {
        let g = FGAbelianGroup::finite(&[n, n]);
        if is_capable_closed_form(&g, &row).is_capable() {
            failures.push(format!("{g} marked capable by closed form"));
        }
        match is_capable_oracle(&g, &row) {
            Ok(v) if v.is_capable() => failures.push(format!("{g} marked capable by oracle")),
            Ok(_) => {}
            Err(e) => failures.push(format!("oracle error on {g}: {e}")),
        }
        let m = polynilpotent_multiplier(&g, &row);
        if !m.is_trivial() {
            failures.push(format!("multiplier of {g} is {m}, expected trivial"));
        }
    }
    report(4, "square groups under row (1,1)", &failures);
}

#[test]
fn criterion_5_classical_multiplier_cross_check() {
    let row = ClassRow::of(&[1]);
    let mut failures = Vec::new();
    for g in enumerate_abelian_groups(64) {
        // independent construction: ⊕_i Z_{n_i}^{(i-1)}
        let expected = MultiplierStructure::new(
            BigUint::zero(),
            g.torsion().iter().enumerate().map(|(i, n)| (n.clone(), BigUint::from(i))).collect(),
        );
        let got = polynilpotent_multiplier(&g, &row);
        if got != expected {
            failures.push(format!("{g}: multiplier {got}, classical form {expected}"));
        }
    }
    report(5, "classical multiplier cross-check", &failures);
}

#[test]
fn criterion_6_necklace_identity() {
    let mut failures = Vec::new();
    for w in 1u64..=8 {
        for d in 0u64..=6 {
            let mut total = BigUint::zero();
            for e in 1..=w {
                if w % e == 0 {
                    total += BigUint::from(e) * witt_u64(e, d);
                }
            }
            let expected = BigUint::from(d).pow(w as u32);
            if total != expected {
                failures.push(format!("w={w} d={d}: sum {total} != {expected}"));
            }
        }
    }
    report(6, "necklace identity", &failures);
}

#[test]
fn criterion_7_snf_property_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5aef_2210);
    let mut failures = Vec::new();
    for trial in 0..1000 {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=6);
        let entries: Vec<BigInt> =
            (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-50i64..=50))).collect();
        let a = IntMatrix::new(rows, cols, entries);
        let snf = smith_normal_form(&a);

        if snf.u.mul(&a).mul(&snf.v) != snf.d {
            failures.push(format!("trial {trial}: u*a*v != d for {a:?}"));
            continue;
        }
        if !snf.u.determinant().abs().is_one() || !snf.v.determinant().abs().is_one() {
            failures.push(format!("trial {trial}: transform not unimodular for {a:?}"));
            continue;
        }
        if !snf.d.is_diagonal() {
            failures.push(format!("trial {trial}: d not diagonal for {a:?}"));
            continue;
        }
        let diag = snf.d.diagonal();
        let chain_ok = diag.windows(2).all(|w| {
            !w[0].is_negative()
                && (if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() })
        });
        if !chain_ok {
            failures.push(format!("trial {trial}: divisor chain broken: {diag:?}"));
            continue;
        }
        // minor-gcd ladder: d_1...d_j = gcd of all j x j minors
        let nonzero: Vec<BigInt> = diag.iter().filter(|x| !x.is_zero()).cloned().collect();
        let mut prod = BigInt::one();
        for (j, dj) in nonzero.iter().enumerate() {
            prod *= dj;
            let ladder = minor_gcd(&a, j + 1);
            if prod != ladder {
                failures.push(format!(
                    "trial {trial}: ladder mismatch at {}: product {prod}, minor gcd {ladder}",
                    j + 1
                ));
                break;
            }
        }
    }
    report(7, "smith normal form property suite", &failures);
}

fn minor_gcd(a: &IntMatrix, j: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in combinations(a.rows(), j) {
        for cols in combinations(a.cols(), j) {
            let det = a.submatrix(&rows, &cols).determinant();
            g = num_integer::Integer::gcd(&g, &det);
        }
    }
    g
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for l in i + 1..k {
            idx[l] = idx[l - 1] + 1;
        }
    }
}

#[test]
fn criterion_8_infinite_case_constructions() {
    let rows = [ClassRow::of(&[1, 1]), ClassRow::of(&[1, 2])];
    let mut failures = Vec::new();
    for n1 in [2u64, 4, 6] {
        for tail in [vec![], vec![2], vec![n1]] {
            let mut chain = vec![n1];
            chain.extend(&tail);
            let g = FGAbelianGroup::with_rank(2, &chain);

            // N generated by (0, n1) in the free part: quotient gains a
            // repeated leading invariant factor and drops one free rank
            let gen = g
                .element(vec![BigInt::zero(), BigInt::from(n1)], vec![BigUint::zero(); chain.len()])
                .unwrap();
            let quotient = g.quotient_by_subgroup(std::slice::from_ref(&gen)).unwrap();
            let mut expected_chain = vec![n1, n1];
            expected_chain.extend(&tail);
            let expected = FGAbelianGroup::with_rank(1, &expected_chain);
            if quotient != expected {
                failures.push(format!("{g}/<(0,{n1})> = {quotient}, expected {expected}"));
                continue;
            }

            for row in &rows {
                let mg = polynilpotent_multiplier(&g, row);
                let mq = polynilpotent_multiplier(&quotient, row);
                if mg.order() != mq.order() {
                    failures.push(format!(
                        "{g} under {row}: order {} vs quotient order {}",
                        mg.order(),
                        mq.order()
                    ));
                }
                if mg.torsion_part() != mq.torsion_part() {
                    failures.push(format!(
                        "{g} under {row}: torsion {} vs quotient torsion {}",
                        mg.torsion_part(),
                        mq.torsion_part()
                    ));
                }
            }

            // rank-dropping quotient (infinite kernel): the multiplier's
            // torsion-free rank strictly drops once the rank is >= 3
            let tall = FGAbelianGroup::with_rank(3, &chain);
            let drop_gen = tall
                .element(
                    vec![BigInt::zero(), BigInt::zero(), BigInt::one()],
                    vec![BigUint::zero(); chain.len()],
                )
                .unwrap();
            let dropped = tall.quotient_by_subgroup(std::slice::from_ref(&drop_gen)).unwrap();
            if dropped.rank() >= tall.rank() {
                failures.push(format!("quotient rank did not drop for {tall}"));
                continue;
            }
            for row in &rows {
                let before = polynilpotent_multiplier(&tall, row);
                let after = polynilpotent_multiplier(&dropped, row);
                if after.free_rank() >= before.free_rank() {
                    failures.push(format!(
                        "{tall} under {row}: multiplier free rank {} -> {} (no strict drop)",
                        before.free_rank(),
                        after.free_rank()
                    ));
                }
            }
        }
    }
    report(8, "infinite-case constructions", &failures);
}

#[test]
fn criterion_9_epicenter_soundness() {
    let rows = [ClassRow::of(&[1]), ClassRow::of(&[1, 1])];
    let mut failures = Vec::new();
    for g in enumerate_abelian_groups(64) {
        for row in &rows {
            let epi = match epicenter(&g, row) {
                Ok(e) => e,
                Err(e) => {
                    failures.push(format!("epicenter error on {g} under {row}: {e}"));
                    continue;
                }
            };
            // member set matches its own subgroup structure
            let members = BigUint::from(epi.members().len());
            match epi.structure().order().finite() {
                Some(order) if *order == members => {}
                other => failures.push(format!(
                    "{g} under {row}: {members} members but structure order {other:?}"
                )),
            }
            // the quotient is capable per the oracle
            let quotient = largest_capable_quotient(&g, row).expect("finite");
            if quotient != *epi.quotient() {
                failures.push(format!("{g} under {row}: quotient mismatch"));
            }
            match is_capable_oracle(&quotient, row) {
                Ok(v) if v.is_capable() => {}
                Ok(_) => failures.push(format!(
                    "{g} under {row}: largest capable quotient {quotient} fails the oracle"
                )),
                Err(e) => failures.push(format!("oracle error on {quotient}: {e}")),
            }
            // capability iff trivial epicenter
            let capable = is_capable_closed_form(&g, row).is_capable();
            if capable != epi.is_trivial() {
                failures.push(format!(
                    "{g} under {row}: capable={capable} but epicenter size {}",
                    epi.members().len()
                ));
            }
        }
    }
    report(9, "epicenter soundness", &failures);
}
