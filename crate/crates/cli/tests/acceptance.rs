//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::time::{Duration, Instant};

use ising_braid::compiler::{evaluate_word, BraidWord};
use ising_braid::continuation_oracle::{
    compare_to_exact, continue_exchange, mat2_max_diff, OracleOptions, QhConfig,
};
use ising_braid::group_tools::{
    self, contains, dimino_enumerate, naive_closure, read_order_formula, RelationMode,
    DEFAULT_ELEMENT_LIMIT,
};
use ising_braid::rep_builder::{
    self, is_tensor_factorizable, parity_projector, qubit_basis_map, reference_matrices,
};
use ising_braid::{CMatrix, Convention, CycloNumber, RepSpec};
use ising_braid_cli::error_rate;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn gens(anyons: usize, conv: Convention, projected: bool) -> Vec<CMatrix> {
    rep_builder::generators(&RepSpec::new(anyons, conv, projected).unwrap())
}

fn generator_fidelity() -> Check {
    let c = reference_matrices();
    let b4 = gens(4, Convention::Wavefunction, true);
    for (g, key) in b4.iter().zip(["R4_12", "R4_23", "R4_34"]) {
        ensure(g == &c[key], format!("2n=4 generator {key} differs"))?;
    }
    let b6 = gens(6, Convention::Wavefunction, true);
    for (g, key) in b6.iter().zip(["R6_12", "R6_23", "R6_34", "R6_45", "R6_56"]) {
        ensure(g == &c[key], format!("2n=6 generator {key} differs"))?;
    }
    let z = CycloNumber::zeta_pow;
    let i2 = CMatrix::identity(2);
    ensure(
        b6[0] == CMatrix::diag(vec![z(0), z(0), z(2), z(2)]),
        "R12 != diag(1,1,i,i)",
    )?;
    ensure(b6[1] == c["R4_23"].tensor(&i2), "R23 != R23(4) x I")?;
    ensure(
        b6[2] == CMatrix::diag(vec![z(0), z(2), z(2), z(0)]),
        "R34 != diag(1,i,i,1)",
    )?;
    ensure(b6[3] == i2.tensor(&c["R4_23"]), "R45 != I x R23(4)")?;
    ensure(
        b6[4] == CMatrix::diag(vec![z(0), z(2), z(0), z(2)]),
        "R56 != diag(1,i,1,i)",
    )?;
    Ok("3 + 5 generators exact".into())
}

fn group_order_b4() -> Check {
    let g = gens(4, Convention::Wavefunction, true);
    let d = dimino_enumerate(&g, 10_000).map_err(|e| e.to_string())?;
    let n = naive_closure(&g, 10_000).map_err(|e| e.to_string())?;
    ensure(d.order() == 96, format!("dimino found {}", d.order()))?;
    ensure(
        n.order() == 96,
        format!("naive closure found {}", n.order()),
    )?;
    ensure(
        d.elements().iter().all(|m| n.contains_exact(m)),
        "element sets differ",
    )?;
    Ok("|B4 image| = 96, naive closure agrees".into())
}

fn group_order_b6() -> Check {
    let g = gens(6, Convention::Wavefunction, true);
    let image = dimino_enumerate(&g, DEFAULT_ELEMENT_LIMIT).map_err(|e| e.to_string())?;
    let formula: u64 = read_order_formula(6)
        .map_err(|e| e.to_string())?
        .try_into()
        .unwrap();
    let order = image.order() as u64;
    if order == formula {
        return Ok(format!("|B6 image| = {order} = closed form"));
    }
    let (big, small) = (order.max(formula), order.min(formula));
    ensure(
        big % small == 0 && (big / small).is_power_of_two(),
        format!("order {order} vs {formula}"),
    )?;
    Ok(format!("|B6 image| = {order}, closed form {formula}"))
}

fn gate_words() -> Check {
    let c = reference_matrices();
    let s4 = RepSpec::computational(4).unwrap();
    let h = evaluate_word(&BraidWord::new(s4, vec![1, 2, 1]).unwrap()).unwrap();
    ensure(h == c["H"].scale(&CycloNumber::zeta()), "[1,2,1] != zeta*H")?;
    let s6 = RepSpec::computational(6).unwrap();
    let cnot = evaluate_word(&BraidWord::new(s6, vec![-3, 4, 3, 1, 5, 4, -3]).unwrap()).unwrap();
    let phase = cnot
        .equal_up_to_phase(&c["CNOT"])
        .ok_or("CNOT word mismatch")?;
    Ok(format!("[1,2,1] = zeta*H; CNOT word = ({phase})*CNOT"))
}

fn t_gate_absent() -> Check {
    let g = gens(4, Convention::Wavefunction, true);
    let image = dimino_enumerate(&g, 10_000).map_err(|e| e.to_string())?;
    let t = &reference_matrices()["T"];
    let hits = image
        .elements()
        .iter()
        .filter(|m| m.equal_up_to_phase(t).is_some())
        .count();
    ensure(hits == 0, format!("{hits} elements equal T up to phase"))?;
    ensure(!contains(&image, t, true), "membership query disagrees")?;
    Ok(format!("T absent from all {} elements", image.order()))
}

fn relations_suite() -> Check {
    let mut checked = 0;
    for anyons in (4..=12).step_by(2) {
        for conv in [Convention::Wavefunction, Convention::Quantumgroup] {
            let g = gens(anyons, conv, true);
            for r in group_tools::check_far_commutativity(&g) {
                ensure(
                    r.verdict.is_exact(),
                    format!("2n={anyons} {conv}: {} not exact", r.relation),
                )?;
                checked += 1;
            }
            if conv == Convention::Wavefunction {
                for r in group_tools::check_artin_relations(&g, RelationMode::Exact) {
                    ensure(
                        r.verdict.is_exact(),
                        format!("2n={anyons}: {} not exact", r.relation),
                    )?;
                    checked += 1;
                }
            }
            let spec = RepSpec::new(anyons, conv, false).unwrap();
            ensure(
                group_tools::check_projector_commutation(&spec).map_err(|e| e.to_string())?,
                format!("2n={anyons} {conv}: projector does not commute"),
            )?;
        }
    }
    Ok(format!(
        "{checked} relations exact, projector commutes, 2n=4..12"
    ))
}

fn non_factorizability() -> Check {
    let c = reference_matrices();
    ensure(
        !is_tensor_factorizable(&c["R6_34"]).unwrap(),
        "diag(1,i,i,1) factorizes",
    )?;
    for key in ["R6_12", "R6_23", "R6_45", "R6_56"] {
        ensure(
            is_tensor_factorizable(&c[key]).unwrap(),
            format!("{key} does not factorize"),
        )?;
    }
    Ok("R34 entangling; the other four factorize".into())
}

fn oracle_agreement() -> Check {
    let cfg = QhConfig::default_config();
    let c = reference_matrices();
    let fine = OracleOptions::default();
    let coarse = OracleOptions {
        steps: fine.steps / 2,
        ..fine.clone()
    };
    let mut worst: f64 = 0.0;
    let mut drift: f64 = 0.0;
    for (a, key) in [(1, "R4_12"), (2, "R4_23"), (3, "R4_34")] {
        let r = continue_exchange(&cfg, a, a + 1, 0.5, &fine).map_err(|e| e.to_string())?;
        let cmp = compare_to_exact(&r.matrix, &c[key]).map_err(|e| e.to_string())?;
        ensure(
            cmp.max_entry_error < 1e-8,
            format!("{key}: error {:e}", cmp.max_entry_error),
        )?;
        worst = worst.max(cmp.max_entry_error);
        let half = continue_exchange(&cfg, a, a + 1, 0.5, &coarse).map_err(|e| e.to_string())?;
        drift = drift.max(mat2_max_diff(&r.matrix, &half.matrix));
    }
    let x = CMatrix::from_zeta_powers(&[&[None, Some(0)], &[Some(0), None]]).unwrap();
    let mono = continue_exchange(&cfg, 2, 3, 1.0, &fine).map_err(|e| e.to_string())?;
    let cmp = compare_to_exact(&mono.matrix, &x).map_err(|e| e.to_string())?;
    ensure(
        cmp.max_entry_error < 1e-8,
        format!("monodromy: error {:e}", cmp.max_entry_error),
    )?;
    worst = worst.max(cmp.max_entry_error);
    ensure(
        drift < 1e-9,
        format!("step halving moved results by {drift:e}"),
    )?;
    Ok(format!(
        "max entry error {worst:.1e}, step-halving drift {drift:.1e}"
    ))
}

fn dimension_law() -> Check {
    for n in 2..=6usize {
        let want = 1usize << (n - 1);
        let p = parity_projector(n);
        ensure(p.rank() == want, format!("n={n}: rank {}", p.rank()))?;
        let enc = qubit_basis_map(n);
        ensure(
            enc.images().len() == want,
            format!("n={n}: {} encoded states", enc.images().len()),
        )?;
        let spec = RepSpec::computational(2 * n).unwrap();
        ensure(spec.dim() == want, format!("n={n}: dim {}", spec.dim()))?;
    }
    Ok("dim = rank = 2^(n-1) for n = 2..6".into())
}

fn error_rate_value() -> Check {
    let v = error_rate(100.0)?;
    ensure(
        (v - 3.72008e-46).abs() < 1e-50,
        format!("error_rate(100) = {v:e}"),
    )?;
    Ok(format!("error_rate(100) = {v:.6e}"))
}

fn main() {
    let criteria: [(&str, fn() -> Check, Duration); 10] = [
        (
            "generator fidelity",
            generator_fidelity,
            Duration::from_secs(1),
        ),
        ("B4 image order", group_order_b4, Duration::from_secs(1)),
        ("B6 image order", group_order_b6, Duration::from_secs(60)),
        ("gate words", gate_words, Duration::from_secs(1)),
        ("T not in B4 image", t_gate_absent, Duration::from_secs(1)),
        ("relations suite", relations_suite, Duration::from_secs(30)),
        (
            "non-factorizability",
            non_factorizability,
            Duration::from_secs(1),
        ),
        (
            "oracle agreement",
            oracle_agreement,
            Duration::from_secs(30),
        ),
        ("dimension law", dimension_law, Duration::from_secs(1)),
        ("error rate", error_rate_value, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > *budget => {
                Err(format!("{detail}; took {elapsed:.2?}, budget {budget:?}"))
            }
            other => other,
        };
        match result {
            Ok(detail) => println!("[{:>2}] PASS {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("[{:>2}] FAIL {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
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
