//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! PASS/FAIL table is always printed.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

use solvlie::derivations::derivation_algebra;
use solvlie::exactlin::matrix::unit;
use solvlie::exactlin::{q, qi, Matrix, Spectral, Q};
use solvlie::fixtures::{
    abelian, euclidean_motions, heisenberg, hyperbolic_plane, metric_g, metric_g0, s7_modification,
    r7, s7, sigma_r_certificate,
};
use solvlie::geometry::{
    einstein_check, einstein_extension, heber_properties, pre_einstein, ricci_operator,
    ricci_oracle_koszul, soliton_solve, InnerProduct,
};
use solvlie::io::{parse_algebra, serialize_algebra, AlgebraDocument};
use solvlie::lie::{complete_solvability_check, nilradical, LieAlgebra, Subspace};
use solvlie::modification::{
    apply_modification, equivalence_check, sigma, standard_position_algebra, EquivalenceStatus,
    EquivalenceWitness,
};
use solvlie::random::{
    random_completely_solvable, random_cs_modification, random_metric, random_solvable, seeded,
};

type Check = Result<String, String>;

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

fn span_of(n: usize, idx: &[usize]) -> Subspace<Q> {
    Subspace::span(n, &idx.iter().map(|&i| unit(n, i)).collect::<Vec<_>>())
}

/// `Ric` from the Koszul formula must equal `c·I + D`.
fn koszul_confirms(alg: &LieAlgebra<Q>, ip: &InnerProduct<Q>, c: &Q, d: &Matrix<Q>) -> Result<bool, String> {
    let ric = ricci_oracle_koszul(alg, ip).map_err(err)?;
    let n = alg.dim();
    Ok(ric == &Matrix::identity(n).scale(c) + d)
}

fn fixture_pairs() -> Vec<(LieAlgebra<Q>, InnerProduct<Q>)> {
    vec![
        (heisenberg(), InnerProduct::identity(3)),
        (abelian(3), InnerProduct::identity(3)),
        (hyperbolic_plane(), InnerProduct::identity(2)),
        (euclidean_motions(), InnerProduct::identity(3)),
        (s7(), metric_g0()),
        (s7(), metric_g()),
        (r7(), metric_g0()),
    ]
}

fn ac1() -> Check {
    let h = heisenberg();
    let ip = InnerProduct::identity(3);
    let cert = soliton_solve(&h, &ip).map_err(err)?;
    let d = Matrix::diagonal(&[qi(1), qi(1), qi(2)]);
    ensure(cert.c == q(-3, 2), format!("c = {}", cert.c))?;
    ensure(cert.d == d, "D differs from diag(1,1,2)")?;
    ensure(cert.residual_sq == qi(0), "nonzero residual")?;
    ensure(koszul_confirms(&h, &ip, &q(-3, 2), &d)?, "Koszul Ricci disagrees")?;
    Ok("c = -3/2, D = diag(1,1,2), residual 0".into())
}

fn trace_identity_holds(n: &LieAlgebra<Q>, phi: &Matrix<Q>) -> bool {
    let der = derivation_algebra(n);
    der.basis
        .iter()
        .all(|a| n.is_derivation(a) && (phi * a).trace() == a.trace())
}

fn ac2() -> Check {
    let mut worst = Duration::ZERO;
    let h = heisenberg();
    let start = Instant::now();
    let p = pre_einstein(&h).map_err(err)?;
    worst = worst.max(start.elapsed());
    ensure(p.phi == Matrix::diagonal(&[q(2, 3), q(2, 3), q(4, 3)]), "h3 pre-Einstein differs")?;
    ensure(trace_identity_holds(&h, &p.phi), "h3 trace identity fails")?;
    ensure(Q::field_eigenvalues(&p.phi).is_some(), "h3 eigenvalues not rational")?;
    for n in 1..=8 {
        let a = abelian(n);
        let start = Instant::now();
        let p = pre_einstein(&a).map_err(err)?;
        worst = worst.max(start.elapsed());
        ensure(p.phi == Matrix::identity(n), format!("R^{n}: not the identity"))?;
        ensure(derivation_algebra(&a).dim() == n * n, format!("Der(R^{n}) has wrong dimension"))?;
        ensure(trace_identity_holds(&a, &p.phi), format!("R^{n}: trace identity fails"))?;
        ensure(Q::field_eigenvalues(&p.phi).is_some(), format!("R^{n}: eigenvalues not rational"))?;
    }
    ensure(worst < Duration::from_secs(1), format!("slowest case {worst:?}"))?;
    Ok(format!("h3 diag(2/3,2/3,4/3), R^1..R^8 identity; slowest {worst:.2?}"))
}

fn ac3() -> Check {
    let s = s7();
    s.validate().map_err(err)?;
    ensure(nilradical(&s).map_err(err)? == span_of(7, &[1, 2, 3, 4, 5, 6]), "nilradical(s) != E1..E6")?;
    let ip = metric_g0();
    let cert = soliton_solve(&s, &ip).map_err(err)?;
    let mut d = vec![qi(4); 7];
    d[0] = qi(0);
    let d = Matrix::diagonal(&d);
    ensure(cert.residual_sq == qi(0), "soliton residual nonzero")?;
    ensure(cert.c == qi(-4) && cert.d == d, format!("c = {}", cert.c))?;
    ensure(koszul_confirms(&s, &ip, &qi(-4), &d)?, "Koszul Ricci disagrees with c = -4, D = diag(0,4I)")?;
    let (ambient, source, phi) = s7_modification();
    let (r_prime, map) = apply_modification(&ambient, &source, s.basis_names().to_vec(), &phi).map_err(err)?;
    ensure(map.closed && map.compact_imaginary && map.preserves_source, "modification conditions fail")?;
    ensure(map.normal, "modification is not normal")?;
    let r = r7();
    let reordered = r_prime
        .change_basis(&sigma_r_certificate(), r.basis_names().to_vec())
        .map_err(err)?;
    ensure(reordered.same_structure(&r), "modified algebra differs from the listed r")?;
    ensure(nilradical(&r).map_err(err)? == span_of(7, &[3, 4, 5, 6]), "nilradical(r) != E1..E4")?;
    let (sr, _) = sigma(&r).map_err(err)?;
    ensure(sr.is_isomorphism(&s, &sigma_r_certificate()), "fixture map is not an isomorphism sigma(r) -> s")?;
    // s written in the image basis has the structure constants of sigma(r)
    let pulled = s.change_basis(&sigma_r_certificate(), sr.basis_names().to_vec()).map_err(err)?;
    ensure(pulled.same_structure(&sr), "structure constants differ after change of basis")?;
    Ok("s valid, nilradicals, soliton c = -4, modification normal, sigma(r) = s".into())
}

fn ac4() -> Check {
    let (se, _) = sigma(&euclidean_motions()).map_err(err)?;
    ensure(se.is_abelian() && se.dim() == 3, "sigma(E(2)) is not abelian R^3")?;
    let mut outputs = vec![se];
    let mut max_steps = 0;
    for (alg, ip) in fixture_pairs() {
        let (_, steps) = standard_position_algebra(&alg, &ip).map_err(|e| format!("{}: {e}", alg.name()))?;
        max_steps = max_steps.max(steps);
        outputs.push(sigma(&alg).map_err(err)?.0);
    }
    let mut rng = seeded(4004);
    for i in 0..200 {
        let alg = random_solvable(&mut rng, 4);
        let ip = random_metric(&mut rng, alg.dim());
        let (_, steps) = standard_position_algebra(&alg, &ip).map_err(|e| format!("random #{i}: {e}"))?;
        max_steps = max_steps.max(steps);
        outputs.push(sigma(&alg).map_err(|e| format!("random #{i}: {e}"))?.0);
    }
    for (i, s) in outputs.iter().enumerate() {
        let (ss, _) = sigma(s).map_err(err)?;
        ensure(ss.same_structure(s), format!("sigma not idempotent on output {i}"))?;
    }
    ensure(max_steps <= 2, format!("needed {max_steps} steps"))?;
    Ok(format!("max steps {max_steps} over {} algebras; sigma idempotent", outputs.len() - 1))
}

fn frobenius(a: &Matrix<f64>, b: &Matrix<f64>) -> f64 {
    a.entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn ac5() -> Check {
    let mut extended = fixture_pairs();
    let h = heisenberg();
    let ip = InnerProduct::identity(3);
    let ext = einstein_extension(&h, &ip, &soliton_solve(&h, &ip).map_err(err)?).map_err(err)?;
    extended.push((ext.algebra, ext.metric));
    for (alg, ip) in &extended {
        let a = ricci_operator(alg, ip).map_err(err)?;
        let b = ricci_oracle_koszul(alg, ip).map_err(err)?;
        ensure(a == b, format!("{}: exact mismatch", alg.name()))?;
    }
    let mut rng = seeded(5005);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let alg = random_solvable(&mut rng, 5);
        let ip = random_metric(&mut rng, alg.dim());
        let (af, ipf) = (alg.to_f64(), ip.map_field(solvlie::exactlin::Field::to_f64));
        let a = ricci_operator(&af, &ipf).map_err(err)?;
        let b = ricci_oracle_koszul(&af, &ipf).map_err(err)?;
        worst = worst.max(frobenius(&a, &b));
    }
    ensure(worst < 1e-9, format!("Frobenius discrepancy {worst:e}"))?;
    Ok(format!("exact on {} fixtures; float max discrepancy {worst:.1e}", extended.len()))
}

fn ac6() -> Check {
    let cases = [
        ("h3", heisenberg(), InnerProduct::identity(3)),
        ("s", s7(), metric_g0()),
    ];
    let mut notes = Vec::new();
    for (name, alg, ip) in cases {
        let cert = soliton_solve(&alg, &ip).map_err(err)?;
        let ext = einstein_extension(&alg, &ip, &cert).map_err(err)?;
        let check = einstein_check(&ext.algebra, &ext.metric).map_err(err)?;
        ensure(check.residual_sq == qi(0), format!("{name}: residual {}", check.residual_sq))?;
        ensure(check.c < qi(0), format!("{name}: c = {}", check.c))?;
        let heber = heber_properties(&ext.algebra, &ext.metric).map_err(err)?;
        ensure(heber.complement_abelian, format!("{name}: complement not abelian"))?;
        ensure(heber.complement_semisimple, format!("{name}: ad(a) not semisimple"))?;
        ensure(heber.scaling.is_some(), format!("{name}: no integral scaling"))?;
        notes.push(format!("{name}: t = {}, c = {}", ext.t, check.c));
    }
    Ok(notes.join("; "))
}

fn ac7() -> Check {
    let mut rng = seeded(7007);
    for i in 0..100 {
        let m = random_cs_modification(&mut rng, 4);
        ensure(
            complete_solvability_check(&m.source_algebra).map_err(err)?,
            format!("case {i}: source not completely solvable"),
        )?;
        let (_, map) = apply_modification(&m.ambient, &m.source, m.names.clone(), &m.phi)
            .map_err(|e| format!("case {i}: {e}"))?;
        ensure(map.is_valid(), format!("case {i}: invalid modification"))?;
        ensure(map.normal, format!("case {i}: not normal"))?;
    }
    // completely solvable algebras modified trivially by their own sigma
    for i in 0..20 {
        let alg = random_completely_solvable(&mut rng, 4);
        let (_, map) = sigma(&alg).map_err(|e| format!("sigma case {i}: {e}"))?;
        ensure(map.normal, format!("sigma case {i}: not normal"))?;
    }
    Ok("100 random modifications valid and normal".into())
}

fn ac8() -> Check {
    let v = equivalence_check(&euclidean_motions(), &abelian(3), None).map_err(err)?;
    ensure(v.status == EquivalenceStatus::Equivalent, "E(2) vs R^3")?;
    let v = equivalence_check(&heisenberg(), &abelian(3), None).map_err(err)?;
    ensure(v.status == EquivalenceStatus::NotEquivalent, "h3 vs R^3")?;
    let cert = sigma_r_certificate();
    let v = equivalence_check(&r7(), &s7(), Some(&cert)).map_err(err)?;
    ensure(v.status == EquivalenceStatus::Equivalent, "r vs s")?;
    let EquivalenceWitness::Isomorphism(m) = &v.witness else {
        return Err("r vs s: no isomorphism witness".into());
    };
    let (sr, _) = sigma(&r7()).map_err(err)?;
    let (ss, _) = sigma(&s7()).map_err(err)?;
    ensure(sr.is_isomorphism(&ss, m), "returned witness does not verify")?;
    Ok("Equivalent / NotEquivalent / Equivalent with verified certificate".into())
}

fn ac9() -> Check {
    let mut rng = seeded(9009);
    let mut cases = fixture_pairs();
    while cases.len() < 50 {
        let alg = random_solvable(&mut rng, 4);
        let ip = random_metric(&mut rng, alg.dim());
        cases.push((alg, ip));
    }
    let mut solitons = 0;
    for (i, (alg, ip)) in cases.iter().enumerate() {
        let k = q(rng_int(&mut rng, 1, 7), rng_int(&mut rng, 1, 5));
        let kip = ip.scaled(&k).map_err(err)?;
        let ric = ricci_operator(alg, ip).map_err(err)?;
        let kric = ricci_operator(alg, &kip).map_err(err)?;
        ensure(kric == ric.scale(&(qi(1) / k.clone())), format!("case {i}: Ric does not scale by 1/k"))?;
        let a = soliton_solve(alg, ip).map_err(err)?;
        let b = soliton_solve(alg, &kip).map_err(err)?;
        let zero = a.residual_sq == qi(0);
        ensure(zero == (b.residual_sq == qi(0)), format!("case {i}: soliton status changed"))?;
        if zero {
            solitons += 1;
            let kinv = qi(1) / k.clone();
            ensure(b.c == a.c.clone() * kinv.clone(), format!("case {i}: c does not scale"))?;
            ensure(b.d == a.d.scale(&kinv), format!("case {i}: D does not scale"))?;
        }
        let ea = einstein_check(alg, ip).map_err(err)?;
        let eb = einstein_check(alg, &kip).map_err(err)?;
        ensure(ea.is_einstein == eb.is_einstein, format!("case {i}: Einstein status changed"))?;
    }
    Ok(format!("{} cases, {solitons} solitons", cases.len()))
}

fn rng_int(rng: &mut solvlie::random::TestRng, lo: i64, hi: i64) -> i64 {
    use rand::Rng;
    rng.gen_range(lo..=hi)
}

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn cli(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_solvlie"))
        .args(args)
        .env_remove("SOLVLIE_MODE")
        .output()
        .expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout);
    let json = serde_json::from_str(text.trim()).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), json)
}

fn ac10() -> Check {
    let (code, report) = cli(&["fixtures"]);
    ensure(code == 0, format!("fixtures exit {code}: {report}"))?;
    let mut docs = 0;
    for entry in std::fs::read_dir(data_dir()).map_err(err)? {
        let path = entry.map_err(err)?.path();
        let text = std::fs::read_to_string(&path).map_err(err)?;
        let Ok(doc) = AlgebraDocument::from_json(&text) else { continue };
        let once = serialize_algebra(&doc.to_algebra().map_err(err)?);
        let twice = serialize_algebra(&parse_algebra(&once).map_err(err)?);
        ensure(once == twice, format!("{}: round trip differs", path.display()))?;
        ensure(
            AlgebraDocument::from_json(&once).map_err(err)? == AlgebraDocument::from_json(&twice).map_err(err)?,
            "documents differ",
        )?;
        docs += 1;
    }
    let s = data_dir().join("s.json");
    let (code, report) = cli(&["sigma", s.to_str().unwrap()]);
    ensure(code == 0, "sigma on s failed")?;
    let emitted = AlgebraDocument::from_json(&report["algebra"].to_string()).map_err(err)?;
    let back = AlgebraDocument::from_algebra(&emitted.to_algebra().map_err(err)?);
    ensure(back == emitted, "CLI algebra output does not round trip")?;

    let dir = tempfile::tempdir().map_err(err)?;
    let malformed = [
        ("truncated.json", r#"{"name":"x","dim":2"#),
        ("badrational.json", r#"{"name":"x","dim":2,"basis":["a","b"],"brackets":[{"x":"a","y":"b","value":{"a":"1/0"}}]}"#),
        ("unknown.json", r#"{"name":"x","dim":2,"basis":["a","b"],"brackets":[{"x":"a","y":"c","value":{}}]}"#),
        ("dim.json", r#"{"name":"x","dim":3,"basis":["a","b"],"brackets":[]}"#),
    ];
    for (name, text) in malformed {
        let p = dir.path().join(name);
        std::fs::write(&p, text).map_err(err)?;
        let (code, report) = cli(&["profile", p.to_str().unwrap()]);
        ensure(code == 2, format!("{name}: exit {code}"))?;
        ensure(report["error"] == "ParseError" && report["detail"].is_string(), format!("{name}: {report}"))?;
    }
    let gram = dir.path().join("gram.json");
    std::fs::write(&gram, r#"{"algebra":"h3","gram":[["1","0","0"],["0","1","0"]]}"#).map_err(err)?;
    let h3 = data_dir().join("h3.json");
    let (code, report) = cli(&["ricci", h3.to_str().unwrap(), "--metric", gram.to_str().unwrap()]);
    ensure(code == 2 && report["error"] == "ParseError", format!("2x3 gram: exit {code}"))?;
    let (code, report) = cli(&["no-such-command"]);
    ensure(code == 2 && report["error"].is_string(), "usage error")?;
    Ok(format!("fixtures exit 0; {docs} documents round trip; malformed inputs exit 2"))
}

fn main() {
    let criteria: [(&str, fn() -> Check, u64); 10] = [
        ("Heisenberg nilsoliton", ac1, 1),
        ("Pre-Einstein exactness", ac2, 10),
        ("Seven-dimensional solvsoliton and its modification", ac3, 5),
        ("Sigma map and standard modification", ac4, 30),
        ("Ricci oracle equivalence", ac5, 60),
        ("Einstein extensions", ac6, 10),
        ("Normality property", ac7, 30),
        ("Equivalence verdicts", ac8, 5),
        ("Scaling covariance", ac9, 30),
        ("CLI contract", ac10, 10),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = result.and_then(|msg| {
            if elapsed > Duration::from_secs(*limit) {
                Err(format!("{msg}; exceeded {limit} s"))
            } else {
                Ok(msg)
            }
        });
        match result {
            Ok(msg) => println!("AC{:<2} PASS  {name} ({elapsed:.2?}): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("AC{:<2} FAIL  {name} ({elapsed:.2?}): {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
