//! One line per acceptance criterion. Run with
//! `cargo test -p qsym --test acceptance --release`; lines are written to
//! stdout directly so they show without `--nocapture`.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use qsym::boxalg::{box_product, MultiplicityTable};
use qsym::certify::{certify, verify_certificate, CertifyConfig, CertifyOutcome, Checkpoint, Session};
use qsym::diagram::{coeff_vector, enumerate_diagrams, EnumerationBudget};
use qsym::graph::cayley::cayley_recursion_check;
use qsym::graph::families::{self, FamilySpec};
use qsym::graph::srg::{three_point_parameters, verify_srg, SrgParams};
use qsym::graph::Sign;
use qsym::qgraph::{adjacency_recursion_check, dimension_check, idempotent_schur_check};
use qsym::symmetry::{automorphism_group, OrbitIndex};
use qsym::vector::Derivation;
use qsym::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{expand, naive_product_at, naive_value, random_graph};

const C1_LIMIT: Duration = Duration::from_secs(1);
const C2_LIMIT: Duration = Duration::from_secs(10);
const C3_LIMIT: Duration = Duration::from_secs(12 * 3600);
const C4A_LIMIT: Duration = Duration::from_secs(60);
const C4B_LIMIT: Duration = Duration::from_secs(4 * 3600);
const C5_LIMIT: Duration = Duration::from_secs(600);
const C6_LIMIT: Duration = Duration::from_secs(600);
const C7_LIMIT: Duration = Duration::from_secs(1800);
/// Wall-clock length of one resumable slice of the O-(6,3) run.
const C8_SLICE: Duration = Duration::from_secs(1);
const C8_MAX_SLICES: usize = 600;

/// Budget used for every certification here: internals, edges, products.
const BUDGET: (usize, usize, usize) = (2, 7, 20_000);

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn o6(q: u32) -> Graph {
    families::build_orthogonal_polar(q).unwrap()
}

fn criterion_1() -> Verdict {
    let mut parts = Vec::new();
    for (q, want) in [(2, (27, 10, 1, 5)), (3, (112, 30, 2, 10))] {
        let (p, t) = timed(|| verify_srg(&o6(q)));
        let p = p.map_err(|e| e.to_string())?;
        let want = SrgParams { v: want.0, k: want.1, lambda: want.2, mu: want.3 };
        ensure(p == want, format!("q={q}: got {p}, want {want}"))?;
        ensure(t < C1_LIMIT, format!("q={q}: {t:?} over {C1_LIMIT:?}"))?;
        parts.push(format!("q={q} {p} in {t:.2?}"));
    }
    Ok(parts.join(", "))
}

fn criterion_2() -> Verdict {
    let mut parts = Vec::new();
    for (q, want) in [(2, [3, 1, 0, 0]), (3, [4, 1, 0, 1])] {
        let g = o6(q);
        let (p, t) = timed(|| three_point_parameters(&g));
        let p = p.map_err(|e| e.to_string())?;
        ensure(p.counts() == want.map(Some), format!("q={q}: got {p}"))?;
        ensure(t < C2_LIMIT, format!("q={q}: {t:?}"))?;
        parts.push(format!("q={q} {p} in {t:.2?}"));
    }
    Ok(parts.join(", "))
}

fn criterion_3() -> Verdict {
    let mut parts = Vec::new();
    let mclaughlin = FamilySpec::McLaughlin.build().map_err(|e| e.to_string())?;
    for (name, g, want) in [("O-(6,3)", o6(3), 134), ("McLaughlin", mclaughlin, 128)] {
        let (idx, t) = timed(|| OrbitIndex::build(&g, &automorphism_group(&g), 4));
        let idx = idx.map_err(|e| e.to_string())?;
        ensure(idx.len() == want, format!("{name}: omega4 {} want {want}", idx.len()))?;
        ensure(t < C3_LIMIT, format!("{name}: {t:?}"))?;
        parts.push(format!("{name} omega4={} in {t:.2?}", idx.len()));
    }
    Ok(parts.join(", "))
}

fn criterion_4() -> Verdict {
    let mut parts = Vec::new();
    for (name, g, limit) in [("pentagon", families::cycle(5).unwrap(), C4A_LIMIT), ("O-(6,2)", o6(2), C4B_LIMIT)] {
        let t = Instant::now();
        let out = certify(&g, CertifyConfig::new(BUDGET.0, BUDGET.1, BUDGET.2)).map_err(|e| e.to_string())?;
        let CertifyOutcome::Certificate(cert) = out else {
            return Err(format!("{name}: no certificate within budget {BUDGET:?}"));
        };
        let found = t.elapsed();
        let (v, vt) = timed(|| verify_certificate(&cert));
        ensure(v.map_err(|e| e.to_string())?.is_valid(), format!("{name}: certificate does not verify"))?;
        ensure(found + vt < limit, format!("{name}: {:?}", found + vt))?;
        parts.push(format!("{name} {} elements, certify {found:.2?}, verify {vt:.2?}", cert.elements.len()));
    }
    Ok(parts.join("; "))
}

fn criterion_5() -> Verdict {
    let g = families::complete(5).unwrap();
    let t = Instant::now();
    let ladder = [(0, 0, 0), (0, 6, 100), (1, 6, 1_000), (2, 6, 10_000), (2, 7, 20_000)];
    let mut ranks = Vec::new();
    for (mi, me, mp) in ladder {
        match certify(&g, CertifyConfig::new(mi, me, mp)).map_err(|e| e.to_string())? {
            CertifyOutcome::NotInSpanAtBudget(r) => {
                ensure(!r.flip_in_span, "report claims the flip is in the span")?;
                ranks.push(format!("{}/{}", r.rank, r.omega));
            }
            CertifyOutcome::Certificate(c) => {
                let v = verify_certificate(&c).map_err(|e| e.to_string())?;
                ensure(!v.is_valid(), format!("a certificate verified at budget {:?}", (mi, me, mp)))?;
                ranks.push("invalid certificate".into());
            }
            CertifyOutcome::ResourceBudgetExceeded(_) => return Err("unexpected stop".into()),
        }
    }
    ensure(t.elapsed() < C5_LIMIT, format!("{:?}", t.elapsed()))?;
    Ok(format!("K5 ladder of {} budgets, ranks {}, in {:.2?}", ladder.len(), ranks.join(" "), t.elapsed()))
}

fn criterion_6() -> Verdict {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let catalog = enumerate_diagrams(4, EnumerationBudget { max_internal: 2, max_edges: 6 });
    let (mut values, mut products) = (0usize, 0usize);
    for trial in 0..50 {
        let n = rng.gen_range(3..=12);
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, n, p);
        let idx = OrbitIndex::build(&g, &automorphism_group(&g), 4).map_err(|e| e.to_string())?;
        let table = MultiplicityTable::build(&idx);
        let picks: Vec<_> = (0..3).map(|_| &catalog[rng.gen_range(0..catalog.len())]).collect();
        let mut vecs = Vec::new();
        for d in picks {
            let v = coeff_vector(&g, &idx, d).map_err(|e| e.to_string())?;
            let ints = v.as_i128().ok_or("non-integer diagram vector")?;
            for (id, rep) in idx.representatives().iter().enumerate() {
                ensure(ints[id] as u128 == naive_value(&g, d, rep), format!("graph {trial}: {d} at {rep:?}"))?;
                values += 1;
            }
            vecs.push(v);
        }
        for (a, b) in [(0, 1), (2, 0)] {
            let p = box_product(&vecs[a], &vecs[b], &table, Derivation::Literal).map_err(|e| e.to_string())?;
            let (ea, eb) = (expand(&vecs[a], &idx), expand(&vecs[b], &idx));
            for (id, rep) in idx.representatives().iter().enumerate() {
                ensure(p.values[id] == naive_product_at(&ea, &eb, n, rep), format!("graph {trial}: product at {rep:?}"))?;
                products += 1;
            }
        }
    }
    ensure(t.elapsed() < C6_LIMIT, format!("{:?}", t.elapsed()))?;
    Ok(format!("50 graphs, {values} diagram values and {products} product entries exact, in {:.2?}", t.elapsed()))
}

fn criterion_7() -> Verdict {
    let t = Instant::now();
    for k in 1..=5 {
        ensure(cayley_recursion_check(k).passed(), format!("Cayley recursion k={k}"))?;
    }
    for k in 1..=2 {
        let r = adjacency_recursion_check(k);
        ensure(r.plus_holds && r.minus_holds, format!("adjacency recursion k={k}: {r:?}"))?;
    }
    for k in 1..=3 {
        for sign in [Sign::Plus, Sign::Minus] {
            let r = idempotent_schur_check(k, sign);
            ensure(r.idempotent_schur, format!("Schur law k={k} sign {sign}"))?;
        }
    }
    let mut dims = Vec::new();
    for k in 1..=4 {
        let r = dimension_check(k);
        ensure(r.y_h == r.dim_s && r.y_e == r.dim_a && r.holds(), format!("dimensions k={k}: {r:?}"))?;
        dims.push(format!("{}/{}", r.dim_s, r.dim_a));
    }
    ensure(t.elapsed() < C7_LIMIT, format!("{:?}", t.elapsed()))?;
    Ok(format!(
        "Cayley k<=5, adjacency k<=2, Schur k<=3 both signs, |Y|=dim k<=4 ({}), in {:.2?}",
        dims.join(" "),
        t.elapsed()
    ))
}

fn criterion_8() -> Verdict {
    let g = o6(3);
    let idx = OrbitIndex::build(&g, &automorphism_group(&g), 4).map_err(|e| e.to_string())?;
    let table = MultiplicityTable::build(&idx);
    let path = std::env::temp_dir().join(format!("qsym-acceptance-{}.json", std::process::id()));
    let mut cp: Option<Checkpoint> = None;
    let mut ranks = vec![0usize];
    let t = Instant::now();
    for slice in 0..C8_MAX_SLICES {
        let config = CertifyConfig {
            deadline: Some(Instant::now() + C8_SLICE),
            ..CertifyConfig::new(BUDGET.0, BUDGET.1, 1_000_000)
        };
        let mut s = match &cp {
            None => Session::new(&g, &idx, &table, config),
            Some(c) => Session::resume(&g, &idx, &table, config, c),
        }
        .map_err(|e| e.to_string())?;
        ensure(s.rank() == *ranks.last().unwrap(), "resumed rank differs from the checkpoint")?;
        match s.run(&mut |_| {}).map_err(|e| e.to_string())? {
            CertifyOutcome::ResourceBudgetExceeded(c) => {
                ensure(c.rank() >= *ranks.last().unwrap(), format!("rank fell in slice {slice}"))?;
                c.save(&path).map_err(|e| e.to_string())?;
                let loaded = Checkpoint::load(&path).map_err(|e| e.to_string())?;
                ensure(loaded == *c, "checkpoint JSON does not round-trip")?;
                ranks.push(loaded.rank());
                cp = Some(loaded);
            }
            CertifyOutcome::Certificate(cert) => {
                std::fs::remove_file(&path).ok();
                let final_rank = s.rank();
                ensure(ranks.windows(2).all(|w| w[0] <= w[1]), "rank not monotone")?;
                ensure(final_rank == 134, format!("final rank {final_rank}, want 134"))?;
                let v = verify_certificate(&cert).map_err(|e| e.to_string())?;
                ensure(v.is_valid(), "certificate does not verify")?;
                let trail: Vec<String> = ranks.iter().skip(1).map(usize::to_string).collect();
                return Ok(format!(
                    "{} slices of {C8_SLICE:?}, ranks {} -> {final_rank}/134, certificate verified, {:.2?} total",
                    slice + 1,
                    trail.join(","),
                    t.elapsed()
                ));
            }
            CertifyOutcome::NotInSpanAtBudget(r) => {
                return Err(format!("search ended at rank {}/{} without the flip", r.rank, r.omega));
            }
        }
    }
    Err(format!("no certificate after {C8_MAX_SLICES} slices"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("O-(6,q) strongly regular parameters", criterion_1),
        ("3-point parameters", criterion_2),
        ("4-tuple orbit counts", criterion_3),
        ("flip certificates", criterion_4),
        ("K5 negative control", criterion_5),
        ("oracle equivalence", criterion_6),
        ("affine-polar combinatorics", criterion_7),
        ("resumable O-(6,3) slices", criterion_8),
    ];
    let mut out = std::io::stdout();
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let line = match run() {
            Ok(detail) => format!("criterion {} PASS {name}: {detail}\n", i + 1),
            Err(detail) => {
                failed.push(i + 1);
                format!("criterion {} FAIL {name}: {detail}\n", i + 1)
            }
        };
        out.write_all(line.as_bytes()).unwrap();
        out.flush().unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
