//! End-to-end acceptance checks. Runs without the libtest harness so that
//! each criterion prints exactly one line; exits non-zero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pmq::bar::{self, BisimplexArray};
use pmq::braid::{apply_log, braid_act, Move};
use pmq::completion::{Completion, HatElem};
use pmq::envelope;
use pmq::free::{FreeGroup, FreeWord};
use pmq::gd::{normalize_decomposition, Decomposition};
use pmq::group::FiniteGroup;
use pmq::homology::Coefficients;
use pmq::perm::Perm;
use pmq::properties;
use pmq::racks;
use pmq::ring::{self, PmqRing};
use pmq::symgeo;
use pmq::validate::validate;
use pmq::{catalog, Elem, FinitePmq};

type Check = std::result::Result<(), String>;
/// A criterion's outcome: a one-line summary of what was covered, or the first failure.
type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------------------
// independent axiom oracle for the mutation test

fn oracle_violations(q: &FinitePmq) -> BTreeSet<&'static str> {
    let els: Vec<Elem> = q.elements().collect();
    let u = q.unit();
    let mut bad = BTreeSet::new();
    let mut flag = |name, cond: bool| {
        if cond {
            bad.insert(name);
        }
    };
    flag(
        "conj-bijective",
        els.iter().any(|&b| els.iter().map(|&a| q.conj(a, b)).collect::<BTreeSet<_>>().len() != els.len()),
    );
    flag("conj-unit", els.iter().any(|&a| q.conj(u, a) != u || q.conj(a, u) != a));
    flag("conj-idempotent", els.iter().any(|&a| q.conj(a, a) != a));
    flag("prod-unit", els.iter().any(|&a| q.prod(u, a) != Some(a) || q.prod(a, u) != Some(a)));
    flag("prod-swap", els.iter().any(|&a| els.iter().any(|&b| q.prod(a, b) != q.prod(b, q.conj(a, b)))));
    let mut sd = false;
    let mut assoc = false;
    let mut cbp = false;
    let mut equiv = false;
    for &a in &els {
        for &b in &els {
            for &c in &els {
                sd |= q.conj(q.conj(a, b), c) != q.conj(q.conj(a, c), q.conj(b, c));
                assoc |= q.prod(a, b).and_then(|x| q.prod(x, c)) != q.prod(b, c).and_then(|x| q.prod(a, x));
                if let Some(bc) = q.prod(b, c) {
                    cbp |= q.conj(a, bc) != q.conj(q.conj(a, b), c);
                }
                equiv |= q.prod(a, b).map(|x| q.conj(x, c)) != q.prod(q.conj(a, c), q.conj(b, c));
            }
        }
    }
    flag("conj-self-distributive", sd);
    flag("prod-associative", assoc);
    flag("conj-by-product", cbp);
    flag("prod-equivariant", equiv);
    if let Some(n) = q.norms() {
        let nm = |a: Elem| n[a.index()];
        flag("norm-kernel", els.iter().any(|&a| (nm(a) == 0) != (a == u)));
        flag(
            "norm-additive",
            els.iter().any(|&a| els.iter().any(|&b| q.prod(a, b).is_some_and(|ab| nm(ab) != nm(a) + nm(b)))),
        );
        flag("norm-conj-invariant", els.iter().any(|&a| els.iter().any(|&b| nm(q.conj(a, b)) != nm(a))));
    }
    bad
}

fn axioms() -> Outcome {
    for d in 1..=5 {
        let r = validate(&catalog::sd_geo(d));
        ensure(r.is_valid(), || format!("S_{d}^geo rejected: {}", r.describe(&catalog::sd_geo(d))))?;
    }
    let rack = catalog::swap_rack();
    let rep = racks::rack_report(&rack);
    ensure(rep.valid_pmr && !rep.valid_pmq, || "swap rack not classified as PMR-but-not-PMQ".into())?;
    ensure(validate(&rack).violations.iter().all(|v| v.axiom.name() == "conj-idempotent"), || {
        "swap rack fails more than idempotence".into()
    })?;

    let q = catalog::sd_geo(4);
    let n = q.len();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut still_valid, mut rejected) = (0, 0);
    for _ in 0..200 {
        let (a, b) = (Elem(rng.gen_range(0..n as u32)), Elem(rng.gen_range(0..n as u32)));
        let m = if rng.gen_bool(0.5) {
            q.with_conj_entry(a, b, Elem(rng.gen_range(0..n as u32)))
        } else {
            let c = if rng.gen_bool(0.3) { None } else { Some(Elem(rng.gen_range(0..n as u32))) };
            q.with_prod_entry(a, b, c)
        };
        let report = validate(&m);
        let named: BTreeSet<&str> = report.violations.iter().map(|v| v.axiom.name()).collect();
        let truth = oracle_violations(&m);
        ensure(named == truth, || format!("mutation at ({a:?},{b:?}): reported {named:?}, oracle {truth:?}"))?;
        if named.is_empty() {
            still_valid += 1;
        } else {
            rejected += 1;
        }
    }
    ensure(rejected > 0, || format!("no mutation was rejected ({still_valid} valid)"))?;
    Ok(format!("200 mutations of S_4^geo: {still_valid} still valid, {rejected} rejected, names match oracle"))
}

fn norm_formula() -> Outcome {
    for d in 1..=6 {
        let dist = symgeo::cayley_distances(d);
        for (p, &n) in Perm::all(d).iter().zip(&dist) {
            let k = p.cycles().len() as u32;
            ensure(symgeo::perm_norm(p) == n && n == d as u32 - k, || format!("{p:?}: norm {} vs distance {n}", symgeo::perm_norm(p)))?;
        }
    }
    Ok(format!("{} permutations, d <= 6", (1..=6).map(|d| (1..=d).product::<usize>()).sum::<usize>()))
}

fn braid_transitivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut max_weight, mut max_log) = (0, 0);
    for case in 0..1000 {
        let r = rng.gen_range(1..=4usize);
        // words grow exponentially in the number of letters on 3+ strands
        let letters = if r == 1 { 0 } else { rng.gen_range(0..=if r == 4 { 12 } else { 20 }) };
        let mut t: Vec<FreeWord> = (1..=r).map(FreeWord::generator).collect();
        for _ in 0..letters {
            let i = rng.gen_range(1..r);
            let m = if rng.gen_bool(0.5) { Move::positive(i) } else { Move::negative(i) };
            braid_act(&FreeGroup { k: r }, &mut t, m).map_err(|e| e.to_string())?;
        }
        let d = Decomposition::from_words(r, r, &t).map_err(|e| format!("case {case}: {e}"))?;
        let n = normalize_decomposition(&d).map_err(|e| format!("case {case}: {e}"))?;
        max_weight = max_weight.max(n.weights[0]);
        max_log = max_log.max(n.log.len());
        let target: Vec<FreeWord> = (1..=r).map(FreeWord::generator).collect();
        ensure(n.target == target, || format!("case {case}: wrong target"))?;
        let replay = apply_log(&FreeGroup { k: r }, &t, &n.log).map_err(|e| e.to_string())?;
        ensure(replay == target, || format!("case {case}: move log does not reproduce the target"))?;
    }
    Ok(format!("1000 scrambles, max initial weight {max_weight}, max log length {max_log}"))
}

fn enveloping_group() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for d in 1..=5 {
        let census = symgeo::env_image_census(d);
        ensure(census.passed(), || format!("d={d}: {census:?}"))?;
        let q = catalog::sd_geo(d);
        let g = FiniteGroup::symmetric(d);
        let perms = Perm::all(d);
        let images: Vec<envelope::TargetElem> = perms.iter().enumerate().map(|(i, p)| (i, vec![p.norm() as i64])).collect();
        envelope::verify_hom(&q, &g, 1, &images).map_err(|r| format!("d={d}: relator {r} fails"))?;
        // every relator is trivial under the word-problem map
        for rel in &envelope::presentation(&q).relators {
            let w: Vec<(Perm, bool)> = rel.word.iter().map(|&(a, e)| (perms[a].clone(), e > 0)).collect();
            ensure(symgeo::env_words_equal(&w, &[], d), || format!("d={d}: relator {:?} not trivial", rel.word))?;
        }
        // random words: word-problem map agrees with relator-checked evaluation
        for _ in 0..200 {
            let len = rng.gen_range(0..8);
            let word: Vec<(usize, i8)> =
                (0..len).map(|_| (rng.gen_range(0..perms.len()), if rng.gen_bool(0.5) { 1 } else { -1 })).collect();
            let w: Vec<(Perm, bool)> = word.iter().map(|&(a, e)| (perms[a].clone(), e > 0)).collect();
            let (n, s) = symgeo::env_word_image(&w, d);
            let (gi, v) = envelope::evaluate(&g, 1, &images, &word);
            ensure(perms[gi] == s && v[0] == n, || format!("d={d}: evaluations disagree on {word:?}"))?;
            ensure((n - s.norm() as i64) % 2 == 0, || format!("d={d}: image leaves the parity subgroup"))?;
        }
    }
    Ok("census and relators for d <= 5, 1000 random words".into())
}

fn completion_triples() -> Outcome {
    let mut pairs = 0;
    for d in [3usize, 4] {
        let c = Completion::new(&catalog::sd_geo(d)).map_err(|e| e.to_string())?;
        let mut classes: Vec<(HatElem, symgeo::GeoHatElem)> = Vec::new();
        for n in 0..=6 {
            let mut from_classes: Vec<symgeo::GeoHatElem> = Vec::new();
            for x in c.classes_at_norm(n) {
                let t = symgeo::triple_of_hat(&x, d);
                symgeo::validate_triple(&t).map_err(|e| format!("d={d}: {e}"))?;
                from_classes.push(t.clone());
                classes.push((x, t));
            }
            let mut from_triples = symgeo::triples_of_norm(d, n);
            from_classes.sort();
            from_triples.sort();
            let distinct = from_classes.windows(2).all(|w| w[0] != w[1]);
            ensure(distinct && from_classes == from_triples, || format!("d={d}, norm {n}: classes and triples differ"))?;
        }
        for (x, tx) in &classes {
            for (y, ty) in &classes {
                pairs += 1;
                let hx = c.hat_conj(x, y);
                ensure(symgeo::triple_of_hat(&hx, d) == symgeo::geo_hat_conj(tx, ty), || format!("d={d}: conjugation differs"))?;
                if x.norm() + y.norm() <= 6 {
                    let p = c.hat_mul(x, y);
                    ensure(symgeo::triple_of_hat(&p, d) == symgeo::geo_hat_mul(tx, ty), || format!("d={d}: product differs"))?;
                }
            }
        }
    }
    Ok(format!("{pairs} class pairs checked against closed forms"))
}

fn coconnectedness() -> Outcome {
    let q = catalog::naturals_with_extra_one(3);
    let r = properties::is_coconnected(&q).map_err(|e| e.to_string())?;
    ensure(!r.holds, || "extra-one truncation reported coconnected".into())?;
    let two = r.per_element.iter().find(|e| e.element == "2").ok_or("no entry for 2")?;
    ensure((two.decompositions, two.classes) == (4, 3), || format!("element 2: {} decompositions in {} classes", two.decompositions, two.classes))?;
    for d in [3, 4] {
        let q = catalog::sd_geo(d);
        let r = properties::is_coconnected(&q).map_err(|e| e.to_string())?;
        ensure(r.holds, || format!("S_{d}^geo not coconnected: {:?}", r.witness))?;
        let bound = properties::default_r_max(&q).map_err(|e| e.to_string())?;
        let p = properties::is_pairwise_determined(&q, bound).map_err(|e| e.to_string())?;
        ensure(p.holds_up_to_bound, || format!("S_{d}^geo not pairwise determined: {:?}", p.witness))?;
    }
    Ok("2 in the extra-one truncation: 4 decompositions, 3 classes".into())
}

fn quadratic_ring() -> Outcome {
    for d in [3usize, 4] {
        let q = catalog::sd_geo(d);
        let p = ring::quadratic_presentation(&q).map_err(|e| e.to_string())?;
        let h = ring::hilbert_check(&q, &p, 4).map_err(|e| e.to_string())?;
        ensure(h.matches, || format!("d={d}: {:?}", h.rows))?;
        let r = PmqRing::new(&q, Coefficients::Integers).map_err(|e| e.to_string())?;
        let perms = Perm::all(d);
        let elem = |p: &Perm| Elem(perms.iter().position(|x| x == p).unwrap() as u32);
        let t = |x, y| r.basis(elem(&Perm::transposition(d, x, y)));
        for x in 1..=d {
            for y in 1..=d {
                if x == y {
                    continue;
                }
                ensure(r.mul(&t(x, y), &t(x, y)).is_zero(), || format!("d={d}: <({x},{y})>^2 != 0"))?;
                for z in 1..=d {
                    if z == x || z == y {
                        continue;
                    }
                    ensure(r.mul(&t(x, y), &t(y, z)) == r.mul(&t(y, z), &t(z, x)), || format!("d={d}: triple relation on {x},{y},{z}"))?;
                    for w in 1..=d {
                        if ![x, y, z].contains(&w) {
                            ensure(r.mul(&t(x, y), &t(z, w)) == r.mul(&t(z, w), &t(x, y)), || format!("d={d}: disjoint pair {x}{y},{z}{w}"))?;
                        }
                    }
                }
            }
        }
        let v = ring::class_sum_centrality(&q);
        ensure(v.holds, || format!("d={d}: class sums not central: {:?}", v.witness))?;
    }
    Ok("Hilbert rows, relations and centrality for d = 3, 4".into())
}

fn pbw() -> Outcome {
    for d in 2..=5 {
        let c = ring::pbw_check_sdgeo(d).map_err(|e| e.to_string())?;
        ensure(c.passed() && c.monomials == (1..=d).product::<usize>(), || format!("{c:?}"))?;
    }
    Ok("monomial counts 2, 6, 24, 120".into())
}

fn free_single_degree(h: &BTreeMap<i64, pmq::homology::HomologyGroup>, degree: i64) -> bool {
    h.iter().all(|(&n, g)| if n == degree { g.is_free_of_rank(1) } else { g.is_zero() }) && h.get(&degree).is_some_and(|g| g.is_free_of_rank(1))
}

fn symmetric_products() -> Outcome {
    for n in 1..=3u32 {
        let q = catalog::truncated_naturals(n);
        let c = Completion::new(&q).map_err(|e| e.to_string())?;
        for m in 0..=n {
            let b = if m == 0 { c.unit() } else { c.parse(&[m.to_string()]).map_err(|e| e.to_string())? };
            let rc = bar::build_relative_complex(&c, &b).map_err(|e| e.to_string())?;
            let h = rc.homology(Coefficients::Integers).map_err(|e| e.to_string())?;
            ensure(free_single_degree(&h, 2 * m as i64), || format!("n={n}, m={m}: {h:?}"))?;
        }
    }
    Ok("n <= 3, m <= n".into())
}

fn hurwitz_cover() -> Outcome {
    let q = catalog::transposition_quandle(3);
    let t = bar::homology_in_grading(&q, &["(1,2)", "(1,3)"], Coefficients::Integers).map_err(|e| e.to_string())?;
    let ranks: Vec<(i64, usize)> = t.homology.iter().map(|(&n, g)| (n, g.rank)).collect();
    let torsion_free = t.homology.values().all(|g| g.torsion.is_empty());
    ensure(ranks == [(3, 1), (4, 1)] && torsion_free, || format!("homology {ranks:?}"))?;
    Ok(format!("chain ranks {:?}", t.ranks))
}

fn non_poincare() -> Outcome {
    let q = catalog::segre();
    let t = bar::homology_in_grading(&q, &["c"], Coefficients::Integers).map_err(|e| e.to_string())?;
    let h4 = t.homology.get(&4).map_or(0, |g| g.rank);
    ensure(h4 == 2, || format!("H_4 has rank {h4}"))?;
    let r = bar::poincare_report(&q, 2).map_err(|e| e.to_string())?;
    ensure(!r.necessary_conditions_passed, || "Poincare report passed".into())?;
    Ok(format!("chain ranks {:?}", t.ranks))
}

fn fundamental_class() -> Outcome {
    let q = catalog::sd_geo(3);
    let c = Completion::new(&q).map_err(|e| e.to_string())?;
    let (mut gradings, mut arrays) = (0, 0);
    for n in 0..=4 {
        for (b, list) in bar::arrays_by_grading(&c, n) {
            arrays += list.len();
            let rc = bar::complex_from_arrays(&c, &b, list).map_err(|e| e.to_string())?;
            let h = rc.homology(Coefficients::Integers).map_err(|e| e.to_string())?;
            let top = 2 * b.norm() as i64;
            ensure(h.get(&top).is_some_and(|g| g.is_free_of_rank(1)), || format!("grading {:?}: H_{top} = {:?}", c.labels(&b), h.get(&top)))?;
            gradings += 1;
        }
    }
    ensure(gradings > 0, || "no gradings enumerated".into())?;
    Ok(format!("{gradings} gradings, {arrays} arrays"))
}

fn random_array(c: &Completion, rng: &mut ChaCha8Rng, p: usize, qq: usize) -> BisimplexArray {
    let pool: Vec<HatElem> = c.pmq().nonunits().into_iter().map(|a| c.hat(a)).chain(c.classes_at_norm(2)).collect();
    let size = (p + 2) * (qq + 2);
    let mut entries = vec![c.unit(); size];
    for _ in 0..rng.gen_range(1..=3) {
        entries[rng.gen_range(0..size)] = pool[rng.gen_range(0..pool.len())].clone();
    }
    BisimplexArray::new(p, qq, entries).unwrap()
}

fn structural_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut complexes = 0;
    for (name, q) in [("S3geo", catalog::sd_geo(3)), ("transpositions", catalog::transposition_quandle(3)), ("segre", catalog::segre())] {
        let c = Completion::new(&q).map_err(|e| e.to_string())?;
        for case in 0..60 {
            // face-of-face identities need at least two faces in each direction
            let (p, qq) = (rng.gen_range(2..5), rng.gen_range(2..5));
            let a = random_array(&c, &mut rng, p, qq);
            let g = a.total_grading(&c);
            let e = |x: pmq::Error| x.to_string();
            for i in 0..=p {
                let di = a.h_face(&c, i).map_err(e)?;
                ensure(di.total_grading(&c) == g, || format!("{name} #{case}: horizontal face {i} changes grading"))?;
                for j in (i + 1)..=p {
                    ensure(a.h_face(&c, j).map_err(e)?.h_face(&c, i).map_err(e)? == di.h_face(&c, j - 1).map_err(e)?, || format!("{name} #{case}: d_i d_j"))?;
                }
                for j in 0..=qq {
                    ensure(di.v_face(&c, j).map_err(e)? == a.v_face(&c, j).map_err(e)?.h_face(&c, i).map_err(e)?, || format!("{name} #{case}: faces do not commute"))?;
                }
                let s = a.h_degen(&c, i).map_err(e)?;
                ensure(s.h_face(&c, i).map_err(e)? == a && s.h_face(&c, i + 1).map_err(e)? == a, || format!("{name} #{case}: d s != id"))?;
            }
            for j in 0..=qq {
                let dj = a.v_face(&c, j).map_err(e)?;
                ensure(dj.total_grading(&c) == g, || format!("{name} #{case}: vertical face {j} changes grading"))?;
                for k in (j + 1)..=qq {
                    ensure(a.v_face(&c, k).map_err(e)?.v_face(&c, j).map_err(e)? == dj.v_face(&c, k - 1).map_err(e)?, || format!("{name} #{case}: d_j d_k"))?;
                }
                let s = a.v_degen(&c, j).map_err(e)?;
                ensure(s.v_face(&c, j).map_err(e)? == a && s.v_face(&c, j + 1).map_err(e)? == a, || format!("{name} #{case}: d s != id"))?;
            }
        }
        for n in 0..=3 {
            for (b, arrays) in bar::arrays_by_grading(&c, n) {
                let rc = bar::complex_from_arrays(&c, &b, arrays).map_err(|e| e.to_string())?;
                complexes += 1;
                for k in rc.basis.keys() {
                    let dd = rc.complex.boundary(k - 1).mul(&rc.complex.boundary(*k));
                    ensure(dd.is_zero(), || format!("{name}: boundary squares to nonzero in degree {k}"))?;
                }
            }
        }
    }
    let small = catalog::truncated_naturals(1);
    let big = catalog::truncated_naturals(2);
    let (cs, cb) = (Completion::new(&small).map_err(|e| e.to_string())?, Completion::new(&big).map_err(|e| e.to_string())?);
    let psi = vec![big.elem("0").unwrap(), big.elem("1").unwrap()];
    for n in 0..=4usize {
        let (bs, bb) = if n == 0 {
            (cs.unit(), cb.unit())
        } else {
            (cs.parse(&vec!["1"; n]).map_err(|e| e.to_string())?, cb.parse(&vec!["1"; n]).map_err(|e| e.to_string())?)
        };
        let dst = bar::build_relative_complex(&cs, &bs).map_err(|e| e.to_string())?;
        let src = bar::build_relative_complex(&cb, &bb).map_err(|e| e.to_string())?;
        let f = bar::restriction_map(&src, &dst, &psi);
        ensure(bar::is_chain_map(&src, &dst, &f), || format!("restriction is not a chain map in grading 1^{n}"))?;
    }
    Ok(format!("180 random arrays, {complexes} complexes, 5 restriction maps"))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 13] = [
        ("axioms and mutations", Duration::from_secs(10), axioms),
        ("norm equals Cayley distance", Duration::from_secs(30), norm_formula),
        ("braid transitivity", Duration::from_secs(60), braid_transitivity),
        ("enveloping group", Duration::from_secs(10), enveloping_group),
        ("completion triples", Duration::from_secs(300), completion_triples),
        ("coconnectedness", Duration::from_secs(60), coconnectedness),
        ("quadratic ring", Duration::from_secs(60), quadratic_ring),
        ("PBW basis", Duration::from_secs(10), pbw),
        ("symmetric products", Duration::from_secs(60), symmetric_products),
        ("Hurwitz cover", Duration::from_secs(60), hurwitz_cover),
        ("non-Poincare detection", Duration::from_secs(30), non_poincare),
        ("fundamental class", Duration::from_secs(120), fundamental_class),
        ("structural suites", Duration::from_secs(60), structural_suites),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match (&result, elapsed <= *limit) {
            (Ok(summary), true) => format!("PASS ({summary})"),
            (Ok(_), false) => format!("FAIL (over the {}s limit)", limit.as_secs()),
            (Err(msg), _) => format!("FAIL ({msg})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {:>2} {name:<28} {:>8.2}s  {verdict}", i + 1, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
