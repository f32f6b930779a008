//! One pass/fail line per acceptance criterion. Run with
//! `cargo test -p piekit --test acceptance`.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use piekit::classify::{check_equivalence_preservation, limit_map, transport_splitting, PreservationMode};
use piekit::corpus::{
    catalogue, equalizer_collapse, equalizer_counterexample, random_category, rng, sample_diagrams, thicken,
    thickening_sections,
};
use piekit::fincat::{
    build, classify_morphism, compare_categories, free_category_on_graph, is_free_on_graph, ComparisonMode, Edge,
    FinCat, FinFunctor, FinGraph, FreenessDecision,
};
use piekit::limits::{comparison_inclusion, compile_pie, eval_pie, pseudo_limit, strict_limit};
use piekit::sf2monad::{
    check_algebra, enumerate_omega, eval_zk, idempotent_carrier, idempotent_z3_carrier, induced_free_map,
    monoidal_presentation, perturb, term_closure, terminal_carrier, Signature, SignatureMap,
};
use piekit::weights::{
    is_pie_weight, named_weight_str, ob_presheaf, representable_weight, CatWeight, Diagram, DiagramMap,
};
use piekit::Budget;

type Check = Result<String, String>;

fn budget() -> Budget {
    Budget::new(1 << 40)
}

fn arc(c: FinCat) -> Arc<FinCat> {
    Arc::new(c)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<T>(r: piekit::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn within(t: Duration, limit: Option<u64>) -> Result<(), String> {
    match limit {
        Some(s) if t > Duration::from_secs(s) => Err(format!("took {:.2}s, limit {s}s", t.as_secs_f64())),
        _ => Ok(()),
    }
}

/// Values for generated diagrams: every catalogue category with at most
/// eight morphisms.
fn values() -> Vec<Arc<FinCat>> {
    catalogue(2).into_iter().map(|(_, c)| c).filter(|c| c.morphism_count() <= 8).collect()
}

fn small_values() -> Vec<Arc<FinCat>> {
    vec![arc(build::terminal()), arc(build::discrete_n(2)), arc(build::arrow())]
}

fn pie_weights() -> Vec<(String, CatWeight)> {
    let mut out: Vec<(String, CatWeight)> = ["product(1)", "product(2)", "product(3)", "inserter", "equifier", "comma"]
        .iter()
        .map(|n| (n.to_string(), named_weight_str(n).unwrap()))
        .collect();
    let arrow = arc(build::arrow());
    out.push(("representable(arrow,0)".into(), representable_weight(&arrow, 0)));
    out.push(("representable(arrow,1)".into(), representable_weight(&arrow, 1)));
    out
}

fn instances(w: &CatWeight, values: &[Arc<FinCat>], count: usize, seed: u64) -> Vec<Diagram> {
    sample_diagrams(w.index(), values, count, 300, seed).unwrap()
}

/// Index categories with at most four objects.
fn small_indices() -> Vec<(String, Arc<FinCat>)> {
    let mut out: Vec<(String, Arc<FinCat>)> = catalogue(3).into_iter().map(|(n, c)| (n.to_string(), c)).collect();
    out.push(("ordinal4".into(), arc(build::ordinal(4))));
    out.push(("discrete4".into(), arc(build::discrete_n(4))));
    out.push(("cospan".into(), arc(build::cospan())));
    let mut r = rng(11);
    for i in 0..20 {
        let c = random_category(&mut r, 4, 12);
        out.push((format!("random{i}"), arc(c)));
    }
    out
}

fn criterion_1() -> Check {
    let mut pie = 0;
    for (name, w) in pie_weights().into_iter().take(6) {
        let (ok, cert) = is_pie_weight(&w);
        ensure(ok, || format!("{name} classified not pie"))?;
        cert.verify(&ob_presheaf(&w)).map_err(|e| format!("{name}: {e}"))?;
        pie += 1;
    }
    for (name, j) in small_indices() {
        for x in 0..j.object_count() {
            let w = representable_weight(&j, x);
            let (ok, cert) = is_pie_weight(&w);
            ensure(ok, || format!("representable {name}({x}) classified not pie"))?;
            cert.verify(&ob_presheaf(&w)).map_err(|e| format!("{name}({x}): {e}"))?;
            pie += 1;
        }
    }
    for name in ["equalizer", "idempotent_splitting"] {
        let w = named_weight_str(name).unwrap();
        let (ok, cert) = is_pie_weight(&w);
        ensure(!ok && !cert.is_decomposition(), || format!("{name} classified pie"))?;
        cert.verify(&ob_presheaf(&w)).map_err(|e| format!("{name} refutation does not replay: {e}"))?;
    }
    Ok(format!("{pie} pie weights, 2 refutations replayed"))
}

fn criterion_2() -> Check {
    let mut pairs = 0;
    for (i, (name, w)) in pie_weights().into_iter().enumerate() {
        let (_, cert) = is_pie_weight(&w);
        let compiled = e2s(compile_pie(&w, &cert))?;
        for d in instances(&w, &values(), 8, i as u64) {
            ensure(d.index().object_count() <= 3, || "index too large".into())?;
            let mut b = budget();
            let ev = e2s(eval_pie(&compiled.expr, &d, &mut b))?;
            let s = e2s(strict_limit(&w, &d, &mut b))?;
            let r = e2s(compare_categories(&ev.category, &s.category, ComparisonMode::Isomorphism, &mut b))?;
            ensure(r.holds(), || format!("{name}: compiled limit not isomorphic to the strict limit"))?;
            pairs += 1;
        }
    }
    ensure(pairs >= 50, || format!("only {pairs} pairs"))?;
    Ok(format!("{pairs} pairs isomorphic"))
}

fn criterion_3() -> Check {
    let mut cases: Vec<(String, CatWeight, bool)> = pie_weights().into_iter().map(|(n, w)| (n, w, true)).collect();
    for n in ["equalizer", "idempotent_splitting"] {
        cases.push((n.into(), named_weight_str(n).unwrap(), false));
    }
    let (mut total, mut equivalences) = (0, 0);
    for (i, (name, w, pie)) in cases.iter().enumerate() {
        for d in instances(w, &small_values(), 5, 100 + i as u64) {
            let mut b = budget();
            let s = e2s(strict_limit(w, &d, &mut b))?;
            let p = e2s(pseudo_limit(w, &d, &mut b))?;
            let c = classify_morphism(&e2s(comparison_inclusion(&s, &p))?);
            ensure(c.fully_faithful, || format!("{name}: inclusion not fully faithful"))?;
            if *pie {
                ensure(c.equivalence, || format!("{name}: inclusion not an equivalence"))?;
                equivalences += 1;
            }
            total += 1;
        }
    }
    let w = named_weight_str("equalizer").unwrap();
    let d = equalizer_counterexample();
    let mut b = budget();
    let s = e2s(strict_limit(&w, &d, &mut b))?;
    let p = e2s(pseudo_limit(&w, &d, &mut b))?;
    let c = classify_morphism(&e2s(comparison_inclusion(&s, &p))?);
    ensure(c.fully_faithful && !c.essentially_surjective, || {
        "equalizer counterexample inclusion is essentially surjective".into()
    })?;
    Ok(format!("{total} instances ff, {equivalences} pie equivalences, counterexample not essentially surjective"))
}

fn criterion_4() -> Check {
    let mut checks = 0;
    for (i, (name, w)) in pie_weights().into_iter().enumerate() {
        for d in instances(&w, &small_values(), 3, 200 + i as u64) {
            let th = e2s(thicken(&d))?;
            let suites: [(&DiagramMap, PreservationMode); 5] = [
                (&th.projection, PreservationMode::Equivalence),
                (&th.projection, PreservationMode::Surjective),
                (&th.inclusion, PreservationMode::Equivalence),
                (&th.inclusion, PreservationMode::Injective),
                (&th.collapse, PreservationMode::Equivalence),
            ];
            for (f, mode) in suites {
                let r = e2s(check_equivalence_preservation(&w, f, mode, &mut budget()))?;
                ensure(r.holds, || format!("{name}: mode {mode} fails"))?;
                checks += 1;
            }
        }
    }
    let w = named_weight_str("equalizer").unwrap();
    let r = e2s(check_equivalence_preservation(
        &w,
        &equalizer_collapse(),
        PreservationMode::Equivalence,
        &mut budget(),
    ))?;
    ensure(!r.holds, || "equalizer instance preserves the equivalence".into())?;
    Ok(format!("{checks} pie checks hold, equalizer instance fails"))
}

fn criterion_5() -> Check {
    let (mut exact, mut strict, mut composite) = (0, 0, 0);
    for (i, (name, w)) in pie_weights().into_iter().enumerate() {
        for d in instances(&w, &small_values(), 2, 300 + i as u64) {
            let th = e2s(thicken(&d))?;
            let n = d.index().object_count();
            for choice in [|_: usize| 0, |_: usize| 1, |j: usize| j % 2] {
                let sections = thickening_sections(&d, &th.thick, choice);
                let t = e2s(transport_splitting(&w, &th.projection, &sections, &mut budget()))?;
                ensure(t.is_exact(), || format!("{name}: section does not split the limit map"))?;
                exact += 1;
                // a natural choice is a strict splitting; its transport is {W, k}
                if (0..n).all(|j| choice(j) == choice(0)) {
                    let k = e2s(DiagramMap::new(d.clone(), th.thick.clone(), sections.clone()))?;
                    let image = e2s(limit_map(&k, &t.target_limit, &t.source_limit))?;
                    ensure(image == t.section, || format!("{name}: transport of a strict splitting differs"))?;
                    strict += 1;
                }
            }
            // D × I2 × I2 → D × I2 → D
            let th2 = e2s(thicken(&th.thick))?;
            let (f, g) = (&th2.projection, &th.projection);
            let gf = e2s(f.then(g))?;
            let k = thickening_sections(&th.thick, &th2.thick, |j| j % 2);
            let l = thickening_sections(&d, &th.thick, |j| (j + 1) % 2);
            let kl: Vec<FinFunctor> = l.iter().zip(&k).map(|(l, k)| l.then(k).unwrap()).collect();
            let phi_f = e2s(transport_splitting(&w, f, &k, &mut budget()))?;
            let phi_g = e2s(transport_splitting(&w, g, &l, &mut budget()))?;
            let phi_gf = e2s(transport_splitting(&w, &gf, &kl, &mut budget()))?;
            let composed = e2s(phi_g.section.then(&phi_f.section))?;
            ensure(composed == phi_gf.section, || format!("{name}: transport does not respect composition"))?;
            composite += 1;
        }
    }
    Ok(format!(
        "{exact} sections exact, {strict} strict splittings, {composite} composable pairs coherent"
    ))
}

/// Terms over one binary symbol with exactly `k` nodes in `n` variables.
fn binary_terms(n: usize, k: usize) -> usize {
    if k == 0 {
        return n;
    }
    (0..k).map(|i| binary_terms(n, i) * binary_terms(n, k - 1 - i)).sum()
}

/// Ω-trees with exactly `k` nodes and arities at most `a`; the only tree
/// without nodes is the leaf.
fn trees(k: usize, a: usize) -> usize {
    if k == 0 {
        return 1;
    }
    (0..=a).map(|r| forests(r, k - 1, a)).sum()
}

/// Sequences of `r` trees with `k` nodes in total.
fn forests(r: usize, k: usize, a: usize) -> usize {
    if r == 0 {
        return usize::from(k == 0);
    }
    (0..=k).map(|t| trees(t, a) * forests(r - 1, k - t, a)).sum()
}

fn criterion_6() -> Check {
    let sig = Signature::discrete(&[("m", 2)]);
    let symbols: BTreeMap<usize, Vec<String>> = BTreeMap::from([(2, vec!["m".to_string()])]);
    let mut counts = Vec::new();
    for (n, expected) in [(1, 9), (2, 102)] {
        let zk = e2s(eval_zk(&sig, n, 3, &mut budget()))?;
        let oracle: usize = (0..=3).map(|k| binary_terms(n, k)).sum();
        let closure = e2s(term_closure(&symbols, n, 3, &mut budget()))?;
        let objects: BTreeSet<String> = zk.category.objects().iter().cloned().collect();
        ensure(zk.object_count() == expected && oracle == expected, || {
            format!("n={n}: {} objects, oracle {oracle}", zk.object_count())
        })?;
        ensure(objects == closure, || format!("n={n}: objects differ from the closure"))?;
        counts.push(zk.object_count());
    }
    for a in 0..=3 {
        for bound in 0..=5 {
            let entries = e2s(enumerate_omega(bound, a, &mut budget()))?;
            for k in 0..=bound {
                let got = entries.iter().filter(|e| e.nodes == k).count();
                ensure(got == trees(k, a), || {
                    format!("Ω with arity ≤{a}, {k} nodes: {got}, counter {}", trees(k, a))
                })?;
            }
        }
    }
    Ok(format!("ZK objects {counts:?}, Ω counts agree to 5 nodes"))
}

fn criterion_7() -> Check {
    let p = monoidal_presentation();
    for (name, alg) in [
        ("terminal", terminal_carrier(&p)),
        ("idempotent", idempotent_carrier(&p)),
        ("idempotent_z3", idempotent_z3_carrier(&p)),
    ] {
        let r = e2s(check_algebra(&p, &e2s(alg)?))?;
        ensure(r.holds, || format!("{name}: {:?} fail", r.failed().map(|e| &e.name).collect::<Vec<_>>()))?;
    }
    let alg = e2s(idempotent_z3_carrier(&p))?;
    let at = alg
        .transformation("alpha")
        .and_then(|t| t.source().domain().object_id("((x,*),(x,*),(x,*))"))
        .ok_or("no associator component at (x,x,x)")?;
    let bent = alg.carrier().morphism_id("(id_x,g^1)").ok_or("no morphism (x, g)")?;
    let r = e2s(check_algebra(&p, &e2s(perturb(&alg, "alpha", at, bent))?))?;
    let failed: Vec<&str> = r.failed().map(|e| e.name.as_str()).collect();
    ensure(failed == ["pentagon"], || format!("perturbed associator fails {failed:?}"))?;
    Ok("3 carriers satisfy 9 equations; perturbed associator fails [pentagon]".into())
}

/// Freeness by brute force over atom paths: no composite of non-identities
/// is an identity, and each non-identity morphism is the value of exactly
/// one path of atoms. A path as long as the object count implies a cycle.
fn free_oracle(c: &FinCat) -> (bool, usize) {
    let nonid: Vec<usize> = c.non_identity_morphisms().collect();
    for &g in &nonid {
        for &f in &nonid {
            if c.compose(g, f).is_some_and(|h| c.is_identity(h)) {
                return (false, 0);
            }
        }
    }
    let atoms: Vec<usize> = nonid
        .iter()
        .copied()
        .filter(|&h| {
            !nonid
                .iter()
                .any(|&g| nonid.iter().any(|&f| c.compose(g, f) == Some(h)))
        })
        .collect();
    let mut hits = vec![0usize; c.morphism_count()];
    let mut frontier: Vec<(usize, usize)> = atoms.iter().map(|&a| (a, 1)).collect();
    while let Some((value, len)) = frontier.pop() {
        if len >= c.object_count().max(1) {
            return (false, atoms.len());
        }
        hits[value] += 1;
        for &a in &atoms {
            if let Some(v) = c.compose(a, value) {
                frontier.push((v, len + 1));
            }
        }
    }
    (nonid.iter().all(|&h| hits[h] == 1), atoms.len())
}

fn criterion_8() -> Check {
    let mut corpus: Vec<(String, FinCat)> =
        catalogue(3).into_iter().map(|(n, c)| (n.to_string(), (*c).clone())).collect();
    corpus.push(("z2".into(), build::cyclic_group(2)));
    let square = FinGraph::new(
        vec!["a".into(), "b".into(), "c".into(), "d".into()],
        vec![
            Edge { id: "f".into(), src: 0, dst: 1 },
            Edge { id: "g".into(), src: 1, dst: 3 },
            Edge { id: "h".into(), src: 0, dst: 2 },
            Edge { id: "k".into(), src: 2, dst: 3 },
        ],
    )
    .map_err(|e| e.to_string())?;
    corpus.push(("free_square".into(), e2s(free_category_on_graph(&square))?));
    let mut r = rng(8);
    for i in 0..200 {
        corpus.push((format!("random{i}"), random_category(&mut r, 4, 12)));
    }
    let (mut free, mut checked) = (0, 0);
    for (name, c) in corpus {
        if c.object_count() > 4 || c.morphism_count() > 12 {
            continue;
        }
        let (expected, atoms) = free_oracle(&c);
        let got = match is_free_on_graph(&c) {
            FreenessDecision::Free(g) => {
                ensure(g.edges().len() == atoms, || format!("{name}: graph has the wrong edges"))?;
                true
            }
            FreenessDecision::NotFree(_) => false,
        };
        ensure(got == expected, || format!("{name}: decision {got}, oracle {expected}"))?;
        ensure(name != "z2" || !got, || "ℤ/2 declared free".into())?;
        free += usize::from(got);
        checked += 1;
    }
    Ok(format!("{checked} categories agree ({free} free)"))
}

/// Bijective on objects as given, identities to identities, and each
/// non-identity to the first non-identity in the target hom.
fn objective_functor(dom: &Arc<FinCat>, cod: &Arc<FinCat>, objects: &[usize]) -> FinFunctor {
    let morphisms = (0..dom.morphism_count())
        .map(|m| {
            let (s, t) = (objects[dom.src(m)], objects[dom.dst(m)]);
            if dom.is_identity(m) {
                cod.identity(s)
            } else {
                let hom = cod.hom(s, t);
                hom.iter().copied().find(|&h| !cod.is_identity(h)).unwrap_or(hom[0])
            }
        })
        .collect();
    FinFunctor::new(dom.clone(), cod.clone(), objects.to_vec(), morphisms).expect("a functor")
}

fn signature_map(parts: &[(usize, FinCat, FinCat, Vec<usize>)]) -> SignatureMap {
    let mut src = BTreeMap::new();
    let mut tgt = BTreeMap::new();
    let mut comps = BTreeMap::new();
    for (n, a, b, objects) in parts {
        let (a, b) = (arc(a.clone()), arc(b.clone()));
        comps.insert(*n, objective_functor(&a, &b, objects));
        src.insert(*n, a);
        tgt.insert(*n, b);
    }
    SignatureMap::new(Signature::new(src), Signature::new(tgt), comps).expect("a signature map")
}

fn criterion_9() -> Check {
    use build::*;
    let maps = vec![
        signature_map(&[(2, discrete_n(2), indiscrete(2), vec![0, 1])]),
        signature_map(&[(2, discrete_n(2), discrete_n(2), vec![1, 0])]),
        signature_map(&[(0, terminal(), terminal(), vec![0]), (2, terminal(), cyclic_group(2), vec![0])]),
        signature_map(&[(1, terminal(), cyclic_group(3), vec![0])]),
        signature_map(&[(2, arrow(), indiscrete(2), vec![0, 1])]),
        signature_map(&[(0, discrete_n(2), arrow(), vec![0, 1])]),
        signature_map(&[(1, discrete_n(2), indiscrete(2), vec![1, 0]), (2, terminal(), cyclic_group(2), vec![0])]),
        signature_map(&[(2, terminal(), terminal(), vec![0])]),
        signature_map(&[
            (0, terminal(), cyclic_group(2), vec![0]),
            (1, terminal(), terminal(), vec![0]),
            (2, terminal(), cyclic_group(3), vec![0]),
        ]),
        signature_map(&[(1, discrete_n(3), ordinal(3), vec![0, 1, 2])]),
    ];
    let mut induced = 0;
    for (i, m) in maps.iter().enumerate() {
        ensure(m.is_objective(), || format!("map {i} is not objective"))?;
        for n in [1, 2] {
            let zs = e2s(eval_zk(&m.source, n, 2, &mut budget()))?;
            let zt = e2s(eval_zk(&m.target, n, 2, &mut budget()))?;
            let f = e2s(induced_free_map(m, &zs, &zt))?;
            let mut seen = vec![false; zt.object_count()];
            let injective = f.object_map().iter().all(|&y| !std::mem::replace(&mut seen[y], true));
            ensure(injective && seen.iter().all(|&s| s), || {
                format!("map {i}, n={n}: induced map not bijective on objects")
            })?;
            induced += 1;
        }
    }
    Ok(format!("{} maps, {induced} induced maps bijective on objects", maps.len()))
}

type Criterion = (&'static str, fn() -> Check, Option<u64>);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("pie classification corpus", criterion_1, Some(1)),
        ("compiled pie expressions match strict limits", criterion_2, Some(60)),
        ("strict limits are bilimits", criterion_3, Some(30)),
        ("preservation of pointwise equivalences", criterion_4, None),
        ("transport of pointwise splittings", criterion_5, None),
        ("truncated free algebra and Ω counts", criterion_6, Some(5)),
        ("monoidal presentation", criterion_7, None),
        ("freeness against atom paths", criterion_8, None),
        ("objective signature maps", criterion_9, None),
    ];
    let mut failures = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|d| within(elapsed, *limit).map(|()| d));
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {} {tag} {name}: {detail} ({:.2}s)", i + 1, elapsed.as_secs_f64());
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
