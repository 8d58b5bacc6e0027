//! Lemma checks: each id runs computations on scenario data and compares the
//! results with the expectations stored next to that data.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use cremona_core::action::{
    self, character_admissibility, invariant_rank, is_pair_minimal, is_triple_minimal, lefschetz_check, orbits,
    twist_parity_check, twisted_fibers, CharacterProfile, LatticeIsometry, TwistParity, ORDER_CAP,
};
use cremona_core::birmap::{self, compose, degree_sequence, orbit_avoids, pencil_action, projective_eq, Evaluation};
use cremona_core::lattice::{conic_bundle_structures, enumerate_sections, ConicBundleStructure};
use cremona_core::{DivisorClass, ProjMap};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{error_kind, Result, VerifierError};
use crate::fixtures::{Expectation, Fixtures, Origin, Scenario};
use crate::report::{Check, Report, Verdict};
use crate::schema::point_json;

pub type LemmaFn = fn(&mut Ctx<'_>) -> Result<()>;

#[derive(Clone, Copy)]
pub struct Lemma {
    pub id: &'static str,
    /// Scenario holding this lemma's expectations.
    pub scenario: &'static str,
    pub summary: &'static str,
    pub run: LemmaFn,
}

/// Short descriptions of the cited statements, keyed by citation id.
pub fn citations() -> &'static BTreeMap<String, String> {
    static INDEX: OnceLock<BTreeMap<String, String>> = OnceLock::new();
    INDEX.get_or_init(|| serde_json::from_str(include_str!("../citations.json")).expect("citation index parses"))
}

pub struct Ctx<'a> {
    lemma: &'static str,
    fixtures: &'a Fixtures,
    expected: BTreeMap<String, Expectation>,
    used: BTreeSet<String>,
    checks: Vec<Check>,
}

impl<'a> Ctx<'a> {
    pub fn scenario(&self, name: &str) -> Result<&'a Scenario> {
        self.fixtures.scenario(name)
    }

    /// Records a check of `actual` against the stored expectation `key`.
    pub fn check<T: Serialize>(&mut self, key: &str, actual: T) {
        let actual = serde_json::to_value(actual).expect("check values serialize");
        let id = format!("{}/{key}", self.lemma);
        self.used.insert(key.to_string());
        let check = match self.expected.get(key) {
            Some(exp) => Check {
                id,
                verdict: if exp.value == actual { Verdict::Pass } else { Verdict::Fail },
                expected: exp.value.clone(),
                actual,
                citation: citation_text(exp),
            },
            None => Check { id, verdict: Verdict::Fail, expected: json!("no stored expectation"), actual, citation: None },
        };
        self.checks.push(check);
    }

    fn finish(mut self, outcome: Result<()>) -> Vec<Check> {
        if let Err(e) = outcome {
            self.checks.push(Check {
                id: format!("{}/error", self.lemma),
                verdict: Verdict::Fail,
                expected: Value::Null,
                actual: json!(e.to_string()),
                citation: None,
            });
        }
        for (key, exp) in &self.expected {
            if !self.used.contains(key) {
                self.checks.push(Check {
                    id: format!("{}/{key}", self.lemma),
                    verdict: Verdict::Fail,
                    expected: exp.value.clone(),
                    actual: json!("not evaluated"),
                    citation: citation_text(exp),
                });
            }
        }
        self.checks
    }
}

fn citation_text(exp: &Expectation) -> Option<String> {
    match (exp.origin, &exp.citation) {
        (Origin::Cited, Some(key)) => Some(citations().get(key).cloned().unwrap_or_else(|| key.clone())),
        _ => None,
    }
}

fn run_checks(fixtures: &Fixtures, lemma: &Lemma) -> Vec<Check> {
    let expected = fixtures
        .scenarios
        .get(lemma.scenario)
        .and_then(|s| s.expected.get(lemma.id))
        .cloned()
        .unwrap_or_default();
    let mut ctx = Ctx { lemma: lemma.id, fixtures, expected, used: BTreeSet::new(), checks: Vec::new() };
    let outcome = (lemma.run)(&mut ctx);
    ctx.finish(outcome)
}

pub fn find(id: &str) -> Result<&'static Lemma> {
    REGISTRY
        .iter()
        .find(|l| l.id == id)
        .ok_or_else(|| VerifierError::usage(format!("unknown lemma id {id:?}; see `cremona lemmas`")))
}

pub fn run_lemma(fixtures: &Fixtures, id: &str) -> Result<Report> {
    let lemma = find(id)?;
    Ok(Report::new(lemma.scenario, run_checks(fixtures, lemma), Vec::new()))
}

/// Runs every lemma of `registry` on its own thread and merges the checks.
pub fn run_all_with(fixtures: &Fixtures, registry: &[Lemma]) -> Report {
    let mut warnings = Vec::new();
    if registry.is_empty() {
        warnings.push("registry is empty: no checks were run".to_string());
    }
    let checks: Vec<Check> = std::thread::scope(|s| {
        let handles: Vec<_> = registry.iter().map(|l| s.spawn(move || run_checks(fixtures, l))).collect();
        handles.into_iter().flat_map(|h| h.join().expect("lemma thread panicked")).collect()
    });
    Report::new("all", checks, warnings)
}

pub fn run_all(fixtures: &Fixtures) -> Report {
    run_all_with(fixtures, REGISTRY)
}

/// Sorted `(id, summary)` pairs.
pub fn list_lemmas() -> Vec<(&'static str, &'static str)> {
    let mut v: Vec<_> = REGISTRY.iter().map(|l| (l.id, l.summary)).collect();
    v.sort();
    v
}

pub static REGISTRY: &[Lemma] = &[
    Lemma { id: "identity-sanity", scenario: "s6", summary: "identity map and identity isometry behave trivially", run: identity_sanity },
    Lemma { id: "s4hat-negative-curves", scenario: "s4hat", summary: "ten negative curves on the degree-4 surface with a near point, two of them (-2)-curves", run: s4hat_negative_curves },
    Lemma { id: "s4hat-one-bundle", scenario: "s4hat", summary: "that surface carries a single conic bundle structure", run: s4hat_one_bundle },
    Lemma { id: "s4hat-sections", scenario: "s4hat", summary: "its (-2)-sections and the bound r >= 2n", run: s4hat_sections },
    Lemma { id: "s6-three-bundles", scenario: "s6", summary: "three conic bundle structures on the sextic del Pezzo surface", run: s6_three_bundles },
    Lemma { id: "s6-kappa", scenario: "s6", summary: "an involution of the sextic twisting both singular fibers", run: s6_kappa },
    Lemma { id: "s6-hexagon-orbits", scenario: "s6", summary: "rotation of the hexagon of lines: one orbit, size divisible by the degree", run: s6_hexagon_orbits },
    Lemma { id: "s5-ten-curves", scenario: "s5", summary: "ten (-1)-curves on the quintic del Pezzo surface", run: s5_ten_curves },
    Lemma { id: "s5-order5-orbits", scenario: "s5", summary: "orbits of an order-5 automorphism of the quintic", run: s5_order5_orbits },
    Lemma { id: "s5-root-twisting", scenario: "s5", summary: "an element twisting exactly one singular fiber", run: s5_root_twisting },
    Lemma { id: "dp4-sixteen-curves", scenario: "dp4", summary: "sixteen (-1)-curves on a general quartic del Pezzo surface", run: dp4_sixteen_curves },
    Lemma { id: "dp4-ten-bundles", scenario: "dp4", summary: "ten conic bundle structures on the quartic", run: dp4_ten_bundles },
    Lemma { id: "dp4-obstruction", scenario: "dp4", summary: "exchanging all five pairs of conic classes is not a lattice isometry", run: dp4_obstruction },
    Lemma { id: "lefschetz-suite", scenario: "dp4", summary: "traces against fixed-point counts", run: lefschetz_suite },
    Lemma { id: "cs24-relations", scenario: "s4hat", summary: "the two quadratic generators square to the same involution and span a group of order 8", run: cs24_relations },
    Lemma { id: "cs24-lattice", scenario: "s4hat", summary: "action of that group on the lattice, twisting and minimality", run: cs24_lattice },
    Lemma { id: "family-order-8n", scenario: "family", summary: "the family of groups of order 8n and their action on the pencil", run: family_order_8n },
    Lemma { id: "degree-growth", scenario: "degree-growth", summary: "a quadratic map whose iterates have degree 2^n", run: degree_growth },
    Lemma { id: "dp1-eigenvalue-orders", scenario: "dp1", summary: "eigenvalue profiles of small-order elements in rank 9", run: dp1_eigenvalue_orders },
];

fn labels(curves: &[DivisorClass], idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| curves[i].label()).collect()
}

fn fiber_pairs(curves: &[DivisorClass], cb: &ConicBundleStructure, idx: &[usize]) -> Vec<[String; 2]> {
    idx.iter()
        .map(|&k| {
            let (i, j) = cb.singular_fibers[k];
            [curves[i].label(), curves[j].label()]
        })
        .collect()
}

fn parity_json(t: &TwistParity) -> Value {
    json!({ "case": t.case, "r": t.r, "two_k": t.two_k, "consistent": t.consistent })
}

fn group_of(gens: &[LatticeIsometry]) -> Result<action::ActionGroup> {
    Ok(action::closure(gens, ORDER_CAP)?)
}

fn twist_report(s: &Scenario, name: &str) -> Result<Value> {
    let t = s.twist(name)?;
    let curves = s.curves()?;
    let m = s.isometry(&t.isometry)?;
    let cb = s.bundle(&s.class(&t.fiber)?)?;
    Ok(parity_json(&twist_parity_check(&m, &cb, curves, t.base_order)?))
}

fn identity_sanity(ctx: &mut Ctx<'_>) -> Result<()> {
    let s = ctx.scenario("s6")?;
    let id = ProjMap::identity();
    ctx.check("compose-identity", compose(&id, &id)?.is_identity());
    ctx.check("map-closure-order", birmap::closure(&[id], 4)?.order());
    let r = s.rank()?;
    let g = group_of(&[LatticeIsometry::identity(r)])?;
    ctx.check("lattice-closure-order", g.order());
    ctx.check("invariant-rank", invariant_rank(&g));
    let fix = cremona_core::action::FixedLocus::with_chi(3 + r as i64);
    ctx.check("identity-lefschetz", lefschetz_check(&g.elements[0], &fix)?.holds);
    Ok(())
}

fn s4hat_negative_curves(ctx: &mut Ctx<'_>) -> Result<()> {
    let cs = ctx.scenario("s4hat")?.curves()?;
    let mut all: Vec<String> = cs.iter().map(DivisorClass::label).collect();
    all.sort();
    ctx.check("count", cs.len());
    ctx.check("curves", all);
    let minus_two: Vec<String> = cs.iter().filter(|c| c.self_intersection() == -2).map(DivisorClass::label).collect();
    ctx.check("minus-two", minus_two);
    Ok(())
}

fn s4hat_one_bundle(ctx: &mut Ctx<'_>) -> Result<()> {
    let s = ctx.scenario("s4hat")?;
    let cs = s.curves()?;
    let cbs = conic_bundle_structures(s.model()?)?;
    ctx.check("count", cbs.len());
    ctx.check("fibers", cbs.iter().map(|c| c.fiber.label()).collect::<Vec<_>>());
    if let Some(cb) = cbs.first() {
        let all: Vec<usize> = (0..cb.singular_fibers.len()).collect();
        ctx.check("singular-fibers", fiber_pairs(cs, cb, &all));
    }
    Ok(())
}

fn s4hat_sections(ctx: &mut Ctx<'_>) -> Result<()> {
    let s = ctx.scenario("s4hat")?;
    let cs = s.curves()?;
    let cb = s.bundle(&DivisorClass::parse("L-E1", s.rank()?)?)?;
    let one = enumerate_sections(cs, &cb, 1)?;
    let two = enumerate_sections(cs, &cb, 2)?;
    ctx.check("sections-n1", one.iter().map(DivisorClass::label).collect::<Vec<_>>());
    ctx.check("sections-n2", two.iter().map(DivisorClass::label).collect::<Vec<_>>());
    let disjoint = two.len() == 2 && two[0].dot(&two[1]) == 0;
    ctx.check("disjoint-pair", disjoint);
    ctx.check("singular-fibers", cb.singular_fibers.len());
    ctx.check("bound-tight", disjoint && cb.singular_fibers.len() == 2 * 2);
    Ok(())
}

fn s6_three_bundles(ctx: &mut Ctx<'_>) -> Result<()> {
    let s = ctx.scenario("s6")?;
    let cs = s.curves()?;
    let cbs = conic_bundle_structures(s.model()?)?;
    ctx.check("count", cbs.len());
    ctx.check("fibers", cbs.iter().map(|c| c.fiber.label()).collect::<Vec<_>>());
    let pairs: Vec<Vec<[String; 2]>> = cbs
        .iter()
        .map(|cb| fiber_pairs(cs, cb, &(0..cb.singular_fibers.len()).collect::<Vec<_>>()))
        .collect();
    ctx.check("singular-fibers", pairs);
    Ok(())
}

fn s6_kappa(ctx: &mut Ctx<'_>) -> Result<()> {
    let s = ctx.scenario("s6")?;
    let cs = s.curves()?;
    let kappa = s.isometry("kappa")?;
    let g = group_of(&[kappa.clone()])?;
    ctx.check("order", g.order());
    let pm = is_pair_minimal(&g, cs)?;
    ctx.check("pair-minimal", pm.minimal);
    ctx.check("witness", pm.witness.map(|w| labels(cs, &w)));
    let cb = s.bundle(&DivisorClass::parse("L-E1", 3)?)?;
    ctx.check("twisted", fiber_pairs(cs, &cb, &twisted_fibers(&kappa, &cb, cs)));
    ctx.check("triple-minimal", is_triple_minimal(&g, &cb, cs));
    ctx.check("parity", twist_report(s, "kappa")?);
    Ok(())
}

fn orbit_summary(ctx: &mut Ctx<'_>, s: &Scenario, name: &str) -> Result<()> {
    let cs = s.curves()?;
    let g = group_of(&[s.isometry(name)?])?;
    ctx.check("order", g.order());
    let rep = orbits(&g, cs)?;
    ctx.check("invariant-rank", rep.invariant_rank);
    ctx.check("orbits", rep.orbits.iter().map(|o| labels(cs, o)).collect::<Vec<_>>());
    let checks = rep.checks.clone().unwrap_or_default();
    ctx.check("orbit-sizes", checks.iter().map(|c| c.size).collect::<Vec<_>>());
    ctx.check("orbit-multiples", checks.iter().map(|c| c.multiple_of_k).collect::<Vec<_>>());
    ctx.check("divisibility", rep.checks.is_some() && rep.holds());
    Ok(())
}

fn s6_hexagon_orbits(ctx: &mut Ctx<'_>) -> Result<()> {
    let s = ctx.scenario("s6")?;
    orbit_summary(ctx, s, "hexagon")
}

fn s5_ten_curves(ctx: &mut Ctx<'_>) -> Result<()> {
    let s = ctx.scenario("s5")?;
    let cs = s.curves()?;
    ctx.check("count", cs.len());
    ctx.check("all-minus-one", cs.iter().all(|c| c.self_intersection() == -1));
    ctx.check("bundles", conic_bundle_structures(s.model()?)?.len());
    Ok(())
}

fn s5_order5_orbits(ctx: &mut Ctx<'_>) -> Result<()> {
    let s = ctx.scenario("s5")?;
    orbit_summary(ctx, s, "order5")
}

fn s5_root_twisting(ctx: &mut Ctx<'_>) -> Result<()> {
    let s = ctx.scenario("s5")?;
    let t = s.twist("root")?;
    let cs = s.curves()?;
    let m = s.isometry(&t.isometry)?;
    let cb = s.bundle(&s.class(&t.fiber)?)?;
    ctx.check("order", m.order(ORDER_CAP)?);
    ctx.check("singular-fibers", cb.singular_fibers.len());
    ctx.check("twisted", fiber_pairs(cs, &cb, &twisted_fibers(&m, &cb, cs)));
    ctx.check("parity", twist_report(s, "root")?);
    Ok(())
}

fn dp4_sixteen_curves(ctx: &mut Ctx<'_>) -> Result<()> {
    let s = ctx.scenario("dp4")?;
    let cs = s.curves()?;
    ctx.check("count", cs.len());
    ctx.check("all-minus-one", cs.iter().all(|c| c.self_intersection() == -1));
    let by_degree: BTreeMap<String, usize> = cs.iter().fold(BTreeMap::new(), |mut acc, c| {
        *acc.entry(c.ell.to_string()).or_insert(0) += 1;
        acc
    });
    ctx.check("by-degree", by_degree);
    Ok(())
}

fn dp4_ten_bundles(ctx: &mut Ctx<'_>) -> Result<()> {
    let s = ctx.scenario("dp4")?;
    let cbs = conic_bundle_structures(s.model()?)?;
    ctx.check("count", cbs.len());
    ctx.check("fibers", cbs.iter().map(|c| c.fiber.label()).collect::<Vec<_>>());
    ctx.check("singular-fiber-counts", cbs.iter().map(|c| c.singular_fibers.len()).collect::<Vec<_>>());
    Ok(())
}

fn dp4_obstruction(ctx: &mut Ctx<'_>) -> Result<()> {
    let s = ctx.scenario("dp4")?;
    let r = s.rank()?;
    let outcome = match s.class_images("pair-swap")?.to_isometry(r) {
        Ok(m) => json!({ "matrix": m.matrix() }),
        Err(VerifierError::Core(e)) => json!({ "error": error_kind(&e) }),
        Err(e) => return Err(e),
    };
    ctx.check("pair-swap", outcome);
    // conic classes L - Ei whose partner -K - (L - Ei) is their image under the printed involution
    let m = s.isometry("printed")?;
    let minus_k = DivisorClass::canonical(r).scale(-1);
    let swapped: Vec<String> = (1..=r)
        .map(|i| DivisorClass::line(r).sub(&DivisorClass::exceptional(r, i)))
        .filter(|f| m.apply(f) == minus_k.sub(f))
        .map(|f| f.label())
        .collect();
    ctx.check("printed-swaps", swapped);
    Ok(())
}

fn lefschetz_suite(ctx: &mut Ctx<'_>) -> Result<()> {
    let dp4 = ctx.scenario("dp4")?;
    let m = dp4.isometry("printed")?;
    let fix = dp4.fixed_locus("printed")?;
    let rep = lefschetz_check(&m, &fix)?;
    ctx.check("dp4-order", rep.order);
    ctx.check("dp4-trace", rep.trace);
    ctx.check("dp4-fixed-points", fix.isolated_points);
    ctx.check("dp4-holds", rep.holds);
    ctx.check("dp4-permutes-curves", m.curve_permutation(dp4.curves()?).is_ok());
    let dp3 = ctx.scenario("dp3")?;
    let m = dp3.isometry("order3")?;
    let fix = dp3.fixed_locus("order3")?;
    let rep = lefschetz_check(&m, &fix)?;
    ctx.check("rank7-order", rep.order);
    ctx.check("rank7-trace", rep.trace);
    ctx.check("rank7-lattice-rank", m.rank() + 1);
    ctx.check("rank7-holds", rep.holds);
    let identity_ok = (0..=8).all(|r| {
        lefschetz_check(&LatticeIsometry::identity(r), &action::FixedLocus::with_chi(3 + r as i64))
            .is_ok_and(|rep| rep.holds)
    });
    ctx.check("identity-holds", identity_ok);
    Ok(())
}

fn cs24_relations(ctx: &mut Ctx<'_>) -> Result<()> {
    let s = ctx.scenario("s4hat")?;
    let (h1, h2, h3, minus_x) = (s.map("h1")?, s.map("h2")?, s.map("h3")?, s.map("minus_x")?);
    ctx.check("h1-squared", projective_eq(&compose(h1, h1)?, minus_x));
    ctx.check("h2-squared", projective_eq(&compose(h2, h2)?, minus_x));
    ctx.check("h1-h2-is-h3", projective_eq(&compose(h1, h2)?, h3));
    ctx.check("h2-h1-is-h3", projective_eq(&compose(h2, h1)?, h3));
    let g = birmap::closure(&[h1.clone(), h2.clone()], 64)?;
    ctx.check("order", g.order());
    ctx.check("abelian", g.is_abelian());
    let mut orders: Vec<usize> = (0..g.order()).map(|i| g.element_order(i)).collect();
    orders.sort();
    ctx.check("element-orders", orders);
    Ok(())
}

fn cs24_lattice(ctx: &mut Ctx<'_>) -> Result<()> {
    let s = ctx.scenario("s4hat")?;
    let cs = s.curves()?;
    let (g1, g2) = (s.isometry("g1")?, s.isometry("g2")?);
    let cb = s.bundle(&DivisorClass::parse("L-E1", s.rank()?)?)?;
    ctx.check("g1-twisted", fiber_pairs(cs, &cb, &twisted_fibers(&g1, &cb, cs)));
    ctx.check("g2-twisted", fiber_pairs(cs, &cb, &twisted_fibers(&g2, &cb, cs)));
    let group = group_of(&[g1.clone(), g2.clone()])?;
    ctx.check("order", group.order());
    ctx.check("invariant-rank", invariant_rank(&group));
    ctx.check("pair-minimal", is_pair_minimal(&group, cs)?.minimal);
    ctx.check("triple-minimal", is_triple_minimal(&group, &cb, cs));
    ctx.check("g1-triple-minimal", is_triple_minimal(&group_of(&[g1.clone()])?, &cb, cs));
    ctx.check("g1-parity", twist_report(s, "g1")?);

    // order-2 maps of the group, pushed to the lattice through their generator words
    let maps = birmap::closure(&[s.map("h1")?.clone(), s.map("h2")?.clone()], 64)?;
    let gens = [g1, g2];
    let mut involutions = 0;
    let mut twists = 0;
    for (i, w) in maps.words.iter().enumerate() {
        if maps.element_order(i) != 2 {
            continue;
        }
        involutions += 1;
        let induced = w.iter().try_fold(LatticeIsometry::identity(gens[0].rank()), |acc, &k| acc.compose(&gens[k]))?;
        twists += twisted_fibers(&induced, &cb, cs).len();
    }
    ctx.check("involutions", involutions);
    ctx.check("involution-twists", twists);
    Ok(())
}

fn family_order_8n(ctx: &mut Ctx<'_>) -> Result<()> {
    let s = ctx.scenario("family")?;
    let (mut orders, mut quotients, mut kernels) = (Vec::new(), Vec::new(), Vec::new());
    for n in 1..=3 {
        let gens = [s.map("h1")?.clone(), s.map("h2")?.clone(), s.map(&format!("t{n}"))?.clone()];
        let g = birmap::closure(&gens, 256)?;
        orders.push(g.order());
        let pencils = g
            .elements
            .iter()
            .map(|e| pencil_action(e).ok_or_else(|| VerifierError::usage("map does not preserve the pencil")))
            .collect::<Result<Vec<_>>>()?;
        let distinct: BTreeSet<String> = pencils.iter().map(|p| p.to_string()).collect();
        quotients.push(distinct.len());
        kernels.push(pencils.iter().filter(|p| p.is_identity()).count());
    }
    ctx.check("orders", orders);
    ctx.check("pencil-quotients", quotients);
    ctx.check("pencil-kernels", kernels);
    Ok(())
}

fn degree_growth(ctx: &mut Ctx<'_>) -> Result<()> {
    let s = ctx.scenario("degree-growth")?;
    let phi = s.map("phi")?;
    let (a, b) = (s.points("A")?, s.points("B")?);
    ctx.check("degrees", degree_sequence(phi, 4)?);
    ctx.check("base-points", a.iter().all(|p| phi.evaluate(p) == Evaluation::Indeterminate));
    let cert = orbit_avoids(phi, b, a, 4);
    ctx.check("avoids", cert.avoids());
    let orbits: Vec<Vec<_>> = cert.orbits.iter().map(|o| o.iter().map(point_json).collect()).collect();
    ctx.check("orbits", orbits);
    Ok(())
}

fn profiles(n: u32, bounds: &[(u32, i64)]) -> Result<Vec<Vec<(u32, u32)>>> {
    let mut v: Vec<_> = character_admissibility(n, 9, bounds)?.into_iter().map(|p: CharacterProfile| p.entries).collect();
    v.sort();
    Ok(v)
}

fn dp1_eigenvalue_orders(ctx: &mut Ctx<'_>) -> Result<()> {
    ctx.check("order-2", profiles(2, &[(1, -1)])?);
    ctx.check("order-3", profiles(3, &[(1, -1)])?);
    ctx.check("order-4", profiles(4, &[(1, -1), (2, -1)])?);
    ctx.check("order-5", profiles(5, &[(1, -1)])?);
    let six = profiles(6, &[(1, -1), (2, -1), (3, -1)])?;
    ctx.check("order-6-min-trivial", six.iter().map(|p| p[0].1).min());
    Ok(())
}
