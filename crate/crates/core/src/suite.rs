//! The acceptance battery. Every criterion is exact: one failed check fails it.
//!
//! Criteria run concurrently; reports come back sorted by id. Only criterion 7
//! draws random instances, from a ChaCha stream seeded by [`SuiteConfig::seed`].

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::abgrp::{check_right_exact, smith_normal_form, AbHom, FGAbGroup, IntMatrix};
use crate::beck::{check_theorem1, check_theorem2, check_theorem3, BeckContext};
use crate::error::{Error, Result};
use crate::monoid::{self, FinCommMonoid, MonBeckModule, MonoidContext, MonoidHom};
use crate::oracle;
use crate::ring::context::hom_from_omega_dimension;
use crate::ring::square_zero::{reconstruct_group_law, SquareZeroExtension};
use crate::ring::{catalog, kaehler, AlgebraHom, FPAlgebra, FPModule, Field, RingContext};
use crate::set::{
    enumerate_group_objects, labeled_abelian_group_count, FinSet, SetBeckModule, SetContext, SetMap,
};

/// Failure messages kept per criterion; the count is always exact.
const KEPT_FAILURES: usize = 20;

#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub seed: u64,
    /// A criterion id, a context tag (`set`, `monoid`, `ring`, `abgrp`) or a name.
    pub only: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub name: &'static str,
    pub contexts: &'static [&'static str],
    pub passed: bool,
    pub checked: u64,
    pub failed: u64,
    pub failures: Vec<String>,
    pub summary: String,
    pub millis: u64,
}

#[derive(Default)]
struct Tally {
    checked: u64,
    failed: u64,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(msg);
        }
    }

    /// Unwraps `r`, recording an error as a failed check.
    fn ok<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checked += 1;
                self.fail(format!("{}: {e}", what()));
                None
            }
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub contexts: &'static [&'static str],
    run: fn(u64, &mut Tally),
}

pub const CRITERIA: [Criterion; 9] = [
    Criterion { id: 1, name: "ens-exhaustive", contexts: &["set"], run: ens_exhaustive },
    Criterion { id: 2, name: "nat-omega", contexts: &["monoid"], run: nat_omega },
    Criterion { id: 3, name: "first-sequence", contexts: &["set", "monoid", "ring"], run: first_sequence },
    Criterion { id: 4, name: "epi", contexts: &["set", "ring"], run: epi },
    Criterion { id: 5, name: "base-change", contexts: &["set", "ring"], run: base_change },
    Criterion { id: 6, name: "representability", contexts: &["set", "monoid", "ring"], run: representability },
    Criterion { id: 7, name: "smith-and-hom-oracle", contexts: &["abgrp"], run: smith_and_hom_oracle },
    Criterion { id: 8, name: "group-objects", contexts: &["set"], run: group_objects },
    Criterion { id: 9, name: "ring-classics", contexts: &["ring"], run: ring_classics },
];

impl Criterion {
    pub fn matches(&self, filter: &str) -> bool {
        filter == self.id.to_string() || filter == self.name || self.contexts.contains(&filter)
    }
}

/// Whether `filter` selects at least one criterion.
pub fn is_valid_filter(filter: &str) -> bool {
    CRITERIA.iter().any(|c| c.matches(filter))
}

pub fn run(config: &SuiteConfig) -> Vec<CriterionReport> {
    let selected: Vec<&Criterion> = CRITERIA
        .iter()
        .filter(|c| config.only.as_deref().is_none_or(|f| c.matches(f)))
        .collect();
    let mut reports: Vec<CriterionReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|c| scope.spawn(move || run_one(c, config.seed)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("criterion thread panicked"))
            .collect()
    });
    reports.sort_by_key(|r| r.id);
    reports
}

pub fn run_one(c: &Criterion, seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::default();
    (c.run)(seed, &mut t);
    let mut summary = format!("{} checks", t.checked);
    for n in &t.notes {
        summary.push_str("; ");
        summary.push_str(n);
    }
    CriterionReport {
        id: c.id,
        name: c.name,
        contexts: c.contexts,
        passed: t.failed == 0 && t.checked > 0,
        checked: t.checked,
        failed: t.failed,
        failures: t.failures,
        summary,
        millis: start.elapsed().as_millis() as u64,
    }
}

/// One line per criterion, then a failure list.
pub fn render_text(reports: &[CriterionReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!(
            "criterion {} {:<22} {}  ({}, {} ms)\n",
            r.id,
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            r.summary,
            r.millis
        ));
        for f in &r.failures {
            out.push_str(&format!("    {f}\n"));
        }
        if r.failed as usize > r.failures.len() {
            out.push_str(&format!("    ... {} failures in total\n", r.failed));
        }
    }
    out
}

fn small_set_maps(max: usize) -> Vec<SetMap> {
    let mut out = Vec::new();
    for m in 0..=max {
        for n in 0..=max {
            out.extend(SetMap::all(&FinSet::range(m), &FinSet::range(n)));
        }
    }
    out
}

fn show(f: &SetMap) -> String {
    format!("{} -> {} {:?}", f.source().len(), f.target().len(), f.images())
}

fn ens_exhaustive(_: u64, t: &mut Tally) {
    let maps = small_set_maps(4);
    for f in &maps {
        if let Some(v) = t.ok(SetContext.prop_ens_check(f), || show(f)) {
            t.check(v.consistent(), || format!("{}: {v:?}", show(f)));
        }
    }
    t.note(format!("{} maps", maps.len()));
}

fn nat_omega(_: u64, t: &mut Tally) {
    let ctx = MonoidContext;
    let (Some(a), Some(b)) = (
        t.ok(ctx.omega_nat_truncated(8), || "bound 8".into()),
        t.ok(ctx.omega_nat_truncated(9), || "bound 9".into()),
    ) else {
        return;
    };
    t.check(a.fibers.len() == 9, || format!("{} fibers at bound 8", a.fibers.len()));
    t.check(a.matches_expected(), || format!("bound 8: {a:?}"));
    t.check(b.matches_expected(), || format!("bound 9: {b:?}"));
    t.check(b.agrees_with(&a), || "bounds 8 and 9 disagree".into());
}

/// Right exactness of the set sequence, also decided fiberwise by the Hom oracle.
fn set_first_sequence(f: &SetMap, t: &mut Tally) {
    let ctx = SetContext;
    let Some(v) = t.ok(check_theorem1(&ctx, f), || show(f)) else { return };
    t.check(v.exact, || format!("{}: {v:?}", show(f)));
    let (Some(delta), Some(gamma)) = (t.ok(ctx.delta_tilde(f), || show(f)), t.ok(ctx.gamma(f), || show(f)))
    else {
        return;
    };
    let by_oracle = (0..f.target().len())
        .all(|y| oracle::hom_exact(delta.component(y), gamma.component(y)));
    t.check(by_oracle == v.exact, || format!("{}: Hom oracle says {by_oracle}", show(f)));
}

fn first_sequence(_: u64, t: &mut Tally) {
    let maps = small_set_maps(4);
    for f in &maps {
        set_first_sequence(f, t);
    }
    let mut monoid_homs = 0;
    for (sn, s) in monoid::catalog() {
        for (tn, tg) in monoid::catalog() {
            for f in MonoidHom::all(&s, &tg) {
                monoid_homs += 1;
                let what = || format!("{sn} -> {tn} {:?}", f.images());
                if let Some(v) = t.ok(check_theorem1(&MonoidContext, &f), what) {
                    t.check(v.exact, || format!("{}: {v:?}", what()));
                }
            }
        }
    }
    for (name, f) in catalog::homs() {
        if let Some(v) = t.ok(check_theorem1(&RingContext, &f), || name.into()) {
            t.check(v.exact, || format!("{name}: {v:?}"));
        }
    }
    t.note(format!(
        "{} set maps, {monoid_homs} monoid homs, {} ring homs",
        maps.len(),
        catalog::homs().len()
    ));
}

fn epi(_: u64, t: &mut Tally) {
    let mut surjections = 0;
    for f in small_set_maps(4).iter().filter(|f| f.is_surjective()) {
        surjections += 1;
        if let Some(v) = t.ok(check_theorem2(&SetContext, f), || show(f)) {
            t.check(v.epi, || format!("{}: delta not epi", show(f)));
        }
    }
    let mut ring_surjections = 0;
    for (name, f) in catalog::homs() {
        let Some(surjective) = t.ok(f.is_surjective(), || name.into()) else { continue };
        let Some(localization) = t.ok(f.is_localization(), || name.into()) else { continue };
        if !surjective && !localization {
            continue;
        }
        ring_surjections += usize::from(surjective);
        if let Some(v) = t.ok(check_theorem2(&RingContext, &f), || name.into()) {
            t.check(v.epi, || format!("{name}: delta not epi"));
            if localization {
                t.check(v.iso, || format!("{name}: delta not iso for a localization"));
            }
        }
    }
    t.check(ring_surjections == 2, || format!("{ring_surjections} catalog ring surjections, expected 2"));
    t.note(format!("{surjections} set surjections, {ring_surjections} ring surjections, 1 localization"));
}

fn base_change(_: u64, t: &mut Tally) {
    for m in 0..=3 {
        for n in 0..=3 {
            let (x, z) = (FinSet::range(m), FinSet::range(n));
            if let Some(v) = t.ok(check_theorem3(&SetContext, &x, &z), || format!("{m} + {n}")) {
                t.check(v.iso, || format!("{n} + {m}: {v:?}"));
            }
        }
    }
    for (name, a, k) in catalog::base_change_pairs() {
        if let Some(v) = t.ok(RingContext.base_change_check(&a, &k), || name.into()) {
            t.check(v.iso, || format!("{name}: {v:?}"));
        }
    }
}

/// Fibers of order at most 4.
fn small_groups() -> Vec<FGAbGroup> {
    vec![
        FGAbGroup::zero(),
        FGAbGroup::cyclic(2),
        FGAbGroup::cyclic(3),
        FGAbGroup::cyclic(4),
        FGAbGroup::from_invariant_factors(&[BigInt::from(2), BigInt::from(2)]),
    ]
}

fn endomorphisms(g: &FGAbGroup) -> Vec<AbHom> {
    let k = g.ngens();
    let bound: i64 = g.order().and_then(|o| i64::try_from(o).ok()).unwrap_or(1).max(1);
    let mut out: Vec<AbHom> = Vec::new();
    let mut entries = vec![0i64; k * k];
    loop {
        if let Ok(h) = AbHom::new(g.clone(), g.clone(), IntMatrix::from_i64(k, k, &entries)) {
            if !out.iter().any(|e| e.equals(&h)) {
                out.push(h);
            }
        }
        let mut i = entries.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            entries[i] += 1;
            if entries[i] < bound {
                break;
            }
            entries[i] = 0;
        }
    }
}

/// Up to `cap` actions `ρ: M -> End(G)` of the monoid on `G`.
fn actions(m: &FinCommMonoid, g: &FGAbGroup, cap: usize) -> Vec<Vec<AbHom>> {
    let ends = endomorphisms(g);
    let index = |h: &AbHom| ends.iter().position(|e| e.equals(h)).expect("End(G) is closed");
    let id = index(&AbHom::identity(g));
    let table: Vec<Vec<usize>> = ends
        .iter()
        .map(|a| ends.iter().map(|b| index(&a.compose(b).expect("same group"))).collect())
        .collect();
    let others: Vec<usize> = (0..m.len()).filter(|&x| x != m.unit()).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; others.len()];
    loop {
        let mut rho = vec![id; m.len()];
        for (&x, &i) in others.iter().zip(&idx) {
            rho[x] = i;
        }
        if m.products().all(|(x, y, xy)| table[rho[x]][rho[y]] == rho[xy]) {
            out.push(rho.iter().map(|&i| ends[i].clone()).collect());
            if out.len() == cap {
                return out;
            }
        }
        let mut k = idx.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < ends.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// `Ω_M / n·Ω_M` with the transitions of `Ω_M`, on canonical fiber presentations.
fn omega_mod(m: &FinCommMonoid, n: i64) -> Result<MonBeckModule> {
    let omega = MonoidContext.omega(m)?.omega;
    let raw = omega
        .fibers()
        .iter()
        .map(|f| {
            let k = f.ngens();
            let scaled = IntMatrix::diagonal(&vec![BigInt::from(n); k]);
            FGAbGroup::new(k, f.relations().hcat(&scaled)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let canon: Vec<_> = raw.iter().map(FGAbGroup::canonicalize).collect();
    let mut matrices = vec![vec![None; m.len()]; m.len()];
    for (x, y, xy) in m.products() {
        let h = AbHom::new(raw[y].clone(), raw[xy].clone(), omega.h(x, y).matrix().clone())?;
        matrices[x][y] = Some(canon[xy].1.compose(&h.compose(&canon[y].2)?)?.matrix().clone());
    }
    let fibers = canon.into_iter().map(|c| c.0).collect();
    MonBeckModule::new(m.clone(), fibers, matrices)
}

fn small_fibers(fibers: &[FGAbGroup]) -> bool {
    fibers.iter().all(|f| f.order().is_some_and(|o| o <= BigInt::from(4)))
}

fn monoid_test_modules(m: &FinCommMonoid) -> Vec<(String, MonBeckModule)> {
    let mut out = vec![("0".to_string(), MonBeckModule::zero(m))];
    for g in small_groups().iter().filter(|g| !g.is_trivial()) {
        for (i, rho) in actions(m, g, 6).into_iter().enumerate() {
            let mats: Vec<IntMatrix> = rho.iter().map(|h| h.matrix().clone()).collect();
            if let Ok(module) = MonBeckModule::constant(m, g, &mats) {
                out.push((format!("constant {g} #{i}"), module));
            }
        }
    }
    for n in [2, 3] {
        if let Ok(module) = omega_mod(m, n) {
            if small_fibers(module.fibers()) {
                out.push((format!("Omega/{n}"), module));
            }
        }
    }
    out
}

fn representability(_: u64, t: &mut Tally) {
    let groups = small_groups();
    let mut set_modules = 0;
    for n in 0..=3usize {
        let x = FinSet::range(n);
        let Some(omega) = t.ok(SetContext.omega(&x), || format!("omega of {n}")) else { continue };
        for code in 0..groups.len().pow(n as u32) {
            let fibers: Vec<FGAbGroup> = (0..n)
                .map(|i| groups[code / groups.len().pow(i as u32) % groups.len()].clone())
                .collect();
            let what = || format!("set {n}, fibers {fibers:?}");
            let Some(b) = t.ok(SetBeckModule::new(x.clone(), fibers.clone()), what) else { continue };
            set_modules += 1;
            let (Some(der), Some(hom), Some(brute)) = (
                t.ok(SetContext.derivations(&x, &b), what),
                t.ok(SetContext.hom_group(&omega.omega, &b), what),
                t.ok(oracle::set_derivation_profile(&b), what),
            ) else {
                continue;
            };
            compare_groups(t, &der.group, &hom.group, &brute, &what());
        }
    }
    let mut monoid_modules = 0;
    for (name, m) in monoid::catalog() {
        let Some(omega) = t.ok(MonoidContext.omega(&m), || format!("omega of {name}")) else { continue };
        for (mname, a) in monoid_test_modules(&m) {
            let what = || format!("monoid {name}, module {mname}");
            monoid_modules += 1;
            let (Some(der), Some(hom), Some(brute)) = (
                t.ok(MonoidContext.derivations(&m, &a), what),
                t.ok(MonoidContext.hom_group(&omega.omega, &a), what),
                t.ok(oracle::monoid_derivation_profile(&a), what),
            ) else {
                continue;
            };
            compare_groups(t, &der.group, &hom.group, &brute, &what());
        }
    }
    let mut ring_pairs = 0;
    for (name, a) in catalog::finite() {
        let Some(modules) = t.ok(oracle::ring_test_modules(&a), || name.into()) else { continue };
        for (mname, m) in modules {
            ring_pairs += 1;
            let what = || format!("{name}, module {mname}");
            let leibniz = oracle::leibniz_derivation_dimension(&a, &m);
            let (Some(hom), Some(der)) = (
                t.ok(hom_from_omega_dimension(&a, &m), what),
                t.ok(RingContext.derivations(&a, &m), what),
            ) else {
                continue;
            };
            t.check(leibniz.is_some() && leibniz == hom && hom == der.dimension(), || {
                format!("{}: Leibniz {leibniz:?}, Hom {hom:?}, Der {:?}", what(), der.dimension())
            });
        }
    }
    t.note(format!("{set_modules} set modules, {monoid_modules} monoid modules, {ring_pairs} ring pairs"));
}

fn compare_groups(
    t: &mut Tally,
    der: &FGAbGroup,
    hom: &FGAbGroup,
    brute: &std::collections::BTreeMap<u64, u64>,
    what: &str,
) {
    t.check(der.is_isomorphic(hom), || format!("{what}: Der {der} vs Hom {hom}"));
    let expected = oracle::order_profile(hom.invariant_factors());
    t.check(expected.as_ref() == Some(brute), || {
        format!("{what}: enumeration {brute:?} vs Hom {hom}")
    });
}

fn smith_checks(m: &IntMatrix) -> std::result::Result<(), String> {
    let f = smith_normal_form(m);
    if (&(&f.u * m) * &f.v) != f.s {
        return Err("U·M·V ≠ S".into());
    }
    let unimodular = |a: &IntMatrix, inv: &IntMatrix| {
        (a * inv).is_identity()
            && (inv * a).is_identity()
            && a.determinant().is_ok_and(|d| d.abs().is_one())
    };
    if !unimodular(&f.u, &f.u_inv) || !unimodular(&f.v, &f.v_inv) {
        return Err("transform not unimodular".into());
    }
    let mut prev = BigInt::one();
    for i in 0..f.s.rows() {
        for j in 0..f.s.cols() {
            let e = &f.s[(i, j)];
            if i != j && !e.is_zero() {
                return Err(format!("off-diagonal entry at ({i}, {j})"));
            }
        }
        if i < f.s.cols() {
            let d = &f.s[(i, i)];
            let nonzero = i < f.rank;
            if nonzero != !d.is_zero() || d.is_negative() {
                return Err(format!("diagonal entry {d} at {i} with rank {}", f.rank));
            }
            if nonzero {
                if !(d % &prev).is_zero() {
                    return Err(format!("{prev} does not divide {d}"));
                }
                prev = d.clone();
            }
        }
    }
    Ok(())
}

pub const SMITH_SAMPLES: usize = 1000;
pub const SEQUENCE_SAMPLES: usize = 250;

fn smith_and_hom_oracle(seed: u64, t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SMITH_SAMPLES {
        let (rows, cols) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let entries: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-20..=20)).collect();
        let m = IntMatrix::from_i64(rows, cols, &entries);
        let r = smith_checks(&m);
        t.check(r.is_ok(), || format!("{m}: {}", r.unwrap_err()));
    }
    let mut exact = 0;
    for _ in 0..SEQUENCE_SAMPLES {
        let (r, s) = oracle::random_sequence(&mut rng);
        let Some(v) = t.ok(check_right_exact(&r, &s), || "sequence".into()) else { continue };
        let by_oracle = oracle::hom_exact(&r, &s);
        exact += usize::from(v.exact);
        t.check(v.exact == by_oracle, || {
            format!("{} -> {} -> {}: checker {}, oracle {by_oracle}", r.source(), r.target(), s.target(), v.exact)
        });
    }
    t.note(format!("{SMITH_SAMPLES} matrices, {SEQUENCE_SAMPLES} sequences ({exact} exact)"));
}

/// Labeled abelian group structures on an `n`-element set, `n = 1..=5`.
pub const GROUP_OBJECT_COUNTS: [u64; 5] = [1, 2, 3, 16, 30];

fn fibered_map(sizes: &[usize]) -> Result<SetMap> {
    let images: Vec<usize> = sizes.iter().enumerate().flat_map(|(x, &k)| vec![x; k]).collect();
    SetMap::new(FinSet::range(images.len()), FinSet::range(sizes.len()), images)
}

fn group_objects(_: u64, t: &mut Tally) {
    for (i, &expected) in GROUP_OBJECT_COUNTS.iter().enumerate() {
        let n = i + 1;
        let closed = labeled_abelian_group_count(n as u64);
        t.check(closed == BigInt::from(expected), || format!("closed form at {n}: {closed}"));
        let Some(u) = t.ok(fibered_map(&[n]), || format!("fiber {n}")) else { continue };
        if let Some(e) = t.ok(enumerate_group_objects(&u), || format!("fiber {n}")) {
            t.check(e.count() == BigInt::from(expected), || format!("enumerated at {n}: {}", e.count()));
        }
    }
    let bases: [&[usize]; 7] = [&[1, 1], &[2, 2], &[2, 3], &[1, 2, 3], &[4, 1], &[3, 4], &[2, 0]];
    for sizes in bases {
        let Some(u) = t.ok(fibered_map(sizes), || format!("{sizes:?}")) else { continue };
        let product: BigInt = sizes.iter().map(|&k| labeled_abelian_group_count(k as u64)).product();
        if let Some(e) = t.ok(enumerate_group_objects(&u), || format!("{sizes:?}")) {
            t.check(e.count() == product, || format!("{sizes:?}: {} vs {product}", e.count()));
        }
    }
}

fn ring_classics(_: u64, t: &mut Tally) {
    if let Some(o) = t.ok(kaehler(&catalog::dual_numbers()), || "kaehler".into()) {
        t.check(o.dimension() == Some(1), || format!("dim Ω = {:?}", o.dimension()));
    }
    let cusp = AlgebraHom::from_strs(&catalog::line(), &catalog::cusp(), &["x"]);
    if let Some(f) = t.ok(cusp, || "cusp hom".into()) {
        if let Some(rel) = t.ok(RingContext.omega_rel(&f), || "omega_rel".into()) {
            let d = rel.omega.describe();
            t.check(d == "gens dy; rel 2y*dy", || format!("omega_rel of the cusp: {d}"));
        }
    }
    let modules = [
        FPModule::free_rank(&catalog::line(), 2),
        kaehler(&catalog::cusp()),
        kaehler(&catalog::dual_numbers()),
        FPModule::new(catalog::dual_numbers(), vec!["e1".into()], vec![vec![catalog::dual_numbers().var(0)]]),
    ];
    for m in modules {
        let Some(m) = t.ok(m, || "square-zero module".into()) else { continue };
        let what = || m.describe();
        let Some(s) = t.ok(SquareZeroExtension::new(&m), what) else { continue };
        let Some(law) = t.ok(s.group_law(), what) else { continue };
        if let Some(bad) = t.ok(s.check_addition(&law), what) {
            t.check(bad.is_none(), || format!("{}: {bad:?}", what()));
        }
    }
    // A[eps]/(eps^3) over A is not square zero; its law must be refused.
    let refused = (|| -> Result<bool> {
        let a = catalog::line();
        let b = FPAlgebra::from_strs(Field::Rational, &["x", "eps"], &["eps^3"])?;
        let u = AlgebraHom::from_strs(&b, &a, &["x", "0"])?;
        let e = AlgebraHom::from_strs(&a, &b, &["x"])?;
        Ok(matches!(reconstruct_group_law(&b, &u, &e), Err(Error::AxiomViolation { .. })))
    })();
    if let Some(r) = t.ok(refused, || "cube-zero control".into()) {
        t.check(r, || "cube-zero extension accepted as a group object".into());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filters() {
        assert!(CRITERIA[1].matches("monoid"));
        assert!(CRITERIA[6].matches("7"));
        assert!(!CRITERIA[0].matches("ring"));
        assert!(is_valid_filter("abgrp"));
        assert!(!is_valid_filter("vector"));
    }

    #[test]
    fn endomorphism_counts() {
        assert_eq!(endomorphisms(&FGAbGroup::cyclic(4)).len(), 4);
        assert_eq!(endomorphisms(&small_groups()[4]).len(), 16);
    }

    #[test]
    fn smith_check_catches_nothing_on_identity() {
        assert_eq!(smith_checks(&IntMatrix::identity(3)), Ok(()));
    }
}
