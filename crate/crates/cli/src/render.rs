//! Text and JSON renderings of presentations and verdicts.

use cotangent_core::beck::{CotangentData, EpiVerdict, FailedAt, IsoVerdict, Section, SequenceVerdict};
use cotangent_core::io;
use cotangent_core::monoid::{MonBeckModule, NatOmega};
use cotangent_core::ring::{FPModule, RingDerivation};
use cotangent_core::set::{EnsVerdict, SetBeckModule, SetMap};
use cotangent_core::suite::{self, CriterionReport};
use serde_json::{json, Value};

use crate::ints;

pub struct Report {
    /// Whether the checked statement holds; presentations always hold.
    pub holds: bool,
    pub text: String,
    pub json: Value,
}

fn show_vec(v: &[num_bigint::BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn section_text(labels: &[String], s: &Section) -> String {
    labels
        .iter()
        .zip(s)
        .map(|(l, v)| format!("{l} -> {}", show_vec(v)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn section_json(s: &Section) -> Value {
    Value::Array(s.iter().map(|v| ints(v)).collect())
}

pub fn set_omega(kind: &str, d: &CotangentData<SetBeckModule, Section>) -> Report {
    let labels = d.omega.base().elements();
    Report {
        holds: true,
        text: format!("{}\nunit: {}\n", d.omega.describe(), section_text(labels, &d.unit)),
        json: json!({
            "context": "set",
            "kind": kind,
            "module": io::set_module_to_json(&d.omega),
            "unit": section_json(&d.unit),
        }),
    }
}

pub fn monoid_omega(kind: &str, d: &CotangentData<MonBeckModule, Section>, nat: Option<&NatOmega>) -> Report {
    let labels = d.omega.base().labels();
    let mut text = format!("{}\nunit: {}\n", d.omega.describe(), section_text(labels, &d.unit));
    let mut out = json!({
        "context": "monoid",
        "kind": kind,
        "module": io::monoid_module_to_json(&d.omega),
        "unit": section_json(&d.unit),
    });
    if let Some(n) = nat {
        let multiples: Vec<String> = n.unit_multiples.iter().map(ToString::to_string).collect();
        text.push_str(&format!(
            "oriented unit multiples: {}\npositive transitions identity: {}\n",
            multiples.join(" "),
            n.matches_expected()
        ));
        out["nat"] = json!({
            "bound": n.bound,
            "fibers": n.fibers.iter().map(|f| ints(f)).collect::<Vec<_>>(),
            "unit_multiples": ints(&n.unit_multiples),
            "matches_expected": n.matches_expected(),
        });
    }
    Report { holds: true, text, json: out }
}

pub fn ring_omega(kind: &str, d: &CotangentData<FPModule, RingDerivation>) -> Report {
    let vars = d.omega.algebra().vars();
    let unit: Vec<String> = d.unit.values.iter().map(|v| d.omega.format_vec(v)).collect();
    let shown: Vec<String> = vars.iter().zip(&unit).map(|(x, v)| format!("d({x}) = {v}")).collect();
    Report {
        holds: true,
        text: format!("{}\nunit: {}\n", d.omega.describe(), shown.join(", ")),
        json: json!({
            "context": "ring",
            "kind": kind,
            "module": io::fpmodule_to_json(&d.omega),
            "unit": unit,
        }),
    }
}

fn verdict(check: &str, context: &str, holds: bool, text: String, detail: Value) -> Report {
    Report {
        holds,
        text,
        json: json!({ "check": check, "context": context, "holds": holds, "verdict": detail }),
    }
}

pub fn sequence(check: &str, context: &str, v: &SequenceVerdict) -> Report {
    let text = if v.exact {
        "EXACT\n".to_string()
    } else {
        let at = match v.failed_at {
            Some(FailedAt::CompositeNonzero) => "composite is nonzero",
            Some(FailedAt::NotEpi) => "second map is not an epimorphism",
            Some(FailedAt::InducedNotIso) => "induced map from the cokernel is not an isomorphism",
            None => "unspecified",
        };
        let mut where_ = Vec::new();
        if let Some(w) = &v.witness {
            if let Some(f) = &w.fiber {
                where_.push(format!("fiber {f}"));
            }
            if let Some(g) = w.generator {
                where_.push(format!("generator {g}"));
            }
            if let Some(d) = &w.detail {
                where_.push(d.clone());
            }
        }
        format!("NOT EXACT: {at} ({})\n", where_.join("; "))
    };
    verdict(check, context, v.exact, text, serde_json::to_value(v).expect("JSON"))
}

pub fn epi(check: &str, context: &str, v: &EpiVerdict) -> Report {
    let text = match (v.epi, v.iso) {
        (true, true) => "EPI (iso)\n",
        (true, false) => "EPI\n",
        _ => "NOT EPI\n",
    };
    verdict(check, context, v.epi, text.into(), serde_json::to_value(v).expect("JSON"))
}

pub fn iso(check: &str, context: &str, v: &IsoVerdict) -> Report {
    let text = if v.iso {
        "ISO\n".to_string()
    } else {
        format!("NOT ISO (left inverse: {}, right inverse: {})\n", v.left_inverse, v.right_inverse)
    };
    verdict(check, context, v.iso, text, serde_json::to_value(v).expect("JSON"))
}

pub fn ens_single(check: &str, f: &SetMap, v: &EnsVerdict) -> Report {
    let text = format!(
        "surjective: {}, delta epi: {}\ninjective: {}, delta mono: {}\n{}\n",
        v.surjective,
        v.delta_epi,
        v.injective,
        v.delta_mono,
        if v.consistent() { "CONSISTENT" } else { "INCONSISTENT" }
    );
    let mut r = verdict(check, "set", v.consistent(), text, serde_json::to_value(v).expect("JSON"));
    r.json["map"] = io::map_to_json(f);
    r
}

pub fn ens_exhaustive(check: &str, n: usize, total: u64, bad: &[(SetMap, EnsVerdict)]) -> Report {
    let mut text = if bad.is_empty() {
        format!("OK: {total} maps verified (sets of size at most {n})\n")
    } else {
        format!("FAIL: {} of {total} maps inconsistent\n", bad.len())
    };
    for (f, v) in bad.iter().take(10) {
        text.push_str(&format!("    {:?} -> {}: {v:?}\n", f.images(), f.target().len()));
    }
    let detail = json!({
        "max_size": n,
        "maps": total,
        "inconsistent": bad.iter().map(|(f, _)| io::map_to_json(f)).collect::<Vec<_>>(),
    });
    verdict(check, "set", bad.is_empty(), text, detail)
}

pub fn nat_omega(check: &str, at: &NatOmega, next: &NatOmega) -> Report {
    let expected = at.matches_expected();
    let stable = next.matches_expected() && next.agrees_with(at);
    let holds = expected && stable;
    let text = if holds {
        format!(
            "OK: fiber 0 is 0, fibers 1..{} are Z, unit eta_n = n*g_n, positive transitions identity, stable at bound {}\n",
            at.bound, next.bound
        )
    } else {
        format!("FAIL: expected shape {expected}, stable at bound {}: {stable}\n", next.bound)
    };
    let detail = json!({
        "bound": at.bound,
        "matches_expected": expected,
        "stable": stable,
        "fibers": at.fibers.iter().map(|f| ints(f)).collect::<Vec<_>>(),
        "unit_multiples": ints(&at.unit_multiples),
    });
    verdict(check, "monoid", holds, text, detail)
}

pub fn suite(seed: u64, reports: &[CriterionReport]) -> Report {
    let failed: Vec<u32> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    let mut text = suite::render_text(reports);
    text.push_str(&if failed.is_empty() {
        let noun = if reports.len() == 1 { "criterion" } else { "criteria" };
        format!("ALL PASS ({} {noun}, seed {seed})\n", reports.len())
    } else {
        format!("FAILED criteria: {failed:?} (seed {seed})\n")
    });
    Report {
        holds: failed.is_empty(),
        text,
        json: json!({
            "seed": seed,
            "passed": failed.is_empty(),
            "criteria": serde_json::to_value(reports).expect("JSON"),
        }),
    }
}
