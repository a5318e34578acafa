//! Canonical JSON: object keys sorted, floats with 17 significant digits, rationals as
//! `"num/den"` strings. Also the on-disk schema for [`ConeSystem`] and encoders for reports.

use std::fmt::Write;

use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::apqcone::{ApqInequality, AuditReport};
use crate::combinat::IndexSubset;
use crate::horncone::{Certificate, HornTriple, MembershipVerdict};
use crate::numerics::SampleReport;
use crate::polyhedra::rational::{format_rational, parse_rational, Rational};
use crate::polyhedra::{
    ConeComparison, FarkasCertificate, Implication, Layout, LinearForm, PruneReport, Side, Source,
    WitnessRay,
};
use crate::{Error, Result};

/// Serializes `value` compactly with sorted keys and 17-significant-digit floats.
pub fn to_canonical_string(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value);
    out
}

fn write_value(out: &mut String, value: &Value) {
    match value {
        Value::Null | Value::Bool(_) | Value::String(_) => {
            out.push_str(&value.to_string());
        }
        Value::Number(n) => {
            if n.is_f64() {
                let x = n.as_f64().unwrap_or(f64::NAN);
                let _ = write!(out, "{x:.16e}");
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(out, item);
            }
            out.push(']');
        }
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, key) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(key.clone()).to_string());
                out.push(':');
                write_value(out, &map[key]);
            }
            out.push('}');
        }
    }
}

pub fn rational(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

/// Non-finite floats have no JSON number form and are written as strings.
pub fn float(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x > 0.0 {
        json!("+inf")
    } else if x < 0.0 {
        json!("-inf")
    } else {
        json!("nan")
    }
}

fn layout_json(layout: Layout) -> Value {
    match layout {
        Layout::LambdaS { n, q } => json!(["lambda", n, "s", q]),
        Layout::Xyz { n } => json!(["x", n, "y", n, "z", n]),
        Layout::Plain { dim } => json!(["v", dim]),
    }
}

fn parse_layout(v: &Value, dim: usize) -> Result<Layout> {
    let items = match v {
        Value::Null => return Ok(Layout::Plain { dim }),
        Value::Array(items) => items,
        _ => return Err(Error::Parse("layout must be an array".into())),
    };
    let name = |i: usize| items.get(i).and_then(Value::as_str);
    let size = |i: usize| items.get(i).and_then(Value::as_u64).map(|v| v as usize);
    let layout = match (name(0), items.len()) {
        (Some("lambda"), 4) if name(2) == Some("s") => Layout::LambdaS {
            n: size(1).ok_or_else(|| Error::Parse("bad lambda size".into()))?,
            q: size(3).ok_or_else(|| Error::Parse("bad s size".into()))?,
        },
        (Some("x"), 6) => Layout::Xyz {
            n: size(1).ok_or_else(|| Error::Parse("bad x size".into()))?,
        },
        (Some("v"), 2) => Layout::Plain {
            dim: size(1).ok_or_else(|| Error::Parse("bad dimension".into()))?,
        },
        _ => return Err(Error::Parse(format!("unrecognised layout {v}"))),
    };
    Error::check_dim(dim, layout.dim())?;
    Ok(layout)
}

pub fn form_to_json(form: &LinearForm, layout: Layout) -> Value {
    let mut obj = Map::new();
    obj.insert("source".into(), json!(form.source.as_str()));
    obj.insert("label".into(), json!(form.label));
    obj.insert("coeffs".into(), rationals(&form.coeffs));
    let t = form.triple.as_ref();
    obj.insert("n".into(), json!(t.map(HornTriple::n)));
    obj.insert("r".into(), json!(t.map(HornTriple::r)));
    obj.insert("I".into(), json!(t.map(|t| t.i().to_json())));
    obj.insert("J".into(), json!(t.map(|t| t.j().to_json())));
    obj.insert("K".into(), json!(t.map(|t| t.k().to_json())));
    if let Layout::LambdaS { n, .. } = layout {
        let ints: Option<Vec<i64>> = form
            .coeffs
            .iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect();
        if let Some(ints) = ints {
            obj.insert("lambda_coeffs".into(), json!(ints[..n]));
            obj.insert("s_coeffs".into(), json!(ints[n..]));
        }
    }
    Value::Object(obj)
}

pub fn system_to_json(system: &crate::polyhedra::ConeSystem) -> Value {
    json!({
        "dim": system.dim(),
        "layout": layout_json(system.layout),
        "forms": system.forms.iter().map(|f| form_to_json(f, system.layout)).collect::<Vec<_>>(),
        "equalities": system.equalities.iter().map(|f| form_to_json(f, system.layout)).collect::<Vec<_>>(),
    })
}

fn parse_subset(n: usize, v: &Value) -> Result<IndexSubset> {
    let elems = v
        .as_array()
        .ok_or_else(|| Error::Parse("index set must be an array".into()))?
        .iter()
        .map(|e| {
            e.as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| Error::Parse(format!("bad index {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    IndexSubset::new(n, elems)
}

fn parse_coeff(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => {
            Ok(crate::polyhedra::rational::int(n.as_i64().unwrap_or(0)))
        }
        other => Err(Error::Parse(format!("coefficient {other} is not exact"))),
    }
}

pub fn form_from_json(v: &Value, dim: usize) -> Result<LinearForm> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("form must be an object".into()))?;
    let coeffs: Vec<Rational> = match obj.get("coeffs") {
        Some(Value::Array(items)) => items.iter().map(parse_coeff).collect::<Result<_>>()?,
        _ => {
            let part = |key: &str| -> Result<Vec<Rational>> {
                obj.get(key)
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Parse(format!("form lacks coeffs and {key}")))?
                    .iter()
                    .map(parse_coeff)
                    .collect()
            };
            let mut all = part("lambda_coeffs")?;
            all.extend(part("s_coeffs")?);
            all
        }
    };
    Error::check_dim(dim, coeffs.len())?;
    let source = match obj.get("source").and_then(Value::as_str) {
        Some(s) => Source::parse(s)?,
        None => Source::Custom,
    };
    let label = obj
        .get("label")
        .and_then(Value::as_str)
        .unwrap_or_default()
        .to_string();
    let mut form = LinearForm::new(coeffs, label).with_source(source);
    if let (Some(n), Some(i), Some(j), Some(k)) = (
        obj.get("n").and_then(Value::as_u64),
        obj.get("I").filter(|v| !v.is_null()),
        obj.get("J").filter(|v| !v.is_null()),
        obj.get("K").filter(|v| !v.is_null()),
    ) {
        let n = n as usize;
        form = form.with_triple(HornTriple::new(
            parse_subset(n, i)?,
            parse_subset(n, j)?,
            parse_subset(n, k)?,
        )?);
    }
    Ok(form)
}

pub fn system_from_json(v: &Value) -> Result<crate::polyhedra::ConeSystem> {
    let dim = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("system lacks dim".into()))? as usize;
    let layout = parse_layout(v.get("layout").unwrap_or(&Value::Null), dim)?;
    let mut system = crate::polyhedra::ConeSystem::new(layout);
    let list = |key: &str| -> Result<Vec<LinearForm>> {
        match v.get(key) {
            None | Some(Value::Null) => Ok(Vec::new()),
            Some(Value::Array(items)) => items.iter().map(|f| form_from_json(f, dim)).collect(),
            Some(_) => Err(Error::Parse(format!("{key} must be an array"))),
        }
    };
    for f in list("forms")? {
        system.push_form(f)?;
    }
    for e in list("equalities")? {
        system.push_equality(e)?;
    }
    Ok(system)
}

pub fn verdict_to_json(v: &MembershipVerdict) -> Value {
    let certificate = match &v.certificate {
        Certificate::Member => json!({ "kind": "member" }),
        Certificate::EqualityFailure { lhs, rhs } => json!({
            "kind": "equality-failure",
            "lhs": rational(lhs),
            "rhs": rational(rhs),
        }),
        Certificate::Violation { triple, lhs, rhs } => json!({
            "kind": "violation",
            "triple": triple.to_json(),
            "lhs": rational(lhs),
            "rhs": rational(rhs),
        }),
    };
    json!({ "member": v.member, "certificate": certificate })
}

pub fn farkas_to_json(c: &FarkasCertificate) -> Value {
    let pairs = |v: &[(usize, Rational)]| -> Value {
        Value::Array(v.iter().map(|(i, m)| json!([i, rational(m)])).collect())
    };
    json!({
        "form_multipliers": pairs(&c.form_multipliers),
        "equality_multipliers": pairs(&c.equality_multipliers),
    })
}

pub fn witness_to_json(w: &WitnessRay) -> Value {
    rationals(&w.0)
}

pub fn implication_to_json(imp: &Implication) -> Value {
    match imp {
        Implication::Implied(c) => json!({ "implied": true, "certificate": farkas_to_json(c) }),
        Implication::NotImplied(w) => json!({ "implied": false, "witness": witness_to_json(w) }),
    }
}

pub fn comparison_to_json(cmp: &ConeComparison) -> Value {
    let side = |s: Side| if s == Side::A { "a" } else { "b" };
    let checks: Vec<Value> = cmp
        .checks
        .iter()
        .map(|c| {
            json!({
                "side": side(c.side),
                "index": c.index,
                "equality": c.equality,
                "outcome": c.outcome.iter().map(implication_to_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    let witness = cmp.witness().map(|(c, w)| {
        json!({
            "side": side(c.side),
            "index": c.index,
            "equality": c.equality,
            "ray": witness_to_json(w),
        })
    });
    json!({ "equal": cmp.equal, "checks": checks, "witness": witness })
}

pub fn prune_summary_to_json(input_forms: usize, report: &PruneReport) -> Value {
    json!({
        "input_forms": input_forms,
        "kept_forms": report.system.forms.len(),
        "kept_nontrivial": report.kept_nontrivial(),
        "kept_background": report.kept_background(),
        "removed": report.removed.iter().map(|(i, c)| json!({
            "index": i,
            "certificate": farkas_to_json(c),
        })).collect::<Vec<_>>(),
    })
}

pub fn sample_report_to_json(r: &SampleReport) -> Value {
    json!({
        "count": r.count,
        "seed": r.seed,
        "min_slack": float(r.min_slack),
        "violations": r.violations.iter().map(|v| json!({
            "sample": v.sample,
            "label": v.label,
            "slack": float(v.slack),
        })).collect::<Vec<_>>(),
    })
}

fn inequality_json(ineq: &ApqInequality) -> Value {
    let mut v = ineq.to_json();
    v["text"] = json!(ineq.describe());
    v
}

pub fn audit_to_json(report: &AuditReport) -> Value {
    let disputed: Vec<Value> = report
        .disputed
        .iter()
        .map(|d| {
            json!({
                "triple": d.triple.to_json(),
                "mu": [
                    d.partitions.0.parts(),
                    d.partitions.1.parts(),
                    d.partitions.2.parts(),
                ],
                "member": d.in_lr,
                "horn_verdict": verdict_to_json(&d.horn_verdict),
                "inequality": inequality_json(&d.inequality),
                "slack": rational(&d.slack),
            })
        })
        .collect();
    let slacks: Vec<Value> = report
        .counterexample_slacks
        .iter()
        .zip(&report.inequalities)
        .map(|((label, slack), ineq)| {
            json!({ "id": label, "slack": rational(slack), "inequality": inequality_json(ineq) })
        })
        .collect();
    let c = &report.conclusion;
    json!({
        "point": report.point.to_json(),
        "disputed_triples": disputed,
        "counterexample_slacks": slacks,
        "point_verdict": verdict_to_json(&report.point_verdict),
        "conclusion": {
            "disputed_triples_in_lr": c.disputed_triples_in_lr,
            "disputed_inequalities_satisfied": c.disputed_inequalities_satisfied,
            "point_violates_a_disputed_inequality": c.point_violates_a_disputed_inequality,
            "point_satisfies_all_fflp": c.point_satisfies_all_fflp,
            "point_in_cone": c.point_in_cone,
            "violation_refutes_membership": c.violation_refutes_membership,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apqcone::{apq_system, Variant};
    use crate::horncone::horn_inequality_forms;
    use crate::polyhedra::rational::frac;
    use crate::polyhedra::ConeSystem;

    #[test]
    fn canonical_output() {
        let v = json!({ "b": 1, "a": [0.1, "x"], "c": { "z": null, "y": true } });
        assert_eq!(
            to_canonical_string(&v),
            r#"{"a":[1.0000000000000001e-1,"x"],"b":1,"c":{"y":true,"z":null}}"#
        );
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rational(&frac(4, 2)), json!("2/1"));
    }

    #[test]
    fn empty_system() {
        let s = ConeSystem::new(Layout::Plain { dim: 3 });
        let v = system_to_json(&s);
        assert_eq!(v["dim"], json!(3));
        assert_eq!(v["forms"], json!([]));
        assert_eq!(v["equalities"], json!([]));
    }

    #[test]
    fn triple_schema() {
        let t = HornTriple::from_elems(4, &[1, 4], &[1, 2], &[2, 3]).unwrap();
        let v = t.to_json();
        assert_eq!(v["I"], json!([1, 4]));
        assert_eq!(v["J"], json!([1, 2]));
        assert_eq!(v["K"], json!([2, 3]));
    }

    #[test]
    fn systems_round_trip() {
        for system in [
            apq_system(3, 2, Variant::Full).unwrap(),
            apq_system(2, 2, Variant::Fflp).unwrap(),
            horn_inequality_forms(3).unwrap(),
        ] {
            let text = to_canonical_string(&system_to_json(&system));
            let back = system_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back, system);
            assert_eq!(to_canonical_string(&system_to_json(&back)), text);
        }
    }

    #[test]
    fn reads_integer_coefficient_schema() {
        let v = json!({
            "dim": 3,
            "layout": ["lambda", 2, "s", 1],
            "forms": [{ "source": "custom", "lambda_coeffs": [1, -1], "s_coeffs": [-2] }],
        });
        let s = system_from_json(&v).unwrap();
        assert_eq!(
            s.forms[0].coeffs,
            vec![frac(1, 1), frac(-1, 1), frac(-2, 1)]
        );
        assert!(system_from_json(&json!({ "dim": 2, "layout": ["lambda", 2, "s", 1] })).is_err());
        assert!(system_from_json(&json!({ "dim": 1, "forms": [{ "coeffs": [0.5] }] })).is_err());
    }

    #[test]
    fn non_finite_floats() {
        assert_eq!(float(f64::INFINITY), json!("+inf"));
        assert_eq!(to_canonical_string(&float(2.0)), "2.0000000000000000e0");
    }
}
