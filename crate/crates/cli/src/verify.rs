//! Reference checks: known widths, covering numbers, diagonal diameters and
//! character-theoretic counts, each recomputed from scratch.

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use orbwidth::characters::{dixon_table, frobenius_count, structure_count_vector, DEFAULT_TABLE_CAP};
use orbwidth::constructions::{make_psl3, nu, nu_ratio_bound, singer_matrix, transvection, FiniteField, GroupSpec};
use orbwidth::diagonal::{
    bound_certificate, make_geometry, orbdiam, suborbits, widths_for, GeometryOptions, Variant,
};
use orbwidth::group::EnumeratedGroup;
use orbwidth::widths::{
    group_widths, noncommuting_conjugate, strongly_real_test, three_l_cycles_test, AutomorphismSet,
    WidthMaxima, DEFAULT_CN_CAP,
};
use orbwidth::Result;

use crate::commands::Context;
use crate::output::{Report, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Widths,
    Covering,
    Real,
    Lcycles,
    Characters,
    Diagonal,
    Nu,
    Involutions,
    All,
}

impl Suite {
    const EACH: [Suite; 8] = [
        Suite::Widths,
        Suite::Covering,
        Suite::Real,
        Suite::Lcycles,
        Suite::Characters,
        Suite::Diagonal,
        Suite::Nu,
        Suite::Involutions,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Widths => "widths",
            Suite::Covering => "covering",
            Suite::Real => "real",
            Suite::Lcycles => "lcycles",
            Suite::Characters => "characters",
            Suite::Diagonal => "diagonal",
            Suite::Nu => "nu",
            Suite::Involutions => "involutions",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub claim: String,
    pub expected: Value,
    pub computed: Value,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

/// A pending check: the comparison runs when the suite reaches it.
struct Pending {
    id: String,
    claim: String,
    expected: Value,
    compute: Box<dyn Fn() -> Result<Value>>,
    accept: fn(&Value, &Value) -> bool,
}

fn equal(expected: &Value, computed: &Value) -> bool {
    expected == computed
}

fn pending(id: impl Into<String>, claim: impl Into<String>, expected: Value, compute: impl Fn() -> Result<Value> + 'static) -> Pending {
    Pending {
        id: id.into(),
        claim: claim.into(),
        expected,
        compute: Box::new(compute),
        accept: equal,
    }
}

fn build(spec: &str) -> Result<orbwidth::constructions::Construction> {
    spec.parse::<GroupSpec>()?.build(orbwidth::group::DEFAULT_ORDER_CAP)
}

fn full_auts(c: &orbwidth::constructions::Construction) -> Result<AutomorphismSet> {
    AutomorphismSet::new(&c.group, &c.automorphisms)
}

fn maxima(spec: &str) -> Result<WidthMaxima> {
    let c = build(spec)?;
    let auts = full_auts(&c)?;
    Ok(group_widths(spec, &c.group, &auts, "aut", DEFAULT_CN_CAP)?.maxima)
}

fn width_checks() -> Vec<Pending> {
    let mut out = Vec::new();
    let mut add = |spec: String, c: u32, c_a: u32, claim: &str| {
        out.push(pending(
            format!("widths/{spec}"),
            claim,
            json!({"c": c, "c_i": c, "c_a": c_a}),
            move || {
                let m = maxima(&spec)?;
                Ok(json!({"c": m.c, "c_i": m.c_i, "c_a": m.c_a}))
            },
        ));
    };
    add("A5".into(), 3, 2, "c = c_i = 3 and c_A = 2 for A5");
    add("A6".into(), 3, 2, "c = c_i = 3 and c_A = 2 for A6");
    add("A7".into(), 3, 3, "c = c_i = c_A = 3 for A7");
    add("A8".into(), 4, 4, "A8 is not among the groups of width 3, and cn(A8) = 4");
    for q in [4u64, 5, 7, 8, 9, 11, 13, 16, 17, 19] {
        let square_of_two = q == 4 || q == 16;
        let c_a = if q % 4 == 1 || square_of_two { 2 } else { 3 };
        add(
            format!("PSL2({q})"),
            3,
            c_a,
            "c(PSL2(q)) = 3; c_A = 2 exactly when q = 1 mod 4 or q is an even power of 2",
        );
    }
    for q in [2u64, 3, 4] {
        add(format!("PSL3({q})"), 3, 3, "c = c_i = c_A = 3 for PSL3(q)");
    }
    out
}

fn covering_checks() -> Vec<Pending> {
    let mut cases: Vec<(String, u32, &str)> = vec![
        ("A5".into(), 3, "cn(A5) = 3"),
        ("A6".into(), 3, "cn(A_n) = floor(n/2) for n >= 6"),
        ("A7".into(), 3, "cn(A_n) = floor(n/2) for n >= 6"),
        ("A8".into(), 4, "cn(A_n) = floor(n/2) for n >= 6"),
    ];
    for q in [4, 5, 7, 8, 9, 11, 13] {
        cases.push((format!("PSL2({q})"), 3, "cn(PSL2(q)) = 3 for q > 3"));
    }
    cases.push(("PSL3(2)".into(), 3, "cn(PSL3(2)) = 3"));
    cases.push(("PSL3(3)".into(), 3, "cn(PSL3(3)) = 3"));
    cases.push(("PSL3(4)".into(), 3, "cn(PSL_n(q)) = n for q >= 4"));
    cases
        .into_iter()
        .map(|(spec, cn, claim)| {
            let id = format!("covering/{spec}");
            pending(id, claim, json!(cn), move || Ok(json!(maxima(&spec)?.cn)))
        })
        .collect()
}

fn real_checks() -> Vec<Pending> {
    [
        ("A5", true),
        ("A6", true),
        ("PSL2(8)", true),
        ("PSL2(9)", true),
        ("PSL2(17)", true),
        ("A7", false),
        ("A8", false),
        ("PSL2(7)", false),
        ("PSL2(11)", false),
    ]
    .into_iter()
    .map(|(spec, expected)| {
        pending(
            format!("real/{spec}"),
            "every element is a product of two involutions",
            json!(expected),
            move || Ok(json!(strongly_real_test(&build(spec)?.group))),
        )
    })
    .collect()
}

fn lcycle_checks() -> Vec<Pending> {
    let mut out = Vec::new();
    for n in 5..=9usize {
        for l in (3..=n).step_by(2) {
            let expected = 2 * l >= n || (n, l) == (7, 3);
            out.push(pending(
                format!("lcycles/A{n}/{l}"),
                "A_n is a product of three l-cycles iff l >= n/2 or (n, l) = (7, 3)",
                json!(expected),
                move || Ok(json!(three_l_cycles_test(n, l)?)),
            ));
        }
    }
    out
}

/// Tuples of classes of length at most 3 whose character count differs
/// from the direct count at some target, and the largest rounding residual.
fn count_mismatches(group: &EnumeratedGroup) -> Result<(usize, f64)> {
    let table = dixon_table::<f64>(group, DEFAULT_TABLE_CAP)?;
    let r = group.classes().len();
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    for a in 0..r {
        tuples.push(vec![a]);
        for b in 0..r {
            tuples.push(vec![a, b]);
            for c in 0..r {
                tuples.push(vec![a, b, c]);
            }
        }
    }
    let mut bad = 0;
    let mut worst: f64 = 0.0;
    for tuple in tuples {
        let direct = structure_count_vector(group, &tuple)?;
        for z in 0..group.order() {
            let f = frobenius_count(&table, &tuple, group.classes().class_of(z as u32))?;
            worst = worst.max(f.residual);
            if f.rounded as u64 != direct[z] {
                bad += 1;
            }
        }
    }
    Ok((bad, worst))
}

fn character_checks() -> Vec<Pending> {
    let mut out = Vec::new();
    for (spec, degrees) in [("A5", vec![1, 3, 3, 4, 5]), ("PSL2(7)", vec![1, 3, 3, 6, 7, 8])] {
        out.push(pending(
            format!("characters/{spec}/degrees"),
            "irreducible degrees",
            json!(degrees),
            move || Ok(json!(dixon_table::<f64>(&build(spec)?.group, DEFAULT_TABLE_CAP)?.degrees)),
        ));
        let mut check = pending(
            format!("characters/{spec}/orthogonality"),
            "row and column orthogonality residuals below 1e-8",
            json!({"below": 1e-8}),
            move || {
                let t = dixon_table::<f64>(&build(spec)?.group, DEFAULT_TABLE_CAP)?;
                let res = t.residuals();
                Ok(json!(res.rows.max(res.columns)))
            },
        );
        check.accept = below;
        out.push(check);
        out.push(pending(
            format!("characters/{spec}/counts"),
            "character sums equal direct counts for all class tuples of length <= 3, residual < 1e-4",
            json!({"mismatches": 0, "residual_below_1e-4": true}),
            move || {
                let (bad, worst) = count_mismatches(&build(spec)?.group)?;
                Ok(json!({"mismatches": bad, "residual_below_1e-4": worst < 1e-4}))
            },
        ));
    }
    out
}

fn orbdiam_of(spec: &str, k: usize, dkt: bool) -> Result<u32> {
    let c = build(spec)?;
    let variant = if dkt { Variant::DkT(full_auts(&c)?) } else { Variant::Tk };
    let geom = make_geometry(&c.group, k, variant, GeometryOptions::default())?;
    Ok(orbdiam(&geom)?.0)
}

fn below(expected: &Value, computed: &Value) -> bool {
    match (expected["below"].as_f64(), computed.as_f64()) {
        (Some(e), Some(c)) => c < e,
        _ => false,
    }
}

fn at_least(expected: &Value, computed: &Value) -> bool {
    match (expected["at_least"].as_u64(), computed.as_u64()) {
        (Some(e), Some(c)) => c >= e,
        _ => false,
    }
}

fn diagonal_checks() -> Vec<Pending> {
    let mut out = Vec::new();
    for (spec, c_i, c_a) in [("A5", 3u32, 2u32), ("PSL2(7)", 3, 3)] {
        out.push(pending(
            format!("diagonal/{spec}/Tk"),
            "orbdiam(T^2) = c_i(T)",
            json!({"orbdiam": c_i, "c_i": c_i}),
            move || {
                let m = maxima(spec)?;
                Ok(json!({"orbdiam": orbdiam_of(spec, 2, false)?, "c_i": m.c_i}))
            },
        ));
        out.push(pending(
            format!("diagonal/{spec}/DkT"),
            "orbdiam(D(2, T)) = c_A(T)",
            json!({"orbdiam": c_a, "c_a": c_a}),
            move || {
                let m = maxima(spec)?;
                Ok(json!({"orbdiam": orbdiam_of(spec, 2, true)?, "c_a": m.c_a}))
            },
        ));
    }
    for (k, name) in [(2usize, "Tk"), (2, "TkSk"), (2, "DkT"), (3, "TkSk"), (3, "DkT")] {
        out.push(pending(
            format!("diagonal/A5/sandwich/k{k}/{name}"),
            "(k-1)c_X(T,t)/2 + 1 <= diam(Gamma_0^t) <= (k-1)c_i(T), and <= 24(k-1)c_i(T)^2 for T^k.S_k",
            json!({"violations": 0, "graphs": 4}),
            move || {
                let c = build("A5")?;
                let variant = match name {
                    "Tk" => Variant::Tk,
                    "TkSk" => Variant::TkSk,
                    _ => Variant::DkT(full_auts(&c)?),
                };
                let geom = make_geometry(&c.group, k, variant, GeometryOptions::default())?;
                let subs = suborbits(&geom);
                let mut violations = 0;
                let mut graphs = 0;
                for cl in &c.group.classes().classes()[1..] {
                    let t = cl.representative;
                    graphs += 1;
                    if bound_certificate(&geom, &subs, t, widths_for(&geom, t)?).is_err() {
                        violations += 1;
                    }
                }
                Ok(json!({"violations": violations, "graphs": graphs}))
            },
        ));
    }
    let mut strict = pending(
        "diagonal/A5/D3",
        "orbdiam(T^3.X) >= k + 1 when c_A(T) = 2",
        json!({"at_least": 4}),
        || Ok(json!(orbdiam_of("A5", 3, true)?)),
    );
    strict.accept = at_least;
    out.push(strict);
    out
}

fn nu_checks() -> Vec<Pending> {
    vec![
        pending("nu/SL3(3)/transvection", "a transvection fixes a hyperplane", json!(1), || {
            Ok(json!(nu(&FiniteField::new(3)?, &transvection(3))))
        }),
        pending("nu/SL3(3)/singer", "a Singer cycle has no eigenvector", json!(3), || {
            let f = FiniteField::new(3)?;
            Ok(json!(nu(&f, &singer_matrix(&f, 3)?)))
        }),
        pending(
            "nu/PSL3(3)/bound",
            "c_X(T) >= nu(T)/nu(S), here 3/1 <= c_A(PSL3(3)) = 3",
            json!({"ratio": "3", "c_a": 3, "holds": true}),
            || {
                let f = FiniteField::new(3)?;
                let ratio = nu_ratio_bound(nu(&f, &singer_matrix(&f, 3)?) as u32, nu(&f, &transvection(3)) as u32)?;
                let c = make_psl3(3, orbwidth::group::DEFAULT_ORDER_CAP)?;
                let auts = full_auts(&c)?;
                let c_a = group_widths("PSL3(3)", &c.group, &auts, "aut", DEFAULT_CN_CAP)?.maxima.c_a;
                Ok(json!({"ratio": ratio.to_string(), "c_a": c_a, "holds": *ratio.numer() <= c_a * ratio.denom()}))
            },
        ),
    ]
}

fn involution_checks() -> Vec<Pending> {
    let mut specs: Vec<String> = (5..=8).map(|n| format!("A{n}")).collect();
    specs.extend([4, 5, 7, 8, 9, 11, 13].iter().map(|q| format!("PSL2({q})")));
    specs
        .into_iter()
        .map(|spec| {
            pending(
                format!("involutions/{spec}"),
                "every involution u has a conjugate u^x with u u^x of order > 2",
                json!({"failures": 0}),
                move || {
                    let g = build(&spec)?.group;
                    let mut failures = 0;
                    for cl in &g.classes().classes()[1..] {
                        let u = cl.representative;
                        if g.element_order(u) == 2 && noncommuting_conjugate(&g, u).is_err() {
                            failures += 1;
                        }
                    }
                    Ok(json!({"failures": failures}))
                },
            )
        })
        .collect()
}

fn checks_for(suite: Suite) -> Vec<Pending> {
    match suite {
        Suite::Widths => width_checks(),
        Suite::Covering => covering_checks(),
        Suite::Real => real_checks(),
        Suite::Lcycles => lcycle_checks(),
        Suite::Characters => character_checks(),
        Suite::Diagonal => diagonal_checks(),
        Suite::Nu => nu_checks(),
        Suite::Involutions => involution_checks(),
        Suite::All => Suite::EACH.iter().flat_map(|&s| checks_for(s)).collect(),
    }
}

/// Runs the checks in order; the flag is false if the deadline cut the run.
pub fn run_suite(ctx: &Context, suite: Suite) -> (VerifyReport, bool) {
    let mut checks = Vec::new();
    let mut complete = true;
    for p in checks_for(suite) {
        if ctx.deadline.expired() {
            complete = false;
            break;
        }
        let (computed, status) = match (p.compute)() {
            Ok(v) => {
                let status = if (p.accept)(&p.expected, &v) { Status::Pass } else { Status::Fail };
                (v, status)
            }
            Err(e) => (Value::String(e.to_string()), Status::Error),
        };
        checks.push(Check {
            id: p.id,
            claim: p.claim,
            expected: p.expected,
            computed,
            status,
        });
    }
    let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
    let report = VerifyReport {
        suite: suite.name(),
        passed,
        failed: checks.len() - passed,
        checks,
    };
    (report, complete)
}

pub fn verify(ctx: &Context, suite: Suite) -> Result<Report> {
    let (report, complete) = run_suite(ctx, suite);
    let mut table = Table::new(&["check", "status", "expected", "computed"]);
    for c in &report.checks {
        table.push(vec![
            c.id.clone(),
            serde_json::to_string(&c.status).unwrap_or_default().trim_matches('"').to_string(),
            c.expected.to_string(),
            c.computed.to_string(),
        ]);
    }
    let ok = report.failed == 0 && complete;
    let mut out = Report::new(&report, complete, table)?;
    out.ok = ok;
    Ok(out)
}
