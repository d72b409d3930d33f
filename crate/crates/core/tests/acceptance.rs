//! One pass/fail line per headline criterion. Exits nonzero if any fails.

#[allow(dead_code)]
mod oracle_checks;

use smw::derived::Indec;
use smw::models::{preset, CategoryModel};
use smw::reduction::{iterate_mutation, reduce, verify_reduce_shift_lift};
use smw::sm::adjacency::check_adjacency;
use smw::sm::approx::ApproxOutcome;
use smw::sm::checks::check_setup;
use smw::sm::mutate::{candidates, mutate, right_approximation};
use smw::sm::theorem1::check_theorem1;
use smw::sm::{Collection, CollectionKind, Direction, Status};
use smw::stability::{cmp_phase, phase_gap_check};
use std::cmp::Ordering;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn load(name: &str) -> CategoryModel {
    CategoryModel::from_preset(&preset::lookup(name).unwrap()).unwrap()
}

fn labels(m: &CategoryModel, xs: &[Indec]) -> Vec<String> {
    xs.iter().map(|&x| m.label(x)).collect()
}

fn standard(m: &CategoryModel) -> Collection {
    Collection::new(m, m.simples(), CollectionKind::Smc).unwrap()
}

fn orbit() -> (CategoryModel, Collection) {
    let m = load("orbit a5 2");
    let u = Collection::from_labels(&m, &["s1", "s2", "x1", "x2", "x3"], CollectionKind::Sms { w: 2 }).unwrap();
    (m, u)
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

/// Every `(U, S)` with `U` the standard collection of a battery model, plus
/// the orbit example at its first two members.
fn battery() -> Vec<(CategoryModel, Collection, Vec<usize>)> {
    let mut out = Vec::new();
    for name in ["a_1", "a_2", "a_3", "tube 3"] {
        let m = load(name);
        let u = standard(&m);
        for s in subsets(u.members.len()) {
            out.push((load(name), u.clone(), s));
        }
    }
    let (m, u) = orbit();
    out.push((m, u, vec![0, 1]));
    out
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tube_mutation() -> Outcome {
    let m = load("tube 3");
    let u = standard(&m);
    let r = mutate(&m, &u, &[0, 1], Direction::Right, false).map_err(|e| e.to_string())?;
    let got = labels(&m, &r.members);
    ensure(got == ["s1", "s2", "[s2;s1;s3][1]"], || format!("members {got:?}"))?;
    let t = &r.history[0].triangles[0];
    let tri = (m.label_obj(&t.x), m.label_obj(&t.y));
    ensure(tri.0 == "[s2;s1]" && tri.1 == "s3[1]", || format!("triangle {tri:?}"))?;
    Ok(format!("{{s1, s2, {}}} via {} -> {}", got[2], tri.0, tri.1))
}

fn orbit_example() -> Outcome {
    let (m, u) = orbit();
    let r = mutate(&m, &u, &[0, 1], Direction::Right, false).map_err(|e| e.to_string())?;
    let tris = &r.history[0].triangles;
    let sources: Vec<String> = tris.iter().map(|t| m.label_obj(&m.normalize_obj(&t.x))).collect();
    ensure(sources == ["0", "s1", "s"], || format!("sources {sources:?}"))?;
    let ctx = reduce(&m, &u.members[..2], u.kind).map_err(|e| e.to_string())?;
    for (t, &x) in tris.iter().zip(&u.members[2..]) {
        let cone = m.normalize_obj(&t.z);
        let shifted = ctx.shift_up(x).ok_or_else(|| format!("{} has no shift in the reduction", m.label(x)))?;
        ensure(cone.summands == [m.normalize(shifted)], || {
            format!("cone of {} is {}, shift is {}", m.label(x), m.label_obj(&cone), m.label(shifted))
        })?;
    }
    let mut got = labels(&m, &r.members[2..]);
    let mut want: Vec<String> = u.members[2..].iter().map(|&x| m.label(ctx.shift_up(x).unwrap())).collect();
    got.sort();
    want.sort();
    ensure(got == want, || format!("members {got:?} vs shifts {want:?}"))?;
    Ok(format!("sources {sources:?}, cones {got:?}"))
}

fn counterexample() -> Outcome {
    let m = load("ky-counterexample");
    let u = standard(&m);
    let s1 = u.members[0];
    let s2 = u.members[1];
    let cands = candidates(&m, &[s1]).map_err(|e| e.to_string())?;
    let chain = match right_approximation(&m, &cands, m.shift(s2, 1)) {
        ApproxOutcome::Diverging { chain } => chain,
        ApproxOutcome::NotFound { cap } => return Err(format!("NotFound at cap {cap} without a chain")),
        ApproxOutcome::Found(_) => return Err("approximation found".into()),
    };
    ensure(!chain.is_empty(), || "empty chain".into())?;
    let gap = phase_gap_check(&m, &u, &[s1]).map_err(|e| e.to_string())?;
    ensure(gap.verdict.status == Status::Fails, || format!("phase gap {:?}", gap.verdict.status))?;
    ensure(gap.family.len() == 8, || format!("family of {}", gap.family.len()))?;
    ensure(gap.family.windows(2).all(|w| cmp_phase(w[1].1, w[0].1) == Ordering::Greater), || "phases not increasing".into())?;
    let t = check_theorem1(&m, &u, &[0]).map_err(|e| e.to_string())?;
    ensure(t.consistent && t.status(3) == Status::Fails && t.status(5) == Status::Fails, || {
        format!("conditions {:?}", t.conditions.iter().map(|c| c.1.status).collect::<Vec<_>>())
    })?;
    Ok(format!("Diverging chain of {}, phase family of 8, (iv) and (vi) fail", chain.len()))
}

fn theorem1_battery() -> Outcome {
    let mut count = 0;
    for (m, u, s) in battery().into_iter().filter(|b| !b.0.is_orbit()) {
        let r = check_theorem1(&m, &u, &s).map_err(|e| e.to_string())?;
        count += 1;
        ensure(r.consistent, || {
            format!("{} at {:?}: {:?}", m.kind_name(), s, r.conditions.iter().map(|c| c.1.status).collect::<Vec<_>>())
        })?;
    }
    Ok(format!("{count} instances, 0 disagreements"))
}

fn round_trip() -> Outcome {
    let mut count = 0;
    for (m, u, s) in battery() {
        let sub = u.subset(&s).unwrap();
        if !check_setup(&m, &sub, u.kind).is_holds() {
            continue;
        }
        for (there, back) in [(Direction::Right, Direction::Left), (Direction::Left, Direction::Right)] {
            let v = mutate(&m, &u, &s, there, false).map_err(|e| e.to_string())?;
            let idx = v.indices_of(&m, &sub).map_err(|e| e.to_string())?;
            let w = mutate(&m, &v, &idx, back, false).map_err(|e| e.to_string())?;
            ensure(w.same_members(&u), || format!("{} at {:?} {there:?}", m.kind_name(), s))?;
        }
        count += 1;
    }
    Ok(format!("{count} instances with setups holding"))
}

fn reduce_shift_lift() -> Outcome {
    let mut count = 0;
    for (m, u, s) in battery() {
        let v = verify_reduce_shift_lift(&m, &u, &s).map_err(|e| e.to_string())?;
        ensure(v.is_holds(), || format!("{} at {:?}: {:?} {}", m.kind_name(), s, v.status, v.note))?;
        count += 1;
    }
    Ok(format!("{count} instances"))
}

fn bisilting() -> Outcome {
    let mut count = 0;
    for name in ["a_1", "a_2", "a_3", "a_4"] {
        let m = load(name);
        let u = standard(&m);
        for s in subsets(u.members.len()) {
            let r = mutate(&m, &u, &s, Direction::Right, false).map_err(|e| e.to_string())?;
            let a = check_adjacency(&m, &r).map_err(|e| e.to_string())?;
            ensure(a.bisilting == Status::Holds, || format!("{name} at {s:?}: {:?}", a.bisilting))?;
            count += 1;
        }
    }
    Ok(format!("{count} mutations bisilting"))
}

fn iteration() -> Outcome {
    let (m, u) = orbit();
    let t = iterate_mutation(&m, &u, &[0, 1], Direction::Right, 20).map_err(|e| e.to_string())?;
    if let Some((code, msg)) = &t.error {
        return Err(format!("{code}: {msg}"));
    }
    ensure(t.steps.len() == 21, || format!("{} steps", t.steps.len() - 1))?;
    ensure(t.steps.iter().all(|c| c.kind == CollectionKind::Sms { w: 2 }), || "kind changed".into())?;
    ensure(t.verdicts.iter().all(|v| v.is_holds()), || "a step is not a 2-simple-minded system".into())?;
    ensure(t.period == Some((0, 14)), || format!("period {:?}", t.period))?;
    Ok("20 steps, period 14 from step 0".into())
}

fn engine_oracles() -> Outcome {
    let checks: [(&str, fn()); 8] = [
        ("euler form", oracle_checks::euler_form_identity),
        ("coxeter", oracle_checks::translate_acts_by_the_coxeter_matrix),
        ("serre", oracle_checks::serre_duality),
        ("auslander-reiten", oracle_checks::auslander_reiten_duality),
        ("orbit positions", oracle_checks::orbit_figure_positions),
        ("orbit components", oracle_checks::orbit_reduction_components),
        ("seesaw", oracle_checks::seesaw_on_subobjects),
        ("cone exactness", oracle_checks::cone_long_exactness),
    ];
    for (name, f) in checks {
        catch_unwind(f).map_err(|_| format!("{name} failed"))?;
    }
    Ok("8 oracle families".into())
}

fn main() -> ExitCode {
    std::panic::set_hook(Box::new(|info| eprintln!("{info}")));
    let s = Duration::from_secs;
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 9] = [
        ("tube mutation", tube_mutation, Some(s(1))),
        ("orbit example", orbit_example, Some(s(5))),
        ("counterexample detection", counterexample, Some(s(5))),
        ("six-condition battery", theorem1_battery, None),
        ("mutation round trip", round_trip, None),
        ("reduce-shift-lift", reduce_shift_lift, None),
        ("bisilting preserved", bisilting, None),
        ("orbit iteration", iteration, None),
        ("engine oracles", engine_oracles, Some(s(120))),
    ];
    let mut failed = 0;
    for (name, f, limit) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if took > l => Err(format!("took {took:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {name} ({took:.2?}): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name} ({took:.2?}): {detail}");
            }
        }
    }
    println!("{} of 9 criteria pass", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
