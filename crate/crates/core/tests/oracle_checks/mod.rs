//! Engine checks against facts computed independently of the engine: the
//! Euler form and Coxeter matrix of the quiver, Serre and AR duality, the
//! seesaw property of charges and long exactness of cone triangles.

use num_rational::Ratio;
use smw::derived::{DObject, Indec};
use smw::models::{preset, CategoryModel, ModelKind, ModelSpec};
use smw::reduction::reduce;
use smw::rep::Quiver;
use smw::sm::{Collection, CollectionKind};
use smw::stability::{cmp_phase, subobjects, CentralCharge, Charge, Heart};
use std::cmp::Ordering;

type R = Ratio<i64>;

fn load(name: &str) -> CategoryModel {
    CategoryModel::from_preset(&preset::lookup(name).unwrap()).unwrap()
}

fn hereditary(vertices: usize, arrows: &[(usize, usize)], window: (i32, i32)) -> CategoryModel {
    let names = (1..=vertices).map(|i| i.to_string()).collect();
    let quiver = Quiver::new(names, arrows.to_vec()).unwrap();
    let spec = ModelSpec::new(ModelKind::DerivedHereditary { quiver }).with_cap(vertices + 2).with_window(window.0, window.1);
    CategoryModel::new(spec).unwrap()
}

/// Hereditary models whose window catalogs have at most 60 objects.
fn hereditary_models() -> Vec<CategoryModel> {
    vec![
        load("a_2"),
        load("a_3"),
        load("a_4"),
        hereditary(3, &[(0, 1), (2, 1)], (-1, 1)),
        hereditary(4, &[(0, 1), (2, 1), (3, 1)], (-1, 1)),
    ]
}

fn small_models() -> Vec<CategoryModel> {
    let mut all = hereditary_models();
    all.push(load("orbit a5 2"));
    all.push(load("orbit a3 1"));
    all.push(load("orbit a2 2"));
    all.into_iter().filter(|m| m.enumerate_indecs().unwrap().len() <= 60).collect()
}

fn modules(m: &CategoryModel) -> Vec<Indec> {
    m.enumerate_indecs().unwrap().into_iter().filter(|x| x.shift == 0).collect()
}

fn quiver(m: &CategoryModel) -> Quiver {
    match &m.spec.kind {
        ModelKind::DerivedHereditary { quiver } => quiver.clone(),
        _ => unreachable!(),
    }
}

/// `E[i][j]`: the Euler form on simples, `δ_ij - #arrows i -> j`.
fn euler_matrix(q: &Quiver) -> Vec<Vec<R>> {
    let n = q.vertex_count();
    let mut e = vec![vec![R::from(0); n]; n];
    for (i, row) in e.iter_mut().enumerate() {
        row[i] = R::from(1);
    }
    for &(a, b) in &q.arrows {
        e[a][b] -= R::from(1);
    }
    e
}

fn euler(e: &[Vec<R>], x: &[usize], y: &[usize]) -> i64 {
    let mut s = R::from(0);
    for (i, &xi) in x.iter().enumerate() {
        for (j, &yj) in y.iter().enumerate() {
            s += e[i][j] * R::from((xi * yj) as i64);
        }
    }
    assert!(s.is_integer());
    s.to_integer()
}

fn inverse(a: &[Vec<R>]) -> Vec<Vec<R>> {
    let n = a.len();
    let mut m: Vec<Vec<R>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| R::from(i64::from(i == j))));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| m[r][c] != R::from(0)).expect("invertible");
        m.swap(c, p);
        let lead = m[c][c];
        for v in m[c].iter_mut() {
            *v /= lead;
        }
        for r in 0..n {
            if r != c && m[r][c] != R::from(0) {
                let f = m[r][c];
                let pivot = m[c].clone();
                for (v, pv) in m[r].iter_mut().zip(pivot) {
                    *v -= f * pv;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

pub fn euler_form_identity() {
    for m in hereditary_models() {
        let e = euler_matrix(&quiver(&m));
        let mods = modules(&m);
        for &a in &mods {
            for &b in &mods {
                let (da, db) = (m.heart().dims(a.module), m.heart().dims(b.module));
                let chi = m.hom_dim(a, b) as i64 - m.hom_dim(a, b.shifted(1)) as i64;
                assert_eq!(chi, euler(&e, &da, &db), "{} {}", m.label(a), m.label(b));
                for k in [-2, -1, 2, 3] {
                    assert_eq!(m.hom_dim(a, b.shifted(k)), 0);
                }
            }
        }
    }
}

pub fn translate_acts_by_the_coxeter_matrix() {
    for m in hereditary_models() {
        let e = euler_matrix(&quiver(&m));
        let n = e.len();
        let inv = inverse(&e);
        let phi: Vec<Vec<R>> = (0..n)
            .map(|i| (0..n).map(|j| -(0..n).fold(R::from(0), |s, k| s + inv[i][k] * e[j][k])).collect())
            .collect();
        let mods = modules(&m);
        let mut non_projective = 0;
        for &x in &mods {
            let Some(t) = m.tau_module(x.module) else { continue };
            non_projective += 1;
            let d = m.heart().dims(x.module);
            let expect: Vec<R> = (0..n).map(|i| (0..n).fold(R::from(0), |s, j| s + phi[i][j] * R::from(d[j] as i64))).collect();
            let got: Vec<R> = m.heart().dims(t).iter().map(|&v| R::from(v as i64)).collect();
            assert_eq!(got, expect, "τ {}", m.label(x));
        }
        assert_eq!(non_projective, mods.len() - n);
    }
}

pub fn serre_duality() {
    for m in small_models() {
        let cat = m.enumerate_indecs().unwrap();
        for &x in &cat {
            let sx = m.serre(x).unwrap();
            for &y in &cat {
                assert_eq!(m.hom_dim(x, y), m.hom_dim(y, sx), "{} {}", m.label(x), m.label(y));
            }
        }
    }
    let t = load("tube 3");
    let cat: Vec<Indec> = t.enumerate_indecs().unwrap().into_iter().filter(|x| t.length(*x) <= 4).collect();
    for &x in &cat {
        let sx = t.serre(x).unwrap();
        for &y in &cat {
            assert_eq!(t.hom_dim(x, y), t.hom_dim(y, sx));
        }
    }
}

pub fn auslander_reiten_duality() {
    for m in hereditary_models() {
        let mods = modules(&m);
        for &a in &mods {
            for &b in &mods {
                let ext = m.hom_dim(a, b.shifted(1));
                match m.tau_module(a.module) {
                    Some(t) => assert_eq!(ext, m.hom_dim(b, Indec::new(t, 0))),
                    None => assert_eq!(ext, 0, "projective {}", m.label(a)),
                }
            }
        }
    }
}

/// Named objects of the `A_5` orbit figure, described by their modules.
pub fn orbit_figure_positions() {
    let m = load("orbit a5 2");
    for (alias, module) in [("s1", "[s3;s4;s5][2]"), ("s", "[s2;s3;s4;s5][2]"), ("x1", "s4[1]"), ("x2", "s3[1]"), ("x3", "[s1;s2;s3;s4;s5][1]")] {
        assert_eq!(m.parse(alias).unwrap(), m.normalize(m.parse(module).unwrap()), "{alias}");
    }
    let u = Collection::from_labels(&m, &["s1", "s2", "x1", "x2", "x3"], CollectionKind::Sms { w: 2 }).unwrap();
    for &a in &u.members {
        for &b in &u.members {
            assert_eq!(m.hom_dim(a, b), usize::from(a == b));
        }
    }
    let [s1, s2, s, x1, x2, x3] = ["s1", "s2", "s", "x1", "x2", "x3"].map(|l| m.parse(l).unwrap());
    assert_eq!(m.hom_dim(s1, x1.shifted(1)) + m.hom_dim(s2, x1.shifted(1)), 0);
    assert!(m.hom_dim(s1, x2.shifted(1)) > 0);
    assert!(m.hom_dim(s, x3.shifted(1)) > 0);
    let (closure, _) = m.closure_members(&[s1, s2], m.spec.cap).unwrap();
    assert!(closure.iter().any(|&c| m.normalize(c) == s));
}

/// `Z` splits into blocks, closed under Hom and `⟨1⟩`, of the sizes of the
/// orbit categories of `A_2` and `A_1`.
pub fn orbit_reduction_components() {
    let m = load("orbit a5 2");
    let s: Vec<Indec> = ["s1", "s2"].iter().map(|l| m.parse(l).unwrap()).collect();
    let ctx = reduce(&m, &s, CollectionKind::Sms { w: 2 }).unwrap();
    let z = &ctx.members;
    let mut comp: Vec<usize> = (0..z.len()).collect();
    fn root(c: &mut Vec<usize>, i: usize) -> usize {
        if c[i] != i {
            let r = root(c, c[i]);
            c[i] = r;
        }
        c[i]
    }
    for i in 0..z.len() {
        for j in 0..z.len() {
            let shifted = ctx.shift_up(z[i]) == Some(z[j]);
            if shifted || m.hom_dim(z[i], z[j]) > 0 {
                let (a, b) = (root(&mut comp, i), root(&mut comp, j));
                comp[a] = b;
            }
        }
    }
    let mut sizes: Vec<usize> = (0..z.len()).map(|i| root(&mut comp, i)).fold(vec![0; z.len()], |mut acc, r| {
        acc[r] += 1;
        acc
    });
    sizes.retain(|&n| n > 0);
    sizes.sort();
    let a2 = load("orbit a2 2").enumerate_indecs().unwrap().len();
    let a1 = load("orbit a1 2").enumerate_indecs().unwrap().len();
    assert_eq!(sizes, vec![a1, a2]);
}

pub fn seesaw_on_subobjects() {
    let charges = [[(-1, 1), (0, 1), (1, 1)], [(1, 2), (-2, 1), (0, 3)], [(0, 1), (1, 1), (-1, 2)]];
    for name in ["a_3", "tube 3"] {
        let m = load(name);
        let simples = m.simples();
        let heart = Heart::of(&m, &simples).unwrap();
        for cs in charges {
            let values = cs.iter().map(|&(x, y)| Charge::int(x, y)).collect();
            let z = CentralCharge::new(&m, &simples, values).unwrap();
            for &x in heart.catalog.iter().filter(|&&x| m.length(x) <= 4) {
                let zx = z.charge_of(&m, x).unwrap();
                for sub in subobjects(&m, &heart, &DObject::single(x)) {
                    if sub.quotient.is_zero() {
                        continue;
                    }
                    let za = z.charge_of(&m, sub.object).unwrap();
                    let zq = z.charge(&m, &sub.quotient).unwrap();
                    assert_eq!(za.add(zq), zx);
                    let (l, r) = (cmp_phase(za, zx), cmp_phase(zx, zq));
                    assert!(l == Ordering::Equal || r == Ordering::Equal || l == r, "{name} {}", m.label(x));
                }
            }
        }
    }
}

/// For `x -f-> y -> z -> x[1]` and any test object `t`, the long exact Hom
/// sequence bounds `Hom(t, z)` and the Euler characteristic is additive.
pub fn cone_long_exactness() {
    for m in small_models() {
        let cat = m.enumerate_indecs().unwrap();
        let probes: Vec<Indec> = cat.iter().copied().step_by(3).collect();
        for &x in cat.iter().step_by(2) {
            for &y in &cat {
                for lift in m.lifts(x, -1..=1) {
                    for coords in m.derived.basis(lift, y) {
                        let f = m.derived.elementary(lift, y, coords);
                        let t = m.cone(&f).unwrap();
                        let z = m.normalize_obj(&t.z);
                        for &p in &probes {
                            let hz = m.hom_dim_obj(&DObject::single(p), &z);
                            let bound = m.hom_dim(p, y) + m.hom_dim(p, x.shifted(1));
                            assert!(hz <= bound);
                            if !m.is_orbit() {
                                let chi = |o: &DObject| -> i64 {
                                    (-10..=10)
                                        .map(|k| {
                                            let sign = if k % 2 == 0 { 1 } else { -1 };
                                            sign * m.hom_dim_obj(&DObject::single(p), &o.shifted(k)) as i64
                                        })
                                        .sum()
                                };
                                assert_eq!(chi(&z), chi(&DObject::single(y)) - chi(&DObject::single(x)));
                            }
                        }
                    }
                }
            }
        }
    }
}
