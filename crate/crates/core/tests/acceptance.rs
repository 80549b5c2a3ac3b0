//! Acceptance criteria on the fixture surfaces, at tolerance zero. Runs
//! without the libtest harness so each criterion prints one line.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;

use lamistrat::catalog::{pants_decomposition, separating_curve, twist_curves};
use lamistrat::curvecomplex::{build_slice, enumerate_vertices, induced_map, partition_violations, separating_classification};
use lamistrat::mcg::{builtin_generators, reflection, twist, verify_preservation, CurveAction, WeightPermutation};
use lamistrat::multicurve::{
    cut_invariants, decompose, intersection_number, is_disjoint, strip_peripheral, validate, vertex_link, FlipStep,
    Multicurve, NormalCoords, Region,
};
use lamistrat::strata::{
    check_poset_automorphism, check_stratification_axioms, dim_formulas, enumerate_strata, generic_depth,
    EnumerateOptions, StrataPoset, Support,
};
use lamistrat::surface::{fixture, Triangulation, FIXTURE_NAMES};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{big, chain_lengths, det, max_clique, satisfies_triangle_conditions, signature, slope_weights, slopes, small};

const CAP: u64 = 1_000_000;
const WINDOW: u64 = 8;
const SAMPLES: usize = 1000;

type Outcome = Result<usize, String>;

/// Counts checks and keeps the first failure.
#[derive(Default)]
struct Checks {
    n: usize,
    first: Option<String>,
}

impl Checks {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.n += 1;
        if !ok && self.first.is_none() {
            self.first = Some(what());
        }
    }

    fn done(self) -> Outcome {
        match self.first {
            Some(f) => Err(f),
            None if self.n == 0 => Err("nothing was checked".into()),
            None => Ok(self.n),
        }
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn window(name: &str, limit: u64) -> Result<StrataPoset, String> {
    enumerate_strata(&fixture(name).map_err(err)?, limit, &EnumerateOptions::default()).map_err(err)
}

fn support_set(s: &Support) -> BTreeSet<Vec<u64>> {
    s.components().iter().map(|c| small(c.weights())).collect()
}

fn depth_bounds() -> Outcome {
    let mut c = Checks::default();
    for name in ["s_0_5", "s_1_2"] {
        let (g, n) = signature(name);
        let xi = (3 * g - 3 + n) as usize;
        let bound = (3 * g - 4 + n) as usize;
        let p = window(name, WINDOW)?;
        let pants: BTreeSet<Vec<u64>> = pants_decomposition(name).map_err(err)?.iter().map(|m| small(m.weights())).collect();
        let sets: Vec<_> = p.strata().iter().map(|s| support_set(&s.support)).collect();
        c.expect(sets.contains(&pants), || format!("{name}: window lacks the pants decomposition"));
        let chains = chain_lengths(&sets);
        let deepest = chains.iter().max().copied().unwrap_or(0) - 1;
        c.expect(deepest == bound, || format!("{name}: longest chain gives depth {deepest}, expected {bound}"));
        c.expect(p.max_depth() == bound, || format!("{name}: reported max depth {}", p.max_depth()));
        for (s, len) in p.strata().iter().zip(&chains) {
            let k = sets[s.id].len();
            c.expect(s.depth == k - 1 && len - 1 == k - 1, || format!("{name}: stratum {} k={k} depth {}", s.id, s.depth));
            c.expect((len - 1 == bound) == (k == xi), || format!("{name}: stratum {} attains the bound with k={k}", s.id));
        }
    }
    c.done()
}

fn torus_oracle() -> Outcome {
    let mut c = Checks::default();
    let tri = fixture("s_1_1").map_err(err)?;
    let all = slopes(8);
    let curves: Vec<Multicurve> =
        all.iter().map(|&(p, q)| validate(&tri, big(&slope_weights(p, q)))).collect::<Result<_, _>>().map_err(err)?;
    for (a, &(p, q)) in curves.iter().zip(&all) {
        for (b, &(r, s)) in curves.iter().zip(&all) {
            let want = BigUint::from(det(p, q, r, s));
            let got = intersection_number(a, b, CAP).map_err(err)?;
            c.expect(got == want, || format!("i({p}/{q}, {r}/{s}) = {got}, expected {want}"));
        }
    }
    c.done()
}

/// Sum of one to three scaled elements of `basis`.
fn sample(rng: &mut ChaCha8Rng, tri: &Arc<Triangulation>, basis: &[Vec<u64>]) -> NormalCoords {
    let mut w = vec![0u64; tri.edge_count()];
    for _ in 0..rng.gen_range(1..=3) {
        let b = &basis[rng.gen_range(0..basis.len())];
        let k = rng.gen_range(1..=3);
        for (x, y) in w.iter_mut().zip(b) {
            *x += k * y;
        }
    }
    NormalCoords::from_u64(tri.clone(), &w).expect("sums of curves are valid")
}

fn pieces(c: &NormalCoords) -> Result<(u64, Multicurve), String> {
    let links: u64 = c.peripheral_multiplicities().iter().map(|m| u64::try_from(m).unwrap()).sum();
    let (rest, _) = strip_peripheral(c.triangulation(), c.weights().to_vec()).map_err(err)?;
    let curves: u64 = decompose(&rest, CAP).map_err(err)?.iter().map(|x| x.1).sum();
    Ok((links + curves, rest))
}

fn flip_soundness() -> Outcome {
    let mut c = Checks::default();
    for (f, name) in FIXTURE_NAMES.iter().enumerate() {
        let tri = fixture(name).map_err(err)?;
        let mut basis: Vec<Vec<u64>> = enumerate_vertices(&tri, 4).map_err(err)?.iter().map(|m| small(m.weights())).collect();
        basis.extend((0..tri.vertex_count()).map(|v| small(vertex_link(&tri, v).weights())));
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + f as u64);
        let mut done = 0;
        while done < SAMPLES {
            let e = rng.gen_range(0..tri.edge_count());
            let a = sample(&mut rng, &tri, &basis);
            let b = sample(&mut rng, &tri, &basis);
            let Ok(step) = FlipStep::new(&tri, e) else { continue };
            done += 1;
            let back = FlipStep::new(&step.target, e).map_err(err)?;
            let fa = a.transport_flip(&step).map_err(err)?;
            let fb = b.transport_flip(&step).map_err(err)?;
            let twice = fa.transport_flip(&back).map_err(err)?;
            c.expect(twice.weights() == a.weights(), || format!("{name} edge {e}: double flip of {:?}", small(a.weights())));
            c.expect(satisfies_triangle_conditions(&step.target, &small(fa.weights())), || {
                format!("{name} edge {e}: image of {:?} invalid", small(a.weights()))
            });
            let (ka, ea) = pieces(&a)?;
            let (kfa, efa) = pieces(&fa)?;
            let (_, eb) = pieces(&b)?;
            let (_, efb) = pieces(&fb)?;
            c.expect(ka == kfa, || format!("{name} edge {e}: {ka} components became {kfa}"));
            let before = intersection_number(&ea, &eb, CAP).map_err(err)?;
            let after = intersection_number(&efa, &efb, CAP).map_err(err)?;
            c.expect(before == after, || format!("{name} edge {e}: i went from {before} to {after}"));
        }
    }
    c.done()
}

fn intersection_table(curves: &[Multicurve]) -> Result<Vec<Vec<BigUint>>, String> {
    curves.iter().map(|a| curves.iter().map(|b| intersection_number(a, b, CAP).map_err(err)).collect()).collect()
}

fn preservation() -> Outcome {
    let mut c = Checks::default();
    for name in ["s_0_5", "s_1_2"] {
        let p = window(name, WINDOW)?;
        let curves = p.curves();
        let table = intersection_table(&curves)?;
        for g in builtin_generators(name).map_err(err)? {
            let r = verify_preservation(&g.class, &p, CAP);
            c.expect(r.violation_count() == 0, || format!("{name} {}: {} violations", g.name, r.violation_count()));
            let images: Vec<Multicurve> = curves.iter().map(|m| g.class.apply_curve(m)).collect::<Result<_, _>>().map_err(err)?;
            let moved = intersection_table(&images)?;
            c.expect(moved == table, || format!("{name} {}: intersection numbers change", g.name));
        }
    }
    c.done()
}

fn adjacency(curves: &[Multicurve]) -> Result<Vec<Vec<bool>>, String> {
    curves.iter().map(|a| curves.iter().map(|b| Ok(a != b && is_disjoint(a, b, CAP).map_err(err)?)).collect()).collect()
}

fn reduction() -> Outcome {
    let mut c = Checks::default();
    for name in FIXTURE_NAMES {
        let tri = fixture(name).map_err(err)?;
        let (g, n) = signature(name);
        let xi = (3 * g - 3 + n) as usize;
        let vertices = enumerate_vertices(&tri, WINDOW).map_err(err)?;
        let slice = build_slice(&vertices, CAP).map_err(err)?;
        let gens = builtin_generators(name).map_err(err)?;
        let mut bound = WINDOW;
        for gen in &gens {
            for v in &vertices {
                bound = bound.max(u64::try_from(&gen.class.act(v).map_err(err)?.total_weight()).unwrap());
            }
        }
        let target = build_slice(&enumerate_vertices(&tri, bound).map_err(err)?, CAP).map_err(err)?;
        for gen in &gens {
            let m = induced_map(&gen.class, &slice, &target, CAP).map_err(err)?;
            c.expect(m.simplicial && m.injective && m.outside.is_empty(), || format!("{name} {}: {:?}", gen.name, m.violations));
            for (i, a) in vertices.iter().enumerate() {
                for b in &vertices[i + 1..] {
                    let fa = gen.class.apply_curve(a).map_err(err)?;
                    let fb = gen.class.apply_curve(b).map_err(err)?;
                    let kept = is_disjoint(&fa, &fb, CAP).map_err(err)? && fa != fb;
                    c.expect(!is_disjoint(a, b, CAP).map_err(err)? || kept, || format!("{name} {}: an edge collapses", gen.name));
                }
            }
        }
        let clique = max_clique(&adjacency(&vertices)?);
        c.expect(slice.max_simplex_size() == clique, || format!("{name}: slice says {}, cliques say {clique}", slice.max_simplex_size()));
        let pants: Vec<Vec<u64>> = pants_decomposition(name).map_err(err)?.iter().map(|m| small(m.weights())).collect();
        let has_pants = pants.iter().all(|w| vertices.iter().any(|v| small(v.weights()) == *w));
        if has_pants {
            c.expect(clique == xi, || format!("{name}: largest simplex {clique}, expected {xi}"));
        } else {
            c.expect(clique <= xi, || format!("{name}: simplex of size {clique} exceeds {xi}"));
        }
    }
    c.done()
}

/// Whether `c` meets some probe an odd number of times. A curve that bounds
/// meets every closed curve evenly, and a nonseparating one has a dual
/// meeting it once.
fn has_odd_partner(c: &Multicurve, probes: &[Multicurve]) -> Result<bool, String> {
    for b in probes {
        if intersection_number(c, b, CAP).map_err(err)?.bit(0) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn separating() -> Outcome {
    let mut c = Checks::default();
    let name = "s_1_2";
    let tri = fixture(name).map_err(err)?;
    let sep = separating_curve(name).map_err(err)?.ok_or("no separating curve")?;
    let cut = cut_invariants(&sep, CAP).map_err(err)?;
    let want = vec![Region { genus: 1, punctures: 0, boundary: 1 }, Region { genus: 0, punctures: 2, boundary: 1 }];
    c.expect(cut.separating && cut.regions == want, || format!("cut regions {:?}", cut.regions));
    let vertices = enumerate_vertices(&tri, 10).map_err(err)?;
    let part = separating_classification(&vertices, CAP).map_err(err)?;
    c.expect(!part.separating.is_empty(), || "no separating curve in the window".into());
    for (i, v) in vertices.iter().enumerate() {
        let odd = has_odd_partner(v, &vertices)?;
        c.expect(odd != part.separating.contains(&i), || format!("{:?}: parity disagrees with the cut", small(v.weights())));
    }
    for g in builtin_generators(name).map_err(err)? {
        let bad = partition_violations(&g.class, &vertices, CAP).map_err(err)?;
        c.expect(bad.is_empty(), || format!("{} moves vertices {bad:?} across the partition", g.name));
        for (i, v) in vertices.iter().enumerate() {
            let image = g.class.apply_curve(v).map_err(err)?;
            let odd = has_odd_partner(&image, &vertices)?;
            c.expect(odd == has_odd_partner(v, &vertices)?, || format!("{} changes the parity class of vertex {i}", g.name));
        }
    }
    c.done()
}

/// On the torus `T_a^k(b) = b + k·λ·a` with `λ = ±det(a, b)`, so
/// `i(T^k b, e) = |det(b, e) + k·λ·det(a, e)|` for one fixed sign.
fn torus_growth(a: (i64, i64), b: (i64, i64), e: (i64, i64), k: i64, sign: i64) -> u64 {
    let dab = a.0 * b.1 - a.1 * b.0;
    let dae = a.0 * e.1 - a.1 * e.0;
    let dbe = b.0 * e.1 - b.1 * e.0;
    (dbe + sign * k * dab * dae).unsigned_abs()
}

fn agreement() -> Outcome {
    let mut c = Checks::default();
    for name in FIXTURE_NAMES {
        let curves = enumerate_vertices(&fixture(name).map_err(err)?, WINDOW).map_err(err)?;
        for a in &curves {
            for b in &curves {
                let zero = intersection_number(a, b, CAP).map_err(err)? == BigUint::from(0u32);
                c.expect(is_disjoint(a, b, CAP).map_err(err)? == zero, || format!("{name}: disagreement on {a:?} {b:?}"));
            }
        }
    }
    let mut triples = 0;
    for name in FIXTURE_NAMES {
        let curves = enumerate_vertices(&fixture(name).map_err(err)?, 4).map_err(err)?;
        for a in twist_curves(name).map_err(err)? {
            let t = twist(&a, CAP).map_err(err)?;
            for b in &curves {
                let orbit: Vec<Multicurve> = (0..=6)
                    .scan(b.clone(), |cur, k| {
                        let out = cur.clone();
                        if k < 6 {
                            *cur = t.apply_curve(cur).expect("twist applies");
                        }
                        Some(out)
                    })
                    .collect();
                for e in &curves {
                    let seq: Vec<BigUint> =
                        orbit.iter().map(|x| intersection_number(x, e, CAP)).collect::<Result<_, _>>().map_err(err)?;
                    let want = intersection_number(&a, b, CAP).map_err(err)? * intersection_number(&a, e, CAP).map_err(err)?;
                    let steps: Vec<BigUint> = seq.windows(2).filter(|w| w[1] >= w[0]).map(|w| &w[1] - &w[0]).collect();
                    let settled = seq.windows(2).skip(3).all(|w| w[1] >= w[0] && &w[1] - &w[0] == want);
                    c.expect(settled, || format!("{name}: twist about {a:?}, b={b:?}, e={e:?}: {seq:?} vs slope {want}; {steps:?}"));
                    triples += 1;
                }
            }
        }
    }
    c.expect(triples >= 50, || format!("only {triples} triples"));
    // exact orbits on the torus, where slopes are known in closed form
    let tri = fixture("s_1_1").map_err(err)?;
    let small_slopes = slopes(2);
    for &a in &[(0, 1), (1, 0)] {
        let curve = validate(&tri, big(&slope_weights(a.0, a.1))).map_err(err)?;
        let t = twist(&curve, CAP).map_err(err)?;
        for &b in &small_slopes {
            for &e in &small_slopes {
                let mut cur = validate(&tri, big(&slope_weights(b.0, b.1))).map_err(err)?;
                let target = validate(&tri, big(&slope_weights(e.0, e.1))).map_err(err)?;
                let mut seq = Vec::new();
                for _ in 0..=5 {
                    seq.push(u64::try_from(&intersection_number(&cur, &target, CAP).map_err(err)?).unwrap());
                    cur = t.apply_curve(&cur).map_err(err)?;
                }
                let fits = [1, -1].iter().any(|&s| (0..=5).all(|k| seq[k as usize] == torus_growth(a, b, e, k, s)));
                c.expect(fits, || format!("torus twist {a:?} on {b:?} against {e:?}: {seq:?}"));
            }
        }
    }
    c.done()
}

/// The permutation of strata induced by `f`, when every image is a stratum.
fn induced(f: &dyn CurveAction, p: &StrataPoset) -> Result<Option<Vec<usize>>, String> {
    let mut sigma = Vec::new();
    for s in p.strata() {
        let comps: Vec<Multicurve> = s
            .support
            .components()
            .iter()
            .map(|m| Multicurve::try_from(f.act(m)?))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let image = Support::new(p.triangulation(), comps, CAP).map_err(err)?;
        match p.find(&image) {
            Some(j) => sigma.push(j),
            None => return Ok(None),
        }
    }
    Ok(Some(sigma))
}

fn axioms() -> Outcome {
    let mut c = Checks::default();
    for name in FIXTURE_NAMES {
        let p = window(name, WINDOW)?;
        let r = check_stratification_axioms(&p);
        c.expect(r.passed(), || format!("{name}: {:?}", r.violations.first()));
        let sets: Vec<_> = p.strata().iter().map(|s| support_set(&s.support)).collect();
        let chains = chain_lengths(&sets);
        let g = p.generic();
        for s in p.strata() {
            let d = generic_depth(&g, s.id).map_err(err)?;
            c.expect(d == sets[s.id].len() - 1, || format!("{name} stratum {}: depth {d} with k={}", s.id, sets[s.id].len()));
            c.expect(d + 1 == chains[s.id], || format!("{name} stratum {}: depth {d}, chain {}", s.id, chains[s.id]));
        }
    }
    let name = "s_0_5";
    let tri = fixture(name).map_err(err)?;
    let p = window(name, WINDOW)?;
    let sigma = induced(&reflection(&tri).map_err(err)?, &p)?.ok_or("reflection leaves the window")?;
    c.expect(check_poset_automorphism(&p.generic(), &sigma) == Ok(true), || "reflection is not an automorphism".into());
    let mut broken = sigma.clone();
    let hi = p.strata().iter().position(|s| s.depth == 1).ok_or("no depth-one stratum")?;
    let lo = p.strata().iter().position(|s| s.depth == 0).ok_or("no curve stratum")?;
    broken.swap(hi, lo);
    c.expect(check_poset_automorphism(&p.generic(), &broken) != Ok(true), || "corrupted map accepted".into());
    let mut perm: Vec<usize> = (0..tri.edge_count()).collect();
    perm.swap(0, 1);
    let fake = WeightPermutation { frame: tri.clone(), perm };
    let report = verify_preservation(&fake, &p, CAP);
    c.expect(!report.passed(), || "edge swap passes preservation".into());
    c.done()
}

fn dimensions() -> Outcome {
    let mut c = Checks::default();
    for (name, want) in [("s_0_5", (4, 3, 2)), ("s_1_2", (4, 3, 2)), ("s_2_1", (8, 7, 6))] {
        let (g, n) = signature(name);
        let d = dim_formulas(g, n, None);
        c.expect((d.ml, d.pml, d.u_curve) == want, || format!("{name}: {d:?}"));
        c.expect(!d.degenerate, || format!("{name}: flagged degenerate"));
    }
    let d = dim_formulas(1, 2, Some((1, 0, 1)));
    c.expect(d.u_minimal == Some(-3) && d.degenerate, || format!("(1,0,1): {d:?}"));
    c.done()
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("depth bounds", depth_bounds),
        ("torus intersection oracle", torus_oracle),
        ("flip soundness", flip_soundness),
        ("preservation", preservation),
        ("curve complex reduction", reduction),
        ("separating curves", separating),
        ("two-algorithm agreement", agreement),
        ("stratification axioms", axioms),
        ("dimension formulas", dimensions),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(n) => println!("criterion {} ({name}): PASS ({n} checks)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
