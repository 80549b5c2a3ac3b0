//! The acceptance suites behind `lamistrat verify`, each an exhaustive or
//! seeded check on the fixture surfaces returning counts and failures.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{pants_decomposition, separating_curve, torus_slope, twist_curves};
use crate::curvecomplex::{build_slice, enumerate_vertices, induced_map, partition_violations, separating_classification};
use crate::error::Result;
use crate::mcg::{builtin_generators, twist, verify_preservation, CurveAction, WeightPermutation};
use crate::multicurve::{
    cut_invariants, decompose, intersection_number, is_disjoint, strip_peripheral, vertex_link, FlipStep, Multicurve,
    NormalCoords, Region, DEFAULT_WEIGHT_CAP,
};
use crate::strata::{
    check_poset_automorphism, check_stratification_axioms, dim_formulas, enumerate_strata, generic_depth,
    EnumerateOptions, StrataPoset, Support,
};
use crate::surface::{fixture, Triangulation, FIXTURE_NAMES};

const CAP: u64 = DEFAULT_WEIGHT_CAP;

/// Weight bound of the windows the suites enumerate. It admits a pants
/// decomposition on every fixture except the genus-two one.
pub const WINDOW: u64 = 8;

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub samples: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: 0, samples: 1000 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub checks: u64,
    pub failures: Vec<String>,
}

#[derive(Default)]
struct Tally {
    checks: u64,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 50 {
            self.failures.push(what());
        } else if !ok {
            self.failures.truncate(50);
        }
    }

    fn finish(self, id: u8, name: &'static str) -> CriterionReport {
        CriterionReport { id, name, passed: self.failures.is_empty() && self.checks > 0, checks: self.checks, failures: self.failures }
    }
}

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "depth bounds"),
    (2, "torus intersection oracle"),
    (3, "flip soundness"),
    (4, "preservation lemmas"),
    (5, "curve complex reduction"),
    (6, "separating curves"),
    (7, "two-algorithm agreement"),
    (8, "stratification axioms"),
    (9, "dimension formulas"),
];

/// Run one criterion by number.
pub fn run(id: u8, opts: &Options) -> Result<CriterionReport> {
    let name = CRITERIA.iter().find(|c| c.0 == id).map_or("", |c| c.1);
    let tally = match id {
        1 => depth_bounds()?,
        2 => torus_oracle()?,
        3 => flip_soundness(opts)?,
        4 => preservation()?,
        5 => reduction()?,
        6 => separating()?,
        7 => agreement()?,
        8 => axioms()?,
        9 => dimensions(),
        _ => return Err(crate::Error::InvalidInput(format!("no criterion {id}; expected 1 to 9"))),
    };
    Ok(tally.finish(id, name))
}

pub fn run_all(opts: &Options) -> Result<Vec<CriterionReport>> {
    CRITERIA.iter().map(|&(id, _)| run(id, opts)).collect()
}

fn poset(name: &str, limit: u64) -> Result<StrataPoset> {
    enumerate_strata(&fixture(name)?, limit, &EnumerateOptions::default())
}

fn depth_bounds() -> Result<Tally> {
    let mut t = Tally::default();
    for name in ["s_0_5", "s_1_2"] {
        let p = poset(name, WINDOW)?;
        let sig = p.triangulation().signature();
        let xi = sig.complexity() as usize;
        let pants = Support::new(p.triangulation(), pants_decomposition(name)?, CAP)?;
        t.check(p.find(&pants).is_some(), || format!("{name}: window misses the pants decomposition"));
        t.check(p.max_depth() == xi - 1, || format!("{name}: max depth {} != {}", p.max_depth(), xi - 1));
        for s in p.strata() {
            t.check(s.depth + 1 == s.cone_dim, || format!("{name}: stratum {} depth {} with k={}", s.id, s.depth, s.cone_dim));
            t.check((s.depth == xi - 1) == (s.cone_dim == xi), || format!("{name}: stratum {} attains the bound wrongly", s.id));
        }
    }
    Ok(t)
}

fn torus_oracle() -> Result<Tally> {
    let mut t = Tally::default();
    let mut slopes = Vec::new();
    for p in -8i64..=8 {
        for q in 0i64..=8 {
            if num_integer_gcd(p.unsigned_abs(), q as u64) == 1 && (q > 0 || p == 1) {
                slopes.push((p, q));
            }
        }
    }
    let curves: Vec<Multicurve> = slopes.iter().map(|&(p, q)| torus_slope(p, q)).collect::<Result<_>>()?;
    let rows: Vec<Vec<(bool, String)>> = curves
        .par_iter()
        .zip(&slopes)
        .map(|(a, &(p, q))| {
            curves
                .iter()
                .zip(&slopes)
                .map(|(b, &(r, s))| {
                    let want = BigUint::from((p * s - q * r).unsigned_abs());
                    match intersection_number(a, b, CAP) {
                        Ok(i) if i == want => (true, String::new()),
                        Ok(i) => (false, format!("i({p}/{q}, {r}/{s}) = {i}, expected {want}")),
                        Err(e) => (false, format!("i({p}/{q}, {r}/{s}): {e}")),
                    }
                })
                .collect()
        })
        .collect();
    for (ok, msg) in rows.into_iter().flatten() {
        t.check(ok, || msg);
    }
    Ok(t)
}

fn num_integer_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_integer_gcd(b, a % b)
    }
}

/// Random valid coordinates: sums of a few curves and puncture links.
pub fn random_coords(rng: &mut ChaCha8Rng, basis: &[NormalCoords]) -> Result<NormalCoords> {
    let mut acc = NormalCoords::zero(basis[0].triangulation().clone());
    for _ in 0..rng.gen_range(1..=3) {
        let b = &basis[rng.gen_range(0..basis.len())];
        acc = acc.add(&b.scaled(&BigUint::from(rng.gen_range(1u32..=3))))?;
    }
    Ok(acc)
}

/// Curves plus puncture links, counted with multiplicity.
fn component_count(c: &NormalCoords) -> Result<u64> {
    let links: u64 = c.peripheral_multiplicities().iter().map(|m| m.to_u64().unwrap_or(u64::MAX)).sum();
    let (rest, _) = strip_peripheral(c.triangulation(), c.weights().to_vec())?;
    let curves: u64 = decompose(&rest, CAP)?.iter().map(|x| x.1).sum();
    Ok(links + curves)
}

fn essential(c: &NormalCoords) -> Result<Multicurve> {
    Ok(strip_peripheral(c.triangulation(), c.weights().to_vec())?.0)
}

fn flip_soundness(opts: &Options) -> Result<Tally> {
    let mut t = Tally::default();
    for (f, name) in FIXTURE_NAMES.iter().enumerate() {
        let tri = fixture(name)?;
        let mut basis: Vec<NormalCoords> =
            enumerate_vertices(&tri, 4)?.into_iter().map(Multicurve::into_coords).collect();
        basis.extend((0..tri.vertex_count()).map(|v| vertex_link(&tri, v)));
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(f as u64));
        let samples: Vec<(NormalCoords, NormalCoords, usize)> = (0..opts.samples)
            .map(|_| {
                let a = random_coords(&mut rng, &basis)?;
                let b = random_coords(&mut rng, &basis)?;
                Ok((a, b, rng.gen_range(0..tri.edge_count())))
            })
            .collect::<Result<_>>()?;
        let results: Vec<Vec<(bool, String)>> =
            samples.par_iter().map(|(a, b, e)| flip_checks(&tri, a, b, *e, name)).collect::<Result<_>>()?;
        for (ok, msg) in results.into_iter().flatten() {
            t.check(ok, || msg);
        }
    }
    Ok(t)
}

fn flip_checks(
    tri: &Arc<Triangulation>,
    a: &NormalCoords,
    b: &NormalCoords,
    e: usize,
    name: &str,
) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let Ok(step) = FlipStep::new(tri, e) else {
        return Ok(out);
    };
    let back = FlipStep::new(&step.target, e)?;
    let fa = a.transport_flip(&step)?;
    let fb = b.transport_flip(&step)?;
    let label = |what: &str| format!("{name} edge {e} {a:?}: {what}");
    out.push((fa.transport_flip(&back)?.weights() == a.weights(), label("double flip")));
    out.push((NormalCoords::new(step.target.clone(), fa.weights().to_vec()).is_ok(), label("validity")));
    out.push((component_count(a)? == component_count(&fa)?, label("component count")));
    let (ea, eb) = (essential(a)?, essential(b)?);
    let (efa, efb) = (essential(&fa)?, essential(&fb)?);
    out.push((intersection_number(&ea, &eb, CAP)? == intersection_number(&efa, &efb, CAP)?, label("intersection")));
    Ok(out)
}

fn preservation() -> Result<Tally> {
    let mut t = Tally::default();
    for name in ["s_0_5", "s_1_2"] {
        let p = poset(name, WINDOW)?;
        for g in builtin_generators(name)? {
            let r = verify_preservation(&g.class, &p, CAP);
            for e in &r.entries {
                t.check(e.passed, || format!("{name} {} stratum {}: {} {}", g.name, e.stratum, e.check, e.detail));
            }
            t.check(r.automorphism != Some(false), || format!("{name} {}: induced map not an automorphism", g.name));
        }
    }
    Ok(t)
}

/// The smallest window containing every image of `vertices` under `f`.
fn image_bound(f: &dyn CurveAction, vertices: &[Multicurve]) -> Result<u64> {
    let mut k = 0;
    for v in vertices {
        k = k.max(f.act(v)?.total_weight().to_u64().unwrap_or(u64::MAX));
    }
    Ok(k)
}

fn reduction() -> Result<Tally> {
    let mut t = Tally::default();
    for name in FIXTURE_NAMES {
        let tri = fixture(name)?;
        let limit = WINDOW;
        let slice = build_slice(&enumerate_vertices(&tri, limit)?, CAP)?;
        let gens = builtin_generators(name)?;
        let mut bound = limit;
        for g in &gens {
            bound = bound.max(image_bound(&g.class, slice.vertices())?);
        }
        let target = build_slice(&enumerate_vertices(&tri, bound)?, CAP)?;
        for g in &gens {
            let m = induced_map(&g.class, &slice, &target, CAP)?;
            t.check(m.embeds(), || format!("{name} {}: {:?}", g.name, m.violations));
        }
        let xi = tri.signature().complexity() as usize;
        if name != "s_2_1" {
            t.check(slice.max_simplex_size() == xi, || format!("{name}: maximal simplex size {}", slice.max_simplex_size()));
        }
        t.check(slice.max_simplex_size() <= xi, || format!("{name}: simplex larger than {xi}"));
    }
    Ok(t)
}

fn separating() -> Result<Tally> {
    let mut t = Tally::default();
    let name = "s_1_2";
    let tri = fixture(name)?;
    let c = separating_curve(name)?.expect("catalog has one");
    let cut = cut_invariants(&c, CAP)?;
    let want = vec![Region { genus: 1, punctures: 0, boundary: 1 }, Region { genus: 0, punctures: 2, boundary: 1 }];
    t.check(cut.separating && cut.regions == want, || format!("cut of {c:?} is {:?}", cut.regions));
    let limit = 10;
    let vertices = enumerate_vertices(&tri, limit)?;
    let part = separating_classification(&vertices, CAP)?;
    t.check(!part.separating.is_empty(), || "no separating curve in the window".into());
    for g in builtin_generators(name)? {
        let bad = partition_violations(&g.class, &vertices, CAP)?;
        t.check(bad.is_empty(), || format!("{} moves the class of vertices {bad:?}", g.name));
    }
    Ok(t)
}

/// `i(T^k b, e)` for `k = 0..=depth`.
fn growth(tw: &crate::mcg::MappingClass, b: &Multicurve, e: &Multicurve, depth: usize) -> Result<Vec<BigUint>> {
    let mut cur = b.clone();
    let mut out = vec![intersection_number(&cur, e, CAP)?];
    for _ in 0..depth {
        cur = tw.apply_curve(&cur)?;
        out.push(intersection_number(&cur, e, CAP)?);
    }
    Ok(out)
}

/// Whether the sequence has constant differences from some index on, and that
/// difference.
pub fn stabilized_slope(seq: &[BigUint]) -> Option<BigUint> {
    let n = seq.len();
    if n < 3 {
        return None;
    }
    let (a, b, c) = (&seq[n - 3], &seq[n - 2], &seq[n - 1]);
    (a <= b && b <= c && c - b == b - a).then(|| c - b)
}

fn agreement() -> Result<Tally> {
    let mut t = Tally::default();
    for name in FIXTURE_NAMES {
        let tri = fixture(name)?;
        let curves = enumerate_vertices(&tri, WINDOW)?;
        let rows: Vec<Vec<(bool, String)>> = curves
            .par_iter()
            .map(|a| {
                curves
                    .iter()
                    .map(|b| {
                        let i = intersection_number(a, b, CAP)?;
                        let d = is_disjoint(a, b, CAP)?;
                        Ok((d == i.is_zero(), format!("{name} {a:?} {b:?}: disjoint {d}, i = {i}")))
                    })
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        for (ok, msg) in rows.into_iter().flatten() {
            t.check(ok, || msg);
        }
    }
    let mut triples = 0;
    for name in FIXTURE_NAMES {
        let tri = fixture(name)?;
        let curves = enumerate_vertices(&tri, 4)?;
        for c in twist_curves(name)? {
            let tw = twist(&c, CAP)?;
            for b in &curves {
                for e in &curves {
                    let seq = growth(&tw, b, e, 6)?;
                    let want = intersection_number(&c, b, CAP)? * intersection_number(&c, e, CAP)?;
                    let got = stabilized_slope(&seq);
                    t.check(got.as_ref() == Some(&want), || format!("{name} c={c:?} b={b:?} e={e:?}: {seq:?}, want slope {want}"));
                    triples += 1;
                }
            }
        }
    }
    t.check(triples >= 50, || format!("only {triples} twist triples"));
    Ok(t)
}

fn axioms() -> Result<Tally> {
    let mut t = Tally::default();
    for name in FIXTURE_NAMES {
        let p = poset(name, WINDOW)?;
        let r = check_stratification_axioms(&p);
        for v in &r.violations {
            t.check(false, || format!("{name}: {} {:?} {}", v.axiom, v.strata, v.detail));
        }
        t.check(r.passed(), || format!("{name}: axioms fail"));
        let g = p.generic();
        for s in p.strata() {
            let d = generic_depth(&g, s.id)?;
            t.check(d + 1 == s.cone_dim, || format!("{name} stratum {}: chain depth {d}, k = {}", s.id, s.cone_dim));
        }
    }
    // a genuine symmetry is an automorphism; corrupting it is caught
    let name = "s_0_5";
    let p = poset(name, WINDOW)?;
    let r = crate::mcg::reflection(&fixture(name)?)?;
    let sigma = induced_sigma(&r, &p)?;
    t.check(sigma.as_ref().is_some_and(|s| check_poset_automorphism(&p.generic(), s) == Ok(true)), || {
        "reflection does not induce an automorphism".into()
    });
    if let Some(mut s) = sigma {
        let high = p.strata().iter().position(|x| x.cone_dim == 2).expect("pants in window");
        let low = p.strata().iter().position(|x| x.cone_dim == 1).expect("curves in window");
        s.swap(high, low);
        t.check(check_poset_automorphism(&p.generic(), &s) == Ok(false), || "corrupted map accepted".into());
    }
    let n = p.triangulation().edge_count();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(0, 1);
    let bad = WeightPermutation { frame: p.triangulation().clone(), perm };
    let rep = verify_preservation(&bad, &p, CAP);
    t.check(!rep.passed(), || "weight permutation passes preservation".into());
    t.check(
        !matches!(induced_sigma(&bad, &p)?, Some(s) if check_poset_automorphism(&p.generic(), &s) == Ok(true)),
        || "weight permutation induces an automorphism".into(),
    );
    Ok(t)
}

/// The index map an action induces on strata, if every image is a stratum.
pub fn induced_sigma(f: &dyn CurveAction, p: &StrataPoset) -> Result<Option<Vec<usize>>> {
    let mut sigma = Vec::with_capacity(p.len());
    for s in p.strata() {
        let mut image = Vec::new();
        for c in s.support.components() {
            let Ok(m) = f.act(c).and_then(Multicurve::try_from) else { return Ok(None) };
            image.push(m);
        }
        let Ok(support) = Support::new(p.triangulation(), image, CAP) else { return Ok(None) };
        match p.find(&support) {
            Some(i) => sigma.push(i),
            None => return Ok(None),
        }
    }
    Ok(Some(sigma))
}

fn dimensions() -> Tally {
    let mut t = Tally::default();
    for ((g, n), want) in [((0, 5), (4, 3, 2)), ((1, 2), (4, 3, 2)), ((2, 1), (8, 7, 6))] {
        let d = dim_formulas(g, n, None);
        t.check((d.ml, d.pml, d.u_curve) == want, || format!("({g},{n}): {d:?}"));
    }
    let d = dim_formulas(2, 1, Some((1, 0, 1)));
    t.check(d.u_minimal == Some(-3) && d.degenerate, || format!("(1,0,1): {d:?}"));
    t
}
