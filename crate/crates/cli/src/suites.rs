//! The invariant suites behind `stcalc verify`.

use std::sync::Arc;

use anyhow::Context;
use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use stcalc_core::hecke::{char_thm43, steinberg_module};
use stcalc_core::{
    c_w, facet_euler_check, unipotent_expansion, AffineElt, AffineWeylGroup, CartanType, Cochar,
    Dominance, HeckeAlgebra, HeckeElt, LaurentPoly, RootDatum, SteinbergCalculator, UnipotentData,
};

use crate::output::Output;
use crate::{parse_affine, parse_datum, Caps, VerifyArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Alternating sum, x_w form and closed form agree on a grid of dominant y.
    Thm22,
    /// c_w is 1 at the longest element and 0 elsewhere.
    Cw,
    /// Iwahori-Matsumoto length equals Cayley-graph distance.
    Length,
    /// Quadratic relation, additive products and associativity.
    Hecke,
    /// Signed facet count equals (-1)^rank.
    Euler,
    /// Leading term of the unipotent expansion.
    Unipotent,
    /// Parabolic split value equals the closed form.
    Cor34,
}

pub const GRID_TYPES: &[&str] = &["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4"];

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: usize,
    pub data: Vec<String>,
    pub counterexample: Option<Value>,
}

impl SuiteReport {
    pub fn into_output(self) -> Output {
        let name = serde_json::to_value(self.suite).expect("suite serializes");
        let name = name.as_str().unwrap_or_default().to_string();
        let verdict = if self.passed { "pass" } else { "FAIL" };
        let cx = self.counterexample.as_ref().map(|v| v.to_string()).unwrap_or_default();
        let row = vec![name, verdict.to_string(), self.checks.to_string(), self.data.join(" "), cx];
        let js = serde_json::to_value(&self).expect("report serializes");
        Output::table(js, &["suite", "result", "checks", "data", "counterexample"], vec![row])
    }
}

struct Tally {
    checks: usize,
    counterexample: Option<Value>,
}

impl Tally {
    fn new() -> Self {
        Self { checks: 0, counterexample: None }
    }

    /// Records one check; keeps the first failure.
    fn check(&mut self, holds: bool, cx: impl FnOnce() -> Value) {
        self.checks += 1;
        if !holds && self.counterexample.is_none() {
            self.counterexample = Some(cx());
        }
    }

    fn failed(&self) -> bool {
        self.counterexample.is_some()
    }
}

/// Datum strings to sweep: explicit types (both lattices unless a lattice is given)
/// or the suite default.
fn datum_specs(args: &VerifyArgs, default: &[&str], both_lattices: bool) -> Vec<String> {
    let types: Vec<String> = match &args.types {
        Some(t) => t.clone(),
        None => default.iter().map(|s| s.to_string()).collect(),
    };
    types
        .into_iter()
        .flat_map(|t| {
            if t.contains(':') || !both_lattices {
                vec![t]
            } else {
                vec![t.clone(), format!("{t}:adjoint")]
            }
        })
        .collect()
}

fn types_up_to(args: &VerifyArgs, rank: usize) -> Vec<String> {
    match &args.types {
        Some(t) => t.clone(),
        None => CartanType::all_up_to_rank(rank).iter().map(|c| c.to_string()).collect(),
    }
}

fn dominant_grid(d: &RootDatum, max: i64) -> Vec<(Vec<i64>, Cochar)> {
    let r = d.rank();
    let mut out = Vec::new();
    let mut coords = vec![0i64; r];
    loop {
        let y = d.cochar(&coords).expect("basis coordinates always give an element of Y");
        if d.dominance(&y).is_dominant() {
            out.push((coords.clone(), y));
        }
        let mut i = 0;
        while i < r && coords[i] == max {
            coords[i] = 0;
            i += 1;
        }
        if i == r {
            return out;
        }
        coords[i] += 1;
    }
}

pub fn run_suite(args: &VerifyArgs, caps: &Caps) -> anyhow::Result<SuiteReport> {
    let mut tally = Tally::new();
    let data = match args.suite {
        Suite::Thm22 => {
            let specs = datum_specs(args, GRID_TYPES, true);
            for spec in &specs {
                let calc = SteinbergCalculator::new(parse_datum(spec, caps)?);
                for (coords, y) in dominant_grid(calc.datum(), args.ymax) {
                    let [a, b, c] = calc.all_methods(&y)?;
                    tally.check(a.value == b.value && a.value == c.value, || {
                        json!({ "datum": spec, "y": coords, "closed-form": a.value,
                                "alternating-sum": b.value, "xw-collapse": c.value })
                    });
                }
            }
            specs
        }
        Suite::Cor34 => {
            let specs = datum_specs(args, GRID_TYPES, true);
            for spec in &specs {
                let calc = SteinbergCalculator::new(parse_datum(spec, caps)?);
                for (coords, y) in dominant_grid(calc.datum(), args.ymax) {
                    let a = calc.corollary34_split(&y)?.value;
                    let b = calc.closed_form(&y)?.value;
                    tally.check(a == b, || json!({ "datum": spec, "y": coords, "cor34": a, "closed-form": b }));
                }
            }
            specs
        }
        Suite::Cw => {
            let specs = types_up_to(args, caps.max_rank.min(4));
            for spec in &specs {
                let g = parse_datum(spec, caps)?;
                for w in g.ids() {
                    let expected = i64::from(w == g.longest());
                    let got = c_w(&g, w);
                    tally.check(got == expected, || json!({ "datum": spec, "w": g.format_word(w), "c_w": got }));
                }
            }
            specs
        }
        Suite::Euler => {
            let specs = types_up_to(args, caps.max_rank);
            for spec in &specs {
                let report = facet_euler_check(&*parse_datum(spec, caps)?);
                tally.check(report.holds, || serde_json::to_value(&report).expect("report serializes"));
            }
            specs
        }
        Suite::Length => {
            let specs = datum_specs(args, &["A1", "A2", "C2"], true);
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            for spec in &specs {
                let g = parse_affine(spec, caps)?;
                length_suite(&g, spec, args.radius, args.samples.unwrap_or(50), &mut rng, &mut tally)?;
            }
            specs
        }
        Suite::Hecke => {
            let specs = datum_specs(args, &["A1", "A2", "B2", "G2"], true);
            let groups = specs
                .iter()
                .map(|s| parse_affine(s, caps))
                .collect::<anyhow::Result<Vec<_>>>()?;
            hecke_suite(&groups, args.samples.unwrap_or(500), args.seed, &mut tally);
            specs
        }
        Suite::Unipotent => {
            let specs = types_up_to(args, caps.max_rank.min(3));
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            for spec in &specs {
                let g = parse_datum(spec, caps)?;
                let npos = g.datum().positive_roots().count();
                for _ in 0..args.samples.unwrap_or(100) {
                    let n: Vec<u64> = (0..npos).map(|_| rng.gen_range(1..=6)).collect();
                    let u = UnipotentData::new(g.datum(), n.clone())?;
                    let value = unipotent_expansion(&g, &u);
                    let lead = value.leading()?;
                    let expected = (u.total() as i64, (g.order() as i64).into());
                    tally.check(lead == expected, || json!({ "datum": spec, "n": n, "value": value }));
                }
            }
            specs
        }
    };
    Ok(SuiteReport {
        suite: args.suite,
        passed: !tally.failed(),
        checks: tally.checks,
        data,
        counterexample: tally.counterexample,
    })
}

fn length_suite(
    g: &AffineWeylGroup,
    spec: &str,
    radius: usize,
    samples: usize,
    rng: &mut ChaCha8Rng,
    tally: &mut Tally,
) -> anyhow::Result<()> {
    let ball = g.ball(radius).with_context(|| format!("{spec}: ball of radius {radius}"))?;
    let mut entries: Vec<(&AffineElt, &usize)> = ball.iter().collect();
    entries.sort();
    for (a, dist) in entries {
        let l = g.im_length(a);
        tally.check(l == *dist, || json!({ "datum": spec, "element": g.format(a), "bfs": dist, "formula": l }));
    }
    let d = g.datum();
    let mut found = 0;
    while found < samples {
        let coords: Vec<i64> = (0..d.rank()).map(|_| rng.gen_range(-4..=12)).collect();
        let y = d.cochar(&coords)?;
        if d.dominance(&y) != Dominance::StrictlyDominant {
            continue;
        }
        let l = g.im_length(&g.translation(&y)) as i64;
        let p = d.pair_two_rho(&y);
        tally.check(l == p, || json!({ "datum": spec, "y": coords, "length": l, "pairing_2rho": p }));
        found += 1;
    }
    Ok(())
}

fn random_elt(g: &AffineWeylGroup, rng: &mut ChaCha8Rng, max_len: usize) -> AffineElt {
    let len = rng.gen_range(0..=max_len);
    let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..g.num_generators())).collect();
    g.compose(&word, rng.gen_range(0..g.omega().len()))
}

fn random_hecke(g: &AffineWeylGroup, rng: &mut ChaCha8Rng) -> HeckeElt {
    let mut h = HeckeElt::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let c = LaurentPoly::monomial(rng.gen_range(-3i64..=3), 2 * rng.gen_range(-1i64..=1));
        h.add_term(random_elt(g, rng, 4), c);
    }
    h
}

fn hecke_suite(groups: &[Arc<AffineWeylGroup>], samples: usize, seed: u64, tally: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let algebras: Vec<HeckeAlgebra> = groups.iter().map(|g| HeckeAlgebra::new(g.clone())).collect();
    let q = LaurentPoly::q();
    for h in &algebras {
        let g = h.group();
        let name = g.datum().spec().to_string();
        for k in 0..g.num_generators() {
            let t = HeckeElt::basis(g.generator(k).clone());
            let rhs = t.scale(&(&q - &LaurentPoly::one())).add(&h.one().scale(&q));
            tally.check(h.mul(&t, &t) == rhs, || json!({ "datum": name, "quadratic": format!("s{k}") }));
        }
        let sign = steinberg_module(g);
        let at_zero = char_thm43(g, &Cochar::zero(g.rank()), &sign).map(|v| v.is_one());
        tally.check(at_zero.unwrap_or(false), || json!({ "datum": name, "sign module at y=0": false }));
    }
    for i in 0..samples {
        let h = &algebras[i % algebras.len()];
        let g = h.group();
        let c = random_elt(g, &mut rng, 10);
        let dec = g.decompose(&c);
        let cut = rng.gen_range(0..=dec.word.len());
        let a = g.compose(&dec.word[..cut], 0);
        let b = g.compose(&dec.word[cut..], dec.omega);
        let ab = g.mul(&a, &b);
        let additive = g.im_length(&ab) == g.im_length(&a) + g.im_length(&b);
        let holds = additive && h.mul_basis(&a, &b) == HeckeElt::basis(ab);
        tally.check(holds, || {
            json!({ "datum": g.datum().spec().to_string(), "a": g.format(&a), "b": g.format(&b) })
        });
    }
    for i in 0..(samples * 2 / 5) {
        let h = &algebras[i % algebras.len()];
        let g = h.group();
        let (x, y, z) = (random_hecke(g, &mut rng), random_hecke(g, &mut rng), random_hecke(g, &mut rng));
        let holds = h.mul(&h.mul(&x, &y), &z) == h.mul(&x, &h.mul(&y, &z));
        tally.check(holds, || {
            json!({ "datum": g.datum().spec().to_string(), "x": x.to_string(), "y": y.to_string(), "z": z.to_string() })
        });
    }
}
