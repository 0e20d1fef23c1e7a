//! The acceptance checks, runnable from tests and from the CLI.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{self, CensusTables};
use crate::construct::{self, CaseTag};
use crate::eform;
use crate::error::Result;
use crate::gf::FieldCtx;
use crate::linspace::{self, Subspace};
use crate::certify;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    /// Trivial-field sanity checks only.
    Smoke,
    /// Every acceptance criterion.
    Desk,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: String,
    pub pass: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!("[{}] {:>2} {}: {}", if self.pass { "PASS" } else { "FAIL" }, self.id, self.title, self.detail)
    }
}

/// Running tally of certificate containment over every examined pair.
#[derive(Default)]
struct CertTally {
    pairs: u64,
    violations: u64,
}

impl CertTally {
    fn check(&mut self, ctx: &FieldCtx, a: &Subspace, b: &Subspace) -> Result<()> {
        let r = certify::verify_bounds(ctx, a, b)?;
        self.pairs += 1;
        self.violations += (!r.certificate_ok) as u64;
        Ok(())
    }

    fn check_tables(&mut self, t: &CensusTables) -> Result<()> {
        for i in 0..t.len() {
            for j in 0..t.len() {
                self.pairs += 1;
                self.violations += (!t.certificate_holds(i, j)?) as u64;
            }
        }
        Ok(())
    }
}

pub fn run(level: Level, seed: u64, mut report: impl FnMut(&CriterionResult)) -> Result<Vec<CriterionResult>> {
    let mut out = Vec::new();
    let mut push = |r: CriterionResult| {
        report(&r);
        out.push(r);
    };
    match level {
        Level::Smoke => smoke(&mut push)?,
        Level::Desk => desk(seed, &mut push)?,
    }
    Ok(out)
}

fn smoke(push: &mut impl FnMut(CriterionResult)) -> Result<()> {
    let f2 = FieldCtx::new(2, 1, 1)?;
    let ok = f2.modulus() == [1, 1] && f2.inv(f2.one())? == f2.one() && f2.add(f2.one(), f2.one()).is_zero();
    push(CriterionResult { id: 0, title: "F_2 arithmetic".into(), pass: ok, detail: format!("modulus {:?}", f2.modulus()) });
    let f9 = FieldCtx::new(3, 2, 1)?;
    let s = Subspace::span(&f9, &f9.elements().collect::<Vec<_>>());
    let a = linspace::qpoly_from_subspace(&f9, &s)?;
    let ok = a.qcoeffs() == [f9.minus_one(), f9.zero(), f9.one()];
    push(CriterionResult { id: 0, title: "F_9 subspace polynomial".into(), pass: ok, detail: a.format(&f9) });
    Ok(())
}

fn result(id: u8, title: &str, pass: bool, detail: String) -> CriterionResult {
    CriterionResult { id, title: title.into(), pass, detail }
}

fn case_count(ctx: &FieldCtx, case: CaseTag, cert: &mut CertTally) -> Result<u64> {
    let (a, b) = construct::find_case_parameters(ctx, case)?;
    let (_, sa, sb) = construct::make_special_pair(ctx, 3, a, b)?;
    cert.check(ctx, &sa, &sb)?;
    Ok(linspace::inverse_intersection_bruteforce(ctx, &sa, &sb)?.count as u64)
}

fn desk(seed: u64, push: &mut impl FnMut(CriterionResult)) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cert = CertTally::default();
    let f3 = FieldCtx::parse("3^1:4")?;
    let f5 = FieldCtx::parse("5^1:4")?;
    let f4 = FieldCtx::parse("2^2:8")?;

    let t = Instant::now();
    let c = case_count(&f3, CaseTag::External, &mut cert)?;
    let secs = t.elapsed().as_secs_f64();
    push(result(1, "external case q=3", c == 16 && secs < 1.0, format!("count {c} (expected 16), {secs:.3}s")));

    let c3 = case_count(&f3, CaseTag::Secant, &mut cert)?;
    let c5 = case_count(&f5, CaseTag::Secant, &mut cert)?;
    push(result(2, "secant case q=3,5", c3 == 12 && c5 == 40, format!("counts {c3}, {c5} (expected 12, 40)")));

    let c = case_count(&f4, CaseTag::Tangent, &mut cert)?;
    push(result(3, "tangent case q=4", c == 27, format!("count {c} (expected 27)")));

    let t5 = CensusTables::new(&f5, classify::enumerate_subspaces(&f5, 3, 4)?)?;
    let census5 = census_of(&t5, 5, 3);
    cert.check_tables(&t5)?;
    let n40 = census5.counts.get(&40).copied().unwrap_or(0);
    push(result(
        4,
        "F_{5^4} census count 40",
        n40 == 248,
        format!("{} subspaces, census[40] = {n40} (expected 248), full census {:?}", t5.len(), census5.counts),
    ));

    let mut details = Vec::new();
    let mut pass5 = true;
    for (ctx, want_total, want_self) in [(&f3, 78, 6), (&f4, 84, 4), (&f5, 310, 10)] {
        let r = classify::field_pair_count(ctx)?;
        pass5 &= r.total_pairs == want_total && r.self_paired == want_self;
        details.push(format!(
            "q={}: {} pairs (expected {want_total}), {} self-paired (expected {want_self})",
            r.q, r.total_pairs, r.self_paired
        ));
        for g in [ctx.one(), ctx.generator()] {
            let alpha = first_trace_alpha(ctx);
            let (a, b) = construct::corollary_pair(ctx, alpha, g)?;
            cert.check(ctx, &a, &b)?;
        }
    }
    push(result(5, "corollary family pair counts", pass5, details.join("; ")));

    let mut details = Vec::new();
    let mut pass6 = true;
    for (spec, target, want) in [("3^1:4", 16, 1), ("7^1:4", 84, 4), ("2^3:12", 119, 8)] {
        let ctx = FieldCtx::parse(spec)?;
        let r = classify::orbit_census(&ctx, target)?;
        let by_action = r.classes_by_action.len() as u64;
        pass6 &= r.classes == want && by_action == want && r.classes_by_action.iter().all(|c| c.count == target);
        details.push(format!("q={} target {target}: {} classes, {by_action} by action (expected {want})", r.q, r.classes));
        let cl = &r.classes_by_action[0];
        let (_, sa, sb) = construct::make_special_pair(&ctx, 3, cl.a, cl.b)?;
        cert.check(&ctx, &sa, &sb)?;
    }
    push(result(6, "orbit counts", pass6, details.join("; ")));

    let t2 = CensusTables::new(&f3, classify::enumerate_subspaces(&f3, 2, 4)?)?;
    let census2 = census_of(&t2, 3, 2);
    cert.check_tables(&t2)?;
    let ratios: Vec<u64> = census2.counts.keys().map(|c| c / 2).collect();
    let pass7 = census2.counts.keys().all(|c| c % 2 == 0 && [0, 1, 2, 4].contains(&(c / 2)));
    push(result(7, "two-dimensional spectrum q=3", pass7, format!("ratios {ratios:?} over {} pairs", census2.total_pairs())));

    let f64_ = FieldCtx::parse("2^1:6")?;
    let t8 = CensusTables::new(&f64_, classify::enumerate_subspaces(&f64_, 3, 6)?)?;
    let census8 = census_of(&t8, 2, 3);
    cert.check_tables(&t8)?;
    let max_exh = census8.max_non_subfield().unwrap_or(0);
    let f4096 = FieldCtx::parse("2^1:12")?;
    let mut max_rand = 0;
    let samples = 10_000;
    for _ in 0..samples {
        let a = Subspace::random(&f4096, 3, &mut rng)?;
        let b = Subspace::random(&f4096, 3, &mut rng)?;
        let r = certify::verify_bounds(&f4096, &a, &b)?;
        cert.pairs += 1;
        cert.violations += (!r.certificate_ok) as u64;
        if !r.subfield_case {
            max_rand = max_rand.max(r.count);
        }
    }
    push(result(
        8,
        "q=2 bound 3|B|/4-1",
        max_exh <= 5 && max_rand <= 5,
        format!(
            "exhaustive F_64: {} pairs, max non-subfield {max_exh}; {samples} random in F_4096: max {max_rand} (bound 5)",
            census8.total_pairs()
        ),
    ));

    push(result(
        9,
        "certificate containment",
        cert.violations == 0,
        format!("{} pairs checked, {} violations", cert.pairs, cert.violations),
    ));

    let w5 = classify::weil_gap_check(&census5);
    let t4 = CensusTables::new(&f4, classify::enumerate_subspaces(&f4, 3, 4)?)?;
    let census4 = census_of(&t4, 4, 3);
    let w4 = classify::weil_gap_check(&census4);
    let pass10 = w5.pass && w5.above.keys().all(|&r| r == 12) && !w5.above.is_empty() && w4.pass && w4.above.is_empty();
    let max4 = census4.max_non_subfield().unwrap_or(0) / 3;
    push(result(
        10,
        "Weil gap q=5,4",
        pass10,
        format!(
            "q=5 ratios above {}: {:?}; q=4 ratios above {}: {:?}, max ratio {max4}",
            w5.threshold,
            w5.above.keys().collect::<Vec<_>>(),
            w4.threshold,
            w4.above.keys().collect::<Vec<_>>()
        ),
    ));

    let mut details = Vec::new();
    let mut violations = 0;
    for (spec, d) in [("2^1:6", 4), ("3^1:6", 4)] {
        let ctx = FieldCtx::parse(spec)?;
        let params = construct::splitting_parameters(&ctx, d)?;
        let mut max = 0;
        for _ in 0..1000 {
            let a = *params.choose(&mut rng).expect("nonempty");
            let b = *params.choose(&mut rng).expect("nonempty");
            let r = construct::qd_configuration_bound(&ctx, d, a, b)?;
            violations += (!r.within_bound) as u64;
            max = max.max(r.count);
        }
        details.push(format!("q={} d={d}: max {max} (bound {})", ctx.q(), construct::qd_bound(ctx.q(), d)));
    }
    push(result(11, "q^d configuration bound", violations == 0, format!("{}; {violations} violations", details.join("; "))));

    let ids: Vec<[bool; 2]> = [2, 3, 5].iter().map(|&p| eform::verify_exceptional_identities(p)).collect::<Result<_>>()?;
    let ids_ok = ids.iter().all(|r| r[0] && r[1]);
    let f = FieldCtx::parse("3^1:6")?;
    let (mut subst_ok, mut triples_ok) = (0, 0);
    for _ in 0..20 {
        let a = linspace::qpoly_from_subspace(&f, &Subspace::random(&f, 3, &mut rng)?)?;
        let sb = Subspace::random(&f, 3, &mut rng)?;
        let b = linspace::qpoly_from_subspace(&f, &sb)?;
        let e = eform::e_of_pair(&f, &a, &b)?;
        subst_ok += (e.to_univariate(&f) == certify::certificate_c0(&f, &a, &b)?) as u32;
        let t = eform::frobenius_conjugate_points(&f, &a, &b, &sb)?;
        let ok = t.vanish_on_e.iter().all(|&v| v)
            && t.vanish_on_conjugate.iter().all(|&v| v)
            && t.rational.iter().all(|&r| !r);
        triples_ok += ok as u32;
    }
    push(result(
        12,
        "E-form identities",
        ids_ok && subst_ok == 20 && triples_ok == 20,
        format!("exceptional identities p=2,3,5: {ids:?}; substitution 20/20 needed, got {subst_ok}; triples {triples_ok}/20"),
    ));
    Ok(())
}

fn census_of(t: &CensusTables, q: u64, d: usize) -> classify::Census {
    let mut counts = BTreeMap::new();
    for i in 0..t.len() {
        classify::merge_tally(&mut counts, &t.tally_row(i));
    }
    classify::Census::from_tally(q, d, counts)
}

fn first_trace_alpha(ctx: &FieldCtx) -> crate::gf::FieldElem {
    let q = ctx.q();
    ctx.elements()
        .find(|&a| {
            let s = ctx.mul(a, a);
            !a.is_zero() && ctx.pow(s, q * q) == s && !ctx.in_fq(s)
        })
        .expect("F_{q^4} has such elements")
}
