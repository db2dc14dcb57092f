//! The ten acceptance criteria, one PASS/FAIL line each.
//!
//! Criterion 6 is a known discrepancy: three of the listed size-6 genes
//! have nonzero products of degree `2m - 1`. Its line reads FAIL, and the
//! run only errors if the computed result differs from the documented one.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ngon_tc::cohomology::CohContext;
use ngon_tc::combinatorics::SubsetMask;
use ngon_tc::f2::{BitVec, Echelon};
use ngon_tc::monogenic::{count_rm_zero, phi_closed_form, GapVector};
use ngon_tc::polygon::{enumerate_codes, realize, GeneticCode, LengthVector};
use ngon_tc::suites;
use ngon_tc::tc::{
    classify_support, top_certificate, verify_certificate, zcl_search, ReportOptions, SupportCase, ZeroDivisorProduct,
};

enum Status {
    Pass,
    Fail,
    /// Fails the stated target in the documented way.
    Known,
}

struct Outcome {
    status: Status,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { status: Status::Pass, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { status: Status::Fail, detail: detail.into() }
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn codes_up_to(n: u32) -> Vec<GeneticCode> {
    (4..=n).flat_map(|k| enumerate_codes(k).unwrap()).collect()
}

fn counts() -> Outcome {
    let got: Vec<(u32, usize)> = (6..=8).map(|n| (n, enumerate_codes(n).unwrap().len())).collect();
    check(got == [(6, 20), (7, 134), (8, 2469)], format!("{got:?}"))
}

fn table1() -> Outcome {
    let got: Vec<(u64, u64)> = (3..=6).map(|k| count_rm_zero(k).unwrap()).collect();
    check(got == [(32, 20), (256, 128), (2048, 1216), (16384, 9600)], format!("{got:?}"))
}

/// Exceptional codes of a sweep, after checking every certificate two ways.
fn sweep_exceptions(n: u32) -> Result<Vec<String>, String> {
    let reports = suites::sweep(n, &ReportOptions::default()).map_err(|e| e.to_string())?;
    for r in &reports {
        if let Some(c) = &r.certificate {
            let ctx = CohContext::new(&c.code.parse().unwrap());
            if !verify_certificate(c).unwrap() || !common::oracle_nonzero(&ctx, &c.product()) {
                return Err(format!("certificate for {} does not verify", r.code));
            }
        }
        if r.special_case.is_none() && r.tc_lower > 2 * n - 6 {
            return Err(format!("{} has tc_lower {} above 2n-6", r.code, r.tc_lower));
        }
    }
    for r in reports.iter().filter(|r| r.exceptional) {
        let ctx = CohContext::new(&r.code.parse().unwrap());
        if zcl_search(&ctx, 2 * ctx.m() - 1).unwrap().is_some() {
            return Err(format!("{} is flagged but has a top product", r.code));
        }
    }
    Ok(suites::exceptional_codes(&reports))
}

fn sweep(n: u32, want: &[&str]) -> Outcome {
    match sweep_exceptions(n) {
        Ok(got) => check(got == want, format!("exceptional {got:?}")),
        Err(e) => fail(e),
    }
}

/// Computed exceptional genes, listed ones not computed, computed ones not listed.
type GeneDiff = (Vec<String>, Vec<String>, Vec<String>);

fn genes(size: u32, want: &[&str]) -> Result<GeneDiff, String> {
    let got =
        suites::monogenic_exceptions(size, suites::monogenic_search_limit(size - 1)).map_err(|e| e.to_string())?;
    let missing: Vec<String> = want.iter().filter(|g| !got.iter().any(|x| x == *g)).map(|s| s.to_string()).collect();
    let extra: Vec<String> = got.iter().filter(|g| !want.contains(&g.as_str())).cloned().collect();
    Ok((got, missing, extra))
}

fn size5() -> Outcome {
    match genes(5, &suites::SIZE5_EXCEPTIONAL) {
        Ok((got, missing, extra)) => check(missing.is_empty() && extra.is_empty(), format!("exceptional {got:?}")),
        Err(e) => fail(e),
    }
}

fn size6() -> Outcome {
    const DISPUTED: [&str; 3] = ["T98321", "E98321", "E98721"];
    let (got, missing, extra) = match genes(6, &suites::SIZE6_EXCEPTIONAL) {
        Ok(x) => x,
        Err(e) => return fail(e),
    };
    if missing.is_empty() && extra.is_empty() {
        return pass(format!("exceptional {got:?}"));
    }
    if !extra.is_empty() || missing.iter().map(String::as_str).collect::<BTreeSet<_>>() != BTreeSet::from(DISPUTED) {
        return fail(format!("computed {got:?}, missing {missing:?}, extra {extra:?}"));
    }
    for g in DISPUTED {
        let ctx = CohContext::new(&g.parse().unwrap());
        let Some(c) = top_certificate(&ctx).unwrap() else { return fail(format!("{g}: no certificate")) };
        if !verify_certificate(&c).unwrap() || !common::oracle_nonzero(&ctx, &c.product()) {
            return fail(format!("{g}: certificate {} does not verify", c.product()));
        }
    }
    Outcome {
        status: Status::Known,
        detail: format!(
            "computed {} of the 12 listed genes; {} have verified nonzero products of degree 2m-1",
            got.len(),
            DISPUTED.join(", ")
        ),
    }
}

fn closed_form() -> Outcome {
    let mut monomials = 0;
    for code in codes_up_to(8).into_iter().filter(GeneticCode::is_monogenic) {
        let ctx = CohContext::new(&code);
        let gee = code.gees()[0];
        if gee.is_empty() {
            if !ctx.phi(SubsetMask::EMPTY).unwrap() {
                return fail(format!("{code}: R^m = 0"));
            }
            monomials += 1;
            continue;
        }
        let a = GapVector::from_gee(gee).unwrap();
        for &s in ctx.subgees().members() {
            if s.len() as u32 > ctx.m() {
                continue;
            }
            monomials += 1;
            if phi_closed_form(&a, s).unwrap() != ctx.phi(s).unwrap() {
                return fail(format!("{code} at V{s}"));
            }
        }
    }
    pass(format!("{monomials} monomials agree"))
}

/// Whether the cup pairing `H^d x H^{m-d} -> F_2` is nondegenerate.
fn pairing_nondegenerate(ctx: &CohContext, d: u32) -> bool {
    let m = ctx.m();
    let left = ctx.basis(d).unwrap();
    let right = ctx.basis(m - d).unwrap();
    let rows = left.iter().map(|x| {
        let x = ctx.monomial(d, x.support).unwrap();
        let ones = right.iter().enumerate().filter(|(_, y)| {
            let y = ctx.monomial(m - d, y.support).unwrap();
            ctx.phi_class(&ctx.multiply(&x, &y)).unwrap()
        });
        BitVec::from_ones(right.len(), ones.map(|(j, _)| j))
    });
    left.len() == right.len() && Echelon::new(right.len(), rows).rank() == left.len()
}

fn duality() -> Outcome {
    let codes = codes_up_to(8);
    for code in &codes {
        let ctx = CohContext::new(code);
        let b = ctx.betti();
        let m = ctx.m() as usize;
        if b[0] != 1 || b[m] != 1 || (0..=m).any(|d| b[d] != b[m - d]) {
            return fail(format!("{code}: betti {b:?}"));
        }
        if (0..=ctx.m()).any(|d| !pairing_nondegenerate(&ctx, d)) {
            return fail(format!("{code}: degenerate pairing"));
        }
        if !code.is_projective_space() && ctx.phi(SubsetMask::EMPTY).unwrap() {
            let (u, family) = ctx.phi_support().unwrap();
            if matches!(classify_support(u, &family).unwrap(), SupportCase::PowerSet(_)) {
                return fail(format!("{code}: phi supported on a power set"));
            }
        }
    }
    pass(format!("{} codes", codes.len()))
}

fn identities() -> Outcome {
    let checks = suites::identity_checks().unwrap();
    if let Some(c) = checks.iter().find(|c| !c.passed) {
        return fail(format!("{}: {}", c.name, c.detail));
    }
    // the explicit products again through the independent oracle
    let explicit = [
        ("8321", vec![(1, 3), (2, 3), (3, 3)], (5, 4)),
        ("T4321", vec![(1, 3), (2, 3), (3, 3), (4, 4)], (7, 6)),
        ("94321", vec![(1, 3), (2, 3), (3, 3), (4, 2)], (6, 5)),
    ];
    for (code, exps, b) in explicit {
        let ctx = CohContext::new(&code.parse().unwrap());
        let p = ZeroDivisorProduct::new(0, exps.iter().copied()).unwrap();
        let blocks = common::product_blocks(&ctx, &p);
        if common::block(&ctx, &blocks, b).iter().all(BitVec::is_zero) {
            return fail(format!("{code}: {p} vanishes at {b:?}"));
        }
    }
    let summary: Vec<String> = checks.iter().map(|c| format!("{} ({})", c.name, c.detail)).collect();
    pass(summary.join(", "))
}

fn round_trip() -> Outcome {
    let codes = codes_up_to(8);
    for c in &codes {
        let back = realize(c).and_then(|l| l.genetic_code());
        if back.as_ref().ok() != Some(c) {
            return fail(format!("{c} realizes to {back:?}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut vectors = 0;
    while vectors < 500 {
        let n = rng.gen_range(4..=8);
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=40)).collect();
        let Ok(l) = LengthVector::from_integers(&v) else { continue };
        if !l.is_generic() {
            continue;
        }
        vectors += 1;
        let code = l.genetic_code().unwrap();
        let out = l.normalize().and_then(|x| x.stabilize()).and_then(|x| x.genetic_code());
        match out {
            Ok(c) if c.gees() == code.gees() => {}
            other => return fail(format!("{l}: {other:?} vs {code}")),
        }
    }
    pass(format!("{} codes, {vectors} random vectors", codes.len()))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("code counts", counts),
        ("gap-vector table", table1),
        ("n=7 sweep", || sweep(7, &["7321", "7521"])),
        ("n=8 sweep", || sweep(8, &["84321", "86321"])),
        ("size-5 genes", size5),
        ("size-6 genes", size6),
        ("closed form vs linear algebra", closed_form),
        ("duality", duality),
        ("certificate identities", identities),
        ("round trips", round_trip),
    ];
    let mut unexpected = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let out = run();
        let tag = match out.status {
            Status::Pass => "PASS",
            Status::Fail => {
                unexpected += 1;
                "FAIL"
            }
            Status::Known => "FAIL",
        };
        println!("{tag} [{}] {name}: {}", i + 1, out.detail);
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
