mod common;

use proptest::prelude::*;

use ngon_tc::cohomology::CohContext;
use ngon_tc::tc::{component, expand_evaluate, nonzero_bidegree, pairing, Evaluation, Mode, ZeroDivisorProduct};

const CODES: [&str; 6] = ["7321", "8321", "8631;854", "86321", "962", "9532"];

fn product() -> impl Strategy<Value = (usize, u32, Vec<(u32, u32)>)> {
    (0..CODES.len(), 0u32..6, prop::collection::vec((1u32..=6, 1u32..=4), 0..4))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_components_match_factorwise_multiplication((i, r, v) in product()) {
        let ctx = CohContext::new(&CODES[i].parse().unwrap());
        let m = ctx.m();
        let v: Vec<(u32, u32)> = v.into_iter().filter(|(j, _)| ctx.is_subgee(ngon_tc::combinatorics::SubsetMask::singleton(*j))).collect();
        let p = ZeroDivisorProduct::new(r, v).unwrap();
        let total = p.total_degree();
        prop_assume!(total <= 2 * m);
        let blocks = common::product_blocks(&ctx, &p);
        for d1 in total.saturating_sub(m)..=total.min(m) {
            let b = (d1, total - d1);
            let ours = component(&ctx, &p, b).unwrap();
            prop_assert_eq!(&ours.rows, &common::block(&ctx, &blocks, b), "{} at {:?}", p, b);
        }
        let first = nonzero_bidegree(&ctx, &p).unwrap();
        prop_assert_eq!(first.is_some(), common::is_nonzero(&blocks));
    }

    #[test]
    fn pairing_is_phi_psi_of_the_component((i, r, v) in product()) {
        let ctx = CohContext::new(&CODES[i].parse().unwrap());
        let m = ctx.m();
        let rest: u32 = v.iter().map(|x| x.1).sum();
        prop_assume!(rest + r < 2 * m && !v.is_empty());
        let mut v = v;
        v[0].1 += 2 * m - 1 - rest - r;
        let p = ZeroDivisorProduct::new(r, v).unwrap();
        let basis_top = ctx.basis(m).unwrap();
        let basis_low = ctx.basis(m - 1).unwrap();
        let comp = component(&ctx, &p, (m, m - 1)).unwrap();
        let mut expected = false;
        for (a, row) in basis_top.iter().zip(&comp.rows) {
            for b in row.ones() {
                expected ^= ctx.phi(a.support).unwrap() && ctx.psi(basis_low[b].support).unwrap();
            }
        }
        prop_assert_eq!(pairing(&ctx, &p).unwrap(), expected);
        prop_assert_eq!(expand_evaluate(&ctx, &p, (m, m - 1), Mode::Pairing).unwrap(), Evaluation::Pairing(expected));
    }
}
