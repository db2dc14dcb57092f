//! Independent evaluation of barred products: multiply `z (x) 1 + 1 (x) z`
//! factor by factor with the ring product on canonical bases.

#![allow(dead_code)]

use std::collections::BTreeMap;

use ngon_tc::cohomology::{CohClass, CohContext};
use ngon_tc::f2::BitVec;
use ngon_tc::tc::ZeroDivisorProduct;

/// Components by bidegree; `rows[i]` is the coefficient row of basis element `i` of the left factor.
pub type Blocks = BTreeMap<(u32, u32), Vec<BitVec>>;

/// Matrix of multiplication by `x` from `H^d` to `H^{d+1}`: row `i` is the image of basis element `i`.
fn mult_matrix(ctx: &CohContext, d: u32, x: &CohClass) -> Vec<BitVec> {
    ctx.basis(d)
        .unwrap()
        .iter()
        .map(|b| ctx.coordinates(&ctx.multiply(&ctx.monomial(d, b.support).unwrap(), x)))
        .collect()
}

fn times_barred(ctx: &CohContext, t: &Blocks, x: &CohClass) -> Blocks {
    let m = ctx.m();
    let dim = |d: u32| ctx.dim(d).unwrap();
    let mut out = Blocks::new();
    for (&(d1, d2), rows) in t {
        if d1 < m {
            let img = mult_matrix(ctx, d1, x);
            let e = out.entry((d1 + 1, d2)).or_insert_with(|| vec![BitVec::zeros(dim(d2)); dim(d1 + 1)]);
            for (i, row) in rows.iter().enumerate() {
                for j in img[i].ones() {
                    e[j].xor_assign(row);
                }
            }
        }
        if d2 < m {
            let img = mult_matrix(ctx, d2, x);
            let e = out.entry((d1, d2 + 1)).or_insert_with(|| vec![BitVec::zeros(dim(d2 + 1)); dim(d1)]);
            for (i, row) in rows.iter().enumerate() {
                for k in row.ones() {
                    e[i].xor_assign(&img[k]);
                }
            }
        }
    }
    out
}

pub fn product_blocks(ctx: &CohContext, p: &ZeroDivisorProduct) -> Blocks {
    let mut t = Blocks::new();
    t.insert((0, 0), vec![BitVec::unit(1, 0)]);
    for _ in 0..p.rbar_exp {
        t = times_barred(ctx, &t, &ctx.r());
    }
    for (&i, &e) in &p.vbar_exps {
        let v = ctx.v(i).unwrap();
        for _ in 0..e {
            t = times_barred(ctx, &t, &v);
        }
    }
    t
}

pub fn block(ctx: &CohContext, blocks: &Blocks, b: (u32, u32)) -> Vec<BitVec> {
    blocks.get(&b).cloned().unwrap_or_else(|| vec![BitVec::zeros(ctx.dim(b.1).unwrap()); ctx.dim(b.0).unwrap()])
}

pub fn is_nonzero(blocks: &Blocks) -> bool {
    blocks.values().any(|rows| rows.iter().any(|r| !r.is_zero()))
}

/// Whether a product of degree `target` survives among the nonzero blocks of the oracle.
pub fn oracle_nonzero(ctx: &CohContext, p: &ZeroDivisorProduct) -> bool {
    is_nonzero(&product_blocks(ctx, p))
}
