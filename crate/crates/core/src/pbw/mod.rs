//! Braid operators, root vectors, PBW monomials and PBW expansions.

mod basis;
mod braid;

use std::sync::Arc;

pub use basis::{enumerate_c, sigma_exponents, Exponents, Factored, PbwBasis, PbwElt, WeightData};
pub use braid::{apply_braid, braid_generator};

use crate::cartan::CartanDatum;
use crate::error::Result;
use crate::freealg::FreeElt;
use crate::qarith::BaseRing;
use crate::weyl::LiftedWord;

/// `f_{β_k}^{(a)}` for the reduced word `h` (0-based `k`).
pub fn root_vector(datum: &Arc<CartanDatum>, h: &[usize], k: usize, a: u32) -> Result<FreeElt> {
    PbwBasis::get(datum, BaseRing::Integers, h)?.root_vector(k, a)
}

/// `L(c, h)`.
pub fn pbw_monomial(datum: &Arc<CartanDatum>, c: &[u32], h: &[usize]) -> Result<FreeElt> {
    PbwBasis::get(datum, BaseRing::Integers, h)?.monomial(c)
}

/// PBW coordinates of a homogeneous element.
pub fn pbw_expand(x: &FreeElt, h: &[usize]) -> Result<PbwElt> {
    PbwBasis::get(x.datum(), x.ring(), h)?.expand(x)
}

/// `R_η = ∏_{i∈η} T_i`.
pub fn apply_block(orbit: &[usize], x: &FreeElt) -> Result<FreeElt> {
    let mut x = x.clone();
    for &i in orbit.iter().rev() {
        x = apply_braid(i, &x)?;
    }
    Ok(x)
}

/// `F_{η_1}(c) · R_{η_1}(F_{η_2}(c)) · R_{η_1}R_{η_2}(F_{η_3}(c)) ⋯` with
/// `F_η(c) = ∏_{p ∈ I_η} f_{h_p}^{(c_p)}`, built block by block.
pub fn block_monomial(datum: &Arc<CartanDatum>, ring: BaseRing, lifted: &LiftedWord, c: &[u32]) -> Result<FreeElt> {
    let mut acc = FreeElt::one(datum, ring);
    for (m, block) in lifted.blocks.iter().enumerate() {
        let mut f = FreeElt::one(datum, ring);
        for p in block.clone() {
            f = f.multiply(&FreeElt::generator(datum, ring, lifted.word[p], c[p]))?;
        }
        if f.weight().is_some_and(|w| w.iter().all(|&x| x == 0)) {
            continue;
        }
        for prev in lifted.blocks[..m].iter().rev() {
            f = apply_block(&lifted.word[prev.clone()], &f)?;
        }
        acc = acc.multiply(&f)?;
    }
    Ok(acc)
}
