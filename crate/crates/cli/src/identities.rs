//! Explicit identities in the rank-two foldings, each checked exactly in
//! `U_q⁻`, modulo `J`, or as an equality in `V_q`.
//!
//! Sides are written in the infix grammar of [`FreeElt::parse`]. `{name}`
//! refers to a root vector of the reference word of the folding (named by
//! its root, e.g. `{122p2pp}` for `α1+α2+α2′+α2″`), to a root vector `{u…}`
//! of the folded word, or to an earlier definition. A definition of the form
//! `T:i,j,…:expr` is the braid image `T_i T_j ⋯ (expr)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use qfold::cartan::ascii_label;
use qfold::fold::{Folding, VqElt};
use qfold::freealg::{is_zero, FreeElt};
use qfold::pbw::{apply_braid, PbwBasis};
use qfold::qarith::BaseRing;
use qfold::weyl::root_name;
use qfold::{Error, Result};

use crate::report::Outcome;

const Z: BaseRing = BaseRing::Integers;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    /// `lhs = rhs` in `U_q⁻` (of `X`, or of `ulX` for [`Side::Ul`]).
    Exact,
    /// `lhs ≡ rhs` modulo `J`: `π(lhs − rhs) = 0` over `GF(ε)`.
    ModJ,
    /// `lhs = rhs` in `V_q`, sides projected by `π` or mapped by `Φ`.
    Vq,
}

#[derive(Clone, Copy, Debug)]
pub enum Side {
    X(&'static str),
    Ul(&'static str),
}

#[derive(Clone, Debug)]
pub struct Identity {
    pub id: &'static str,
    pub folding: &'static str,
    pub sense: Sense,
    pub lhs: Side,
    pub rhs: Side,
    /// Also check the images under `σ` and `σ²` (exact identities only).
    pub sigma_images: bool,
    /// The identity is a known misprint: the check passes when it fails.
    pub misprint: bool,
}

const fn misprint(mut id: Identity) -> Identity {
    id.misprint = true;
    id
}

const fn exact(id: &'static str, folding: &'static str, lhs: &'static str, rhs: &'static str) -> Identity {
    Identity { id, folding, sense: Sense::Exact, lhs: Side::X(lhs), rhs: Side::X(rhs), sigma_images: false, misprint: false }
}

const fn exact_orbit(id: &'static str, folding: &'static str, lhs: &'static str, rhs: &'static str) -> Identity {
    Identity { id, folding, sense: Sense::Exact, lhs: Side::X(lhs), rhs: Side::X(rhs), sigma_images: true, misprint: false }
}

const fn exact_ul(id: &'static str, folding: &'static str, lhs: &'static str, rhs: &'static str) -> Identity {
    Identity { id, folding, sense: Sense::Exact, lhs: Side::Ul(lhs), rhs: Side::Ul(rhs), sigma_images: false, misprint: false }
}

const fn mod_j(id: &'static str, folding: &'static str, lhs: &'static str, rhs: &'static str) -> Identity {
    Identity { id, folding, sense: Sense::ModJ, lhs: Side::X(lhs), rhs: Side::X(rhs), sigma_images: false, misprint: false }
}

const fn vq(id: &'static str, folding: &'static str, lhs: &'static str, rhs: &'static str) -> Identity {
    Identity { id, folding, sense: Sense::Vq, lhs: Side::X(lhs), rhs: Side::Ul(rhs), sigma_images: false, misprint: false }
}

const A2: &str = "A2xA2:A2";
const B2: &str = "A3:B2";
const G2: &str = "D4:G2";

/// Named elements shared by the identities of one folding.
const DEFS: &[(&str, &str, &str)] = &[
    (A2, "t2f1", "T:2:f1"),
    (A2, "F1", "f1 f1p"),
    (A2, "F2", "f2 f2p"),
    (A2, "r2f1", "T:2,2p:f1 f1p"),
    (A2, "r21f2", "T:2,2p,1,1p:f2 f2p"),
    (A2, "f12", "f1 f2 - q f2 f1"),
    (A2, "f12p", "f1p f2p - q f2p f1p"),
    (B2, "F", "f2 f2p"),
    (B2, "r2f1", "T:2,2p:f1"),
    (B2, "r212f1", "T:2,2p,1,2,2p:f1"),
    (B2, "r21f2", "T:2,2p,1:f2 f2p"),
    (B2, "Z112", "f1 (f1 {F} - q^2 {F} f1) - (f1 {F} - q^2 {F} f1) f1"),
    (G2, "F", "f2 f2p f2pp"),
    (G2, "Z12", "f1 {F} - q^3 {F} f1"),
    (G2, "Z112", "f1 {Z12} - q {Z12} f1"),
    (G2, "Z1112", "f1 {Z112} - q^-1 {Z112} f1"),
    (G2, "Z11122", "{1122p2pp} {122p2pp} - q^-1 {122p2pp} {1122p2pp}"),
    (G2, "r2f1", "T:2,2p,2pp:f1"),
    (G2, "r212f1", "T:2,2p,2pp,1,2,2p,2pp:f1"),
    (G2, "r21f2", "T:2,2p,2pp,1:f2 f2p f2pp"),
    (G2, "r2121f2", "T:2,2p,2pp,1,2,2p,2pp,1:f2 f2p f2pp"),
    (G2, "P", "{12} {12p} {12pp}"),
];

/// Folded reference words: `(2,1,2)`, `(2,1,2,1)`, `(2,1,2,1,2,1)`.
pub fn reference_word(folding: &str) -> Vec<usize> {
    match folding {
        A2 => vec![1, 0, 1],
        B2 => vec![1, 0, 1, 0],
        _ => vec![1, 0, 1, 0, 1, 0],
    }
}

/// Identities behind the Serre relations of `V_q` and the computations
/// leading to them.
pub fn section3() -> Vec<Identity> {
    vec![
        exact("braid-convention", A2, "{t2f1}", "f1 f2 - q f2 f1"),
        mod_j("a2-serre-divided", A2, "{F1} f2^(2) f2p^(2) - {F2} {F1} {F2} + f2^(2) f2p^(2) {F1}", "0"),
        mod_j("a2-serre-squares", A2, "{F1} {F2}^2 - (q^2 + q^-2) {F2} {F1} {F2} + {F2}^2 {F1}", "0"),
        exact("a2-serre-relations", A2, "f1 f2^2 - (q + q^-1) f2 f1 f2 + f2^2 f1", "0"),
        exact("a2-serre-relations-2", A2, "f2 f1^2 - (q + q^-1) f1 f2 f1 + f1^2 f2", "0"),
        mod_j(
            "a2-serre-product",
            A2,
            "{F1} {F2}^2 + (q + q^-1)^2 {F2} {F1} {F2} + {F2}^2 {F1} - (q + q^-1) (f2 f2p^2 f1 f1p f2 + f2p f2^2 f1p f1 f2p)",
            "0",
        ),
        misprint(exact(
            "a2-serre-product-exact-as-printed",
            A2,
            "{F1} {F2}^2 + (q + q^-1)^2 {F2} {F1} {F2} + {F2}^2 {F1} - (q + q^-1) (f2 f2p^2 f1 f1p f2 + f2p f2^2 f1p f1 f2p)",
            "0",
        )),
        exact(
            "a2-serre-product-exact",
            A2,
            "{F1} {F2}^2 + (q + q^-1)^2 {F2} {F1} {F2} + {F2}^2 {F1} - (q + q^-1) (f1 f2^2 f2p f1p f2p + f2 f1 f2 f1p f2p^2 + f2 f1 f2 f2p^2 f1p + f2^2 f1 f2p f1p f2p) + f1 f2^2 f2p^2 f1p + f2^2 f1 f1p f2p^2",
            "0",
        ),
        exact("b2-serre-times-square", B2, "f1 f2^2 f2p^2 - (q + q^-1) f2 f1 f2p^2 f2 + f2^2 f1 f2p^2", "0"),
        exact("b2-serre-middle", B2, "f2 f1 f2p^2 f2", "(q + q^-1) {F} f1 {F} - f2 f2p^2 f1 f2"),
        exact("b2-serre-last", B2, "f2^2 f1 f2p^2", "(q + q^-1) f2^2 f2p f1 f2p - {F}^2 f1"),
        exact(
            "b2-serre-product",
            B2,
            "f1 {F}^2 - (q + q^-1)^2 {F} f1 {F} - {F}^2 f1 + (q + q^-1) (f2p^2 f2 f1 f2 + f2^2 f2p f1 f2p)",
            "0",
        ),
        mod_j("b2-serre-long", B2, "f1 {F}^2 - (q^2 + q^-2) {F} f1 {F} + {F}^2 f1", "0"),
        mod_j("b2-serre-short", B2, "{F} f1^3 - [3] f1 {F} f1^2 + [3] f1^2 {F} f1 - f1^3 {F}", "0"),
        exact("b2-reorder-left", B2, "(q + q^-1) f1 f2p f1 f2 f1", "f1 {F} f1^2 + (q + q^-1) f1^2 f2p f1 f2 - f1^3 f2p f2"),
        exact(
            "b2-reorder-middle",
            B2,
            "f2p f1 f2 f1^2",
            "(q + q^-1) f1 {F} f1^2 - (q + q^-1) f1^2 {F} f1 + f1^2 f2p f1 f2",
        ),
        exact(
            "b2-reorder-right",
            B2,
            "f2p f1^2 f2 f1",
            "f1 {F} f1^2 + (q + q^-1) f1^2 f2p f1 f2 - f1^3 f2 f2p - f1^2 f2p f2 f1",
        ),
        exact(
            "b2-reorder-chain",
            B2,
            "f2p f1 f2 f1^2",
            "(q + q^-1)^2 f1 f2p f1 f2 f1 - ((q + q^-1)^2 - 1) f1^2 f2p f1 f2 - (q + q^-1) f1^2 f2 f2p f1 + (q + q^-1) f1^3 f2 f2p",
        ),
        exact("b2-reorder-split", B2, "f2p f2 f1^3", "(q + q^-1) f2p f1 f2 f1^2 - f2p f1^2 f2 f1"),
        exact(
            "b2-cubic-exact",
            B2,
            "{F} f1^3",
            "(q^2 + 1 + q^-2) f1 {F} f1^2 - (q^2 + 1 + q^-2) f1^2 {F} f1 + f1^3 {F}",
        ),
        exact(
            "g2-serre-times-squares",
            G2,
            "f1 f2^2 f2p^2 f2pp^2 - (q + q^-1) f2 f1 f2p^2 f2pp^2 f2 + f2^2 f1 f2p^2 f2pp^2",
            "0",
        ),
        exact(
            "g2-serre-middle",
            G2,
            "f2 f1 f2p^2 f2pp^2 f2",
            "(q + q^-1)^2 {F} f1 {F} - (q + q^-1) f2 f2p f2pp^2 f1 f2 f2p - f2 f2p^2 f1 f2 f2pp^2",
        ),
        exact(
            "g2-serre-last",
            G2,
            "f2^2 f1 f2pp^2 f2p^2",
            "(q + q^-1) f2^2 f2pp f1 f2pp f2p^2 - (q + q^-1)^2 f2p f2pp^2 f2 f1 f2 f2p + (q + q^-1) f2p f2pp^2 f1 f2^2 f2p + f2^2 f2pp^2 f2p^2 f1",
        ),
        exact(
            "g2-serre-product",
            G2,
            "f1 {F}^2 - (q + q^-1)^3 {F} f1 {F} + {F}^2 f1 + (q + q^-1) (f2 f2p^2 f1 f2pp^2 f2 + f2pp f2^2 f1 f2p^2 f2pp + f2p f2pp^2 f1 f2^2 f2p)",
            "0",
        ),
        mod_j("g2-serre-long", G2, "f1 {F}^2 - (q^3 + q^-3) {F} f1 {F} + {F}^2 f1", "0"),
        mod_j(
            "g2-serre-short",
            G2,
            "{F} f1^4 - [4] f1 {F} f1^3 + (q^4 + q^2 + 2 + q^-2 + q^-4) f1^2 {F} f1^2 - [4] f1^3 {F} f1 + f1^4 {F}",
            "0",
        ),
        exact(
            "g2-quartic-exact",
            G2,
            "{F} f1^4 - [4] f1 {F} f1^3 + (q^4 + q^2 + 2 + q^-2 + q^-4) f1^2 {F} f1^2 - [4] f1^3 {F} f1 + f1^4 {F}",
            "0",
        ),
        exact_orbit("d4-root-12", G2, "{12}", "f1 f2 - q f2 f1"),
        exact_orbit("d4-root-122p", G2, "{122p}", "{12} f2p - q f2p {12}"),
        exact_orbit("d4-root-122p-alt", G2, "{122p}", "{12p} f2 - q f2 {12p}"),
        exact("d4-root-122p2pp", G2, "{122p2pp}", "{122p} f2pp - q f2pp {122p}"),
        exact("d4-root-122p2pp-alt", G2, "{122p2pp}", "{12p2pp} f2 - q f2 {12p2pp}"),
        exact("d4-root-122p2pp-alt2", G2, "{122p2pp}", "{122pp} f2p - q f2p {122pp}"),
        exact("d4-root-1122p2pp", G2, "{1122p2pp}", "{12pp} {122p} - q {122p} {12pp}"),
        exact("d4-root-1122p2pp-alt", G2, "{1122p2pp}", "{12} {12p2pp} - q {12p2pp} {12}"),
        exact("d4-root-1122p2pp-alt2", G2, "{1122p2pp}", "{12p} {122pp} - q {122pp} {12p}"),
        exact_orbit("d4-commute-122p2pp-2", G2, "{122p2pp} f2", "q^-1 f2 {122p2pp}"),
        exact_orbit("d4-commute-12p2pp-122p2pp", G2, "{12p2pp} {122p2pp}", "q^-1 {122p2pp} {12p2pp}"),
        exact_orbit("d4-commute-122pp-12p2pp", G2, "{122pp} {12p2pp}", "{12p2pp} {122pp}"),
        exact_orbit("d4-commute-1122p2pp-122p", G2, "{1122p2pp} {122p}", "q^-1 {122p} {1122p2pp}"),
        exact_orbit("d4-commute-12-1122p2pp", G2, "{12} {1122p2pp}", "q^-1 {1122p2pp} {12}"),
        exact_orbit("d4-commute-12p-12", G2, "{12p} {12}", "{12} {12p}"),
        exact_orbit("d4-commute-1-12", G2, "f1 {12}", "q^-1 {12} f1"),
        exact_orbit("d4-commute-1-12p2pp", G2, "f1 {12p2pp}", "{12p2pp} f1 - (q - q^-1) {12p} {12pp}"),
        exact(
            "d4-left-mult-expansion",
            G2,
            "f1 {F}",
            "{122p2pp} + q (f2pp {122p} + f2p {122pp} + f2 {12p2pp}) + q^2 (f2p f2pp {12} + f2 f2pp {12p} + f2 f2p {12pp}) + q^3 {F} f1",
        ),
        mod_j("g2-left-mult-1", G2, "f1 {F}", "{122p2pp} + q^3 {F} f1"),
        exact(
            "d4-commute-1-122p2pp",
            G2,
            "f1 {122p2pp}",
            "q {122p2pp} f1 - q (q - q^-1) ({12p2pp} {12} + {122pp} {12p} + {122p} {12pp}) + (q^-1 - 2 q) {1122p2pp}",
        ),
        mod_j("g2-commute-1-122p2pp", G2, "f1 {122p2pp}", "q {122p2pp} f1 + (q + q^-1) {1122p2pp}"),
        mod_j("g2-left-mult-twice", G2, "f1^2 {F}", "f1 {122p2pp} + q^3 {122p2pp} f1 + q^6 {F} f1^2"),
        mod_j("g2-left-mult-2", G2, "f1^2 {F}", "(q + q^3) {122p2pp} f1 + (q + q^-1) {1122p2pp} + q^6 {F} f1^2"),
        mod_j(
            "g2-left-mult-3-raw",
            G2,
            "f1^3 {F}",
            "(q + q^3) f1 {122p2pp} f1 + (q + q^-1) f1 {1122p2pp} + q^6 f1 {F} f1^2",
        ),
        exact("d4-commute-1-1122p2pp", G2, "f1 {1122p2pp}", "q^-1 {1122p2pp} f1 + (q - q^-1)^2 {P}"),
        mod_j(
            "g2-left-mult-3",
            G2,
            "f1^3 {F}",
            "(q^6 + q^4 + q^2) {122p2pp} f1^2 + (q^4 + 2 q^2 + 2 + q^-2) {1122p2pp} f1 + (q^3 + 2 q + 2 q^-1 + q^-3) {P} + q^9 {F} f1^3",
        ),
        exact("d4-commute-1-product", G2, "f1 {P}", "q^-3 {P} f1"),
        mod_j(
            "g2-left-mult-4",
            G2,
            "f1^4 {F}",
            "(q^9 + q^7 + q^5 + q^3) {122p2pp} f1^3 + (q^7 + 2 q^5 + 2 q^-1 + q^-3) {1122p2pp} f1^2 + (q^6 + 2 q^2 + 2 q^-2 + q^-6) {P} f1 + q^12 {F} f1^4",
        ),
    ]
}

/// Identities comparing folded root vectors with block braid images.
pub fn section4() -> Vec<Identity> {
    vec![
        exact("a2-block-image", A2, "{r2f1}", "(f1 f2 - q f2 f1) (f1p f2p - q f2p f1p)"),
        exact(
            "a2-block-image-expanded",
            A2,
            "{r2f1}",
            "f1 f1p f2 f2p + q^2 f2 f2p f1 f1p - q (f1 f2 f2p f1p + f2 f1 f1p f2p)",
        ),
        exact("a2-block-image-remainder", A2, "f1 f2 f2p f1p + f2 f1 f1p f2p", "{f12} f2p f1p + {f12p} f2 f1 + 2 q f2 f1 f2p f1p"),
        vq("a2-block-image-phi", A2, "{r2f1}", "{u12}"),
        exact_ul("a2-folded-root-12", A2, "{u12}", "f1 f2 - q^2 f2 f1"),
        exact_ul("a2-folded-root-1", A2, "{u1}", "f1"),
        mod_j("a2-block-image-vq", A2, "{r2f1}", "{F1} {F2} - q^2 {F2} {F1}"),
        exact("a2-block-image-last", A2, "{r21f2}", "f1 f1p"),
        exact("b2-block-image", B2, "{r2f1}", "f1 f2 f2p + q^2 f2 f2p f1 - q (f2 f1 f2p + f2p f1 f2)"),
        vq("b2-block-image-phi", B2, "{r2f1}", "{u12}"),
        exact_ul("b2-folded-root-12", B2, "{u12}", "f1 f2 - q^2 f2 f1"),
        exact_ul("b2-folded-root-112", B2, "[2] {u112}", "f1 {u12} - {u12} f1"),
        exact_ul("b2-folded-root-1", B2, "{u1}", "f1"),
        mod_j("b2-block-image-vq", B2, "{r2f1}", "f1 {F} - q^2 {F} f1"),
        exact("b2-block-image-last", B2, "{r212f1}", "f1"),
        exact("b2-block-image-product", B2, "{r21f2}", "{12p} {12}"),
        exact("b2-z112", B2, "{Z112}", "f1^2 {F} - (q^2 + 1) f1 {F} f1 + q^2 {F} f1^2"),
        vq("b2-z112-vq", B2, "{Z112}", "(q + q^-1) {u112}"),
        exact("b2-reorder-square", B2, "f1^2 {F}", "(q + q^-1) f1 f2 f1 f2p - (q + q^-1) f2 f1 f2p f1 + {F} f1^2"),
        exact(
            "b2-reorder-aux",
            B2,
            "f1 f2 f1 f2p",
            "q^3 {F} f1^2 + q {122p} f1 + f2 {12p} f1 + {12} {12p} + q^2 (f2 {12p} f1 + f2p {12} f1)",
        ),
        exact("b2-reorder-aux-2", B2, "f2 f1 f2p f1", "q {F} f1^2 + f2 {12p} f1"),
        exact("b2-reorder-inner", B2, "f1 {F} f1", "q^2 {F} f1^2 + q (f2 {12p} f1 + f2p {12} f1) + {122p} f1"),
        exact("b2-z112-pbw", B2, "{Z112}", "(q + q^-1) {12} {12p}"),
        exact_ul("g2-folded-root-12", G2, "{u12}", "f1 f2 - q^3 f2 f1"),
        exact_ul("g2-folded-root-11122", G2, "[3] {u11122}", "{u112} {u12} - q^-1 {u12} {u112}"),
        exact_ul("g2-folded-root-112", G2, "[2] {u112}", "f1 {u12} - q {u12} f1"),
        exact_ul("g2-folded-root-1112", G2, "[3] {u1112}", "f1 {u112} - q^-1 {u112} f1"),
        exact_ul("g2-folded-root-1", G2, "{u1}", "f1"),
        exact("g2-block-image", G2, "{r2f1}", "{122p2pp}"),
        exact(
            "g2-block-image-expanded",
            G2,
            "{r2f1}",
            "f1 {F} - q^3 {F} f1 - q (f2 f1 f2p f2pp + f2p f1 f2pp f2 + f2pp f1 f2 f2p) + q^2 (f2 f2p f1 f2pp + f2p f2pp f1 f2 + f2pp f2 f1 f2p)",
        ),
        vq("g2-block-image-phi", G2, "{r2f1}", "{u12}"),
        mod_j("g2-block-image-vq", G2, "{r2f1}", "f1 {F} - q^3 {F} f1"),
        exact("g2-z112", G2, "{Z112}", "f1^2 {F} - (q^3 + q) f1 {F} f1 + q^4 {F} f1^2"),
        vq("g2-z112-vq", G2, "{Z112}", "(q + q^-1) {u112}"),
        mod_j("g2-inner-1", G2, "f1 {F} f1", "{122p2pp} f1 + q^3 {F} f1^2"),
        mod_j("g2-inner-2", G2, "f1^2 {F}", "(q + q^3) {122p2pp} f1 + (q + q^-1) {1122p2pp} + q^6 {F} f1^2"),
        mod_j("g2-z112-pbw", G2, "{Z112}", "(q + q^-1) {1122p2pp}"),
        exact("g2-block-image-112", G2, "{r212f1}", "{1122p2pp}"),
        vq("g2-block-image-112-vq", G2, "{r212f1}", "{u112}"),
        exact(
            "g2-z1112",
            G2,
            "{Z1112}",
            "f1^3 {F} - (q^3 + q + q^-1) f1^2 {F} f1 + (q^4 + q^2 + 1) f1 {F} f1^2 - q^3 {F} f1^3",
        ),
        vq("g2-z1112-vq", G2, "{Z1112}", "[2] [3] {u1112}"),
        misprint(mod_j(
            "g2-left-mult-3-restated-as-printed",
            G2,
            "f1^3 {F}",
            "(q^6 + q^4 + q^2) {122p2pp} f1^2 + (q^4 + 2 q^2 + 2 + q^-2) {1122p2pp} f1 + (q^3 + 2 q^2 + 2 q^-1 + q^-3) {P} + q^9 {F} f1^3",
        )),
        mod_j("g2-z1112-pbw", G2, "{Z1112}", "[2] [3] {P}"),
        vq("g2-block-image-1112-vq", G2, "{r2121f2}", "{u1112}"),
        exact("g2-block-image-1112", G2, "{r2121f2}", "{P}"),
        vq("g2-z11122-vq", G2, "{Z11122}", "[3] {u11122}"),
        exact("g2-block-image-11122", G2, "{r21f2}", "{12p2pp} {122pp} {122p}"),
        vq("g2-block-image-11122-vq", G2, "{r21f2}", "{u11122}"),
        mod_j("g2-z11122-pbw", G2, "{Z11122}", "[3] {12p2pp} {122pp} {122p}"),
        exact("g2-z11122-exact", G2, "{Z11122}", "(q^2 - 2 + q^-2) {12p2pp} {122pp} {122p}"),
        exact_orbit("d4-commute-12-2", G2, "{12} f2", "q^-1 f2 {12}"),
        exact_orbit("d4-commute-122pp-2", G2, "{122pp} f2", "q^-1 f2 {122pp}"),
        exact_orbit("d4-commute-122p-2", G2, "{122p} f2", "q^-1 f2 {122p}"),
        exact_orbit("d4-commute-12-122p", G2, "{12} {122p}", "q^-1 {122p} {12}"),
        exact_orbit("d4-commute-12-122pp", G2, "{12} {122pp}", "q^-1 {122pp} {12}"),
        misprint(exact("d4-commute-12-12p2pp-as-printed", G2, "{12} {12p2pp}", "{122p2pp} {12} + (q^-1 - q) {122pp} {122p}")),
        exact_orbit("d4-commute-12-122p2pp", G2, "{12} {122p2pp}", "{122p2pp} {12} + (q^-1 - q) {122pp} {122p}"),
        exact_orbit("d4-commute-1122p2pp-2", G2, "{1122p2pp} f2", "f2 {1122p2pp} + (q^-1 - q) {122pp} {122p}"),
        exact(
            "d4-commute-1122p2pp-122p2pp",
            G2,
            "{1122p2pp} {122p2pp}",
            "(q^2 - 2 + q^-2) {12p2pp} {122pp} {122p} + q^-1 {122p2pp} {1122p2pp}",
        ),
    ]
}

/// Root vectors and definitions for one folding.
pub struct Context {
    pub folding: Folding,
    pub ulh: Vec<usize>,
    x_names: BTreeMap<String, FreeElt>,
    ul_names: BTreeMap<String, FreeElt>,
}

fn ascii_root(datum: &qfold::cartan::CartanDatum, beta: &[u32]) -> String {
    let r: Vec<i64> = beta.iter().map(|&x| x as i64).collect();
    ascii_label(&root_name(datum, &r))
}

impl Context {
    pub fn new(name: &str) -> Result<Self> {
        let folding = Folding::builtin(name)?;
        let ulh = reference_word(name);
        let lifted = folding.lift(&ulh)?;
        let basis = PbwBasis::get(folding.x(), Z, &lifted.word)?;
        let ul = PbwBasis::get(folding.ulx(), Z, &ulh)?;
        let mut x_names = BTreeMap::new();
        for k in 0..basis.nu() {
            x_names.insert(ascii_root(folding.x(), &basis.betas()[k]), basis.root_vector(k, 1)?);
        }
        let mut ul_names = BTreeMap::new();
        for k in 0..ul.nu() {
            ul_names.insert(format!("u{}", ascii_root(folding.ulx(), &ul.betas()[k])), ul.braid_root_vector(k)?);
        }
        let mut ctx = Context { folding, ulh, x_names, ul_names };
        for (_, n, def) in DEFS.iter().filter(|(f, _, _)| *f == name) {
            let v = ctx.define(def)?;
            ctx.x_names.insert(n.to_string(), v);
        }
        Ok(ctx)
    }

    fn define(&self, def: &str) -> Result<FreeElt> {
        let Some(rest) = def.strip_prefix("T:") else { return self.parse_x(def) };
        let (word, expr) = rest.split_once(':').ok_or_else(|| Error::Parse(def.to_string()))?;
        let mut y = self.parse_x(expr)?;
        let x = self.folding.x();
        for l in word.split(',').rev() {
            y = apply_braid(x.index_of(l.trim())?, &y)?;
        }
        Ok(y)
    }

    pub fn parse_x(&self, s: &str) -> Result<FreeElt> {
        let names: Vec<(&str, &FreeElt)> = self.x_names.iter().map(|(k, v)| (k.as_str(), v)).collect();
        FreeElt::parse_with(self.folding.x(), Z, s, &names)
    }

    pub fn parse_ul(&self, s: &str) -> Result<FreeElt> {
        let names: Vec<(&str, &FreeElt)> = self.ul_names.iter().map(|(k, v)| (k.as_str(), v)).collect();
        FreeElt::parse_with(self.folding.ulx(), Z, s, &names)
    }

    fn side(&self, s: Side) -> Result<FreeElt> {
        match s {
            Side::X(e) => self.parse_x(e),
            Side::Ul(e) => self.parse_ul(e),
        }
    }

    fn project(&self, s: Side) -> Result<VqElt> {
        match s {
            Side::X(e) => self.folding.pi_project(&self.parse_x(e)?, &self.ulh),
            Side::Ul(e) => self.folding.phi_apply(&self.parse_ul(e)?, &self.ulh),
        }
    }

    pub fn check(&self, id: &Identity) -> Result<Outcome> {
        let mut out = self.evaluate(id)?;
        if id.misprint {
            out.pass = !out.pass;
            out.detail = Some(if out.pass { "printed form fails, as expected of a misprint" } else { "printed form holds" }.into());
        }
        Ok(out)
    }

    /// Whether the identity holds as written, ignoring the misprint flag.
    pub fn evaluate(&self, id: &Identity) -> Result<Outcome> {
        match id.sense {
            Sense::Exact => {
                let d = self.side(id.lhs)?.checked_sub(&self.side(id.rhs)?)?;
                let mut items = vec![d.clone()];
                if id.sigma_images {
                    let s = d.sigma(self.folding.aut());
                    items.push(s.sigma(self.folding.aut()));
                    items.push(s);
                }
                for x in &items {
                    if !is_zero(x)? {
                        return Ok(Outcome { pass: false, detail: None, witness: Some(x.to_json()) });
                    }
                }
                Ok(Outcome::pass())
            }
            Sense::ModJ => {
                let d = self.side(id.lhs)?.checked_sub(&self.side(id.rhs)?)?;
                let v = self.folding.pi_project(&d, &self.ulh)?;
                Ok(Outcome { pass: v.is_zero(), detail: None, witness: (!v.is_zero()).then(|| v.to_json()) })
            }
            Sense::Vq => {
                let (a, b) = (self.project(id.lhs)?, self.project(id.rhs)?);
                let d = a.checked_add(&b.scale(&qfold::qarith::RationalFn::constant(-1, self.folding.ring())))?;
                Ok(Outcome { pass: d.is_zero(), detail: None, witness: (!d.is_zero()).then(|| d.to_json()) })
            }
        }
    }
}

/// Contexts for the three foldings, built once.
pub fn contexts() -> Result<Vec<Arc<Context>>> {
    [A2, B2, G2].iter().map(|n| Context::new(n).map(Arc::new)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<&str> = section3().iter().chain(section4().iter()).map(|i| i.id).collect();
        let n = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn misprints_are_inverted() {
        let ctx = Context::new(B2).unwrap();
        let table = section4();
        let b2: Vec<&Identity> = table.iter().filter(|i| i.folding == B2).collect();
        assert!(!b2.is_empty());
        for i in b2 {
            let (e, c) = (ctx.evaluate(i).unwrap(), ctx.check(i).unwrap());
            assert_eq!(e.pass != c.pass, i.misprint, "{}", i.id);
        }
    }
}
