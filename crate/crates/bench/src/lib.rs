//! Shared setup for the pipeline benchmarks.

use onsup_core::harness::surveillance::{build_surveillance_example, SurveillanceExample};
use onsup_core::{build_product, compute_ranking, translate, ProductAutomaton, RankingFunction};

/// The surveillance example carried through to its ranked product.
pub struct Ranked {
    pub example: SurveillanceExample,
    pub product: ProductAutomaton,
    pub ranking: RankingFunction,
}

pub fn ranked_surveillance() -> Ranked {
    let example = build_surveillance_example();
    let dfa = translate(&example.formula, example.plant.ap()).expect("bundled specification translates");
    let product = build_product(&example.plant, &dfa).expect("bundled product builds");
    let ranking = compute_ranking(&product);
    Ranked {
        example,
        product,
        ranking,
    }
}
