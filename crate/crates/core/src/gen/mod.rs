//! Synthetic multilayer inputs: heavy-tailed and normal-degree layer
//! generators, base-graph splitting, and manifest-driven suite generation.
//! Everything is deterministic per seed.

mod normal;
mod rmat;
mod split;
mod suite;

pub use normal::{generate_normal, NormalParams};
pub use rmat::{generate_rmat, RmatParams};
pub use split::{split_layers, SplitMode};
pub use suite::{
    build_suite, load_dataset, realize_dataset, DatasetMeta, DatasetSpec, GenKind, LayerPlan,
    SuiteManifest,
};

/// Derives a child seed from a base seed and a textual tag. FNV-1a over the
/// tag folded with the seed, finished with a splitmix round; fixed constants
/// keep derived seeds stable across platforms and releases.
pub fn fold_seed(seed: u64, tag: &str) -> u64 {
    let mut h = 0xcbf29ce484222325u64 ^ seed.wrapping_mul(0x9e3779b97f4a7c15);
    for &b in tag.as_bytes() {
        h = (h ^ b as u64).wrapping_mul(0x100000001b3);
    }
    let mut z = h.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}
