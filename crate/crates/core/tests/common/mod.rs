#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smp_core::SmpInstance;

/// Lists given as bit masks over the opposite side.
pub fn from_masks(girl_masks: &[u32], boy_masks: &[u32]) -> SmpInstance {
    let nb = boy_masks.len();
    let ng = girl_masks.len();
    let expand = |mask: u32, n: usize| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>();
    SmpInstance::from_indices(
        girl_masks.iter().map(|&m| expand(m, nb)).collect(),
        boy_masks.iter().map(|&m| expand(m, ng)).collect(),
    )
    .unwrap()
}

/// All 8^6 instances with three girls and three boys.
pub fn exhaustive_three_by_three() -> impl Iterator<Item = SmpInstance> {
    (0u32..1 << 18).map(|code| {
        let girls: Vec<u32> = (0..3).map(|i| code >> (3 * i) & 7).collect();
        let boys: Vec<u32> = (3..6).map(|i| code >> (3 * i) & 7).collect();
        from_masks(&girls, &boys)
    })
}

/// Random instance: each person holds a list with probability `p_list`, and
/// a listed person names each member of the other side with probability
/// `p_entry` (at least one).
pub fn random_instance(rng: &mut ChaCha8Rng, ng: usize, nb: usize, p_list: f64, p_entry: f64) -> SmpInstance {
    let mut side = |own: usize, other: usize| -> Vec<Vec<usize>> {
        (0..own)
            .map(|_| {
                if !rng.random_bool(p_list) {
                    return Vec::new();
                }
                let mut l: Vec<usize> = (0..other).filter(|_| rng.random_bool(p_entry)).collect();
                if l.is_empty() && other > 0 {
                    l.push(rng.random_range(0..other));
                }
                l
            })
            .collect()
    };
    let girls = side(ng, nb);
    let boys = side(nb, ng);
    SmpInstance::from_indices(girls, boys).unwrap()
}

/// The random corpus: `count` instances with side sizes in 4..=6.
pub fn random_corpus(seed: u64, count: usize) -> Vec<SmpInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let ng = rng.random_range(4..=6);
            let nb = rng.random_range(4..=6);
            let p_list = rng.random_range(0.2..0.9);
            let p_entry = rng.random_range(0.15..0.7);
            random_instance(&mut rng, ng, nb, p_list, p_entry)
        })
        .collect()
}
