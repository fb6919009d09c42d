//! Random valid gluing tables for property tests.

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Gluing, Perm, Tetrahedron, Triangulation};

fn all_perms() -> Vec<Perm> {
    let mut out = Vec::new();
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                if let Some(d) = 6u8.checked_sub(a + b + c) {
                    out.extend(Perm::new([a, b, c, d]));
                }
            }
        }
    }
    out
}

/// Pairs up the `4n` faces at random. With `orientable`, every gluing map is
/// odd, so the tetrahedra can all be oriented positively.
pub(crate) fn random_triangulation(n: usize, orientable: bool, seed: u64) -> Triangulation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let perms = all_perms();
    let mut faces: Vec<(usize, usize)> = (0..n).flat_map(|t| (0..4).map(move |f| (t, f))).collect();
    faces.shuffle(&mut rng);
    let placeholder = Gluing { neighbor: 0, perm: perms[0] };
    let mut tets = vec![Tetrahedron { gluings: [placeholder; 4] }; n];
    for pair in faces.chunks(2) {
        let ((i, j), (k, l)) = (pair[0], pair[1]);
        let choices: Vec<Perm> = perms
            .iter()
            .copied()
            .filter(|p| p.apply(j) == l && (!orientable || p.is_odd()))
            .collect();
        let perm = choices[rng.random_range(0..choices.len())];
        tets[i].gluings[j] = Gluing { neighbor: k, perm };
        tets[k].gluings[l] = Gluing { neighbor: i, perm: perm.inverse() };
    }
    Triangulation::new(format!("random{n}"), tets).expect("generated gluings are involutive")
}

pub(crate) fn triangulation(orientable: bool) -> impl Strategy<Value = Triangulation> {
    (1usize..7, any::<u64>()).prop_map(move |(n, seed)| random_triangulation(n, orientable, seed))
}
