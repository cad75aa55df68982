use proptest::prelude::*;

use orient3::chain_fixed::FixedChain;
use orient3::chain_flip::{FlipMove, FlipState};
use orient3::dyck::{dyck_to_orientation, enumerate_dyck_pairs, orientation_to_dyck};
use orient3::oracle::canonical_code;
use orient3::orientation::Orientation3;
use orient3::rng::stream;
use orient3::triangulation::{random_triangulation, Triangulation};

fn triangulation(n: usize, seed: u64) -> Triangulation {
    random_triangulation(n, &mut stream(seed, n as u64))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fixed_chains_stay_valid(n in 1usize..12, seed in any::<u64>(), tower in any::<bool>()) {
        let t = triangulation(n, seed);
        let fc = FixedChain::new(t.clone());
        let mut o = Orientation3::initial(&t).unwrap();
        o.validate(&t).unwrap();
        let mut rng = stream(seed, 99);
        for _ in 0..300 {
            if tower {
                fc.mcr_step(&mut o, &mut rng);
            } else {
                fc.mtr_step(&mut o, &mut rng);
            }
        }
        prop_assert!(o.validate(&t).is_ok());
    }

    #[test]
    fn dyck_walk_decodes(n in 1usize..=7, seed in any::<u64>()) {
        let mut p = enumerate_dyck_pairs(n).swap_remove(0);
        let mut rng = stream(seed, 7);
        for _ in 0..200 {
            p.mdk_step(&mut rng);
        }
        let s = dyck_to_orientation(&p).unwrap();
        prop_assert!(s.wood.validate(&s.tri).is_ok());
        prop_assert_eq!(orientation_to_dyck(&s), p);
    }

    #[test]
    fn mirror_move_undoes_a_flip(n in 2usize..9, seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let s = FlipState::initial(triangulation(n, seed)).unwrap();
        let moves = s.enumerate_flip_moves();
        prop_assume!(!moves.is_empty());
        let m = moves[pick.index(moves.len())];
        let next = s.apply(m).unwrap();
        let back = FlipMove { x: m.z, y: m.w, z: m.x, w: m.y };
        prop_assert_eq!(&next.apply(back).unwrap(), &s);
        prop_assert_eq!(canonical_code(&next.apply(back).unwrap()), canonical_code(&s));
    }

    #[test]
    fn canonical_code_survives_serialization(n in 1usize..=6, seed in any::<u64>()) {
        let mut s = dyck_to_orientation(&enumerate_dyck_pairs(n)[0]).unwrap();
        let mut rng = stream(seed, 3);
        for _ in 0..100 {
            s.mef_step(&mut rng);
        }
        let back = FlipState::from_json(&s.to_json()).unwrap();
        prop_assert_eq!(canonical_code(&back), canonical_code(&s));
        prop_assert_eq!(canonical_code(&dyck_to_orientation(&orientation_to_dyck(&s)).unwrap()), canonical_code(&s));
    }
}
