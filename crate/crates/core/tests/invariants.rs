mod common;

use proptest::prelude::*;

use sogkit::cuntz::{v_of_descriptor, AlgebraDescriptor};
use sogkit::sogmon::{decompose_regular, fg_submonoid_cover, SogPresentation};

/// A finite presentation built from a pure direct-sum homomorphism.
fn finite_presentation(seed: u64) -> SogPresentation {
    let mut rng = common::rng(seed);
    loop {
        let lat = common::random_lattice(&mut rng, 3);
        let orders = common::torsion_factors(&mut rng, 12);
        if orders.is_empty() {
            continue;
        }
        let g = common::scrambled(&mut rng, &orders);
        let phi = common::direct_sum_hom(&mut rng, &lat, &g, false, true).phi;
        return common::presentation_of_hom(&phi);
    }
}

fn descriptor() -> impl Strategy<Value = AlgebraDescriptor> {
    prop_oneof![
        (1u64..6, 2u64..9).prop_map(|(m, n)| AlgebraDescriptor::MatCuntz(m, n)),
        (1u64..6).prop_map(AlgebraDescriptor::MatOInf),
        (1u64..6).prop_map(AlgebraDescriptor::CornerOInf),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn natural_maps_compose(seed in any::<u64>()) {
        let p = finite_presentation(seed);
        let (m, _) = p.to_fin_monoid(512).unwrap();
        let d = decompose_regular(&m).unwrap();
        let lam = d.lam();
        for a in 0..lam.size() {
            for b in (0..lam.size()).filter(|&b| lam.leq(a, b)) {
                for c in (0..lam.size()).filter(|&c| lam.leq(b, c)) {
                    for &x in d.members(a) {
                        let via = d.natural_map(&m, b, c, d.natural_map(&m, a, b, x).unwrap()).unwrap();
                        prop_assert_eq!(via, d.natural_map(&m, a, c, x).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn covering_everything_gives_everything(seed in any::<u64>()) {
        let p = finite_presentation(seed);
        let all = p.elements(512).unwrap();
        let cover = fg_submonoid_cover(&p, &all).unwrap();
        let mut inside: Vec<_> = cover.presentation.elements(512).unwrap().iter().map(|y| cover.embed(y)).collect();
        inside.sort();
        let mut want = all.clone();
        want.sort();
        prop_assert_eq!(inside, want);
    }

    #[test]
    fn v_data_of_a_sum_is_the_sum(ds in prop::collection::vec(descriptor(), 1..4)) {
        let whole = v_of_descriptor(&AlgebraDescriptor::DirectSum(ds.clone())).unwrap();
        let parts: Vec<_> = ds.iter().flat_map(|d| v_of_descriptor(d).unwrap().blocks).collect();
        prop_assert_eq!(&whole.blocks, &parts);
        let unit = whole.unit.unwrap();
        let want: Vec<_> = parts.iter().map(|b| b.normalized_unit().unwrap()).collect();
        prop_assert_eq!(unit.grp, want);
    }
}
