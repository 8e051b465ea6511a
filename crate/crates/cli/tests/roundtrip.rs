//! parse ∘ serialize is the identity on valid manifold documents.

use proptest::prelude::*;
use swcalc_cli::{parse_manifold, BlockDescriptor, ClassDescriptor, ManifoldDoc};

fn coprime_pair() -> impl Strategy<Value = (u64, u64)> {
    (1u64..8, 1u64..8).prop_filter("coprime", |(m, n)| num_gcd(*m, *n) == 1)
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn block() -> impl Strategy<Value = BlockDescriptor> {
    prop_oneof![
        (1u64..6, coprime_pair(), proptest::option::of(-4i64..4))
            .prop_map(|(p_g, (m, n), class)| { BlockDescriptor::Elliptic { p_g, m, n, class } }),
        proptest::option::of(-2i64..3).prop_map(|class| BlockDescriptor::K3 { class }),
        (0u64..8).prop_map(|h| BlockDescriptor::Symplectic { b_plus: 2 * h + 1 }),
        (0u64..8, 0usize..3, any::<bool>()).prop_map(|(h, k, with_class)| {
            let odd_basic: Vec<ClassDescriptor> = (0..k)
                .map(|i| ClassDescriptor {
                    label: format!("c{i}"),
                    c_square: 4,
                })
                .collect();
            let class = (with_class && k > 0).then(|| "c0".to_string());
            BlockDescriptor::Kaehler {
                b_plus: 2 * h + 1,
                odd_basic,
                class,
            }
        }),
        (
            1usize..4,
            proptest::collection::vec(0i64..4, 3),
            any::<bool>()
        )
            .prop_map(|(rank, halves, explicit)| {
                let c: Vec<i64> = halves[..rank].iter().map(|h| 2 * h + 1).collect();
                let c_square = -c.iter().map(|x| x * x).sum::<i64>();
                if explicit {
                    BlockDescriptor::NegativeDefinite {
                        rank: rank as u64,
                        c: Some(c),
                        c_square: None,
                    }
                } else {
                    BlockDescriptor::NegativeDefinite {
                        rank: rank as u64,
                        c: None,
                        c_square: Some(c_square),
                    }
                }
            }),
        Just(BlockDescriptor::S4 {}),
    ]
}

fn doc() -> impl Strategy<Value = ManifoldDoc> {
    (
        proptest::option::of("[a-zA-Z0-9 #]{0,12}"),
        proptest::option::of("[ -~]{0,20}"),
        proptest::collection::vec(block(), 1..6),
    )
        .prop_map(|(name, notes, summands)| ManifoldDoc {
            name,
            notes,
            summands,
        })
}

proptest! {
    #[test]
    fn parse_serialize_roundtrip(d in doc()) {
        let text = d.to_json();
        let back = parse_manifold(&text).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn compact_and_pretty_forms_agree(d in doc()) {
        let compact = serde_json::to_string(&d).unwrap();
        prop_assert_eq!(parse_manifold(&compact).unwrap(), d);
    }
}
