mod common;

use common::metamorphic;
use deltazx::semantics::{generator_tensor, hadamard_power, Matrix, Mode};
use deltazx::{Angle, NodeKind};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn functoriality(seed in any::<u64>()) {
        prop_assert_eq!(metamorphic::functoriality(seed), Ok(()));
    }

    #[test]
    fn topology_invariance(seed in any::<u64>()) {
        prop_assert_eq!(metamorphic::topology(seed), Ok(()));
    }

    #[test]
    fn colour_swap_covariance(seed in any::<u64>()) {
        prop_assert_eq!(metamorphic::colour_swap(seed), Ok(()));
    }

    #[test]
    fn exact_and_float_agree(seed in any::<u64>()) {
        prop_assert_eq!(metamorphic::exact_float(seed), Ok(()));
    }

    #[test]
    fn x_spider_is_hadamard_conjugated_z(k in 0i64..8, n in 0usize..3, m in 0usize..3) {
        let ex = |kind| match generator_tensor(&kind, Mode::Exact).unwrap() {
            Matrix::Exact(d) => d,
            Matrix::Float(_) => unreachable!(),
        };
        let z = ex(NodeKind::z(Angle::quarter(k), n, m));
        let x = ex(NodeKind::x(Angle::quarter(k), n, m));
        prop_assert_eq!(x, hadamard_power(m).matmul(&z).matmul(&hadamard_power(n)));
    }
}
