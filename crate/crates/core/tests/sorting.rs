use blockqs::{
    block_quicksort, block_sort, introsort_classic, quicksort_hoare, stack_bound,
    tuned_quicksort_lomuto, PivotStrategy, SortConfig, SortStats, Variant,
};
use proptest::prelude::*;

const PIVOTS: [PivotStrategy; 8] = [
    PivotStrategy::Mo3,
    PivotStrategy::Mo5,
    PivotStrategy::Mo23,
    PivotStrategy::Mo3xMo3,
    PivotStrategy::Mo3xMo5,
    PivotStrategy::Mo5xMo5,
    PivotStrategy::MoSqrtN,
    PivotStrategy::Skewed(7),
];

fn sorted_copy(v: &[i64]) -> Vec<i64> {
    let mut w = v.to_vec();
    w.sort();
    w
}

fn check_block(v: &[i64], cfg: &SortConfig) {
    let mut w = v.to_vec();
    let stats = SortStats::new();
    block_quicksort(&mut w, cfg, |a, b| a < b, &stats);
    assert_eq!(w, sorted_copy(v), "{cfg:?}");
    assert!(
        stats.max_stack_depth() <= stack_bound(v.len()) as u64,
        "{cfg:?}"
    );
    if cfg.variant != Variant::HoareFinish {
        assert_eq!(stats.exactness_violations(), 0, "{cfg:?}");
    }
}

#[test]
fn organ_pipe_and_sawtooth_with_every_pivot_rule() {
    let n = 5000i64;
    let organ: Vec<i64> = (0..n).map(|i| i.min(n - i)).collect();
    let saw: Vec<i64> = (0..n).map(|i| i % 61).collect();
    for v in [organ, saw] {
        for variant in [Variant::Simple, Variant::Tuned, Variant::HoareFinish] {
            for pivot in PIVOTS {
                for dc in [false, true] {
                    let cfg = SortConfig::new(variant)
                        .with_pivot(pivot)
                        .with_duplicate_check(dc);
                    check_block(&v, &cfg);
                }
            }
        }
    }
}

#[test]
fn pairs_sort_by_value_and_by_key() {
    // a key-only comparator must still group equal keys together
    let v: Vec<(u8, u32)> = (0..3000u32).map(|i| ((i * 37 % 11) as u8, i)).collect();
    let mut w = v.clone();
    block_sort(&mut w);
    assert!(w.windows(2).all(|p| p[0] <= p[1]));
    let mut keys_only = v;
    let cfg = SortConfig::default();
    block_quicksort(&mut keys_only, &cfg, |a, b| a.0 < b.0, &SortStats::new());
    assert!(keys_only.windows(2).all(|p| p[0].0 <= p[1].0));
}

#[test]
fn zero_sized_and_large_elements() {
    let mut units = vec![(); 1000];
    block_sort(&mut units);
    let mut big: Vec<[u64; 40]> = (0..700u64).rev().map(|i| [i; 40]).collect();
    block_sort(&mut big);
    assert!(big.windows(2).all(|p| p[0] <= p[1]));
}

proptest! {
    #[test]
    fn all_sorters_agree_with_std(
        v in prop::collection::vec(-50i64..50, 0..3000),
        block_exp in 1u32..10,
        pivot in 0usize..PIVOTS.len(),
    ) {
        let expected = sorted_copy(&v);
        for variant in [Variant::Simple, Variant::Tuned, Variant::HoareFinish] {
            let b = if variant == Variant::Simple { 3 + (block_exp as usize) * 7 } else { 1 << block_exp };
            let cfg = SortConfig::new(variant).with_block_size(b).with_pivot(PIVOTS[pivot]);
            check_block(&v, &cfg);
        }
        for sort in [introsort_classic, tuned_quicksort_lomuto, quicksort_hoare] {
            let mut w = v.clone();
            let stats = SortStats::new();
            sort(&mut w, |a: &i64, b: &i64| a < b, &stats);
            prop_assert_eq!(&w, &expected);
            prop_assert!(stats.max_stack_depth() <= stack_bound(v.len()) as u64);
        }
    }
}
