use toruskel::{batch_map, synth, weights};

fn main() {
    let t0 = std::time::Instant::now();
    let instances: Vec<(usize, u64)> = (0..4000u64).map(|i| ((3 + (i % 4) as usize), i)).collect();
    let results = batch_map(instances, |(d, seed)| {
        let mut rng = synth::rng(seed ^ 0xabcd);
        let w = if seed % 3 == 0 {
            synth::planted_finite_isotropy(d, &mut rng)
        } else {
            synth::random_faithful_system(d, d + 2, &mut rng)
        };
        let res = weights::s1_split(&w).unwrap();
        weights::verify_split_result(&w, &res).is_ok()
    });
    assert!(results.iter().all(|&ok| ok));
    println!("criterion-4 splits: 4000 ok, {:?}", t0.elapsed());

    let t0 = std::time::Instant::now();
    for steps in 1..=3usize {
        let d = 2 * steps + 1;
        for seed in 0..50u64 {
            let mut rng = synth::rng(seed * 77 + steps as u64);
            let w = synth::random_faithful_system(d, d + 1, &mut rng);
            let it = weights::iterated_split(&w, steps).unwrap();
            assert_eq!(it.induced.class_count(), steps + 1);
            assert_eq!(it.subgroup.dim(), steps);
        }
    }
    println!("iterated splits ok, {:?}", t0.elapsed());
}
