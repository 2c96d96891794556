//! The search that produced `named::THREE_A6_GENERATORS`.
//!
//! Random pairs `(a, b)` in SL₃(4) with `a` of order 2, `b` of order 4 and
//! `ab` of order 5 or 15 are closed with a small cap; the first pair whose
//! closure is a perfect group of order 1080 with center of order 3 wins.
//! Run with `cargo test --test three_a6_search -- --ignored --nocapture`.

use pcg::grp::{Group, DEFAULT_CAP};
use pcg::named::build_str;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
#[ignore]
fn search_three_a6_generators() {
    let sl = build_str("sl:3:4").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x3a6);
    let n = sl.order() as u32;
    for attempt in 0..200_000 {
        let a = rng.gen_range(1..n);
        let b = rng.gen_range(1..n);
        if sl.element_order(a) != 2 || sl.element_order(b) != 4 || ![5, 15].contains(&sl.element_order(sl.mul(a, b))) {
            continue;
        }
        let gens = [sl.element(a).clone(), sl.element(b).clone()];
        let Ok(g) = Group::generate(&gens, 1080) else { continue };
        if g.order() == 1080 && g.center().len() == 3 && g.is_perfect() {
            println!("attempt {attempt}");
            for e in &gens {
                println!("{:?}", e.as_matrix().unwrap().entries());
            }
            assert!(Group::generate(&gens, DEFAULT_CAP).unwrap().order() == 1080);
            return;
        }
    }
    panic!("no generators found");
}
