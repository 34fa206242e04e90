//! The bijective forest codec: a worked 22-vertex code, plus random round
//! trips in both directions.
//!
//!     cargo run --release --example forest_codec

use excessum::codec::{decode, encode, sample_forest, ForestCode};
use excessum::parallel::run_stream;
use excessum::species::Uniformity;
use rand::Rng;

fn main() {
    // a 3-uniform forest with 4 roots, 9 hyperedges and 22 vertices
    let code = ForestCode {
        roots: [5, 9, 13, 16].into(),
        last: 13,
        blocks: vec![
            vec![1, 22],
            vec![2, 17],
            vec![3, 19],
            vec![4, 8],
            vec![6, 7],
            vec![10, 15],
            vec![11, 18],
            vec![12, 14],
            vec![20, 21],
        ],
        draws: vec![21, 18, 13, 13, 4, 18, 21, 7],
    };
    let b3 = Uniformity::new(3).unwrap();
    let forest = decode(&code, b3, 22).unwrap();
    println!("decoded forest ({} components):", forest.components().len());
    for e in forest.edges() {
        println!("  {e:?}");
    }
    let back = encode(&forest, &code.roots).unwrap();
    assert_eq!(back, code);
    println!("re-encoding reproduces the quadruple bit for bit\n");

    let mut rng = run_stream(12, 0);
    let mut trips = 0;
    for _ in 0..2000 {
        let bb = 2 + rng.gen_range(0..3usize);
        let b = Uniformity::new(bb).unwrap();
        let s = rng.gen_range(0..7usize);
        let k = rng.gen_range(0..4usize);
        let (forest, roots) = sample_forest(b, s, k, &mut rng);
        let code = encode(&forest, &roots).unwrap();
        assert_eq!(decode(&code, b, s * (bb - 1) + k + 1).unwrap(), forest);
        trips += 1;
    }
    println!("{trips} random encode/decode round trips passed");
}
