//! Exact palindromic length of short elements by meet-in-the-middle search.
use freewidth::lab::{enumerate_ball, PlengthOracle, DEFAULT_BALL_CAP};
use freewidth::{AmalInstance, FiniteGroup};

fn main() -> freewidth::Result<()> {
    let z2 = FiniteGroup::cyclic(2);
    let inst = AmalInstance::free_product(z2.clone(), z2)?;
    let ball = enumerate_ball(&inst, 8, DEFAULT_BALL_CAP)?;
    let mut oracle = PlengthOracle::new(&inst, 0, 12, 6, DEFAULT_BALL_CAP)?;
    let mut hist = std::collections::BTreeMap::new();
    for e in ball.entries() {
        let pl = oracle.query(&e.word);
        *hist.entry(pl).or_insert(0usize) += 1;
        if e.length <= 3 {
            println!("{:<16} length {} plength {:?}", inst.format_word(&e.word), e.length, pl);
        }
    }
    println!(
        "ball of radius 8 in Z2 * Z2: {} elements, plength histogram {hist:?}",
        ball.len()
    );
    Ok(())
}
