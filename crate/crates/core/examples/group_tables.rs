//! Load a Cayley table and inspect its cosets and quotients.
use freewidth::group::{cosets, double_cosets, is_normal, quotient, subgroup_check, Side};
use freewidth::FiniteGroup;

fn main() -> freewidth::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data/groups");
    let s3 = FiniteGroup::load(format!("{dir}/s3.json"))?;
    println!("{s3}: order {}", s3.order());
    for g in s3.elements() {
        println!("  {} has order {}", s3.element_name(g), s3.element_order(g));
    }

    let h = subgroup_check(&s3, &[0, 1])?;
    let right = cosets(&s3, &h, Side::Right);
    println!("right transversal of an order-2 subgroup: {:?}", right.reps());
    println!("double cosets: {:?}", double_cosets(&s3, &h));
    println!("normal: {}", is_normal(&s3, &h));

    let z4 = FiniteGroup::cyclic(4);
    let h2 = subgroup_check(&z4, &[0, 2])?;
    let (q, proj) = quotient(&z4, &h2)?;
    println!("Z4 / <2> has order {}, projection {:?}", q.order(), proj);
    Ok(())
}
