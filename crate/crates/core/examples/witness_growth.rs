//! Growth of f and of the palindromic-length lower bound on witness words.
use freewidth::lab::growth_report;
use freewidth::{AmalInstance, HnnInstance};

fn main() -> freewidth::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let hnn = HnnInstance::load(format!("{dir}/z4hnn.json"))?;
    let report = growth_report(&hnn, 0, 80)?;
    println!("{report}");
    println!("hnn bound first exceeds 10 at K = {:?}", report.first_exceeding(10));

    let amal = AmalInstance::load(format!("{dir}/z5z2.json"))?;
    let report = growth_report(&amal, 2, 40)?;
    println!("{report}");
    Ok(())
}
