//! Run every randomized property suite on the HNN and amalgam references.
//!
//! `cargo run --release --example property_suites -- 500 7` sets the sample
//! count and seed.
use freewidth::lab::{verify_suite, Suite, SuiteParams};
use freewidth::{AmalInstance, HnnInstance};

fn main() -> freewidth::Result<()> {
    let mut args = std::env::args().skip(1);
    let samples = args.next().and_then(|s| s.parse().ok()).unwrap_or(300);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let params = SuiteParams {
        samples,
        seed,
        radius: 4,
        ..SuiteParams::default()
    };
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let hnn = HnnInstance::load(format!("{dir}/z4hnn.json"))?;
    let amal = AmalInstance::load(format!("{dir}/z5z2.json"))?;
    for suite in Suite::ALL {
        for report in [verify_suite(&hnn, suite, &params), verify_suite(&amal, suite, &params)] {
            match report {
                Ok(r) => println!("{r}"),
                Err(e) => println!("{suite}: {e}"),
            }
        }
    }
    Ok(())
}
