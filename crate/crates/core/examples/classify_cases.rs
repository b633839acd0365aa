//! Classify every bundled amalgam by which lower-bound argument applies.
use freewidth::AmalInstance;

fn main() -> freewidth::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    for name in ["z5z2", "z8z4", "s3z2xz2", "g36s3xz2", "z2z2", "z4z2xz2"] {
        let inst = AmalInstance::load(format!("{dir}/{name}.json"))?;
        match inst.classification() {
            Ok(c) => {
                let round_trip = inst
                    .presentation_table()
                    .map(
                        |t| match t.check_round_trip(inst.group(freewidth::group::Factor::First)) {
                            Ok(()) => "ok".to_string(),
                            Err(x) => format!("fails at {x}"),
                        },
                    )
                    .unwrap_or_else(|| "-".into());
                println!(
                    "{name:<10} {:<15} indices {}/{} witness {:?} table {round_trip}",
                    c.case.label(),
                    c.index1,
                    c.index2,
                    inst.witness().map(|s| s.to_string()),
                );
            }
            Err(e) => println!("{name:<10} {e}"),
        }
    }
    Ok(())
}
