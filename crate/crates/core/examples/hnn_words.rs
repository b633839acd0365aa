//! Britton reduction, normal forms and signatures in an HNN extension.
use freewidth::HnnInstance;

fn main() -> freewidth::Result<()> {
    let inst = HnnInstance::load(concat!(env!("CARGO_MANIFEST_DIR"), "/data/z4hnn.json"))?;
    for text in [
        "t g:1 t^-1",
        "t g:2 t^-1",
        "t t g:1 t^-1 t^-1",
        "t g:1 t g:3 t^-1 t^-1 t",
    ] {
        let w = inst.parse_word(text)?;
        let r = inst.reduce(&w);
        println!(
            "{text:<24} reduced {:<20} nf {:<20} signature {} f {}",
            inst.format_word(&r),
            inst.format_word(&inst.normal_form(&w)),
            inst.signature(&w),
            inst.f(&w),
        );
    }
    Ok(())
}
