//! Reduced syllable words, normal forms and marked special forms in an
//! amalgamated free product.
use freewidth::AmalInstance;

fn main() -> freewidth::Result<()> {
    let inst = AmalInstance::load(concat!(env!("CARGO_MANIFEST_DIR"), "/data/z5z2.json"))?;
    let w = inst.witness_word(4)?;
    println!("witness(4) = {}", inst.format_word(&w));
    println!("normal form  {}", inst.normal_form(&w));
    let sf = inst.special_form(&w)?;
    let marks: Vec<String> = sf.marks().iter().map(|m| format!("{m:?}")).collect();
    println!("marks        {}", marks.join(" "));
    println!("evaluates back: {}", inst.equals(&inst.evaluate(&sf), &w));
    println!("run stats    {:?}", inst.run_stats(&w)?);
    println!("f            {}", inst.f(&w)?);

    let u = inst.parse_word("1:1 1:4 2:1 1:2 2:1")?;
    println!(
        "{} reduces to {}",
        inst.format_word(&u),
        inst.format_word(&inst.reduce(&u))
    );
    Ok(())
}
