//! Generated instances as JSON documents, parsed back into domain types.
//!
//!     cargo run --example json_documents

use kframes::algebra::Tolerance;
use kframes::frames::kframe_check;
use kframes::harness::generate::{generate_instance, InstanceSpec, Scenario};
use kframes::harness::json::Document;

fn main() -> kframes::Result<()> {
    let tol = Tolerance::default();
    let spec = InstanceSpec {
        seed: 9,
        k: 2,
        n: 2,
        j: 3,
        scenario: Scenario::Kframe,
    };
    let text = generate_instance(&spec, &tol)?.to_document(&spec).to_string_pretty();
    println!("{} bytes of JSON, first lines:", text.len());
    for line in text.lines().take(6) {
        println!("  {line}");
    }

    let doc = Document::parse_str(&text)?;
    let f = doc.family("family")?;
    let k = doc.operator("K")?;
    println!("parsed {} elements; K-frame: {}", f.len(), kframe_check(&f, &k, &tol)?.is_some());
    println!("round trip is bit-exact: {}", doc.to_string_pretty() == text);

    let bad = r#"{"algebra_k": 1, "module_n": 2, "K": [[1, 0, 0], [0, 1, 0]]}"#;
    if let Err(e) = Document::parse_str(bad).and_then(|d| d.operator("K")) {
        println!("shape error: {e}");
    }
    Ok(())
}
