//! Loads the bundled BPE model, encodes text with offsets and decodes it
//! back.
//!
//! ```text
//! cargo run -p peek2 --example bpe_roundtrip -- "some text"
//! ```

use peek2::bpe::{bytes_to_visible, BpeModel, Encoding};
use peek2::differential::corpus::model_fixture;

pub fn run_example(text: &str) -> Result<Encoding, Box<dyn std::error::Error>> {
    let (vocab, merges) = model_fixture();
    let model = BpeModel::load_files(vocab, merges)?;
    let encoding = model.encode(text);
    for (id, &(start, end)) in encoding.ids.iter().zip(&encoding.offsets) {
        let bytes = model.token_bytes(*id).unwrap_or_default();
        println!("{id:>6} {start:>4}..{end:<4} {}", bytes_to_visible(bytes));
    }
    let decoded = model.decode(&encoding.ids);
    assert_eq!(decoded, text.as_bytes(), "round trip");
    println!(
        "{} bytes -> {} tokens (vocab {})",
        text.len(),
        encoding.len(),
        model.vocab_size()
    );
    Ok(encoding)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let text = if args.is_empty() {
        "The quick brown fox isn't 1234567 years old.\n\u{6771}\u{4EAC}".to_string()
    } else {
        args.join(" ")
    };
    run_example(&text)?;
    Ok(())
}
