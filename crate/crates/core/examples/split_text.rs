//! Splits text given on the command line (or a default sample) and prints
//! each segment with its byte range.
//!
//! ```text
//! cargo run -p peek2 --example split_text -- "It's 2024, isn't it?"
//! ```

use peek2::{pretokenize, Segment};

pub fn run_example(text: &str) -> Vec<Segment> {
    let segments: Vec<Segment> = pretokenize(text).collect();
    for seg in &segments {
        println!("{:>5}..{:<5} {:?}", seg.start, seg.end, seg.text(text));
    }
    segments
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let text = if args.is_empty() {
        "Lorem ipsum dolor sit amet.\nIt's 12345678 o'clock\u{2026}  \r\n\tDONE".to_string()
    } else {
        args.join(" ")
    };
    run_example(&text);
}
