//! The byte-to-visible-character convention used by byte-level BPE vocab
//! files: printable Latin-1 bytes stand for themselves and the remaining 68
//! bytes are shifted to U+0100 onwards (so a space is written `Ġ`).

use std::sync::OnceLock;

struct Tables {
    encode: [char; 256],
    decode: std::collections::HashMap<char, u8>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut encode = ['\0'; 256];
        let mut shifted = 0u32;
        for b in 0..=255u8 {
            let visible = matches!(b, b'!'..=b'~' | 0xA1..=0xAC | 0xAE..=0xFF);
            encode[b as usize] = if visible {
                char::from(b)
            } else {
                let c = char::from_u32(256 + shifted).expect("below surrogates");
                shifted += 1;
                c
            };
        }
        let decode = encode
            .iter()
            .enumerate()
            .map(|(b, &c)| (c, b as u8))
            .collect();
        Tables { encode, decode }
    })
}

/// Visible form of raw token bytes.
pub fn bytes_to_visible(bytes: &[u8]) -> String {
    let t = tables();
    bytes.iter().map(|&b| t.encode[b as usize]).collect()
}

/// Raw bytes of a visible token, or `None` if it contains a character
/// outside the 256-character alphabet.
pub fn visible_to_bytes(token: &str) -> Option<Vec<u8>> {
    let t = tables();
    token.chars().map(|c| t.decode.get(&c).copied()).collect()
}
