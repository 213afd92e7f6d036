//! Builds the bundled multilingual conformance corpus.
//!
//! ```text
//! cargo run -p peek2 --example build_fixture_corpus -- fixtures/corpus/multilingual.txt
//! ```
//!
//! Output is a pure function of the seed: one document per line, mixing
//! Latin, Cyrillic, Greek, Arabic, Hebrew, Devanagari, Thai, CJK and Hangul
//! prose with source code, emoji, numerals and odd whitespace.

use std::path::PathBuf;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x70_6565_6b32;
const MIN_BYTES: usize = 1_150_000;

const ENGLISH: &[&str] = &[
    "The quick brown fox jumps over the lazy dog.",
    "I'm sure it's fine, but we'll see what they've done.",
    "She said she'd call; he didn't, so they're still waiting.",
    "'Twas the night before the release, and nothing was green.",
    "Prices rose 3.5% in Q3 2023, from $1,234.56 to $1,277.77.",
    "Does it work? She asked, and nobody answered.",
    "WE'LL MEET AT 10:30 AM ON THE 4TH OF JULY!!!",
    "Read the docs at https://example.com/docs?page=2&lang=en#intro.",
    "Call +1 (555) 010-9999 or e-mail support@example.org.",
    "It was the best of times, it was the worst of times...",
    "Don't panic -- grab a towel and a cup of tea.",
    "The committee's report (see appendix B, pp. 12-19) was rejected.",
    "Version 2.0.1-rc.3 fixes #1024 and #1025; see CHANGELOG.md.",
    "\"Quoted\" text, 'single quotes', and `backticks` all appear here.",
    "You'D think THEY'VE learned, but they'LL never learn, will they?",
    "An ellipsis\u{2026} an em dash\u{2014}and curly \u{201C}quotes\u{201D} too.",
    "He paid \u{00A3}20 for a \u{00BD}-price ticket at 9\u{00B0}C outside.",
    "Mix of tabs\tand  double  spaces   and trailing spaces   ",
];

const FRENCH: &[&str] = &[
    "L'\u{00E9}t\u{00E9} dernier, nous sommes all\u{00E9}s \u{00E0} la mer.",
    "Aujourd\u{2019}hui, c\u{2019}est l\u{2019}anniversaire d\u{2019}Am\u{00E9}lie.",
    "Qu'est-ce que tu fais ce soir\u{00A0}? Rien de sp\u{00E9}cial\u{00A0}!",
    "Le prix est de 1\u{202F}234,50\u{00A0}\u{20AC} TTC.",
    "J'ai mang\u{00E9} une cr\u{00EA}pe au chocolat \u{00E0} 16\u{00A0}h.",
    "\u{00C7}a va\u{00A0}? Oui, \u{00E7}a va tr\u{00E8}s bien, merci.",
];

const GERMAN_SPANISH: &[&str] = &[
    "Stra\u{00DF}enbahnhaltestelle und Gr\u{00F6}\u{00DF}enordnung sind lange W\u{00F6}rter.",
    "\u{00DC}ber den Wolken muss die Freiheit wohl grenzenlos sein.",
    "Die Rechnung betr\u{00E4}gt 1.299,00 EUR inkl. 19 % MwSt.",
    "\u{00BF}D\u{00F3}nde est\u{00E1} la biblioteca? \u{00A1}Est\u{00E1} cerrada!",
    "El ni\u{00F1}o comi\u{00F3} 12 empanadas el 25 de diciembre de 2024.",
    "\u{0130}stanbul'da \u{015F}ehir hatlar\u{0131} vapuru saat 08.45'te kalkar.",
    "Vi\u{1EC7}t Nam c\u{00F3} h\u{01A1}n 98 tri\u{1EC7}u d\u{00E2}n.",
    "Za\u{017C}\u{00F3}\u{0142}\u{0107} g\u{0119}\u{015B}l\u{0105} ja\u{017A}\u{0144}.",
];

const CYRILLIC_GREEK: &[&str] = &[
    "\u{041F}\u{0440}\u{0438}\u{0432}\u{0435}\u{0442}, \u{043C}\u{0438}\u{0440}! \u{041A}\u{0430}\u{043A} \u{0434}\u{0435}\u{043B}\u{0430}?",
    "\u{041C}\u{043E}\u{0441}\u{043A}\u{0432}\u{0430} \u{2014} \u{0441}\u{0442}\u{043E}\u{043B}\u{0438}\u{0446}\u{0430} \u{0420}\u{043E}\u{0441}\u{0441}\u{0438}\u{0438}, \u{043D}\u{0430}\u{0441}\u{0435}\u{043B}\u{0435}\u{043D}\u{0438}\u{0435} 13 \u{043C}\u{043B}\u{043D}.",
    "\u{0412} 1961 \u{0433}\u{043E}\u{0434}\u{0443} \u{0413}\u{0430}\u{0433}\u{0430}\u{0440}\u{0438}\u{043D} \u{043F}\u{043E}\u{043B}\u{0435}\u{0442}\u{0435}\u{043B} \u{0432} \u{043A}\u{043E}\u{0441}\u{043C}\u{043E}\u{0441}.",
    "\u{0421}\u{044A}\u{0435}\u{0448}\u{044C} \u{0436}\u{0435} \u{0435}\u{0449}\u{0451} \u{044D}\u{0442}\u{0438}\u{0445} \u{043C}\u{044F}\u{0433}\u{043A}\u{0438}\u{0445} \u{0444}\u{0440}\u{0430}\u{043D}\u{0446}\u{0443}\u{0437}\u{0441}\u{043A}\u{0438}\u{0445} \u{0431}\u{0443}\u{043B}\u{043E}\u{043A}.",
    "\u{039A}\u{03B1}\u{03BB}\u{03B7}\u{03BC}\u{03AD}\u{03C1}\u{03B1}! \u{03A4}\u{03B9} \u{03BA}\u{03AC}\u{03BD}\u{03B5}\u{03B9}\u{03C2};",
    "\u{0397} \u{0391}\u{03B8}\u{03AE}\u{03BD}\u{03B1} \u{03B5}\u{03AF}\u{03BD}\u{03B1}\u{03B9} \u{03B7} \u{03C0}\u{03C1}\u{03C9}\u{03C4}\u{03B5}\u{03CD}\u{03BF}\u{03C5}\u{03C3}\u{03B1} \u{03C4}\u{03B7}\u{03C2} \u{0395}\u{03BB}\u{03BB}\u{03AC}\u{03B4}\u{03B1}\u{03C2}.",
];

const ARABIC_HEBREW: &[&str] = &[
    "\u{0645}\u{0631}\u{062D}\u{0628}\u{0627} \u{0628}\u{0627}\u{0644}\u{0639}\u{0627}\u{0644}\u{0645}! \u{0643}\u{064A}\u{0641} \u{062D}\u{0627}\u{0644}\u{0643}\u{061F}",
    "\u{0627}\u{0644}\u{0644}\u{064F}\u{0651}\u{063A}\u{064E}\u{0629}\u{064F} \u{0627}\u{0644}\u{0639}\u{064E}\u{0631}\u{064E}\u{0628}\u{0650}\u{064A}\u{064E}\u{0651}\u{0629}\u{064F} \u{062C}\u{0645}\u{064A}\u{0644}\u{0629}\u{064C}.",
    "\u{0648}\u{0644}\u{062F} \u{0641}\u{064A} \u{0639}\u{0627}\u{0645} \u{0661}\u{0669}\u{0668}\u{0667} \u{0641}\u{064A} \u{0627}\u{0644}\u{0642}\u{0627}\u{0647}\u{0631}\u{0629}\u{060C} \u{0648}\u{0639}\u{0645}\u{0631}\u{0647} \u{0663}\u{0667} \u{0633}\u{0646}\u{0629}.",
    "\u{0627}\u{0644}\u{0633}\u{0639}\u{0631}: \u{0661}\u{066C}\u{0662}\u{0663}\u{0664}\u{066B}\u{0665} \u{062F}\u{0631}\u{0647}\u{0645}",
    "\u{05E9}\u{05DC}\u{05D5}\u{05DD} \u{05E2}\u{05D5}\u{05DC}\u{05DD}! \u{05DE}\u{05D4} \u{05E9}\u{05DC}\u{05D5}\u{05DE}\u{05DA}?",
    "\u{05D1}\u{05B0}\u{05BC}\u{05E8}\u{05B5}\u{05D0}\u{05E9}\u{05B4}\u{05C1}\u{05D9}\u{05EA} \u{05D1}\u{05B8}\u{05BC}\u{05E8}\u{05B8}\u{05D0} \u{05D0}\u{05B1}\u{05DC}\u{05B9}\u{05D4}\u{05B4}\u{05D9}\u{05DD}",
];

const INDIC_THAI: &[&str] = &[
    "\u{0928}\u{092E}\u{0938}\u{094D}\u{0924}\u{0947} \u{0926}\u{0941}\u{0928}\u{093F}\u{092F}\u{093E}! \u{0906}\u{092A} \u{0915}\u{0948}\u{0938}\u{0947} \u{0939}\u{0948}\u{0902}?",
    "\u{092D}\u{093E}\u{0930}\u{0924} \u{0915}\u{0940} \u{091C}\u{0928}\u{0938}\u{0902}\u{0916}\u{094D}\u{092F}\u{093E} \u{0967}\u{0967}\u{0966} \u{0915}\u{0930}\u{094B}\u{0921}\u{093C} \u{0938}\u{0947} \u{0905}\u{0927}\u{093F}\u{0915} \u{0939}\u{0948}\u{0964}",
    "\u{0986}\u{09AE}\u{09BF} \u{09AC}\u{09BE}\u{0982}\u{09B2}\u{09BE}\u{09AF}\u{09BC} \u{0997}\u{09BE}\u{09A8} \u{0997}\u{09BE}\u{0987}\u{0964}",
    "\u{0BB5}\u{0BA3}\u{0B95}\u{0BCD}\u{0B95}\u{0BAE}\u{0BCD}, \u{0B8E}\u{0BAA}\u{0BCD}\u{0BAA}\u{0B9F}\u{0BBF} \u{0B87}\u{0BB0}\u{0BC1}\u{0B95}\u{0BCD}\u{0B95}\u{0BBF}\u{0BB1}\u{0BC0}\u{0BB0}\u{0BCD}\u{0B95}\u{0BB3}\u{0BCD}?",
    "\u{0E2A}\u{0E27}\u{0E31}\u{0E2A}\u{0E14}\u{0E35}\u{0E04}\u{0E23}\u{0E31}\u{0E1A} \u{0E22}\u{0E34}\u{0E19}\u{0E14}\u{0E35}\u{0E17}\u{0E35}\u{0E48}\u{0E44}\u{0E14}\u{0E49}\u{0E23}\u{0E39}\u{0E49}\u{0E08}\u{0E31}\u{0E01}",
    "\u{0E01}\u{0E23}\u{0E38}\u{0E07}\u{0E40}\u{0E17}\u{0E1E}\u{0E21}\u{0E2B}\u{0E32}\u{0E19}\u{0E04}\u{0E23} \u{0E55}\u{0E52}\u{0E50} \u{0E1B}\u{0E35}",
];

const CJK: &[&str] = &[
    "\u{4ECA}\u{5929}\u{5929}\u{6C14}\u{5F88}\u{597D}\u{FF0C}\u{6211}\u{4EEC}\u{53BB}\u{516C}\u{56ED}\u{6563}\u{6B65}\u{5427}\u{3002}",
    "\u{5317}\u{4EAC}\u{662F}\u{4E2D}\u{56FD}\u{7684}\u{9996}\u{90FD}\u{FF0C}\u{4EBA}\u{53E3}\u{7EA6}2189\u{4E07}\u{3002}",
    "\u{6211}\u{7231}\u{5B66}\u{4E60}\u{81EA}\u{7136}\u{8BED}\u{8A00}\u{5904}\u{7406}\u{FF08}NLP\u{FF09}\u{548C}\u{673A}\u{5668}\u{5B66}\u{4E60}\u{3002}",
    "\u{4ECA}\u{65E5}\u{306F}\u{3001}\u{3044}\u{3044}\u{5929}\u{6C17}\u{3067}\u{3059}\u{306D}\u{3002}\u{6771}\u{4EAC}\u{30BF}\u{30EF}\u{30FC}\u{306F}333\u{30E1}\u{30FC}\u{30C8}\u{30EB}\u{3067}\u{3059}\u{3002}",
    "\u{30B3}\u{30FC}\u{30D2}\u{30FC}\u{3092}\u{4E00}\u{676F}\u{304F}\u{3060}\u{3055}\u{3044}\u{3002}\u{3000}\u{3042}\u{308A}\u{304C}\u{3068}\u{3046}\u{FF01}",
    "\u{D55C}\u{AD6D}\u{C5B4}\u{B294} \u{C138}\u{C885}\u{B300}\u{C655}\u{C774} \u{B9CC}\u{B4E0} \u{BB38}\u{C790}\u{C785}\u{B2C8}\u{B2E4}. \u{C11C}\u{C6B8}\u{C740} 1000\u{B9CC} \u{BA85}\u{C774} \u{C0B4}\u{C544}\u{C694}.",
    "\u{5E73}\u{6210}\u{4E09}\u{5341}\u{4E00}\u{5E74}\u{3001}\u{4EE4}\u{548C}\u{5143}\u{5E74}\u{3002}\u{7B2C}\u{2160}\u{7AE0}\u{3001}\u{2460}\u{2461}\u{2462}\u{3002}",
];

const CODE: &[&str] = &[
    "fn main() { println!(\"Hello, {}!\", name); }",
    "let v: Vec<u32> = (0..1_000).map(|x| x * 2).collect();",
    "def tokenize(text: str) -> list[str]:\t\treturn text.split()",
    "if (x != null && x.length > 0) { return x[0]; } // TODO: handle empty",
    "{\"id\": 42, \"name\": \"caf\u{00E9}\", \"tags\": [\"a\", \"b\"], \"ok\": true}",
    "<div class=\"note\">It's <b>bold</b> &amp; <i>italic</i></div>",
    "SELECT id, COUNT(*) FROM users WHERE created_at >= '2024-01-01' GROUP BY id;",
    "    return self._cache[key]  # noqa: E501",
    "x += y**2 - 3*z; assert x >= 0, f'{x=}'",
    "$ grep -rn \"TODO\" src/ | wc -l    # 17",
    "#include <stdio.h>\r\r  int main(void){return 0;}",
    "0xDEADBEEF 0b1010 1e-9 3.14159265358979 -0.0 NaN",
];

const EMOJI_SYMBOLS: &[&str] = &[
    "Great job \u{1F44D}\u{1F3FD} \u{1F389}\u{1F389}\u{1F389}!",
    "\u{1F468}\u{200D}\u{1F469}\u{200D}\u{1F467} family photo \u{1F4F8}",
    "Flags: \u{1F1FA}\u{1F1F8} \u{1F1EF}\u{1F1F5} \u{1F1E9}\u{1F1EA}",
    "\u{2211} x\u{00B2} \u{2264} \u{221E} and \u{221A}2 \u{2248} 1.414",
    "\u{2605}\u{2605}\u{2605}\u{2606}\u{2606} (3/5) \u{2014} would buy again \u{263A}",
    "Temperature: -40\u{00B0}F = -40\u{00B0}C \u{2744}\u{FE0F}",
    "\u{2460} first \u{2461} second \u{2462} third \u{2167} eighth",
    "zero\u{200B}width\u{200B}spaces and soft\u{00AD}hyphens\u{FEFF}",
    "combining: e\u{0301} a\u{0308} n\u{0303} \u{0915}\u{094D}\u{0937}",
    "math \u{1D400}\u{1D401}\u{1D402} digits \u{1D7CE}\u{1D7CF}\u{1D7D0}",
];

const ODD_WHITESPACE: &[&str] = &[
    "\t", "  ", "   ", "\u{00A0}", "\u{3000}", "\u{2003}", "\u{2028}", "\u{2029}", "\u{000B}",
    "\u{000C}", "\u{0085}", "\r", " \r", "\t \t", "\u{202F}",
];

const BANKS: &[&[&str]] = &[
    ENGLISH,
    FRENCH,
    GERMAN_SPANISH,
    CYRILLIC_GREEK,
    ARABIC_HEBREW,
    INDIC_THAI,
    CJK,
    CODE,
    EMOJI_SYMBOLS,
];

fn number(rng: &mut ChaCha8Rng) -> String {
    match rng.random_range(0..5) {
        0 => rng.random_range(0..10).to_string(),
        1 => rng.random_range(0..100_000_000u64).to_string(),
        2 => format!("{:.3}", rng.random::<f64>() * 1000.0),
        3 => format!(
            "{}-{:02}-{:02}",
            rng.random_range(1900..2100),
            rng.random_range(1..13),
            rng.random_range(1..29)
        ),
        _ => "1234567890123".to_string(),
    }
}

fn separator(rng: &mut ChaCha8Rng) -> &'static str {
    if rng.random_bool(0.8) {
        " "
    } else {
        ODD_WHITESPACE.choose(rng).copied().unwrap_or(" ")
    }
}

fn document(rng: &mut ChaCha8Rng) -> String {
    // Mostly single-script documents; some mix two banks.
    let primary = BANKS.choose(rng).copied().unwrap_or(ENGLISH);
    let secondary = BANKS.choose(rng).copied().unwrap_or(ENGLISH);
    let sentences = rng.random_range(1..=8);
    let mut doc = String::new();
    if rng.random_bool(0.05) {
        doc.push_str(ODD_WHITESPACE.choose(rng).copied().unwrap_or(" "));
    }
    for i in 0..sentences {
        if i > 0 {
            doc.push_str(separator(rng));
        }
        let bank = if rng.random_bool(0.8) {
            primary
        } else {
            secondary
        };
        doc.push_str(bank.choose(rng).copied().unwrap_or(""));
        if rng.random_bool(0.1) {
            doc.push(' ');
            doc.push_str(&number(rng));
        }
    }
    if rng.random_bool(0.05) {
        doc.push_str(ODD_WHITESPACE.choose(rng).copied().unwrap_or(" "));
    }
    doc
}

pub fn build(seed: u64, min_bytes: usize) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::with_capacity(min_bytes + 4096);
    while out.len() < min_bytes {
        // Blank lines make newline clusters when the file is split as a whole.
        if rng.random_bool(0.02) {
            out.push('\n');
            continue;
        }
        out.push_str(&document(&mut rng));
        out.push('\n');
    }
    out
}

pub fn run_example(path: &std::path::Path) -> std::io::Result<usize> {
    let corpus = build(SEED, MIN_BYTES);
    std::fs::write(path, &corpus)?;
    Ok(corpus.len())
}

fn main() -> std::io::Result<()> {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let path = root.join(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "fixtures/corpus/multilingual.txt".into()),
    );
    let bytes = run_example(&path)?;
    println!("wrote {bytes} bytes to {}", path.display());
    Ok(())
}
