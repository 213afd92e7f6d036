use std::sync::OnceLock;

use peek2::bpe::BpeModel;
use peek2::cli::{escape_segment, unescape_segment};
use peek2::differential::corpus::model_fixture;
use peek2::oracle::Oracle;
use peek2::split::{check_tiling, Branch, Category, DecisionTable};
use peek2::{pretokenize, Peek2, Segment, Splitter};
use proptest::prelude::*;

fn model() -> &'static BpeModel {
    static MODEL: OnceLock<BpeModel> = OnceLock::new();
    MODEL.get_or_init(|| {
        let (v, m) = model_fixture();
        BpeModel::load_files(v, m).unwrap()
    })
}

/// Text biased towards the scalars the splitter branches on.
fn text() -> impl Strategy<Value = String> {
    let scalar = prop_oneof![
        4 => prop::sample::select(vec![
            ' ', '\'', '\n', '\r', '\t', 'a', 's', 'D', 'L', 'v', 'e', '7', '0', '!', '.',
            '\u{00A0}', '\u{2019}', '\u{3000}', '\u{4E2D}', '\u{0663}', '\u{017F}', '\u{0301}',
        ]),
        1 => any::<char>(),
    ];
    prop::collection::vec(scalar, 0..40).prop_map(|v| v.into_iter().collect())
}

fn table() -> impl Strategy<Value = DecisionTable> {
    prop::collection::vec((0usize..7, 0usize..8, 0usize..5), 0..6).prop_map(|flips| {
        flips
            .into_iter()
            .fold(DecisionTable::CL100K, |t, (r, c, b)| {
                t.with_cell(
                    Category::from_index(r).unwrap(),
                    Category::from_index(c).unwrap(),
                    Branch::ALL[b],
                )
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn segments_tile_the_input(s in text()) {
        let segs: Vec<Segment> = pretokenize(&s).collect();
        prop_assert!(check_tiling(&s, &segs).is_ok());
    }

    #[test]
    fn agrees_with_oracle(s in text()) {
        let ours = Peek2::new().split(&s).unwrap();
        let theirs = Oracle::global().split(&s).unwrap();
        prop_assert_eq!(ours, theirs, "input {:?}", s);
    }

    #[test]
    fn any_table_still_tiles(t in table(), s in text()) {
        let segs: Vec<Segment> = Peek2::with_table(t).segments(&s).collect();
        prop_assert!(check_tiling(&s, &segs).is_ok());
    }

    // Per segment of k scalars: two peeks, at most three contraction probes,
    // the k scalars and two reads past the end.
    #[test]
    fn scalar_reads_are_linear(s in text()) {
        prop_assert!(Peek2::new().count_scalar_reads(&s) <= 7 * s.chars().count());
    }

    #[test]
    fn bpe_round_trips(s in text()) {
        let e = model().encode(&s);
        prop_assert_eq!(model().decode(&e.ids), s.as_bytes());
        prop_assert_eq!(e.ids.len(), e.offsets.len());
    }

    #[test]
    fn bpe_segments_are_independent(s in text()) {
        let whole = model().encode(&s);
        let mut pieced = Vec::new();
        for seg in pretokenize(&s) {
            let part = model().encode(seg.text(&s));
            pieced.extend(part.offsets.iter().map(|&(a, b)| (a + seg.start, b + seg.start)));
            prop_assert!(whole.offsets.iter().any(|&o| o == (seg.start, seg.start + part.offsets[0].1)));
        }
        prop_assert_eq!(whole.offsets, pieced);
    }

    #[test]
    fn escaping_round_trips(s in text()) {
        let e = escape_segment(&s);
        prop_assert!(!e.contains('\n'));
        prop_assert_eq!(unescape_segment(&e), Some(s));
    }
}
