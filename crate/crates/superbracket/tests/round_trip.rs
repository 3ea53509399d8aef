use proptest::prelude::*;
use superbracket::expr_io::{parse_expression, print_expression};
use superbracket::sample::Sampler;
use superbracket::structure::{write_section, StructureFile};
use superbracket_core::{Chart, ChartMode};

fn chart() -> impl Strategy<Value = Chart> {
    (1usize..=3, prop_oneof![Just(ChartMode::Base), Just(ChartMode::Doubled), Just(ChartMode::Dual)])
        .prop_map(|(d, m)| Chart::new(d, m))
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>(), chart in chart(), degree in 0usize..=4) {
        let e = Sampler::new(seed).expression(chart, degree);
        let text = print_expression(&e);
        prop_assert_eq!(parse_expression(&text, Some(chart)).unwrap(), e);
    }

    #[test]
    fn whitespace_is_insignificant(seed in any::<u64>(), chart in chart()) {
        let e = Sampler::new(seed).expression(chart, 2);
        let spaced = print_expression(&e).replace('*', " * ").replace('^', " ^ ");
        prop_assert_eq!(parse_expression(&spaced, None).unwrap(), e);
    }

    #[test]
    fn section_files_round_trip(seed in any::<u64>(), d in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let sec = s.section(&superbracket::sample::double_coords(d), d, 2);
        let file = StructureFile::parse(&write_section(&sec)).unwrap();
        prop_assert_eq!(file.section(), sec);
    }
}
