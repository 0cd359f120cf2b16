use std::collections::BTreeSet;

use picard_cy::divisor::FormTable;
use picard_cy::hermitian::mirror_table;
use picard_cy::{resgroup, variety, MirrorTable, ProjPoint, ResidueMatrix};

#[test]
fn shipped_tables_match_builtins() {
    let mirrors = MirrorTable::parse(include_str!("../data/mirrors.txt")).unwrap();
    assert_eq!(mirrors, mirror_table());
    let forms = FormTable::parse(include_str!("../data/forms.txt")).unwrap();
    assert_eq!(forms, FormTable::builtin());
    assert_eq!(forms.render(), include_str!("../data/forms.txt"));
}

#[test]
fn node_export_round_trips() {
    let points = variety::singular_points().unwrap();
    let text = variety::export_points(&points);
    assert_eq!(text, variety::export_points(&variety::singular_points().unwrap()));
    let parsed: Vec<ProjPoint> =
        text.lines().filter(|l| !l.starts_with('#')).map(|l| ProjPoint::parse_tokens(l).unwrap()).collect();
    assert_eq!(parsed, points);
}

#[test]
fn group_export_round_trips() {
    let g = resgroup::g_prime_image().unwrap();
    let parsed: BTreeSet<ResidueMatrix> = g
        .export_text()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| ResidueMatrix::from_digit_line(l).unwrap())
        .collect();
    assert_eq!(parsed.len(), g.order());
    assert!(parsed.iter().all(|m| g.contains(m)));
}

#[test]
fn malformed_tables_are_rejected() {
    assert!(MirrorTable::parse("1 0+1*z 1+0*z\n").is_err());
    assert!(MirrorTable::parse("1 0+1*z q 1+0*z 1+0*z\n").is_err());
    assert!(FormTable::parse("B 1 1 2\n").is_err());
    assert!(ProjPoint::parse_tokens("1 z z2 0 0").is_err());
    assert!(ProjPoint::parse_tokens("0 0 0 0 0 0").is_err());
    assert!(ResidueMatrix::from_digit_line("00 11").is_err());
}
