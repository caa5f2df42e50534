//! Named inputs shipped with the crate.

use crate::io::{parse_input, Input, IoError};

/// `(name, canonical file contents)`.
pub const FIXTURES: &[(&str, &str)] = &[
    ("ex-bpf-conics", include_str!("../fixtures/ex-bpf-conics.json")),
    ("degenerate-conics", include_str!("../fixtures/degenerate-conics.json")),
    ("rank4-canonical", include_str!("../fixtures/rank4-canonical.json")),
    ("rank5-M", include_str!("../fixtures/rank5-M.json")),
    ("weddle-6pts", include_str!("../fixtures/weddle-6pts.json")),
    ("witness-C1", include_str!("../fixtures/witness-C1.json")),
    ("witness-C2", include_str!("../fixtures/witness-C2.json")),
    ("random-quartic-sys", include_str!("../fixtures/random-quartic-sys.json")),
    ("cyclic-dim2", include_str!("../fixtures/cyclic-dim2.json")),
    ("n1-example-dim2", include_str!("../fixtures/n1-example-dim2.json")),
    ("triangle", include_str!("../fixtures/triangle.json")),
];

/// The six points through which `weddle-6pts` passes.
pub const SIX_POINTS: [[i64; 4]; 6] = [
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [1, 1, 1, 1],
    [2, -1, 5, -7],
];

pub fn names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(n, _)| *n)
}

pub fn text(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Parses a fixture; `None` for an unknown name.
pub fn load(name: &str) -> Option<Result<Input, IoError>> {
    text(name).map(parse_input)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::to_canonical;

    #[test]
    fn fixtures_are_canonical() {
        for (name, text) in FIXTURES {
            let input = parse_input(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(&to_canonical(&input), text, "{name} is not in canonical form");
        }
    }

    #[test]
    fn unknown_fixture() {
        assert!(load("nope").is_none());
    }
}
