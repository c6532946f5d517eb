//! Built-in example spaces, shipped as space-file texts so they exercise
//! the same parser as user input.

use crate::spaces::{parse_space_file, SpaceInput};

#[derive(Clone, Copy, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub text: &'static str,
}

pub const ENTRIES: &[CorpusEntry] = &[
    CorpusEntry {
        name: "genus2",
        description: "closed orientable genus-2 surface, chi = -2",
        text: "\
name = genus2
dim = 2
rank = 1
compact = true
orientable = true
euler = -2
H0 = Z
H1 = Z^4
H2 = Z
",
    },
    CorpusEntry {
        name: "genus3",
        description: "closed orientable genus-3 surface, chi = -4",
        text: "\
name = genus3
dim = 2
rank = 1
compact = true
orientable = true
euler = -4
H0 = Z
H1 = Z^6
H2 = Z
",
    },
    CorpusEntry {
        name: "cusped-surface",
        description: "noncompact surface with two cusps (homotopy type of a wedge of 2 circles)",
        text: "\
name = cusped-surface
dim = 2
rank = 1
compact = false
orientable = true
H0 = Z
H1 = Z^2
H2 = 0
",
    },
    CorpusEntry {
        name: "hs3",
        description: "hyperbolic homology 3-sphere, chi = 0",
        text: "\
name = hs3
dim = 3
rank = 1
compact = true
orientable = true
euler = 0
H0 = Z
H1 = 0
H2 = 0
H3 = Z
",
    },
    CorpusEntry {
        name: "chi1-synthetic",
        description: "synthetic compact surface-like input with chi = 1 (unit-class edge case)",
        text: "\
name = chi1-synthetic
dim = 2
rank = 1
compact = true
orientable = true
euler = 1
H0 = Z
H1 = Z
H2 = Z
",
    },
    CorpusEntry {
        name: "product-surfaces",
        description: "product of two genus-2 surfaces: rank 2, chi = 4, torsion-bounded K0",
        text: "\
name = product-surfaces
dim = 4
rank = 2
compact = true
orientable = true
euler = 4
assume_baum_connes = true
H0 = Z
H1 = Z^8
H2 = Z^18
H3 = Z^8
H4 = Z
",
    },
    CorpusEntry {
        name: "noncompact-rank2",
        description: "noncompact rank-2 example with exact K-theory",
        text: "\
name = noncompact-rank2
dim = 4
rank = 2
compact = false
orientable = true
assume_baum_connes = true
H0 = Z
H1 = Z^2
H2 = 0
H3 = 0
H4 = 0
",
    },
];

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

pub fn get(name: &str) -> Option<&'static CorpusEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

/// Parses a corpus entry; the bundled texts are kept valid, so this only
/// fails if an entry is edited into an inconsistent state.
pub fn space(name: &str) -> Option<SpaceInput> {
    get(name).map(|e| parse_space_file(e.text).expect("bundled corpus entries parse"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::validate;

    #[test]
    fn seven_entries_all_parse_and_validate() {
        assert_eq!(ENTRIES.len(), 7);
        for entry in ENTRIES {
            let s = parse_space_file(entry.text)
                .unwrap_or_else(|e| panic!("{} does not parse: {e}", entry.name));
            assert_eq!(s.name, entry.name);
            let report = validate(&s);
            assert!(
                report.is_valid(),
                "{} has violations: {:?}",
                entry.name,
                report.violations
            );
            assert!(report.warnings.is_empty(), "{} warns", entry.name);
        }
    }

    #[test]
    fn lookup() {
        assert!(get("genus2").is_some());
        assert!(get("missing").is_none());
        assert_eq!(space("hs3").unwrap().dim_n, 3);
    }
}
