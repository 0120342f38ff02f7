use dirac_core::error::Result;
use dirac_core::model::{parse_model, DegenerateModel};
use dirac_core::poly::BlockKind;

/// A model shipped inside the binary.
#[derive(Clone, Copy, Debug)]
pub struct Descriptor {
    pub name: &'static str,
    pub source: &'static str,
}

impl Descriptor {
    /// First comment line of the model file.
    pub fn summary(&self) -> &'static str {
        self.source
            .lines()
            .find_map(|l| l.strip_prefix('#'))
            .map(str::trim)
            .unwrap_or("")
    }

    pub fn load(&self, inner: BlockKind) -> Result<DegenerateModel> {
        parse_model(self.source, inner)
    }
}

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        &[$(Descriptor {
            name: $name,
            source: include_str!(concat!("../../../models/", $name, ".model")),
        }),*]
    };
}

pub const CORPUS: &[Descriptor] = bundled![
    "su2_lightcone",
    "toy_gauge_chain",
    "toy_regular",
    "toy_second_class",
    "toy_inconsistent",
];

pub fn find(name: &str) -> Option<&'static Descriptor> {
    let stem = name.strip_suffix(".model").unwrap_or(name);
    let stem = stem.rsplit('/').next().unwrap_or(stem);
    CORPUS.iter().find(|d| d.name == stem)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_match_model_files() {
        for d in CORPUS {
            let m = d.load(BlockKind::DegRevLex).unwrap();
            assert_eq!(m.name, d.name);
            assert!(!d.summary().is_empty());
        }
    }

    #[test]
    fn lookup_by_path_or_name() {
        assert_eq!(find("models/toy_regular.model").unwrap().name, "toy_regular");
        assert_eq!(find("su2_lightcone").unwrap().name, "su2_lightcone");
        assert!(find("nope").is_none());
    }

    #[test]
    fn coupling_is_declared_nonzero() {
        let m = find("su2_lightcone").unwrap().load(BlockKind::DegRevLex).unwrap();
        assert_eq!(m.parameters.len(), 1);
        assert_eq!(m.parameters[0].name, "g");
        assert!(m.parameters[0].nonzero);
    }
}
