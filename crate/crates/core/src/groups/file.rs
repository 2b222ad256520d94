use std::path::Path;

use serde::{Deserialize, Serialize};

use super::table::{CharacterSource, GroupTable};
use super::{conjugacy_classes, GroupData};
use crate::error::{Error, Result};
use crate::scalar::Cyclotomic;

/// On-disk group description (TOML).
///
/// ```toml
/// name = "C3"
/// order = 3
/// mult = [0, 1, 2, 1, 2, 0, 2, 0, 1]
/// characters = [["1", "1", "1"], ["1", "z; N=3", "-1 + -1*z; N=3"], ["1", "-1 + -1*z; N=3", "z; N=3"]]
/// generators = [1]
/// ```
///
/// `mult` is row-major with 0-based indices. Character rows list values on
/// conjugacy classes in canonical order (identity class first, then by
/// smallest member).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    #[serde(default = "default_name")]
    pub name: String,
    pub order: usize,
    pub mult: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub characters: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<usize>>,
}

fn default_name() -> String {
    "G".into()
}

pub fn parse_group_file(text: &str) -> Result<GroupTable> {
    let file: GroupFile =
        toml::from_str(text).map_err(|e| Error::MalformedGroupFile(e.message().to_string()))?;
    let mut table = GroupTable::from_table(file.name, file.order, file.mult)?;
    if let Some(rows) = file.characters {
        let values = rows
            .iter()
            .map(|row| row.iter().map(|s| s.parse::<Cyclotomic>()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::MalformedGroupFile(e.to_string()))?;
        table.characters = Some(CharacterSource::PerClass(values));
    }
    if let Some(gens) = file.generators {
        if let Some(&g) = gens.iter().find(|&&g| g >= table.order()) {
            return Err(Error::MalformedGroupFile(format!("generator {g} out of range")));
        }
        table.generators = Some(gens);
    }
    Ok(table)
}

pub fn load_group_file(path: &Path) -> Result<GroupTable> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_group_file(&text)
}

/// Canonical file form. Characters are written on classes when available.
pub fn write_group_file(table: &GroupTable, data: Option<&GroupData>) -> String {
    let characters = match (data, table.characters()) {
        (Some(d), _) => Some(d.characters.values.clone()),
        (None, Some(CharacterSource::PerClass(rows))) => Some(rows.clone()),
        (None, Some(CharacterSource::PerElement(rows))) => {
            let cc = conjugacy_classes(table);
            Some(rows.iter().map(|r| cc.classes.iter().map(|c| r[c[0]].clone()).collect()).collect())
        }
        (None, None) => None,
    };
    let file = GroupFile {
        name: table.name().to_string(),
        order: table.order(),
        mult: table.mult_table().to_vec(),
        characters: characters
            .map(|rows| rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()),
        generators: table.generators.clone(),
    };
    toml::to_string(&file).expect("group file serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_group;

    #[test]
    fn round_trip_builtin() {
        for s in ["C3", "S3", "C2xC2"] {
            let t = build_group(&s.parse().unwrap()).unwrap();
            let d = GroupData::new(t.clone()).unwrap();
            let text = write_group_file(&t, Some(&d));
            let back = parse_group_file(&text).unwrap();
            assert_eq!(back.mult_table(), t.mult_table());
            let d2 = GroupData::new(back.clone()).unwrap();
            assert_eq!(d2.characters, d.characters);
            assert_eq!(write_group_file(&back, Some(&d2)), text);
        }
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_group_file("order = "), Err(Error::MalformedGroupFile(_))));
        assert!(matches!(
            parse_group_file("order = 2\nmult = [0, 1, 1, 0]\ncharacters = [[\"1\", \"x\"]]"),
            Err(Error::MalformedGroupFile(_))
        ));
        assert_eq!(
            parse_group_file("order = 2\nmult = [0, 0, 1, 1]").unwrap_err(),
            Error::MissingIdentity
        );
    }
}
