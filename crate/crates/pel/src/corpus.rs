//! The declarative instance list consumed by the verification suite.

use serde::Deserialize;

use pel_core::verify::{LocalCase, PoddCase};
use pel_core::{GroupHandle, Perm};

use crate::spec::GroupSpec;

/// The corpus shipped with the crate.
pub const DEFAULT_CORPUS: &str = include_str!("../corpus/default.toml");

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct PoddEntry {
    label: Option<String>,
    group: String,
    normal: Option<String>,
    normal_gens: Option<Vec<String>>,
    prime: u64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct LocalEntry {
    label: Option<String>,
    group: String,
    prime: u64,
    element: Option<String>,
    kernel: Option<String>,
    kernel_gens: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct SylowEntry {
    group: String,
    prime: u64,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct CorpusFile {
    #[serde(default)]
    podd: Vec<PoddEntry>,
    #[serde(default)]
    local: Vec<LocalEntry>,
    #[serde(default)]
    sylow: Vec<SylowEntry>,
}

#[derive(Debug, Clone)]
pub struct SylowCase {
    pub label: String,
    pub group: GroupHandle,
    pub prime: u64,
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub podd: Vec<PoddCase>,
    pub local: Vec<LocalCase>,
    pub sylow: Vec<SylowCase>,
}

fn build(spec: &str, at: &str) -> Result<(GroupSpec, GroupHandle), String> {
    let s = GroupSpec::parse(spec).map_err(|e| format!("{at}: '{spec}': {e}"))?;
    let g = s.build().map_err(|e| format!("{at}: '{spec}': {e}"))?;
    Ok((s, g))
}

/// A subgroup of `group` given as a spec on its first points or as generators.
fn subgroup(
    group: &GroupHandle,
    spec: Option<&str>,
    gens: Option<&[String]>,
    at: &str,
) -> Result<Option<GroupHandle>, String> {
    let perms: Vec<Perm> = match (spec, gens) {
        (Some(_), Some(_)) => return Err(format!("{at}: give a spec or generators, not both")),
        (None, None) => return Ok(None),
        (Some(s), None) => {
            let (_, h) = build(s, at)?;
            h.generators()
                .iter()
                .map(|x| x.pad(group.degree()))
                .collect::<Result<_, _>>()
                .map_err(|e| format!("{at}: '{s}' does not fit: {e}"))?
        }
        (None, Some(gs)) => gs
            .iter()
            .map(|c| Perm::parse_cycles(group.degree(), c).map_err(|e| format!("{at}: '{c}': {e}")))
            .collect::<Result<_, _>>()?,
    };
    GroupHandle::new(perms)
        .map(Some)
        .map_err(|e| format!("{at}: {e}"))
}

impl Corpus {
    pub fn parse(text: &str) -> Result<Self, String> {
        let file: CorpusFile = toml::from_str(text).map_err(|e| format!("corpus: {e}"))?;
        let mut c = Corpus::default();
        for (i, e) in file.podd.iter().enumerate() {
            let at = format!("podd[{i}]");
            let (spec, group) = build(&e.group, &at)?;
            let normal = subgroup(&group, e.normal.as_deref(), e.normal_gens.as_deref(), &at)?
                .ok_or_else(|| format!("{at}: missing normal subgroup"))?;
            c.podd.push(PoddCase {
                label: e.label.clone().unwrap_or_else(|| spec.to_string()),
                group,
                normal,
                prime: e.prime,
            });
        }
        for (i, e) in file.local.iter().enumerate() {
            let at = format!("local[{i}]");
            let (spec, group) = build(&e.group, &at)?;
            let element = e
                .element
                .as_deref()
                .map(|s| Perm::parse_cycles(group.degree(), s).map_err(|err| format!("{at}: '{s}': {err}")))
                .transpose()?;
            let kernel = subgroup(&group, e.kernel.as_deref(), e.kernel_gens.as_deref(), &at)?;
            c.local.push(LocalCase {
                label: e.label.clone().unwrap_or_else(|| spec.to_string()),
                group,
                prime: e.prime,
                element,
                kernel,
            });
        }
        for (i, e) in file.sylow.iter().enumerate() {
            let (spec, group) = build(&e.group, &format!("sylow[{i}]"))?;
            c.sylow.push(SylowCase {
                label: spec.to_string(),
                group,
                prime: e.prime,
            });
        }
        Ok(c)
    }

    pub fn default_corpus() -> Self {
        Corpus::parse(DEFAULT_CORPUS).expect("the shipped corpus is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_corpus_loads() {
        let c = Corpus::default_corpus();
        assert_eq!(c.podd.len(), 5);
        assert_eq!(c.podd[2].group.order_u64(), Some(180));
        assert_eq!(c.podd[2].normal.order_u64(), Some(60));
        let a4 = &c.local[3];
        assert_eq!(a4.kernel.as_ref().unwrap().order_u64(), Some(4));
    }

    #[test]
    fn rejects_bad_entries() {
        let bad = "[[podd]]\ngroup = \"sym:5\"\nprime = 3\n";
        assert!(Corpus::parse(bad).unwrap_err().contains("missing normal"));
        let bad = "[[sylow]]\ngroup = \"sym:x\"\nprime = 3\n";
        assert!(Corpus::parse(bad).unwrap_err().contains("byte 4"));
        let bad = "[[podd]]\ngroup = \"sym:3\"\nnormal = \"sym:5\"\nprime = 3\n";
        assert!(Corpus::parse(bad).is_err());
        assert!(Corpus::parse("[[extra]]\n").is_err());
    }
}
