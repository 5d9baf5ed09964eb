//! JSON documents for monoids, acts, maps, congruences and direct systems.
//!
//! A document names its type in a `kind` field. Wherever a monoid or act is
//! expected, either an inline document or a path to one may appear; paths are
//! resolved against the directory of the file that mentions them.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::act::{ActMap, FiniteAct};
use crate::colimit::DirectSystem;
use crate::congruence::Congruence;
use crate::corpus::{Corpus, CorpusMonoid, CorpusSpec};
use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidDoc {
    pub kind: String,
    pub size: usize,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonoidRef {
    Path(String),
    Inline(MonoidDoc),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActDoc {
    pub kind: String,
    pub monoid: MonoidRef,
    pub size: usize,
    /// `action[a][s] = a.s`
    pub action: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActRef {
    Path(String),
    Inline(Box<ActDoc>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub kind: String,
    pub domain: ActRef,
    pub codomain: ActRef,
    pub values: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceDoc {
    pub kind: String,
    pub act: ActRef,
    pub classes: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDoc {
    pub kind: String,
    pub indices: usize,
    pub leq: Vec<Vec<bool>>,
    pub acts: Vec<ActRef>,
    /// Keyed by `"i,j"`; identities may be omitted.
    pub transitions: BTreeMap<String, MapDoc>,
}

fn expect_kind(found: &str, expected: &str) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::Parse(format!("expected kind `{expected}`, found `{found}`")))
    }
}

pub fn parse<T: DeserializeOwned>(value: Value) -> Result<T> {
    serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_value(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// The `kind` field of a document.
pub fn kind_of(value: &Value) -> Option<&str> {
    value.get("kind").and_then(Value::as_str)
}

/// Builds algebra objects from documents, sharing equal monoids and acts
/// so that maps between loaded acts compose.
#[derive(Debug, Default)]
pub struct Loader {
    base: PathBuf,
    monoids: Vec<Arc<FiniteMonoid>>,
    acts: Vec<Arc<FiniteAct>>,
}

impl Loader {
    pub fn new(base: impl Into<PathBuf>) -> Self {
        Loader { base: base.into(), ..Default::default() }
    }

    /// A loader resolving paths next to `file`.
    pub fn beside(file: &Path) -> Self {
        Self::new(file.parent().map(Path::to_path_buf).unwrap_or_default())
    }

    fn nested<T: DeserializeOwned>(&mut self, path: &str) -> Result<(T, PathBuf)> {
        let full = self.base.join(path);
        let value = read_value(&full)?;
        Ok((parse(value)?, full.parent().map(Path::to_path_buf).unwrap_or_default()))
    }

    fn with_base<T>(&mut self, base: PathBuf, f: impl FnOnce(&mut Self) -> Result<T>) -> Result<T> {
        let saved = std::mem::replace(&mut self.base, base);
        let out = f(self);
        self.base = saved;
        out
    }

    fn intern_monoid(&mut self, m: FiniteMonoid) -> Arc<FiniteMonoid> {
        if let Some(found) = self.monoids.iter().find(|x| ***x == m) {
            return found.clone();
        }
        let m = Arc::new(m);
        self.monoids.push(m.clone());
        m
    }

    fn intern_act(&mut self, a: FiniteAct) -> Arc<FiniteAct> {
        if let Some(found) = self.acts.iter().find(|x| ***x == a) {
            return found.clone();
        }
        let a = Arc::new(a);
        self.acts.push(a.clone());
        a
    }

    pub fn monoid_doc(&mut self, doc: &MonoidDoc) -> Result<Arc<FiniteMonoid>> {
        expect_kind(&doc.kind, "monoid")?;
        if doc.table.len() != doc.size {
            return Err(Error::Parse(format!("monoid size {} but {} table rows", doc.size, doc.table.len())));
        }
        Ok(self.intern_monoid(FiniteMonoid::new(doc.table.clone(), doc.identity)?))
    }

    pub fn monoid(&mut self, r: &MonoidRef) -> Result<Arc<FiniteMonoid>> {
        match r {
            MonoidRef::Inline(doc) => self.monoid_doc(doc),
            MonoidRef::Path(p) => {
                let (doc, _): (MonoidDoc, _) = self.nested(p)?;
                self.monoid_doc(&doc)
            }
        }
    }

    pub fn act_doc(&mut self, doc: &ActDoc) -> Result<Arc<FiniteAct>> {
        expect_kind(&doc.kind, "act")?;
        if doc.action.len() != doc.size {
            return Err(Error::Parse(format!("act size {} but {} action rows", doc.size, doc.action.len())));
        }
        let monoid = self.monoid(&doc.monoid)?;
        Ok(self.intern_act(FiniteAct::new(&monoid, doc.action.clone())?))
    }

    pub fn act(&mut self, r: &ActRef) -> Result<Arc<FiniteAct>> {
        match r {
            ActRef::Inline(doc) => self.act_doc(doc),
            ActRef::Path(p) => {
                let (doc, base): (ActDoc, _) = self.nested(p)?;
                self.with_base(base, |l| l.act_doc(&doc))
            }
        }
    }

    pub fn map(&mut self, doc: &MapDoc) -> Result<ActMap> {
        expect_kind(&doc.kind, "map")?;
        let domain = self.act(&doc.domain)?;
        let codomain = self.act(&doc.codomain)?;
        ActMap::new(&domain, &codomain, doc.values.clone())
    }

    pub fn congruence(&mut self, doc: &CongruenceDoc) -> Result<Congruence> {
        expect_kind(&doc.kind, "congruence")?;
        let act = self.act(&doc.act)?;
        Congruence::from_classes(&act, &doc.classes)
    }

    pub fn system(&mut self, doc: &SystemDoc) -> Result<DirectSystem> {
        expect_kind(&doc.kind, "system")?;
        if doc.acts.len() != doc.indices || doc.leq.len() != doc.indices {
            return Err(Error::Parse(format!(
                "system declares {} indices but has {} acts and {} leq rows",
                doc.indices,
                doc.acts.len(),
                doc.leq.len()
            )));
        }
        let acts = doc.acts.iter().map(|a| self.act(a)).collect::<Result<Vec<_>>>()?;
        let mut transitions = BTreeMap::new();
        for (key, map) in &doc.transitions {
            transitions.insert(parse_key(key)?, self.map(map)?);
        }
        DirectSystem::new(doc.leq.clone(), acts, transitions)
    }
}

fn parse_key(key: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("transition key `{key}` is not `i,j`"));
    let (i, j) = key.split_once(',').ok_or_else(bad)?;
    Ok((i.trim().parse().map_err(|_| bad())?, j.trim().parse().map_err(|_| bad())?))
}

pub fn monoid_to_doc(m: &FiniteMonoid) -> MonoidDoc {
    MonoidDoc { kind: "monoid".into(), size: m.size(), identity: m.identity(), table: m.rows() }
}

pub fn act_to_doc(a: &FiniteAct) -> ActDoc {
    ActDoc {
        kind: "act".into(),
        monoid: MonoidRef::Inline(monoid_to_doc(a.monoid())),
        size: a.size(),
        action: a.rows(),
    }
}

pub fn map_to_doc(f: &ActMap) -> MapDoc {
    MapDoc {
        kind: "map".into(),
        domain: ActRef::Inline(Box::new(act_to_doc(f.domain()))),
        codomain: ActRef::Inline(Box::new(act_to_doc(f.codomain()))),
        values: f.values().to_vec(),
    }
}

pub fn congruence_to_doc(rho: &Congruence) -> CongruenceDoc {
    CongruenceDoc {
        kind: "congruence".into(),
        act: ActRef::Inline(Box::new(act_to_doc(rho.act()))),
        classes: rho.classes(),
    }
}

/// Identity transitions are left out.
pub fn system_to_doc(d: &DirectSystem) -> SystemDoc {
    SystemDoc {
        kind: "system".into(),
        indices: d.len(),
        leq: (0..d.len()).map(|i| (0..d.len()).map(|j| d.leq(i, j)).collect()).collect(),
        acts: d.acts().iter().map(|a| ActRef::Inline(Box::new(act_to_doc(a)))).collect(),
        transitions: d
            .transitions()
            .iter()
            .filter(|((i, j), _)| i != j)
            .map(|((i, j), f)| (format!("{i},{j}"), map_to_doc(f)))
            .collect(),
    }
}

pub fn to_value<T: Serialize>(doc: &T) -> Value {
    serde_json::to_value(doc).expect("documents serialize")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntryDoc {
    pub name: String,
    pub monoid: String,
    pub acts: Vec<String>,
}

/// Index file of a corpus directory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusDoc {
    pub kind: String,
    pub spec: CorpusSpec,
    pub monoids: Vec<CorpusEntryDoc>,
}

pub const CORPUS_INDEX: &str = "corpus.json";

fn write_json<T: Serialize>(path: &Path, doc: &T) -> Result<()> {
    let text = serde_json::to_string(doc).expect("documents serialize");
    fs::write(path, text + "\n").map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Writes one monoid file and one act file per corpus object plus an index,
/// returning the paths written.
pub fn write_corpus(corpus: &Corpus, dir: &Path) -> Result<Vec<PathBuf>> {
    let io = |e: std::io::Error| Error::Parse(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    let mut written = Vec::new();
    let mut entries = Vec::new();
    for (i, m) in corpus.monoids.iter().enumerate() {
        let sub = format!("m{i:02}");
        fs::create_dir_all(dir.join(&sub)).map_err(io)?;
        let monoid = format!("{sub}/monoid.json");
        write_json(&dir.join(&monoid), &monoid_to_doc(&m.monoid))?;
        written.push(dir.join(&monoid));
        let mut acts = Vec::new();
        for (k, a) in m.acts.iter().enumerate() {
            let path = format!("{sub}/act{k:03}.json");
            let doc = ActDoc {
                kind: "act".into(),
                monoid: MonoidRef::Path("monoid.json".into()),
                size: a.size(),
                action: a.rows(),
            };
            write_json(&dir.join(&path), &doc)?;
            written.push(dir.join(&path));
            acts.push(path);
        }
        entries.push(CorpusEntryDoc { name: m.name.clone(), monoid, acts });
    }
    let index = dir.join(CORPUS_INDEX);
    write_json(&index, &CorpusDoc { kind: "corpus".into(), spec: corpus.spec.clone(), monoids: entries })?;
    written.push(index);
    Ok(written)
}

/// Reads a corpus written by [`write_corpus`]; `path` is the directory or
/// its index file.
pub fn read_corpus(path: &Path) -> Result<Corpus> {
    let index = if path.is_dir() { path.join(CORPUS_INDEX) } else { path.to_path_buf() };
    let doc: CorpusDoc = parse(read_value(&index)?)?;
    expect_kind(&doc.kind, "corpus")?;
    let mut loader = Loader::beside(&index);
    let mut monoids = Vec::new();
    for entry in &doc.monoids {
        let monoid = loader.monoid(&MonoidRef::Path(entry.monoid.clone()))?;
        let acts = entry.acts.iter().map(|p| loader.act(&ActRef::Path(p.clone()))).collect::<Result<Vec<_>>>()?;
        if acts.iter().any(|a| !Arc::ptr_eq(a.monoid(), &monoid)) {
            return Err(Error::Parse(format!("corpus entry `{}` mixes monoids", entry.name)));
        }
        monoids.push(CorpusMonoid { name: entry.name.clone(), monoid, acts });
    }
    Ok(Corpus { spec: doc.spec, monoids })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colimit::directed_colimit;
    use crate::monoid::standard_monoid;
    use serde_json::json;

    #[test]
    fn act_round_trip() {
        let z2 = Arc::new(standard_monoid("cyclic_group", &[2]).unwrap());
        let reg = FiniteAct::regular(&z2);
        let doc = act_to_doc(&reg);
        let text = serde_json::to_string(&doc).unwrap();
        let back: ActDoc = serde_json::from_str(&text).unwrap();
        let mut loader = Loader::default();
        assert_eq!(*loader.act_doc(&back).unwrap(), reg);
    }

    #[test]
    fn inline_documents() {
        let v = json!({
            "kind": "map",
            "domain": {"kind": "act", "monoid": {"kind": "monoid", "size": 2, "identity": 0, "table": [[0,1],[1,0]]},
                       "size": 2, "action": [[0,1],[1,0]]},
            "codomain": {"kind": "act", "monoid": {"kind": "monoid", "size": 2, "identity": 0, "table": [[0,1],[1,0]]},
                         "size": 1, "action": [[0,0]]},
            "values": [0, 0]
        });
        let doc: MapDoc = parse(v).unwrap();
        let mut loader = Loader::default();
        let f = loader.map(&doc).unwrap();
        assert!(f.is_epi());
        assert!(Arc::ptr_eq(f.domain().monoid(), f.codomain().monoid()));
    }

    #[test]
    fn paths_resolve_beside_the_file() {
        let dir = std::env::temp_dir().join(format!("actkit-json-{}", std::process::id()));
        fs::create_dir_all(dir.join("sub")).unwrap();
        let monoid = monoid_to_doc(&standard_monoid("semilattice_chain", &[2]).unwrap());
        fs::write(dir.join("sub/m.json"), serde_json::to_string(&monoid).unwrap()).unwrap();
        let act = json!({"kind": "act", "monoid": "m.json", "size": 1, "action": [[0, 0]]});
        fs::write(dir.join("sub/a.json"), act.to_string()).unwrap();
        let mut loader = Loader::new(&dir);
        let a = loader.act(&ActRef::Path("sub/a.json".into())).unwrap();
        assert_eq!(a.size(), 1);
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn system_round_trip() {
        let z2 = Arc::new(standard_monoid("cyclic_group", &[2]).unwrap());
        let reg = Arc::new(FiniteAct::regular(&z2));
        let theta = Arc::new(FiniteAct::theta(&z2));
        let d = DirectSystem::chain(&[ActMap::to_theta(&reg), ActMap::identity(&theta)]).unwrap();
        let doc = system_to_doc(&d);
        let back: SystemDoc = parse(to_value(&doc)).unwrap();
        let d2 = Loader::default().system(&back).unwrap();
        assert_eq!(d2.len(), 3);
        assert_eq!(directed_colimit(&d2).unwrap().apex.size(), 1);
    }

    #[test]
    fn corpus_round_trip() {
        let spec = CorpusSpec { max_monoid_order: 2, max_act_size: 2, builders: vec!["cyclic_group(3)".into()] };
        let corpus = crate::corpus::generate_corpus(&spec).unwrap();
        let dir = std::env::temp_dir().join(format!("actkit-corpus-{}", std::process::id()));
        write_corpus(&corpus, &dir).unwrap();
        let back = read_corpus(&dir).unwrap();
        assert_eq!(back.spec, corpus.spec);
        assert_eq!(back.monoids.len(), corpus.monoids.len());
        for (a, b) in back.monoids.iter().zip(&corpus.monoids) {
            assert_eq!(a.name, b.name);
            assert_eq!(a.monoid, b.monoid);
            assert_eq!(a.acts, b.acts);
        }
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn wrong_kind_is_rejected() {
        let doc = MonoidDoc { kind: "act".into(), size: 1, identity: 0, table: vec![vec![0]] };
        assert!(matches!(Loader::default().monoid_doc(&doc), Err(Error::Parse(_))));
        assert!(parse_key("1;2").is_err());
    }
}
