//! Collision search: grouping graphs of a corpus by their boundary distance
//! matrix up to relabelling of the boundary.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::fs::File;
use std::hash::{Hash, Hasher};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::boundary::{bdm, bdm_with, BoundaryDistanceMatrix};
use crate::error::{Error, Result};
use crate::families::{recognize, Family, FamilyFlags};
use crate::graph_core::canon::canonical_form;
use crate::graph_core::graph6::HEADER;
use crate::graph_core::{
    all_pairs_distances, certificate, connected_graphs, eccentricity_profile, parse_graph6, write_graph6, Certificate,
    Graph,
};

/// Canonical encoding of `(n, kappa, matrix up to simultaneous row/column
/// permutation)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CollisionKey(pub Vec<u8>);

impl CollisionKey {
    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }
}

fn push_varint(out: &mut Vec<u8>, mut x: u64) {
    loop {
        let b = (x & 0x7f) as u8;
        x >>= 7;
        if x == 0 {
            out.push(b);
            return;
        }
        out.push(b | 0x80);
    }
}

/// Key of a boundary distance matrix. The matrix is read as an edge-weighted
/// complete graph and brought to canonical form; the bytes are `n`, `kappa`
/// and the canonical upper triangle, all as varints.
pub fn canonical_bdm_key(b: &BoundaryDistanceMatrix) -> CollisionKey {
    matrix_key(b.n, &b.entries)
}

/// Key of any square distance matrix carried with a graph order.
pub fn matrix_key(n: usize, entries: &[Vec<u32>]) -> CollisionKey {
    let k = entries.len();
    let flat: Vec<u32> = entries.iter().flatten().copied().collect();
    let form = canonical_form(k, &flat, None).form;
    let mut bytes = Vec::with_capacity(4 + form.len());
    push_varint(&mut bytes, n as u64);
    push_varint(&mut bytes, k as u64);
    for w in form {
        push_varint(&mut bytes, w as u64);
    }
    CollisionKey(bytes)
}

/// Permutation-invariant digest of a matrix: equal keys imply equal
/// fingerprints.
pub fn fingerprint(n: usize, entries: &[Vec<u32>]) -> u64 {
    let mut rows: Vec<Vec<u32>> = entries
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.sort_unstable();
            r
        })
        .collect();
    rows.sort_unstable();
    let mut h = DefaultHasher::new();
    (n, entries.len(), rows).hash(&mut h);
    h.finish()
}

#[derive(Clone, Debug, Default)]
pub struct HuntOptions {
    /// Every listed family must hold.
    pub families: Vec<Family>,
    pub diameter: Option<u32>,
    /// Skip unreadable or disconnected records instead of aborting.
    pub skip_bad: bool,
    /// Spill fingerprints to shard files in this directory between passes.
    pub shard_dir: Option<PathBuf>,
    /// Free-form description of the input, copied into the summary.
    pub input: String,
}

impl HuntOptions {
    pub fn filter_names(&self) -> Vec<String> {
        let mut out: Vec<String> = self.families.iter().map(|f| f.name().to_string()).collect();
        if let Some(d) = self.diameter {
            out.push(format!("diameter={d}"));
        }
        out
    }

    fn accepts(&self, g: &Graph) -> bool {
        self.families.iter().all(|f| f.test(g))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CollisionClass {
    pub key: CollisionKey,
    pub n: usize,
    pub kappa: usize,
    /// graph6 strings, ordered by certificate.
    pub members: Vec<String>,
    pub flags: Vec<FamilyFlags>,
    pub diameters: Vec<u32>,
}

impl CollisionClass {
    pub fn to_json(&self) -> serde_json::Value {
        let flags: Vec<Vec<&str>> = self
            .flags
            .iter()
            .map(|f| Family::ALL.iter().filter(|fam| fam.get(f)).map(|fam| fam.name()).collect())
            .collect();
        json!({
            "key_hex": self.key.to_hex(),
            "n": self.n,
            "kappa": self.kappa,
            "members": self.members,
            "flags": flags,
            "diameters": self.diameters,
        })
    }
}

#[derive(Clone, Debug)]
pub struct HuntReport {
    pub input: String,
    pub filters: Vec<String>,
    /// Records read (bad ones included).
    pub scanned: u64,
    /// Records that passed the filters.
    pub matched: u64,
    /// Bad records skipped.
    pub skipped: u64,
    /// Sorted by key.
    pub classes: Vec<CollisionClass>,
    /// SHA-256 over the graph6 lines read, each terminated by `\n`.
    pub sha256: String,
    /// Only filled in on request, so that reports stay byte-identical.
    pub wall_clock_ms: Option<u128>,
}

impl HuntReport {
    pub fn summary_json(&self) -> serde_json::Value {
        let mut v = json!({
            "summary": true,
            "input": self.input,
            "filters": self.filters,
            "scanned": self.scanned,
            "matched": self.matched,
            "skipped": self.skipped,
            "classes": self.classes.len(),
            "sha256": self.sha256,
        });
        if let Some(ms) = self.wall_clock_ms {
            v["wall_clock_ms"] = json!(ms as u64);
        }
        v
    }

    /// One JSON line per class, then the summary line.
    pub fn write_jsonl(&self, mut w: impl Write) -> io::Result<()> {
        for c in &self.classes {
            writeln!(w, "{}", c.to_json())?;
        }
        writeln!(w, "{}", self.summary_json())
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = Vec::new();
        self.write_jsonl(&mut out).expect("writing to memory");
        String::from_utf8(out).expect("json is utf-8")
    }
}

const CHUNK: usize = 8192;

enum Outcome {
    Bad(usize, Error),
    Filtered,
    Kept(u64, String),
}

fn examine(line: usize, text: &str, opts: &HuntOptions) -> Outcome {
    let g = match parse_graph6(text.as_bytes()) {
        Ok(g) => g,
        Err(e) => return Outcome::Bad(line, e),
    };
    if g.order() == 0 || !g.is_connected() {
        return Outcome::Bad(line, Error::Disconnected);
    }
    if !opts.accepts(&g) {
        return Outcome::Filtered;
    }
    let d = all_pairs_distances(&g);
    if let Some(want) = opts.diameter {
        let diam = (0..g.order()).flat_map(|u| d.row(u).iter().copied()).max().unwrap_or(0);
        if diam != want {
            return Outcome::Filtered;
        }
    }
    let b = bdm_with(&g, &d);
    Outcome::Kept(fingerprint(b.n, &b.entries), text.to_string())
}

enum Sink {
    Memory(HashMap<u64, Vec<String>>),
    Shards(Vec<BufWriter<File>>, PathBuf),
}

const SHARDS: usize = 64;

fn shard_path(dir: &Path, i: usize) -> PathBuf {
    dir.join(format!("shard-{i:02}.txt"))
}

impl Sink {
    fn new(opts: &HuntOptions) -> Result<Sink> {
        match &opts.shard_dir {
            None => Ok(Sink::Memory(HashMap::new())),
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                let files = (0..SHARDS)
                    .map(|i| File::create(shard_path(dir, i)).map(BufWriter::new))
                    .collect::<io::Result<Vec<_>>>()?;
                Ok(Sink::Shards(files, dir.clone()))
            }
        }
    }

    fn push(&mut self, fp: u64, g6: String) -> Result<()> {
        match self {
            Sink::Memory(m) => m.entry(fp).or_default().push(g6),
            Sink::Shards(files, _) => writeln!(files[(fp % SHARDS as u64) as usize], "{fp:016x} {g6}")?,
        }
        Ok(())
    }

    /// Buckets holding at least two graphs, each in input order.
    fn buckets(self, mut each: impl FnMut(Vec<Vec<String>>) -> Result<()>) -> Result<()> {
        match self {
            Sink::Memory(m) => each(m.into_values().filter(|v| v.len() >= 2).collect()),
            Sink::Shards(files, dir) => {
                for mut f in files {
                    f.flush()?;
                }
                for i in 0..SHARDS {
                    let path = shard_path(&dir, i);
                    let mut m: HashMap<u64, Vec<String>> = HashMap::new();
                    for line in BufReader::new(File::open(&path)?).lines() {
                        let line = line?;
                        let (fp, g6) = line
                            .split_once(' ')
                            .ok_or_else(|| Error::Record(format!("corrupt shard {}", path.display())))?;
                        let fp = u64::from_str_radix(fp, 16)
                            .map_err(|_| Error::Record(format!("corrupt shard {}", path.display())))?;
                        m.entry(fp).or_default().push(g6.to_string());
                    }
                    each(m.into_values().filter(|v| v.len() >= 2).collect())?;
                    std::fs::remove_file(&path)?;
                }
                Ok(())
            }
        }
    }
}

/// Hunts over graph6 lines. Empty lines and the `>>graph6<<` header are
/// ignored; line numbers in errors are 1-based.
pub fn hunt_lines<I>(lines: I, opts: &HuntOptions) -> Result<HuntReport>
where
    I: IntoIterator<Item = io::Result<String>>,
{
    let mut sha = Sha256::new();
    let mut sink = Sink::new(opts)?;
    let (mut scanned, mut matched, mut skipped) = (0u64, 0u64, 0u64);
    let mut chunk: Vec<(usize, String)> = Vec::with_capacity(CHUNK);
    let mut flush = |chunk: &mut Vec<(usize, String)>, sink: &mut Sink| -> Result<()> {
        let outcomes: Vec<Outcome> = chunk.par_iter().map(|(l, t)| examine(*l, t, opts)).collect();
        chunk.clear();
        for o in outcomes {
            match o {
                Outcome::Bad(line, e) if !opts.skip_bad => {
                    return Err(Error::AtLine {
                        line,
                        source: Box::new(e),
                    })
                }
                Outcome::Bad(..) => skipped += 1,
                Outcome::Filtered => {}
                Outcome::Kept(fp, g6) => {
                    matched += 1;
                    sink.push(fp, g6)?;
                }
            }
        }
        Ok(())
    };
    for (i, line) in lines.into_iter().enumerate() {
        let line = line?;
        let mut text = line.trim_end_matches(['\n', '\r']);
        if i == 0 {
            text = text.strip_prefix(HEADER).unwrap_or(text);
        }
        if text.is_empty() {
            continue;
        }
        sha.update(text.as_bytes());
        sha.update(b"\n");
        scanned += 1;
        chunk.push((i + 1, text.to_string()));
        if chunk.len() == CHUNK {
            flush(&mut chunk, &mut sink)?;
        }
    }
    flush(&mut chunk, &mut sink)?;

    let mut classes = Vec::new();
    sink.buckets(|buckets| {
        let found: Vec<Vec<CollisionClass>> = buckets.par_iter().map(|b| split_bucket(b)).collect();
        classes.extend(found.into_iter().flatten());
        Ok(())
    })?;
    classes.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(HuntReport {
        input: opts.input.clone(),
        filters: opts.filter_names(),
        scanned,
        matched,
        skipped,
        classes,
        sha256: hex::encode(sha.finalize()),
        wall_clock_ms: None,
    })
}

/// Exact grouping inside one fingerprint bucket.
fn split_bucket(bucket: &[String]) -> Vec<CollisionClass> {
    let mut groups: BTreeMap<CollisionKey, BTreeMap<Certificate, Graph>> = BTreeMap::new();
    for g6 in bucket {
        let g = parse_graph6(g6.as_bytes()).expect("validated in the first pass");
        let key = canonical_bdm_key(&bdm(&g).expect("connected"));
        groups.entry(key).or_default().entry(certificate(&g)).or_insert(g);
    }
    groups
        .into_iter()
        .filter(|(_, m)| m.len() >= 2)
        .map(|(key, members)| class_of(key, members.into_values().collect()))
        .collect()
}

fn class_of(key: CollisionKey, members: Vec<Graph>) -> CollisionClass {
    let b = bdm(&members[0]).expect("connected");
    CollisionClass {
        key,
        n: b.n,
        kappa: b.kappa(),
        members: members.iter().map(write_graph6).collect(),
        flags: members.iter().map(|g| recognize(g).expect("connected")).collect(),
        diameters: members
            .iter()
            .map(|g| eccentricity_profile(&all_pairs_distances(g)).expect("connected").diameter)
            .collect(),
    }
}

/// Hunts over in-memory graphs (written out as graph6 for the checksum).
pub fn hunt_graphs<'a>(graphs: impl IntoIterator<Item = &'a Graph>, opts: &HuntOptions) -> Result<HuntReport> {
    hunt_lines(graphs.into_iter().map(|g| Ok(write_graph6(g))), opts)
}

/// Hunts over every connected graph of order `n` from the built-in
/// enumerator.
pub fn hunt_enumerated(n: usize, opts: &HuntOptions) -> Result<HuntReport> {
    let graphs = connected_graphs(n);
    hunt_graphs(&graphs, opts)
}

/// Two graphs of the same order and boundary size where the boundary matrix
/// of `first` reappears in `second` on a set of `kappa` vertices that is not
/// the boundary of `second`.
#[derive(Clone, Debug, Serialize)]
pub struct KappaPair {
    pub first: String,
    pub first_boundary: Vec<usize>,
    pub second: String,
    pub second_set: Vec<usize>,
    pub second_boundary: Vec<usize>,
}

fn subsets(n: usize, k: usize, mut each: impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, each: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            each(cur);
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, each);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), &mut each);
}

fn labels(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

/// Witnesses that fixing `n` and `kappa` without the boundary set is not
/// enough: for all connected graphs of order `n`, each non-boundary
/// `kappa`-subset of one graph is compared with the boundary matrices of the
/// others. Vertex labels in the result are 1-based.
pub fn kappa_only_hunt(n: usize) -> Vec<KappaPair> {
    let graphs = connected_graphs(n);
    let info: Vec<(BoundaryDistanceMatrix, Certificate, CollisionKey)> = graphs
        .par_iter()
        .map(|g| {
            let b = bdm(g).expect("connected");
            let key = canonical_bdm_key(&b);
            (b, certificate(g), key)
        })
        .collect();
    let mut by_key: HashMap<&CollisionKey, Vec<usize>> = HashMap::new();
    for (i, (_, _, key)) in info.iter().enumerate() {
        by_key.entry(key).or_default().push(i);
    }
    let found: Vec<Vec<KappaPair>> = graphs
        .par_iter()
        .enumerate()
        .map(|(j, h)| {
            let (hb, hc, _) = &info[j];
            let d = all_pairs_distances(h);
            let mut out = Vec::new();
            let mut seen = std::collections::BTreeSet::new();
            subsets(n, hb.kappa(), |set| {
                if set == hb.boundary.vertices() {
                    return;
                }
                let key = matrix_key(n, &d.principal(set));
                for &i in by_key.get(&key).into_iter().flatten() {
                    let (gb, gc, _) = &info[i];
                    if gc != hc && seen.insert(i) {
                        out.push(KappaPair {
                            first: write_graph6(&graphs[i]),
                            first_boundary: labels(gb.boundary.vertices()),
                            second: write_graph6(h),
                            second_set: labels(set),
                            second_boundary: labels(hb.boundary.vertices()),
                        });
                    }
                }
            });
            out
        })
        .collect();
    found.into_iter().flatten().collect()
}
