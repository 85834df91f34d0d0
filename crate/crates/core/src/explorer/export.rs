use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Dart, Fragment};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::nielsen::{move_index, NielsenMove, Tuple};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Jsonl,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "jsonl" => Ok(ExportFormat::Jsonl),
            _ => Err(Error::usage(format!("unknown export format {s:?} (dot, jsonl)"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct AdjRecord {
    #[serde(rename = "move")]
    mv: String,
    to: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexRecord {
    v: String,
    tuple: Value,
    depth: u32,
    adj: Vec<AdjRecord>,
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl Fragment {
    /// Graphviz rendering with one directed edge per dart. Metadata goes in
    /// leading comments.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let window = self.window.map_or("none".to_string(), |w| w.to_string());
        let _ = writeln!(out, "// {} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION"));
        let _ = writeln!(out, "// group: {}", self.group.spec().to_json());
        let _ = writeln!(out, "// n: {}", self.n);
        let _ = writeln!(out, "// root: {}", self.root);
        let _ = writeln!(out, "// radius: {}", self.radius);
        let _ = writeln!(out, "// window: {window}");
        out.push_str("digraph nielsen {\n");
        for (id, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(
                out,
                "  v{id} [label=\"{}\", depth={}{}];",
                escape(&v.tuple.to_string()),
                v.depth,
                if v.expanded { "" } else { ", style=dashed" }
            );
        }
        for (id, darts) in self.darts.iter().enumerate() {
            for d in darts {
                let _ = writeln!(out, "  v{id} -> v{} [label=\"{}\"];", d.to, self.moves[d.mv as usize]);
            }
        }
        out.push_str("}\n");
        out
    }

    /// One JSON object per vertex, in canonical vertex order. Unexpanded
    /// vertices have an empty `adj` list.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<()> {
        for (id, v) in self.vertices.iter().enumerate() {
            let rec = VertexRecord {
                v: hex::encode(&v.key),
                tuple: self.group.tuple_json(&v.tuple.entries),
                depth: v.depth,
                adj: self.darts[id]
                    .iter()
                    .map(|d| AdjRecord {
                        mv: self.moves[d.mv as usize].to_string(),
                        to: hex::encode(&self.vertices[d.to as usize].key),
                    })
                    .collect(),
            };
            serde_json::to_writer(&mut w, &rec)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("JSON is UTF-8")
    }

    /// Reads a fragment written by [`Fragment::write_jsonl`]. The root is the
    /// unique depth-0 vertex; the radius is taken as the largest depth and
    /// the window is left unset.
    pub fn read_jsonl<R: BufRead>(group: &Group, reader: R) -> Result<Fragment> {
        let mut records = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let rec: VertexRecord = serde_json::from_str(&line)
                .map_err(|e| Error::usage(format!("line {}: {e}", lineno + 1)))?;
            records.push(rec);
        }
        let bad = |msg: String| Error::usage(msg);
        let first = records.first().ok_or_else(|| bad("empty fragment file".into()))?;
        if first.depth != 0 {
            return Err(bad("first vertex must be the depth-0 root".into()));
        }
        let root = Tuple::new(group.parse_tuple_value(&first.tuple)?);
        let radius = records.iter().map(|r| r.depth).max().unwrap_or(0);
        let mut frag = Fragment::empty(group, &root, radius, None);

        for rec in &records {
            let tuple = Tuple::new(group.parse_tuple_value(&rec.tuple)?);
            if tuple.len() != frag.n {
                return Err(bad(format!("tuple {tuple} has length {}, expected {}", tuple.len(), frag.n)));
            }
            let key = tuple.key(group);
            if hex::encode(&key) != rec.v {
                return Err(bad(format!("key {} does not match tuple {tuple}", rec.v)));
            }
            if frag.index.contains_key(&key) {
                return Err(bad(format!("duplicate vertex {tuple}")));
            }
            if rec.depth == 0 && !frag.vertices.is_empty() {
                return Err(bad("more than one depth-0 vertex".into()));
            }
            frag.push_vertex(tuple, key, rec.depth);
        }
        for (id, rec) in records.iter().enumerate() {
            if rec.adj.is_empty() {
                continue;
            }
            let mut darts = Vec::with_capacity(rec.adj.len());
            for a in &rec.adj {
                let mv: NielsenMove = a.mv.parse()?;
                if mv.arity() > frag.n {
                    return Err(bad(format!("move {mv} out of range for n = {}", frag.n)));
                }
                let to_key = hex::decode(&a.to).map_err(|e| bad(format!("bad key {}: {e}", a.to)))?;
                let to = frag
                    .id_of(&to_key)
                    .ok_or_else(|| bad(format!("dart {mv} from {} to unknown vertex {}", rec.v, a.to)))?;
                darts.push(Dart {
                    mv: move_index(frag.n, mv) as u16,
                    to,
                });
            }
            darts.sort_by_key(|d| d.mv);
            frag.darts[id] = darts;
            frag.vertices[id].expanded = true;
        }
        Ok(frag)
    }
}
