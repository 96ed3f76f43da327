use super::{BinaryStructure, RelationKind};
use crate::error::{Error, Result};
use crate::graph::VertexId;

impl BinaryStructure {
    /// Text form:
    ///
    /// ```text
    /// domain 3
    /// ids 0 4 7            # only when the ids are not 0..n
    /// relation E symmetric
    /// 0 4
    /// relation lt arbitrary
    /// 0 4
    /// predicate P 0 7
    /// ```
    pub fn to_text(&self) -> String {
        let mut out = format!("domain {}\n", self.domain.len());
        let dense = self
            .domain
            .iter()
            .enumerate()
            .all(|(i, v)| v.0 as usize == i);
        if !dense {
            let ids: Vec<String> = self.domain.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("ids {}\n", ids.join(" ")));
        }
        for rel in &self.relations {
            let kind = match rel.kind {
                RelationKind::Symmetric => "symmetric",
                RelationKind::Arbitrary => "arbitrary",
            };
            out.push_str(&format!("relation {} {kind}\n", rel.name));
            for (u, v) in &rel.pairs {
                out.push_str(&format!("{u} {v}\n"));
            }
        }
        for (name, members) in &self.predicates {
            let ids: Vec<String> = members.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("predicate {name} {}\n", ids.join(" ")).replace(" \n", "\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<BinaryStructure> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .peekable();
        let id = |line: usize, tok: &str| -> Result<VertexId> {
            tok.parse()
                .map(VertexId)
                .map_err(|_| Error::parse(line, 1, format!("bad element id {tok:?}")))
        };

        let (line, head) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "empty structure"))?;
        let n: usize = match head.split_whitespace().collect::<Vec<_>>()[..] {
            ["domain", n] => n
                .parse()
                .map_err(|_| Error::parse(line, 8, "bad domain size"))?,
            _ => return Err(Error::parse(line, 1, "expected `domain <n>`")),
        };
        let domain: Vec<VertexId> = match lines.peek() {
            Some(&(line, l)) if l.starts_with("ids") => {
                lines.next();
                let ids = l
                    .split_whitespace()
                    .skip(1)
                    .map(|t| id(line, t))
                    .collect::<Result<Vec<_>>>()?;
                if ids.len() != n {
                    return Err(Error::parse(line, 1, format!("expected {n} ids")));
                }
                ids
            }
            _ => (0..n as u32).map(VertexId).collect(),
        };
        let mut s = BinaryStructure::new(domain);
        while let Some((line, l)) = lines.next() {
            let toks: Vec<&str> = l.split_whitespace().collect();
            match toks[..] {
                ["relation", name, kind] => {
                    let kind = match kind {
                        "symmetric" => RelationKind::Symmetric,
                        "arbitrary" => RelationKind::Arbitrary,
                        _ => {
                            return Err(Error::parse(
                                line,
                                1,
                                format!("unknown relation kind {kind:?}"),
                            ))
                        }
                    };
                    let mut pairs = Vec::new();
                    while let Some(&(line, l)) = lines.peek() {
                        let t: Vec<&str> = l.split_whitespace().collect();
                        if t.len() != 2 || t[0].parse::<u32>().is_err() {
                            break;
                        }
                        pairs.push((id(line, t[0])?, id(line, t[1])?));
                        lines.next();
                    }
                    s.add_relation(name, kind, pairs)?;
                }
                ["predicate", name, ref members @ ..] => {
                    let members = members
                        .iter()
                        .map(|t| id(line, t))
                        .collect::<Result<Vec<_>>>()?;
                    s.add_predicate(name, members)?;
                }
                _ => return Err(Error::parse(line, 1, format!("unexpected line {l:?}"))),
            }
        }
        Ok(s)
    }
}
