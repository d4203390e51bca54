//! Text formats: instances, set-cover inputs, and solution files.
//!
//! The instance format is line oriented:
//!
//! ```text
//! # comment
//! p gmeg <n> <m>
//! v <id> <cost>
//! e <u> <v> <weight> [required]
//! ```
//!
//! Vertex lines may be omitted (cost defaults to 1), the required flag
//! defaults to 1, and edge ids are assigned in file order. Printing writes
//! every field explicitly so that parse(print(x)) == x for instances with
//! dense edge ids.

use std::collections::BTreeSet;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{GmegInstance, WeightedGraph};
use crate::monitor::Solution;
use crate::reductions::SetCoverInstance;

pub fn parse_instance(text: &str) -> Result<GmegInstance> {
    let mut header: Option<(usize, usize)> = None;
    let mut costs: Vec<Option<u8>> = Vec::new();
    let mut graph: Option<WeightedGraph> = None;
    let mut required: BTreeSet<usize> = BTreeSet::new();
    let mut edges_seen = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |msg: String| Error::Parse { line, msg };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let directive = tokens.next().expect("non-empty line");
        let rest: Vec<&str> = tokens.collect();
        match directive {
            "p" => {
                if header.is_some() {
                    return Err(err("duplicate problem line".into()));
                }
                match rest.as_slice() {
                    [kind, n, m] if *kind == "gmeg" => {
                        let n: usize =
                            n.parse().map_err(|_| err(format!("bad vertex count '{n}'")))?;
                        let m: usize =
                            m.parse().map_err(|_| err(format!("bad edge count '{m}'")))?;
                        header = Some((n, m));
                        costs = vec![None; n];
                        graph = Some(WeightedGraph::new(n));
                    }
                    _ => return Err(err("problem line must be 'p gmeg <n> <m>'".into())),
                }
            }
            "v" => {
                let (n, _) = header.ok_or_else(|| err("vertex line before problem line".into()))?;
                let [id, cost] = rest.as_slice() else {
                    return Err(err("vertex line must be 'v <id> <cost>'".into()));
                };
                let id: usize = id.parse().map_err(|_| err(format!("bad vertex id '{id}'")))?;
                if id >= n {
                    return Err(err(format!("vertex id {id} out of range 0..{n}")));
                }
                let cost: u8 = cost
                    .parse()
                    .map_err(|_| err(format!("bad vertex cost '{cost}'")))?;
                if cost > 1 {
                    return Err(err(format!("vertex cost must be 0 or 1, got {cost}")));
                }
                if costs[id].replace(cost).is_some() {
                    return Err(err(format!("duplicate cost for vertex {id}")));
                }
            }
            "e" => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| err("edge line before problem line".into()))?;
                let (u, v, w, req) = match rest.as_slice() {
                    [u, v, w] => (*u, *v, *w, "1"),
                    [u, v, w, req] => (*u, *v, *w, *req),
                    _ => {
                        return Err(err(
                            "edge line must be 'e <u> <v> <weight> [required]'".into(),
                        ))
                    }
                };
                let u: usize = u.parse().map_err(|_| err(format!("bad endpoint '{u}'")))?;
                let v: usize = v.parse().map_err(|_| err(format!("bad endpoint '{v}'")))?;
                let w: u64 = w.parse().map_err(|_| err(format!("bad weight '{w}'")))?;
                match req {
                    "0" => {}
                    "1" => {
                        required.insert(edges_seen);
                    }
                    other => {
                        return Err(err(format!("required flag must be 0 or 1, got '{other}'")))
                    }
                }
                g.add_edge_with_id(edges_seen, u, v, w)
                    .map_err(|e| err(e.to_string()))?;
                edges_seen += 1;
            }
            other => return Err(err(format!("unknown directive '{other}'"))),
        }
    }

    let (_, m) = header.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        msg: "missing problem line".into(),
    })?;
    if edges_seen != m {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            msg: format!("problem line promised {m} edges, found {edges_seen}"),
        });
    }
    let graph = graph.expect("graph exists once header parsed");
    let costs: Vec<u8> = costs.into_iter().map(|c| c.unwrap_or(1)).collect();
    GmegInstance::new(graph, costs, required)
}

pub fn print_instance(inst: &GmegInstance) -> String {
    let g = inst.graph();
    let mut out = String::new();
    out.push_str(&format!("p gmeg {} {}\n", g.vertex_count(), g.edge_count()));
    for v in g.vertices() {
        out.push_str(&format!("v {} {}\n", v, inst.cost(v)));
    }
    let mut edges: Vec<_> = g.edges().collect();
    edges.sort_by_key(|e| e.id);
    for e in edges {
        let (a, b) = (e.u.min(e.v), e.u.max(e.v));
        let req = if inst.is_required(e.id) { 1 } else { 0 };
        out.push_str(&format!("e {} {} {} {}\n", a, b, e.weight, req));
    }
    out
}

/// Set-cover text format: first line `<items> <sets>`, then one line per
/// set with space-separated 1-based item indices.
pub fn parse_set_cover(text: &str) -> Result<SetCoverInstance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, head) = lines
        .next()
        .ok_or(Error::Parse {
            line: 1,
            msg: "empty set-cover file".into(),
        })?;
    let mut head_tokens = head.split_whitespace();
    let parse_usize = |tok: Option<&str>, what: &str| -> Result<usize> {
        tok.ok_or(Error::Parse {
            line,
            msg: format!("missing {what}"),
        })?
        .parse()
        .map_err(|_| Error::Parse {
            line,
            msg: format!("bad {what}"),
        })
    };
    let eta = parse_usize(head_tokens.next(), "item count")?;
    let h = parse_usize(head_tokens.next(), "set count")?;
    let mut sets = Vec::with_capacity(h);
    let mut last_line = line;
    for _ in 0..h {
        let (line, content) = lines.next().ok_or(Error::Parse {
            line: last_line,
            msg: format!("expected {h} set lines"),
        })?;
        last_line = line;
        let mut set = BTreeSet::new();
        for tok in content.split_whitespace() {
            let x: usize = tok.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("bad item index '{tok}'"),
            })?;
            if x == 0 || x > eta {
                return Err(Error::Parse {
                    line,
                    msg: format!("item index {x} out of range 1..={eta}"),
                });
            }
            set.insert(x - 1);
        }
        sets.push(set);
    }
    SetCoverInstance::new(eta, sets)
}

pub fn print_set_cover(sc: &SetCoverInstance) -> String {
    let mut out = format!("{} {}\n", sc.item_count, sc.sets.len());
    for s in &sc.sets {
        let items: Vec<String> = s.iter().map(|x| (x + 1).to_string()).collect();
        out.push_str(&items.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_solution(sol: &Solution, path: &Path) -> Result<()> {
    let mut json = serde_json::to_string_pretty(sol)?;
    json.push('\n');
    std::fs::write(path, json)?;
    Ok(())
}

pub fn read_solution(path: &Path) -> Result<Solution> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}
