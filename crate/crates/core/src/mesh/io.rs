use std::fs;
use std::path::Path;

use super::TimeMesh;
use crate::{Error, Result};

/// Mesh CSV: header `index,t`, one row per node. Values use the shortest
/// decimal representation that round-trips exactly (at most 17 significant digits).
pub fn mesh_to_csv_string(mesh: &TimeMesh) -> String {
    let mut s = String::from("index,t\n");
    for (j, t) in mesh.nodes().iter().enumerate() {
        s.push_str(&format!("{j},{t}\n"));
    }
    s
}

pub fn mesh_from_csv_str(text: &str) -> Result<TimeMesh> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "index,t" => {}
        Some((_, header)) => {
            return Err(Error::Parse { line: 1, msg: format!("expected header `index,t`, got `{header}`") })
        }
        None => return Err(Error::Parse { line: 1, msg: "empty mesh file".into() }),
    }
    let mut nodes = Vec::new();
    for (i, line) in lines {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let (idx, t) = line
            .split_once(',')
            .ok_or_else(|| Error::Parse { line: line_no, msg: format!("expected `index,t`, got `{line}`") })?;
        let idx: usize = idx
            .trim()
            .parse()
            .map_err(|e| Error::Parse { line: line_no, msg: format!("bad index: {e}") })?;
        if idx != nodes.len() {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected index {}, got {idx}", nodes.len()),
            });
        }
        let t: f64 = t
            .trim()
            .parse()
            .map_err(|e| Error::Parse { line: line_no, msg: format!("bad time value: {e}") })?;
        nodes.push(t);
    }
    TimeMesh::from_nodes(nodes)
}

pub fn write_mesh_csv(mesh: &TimeMesh, path: &Path) -> Result<()> {
    fs::write(path, mesh_to_csv_string(mesh))?;
    Ok(())
}

pub fn read_mesh_csv(path: &Path) -> Result<TimeMesh> {
    mesh_from_csv_str(&fs::read_to_string(path)?)
}
