//! `TLH-CACHE 1` memo files.
//!
//! One entry per line, `<l>|<sigma>|<v>|<w>|<json>`, sorted so that saving the
//! same table twice gives the same bytes.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use tlh_core::recursion::{FullMemo, RecState, Retention};

use crate::json;

pub const HEADER: &str = "TLH-CACHE 1";

pub fn parse(text: &str) -> Result<FullMemo, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(HEADER) => {}
        Some(h) if h.starts_with("TLH-CACHE ") => return Err(format!("unsupported cache version {:?}", &h[10..])),
        _ => return Err("missing TLH-CACHE header".into()),
    }
    let mut memo = FullMemo::new(Retention::Roots);
    for (i, line) in lines.enumerate().filter(|(_, l)| !l.is_empty()) {
        let lineno = i + 2;
        let bar = line
            .match_indices('|')
            .nth(3)
            .map(|(p, _)| p)
            .ok_or_else(|| format!("line {lineno}: expected five fields"))?;
        let state = RecState::parse_key(&line[..bar]).map_err(|e| format!("line {lineno}: {e}"))?;
        let value: serde_json::Value =
            serde_json::from_str(&line[bar + 1..]).map_err(|e| format!("line {lineno}: {e}"))?;
        let value = json::ring_from_json(&value).map_err(|e| format!("line {lineno}: {e}"))?;
        memo.insert(state, value);
    }
    Ok(memo)
}

pub fn render(memo: &FullMemo) -> String {
    let mut lines: Vec<String> = memo
        .iter()
        .map(|(s, v)| format!("{}|{}", s.key_string(), json::ring(v)))
        .collect();
    lines.sort_unstable();
    let mut out = String::with_capacity(lines.iter().map(|l| l.len() + 1).sum::<usize>() + HEADER.len() + 1);
    out.push_str(HEADER);
    out.push('\n');
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    out
}

/// Loads a cache, falling back to an empty table with a warning on stderr.
pub fn load_or_fresh(path: &Path) -> FullMemo {
    let attempt = fs::read_to_string(path).map_err(|e| e.to_string()).and_then(|t| parse(&t));
    attempt.unwrap_or_else(|e| {
        eprintln!("warning: cache {}: {e}; starting with an empty table", path.display());
        FullMemo::new(Retention::Roots)
    })
}

/// Writes through a sibling temp file so a crash never leaves half a cache.
pub fn save(path: &Path, memo: &FullMemo) -> io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let mut f = fs::File::create(&tmp)?;
    f.write_all(render(memo).as_bytes())?;
    f.sync_all()?;
    fs::rename(&tmp, path)
}
