//! File formats: `.grp` (degree line + one generator per line in cycle
//! notation), `.dsn` (a "v k" line + one block per line), and transitive
//! group catalogs (directories of `deg<v>_n<i>.grp` files with an optional
//! `PROVENANCE` file naming the library ordering they mirror).

use std::fs;
use std::path::{Path, PathBuf};

use crate::design::Design;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{parse_cycles, Permutation};

/// Parse the `.grp` format from a string. Line 1 is the degree; each later
/// nonempty line is one generator; `#` starts a comment line.
pub fn parse_group(text: &str) -> Result<PermGroup> {
    let mut degree: Option<u32> = None;
    let mut gens: Vec<Permutation> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match degree {
            None => {
                let d: u32 = line.parse().map_err(|_| {
                    Error::parse(lineno + 1, 1, format!("expected degree, found {line:?}"))
                })?;
                if d == 0 {
                    return Err(Error::parse(lineno + 1, 1, "degree must be positive"));
                }
                degree = Some(d);
            }
            Some(d) => gens.push(parse_cycles(line, d, lineno + 1)?),
        }
    }
    let degree = degree.ok_or_else(|| Error::parse(1, 1, "missing degree line"))?;
    PermGroup::new(degree, gens)
}

pub fn read_group(path: &Path) -> Result<PermGroup> {
    parse_group(&fs::read_to_string(path)?)
}

pub fn format_group(g: &PermGroup) -> String {
    let mut out = format!("{}\n", g.degree());
    for gen in g.generators() {
        out.push_str(&gen.to_string());
        out.push('\n');
    }
    if g.generators().is_empty() {
        out.push_str("()\n");
    }
    out
}

pub fn write_group(path: &Path, g: &PermGroup) -> Result<()> {
    Ok(fs::write(path, format_group(g))?)
}

/// Parse the `.dsn` format. Line 1 is "v k"; each later nonempty line is a
/// block of k increasing point numbers; `#` starts a comment line.
pub fn parse_design(text: &str) -> Result<Design> {
    let mut header: Option<(u32, u32)> = None;
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: Vec<&str> = line.split_ascii_whitespace().collect();
        let parse_one = |tok: &str| -> Result<u32> {
            tok.parse::<u32>()
                .map_err(|_| Error::parse(lineno + 1, 1, format!("bad number {tok:?}")))
        };
        match header {
            None => {
                if nums.len() != 2 {
                    return Err(Error::parse(lineno + 1, 1, "expected header \"v k\""));
                }
                header = Some((parse_one(nums[0])?, parse_one(nums[1])?));
            }
            Some((_, k)) => {
                if nums.len() != k as usize {
                    return Err(Error::parse(
                        lineno + 1,
                        1,
                        format!("expected {k} points, found {}", nums.len()),
                    ));
                }
                let block = nums.iter().map(|t| parse_one(t)).collect::<Result<Vec<u32>>>()?;
                if block.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::parse(lineno + 1, 1, "block points must be increasing"));
                }
                blocks.push(block);
            }
        }
    }
    let (v, k) = header.ok_or_else(|| Error::parse(1, 1, "missing \"v k\" header"))?;
    Design::new(v, k, blocks)
}

pub fn read_design(path: &Path) -> Result<Design> {
    parse_design(&fs::read_to_string(path)?)
}

pub fn format_design(d: &Design) -> String {
    let mut out = format!("{} {}\n", d.v(), d.k());
    for block in d.blocks() {
        let strs: Vec<String> = block.iter().map(|p| p.to_string()).collect();
        out.push_str(&strs.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_design(path: &Path, d: &Design) -> Result<()> {
    Ok(fs::write(path, format_design(d))?)
}

/// One ingested transitive group, named by degree and catalog index.
pub struct CatalogEntry {
    pub degree: u32,
    pub index: u32,
    pub group: PermGroup,
    pub path: PathBuf,
}

/// A directory of `deg<v>_n<i>.grp` files. The optional `PROVENANCE` file's
/// first nonempty line is recorded verbatim so reports can state which
/// library ordering the indices mirror.
pub struct Catalog {
    pub degree: u32,
    pub provenance: Option<String>,
    pub entries: Vec<CatalogEntry>,
}

pub fn load_catalog(dir: &Path, degree: u32) -> Result<Catalog> {
    let mut entries = Vec::new();
    let prefix = format!("deg{degree}_n");
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        let Some(name) = path.file_name().and_then(|n| n.to_str()) else { continue };
        let Some(stem) = name.strip_suffix(".grp") else { continue };
        let Some(idx) = stem.strip_prefix(&prefix) else { continue };
        let Ok(index) = idx.parse::<u32>() else {
            return Err(Error::Invalid(format!("bad catalog file name {name:?}")));
        };
        let group = read_group(&path)?;
        if group.degree() != degree {
            return Err(Error::DegreeMismatch { left: group.degree(), right: degree });
        }
        entries.push(CatalogEntry { degree, index, group, path });
    }
    entries.sort_by_key(|e| e.index);
    let provenance = fs::read_to_string(dir.join("PROVENANCE"))
        .ok()
        .and_then(|s| s.lines().map(str::trim).find(|l| !l.is_empty()).map(String::from));
    Ok(Catalog { degree, provenance, entries })
}
