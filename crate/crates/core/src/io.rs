//! Text formats: group files, subgroup files, basis files and formula files.
//!
//! Group file:
//! ```text
//! # A5 on five points
//! degree: 5
//! (1 2 3 4 5)
//! (3 4 5)
//! ```
//! Subgroup file: one tuple per line, coordinates in cycle notation split
//! by `|`, e.g. `() | (1 2 3) | (1 2 3) | ()`. The subgroup is the one the
//! listed tuples generate. Basis file: one vector per line, entries split
//! by whitespace. `#` starts a comment in every format.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::formula::{text, Formula};
use crate::fp::{FpSubspace, FpVector};
use crate::group::{generate_group, Ceilings, GroupTable};
use crate::perm::Perm;
use crate::subgroup::SubgroupHandle;
use crate::tuple::TupleGroup;

fn content_lines(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn parse_group(s: &str, ceilings: &Ceilings) -> Result<GroupTable> {
    let mut lines = content_lines(s);
    let (ln, first) = lines.next().ok_or_else(|| Error::Parse("empty group file".into()))?;
    let degree = first
        .strip_prefix("degree:")
        .ok_or_else(|| Error::Parse(format!("line {ln}: expected `degree: n`")))?
        .trim()
        .parse::<usize>()
        .map_err(|e| Error::Parse(format!("line {ln}: {e}")))?;
    if degree == 0 {
        return Err(Error::Parse(format!("line {ln}: degree must be positive")));
    }
    let mut gens = Vec::new();
    for (ln, l) in lines {
        gens.push(Perm::from_cycles(degree, l).map_err(|e| Error::Parse(format!("line {ln}: {e}")))?);
    }
    generate_group(degree, gens, ceilings)
}

pub fn load_group(path: &Path, ceilings: &Ceilings) -> Result<GroupTable> {
    parse_group(&read_to_string(path)?, ceilings)
}

pub fn group_to_text(g: &GroupTable) -> String {
    let mut out = format!("degree: {}\n", g.degree());
    for p in g.generator_perms() {
        out.push_str(&p.to_cycle_string());
        out.push('\n');
    }
    out
}

/// Tuples of element indices, one per line.
pub fn parse_tuples(s: &str, g: &GroupTable, arity: usize) -> Result<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    for (ln, l) in content_lines(s) {
        let parts: Vec<&str> = l.split('|').map(str::trim).collect();
        if parts.len() != arity {
            return Err(Error::Parse(format!("line {ln}: expected {arity} coordinates, got {}", parts.len())));
        }
        let mut t = Vec::with_capacity(arity);
        for p in parts {
            let perm = Perm::from_cycles(g.degree(), p).map_err(|e| Error::Parse(format!("line {ln}: {e}")))?;
            let idx = g
                .index_of(&perm)
                .ok_or_else(|| Error::Parse(format!("line {ln}: {perm} is not in the group")))?;
            t.push(idx as u32);
        }
        out.push(t);
    }
    Ok(out)
}

pub fn parse_subgroup(s: &str, q: &TupleGroup) -> Result<SubgroupHandle> {
    let tuples = parse_tuples(s, q.base(), q.arity())?;
    q.generated_by(&tuples)
}

pub fn load_subgroup(path: &Path, q: &TupleGroup) -> Result<SubgroupHandle> {
    parse_subgroup(&read_to_string(path)?, q)
}

/// Every element of `h`, one tuple per line.
pub fn subgroup_to_text(q: &TupleGroup, h: &SubgroupHandle) -> String {
    let g = q.base();
    let mut out = String::new();
    for e in h.elements() {
        let line: Vec<String> = q.tuple(e).iter().map(|&x| g.element(x as usize).to_cycle_string()).collect();
        out.push_str(&line.join(" | "));
        out.push('\n');
    }
    out
}

pub fn parse_basis(s: &str, p: u32, k: usize) -> Result<FpSubspace> {
    let mut rows: Vec<FpVector> = Vec::new();
    for (ln, l) in content_lines(s) {
        let row = l
            .split_whitespace()
            .map(|x| x.parse::<i64>().map(|v| v.rem_euclid(p as i64) as u32))
            .collect::<std::result::Result<Vec<u32>, _>>()
            .map_err(|e| Error::Parse(format!("line {ln}: {e}")))?;
        if row.len() != k {
            return Err(Error::Parse(format!("line {ln}: expected {k} entries, got {}", row.len())));
        }
        rows.push(row);
    }
    FpSubspace::span(p, k, rows)
}

pub fn load_basis(path: &Path, p: u32, k: usize) -> Result<FpSubspace> {
    parse_basis(&read_to_string(path)?, p, k)
}

pub fn load_formula(path: &Path) -> Result<Formula> {
    text::parse(&read_to_string(path)?)
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::tuple::{power_subgroup, Constraint};
    use std::sync::Arc;

    #[test]
    fn group_files() {
        let c = Ceilings::default();
        let g = parse_group("# A5\ndegree: 5\n(1 2 3 4 5)\n(3 4 5)\n", &c).unwrap();
        assert_eq!(g.order(), 60);
        let again = parse_group(&group_to_text(&g), &c).unwrap();
        assert_eq!(again.order(), 60);
        assert!(parse_group("(1 2)\n", &c).is_err());
        assert!(parse_group("degree: 3\n(1 4)\n", &c).is_err());
        assert!(parse_group("degree: x\n", &c).is_err());
    }

    #[test]
    fn subgroup_files() {
        let c = Ceilings::default();
        let g = Arc::new(crate::group::named::symmetric(3));
        let q = power_subgroup(g, 2, Constraint::FullPower, &c).unwrap();
        let diag = parse_subgroup("(1 2) | (1 2)\n(1 2 3) | (1 2 3)\n", &q).unwrap();
        assert_eq!(diag.order(), 6);
        assert_eq!(parse_subgroup(&subgroup_to_text(&q, &diag), &q).unwrap(), diag);
        assert!(parse_subgroup("(1 2)\n", &q).is_err());
    }

    #[test]
    fn basis_files() {
        let v = parse_basis("1 1 0\n0 1 1 # zero-sum\n", 2, 3).unwrap();
        assert_eq!(v, FpSubspace::zero_sum(2, 3));
        assert!(parse_basis("1 1\n", 2, 3).is_err());
        assert!(parse_basis("", 3, 2).unwrap().dim() == 0);
    }
}
