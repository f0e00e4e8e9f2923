//! Line-oriented chart manifests:
//!
//! ```text
//! [chart]
//! name = sphere
//! dim = 2
//! coords = x, y
//! kahler = true
//! [metric]
//! g.1.1 = 4/(1+x^2+y^2)^2
//! [symplectic]
//! w.1.2 = 4/(1+x^2+y^2)^2
//! [ltensor]
//! L.1.1.2 = x
//! ```
//!
//! Indices are 1-based. Unspecified entries follow from symmetry,
//! antisymmetry, or default to zero.

use crate::error::{Error, Result};
use crate::geometry::{linalg, ChartGeometry, LTensor};
use crate::scalar::RationalFunction;

use super::expr::parse_scalar_at;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Chart,
    Metric,
    Symplectic,
    LTensor,
}

struct Entry {
    line: usize,
    col: usize,
    indices: Vec<usize>,
    value: String,
    value_col: usize,
}

fn parse_err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        column,
        message: message.into(),
    })
}

/// Parses a manifest into a validated chart.
pub fn parse_manifest(text: &str) -> Result<ChartGeometry> {
    let mut section = Section::None;
    let mut name: Option<String> = None;
    let mut dim: Option<(usize, usize)> = None;
    let mut coords: Option<(Vec<String>, usize)> = None;
    let mut kahler: Option<bool> = None;
    let mut metric: Vec<Entry> = Vec::new();
    let mut symplectic: Vec<Entry> = Vec::new();
    let mut ltensor: Vec<Entry> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        if trimmed.starts_with('[') {
            if !trimmed.ends_with(']') {
                return parse_err(line, indent + 1, "unterminated section header");
            }
            section = match &trimmed[1..trimmed.len() - 1] {
                "chart" => Section::Chart,
                "metric" => Section::Metric,
                "symplectic" => Section::Symplectic,
                "ltensor" => Section::LTensor,
                other => return parse_err(line, indent + 2, format!("unknown section '{other}'")),
            };
            continue;
        }
        let Some(eq) = content.find('=') else {
            return parse_err(line, indent + 1, "expected 'key = value'");
        };
        let key = content[..eq].trim();
        let value_raw = &content[eq + 1..];
        let value = value_raw.trim();
        let value_col = eq + 2 + (value_raw.len() - value_raw.trim_start().len());
        let key_col = indent + 1;
        match section {
            Section::None => return parse_err(line, key_col, "entry outside of any section"),
            Section::Chart => match key {
                "name" => name = Some(value.to_string()),
                "dim" => match value.parse::<usize>() {
                    Ok(n) if n > 0 => dim = Some((n, line)),
                    _ => return parse_err(line, value_col, format!("invalid dimension '{value}'")),
                },
                "coords" => {
                    let names: Vec<String> = value.split(',').map(|s| s.trim().to_string()).collect();
                    for n in &names {
                        let ok = n.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                            && n.chars().all(|c| c.is_alphanumeric() || c == '_');
                        if !ok {
                            return parse_err(line, value_col, format!("invalid coordinate name '{n}'"));
                        }
                    }
                    coords = Some((names, line));
                }
                "kahler" => match value {
                    "true" => kahler = Some(true),
                    "false" => kahler = Some(false),
                    _ => return parse_err(line, value_col, "expected 'true' or 'false'"),
                },
                _ => return parse_err(line, key_col, format!("unknown chart key '{key}'")),
            },
            Section::Metric | Section::Symplectic | Section::LTensor => {
                let (prefix, arity, target) = match section {
                    Section::Metric => ("g", 2, &mut metric),
                    Section::Symplectic => ("w", 2, &mut symplectic),
                    _ => ("L", 3, &mut ltensor),
                };
                let parts: Vec<&str> = key.split('.').collect();
                if parts.len() != arity + 1 || parts[0] != prefix {
                    let shape = (0..arity).map(|_| ".i").collect::<String>();
                    return parse_err(line, key_col, format!("expected key of the form {prefix}{shape}"));
                }
                let mut indices = Vec::with_capacity(arity);
                for p in &parts[1..] {
                    match p.parse::<usize>() {
                        Ok(k) if k >= 1 => indices.push(k - 1),
                        _ => return parse_err(line, key_col, format!("invalid index '{p}'")),
                    }
                }
                target.push(Entry {
                    line,
                    col: key_col,
                    indices,
                    value: value.to_string(),
                    value_col,
                });
            }
        }
    }

    let name = name.ok_or_else(|| Error::Parse {
        line: 1,
        column: 1,
        message: "missing 'name' in [chart]".into(),
    })?;
    let (coords, coords_line) = coords.ok_or_else(|| Error::Parse {
        line: 1,
        column: 1,
        message: "missing 'coords' in [chart]".into(),
    })?;
    let n = coords.len();
    if let Some((d, line)) = dim {
        if d != n {
            return parse_err(line, 1, format!("dim = {d} but {n} coordinates are listed"));
        }
    }
    if n > crate::scalar::MAX_VARS {
        return parse_err(coords_line, 1, format!("at most {} coordinates are supported", crate::scalar::MAX_VARS));
    }

    let check_range = |e: &Entry| -> Result<()> {
        if e.indices.iter().any(|&k| k >= n) {
            return parse_err(e.line, e.col, format!("index out of range for dimension {n}"));
        }
        Ok(())
    };
    let value_of = |e: &Entry| parse_scalar_at(&e.value, &coords, e.line, e.value_col);

    let mut g: Vec<Vec<Option<RationalFunction>>> = vec![vec![None; n]; n];
    for e in &metric {
        check_range(e)?;
        let v = value_of(e)?;
        let (i, j) = (e.indices[0], e.indices[1]);
        for (a, b) in [(i, j), (j, i)] {
            if let Some(old) = &g[a][b] {
                if *old != v {
                    return parse_err(e.line, e.col, "metric is not symmetric: conflicting entries");
                }
            }
            g[a][b] = Some(v.clone());
        }
    }
    let mut w: Vec<Vec<Option<RationalFunction>>> = vec![vec![None; n]; n];
    for e in &symplectic {
        check_range(e)?;
        let v = value_of(e)?;
        let (i, j) = (e.indices[0], e.indices[1]);
        if i == j {
            if !v.is_zero() {
                return parse_err(e.line, e.col, "symplectic form is not antisymmetric: nonzero diagonal entry");
            }
            continue;
        }
        for (a, b, val) in [(i, j, v.clone()), (j, i, -&v)] {
            if let Some(old) = &w[a][b] {
                if *old != val {
                    return parse_err(e.line, e.col, "symplectic form is not antisymmetric: conflicting entries");
                }
            }
            w[a][b] = Some(val);
        }
    }
    let fill = |m: Vec<Vec<Option<RationalFunction>>>| -> linalg::Matrix {
        m.into_iter()
            .map(|r| r.into_iter().map(|x| x.unwrap_or_else(RationalFunction::zero)).collect())
            .collect()
    };
    let l_tensor: Option<LTensor> = if ltensor.is_empty() {
        None
    } else {
        let mut l: Vec<Vec<Vec<Option<RationalFunction>>>> = vec![vec![vec![None; n]; n]; n];
        for e in &ltensor {
            check_range(e)?;
            let v = value_of(e)?;
            let (a, j, k) = (e.indices[0], e.indices[1], e.indices[2]);
            if j == k {
                if !v.is_zero() {
                    return parse_err(e.line, e.col, "L tensor must be antisymmetric in its last two slots");
                }
                continue;
            }
            for (b, c, val) in [(j, k, v.clone()), (k, j, -&v)] {
                if let Some(old) = &l[a][b][c] {
                    if *old != val {
                        return parse_err(e.line, e.col, "L tensor: conflicting entries");
                    }
                }
                l[a][b][c] = Some(val);
            }
        }
        Some(l.into_iter().map(fill).collect())
    };
    let chart = ChartGeometry::new(&name, coords, fill(g), fill(w), l_tensor)?;
    Ok(match kahler {
        Some(flag) => chart.with_kahler_expected(flag),
        None => chart,
    })
}

/// Renders a chart back into manifest text.
pub fn render_manifest(chart: &ChartGeometry) -> String {
    let n = chart.dim();
    let names = chart.coords();
    let mut out = String::new();
    out.push_str("[chart]\n");
    out.push_str(&format!("name = {}\n", chart.name()));
    out.push_str(&format!("dim = {n}\n"));
    out.push_str(&format!("coords = {}\n", names.join(", ")));
    if let Some(k) = chart.kahler_expected() {
        out.push_str(&format!("kahler = {k}\n"));
    }
    out.push_str("[metric]\n");
    for i in 0..n {
        for j in i..n {
            let v = &chart.metric()[i][j];
            if !v.is_zero() {
                out.push_str(&format!("g.{}.{} = {}\n", i + 1, j + 1, v.display_with(names)));
            }
        }
    }
    out.push_str("[symplectic]\n");
    for i in 0..n {
        for j in i + 1..n {
            let v = &chart.omega()[i][j];
            if !v.is_zero() {
                out.push_str(&format!("w.{}.{} = {}\n", i + 1, j + 1, v.display_with(names)));
            }
        }
    }
    if let Some(l) = chart.l_tensor() {
        out.push_str("[ltensor]\n");
        for (a, slice) in l.iter().enumerate() {
            for j in 0..n {
                for k in j + 1..n {
                    let v = &slice[j][k];
                    if !v.is_zero() {
                        out.push_str(&format!("L.{}.{}.{} = {}\n", a + 1, j + 1, k + 1, v.display_with(names)));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::library;

    const FLAT: &str = "[chart]\nname = flat\ndim = 2\ncoords = x, y\nkahler = true\n[metric]\ng.1.1 = 1\ng.2.2 = 1\n[symplectic]\nw.1.2 = 1\n";

    #[test]
    fn flat_manifest() {
        let c = parse_manifest(FLAT).unwrap();
        let f = library::flat2();
        assert_eq!(c.metric(), f.metric());
        assert_eq!(c.omega(), f.omega());
        assert_eq!(c.kahler_expected(), Some(true));
    }

    #[test]
    fn render_round_trips_builtins() {
        for name in ["sphere2", "halfplane", "tlift1q"] {
            let c = library::builtin(name).unwrap();
            let back = parse_manifest(&render_manifest(&c)).unwrap();
            assert_eq!(back.metric(), c.metric());
            assert_eq!(back.omega(), c.omega());
        }
    }

    #[test]
    fn rejections() {
        let open = "[chart]\nname = bad\ncoords = x, y, z, w\n[metric]\ng.1.1 = 1\ng.2.2 = 1\ng.3.3 = 1\ng.4.4 = 1\n[symplectic]\nw.1.2 = z\nw.3.4 = 1\n";
        assert!(matches!(parse_manifest(open), Err(Error::Construction(m)) if m.contains("not closed")));
        let singular = "[chart]\nname = bad\ncoords = x, y\n[metric]\ng.1.1 = 1\n[symplectic]\nw.1.2 = 1\n";
        assert!(matches!(parse_manifest(singular), Err(Error::Construction(m)) if m.contains("det g = 0")));
        let typo = "[chart]\nname = bad\ncoords = x, y\n[metric]\ng.1.1 = 1 + q\n";
        assert!(matches!(parse_manifest(typo), Err(Error::Parse { line: 5, column: 13, .. })));
        let sect = "[charts]\n";
        assert!(matches!(parse_manifest(sect), Err(Error::Parse { line: 1, .. })));
        let range = "[chart]\nname = bad\ncoords = x, y\n[metric]\ng.1.3 = 1\n";
        assert!(matches!(parse_manifest(range), Err(Error::Parse { line: 5, .. })));
    }
}
