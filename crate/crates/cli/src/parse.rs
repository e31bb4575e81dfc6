use coxwalls::algebra::{CoxeterSystem, Root, Scalar};
use coxwalls::{Error, Result};

/// A word of generator indices separated by `.`, spaces or commas; empty
/// for the identity.
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    s.split(|c: char| c == '.' || c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Error::Invalid(format!("bad generator index {t:?}"))))
        .collect()
}

fn parse_coord(sys: &CoxeterSystem, t: &str) -> Result<Scalar> {
    let t = t.trim();
    let bad = || Error::Invalid(format!("bad coordinate {t:?}"));
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p.trim().parse::<i64>().map_err(|_| bad())?, q.trim().parse::<i64>().map_err(|_| bad())?),
        None => (t.parse::<i64>().map_err(|_| bad())?, 1),
    };
    if q == 0 {
        return Err(bad());
    }
    Ok(sys.field().rational(p, q))
}

/// A root as a coordinate list in the simple-root basis (`"1,2"` or
/// `"[1, 1/2]"`) or as `word@s`, the root `w·α_s`.
pub fn parse_root(sys: &CoxeterSystem, s: &str) -> Result<Root> {
    let s = s.trim();
    if let Some((w, g)) = s.split_once('@') {
        let word = parse_word(w)?;
        let g: usize = g.trim().parse().map_err(|_| Error::Invalid(format!("bad generator {g:?}")))?;
        if g >= sys.rank() {
            return Err(Error::Invalid(format!("generator {g} out of range")));
        }
        let w = sys.element_from_word(&word)?;
        return Ok(w.act(&sys.simple_root(g)));
    }
    let body = s.trim_start_matches('[').trim_end_matches(']');
    let coords = body.split(',').map(|t| parse_coord(sys, t)).collect::<Result<Vec<_>>>()?;
    if coords.len() != sys.rank() {
        return Err(Error::Invalid(format!("root {s:?} has {} coordinates, rank is {}", coords.len(), sys.rank())));
    }
    let r = sys.vector(&coords);
    if !sys.is_root(&r, 10_000) {
        return Err(Error::Invalid(format!("{s:?} is not a root")));
    }
    Ok(r)
}

/// A list of roots: bracketed groups `"[0,1],[1,2]"` or items separated by
/// `;`.
pub fn parse_roots(sys: &CoxeterSystem, s: &str) -> Result<Vec<Root>> {
    let s = s.trim();
    let items: Vec<String> = if s.contains('[') {
        let mut items = Vec::new();
        let mut depth = 0;
        let mut cur = String::new();
        for c in s.chars() {
            match c {
                '[' => {
                    depth += 1;
                    if depth == 1 {
                        cur.clear();
                        continue;
                    }
                }
                ']' => {
                    depth -= 1;
                    if depth == 0 {
                        items.push(cur.clone());
                        continue;
                    }
                }
                _ => {}
            }
            if depth > 0 {
                cur.push(c);
            }
        }
        if depth != 0 {
            return Err(Error::Invalid("unbalanced brackets".into()));
        }
        items
    } else {
        s.split(';').filter(|t| !t.trim().is_empty()).map(str::to_string).collect()
    };
    items.iter().map(|t| parse_root(sys, t)).collect()
}
