use fermat_core::psl2::CosetLabel;

fn residue(s: &str, n: usize) -> Result<usize, String> {
    let v: i64 = s.trim().parse().map_err(|_| format!("not an integer: {s:?}"))?;
    Ok(v.rem_euclid(n as i64) as usize)
}

/// Parses `i,j,k` with 0 ≤ k ≤ 5, or `x[i,j]` / `y[i,j]`. Indices are taken
/// mod n and may be negative.
pub fn parse_symbol(s: &str, n: usize) -> Result<CosetLabel, String> {
    let s = s.trim();
    let named = |prefix: &str| {
        s.strip_prefix(prefix).and_then(|r| r.strip_suffix(']'))
    };
    let (body, k) = match (named("x["), named("y[")) {
        (Some(b), _) => (b, Some(0)),
        (_, Some(b)) => (b, Some(2)),
        _ => (s, None),
    };
    let parts: Vec<&str> = body.split(',').collect();
    match (k, parts.as_slice()) {
        (Some(k), [i, j]) => Ok(CosetLabel::new(residue(i, n)?, residue(j, n)?, k)),
        (None, [i, j, k]) => {
            let k: usize = k.trim().parse().map_err(|_| format!("bad coset index {k:?}"))?;
            if k > 5 {
                return Err(format!("coset index must be 0..5, got {k}"));
            }
            Ok(CosetLabel::new(residue(i, n)?, residue(j, n)?, k))
        }
        _ => Err(format!("malformed symbol {s:?}: expected \"i,j,k\", x[i,j] or y[i,j]")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_symbol("1,2,5", 3).unwrap(), CosetLabel::new(1, 2, 5));
        assert_eq!(parse_symbol(" -1, 4 ,0", 3).unwrap(), CosetLabel::new(2, 1, 0));
        assert_eq!(parse_symbol("x[2,0]", 3).unwrap(), CosetLabel::new(2, 0, 0));
        assert_eq!(parse_symbol("y[0,-1]", 3).unwrap(), CosetLabel::new(0, 2, 2));
        for bad in ["", "1,2", "1,2,6", "a,b,c", "z[1,2]", "x[1,2,3]", "x[1,2"] {
            assert!(parse_symbol(bad, 3).is_err(), "{bad}");
        }
    }
}
