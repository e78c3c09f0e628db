//! Text format for constant dimension codes.
//!
//! ```text
//! q v k N d p e c_0 c_1 ... c_e
//!
//! <k lines of v integers>
//!
//! <k lines of v integers>
//! ...
//! ```
//!
//! The header gives the field GF(q), q = p^e, by the coefficients of its
//! modulus, lowest degree first. `d` is `inf` for codes with one codeword.
//! Blocks are separated by blank lines; each is the rref representative of
//! one codeword, entries encoded as base-p little-endian integers.

use crate::construct::SubspaceCode;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{Matrix, Subspace};
use std::fmt::Write as _;

pub fn write_code(c: &SubspaceCode) -> String {
    let f = &c.field;
    let d = c.claimed_d.map_or("inf".to_string(), |d| d.to_string());
    let modulus: Vec<String> = f.modulus().iter().map(u32::to_string).collect();
    let mut out = format!("{} {} {} {} {} {} {} {}\n", f.q(), c.v, c.k, c.len(), d, f.p(), f.e(), modulus.join(" "));
    for u in &c.codewords {
        out.push('\n');
        for r in 0..u.dim() {
            let row: Vec<String> = u.rep().row(r).iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
    }
    out
}

pub fn read_code(text: &str) -> Result<SubspaceCode> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim_start().starts_with('#'));
    let (_, header) =
        lines.by_ref().find(|(_, l)| !l.trim().is_empty()).ok_or(Error::Parse { line: 1, msg: "empty file".into() })?;
    let err = |line: usize, msg: String| Error::Parse { line: line + 1, msg };
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() < 8 {
        return Err(err(0, "header must be `q v k N d p e modulus-coefficients`".into()));
    }
    let num = |s: &str| s.parse::<u64>().map_err(|e| err(0, format!("{s:?}: {e}")));
    let (q, v, k, n) = (num(h[0])?, num(h[1])? as usize, num(h[2])? as usize, num(h[3])? as usize);
    let d = if h[4] == "inf" { None } else { Some(num(h[4])? as u32) };
    let (p, e) = (num(h[5])?, num(h[6])? as u32);
    let modulus = h[7..].iter().map(|s| num(s).map(|x| x as u32)).collect::<Result<Vec<_>>>()?;
    let field = FieldSpec::with_modulus(p, e, &modulus)?;
    if field.q() as u64 != q {
        return Err(err(0, format!("q = {q} but p^e = {}", field.q())));
    }
    if k > v {
        return Err(err(0, format!("k = {k} exceeds v = {v}")));
    }

    let mut codewords = Vec::with_capacity(n);
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut start = 0;
    let mut flush = |rows: &mut Vec<Vec<u32>>, at: usize| -> Result<()> {
        if rows.is_empty() {
            return Ok(());
        }
        if rows.len() != k {
            return Err(err(at, format!("block has {} rows, expected {k}", rows.len())));
        }
        let m = Matrix::from_rows(rows)?;
        let u = Subspace::from_rref(m).map_err(|_| err(at, "block is not a full-rank rref matrix".into()))?;
        codewords.push(u);
        rows.clear();
        Ok(())
    };
    for (i, line) in lines {
        if line.trim().is_empty() {
            flush(&mut rows, start)?;
            continue;
        }
        if rows.is_empty() {
            start = i;
        }
        let row = line
            .split_whitespace()
            .map(|s| match s.parse::<u64>() {
                Ok(x) if x < q => Ok(x as u32),
                _ => Err(err(i, format!("{s:?} is not an element of GF({q})"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != v {
            return Err(err(i, format!("row has {} entries, expected {v}", row.len())));
        }
        rows.push(row);
    }
    flush(&mut rows, start)?;
    if k == 0 {
        // zero-dimensional codewords have empty blocks
        codewords.extend((0..n).map(|_| Subspace::zero(v)));
    }
    if codewords.len() != n {
        return Err(err(0, format!("header claims {n} codewords, found {}", codewords.len())));
    }
    Ok(SubspaceCode::new(field, v, k, d, codewords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{gabidulin, lift, spread_construct};

    #[test]
    fn round_trip() {
        let f = FieldSpec::of_order(2).unwrap();
        let c = lift(&gabidulin(&f, 2, 3, 2).unwrap()).unwrap();
        let text = write_code(&c);
        assert!(text.starts_with("2 5 2 8 4 2 1 0 1\n\n1 0 "));
        let back = read_code(&text).unwrap();
        assert_eq!(back.codewords, c.codewords);
        assert_eq!((back.v, back.k, back.claimed_d), (5, 2, Some(4)));
    }

    #[test]
    fn round_trip_extension_field() {
        let f = FieldSpec::of_order(4).unwrap();
        let c = spread_construct(&f, 4, 2).unwrap();
        let back = read_code(&write_code(&c)).unwrap();
        assert_eq!(back.codewords, c.codewords);
        assert_eq!(back.field, f);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(read_code("").is_err());
        assert!(read_code("2 3 2 1 inf 2 1 0 1\n\n1 1 0\n0 1 0\n").is_err()); // not rref
        assert!(read_code("2 3 1 2 2 2 1 0 1\n\n1 0 0\n").is_err()); // count
        assert!(read_code("2 3 1 1 inf 2 1 0 1\n\n1 0 2\n").is_err()); // entry
        assert!(read_code("4 3 1 1 inf 2 2 1 0 1\n\n1 0 0\n").is_err()); // reducible modulus
        let ok = read_code("2 3 1 1 inf 2 1 0 1\n\n1 1 0\n").unwrap();
        assert_eq!(ok.len(), 1);
    }
}
