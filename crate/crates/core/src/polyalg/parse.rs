use super::{Poly, PolyError, PolyRing};

// Grammar:
//   poly   := ["-"] term (("+" | "-") term)*
//   term   := factor ("*" factor)*
//   factor := integer | "x" index ["^" integer]
// Whitespace is insignificant; U+2212 is accepted as a minus sign.
pub(super) fn parse(ring: &PolyRing, input: &str) -> Result<Poly, PolyError> {
    let cleaned: String = input
        .chars()
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .filter(|c| !c.is_whitespace())
        .collect();
    if cleaned.is_empty() {
        return Err(PolyError::Parse("empty input".into()));
    }

    let mut acc = ring.zero();
    let bytes = cleaned.as_bytes();
    let mut pos = 0;
    let mut first = true;
    while pos < bytes.len() {
        let mut sign = 1i128;
        match bytes[pos] {
            b'+' if !first => pos += 1,
            b'-' => {
                sign = -1;
                pos += 1;
            }
            _ if first => {}
            c => {
                return Err(PolyError::Parse(format!(
                    "expected '+' or '-' at offset {pos}, found '{}'",
                    c as char
                )))
            }
        }
        first = false;
        let end = bytes[pos..]
            .iter()
            .position(|&b| b == b'+' || b == b'-')
            .map_or(bytes.len(), |off| pos + off);
        let term = parse_term(ring, &cleaned[pos..end])?;
        acc = &acc + &term.scale(sign);
        pos = end;
    }
    Ok(acc)
}

fn parse_term(ring: &PolyRing, s: &str) -> Result<Poly, PolyError> {
    if s.is_empty() {
        return Err(PolyError::Parse("empty term".into()));
    }
    let mut coeff: i128 = 1;
    let mut exps = vec![0u32; ring.nvars()];
    for factor in s.split('*') {
        if let Some(rest) = factor.strip_prefix('x') {
            let (idx, exp) = match rest.split_once('^') {
                Some((i, e)) => (i, parse_int::<u32>(e)?),
                None => (rest, 1),
            };
            let idx: usize = parse_int(idx)?;
            if idx == 0 || idx > ring.nvars() {
                return Err(PolyError::VariableOutOfRange(idx));
            }
            exps[idx - 1] = exps[idx - 1]
                .checked_add(exp)
                .ok_or_else(|| PolyError::Parse("exponent overflow".into()))?;
        } else {
            let c: i128 = parse_int(factor)?;
            coeff = coeff
                .checked_mul(c)
                .ok_or_else(|| PolyError::Parse("coefficient overflow".into()))?;
        }
    }
    ring.term(coeff, &exps)
}

fn parse_int<T: std::str::FromStr>(s: &str) -> Result<T, PolyError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(PolyError::Parse(format!("bad integer '{s}'")));
    }
    s.parse()
        .map_err(|_| PolyError::Parse(format!("integer out of range '{s}'")))
}
