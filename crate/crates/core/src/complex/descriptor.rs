//! Text form of complexes: `0:{P1} 1:{P3} d0=[1]`.
//!
//! Degrees run in ascending order, each written `deg:{summands}` with summands `P<i>`,
//! `I<i>` or an interval literal `[a,b]`. Differentials are `d<k>=[...]` in row-major order.
//! The zero complex is written `0`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{build_complex, Complex, Kind};
use crate::algebra::{AlgebraSpec, IntervalModule};
use crate::error::{Error, Result};
use crate::linalg::{Mat, Q};

pub fn summand_name(kind: Kind, m: &IntervalModule) -> String {
    match kind {
        Kind::Projective => format!("P{}", m.hi),
        Kind::Injective => format!("I{}", m.lo),
        Kind::Module => m.to_string(),
    }
}

pub fn format(x: &Complex) -> String {
    let Some((lo, hi)) = x.range() else {
        return "0".into();
    };
    let mut parts = Vec::new();
    for k in lo..=hi {
        let names: Vec<String> = x.term(k).iter().map(|m| summand_name(x.kind(), m)).collect();
        parts.push(format!("{k}:{{{}}}", names.join(",")));
    }
    for k in lo..hi {
        let d = x.diff(k);
        if d.rows() == 0 || d.cols() == 0 {
            continue;
        }
        let entries: Vec<String> = d.entries().iter().map(ToString::to_string).collect();
        parts.push(format!("d{k}=[{}]", entries.join(",")));
    }
    parts.join(" ")
}

fn parse_rational(s: &str) -> Result<Q> {
    s.trim().parse::<Q>().map_err(|_| Error::Parse(format!("bad rational `{s}`")))
}

fn parse_summand(alg: &AlgebraSpec, s: &str) -> Result<(Kind, IntervalModule)> {
    let s = s.trim();
    let idx = |t: &str| -> Result<usize> {
        let i: usize = t.parse().map_err(|_| Error::Parse(format!("bad summand `{s}`")))?;
        if i == 0 || i > alg.n() {
            return Err(Error::IndexOutOfRange(format!("vertex {i} out of range 1..={}", alg.n())));
        }
        Ok(i)
    };
    if let Some(t) = s.strip_prefix('P') {
        Ok((Kind::Projective, alg.proj(idx(t)?)))
    } else if let Some(t) = s.strip_prefix('I') {
        Ok((Kind::Injective, alg.inj(idx(t)?)))
    } else {
        let m = parse_interval(s)?;
        alg.check(&m)?;
        Ok((Kind::Module, m))
    }
}

/// `[a,b]`
pub fn parse_interval(s: &str) -> Result<IntervalModule> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [a,b], got `{s}`")))?;
    let (a, b) = inner.split_once(',').ok_or_else(|| Error::Parse(format!("expected [a,b], got `{s}`")))?;
    let a: usize = a.trim().parse().map_err(|_| Error::Parse(format!("bad interval `{s}`")))?;
    let b: usize = b.trim().parse().map_err(|_| Error::Parse(format!("bad interval `{s}`")))?;
    IntervalModule::try_new(a, b).ok_or_else(|| Error::InvalidModule(format!("empty interval `{s}`")))
}

/// Parses a descriptor into a validated complex over `alg`.
pub fn parse(alg: &AlgebraSpec, text: &str) -> Result<Complex> {
    let text = text.trim();
    if text == "0" {
        return Ok(Complex::zero(Kind::Projective));
    }
    let mut kind: Option<Kind> = None;
    let mut degrees = BTreeMap::new();
    let mut raw_diffs: BTreeMap<i32, Vec<Q>> = BTreeMap::new();
    for tok in tokens(text) {
        if let Some(rest) = tok.strip_prefix('d') {
            let (k, body) = rest.split_once('=').ok_or_else(|| Error::Parse(format!("bad differential `{tok}`")))?;
            let k: i32 = k.parse().map_err(|_| Error::Parse(format!("bad degree in `{tok}`")))?;
            let body = body
                .strip_prefix('[')
                .and_then(|b| b.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("bad differential `{tok}`")))?;
            let vals = if body.trim().is_empty() {
                Vec::new()
            } else {
                body.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?
            };
            raw_diffs.insert(k, vals);
        } else {
            let (k, body) = tok.split_once(':').ok_or_else(|| Error::Parse(format!("bad term `{tok}`")))?;
            let k: i32 = k.parse().map_err(|_| Error::Parse(format!("bad degree in `{tok}`")))?;
            let body = body
                .strip_prefix('{')
                .and_then(|b| b.strip_suffix('}'))
                .ok_or_else(|| Error::Parse(format!("bad term `{tok}`")))?;
            let mut summands = Vec::new();
            for s in split_summands(body) {
                let (sk, m) = parse_summand(alg, &s)?;
                if kind.is_some_and(|k0| k0 != sk) {
                    return Err(Error::KindMismatch(format!("mixed summands in `{text}`")));
                }
                kind = Some(sk);
                summands.push(m);
            }
            degrees.insert(k, summands);
        }
    }
    let kind = kind.unwrap_or(Kind::Projective);
    let mut diffs = BTreeMap::new();
    for (k, vals) in raw_diffs {
        let (s, t) = (degrees.get(&k).map_or(0, Vec::len), degrees.get(&(k + 1)).map_or(0, Vec::len));
        if vals.len() != s * t {
            return Err(Error::Parse(format!("d{k} has {} entries, expected {}", vals.len(), s * t)));
        }
        let mut m = Mat::zeros(t, s);
        for (i, v) in vals.into_iter().enumerate() {
            m.set(i / s, i % s, v);
        }
        diffs.insert(k, m);
    }
    build_complex(alg, kind, &degrees, &diffs)
}

/// Whitespace-separated tokens, keeping brackets together.
fn tokens(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in text.chars() {
        match ch {
            '[' | '{' => depth += 1,
            ']' | '}' => depth -= 1,
            _ => {}
        }
        if ch.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else if !ch.is_whitespace() {
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn split_summands(body: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for ch in body.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}

/// Sorts summands by label within each degree and rescales each so that the first
/// nonzero entry of its outgoing column is 1, working from the top degree down.
pub fn canonical(x: &Complex) -> Complex {
    let Some((lo, hi)) = x.range() else {
        return x.clone();
    };
    let kind = x.kind();
    let mut perm: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for k in lo..=hi {
        let t = x.term(k);
        let mut idx: Vec<usize> = (0..t.len()).collect();
        idx.sort_by_key(|&i| (super::label(kind, &t[i]), t[i]));
        perm.insert(k, idx);
    }
    let mut scales: BTreeMap<i32, Vec<Q>> = BTreeMap::new();
    scales.insert(hi, vec![Q::one(); x.term(hi).len()]);
    for k in (lo..hi).rev() {
        let d = x.diff(k);
        let (ps, pt) = (&perm[&k], &perm[&(k + 1)]);
        let st = &scales[&(k + 1)];
        let s: Vec<Q> = ps
            .iter()
            .map(|&oc| {
                pt.iter()
                    .enumerate()
                    .find(|(_, &or)| !d.get(or, oc).is_zero())
                    .map_or_else(Q::one, |(r, &or)| &st[r] / d.get(or, oc))
            })
            .collect();
        scales.insert(k, s);
    }
    x.rebase(&perm, &scales)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn round_trip() {
        let a = AlgebraSpec::a4gamma();
        let x = parse(&a, "0:{P1} 1:{P3} d0=[1]").unwrap();
        assert_eq!(format(&x), "0:{P1} 1:{P3} d0=[1]");
        let y = parse(&a, "-1:{P1,P2} 0:{P3} d-1=[1,-1/2]").unwrap();
        assert_eq!(parse(&a, &format(&y)).unwrap(), y);
        assert_eq!(format(&parse(&a, "0").unwrap()), "0");
        let m = parse(&a, "0:{[2,3]}").unwrap();
        assert_eq!(m.kind(), Kind::Module);
        assert!(matches!(parse(&a, "0:{P1} 1:{P5}"), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(parse(&a, "0:{P3} 1:{P1} d0=[1]"), Err(Error::HomViolation(_))));
    }

    #[test]
    fn canonical_rescales() {
        let a = AlgebraSpec::a4gamma();
        let y = parse(&a, "-1:{P2,P1} 0:{P3} d-1=[2,-1/2]").unwrap();
        let c = canonical(&y);
        assert_eq!(format(&c), "-1:{P1,P2} 0:{P3} d-1=[1,1]");
        assert_eq!(c.diff(-1), Mat::from_rows(vec![vec![q(1), q(1)]]));
    }
}
