//! The line-oriented presentation file format.
//!
//! ```text
//! # Heisenberg group of order 27
//! pgroup p=3 n=3
//! conj g2^g1 = g2 g3
//! ```
//!
//! `pow g<i> = <word>` and `conj g<j>^g<i> = g<j> <word>` lines may appear in
//! any order after the header; omitted relations are trivial. A word is `1`
//! or space-separated factors `g<k>` / `g<k>^<e>` with increasing `k`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::pc::presentation::{PcPresentation, PresentationBuilder};

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    column: s + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: s + 1,
        });
    }
    out
}

struct LineCtx {
    line: usize,
}

impl LineCtx {
    fn err<T>(&self, column: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            line: self.line,
            column,
            message: message.into(),
        })
    }

    fn number(&self, text: &str, column: usize, what: &str) -> Result<u64> {
        match text.parse::<u64>() {
            Ok(v) => Ok(v),
            Err(_) => self.err(column, format!("expected {what}, found `{text}`")),
        }
    }

    /// Parses `g<k>` and returns the zero-based index.
    fn generator(&self, text: &str, column: usize, ngens: usize) -> Result<usize> {
        let Some(digits) = text.strip_prefix('g') else {
            return self.err(
                column,
                format!("expected a generator `g<k>`, found `{text}`"),
            );
        };
        let k = self.number(digits, column + 1, "a generator index")? as usize;
        if k == 0 || k > ngens {
            return self.err(column, format!("generator g{k} out of range 1..={ngens}"));
        }
        Ok(k - 1)
    }

    fn factor(&self, tok: &Token<'_>, ngens: usize, prime: u32) -> Result<(usize, u32)> {
        let (gen_text, exp) = match tok.text.split_once('^') {
            Some((g, e)) => {
                let col = tok.column + g.len() + 1;
                let e = self.number(e, col, "an exponent")?;
                if e == 0 || e >= prime as u64 {
                    return self.err(col, format!("exponent {e} outside [1, {prime})"));
                }
                (g, e as u32)
            }
            None => (tok.text, 1),
        };
        Ok((self.generator(gen_text, tok.column, ngens)?, exp))
    }

    /// Parses a tail word; every factor must lie strictly after `after`.
    fn word(
        &self,
        toks: &[Token<'_>],
        ngens: usize,
        prime: u32,
        after: usize,
        relation: &str,
    ) -> Result<Vec<u32>> {
        let mut exps = vec![0u32; ngens];
        if toks.len() == 1 && toks[0].text == "1" {
            return Ok(exps);
        }
        let mut last: Option<usize> = None;
        for tok in toks {
            let (g, e) = self.factor(tok, ngens, prime)?;
            if g <= after {
                return Err(Error::Triangularity(format!(
                    "line {}, column {}: {relation} involves g{} but may only involve generators after g{}",
                    self.line,
                    tok.column,
                    g + 1,
                    after + 1
                )));
            }
            if last.is_some_and(|l| g <= l) {
                return self.err(
                    tok.column,
                    "word factors must have strictly increasing indices",
                );
            }
            last = Some(g);
            exps[g] = e;
        }
        Ok(exps)
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn header_field(ctx: &LineCtx, tok: Option<&Token<'_>>, key: &str, prev_end: usize) -> Result<u64> {
    let Some(tok) = tok else {
        return ctx.err(prev_end, format!("expected `{key}=<value>`"));
    };
    match tok.text.strip_prefix(key).and_then(|r| r.strip_prefix('=')) {
        Some(v) => ctx.number(v, tok.column + key.len() + 1, "an integer"),
        None => ctx.err(
            tok.column,
            format!("expected `{key}=<value>`, found `{}`", tok.text),
        ),
    }
}

impl PcPresentation {
    /// Parses and validates a presentation in the text format.
    pub fn parse(text: &str) -> Result<PcPresentation> {
        let mut header: Option<(u32, usize)> = None;
        let mut builder: Option<PresentationBuilder> = None;
        let mut seen_pow = BTreeMap::new();
        let mut seen_conj = BTreeMap::new();
        let mut last_line = 0;

        for (idx, raw) in text.lines().enumerate() {
            let ctx = LineCtx { line: idx + 1 };
            last_line = idx + 1;
            let toks = tokenize(strip_comment(raw));
            if toks.is_empty() {
                continue;
            }
            let Some((prime, ngens)) = header else {
                if toks[0].text != "pgroup" {
                    return ctx.err(
                        toks[0].column,
                        "expected header `pgroup p=<prime> n=<ngens>`",
                    );
                }
                let end = toks[0].column + toks[0].text.len();
                let p = header_field(&ctx, toks.get(1), "p", end)?;
                let n = header_field(&ctx, toks.get(2), "n", end)?;
                if let Some(extra) = toks.get(3) {
                    return ctx.err(extra.column, "unexpected trailing input after header");
                }
                let p32 = u32::try_from(p).map_err(|_| Error::NotPrime(p))?;
                if !crate::pc::is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                header = Some((p32, n as usize));
                builder = Some(PresentationBuilder::new(p32, n as usize));
                continue;
            };
            let b = builder.take().expect("builder present after header");
            let eq = toks.get(2);
            if eq.map(|t| t.text) != Some("=") {
                let col = eq.map_or(raw.len() + 1, |t| t.column);
                return ctx.err(col, "expected `=`");
            }
            match toks[0].text {
                "pow" => {
                    let i = ctx.generator(toks[1].text, toks[1].column, ngens)?;
                    if seen_pow.insert(i, ctx.line).is_some() {
                        return ctx.err(
                            toks[0].column,
                            format!("duplicate power relation for g{}", i + 1),
                        );
                    }
                    if toks.len() < 4 {
                        return ctx.err(raw.len() + 1, "missing right-hand side");
                    }
                    let rel = format!("power relation of g{}", i + 1);
                    let tail = ctx.word(&toks[3..], ngens, prime, i, &rel)?;
                    builder = Some(b.power(i, &tail));
                }
                "conj" => {
                    let lhs = &toks[1];
                    let Some((gj, gi)) = lhs.text.split_once('^') else {
                        return ctx.err(lhs.column, "expected `g<j>^g<i>`");
                    };
                    let j = ctx.generator(gj, lhs.column, ngens)?;
                    let i = ctx.generator(gi, lhs.column + gj.len() + 1, ngens)?;
                    if i >= j {
                        return Err(Error::Triangularity(format!(
                            "line {}: conjugate relation g{}^g{} needs the conjugating index below the conjugated one",
                            ctx.line,
                            j + 1,
                            i + 1
                        )));
                    }
                    if seen_conj.insert((i, j), ctx.line).is_some() {
                        return ctx.err(
                            toks[0].column,
                            format!("duplicate relation for g{}^g{}", j + 1, i + 1),
                        );
                    }
                    let Some(first) = toks.get(3) else {
                        return ctx.err(raw.len() + 1, "missing right-hand side");
                    };
                    if ctx.generator(first.text, first.column, ngens).ok() != Some(j) {
                        return ctx.err(
                            first.column,
                            format!("right-hand side must start with g{}", j + 1),
                        );
                    }
                    let rest = &toks[4..];
                    let tail = if rest.is_empty() {
                        vec![0; ngens]
                    } else {
                        let rel = format!("conjugate relation g{}^g{}", j + 1, i + 1);
                        ctx.word(rest, ngens, prime, j, &rel)?
                    };
                    builder = Some(b.conj(j, i, &tail));
                }
                other => {
                    return ctx.err(toks[0].column, format!("unknown directive `{other}`"));
                }
            }
        }
        match builder {
            Some(b) => b.build(),
            None => Err(Error::Syntax {
                line: last_line.max(1),
                column: 1,
                message: "missing header `pgroup p=<prime> n=<ngens>`".into(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_nine() {
        let g = PcPresentation::parse("pgroup p=3 n=2\npow g1 = g2\n").unwrap();
        assert_eq!(g.order(), 9);
        assert_eq!(g.power_tail(0).exponents(), &[0, 1]);
        assert!(g.is_abelian());
    }

    #[test]
    fn heisenberg_with_comments() {
        let text = "# Heisenberg\npgroup p=3 n=3   # header\n\nconj g2^g1 = g2 g3\n";
        let g = PcPresentation::parse(text).unwrap();
        assert_eq!(g.order(), 27);
        assert_eq!(g.conj_tail(0, 1).exponents(), &[0, 0, 1]);
    }

    #[test]
    fn self_referential_power_is_triangularity_error() {
        let err = PcPresentation::parse("pgroup p=3 n=2\npow g1 = g1\n").unwrap_err();
        assert!(matches!(err, Error::Triangularity(_)), "{err}");
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = PcPresentation::parse("pgroup p=3 n=2\npow g1 = g2^5\n").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                line: 2,
                column: 13,
                message: "exponent 5 outside [1, 3)".into()
            }
        );
        let err = PcPresentation::parse("pgroup p=3 n=2\npow g1 g2\n").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Syntax {
                    line: 2,
                    column: 8,
                    ..
                }
            ),
            "{err}"
        );
        let err = PcPresentation::parse("pgrp p=3 n=1").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Syntax {
                    line: 1,
                    column: 1,
                    ..
                }
            ),
            "{err}"
        );
        let err = PcPresentation::parse("").unwrap_err();
        assert!(matches!(err, Error::Syntax { .. }));
    }

    #[test]
    fn not_prime_header() {
        assert_eq!(
            PcPresentation::parse("pgroup p=9 n=1").unwrap_err(),
            Error::NotPrime(9)
        );
    }

    #[test]
    fn conj_must_repeat_conjugated_generator() {
        let err = PcPresentation::parse("pgroup p=3 n=3\nconj g2^g1 = g3\n").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Syntax {
                    line: 2,
                    column: 14,
                    ..
                }
            ),
            "{err}"
        );
        let err = PcPresentation::parse("pgroup p=3 n=3\nconj g1^g2 = g1 g3\n").unwrap_err();
        assert!(matches!(err, Error::Triangularity(_)), "{err}");
    }

    #[test]
    fn inconsistent_file_rejected() {
        let err =
            PcPresentation::parse("pgroup p=3 n=3\npow g1 = g2\nconj g2^g1 = g2 g3\n").unwrap_err();
        assert!(matches!(err, Error::Inconsistent { .. }), "{err}");
    }

    #[test]
    fn duplicate_relation_rejected() {
        let err = PcPresentation::parse("pgroup p=3 n=2\npow g1 = g2\npow g1 = 1\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }));
    }

    #[test]
    fn text_round_trip() {
        let text = "pgroup p=3 n=3\nconj g2^g1 = g2 g3^2\n";
        let g = PcPresentation::parse(text).unwrap();
        assert_eq!(g.to_text(), text);
        assert_eq!(PcPresentation::parse(&g.to_text()).unwrap(), g);
    }
}
