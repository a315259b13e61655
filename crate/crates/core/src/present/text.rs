//! Line-based text format for presentations.
//!
//! ```text
//! presentation
//! piece
//! states 2
//! start 0
//! trans 0 >=0 1
//! trans 1 0..0 1
//! end
//! family
//! param k
//! interleave
//! ez
//! fixed
//! piece
//! ...
//! end
//! end
//! end
//! ```
//!
//! Family templates are written in preorder: `ez`, `fixed` followed by a
//! piece block, `prefix L1 L2 …` followed by its template, `interleave`
//! followed by two templates, `alt N` followed by `N` templates. Blank lines
//! and lines starting with `#` are ignored.

use std::fmt::Write;

use super::{FamilyTemplate, LabelSet, PieceGen, PresentationError, TreePresentation, Transition};

pub fn to_text(p: &TreePresentation) -> String {
    let mut out = String::from("presentation\n");
    for piece in &p.pieces {
        write_piece(&mut out, piece);
    }
    if let Some(f) = &p.family {
        out.push_str("family\nparam k\n");
        write_template(&mut out, f);
        out.push_str("end\n");
    }
    out.push_str("end\n");
    out
}

fn write_piece(out: &mut String, p: &PieceGen) {
    writeln!(out, "piece\nstates {}\nstart {}", p.states.len(), p.start).unwrap();
    for (s, ts) in p.states.iter().enumerate() {
        for t in ts {
            writeln!(out, "trans {s} {} {}", t.labels, t.target).unwrap();
        }
    }
    out.push_str("end\n");
}

fn write_template(out: &mut String, t: &FamilyTemplate) {
    match t {
        FamilyTemplate::EventuallyZero => out.push_str("ez\n"),
        FamilyTemplate::Fixed(p) => {
            out.push_str("fixed\n");
            write_piece(out, p);
        }
        FamilyTemplate::Prefix(tag, inner) => {
            out.push_str("prefix");
            for a in tag {
                write!(out, " {a}").unwrap();
            }
            out.push('\n');
            write_template(out, inner);
        }
        FamilyTemplate::Interleave(a, b) => {
            out.push_str("interleave\n");
            write_template(out, a);
            write_template(out, b);
        }
        FamilyTemplate::Alternate(ts) => {
            writeln!(out, "alt {}", ts.len()).unwrap();
            ts.iter().for_each(|t| write_template(out, t));
        }
    }
}

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, PresentationError> {
        let line = self.lines.get(self.pos.saturating_sub(1)).map_or(0, |l| l.0);
        Err(PresentationError::Syntax { line, message: message.into() })
    }

    fn next(&mut self) -> Result<Vec<&'a str>, PresentationError> {
        match self.lines.get(self.pos) {
            Some(&(_, l)) => {
                self.pos += 1;
                Ok(l.split_whitespace().collect())
            }
            None => {
                self.pos += 1;
                self.err("unexpected end of input")
            }
        }
    }

    fn expect(&mut self, word: &str) -> Result<(), PresentationError> {
        let toks = self.next()?;
        if toks != [word] {
            return self.err(format!("expected `{word}`"));
        }
        Ok(())
    }

    fn keyed(&mut self, key: &str) -> Result<usize, PresentationError> {
        let toks = self.next()?;
        match toks.as_slice() {
            [k, v] if *k == key => v.parse().or_else(|_| self.err(format!("bad number `{v}`"))),
            _ => self.err(format!("expected `{key} N`")),
        }
    }

    fn num<T: std::str::FromStr>(&self, s: &str) -> Result<T, PresentationError> {
        s.parse().or_else(|_| self.err(format!("bad number `{s}`")))
    }

    fn labels(&self, s: &str) -> Result<LabelSet, PresentationError> {
        if let Some(k) = s.strip_prefix(">=") {
            return Ok(LabelSet::AtLeast(self.num(k)?));
        }
        match s.split_once("..") {
            Some((lo, hi)) => Ok(LabelSet::Range { lo: self.num(lo)?, hi: self.num(hi)? }),
            None => self.err(format!("bad label set `{s}`")),
        }
    }

    /// Body of a piece block, after its `piece` line.
    fn piece(&mut self) -> Result<PieceGen, PresentationError> {
        let n = self.keyed("states")?;
        let start = self.keyed("start")?;
        let mut states = vec![Vec::new(); n];
        loop {
            let toks = self.next()?;
            match toks.as_slice() {
                ["end"] => break,
                ["trans", from, labels, to] => {
                    let from: usize = self.num(from)?;
                    let t = Transition { labels: self.labels(labels)?, target: self.num(to)? };
                    match states.get_mut(from) {
                        Some(ts) => ts.push(t),
                        None => return self.err(format!("state {from} out of range")),
                    }
                }
                _ => return self.err("expected `trans FROM LABELS TO` or `end`"),
            }
        }
        Ok(PieceGen { start, states })
    }

    fn template(&mut self) -> Result<FamilyTemplate, PresentationError> {
        let toks = self.next()?;
        match toks.as_slice() {
            ["ez"] => Ok(FamilyTemplate::EventuallyZero),
            ["fixed"] => {
                self.expect("piece")?;
                Ok(FamilyTemplate::Fixed(self.piece()?))
            }
            ["prefix", tag @ ..] => {
                let tag = tag.iter().map(|a| self.num(a)).collect::<Result<Vec<u64>, _>>()?;
                Ok(FamilyTemplate::Prefix(tag, Box::new(self.template()?)))
            }
            ["interleave"] => {
                let a = self.template()?;
                let b = self.template()?;
                Ok(FamilyTemplate::Interleave(Box::new(a), Box::new(b)))
            }
            ["alt", n] => {
                let n: usize = self.num(n)?;
                if n == 0 {
                    return self.err("`alt` needs at least one template");
                }
                Ok(FamilyTemplate::Alternate((0..n).map(|_| self.template()).collect::<Result<_, _>>()?))
            }
            _ => self.err("expected a family template"),
        }
    }
}

pub fn from_text(text: &str) -> Result<TreePresentation, PresentationError> {
    let lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let mut r = Lines { lines, pos: 0 };
    r.expect("presentation")?;
    let mut p = TreePresentation::empty();
    loop {
        let toks = r.next()?;
        match toks.as_slice() {
            ["piece"] => p.pieces.push(r.piece()?),
            ["family"] => {
                if p.family.is_some() {
                    return r.err("at most one family");
                }
                let toks = r.next()?;
                if toks != ["param", "k"] {
                    return r.err("expected `param k`");
                }
                p.family = Some(r.template()?);
                r.expect("end")?;
            }
            ["end"] => break,
            _ => return r.err("expected `piece`, `family` or `end`"),
        }
    }
    if r.pos < r.lines.len() {
        r.pos += 1;
        return r.err("trailing input");
    }
    p.validate()?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::present::present;
    use crate::{normalize, parse};

    #[test]
    fn golden_omega() {
        let p = present(&normalize(&parse("w").unwrap()));
        assert_eq!(
            to_text(&p),
            "presentation\npiece\nstates 2\nstart 0\ntrans 0 >=0 1\ntrans 1 0..0 1\nend\nend\n"
        );
    }

    #[test]
    fn golden_q_plus_cantor() {
        let p = present(&normalize(&parse("Q + 2^w").unwrap()));
        let expected = "\
presentation
piece
states 2
start 0
trans 0 0..0 1
trans 1 0..1 1
end
family
param k
prefix 1
ez
end
end
";
        assert_eq!(to_text(&p), expected);
    }

    #[test]
    fn round_trips() {
        for s in ["0", "Q*2^w + N^w", "Q*Q + w*fin(3)", "Q + Q*N^w + 2^w"] {
            let p = present(&normalize(&parse(s).unwrap()));
            assert_eq!(from_text(&to_text(&p)).unwrap(), p);
        }
    }

    #[test]
    fn errors_carry_lines() {
        let bad = "presentation\npiece\nstates 1\nstart 0\ntrans 0 2..1 0\nend\nend\n";
        assert!(matches!(from_text(bad), Err(PresentationError::InvalidPiece(_))));
        let bad = "presentation\npiece\nstates 1\nstart 0\ntrans 0 x 0\n";
        assert_eq!(
            from_text(bad),
            Err(PresentationError::Syntax { line: 5, message: "bad label set `x`".into() })
        );
    }
}
