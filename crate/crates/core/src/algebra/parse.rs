use std::fmt;

use super::SpaceTerm;

/// Malformed expression: byte offset of the offending token and what would
/// have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: expected {}", self.offset, self.expected.join(" or "))
    }
}

const ATOM_START: &[&str] = &["0", "fin(", "w", "2^w", "N^w", "Q", "("];

/// Parses `expr := term ('+' term)*`, `term := factor ('*' factor)*`,
/// `factor := atom | '(' expr ')'`. Chains of the same operator become one
/// n-ary node.
pub fn parse(text: &str) -> Result<SpaceTerm, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let term = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(&["'+'", "'*'", "end of input"]));
    }
    Ok(term)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        ParseError { offset: self.pos, expected: expected.to_vec() }
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<SpaceTerm, ParseError> {
        let mut terms = vec![self.term()?];
        while self.eat("+") {
            terms.push(self.term()?);
        }
        Ok(SpaceTerm::sum(terms))
    }

    fn term(&mut self) -> Result<SpaceTerm, ParseError> {
        let mut factors = vec![self.factor()?];
        while self.eat("*") {
            factors.push(self.factor()?);
        }
        Ok(SpaceTerm::prod(factors))
    }

    fn factor(&mut self) -> Result<SpaceTerm, ParseError> {
        if self.eat("(") {
            let inner = self.expr()?;
            if !self.eat(")") {
                return Err(self.error(&["')'", "'+'", "'*'"]));
            }
            return Ok(inner);
        }
        if self.eat("fin") {
            if !self.eat("(") {
                return Err(self.error(&["'('"]));
            }
            let n = self.int()?;
            if !self.eat(")") {
                return Err(self.error(&["')'"]));
            }
            return Ok(SpaceTerm::Fin(n));
        }
        if self.eat("2^w") {
            return Ok(SpaceTerm::Cantor);
        }
        if self.eat("N^w") {
            return Ok(SpaceTerm::BaireSp);
        }
        if self.eat("w") {
            return Ok(SpaceTerm::Omega);
        }
        if self.eat("Q") {
            return Ok(SpaceTerm::Rationals);
        }
        self.skip_ws();
        if self.src.get(self.pos) == Some(&b'0') {
            let next = self.src.get(self.pos + 1);
            if next.is_none_or(|c| !c.is_ascii_digit()) {
                self.pos += 1;
                return Ok(SpaceTerm::Empty);
            }
        }
        Err(self.error(ATOM_START))
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
        let value = digits.parse::<u64>().ok().filter(|&n| n >= 1 && n <= u64::from(u32::MAX));
        match value {
            Some(n) => Ok(n),
            None => {
                self.pos = start;
                Err(self.error(&["positive integer"]))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use SpaceTerm::*;

    #[test]
    fn precedence_and_grouping() {
        assert_eq!(
            parse("Q*2^w + N^w").unwrap(),
            Sum(vec![Prod(vec![Rationals, Cantor]), BaireSp])
        );
        assert_eq!(
            parse("Q*(2^w + N^w)").unwrap(),
            Prod(vec![Rationals, Sum(vec![Cantor, BaireSp])])
        );
        assert_eq!(parse("fin(3)").unwrap(), Fin(3));
        assert_eq!(parse("  fin ( 12 ) ").unwrap(), Fin(12));
        assert_eq!(parse("0 + w").unwrap(), Sum(vec![Empty, Omega]));
        assert_eq!(parse("(w)").unwrap(), Omega);
    }

    #[test]
    fn malformed_inputs_report_offsets() {
        let err = parse("Q**2^w").unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(err.expected.contains(&"Q"));
        assert_eq!(parse("Q**").unwrap_err().offset, 2);
        assert_eq!(parse("").unwrap_err().offset, 0);
        assert_eq!(parse("fin(0)").unwrap_err().offset, 4);
        assert_eq!(parse("(Q + w").unwrap_err().offset, 6);
        assert_eq!(parse("Q w").unwrap_err().offset, 2);
        assert!(parse("q").is_err());
        assert!(parse("00").is_err());
        assert!(parse("fin(99999999999)").is_err());
    }
}
