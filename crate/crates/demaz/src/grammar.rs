//! Text syntax for permutations.
//!
//! ```text
//! sym(<off>; v1 ... vd)          permutation of off..off+d, identity elsewhere
//! aff(<k>; v0 ... v{k-1})        alpha(n + k) = alpha(n) + k
//! shift(<chi>)                   n -> n - chi
//! sigma(n1, n2, ...)             product of the transpositions (n, n+1)
//! sigma_mod(<n>, <k>)            the same over n + kZ
//! gamma(<m>, <n>)                two-block permutation
//! ep(k=<k>, lo=<lo>; v_lo ... v_hi)
//! ```

use std::fmt;

use demaz_core::{Error, GeneratorSet, Permutation, RawPerm};

/// A syntax error with the byte offset where it was detected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

/// A parsed expression, before any bijectivity checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Sym { off: i64, vals: Vec<i64> },
    Aff { vals: Vec<i64> },
    Shift(i64),
    Sigma(Vec<i64>),
    SigmaMod { n: i64, k: i64 },
    Gamma { m: i64, n: i64 },
    Ep(RawPerm),
}

impl Expr {
    pub fn build(&self) -> Result<Permutation, Error> {
        match self {
            Expr::Sym { off, vals } => Permutation::from_one_line(vals, *off),
            Expr::Aff { vals } => Permutation::affine(vals),
            Expr::Shift(chi) => Ok(Permutation::shift(*chi)),
            Expr::Sigma(ns) => Ok(Permutation::sigma(&GeneratorSet::finite(ns.iter().copied())?)),
            Expr::SigmaMod { n, k } => Ok(Permutation::sigma(&GeneratorSet::residue(*n, *k)?)),
            Expr::Gamma { m, n } => Permutation::gamma(*m, *n),
            Expr::Ep(raw) => Permutation::from_raw(raw.clone()),
        }
    }
}

/// Either stage of turning text into a permutation.
#[derive(Debug)]
pub enum ExprError {
    Parse(ParseError),
    Domain(Error),
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprError::Parse(e) => write!(f, "parse error {e}"),
            ExprError::Domain(e) => write!(f, "{e}"),
        }
    }
}

pub fn parse_perm(text: &str) -> Result<Permutation, ExprError> {
    parse(text).map_err(ExprError::Parse)?.build().map_err(ExprError::Domain)
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(got) => self.err(format!("expected '{c}', found '{got}'")),
            None => self.err(format!("expected '{c}', found end of input")),
        }
    }

    fn ident(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
        if len == 0 {
            return self.err("expected a name");
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let sign = usize::from(rest.starts_with(['+', '-']));
        let digits = rest[sign..].find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len() - sign);
        if digits == 0 {
            return self.err("expected an integer");
        }
        match rest[..sign + digits].parse() {
            Ok(v) => {
                self.pos += sign + digits;
                Ok(v)
            }
            Err(_) => self.err("integer out of range"),
        }
    }

    /// Whitespace-separated integers up to the closing parenthesis.
    fn ints_until_close(&mut self) -> Result<Vec<i64>, ParseError> {
        let mut out = Vec::new();
        while self.peek() != Some(')') {
            out.push(self.int()?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn keyword(&mut self, name: &str) -> Result<(), ParseError> {
        self.skip_ws();
        let at = self.pos;
        if self.ident()? != name {
            self.pos = at;
            return self.err(format!("expected '{name}'"));
        }
        self.expect('=')
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut c = Cursor { text, pos: 0 };
    let head_pos = {
        c.skip_ws();
        c.pos
    };
    let head = c.ident()?;
    c.expect('(')?;
    let expr = match head {
        "sym" => {
            let off = c.int()?;
            c.expect(';')?;
            let vals = c.ints_until_close()?;
            if vals.is_empty() {
                return c.err("sym needs at least one value");
            }
            Expr::Sym { off, vals }
        }
        "aff" => {
            let k = c.int()?;
            c.expect(';')?;
            let body = c.pos;
            let vals = c.ints_until_close()?;
            if k < 1 || vals.len() as i64 != k {
                c.pos = body;
                return c.err(format!("aff expects exactly k = {k} values, got {}", vals.len()));
            }
            Expr::Aff { vals }
        }
        "shift" => {
            let chi = c.int()?;
            c.expect(')')?;
            Expr::Shift(chi)
        }
        "sigma" => {
            let mut ns = Vec::new();
            if c.peek() != Some(')') {
                ns.push(c.int()?);
                while c.peek() == Some(',') {
                    c.expect(',')?;
                    ns.push(c.int()?);
                }
            }
            c.expect(')')?;
            Expr::Sigma(ns)
        }
        "sigma_mod" | "gamma" => {
            let x = c.int()?;
            c.expect(',')?;
            let y = c.int()?;
            c.expect(')')?;
            if head == "gamma" {
                Expr::Gamma { m: x, n: y }
            } else {
                Expr::SigmaMod { n: x, k: y }
            }
        }
        "ep" => {
            c.keyword("k")?;
            let k = c.int()?;
            c.expect(',')?;
            c.keyword("lo")?;
            let lo = c.int()?;
            c.expect(';')?;
            let vals = c.ints_until_close()?;
            Expr::Ep(RawPerm::new(k, lo, vals))
        }
        _ => {
            c.pos = head_pos;
            return c.err(format!("unknown constructor '{head}'"));
        }
    };
    if c.peek().is_some() {
        return c.err("trailing input");
    }
    Ok(expr)
}

/// The canonical `ep(...)` form.
pub fn format_ep(p: &Permutation) -> String {
    format!("{p:?}")
}

/// A shorter equivalent expression when one of the named families matches.
pub fn alias(p: &Permutation) -> Option<String> {
    let chi = p.chi();
    if *p == Permutation::shift(chi) {
        return Some(format!("shift({chi})"));
    }
    if p.period() == 1 && chi == 0 {
        let moved: Vec<i64> = (p.lo()..=p.hi()).filter(|&n| p.apply(n) != n).collect();
        let (first, last) = (*moved.first()?, *moved.last()?);
        let vals: Vec<String> = (first..=last).map(|n| p.apply(n).to_string()).collect();
        return Some(format!("sym({first}; {})", vals.join(" ")));
    }
    if p.period() == 1 {
        let m = (0..=p.hi() - p.lo() + 1).find(|&m| Permutation::gamma(m, chi + m + 1).is_ok_and(|g| g == *p))?;
        return Some(format!("gamma({m},{})", chi + m + 1));
    }
    let k = p.period();
    let vals: Vec<String> = (0..k).map(|n| p.apply(n).to_string()).collect();
    let affine = (p.lo()..=p.hi()).all(|n| p.apply(n + k) == p.apply(n) + k);
    affine.then(|| format!("aff({k}; {})", vals.join(" ")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(text: &str) -> Permutation {
        parse_perm(text).unwrap()
    }

    #[test]
    fn constructors() {
        assert_eq!(perm("sym(1; 2 1)"), perm("sigma(1)"));
        assert_eq!(perm(" shift( -2 ) "), Permutation::shift(-2));
        assert_eq!(perm("aff(2; 1 0)"), perm("sigma_mod(0,2)"));
        assert_eq!(perm("sigma()"), Permutation::identity());
        assert_eq!(perm("sigma(1, 3)").apply(4), 3);
        assert_eq!(perm("gamma(3,5)").chi(), 1);
        assert_eq!(perm("ep(k=1, lo=0; 0)"), Permutation::identity());
        assert_eq!(perm("ep(k=2,lo=0;1 0)"), perm("aff(2; 1 0)"));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("sym(1; 2 x)").unwrap_err();
        assert_eq!(e.pos, 9);
        let e = parse("aff(3; 0 1)").unwrap_err();
        assert_eq!(e.pos, 6);
        assert_eq!(parse("  perm(1)").unwrap_err().pos, 2);
        assert_eq!(parse("shift(1) x").unwrap_err().pos, 9);
        assert_eq!(parse("ep(k=1, hi=0; 0)").unwrap_err().pos, 8);
        assert_eq!(parse("shift(99999999999999999999)").unwrap_err().msg, "integer out of range");
        assert!(matches!(parse_perm("sigma(1,2)"), Err(ExprError::Domain(_))));
        assert!(matches!(parse_perm("sym(1; 1 1)"), Err(ExprError::Domain(_))));
        assert!(matches!(parse_perm("ep(k=1, lo=0; 0 0)"), Err(ExprError::Domain(_))));
    }

    #[test]
    fn aliases() {
        assert_eq!(alias(&perm("shift(3)")).unwrap(), "shift(3)");
        assert_eq!(alias(&perm("sigma(1)")).unwrap(), "sym(1; 2 1)");
        assert_eq!(alias(&perm("gamma(3,5)")).unwrap(), "gamma(3,5)");
        assert_eq!(alias(&perm("sigma_mod(0,2)")).unwrap(), "aff(2; 1 0)");
        for text in ["sym(-2; 0 -2 -1)", "gamma(0,4)", "aff(3; 2 -2 6)", "shift(0)"] {
            let p = perm(text);
            assert_eq!(perm(&alias(&p).unwrap()), p);
            assert_eq!(perm(&format_ep(&p)), p);
        }
    }
}
