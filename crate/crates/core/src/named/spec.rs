use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf::prime_power;

/// A parsed group constructor expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Sym(u32),
    Alt(u32),
    Sl(u32, u32),
    Gl(u32, u32),
    Psl(u32, u32),
    Pgl2(u32),
    Su3(u32),
    Psu3(u32),
    Sp4(u32),
    Psp4(u32),
    Sz(u32),
    AutSl2_8,
    ThreeA6,
    Prod(Vec<GroupSpec>),
    Fib(Box<GroupSpec>, Box<GroupSpec>),
    Cq(Box<GroupSpec>),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupSpec::*;
        match self {
            Sym(n) => write!(f, "sym:{n}"),
            Alt(n) => write!(f, "alt:{n}"),
            Sl(n, q) => write!(f, "sl:{n}:{q}"),
            Gl(n, q) => write!(f, "gl:{n}:{q}"),
            Psl(n, q) => write!(f, "psl:{n}:{q}"),
            Pgl2(q) => write!(f, "pgl:2:{q}"),
            Su3(q) => write!(f, "su:3:{q}"),
            Psu3(q) => write!(f, "psu:3:{q}"),
            Sp4(q) => write!(f, "sp:4:{q}"),
            Psp4(q) => write!(f, "psp:4:{q}"),
            Sz(q) => write!(f, "sz:{q}"),
            AutSl2_8 => write!(f, "aut-sl2-8"),
            ThreeA6 => write!(f, "3a6"),
            Prod(parts) => {
                write!(f, "prod(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            Fib(a, b) => write!(f, "fib({a},{b})"),
            Cq(a) => write!(f, "cq({a})"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<GroupSpec> {
        GroupSpec::parse(s)
    }
}

impl GroupSpec {
    /// Parses the spec grammar; whitespace is ignored.
    pub fn parse(input: &str) -> Result<GroupSpec> {
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason: &str| Error::Parse { input: input.to_string(), reason: reason.to_string() };
        let mut p = Parser { s: compact.as_bytes(), pos: 0 };
        let spec = p.spec().map_err(|r| err(&r))?;
        if p.pos != p.s.len() {
            return Err(err(&format!("trailing input at offset {}", p.pos)));
        }
        Ok(spec)
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn word(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.s.len() && !matches!(self.s[self.pos], b'(' | b')' | b',') {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.s[start..self.pos]).into_owned()
    }

    fn eat(&mut self, c: u8) -> std::result::Result<(), String> {
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(format!("expected '{}' at offset {}", c as char, self.pos))
        }
    }

    fn args(&mut self) -> std::result::Result<Vec<GroupSpec>, String> {
        self.eat(b'(')?;
        let mut out = vec![self.spec()?];
        while self.s.get(self.pos) == Some(&b',') {
            self.pos += 1;
            out.push(self.spec()?);
        }
        self.eat(b')')?;
        Ok(out)
    }

    fn spec(&mut self) -> std::result::Result<GroupSpec, String> {
        let w = self.word();
        match w.as_str() {
            "prod" => {
                let a = self.args()?;
                if !(2..=3).contains(&a.len()) {
                    return Err("prod takes two or three factors".into());
                }
                return Ok(GroupSpec::Prod(a));
            }
            "fib" => {
                let mut a = self.args()?;
                if a.len() != 2 {
                    return Err("fib takes two arguments".into());
                }
                let b = a.pop().unwrap();
                return Ok(GroupSpec::Fib(Box::new(a.pop().unwrap()), Box::new(b)));
            }
            "cq" => {
                let mut a = self.args()?;
                if a.len() != 1 {
                    return Err("cq takes one argument".into());
                }
                return Ok(GroupSpec::Cq(Box::new(a.pop().unwrap())));
            }
            "aut-sl2-8" => return Ok(GroupSpec::AutSl2_8),
            "3a6" => return Ok(GroupSpec::ThreeA6),
            _ => {}
        }
        let parts: Vec<&str> = w.split(':').collect();
        let num = |s: &str| s.parse::<u32>().map_err(|_| format!("{s:?} is not a number"));
        let field = |s: &str| {
            let q = num(s)?;
            prime_power(q).map(|_| q).ok_or_else(|| format!("{q} is not a prime power"))
        };
        use GroupSpec::*;
        let spec = match parts.as_slice() {
            ["sym", n] => Sym(num(n)?),
            ["alt", n] => Alt(num(n)?),
            ["sl", n, q] => Sl(num(n)?, field(q)?),
            ["gl", n, q] => Gl(num(n)?, field(q)?),
            ["psl", n, q] => Psl(num(n)?, field(q)?),
            ["pgl", "2", q] => Pgl2(field(q)?),
            ["su", "3", q] => Su3(field(q)?),
            ["psu", "3", q] => Psu3(field(q)?),
            ["sp", "4", q] => Sp4(field(q)?),
            ["psp", "4", q] => Psp4(field(q)?),
            ["sz", q] => Sz(field(q)?),
            _ => return Err(format!("unknown family {w:?}")),
        };
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in [
            "sym:5",
            "alt:7",
            "sl:3:4",
            "gl:2:9",
            "psl:2:13",
            "pgl:2:9",
            "su:3:3",
            "psu:3:3",
            "sp:4:3",
            "psp:4:3",
            "sz:8",
            "aut-sl2-8",
            "3a6",
            "prod(sym:3,sym:3,sym:3)",
            "fib(3a6,sl:2:9)",
            "cq(sl:2:5)",
            "prod(cq(sl:2:5),alt:5)",
        ] {
            let p = GroupSpec::parse(s).unwrap();
            assert_eq!(p.render(), s);
            assert_eq!(GroupSpec::parse(&p.render()).unwrap(), p);
        }
    }

    #[test]
    fn whitespace_tolerated() {
        let p = GroupSpec::parse(" fib( 3a6 , sl:2:9 ) ").unwrap();
        assert_eq!(p.render(), "fib(3a6,sl:2:9)");
    }

    #[test]
    fn rejects() {
        for s in ["", "sym", "sl:2:6", "foo:3", "prod(sym:3)", "cq(sym:3", "sym:3)", "pgl:3:4", "sym:x"] {
            assert!(GroupSpec::parse(s).is_err(), "{s}");
        }
    }
}
