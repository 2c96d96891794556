//! Certificate files and the text encoding of group elements.
//!
//! ```text
//! pcg-certificate 1
//! group sym:5
//! kind odd-hole
//! length 5
//! vertices perm:5,2,3,4,1;perm:1,3,2,4,5;...
//! ```
//!
//! Element encodings: `perm:` followed by 1-based images, `mat:q:n:` followed
//! by row-major field codes, `semi:j:mat:...`, `pair(<enc>|<enc>)` and
//! `coset:<enc>` with the canonical representative.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::grp::{Element, Matrix, Perm};
use crate::wit::{ElementTuple, Pattern};

pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub version: u32,
    pub group: String,
    pub pattern: Pattern,
    pub elements: Vec<String>,
}

fn join<T: ToString>(xs: impl Iterator<Item = T>) -> String {
    xs.map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn encode_element(e: &Element) -> String {
    match e {
        Element::Perm(p) => format!("perm:{}", join(p.images1().into_iter())),
        Element::Mat(m) => format!("mat:{}:{}:{}", m.field().order(), m.n(), join(m.entries().iter())),
        Element::Semilinear(m, j) => format!("semi:{j}:{}", encode_element(&Element::Mat(m.clone()))),
        Element::Pair(a, b) => format!("pair({}|{})", encode_element(a), encode_element(b)),
        Element::Coset(rep, _) => format!("coset:{}", encode_element(rep)),
    }
}

fn bad(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse { input: input.to_string(), reason: reason.into() }
}

fn numbers<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',').map(|x| x.parse().map_err(|_| bad(s, format!("bad number {x:?}")))).collect()
}

/// Decodes an element. Cosets take their quotient from the matching part
/// of `template`, any element of the group the text belongs to.
pub fn decode_element(s: &str, template: Option<&Element>) -> Result<Element> {
    if let Some(rest) = s.strip_prefix("perm:") {
        return Ok(Element::Perm(Perm::from_images1(&numbers::<u16>(rest)?)?));
    }
    if let Some(rest) = s.strip_prefix("mat:") {
        let mut it = rest.splitn(3, ':');
        let (q, n, e) = (it.next(), it.next(), it.next());
        let (Some(q), Some(n), Some(e)) = (q, n, e) else { return Err(bad(s, "expected mat:q:n:entries")) };
        let q: u32 = q.parse().map_err(|_| bad(s, "bad field order"))?;
        let n: usize = n.parse().map_err(|_| bad(s, "bad dimension"))?;
        let f = Arc::new(FieldSpec::of_order(q)?);
        return Ok(Element::Mat(Matrix::new(&f, n, numbers(e)?)?));
    }
    if let Some(rest) = s.strip_prefix("semi:") {
        let (j, m) = rest.split_once(':').ok_or_else(|| bad(s, "expected semi:j:mat:..."))?;
        let j: u32 = j.parse().map_err(|_| bad(s, "bad frobenius power"))?;
        let Element::Mat(m) = decode_element(m, None)? else { return Err(bad(s, "semi needs a matrix")) };
        if j >= m.field().k() {
            return Err(bad(s, "frobenius power out of range"));
        }
        return Ok(Element::Semilinear(m, j));
    }
    if let Some(rest) = s.strip_prefix("pair(").and_then(|r| r.strip_suffix(')')) {
        let mut depth = 0;
        let mut split = None;
        for (i, c) in rest.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                '|' if depth == 0 => {
                    split = Some(i);
                    break;
                }
                _ => {}
            }
        }
        let i = split.ok_or_else(|| bad(s, "pair without '|'"))?;
        let (ta, tb) = match template {
            Some(Element::Pair(a, b)) => (Some(&**a), Some(&**b)),
            _ => (None, None),
        };
        return Ok(Element::pair(decode_element(&rest[..i], ta)?, decode_element(&rest[i + 1..], tb)?));
    }
    if let Some(rest) = s.strip_prefix("coset:") {
        let Some(Element::Coset(trep, ctx)) = template else {
            return Err(bad(s, "coset outside a quotient group"));
        };
        let rep = decode_element(rest, Some(trep))?;
        let e = Element::coset(&rep, ctx);
        if let Element::Coset(r, _) = &e {
            if **r != rep {
                return Err(bad(s, "coset representative is not canonical"));
            }
        }
        return Ok(e);
    }
    Err(bad(s, "unknown element encoding"))
}

impl Certificate {
    pub fn from_tuple(t: &ElementTuple) -> Certificate {
        Certificate {
            version: VERSION,
            group: t.group.clone(),
            pattern: t.pattern,
            elements: t.elements.iter().map(encode_element).collect(),
        }
    }

    pub fn render(&self) -> String {
        format!(
            "pcg-certificate {}\ngroup {}\nkind {}\nlength {}\nvertices {}\n",
            self.version,
            self.group,
            self.pattern.kind(),
            self.elements.len(),
            self.elements.join(";")
        )
    }

    pub fn parse(text: &str) -> Result<Certificate> {
        let lines: Vec<&str> = text.lines().collect();
        let field = |i: usize, key: &str| -> Result<&str> {
            lines
                .get(i)
                .and_then(|l| l.strip_prefix(key))
                .and_then(|l| l.strip_prefix(' '))
                .ok_or_else(|| Error::Format(format!("line {}: expected `{key} ...`", i + 1)))
        };
        let version: u32 = field(0, "pcg-certificate")?.parse().map_err(|_| Error::Format("bad version".into()))?;
        if version != VERSION {
            return Err(Error::Format(format!("unsupported certificate version {version}")));
        }
        let group = field(1, "group")?.to_string();
        let kind = field(2, "kind")?;
        let len: usize = field(3, "length")?.parse().map_err(|_| Error::Format("bad length".into()))?;
        let elements: Vec<String> = field(4, "vertices")?.split(';').map(str::to_string).collect();
        if elements.len() != len {
            return Err(Error::Format(format!("length {len} but {} vertices", elements.len())));
        }
        if lines.len() > 5 {
            return Err(Error::Format("trailing lines".into()));
        }
        Ok(Certificate { version, group, pattern: Pattern::from_kind(kind, len)?, elements })
    }

    /// Decodes the elements against a freshly built group and verifies the pattern.
    pub fn verify(&self) -> Result<()> {
        let g = crate::named::build_str(&self.group)?;
        let template = g.element(0);
        let elements = self.elements.iter().map(|e| decode_element(e, Some(template))).collect::<Result<_>>()?;
        ElementTuple { group: self.group.clone(), elements, pattern: self.pattern }.verify_in(&g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::build_str;

    #[test]
    fn element_round_trips() {
        for spec in ["sym:4", "sl:2:4", "aut-sl2-8", "prod(sym:3,alt:4)", "psl:2:5", "prod(psl:2:5,sym:3)"] {
            let g = build_str(spec).unwrap();
            for e in g.elements().iter().take(50) {
                let s = encode_element(e);
                assert_eq!(&decode_element(&s, Some(g.element(0))).unwrap(), e, "{s}");
            }
        }
    }

    #[test]
    fn rejects() {
        assert!(decode_element("perm:1,1", None).is_err());
        assert!(decode_element("mat:6:1:1", None).is_err());
        assert!(decode_element("coset:perm:1", None).is_err());
        assert!(decode_element("blob", None).is_err());
        assert!(Certificate::parse("pcg-certificate 2\n").is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let t = crate::wit::witness_sym5();
        let c = Certificate::from_tuple(&t);
        let text = c.render();
        assert!(text.starts_with("pcg-certificate 1\ngroup sym:5\nkind odd-hole\nlength 5\nvertices perm:5,2,3,4,1;"));
        let back = Certificate::parse(&text).unwrap();
        assert_eq!(back, c);
        back.verify().unwrap();
    }
}
