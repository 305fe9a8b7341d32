//! ASCII Viro notation and the JSON interchange format.
//!
//! ```text
//! scheme := "0" | "J" | "J" sep items | items
//! items  := item (sep item)*
//! sep    := whitespace "u" whitespace
//! item   := COUNT SIGN | COUNT SIGN "<" items ">"
//! ```
//!
//! `COUNT n` with a body means `n` disjoint copies of the bracketed oval.

use crate::error::{Error, Result};
use crate::scheme::{canonicalize_forest, sibling_runs, ComplexScheme, OvalNode, Sign};

/// Refuse inputs that would expand into more ovals than this.
pub const MAX_EXPANDED_OVALS: usize = 1 << 22;
const MAX_NESTING: usize = 1024;

pub fn parse_viro(text: &str, degree: u32) -> Result<ComplexScheme> {
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut p = Parser { src: text.as_bytes(), pos: 0, expanded: 0 };
    p.skip_ws();
    let (pseudoline, ovals) = if p.eat(b'0') {
        (false, Vec::new())
    } else if p.eat(b'J') {
        if p.at_end_after_ws() {
            (true, Vec::new())
        } else {
            p.separator()?;
            (true, p.items(0)?)
        }
    } else {
        (false, p.items(0)?)
    };
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(ComplexScheme::new(degree, pseudoline, ovals))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    expanded: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax { position: self.pos, message: message.to_string() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) -> usize {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
        self.pos - start
    }

    fn at_end_after_ws(&mut self) -> bool {
        let save = self.pos;
        self.skip_ws();
        let end = self.pos == self.src.len();
        self.pos = save;
        end
    }

    fn separator(&mut self) -> Result<()> {
        if self.skip_ws() == 0 {
            return Err(self.error("expected whitespace before 'u'"));
        }
        if !self.eat(b'u') {
            return Err(self.error("expected separator 'u'"));
        }
        if self.skip_ws() == 0 {
            return Err(self.error("expected whitespace after 'u'"));
        }
        Ok(())
    }

    /// True when the upcoming input is a separator (without consuming it).
    fn separator_ahead(&self) -> bool {
        let mut i = self.pos;
        let ws_start = i;
        while i < self.src.len() && self.src[i].is_ascii_whitespace() {
            i += 1;
        }
        i > ws_start
            && self.src.get(i) == Some(&b'u')
            && self.src.get(i + 1).is_some_and(|b| b.is_ascii_whitespace())
    }

    fn items(&mut self, nesting: usize) -> Result<Vec<OvalNode>> {
        if nesting > MAX_NESTING {
            return Err(self.error("nesting too deep"));
        }
        let mut out = Vec::new();
        self.item(nesting, &mut out)?;
        while self.separator_ahead() {
            self.separator()?;
            self.item(nesting, &mut out)?;
        }
        Ok(out)
    }

    fn item(&mut self, nesting: usize, out: &mut Vec<OvalNode>) -> Result<()> {
        let count = self.count()?;
        let sign = match self.peek() {
            Some(b'+') => Sign::Positive,
            Some(b'-') => Sign::Negative,
            _ => return Err(self.error("expected sign '+' or '-'")),
        };
        self.pos += 1;
        let children = if self.eat(b'<') {
            self.skip_ws();
            let body = self.items(nesting + 1)?;
            self.skip_ws();
            if !self.eat(b'>') {
                return Err(self.error("expected '>'"));
            }
            body
        } else {
            Vec::new()
        };
        let node = OvalNode::new(sign, children);
        let size = node.size();
        self.expanded = count
            .checked_mul(size)
            .and_then(|n| n.checked_add(self.expanded))
            .filter(|&n| n <= MAX_EXPANDED_OVALS)
            .ok_or_else(|| self.error("scheme expands to too many ovals"))?;
        out.extend(std::iter::repeat_n(node, count));
        Ok(())
    }

    fn count(&mut self) -> Result<usize> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected oval count"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match digits.parse::<usize>() {
            Ok(0) => Err(Error::Syntax { position: start, message: "count must be positive".into() }),
            Ok(n) => Ok(n),
            Err(_) => Err(Error::Syntax { position: start, message: "count too large".into() }),
        }
    }
}

/// Canonical notation of a scheme.
pub fn print_viro(scheme: &ComplexScheme) -> String {
    let mut ovals = scheme.ovals.clone();
    canonicalize_forest(&mut ovals);
    let mut out = String::new();
    if scheme.pseudoline {
        out.push('J');
        if !ovals.is_empty() {
            out.push_str(" u ");
        }
    } else if ovals.is_empty() {
        return "0".to_string();
    }
    write_items(&ovals, &mut out);
    out
}

/// Notation of a bare forest, without the pseudoline token.
pub fn print_forest(forest: &[OvalNode]) -> String {
    if forest.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    write_items(forest, &mut out);
    out
}

fn write_items(forest: &[OvalNode], out: &mut String) {
    for (i, run) in sibling_runs(forest).into_iter().enumerate() {
        if i > 0 {
            out.push_str(" u ");
        }
        let node = &run[0];
        out.push_str(&run.len().to_string());
        out.push(node.sign.symbol());
        if !node.children.is_empty() {
            out.push('<');
            write_items(&node.children, out);
            out.push('>');
        }
    }
}

pub fn encode_json(scheme: &ComplexScheme) -> String {
    serde_json::to_string(scheme).expect("scheme serializes")
}

/// Decodes a JSON scheme; sibling order in the document does not matter.
pub fn decode_json(text: &str) -> Result<ComplexScheme> {
    let scheme: ComplexScheme = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    if scheme.degree == 0 {
        return Err(Error::ZeroDegree);
    }
    Ok(ComplexScheme::new(scheme.degree, scheme.pseudoline, scheme.ovals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::lambda_counts;

    const SCHEME_ONE: &str = "J u 9- u 1-<1+<1->>";

    #[test]
    fn parses_scheme_one() {
        let s = parse_viro(SCHEME_ONE, 9).unwrap();
        assert!(s.pseudoline);
        assert_eq!(s.ovals.len(), 10);
        assert_eq!(s.oval_count(), 12);
        assert!(s.ovals[..9].iter().all(|o| *o == OvalNode::leaf(Sign::Negative)));
        let nest = &s.ovals[9];
        assert_eq!(nest.sign, Sign::Negative);
        assert_eq!(nest.children[0].sign, Sign::Positive);
        assert_eq!(nest.children[0].children[0], OvalNode::leaf(Sign::Negative));
        assert_eq!(print_viro(&s), SCHEME_ONE);
    }

    #[test]
    fn parses_bare_pseudoline_and_empty() {
        let j = parse_viro("J", 3).unwrap();
        assert!(j.pseudoline && j.ovals.is_empty());
        assert_eq!(print_viro(&j), "J");
        let z = parse_viro("0", 2).unwrap();
        assert!(!z.pseudoline && z.ovals.is_empty());
        assert_eq!(print_viro(&z), "0");
    }

    #[test]
    fn counts_expand_bodies() {
        let s = parse_viro("2-<1+>", 8).unwrap();
        assert_eq!(s.oval_count(), 4);
        assert_eq!(s.ovals.len(), 2);
        assert_eq!(print_viro(&s), "2-<1+>");
    }

    #[test]
    fn prints_negative_first_and_merges_runs() {
        let s = parse_viro("J u 1+ u 1-", 5).unwrap();
        assert_eq!(print_viro(&s), "J u 1- u 1+");
        let s = parse_viro("J u 1- u 3- u 1-<1+> u 2-", 9).unwrap();
        assert_eq!(print_viro(&s), "J u 6- u 1-<1+>");
    }

    #[test]
    fn order_of_input_items_is_irrelevant() {
        let a = parse_viro("J u 1-<1+<1->> u 9-", 9).unwrap();
        let b = parse_viro(SCHEME_ONE, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(lambda_counts(&a), lambda_counts(&b));
    }

    #[test]
    fn whitespace_tolerance() {
        let s = parse_viro("  J  u\t1-< 1+  u 1- >  ", 5).unwrap();
        assert_eq!(print_viro(&s), "J u 1-<1- u 1+>");
    }

    #[test]
    fn syntax_errors_report_positions() {
        let cases: &[(&str, usize)] = &[
            ("", 0),
            ("J u", 3),
            ("J u 1", 5),
            ("J u 1x", 5),
            ("J u 0-", 4),
            ("J u 1-<1+", 9),
            ("J u1-", 3),
            ("1- 1+", 3),
            ("J J", 2),
            ("1-<>", 3),
        ];
        for &(text, pos) in cases {
            match parse_viro(text, 9) {
                Err(Error::Syntax { position, .. }) => assert_eq!(position, pos, "input {text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
        assert_eq!(parse_viro("J", 0), Err(Error::ZeroDegree));
    }

    #[test]
    fn refuses_huge_expansion() {
        assert!(matches!(parse_viro("99999999999-", 9), Err(Error::Syntax { .. })));
        assert!(matches!(parse_viro("4000-<4000->", 9), Err(Error::Syntax { .. })));
    }

    #[test]
    fn json_encoding() {
        let j = parse_viro("J", 3).unwrap();
        assert_eq!(encode_json(&j), r#"{"degree":3,"pseudoline":true,"ovals":[]}"#);

        let s = parse_viro(SCHEME_ONE, 9).unwrap();
        let v: serde_json::Value = serde_json::from_str(&encode_json(&s)).unwrap();
        let ovals = v["ovals"].as_array().unwrap();
        assert_eq!(ovals.len(), 10);
        assert_eq!(ovals[9]["children"][0]["children"][0]["sign"], "-");
        assert_eq!(decode_json(&encode_json(&s)).unwrap(), s);
    }

    #[test]
    fn json_rejects_bad_documents() {
        assert!(decode_json(r#"{"degree":3,"pseudoline":true,"ovals":[{"sign":"x","children":[]}]}"#).is_err());
        assert!(decode_json(r#"{"degree":3,"pseudoline":true,"ovals":[],"extra":1}"#).is_err());
        assert!(decode_json(r#"{"degree":3,"ovals":[]}"#).is_err());
        assert!(decode_json(r#"{"degree":0,"pseudoline":false,"ovals":[]}"#).is_err());
        assert!(decode_json("[").is_err());
    }

    #[test]
    fn json_decode_canonicalizes() {
        let doc = r#"{"degree":5,"pseudoline":true,"ovals":[{"sign":"+","children":[]},{"sign":"-","children":[]}]}"#;
        assert_eq!(print_viro(&decode_json(doc).unwrap()), "J u 1- u 1+");
    }
}
