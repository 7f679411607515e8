//! The term language for elements of `S_R`:
//!
//! ```text
//! expr    := summand ('+' summand)*
//! summand := rational '*' summand | atom
//! atom    := 'hat(' element ')' | 'sup[' expr (',' expr)* ']' | '(' expr ')'
//! ```
//!
//! Rationals are `n` or `n/d`; elements use the CLI syntax (`3`, `inf`, `[1,inf]`).
//! `sup[...]` requires its arguments to form an increasing chain, in the given order.

use crate::error::{Error, Result};
use crate::ext::{parse_rational, Rational};
use crate::model::Element;
use crate::real::{add, scale, sup_increasing, RealContext, RealElement, Term};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Term(format!("{msg} at offset {} in {:?}", self.pos, self.src)))
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(&format!("expected {tok:?}"))
        }
    }

    fn expr(&mut self) -> Result<Term> {
        let mut t = self.summand()?;
        while self.eat("+") {
            t = Term::Add(Box::new(t), Box::new(self.summand()?));
        }
        Ok(t)
    }

    fn summand(&mut self) -> Result<Term> {
        self.skip_ws();
        if self.rest().starts_with(|c: char| c.is_ascii_digit()) {
            let len =
                self.rest().find(|c: char| !(c.is_ascii_digit() || c == '/' || c == ' ')).unwrap_or(self.rest().len());
            let q = parse_rational(&self.rest()[..len]).map_or_else(|| self.err("bad rational"), Ok)?;
            self.pos += len;
            self.expect("*")?;
            return Ok(Term::Scale(q, Box::new(self.summand()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Term> {
        if self.eat("hat(") {
            let close = self.rest().find(')').map_or_else(|| self.err("unclosed hat("), Ok)?;
            let e = Element::parse(&self.rest()[..close]).map_err(|e| Error::Term(e.to_string()))?;
            self.pos += close + 1;
            Ok(Term::Hat(e))
        } else if self.eat("sup[") {
            let mut items = vec![self.expr()?];
            while self.eat(",") {
                items.push(self.expr()?);
            }
            self.expect("]")?;
            Ok(Term::Sup(items))
        } else if self.eat("(") {
            let t = self.expr()?;
            self.expect(")")?;
            Ok(t)
        } else {
            self.err("expected hat(..), sup[..], a rational or '('")
        }
    }
}

pub fn parse(src: &str) -> Result<Term> {
    let mut p = Parser { src, pos: 0 };
    let t = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return p.err("trailing input");
    }
    Ok(t)
}

pub fn evaluate(ctx: &RealContext, t: &Term) -> Result<RealElement> {
    Ok(match t {
        Term::Hat(e) => ctx.embed(&ctx.model.coerce(e.clone())?)?,
        Term::Scale(q, inner) => {
            if *q < Rational::from_integer(0) {
                return Err(Error::Term("negative scalar".into()));
            }
            scale(q, &evaluate(ctx, inner)?)
        }
        Term::Add(a, b) => add(&evaluate(ctx, a)?, &evaluate(ctx, b)?),
        Term::Sup(items) => sup_increasing(&items.iter().map(|i| evaluate(ctx, i)).collect::<Result<Vec<_>>>()?)?,
        Term::Difference(..) | Term::Meet(..) => return Err(Error::Term(format!("{t} is not in the term language"))),
    })
}

pub fn eval_str(ctx: &RealContext, src: &str) -> Result<RealElement> {
    evaluate(ctx, &parse(src)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::rat;
    use crate::model::CuModel;

    #[test]
    fn parses_and_round_trips() {
        let t = parse("3/4*hat(2) + sup[hat(1), 2*hat(1)]").unwrap();
        assert_eq!(
            t,
            Term::Add(
                Box::new(Term::Scale(rat(3, 4), Box::new(Term::Hat(Element::Index(2))))),
                Box::new(Term::Sup(vec![
                    Term::Hat(Element::Index(1)),
                    Term::Scale(rat(2, 1), Box::new(Term::Hat(Element::Index(1))))
                ]))
            )
        );
        assert_eq!(parse(&t.to_string()).unwrap(), t);
        assert_eq!(parse("(hat([1,inf]))").unwrap(), Term::Hat(Element::Vector(vec![1.into(), crate::ext::INF])));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "hat(1", "3*", "hat(1)+", "sup[hat(1)", "foo", "hat(1) hat(2)", "1/0*hat(1)"] {
            assert!(matches!(parse(bad), Err(Error::Term(_))), "{bad}");
        }
    }

    #[test]
    fn evaluates() {
        let ctx = RealContext::new(CuModel::nbar_power(1), false).unwrap();
        assert_eq!(eval_str(&ctx, "1/2*hat(2)").unwrap(), ctx.embed(&Element::vector(&[1])).unwrap());
        assert_eq!(eval_str(&ctx, "hat(1)+hat(1)").unwrap(), ctx.embed(&Element::vector(&[2])).unwrap());
        assert_eq!(eval_str(&ctx, "sup[hat(1),hat(3)]").unwrap(), ctx.embed(&Element::vector(&[3])).unwrap());
        assert!(matches!(eval_str(&ctx, "sup[hat(3),hat(1)]"), Err(Error::NotIncreasing(1))));
        assert!(eval_str(&ctx, "hat([1,1])").is_err());
    }
}
