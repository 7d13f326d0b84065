//! Parser for the textual forms produced by `Display` on terms, atoms and
//! clauses, e.g. `f(v0) = n0, s(v0) ≤ v1 ⊢ A(m(2,x,v0))`.
//!
//! Bare names are read as follows: `n<digits>` is a numeral, `<base>_<digits>`
//! an indexed variable, anything else a plain variable.

use super::cursor::{Cursor, ParseError};
use crate::clause::{Atom, Clause, EQ, LE};
use crate::term::{Func, Term};

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    whole(text, term)
}

pub fn parse_atom(text: &str) -> Result<Atom, ParseError> {
    whole(text, atom)
}

pub fn parse_clause(text: &str) -> Result<Clause, ParseError> {
    whole(text, clause)
}

fn whole<T>(text: &str, item: impl Fn(&mut Cursor) -> Result<T, ParseError>) -> Result<T, ParseError> {
    let mut cur = Cursor::new(text);
    let out = item(&mut cur)?;
    cur.skip_ws();
    if !cur.at_end() {
        return Err(cur.error("trailing input"));
    }
    Ok(out)
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn name<'a>(cur: &mut Cursor<'a>) -> Result<&'a str, ParseError> {
    cur.skip_ws();
    let name = cur.take_while(is_name_char);
    if name.is_empty() {
        return Err(cur.error("expected a name"));
    }
    Ok(name)
}

fn is_function(name: &str) -> bool {
    Func::from_name(name).is_some() || name == "m"
}

pub(crate) fn term(cur: &mut Cursor) -> Result<Term, ParseError> {
    let start = {
        cur.skip_ws();
        cur.mark()
    };
    let head = name(cur)?;
    if cur.peek() == Some('(') {
        cur.bump();
        if head == "m" {
            let k = digits(cur)?;
            cur.expect(",")?;
            let family = name(cur)?;
            cur.expect(",")?;
            let body = term(cur)?;
            cur.expect(")")?;
            return Ok(Term::m_over(family, k, body));
        }
        let func =
            Func::from_name(head).ok_or_else(|| cur.error_at(start, format!("unknown function `{head}`")))?;
        let args = arguments(cur)?;
        return Term::app(func, args).map_err(|e| cur.error_at(start, e.to_string()));
    }
    Ok(bare(head))
}

/// Comma-separated terms up to and including the closing parenthesis.
fn arguments(cur: &mut Cursor) -> Result<Vec<Term>, ParseError> {
    let mut args = Vec::new();
    if cur.eat(")") {
        return Ok(args);
    }
    loop {
        args.push(term(cur)?);
        if cur.eat(")") {
            return Ok(args);
        }
        cur.expect(",")?;
    }
}

fn digits(cur: &mut Cursor) -> Result<u64, ParseError> {
    cur.skip_ws();
    let at = cur.mark();
    let text = cur.take_while(|c| c.is_ascii_digit());
    text.parse().map_err(|_| cur.error_at(at, "expected a number"))
}

fn all_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

fn bare(name: &str) -> Term {
    if let Some(value) = name.strip_prefix('n').filter(|d| all_digits(d)) {
        if let Ok(value) = value.parse() {
            return Term::num(value);
        }
    }
    if let Some((base, index)) = name.rsplit_once('_') {
        if !base.is_empty() && all_digits(index) {
            if let Ok(index) = index.parse() {
                return Term::indexed(base, index);
            }
        }
    }
    Term::var(name)
}

pub(crate) fn atom(cur: &mut Cursor) -> Result<Atom, ParseError> {
    cur.skip_ws();
    let start = cur.mark();
    let head = name(cur)?;
    if cur.peek() == Some('(') && !is_function(head) {
        cur.bump();
        let args = arguments(cur)?;
        return Atom::new(head, args).map_err(|e| cur.error_at(start, e.to_string()));
    }
    // an infix atom: re-read the head as the start of a term
    cur.seek(start);
    let lhs = term(cur)?;
    let pred = if cur.eat("≤") {
        LE
    } else if cur.eat("=") {
        EQ
    } else {
        return Err(cur.error("expected `≤` or `=`"));
    };
    let rhs = term(cur)?;
    Ok(Atom::new(pred, vec![lhs, rhs]).expect("binary predicate"))
}

fn atom_list(cur: &mut Cursor, stop: impl Fn(&Cursor) -> bool) -> Result<Vec<Atom>, ParseError> {
    let mut atoms = Vec::new();
    cur.skip_ws();
    if stop(cur) {
        return Ok(atoms);
    }
    loop {
        atoms.push(atom(cur)?);
        if !cur.eat(",") {
            return Ok(atoms);
        }
    }
}

fn clause(cur: &mut Cursor) -> Result<Clause, ParseError> {
    let antecedent = atom_list(cur, |c| c.rest().starts_with('⊢'))?;
    cur.expect("⊢")?;
    let succedent = atom_list(cur, |c| c.at_end())?;
    Ok(Clause::new(antecedent, succedent))
}
