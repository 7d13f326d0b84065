//! TPTP CNF output and input.
//!
//! Each clause becomes `cnf(name, axiom, ( lits )).`, antecedent atoms
//! negated first, then the succedent atoms. M-terms are unfolded, numerals
//! are constants `n0, n1, …` and variables are renamed per clause to
//! `X, Y, Z, U, V, W, X6, X7, …` in order of first occurrence. Importing
//! reads every variable back as a plain variable, so the round trip is the
//! identity on canonical clause sets without indexed variables.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::cursor::{Cursor, ParseError};
use crate::clause::{Atom, Clause, ClauseSet};
use crate::term::{Func, Numeral, Term, Variable};

const VARIABLE_NAMES: [&str; 6] = ["X", "Y", "Z", "U", "V", "W"];
const PARAMETER_TAG: &str = "% parameter:";

/// Renders `cs` as a TPTP CNF problem. The output depends only on the
/// clauses, so it is byte-stable across runs.
pub fn export_tptp(cs: &ClauseSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "% {} clauses", cs.len());
    if let Some(n) = cs.parameter {
        let _ = writeln!(out, "{PARAMETER_TAG} {}", n.0);
    }
    for (k, c) in cs.iter().enumerate() {
        let name = c.id.as_deref().map(str::to_lowercase).unwrap_or_else(|| format!("clause_{}", k + 1));
        let _ = writeln!(out, "cnf({name}, axiom, ( {} )).", literals(c));
    }
    out
}

fn literals(c: &Clause) -> String {
    let c = c.unfold_all().canonicalize();
    if c.is_empty() {
        return "$false".to_string();
    }
    let mut names = BTreeMap::new();
    let mut lits = Vec::with_capacity(c.antecedent.len() + c.succedent.len());
    for (negated, atoms) in [(true, &c.antecedent), (false, &c.succedent)] {
        for a in atoms {
            let mut lit = String::new();
            if negated {
                lit.push('~');
            }
            atom(a, &mut names, &mut lit);
            lits.push(lit);
        }
    }
    lits.join(" | ")
}

fn atom(a: &Atom, names: &mut BTreeMap<Variable, String>, out: &mut String) {
    functor(&a.pred, out);
    if a.args.is_empty() {
        return;
    }
    out.push('(');
    for (i, t) in a.args.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        term(t, names, out);
    }
    out.push(')');
}

/// Names that are not TPTP lower words are single-quoted.
fn functor(name: &str, out: &mut String) {
    let mut chars = name.chars();
    let plain = chars.next().is_some_and(|c| c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if plain {
        out.push_str(name);
        return;
    }
    out.push('\'');
    for c in name.chars() {
        if c == '\'' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('\'');
}

fn term(t: &Term, names: &mut BTreeMap<Variable, String>, out: &mut String) {
    match t {
        Term::Var(_) | Term::Indexed { .. } => {
            let var = t.as_variable().expect("variable term");
            let next = names.len();
            let name = names.entry(var).or_insert_with(|| variable_name(next));
            out.push_str(name);
        }
        Term::Num(n) => {
            let _ = write!(out, "n{}", n.0);
        }
        Term::App(func, args) => {
            out.push_str(func.name());
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                term(a, names, out);
            }
            out.push(')');
        }
        Term::M { .. } => term(&t.unfold_all(), names, out),
    }
}

fn variable_name(k: usize) -> String {
    VARIABLE_NAMES.get(k).map_or_else(|| format!("X{k}"), |s| s.to_string())
}

/// Parses a TPTP CNF problem. Clause names become ids; a leading
/// `% parameter: K` comment restores the clause-set parameter.
pub fn import_tptp(text: &str) -> Result<ClauseSet, ParseError> {
    let mut cur = Cursor::new(text);
    let mut set = ClauseSet::new(None);
    loop {
        if let Some(n) = skip_layout(&mut cur)? {
            set.parameter = Some(n);
        }
        if cur.at_end() {
            return Ok(set);
        }
        set.insert(annotated(&mut cur)?);
    }
}

/// Skips whitespace and `%` comments; returns a parameter tag if one was seen.
fn skip_layout(cur: &mut Cursor) -> Result<Option<Numeral>, ParseError> {
    let mut parameter = None;
    loop {
        cur.skip_ws();
        if cur.peek() != Some('%') {
            return Ok(parameter);
        }
        let at = cur.mark();
        let line = cur.take_while(|c| c != '\n');
        if let Some(value) = line.strip_prefix(PARAMETER_TAG) {
            let value = value.trim().parse().map_err(|_| cur.error_at(at, "bad parameter comment"))?;
            parameter = Some(Numeral(value));
        }
    }
}

fn lower_word<'a>(cur: &mut Cursor<'a>, what: &str) -> Result<&'a str, ParseError> {
    cur.skip_ws();
    if !cur.peek().is_some_and(|c| c.is_ascii_lowercase() || c.is_ascii_digit()) {
        return Err(cur.error(format!("expected {what}")));
    }
    Ok(cur.take_while(|c| c.is_ascii_alphanumeric() || c == '_'))
}

fn annotated(cur: &mut Cursor) -> Result<Clause, ParseError> {
    cur.skip_ws();
    let at = cur.mark();
    if lower_word(cur, "`cnf`")? != "cnf" {
        return Err(cur.error_at(at, "expected `cnf`"));
    }
    cur.expect("(")?;
    let name = lower_word(cur, "a clause name")?.to_string();
    cur.expect(",")?;
    lower_word(cur, "a formula role")?;
    cur.expect(",")?;
    let clause = if cur.eat("(") {
        let c = disjunction(cur)?;
        cur.expect(")")?;
        c
    } else {
        disjunction(cur)?
    };
    cur.expect(")")?;
    cur.expect(".")?;
    Ok(clause.with_id(name))
}

fn disjunction(cur: &mut Cursor) -> Result<Clause, ParseError> {
    let mut antecedent = Vec::new();
    let mut succedent = Vec::new();
    loop {
        if cur.eat("$false") {
            // contributes no literal
        } else if cur.eat("~") {
            antecedent.push(tptp_atom(cur)?);
        } else {
            succedent.push(tptp_atom(cur)?);
        }
        if !cur.eat("|") {
            return Ok(Clause::new(antecedent, succedent));
        }
    }
}

fn tptp_atom(cur: &mut Cursor) -> Result<Atom, ParseError> {
    cur.skip_ws();
    let at = cur.mark();
    let pred =
        if cur.peek() == Some('\'') { quoted(cur)? } else { lower_word(cur, "a predicate")?.to_string() };
    let args = if cur.eat("(") { tptp_arguments(cur)? } else { Vec::new() };
    Atom::new(&pred, args).map_err(|e| cur.error_at(at, e.to_string()))
}

fn quoted(cur: &mut Cursor) -> Result<String, ParseError> {
    let at = cur.mark();
    cur.bump();
    let mut name = String::new();
    loop {
        match cur.bump() {
            Some('\'') if !name.is_empty() => return Ok(name),
            Some('\\') => match cur.bump() {
                Some(c @ ('\'' | '\\')) => name.push(c),
                _ => return Err(cur.error("bad escape in quoted name")),
            },
            Some('\n') | None => return Err(cur.error_at(at, "unterminated quoted name")),
            Some('\'') => return Err(cur.error_at(at, "empty quoted name")),
            Some(c) => name.push(c),
        }
    }
}

fn tptp_arguments(cur: &mut Cursor) -> Result<Vec<Term>, ParseError> {
    let mut args = vec![tptp_term(cur)?];
    while cur.eat(",") {
        args.push(tptp_term(cur)?);
    }
    cur.expect(")")?;
    Ok(args)
}

fn tptp_term(cur: &mut Cursor) -> Result<Term, ParseError> {
    cur.skip_ws();
    let at = cur.mark();
    if cur.peek().is_some_and(|c| c.is_ascii_uppercase()) {
        return Ok(Term::var(cur.take_while(|c| c.is_ascii_alphanumeric() || c == '_')));
    }
    let name = lower_word(cur, "a term")?;
    if cur.eat("(") {
        let func =
            Func::from_name(name).ok_or_else(|| cur.error_at(at, format!("unknown function `{name}`")))?;
        let args = tptp_arguments(cur)?;
        return Term::app(func, args).map_err(|e| cur.error_at(at, e.to_string()));
    }
    name.strip_prefix('n')
        .and_then(|d| d.parse().ok())
        .map(Term::num)
        .ok_or_else(|| cur.error_at(at, format!("unknown constant `{name}`")))
}
