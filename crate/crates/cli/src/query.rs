//! `path p/q | cf p/q | eval [a0;a1,...] | qmark p/q | diag n [j] | rank p/q
//! | unrank k | member p/q n`

use num_bigint::BigUint;

use cwkit_core::cf::{from_cf, to_cf};
use cwkit_core::diagonal::{diagonal, solve_membership};
use cwkit_core::qmark::qmark;
use cwkit_core::tree::{path_of, rank_of, unrank};
use cwkit_core::{ContinuedFraction, Error, Fraction};

use crate::{CliError, CliResult};

pub const GRAMMAR: &str =
    "path p/q | cf p/q | eval [a0;a1,...] | qmark p/q | diag n [j] | rank p/q | unrank k | member p/q n";

/// Evaluates one query. Notices (such as auto-reduction) go to `notices`.
pub fn run_query(words: &[String], notices: &mut Vec<String>) -> CliResult<String> {
    let joined = words.join(" ");
    let mut tokens = joined.split_whitespace();
    let op = tokens
        .next()
        .ok_or_else(|| CliError::Usage(format!("empty query; expected {GRAMMAR}")))?;
    if op == "eval" {
        let rest = tokens.collect::<Vec<_>>().join(" ");
        if rest.is_empty() {
            return Err(CliError::Usage(
                "`eval` expects a continued fraction".into(),
            ));
        }
        let cf: ContinuedFraction = rest.parse().map_err(|e: Error| match e {
            Error::Parse(m) | Error::Domain(m) => CliError::Usage(m),
            other => other.into(),
        })?;
        return Ok(from_cf(&cf).to_string());
    }
    let mut args = Args {
        op,
        tokens,
        notices,
    };
    let answer = match op {
        "path" => path_of(&args.fraction()?).to_string(),
        "cf" => to_cf(&args.fraction()?).to_string(),
        "qmark" => qmark(&args.fraction()?).to_string(),
        "rank" => rank_of(&args.fraction()?)?.to_string(),
        "unrank" => {
            let k = args.biguint()?;
            if k == BigUint::ZERO {
                return Err(CliError::Usage("`unrank` expects k >= 1, got `0`".into()));
            }
            unrank(&k)?.to_string()
        }
        "diag" => {
            let n = args.index()?;
            let d = diagonal(n)?;
            match args.optional_biguint()? {
                None => d.label(),
                Some(j) if j == BigUint::ZERO => {
                    return Err(CliError::Usage("`diag` expects j >= 1, got `0`".into()))
                }
                Some(j) => d.element(&j)?.to_string(),
            }
        }
        "member" => {
            let r = args.fraction()?;
            let n = args.index()?;
            match solve_membership(&r, n)? {
                Some(j) => j.to_string(),
                None => "none".to_string(),
            }
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown query `{other}`; expected {GRAMMAR}"
            )))
        }
    };
    args.finish()?;
    Ok(answer)
}

struct Args<'a, I> {
    op: &'a str,
    tokens: I,
    notices: &'a mut Vec<String>,
}

impl<'a, I: Iterator<Item = &'a str>> Args<'a, I> {
    fn next(&mut self, what: &str) -> CliResult<&'a str> {
        self.tokens
            .next()
            .ok_or_else(|| CliError::Usage(format!("`{}` expects {what}", self.op)))
    }

    fn fraction(&mut self) -> CliResult<Fraction> {
        let tok = self.next("a fraction p/q")?;
        let (r, reduced) = Fraction::parse_lenient(tok)
            .map_err(|_| CliError::Usage(format!("invalid positive fraction `{tok}`")))?;
        if reduced {
            self.notices.push(format!("note: {tok} reduced to {r}"));
        }
        Ok(r)
    }

    fn biguint(&mut self) -> CliResult<BigUint> {
        let tok = self.next("an integer")?;
        parse_biguint(tok)
    }

    fn optional_biguint(&mut self) -> CliResult<Option<BigUint>> {
        self.tokens.next().map(parse_biguint).transpose()
    }

    fn index(&mut self) -> CliResult<u64> {
        let tok = self.next("a diagonal index n")?;
        match tok.parse::<u64>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(CliError::Usage(format!("invalid diagonal index `{tok}`"))),
        }
    }

    fn finish(mut self) -> CliResult<()> {
        match self.tokens.next() {
            Some(tok) => Err(CliError::Usage(format!("unexpected token `{tok}`"))),
            None => Ok(()),
        }
    }
}

fn parse_biguint(tok: &str) -> CliResult<BigUint> {
    tok.parse()
        .map_err(|_| CliError::Usage(format!("invalid integer `{tok}`")))
}
