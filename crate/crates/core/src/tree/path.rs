use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Left,
    Right,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Direction::Left => 'L',
            Direction::Right => 'R',
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A maximal block of identical steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Run {
    pub dir: Direction,
    pub count: BigUint,
}

/// Run-length encoded descent from the root, read root to node.
///
/// Adjacent runs always alternate direction and every count is at least one,
/// so each node has exactly one representation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Path {
    runs: Vec<Run>,
}

impl Path {
    pub fn root() -> Self {
        Self::default()
    }

    /// Validating constructor; rejects zero counts and non-alternating runs.
    pub fn from_runs<I, C>(runs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Direction, C)>,
        C: Into<BigUint>,
    {
        let mut out: Vec<Run> = Vec::new();
        for (dir, count) in runs {
            let count = count.into();
            if count.is_zero() {
                return Err(Error::domain("path run with count 0"));
            }
            if out.last().is_some_and(|r| r.dir == dir) {
                return Err(Error::domain("adjacent path runs share a direction"));
            }
            out.push(Run { dir, count });
        }
        Ok(Self { runs: out })
    }

    pub fn from_steps<I: IntoIterator<Item = Direction>>(steps: I) -> Self {
        let mut p = Self::root();
        for s in steps {
            p.push(s, 1u32);
        }
        p
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn is_root(&self) -> bool {
        self.runs.is_empty()
    }

    /// Appends `count` steps in `dir`, merging with the last run. A zero
    /// count is a no-op.
    pub fn push(&mut self, dir: Direction, count: impl Into<BigUint>) {
        let count = count.into();
        if count.is_zero() {
            return;
        }
        match self.runs.last_mut() {
            Some(last) if last.dir == dir => last.count += count,
            _ => self.runs.push(Run { dir, count }),
        }
    }

    pub fn then(&self, dir: Direction, count: impl Into<BigUint>) -> Self {
        let mut p = self.clone();
        p.push(dir, count);
        p
    }

    pub fn concat(&self, other: &Path) -> Self {
        let mut p = self.clone();
        for r in &other.runs {
            p.push(r.dir, r.count.clone());
        }
        p
    }

    pub fn reversed(&self) -> Self {
        Self {
            runs: self.runs.iter().rev().cloned().collect(),
        }
    }

    /// Number of steps, i.e. `level - 1` of the addressed node.
    pub fn len(&self) -> BigUint {
        self.runs.iter().map(|r| &r.count).sum()
    }

    /// Individual steps. Intended for short paths; panics if a run does not
    /// fit in `u64`.
    pub fn steps(&self) -> impl Iterator<Item = Direction> + '_ {
        self.runs.iter().flat_map(|r| {
            let n = r.count.to_u64().expect("path run too long to iterate");
            std::iter::repeat_n(r.dir, n as usize)
        })
    }
}

/// `R L^2 R`; the root renders as `root`.
impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return write!(f, "root");
        }
        for (i, r) in self.runs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if r.count.is_one() {
                write!(f, "{}", r.dir)?;
            } else {
                write!(f, "{}^{}", r.dir, r.count)?;
            }
        }
        Ok(())
    }
}

/// Accepts `root`, compact step strings (`RLLR`) and run notation
/// (`R L^2 R`), freely mixed.
impl FromStr for Path {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut path = Path::root();
        if s.is_empty() || s == "root" {
            return Ok(path);
        }
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            let dir = match c {
                'L' | 'l' => Direction::Left,
                'R' | 'r' => Direction::Right,
                c if c.is_whitespace() || c == ',' => continue,
                c => return Err(Error::Parse(format!("unexpected `{c}` in path `{s}`"))),
            };
            let mut count = BigUint::one();
            if chars.peek() == Some(&'^') {
                chars.next();
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                count = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("missing exponent in path `{s}`")))?;
                if count.is_zero() {
                    return Err(Error::Parse(format!("zero exponent in path `{s}`")));
                }
            }
            path.push(dir, count);
        }
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Direction::*;

    #[test]
    fn push_merges_runs() {
        let p = Path::from_steps([Right, Left, Left, Right]);
        assert_eq!(p.runs().len(), 3);
        assert_eq!(p.to_string(), "R L^2 R");
        assert_eq!(p.len(), BigUint::from(4u32));
    }

    #[test]
    fn from_runs_validates() {
        assert!(Path::from_runs([(Left, 1u32), (Left, 2u32)]).is_err());
        assert!(Path::from_runs([(Left, 0u32)]).is_err());
        assert!(Path::from_runs([(Left, 1u32), (Right, 2u32)]).is_ok());
    }

    #[test]
    fn parse_forms() {
        let p: Path = "RLLR".parse().unwrap();
        assert_eq!(p, "R L^2 R".parse().unwrap());
        assert_eq!("root".parse::<Path>().unwrap(), Path::root());
        assert_eq!(Path::root().to_string(), "root");
        assert!("RX".parse::<Path>().is_err());
        assert!("R^0".parse::<Path>().is_err());
        assert!("R^".parse::<Path>().is_err());
    }
}
