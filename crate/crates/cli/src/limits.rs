use crate::{CliError, CliResult};

pub const MAX_DEPTH_ENV: &str = "CWKIT_MAX_DEPTH";

/// Largest depth accepted by commands that stream whole levels.
pub const DEFAULT_STREAMING_DEPTH: u32 = 20;
/// Largest depth for commands that evaluate `?` on every node they produce.
pub const DEFAULT_QMARK_DEPTH: u32 = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    Streaming,
    Qmark,
}

/// Refusal thresholds; an override replaces both defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub streaming: u32,
    pub qmark: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            streaming: DEFAULT_STREAMING_DEPTH,
            qmark: DEFAULT_QMARK_DEPTH,
        }
    }
}

impl Limits {
    pub fn with_override(max_depth: Option<u32>) -> Self {
        match max_depth {
            Some(d) => Self {
                streaming: d,
                qmark: d,
            },
            None => Self::default(),
        }
    }

    pub fn check(&self, budget: Budget, depth: u32) -> CliResult<()> {
        let limit = match budget {
            Budget::Streaming => self.streaming,
            Budget::Qmark => self.qmark,
        };
        if depth > limit {
            return Err(CliError::Refused(format!(
                "depth {depth} exceeds the limit of {limit}; set {MAX_DEPTH_ENV} or --max-depth to raise it"
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_override() {
        let l = Limits::default();
        assert!(l.check(Budget::Streaming, 20).is_ok());
        assert!(l.check(Budget::Streaming, 21).is_err());
        assert!(l.check(Budget::Qmark, 15).is_err());
        let l = Limits::with_override(Some(22));
        assert!(l.check(Budget::Qmark, 22).is_ok());
        assert!(l.check(Budget::Streaming, 23).is_err());
    }
}
