//! Accumulates measured and predicted quantities for one report.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{Map, Value};

use super::Verdict;
use crate::serde_util::{bigint_value, format_rational};

/// An exact number: integers print as JSON numbers (or strings when too
/// large), everything else as `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Exact(pub BigRational);

impl Exact {
    pub fn to_value(&self) -> Value {
        if self.0.is_integer() {
            bigint_value(self.0.numer())
        } else {
            Value::String(format_rational(&self.0))
        }
    }
}

macro_rules! exact_from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Exact {
            fn from(v: $t) -> Self {
                Exact(BigRational::from_integer(BigInt::from(v)))
            }
        }
    )*};
}

exact_from_int!(u64, usize, i64, isize, u32);

impl From<BigInt> for Exact {
    fn from(v: BigInt) -> Self {
        Exact(BigRational::from_integer(v))
    }
}

impl From<BigRational> for Exact {
    fn from(v: BigRational) -> Self {
        Exact(v)
    }
}

#[derive(Debug, Default)]
pub(crate) struct Checker {
    pub measured: Map<String, Value>,
    pub predicted: Map<String, Value>,
    pub messages: Vec<String>,
    pub witnesses: Vec<Value>,
    failed: bool,
    skipped: bool,
    errored: bool,
    informational: bool,
}

impl Checker {
    /// Asserts `measured == predicted`.
    pub fn eq(&mut self, key: &str, measured: impl Into<Exact>, predicted: impl Into<Exact>) {
        let (m, p) = (measured.into(), predicted.into());
        self.measured.insert(key.into(), m.to_value());
        self.predicted.insert(key.into(), p.to_value());
        if m != p {
            self.fail(format!("{key}: measured {} but predicted {}", m.to_value(), p.to_value()));
        }
    }

    /// Asserts `measured <= bound`; the bound is stored as `<key>_at_most`.
    pub fn le(&mut self, key: &str, measured: impl Into<Exact>, bound: impl Into<Exact>) {
        let (m, b) = (measured.into(), bound.into());
        self.measured.insert(key.into(), m.to_value());
        self.predicted.insert(format!("{key}_at_most"), b.to_value());
        if m > b {
            self.fail(format!("{key}: measured {} exceeds {}", m.to_value(), b.to_value()));
        }
    }

    /// Asserts a property, recorded as a measured boolean.
    pub fn holds(&mut self, key: &str, value: bool, failure: impl FnOnce() -> String) {
        self.measured.insert(key.into(), Value::Bool(value));
        self.predicted.insert(key.into(), Value::Bool(true));
        if !value {
            self.fail(format!("{key}: {}", failure()));
        }
    }

    pub fn record(&mut self, key: &str, value: impl Into<Value>) {
        self.measured.insert(key.into(), value.into());
    }

    pub fn record_exact(&mut self, key: &str, value: impl Into<Exact>) {
        self.measured.insert(key.into(), value.into().to_value());
    }

    pub fn predict_exact(&mut self, key: &str, value: impl Into<Exact>) {
        self.predicted.insert(key.into(), value.into().to_value());
    }

    pub fn witness(&mut self, value: impl Into<Value>) {
        self.witnesses.push(value.into());
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.messages.push(msg.into());
    }

    fn fail(&mut self, msg: String) {
        self.failed = true;
        self.messages.push(msg);
    }

    pub fn skip(&mut self, reason: impl Into<String>) {
        self.skipped = true;
        self.messages.push(reason.into());
    }

    pub fn error(&mut self, msg: impl Into<String>) {
        self.errored = true;
        self.messages.push(msg.into());
    }

    pub fn informational(&mut self) {
        self.informational = true;
    }

    pub fn is_skipped(&self) -> bool {
        self.skipped
    }

    pub fn verdict(&self) -> Verdict {
        if self.errored {
            Verdict::Error
        } else if self.failed {
            Verdict::Fail
        } else if self.skipped {
            Verdict::Skip
        } else if self.informational {
            Verdict::Info
        } else {
            Verdict::Pass
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_values() {
        assert_eq!(Exact::from(7u64).to_value(), Value::from(7));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(Exact::from(half).to_value(), Value::String("1/2".into()));
        let big: BigInt = BigInt::from(u64::MAX) * 4;
        assert_eq!(Exact::from(big.clone()).to_value(), Value::String(big.to_string()));
    }

    #[test]
    fn verdict_precedence() {
        let mut c = Checker::default();
        assert_eq!(c.verdict(), Verdict::Pass);
        c.eq("a", 1u64, 1u64);
        c.le("b", 2u64, 3u64);
        assert_eq!(c.verdict(), Verdict::Pass);
        c.informational();
        assert_eq!(c.verdict(), Verdict::Info);
        c.le("b", 4u64, 3u64);
        assert_eq!(c.verdict(), Verdict::Fail);
        assert_eq!(c.predicted["b_at_most"], Value::from(3));
        c.error("boom");
        assert_eq!(c.verdict(), Verdict::Error);
    }
}
