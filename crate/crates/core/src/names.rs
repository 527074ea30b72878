//! Names for type variables, instantiation variables, term variables and
//! labels, plus the fresh-name supply used by inference.
//!
//! Generated names carry the reserved `%` prefix, which the parser rejects
//! in source identifiers, so a fresh name can never collide with a
//! user-written one.

use std::fmt;

/// Prefix reserved for generated names; source identifiers may not use it.
pub const RESERVED_PREFIX: char = '%';

macro_rules! name_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub String);

        impl $name {
            pub fn new(s: impl Into<String>) -> Self {
                $name(s.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                $name(s.to_owned())
            }
        }
    };
}

name_type!(
    /// A type variable (α, β, ...), bound by `rec` or `forall`.
    TypeVarName
);
name_type!(
    /// An instantiation variable (X, Y, ...), an inference-time unknown.
    /// Instantiation variables have no binder; every occurrence is free.
    InstVarName
);
name_type!(
    /// A term variable.
    TermVarName
);
name_type!(
    /// A branch label in a choice type.
    Label
);

/// Monotone counter used to mint fresh names during one inference run.
///
/// A supply is created per run and never shared between runs, which keeps
/// output deterministic: identical inputs see identical counters.
#[derive(Debug, Default)]
pub struct NameSupply {
    next: u64,
}

impl NameSupply {
    pub fn new() -> Self {
        NameSupply { next: 0 }
    }

    /// Fresh type variable, e.g. `%γ0`.
    pub fn fresh_type_var(&mut self) -> TypeVarName {
        let n = self.bump();
        TypeVarName(format!("{}γ{}", RESERVED_PREFIX, n))
    }

    /// Fresh instantiation variable, e.g. `%X0`.
    pub fn fresh_inst_var(&mut self) -> InstVarName {
        let n = self.bump();
        InstVarName(format!("{}X{}", RESERVED_PREFIX, n))
    }

    /// Counter value to be issued next; exposed so speculative passes can
    /// be replayed from a known supply state.
    pub fn mark(&self) -> u64 {
        self.next
    }

    fn bump(&mut self) -> u64 {
        let n = self.next;
        self.next += 1;
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_names_start_at_zero_and_are_distinct() {
        let mut supply = NameSupply::new();
        let a = supply.fresh_type_var();
        let b = supply.fresh_type_var();
        assert_eq!(a.as_str(), "%γ0");
        assert_eq!(b.as_str(), "%γ1");
        assert_ne!(a, b);
    }

    #[test]
    fn fresh_inst_var_uses_reserved_prefix() {
        let mut supply = NameSupply::new();
        let x = supply.fresh_inst_var();
        assert!(x.as_str().starts_with(RESERVED_PREFIX));
        // cannot collide with a source identifier such as `gamma`
        assert_ne!(x.as_str(), "gamma");
    }
}
