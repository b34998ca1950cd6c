use std::collections::HashSet;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// An interned variable name. Ordered by name, so term orders and printing
/// do not depend on interning order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(&'static str);

fn interner() -> &'static Mutex<HashSet<&'static str>> {
    static NAMES: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
    NAMES.get_or_init(|| Mutex::new(HashSet::new()))
}

impl Var {
    pub fn new(name: &str) -> Var {
        let mut names = interner().lock().expect("variable interner poisoned");
        if let Some(existing) = names.get(name) {
            return Var(existing);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        names.insert(leaked);
        Var(leaked)
    }

    pub fn name(&self) -> &'static str {
        self.0
    }

    pub fn is_valid_name(name: &str) -> bool {
        let mut chars = name.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return false,
        }
        name != "i" && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Var {
        Var::new(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_stable() {
        let a = Var::new("alpha");
        let b = Var::new(&String::from("alpha"));
        assert_eq!(a, b);
        assert!(Var::new("a") < Var::new("b"));
        assert!(Var::is_valid_name("L"));
        assert!(!Var::is_valid_name("i"));
        assert!(!Var::is_valid_name("2x"));
    }
}
