//! Interned differential-variable names.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// An interned name of a differential indeterminate (`u`, `x1`, `y`, ...).
///
/// Symbols are cheap to copy, compare and hash. The canonical `Ord` compares
/// names lexicographically, so it is stable across runs regardless of interner
/// insertion order; rankings impose their own orders on top of this.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Symbol(u32);

struct Interner {
    names: Vec<&'static str>,
    index: HashMap<&'static str, u32>,
}

fn interner() -> &'static Mutex<Interner> {
    static INTERNER: OnceLock<Mutex<Interner>> = OnceLock::new();
    INTERNER.get_or_init(|| {
        Mutex::new(Interner {
            names: Vec::new(),
            index: HashMap::new(),
        })
    })
}

impl Symbol {
    pub fn new(name: &str) -> Symbol {
        let mut int = interner().lock().unwrap();
        if let Some(&id) = int.index.get(name) {
            return Symbol(id);
        }
        let id = int.names.len() as u32;
        let stored: &'static str = Box::leak(name.to_owned().into_boxed_str());
        int.names.push(stored);
        int.index.insert(stored, id);
        Symbol(id)
    }

    pub fn name(self) -> &'static str {
        interner().lock().unwrap().names[self.0 as usize]
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Symbol) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Symbol) -> std::cmp::Ordering {
        if self.0 == other.0 {
            std::cmp::Ordering::Equal
        } else {
            self.name().cmp(other.name())
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
