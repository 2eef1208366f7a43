/// Resource caps for the exponential procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest alphabet for the `2^n` frontier table.
    pub frontier_max_n: usize,
    /// Largest `n` for any `n!` enumeration oracle.
    pub oracle_max_n: usize,
    /// Largest alphabet for the shortest-universal-word search.
    pub search_max_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            frontier_max_n: 24,
            oracle_max_n: 8,
            search_max_n: 5,
        }
    }
}

impl Limits {
    pub(crate) fn check(what: &'static str, value: usize, cap: usize) -> crate::Result<()> {
        if value > cap {
            Err(crate::Error::ResourceCap { what, value, cap })
        } else {
            Ok(())
        }
    }
}
