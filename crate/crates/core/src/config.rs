//! Enumeration limits shared by every element-enumerating operation.

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_ENUM: u128 = 1 << 20;

/// Name of the environment variable that overrides [`DEFAULT_MAX_ENUM`].
pub const MAX_ENUM_ENV: &str = "PPN_MAX_ENUM";

/// A Cayley table is refused beyond this many entries regardless of the
/// element cap; at `2^20` elements a full table would not fit in memory.
pub const MAX_TABLE_ENTRIES: u128 = 1 << 28;

/// The element cap: `PPN_MAX_ENUM` if set to a positive integer, else the default.
pub fn max_enum() -> u128 {
    static CAP: OnceLock<u128> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(MAX_ENUM_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u128>().ok())
            .filter(|&v| v > 0)
            .unwrap_or(DEFAULT_MAX_ENUM)
    })
}

pub(crate) fn ensure_within(size: u128, cap: u128) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded { size, cap })
    } else {
        Ok(())
    }
}

pub(crate) fn ensure_enumerable(size: u128) -> Result<()> {
    ensure_within(size, max_enum())
}
