//! Fixed inputs shared by the benchmarks.

use ppn_core::corpus::{build_family, FamilySpec};
use ppn_core::PcPresentation;

/// Groups of increasing size used across benchmarks, by group id.
pub fn fixtures() -> Vec<(String, PcPresentation)> {
    [
        FamilySpec::heisenberg(3, 1),
        FamilySpec::split(3, 3, 2, 2),
        FamilySpec::heisenberg(3, 2),
        FamilySpec::split(5, 3, 2, 2),
    ]
    .into_iter()
    .map(|s| {
        (
            s.group_id(),
            build_family(&s).expect("fixture family is valid"),
        )
    })
    .collect()
}
