//! Sweeps of code counts over a grid of odd parts and field exponents.

use crate::counting::{self, CountError, CountResult, Kind, LengthSpec};
use crate::exec::{self, Strategy};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub nu: u32,
    pub odd_part: u64,
    pub l: u64,
    pub result: CountResult,
}

/// One row per `(n', l)` with odd `n' <= odd_max` and `l <= l_max`, ordered by
/// `n'` then `l`.
pub fn tabulate(
    odd_max: u64,
    l_max: u64,
    nu: u32,
    kind: Kind,
    strategy: Strategy,
) -> Result<Vec<TableRow>, CountError> {
    if nu == 0 {
        return Err(CountError::ZeroNu);
    }
    let cells: Vec<(u64, u64)> = (1..=odd_max)
        .step_by(2)
        .flat_map(|n| (1..=l_max).map(move |l| (n, l)))
        .collect();
    exec::map_ordered(&cells, strategy, |&(odd_part, l)| {
        let spec = LengthSpec::from_odd(nu, odd_part)?;
        let result = counting::count_self_dual(&spec, l, kind)?;
        Ok(TableRow {
            nu,
            odd_part,
            l,
            result,
        })
    })
    .into_iter()
    .collect()
}
