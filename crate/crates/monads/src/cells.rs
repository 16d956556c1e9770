use gcore::{globset_to_ngraph, ngraph_to_globset, CellId, GcoreError, GlobSet};

use crate::error::MonadError;
use crate::tower::{strict_monad, MAX_TOWER};

pub(crate) fn check_request(n: usize, x: &GlobSet, d: usize) -> Result<(), MonadError> {
    if n > MAX_TOWER {
        return Err(MonadError::UnsupportedDepth {
            requested: n,
            max: MAX_TOWER,
        });
    }
    if x.n() != n {
        return Err(MonadError::Level {
            expected: n,
            found: x.n(),
        });
    }
    if d > n {
        return Err(GcoreError::Dimension {
            requested: d,
            available: n,
        }
        .into());
    }
    x.validate().map_err(GcoreError::Invalid)?;
    Ok(())
}

/// The `d`-cells of `T_n(X)` of grade at most `bound`, through the tower:
/// `X` becomes an iterated graph, `T_n` is applied, and the result is
/// flattened back with the fixed coproduct tags.
pub fn enumerate_tn_cells(
    n: usize,
    x: &GlobSet,
    d: usize,
    bound: usize,
) -> Result<Vec<CellId>, MonadError> {
    check_request(n, x, d)?;
    let t = strict_monad(n)?;
    let tx = t.apply(&globset_to_ngraph(x)?, bound)?;
    Ok(ngraph_to_globset(&tx)?.cells(d).to_vec())
}
