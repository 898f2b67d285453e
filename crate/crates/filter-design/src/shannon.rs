//! Indicator filters of an admissible partition.

use partition::{admissible::region_map, FrequencyPartition};

use crate::bank::{BankKind, FilterBankSpec, TransferGrid, IDENTITY};
use crate::error::{FilterError, FilterResult};

/// `ℳ_k = χ_{A_k}` on the `n×n` grid with `η_k = 0`.
pub fn shannon_filters(part: &FrequencyPartition, grid_n: usize) -> FilterResult<FilterBankSpec> {
    if grid_n < 8 {
        return Err(FilterError::ValueError(format!("grid_n must be at least 8, got {grid_n}")));
    }
    let labels = region_map(part, grid_n as i64);
    let filters = (0..part.len())
        .map(|k| TransferGrid {
            band: k,
            lattice: part.sublattice_coords[k],
            eta: [0, 0],
            modulus: labels.iter().map(|&l| if l as usize == k { 1.0 } else { 0.0 }).collect(),
        })
        .collect();
    Ok(FilterBankSpec {
        kind: BankKind::Shannon,
        family: part.family,
        grid_n,
        epsilon: 0.0,
        p_smooth: 0,
        parent: IDENTITY,
        filters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{hex_gauge, hex_real};
    use partition::build_hexagonal;

    #[test]
    fn indicators_sum_to_one() {
        let part = build_hexagonal(2).unwrap();
        let fb = shannon_filters(&part, 48).unwrap();
        assert_eq!(fb.identity_residual(), 0.0);
        fb.validate().unwrap();
    }

    #[test]
    fn lowpass_is_one_inside_half_cell() {
        let part = build_hexagonal(2).unwrap();
        let n = 48;
        let fb = shannon_filters(&part, n).unwrap();
        for i in 0..n * n {
            let [a, b] = part.fold((i % n) as i64, (i / n) as i64, n as i64);
            let g = hex_gauge(hex_real(a as f64, b as f64, n));
            if g < 0.5 - 1e-9 {
                assert_eq!(fb.filters[0].modulus[i], 1.0);
            } else if g > 0.5 + 1e-9 {
                assert_eq!(fb.filters[0].modulus[i], 0.0);
            }
        }
    }
}
