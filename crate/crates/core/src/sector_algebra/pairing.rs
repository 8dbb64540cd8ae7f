//! Signed pairing counts behind the orthogonality of coherence projectors.
//!
//! Expanding `ω_I ω_J` with `P_Ĩ P_J̃ = P_{Ĩ∩J̃}` collects, for each
//! `K ⊆ I ∩ J`, the signed number of pairs `(Ĩ ⊆ I, J̃ ⊆ J)` with
//! `Ĩ ∩ J̃ = K`, each pair weighted by `(−1)^{|Ĩ|+|J̃|}`.

use super::SlitSet;
use crate::error::{invalid, Error, Result};

/// Limit on `|I| + |J|` for exhaustive enumeration.
pub const MAX_PAIRING_BITS: usize = 40;

fn check_pairing_args(i: &SlitSet, j: &SlitSet, k: &SlitSet) -> Result<()> {
    let u = i.universe_size();
    if j.universe_size() != u || k.universe_size() != u {
        return invalid("slit sets belong to different universes");
    }
    if !k.is_subset(&i.intersection(j)) {
        return invalid(format!(
            "K = {k} is not a subset of I ∩ J = {}",
            i.intersection(j)
        ));
    }
    Ok(())
}

/// Exhaustive enumeration of all `(Ĩ, J̃)` pairs.
pub fn pairing_count_bruteforce(i: &SlitSet, j: &SlitSet, k: &SlitSet) -> Result<i64> {
    check_pairing_args(i, j, k)?;
    if i.len() + j.len() > MAX_PAIRING_BITS {
        return Err(Error::ResourceLimit(format!(
            "|I| + |J| = {} exceeds enumeration guard {MAX_PAIRING_BITS}",
            i.len() + j.len()
        )));
    }
    let subs_j: Vec<SlitSet> = j.subsets().collect();
    let mut total = 0i64;
    for it in i.subsets() {
        for jt in &subs_j {
            if it.intersection(jt) == *k {
                total += if (it.len() + jt.len()) % 2 == 0 {
                    1
                } else {
                    -1
                };
            }
        }
    }
    Ok(total)
}

/// Closed form: `0` if `I ≠ J`, `(−1)^{|I|+|K|}` if `I = J`.
pub fn pairing_count_closed(i: &SlitSet, j: &SlitSet, k: &SlitSet) -> Result<i64> {
    check_pairing_args(i, j, k)?;
    if i != j {
        return Ok(0);
    }
    Ok(if (i.len() + k.len()).is_multiple_of(2) {
        1
    } else {
        -1
    })
}
