use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::SymPoly;
use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};
use crate::scalar::{q, Q};

/// Number of semistandard tableaux of shape `shape` and content `content`.
pub fn kostka(shape: &Partition, content: &[u32]) -> BigInt {
    fn rec(
        shape: &[u32],
        content: &[u32],
        memo: &mut HashMap<(Vec<u32>, usize), BigInt>,
    ) -> BigInt {
        let total: u32 = shape.iter().sum();
        if content.is_empty() {
            return if total == 0 { BigInt::one() } else { BigInt::zero() };
        }
        let key = (shape.to_vec(), content.len());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let (&last, rest) = content.split_last().expect("nonempty");
        // remove a horizontal strip of size `last`: ν_i ∈ [shape_{i+1}, shape_i]
        let mut acc = BigInt::zero();
        let mut nu = vec![0u32; shape.len()];
        fn strips(
            shape: &[u32],
            i: usize,
            left: u32,
            nu: &mut Vec<u32>,
            rest: &[u32],
            memo: &mut HashMap<(Vec<u32>, usize), BigInt>,
            acc: &mut BigInt,
        ) {
            if i == shape.len() {
                if left == 0 {
                    let mut inner = nu.clone();
                    while inner.last() == Some(&0) {
                        inner.pop();
                    }
                    *acc += rec(&inner, rest, memo);
                }
                return;
            }
            let lo = shape.get(i + 1).copied().unwrap_or(0);
            for take in 0..=(shape[i] - lo).min(left) {
                nu[i] = shape[i] - take;
                strips(shape, i + 1, left - take, nu, rest, memo, acc);
            }
        }
        strips(shape, 0, last, &mut nu, rest, memo, &mut acc);
        memo.insert(key, acc.clone());
        acc
    }
    rec(shape.parts(), content, &mut HashMap::new())
}

/// s_µ in `n` variables.
pub fn schur(mu: &Partition, n: usize) -> Result<SymPoly> {
    if mu.len() > n {
        return Err(Error::InvalidArgument(format!("{mu} has more than {n} parts")));
    }
    let coeffs = partitions_of(mu.weight(), n)
        .into_iter()
        .filter(|nu| mu.dominates(nu))
        .map(|nu| {
            let k = kostka(mu, nu.parts());
            (nu, Q::from_integer(k))
        })
        .collect();
    Ok(SymPoly::from_map(n, coeffs))
}

/// s_µ(1ⁿ) = ∏ (n + c(u)) / h(u).
pub fn principal_spec(mu: &Partition, n: usize) -> Result<Q> {
    if mu.len() > n {
        return Ok(Q::zero());
    }
    let mut acc = Q::one();
    for (c, h) in mu.contents().into_iter().zip(mu.hooks()) {
        acc *= q(n as i64 + c) / q(h as i64);
    }
    Ok(acc)
}
