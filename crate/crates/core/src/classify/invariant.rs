use super::ClassifyError;
use crate::code::LinearCode;
use crate::spectral::weight_distribution;

fn put(out: &mut Vec<u8>, x: u64) {
    out.extend_from_slice(&x.to_le_bytes());
}

/// Equivalence invariant of a code under coordinate permutation and
/// per-coordinate unit scaling: ring, length, shape and weight distribution,
/// then the sorted per-coordinate profiles (codeword weight × entry
/// valuation), each refined by the sorted profiles of its coordinate pairs.
pub fn canonical_invariant(code: &LinearCode, budget: u128) -> Result<Vec<u8>, ClassifyError> {
    let ring = code.ring();
    let n = code.len();
    let wd = weight_distribution(code, budget)?;
    let weights: Vec<u32> = wd.entries.iter().map(|&(w, _)| w).collect();
    let depth = ring.depth() as usize;
    let vals = depth + 1;
    let nw = weights.len();
    let mut single = vec![vec![0u64; nw * vals]; n];
    let mut pair = vec![vec![0u64; nw * vals * vals]; n * n];
    let mut v = vec![0usize; n];
    code.for_each_codeword(budget, |word| {
        let wi = weights.binary_search(&code.weight(word)).expect("weight is in the distribution");
        for (j, &x) in word.iter().enumerate() {
            v[j] = ring.valuation(x) as usize;
            single[j][wi * vals + v[j]] += 1;
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    pair[i * n + j][(wi * vals + v[i]) * vals + v[j]] += 1;
                }
            }
        }
    })?;
    let mut profiles: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut pairs: Vec<&Vec<u64>> = (0..n).filter(|&j| j != i).map(|j| &pair[i * n + j]).collect();
            pairs.sort();
            let mut p = single[i].clone();
            p.extend(pairs.into_iter().flatten());
            p
        })
        .collect();
    profiles.sort();
    let mut out = Vec::new();
    out.extend_from_slice(ring.name().as_bytes());
    out.push(0);
    put(&mut out, n as u64);
    put(&mut out, code.shape().len() as u64);
    for &s in code.shape() {
        put(&mut out, s as u64);
    }
    put(&mut out, wd.entries.len() as u64);
    for &(w, a) in &wd.entries {
        put(&mut out, w as u64);
        put(&mut out, a);
    }
    for p in profiles {
        for x in p {
            put(&mut out, x);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;
    use crate::code::DEFAULT_BUDGET;
    use crate::tables::table1_matrix;

    fn code(rows: Vec<Vec<u32>>) -> LinearCode {
        LinearCode::from_rows(Ring::z4(), rows).unwrap()
    }

    #[test]
    fn invariant_under_permutation_and_scaling() {
        let g = table1_matrix("G6_1").unwrap();
        let base = canonical_invariant(&code(g.clone()), DEFAULT_BUDGET).unwrap();
        let perm = [3, 0, 5, 1, 4, 2];
        let moved: Vec<Vec<u32>> =
            g.iter().map(|r| perm.iter().enumerate().map(|(j, &p)| if j % 2 == 0 { (3 * r[p]) % 4 } else { r[p] }).collect()).collect();
        assert_eq!(canonical_invariant(&code(moved), DEFAULT_BUDGET).unwrap(), base);
        // row operations do not change the code
        let mut mixed = g.clone();
        mixed[0] = mixed[0].iter().zip(&g[1]).map(|(a, b)| (a + b) % 4).collect();
        assert_eq!(canonical_invariant(&code(mixed), DEFAULT_BUDGET).unwrap(), base);
    }

    #[test]
    fn separates_distributions() {
        let a = canonical_invariant(&code(table1_matrix("G6_2").unwrap()), DEFAULT_BUDGET).unwrap();
        let b = canonical_invariant(&code(table1_matrix("G6_3").unwrap()), DEFAULT_BUDGET).unwrap();
        let c = canonical_invariant(&code(table1_matrix("G6_1").unwrap()), DEFAULT_BUDGET).unwrap();
        assert_ne!(a, b);
        assert_ne!(a, c);
    }
}
