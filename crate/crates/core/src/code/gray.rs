//! Gray maps of the two chain rings of order four onto binary pairs.

use std::collections::HashSet;

use super::CodeError;
use crate::algebra::{Elem, Ring, RingFamily};

/// Binary image of one element: `Z_4` as `0->00, 1->01, 2->11, 3->10`,
/// `F_2 + uF_2` as `a + ub -> (b, a + b)`.
pub fn gray_image(ring: &Ring, x: Elem) -> Result<[u8; 2], CodeError> {
    ring.check(x)?;
    match ring.family() {
        RingFamily::Zpm { p: 2, m: 2 } => Ok([[0, 0], [0, 1], [1, 1], [1, 0]][x as usize]),
        RingFamily::Fqu { p: 2, f: 1 } => {
            let (a, b) = ((x % 2) as u8, (x / 2) as u8);
            Ok([b, a ^ b])
        }
        _ => Err(CodeError::UnsupportedRing("Z4 or F2+uF2")),
    }
}

/// Binary image of a word, length `2n`.
pub fn gray_word(ring: &Ring, word: &[Elem]) -> Result<Vec<u8>, CodeError> {
    let mut out = Vec::with_capacity(2 * word.len());
    for &x in word {
        out.extend_from_slice(&gray_image(ring, x)?);
    }
    Ok(out)
}

/// Inverse of [`gray_word`].
pub fn gray_preimage(ring: &Ring, bits: &[u8]) -> Result<Vec<Elem>, CodeError> {
    if bits.len() % 2 != 0 || bits.iter().any(|&b| b > 1) {
        return Err(CodeError::Parse("binary word of even length expected".into()));
    }
    let table: Vec<[u8; 2]> = ring.elements().map(|x| gray_image(ring, x)).collect::<Result<_, _>>()?;
    Ok(bits
        .chunks(2)
        .map(|c| table.iter().position(|t| t[..] == *c).expect("Gray map is onto") as Elem)
        .collect())
}

/// `Ok(())` if the set of binary words is closed under addition, else the
/// first pair of indices whose sum falls outside the set.
pub fn is_binary_linear(words: &[Vec<u8>]) -> Result<(), (usize, usize)> {
    let set: HashSet<&[u8]> = words.iter().map(|w| w.as_slice()).collect();
    let mut sum = Vec::new();
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            sum.clear();
            sum.extend(words[i].iter().zip(&words[j]).map(|(a, b)| a ^ b));
            if !set.contains(sum.as_slice()) {
                return Err((i, j));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gray_preserves_weight() {
        for ring in [Ring::z4(), Ring::f2u()] {
            for x in ring.elements() {
                let img = gray_image(&ring, x).unwrap();
                assert_eq!((img[0] + img[1]) as u32, ring.hom_weight(x));
            }
            let word: Vec<Elem> = ring.elements().collect();
            assert_eq!(gray_preimage(&ring, &gray_word(&ring, &word).unwrap()).unwrap(), word);
            // bijective
            let imgs: HashSet<_> = ring.elements().map(|x| gray_image(&ring, x).unwrap()).collect();
            assert_eq!(imgs.len(), 4);
            // distance compatible
            for x in ring.elements() {
                for y in ring.elements() {
                    let (a, b) = (gray_image(&ring, x).unwrap(), gray_image(&ring, y).unwrap());
                    let d = (a[0] ^ b[0]) + (a[1] ^ b[1]);
                    assert_eq!(d as u32, ring.hom_weight(ring.sub(x, y)));
                }
            }
        }
        assert_eq!(gray_image(&Ring::z4(), 2).unwrap(), [1, 1]);
        assert_eq!(gray_image(&Ring::z4(), 1).unwrap(), [0, 1]);
        assert!(gray_image(&Ring::zpm(3, 2).unwrap(), 1).is_err());
    }

    #[test]
    fn linearity_check() {
        let z4 = Ring::z4();
        let words: Vec<Vec<u8>> = [[0, 0], [2, 2]].iter().map(|w| gray_word(&z4, w).unwrap()).collect();
        assert_eq!(is_binary_linear(&words), Ok(()));
        // image of span{(1,1)}: 0000, 0101, 1111, 1010 is linear
        let words: Vec<Vec<u8>> = (0..4).map(|a| gray_word(&z4, &[a, a]).unwrap()).collect();
        assert_eq!(is_binary_linear(&words), Ok(()));
        // the code {(a, b, a + b)} has a nonlinear image
        let code: Vec<Vec<Elem>> = (0..16).map(|x| {
            let (a, b) = (x % 4, x / 4);
            vec![a, b, z4.add(a, b)]
        }).collect();
        let words: Vec<Vec<u8>> = code.iter().map(|w| gray_word(&z4, w).unwrap()).collect();
        let (i, j) = is_binary_linear(&words).unwrap_err();
        let s: Vec<u8> = words[i].iter().zip(&words[j]).map(|(a, b)| a ^ b).collect();
        assert!(!words.contains(&s));
    }
}
