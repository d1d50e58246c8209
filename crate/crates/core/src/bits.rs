//! Word-level helpers shared by the packed matrix types.

/// Number of `u64` words needed to hold `bits` bits.
#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

#[inline]
pub(crate) fn get_bit(words: &[u64], i: usize) -> bool {
    words[i >> 6] >> (i & 63) & 1 == 1
}

#[inline]
pub(crate) fn set_bit(words: &mut [u64], i: usize, v: bool) {
    let mask = 1u64 << (i & 63);
    if v {
        words[i >> 6] |= mask;
    } else {
        words[i >> 6] &= !mask;
    }
}

/// Mask selecting the live bits of the final word of a `bits`-bit row,
/// or all ones when the row ends on a word boundary.
#[inline]
pub(crate) fn tail_mask(bits: usize) -> u64 {
    match bits & 63 {
        0 => !0,
        k => (1u64 << k) - 1,
    }
}

/// Iterate the indices of set bits in `words`, lowest first.
pub(crate) fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        std::iter::from_fn({
            let mut rest = word;
            move || {
                if rest == 0 {
                    None
                } else {
                    let tz = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some((w << 6) | tz)
                }
            }
        })
    })
}

/// OR the low `nbits` bits of `src` into `dst` starting at bit `offset`.
///
/// Bits of `src` above `nbits` must be zero.
pub(crate) fn or_shifted(dst: &mut [u64], offset: usize, src: &[u64], nbits: usize) {
    if nbits == 0 {
        return;
    }
    let word0 = offset >> 6;
    let shift = offset & 63;
    let src_words = words_for(nbits);
    if shift == 0 {
        for (d, s) in dst[word0..word0 + src_words].iter_mut().zip(&src[..src_words]) {
            *d |= s;
        }
        return;
    }
    for (k, &s) in src[..src_words].iter().enumerate() {
        dst[word0 + k] |= s << shift;
        let high = s >> (64 - shift);
        if high != 0 {
            dst[word0 + k + 1] |= high;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_roundtrip() {
        let mut w = vec![0u64; 3];
        for i in [0, 1, 63, 64, 65, 127, 128, 191] {
            assert!(!get_bit(&w, i));
            set_bit(&mut w, i, true);
            assert!(get_bit(&w, i));
        }
        set_bit(&mut w, 64, false);
        assert!(!get_bit(&w, 64));
    }

    #[test]
    fn ones_iterates_in_order() {
        let mut w = vec![0u64; 2];
        for i in [3, 64, 70, 127] {
            set_bit(&mut w, i, true);
        }
        assert_eq!(ones(&w).collect::<Vec<_>>(), vec![3, 64, 70, 127]);
        assert_eq!(ones(&[0, 0]).count(), 0);
    }

    #[test]
    fn or_shifted_matches_bitwise() {
        // every (offset, nbits) pair around word boundaries
        for offset in 0..130 {
            for nbits in 0..70 {
                let mut src = vec![0u64; words_for(nbits.max(1))];
                for i in 0..nbits {
                    if i % 3 != 1 {
                        set_bit(&mut src, i, true);
                    }
                }
                let mut dst = vec![0u64; words_for(offset + nbits) + 1];
                or_shifted(&mut dst, offset, &src, nbits);
                for i in 0..nbits {
                    assert_eq!(
                        get_bit(&dst, offset + i),
                        get_bit(&src, i),
                        "offset {offset} nbits {nbits} bit {i}"
                    );
                }
                assert_eq!(ones(&dst).count(), ones(&src).count());
            }
        }
    }

    #[test]
    fn tail_masks() {
        assert_eq!(tail_mask(64), !0);
        assert_eq!(tail_mask(1), 1);
        assert_eq!(tail_mask(63), (1 << 63) - 1);
        assert_eq!(tail_mask(65), 1);
    }
}
