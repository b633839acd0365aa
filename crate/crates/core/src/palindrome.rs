/// Mismatched mirror pairs `(i, n-1-i)`, `i < n-1-i`. Each one can be fixed
/// by a single substitution, so a word is m-almost palindromic iff this is
/// at most `m`.
pub fn mirror_mismatches<T: PartialEq>(letters: &[T]) -> usize {
    let n = letters.len();
    (0..n / 2).filter(|&i| letters[i] != letters[n - 1 - i]).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_pairs() {
        assert_eq!(mirror_mismatches::<u8>(&[]), 0);
        assert_eq!(mirror_mismatches(&[1]), 0);
        assert_eq!(mirror_mismatches(&[1, 2]), 1);
        assert_eq!(mirror_mismatches(&[1, 2, 3, 1]), 1);
        assert_eq!(mirror_mismatches(&[1, 2, 3, 4]), 2);
    }
}
