//! Buffer separating information and parities for localized edits.
//!
//! Layout of a codeword: `u | b | p_G | p_C` with `b = 1^(w+1) 0^(w+1) 1^(w+1)`.
//! A window of at most `w` edits can touch either the information part or the
//! parity part, never both.

/// `1^(w+1) 0^(w+1) 1^(w+1)`.
pub fn buffer_make(w: usize) -> Vec<u8> {
    let mut b = vec![1u8; w + 1];
    b.extend(std::iter::repeat(0).take(w + 1));
    b.extend(std::iter::repeat(1).take(w + 1));
    b
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BufferClass {
    /// Edits stayed after the information part; the first k bits are clean.
    InfoClean,
    /// Edits sit before the middle run of the buffer; parities are clean.
    InfoDirtyParitiesClean,
    /// No net length change, the buffer cannot tell where the edits went.
    Ambiguous,
}

/// Classifies a received word of a buffered codeword of length `n` whose
/// parity part (after the buffer) has `parity_len` symbols.
///
/// With a nonzero length change, the parities are taken to be clean when the
/// last two runs `0^(w+1) 1^(w+1)` of the buffer are found intact right before
/// the end-anchored parity block. Edits after the zero run shift that pattern
/// and break the match, so the information part is clean in that case.
pub fn buffer_classify(y: &[u8], n: usize, parity_len: usize, w: usize) -> BufferClass {
    if y.len() == n {
        return BufferClass::Ambiguous;
    }
    let run = w + 1;
    if y.len() < parity_len + 2 * run {
        return BufferClass::InfoClean;
    }
    let end = y.len() - parity_len;
    let region = &y[end - 2 * run..end];
    let intact = region[..run].iter().all(|&b| b == 0) && region[run..].iter().all(|&b| b == 1);
    if intact {
        BufferClass::InfoDirtyParitiesClean
    } else {
        BufferClass::InfoClean
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn buffer_shape() {
        let b = buffer_make(2);
        assert_eq!(b, vec![1, 1, 1, 0, 0, 0, 1, 1, 1]);
        assert_eq!(buffer_make(8).len(), 27);
    }

    #[test]
    fn classify_cases() {
        let k = 10;
        let w = 3;
        let p = vec![0u8, 1, 1, 0, 1, 0];
        let mut x = vec![1u8, 0, 1, 1, 0, 0, 1, 0, 1, 1];
        x.extend(buffer_make(w));
        x.extend(&p);
        let n = x.len();
        assert_eq!(buffer_classify(&x, n, p.len(), w), BufferClass::Ambiguous);
        // deletion in the information part
        let mut y = x.clone();
        y.remove(3);
        assert_eq!(buffer_classify(&y, n, p.len(), w), BufferClass::InfoDirtyParitiesClean);
        // deletion in the parity part
        let mut y = x.clone();
        y.remove(k + 12 + 2);
        assert_eq!(buffer_classify(&y, n, p.len(), w), BufferClass::InfoClean);
        // insertion in the last run of the buffer
        let mut y = x.clone();
        y.insert(k + 10, 0);
        assert_eq!(buffer_classify(&y, n, p.len(), w), BufferClass::InfoClean);
    }
}
