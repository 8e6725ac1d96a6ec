//! Antisymmetric index sets as bitmasks over dx¹…dx²ⁿ (bit i ↔ dx^{i+1}).

use std::cmp::Ordering;

pub type Anti = u32;

pub const MAX_DIM: usize = 32;

pub fn degree(a: Anti) -> u32 {
    a.count_ones()
}

pub fn indices(a: Anti) -> impl Iterator<Item = usize> {
    (0..MAX_DIM).filter(move |&i| a & (1 << i) != 0)
}

pub fn from_indices(idx: &[usize]) -> Option<(Anti, i8)> {
    let mut mask = 0;
    let mut sign = 1;
    for &i in idx {
        let (m, s) = wedge(mask, 1 << i)?;
        mask = m;
        sign *= s;
    }
    Some((mask, sign))
}

/// Number of indices in `a` strictly below `i`.
pub fn count_below(a: Anti, i: usize) -> u32 {
    (a & ((1u32 << i) - 1)).count_ones()
}

/// dx^A ∧ dx^B = sign · dx^{A∪B}; `None` if the sets overlap.
pub fn wedge(a: Anti, b: Anti) -> Option<(Anti, i8)> {
    if a & b != 0 {
        return None;
    }
    // pairs (i ∈ a, j ∈ b) with i > j; bit j itself is not in `a`
    let inversions: u32 = indices(b).map(|j| (a >> j).count_ones()).sum();
    Some((a | b, if inversions % 2 == 0 { 1 } else { -1 }))
}

/// dx^i ∧ dx^A; `None` if i ∈ A.
pub fn push_front(i: usize, a: Anti) -> Option<(Anti, i8)> {
    if a & (1 << i) != 0 {
        return None;
    }
    let s = if count_below(a, i) % 2 == 0 { 1 } else { -1 };
    Some((a | (1 << i), s))
}

/// Interior product with ∂_i removing dx^i from dx^A; `None` if i ∉ A.
pub fn remove(i: usize, a: Anti) -> Option<(Anti, i8)> {
    if a & (1 << i) == 0 {
        return None;
    }
    let s = if count_below(a, i) % 2 == 0 { 1 } else { -1 };
    Some((a & !(1 << i), s))
}

/// Lexicographic comparison of the sorted index lists.
pub fn cmp(a: Anti, b: Anti) -> Ordering {
    indices(a).cmp(indices(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge(0b01, 0b10), Some((0b11, 1)));
        assert_eq!(wedge(0b10, 0b01), Some((0b11, -1)));
        assert_eq!(wedge(0b01, 0b01), None);
        assert_eq!(wedge(0b101, 0b010), Some((0b111, -1)));
        assert_eq!(from_indices(&[2, 0, 1]), Some((0b111, 1)));
        assert_eq!(remove(1, 0b111), Some((0b101, -1)));
        assert_eq!(push_front(1, 0b101), Some((0b111, -1)));
    }

    #[test]
    fn list_order() {
        assert_eq!(cmp(0b011, 0b101), Ordering::Less);
        assert_eq!(cmp(0b001, 0b011), Ordering::Less);
        assert_eq!(cmp(0, 0b1), Ordering::Less);
    }
}
