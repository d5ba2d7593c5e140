use itertools::Itertools;
use std::sync::OnceLock;

/// A permutation of `0..n` with its sign.
#[derive(Debug, Clone, PartialEq)]
pub struct Perm {
    pub image: Vec<usize>,
    pub sign: f64,
}

fn sign_of(p: &[usize]) -> f64 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn build(n: usize) -> Vec<Perm> {
    (0..n)
        .permutations(n)
        .map(|image| {
            let sign = sign_of(&image);
            Perm { image, sign }
        })
        .collect()
}

/// All permutations of `0..n` in lexicographic order (cached for n <= 6).
pub fn permutations(n: usize) -> &'static [Perm] {
    static TABLES: [OnceLock<Vec<Perm>>; 7] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    assert!(n <= 6, "permutation tables are cached up to n = 6");
    TABLES[n].get_or_init(|| build(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_signs() {
        assert_eq!(permutations(5).len(), 120);
        let s: f64 = permutations(4).iter().map(|p| p.sign).sum();
        assert_eq!(s, 0.0);
        assert_eq!(permutations(3)[1].image, vec![0, 2, 1]);
        assert_eq!(permutations(3)[1].sign, -1.0);
    }
}
