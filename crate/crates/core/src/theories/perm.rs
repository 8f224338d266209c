use std::fmt;

use thiserror::Error;

use super::pro::{Op, Slice};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("images do not form a bijection on 1..={0}")]
    NotBijective(usize),
    #[error("word of length {word} for a permutation of {n} elements")]
    Length { n: usize, word: usize },
    #[error("slice {0} is not a braiding")]
    NotBraid(usize),
    #[error("slice {0} does not fit the current word")]
    Chain(usize),
}

/// A permutation of `1..=n`, stored by images: `images[i] = s(i + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(PermError::NotBijective(n));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The transposition `(k k+1)` on `1..=n`.
    pub fn transposition(n: usize, k: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(k - 1, k);
        p
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `s(i)` for `i` in `1..=n`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`, applying `other` first.
    pub fn after(&self, other: &Permutation) -> Self {
        Permutation {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    pub fn inversions(&self) -> usize {
        let s = &self.images;
        (0..s.len())
            .map(|i| (i + 1..s.len()).filter(|&j| s[j] < s[i]).count())
            .sum()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Positions `k` of the transpositions `(k k+1)` in the normal decomposition,
/// leftmost first: at each step `k` is least with `s(k+1) < s(k)`, and `s`
/// is replaced by `s ∘ (k k+1)`.
pub fn perm_decompose(s: &Permutation) -> Vec<usize> {
    let mut cur = s.images.clone();
    let mut out = Vec::new();
    while let Some(k) = (0..cur.len().saturating_sub(1)).find(|&k| cur[k + 1] < cur[k]) {
        cur.swap(k, k + 1);
        out.push(k + 1);
    }
    out
}

/// Rebuilds a permutation from its decomposition.
pub fn perm_compose(n: usize, ks: &[usize]) -> Permutation {
    ks.iter().fold(Permutation::identity(n), |acc, &k| {
        Permutation::transposition(n, k).after(&acc)
    })
}

/// Braiding slices realising `s` on the word `w`: the sort at position `i`
/// ends at position `s(i)`.
pub fn sigma_expr(s: &Permutation, w: &[String]) -> Result<Vec<Slice>, PermError> {
    if s.n() != w.len() {
        return Err(PermError::Length {
            n: s.n(),
            word: w.len(),
        });
    }
    let mut cur = w.to_vec();
    let mut out = Vec::new();
    for k in perm_decompose(s) {
        let (a, b) = (cur[k - 1].clone(), cur[k].clone());
        out.push(Slice {
            pre: cur[..k - 1].to_vec(),
            op: Op::Braid(a, b),
            post: cur[k + 1..].to_vec(),
        });
        cur.swap(k - 1, k);
    }
    Ok(out)
}

/// Word obtained by moving the sort at position `i` to position `s(i)`.
pub fn permute_word(s: &Permutation, w: &[String]) -> Vec<String> {
    let mut out = w.to_vec();
    for (i, x) in w.iter().enumerate() {
        out[s.apply(i + 1) - 1] = x.clone();
    }
    out
}

/// The inverse of a braiding-only expression.
pub fn invert_slices(slices: &[Slice]) -> Vec<Slice> {
    slices
        .iter()
        .rev()
        .map(|s| Slice {
            pre: s.pre.clone(),
            op: match &s.op {
                Op::Braid(a, b) => Op::BraidInv(b.clone(), a.clone()),
                Op::BraidInv(a, b) => Op::Braid(b.clone(), a.clone()),
                Op::Gen(g) => Op::Gen(g.clone()),
            },
            post: s.post.clone(),
        })
        .collect()
}

/// The inverse of `σ(s⁻¹)` taken on the permuted word: same underlying
/// permutation as [`sigma_expr`], with inverse braidings.
pub fn sigma_star_expr(s: &Permutation, w: &[String]) -> Result<Vec<Slice>, PermError> {
    let t = permute_word(s, w);
    Ok(invert_slices(&sigma_expr(&s.inverse(), &t)?))
}

/// The permutation traced by the wires of a braiding-only expression on a
/// word of length `n`.
pub fn wire_permutation(n: usize, slices: &[Slice]) -> Result<Permutation, PermError> {
    // at[p] is the starting position of the wire now at position p
    let mut at: Vec<usize> = (0..n).collect();
    for (i, s) in slices.iter().enumerate() {
        if !matches!(s.op, Op::Braid(..) | Op::BraidInv(..)) {
            return Err(PermError::NotBraid(i));
        }
        let k = s.pre.len();
        if k + 2 + s.post.len() != n {
            return Err(PermError::Chain(i));
        }
        at.swap(k, k + 1);
    }
    let mut images = vec![0; n];
    for (p, &start) in at.iter().enumerate() {
        images[start] = p + 1;
    }
    Permutation::new(images)
}

/// Braidings taking the word with the `i`-index outermost,
/// `(a₁₁, …, a₁ₘ, a₂₁, …)`, to the one with the `j`-index outermost,
/// `(a₁₁, …, aₙ₁, a₁₂, …)`, and the inverse.
pub fn block_sigma(
    n: usize,
    m: usize,
    sorts: &[Vec<String>],
) -> Result<(Vec<Slice>, Vec<Slice>), PermError> {
    if sorts.len() != n || sorts.iter().any(|r| r.len() != m) {
        return Err(PermError::Length {
            n: n * m,
            word: sorts.iter().map(|r| r.len()).sum(),
        });
    }
    let word: Vec<String> = sorts.iter().flatten().cloned().collect();
    let mut images = vec![0; n * m];
    for i in 0..n {
        for j in 0..m {
            images[i * m + j] = j * n + i + 1;
        }
    }
    let p = Permutation::new(images)?;
    let sigma = sigma_expr(&p, &word)?;
    let star = invert_slices(&sigma);
    Ok((sigma, star))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn five_element_example() {
        let s = Permutation::new(vec![2, 5, 1, 4, 3]).unwrap();
        assert_eq!(perm_decompose(&s), vec![2, 1, 3, 4, 3]);
        assert_eq!(perm_compose(5, &[2, 1, 3, 4, 3]), s);
        let word = w(&["a1", "a2", "a3", "a4", "a5"]);
        assert_eq!(permute_word(&s, &word), w(&["a3", "a1", "a5", "a4", "a2"]));
        let e = sigma_expr(&s, &word).unwrap();
        assert_eq!(e.len(), 5);
        assert_eq!(wire_permutation(5, &e).unwrap(), s);
        assert_eq!(wire_permutation(5, &sigma_star_expr(&s, &word).unwrap()).unwrap(), s);
    }

    #[test]
    fn small_cases() {
        assert!(perm_decompose(&Permutation::identity(4)).is_empty());
        let rev = Permutation::new(vec![3, 2, 1]).unwrap();
        assert_eq!(perm_decompose(&rev), vec![1, 2, 1]);
        let t = Permutation::transposition(2, 1);
        let e = sigma_expr(&t, &w(&["a", "b"])).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].op, Op::Braid("a".into(), "b".into()));
    }

    #[test]
    fn blocks() {
        let sorts: Vec<Vec<String>> = (1..=2)
            .map(|i| (1..=3).map(|j| format!("a{i}{j}")).collect())
            .collect();
        let (s, star) = block_sigma(2, 3, &sorts).unwrap();
        let p = wire_permutation(6, &s).unwrap();
        let word: Vec<String> = sorts.iter().flatten().cloned().collect();
        assert_eq!(
            permute_word(&p, &word),
            w(&["a11", "a21", "a12", "a22", "a13", "a23"])
        );
        assert_eq!(wire_permutation(6, &star).unwrap(), p.inverse());
        let (e1, e2) = block_sigma(1, 3, &sorts[..1]).unwrap();
        assert!(e1.is_empty() && e2.is_empty());
    }
}
