//! Simply-laced Lie datum: Cartan matrices, positive roots, Coxeter words,
//! Dynkin-quiver orientations and height functions.
//!
//! Node numbering is Bourbaki's: `A_n` is the chain `1 - 2 - ... - n`,
//! `D_n` is the chain `1 - ... - (n-2)` with both `n-1` and `n` attached to
//! `n-2`, and `E_n` is the chain `1 - 3 - 4 - ... - n` with `2` attached
//! to `4`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    D,
    E,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Family::A),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            other => Err(Error::UnsupportedType(other.to_string())),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::D => write!(f, "D"),
            Family::E => write!(f, "E"),
        }
    }
}

/// A simply-laced Cartan datum together with its positive roots.
#[derive(Debug, Clone)]
pub struct DynkinDatum {
    pub family: Family,
    pub rank: usize,
    /// Symmetric Cartan matrix, `cartan[i][j] = c_{i+1,j+1}`.
    pub cartan: Vec<Vec<i64>>,
    pub coxeter_number: i64,
    /// All positive roots in simple-root coordinates, ordered by
    /// (height, lexicographic).
    pub positive_roots: Vec<Vec<i64>>,
}

/// A Coxeter word together with the orientation it is adapted to and the
/// height function of that orientation.
#[derive(Debug, Clone)]
pub struct CoxeterWord {
    /// Permutation of `1..=n`.
    pub word: Vec<u8>,
    /// Arrows `i -> j` of the Dynkin-quiver orientation.
    pub orientation: Vec<(u8, u8)>,
    /// Height `l_c`, indexed by node - 1, normalized so that `0` is attained.
    pub heights: Vec<i32>,
}

/// Result of [`weyl_word_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordCheck {
    pub length: usize,
    pub is_reduced: bool,
    pub is_w0: bool,
}

pub fn make_datum(family: Family, rank: usize) -> Result<DynkinDatum> {
    let ok = match family {
        Family::A => rank >= 1,
        Family::D => rank >= 4,
        Family::E => (6..=8).contains(&rank),
    };
    if !ok {
        return Err(Error::UnsupportedType(format!("{family}{rank}")));
    }
    let edges = dynkin_edges(family, rank);
    let mut cartan = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        cartan[i][i] = 2;
    }
    for &(a, b) in &edges {
        cartan[a as usize - 1][b as usize - 1] = -1;
        cartan[b as usize - 1][a as usize - 1] = -1;
    }
    let coxeter_number = match family {
        Family::A => rank as i64 + 1,
        Family::D => 2 * rank as i64 - 2,
        Family::E => match rank {
            6 => 12,
            7 => 18,
            _ => 30,
        },
    };
    let positive_roots = generate_positive_roots(&cartan);
    let expected = match family {
        Family::A => rank * (rank + 1) / 2,
        Family::D => rank * (rank - 1),
        Family::E => match rank {
            6 => 36,
            7 => 63,
            _ => 120,
        },
    };
    assert_eq!(positive_roots.len(), expected, "root count for {family}{rank}");
    Ok(DynkinDatum {
        family,
        rank,
        cartan,
        coxeter_number,
        positive_roots,
    })
}

fn dynkin_edges(family: Family, rank: usize) -> Vec<(u8, u8)> {
    match family {
        Family::A => (1..rank as u8).map(|i| (i, i + 1)).collect(),
        Family::D => {
            let mut e: Vec<(u8, u8)> = (1..rank as u8 - 2).map(|i| (i, i + 1)).collect();
            e.push((rank as u8 - 2, rank as u8 - 1));
            e.push((rank as u8 - 2, rank as u8));
            e
        }
        Family::E => {
            let chain: Vec<u8> = std::iter::once(1)
                .chain(3..=rank as u8)
                .collect();
            let mut e: Vec<(u8, u8)> = chain.windows(2).map(|w| (w[0], w[1])).collect();
            e.push((2, 4));
            e
        }
    }
}

impl DynkinDatum {
    pub fn nodes(&self) -> impl Iterator<Item = u8> + '_ {
        (1..=self.rank as u8).into_iter()
    }

    pub fn adjacent(&self, i: u8, j: u8) -> bool {
        i != j && self.cartan[i as usize - 1][j as usize - 1] == -1
    }

    pub fn neighbors(&self, i: u8) -> Vec<u8> {
        self.nodes().filter(|&j| self.adjacent(i, j)).collect()
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Simple reflection `s_i` acting on a root vector.
    pub fn reflect(&self, i: u8, v: &[i64]) -> Vec<i64> {
        let pairing: i64 = (0..self.rank)
            .map(|j| self.cartan[i as usize - 1][j] * v[j])
            .sum();
        let mut out = v.to_vec();
        out[i as usize - 1] -= pairing;
        out
    }
}

/// Breadth-first closure of the simple roots under simple reflections.
fn generate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut roots: std::collections::BTreeSet<Vec<i64>> = std::collections::BTreeSet::new();
    let mut frontier: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut v = vec![0i64; n];
        v[i] = 1;
        roots.insert(v.clone());
        frontier.push(v);
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for r in &frontier {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| cartan[i][j] * r[j]).sum();
                let mut s = r.clone();
                s[i] -= pairing;
                if s.iter().all(|&x| x >= 0) && s.iter().any(|&x| x > 0) && !roots.contains(&s) {
                    roots.insert(s.clone());
                    next.push(s);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Vec<i64>> = roots.into_iter().collect();
    out.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
    out
}

/// Computes the unique orientation a Coxeter word is adapted to, and its
/// height function.
///
/// For every Dynkin edge `{i, j}` the arrow points from the letter occurring
/// later in the word to the letter occurring earlier; adaptedness is then
/// re-verified against the defining recursion (last letter is a source, and
/// so on after reflecting).
pub fn coxeter_word(datum: &DynkinDatum, word: &[u8]) -> Result<CoxeterWord> {
    let n = datum.rank;
    let mut seen = vec![false; n + 1];
    if word.len() != n {
        return Err(Error::Config(format!(
            "coxeter word must be a permutation of 1..={n}, got {word:?}"
        )));
    }
    for &i in word {
        if i == 0 || i as usize > n || seen[i as usize] {
            return Err(Error::Config(format!(
                "coxeter word must be a permutation of 1..={n}, got {word:?}"
            )));
        }
        seen[i as usize] = true;
    }
    let pos: Vec<usize> = {
        let mut p = vec![0usize; n + 1];
        for (k, &i) in word.iter().enumerate() {
            p[i as usize] = k;
        }
        p
    };
    let mut orientation = Vec::new();
    for i in 1..=n as u8 {
        for j in (i + 1)..=n as u8 {
            if datum.adjacent(i, j) {
                if pos[i as usize] < pos[j as usize] {
                    orientation.push((j, i));
                } else {
                    orientation.push((i, j));
                }
            }
        }
    }
    // Defensive re-check of adaptedness by the defining recursion.
    let mut q = orientation.clone();
    for &v in word.iter().rev() {
        if q.iter().any(|&(_, t)| t == v) {
            return Err(Error::NotAdapted(word.to_vec()));
        }
        for a in q.iter_mut() {
            if a.0 == v || a.1 == v {
                *a = (a.1, a.0);
            }
        }
    }
    // Heights: arrow i -> j forces l(i) = l(j) + 1; the diagram is a tree.
    let mut l = vec![i32::MIN; n + 1];
    l[1] = 0;
    let mut stack = vec![1u8];
    while let Some(u) = stack.pop() {
        for &(s, t) in &orientation {
            // arrow s -> t forces l(s) = l(t) + 1
            for (a, b, d) in [(s, t, -1i32), (t, s, 1i32)] {
                if a == u && l[b as usize] == i32::MIN {
                    l[b as usize] = l[u as usize] + d;
                    stack.push(b);
                }
            }
        }
    }
    let min = *l[1..=n].iter().min().unwrap();
    let heights: Vec<i32> = (1..=n).map(|i| l[i] - min).collect();
    Ok(CoxeterWord {
        word: word.to_vec(),
        orientation,
        heights,
    })
}

impl CoxeterWord {
    /// Height of a node (1-based).
    pub fn height(&self, i: u8) -> i32 {
        self.heights[i as usize - 1]
    }
}

/// Checks a word over the simple reflections for reducedness via the action
/// on positive roots: the length of the Weyl element equals the number of
/// positive roots it sends to negative ones.
pub fn weyl_word_check(datum: &DynkinDatum, word: &[u8]) -> WordCheck {
    let length = word.len();
    let mut inversions = 0usize;
    for root in &datum.positive_roots {
        let mut v = root.clone();
        // w = s_{i_1} ... s_{i_k} acts right-to-left.
        for &i in word.iter().rev() {
            v = datum.reflect(i, &v);
        }
        if v.iter().all(|&x| x <= 0) {
            inversions += 1;
        }
    }
    let is_reduced = inversions == length;
    WordCheck {
        length,
        is_reduced,
        is_w0: is_reduced && length == datum.num_positive_roots(),
    }
}
