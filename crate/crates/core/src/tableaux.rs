//! Gelfand-Tsetlin tableaux, integer shifts, and the Ω sets of integral
//! differences between adjacent rows.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, ParseError, Result};
use crate::scalars::Rational;

/// Position of `(i, j)` (1-based, `j <= i`) in the canonical flattened order.
#[inline]
pub fn shift_index(i: usize, j: usize) -> usize {
    debug_assert!(1 <= j && j <= i);
    i * (i - 1) / 2 + (j - 1)
}

/// Number of shiftable entries for rank `n`.
#[inline]
pub fn shift_len(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Triangular array `v_{ij}`, `1 <= j <= i <= n`, stored bottom row first.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTableau", into = "RawTableau")]
pub struct Tableau {
    n: usize,
    rows: Vec<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct RawTableau {
    n: usize,
    rows: Vec<Vec<Rational>>,
}

impl TryFrom<RawTableau> for Tableau {
    type Error = Error;
    fn try_from(raw: RawTableau) -> Result<Self> {
        make_tableau(raw.n, raw.rows)
    }
}

impl From<Tableau> for RawTableau {
    fn from(t: Tableau) -> Self {
        RawTableau { n: t.n, rows: t.rows }
    }
}

/// Validates the triangular shape.
pub fn make_tableau(n: usize, rows: Vec<Vec<Rational>>) -> Result<Tableau> {
    if n < 2 {
        return Err(Error::Shape(format!("rank must be at least 2, got {n}")));
    }
    if rows.len() != n {
        return Err(Error::Shape(format!("expected {n} rows, got {}", rows.len())));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != i + 1 {
            return Err(Error::Shape(format!("row {} has {} entries, expected {}", i + 1, row.len(), i + 1)));
        }
    }
    Ok(Tableau { n, rows })
}

impl Tableau {
    /// Builds from `(v_{n1}, .., v_{nn}, v_{n-1,1}, .., v_{11})`, top row first.
    pub fn from_top_down(n: usize, flat: &[Rational]) -> Result<Tableau> {
        if flat.len() != n * (n + 1) / 2 {
            return Err(Error::Shape(format!("expected {} entries, got {}", n * (n + 1) / 2, flat.len())));
        }
        let mut rows = Vec::with_capacity(n);
        let mut pos = 0;
        for i in (1..=n).rev() {
            rows.push(flat[pos..pos + i].to_vec());
            pos += i;
        }
        rows.reverse();
        make_tableau(n, rows)
    }

    /// Parses the JSON form `{"n": 3, "rows": [["-1"], ...]}`.
    pub fn from_json(s: &str) -> Result<Tableau> {
        serde_json::from_str(s).map_err(|e| ParseError::Json(e.to_string()).into())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `v_{ij}` (1-based).
    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i - 1][j - 1]
    }

    /// Row `i` (1-based).
    pub fn row(&self, i: usize) -> &[Rational] {
        &self.rows[i - 1]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn top_row(&self) -> &[Rational] {
        &self.rows[self.n - 1]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tableau serializes")
    }

    fn row_has_integral_pair(&self, i: usize) -> Option<(usize, usize)> {
        let row = self.row(i);
        for a in 0..row.len() {
            for b in a + 1..row.len() {
                if (&row[a] - &row[b]).is_integer() {
                    return Some((a + 1, b + 1));
                }
            }
        }
        None
    }

    /// No integral differences inside rows `1..n-1`.
    pub fn is_generic(&self) -> bool {
        (1..self.n).all(|i| self.row_has_integral_pair(i).is_none())
    }

    /// Generic, and the top row also has no integral differences.
    pub fn is_strongly_generic(&self) -> bool {
        (1..=self.n).all(|i| self.row_has_integral_pair(i).is_none())
    }

    fn require_rank3(&self) -> Result<()> {
        if self.n != 3 {
            return Err(Error::Rank { expected: 3, got: self.n });
        }
        Ok(())
    }

    /// `v21 - v22` is an integer. Rank 3 only.
    pub fn is_singular(&self) -> Result<bool> {
        self.require_rank3()?;
        Ok((self.entry(2, 1) - self.entry(2, 2)).is_integer())
    }

    /// `v21 == v22`. Rank 3 only.
    pub fn is_critical(&self) -> Result<bool> {
        self.require_rank3()?;
        Ok(self.entry(2, 1) == self.entry(2, 2))
    }

    fn omega_filtered(&self, keep: impl Fn(&Rational) -> bool) -> OmegaSet {
        let mut out = BTreeSet::new();
        for r in 2..=self.n {
            for s in 1..=r {
                for t in 1..r {
                    let d = self.entry(r, s) - self.entry(r - 1, t);
                    if keep(&d) {
                        out.insert((r, s, t));
                    }
                }
            }
        }
        OmegaSet(out)
    }

    /// Triples `(r, s, t)` with `v_{rs} - v_{r-1,t}` integral.
    pub fn omega(&self) -> OmegaSet {
        self.omega_filtered(Rational::is_integer)
    }

    /// Triples `(r, s, t)` with `v_{rs} - v_{r-1,t}` a nonnegative integer.
    pub fn omega_plus(&self) -> OmegaSet {
        self.omega_filtered(Rational::is_nonneg_integer)
    }

    /// Adds `z` to rows `1..n-1`; the top row is untouched.
    pub fn shift(&self, z: &ShiftVector) -> Tableau {
        assert_eq!(z.len(), shift_len(self.n), "shift length does not match rank");
        let mut rows = self.rows.clone();
        for i in 1..self.n {
            for j in 1..=i {
                let dz = z.get(i, j);
                if dz != 0 {
                    rows[i - 1][j - 1] += Rational::from(dz);
                }
            }
        }
        Tableau { n: self.n, rows }
    }

    /// Entry `v_{ij} + z_{ij}` without materializing the shifted tableau.
    #[inline]
    pub fn shifted_entry(&self, z: &ShiftVector, i: usize, j: usize) -> Rational {
        if i == self.n {
            self.entry(i, j).clone()
        } else {
            self.entry(i, j) + Rational::from(z.get(i, j))
        }
    }

    /// Permutes each row independently so that integral differences between
    /// adjacent rows only occur in aligned columns.
    ///
    /// Rows are processed bottom up. An entry congruent (mod Z) to an entry of
    /// the row below inherits that entry's column; the remaining entries fill
    /// the free columns in descending order of value. The returned `sigma[r]`
    /// satisfies `new_row[p] = old_row[sigma[r][p]]` (0-based).
    pub fn normalize_row_permutation(&self) -> Result<(Vec<Vec<usize>>, Tableau)> {
        for i in 1..=self.n {
            if let Some((a, b)) = self.row_has_integral_pair(i) {
                return Err(Error::NotStronglyGeneric { row: i, i: a, j: b });
            }
        }
        let mut sigmas: Vec<Vec<usize>> = Vec::with_capacity(self.n);
        let mut new_rows: Vec<Vec<Rational>> = Vec::with_capacity(self.n);
        for r in 1..=self.n {
            let row = self.row(r);
            let mut sigma: Vec<Option<usize>> = vec![None; r];
            let mut used = vec![false; r];
            if r > 1 {
                let below = &new_rows[r - 2];
                for (p, b) in below.iter().enumerate() {
                    if let Some(src) = (0..r).find(|&s| !used[s] && (&row[s] - b).is_integer()) {
                        sigma[p] = Some(src);
                        used[src] = true;
                    }
                }
            }
            let mut rest: Vec<usize> = (0..r).filter(|&s| !used[s]).collect();
            rest.sort_by(|&a, &b| row[b].cmp(&row[a]));
            let mut rest = rest.into_iter();
            let sigma: Vec<usize> = sigma.into_iter().map(|s| s.unwrap_or_else(|| rest.next().unwrap())).collect();
            new_rows.push(sigma.iter().map(|&s| row[s].clone()).collect());
            sigmas.push(sigma);
        }
        Ok((sigmas, Tableau { n: self.n, rows: new_rows }))
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tableau[")?;
        for (i, row) in self.rows.iter().enumerate().rev() {
            if i + 1 != self.n {
                write!(f, " / ")?;
            }
            let parts: Vec<String> = row.iter().map(Rational::to_string).collect();
            write!(f, "{}", parts.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Integer shift of rows `1..n-1`, flattened in `(i asc, j asc)` order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ShiftVector(SmallVec<[i64; 6]>);

impl ShiftVector {
    pub fn zero(n: usize) -> Self {
        ShiftVector(SmallVec::from_elem(0, shift_len(n)))
    }

    pub fn from_slice(z: &[i64]) -> Self {
        ShiftVector(SmallVec::from_slice(z))
    }

    /// Rank-3 shift from `(m, n, k) = (z21, z22, z11)`.
    pub fn from_mnk(m: i64, n: i64, k: i64) -> Self {
        ShiftVector::from_slice(&[k, m, n])
    }

    /// `(z21, z22, z11)` for a rank-3 shift.
    pub fn mnk(&self) -> (i64, i64, i64) {
        debug_assert_eq!(self.0.len(), 3);
        (self.0[1], self.0[2], self.0[0])
    }

    /// Unit vector `delta^{ij}`.
    pub fn delta(n: usize, i: usize, j: usize) -> Self {
        let mut z = ShiftVector::zero(n);
        z.0[shift_index(i, j)] = 1;
        z
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Recovers the rank from the length `n(n-1)/2`.
    pub fn rank(&self) -> usize {
        let mut n = 1;
        while shift_len(n) < self.0.len() {
            n += 1;
        }
        n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[shift_index(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.0[shift_index(i, j)] = value;
    }

    #[inline]
    pub fn bump(&mut self, i: usize, j: usize, by: i64) {
        self.0[shift_index(i, j)] += by;
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn neg(&self) -> Self {
        ShiftVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &ShiftVector) -> Self {
        ShiftVector(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// Rank-3 transposition of `z21` and `z22`.
    pub fn tau(&self) -> Self {
        let mut z = self.clone();
        z.0.swap(1, 2);
        z
    }
}

impl fmt::Debug for ShiftVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Set of index triples `(r, s, t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct OmegaSet(pub BTreeSet<(usize, usize, usize)>);

impl OmegaSet {
    pub fn contains(&self, r: usize, s: usize, t: usize) -> bool {
        self.0.contains(&(r, s, t))
    }

    pub fn is_subset(&self, other: &OmegaSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// All triples have `s == t`.
    pub fn is_aligned(&self) -> bool {
        self.0.iter().all(|&(_, s, t)| s == t)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}
