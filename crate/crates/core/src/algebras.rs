//! Finite partition algebras of `[0, 1)`.
//!
//! An [`Algebra`] is stored through its atoms. All atoms have positive
//! measure: a nonempty set in the interval model always does, so the
//! number of atoms and the number of positive-measure atoms coincide.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure_space::{MSet, Rat};

/// Finite partition of `[0, 1)` into nonempty sets, atoms ordered by their
/// leftmost endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawAlgebra", into = "RawAlgebra")]
pub struct Algebra {
    atoms: Vec<MSet>,
}

#[derive(Serialize, Deserialize)]
struct RawAlgebra {
    atoms: Vec<MSet>,
}

impl TryFrom<RawAlgebra> for Algebra {
    type Error = Error;

    fn try_from(raw: RawAlgebra) -> Result<Algebra> {
        Algebra::new(raw.atoms)
    }
}

impl From<Algebra> for RawAlgebra {
    fn from(a: Algebra) -> RawAlgebra {
        RawAlgebra { atoms: a.atoms }
    }
}

impl Algebra {
    /// Validates that `atoms` partition `[0, 1)`. Atom indices in errors refer
    /// to the input order.
    pub fn new(atoms: Vec<MSet>) -> Result<Algebra> {
        if let Some(index) = atoms.iter().position(MSet::is_empty) {
            return Err(Error::EmptyAtom { index });
        }
        for i in 0..atoms.len() {
            for j in i + 1..atoms.len() {
                if !atoms[i].is_disjoint(&atoms[j]) {
                    return Err(Error::AtomOverlap {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        let total: Rat = atoms.iter().map(MSet::measure).sum();
        if total != Rat::one() {
            return Err(Error::AtomGap {
                missing: (Rat::one() - total).to_string(),
            });
        }
        Ok(Algebra::from_partition(atoms))
    }

    // Caller guarantees a partition into nonempty sets.
    pub(crate) fn from_partition(mut atoms: Vec<MSet>) -> Algebra {
        atoms.sort_by(|a, b| a.leftmost().cmp(&b.leftmost()));
        Algebra { atoms }
    }

    /// The trivial algebra `⟨Ω⟩`.
    pub fn trivial() -> Algebra {
        Algebra {
            atoms: vec![MSet::omega()],
        }
    }

    /// The `n`-cell equipartition `[i/n, (i+1)/n)`.
    pub fn equipartition(n: usize) -> Algebra {
        assert!(n >= 1, "equipartition needs at least one cell");
        let n = n as i64;
        let atoms = (0..n)
            .map(|i| {
                MSet::interval(Rat::frac(i, n), Rat::frac(i + 1, n)).expect("cell inside [0,1)")
            })
            .collect();
        Algebra { atoms }
    }

    pub fn atoms(&self) -> &[MSet] {
        &self.atoms
    }

    pub fn into_atoms(self) -> Vec<MSet> {
        self.atoms
    }

    /// Number of atoms, `N(A)`.
    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atom_measures(&self) -> Vec<Rat> {
        self.atoms.iter().map(MSet::measure).collect()
    }

    /// Index of the atom containing `set`, if one does.
    pub fn atom_containing(&self, set: &MSet) -> Option<usize> {
        self.atoms.iter().position(|atom| set.is_subset(atom))
    }

    /// Join `σ(A ∪ B)`: atoms are the nonempty pairwise intersections.
    pub fn join(&self, other: &Algebra) -> Algebra {
        let atoms = self
            .atoms
            .iter()
            .flat_map(|a| other.atoms.iter().map(move |b| a.intersect(b)))
            .filter(|c| !c.is_empty())
            .collect();
        Algebra::from_partition(atoms)
    }

    /// Exact product-rule check `P(A_i ∩ B_j) = P(A_i) P(B_j)`.
    pub fn is_independent(&self, other: &Algebra) -> bool {
        let ma = self.atom_measures();
        let mb = other.atom_measures();
        self.atoms.iter().zip(&ma).all(|(a, pa)| {
            other
                .atoms
                .iter()
                .zip(&mb)
                .all(|(b, pb)| a.intersect(b).measure() == pa * pb)
        })
    }

    /// Traces `A_i ∩ k` of the atoms on a positive-measure set.
    pub fn restrict(&self, k: &MSet) -> Result<TraceAlgebra> {
        if k.is_empty() {
            return Err(Error::ZeroMeasure);
        }
        let atoms = self
            .atoms
            .iter()
            .map(|a| a.intersect(k))
            .filter(|t| !t.is_empty())
            .collect();
        Ok(TraceAlgebra {
            base: k.clone(),
            atoms,
        })
    }

    /// `A ⊥_K B`: independence of the traces on every atom of `k` under the
    /// conditional probability `P(·) / P(K_i)`.
    pub fn conditionally_independent(&self, other: &Algebra, k: &Algebra) -> bool {
        k.atoms.iter().all(|ki| {
            let ta = self.restrict(ki).expect("atoms are nonempty");
            let tb = other.restrict(ki).expect("atoms are nonempty");
            ta.is_independent(&tb)
        })
    }

    /// Same multiset of atom measures.
    pub fn same_atom_measures(&self, other: &Algebra) -> bool {
        let mut ma = self.atom_measures();
        let mut mb = other.atom_measures();
        ma.sort();
        mb.sort();
        ma == mb
    }

    /// Independent algebra with prescribed atom measures: every atom of
    /// `self` is cut by leftmost prefixes into pieces of measure
    /// `c_j · P(A_i)`, and atom `j` of the result collects the `j`-th pieces.
    pub fn independent_with_profile(&self, profile: &AtomProfile) -> Algebra {
        let k = profile.weights.len();
        let mut cols = vec![MSet::empty(); k];
        for atom in &self.atoms {
            let pa = atom.measure();
            let mut rest = atom.clone();
            for (j, c) in profile.weights.iter().enumerate() {
                let piece = if j + 1 == k {
                    rest.clone()
                } else {
                    rest.darboux_split(&(c * &pa))
                        .expect("profile weights sum to one")
                };
                rest = rest.difference(&piece);
                cols[j] = cols[j].union(&piece);
            }
        }
        Algebra::from_partition(cols)
    }

    /// `d(A, B)`: the least measure of a set off which the two algebras agree.
    pub fn distance_d(&self, other: &Algebra) -> Rat {
        let weights: Vec<Vec<Rat>> = self
            .atoms
            .iter()
            .map(|a| {
                other
                    .atoms
                    .iter()
                    .map(|b| a.intersect(b).measure())
                    .collect()
            })
            .collect();
        Rat::one() - max_weight_matching(&weights)
    }

    /// `D(A, B) = d(A, B) + |N(A) − N(B)|`.
    pub fn distance_big_d(&self, other: &Algebra) -> Rat {
        let count_gap = self.atom_count().abs_diff(other.atom_count()) as i64;
        self.distance_d(other) + Rat::int(count_gap)
    }
}

/// Maximum total weight of a partial one-to-one matching between rows and
/// columns of a nonnegative weight table.
///
/// Bitmask dynamic program over subsets of the smaller side; exponential in
/// `min(rows, cols)`, which stays small for the algebras used here.
pub fn max_weight_matching(weights: &[Vec<Rat>]) -> Rat {
    let rows = weights.len();
    let cols = weights.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Rat::zero();
    }
    let transposed;
    let table: &[Vec<Rat>] = if cols > rows {
        transposed = (0..cols)
            .map(|j| (0..rows).map(|i| weights[i][j].clone()).collect())
            .collect::<Vec<Vec<Rat>>>();
        &transposed
    } else {
        weights
    };
    // Rows now outnumber (or equal) columns; the mask ranges over columns.
    let width = table[0].len();
    let states = 1usize << width;
    let mut best: Vec<Rat> = vec![Rat::zero(); states];
    for row in table {
        let mut next = best.clone();
        for mask in 0..states {
            for (j, w) in row.iter().enumerate() {
                if mask & (1 << j) != 0 && w.is_positive() {
                    let cand = &best[mask ^ (1 << j)] + w;
                    if cand > next[mask] {
                        next[mask] = cand;
                    }
                }
            }
        }
        best = next;
    }
    best.into_iter().max().unwrap_or_else(Rat::zero)
}

/// Partition of a positive-measure set `base` induced by an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceAlgebra {
    base: MSet,
    atoms: Vec<MSet>,
}

impl TraceAlgebra {
    pub fn base(&self) -> &MSet {
        &self.base
    }

    pub fn atoms(&self) -> &[MSet] {
        &self.atoms
    }

    /// Independence under `P↾K(A) = P(A) / P(K)`; both traces must share a base.
    pub fn is_independent(&self, other: &TraceAlgebra) -> bool {
        debug_assert_eq!(self.base, other.base);
        let pk = self.base.measure();
        self.atoms.iter().all(|a| {
            let pa = a.measure();
            other
                .atoms
                .iter()
                .all(|b| a.intersect(b).measure() * &pk == &pa * b.measure())
        })
    }
}

/// Positive weights summing to one: the target atom measures `c_1, …, c_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawProfile", into = "RawProfile")]
pub struct AtomProfile {
    weights: Vec<Rat>,
}

#[derive(Serialize, Deserialize)]
struct RawProfile {
    weights: Vec<Rat>,
}

impl TryFrom<RawProfile> for AtomProfile {
    type Error = Error;

    fn try_from(raw: RawProfile) -> Result<AtomProfile> {
        AtomProfile::new(raw.weights)
    }
}

impl From<AtomProfile> for RawProfile {
    fn from(p: AtomProfile) -> RawProfile {
        RawProfile { weights: p.weights }
    }
}

impl AtomProfile {
    pub fn new(weights: Vec<Rat>) -> Result<AtomProfile> {
        if let Some(index) = weights.iter().position(|w| !w.is_positive()) {
            return Err(Error::NonPositiveWeight { index });
        }
        let total: Rat = weights.iter().sum();
        if total != Rat::one() {
            return Err(Error::ProfileSum(total.to_string()));
        }
        Ok(AtomProfile { weights })
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }
}
