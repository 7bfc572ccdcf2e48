//! Sparse fraction-free Gauss-Jordan elimination over the integers.
//!
//! Equations arrive one at a time with rational coefficients, are scaled to
//! primitive integer rows and folded into a reduced row echelon form. Pivots
//! are always the smallest surviving column of a row, so the echelon form
//! and every derived solution depend only on the equations and the column
//! numbering.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::diffring::Q;

/// Column key of the right-hand side; sorts after every unknown.
const RHS: usize = usize::MAX;

type Row = BTreeMap<usize, BigInt>;

#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    nvars: usize,
    /// Pivot column -> fully reduced row with that leading column.
    pivots: BTreeMap<usize, Row>,
    inconsistent: bool,
}

fn make_primitive(row: &mut Row) {
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    let flip = row.values().next().is_some_and(|v| v.is_negative());
    if g.is_zero() {
        return;
    }
    if !g.is_one() || flip {
        let g = if flip { -g } else { g };
        for v in row.values_mut() {
            *v = &*v / &g;
        }
    }
}

/// `row <- lead*row - row[col]*pivot`, which clears `col`.
fn eliminate(row: &mut Row, col: usize, pivot: &Row) {
    let Some(f) = row.remove(&col) else {
        return;
    };
    let lead = &pivot[&col];
    let g = f.gcd(lead);
    let a = lead / &g;
    let b = &f / &g;
    if !a.is_one() {
        for v in row.values_mut() {
            *v *= &a;
        }
    }
    for (&c, v) in pivot {
        if c == col {
            continue;
        }
        let e = row.entry(c).or_insert_with(BigInt::zero);
        *e -= &b * v;
        if e.is_zero() {
            row.remove(&c);
        }
    }
    make_primitive(row);
}

fn to_integer_row<I: IntoIterator<Item = (usize, Q)>>(coeffs: I, rhs: Q) -> Row {
    let mut rat: BTreeMap<usize, Q> = BTreeMap::new();
    for (c, v) in coeffs {
        *rat.entry(c).or_insert_with(Q::zero) += v;
    }
    if !rhs.is_zero() {
        rat.insert(RHS, rhs);
    }
    rat.retain(|_, v| !v.is_zero());
    let den = rat
        .values()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut row: Row = rat
        .into_iter()
        .map(|(c, v)| (c, (v * Q::from_integer(den.clone())).to_integer()))
        .collect();
    make_primitive(&mut row);
    row
}

impl LinearSystem {
    pub fn new(nvars: usize) -> Self {
        LinearSystem {
            nvars,
            ..Default::default()
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Adds `Σ coeffs[j]·x_j = rhs`. Columns beyond `nvars` grow the system.
    pub fn add_equation<I: IntoIterator<Item = (usize, Q)>>(&mut self, coeffs: I, rhs: Q) {
        let mut row = to_integer_row(coeffs, rhs);
        if let Some((&last, _)) = row.range(..RHS).next_back() {
            self.nvars = self.nvars.max(last + 1);
        }
        let hits: Vec<usize> = row
            .keys()
            .copied()
            .filter(|c| self.pivots.contains_key(c))
            .collect();
        for c in hits {
            eliminate(&mut row, c, &self.pivots[&c]);
        }
        let Some((&lead, _)) = row.iter().next() else {
            return;
        };
        if lead == RHS {
            self.inconsistent = true;
            return;
        }
        for other in self.pivots.values_mut() {
            if other.contains_key(&lead) {
                eliminate(other, lead, &row);
            }
        }
        self.pivots.insert(lead, row);
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    /// The solution with every free variable set to zero.
    pub fn particular(&self) -> Option<Vec<Q>> {
        if self.inconsistent {
            return None;
        }
        let mut x = vec![Q::zero(); self.nvars];
        for (&c, row) in &self.pivots {
            if let Some(r) = row.get(&RHS) {
                x[c] = Q::new(r.clone(), row[&c].clone());
            }
        }
        Some(x)
    }

    /// A basis of the homogeneous solution space, one vector per free
    /// column in increasing column order.
    pub fn nullspace(&self) -> Vec<BTreeMap<usize, Q>> {
        let mut by_free: BTreeMap<usize, BTreeMap<usize, Q>> = (0..self.nvars)
            .filter(|c| !self.pivots.contains_key(c))
            .map(|c| (c, BTreeMap::from([(c, Q::one())])))
            .collect();
        for (&p, row) in &self.pivots {
            let lead = &row[&p];
            for (&c, v) in row.range(p + 1..RHS) {
                if let Some(vec) = by_free.get_mut(&c) {
                    vec.insert(p, -Q::new(v.clone(), lead.clone()));
                }
            }
        }
        by_free.into_values().collect()
    }

    /// Unknowns fixed by the equations alone: pivot rows without free
    /// columns.
    pub fn determined(&self) -> Vec<(usize, Q)> {
        self.pivots
            .iter()
            .filter(|(_, row)| row.range(..RHS).count() == 1)
            .map(|(&c, row)| {
                let r = row.get(&RHS).cloned().unwrap_or_default();
                (c, Q::new(r, row[&c].clone()))
            })
            .collect()
    }

    /// Dimension of the solution space.
    pub fn nullity(&self) -> usize {
        self.nvars - self.rank()
    }
}
