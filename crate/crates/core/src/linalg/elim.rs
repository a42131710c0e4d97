//! Elimination kernels. Rank uses sparse row insertion (fraction-free over
//! Q, modular over F_p); kernels and coordinate solves use dense reduced row
//! echelon form with leftmost column, lowest row pivoting.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::field::{FieldArith, FractionFreeInt, PrimeArith};

type SparseRow<T> = Vec<(usize, T)>;

/// `a*row - b*pivot` on sorted sparse rows, followed by division by the
/// content of the result.
fn ff_combine<T: FractionFreeInt>(
    a: &T,
    row: &[(usize, T)],
    b: &T,
    pivot: &[(usize, T)],
) -> Option<SparseRow<T>> {
    let g = a.gcd(b);
    let (a, b) = if g.is_unit() {
        (a.clone(), b.clone())
    } else {
        (a.div_exact(&g), b.div_exact(&g))
    };
    let zero = T::from_bigint(&BigInt::from(0))?;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        let (col, v) = if take_row {
            let v = T::mul_sub(&a, &row[i].1, &b, &zero)?;
            i += 1;
            (row[i - 1].0, v)
        } else if take_piv {
            let v = T::mul_sub(&a, &zero, &b, &pivot[j].1)?;
            j += 1;
            (pivot[j - 1].0, v)
        } else {
            let v = T::mul_sub(&a, &row[i].1, &b, &pivot[j].1)?;
            i += 1;
            j += 1;
            (row[i - 1].0, v)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    let mut content: Option<T> = None;
    for (_, v) in &out {
        content = Some(match content {
            None => v.gcd(v),
            Some(c) => c.gcd(v),
        });
        if content.as_ref().is_some_and(|c| c.is_unit()) {
            break;
        }
    }
    if let Some(c) = content {
        if !c.is_unit() && !c.is_zero() {
            for (_, v) in out.iter_mut() {
                *v = v.div_exact(&c);
            }
        }
    }
    Some(out)
}

/// Fraction-free rank of integer rows; `None` on coefficient overflow.
fn ff_rank<T: FractionFreeInt>(rows: &[SparseRow<BigInt>]) -> Option<usize> {
    let mut pivots: HashMap<usize, SparseRow<T>> = HashMap::new();
    for src in rows {
        let mut row: SparseRow<T> = Vec::with_capacity(src.len());
        for (c, v) in src {
            row.push((*c, T::from_bigint(v)?));
        }
        while let Some((lead_col, lead)) = row.first().cloned() {
            match pivots.get(&lead_col) {
                None => {
                    pivots.insert(lead_col, row);
                    break;
                }
                Some(p) => {
                    let a = p[0].1.clone();
                    row = ff_combine(&a, &row, &lead, p)?;
                }
            }
        }
    }
    Some(pivots.len())
}

/// Rank over Q of rows already scaled to integers.
pub(crate) fn rank_integer_rows(rows: &[SparseRow<BigInt>]) -> usize {
    match ff_rank::<i128>(rows) {
        Some(r) => r,
        None => ff_rank::<BigInt>(rows).expect("BigInt elimination cannot overflow"),
    }
}

/// Rank over F_p of rows of residues.
pub(crate) fn rank_mod_p(fp: &PrimeArith, rows: Vec<SparseRow<u64>>) -> usize {
    let mut pivots: HashMap<usize, SparseRow<u64>> = HashMap::new();
    for mut row in rows {
        while let Some((lead_col, lead)) = row.first().cloned() {
            match pivots.get(&lead_col) {
                None => {
                    let inv = fp.inv(&lead);
                    for (_, v) in row.iter_mut() {
                        *v = fp.mul(v, &inv);
                    }
                    pivots.insert(lead_col, row);
                    break;
                }
                Some(p) => {
                    // p is monic: row -= lead * p
                    let mut out = Vec::with_capacity(row.len() + p.len());
                    let (mut i, mut j) = (0, 0);
                    while i < row.len() || j < p.len() {
                        if j >= p.len() || (i < row.len() && row[i].0 < p[j].0) {
                            out.push(row[i]);
                            i += 1;
                        } else if i >= row.len() || p[j].0 < row[i].0 {
                            out.push((p[j].0, fp.neg(&fp.mul(&lead, &p[j].1))));
                            j += 1;
                        } else {
                            let v = fp.sub(&row[i].1, &fp.mul(&lead, &p[j].1));
                            if v != 0 {
                                out.push((row[i].0, v));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                    row = out;
                }
            }
        }
    }
    pivots.len()
}

/// In-place reduced row echelon form; returns the pivot columns in order.
pub(crate) fn rref<A: FieldArith>(a: &A, m: &mut [Vec<A::Elem>], ncols: usize) -> Vec<usize> {
    let nrows = m.len();
    let mut pivot_cols = Vec::new();
    let mut prow = 0;
    for col in 0..ncols {
        if prow >= nrows {
            break;
        }
        let Some(found) = (prow..nrows).find(|&r| !a.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(found, prow);
        let inv = a.inv(&m[prow][col]);
        for v in m[prow].iter_mut() {
            *v = a.mul(v, &inv);
        }
        for r in 0..nrows {
            if r == prow || a.is_zero(&m[r][col]) {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..ncols {
                if a.is_zero(&m[prow][c]) {
                    continue;
                }
                let t = a.mul(&factor, &m[prow][c]);
                m[r][c] = a.sub(&m[r][c], &t);
            }
        }
        pivot_cols.push(col);
        prow += 1;
    }
    pivot_cols
}

/// Kernel basis from the reduced row echelon form: one vector per free
/// column, with a 1 in that column.
pub(crate) fn kernel<A: FieldArith>(a: &A, m: &[Vec<A::Elem>], ncols: usize) -> Vec<Vec<A::Elem>> {
    let mut work = m.to_vec();
    let pivots = rref(a, &mut work, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![a.zero(); ncols];
        v[free] = a.one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = a.neg(&work[row][free]);
        }
        basis.push(v);
    }
    basis
}

/// Incrementally built echelon basis used to pick independent vectors
/// greedily in a fixed order.
pub(crate) struct Echelon<'a, A: FieldArith> {
    arith: &'a A,
    rows: Vec<(usize, Vec<A::Elem>)>,
}

impl<'a, A: FieldArith> Echelon<'a, A> {
    pub(crate) fn new(arith: &'a A) -> Self {
        Echelon {
            arith,
            rows: Vec::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[A::Elem]) -> Vec<A::Elem> {
        let a = self.arith;
        let mut v = v.to_vec();
        for (pc, w) in &self.rows {
            if a.is_zero(&v[*pc]) {
                continue;
            }
            let f = v[*pc].clone();
            for (x, y) in v.iter_mut().zip(w) {
                if !a.is_zero(y) {
                    *x = a.sub(x, &a.mul(&f, y));
                }
            }
        }
        v
    }

    /// Inserts `v` if it is independent of the vectors seen so far.
    pub(crate) fn insert(&mut self, v: &[A::Elem]) -> bool {
        let a = self.arith;
        let mut r = self.reduce(v);
        let Some(pc) = r.iter().position(|x| !a.is_zero(x)) else {
            return false;
        };
        let inv = a.inv(&r[pc]);
        for x in r.iter_mut() {
            *x = a.mul(x, &inv);
        }
        self.rows.push((pc, r));
        true
    }

    pub(crate) fn contains(&self, v: &[A::Elem]) -> bool {
        let a = self.arith;
        self.reduce(v).iter().all(|x| a.is_zero(x))
    }
}

/// Coordinates of `target` in the span of the independent `columns`, or
/// `None` if it lies outside the span.
pub(crate) fn solve_in_span<A: FieldArith>(
    a: &A,
    columns: &[Vec<A::Elem>],
    target: &[A::Elem],
) -> Option<Vec<A::Elem>> {
    let k = columns.len();
    let m = target.len();
    let mut aug: Vec<Vec<A::Elem>> = (0..m)
        .map(|i| {
            let mut row: Vec<A::Elem> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = rref(a, &mut aug, k + 1);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut x = vec![a.zero(); k];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][k].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::super::field::RationalArith;
    use super::*;

    fn int_rows(dense: &[&[i64]]) -> Vec<SparseRow<BigInt>> {
        dense
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(c, v)| (c, BigInt::from(*v)))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn fraction_free_rank_small_cases() {
        assert_eq!(rank_integer_rows(&int_rows(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank_integer_rows(&int_rows(&[&[2, 3], &[4, 5]])), 2);
        assert_eq!(
            rank_integer_rows(&int_rows(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, -1]])),
            2
        );
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX;
        let rows = int_rows(&[&[big, big - 1, 1], &[big - 1, big, 3], &[1, 5, big]]);
        let r = rank_integer_rows(&rows);
        assert_eq!(r, ff_rank::<BigInt>(&rows).unwrap());
        assert_eq!(r, 3);
    }

    #[test]
    fn modular_rank_drops_in_small_characteristic() {
        let fp = PrimeArith::new(2);
        let rows = vec![vec![(0, 1u64)], vec![(0, 1u64), (1, 0u64)]];
        let rows: Vec<SparseRow<u64>> = rows
            .into_iter()
            .map(|r| r.into_iter().filter(|(_, v)| *v != 0).collect())
            .collect();
        assert_eq!(rank_mod_p(&fp, rows), 1);
    }

    #[test]
    fn solve_reports_out_of_span() {
        let q = RationalArith;
        let one = q.one();
        let zero = q.zero();
        let cols = vec![vec![one.clone(), zero.clone()]];
        assert!(solve_in_span(&q, &cols, &[zero.clone(), one.clone()]).is_none());
        let x = solve_in_span(&q, &cols, &[one.clone() + one.clone(), zero]).unwrap();
        assert_eq!(x, vec![one.clone() + one]);
    }
}
