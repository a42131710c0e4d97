//! Exact linear algebra over Q and prime fields.
//!
//! Matrices are sparse and carry rational entries; over F_p an entry is
//! read through its residue, and results computed over F_p are returned
//! with entries in `0..p`. Ranks go through sparse elimination. Kernels,
//! homology bases and induced maps go through dense reduced echelon form
//! with leftmost-column, lowest-row pivoting, so the bases they return are
//! reproducible. Only ranks and zero patterns of induced maps are
//! canonical; the bases themselves are a convention of this module.

mod elim;
mod field;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use field::{FieldSpec, MAX_CHARACTERISTIC};

use elim::Echelon;
use field::{FieldArith, PrimeArith, RationalArith};

/// A vector of field elements, written as rationals.
pub type Vector = Vec<BigRational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not a supported prime characteristic")]
    NotPrime(u64),
    #[error("unrecognised field '{0}' (expected 'q' or 'fp:<prime>')")]
    BadFieldSpec(String),
    #[error("{value} has no image in characteristic {characteristic}")]
    NotInField { value: String, characteristic: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("consecutive maps do not compose to zero: {0}")]
    NotAComplex(String),
    #[error("map does not induce a map on homology: {0}")]
    NotAChainMap(String),
}

/// Sparse matrix with rational entries; absent entries are zero and zero
/// entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigRational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), BigRational::one());
        }
        m
    }

    /// Dense integer rows; every row must have the same length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigRational::from_integer(BigInt::from(*v)))?;
            }
        }
        Ok(m)
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self, LinalgError> {
        let mut m = Matrix::zeros(rows, cols);
        for (i, j, v) in triplets {
            m.set(i, j, BigRational::from_integer(BigInt::from(v)))?;
        }
        Ok(m)
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self, LinalgError> {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(LinalgError::DimensionMismatch(format!(
                    "column {j} has length {}, expected {rows}",
                    c.len()
                )));
            }
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone())?;
            }
        }
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> BigRational {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigRational) -> Result<(), LinalgError> {
        if row >= self.rows || col >= self.cols {
            return Err(LinalgError::IndexOutOfRange {
                row,
                col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
        Ok(())
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(i, j), v)| ((j, i), v.clone()))
                .collect(),
        }
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn apply(&self, v: &[BigRational]) -> Result<Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = vec![BigRational::zero(); self.rows];
        for (&(i, j), a) in &self.entries {
            if !v[j].is_zero() {
                out[i] += a * &v[j];
            }
        }
        Ok(out)
    }

    /// Row-major dense view.
    pub fn to_dense(&self) -> Vec<Vector> {
        let mut d = vec![vec![BigRational::zero(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            d[i][j] = v.clone();
        }
        d
    }

    fn dense_over<A: FieldArith>(&self, a: &A) -> Result<Vec<Vec<A::Elem>>, LinalgError> {
        let mut d = vec![vec![a.zero(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            d[i][j] = a.embed(v)?;
        }
        Ok(d)
    }

    /// Entries rewritten as canonical field representatives.
    pub fn reduced(&self, f: FieldSpec) -> Result<Matrix, LinalgError> {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            let r = f.reduce(v)?;
            if !r.is_zero() {
                m.entries.insert((i, j), r);
            }
        }
        Ok(m)
    }
}

macro_rules! with_field {
    ($f:expr, |$a:ident| $body:expr) => {
        match $f {
            FieldSpec::Rationals => {
                let $a = &RationalArith;
                $body
            }
            FieldSpec::PrimeField(p) => {
                let $a = &PrimeArith::new(p);
                $body
            }
        }
    };
}

/// Rank of `m` over `f`.
pub fn rank(m: &Matrix, f: FieldSpec) -> Result<usize, LinalgError> {
    if m.is_zero() {
        return Ok(0);
    }
    let mut grouped: Vec<Vec<(usize, &BigRational)>> = Vec::new();
    let mut current = usize::MAX;
    for (&(i, j), v) in &m.entries {
        if i != current {
            grouped.push(Vec::new());
            current = i;
        }
        grouped.last_mut().expect("pushed above").push((j, v));
    }
    match f {
        FieldSpec::Rationals => {
            let rows: Vec<Vec<(usize, BigInt)>> = grouped
                .into_iter()
                .map(|row| {
                    let den = row
                        .iter()
                        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
                    row.into_iter()
                        .map(|(j, v)| (j, v.numer() * (&den / v.denom())))
                        .collect()
                })
                .collect();
            Ok(elim::rank_integer_rows(&rows))
        }
        FieldSpec::PrimeField(p) => {
            let fp = PrimeArith::new(p);
            let mut rows = Vec::with_capacity(grouped.len());
            for row in grouped {
                let mut r = Vec::with_capacity(row.len());
                for (j, v) in row {
                    let e = fp.embed(v)?;
                    if e != 0 {
                        r.push((j, e));
                    }
                }
                rows.push(r);
            }
            debug_assert_eq!(fp.modulus(), p);
            Ok(elim::rank_mod_p(&fp, rows))
        }
    }
}

/// Rank through dense reduced echelon form; an independent route to
/// [`rank`], kept for cross-checking.
pub fn rank_dense(m: &Matrix, f: FieldSpec) -> Result<usize, LinalgError> {
    with_field!(f, |a| {
        let mut d = m.dense_over(a)?;
        Ok(elim::rref(a, &mut d, m.cols).len())
    })
}

/// Basis of the kernel of `m` over `f`, one vector per non-pivot column of
/// the reduced echelon form (free column set to 1).
pub fn kernel_basis(m: &Matrix, f: FieldSpec) -> Result<Vec<Vector>, LinalgError> {
    with_field!(f, |a| {
        let d = m.dense_over(a)?;
        Ok(elim::kernel(a, &d, m.cols)
            .into_iter()
            .map(|v| v.iter().map(|x| a.lift(x)).collect())
            .collect())
    })
}

/// Product `a * b` over `f`.
pub fn mat_mul(a: &Matrix, b: &Matrix, f: FieldSpec) -> Result<Matrix, LinalgError> {
    if a.cols != b.rows {
        return Err(LinalgError::DimensionMismatch(format!(
            "{}x{} times {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut by_row: BTreeMap<usize, Vec<(usize, &BigRational)>> = BTreeMap::new();
    for (&(k, j), v) in &b.entries {
        by_row.entry(k).or_default().push((j, v));
    }
    let mut acc: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();
    for (&(i, k), x) in &a.entries {
        if let Some(row) = by_row.get(&k) {
            for (j, y) in row {
                *acc.entry((i, *j)).or_insert_with(BigRational::zero) += x * *y;
            }
        }
    }
    let mut out = Matrix::zeros(a.rows, b.cols);
    for ((i, j), v) in acc {
        out.set(i, j, f.reduce(&v)?)?;
    }
    Ok(out)
}

/// A chosen basis of H = ker(outgoing) / im(incoming) at the middle term.
struct HomologyBasis<E> {
    /// Independent columns of the incoming map, in column order.
    image: Vec<Vec<E>>,
    /// Cycle representatives, taken greedily from the kernel basis.
    reps: Vec<Vec<E>>,
}

fn homology_basis<A: FieldArith>(
    a: &A,
    incoming: &Matrix,
    outgoing: &Matrix,
) -> Result<HomologyBasis<A::Elem>, LinalgError> {
    let din = incoming.dense_over(a)?;
    let dout = outgoing.dense_over(a)?;
    let mut ech = Echelon::new(a);
    let mut image = Vec::new();
    for j in 0..incoming.cols {
        let col: Vec<A::Elem> = din.iter().map(|r| r[j].clone()).collect();
        if ech.insert(&col) {
            image.push(col);
        }
    }
    let mut reps = Vec::new();
    for z in elim::kernel(a, &dout, outgoing.cols) {
        if ech.insert(&z) {
            reps.push(z);
        }
    }
    debug_assert_eq!(ech.rank(), image.len() + reps.len());
    Ok(HomologyBasis { image, reps })
}

fn check_complex(
    incoming: &Matrix,
    outgoing: &Matrix,
    f: FieldSpec,
    which: &str,
) -> Result<(), LinalgError> {
    if incoming.rows != outgoing.cols {
        return Err(LinalgError::DimensionMismatch(format!(
            "{which}: incoming map has {} rows but outgoing map has {} columns",
            incoming.rows, outgoing.cols
        )));
    }
    if !mat_mul(outgoing, incoming, f)?.is_zero() {
        return Err(LinalgError::NotAComplex(which.to_string()));
    }
    Ok(())
}

/// Matrix of the map induced on middle homology by `chain_map`, between
/// the three-term complexes `src_in -> src_out` and `dst_in -> dst_out`.
///
/// `chain_map` acts on the middle terms. It must send cycles to cycles and
/// boundaries to boundaries; otherwise the call is rejected. The result has
/// one column per source homology basis vector.
pub fn induced_map_on_homology(
    src_in: &Matrix,
    dst_in: &Matrix,
    src_out: &Matrix,
    dst_out: &Matrix,
    chain_map: &Matrix,
    f: FieldSpec,
) -> Result<Matrix, LinalgError> {
    check_complex(src_in, src_out, f, "source complex")?;
    check_complex(dst_in, dst_out, f, "target complex")?;
    if chain_map.cols != src_out.cols || chain_map.rows != dst_out.cols {
        return Err(LinalgError::DimensionMismatch(format!(
            "chain map is {}x{}, middle terms have dimensions {} and {}",
            chain_map.rows, chain_map.cols, src_out.cols, dst_out.cols
        )));
    }
    with_field!(f, |a| induced_impl(
        a, src_in, dst_in, src_out, dst_out, chain_map
    ))
}

fn induced_impl<A: FieldArith>(
    a: &A,
    src_in: &Matrix,
    dst_in: &Matrix,
    src_out: &Matrix,
    dst_out: &Matrix,
    chain_map: &Matrix,
) -> Result<Matrix, LinalgError> {
    let src = homology_basis(a, src_in, src_out)?;
    let dst = homology_basis(a, dst_in, dst_out)?;
    let phi = chain_map.dense_over(a)?;
    let dout = dst_out.dense_over(a)?;
    let apply = |m: &[Vec<A::Elem>], v: &[A::Elem]| -> Vec<A::Elem> {
        m.iter()
            .map(|row| {
                row.iter().zip(v).fold(a.zero(), |acc, (x, y)| {
                    if a.is_zero(x) || a.is_zero(y) {
                        acc
                    } else {
                        a.add(&acc, &a.mul(x, y))
                    }
                })
            })
            .collect()
    };

    // boundaries must land in boundaries
    let mut dst_image = Echelon::new(a);
    for b in &dst.image {
        dst_image.insert(b);
    }
    for b in &src.image {
        let img = apply(&phi, b);
        if !dst_image.contains(&img) {
            return Err(LinalgError::NotAChainMap(
                "a boundary is sent outside the target boundaries".into(),
            ));
        }
    }

    let mut basis = dst.image.clone();
    basis.extend(dst.reps.iter().cloned());
    let k = dst.image.len();
    let mut out = Matrix::zeros(dst.reps.len(), src.reps.len());
    for (col, z) in src.reps.iter().enumerate() {
        let img = apply(&phi, z);
        if apply(&dout, &img).iter().any(|x| !a.is_zero(x)) {
            return Err(LinalgError::NotAChainMap(
                "a cycle is sent to a non-cycle".into(),
            ));
        }
        let coords = elim::solve_in_span(a, &basis, &img)
            .expect("a cycle lies in the span of boundaries and representatives");
        for (row, c) in coords[k..].iter().enumerate() {
            if !a.is_zero(c) {
                out.entries.insert((row, col), a.lift(c));
            }
        }
    }
    Ok(out)
}

/// Dimension of ker(outgoing) / im(incoming).
pub fn homology_dim(
    incoming: &Matrix,
    outgoing: &Matrix,
    f: FieldSpec,
) -> Result<usize, LinalgError> {
    if incoming.rows != outgoing.cols {
        return Err(LinalgError::DimensionMismatch(format!(
            "incoming map has {} rows but outgoing map has {} columns",
            incoming.rows, outgoing.cols
        )));
    }
    Ok(outgoing.cols - rank(outgoing, f)? - rank(incoming, f)?)
}
