//! Row-vector linear algebra over the prime fields GF(p).
//!
//! Vectors are `Vec<u8>` with entries reduced mod p, matrices are slices
//! of row vectors, and maps act on the right: the image of `x` under the
//! matrix `M` is `x * M`. Everything here is sized for tiny ambient
//! dimensions, so plain Gaussian elimination is used throughout.

pub type Row = Vec<u8>;

pub fn inv_mod(p: u8, a: u8) -> u8 {
    debug_assert!(!a.is_multiple_of(p));
    // p is 2, 3 or 5; a scan is as good as anything.
    (1..p)
        .find(|&x| (x as u16 * a as u16) % p as u16 == 1)
        .unwrap()
}

pub fn add(p: u8, a: &[u8], b: &[u8]) -> Row {
    a.iter().zip(b).map(|(&x, &y)| (x + y) % p).collect()
}

pub fn scale(p: u8, c: u8, a: &[u8]) -> Row {
    a.iter()
        .map(|&x| (c as u16 * x as u16 % p as u16) as u8)
        .collect()
}

pub fn is_zero(a: &[u8]) -> bool {
    a.iter().all(|&x| x == 0)
}

/// `x * M` for a row vector `x` of length `m.len()`.
pub fn row_times_matrix(p: u8, x: &[u8], m: &[Row]) -> Row {
    debug_assert_eq!(x.len(), m.len());
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = vec![0u16; cols];
    for (xi, row) in x.iter().zip(m) {
        if *xi != 0 {
            for (o, &mj) in out.iter_mut().zip(row) {
                *o += *xi as u16 * mj as u16;
            }
        }
    }
    out.into_iter().map(|v| (v % p as u16) as u8).collect()
}

pub fn mat_mul(p: u8, a: &[Row], b: &[Row]) -> Vec<Row> {
    a.iter().map(|row| row_times_matrix(p, row, b)).collect()
}

/// Reduced row echelon form; zero rows are dropped, so the result is the
/// canonical basis of the row space.
pub fn rref(p: u8, rows: &[Row]) -> Vec<Row> {
    let mut m: Vec<Row> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(r) = (pivot_row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(pivot_row, r);
        let inv = inv_mod(p, m[pivot_row][col]);
        m[pivot_row] = scale(p, inv, &m[pivot_row]);
        for r in 0..m.len() {
            if r != pivot_row && m[r][col] != 0 {
                let c = (p - m[r][col]) % p;
                m[r] = add(p, &m[r], &scale(p, c, &m[pivot_row]));
            }
        }
        pivot_row += 1;
        if pivot_row == m.len() {
            break;
        }
    }
    m.truncate(pivot_row);
    m
}

pub fn rank(p: u8, rows: &[Row]) -> usize {
    rref(p, rows).len()
}

/// Remainder of `v` after reduction against RREF rows; zero iff `v` is in the span.
pub fn reduce(p: u8, rref_rows: &[Row], v: &[u8]) -> Row {
    let mut v = v.to_vec();
    for row in rref_rows {
        let lead = row
            .iter()
            .position(|&x| x != 0)
            .expect("rref rows are nonzero");
        if v[lead] != 0 {
            let c = (p - v[lead]) % p;
            v = add(p, &v, &scale(p, c, row));
        }
    }
    v
}

pub fn in_span(p: u8, rref_rows: &[Row], v: &[u8]) -> bool {
    is_zero(&reduce(p, rref_rows, v))
}

/// Coordinates of `v` in the given independent rows, solving `c * basis = v`.
pub fn coords_in_basis(p: u8, basis: &[Row], v: &[u8]) -> Option<Row> {
    let k = basis.len();
    let n = v.len();
    if k == 0 {
        return is_zero(v).then(Vec::new);
    }
    // Augmented system basis^T * c = v^T, n equations in k unknowns.
    let mut aug: Vec<Row> = (0..n)
        .map(|j| {
            let mut row: Row = basis.iter().map(|b| b[j]).collect();
            row.push(v[j]);
            row
        })
        .collect();
    aug = rref(p, &aug);
    let mut coords = vec![0u8; k];
    for row in &aug {
        let lead = row.iter().position(|&x| x != 0).unwrap();
        if lead == k {
            return None; // inconsistent
        }
        coords[lead] = row[k];
    }
    Some(coords)
}

/// Canonical (RREF) basis of the left null space `{x : x * M = 0}`.
pub fn nullspace(p: u8, m: &[Row]) -> Vec<Row> {
    let n = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    // x * M = 0 is the system M^T x^T = 0: `cols` equations in n unknowns.
    let mt: Vec<Row> = (0..cols)
        .map(|j| (0..n).map(|i| m[i][j]).collect())
        .collect();
    let red = rref(p, &mt);
    let mut pivots = vec![false; n];
    for row in &red {
        pivots[row.iter().position(|&x| x != 0).unwrap()] = true;
    }
    let mut basis = Vec::new();
    for free in 0..n {
        if pivots[free] {
            continue;
        }
        let mut x = vec![0u8; n];
        x[free] = 1;
        for row in &red {
            let lead = row.iter().position(|&v| v != 0).unwrap();
            x[lead] = (p - row[free] % p) % p;
        }
        basis.push(x);
    }
    rref(p, &basis)
}

/// Solve `P * M = T` for `M`, where the rows of `P` form a basis (P invertible).
pub fn solve_matrix(p: u8, basis_rows: &[Row], targets: &[Row]) -> Vec<Row> {
    let n = basis_rows.len();
    debug_assert!(n > 0 && basis_rows[0].len() == n);
    let tcols = targets.first().map_or(0, |r| r.len());
    let mut aug: Vec<Row> = basis_rows
        .iter()
        .zip(targets)
        .map(|(b, t)| {
            let mut row = b.clone();
            row.extend_from_slice(t);
            row
        })
        .collect();
    aug = rref(p, &aug);
    assert_eq!(aug.len(), n, "basis rows must be independent");
    // After RREF the left block is the identity, so row i holds e_i * M.
    let mut m = vec![vec![0u8; tcols]; n];
    for row in &aug {
        let lead = row.iter().position(|&x| x != 0).unwrap();
        debug_assert!(lead < n);
        m[lead] = row[n..].to_vec();
    }
    m
}
