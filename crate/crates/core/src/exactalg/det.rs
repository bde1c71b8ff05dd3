use super::scalar::Ring;
use super::AlgError;

/// Determinant by cofactor expansion along the first row.
///
/// Entries are only added, subtracted and multiplied, so this works over any
/// commutative ring, in particular over polynomials.
pub fn det<T: Ring>(m: &[Vec<T>], ctx: &T::Ctx) -> Result<T, AlgError> {
    let n = m.len();
    for (row, r) in m.iter().enumerate() {
        if r.len() != n {
            return Err(AlgError::NotSquare { rows: n, row, len: r.len() });
        }
    }
    let idx: Vec<usize> = (0..n).collect();
    Ok(minor(m, &idx, 0, ctx))
}

fn minor<T: Ring>(m: &[Vec<T>], cols: &[usize], row: usize, ctx: &T::Ctx) -> T {
    match cols.len() {
        0 => T::one_of(ctx),
        1 => m[row][cols[0]].clone(),
        2 => m[row][cols[0]].mul(&m[row + 1][cols[1]]).sub(&m[row][cols[1]].mul(&m[row + 1][cols[0]])),
        _ => {
            let mut acc = T::zero_of(ctx);
            for (k, &c) in cols.iter().enumerate() {
                let a = &m[row][c];
                if a.is_zero_elem() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = a.mul(&minor(m, &rest, row + 1, ctx));
                acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}
