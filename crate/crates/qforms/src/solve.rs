//! Exact linear algebra over the scalar field, used to express invariant
//! elements in a spanning set of bracket monomials.

use std::collections::BTreeSet;

use crate::pbw::{Element, PBWMonomial};
use crate::scalar::Scalar;

/// Solve `sum_j x_j columns[j] = target` exactly. Returns a particular
/// solution (free variables set to zero), or `None` if the target is not in
/// the span.
pub fn solve_linear(columns: &[Element], target: &Element) -> Option<Vec<Scalar>> {
    let mut rows: BTreeSet<PBWMonomial> = BTreeSet::new();
    for c in columns {
        for (m, _) in c.terms() {
            rows.insert(m.clone());
        }
    }
    for (m, _) in target.terms() {
        rows.insert(m.clone());
    }
    let rows: Vec<PBWMonomial> = rows.into_iter().collect();
    let ncols = columns.len();

    // dense augmented matrix
    let mut mat: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| {
            let mut row: Vec<Scalar> = columns.iter().map(|c| c.coefficient(r)).collect();
            row.push(target.coefficient(r));
            row
        })
        .collect();

    let nrows = mat.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !mat[i][col].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][col].inv().expect("pivot nonzero");
        for v in mat[r].iter_mut() {
            *v = v.mul(&inv);
        }
        for i in 0..nrows {
            if i != r && !mat[i][col].is_zero() {
                let f = mat[i][col].clone();
                for c2 in col..=ncols {
                    let t = mat[r][c2].mul(&f);
                    mat[i][c2] = mat[i][c2].sub(&t);
                }
            }
        }
        pivot_of_col[col] = Some(r);
        r += 1;
        if r == nrows {
            break;
        }
    }
    // consistency: no row of the form (0 .. 0 | nonzero)
    for row in &mat {
        if row[..ncols].iter().all(|v| v.is_zero()) && !row[ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Scalar::zero(); ncols];
    for (col, pv) in pivot_of_col.iter().enumerate() {
        if let Some(pr) = pv {
            x[col] = mat[*pr][ncols].clone();
        }
    }
    Some(x)
}
