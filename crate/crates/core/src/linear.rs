//! Implied equalities of a system of linear cell constraints.
//!
//! Row-reducing the system with columns ordered from the last-branched cell
//! to the first yields rows whose latest cell is as early as possible. Each
//! such row fixes its latest cell the moment the earlier ones are known,
//! which is what lets the search force cells long before their own lines
//! close.

/// `Σ coefs[i] * x[cells[i]] = target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Equation {
    pub cells: Vec<u8>,
    pub coefs: Vec<i64>,
    pub target: i64,
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn normalize(row: &mut [i128]) {
    let g = row.iter().fold(0, |g, &x| gcd(g, x));
    if g > 1 {
        row.iter_mut().for_each(|x| *x /= g);
    }
}

/// Reduced echelon basis of the row space of `equations` over `cell_count` cells,
/// eliminating in order of decreasing `position[cell]`.
///
/// Returns `None` if the system is inconsistent.
pub(crate) fn echelon(equations: &[Equation], cell_count: usize, position: &[usize]) -> Option<Vec<Equation>> {
    // Last column holds the right-hand side.
    let mut rows: Vec<Vec<i128>> = equations
        .iter()
        .map(|e| {
            let mut row = vec![0i128; cell_count + 1];
            for (&c, &k) in e.cells.iter().zip(&e.coefs) {
                row[c as usize] += k as i128;
            }
            row[cell_count] = e.target as i128;
            row
        })
        .collect();

    let mut columns: Vec<usize> = (0..cell_count).collect();
    columns.sort_by_key(|&c| std::cmp::Reverse(position[c]));

    let mut pivot = 0;
    for &col in &columns {
        let Some(best) = (pivot..rows.len()).filter(|&i| rows[i][col] != 0).min_by_key(|&i| rows[i][col].abs()) else {
            continue;
        };
        rows.swap(pivot, best);
        let p = rows[pivot][col];
        for i in pivot + 1..rows.len() {
            let f = rows[i][col];
            if f == 0 {
                continue;
            }
            for j in 0..=cell_count {
                rows[i][j] = rows[i][j] * p - rows[pivot][j] * f;
            }
            normalize(&mut rows[i]);
        }
        if p < 0 {
            rows[pivot].iter_mut().for_each(|x| *x = -*x);
        }
        normalize(&mut rows[pivot]);
        pivot += 1;
    }

    if rows[pivot..].iter().any(|r| r[cell_count] != 0) {
        return None;
    }
    rows.truncate(pivot);

    // Back-substitute so every row is its leading cell plus non-leading
    // ("free") cells only.
    let leads: Vec<usize> = rows.iter().map(|r| *columns.iter().find(|&&c| r[c] != 0).expect("nonzero row")).collect();
    for i in (0..rows.len()).rev() {
        let col = leads[i];
        let p = rows[i][col];
        for j in 0..rows.len() {
            let f = rows[j][col];
            if j == i || f == 0 {
                continue;
            }
            for k in 0..=cell_count {
                rows[j][k] = rows[j][k] * p - rows[i][k] * f;
            }
            normalize(&mut rows[j]);
            if rows[j][leads[j]] < 0 {
                rows[j].iter_mut().for_each(|x| *x = -*x);
            }
        }
    }
    let basis = rows
        .iter()
        .map(|row| {
            let mut cells = Vec::new();
            let mut coefs = Vec::new();
            for (c, &k) in row[..cell_count].iter().enumerate() {
                if k != 0 {
                    cells.push(c as u8);
                    coefs.push(i64::try_from(k).expect("coefficient fits i64"));
                }
            }
            let target = i64::try_from(row[cell_count]).expect("target fits i64");
            Equation { cells, coefs, target }
        })
        .collect();
    Some(basis)
}
