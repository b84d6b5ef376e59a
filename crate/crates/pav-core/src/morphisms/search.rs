//! Bounded exhaustive searches for isogeny and embedding matrices: all
//! integer solutions of the Gram equations with entries in [-bound, bound],
//! in lexicographic (row-major) order.
//!
//! Two engines produce the solutions:
//!
//! * a generic column-by-column DFS over the entry box, placing columns in
//!   pairing order so the bilinear constraints bind as early as possible
//!   (used for embedding searches and as the fallback for isogeny ones);
//!
//! * a block solver for isogeny targets: writing M = [[A, B], [C, D]] in
//!   n x n blocks, the Gram equation says A^T D_e C and B^T D_e D are
//!   symmetric and A^T D_e D - C^T D_e B = D_d. For fixed (A, C) the last
//!   condition is linear in (B, D) and decouples column by column, so the
//!   engine enumerates (A, C), solves the integer linear system per column
//!   and walks the bounded solution lattice.
//!
//! Searches may be partitioned across worker threads by leading prefix; the
//! final list is sorted, so the output is identical for any worker count.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::exact::IntMatrix;
use crate::morphisms::embedding::check_embedding_type;
use crate::symplectic::{product_gram, type_divides, PolarizationType};

/// A prescribed column for the embedding search: the full column vector at
/// the given column index. Prescribed entries are exempt from the bound.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColumnConstraint {
    pub column: usize,
    pub values: Vec<BigInt>,
}

/// All M with entries in [-bound, bound] and M^T gram(e) M = gram(d), in
/// row-major lexicographic order. Mismatched or non-divisible type chains
/// admit no solutions and yield an empty list.
pub fn search_isogeny_matrices(
    d: &PolarizationType,
    e: &PolarizationType,
    bound: u32,
) -> Vec<IntMatrix> {
    search_isogeny_matrices_with_jobs(d, e, bound, 1)
}

pub fn search_isogeny_matrices_with_jobs(
    d: &PolarizationType,
    e: &PolarizationType,
    bound: u32,
    jobs: usize,
) -> Vec<IntMatrix> {
    if d.dim() != e.dim() {
        return Vec::new();
    }
    if d.dim() == 0 {
        return vec![IntMatrix::zeros(0, 0)];
    }
    if !type_divides(e, d).expect("dimensions already checked") {
        return Vec::new();
    }
    let small_d: Option<Vec<i128>> = d.divisors().iter().map(|x| x.to_i128()).collect();
    let small_e: Option<Vec<i128>> = e.divisors().iter().map(|x| x.to_i128()).collect();
    let mut found = match (small_d, small_e) {
        (Some(dd), Some(ee)) if block_values_fit(&dd, &ee, bound) => {
            block_search(&dd, &ee, bound, jobs)
        }
        _ => {
            let ambient = e.gram().into_matrix();
            let target = d.gram().into_matrix();
            generic_search(&ambient, &target, bound, &BTreeMap::new(), jobs)
        }
    };
    sort_matrices(&mut found);
    found
}

/// All M with entries in [-bound, bound] (prescribed columns exempt)
/// passing the full embedding check for (d, d_comp, e), in row-major
/// lexicographic order.
pub fn search_embedding_matrices(
    d: &PolarizationType,
    d_comp: &PolarizationType,
    e: &PolarizationType,
    bound: u32,
    constraints: &[ColumnConstraint],
) -> Vec<IntMatrix> {
    search_embedding_matrices_with_jobs(d, d_comp, e, bound, constraints, 1)
}

pub fn search_embedding_matrices_with_jobs(
    d: &PolarizationType,
    d_comp: &PolarizationType,
    e: &PolarizationType,
    bound: u32,
    constraints: &[ColumnConstraint],
    jobs: usize,
) -> Vec<IntMatrix> {
    let gram_solutions = search_embedding_gram_matrices_with_jobs(d, d_comp, e, bound, constraints, jobs);
    let mut found: Vec<IntMatrix> = gram_solutions
        .into_iter()
        .filter(|m| {
            check_embedding_type(d, d_comp, e, m)
                .map(|r| r.valid)
                .unwrap_or(false)
        })
        .collect();
    sort_matrices(&mut found);
    found
}

/// Solutions of the Gram product equation alone, without the saturation
/// filter: the raw candidate family the oracle-equivalence suites compare
/// the two saturation routes on.
pub fn search_embedding_gram_matrices(
    d: &PolarizationType,
    d_comp: &PolarizationType,
    e: &PolarizationType,
    bound: u32,
    constraints: &[ColumnConstraint],
) -> Vec<IntMatrix> {
    search_embedding_gram_matrices_with_jobs(d, d_comp, e, bound, constraints, 1)
}

pub fn search_embedding_gram_matrices_with_jobs(
    d: &PolarizationType,
    d_comp: &PolarizationType,
    e: &PolarizationType,
    bound: u32,
    constraints: &[ColumnConstraint],
    jobs: usize,
) -> Vec<IntMatrix> {
    if d.dim() + d_comp.dim() != e.dim() {
        return Vec::new();
    }
    let k = 2 * e.dim();
    if k == 0 {
        return vec![IntMatrix::zeros(0, 0)];
    }
    let mut fixed = BTreeMap::new();
    for c in constraints {
        if c.column >= k || c.values.len() != k {
            return Vec::new();
        }
        fixed.insert(c.column, c.values.clone());
    }
    let ambient = e.gram().into_matrix();
    let target = product_gram(d, d_comp);
    let mut found = generic_search(&ambient, &target, bound, &fixed, jobs);
    sort_matrices(&mut found);
    found
}

fn sort_matrices(ms: &mut [IntMatrix]) {
    ms.sort_unstable_by(|a, b| a.entries().cmp(b.entries()));
}

// ---------------------------------------------------------------------------
// Generic column DFS, generic over the bracket arithmetic: machine i128
// whenever the values provably fit, arbitrary precision otherwise.
// ---------------------------------------------------------------------------

trait EngineScalar: Clone + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn from_i64(x: i64) -> Self;
    fn try_from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn mul_acc(acc: &mut Self, a: &Self, b: &Self);
}

impl EngineScalar for i128 {
    fn zero() -> Self {
        0
    }
    fn from_i64(x: i64) -> Self {
        x as i128
    }
    fn try_from_big(x: &BigInt) -> Option<Self> {
        x.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn mul_acc(acc: &mut Self, a: &Self, b: &Self) {
        *acc += a * b;
    }
}

impl EngineScalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn try_from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn mul_acc(acc: &mut Self, a: &Self, b: &Self) {
        *acc += a * b;
    }
}

/// Sparse rows of an integer matrix as (column, coefficient) lists.
fn sparse_rows<T: EngineScalar>(m: &IntMatrix) -> Option<Vec<Vec<(usize, T)>>> {
    let mut out = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = Vec::new();
        for j in 0..m.cols() {
            if !m[(i, j)].is_zero() {
                row.push((j, T::try_from_big(&m[(i, j)])?));
            }
        }
        out.push(row);
    }
    Some(out)
}

/// Whether every value the i128 engine can meet fits with headroom: the
/// brackets are bounded by k * e_max * (entry ceiling)^2.
fn i128_engine_fits(
    ambient: &IntMatrix,
    target: &IntMatrix,
    bound: u32,
    fixed: &BTreeMap<usize, Vec<BigInt>>,
) -> bool {
    let mut entry_max: i128 = bound as i128;
    for col in fixed.values() {
        for v in col {
            match v.to_i128() {
                Some(x) => entry_max = entry_max.max(x.abs()),
                None => return false,
            }
        }
    }
    let mut coef_max: i128 = 1;
    for m in [ambient, target] {
        for v in m.entries() {
            match v.to_i128() {
                Some(x) => coef_max = coef_max.max(x.abs()),
                None => return false,
            }
        }
    }
    let k = ambient.rows() as i128;
    coef_max
        .checked_mul(entry_max)
        .and_then(|x| x.checked_mul(entry_max))
        .and_then(|x| x.checked_mul(k))
        .map(|x| x < i128::MAX / 1024)
        .unwrap_or(false)
}

/// Column placement order: prescribed columns first, then free columns with
/// each column followed by its pairing partner in the target form.
fn visit_order(target: &IntMatrix, fixed: &BTreeMap<usize, Vec<BigInt>>) -> Vec<usize> {
    let k = target.rows();
    let mut order: Vec<usize> = fixed.keys().copied().collect();
    let mut seen = vec![false; k];
    for &j in &order {
        seen[j] = true;
    }
    for j in 0..k {
        if seen[j] {
            continue;
        }
        seen[j] = true;
        order.push(j);
        if let Some(p) = (0..k).find(|&p| !seen[p] && !target[(j, p)].is_zero()) {
            seen[p] = true;
            order.push(p);
        }
    }
    order
}

struct GenericCtx<'a, T: EngineScalar> {
    k: usize,
    ambient_rows: &'a [Vec<(usize, T)>],
    target: &'a [T],
    order: &'a [usize],
    fixed: &'a BTreeMap<usize, Vec<T>>,
    box_candidates: &'a [Vec<T>],
}

fn generic_search(
    ambient: &IntMatrix,
    target: &IntMatrix,
    bound: u32,
    fixed: &BTreeMap<usize, Vec<BigInt>>,
    jobs: usize,
) -> Vec<IntMatrix> {
    if i128_engine_fits(ambient, target, bound, fixed) {
        generic_search_typed::<i128>(ambient, target, bound, fixed, jobs)
    } else {
        generic_search_typed::<BigInt>(ambient, target, bound, fixed, jobs)
    }
}

fn generic_search_typed<T: EngineScalar>(
    ambient: &IntMatrix,
    target: &IntMatrix,
    bound: u32,
    fixed_big: &BTreeMap<usize, Vec<BigInt>>,
    jobs: usize,
) -> Vec<IntMatrix> {
    let k = ambient.rows();
    let ambient_rows = sparse_rows::<T>(ambient).expect("engine choice guarantees conversion");
    let target_vals: Vec<T> = target
        .entries()
        .iter()
        .map(|v| T::try_from_big(v).expect("engine choice guarantees conversion"))
        .collect();
    let fixed: BTreeMap<usize, Vec<T>> = fixed_big
        .iter()
        .map(|(&c, vals)| {
            (
                c,
                vals.iter()
                    .map(|v| T::try_from_big(v).expect("engine choice guarantees conversion"))
                    .collect(),
            )
        })
        .collect();
    let order = visit_order(target, fixed_big);
    let box_candidates = box_vectors::<T>(k, bound as i64);
    let ctx = GenericCtx {
        k,
        ambient_rows: &ambient_rows,
        target: &target_vals,
        order: &order,
        fixed: &fixed,
        box_candidates: &box_candidates,
    };
    let first = order[0];
    let first_candidates: &[Vec<T>] = match ctx.fixed.get(&first) {
        Some(v) => std::slice::from_ref(v),
        None => &box_candidates,
    };
    let jobs = jobs.max(1).min(first_candidates.len().max(1));
    if jobs <= 1 {
        let mut out = Vec::new();
        let mut cols: Vec<Option<Vec<T>>> = vec![None; k];
        for cand in first_candidates {
            place_and_recurse(&ctx, cand, 0, &mut cols, &mut out);
        }
        return out;
    }
    let chunk = first_candidates.len().div_ceil(jobs);
    let mut results: Vec<Vec<IntMatrix>> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for part in first_candidates.chunks(chunk) {
            let ctx_ref = &ctx;
            handles.push(scope.spawn(move || {
                let mut out = Vec::new();
                let mut cols: Vec<Option<Vec<T>>> = vec![None; ctx_ref.k];
                for cand in part {
                    place_and_recurse(ctx_ref, cand, 0, &mut cols, &mut out);
                }
                out
            }));
        }
        for h in handles {
            results.push(h.join().expect("search worker panicked"));
        }
    });
    results.into_iter().flatten().collect()
}

/// The whole box [-bound, bound]^k, odometer order.
fn box_vectors<T: EngineScalar>(k: usize, bound: i64) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut current = vec![-bound; k];
    loop {
        out.push(current.iter().map(|&x| T::from_i64(x)).collect());
        let mut idx = k;
        loop {
            if idx == 0 {
                return out;
            }
            idx -= 1;
            if current[idx] < bound {
                current[idx] += 1;
                for v in current.iter_mut().skip(idx + 1) {
                    *v = -bound;
                }
                break;
            }
        }
    }
}

fn apply_sparse<T: EngineScalar>(rows: &[Vec<(usize, T)>], v: &[T]) -> Vec<T> {
    rows.iter()
        .map(|row| {
            let mut acc = T::zero();
            for (j, c) in row {
                T::mul_acc(&mut acc, c, &v[*j]);
            }
            acc
        })
        .collect()
}

fn dot<T: EngineScalar>(a: &[T], b: &[T]) -> T {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        T::mul_acc(&mut acc, x, y);
    }
    acc
}

fn place_and_recurse<T: EngineScalar>(
    ctx: &GenericCtx<'_, T>,
    cand: &[T],
    depth: usize,
    cols: &mut Vec<Option<Vec<T>>>,
    out: &mut Vec<IntMatrix>,
) {
    let j = ctx.order[depth];
    // Bracket constraints against every placed column: c_i^T E c_j must hit
    // the target entry (the antisymmetric partner is then automatic).
    let ecand = apply_sparse(ctx.ambient_rows, cand);
    for (i, slot) in cols.iter().enumerate() {
        if let Some(ci) = slot {
            if dot(ci, &ecand) != ctx.target[i * ctx.k + j] {
                return;
            }
        }
    }
    cols[j] = Some(cand.to_vec());
    if depth + 1 == ctx.k {
        let m = IntMatrix::from_fn(ctx.k, ctx.k, |r, c| {
            cols[c].as_ref().expect("all columns placed")[r].to_big()
        });
        out.push(m);
    } else {
        let next = ctx.order[depth + 1];
        match ctx.fixed.get(&next) {
            Some(v) => {
                let v = v.clone();
                place_and_recurse(ctx, &v, depth + 1, cols, out);
            }
            None => {
                for cand_next in ctx.box_candidates {
                    place_and_recurse(ctx, cand_next, depth + 1, cols, out);
                }
            }
        }
    }
    cols[j] = None;
}

// ---------------------------------------------------------------------------
// Block solver for isogeny targets.
// ---------------------------------------------------------------------------

fn block_values_fit(d: &[i128], e: &[i128], bound: u32) -> bool {
    let b = bound as i128;
    let n = d.len() as i128;
    let e_max = e.iter().copied().max().unwrap_or(1);
    let d_max = d.iter().copied().max().unwrap_or(1);
    let Some(m1) = e_max.checked_mul(b * b) else { return false };
    let Some(m2) = m1.checked_mul(4 * n) else { return false };
    m2 < i128::MAX / (1 << 20) && d_max < i128::MAX / (1 << 20)
}

/// Mixed-radix decode of the idx-th cell vector in the box odometer.
fn decode_box(idx: u128, cells: usize, bound: i128) -> Vec<i128> {
    let radix = (2 * bound + 1) as u128;
    let mut rem = idx;
    let mut out = vec![0i128; cells];
    for slot in (0..cells).rev() {
        out[slot] = (rem % radix) as i128 - bound;
        rem /= radix;
    }
    out
}

fn increment_box(cells: &mut [i128], bound: i128) -> bool {
    for slot in (0..cells.len()).rev() {
        if cells[slot] < bound {
            cells[slot] += 1;
            for later in cells.iter_mut().skip(slot + 1) {
                *later = -bound;
            }
            return true;
        }
    }
    false
}

fn block_search(d: &[i128], e: &[i128], bound: u32, jobs: usize) -> Vec<IntMatrix> {
    let n = d.len();
    let b = bound as i128;
    let radix = (2 * b + 1) as u128;
    let cells = n * n;
    let Some(total_a) = radix.checked_pow(cells as u32) else {
        // Absurdly large odometer: fall back to a single range anyway; the
        // caller chose an impractical bound.
        return block_search_range(d, e, b, 0, u128::MAX);
    };
    let jobs = jobs.clamp(1, 64);
    if jobs <= 1 || total_a < 64 {
        return block_search_range(d, e, b, 0, total_a);
    }
    let chunk = total_a.div_ceil(jobs as u128);
    let mut results = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        let mut start = 0u128;
        while start < total_a {
            let end = (start + chunk).min(total_a);
            handles.push(scope.spawn(move || block_search_range(d, e, b, start, end)));
            start = end;
        }
        for h in handles {
            results.push(h.join().expect("search worker panicked"));
        }
    });
    results.into_iter().flatten().collect()
}

fn block_search_range(d: &[i128], e: &[i128], b: i128, start: u128, end: u128) -> Vec<IntMatrix> {
    let n = d.len();
    let cells = n * n;
    let mut out = Vec::new();
    let mut a = decode_box(start, cells, b);
    let mut idx = start;
    while idx < end {
        search_with_a_block(d, e, b, &a, &mut out);
        idx += 1;
        if idx < end && !increment_box(&mut a, b) {
            break;
        }
    }
    out
}

/// Fixes the A block (row-major cells) and enumerates all completions.
fn search_with_a_block(d: &[i128], e: &[i128], b: i128, a_cells: &[i128], out: &mut Vec<IntMatrix>) {
    let n = d.len();
    let at = |m: &[i128], k: usize, i: usize| m[k * n + i];
    // wa[k][i] = e_k * A[k][i]
    let wa: Vec<i128> = (0..n * n).map(|idx| e[idx / n] * a_cells[idx]).collect();

    let mut c_cells = vec![-b; n * n];
    loop {
        // Condition: A^T D_e C symmetric.
        let mut symmetric = true;
        'sym: for i in 0..n {
            for j in i + 1..n {
                let mut lhs = 0i128;
                let mut rhs = 0i128;
                for k in 0..n {
                    lhs += at(&wa, k, i) * at(&c_cells, k, j);
                    rhs += at(&wa, k, j) * at(&c_cells, k, i);
                }
                if lhs != rhs {
                    symmetric = false;
                    break 'sym;
                }
            }
        }
        if symmetric {
            complete_bd_blocks(d, e, b, a_cells, &wa, &c_cells, out);
        }
        if !increment_box(&mut c_cells, b) {
            break;
        }
    }
}

/// For fixed (A, C), solve the per-column linear systems for (B, D) and DFS
/// over the bounded solutions, enforcing the B^T D_e D symmetry pairwise.
fn complete_bd_blocks(
    d: &[i128],
    e: &[i128],
    b: i128,
    a_cells: &[i128],
    wa: &[i128],
    c_cells: &[i128],
    out: &mut Vec<IntMatrix>,
) {
    let n = d.len();
    let at = |m: &[i128], k: usize, i: usize| m[k * n + i];
    let wc: Vec<i128> = (0..n * n).map(|idx| e[idx / n] * c_cells[idx]).collect();

    // Per column j, equations over z = (B[., j], D[., j]):
    //   sum_k wa[k][i] D[k][j] - wc[k][i] B[k][j] = delta_ij d_i.
    let mut per_column: Vec<Vec<Vec<i128>>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut w = vec![vec![0i128; 2 * n]; n];
        let mut rhs = vec![0i128; n];
        for i in 0..n {
            for k in 0..n {
                w[i][k] = -at(&wc, k, i);
                w[i][n + k] = at(wa, k, i);
            }
            rhs[i] = if i == j { d[i] } else { 0 };
        }
        let solutions = bounded_integer_solutions(&w, &rhs, b);
        if solutions.is_empty() {
            return;
        }
        per_column.push(solutions);
    }

    // DFS across columns with the pairwise symmetry condition on (B, D).
    fn dfs<'a>(
        n: usize,
        e: &[i128],
        a_cells: &[i128],
        c_cells: &[i128],
        per_column: &'a [Vec<Vec<i128>>],
        chosen: &mut Vec<&'a Vec<i128>>,
        out: &mut Vec<IntMatrix>,
    ) {
        let j = chosen.len();
        if j == n {
            out.push(assemble_blocks(n, a_cells, c_cells, chosen));
            return;
        }
        'cand: for z in &per_column[j] {
            // sum_k e_k B[k][jp] D[k][j] == sum_k e_k B[k][j] D[k][jp]
            for zp in chosen.iter() {
                let mut lhs = 0i128;
                let mut rhs = 0i128;
                for k in 0..n {
                    lhs += e[k] * zp[k] * z[n + k];
                    rhs += e[k] * z[k] * zp[n + k];
                }
                if lhs != rhs {
                    continue 'cand;
                }
            }
            chosen.push(z);
            dfs(n, e, a_cells, c_cells, per_column, chosen, out);
            chosen.pop();
        }
    }
    let mut chosen: Vec<&Vec<i128>> = Vec::with_capacity(n);
    dfs(n, e, a_cells, c_cells, &per_column, &mut chosen, out);
}

fn assemble_blocks(n: usize, a_cells: &[i128], c_cells: &[i128], columns: &[&Vec<i128>]) -> IntMatrix {
    IntMatrix::from_fn(2 * n, 2 * n, |r, c| {
        let v = if r < n && c < n {
            a_cells[r * n + c]
        } else if r >= n && c < n {
            c_cells[(r - n) * n + c]
        } else if r < n {
            columns[c - n][r]
        } else {
            columns[c - n][n + (r - n)]
        };
        BigInt::from(v)
    })
}

/// All integer solutions of w z = rhs with every coordinate in
/// [-bound, bound]. Reduces w to column echelon form, takes a particular
/// solution by forward substitution, echelonizes the kernel basis and walks
/// the coefficient tree with per-pivot interval bounds. Inconsistent
/// systems yield an empty list.
fn bounded_integer_solutions(w: &[Vec<i128>], rhs: &[i128], bound: i128) -> Vec<Vec<i128>> {
    let rows = w.len();
    let cols = if rows == 0 { 0 } else { w[0].len() };
    let mut h: Vec<Vec<i128>> = w.to_vec();
    let mut v: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();

    let mut pivot_of_row: Vec<Option<usize>> = vec![None; rows];
    let mut next_col = 0;
    for row in 0..rows {
        if next_col == cols {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for c in next_col..cols {
                if h[row][c] != 0 {
                    let better = match best {
                        None => true,
                        Some(bc) => h[row][c].abs() < h[row][bc].abs(),
                    };
                    if better {
                        best = Some(c);
                    }
                }
            }
            let Some(bc) = best else { break };
            if bc != next_col {
                for r in h.iter_mut() {
                    r.swap(next_col, bc);
                }
                for r in v.iter_mut() {
                    r.swap(next_col, bc);
                }
            }
            let mut clean = true;
            for c in next_col + 1..cols {
                if h[row][c] == 0 {
                    continue;
                }
                let q = h[row][c] / h[row][next_col];
                if q != 0 {
                    for r in h.iter_mut() {
                        r[c] -= q * r[next_col];
                    }
                    for r in v.iter_mut() {
                        r[c] -= q * r[next_col];
                    }
                }
                if h[row][c] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[row][next_col] != 0 {
            pivot_of_row[row] = Some(next_col);
            next_col += 1;
        }
    }

    // Particular solution by forward substitution.
    let mut y = vec![0i128; cols];
    for row in 0..rows {
        let mut residual = rhs[row];
        for c in 0..next_col {
            residual -= h[row][c] * y[c];
        }
        match pivot_of_row[row] {
            Some(c) => {
                let p = h[row][c];
                if residual % p != 0 {
                    return Vec::new();
                }
                y[c] = residual / p;
            }
            None => {
                if residual != 0 {
                    return Vec::new();
                }
            }
        }
    }
    let particular: Vec<i128> = (0..cols)
        .map(|i| (0..cols).map(|c| v[i][c] * y[c]).sum())
        .collect();

    // Kernel basis: v-columns over the zero columns of h, echelonized so
    // pivot rows give triangular bounds during the walk.
    let mut kernel: Vec<Vec<i128>> = (next_col..cols)
        .map(|c| (0..cols).map(|i| v[i][c]).collect())
        .collect();
    let dim = kernel.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut next = 0usize;
    for row in 0..cols {
        if next == dim {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for (c, col) in kernel.iter().enumerate().skip(next) {
                if col[row] != 0 {
                    let better = match best {
                        None => true,
                        Some(bc) => col[row].abs() < kernel[bc][row].abs(),
                    };
                    if better {
                        best = Some(c);
                    }
                }
            }
            let Some(bc) = best else { break };
            kernel.swap(next, bc);
            let mut clean = true;
            for c in next + 1..dim {
                if kernel[c][row] == 0 {
                    continue;
                }
                let q = kernel[c][row] / kernel[next][row];
                if q != 0 {
                    for i in 0..cols {
                        let t = q * kernel[next][i];
                        kernel[c][i] -= t;
                    }
                }
                if kernel[c][row] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if next < dim && kernel[next][row] != 0 {
            pivots.push(row);
            next += 1;
        }
    }
    debug_assert_eq!(pivots.len(), dim, "kernel basis has full column rank");

    let mut solutions = Vec::new();
    let mut point = particular.clone();
    walk_kernel(&kernel, &pivots, 0, bound, &mut point, &mut solutions);
    solutions
}

fn walk_kernel(
    kernel: &[Vec<i128>],
    pivots: &[usize],
    depth: usize,
    bound: i128,
    point: &mut Vec<i128>,
    out: &mut Vec<Vec<i128>>,
) {
    if depth == kernel.len() {
        if point.iter().all(|&x| x.abs() <= bound) {
            out.push(point.clone());
        }
        return;
    }
    let pr = pivots[depth];
    let step = kernel[depth][pr];
    debug_assert!(step != 0);
    // point[pr] + t*step must land in [-bound, bound].
    let lo = -bound - point[pr];
    let hi = bound - point[pr];
    let (t_min, t_max) = if step > 0 {
        (div_ceil_i128(lo, step), div_floor_i128(hi, step))
    } else {
        (div_ceil_i128(hi, step), div_floor_i128(lo, step))
    };
    for t in t_min..=t_max {
        if t != 0 {
            for (i, k) in kernel[depth].iter().enumerate() {
                point[i] += t * k;
            }
        }
        walk_kernel(kernel, pivots, depth + 1, bound, point, out);
        if t != 0 {
            for (i, k) in kernel[depth].iter().enumerate() {
                point[i] -= t * k;
            }
        }
    }
}

fn div_floor_i128(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil_i128(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) == (b < 0)) {
        q + 1
    } else {
        q
    }
}
