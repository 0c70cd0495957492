//! Square assignment problems: minimum-sum (Hungarian) and minimum-bottleneck.
//!
//! Forbidden cells are marked with `f64::INFINITY` and never enter a matching.

/// Minimum-cost perfect matching on a square matrix.
///
/// Returns `assignment[row] = column`. Panics if no perfect matching avoids
/// the forbidden cells.
pub fn min_cost_assignment(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    if n == 0 {
        return Vec::new();
    }
    // Potentials-based shortest augmenting path, 1-based with a virtual column 0.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for row in 1..=n {
        owner[0] = row;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let reduced = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if reduced < minv[j] {
                    minv[j] = reduced;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            assert!(delta.is_finite(), "no perfect matching avoids the forbidden cells");
            for j in 0..=n {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0; n];
    for j in 1..=n {
        assignment[owner[j] - 1] = j - 1;
    }
    assignment
}

/// Maximum bipartite matching (Hopcroft–Karp). `adj[row]` lists allowed columns.
/// Returns `match_row[row] = Some(column)`.
pub fn maximum_matching(adj: &[Vec<usize>], columns: usize) -> Vec<Option<usize>> {
    let rows = adj.len();
    let mut match_row: Vec<Option<usize>> = vec![None; rows];
    let mut match_col: Vec<Option<usize>> = vec![None; columns];
    let mut dist = vec![0usize; rows];
    loop {
        // Layer free rows by BFS.
        let mut queue = std::collections::VecDeque::new();
        let mut found = false;
        for r in 0..rows {
            if match_row[r].is_none() {
                dist[r] = 0;
                queue.push_back(r);
            } else {
                dist[r] = usize::MAX;
            }
        }
        while let Some(r) = queue.pop_front() {
            for &c in &adj[r] {
                match match_col[c] {
                    None => found = true,
                    Some(r2) if dist[r2] == usize::MAX => {
                        dist[r2] = dist[r] + 1;
                        queue.push_back(r2);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }
        let mut progressed = false;
        for r in 0..rows {
            if match_row[r].is_none() && augment(r, adj, &mut dist, &mut match_row, &mut match_col) {
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }
    match_row
}

fn augment(
    r: usize,
    adj: &[Vec<usize>],
    dist: &mut [usize],
    match_row: &mut [Option<usize>],
    match_col: &mut [Option<usize>],
) -> bool {
    for &c in &adj[r] {
        let ok = match match_col[c] {
            None => true,
            Some(r2) => dist[r2] == dist[r].wrapping_add(1) && augment(r2, adj, dist, match_row, match_col),
        };
        if ok {
            match_row[r] = Some(c);
            match_col[c] = Some(r);
            return true;
        }
    }
    dist[r] = usize::MAX;
    false
}

/// Perfect matching minimising the largest used cell. Returns the
/// assignment and the bottleneck value.
pub fn bottleneck_assignment(cost: &[Vec<f64>]) -> (Vec<usize>, f64) {
    let n = cost.len();
    if n == 0 {
        return (Vec::new(), 0.0);
    }
    let mut candidates: Vec<f64> = cost.iter().flatten().copied().filter(|c| c.is_finite()).collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    let try_threshold = |t: f64| {
        let adj: Vec<Vec<usize>> = cost.iter().map(|row| (0..n).filter(|&j| row[j] <= t).collect()).collect();
        let m = maximum_matching(&adj, n);
        if m.iter().all(Option::is_some) {
            Some(m.into_iter().map(Option::unwrap).collect::<Vec<_>>())
        } else {
            None
        }
    };
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    let mut best = try_threshold(candidates[hi]).expect("no perfect matching avoids the forbidden cells");
    while lo < hi {
        let mid = (lo + hi) / 2;
        match try_threshold(candidates[mid]) {
            Some(m) => {
                best = m;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    (best, candidates[lo])
}
