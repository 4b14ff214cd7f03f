//! Definition-level PDA check over an option grid (`None` = star), written
//! independently of `Pda::validate`.

pub fn is_pda(grid: &[Vec<Option<u32>>], k: usize, f: usize, q: usize, s: usize) -> bool {
    if k == 0 || f == 0 || q == 0 || s == 0 || q >= f || grid.len() != f || grid.iter().any(|r| r.len() != k) {
        return false;
    }
    for c in 0..k {
        if grid.iter().filter(|row| row[c].is_none()).count() != q {
            return false;
        }
    }
    let cells: Vec<(usize, usize, u32)> = (0..f)
        .flat_map(|j| (0..k).filter_map(move |c| grid[j][c].map(|v| (j, c, v))))
        .collect();
    if cells.iter().any(|&(_, _, v)| v == 0 || v as usize > s) {
        return false;
    }
    for v in 1..=s as u32 {
        if !cells.iter().any(|&(_, _, w)| w == v) {
            return false;
        }
    }
    for (i, &(j1, k1, v1)) in cells.iter().enumerate() {
        for &(j2, k2, v2) in &cells[i + 1..] {
            if v1 == v2 && (j1 == j2 || k1 == k2 || grid[j1][k2].is_some() || grid[j2][k1].is_some()) {
                return false;
            }
        }
    }
    true
}

pub fn grid_of(p: &pdakit::pda::Pda) -> Vec<Vec<Option<u32>>> {
    (0..p.f()).map(|j| p.row(j).iter().map(|e| e.symbol()).collect()).collect()
}
