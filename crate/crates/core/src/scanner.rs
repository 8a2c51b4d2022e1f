//! Source-plane scans: real pre-image counts, discriminant signs, caustic
//! points and the search for regions with the maximal number of images.

use std::io::{self, Write};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::catalog::{get, Params, SingularityDef, SingularityId};
use crate::format::csv_number;
use crate::poly::discriminant;
use crate::solver::{analyse, SolverConfig};
use crate::{Error, Result};

/// Width below which edge bisection stops.
pub const BISECTION_TOL: f64 = 1e-6;
pub const DEFAULT_RESOLUTION: usize = 201;
pub const DEFAULT_BUDGET: usize = 5;
pub const WINDOW: (f64, f64) = (-2.0, 2.0);

#[derive(Clone, Debug, PartialEq)]
pub struct ScanGrid {
    pub s1_range: (f64, f64),
    pub s2_range: (f64, f64),
    /// Cells along `s1` and `s2`.
    pub resolution: (usize, usize),
    pub c: Vec<f64>,
}

impl ScanGrid {
    pub fn new(s1_range: (f64, f64), s2_range: (f64, f64), resolution: (usize, usize), c: Vec<f64>) -> Result<Self> {
        let ok = |r: (f64, f64)| r.0.is_finite() && r.1.is_finite() && r.0 < r.1;
        if !ok(s1_range) || !ok(s2_range) {
            return Err(Error::Invalid("scan ranges must be finite with lo < hi".into()));
        }
        if resolution.0 < 2 || resolution.1 < 2 {
            return Err(Error::Invalid("scan resolution must be at least 2x2".into()));
        }
        Ok(Self { s1_range, s2_range, resolution, c })
    }

    /// The default `201 x 201` grid over `[-2, 2]²`.
    pub fn standard(c: Vec<f64>) -> Self {
        Self::square(DEFAULT_RESOLUTION, c)
    }

    pub fn square(resolution: usize, c: Vec<f64>) -> Self {
        Self::new(WINDOW, WINDOW, (resolution, resolution), c).expect("valid window")
    }

    pub fn step(&self) -> (f64, f64) {
        (
            (self.s1_range.1 - self.s1_range.0) / self.resolution.0 as f64,
            (self.s2_range.1 - self.s2_range.0) / self.resolution.1 as f64,
        )
    }

    /// Centre of cell `(i, j)`, `i` along `s1`.
    pub fn center(&self, i: usize, j: usize) -> [f64; 2] {
        let (h1, h2) = self.step();
        [self.s1_range.0 + (i as f64 + 0.5) * h1, self.s2_range.0 + (j as f64 + 0.5) * h2]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellFlag {
    /// φ loses degree or a guard denominator vanishes identically.
    Degenerate,
    /// Within `caustic_tol` of a repeated root.
    OnCaustic,
    /// Root finding failed.
    Failed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    /// Real pre-image count; `None` for flagged cells.
    pub n_real: Option<usize>,
    /// Discriminant of φ, NaN when degenerate.
    pub disc: f64,
    /// Smallest root distance relative to the root scale.
    pub separation: f64,
    pub flag: Option<CellFlag>,
}

impl Cell {
    pub fn disc_sign(&self) -> i8 {
        if self.disc > 0.0 {
            1
        } else if self.disc < 0.0 {
            -1
        } else {
            0
        }
    }
}

fn params(c: &[f64], s: [f64; 2]) -> Params<Complex64> {
    Params::new(c.iter().map(|&v| Complex64::from(v)).collect(), s.map(Complex64::from))
}

pub fn evaluate_cell(def: &SingularityDef, c: &[f64], s: [f64; 2], cfg: &SolverConfig) -> Cell {
    let flagged = |flag, disc| Cell { n_real: None, disc, separation: 0.0, flag: Some(flag) };
    let Ok(phi) = def.build_phi(&params(c, s)) else {
        return flagged(CellFlag::Degenerate, f64::NAN);
    };
    let info = match analyse(&phi, cfg) {
        Ok(info) => info,
        Err(_) => {
            let disc = discriminant(&phi).map_or(f64::NAN, |d| d.re);
            return flagged(CellFlag::Failed, disc);
        }
    };
    let separation = info.roots.min_separation / info.roots.scale();
    let disc = info.disc.re;
    if !(info.disc_metric >= cfg.caustic_tol) || separation < cfg.separation_tol {
        return Cell { n_real: None, disc, separation, flag: Some(CellFlag::OnCaustic) };
    }
    Cell { n_real: Some(info.count_real(cfg.reality_tol)), disc, separation, flag: None }
}

/// Discriminant of φ at `s`, NaN if φ is degenerate there.
pub fn disc_at(def: &SingularityDef, c: &[f64], s: [f64; 2]) -> f64 {
    def.build_phi(&params(c, s)).ok().and_then(|phi| discriminant(&phi).ok()).map_or(f64::NAN, |d| d.re)
}

/// Real-root count of φ at `s` with no caustic rejection.
pub fn count_at(def: &SingularityDef, c: &[f64], s: [f64; 2], cfg: &SolverConfig) -> Option<usize> {
    let phi = def.build_phi(&params(c, s)).ok()?;
    analyse(&phi, cfg).ok().map(|info| info.count_real(cfg.reality_tol))
}

/// A cell centre and its real pre-image count.
pub type CountSample = ([f64; 2], usize);

#[derive(Clone, Debug, PartialEq)]
pub struct ScanResult {
    pub id: SingularityId,
    pub grid: ScanGrid,
    pub config: SolverConfig,
    /// Row-major, row `j` holding the cells with the `j`-th `s2` value.
    pub cells: Vec<Cell>,
    /// Discriminant sign changes along grid edges, bisected.
    pub caustic_points: Vec<[f64; 2]>,
    /// Real-count changes between consecutive unflagged cells, bisected.
    pub transitions: Vec<[f64; 2]>,
    pub max_region_sample: Option<[f64; 2]>,
}

impl ScanResult {
    pub fn cell(&self, i: usize, j: usize) -> &Cell {
        &self.cells[j * self.grid.resolution.0 + i]
    }

    /// Every pair of horizontally or vertically adjacent cells.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), (usize, usize))> + '_ {
        let (n1, n2) = self.grid.resolution;
        let horizontal = (0..n2).flat_map(move |j| (0..n1 - 1).map(move |i| ((i, j), (i + 1, j))));
        let vertical = (0..n2 - 1).flat_map(move |j| (0..n1).map(move |i| ((i, j), (i, j + 1))));
        horizontal.chain(vertical)
    }

    /// Pairs of consecutive unflagged cells along grid rows and columns whose
    /// real counts differ, as `(centre, count)` pairs. Flagged cells in
    /// between are skipped.
    pub fn count_changes(&self) -> Vec<(CountSample, CountSample)> {
        let (n1, n2) = self.grid.resolution;
        let rows = (0..n2).map(|j| (0..n1).map(move |i| (i, j)).collect::<Vec<_>>());
        let cols = (0..n1).map(|i| (0..n2).map(move |j| (i, j)).collect::<Vec<_>>());
        let mut out = Vec::new();
        for line in rows.chain(cols) {
            let mut prev: Option<([f64; 2], usize)> = None;
            for (i, j) in line {
                let Some(k) = self.cell(i, j).n_real else { continue };
                let here = (self.grid.center(i, j), k);
                if let Some(p) = prev.filter(|p| p.1 != k) {
                    out.push((p, here));
                }
                prev = Some(here);
            }
        }
        out
    }

    pub fn write_cells_csv(&self, mut w: impl Write) -> io::Result<()> {
        writeln!(w, "s1,s2,n_real,disc_sign")?;
        let (n1, n2) = self.grid.resolution;
        for j in 0..n2 {
            for i in 0..n1 {
                let [s1, s2] = self.grid.center(i, j);
                let cell = self.cell(i, j);
                let n = cell.n_real.map_or(-1, |n| n as i64);
                writeln!(w, "{},{},{},{}", csv_number(s1), csv_number(s2), n, cell.disc_sign())?;
            }
        }
        Ok(())
    }

    pub fn write_caustics_csv(&self, mut w: impl Write) -> io::Result<()> {
        writeln!(w, "s1,s2")?;
        for [s1, s2] in &self.caustic_points {
            writeln!(w, "{},{}", csv_number(*s1), csv_number(*s2))?;
        }
        Ok(())
    }
}

fn lerp(a: [f64; 2], b: [f64; 2], t: f64) -> [f64; 2] {
    [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Halve `[a, b]` until shorter than [`BISECTION_TOL`], keeping the end
/// each midpoint belongs to.
fn bisect(mut a: [f64; 2], mut b: [f64; 2], mut belongs_to_a: impl FnMut([f64; 2]) -> bool) -> [f64; 2] {
    while dist(a, b) > BISECTION_TOL {
        let m = lerp(a, b, 0.5);
        if belongs_to_a(m) {
            a = m;
        } else {
            b = m;
        }
    }
    lerp(a, b, 0.5)
}

pub fn scan(def: &SingularityDef, grid: &ScanGrid, cfg: &SolverConfig) -> Result<ScanResult> {
    if grid.c.len() != def.id.n_params() {
        return Err(Error::Invalid(format!("{} takes {} parameters", def.id, def.id.n_params())));
    }
    let (n1, n2) = grid.resolution;
    let cells: Vec<Cell> = (0..n2)
        .into_par_iter()
        .flat_map_iter(|j| (0..n1).map(move |i| evaluate_cell(def, &grid.c, grid.center(i, j), cfg)))
        .collect();
    let mut result = ScanResult {
        id: def.id,
        grid: grid.clone(),
        config: cfg.clone(),
        cells,
        caustic_points: Vec::new(),
        transitions: Vec::new(),
        max_region_sample: None,
    };

    let edges: Vec<_> = result.edges().collect();
    let c = &grid.c;
    let caustics: Vec<Option<[f64; 2]>> = edges
        .par_iter()
        .map(|&(p, q)| {
            let (a, b) = (result.cell(p.0, p.1), result.cell(q.0, q.1));
            let (sa, sb) = (grid.center(p.0, p.1), grid.center(q.0, q.1));
            match (a.disc_sign(), b.disc_sign()) {
                (x, y) if x * y < 0 => Some(bisect(sa, sb, |m| disc_at(def, c, m).signum() == f64::from(x))),
                (0, _) if !a.disc.is_nan() => Some(sa),
                _ => None,
            }
        })
        .collect();
    result.caustic_points = caustics.into_iter().flatten().collect();

    let lines = result.count_changes();
    result.transitions = lines
        .par_iter()
        .map(|&((sa, x), (sb, _))| bisect(sa, sb, |m| count_at(def, c, m, cfg) == Some(x)))
        .collect();
    result.max_region_sample = best_full_cell(&result, def.n_images()).map(|(i, j)| grid.center(i, j));
    Ok(result)
}

fn best_full_cell(result: &ScanResult, n: usize) -> Option<(usize, usize)> {
    let (n1, n2) = result.grid.resolution;
    (0..n2)
        .flat_map(|j| (0..n1).map(move |i| (i, j)))
        .filter(|&(i, j)| result.cell(i, j).n_real == Some(n))
        .max_by(|&(i, j), &(k, l)| result.cell(i, j).separation.total_cmp(&result.cell(k, l).separation))
}

/// Source point with every pre-image real, and where it was found.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxRegion {
    pub s: [f64; 2],
    pub n_real: usize,
    pub separation: f64,
    /// Refinement level; the grid there has `16 · 2^level` cells per side.
    pub level: usize,
}

/// Coarse-to-fine search of `[-2, 2]²` for a cell with `n_images` real
/// pre-images, preferring the one with the best separated roots.
pub fn find_max_region(def: &SingularityDef, c: &[f64], budget: usize, cfg: &SolverConfig) -> Result<MaxRegion> {
    let n = def.n_images();
    let mut best = 0;
    for level in 0..budget.max(1) {
        let grid = ScanGrid::square(16 << level, c.to_vec());
        let (n1, n2) = grid.resolution;
        let cells: Vec<Cell> = (0..n2)
            .into_par_iter()
            .flat_map_iter(|j| {
                let grid = &grid;
                (0..n1).map(move |i| evaluate_cell(def, c, grid.center(i, j), cfg))
            })
            .collect();
        best = cells.iter().filter_map(|cell| cell.n_real).fold(best, usize::max);
        let pick = cells
            .iter()
            .enumerate()
            .filter(|(_, cell)| cell.n_real == Some(n))
            .max_by(|a, b| a.1.separation.total_cmp(&b.1.separation));
        if let Some((k, cell)) = pick {
            return Ok(MaxRegion { s: grid.center(k % n1, k / n1), n_real: n, separation: cell.separation, level });
        }
    }
    Err(Error::NotFound { best })
}

/// Checks that counts have the parity and discriminant sign implied by the
/// number of complex pairs, and only change across a caustic.
pub fn consistency_check(result: &ScanResult) -> Result<()> {
    let def = get(result.id);
    let n = def.n_images();
    let (n1, n2) = result.grid.resolution;
    for j in 0..n2 {
        for i in 0..n1 {
            let cell = result.cell(i, j);
            let Some(k) = cell.n_real else { continue };
            if k > n || !(n - k).is_multiple_of(2) {
                return Err(Error::InconsistentScan(format!("cell ({i}, {j}) has {k} real roots of {n}")));
            }
            let expected = if ((n - k) / 2).is_multiple_of(2) { 1 } else { -1 };
            if cell.disc_sign() != expected {
                return Err(Error::InconsistentScan(format!(
                    "cell ({i}, {j}): {k} real roots but discriminant {:e}",
                    cell.disc
                )));
            }
        }
    }
    let c = &result.grid.c;
    for (p, q) in result.edges() {
        let (a, b) = (result.cell(p.0, p.1), result.cell(q.0, q.1));
        let (Some(x), Some(y)) = (a.n_real, b.n_real) else { continue };
        if x == y || a.disc_sign() != b.disc_sign() {
            continue;
        }
        // Two caustic crossings on one edge: look for the sign change inside.
        let (sa, sb) = (result.grid.center(p.0, p.1), result.grid.center(q.0, q.1));
        let sign = f64::from(a.disc_sign());
        let crossed = (1..16).any(|k| {
            let d = disc_at(def, c, lerp(sa, sb, k as f64 / 16.0));
            d.is_nan() || d.signum() != sign
        });
        if !crossed {
            return Err(Error::InconsistentScan(format!(
                "count changes {x} -> {y} between {sa:?} and {sb:?} without a caustic"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_geometry() {
        let g = ScanGrid::square(4, vec![]);
        assert_eq!(g.center(0, 0), [-1.5, -1.5]);
        assert_eq!(g.center(3, 1), [1.5, -0.5]);
        assert!(ScanGrid::new((0.0, 0.0), (0.0, 1.0), (4, 4), vec![]).is_err());
        assert!(ScanGrid::new((0.0, 1.0), (0.0, 1.0), (1, 4), vec![]).is_err());
    }

    #[test]
    fn fold_scan() {
        let def = get(SingularityId::A2);
        let grid = ScanGrid::new((-1.0, 1.0), (-1.0, 1.0), (10, 10), vec![]).unwrap();
        let r = scan(def, &grid, &SolverConfig::default()).unwrap();
        for j in 0..10 {
            let expected = if j >= 5 { 2 } else { 0 };
            assert_eq!(r.cell(3, j).n_real, Some(expected));
        }
        assert_eq!(r.caustic_points.len(), 10);
        assert!(r.caustic_points.iter().all(|p| p[1].abs() <= BISECTION_TOL));
        assert!(r.transitions.iter().all(|p| p[1].abs() <= BISECTION_TOL));
        assert!(r.max_region_sample.unwrap()[1] > 0.0);
        consistency_check(&r).unwrap();
    }

    #[test]
    fn uniform_region_has_no_caustic() {
        let def = get(SingularityId::A2);
        let grid = ScanGrid::new((-1.0, 1.0), (0.5, 1.0), (6, 6), vec![]).unwrap();
        let r = scan(def, &grid, &SolverConfig::default()).unwrap();
        assert!(r.caustic_points.is_empty() && r.transitions.is_empty());
    }

    #[test]
    fn cusp_counts_match_discriminant() {
        let def = get(SingularityId::A3);
        let r = scan(def, &ScanGrid::square(41, vec![]), &SolverConfig::default()).unwrap();
        consistency_check(&r).unwrap();
        for j in 0..41 {
            for i in 0..41 {
                let [s1, s2] = r.grid.center(i, j);
                let g = -4.0 * s1.powi(3) - 27.0 * s2 * s2;
                if let Some(k) = r.cell(i, j).n_real {
                    assert_eq!(k, if g > 0.0 { 3 } else { 1 }, "{s1} {s2}");
                }
            }
        }
    }

    #[test]
    fn max_region_for_fold_and_swallowtail() {
        let cfg = SolverConfig::default();
        let m = find_max_region(get(SingularityId::A2), &[], 3, &cfg).unwrap();
        assert_eq!((m.n_real, m.level), (2, 0));
        let m = find_max_region(get(SingularityId::A4), &[-2.0], 3, &cfg).unwrap();
        assert_eq!(m.n_real, 4);
        assert!(matches!(
            find_max_region(get(SingularityId::A4), &[2.0], 1, &cfg),
            Err(Error::NotFound { best: 2 })
        ));
    }

    #[test]
    fn csv_layout() {
        let def = get(SingularityId::A2);
        let grid = ScanGrid::new((-1.0, 1.0), (-1.0, 1.0), (2, 2), vec![]).unwrap();
        let r = scan(def, &grid, &SolverConfig::default()).unwrap();
        let mut out = Vec::new();
        r.write_cells_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text, "s1,s2,n_real,disc_sign\n-0.5,-0.5,0,-1\n0.5,-0.5,0,-1\n-0.5,0.5,2,1\n0.5,0.5,2,1\n");
        let mut out = Vec::new();
        r.write_caustics_csv(&mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap().lines().count(), 3);
    }
}
