//! Zero datasets, rectangle counting N(sigma, T), disk counts, and the box
//! decomposition with delta-well-spaced representative systems.
//!
//! Datasets come from critical-line ordinate files (beta = 1/2 implied) or
//! from synthetic lists so the counting logic can be exercised off the
//! critical line, where real data has no examples. Zero-finding is out of
//! scope: files are trusted input.

use std::io::BufRead;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::audit::BoundAuditRecord;

#[derive(Debug, Error)]
pub enum ZeroLabError {
    #[error("cannot read zero file: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: cannot parse ordinate from {content:?}")]
    Parse { line: usize, content: String },
    #[error("line {line}: ordinates must be positive and strictly increasing")]
    NonMonotone { line: usize },
    #[error("zero file contains no ordinates")]
    EmptyFile,
    #[error("synthetic zero out of range: beta = {beta}, gamma = {gamma}")]
    OutOfRange { beta: f64, gamma: f64 },
    #[error("T = {t} exceeds dataset coverage gamma_max = {gamma_max}")]
    CoverageExceeded { t: f64, gamma_max: f64 },
    #[error("sigma = {0} outside the admissible interval")]
    BadSigma(f64),
    #[error("disk parameters need K > 0 and t > e (got t = {t}, K = {k})")]
    BadDiskParams { t: f64, k: f64 },
    #[error("delta = 1 - sigma0 = {0} is degenerate")]
    DegenerateDelta(f64),
    #[error("well-spacing violated inside parity system: |{a} - {b}| < delta = {delta}")]
    WellSpacingViolated { a: f64, b: f64, delta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Zero {
    pub beta: f64,
    pub gamma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZeroSource {
    CriticalLineFile,
    Synthetic,
}

/// Ordered list of nontrivial zeros with positive ordinate.
#[derive(Debug, Clone)]
pub struct ZeroDataset {
    zeros: Vec<Zero>,
    source: ZeroSource,
    /// Coverage: counting with T beyond this would silently undercount.
    gamma_max: f64,
}

impl ZeroDataset {
    pub fn zeros(&self) -> &[Zero] {
        &self.zeros
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn source(&self) -> ZeroSource {
        self.source
    }

    pub fn gamma_max(&self) -> f64 {
        self.gamma_max
    }

    /// Counting with T beyond the coverage would silently undercount. A
    /// synthetic dataset is its own complete universe, so its coverage is
    /// unbounded; a file-backed dataset is only trusted up to gamma_max.
    pub fn coverage(&self) -> f64 {
        match self.source {
            ZeroSource::CriticalLineFile => self.gamma_max,
            ZeroSource::Synthetic => f64::INFINITY,
        }
    }

    /// Keep only zeros with gamma > h (the low-ordinate cut is the caller's
    /// policy, not the counting primitives').
    pub fn filtered_above(&self, h: f64) -> ZeroDataset {
        ZeroDataset {
            zeros: self.zeros.iter().copied().filter(|z| z.gamma > h).collect(),
            source: self.source,
            gamma_max: self.gamma_max,
        }
    }
}

/// Parse an ordinates-only file: one positive decimal per line, ascending,
/// '#' comments and blank lines allowed. Every zero gets beta = 1/2.
pub fn ingest_zeros(path: &Path, gamma_cap: f64) -> Result<ZeroDataset, ZeroLabError> {
    let file = std::fs::File::open(path)?;
    let reader = std::io::BufReader::new(file);
    let mut zeros = Vec::new();
    let mut last = 0.0f64;
    let mut saw_any = false;
    let mut last_raw = 0.0f64;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let gamma: f64 = text.parse().map_err(|_| ZeroLabError::Parse {
            line: idx + 1,
            content: text.to_string(),
        })?;
        if !(gamma > last) || !gamma.is_finite() {
            return Err(ZeroLabError::NonMonotone { line: idx + 1 });
        }
        last = gamma;
        last_raw = gamma;
        saw_any = true;
        if gamma <= gamma_cap {
            zeros.push(Zero { beta: 0.5, gamma });
        }
    }
    if !saw_any {
        return Err(ZeroLabError::EmptyFile);
    }
    Ok(ZeroDataset {
        zeros,
        source: ZeroSource::CriticalLineFile,
        gamma_max: last_raw.min(gamma_cap),
    })
}

/// Dataset from explicit (beta, gamma) pairs, gammas strictly increasing.
pub fn synthesize_zeros(points: &[(f64, f64)]) -> Result<ZeroDataset, ZeroLabError> {
    let mut zeros = Vec::with_capacity(points.len());
    let mut last = 0.0f64;
    for &(beta, gamma) in points {
        if !(0.0 < beta && beta < 1.0) || !(gamma > 0.0) {
            return Err(ZeroLabError::OutOfRange { beta, gamma });
        }
        if gamma <= last {
            return Err(ZeroLabError::NonMonotone {
                line: zeros.len() + 1,
            });
        }
        last = gamma;
        zeros.push(Zero { beta, gamma });
    }
    Ok(ZeroDataset {
        gamma_max: last,
        zeros,
        source: ZeroSource::Synthetic,
    })
}

/// Endpoint conventions for the rectangle count. The displayed definition
/// uses strict inequalities on both beta and gamma.
#[derive(Debug, Clone, Copy, Default)]
pub struct CountBounds {
    pub include_beta_equal: bool,
    pub include_gamma_equal: bool,
}

/// N(sigma, T): zeros with beta > sigma and 0 < gamma < T (strict).
pub fn count_n(ds: &ZeroDataset, sigma: f64, t: f64) -> Result<usize, ZeroLabError> {
    count_n_with(ds, sigma, t, CountBounds::default())
}

pub fn count_n_with(
    ds: &ZeroDataset,
    sigma: f64,
    t: f64,
    bounds: CountBounds,
) -> Result<usize, ZeroLabError> {
    if !(0.5..1.0).contains(&sigma) {
        return Err(ZeroLabError::BadSigma(sigma));
    }
    if t > ds.coverage() {
        return Err(ZeroLabError::CoverageExceeded {
            t,
            gamma_max: ds.gamma_max,
        });
    }
    let beta_ok = |beta: f64| {
        if bounds.include_beta_equal {
            beta >= sigma
        } else {
            beta > sigma
        }
    };
    let gamma_ok = |gamma: f64| {
        if bounds.include_gamma_equal {
            gamma <= t
        } else {
            gamma < t
        }
    };
    Ok(ds
        .zeros
        .iter()
        .filter(|z| beta_ok(z.beta) && z.gamma > 0.0 && gamma_ok(z.gamma))
        .count())
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DiskCount {
    pub t: f64,
    pub k: f64,
    pub radius: f64,
    pub count: usize,
    /// count / K, expected to stay O(1) as K grows.
    pub ratio: f64,
}

/// Count zeros within distance K (log t)^(-2/3) (log log t)^(-1/3) of 1 + it.
pub fn disk_count(ds: &ZeroDataset, t: f64, k: f64) -> Result<DiskCount, ZeroLabError> {
    if !(k > 0.0) || !(t.ln() > 1.0) {
        return Err(ZeroLabError::BadDiskParams { t, k });
    }
    let radius = k * t.ln().powf(-2.0 / 3.0) * t.ln().ln().powf(-1.0 / 3.0);
    let r2 = radius * radius;
    let count = ds
        .zeros
        .iter()
        .filter(|z| {
            let dx = 1.0 - z.beta;
            let dy = t - z.gamma;
            dx * dx + dy * dy <= r2
        })
        .count();
    Ok(DiskCount {
        t,
        k,
        radius,
        count,
        ratio: count as f64 / k,
    })
}

/// The box decomposition of [sigma0, 1] x [0, T] into squares of side
/// delta = 1 - sigma0, with one representative zero per occupied box and the
/// parity split into two delta-well-spaced systems.
#[derive(Debug, Clone)]
pub struct BoxGrid {
    pub sigma0: f64,
    pub delta: f64,
    pub t_max: f64,
    pub occupied_boxes: Vec<usize>,
    /// (box index, representative) in ascending box order.
    pub representatives: Vec<(usize, Zero)>,
    pub j_even: Vec<Zero>,
    pub j_odd: Vec<Zero>,
}

impl BoxGrid {
    /// The larger parity system (ties go to even).
    pub fn j(&self) -> &[Zero] {
        if self.j_even.len() >= self.j_odd.len() {
            &self.j_even
        } else {
            &self.j_odd
        }
    }
}

/// Build the grid. Representatives default to the smallest-gamma zero per
/// box; a seed switches to a uniform-random in-box choice (reproducible) for
/// robustness testing. Well-spacing of both parity systems is verified
/// before returning.
pub fn build_box_grid(
    ds: &ZeroDataset,
    sigma0: f64,
    t: f64,
    rng_seed: Option<u64>,
) -> Result<BoxGrid, ZeroLabError> {
    if !(0.5 < sigma0 && sigma0 < 1.0) {
        return Err(ZeroLabError::BadSigma(sigma0));
    }
    let delta = 1.0 - sigma0;
    if !(delta > 0.0) {
        return Err(ZeroLabError::DegenerateDelta(delta));
    }
    if t > ds.coverage() {
        return Err(ZeroLabError::CoverageExceeded {
            t,
            gamma_max: ds.gamma_max,
        });
    }
    let n_boxes = (t / delta).floor() as usize;
    let gamma_end = n_boxes as f64 * delta;

    // box index -> candidate zeros, in gamma order
    let mut boxes: std::collections::BTreeMap<usize, Vec<Zero>> = std::collections::BTreeMap::new();
    for z in &ds.zeros {
        if z.beta >= sigma0 && z.gamma < gamma_end {
            let idx = (z.gamma / delta).floor() as usize;
            if idx < n_boxes {
                boxes.entry(idx).or_default().push(*z);
            }
        }
    }

    let mut rng = rng_seed.map(ChaCha8Rng::seed_from_u64);
    let mut occupied_boxes = Vec::with_capacity(boxes.len());
    let mut representatives = Vec::with_capacity(boxes.len());
    let mut j_even = Vec::new();
    let mut j_odd = Vec::new();
    for (idx, members) in &boxes {
        let rep = match rng.as_mut() {
            None => members[0],
            Some(r) => members[r.random_range(0..members.len())],
        };
        occupied_boxes.push(*idx);
        representatives.push((*idx, rep));
        if idx % 2 == 0 {
            j_even.push(rep);
        } else {
            j_odd.push(rep);
        }
    }

    for system in [&j_even, &j_odd] {
        for pair in system.windows(2) {
            if (pair[1].gamma - pair[0].gamma).abs() < delta {
                return Err(ZeroLabError::WellSpacingViolated {
                    a: pair[0].gamma,
                    b: pair[1].gamma,
                    delta,
                });
            }
        }
    }

    Ok(BoxGrid {
        sigma0,
        delta,
        t_max: t,
        occupied_boxes,
        representatives,
        j_even,
        j_odd,
    })
}

/// Verify every occupied box sits inside the circle of radius
/// sqrt(5) (1 - sigma0) / 2 centered at 1 + i t_box (t_box the box's gamma
/// midpoint). Checking the four corners suffices by convexity; the farthest
/// corners attain the radius exactly.
pub fn box_circle_cover_check(grid: &BoxGrid) -> BoundAuditRecord {
    box_circle_cover_check_scaled(grid, 1.0)
}

/// Same check with the radius scaled; scale < 1 probes sharpness.
pub fn box_circle_cover_check_scaled(grid: &BoxGrid, radius_scale: f64) -> BoundAuditRecord {
    let delta = grid.delta;
    let radius = radius_scale * 5f64.sqrt() * delta / 2.0;
    let r2 = radius * radius;
    let mut worst = 0.0f64;
    for &idx in &grid.occupied_boxes {
        let t_box = (idx as f64 + 0.5) * delta;
        let corners = [
            (grid.sigma0, idx as f64 * delta),
            (grid.sigma0, (idx as f64 + 1.0) * delta),
            (1.0, idx as f64 * delta),
            (1.0, (idx as f64 + 1.0) * delta),
        ];
        for (b, g) in corners {
            let dx = 1.0 - b;
            let dy = t_box - g;
            let d2 = dx * dx + dy * dy;
            worst = worst.max(d2 / r2);
        }
    }
    // corner-equality makes worst exactly 1 up to rounding, hence the slack
    let computed = worst.sqrt();
    BoundAuditRecord::checked("box-circle-cover", computed, 1.0 + 1e-12)
        .with_input("sigma0", grid.sigma0)
        .with_input("radius_scale", radius_scale)
        .with_input("occupied", grid.occupied_boxes.len())
}
