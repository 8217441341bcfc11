//! Scan grids: `k=A..B;r=LIST;arg=LIST`.
//!
//! Radii are `k`, `2k`, `k+0.5`, `10k-1` or plain numbers; angles are
//! multiples of π written as `0`, `1/4`, `0.5`.

use std::f64::consts::PI;

pub const DEFAULT_GRID: &str = "k=1..40;r=k,k+0.5,2k,10k;arg=0,1/4,1/2";
/// Most grid points a single scan evaluates.
pub const MAX_POINTS: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq)]
enum Radius {
    /// a k + b
    Linear(f64, f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub k_lo: u32,
    pub k_hi: u32,
    radii: Vec<Radius>,
    /// Angles as fractions of π.
    pub angles: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridPoint {
    pub k: u32,
    pub re: f64,
    pub im: f64,
}

fn parse_number(s: &str) -> Result<f64, String> {
    if let Some((p, q)) = s.split_once('/') {
        let p: f64 = p.trim().parse().map_err(|_| format!("bad number {s:?}"))?;
        let q: f64 = q.trim().parse().map_err(|_| format!("bad number {s:?}"))?;
        return Ok(p / q);
    }
    s.trim().parse().map_err(|_| format!("bad number {s:?}"))
}

fn parse_radius(s: &str) -> Result<Radius, String> {
    let s = s.trim();
    let Some(pos) = s.find('k') else {
        return Ok(Radius::Linear(0.0, parse_number(s)?));
    };
    let (coef, rest) = (&s[..pos], &s[pos + 1..]);
    let a = if coef.is_empty() { 1.0 } else { parse_number(coef)? };
    let b = if rest.is_empty() { 0.0 } else { parse_number(rest.trim_start_matches('+'))? };
    Ok(Radius::Linear(a, b))
}

impl Grid {
    pub fn parse(spec: &str) -> Result<Grid, String> {
        let mut grid = Grid {
            k_lo: 0,
            k_hi: 0,
            radii: Vec::new(),
            angles: Vec::new(),
        };
        for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, val) = part.split_once('=').ok_or(format!("expected key=value, got {part:?}"))?;
            match key.trim() {
                "k" => {
                    let (lo, hi) = val.split_once("..").ok_or("k range is A..B")?;
                    grid.k_lo = lo.trim().parse().map_err(|_| "bad k range")?;
                    grid.k_hi = hi.trim().parse().map_err(|_| "bad k range")?;
                }
                "r" => grid.radii = val.split(',').map(parse_radius).collect::<Result<_, _>>()?,
                "arg" => grid.angles = val.split(',').map(parse_number).collect::<Result<_, _>>()?,
                other => return Err(format!("unknown grid key {other:?}")),
            }
        }
        if grid.k_lo == 0 || grid.k_hi < grid.k_lo {
            return Err("k range must satisfy 1 <= A <= B".into());
        }
        if grid.radii.is_empty() || grid.angles.is_empty() {
            return Err("grid needs r and arg lists".into());
        }
        if grid.angles.iter().any(|a| !(-0.5..=0.5).contains(a)) {
            return Err("angles must lie in [-1/2, 1/2] (units of π)".into());
        }
        Ok(grid)
    }

    pub fn len(&self) -> usize {
        (self.k_hi - self.k_lo + 1) as usize * self.radii.len() * self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Points ordered by k, then radius, then angle.
    pub fn points(&self) -> Vec<GridPoint> {
        let mut out = Vec::with_capacity(self.len());
        for k in self.k_lo..=self.k_hi {
            for Radius::Linear(a, b) in &self.radii {
                let r = a * k as f64 + b;
                for &f in &self.angles {
                    let (re, im) = if f == 0.0 {
                        (r, 0.0)
                    } else if f.abs() == 0.5 {
                        (0.0, r * f.signum())
                    } else {
                        let th = PI * f;
                        (r * th.cos(), r * th.sin())
                    };
                    out.push(GridPoint { k, re, im });
                }
            }
        }
        out
    }
}
