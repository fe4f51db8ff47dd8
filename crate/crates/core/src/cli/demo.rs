//! `hamrep demo`: samples a transformed Gaussian wavepacket on a grid.

use std::fmt::Write as _;
use std::str::FromStr;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::groups::{GroupParams, GroupParamsJson, WhElement};
use crate::liealg::Family;
use crate::repops::QuadPhaseOperator;
use crate::uir::{catalog, rep_value, wh_rep, Element, RepLabels};

/// Sample points `lo, ..., hi` (inclusive, `count` of them).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Axis {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count).map(|k| self.lo + step * k as f64).collect()
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("invalid grid axis `{s}` (expected LO:HI:COUNT)"));
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let [lo, hi, count] = parts[..] else { return Err(bad()) };
        let axis = Axis {
            lo: lo.parse().map_err(|_| bad())?,
            hi: hi.parse().map_err(|_| bad())?,
            count: count.parse().map_err(|_| bad())?,
        };
        if !axis.lo.is_finite() || !axis.hi.is_finite() || axis.count == 0 || axis.lo > axis.hi || axis.count > 1_000_000 {
            return Err(bad());
        }
        if axis.count == 1 && axis.lo != axis.hi {
            return Err(bad());
        }
        Ok(axis)
    }
}

/// `X0:X1:NX[,T0:T1:NT]`; the spatial axis runs along the first coordinate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub x: Axis,
    pub t: Axis,
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (x, t) = match s.split_once(',') {
            Some((x, t)) => (x.parse()?, t.parse()?),
            None => (s.parse()?, Axis { lo: 0.0, hi: 0.0, count: 1 }),
        };
        Ok(Grid { x, t })
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Packet {
    pub center: Vec<f64>,
    pub momentum: Vec<f64>,
    pub width: f64,
}

impl Default for Packet {
    fn default() -> Self {
        Packet { center: vec![], momentum: vec![], width: 1.0 }
    }
}

impl Packet {
    /// `exp(−|y − c|²/(2w²) + i k·y)`, constant in time.
    pub fn eval(&self, y: &[f64]) -> Complex64 {
        let at = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
        let mut r2 = 0.0;
        let mut kx = 0.0;
        for (i, yi) in y.iter().enumerate() {
            r2 += (yi - at(&self.center, i)).powi(2);
            kx += at(&self.momentum, i) * yi;
        }
        Complex64::from_polar((-r2 / (2.0 * self.width * self.width)).exp(), kx)
    }
}

/// The transformation applied by the demo.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Transform {
    #[serde(default = "default_family")]
    pub family: String,
    #[serde(default)]
    pub labels: RepLabels,
    pub element: GroupParamsJson,
    #[serde(default)]
    pub packet: Packet,
}

fn default_family() -> String {
    "QHa".into()
}

impl Transform {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Config(format!("transform: {e}")))
    }

    /// The operator on the sampled factor: the base factor, or the internal
    /// factor (with the consolidated constant phase) for the Hamilton group.
    pub fn operator(&self) -> Result<QuadPhaseOperator> {
        let family: Family = self.family.parse()?;
        let g = GroupParams::try_from(self.element.clone())?;
        let mut labels = self.labels.clone();
        labels.j = 0.0;
        if family == Family::WeylHeisenberg {
            return wh_rep(&labels, &WhElement::from_params(&g));
        }
        let cat = catalog(family, g.n(), &labels)?;
        let v = rep_value(&cat, &Element::from(&g.restrict(family)))?;
        if cat.has_base() {
            Ok(v.base)
        } else {
            let mut u = v.internal;
            u.phase.c0 += v.base.phase.c0;
            Ok(u)
        }
    }
}

/// CSV with columns `x, t, re, im, abs2` of the transformed packet.
pub fn demo_csv(grid: &Grid, transform: &Transform) -> Result<String> {
    let u = transform.operator()?;
    let n = u.n();
    let mut out = String::from("x,t,re,im,abs2\n");
    for t in grid.t.points() {
        for x in grid.x.points() {
            let mut pt = DVector::zeros(n);
            pt[0] = x;
            let z = u.apply(&|y: &[f64], _| transform.packet.eval(y), pt.as_slice(), t);
            writeln!(out, "{x},{t},{},{},{}", z.re, z.im, z.norm_sqr()).expect("write to string");
        }
    }
    Ok(out)
}
