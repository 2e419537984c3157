use std::fmt::Write as _;

use rand::Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};

use super::{AttenuationModel, NoiseFloor};
use crate::error::{invalid, Error, Result};
use crate::rng::{self, LabRng};

/// Points in R^d, stored row-major.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PointSet {
    d: usize,
    coords: Vec<f64>,
}

impl PointSet {
    pub fn new(d: usize) -> Self {
        Self { d, coords: Vec::new() }
    }

    pub fn from_coords(d: usize, coords: Vec<f64>) -> Result<Self> {
        if d == 0 || coords.len() % d != 0 {
            return Err(Error::Dimension(format!("{} coordinates in dimension {d}", coords.len())));
        }
        Ok(Self { d, coords })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        if self.d == 0 {
            0
        } else {
            self.coords.len() / self.d
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize) -> &[f64] {
        &self.coords[i * self.d..(i + 1) * self.d]
    }

    pub fn push(&mut self, p: &[f64]) {
        debug_assert_eq!(p.len(), self.d);
        self.coords.extend_from_slice(p);
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.d.max(1))
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self { d: self.d, coords: self.coords.iter().map(|x| x * c).collect() }
    }
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Spatial law for independent node positions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpatialLaw {
    /// Uniform on `[0, side]^d`.
    UniformCube { side: f64 },
    /// Independent centred normal coordinates.
    Gaussian { sd: f64 },
}

impl SpatialLaw {
    pub(crate) fn sample<R: Rng + ?Sized>(&self, d: usize, r: &mut R, out: &mut PointSet) {
        let p: Vec<f64> = match *self {
            Self::UniformCube { side } => (0..d).map(|_| side * r.random::<f64>()).collect(),
            Self::Gaussian { sd } => (0..d).map(|_| sd * r.sample::<f64, _>(StandardNormal)).collect(),
        };
        out.push(&p);
    }
}

/// How a placement was generated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlacementModel {
    /// Z^d within `[-extent, extent]^d`; every node sends to its +e₁
    /// neighbour, and nodes on the +e₁ face get no link.
    Regular { extent: i64 },
    /// Unit-density Poisson points in `[0, side]^d`, translated so the point
    /// nearest the centre sits at the origin and sorted by distance from it.
    /// Each node receives from its nearest neighbour.
    PoissonNearestNeighbour { side: f64 },
    /// n transmitters and n receivers drawn independently from `law`,
    /// transmitter i paired with receiver i.
    Iid { law: SpatialLaw },
    /// Iid with the uniform law on `[0,1]^d`.
    StandardDense,
}

/// Transmitter and receiver coordinates with the link map.
#[derive(Debug, Clone, PartialEq)]
pub struct Placement {
    pub model: PlacementModel,
    pub transmitters: PointSet,
    pub receivers: PointSet,
    /// `(transmitter, receiver)` index pairs.
    pub links: Vec<(usize, usize)>,
    /// True when node k is both transmitter k and receiver k, so a receiver
    /// hears no interference from itself.
    pub shared_nodes: bool,
}

impl Placement {
    pub fn dim(&self) -> usize {
        self.transmitters.dim()
    }

    /// Iid placement from explicit coordinates, paired by index.
    pub fn paired(transmitters: PointSet, receivers: PointSet) -> Result<Self> {
        if transmitters.len() != receivers.len() || transmitters.is_empty() {
            return Err(Error::Dimension("need equally many transmitters and receivers".into()));
        }
        if transmitters.dim() != receivers.dim() {
            return Err(Error::Dimension("transmitter and receiver dimensions differ".into()));
        }
        let links = (0..transmitters.len()).map(|i| (i, i)).collect();
        Ok(Self {
            model: PlacementModel::Iid { law: SpatialLaw::UniformCube { side: 1.0 } },
            transmitters,
            receivers,
            links,
            shared_nodes: false,
        })
    }

    /// Same placement with every coordinate multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            transmitters: self.transmitters.scaled(c),
            receivers: self.receivers.scaled(c),
            ..self.clone()
        }
    }

    /// CSV with one row per node: `role,index,x1,...,xd`.
    pub fn to_csv(&self) -> String {
        let d = self.dim();
        let mut out = String::from("role,index");
        for k in 1..=d {
            let _ = write!(out, ",x{k}");
        }
        out.push('\n');
        for (role, set) in [("T", &self.transmitters), ("R", &self.receivers)] {
            for (i, p) in set.iter().enumerate() {
                let _ = write!(out, "{role},{i}");
                for x in p {
                    let _ = write!(out, ",{x:e}");
                }
                out.push('\n');
            }
        }
        out
    }

    /// Parse the `to_csv` format; links are re-paired by index.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| invalid("empty placement file"))?;
        let d = header.split(',').count().saturating_sub(2);
        let mut tx = PointSet::new(d);
        let mut rx = PointSet::new(d);
        for line in lines {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != d + 2 {
                return Err(invalid(format!("placement row `{line}` has the wrong width")));
            }
            let coords: Vec<f64> = fields[2..]
                .iter()
                .map(|s| s.trim().parse::<f64>().map_err(|e| invalid(format!("bad coordinate {s}: {e}"))))
                .collect::<Result<_>>()?;
            match fields[0] {
                "T" => tx.push(&coords),
                "R" => rx.push(&coords),
                other => return Err(invalid(format!("unknown role {other}"))),
            }
        }
        Self::paired(tx, rx)
    }
}

fn nearest_neighbours(points: &PointSet) -> Vec<usize> {
    (0..points.len())
        .map(|j| {
            let mut best = (f64::INFINITY, usize::MAX);
            for k in 0..points.len() {
                if k != j {
                    let dist = distance(points.get(j), points.get(k));
                    // strict comparison keeps the lowest index on ties
                    if dist < best.0 {
                        best = (dist, k);
                    }
                }
            }
            best.1
        })
        .collect()
}

fn regular(extent: i64, d: usize) -> Placement {
    let side = (2 * extent + 1) as usize;
    let total = side.pow(d as u32);
    let mut nodes = PointSet::new(d);
    for idx in 0..total {
        let mut rem = idx;
        let p: Vec<f64> = (0..d)
            .map(|_| {
                let c = (rem % side) as i64 - extent;
                rem /= side;
                c as f64
            })
            .collect();
        nodes.push(&p);
    }
    let mut links = Vec::new();
    for i in 0..total {
        if (i % side) as i64 - extent < extent {
            links.push((i, i + 1));
        }
    }
    Placement {
        model: PlacementModel::Regular { extent },
        receivers: nodes.clone(),
        transmitters: nodes,
        links,
        shared_nodes: true,
    }
}

pub(crate) fn poisson_nn(side: f64, d: usize, r: &mut LabRng) -> Result<Placement> {
    let mean = side.powi(d as i32);
    let law = Poisson::new(mean).map_err(|e| invalid(format!("Poisson mean {mean}: {e}")))?;
    let count = loop {
        let c = law.sample(r) as usize;
        if c > 0 {
            break c;
        }
    };
    let mut raw = PointSet::new(d);
    for _ in 0..count {
        SpatialLaw::UniformCube { side }.sample(d, r, &mut raw);
    }
    let centre = vec![side / 2.0; d];
    let origin = (0..count)
        .min_by(|a, b| distance(raw.get(*a), &centre).total_cmp(&distance(raw.get(*b), &centre)))
        .expect("non-empty");
    let o = raw.get(origin).to_vec();
    let mut shifted: Vec<Vec<f64>> = raw.iter().map(|p| p.iter().zip(&o).map(|(x, y)| x - y).collect()).collect();
    shifted.sort_by(|a, b| norm(a).total_cmp(&norm(b)));
    let mut nodes = PointSet::new(d);
    for p in &shifted {
        nodes.push(p);
    }
    let links = nearest_neighbours(&nodes).into_iter().enumerate().filter(|(_, t)| *t != usize::MAX).map(|(j, t)| (t, j)).collect();
    Ok(Placement {
        model: PlacementModel::PoissonNearestNeighbour { side },
        receivers: nodes.clone(),
        transmitters: nodes,
        links,
        shared_nodes: true,
    })
}

/// Draw a placement. `n` sizes the iid models; the lattice and Poisson models
/// are sized by their own extent.
pub fn sample_placement(model: PlacementModel, n: usize, d: usize, seed: u64) -> Result<Placement> {
    if n == 0 || d == 0 {
        return Err(invalid("need n >= 1 and d >= 1"));
    }
    let r = &mut rng::seeded(seed);
    sample_placement_with(model, n, d, r)
}

pub(crate) fn sample_placement_with(model: PlacementModel, n: usize, d: usize, r: &mut LabRng) -> Result<Placement> {
    match model {
        PlacementModel::Regular { extent } => {
            if extent < 1 {
                return Err(invalid("regular extent must be at least 1"));
            }
            Ok(regular(extent, d))
        }
        PlacementModel::PoissonNearestNeighbour { side } => {
            if !(side > 0.0) {
                return Err(invalid("Poisson box side must be positive"));
            }
            poisson_nn(side, d, r)
        }
        PlacementModel::Iid { law } => {
            let mut tx = PointSet::new(d);
            let mut rx = PointSet::new(d);
            for _ in 0..n {
                law.sample(d, r, &mut tx);
                law.sample(d, r, &mut rx);
            }
            let mut p = Placement::paired(tx, rx)?;
            p.model = model;
            Ok(p)
        }
        PlacementModel::StandardDense => {
            let mut p = sample_placement_with(PlacementModel::Iid { law: SpatialLaw::UniformCube { side: 1.0 } }, n, d, r)?;
            p.model = PlacementModel::StandardDense;
            Ok(p)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkRate {
    pub sinr: f64,
    /// `log₂(1 + sinr)` bits per channel use.
    pub rate: f64,
}

/// SINR and interference-as-noise rate of link `link` when every other
/// transmitter is active.
pub fn link_rate(placement: &Placement, atten: &AttenuationModel, link: usize, noise: NoiseFloor) -> Result<LinkRate> {
    let &(tx, rx) = placement
        .links
        .get(link)
        .ok_or_else(|| invalid(format!("link {link} out of range")))?;
    let receiver = placement.receivers.get(rx);
    let signal = atten.power(distance(receiver, placement.transmitters.get(tx)))?;
    let mut interference = 0.0;
    for (k, t) in placement.transmitters.iter().enumerate() {
        if k == tx || (placement.shared_nodes && k == rx) {
            continue;
        }
        interference += atten.power(distance(receiver, t))?;
    }
    let denom = noise.power() + interference;
    let sinr = if denom == 0.0 { f64::INFINITY } else { signal / denom };
    Ok(LinkRate { sinr, rate: (1.0 + sinr).log2() })
}
