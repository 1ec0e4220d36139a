//! Map specifications `name:key=value,key=value` and the builders behind
//! them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::*;
use crate::error::{Error, Result};
use crate::grid::{power_map, CircleGrid, CircleMap};
use crate::sphere2::{
    random_rational, stereographic_power, suspension, vo1_pair, LatLongGrid, Sphere2Map, SuspensionSpec, NORTH,
};

/// A parsed map specification.
#[derive(Clone, Debug, PartialEq)]
pub struct MapSpec {
    pub name: String,
    params: BTreeMap<String, String>,
}

impl FromStr for MapSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, rest) = match s.split_once(':') {
            Some((n, r)) => (n, r),
            None => (s, ""),
        };
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
            return Err(Error::Parse(format!("bad map name in {s:?}")));
        }
        let mut params = BTreeMap::new();
        for item in rest.split(',').filter(|t| !t.trim().is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {item:?}")))?;
            let (k, v) = (k.trim(), v.trim());
            if k.is_empty() || v.is_empty() {
                return Err(Error::Parse(format!("empty key or value in {item:?}")));
            }
            if params.insert(k.to_string(), v.to_string()).is_some() {
                return Err(Error::Parse(format!("duplicate key {k:?}")));
            }
        }
        Ok(Self {
            name: name.to_string(),
            params,
        })
    }
}

impl fmt::Display for MapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        for (i, (k, v)) in self.params.iter().enumerate() {
            write!(f, "{}{k}={v}", if i == 0 { ':' } else { ',' })?;
        }
        Ok(())
    }
}

impl MapSpec {
    pub fn real(&self, key: &str) -> Result<Option<f64>> {
        self.params
            .get(key)
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("{key}={v} is not a number")))
            })
            .transpose()
    }

    pub fn real_or(&self, key: &str, default: f64) -> Result<f64> {
        Ok(self.real(key)?.unwrap_or(default))
    }

    pub fn int(&self, key: &str) -> Result<Option<i64>> {
        match self.real(key)? {
            None => Ok(None),
            Some(v) if v.fract() == 0.0 && v.abs() < 1e15 => Ok(Some(v as i64)),
            Some(v) => Err(Error::Parse(format!("{key}={v} is not an integer"))),
        }
    }

    pub fn int_or(&self, key: &str, default: i64) -> Result<i64> {
        Ok(self.int(key)?.unwrap_or(default))
    }

    pub fn require_int(&self, key: &str) -> Result<i64> {
        self.int(key)?
            .ok_or_else(|| Error::Parse(format!("{}: missing parameter {key}", self.name)))
    }

    pub fn require_real(&self, key: &str) -> Result<f64> {
        self.real(key)?
            .ok_or_else(|| Error::Parse(format!("{}: missing parameter {key}", self.name)))
    }

    pub fn text(&self, key: &str) -> Option<&str> {
        self.params.get(key).map(String::as_str)
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        match self.params.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(Error::Parse(format!("{}: unknown parameter {k:?}", self.name))),
            None => Ok(()),
        }
    }
}

/// Names accepted by [`build_pair`].
pub const PAIR_NAMES: &[&str] = &["zigzag", "deflate", "attainment", "plateau", "product-shift", "bump"];

/// Names accepted by [`build`] for circle maps (besides the pair names).
pub const CIRCLE_NAMES: &[&str] = &[
    "power",
    "blaschke",
    "oscillator",
    "multi-bump",
    "dense-onto",
    "locally-constant",
];

/// Names accepted by [`build`] for sphere maps.
pub const SPHERE_NAMES: &[&str] = &["stereo", "suspension", "multi-bump-s2", "bump-s2", "vo1", "rational"];

/// A map built from a specification.
#[derive(Clone, Debug)]
pub enum AnyMap {
    Circle(GalleryMap),
    Sphere(Sphere2Map),
}

/// Builds a gallery pair on S¹. Keys: `zigzag:d1,d2`, `deflate:d1,d,lambda`,
/// `attainment:d1,p`, `plateau:d1,d2`, `product-shift:d1,d2` (or `d`),
/// `bump:eps`.
pub fn build_pair(spec: &MapSpec, grid: CircleGrid) -> Result<GalleryPair> {
    fn keys<'a>(extra: &[&'a str]) -> Vec<&'a str> {
        extra.iter().copied().chain(["side"]).collect()
    }
    match spec.name.as_str() {
        "zigzag" => {
            spec.check_keys(&keys(&["d1", "d2"]))?;
            zigzag_pair(spec.require_int("d1")?, spec.require_int("d2")?, grid)
        }
        "deflate" => {
            spec.check_keys(&keys(&["d1", "d", "lambda"]))?;
            let lambda = spec.real_or("lambda", 0.1)?;
            let base = locally_constant_map(spec.int_or("d1", 1)?, lambda.max(0.5), grid)?;
            deflate_phase(&base.map, spec.require_int("d")?, lambda)
        }
        "attainment" => {
            spec.check_keys(&keys(&["d1", "p"]))?;
            attainment_pair(spec.int_or("d1", 1)?, spec.real_or("p", 1.5)?, grid)
        }
        "plateau" => {
            spec.check_keys(&keys(&["d1", "d2"]))?;
            plateau_pair(spec.require_int("d1")?, spec.require_int("d2")?, grid)
        }
        "product-shift" => {
            // `d` is shorthand for `d1 = d, d2 = 0`
            spec.check_keys(&keys(&["d1", "d2", "d"]))?;
            let d1 = match spec.int("d")? {
                Some(d) if spec.int("d1")?.is_none() => d,
                Some(_) => return Err(Error::Parse("product-shift: give d or d1, not both".into())),
                None => spec.require_int("d1")?,
            };
            product_shift(d1, spec.int_or("d2", 0)?, grid)
        }
        "bump" => {
            spec.check_keys(&keys(&["eps"]))?;
            bump_pair(spec.real_or("eps", 1e-3)?, grid)
        }
        other => Err(Error::Parse(format!(
            "unknown pair {other:?}; expected one of {}",
            PAIR_NAMES.join(", ")
        ))),
    }
}

/// Default S² grid, 128 × 256.
pub fn default_sphere_grid() -> Arc<LatLongGrid> {
    Arc::new(LatLongGrid::uniform(128, 256).expect("valid grid"))
}

/// Builds a single map. Pair names take `side=f|g` (default `f`).
pub fn build(spec: &MapSpec, grid: CircleGrid) -> Result<AnyMap> {
    let circle = |map: CircleMap| -> Result<AnyMap> {
        Ok(AnyMap::Circle(GalleryMap {
            phase: crate::grid::lift(&map)?,
            map,
            dphase: None,
        }))
    };
    match spec.name.as_str() {
        "power" => {
            spec.check_keys(&["d"])?;
            circle(power_map(spec.require_int("d")?, grid))
        }
        "blaschke" => {
            spec.check_keys(&["d", "delta"])?;
            circle(blaschke_pow(spec.require_int("d")?, spec.real_or("delta", 0.5)?, grid)?)
        }
        "oscillator" => {
            spec.check_keys(&["d1", "n"])?;
            Ok(AnyMap::Circle(oscillator(spec.int_or("d1", 1)?, spec.require_int("n")?, grid)?))
        }
        "multi-bump" => {
            spec.check_keys(&["d", "n"])?;
            Ok(AnyMap::Circle(multi_bump(spec.require_int("d")?, spec.int_or("n", 16)?, grid)?))
        }
        "dense-onto" => {
            spec.check_keys(&["d1", "n"])?;
            Ok(AnyMap::Circle(dense_onto(spec.int_or("d1", 0)?, spec.int_or("n", 8)?, grid)?))
        }
        "locally-constant" => {
            spec.check_keys(&["d1", "flat"])?;
            Ok(AnyMap::Circle(locally_constant_map(
                spec.int_or("d1", 1)?,
                spec.real_or("flat", 0.5)?,
                grid,
            )?))
        }
        "stereo" => {
            spec.check_keys(&["d"])?;
            Ok(AnyMap::Sphere(stereographic_power(spec.require_int("d")?, default_sphere_grid())?))
        }
        "suspension" => {
            spec.check_keys(&["k", "dh", "radius"])?;
            let radius = spec.real_or("radius", CAP_RADIUS)?;
            let grid = Arc::new(LatLongGrid::cap(radius, 96, 32, 256)?);
            let s = SuspensionSpec::smooth(spec.require_int("k")?, spec.require_int("dh")?, NORTH, radius);
            Ok(AnyMap::Sphere(suspension(&s, grid)?))
        }
        "multi-bump-s2" => {
            spec.check_keys(&["d", "n"])?;
            Ok(AnyMap::Sphere(crate::gallery::multi_bump_s2(
                spec.require_int("d")?,
                spec.int_or("n", 2)?,
                default_sphere_grid(),
            )?))
        }
        "bump-s2" => {
            spec.check_keys(&["eps", "side"])?;
            let eps = spec.real_or("eps", 1e-3)?;
            let grid = Arc::new(bump_grid_s2(eps, 24, 128)?);
            let (f, g) = bump_pair_s2(eps, grid)?;
            Ok(AnyMap::Sphere(pick(spec, f, g)?))
        }
        "vo1" => {
            spec.check_keys(&["d1", "d2", "side"])?;
            let grid = Arc::new(vo1_grid()?);
            let (f, g) = vo1_pair(spec.require_int("d1")?, spec.int_or("d2", 0)?, CAP_RADIUS, grid)?;
            Ok(AnyMap::Sphere(pick(spec, f, g)?))
        }
        "rational" => {
            spec.check_keys(&["d", "seed"])?;
            Ok(AnyMap::Sphere(random_rational(
                spec.require_int("d")?,
                spec.int_or("seed", 0)? as u64,
                default_sphere_grid(),
            )?))
        }
        name if PAIR_NAMES.contains(&name) => {
            let pair = build_pair(spec, grid)?;
            Ok(AnyMap::Circle(pick(spec, pair.f, pair.g)?))
        }
        other => Err(Error::Parse(format!(
            "unknown map {other:?}; expected one of {}, {}, {}",
            CIRCLE_NAMES.join(", "),
            SPHERE_NAMES.join(", "),
            PAIR_NAMES.join(", ")
        ))),
    }
}

fn pick<T>(spec: &MapSpec, f: T, g: T) -> Result<T> {
    match spec.text("side").unwrap_or("f") {
        "f" => Ok(f),
        "g" => Ok(g),
        other => Err(Error::Parse(format!("side must be f or g, got {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        let s: MapSpec = "blaschke:d=2,delta=4e-1".parse().unwrap();
        assert_eq!(s.name, "blaschke");
        assert_eq!(s.int("d").unwrap(), Some(2));
        assert_eq!(s.real("delta").unwrap(), Some(0.4));
        assert_eq!(s.to_string(), "blaschke:d=2,delta=4e-1");
        let bare: MapSpec = "power".parse().unwrap();
        assert_eq!(bare.to_string(), "power");
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", ":d=1", "power:d", "power:d=1,d=2", "power:=3", "po wer:d=1"] {
            assert!(bad.parse::<MapSpec>().is_err(), "{bad:?}");
        }
        let s: MapSpec = "power:d=1.5".parse().unwrap();
        assert!(s.int("d").is_err());
    }

    #[test]
    fn unknown_names_and_keys_fail() {
        let g = CircleGrid::new(256).unwrap();
        assert!(build(&"nope:d=1".parse().unwrap(), g).is_err());
        assert!(build(&"power:d=1,x=2".parse().unwrap(), g).is_err());
    }
}
