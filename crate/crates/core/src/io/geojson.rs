//! GeoJSON reading and writing for regions and flight paths.
//!
//! Regions come from a single Polygon (bare geometry, Feature, or a
//! FeatureCollection holding one Polygon feature). The first ring is the
//! area of interest, every further ring a no-fly zone. Coordinates are
//! meters unless an [`Origin`] is given, in which case they are WGS84
//! `[lon, lat]` and are projected equirectangularly about it.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::IoError;
use crate::geometry::{Point2D, Region};

const EARTH_RADIUS: f64 = 6_378_137.0;

/// Tangent point of the local metric frame, degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Origin {
    pub lon: f64,
    pub lat: f64,
}

impl Origin {
    pub fn to_local(&self, lon: f64, lat: f64) -> Point2D {
        let k = EARTH_RADIUS * std::f64::consts::PI / 180.0;
        Point2D::new(k * (lon - self.lon) * self.lat.to_radians().cos(), k * (lat - self.lat))
    }

    pub fn to_wgs84(&self, p: Point2D) -> (f64, f64) {
        let k = EARTH_RADIUS * std::f64::consts::PI / 180.0;
        (self.lon + p.x / (k * self.lat.to_radians().cos()), self.lat + p.y / k)
    }
}

fn bad(msg: impl Into<String>) -> IoError {
    IoError::GeoJson(msg.into())
}

fn polygon_of(v: &Value) -> Result<&Value, IoError> {
    let kind = v.get("type").and_then(Value::as_str).ok_or_else(|| bad("missing \"type\""))?;
    match kind {
        "Polygon" => v.get("coordinates").ok_or_else(|| bad("Polygon without coordinates")),
        "Feature" => polygon_of(v.get("geometry").ok_or_else(|| bad("Feature without geometry"))?),
        "FeatureCollection" => {
            let feats = v.get("features").and_then(Value::as_array).ok_or_else(|| bad("missing features"))?;
            let polys: Vec<&Value> = feats
                .iter()
                .filter(|f| f.pointer("/geometry/type").and_then(Value::as_str) == Some("Polygon"))
                .collect();
            match polys.as_slice() {
                [one] => polygon_of(one),
                [] => Err(bad("FeatureCollection has no Polygon feature")),
                _ => Err(bad("FeatureCollection must hold exactly one Polygon feature")),
            }
        }
        other => Err(bad(format!("unsupported type {other:?}, expected a Polygon"))),
    }
}

fn ring_of(v: &Value, origin: Option<&Origin>) -> Result<Vec<Point2D>, IoError> {
    let pts = v.as_array().ok_or_else(|| bad("ring is not an array"))?;
    let mut ring = Vec::with_capacity(pts.len());
    for p in pts {
        let c = p.as_array().filter(|c| c.len() >= 2).ok_or_else(|| bad("position needs two numbers"))?;
        let (x, y) = match (c[0].as_f64(), c[1].as_f64()) {
            (Some(x), Some(y)) => (x, y),
            _ => return Err(bad("position coordinates must be numbers")),
        };
        ring.push(match origin {
            Some(o) => o.to_local(x, y),
            None => Point2D::new(x, y),
        });
    }
    if ring.len() > 1 && ring.first() == ring.last() {
        ring.pop();
    }
    Ok(ring)
}

/// Reads a region. See the module docs for the accepted shapes.
pub fn parse_region(v: &Value, origin: Option<&Origin>) -> Result<Region, IoError> {
    let rings = polygon_of(v)?.as_array().ok_or_else(|| bad("Polygon coordinates must be an array of rings"))?;
    let Some((outer, holes)) = rings.split_first() else {
        return Err(bad("Polygon has no rings"));
    };
    let outer = ring_of(outer, origin)?;
    let holes = holes.iter().map(|h| ring_of(h, origin)).collect::<Result<Vec<_>, _>>()?;
    Ok(Region::new(outer, holes)?)
}

fn position(p: Point2D, origin: Option<&Origin>) -> Value {
    match origin {
        Some(o) => {
            let (lon, lat) = o.to_wgs84(p);
            json!([lon, lat])
        }
        None => json!([p.x, p.y]),
    }
}

fn closed_ring(ring: &[Point2D], origin: Option<&Origin>) -> Value {
    let mut v: Vec<Value> = ring.iter().map(|&p| position(p, origin)).collect();
    v.push(position(ring[0], origin));
    Value::Array(v)
}

/// Region as a Polygon Feature (outer ring counterclockwise, holes clockwise).
pub fn region_to_geojson(region: &Region, origin: Option<&Origin>) -> Value {
    let rings: Vec<Value> = region.rings().map(|r| closed_ring(r, origin)).collect();
    json!({ "type": "Feature", "properties": {}, "geometry": { "type": "Polygon", "coordinates": rings } })
}

/// One LineString feature per path, with free-form properties.
pub fn paths_to_geojson(paths: &[(Vec<Point2D>, Value)], origin: Option<&Origin>) -> Value {
    let features: Vec<Value> = paths
        .iter()
        .map(|(wps, props)| {
            let coords: Vec<Value> = wps.iter().map(|&p| position(p, origin)).collect();
            json!({ "type": "Feature", "properties": props, "geometry": { "type": "LineString", "coordinates": coords } })
        })
        .collect();
    json!({ "type": "FeatureCollection", "features": features })
}

/// Reads back every LineString of a FeatureCollection.
pub fn parse_paths(v: &Value, origin: Option<&Origin>) -> Result<Vec<Vec<Point2D>>, IoError> {
    let feats = v.get("features").and_then(Value::as_array).ok_or_else(|| bad("missing features"))?;
    feats
        .iter()
        .filter(|f| f.pointer("/geometry/type").and_then(Value::as_str) == Some("LineString"))
        .map(|f| {
            let coords = f.pointer("/geometry/coordinates").ok_or_else(|| bad("LineString without coordinates"))?;
            let mut pts = ring_of(coords, origin)?;
            // ring_of drops a repeated closing point; a path that returns
            // home keeps it
            let n = coords.as_array().map_or(0, Vec::len);
            if pts.len() + 1 == n {
                pts.push(pts[0]);
            }
            Ok(pts)
        })
        .collect()
}
