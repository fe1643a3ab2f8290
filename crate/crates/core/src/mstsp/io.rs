//! Plain-text instance format.
//!
//! ```text
//! MSTSP 1
//! nodes <n>
//! sets <m>
//! <node ids of set 0>
//! ...
//! weights <w_0> ... <w_{n-1}>
//! depots <d>
//! <init x> <init y> <end x> <end y>
//! out <row of n legs>          (one line per depot)
//! in <row of n legs>           (one line per depot)
//! edges
//! <row of n weights>           (n lines, `inf` inside a set)
//! end
//! ```
//!
//! Numbers are written with Rust's shortest round-trip formatting, so a
//! dump followed by a load reproduces the instance exactly.

use std::fmt::Write;

use super::{Depot, MstspError, MstspInstance};
use crate::geometry::Point2D;

fn join(xs: impl IntoIterator<Item = f64>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn dump_instance(inst: &MstspInstance) -> String {
    let n = inst.n_nodes();
    let mut s = String::new();
    let _ = writeln!(s, "MSTSP 1\nnodes {n}\nsets {}", inst.sets().len());
    for set in inst.sets() {
        let ids: Vec<String> = set.iter().map(usize::to_string).collect();
        let _ = writeln!(s, "{}", ids.join(" "));
    }
    let _ = writeln!(s, "weights {}", join((0..n).map(|v| inst.node_weight(v))));
    let _ = writeln!(s, "depots {}", inst.depots().len());
    for d in inst.depots() {
        let _ = writeln!(s, "{}", join([d.init.x, d.init.y, d.end.x, d.end.y]));
    }
    let (out, inn) = inst.depot_tables();
    for row in out {
        let _ = writeln!(s, "out {}", join(row.iter().copied()));
    }
    for row in inn {
        let _ = writeln!(s, "in {}", join(row.iter().copied()));
    }
    s.push_str("edges\n");
    for u in 0..n {
        let _ = writeln!(s, "{}", join((0..n).map(|v| inst.edge(u, v))));
    }
    s.push_str("end\n");
    s
}

struct Lines<'a> {
    it: std::iter::Enumerate<std::str::Lines<'a>>,
    line: usize,
}

impl<'a> Lines<'a> {
    fn err(&self, msg: impl Into<String>) -> MstspError {
        MstspError::Parse { line: self.line, msg: msg.into() }
    }

    fn next(&mut self) -> Result<&'a str, MstspError> {
        loop {
            let (i, l) = self.it.next().ok_or_else(|| MstspError::Parse { line: self.line + 1, msg: "unexpected end of input".into() })?;
            self.line = i + 1;
            let l = l.trim();
            if !l.is_empty() && !l.starts_with('#') {
                return Ok(l);
            }
        }
    }

    /// Next line, which must start with `key`; returns the rest.
    fn keyed(&mut self, key: &str) -> Result<&'a str, MstspError> {
        let l = self.next()?;
        match l.split_once(char::is_whitespace) {
            Some((k, rest)) if k == key => Ok(rest.trim()),
            None if l == key => Ok(""),
            _ => Err(self.err(format!("expected `{key}`"))),
        }
    }

    fn count(&mut self, key: &str) -> Result<usize, MstspError> {
        let v = self.keyed(key)?;
        v.parse().map_err(|_| self.err(format!("bad count `{v}`")))
    }

    fn floats(&self, s: &str, n: usize) -> Result<Vec<f64>, MstspError> {
        let v: Vec<f64> = s
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|_| self.err(format!("bad number `{t}`"))))
            .collect::<Result<_, _>>()?;
        if v.len() != n {
            return Err(self.err(format!("expected {n} numbers, found {}", v.len())));
        }
        Ok(v)
    }
}

pub fn load_instance(text: &str) -> Result<MstspInstance, MstspError> {
    let mut r = Lines { it: text.lines().enumerate(), line: 0 };
    if r.next()? != "MSTSP 1" {
        return Err(r.err("expected header `MSTSP 1`"));
    }
    let n = r.count("nodes")?;
    let m = r.count("sets")?;
    let mut sets = Vec::with_capacity(m);
    for _ in 0..m {
        let l = r.next()?;
        let ids: Vec<usize> = l
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| r.err(format!("bad node id `{t}`"))))
            .collect::<Result<_, _>>()?;
        sets.push(ids);
    }
    let w = r.keyed("weights")?;
    let weights = r.floats(w, n)?;
    let d = r.count("depots")?;
    let mut depots = Vec::with_capacity(d);
    for _ in 0..d {
        let l = r.next()?;
        let v = r.floats(l, 4)?;
        depots.push(Depot { init: Point2D::new(v[0], v[1]), end: Point2D::new(v[2], v[3]) });
    }
    let mut out = Vec::with_capacity(d);
    for _ in 0..d {
        let l = r.keyed("out")?;
        out.push(r.floats(l, n)?);
    }
    let mut inn = Vec::with_capacity(d);
    for _ in 0..d {
        let l = r.keyed("in")?;
        inn.push(r.floats(l, n)?);
    }
    r.keyed("edges")?;
    let mut edge = Vec::with_capacity(n * n);
    for _ in 0..n {
        let l = r.next()?;
        edge.extend(r.floats(l, n)?);
    }
    r.keyed("end")?;
    MstspInstance::new(sets, weights, edge, depots, out, inn)
}
