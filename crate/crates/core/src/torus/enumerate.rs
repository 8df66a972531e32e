//! Brute-force sums over loop configurations and over currents, for the
//! tiny tori (`T ≤ 2`, at most 16 edges) where they are feasible.
//!
//! A configuration is a successor map on a subset of edges: every used edge
//! except a sink has exactly one successor among the two edges leaving its
//! endpoint, and every used edge except a source has exactly one predecessor.
//! We enumerate the used subset first (it must balance at every point) and
//! then the local matchings at each point.

use num_complex::Complex64;
use serde::Serialize;

use super::{EdgeId, Point, TorusLattice};
use crate::error::{Error, Result};

pub const ENUMERATION_MAX: usize = 2;

/// Edge letters on the torus of size 1, by edge index.
const LETTERS: [char; 4] = ['d', 'a', 'b', 'c'];

/// Order in which the nine configurations on the torus of size 1 are usually listed.
const TABLE_ORDER: [&str; 9] = [
    "{}",
    "{aba}",
    "{cdc}",
    "{aca}",
    "{bdb}",
    "{abdca}",
    "{acdba}",
    "{aba,cdc}",
    "{aca,bdb}",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoopConfig {
    /// Each loop listed once, starting from its lowest-indexed edge.
    pub loops: Vec<Vec<EdgeId>>,
    /// Path `i` starts at source `i`.
    pub paths: Vec<Vec<EdgeId>>,
    pub arrow: Complex64,
    /// Bit `i` set when the edge with index `i` is used.
    pub edges: u64,
    pub turns: usize,
    #[serde(skip)]
    successor: Vec<Option<usize>>,
    #[serde(skip)]
    sources: Vec<usize>,
    #[serde(skip)]
    sinks: Vec<usize>,
}

impl LoopConfig {
    pub fn contains(&self, lat: &TorusLattice, e: EdgeId) -> bool {
        self.edges >> lat.edge_index(e) & 1 == 1
    }

    pub fn successor(&self, lat: &TorusLattice, e: EdgeId) -> Option<EdgeId> {
        self.successor[lat.edge_index(e)].map(|i| lat.edge_at(i))
    }

    /// Re-pairs the nodes at the endpoint of `e`: `(e,f),(e′,f′)` become
    /// `(e,f′),(e′,f)`. Two loops merge or one loop splits.
    pub fn flip(&self, lat: &TorusLattice, e: EdgeId) -> Result<LoopConfig> {
        let [p, q] = lat.incoming(lat.end(e));
        let other = if p == e { q } else { p };
        let (ie, io) = (lat.edge_index(e), lat.edge_index(other));
        match (self.successor[ie], self.successor[io]) {
            (Some(f), Some(g)) => {
                let mut succ = self.successor.clone();
                succ[ie] = Some(g);
                succ[io] = Some(f);
                assemble(lat, succ, self.edges, &self.sources, &self.sinks, None)
            }
            _ => Err(Error::domain(format!(
                "no flip at the endpoint of {e:?}: a node is missing"
            ))),
        }
    }

    /// Letter notation on the torus of size 1, e.g. `{aca,bdb}`.
    pub fn name(&self, lat: &TorusLattice) -> Option<String> {
        if lat.size() != 1 {
            return None;
        }
        let word = |edges: &[EdgeId]| -> String {
            edges.iter().map(|&e| LETTERS[lat.edge_index(e)]).collect()
        };
        let mut parts: Vec<String> = self
            .loops
            .iter()
            .map(|l| {
                let start = (0..l.len())
                    .min_by_key(|&i| LETTERS[lat.edge_index(l[i])])
                    .unwrap();
                let mut rotated: Vec<EdgeId> =
                    l[start..].iter().chain(&l[..start]).copied().collect();
                rotated.push(rotated[0]);
                word(&rotated)
            })
            .collect();
        parts.sort();
        parts.extend(self.paths.iter().map(|p| word(p)));
        Some(format!("{{{}}}", parts.join(",")))
    }
}

fn check_size(lat: &TorusLattice) -> Result<()> {
    if lat.size() > ENUMERATION_MAX {
        return Err(Error::size(format!(
            "brute-force enumeration limited to T <= {ENUMERATION_MAX}, got {}",
            lat.size()
        )));
    }
    Ok(())
}

fn has_repeats(v: &[usize]) -> bool {
    (0..v.len()).any(|i| v[i + 1..].contains(&v[i]))
}

fn permutation_sign(perm: &[usize]) -> f64 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Builds the configuration from a successor map; nodes whose common point is
/// flagged in `skip_points` contribute no weight (singularities of a current).
fn assemble(
    lat: &TorusLattice,
    successor: Vec<Option<usize>>,
    edges: u64,
    sources: &[usize],
    sinks: &[usize],
    skip_points: Option<&[bool]>,
) -> Result<LoopConfig> {
    let n = lat.num_edges();
    let mut seen = vec![false; n];
    let mut paths = Vec::with_capacity(sources.len());
    let mut sigma = Vec::with_capacity(sources.len());
    for &a in sources {
        let mut path = vec![a];
        seen[a] = true;
        let mut cur = a;
        while let Some(next) = successor[cur] {
            path.push(next);
            seen[next] = true;
            cur = next;
        }
        let j = sinks
            .iter()
            .position(|&f| f == cur)
            .ok_or_else(|| Error::domain("path does not end at a sink"))?;
        sigma.push(j);
        paths.push(path);
    }
    let mut loops = Vec::new();
    for start in 0..n {
        if edges >> start & 1 == 0 || seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut cur = successor[start].ok_or_else(|| Error::domain("dangling edge"))?;
        while cur != start {
            cycle.push(cur);
            seen[cur] = true;
            cur = successor[cur].ok_or_else(|| Error::domain("dangling edge"))?;
        }
        loops.push(cycle);
    }
    let mut arrow = Complex64::new(permutation_sign(&sigma), 0.0);
    if loops.len() % 2 == 1 {
        arrow = -arrow;
    }
    let mut turns = 0;
    for (i, s) in successor.iter().enumerate() {
        if let Some(j) = *s {
            let (e, f) = (lat.edge_at(i), lat.edge_at(j));
            if e.dir != f.dir {
                turns += 1;
            }
            if skip_points.is_some_and(|skip| skip[lat.point_index(f.start)]) {
                continue;
            }
            arrow *= lat.node_weight(e, f)?;
        }
    }
    let to_edges = |v: Vec<usize>| v.into_iter().map(|i| lat.edge_at(i)).collect::<Vec<_>>();
    Ok(LoopConfig {
        loops: loops.into_iter().map(to_edges).collect(),
        paths: paths.into_iter().map(to_edges).collect(),
        arrow,
        edges,
        turns,
        successor,
        sources: sources.to_vec(),
        sinks: sinks.to_vec(),
    })
}

struct Frame {
    incoming: Vec<[usize; 2]>,
    outgoing: Vec<[usize; 2]>,
    points: Vec<Point>,
    sources: Vec<usize>,
    sinks: Vec<usize>,
    required: u64,
}

impl Frame {
    fn new(lat: &TorusLattice, sources: &[EdgeId], sinks: &[EdgeId]) -> Self {
        let idx = |e: &EdgeId| lat.edge_index(*e);
        let mut points = vec![Point { x2: 0, t2: 0 }; lat.num_points()];
        for t2 in 0..2 * lat.size() as i64 {
            for c in 0..lat.size() as i64 {
                let p = Point {
                    x2: 2 * c + t2 % 2,
                    t2,
                };
                points[lat.point_index(p)] = p;
            }
        }
        let incoming = points
            .iter()
            .map(|&p| lat.incoming(p).map(|e| lat.edge_index(e)))
            .collect();
        let outgoing = points
            .iter()
            .map(|&p| lat.outgoing(p).map(|e| lat.edge_index(e)))
            .collect();
        let sources: Vec<usize> = sources.iter().map(idx).collect();
        let sinks: Vec<usize> = sinks.iter().map(idx).collect();
        let required = sources.iter().chain(&sinks).fold(0u64, |m, &i| m | 1 << i);
        Frame {
            incoming,
            outgoing,
            points,
            sources,
            sinks,
            required,
        }
    }

    /// Continuing edges at point `p`: used incoming non-sinks and used outgoing non-sources.
    fn ends(&self, mask: u64, p: usize) -> (Vec<usize>, Vec<usize>) {
        let ins = self.incoming[p]
            .iter()
            .copied()
            .filter(|&e| mask >> e & 1 == 1 && !self.sinks.contains(&e))
            .collect();
        let outs = self.outgoing[p]
            .iter()
            .copied()
            .filter(|&e| mask >> e & 1 == 1 && !self.sources.contains(&e))
            .collect();
        (ins, outs)
    }

    fn balanced(&self, mask: u64) -> bool {
        mask & self.required == self.required
            && (0..self.points.len()).all(|p| {
                let (i, o) = self.ends(mask, p);
                i.len() == o.len()
            })
    }
}

/// Every loop configuration with the given sources and sinks (empty slices
/// for plain loop configurations). Repeated sources or sinks give none.
pub fn loop_configurations(
    lat: &TorusLattice,
    sources: &[EdgeId],
    sinks: &[EdgeId],
) -> Result<Vec<LoopConfig>> {
    check_size(lat)?;
    if sources.len() != sinks.len() {
        return Err(Error::domain("need as many sinks as sources"));
    }
    let frame = Frame::new(lat, sources, sinks);
    if has_repeats(&frame.sources) || has_repeats(&frame.sinks) {
        return Ok(Vec::new());
    }
    let n = lat.num_edges();
    let mut out = Vec::new();
    for mask in 0..1u64 << n {
        if !frame.balanced(mask) {
            continue;
        }
        let local: Vec<(Vec<usize>, Vec<usize>)> = (0..frame.points.len())
            .map(|p| frame.ends(mask, p))
            .collect();
        let doubles: Vec<usize> = (0..local.len())
            .filter(|&p| local[p].0.len() == 2)
            .collect();
        for choice in 0..1u32 << doubles.len() {
            let mut succ = vec![None; n];
            for (p, (ins, outs)) in local.iter().enumerate() {
                match ins.len() {
                    1 => succ[ins[0]] = Some(outs[0]),
                    2 => {
                        let bit = doubles.iter().position(|&d| d == p).unwrap();
                        let crossed = choice >> bit & 1 == 1;
                        succ[ins[0]] = Some(outs[crossed as usize]);
                        succ[ins[1]] = Some(outs[!crossed as usize]);
                    }
                    _ => {}
                }
            }
            out.push(assemble(
                lat,
                succ,
                mask,
                &frame.sources,
                &frame.sinks,
                None,
            )?);
        }
    }
    if lat.size() == 1 && sources.is_empty() {
        let rank = |c: &LoopConfig| {
            let name = c.name(lat).unwrap_or_default();
            TABLE_ORDER
                .iter()
                .position(|&s| s == name)
                .unwrap_or(TABLE_ORDER.len())
        };
        out.sort_by_key(rank);
    }
    Ok(out)
}

/// `(Σ A(S) over configurations with these sources and sinks, Σ A(S) over all
/// configurations)`; their ratio is `A(a₁,…,aₙ → f₁,…,fₙ)`.
pub fn bruteforce_loop_configs(
    lat: &TorusLattice,
    sources: &[EdgeId],
    sinks: &[EdgeId],
) -> Result<(Complex64, Complex64)> {
    let num = loop_configurations(lat, sources, sinks)?
        .iter()
        .map(|c| c.arrow)
        .sum();
    let den = loop_configurations(lat, &[], &[])?
        .iter()
        .map(|c| c.arrow)
        .sum();
    Ok((num, den))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Current {
    pub edges: u64,
    pub arrow: Complex64,
    pub singularities: Vec<Point>,
    /// Loop decomposition: straight through every singularity.
    pub decomposition: LoopConfig,
}

/// Every current with the given sources and sinks.
pub fn currents(lat: &TorusLattice, sources: &[EdgeId], sinks: &[EdgeId]) -> Result<Vec<Current>> {
    check_size(lat)?;
    if sources.len() != sinks.len() {
        return Err(Error::domain("need as many sinks as sources"));
    }
    let frame = Frame::new(lat, sources, sinks);
    if has_repeats(&frame.sources) || has_repeats(&frame.sinks) {
        return Ok(Vec::new());
    }
    let n = lat.num_edges();
    let mut out = Vec::new();
    for mask in 0..1u64 << n {
        if !frame.balanced(mask) {
            continue;
        }
        let mut succ = vec![None; n];
        let mut singular = vec![false; frame.points.len()];
        for p in 0..frame.points.len() {
            let (ins, outs) = frame.ends(mask, p);
            match ins.len() {
                1 => succ[ins[0]] = Some(outs[0]),
                2 => {
                    singular[p] = true;
                    for &e in &ins {
                        let dir = lat.edge_at(e).dir;
                        succ[e] = outs.iter().copied().find(|&f| lat.edge_at(f).dir == dir);
                    }
                }
                _ => {}
            }
        }
        let decomposition = assemble(
            lat,
            succ,
            mask,
            &frame.sources,
            &frame.sinks,
            Some(&singular),
        )?;
        let singularities = (0..singular.len())
            .filter(|&p| singular[p])
            .map(|p| frame.points[p])
            .collect();
        out.push(Current {
            edges: mask,
            arrow: decomposition.arrow,
            singularities,
            decomposition,
        });
    }
    Ok(out)
}

/// Numerator and denominator of the current-sum propagator.
pub fn bruteforce_currents(
    lat: &TorusLattice,
    sources: &[EdgeId],
    sinks: &[EdgeId],
) -> Result<(Complex64, Complex64)> {
    let num = currents(lat, sources, sinks)?.iter().map(|c| c.arrow).sum();
    let den = currents(lat, &[], &[])?.iter().map(|c| c.arrow).sum();
    Ok((num, den))
}

/// Edge set of the complement current: the unused edges plus all sources and sinks.
pub fn complement_current(
    lat: &TorusLattice,
    edges: u64,
    sources: &[EdgeId],
    sinks: &[EdgeId],
) -> u64 {
    let full = if lat.num_edges() == 64 {
        u64::MAX
    } else {
        (1u64 << lat.num_edges()) - 1
    };
    let ends = sources
        .iter()
        .chain(sinks)
        .fold(0u64, |m, e| m | 1 << lat.edge_index(*e));
    (!edges & full) | ends
}

/// `true` when `e` and `f` point the same way.
pub fn parallel(e: EdgeId, f: EdgeId) -> bool {
    e.dir == f.dir
}
