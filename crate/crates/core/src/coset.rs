//! The coset graph on K1 and K2.
//!
//! Vertices are right cosets K_i g; the group acts by right multiplication
//! and the stabilizer of K_i g is K_i^g = g^-1 K_i g. A coset is named by
//! the least serialized key among its elements (over all three scalar
//! lifts, which `Pgu::canonicalize` already collapses). Neighbours of
//! K_1 g are K_2 t g for t in a right transversal of K_12 in K_1, and
//! dually.

use std::collections::{HashMap, HashSet};
use std::io::{self, Read, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::gf64::FieldElement;
use crate::grp::GroupOps;
use crate::psu::{GroupElement, Matrix3, Pgu};
use crate::subgroups::{ProjGroup, Subgroups, Which};

pub const MAX_VERTICES: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    /// K1-cosets, valency 4.
    One,
    /// K2-cosets, valency 3.
    Two,
}

impl Side {
    pub fn index(self) -> usize {
        match self {
            Side::One => 0,
            Side::Two => 1,
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::One => Side::Two,
            Side::Two => Side::One,
        }
    }

    pub fn number(self) -> u8 {
        self.index() as u8 + 1
    }

    fn from_number(n: u8) -> Option<Side> {
        match n {
            1 => Some(Side::One),
            2 => Some(Side::Two),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CosetVertex {
    pub side: Side,
    /// Key of the canonical representative.
    pub key: u64,
}

impl CosetVertex {
    pub fn rep(&self) -> GroupElement {
        GroupElement::from_key(self.key)
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex cap of {0} exceeded")]
    TooManyVertices(usize),
    #[error("cache I/O error on {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("cache mismatch: {0}")]
    CacheMismatch(String),
    #[error("malformed cache: {0}")]
    Malformed(String),
}

struct SideData {
    elems: Vec<GroupElement>,
    members: HashSet<u64>,
    /// Right transversal of K_12 in K_i, identity first.
    transversal: Vec<GroupElement>,
}

/// Canonical coset naming for both sides.
pub struct CosetSpace {
    pgu: Pgu,
    sides: [SideData; 2],
    /// For each 6-bit value v, the scalar s in {1, a, a^2} minimizing v*s.
    best_scalar: [u8; 64],
    group_hash: [u8; 8],
}

fn right_transversal(pgu: &Pgu, g: &ProjGroup, sub: &ProjGroup) -> Vec<GroupElement> {
    let mut seen: HashSet<GroupElement> = HashSet::new();
    let mut out = Vec::new();
    for t in g.elements() {
        if seen.contains(t) {
            continue;
        }
        for h in sub.elements() {
            seen.insert(pgu.compose(h, t));
        }
        out.push(*t);
    }
    out
}

impl CosetSpace {
    pub fn new(sg: &Subgroups) -> Self {
        let pgu = sg.pgu.clone();
        let side = |k: &ProjGroup| SideData {
            elems: k.elements().to_vec(),
            members: k.elements().iter().map(|x| x.key()).collect(),
            transversal: right_transversal(&pgu, k, &sg.k12),
        };
        let sides = [side(&sg.k1), side(&sg.k2)];
        let a = pgu.constants().alpha.bits();
        let f = pgu.field();
        let a2 = f.mul(FieldElement::from_bits(a), FieldElement::from_bits(a)).bits();
        let mut best_scalar = [1u8; 64];
        for v in 1..64u8 {
            let c = [(v, 1u8), (f.mul_bits(v, a), a), (f.mul_bits(v, a2), a2)];
            best_scalar[v as usize] = c.iter().min().unwrap().1;
        }
        let mut hasher = Sha256::new();
        hasher.update(pgu.field().modulus().to_le_bytes());
        for k in [&sg.k1, &sg.k2] {
            hasher.update((k.gens().len() as u32).to_le_bytes());
            for g in k.gens() {
                hasher.update(g.key().to_le_bytes());
            }
        }
        let digest = hasher.finalize();
        let mut group_hash = [0u8; 8];
        group_hash.copy_from_slice(&digest[..8]);
        CosetSpace { pgu, sides, best_scalar, group_hash }
    }

    pub fn pgu(&self) -> &Pgu {
        &self.pgu
    }

    pub fn group_hash(&self) -> [u8; 8] {
        self.group_hash
    }

    pub fn subgroup_elements(&self, side: Side) -> &[GroupElement] {
        &self.sides[side.index()].elems
    }

    pub fn transversal(&self, side: Side) -> &[GroupElement] {
        &self.sides[side.index()].transversal
    }

    /// Whether x lies in K_side.
    pub fn in_subgroup(&self, side: Side, x: &GroupElement) -> bool {
        self.sides[side.index()].members.contains(&x.key())
    }

    /// Least key over the coset K_side g. Products are compared row by row
    /// so most candidates are rejected after their first row.
    pub fn canon_key(&self, g: &GroupElement, side: Side) -> u64 {
        let f = self.pgu.field();
        let gf: [Matrix3; 6] = std::array::from_fn(|e| self.pgu.mat_frob(&g.mat, e as u32));
        let gb: [[u8; 9]; 6] = std::array::from_fn(|e| std::array::from_fn(|i| gf[e].0[i].bits()));
        let mut best_row0: u32 = u32::MAX;
        let mut best_key: u64 = u64::MAX;
        let row = |k: &[u8; 9], m: &[u8; 9], r: usize, s: u8| -> [u8; 3] {
            std::array::from_fn(|j| {
                let v = f.mul_bits(k[3 * r], m[j]) ^ f.mul_bits(k[3 * r + 1], m[3 + j]) ^ f.mul_bits(k[3 * r + 2], m[6 + j]);
                f.mul_bits(v, s)
            })
        };
        for k in &self.sides[side.index()].elems {
            let kb: [u8; 9] = std::array::from_fn(|i| k.mat.0[i].bits());
            let m = &gb[k.twist as usize];
            let raw = row(&kb, m, 0, 1);
            let lead = raw.iter().copied().find(|&x| x != 0).expect("invertible matrix");
            let s = self.best_scalar[lead as usize];
            let r0 = raw.map(|x| f.mul_bits(x, s));
            let pre = ((r0[0] as u32) << 12) | ((r0[1] as u32) << 6) | r0[2] as u32;
            if pre > best_row0 {
                continue;
            }
            let r1 = row(&kb, m, 1, s);
            let r2 = row(&kb, m, 2, s);
            let mut key: u64 = pre as u64;
            for x in r1.into_iter().chain(r2) {
                key = (key << 6) | x as u64;
            }
            key = (key << 3) | ((k.twist + g.twist) % 6) as u64;
            if key < best_key {
                best_key = key;
                best_row0 = pre;
            }
        }
        best_key
    }

    pub fn canon(&self, g: &GroupElement, side: Side) -> GroupElement {
        GroupElement::from_key(self.canon_key(g, side))
    }

    /// Keys of the neighbours of the coset K_side g, sorted.
    pub fn neighbour_keys(&self, g: &GroupElement, side: Side) -> Vec<u64> {
        let other = side.other();
        let mut keys: Vec<u64> =
            self.sides[side.index()].transversal.iter().map(|t| self.canon_key(&self.pgu.compose(t, g), other)).collect();
        keys.sort_unstable();
        keys
    }

    /// Whether x maps the coset K_i h to K_i h2: h x h2^-1 in K_i.
    pub fn maps_to(&self, side: Side, h: &GroupElement, x: &GroupElement, h2_inv: &GroupElement) -> bool {
        let p = self.pgu.compose(&self.pgu.compose(h, x), h2_inv);
        self.in_subgroup(side, &p)
    }

    /// The stabilizer K_side^rep of a vertex, restricted to H if asked.
    pub fn vertex_stabilizer(&self, sg: &Subgroups, v: &CosetVertex, which: Which) -> ProjGroup {
        let k = match v.side {
            Side::One => &sg.k1,
            Side::Two => &sg.k2,
        };
        let conj = ProjGroup::conjugate(k, &v.rep());
        match which {
            Which::K => conj,
            Which::H => conj.filter(|g| which.contains(g)),
        }
    }

    pub fn build_graph(&self) -> Result<CosetGraph, GraphError> {
        let id = self.pgu.identity_elem();
        let mut vertices = vec![
            CosetVertex { side: Side::One, key: self.canon_key(&id, Side::One) },
            CosetVertex { side: Side::Two, key: self.canon_key(&id, Side::Two) },
        ];
        let mut index: [HashMap<u64, u32>; 2] = [HashMap::new(), HashMap::new()];
        index[0].insert(vertices[0].key, 0);
        index[1].insert(vertices[1].key, 1);
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(), Vec::new()];
        let mut frontier: Vec<u32> = vec![0, 1];
        while !frontier.is_empty() {
            let expanded: Vec<Vec<u64>> = frontier
                .par_iter()
                .map(|&v| {
                    let cv = vertices[v as usize];
                    self.neighbour_keys(&cv.rep(), cv.side)
                })
                .collect();
            let mut next = Vec::new();
            for (&v, keys) in frontier.iter().zip(expanded) {
                let side = vertices[v as usize].side.other();
                let mut nb = Vec::with_capacity(keys.len());
                for key in keys {
                    let w = match index[side.index()].get(&key) {
                        Some(&w) => w,
                        None => {
                            let w = vertices.len() as u32;
                            if vertices.len() >= MAX_VERTICES {
                                return Err(GraphError::TooManyVertices(MAX_VERTICES));
                            }
                            index[side.index()].insert(key, w);
                            vertices.push(CosetVertex { side, key });
                            adj.push(Vec::new());
                            next.push(w);
                            w
                        }
                    };
                    nb.push(w);
                }
                adj[v as usize] = nb;
            }
            frontier = next;
        }
        Ok(CosetGraph::from_parts(self.pgu.field().modulus(), self.group_hash, vertices, index, adj))
    }

    /// The permutation of the vertices induced by right multiplication by
    /// x, or `None` if some image is not a vertex.
    pub fn element_permutation(&self, graph: &CosetGraph, x: &GroupElement) -> Option<Vec<u32>> {
        let images: Vec<Option<u32>> = graph
            .vertices
            .par_iter()
            .map(|v| {
                let key = self.canon_key(&self.pgu.compose(&v.rep(), x), v.side);
                graph.id_of(v.side, key)
            })
            .collect();
        images.into_iter().collect()
    }

    /// Image of one vertex under x.
    pub fn act(&self, graph: &CosetGraph, v: u32, x: &GroupElement) -> Option<u32> {
        let cv = graph.vertex(v);
        graph.id_of(cv.side, self.canon_key(&self.pgu.compose(&cv.rep(), x), cv.side))
    }
}

/// The bipartite coset graph, in CSR form with ids in BFS order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetGraph {
    modulus: u32,
    group_hash: [u8; 8],
    vertices: Vec<CosetVertex>,
    index: [HashMap<u64, u32>; 2],
    offsets: Vec<u32>,
    adj: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct GraphSummary {
    pub side1: usize,
    pub side2: usize,
    pub edges: usize,
    pub bipartite: bool,
    pub side1_degrees: Vec<usize>,
    pub side2_degrees: Vec<usize>,
    pub connected: bool,
    pub simple: bool,
}

const MAGIC: &[u8; 8] = b"PSU38CG\0";
const VERSION: u32 = 1;

impl CosetGraph {
    fn from_parts(
        modulus: u32,
        group_hash: [u8; 8],
        vertices: Vec<CosetVertex>,
        index: [HashMap<u64, u32>; 2],
        adj: Vec<Vec<u32>>,
    ) -> Self {
        let mut offsets = Vec::with_capacity(adj.len() + 1);
        offsets.push(0u32);
        let mut flat = Vec::new();
        for nb in adj {
            flat.extend(nb);
            offsets.push(flat.len() as u32);
        }
        CosetGraph { modulus, group_hash, vertices, index, offsets, adj: flat }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn group_hash(&self) -> [u8; 8] {
        self.group_hash
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.len() / 2
    }

    pub fn side_count(&self, side: Side) -> usize {
        self.index[side.index()].len()
    }

    pub fn vertex(&self, v: u32) -> CosetVertex {
        self.vertices[v as usize]
    }

    pub fn vertices(&self) -> &[CosetVertex] {
        &self.vertices
    }

    pub fn neighbours(&self, v: u32) -> &[u32] {
        &self.adj[self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbours(v).len()
    }

    pub fn id_of(&self, side: Side, key: u64) -> Option<u32> {
        self.index[side.index()].get(&key).copied()
    }

    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        self.neighbours(u).contains(&v)
    }

    /// Edges (u, v) with u < v, sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut e: Vec<(u32, u32)> = (0..self.num_vertices() as u32)
            .flat_map(|u| self.neighbours(u).iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        e.sort_unstable();
        e
    }

    /// Distances from `z` up to `radius`, plus a BFS parent for every
    /// vertex reached (the root is its own parent). Vertices are listed in
    /// BFS order.
    pub fn ball(&self, z: u32, radius: usize) -> Ball {
        let mut order = vec![z];
        let mut dist: HashMap<u32, usize> = HashMap::from([(z, 0)]);
        let mut parent = vec![z];
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            let d = dist[&v];
            head += 1;
            if d == radius {
                continue;
            }
            for &w in self.neighbours(v) {
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(d + 1);
                    order.push(w);
                    parent.push(v);
                }
            }
        }
        let dists = order.iter().map(|v| dist[v]).collect();
        Ball { order, parent, dist: dists }
    }

    pub fn distances_from(&self, z: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.num_vertices()];
        dist[z as usize] = 0;
        let mut queue = vec![z];
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            for &w in self.neighbours(v) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[v as usize] + 1;
                    queue.push(w);
                }
            }
        }
        dist
    }

    pub fn summary(&self) -> GraphSummary {
        let mut d1 = Vec::new();
        let mut d2 = Vec::new();
        let mut bipartite = true;
        let mut simple = true;
        for v in 0..self.num_vertices() as u32 {
            let side = self.vertex(v).side;
            let nb = self.neighbours(v);
            let deg = nb.len();
            let list = if side == Side::One { &mut d1 } else { &mut d2 };
            if !list.contains(&deg) {
                list.push(deg);
            }
            bipartite &= nb.iter().all(|&w| self.vertex(w).side != side);
            let distinct: HashSet<u32> = nb.iter().copied().collect();
            simple &= distinct.len() == deg && !distinct.contains(&v) && nb.iter().all(|&w| self.adjacent(w, v));
        }
        d1.sort_unstable();
        d2.sort_unstable();
        GraphSummary {
            side1: self.side_count(Side::One),
            side2: self.side_count(Side::Two),
            edges: self.num_edges(),
            bipartite,
            side1_degrees: d1,
            side2_degrees: d2,
            connected: self.distances_from(0).iter().all(|&d| d != u32::MAX),
            simple,
        }
    }

    /// Whether `perm` is a bijection of the vertices preserving adjacency.
    pub fn is_automorphism(&self, perm: &[u32]) -> bool {
        if perm.len() != self.num_vertices() {
            return false;
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p as usize >= perm.len() || std::mem::replace(&mut seen[p as usize], true) {
                return false;
            }
        }
        (0..self.num_vertices() as u32).into_par_iter().all(|u| {
            self.vertex(perm[u as usize]).side == self.vertex(u).side
                && self.neighbours(u).iter().all(|&v| self.adjacent(perm[u as usize], perm[v as usize]))
        })
    }

    pub fn save(&self, path: &Path) -> Result<(), GraphError> {
        let io_err = |source| GraphError::Io { path: path.display().to_string(), source };
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir).map_err(io_err)?;
        }
        let file = std::fs::File::create(path).map_err(io_err)?;
        let mut w = io::BufWriter::new(file);
        self.write_cache(&mut w).map_err(io_err)?;
        w.flush().map_err(io_err)
    }

    pub fn write_cache<W: Write>(&self, w: &mut W) -> io::Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&VERSION.to_le_bytes())?;
        w.write_all(&self.modulus.to_le_bytes())?;
        w.write_all(&self.group_hash)?;
        w.write_all(&(self.vertices.len() as u32).to_le_bytes())?;
        for v in &self.vertices {
            w.write_all(&[v.side.number()])?;
            w.write_all(&v.key.to_le_bytes())?;
        }
        let edges = self.edges();
        w.write_all(&(edges.len() as u32).to_le_bytes())?;
        for (a, b) in edges {
            w.write_all(&a.to_le_bytes())?;
            w.write_all(&b.to_le_bytes())?;
        }
        Ok(())
    }

    /// Loads a cache, rejecting it unless version, modulus and group hash
    /// all match.
    pub fn load(path: &Path, modulus: u32, group_hash: [u8; 8]) -> Result<CosetGraph, GraphError> {
        let io_err = |source| GraphError::Io { path: path.display().to_string(), source };
        let mut bytes = Vec::new();
        std::fs::File::open(path).map_err(io_err)?.read_to_end(&mut bytes).map_err(io_err)?;
        Self::read_cache(&bytes, modulus, group_hash)
    }

    pub fn read_cache(bytes: &[u8], modulus: u32, group_hash: [u8; 8]) -> Result<CosetGraph, GraphError> {
        let mut r = Reader { bytes, pos: 0 };
        if r.take(8)? != MAGIC {
            return Err(GraphError::Malformed("bad magic".into()));
        }
        let version = r.u32()?;
        if version != VERSION {
            return Err(GraphError::CacheMismatch(format!("format version {version}, expected {VERSION}")));
        }
        let m = r.u32()?;
        if m != modulus {
            return Err(GraphError::CacheMismatch(format!("modulus {m:#b}, expected {modulus:#b}")));
        }
        if r.take(8)? != group_hash {
            return Err(GraphError::CacheMismatch("group hash differs".into()));
        }
        let n = r.u32()? as usize;
        if n > MAX_VERTICES {
            return Err(GraphError::Malformed(format!("{n} vertices")));
        }
        let mut vertices = Vec::with_capacity(n);
        let mut index: [HashMap<u64, u32>; 2] = [HashMap::new(), HashMap::new()];
        for i in 0..n {
            let side = Side::from_number(r.take(1)?[0]).ok_or_else(|| GraphError::Malformed("bad side".into()))?;
            let key = r.u64()?;
            if index[side.index()].insert(key, i as u32).is_some() {
                return Err(GraphError::Malformed("duplicate vertex".into()));
            }
            vertices.push(CosetVertex { side, key });
        }
        let m = r.u32()? as usize;
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for _ in 0..m {
            let (a, b) = (r.u32()?, r.u32()?);
            if a as usize >= n || b as usize >= n {
                return Err(GraphError::Malformed("edge endpoint out of range".into()));
            }
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        if r.pos != bytes.len() {
            return Err(GraphError::Malformed("trailing bytes".into()));
        }
        for nb in adj.iter_mut() {
            nb.sort_unstable_by_key(|&w| vertices[w as usize].key);
        }
        Ok(CosetGraph::from_parts(modulus, group_hash, vertices, index, adj))
    }

    /// One "u v" line per edge, u < v, ascending.
    pub fn write_edge_list<W: Write>(&self, w: &mut W) -> io::Result<()> {
        for (a, b) in self.edges() {
            writeln!(w, "{a} {b}")?;
        }
        Ok(())
    }

    /// graph6, streamed: only the set bits are materialized.
    pub fn write_graph6<W: Write>(&self, w: &mut W) -> io::Result<()> {
        let n = self.num_vertices() as u64;
        w.write_all(&graph6_size(n))?;
        let mut bits: Vec<u64> = self.edges().into_iter().map(|(i, j)| (j as u64) * (j as u64 - 1) / 2 + i as u64).collect();
        bits.sort_unstable();
        let total_bits = n * n.saturating_sub(1) / 2;
        let total_bytes = total_bits.div_ceil(6);
        let mut buf = vec![63u8; 1 << 16];
        let mut next = bits.iter().peekable();
        let mut byte = 0u64;
        while byte < total_bytes {
            let chunk = (total_bytes - byte).min(buf.len() as u64) as usize;
            buf[..chunk].fill(63);
            while let Some(&&b) = next.peek() {
                let at = b / 6;
                if at >= byte + chunk as u64 {
                    break;
                }
                buf[(at - byte) as usize] |= 1 << (5 - (b % 6));
                next.next();
            }
            w.write_all(&buf[..chunk])?;
            byte += chunk as u64;
        }
        w.write_all(b"\n")
    }

    pub fn write_json<W: Write>(&self, w: &mut W) -> io::Result<()> {
        #[derive(Serialize)]
        struct Doc<'a> {
            vertices: usize,
            edges: usize,
            sides: Vec<u8>,
            adjacency: Vec<&'a [u32]>,
        }
        let doc = Doc {
            vertices: self.num_vertices(),
            edges: self.num_edges(),
            sides: self.vertices.iter().map(|v| v.side.number()).collect(),
            adjacency: (0..self.num_vertices() as u32).map(|v| self.neighbours(v)).collect(),
        };
        serde_json::to_writer(&mut *w, &doc).map_err(io::Error::other)?;
        w.write_all(b"\n")
    }
}

/// The N(n) prefix of graph6.
pub fn graph6_size(n: u64) -> Vec<u8> {
    if n <= 62 {
        vec![n as u8 + 63]
    } else if n <= 258_047 {
        vec![126, ((n >> 12) & 63) as u8 + 63, ((n >> 6) & 63) as u8 + 63, (n & 63) as u8 + 63]
    } else {
        let mut v = vec![126, 126];
        for s in (0..6).rev() {
            v.push(((n >> (6 * s)) & 63) as u8 + 63);
        }
        v
    }
}

pub struct Ball {
    /// Vertices in BFS order, root first.
    pub order: Vec<u32>,
    /// BFS parent of `order[i]`.
    pub parent: Vec<u32>,
    pub dist: Vec<usize>,
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], GraphError> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.bytes.len()).ok_or_else(|| GraphError::Malformed("truncated".into()))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32, GraphError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, GraphError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

/// Number of edges in the orbit of the base edge {0, 1} under the group
/// generated by the given vertex permutations.
pub fn edge_orbit_size(graph: &CosetGraph, perms: &[Vec<u32>]) -> usize {
    let base = (0u32, 1u32);
    let mut seen: HashSet<(u32, u32)> = HashSet::from([base]);
    let mut queue = vec![base];
    let mut head = 0;
    while head < queue.len() {
        let (a, b) = queue[head];
        head += 1;
        for p in perms {
            let (x, y) = (p[a as usize], p[b as usize]);
            let e = if x < y { (x, y) } else { (y, x) };
            if seen.insert(e) {
                queue.push(e);
            }
        }
    }
    debug_assert!(queue.iter().all(|&(a, b)| graph.adjacent(a, b)));
    seen.len()
}

/// Generic helper: does the coset K_side g contain x?
pub fn same_coset(space: &CosetSpace, side: Side, g: &GroupElement, x: &GroupElement) -> bool {
    let pgu = space.pgu();
    space.in_subgroup(side, &pgu.compose(x, &pgu.inv(g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf64::DEFAULT_MODULUS;

    fn space() -> (Subgroups, CosetSpace) {
        let pgu = Pgu::new(DEFAULT_MODULUS).unwrap();
        let sg = Subgroups::build(&pgu).unwrap();
        let cs = CosetSpace::new(&sg);
        (sg, cs)
    }

    #[test]
    fn transversals_have_index_sizes() {
        let (_, cs) = space();
        assert_eq!(cs.transversal(Side::One).len(), 4);
        assert_eq!(cs.transversal(Side::Two).len(), 3);
    }

    #[test]
    fn canon_is_a_coset_invariant() {
        let (sg, cs) = space();
        let pgu = cs.pgu();
        let g = pgu.compose(&sg.el.e, &sg.el.d);
        for side in [Side::One, Side::Two] {
            let c = cs.canon_key(&g, side);
            for k in cs.subgroup_elements(side).iter().step_by(37) {
                assert_eq!(cs.canon_key(&pgu.compose(k, &g), side), c);
            }
            let id = cs.canon_key(&pgu.identity_elem(), side);
            for k in cs.subgroup_elements(side).iter().step_by(53) {
                assert_eq!(cs.canon_key(k, side), id);
            }
            // the canonical element lies in the coset and is a fixed point
            let rep = cs.canon(&g, side);
            assert!(same_coset(&cs, side, &g, &rep));
            assert_eq!(cs.canon_key(&rep, side), c);
        }
    }

    #[test]
    fn canon_matches_brute_force_minimum() {
        let (sg, cs) = space();
        let pgu = cs.pgu();
        let g = pgu.compose(&pgu.compose(&sg.el.d, &sg.el.e), &sg.el.sigma);
        for side in [Side::One, Side::Two] {
            let brute = cs.subgroup_elements(side).iter().map(|k| pgu.compose(k, &g).key()).min().unwrap();
            assert_eq!(cs.canon_key(&g, side), brute);
        }
    }

    #[test]
    fn base_edge_is_adjacent() {
        let (_, cs) = space();
        let id = cs.pgu().identity_elem();
        let k2 = cs.canon_key(&id, Side::Two);
        assert!(cs.neighbour_keys(&id, Side::One).contains(&k2));
        let k1 = cs.canon_key(&id, Side::One);
        assert!(cs.neighbour_keys(&id, Side::Two).contains(&k1));
    }

    #[test]
    fn graph6_size_prefix() {
        assert_eq!(graph6_size(5), vec![68]);
        assert_eq!(graph6_size(59_584), vec![126, 14 + 63, 35 + 63, 63]);
    }
}
