//! Planar realization of unsigned Gauss codes.
//!
//! Every position `p` of the word owns two half-edges: `in(p) = 2p`, where
//! the strand arrives at the crossing, and `out(p) = 2p + 1`, where it
//! leaves. Edge `e` (1-based) runs from `out(e - 1)` to `in(e)` and is the
//! strand segment exiting the `e`-th position of the word.
//!
//! At a crossing visited at positions `p < q` the counterclockwise order of
//! its half-edges is `[in p, in q, out p, out q]` when the handedness bit is
//! clear and `[in p, out q, out p, in q]` when it is set. Faces are traced
//! with the face on the left, so each boundary is read counterclockwise.

use serde::Serialize;

use crate::codes::GaussCode;
use crate::error::{Error, Result};

/// One handedness bit per crossing, indexed by `label - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RotationSystem {
    bits: Vec<bool>,
}

impl RotationSystem {
    pub fn new(bits: Vec<bool>) -> Self {
        RotationSystem { bits }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Every bit flipped: the mirror embedding.
    pub fn mirror(&self) -> Self {
        RotationSystem {
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FaceColor {
    A,
    B,
}

impl FaceColor {
    pub fn other(self) -> Self {
        match self {
            FaceColor::A => FaceColor::B,
            FaceColor::B => FaceColor::A,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub color: FaceColor,
    /// Counterclockwise `(edge, crossing)` steps: the edge is followed by
    /// the crossing it runs into.
    pub boundary: Vec<(usize, u32)>,
}

impl Face {
    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.boundary.iter().map(|&(e, _)| e)
    }

    pub fn crossings(&self) -> impl Iterator<Item = u32> + '_ {
        self.boundary.iter().map(|&(_, c)| c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceData {
    pub faces: Vec<Face>,
    /// Per edge (index `e - 1`): face on its left, face on its right.
    pub edge_faces: Vec<[usize; 2]>,
}

impl FaceData {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Crossing lists of the faces of one color.
    pub fn crossings_around(&self, color: FaceColor) -> Vec<Vec<u32>> {
        self.faces
            .iter()
            .filter(|f| f.color == color)
            .map(|f| f.crossings().collect())
            .collect()
    }

    /// Edge lists of the faces of one color.
    pub fn edges_around(&self, color: FaceColor) -> Vec<Vec<usize>> {
        self.faces
            .iter()
            .filter(|f| f.color == color)
            .map(|f| f.edges().collect())
            .collect()
    }

    /// Faces touching crossing `label`, with multiplicity (four corners).
    pub fn corner_faces(&self, label: u32) -> Vec<usize> {
        self.faces
            .iter()
            .enumerate()
            .flat_map(|(i, f)| f.crossings().filter(move |&c| c == label).map(move |_| i))
            .collect()
    }
}

/// `+1` / `-1` per crossing, indexed by `label - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
pub struct CrossingSigns(pub Vec<i8>);

/// Half-edge incidence structure of a word, independent of handedness.
struct HalfEdges {
    len: usize,
    occ: Vec<(usize, usize)>,
}

impl HalfEdges {
    fn new(g: &GaussCode) -> Self {
        HalfEdges {
            len: g.word().len(),
            occ: g.occurrences(),
        }
    }

    /// Other end of the edge carrying half-edge `h`.
    #[inline]
    fn across(&self, h: usize) -> usize {
        let p = h / 2;
        if h % 2 == 1 {
            2 * ((p + 1) % self.len)
        } else {
            2 * ((p + self.len - 1) % self.len) + 1
        }
    }

    /// Counterclockwise order at crossing `c` (0-based).
    #[inline]
    fn rotation(&self, c: usize, bit: bool) -> [usize; 4] {
        let (p, q) = self.occ[c];
        if bit {
            [2 * p, 2 * q + 1, 2 * p + 1, 2 * q]
        } else {
            [2 * p, 2 * q, 2 * p + 1, 2 * q + 1]
        }
    }

    /// Clockwise neighbour of every half-edge.
    fn clockwise(&self, bits: impl Fn(usize) -> bool) -> Vec<usize> {
        let mut cw = vec![0; 2 * self.len];
        for c in 0..self.occ.len() {
            let r = self.rotation(c, bits(c));
            for k in 0..4 {
                cw[r[(k + 1) % 4]] = r[k];
            }
        }
        cw
    }

    fn count_faces(&self, cw: &[usize], seen: &mut Vec<bool>) -> usize {
        seen.clear();
        seen.resize(cw.len(), false);
        let mut faces = 0;
        for start in 0..cw.len() {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                h = cw[self.across(h)];
            }
        }
        faces
    }
}

/// Find the planar handedness assignment with `sign(1) = +1`.
///
/// Exhaustive over the `2^(n-1)` assignments with crossing 1 fixed; the
/// first one (in binary counting order) tracing `n + 2` faces wins.
pub fn realize(g: &GaussCode) -> Result<RotationSystem> {
    let n = g.crossings();
    if n == 0 {
        return Ok(RotationSystem::new(Vec::new()));
    }
    if g.to_dt().is_err() {
        return Err(Error::NonRealizable(g.to_string()));
    }
    assert!(n < 64, "codes beyond 63 crossings are out of range");
    let he = HalfEdges::new(g);
    let target = n + 2;
    let mut seen = Vec::new();
    for mask in 0..(1u64 << (n - 1)) {
        // bit 0 of the rotation belongs to crossing 1 and stays clear
        let cw = he.clockwise(|c| c > 0 && (mask >> (c - 1)) & 1 == 1);
        if he.count_faces(&cw, &mut seen) == target {
            let bits = (0..n)
                .map(|c| c > 0 && (mask >> (c - 1)) & 1 == 1)
                .collect();
            return Ok(RotationSystem::new(bits));
        }
    }
    Err(Error::NonRealizable(g.to_string()))
}

/// Every handedness assignment tracing `n + 2` faces. Exponential; meant
/// for checks on small codes.
pub fn all_realizations(g: &GaussCode) -> Vec<RotationSystem> {
    let n = g.crossings();
    let he = HalfEdges::new(g);
    let mut seen = Vec::new();
    (0..(1u64 << n))
        .filter_map(|mask| {
            let bit = |c: usize| (mask >> c) & 1 == 1;
            let cw = he.clockwise(bit);
            (he.count_faces(&cw, &mut seen) == n + 2)
                .then(|| RotationSystem::new((0..n).map(bit).collect()))
        })
        .collect()
}

pub fn validate_realizable(g: &GaussCode) -> bool {
    realize(g).is_ok()
}

/// Number of faces traced under an arbitrary rotation system.
pub fn face_count(g: &GaussCode, r: &RotationSystem) -> usize {
    if g.is_empty() {
        return 2;
    }
    let he = HalfEdges::new(g);
    let cw = he.clockwise(|c| r.bits[c]);
    he.count_faces(&cw, &mut Vec::new())
}

/// Trace faces and checkerboard-color them; the face left of edge 1 is `A`.
pub fn trace_faces(g: &GaussCode, r: &RotationSystem) -> FaceData {
    if g.is_empty() {
        return FaceData {
            faces: vec![
                Face {
                    color: FaceColor::A,
                    boundary: Vec::new(),
                },
                Face {
                    color: FaceColor::B,
                    boundary: Vec::new(),
                },
            ],
            edge_faces: Vec::new(),
        };
    }
    let he = HalfEdges::new(g);
    let cw = he.clockwise(|c| r.bits[c]);
    let word = g.word();
    let len = word.len();
    let edge_of = |h: usize| -> usize {
        let p = h / 2;
        if h % 2 == 1 {
            p + 1
        } else if p == 0 {
            len
        } else {
            p
        }
    };

    let mut face_of = vec![usize::MAX; 2 * len];
    let mut boundaries: Vec<Vec<(usize, u32)>> = Vec::new();
    // start each face at an outgoing half-edge when possible so that
    // traversal begins on an edge leaving a crossing along the knot
    for start in (0..2 * len)
        .filter(|h| h % 2 == 1)
        .chain((0..2 * len).filter(|h| h % 2 == 0))
    {
        if face_of[start] != usize::MAX {
            continue;
        }
        let id = boundaries.len();
        let mut boundary = Vec::new();
        let mut h = start;
        while face_of[h] == usize::MAX {
            face_of[h] = id;
            let arrive = he.across(h);
            boundary.push((edge_of(h), word[arrive / 2]));
            h = cw[arrive];
        }
        boundaries.push(boundary);
    }

    // the walk from out(p) runs forward along edge p + 1 with the face on its left
    let edge_faces: Vec<[usize; 2]> = (0..len)
        .map(|p| [face_of[2 * p + 1], face_of[2 * ((p + 1) % len)]])
        .collect();

    let mut colors = vec![None; boundaries.len()];
    colors[edge_faces[0][0]] = Some(FaceColor::A);
    let mut queue = std::collections::VecDeque::from([edge_faces[0][0]]);
    while let Some(f) = queue.pop_front() {
        let color = colors[f].expect("queued faces are colored");
        for &[left, right] in &edge_faces {
            let other = if left == f {
                right
            } else if right == f {
                left
            } else {
                continue;
            };
            if colors[other].is_none() {
                colors[other] = Some(color.other());
                queue.push_back(other);
            }
        }
    }

    let faces = boundaries
        .into_iter()
        .zip(colors)
        .map(|(boundary, color)| Face {
            color: color.unwrap_or(FaceColor::A),
            boundary,
        })
        .collect();
    FaceData { faces, edge_faces }
}

/// Crossing signs with over/under alternating along the word, position 1 over.
pub fn crossing_signs(g: &GaussCode, r: &RotationSystem) -> CrossingSigns {
    let signs = g
        .occurrences()
        .iter()
        .zip(&r.bits)
        .map(|(&(p, _), &bit)| {
            let handed = if bit { -1 } else { 1 };
            let first_over = if p % 2 == 0 { 1 } else { -1 };
            handed * first_over
        })
        .collect();
    CrossingSigns(signs)
}

/// A realized code with everything derived from its embedding.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub code: GaussCode,
    pub rotation: RotationSystem,
    pub faces: FaceData,
    pub signs: CrossingSigns,
}

impl Diagram {
    pub fn new(code: GaussCode) -> Result<Self> {
        let rotation = realize(&code)?;
        let faces = trace_faces(&code, &rotation);
        let signs = crossing_signs(&code, &rotation);
        Ok(Diagram {
            code,
            rotation,
            faces,
            signs,
        })
    }

    pub fn crossings(&self) -> usize {
        self.code.crossings()
    }

    /// Counterclockwise half-edge order at crossing `c` (0-based), using the
    /// `in(p) = 2p`, `out(p) = 2p + 1` numbering.
    pub fn rotation_at(&self, c: usize) -> [usize; 4] {
        let (p, q) = self.code.occurrences()[c];
        if self.rotation.bits[c] {
            [2 * p, 2 * q + 1, 2 * p + 1, 2 * q]
        } else {
            [2 * p, 2 * q, 2 * p + 1, 2 * q + 1]
        }
    }
}
