//! Flype moves read off face data, and flype-orbit enumeration.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::codes::{DtCode, GaussCode};
use crate::embedding::{Diagram, FaceColor, FaceData};
use crate::error::{Error, Result};

/// Default cap on the number of diagrams visited by [`enumerate_orbit`].
pub const DEFAULT_ORBIT_LIMIT: usize = 100_000;

/// Two edges sharing a face of `color`, and a crossing whose two faces of
/// the other color hold one edge each. Neither edge touches the crossing;
/// the edges may meet each other at a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FlypeCandidate {
    pub e1: usize,
    pub e2: usize,
    pub c: u32,
    pub color: FaceColor,
}

/// Crossing labels at the two ends of edge `e` (1-based).
fn endpoints(word: &[u32], e: usize) -> (u32, u32) {
    (word[e - 1], word[e % word.len()])
}

/// `EE_B ∩ ECE_W` together with `EE_W ∩ ECE_B`.
///
/// Edge pairs meeting at a common crossing are kept: the flype circle through
/// them is still a flype circle, and some diagrams are only left through
/// such a pair (the 7_5 diagram `4,10,12,14,2,8,6` is one). A pair is
/// dropped when the circle encloses nothing but the shared crossing, i.e.
/// its two remaining edges both run to `c`; that flype is the identity.
pub fn flype_candidates(code: &GaussCode, faces: &FaceData) -> BTreeSet<FlypeCandidate> {
    let word = code.word();
    let mut out = BTreeSet::new();
    if word.is_empty() {
        return out;
    }
    let incident = |e: usize, c: u32| {
        let (a, b) = endpoints(word, e);
        a == c || b == c
    };
    let len = word.len();
    let occ = code.occurrences();
    let edges_at = |x: u32| {
        let (p, q) = occ[x as usize - 1];
        // edge e leaves position e (1-based) and enters position e + 1
        [
            if p == 0 { len } else { p },
            p + 1,
            if q == 0 { len } else { q },
            q + 1,
        ]
    };
    let lone_crossing = |e1: usize, e2: usize, c: u32| {
        let (a, b) = endpoints(word, e1);
        [a, b].into_iter().filter(|&x| incident(e2, x)).any(|x| {
            edges_at(x)
                .into_iter()
                .filter(|&e| e != e1 && e != e2)
                .all(|e| incident(e, c))
        })
    };
    // the unique face of `color` bordering edge `e`
    let face_of = |e: usize, color: FaceColor| {
        let [l, r] = faces.edge_faces[e - 1];
        if faces.faces[l].color == color {
            l
        } else {
            r
        }
    };

    for c in 1..=code.crossings() as u32 {
        let corners = faces.corner_faces(c);
        for shared in [FaceColor::A, FaceColor::B] {
            let across: Vec<usize> = corners
                .iter()
                .copied()
                .filter(|&f| faces.faces[f].color == shared.other())
                .collect();
            let [f1, f2] = match across[..] {
                [f1, f2] if f1 != f2 => [f1, f2],
                _ => continue,
            };
            for e1 in faces.faces[f1].edges().filter(|&e| !incident(e, c)) {
                for e2 in faces.faces[f2].edges().filter(|&e| !incident(e, c)) {
                    if e1 == e2 || lone_crossing(e1, e2, c) {
                        continue;
                    }
                    if face_of(e1, shared) != face_of(e2, shared) {
                        continue;
                    }
                    out.insert(FlypeCandidate {
                        e1: e1.min(e2),
                        e2: e1.max(e2),
                        c,
                        color: shared,
                    });
                }
            }
        }
    }
    out
}

/// Move crossing `c` onto edges `e1` and `e2`, then relabel.
///
/// With `i1 < i2` the word positions where the edges start and `j1 < j2`
/// the positions of `c`, both occurrences of `c` are deleted and `c` is
/// re-inserted right after positions `i1` and `i2`. The flipped tangle keeps
/// the order of crossings along each of its arcs, so the same rewrite holds
/// whichever way `i1, i2, j1, j2` interleave.
pub fn apply_flype(code: &GaussCode, fc: &FlypeCandidate) -> Result<GaussCode> {
    let word = code.word();
    let invalid = || Error::InvalidCandidate {
        e1: fc.e1,
        e2: fc.e2,
        c: fc.c,
    };
    if fc.c == 0 || fc.c as usize > code.crossings() {
        return Err(invalid());
    }
    let len = word.len();
    if fc.e1 == 0 || fc.e2 == 0 || fc.e1 > len || fc.e2 > len || fc.e1 == fc.e2 {
        return Err(invalid());
    }
    let (i1, i2) = (fc.e1.min(fc.e2), fc.e1.max(fc.e2));
    let (j1, j2) = code.occurrences()[fc.c as usize - 1];
    let (j1, j2) = (j1 + 1, j2 + 1);
    let touches_c = |i: usize| i == j1 || i == j2 || i % len + 1 == j1 || i % len + 1 == j2;
    if touches_c(i1) || touches_c(i2) {
        return Err(invalid());
    }
    let mut out = Vec::with_capacity(len);
    for (p, &x) in word.iter().enumerate() {
        let pos = p + 1;
        if pos != j1 && pos != j2 {
            out.push(x);
        }
        if pos == i1 || pos == i2 {
            out.push(fc.c);
        }
    }
    Ok(GaussCode::from_dense(&out))
}

/// Reduced codes of every diagram reachable by flypes, keyed by DT code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Orbit {
    pub members: Vec<(DtCode, GaussCode)>,
}

impl Orbit {
    pub fn dt_codes(&self) -> BTreeSet<DtCode> {
        self.members.iter().map(|(d, _)| d.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Breadth-first closure of the reduced diagram of `code` under flypes.
pub fn enumerate_orbit(code: &GaussCode) -> Result<BTreeSet<DtCode>> {
    Ok(enumerate_orbit_with_limit(code, DEFAULT_ORBIT_LIMIT)?.dt_codes())
}

pub fn enumerate_orbit_with_limit(code: &GaussCode, limit: usize) -> Result<Orbit> {
    let start = code.reduced_form();
    let mut seen: HashSet<GaussCode> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut orbit = Orbit::default();
    while let Some(current) = queue.pop_front() {
        let diagram = Diagram::new(current.clone())?;
        orbit.members.push((current.to_dt()?, current.clone()));
        for fc in flype_candidates(&current, &diagram.faces) {
            let next = match apply_flype(&current, &fc) {
                Ok(next) => next.reduced_form(),
                Err(Error::InvalidCandidate { .. }) => continue,
                Err(e) => return Err(e),
            };
            if seen.insert(next.clone()) {
                if seen.len() > limit {
                    return Err(Error::OrbitOverflow { limit });
                }
                queue.push_back(next);
            }
        }
    }
    orbit.members.sort();
    Ok(orbit)
}
