//! Brute-force state-surface bounds, independent of the splice recursion.
//!
//! A state picks one of the two smoothings at every crossing. Its surface is
//! `l` disks (one per state circle) joined by `n` twisted bands, so
//! `b1 = n + 1 - l`. The surface is orientable exactly for the Seifert state.

use crate::embedding::Diagram;

/// Smoothing choice per crossing: bit `c` set joins the ccw slots
/// `(0, 3)` and `(1, 2)` at crossing `c`; clear joins `(0, 1)` and `(2, 3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct State(pub u64);

impl State {
    pub fn flipped(self, c: usize) -> State {
        State(self.0 ^ (1 << c))
    }
}

/// Smoothing partner of every half-edge.
fn smoothing(d: &Diagram, s: State) -> Vec<usize> {
    let mut partner = vec![0; 2 * d.code.word().len()];
    for c in 0..d.crossings() {
        let [a, b, x, y] = d.rotation_at(c);
        let pairs = if s.0 >> c & 1 == 1 {
            [(a, y), (b, x)]
        } else {
            [(a, b), (x, y)]
        };
        for (u, v) in pairs {
            partner[u] = v;
            partner[v] = u;
        }
    }
    partner
}

/// Number of circles of the smoothing `s`.
pub fn state_circles(d: &Diagram, s: State) -> usize {
    let len = d.code.word().len();
    if len == 0 {
        return 1;
    }
    // half-edge 2p enters position p, 2p + 1 leaves it
    let along = |h: usize| {
        let p = h / 2;
        if h % 2 == 1 {
            2 * ((p + 1) % len)
        } else {
            2 * ((p + len - 1) % len) + 1
        }
    };
    let partner = smoothing(d, s);
    let mut seen = vec![false; 2 * len];
    let mut circles = 0;
    for start in 0..2 * len {
        if seen[start] {
            continue;
        }
        circles += 1;
        let mut h = start;
        while !seen[h] {
            let next = along(h);
            seen[h] = true;
            seen[next] = true;
            h = partner[next];
        }
    }
    circles
}

/// The oriented smoothing: every crossing joins an incoming strand to the
/// outgoing end of the other strand.
pub fn seifert_state(d: &Diagram) -> State {
    let mut mask = 0;
    for (c, &bit) in d.rotation.bits().iter().enumerate() {
        if !bit {
            mask |= 1 << c;
        }
    }
    State(mask)
}

fn states(d: &Diagram) -> impl Iterator<Item = State> {
    let n = d.crossings();
    assert!(n < 64, "state enumeration is limited to 63 crossings");
    (0..1u64 << n).map(State)
}

/// Least `n + 1 - l` over the non-orientable state surfaces.
pub fn crosscap_oracle(d: &Diagram) -> u32 {
    let n = d.crossings();
    if n == 0 {
        return 0;
    }
    let seifert = seifert_state(d);
    states(d)
        .filter(|&s| s != seifert)
        .map(|s| (n + 1 - state_circles(d, s)) as u32)
        .min()
        .unwrap_or(0)
}

/// Least `n + 1 - l` over all state surfaces.
pub fn beta1_oracle(d: &Diagram) -> u32 {
    let n = d.crossings();
    states(d)
        .map(|s| (n + 1 - state_circles(d, s)) as u32)
        .min()
        .unwrap_or(0)
}
