use serde::{Deserialize, Serialize};

use crate::filters::AFilterField;
use crate::lattice::Boundary;

/// A connected set of River cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RiverComponent {
    pub id: usize,
    /// Linear cell indices, ascending.
    pub members: Vec<usize>,
    /// `wraps[j]`: the component contains a loop with nonzero winding along
    /// axis `j`.
    pub wraps: Vec<bool>,
    pub size: usize,
}

impl RiverComponent {
    /// Winds around the torus along at least one axis.
    pub fn is_super(&self) -> bool {
        self.wraps.iter().any(|&w| w)
    }
}

/// Union-find whose edges carry the displacement between a node and its
/// parent in the universal cover of the torus.
struct WindingForest {
    parent: Vec<usize>,
    /// `position(node) - position(parent)`.
    offset: Vec<Vec<i64>>,
    size: Vec<usize>,
    wraps: Vec<Vec<bool>>,
}

impl WindingForest {
    fn new(n: usize, d: usize) -> Self {
        WindingForest {
            parent: (0..n).collect(),
            offset: vec![vec![0; d]; n],
            size: vec![1; n],
            wraps: vec![vec![false; d]; n],
        }
    }

    /// Root of `x` and `position(x) - position(root)`.
    fn find(&mut self, x: usize) -> (usize, Vec<i64>) {
        let mut path = Vec::new();
        let mut node = x;
        while self.parent[node] != node {
            path.push(node);
            node = self.parent[node];
        }
        let root = node;
        // compress from the top of the path down, accumulating offsets
        for &n in path.iter().rev() {
            let p = self.parent[n];
            if p != root {
                let (parent_offset, own) = (self.offset[p].clone(), &mut self.offset[n]);
                for (o, po) in own.iter_mut().zip(parent_offset) {
                    *o += po;
                }
            }
            self.parent[n] = root;
        }
        let off = if x == root {
            vec![0; self.offset[x].len()]
        } else {
            self.offset[x].clone()
        };
        (root, off)
    }

    /// Records that `position(b) = position(a) + delta`.
    fn union(&mut self, a: usize, b: usize, delta: &[i64]) {
        let (ra, oa) = self.find(a);
        let (rb, ob) = self.find(b);
        if ra == rb {
            for (j, w) in self.wraps[ra].iter_mut().enumerate() {
                if delta[j] + oa[j] - ob[j] != 0 {
                    *w = true;
                }
            }
            return;
        }
        // position(rb) - position(ra)
        let link: Vec<i64> = (0..delta.len()).map(|j| delta[j] + oa[j] - ob[j]).collect();
        let (child, root, off) = if self.size[ra] >= self.size[rb] {
            (rb, ra, link)
        } else {
            (ra, rb, link.iter().map(|v| -v).collect())
        };
        self.parent[child] = root;
        self.offset[child] = off;
        self.size[root] += self.size[child];
        let child_wraps = std::mem::take(&mut self.wraps[child]);
        for (w, c) in self.wraps[root].iter_mut().zip(child_wraps) {
            *w |= c;
        }
    }
}

/// Neighbor displacements in `{-1, 0, 1}^d` that are lexicographically
/// positive; each unordered neighbor pair is visited once.
fn half_moore(d: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for code in 0..3usize.pow(d as u32) {
        let mut c = code;
        let delta: Vec<i64> = (0..d)
            .map(|_| {
                let v = (c % 3) as i64 - 1;
                c /= 3;
                v
            })
            .collect();
        if delta.iter().find(|&&v| v != 0).is_some_and(|&v| v > 0) {
            out.push(delta);
        }
    }
    out
}

/// Labels connected components of a boolean cell set under full (Moore)
/// adjacency, tracking winding around periodic axes.
pub fn label_components(
    dims: &[usize],
    boundary: &[Boundary],
    member: &[bool],
) -> Vec<RiverComponent> {
    let d = dims.len();
    let n = member.len();
    let mut forest = WindingForest::new(n, d);
    let deltas = half_moore(d);
    let mut coord = vec![0usize; d];
    let mut target = vec![0usize; d];
    for v in 0..n {
        if !member[v] {
            continue;
        }
        let mut rem = v;
        for axis in (0..d).rev() {
            coord[axis] = rem % dims[axis];
            rem /= dims[axis];
        }
        'delta: for delta in &deltas {
            for axis in 0..d {
                let e = dims[axis] as i64;
                let x = coord[axis] as i64 + delta[axis];
                target[axis] = match boundary[axis] {
                    Boundary::Periodic => x.rem_euclid(e) as usize,
                    Boundary::Open if (0..e).contains(&x) => x as usize,
                    Boundary::Open => continue 'delta,
                };
            }
            let w = target.iter().zip(dims).fold(0, |acc, (&c, &e)| acc * e + c);
            if member[w] {
                forest.union(v, w, delta);
            }
        }
    }

    let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in (0..n).filter(|&v| member[v]) {
        let (root, _) = forest.find(v);
        by_root.entry(root).or_default().push(v);
    }
    let mut comps: Vec<RiverComponent> = by_root
        .into_iter()
        .map(|(root, members)| RiverComponent {
            id: 0,
            size: members.len(),
            wraps: forest.wraps[root].clone(),
            members,
        })
        .collect();
    comps.sort_by_key(|c| c.members[0]);
    for (id, c) in comps.iter_mut().enumerate() {
        c.id = id;
    }
    comps
}

/// Connected components of River-classified cells.
pub fn label_river_components(af: &AFilterField) -> Vec<RiverComponent> {
    let member: Vec<bool> = (0..af.values.len()).map(|v| af.is_river(v)).collect();
    label_components(&af.dims, &af.boundary, &member)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::prng::SplitMix64;
    use std::collections::VecDeque;

    /// Unrolls a 2D torus into a `tiles × tiles` block of copies with open
    /// edges and asks whether a cell of the middle copy reaches its own
    /// translate by one period along each axis.
    fn unrolled_wraps(
        w: usize,
        h: usize,
        member: &[bool],
        tiles: usize,
    ) -> Vec<(usize, [bool; 2])> {
        let (tw, th) = (w * tiles, h * tiles);
        let at = |x: usize, y: usize| member[(y % h) * w + (x % w)];
        let mut label = vec![usize::MAX; tw * th];
        let mut next = 0;
        for start in 0..tw * th {
            if label[start] != usize::MAX || !at(start % tw, start / tw) {
                continue;
            }
            let mut queue = VecDeque::from([start]);
            label[start] = next;
            while let Some(c) = queue.pop_front() {
                let (x, y) = ((c % tw) as i64, (c / tw) as i64);
                for dy in -1..=1 {
                    for dx in -1..=1 {
                        let (nx, ny) = (x + dx, y + dy);
                        if nx < 0 || ny < 0 || nx >= tw as i64 || ny >= th as i64 {
                            continue;
                        }
                        let n = ny as usize * tw + nx as usize;
                        if label[n] == usize::MAX && at(nx as usize, ny as usize) {
                            label[n] = next;
                            queue.push_back(n);
                        }
                    }
                }
            }
            next += 1;
        }
        let mid = tiles / 2;
        (0..w * h)
            .filter(|&v| member[v])
            .map(|v| {
                let (x, y) = (v % w + mid * w, v / w + mid * h);
                let here = label[y * tw + x];
                let along_rows = label[(y + h) * tw + x] == here;
                let along_cols = label[y * tw + x + w] == here;
                (v, [along_rows, along_cols])
            })
            .collect()
    }

    fn torus2() -> Vec<Boundary> {
        vec![Boundary::Periodic; 2]
    }

    #[test]
    fn empty_and_row_band() {
        assert!(label_components(&[5, 5], &torus2(), &[false; 25]).is_empty());
        let mut m = vec![false; 25];
        for x in 0..5 {
            m[2 * 5 + x] = true;
        }
        let comps = label_components(&[5, 5], &torus2(), &m);
        assert_eq!(comps.len(), 1);
        // a full row winds along the column axis (axis 1)
        assert_eq!(comps[0].wraps, vec![false, true]);
        assert_eq!(comps[0].size, 5);
    }

    #[test]
    fn closed_loop_does_not_wrap() {
        let (w, h) = (12, 12);
        let mut m = vec![false; w * h];
        for k in 3..9 {
            m[3 * w + k] = true;
            m[8 * w + k] = true;
            m[k * w + 3] = true;
            m[k * w + 8] = true;
        }
        let comps = label_components(&[h, w], &torus2(), &m);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].wraps, vec![false, false]);
        let brute = unrolled_wraps(w, h, &m, 3);
        assert!(brute.iter().all(|(_, f)| *f == [false, false]));
    }

    #[test]
    fn diagonal_band_wraps_both_axes() {
        let n = 7;
        let mut m = vec![false; n * n];
        for k in 0..n {
            m[k * n + k] = true;
        }
        let comps = label_components(&[n, n], &torus2(), &m);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].wraps, vec![true, true]);
    }

    #[test]
    fn open_axis_never_wraps() {
        let mut m = vec![false; 25];
        for x in 0..5 {
            m[2 * 5 + x] = true;
        }
        let comps = label_components(&[5, 5], &[Boundary::Periodic, Boundary::Open], &m);
        assert_eq!(comps[0].wraps, vec![false, false]);
    }

    #[test]
    fn matches_unrolled_torus_on_random_instances() {
        let mut rng = SplitMix64::new(17);
        for case in 0..200 {
            let w = 3 + (rng.next_u64() % 28) as usize;
            let h = 3 + (rng.next_u64() % 28) as usize;
            let density = 0.25 + (rng.next_u64() % 40) as f64 / 100.0;
            let m: Vec<bool> = (0..w * h)
                .map(|_| (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 <= density)
                .collect();
            let comps = label_components(&[h, w], &torus2(), &m);
            let brute = unrolled_wraps(w, h, &m, 3);
            let mut fast = vec![[false; 2]; w * h];
            for c in &comps {
                for &v in &c.members {
                    fast[v] = [c.wraps[0], c.wraps[1]];
                }
            }
            // the unrolled check is per cell; a component wraps iff any member does
            for c in &comps {
                let any = |axis: usize| {
                    c.members
                        .iter()
                        .any(|&v| brute.iter().any(|(u, f)| *u == v && f[axis]))
                };
                assert_eq!([any(0), any(1)], fast[c.members[0]], "case {case}: {w}x{h}");
            }
        }
    }
}
