//! The hyperoctahedral group: symmetries of the d-cube acting on integer
//! offset vectors by permuting coordinates and flipping their signs.

use std::fmt;

/// One element of the symmetry group of the d-cube.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubeSymmetry {
    /// Output axis `i` takes input axis `perm[i]`.
    pub perm: Vec<usize>,
    /// Sign applied to output axis `i`.
    pub signs: Vec<i8>,
}

impl CubeSymmetry {
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.perm
            .iter()
            .zip(&self.signs)
            .map(|(&p, &s)| v[p] * i64::from(s))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.signs.iter().all(|&s| s == 1)
    }
}

impl fmt::Display for CubeSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (&p, &s)) in self.perm.iter().zip(&self.signs).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let sign = if s < 0 { "-" } else { "" };
            write!(f, "{sign}x{p}")?;
        }
        write!(f, ")")
    }
}

/// All `2^d · d!` elements.
pub fn cube_group(d: usize) -> Vec<CubeSymmetry> {
    let mut perms = Vec::new();
    permutations(&mut (0..d).collect::<Vec<_>>(), 0, &mut perms);
    let mut out = Vec::with_capacity(perms.len() << d);
    for perm in perms {
        for mask in 0u32..(1 << d) {
            let signs = (0..d)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect();
            out.push(CubeSymmetry {
                perm: perm.clone(),
                signs,
            });
        }
    }
    out
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}
