//! Positive roots of a Dynkin quiver and antichains in the root poset.
//!
//! Roots are generated by exhaustive scan: coordinates are bounded by the
//! largest coefficient of the highest root of each component, and a vector is
//! a positive root iff the Tits form takes value 1 on it. This is trivially
//! correct at the scales this engine targets.

use crate::quiver::{DimVector, Quiver, QuiverError};

/// All positive roots, sorted by (total, lexicographic).
pub fn positive_roots(q: &Quiver) -> Result<Vec<DimVector>, QuiverError> {
    let comps = q.validate()?;
    let n = q.vertex_count();
    let mut roots = Vec::new();
    for comp in &comps {
        let bound = comp.kind.max_root_coefficient();
        let verts = &comp.vertices;
        // odometer over {0..bound}^comp, skipping the zero vector
        let mut coords = vec![0i64; verts.len()];
        let mut scratch = DimVector::zero(n);
        loop {
            let mut k = 0;
            while k < coords.len() {
                if coords[k] < bound {
                    coords[k] += 1;
                    break;
                }
                coords[k] = 0;
                k += 1;
            }
            if k == coords.len() {
                break;
            }
            for (i, &v) in verts.iter().enumerate() {
                scratch.0[v] = coords[i];
            }
            if q.quadratic_form(&scratch) == 1 {
                roots.push(scratch.clone());
            }
        }
        for &v in verts {
            scratch.0[v] = 0;
        }
        debug_assert_eq!(
            roots
                .iter()
                .filter(|r| verts.iter().any(|&v| r.0[v] != 0))
                .count(),
            comp.kind.positive_root_count()
        );
    }
    roots.sort_by(|a, b| (a.total(), a).cmp(&(b.total(), b)));
    Ok(roots)
}

/// The poset of positive roots under componentwise comparison of
/// simple-root coordinates.
#[derive(Debug, Clone)]
pub struct RootPoset {
    roots: Vec<DimVector>,
    comparable: Vec<Vec<bool>>,
}

impl RootPoset {
    pub fn new(roots: Vec<DimVector>) -> RootPoset {
        let m = roots.len();
        let mut comparable = vec![vec![false; m]; m];
        for i in 0..m {
            for j in 0..m {
                comparable[i][j] = roots[i].leq(&roots[j]) || roots[j].leq(&roots[i]);
            }
        }
        RootPoset { roots, comparable }
    }

    pub fn from_quiver(q: &Quiver) -> Result<RootPoset, QuiverError> {
        Ok(RootPoset::new(positive_roots(q)?))
    }

    pub fn roots(&self) -> &[DimVector] {
        &self.roots
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.roots[i].leq(&self.roots[j])
    }

    /// Number of antichains (the empty set included).
    pub fn antichain_count(&self) -> u64 {
        let mut count = 0u64;
        self.walk(0, &mut Vec::new(), &mut |_| count += 1);
        count
    }

    /// All antichains, as sorted index lists; the empty antichain included.
    pub fn antichains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.walk(0, &mut Vec::new(), &mut |a| out.push(a.to_vec()));
        out
    }

    fn walk(&self, from: usize, chosen: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        visit(chosen);
        for i in from..self.roots.len() {
            if chosen.iter().all(|&j| !self.comparable[i][j]) {
                chosen.push(i);
                self.walk(i + 1, chosen, visit);
                chosen.pop();
            }
        }
    }
}
