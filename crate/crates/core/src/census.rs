//! The census of indecomposables: one representation per positive root,
//! constructed with reflection functors, plus the full Hom/Ext dimension
//! tables and Krull-Schmidt decomposition against them.

use crate::linalg::{FieldSpec, Mat};
use crate::quiver::{DimVector, Quiver, QuiverError};
use crate::rep::{hom_dim, Rep};
use crate::roots::positive_roots;
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CensusError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("vertex {0} is neither a sink nor a source")]
    NotSinkOrSource(usize),
    #[error("vertex {0} is not a sink")]
    NotSink(usize),
    #[error("vertex {0} is not a source")]
    NotSource(usize),
    #[error("representation has a simple summand at the reflection vertex {0}")]
    SimpleSummand(usize),
    #[error("{0:?} is not a positive root of this quiver")]
    InvalidRoot(Vec<i64>),
    #[error("representation does not match the census quiver or field")]
    Mismatch,
    #[error("hom-dimension system has no consistent nonnegative solution")]
    InconsistentDecomposition,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Reflection at a sink: replaces the space at `v` by the kernel of the
/// summed incoming map and reverses the arrows at `v`. Requires that no
/// direct summand is the simple at `v` (equivalently, the summed map is
/// surjective). Returns the reflected quiver and representation.
pub fn reflect_at_sink(q: &Quiver, v: usize, m: &Rep) -> Result<(Quiver, Rep), CensusError> {
    if !q.is_sink(v) {
        return Err(CensusError::NotSink(v));
    }
    let field = m.field;
    let incoming = q.arrows_into(v);
    let blocks: Vec<&Mat> = incoming.iter().map(|&a| &m.mats[a]).collect();
    let summed = Mat::hstack(field, m.dims[v], &blocks);
    if summed.rank() != m.dims[v] {
        return Err(CensusError::SimpleSummand(v));
    }
    let kernel = summed.kernel_basis();
    let reflected = q.reflect_at(v);
    let mut dims = m.dims.clone();
    dims[v] = kernel.cols();
    // row offset of each incoming arrow's block inside the summed domain
    let mut offsets = Vec::with_capacity(incoming.len());
    let mut off = 0;
    for &a in &incoming {
        offsets.push(off);
        off += m.dims[q.arrows()[a].0];
    }
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(
            |(a, &(s, _t))| match incoming.iter().position(|&b| b == a) {
                Some(pos) => kernel.submatrix(offsets[pos], 0, m.dims[s], kernel.cols()),
                None => m.mats[a].clone(),
            },
        )
        .collect();
    Ok((reflected, Rep { field, dims, mats }))
}

/// Reflection at a source: replaces the space at `v` by the cokernel of the
/// combined outgoing map and reverses the arrows at `v`. Requires that no
/// direct summand is the simple at `v` (the combined map is injective).
pub fn reflect_at_source(q: &Quiver, v: usize, m: &Rep) -> Result<(Quiver, Rep), CensusError> {
    if !q.is_source(v) {
        return Err(CensusError::NotSource(v));
    }
    let field = m.field;
    let outgoing = q.arrows_out_of(v);
    let blocks: Vec<&Mat> = outgoing.iter().map(|&a| &m.mats[a]).collect();
    let combined = Mat::vstack(field, m.dims[v], &blocks);
    if combined.rank() != m.dims[v] {
        return Err(CensusError::SimpleSummand(v));
    }
    let proj = combined.left_kernel_rows();
    let reflected = q.reflect_at(v);
    let mut dims = m.dims.clone();
    dims[v] = proj.rows();
    let mut offsets = Vec::with_capacity(outgoing.len());
    let mut off = 0;
    for &a in &outgoing {
        offsets.push(off);
        off += m.dims[q.arrows()[a].1];
    }
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(
            |(a, &(_s, t))| match outgoing.iter().position(|&b| b == a) {
                Some(pos) => proj.submatrix(0, offsets[pos], proj.rows(), m.dims[t]),
                None => m.mats[a].clone(),
            },
        )
        .collect();
    Ok((reflected, Rep { field, dims, mats }))
}

/// Reflection functor at `v`: the sink version when `v` is a sink, the
/// source version when `v` is a source.
pub fn reflect(q: &Quiver, v: usize, m: &Rep) -> Result<(Quiver, Rep), CensusError> {
    if q.is_sink(v) {
        reflect_at_sink(q, v, m)
    } else if q.is_source(v) {
        reflect_at_source(q, v, m)
    } else {
        Err(CensusError::NotSinkOrSource(v))
    }
}

/// Simple reflection `s_v` on dimension vectors: the coordinate at `v`
/// becomes the sum over incident edges minus itself.
fn reflect_dim(q: &Quiver, v: usize, d: &DimVector) -> DimVector {
    let mut out = d.clone();
    let mut acc = -d.0[v];
    for &(s, t) in q.arrows() {
        if s == v {
            acc += d.0[t];
        } else if t == v {
            acc += d.0[s];
        }
    }
    out.0[v] = acc;
    out
}

/// Whether `root` is a positive root: nonnegative, nonzero, Tits form 1.
fn is_positive_root(q: &Quiver, root: &DimVector) -> bool {
    root.len() == q.vertex_count()
        && root.is_nonneg()
        && root.total() > 0
        && q.quadratic_form(root) == 1
}

/// Construct the unique indecomposable with the given dimension vector by
/// walking the root to a simple one with sink reflections (lowest-index sink
/// of the root's component first) and then applying the inverse reflection
/// functors to the simple representation.
pub fn build_indec(q: &Quiver, field: FieldSpec, root: &DimVector) -> Result<Rep, CensusError> {
    if !is_positive_root(q, root) {
        return Err(CensusError::InvalidRoot(root.0.clone()));
    }
    let support = root
        .0
        .iter()
        .position(|&x| x > 0)
        .expect("positive root has support");
    let component = q
        .components()
        .into_iter()
        .find(|c| c.contains(&support))
        .expect("vertex lies in some component");

    let mut cur_q = q.clone();
    let mut cur_root = root.clone();
    let mut path: Vec<(Quiver, usize)> = Vec::new();
    let mut budget = 64 * (q.vertex_count() + 1);
    while cur_root.total() > 1 {
        let v = component
            .iter()
            .copied()
            .find(|&v| cur_q.is_sink(v))
            .ok_or_else(|| CensusError::Internal("acyclic quiver without a sink".into()))?;
        path.push((cur_q.clone(), v));
        cur_root = reflect_dim(&cur_q, v, &cur_root);
        if !cur_root.is_nonneg() || cur_root.total() < 1 {
            return Err(CensusError::Internal(format!(
                "reflection walk left the positive roots at {:?}",
                cur_root.0
            )));
        }
        cur_q = cur_q.reflect_at(v);
        budget -= 1;
        if budget == 0 {
            return Err(CensusError::Internal(
                "reflection walk did not terminate".into(),
            ));
        }
    }
    let simple_vertex = cur_root
        .0
        .iter()
        .position(|&x| x == 1)
        .expect("total 1 vector is simple");
    let mut rep = Rep::simple(&cur_q, field, simple_vertex);
    let mut live_q = cur_q;
    for (expected_q, v) in path.iter().rev() {
        let (back_q, back_rep) = reflect_at_source(&live_q, *v, &rep)?;
        debug_assert_eq!(&back_q, expected_q);
        live_q = back_q;
        rep = back_rep;
    }
    if rep.dim_vector() != *root {
        return Err(CensusError::Internal(format!(
            "constructed dimension vector {:?} differs from the root {:?}",
            rep.dims, root.0
        )));
    }
    Ok(rep)
}

/// `End` is one-dimensional; on a Dynkin quiver over `F_p` this is exactly
/// the brick (division-ring endomorphisms) condition.
pub fn is_brick(q: &Quiver, m: &Rep) -> bool {
    hom_dim(q, m, m) == 1
}

/// The complete list of indecomposables of a Dynkin quiver, ordered by
/// (total dimension, lexicographic dimension vector), with Hom and Ext
/// dimension tables.
#[derive(Debug, Clone)]
pub struct Census {
    quiver: Quiver,
    field: FieldSpec,
    indecs: Vec<Rep>,
    roots: Vec<DimVector>,
    hom: Vec<Vec<usize>>,
    ext: Vec<Vec<usize>>,
    /// Topological order of the nonzero-Hom relation; Hom between distinct
    /// indecomposables only points forward in this order.
    topo: Vec<usize>,
}

impl Census {
    pub fn build(q: &Quiver, field: FieldSpec) -> Result<Census, CensusError> {
        q.validate()?;
        let roots = positive_roots(q)?;
        let indecs: Vec<Rep> = roots
            .iter()
            .map(|r| build_indec(q, field, r))
            .collect::<Result<_, _>>()?;
        let count = indecs.len();
        let mut hom = vec![vec![0usize; count]; count];
        let mut ext = vec![vec![0usize; count]; count];
        for i in 0..count {
            for j in 0..count {
                hom[i][j] = hom_dim(q, &indecs[i], &indecs[j]);
                let e = hom[i][j] as i64 - q.euler_form(&roots[i], &roots[j]);
                if e < 0 {
                    return Err(CensusError::Internal(format!(
                        "negative Ext dimension between census entries {i} and {j}"
                    )));
                }
                ext[i][j] = e as usize;
            }
        }
        for i in 0..count {
            if hom[i][i] != 1 {
                return Err(CensusError::Internal(format!(
                    "census entry {i} is not a brick (End dimension {})",
                    hom[i][i]
                )));
            }
            if ext[i][i] != 0 {
                return Err(CensusError::Internal(format!(
                    "census entry {i} has self-extensions"
                )));
            }
        }
        let topo = topological_order(&hom)
            .ok_or_else(|| CensusError::Internal("Hom relation has a cycle".into()))?;
        Ok(Census {
            quiver: q.clone(),
            field,
            indecs,
            roots,
            hom,
            ext,
            topo,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn len(&self) -> usize {
        self.indecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indecs.is_empty()
    }

    pub fn rep(&self, i: usize) -> &Rep {
        &self.indecs[i]
    }

    pub fn root(&self, i: usize) -> &DimVector {
        &self.roots[i]
    }

    pub fn hom(&self, i: usize, j: usize) -> usize {
        self.hom[i][j]
    }

    pub fn ext(&self, i: usize, j: usize) -> usize {
        self.ext[i][j]
    }

    pub fn index_of_root(&self, root: &DimVector) -> Option<usize> {
        self.roots.iter().position(|r| r == root)
    }

    /// Krull-Schmidt multiplicities of `m`: the unique solution of
    /// `dim Hom(X_a, m) = sum_b mult_b dim Hom(X_a, X_b)`, solved by
    /// back-substitution along the topological order of the Hom relation.
    pub fn decompose(&self, m: &Rep) -> Result<Vec<usize>, CensusError> {
        if m.field != self.field
            || m.dims.len() != self.quiver.vertex_count()
            || m.check_shapes(&self.quiver).is_err()
        {
            return Err(CensusError::Mismatch);
        }
        let count = self.len();
        let h: Vec<i64> = (0..count)
            .map(|a| hom_dim(&self.quiver, &self.indecs[a], m) as i64)
            .collect();
        let mut mult = vec![0i64; count];
        for pos in (0..count).rev() {
            let a = self.topo[pos];
            let mut rhs = h[a];
            for later in pos + 1..count {
                let b = self.topo[later];
                rhs -= self.hom[a][b] as i64 * mult[b];
            }
            if rhs < 0 {
                return Err(CensusError::InconsistentDecomposition);
            }
            mult[a] = rhs;
        }
        let mut dim_sum = DimVector::zero(self.quiver.vertex_count());
        for (b, &k) in mult.iter().enumerate() {
            for _ in 0..k {
                dim_sum = dim_sum.add(&self.roots[b]);
            }
        }
        if dim_sum != m.dim_vector() {
            return Err(CensusError::InconsistentDecomposition);
        }
        Ok(mult.into_iter().map(|x| x as usize).collect())
    }

    /// Sparse form of [`Census::decompose`]: `(index, multiplicity)` pairs.
    pub fn summands(&self, m: &Rep) -> Result<Vec<(usize, usize)>, CensusError> {
        Ok(self
            .decompose(m)?
            .into_iter()
            .enumerate()
            .filter(|&(_, k)| k > 0)
            .collect())
    }

    /// The census index of `m` when `m` is indecomposable, `None` otherwise.
    pub fn locate(&self, m: &Rep) -> Result<Option<usize>, CensusError> {
        let s = self.summands(m)?;
        Ok(match s.as_slice() {
            [(i, 1)] => Some(*i),
            _ => None,
        })
    }

    /// Direct sum of census entries, each with multiplicity one.
    pub fn sum_of(&self, indices: impl IntoIterator<Item = usize>) -> Rep {
        let parts: Vec<&Rep> = indices.into_iter().map(|i| &self.indecs[i]).collect();
        Rep::direct_sum(&self.quiver, self.field, &parts)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let indecs: Vec<serde_json::Value> = self
            .indecs
            .iter()
            .map(|r| {
                let rep_json = r.to_json();
                json!({"root": rep_json["dims"], "mats": rep_json["mats"]})
            })
            .collect();
        json!({
            "p": self.field.p(),
            "quiver": self.quiver.to_json(),
            "indecomposables": indecs,
            "homTable": self.hom,
            "extTable": self.ext,
        })
    }
}

/// Kahn's algorithm on the relation `i -> j` iff `hom[i][j] > 0`, `i != j`.
/// Smallest available index first, so the order is deterministic.
fn topological_order(hom: &[Vec<usize>]) -> Option<Vec<usize>> {
    let count = hom.len();
    let mut indegree = vec![0usize; count];
    for (i, row) in hom.iter().enumerate() {
        for (j, &h) in row.iter().enumerate() {
            if i != j && h > 0 {
                indegree[j] += 1;
            }
        }
    }
    let mut order = Vec::with_capacity(count);
    let mut done = vec![false; count];
    for _ in 0..count {
        let next = (0..count).find(|&v| !done[v] && indegree[v] == 0)?;
        done[next] = true;
        order.push(next);
        for j in 0..count {
            if j != next && hom[next][j] > 0 {
                indegree[j] -= 1;
            }
        }
    }
    Some(order)
}
