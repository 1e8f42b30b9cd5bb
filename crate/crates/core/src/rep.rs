//! Representations of a quiver over `F_p` and their homological algebra.
//!
//! A representation assigns a vector space to each vertex and a matrix to
//! each arrow `a: i -> j`, of shape `dims[j] x dims[i]` (matrices act on
//! column vectors). Morphism spaces are computed as the kernel of the
//! commuting-square constraint map
//!
//! ```text
//!   delta: (+)_i Hom(M_i, W_i)  ->  (+)_{a: i->j} Hom(M_i, W_j)
//!   delta(f)_a = W_a f_i - f_j M_a
//! ```
//!
//! and, the path algebra being hereditary, `dim Ext(M, W)` is both
//! `dim Hom(M, W) - <dim M, dim W>` and `dim coker(delta)`; the two routes
//! are kept separate so they can be checked against each other.

use crate::linalg::{FieldSpec, Mat};
use crate::quiver::{DimVector, Quiver};
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RepError {
    #[error("arrow {arrow}: matrix is {got_rows}x{got_cols}, expected {rows}x{cols}")]
    ShapeMismatch {
        arrow: usize,
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("expected {expected} arrow matrices, got {got}")]
    ArrowCountMismatch { expected: usize, got: usize },
    #[error("morphism violates the commuting square at arrow {0}")]
    NotAMorphism(usize),
    #[error("total dimension {total} exceeds the subrepresentation bound {bound}")]
    DimensionBound { total: usize, bound: usize },
    #[error("cocycle matrix for arrow {0} has the wrong shape")]
    CocycleShape(usize),
    #[error("malformed representation JSON: {0}")]
    Malformed(String),
}

/// A finite-dimensional representation. Carries its field so that the zero
/// representation of an arrowless quiver still knows its scalars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rep {
    pub field: FieldSpec,
    pub dims: Vec<usize>,
    pub mats: Vec<Mat>,
}

impl Rep {
    pub fn zero(q: &Quiver, field: FieldSpec) -> Rep {
        Rep {
            field,
            dims: vec![0; q.vertex_count()],
            mats: q.arrows().iter().map(|_| Mat::zero(field, 0, 0)).collect(),
        }
    }

    pub fn simple(q: &Quiver, field: FieldSpec, v: usize) -> Rep {
        let mut dims = vec![0; q.vertex_count()];
        dims[v] = 1;
        let mats = q
            .arrows()
            .iter()
            .map(|&(s, t)| Mat::zero(field, dims[t], dims[s]))
            .collect();
        Rep { field, dims, mats }
    }

    pub fn new(
        q: &Quiver,
        field: FieldSpec,
        dims: Vec<usize>,
        mats: Vec<Mat>,
    ) -> Result<Rep, RepError> {
        let rep = Rep { field, dims, mats };
        rep.check_shapes(q)?;
        Ok(rep)
    }

    pub fn check_shapes(&self, q: &Quiver) -> Result<(), RepError> {
        if self.mats.len() != q.arrow_count() {
            return Err(RepError::ArrowCountMismatch {
                expected: q.arrow_count(),
                got: self.mats.len(),
            });
        }
        for (a, &(s, t)) in q.arrows().iter().enumerate() {
            let m = &self.mats[a];
            if m.rows() != self.dims[t] || m.cols() != self.dims[s] {
                return Err(RepError::ShapeMismatch {
                    arrow: a,
                    rows: self.dims[t],
                    cols: self.dims[s],
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                });
            }
        }
        Ok(())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.dims.iter().map(|&d| d as i64).collect())
    }

    /// Vertices carrying a nonzero space.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dims.len()).filter(|&v| self.dims[v] > 0).collect()
    }

    pub fn direct_sum(q: &Quiver, field: FieldSpec, parts: &[&Rep]) -> Rep {
        let n = q.vertex_count();
        let mut dims = vec![0usize; n];
        for part in parts {
            for v in 0..n {
                dims[v] += part.dims[v];
            }
        }
        let mats = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = Mat::zero(field, dims[t], dims[s]);
                let (mut ro, mut co) = (0, 0);
                for part in parts {
                    m.write_block(ro, co, &part.mats[a]);
                    ro += part.dims[t];
                    co += part.dims[s];
                }
                m
            })
            .collect();
        Rep { field, dims, mats }
    }

    /// `{"dims": [...], "mats": {"<arrow index>": [[row], ...], ...}}`,
    /// arrow indices 1-based following the quiver's arrow list order.
    pub fn to_json(&self) -> serde_json::Value {
        let mut mats = serde_json::Map::new();
        for (a, m) in self.mats.iter().enumerate() {
            let rows: Vec<Vec<u32>> = (0..m.rows())
                .map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect())
                .collect();
            mats.insert((a + 1).to_string(), json!(rows));
        }
        json!({"dims": self.dims, "mats": mats})
    }

    pub fn from_json(
        q: &Quiver,
        field: FieldSpec,
        value: &serde_json::Value,
    ) -> Result<Rep, RepError> {
        #[derive(serde::Deserialize)]
        struct RepJson {
            dims: Vec<usize>,
            mats: std::collections::BTreeMap<String, Vec<Vec<i64>>>,
        }
        let parsed: RepJson = serde_json::from_value(value.clone())
            .map_err(|e| RepError::Malformed(e.to_string()))?;
        if parsed.dims.len() != q.vertex_count() {
            return Err(RepError::Malformed(format!(
                "dims has length {}, quiver has {} vertices",
                parsed.dims.len(),
                q.vertex_count()
            )));
        }
        let mut mats = Vec::with_capacity(q.arrow_count());
        for (a, &(s, t)) in q.arrows().iter().enumerate() {
            let key = (a + 1).to_string();
            let mat = match parsed.mats.get(&key) {
                Some(rows) => {
                    let m = Mat::from_rows(field, rows);
                    if m.rows() != parsed.dims[t] || (m.rows() > 0 && m.cols() != parsed.dims[s]) {
                        return Err(RepError::Malformed(format!(
                            "matrix for arrow {key} has the wrong shape"
                        )));
                    }
                    // a 0-row literal cannot carry its column count
                    if m.rows() == 0 {
                        Mat::zero(field, parsed.dims[t], parsed.dims[s])
                    } else {
                        m
                    }
                }
                None => Mat::zero(field, parsed.dims[t], parsed.dims[s]),
            };
            mats.push(mat);
        }
        Rep::new(q, field, parsed.dims, mats)
    }
}

/// A morphism of representations: one matrix per vertex, subject to the
/// commuting squares `W_a f_i = f_j M_a` for every arrow `a: i -> j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub source: Rep,
    pub target: Rep,
    pub comps: Vec<Mat>,
}

impl Morphism {
    pub fn zero(source: &Rep, target: &Rep) -> Morphism {
        let field = source.field;
        let comps = (0..source.dims.len())
            .map(|v| Mat::zero(field, target.dims[v], source.dims[v]))
            .collect();
        Morphism {
            source: source.clone(),
            target: target.clone(),
            comps,
        }
    }

    pub fn identity(rep: &Rep) -> Morphism {
        let comps = rep
            .dims
            .iter()
            .map(|&d| Mat::identity(rep.field, d))
            .collect();
        Morphism {
            source: rep.clone(),
            target: rep.clone(),
            comps,
        }
    }

    pub fn check(&self, q: &Quiver) -> Result<(), RepError> {
        for (v, c) in self.comps.iter().enumerate() {
            if c.rows() != self.target.dims[v] || c.cols() != self.source.dims[v] {
                return Err(RepError::ShapeMismatch {
                    arrow: v,
                    rows: self.target.dims[v],
                    cols: self.source.dims[v],
                    got_rows: c.rows(),
                    got_cols: c.cols(),
                });
            }
        }
        for (a, &(s, t)) in q.arrows().iter().enumerate() {
            let lhs = self.target.mats[a].mul(&self.comps[s]);
            let rhs = self.comps[t].mul(&self.source.mats[a]);
            if lhs != rhs {
                return Err(RepError::NotAMorphism(a));
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Mat::is_zero)
    }

    /// Injective iff every vertex component has full column rank.
    pub fn is_injective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.cols())
    }

    /// Surjective iff every vertex component has full row rank.
    pub fn is_surjective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.rows())
    }

    /// `self . first` (apply `first`, then `self`).
    pub fn compose(&self, first: &Morphism) -> Morphism {
        assert_eq!(first.target, self.source, "composition mismatch");
        let comps = self
            .comps
            .iter()
            .zip(&first.comps)
            .map(|(g, f)| g.mul(f))
            .collect();
        Morphism {
            source: first.source.clone(),
            target: self.target.clone(),
            comps,
        }
    }

    /// `sum_s coeffs[s] * basis[s]`; all morphisms must share source/target.
    pub fn linear_combination(basis: &[Morphism], coeffs: &[u32]) -> Morphism {
        assert!(!basis.is_empty());
        assert_eq!(basis.len(), coeffs.len());
        let mut out = Morphism::zero(&basis[0].source, &basis[0].target);
        for (m, &c) in basis.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (acc, comp) in out.comps.iter_mut().zip(&m.comps) {
                *acc = acc.add(&comp.scale(c));
            }
        }
        out
    }
}

/// A short exact sequence `0 -> left -> middle -> right -> 0`, stored through
/// its two structural morphisms.
#[derive(Debug, Clone)]
pub struct ShortExactSeq {
    pub inj: Morphism,
    pub surj: Morphism,
}

impl ShortExactSeq {
    pub fn left(&self) -> &Rep {
        &self.inj.source
    }

    pub fn middle(&self) -> &Rep {
        &self.inj.target
    }

    pub fn right(&self) -> &Rep {
        &self.surj.target
    }

    pub fn check(&self, q: &Quiver) -> Result<(), RepError> {
        self.inj.check(q)?;
        self.surj.check(q)?;
        assert_eq!(self.inj.target, self.surj.source, "middle term mismatch");
        assert!(self.inj.is_injective(), "left map not injective");
        assert!(self.surj.is_surjective(), "right map not surjective");
        assert!(self.surj.compose(&self.inj).is_zero(), "composite not zero");
        for v in 0..self.middle().dims.len() {
            assert_eq!(
                self.middle().dims[v],
                self.left().dims[v] + self.right().dims[v],
                "dimensions do not add up at vertex {v}"
            );
        }
        Ok(())
    }
}

/// Offsets of the per-vertex blocks in the vectorized Hom domain.
fn domain_layout(m: &Rep, w: &Rep) -> (Vec<usize>, usize) {
    let mut offsets = Vec::with_capacity(m.dims.len());
    let mut total = 0;
    for v in 0..m.dims.len() {
        offsets.push(total);
        total += m.dims[v] * w.dims[v];
    }
    (offsets, total)
}

/// Offsets of the per-arrow blocks in the vectorized constraint codomain.
fn codomain_layout(q: &Quiver, m: &Rep, w: &Rep) -> (Vec<usize>, usize) {
    let mut offsets = Vec::with_capacity(q.arrow_count());
    let mut total = 0;
    for &(s, t) in q.arrows() {
        offsets.push(total);
        total += m.dims[s] * w.dims[t];
    }
    (offsets, total)
}

/// The constraint map `delta` whose kernel is `Hom(m, w)` and whose cokernel
/// is `Ext(m, w)`.
fn constraint_matrix(q: &Quiver, m: &Rep, w: &Rep) -> Mat {
    let field = m.field;
    let (_, dom) = domain_layout(m, w);
    let (arrow_off, cod) = codomain_layout(q, m, w);
    let mut delta = Mat::zero(field, cod, dom);
    let mut col = 0;
    for v in 0..m.dims.len() {
        for r in 0..w.dims[v] {
            for c in 0..m.dims[v] {
                // elementary morphism: unit at (r, c) of the vertex-v block
                for (a, &(s, t)) in q.arrows().iter().enumerate() {
                    let base = arrow_off[a];
                    if s == v {
                        // (W_a . unit)[x][c] = W_a[x][r]
                        let wa = &w.mats[a];
                        for x in 0..w.dims[t] {
                            let val = wa.get(x, r);
                            if val != 0 {
                                let row = base + x * m.dims[s] + c;
                                delta.set(row, col, field.add(delta.get(row, col), val));
                            }
                        }
                    }
                    if t == v {
                        // -(unit . M_a)[r][y] = -M_a[c][y]
                        let ma = &m.mats[a];
                        for y in 0..m.dims[s] {
                            let val = ma.get(c, y);
                            if val != 0 {
                                let row = base + r * m.dims[s] + y;
                                delta.set(row, col, field.sub(delta.get(row, col), val));
                            }
                        }
                    }
                }
                col += 1;
            }
        }
    }
    delta
}

/// Basis of `Hom(m, w)`; every element satisfies all commuting squares.
pub fn hom_basis(q: &Quiver, m: &Rep, w: &Rep) -> Vec<Morphism> {
    assert_eq!(m.field, w.field, "representations over different fields");
    let field = m.field;
    let delta = constraint_matrix(q, m, w);
    let kernel = delta.kernel_basis();
    let (offsets, _) = domain_layout(m, w);
    (0..kernel.cols())
        .map(|k| {
            let comps = (0..m.dims.len())
                .map(|v| {
                    let mut f = Mat::zero(field, w.dims[v], m.dims[v]);
                    for r in 0..w.dims[v] {
                        for c in 0..m.dims[v] {
                            f.set(r, c, kernel.get(offsets[v] + r * m.dims[v] + c, k));
                        }
                    }
                    f
                })
                .collect();
            Morphism {
                source: m.clone(),
                target: w.clone(),
                comps,
            }
        })
        .collect()
}

pub fn hom_dim(q: &Quiver, m: &Rep, w: &Rep) -> usize {
    let (_, dom) = domain_layout(m, w);
    dom - constraint_matrix(q, m, w).rank()
}

/// `dim Ext(m, w)` through the hereditary identity
/// `dim Hom - <dim m, dim w>`.
pub fn ext_dim(q: &Quiver, m: &Rep, w: &Rep) -> usize {
    let h = hom_dim(q, m, w) as i64;
    let e = h - q.euler_form(&m.dim_vector(), &w.dim_vector());
    assert!(
        e >= 0,
        "negative Ext dimension: hereditary identity violated"
    );
    e as usize
}

/// `dim Ext(m, w)` as the corank of the constraint map. Independent of the
/// Euler-form route; the two must agree.
pub fn ext_dim_via_coker(q: &Quiver, m: &Rep, w: &Rep) -> usize {
    let (_, cod) = codomain_layout(q, m, w);
    cod - constraint_matrix(q, m, w).rank()
}

/// Representatives of a basis of `Ext(m, w) = coker(delta)`: one list of
/// per-arrow matrices (`phi_a: m_i -> w_j` for `a: i -> j`) per basis vector.
pub fn ext_cocycle_reps(q: &Quiver, m: &Rep, w: &Rep) -> Vec<Vec<Mat>> {
    let field = m.field;
    let delta = constraint_matrix(q, m, w);
    let (arrow_off, cod) = codomain_layout(q, m, w);
    // coordinates not covered by the column space of delta give a complement
    let (_, pivots) = delta.transpose().rref();
    let mut in_image = vec![false; cod];
    for &p in &pivots {
        in_image[p] = true;
    }
    (0..cod)
        .filter(|&x| !in_image[x])
        .map(|x| {
            q.arrows()
                .iter()
                .enumerate()
                .map(|(a, &(s, t))| {
                    let mut phi = Mat::zero(field, w.dims[t], m.dims[s]);
                    let base = arrow_off[a];
                    let size = m.dims[s] * w.dims[t];
                    if x >= base && x < base + size {
                        let local = x - base;
                        phi.set(local / m.dims[s], local % m.dims[s], 1);
                    }
                    phi
                })
                .collect()
        })
        .collect()
}

/// Kernel of a morphism, with its inclusion into the source.
pub fn kernel(q: &Quiver, f: &Morphism) -> (Rep, Morphism) {
    let field = f.source.field;
    let bases: Vec<Mat> = f.comps.iter().map(Mat::kernel_basis).collect();
    let dims: Vec<usize> = bases.iter().map(Mat::cols).collect();
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let rhs = f.source.mats[a].mul(&bases[s]);
            bases[t]
                .solve(&rhs)
                .expect("kernel subspaces are stable under the arrow maps")
        })
        .collect();
    let ker = Rep { field, dims, mats };
    let incl = Morphism {
        source: ker.clone(),
        target: f.source.clone(),
        comps: bases,
    };
    (ker, incl)
}

/// Cokernel of a morphism, with the projection from the target.
pub fn cokernel(q: &Quiver, f: &Morphism) -> (Rep, Morphism) {
    let field = f.target.field;
    let projs: Vec<Mat> = f.comps.iter().map(Mat::left_kernel_rows).collect();
    let dims: Vec<usize> = projs.iter().map(Mat::rows).collect();
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let rhs = projs[t].mul(&f.target.mats[a]).transpose();
            projs[s]
                .transpose()
                .solve(&rhs)
                .expect("quotient maps descend along the projections")
                .transpose()
        })
        .collect();
    let coker = Rep { field, dims, mats };
    let proj = Morphism {
        source: f.target.clone(),
        target: coker.clone(),
        comps: projs,
    };
    (coker, proj)
}

/// Image of a morphism, with its inclusion into the target.
pub fn image(q: &Quiver, f: &Morphism) -> (Rep, Morphism) {
    let field = f.target.field;
    let bases: Vec<Mat> = f.comps.iter().map(Mat::col_space_basis).collect();
    let dims: Vec<usize> = bases.iter().map(Mat::cols).collect();
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let rhs = f.target.mats[a].mul(&bases[s]);
            bases[t]
                .solve(&rhs)
                .expect("image subspaces are stable under the arrow maps")
        })
        .collect();
    let im = Rep { field, dims, mats };
    let incl = Morphism {
        source: im.clone(),
        target: f.target.clone(),
        comps: bases,
    };
    (im, incl)
}

/// Middle term of the extension of `m` by `w` classified by a cocycle:
/// vertex spaces `w_i (+) m_i`, arrow matrices `[[w_a, phi_a], [0, m_a]]`.
/// Returns the whole sequence `0 -> w -> E -> m -> 0`.
pub fn ext_cocycle_middle(
    q: &Quiver,
    m: &Rep,
    w: &Rep,
    cocycle: &[Mat],
) -> Result<ShortExactSeq, RepError> {
    let field = m.field;
    if cocycle.len() != q.arrow_count() {
        return Err(RepError::ArrowCountMismatch {
            expected: q.arrow_count(),
            got: cocycle.len(),
        });
    }
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        if cocycle[a].rows() != w.dims[t] || cocycle[a].cols() != m.dims[s] {
            return Err(RepError::CocycleShape(a));
        }
    }
    let dims: Vec<usize> = (0..m.dims.len()).map(|v| w.dims[v] + m.dims[v]).collect();
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let mut e = Mat::zero(field, dims[t], dims[s]);
            e.write_block(0, 0, &w.mats[a]);
            e.write_block(0, w.dims[s], &cocycle[a]);
            e.write_block(w.dims[t], w.dims[s], &m.mats[a]);
            e
        })
        .collect();
    let middle = Rep { field, dims, mats };
    let inj_comps = (0..m.dims.len())
        .map(|v| {
            let mut c = Mat::zero(field, middle.dims[v], w.dims[v]);
            c.write_block(0, 0, &Mat::identity(field, w.dims[v]));
            c
        })
        .collect();
    let surj_comps = (0..m.dims.len())
        .map(|v| {
            let mut c = Mat::zero(field, m.dims[v], middle.dims[v]);
            c.write_block(0, w.dims[v], &Mat::identity(field, m.dims[v]));
            c
        })
        .collect();
    Ok(ShortExactSeq {
        inj: Morphism {
            source: w.clone(),
            target: middle.clone(),
            comps: inj_comps,
        },
        surj: Morphism {
            source: middle,
            target: m.clone(),
            comps: surj_comps,
        },
    })
}

/// Standard duality: a representation of the opposite quiver with all arrow
/// matrices transposed. Applying it twice gives back the original.
pub fn dual(m: &Rep) -> Rep {
    Rep {
        field: m.field,
        dims: m.dims.clone(),
        mats: m.mats.iter().map(Mat::transpose).collect(),
    }
}

/// Stack morphisms with a common target into one morphism from the direct
/// sum of their sources (the evaluation map of the family).
pub fn stacked_morphism(
    q: &Quiver,
    field: FieldSpec,
    pieces: &[Morphism],
    target: &Rep,
) -> Morphism {
    let sources: Vec<&Rep> = pieces.iter().map(|m| &m.source).collect();
    let source = Rep::direct_sum(q, field, &sources);
    let comps = (0..target.dims.len())
        .map(|v| {
            let blocks: Vec<&Mat> = pieces.iter().map(|m| &m.comps[v]).collect();
            Mat::hstack(field, target.dims[v], &blocks)
        })
        .collect();
    Morphism {
        source,
        target: target.clone(),
        comps,
    }
}

/// Stack morphisms with a common source into one morphism to the direct sum
/// of their targets (the coevaluation map of the family).
pub fn costacked_morphism(
    q: &Quiver,
    field: FieldSpec,
    pieces: &[Morphism],
    source: &Rep,
) -> Morphism {
    let targets: Vec<&Rep> = pieces.iter().map(|m| &m.target).collect();
    let target = Rep::direct_sum(q, field, &targets);
    let comps = (0..source.dims.len())
        .map(|v| {
            let blocks: Vec<&Mat> = pieces.iter().map(|m| &m.comps[v]).collect();
            Mat::vstack(field, source.dims[v], &blocks)
        })
        .collect();
    Morphism {
        source: source.clone(),
        target,
        comps,
    }
}

/// Advance `pivots` to the next k-combination of `0..d` in lex order.
fn next_combination(pivots: &mut [usize], d: usize) -> bool {
    let k = pivots.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if pivots[i] < d - (k - i) {
            pivots[i] += 1;
            for j in i + 1..k {
                pivots[j] = pivots[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All subspaces of `F_p^d`, each as the columns of a canonical basis matrix
/// (reduced echelon form of the row space), ordered deterministically.
fn subspaces(field: FieldSpec, d: usize) -> Vec<Mat> {
    let p = field.p();
    let mut out = vec![Mat::zero(field, d, 0)];
    for k in 1..=d {
        let mut pivots: Vec<usize> = (0..k).collect();
        loop {
            // free cells: (row i, col j) with j > pivots[i], j not a pivot
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|i| {
                    (pivots[i] + 1..d)
                        .filter(|j| !pivots.contains(j))
                        .map(move |j| (i, j))
                        .collect::<Vec<_>>()
                })
                .collect();
            let mut counter = vec![0u32; free.len()];
            loop {
                let mut basis = Mat::zero(field, d, k);
                for (i, &pc) in pivots.iter().enumerate() {
                    basis.set(pc, i, 1);
                }
                for (idx, &(i, j)) in free.iter().enumerate() {
                    basis.set(j, i, counter[idx]);
                }
                out.push(basis);
                // advance the value odometer
                let mut c = 0;
                while c < counter.len() {
                    if counter[c] + 1 < p {
                        counter[c] += 1;
                        break;
                    }
                    counter[c] = 0;
                    c += 1;
                }
                if c == counter.len() {
                    break;
                }
            }
            if !next_combination(&mut pivots, d) {
                break;
            }
        }
    }
    out
}

/// All subrepresentations of `m`, each with its inclusion. Enumerates all
/// tuples of vertex subspaces and keeps the arrow-stable ones. Exponential;
/// guarded by the total-dimension bound.
pub fn sub_reps(q: &Quiver, m: &Rep, bound: usize) -> Result<Vec<(Rep, Morphism)>, RepError> {
    let total = m.total_dim();
    if total > bound {
        return Err(RepError::DimensionBound { total, bound });
    }
    let field = m.field;
    let per_vertex: Vec<Vec<Mat>> = m.dims.iter().map(|&d| subspaces(field, d)).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; m.dims.len()];
    'outer: loop {
        let bases: Vec<&Mat> = choice
            .iter()
            .enumerate()
            .map(|(v, &c)| &per_vertex[v][c])
            .collect();
        let mut stable = true;
        let mut mats = Vec::with_capacity(q.arrow_count());
        for (a, &(s, t)) in q.arrows().iter().enumerate() {
            let pushed = m.mats[a].mul(bases[s]);
            match bases[t].solve(&pushed) {
                Some(restricted) => mats.push(restricted),
                None => {
                    stable = false;
                    break;
                }
            }
        }
        if stable {
            let sub = Rep {
                field,
                dims: bases.iter().map(|b| b.cols()).collect(),
                mats,
            };
            let incl = Morphism {
                source: sub.clone(),
                target: m.clone(),
                comps: bases.into_iter().cloned().collect(),
            };
            out.push((sub, incl));
        }
        let mut v = 0;
        loop {
            if v == choice.len() {
                break 'outer;
            }
            if choice[v] + 1 < per_vertex[v].len() {
                choice[v] += 1;
                break;
            }
            choice[v] = 0;
            v += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> FieldSpec {
        FieldSpec::new(2).unwrap()
    }

    fn a2() -> Quiver {
        Quiver::new(2, vec![(0, 1)]).unwrap()
    }

    /// The projective at vertex 1 of A2: spaces (k, k), identity arrow.
    fn proj1(q: &Quiver, field: FieldSpec) -> Rep {
        Rep::new(q, field, vec![1, 1], vec![Mat::identity(field, 1)]).unwrap()
    }

    #[test]
    fn hom_basis_a2_examples() {
        let q = a2();
        let f = f2();
        let p1 = proj1(&q, f);
        let s1 = Rep::simple(&q, f, 0);
        let s2 = Rep::simple(&q, f, 1);
        assert_eq!(hom_basis(&q, &p1, &s1).len(), 1);
        assert_eq!(hom_basis(&q, &s1, &p1).len(), 0);
        assert_eq!(hom_basis(&q, &s1, &s1).len(), 1);
        assert_eq!(hom_basis(&q, &s2, &p1).len(), 1, "socle embedding");
        assert_eq!(hom_basis(&q, &p1, &s2).len(), 0);
    }

    #[test]
    fn hom_basis_elements_are_morphisms() {
        let q = a2();
        let f = f2();
        let p1 = proj1(&q, f);
        for m in [&Rep::simple(&q, f, 0), &Rep::simple(&q, f, 1), &p1] {
            for w in [&Rep::simple(&q, f, 0), &Rep::simple(&q, f, 1), &p1] {
                let basis = hom_basis(&q, m, w);
                for b in &basis {
                    b.check(&q).unwrap();
                }
                assert_eq!(basis.len(), hom_dim(&q, m, w));
            }
        }
    }

    #[test]
    fn ext_dims_a2() {
        let q = a2();
        let f = f2();
        let s1 = Rep::simple(&q, f, 0);
        let s2 = Rep::simple(&q, f, 1);
        let p1 = proj1(&q, f);
        assert_eq!(ext_dim(&q, &s1, &s2), 1);
        assert_eq!(ext_dim(&q, &s2, &s1), 0);
        // projectives admit no extensions from above
        for w in [&s1, &s2, &p1] {
            assert_eq!(ext_dim(&q, &p1, w), 0);
            assert_eq!(ext_dim(&q, &s2, w), 0, "S2 is projective too");
        }
        // the two Ext routes agree
        for m in [&s1, &s2, &p1] {
            for w in [&s1, &s2, &p1] {
                assert_eq!(ext_dim(&q, m, w), ext_dim_via_coker(&q, m, w));
            }
        }
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let q = a2();
        let p1 = proj1(&q, f2());
        let (ker, incl) = kernel(&q, &Morphism::identity(&p1));
        assert!(ker.is_zero());
        incl.check(&q).unwrap();
    }

    #[test]
    fn cokernel_of_socle_embedding_is_top_simple() {
        let q = a2();
        let f = f2();
        let s2 = Rep::simple(&q, f, 1);
        let p1 = proj1(&q, f);
        let emb = &hom_basis(&q, &s2, &p1)[0];
        assert!(emb.is_injective());
        let (coker, proj) = cokernel(&q, emb);
        assert_eq!(coker.dims, vec![1, 0]);
        proj.check(&q).unwrap();
        assert!(proj.is_surjective());
    }

    #[test]
    fn image_of_zero_is_zero() {
        let q = a2();
        let f = f2();
        let p1 = proj1(&q, f);
        let z = Morphism::zero(&p1, &p1);
        let (im, incl) = image(&q, &z);
        assert!(im.is_zero());
        incl.check(&q).unwrap();
    }

    #[test]
    fn image_splits_a_noninjective_nonsurjective_map() {
        // P1 -> S1 composed with nothing: image inside S1 is all of S1
        let q = a2();
        let f = f2();
        let p1 = proj1(&q, f);
        let s1 = Rep::simple(&q, f, 0);
        let top = &hom_basis(&q, &p1, &s1)[0];
        let (im, incl) = image(&q, top);
        assert_eq!(im.dims, vec![1, 0]);
        incl.check(&q).unwrap();
        let (ker, kincl) = kernel(&q, top);
        assert_eq!(ker.dims, vec![0, 1]);
        kincl.check(&q).unwrap();
    }

    #[test]
    fn middle_term_of_zero_cocycle_splits() {
        let q = a2();
        let f = f2();
        let s1 = Rep::simple(&q, f, 0);
        let s2 = Rep::simple(&q, f, 1);
        let seq = ext_cocycle_middle(&q, &s1, &s2, &[Mat::zero(f, 1, 1)]).unwrap();
        seq.check(&q).unwrap();
        assert_eq!(seq.middle().dims, vec![1, 1]);
        assert!(seq.middle().mats[0].is_zero(), "split middle is S1 + S2");
    }

    #[test]
    fn middle_term_of_nonzero_cocycle_is_projective() {
        let q = a2();
        let f = f2();
        let s1 = Rep::simple(&q, f, 0);
        let s2 = Rep::simple(&q, f, 1);
        let mut phi = Mat::zero(f, 1, 1);
        phi.set(0, 0, 1);
        let seq = ext_cocycle_middle(&q, &s1, &s2, &[phi]).unwrap();
        seq.check(&q).unwrap();
        assert_eq!(seq.middle().mats[0].rank(), 1, "nonsplit middle is P1");
    }

    #[test]
    fn coboundaries_split_and_do_not_change_middle_terms() {
        // the coboundary of an arbitrary vertex-map tuple shifts a cocycle
        // without changing the middle term's isomorphism class; on its own
        // it produces the split extension
        let q = Quiver::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let f = f2();
        let census = crate::census::Census::build(&q, f).unwrap();
        let m = census.rep(census.len() - 1).clone(); // largest: the sincere indecomposable
        let w = Rep::simple(&q, f, 1);
        // delta(g)_a = W_a g_i - g_j M_a for the tuple g_i = all-ones
        let g: Vec<Mat> = (0..3)
            .map(|v| {
                let mut ones = Mat::zero(f, w.dims[v], m.dims[v]);
                for r in 0..w.dims[v] {
                    for c in 0..m.dims[v] {
                        ones.set(r, c, 1);
                    }
                }
                ones
            })
            .collect();
        let coboundary: Vec<Mat> = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| w.mats[a].mul(&g[s]).sub(&g[t].mul(&m.mats[a])))
            .collect();
        let split = ext_cocycle_middle(&q, &m, &w, &coboundary).unwrap();
        let direct = Rep::direct_sum(&q, f, &[&w, &m]);
        assert_eq!(
            census.decompose(split.middle()).unwrap(),
            census.decompose(&direct).unwrap(),
            "a pure coboundary yields the split extension"
        );
        for cocycle in ext_cocycle_reps(&q, &m, &w) {
            let plain = ext_cocycle_middle(&q, &m, &w, &cocycle).unwrap();
            let shifted_cocycle: Vec<Mat> = cocycle
                .iter()
                .zip(&coboundary)
                .map(|(c, b)| c.add(b))
                .collect();
            let shifted = ext_cocycle_middle(&q, &m, &w, &shifted_cocycle).unwrap();
            assert_eq!(
                census.decompose(plain.middle()).unwrap(),
                census.decompose(shifted.middle()).unwrap()
            );
        }
    }

    #[test]
    fn cocycle_reps_have_ext_dim_many_entries() {
        let q = a2();
        let f = f2();
        let s1 = Rep::simple(&q, f, 0);
        let s2 = Rep::simple(&q, f, 1);
        assert_eq!(ext_cocycle_reps(&q, &s1, &s2).len(), 1);
        assert_eq!(ext_cocycle_reps(&q, &s2, &s1).len(), 0);
    }

    #[test]
    fn dual_swaps_projectives_and_injectives() {
        let q = a2();
        let f = f2();
        let p1 = proj1(&q, f);
        let d = dual(&p1);
        // over the opposite quiver 2 -> 1 the dual has the same dims
        assert_eq!(d.dims, vec![1, 1]);
        d.check_shapes(&q.opposite()).unwrap();
        assert_eq!(dual(&d), p1, "duality is an involution on the nose");
        // simples stay at their vertex; zero stays zero
        assert_eq!(
            dual(&Rep::simple(&q, f, 0)),
            Rep::simple(&q.opposite(), f, 0)
        );
        assert_eq!(dual(&Rep::zero(&q, f)), Rep::zero(&q.opposite(), f));
    }

    #[test]
    fn sub_reps_of_simple() {
        let q = a2();
        let s1 = Rep::simple(&q, f2(), 0);
        let subs = sub_reps(&q, &s1, 8).unwrap();
        assert_eq!(subs.len(), 2, "zero and the whole of S1");
        for (sub, incl) in &subs {
            incl.check(&q).unwrap();
            assert!(incl.is_injective());
            assert_eq!(&incl.source, sub);
        }
    }

    #[test]
    fn sub_reps_of_projective_over_f2() {
        // 0, the socle S2, and P1 itself; S1 is not arrow-stable
        let q = a2();
        let p1 = proj1(&q, f2());
        let subs = sub_reps(&q, &p1, 8).unwrap();
        assert_eq!(subs.len(), 3);
        let dims: Vec<Vec<usize>> = subs.iter().map(|(s, _)| s.dims.clone()).collect();
        assert!(dims.contains(&vec![0, 0]));
        assert!(dims.contains(&vec![0, 1]));
        assert!(dims.contains(&vec![1, 1]));
    }

    #[test]
    fn sub_reps_ignores_zero_padding() {
        let q = a2();
        let f = f2();
        let s1 = Rep::simple(&q, f, 0);
        let padded = Rep::direct_sum(&q, f, &[&s1, &Rep::zero(&q, f)]);
        assert_eq!(
            sub_reps(&q, &padded, 8).unwrap().len(),
            sub_reps(&q, &s1, 8).unwrap().len()
        );
    }

    #[test]
    fn sub_reps_respects_the_bound() {
        let q = a2();
        let p1 = proj1(&q, f2());
        assert_eq!(
            sub_reps(&q, &p1, 1),
            Err(RepError::DimensionBound { total: 2, bound: 1 })
        );
    }

    #[test]
    fn rep_json_roundtrip() {
        let q = a2();
        let p1 = proj1(&q, f2());
        let v = p1.to_json();
        assert_eq!(Rep::from_json(&q, f2(), &v).unwrap(), p1);
    }

    proptest! {
        /// Random commuting squares over A2: kernel and image dimensions
        /// combine by rank-nullity vertexwise, and hom bases are honest.
        #[test]
        fn hom_dim_matches_basis_len(
            d in proptest::collection::vec(0usize..3, 2),
            e in proptest::collection::vec(0usize..3, 2),
            seed in proptest::collection::vec(0u32..2, 16),
        ) {
            let q = a2();
            let f = f2();
            let mk = |dims: &Vec<usize>, off: usize| {
                let mut m = Mat::zero(f, dims[1], dims[0]);
                for r in 0..dims[1] {
                    for c in 0..dims[0] {
                        m.set(r, c, seed[(off + r * 3 + c) % 16] % 2);
                    }
                }
                Rep::new(&q, f, dims.clone(), vec![m]).unwrap()
            };
            let m = mk(&d, 0);
            let w = mk(&e, 7);
            let basis = hom_basis(&q, &m, &w);
            prop_assert_eq!(basis.len(), hom_dim(&q, &m, &w));
            for b in &basis {
                prop_assert!(b.check(&q).is_ok());
            }
            // hereditary identity against the independent coker route
            let euler = q.euler_form(&m.dim_vector(), &w.dim_vector());
            prop_assert_eq!(
                hom_dim(&q, &m, &w) as i64 - ext_dim_via_coker(&q, &m, &w) as i64,
                euler
            );
        }
    }
}
