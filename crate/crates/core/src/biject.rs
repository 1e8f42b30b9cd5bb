//! The seven families of classification data attached to a Dynkin quiver,
//! the constructive maps between them, and their verification.
//!
//! All families are represented through sets of census indices:
//!
//! 1. exceptional antichains (pairwise Hom-orthogonal bricks, acyclic
//!    Ext-quiver),
//! 2. thick subcategories with a cover, as their sets of indecomposables,
//! 3. normal modules without self-extensions,
//! 4. support-tilting modules up to Morita equivalence,
//! 5. torsion classes with a cover,
//! 6. conormal modules without self-extensions,
//! 7. torsionfree classes with a cocover.
//!
//! The maps implemented here are constructive: filtration closures, simple
//! objects of a thick subcategory, minimal projective generators, antichains
//! of approximation cokernels, normalization, factor complements via
//! universal foundations, generated torsion classes and their
//! Ext-projectives, and the standard duality. [`Lab::verify_bijections`]
//! runs every roundtrip and reports counts, failures and witnesses.

use crate::census::{Census, CensusError};
use crate::linalg::{FieldSpec, Mat};
use crate::quiver::Quiver;
use crate::rep::{
    cokernel, ext_cocycle_middle, ext_cocycle_reps, ext_dim, hom_basis, kernel, stacked_morphism,
    Morphism, Rep, ShortExactSeq,
};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

pub type IdxSet = BTreeSet<usize>;

#[derive(Debug, Error)]
pub enum LabError {
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// The seven families, by their conventional names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetKind {
    Antichains,
    Thick,
    Normal,
    SupportTilting,
    Torsion,
    Conormal,
    Torsionfree,
}

impl SetKind {
    pub const ALL: [SetKind; 7] = [
        SetKind::Antichains,
        SetKind::Thick,
        SetKind::Normal,
        SetKind::SupportTilting,
        SetKind::Torsion,
        SetKind::Conormal,
        SetKind::Torsionfree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SetKind::Antichains => "antichains",
            SetKind::Thick => "thick",
            SetKind::Normal => "normal",
            SetKind::SupportTilting => "support-tilting",
            SetKind::Torsion => "torsion",
            SetKind::Conormal => "conormal",
            SetKind::Torsionfree => "torsionfree",
        }
    }

    pub fn from_name(name: &str) -> Option<SetKind> {
        SetKind::ALL.iter().copied().find(|k| k.name() == name)
    }

    /// Position 1..=7 in the enumeration above.
    pub fn index(self) -> usize {
        SetKind::ALL.iter().position(|&k| k == self).unwrap() + 1
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl CheckResult {
    fn ok(name: &str) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            pass: true,
            witness: None,
        }
    }

    fn fail(name: &str, witness: serde_json::Value) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            pass: false,
            witness: Some(witness),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SincereReport {
    pub counts: BTreeMap<String, usize>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub counts: BTreeMap<String, usize>,
    pub roundtrips: Vec<CheckResult>,
    pub supplements: BTreeMap<String, bool>,
    pub sincere: SincereReport,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.roundtrips.iter().all(|c| c.pass)
            && self.supplements.values().all(|&b| b)
            && self.sincere.pass
    }
}

fn idxset_json(s: &IdxSet) -> serde_json::Value {
    serde_json::json!(s.iter().copied().collect::<Vec<_>>())
}

/// A census together with materialized Hom bases between all pairs of
/// census entries: the working state for every enumeration below.
pub struct Lab {
    census: Census,
    bases: Vec<Vec<Vec<Morphism>>>,
}

impl Lab {
    pub fn new(census: Census) -> Lab {
        let n = census.len();
        let q = census.quiver().clone();
        let bases = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| hom_basis(&q, census.rep(i), census.rep(j)))
                    .collect()
            })
            .collect();
        Lab { census, bases }
    }

    pub fn census(&self) -> &Census {
        &self.census
    }

    pub fn quiver(&self) -> &Quiver {
        self.census.quiver()
    }

    pub fn field(&self) -> FieldSpec {
        self.census.field()
    }

    pub fn opposite(&self) -> Result<Lab, LabError> {
        Ok(Lab::new(Census::build(
            &self.quiver().opposite(),
            self.field(),
        )?))
    }

    /// Census index permutation induced by duality: entry `i` maps to the
    /// opposite-census index of the dual representation.
    pub fn duality_map(&self, op: &Lab) -> Result<Vec<usize>, LabError> {
        let mut map = Vec::with_capacity(self.census.len());
        for i in 0..self.census.len() {
            let d = crate::rep::dual(self.census.rep(i));
            let j = op.census.locate(&d)?.ok_or_else(|| {
                LabError::Internal(format!("dual of census entry {i} is not indecomposable"))
            })?;
            map.push(j);
        }
        let distinct: BTreeSet<usize> = map.iter().copied().collect();
        if distinct.len() != map.len() {
            return Err(LabError::Internal("duality map is not injective".into()));
        }
        Ok(map)
    }

    // ---- support ----

    pub fn support(&self, s: &IdxSet) -> BTreeSet<usize> {
        let mut verts = BTreeSet::new();
        for &i in s {
            verts.extend(self.census.rep(i).support());
        }
        verts
    }

    pub fn support_rank(&self, s: &IdxSet) -> usize {
        self.support(s).len()
    }

    pub fn is_sincere(&self, s: &IdxSet) -> bool {
        self.support_rank(s) == self.quiver().vertex_count()
    }

    // ---- generation and cogeneration ----

    /// Whether the direct sum of the classes in `xs` generates census entry
    /// `y`: the evaluation map of a Hom basis is surjective at each vertex.
    pub fn generates(&self, xs: &IdxSet, y: usize) -> bool {
        let target = self.census.rep(y);
        self.generates_with(xs.iter().map(|&x| &self.bases[x][y]), target)
    }

    /// Generation test against an arbitrary representation; Hom bases are
    /// computed on the fly.
    pub fn generates_rep(&self, xs: &IdxSet, y: &Rep) -> bool {
        let q = self.quiver();
        let fresh: Vec<Vec<Morphism>> = xs
            .iter()
            .map(|&x| hom_basis(q, self.census.rep(x), y))
            .collect();
        self.generates_with(fresh.iter(), y)
    }

    fn generates_with<'a>(
        &self,
        bases: impl Iterator<Item = &'a Vec<Morphism>> + Clone,
        target: &Rep,
    ) -> bool {
        let field = self.field();
        (0..target.dims.len()).all(|v| {
            let blocks: Vec<&Mat> = bases
                .clone()
                .flat_map(|basis| basis.iter().map(|m| &m.comps[v]))
                .collect();
            Mat::hstack(field, target.dims[v], &blocks).rank() == target.dims[v]
        })
    }

    /// Whether the classes in `xs` cogenerate census entry `y`: the
    /// coevaluation map into a Hom-basis product is injective at each vertex.
    pub fn cogenerates(&self, xs: &IdxSet, y: usize) -> bool {
        let source = self.census.rep(y);
        let field = self.field();
        (0..source.dims.len()).all(|v| {
            let blocks: Vec<&Mat> = xs
                .iter()
                .flat_map(|&x| self.bases[y][x].iter().map(|m| &m.comps[v]))
                .collect();
            Mat::vstack(field, source.dims[v], &blocks).rank() == source.dims[v]
        })
    }

    /// The torsion class generated by `t`: everything it generates.
    pub fn gen_class(&self, t: &IdxSet) -> IdxSet {
        (0..self.census.len())
            .filter(|&y| self.generates(t, y))
            .collect()
    }

    /// The torsionfree class cogenerated by `t`.
    pub fn cogen_class(&self, t: &IdxSet) -> IdxSet {
        (0..self.census.len())
            .filter(|&y| self.cogenerates(t, y))
            .collect()
    }

    // ---- antichains ----

    /// All antichains: subsets of pairwise Hom-orthogonal entries (census
    /// entries are bricks throughout). Includes the empty antichain.
    pub fn antichains(&self) -> Vec<IdxSet> {
        self.pairwise_subsets(|i, j| self.census.hom(i, j) == 0 && self.census.hom(j, i) == 0)
    }

    pub fn is_antichain(&self, s: &IdxSet) -> bool {
        s.iter().all(|&i| {
            s.iter()
                .all(|&j| i == j || (self.census.hom(i, j) == 0 && self.census.hom(j, i) == 0))
        })
    }

    /// Acyclicity of the Ext-quiver of an antichain: vertices the members,
    /// an arrow `i -> j` whenever `Ext(i, j)` is nonzero.
    pub fn is_exceptional(&self, a: &IdxSet) -> bool {
        let members: Vec<usize> = a.iter().copied().collect();
        let k = members.len();
        let mut indegree = vec![0usize; k];
        for (x, &i) in members.iter().enumerate() {
            for (y, &j) in members.iter().enumerate() {
                if x != y && self.census.ext(i, j) > 0 {
                    indegree[y] += 1;
                }
            }
        }
        let mut done = vec![false; k];
        for _ in 0..k {
            let Some(next) = (0..k).find(|&v| !done[v] && indegree[v] == 0) else {
                return false;
            };
            done[next] = true;
            for y in 0..k {
                if y != next && !done[y] && self.census.ext(members[next], members[y]) > 0 {
                    indegree[y] -= 1;
                }
            }
        }
        true
    }

    /// All subsets whose pairs satisfy `compat`, by backtracking in index
    /// order; includes the empty set. Output is deterministic.
    fn pairwise_subsets(&self, compat: impl Fn(usize, usize) -> bool) -> Vec<IdxSet> {
        let n = self.census.len();
        let mut out = Vec::new();
        let mut chosen: Vec<usize> = Vec::new();
        fn walk(
            n: usize,
            from: usize,
            chosen: &mut Vec<usize>,
            compat: &impl Fn(usize, usize) -> bool,
            out: &mut Vec<IdxSet>,
        ) {
            out.push(chosen.iter().copied().collect());
            for i in from..n {
                if chosen.iter().all(|&j| compat(i, j)) {
                    chosen.push(i);
                    walk(n, i + 1, chosen, compat, out);
                    chosen.pop();
                }
            }
        }
        walk(n, 0, &mut chosen, &compat, &mut out);
        out
    }

    /// All nonzero elements of the Hom space spanned by `basis`.
    fn nonzero_hom_elements(&self, basis: &[Morphism]) -> Vec<Morphism> {
        let p = self.field().p();
        let h = basis.len();
        assert!(h <= 20, "Hom space too large to enumerate");
        let total = (p as u64).pow(h as u32);
        let mut out = Vec::with_capacity(total as usize - 1);
        let mut coeffs = vec![0u32; h];
        for _ in 1..total {
            let mut c = 0;
            while c < h {
                if coeffs[c] + 1 < p {
                    coeffs[c] += 1;
                    break;
                }
                coeffs[c] = 0;
                c += 1;
            }
            out.push(Morphism::linear_combination(basis, &coeffs));
        }
        out
    }

    // ---- thick subcategories ----

    /// The filtration closure of an antichain: all census entries admitting
    /// a filtration with factors in `a`. Membership is decided recursively by
    /// total dimension: an entry is in the closure iff it lies in `a` or some
    /// member embeds into it with cokernel decomposing inside the closure.
    pub fn filt_closure(&self, a: &IdxSet) -> IdxSet {
        let q = self.quiver();
        let mut closure = IdxSet::new();
        // census order is ascending total dimension, so cokernels of proper
        // embeddings are always settled before their ambient entry
        for idx in 0..self.census.len() {
            if a.contains(&idx) {
                closure.insert(idx);
                continue;
            }
            let found = a.iter().any(|&g| {
                let basis = &self.bases[g][idx];
                if basis.is_empty() {
                    return false;
                }
                self.nonzero_hom_elements(basis).iter().any(|f| {
                    if !f.is_injective() {
                        return false;
                    }
                    let (coker, _) = cokernel(q, f);
                    match self.census.summands(&coker) {
                        Ok(parts) => parts.iter().all(|&(i, _)| closure.contains(&i)),
                        Err(_) => false,
                    }
                })
            });
            if found {
                closure.insert(idx);
            }
        }
        closure
    }

    /// Simple objects of a thick subcategory: members admitting no nonzero
    /// non-surjective map from inside the subcategory.
    pub fn simples_of_thick(&self, s: &IdxSet) -> IdxSet {
        s.iter()
            .copied()
            .filter(|&x| {
                s.iter().all(|&y| {
                    let basis = &self.bases[y][x];
                    basis.is_empty()
                        || self
                            .nonzero_hom_elements(basis)
                            .iter()
                            .all(Morphism::is_surjective)
                })
            })
            .collect()
    }

    /// Ext-projective members of a thick subcategory; extensions inside a
    /// thick subcategory are ambient extensions, so the Ext table decides.
    /// The count must match the number of simple objects.
    pub fn projective_generator(&self, s: &IdxSet) -> Result<IdxSet, LabError> {
        let projs: IdxSet = s
            .iter()
            .copied()
            .filter(|&x| s.iter().all(|&m| self.census.ext(x, m) == 0))
            .collect();
        let simples = self.simples_of_thick(s);
        if projs.len() != simples.len() {
            return Err(LabError::Internal(format!(
                "thick subcategory with {} simples but {} projectives",
                simples.len(),
                projs.len()
            )));
        }
        Ok(projs)
    }

    /// The thick subcategory presented by a normal module without
    /// self-extensions: all entries arising as the cokernel of a map inside
    /// `add P`. An entry qualifies iff the evaluation map from a Hom basis is
    /// surjective with kernel again in `add P`.
    pub fn cokernel_presentation_closure(&self, pset: &IdxSet) -> IdxSet {
        let q = self.quiver();
        let field = self.field();
        (0..self.census.len())
            .filter(|&x| {
                let target = self.census.rep(x);
                let pieces: Vec<Morphism> = pset
                    .iter()
                    .flat_map(|&j| self.bases[j][x].iter().cloned())
                    .collect();
                let eval = stacked_morphism(q, field, &pieces, target);
                if !eval.is_surjective() {
                    return false;
                }
                let (ker, _) = kernel(q, &eval);
                match self.census.summands(&ker) {
                    Ok(parts) => parts.iter().all(|&(i, _)| pset.contains(&i)),
                    Err(_) => false,
                }
            })
            .collect()
    }

    // ---- normal and conormal classes ----

    /// No member is generated by the complementary members. For
    /// multiplicity-free classes a generated summand is detected singly.
    pub fn is_normal(&self, mc: &IdxSet) -> bool {
        mc.iter().all(|&x| {
            let mut rest = mc.clone();
            rest.remove(&x);
            !self.generates(&rest, x)
        })
    }

    pub fn is_conormal(&self, mc: &IdxSet) -> bool {
        mc.iter().all(|&x| {
            let mut rest = mc.clone();
            rest.remove(&x);
            !self.cogenerates(&rest, x)
        })
    }

    pub fn is_self_orthogonal(&self, mc: &IdxSet) -> bool {
        mc.iter()
            .all(|&i| mc.iter().all(|&j| self.census.ext(i, j) == 0))
    }

    /// Remove members generated by the rest (lowest census index first)
    /// until the class is normal. The result is independent of the removal
    /// order; the property tests back this up.
    pub fn normalization(&self, mc: &IdxSet) -> IdxSet {
        let mut cur = mc.clone();
        loop {
            let removable = cur.iter().copied().find(|&x| {
                let mut rest = cur.clone();
                rest.remove(&x);
                self.generates(&rest, x)
            });
            match removable {
                Some(x) => {
                    cur.remove(&x);
                }
                None => return cur,
            }
        }
    }

    /// The antichain of a normal self-orthogonal class: for each member, the
    /// cokernel of the evaluation map from the other members (whose image is
    /// the trace, the image of the minimal right approximation).
    pub fn delta_antichain(&self, n: &IdxSet) -> Result<IdxSet, LabError> {
        let q = self.quiver();
        let field = self.field();
        let mut out = IdxSet::new();
        for &i in n {
            let pieces: Vec<Morphism> = n
                .iter()
                .filter(|&&j| j != i)
                .flat_map(|&j| self.bases[j][i].iter().cloned())
                .collect();
            let eval = stacked_morphism(q, field, &pieces, self.census.rep(i));
            let (coker, _) = cokernel(q, &eval);
            let delta = self.census.locate(&coker)?.ok_or_else(|| {
                LabError::Precondition(format!(
                    "approximation cokernel of member {i} is zero or decomposable; the class is not normal and self-orthogonal"
                ))
            })?;
            out.insert(delta);
        }
        if out.len() != n.len() {
            return Err(LabError::Precondition(
                "approximation cokernels collide; the class is not normal and self-orthogonal"
                    .into(),
            ));
        }
        Ok(out)
    }

    // ---- support-tilting ----

    /// Vanishing Ext on all ordered pairs and exactly support-rank many
    /// members.
    pub fn is_support_tilting(&self, mc: &IdxSet) -> bool {
        self.is_self_orthogonal(mc) && mc.len() == self.support_rank(mc)
    }

    /// All self-orthogonal subsets (candidates for partial tilting classes).
    pub fn self_orthogonal_subsets(&self) -> Vec<IdxSet> {
        self.pairwise_subsets(|i, j| self.census.ext(i, j) == 0 && self.census.ext(j, i) == 0)
    }

    /// Every Morita class of support-tilting modules.
    pub fn support_tilting_census(&self) -> Vec<IdxSet> {
        self.self_orthogonal_subsets()
            .into_iter()
            .filter(|s| s.len() == self.support_rank(s))
            .collect()
    }

    /// Ext-projective members of a torsion class.
    pub fn ext_projectives(&self, s: &IdxSet) -> IdxSet {
        s.iter()
            .copied()
            .filter(|&x| s.iter().all(|&m| self.census.ext(x, m) == 0))
            .collect()
    }

    // ---- injective cogenerators and factor complements ----

    /// One injective envelope per vertex of the restricted quiver, located
    /// in the census. The envelope at `v` has the paths into `v` (inside the
    /// restriction) as its basis.
    pub fn injective_cogenerator(&self, verts: &BTreeSet<usize>) -> Result<IdxSet, LabError> {
        let mut out = IdxSet::new();
        for &v in verts {
            let rep = self.injective_envelope_rep(verts, v);
            let idx = self.census.locate(&rep)?.ok_or_else(|| {
                LabError::Internal(format!(
                    "injective envelope at vertex {v} is not indecomposable"
                ))
            })?;
            out.insert(idx);
        }
        Ok(out)
    }

    fn injective_envelope_rep(&self, verts: &BTreeSet<usize>, v: usize) -> Rep {
        let q = self.quiver();
        let field = self.field();
        let n = q.vertex_count();
        // paths w -> v through allowed vertices; memoized over the DAG
        let mut paths: Vec<Option<Vec<Vec<usize>>>> = vec![None; n];
        fn collect(
            q: &Quiver,
            verts: &BTreeSet<usize>,
            v: usize,
            w: usize,
            paths: &mut Vec<Option<Vec<Vec<usize>>>>,
        ) -> Vec<Vec<usize>> {
            if let Some(cached) = &paths[w] {
                return cached.clone();
            }
            let mut list: Vec<Vec<usize>> = Vec::new();
            if w == v {
                list.push(Vec::new());
            }
            for a in q.arrows_out_of(w) {
                let u = q.arrows()[a].1;
                if !verts.contains(&u) {
                    continue;
                }
                for tail in collect(q, verts, v, u, paths) {
                    let mut path = Vec::with_capacity(tail.len() + 1);
                    path.push(a);
                    path.extend(tail);
                    list.push(path);
                }
            }
            list.sort();
            paths[w] = Some(list.clone());
            list
        }
        let mut dims = vec![0usize; n];
        let mut bases: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
        for &w in verts {
            bases[w] = collect(q, verts, v, w, &mut paths);
            dims[w] = bases[w].len();
        }
        let mats = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = Mat::zero(field, dims[t], dims[s]);
                for (col, path) in bases[s].iter().enumerate() {
                    if path.first() == Some(&a) {
                        let tail = path[1..].to_vec();
                        let row = bases[t]
                            .iter()
                            .position(|p| *p == tail)
                            .expect("path tail is a path from the arrow target");
                        m.set(row, col, 1);
                    }
                }
                m
            })
            .collect();
        Rep { field, dims, mats }
    }

    /// Universal foundation of the restricted injective cogenerator `Z` by
    /// `N`: the middle term `Y` of the stacked extension by a basis of
    /// `Ext(Z, N)`, killing every further extension against `N` from below.
    /// Returns `Y` together with the exact sequence `N^r -> Y -> Z`.
    pub fn universal_foundation(&self, n: &IdxSet) -> Result<(Rep, ShortExactSeq), LabError> {
        if !self.is_self_orthogonal(n) {
            return Err(LabError::Precondition(
                "universal foundation requires a class without self-extensions".into(),
            ));
        }
        let q = self.quiver();
        let field = self.field();
        let nrep = self.census.sum_of(n.iter().copied());
        let zset = self.injective_cogenerator(&self.support(n))?;
        let zrep = self.census.sum_of(zset.iter().copied());
        let cocycles = ext_cocycle_reps(q, &zrep, &nrep);
        let copies = cocycles.len();
        let stacked = Rep::direct_sum(q, field, &vec![&nrep; copies]);
        let combined: Vec<Mat> = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let blocks: Vec<&Mat> = cocycles.iter().map(|phi| &phi[a]).collect();
                let mut m = Mat::zero(field, stacked.dims[t], zrep.dims[s]);
                let mut off = 0;
                for b in blocks {
                    m.write_block(off, 0, b);
                    off += nrep.dims[t];
                }
                m
            })
            .collect();
        let seq = ext_cocycle_middle(q, &zrep, &stacked, &combined)
            .map_err(|e| LabError::Internal(e.to_string()))?;
        let y = seq.middle().clone();
        if ext_dim(q, &y, &nrep) != 0 {
            return Err(LabError::Internal(
                "universal foundation still has extensions against the base".into(),
            ));
        }
        if !self.generates_rep(n, &y) {
            return Err(LabError::Internal(
                "universal foundation is not generated by the base".into(),
            ));
        }
        Ok((y, seq))
    }

    /// Complete a normal self-orthogonal class to its support-tilting class:
    /// adjoin the summands of the universal foundation that are not already
    /// present (the minimal factor complement).
    pub fn factor_complement(&self, n: &IdxSet) -> Result<IdxSet, LabError> {
        if !self.is_normal(n) || !self.is_self_orthogonal(n) {
            return Err(LabError::Precondition(
                "factor complement requires a normal class without self-extensions".into(),
            ));
        }
        let (y, _) = self.universal_foundation(n)?;
        let mut t = n.clone();
        for (idx, _) in self.census.summands(&y)? {
            t.insert(idx);
        }
        if !self.is_support_tilting(&t) {
            return Err(LabError::Internal(
                "completed class is not support-tilting".into(),
            ));
        }
        if t.len() != self.support_rank(n) {
            return Err(LabError::Internal(format!(
                "completed class has {} members on a support of rank {}",
                t.len(),
                self.support_rank(n)
            )));
        }
        if self.normalization(&t) != *n {
            return Err(LabError::Internal(
                "normalization does not recover the class".into(),
            ));
        }
        Ok(t)
    }

    // ---- the seven families ----

    /// Enumerate one family. The torsionfree family needs the opposite
    /// census, built on demand; use [`Lab::seven_sets`] to share it.
    pub fn enumerate_set(&self, kind: SetKind) -> Result<Vec<IdxSet>, LabError> {
        let sets = match kind {
            SetKind::Antichains => self
                .antichains()
                .into_iter()
                .filter(|a| self.is_exceptional(a))
                .collect(),
            SetKind::Thick => dedup(
                self.enumerate_set(SetKind::Antichains)?
                    .iter()
                    .map(|a| self.filt_closure(a)),
            ),
            SetKind::Normal => self
                .self_orthogonal_subsets()
                .into_iter()
                .filter(|s| self.is_normal(s))
                .collect(),
            SetKind::SupportTilting => self.support_tilting_census(),
            SetKind::Torsion => dedup(
                self.support_tilting_census()
                    .iter()
                    .map(|t| self.gen_class(t)),
            ),
            SetKind::Conormal => self
                .self_orthogonal_subsets()
                .into_iter()
                .filter(|s| self.is_conormal(s))
                .collect(),
            SetKind::Torsionfree => {
                let op = self.opposite()?;
                let from_op = op.duality_map(self)?;
                self.torsionfree_from(&op, &from_op)
            }
        };
        Ok(sets)
    }

    /// Torsionfree classes with a cocover: duals of the opposite algebra's
    /// support-tilting classes, cogenerating over this algebra.
    fn torsionfree_from(&self, op: &Lab, from_op: &[usize]) -> Vec<IdxSet> {
        dedup(op.support_tilting_census().iter().map(|t| {
            let here: IdxSet = t.iter().map(|&i| from_op[i]).collect();
            self.cogen_class(&here)
        }))
    }

    /// All seven families at once, sharing the opposite-census work.
    pub fn seven_sets(&self, op: &Lab, from_op: &[usize]) -> Result<[Vec<IdxSet>; 7], LabError> {
        Ok([
            self.enumerate_set(SetKind::Antichains)?,
            self.enumerate_set(SetKind::Thick)?,
            self.enumerate_set(SetKind::Normal)?,
            self.enumerate_set(SetKind::SupportTilting)?,
            self.enumerate_set(SetKind::Torsion)?,
            self.enumerate_set(SetKind::Conormal)?,
            self.torsionfree_from(op, from_op),
        ])
    }

    /// Run every roundtrip, supplement and support check and collect the
    /// outcome. The report is self-contained; `passed()` folds it to a bool.
    pub fn verify_bijections(&self) -> Result<VerifyReport, LabError> {
        let op = self.opposite()?;
        let to_op = self.duality_map(&op)?;
        let from_op = op.duality_map(self)?;
        let sets = self.seven_sets(&op, &from_op)?;
        let mut roundtrips = Vec::new();

        // equal cardinalities across the seven families
        let counts: Vec<usize> = sets.iter().map(Vec::len).collect();
        roundtrips.push(if counts.windows(2).all(|w| w[0] == w[1]) {
            CheckResult::ok("counts_equal")
        } else {
            CheckResult::fail("counts_equal", serde_json::json!(counts))
        });

        // antichain -> thick -> antichain
        roundtrips.push(self.all_pass("roundtrip_antichain_thick", &sets[0], |a| {
            let back = self.simples_of_thick(&self.filt_closure(a));
            (back == *a).then_some(()).ok_or_else(|| idxset_json(a))
        }));

        // thick -> normal -> thick, via minimal projective generators and
        // cokernel presentations
        roundtrips.push(self.all_pass("roundtrip_thick_normal", &sets[1], |t| {
            let p = self
                .projective_generator(t)
                .map_err(|e| serde_json::json!({"set": idxset_json(t), "error": e.to_string()}))?;
            if !sets[2].contains(&p) {
                return Err(
                    serde_json::json!({"set": idxset_json(t), "generator": idxset_json(&p)}),
                );
            }
            (self.cokernel_presentation_closure(&p) == *t)
                .then_some(())
                .ok_or_else(|| idxset_json(t))
        }));

        // normal -> support-tilting -> normal
        roundtrips.push(self.all_pass("roundtrip_normal_tilting", &sets[2], |n| {
            let t = self
                .factor_complement(n)
                .map_err(|e| serde_json::json!({"set": idxset_json(n), "error": e.to_string()}))?;
            if !sets[3].contains(&t) {
                return Err(
                    serde_json::json!({"set": idxset_json(n), "completed": idxset_json(&t)}),
                );
            }
            (self.normalization(&t) == *n)
                .then_some(())
                .ok_or_else(|| idxset_json(n))
        }));

        // support-tilting -> torsion -> support-tilting
        roundtrips.push(self.all_pass("roundtrip_tilting_torsion", &sets[3], |t| {
            (self.ext_projectives(&self.gen_class(t)) == *t)
                .then_some(())
                .ok_or_else(|| idxset_json(t))
        }));

        // the approximation antichain agrees with the composite through the
        // thick subcategory
        roundtrips.push(self.all_pass("delta_matches_composite", &sets[2], |n| {
            let direct = self
                .delta_antichain(n)
                .map_err(|e| serde_json::json!({"set": idxset_json(n), "error": e.to_string()}))?;
            let composite = self.simples_of_thick(&self.cokernel_presentation_closure(n));
            (direct == composite).then_some(()).ok_or_else(|| {
                serde_json::json!({
                    "set": idxset_json(n),
                    "direct": idxset_json(&direct),
                    "composite": idxset_json(&composite),
                })
            })
        }));

        // support preservation along the constructive chain
        roundtrips.push(self.all_pass("support_preserved", &sets[0], |a| {
            let supp = self.support(a);
            let thick = self.filt_closure(a);
            let p = self
                .projective_generator(&thick)
                .map_err(|e| serde_json::json!({"set": idxset_json(a), "error": e.to_string()}))?;
            let t = self
                .factor_complement(&p)
                .map_err(|e| serde_json::json!({"set": idxset_json(a), "error": e.to_string()}))?;
            let torsion = self.gen_class(&t);
            for other in [&thick, &p, &t, &torsion] {
                if self.support(other) != supp {
                    return Err(serde_json::json!({
                        "set": idxset_json(a),
                        "other": idxset_json(other),
                    }));
                }
            }
            Ok(())
        }));

        // duality: normal classes here match conormal classes over the
        // opposite algebra, torsion classes match torsionfree classes
        let op_sets = op.seven_sets(self, &to_op)?;
        let mapped3: BTreeSet<IdxSet> = sets[2]
            .iter()
            .map(|s| s.iter().map(|&i| to_op[i]).collect())
            .collect();
        let op6: BTreeSet<IdxSet> = op_sets[5].iter().cloned().collect();
        roundtrips.push(if mapped3 == op6 {
            CheckResult::ok("duality_normal_conormal")
        } else {
            CheckResult::fail(
                "duality_normal_conormal",
                serde_json::json!({"mapped": mapped3.len(), "opposite": op6.len()}),
            )
        });
        let mapped5: BTreeSet<IdxSet> = sets[4]
            .iter()
            .map(|s| s.iter().map(|&i| to_op[i]).collect())
            .collect();
        let op7: BTreeSet<IdxSet> = op_sets[6].iter().cloned().collect();
        roundtrips.push(if mapped5 == op7 {
            CheckResult::ok("duality_torsion_torsionfree")
        } else {
            CheckResult::fail(
                "duality_torsion_torsionfree",
                serde_json::json!({"mapped": mapped5.len(), "opposite": op7.len()}),
            )
        });
        let involution = (0..self.census.len()).all(|i| from_op[to_op[i]] == i);
        roundtrips.push(if involution {
            CheckResult::ok("duality_involution")
        } else {
            CheckResult::fail("duality_involution", serde_json::json!(to_op))
        });

        // supplements: in the representation-finite case every antichain is
        // exceptional and every enumerated class has its direct sum as a
        // cover (or cocover, on the torsionfree side)
        let mut supplements = BTreeMap::new();
        supplements.insert(
            "all_antichains_exceptional".to_string(),
            self.antichains().iter().all(|a| self.is_exceptional(a)),
        );
        supplements.insert(
            "thick_subcategories_have_cover".to_string(),
            sets[1]
                .iter()
                .all(|s| s.iter().all(|&m| self.generates(s, m))),
        );
        supplements.insert(
            "torsion_classes_have_cover".to_string(),
            sets[4]
                .iter()
                .all(|s| s.iter().all(|&m| self.generates(s, m))),
        );
        supplements.insert(
            "torsionfree_classes_have_cocover".to_string(),
            sets[6]
                .iter()
                .all(|s| s.iter().all(|&m| self.cogenerates(s, m))),
        );

        // sincere specialization: full-support members correspond across all
        // seven families; the sincere support-tilting classes are exactly
        // the tilting classes
        let sincere_counts: Vec<usize> = sets
            .iter()
            .map(|family| family.iter().filter(|s| self.is_sincere(s)).count())
            .collect();
        let sincere_pass = sincere_counts.windows(2).all(|w| w[0] == w[1]);
        let mut counts_map = BTreeMap::new();
        let mut sincere_map = BTreeMap::new();
        for (i, kind) in SetKind::ALL.iter().enumerate() {
            counts_map.insert(format!("set{}", kind.index()), counts[i]);
            sincere_map.insert(format!("set{}", kind.index()), sincere_counts[i]);
        }

        Ok(VerifyReport {
            counts: counts_map,
            roundtrips,
            supplements,
            sincere: SincereReport {
                counts: sincere_map,
                pass: sincere_pass,
            },
        })
    }

    fn all_pass(
        &self,
        name: &str,
        family: &[IdxSet],
        mut check: impl FnMut(&IdxSet) -> Result<(), serde_json::Value>,
    ) -> CheckResult {
        for s in family {
            if let Err(witness) = check(s) {
                return CheckResult::fail(name, witness);
            }
        }
        CheckResult::ok(name)
    }
}

fn dedup(sets: impl Iterator<Item = IdxSet>) -> Vec<IdxSet> {
    let unique: BTreeSet<IdxSet> = sets.collect();
    unique.into_iter().collect()
}
