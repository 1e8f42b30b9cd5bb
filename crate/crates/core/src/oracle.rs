//! Brute-force enumeration of torsion classes, torsionfree classes and thick
//! subcategories straight from their closure properties.
//!
//! Nothing here goes through the constructive maps: membership is decided by
//! enumerating subrepresentations, quotients, extension middle terms and
//! morphisms between small direct sums, and closing subsets against them.
//! Agreement with the constructive enumeration is the point, so the two
//! sides must not share logic beyond the representation-level primitives.

use crate::census::{Census, CensusError};
use crate::linalg::Mat;
use crate::rep::{
    cokernel, ext_cocycle_middle, ext_cocycle_reps, hom_basis, image, kernel, sub_reps, Morphism,
    Rep,
};
use std::collections::BTreeSet;
use thiserror::Error;

pub type IdxSet = BTreeSet<usize>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error("census entry of total dimension {total} exceeds the bound {bound}")]
    BoundExceeded { total: usize, bound: usize },
    #[error("census has {count} entries, oracle is limited to {max}")]
    TooLarge { count: usize, max: usize },
}

#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// Total-dimension cap for subrepresentation enumeration; must cover
    /// every census entry for quotient scans to be complete.
    pub sub_dim_bound: usize,
    /// Cap on the census size; the subset scan is exponential.
    pub max_indecs: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            sub_dim_bound: 8,
            max_indecs: 12,
        }
    }
}

fn guard(c: &Census, cfg: &OracleConfig, needs_subs: bool) -> Result<(), OracleError> {
    if c.len() > cfg.max_indecs {
        return Err(OracleError::TooLarge {
            count: c.len(),
            max: cfg.max_indecs,
        });
    }
    if needs_subs {
        for i in 0..c.len() {
            let total = c.rep(i).total_dim();
            if total > cfg.sub_dim_bound {
                return Err(OracleError::BoundExceeded {
                    total,
                    bound: cfg.sub_dim_bound,
                });
            }
        }
    }
    Ok(())
}

fn mask_of(parts: impl IntoIterator<Item = usize>) -> u64 {
    parts.into_iter().fold(0u64, |m, i| m | 1 << i)
}

fn summand_mask(c: &Census, rep: &Rep) -> Result<u64, OracleError> {
    Ok(mask_of(c.summands(rep)?.into_iter().map(|(i, _)| i)))
}

fn to_idxset(n: usize, mask: u64) -> IdxSet {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

/// Decompositions of all quotients of census entry `i`.
fn quotient_masks(c: &Census, i: usize, bound: usize) -> Result<Vec<u64>, OracleError> {
    let q = c.quiver();
    let mut masks = BTreeSet::new();
    for (_, incl) in sub_reps(q, c.rep(i), bound).map_err(|e| {
        // the guard rules this out; keep the message anyway
        OracleError::Census(CensusError::Internal(e.to_string()))
    })? {
        let (quot, _) = cokernel(q, &incl);
        masks.insert(summand_mask(c, &quot)?);
    }
    Ok(masks.into_iter().collect())
}

/// Decompositions of all subrepresentations of census entry `i`.
fn sub_masks(c: &Census, i: usize, bound: usize) -> Result<Vec<u64>, OracleError> {
    let mut masks = BTreeSet::new();
    for (sub, _) in sub_reps(c.quiver(), c.rep(i), bound)
        .map_err(|e| OracleError::Census(CensusError::Internal(e.to_string())))?
    {
        masks.insert(summand_mask(c, &sub)?);
    }
    Ok(masks.into_iter().collect())
}

/// Middle-term decompositions over every extension class of `x` by `y`
/// (`0 -> y -> E -> x -> 0`), one mask per class in `Ext(x, y)`.
fn middle_masks(c: &Census, x: usize, y: usize) -> Result<Vec<u64>, OracleError> {
    let q = c.quiver();
    let field = c.field();
    let reps = ext_cocycle_reps(q, c.rep(x), c.rep(y));
    let e = reps.len();
    let p = field.p() as u64;
    let mut masks = BTreeSet::new();
    let total = p.pow(e as u32);
    let mut coeffs = vec![0u32; e];
    for step in 0..total {
        if step > 0 {
            let mut k = 0;
            while k < e {
                if coeffs[k] + 1 < p as u32 {
                    coeffs[k] += 1;
                    break;
                }
                coeffs[k] = 0;
                k += 1;
            }
        }
        let cocycle: Vec<Mat> = (0..q.arrow_count())
            .map(|a| {
                let mut acc = {
                    let (s, t) = q.arrows()[a];
                    Mat::zero(field, c.rep(y).dims[t], c.rep(x).dims[s])
                };
                for (r, &coeff) in reps.iter().zip(&coeffs) {
                    if coeff != 0 {
                        acc = acc.add(&r[a].scale(coeff));
                    }
                }
                acc
            })
            .collect();
        let seq = ext_cocycle_middle(q, c.rep(x), c.rep(y), &cocycle)
            .map_err(|e| OracleError::Census(CensusError::Internal(e.to_string())))?;
        masks.insert(summand_mask(c, seq.middle())?);
    }
    Ok(masks.into_iter().collect())
}

/// Closure requirements shared by the torsion-side scans: for each member,
/// masks that must lie inside the subset, plus per-pair extension masks.
struct ClosureData {
    per_member: Vec<Vec<u64>>,
    per_pair: Vec<Vec<Vec<u64>>>,
}

fn scan(c: &Census, data: &ClosureData) -> Vec<IdxSet> {
    let n = c.len();
    let mut out = Vec::new();
    for mask in 0u64..1 << n {
        let mut ok = true;
        'check: for x in 0..n {
            if mask >> x & 1 == 0 {
                continue;
            }
            for req in &data.per_member[x] {
                if req & !mask != 0 {
                    ok = false;
                    break 'check;
                }
            }
            for y in 0..n {
                if mask >> y & 1 == 0 {
                    continue;
                }
                for req in &data.per_pair[x][y] {
                    if req & !mask != 0 {
                        ok = false;
                        break 'check;
                    }
                }
            }
        }
        if ok {
            out.push(to_idxset(n, mask));
        }
    }
    out
}

fn pair_extension_masks(c: &Census) -> Result<Vec<Vec<Vec<u64>>>, OracleError> {
    let n = c.len();
    let mut per_pair = vec![vec![Vec::new(); n]; n];
    for x in 0..n {
        for y in 0..n {
            if c.ext(x, y) > 0 {
                per_pair[x][y] = middle_masks(c, x, y)?;
            }
        }
    }
    Ok(per_pair)
}

/// All subsets closed under quotients and extensions. In the
/// representation-finite case each one automatically has a cover, the direct
/// sum of its members.
pub fn all_torsion_classes(c: &Census, cfg: &OracleConfig) -> Result<Vec<IdxSet>, OracleError> {
    guard(c, cfg, true)?;
    let per_member = (0..c.len())
        .map(|i| quotient_masks(c, i, cfg.sub_dim_bound))
        .collect::<Result<_, _>>()?;
    let per_pair = pair_extension_masks(c)?;
    Ok(scan(
        c,
        &ClosureData {
            per_member,
            per_pair,
        },
    ))
}

/// All subsets closed under subrepresentations and extensions.
pub fn all_torsionfree_classes(c: &Census, cfg: &OracleConfig) -> Result<Vec<IdxSet>, OracleError> {
    guard(c, cfg, true)?;
    let per_member = (0..c.len())
        .map(|i| sub_masks(c, i, cfg.sub_dim_bound))
        .collect::<Result<_, _>>()?;
    let per_pair = pair_extension_masks(c)?;
    Ok(scan(
        c,
        &ClosureData {
            per_member,
            per_pair,
        },
    ))
}

fn nonzero_elements(basis: &[Morphism], p: u32) -> Vec<Morphism> {
    let h = basis.len();
    assert!(h <= 24, "Hom space too large to enumerate");
    let total = (p as u64).pow(h as u32);
    let mut out = Vec::with_capacity(total as usize - 1);
    let mut coeffs = vec![0u32; h];
    for _ in 1..total {
        let mut k = 0;
        while k < h {
            if coeffs[k] + 1 < p {
                coeffs[k] += 1;
                break;
            }
            coeffs[k] = 0;
            k += 1;
        }
        out.push(Morphism::linear_combination(basis, &coeffs));
    }
    out
}

/// All subsets closed under kernels, cokernels and images of morphisms
/// between direct sums of at most two members (multiplicities allowed), and
/// under extension middle terms.
///
/// Closure under maps between arbitrary sums is not tested; the cap keeps
/// the morphism enumeration finite. Agreement with the filtration-closure
/// enumeration is the acceptance signal, and a discrepancy in either
/// direction fails loudly there.
pub fn all_thick_subcategories(c: &Census, cfg: &OracleConfig) -> Result<Vec<IdxSet>, OracleError> {
    guard(c, cfg, false)?;
    let n = c.len();
    let q = c.quiver();
    let field = c.field();
    // direct sums of one or two census entries
    let sums: Vec<Vec<usize>> = (0..n)
        .map(|i| vec![i])
        .chain((0..n).flat_map(|i| (i..n).map(move |j| vec![i, j])))
        .collect();
    let reps: Vec<Rep> = sums
        .iter()
        .map(|parts| {
            let rs: Vec<&Rep> = parts.iter().map(|&i| c.rep(i)).collect();
            Rep::direct_sum(q, field, &rs)
        })
        .collect();
    // implications: if the premise lies in the subset, so must the closure
    // of every morphism between the corresponding sums
    let mut implications: BTreeSet<(u64, u64)> = BTreeSet::new();
    for (pu, u) in sums.iter().zip(&reps) {
        for (pv, v) in sums.iter().zip(&reps) {
            let premise = mask_of(pu.iter().chain(pv.iter()).copied());
            let basis = hom_basis(q, u, v);
            if basis.is_empty() {
                continue;
            }
            for f in nonzero_elements(&basis, field.p()) {
                let (ker, _) = kernel(q, &f);
                let (coker, _) = cokernel(q, &f);
                let (im, _) = image(q, &f);
                let required =
                    summand_mask(c, &ker)? | summand_mask(c, &coker)? | summand_mask(c, &im)?;
                if required & !premise != 0 {
                    implications.insert((premise, required));
                }
            }
        }
    }
    let per_pair = pair_extension_masks(c)?;
    let implications: Vec<(u64, u64)> = implications.into_iter().collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << n {
        let mut ok = implications
            .iter()
            .all(|&(premise, required)| premise & !mask != 0 || required & !mask == 0);
        if ok {
            'ext: for x in 0..n {
                if mask >> x & 1 == 0 {
                    continue;
                }
                for y in 0..n {
                    if mask >> y & 1 == 0 {
                        continue;
                    }
                    for req in &per_pair[x][y] {
                        if req & !mask != 0 {
                            ok = false;
                            break 'ext;
                        }
                    }
                }
            }
        }
        if ok {
            out.push(to_idxset(n, mask));
        }
    }
    Ok(out)
}

/// Cover (or cocover) witness: the direct sum of the members of a class
/// decomposes back into exactly the members, one copy each.
pub fn cover_witness(c: &Census, class: &IdxSet) -> Result<bool, OracleError> {
    let rep = c.sum_of(class.iter().copied());
    let summands = c.summands(&rep)?;
    let expect: Vec<(usize, usize)> = class.iter().map(|&i| (i, 1)).collect();
    Ok(summands == expect)
}

/// `{X : Hom(t, X) = 0 for all t in the class}`: the torsionfree partner of
/// a torsion class.
pub fn hom_perp(c: &Census, class: &IdxSet) -> IdxSet {
    (0..c.len())
        .filter(|&x| class.iter().all(|&t| c.hom(t, x) == 0))
        .collect()
}
