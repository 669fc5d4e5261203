use std::collections::BTreeMap;
use std::sync::Arc;

use super::{validate_graded_ring, GradedRing, Table};
use crate::error::{Error, Result};
use crate::exactla::{Scalar, ScalarField};
use crate::structure::{pair_groupoid, trivial_groupoid, Groupoid};

/// A finite-dimensional unital algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub field: ScalarField,
    pub dim: usize,
    /// `table[i * dim + j]` = coordinates of `b_i b_j`.
    pub table: Table,
}

impl Algebra {
    pub fn field(field: ScalarField) -> Self {
        Algebra {
            field,
            dim: 1,
            table: vec![vec![field.one()]],
        }
    }

    /// `K × K` with orthogonal idempotents.
    pub fn split(field: ScalarField) -> Self {
        let (o, z) = (field.one(), field.zero());
        Algebra {
            field,
            dim: 2,
            table: vec![vec![o.clone(), z.clone()], vec![z.clone(), z.clone()], vec![z.clone(), z.clone()], vec![z, o]],
        }
    }

    /// `K[x]/(x²)` with basis `1, x`.
    pub fn dual_numbers(field: ScalarField) -> Self {
        let (o, z) = (field.one(), field.zero());
        Algebra {
            field,
            dim: 2,
            table: vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()], vec![z.clone(), o], vec![z.clone(), z]],
        }
    }

    /// `2 × 2` matrices with basis `E11, E12, E21, E22`.
    pub fn matrices2(field: ScalarField) -> Self {
        let mut table = vec![vec![field.zero(); 4]; 16];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    table[(2 * i + j) * 4 + 2 * j + k][2 * i + k] = field.one();
                }
            }
        }
        Algebra { field, dim: 4, table }
    }
}

/// `A ⊗ KG` restricted to the degrees in `support`: `R_g = A` for `g` in the
/// support and `(a g)(b h) = (ab)(gh)`. The support must be closed under
/// defined products.
pub fn algebra_groupoid_ring(algebra: &Algebra, groupoid: Arc<Groupoid>, support: &[bool]) -> Result<GradedRing> {
    let g = &*groupoid;
    if support.len() != g.size() {
        return Err(Error::dimension("support must list every degree"));
    }
    let dims: Vec<usize> = support.iter().map(|&s| if s { algebra.dim } else { 0 }).collect();
    let mut mult = BTreeMap::new();
    for a in 0..g.size() {
        for b in 0..g.size() {
            let Some(c) = g.mul(a, b) else { continue };
            if support[a] && support[b] {
                if !support[c] {
                    return Err(Error::invalid(format!(
                        "support is not closed: {}·{} = {}",
                        g.label(a),
                        g.label(b),
                        g.label(c)
                    )));
                }
                mult.insert((a, b), algebra.table.clone());
            }
        }
    }
    validate_graded_ring(groupoid, algebra.field, dims, mult)
}

/// The groupoid ring `KG` with `e_g e_h = e_{gh}` when defined.
pub fn groupoid_ring(field: ScalarField, groupoid: Arc<Groupoid>) -> GradedRing {
    let support = vec![true; groupoid.size()];
    algebra_groupoid_ring(&Algebra::field(field), groupoid, &support).expect("groupoid rings are valid")
}

/// `FM_n(K)` graded by the pair groupoid, `E_{ij}` in degree `(i,j)`.
pub fn matrix_ring(field: ScalarField, n: usize) -> Result<GradedRing> {
    Ok(groupoid_ring(field, Arc::new(pair_groupoid(n)?)))
}

/// `K` over the trivial groupoid.
pub fn base_ring(field: ScalarField) -> GradedRing {
    groupoid_ring(field, Arc::new(trivial_groupoid()))
}

/// `K` in each identity degree and zero elsewhere.
pub fn concentrated_ring(field: ScalarField, groupoid: Arc<Groupoid>) -> GradedRing {
    let support: Vec<bool> = (0..groupoid.size()).map(|a| groupoid.is_object(a)).collect();
    algebra_groupoid_ring(&Algebra::field(field), groupoid, &support).expect("identity degrees are closed")
}

/// Builds a ring from integer structure constants `(g, h) ↦ [[..]]`.
pub fn ring_from_i64(
    field: ScalarField,
    groupoid: Arc<Groupoid>,
    dims: Vec<usize>,
    tables: &[((usize, usize), Vec<Vec<i64>>)],
) -> Result<GradedRing> {
    let mult = tables
        .iter()
        .map(|(k, t)| (*k, t.iter().map(|v| v.iter().map(|&x| field.from_i64(x)).collect::<Vec<Scalar>>()).collect()))
        .collect();
    validate_graded_ring(groupoid, field, dims, mult)
}
