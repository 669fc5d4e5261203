use std::collections::BTreeMap;
use std::sync::Arc;

use super::tensor::{hotimes, TensorResult};
use crate::error::{Error, Result};
use crate::exactla::{unit_vector, Matrix, Scalar};
use crate::gmod::{hom_space, ActionBlocks, Bimodule, HomSpace, Linearity};

/// `H(P_S, N)` together with the hom space behind each component.
///
/// For an `(X,Y)`-bigraded `(R,S)`-bimodule `P` and a `(Z,Y)`-bigraded
/// `(T,S)`-bimodule `N`, component `(z,x)` is the space of right
/// `S`-linear maps `ₓP → ₂N` with `f = f·u^x`. Its blocks are indexed by
/// `y`, in order.
#[derive(Clone, Debug)]
pub struct HomResult {
    pub module: Arc<Bimodule>,
    pub spaces: Vec<HomSpace>,
}

impl HomResult {
    /// Block maps `ₓP_y → ₂N_y` of the element with coordinates `coords` in component `c`.
    pub fn element(&self, c: usize, coords: &[Scalar]) -> Vec<Matrix> {
        self.spaces[c].element(coords)
    }

    pub fn coordinates(&self, c: usize, blocks: &[Matrix]) -> Option<Vec<Scalar>> {
        self.spaces[c].coordinates(blocks)
    }
}

pub fn hom_functor(p: &Arc<Bimodule>, n: &Arc<Bimodule>) -> Result<HomResult> {
    if !p.right().same(n.right()) {
        return Err(Error::invalid("H(P, N) needs P and N graded over the same right ring and set"));
    }
    let field = p.field();
    let (nz, nx, ny) = (n.nx(), p.nx(), p.ny());
    let top_fix: Vec<Vec<Matrix>> = if p.left().is_trivial() {
        (0..nx).map(|x| (0..ny).map(|y| Matrix::identity(field, p.dim(p.component(x, y)))).collect()).collect()
    } else {
        let ring = &p.left().ring;
        let units = ring.local_units();
        let top = units.top();
        (0..nx)
            .map(|x| {
                let ux = units.u_pow_x(&top, &p.left().gset, x);
                (0..ny).map(|y| p.left_operator(&ux, p.component(x, y))).collect()
            })
            .collect()
    };
    let mut spaces = Vec::with_capacity(nz * nx);
    for z in 0..nz {
        for x in 0..nx {
            let pairs = (0..ny).map(|y| (p.component(x, y), n.component(z, y))).collect();
            spaces.push(HomSpace::solve(p.clone(), n.clone(), pairs, Linearity::RIGHT, Some(&top_fix[x])));
        }
    }
    let comp = |z: usize, x: usize| z * nx + x;
    let dims: Vec<usize> = spaces.iter().map(HomSpace::dim).collect();
    let read = |c: usize, blocks: &[Matrix]| -> Vec<Scalar> {
        spaces[c].coordinates(blocks).expect("the action keeps maps inside H")
    };
    let mut right_act: BTreeMap<(usize, usize), ActionBlocks> = BTreeMap::new();
    if !p.left().is_trivial() {
        let ring = &p.left().ring;
        let gset = &p.left().gset;
        for z in 0..nz {
            for x in 0..nx {
                let c = comp(z, x);
                for g in 0..ring.groupoid().size() {
                    // (f·r)(p) = f(r·p), defined on ₓ'P with g·x' = x
                    let Some(x2) = gset.right(x, g) else { continue };
                    let t = comp(z, x2);
                    let blocks = (0..ring.dim(g))
                        .map(|i| {
                            let cols: Vec<Vec<Scalar>> = spaces[c]
                                .basis_blocks()
                                .iter()
                                .map(|f| {
                                    let moved: Vec<Matrix> = (0..ny)
                                        .map(|y| {
                                            let l = &p.left_blocks(g, p.component(x2, y)).expect("g·x' is defined")[i];
                                            f[y].mul(l)
                                        })
                                        .collect();
                                    read(t, &moved)
                                })
                                .collect();
                            Matrix::from_columns(field, dims[t], &cols)
                        })
                        .collect();
                    right_act.insert((c, g), blocks);
                }
            }
        }
    }
    let mut left_act: BTreeMap<(usize, usize), ActionBlocks> = BTreeMap::new();
    if !n.left().is_trivial() {
        let ring = &n.left().ring;
        for z in 0..nz {
            for k in 0..ring.groupoid().size() {
                let Some(z2) = n.left().gset.left(k, z) else { continue };
                for x in 0..nx {
                    let (c, t) = (comp(z, x), comp(z2, x));
                    let blocks = (0..ring.dim(k))
                        .map(|i| {
                            let cols: Vec<Vec<Scalar>> = spaces[c]
                                .basis_blocks()
                                .iter()
                                .map(|f| {
                                    let moved: Vec<Matrix> = (0..ny)
                                        .map(|y| {
                                            let l = &n.left_blocks(k, n.component(z, y)).expect("k·z is defined")[i];
                                            l.mul(&f[y])
                                        })
                                        .collect();
                                    read(t, &moved)
                                })
                                .collect();
                            Matrix::from_columns(field, dims[t], &cols)
                        })
                        .collect();
                    left_act.insert((k, c), blocks);
                }
            }
        }
    }
    let module = Bimodule::new(n.left().clone(), p.left().clone(), dims, left_act, right_act)?;
    Ok(HomResult {
        module: Arc::new(module),
        spaces,
    })
}

/// The two sides of the tensor-hom adjunction with explicit mutually inverse maps.
pub struct Adjunction {
    pub tensor: TensorResult,
    pub hom: HomResult,
    /// `Hom(M ⊗̂ P, N)`.
    pub left_space: HomSpace,
    /// `Hom(M, H(P, N))`.
    pub right_space: HomSpace,
    /// Matrix of `α` in the bases of the two hom spaces.
    pub alpha: Matrix,
    /// Matrix of `β`.
    pub beta: Matrix,
}

/// `α : Hom(M ⊗̂ P, N) → Hom(M, H(P,N))`, `α(μ)(m)(p) = μ(m ⊗ p)`, and its
/// inverse `β(ν)(m ⊗ p) = ν(m)(p)`. Fails if they are not mutually inverse.
pub fn adjunction_maps(m: &Arc<Bimodule>, p: &Arc<Bimodule>, n: &Arc<Bimodule>) -> Result<Adjunction> {
    let field = m.field();
    let tensor = hotimes(m, p)?;
    let hom = hom_functor(p, n)?;
    let target = Arc::new(hom.module.with_gradings(m.left().clone(), m.right().clone())?);
    let hom = HomResult {
        module: target.clone(),
        spaces: hom.spaces,
    };
    let n = Arc::new(n.with_gradings(tensor.module.left().clone(), tensor.module.right().clone())?);
    let left_space = hom_space(&tensor.module, &n)?;
    let right_space = hom_space(m, &target)?;
    let ny = p.ny();

    let alpha_of = |mu: &[Matrix]| -> Vec<Matrix> {
        (0..m.dims().len())
            .map(|c| {
                let (w, x) = m.split(c);
                let cols: Vec<Vec<Scalar>> = (0..m.dim(c))
                    .map(|a| {
                        let ea = unit_vector(field, m.dim(c), a);
                        let blocks: Vec<Matrix> = (0..ny)
                            .map(|y| {
                                let (tc, pc) = (n.component(w, y), p.component(x, y));
                                let cols: Vec<Vec<Scalar>> = (0..p.dim(pc))
                                    .map(|b| {
                                        let t = tensor.pure_tensor(tc, c, pc, &ea, &unit_vector(field, p.dim(pc), b));
                                        mu[tc].apply(&t)
                                    })
                                    .collect();
                                Matrix::from_columns(field, n.dim(tc), &cols)
                            })
                            .collect();
                        hom.coordinates(c, &blocks).expect("α(μ)(m) lies in H")
                    })
                    .collect();
                Matrix::from_columns(field, target.dim(c), &cols)
            })
            .collect()
    };
    let beta_of = |nu: &[Matrix]| -> Result<Vec<Matrix>> {
        (0..tensor.quotients.len())
            .map(|tc| {
                let y = tensor.module.split(tc).1;
                tensor.induced(tc, n.dim(tc), &|s, a, b| {
                    let f = hom.element(s.left, &nu[s.left].column(a));
                    f[y].column(b)
                })
            })
            .collect()
    };

    let mut alpha_cols = Vec::with_capacity(left_space.dim());
    for mu in left_space.basis_blocks() {
        let blocks = alpha_of(&mu);
        alpha_cols.push(right_space.coordinates(&blocks).ok_or_else(|| Error::invalid("α(μ) is not a homomorphism"))?);
    }
    let mut beta_cols = Vec::with_capacity(right_space.dim());
    for nu in right_space.basis_blocks() {
        let blocks = beta_of(&nu)?;
        beta_cols.push(left_space.coordinates(&blocks).ok_or_else(|| Error::invalid("β(ν) is not a homomorphism"))?);
    }
    let alpha = Matrix::from_columns(field, right_space.dim(), &alpha_cols);
    let beta = Matrix::from_columns(field, left_space.dim(), &beta_cols);
    if !alpha.mul(&beta).is_identity() || !beta.mul(&alpha).is_identity() {
        return Err(Error::invalid("α and β are not mutually inverse"));
    }
    Ok(Adjunction {
        tensor,
        hom,
        left_space,
        right_space,
        alpha,
        beta,
    })
}

/// `dim Hom(M, N)`.
pub fn hom_dim(m: &Arc<Bimodule>, n: &Arc<Bimodule>) -> Result<usize> {
    Ok(hom_space(m, n)?.dim())
}
