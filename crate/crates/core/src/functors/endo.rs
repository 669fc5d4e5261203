use std::collections::BTreeMap;
use std::sync::Arc;

use super::hom::{hom_functor, HomResult};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar};
use crate::gmod::{r_hat, shift_basis, Bimodule, GradedHom, HomSpace, Linearity};
use crate::gring::{validate_graded_ring, GradedRing, Table, Unit};
use crate::gset::GSet;
use crate::structure::pair_groupoid;

/// `E(P_S)` with component `(z,x)` the right `S`-linear maps `ₓP → ₂P`,
/// as a ring graded by the pair groupoid on `X`, and as the bimodule `H(P,P)`.
#[derive(Clone, Debug)]
pub struct ERing {
    pub hom: HomResult,
    pub ring: Arc<GradedRing>,
}

/// Degree `(z,x)` of the pair groupoid on `n` points.
pub fn pair_degree(n: usize, z: usize, x: usize) -> usize {
    z * n + x
}

pub fn e_ring(p: &Arc<Bimodule>) -> Result<ERing> {
    if p.left().is_trivial() {
        return Err(Error::invalid("E(P) needs a left grading on P"));
    }
    let hom = hom_functor(p, p)?;
    let n = p.nx();
    let ny = p.ny();
    let groupoid = Arc::new(pair_groupoid(n)?);
    let dims = hom.module.dims().to_vec();
    let basis: Vec<Vec<Vec<Matrix>>> = hom.spaces.iter().map(HomSpace::basis_blocks).collect();
    let mut mult: BTreeMap<(usize, usize), Table> = BTreeMap::new();
    for z in 0..n {
        for x in 0..n {
            let a = pair_degree(n, z, x);
            for w in 0..n {
                let b = pair_degree(n, x, w);
                let c = pair_degree(n, z, w);
                let mut table = Vec::with_capacity(dims[a] * dims[b]);
                for f in &basis[a] {
                    for g in &basis[b] {
                        let comp: Vec<Matrix> = (0..ny).map(|y| f[y].mul(&g[y])).collect();
                        table.push(hom.coordinates(c, &comp).expect("composition stays in E"));
                    }
                }
                mult.insert((a, b), table);
            }
        }
    }
    let ring = validate_graded_ring(groupoid, p.field(), dims, mult)?;
    Ok(ERing { hom, ring: Arc::new(ring) })
}

/// `λ_P : R̂ → E(P_S)`, `λ_P(r)(p) = r·p`, as a map of bigraded bimodules.
pub fn lambda_p(p: &Arc<Bimodule>, e: &ERing) -> Result<GradedHom> {
    let grading = p.left().clone();
    let (ring, gset) = (&grading.ring, &grading.gset);
    let rh = Arc::new(r_hat(ring, gset)?.with_gradings(grading.clone(), grading.clone())?);
    let target = Arc::new(e.hom.module.with_gradings(grading.clone(), grading.clone())?);
    let field = p.field();
    let n = p.nx();
    let blocks = (0..n * n)
        .map(|c| {
            let (z, x) = (c / n, c % n);
            let cols: Vec<Vec<Scalar>> = shift_basis(ring, gset, z, x, None)
                .into_iter()
                .map(|(g, i)| {
                    let maps: Vec<Matrix> = (0..p.ny())
                        .map(|y| p.left_blocks(g, p.component(x, y)).expect("g·x = z is defined")[i].clone())
                        .collect();
                    e.hom.coordinates(c, &maps).expect("left multiplication is S-linear")
                })
                .collect();
            Matrix::from_columns(field, target.dim(c), &cols)
        })
        .collect();
    GradedHom::new(rh, target, blocks)
}

/// Per-block behaviour of `ϱ_P` on `(y)S_{y'}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoBlock {
    pub y: usize,
    pub y2: usize,
    pub injective: bool,
    pub surjective: bool,
}

/// `ϱ_P(s)(p) = p·s` from `(y)S_{y'}` to left `R`-linear maps `P_y → P_{y'}`.
pub fn rho_p(p: &Arc<Bimodule>) -> Result<Vec<RhoBlock>> {
    if p.right().is_trivial() {
        return Err(Error::invalid("ϱ_P needs a right grading on P"));
    }
    let grading = p.right().clone();
    let (ring, gset) = (&grading.ring, &grading.gset);
    let field = p.field();
    let (nx, ny) = (p.nx(), p.ny());
    let mut out = Vec::with_capacity(ny * ny);
    for y in 0..ny {
        for y2 in 0..ny {
            let pairs = (0..nx).map(|x| (p.component(x, y), p.component(x, y2))).collect();
            let space = HomSpace::solve(p.clone(), p.clone(), pairs, Linearity::LEFT, None);
            let cols: Vec<Vec<Scalar>> = shift_basis(ring, gset, y, y2, None)
                .into_iter()
                .map(|(h, j)| {
                    let maps: Vec<Matrix> = (0..nx)
                        .map(|x| p.right_blocks(p.component(x, y), h).expect("y·h = y' is defined")[j].clone())
                        .collect();
                    space.coordinates(&maps).expect("right multiplication is R-linear")
                })
                .collect();
            let m = Matrix::from_columns(field, space.dim(), &cols);
            out.push(RhoBlock {
                y,
                y2,
                injective: m.is_injective(),
                surjective: m.is_surjective(),
            });
        }
    }
    Ok(out)
}

/// Coordinates of a flat ring element in the coordinate basis `basis`.
pub(crate) fn shift_coords(ring: &GradedRing, basis: &[(usize, usize)], v: &[Scalar]) -> Vec<Scalar> {
    basis.iter().map(|&(g, i)| v[ring.offset(g) + i].clone()).collect()
}

/// Flat ring element with coordinates `coords` in `basis`.
pub(crate) fn shift_element(ring: &GradedRing, basis: &[(usize, usize)], coords: &[Scalar]) -> Vec<Scalar> {
    let mut v = ring.zero_element();
    for (&(g, i), c) in basis.iter().zip(coords) {
        v[ring.offset(g) + i] = c.clone();
    }
    v
}

/// `S_X(R)`: `X × X` matrices with `(x,x')` entry in `(x)R_{x'}`, graded by
/// the pair groupoid on `X`. The basis of degree `(x,x')` is
/// [`shift_basis`]`(x, x')`.
pub fn s_x_r(ring: &GradedRing, gset: &GSet) -> Result<GradedRing> {
    let n = gset.size();
    let groupoid = Arc::new(pair_groupoid(n)?);
    let bases: Vec<Vec<(usize, usize)>> = (0..n * n).map(|c| shift_basis(ring, gset, c / n, c % n, None)).collect();
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let mut mult = BTreeMap::new();
    for x in 0..n {
        for x2 in 0..n {
            for x3 in 0..n {
                let (a, b, c) = (pair_degree(n, x, x2), pair_degree(n, x2, x3), pair_degree(n, x, x3));
                let mut table = Vec::with_capacity(dims[a] * dims[b]);
                for &(g, i) in &bases[a] {
                    for &(h, j) in &bases[b] {
                        let prod = ring.mul(&ring.basis_element(g, i), &ring.basis_element(h, j));
                        table.push(shift_coords(ring, &bases[c], &prod));
                    }
                }
                mult.insert((a, b), table);
            }
        }
    }
    validate_graded_ring(groupoid, ring.field(), dims, mult)
}

/// `u^X = diag(u^x)` in `S_X(R)` as a flat element.
pub fn u_big_x(ring: &GradedRing, gset: &GSet, sxr: &GradedRing, unit: &Unit) -> Vec<Scalar> {
    let n = gset.size();
    let units = ring.local_units();
    let mut v = sxr.zero_element();
    for x in 0..n {
        let ux = units.u_pow_x(unit, gset, x);
        let d = pair_degree(n, x, x);
        let coords = shift_coords(ring, &shift_basis(ring, gset, x, x, None), &ux);
        for (i, c) in coords.into_iter().enumerate() {
            v[sxr.offset(d) + i] = c;
        }
    }
    v
}

/// The isomorphism `Φ : E(R̂_R) → S_X(R)` and its inverse, per degree.
#[derive(Clone, Debug)]
pub struct SxrIso {
    pub e: ERing,
    pub sxr: Arc<GradedRing>,
    pub phi: Vec<Matrix>,
    pub psi: Vec<Matrix>,
}

/// Builds `Φ(α) = (α_x(u^x))` and `Ψ(s) = (r ↦ s·r)`, and checks that they are
/// mutually inverse and that `Φ` is multiplicative on every pair of basis elements.
pub fn s_x_r_iso(ring: &Arc<GradedRing>, gset: &Arc<GSet>) -> Result<SxrIso> {
    let field = ring.field();
    let n = gset.size();
    let rh = Arc::new(r_hat(ring, gset)?);
    let e = e_ring(&rh)?;
    let sxr = Arc::new(s_x_r(ring, gset)?);
    let units = ring.local_units();
    let top = units.top();
    let bases: Vec<Vec<(usize, usize)>> = (0..n * n).map(|c| shift_basis(ring, gset, c / n, c % n, None)).collect();
    let mut phi = Vec::with_capacity(n * n);
    let mut psi = Vec::with_capacity(n * n);
    for z in 0..n {
        for x in 0..n {
            let c = pair_degree(n, z, x);
            let ux = shift_coords(ring, &bases[pair_degree(n, x, x)], &units.u_pow_x(&top, gset, x));
            let cols: Vec<Vec<Scalar>> = e.hom.spaces[c].basis_blocks().iter().map(|f| f[x].apply(&ux)).collect();
            phi.push(Matrix::from_columns(field, sxr.dim(c), &cols));
            let cols: Vec<Vec<Scalar>> = (0..bases[c].len())
                .map(|k| {
                    let s = ring.basis_element(bases[c][k].0, bases[c][k].1);
                    let maps: Vec<Matrix> = (0..n)
                        .map(|y| {
                            let (src, tgt) = (&bases[pair_degree(n, x, y)], &bases[pair_degree(n, z, y)]);
                            let cols: Vec<Vec<Scalar>> = src
                                .iter()
                                .map(|&(h, j)| shift_coords(ring, tgt, &ring.mul(&s, &ring.basis_element(h, j))))
                                .collect();
                            Matrix::from_columns(field, tgt.len(), &cols)
                        })
                        .collect();
                    e.hom.coordinates(c, &maps).expect("left multiplication lies in E")
                })
                .collect();
            psi.push(Matrix::from_columns(field, e.ring.dim(c), &cols));
        }
    }
    for c in 0..n * n {
        if !phi[c].mul(&psi[c]).is_identity() || !psi[c].mul(&phi[c]).is_identity() {
            return Err(Error::invalid(format!("Φ and Ψ are not inverse in degree {c}")));
        }
    }
    for a in 0..n * n {
        for b in 0..n * n {
            let Some(ab) = e.ring.groupoid().mul(a, b) else { continue };
            for i in 0..e.ring.dim(a) {
                for j in 0..e.ring.dim(b) {
                    let prod = e.ring.mul_coords(a, &e.ring.basis_coords(a, i), b, &e.ring.basis_coords(b, j));
                    let lhs = phi[ab].apply(&prod);
                    let rhs = sxr.mul_coords(a, &phi[a].column(i), b, &phi[b].column(j));
                    if lhs != rhs {
                        return Err(Error::invalid(format!("Φ is not multiplicative on degrees {a}, {b}")));
                    }
                }
            }
        }
    }
    Ok(SxrIso { e, sxr, phi, psi })
}

/// Checks that `u^X` is idempotent and acts as the identity on every
/// homogeneous element whose degree has both ends in `u`; returns the first
/// failing degree of `S_X(R)`.
pub fn local_unit_failure(ring: &GradedRing, gset: &GSet, sxr: &GradedRing, unit: &Unit) -> Option<usize> {
    let n = gset.size();
    let ux = u_big_x(ring, gset, sxr, unit);
    if sxr.mul(&ux, &ux) != ux {
        return Some(0);
    }
    for c in 0..n * n {
        let basis = shift_basis(ring, gset, c / n, c % n, None);
        for (k, &(g, _)) in basis.iter().enumerate() {
            let groupoid = ring.groupoid();
            if !unit.objects.contains(&groupoid.d(g)) || !unit.objects.contains(&groupoid.t(g)) {
                continue;
            }
            let a = sxr.basis_element(c, k);
            if sxr.mul(&ux, &a) != a || sxr.mul(&a, &ux) != a {
                return Some(c);
            }
        }
    }
    None
}

/// `Ψ(s)` for `s` given by coordinates in degree `c` of `S_X(R)`, as an element of `E(R̂)`.
pub fn psi_element(iso: &SxrIso, c: usize, s: &[Scalar]) -> Vec<Scalar> {
    iso.psi[c].apply(s)
}

/// Ring element of `S_X(R)` degree `c` read as a flat element of `R`.
pub fn sxr_to_ring(ring: &GradedRing, gset: &GSet, c: usize, coords: &[Scalar]) -> Vec<Scalar> {
    let n = gset.size();
    shift_element(ring, &shift_basis(ring, gset, c / n, c % n, None), coords)
}
