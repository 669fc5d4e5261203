use std::collections::BTreeMap;
use std::sync::Arc;

use super::{ActionBlocks, Bimodule, GradedHom, Grading};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Quotient, Scalar, Subspace};
use crate::gring::{GradedRing, Unit};
use crate::gset::{GSet, Side};

type LeftFn<'a> = dyn Fn(usize, usize, usize, &[Scalar]) -> Vec<Scalar> + 'a;
type RightFn<'a> = dyn Fn(usize, &[Scalar], usize, usize) -> Vec<Scalar> + 'a;

/// Builds a bimodule whose component `c` is the subspace `comps[c]` of some
/// ambient space, with actions given on ambient vectors:
/// `left(g, i, c, v)` is `b_i · v` for the `i`-th basis element of `R_g`,
/// `right(c, v, h, j)` is `v · b_j`. Images are read back in the echelon
/// basis of the target component.
pub fn realize(left: Grading, right: Grading, comps: &[Subspace], lact: &LeftFn, ract: &RightFn) -> Result<Bimodule> {
    let dims: Vec<usize> = comps.iter().map(Subspace::dim).collect();
    let shell = Bimodule::unchecked(left, right, dims.clone(), BTreeMap::new(), BTreeMap::new())?;
    let field = shell.field();
    let mut left_act = BTreeMap::new();
    let mut right_act = BTreeMap::new();
    let read = |target: usize, w: Vec<Scalar>, what: &str| -> Result<Vec<Scalar>> {
        comps[target].coordinates(&w).ok_or_else(|| {
            Error::axiom("grading", format!("{what} leaves component {}", shell.component_label(target)), vec![target])
        })
    };
    if !shell.left().is_trivial() {
        let ring = shell.left().ring.clone();
        for g in 0..ring.groupoid().size() {
            for c in 0..dims.len() {
                let Some(t) = shell.left_target(g, c) else { continue };
                let mut blocks = Vec::with_capacity(ring.dim(g));
                for i in 0..ring.dim(g) {
                    let cols = comps[c]
                        .basis_vectors()
                        .iter()
                        .map(|v| read(t, lact(g, i, c, v), "left action"))
                        .collect::<Result<Vec<_>>>()?;
                    blocks.push(Matrix::from_columns(field, dims[t], &cols));
                }
                left_act.insert((g, c), blocks);
            }
        }
    }
    if !shell.right().is_trivial() {
        let ring = shell.right().ring.clone();
        for c in 0..dims.len() {
            for h in 0..ring.groupoid().size() {
                let Some(t) = shell.right_target(c, h) else { continue };
                let mut blocks = Vec::with_capacity(ring.dim(h));
                for j in 0..ring.dim(h) {
                    let cols = comps[c]
                        .basis_vectors()
                        .iter()
                        .map(|v| read(t, ract(c, v, h, j), "right action"))
                        .collect::<Result<Vec<_>>>()?;
                    blocks.push(Matrix::from_columns(field, dims[t], &cols));
                }
                right_act.insert((c, h), blocks);
            }
        }
    }
    Bimodule::new(shell.left().clone(), shell.right().clone(), dims, left_act, right_act)
}

/// Span of the basis vectors of `R_g` for the listed degrees.
fn degree_span(ring: &GradedRing, degrees: impl IntoIterator<Item = usize>) -> Subspace {
    let vectors = degrees.into_iter().flat_map(|g| (0..ring.dim(g)).map(move |i| ring.basis_element(g, i)));
    Subspace::from_vectors(ring.field(), ring.total_dim(), vectors.collect::<Vec<_>>())
}

fn in_unit(unit: Option<&Unit>, e: usize) -> bool {
    unit.is_none_or(|u| u.objects.contains(&e))
}

/// The right shift `u(x)R` with `(x)R_y = ⊕_{x·g = y} R_g`, cut down to
/// `t(g) ∈ u` when a unit is given.
pub fn shift_right(ring: &Arc<GradedRing>, gset: &Arc<GSet>, x: usize, unit: Option<&Unit>) -> Result<Bimodule> {
    let g = ring.groupoid().clone();
    let comps: Vec<Subspace> = (0..gset.size())
        .map(|y| degree_span(ring, (0..g.size()).filter(|&a| gset.right(x, a) == Some(y) && in_unit(unit, g.t(a)))))
        .collect();
    let r = ring.clone();
    realize(
        Grading::trivial(ring.field()),
        Grading::new(ring.clone(), gset.clone())?,
        &comps,
        &|_, _, _, v| v.to_vec(),
        &|_, v, h, j| r.mul(v, &r.basis_element(h, j)),
    )
}

/// The left shift `R(x)u` with `_yR(x) = ⊕_{g·x = y} R_g`, cut down to
/// `d(g) ∈ u` when a unit is given.
pub fn shift_left(ring: &Arc<GradedRing>, gset: &Arc<GSet>, x: usize, unit: Option<&Unit>) -> Result<Bimodule> {
    let g = ring.groupoid().clone();
    let comps: Vec<Subspace> = (0..gset.size())
        .map(|y| degree_span(ring, (0..g.size()).filter(|&a| gset.left(a, x) == Some(y) && in_unit(unit, g.d(a)))))
        .collect();
    let r = ring.clone();
    realize(
        Grading::new(ring.clone(), gset.clone())?,
        Grading::trivial(ring.field()),
        &comps,
        &|h, j, _, v| r.mul(&r.basis_element(h, j), v),
        &|_, v, _, _| v.to_vec(),
    )
}

/// Shift on the requested side: `(x)R` for right, `R(x)` for left.
pub fn shift(ring: &Arc<GradedRing>, gset: &Arc<GSet>, x: usize, side: Side) -> Result<Bimodule> {
    match side {
        Side::Right => shift_right(ring, gset, x, None),
        Side::Left => shift_left(ring, gset, x, None),
    }
}

/// Degrees making up `(x)R_y`, which equal those of `ₓR(y)`.
pub fn shift_degrees(ring: &GradedRing, gset: &GSet, x: usize, y: usize) -> Vec<usize> {
    (0..ring.groupoid().size()).filter(|&a| gset.right(x, a) == Some(y)).collect()
}

/// `R̂ = ⊕_x (x)R` as an `X`-bigraded `R`-bimodule with `ₓR̂_y = (x)R_y`.
pub fn r_hat(ring: &Arc<GradedRing>, gset: &Arc<GSet>) -> Result<Bimodule> {
    let n = gset.size();
    let mut comps = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            comps.push(degree_span(ring, shift_degrees(ring, gset, x, y)));
        }
    }
    let (r1, r2) = (ring.clone(), ring.clone());
    let grading = Grading::new(ring.clone(), gset.clone())?;
    realize(
        grading.clone(),
        grading,
        &comps,
        &|g, i, _, v| r1.mul(&r1.basis_element(g, i), v),
        &|_, v, h, j| r2.mul(v, &r2.basis_element(h, j)),
    )
}

/// Submodule with components `comps[c] ⊆ M_c` and its inclusion.
pub fn submodule(m: &Arc<Bimodule>, comps: &[Subspace]) -> Result<(Arc<Bimodule>, GradedHom)> {
    let field = m.field();
    let sub = Arc::new(realize(
        m.left().clone(),
        m.right().clone(),
        comps,
        &|g, i, c, v| m.act_left(g, &unit(field, m.left().ring.dim(g), i), c, v).expect("key defined").1,
        &|c, v, h, j| m.act_right(c, v, h, &unit(field, m.right().ring.dim(h), j)).expect("key defined").1,
    )?);
    let blocks = comps.iter().map(Subspace::inclusion).collect();
    let inc = GradedHom::unchecked(sub.clone(), m.clone(), blocks)?;
    Ok((sub, inc))
}

fn unit(field: crate::exactla::ScalarField, n: usize, i: usize) -> Vec<Scalar> {
    crate::exactla::unit_vector(field, n, i)
}

/// Quotient `M / V` for a graded submodule given by components, and the projection.
pub fn quotient_module(m: &Arc<Bimodule>, rels: &[Subspace]) -> Result<(Arc<Bimodule>, GradedHom)> {
    let field = m.field();
    let qs: Vec<Quotient> = rels.iter().cloned().map(Quotient::new).collect();
    let dims: Vec<usize> = qs.iter().map(Quotient::dim).collect();
    let mut left_act = BTreeMap::new();
    let mut right_act = BTreeMap::new();
    let induced = |blocks: &ActionBlocks, c: usize, t: usize| -> Result<ActionBlocks> {
        let mut out = Vec::with_capacity(blocks.len());
        for b in blocks {
            let cols: Vec<Vec<Scalar>> = (0..qs[c].dim()).map(|k| qs[t].class(&b.apply(&qs[c].representative(k)))).collect();
            // the relations must be carried into relations
            for v in qs[c].relations().basis_vectors() {
                if !qs[t].relations().contains_vector(&b.apply(v)) {
                    return Err(Error::axiom(
                        "submodule",
                        format!("relations are not closed under the action on component {}", m.component_label(c)),
                        vec![c],
                    ));
                }
            }
            out.push(Matrix::from_columns(field, qs[t].dim(), &cols));
        }
        Ok(out)
    };
    if !m.left().is_trivial() {
        for (&(g, c), blocks) in m.left_actions() {
            let t = m.left_target(g, c).expect("defined");
            left_act.insert((g, c), induced(blocks, c, t)?);
        }
    }
    if !m.right().is_trivial() {
        for (&(c, h), blocks) in m.right_actions() {
            let t = m.right_target(c, h).expect("defined");
            right_act.insert((c, h), induced(blocks, c, t)?);
        }
    }
    let q = Arc::new(Bimodule::new(m.left().clone(), m.right().clone(), dims, left_act, right_act)?);
    let blocks = qs
        .iter()
        .map(|qc| {
            let cols: Vec<Vec<Scalar>> = (0..qc.ambient_dim()).map(|i| qc.class(&unit(field, qc.ambient_dim(), i))).collect();
            Matrix::from_columns(field, qc.dim(), &cols)
        })
        .collect();
    let proj = GradedHom::unchecked(m.clone(), q.clone(), blocks)?;
    Ok((q, proj))
}

pub fn kernel(f: &GradedHom) -> Result<(Arc<Bimodule>, GradedHom)> {
    let comps: Vec<Subspace> = f.blocks.iter().map(Matrix::kernel).collect();
    submodule(&f.source, &comps)
}

pub fn image(f: &GradedHom) -> Result<(Arc<Bimodule>, GradedHom)> {
    let comps: Vec<Subspace> = f.blocks.iter().map(Matrix::image).collect();
    submodule(&f.target, &comps)
}

pub fn cokernel(f: &GradedHom) -> Result<(Arc<Bimodule>, GradedHom)> {
    let comps: Vec<Subspace> = f.blocks.iter().map(Matrix::image).collect();
    quotient_module(&f.target, &comps)
}

/// `⊕ M_i` with injections and projections.
pub struct DirectSum {
    pub module: Arc<Bimodule>,
    pub injections: Vec<GradedHom>,
    pub projections: Vec<GradedHom>,
}

pub fn direct_sum(parts: &[Arc<Bimodule>], empty_like: &Bimodule) -> Result<DirectSum> {
    let field = empty_like.field();
    for p in parts {
        if !p.same_gradings(empty_like) {
            return Err(Error::invalid("direct sums need matching gradings"));
        }
    }
    let ncomp = empty_like.dims().len();
    let dims: Vec<usize> = (0..ncomp).map(|c| parts.iter().map(|p| p.dim(c)).sum()).collect();
    let offsets: Vec<Vec<usize>> = (0..ncomp)
        .map(|c| {
            let mut acc = 0;
            parts
                .iter()
                .map(|p| {
                    let o = acc;
                    acc += p.dim(c);
                    o
                })
                .collect()
        })
        .collect();
    let stack = |key: (usize, usize), left: bool, count: usize, t: usize, c: usize| -> ActionBlocks {
        (0..count)
            .map(|i| {
                let mut m = Matrix::zeros(field, dims[t], dims[c]);
                for (k, p) in parts.iter().enumerate() {
                    let blocks = if left { p.left_blocks(key.0, key.1) } else { p.right_blocks(key.0, key.1) };
                    if let Some(b) = blocks {
                        m.set_block(offsets[t][k], offsets[c][k], &b[i]);
                    }
                }
                m
            })
            .collect()
    };
    let mut left_act = BTreeMap::new();
    let mut right_act = BTreeMap::new();
    for (&(g, c), blocks) in empty_like.left_actions() {
        let t = empty_like.left_target(g, c).expect("defined");
        left_act.insert((g, c), stack((g, c), true, blocks.len().max(empty_like.left().ring.dim(g)), t, c));
    }
    for (&(c, h), blocks) in empty_like.right_actions() {
        let t = empty_like.right_target(c, h).expect("defined");
        right_act.insert((c, h), stack((c, h), false, blocks.len().max(empty_like.right().ring.dim(h)), t, c));
    }
    let module = Arc::new(Bimodule::new(
        empty_like.left().clone(),
        empty_like.right().clone(),
        dims.clone(),
        left_act,
        right_act,
    )?);
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    for (k, p) in parts.iter().enumerate() {
        let inj: Vec<Matrix> = (0..ncomp)
            .map(|c| {
                let mut m = Matrix::zeros(field, dims[c], p.dim(c));
                m.set_block(offsets[c][k], 0, &Matrix::identity(field, p.dim(c)));
                m
            })
            .collect();
        let proj: Vec<Matrix> = inj.iter().map(Matrix::transpose).collect();
        injections.push(GradedHom::unchecked(p.clone(), module.clone(), inj)?);
        projections.push(GradedHom::unchecked(module.clone(), p.clone(), proj)?);
    }
    Ok(DirectSum {
        module,
        injections,
        projections,
    })
}

/// The zero module with the gradings of `like`.
pub fn zero_module(like: &Bimodule) -> Result<Bimodule> {
    Bimodule::new(
        like.left().clone(),
        like.right().clone(),
        vec![0; like.dims().len()],
        BTreeMap::new(),
        BTreeMap::new(),
    )
}

/// `ₓP` as a right module over the right ring.
pub fn row(p: &Bimodule, x: usize) -> Result<Bimodule> {
    let ny = p.ny();
    let dims = (0..ny).map(|y| p.dim(p.component(x, y))).collect();
    let mut act = BTreeMap::new();
    for y in 0..ny {
        for h in 0..p.right().ring.groupoid().size() {
            if let Some(b) = p.right_blocks(p.component(x, y), h) {
                act.insert((y, h), b.clone());
            }
        }
    }
    Bimodule::new(Grading::trivial(p.field()), p.right().clone(), dims, BTreeMap::new(), act)
}

/// `P_y` as a left module over the left ring.
pub fn column(p: &Bimodule, y: usize) -> Result<Bimodule> {
    let nx = p.nx();
    let dims = (0..nx).map(|x| p.dim(p.component(x, y))).collect();
    let mut act = BTreeMap::new();
    for x in 0..nx {
        for g in 0..p.left().ring.groupoid().size() {
            if let Some(b) = p.left_blocks(g, p.component(x, y)) {
                act.insert((g, x), b.clone());
            }
        }
    }
    Bimodule::new(p.left().clone(), Grading::trivial(p.field()), dims, act, BTreeMap::new())
}

/// Pivot positions of a coordinate subspace of `R`, read back as `(g, i)`.
fn degree_basis(ring: &GradedRing, comp: &Subspace) -> Vec<(usize, usize)> {
    comp.pivots()
        .iter()
        .map(|&p| {
            let g = (0..ring.dims().len())
                .rfind(|&g| ring.offset(g) <= p && ring.dim(g) > 0 && p < ring.offset(g) + ring.dim(g))
                .expect("pivot inside some component");
            (g, p - ring.offset(g))
        })
        .collect()
}

/// Degree and index of each basis vector of a component of a shift.
pub fn shift_basis(ring: &GradedRing, gset: &GSet, x: usize, y: usize, unit: Option<&Unit>) -> Vec<(usize, usize)> {
    let g = ring.groupoid();
    let comp = degree_span(ring, shift_degrees(ring, gset, x, y).into_iter().filter(|&a| in_unit(unit, g.t(a))));
    degree_basis(ring, &comp)
}

/// `λ_m : u(x)R → M, r ↦ m·r` for `m ∈ M_x` of a right module.
pub fn lambda_m(m: &Arc<Bimodule>, x: usize, v: &[Scalar], unit: Option<&Unit>) -> Result<GradedHom> {
    if !m.is_right_module() {
        return Err(Error::invalid("λ_m is defined for right modules"));
    }
    let grading = m.right().clone();
    let (ring, gset) = (&grading.ring, &grading.gset);
    let source = Arc::new(shift_right(ring, gset, x, unit)?.with_gradings(m.left().clone(), grading.clone())?);
    let field = m.field();
    let blocks = (0..gset.size())
        .map(|y| {
            let cols: Vec<Vec<Scalar>> = shift_basis(ring, gset, x, y, unit)
                .into_iter()
                .map(|(g, i)| {
                    let (t, w) = m.act_right(x, v, g, &unit_vec(ring, g, i)).expect("x·g is defined");
                    debug_assert_eq!(t, y);
                    w
                })
                .collect();
            Matrix::from_columns(field, m.dim(y), &cols)
        })
        .collect();
    GradedHom::new(source, m.clone(), blocks)
}

fn unit_vec(ring: &GradedRing, g: usize, i: usize) -> Vec<Scalar> {
    ring.basis_coords(g, i)
}

/// One summand of a generator presentation.
#[derive(Clone, Debug)]
pub struct Generator {
    pub x: usize,
    pub vector: Vec<Scalar>,
    pub unit: Unit,
}

/// A verified epimorphism `⊕ uᵢ(xᵢ)R → M`.
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub sum: DirectSum,
    pub epi: GradedHom,
}

/// Smallest unit `u` with `m·u = m` for `m ∈ M_x`.
pub fn fixing_unit(m: &Bimodule, x: usize, v: &[Scalar]) -> Unit {
    let ring = &m.right().ring;
    let units = ring.local_units();
    let gset = &m.right().gset;
    let objects = units
        .objects()
        .iter()
        .copied()
        .filter(|&e| gset.in_component(x, e))
        .filter(|&e| {
            let (_, w) = m.act_right(x, v, e, ring.local_identity(e)).expect("x·e is defined");
            w.iter().any(|s| !s.is_zero())
        })
        .collect();
    Unit { objects }
}

/// Greedy presentation: components in order, basis vectors in order, a new
/// generator whenever the vector is not yet in the image.
pub fn generator_epi(m: &Arc<Bimodule>) -> Result<Presentation> {
    if !m.is_right_module() {
        return Err(Error::invalid("presentations are built for right modules"));
    }
    let field = m.field();
    let mut images: Vec<Subspace> = m.dims().iter().map(|&d| Subspace::zero(field, d)).collect();
    let mut generators = Vec::new();
    let mut maps = Vec::new();
    for x in 0..m.dims().len() {
        for i in 0..m.dim(x) {
            let v = unit(field, m.dim(x), i);
            if images[x].contains_vector(&v) {
                continue;
            }
            let u = fixing_unit(m, x, &v);
            let lam = lambda_m(m, x, &v, Some(&u))?;
            for (c, b) in lam.blocks.iter().enumerate() {
                images[c] = images[c].sum(&b.image())?;
            }
            generators.push(Generator { x, vector: v, unit: u });
            maps.push(lam);
        }
    }
    let sources: Vec<Arc<Bimodule>> = maps.iter().map(|f| f.source.clone()).collect();
    let sum = direct_sum(&sources, m)?;
    let blocks = (0..m.dims().len())
        .map(|c| {
            let mut b = Matrix::zeros(field, m.dim(c), 0);
            for f in &maps {
                b = b.hstack(&f.blocks[c]);
            }
            b
        })
        .collect();
    let epi = GradedHom::new(sum.module.clone(), m.clone(), blocks)?;
    if !epi.is_surjective() {
        return Err(Error::invalid("generator presentation is not surjective"));
    }
    Ok(Presentation { generators, sum, epi })
}

/// Lifts `g : u(x)R → N'` through an epimorphism `p : N → N'` of right
/// modules: solves `p(m) = g(u^x)` and returns `λ_m` on `u(x)R`.
pub fn projectivity_witness(unit_: &Unit, x: usize, p: &GradedHom, g: &GradedHom) -> Result<GradedHom> {
    let n = &p.source;
    let grading = n.right().clone();
    let ring = &grading.ring;
    let units = ring.local_units();
    let ux = units.u_pow_x(unit_, &grading.gset, x);
    let basis = shift_basis(ring, &grading.gset, x, x, Some(unit_));
    let coords: Vec<Scalar> = basis.iter().map(|&(a, i)| ring.component(&ux, a)[i].clone()).collect();
    let target = g.apply(x, &coords);
    let rhs = Matrix::from_columns(n.field(), target.len(), &[target]);
    let m = p.blocks[x]
        .solve(&rhs)?
        .ok_or_else(|| Error::invalid("the map to lift through is not surjective"))?
        .column(0);
    let f = lambda_m(n, x, &m, Some(unit_))?;
    let f = GradedHom::unchecked(g.source.clone(), n.clone(), f.blocks)?;
    let check = p.compose(&f)?;
    if !check.same_blocks(g) {
        return Err(Error::invalid("lift does not factor the given map"));
    }
    Ok(f)
}

/// Whether the generator presentation of `m` splits.
pub fn is_projective(m: &Arc<Bimodule>) -> Result<bool> {
    let pres = generator_epi(m)?;
    let homs = super::hom_space(m, &pres.sum.module)?;
    let field = m.field();
    let id = GradedHom::identity(m.clone());
    let flat = |f: &GradedHom| -> Vec<Scalar> {
        f.blocks.iter().flat_map(|b| (0..b.rows()).flat_map(move |r| b.row(r).to_vec())).collect()
    };
    let cols: Vec<Vec<Scalar>> = homs.basis().iter().map(|s| flat(&pres.epi.compose(s).expect("composable"))).collect();
    let target = flat(&id);
    if cols.is_empty() {
        return Ok(target.is_empty());
    }
    let a = Matrix::from_columns(field, target.len(), &cols);
    let b = Matrix::from_columns(field, target.len(), &[target]);
    Ok(a.solve(&b)?.is_some())
}

/// `λ_s : (x)R → (g·x)R, r ↦ s·r` for `s ∈ R_g` and `x ∈ X_{d(g)}`.
pub fn left_multiplication(ring: &Arc<GradedRing>, gset: &Arc<GSet>, g: usize, s: &[Scalar], x: usize) -> Result<GradedHom> {
    let y = gset
        .left(g, x)
        .ok_or_else(|| Error::invalid(format!("{} does not act on {}", ring.groupoid().label(g), gset.label(x))))?;
    let source = Arc::new(shift_right(ring, gset, x, None)?);
    let target = Arc::new(shift_right(ring, gset, y, None)?.with_gradings(source.left().clone(), source.right().clone())?);
    let field = ring.field();
    let blocks = (0..gset.size())
        .map(|z| {
            let tdeg = degree_span(ring, shift_degrees(ring, gset, y, z));
            let cols = shift_basis(ring, gset, x, z, None)
                .into_iter()
                .map(|(h, i)| {
                    let prod = ring.mul(&ring.embed(g, s), &ring.basis_element(h, i));
                    tdeg.coordinates(&prod).expect("left multiplication stays in the shift")
                })
                .collect::<Vec<_>>();
            Matrix::from_columns(field, tdeg.dim(), &cols)
        })
        .collect();
    GradedHom::new(source, target, blocks)
}
