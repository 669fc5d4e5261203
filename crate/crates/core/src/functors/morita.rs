use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::endo::{e_ring, lambda_p, pair_degree, s_x_r, shift_coords};
use super::hom::hom_functor;
use super::tensor::hotimes;
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar, Subspace};
use crate::gmod::{
    direct_sum, hom_space, is_projective, r_hat, realize, right_module, row, shift_basis, shift_right, submodule, Bimodule,
    GradedHom, Grading, HomSpace, Linearity,
};
use crate::gring::GradedRing;
use crate::gset::{point_gset, GSet, Side};

const ISO_TRIES: usize = 64;

/// Some isomorphism `a → b`, found among small random combinations of a
/// basis of `Hom(a, b)`; `None` when dimensions differ or no try succeeds.
pub fn find_isomorphism(a: &Arc<Bimodule>, b: &Arc<Bimodule>, seed: u64) -> Result<Option<GradedHom>> {
    if a.dims() != b.dims() {
        return Ok(None);
    }
    let space = hom_space(a, b)?;
    let field = a.field();
    let k = space.dim();
    if k == 0 {
        let f = GradedHom::zero(a.clone(), b.clone());
        return Ok(f.is_isomorphism().then_some(f));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..ISO_TRIES {
        let coords: Vec<Scalar> = if attempt == 0 {
            vec![field.one(); k]
        } else {
            (0..k).map(|_| field.from_i64(rng.gen_range(-3..=3))).collect()
        };
        let f = space.hom(&coords);
        if f.is_isomorphism() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Outcome of comparing `P ⊗̂ Q` with `R̂` and `Q ⊗̂ P` with `Ŝ`.
#[derive(Clone, Debug)]
pub struct MoritaCheck {
    pub verdict: bool,
    /// `P ⊗̂_S Q → R̂` and `Q ⊗̂_R P → Ŝ` when both exist.
    pub witnesses: Option<(GradedHom, GradedHom)>,
    pub dims_pq: Vec<usize>,
    pub dims_qp: Vec<usize>,
    pub dims_r: Vec<usize>,
    pub dims_s: Vec<usize>,
}

fn hat_of(g: &Grading, like: &Bimodule) -> Result<Arc<Bimodule>> {
    Ok(Arc::new(r_hat(&g.ring, &g.gset)?.with_gradings(like.left().clone(), like.right().clone())?))
}

pub fn morita_check(p: &Arc<Bimodule>, q: &Arc<Bimodule>, seed: u64) -> Result<MoritaCheck> {
    if p.left().is_trivial() || p.right().is_trivial() {
        return Err(Error::invalid("P must be graded on both sides"));
    }
    if !p.left().same(q.right()) || !p.right().same(q.left()) {
        return Err(Error::invalid("Q must be graded by the right and left gradings of P, swapped"));
    }
    let pq = hotimes(p, q)?.module;
    let qp = hotimes(q, p)?.module;
    let rh = hat_of(p.left(), &pq)?;
    let sh = hat_of(p.right(), &qp)?;
    let first = find_isomorphism(&pq, &rh, seed)?;
    let second = match first {
        Some(_) => find_isomorphism(&qp, &sh, seed)?,
        None => None,
    };
    let witnesses = first.zip(second);
    Ok(MoritaCheck {
        verdict: witnesses.is_some(),
        witnesses,
        dims_pq: pq.dims().to_vec(),
        dims_qp: qp.dims().to_vec(),
        dims_r: rh.dims().to_vec(),
        dims_s: sh.dims().to_vec(),
    })
}

/// Which condition of the finite Morita criterion failed first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CriteriaFailure {
    /// `λ_P` is not bijective on component `(x, x')`.
    Lambda { component: usize },
    /// `(y)S` is not an image of a sum of rows of `P`.
    Generator { y: usize },
    /// The row `ₓP` is not projective.
    Projective { x: usize },
}

#[derive(Clone, Debug)]
pub struct MoritaCriteria {
    pub verdict: bool,
    pub failure: Option<CriteriaFailure>,
    pub lambda_dims: Vec<(usize, usize)>,
}

/// `λ_P` bijective, `P_S` a generator and every row `ₓP` projective.
pub fn morita_criteria(p: &Arc<Bimodule>) -> Result<MoritaCriteria> {
    if p.left().is_trivial() || p.right().is_trivial() {
        return Err(Error::invalid("P must be graded on both sides"));
    }
    let e = e_ring(p)?;
    let lam = lambda_p(p, &e)?;
    let lambda_dims: Vec<(usize, usize)> = lam.blocks.iter().map(|b| (b.cols(), b.rows())).collect();
    let done = |failure| {
        Ok(MoritaCriteria {
            verdict: false,
            failure: Some(failure),
            lambda_dims: lambda_dims.clone(),
        })
    };
    if let Some(c) = lam.blocks.iter().position(|b| !b.is_invertible()) {
        return done(CriteriaFailure::Lambda { component: c });
    }
    let s = p.right().clone();
    let rows: Vec<Arc<Bimodule>> = (0..p.nx()).map(|x| row(p, x).map(Arc::new)).collect::<Result<_>>()?;
    for y in 0..s.points() {
        let sy = shift_right(&s.ring, &s.gset, y, None)?;
        let sy = Arc::new(sy.with_gradings(Grading::trivial(p.field()), s.clone())?);
        let mut images: Vec<Subspace> = sy.dims().iter().map(|&d| Subspace::zero(p.field(), d)).collect();
        for r in &rows {
            let r = Arc::new(r.with_gradings(Grading::trivial(p.field()), s.clone())?);
            for f in hom_space(&r, &sy)?.basis() {
                for (c, b) in f.blocks.iter().enumerate() {
                    images[c] = images[c].sum(&b.image())?;
                }
            }
        }
        if images.iter().any(|i| !i.is_full()) {
            return done(CriteriaFailure::Generator { y });
        }
    }
    for (x, r) in rows.iter().enumerate() {
        if !is_projective(r)? {
            return done(CriteriaFailure::Projective { x });
        }
    }
    Ok(MoritaCriteria {
        verdict: true,
        failure: None,
        lambda_dims,
    })
}

/// `Q = H(P, Ŝ)`, the candidate inverse bimodule used to cross-check the criteria.
pub fn dual_bimodule(p: &Arc<Bimodule>) -> Result<Arc<Bimodule>> {
    let s = p.right();
    let sh = Arc::new(r_hat(&s.ring, &s.gset)?.with_gradings(s.clone(), s.clone())?);
    let q = hom_functor(p, &sh)?.module;
    Ok(Arc::new(q.with_gradings(s.clone(), p.left().clone())?))
}

/// `END_R(M)` for a module graded by the right regular G-set, with `END_g`
/// the maps sending `M_h` into `M_{gh}`.
#[derive(Clone, Debug)]
pub struct EndRing {
    pub ring: Arc<GradedRing>,
    pub spaces: Vec<HomSpace>,
    /// Dimension of the ungraded endomorphism ring of `M`.
    pub ungraded_dim: usize,
}

fn is_right_regular(gset: &GSet) -> bool {
    let g = gset.groupoid();
    gset.size() == g.size() && (0..g.size()).all(|x| (0..g.size()).all(|a| gset.right(x, a) == g.mul(x, a)))
}

pub fn end_ring(m: &Arc<Bimodule>) -> Result<EndRing> {
    if !m.is_right_module() || !is_right_regular(&m.right().gset) {
        return Err(Error::invalid("END needs a right module graded by the right regular G-set"));
    }
    let field = m.field();
    let groupoid = m.right().ring.groupoid().clone();
    let n = groupoid.size();
    let sources = |g: usize| -> Vec<usize> { (0..n).filter(|&h| groupoid.mul(g, h).is_some()).collect() };
    let spaces: Vec<HomSpace> = (0..n)
        .map(|g| {
            let pairs = sources(g).into_iter().map(|h| (h, groupoid.mul(g, h).expect("defined"))).collect();
            HomSpace::solve(m.clone(), m.clone(), pairs, Linearity::RIGHT, None)
        })
        .collect();
    let dims: Vec<usize> = spaces.iter().map(HomSpace::dim).collect();
    let mut mult = BTreeMap::new();
    for g in 0..n {
        for g2 in 0..n {
            let Some(gg) = groupoid.mul(g, g2) else { continue };
            let (fa, fb) = (spaces[g].basis_blocks(), spaces[g2].basis_blocks());
            let src = sources(gg);
            let mut table = Vec::with_capacity(dims[g] * dims[g2]);
            for f in &fa {
                for f2 in &fb {
                    let blocks: Vec<Matrix> = src
                        .iter()
                        .map(|&h| {
                            let k2 = spaces[g2].pairs().iter().position(|&(s, _)| s == h).expect("h is a source of g2");
                            let mid = spaces[g2].pairs()[k2].1;
                            let k = spaces[g].pairs().iter().position(|&(s, _)| s == mid).expect("g2·h is a source of g");
                            f[k].mul(&f2[k2])
                        })
                        .collect();
                    table.push(spaces[gg].coordinates(&blocks).expect("composition is graded"));
                }
            }
            mult.insert((g, g2), table);
        }
    }
    let ring = crate::gring::validate_graded_ring(groupoid.clone(), field, dims, mult)?;
    let ungraded_dim = ungraded_end_dim(m)?;
    Ok(EndRing {
        ring: Arc::new(ring),
        spaces,
        ungraded_dim,
    })
}

/// `M` as a module over `R` with the grading forgotten.
pub fn forget_module(m: &Bimodule, flat: &Arc<GradedRing>) -> Result<Bimodule> {
    let field = m.field();
    let ring = &m.right().ring;
    let total = m.total_dim();
    let offsets: Vec<usize> = m.dims().iter().scan(0, |acc, &d| {
        let o = *acc;
        *acc += d;
        Some(o)
    }).collect();
    let mut blocks = Vec::with_capacity(ring.total_dim());
    for g in 0..ring.groupoid().size() {
        for i in 0..ring.dim(g) {
            let mut b = Matrix::zeros(field, total, total);
            for c in 0..m.dims().len() {
                if let (Some(t), Some(bl)) = (m.right_target(c, g), m.right_blocks(c, g)) {
                    b.set_block(offsets[t], offsets[c], &bl[i]);
                }
            }
            blocks.push(b);
        }
    }
    let gset = Arc::new(point_gset(flat.groupoid().clone(), Side::Right));
    let mut act = BTreeMap::new();
    act.insert((0, 0), blocks);
    right_module(flat.clone(), gset, vec![total], act)
}

fn ungraded_end_dim(m: &Arc<Bimodule>) -> Result<usize> {
    let flat = Arc::new(m.right().ring.forget_grading()?);
    let mm = Arc::new(forget_module(m, &flat)?);
    Ok(hom_space(&mm, &mm)?.dim())
}

/// First `g` with `R_{d(g)} ≠ Σ_{h ∈ F} R_{g⁻¹h} u R_{h⁻¹g}`, or `None`.
/// `u` is a flat idempotent supported on identities.
pub fn menini_nastasescu(ring: &GradedRing, u: &[Scalar], f: &[usize]) -> Result<Option<usize>> {
    let g = ring.groupoid();
    if ring.support(u).iter().any(|&a| !g.is_object(a)) || ring.mul(u, u) != u {
        return Err(Error::invalid("u must be an idempotent of degree in the identities"));
    }
    for a in 0..g.size() {
        let d = g.d(a);
        let mut vectors = Vec::new();
        for &h in f {
            let (Some(l), Some(r)) = (g.mul(g.inv(a), h), g.mul(g.inv(h), a)) else { continue };
            for i in 0..ring.dim(l) {
                let left = ring.mul(&ring.basis_element(l, i), u);
                for j in 0..ring.dim(r) {
                    let prod = ring.mul(&left, &ring.basis_element(r, j));
                    vectors.push(ring.component(&prod, d).to_vec());
                }
            }
        }
        let span = Subspace::from_vectors(ring.field(), ring.dim(d), vectors);
        if span.dim() != ring.dim(d) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// `Q = ⊕_{h ∈ F} u·(h)R` over the right regular G-set.
pub fn menini_module(ring: &Arc<GradedRing>, gset: &Arc<GSet>, u: &[Scalar], f: &[usize]) -> Result<Arc<Bimodule>> {
    let parts = f
        .iter()
        .map(|&h| {
            let s = Arc::new(shift_right(ring, gset, h, None)?);
            let comps: Vec<Subspace> = (0..gset.size())
                .map(|y| {
                    let basis = shift_basis(ring, gset, h, y, None);
                    let vectors = basis.iter().map(|&(a, i)| shift_coords(ring, &basis, &ring.mul(u, &ring.basis_element(a, i))));
                    Subspace::from_vectors(ring.field(), basis.len(), vectors.collect::<Vec<_>>())
                })
                .collect();
            Ok(submodule(&s, &comps)?.0)
        })
        .collect::<Result<Vec<_>>>()?;
    let like = Arc::new(shift_right(ring, gset, 0, None)?);
    Ok(direct_sum(&parts, &like)?.module)
}

/// The functor `F = H(R̂, −)` from graded modules to right `S_X(R)`-modules.
pub struct SxrFunctor {
    pub ring: Arc<GradedRing>,
    pub gset: Arc<GSet>,
    pub r_hat: Arc<Bimodule>,
    /// `S_X(R)` with its grading forgotten.
    pub flat: Arc<GradedRing>,
    /// Left multiplication `Ψ(a)` for each flat basis element `a` of degree
    /// `(z,x)`: blocks `(x)R_y → (z)R_y` indexed by `y`.
    psi: Vec<(usize, usize, Vec<Matrix>)>,
}

impl SxrFunctor {
    pub fn new(ring: &Arc<GradedRing>, gset: &Arc<GSet>) -> Result<SxrFunctor> {
        let field = ring.field();
        let n = gset.size();
        let sxr = s_x_r(ring, gset)?;
        let flat = Arc::new(sxr.forget_grading()?);
        let bases: Vec<Vec<(usize, usize)>> = (0..n * n).map(|c| shift_basis(ring, gset, c / n, c % n, None)).collect();
        let mut psi = Vec::with_capacity(flat.total_dim());
        for c in 0..n * n {
            let (z, x) = (c / n, c % n);
            for &(g, i) in &bases[c] {
                let s = ring.basis_element(g, i);
                let maps = (0..n)
                    .map(|y| {
                        let (src, tgt) = (&bases[pair_degree(n, x, y)], &bases[pair_degree(n, z, y)]);
                        let cols: Vec<Vec<Scalar>> = src
                            .iter()
                            .map(|&(h, j)| shift_coords(ring, tgt, &ring.mul(&s, &ring.basis_element(h, j))))
                            .collect();
                        Matrix::from_columns(field, tgt.len(), &cols)
                    })
                    .collect();
                psi.push((z, x, maps));
            }
        }
        Ok(SxrFunctor {
            ring: ring.clone(),
            gset: gset.clone(),
            r_hat: Arc::new(r_hat(ring, gset)?),
            flat,
            psi,
        })
    }

    /// `F(M)` as a right module over `S_X(R)` with `f·a = f ∘ Ψ(a)`.
    pub fn apply(&self, m: &Arc<Bimodule>) -> Result<Arc<Bimodule>> {
        let field = m.field();
        let rh = Arc::new(self.r_hat.with_gradings(self.r_hat.left().clone(), m.right().clone())?);
        let h = hom_functor(&rh, m)?;
        let dims = h.module.dims();
        let offsets: Vec<usize> = dims.iter().scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        }).collect();
        let total: usize = dims.iter().sum();
        let blocks = self
            .psi
            .iter()
            .map(|(z, x, maps)| {
                let mut b = Matrix::zeros(field, total, total);
                for (k, f) in h.spaces[*z].basis_blocks().iter().enumerate() {
                    let moved: Vec<Matrix> = f.iter().zip(maps).map(|(fy, py)| fy.mul(py)).collect();
                    let coords = h.coordinates(*x, &moved).expect("precomposition stays in H");
                    for (r, v) in coords.into_iter().enumerate() {
                        b.set(offsets[*x] + r, offsets[*z] + k, v);
                    }
                }
                b
            })
            .collect();
        let mut act = BTreeMap::new();
        act.insert((0, 0), blocks);
        let gset = Arc::new(point_gset(self.flat.groupoid().clone(), Side::Right));
        Ok(Arc::new(right_module(self.flat.clone(), gset, vec![total], act)?))
    }

    /// The right ideal `e_x S_X(R)`: row `x`, entries `(x)R_{x'}`.
    pub fn row_ideal(&self, x: usize) -> Result<Arc<Bimodule>> {
        let n = self.gset.size();
        let sxr = s_x_r(&self.ring, &self.gset)?;
        let vectors: Vec<Vec<Scalar>> = (0..n)
            .flat_map(|x2| {
                let c = pair_degree(n, x, x2);
                (0..sxr.dim(c)).map(move |i| (c, i))
            })
            .map(|(c, i)| sxr.basis_element(c, i))
            .collect();
        let comp = Subspace::from_vectors(self.flat.field(), self.flat.total_dim(), vectors);
        let flat = self.flat.clone();
        let gset = Arc::new(point_gset(flat.groupoid().clone(), Side::Right));
        let m = realize(
            Grading::trivial(flat.field()),
            Grading::new(flat.clone(), gset)?,
            &[comp],
            &|_, _, _, v| v.to_vec(),
            &|_, v, h, j| flat.mul(v, &flat.basis_element(h, j)),
        )?;
        Ok(Arc::new(m))
    }
}

/// Per-pair comparison of graded and `S_X(R)` hom dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SxrPair {
    pub graded: usize,
    pub functor: usize,
    /// `dim F(M ⊕ N) = dim F(M) + dim F(N)`.
    pub additive: bool,
}

#[derive(Clone, Debug)]
pub struct SxrReport {
    pub verdict: bool,
    pub pairs: Vec<SxrPair>,
    /// `F((x)R) ≅ e_x S_X(R)` for each `x`.
    pub rows: Vec<bool>,
}

pub fn gr_equiv_mod_sxr(
    ring: &Arc<GradedRing>,
    gset: &Arc<GSet>,
    samples: &[(Arc<Bimodule>, Arc<Bimodule>)],
    seed: u64,
) -> Result<SxrReport> {
    let functor = SxrFunctor::new(ring, gset)?;
    let mut pairs = Vec::with_capacity(samples.len());
    for (m, n) in samples {
        let n = Arc::new(n.with_gradings(m.left().clone(), m.right().clone())?);
        let graded = hom_space(m, &n)?.dim();
        let (fm, fn_) = (functor.apply(m)?, functor.apply(&n)?);
        let fn_ = Arc::new(fn_.with_gradings(fm.left().clone(), fm.right().clone())?);
        let sum = direct_sum(&[m.clone(), n.clone()], m)?.module;
        let fs = functor.apply(&sum)?;
        pairs.push(SxrPair {
            graded,
            functor: hom_space(&fm, &fn_)?.dim(),
            additive: fs.total_dim() == fm.total_dim() + fn_.total_dim(),
        });
    }
    let mut rows = Vec::with_capacity(gset.size());
    for x in 0..gset.size() {
        let fx = functor.apply(&Arc::new(shift_right(ring, gset, x, None)?))?;
        let ideal = functor.row_ideal(x)?;
        let ideal = Arc::new(ideal.with_gradings(fx.left().clone(), fx.right().clone())?);
        rows.push(find_isomorphism(&fx, &ideal, seed)?.is_some());
    }
    let verdict = pairs.iter().all(|p| p.graded == p.functor && p.additive) && rows.iter().all(|&r| r);
    Ok(SxrReport { verdict, pairs, rows })
}
