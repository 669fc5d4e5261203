//! Change of grading data along admissible triples: restriction, induction,
//! their adjunction and the criteria for them to be equivalences.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{unit_vector, Echelon, Matrix, Quotient, Scalar, Subspace};
use crate::functors::{assemble, find_isomorphism, hotimes, layout, put_kron, second_factor_matrix, Slot, TensorResult};
use crate::gmod::{hom_space, realize, shift_basis, shift_right, submodule, Bimodule, GradedHom, Grading, HomSpace};
use crate::gring::{GradedRing, Unit};
use crate::gset::{regular_gset, GSet, Side};
use crate::structure::{GroupoidHom, Subgroupoid};

/// `(ρ : R → S, γ : G → H, χ : X → Y)` with `ρ(R_g) ⊆ S_{γ(g)}`,
/// `χ(X_e) ⊆ Y_{γ(e)}` and `χ(x·g) = χ(x)·γ(g)`.
#[derive(Clone, Debug)]
pub struct AdmissibleTriple {
    pub source: Arc<GradedRing>,
    pub target: Arc<GradedRing>,
    pub x_set: Arc<GSet>,
    pub y_set: Arc<GSet>,
    /// `rho[g]` is the matrix `R_g → S_{γ(g)}`.
    pub rho: Vec<Matrix>,
    pub gamma: GroupoidHom,
    pub chi: Vec<usize>,
}

pub fn validate_triple(
    source: Arc<GradedRing>,
    target: Arc<GradedRing>,
    x_set: Arc<GSet>,
    y_set: Arc<GSet>,
    rho: Vec<Matrix>,
    gamma: Vec<usize>,
    chi: Vec<usize>,
) -> Result<AdmissibleTriple> {
    let (g, h) = (source.groupoid().clone(), target.groupoid().clone());
    if source.field() != target.field() {
        return Err(Error::invalid("both rings must be over the same field"));
    }
    if **x_set.groupoid() != *g || **y_set.groupoid() != *h {
        return Err(Error::invalid("the G-sets must be over the groupoids of the rings"));
    }
    let gamma = GroupoidHom::new(g.clone(), h.clone(), gamma)?;
    if let Err((a, b)) = gamma.check() {
        return Err(Error::axiom(
            "functor",
            format!("γ({}·{}) ≠ γ({})·γ({})", g.label(a), g.label(b), g.label(a), g.label(b)),
            vec![a, b],
        ));
    }
    if rho.len() != g.size() {
        return Err(Error::dimension(format!("{} blocks of ρ for {} degrees", rho.len(), g.size())));
    }
    for (a, m) in rho.iter().enumerate() {
        let (r, c) = (target.dim(gamma.apply(a)), source.dim(a));
        if m.rows() != r || m.cols() != c {
            return Err(Error::axiom(
                "grading",
                format!("ρ on degree {} must be {r}×{c}, got {}×{}", g.label(a), m.rows(), m.cols()),
                vec![a],
            ));
        }
    }
    if chi.len() != x_set.size() || chi.iter().any(|&y| y >= y_set.size()) {
        return Err(Error::dimension("χ must send every point of X into Y"));
    }
    for &e in g.objects() {
        for x in x_set.component(e) {
            if !y_set.in_component(chi[x], gamma.apply(e)) {
                return Err(Error::axiom(
                    "components",
                    format!("χ({}) is not in the component of γ({})", x_set.label(x), g.label(e)),
                    vec![e, x],
                ));
            }
        }
    }
    for a in 0..g.size() {
        for x in 0..x_set.size() {
            if let Some(xa) = x_set.right(x, a) {
                if y_set.right(chi[x], gamma.apply(a)) != Some(chi[xa]) {
                    return Err(Error::axiom(
                        "equivariance",
                        format!("χ({}·{}) ≠ χ({})·γ({})", x_set.label(x), g.label(a), x_set.label(x), g.label(a)),
                        vec![a, x],
                    ));
                }
            }
        }
    }
    let t = AdmissibleTriple {
        source,
        target,
        x_set,
        y_set,
        rho,
        gamma,
        chi,
    };
    let (r, s) = (&t.source, &t.target);
    for a in 0..g.size() {
        for b in 0..g.size() {
            for i in 0..r.dim(a) {
                for j in 0..r.dim(b) {
                    let lhs = t.rho_flat(&r.mul(&r.basis_element(a, i), &r.basis_element(b, j)));
                    let rhs = s.mul(&t.rho_flat(&r.basis_element(a, i)), &t.rho_flat(&r.basis_element(b, j)));
                    if lhs != rhs {
                        return Err(Error::axiom(
                            "multiplicative",
                            format!("ρ is not multiplicative on degrees {}, {}", g.label(a), g.label(b)),
                            vec![a, b],
                        ));
                    }
                }
            }
        }
    }
    Ok(t)
}

impl AdmissibleTriple {
    /// `ρ` on a flat element of `R`, as a flat element of `S`.
    pub fn rho_flat(&self, r: &[Scalar]) -> Vec<Scalar> {
        let s = &self.target;
        let mut out = s.zero_element();
        for g in self.source.support(r) {
            let img = self.rho[g].apply(self.source.component(r, g));
            let off = s.offset(self.gamma.apply(g));
            for (k, v) in img.into_iter().enumerate() {
                out[off + k] = &out[off + k] + &v;
            }
        }
        out
    }

    /// `ρ(u^x)` for the largest unit `u` of `R`.
    pub fn rho_unit(&self, x: usize) -> Vec<Scalar> {
        let units = self.source.local_units();
        self.rho_flat(&units.u_pow_x(&units.top(), &self.x_set, x))
    }

    pub fn x_grading(&self) -> Result<Grading> {
        Grading::new(self.source.clone(), self.x_set.clone())
    }

    pub fn y_grading(&self) -> Result<Grading> {
        Grading::new(self.target.clone(), self.y_set.clone())
    }

    /// The identity triple on `(R, G, X)`.
    pub fn identity(ring: &Arc<GradedRing>, gset: &Arc<GSet>) -> Result<AdmissibleTriple> {
        let g = ring.groupoid();
        let rho = (0..g.size()).map(|a| Matrix::identity(ring.field(), ring.dim(a))).collect();
        validate_triple(
            ring.clone(),
            ring.clone(),
            gset.clone(),
            gset.clone(),
            rho,
            (0..g.size()).collect(),
            (0..gset.size()).collect(),
        )
    }
}

/// `Res(N)` together with the subspace of `N_{χ(x)}` realizing each component.
#[derive(Clone, Debug)]
pub struct ResResult {
    pub module: Arc<Bimodule>,
    pub comps: Vec<Subspace>,
}

/// `Res(N)_x = (N_{χ(x)} ∩ N·ρ(R))·ρ(u^x)` with `n_x · r = (n·ρ(r))_{x·g}`.
pub fn res(t: &AdmissibleTriple, n: &Arc<Bimodule>) -> Result<ResResult> {
    let yg = t.y_grading()?;
    if !n.is_right_module() || !n.right().same(&yg) {
        return Err(Error::invalid("Res needs a right module graded by the target of the triple"));
    }
    let field = n.field();
    // (N_{χ(x)} ∩ NR)·ρ(u^x) is already N_{χ(x)}·ρ(u^x) since ρ(u^x) is idempotent
    let comps: Vec<Subspace> = (0..t.x_set.size())
        .map(|x| {
            let y = t.chi[x];
            Subspace::full(field, n.dim(y)).map(&n.right_operator(y, &t.rho_unit(x)))
        })
        .collect();
    let xg = t.x_grading()?;
    let module = realize(
        Grading::trivial(field),
        xg,
        &comps,
        &|_, _, _, v| v.to_vec(),
        &|c, v, a, j| {
            let img = t.rho[a].column(j);
            n.act_right(t.chi[c], v, t.gamma.apply(a), &img).expect("χ(x)·γ(g) is defined").1
        },
    )?;
    Ok(ResResult {
        module: Arc::new(module),
        comps,
    })
}

/// `Ind(M) = M ⊗_R S`, computed grade by grade over the slots `(x, h)` with
/// `χ(x) ∈ Y_{t(h)}`; the remaining pure tensors vanish.
pub fn ind(t: &AdmissibleTriple, m: &Arc<Bimodule>) -> Result<TensorResult> {
    let xg = t.x_grading()?;
    if !m.is_right_module() || !m.right().same(&xg) {
        return Err(Error::invalid("Ind needs a right module graded by the source of the triple"));
    }
    let field = m.field();
    let (r, s) = (&t.source, &t.target);
    let (gg, hg) = (r.groupoid(), s.groupoid());
    let ny = t.y_set.size();
    let slot_grade = |x: usize, h: usize| t.y_set.right(t.chi[x], h);
    let mut slots = Vec::with_capacity(ny);
    let mut ambient = Vec::with_capacity(ny);
    for y in 0..ny {
        let parts = (0..t.x_set.size()).flat_map(|x| {
            (0..hg.size()).filter(move |&h| slot_grade(x, h) == Some(y)).map(move |h| (x, h, m.dim(x), s.dim(h)))
        });
        let (sl, n) = layout(parts.collect::<Vec<_>>());
        slots.push(sl);
        ambient.push(n);
    }
    let find = |y: usize, x: usize, h: usize| -> Option<&Slot> { slots[y].iter().find(|s| s.left == x && s.right == h) };
    let mut rels: Vec<Echelon> = ambient.iter().map(|&n| Echelon::new(field, n)).collect();
    for x in 0..t.x_set.size() {
        for a in 0..gg.size() {
            let ga = t.gamma.apply(a);
            let xa = t.x_set.right(x, a);
            for h in 0..hg.size() {
                // (m·r) ⊗ s at (x·g, h) and m ⊗ ρ(r)s at (x, γ(g)h)
                let first = xa.and_then(|x2| slot_grade(x2, h).map(|y| (y, x2)));
                let gh = hg.mul(ga, h);
                let second = gh.and_then(|k| slot_grade(x, k).map(|y| (y, k)));
                let y = match (first, second) {
                    (Some((y, _)), _) | (None, Some((y, _))) => y,
                    (None, None) => continue,
                };
                if let (Some((y1, _)), Some((y2, _))) = (first, second) {
                    debug_assert_eq!(y1, y2);
                }
                if rels[y].is_full() {
                    continue;
                }
                for i in 0..r.dim(a) {
                    let rho_i = t.rho[a].column(i);
                    let lm = gh.map(|_| s.left_mult_matrix(ga, &rho_i, h).expect("defined"));
                    for p in 0..m.dim(x) {
                        for b in 0..s.dim(h) {
                            let mut v = vec![field.zero(); ambient[y]];
                            if let Some((_, x2)) = first {
                                let mr = m.right_blocks(x, a).expect("x·g is defined")[i].column(p);
                                put_kron(&mut v, find(y, x2, h).expect("slot"), &mr, &unit_vector(field, s.dim(h), b));
                            }
                            if let (Some((_, k)), Some(lm)) = (second, &lm) {
                                let sb: Vec<Scalar> = lm.column(b).iter().map(|z| -z).collect();
                                put_kron(&mut v, find(y, x, k).expect("slot"), &unit_vector(field, m.dim(x), p), &sb);
                            }
                            rels[y].insert(v);
                        }
                    }
                }
            }
        }
    }
    let quotients: Vec<Quotient> = rels.into_iter().map(|e| Quotient::new(e.into_subspace())).collect();
    let ract = |c: usize, h2: usize, j: usize, tc: usize| -> Option<Matrix> {
        let sj = s.basis_coords(h2, j);
        Some(second_factor_matrix(field, &slots[c], ambient[c], &slots[tc], ambient[tc], &|sl| {
            let hh = hg.mul(sl.right, h2)?;
            Some((sl.left, hh, s.right_mult_matrix(sl.right, h2, &sj)?))
        }))
    };
    assemble(Grading::trivial(field), t.y_grading()?, slots.clone(), quotients, &|_, _, _, _| None, &ract)
}

/// `Φ : Hom(Ind M, N) → Hom(M, Res N)` and `Ψ` the other way, as matrices on
/// the hom-space bases.
pub struct ResIndAdjunction {
    pub ind: TensorResult,
    pub res: ResResult,
    pub ind_space: HomSpace,
    pub res_space: HomSpace,
    pub phi: Matrix,
    pub psi: Matrix,
}

/// `Φ(φ)(m) = φ(m ⊗ ρ(u^x))` and `Ψ(ψ)(m ⊗ s) = ψ(m)·s`; fails unless they
/// are mutually inverse.
pub fn res_ind_adjunction(t: &AdmissibleTriple, m: &Arc<Bimodule>, n: &Arc<Bimodule>) -> Result<ResIndAdjunction> {
    let field = m.field();
    let ind_m = ind(t, m)?;
    let res_n = res(t, n)?;
    let n2 = Arc::new(n.with_gradings(ind_m.module.left().clone(), ind_m.module.right().clone())?);
    let resm = Arc::new(res_n.module.with_gradings(m.left().clone(), m.right().clone())?);
    let ind_space = hom_space(&ind_m.module, &n2)?;
    let res_space = hom_space(m, &resm)?;
    let units = t.source.local_units();
    let top = units.top();

    let mut phi_cols = Vec::with_capacity(ind_space.dim());
    for f in ind_space.basis_blocks() {
        let blocks: Vec<Matrix> = (0..t.x_set.size())
            .map(|x| {
                let y = t.chi[x];
                let cols: Vec<Vec<Scalar>> = (0..m.dim(x))
                    .map(|a| {
                        let ea = unit_vector(field, m.dim(x), a);
                        let mut cls = vec![field.zero(); ind_m.module.dim(y)];
                        for &e in &top.objects {
                            if !t.x_set.in_component(x, e) {
                                continue;
                            }
                            let ge = t.gamma.apply(e);
                            let one = t.rho[e].apply(t.source.local_identity(e));
                            let pt = ind_m.pure_tensor(y, x, ge, &ea, &one);
                            cls = cls.iter().zip(&pt).map(|(p, q)| p + q).collect();
                        }
                        let w = f[y].apply(&cls);
                        res_n.comps[x].coordinates(&w).expect("Φ(φ)(m) lies in Res(N)")
                    })
                    .collect();
                Matrix::from_columns(field, res_n.comps[x].dim(), &cols)
            })
            .collect();
        phi_cols.push(res_space.coordinates(&blocks).ok_or_else(|| Error::invalid("Φ(φ) is not a homomorphism"))?);
    }
    let mut psi_cols = Vec::with_capacity(res_space.dim());
    for f in res_space.basis_blocks() {
        let blocks = (0..t.y_set.size())
            .map(|y| {
                ind_m.induced(y, n.dim(y), &|sl, a, b| {
                    let v = res_n.comps[sl.left].combine(&f[sl.left].column(a));
                    let sb = t.target.basis_coords(sl.right, b);
                    n.act_right(t.chi[sl.left], &v, sl.right, &sb).expect("χ(x)·h is defined").1
                })
            })
            .collect::<Result<Vec<_>>>()?;
        psi_cols.push(ind_space.coordinates(&blocks).ok_or_else(|| Error::invalid("Ψ(ψ) is not a homomorphism"))?);
    }
    let phi = Matrix::from_columns(field, res_space.dim(), &phi_cols);
    let psi = Matrix::from_columns(field, ind_space.dim(), &psi_cols);
    if !phi.mul(&psi).is_identity() || !psi.mul(&phi).is_identity() {
        return Err(Error::invalid("Φ and Ψ are not mutually inverse"));
    }
    Ok(ResIndAdjunction {
        ind: ind_m,
        res: res_n,
        ind_space,
        res_space,
        phi,
        psi,
    })
}

/// `ρ((x)R)S ⊆ (χ(x))S`, as a submodule of the shift.
pub fn rho_shift(t: &AdmissibleTriple, x: usize) -> Result<Arc<Bimodule>> {
    let s = &t.target;
    let y0 = t.chi[x];
    let shift = Arc::new(shift_right(s, &t.y_set, y0, None)?);
    let comps = rho_shift_comps(t, x);
    Ok(submodule(&shift, &comps)?.0)
}

/// `μ_x : Ind((x)R) → ρ((x)R)S, r ⊗ s ↦ ρ(r)s`, checked bijective.
pub fn exten_shift(t: &AdmissibleTriple, x: usize) -> Result<GradedHom> {
    let s = &t.target;
    let y0 = t.chi[x];
    let xr = Arc::new(shift_right(&t.source, &t.x_set, x, None)?);
    let ind_x = ind(t, &xr)?;
    let target = rho_shift(t, x)?;
    let target = Arc::new(target.with_gradings(ind_x.module.left().clone(), ind_x.module.right().clone())?);
    let comps = rho_shift_comps(t, x);
    let blocks = (0..t.y_set.size())
        .map(|y| {
            let basis = shift_basis(s, &t.y_set, y0, y, None);
            ind_x.induced(y, target.dim(y), &|sl, a, b| {
                let (g, i) = shift_basis(&t.source, &t.x_set, x, sl.left, None)[a];
                let v = s.mul(&t.rho_flat(&t.source.basis_element(g, i)), &s.basis_element(sl.right, b));
                let coords: Vec<Scalar> = basis.iter().map(|&(k, l)| v[s.offset(k) + l].clone()).collect();
                comps[y].coordinates(&coords).expect("ρ(r)s lies in ρ((x)R)S")
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mu = GradedHom::new(ind_x.module.clone(), target, blocks)?;
    if !mu.is_isomorphism() {
        return Err(Error::invalid(format!("μ is not bijective at {}", t.x_set.label(x))));
    }
    Ok(mu)
}

fn rho_shift_comps(t: &AdmissibleTriple, x: usize) -> Vec<Subspace> {
    let s = &t.target;
    let y0 = t.chi[x];
    let ux = t.rho_unit(x);
    (0..t.y_set.size())
        .map(|y| {
            let basis = shift_basis(s, &t.y_set, y0, y, None);
            let vecs = basis.iter().map(|&(h, j)| {
                let v = s.mul(&ux, &s.basis_element(h, j));
                basis.iter().map(|&(k, l)| v[s.offset(k) + l].clone()).collect::<Vec<_>>()
            });
            Subspace::from_vectors(s.field(), basis.len(), vecs.collect::<Vec<_>>())
        })
        .collect()
}

/// The `(X,Y)`-bigraded `(R,S)`-bimodule with `ₓP_y = ρ((x)R)S_y`, realized
/// inside `S`.
pub fn build_p(t: &AdmissibleTriple) -> Result<Arc<Bimodule>> {
    let s = &t.target;
    let (nx, ny) = (t.x_set.size(), t.y_set.size());
    let mut comps = Vec::with_capacity(nx * ny);
    for x in 0..nx {
        let ux = t.rho_unit(x);
        let y0 = t.chi[x];
        for y in 0..ny {
            let vecs = shift_basis(s, &t.y_set, y0, y, None)
                .into_iter()
                .map(|(h, j)| s.mul(&ux, &s.basis_element(h, j)))
                .collect::<Vec<_>>();
            comps.push(Subspace::from_vectors(s.field(), s.total_dim(), vecs));
        }
    }
    let module = realize(
        t.x_grading()?,
        t.y_grading()?,
        &comps,
        &|g, i, _, v| s.mul(&t.rho_flat(&t.source.basis_element(g, i)), v),
        &|_, v, h, j| s.mul(v, &s.basis_element(h, j)),
    )?;
    Ok(Arc::new(module))
}

/// Why a triple fails to give an equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivFailure {
    /// `v^y` is not in `Σ S_{h⁻¹} ρ(u^x) S_h`.
    Generator { y: usize, unit: Vec<usize> },
    /// `ρ` is not injective on `(x)R_{x'}`.
    NotInjective { x: usize, x2: usize },
    /// `ρ((x)R_{x'}) ≠ ρ(u^x) (χ(x))S_{χ(x')} ρ(u^{x'})`.
    NotOnto { x: usize, x2: usize },
}

#[derive(Clone, Debug)]
pub struct EquivRest {
    pub verdict: bool,
    pub failure: Option<EquivFailure>,
}

/// First `(y, v)` for which `v^y ∉ Σ_{χ(x)·h = y} S_{h⁻¹} ρ(u^x) S_h`, for
/// the units `units` of `S` and the largest unit of `R`.
pub fn generator_failure(t: &AdmissibleTriple, units: &[Unit]) -> Option<(usize, Unit)> {
    let s = &t.target;
    let hg = s.groupoid();
    let vset = s.local_units();
    for y in 0..t.y_set.size() {
        let mut span = Echelon::new(s.field(), s.total_dim());
        for x in 0..t.x_set.size() {
            let ux = t.rho_unit(x);
            for h in 0..hg.size() {
                if t.y_set.right(t.chi[x], h) != Some(y) {
                    continue;
                }
                let hi = hg.inv(h);
                for i in 0..s.dim(hi) {
                    let left = s.mul(&s.basis_element(hi, i), &ux);
                    for j in 0..s.dim(h) {
                        span.insert(s.mul(&left, &s.basis_element(h, j)));
                    }
                }
            }
        }
        let span = span.into_subspace();
        for v in units {
            if !span.contains_vector(&vset.u_pow_x(v, &t.y_set, y)) {
                return Some((y, v.clone()));
            }
        }
    }
    None
}

/// Both conditions for `Res` and `Ind` to be inverse equivalences.
pub fn equiv_rest(t: &AdmissibleTriple) -> Result<EquivRest> {
    let s = &t.target;
    let r = &t.source;
    let top = s.local_units().top();
    if let Some((y, v)) = generator_failure(t, &[top]) {
        return Ok(EquivRest {
            verdict: false,
            failure: Some(EquivFailure::Generator {
                y,
                unit: v.objects.into_iter().collect(),
            }),
        });
    }
    let n = t.x_set.size();
    for x in 0..n {
        for x2 in 0..n {
            let basis = shift_basis(r, &t.x_set, x, x2, None);
            let images: Vec<Vec<Scalar>> = basis.iter().map(|&(g, i)| t.rho_flat(&r.basis_element(g, i))).collect();
            let img = Subspace::from_vectors(s.field(), s.total_dim(), images.clone());
            if img.dim() != basis.len() {
                return Ok(EquivRest {
                    verdict: false,
                    failure: Some(EquivFailure::NotInjective { x, x2 }),
                });
            }
            let (ux, ux2) = (t.rho_unit(x), t.rho_unit(x2));
            let corner = shift_basis(s, &t.y_set, t.chi[x], t.chi[x2], None)
                .into_iter()
                .map(|(h, j)| s.mul(&s.mul(&ux, &s.basis_element(h, j)), &ux2))
                .collect::<Vec<_>>();
            let corner = Subspace::from_vectors(s.field(), s.total_dim(), corner);
            if corner != img {
                return Ok(EquivRest {
                    verdict: false,
                    failure: Some(EquivFailure::NotOnto { x, x2 }),
                });
            }
        }
    }
    Ok(EquivRest {
        verdict: true,
        failure: None,
    })
}

/// `Res^S_G`: `R = S_G`, `X = G`, `Y = H`, all maps the inclusions.
pub fn restriction_triple(s: &Arc<GradedRing>, sub: &Subgroupoid) -> Result<AdmissibleTriple> {
    let r = Arc::new(s.restrict(sub)?);
    let g = r.groupoid().clone();
    let x = Arc::new(regular_gset(g, Side::Right));
    let y = Arc::new(regular_gset(s.groupoid().clone(), Side::Right));
    inclusion_triple(s, r, sub, x, y, sub.embedding.clone())
}

fn inclusion_triple(
    s: &Arc<GradedRing>,
    r: Arc<GradedRing>,
    sub: &Subgroupoid,
    x: Arc<GSet>,
    y: Arc<GSet>,
    chi: Vec<usize>,
) -> Result<AdmissibleTriple> {
    let rho = sub.embedding.iter().map(|&a| Matrix::identity(s.field(), s.dim(a))).collect();
    validate_triple(r, s.clone(), x, y, rho, sub.embedding.clone(), chi)
}

/// `res^S_G`: `R = S_G` acting on `H_G = {h : d(h) ∈ G₀}` by right
/// multiplication, `Y = H`.
pub fn restriction_triple_hg(s: &Arc<GradedRing>, sub: &Subgroupoid) -> Result<AdmissibleTriple> {
    let h = s.groupoid().clone();
    let r = Arc::new(s.restrict(sub)?);
    let g = r.groupoid().clone();
    let hg: Vec<usize> = (0..h.size()).filter(|&k| sub.contains(h.d(k))).collect();
    let labels = hg.iter().map(|&k| h.label(k).to_string()).collect();
    let emb = sub.embedding.clone();
    let x = GSet::from_action(g, Side::Right, hg.len(), labels, |a, p| {
        h.mul(hg[p], emb[a]).map(|q| hg.iter().position(|&k| k == q).expect("H_G is closed"))
    })?;
    let y = Arc::new(regular_gset(h.clone(), Side::Right));
    inclusion_triple(s, r, sub, Arc::new(x), y, hg)
}

/// Identity ring and groupoid, `χ : X → X/∼` the quotient by a compatible partition.
pub fn quotient_triple(ring: &Arc<GradedRing>, gset: &Arc<GSet>, partition: &[usize]) -> Result<AdmissibleTriple> {
    let (y, chi) = crate::gset::quotient_gset(gset, partition)?;
    let g = ring.groupoid();
    let rho = (0..g.size()).map(|a| Matrix::identity(ring.field(), ring.dim(a))).collect();
    validate_triple(ring.clone(), ring.clone(), gset.clone(), Arc::new(y), rho, (0..g.size()).collect(), chi)
}

/// `X = G` onto the right cosets `K\G` of a wide subgroupoid.
pub fn coset_triple(ring: &Arc<GradedRing>, k: &Subgroupoid) -> Result<AdmissibleTriple> {
    let g = ring.groupoid().clone();
    let x = Arc::new(regular_gset(g.clone(), Side::Right));
    let (y, chi) = crate::gset::coset_gset(g.clone(), k, Side::Right)?;
    let rho = (0..g.size()).map(|a| Matrix::identity(ring.field(), ring.dim(a))).collect();
    validate_triple(ring.clone(), ring.clone(), x, Arc::new(y), rho, (0..g.size()).collect(), chi)
}

/// Collapses `X` to one point per component of the groupoid action: the
/// forgetful functor when `G` is connected.
pub fn forgetful_triple(ring: &Arc<GradedRing>, gset: &Arc<GSet>) -> Result<AdmissibleTriple> {
    let point = Arc::new(crate::gset::point_gset(ring.groupoid().clone(), Side::Right));
    let g = ring.groupoid();
    let rho = (0..g.size()).map(|a| Matrix::identity(ring.field(), ring.dim(a))).collect();
    validate_triple(
        ring.clone(),
        ring.clone(),
        gset.clone(),
        point,
        rho,
        (0..g.size()).collect(),
        vec![0; gset.size()],
    )
}

/// Verdicts of the subspace identities characterizing equivalences for the
/// classical triples, each compared with [`equiv_rest`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorChecks {
    /// First `h` with `S_{d(h)} ≠ Σ_{g∈G} S_{h⁻¹g} S_{g⁻¹h}`.
    pub sum_over_g: Option<usize>,
    /// When the previous identity holds, every `h` with `S_h ≠ 0` has both ends in `G₀`.
    pub ends_in_g: bool,
    /// `S_{d(g)} = S_{g⁻¹}S_g` for all `g`, first failure.
    pub strong_source: Option<usize>,
    /// `S_{t(g)} = S_g S_{g⁻¹}` for all `g`, first failure.
    pub strong_target: Option<usize>,
    pub strongly_graded: bool,
    /// First `h` with `S_{d(h)} ≠ Σ_{k ∈ H_G, t(k) = d(h)} S_k S_{k⁻¹}`.
    pub sum_over_hg: Option<usize>,
    /// First `h ∈ H_G` with `t(h) ∈ G₀`, `S_h ≠ 0` and `h ∉ G`.
    pub outside_g: Option<usize>,
    pub equiv_restriction: bool,
    pub equiv_objects: bool,
    pub equiv_hg: bool,
    /// Every identity agrees with the corresponding equivalence verdict.
    pub agree: bool,
}

fn products_span(s: &GradedRing, pairs: impl IntoIterator<Item = (usize, usize)>, target: usize) -> usize {
    let vecs: Vec<Vec<Scalar>> = pairs.into_iter().filter_map(|(a, b)| s.product_span(a, b)).flat_map(|sp| sp.basis_vectors().to_vec()).collect();
    Subspace::from_vectors(s.field(), s.dim(target), vecs).dim()
}

pub fn cor_checks(s: &Arc<GradedRing>, sub: &Subgroupoid) -> Result<CorChecks> {
    let h = s.groupoid().clone();
    let sum_over_g = (0..h.size()).find(|&k| {
        let pairs = sub.embedding.iter().filter_map(|&g| Some((h.mul(h.inv(k), g)?, h.mul(h.inv(g), k)?)));
        products_span(s, pairs.collect::<Vec<_>>(), h.d(k)) != s.dim(h.d(k))
    });
    let ends_in_g = sum_over_g.is_some()
        || (0..h.size()).all(|k| s.dim(k) == 0 || (sub.contains(h.d(k)) && sub.contains(h.t(k))));
    let strong_source = s.strong_grading_failure();
    let strong_target = s.strong_grading_failure_target();
    let strongly_graded = s.is_strongly_graded_all_pairs();
    let in_hg = |k: usize| sub.contains(h.d(k));
    let sum_over_hg = (0..h.size()).find(|&k| {
        let d = h.d(k);
        let pairs = (0..h.size()).filter(|&m| in_hg(m) && h.t(m) == d).map(|m| (m, h.inv(m)));
        products_span(s, pairs.collect::<Vec<_>>(), d) != s.dim(d)
    });
    let outside_g = (0..h.size()).find(|&k| in_hg(k) && sub.contains(h.t(k)) && s.dim(k) > 0 && !sub.contains(k));
    let equiv_restriction = equiv_rest(&restriction_triple(s, sub)?)?.verdict;
    let objects = h.objects_subgroupoid();
    let equiv_objects = equiv_rest(&restriction_triple(s, &objects)?)?.verdict;
    let equiv_hg = equiv_rest(&restriction_triple_hg(s, sub)?)?.verdict;
    let agree = equiv_restriction == sum_over_g.is_none()
        && ends_in_g
        && equiv_objects == strong_source.is_none()
        && strong_source.is_none() == strong_target.is_none()
        && strong_source.is_none() == strongly_graded
        && equiv_hg == (sum_over_hg.is_none() && outside_g.is_none());
    Ok(CorChecks {
        sum_over_g,
        ends_in_g,
        strong_source,
        strong_target,
        strongly_graded,
        sum_over_hg,
        outside_g,
        equiv_restriction,
        equiv_objects,
        equiv_hg,
        agree,
    })
}

/// `Res(Ind(M)) ≅ M` and `Ind(Res(N)) ≅ N`, by search in the hom spaces.
pub fn round_trips(t: &AdmissibleTriple, m: &Arc<Bimodule>, n: &Arc<Bimodule>, seed: u64) -> Result<(bool, bool)> {
    let im = ind(t, m)?.module;
    let rim = res(t, &im)?.module;
    let rim = Arc::new(rim.with_gradings(m.left().clone(), m.right().clone())?);
    let first = find_isomorphism(&rim, m, seed)?.is_some();
    let rn = res(t, n)?.module;
    let irn = ind(t, &rn)?.module;
    let irn = Arc::new(irn.with_gradings(n.left().clone(), n.right().clone())?);
    let second = find_isomorphism(&irn, n, seed)?.is_some();
    Ok((first, second))
}

/// `Ind(M) ≅ M ⊗̂ P`.
pub fn ind_is_tensor(t: &AdmissibleTriple, m: &Arc<Bimodule>, seed: u64) -> Result<bool> {
    let p = build_p(t)?;
    let a = ind(t, m)?.module;
    let b = hotimes(m, &p)?.module;
    let b = Arc::new(b.with_gradings(a.left().clone(), a.right().clone())?);
    Ok(find_isomorphism(&a, &b, seed)?.is_some())
}

#[cfg(test)]
mod tests;
