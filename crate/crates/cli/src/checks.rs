use std::path::Path;
use std::sync::Arc;

use ggr_core::change::{cor_checks, equiv_rest, res_ind_adjunction, EquivFailure};
use ggr_core::exactla::Scalar;
use ggr_core::functors::{
    adjunction_maps, dual_bimodule, end_ring, gr_equiv_mod_sxr, menini_module, menini_nastasescu, morita_check,
    morita_criteria, CriteriaFailure,
};
use ggr_core::gmod::Bimodule;
use ggr_core::gring::GradedRing;
use ggr_core::gset::{regular_gset, Side};
use ggr_core::io::{Object, Workspace, SCHEMA_VERSION};
use ggr_core::sample::Sampler;
use ggr_core::structure::{subgroupoid, Groupoid};
use serde_json::{json, Value};

use crate::report::{verdict, Failure, Outcome, Run};
use crate::CheckArgs;

pub fn validate(ws: &mut Workspace, file: &Path) -> Run {
    let ids = ws.load_file(file)?;
    let mut objects = Vec::new();
    for id in &ids {
        let o = ws.resolve(&format!("{}#{id}", file.display())).map_err(|e| match Failure::from(e) {
            Failure::Axiom(mut r) => {
                r["object"] = json!(id);
                Failure::Axiom(r)
            }
            other => other,
        })?;
        objects.push(json!({"id": id, "kind": o.kind(), "dims": dims_of(&o)}));
    }
    Ok(Outcome {
        report: json!({"schema_version": SCHEMA_VERSION, "command": "validate", "verdict": true, "objects": objects}),
        verdict: true,
    })
}

pub fn dims_of(o: &Object) -> Value {
    match o {
        Object::Groupoid(g) => json!(g.size()),
        Object::GSet(x) => json!(x.size()),
        Object::Ring(r) => json!(r.dims()),
        Object::Module(m) => json!(m.dims()),
        Object::Triple(t) => json!([t.source.total_dim(), t.target.total_dim()]),
    }
}

pub fn err(msg: impl Into<String>) -> Failure {
    Failure::Error(msg.into())
}

fn arg<'a>(refs: &'a [String], i: usize, what: &str) -> Result<&'a str, Failure> {
    refs.get(i).map(String::as_str).ok_or_else(|| err(format!("missing argument: {what}")))
}

pub fn ring(ws: &mut Workspace, r: &str) -> Result<Arc<GradedRing>, Failure> {
    match ws.resolve(r)? {
        Object::Ring(x) => Ok(x),
        o => Err(err(format!("{r} is a {}, expected a ring", o.kind()))),
    }
}

pub fn module(ws: &mut Workspace, r: &str) -> Result<Arc<Bimodule>, Failure> {
    match ws.resolve(r)? {
        Object::Module(x) => Ok(x),
        o => Err(err(format!("{r} is a {}, expected a module", o.kind()))),
    }
}

/// Elements named by label or index.
pub fn elements(g: &Groupoid, list: &str) -> Result<Vec<usize>, Failure> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            g.element_by_label(s)
                .or_else(|| s.parse().ok().filter(|&i: &usize| i < g.size()))
                .ok_or_else(|| err(format!("no element {s:?}")))
        })
        .collect()
}

fn labels(g: &Groupoid, xs: &[usize]) -> Value {
    json!(xs.iter().map(|&x| g.label(x)).collect::<Vec<_>>())
}

pub fn run(ws: &mut Workspace, a: &CheckArgs) -> Run {
    let refs = &a.refs;
    match a.name.as_str() {
        "strongly-graded" => {
            let r = ring(ws, arg(refs, 0, "ring")?)?;
            let g = r.groupoid();
            let fail = r.strong_grading_failure();
            let witness = fail.map_or(Value::Null, |k| json!({"degree": g.label(k), "index": k}));
            let details = json!({
                "dims": r.dims(),
                "all_pairs": r.is_strongly_graded_all_pairs(),
                "target_failure": r.strong_grading_failure_target().map(|k| g.label(k)),
            });
            Ok(verdict("strongly-graded", fail.is_none(), witness, details))
        }
        "morita" => {
            let p = module(ws, arg(refs, 0, "P")?)?;
            let q = match refs.get(1) {
                Some(r) => module(ws, r)?,
                None => dual_bimodule(&p)?,
            };
            let m = morita_check(&p, &q, a.seed)?;
            let witness = match &m.witnesses {
                Some((f, g)) => json!({
                    "pq_to_r": f.blocks.iter().map(ggr_core::io::matrix_json).collect::<Vec<_>>(),
                    "qp_to_s": g.blocks.iter().map(ggr_core::io::matrix_json).collect::<Vec<_>>(),
                }),
                None => Value::Null,
            };
            let details = json!({"dims_pq": m.dims_pq, "dims_r": m.dims_r, "dims_qp": m.dims_qp, "dims_s": m.dims_s});
            Ok(verdict("morita", m.verdict, witness, details))
        }
        "morita-criteria" => {
            let p = module(ws, arg(refs, 0, "P")?)?;
            let c = morita_criteria(&p)?;
            let witness = match c.failure {
                Some(CriteriaFailure::Lambda { component }) => json!({"lambda_not_bijective": component}),
                Some(CriteriaFailure::Generator { y }) => json!({"not_a_generator_at": y}),
                Some(CriteriaFailure::Projective { x }) => json!({"row_not_projective": x}),
                None => Value::Null,
            };
            Ok(verdict("morita-criteria", c.verdict, witness, json!({"lambda_dims": c.lambda_dims})))
        }
        "equiv-rest" => {
            let t = match ws.resolve(arg(refs, 0, "triple")?)? {
                Object::Triple(t) => t,
                o => return Err(err(format!("expected a triple, got a {}", o.kind()))),
            };
            let v = equiv_rest(&t)?;
            let witness = match v.failure {
                Some(EquivFailure::Generator { y, unit }) => {
                    json!({"condition": "generator", "y": t.y_set.label(y), "unit": labels(t.target.groupoid(), &unit)})
                }
                Some(EquivFailure::NotInjective { x, x2 }) => {
                    json!({"condition": "injective", "x": t.x_set.label(x), "x2": t.x_set.label(x2)})
                }
                Some(EquivFailure::NotOnto { x, x2 }) => {
                    json!({"condition": "onto", "x": t.x_set.label(x), "x2": t.x_set.label(x2)})
                }
                None => Value::Null,
            };
            Ok(verdict("equiv-rest", v.verdict, witness, json!({"x": t.x_set.size(), "y": t.y_set.size()})))
        }
        "menini-nastasescu" => {
            let r = ring(ws, arg(refs, 0, "ring")?)?;
            let g = r.groupoid().clone();
            let u = unit(&r, a)?;
            let f = elements(&g, a.degrees.as_deref().ok_or_else(|| err("--degrees is required"))?)?;
            let fail = menini_nastasescu(&r, &u, &f)?;
            let mut details = json!({"degrees": labels(&g, &f)});
            if fail.is_none() {
                let x = Arc::new(regular_gset(g.clone(), Side::Right));
                let q = menini_module(&r, &x, &u, &f)?;
                let end = end_ring(&q)?;
                details["end_strongly_graded"] = json!(end.ring.is_strongly_graded());
                details["end_dims"] = json!(end.ring.dims());
            }
            let witness = fail.map_or(Value::Null, |k| json!({"degree": g.label(k)}));
            Ok(verdict("menini-nastasescu", fail.is_none(), witness, details))
        }
        "restrict-subgroupoid" | "restrict-identities" | "restrict-hg" => {
            let s = ring(ws, arg(refs, 0, "ring")?)?;
            let h = s.groupoid().clone();
            let sub = match &a.sub {
                Some(list) => subgroupoid(&h, &elements(&h, list)?)?,
                None => h.objects_subgroupoid(),
            };
            let c = cor_checks(&s, &sub)?;
            let label = |k: Option<usize>| k.map_or(Value::Null, |k| json!(h.label(k)));
            let (ok, witness, equiv) = match a.name.as_str() {
                "restrict-subgroupoid" => (c.sum_over_g.is_none(), json!({"h": label(c.sum_over_g)}), c.equiv_restriction),
                "restrict-identities" => (
                    c.strong_source.is_none(),
                    json!({"source_form": label(c.strong_source), "target_form": label(c.strong_target)}),
                    c.equiv_objects,
                ),
                _ => (
                    c.sum_over_hg.is_none() && c.outside_g.is_none(),
                    json!({"sum": label(c.sum_over_hg), "outside": label(c.outside_g)}),
                    c.equiv_hg,
                ),
            };
            let details = json!({
                "subgroupoid": labels(&h, &sub.embedding),
                "equiv_rest": equiv,
                "ends_in_subgroupoid": c.ends_in_g,
                "strongly_graded": c.strongly_graded,
                "all_agree": c.agree,
            });
            Ok(verdict(&a.name, ok, witness, details))
        }
        "gr-equiv-sxr" => {
            let r = ring(ws, arg(refs, 0, "ring")?)?;
            let x = match ws.resolve(arg(refs, 1, "gset")?)? {
                Object::GSet(x) => x,
                o => return Err(err(format!("expected a G-set, got a {}", o.kind()))),
            };
            let mut s = Sampler::new(a.seed, r.field());
            let samples = (0..a.samples)
                .map(|_| Ok((s.module(&r, &x)?, s.module(&r, &x)?)))
                .collect::<ggr_core::Result<Vec<_>>>()?;
            let rep = gr_equiv_mod_sxr(&r, &x, &samples, a.seed)?;
            let witness = rep
                .pairs
                .iter()
                .position(|p| p.graded != p.functor || !p.additive)
                .map_or(Value::Null, |i| json!({"sample": i}));
            let details = json!({
                "hom_dims": rep.pairs.iter().map(|p| [p.graded, p.functor]).collect::<Vec<_>>(),
                "rows": rep.rows,
            });
            Ok(verdict("gr-equiv-sxr", rep.verdict, witness, details))
        }
        "adjunction" => {
            let first = ws.resolve(arg(refs, 0, "first object")?)?;
            let m = module(ws, arg(refs, 1, "module")?)?;
            let n = module(ws, arg(refs, 2, "module")?)?;
            let (dims, result) = match first {
                Object::Triple(t) => match res_ind_adjunction(&t, &m, &n) {
                    Ok(adj) => ((adj.ind_space.dim(), adj.res_space.dim()), Ok(())),
                    Err(e) => ((0, 0), Err(e)),
                },
                Object::Module(p) => {
                    // adjunction <P> <M> <N>: Hom(M ⊗̂ P, N) ≅ Hom(M, H(P, N))
                    match adjunction_maps(&m, &p, &n) {
                        Ok(adj) => ((adj.left_space.dim(), adj.right_space.dim()), Ok(())),
                        Err(e) => ((0, 0), Err(e)),
                    }
                }
                o => return Err(err(format!("adjunction needs a triple or a bimodule first, got a {}", o.kind()))),
            };
            match result {
                Ok(()) => Ok(verdict("adjunction", true, Value::Null, json!({"hom_dims": [dims.0, dims.1]}))),
                Err(e) if e.to_string().contains("inverse") => {
                    Ok(verdict("adjunction", false, json!({"message": e.to_string()}), Value::Null))
                }
                Err(e) => Err(e.into()),
            }
        }
        other => Err(err(format!("unknown check {other:?}"))),
    }
}

fn unit(r: &GradedRing, a: &CheckArgs) -> Result<Vec<Scalar>, Failure> {
    if let Some(list) = &a.unit_objects {
        let g = r.groupoid();
        let units = r.local_units();
        let mut u = r.zero_element();
        for e in elements(g, list)? {
            if !g.is_object(e) {
                return Err(err(format!("{} is not an object", g.label(e))));
            }
            u = r.add(&u, &units.identity_element(e));
        }
        return Ok(u);
    }
    let text = a.unit.as_deref().ok_or_else(|| err("--unit or --unit-objects is required"))?;
    let u = text
        .split(',')
        .map(|s| r.field().parse(s))
        .collect::<ggr_core::Result<Vec<_>>>()?;
    if u.len() != r.total_dim() {
        return Err(err(format!("--unit needs {} coordinates", r.total_dim())));
    }
    Ok(u)
}
