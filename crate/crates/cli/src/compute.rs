use std::sync::Arc;

use ggr_core::change::{build_p, ind, res};
use ggr_core::functors::{dual_bimodule, e_ring, end_ring, hom_functor, hotimes, s_x_r};
use ggr_core::gmod::{r_hat, shift_right};
use ggr_core::gset::GSet;
use ggr_core::io::{Object, Workspace, Writer, SCHEMA_VERSION};
use serde_json::json;

use crate::checks::{dims_of, err, module, ring};
use crate::report::{Failure, Outcome, Run};
use crate::ComputeArgs;

fn gset(ws: &mut Workspace, r: &str) -> Result<Arc<GSet>, Failure> {
    match ws.resolve(r)? {
        Object::GSet(x) => Ok(x),
        o => Err(err(format!("{r} is a {}, expected a G-set", o.kind()))),
    }
}

fn triple(ws: &mut Workspace, r: &str) -> Result<Arc<ggr_core::change::AdmissibleTriple>, Failure> {
    match ws.resolve(r)? {
        Object::Triple(t) => Ok(t),
        o => Err(err(format!("{r} is a {}, expected a triple", o.kind()))),
    }
}

fn point(x: &GSet, s: &str) -> Result<usize, Failure> {
    x.point_by_label(s)
        .or_else(|| s.parse().ok().filter(|&i: &usize| i < x.size()))
        .ok_or_else(|| err(format!("no point {s:?}")))
}

pub fn run(ws: &mut Workspace, a: &ComputeArgs) -> Run {
    let r = &a.refs;
    let need = |n: usize| -> Result<(), Failure> {
        if r.len() < n {
            Err(err(format!("{} needs {n} references", a.functor)))
        } else {
            Ok(())
        }
    };
    let result = match a.functor.as_str() {
        "ind" => {
            need(2)?;
            let t = triple(ws, &r[0])?;
            Object::Module(ind(&t, &module(ws, &r[1])?)?.module)
        }
        "res" => {
            need(2)?;
            let t = triple(ws, &r[0])?;
            Object::Module(res(&t, &module(ws, &r[1])?)?.module)
        }
        "hotimes" => {
            need(2)?;
            let (m, p) = (module(ws, &r[0])?, module(ws, &r[1])?);
            Object::Module(hotimes(&m, &p)?.module)
        }
        "hom" => {
            need(2)?;
            let (p, n) = (module(ws, &r[0])?, module(ws, &r[1])?);
            Object::Module(hom_functor(&p, &n)?.module)
        }
        "end" => {
            need(1)?;
            Object::Ring(end_ring(&module(ws, &r[0])?)?.ring)
        }
        "e-ring" => {
            need(1)?;
            Object::Ring(e_ring(&module(ws, &r[0])?)?.ring)
        }
        "sxr" => {
            need(2)?;
            let (rg, x) = (ring(ws, &r[0])?, gset(ws, &r[1])?);
            Object::Ring(Arc::new(s_x_r(&rg, &x)?))
        }
        "shift" => {
            need(3)?;
            let (rg, x) = (ring(ws, &r[0])?, gset(ws, &r[1])?);
            let p = point(&x, &r[2])?;
            Object::Module(Arc::new(shift_right(&rg, &x, p, None)?))
        }
        "rhat" => {
            need(2)?;
            let (rg, x) = (ring(ws, &r[0])?, gset(ws, &r[1])?);
            Object::Module(Arc::new(r_hat(&rg, &x)?))
        }
        "build-p" => {
            need(1)?;
            Object::Module(build_p(&*triple(ws, &r[0])?)?)
        }
        "dual" => {
            need(1)?;
            Object::Module(dual_bimodule(&module(ws, &r[0])?)?)
        }
        other => return Err(err(format!("unknown functor {other:?}"))),
    };
    let mut w = Writer::new();
    w.object(&result, Some("result"));
    std::fs::write(&a.out, w.render()).map_err(|e| err(format!("cannot write {}: {e}", a.out.display())))?;
    Ok(Outcome {
        report: json!({
            "schema_version": SCHEMA_VERSION,
            "command": "compute",
            "functor": a.functor,
            "output": a.out.display().to_string(),
            "kind": result.kind(),
            "dims": dims_of(&result),
        }),
        verdict: true,
    })
}
