//! Finite G-sets: sets with a partial groupoid action.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structure::{Groupoid, Subgroupoid};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A finite set `X` with a partial action of a groupoid.
///
/// Right action: `x·g` is defined exactly when `x ∈ X_{t(g)}`. Left action:
/// `g·x` is defined exactly when `x ∈ X_{d(g)}`. Either side can be read as
/// the other through `g·x = x·g⁻¹`, so the components `X_e` do not depend on
/// the side.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GSet {
    groupoid: Arc<Groupoid>,
    side: Side,
    size: usize,
    act: Vec<Option<usize>>,
    components: Vec<Vec<bool>>,
    labels: Vec<String>,
}

/// Checks the G-set axioms for a raw action table `act[g][x]` and components
/// given per object (in the order of `groupoid.objects()`).
pub fn validate_gset(
    groupoid: Arc<Groupoid>,
    side: Side,
    size: usize,
    act: Vec<Vec<Option<usize>>>,
    components: Vec<Vec<usize>>,
    labels: Vec<String>,
) -> Result<GSet> {
    let g = &groupoid;
    if act.len() != g.size() {
        return Err(Error::dimension(format!("action table has {} rows, expected {}", act.len(), g.size())));
    }
    if components.len() != g.objects().len() {
        return Err(Error::dimension(format!(
            "{} component lists for {} objects",
            components.len(),
            g.objects().len()
        )));
    }
    if labels.len() != size {
        return Err(Error::dimension(format!("{} labels for {size} points", labels.len())));
    }
    let mut flat = Vec::with_capacity(g.size() * size);
    for (a, row) in act.iter().enumerate() {
        if row.len() != size {
            return Err(Error::dimension(format!("action row {a} has {} entries, expected {size}", row.len())));
        }
        for &v in row {
            if v.is_some_and(|y| y >= size) {
                return Err(Error::invalid(format!("action entry out of range in row {a}")));
            }
            flat.push(v);
        }
    }
    let mut comp = vec![vec![false; size]; components.len()];
    for (i, list) in components.iter().enumerate() {
        for &x in list {
            if x >= size {
                return Err(Error::invalid(format!("component entry {x} out of range")));
            }
            comp[i][x] = true;
        }
    }
    let set = GSet {
        groupoid,
        side,
        size,
        act: flat,
        components: comp,
        labels,
    };
    set.check_axioms()?;
    Ok(set)
}

impl GSet {
    fn check_axioms(&self) -> Result<()> {
        let g = &*self.groupoid;
        let lab = |x: usize| self.labels[x].clone();
        for x in 0..self.size {
            if !g.objects().iter().any(|&e| self.in_component(x, e)) {
                return Err(Error::axiom("components", format!("point {} lies in no component", lab(x)), vec![x]));
            }
        }
        // domain(g) and codomain(g) of the partial bijection x ↦ g acting on x.
        let (dom, cod): (fn(&Groupoid, usize) -> usize, fn(&Groupoid, usize) -> usize) = match self.side {
            Side::Right => (Groupoid::t, Groupoid::d),
            Side::Left => (Groupoid::d, Groupoid::t),
        };
        for a in 0..g.size() {
            for x in 0..self.size {
                let v = self.raw(a, x);
                let inside = self.in_component(x, dom(g, a));
                match (v, inside) {
                    (Some(_), false) => {
                        return Err(Error::axiom(
                            "domain",
                            format!("{} acts on {} outside its domain", g.label(a), lab(x)),
                            vec![a, x],
                        ))
                    }
                    (None, true) => {
                        return Err(Error::axiom(
                            "domain",
                            format!("{} does not act on {} inside its domain", g.label(a), lab(x)),
                            vec![a, x],
                        ))
                    }
                    (Some(y), true) => {
                        if !self.in_component(y, cod(g, a)) {
                            return Err(Error::axiom(
                                "codomain",
                                format!("{} sends {} outside its codomain", g.label(a), lab(x)),
                                vec![a, x],
                            ));
                        }
                    }
                    (None, false) => {}
                }
            }
        }
        for &e in g.objects() {
            for x in 0..self.size {
                if self.in_component(x, e) && self.raw(e, x) != Some(x) {
                    return Err(Error::axiom(
                        "identity",
                        format!("identity {} moves {}", g.label(e), lab(x)),
                        vec![e, x],
                    ));
                }
            }
        }
        for a in 0..g.size() {
            for b in 0..g.size() {
                // acting by a then by b equals acting by the composite
                let composite = match self.side {
                    Side::Right => g.mul(a, b),
                    Side::Left => g.mul(b, a),
                };
                let Some(c) = composite else { continue };
                for x in 0..self.size {
                    let Some(y) = self.raw(a, x) else { continue };
                    if self.raw(b, y) != self.raw(c, x) {
                        return Err(Error::axiom(
                            "compatibility",
                            format!("acting by {} then {} differs from acting by their product on {}", g.label(a), g.label(b), lab(x)),
                            vec![a, b, x],
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds a G-set from an action function, deriving the components from
    /// where the identities act.
    pub fn from_action<F>(groupoid: Arc<Groupoid>, side: Side, size: usize, labels: Vec<String>, f: F) -> Result<GSet>
    where
        F: Fn(usize, usize) -> Option<usize>,
    {
        let act: Vec<Vec<Option<usize>>> = (0..groupoid.size()).map(|a| (0..size).map(|x| f(a, x)).collect()).collect();
        let components = groupoid
            .objects()
            .iter()
            .map(|&e| (0..size).filter(|&x| act[e][x].is_some()).collect())
            .collect();
        validate_gset(groupoid, side, size, act, components, labels)
    }

    pub fn groupoid(&self) -> &Arc<Groupoid> {
        &self.groupoid
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn point_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The stored table entry for `g` on `x`, on this set's own side.
    pub fn raw(&self, g: usize, x: usize) -> Option<usize> {
        self.act[g * self.size + x]
    }

    /// `x·g`, reading a left action through `x·g = g⁻¹·x`.
    pub fn right(&self, x: usize, g: usize) -> Option<usize> {
        match self.side {
            Side::Right => self.raw(g, x),
            Side::Left => self.raw(self.groupoid.inv(g), x),
        }
    }

    /// `g·x`, reading a right action through `g·x = x·g⁻¹`.
    pub fn left(&self, g: usize, x: usize) -> Option<usize> {
        match self.side {
            Side::Left => self.raw(g, x),
            Side::Right => self.raw(self.groupoid.inv(g), x),
        }
    }

    /// Whether `x ∈ X_e` for the identity `e`.
    pub fn in_component(&self, x: usize, e: usize) -> bool {
        match self.groupoid.object_position(e) {
            Some(i) => self.components[i][x],
            None => false,
        }
    }

    /// `E_x`, the identities whose component contains `x`.
    pub fn e_set(&self, x: usize) -> Vec<usize> {
        self.groupoid.objects().iter().copied().filter(|&e| self.in_component(x, e)).collect()
    }

    /// `X_e` as a sorted list.
    pub fn component(&self, e: usize) -> Vec<usize> {
        (0..self.size).filter(|&x| self.in_component(x, e)).collect()
    }

    /// Components listed per object, in the order of `groupoid.objects()`.
    pub fn component_lists(&self) -> Vec<Vec<usize>> {
        self.groupoid.objects().iter().map(|&e| self.component(e)).collect()
    }

    pub fn table(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.groupoid.size()).map(|a| (0..self.size).map(|x| self.raw(a, x)).collect()).collect()
    }

    /// The same action written on the other side.
    pub fn side_swap(&self) -> GSet {
        let g = &self.groupoid;
        let act = (0..g.size()).flat_map(|a| (0..self.size).map(move |x| (a, x))).map(|(a, x)| self.raw(g.inv(a), x)).collect();
        GSet {
            groupoid: self.groupoid.clone(),
            side: self.side.opposite(),
            size: self.size,
            act,
            components: self.components.clone(),
            labels: self.labels.clone(),
        }
    }

    /// The same set acting on the requested side.
    pub fn on_side(&self, side: Side) -> GSet {
        if side == self.side {
            self.clone()
        } else {
            self.side_swap()
        }
    }
}

/// One point on which every element acts; `E_x = G₀`.
pub fn point_gset(groupoid: Arc<Groupoid>, side: Side) -> GSet {
    GSet::from_action(groupoid, side, 1, vec!["*".into()], |_, _| Some(0)).expect("the one-point G-set is valid")
}

/// `X = G` acting by multiplication. Right: `x·g = xg`, `E_x = {d(x)}`.
/// Left: `g·x = gx`, `E_x = {t(x)}`.
pub fn regular_gset(groupoid: Arc<Groupoid>, side: Side) -> GSet {
    let g = groupoid.clone();
    let labels = g.labels().to_vec();
    GSet::from_action(groupoid, side, g.size(), labels, |a, x| match side {
        Side::Right => g.mul(x, a),
        Side::Left => g.mul(a, x),
    })
    .expect("regular actions are valid")
}

/// `X = G₀` with `g·d(g) = t(g)`, written on the requested side.
pub fn objects_gset(groupoid: Arc<Groupoid>, side: Side) -> GSet {
    let g = groupoid.clone();
    let objs = g.objects().to_vec();
    let labels = objs.iter().map(|&e| g.label(e).to_string()).collect();
    let pos = |e: usize| objs.iter().position(|&o| o == e);
    let left = GSet::from_action(groupoid, Side::Left, objs.len(), labels, |a, i| {
        if objs[i] == g.d(a) {
            pos(g.t(a))
        } else {
            None
        }
    })
    .expect("the object action is valid");
    left.on_side(side)
}

/// Left cosets `G/H` (left action `g·(kH) = (gk)H`) or, for `Side::Right`,
/// right cosets `H\G` with `(Hk)·g = H(kg)`. `H` must be wide.
pub fn coset_gset(groupoid: Arc<Groupoid>, h: &Subgroupoid, side: Side) -> Result<(GSet, Vec<usize>)> {
    if !h.wide {
        return Err(Error::invalid("cosets need a wide subgroupoid"));
    }
    let g = groupoid.clone();
    let n = g.size();
    // class of k: left coset kH = {kh}, right coset Hk = {hk}
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for k in 0..n {
        if class[k] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(k);
        for &m in &h.embedding {
            let prod = match side {
                Side::Left => g.mul(k, m),
                Side::Right => g.mul(m, k),
            };
            if let Some(p) = prod {
                class[p] = c;
            }
        }
    }
    let labels = reps
        .iter()
        .map(|&k| match side {
            Side::Left => format!("{}H", g.label(k)),
            Side::Right => format!("H{}", g.label(k)),
        })
        .collect();
    let set = GSet::from_action(groupoid, side, reps.len(), labels, |a, c| {
        let k = reps[c];
        let prod = match side {
            Side::Left => g.mul(a, k),
            Side::Right => g.mul(k, a),
        };
        prod.map(|p| class[p])
    })?;
    Ok((set, class))
}

/// Quotient by a compatible partition given as class indices; returns the
/// quotient and the class map `χ` (classes renumbered by first occurrence).
pub fn quotient_gset(x: &GSet, partition: &[usize]) -> Result<(GSet, Vec<usize>)> {
    if partition.len() != x.size() {
        return Err(Error::dimension(format!("partition has {} entries for {} points", partition.len(), x.size())));
    }
    let mut renumber: Vec<(usize, usize)> = Vec::new();
    let mut chi = Vec::with_capacity(x.size());
    for &c in partition {
        let idx = match renumber.iter().find(|(old, _)| *old == c) {
            Some(&(_, i)) => i,
            None => {
                let i = renumber.len();
                renumber.push((c, i));
                i
            }
        };
        chi.push(idx);
    }
    let classes = renumber.len();
    let g = x.groupoid().clone();
    // compatibility: same class and both acted on by a ⇒ images in the same class
    for a in 0..g.size() {
        for p in 0..x.size() {
            for q in 0..x.size() {
                if chi[p] != chi[q] {
                    continue;
                }
                if let (Some(pa), Some(qa)) = (x.raw(a, p), x.raw(a, q)) {
                    if chi[pa] != chi[qa] {
                        return Err(Error::axiom(
                            "compatibility",
                            format!("{} separates {} and {}", g.label(a), x.label(p), x.label(q)),
                            vec![a, p, q],
                        ));
                    }
                }
            }
        }
    }
    let mut act = vec![vec![None; classes]; g.size()];
    for a in 0..g.size() {
        for p in 0..x.size() {
            if let Some(pa) = x.raw(a, p) {
                act[a][chi[p]] = Some(chi[pa]);
            }
        }
    }
    let components = g
        .objects()
        .iter()
        .map(|&e| {
            let mut v: Vec<usize> = x.component(e).into_iter().map(|p| chi[p]).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    let labels = (0..classes)
        .map(|c| {
            let members: Vec<&str> = (0..x.size()).filter(|&p| chi[p] == c).map(|p| x.label(p)).collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    let y = validate_gset(g, x.side(), classes, act, components, labels)?;
    Ok((y, chi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{cyclic_group, pair_groupoid, pair_index, subgroupoid, trivial_groupoid};

    #[test]
    fn point_gset_sees_every_object() {
        let g = Arc::new(pair_groupoid(2).unwrap());
        let p = point_gset(g.clone(), Side::Right);
        assert_eq!(p.e_set(0), g.objects().to_vec());
    }

    #[test]
    fn right_regular_components_are_source_fibres() {
        let g = Arc::new(pair_groupoid(2).unwrap());
        let x = regular_gset(g.clone(), Side::Right);
        for i in 1..=2 {
            let e = pair_index(2, i, i);
            let expected: Vec<usize> = (1..=2).map(|j| pair_index(2, j, i)).collect();
            let mut comp = x.component(e);
            comp.sort();
            let mut exp = expected.clone();
            exp.sort();
            assert_eq!(comp, exp);
        }
        for a in 0..g.size() {
            assert_eq!(x.e_set(a), vec![g.d(a)]);
        }
        assert_eq!(regular_gset(Arc::new(trivial_groupoid()), Side::Right).size(), 1);
        let z3 = Arc::new(cyclic_group(3).unwrap());
        let r = regular_gset(z3, Side::Right);
        assert_eq!(r.right(1, 2), Some(0));
    }

    #[test]
    fn broken_compatibility_is_rejected() {
        let z2 = Arc::new(cyclic_group(2).unwrap());
        // 1 acts as the identity on a two-point set, but 0 swaps: identity axiom fails
        let act = vec![vec![Some(1), Some(0)], vec![Some(0), Some(1)]];
        let err = validate_gset(z2.clone(), Side::Right, 2, act, vec![vec![0, 1]], vec!["a".into(), "b".into()]);
        assert!(err.is_err());
        // on Z/3, 1 acts as a swap of order two: (x·1)·1 ≠ x·2
        let z3 = Arc::new(cyclic_group(3).unwrap());
        let act = vec![
            vec![Some(0), Some(1)],
            vec![Some(1), Some(0)],
            vec![Some(1), Some(0)],
        ];
        let err = validate_gset(z3, Side::Right, 2, act, vec![vec![0, 1]], vec!["a".into(), "b".into()]).unwrap_err();
        assert_eq!(err.violation().unwrap().axiom, "compatibility");
    }

    #[test]
    fn cosets() {
        let g = Arc::new(pair_groupoid(2).unwrap());
        let whole = subgroupoid(&g, &(0..4).collect::<Vec<_>>()).unwrap();
        let (c, _) = coset_gset(g.clone(), &whole, Side::Left).unwrap();
        assert_eq!(c.size(), 2);
        let objs = g.objects_subgroupoid();
        let (c, _) = coset_gset(g.clone(), &objs, Side::Left).unwrap();
        assert_eq!(c.size(), 4);

        let g3 = Arc::new(pair_groupoid(3).unwrap());
        let p = |i, j| pair_index(3, i, j);
        let h = subgroupoid(&g3, &[p(1, 1), p(1, 2), p(2, 1), p(2, 2), p(3, 3)]).unwrap();
        let (c, _) = coset_gset(g3.clone(), &h, Side::Left).unwrap();
        // kH is determined by t(k) and by whether d(k) is in {1,2} or {3}
        assert_eq!(c.size(), 6);
        let non_wide = subgroupoid(&g3, &[p(1, 1)]).unwrap();
        assert!(coset_gset(g3, &non_wide, Side::Left).is_err());
    }

    #[test]
    fn object_action() {
        let g = Arc::new(pair_groupoid(2).unwrap());
        let x = objects_gset(g.clone(), Side::Left);
        assert_eq!(x.size(), 2);
        // (1,2)·(2,2) = (1,1)
        assert_eq!(x.left(pair_index(2, 1, 2), 1), Some(0));
        let y = x.side_swap();
        assert_eq!(y.right(0, pair_index(2, 1, 2)), Some(1));
        assert_eq!(objects_gset(Arc::new(trivial_groupoid()), Side::Left).size(), 1);
    }

    #[test]
    fn quotients() {
        let g = Arc::new(pair_groupoid(2).unwrap());
        let x = regular_gset(g.clone(), Side::Right);
        let (y, chi) = quotient_gset(&x, &[0, 1, 2, 3]).unwrap();
        assert_eq!(y.size(), 4);
        assert_eq!(chi, vec![0, 1, 2, 3]);
        let p = point_gset(g.clone(), Side::Right);
        let (y, _) = quotient_gset(&p, &[7]).unwrap();
        assert_eq!(y.size(), 1);
        // x ~ x' iff same target: the classes of H\G for H = G
        let part: Vec<usize> = (0..4).map(|a| g.t(a)).collect();
        let (y, chi) = quotient_gset(&x, &part).unwrap();
        assert_eq!(y.size(), 2);
        for a in 0..4 {
            for b in 0..4 {
                if let Some(ab) = x.right(a, b) {
                    assert_eq!(Some(chi[ab]), y.right(chi[a], b));
                }
            }
        }
        let z3 = Arc::new(cyclic_group(3).unwrap());
        let r = regular_gset(z3, Side::Right);
        assert!(quotient_gset(&r, &[0, 0, 1]).is_err());
    }

    #[test]
    fn swap_twice_is_identity() {
        let g = Arc::new(pair_groupoid(3).unwrap());
        let x = regular_gset(g, Side::Left);
        assert_eq!(x.side_swap().side_swap(), x);
        let r = x.side_swap();
        for a in 0..9 {
            // swapping keeps components: left-regular E_x = {t(x)}
            assert_eq!(r.e_set(a), vec![x.groupoid().t(a)]);
        }
    }
}
