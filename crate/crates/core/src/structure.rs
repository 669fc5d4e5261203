//! Finite partial semigroups, groupoids and their homomorphisms.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result, Violation};

/// A finite set with a partially defined product table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialSemigroup {
    size: usize,
    product: Vec<Option<usize>>,
}

impl PartialSemigroup {
    pub fn new(size: usize, product: Vec<Vec<Option<usize>>>) -> Result<Self> {
        if product.len() != size {
            return Err(Error::dimension(format!("product table has {} rows, expected {size}", product.len())));
        }
        let mut flat = Vec::with_capacity(size * size);
        for (a, row) in product.into_iter().enumerate() {
            if row.len() != size {
                return Err(Error::dimension(format!("row {a} has {} entries, expected {size}", row.len())));
            }
            for v in row {
                if let Some(c) = v {
                    if c >= size {
                        return Err(Error::invalid(format!("product entry {c} out of range in row {a}")));
                    }
                }
                flat.push(v);
            }
        }
        Ok(PartialSemigroup { size, product: flat })
    }

    /// Table with `-1` for undefined products, as in the JSON encoding.
    pub fn from_signed(rows: &[Vec<i64>]) -> Result<Self> {
        let size = rows.len();
        let mut table = Vec::with_capacity(size);
        for row in rows {
            let mut r = Vec::with_capacity(row.len());
            for &v in row {
                r.push(match v {
                    -1 => None,
                    v if v >= 0 => Some(v as usize),
                    v => return Err(Error::invalid(format!("negative product entry {v}"))),
                });
            }
            table.push(r);
        }
        PartialSemigroup::new(size, table)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        self.product[a * self.size + b]
    }

    pub fn to_signed(&self) -> Vec<Vec<i64>> {
        (0..self.size)
            .map(|a| (0..self.size).map(|b| self.mul(a, b).map_or(-1, |c| c as i64)).collect())
            .collect()
    }

    /// The total semigroup on the elements plus an absorbing zero.
    pub fn totalize(&self) -> TotalSemigroup {
        let n = self.size;
        let zero = n;
        let mut table = vec![zero; (n + 1) * (n + 1)];
        for a in 0..n {
            for b in 0..n {
                if let Some(c) = self.mul(a, b) {
                    table[a * (n + 1) + b] = c;
                }
            }
        }
        TotalSemigroup { size: n + 1, table, zero }
    }

    /// Associativity in the totalized sense.
    pub fn check_associative(&self) -> std::result::Result<(), Violation> {
        match self.totalize().associativity_failure() {
            None => Ok(()),
            Some((a, b, c)) => Err(Violation::new(
                "associativity",
                format!("associativity fails at ({a},{b},{c})"),
                vec![a, b, c],
            )),
        }
    }
}

/// A total semigroup table, typically the completion of a groupoid by a zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TotalSemigroup {
    size: usize,
    table: Vec<usize>,
    zero: usize,
}

impl TotalSemigroup {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        for a in 0..self.size {
            for b in 0..self.size {
                let ab = self.mul(a, b);
                for c in 0..self.size {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size).filter(|&a| self.mul(a, a) == a).collect()
    }

    /// First element without a unique inverse `b` (`aba = a`, `bab = b`).
    pub fn non_inverse_witness(&self) -> Option<usize> {
        (0..self.size).find(|&a| {
            let count = (0..self.size)
                .filter(|&b| self.mul(self.mul(a, b), a) == a && self.mul(self.mul(b, a), b) == b)
                .count();
            count != 1
        })
    }

    pub fn is_inverse(&self) -> bool {
        self.non_inverse_witness().is_none()
    }

    /// A pair of distinct nonzero idempotents whose product is nonzero.
    pub fn non_orthogonal_idempotents(&self) -> Option<(usize, usize)> {
        let idem: Vec<usize> = self.idempotents().into_iter().filter(|&e| e != self.zero).collect();
        for &e in &idem {
            for &f in &idem {
                if e != f && self.mul(e, f) != self.zero {
                    return Some((e, f));
                }
            }
        }
        None
    }

    /// Forgets the zero, giving back a partial product table.
    pub fn restrict(&self) -> PartialSemigroup {
        let elems: Vec<usize> = (0..self.size).filter(|&a| a != self.zero).collect();
        let pos = |x: usize| elems.iter().position(|&e| e == x);
        let table = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| pos(self.mul(a, b))).collect())
            .collect();
        PartialSemigroup::new(elems.len(), table).expect("restriction keeps indices in range")
    }
}

/// A finite groupoid: a partial semigroup with identities and inverses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Groupoid {
    base: PartialSemigroup,
    labels: Vec<String>,
    source: Vec<usize>,
    target: Vec<usize>,
    inverse: Vec<usize>,
    objects: Vec<usize>,
    object_position: Vec<Option<usize>>,
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("g{i}")).collect()
}

/// Validates with default labels `g0, g1, ...`.
pub fn validate_groupoid(base: PartialSemigroup) -> Result<Groupoid> {
    let labels = default_labels(base.size());
    Groupoid::validate(base, labels)
}

impl Groupoid {
    /// Derives `d`, `t`, inverses and the objects from the product table and
    /// checks every groupoid axiom.
    pub fn validate(base: PartialSemigroup, labels: Vec<String>) -> Result<Groupoid> {
        let n = base.size();
        if labels.len() != n {
            return Err(Error::dimension(format!("{} labels for {n} elements", labels.len())));
        }
        if n == 0 {
            return Err(Error::invalid("a groupoid needs at least one element"));
        }
        let lab = |g: usize| labels[g].clone();
        let objects: Vec<usize> = (0..n).filter(|&g| base.mul(g, g) == Some(g)).collect();

        let mut source = vec![0; n];
        let mut target = vec![0; n];
        for g in 0..n {
            let right: Vec<usize> = objects.iter().copied().filter(|&e| base.mul(g, e).is_some()).collect();
            let left: Vec<usize> = objects.iter().copied().filter(|&e| base.mul(e, g).is_some()).collect();
            if right.len() != 1 {
                return Err(Error::axiom(
                    "identity",
                    format!("element {} has {} right identities", lab(g), right.len()),
                    vec![g],
                ));
            }
            if left.len() != 1 {
                return Err(Error::axiom(
                    "identity",
                    format!("element {} has {} left identities", lab(g), left.len()),
                    vec![g],
                ));
            }
            if base.mul(g, right[0]) != Some(g) {
                return Err(Error::axiom(
                    "identity",
                    format!("{}·{} ≠ {}", lab(g), lab(right[0]), lab(g)),
                    vec![g, right[0]],
                ));
            }
            if base.mul(left[0], g) != Some(g) {
                return Err(Error::axiom(
                    "identity",
                    format!("{}·{} ≠ {}", lab(left[0]), lab(g), lab(g)),
                    vec![left[0], g],
                ));
            }
            source[g] = right[0];
            target[g] = left[0];
        }

        for g in 0..n {
            for h in 0..n {
                let defined = base.mul(g, h);
                let matched = source[g] == target[h];
                match (defined, matched) {
                    (Some(_), false) => {
                        return Err(Error::axiom(
                            "composability",
                            format!("{}·{} is defined but d({}) ≠ t({})", lab(g), lab(h), lab(g), lab(h)),
                            vec![g, h],
                        ))
                    }
                    (None, true) => {
                        return Err(Error::axiom(
                            "composability",
                            format!("{}·{} is undefined although d({}) = t({})", lab(g), lab(h), lab(g), lab(h)),
                            vec![g, h],
                        ))
                    }
                    (Some(gh), true) => {
                        if source[gh] != source[h] || target[gh] != target[g] {
                            return Err(Error::axiom(
                                "composability",
                                format!("d/t of {}·{} do not match its factors", lab(g), lab(h)),
                                vec![g, h],
                            ));
                        }
                    }
                    (None, false) => {}
                }
            }
        }

        let mut inverse = vec![0; n];
        for g in 0..n {
            let found = (0..n).find(|&h| base.mul(g, h) == Some(target[g]) && base.mul(h, g) == Some(source[g]));
            match found {
                Some(h) => inverse[g] = h,
                None => {
                    return Err(Error::axiom("inverse", format!("no inverse for element {}", lab(g)), vec![g]));
                }
            }
        }

        if let Some((a, b, c)) = base.totalize().associativity_failure() {
            let name = |x: usize| if x == n { "0".to_string() } else { lab(x) };
            return Err(Error::axiom(
                "associativity",
                format!("associativity fails at ({},{},{})", name(a), name(b), name(c)),
                vec![a, b, c],
            ));
        }

        let mut object_position = vec![None; n];
        for (i, &e) in objects.iter().enumerate() {
            object_position[e] = Some(i);
        }
        Ok(Groupoid {
            base,
            labels,
            source,
            target,
            inverse,
            objects,
            object_position,
        })
    }

    pub fn size(&self) -> usize {
        self.base.size()
    }

    pub fn base(&self) -> &PartialSemigroup {
        &self.base
    }

    pub fn mul(&self, g: usize, h: usize) -> Option<usize> {
        self.base.mul(g, h)
    }

    /// Source `d(g)`.
    pub fn d(&self, g: usize) -> usize {
        self.source[g]
    }

    /// Target `t(g)`.
    pub fn t(&self, g: usize) -> usize {
        self.target[g]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    /// The identities `G₀`, in increasing index order.
    pub fn objects(&self) -> &[usize] {
        &self.objects
    }

    pub fn is_object(&self, g: usize) -> bool {
        self.object_position[g].is_some()
    }

    /// Position of an identity within [`Groupoid::objects`].
    pub fn object_position(&self, e: usize) -> Option<usize> {
        self.object_position[e]
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Elements with the given source and target.
    pub fn hom_set(&self, from: usize, to: usize) -> Vec<usize> {
        (0..self.size()).filter(|&g| self.d(g) == from && self.t(g) == to).collect()
    }

    /// The identity-only subgroupoid `G₀` as a wide subgroupoid.
    pub fn objects_subgroupoid(&self) -> Subgroupoid {
        subgroupoid(self, &self.objects).expect("identities are closed")
    }
}

/// The pair groupoid on `{1..n}` with `(i,j)(j,k) = (i,k)`; element `(i,j)` has index `(i-1)n + (j-1)`.
pub fn pair_groupoid(n: usize) -> Result<Groupoid> {
    if n == 0 {
        return Err(Error::invalid("the pair groupoid needs n ≥ 1"));
    }
    let idx = |i: usize, j: usize| i * n + j;
    let mut table = vec![vec![None; n * n]; n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                table[idx(i, j)][idx(j, k)] = Some(idx(i, k));
            }
        }
    }
    let labels = (0..n * n).map(|g| format!("({},{})", g / n + 1, g % n + 1)).collect();
    Groupoid::validate(PartialSemigroup::new(n * n, table)?, labels)
}

/// Index of `(i,j)` (1-based) in [`pair_groupoid`].
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    (i - 1) * n + (j - 1)
}

/// A group, given by its Cayley table, as a one-object groupoid.
pub fn group_as_groupoid(cayley: &[Vec<usize>]) -> Result<Groupoid> {
    let table = cayley.iter().map(|row| row.iter().map(|&c| Some(c)).collect()).collect();
    let base = PartialSemigroup::new(cayley.len(), table)?;
    let g = validate_groupoid(base)?;
    if g.objects().len() != 1 {
        return Err(Error::invalid("a group table has exactly one idempotent"));
    }
    Ok(g)
}

pub fn cyclic_group_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

/// The cyclic group of order `n` with elements labelled `0..n`.
pub fn cyclic_group(n: usize) -> Result<Groupoid> {
    let g = group_as_groupoid(&cyclic_group_table(n))?;
    let labels = (0..n).map(|i| i.to_string()).collect();
    Groupoid::validate(g.base().clone(), labels)
}

pub fn trivial_groupoid() -> Groupoid {
    let base = PartialSemigroup::new(1, vec![vec![Some(0)]]).expect("one element");
    Groupoid::validate(base, vec!["e".into()]).expect("the trivial groupoid is valid")
}

/// Groupoid of a partial group action.
///
/// `domains[g][x]` says whether `x` lies in the domain `X_{g⁻¹}` of `θ_g`;
/// `theta[g][x]` is `θ_g(x)` there. Element `(g,x)` exists for `x ∈ X_{g⁻¹}`
/// and `(g,x)(h,y) = (gh,y)` when `y ∈ X_{h⁻¹} ∩ X_{(gh)⁻¹}` and `x = θ_h(y)`.
pub fn from_partial_action(
    group: &[Vec<usize>],
    x_size: usize,
    domains: &[Vec<bool>],
    theta: &[Vec<Option<usize>>],
) -> Result<Groupoid> {
    let grp = group_as_groupoid(group)?;
    let n = grp.size();
    let one = grp.objects()[0];
    if domains.len() != n || theta.len() != n {
        return Err(Error::dimension("one domain and one map per group element"));
    }
    for g in 0..n {
        if domains[g].len() != x_size || theta[g].len() != x_size {
            return Err(Error::dimension(format!("domain or map of element {g} has the wrong length")));
        }
        for x in 0..x_size {
            match (domains[g][x], theta[g][x]) {
                (true, None) => {
                    return Err(Error::axiom("partial action", format!("θ_{g} undefined at {x} in its domain"), vec![g, x]))
                }
                (false, Some(_)) => {
                    return Err(Error::axiom("partial action", format!("θ_{g} defined at {x} outside its domain"), vec![g, x]))
                }
                (true, Some(y)) if y >= x_size => {
                    return Err(Error::invalid(format!("θ_{g}({x}) = {y} out of range")))
                }
                _ => {}
            }
        }
    }
    for x in 0..x_size {
        if !domains[one][x] || theta[one][x] != Some(x) {
            return Err(Error::axiom("partial action", "θ_1 must be the identity of X", vec![one, x]));
        }
    }
    // θ_g maps X_{g⁻¹} bijectively onto X_g = dom θ_{g⁻¹}, inverse θ_{g⁻¹}.
    for g in 0..n {
        let gi = grp.inv(g);
        for x in 0..x_size {
            if let Some(y) = theta[g][x] {
                if theta[gi][y] != Some(x) {
                    return Err(Error::axiom(
                        "partial action",
                        format!("θ_{gi} is not inverse to θ_{g} at {x}"),
                        vec![g, x],
                    ));
                }
            }
        }
    }
    // θ_g θ_h = θ_{gh} on X_{h⁻¹} ∩ X_{(gh)⁻¹}.
    for g in 0..n {
        for h in 0..n {
            let gh = grp.mul(g, h).expect("groups are total");
            for x in 0..x_size {
                if domains[h][x] && domains[gh][x] {
                    let y = theta[h][x].expect("in domain");
                    if theta[g][y] != theta[gh][x] {
                        return Err(Error::axiom(
                            "partial action",
                            format!("θ_{g}θ_{h} ≠ θ_{gh} at {x}"),
                            vec![g, h, x],
                        ));
                    }
                }
            }
        }
    }
    let mut elements = Vec::new();
    for g in 0..n {
        for x in 0..x_size {
            if domains[g][x] {
                elements.push((g, x));
            }
        }
    }
    let pos = |p: (usize, usize)| elements.iter().position(|&q| q == p);
    let mut table = vec![vec![None; elements.len()]; elements.len()];
    for (a, &(g, x)) in elements.iter().enumerate() {
        for (b, &(h, y)) in elements.iter().enumerate() {
            let gh = grp.mul(g, h).expect("groups are total");
            if domains[h][y] && domains[gh][y] && theta[h][y] == Some(x) {
                table[a][b] = pos((gh, y));
            }
        }
    }
    let labels = elements.iter().map(|&(g, x)| format!("({},{})", grp.label(g), x)).collect();
    Groupoid::validate(PartialSemigroup::new(elements.len(), table)?, labels)
}

/// A validated subgroupoid together with its embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroupoid {
    pub groupoid: Groupoid,
    /// `embedding[i]` is the ambient index of the `i`-th element.
    pub embedding: Vec<usize>,
    pub wide: bool,
}

impl Subgroupoid {
    /// Position of an ambient element, if it belongs to the subgroupoid.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.embedding.iter().position(|&e| e == g)
    }

    pub fn contains(&self, g: usize) -> bool {
        self.embedding.contains(&g)
    }
}

/// Checks that `elements` is closed under defined products and inverses.
pub fn subgroupoid(g: &Groupoid, elements: &[usize]) -> Result<Subgroupoid> {
    let set: BTreeSet<usize> = elements.iter().copied().collect();
    if set.is_empty() {
        return Err(Error::invalid("a subgroupoid needs at least one element"));
    }
    if let Some(&bad) = set.iter().find(|&&x| x >= g.size()) {
        return Err(Error::invalid(format!("element {bad} out of range")));
    }
    for &a in &set {
        if !set.contains(&g.inv(a)) {
            return Err(Error::axiom(
                "subgroupoid",
                format!("missing inverse of {}", g.label(a)),
                vec![a, g.inv(a)],
            ));
        }
        for &b in &set {
            if let Some(c) = g.mul(a, b) {
                if !set.contains(&c) {
                    return Err(Error::axiom(
                        "subgroupoid",
                        format!("{}·{} leaves the subset", g.label(a), g.label(b)),
                        vec![a, b],
                    ));
                }
            }
        }
    }
    let embedding: Vec<usize> = set.iter().copied().collect();
    let pos = |x: usize| embedding.iter().position(|&e| e == x);
    let table = embedding
        .iter()
        .map(|&a| embedding.iter().map(|&b| g.mul(a, b).and_then(pos)).collect())
        .collect();
    let labels = embedding.iter().map(|&a| g.label(a).to_string()).collect();
    let sub = Groupoid::validate(PartialSemigroup::new(embedding.len(), table)?, labels)?;
    let wide = g.objects().iter().all(|e| set.contains(e));
    Ok(Subgroupoid { groupoid: sub, embedding, wide })
}

/// The completion `G ∪ {0}` with undefined products sent to `0`.
pub fn semigroup_completion(g: &Groupoid) -> TotalSemigroup {
    g.base().totalize()
}

/// A map of groupoids, checked by [`GroupoidHom::check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidHom {
    pub source: Arc<Groupoid>,
    pub target: Arc<Groupoid>,
    pub map: Vec<usize>,
}

impl GroupoidHom {
    pub fn new(source: Arc<Groupoid>, target: Arc<Groupoid>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.size() || map.iter().any(|&m| m >= target.size()) {
            return Err(Error::dimension("map must send every source element into the target"));
        }
        Ok(GroupoidHom { source, target, map })
    }

    pub fn identity(g: Arc<Groupoid>) -> Self {
        let map = (0..g.size()).collect();
        GroupoidHom { source: g.clone(), target: g, map }
    }

    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    /// Whether the defined pair `(g,h)` (or any undefined pair) is respected.
    pub fn respects(&self, g: usize, h: usize) -> bool {
        match self.source.mul(g, h) {
            Some(gh) => self.target.mul(self.map[g], self.map[h]) == Some(self.map[gh]),
            None => true,
        }
    }

    /// First defined pair `(g,h)` whose images do not multiply to the image of `gh`.
    pub fn check(&self) -> std::result::Result<(), (usize, usize)> {
        let n = self.source.size();
        for g in 0..n {
            for h in 0..n {
                if !self.respects(g, h) {
                    return Err((g, h));
                }
            }
        }
        Ok(())
    }
}

/// Checks the homomorphism condition, returning a violating pair.
pub fn check_hom(phi: &GroupoidHom) -> std::result::Result<(), (usize, usize)> {
    phi.check()
}

/// Disjoint union of groupoids; labels get a component prefix.
pub fn disjoint_union(parts: &[Groupoid]) -> Result<Groupoid> {
    let total: usize = parts.iter().map(Groupoid::size).sum();
    let mut table = vec![vec![None; total]; total];
    let mut labels = Vec::with_capacity(total);
    let mut offset = 0;
    for (k, p) in parts.iter().enumerate() {
        for a in 0..p.size() {
            for b in 0..p.size() {
                table[offset + a][offset + b] = p.mul(a, b).map(|c| offset + c);
            }
            labels.push(format!("{}:{}", k, p.label(a)));
        }
        offset += p.size();
    }
    Groupoid::validate(PartialSemigroup::new(total, table)?, labels)
}

/// Direct product `A × B` with componentwise product.
pub fn direct_product(a: &Groupoid, b: &Groupoid) -> Result<Groupoid> {
    let (na, nb) = (a.size(), b.size());
    let n = na * nb;
    let mut table = vec![vec![None; n]; n];
    for x in 0..n {
        for y in 0..n {
            let (xa, xb) = (x / nb, x % nb);
            let (ya, yb) = (y / nb, y % nb);
            if let (Some(p), Some(q)) = (a.mul(xa, ya), b.mul(xb, yb)) {
                table[x][y] = Some(p * nb + q);
            }
        }
    }
    let labels = (0..n).map(|x| format!("{}{}", a.label(x / nb), b.label(x % nb))).collect();
    Groupoid::validate(PartialSemigroup::new(n, table)?, labels)
}

/// The category `{e →a f}` with composition written `a·e = a`, `f·a = a`.
/// It is a partial semigroup with identities but not a groupoid.
pub fn arrow_category() -> (PartialSemigroup, Vec<String>) {
    let (e, a, f) = (0, 1, 2);
    let mut table = vec![vec![None; 3]; 3];
    table[e][e] = Some(e);
    table[f][f] = Some(f);
    table[a][e] = Some(a);
    table[f][a] = Some(a);
    let base = PartialSemigroup::new(3, table).expect("three elements");
    (base, vec!["e".into(), "a".into(), "f".into()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_table_is_a_groupoid() {
        let g = trivial_groupoid();
        assert_eq!(g.size(), 1);
        assert_eq!(g.objects(), &[0]);
    }

    #[test]
    fn pair_groupoid_structure() {
        let g = pair_groupoid(2).unwrap();
        assert_eq!(g.size(), 4);
        assert_eq!(g.objects().len(), 2);
        let g3 = pair_groupoid(3).unwrap();
        let p = |i, j| pair_index(3, i, j);
        assert_eq!(g3.mul(p(1, 2), p(2, 3)), Some(p(1, 3)));
        assert_eq!(g3.mul(p(1, 2), p(3, 1)), None);
        assert_eq!(g3.d(p(1, 2)), p(2, 2));
        assert_eq!(g3.t(p(1, 2)), p(1, 1));
        assert_eq!(g3.inv(p(1, 2)), p(2, 1));
        assert_eq!(pair_groupoid(1).unwrap().size(), 1);
        assert!(pair_groupoid(0).is_err());
    }

    #[test]
    fn arrow_category_is_rejected() {
        let (base, labels) = arrow_category();
        let err = Groupoid::validate(base.clone(), labels).unwrap_err();
        assert_eq!(err.to_string(), "no inverse for element a");
        assert!(base.check_associative().is_ok());
        let completion = base.totalize();
        assert_eq!(completion.size(), 4);
        assert!(completion.associativity_failure().is_none());
        assert!(!completion.is_inverse());
        assert!(completion.non_orthogonal_idempotents().is_none());
    }

    #[test]
    fn groups_as_groupoids() {
        let z2 = group_as_groupoid(&cyclic_group_table(2)).unwrap();
        assert_eq!((z2.size(), z2.objects().len()), (2, 1));
        let z3 = group_as_groupoid(&cyclic_group_table(3)).unwrap();
        assert!((0..3).all(|a| (0..3).all(|b| z3.mul(a, b).is_some())));
        // a magma with a two-sided identity and inverses that is not associative
        let magma = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = group_as_groupoid(&magma).unwrap_err();
        assert!(err.to_string().starts_with("associativity fails at"), "{err}");
    }

    #[test]
    fn partial_action_groupoids() {
        let z2 = cyclic_group_table(2);
        let full = vec![vec![true, true], vec![true, true]];
        let swap = vec![vec![Some(0), Some(1)], vec![Some(1), Some(0)]];
        assert_eq!(from_partial_action(&z2, 2, &full, &swap).unwrap().size(), 4);

        let trivial = vec![vec![0]];
        let g = from_partial_action(&trivial, 3, &[vec![true; 3]], &[vec![Some(0), Some(1), Some(2)]]).unwrap();
        assert_eq!((g.size(), g.objects().len()), (3, 3));

        let empty = vec![vec![true, true], vec![false, false]];
        let theta = vec![vec![Some(0), Some(1)], vec![None, None]];
        let g = from_partial_action(&z2, 2, &empty, &theta).unwrap();
        assert_eq!((g.size(), g.objects().len()), (2, 2));

        let bad = vec![vec![Some(1), Some(0)], vec![Some(1), Some(0)]];
        assert!(from_partial_action(&z2, 2, &full, &bad).is_err());
    }

    #[test]
    fn subgroupoids() {
        let g = pair_groupoid(3).unwrap();
        let objs = g.objects().to_vec();
        assert!(subgroupoid(&g, &objs).unwrap().wide);
        let p = |i, j| pair_index(3, i, j);
        let s = vec![p(1, 1), p(1, 2), p(2, 1), p(2, 2), p(3, 3)];
        let sub = subgroupoid(&g, &s).unwrap();
        assert!(sub.wide);
        assert_eq!(sub.groupoid.size(), 5);
        let g2 = pair_groupoid(2).unwrap();
        assert!(subgroupoid(&g2, &[pair_index(2, 1, 2)]).is_err());
    }

    #[test]
    fn completion_of_pair_groupoid() {
        let g = pair_groupoid(2).unwrap();
        let c = semigroup_completion(&g);
        assert_eq!(c.size(), 5);
        assert!(c.associativity_failure().is_none());
        assert!(c.is_inverse());
        assert_eq!(c.idempotents(), vec![0, 3, 4]);
        assert!(c.non_orthogonal_idempotents().is_none());
        assert_eq!(semigroup_completion(&trivial_groupoid()).size(), 2);
    }

    #[test]
    fn homomorphism_checks() {
        let g = Arc::new(pair_groupoid(2).unwrap());
        assert!(check_hom(&GroupoidHom::identity(g.clone())).is_ok());
        let d_map = (0..4).map(|x| g.d(x)).collect();
        let d = GroupoidHom::new(g.clone(), g.clone(), d_map).unwrap();
        assert!(check_hom(&d).is_err());
        assert!(!d.respects(pair_index(2, 1, 2), pair_index(2, 2, 1)));
        let triv = Arc::new(trivial_groupoid());
        let collapse = GroupoidHom::new(g, triv, vec![0; 4]).unwrap();
        assert!(check_hom(&collapse).is_ok());
    }
}
