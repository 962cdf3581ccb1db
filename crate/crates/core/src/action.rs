//! Graph automorphisms acting on vertices and edges, generated groups,
//! harmonicity, orbits, and the canonical dihedral orbit labeling.

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::multigraph::Multigraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("permutation has length {found}, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("map is not a bijection")]
    NotBijective,
    #[error("vertex map does not preserve the edges between {0:?} and {1:?}")]
    NotAutomorphism(String, String),
    #[error("edge map sends edge {edge} to an edge with the wrong endpoints")]
    EdgeMapMismatch { edge: usize },
    #[error("{0} is not an involution")]
    NotInvolution(&'static str),
    #[error("sigma2*sigma1 has order {0}, need at least 2")]
    RotationOrder(usize),
    #[error("generated group has {found} elements, expected {expected}")]
    GroupOrder { expected: usize, found: usize },
    #[error("generators act on different graphs")]
    Mismatched,
}

/// Automorphism given by its action on vertices and on edge indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexPermutation {
    vertices: Vec<usize>,
    edges: Vec<usize>,
}

fn is_bijection(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    map.iter().all(|&x| x < map.len() && !std::mem::replace(&mut seen[x], true))
}

/// Edge indices grouped by endpoint pair, each group in edge order.
fn parallel_classes(g: &Multigraph) -> HashMap<(usize, usize), Vec<usize>> {
    let mut classes: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (k, e) in g.edges().iter().enumerate() {
        classes.entry(e.endpoints()).or_default().push(k);
    }
    classes
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl VertexPermutation {
    pub fn identity(g: &Multigraph) -> Self {
        VertexPermutation { vertices: (0..g.vertex_count()).collect(), edges: (0..g.edge_count()).collect() }
    }

    /// Vertex map with the induced edge map: the k-th parallel copy of
    /// `{u, v}` goes to the k-th copy of `{s(u), s(v)}`.
    pub fn new(g: &Multigraph, images: Vec<usize>) -> Result<Self, ActionError> {
        check_vertex_map(g, &images)?;
        let classes = parallel_classes(g);
        let mut edges = vec![0; g.edge_count()];
        for (&(u, v), ks) in &classes {
            let target = ordered(images[u], images[v]);
            let Some(ts) = classes.get(&target).filter(|ts| ts.len() == ks.len()) else {
                return Err(ActionError::NotAutomorphism(g.label(u).into(), g.label(v).into()));
            };
            for (&k, &t) in ks.iter().zip(ts) {
                edges[k] = t;
            }
        }
        Ok(VertexPermutation { vertices: images, edges })
    }

    /// Vertex map together with an explicit edge permutation.
    pub fn with_edge_map(g: &Multigraph, images: Vec<usize>, edge_images: Vec<usize>) -> Result<Self, ActionError> {
        check_vertex_map(g, &images)?;
        if edge_images.len() != g.edge_count() {
            return Err(ActionError::Length { expected: g.edge_count(), found: edge_images.len() });
        }
        if !is_bijection(&edge_images) {
            return Err(ActionError::NotBijective);
        }
        for (k, e) in g.edges().iter().enumerate() {
            let t = &g.edges()[edge_images[k]];
            if t.endpoints() != ordered(images[e.u], images[e.v]) {
                return Err(ActionError::EdgeMapMismatch { edge: k });
            }
        }
        Ok(VertexPermutation { vertices: images, edges: edge_images })
    }

    pub fn apply(&self, v: usize) -> usize {
        self.vertices[v]
    }

    pub fn apply_edge(&self, e: usize) -> usize {
        self.edges[e]
    }

    pub fn vertex_images(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edge_images(&self) -> &[usize] {
        &self.edges
    }

    pub fn degree(&self) -> usize {
        self.vertices.len()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &VertexPermutation) -> VertexPermutation {
        assert_eq!(self.vertices.len(), other.vertices.len(), "permutations of different graphs");
        VertexPermutation {
            vertices: other.vertices.iter().map(|&v| self.vertices[v]).collect(),
            edges: other.edges.iter().map(|&e| self.edges[e]).collect(),
        }
    }

    pub fn inverse(&self) -> VertexPermutation {
        let mut vertices = vec![0; self.vertices.len()];
        for (i, &x) in self.vertices.iter().enumerate() {
            vertices[x] = i;
        }
        let mut edges = vec![0; self.edges.len()];
        for (i, &x) in self.edges.iter().enumerate() {
            edges[x] = i;
        }
        VertexPermutation { vertices, edges }
    }

    pub fn is_identity(&self) -> bool {
        self.vertices.iter().enumerate().all(|(i, &x)| i == x) && self.edges.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = self.compose(&p);
            k += 1;
        }
        k
    }

    pub fn fixes(&self, v: usize) -> bool {
        self.vertices[v] == v
    }

    pub fn power(&self, k: usize) -> VertexPermutation {
        let mut p =
            VertexPermutation { vertices: (0..self.vertices.len()).collect(), edges: (0..self.edges.len()).collect() };
        for _ in 0..k {
            p = self.compose(&p);
        }
        p
    }
}

fn check_vertex_map(g: &Multigraph, images: &[usize]) -> Result<(), ActionError> {
    if images.len() != g.vertex_count() {
        return Err(ActionError::Length { expected: g.vertex_count(), found: images.len() });
    }
    if !is_bijection(images) {
        return Err(ActionError::NotBijective);
    }
    Ok(())
}

/// Finite permutation group, identity first.
#[derive(Clone, Debug)]
pub struct PermGroup {
    elements: Vec<VertexPermutation>,
}

/// Closure of `gens` under composition.
pub fn generate_group(g: &Multigraph, gens: &[VertexPermutation]) -> Result<PermGroup, ActionError> {
    if gens.iter().any(|p| p.vertices.len() != g.vertex_count() || p.edges.len() != g.edge_count()) {
        return Err(ActionError::Mismatched);
    }
    let id = VertexPermutation::identity(g);
    let mut seen: HashSet<VertexPermutation> = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for s in gens {
            let q = s.compose(&p);
            if seen.insert(q.clone()) {
                elements.push(q.clone());
                queue.push_back(q);
            }
        }
    }
    Ok(PermGroup { elements })
}

impl PermGroup {
    pub fn elements(&self) -> &[VertexPermutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.elements[0].vertices.len()
    }

    pub fn contains(&self, p: &VertexPermutation) -> bool {
        self.elements.contains(p)
    }

    /// Vertex orbits, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        partition(self.degree(), |v| self.elements.iter().map(move |p| p.apply(v)))
    }

    /// Edge orbits, each sorted, ordered by least element.
    pub fn edge_orbits(&self) -> Vec<Vec<usize>> {
        let m = self.elements[0].edges.len();
        partition(m, |e| self.elements.iter().map(move |p| p.apply_edge(e)))
    }

    pub fn orbit_of(&self, v: usize) -> Vec<usize> {
        let mut o: Vec<usize> = self.elements.iter().map(|p| p.apply(v)).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    pub fn stabilizer(&self, v: usize) -> PermGroup {
        PermGroup { elements: self.elements.iter().filter(|p| p.fixes(v)).cloned().collect() }
    }
}

fn partition<I: Iterator<Item = usize>>(n: usize, images: impl Fn(usize) -> I) -> Vec<Vec<usize>> {
    let mut owner = vec![usize::MAX; n];
    let mut parts = Vec::new();
    for v in 0..n {
        if owner[v] != usize::MAX {
            continue;
        }
        let mut part: Vec<usize> = images(v).collect();
        part.sort_unstable();
        part.dedup();
        for &w in &part {
            owner[w] = parts.len();
        }
        parts.push(part);
    }
    parts
}

pub fn orbits(group: &PermGroup) -> Vec<Vec<usize>> {
    group.orbits()
}

pub fn stabilizer(group: &PermGroup, v: usize) -> PermGroup {
    group.stabilizer(v)
}

/// A non-identity element fixing an edge together with both endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicViolation {
    pub element: usize,
    pub edge: usize,
}

pub fn harmonic_violation(g: &Multigraph, group: &PermGroup) -> Option<HarmonicViolation> {
    for (i, p) in group.elements.iter().enumerate() {
        if p.is_identity() {
            continue;
        }
        for (k, e) in g.edges().iter().enumerate() {
            if !e.is_loop() && p.apply_edge(k) == k && p.fixes(e.u) && p.fixes(e.v) {
                return Some(HarmonicViolation { element: i, edge: k });
            }
        }
    }
    None
}

pub fn is_harmonic(g: &Multigraph, group: &PermGroup) -> bool {
    harmonic_violation(g, group).is_none()
}

/// Dihedral group generated by two involutions whose product has order `n`.
#[derive(Clone, Debug)]
pub struct DihedralAction {
    n: usize,
    sigma1: VertexPermutation,
    sigma2: VertexPermutation,
    group: PermGroup,
}

impl DihedralAction {
    pub fn new(g: &Multigraph, sigma1: VertexPermutation, sigma2: VertexPermutation) -> Result<Self, ActionError> {
        for (p, name) in [(&sigma1, "sigma1"), (&sigma2, "sigma2")] {
            if p.is_identity() || !p.compose(p).is_identity() {
                return Err(ActionError::NotInvolution(name));
            }
        }
        let r = sigma2.compose(&sigma1);
        let n = r.order();
        if n < 2 {
            return Err(ActionError::RotationOrder(n));
        }
        let group = generate_group(g, &[sigma1.clone(), sigma2.clone()])?;
        if group.order() != 2 * n {
            return Err(ActionError::GroupOrder { expected: 2 * n, found: group.order() });
        }
        Ok(DihedralAction { n, sigma1, sigma2, group })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma1(&self) -> &VertexPermutation {
        &self.sigma1
    }

    pub fn sigma2(&self) -> &VertexPermutation {
        &self.sigma2
    }

    /// `sigma2 ∘ sigma1`.
    pub fn rotation(&self) -> VertexPermutation {
        self.sigma2.compose(&self.sigma1)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// The same group with the generators exchanged.
    pub fn swapped(&self) -> DihedralAction {
        DihedralAction {
            n: self.n,
            sigma1: self.sigma2.clone(),
            sigma2: self.sigma1.clone(),
            group: self.group.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelingError {
    #[error("action is not harmonic: a non-identity element fixes edge {edge} ({u}-{v}) and both endpoints")]
    NotHarmonic { edge: usize, u: String, v: String },
    #[error("ORBIT_SIZE: orbit {orbit:?} has size {size}, expected {n} or {}", 2 * n)]
    OrbitSize { orbit: Vec<String>, size: usize, n: usize },
    #[error("LABELING_IMPOSSIBLE: no generator assignment has a sigma2-fixed point in orbit {orbit:?} (orbit census: {s} of size n, {t} of size 2n)")]
    LabelingImpossible { orbit: Vec<String>, s: usize, t: usize },
}

/// Canonical labeling of the orbits: `s` orbits `z^j` of size `n` and `t`
/// pairs `(x^j, y^j)` filling orbits of size `2n`.
#[derive(Clone, Debug)]
pub struct OrbitLabeling {
    n: usize,
    swapped: bool,
    sigma1: VertexPermutation,
    sigma2: VertexPermutation,
    z: Vec<Vec<usize>>,
    x: Vec<Vec<usize>>,
    y: Vec<Vec<usize>>,
}

/// Reduces a 1-based index into `1..=n`.
pub fn wrap(i: i64, n: usize) -> usize {
    (i - 1).rem_euclid(n as i64) as usize + 1
}

impl OrbitLabeling {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.z.len()
    }

    pub fn t(&self) -> usize {
        self.x.len()
    }

    /// Whether the generators had to be exchanged relative to the action.
    pub fn swapped(&self) -> bool {
        self.swapped
    }

    /// Generators the labeling equations hold for.
    pub fn sigma1(&self) -> &VertexPermutation {
        &self.sigma1
    }

    pub fn sigma2(&self) -> &VertexPermutation {
        &self.sigma2
    }

    /// `z_i^j` with `j` 0-based and `i` 1-based modulo `n`.
    pub fn z(&self, j: usize, i: i64) -> usize {
        self.z[j][wrap(i, self.n) - 1]
    }

    pub fn x(&self, j: usize, i: i64) -> usize {
        self.x[j][wrap(i, self.n) - 1]
    }

    pub fn y(&self, j: usize, i: i64) -> usize {
        self.y[j][wrap(i, self.n) - 1]
    }

    pub fn z_orbits(&self) -> &[Vec<usize>] {
        &self.z
    }

    pub fn x_orbits(&self) -> &[Vec<usize>] {
        &self.x
    }

    pub fn y_orbits(&self) -> &[Vec<usize>] {
        &self.y
    }

    /// Checks every labeling equation literally.
    pub fn verify(&self, vertex_count: usize) -> bool {
        let n = self.n as i64;
        let (s1, s2) = (&self.sigma1, &self.sigma2);
        let mut seen = vec![false; vertex_count];
        let mut mark = |v: usize| v < vertex_count && !std::mem::replace(&mut seen[v], true);
        let all = self.z.iter().chain(&self.x).chain(&self.y).flatten();
        if !all.clone().all(|&v| mark(v)) || all.count() != vertex_count {
            return false;
        }
        for j in 0..self.s() {
            for i in 1..=n {
                if s1.apply(self.z(j, i)) != self.z(j, n + 1 - i) || s2.apply(self.z(j, i)) != self.z(j, n + 2 - i) {
                    return false;
                }
            }
        }
        for j in 0..self.t() {
            for i in 1..=n {
                let ok = s1.apply(self.x(j, i)) == self.y(j, n + 1 - i)
                    && s2.apply(self.x(j, i)) == self.y(j, n + 2 - i)
                    && s1.apply(self.y(j, i)) == self.x(j, n + 1 - i)
                    && s2.apply(self.y(j, i)) == self.x(j, n + 2 - i);
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

/// Labeling with the default seeds.
pub fn classify_dihedral_orbits(g: &Multigraph, a: &DihedralAction) -> Result<OrbitLabeling, LabelingError> {
    classify_with_shift(g, a, 0)
}

/// Labeling whose seeds are moved by `shift`: each `x_1` is advanced by
/// `(sigma2 sigma1)^shift`, and each `z_1` cycles through the
/// `sigma2`-fixed points of its orbit.
pub fn classify_with_shift(g: &Multigraph, a: &DihedralAction, shift: usize) -> Result<OrbitLabeling, LabelingError> {
    if let Some(v) = harmonic_violation(g, a.group()) {
        let e = &g.edges()[v.edge];
        return Err(LabelingError::NotHarmonic { edge: v.edge, u: g.label(e.u).into(), v: g.label(e.v).into() });
    }
    let n = a.n();
    let orbits = a.group().orbits();
    for o in &orbits {
        if o.len() != n && o.len() != 2 * n {
            let orbit = o.iter().map(|&v| g.label(v).to_string()).collect();
            return Err(LabelingError::OrbitSize { orbit, size: o.len(), n });
        }
    }
    match label_with(g, a, &orbits, shift, false) {
        Ok(l) => Ok(l),
        Err(first) => label_with(g, &a.swapped(), &orbits, shift, true).map_err(|_| first),
    }
}

fn label_with(
    g: &Multigraph,
    a: &DihedralAction,
    orbits: &[Vec<usize>],
    shift: usize,
    swapped: bool,
) -> Result<OrbitLabeling, LabelingError> {
    let n = a.n();
    let r = a.rotation();
    let (s1, s2) = (a.sigma1(), a.sigma2());
    let (mut z, mut x, mut y) = (Vec::new(), Vec::new(), Vec::new());
    let census = (orbits.iter().filter(|o| o.len() == n).count(), orbits.iter().filter(|o| o.len() != n).count());
    for o in orbits {
        if o.len() == n {
            let fixed: Vec<usize> = o.iter().copied().filter(|&v| s2.fixes(v)).collect();
            if fixed.is_empty() {
                let orbit = o.iter().map(|&v| g.label(v).to_string()).collect();
                return Err(LabelingError::LabelingImpossible { orbit, s: census.0, t: census.1 });
            }
            let mut cur = fixed[shift % fixed.len()];
            let mut zs = Vec::with_capacity(n);
            for _ in 0..n {
                zs.push(cur);
                cur = r.apply(cur);
            }
            z.push(zs);
        } else {
            let mut cur = r.power(shift).apply(o[0]);
            let mut xs = Vec::with_capacity(n);
            for _ in 0..n {
                xs.push(cur);
                cur = r.apply(cur);
            }
            // y_k = sigma1(x_{n+1-k})
            let ys: Vec<usize> = (1..=n).map(|k| s1.apply(xs[n - k])).collect();
            x.push(xs);
            y.push(ys);
        }
    }
    let l = OrbitLabeling { n, swapped, sigma1: s1.clone(), sigma2: s2.clone(), z, x, y };
    if !l.verify(g.vertex_count()) {
        let orbit = orbits[0].iter().map(|&v| g.label(v).to_string()).collect();
        return Err(LabelingError::LabelingImpossible { orbit, s: census.0, t: census.1 });
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn circulant_12(n: usize) -> (Multigraph, VertexPermutation, VertexPermutation) {
        let mut edges = Vec::new();
        for a in [1, 2] {
            for i in 0..n {
                edges.push((i, (i + a) % n));
            }
        }
        let g = Multigraph::new(n, edges).unwrap();
        // 0-based: s1(i) = n-1-i, s2(i) = n-i
        let s1 = VertexPermutation::new(&g, (0..n).map(|i| n - 1 - i).collect()).unwrap();
        let s2 = VertexPermutation::new(&g, (0..n).map(|i| (n - i) % n).collect()).unwrap();
        (g, s1, s2)
    }

    #[test]
    fn generated_group_sizes() {
        let (g, s1, s2) = circulant_12(7);
        assert_eq!(generate_group(&g, &[]).unwrap().order(), 1);
        assert_eq!(generate_group(&g, std::slice::from_ref(&s1)).unwrap().order(), 2);
        assert_eq!(generate_group(&g, &[s1, s2]).unwrap().order(), 14);
    }

    #[test]
    fn dihedral_elements_are_rotations_and_reflections() {
        let (g, s1, s2) = circulant_12(7);
        let a = DihedralAction::new(&g, s1.clone(), s2).unwrap();
        assert_eq!(a.n(), 7);
        let r = a.rotation();
        for k in 0..7 {
            assert!(a.group().contains(&r.power(k)));
            assert!(a.group().contains(&r.power(k).compose(&s1)));
        }
    }

    #[test]
    fn non_automorphism_is_rejected() {
        let g = Multigraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(VertexPermutation::new(&g, vec![1, 0, 2]), Err(ActionError::NotAutomorphism(..))));
        assert!(matches!(VertexPermutation::new(&g, vec![0, 0, 2]), Err(ActionError::NotBijective)));
    }

    #[test]
    fn harmonicity_examples() {
        // leaf swap on K_{1,3} fixes the centre, the third leaf and their edge
        let star = Multigraph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let swap = VertexPermutation::new(&star, vec![0, 2, 1, 3]).unwrap();
        let grp = generate_group(&star, &[swap]).unwrap();
        assert!(!is_harmonic(&star, &grp));
        // free rotation of C5
        let c5 = Multigraph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let rot = VertexPermutation::new(&c5, (0..5).map(|i| (i + 1) % 5).collect()).unwrap();
        let grp = generate_group(&c5, &[rot]).unwrap();
        assert!(is_harmonic(&c5, &grp));
        assert_eq!(grp.orbits(), vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(grp.stabilizer(3).order(), 1);
    }

    #[test]
    fn swapping_parallel_edges_keeps_harmonicity() {
        // two parallel edges between fixed endpoints, exchanged by the action
        let g = Multigraph::new(2, [(0, 1), (0, 1)]).unwrap();
        let swap = VertexPermutation::with_edge_map(&g, vec![0, 1], vec![1, 0]).unwrap();
        assert!(is_harmonic(&g, &generate_group(&g, &[swap]).unwrap()));
        let bad =
            VertexPermutation::with_edge_map(&Multigraph::new(3, [(0, 1), (1, 2)]).unwrap(), vec![0, 1, 2], vec![1, 0]);
        assert_eq!(bad, Err(ActionError::EdgeMapMismatch { edge: 0 }));
    }

    #[test]
    fn identity_orbits_are_singletons() {
        let g = Multigraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let grp = generate_group(&g, &[]).unwrap();
        assert_eq!(grp.orbits(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn circulant_labeling() {
        let (g, s1, s2) = circulant_12(7);
        let a = DihedralAction::new(&g, s1, s2).unwrap();
        let l = classify_dihedral_orbits(&g, &a).unwrap();
        assert_eq!((l.s(), l.t()), (1, 0));
        assert!(!l.swapped());
        // z_1 is fixed by sigma2, i.e. 0-based vertex 0
        assert_eq!(l.z(0, 1), 0);
        assert!(l.verify(7));
    }

    #[test]
    fn even_circulant_labels_with_either_seed() {
        let (g, s1, s2) = circulant_12(8);
        let a = DihedralAction::new(&g, s1, s2).unwrap();
        for shift in 0..4 {
            let l = classify_with_shift(&g, &a, shift).unwrap();
            assert!(l.verify(8));
            assert!(l.sigma2().fixes(l.z(0, 1)));
        }
    }

    #[test]
    fn wrap_is_one_based() {
        assert_eq!(wrap(0, 5), 5);
        assert_eq!(wrap(6, 5), 1);
        assert_eq!(wrap(-4, 5), 1);
        assert_eq!(wrap(3, 5), 3);
    }

    proptest! {
        #[test]
        fn orbit_stabilizer(n in 3usize..=9) {
            let (g, s1, s2) = circulant_12(n);
            let grp = generate_group(&g, &[s1, s2]).unwrap();
            for v in 0..n {
                prop_assert_eq!(grp.orbit_of(v).len() * grp.stabilizer(v).order(), grp.order());
            }
        }

        #[test]
        fn harmonicity_survives_relabelling(n in 3usize..=8, seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let (g, s1, s2) = circulant_12(n);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let h = Multigraph::new(n, g.edges().iter().map(|e| (perm[e.u], perm[e.v]))).unwrap();
            let mut inv = vec![0; n];
            for (i, &p) in perm.iter().enumerate() {
                inv[p] = i;
            }
            let conj = |s: &VertexPermutation| {
                VertexPermutation::new(&h, (0..n).map(|v| perm[s.apply(inv[v])]).collect()).unwrap()
            };
            let gg = generate_group(&g, &[s1.clone(), s2.clone()]).unwrap();
            let hg = generate_group(&h, &[conj(&s1), conj(&s2)]).unwrap();
            prop_assert_eq!(is_harmonic(&g, &gg), is_harmonic(&h, &hg));
        }
    }
}
