//! Named graph families with their dihedral actions.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::{generate_group, harmonic_violation, ActionError, DihedralAction, VertexPermutation};
use crate::multigraph::{GraphError, Multigraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("action is not harmonic: edge {0}-{1} is fixed together with both endpoints")]
    NonHarmonic(String, String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// A graph with a dihedral action given by its two generating involutions.
#[derive(Clone, Debug)]
pub struct Family {
    pub name: String,
    pub graph: Multigraph,
    pub action: DihedralAction,
}

impl Family {
    fn new(name: String, graph: Multigraph, s1: Vec<usize>, s2: Vec<usize>) -> Result<Self, FamilyError> {
        let s1 = VertexPermutation::new(&graph, s1)?;
        let s2 = VertexPermutation::new(&graph, s2)?;
        Self::from_perms(name, graph, s1, s2)
    }

    fn from_perms(
        name: String,
        graph: Multigraph,
        s1: VertexPermutation,
        s2: VertexPermutation,
    ) -> Result<Self, FamilyError> {
        let action = DihedralAction::new(&graph, s1, s2)?;
        Ok(Family { name, graph, action })
    }

    fn require_harmonic(self) -> Result<Self, FamilyError> {
        match harmonic_violation(&self.graph, self.action.group()) {
            Some(v) => {
                let e = &self.graph.edges()[v.edge];
                Err(FamilyError::NonHarmonic(self.graph.label(e.u).into(), self.graph.label(e.v).into()))
            }
            None => Ok(self),
        }
    }
}

fn labels(prefix: &str, n: usize) -> impl Iterator<Item = String> + '_ {
    (1..=n).map(move |i| format!("{prefix}{i}"))
}

/// 1-based index `i` reduced modulo `n`, returned 0-based.
fn m0(i: i64, n: usize) -> usize {
    (i - 1).rem_euclid(n as i64) as usize
}

/// `C_n^{steps}`: vertices `v1..vn`, and for each step `a` the `n` edges
/// `v_i - v_{i+a}`. Steps are deduplicated by value only, so `a` and
/// `n - a` together give doubled edges.
pub fn circulant(n: usize, steps: &[usize]) -> Result<Family, FamilyError> {
    if n < 3 {
        return Err(FamilyError::InvalidParameter(format!("circulant needs n >= 3, got {n}")));
    }
    let mut st: Vec<usize> = steps.to_vec();
    st.sort_unstable();
    st.dedup();
    if st.is_empty() {
        return Err(FamilyError::InvalidParameter("circulant needs at least one step".into()));
    }
    if let Some(&a) = st.iter().find(|&&a| a == 0 || a >= n) {
        return Err(FamilyError::InvalidParameter(format!("step {a} outside 1..{n}")));
    }
    let edges = st.iter().flat_map(|&a| (0..n).map(move |i| (i, (i + a) % n)));
    let g = Multigraph::with_labels(labels("v", n).collect(), edges)?;
    let s1 = (0..n).map(|k| n - 1 - k).collect();
    let s2 = (0..n).map(|k| (n - k) % n).collect();
    let name = format!("C_{n}^{{{}}}", st.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
    Family::new(name, g, s1, s2)?.require_harmonic()
}

/// Inner `n`-cycle `z`, outer `2n`-cycle `x1 y2 x2 y3 ... xn y1`, spokes
/// `z_i - x_i`, `z_i - y_i`. `sigma1` fixes `z1`; `sigma2` is the adjacent
/// reflection.
pub fn concentric_polygon(n: usize) -> Result<Family, FamilyError> {
    if n < 3 {
        return Err(FamilyError::InvalidParameter(format!("concentric polygon needs n >= 3, got {n}")));
    }
    let z = |i: i64| m0(i, n);
    let x = |i: i64| n + m0(i, n);
    let y = |i: i64| 2 * n + m0(i, n);
    let names = labels("z", n).chain(labels("x", n)).chain(labels("y", n)).collect();
    let mut edges = Vec::with_capacity(5 * n);
    for i in 1..=n as i64 {
        edges.push((z(i), z(i + 1)));
        edges.push((x(i), y(i)));
        edges.push((x(i), y(i + 1)));
        edges.push((z(i), x(i)));
        edges.push((z(i), y(i)));
    }
    let g = Multigraph::with_labels(names, edges)?;
    // index map i -> c - i, exchanging x and y
    let reflect = |c: i64| {
        let mut p = vec![0; 3 * n];
        for i in 1..=n as i64 {
            p[z(i)] = z(c - i);
            p[x(i)] = y(c - i);
            p[y(i)] = x(c - i);
        }
        p
    };
    let nn = n as i64;
    Family::new(format!("G_{n}"), g, reflect(nn + 2), reflect(nn + 1))?.require_harmonic()
}

/// `K_{2,4}` on `{x1, x2} x {a1, a2, b1, b2}`; `sigma1` swaps `x1, x2`,
/// `sigma2` swaps each `a_i` with `b_i`.
pub fn klein_example() -> Result<Family, FamilyError> {
    let names: Vec<String> = ["x1", "x2", "a1", "a2", "b1", "b2"].iter().map(|s| s.to_string()).collect();
    let edges = (0..2).flat_map(|xk| (2..6).map(move |w| (xk, w)));
    let g = Multigraph::with_labels(names, edges)?;
    Family::new("Klein".into(), g, vec![1, 0, 2, 3, 4, 5], vec![0, 1, 4, 5, 2, 3])
}

/// Doubled edges from `v1` and `v2` to each of `x1, x2, x3`, with the
/// edge permutations of the original example.
pub fn intro_counterexample() -> Result<Family, FamilyError> {
    let names: Vec<String> = ["v1", "x1", "x2", "x3", "v2"].iter().map(|s| s.to_string()).collect();
    let spec = [
        ("a1", 0, 1),
        ("a2", 0, 1),
        ("b1", 0, 2),
        ("b2", 0, 2),
        ("c1", 0, 3),
        ("c2", 0, 3),
        ("d1", 1, 4),
        ("d2", 1, 4),
        ("e1", 2, 4),
        ("e2", 2, 4),
        ("f1", 3, 4),
        ("f2", 3, 4),
    ];
    let g = Multigraph::with_edge_labels(names, spec.iter().map(|&(l, u, v)| (u, v, l.to_string())).collect())?;
    let edge_perm = |cycles: &[(&str, &str)]| {
        let idx = |l: &str| g.edges().iter().position(|e| e.label.as_deref() == Some(l)).expect("known label");
        let mut p: Vec<usize> = (0..g.edge_count()).collect();
        for &(a, b) in cycles {
            p[idx(a)] = idx(b);
            p[idx(b)] = idx(a);
        }
        p
    };
    let e1 = edge_perm(&[("a1", "a2"), ("b1", "c2"), ("b2", "c1"), ("d1", "d2"), ("e1", "f2"), ("e2", "f1")]);
    let e2 = edge_perm(&[("a1", "b2"), ("a2", "b1"), ("c1", "c2"), ("d1", "e2"), ("d2", "e1"), ("f1", "f2")]);
    let s1 = VertexPermutation::with_edge_map(&g, vec![0, 1, 3, 2, 4], e1)?;
    let s2 = VertexPermutation::with_edge_map(&g, vec![0, 2, 1, 3, 4], e2)?;
    Family::from_perms("intro".into(), g, s1, s2)
}

/// `n` copies of `base` glued in a cycle, `b` of copy `i` identified with
/// `a` of copy `i + 1`. `sigma1` sends copy `i` to copy `n + 1 - i` and
/// `sigma2` to copy `n + 2 - i`, both applying `phi`.
pub fn chained_copies(base: &Multigraph, phi: &[usize], a: usize, b: usize, n: usize) -> Result<Family, FamilyError> {
    let k = base.vertex_count();
    if n < 2 {
        return Err(FamilyError::InvalidParameter(format!("need at least 2 copies, got {n}")));
    }
    if a >= k || b >= k || a == b {
        return Err(FamilyError::InvalidParameter("endpoints must be distinct base vertices".into()));
    }
    let phi_perm = VertexPermutation::new(base, phi.to_vec())?;
    if !phi_perm.compose(&phi_perm).is_identity() {
        return Err(FamilyError::InvalidParameter("phi is not an involution".into()));
    }
    if phi[a] != b {
        return Err(FamilyError::InvalidParameter("phi(a) must equal b".into()));
    }
    let others: Vec<usize> = (0..k).filter(|&u| u != b).collect();
    let rank = |u: usize| others.iter().position(|&w| w == u).expect("u != b");
    let m = k - 1;
    let index = |c: usize, u: usize| {
        let c = c % n;
        if u == b {
            ((c + 1) % n) * m + rank(a)
        } else {
            c * m + rank(u)
        }
    };
    let names: Vec<String> = (0..n)
        .flat_map(|c| others.iter().map(move |&u| (c, u)))
        .map(|(c, u)| format!("{}_{}", base.label(u), c + 1))
        .collect();
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|c| base.edges().iter().map(move |e| (index(c, e.u), index(c, e.v)))).collect();
    let g = Multigraph::with_labels(names, edges)?;
    let reflect = |target: &dyn Fn(usize) -> usize| {
        let mut p = vec![0; n * m];
        for c in 0..n {
            for &u in &others {
                p[index(c, u)] = index(target(c), phi[u]);
            }
        }
        p
    };
    let s1 = reflect(&|c| n - 1 - c);
    let s2 = reflect(&|c| (n - c) % n);
    Family::new(format!("chain_{n}"), g, s1, s2)?.require_harmonic()
}

/// Base graphs for [`chained_copies`], each with `a = 0` and `b = phi(a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainBase {
    /// single edge `a - b`
    Edge,
    /// `a - m - b`, `m` fixed
    Path,
    /// 4-cycle `a - p - b - q`, `phi = (a b)(p q)`
    Square,
    /// complete graph on `a, p, b, q`, `phi = (a b)(p q)`
    K4,
    /// `a - m - b` with `p, q` hanging between `a, m` and `b, m`
    Kite,
}

impl ChainBase {
    pub const ALL: [ChainBase; 5] =
        [ChainBase::Edge, ChainBase::Path, ChainBase::Square, ChainBase::K4, ChainBase::Kite];

    pub fn name(self) -> &'static str {
        match self {
            ChainBase::Edge => "edge",
            ChainBase::Path => "path",
            ChainBase::Square => "square",
            ChainBase::K4 => "k4",
            ChainBase::Kite => "kite",
        }
    }

    pub fn parse(s: &str) -> Option<ChainBase> {
        Self::ALL.into_iter().find(|b| b.name() == s)
    }

    /// `(graph, phi, a, b)`
    pub fn build(self) -> (Multigraph, Vec<usize>, usize, usize) {
        let named = |ls: &[&str], es: &[(usize, usize)]| {
            Multigraph::with_labels(ls.iter().map(|s| s.to_string()).collect(), es.iter().copied())
                .expect("static graph")
        };
        match self {
            ChainBase::Edge => (named(&["a", "b"], &[(0, 1)]), vec![1, 0], 0, 1),
            ChainBase::Path => (named(&["a", "m", "b"], &[(0, 1), (1, 2)]), vec![2, 1, 0], 0, 2),
            ChainBase::Square => {
                (named(&["a", "p", "b", "q"], &[(0, 1), (1, 2), (2, 3), (3, 0)]), vec![2, 3, 0, 1], 0, 2)
            }
            ChainBase::K4 => (
                named(&["a", "p", "b", "q"], &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
                vec![2, 3, 0, 1],
                0,
                2,
            ),
            ChainBase::Kite => (
                named(&["a", "m", "b", "p", "q"], &[(0, 1), (1, 2), (0, 3), (2, 4), (3, 1), (4, 1)]),
                vec![2, 1, 0, 4, 3],
                0,
                2,
            ),
        }
    }
}

pub fn chained_preset(base: ChainBase, n: usize) -> Result<Family, FamilyError> {
    let (g, phi, a, b) = base.build();
    let mut f = chained_copies(&g, &phi, a, b, n)?;
    f.name = format!("chain_{}_{n}", base.name());
    Ok(f)
}

/// `2n`-cycle `x1 y2 x2 ... xn y1` with both reflections acting freely.
pub fn twisted_ring(n: usize) -> Result<Family, FamilyError> {
    linked_rings(n, 1)
}

/// `r` copies of the twisted `2n`-ring joined `x - x` and `y - y` between
/// consecutive copies: `r` orbits of size `2n`, none of size `n`.
pub fn linked_rings(n: usize, r: usize) -> Result<Family, FamilyError> {
    if n < 2 || r < 1 {
        return Err(FamilyError::InvalidParameter(format!("linked rings need n >= 2 and r >= 1, got n={n}, r={r}")));
    }
    let x = |i: i64, j: usize| 2 * n * j + m0(i, n);
    let y = |i: i64, j: usize| 2 * n * j + n + m0(i, n);
    let mut names = Vec::with_capacity(2 * n * r);
    for j in 1..=r {
        names.extend((1..=n).map(|i| format!("x{i}_{j}")));
        names.extend((1..=n).map(|i| format!("y{i}_{j}")));
    }
    let mut edges = Vec::new();
    for j in 0..r {
        for i in 1..=n as i64 {
            edges.push((x(i, j), y(i, j)));
            edges.push((x(i, j), y(i + 1, j)));
        }
    }
    for j in 1..r {
        for i in 1..=n as i64 {
            edges.push((x(i, j - 1), x(i, j)));
            edges.push((y(i, j - 1), y(i, j)));
        }
    }
    let g = Multigraph::with_labels(names, edges)?;
    let reflect = |c: i64| {
        let mut p = vec![0; 2 * n * r];
        for j in 0..r {
            for i in 1..=n as i64 {
                p[x(i, j)] = y(c - i, j);
                p[y(i, j)] = x(c - i, j);
            }
        }
        p
    };
    let nn = n as i64;
    let name = if r == 1 { format!("ring_{n}") } else { format!("rings_{n}x{r}") };
    Family::new(name, g, reflect(nn + 1), reflect(nn + 2))?.require_harmonic()
}

/// `v1..vk, vinf`: path edges, chords `v_i - v_{i+2}` (with `v_{k+1}` read
/// as `vinf`), and a doubled edge `v_k - vinf`.
pub fn h_graph(k: usize) -> Result<Multigraph, FamilyError> {
    if k < 1 {
        return Err(FamilyError::InvalidParameter("h_graph needs k >= 1".into()));
    }
    let names = labels("v", k).chain(std::iter::once("vinf".to_string())).collect();
    let mut edges: Vec<(usize, usize)> = (0..k - 1).map(|i| (i, i + 1)).collect();
    edges.extend((0..k - 1).map(|i| (i, (i + 2).min(k))));
    edges.extend([(k - 1, k), (k - 1, k)]);
    Ok(Multigraph::with_labels(names, edges)?)
}

/// `F_0 = 0`, `F_1 = F_2 = 1`.
pub fn fibonacci(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    a
}

/// Serializable description of a family instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Circulant { n: usize, steps: Vec<usize> },
    Concentric { n: usize },
    Klein,
    Intro,
    Chained { base: ChainBase, n: usize },
    Ring { n: usize },
    LinkedRings { n: usize, r: usize },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Family, FamilyError> {
        match self {
            FamilySpec::Circulant { n, steps } => circulant(*n, steps),
            FamilySpec::Concentric { n } => concentric_polygon(*n),
            FamilySpec::Klein => klein_example(),
            FamilySpec::Intro => intro_counterexample(),
            FamilySpec::Chained { base, n } => chained_preset(*base, *n),
            FamilySpec::Ring { n } => twisted_ring(*n),
            FamilySpec::LinkedRings { n, r } => linked_rings(*n, *r),
        }
    }
}

/// Group generated by a single element, for quotients by one involution or
/// by the rotation.
pub fn cyclic_subgroup(g: &Multigraph, p: &VertexPermutation) -> crate::action::PermGroup {
    generate_group(g, std::slice::from_ref(p)).expect("permutation of this graph")
}
