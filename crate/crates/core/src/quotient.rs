//! Quotient multigraphs under harmonic actions, pullback of divisors, the
//! pullback criterion, and leaf-peeling firing scripts over tree quotients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::action::{harmonic_violation, PermGroup};
use crate::critical::{Divisor, FiringScript};
use crate::multigraph::Multigraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("action is not harmonic: a non-identity element fixes edge {edge} and both its endpoints")]
    NotHarmonic { edge: usize },
    #[error("divisor has length {found}, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("divisor has degree {0}, expected 0")]
    NonzeroDegree(BigInt),
    #[error("quotient graph is not a tree")]
    NotTree,
    #[error("divisor is not a pullback from the quotient")]
    NotPullback,
}

/// Quotient `G / group` with the projection `phi` and multiplicities
/// `m(v) = |Stab(v)|`.
#[derive(Clone, Debug)]
pub struct QuotientResult {
    quotient: Multigraph,
    vertex_map: Vec<usize>,
    multiplicity: Vec<usize>,
    fibers: Vec<Vec<usize>>,
    collapsed_edges: usize,
    group_order: usize,
}

/// Vertices are the orbits (named `[label]` after their lowest-index
/// vertex); one edge per edge orbit joining distinct vertex orbits.
pub fn quotient_graph(g: &Multigraph, group: &PermGroup) -> Result<QuotientResult, QuotientError> {
    if let Some(v) = harmonic_violation(g, group) {
        return Err(QuotientError::NotHarmonic { edge: v.edge });
    }
    let fibers = group.orbits();
    let mut vertex_map = vec![0; g.vertex_count()];
    for (k, f) in fibers.iter().enumerate() {
        for &v in f {
            vertex_map[v] = k;
        }
    }
    let mut edges = Vec::new();
    let mut collapsed_edges = 0;
    for orbit in group.edge_orbits() {
        let e = &g.edges()[orbit[0]];
        let (a, b) = (vertex_map[e.u], vertex_map[e.v]);
        if a == b {
            collapsed_edges += 1;
        } else {
            edges.push((a, b));
        }
    }
    let labels = fibers.iter().map(|f| format!("[{}]", g.label(f[0]))).collect();
    let quotient = Multigraph::with_labels(labels, edges).expect("orbit indices are in range");
    let multiplicity = (0..g.vertex_count()).map(|v| group.stabilizer(v).order()).collect();
    Ok(QuotientResult { quotient, vertex_map, multiplicity, fibers, collapsed_edges, group_order: group.order() })
}

impl QuotientResult {
    pub fn quotient(&self) -> &Multigraph {
        &self.quotient
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn multiplicity(&self) -> &[usize] {
        &self.multiplicity
    }

    pub fn fibers(&self) -> &[Vec<usize>] {
        &self.fibers
    }

    pub fn collapsed_edges(&self) -> usize {
        self.collapsed_edges
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn source_vertex_count(&self) -> usize {
        self.vertex_map.len()
    }

    /// `v -> m(v) * d(phi(v))`.
    pub fn pullback(&self, d: &Divisor) -> Result<Divisor, QuotientError> {
        let nq = self.quotient.vertex_count();
        if d.len() != nq {
            return Err(QuotientError::Length { expected: nq, found: d.len() });
        }
        Ok(Divisor::new(
            self.vertex_map.iter().zip(&self.multiplicity).map(|(&q, &m)| d.get(q) * BigInt::from(m)).collect(),
        ))
    }

    /// The divisor on the quotient whose pullback is `delta`, if any.
    pub fn pullback_witness(&self, delta: &Divisor) -> Result<Option<Divisor>, QuotientError> {
        let n = self.source_vertex_count();
        if delta.len() != n {
            return Err(QuotientError::Length { expected: n, found: delta.len() });
        }
        let deg = delta.degree();
        if !deg.is_zero() {
            return Err(QuotientError::NonzeroDegree(deg));
        }
        let mut hat = Vec::with_capacity(self.fibers.len());
        for f in &self.fibers {
            let x = delta.get(f[0]);
            if f.iter().any(|&v| delta.get(v) != x) {
                return Ok(None);
            }
            let (q, r) = x.div_rem(&BigInt::from(self.multiplicity[f[0]]));
            if !r.is_zero() {
                return Ok(None);
            }
            hat.push(q);
        }
        Ok(Some(Divisor::new(hat)))
    }

    pub fn is_pullback(&self, delta: &Divisor) -> Result<bool, QuotientError> {
        Ok(self.pullback_witness(delta)?.is_some())
    }

    /// Script constant on orbits with `apply_firing(delta, script) = 0`,
    /// built by repeatedly firing a leaf together with everything already
    /// peeled behind it.
    pub fn tree_reduce(&self, delta: &Divisor) -> Result<FiringScript, QuotientError> {
        if !self.quotient.is_tree() {
            return Err(QuotientError::NotTree);
        }
        let mut residual = self.pullback_witness(delta)?.ok_or(QuotientError::NotPullback)?.into_values();
        let q = &self.quotient;
        let nq = q.vertex_count();
        let mut neighbours: Vec<Vec<usize>> = vec![Vec::new(); nq];
        for e in q.edges() {
            neighbours[e.u].push(e.v);
            neighbours[e.v].push(e.u);
        }
        let mut alive = vec![true; nq];
        let mut degree: Vec<usize> = neighbours.iter().map(Vec::len).collect();
        let mut bag: Vec<Vec<usize>> = (0..nq).map(|v| vec![v]).collect();
        let mut script = vec![BigInt::zero(); nq];
        for _ in 1..nq {
            let leaf = (0..nq).find(|&v| alive[v] && degree[v] == 1).expect("a tree has a leaf");
            let parent = *neighbours[leaf].iter().find(|&&w| alive[w]).expect("leaf has a neighbour");
            let times = std::mem::take(&mut residual[leaf]);
            for &w in &bag[leaf] {
                script[w] += &times;
            }
            residual[parent] += times;
            let peeled = std::mem::take(&mut bag[leaf]);
            bag[parent].extend(peeled);
            alive[leaf] = false;
            degree[parent] -= 1;
        }
        Ok(FiringScript::new(self.vertex_map.iter().map(|&v| script[v].clone()).collect()))
    }
}

pub fn pullback(q: &QuotientResult, d: &Divisor) -> Result<Divisor, QuotientError> {
    q.pullback(d)
}

pub fn is_pullback(q: &QuotientResult, delta: &Divisor) -> Result<bool, QuotientError> {
    q.is_pullback(delta)
}

pub fn tree_reduce(q: &QuotientResult, delta: &Divisor) -> Result<FiringScript, QuotientError> {
    q.tree_reduce(delta)
}
