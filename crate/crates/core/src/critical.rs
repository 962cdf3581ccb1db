//! Divisors, chip-firing, and the critical group `D/L` with its projection.

use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::abelian::{cokernel, AbelianError, Cokernel, FinAbGroup};
use crate::linalg::{IntMatrix, Lattice};
use crate::multigraph::{GraphError, Multigraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriticalError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("divisor has degree {0}, expected 0")]
    NonzeroDegree(BigInt),
    #[error("vector has length {found}, graph has {expected} vertices")]
    Length { expected: usize, found: usize },
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

/// Integer-valued function on the vertices of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Divisor {
    values: Vec<BigInt>,
}

impl Divisor {
    pub fn zero(n: usize) -> Self {
        Divisor { values: vec![BigInt::zero(); n] }
    }

    pub fn new(values: Vec<BigInt>) -> Self {
        Divisor { values }
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        Divisor { values: values.iter().map(|&x| BigInt::from(x)).collect() }
    }

    /// `1` at `v`, `0` elsewhere.
    pub fn unit(n: usize, v: usize) -> Self {
        let mut d = Self::zero(n);
        d.values[v] = BigInt::one();
        d
    }

    /// `v - w` as a divisor.
    pub fn difference(n: usize, v: usize, w: usize) -> Self {
        let mut d = Self::zero(n);
        d.values[v] += 1;
        d.values[w] -= 1;
        d
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn into_values(self) -> Vec<BigInt> {
        self.values
    }

    pub fn get(&self, v: usize) -> &BigInt {
        &self.values[v]
    }

    pub fn set(&mut self, v: usize, x: BigInt) {
        self.values[v] = x;
    }

    pub fn add_at(&mut self, v: usize, x: &BigInt) {
        self.values[v] += x;
    }

    pub fn degree(&self) -> BigInt {
        self.values.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> Divisor {
        Divisor { values: self.values.iter().map(|x| x * k).collect() }
    }
}

impl Add for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        assert_eq!(self.len(), rhs.len(), "divisors on different graphs");
        Divisor { values: self.values.iter().zip(&rhs.values).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        assert_eq!(self.len(), rhs.len(), "divisors on different graphs");
        Divisor { values: self.values.iter().zip(&rhs.values).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        Divisor { values: self.values.iter().map(|x| -x).collect() }
    }
}

/// Number of times each vertex fires; negative entries borrow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiringScript {
    values: Vec<BigInt>,
}

impl FiringScript {
    pub fn zero(n: usize) -> Self {
        FiringScript { values: vec![BigInt::zero(); n] }
    }

    pub fn new(values: Vec<BigInt>) -> Self {
        FiringScript { values }
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        FiringScript { values: values.iter().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `delta - L s` with `L = D - A`.
pub fn apply_firing(g: &Multigraph, delta: &Divisor, s: &FiringScript) -> Result<Divisor, CriticalError> {
    fire(&g.laplacian(), delta, s)
}

fn fire(laplacian: &IntMatrix, delta: &Divisor, s: &FiringScript) -> Result<Divisor, CriticalError> {
    let n = laplacian.rows();
    for len in [delta.len(), s.len()] {
        if len != n {
            return Err(CriticalError::Length { expected: n, found: len });
        }
    }
    let ls = laplacian.mul_vec(&s.values).expect("length checked");
    Ok(Divisor { values: delta.values.iter().zip(ls).map(|(d, l)| d - l).collect() })
}

/// Critical group of a connected graph with the projection from degree-0
/// divisors onto group coordinates.
#[derive(Clone, Debug)]
pub struct CriticalGroup {
    root: VertexId,
    vertex_count: usize,
    laplacian: IntMatrix,
    reduced: IntMatrix,
    cokernel: Cokernel,
    principal: Lattice,
}

/// Rooted at vertex 0. A single vertex has the trivial group.
pub fn critical_group(g: &Multigraph) -> Result<CriticalGroup, CriticalError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(GraphError::TooSmall(0).into());
    }
    let root = VertexId(0);
    let reduced = if n == 1 { IntMatrix::zeros(0, 0) } else { g.reduced_laplacian(root)? };
    let cokernel = cokernel(&reduced)?;
    let principal = Lattice::from_generators(&reduced);
    Ok(CriticalGroup { root, vertex_count: n, laplacian: g.laplacian(), reduced, cokernel, principal })
}

impl CriticalGroup {
    pub fn group(&self) -> &FinAbGroup {
        self.cokernel.group()
    }

    pub fn order(&self) -> BigInt {
        self.group().order()
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn laplacian(&self) -> &IntMatrix {
        &self.laplacian
    }

    pub fn reduced_laplacian(&self) -> &IntMatrix {
        &self.reduced
    }

    pub fn cokernel(&self) -> &Cokernel {
        &self.cokernel
    }

    fn check_length(&self, len: usize) -> Result<(), CriticalError> {
        if len == self.vertex_count {
            Ok(())
        } else {
            Err(CriticalError::Length { expected: self.vertex_count, found: len })
        }
    }

    fn check_degree_zero(&self, delta: &Divisor) -> Result<(), CriticalError> {
        self.check_length(delta.len())?;
        let d = delta.degree();
        if d.is_zero() {
            Ok(())
        } else {
            Err(CriticalError::NonzeroDegree(d))
        }
    }

    /// Drops the root coordinate.
    pub fn reduce(&self, delta: &Divisor) -> Vec<BigInt> {
        let r = self.root.index();
        delta.values.iter().enumerate().filter(|&(i, _)| i != r).map(|(_, x)| x.clone()).collect()
    }

    /// Inverse of [`reduce`](Self::reduce) on degree-0 divisors.
    pub fn lift(&self, reduced: &[BigInt]) -> Divisor {
        let r = self.root.index();
        let mut values: Vec<BigInt> = reduced.to_vec();
        let rest: BigInt = reduced.iter().sum();
        values.insert(r, -rest);
        Divisor { values }
    }

    pub fn project(&self, delta: &Divisor) -> Result<Vec<BigInt>, CriticalError> {
        self.check_degree_zero(delta)?;
        Ok(self.cokernel.project(&self.reduce(delta))?)
    }

    pub fn is_principal(&self, delta: &Divisor) -> Result<bool, CriticalError> {
        self.check_degree_zero(delta)?;
        Ok(self.principal.contains(&self.reduce(delta)).expect("length checked"))
    }

    /// Order of the class of `delta`.
    pub fn class_order(&self, delta: &Divisor) -> Result<BigInt, CriticalError> {
        Ok(self.cokernel.element_order(&self.project(delta)?))
    }

    /// Divisor representing the `k`-th standard generator.
    pub fn generator_divisor(&self, k: usize) -> Divisor {
        self.lift(&self.cokernel.generator(k))
    }

    pub fn generator_divisors(&self) -> Vec<Divisor> {
        (0..self.group().rank()).map(|k| self.generator_divisor(k)).collect()
    }

    pub fn apply_firing(&self, delta: &Divisor, s: &FiringScript) -> Result<Divisor, CriticalError> {
        fire(&self.laplacian, delta, s)
    }

    fn reduced_generators(&self, gens: &[Divisor]) -> Result<Vec<Vec<BigInt>>, CriticalError> {
        gens.iter()
            .map(|d| {
                self.check_degree_zero(d)?;
                Ok(self.reduce(d))
            })
            .collect()
    }

    pub fn subgroup_generated(&self, gens: &[Divisor]) -> Result<FinAbGroup, CriticalError> {
        Ok(self.cokernel.subgroup(&self.reduced_generators(gens)?)?)
    }

    /// Cokernel of `[reduced Laplacian | reduced generators]`.
    pub fn quotient_by_subgroup(&self, gens: &[Divisor]) -> Result<Cokernel, CriticalError> {
        let cols = self.reduced_generators(gens)?;
        let g = IntMatrix::from_columns(self.vertex_count - 1, &cols);
        let rel = self.reduced.hcat(&g).expect("row counts agree");
        Ok(cokernel(&rel)?)
    }
}

pub fn subgroup_generated(cg: &CriticalGroup, gens: &[Divisor]) -> Result<FinAbGroup, CriticalError> {
    cg.subgroup_generated(gens)
}

pub fn quotient_by_subgroup(cg: &CriticalGroup, gens: &[Divisor]) -> Result<FinAbGroup, CriticalError> {
    Ok(cg.quotient_by_subgroup(gens)?.group().clone())
}
