//! Finite abelian groups as invariant-factor chains, cokernels with
//! coordinate maps, and homomorphisms between cyclic decompositions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

use crate::json::{BigNum, JsonInt};
use crate::linalg::{integer_kernel, smith_normal_form, IntMatrix, Lattice, LinalgError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("cokernel is infinite (free rank {free_rank})")]
    InfiniteCokernel { free_rank: usize },
    #[error("cyclic order must be positive, got {0}")]
    InvalidOrder(BigInt),
    #[error("homomorphism is not well defined on source generator {generator}")]
    IllDefined { generator: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Finite abelian group `Z/d1 + ... + Z/dk` with `1 < d1 | d2 | ... | dk`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FinAbGroup {
    factors: Vec<BigInt>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_orders([n]).expect("cyclic order must be positive")
    }

    /// Canonical form of the direct sum of cyclic groups of the given orders.
    pub fn from_orders<T: Into<BigInt>>(orders: impl IntoIterator<Item = T>) -> Result<Self, AbelianError> {
        let mut f: Vec<BigInt> = Vec::new();
        for o in orders {
            let o = o.into();
            if !o.is_positive() {
                return Err(AbelianError::InvalidOrder(o));
            }
            f.push(o);
        }
        for i in 0..f.len() {
            for j in i + 1..f.len() {
                let g = f[i].gcd(&f[j]);
                let l = f[i].lcm(&f[j]);
                f[i] = g;
                f[j] = l;
            }
        }
        f.retain(|d| !d.is_one());
        Ok(FinAbGroup { factors: f })
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    /// Largest element order.
    pub fn exponent(&self) -> BigInt {
        self.factors.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    /// Minimal number of generators.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        Self::from_orders(self.factors.iter().chain(&other.factors).cloned()).expect("factors are positive")
    }

    /// `self` summed with itself `k` times.
    pub fn power(&self, k: usize) -> FinAbGroup {
        (0..k).fold(Self::trivial(), |acc, _| acc.direct_sum(self))
    }
}

pub fn is_isomorphic(a: &FinAbGroup, b: &FinAbGroup) -> bool {
    a.factors == b.factors
}

pub fn direct_sum(a: &FinAbGroup, b: &FinAbGroup) -> FinAbGroup {
    a.direct_sum(b)
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Serialize for FinAbGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let f: Vec<JsonInt<'_>> = self.factors.iter().map(JsonInt).collect();
        let mut st = s.serialize_struct("FinAbGroup", 1)?;
        st.serialize_field("invariant_factors", &f)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for FinAbGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            invariant_factors: Vec<BigNum>,
        }
        let raw = Raw::deserialize(d)?;
        FinAbGroup::from_orders(raw.invariant_factors.into_iter().map(|b| b.0)).map_err(serde::de::Error::custom)
    }
}

/// `Z^rows / colspan(relations)` with maps between ambient vectors and
/// group coordinates.
#[derive(Clone, Debug)]
pub struct Cokernel {
    group: FinAbGroup,
    ambient: usize,
    /// Rows of the left SNF transform for the nontrivial factors.
    projection: IntMatrix,
    /// Ambient representatives of the standard generators, one per column.
    generators: IntMatrix,
}

pub fn cokernel(relations: &IntMatrix) -> Result<Cokernel, AbelianError> {
    let snf = smith_normal_form(relations);
    let rows = relations.rows();
    let diag = snf.diagonal();
    let rank = snf.rank();
    if rank < rows {
        return Err(AbelianError::InfiniteCokernel { free_rank: rows - rank });
    }
    let keep: Vec<usize> = (0..rank).filter(|&i| !diag[i].is_one()).collect();
    let group = FinAbGroup { factors: keep.iter().map(|&i| diag[i].clone()).collect() };
    let projection = IntMatrix::from_fn(keep.len(), rows, |i, j| snf.u[(keep[i], j)].clone());
    let generators = snf.u_inv.select_columns(&keep);
    Ok(Cokernel { group, ambient: rows, projection, generators })
}

impl Cokernel {
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Class of an ambient vector, each coordinate reduced into `[0, d_k)`.
    pub fn project(&self, v: &[BigInt]) -> Result<Vec<BigInt>, AbelianError> {
        let raw = self.projection.mul_vec(v)?;
        Ok(raw.iter().zip(self.group.factors()).map(|(x, d)| x.mod_floor(d)).collect())
    }

    /// Ambient representative of the `k`-th standard generator.
    pub fn generator(&self, k: usize) -> Vec<BigInt> {
        self.generators.column(k)
    }

    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        self.generators.columns()
    }

    pub fn element_order(&self, coords: &[BigInt]) -> BigInt {
        element_order(&self.group, coords)
    }

    /// Subgroup generated by the classes of ambient vectors.
    pub fn subgroup(&self, gens: &[Vec<BigInt>]) -> Result<FinAbGroup, AbelianError> {
        let cols = gens.iter().map(|g| self.project(g)).collect::<Result<Vec<_>, _>>()?;
        let e = self.group.exponent();
        let hom = GroupHom::from_cyclic_orders(
            vec![e; cols.len()],
            self.group.factors().to_vec(),
            IntMatrix::from_columns(self.group.rank(), &cols),
        )?;
        Ok(hom.image())
    }
}

/// Order of an element given in coordinates of `g`.
pub fn element_order(g: &FinAbGroup, coords: &[BigInt]) -> BigInt {
    g.factors().iter().zip(coords).map(|(d, c)| d / d.gcd(c)).fold(BigInt::one(), |acc, o| acc.lcm(&o))
}

/// Homomorphism `(+) Z/s_j -> (+) Z/t_i` given by an integer matrix acting on
/// cyclic-generator coordinates. The decompositions need not be canonical,
/// so block-structured direct sums keep their coordinates.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: Vec<BigInt>,
    target: Vec<BigInt>,
    matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(source: &FinAbGroup, target: &FinAbGroup, matrix: IntMatrix) -> Result<Self, AbelianError> {
        Self::from_cyclic_orders(source.factors().to_vec(), target.factors().to_vec(), matrix)
    }

    pub fn from_cyclic_orders(
        source: Vec<BigInt>,
        target: Vec<BigInt>,
        matrix: IntMatrix,
    ) -> Result<Self, AbelianError> {
        for o in source.iter().chain(&target) {
            if !o.is_positive() {
                return Err(AbelianError::InvalidOrder(o.clone()));
            }
        }
        if matrix.rows() != target.len() {
            return Err(LinalgError::DimensionMismatch { expected: target.len(), found: matrix.rows() }.into());
        }
        if matrix.cols() != source.len() {
            return Err(LinalgError::DimensionMismatch { expected: source.len(), found: matrix.cols() }.into());
        }
        for (j, s) in source.iter().enumerate() {
            let ok = (0..target.len()).all(|i| (&matrix[(i, j)] * s).is_multiple_of(&target[i]));
            if !ok {
                return Err(AbelianError::IllDefined { generator: j });
            }
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn source_group(&self) -> FinAbGroup {
        FinAbGroup::from_orders(self.source.clone()).expect("validated orders")
    }

    pub fn target_group(&self) -> FinAbGroup {
        FinAbGroup::from_orders(self.target.clone()).expect("validated orders")
    }

    fn target_relations(&self) -> IntMatrix {
        let m = self.target.len();
        IntMatrix::from_fn(m, m, |i, j| if i == j { self.target[i].clone() } else { BigInt::zero() })
    }

    /// Lattice `{x in Z^k : matrix x = 0 in the target}`, one basis column each.
    fn preimage_of_zero(&self) -> IntMatrix {
        let k = self.source.len();
        let block = self.matrix.hcat(&self.target_relations()).expect("row counts agree");
        let ker = integer_kernel(&block);
        IntMatrix::from_fn(k, ker.cols(), |i, j| ker[(i, j)].clone())
    }

    pub fn kernel(&self) -> FinAbGroup {
        let k = self.source.len();
        if k == 0 {
            return FinAbGroup::trivial();
        }
        // R_s lies inside the preimage lattice B; kernel = B / R_s.
        let lat = Lattice::from_generators(&self.preimage_of_zero());
        let basis = lat.basis().clone();
        let basis_lat = Lattice::from_generators(&basis);
        let cols: Vec<Vec<BigInt>> = (0..k)
            .map(|j| {
                let mut r = vec![BigInt::zero(); k];
                r[j] = self.source[j].clone();
                basis_lat.coordinates(&r).expect("dimension").expect("well-defined hom")
            })
            .collect();
        let y = IntMatrix::from_columns(basis.cols(), &cols);
        cokernel(&y).expect("finite index").group
    }

    pub fn image_order(&self) -> BigInt {
        self.source_group().order() / self.kernel().order()
    }

    /// Image as an abstract group: `Z^k / preimage_of_zero`.
    pub fn image(&self) -> FinAbGroup {
        if self.source.is_empty() {
            return FinAbGroup::trivial();
        }
        cokernel(&self.preimage_of_zero()).expect("finite image").group
    }

    /// Target modulo the image.
    pub fn cokernel(&self) -> FinAbGroup {
        let block = self.matrix.hcat(&self.target_relations()).expect("row counts agree");
        cokernel(&block).expect("finite target").group
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }
}

pub fn kernel_of_hom(h: &GroupHom) -> FinAbGroup {
    h.kernel()
}

pub fn image_order(h: &GroupHom) -> BigInt {
    h.image_order()
}
