//! Brute-force cross-checks for small instances: spanning-tree enumeration,
//! subgroup closure and kernel enumeration. Refuses graphs beyond
//! [`MAX_VERTICES`] vertices or [`MAX_EDGES`] edges.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::abelian::GroupHom;
use crate::critical::{CriticalGroup, Divisor};
use crate::decomposition::{Check, DecompositionContext, Part, Quantity, Status};
use crate::multigraph::{brute_force_spanning_trees, Multigraph};

pub const MAX_VERTICES: usize = 12;
pub const MAX_EDGES: usize = 20;
/// Largest group enumerated element by element.
pub const MAX_ELEMENTS: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle refused: {vertices} vertices / {edges} edges exceeds the cap of {MAX_VERTICES} / {MAX_EDGES}")]
    TooLarge { vertices: usize, edges: usize },
    #[error("oracle refused: group of order {0} exceeds the enumeration cap of {MAX_ELEMENTS}")]
    GroupTooLarge(BigInt),
}

pub fn check_size(g: &Multigraph) -> Result<(), OracleError> {
    if g.vertex_count() > MAX_VERTICES || g.edge_count() > MAX_EDGES {
        return Err(OracleError::TooLarge { vertices: g.vertex_count(), edges: g.edge_count() });
    }
    Ok(())
}

pub fn spanning_trees(g: &Multigraph) -> Result<u64, OracleError> {
    check_size(g)?;
    Ok(brute_force_spanning_trees(g))
}

fn enumerable(order: &BigInt) -> Result<(), OracleError> {
    if order.to_u64().is_some_and(|o| o <= MAX_ELEMENTS) {
        Ok(())
    } else {
        Err(OracleError::GroupTooLarge(order.clone()))
    }
}

/// Order of the subgroup generated by the classes of `gens`, by closing
/// under addition.
pub fn subgroup_order_by_closure(cg: &CriticalGroup, gens: &[Divisor]) -> Result<u64, OracleError> {
    enumerable(&cg.order())?;
    let factors = cg.group().factors();
    let steps: Vec<Vec<BigInt>> = gens.iter().map(|d| cg.project(d).expect("degree-0 generators")).collect();
    let zero = vec![BigInt::zero(); factors.len()];
    let mut seen = HashSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for s in &steps {
            let y: Vec<BigInt> = x.iter().zip(s).zip(factors).map(|((a, b), d)| (a + b).mod_floor(d)).collect();
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    Ok(seen.len() as u64)
}

/// `|ker h|` by running through every source element.
pub fn kernel_order_by_enumeration(
    h: &GroupHom,
    source_orders: &[BigInt],
    target_orders: &[BigInt],
) -> Result<u64, OracleError> {
    let total: BigInt = source_orders.iter().product();
    enumerable(&total)?;
    let m = h.matrix();
    let mut x = vec![BigInt::zero(); source_orders.len()];
    let mut count = 0;
    loop {
        let hits_zero = (0..m.rows()).all(|i| {
            let v: BigInt = (0..m.cols()).map(|j| &m[(i, j)] * &x[j]).sum();
            v.is_multiple_of(&target_orders[i])
        });
        count += u64::from(hits_zero);
        // mixed-radix increment
        let mut k = 0;
        loop {
            if k == x.len() {
                return Ok(count);
            }
            x[k] += 1;
            if x[k] < source_orders[k] {
                break;
            }
            x[k] = BigInt::zero();
            k += 1;
        }
    }
}

fn number_check(name: &str, fast: BigInt, brute: u64) -> Check {
    let brute = BigInt::from(brute);
    Check {
        name: format!("oracle: {name}"),
        status: Status::from_bool(fast == brute),
        predicted: Quantity::Number(fast),
        computed: Quantity::Number(brute),
        note: None,
    }
}

/// Brute-force checks of `|K(G)|`, each `|K(H_i)|`, `|J|` and `|ker psi|`
/// against the normal-form computations ("predicted" holds the fast value).
pub fn cross_check(ctx: &DecompositionContext) -> Result<Vec<Check>, OracleError> {
    let s = ctx.sum();
    let g = ctx.graph();
    check_size(g)?;
    let mut out = vec![number_check("spanning trees of G", s.critical_group().order(), spanning_trees(g)?)];
    for p in Part::ALL {
        let q = s.quotient(p).quotient();
        out.push(number_check(&format!("spanning trees of {p}"), s.jacobian(p).order(), spanning_trees(q)?));
    }
    let (j, gens) = s.sum_subgroup().expect("context is valid");
    out.push(number_check("|J| by closure", j.order(), subgroup_order_by_closure(s.critical_group(), &gens)?));
    let mut source = Vec::new();
    for p in [Part::H1, Part::H2, Part::H3] {
        source.extend_from_slice(s.jacobian(p).group().factors());
    }
    let target = s.critical_group().group().factors().to_vec();
    let brute = kernel_order_by_enumeration(s.psi(), &source, &target)?;
    out.push(number_check("|ker psi| by enumeration", s.kernel().order(), brute));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critical::critical_group;
    use crate::families::{circulant, concentric_polygon};

    #[test]
    fn c7_cross_checks_agree() {
        let f = circulant(7, &[1, 2]).unwrap();
        let ctx = DecompositionContext::new(&f.graph, &f.action).unwrap();
        let checks = cross_check(&ctx).unwrap();
        assert_eq!(checks.len(), 7);
        assert!(checks.iter().all(|c| c.status == Status::Pass), "{checks:#?}");
    }

    #[test]
    fn caps_are_enforced() {
        let f = concentric_polygon(5).unwrap();
        assert_eq!(spanning_trees(&f.graph), Err(OracleError::TooLarge { vertices: 15, edges: 25 }));
    }

    #[test]
    fn closure_of_a_single_generator() {
        let c4 = Multigraph::new(4, (0..4).map(|i| (i, (i + 1) % 4))).unwrap();
        let cg = critical_group(&c4).unwrap();
        assert_eq!(subgroup_order_by_closure(&cg, &[Divisor::difference(4, 0, 1)]).unwrap(), 4);
        assert_eq!(subgroup_order_by_closure(&cg, &[Divisor::from_i64s(&[1, -1, 1, -1])]).unwrap(), 2);
        assert_eq!(subgroup_order_by_closure(&cg, &[]).unwrap(), 1);
    }
}
