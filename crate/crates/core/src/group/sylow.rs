use std::collections::BTreeMap;

use serde::Serialize;

use super::{Character, SubgroupHandle};
use crate::error::{Error, Result};

/// Data about a Sylow p-subgroup P = <g> of order p and the action of its
/// normalizer on it by conjugation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicSylowData {
    pub p: u64,
    pub generator: u32,
    pub normalizer_order: usize,
    pub centralizer_order: usize,
    /// n g n^-1 = g^q for the chosen normalizer element n.
    pub q: u64,
    pub chosen: u32,
    /// Character value at the chosen normalizer element.
    pub twist_sign: i8,
    /// Every distinct pair (q(n), χ(n)) over the normalizer, sorted.
    pub actions: Vec<(u64, i8)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SylowOutcome {
    /// p does not divide the group order.
    Trivial,
    Cyclic(CyclicSylowData),
}

pub(crate) fn multiplicative_order(q: u64, p: u64) -> u64 {
    let mut x = q % p;
    let mut k = 1;
    while x != 1 {
        x = x * q % p;
        k += 1;
    }
    k
}

/// Finds an element of order p in `h` and the conjugation action of its
/// normalizer. Refuses when p^2 divides |h|.
pub fn sylow_cyclic(h: &SubgroupHandle, p: u64, chi: Option<&Character>) -> Result<SylowOutcome> {
    let order = h.order() as u64;
    if !order.is_multiple_of(p) {
        return Ok(SylowOutcome::Trivial);
    }
    if order.is_multiple_of(p * p) {
        return Err(Error::NotCyclicSylow { p, order });
    }
    let g = h.parent();
    let mut generator = None;
    for &a in h.members() {
        let k = g.element_order(a)?;
        if k % p == 0 {
            generator = Some(g.pow(a, k / p));
            break;
        }
    }
    let generator = generator.ok_or_else(|| {
        Error::Integrity(format!("no element of order {p} although {p} divides {order}"))
    })?;
    let mut exponent = BTreeMap::new();
    let mut x = 0u32;
    for e in 0..p {
        exponent.insert(x, e);
        x = g.mul(x, generator);
    }
    let mut normal = Vec::new();
    for &n in h.members() {
        if let Some(&q) = exponent.get(&g.conjugate(n, generator)) {
            let sign = chi.map_or(1, |c| c.value(g, n));
            normal.push((n, q, sign));
        }
    }
    let centralizer_order = normal.iter().filter(|(_, q, _)| *q == 1).count();
    let &(chosen, q, twist_sign) = normal
        .iter()
        .max_by_key(|(n, q, _)| (multiplicative_order(*q, p), std::cmp::Reverse(*n)))
        .expect("identity normalizes");
    let mut actions: Vec<(u64, i8)> = normal.iter().map(|&(_, q, s)| (q, s)).collect();
    actions.sort_unstable();
    actions.dedup();
    Ok(SylowOutcome::Cyclic(CyclicSylowData {
        p,
        generator,
        normalizer_order: normal.len(),
        centralizer_order,
        q,
        chosen,
        twist_sign,
        actions,
    }))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::coxeter::parse_graph;
    use crate::group::{alternating_subgroup, enumerate_group, SubgroupHandle};

    fn data(out: SylowOutcome) -> CyclicSylowData {
        match out {
            SylowOutcome::Cyclic(d) => d,
            SylowOutcome::Trivial => panic!("expected a cyclic Sylow subgroup"),
        }
    }

    #[test]
    fn a5_at_five() {
        let g = Arc::new(enumerate_group(&parse_graph("A4").unwrap(), 1000).unwrap());
        let alt = alternating_subgroup(&g);
        assert_eq!(alt.order(), 60);
        let d = data(sylow_cyclic(&alt, 5, None).unwrap());
        assert_eq!(d.normalizer_order, 10);
        assert_eq!(d.centralizer_order, 5);
        assert_eq!(d.q, 4);
        assert_eq!(g.element_order(d.generator).unwrap(), 5);
    }

    #[test]
    fn s3_at_three() {
        let g = Arc::new(enumerate_group(&parse_graph("A2").unwrap(), 100).unwrap());
        let whole = SubgroupHandle::whole(&g);
        let sign = Character::sign(2);
        let d = data(sylow_cyclic(&whole, 3, Some(&sign)).unwrap());
        assert_eq!(d.normalizer_order, 6);
        assert_eq!(d.q, 2);
        assert_eq!(d.twist_sign, -1);
        assert_eq!(d.actions, vec![(1, 1), (2, -1)]);
    }

    #[test]
    fn trivial_and_refused() {
        let g = Arc::new(enumerate_group(&parse_graph("B3").unwrap(), 100).unwrap());
        let whole = SubgroupHandle::whole(&g);
        assert_eq!(sylow_cyclic(&whole, 5, None).unwrap(), SylowOutcome::Trivial);
        // |B3| = 48 = 2^4 * 3
        assert!(matches!(sylow_cyclic(&whole, 3, None), Ok(SylowOutcome::Cyclic(_))));
        let g = Arc::new(enumerate_group(&parse_graph("A2+A2").unwrap(), 100).unwrap());
        let whole = SubgroupHandle::whole(&g);
        assert!(matches!(
            sylow_cyclic(&whole, 3, None),
            Err(Error::NotCyclicSylow { p: 3, order: 36 })
        ));
    }

    #[test]
    fn multiplicative_orders() {
        assert_eq!(multiplicative_order(1, 7), 1);
        assert_eq!(multiplicative_order(6, 7), 2);
        assert_eq!(multiplicative_order(3, 7), 6);
        assert_eq!(multiplicative_order(2, 5), 4);
    }
}
