//! Actions of permutations on encoded objects.
//!
//! An induced group stores its generators twice: as image tables on the
//! object domain, and as "carrier" permutations of the original (usually
//! much smaller) point set. An [`ActionCtx`] connects the two: it applies a
//! carrier permutation to a domain point by decoding the object, acting on
//! it, and looking the result up again. Stabilizer computations then work
//! with carrier elements, which keeps element arithmetic cheap even when
//! the domain has thousands of points.

use std::sync::Arc;

use crate::domain::{
    decode_partition, decode_subgroup, decode_subset, encode_partition, encode_subgroup,
    encode_subset, LabeledDomain,
};
use crate::perm::Permutation;

/// How a carrier permutation moves an encoded object.
pub trait ObjectAction: Send + Sync {
    fn apply(&self, object: &[u8], g: &Permutation) -> Vec<u8>;
}

/// Domain plus action: applies carrier elements to domain points.
pub struct ActionCtx {
    domain: Arc<LabeledDomain>,
    action: Box<dyn ObjectAction>,
    carrier_degree: usize,
}

impl std::fmt::Debug for ActionCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ActionCtx")
            .field("domain_size", &self.domain.size())
            .field("carrier_degree", &self.carrier_degree)
            .finish()
    }
}

impl ActionCtx {
    pub fn new(
        domain: Arc<LabeledDomain>,
        action: Box<dyn ObjectAction>,
        carrier_degree: usize,
    ) -> Self {
        ActionCtx {
            domain,
            action,
            carrier_degree,
        }
    }

    pub fn domain(&self) -> &Arc<LabeledDomain> {
        &self.domain
    }

    pub fn carrier_degree(&self) -> usize {
        self.carrier_degree
    }

    pub fn apply_object(&self, object: &[u8], g: &Permutation) -> Vec<u8> {
        self.action.apply(object, g)
    }

    /// Image of a domain point under a carrier permutation.
    ///
    /// Panics if the action leaves the domain; `induce` validates closure on
    /// the generators, and closure on generators implies closure on the
    /// whole group.
    pub fn apply_point(&self, g: &Permutation, x: usize) -> usize {
        let img = self.action.apply(self.domain.object(x), g);
        match self.domain.index_of(&img) {
            Some(i) => i,
            None => panic!(
                "action left the domain at point {x}; the inducing map was not validated"
            ),
        }
    }
}

/// Point-set action on sorted point lists.
pub struct SubsetAction;

impl ObjectAction for SubsetAction {
    fn apply(&self, object: &[u8], g: &Permutation) -> Vec<u8> {
        let pts: Vec<usize> = decode_subset(object).iter().map(|&p| g.act(p)).collect();
        encode_subset(&pts)
    }
}

/// Point-set action on block partitions.
pub struct PartitionAction;

impl ObjectAction for PartitionAction {
    fn apply(&self, object: &[u8], g: &Permutation) -> Vec<u8> {
        let blocks: Vec<Vec<usize>> = decode_partition(object)
            .iter()
            .map(|b| b.iter().map(|&p| g.act(p)).collect())
            .collect();
        encode_partition(&blocks)
    }
}

/// Conjugation on subgroups stored as sorted element lists.
pub struct SubgroupConjugationAction {
    pub degree: usize,
}

impl ObjectAction for SubgroupConjugationAction {
    fn apply(&self, object: &[u8], g: &Permutation) -> Vec<u8> {
        let elements = decode_subgroup(object, self.degree)
            .expect("subgroup objects are valid by construction");
        let conj: Vec<Permutation> = elements.iter().map(|e| e.conjugate(g)).collect();
        encode_subgroup(&conj)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_permutation;

    #[test]
    fn subset_action_maps_and_sorts() {
        let g = parse_permutation("(1 2 3)", 4).unwrap();
        let o = encode_subset(&[0, 2]);
        let img = SubsetAction.apply(&o, &g);
        assert_eq!(decode_subset(&img), vec![0, 1]);
    }

    #[test]
    fn partition_action_canonicalizes() {
        let g = parse_permutation("(1 4)", 4).unwrap();
        let o = encode_partition(&[vec![0, 1], vec![2, 3]]);
        let img = PartitionAction.apply(&o, &g);
        assert_eq!(decode_partition(&img), vec![vec![0, 2], vec![1, 3]]);
    }
}
