//! Finitely generated permutation groups and the group file format.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::action::{ActionCtx, ObjectAction};
use crate::domain::LabeledDomain;
use crate::error::{Error, Result};
use crate::perm::{parse_permutation, Permutation};
use crate::stabchain::StabilizerChain;

/// Compact representation of an induced group: generators on the original
/// point set, parallel to the image generators, plus the action context.
#[derive(Clone, Debug)]
pub struct Carrier {
    pub generators: Vec<Permutation>,
    pub ctx: Arc<ActionCtx>,
}

/// A permutation group given by generators.
///
/// `generators` act on `{0..degree-1}`. Induced groups additionally carry
/// their origin (see [`Carrier`]); all analysis operations exploit it when
/// present but never require it.
#[derive(Debug)]
pub struct GeneratedGroup {
    degree: usize,
    generators: Vec<Permutation>,
    label: Option<String>,
    carrier: Option<Carrier>,
    chain: OnceLock<Arc<StabilizerChain>>,
}

impl Clone for GeneratedGroup {
    fn clone(&self) -> Self {
        GeneratedGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            label: self.label.clone(),
            carrier: self.carrier.clone(),
            chain: OnceLock::new(),
        }
    }
}

impl GeneratedGroup {
    /// Builds a group from image generators, dropping identities and
    /// checking degrees.
    pub fn new(degree: usize, generators: Vec<Permutation>, label: Option<String>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let generators: Vec<Permutation> =
            generators.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(GeneratedGroup {
            degree,
            generators,
            label,
            carrier: None,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        GeneratedGroup {
            degree,
            generators: Vec::new(),
            label: None,
            carrier: None,
            chain: OnceLock::new(),
        }
    }

    /// Internal constructor pairing image generators with carrier
    /// generators. Identity image generators are kept out by callers: the
    /// pairing must stay index-aligned.
    pub(crate) fn with_carrier(
        degree: usize,
        generators: Vec<Permutation>,
        carrier: Carrier,
        label: Option<String>,
    ) -> Self {
        debug_assert_eq!(generators.len(), carrier.generators.len());
        GeneratedGroup {
            degree,
            generators,
            label,
            carrier: Some(carrier),
            chain: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = Some(label.into());
    }

    pub fn carrier(&self) -> Option<&Carrier> {
        self.carrier.as_ref()
    }

    pub fn is_trivial_generating_set(&self) -> bool {
        self.generators.is_empty()
    }

    /// The stabilizer chain, built once and cached.
    pub fn chain(&self) -> &Arc<StabilizerChain> {
        self.chain
            .get_or_init(|| Arc::new(StabilizerChain::for_group(self, &[])))
    }

    /// Exact group order (of the permutation group on `{0..degree-1}`).
    pub fn order(&self) -> u128 {
        self.chain().image_order()
    }

    pub fn order_big(&self) -> num_bigint::BigUint {
        num_bigint::BigUint::from(self.order())
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        self.chain().contains(p)
    }

    /// Induces the action of this group on a labelled domain.
    ///
    /// `action` must map every listed object to a listed object under every
    /// generator; the induced maps must be bijections. The result records
    /// this group as its carrier.
    pub fn induce(
        &self,
        domain: Arc<LabeledDomain>,
        action: Box<dyn ObjectAction>,
        label: Option<String>,
    ) -> Result<GeneratedGroup> {
        let m = domain.size();
        let ctx = Arc::new(ActionCtx::new(domain.clone(), action, self.degree));
        let mut image_gens = Vec::with_capacity(self.generators.len());
        let mut carrier_gens = Vec::with_capacity(self.generators.len());
        for (gi, g) in self.generators.iter().enumerate() {
            let mut images = vec![0u32; m];
            let mut seen = vec![false; m];
            for x in 0..m {
                let img_obj = ctx.apply_object(domain.object(x), g);
                let y = domain.index_of(&img_obj).ok_or_else(|| {
                    Error::ActionLeavesDomain {
                        generator: gi,
                        object: domain.label(x),
                    }
                })?;
                if seen[y] {
                    return Err(Error::InducedNotBijective(gi));
                }
                seen[y] = true;
                images[x] = y as u32;
            }
            let img = Permutation::from_images_unchecked(images);
            if img.is_identity() {
                // generator lies in the kernel of the action; the image group
                // does not need it but the carrier pairing must stay aligned,
                // so it is dropped from both sides
                continue;
            }
            image_gens.push(img);
            carrier_gens.push(g.clone());
        }
        Ok(GeneratedGroup::with_carrier(
            m,
            image_gens,
            Carrier {
                generators: carrier_gens,
                ctx,
            },
            label,
        ))
    }

    // --- group file format --------------------------------------------

    pub fn to_file_json(&self) -> String {
        let file = GroupFile {
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.cycle_string()).collect(),
            label: self.label.clone(),
        };
        serde_json::to_string_pretty(&file).expect("group file serializes")
    }

    pub fn from_file_json(text: &str) -> Result<GeneratedGroup> {
        let file: GroupFile = serde_json::from_str(text)?;
        let gens = file
            .generators
            .iter()
            .map(|s| parse_permutation(s, file.degree))
            .collect::<Result<Vec<_>>>()?;
        GeneratedGroup::new(file.degree, gens, file.label)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_file_json())?;
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<GeneratedGroup> {
        let text = std::fs::read_to_string(path)?;
        GeneratedGroup::from_file_json(&text)
    }
}

/// On-disk group format: cycle notation, 1-indexed.
#[derive(Serialize, Deserialize)]
struct GroupFile {
    degree: usize,
    generators: Vec<String>,
    label: Option<String>,
}

/// Deterministic pseudo-random word in the generators.
pub fn random_word(
    gens: &[Permutation],
    degree: usize,
    max_len: usize,
    rng: &mut impl rand::Rng,
) -> Permutation {
    let mut w = Permutation::identity(degree);
    if gens.is_empty() {
        return w;
    }
    let len = rng.gen_range(1..=max_len);
    for _ in 0..len {
        let i = rng.gen_range(0..gens.len());
        w = w.compose(&gens[i]).expect("equal degrees");
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::SubsetAction;
    use crate::domain::{all_k_subsets, encode_subset, LabeledDomain, ObjectKind};
    use crate::perm::parse_permutation;

    fn sym_gens(n: usize) -> Vec<Permutation> {
        let cycle = {
            let images: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
            Permutation::from_images(images).unwrap()
        };
        let swap = parse_permutation("(1 2)", n).unwrap();
        vec![cycle, swap]
    }

    fn subsets_domain(n: usize, k: usize) -> Arc<LabeledDomain> {
        let objs: Vec<Vec<u8>> = all_k_subsets(n, k).iter().map(|s| encode_subset(s)).collect();
        Arc::new(LabeledDomain::new(objs, ObjectKind::Subsets).unwrap())
    }

    #[test]
    fn induce_on_two_subsets() {
        let g = GeneratedGroup::new(4, sym_gens(4), Some("sym(4)".into())).unwrap();
        let ind = g
            .induce(subsets_domain(4, 2), Box::new(SubsetAction), None)
            .unwrap();
        assert_eq!(ind.degree(), 6);

        let g6 = GeneratedGroup::new(6, sym_gens(6), Some("sym(6)".into())).unwrap();
        let ind15 = g6
            .induce(subsets_domain(6, 2), Box::new(SubsetAction), None)
            .unwrap();
        assert_eq!(ind15.degree(), 15);
    }

    #[test]
    fn induce_is_a_homomorphism_on_words() {
        use rand::SeedableRng;
        let g = GeneratedGroup::new(5, sym_gens(5), None).unwrap();
        let dom = subsets_domain(5, 2);
        let ind = g
            .induce(dom.clone(), Box::new(SubsetAction), None)
            .unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            use rand::Rng;
            let len = rng.gen_range(1..=8);
            let mut word_small = Permutation::identity(5);
            let mut word_big = Permutation::identity(10);
            for _ in 0..len {
                let i = rng.gen_range(0..g.generators().len());
                word_small = word_small.compose(&g.generators()[i]).unwrap();
                word_big = word_big.compose(&ind.generators()[i]).unwrap();
            }
            // the induced image of the composed word, computed pointwise
            for x in 0..10 {
                let obj = dom.object(x);
                let img = SubsetAction.apply(obj, &word_small);
                assert_eq!(dom.index_of(&img).unwrap(), word_big.act(x));
            }
        }
    }

    #[test]
    fn induce_rejects_open_domains() {
        let g = GeneratedGroup::new(4, sym_gens(4), None).unwrap();
        // only half of the 2-subsets listed: the action leaves the domain
        let objs: Vec<Vec<u8>> = all_k_subsets(4, 2)[0..3]
            .iter()
            .map(|s| encode_subset(s))
            .collect();
        let dom = Arc::new(LabeledDomain::new(objs, ObjectKind::Subsets).unwrap());
        assert!(g.induce(dom, Box::new(SubsetAction), None).is_err());
    }

    #[test]
    fn group_file_roundtrip_is_stable() {
        let g = GeneratedGroup::new(5, sym_gens(5), Some("sym(5)".into())).unwrap();
        let json = g.to_file_json();
        let back = GeneratedGroup::from_file_json(&json).unwrap();
        assert_eq!(back.degree(), 5);
        assert_eq!(back.to_file_json(), json);
    }
}
