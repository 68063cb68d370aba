//! Labelled domains: the point sets of induced actions.
//!
//! A [`LabeledDomain`] names the points of an induced action by canonical
//! byte encodings of the underlying objects (k-subsets, partitions, coset
//! representatives, subgroups). Encodings are canonical so that lookups are
//! deterministic: subsets are sorted point lists, partitions are sorted
//! lists of sorted blocks.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// What the encoded objects are; used when rendering points for humans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObjectKind {
    /// Plain points of a set acted on naturally.
    Points,
    /// Subsets of `{0..n-1}`, encoded as sorted u16 point lists.
    Subsets,
    /// Partitions of `{0..n-1}`, encoded block-by-block (len-prefixed).
    Partitions,
    /// Permutations (coset representatives or group elements), encoded as
    /// u16 image tables.
    PermutationTables,
    /// Subgroups, encoded as the sorted list of their elements' tables.
    Subgroups,
}

/// Ordered list of canonical object encodings with an exact reverse index.
#[derive(Clone, Debug)]
pub struct LabeledDomain {
    objects: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, u32>,
    kind: ObjectKind,
    /// Optional display labels, parallel to `objects`.
    labels: Option<Vec<String>>,
}

impl LabeledDomain {
    pub fn new(objects: Vec<Vec<u8>>, kind: ObjectKind) -> Result<Self> {
        let mut index = HashMap::with_capacity(objects.len());
        for (i, o) in objects.iter().enumerate() {
            if index.insert(o.clone(), i as u32).is_some() {
                return Err(Error::Parse(format!(
                    "domain objects are not pairwise distinct (object {i})"
                )));
            }
        }
        Ok(LabeledDomain {
            objects,
            index,
            kind,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.objects.len());
        self.labels = Some(labels);
        self
    }

    pub fn size(&self) -> usize {
        self.objects.len()
    }

    pub fn kind(&self) -> &ObjectKind {
        &self.kind
    }

    pub fn object(&self, point: usize) -> &[u8] {
        &self.objects[point]
    }

    pub fn objects(&self) -> &[Vec<u8>] {
        &self.objects
    }

    pub fn index_of(&self, object: &[u8]) -> Option<usize> {
        self.index.get(object).map(|&i| i as usize)
    }

    /// Human-readable label of a point (1-indexed contents for subsets and
    /// partitions, cycle notation for permutation tables).
    pub fn label(&self, point: usize) -> String {
        if let Some(ls) = &self.labels {
            return ls[point].clone();
        }
        let o = &self.objects[point];
        match self.kind {
            ObjectKind::Points => format!("{}", point + 1),
            ObjectKind::Subsets => render_subset(&decode_subset(o)),
            ObjectKind::Partitions => render_partition(&decode_partition(o)),
            ObjectKind::PermutationTables => match decode_perm_table(o) {
                Ok(p) => p.cycle_string(),
                Err(_) => format!("#{}", point + 1),
            },
            ObjectKind::Subgroups => format!("subgroup#{}", point + 1),
        }
    }
}

// --- canonical codecs ------------------------------------------------------

fn push_u16(buf: &mut Vec<u8>, v: usize) {
    debug_assert!(v < 1 << 16);
    buf.extend_from_slice(&(v as u16).to_be_bytes());
}

fn read_u16(buf: &[u8], at: usize) -> usize {
    u16::from_be_bytes([buf[2 * at], buf[2 * at + 1]]) as usize
}

/// Sorted point list.
pub fn encode_subset(points: &[usize]) -> Vec<u8> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    let mut buf = Vec::with_capacity(2 * pts.len());
    for p in pts {
        push_u16(&mut buf, p);
    }
    buf
}

pub fn decode_subset(buf: &[u8]) -> Vec<usize> {
    (0..buf.len() / 2).map(|i| read_u16(buf, i)).collect()
}

pub fn render_subset(points: &[usize]) -> String {
    let inner: Vec<String> = points.iter().map(|p| (p + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Blocks sorted internally and then as lists; each block is length-prefixed.
pub fn encode_partition(blocks: &[Vec<usize>]) -> Vec<u8> {
    let mut bs: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| {
            let mut b = b.clone();
            b.sort_unstable();
            b
        })
        .collect();
    bs.sort();
    let mut buf = Vec::new();
    for b in &bs {
        push_u16(&mut buf, b.len());
        for &p in b {
            push_u16(&mut buf, p);
        }
    }
    buf
}

pub fn decode_partition(buf: &[u8]) -> Vec<Vec<usize>> {
    let mut blocks = Vec::new();
    let mut at = 0;
    let total = buf.len() / 2;
    while at < total {
        let len = read_u16(buf, at);
        at += 1;
        let block: Vec<usize> = (0..len).map(|i| read_u16(buf, at + i)).collect();
        at += len;
        blocks.push(block);
    }
    blocks
}

pub fn render_partition(blocks: &[Vec<usize>]) -> String {
    let inner: Vec<String> = blocks.iter().map(|b| render_subset(b)).collect();
    format!("{{{}}}", inner.join("|"))
}

/// u16 image table of a permutation.
pub fn encode_perm_table(p: &Permutation) -> Vec<u8> {
    let mut buf = Vec::with_capacity(2 * p.degree());
    for x in 0..p.degree() {
        push_u16(&mut buf, p.act(x));
    }
    buf
}

pub fn decode_perm_table(buf: &[u8]) -> Result<Permutation> {
    let images: Vec<u32> = (0..buf.len() / 2).map(|i| read_u16(buf, i) as u32).collect();
    Permutation::from_images(images)
}

/// Sorted concatenation of the elements' tables; elements must share degree.
pub fn encode_subgroup(elements: &[Permutation]) -> Vec<u8> {
    let mut encs: Vec<Vec<u8>> = elements.iter().map(encode_perm_table).collect();
    encs.sort();
    encs.concat()
}

pub fn decode_subgroup(buf: &[u8], degree: usize) -> Result<Vec<Permutation>> {
    let elt = 2 * degree;
    if elt == 0 || buf.len() % elt != 0 {
        return Err(Error::Parse("bad subgroup encoding".into()));
    }
    (0..buf.len() / elt)
        .map(|i| decode_perm_table(&buf[i * elt..(i + 1) * elt]))
        .collect()
}

// --- enumerators used by the atlas ----------------------------------------

/// All k-subsets of `{0..n-1}` in lexicographic order of sorted contents.
pub fn all_k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for p in start..=n.saturating_sub(need) {
            cur.push(p);
            rec(n, k, p + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// All partitions of `{0..ab-1}` into `b` blocks of size `a`, ordered by
/// their canonical encodings.
pub fn all_regular_partitions(a: usize, b: usize) -> Vec<Vec<Vec<usize>>> {
    let n = a * b;
    let mut out = Vec::new();
    let mut used = vec![false; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();

    fn rec(
        a: usize,
        n: usize,
        used: &mut Vec<bool>,
        blocks: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let first = match (0..n).find(|&p| !used[p]) {
            Some(p) => p,
            None => {
                out.push(blocks.clone());
                return;
            }
        };
        // the least unused point anchors its block, which kills block-order symmetry
        used[first] = true;
        let rest: Vec<usize> = (first + 1..n).filter(|&p| !used[p]).collect();
        let mut pick = Vec::with_capacity(a - 1);
        fn choose(
            rest: &[usize],
            start: usize,
            need: usize,
            pick: &mut Vec<usize>,
            a: usize,
            n: usize,
            first: usize,
            used: &mut Vec<bool>,
            blocks: &mut Vec<Vec<usize>>,
            out: &mut Vec<Vec<Vec<usize>>>,
        ) {
            if need == 0 {
                let mut block = vec![first];
                block.extend_from_slice(pick);
                for &p in pick.iter() {
                    used[p] = true;
                }
                blocks.push(block);
                rec(a, n, used, blocks, out);
                blocks.pop();
                for &p in pick.iter() {
                    used[p] = false;
                }
                return;
            }
            for i in start..rest.len() {
                if rest.len() - i < need {
                    break;
                }
                pick.push(rest[i]);
                choose(rest, i + 1, need - 1, pick, a, n, first, used, blocks, out);
                pick.pop();
            }
        }
        choose(&rest, 0, a - 1, &mut pick, a, n, first, used, blocks, out);
        used[first] = false;
    }
    rec(a, n, &mut used, &mut blocks, &mut out);
    out.sort_by_key(|blocks| encode_partition(blocks));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_codec_roundtrip() {
        let enc = encode_subset(&[4, 1, 2]);
        assert_eq!(decode_subset(&enc), vec![1, 2, 4]);
        assert_eq!(render_subset(&[0, 2]), "{1,3}");
    }

    #[test]
    fn partition_codec_canonical() {
        let enc1 = encode_partition(&[vec![3, 2], vec![0, 1]]);
        let enc2 = encode_partition(&[vec![1, 0], vec![2, 3]]);
        assert_eq!(enc1, enc2);
        assert_eq!(decode_partition(&enc1), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn subset_counts() {
        assert_eq!(all_k_subsets(4, 2).len(), 6);
        assert_eq!(all_k_subsets(6, 2).len(), 15);
        assert_eq!(all_k_subsets(8, 3).len(), 56);
    }

    #[test]
    fn partition_counts() {
        // (ab)! / ((a!)^b b!)
        assert_eq!(all_regular_partitions(2, 3).len(), 15);
        assert_eq!(all_regular_partitions(3, 2).len(), 10);
        assert_eq!(all_regular_partitions(2, 4).len(), 105);
    }

    #[test]
    fn domain_rejects_duplicates() {
        let objs = vec![encode_subset(&[0, 1]), encode_subset(&[1, 0])];
        assert!(LabeledDomain::new(objs, ObjectKind::Subsets).is_err());
    }
}
