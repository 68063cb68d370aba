//! Deterministic Schreier–Sims stabilizer chains and derived machinery:
//! orders, membership, point stabilizers, orbits, primitivity, coset
//! actions.
//!
//! Chains are built over an action: group elements are "carrier"
//! permutations (for induced groups, permutations of the original small
//! point set) acting on domain points through an [`ActionCtx`]. Base points
//! are domain points first; if the action has a kernel, the chain continues
//! on carrier points, so the product of all fundamental orbit lengths is the
//! carrier group order while the product over domain levels is the order of
//! the induced image. For plain groups carrier and image coincide.
//!
//! Transversals store full coset representative permutations rather than
//! Schreier vectors; representative lookup is constant-time and the carrier
//! degrees involved keep the tables small.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::action::{ActionCtx, ObjectAction};
use crate::domain::{decode_perm_table, encode_perm_table, LabeledDomain, ObjectKind};
use crate::error::{Error, Result};
use crate::group::{Carrier, GeneratedGroup};
use crate::perm::Permutation;

/// Default cap on coset-space enumeration.
pub const DEFAULT_INDEX_BOUND: u128 = 1_000_000;

// --- action view ------------------------------------------------------------

/// How carrier permutations move composite points: domain points `0..m`,
/// then carrier points `m..m+n`.
#[derive(Clone, Copy)]
pub(crate) struct ActionView<'a> {
    pub m: usize,
    pub n: usize,
    pub ctx: Option<&'a ActionCtx>,
}

impl<'a> ActionView<'a> {
    pub fn for_group(g: &'a GeneratedGroup) -> Self {
        match g.carrier() {
            Some(c) => ActionView {
                m: g.degree(),
                n: c.ctx.carrier_degree(),
                ctx: Some(&c.ctx),
            },
            None => ActionView {
                m: g.degree(),
                n: g.degree(),
                ctx: None,
            },
        }
    }

    fn natural(n: usize) -> Self {
        ActionView { m: n, n, ctx: None }
    }

    #[inline]
    pub fn act(&self, g: &Permutation, p: usize) -> usize {
        if p >= self.m {
            return self.m + g.act(p - self.m);
        }
        match self.ctx {
            Some(ctx) => ctx.apply_point(g, p),
            None => g.act(p),
        }
    }
}

// --- chain ------------------------------------------------------------------

#[derive(Debug)]
struct ChainLevel {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    transversal: HashMap<usize, Permutation>,
    /// tree edge that created each orbit point: (source point, storage level, gen index)
    defining: HashMap<usize, (usize, usize, usize)>,
}

impl ChainLevel {
    fn new(base: usize, carrier_degree: usize) -> Self {
        let mut transversal = HashMap::new();
        transversal.insert(base, Permutation::identity(carrier_degree));
        ChainLevel {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
            defining: HashMap::new(),
        }
    }
}

/// Image table of a carrier permutation on the domain.
fn materialize_image_via(ctx: Option<&ActionCtx>, m: usize, c: &Permutation) -> Permutation {
    match ctx {
        None => c.clone(),
        Some(ctx) => {
            let images: Vec<u32> = (0..m).map(|x| ctx.apply_point(c, x) as u32).collect();
            Permutation::from_images_unchecked(images)
        }
    }
}

/// A verified base and strong generating set.
#[derive(Debug)]
pub struct StabilizerChain {
    domain_size: usize,
    carrier_degree: usize,
    ctx: Option<Arc<ActionCtx>>,
    levels: Vec<ChainLevel>,
    image_order: u128,
    carrier_order: u128,
}

struct Builder {
    m: usize,
    n: usize,
    ctx: Option<Arc<ActionCtx>>,
    hint: Vec<usize>,
    levels: Vec<ChainLevel>,
}

impl Builder {
    fn view(&self) -> ActionView<'_> {
        ActionView {
            m: self.m,
            n: self.n,
            ctx: self.ctx.as_deref(),
        }
    }

    fn choose_base(&self, g: &Permutation) -> usize {
        let view = self.view();
        for &h in &self.hint {
            if h < self.m && view.act(g, h) != h {
                return h;
            }
        }
        for p in 0..self.m {
            if view.act(g, p) != p {
                return p;
            }
        }
        for p in self.m..self.m + self.n {
            if view.act(g, p) != p {
                return p;
            }
        }
        unreachable!("identity never reaches choose_base")
    }

    /// Number of leading levels whose bases `g` fixes.
    fn fixing_depth(&self, g: &Permutation) -> usize {
        let view = self.view();
        for (i, level) in self.levels.iter().enumerate() {
            if view.act(g, level.base) != level.base {
                return i;
            }
        }
        self.levels.len()
    }

    /// Membership-style sift through levels `from..`; returns the residue.
    fn sift_from(&self, from: usize, g: &Permutation) -> Permutation {
        let view = self.view();
        let mut residue = g.clone();
        for level in &self.levels[from..] {
            if residue.is_identity() {
                break;
            }
            let img = view.act(&residue, level.base);
            match level.transversal.get(&img) {
                Some(u) => residue = residue.compose_unchecked(&u.inverse()),
                None => break,
            }
        }
        residue
    }

    /// All generators stored at `level` or deeper; every one of them fixes
    /// the bases of the levels above, so the union generates the group of
    /// `level` once the chain is complete.
    fn effective_gens(&self, level: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (j, l) in self.levels.iter().enumerate().skip(level) {
            for idx in 0..l.gens.len() {
                out.push((j, idx));
            }
        }
        out
    }

    /// Deterministic Schreier–Sims insertion. A new strong generator is
    /// stored at its fixing depth; the orbits of that level and every level
    /// above are re-closed, and all arising Schreier generators are sifted,
    /// their residues queued for insertion in turn. On return every Schreier
    /// generator of every level sifts to the identity, which is Sims's
    /// verification condition.
    fn insert(&mut self, g: Permutation) {
        let mut work: Vec<Permutation> = vec![g];
        while let Some(h) = work.pop() {
            if h.is_identity() {
                continue;
            }
            let d = self.fixing_depth(&h);
            if !self.sift_from(d, &h).is_identity() {
                // genuinely new: store and repair levels 0..=d
                if d == self.levels.len() {
                    let base = self.choose_base(&h);
                    self.levels.push(ChainLevel::new(base, self.n));
                }
                let idx = self.levels[d].gens.len();
                self.levels[d].gens.push(h);
                for lvl in (0..=d).rev() {
                    self.close_level(lvl, (d, idx), &mut work);
                }
            }
        }
    }

    /// Re-closes the orbit of `lvl` after `new_gen` joined its effective
    /// generating set; sifts every non-tree Schreier generator and pushes
    /// nontrivial residues onto `work`.
    fn close_level(
        &mut self,
        lvl: usize,
        new_gen: (usize, usize),
        work: &mut Vec<Permutation>,
    ) {
        let effective = self.effective_gens(lvl);
        let mut queue: VecDeque<(usize, (usize, usize))> = self.levels[lvl]
            .orbit
            .iter()
            .map(|&p| (p, new_gen))
            .collect();
        while let Some((p, (gj, gi))) = queue.pop_front() {
            let s = self.levels[gj].gens[gi].clone();
            let q = self.view().act(&s, p);
            if !self.levels[lvl].transversal.contains_key(&q) {
                let u = self.levels[lvl].transversal[&p].compose_unchecked(&s);
                let level = &mut self.levels[lvl];
                level.transversal.insert(q, u);
                level.defining.insert(q, (p, gj, gi));
                level.orbit.push(q);
                for &e in &effective {
                    queue.push_back((q, e));
                }
            } else {
                if self.levels[lvl].defining.get(&q) == Some(&(p, gj, gi)) {
                    continue;
                }
                let level = &self.levels[lvl];
                let sch = level.transversal[&p]
                    .compose_unchecked(&s)
                    .compose_unchecked(&level.transversal[&q].inverse());
                if !sch.is_identity() {
                    let residue = self.sift_from(lvl + 1, &sch);
                    if !residue.is_identity() {
                        work.push(residue);
                    }
                }
            }
        }
    }

    fn finish(self) -> StabilizerChain {
        let mut image_order: u128 = 1;
        let mut carrier_order: u128 = 1;
        for level in &self.levels {
            let len = level.orbit.len() as u128;
            carrier_order = carrier_order.checked_mul(len).expect("order overflow");
            if level.base < self.m {
                image_order = image_order.checked_mul(len).expect("order overflow");
            }
        }
        StabilizerChain {
            domain_size: self.m,
            carrier_degree: self.n,
            ctx: self.ctx,
            levels: self.levels,
            image_order,
            carrier_order,
        }
    }
}

impl StabilizerChain {
    /// Builds a chain for `g`; `hint` points are preferred as the first base
    /// points (points already fixed are skipped).
    pub fn for_group(g: &GeneratedGroup, hint: &[usize]) -> StabilizerChain {
        let (gens, n, ctx) = match g.carrier() {
            Some(c) => (
                c.generators.clone(),
                c.ctx.carrier_degree(),
                Some(c.ctx.clone()),
            ),
            None => (g.generators().to_vec(), g.degree(), None),
        };
        Self::build_raw(gens, n, g.degree(), ctx, hint)
    }

    pub(crate) fn build_raw(
        gens: Vec<Permutation>,
        carrier_degree: usize,
        domain_size: usize,
        ctx: Option<Arc<ActionCtx>>,
        hint: &[usize],
    ) -> StabilizerChain {
        let mut b = Builder {
            m: domain_size,
            n: carrier_degree,
            ctx,
            hint: hint.to_vec(),
            levels: Vec::new(),
        };
        for g in gens {
            if !g.is_identity() {
                b.insert(g);
            }
        }
        b.finish()
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    /// Order of the permutation group on the domain (the image).
    pub fn image_order(&self) -> u128 {
        self.image_order
    }

    /// Order of the carrier group (image order times kernel order).
    pub fn carrier_order(&self) -> u128 {
        self.carrier_order
    }

    pub fn kernel_order(&self) -> u128 {
        self.carrier_order / self.image_order
    }

    /// Domain base points in chain order.
    pub fn base_points(&self) -> Vec<usize> {
        self.levels
            .iter()
            .filter(|l| l.base < self.domain_size)
            .map(|l| l.base)
            .collect()
    }

    /// Fundamental orbit lengths of the domain levels.
    pub fn fundamental_orbit_lens(&self) -> Vec<usize> {
        self.levels
            .iter()
            .filter(|l| l.base < self.domain_size)
            .map(|l| l.orbit.len())
            .collect()
    }

    fn view(&self) -> ActionView<'_> {
        ActionView {
            m: self.domain_size,
            n: self.carrier_degree,
            ctx: self.ctx.as_deref(),
        }
    }

    fn materialize_image(&self, c: &Permutation) -> Permutation {
        materialize_image_via(self.ctx.as_deref(), self.domain_size, c)
    }

    /// Membership test for a permutation of the domain.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.domain_size {
            return Err(Error::DegreeMismatch(self.domain_size, p.degree()));
        }
        let mut residue = p.clone();
        for level in &self.levels {
            if level.base >= self.domain_size {
                break;
            }
            if residue.is_identity() {
                return Ok(true);
            }
            let img = residue.act(level.base);
            match level.transversal.get(&img) {
                Some(u) => {
                    let u_img = self.materialize_image(u);
                    residue = residue.compose_unchecked(&u_img.inverse());
                }
                None => return Ok(false),
            }
        }
        Ok(residue.is_identity())
    }

    /// Membership test for a carrier permutation (full sift).
    pub(crate) fn contains_carrier(&self, c: &Permutation) -> bool {
        let view = self.view();
        let mut residue = c.clone();
        for level in &self.levels {
            if residue.is_identity() {
                return true;
            }
            let img = view.act(&residue, level.base);
            match level.transversal.get(&img) {
                Some(u) => residue = residue.compose_unchecked(&u.inverse()),
                None => return false,
            }
        }
        residue.is_identity()
    }

    /// Canonical (greedy image-minimal) representative of the right coset
    /// `H x`, where `H` is the group of this chain. Natural chains only.
    pub(crate) fn min_coset_rep(&self, x: &Permutation) -> Permutation {
        debug_assert!(self.ctx.is_none());
        let mut cur = x.clone();
        for level in &self.levels {
            let best = level
                .orbit
                .iter()
                .min_by_key(|&&p| cur.act(p))
                .copied()
                .expect("orbit never empty");
            if best != level.base {
                cur = level.transversal[&best].compose_unchecked(&cur);
            }
        }
        cur
    }

    /// Every element of a natural chain's group, in transversal product
    /// order. Refuses groups larger than `bound`.
    pub fn elements_natural(&self, bound: usize) -> Result<Vec<Permutation>> {
        if self.ctx.is_some() {
            return Err(Error::BadParameter(
                "element enumeration requires a natural chain".into(),
            ));
        }
        if self.carrier_order > bound as u128 {
            return Err(Error::BadParameter(format!(
                "group order {} exceeds enumeration bound {bound}",
                self.carrier_order
            )));
        }
        // every element factors uniquely as (deeper element) * (level rep)
        let mut out = vec![Permutation::identity(self.carrier_degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for &p in &level.orbit {
                let u = &level.transversal[&p];
                for tail in &out {
                    next.push(tail.compose_unchecked(u));
                }
            }
            out = next;
        }
        Ok(out)
    }
}

/// Convenience wrapper mirroring the operation names used elsewhere.
pub fn build_chain(g: &GeneratedGroup, hint: &[usize]) -> StabilizerChain {
    StabilizerChain::for_group(g, hint)
}

// --- incremental chain (natural action) -------------------------------------

/// Grow-only chain over the natural action, used to certify generated
/// subgroup orders during stabilizer computations.
pub(crate) struct IncrementalChain {
    builder: Builder,
}

impl IncrementalChain {
    pub fn new(degree: usize) -> Self {
        IncrementalChain {
            builder: Builder {
                m: degree,
                n: degree,
                ctx: None,
                hint: Vec::new(),
                levels: Vec::new(),
            },
        }
    }

    pub fn order(&self) -> u128 {
        self.builder
            .levels
            .iter()
            .map(|l| l.orbit.len() as u128)
            .product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let view = self.builder.view();
        let mut residue = g.clone();
        for level in &self.builder.levels {
            if residue.is_identity() {
                return true;
            }
            let img = view.act(&residue, level.base);
            match level.transversal.get(&img) {
                Some(u) => residue = residue.compose_unchecked(&u.inverse()),
                None => return false,
            }
        }
        residue.is_identity()
    }

    /// Returns true when the element was new.
    pub fn insert(&mut self, g: Permutation) -> bool {
        if g.is_identity() || self.contains(&g) {
            return false;
        }
        self.builder.insert(g);
        true
    }
}

// --- subgroups at carrier level ----------------------------------------------

/// A subgroup represented by carrier generators and its exact carrier order.
#[derive(Clone)]
pub(crate) struct SubgroupData {
    pub gens: Vec<Permutation>,
    pub order: u128,
}

pub(crate) fn root_subgroup(g: &GeneratedGroup) -> SubgroupData {
    let gens = match g.carrier() {
        Some(c) => c.generators.to_vec(),
        None => g.generators().to_vec(),
    };
    SubgroupData {
        gens,
        order: g.chain().carrier_order(),
    }
}

/// Orbit of a domain point with transversal representatives.
pub(crate) fn orbit_with_transversal(
    view: &ActionView<'_>,
    gens: &[Permutation],
    x: usize,
) -> (Vec<usize>, HashMap<usize, Permutation>, HashMap<usize, (usize, usize)>) {
    let mut orbit = vec![x];
    let mut transversal = HashMap::new();
    transversal.insert(x, Permutation::identity(view.n));
    let mut defining: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut i = 0;
    while i < orbit.len() {
        let p = orbit[i];
        for (si, s) in gens.iter().enumerate() {
            let q = view.act(s, p);
            if !transversal.contains_key(&q) {
                let u = transversal[&p].compose_unchecked(s);
                transversal.insert(q, u);
                defining.insert(q, (p, si));
                orbit.push(q);
            }
        }
        i += 1;
    }
    (orbit, transversal, defining)
}

/// Exact point stabilizer of `x` in `sub`, via Schreier generators with the
/// known-order stopping rule. The returned order is the carrier order.
pub(crate) fn stabilizer_subgroup(
    view: &ActionView<'_>,
    sub: &SubgroupData,
    x: usize,
) -> SubgroupData {
    let (orbit, transversal, defining) = orbit_with_transversal(view, &sub.gens, x);
    let target = sub.order / orbit.len() as u128;
    if orbit.len() == 1 {
        return sub.clone();
    }
    if target == 1 {
        return SubgroupData {
            gens: Vec::new(),
            order: 1,
        };
    }
    let mut nc = IncrementalChain::new(view.n);
    let mut gens = Vec::new();
    'outer: for &p in &orbit {
        for (si, s) in sub.gens.iter().enumerate() {
            let q = view.act(s, p);
            if defining.get(&q) == Some(&(p, si)) {
                continue;
            }
            let sch = transversal[&p]
                .compose_unchecked(s)
                .compose_unchecked(&transversal[&q].inverse());
            if sch.is_identity() {
                continue;
            }
            if nc.insert(sch.clone()) {
                gens.push(sch);
                if nc.order() == target {
                    break 'outer;
                }
            }
        }
    }
    assert_eq!(
        nc.order(),
        target,
        "Schreier generators must exhaust the point stabilizer"
    );
    SubgroupData { gens, order: target }
}

/// Orbit cells of a subgroup on the domain: (least-point representative,
/// cell size), ordered by representative.
pub(crate) fn orbit_cells(
    view: &ActionView<'_>,
    gens: &[Permutation],
) -> Vec<(usize, usize)> {
    let mut seen = vec![false; view.m];
    let mut cells = Vec::new();
    for start in 0..view.m {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut size = 1usize;
        while let Some(p) = stack.pop() {
            for s in gens {
                let q = view.act(s, p);
                if !seen[q] {
                    seen[q] = true;
                    size += 1;
                    stack.push(q);
                }
            }
        }
        cells.push((start, size));
    }
    cells
}

// --- public stabilizer / orbit operations ------------------------------------

fn subgroup_to_group(g: &GeneratedGroup, sub: &SubgroupData, label: Option<String>) -> GeneratedGroup {
    match g.carrier() {
        Some(c) => {
            let mut image_gens = Vec::new();
            let mut carrier_gens = Vec::new();
            for cg in &sub.gens {
                let img = materialize_image_via(Some(&c.ctx), g.degree(), cg);
                if img.is_identity() {
                    continue;
                }
                image_gens.push(img);
                carrier_gens.push(cg.clone());
            }
            GeneratedGroup::with_carrier(
                g.degree(),
                image_gens,
                Carrier {
                    generators: carrier_gens,
                    ctx: c.ctx.clone(),
                },
                label,
            )
        }
        None => GeneratedGroup::new(g.degree(), sub.gens.clone(), label)
            .expect("carrier gens share the degree"),
    }
}

/// Generators of the full stabilizer of `x` in `g`.
pub fn point_stabilizer(g: &GeneratedGroup, x: usize) -> Result<GeneratedGroup> {
    if x >= g.degree() {
        return Err(Error::PointOutOfRange {
            point: x,
            degree: g.degree(),
        });
    }
    let view = ActionView::for_group(g);
    let sub = stabilizer_subgroup(&view, &root_subgroup(g), x);
    Ok(subgroup_to_group(g, &sub, None))
}

/// Iterated point stabilizer.
pub fn pointwise_stabilizer(g: &GeneratedGroup, xs: &[usize]) -> Result<GeneratedGroup> {
    let view = ActionView::for_group(g);
    let mut sub = root_subgroup(g);
    for &x in xs {
        if x >= g.degree() {
            return Err(Error::PointOutOfRange {
                point: x,
                degree: g.degree(),
            });
        }
        sub = stabilizer_subgroup(&view, &sub, x);
    }
    Ok(subgroup_to_group(g, &sub, None))
}

/// Points fixed by every generator.
pub fn fixed_points(g: &GeneratedGroup) -> Vec<usize> {
    (0..g.degree())
        .filter(|&x| g.generators().iter().all(|gen| gen.act(x) == x))
        .collect()
}

/// Orbit partition with least-point representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    cells: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c[0]).collect()
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn is_transitive(&self, degree: usize) -> bool {
        self.cells.len() == 1 && self.cells[0].len() == degree
    }
}

pub fn orbits(g: &GeneratedGroup) -> OrbitPartition {
    let m = g.degree();
    let mut seen = vec![false; m];
    let mut cells = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut cell = vec![start];
        let mut i = 0;
        while i < cell.len() {
            let p = cell[i];
            for gen in g.generators() {
                let q = gen.act(p);
                if !seen[q] {
                    seen[q] = true;
                    cell.push(q);
                }
            }
            i += 1;
        }
        cell.sort_unstable();
        cells.push(cell);
    }
    OrbitPartition { cells }
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns the surviving root when a merge happened.
    fn union(&mut self, a: usize, b: usize) -> Option<(usize, usize, usize)> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        Some((big, ra, rb))
    }
}

/// Primitivity test by minimal block systems (Atkinson's algorithm): the
/// group is primitive iff for every `beta` the minimal block containing
/// `{0, beta}` is the whole domain.
pub fn is_primitive(g: &GeneratedGroup) -> Result<bool> {
    let m = g.degree();
    if !orbits(g).is_transitive(m) {
        return Err(Error::Intransitive);
    }
    if m <= 2 {
        return Ok(true);
    }
    for beta in 1..m {
        let mut uf = UnionFind::new(m);
        let mut stack = vec![(0usize, beta)];
        while let Some((a, b)) = stack.pop() {
            if let Some((_, ra, rb)) = uf.union(a, b) {
                for gen in g.generators() {
                    stack.push((gen.act(ra), gen.act(rb)));
                }
            }
        }
        let root0 = uf.find(0);
        if uf.size[root0] < m {
            return Ok(false);
        }
    }
    Ok(true)
}

// --- coset actions ------------------------------------------------------------

/// Canonicalizing action on coset representative tables.
struct CosetAction {
    hchain: Arc<StabilizerChain>,
}

impl ObjectAction for CosetAction {
    fn apply(&self, object: &[u8], g: &Permutation) -> Vec<u8> {
        let rep = decode_perm_table(object).expect("coset objects are valid");
        let moved = rep.compose_unchecked(g);
        encode_perm_table(&self.hchain.min_coset_rep(&moved))
    }
}

/// The action of `g` on the right cosets of `h`, of degree `[g : h]`.
///
/// Cosets are identified by canonical representatives obtained by descending
/// `h`'s stabilizer chain; the kernel of the action may be nontrivial and
/// the result is the image. Fails if `h` is not a subgroup of `g` or the
/// index exceeds `bound`.
pub fn coset_action(
    g: &GeneratedGroup,
    h: &GeneratedGroup,
    bound: u128,
    label: Option<String>,
) -> Result<GeneratedGroup> {
    if g.degree() != h.degree() {
        return Err(Error::DegreeMismatch(g.degree(), h.degree()));
    }
    let gchain = g.chain();
    for (i, hg) in h.generators().iter().enumerate() {
        if !gchain.contains(hg)? {
            return Err(Error::NotASubgroup(i));
        }
    }
    let index = g.order() / h.order();
    if index > bound {
        return Err(Error::IndexBound { index, bound });
    }

    let hchain = Arc::new(StabilizerChain::build_raw(
        h.generators().to_vec(),
        h.degree(),
        h.degree(),
        None,
        &[],
    ));

    // BFS over cosets from the canonical representative of H itself
    let start = hchain.min_coset_rep(&Permutation::identity(g.degree()));
    let mut objects = vec![encode_perm_table(&start)];
    let mut index_map: HashMap<Vec<u8>, usize> = HashMap::new();
    index_map.insert(objects[0].clone(), 0);
    let mut reps = vec![start];
    let mut i = 0;
    while i < reps.len() {
        let rep = reps[i].clone();
        for gen in g.generators() {
            let next = hchain.min_coset_rep(&rep.compose_unchecked(gen));
            let enc = encode_perm_table(&next);
            if !index_map.contains_key(&enc) {
                index_map.insert(enc.clone(), reps.len());
                objects.push(enc);
                reps.push(next);
            }
        }
        i += 1;
    }
    assert_eq!(reps.len() as u128, index, "coset enumeration count mismatch");

    let domain = Arc::new(LabeledDomain::new(objects, ObjectKind::PermutationTables)?);
    g.induce(
        domain,
        Box::new(CosetAction { hchain }),
        label.or_else(|| {
            let gl = g.label().unwrap_or("G");
            let hl = h.label().unwrap_or("H");
            Some(format!("{gl} on cosets of {hl}"))
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_permutation;

    fn group(degree: usize, gens: &[&str], label: &str) -> GeneratedGroup {
        let gens: Vec<Permutation> = gens
            .iter()
            .map(|s| parse_permutation(s, degree).unwrap())
            .collect();
        GeneratedGroup::new(degree, gens, Some(label.into())).unwrap()
    }

    fn sym(n: usize) -> GeneratedGroup {
        let cycle: Vec<String> = vec![(1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(" ")];
        group(n, &[&format!("({})", cycle[0]), "(1 2)"], &format!("sym({n})"))
    }

    fn alt(n: usize) -> GeneratedGroup {
        // 3-cycle plus an n-cycle or (n-1)-cycle of even parity
        let long: String = if n % 2 == 1 {
            format!("({})", (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(" "))
        } else {
            format!("({})", (2..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(" "))
        };
        group(n, &["(1 2 3)", &long], &format!("alt({n})"))
    }

    #[test]
    fn orders_of_sym_and_alt() {
        assert_eq!(sym(4).order(), 24);
        assert_eq!(alt(8).order(), 20160);
        assert_eq!(sym(6).order(), 720);
    }

    #[test]
    fn trivial_group_chain() {
        let t = GeneratedGroup::trivial(5);
        assert_eq!(t.order(), 1);
        assert!(t.contains(&Permutation::identity(5)).unwrap());
        assert!(!t
            .contains(&parse_permutation("(1 2)", 5).unwrap())
            .unwrap());
    }

    #[test]
    fn order_is_hint_independent() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let g = alt(7);
        let expected = g.order();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let mut hint: Vec<usize> = (0..7).collect();
            hint.shuffle(&mut rng);
            let chain = build_chain(&g, &hint);
            assert_eq!(chain.image_order(), expected);
        }
    }

    #[test]
    fn contains_accepts_members_and_rejects_odd() {
        use rand::SeedableRng;
        let g = alt(6);
        let chain = g.chain();
        for gen in g.generators() {
            assert!(chain.contains(gen).unwrap());
        }
        let odd = parse_permutation("(1 2)", 6).unwrap();
        assert!(!chain.contains(&odd).unwrap());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let w = crate::group::random_word(g.generators(), 6, 10, &mut rng);
            assert!(chain.contains(&w).unwrap());
        }
    }

    #[test]
    fn contains_matches_exhaustive_enumeration() {
        // PSL-scale check: every enumerated element is a member, and a
        // permutation outside the group is rejected.
        let g = group(7, &["(1 2 3 4 5 6 7)", "(2 3)(4 7)"], "psl(3,2)-ish");
        let chain = g.chain();
        let elems = chain.elements_natural(10_000).unwrap();
        assert_eq!(elems.len() as u128, g.order());
        for e in elems.iter().step_by(7) {
            assert!(chain.contains(e).unwrap());
        }
        let outsider = parse_permutation("(1 2)", 7).unwrap();
        assert_eq!(
            chain.contains(&outsider).unwrap(),
            elems.contains(&outsider)
        );
    }

    #[test]
    fn point_stabilizer_orders() {
        let g = sym(5);
        let st = point_stabilizer(&g, 0).unwrap();
        assert_eq!(st.order(), 24);
        // orbit-stabilizer: |G| = |orbit| * |stab|
        assert_eq!(g.order(), 5 * st.order());
    }

    #[test]
    fn pointwise_stabilizer_examples() {
        let g = sym(6);
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(pointwise_stabilizer(&g, &all).unwrap().order(), 1);
        assert_eq!(pointwise_stabilizer(&g, &[]).unwrap().order(), 720);
    }

    #[test]
    fn fixed_points_examples() {
        let t = GeneratedGroup::trivial(5);
        assert_eq!(fixed_points(&t), vec![0, 1, 2, 3, 4]);
        let g = sym(5);
        assert!(fixed_points(&g).is_empty());
        let st = point_stabilizer(&g, 0).unwrap();
        assert_eq!(fixed_points(&st), vec![0]);
    }

    #[test]
    fn orbit_partition_examples() {
        let g = point_stabilizer(&sym(5), 0).unwrap();
        let orbs = orbits(&g);
        assert_eq!(orbs.cells(), &[vec![0], vec![1, 2, 3, 4]]);
        let t = GeneratedGroup::trivial(3);
        assert_eq!(orbits(&t).cell_count(), 3);
    }

    #[test]
    fn primitivity_examples() {
        // C6 regular is imprimitive
        let c6 = group(6, &["(1 2 3 4 5 6)"], "c6");
        assert!(!is_primitive(&c6).unwrap());
        // intransitive input is an error
        let fix = group(4, &["(1 2)"], "fix34");
        assert!(is_primitive(&fix).is_err());
        assert!(is_primitive(&sym(5)).unwrap());
    }

    #[test]
    fn coset_action_alt5_on_d10() {
        let a5 = alt(5);
        let d10 = group(5, &["(1 2 3 4 5)", "(2 5)(3 4)"], "d10");
        assert_eq!(d10.order(), 10);
        let act = coset_action(&a5, &d10, DEFAULT_INDEX_BOUND, None).unwrap();
        assert_eq!(act.degree(), 6);
        assert_eq!(act.order(), 60);
        assert!(orbits(&act).is_transitive(6));
    }

    #[test]
    fn coset_action_rejects_non_subgroups() {
        let a5 = alt(5);
        let s3 = group(5, &["(1 2)", "(1 2 3)"], "sym(3)-odd");
        assert!(matches!(
            coset_action(&a5, &s3, DEFAULT_INDEX_BOUND, None),
            Err(Error::NotASubgroup(_))
        ));
    }

    #[test]
    fn min_coset_rep_is_coset_invariant() {
        use rand::SeedableRng;
        let s5 = sym(5);
        let d10 = group(5, &["(1 2 3 4 5)", "(2 5)(3 4)"], "d10");
        let hchain = StabilizerChain::for_group(&d10, &[]);
        let elems = hchain.elements_natural(100).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..25 {
            let x = crate::group::random_word(s5.generators(), 5, 8, &mut rng);
            let canon = hchain.min_coset_rep(&x);
            for h in &elems {
                let hx = h.compose_unchecked(&x);
                assert_eq!(hchain.min_coset_rep(&hx), canon);
            }
        }
    }
}
