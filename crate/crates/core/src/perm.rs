//! Permutation groups given by generators, with a deterministic
//! Schreier–Sims stabilizer chain for order, membership, and element
//! enumeration. Also block systems, induced actions and fixers, wreath
//! embeddings, and regular-subgroup enumeration.

use std::collections::HashSet;
use std::sync::OnceLock;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::Group;

/// Default cap on the point count of wreath-product embeddings.
pub const POINT_CAP: usize = 4096;
/// Default budgets for regular-subgroup enumeration.
pub const REGULAR_ORDER_BUDGET: u64 = 1_000_000;
pub const REGULAR_DEGREE_BUDGET: usize = 24;

/// A permutation of 0..n given by its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Perm {
        Perm { images }
    }

    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// self after other: (self.compose(other))(x) = self(other(x)).
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn smallest_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i != x)
            .map(|(i, _)| i)
    }

    /// Cycle notation, fixed points omitted; "e" for the identity.
    pub fn cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&x.to_string());
                first = false;
                x = self.images[x];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push('e');
        }
        out
    }
}

struct Level {
    base: usize,
    /// Generators first introduced at this level; the group of level i is
    /// generated by the new_gens of all levels >= i.
    new_gens: Vec<Perm>,
    /// transversal[p] maps base to p; None when p is outside the orbit.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Level {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Perm::identity(degree));
        Level {
            base,
            new_gens: Vec::new(),
            transversal,
            orbit: vec![base],
        }
    }

    fn recompute_orbit(&mut self, degree: usize, gens: &[&Perm]) {
        let mut transversal: Vec<Option<Perm>> = vec![None; degree];
        transversal[self.base] = Some(Perm::identity(degree));
        let mut orbit = vec![self.base];
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in gens {
                let q = g.apply(p);
                if transversal[q].is_none() {
                    transversal[q] = Some(g.compose(transversal[p].as_ref().unwrap()));
                    orbit.push(q);
                }
            }
        }
        self.transversal = transversal;
        self.orbit = orbit;
    }
}

/// Stabilizer chain with deterministic base order.
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
    /// Bases forced for the leading levels (used for fixer extraction).
    forced_prefix: Vec<usize>,
}

impl StabChain {
    /// Build a chain for the group generated by `gens`. When
    /// `forced_prefix` is nonempty, the first levels use exactly those base
    /// points in order (levels may be trivial); afterwards bases are the
    /// smallest points moved, so the whole construction is deterministic.
    pub fn build(degree: usize, gens: &[Perm], forced_prefix: &[usize]) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
            forced_prefix: forced_prefix.to_vec(),
        };
        for g in gens {
            let (level, residue) = chain.sift_from(0, g.clone());
            if !residue.is_identity() {
                chain.place_residue(level, residue);
            }
        }
        // Verify Schreier generators level by level, deepest first; after an
        // insertion at level j, levels <= j are rescanned from j downwards.
        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            match chain.verify_level(i as usize) {
                Some(fixed_at) => i = fixed_at as isize,
                None => i -= 1,
            }
        }
        chain
    }

    fn cumulative_gens(&self, from: usize) -> Vec<&Perm> {
        self.levels[from..]
            .iter()
            .flat_map(|lvl| lvl.new_gens.iter())
            .collect()
    }

    fn recompute_orbits_through(&mut self, last: usize) {
        for i in (0..=last.min(self.levels.len().saturating_sub(1))).rev() {
            let gens: Vec<Perm> = self.cumulative_gens(i).into_iter().cloned().collect();
            let refs: Vec<&Perm> = gens.iter().collect();
            let degree = self.degree;
            self.levels[i].recompute_orbit(degree, &refs);
        }
    }

    /// Insert a residue that got stuck at `at`, creating levels as needed so
    /// that every generator lives at the level of its first moved base.
    /// Returns the level that received it.
    fn place_residue(&mut self, mut at: usize, residue: Perm) -> usize {
        debug_assert!(!residue.is_identity());
        loop {
            if at == self.levels.len() {
                let base = if at < self.forced_prefix.len() {
                    self.forced_prefix[at]
                } else {
                    residue.smallest_moved().expect("identity residue")
                };
                self.levels.push(Level::new(self.degree, base));
            }
            if residue.apply(self.levels[at].base) != self.levels[at].base {
                self.levels[at].new_gens.push(residue);
                self.recompute_orbits_through(at);
                return at;
            }
            at += 1;
        }
    }

    /// Sift p through levels starting at `from`; returns the level at which
    /// it gets stuck and the residue (identity residue means membership).
    fn sift_from(&self, from: usize, mut p: Perm) -> (usize, Perm) {
        for (i, lvl) in self.levels.iter().enumerate().skip(from) {
            let image = p.apply(lvl.base);
            if image == lvl.base {
                continue;
            }
            match &lvl.transversal[image] {
                Some(t) => p = t.inverse().compose(&p),
                None => return (i, p),
            }
        }
        (self.levels.len(), p)
    }

    /// Check all Schreier generators of a level; on failure insert the
    /// residue and report the level where it landed.
    fn verify_level(&mut self, i: usize) -> Option<usize> {
        let orbit = self.levels[i].orbit.clone();
        let gens: Vec<Perm> = self.cumulative_gens(i).into_iter().cloned().collect();
        for &p in &orbit {
            let t_p = self.levels[i].transversal[p].as_ref().unwrap().clone();
            for g in &gens {
                let q = g.apply(p);
                let t_q = self.levels[i].transversal[q].as_ref().unwrap().clone();
                let schreier = t_q.inverse().compose(&g.compose(&t_p));
                if schreier.is_identity() {
                    continue;
                }
                let (level, residue) = self.sift_from(i + 1, schreier);
                if !residue.is_identity() {
                    let placed = self.place_residue(level.max(i + 1), residue);
                    return Some(placed);
                }
            }
        }
        None
    }

    pub fn order(&self) -> BigUint {
        let mut ord = BigUint::from(1u32);
        for lvl in &self.levels {
            ord *= BigUint::from(lvl.orbit.len());
        }
        ord
    }

    pub fn contains(&self, p: &Perm) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (_, residue) = self.sift_from(0, p.clone());
        residue.is_identity()
    }

    /// Strong generators fixing all of the forced prefix pointwise.
    fn generators_below_prefix(&self) -> Vec<Perm> {
        let m = self.forced_prefix.len();
        self.levels
            .iter()
            .skip(m)
            .flat_map(|lvl| lvl.new_gens.iter().cloned())
            .collect()
    }

    /// Enumerate all elements, as products of transversal representatives.
    fn elements_capped(&self, cap: u64) -> Result<Vec<Perm>> {
        let order = self.order();
        if order > BigUint::from(cap) {
            return Err(Error::BudgetExceeded {
                detail: format!("group order {order} exceeds enumeration cap {cap}"),
            });
        }
        let mut out = vec![Perm::identity(self.degree)];
        for lvl in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * lvl.orbit.len());
            for &p in &lvl.orbit {
                let t = lvl.transversal[p].as_ref().unwrap();
                for e in &out {
                    next.push(t.compose(e));
                }
            }
            out = next;
        }
        Ok(out)
    }
}

/// A permutation group on 0..degree given by generators.
///
/// The stabilizer chain is built once on first use and shared afterwards;
/// all queries are read-only.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain: OnceLock::new(),
        }
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, {} gens)",
            self.degree,
            self.generators.len()
        )
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> PermGroup {
        let mut seen = HashSet::new();
        let mut gens = Vec::new();
        for g in generators {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
            if g.is_identity() {
                continue;
            }
            if seen.insert(g.images().to_vec()) {
                gens.push(g);
            }
        }
        PermGroup {
            degree,
            generators: gens,
            chain: OnceLock::new(),
        }
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, Vec::new())
    }

    /// Full symmetric group on the given points of 0..degree.
    pub fn symmetric_on(degree: usize, points: &[usize]) -> PermGroup {
        let mut gens = Vec::new();
        if points.len() >= 2 {
            let mut images: Vec<usize> = (0..degree).collect();
            images[points[0]] = points[1];
            images[points[1]] = points[0];
            gens.push(Perm::new(images));
        }
        if points.len() >= 3 {
            let mut images: Vec<usize> = (0..degree).collect();
            for w in 0..points.len() {
                images[points[w]] = points[(w + 1) % points.len()];
            }
            gens.push(Perm::new(images));
        }
        PermGroup::new(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators, &[]))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(self.order()).ok()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.chain().contains(p)
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    pub fn elements_capped(&self, cap: u64) -> Result<Vec<Perm>> {
        self.chain().elements_capped(cap)
    }

    /// Pointwise stabilizer of the given points, as its own group.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermGroup {
        let chain = StabChain::build(self.degree, &self.generators, points);
        PermGroup::new(self.degree, chain.generators_below_prefix())
    }

    /// Exact order of the permutation group; spelled out for callers that
    /// want the group order as a plain count when it fits.
    pub fn order_string(&self) -> String {
        self.order().to_string()
    }
}

/// Intersection of two permutation groups of the same degree, by
/// enumerating the smaller group and filtering through the larger one's
/// stabilizer chain.
pub fn intersection(a: &PermGroup, b: &PermGroup, cap: u64) -> Result<PermGroup> {
    assert_eq!(a.degree(), b.degree());
    let (small, large) = if a.order() <= b.order() {
        (a, b)
    } else {
        (b, a)
    };
    let elements = small.elements_capped(cap)?;
    let common: Vec<Perm> = elements.into_iter().filter(|p| large.contains(p)).collect();
    Ok(PermGroup::new(a.degree(), common))
}

/// An equal-size cell partition preserved by a permutation group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSystem {
    pub cells: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub fn new(mut cells: Vec<Vec<usize>>) -> BlockSystem {
        for c in &mut cells {
            c.sort_unstable();
        }
        cells.sort_by_key(|c| c[0]);
        BlockSystem { cells }
    }

    pub fn singletons(n: usize) -> BlockSystem {
        BlockSystem {
            cells: (0..n).map(|x| vec![x]).collect(),
        }
    }

    pub fn whole(n: usize) -> BlockSystem {
        BlockSystem {
            cells: vec![(0..n).collect()],
        }
    }

    pub fn block_size(&self) -> usize {
        self.cells[0].len()
    }

    pub fn cell_index(&self, n: usize) -> Vec<usize> {
        let mut idx = vec![usize::MAX; n];
        for (c, cell) in self.cells.iter().enumerate() {
            for &x in cell {
                idx[x] = c;
            }
        }
        idx
    }

    /// True when every cell of `coarser` is a union of cells of self.
    pub fn refines(&self, coarser: &BlockSystem, n: usize) -> bool {
        let idx = coarser.cell_index(n);
        self.cells.iter().all(|cell| {
            let c = idx[cell[0]];
            cell.iter().all(|&x| idx[x] == c)
        })
    }

    /// Check the block property; on failure name a violating generator/cell.
    pub fn check(&self, group: &PermGroup) -> Result<()> {
        let n = group.degree();
        let idx = self.cell_index(n);
        if idx.contains(&usize::MAX) {
            return Err(Error::BadPartition {
                detail: "cells do not cover all points".into(),
            });
        }
        for (gi, g) in group.generators().iter().enumerate() {
            for (ci, cell) in self.cells.iter().enumerate() {
                let image_cell = idx[g.apply(cell[0])];
                if cell.iter().any(|&x| idx[g.apply(x)] != image_cell) {
                    return Err(Error::NotABlockSystem {
                        generator: gi,
                        cell: ci,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Finest block system of a transitive group in which the two seed points
/// share a block (the classical union-find refinement).
pub fn finest_system_with_pair(group: &PermGroup, a: usize, b: usize) -> BlockSystem {
    let n = group.degree();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut queue = vec![(a, b)];
    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
    parent[ra] = rb;
    while let Some((x, y)) = queue.pop() {
        for g in group.generators() {
            let (gx, gy) = (g.apply(x), g.apply(y));
            let (rx, ry) = (find(&mut parent, gx), find(&mut parent, gy));
            if rx != ry {
                parent[rx] = ry;
                queue.push((gx, gy));
            }
        }
    }
    let mut cells_map: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for x in 0..n {
        let r = find(&mut parent, x);
        cells_map.entry(r).or_default().push(x);
    }
    BlockSystem::new(cells_map.into_values().collect())
}

/// All minimal nontrivial block systems of a transitive group, plus the two
/// trivial systems, sorted by block size.
pub fn block_systems(group: &PermGroup) -> Result<Vec<BlockSystem>> {
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let n = group.degree();
    let mut candidates: Vec<BlockSystem> = Vec::new();
    for beta in 1..n {
        let sys = finest_system_with_pair(group, 0, beta);
        if sys.cells.len() > 1 && sys.cells.len() < n && !candidates.contains(&sys) {
            candidates.push(sys);
        }
    }
    let minimal: Vec<BlockSystem> = candidates
        .iter()
        .filter(|sys| {
            !candidates
                .iter()
                .any(|other| *other != **sys && other.refines(sys, n))
        })
        .cloned()
        .collect();
    let mut out = vec![BlockSystem::singletons(n)];
    let mut sorted = minimal;
    sorted.sort_by_key(|s| s.block_size());
    out.extend(sorted);
    let whole = BlockSystem::whole(n);
    if !out.contains(&whole) {
        out.push(whole);
    }
    Ok(out)
}

/// The action on cells induced by a block system, and its kernel.
///
/// The kernel (the fixer) comes from a stabilizer chain over the extended
/// action on cells-then-points, whose leading base points are the cells.
pub fn induced_action_and_fixer(
    group: &PermGroup,
    system: &BlockSystem,
) -> Result<(PermGroup, PermGroup)> {
    system.check(group)?;
    let n = group.degree();
    let m = system.cells.len();
    let idx = system.cell_index(n);
    let quotient_gens: Vec<Perm> = group
        .generators()
        .iter()
        .map(|g| {
            Perm::new(
                system
                    .cells
                    .iter()
                    .map(|cell| idx[g.apply(cell[0])])
                    .collect(),
            )
        })
        .collect();
    let quotient = PermGroup::new(m, quotient_gens);
    // Extended action: points 0..m are the cells, m..m+n the original points.
    let extended_gens: Vec<Perm> = group
        .generators()
        .iter()
        .map(|g| {
            let mut images = Vec::with_capacity(m + n);
            for cell in &system.cells {
                images.push(idx[g.apply(cell[0])]);
            }
            for p in 0..n {
                images.push(m + g.apply(p));
            }
            Perm::new(images)
        })
        .collect();
    let prefix: Vec<usize> = (0..m).collect();
    let chain = StabChain::build(m + n, &extended_gens, &prefix);
    let fixer_gens: Vec<Perm> = chain
        .generators_below_prefix()
        .into_iter()
        .map(|g| Perm::new((0..n).map(|p| g.apply(m + p) - m).collect()))
        .collect();
    let fixer = PermGroup::new(n, fixer_gens);
    Ok((quotient, fixer))
}

/// The imprimitive wreath embedding of two permutation groups.
#[derive(Debug, Clone)]
pub struct WreathEmbedding {
    pub top: PermGroup,
    pub bottom: PermGroup,
    pub product: PermGroup,
}

/// Generators of top ≀ bottom acting on X × Y in row-major order: top
/// generators permute rows, bottom generators act inside each row.
pub fn wreath_embed(top: &PermGroup, bottom: &PermGroup) -> Result<WreathEmbedding> {
    wreath_embed_with_cap(top, bottom, POINT_CAP)
}

pub fn wreath_embed_with_cap(
    top: &PermGroup,
    bottom: &PermGroup,
    cap: usize,
) -> Result<WreathEmbedding> {
    let (x, y) = (top.degree(), bottom.degree());
    let size = x.saturating_mul(y);
    if size > cap {
        return Err(Error::DegreeOverflow { size, cap });
    }
    let mut gens = Vec::new();
    for g in top.generators() {
        let mut images = vec![0usize; size];
        for row in 0..x {
            for col in 0..y {
                images[row * y + col] = g.apply(row) * y + col;
            }
        }
        gens.push(Perm::new(images));
    }
    for row in 0..x {
        for h in bottom.generators() {
            let mut images: Vec<usize> = (0..size).collect();
            for col in 0..y {
                images[row * y + col] = row * y + h.apply(col);
            }
            gens.push(Perm::new(images));
        }
    }
    Ok(WreathEmbedding {
        top: top.clone(),
        bottom: bottom.clone(),
        product: PermGroup::new(size, gens),
    })
}

/// The lexi-partition of a wreath embedding: one cell per row.
pub fn lexi_partition(x: usize, y: usize) -> BlockSystem {
    BlockSystem::new(
        (0..x)
            .map(|row| (row * y..(row + 1) * y).collect())
            .collect(),
    )
}

/// All regular subgroups of a transitive group, each with the abstract
/// group read off its regular action (table[u][v] = r_u(v)).
pub fn regular_subgroups(group: &PermGroup) -> Result<Vec<(PermGroup, Group)>> {
    regular_subgroups_with_budget(group, REGULAR_ORDER_BUDGET, REGULAR_DEGREE_BUDGET)
}

pub fn regular_subgroups_with_budget(
    group: &PermGroup,
    order_budget: u64,
    degree_budget: usize,
) -> Result<Vec<(PermGroup, Group)>> {
    let n = group.degree();
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    if n > degree_budget || group.order() > BigUint::from(order_budget) {
        return Err(Error::BudgetExceeded {
            detail: format!(
                "regular-subgroup search wants degree <= {degree_budget} and order <= {order_budget}"
            ),
        });
    }
    if n == 1 {
        let table = Group::from_flat_unchecked(1, vec![0], None);
        return Ok(vec![(PermGroup::trivial(1), table)]);
    }
    // All elements sending 0 to v, for each v: transversal rep times Stab(0).
    let stab0 = group.pointwise_stabilizer(&[0]);
    let stab_elements = stab0.elements_capped(order_budget)?;
    let chain = StabChain::build(n, group.generators(), &[0]);
    let t0 = &chain.levels[0];
    debug_assert_eq!(t0.base, 0);
    let mut by_image: Vec<Vec<Perm>> = vec![Vec::new(); n];
    for v in 0..n {
        if let Some(t) = &t0.transversal[v] {
            for s in &stab_elements {
                let e = t.compose(s);
                if e.images()
                    .iter()
                    .enumerate()
                    .all(|(i, &x)| i != x || e.is_identity())
                {
                    // derangement (or identity, which lands at v = 0)
                    by_image[v].push(e);
                }
            }
            by_image[v].sort();
        }
    }

    fn close_semiregular(n: usize, seed: &[Perm]) -> Option<Vec<Perm>> {
        // Closure under composition; fail if it stops being semiregular or
        // exceeds n elements.
        let mut elems: Vec<Perm> = vec![Perm::identity(n)];
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        seen.insert(elems[0].images().to_vec());
        let mut queue: Vec<Perm> = Vec::new();
        for p in seed {
            if seen.insert(p.images().to_vec()) {
                elems.push(p.clone());
                queue.push(p.clone());
            }
        }
        while let Some(p) = queue.pop() {
            if !p.is_identity() && p.images().iter().enumerate().any(|(i, &x)| i == x) {
                return None;
            }
            let snapshot = elems.clone();
            for q in snapshot {
                for r in [p.compose(&q), q.compose(&p)] {
                    if seen.insert(r.images().to_vec()) {
                        if elems.len() == n {
                            return None;
                        }
                        elems.push(r.clone());
                        queue.push(r);
                    }
                }
            }
        }
        Some(elems)
    }

    let mut found: Vec<Vec<Perm>> = Vec::new();
    let mut found_signatures: HashSet<Vec<Vec<usize>>> = HashSet::new();
    let mut partial_seen: HashSet<Vec<Vec<usize>>> = HashSet::new();

    fn signature(elems: &[Perm]) -> Vec<Vec<usize>> {
        let mut sig: Vec<Vec<usize>> = elems.iter().map(|p| p.images().to_vec()).collect();
        sig.sort();
        sig
    }

    #[allow(clippy::ptr_arg)]
    fn search(
        n: usize,
        by_image: &[Vec<Perm>],
        current: Vec<Perm>,
        found: &mut Vec<Vec<Perm>>,
        found_signatures: &mut HashSet<Vec<Vec<usize>>>,
        partial_seen: &mut HashSet<Vec<Vec<usize>>>,
    ) {
        let covered: HashSet<usize> = current.iter().map(|p| p.apply(0)).collect();
        if covered.len() == n {
            let sig = signature(&current);
            if found_signatures.insert(sig) {
                found.push(current);
            }
            return;
        }
        let v = (0..n).find(|x| !covered.contains(x)).unwrap();
        for cand in &by_image[v] {
            let mut seed = current.clone();
            seed.push(cand.clone());
            if let Some(closure) = close_semiregular(n, &seed) {
                let sig = signature(&closure);
                if partial_seen.insert(sig) {
                    search(n, by_image, closure, found, found_signatures, partial_seen);
                }
            }
        }
    }

    search(
        n,
        &by_image,
        vec![Perm::identity(n)],
        &mut found,
        &mut found_signatures,
        &mut partial_seen,
    );

    let mut results: Vec<(PermGroup, Group)> = Vec::new();
    let mut ordered: Vec<Vec<Perm>> = found;
    ordered.sort_by_key(|elems| signature(elems));
    for elems in ordered {
        // r_v = the unique element with r_v(0) = v
        let mut by_zero_image: Vec<Option<&Perm>> = vec![None; n];
        for p in &elems {
            by_zero_image[p.apply(0)] = Some(p);
        }
        let mut flat = vec![0usize; n * n];
        for u in 0..n {
            let ru = by_zero_image[u].unwrap();
            for v in 0..n {
                flat[u * n + v] = ru.apply(v);
            }
        }
        let abstract_group = Group::from_flat_unchecked(n, flat, None);
        results.push((PermGroup::new(n, elems), abstract_group));
    }
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn cyclic_group(n: usize) -> PermGroup {
        let images: Vec<usize> = (0..n).map(|x| (x + 1) % n).collect();
        PermGroup::new(n, vec![Perm::new(images)])
    }

    fn symmetric_group(n: usize) -> PermGroup {
        PermGroup::symmetric_on(n, &(0..n).collect::<Vec<_>>())
    }

    #[test]
    fn perm_compose_is_right_to_left() {
        let f = Perm::new(vec![1, 0, 2]);
        let g = Perm::new(vec![0, 2, 1]);
        // (f∘g)(1) = f(g(1)) = f(2) = 2
        assert_eq!(f.compose(&g).apply(1), 2);
        assert!(f.compose(&f).is_identity());
    }

    #[test]
    fn order_of_s3_from_generators() {
        let g = PermGroup::new(3, vec![Perm::new(vec![1, 0, 2]), Perm::new(vec![1, 2, 0])]);
        assert_eq!(g.order(), BigUint::from(6u32));
    }

    #[test]
    fn order_of_trivial_group() {
        let g = PermGroup::trivial(5);
        assert_eq!(g.order(), BigUint::from(1u32));
    }

    #[test]
    fn order_of_larger_symmetric_groups() {
        assert_eq!(symmetric_group(6).order(), BigUint::from(720u32));
        assert_eq!(symmetric_group(8).order(), BigUint::from(40320u32));
        assert_eq!(symmetric_group(12).order(), BigUint::from(479001600u64));
    }

    #[test]
    fn membership_by_sifting() {
        let g = PermGroup::new(4, vec![Perm::new(vec![1, 2, 3, 0])]);
        assert!(g.contains(&Perm::new(vec![2, 3, 0, 1])));
        assert!(!g.contains(&Perm::new(vec![1, 0, 2, 3])));
    }

    #[test]
    fn chain_order_matches_naive_closure_up_to_ten_thousand() {
        // S7 by closure: 5040 elements enumerated one by one.
        let gens = vec![
            Perm::new(vec![1, 0, 2, 3, 4, 5, 6]),
            Perm::new(vec![1, 2, 3, 4, 5, 6, 0]),
        ];
        let group = PermGroup::new(7, gens.clone());
        let mut elems: HashSet<Vec<usize>> = HashSet::new();
        elems.insert(Perm::identity(7).images().to_vec());
        let mut queue = vec![Perm::identity(7)];
        while let Some(p) = queue.pop() {
            for g in &gens {
                let q = p.compose(g);
                if elems.insert(q.images().to_vec()) {
                    queue.push(q);
                }
            }
        }
        assert_eq!(elems.len(), 5040);
        assert_eq!(group.order(), BigUint::from(5040u32));
    }

    #[test]
    fn chain_order_matches_naive_closure_on_small_groups() {
        // Cross-check the chain order against plain closure enumeration.
        for gens in [
            vec![vec![1, 2, 3, 4, 5, 0]],
            vec![vec![1, 0, 2, 3, 4, 5], vec![1, 2, 3, 4, 5, 0]],
            vec![vec![1, 2, 0, 3, 4, 5], vec![0, 1, 2, 4, 5, 3]],
            vec![vec![5, 4, 3, 2, 1, 0]],
        ] {
            let perms: Vec<Perm> = gens.iter().cloned().map(Perm::new).collect();
            let group = PermGroup::new(6, perms.clone());
            let mut elems: HashSet<Vec<usize>> = HashSet::new();
            elems.insert(Perm::identity(6).images().to_vec());
            let mut queue: Vec<Perm> = vec![Perm::identity(6)];
            while let Some(p) = queue.pop() {
                for g in &perms {
                    let q = p.compose(g);
                    if elems.insert(q.images().to_vec()) {
                        queue.push(q);
                    }
                }
            }
            assert_eq!(group.order(), BigUint::from(elems.len()));
            let listed = group.elements_capped(10_000).unwrap();
            assert_eq!(listed.len(), elems.len());
            for e in listed {
                assert!(elems.contains(e.images()));
            }
        }
    }

    #[test]
    fn block_systems_of_regular_z6() {
        let g = cyclic_group(6);
        let systems = block_systems(&g).unwrap();
        assert_eq!(systems.len(), 4);
        assert_eq!(systems[0], BlockSystem::singletons(6));
        assert_eq!(systems[1].cells, vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert_eq!(systems[2].cells, vec![vec![0, 2, 4], vec![1, 3, 5]]);
        assert_eq!(systems[3], BlockSystem::whole(6));
    }

    #[test]
    fn primitive_group_has_only_trivial_systems() {
        let systems = block_systems(&symmetric_group(5)).unwrap();
        assert_eq!(systems.len(), 2);
    }

    #[test]
    fn intransitive_group_rejected() {
        let g = PermGroup::trivial(3);
        match block_systems(&g) {
            Err(Error::NotTransitive) => {}
            other => panic!("expected NotTransitive, got {other:?}"),
        }
    }

    #[test]
    fn induced_action_and_fixer_on_z6_blocks() {
        let g = cyclic_group(6);
        let sys = BlockSystem::new(vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        let (quotient, fixer) = induced_action_and_fixer(&g, &sys).unwrap();
        assert_eq!(quotient.order(), BigUint::from(3u32));
        assert_eq!(fixer.order(), BigUint::from(2u32));
        assert_eq!(quotient.order() * fixer.order(), g.order());
    }

    #[test]
    fn fixer_of_singleton_system_is_trivial() {
        let g = symmetric_group(4);
        let sys = BlockSystem::singletons(4);
        let (quotient, fixer) = induced_action_and_fixer(&g, &sys).unwrap();
        assert_eq!(quotient.order(), g.order());
        assert_eq!(fixer.order(), BigUint::from(1u32));
    }

    #[test]
    fn non_block_system_rejected() {
        let g = symmetric_group(4);
        let sys = BlockSystem::new(vec![vec![0, 1], vec![2, 3]]);
        match induced_action_and_fixer(&g, &sys) {
            Err(Error::NotABlockSystem { .. }) => {}
            other => panic!("expected NotABlockSystem, got {other:?}"),
        }
    }

    #[test]
    fn wreath_embed_orders() {
        let s2 = symmetric_group(2);
        let s3 = symmetric_group(3);
        let w = wreath_embed(&s2, &s2).unwrap();
        assert_eq!(w.product.order(), BigUint::from(8u32));
        let w = wreath_embed(&s3, &s2).unwrap();
        assert_eq!(w.product.order(), BigUint::from(48u32));
        let w = wreath_embed(&PermGroup::trivial(1), &s3).unwrap();
        assert_eq!(w.product.order(), BigUint::from(6u32));
    }

    #[test]
    fn wreath_embed_order_invariant_and_lexi_blocks() {
        let tops = [cyclic_group(3), symmetric_group(3)];
        let bottoms = [cyclic_group(2), symmetric_group(4)];
        for top in &tops {
            for bottom in &bottoms {
                let w = wreath_embed(top, bottom).unwrap();
                let expected =
                    top.order() * bottom.order().pow(u32::try_from(top.degree()).unwrap());
                assert_eq!(w.product.order(), expected);
                let lex = lexi_partition(top.degree(), bottom.degree());
                lex.check(&w.product).unwrap();
                let (quotient, _) = induced_action_and_fixer(&w.product, &lex).unwrap();
                // The induced action on rows is exactly the top group.
                assert_eq!(quotient.order(), top.order());
                for g in quotient.generators() {
                    assert!(top.contains(g));
                }
            }
        }
    }

    #[test]
    fn wreath_embed_cap() {
        let s2 = symmetric_group(100);
        match wreath_embed_with_cap(&s2, &s2, 4096) {
            Err(Error::DegreeOverflow {
                size: 10000,
                cap: 4096,
            }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn refinement_is_a_partial_order_on_regular_cyclic_fixtures() {
        let g = cyclic_group(12);
        let systems = block_systems(&g).unwrap();
        for a in &systems {
            for b in &systems {
                if a.refines(b, 12) && b.refines(a, 12) {
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn regular_subgroups_of_cyclic_aut() {
        // The full automorphism group of a directed 6-cycle is Z6 itself.
        let z6 = cyclic_group(6);
        let regs = regular_subgroups(&z6).unwrap();
        assert_eq!(regs.len(), 1);
        assert_eq!(regs[0].1.order(), 6);
        assert!(regs[0].1.is_abelian());
    }

    #[test]
    fn regular_subgroups_of_s4() {
        // S4 acting naturally: regular subgroups of order 4 are the three
        // cyclic groups generated by 4-cycles plus the normal Klein group.
        let s4 = symmetric_group(4);
        let regs = regular_subgroups(&s4).unwrap();
        assert_eq!(regs.len(), 4);
        let cyclic_count = regs
            .iter()
            .filter(|(_, g)| (0..4).any(|x| g.element_order(x) == 4))
            .count();
        assert_eq!(cyclic_count, 3);
        let klein = &regs
            .iter()
            .find(|(_, g)| (1..4).all(|x| g.element_order(x) == 2));
        assert!(klein.is_some());
        for (pg, ag) in &regs {
            assert_eq!(pg.order(), BigUint::from(4u32));
            // abstract table matches the permutation action
            let _ = crate::group::Group::from_table(&ag.table_rows(), None).unwrap();
        }
    }

    #[test]
    fn regular_subgroup_budget() {
        let s4 = symmetric_group(4);
        match regular_subgroups_with_budget(&s4, 10, 24) {
            Err(Error::BudgetExceeded { .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn pointwise_stabilizer_orders() {
        let s4 = symmetric_group(4);
        let stab = s4.pointwise_stabilizer(&[0]);
        assert_eq!(stab.order(), BigUint::from(6u32));
        let stab2 = s4.pointwise_stabilizer(&[0, 1]);
        assert_eq!(stab2.order(), BigUint::from(2u32));
        for g in stab2.generators() {
            assert_eq!(g.apply(0), 0);
            assert_eq!(g.apply(1), 1);
        }
    }

    #[test]
    fn intersection_of_dihedral_and_cyclic() {
        // In S6: <rotation> has order 6; the dihedral group adds a flip.
        let rot = Perm::new(vec![1, 2, 3, 4, 5, 0]);
        let flip = Perm::new(vec![0, 5, 4, 3, 2, 1]);
        let c6 = PermGroup::new(6, vec![rot.clone()]);
        let d6 = PermGroup::new(6, vec![rot, flip.clone()]);
        let other = PermGroup::new(6, vec![flip]);
        let i = intersection(&c6, &d6, 10_000).unwrap();
        assert_eq!(i.order(), BigUint::from(6u32));
        let j = intersection(&c6, &other, 10_000).unwrap();
        assert_eq!(j.order(), BigUint::from(1u32));
    }

    #[test]
    fn order_multiplicativity_for_each_block_system() {
        for group in [cyclic_group(8), symmetric_group(4), fixtures_perm_d4()] {
            if !group.is_transitive() {
                continue;
            }
            for sys in block_systems(&group).unwrap() {
                sys.check(&group).unwrap();
                let (q, f) = induced_action_and_fixer(&group, &sys).unwrap();
                assert_eq!(q.order() * f.order(), group.order());
            }
        }
    }

    fn fixtures_perm_d4() -> PermGroup {
        // dihedral group of the square 0-1-2-3
        PermGroup::new(
            4,
            vec![Perm::new(vec![1, 2, 3, 0]), Perm::new(vec![0, 3, 2, 1])],
        )
    }

    #[test]
    fn fixture_groups_have_consistent_regular_action() {
        // Left translations of any fixture group form a regular group whose
        // permutation order equals the group order.
        for (_, g) in fixtures::all() {
            let gens: Vec<Perm> = (0..g.order()).map(|a| g.left_translation(a)).collect();
            let pg = PermGroup::new(g.order(), gens);
            assert_eq!(pg.order(), BigUint::from(g.order()));
        }
    }
}
