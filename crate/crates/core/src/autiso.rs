//! Automorphism groups of digraphs (brute force and structural) and
//! isomorphism testing and transfer between coset digraphs and Cayley
//! digraphs.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::construct::{cayley, coset_digraph, CayleySpec, CosetSpec};
use crate::digraph::{quotient, twin_classes, wreath, wreath_condition, Digraph, VertexPartition};
use crate::error::{Error, Result};
use crate::group::{group_isomorphism, left_cosets, max_two_sided_stabilizer, Group, Subgroup};
use crate::perm::{regular_subgroups, wreath_embed, BlockSystem, Perm, PermGroup};
use crate::recognize::maximal_witness;

/// Search caps for the exhaustive engines.
#[derive(Debug, Clone)]
pub struct SearchLimits {
    pub max_vertices: usize,
    pub node_budget: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_vertices: 64,
            node_budget: 50_000_000,
        }
    }
}

/// How an automorphism group was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutMethod {
    Brute,
    Structural,
}

/// An automorphism group together with its provenance. Every generator is
/// checked against the digraph's arc set before the result is returned.
#[derive(Debug, Clone)]
pub struct AutResult {
    pub group: PermGroup,
    pub method: AutMethod,
    pub derivation: Vec<String>,
}

impl AutResult {
    pub fn order(&self) -> BigUint {
        self.group.order()
    }
}

/// A vertex bijection carrying arcs to arcs and non-arcs to non-arcs.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct IsoCertificate {
    pub mapping: Vec<usize>,
}

impl IsoCertificate {
    pub fn identity(n: usize) -> IsoCertificate {
        IsoCertificate {
            mapping: (0..n).collect(),
        }
    }

    pub fn verify(&self, from: &Digraph, to: &Digraph) -> bool {
        let n = from.vertex_count();
        if to.vertex_count() != n || self.mapping.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &x in &self.mapping {
            if x >= n || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        for u in 0..n {
            for v in 0..n {
                if u != v && from.has_arc(u, v) != to.has_arc(self.mapping[u], self.mapping[v]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn inverse(&self) -> IsoCertificate {
        let mut mapping = vec![0; self.mapping.len()];
        for (i, &x) in self.mapping.iter().enumerate() {
            mapping[x] = i;
        }
        IsoCertificate { mapping }
    }

    /// self then other.
    pub fn then(&self, other: &IsoCertificate) -> IsoCertificate {
        IsoCertificate {
            mapping: self.mapping.iter().map(|&x| other.mapping[x]).collect(),
        }
    }
}

pub fn is_automorphism(d: &Digraph, p: &Perm) -> bool {
    IsoCertificate {
        mapping: p.images().to_vec(),
    }
    .verify(d, d)
}

/// Iterated refinement by in/out-degree and neighbor color multisets.
/// Colors are comparable across the provided digraphs.
fn refine_colors(graphs: &[&Digraph]) -> Vec<Vec<usize>> {
    let mut colors: Vec<Vec<usize>> = Vec::new();
    {
        let mut keys: Vec<Vec<(usize, usize)>> = Vec::new();
        for d in graphs {
            keys.push(
                (0..d.vertex_count())
                    .map(|u| (d.out_neighbors(u).len(), d.in_neighbors(u).len()))
                    .collect(),
            );
        }
        let mut table: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for ks in &keys {
            for &k in ks {
                let next = table.len();
                table.entry(k).or_insert(next);
            }
        }
        // renumber in sorted key order for canonicity
        let mut sorted: Vec<_> = table.keys().copied().collect();
        sorted.sort_unstable();
        let rank: BTreeMap<(usize, usize), usize> = sorted
            .into_iter()
            .enumerate()
            .map(|(i, k)| (k, i))
            .collect();
        for ks in keys {
            colors.push(ks.into_iter().map(|k| rank[&k]).collect());
        }
    }
    type NeighborKey = (usize, Vec<usize>, Vec<usize>);
    loop {
        let mut keys: Vec<Vec<NeighborKey>> = Vec::new();
        for (gi, d) in graphs.iter().enumerate() {
            keys.push(
                (0..d.vertex_count())
                    .map(|u| {
                        let mut outs: Vec<usize> =
                            d.out_neighbors(u).iter().map(|&v| colors[gi][v]).collect();
                        let mut ins: Vec<usize> =
                            d.in_neighbors(u).iter().map(|&v| colors[gi][v]).collect();
                        outs.sort_unstable();
                        ins.sort_unstable();
                        (colors[gi][u], outs, ins)
                    })
                    .collect(),
            );
        }
        let mut sorted: Vec<&(usize, Vec<usize>, Vec<usize>)> = keys.iter().flatten().collect();
        sorted.sort();
        sorted.dedup();
        let rank: BTreeMap<&(usize, Vec<usize>, Vec<usize>), usize> = sorted
            .into_iter()
            .enumerate()
            .map(|(i, k)| (k, i))
            .collect();
        let next: Vec<Vec<usize>> = keys
            .iter()
            .map(|ks| ks.iter().map(|k| rank[k]).collect())
            .collect();
        if next == colors {
            return colors;
        }
        colors = next;
    }
}

/// Depth-first search for one bijection extending a forced prefix, mapping
/// vertices of `from` onto `to` consistently with colors and arcs.
#[allow(clippy::too_many_arguments, clippy::type_complexity)]
fn search_mapping(
    from: &Digraph,
    to: &Digraph,
    colors_from: &[usize],
    colors_to: &[usize],
    prefix: &[(usize, usize)],
    nodes: &mut u64,
    budget: u64,
) -> Result<Option<Vec<usize>>> {
    let n = from.vertex_count();
    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let consistent = |mapping: &[usize], v: usize, c: usize| -> bool {
        if colors_from[v] != colors_to[c] {
            return false;
        }
        for u in 0..n {
            if mapping[u] == usize::MAX || u == v {
                continue;
            }
            if from.has_arc(u, v) != to.has_arc(mapping[u], c)
                || from.has_arc(v, u) != to.has_arc(c, mapping[u])
            {
                return false;
            }
        }
        true
    };
    for &(v, c) in prefix {
        if mapping[v] != usize::MAX || used[c] || !consistent(&mapping, v, c) {
            return Ok(None);
        }
        mapping[v] = c;
        used[c] = true;
    }
    fn dfs(
        n: usize,
        mapping: &mut [usize],
        used: &mut [bool],
        nodes: &mut u64,
        budget: u64,
        consistent: &dyn Fn(&[usize], usize, usize) -> bool,
    ) -> Result<bool> {
        let Some(v) = (0..n).find(|&v| mapping[v] == usize::MAX) else {
            return Ok(true);
        };
        for c in 0..n {
            if used[c] {
                continue;
            }
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::Timeout { nodes: *nodes });
            }
            if !consistent(mapping, v, c) {
                continue;
            }
            mapping[v] = c;
            used[c] = true;
            if dfs(n, mapping, used, nodes, budget, consistent)? {
                return Ok(true);
            }
            mapping[v] = usize::MAX;
            used[c] = false;
        }
        Ok(false)
    }
    if dfs(n, &mut mapping, &mut used, nodes, budget, &consistent)? {
        Ok(Some(mapping))
    } else {
        Ok(None)
    }
}

/// Full automorphism group by backtracking, returned as a strong
/// generating set found level by level: for each base vertex b, one
/// generator per new orbit point among automorphisms fixing 0..b-1.
pub fn aut_bruteforce(d: &Digraph) -> Result<AutResult> {
    aut_bruteforce_limited(d, &SearchLimits::default())
}

pub fn aut_bruteforce_limited(d: &Digraph, limits: &SearchLimits) -> Result<AutResult> {
    let n = d.vertex_count();
    if n > limits.max_vertices {
        return Err(Error::SizeCap {
            size: n,
            cap: limits.max_vertices,
        });
    }
    let colors = refine_colors(&[d]);
    let colors = &colors[0];
    let mut nodes: u64 = 0;
    let mut gens: Vec<Perm> = Vec::new();
    for b in 0..n {
        // orbit of b under the generators fixing 0..b-1 pointwise
        let level_gens: Vec<&Perm> = gens
            .iter()
            .filter(|g| (0..b).all(|i| g.apply(i) == i))
            .collect();
        let orbit_of = |gens: &[&Perm]| -> Vec<bool> {
            let mut in_orbit = vec![false; n];
            in_orbit[b] = true;
            let mut stack = vec![b];
            while let Some(x) = stack.pop() {
                for g in gens {
                    let y = g.apply(x);
                    if !in_orbit[y] {
                        in_orbit[y] = true;
                        stack.push(y);
                    }
                }
            }
            in_orbit
        };
        let mut in_orbit = orbit_of(&level_gens);
        for w in (b + 1)..n {
            if in_orbit[w] || colors[w] != colors[b] {
                continue;
            }
            let mut prefix: Vec<(usize, usize)> = (0..b).map(|i| (i, i)).collect();
            prefix.push((b, w));
            if let Some(mapping) = search_mapping(
                d,
                d,
                colors,
                colors,
                &prefix,
                &mut nodes,
                limits.node_budget,
            )? {
                gens.push(Perm::new(mapping));
                let level_gens: Vec<&Perm> = gens
                    .iter()
                    .filter(|g| (0..b).all(|i| g.apply(i) == i))
                    .collect();
                in_orbit = orbit_of(&level_gens);
            }
        }
    }
    debug_assert!(gens.iter().all(|g| is_automorphism(d, g)));
    Ok(AutResult {
        group: PermGroup::new(n, gens),
        method: AutMethod::Brute,
        derivation: vec!["exhaustive backtracking with neighborhood refinement".into()],
    })
}

/// Search for one isomorphism between two digraphs.
pub fn iso_bruteforce(d1: &Digraph, d2: &Digraph) -> Result<Option<IsoCertificate>> {
    iso_bruteforce_limited(d1, d2, &SearchLimits::default())
}

pub fn iso_bruteforce_limited(
    d1: &Digraph,
    d2: &Digraph,
    limits: &SearchLimits,
) -> Result<Option<IsoCertificate>> {
    let n = d1.vertex_count();
    if n.max(d2.vertex_count()) > limits.max_vertices {
        return Err(Error::SizeCap {
            size: n.max(d2.vertex_count()),
            cap: limits.max_vertices,
        });
    }
    if d2.vertex_count() != n || d1.arc_count() != d2.arc_count() {
        return Ok(None);
    }
    let colors = refine_colors(&[d1, d2]);
    let (c1, c2) = (&colors[0], &colors[1]);
    let mut hist1 = BTreeMap::new();
    let mut hist2 = BTreeMap::new();
    for &c in c1.iter() {
        *hist1.entry(c).or_insert(0usize) += 1;
    }
    for &c in c2.iter() {
        *hist2.entry(c).or_insert(0usize) += 1;
    }
    if hist1 != hist2 {
        return Ok(None);
    }
    let mut nodes = 0u64;
    let found = search_mapping(d1, d2, c1, c2, &[], &mut nodes, limits.node_budget)?;
    Ok(found.map(|mapping| {
        let cert = IsoCertificate { mapping };
        debug_assert!(cert.verify(d1, d2));
        cert
    }))
}

pub fn is_vertex_transitive(d: &Digraph) -> Result<bool> {
    Ok(aut_bruteforce(d)?.group.is_transitive())
}

/// Report for the all-or-nothing condition: when it holds and all cells
/// induce pairwise isomorphic digraphs, the digraph is certified equal to
/// quotient ≀ cell-digraph by an explicit bijection.
#[derive(Debug, Clone)]
pub struct WreathConditionReport {
    pub all_or_nothing: bool,
    pub cells_isomorphic: Option<bool>,
    pub certificate: Option<IsoCertificate>,
}

pub fn wreath_condition_report(
    d: &Digraph,
    partition: &VertexPartition,
) -> Result<WreathConditionReport> {
    let holds = wreath_condition(d, partition)?;
    if !holds {
        return Ok(WreathConditionReport {
            all_or_nothing: false,
            cells_isomorphic: None,
            certificate: None,
        });
    }
    let cell0 = d.induced(&partition.cells[0]);
    let mut isos: Vec<IsoCertificate> = Vec::new();
    let mut all_isomorphic = true;
    for cell in &partition.cells {
        if cell.len() != partition.cells[0].len() {
            all_isomorphic = false;
            break;
        }
        match iso_bruteforce(&d.induced(cell), &cell0)? {
            Some(cert) => isos.push(cert),
            None => {
                all_isomorphic = false;
                break;
            }
        }
    }
    if !all_isomorphic {
        return Ok(WreathConditionReport {
            all_or_nothing: true,
            cells_isomorphic: Some(false),
            certificate: None,
        });
    }
    let head = quotient(d, partition)?;
    let product = wreath(&head, &cell0)?;
    let inner = partition.cells[0].len();
    let mut mapping = vec![0usize; d.vertex_count()];
    for (ci, cell) in partition.cells.iter().enumerate() {
        for (pi, &v) in cell.iter().enumerate() {
            mapping[v] = ci * inner + isos[ci].mapping[pi];
        }
    }
    let cert = IsoCertificate { mapping };
    if !cert.verify(d, &product) {
        return Err(Error::internal(
            "cellwise isomorphisms failed to assemble into a wreath certificate",
        ));
    }
    Ok(WreathConditionReport {
        all_or_nothing: true,
        cells_isomorphic: Some(true),
        certificate: Some(cert),
    })
}

fn class_cells_equal_size(p: &VertexPartition) -> Option<usize> {
    let size = p.cells[0].len();
    p.cells.iter().all(|c| c.len() == size).then_some(size)
}

/// Automorphism group of wreath(d1, d2) for vertex-transitive factors.
///
/// Detects the exceptional shapes: a complete tail of d1 paired with a
/// complete head of d2 (closed twins / complement components), or the
/// complement analogue (open twins / components). In the exceptional case
/// the group is assembled as aut(d1') ≀ sym(r·s) ≀ aut(d2'); otherwise as
/// aut(d1) ≀ aut(d2). The result is aligned onto the row-major vertex set
/// of wreath(d1, d2) and cross-checked against brute force when in cap.
pub fn aut_wreath(d1: &Digraph, d2: &Digraph) -> Result<AutResult> {
    aut_wreath_limited(d1, d2, &SearchLimits::default())
}

pub fn aut_wreath_limited(d1: &Digraph, d2: &Digraph, limits: &SearchLimits) -> Result<AutResult> {
    let (group, mut derivation) = wreath_aut_assembly(d1, d2, limits)?;
    let product_digraph = wreath(d1, d2)?;
    for g in group.generators() {
        if !is_automorphism(&product_digraph, g) {
            return Err(Error::internal(
                "wreath automorphism generator does not preserve arcs",
            ));
        }
    }
    if product_digraph.vertex_count() <= limits.max_vertices {
        let brute = aut_bruteforce_limited(&product_digraph, limits)?;
        if brute.group.order() != group.order() {
            return Err(Error::internal(format!(
                "structural wreath order {} differs from brute force {}",
                group.order(),
                brute.group.order()
            )));
        }
        derivation.push("order cross-checked against brute force".into());
    }
    Ok(AutResult {
        group,
        method: AutMethod::Structural,
        derivation,
    })
}

/// The full automorphism group of wreath(d1, d2) assembled from the
/// factors, without the final brute-force cross-check. Brute force runs
/// only on the factors (and their twin quotients / components), never on
/// the product.
pub fn wreath_aut_assembly(
    d1: &Digraph,
    d2: &Digraph,
    limits: &SearchLimits,
) -> Result<(PermGroup, Vec<String>)> {
    let (n1, n2) = (d1.vertex_count(), d2.vertex_count());
    let a1 = aut_bruteforce_limited(d1, limits)?;
    let a2 = aut_bruteforce_limited(d2, limits)?;
    if !a1.group.is_transitive() || !a2.group.is_transitive() {
        return Err(Error::NotVertexTransitive);
    }
    let size = n1 * n2;

    // complete pattern: closed twins in d1, complement components in d2
    let (closed_twins, _) = twin_classes(&d1.complement());
    let r_complete = class_cells_equal_size(&closed_twins).unwrap_or(1);
    let complement_components = d2.complement().weak_components();
    let s_complete = complement_components.len();
    // complement pattern: open twins in d1, weak components of d2
    let (open_twins, _) = twin_classes(d1);
    let r_empty = class_cells_equal_size(&open_twins).unwrap_or(1);
    let components = d2.weak_components();
    let s_empty = components.len();

    let exceptional = if r_complete >= 2 && s_complete >= 2 {
        Some((
            closed_twins,
            r_complete,
            complement_components,
            s_complete,
            "complete",
        ))
    } else if r_empty >= 2 && s_empty >= 2 {
        Some((open_twins, r_empty, components, s_empty, "complement"))
    } else {
        None
    };

    let (group, derivation) = match exceptional {
        Some((classes, r, comps, s, kind)) => {
            let head = quotient(d1, &classes)?;
            let inner = d2.induced(&comps[0]);
            let a_head = aut_bruteforce_limited(&head, limits)?;
            let a_inner = aut_bruteforce_limited(&inner, limits)?;
            let middle = PermGroup::symmetric_on(r * s, &(0..r * s).collect::<Vec<_>>());
            let outer = wreath_embed(&a_head.group, &middle)?;
            let full = wreath_embed(&outer.product, &a_inner.group)?;
            // align (u, v) -> (class(u), pos(u)*s + comp(v), pos-in-comp(v))
            let class_idx = classes.validate(n1)?;
            let mut pos_in_class = vec![0usize; n1];
            for cell in &classes.cells {
                for (pi, &u) in cell.iter().enumerate() {
                    pos_in_class[u] = pi;
                }
            }
            let mut comp_idx = vec![0usize; n2];
            let mut pos_in_comp = vec![0usize; n2];
            for (ci, comp) in comps.iter().enumerate() {
                for (pi, &v) in comp.iter().enumerate() {
                    comp_idx[v] = ci;
                    pos_in_comp[v] = pi;
                }
            }
            let inner_n = comps[0].len();
            let mut align = vec![0usize; size];
            for u in 0..n1 {
                for v in 0..n2 {
                    let x = class_idx[u];
                    let m = pos_in_class[u] * s + comp_idx[v];
                    let y = pos_in_comp[v];
                    align[u * n2 + v] = (x * r * s + m) * inner_n + y;
                }
            }
            let inv_align = {
                let mut inv = vec![0usize; size];
                for (i, &x) in align.iter().enumerate() {
                    inv[x] = i;
                }
                inv
            };
            let gens: Vec<Perm> = full
                .product
                .generators()
                .iter()
                .map(|g| Perm::new((0..size).map(|p| inv_align[g.apply(align[p])]).collect()))
                .collect();
            (
                PermGroup::new(size, gens),
                vec![format!(
                    "exceptional {kind} pattern with r={r}, s={s}: aut(head) wr sym({}) wr aut(cell)",
                    r * s
                )],
            )
        }
        None => {
            let w = wreath_embed(&a1.group, &a2.group)?;
            (
                w.product,
                vec!["aut(outer) wr aut(inner) on row-major vertices".into()],
            )
        }
    };
    Ok((group, derivation))
}

/// Aligned imprimitive wreath: a quotient-level group acting on equal-size
/// vertex blocks, with the full symmetric group inside each block.
fn block_wreath_group(n: usize, blocks: &[Vec<usize>], head: &PermGroup) -> PermGroup {
    let mut gens: Vec<Perm> = Vec::new();
    for q in head.generators() {
        let mut images: Vec<usize> = (0..n).collect();
        for (bi, cell) in blocks.iter().enumerate() {
            let target = &blocks[q.apply(bi)];
            for (pi, &v) in cell.iter().enumerate() {
                images[v] = target[pi];
            }
        }
        gens.push(Perm::new(images));
    }
    for cell in blocks {
        if cell.len() >= 2 {
            let mut images: Vec<usize> = (0..n).collect();
            images[cell[0]] = cell[1];
            images[cell[1]] = cell[0];
            gens.push(Perm::new(images));
        }
        if cell.len() >= 3 {
            let mut images: Vec<usize> = (0..n).collect();
            for w in 0..cell.len() {
                images[cell[w]] = cell[(w + 1) % cell.len()];
            }
            gens.push(Perm::new(images));
        }
    }
    PermGroup::new(n, gens)
}

/// Aut(Cos(G,H,S)) from Aut(Cay(G,S)): quotient the Cayley automorphism
/// group by the K-coset blocks (K the maximal two-sided stabilizer) and
/// put a full symmetric group on the [K:H] coset positions inside each
/// block. The order is cross-checked against brute force on the coset
/// digraph.
pub fn aut_coset_structural(g: &Group, h: &Subgroup, s: &[usize]) -> Result<AutResult> {
    aut_coset_structural_limited(g, h, s, &SearchLimits::default())
}

pub fn aut_coset_structural_limited(
    g: &Group,
    h: &Subgroup,
    s: &[usize],
    limits: &SearchLimits,
) -> Result<AutResult> {
    let spec = CosetSpec::new(g.clone(), h.clone(), s)?;
    let k = max_two_sided_stabilizer(g, &spec.conn);
    debug_assert!(h.is_subset_of(&k));
    let cay = cayley(&CayleySpec::new(g.clone(), &spec.conn)?);
    let aut_cay = aut_bruteforce_limited(&cay, limits)?;
    let k_cosets = left_cosets(g, &k);
    let system = BlockSystem::new(k_cosets.cells.clone());
    system.check(&aut_cay.group)?;
    let (head, _) = crate::perm::induced_action_and_fixer(&aut_cay.group, &system)?;

    let n = spec.vertex_count();
    let k_cell_of = k_cosets.cell_index(g.order());
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); k_cosets.cells.len()];
    for (v, cell) in spec.cosets().cells.iter().enumerate() {
        blocks[k_cell_of[cell[0]]].push(v);
    }
    let group = block_wreath_group(n, &blocks, &head);

    let cos = coset_digraph(&spec);
    for gen in group.generators() {
        if !is_automorphism(&cos, gen) {
            return Err(Error::internal(
                "structural coset automorphism generator does not preserve arcs",
            ));
        }
    }
    let mut derivation = vec![format!(
        "quotient of aut(Cay) by the {} cosets of the maximal stabilizer, wr sym({})",
        k_cosets.cells.len(),
        blocks[0].len()
    )];
    if n <= limits.max_vertices {
        let brute = aut_bruteforce_limited(&cos, limits)?;
        if brute.group.order() != group.order() {
            return Err(Error::internal(format!(
                "structural coset-aut order {} differs from brute force {}",
                group.order(),
                brute.group.order()
            )));
        }
        derivation.push("order cross-checked against brute force".into());
    }
    Ok(AutResult {
        group,
        method: AutMethod::Structural,
        derivation,
    })
}

/// Aut(Cay(G,S)) reconstructed from Aut(Cos(G,H,S)): quotient the coset
/// automorphism group by the K-coset cells of the coset vertices and put a
/// full symmetric group on the |K| elements inside each K-coset of G.
pub fn aut_cayley_structural(g: &Group, h: &Subgroup, s: &[usize]) -> Result<AutResult> {
    aut_cayley_structural_limited(g, h, s, &SearchLimits::default())
}

pub fn aut_cayley_structural_limited(
    g: &Group,
    h: &Subgroup,
    s: &[usize],
    limits: &SearchLimits,
) -> Result<AutResult> {
    let spec = CosetSpec::new(g.clone(), h.clone(), s)?;
    let k = max_two_sided_stabilizer(g, &spec.conn);
    let cos = coset_digraph(&spec);
    let aut_cos = aut_bruteforce_limited(&cos, limits)?;
    let k_cosets = left_cosets(g, &k);
    let k_cell_of = k_cosets.cell_index(g.order());
    // cells of the coset-vertex set grouped by K-coset
    let mut grouped: Vec<Vec<usize>> = vec![Vec::new(); k_cosets.cells.len()];
    for (v, cell) in spec.cosets().cells.iter().enumerate() {
        grouped[k_cell_of[cell[0]]].push(v);
    }
    let system = BlockSystem::new(grouped);
    system.check(&aut_cos.group)?;
    let (head, _) = crate::perm::induced_action_and_fixer(&aut_cos.group, &system)?;

    // result acts on the elements of G, blocks = left cosets of K
    let group = block_wreath_group(g.order(), &k_cosets.cells, &head);
    let cay = cayley(&CayleySpec::new(g.clone(), &spec.conn)?);
    for gen in group.generators() {
        if !is_automorphism(&cay, gen) {
            return Err(Error::internal(
                "structural Cayley automorphism generator does not preserve arcs",
            ));
        }
    }
    let mut derivation = vec![format!(
        "connection set read on G itself; quotient of aut(Cos) by K-coset cells, wr sym({})",
        k.order()
    )];
    if g.order() <= limits.max_vertices {
        let brute = aut_bruteforce_limited(&cay, limits)?;
        if brute.group.order() != group.order() {
            return Err(Error::internal(format!(
                "structural Cayley-aut order {} differs from brute force {}",
                group.order(),
                brute.group.order()
            )));
        }
        derivation.push("order cross-checked against brute force".into());
    }
    Ok(AutResult {
        group,
        method: AutMethod::Structural,
        derivation,
    })
}

/// Aut(Cos(G,H,S)) via the decomposition at an order-maximal witness:
/// aut(head) ≀ aut(tail), aligned back onto the coset vertices. Complete
/// and empty digraphs short-circuit to the full symmetric group.
pub fn aut_via_maximal_witness(
    g: &Group,
    h: &Subgroup,
    s: &[usize],
    limits: &SearchLimits,
) -> Result<AutResult> {
    let spec = CosetSpec::new(g.clone(), h.clone(), s)?;
    let cos = coset_digraph(&spec);
    let n = cos.vertex_count();
    if cos.is_complete() || cos.is_empty_graph() {
        let group = PermGroup::symmetric_on(n, &(0..n).collect::<Vec<_>>());
        return Ok(AutResult {
            group,
            method: AutMethod::Structural,
            derivation: vec!["complete or empty digraph: full symmetric group".into()],
        });
    }
    let report = maximal_witness(g, h, s)?;
    let Some(dec) = report.decomposition else {
        return Err(Error::NotAWitness);
    };
    let head_d = dec.head_digraph();
    let tail_d = dec.tail_digraph();
    let (product_group, assembly_notes) = wreath_aut_assembly(&head_d, &tail_d, limits)?;
    let inv_align = {
        let mut inv = vec![0usize; n];
        for (i, &x) in dec.alignment.iter().enumerate() {
            inv[x] = i;
        }
        inv
    };
    let gens: Vec<Perm> = product_group
        .generators()
        .iter()
        .map(|p| {
            Perm::new(
                (0..n)
                    .map(|v| inv_align[p.apply(dec.alignment[v])])
                    .collect(),
            )
        })
        .collect();
    let group = PermGroup::new(n, gens);
    for gen in group.generators() {
        if !is_automorphism(&cos, gen) {
            return Err(Error::internal(
                "witness-decomposition automorphism generator does not preserve arcs",
            ));
        }
    }
    let mut derivation = vec![format!(
        "aut of head wr tail at witness K = {:?}{}",
        dec.witness.members(),
        if report.ambiguous {
            " (other order-maximal witnesses exist)"
        } else {
            ""
        }
    )];
    derivation.extend(assembly_notes);
    Ok(AutResult {
        group,
        method: AutMethod::Structural,
        derivation,
    })
}

/// Extend a cell-level isomorphism to the finer coset level, matching the
/// coset positions inside corresponding cells in minimal-representative
/// order. Works across two (possibly different) groups; the lifted map is
/// verified arc-exactly.
#[allow(clippy::too_many_arguments)]
fn lift_between(
    g1: &Group,
    k1: &Subgroup,
    h1: &Subgroup,
    s1: &[usize],
    g2: &Group,
    k2: &Subgroup,
    h2: &Subgroup,
    s2: &[usize],
    delta: &IsoCertificate,
) -> Result<IsoCertificate> {
    let fine1 = CosetSpec::new(g1.clone(), h1.clone(), s1)?;
    let fine2 = CosetSpec::new(g2.clone(), h2.clone(), s2)?;
    let coarse1 = left_cosets(g1, k1);
    let coarse2 = left_cosets(g2, k2);
    if delta.mapping.len() != coarse1.cells.len() || coarse1.cells.len() != coarse2.cells.len() {
        return Err(Error::PreconditionViolated {
            detail: "cell map degree mismatch".into(),
        });
    }
    let coarse1_of = coarse1.cell_index(g1.order());
    let coarse2_of = coarse2.cell_index(g2.order());
    let mut cells1: Vec<Vec<usize>> = vec![Vec::new(); coarse1.cells.len()];
    for (v, cell) in fine1.cosets().cells.iter().enumerate() {
        cells1[coarse1_of[cell[0]]].push(v);
    }
    let mut cells2: Vec<Vec<usize>> = vec![Vec::new(); coarse2.cells.len()];
    for (v, cell) in fine2.cosets().cells.iter().enumerate() {
        cells2[coarse2_of[cell[0]]].push(v);
    }
    let mut mapping = vec![usize::MAX; fine1.vertex_count()];
    for (c1, members) in cells1.iter().enumerate() {
        let c2 = delta.mapping[c1];
        if cells2[c2].len() != members.len() {
            return Err(Error::PreconditionViolated {
                detail: "cells have different coset counts".into(),
            });
        }
        for (pi, &v) in members.iter().enumerate() {
            mapping[v] = cells2[c2][pi];
        }
    }
    let cert = IsoCertificate { mapping };
    let d1 = coset_digraph(&fine1);
    let d2 = coset_digraph(&fine2);
    if !cert.verify(&d1, &d2) {
        return Err(Error::LiftFailedVerification);
    }
    Ok(cert)
}

/// Lift an isomorphism between Cos(G,K1,S1) and Cos(G,K2,S2) to one
/// between Cos(G,H1,S1) and Cos(G,H2,S2), for H_i ≤ K_i with matching
/// orders and K_i ∩ S_i = ∅.
#[allow(clippy::too_many_arguments)]
pub fn lift_isomorphism(
    g: &Group,
    k1: &Subgroup,
    s1: &[usize],
    h1: &Subgroup,
    k2: &Subgroup,
    s2: &[usize],
    h2: &Subgroup,
    delta: &IsoCertificate,
) -> Result<IsoCertificate> {
    if h1.order() != h2.order() || k1.order() != k2.order() {
        return Err(Error::PreconditionViolated {
            detail: "subgroup orders must match on both sides".into(),
        });
    }
    if !h1.is_subset_of(k1) || !h2.is_subset_of(k2) {
        return Err(Error::PreconditionViolated {
            detail: "the finer subgroup must sit inside the coarser one".into(),
        });
    }
    for (k, s) in [(k1, s1), (k2, s2)] {
        if s.iter().any(|x| k.contains(*x)) {
            return Err(Error::PreconditionViolated {
                detail: "the coarse subgroup must avoid the connection set".into(),
            });
        }
    }
    let coarse1 = CosetSpec::new(g.clone(), k1.clone(), s1)?;
    let coarse2 = CosetSpec::new(g.clone(), k2.clone(), s2)?;
    if !delta.verify(&coset_digraph(&coarse1), &coset_digraph(&coarse2)) {
        return Err(Error::PreconditionViolated {
            detail: "the given map is not an isomorphism at the coarse level".into(),
        });
    }
    lift_between(g, k1, h1, s1, g, k2, h2, s2, delta)
}

/// Outcome of a coset-digraph isomorphism test.
#[derive(Debug, Clone)]
pub struct CosetIso {
    pub certificate: Option<IsoCertificate>,
    pub route: String,
}

/// Decide Cos(G1,H1,S1) ≅ Cos(G2,H2,S2) and produce a verified
/// certificate.
///
/// Over one group the decision reduces to the Cayley digraphs: an
/// isomorphism of Cayley digraphs carries twin classes to twin classes,
/// descends to the maximal-stabilizer quotients, and lifts back to the
/// coset level. Over two groups the Cayley digraph of the first is re-read
/// as a Cayley digraph of each regular subgroup of its automorphism group
/// that is abstractly isomorphic to the second group.
pub fn coset_iso(spec1: &CosetSpec, spec2: &CosetSpec) -> Result<CosetIso> {
    coset_iso_limited(spec1, spec2, &SearchLimits::default())
}

pub fn coset_iso_limited(
    spec1: &CosetSpec,
    spec2: &CosetSpec,
    limits: &SearchLimits,
) -> Result<CosetIso> {
    if spec1.vertex_count() != spec2.vertex_count() {
        return Ok(CosetIso {
            certificate: None,
            route: "vertex counts differ".into(),
        });
    }
    if spec1.group.order() != spec2.group.order()
        || spec1.subgroup.order() != spec2.subgroup.order()
    {
        return Err(Error::PreconditionViolated {
            detail: "group and subgroup orders must match".into(),
        });
    }
    if spec1.group == spec2.group {
        let cert = same_group_iso(spec1, spec2, limits)?;
        return Ok(CosetIso {
            certificate: cert,
            route: "same group: Cayley isomorphism lifted through stabilizer quotients".into(),
        });
    }
    // distinct groups: try regular subgroups of the first, then of the second
    if let Some(cert) = cross_group_iso(spec1, spec2, limits)? {
        return Ok(CosetIso {
            certificate: Some(cert),
            route: "regular subgroup of aut(Cay) of the first group".into(),
        });
    }
    if let Some(cert) = cross_group_iso(spec2, spec1, limits)? {
        return Ok(CosetIso {
            certificate: Some(cert.inverse()),
            route: "regular subgroup of aut(Cay) of the second group".into(),
        });
    }
    Ok(CosetIso {
        certificate: None,
        route: "no matching regular subgroup".into(),
    })
}

/// Quotient a Cayley-level isomorphism to the maximal-stabilizer cells and
/// lift it back down to the requested coset level.
fn transfer_through_quotient(
    g1: &Group,
    h1: &Subgroup,
    s1: &[usize],
    g2: &Group,
    h2: &Subgroup,
    s2: &[usize],
    cay_iso: &IsoCertificate,
) -> Result<IsoCertificate> {
    let k1 = max_two_sided_stabilizer(g1, s1);
    let k2 = max_two_sided_stabilizer(g2, s2);
    if k1.order() != k2.order() {
        return Err(Error::internal(
            "isomorphic Cayley digraphs with different stabilizer orders",
        ));
    }
    let coarse1 = left_cosets(g1, &k1);
    let coarse2 = left_cosets(g2, &k2);
    let cell2_of = coarse2.cell_index(g2.order());
    let mut cell_map = vec![usize::MAX; coarse1.cells.len()];
    for (c, cell) in coarse1.cells.iter().enumerate() {
        let images: Vec<usize> = cell.iter().map(|&x| cell2_of[cay_iso.mapping[x]]).collect();
        if images.iter().any(|&i| i != images[0]) {
            return Err(Error::internal(
                "Cayley isomorphism does not respect twin-class cells",
            ));
        }
        cell_map[c] = images[0];
    }
    lift_between(
        g1,
        &k1,
        h1,
        s1,
        g2,
        &k2,
        h2,
        s2,
        &IsoCertificate { mapping: cell_map },
    )
}

fn same_group_iso(
    spec1: &CosetSpec,
    spec2: &CosetSpec,
    limits: &SearchLimits,
) -> Result<Option<IsoCertificate>> {
    let g = &spec1.group;
    let cay1 = cayley(&CayleySpec::new(g.clone(), &spec1.conn)?);
    let cay2 = cayley(&CayleySpec::new(g.clone(), &spec2.conn)?);
    let Some(cay_iso) = iso_bruteforce_limited(&cay1, &cay2, limits)? else {
        return Ok(None);
    };
    transfer_through_quotient(
        g,
        &spec1.subgroup,
        &spec1.conn,
        &spec2.group,
        &spec2.subgroup,
        &spec2.conn,
        &cay_iso,
    )
    .map(Some)
}

/// Try to match Cay(G1,S1) with Cay(G2,S2) through a regular subgroup of
/// aut(Cay(G1,S1)) abstractly isomorphic to G2; on success produce the
/// certificate from spec1 to spec2.
fn cross_group_iso(
    spec1: &CosetSpec,
    spec2: &CosetSpec,
    limits: &SearchLimits,
) -> Result<Option<IsoCertificate>> {
    let (g1, g2) = (&spec1.group, &spec2.group);
    let cay1 = cayley(&CayleySpec::new(g1.clone(), &spec1.conn)?);
    let cay2 = cayley(&CayleySpec::new(g2.clone(), &spec2.conn)?);
    let a1 = aut_bruteforce_limited(&cay1, limits)?;
    let regulars = regular_subgroups(&a1.group)?;
    for (_, reg_group) in &regulars {
        let Some(phi) = group_isomorphism(g2, reg_group) else {
            continue;
        };
        // cay1 is exactly Cay(reg_group, out-neighbors of vertex 0); pull
        // that connection set back to G2 through phi.
        let conn_in_g2: Vec<usize> = (0..g2.order())
            .filter(|&x| cay1.has_arc(0, phi[x]))
            .collect();
        let cay_transported = cayley(&CayleySpec::new(g2.clone(), &conn_in_g2)?);
        // phi itself is a digraph isomorphism Cay(G2, conn_in_g2) -> cay1
        let phi_cert = IsoCertificate {
            mapping: phi.clone(),
        };
        if !phi_cert.verify(&cay_transported, &cay1) {
            return Err(Error::internal(
                "regular-subgroup transport is not a digraph isomorphism",
            ));
        }
        let Some(delta2) = iso_bruteforce_limited(&cay2, &cay_transported, limits)? else {
            continue;
        };
        // Cay(G2,S2) -> Cay(G2,conn) -> cay1, then invert to run 1 -> 2.
        let cay1_to_cay2 = delta2.then(&phi_cert).inverse();
        let cert = transfer_through_quotient(
            g1,
            &spec1.subgroup,
            &spec1.conn,
            g2,
            &spec2.subgroup,
            &spec2.conn,
            &cay1_to_cay2,
        )?;
        return Ok(Some(cert));
    }
    Ok(None)
}
