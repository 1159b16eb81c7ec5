//! Finite groups as multiplication tables, with subgroup and coset machinery.
//!
//! Elements are indices `0..n` with the identity always at index 0.
//! The multiplication convention everywhere is right-to-left: `mul(a, b)`
//! is "apply b, then a" when elements act as functions.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Default cap on the order of groups closed from permutation generators.
pub const CLOSURE_CAP: usize = 10080;
/// Default cap on |G| for subgroup-lattice enumeration.
pub const LATTICE_CAP: usize = 48;

/// A finite group given by its full multiplication table.
#[derive(Clone)]
pub struct Group {
    n: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.table == other.table
    }
}
impl Eq for Group {}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Group(order {})", self.n)
    }
}

impl Group {
    /// Validate a multiplication table and wrap it as a group.
    ///
    /// If the identity is not at index 0 the elements are relabeled so that it
    /// is; the returned map sends old indices to new ones (identity map when
    /// no relabeling was needed).
    pub fn from_table(
        table: &[Vec<usize>],
        labels: Option<Vec<String>>,
    ) -> Result<(Group, Vec<usize>)> {
        let n = table.len();
        if n == 0 {
            return Err(Error::MalformedTable {
                detail: "empty table".into(),
            });
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable {
                    detail: format!("row {i} has length {} in a table of size {n}", row.len()),
                });
            }
            if row.iter().any(|&x| x >= n) {
                return Err(Error::MalformedTable {
                    detail: format!("row {i} has an entry outside 0..{n}"),
                });
            }
        }
        for i in 0..n {
            let mut seen = vec![false; n];
            for j in 0..n {
                if seen[table[i][j]] {
                    return Err(Error::MalformedTable {
                        detail: format!("row {i} repeats entry {}", table[i][j]),
                    });
                }
                seen[table[i][j]] = true;
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for i in 0..n {
                if seen[table[i][j]] {
                    return Err(Error::MalformedTable {
                        detail: format!("column {j} repeats entry {}", table[i][j]),
                    });
                }
                seen[table[i][j]] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|j| table[e][j] == j && table[j][e] == j))
            .ok_or(Error::NoIdentity)?;
        for a in 0..n {
            let has_inverse = (0..n).any(|b| table[a][b] == identity && table[b][a] == identity);
            if !has_inverse {
                return Err(Error::NoInverse { element: a });
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        // Relocate the identity to index 0, keeping the relative order of the rest.
        let relabel: Vec<usize> = (0..n)
            .map(|x| {
                if x == identity {
                    0
                } else if x < identity {
                    x + 1
                } else {
                    x
                }
            })
            .collect();
        let mut flat = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[relabel[a] * n + relabel[b]] = relabel[table[a][b]];
            }
        }
        let new_labels = labels.map(|ls| {
            let mut out = vec![String::new(); n];
            for (old, l) in ls.into_iter().enumerate() {
                if old < n {
                    out[relabel[old]] = l;
                }
            }
            out
        });
        let mut inv = vec![0usize; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| flat[a * n + b] == 0).unwrap();
        }
        Ok((
            Group {
                n,
                table: flat,
                inv,
                labels: new_labels,
            },
            relabel,
        ))
    }

    /// Close a set of permutation generators under composition.
    ///
    /// Elements are numbered in breadth-first discovery order starting from
    /// the identity, so the order is deterministic given the generator order.
    /// Returns the group together with the permutation image of each element.
    pub fn from_permutations(
        degree: usize,
        generators: &[Vec<usize>],
        cap: usize,
    ) -> Result<(Group, Vec<Perm>)> {
        let mut gens = Vec::with_capacity(generators.len());
        for (index, images) in generators.iter().enumerate() {
            if images.len() != degree || !is_permutation(images) {
                return Err(Error::NotAPermutation { index, degree });
            }
            gens.push(Perm::new(images.clone()));
        }
        let mut elements = vec![Perm::identity(degree)];
        let mut index_of: HashMap<Vec<usize>, usize> = HashMap::new();
        index_of.insert(elements[0].images().to_vec(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let p = elements[i].compose(g);
                if !index_of.contains_key(p.images()) {
                    if elements.len() >= cap {
                        return Err(Error::OrderCapExceeded { cap });
                    }
                    index_of.insert(p.images().to_vec(), elements.len());
                    elements.push(p);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        let n = elements.len();
        let mut flat = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                let p = elements[a].compose(&elements[b]);
                flat[a * n + b] = index_of[p.images()];
            }
        }
        let mut inv = vec![0usize; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| flat[a * n + b] == 0).unwrap();
        }
        Ok((
            Group {
                n,
                table: flat,
                inv,
                labels: None,
            },
            elements,
        ))
    }

    /// Build directly from a known-valid flat table (internal constructors).
    pub(crate) fn from_flat_unchecked(
        n: usize,
        table: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Group {
        debug_assert_eq!(table.len(), n * n);
        let mut inv = vec![0usize; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| table[a * n + b] == 0).unwrap();
        }
        Group {
            n,
            table,
            inv,
            labels,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Option<Vec<String>>) {
        self.labels = labels;
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(ls) => ls[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Left-regular permutation of an element: x maps to a*x.
    pub fn left_translation(&self, a: usize) -> Perm {
        Perm::new((0..self.n).map(|x| self.mul(a, x)).collect())
    }
}

fn is_permutation(images: &[usize]) -> bool {
    let n = images.len();
    let mut seen = vec![false; n];
    for &x in images {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Sort and deduplicate a set of element indices.
pub fn canonical_set<I: IntoIterator<Item = usize>>(iter: I) -> Vec<usize> {
    let mut v: Vec<usize> = iter.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Product set {a*b : a in xs, b in ys}.
pub fn product_set(g: &Group, xs: &[usize], ys: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    for &a in xs {
        for &b in ys {
            seen[g.mul(a, b)] = true;
        }
    }
    (0..g.order()).filter(|&x| seen[x]).collect()
}

/// {a*s : s in set} for a single element a.
pub fn left_translate(g: &Group, a: usize, set: &[usize]) -> Vec<usize> {
    canonical_set(set.iter().map(|&s| g.mul(a, s)))
}

/// {s*a : s in set} for a single element a.
pub fn right_translate(g: &Group, set: &[usize], a: usize) -> Vec<usize> {
    canonical_set(set.iter().map(|&s| g.mul(s, a)))
}

/// {s^{-1} : s in set}.
pub fn set_inverse(g: &Group, set: &[usize]) -> Vec<usize> {
    canonical_set(set.iter().map(|&s| g.inverse(s)))
}

pub fn set_difference(xs: &[usize], ys: &[usize]) -> Vec<usize> {
    xs.iter()
        .copied()
        .filter(|x| ys.binary_search(x).is_err())
        .collect()
}

pub fn set_intersection(xs: &[usize], ys: &[usize]) -> Vec<usize> {
    xs.iter()
        .copied()
        .filter(|x| ys.binary_search(x).is_ok())
        .collect()
}

/// A subgroup of a specific parent group, stored as a sorted member list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    /// Validate closure and wrap. The member list may come in any order.
    pub fn new(g: &Group, members: &[usize]) -> Result<Subgroup> {
        let members = canonical_set(members.iter().copied());
        if members.binary_search(&0).is_err() {
            return Err(Error::NotASubgroup {
                detail: "missing identity".into(),
            });
        }
        if let Some(&bad) = members.iter().find(|&&m| m >= g.order()) {
            return Err(Error::NotASubgroup {
                detail: format!("element {bad} out of range"),
            });
        }
        for &a in &members {
            if members.binary_search(&g.inverse(a)).is_err() {
                return Err(Error::NotASubgroup {
                    detail: format!("inverse of {a} missing"),
                });
            }
            for &b in &members {
                if members.binary_search(&g.mul(a, b)).is_err() {
                    return Err(Error::NotASubgroup {
                        detail: format!("product {a}*{b} missing"),
                    });
                }
            }
        }
        Ok(Subgroup { members })
    }

    pub fn trivial() -> Subgroup {
        Subgroup { members: vec![0] }
    }

    pub fn whole(g: &Group) -> Subgroup {
        Subgroup {
            members: (0..g.order()).collect(),
        }
    }

    pub(crate) fn from_sorted_unchecked(members: Vec<usize>) -> Subgroup {
        Subgroup { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self, g: &Group) -> bool {
        self.members.len() == g.order()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }
}

/// Smallest subgroup containing the seed set.
pub fn subgroup_generated(g: &Group, seed: &[usize]) -> Subgroup {
    let mut members: BTreeSet<usize> = BTreeSet::new();
    members.insert(0);
    let mut queue: Vec<usize> = Vec::new();
    for &s in seed {
        if members.insert(s) {
            queue.push(s);
        }
    }
    // Products with everything already present close the set; inverses come
    // for free in a finite group.
    while let Some(x) = queue.pop() {
        let snapshot: Vec<usize> = members.iter().copied().collect();
        for &y in &snapshot {
            for p in [g.mul(x, y), g.mul(y, x)] {
                if members.insert(p) {
                    queue.push(p);
                }
            }
        }
    }
    Subgroup {
        members: members.into_iter().collect(),
    }
}

/// Join of two subgroups.
pub fn join(g: &Group, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let seed: Vec<usize> = a.members().iter().chain(b.members()).copied().collect();
    subgroup_generated(g, &seed)
}

/// How the cells of a [`CosetPartition`] were formed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CosetKind {
    LeftCosets { subgroup: Subgroup },
    DoubleCosets { left: Subgroup, right: Subgroup },
}

/// A partition of the group elements into (double) cosets.
///
/// Cells are sorted internally and ordered by their minimal element, so the
/// cell containing the identity comes first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetPartition {
    pub cells: Vec<Vec<usize>>,
    pub kind: CosetKind,
}

impl CosetPartition {
    /// Map from element index to cell index.
    pub fn cell_index(&self, n: usize) -> Vec<usize> {
        let mut idx = vec![usize::MAX; n];
        for (c, cell) in self.cells.iter().enumerate() {
            for &x in cell {
                idx[x] = c;
            }
        }
        idx
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }
}

/// Left cosets gH, ordered by minimal representative.
pub fn left_cosets(g: &Group, h: &Subgroup) -> CosetPartition {
    let n = g.order();
    let mut assigned = vec![false; n];
    let mut cells = Vec::new();
    for x in 0..n {
        if assigned[x] {
            continue;
        }
        let cell = canonical_set(h.members().iter().map(|&m| g.mul(x, m)));
        for &y in &cell {
            assigned[y] = true;
        }
        cells.push(cell);
    }
    CosetPartition {
        cells,
        kind: CosetKind::LeftCosets {
            subgroup: h.clone(),
        },
    }
}

/// (H,K)-double cosets HgK, ordered by minimal representative.
pub fn double_cosets(g: &Group, h: &Subgroup, k: &Subgroup) -> CosetPartition {
    let n = g.order();
    let mut assigned = vec![false; n];
    let mut cells = Vec::new();
    for x in 0..n {
        if assigned[x] {
            continue;
        }
        let mut cell = Vec::new();
        for &a in h.members() {
            let ax = g.mul(a, x);
            for &b in k.members() {
                cell.push(g.mul(ax, b));
            }
        }
        let cell = canonical_set(cell);
        for &y in &cell {
            assigned[y] = true;
        }
        cells.push(cell);
    }
    CosetPartition {
        cells,
        kind: CosetKind::DoubleCosets {
            left: h.clone(),
            right: k.clone(),
        },
    }
}

/// The largest subgroup K with K S K = S, namely {g : gS = Sg = S}.
pub fn max_two_sided_stabilizer(g: &Group, s: &[usize]) -> Subgroup {
    let s = canonical_set(s.iter().copied());
    let members: Vec<usize> = (0..g.order())
        .filter(|&x| left_translate(g, x, &s) == s && right_translate(g, &s, x) == s)
        .collect();
    debug_assert!(Subgroup::new(g, &members).is_ok());
    Subgroup { members }
}

/// All subgroups K with H <= K <= G, by iterated one-element extensions.
///
/// Every overgroup is reachable by repeatedly adjoining a missing element,
/// so the scan is complete. Sorted by order, then lexicographically.
pub fn overgroups(g: &Group, h: &Subgroup) -> Result<Vec<Subgroup>> {
    overgroups_with_cap(g, h, LATTICE_CAP)
}

pub fn overgroups_with_cap(g: &Group, h: &Subgroup, cap: usize) -> Result<Vec<Subgroup>> {
    if g.order() > cap {
        return Err(Error::OrderCapExceeded { cap });
    }
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    found.insert(h.members().to_vec());
    let mut queue: Vec<Vec<usize>> = vec![h.members().to_vec()];
    while let Some(members) = queue.pop() {
        for x in 0..g.order() {
            if members.binary_search(&x).is_ok() {
                continue;
            }
            let mut seed = members.clone();
            seed.push(x);
            let bigger = subgroup_generated(g, &seed);
            if found.insert(bigger.members().to_vec()) {
                queue.push(bigger.members().to_vec());
            }
        }
    }
    let mut out: Vec<Subgroup> = found
        .into_iter()
        .map(Subgroup::from_sorted_unchecked)
        .collect();
    out.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.members().cmp(b.members()))
    });
    Ok(out)
}

/// All subgroups of G.
pub fn subgroups(g: &Group) -> Result<Vec<Subgroup>> {
    overgroups(g, &Subgroup::trivial())
}

/// All subgroups of G contained in the given subgroup.
pub fn subgroups_within(g: &Group, k: &Subgroup) -> Result<Vec<Subgroup>> {
    let (kg, members) = subgroup_as_group(g, k);
    let subs = subgroups(&kg)?;
    Ok(subs
        .into_iter()
        .map(|s| {
            Subgroup::from_sorted_unchecked(canonical_set(s.members().iter().map(|&p| members[p])))
        })
        .collect())
}

/// None when normal; otherwise a witness g with gK != Kg.
pub fn normality_witness(g: &Group, k: &Subgroup) -> Option<usize> {
    (0..g.order())
        .find(|&x| left_translate(g, x, k.members()) != right_translate(g, k.members(), x))
}

/// The quotient group G/K for normal K, plus the projection map.
pub fn normal_quotient(g: &Group, k: &Subgroup) -> Result<(Group, Vec<usize>)> {
    if let Some(witness) = normality_witness(g, k) {
        return Err(Error::NotNormal { witness });
    }
    let cosets = left_cosets(g, k);
    let cell_of = cosets.cell_index(g.order());
    let reps: Vec<usize> = cosets.cells.iter().map(|c| c[0]).collect();
    let m = reps.len();
    let mut flat = vec![0usize; m * m];
    for i in 0..m {
        for j in 0..m {
            flat[i * m + j] = cell_of[g.mul(reps[i], reps[j])];
        }
    }
    let labels = g
        .labels
        .as_ref()
        .map(|ls| reps.iter().map(|&r| format!("{}K", ls[r])).collect());
    Ok((Group::from_flat_unchecked(m, flat, labels), cell_of))
}

/// A subgroup viewed as an abstract group on its own member positions.
///
/// Members are taken in ascending order, so the identity lands at position 0.
/// Returns the group and the position-to-parent-element map.
pub fn subgroup_as_group(g: &Group, k: &Subgroup) -> (Group, Vec<usize>) {
    let members = k.members().to_vec();
    let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let m = members.len();
    let mut flat = vec![0usize; m * m];
    for i in 0..m {
        for j in 0..m {
            flat[i * m + j] = pos[&g.mul(members[i], members[j])];
        }
    }
    let labels = g
        .labels
        .as_ref()
        .map(|ls| members.iter().map(|&x| ls[x].clone()).collect());
    (Group::from_flat_unchecked(m, flat, labels), members)
}

/// Translate a set of parent-group elements into positions within a subgroup.
pub fn positions_in_subgroup(k: &Subgroup, set: &[usize]) -> Vec<usize> {
    set.iter()
        .map(|&x| {
            k.members()
                .binary_search(&x)
                .expect("element not in subgroup")
        })
        .collect()
}

/// Search for an abstract isomorphism between two groups, as a map of element
/// indices. Backtracks over images of a small generating sequence.
pub fn group_isomorphism(a: &Group, b: &Group) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let n = a.order();
    if n == 1 {
        return Some(vec![0]);
    }
    // Greedy generating sequence for a.
    let mut gens: Vec<usize> = Vec::new();
    let mut closed = subgroup_generated(a, &[]);
    while closed.order() < n {
        let next = (0..n).find(|&x| !closed.contains(x)).unwrap();
        gens.push(next);
        let seed: Vec<usize> = closed.members().iter().copied().chain([next]).collect();
        closed = subgroup_generated(a, &seed);
    }
    let orders_a: Vec<usize> = (0..n).map(|x| a.element_order(x)).collect();
    let orders_b: Vec<usize> = (0..n).map(|x| b.element_order(x)).collect();
    {
        let mut sa = orders_a.clone();
        let mut sb = orders_b.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return None;
        }
    }
    let mut phi: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    phi[0] = Some(0);
    used[0] = true;
    #[allow(clippy::too_many_arguments)]
    fn extend(
        a: &Group,
        b: &Group,
        gens: &[usize],
        next_gen: usize,
        phi: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        orders_a: &[usize],
        orders_b: &[usize],
    ) -> bool {
        // Close the partial map under products; detect conflicts.
        let n = a.order();
        loop {
            let mut changed = false;
            let known: Vec<usize> = (0..n).filter(|&x| phi[x].is_some()).collect();
            for &x in &known {
                for &y in &known {
                    let p = a.mul(x, y);
                    let q = b.mul(phi[x].unwrap(), phi[y].unwrap());
                    match phi[p] {
                        Some(existing) => {
                            if existing != q {
                                return false;
                            }
                        }
                        None => {
                            if used[q] {
                                return false;
                            }
                            phi[p] = Some(q);
                            used[q] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if next_gen == gens.len() {
            return phi.iter().all(|x| x.is_some());
        }
        let g = gens[next_gen];
        if phi[g].is_some() {
            return extend(a, b, gens, next_gen + 1, phi, used, orders_a, orders_b);
        }
        for target in 0..n {
            if used[target] || orders_b[target] != orders_a[g] {
                continue;
            }
            let saved_phi = phi.clone();
            let saved_used = used.clone();
            phi[g] = Some(target);
            used[target] = true;
            if extend(a, b, gens, next_gen + 1, phi, used, orders_a, orders_b) {
                return true;
            }
            *phi = saved_phi;
            *used = saved_used;
        }
        false
    }
    if extend(a, b, &gens, 0, &mut phi, &mut used, &orders_a, &orders_b) {
        Some(phi.into_iter().map(|x| x.unwrap()).collect())
    } else {
        None
    }
}
