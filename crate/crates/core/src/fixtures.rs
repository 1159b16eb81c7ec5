//! Bundled group corpus used by the verification suites and the CLI.

use crate::group::{Group, CLOSURE_CAP};
use crate::perm::Perm;

/// Dense cycle-notation label for a permutation, e.g. "(01)(23)".
pub fn perm_label(p: &Perm) -> String {
    let n = p.degree();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 0..n {
        if seen[start] || p.apply(start) == start {
            seen[start] = true;
            continue;
        }
        out.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&x.to_string());
            x = p.apply(x);
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}

pub fn trivial() -> Group {
    Group::from_flat_unchecked(1, vec![0], Some(vec!["e".into()]))
}

pub fn cyclic(n: usize) -> Group {
    assert!(n >= 1);
    let mut flat = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            flat[i * n + j] = (i + j) % n;
        }
    }
    let labels = (0..n).map(|x| x.to_string()).collect();
    Group::from_flat_unchecked(n, flat, Some(labels))
}

pub fn direct_product(a: &Group, b: &Group) -> Group {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut flat = vec![0usize; n * n];
    for x1 in 0..na {
        for y1 in 0..nb {
            for x2 in 0..na {
                for y2 in 0..nb {
                    let i = x1 * nb + y1;
                    let j = x2 * nb + y2;
                    flat[i * n + j] = a.mul(x1, x2) * nb + b.mul(y1, y2);
                }
            }
        }
    }
    let labels = match (a.labels(), b.labels()) {
        (Some(la), Some(lb)) => Some(
            (0..n)
                .map(|i| format!("({},{})", la[i / nb], lb[i % nb]))
                .collect(),
        ),
        _ => None,
    };
    Group::from_flat_unchecked(n, flat, labels)
}

/// Dihedral group of order 2n (n >= 3), elements labeled e, r1..r{n-1},
/// s, sr1..sr{n-1}. Index f*n + r encodes reflection^f rotation^r.
pub fn dihedral(n: usize) -> Group {
    assert!(n >= 3);
    let size = 2 * n;
    let image = |f: usize, r: usize, x: usize| -> usize {
        if f == 0 {
            (x + r) % n
        } else {
            (r + n - x % n) % n
        }
    };
    let decode = |p0: usize, p1: usize| -> (usize, usize) {
        let r = p0;
        let f = if p1 == (r + 1) % n { 0 } else { 1 };
        (f, r)
    };
    let mut flat = vec![0usize; size * size];
    for f1 in 0..2 {
        for r1 in 0..n {
            for f2 in 0..2 {
                for r2 in 0..n {
                    let p0 = image(f1, r1, image(f2, r2, 0));
                    let p1 = image(f1, r1, image(f2, r2, 1));
                    let (f, r) = decode(p0, p1);
                    flat[(f1 * n + r1) * size + (f2 * n + r2)] = f * n + r;
                }
            }
        }
    }
    let labels = (0..size)
        .map(|i| {
            let (f, r) = (i / n, i % n);
            match (f, r) {
                (0, 0) => "e".to_string(),
                (0, r) => format!("r{r}"),
                (_, 0) => "s".to_string(),
                (_, r) => format!("sr{r}"),
            }
        })
        .collect();
    Group::from_flat_unchecked(size, flat, Some(labels))
}

/// The quaternion group of order 8: every subgroup is normal.
pub fn quaternion() -> Group {
    // index = axis*2 + (1 if negative), axes ordered 1, i, j, k
    let axis_mul = |a: usize, b: usize| -> (usize, bool) {
        match (a, b) {
            (0, x) => (x, false),
            (x, 0) => (x, false),
            (1, 1) => (0, true),
            (2, 2) => (0, true),
            (3, 3) => (0, true),
            (1, 2) => (3, false),
            (2, 3) => (1, false),
            (3, 1) => (2, false),
            (2, 1) => (3, true),
            (3, 2) => (1, true),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    };
    let n = 8;
    let mut flat = vec![0usize; n * n];
    for a in 0..4 {
        for sa in 0..2 {
            for b in 0..4 {
                for sb in 0..2 {
                    let (c, neg) = axis_mul(a, b);
                    let sc = (sa + sb + usize::from(neg)) % 2;
                    flat[(a * 2 + sa) * n + (b * 2 + sb)] = c * 2 + sc;
                }
            }
        }
    }
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    Group::from_flat_unchecked(n, flat, Some(labels))
}

fn from_perm_generators(degree: usize, gens: &[Vec<usize>]) -> Group {
    let (mut g, elems) = Group::from_permutations(degree, gens, CLOSURE_CAP).unwrap();
    let labels = elems.iter().map(perm_label).collect();
    g.set_labels(Some(labels));
    g
}

/// S3 on points {0,1,2}, elements labeled by cycle notation.
pub fn symmetric_3() -> Group {
    from_perm_generators(3, &[vec![1, 2, 0], vec![1, 0, 2]])
}

/// A4 on points {0,1,2,3}, elements labeled by cycle notation.
pub fn alternating_4() -> Group {
    from_perm_generators(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
}

pub fn element_by_label(g: &Group, label: &str) -> Option<usize> {
    g.labels()?.iter().position(|l| l == label)
}

/// The whole corpus, in a fixed order.
pub fn all() -> Vec<(&'static str, Group)> {
    vec![
        ("trivial", trivial()),
        ("z2", cyclic(2)),
        ("z3", cyclic(3)),
        ("z4", cyclic(4)),
        ("z5", cyclic(5)),
        ("z6", cyclic(6)),
        ("z7", cyclic(7)),
        ("z8", cyclic(8)),
        ("z9", cyclic(9)),
        ("z10", cyclic(10)),
        ("z11", cyclic(11)),
        ("z12", cyclic(12)),
        ("z2xz2", direct_product(&cyclic(2), &cyclic(2))),
        ("z4xz2", direct_product(&cyclic(4), &cyclic(2))),
        (
            "z2xz2xz2",
            direct_product(&cyclic(2), &direct_product(&cyclic(2), &cyclic(2))),
        ),
        ("s3", symmetric_3()),
        ("d4", dihedral(4)),
        ("d5", dihedral(5)),
        ("d6", dihedral(6)),
        ("q8", quaternion()),
        ("a4", alternating_4()),
    ]
}

pub fn by_name(name: &str) -> Option<Group> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, g)| g)
}

/// Fixtures with order at most the given bound.
pub fn with_order_at_most(bound: usize) -> Vec<(&'static str, Group)> {
    all()
        .into_iter()
        .filter(|(_, g)| g.order() <= bound)
        .collect()
}
