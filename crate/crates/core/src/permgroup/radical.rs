use std::collections::HashSet;

use super::{conjugacy_classes, ElementTable, PrimeSet, Subgroup};

/// ⟨x^G⟩.
pub fn normal_closure(g: &ElementTable, x: usize) -> Subgroup {
    normal_closure_of(g, &[x])
}

/// The smallest normal subgroup containing every element of `xs`. Conjugates
/// of the current generators by the generators of G are added until none is
/// new.
pub fn normal_closure_of(g: &ElementTable, xs: &[usize]) -> Subgroup {
    let mut gens: Vec<usize> = Vec::new();
    for &x in xs {
        if x != 0 && !gens.contains(&x) {
            gens.push(x);
        }
    }
    let mut h = g.closure(&gens);
    let mut i = 0;
    while i < gens.len() {
        let e = gens[i];
        for &s in g.generators() {
            let c = g.conj(e, s);
            if !h.contains(c) {
                gens.push(c);
                h = g.closure(&gens);
            }
        }
        i += 1;
    }
    h
}

/// O_π(G): generated by the elements whose normal closure is a π-group.
pub fn pi_radical(g: &ElementTable, pi: &PrimeSet) -> Subgroup {
    let reps: Vec<usize> = conjugacy_classes(g)
        .iter()
        .map(|c| c.representative)
        .filter(|&x| normal_closure(g, x).is_pi_group(pi))
        .collect();
    normal_closure_of(g, &reps)
}

/// Every normal subgroup, by joining normal closures of classes until no new
/// subgroup appears. Sorted by order. Meant for small groups.
pub fn normal_subgroups(g: &ElementTable) -> Vec<Subgroup> {
    let reps: Vec<usize> = conjugacy_classes(g).iter().map(|c| c.representative).collect();
    let mut found: Vec<(Vec<usize>, Subgroup)> = vec![(vec![], Subgroup::trivial(g))];
    let mut seen: HashSet<Vec<usize>> = HashSet::from([vec![0]]);
    let mut frontier = 0;
    while frontier < found.len() {
        let (base, _) = found[frontier].clone();
        frontier += 1;
        for &r in &reps {
            let mut gens = base.clone();
            gens.push(r);
            let n = normal_closure_of(g, &gens);
            if seen.insert(n.elements().to_vec()) {
                found.push((gens, n));
            }
        }
    }
    let mut out: Vec<Subgroup> = found.into_iter().map(|(_, n)| n).collect();
    out.sort_by_key(|n| (n.order(), n.elements().to_vec()));
    out
}
