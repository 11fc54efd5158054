use std::collections::HashMap;

use super::{PermError, Permutation};
use crate::numtheory::prime_divisors;

/// Every element of a finite permutation group, indexed. Index 0 is the
/// identity; the rest follow breadth-first discovery order from the generators.
#[derive(Clone, Debug)]
pub struct ElementTable {
    degree: usize,
    perms: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    inverses: Vec<usize>,
    orders: Vec<u64>,
    generators: Vec<usize>,
}

/// Closes `gens` under multiplication. Fails once more than `cap` elements appear.
pub fn generate_elements(gens: &[Permutation], cap: usize) -> Result<ElementTable, PermError> {
    let degree = gens.first().map_or(0, Permutation::degree);
    if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
        return Err(PermError::DegreeMismatch { expected: degree, found: g.degree() });
    }
    let identity = Permutation::identity(degree);
    let mut perms = vec![identity.clone()];
    let mut index = HashMap::from([(identity, 0usize)]);
    let mut head = 0;
    while head < perms.len() {
        let e = perms[head].clone();
        head += 1;
        for g in gens {
            let p = e.mul(g);
            if !index.contains_key(&p) {
                if perms.len() == cap {
                    return Err(PermError::CapExceeded { cap });
                }
                index.insert(p.clone(), perms.len());
                perms.push(p);
            }
        }
    }
    let inverses = perms.iter().map(|p| index[&p.inverse()]).collect();
    let orders = perms.iter().map(Permutation::order).collect();
    let generators = gens.iter().map(|g| index[g]).collect();
    Ok(ElementTable { degree, perms, index, inverses, orders, generators })
}

/// Outcome of a closure that may stop early.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure {
    /// An element satisfying the stop predicate was generated.
    Found(usize),
    Complete(Subgroup),
}

impl ElementTable {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn perm(&self, i: usize) -> &Permutation {
        &self.perms[i]
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn element_order(&self, i: usize) -> u64 {
        self.orders[i]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverses[i]
    }

    /// `a` then `b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.perms[a].mul(&self.perms[b])]
    }

    /// x^g = g⁻¹ x g.
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inverses[g], x), g)
    }

    /// Checks closure under products and inverses. Quadratic; for tests.
    pub fn verify_group_axioms(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| self.mul(a, self.inverses[a]) == 0)
            && (0..n).all(|a| (0..n).all(|b| self.index.contains_key(&self.perms[a].mul(&self.perms[b]))))
    }

    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        match self.closure_until(gens, |_| false) {
            Closure::Complete(h) => h,
            Closure::Found(_) => unreachable!("predicate never fires"),
        }
    }

    /// Breadth-first closure of `gens`, stopping at the first element for which
    /// `stop` holds.
    pub fn closure_until(&self, gens: &[usize], stop: impl Fn(usize) -> bool) -> Closure {
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut elements = vec![0];
        let mut head = 0;
        while head < elements.len() {
            let e = elements[head];
            head += 1;
            for &g in gens {
                let p = self.mul(e, g);
                if !member[p] {
                    if stop(p) {
                        return Closure::Found(p);
                    }
                    member[p] = true;
                    elements.push(p);
                }
            }
        }
        elements.sort_unstable();
        Closure::Complete(Subgroup { member, elements })
    }
}

/// A subgroup as a membership mask plus its sorted element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    member: Vec<bool>,
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn whole(g: &ElementTable) -> Self {
        Subgroup { member: vec![true; g.order()], elements: (0..g.order()).collect() }
    }

    pub fn trivial(g: &ElementTable) -> Self {
        let mut member = vec![false; g.order()];
        member[0] = true;
        Subgroup { member, elements: vec![0] }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.member[i]
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&e| other.member[e])
    }

    pub fn is_normal_in(&self, g: &ElementTable) -> bool {
        g.generators().iter().all(|&s| self.elements.iter().all(|&e| self.member[g.conj(e, s)]))
    }

    /// Whether every prime dividing the order lies in `pi`.
    pub fn is_pi_group(&self, pi: &super::PrimeSet) -> bool {
        prime_divisors(self.order() as u64).into_iter().all(|p| pi.contains(p))
    }
}
