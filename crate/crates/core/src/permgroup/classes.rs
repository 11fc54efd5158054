use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_rational::BigRational;

use super::{ElementTable, PermError};
use crate::chartable::CharacterTable;
use crate::structconst::coefficient_cube;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Element order followed by a letter, e.g. `"5b"`.
    pub label: String,
    /// The lexicographically least element of the class.
    pub representative: usize,
    pub element_order: u64,
    /// Sorted element indices.
    pub elements: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.elements.binary_search(&e).is_ok()
    }
}

fn letters(mut i: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'a' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).expect("ascii")
}

/// Orbits under conjugation, ordered by element order, then size, then
/// least representative.
pub fn conjugacy_classes(g: &ElementTable) -> Vec<ConjugacyClass> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for &s in g.generators() {
                let y = g.conj(x, s);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        let representative = *orbit.iter().min_by(|&&a, &&b| g.perm(a).cmp(g.perm(b))).expect("nonempty");
        classes.push(ConjugacyClass {
            label: String::new(),
            representative,
            element_order: g.element_order(start),
            elements: orbit,
        });
    }
    classes.sort_by(|a, b| {
        (a.element_order, a.size())
            .cmp(&(b.element_order, b.size()))
            .then_with(|| g.perm(a.representative).cmp(g.perm(b.representative)))
    });
    let mut per_order: BTreeMap<u64, usize> = BTreeMap::new();
    for c in &mut classes {
        let k = per_order.entry(c.element_order).or_default();
        c.label = format!("{}{}", c.element_order, letters(*k));
        *k += 1;
    }
    classes
}

/// Number of pairs `(u, v) ∈ a × b` with `u·v = c`.
pub fn brute_force_cmc(g: &ElementTable, a: &ConjugacyClass, b: &ConjugacyClass, c: usize) -> u64 {
    a.elements.iter().filter(|&&u| b.contains(g.mul(g.inv(u), c))).count() as u64
}

const MAX_ASSIGNMENTS: usize = 10_000;

/// Maps each group class to a table column with the same element order and
/// class size. Where several columns share both, the assignment is chosen so
/// that brute-force counts agree with the table on every triple touching an
/// ambiguous class; the first consistent assignment wins.
pub fn match_classes(
    g: &ElementTable,
    classes: &[ConjugacyClass],
    table: &CharacterTable,
) -> Result<Vec<usize>, PermError> {
    let n = classes.len();
    if n != table.num_classes() {
        return Err(PermError::ClassMatch(format!("{n} group classes, {} table classes", table.num_classes())));
    }
    if BigUint::from(g.order()) != *table.group_order() {
        return Err(PermError::ClassMatch(format!("|G| = {}, table order {}", g.order(), table.group_order())));
    }
    let key_of_col = |c: usize| {
        let size = table.class_size(c);
        (table.class(c).element_order, size.clone())
    };
    let mut buckets: BTreeMap<(u64, String), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (i, c) in classes.iter().enumerate() {
        buckets.entry((c.element_order, c.size().to_string())).or_default().0.push(i);
    }
    for col in 0..n {
        let (order, size): (u64, BigRational) = key_of_col(col);
        let key = (order, size.to_string());
        match buckets.get_mut(&key) {
            Some(b) => b.1.push(col),
            None => {
                return Err(PermError::ClassMatch(format!(
                    "table class {} (order {order}, size {size}) has no partner",
                    table.class(col).name
                )))
            }
        }
    }
    if let Some(((o, s), _)) = buckets.iter().find(|(_, (g, t))| g.len() != t.len()) {
        return Err(PermError::ClassMatch(format!("classes of order {o} and size {s} differ in number")));
    }

    let groups: Vec<(Vec<usize>, Vec<usize>)> = buckets.into_values().collect();
    let ambiguous: Vec<bool> = {
        let mut amb = vec![false; n];
        for (gs, _) in &groups {
            if gs.len() > 1 {
                gs.iter().for_each(|&i| amb[i] = true);
            }
        }
        amb
    };
    let perms_per_group: Vec<Vec<Vec<usize>>> = groups.iter().map(|(_, cols)| permutations(cols)).collect();
    let total: usize = perms_per_group.iter().map(Vec::len).product();
    if total > MAX_ASSIGNMENTS {
        return Err(PermError::ClassMatch(format!("{total} candidate assignments")));
    }
    let cube = if ambiguous.iter().any(|&a| a) {
        Some(coefficient_cube(table).map_err(|e| PermError::ClassMatch(e.to_string()))?)
    } else {
        None
    };
    let mut brute: HashMap<(usize, usize, usize), u64> = HashMap::new();
    let mut choice = vec![0usize; groups.len()];
    for _ in 0..total {
        let mut map = vec![0usize; n];
        for (gi, (gs, _)) in groups.iter().enumerate() {
            for (k, &i) in gs.iter().enumerate() {
                map[i] = perms_per_group[gi][choice[gi]][k];
            }
        }
        let consistent = match &cube {
            None => true,
            Some(cube) => (0..n).all(|a| {
                (0..n).all(|b| {
                    (0..n).all(|c| {
                        if !(ambiguous[a] || ambiguous[b] || ambiguous[c]) {
                            return true;
                        }
                        let m = *brute.entry((a, b, c)).or_insert_with(|| {
                            brute_force_cmc(g, &classes[a], &classes[b], classes[c].representative)
                        });
                        cube[map[a]][map[b]][map[c]] == BigUint::from(m)
                    })
                })
            }),
        };
        if consistent {
            return Ok(map);
        }
        for (gi, c) in choice.iter_mut().enumerate() {
            *c += 1;
            if *c < perms_per_group[gi].len() {
                break;
            }
            *c = 0;
        }
    }
    Err(PermError::ClassMatch("no assignment reproduces the table's coefficients".into()))
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}
