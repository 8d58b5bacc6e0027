//! Breadth-first closure of a finite set of generators.

use alloc::collections::BTreeMap;
use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A finite group given by its elements and multiplication table.
///
/// `table[i][j]` is the index of `elements[i] * elements[j]`, where the product
/// applies `elements[j]` first. `words[i]` lists generator indices whose product,
/// left to right, equals `elements[i]`.
#[derive(Clone, Debug)]
pub struct GroupTable<T> {
    pub elements: Vec<T>,
    pub words: Vec<Vec<usize>>,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
    pub generators: Vec<usize>,
}

impl<T> GroupTable<T> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut cur = i;
        while cur != self.identity {
            cur = self.table[i][cur];
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..n).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn inverse(&self, i: usize) -> usize {
        (0..self.order()).find(|&j| self.table[i][j] == self.identity).expect("group inverse")
    }

    /// Indices of the subgroup selected by `pred`, checked to be closed.
    pub fn subgroup_where(&self, pred: impl Fn(&T) -> bool) -> Vec<usize> {
        (0..self.order()).filter(|&i| pred(&self.elements[i])).collect()
    }
}

/// Closes `gens` under `mul`, deduplicating by `key`, and sorts the result by `sort_key`.
///
/// `sort_key` receives the element and the length of its BFS word.
pub fn close<T, K, S>(
    identity: T,
    gens: &[T],
    cap: usize,
    mut mul: impl FnMut(&T, &T) -> Result<T>,
    key: impl Fn(&T) -> K,
    sort_key: impl Fn(&T, usize) -> S,
) -> Result<GroupTable<T>>
where
    K: Ord,
    S: Ord,
{
    let mut index: BTreeMap<K, usize> = BTreeMap::new();
    let mut elems = alloc::vec![identity];
    let mut words: Vec<Vec<usize>> = alloc::vec![Vec::new()];
    index.insert(key(&elems[0]), 0);
    // left[g][e] = index of gens[g] * elems[e]
    let mut left: Vec<Vec<usize>> = alloc::vec![Vec::new(); gens.len()];
    let mut queue = VecDeque::from([0usize]);
    if cap == 0 {
        return Err(Error::CapExceeded { cap });
    }
    while let Some(e) = queue.pop_front() {
        for (gi, g) in gens.iter().enumerate() {
            let p = mul(g, &elems[e])?;
            let k = key(&p);
            let idx = match index.get(&k) {
                Some(&i) => i,
                None => {
                    if elems.len() == cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    let i = elems.len();
                    index.insert(k, i);
                    let mut w = alloc::vec![gi];
                    w.extend_from_slice(&words[e]);
                    words.push(w);
                    elems.push(p);
                    queue.push_back(i);
                    i
                }
            };
            let row = &mut left[gi];
            if row.len() <= e {
                row.resize(e + 1, usize::MAX);
            }
            row[e] = idx;
        }
    }
    let n = elems.len();
    for row in &mut left {
        row.resize(n, usize::MAX);
    }
    let mut raw_table = alloc::vec![alloc::vec![0usize; n]; n];
    for (i, w) in words.iter().enumerate() {
        for j in 0..n {
            let mut cur = j;
            for &g in w.iter().rev() {
                cur = left[g][cur];
            }
            raw_table[i][j] = cur;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_cached_key(|&i| sort_key(&elems[i], words[i].len()));
    let mut pos = alloc::vec![0usize; n];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    let table = order
        .iter()
        .map(|&i| order.iter().map(|&j| pos[raw_table[i][j]]).collect())
        .collect();
    let sorted_words = order.iter().map(|&i| words[i].clone()).collect();
    let generators = gens.iter().map(|g| pos[index[&key(g)]]).collect();
    let mut slots: Vec<Option<T>> = elems.into_iter().map(Some).collect();
    let elements = order.iter().map(|&i| slots[i].take().unwrap()).collect();
    Ok(GroupTable { elements, words: sorted_words, identity: pos[0], table, generators })
}
