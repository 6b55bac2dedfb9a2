//! Finite semigroups given by multiplication tables, and an isomorphism
//! search between them.

use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::Hash;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::semigroup::{classify, Endo};

/// Largest order a table can hold.
pub const MAX_ORDER: usize = u16::MAX as usize;

/// A finite semigroup presented by its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupTable {
    labels: Vec<String>,
    order: usize,
    cells: Vec<u16>,
}

#[derive(Serialize)]
struct TableJson<'a> {
    order: usize,
    elements: &'a [String],
    table: Vec<&'a [u16]>,
}

impl SemigroupTable {
    /// Table of `elems` under `product`; fails with `NotClosed` if some
    /// product falls outside the list.
    pub fn from_product<T: Eq + Hash + Sync>(
        elems: &[T],
        labels: Vec<String>,
        product: impl Fn(&T, &T) -> T + Sync,
    ) -> Result<SemigroupTable> {
        let order = check_order(elems.len())?;
        let index: HashMap<&T, u16> = elems.iter().enumerate().map(|(i, x)| (x, i as u16)).collect();
        let rows: Vec<Vec<u16>> = elems
            .par_iter()
            .map(|a| elems.iter().map(|b| index.get(&product(a, b)).copied().ok_or(Error::NotClosed)).collect())
            .collect::<Result<_>>()?;
        Ok(SemigroupTable { labels, order, cells: rows.concat() })
    }

    pub fn from_cells(labels: Vec<String>, cells: Vec<u16>) -> Result<SemigroupTable> {
        let order = check_order(labels.len())?;
        if cells.len() != order * order || cells.iter().any(|&c| c as usize >= order) {
            return Err(Error::ShapeError(format!("table for {order} elements")));
        }
        Ok(SemigroupTable { labels, order, cells })
    }

    /// The same table under new labels.
    pub fn with_labels(self, labels: Vec<String>) -> Result<SemigroupTable> {
        if labels.len() != self.order {
            return Err(Error::ShapeError(format!("{} labels for order {}", labels.len(), self.order)));
        }
        Ok(SemigroupTable { labels, ..self })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.order + b] as usize
    }

    pub fn row(&self, a: usize) -> &[u16] {
        &self.cells[a * self.order..(a + 1) * self.order]
    }

    /// The opposite semigroup, with product `a.b = b a`.
    pub fn opposite(&self) -> SemigroupTable {
        let n = self.order;
        let cells = (0..n * n).map(|k| self.cells[(k % n) * n + k / n]).collect();
        SemigroupTable { labels: self.labels.clone(), order: n, cells }
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.order).filter(|&x| self.product(x, x) == x).collect()
    }

    /// Brute-force associativity check; cubic in the order.
    pub fn is_associative(&self) -> bool {
        (0..self.order).into_par_iter().all(|a| {
            (0..self.order).all(|b| {
                let ab = self.product(a, b);
                (0..self.order).all(|c| self.product(ab, c) == self.product(a, self.product(b, c)))
            })
        })
    }

    /// Regular elements with the first witness `b` such that `a b a = a`.
    pub fn regular_elements(&self) -> Vec<(usize, usize)> {
        (0..self.order)
            .filter_map(|a| (0..self.order).find(|&b| self.product(self.product(a, b), a) == a).map(|b| (a, b)))
            .collect()
    }

    /// Principal left ideals `S^1 a` as bitsets.
    pub fn left_ideals(&self) -> Vec<Vec<u64>> {
        (0..self.order)
            .into_par_iter()
            .map(|a| {
                let mut set = bitset(self.order);
                insert(&mut set, a);
                (0..self.order).for_each(|s| insert(&mut set, self.product(s, a)));
                set
            })
            .collect()
    }

    /// Principal right ideals `a S^1` as bitsets.
    pub fn right_ideals(&self) -> Vec<Vec<u64>> {
        (0..self.order)
            .into_par_iter()
            .map(|a| {
                let mut set = bitset(self.order);
                insert(&mut set, a);
                self.row(a).iter().for_each(|&s| insert(&mut set, s as usize));
                set
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let table = self.cells.chunks(self.order.max(1)).take(self.order).collect();
        serde_json::to_value(TableJson { order: self.order, elements: &self.labels, table }).expect("serializable")
    }

    /// Checks that `map` is a bijective homomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &SemigroupTable, map: &[usize]) -> bool {
        if self.order != other.order || map.len() != self.order {
            return false;
        }
        let mut seen = vec![false; self.order];
        for &m in map {
            if m >= self.order || std::mem::replace(&mut seen[m], true) {
                return false;
            }
        }
        (0..self.order)
            .into_par_iter()
            .all(|a| (0..self.order).all(|b| map[self.product(a, b)] == other.product(map[a], map[b])))
    }
}

fn check_order(order: usize) -> Result<usize> {
    if order > MAX_ORDER {
        return Err(Error::TooLarge(format!("semigroup of order {order}")));
    }
    Ok(order)
}

fn bitset(n: usize) -> Vec<u64> {
    vec![0; n.div_ceil(64)]
}

#[inline]
fn insert(set: &mut [u64], i: usize) {
    set[i / 64] |= 1 << (i % 64);
}

/// Which product to tabulate on a set of transformations.
#[derive(Debug, Clone)]
pub enum EndoProduct {
    /// `a b`
    Plain,
    /// `b a`
    Reversed,
    /// `a θ b` for the given sandwich matrix
    Sandwich(Mat),
}

/// Fast table for a set of transformations of one space, using integer
/// codes and precomputed vector images instead of matrix products.
pub fn endo_table(elems: &[Endo], op: &EndoProduct) -> Result<SemigroupTable> {
    let order = check_order(elems.len())?;
    let labels = elems.iter().map(|e| e.to_string()).collect();
    let Some(first) = elems.first() else {
        return Ok(SemigroupTable { labels, order, cells: Vec::new() });
    };
    let (n, p) = (first.n(), first.prime());
    let q = p.as_usize();
    let vecs = q.pow(n as u32);
    let space = vecs.pow(n as u32);

    let mut index = vec![u16::MAX; space];
    for (i, e) in elems.iter().enumerate() {
        if e.n() != n || e.prime() != p {
            return Err(Error::ShapeError("transformations of different spaces".into()));
        }
        index[e.code()] = i as u16;
    }

    let row_codes = |m: &Mat| -> Vec<usize> {
        m.row_iter().map(|r| r.iter().fold(0, |acc, &v| acc * q + v as usize)).collect()
    };
    // images[v] = code of v m, for every vector code v
    let images = |m: &Mat| -> Vec<usize> {
        let mut v = vec![0u8; n];
        (0..vecs)
            .map(|mut c| {
                for slot in v.iter_mut().rev() {
                    *slot = (c % q) as u8;
                    c /= q;
                }
                m.apply(&v).iter().fold(0, |acc, &x| acc * q + x as usize)
            })
            .collect()
    };

    let left: Vec<Vec<usize>> = elems.iter().map(|e| row_codes(e.mat())).collect();
    let right: Vec<Vec<usize>> = match op {
        EndoProduct::Plain | EndoProduct::Reversed => elems.iter().map(|e| images(e.mat())).collect(),
        EndoProduct::Sandwich(theta) => elems
            .iter()
            .map(|e| theta.mul(e.mat()).map(|m| images(&m)))
            .collect::<Result<_>>()?,
    };

    let rows: Vec<Vec<u16>> = (0..order)
        .into_par_iter()
        .map(|a| {
            (0..order)
                .map(|b| {
                    let (x, y) = if matches!(op, EndoProduct::Reversed) { (b, a) } else { (a, b) };
                    let code = left[x].iter().fold(0, |acc, &r| acc * vecs + right[y][r]);
                    match index[code] {
                        u16::MAX => Err(Error::NotClosed),
                        k => Ok(k),
                    }
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(SemigroupTable { labels, order, cells: rows.concat() })
}

/// Per-element isomorphism invariants, reduced to class ids shared by both
/// tables.
fn invariants(t: &SemigroupTable) -> Vec<(bool, usize, usize, usize, usize, usize, usize)> {
    let left = t.left_ideals();
    let right = t.right_ideals();
    let size = |s: &Vec<u64>| s.iter().map(|w| w.count_ones() as usize).sum::<usize>();
    let lclass = classify(&left);
    let rclass = classify(&right);
    let count = |ids: &[usize]| {
        let mut c = HashMap::new();
        ids.iter().for_each(|&i| *c.entry(i).or_insert(0usize) += 1);
        c
    };
    let (lsz, rsz) = (count(&lclass), count(&rclass));
    (0..t.order)
        .into_par_iter()
        .map(|x| {
            let (index, period) = index_period(t, x);
            (t.product(x, x) == x, index, period, size(&left[x]), size(&right[x]), lsz[&lclass[x]], rsz[&rclass[x]])
        })
        .collect()
}

fn index_period(t: &SemigroupTable, x: usize) -> (usize, usize) {
    let mut first_seen = HashMap::new();
    let mut power = x;
    for k in 1.. {
        if let Some(&j) = first_seen.get(&power) {
            return (j, k - j);
        }
        first_seen.insert(power, k);
        power = t.product(power, x);
    }
    unreachable!()
}

/// Searches for an isomorphism `a -> b`, returned as the image of each
/// element of `a`. The search is deterministic regardless of thread count.
pub fn find_isomorphism(a: &SemigroupTable, b: &SemigroupTable) -> Option<Vec<usize>> {
    if a.order != b.order {
        return None;
    }
    if a.order == 0 {
        return Some(Vec::new());
    }
    let (ia, ib) = (invariants(a), invariants(b));
    let mut keys: Vec<_> = ia.iter().chain(ib.iter()).copied().collect::<HashSet<_>>().into_iter().collect();
    keys.sort();
    let key_id: HashMap<_, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let ca: Vec<usize> = ia.iter().map(|k| key_id[k]).collect();
    let cb: Vec<usize> = ib.iter().map(|k| key_id[k]).collect();

    let mut members = vec![Vec::new(); keys.len()];
    cb.iter().enumerate().for_each(|(y, &c)| members[c].push(y));
    let mut hist_a = vec![0usize; keys.len()];
    ca.iter().for_each(|&c| hist_a[c] += 1);
    if hist_a.iter().zip(&members).any(|(h, m)| *h != m.len()) {
        return None;
    }

    // rarest classes first keeps the branching small
    let mut pref: Vec<usize> = (0..a.order).collect();
    pref.sort_by_key(|&x| (hist_a[ca[x]], x));
    let gens = generators(a, &pref);

    let search = Search { a, b, ca: &ca, cb: &cb, gens: &gens };
    let found = members[ca[gens[0]]].par_iter().find_map_first(|&c0| {
        let mut images = vec![c0];
        search.extend(&mut images, &members)
    })?;
    a.is_isomorphism(b, &found).then_some(found)
}

pub fn are_isomorphic(a: &SemigroupTable, b: &SemigroupTable) -> bool {
    find_isomorphism(a, b).is_some()
}

/// A generating set chosen greedily in preference order.
fn generators(t: &SemigroupTable, pref: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut covered = vec![false; t.order];
    for &x in pref {
        if covered[x] {
            continue;
        }
        gens.push(x);
        covered = vec![false; t.order];
        let mut queue: VecDeque<usize> = gens.iter().copied().collect();
        gens.iter().for_each(|&g| covered[g] = true);
        while let Some(y) = queue.pop_front() {
            for &g in &gens {
                let z = t.product(y, g);
                if !covered[z] {
                    covered[z] = true;
                    queue.push_back(z);
                }
            }
        }
        if covered.iter().all(|&c| c) {
            break;
        }
    }
    gens
}

struct Search<'a> {
    a: &'a SemigroupTable,
    b: &'a SemigroupTable,
    ca: &'a [usize],
    cb: &'a [usize],
    gens: &'a [usize],
}

impl Search<'_> {
    fn extend(&self, images: &mut Vec<usize>, members: &[Vec<usize>]) -> Option<Vec<usize>> {
        let map = self.close(images)?;
        if images.len() == self.gens.len() {
            return Some(map);
        }
        let next = self.gens[images.len()];
        for &c in &members[self.ca[next]] {
            images.push(c);
            if let Some(found) = self.extend(images, members) {
                return Some(found);
            }
            images.pop();
        }
        None
    }

    /// Extends the generator assignment to the generated subsemigroup,
    /// failing on any inconsistency or collision.
    fn close(&self, images: &[usize]) -> Option<Vec<usize>> {
        const UNSET: usize = usize::MAX;
        let mut map = vec![UNSET; self.a.order];
        let mut used = vec![false; self.b.order];
        let mut queue = VecDeque::new();
        for (&g, &c) in self.gens.iter().zip(images) {
            if map[g] == UNSET {
                if std::mem::replace(&mut used[c], true) {
                    return None;
                }
                map[g] = c;
                queue.push_back(g);
            } else if map[g] != c {
                return None;
            }
        }
        while let Some(x) = queue.pop_front() {
            for (&g, &c) in self.gens.iter().zip(images) {
                let (y, z) = (self.a.product(x, g), self.b.product(map[x], c));
                if map[y] == UNSET {
                    if self.ca[y] != self.cb[z] || std::mem::replace(&mut used[z], true) {
                        return None;
                    }
                    map[y] = z;
                    queue.push_back(y);
                } else if map[y] != z {
                    return None;
                }
            }
        }
        Some(map)
    }
}
