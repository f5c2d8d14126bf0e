//! Hereditarily finite sets with structural interning.
//!
//! Every [`HfSet`] is built through a process-wide interning table, so two
//! extensionally equal sets are always the same allocation and equality is a
//! pointer comparison. Elements are kept sorted by [`hf_compare`], which agrees
//! with the order of Ackermann indices without ever materializing them.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::DictifError;

/// Largest number of bits an Ackermann index may have before
/// [`HfSet::to_index`] refuses to materialize it.
pub const INDEX_BIT_CAP: u64 = 1 << 20;

/// Largest element count accepted by [`HfSet::powerset`].
pub const POWERSET_ELEMENT_CAP: usize = 20;

struct Node {
    id: u64,
    elems: Box<[HfSet]>,
    // Ackermann index when it fits in a u64.
    small: Option<u64>,
}

/// A hereditarily finite set, the interpretation of a dictif.
#[derive(Clone)]
pub struct HfSet(Arc<Node>);

#[derive(Default)]
struct Interner {
    by_children: HashMap<Box<[u64]>, HfSet>,
    by_small: HashMap<u64, HfSet>,
    next_id: u64,
}

fn interner() -> &'static Mutex<Interner> {
    static TABLE: OnceLock<Mutex<Interner>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(Interner::default()))
}

impl HfSet {
    // `elems` must already be strictly increasing under hf_compare.
    fn intern_sorted(elems: Vec<HfSet>) -> HfSet {
        let key: Box<[u64]> = elems.iter().map(|e| e.0.id).collect();
        let mut table = interner().lock().expect("interning table poisoned");
        if let Some(found) = table.by_children.get(&key) {
            return found.clone();
        }
        let small = elems.iter().try_fold(0u64, |acc, e| match e.0.small {
            Some(k) if k < 64 => Some(acc | (1u64 << k)),
            _ => None,
        });
        let id = table.next_id;
        table.next_id += 1;
        let set = HfSet(Arc::new(Node {
            id,
            elems: elems.into_boxed_slice(),
            small,
        }));
        table.by_children.insert(key, set.clone());
        if let Some(k) = small {
            table.by_small.insert(k, set.clone());
        }
        set
    }

    pub fn empty() -> HfSet {
        HfSet::intern_sorted(Vec::new())
    }

    /// Builds the set with exactly the given elements, in any order, duplicates allowed.
    pub fn from_elements<I: IntoIterator<Item = HfSet>>(elems: I) -> HfSet {
        let mut v: Vec<HfSet> = elems.into_iter().collect();
        v.sort_by(hf_compare);
        v.dedup();
        HfSet::intern_sorted(v)
    }

    pub fn singleton(x: &HfSet) -> HfSet {
        HfSet::intern_sorted(vec![x.clone()])
    }

    /// The set whose Ackermann index is `n`.
    pub fn from_u64(n: u64) -> HfSet {
        if let Some(found) = interner().lock().expect("interning table poisoned").by_small.get(&n) {
            return found.clone();
        }
        let elems = (0..64).filter(|k| n >> k & 1 == 1).map(HfSet::from_u64).collect();
        HfSet::intern_sorted(elems)
    }

    /// The set whose elements are `from_index(K)` for every set bit `K` of `n`
    /// (bit 0 is the least significant).
    pub fn from_index(n: &BigUint) -> HfSet {
        if let Some(small) = n.to_u64() {
            return HfSet::from_u64(small);
        }
        let elems = (0..n.bits())
            .filter(|&k| n.bit(k))
            .map(HfSet::from_u64)
            .collect();
        HfSet::intern_sorted(elems)
    }

    /// Ackermann index: the sum of `2^index(e)` over the elements `e`.
    pub fn to_index(&self) -> Result<BigUint, DictifError> {
        if let Some(k) = self.0.small {
            return Ok(BigUint::from(k));
        }
        let mut n = BigUint::zero();
        for e in self.elements() {
            let k = e.to_index()?;
            let bit = k
                .to_u64()
                .filter(|&b| b < INDEX_BIT_CAP)
                .ok_or(DictifError::IndexOverflow { cap_bits: INDEX_BIT_CAP })?;
            n.set_bit(bit, true);
        }
        Ok(n)
    }

    /// The index when it fits in a `u64`.
    pub fn small_index(&self) -> Option<u64> {
        self.0.small
    }

    /// Elements in ascending `hf_compare` order.
    pub fn elements(&self) -> &[HfSet] {
        &self.0.elems
    }

    pub fn len(&self) -> usize {
        self.0.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.elems.is_empty()
    }

    pub fn contains(&self, x: &HfSet) -> bool {
        self.0.elems.binary_search_by(|e| hf_compare(e, x)).is_ok()
    }

    pub fn is_subset(&self, other: &HfSet) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut rest = other.elements();
        for x in self.elements() {
            match rest.binary_search_by(|e| hf_compare(e, x)) {
                Ok(i) => rest = &rest[i + 1..],
                Err(_) => return false,
            }
        }
        true
    }

    pub fn union(&self, other: &HfSet) -> HfSet {
        let (a, b) = (self.elements(), other.elements());
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match hf_compare(&a[i], &b[j]) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(a[i].clone());
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        HfSet::intern_sorted(out)
    }

    pub fn intersection(&self, other: &HfSet) -> HfSet {
        let (a, b) = (self.elements(), other.elements());
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match hf_compare(&a[i], &b[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push(a[i].clone());
                    i += 1;
                    j += 1;
                }
            }
        }
        HfSet::intern_sorted(out)
    }

    pub fn difference(&self, other: &HfSet) -> HfSet {
        let out = self
            .elements()
            .iter()
            .filter(|x| !other.contains(x))
            .cloned()
            .collect();
        HfSet::intern_sorted(out)
    }

    /// `x ∪ {x}`.
    pub fn successor(&self) -> HfSet {
        self.union(&HfSet::singleton(self))
    }

    /// All subsets, ascending. Refuses sets with more than
    /// [`POWERSET_ELEMENT_CAP`] elements.
    pub fn powerset(&self) -> Result<HfSet, DictifError> {
        let n = self.len();
        if n > POWERSET_ELEMENT_CAP {
            return Err(DictifError::CapExceeded {
                what: "powerset element count",
                value: n as u64,
                cap: POWERSET_ELEMENT_CAP as u64,
            });
        }
        // With elements sorted ascending, subsets ordered by bitmask are
        // ordered by hf_compare: the largest differing element decides both.
        let elems = self.elements();
        let subsets = (0u64..1 << n)
            .map(|mask| {
                let chosen = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| elems[i].clone()).collect();
                HfSet::intern_sorted(chosen)
            })
            .collect();
        Ok(HfSet::intern_sorted(subsets))
    }

    /// Every element is also a subset.
    pub fn is_transitive(&self) -> bool {
        self.elements().iter().all(|e| e.is_subset(self))
    }

    /// `A ↦ A ∩ X` is injective on the elements of `X`.
    pub fn is_subtransitive(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.len());
        self.elements().iter().all(|a| {
            let meet: Vec<HfSet> = a.elements().iter().filter(|y| self.contains(y)).cloned().collect();
            seen.insert(meet)
        })
    }

    /// Von Neumann rank.
    pub fn rank(&self) -> usize {
        self.elements().iter().map(|e| e.rank() + 1).max().unwrap_or(0)
    }
}

/// Total order on sets agreeing with Ackermann-index order: `a < b` iff the
/// largest element of the symmetric difference lies in `b`.
pub fn hf_compare(a: &HfSet, b: &HfSet) -> Ordering {
    if Arc::ptr_eq(&a.0, &b.0) {
        return Ordering::Equal;
    }
    match (a.0.small, b.0.small) {
        (Some(x), Some(y)) => return x.cmp(&y),
        (Some(_), None) => return Ordering::Less,
        (None, Some(_)) => return Ordering::Greater,
        (None, None) => {}
    }
    let (xs, ys) = (a.elements(), b.elements());
    let (mut i, mut j) = (xs.len(), ys.len());
    while i > 0 && j > 0 {
        match hf_compare(&xs[i - 1], &ys[j - 1]) {
            Ordering::Equal => {
                i -= 1;
                j -= 1;
            }
            other => return other,
        }
    }
    i.cmp(&j)
}

/// The `n`-th iterated powerset of the empty set. Only `n ≤ 5` is materializable.
pub fn p_level(n: usize) -> Result<HfSet, DictifError> {
    const CAP: usize = 5;
    static LEVELS: [OnceLock<HfSet>; CAP + 1] = [const { OnceLock::new() }; CAP + 1];
    if n > CAP {
        return Err(DictifError::CapExceeded {
            what: "P-level",
            value: n as u64,
            cap: CAP as u64,
        });
    }
    if let Some(s) = LEVELS[n].get() {
        return Ok(s.clone());
    }
    let set = if n == 0 { HfSet::empty() } else { p_level(n - 1)?.powerset()? };
    Ok(LEVELS[n].get_or_init(|| set).clone())
}

impl PartialEq for HfSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for HfSet {}

impl Hash for HfSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.id.hash(state)
    }
}

impl PartialOrd for HfSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HfSet {
    fn cmp(&self, other: &Self) -> Ordering {
        hf_compare(self, other)
    }
}

/// `D#N` when the index materializes, nested braces otherwise.
impl fmt::Display for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_index() {
            Ok(n) => write!(f, "D#{n}"),
            Err(_) => {
                f.write_str("{ ")?;
                for (i, e) in self.elements().iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str(" }")
            }
        }
    }
}

impl fmt::Debug for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
