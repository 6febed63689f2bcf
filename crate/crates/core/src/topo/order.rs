use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use crate::combinat::permutations;
use crate::error::{parse_err, Error, Result};
use crate::par;

/// Largest vertex count for general quasi-order operations.
pub const MAX_VERTICES: usize = 15;
/// Largest vertex count for canonical forms.
pub const MAX_CANONICAL: usize = 8;

/// A reflexive and transitive relation on `{0..n}`; `up[i]` has bit `j` set
/// iff `i ≤ j`. The empty order is the unit topology.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuasiOrder {
    n: usize,
    up: Vec<u32>,
}

/// A set partition of `{0..n}`, stored as block masks sorted by least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    blocks: Vec<u32>,
}

impl Partition {
    /// From a restricted growth string (block label per element).
    pub fn from_labels(labels: &[usize]) -> Self {
        let k = labels.iter().map(|&b| b + 1).max().unwrap_or(0);
        let mut blocks = vec![0u32; k];
        for (i, &b) in labels.iter().enumerate() {
            blocks[b] |= 1 << i;
        }
        Self::from_blocks(blocks)
    }

    pub fn from_blocks(mut blocks: Vec<u32>) -> Self {
        blocks.retain(|&b| b != 0);
        blocks.sort_by_key(|b| b.trailing_zeros());
        Partition { blocks }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            blocks: (0..n).map(|i| 1 << i).collect(),
        }
    }

    pub fn blocks(&self) -> &[u32] {
        &self.blocks
    }

    pub fn block_of(&self, i: usize) -> u32 {
        self.blocks
            .iter()
            .copied()
            .find(|b| b >> i & 1 == 1)
            .unwrap_or(0)
    }

    fn covers(&self, n: usize) -> bool {
        let all = self.blocks.iter().fold(0u32, |acc, b| {
            if acc & b != 0 {
                return u32::MAX;
            }
            acc | b
        });
        all == full_mask(n)
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

impl QuasiOrder {
    fn check_size(n: usize) -> Result<()> {
        if n > MAX_VERTICES {
            return Err(Error::SizeBound {
                what: "topology",
                size: n,
                limit: MAX_VERTICES,
            });
        }
        Ok(())
    }

    /// The unit topology on the empty set.
    pub fn unit() -> Self {
        QuasiOrder {
            n: 0,
            up: Vec::new(),
        }
    }

    /// The discrete order (only `i ≤ i`).
    pub fn discrete(n: usize) -> Self {
        QuasiOrder {
            n,
            up: (0..n).map(|i| 1 << i).collect(),
        }
    }

    /// Reflexive-transitive closure of the given pairs `i ≤ j` (0-based).
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::check_size(n)?;
        let mut q = Self::discrete(n);
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::Invalid(format!(
                    "relation ({}, {}) outside a {n}-point set",
                    i + 1,
                    j + 1
                )));
            }
            q.up[i] |= 1 << j;
        }
        q.close();
        Ok(q)
    }

    fn close(&mut self) {
        for k in 0..self.n {
            for i in 0..self.n {
                if self.up[i] >> k & 1 == 1 {
                    self.up[i] |= self.up[k];
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn up_mask(&self, i: usize) -> u32 {
        self.up[i]
    }

    /// Elements below or equal to `i`.
    pub fn down_mask(&self, i: usize) -> u32 {
        (0..self.n)
            .filter(|&j| self.le(j, i))
            .fold(0, |acc, j| acc | 1 << j)
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.up[i] >> j & 1 == 1
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.le(i, j) && !self.le(j, i)
    }

    pub fn equiv(&self, i: usize, j: usize) -> bool {
        self.le(i, j) && self.le(j, i)
    }

    /// `true` when the relation is symmetric, i.e. an equivalence relation.
    pub fn is_equivalence(&self) -> bool {
        (0..self.n).all(|i| bits(self.up[i]).all(|j| self.le(j, i)))
    }

    /// Classes of `x ~ y ⇔ x ≤ y ≤ x`, sorted by least element.
    pub fn classes(&self) -> Vec<u32> {
        let mut seen = 0u32;
        let mut out = Vec::new();
        for i in 0..self.n {
            if seen >> i & 1 == 1 {
                continue;
            }
            let c = (0..self.n)
                .filter(|&j| self.equiv(i, j))
                .fold(0u32, |acc, j| acc | 1 << j);
            seen |= c;
            out.push(c);
        }
        out
    }

    /// Classes with no strictly smaller element.
    pub fn min_classes(&self) -> Vec<u32> {
        self.classes()
            .into_iter()
            .filter(|&c| {
                let i = c.trailing_zeros() as usize;
                (0..self.n).all(|j| !self.lt(j, i))
            })
            .collect()
    }

    /// `true` when `mask` is an open set (closed upwards).
    pub fn is_open(&self, mask: u32) -> bool {
        bits(mask).all(|i| self.up[i] & !mask == 0)
    }

    /// All open sets, in increasing mask order.
    pub fn open_sets(&self) -> Result<Vec<u32>> {
        Self::check_size(self.n)?;
        Ok((0..=full_mask(self.n))
            .filter(|&m| self.is_open(m))
            .collect())
    }

    /// Induced order on the vertices of `mask`, relabeled in increasing order.
    pub fn restrict_mask(&self, mask: u32) -> QuasiOrder {
        let keep: Vec<usize> = bits(mask).filter(|&i| i < self.n).collect();
        let up = keep
            .iter()
            .map(|&i| {
                keep.iter()
                    .enumerate()
                    .filter(|(_, &j)| self.le(i, j))
                    .fold(0u32, |acc, (k, _)| acc | 1 << k)
            })
            .collect();
        QuasiOrder { n: keep.len(), up }
    }

    /// `T|∼`: only relations inside blocks survive.
    pub fn restrict(&self, p: &Partition) -> Result<QuasiOrder> {
        self.check_partition(p)?;
        Ok(QuasiOrder {
            n: self.n,
            up: (0..self.n).map(|i| self.up[i] & p.block_of(i)).collect(),
        })
    }

    /// `T/∼`: reflexive-transitive closure of `≤_T ∪ ∼`.
    pub fn quotient(&self, p: &Partition) -> Result<QuasiOrder> {
        self.check_partition(p)?;
        let mut q = QuasiOrder {
            n: self.n,
            up: (0..self.n).map(|i| self.up[i] | p.block_of(i)).collect(),
        };
        q.close();
        Ok(q)
    }

    fn check_partition(&self, p: &Partition) -> Result<()> {
        if p.covers(self.n) {
            Ok(())
        } else {
            Err(Error::Invalid(format!(
                "{p:?} is not a partition of a {}-point set",
                self.n
            )))
        }
    }

    /// Disjoint union, `self` first.
    pub fn disjoint_union(&self, other: &QuasiOrder) -> QuasiOrder {
        let mut up = self.up.clone();
        up.extend(other.up.iter().map(|m| m << self.n));
        QuasiOrder {
            n: self.n + other.n,
            up,
        }
    }

    /// `self ↓ other`: every vertex of `self` below every vertex of `other`.
    pub fn below(&self, other: &QuasiOrder) -> QuasiOrder {
        let top = full_mask(other.n) << self.n;
        let mut up: Vec<u32> = self.up.iter().map(|m| m | top).collect();
        up.extend(other.up.iter().map(|m| m << self.n));
        QuasiOrder {
            n: self.n + other.n,
            up,
        }
    }

    /// Stacks the induced orders on consecutive blocks: inside a block the
    /// order of `self`, and every vertex of an earlier block below every
    /// vertex of a later one.
    pub fn stack(&self, blocks: &[u32]) -> QuasiOrder {
        let mut up = vec![0u32; self.n];
        let mut above = 0u32;
        for &b in blocks.iter().rev() {
            for i in bits(b) {
                up[i] = (self.up[i] & b) | above;
            }
            above |= b;
        }
        QuasiOrder { n: self.n, up }
    }

    /// Relabeled order `(i, j) ↦ self(p[i], p[j])`.
    pub fn relabel(&self, p: &[usize]) -> QuasiOrder {
        let n = self.n;
        let up = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| self.le(p[i], p[j]))
                    .fold(0u32, |acc, j| acc | 1 << j)
            })
            .collect();
        QuasiOrder { n, up }
    }

    /// Row-major matrix of `j ≤ i` (row `i` lists what lies below `i`), first
    /// entry most significant. Minimizing it puts minimal elements first.
    pub fn code(&self) -> Result<u64> {
        if self.n > MAX_CANONICAL {
            return Err(Error::SizeBound {
                what: "topology for canonical form",
                size: self.n,
                limit: MAX_CANONICAL,
            });
        }
        let mut c = 0u64;
        for i in 0..self.n {
            for j in 0..self.n {
                c = c << 1 | u64::from(self.le(j, i));
            }
        }
        Ok(c)
    }

    pub fn from_code(n: usize, code: u64) -> QuasiOrder {
        let mut up = vec![0u32; n];
        for i in 0..n {
            for j in 0..n {
                let bit = n * n - 1 - (i * n + j);
                if code >> bit & 1 == 1 {
                    up[j] |= 1 << i;
                }
            }
        }
        QuasiOrder { n, up }
    }

    /// Isomorphism class, via the minimal relation code over all relabelings.
    pub fn canonical(&self) -> Result<QuasiOrderClass> {
        canonicalize(self)
    }

    /// Generating relations in the input grammar (1-based): `a~b` links
    /// consecutive members of each class, `a<b` are covers between class
    /// representatives.
    pub fn relations_text(&self) -> String {
        let classes = self.classes();
        let mut rels = Vec::new();
        for c in &classes {
            let members: Vec<usize> = bits(*c).collect();
            for w in members.windows(2) {
                rels.push(format!("{}~{}", w[0] + 1, w[1] + 1));
            }
        }
        let reps: Vec<usize> = classes
            .iter()
            .map(|c| c.trailing_zeros() as usize)
            .collect();
        for &a in &reps {
            for &b in &reps {
                if !self.lt(a, b) {
                    continue;
                }
                let covered = reps.iter().any(|&m| self.lt(a, m) && self.lt(m, b));
                if !covered {
                    rels.push(format!("{}<{}", a + 1, b + 1));
                }
            }
        }
        if rels.is_empty() {
            format!("{};", self.n)
        } else {
            format!("{}; {}", self.n, rels.join(", "))
        }
    }

    /// Parses `n; 1<2, 2<3, 4~5`, a bracketed form `[n; …]`, `1` for the
    /// unit, or one of the names `l<n>`, `c<n>`, `disc<n>`, `eq<n>`.
    pub fn parse(s: &str) -> Result<QuasiOrder> {
        let s = s.trim();
        let s = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .unwrap_or(s)
            .trim();
        if s == "1" {
            return Ok(QuasiOrder::unit());
        }
        if let Some((head, rest)) = s.split_once(';') {
            let n: usize = head
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("bad vertex count in `{s}`")))?;
            Self::check_size(n)?;
            let mut pairs = Vec::new();
            for rel in rest.split(',').map(str::trim).filter(|r| !r.is_empty()) {
                let (a, b, sym) = if let Some((a, b)) = rel.split_once('<') {
                    (a, b, false)
                } else if let Some((a, b)) = rel.split_once('~') {
                    (a, b, true)
                } else {
                    return Err(parse_err(format!("bad relation `{rel}`")));
                };
                let idx = |t: &str| -> Result<usize> {
                    let v: usize = t
                        .trim()
                        .parse()
                        .map_err(|_| parse_err(format!("bad vertex in `{rel}`")))?;
                    if v == 0 || v > n {
                        return Err(parse_err(format!("vertex {v} outside 1..={n}")));
                    }
                    Ok(v - 1)
                };
                let (a, b) = (idx(a)?, idx(b)?);
                pairs.push((a, b));
                if sym {
                    pairs.push((b, a));
                }
            }
            return QuasiOrder::from_pairs(n, &pairs);
        }
        let named = |prefix: &str| -> Option<usize> {
            s.strip_prefix(prefix).and_then(|t| t.parse::<usize>().ok())
        };
        if let Some(n) = named("disc") {
            Self::check_size(n)?;
            return Ok(QuasiOrder::discrete(n));
        }
        if let Some(n) = named("eq") {
            Self::check_size(n)?;
            let pairs: Vec<_> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
            return QuasiOrder::from_pairs(n, &pairs);
        }
        if let Some(n) = named("l") {
            Self::check_size(n)?;
            let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            return QuasiOrder::from_pairs(n, &pairs);
        }
        if let Some(n) = named("c") {
            if n < 2 {
                return Err(parse_err("corollas start at c2"));
            }
            Self::check_size(n)?;
            let pairs: Vec<_> = (1..n).map(|i| (0, i)).collect();
            return QuasiOrder::from_pairs(n, &pairs);
        }
        Err(parse_err(format!("cannot read topology `{s}`")))
    }

    /// Name of a recognized shape, if any.
    fn shape_name(&self) -> Option<String> {
        let n = self.n;
        if n == 0 {
            return Some("1".into());
        }
        let antisym = self.classes().len() == n;
        let related = |i: usize| (self.up[i] | self.down_mask(i)).count_ones() as usize;
        if antisym && (0..n).all(|i| related(i) == n) {
            return Some(format!("l{n}"));
        }
        if n >= 2 && (0..n).all(|i| self.up[i] == 1 << i) {
            return Some(format!("disc{n}"));
        }
        if n >= 2 && self.classes().len() == 1 {
            return Some(format!("eq{n}"));
        }
        if n >= 3 && antisym {
            let roots: Vec<usize> = (0..n).filter(|&i| self.up[i] == full_mask(n)).collect();
            if roots.len() == 1 && (0..n).all(|i| i == roots[0] || self.up[i] == 1 << i) {
                return Some(format!("c{n}"));
            }
        }
        None
    }
}

impl fmt::Debug for QuasiOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.relations_text())
    }
}

/// Isomorphism class of a finite topology, stored as its canonical code.
/// Classes order by vertex count, then by code.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuasiOrderClass {
    n: u8,
    code: u64,
}

impl QuasiOrderClass {
    pub fn unit() -> Self {
        QuasiOrderClass { n: 0, code: 0 }
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_unit(&self) -> bool {
        self.n == 0
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    /// The canonical representative.
    pub fn order(&self) -> QuasiOrder {
        QuasiOrder::from_code(self.n as usize, self.code)
    }

    pub fn parse(s: &str) -> Result<Self> {
        QuasiOrder::parse(s)?.canonical()
    }

    /// Short name (`l3`, `c4`, `disc2`, `eq2`, `1`) when the shape is
    /// recognized, else the bracketed relation list of the representative.
    pub fn name(&self) -> String {
        let q = self.order();
        q.shape_name()
            .unwrap_or_else(|| format!("[{}]", q.relations_text()))
    }
}

impl fmt::Display for QuasiOrderClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Debug for QuasiOrderClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

type CanonMemo = RwLock<HashMap<(usize, u64), u64>>;

fn canon_memo() -> &'static CanonMemo {
    static MEMO: OnceLock<CanonMemo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

fn min_code_over(q: &QuasiOrder, perms: &[Vec<usize>]) -> u64 {
    let n = q.n;
    let mut best = u64::MAX;
    for p in perms {
        let mut c = 0u64;
        let mut pruned = false;
        for i in 0..n {
            for j in 0..n {
                c = c << 1 | u64::from(q.le(p[j], p[i]));
            }
            // Compare the finished prefix against the same prefix of `best`.
            let shift = (n - 1 - i) * n;
            if best != u64::MAX && c > best >> shift {
                pruned = true;
                break;
            }
        }
        if !pruned && c < best {
            best = c;
        }
    }
    best
}

/// Exhaustive canonical form over all `n!` relabelings (`n ≤ 8`), memoized.
pub fn canonicalize(q: &QuasiOrder) -> Result<QuasiOrderClass> {
    let n = q.n;
    let key = (n, q.code()?);
    if let Some(&c) = canon_memo().read().unwrap().get(&key) {
        return Ok(QuasiOrderClass {
            n: n as u8,
            code: c,
        });
    }
    let best = canonical_code_uncached(q);
    canon_memo().write().unwrap().insert(key, best);
    Ok(QuasiOrderClass {
        n: n as u8,
        code: best,
    })
}

/// Canonical code without the memo; large sizes split the relabelings
/// across the parallel pool by their first image.
pub fn canonical_code_uncached(q: &QuasiOrder) -> u64 {
    let n = q.n;
    if n == 0 {
        return 0;
    }
    let perms = permutations(n);
    if n < 7 {
        return min_code_over(q, &perms);
    }
    let chunks: Vec<&[Vec<usize>]> = perms.chunks(perms.len() / n).collect();
    par::map(&chunks, |c| min_code_over(q, c))
        .into_iter()
        .min()
        .unwrap()
}
