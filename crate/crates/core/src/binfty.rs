//! B∞ brackets on a word space and the Hopf product they induce on words.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use crate::error::{parse_err, Error, Result};
use crate::exactlin::{LinComb, Scalar};
use crate::par;
use crate::words::{Alphabet, Letter, TensorElem, Word};

/// A product table on letters, total on the alphabet. Values are letter
/// combinations and may be zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterProduct {
    size: usize,
    table: BTreeMap<(Letter, Letter), LinComb<Letter>>,
}

impl LetterProduct {
    pub fn new(
        size: usize,
        entries: impl IntoIterator<Item = ((Letter, Letter), LinComb<Letter>)>,
    ) -> Result<Self> {
        let table: BTreeMap<_, _> = entries.into_iter().collect();
        for a in 0..size as Letter {
            for b in 0..size as Letter {
                if !table.contains_key(&(a, b)) {
                    return Err(Error::Invalid(format!(
                        "letter product table misses the pair (#{a}, #{b})"
                    )));
                }
            }
        }
        Ok(LetterProduct { size, table })
    }

    pub fn mul(&self, a: Letter, b: Letter) -> LinComb<Letter> {
        self.table[&(a, b)].clone()
    }

    pub fn mul_lin(&self, x: &LinComb<Letter>, y: &LinComb<Letter>) -> LinComb<Letter> {
        let mut out = LinComb::zero();
        for (a, s) in x {
            for (b, t) in y {
                out.add_scaled(&self.table[&(*a, *b)], &(s * t));
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        self.table
            .iter()
            .all(|(&(a, b), v)| self.table[&(b, a)] == *v)
    }

    pub fn is_associative(&self) -> bool {
        let n = self.size as Letter;
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let l = self.mul_lin(&self.mul(a, b), &LinComb::basis(c));
                    let r = self.mul_lin(&LinComb::basis(a), &self.mul(b, c));
                    l == r
                })
            })
        })
    }
}

/// Finite bracket table on pairs of nonempty words. Absent pairs are zero
/// when both words are within `bound`; beyond it evaluation is an error.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BracketTable {
    pub bound: Option<usize>,
    entries: BTreeMap<(Word, Word), LinComb<Letter>>,
}

impl BracketTable {
    pub fn new(bound: Option<usize>) -> Self {
        BracketTable {
            bound,
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, w: Word, w2: Word, value: LinComb<Letter>) -> Result<()> {
        if w.is_empty() || w2.is_empty() {
            return Err(Error::Invalid(
                "bracket entries involving the unit word are fixed by the unit rules".into(),
            ));
        }
        if let Some(b) = self.bound {
            if w.len() > b || w2.len() > b {
                return Err(Error::Invalid(format!(
                    "bracket entry exceeds the declared bound {b}"
                )));
            }
        }
        self.entries.insert((w, w2), value);
        Ok(())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Word, Word), &LinComb<Letter>)> {
        self.entries.iter()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Shuffle,
    QuasiShuffle(LetterProduct),
    Explicit(BracketTable),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub unit: bool,
    pub assoc: bool,
    pub comm: bool,
    pub trivial: bool,
}

/// A bracket `⟨-,-⟩` on an alphabet, with the unit rules built in.
pub struct BInftyStructure {
    alphabet: Alphabet,
    mode: Mode,
    memo: RwLock<HashMap<(Word, Word), TensorElem>>,
}

impl Clone for BInftyStructure {
    fn clone(&self) -> Self {
        BInftyStructure::new(self.alphabet.clone(), self.mode.clone())
    }
}

impl std::fmt::Debug for BInftyStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BInftyStructure")
            .field("alphabet", &self.alphabet.declaration())
            .field("mode", &self.mode)
            .finish()
    }
}

impl BInftyStructure {
    pub fn new(alphabet: Alphabet, mode: Mode) -> Self {
        BInftyStructure {
            alphabet,
            mode,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn shuffle(alphabet: Alphabet) -> Self {
        Self::new(alphabet, Mode::Shuffle)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    /// Letter product of a quasi-shuffle structure, if any.
    pub fn letter_product(&self) -> Option<&LetterProduct> {
        match &self.mode {
            Mode::QuasiShuffle(p) => Some(p),
            _ => None,
        }
    }

    fn fmt_word(&self, w: &Word) -> String {
        self.alphabet.fmt_word(w)
    }

    /// `⟨w, w'⟩`.
    pub fn bracket(&self, w: &Word, w2: &Word) -> Result<LinComb<Letter>> {
        match (w.len(), w2.len()) {
            (0, 0) => return Ok(LinComb::zero()),
            (0, 1) => return Ok(LinComb::basis(w2.0[0])),
            (1, 0) => return Ok(LinComb::basis(w.0[0])),
            (0, _) | (_, 0) => return Ok(LinComb::zero()),
            _ => {}
        }
        match &self.mode {
            Mode::Shuffle => Ok(LinComb::zero()),
            Mode::QuasiShuffle(p) => {
                if w.len() == 1 && w2.len() == 1 {
                    Ok(p.mul(w.0[0], w2.0[0]))
                } else {
                    Ok(LinComb::zero())
                }
            }
            Mode::Explicit(t) => {
                if let Some(b) = t.bound {
                    if w.len() > b || w2.len() > b {
                        return Err(Error::BracketOutOfBound(
                            self.fmt_word(w),
                            self.fmt_word(w2),
                        ));
                    }
                }
                Ok(t.entries
                    .get(&(w.clone(), w2.clone()))
                    .cloned()
                    .unwrap_or_default())
            }
        }
    }

    /// Bilinear extension of the bracket.
    pub fn bracket_lin(&self, x: &TensorElem, y: &TensorElem) -> Result<LinComb<Letter>> {
        let mut out = LinComb::zero();
        for (w, a) in x {
            for (u, b) in y {
                out.add_scaled(&self.bracket(w, u)?, &(a * b));
            }
        }
        Ok(out)
    }

    /// Longest blocks that can carry a nonzero bracket in this mode.
    fn max_block(&self) -> usize {
        match self.mode {
            Mode::Explicit(_) => usize::MAX,
            _ => 1,
        }
    }

    /// `w ∗ w'`: sum over pairs of decompositions into the same number of
    /// blocks (empty blocks allowed) of the concatenated bracket values.
    pub fn product_words(&self, w: &Word, w2: &Word) -> Result<TensorElem> {
        if w.is_empty() {
            return Ok(TensorElem::basis(w2.clone()));
        }
        if w2.is_empty() {
            return Ok(TensorElem::basis(w.clone()));
        }
        let key = (w.clone(), w2.clone());
        if let Some(v) = self.memo.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let (n, m) = (w.len(), w2.len());
        let cap = self.max_block();
        // table[i][j] is the product of the suffixes w[i..] and w2[j..].
        let mut table = vec![vec![TensorElem::zero(); m + 1]; n + 1];
        table[n][m] = TensorElem::basis(Word::empty());
        for i in (0..=n).rev() {
            for j in (0..=m).rev() {
                if i == n && j == m {
                    continue;
                }
                let mut acc = TensorElem::zero();
                for i2 in i..=n.min(i.saturating_add(cap)) {
                    for j2 in j..=m.min(j.saturating_add(cap)) {
                        let (a, b) = (i2 - i, j2 - j);
                        // Unit rules: an empty block only pairs with a letter.
                        if (a == 0 && b != 1) || (b == 0 && a != 1) {
                            continue;
                        }
                        if table[i2][j2].is_zero() {
                            continue;
                        }
                        let head = self.bracket(&w.slice(i, i2), &w2.slice(j, j2))?;
                        if head.is_zero() {
                            continue;
                        }
                        for (l, c) in &head {
                            for (u, d) in &table[i2][j2] {
                                let mut v = Vec::with_capacity(u.len() + 1);
                                v.push(*l);
                                v.extend_from_slice(&u.0);
                                acc.add_term(Word(v), c * d);
                            }
                        }
                    }
                }
                table[i][j] = acc;
            }
        }
        let out = std::mem::take(&mut table[0][0]);
        self.memo.write().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// Bilinear extension of [`BInftyStructure::product_words`].
    pub fn product(&self, x: &TensorElem, y: &TensorElem) -> Result<TensorElem> {
        let mut out = TensorElem::zero();
        for (w, a) in x {
            for (u, b) in y {
                out.add_scaled(&self.product_words(w, u)?, &(a * b));
            }
        }
        Ok(out)
    }

    /// Independent enumeration of the product. Quasi-shuffle and shuffle
    /// modes sum over pairs of increasing maps `[k] → [n]`, `[l] → [n]` whose
    /// images cover `[n]`; explicit mode sums over pairs of weak compositions.
    pub fn surjection_product_oracle(&self, w: &Word, w2: &Word) -> Result<TensorElem> {
        let (k, l) = (w.len(), w2.len());
        if k == 0 || l == 0 {
            return Ok(TensorElem::basis(w.concat(w2)));
        }
        match &self.mode {
            Mode::Shuffle | Mode::QuasiShuffle(_) => {
                let merge = self.letter_product();
                let mut out = TensorElem::zero();
                let lo = if merge.is_some() { k.max(l) } else { k + l };
                for n in lo..=k + l {
                    for a in subsets_of_size(n, k) {
                        for b in subsets_of_size(n, l) {
                            if a | b != (1u64 << n) - 1 {
                                continue;
                            }
                            let (mut ia, mut ib) = (0, 0);
                            let mut acc = TensorElem::basis(Word::empty());
                            for p in 0..n {
                                let in_a = a >> p & 1 == 1;
                                let in_b = b >> p & 1 == 1;
                                let slot = match (in_a, in_b) {
                                    (true, true) => {
                                        let v = merge.unwrap().mul(w.0[ia], w2.0[ib]);
                                        ia += 1;
                                        ib += 1;
                                        v
                                    }
                                    (true, false) => {
                                        ia += 1;
                                        LinComb::basis(w.0[ia - 1])
                                    }
                                    _ => {
                                        ib += 1;
                                        LinComb::basis(w2.0[ib - 1])
                                    }
                                };
                                acc = append_letters(&acc, &slot);
                            }
                            out += acc;
                        }
                    }
                }
                Ok(out)
            }
            Mode::Explicit(_) => {
                let mut out = TensorElem::zero();
                for blocks in 1..=k + l {
                    for ca in crate::combinat::weak_compositions(k, blocks) {
                        'pairs: for cb in crate::combinat::weak_compositions(l, blocks) {
                            let (mut ia, mut ib) = (0, 0);
                            let mut acc = TensorElem::basis(Word::empty());
                            for (&pa, &pb) in ca.iter().zip(&cb) {
                                if pa == 0 && pb == 0 {
                                    continue 'pairs;
                                }
                                let v =
                                    self.bracket(&w.slice(ia, ia + pa), &w2.slice(ib, ib + pb))?;
                                ia += pa;
                                ib += pb;
                                acc = append_letters(&acc, &v);
                                if acc.is_zero() {
                                    continue 'pairs;
                                }
                            }
                            out += acc;
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    /// Quasi-shuffle by the classical three-term recursion on first letters;
    /// the merge term drops in shuffle mode.
    pub fn quasi_shuffle_recursive(&self, w: &Word, w2: &Word) -> Result<TensorElem> {
        let merge = match &self.mode {
            Mode::Shuffle => None,
            Mode::QuasiShuffle(p) => Some(p),
            Mode::Explicit(_) => {
                return Err(Error::Invalid(
                    "the quasi-shuffle recursion needs a shuffle or quasi-shuffle structure".into(),
                ))
            }
        };
        fn rec(
            a: &[Letter],
            b: &[Letter],
            merge: Option<&LetterProduct>,
            memo: &mut HashMap<(usize, usize), TensorElem>,
        ) -> TensorElem {
            if a.is_empty() || b.is_empty() {
                let mut v = a.to_vec();
                v.extend_from_slice(b);
                return TensorElem::basis(Word(v));
            }
            if let Some(v) = memo.get(&(a.len(), b.len())) {
                return v.clone();
            }
            let mut out = prepend(&LinComb::basis(a[0]), &rec(&a[1..], b, merge, memo));
            out += prepend(&LinComb::basis(b[0]), &rec(a, &b[1..], merge, memo));
            if let Some(p) = merge {
                out += prepend(&p.mul(a[0], b[0]), &rec(&a[1..], &b[1..], merge, memo));
            }
            memo.insert((a.len(), b.len()), out.clone());
            out
        }
        Ok(rec(&w.0, &w2.0, merge, &mut HashMap::new()))
    }

    /// Bounded verification of the unit, associativity, commutativity and
    /// triviality conditions on all nonempty words with total length at most
    /// `budget`.
    pub fn check_axioms(&self, budget: usize) -> Result<AxiomReport> {
        if budget == 0 {
            return Err(Error::Invalid("length budget must be at least 1".into()));
        }
        let words = self.alphabet.words_up_to(budget);
        let empty = Word::empty();
        let unit = par::try_all(&words, |w| {
            let expect = if w.len() == 1 {
                LinComb::basis(w.0[0])
            } else {
                LinComb::zero()
            };
            Ok(self.bracket(w, &empty)? == expect && self.bracket(&empty, w)? == expect)
        })?;
        let pairs: Vec<(Word, Word)> = words
            .iter()
            .flat_map(|a| {
                words
                    .iter()
                    .filter(move |b| a.len() + b.len() <= budget)
                    .map(move |b| (a.clone(), b.clone()))
            })
            .collect();
        let comm = par::try_all(&pairs, |(a, b)| {
            Ok(self.bracket(a, b)? == self.bracket(b, a)?)
        })?;
        let trivial = par::try_all(&pairs, |(a, b)| Ok(self.bracket(a, b)?.is_zero()))?;
        let triples: Vec<(Word, Word, Word)> = pairs
            .iter()
            .flat_map(|(a, b)| {
                words
                    .iter()
                    .filter(move |c| a.len() + b.len() + c.len() <= budget)
                    .map(move |c| (a.clone(), b.clone(), c.clone()))
            })
            .collect();
        let assoc = par::try_all(&triples, |(a, b, c)| {
            let left =
                self.bracket_lin(&TensorElem::basis(a.clone()), &self.product_words(b, c)?)?;
            let right =
                self.bracket_lin(&self.product_words(a, b)?, &TensorElem::basis(c.clone()))?;
            Ok(left == right)
        })?;
        Ok(AxiomReport {
            unit,
            assoc,
            comm,
            trivial,
        })
    }

    /// Parses a bracket table file.
    ///
    /// ```text
    /// mode: qshuffle
    /// alphabet: a:1,b:2
    /// a * a = b
    /// a * b = 0
    /// ```
    ///
    /// Explicit mode uses lines `w , w' -> lincomb` and accepts an optional
    /// `bound: N` header. `#` starts a comment.
    pub fn parse_table(text: &str) -> Result<Self> {
        let mut mode_name = None;
        let mut alphabet = None;
        let mut bound = None;
        let mut body = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let header = line
                .split_once(':')
                .filter(|(k, _)| matches!(k.trim(), "mode" | "alphabet" | "bound"));
            match header {
                Some((k, v)) => match k.trim() {
                    "mode" => mode_name = Some(v.trim().to_string()),
                    "alphabet" => alphabet = Some(Alphabet::parse(v)?),
                    _ => {
                        bound =
                            Some(v.trim().parse::<usize>().map_err(|_| {
                                parse_err(format!("line {}: bad bound", lineno + 1))
                            })?)
                    }
                },
                None => body.push((lineno + 1, line.to_string())),
            }
        }
        let alphabet = alphabet.ok_or_else(|| parse_err("missing `alphabet:` header"))?;
        let mode_name = mode_name.ok_or_else(|| parse_err("missing `mode:` header"))?;
        let letters = |s: &str| -> Result<LinComb<Letter>> {
            let x = alphabet.parse_elem(s)?;
            x.iter()
                .map(|(w, c)| {
                    if w.len() == 1 {
                        Ok((w.0[0], c.clone()))
                    } else {
                        Err(parse_err(format!("`{s}` is not a combination of letters")))
                    }
                })
                .collect()
        };
        let parse_value = |s: &str| -> Result<LinComb<Letter>> {
            if s.trim() == "0" {
                Ok(LinComb::zero())
            } else {
                letters(s)
            }
        };
        let mode = match mode_name.as_str() {
            "shuffle" => {
                if let Some((n, _)) = body.first() {
                    return Err(parse_err(format!(
                        "line {n}: shuffle mode takes no entries"
                    )));
                }
                Mode::Shuffle
            }
            "qshuffle" => {
                let mut entries = Vec::new();
                for (n, line) in &body {
                    let (lhs, rhs) = line
                        .split_once('=')
                        .ok_or_else(|| parse_err(format!("line {n}: expected `a * b = c`")))?;
                    let (a, b) = lhs
                        .split_once('*')
                        .ok_or_else(|| parse_err(format!("line {n}: expected `a * b = c`")))?;
                    entries.push((
                        (alphabet.lookup(a.trim())?, alphabet.lookup(b.trim())?),
                        parse_value(rhs)?,
                    ));
                }
                Mode::QuasiShuffle(LetterProduct::new(alphabet.len(), entries)?)
            }
            "explicit" => {
                let mut table = BracketTable::new(bound);
                for (n, line) in &body {
                    let (lhs, rhs) = line.split_once("->").ok_or_else(|| {
                        parse_err(format!("line {n}: expected `w , w' -> value`"))
                    })?;
                    let (a, b) = lhs.split_once(',').ok_or_else(|| {
                        parse_err(format!("line {n}: expected `w , w' -> value`"))
                    })?;
                    table.insert(
                        alphabet.parse_word(a)?,
                        alphabet.parse_word(b)?,
                        parse_value(rhs)?,
                    )?;
                }
                Mode::Explicit(table)
            }
            other => return Err(parse_err(format!("unknown mode `{other}`"))),
        };
        Ok(BInftyStructure::new(alphabet, mode))
    }

    /// Text form accepted by [`BInftyStructure::parse_table`].
    pub fn to_table_text(&self) -> String {
        let al = &self.alphabet;
        let mut out = String::new();
        let fmt_val = |v: &LinComb<Letter>| al.fmt_letters(v);
        match &self.mode {
            Mode::Shuffle => out.push_str("mode: shuffle\n"),
            Mode::QuasiShuffle(_) => out.push_str("mode: qshuffle\n"),
            Mode::Explicit(_) => out.push_str("mode: explicit\n"),
        }
        out.push_str(&format!("alphabet: {}\n", al.declaration()));
        match &self.mode {
            Mode::Shuffle => {}
            Mode::QuasiShuffle(p) => {
                for ((a, b), v) in &p.table {
                    out.push_str(&format!(
                        "{} * {} = {}\n",
                        al.name(*a),
                        al.name(*b),
                        fmt_val(v)
                    ));
                }
            }
            Mode::Explicit(t) => {
                if let Some(b) = t.bound {
                    out.push_str(&format!("bound: {b}\n"));
                }
                for ((a, b), v) in &t.entries {
                    out.push_str(&format!(
                        "{} , {} -> {}\n",
                        al.fmt_word(a),
                        al.fmt_word(b),
                        fmt_val(v)
                    ));
                }
            }
        }
        out
    }
}

fn subsets_of_size(n: usize, k: usize) -> Vec<u64> {
    (0u64..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .collect()
}

fn prepend(head: &LinComb<Letter>, tail: &TensorElem) -> TensorElem {
    let mut out = TensorElem::zero();
    for (l, a) in head {
        for (w, b) in tail {
            let mut v = Vec::with_capacity(w.len() + 1);
            v.push(*l);
            v.extend_from_slice(&w.0);
            out.add_term(Word(v), a * b);
        }
    }
    out
}

fn append_letters(x: &TensorElem, tail: &LinComb<Letter>) -> TensorElem {
    let mut out = TensorElem::zero();
    for (w, a) in x {
        for (l, b) in tail {
            let mut v = w.0.clone();
            v.push(*l);
            out.add_term(Word(v), a * b);
        }
    }
    out
}

/// Ready-made structures used by tests, benches and the CLI.
pub mod fixtures {
    use super::*;
    use crate::words::ProjectionTable;

    /// Letters `t:1, z:2` with `⟨t,t⟩ = 2z` and every other bracket zero.
    pub fn flalg() -> BInftyStructure {
        let al = Alphabet::parse("t:1,z:2").unwrap();
        let mut table = BracketTable::new(None);
        table
            .insert(
                Word::letter(0),
                Word::letter(0),
                LinComb::term(1, Scalar::from_int(2)),
            )
            .unwrap();
        BInftyStructure::new(al, Mode::Explicit(table))
    }

    /// The shuffle structure on the dual letters `x:1, y:2`.
    pub fn flalg_dual() -> BInftyStructure {
        BInftyStructure::shuffle(Alphabet::parse("x:1,y:2").unwrap())
    }

    /// `π_W`: letters map to letters of the same index, `x.x ↦ z`, all other
    /// words of length at least 2 map to zero.
    pub fn flalg_projection() -> ProjectionTable {
        let mut p = ProjectionTable::canonical();
        p.insert(Word(vec![0, 0]), LinComb::basis(1));
        p
    }

    /// Quasi-shuffle over `z1..zn` with `deg z_k = k` and `z_a z_b = z_{a+b}`,
    /// truncated to zero past `n`.
    pub fn positive_integers(n: usize) -> BInftyStructure {
        let al = Alphabet::new((1..=n).map(|k| (format!("z{k}"), k as u32))).unwrap();
        let mut entries = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let s = a + b + 2;
                let v = if s <= n {
                    LinComb::basis((s - 1) as Letter)
                } else {
                    LinComb::zero()
                };
                entries.push(((a as Letter, b as Letter), v));
            }
        }
        BInftyStructure::new(
            al,
            Mode::QuasiShuffle(LetterProduct::new(n, entries).unwrap()),
        )
    }

    /// Quasi-shuffle over the cyclic group `Z/m` written `g0..g{m-1}`.
    pub fn cyclic_group(m: usize) -> BInftyStructure {
        let al = Alphabet::new((0..m).map(|k| (format!("g{k}"), 1))).unwrap();
        let mut entries = Vec::new();
        for a in 0..m {
            for b in 0..m {
                entries.push((
                    (a as Letter, b as Letter),
                    LinComb::basis(((a + b) % m) as Letter),
                ));
            }
        }
        BInftyStructure::new(
            al,
            Mode::QuasiShuffle(LetterProduct::new(m, entries).unwrap()),
        )
    }

    /// A degree-preserving explicit bracket on `a:1, b:2, c:3` whose five
    /// free coefficients are drawn from `coeff` until the associativity check
    /// passes with the given budget.
    pub fn random_explicit<F: FnMut() -> i64>(mut coeff: F, budget: usize) -> BInftyStructure {
        let al = Alphabet::parse("a:1,b:2,c:3").unwrap();
        let (a, b, c) = (0, 1, 2);
        let slots = [
            (Word(vec![a]), Word(vec![a]), b),
            (Word(vec![a]), Word(vec![b]), c),
            (Word(vec![b]), Word(vec![a]), c),
            (Word(vec![a]), Word(vec![a, a]), c),
            (Word(vec![a, a]), Word(vec![a]), c),
        ];
        loop {
            let mut table = BracketTable::new(None);
            for (w, w2, target) in &slots {
                let k = coeff();
                table
                    .insert(
                        w.clone(),
                        w2.clone(),
                        LinComb::term(*target, Scalar::from_int(k)),
                    )
                    .unwrap();
            }
            let s = BInftyStructure::new(al.clone(), Mode::Explicit(table));
            if s.check_axioms(budget).map(|r| r.assoc).unwrap_or(false) {
                return s;
            }
        }
    }
}
