//! Words over generator alphabets with exact normal forms for graph products
//! of infinite cyclic groups.
//!
//! A [`GroupSpec`] is a generator list plus a commutation graph. The empty
//! graph gives a free group, the complete graph a free abelian group, and a
//! single edge gives groups like `<a, b, c | [a,b] = 1>`. Every word has a
//! canonical normal form (shortest, then shortlex among representatives), so
//! equality in the group is sequence equality of normal forms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupSpecError {
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}` in commuting pair")]
    UnknownGenerator(String),
    #[error("generator `{0}` cannot commute with itself")]
    SelfPair(String),
    #[error("at most 64 generators are supported, got {0}")]
    TooManyGenerators(usize),
}

/// Syntax error in a word literal. Columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: expected {expected}, found {found}")]
pub struct WordSyntaxError {
    pub column: usize,
    pub expected: String,
    pub found: String,
}

/// A named generator. Comparison is by name.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(String);

impl Generator {
    pub fn new(name: impl Into<String>) -> Self {
        Generator(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A syllable: a generator with a nonzero exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    gen: Generator,
    exp: BigInt,
}

impl Letter {
    /// Returns `None` when the exponent is zero.
    pub fn new(gen: Generator, exp: impl Into<BigInt>) -> Option<Self> {
        let exp = exp.into();
        if exp.is_zero() {
            None
        } else {
            Some(Letter { gen, exp })
        }
    }

    pub fn generator(&self) -> &Generator {
        &self.gen
    }

    pub fn exponent(&self) -> &BigInt {
        &self.exp
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == BigInt::from(1) {
            write!(f, "{}", self.gen)
        } else {
            write!(f, "{}^{}", self.gen, self.exp)
        }
    }
}

/// A word: an ordered sequence of syllables. The empty word is the identity.
///
/// Construction coalesces adjacent syllables of the same generator, so a
/// `Word` is canonical as an element of the free product of infinite cyclic
/// groups; group-level normal forms additionally need a [`GroupSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// Single-syllable word `gen^exp`; identity when `exp` is zero.
    pub fn syllable(gen: Generator, exp: impl Into<BigInt>) -> Self {
        match Letter::new(gen, exp) {
            Some(l) => Word { letters: vec![l] },
            None => Word::identity(),
        }
    }

    pub fn generator(gen: Generator) -> Self {
        Word::syllable(gen, 1)
    }

    /// Builds a word from syllables, merging adjacent same-generator letters
    /// and dropping zero exponents.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match out.last_mut() {
                Some(last) if last.gen == l.gen => {
                    last.exp += &l.exp;
                    if last.exp.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push(l),
            }
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of syllables.
    pub fn syllable_count(&self) -> usize {
        self.letters.len()
    }

    /// Total letter length: the sum of absolute exponents.
    pub fn weight(&self) -> BigUint {
        self.letters
            .iter()
            .map(|l| l.exp.magnitude().clone())
            .sum()
    }

    /// Reversed sequence with negated exponents.
    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    gen: l.gen.clone(),
                    exp: -&l.exp,
                })
                .collect(),
        }
    }

    /// Free-monoid concatenation (adjacent same-generator syllables merge).
    pub fn concat(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(other.letters.iter()).cloned())
    }

    /// `self` repeated `exp` times (inverted when negative).
    pub fn pow(&self, exp: i64) -> Word {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..exp.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Parses the word literal syntax: whitespace-separated `name`, `name^k`
    /// (nonzero integer `k`), commutator sugar `[u,v]`, and `1` for the
    /// identity.
    pub fn parse(text: &str) -> Result<Word, WordSyntaxError> {
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0usize;
        let word = parse_word_until(&chars, &mut pos, None)?;
        if pos < chars.len() {
            return Err(WordSyntaxError {
                column: pos + 1,
                expected: "generator, `[`, `1`, or end of word".into(),
                found: format!("`{}`", chars[pos]),
            });
        }
        Ok(word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while *pos < chars.len() && chars[*pos].is_whitespace() {
        *pos += 1;
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn parse_ident(chars: &[char], pos: &mut usize) -> String {
    let start = *pos;
    while *pos < chars.len() && is_ident_char(chars[*pos]) {
        *pos += 1;
    }
    chars[start..*pos].iter().collect()
}

fn parse_int(chars: &[char], pos: &mut usize) -> Result<BigInt, WordSyntaxError> {
    let start = *pos;
    if *pos < chars.len() && (chars[*pos] == '-' || chars[*pos] == '+') {
        *pos += 1;
    }
    let digits_start = *pos;
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if *pos == digits_start {
        return Err(WordSyntaxError {
            column: *pos + 1,
            expected: "integer exponent".into(),
            found: found_at(chars, *pos),
        });
    }
    let text: String = chars[start..*pos].iter().collect();
    let value: BigInt = text.parse().expect("digits parse as integer");
    if value.is_zero() {
        return Err(WordSyntaxError {
            column: start + 1,
            expected: "nonzero exponent".into(),
            found: "`0`".into(),
        });
    }
    Ok(value)
}

fn found_at(chars: &[char], pos: usize) -> String {
    match chars.get(pos) {
        Some(c) => format!("`{c}`"),
        None => "end of input".into(),
    }
}

/// Parses tokens until `stop` (or end of input when `stop` is `None`),
/// leaving the stop character unconsumed.
fn parse_word_until(
    chars: &[char],
    pos: &mut usize,
    stop: Option<&[char]>,
) -> Result<Word, WordSyntaxError> {
    let mut letters: Vec<Letter> = Vec::new();
    loop {
        skip_ws(chars, pos);
        if *pos >= chars.len() {
            break;
        }
        let c = chars[*pos];
        if let Some(stops) = stop {
            if stops.contains(&c) {
                break;
            }
        }
        if c == '1' {
            *pos += 1;
            if *pos < chars.len() && is_ident_char(chars[*pos]) {
                return Err(WordSyntaxError {
                    column: *pos + 1,
                    expected: "whitespace after `1`".into(),
                    found: found_at(chars, *pos),
                });
            }
            continue;
        }
        if c == '[' {
            *pos += 1;
            let u = parse_word_until(chars, pos, Some(&[',', ']']))?;
            skip_ws(chars, pos);
            if *pos >= chars.len() || chars[*pos] != ',' {
                return Err(WordSyntaxError {
                    column: *pos + 1,
                    expected: "`,` in commutator".into(),
                    found: found_at(chars, *pos),
                });
            }
            *pos += 1;
            let v = parse_word_until(chars, pos, Some(&[']']))?;
            skip_ws(chars, pos);
            if *pos >= chars.len() || chars[*pos] != ']' {
                return Err(WordSyntaxError {
                    column: *pos + 1,
                    expected: "`]` closing commutator".into(),
                    found: found_at(chars, *pos),
                });
            }
            *pos += 1;
            // [u,v] = u v u^-1 v^-1
            let expanded = u.concat(&v).concat(&u.inverse()).concat(&v.inverse());
            letters.extend(expanded.letters);
            continue;
        }
        if is_ident_start(c) {
            let name = parse_ident(chars, pos);
            let exp = if *pos < chars.len() && chars[*pos] == '^' {
                *pos += 1;
                parse_int(chars, pos)?
            } else {
                BigInt::from(1)
            };
            letters.push(Letter::new(Generator::new(name), exp).expect("nonzero exponent"));
            continue;
        }
        return Err(WordSyntaxError {
            column: *pos + 1,
            expected: "generator, `[`, or `1`".into(),
            found: format!("`{c}`"),
        });
    }
    Ok(Word::from_letters(letters))
}

/// A generator alphabet with a commutation graph, defining a graph product of
/// infinite cyclic groups. Shortlex normal forms use declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    generators: Vec<Generator>,
    index: BTreeMap<String, usize>,
    commuting: Vec<u64>,
}

impl GroupSpec {
    pub fn new(names: &[&str], commuting_pairs: &[(&str, &str)]) -> Result<Self, GroupSpecError> {
        if names.len() > 64 {
            return Err(GroupSpecError::TooManyGenerators(names.len()));
        }
        let mut index = BTreeMap::new();
        let mut generators = Vec::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.to_string(), i).is_some() {
                return Err(GroupSpecError::DuplicateGenerator(name.to_string()));
            }
            generators.push(Generator::new(*name));
        }
        let mut commuting = vec![0u64; names.len()];
        for (a, b) in commuting_pairs {
            let &i = index
                .get(*a)
                .ok_or_else(|| GroupSpecError::UnknownGenerator(a.to_string()))?;
            let &j = index
                .get(*b)
                .ok_or_else(|| GroupSpecError::UnknownGenerator(b.to_string()))?;
            if i == j {
                return Err(GroupSpecError::SelfPair(a.to_string()));
            }
            commuting[i] |= 1 << j;
            commuting[j] |= 1 << i;
        }
        Ok(GroupSpec {
            generators,
            index,
            commuting,
        })
    }

    /// Free group: empty commutation graph.
    pub fn free(names: &[&str]) -> Result<Self, GroupSpecError> {
        GroupSpec::new(names, &[])
    }

    /// Free group of rank `n` with generators `x1 .. xn`.
    pub fn free_of_rank(n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        GroupSpec::free(&refs).expect("generated names are distinct")
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn index_of(&self, gen: &Generator) -> Option<usize> {
        self.index.get(gen.as_str()).copied()
    }

    pub fn contains(&self, gen: &Generator) -> bool {
        self.index.contains_key(gen.as_str())
    }

    pub fn commutes(&self, i: usize, j: usize) -> bool {
        self.commuting[i] & (1 << j) != 0
    }

    /// Unordered commuting pairs by generator index, `i < j`.
    pub fn commuting_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for i in 0..self.rank() {
            for j in (i + 1)..self.rank() {
                if self.commutes(i, j) {
                    pairs.push((i, j));
                }
            }
        }
        pairs
    }

    /// Same generators in the same order and the same commutation graph.
    pub fn same_alphabet(&self, other: &GroupSpec) -> bool {
        self == other
    }

    fn resolve(&self, w: &Word) -> Result<Vec<(usize, BigInt)>, WordError> {
        w.letters
            .iter()
            .map(|l| {
                self.index_of(&l.gen)
                    .map(|i| (i, l.exp.clone()))
                    .ok_or_else(|| WordError::UnknownGenerator(l.gen.as_str().to_string()))
            })
            .collect()
    }

    fn unresolve(&self, letters: Vec<(usize, BigInt)>) -> Word {
        Word {
            letters: letters
                .into_iter()
                .map(|(i, exp)| Letter {
                    gen: self.generators[i].clone(),
                    exp,
                })
                .collect(),
        }
    }

    /// Bit `h` set when generator `h` blocks `g` from moving past it: the
    /// same generator, or one that does not commute with it.
    fn conflict_mask(&self, g: usize) -> u64 {
        let all = if self.rank() == 64 {
            u64::MAX
        } else {
            (1u64 << self.rank()) - 1
        };
        (!self.commuting[g] & all) | (1 << g)
    }

    /// Reduces `letters` in place: merges every pair of same-generator
    /// syllables separated only by syllables commuting with that generator.
    /// The result is a geodesic representative of the same group element.
    fn reduce(&self, letters: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
        let mut stack: Vec<(usize, BigInt)> = Vec::with_capacity(letters.len());
        for (g, e) in letters {
            let mut merged = false;
            let mut i = stack.len();
            while i > 0 {
                i -= 1;
                let h = stack[i].0;
                if h == g {
                    stack[i].1 += &e;
                    if stack[i].1.is_zero() {
                        stack.remove(i);
                    }
                    merged = true;
                    break;
                }
                if !self.commutes(h, g) {
                    break;
                }
            }
            if !merged {
                stack.push((g, e));
            }
        }
        stack
    }

    /// Shortlex-least shuffle representative of a reduced syllable sequence.
    fn shortlex_least(&self, mut rest: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
        let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            // A position is available when every earlier syllable commutes
            // with it; the least available letter comes next.
            let mut seen: u64 = 0;
            let mut best: Option<usize> = None;
            for (p, (g, e)) in rest.iter().enumerate() {
                if seen & self.conflict_mask(*g) == 0 {
                    let better = match best {
                        None => true,
                        Some(b) => (*g, e) < (rest[b].0, &rest[b].1),
                    };
                    if better {
                        best = Some(p);
                    }
                }
                seen |= 1 << *g;
            }
            let b = best.expect("position 0 is always available");
            out.push(rest.remove(b));
        }
        out
    }

    /// Canonical normal form: the shortest word in the shuffle-equivalence
    /// class, shortlex-minimal among the shortest. Two words are equal in the
    /// group iff their normal forms are identical sequences.
    pub fn normal_form(&self, w: &Word) -> Result<Word, WordError> {
        let letters = self.resolve(w)?;
        let reduced = self.reduce(letters);
        Ok(self.unresolve(self.shortlex_least(reduced)))
    }

    /// Normal form of the concatenation `u v`.
    pub fn multiply(&self, u: &Word, v: &Word) -> Result<Word, WordError> {
        self.normal_form(&u.concat(v))
    }

    /// Exponent-sum vector indexed by declaration order.
    pub fn abelianize_word(&self, w: &Word) -> Result<Vec<BigInt>, WordError> {
        let mut out = vec![BigInt::zero(); self.rank()];
        for (g, e) in self.resolve(w)? {
            out[g] += e;
        }
        Ok(out)
    }

    /// Total order on words: weight, then syllable-wise by (generator
    /// declaration index, exponent).
    pub fn compare_words(&self, u: &Word, v: &Word) -> Result<std::cmp::Ordering, WordError> {
        let wu = u.weight();
        let wv = v.weight();
        if wu != wv {
            return Ok(wu.cmp(&wv));
        }
        let lu = self.resolve(u)?;
        let lv = self.resolve(v)?;
        Ok(lu.cmp(&lv))
    }

    /// Writes `w = conjugator^-1 * core * conjugator` with `core` of minimal
    /// length among conjugates reachable by peeling commuting-aware
    /// end-cancellations.
    pub fn cyclically_reduce(&self, w: &Word) -> Result<(Word, Word), WordError> {
        let mut core = self.normal_form(w)?;
        let mut conj = Word::identity();
        'peel: loop {
            let letters = self.resolve(&core)?;
            let weight = core.weight();
            let n = letters.len();
            // Syllables movable to the front, in order.
            let mut moves: Vec<Word> = Vec::new();
            let mut seen: u64 = 0;
            for (g, e) in &letters {
                if seen & self.conflict_mask(*g) == 0 {
                    moves.push(self.unresolve(vec![(*g, e.clone())]));
                }
                seen |= 1 << *g;
            }
            // Syllables movable to the end; conjugating by the inverse peels
            // from the back.
            seen = 0;
            for idx in (0..n).rev() {
                let (g, e) = &letters[idx];
                if seen & self.conflict_mask(*g) == 0 {
                    moves.push(self.unresolve(vec![(*g, -e.clone())]));
                }
                seen |= 1 << *g;
            }
            for f in moves {
                let candidate =
                    self.normal_form(&f.inverse().concat(&core).concat(&f))?;
                if candidate.weight() < weight {
                    conj = self.multiply(&f.inverse(), &conj)?;
                    core = candidate;
                    continue 'peel;
                }
            }
            break;
        }
        Ok((core, conj))
    }

    /// All normal forms of weight at most `max_weight`, ordered by weight
    /// then shortlex.
    pub fn normal_forms_up_to_weight(&self, max_weight: usize) -> Vec<Word> {
        let mut all: Vec<Word> = vec![Word::identity()];
        let mut level: Vec<Word> = vec![Word::identity()];
        for k in 1..=max_weight {
            let mut next: Vec<Word> = Vec::new();
            for w in &level {
                for g in &self.generators {
                    for exp in [1i64, -1] {
                        let cand = self
                            .multiply(w, &Word::syllable(g.clone(), exp))
                            .expect("generators belong to spec");
                        if cand.weight() == BigUint::from(k) && !next.contains(&cand) {
                            next.push(cand);
                        }
                    }
                }
            }
            next.sort_by(|a, b| self.compare_words(a, b).expect("words over spec"));
            all.extend(next.iter().cloned());
            level = next;
        }
        all
    }
}
