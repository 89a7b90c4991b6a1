//! Finitely presented groups as data: parsing, serialization, and
//! deterministic Tietze simplification.
//!
//! The `.grp` file format is line-oriented UTF-8:
//!
//! ```text
//! group Q8
//! gens t s
//! rel t^2 s^-2          # a relator
//! rel t^2 = [t,s] t^2   # or an equation u = v, stored as u v^-1
//! ```
//!
//! `#` starts a comment; blank lines are ignored. Relators are stored freely
//! reduced over the generators.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::words::{Generator, GroupSpec, Letter, Word, WordSyntaxError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("line {line}, column {column}: expected {expected}, found {found}")]
    Parse {
        line: usize,
        column: usize,
        expected: String,
        found: String,
    },
    #[error("line {line}: unknown generator `{name}`")]
    UnknownGenerator { line: usize, name: String },
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TietzeError {
    #[error("generator `{0}` is not in the presentation")]
    UnknownGenerator(String),
    #[error("no relator expresses `{0}` as a word in the other generators")]
    NotEliminable(String),
}

impl PresentationError {
    fn parse(line: usize, expected: impl Into<String>, found: impl Into<String>) -> Self {
        PresentationError::Parse {
            line,
            column: 1,
            expected: expected.into(),
            found: found.into(),
        }
    }

    fn from_word(line: usize, prefix_columns: usize, err: WordSyntaxError) -> Self {
        PresentationError::Parse {
            line,
            column: prefix_columns + err.column,
            expected: err.expected,
            found: err.found,
        }
    }
}

/// A finite presentation: named generators and relator words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Builds a presentation, freely reducing the relators. Every relator
    /// must use only declared generators.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<Generator>,
        relators: Vec<Word>,
    ) -> Result<Self, PresentationError> {
        let name = name.into();
        let names: Vec<&str> = generators.iter().map(|g| g.as_str()).collect();
        {
            let mut sorted = names.clone();
            sorted.sort_unstable();
            for pair in sorted.windows(2) {
                if pair[0] == pair[1] {
                    return Err(PresentationError::DuplicateGenerator(pair[0].to_string()));
                }
            }
        }
        let free = GroupSpec::free(&names).expect("duplicates checked above");
        let relators = relators
            .iter()
            .map(|r| {
                free.normal_form(r).map_err(|e| match e {
                    crate::words::WordError::UnknownGenerator(name) => {
                        PresentationError::UnknownGenerator { line: 0, name }
                    }
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Presentation {
            name,
            generators,
            relators,
        })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// The free group on this presentation's generators.
    pub fn free_spec(&self) -> GroupSpec {
        let names: Vec<&str> = self.generators.iter().map(|g| g.as_str()).collect();
        GroupSpec::free(&names).expect("generators are unique")
    }

    /// Interprets the presentation as a graph product of infinite cyclic
    /// groups: every relator must be a commutator `[x, y]` of two distinct
    /// generators (up to cyclic rotation and inversion). Returns the spec
    /// whose commuting pairs are those commutators.
    pub fn raag_spec(&self) -> Result<GroupSpec, String> {
        let names: Vec<&str> = self.generators.iter().map(|g| g.as_str()).collect();
        let mut pairs: Vec<(&str, &str)> = Vec::new();
        for r in &self.relators {
            match commutator_pair(r) {
                Some((i, j)) => {
                    let a = self.generators[..].iter().position(|g| g == &i).unwrap();
                    let b = self.generators[..].iter().position(|g| g == &j).unwrap();
                    pairs.push((names[a], names[b]));
                }
                None => {
                    return Err(format!(
                        "relator `{r}` is not a commutator of two generators; \
                         the group is not presented as a graph product"
                    ))
                }
            }
        }
        GroupSpec::new(&names, &pairs).map_err(|e| e.to_string())
    }

    /// Parses the `.grp` format.
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let mut name: Option<String> = None;
        let mut generators: Vec<Generator> = Vec::new();
        let mut seen_gens = false;
        let mut relators: Vec<Word> = Vec::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = match raw_line.find('#') {
                Some(p) => &raw_line[..p],
                None => raw_line,
            };
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let (keyword, rest) = match trimmed.split_once(char::is_whitespace) {
                Some((k, r)) => (k, r.trim()),
                None => (trimmed, ""),
            };
            match keyword {
                "group" => {
                    if name.is_some() {
                        return Err(PresentationError::parse(
                            lineno,
                            "a single `group` line",
                            "`group` repeated",
                        ));
                    }
                    if rest.is_empty() || !is_ident(rest) {
                        return Err(PresentationError::parse(
                            lineno,
                            "group name identifier",
                            format!("`{rest}`"),
                        ));
                    }
                    name = Some(rest.to_string());
                }
                "gens" => {
                    if seen_gens {
                        return Err(PresentationError::parse(
                            lineno,
                            "a single `gens` line",
                            "`gens` repeated",
                        ));
                    }
                    seen_gens = true;
                    for tok in rest.split_whitespace() {
                        if !is_ident(tok) {
                            return Err(PresentationError::parse(
                                lineno,
                                "generator identifier",
                                format!("`{tok}`"),
                            ));
                        }
                        generators.push(Generator::new(tok));
                    }
                    if generators.is_empty() {
                        return Err(PresentationError::parse(
                            lineno,
                            "at least one generator",
                            "empty `gens` line",
                        ));
                    }
                }
                "rel" => {
                    if !seen_gens {
                        return Err(PresentationError::parse(
                            lineno,
                            "`gens` before `rel`",
                            "`rel`",
                        ));
                    }
                    let prefix = trimmed.len() - rest.len();
                    let word = match rest.split_once('=') {
                        Some((lhs, rhs)) => {
                            let u = Word::parse(lhs)
                                .map_err(|e| PresentationError::from_word(lineno, prefix, e))?;
                            let v = Word::parse(rhs).map_err(|e| {
                                PresentationError::from_word(
                                    lineno,
                                    prefix + lhs.len() + 1,
                                    e,
                                )
                            })?;
                            u.concat(&v.inverse())
                        }
                        None => Word::parse(rest)
                            .map_err(|e| PresentationError::from_word(lineno, prefix, e))?,
                    };
                    for l in word.letters() {
                        if !generators.contains(l.generator()) {
                            return Err(PresentationError::UnknownGenerator {
                                line: lineno,
                                name: l.generator().as_str().to_string(),
                            });
                        }
                    }
                    relators.push(word);
                }
                other => {
                    return Err(PresentationError::parse(
                        lineno,
                        "`group`, `gens`, or `rel`",
                        format!("`{other}`"),
                    ));
                }
            }
        }
        let name = name.ok_or_else(|| {
            PresentationError::parse(1, "`group <name>` line", "end of input")
        })?;
        if !seen_gens {
            return Err(PresentationError::parse(1, "`gens` line", "end of input"));
        }
        Presentation::new(name, generators, relators)
    }

    /// Serializes to the `.grp` format; `parse(serialize(p)) == p`.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("group {}\n", self.name));
        out.push_str("gens");
        for g in &self.generators {
            out.push(' ');
            out.push_str(g.as_str());
        }
        out.push('\n');
        for r in &self.relators {
            out.push_str(&format!("rel {r}\n"));
        }
        out
    }

    /// Eliminates `gen`: some relator, up to cyclic rotation and inversion,
    /// must have the form `gen^(+-1) w` with `w` not containing `gen`. The
    /// returned presentation omits `gen` and substitutes its expression into
    /// every other relator.
    pub fn tietze_eliminate(&self, gen: &Generator) -> Result<Presentation, TietzeError> {
        if !self.generators.contains(gen) {
            return Err(TietzeError::UnknownGenerator(gen.as_str().to_string()));
        }
        let (idx, replacement) = self
            .relators
            .iter()
            .enumerate()
            .find_map(|(i, r)| eliminable_expression(r, gen).map(|w| (i, w)))
            .ok_or_else(|| TietzeError::NotEliminable(gen.as_str().to_string()))?;
        let generators: Vec<Generator> = self
            .generators
            .iter()
            .filter(|g| *g != gen)
            .cloned()
            .collect();
        let relators: Vec<Word> = self
            .relators
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, r)| substitute(r, gen, &replacement))
            .collect();
        Presentation::new(self.name.clone(), generators, relators)
            .map_err(|e| unreachable_presentation_error(e))
    }

    /// Deterministic simplification: drop trivial and duplicate relators
    /// (up to cyclic rotation and inversion), then greedily eliminate
    /// generators via the shortest eliminable relator, to a fixpoint. The
    /// isomorphism type of the group is preserved.
    pub fn simplify(&self) -> Presentation {
        let mut current = self.cleaned();
        loop {
            // Candidate eliminations: (relator weight, relator position,
            // generator position) so ties break deterministically.
            let mut best: Option<(num_bigint::BigUint, usize, usize)> = None;
            for (ri, r) in current.relators.iter().enumerate() {
                for (gi, g) in current.generators.iter().enumerate() {
                    if eliminable_expression(r, g).is_some() {
                        let key = (r.weight(), ri, gi);
                        if best.as_ref().map_or(true, |b| key < *b) {
                            best = Some(key);
                        }
                    }
                }
            }
            match best {
                Some((_, _, gi)) => {
                    let gen = current.generators[gi].clone();
                    current = current
                        .tietze_eliminate(&gen)
                        .expect("candidate was checked eliminable")
                        .cleaned();
                }
                None => return current,
            }
        }
    }

    /// Drops empty relators and duplicates up to cyclic rotation and
    /// inversion, keeping first occurrences in order.
    fn cleaned(&self) -> Presentation {
        let mut kept: Vec<Word> = Vec::new();
        for r in &self.relators {
            if r.is_identity() {
                continue;
            }
            let duplicate = kept
                .iter()
                .any(|k| cyclic_variants(k).contains(r) || cyclic_variants(&k.inverse()).contains(r));
            if !duplicate {
                kept.push(r.clone());
            }
        }
        Presentation {
            name: self.name.clone(),
            generators: self.generators.clone(),
            relators: kept,
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< ")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, " | ")?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, " >")
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn unreachable_presentation_error(e: PresentationError) -> TietzeError {
    // Substitution cannot introduce unknown or duplicate generators.
    panic!("tietze elimination produced an invalid presentation: {e}");
}

/// When `r` is a commutator `x y x^-1 y^-1` of two distinct generators up to
/// rotation/inversion, returns the pair.
fn commutator_pair(r: &Word) -> Option<(Generator, Generator)> {
    let l = r.letters();
    if l.len() != 4 {
        return None;
    }
    let one = BigInt::one();
    let x = l[0].generator();
    let y = l[1].generator();
    if x == y {
        return None;
    }
    let exps: Vec<&BigInt> = l.iter().map(|t| t.exponent()).collect();
    let pattern_ok = l[2].generator() == x
        && l[3].generator() == y
        && *exps[0] == -(exps[2].clone())
        && *exps[1] == -(exps[3].clone())
        && (exps[0].magnitude() == one.magnitude())
        && (exps[1].magnitude() == one.magnitude());
    if pattern_ok {
        Some((x.clone(), y.clone()))
    } else {
        None
    }
}

/// All cyclic rotations of `r` at syllable granularity, freely reduced.
fn cyclic_variants(r: &Word) -> Vec<Word> {
    let letters = r.letters();
    let mut out = Vec::with_capacity(letters.len().max(1));
    if letters.is_empty() {
        out.push(Word::identity());
        return out;
    }
    for k in 0..letters.len() {
        let rotated: Vec<Letter> = letters[k..]
            .iter()
            .chain(letters[..k].iter())
            .cloned()
            .collect();
        out.push(Word::from_letters(rotated));
    }
    out
}

/// Splits a single occurrence of `gen^(+-1)` out of some rotation of `r` or
/// its inverse and solves for `gen`. Returns the replacement word.
fn eliminable_expression(r: &Word, gen: &Generator) -> Option<Word> {
    let occurrences: Vec<&Letter> = r
        .letters()
        .iter()
        .filter(|l| l.generator() == gen)
        .collect();
    if occurrences.len() != 1 || !occurrences[0].exponent().magnitude().is_one() {
        return None;
    }
    for rotation in cyclic_variants(r) {
        let letters = rotation.letters();
        if letters.is_empty() || letters[0].generator() != gen {
            continue;
        }
        let tail = Word::from_letters(letters[1..].iter().cloned());
        // gen^e tail = 1  =>  gen = tail^(-e)
        return Some(if letters[0].exponent().is_one() {
            tail.inverse()
        } else {
            tail
        });
    }
    None
}

/// Replaces every `gen^e` syllable by `replacement^e`, freely reduced.
fn substitute(r: &Word, gen: &Generator, replacement: &Word) -> Word {
    let mut out = Word::identity();
    for l in r.letters() {
        if l.generator() == gen {
            let e = l.exponent();
            let block = if e.is_negative() {
                replacement.inverse()
            } else {
                replacement.clone()
            };
            let count = e
                .magnitude()
                .try_into()
                .unwrap_or_else(|_| panic!("exponent too large to substitute: {e}"));
            for _ in 0..count {
                out = out.concat(&block);
            }
        } else {
            out = out.concat(&Word::from_letters([l.clone()]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn parse(text: &str) -> Presentation {
        Presentation::parse(text).unwrap()
    }

    #[test]
    fn parses_quaternion_presentation() {
        let p = parse("group Q8\ngens t s\nrel t^2 s^-2\nrel t s t s t^-2\n");
        assert_eq!(p.name, "Q8");
        assert_eq!(p.generators().len(), 2);
        assert_eq!(p.relators().len(), 2);
        assert_eq!(p.relators()[0], w("t^2 s^-2"));
    }

    #[test]
    fn parses_order_two_presentation() {
        let p = parse("group Z2\ngens t\nrel t^2\n");
        assert_eq!(p.generators().len(), 1);
        assert_eq!(p.relators(), &[w("t^2")]);
    }

    #[test]
    fn rejects_undeclared_generator_in_relator() {
        let err = Presentation::parse("group bad\ngens a\nrel b^2\n").unwrap_err();
        assert_eq!(
            err,
            PresentationError::UnknownGenerator {
                line: 3,
                name: "b".into()
            }
        );
    }

    #[test]
    fn equations_become_relators() {
        let p = parse("group G\ngens t s\nrel t^2 = s^2\n");
        assert_eq!(p.relators(), &[w("t^2 s^-2")]);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let p = parse("# header\ngroup G # name\n\ngens a b # two\nrel [a,b] # commutes\n");
        assert_eq!(p.relators(), &[w("a b a^-1 b^-1")]);
    }

    #[test]
    fn serialize_round_trips() {
        let p = parse("group G\ngens a b c\nrel [a,b]\nrel c^4 = a\n");
        let q = Presentation::parse(&p.serialize()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn relators_are_stored_freely_reduced() {
        let p = parse("group G\ngens a b\nrel a a^-1 b\n");
        assert_eq!(p.relators(), &[w("b")]);
    }

    #[test]
    fn eliminates_generator_with_single_occurrence() {
        // < a, b | b a^-2 >  eliminating b gives the free group < a | >.
        let p = parse("group G\ngens a b\nrel b a^-2\n");
        let q = p.tietze_eliminate(&Generator::new("b")).unwrap();
        assert_eq!(q.generators().len(), 1);
        assert!(q.relators().is_empty());
    }

    #[test]
    fn elimination_reduces_extension_presentation_to_cyclic() {
        // < l, tau_H | l^2, tau_H^2 l^-1, tau_H l tau_H^-1 l >
        let p = parse(
            "group RH\ngens l tau_H\nrel l^2\nrel tau_H^2 l^-1\nrel tau_H l tau_H^-1 l\n",
        );
        let q = p.tietze_eliminate(&Generator::new("l")).unwrap();
        assert_eq!(q.generators().len(), 1);
        assert_eq!(q.generators()[0].as_str(), "tau_H");
        for r in q.relators() {
            assert_eq!(r, &w("tau_H^4"));
        }
        let s = p.simplify();
        assert_eq!(s.generators().len(), 1);
        assert_eq!(s.relators(), &[w("tau_H^4")]);
    }

    #[test]
    fn square_relator_is_not_eliminable() {
        let p = parse("group G\ngens a\nrel a^2\n");
        assert_eq!(
            p.tietze_eliminate(&Generator::new("a")),
            Err(TietzeError::NotEliminable("a".into()))
        );
    }

    #[test]
    fn simplify_drops_trivial_and_duplicate_relators() {
        let p = Presentation::new(
            "G",
            vec![Generator::new("t")],
            vec![w("t^2"), w("t^2"), Word::identity(), w("t^-2")],
        )
        .unwrap();
        let s = p.simplify();
        assert_eq!(s.relators(), &[w("t^2")]);
    }

    #[test]
    fn duplicate_detection_uses_cyclic_rotations() {
        let p = Presentation::new(
            "G",
            vec![Generator::new("a"), Generator::new("b")],
            vec![w("a b a^-1 b^-1"), w("b^-1 a b a^-1")],
        )
        .unwrap();
        assert_eq!(p.simplify().relators().len(), 1);
    }

    #[test]
    fn raag_spec_requires_commutator_relators() {
        let a = parse("group A\ngens a b c\nrel [a,b]\n");
        let spec = a.raag_spec().unwrap();
        assert!(spec.commutes(0, 1));
        assert!(!spec.commutes(0, 2));
        let bad = parse("group B\ngens a\nrel a^2\n");
        assert!(bad.raag_spec().is_err());
    }
}
