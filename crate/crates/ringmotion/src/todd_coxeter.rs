//! Todd-Coxeter coset enumeration over finite presentations.
//!
//! The strategy is HLT: scan every relator at every coset, filling gaps with
//! new cosets, then define any still-missing neighbors of the coset before
//! moving on. Coincidences are merged through a union-find with full edge
//! transfer. Definition order is deterministic (smallest undefined entry,
//! row-major), so enumeration results are reproducible.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use crate::presentation::Presentation;
use crate::words::{Generator, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("out of space at {0} cosets (group may be infinite or the bound too small)")]
    OutOfSpace(usize),
    #[error("unknown generator `{0}` in subgroup word")]
    UnknownGenerator(String),
    #[error("relator exponent too large to expand")]
    ExponentTooLarge,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("coset table is incomplete")]
    IncompleteTable,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

/// A complete coset table: the action of each generator on the cosets of the
/// enumerated subgroup. Row 0 is the subgroup coset.
#[derive(Debug, Clone)]
pub struct CosetTable {
    generators: Vec<Generator>,
    /// `rows[c][2g]` is the image of coset `c` under generator `g`,
    /// `rows[c][2g + 1]` the image under its inverse.
    rows: Vec<Vec<usize>>,
    complete: bool,
}

impl CosetTable {
    pub fn num_cosets(&self) -> usize {
        self.rows.len()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    fn gen_index(&self, gen: &Generator) -> Result<usize, TableError> {
        self.generators
            .iter()
            .position(|g| g == gen)
            .ok_or_else(|| TableError::UnknownGenerator(gen.as_str().to_string()))
    }

    /// Image of `coset` under one syllable `gen^exp`, exact for any exponent
    /// (walks the generator's cycle through the coset).
    pub fn apply_syllable(
        &self,
        coset: usize,
        gen: &Generator,
        exp: &BigInt,
    ) -> Result<usize, TableError> {
        if !self.complete {
            return Err(TableError::IncompleteTable);
        }
        let g = self.gen_index(gen)?;
        let col = if exp.is_negative() { 2 * g + 1 } else { 2 * g };
        // Cycle of the generator action through `coset`.
        let mut cycle = vec![coset];
        let mut c = self.rows[coset][col];
        while c != coset {
            cycle.push(c);
            c = self.rows[c][col];
        }
        let len = BigUint::from(cycle.len());
        let steps = (exp.magnitude() % len).to_usize().expect("mod cycle length fits");
        Ok(cycle[steps])
    }

    /// Image of `coset` under the action of `w`.
    pub fn apply_word(&self, coset: usize, w: &Word) -> Result<usize, TableError> {
        let mut c = coset;
        for l in w.letters() {
            c = self.apply_syllable(c, l.generator(), l.exponent())?;
        }
        Ok(c)
    }

    /// The permutation induced by `w` on all cosets.
    pub fn word_permutation(&self, w: &Word) -> Result<Vec<usize>, TableError> {
        (0..self.num_cosets()).map(|c| self.apply_word(c, w)).collect()
    }

    /// The permutation of a single generator.
    pub fn generator_permutation(&self, gen: &Generator) -> Result<Vec<usize>, TableError> {
        if !self.complete {
            return Err(TableError::IncompleteTable);
        }
        let g = self.gen_index(gen)?;
        Ok((0..self.num_cosets()).map(|c| self.rows[c][2 * g]).collect())
    }

    /// Order of the permutation induced by `w`: the element order in the
    /// group when the table was enumerated over the trivial subgroup.
    pub fn element_order(&self, w: &Word) -> Result<BigUint, TableError> {
        let perm = self.word_permutation(w)?;
        let mut seen = vec![false; perm.len()];
        let mut order = BigUint::one();
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut c = start;
            while !seen[c] {
                seen[c] = true;
                c = perm[c];
                len += 1;
            }
            order = order.lcm(&BigUint::from(len));
        }
        Ok(order)
    }

    /// True when scanning `w` from every coset returns to its start.
    pub fn word_closes_everywhere(&self, w: &Word) -> Result<bool, TableError> {
        Ok(self.word_permutation(w)?.iter().enumerate().all(|(c, &d)| c == d))
    }

    /// True when every generator action is a bijection.
    pub fn actions_are_permutations(&self) -> bool {
        let n = self.num_cosets();
        self.generators.iter().all(|g| {
            let perm = match self.generator_permutation(g) {
                Ok(p) => p,
                Err(_) => return false,
            };
            let mut seen = vec![false; n];
            perm.iter().all(|&c| {
                if c >= n || seen[c] {
                    false
                } else {
                    seen[c] = true;
                    true
                }
            })
        })
    }
}

/// Expands a word into a flat sequence of table columns.
fn expand_word(
    w: &Word,
    generators: &[Generator],
    unknown: impl Fn(String) -> EnumError,
) -> Result<Vec<usize>, EnumError> {
    let mut out = Vec::new();
    for l in w.letters() {
        let g = generators
            .iter()
            .position(|cand| cand == l.generator())
            .ok_or_else(|| unknown(l.generator().as_str().to_string()))?;
        let e = l.exponent();
        let col = if e.is_negative() { 2 * g + 1 } else { 2 * g };
        let count: usize = e
            .magnitude()
            .to_usize()
            .ok_or(EnumError::ExponentTooLarge)?;
        out.extend(std::iter::repeat(col).take(count));
    }
    Ok(out)
}

struct Enumerator {
    cols: usize,
    table: Vec<Vec<Option<usize>>>,
    rep: Vec<usize>,
    live: usize,
    max_cosets: usize,
}

impl Enumerator {
    fn new(cols: usize, max_cosets: usize) -> Self {
        Enumerator {
            cols,
            table: vec![vec![None; cols]],
            rep: vec![0],
            live: 1,
            max_cosets,
        }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.rep[a] != a {
            let parent = self.rep[a];
            self.rep[a] = self.rep[parent];
            a = self.rep[a];
        }
        a
    }

    fn is_live(&mut self, a: usize) -> bool {
        self.find(a) == a
    }

    fn new_coset(&mut self) -> Result<usize, EnumError> {
        if self.live >= self.max_cosets {
            return Err(EnumError::OutOfSpace(self.max_cosets));
        }
        self.table.push(vec![None; self.cols]);
        self.rep.push(self.table.len() - 1);
        self.live += 1;
        Ok(self.table.len() - 1)
    }

    fn get(&mut self, a: usize, col: usize) -> Option<usize> {
        let a = self.find(a);
        self.table[a][col].map(|b| self.find(b))
    }

    /// Records `a --col--> b` (and the inverse edge), merging cosets when the
    /// entry conflicts with existing information.
    fn deduce(&mut self, a: usize, col: usize, b: usize) {
        let a = self.find(a);
        let b = self.find(b);
        match self.get(a, col) {
            Some(c) if c == b => {}
            Some(c) => self.coincide(c, b),
            None => {
                self.table[a][col] = Some(b);
                match self.get(b, col ^ 1) {
                    None => self.table[b][col ^ 1] = Some(a),
                    Some(c) if c == a => {}
                    Some(c) => self.coincide(c, a),
                }
            }
        }
    }

    /// Merges the equivalence classes of `a` and `b`, transferring edges and
    /// queueing any consequent coincidences.
    fn coincide(&mut self, a: usize, b: usize) {
        let mut queue = vec![(a, b)];
        while let Some((a, b)) = queue.pop() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (keep, drop) = if a < b { (a, b) } else { (b, a) };
            self.rep[drop] = keep;
            self.live -= 1;
            let row = std::mem::replace(&mut self.table[drop], vec![None; self.cols]);
            for (col, entry) in row.into_iter().enumerate() {
                let Some(d) = entry else { continue };
                let d = self.find(d);
                match self.table[keep][col].map(|x| self.find(x)) {
                    None => {
                        self.table[keep][col] = Some(d);
                        match self.table[d][col ^ 1].map(|x| self.find(x)) {
                            None => self.table[d][col ^ 1] = Some(keep),
                            Some(e) if e == keep => {}
                            Some(e) => queue.push((e, keep)),
                        }
                    }
                    Some(e) if e == d => {}
                    Some(e) => queue.push((e, d)),
                }
            }
        }
    }

    /// Scans `word` from `alpha`, defining cosets to fill gaps. On a closed
    /// scan with mismatched ends the cosets coincide.
    fn scan_and_fill(&mut self, alpha: usize, word: &[usize]) -> Result<(), EnumError> {
        if word.is_empty() {
            return Ok(());
        }
        let mut f = self.find(alpha);
        let mut i = 0usize;
        let mut b = f;
        let mut j = word.len();
        loop {
            while i < j {
                match self.get(f, word[i]) {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            while j > i {
                match self.get(b, word[j - 1] ^ 1) {
                    Some(n) => {
                        b = n;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if i == j {
                if self.find(f) != self.find(b) {
                    self.coincide(f, b);
                }
                return Ok(());
            }
            if i + 1 == j {
                self.deduce(f, word[i], b);
                return Ok(());
            }
            let n = self.new_coset()?;
            self.deduce(f, word[i], n);
            f = self.find(f);
            b = self.find(b);
        }
    }

    /// One full HLT pass; returns early on space exhaustion.
    fn hlt_pass(&mut self, relators: &[Vec<usize>]) -> Result<(), EnumError> {
        let mut alpha = 0;
        while alpha < self.table.len() {
            if !self.is_live(alpha) {
                alpha += 1;
                continue;
            }
            for r in relators {
                self.scan_and_fill(alpha, r)?;
                if !self.is_live(alpha) {
                    break;
                }
            }
            if self.is_live(alpha) {
                for col in 0..self.cols {
                    if self.get(alpha, col).is_none() {
                        let n = self.new_coset()?;
                        self.deduce(alpha, col, n);
                    }
                }
            }
            alpha += 1;
        }
        Ok(())
    }

    /// True when the live table is complete and every relator scan closes.
    fn is_stable(&mut self, relators: &[Vec<usize>]) -> bool {
        for a in 0..self.table.len() {
            if !self.is_live(a) {
                continue;
            }
            for col in 0..self.cols {
                if self.get(a, col).is_none() {
                    return false;
                }
            }
            for r in relators {
                let mut c = a;
                for &col in r {
                    match self.get(c, col) {
                        Some(n) => c = n,
                        None => return false,
                    }
                }
                if c != a {
                    return false;
                }
            }
        }
        true
    }

    fn compact(&mut self, generators: Vec<Generator>) -> CosetTable {
        let mut index = vec![usize::MAX; self.table.len()];
        let mut live = Vec::new();
        for a in 0..self.table.len() {
            if self.is_live(a) {
                index[a] = live.len();
                live.push(a);
            }
        }
        let rows = live
            .iter()
            .map(|&a| {
                (0..self.cols)
                    .map(|col| index[self.get(a, col).expect("table is complete")])
                    .collect()
            })
            .collect();
        CosetTable {
            generators,
            rows,
            complete: true,
        }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup_gens` in the
/// group presented by `p`. Returns a complete table with one row per coset,
/// or [`EnumError::OutOfSpace`] when `max_cosets` is exceeded.
pub fn enumerate(
    p: &Presentation,
    subgroup_gens: &[Word],
    max_cosets: usize,
) -> Result<CosetTable, EnumError> {
    assert!(max_cosets >= 1, "max_cosets must be at least 1");
    let generators = p.generators().to_vec();
    let relators: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .map(|r| {
            expand_word(r, &generators, |name| {
                unreachable!("presentation validated relator generator `{name}`")
            })
        })
        .collect::<Result<_, _>>()?;
    let subgroup: Vec<Vec<usize>> = subgroup_gens
        .iter()
        .map(|w| expand_word(w, &generators, EnumError::UnknownGenerator))
        .collect::<Result<_, _>>()?;

    let mut e = Enumerator::new(2 * generators.len(), max_cosets);
    for w in &subgroup {
        e.scan_and_fill(0, w)?;
    }
    loop {
        e.hlt_pass(&relators)?;
        for w in &subgroup {
            e.scan_and_fill(0, w)?;
        }
        if e.is_stable(&relators) {
            return Ok(e.compact(generators));
        }
    }
}

/// The quotient presentation obtained by killing the given generators:
/// each becomes a relator, and the result is simplified.
pub fn quotient_by(p: &Presentation, killed: &[Generator]) -> Result<Presentation, TableError> {
    for g in killed {
        if !p.generators().contains(g) {
            return Err(TableError::UnknownGenerator(g.as_str().to_string()));
        }
    }
    let mut relators = p.relators().to_vec();
    relators.extend(killed.iter().cloned().map(Word::generator));
    let q = Presentation::new(p.name.clone(), p.generators().to_vec(), relators)
        .expect("killing generators preserves validity");
    Ok(q.simplify())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Presentation {
        Presentation::parse(text).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn order(p: &Presentation) -> usize {
        enumerate(p, &[], 10_000).unwrap().num_cosets()
    }

    #[test]
    fn cyclic_groups_have_their_orders() {
        assert_eq!(order(&parse("group Z2\ngens tau_C\nrel tau_C^2\n")), 2);
        assert_eq!(order(&parse("group Z4\ngens tau_H\nrel tau_H^4\n")), 4);
        assert_eq!(order(&parse("group Z7\ngens a\nrel a^7\n")), 7);
    }

    #[test]
    fn hopf_ring_group_has_order_eight() {
        let p = parse(
            "group R10\ngens tau_H s\nrel tau_H^4\nrel s^2 tau_H^-2\nrel s tau_H s^-1 tau_H\n",
        );
        let t = enumerate(&p, &[], 10_000).unwrap();
        assert_eq!(t.num_cosets(), 8);
        assert!(t.actions_are_permutations());
        for r in p.relators() {
            assert!(t.word_closes_everywhere(r).unwrap());
        }
    }

    #[test]
    fn quaternion_presentation_has_order_eight() {
        let p = parse("group Q8\ngens t s\nrel t^2 s^-2\nrel t s t s t^-2\n");
        assert_eq!(order(&p), 8);
    }

    #[test]
    fn element_orders_in_the_hopf_group() {
        let p = parse(
            "group R10\ngens tau_H s\nrel tau_H^4\nrel s^2 tau_H^-2\nrel s tau_H s^-1 tau_H\n",
        );
        let t = enumerate(&p, &[], 10_000).unwrap();
        assert_eq!(t.element_order(&w("tau_H")).unwrap(), BigUint::from(4u32));
        assert_eq!(t.element_order(&w("tau_H^2")).unwrap(), BigUint::from(2u32));
        assert_eq!(t.element_order(&w("1")).unwrap(), BigUint::from(1u32));
        assert_eq!(t.element_order(&w("s")).unwrap(), BigUint::from(4u32));
    }

    #[test]
    fn unreduced_extension_presentation_element_orders() {
        let p = parse(
            "group RHo\ngens l tau_H\nrel l^2\nrel tau_H^2 l^-1\nrel tau_H l tau_H^-1 l\n",
        );
        let t = enumerate(&p, &[], 10_000).unwrap();
        assert_eq!(t.num_cosets(), 4);
        assert_eq!(t.element_order(&w("l")).unwrap(), BigUint::from(2u32));
        assert_eq!(t.element_order(&w("tau_H")).unwrap(), BigUint::from(4u32));
    }

    #[test]
    fn subgroup_enumeration_gives_the_index() {
        let p = parse("group Z4\ngens tau_H\nrel tau_H^4\n");
        let t = enumerate(&p, &[w("tau_H^2")], 10_000).unwrap();
        assert_eq!(t.num_cosets(), 2);
    }

    #[test]
    fn free_group_runs_out_of_space() {
        let p = parse("group F1\ngens l\n");
        match enumerate(&p, &[], 100) {
            Err(EnumError::OutOfSpace(100)) => {}
            other => panic!("expected out of space, got {other:?}"),
        }
    }

    #[test]
    fn infinite_graph_product_runs_out_of_space() {
        let p = parse("group A\ngens a b c\nrel [a,b]\n");
        match enumerate(&p, &[], 500) {
            Err(EnumError::OutOfSpace(500)) => {}
            other => panic!("expected out of space, got {other:?}"),
        }
    }

    #[test]
    fn result_is_independent_of_relator_order() {
        let base = parse(
            "group R10\ngens tau_H s\nrel tau_H^4\nrel s^2 tau_H^-2\nrel s tau_H s^-1 tau_H\n",
        );
        let swapped = parse(
            "group R10\ngens tau_H s\nrel s tau_H s^-1 tau_H\nrel tau_H^4\nrel s^2 tau_H^-2\n",
        );
        assert_eq!(order(&base), order(&swapped));
    }

    #[test]
    fn killing_all_generators_gives_the_trivial_group() {
        let p = parse("group Z2\ngens tau\nrel tau^2\n");
        let q = quotient_by(&p, &[Generator::new("tau")]).unwrap();
        assert!(q.generators().is_empty());
        assert_eq!(order(&q), 1);
    }

    #[test]
    fn dihedral_subgroup_index() {
        // Infinite dihedral group < a, b | a^2, b^2 > over <ab> has index 2.
        let p = parse("group D\ngens a b\nrel a^2\nrel b^2\n");
        let t = enumerate(&p, &[w("a b")], 10_000).unwrap();
        assert_eq!(t.num_cosets(), 2);
    }

    #[test]
    fn symmetric_group_s3() {
        let p = parse("group S3\ngens a b\nrel a^2\nrel b^2\nrel a b a b a b\n");
        assert_eq!(order(&p), 6);
    }

    #[test]
    fn huge_exponents_walk_cycles_exactly() {
        let p = parse("group Z4\ngens t\nrel t^4\n");
        let t = enumerate(&p, &[], 10_000).unwrap();
        let big = Word::syllable(Generator::new("t"), BigInt::from(10u64).pow(30) + 1);
        assert_eq!(t.apply_word(0, &big).unwrap(), t.apply_word(0, &w("t")).unwrap());
    }
}
