//! Presentations of group extensions assembled from kernel and quotient
//! presentations plus lift data.
//!
//! Given `1 -> K -> E -> Q -> 1` with `K = <X | R>` and `Q = <Y | S>`, a
//! presentation of `E` has generators `X` together with lifts of `Y`,
//! relators `R`, one relator `s~ = factor(s)` per quotient relator, and one
//! relator `y~ x y~^-1 = action(y, x)` per pair. Lifts keep the quotient
//! generator names (callers rename on clashes).
//!
//! The `.ext` file format:
//!
//! ```text
//! kernel Z2_ell.grp
//! quotient RH1.grp
//! split false
//! action tau_H l -> l^-1
//! factor 1 -> l
//! ```

use std::fmt;

use thiserror::Error;

use crate::abelianization::{abelianization, AbelianInvariants};
use crate::presentation::Presentation;
use crate::todd_coxeter::{enumerate, quotient_by, EnumError};
use crate::words::{Generator, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("kernel and quotient share generator `{0}`; rename before assembling")]
    NameClash(String),
    #[error("malformed action: {0}")]
    MalformedAction(String),
    #[error("factor index {0} out of range (the quotient has {1} relators)")]
    FactorIndexOutOfRange(usize, usize),
    #[error("split extension with nontrivial factor for relator {0}")]
    NontrivialSplitFactor(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ExtParseError {
    pub line: usize,
    pub message: String,
}

/// Data of a group extension at presentation level.
#[derive(Debug, Clone)]
pub struct ExtensionData {
    pub kernel: Presentation,
    pub quotient: Presentation,
    /// `action[(y, x)]` is the kernel word equal to `y~ x y~^-1`, for every
    /// quotient generator `y` and kernel generator `x`.
    pub action: Vec<((Generator, Generator), Word)>,
    /// One kernel word per quotient relator: the value of its lift in the
    /// kernel. Empty words for split extensions.
    pub factors: Vec<Word>,
    pub split: bool,
}

impl ExtensionData {
    /// Looks up the action word for `(y, x)`.
    pub fn action_of(&self, y: &Generator, x: &Generator) -> Option<&Word> {
        self.action
            .iter()
            .find(|((ay, ax), _)| ay == y && ax == x)
            .map(|(_, w)| w)
    }

    fn check(&self) -> Result<(), ExtensionError> {
        for x in self.kernel.generators() {
            if self.quotient.generators().contains(x) {
                return Err(ExtensionError::NameClash(x.as_str().to_string()));
            }
        }
        let kernel_free = self.kernel.free_spec();
        for y in self.quotient.generators() {
            for x in self.kernel.generators() {
                let word = self.action_of(y, x).ok_or_else(|| {
                    ExtensionError::MalformedAction(format!(
                        "no action word for ({}, {})",
                        y.as_str(),
                        x.as_str()
                    ))
                })?;
                if kernel_free.normal_form(word).is_err() {
                    return Err(ExtensionError::MalformedAction(format!(
                        "action for ({}, {}) uses non-kernel generators in `{word}`",
                        y.as_str(),
                        x.as_str()
                    )));
                }
            }
        }
        if self.action.len() != self.quotient.generators().len() * self.kernel.generators().len()
        {
            return Err(ExtensionError::MalformedAction(
                "action has entries outside the generator grid".into(),
            ));
        }
        if self.factors.len() > self.quotient.relators().len() {
            return Err(ExtensionError::FactorIndexOutOfRange(
                self.factors.len(),
                self.quotient.relators().len(),
            ));
        }
        for (i, f) in self.factors.iter().enumerate() {
            if kernel_free.normal_form(f).is_err() {
                return Err(ExtensionError::MalformedAction(format!(
                    "factor {} uses non-kernel generators in `{f}`",
                    i + 1
                )));
            }
            if self.split && !f.is_identity() {
                return Err(ExtensionError::NontrivialSplitFactor(i + 1));
            }
        }
        Ok(())
    }

    /// Assembles the extension presentation, named `name`.
    pub fn assemble(&self, name: &str) -> Result<Presentation, ExtensionError> {
        self.check()?;
        let mut generators = self.kernel.generators().to_vec();
        generators.extend(self.quotient.generators().iter().cloned());

        let mut relators = self.kernel.relators().to_vec();
        for (i, s) in self.quotient.relators().iter().enumerate() {
            let factor = self.factors.get(i).cloned().unwrap_or_default();
            relators.push(s.concat(&factor.inverse()));
        }
        for y in self.quotient.generators() {
            for x in self.kernel.generators() {
                let action = self.action_of(y, x).expect("checked total");
                let lhs = Word::generator(y.clone())
                    .concat(&Word::generator(x.clone()))
                    .concat(&Word::syllable(y.clone(), -1));
                relators.push(lhs.concat(&action.inverse()));
            }
        }
        Ok(Presentation::new(name, generators, relators)
            .expect("assembled generators are distinct and relators use them"))
    }

    /// For split data: substituting kernel generators by the identity must
    /// send every assembled relator to a quotient relator or to the identity.
    pub fn split_retraction_holds(&self, result: &Presentation) -> bool {
        let quotient_free = self.quotient.free_spec();
        result.relators().iter().all(|r| {
            let projected = Word::from_letters(
                r.letters()
                    .iter()
                    .filter(|l| self.quotient.generators().contains(l.generator()))
                    .cloned(),
            );
            let projected = match quotient_free.normal_form(&projected) {
                Ok(w) => w,
                Err(_) => return false,
            };
            projected.is_identity() || self.quotient.relators().contains(&projected)
        })
    }

    /// Necessary-condition checks on an assembled presentation.
    pub fn validate(&self, result: &Presentation, max_cosets: usize) -> ExtensionReport {
        let order = |p: &Presentation| match enumerate(p, &[], max_cosets) {
            Ok(t) => Some(t.num_cosets()),
            Err(EnumError::OutOfSpace(_)) => None,
            Err(e) => panic!("enumeration failed: {e}"),
        };
        let kernel_order = order(&self.kernel);
        let quotient_order = order(&self.quotient);
        let result_order = match (kernel_order, quotient_order) {
            (Some(_), Some(_)) => order(result),
            _ => None,
        };
        let order_multiplicative = match (kernel_order, quotient_order, result_order) {
            (Some(k), Some(q), Some(r)) => Some(k * q == r),
            _ => None,
        };
        let quotient_recovered = quotient_order.map(|q| {
            let killed = quotient_by(result, self.kernel.generators())
                .expect("kernel generators are in the result");
            order(&killed) == Some(q)
        });
        let split_retraction = self
            .split
            .then(|| self.split_retraction_holds(result));
        ExtensionReport {
            abelianization: abelianization(result),
            kernel_order,
            quotient_order,
            result_order,
            order_multiplicative,
            quotient_recovered,
            split_retraction,
        }
    }

    /// Parses the `.ext` format. Referenced `.grp` files are resolved by the
    /// `load` callback (the CLI resolves them relative to the `.ext` file).
    pub fn parse(
        text: &str,
        mut load: impl FnMut(&str) -> Result<Presentation, String>,
    ) -> Result<ExtensionData, ExtParseError> {
        let mut kernel: Option<Presentation> = None;
        let mut quotient: Option<Presentation> = None;
        let mut split: Option<bool> = None;
        let mut action_lines: Vec<(usize, String, String, Word)> = Vec::new();
        let mut factor_lines: Vec<(usize, usize, Word)> = Vec::new();
        let err = |line: usize, message: String| ExtParseError { line, message };

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
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
                "kernel" => {
                    let p = load(rest).map_err(|m| err(lineno, m))?;
                    kernel = Some(p);
                }
                "quotient" => {
                    let p = load(rest).map_err(|m| err(lineno, m))?;
                    quotient = Some(p);
                }
                "split" => {
                    split = Some(match rest {
                        "true" => true,
                        "false" => false,
                        other => {
                            return Err(err(lineno, format!("expected true or false, found `{other}`")))
                        }
                    });
                }
                "action" => {
                    let (pair, word) = rest.split_once("->").ok_or_else(|| {
                        err(lineno, "expected `action <y> <x> -> <word>`".into())
                    })?;
                    let mut names = pair.split_whitespace();
                    let (Some(y), Some(x), None) = (names.next(), names.next(), names.next())
                    else {
                        return Err(err(lineno, "expected two generators before `->`".into()));
                    };
                    let word = Word::parse(word.trim())
                        .map_err(|e| err(lineno, e.to_string()))?;
                    action_lines.push((lineno, y.to_string(), x.to_string(), word));
                }
                "factor" => {
                    let (index, word) = rest.split_once("->").ok_or_else(|| {
                        err(lineno, "expected `factor <relator-index> -> <word>`".into())
                    })?;
                    let index: usize = index.trim().parse().map_err(|_| {
                        err(lineno, format!("invalid relator index `{}`", index.trim()))
                    })?;
                    if index == 0 {
                        return Err(err(lineno, "relator indices are 1-based".into()));
                    }
                    let word = Word::parse(word.trim())
                        .map_err(|e| err(lineno, e.to_string()))?;
                    factor_lines.push((lineno, index, word));
                }
                other => {
                    return Err(err(
                        lineno,
                        format!("expected `kernel`, `quotient`, `split`, `action`, or `factor`, found `{other}`"),
                    ))
                }
            }
        }

        let kernel = kernel.ok_or_else(|| err(1, "missing `kernel` section".into()))?;
        let quotient = quotient.ok_or_else(|| err(1, "missing `quotient` section".into()))?;
        let split = split.unwrap_or(false);

        let mut action = Vec::new();
        for (lineno, y, x, word) in action_lines {
            let y = quotient
                .generators()
                .iter()
                .find(|g| g.as_str() == y)
                .ok_or_else(|| err(lineno, format!("`{y}` is not a quotient generator")))?;
            let x = kernel
                .generators()
                .iter()
                .find(|g| g.as_str() == x)
                .ok_or_else(|| err(lineno, format!("`{x}` is not a kernel generator")))?;
            action.push(((y.clone(), x.clone()), word));
        }
        let mut factors = vec![Word::identity(); quotient.relators().len()];
        for (lineno, index, word) in factor_lines {
            if index > factors.len() {
                return Err(err(
                    lineno,
                    format!(
                        "relator index {index} out of range (the quotient has {} relators)",
                        factors.len()
                    ),
                ));
            }
            factors[index - 1] = word;
        }
        Ok(ExtensionData {
            kernel,
            quotient,
            action,
            factors,
            split,
        })
    }
}

/// Findings of [`ExtensionData::validate`]. `None` means the check did not
/// apply (an enumeration ran out of space, or the data was not split).
#[derive(Debug, Clone)]
pub struct ExtensionReport {
    pub abelianization: AbelianInvariants,
    pub kernel_order: Option<usize>,
    pub quotient_order: Option<usize>,
    pub result_order: Option<usize>,
    pub order_multiplicative: Option<bool>,
    pub quotient_recovered: Option<bool>,
    pub split_retraction: Option<bool>,
}

impl ExtensionReport {
    /// True when no applicable check failed.
    pub fn ok(&self) -> bool {
        self.order_multiplicative != Some(false)
            && self.quotient_recovered != Some(false)
            && self.split_retraction != Some(false)
    }
}

impl fmt::Display for ExtensionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<usize>| match v {
            Some(n) => n.to_string(),
            None => "infinite or out of space".into(),
        };
        writeln!(f, "abelianization: {}", self.abelianization)?;
        writeln!(f, "kernel order: {}", opt(self.kernel_order))?;
        writeln!(f, "quotient order: {}", opt(self.quotient_order))?;
        writeln!(f, "result order: {}", opt(self.result_order))?;
        if let Some(ok) = self.order_multiplicative {
            writeln!(f, "order multiplicativity: {}", if ok { "pass" } else { "FAIL" })?;
        }
        if let Some(ok) = self.quotient_recovered {
            writeln!(f, "quotient recovered by killing the kernel: {}", if ok { "pass" } else { "FAIL" })?;
        }
        if let Some(ok) = self.split_retraction {
            writeln!(f, "split retraction: {}", if ok { "pass" } else { "FAIL" })?;
        }
        Ok(())
    }
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

    fn g(s: &str) -> Generator {
        Generator::new(s)
    }

    /// Kernel Z2 = <l | l^2>, quotient Z2 = <tau_H | tau_H^2>, twisted
    /// action, factor l for the lifted square.
    fn ordered_hopf_data() -> ExtensionData {
        ExtensionData {
            kernel: parse("group L2\ngens l\nrel l^2\n"),
            quotient: parse("group RH1\ngens tau_H\nrel tau_H^2\n"),
            action: vec![((g("tau_H"), g("l")), w("l^-1"))],
            factors: vec![w("l")],
            split: false,
        }
    }

    fn hopf_data() -> ExtensionData {
        ExtensionData {
            kernel: parse("group R10o\ngens tau_H\nrel tau_H^4\n"),
            quotient: parse("group Z2s\ngens s\nrel s^2\n"),
            action: vec![((g("s"), g("tau_H")), w("tau_H^-1"))],
            factors: vec![w("tau_H^2")],
            split: false,
        }
    }

    fn hopf_circle_data() -> ExtensionData {
        let kernel = parse(
            "group RHC\ngens g_a g_b eps_C tau_C\n\
             rel [g_a, g_b]\nrel tau_C^2\nrel [g_a, tau_C]\nrel [g_b, tau_C]\n\
             rel tau_C eps_C tau_C eps_C\n",
        );
        let quotient = parse(
            "group R10\ngens tau_H s\nrel tau_H^4\nrel s^2 tau_H^-2\nrel s tau_H s^-1 tau_H\n",
        );
        let action = vec![
            ((g("tau_H"), g("g_a")), w("g_a^-1")),
            ((g("tau_H"), g("g_b")), w("g_b^-1")),
            ((g("tau_H"), g("eps_C")), w("eps_C")),
            ((g("tau_H"), g("tau_C")), w("tau_C")),
            ((g("s"), g("g_a")), w("g_a")),
            ((g("s"), g("g_b")), w("g_b")),
            ((g("s"), g("eps_C")), w("eps_C")),
            ((g("s"), g("tau_C")), w("tau_C")),
        ];
        ExtensionData {
            kernel,
            quotient,
            action,
            factors: vec![Word::identity(); 3],
            split: true,
        }
    }

    #[test]
    fn assembles_the_ordered_hopf_presentation_verbatim() {
        let result = ordered_hopf_data().assemble("R10o_unreduced").unwrap();
        let gens: Vec<&str> = result.generators().iter().map(|x| x.as_str()).collect();
        assert_eq!(gens, vec!["l", "tau_H"]);
        assert_eq!(
            result.relators(),
            &[w("l^2"), w("tau_H^2 l^-1"), w("tau_H l tau_H^-1 l")]
        );
        let simplified = result.simplify();
        assert_eq!(simplified.generators().len(), 1);
        assert_eq!(simplified.relators(), &[w("tau_H^4")]);
    }

    #[test]
    fn assembles_the_hopf_presentation() {
        let result = hopf_data().assemble("R10").unwrap();
        let gens: Vec<&str> = result.generators().iter().map(|x| x.as_str()).collect();
        assert_eq!(gens, vec!["tau_H", "s"]);
        assert_eq!(
            result.relators(),
            &[w("tau_H^4"), w("s^2 tau_H^-2"), w("s tau_H s^-1 tau_H")]
        );
    }

    #[test]
    fn assembles_the_hopf_circle_presentation() {
        let data = hopf_circle_data();
        let result = data.assemble("R11").unwrap();
        let gens: Vec<&str> = result.generators().iter().map(|x| x.as_str()).collect();
        assert_eq!(gens, vec!["g_a", "g_b", "eps_C", "tau_C", "tau_H", "s"]);
        assert_eq!(result.relators().len(), 16);
        let expected = vec![
            w("[g_a, g_b]"),
            w("tau_C^2"),
            w("[g_a, tau_C]"),
            w("[g_b, tau_C]"),
            w("tau_C eps_C tau_C eps_C"),
            w("tau_H^4"),
            w("s^2 tau_H^-2"),
            w("s tau_H s^-1 tau_H"),
            w("tau_H g_a tau_H^-1 g_a"),
            w("tau_H g_b tau_H^-1 g_b"),
            w("tau_H eps_C tau_H^-1 eps_C^-1"),
            w("tau_H tau_C tau_H^-1 tau_C^-1"),
            w("s g_a s^-1 g_a^-1"),
            w("s g_b s^-1 g_b^-1"),
            w("s eps_C s^-1 eps_C^-1"),
            w("s tau_C s^-1 tau_C^-1"),
        ];
        assert_eq!(result.relators(), expected.as_slice());
        assert!(data.split_retraction_holds(&result));
    }

    #[test]
    fn generator_and_relator_counts_are_exact() {
        for data in [ordered_hopf_data(), hopf_data(), hopf_circle_data()] {
            let result = data.assemble("E").unwrap();
            assert_eq!(
                result.generators().len(),
                data.kernel.generators().len() + data.quotient.generators().len()
            );
            assert_eq!(
                result.relators().len(),
                data.kernel.relators().len()
                    + data.quotient.relators().len()
                    + data.kernel.generators().len() * data.quotient.generators().len()
            );
        }
    }

    #[test]
    fn validates_finite_extensions() {
        let data = ordered_hopf_data();
        let result = data.assemble("E").unwrap();
        let report = data.validate(&result, 10_000);
        assert_eq!(report.kernel_order, Some(2));
        assert_eq!(report.quotient_order, Some(2));
        assert_eq!(report.result_order, Some(4));
        assert_eq!(report.order_multiplicative, Some(true));
        assert_eq!(report.quotient_recovered, Some(true));
        assert!(report.ok());

        let data = hopf_data();
        let report = data.validate(&data.assemble("E").unwrap(), 10_000);
        assert_eq!(report.result_order, Some(8));
        assert_eq!(report.order_multiplicative, Some(true));
    }

    #[test]
    fn validates_the_hopf_circle_extension() {
        let data = hopf_circle_data();
        let result = data.assemble("R11").unwrap();
        let report = data.validate(&result, 2_000);
        assert_eq!(report.kernel_order, None, "kernel is infinite");
        assert_eq!(report.quotient_order, Some(8));
        assert_eq!(report.quotient_recovered, Some(true));
        assert_eq!(report.split_retraction, Some(true));
        assert!(report.ok());
    }

    #[test]
    fn name_clash_is_rejected() {
        let mut data = ordered_hopf_data();
        data.quotient = parse("group Q\ngens l\nrel l^2\n");
        data.action = vec![((g("l"), g("l")), w("l^-1"))];
        assert_eq!(
            data.assemble("E"),
            Err(ExtensionError::NameClash("l".into()))
        );
    }

    #[test]
    fn missing_action_is_rejected() {
        let mut data = hopf_circle_data();
        data.action.pop();
        match data.assemble("E") {
            Err(ExtensionError::MalformedAction(_)) => {}
            other => panic!("expected malformed action, got {other:?}"),
        }
    }

    #[test]
    fn split_data_with_nontrivial_factor_is_rejected() {
        let mut data = hopf_data();
        data.split = true;
        assert_eq!(
            data.assemble("E"),
            Err(ExtensionError::NontrivialSplitFactor(1))
        );
    }

    #[test]
    fn parses_the_ext_format() {
        let kernel_text = "group L2\ngens l\nrel l^2\n";
        let quotient_text = "group RH1\ngens tau_H\nrel tau_H^2\n";
        let ext = "kernel L2.grp\nquotient RH1.grp\nsplit false\n\
                   action tau_H l -> l^-1\nfactor 1 -> l\n";
        let data = ExtensionData::parse(ext, |path| match path {
            "L2.grp" => Presentation::parse(kernel_text).map_err(|e| e.to_string()),
            "RH1.grp" => Presentation::parse(quotient_text).map_err(|e| e.to_string()),
            other => Err(format!("unknown file `{other}`")),
        })
        .unwrap();
        assert!(!data.split);
        assert_eq!(data.factors, vec![w("l")]);
        let result = data.assemble("E").unwrap();
        assert_eq!(
            result.relators(),
            &[w("l^2"), w("tau_H^2 l^-1"), w("tau_H l tau_H^-1 l")]
        );
    }

    #[test]
    fn ext_parse_errors_name_the_line() {
        let err = ExtensionData::parse("kernel a.grp\nbogus line\n", |_| {
            Presentation::parse("group G\ngens x\n").map_err(|e| e.to_string())
        })
        .unwrap_err();
        assert_eq!(err.line, 2);
    }
}
