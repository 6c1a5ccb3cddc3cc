//! Finite group presentations and their abelian invariants.
//!
//! A word is a sequence of nonzero signed generator indices: `k` stands for
//! generator `k - 1` and `-k` for its inverse. Only abelian invariants are
//! computed; there is no attempt at solving the word problem.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::homology::serialize_bigint;
use crate::snf::{smith_normal_form, SparseMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<i32>);

impl Word {
    /// Freely reduce the letters on construction.
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "zero is not a generator letter");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self(out)
    }

    pub fn generator(index: usize) -> Self {
        Self(vec![index as i32 + 1])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self::new(self.0.iter().chain(&other.0).copied())
    }

    pub fn pow(&self, exponent: i64) -> Self {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let letters: Vec<i32> = (0..exponent.unsigned_abs()).flat_map(|_| base.0.iter().copied()).collect();
        Self::new(letters)
    }

    /// `x y x^-1 y^-1`.
    pub fn commutator(x: &Self, y: &Self) -> Self {
        x.concat(y).concat(&x.inverse()).concat(&y.inverse())
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut sums = vec![0i64; generators];
        for &l in &self.0 {
            sums[l.unsigned_abs() as usize - 1] += i64::from(l.signum());
        }
        sums
    }

    fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }
}

/// `<generators | relators>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Generators are named `x0, x1, ...` unless names are supplied separately.
    pub fn new(generator_count: usize, relators: Vec<Word>) -> Result<Self> {
        let names = (0..generator_count).map(|i| format!("x{i}")).collect();
        Self::with_names(names, relators)
    }

    pub fn with_names(names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidPresentation("at least one generator is required".into()));
        }
        if let Some(w) = relators.iter().find(|w| w.max_generator() > names.len()) {
            return Err(Error::InvalidPresentation(format!(
                "relator uses generator {} but only {} exist",
                w.max_generator(),
                names.len()
            )));
        }
        let relators = relators.into_iter().map(|w| Word::new(w.0)).collect();
        Ok(Self { names, relators })
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Parse `a,b,c ; [a,b]c^-5, [a,c], [b,c]`.
    ///
    /// Words are products of generator names, `x^k` powers, commutators
    /// `[u,v]`, parenthesised groups `(u)^k`, and `u = v` relations. A name that
    /// is not a generator but spells several single-letter generators is
    /// split, so `ab` reads as `a b`.
    pub fn parse(text: &str) -> Result<Self> {
        let (gens, rels) = text.split_once(';').unwrap_or((text, ""));
        let names: Vec<String> = gens.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::Parse(format!("bad generator name {name:?}")));
            }
            if names[..i].contains(name) {
                return Err(Error::Parse(format!("duplicate generator {name:?}")));
            }
        }
        if names.is_empty() {
            return Err(Error::Parse("no generators".into()));
        }
        let mut parser = WordParser { src: rels.as_bytes(), pos: 0, names: &names };
        let relators = parser.relator_list()?;
        Self::with_names(names, relators)
    }

    /// Relator exponent-sum matrix: one row per relator, one column per generator.
    pub fn relation_matrix(&self) -> SparseMatrix {
        let n = self.generator_count();
        let triplets = self.relators.iter().enumerate().flat_map(|(r, w)| {
            w.exponent_sums(n).into_iter().enumerate().filter(|(_, v)| *v != 0).map(move |(c, v)| (r, c, v))
        });
        SparseMatrix::from_triplets(self.relators.len(), n, triplets)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ;", self.names.join(","))?;
        for (i, w) in self.relators.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            if w.0.is_empty() {
                f.write_str("1")?;
            }
            // Runs of one letter print as a power.
            for (j, run) in w.0.chunk_by(|a, b| a == b).enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                let l = run[0];
                let name = &self.names[l.unsigned_abs() as usize - 1];
                let exponent = run.len() as i64 * i64::from(l.signum());
                if exponent == 1 {
                    f.write_str(name)?;
                } else {
                    write!(f, "{name}^{exponent}")?;
                }
            }
        }
        Ok(())
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct WordParser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [String],
}

impl WordParser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", byte as char)))
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} of relator list", self.pos))
    }

    fn relator_list(&mut self) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        if self.peek().is_none() {
            return Ok(out);
        }
        loop {
            let lhs = self.product()?;
            let word = if self.peek() == Some(b'=') {
                self.pos += 1;
                let rhs = self.product()?;
                lhs.concat(&rhs.inverse())
            } else {
                lhs
            };
            out.push(word);
            match self.peek() {
                None => return Ok(out),
                Some(b',') => self.pos += 1,
                Some(_) => return Err(self.error("unexpected character")),
            }
        }
    }

    /// A possibly empty juxtaposition of factors.
    fn product(&mut self) -> Result<Word> {
        let mut word = Word::default();
        loop {
            match self.peek() {
                Some(b'[') | Some(b'(') => {}
                Some(c) if c.is_ascii_alphabetic() => {}
                Some(b'1') => {
                    self.pos += 1;
                    continue;
                }
                Some(b'*') => {
                    self.pos += 1;
                    continue;
                }
                _ => return Ok(word),
            }
            let factor = self.factor()?;
            word = word.concat(&factor);
        }
    }

    fn factor(&mut self) -> Result<Word> {
        let base = match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let x = self.product()?;
                self.expect(b',')?;
                let y = self.product()?;
                self.expect(b']')?;
                Word::commutator(&x, &y)
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.product()?;
                self.expect(b')')?;
                w
            }
            _ => self.identifier()?,
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            Ok(base.pow(self.integer()?))
        } else {
            Ok(base)
        }
    }

    fn identifier(&mut self) -> Result<Word> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
            self.pos += 1;
        }
        let ident = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        if let Some(i) = self.names.iter().position(|n| n == ident) {
            return Ok(Word::generator(i));
        }
        // Split into single-letter generators when that is unambiguous.
        let letters: Option<Vec<i32>> = ident
            .chars()
            .map(|c| self.names.iter().position(|n| n.len() == 1 && n.starts_with(c)).map(|i| i as i32 + 1))
            .collect();
        match letters {
            Some(l) if !ident.is_empty() => Ok(Word::new(l)),
            _ => Err(Error::Parse(format!("unknown generator {ident:?}"))),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| self.error("expected an integer exponent"))
    }
}

/// `Z^free_rank + Z/d_1 + ... + Z/d_k` with `d_1 | ... | d_k`, all `d_i > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianizedGroup {
    pub free_rank: usize,
    #[serde(serialize_with = "serialize_factors")]
    pub torsion_factors: Vec<BigInt>,
}

impl AbelianizedGroup {
    pub fn torsion_order(&self) -> BigInt {
        self.torsion_factors.iter().product()
    }
}

impl fmt::Display for AbelianizedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        parts.extend(self.torsion_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

fn serialize_factors<S: Serializer>(factors: &[BigInt], ser: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Factor<'a>(#[serde(serialize_with = "serialize_bigint")] &'a BigInt);
    ser.collect_seq(factors.iter().map(Factor))
}

/// Smith normal form of the exponent-sum matrix.
pub fn abelianization(p: &Presentation) -> AbelianizedGroup {
    let form = smith_normal_form(&p.relation_matrix());
    AbelianizedGroup { free_rank: p.generator_count() - form.rank, torsion_factors: form.torsion() }
}

/// `<a, b, c | [a,b] c^-n, [a,c], [b,c]>`, the lattice of Heisenberg matrices
/// with upper-right corner in `nZ`.
pub fn heisenberg_presentation(n: u64) -> Result<Presentation> {
    if n == 0 {
        return Err(Error::Domain("Heisenberg lattice index n must be >= 1".into()));
    }
    let (a, b, c) = (Word::generator(0), Word::generator(1), Word::generator(2));
    let exponent = i64::try_from(n).map_err(|_| Error::Domain(format!("n = {n} too large")))?;
    let relators =
        vec![Word::commutator(&a, &b).concat(&c.pow(-exponent)), Word::commutator(&a, &c), Word::commutator(&b, &c)];
    Presentation::with_names(vec!["a".into(), "b".into(), "c".into()], relators)
}

/// `<g | g^n>`.
pub fn cyclic_presentation(n: u64) -> Result<Presentation> {
    let exponent = i64::try_from(n).map_err(|_| Error::Domain(format!("n = {n} too large")))?;
    Presentation::with_names(vec!["g".into()], vec![Word::generator(0).pow(exponent)])
}

/// Disjoint union of generators, concatenated relators.
pub fn free_product(p1: &Presentation, p2: &Presentation) -> Presentation {
    let shift = p1.generator_count() as i32;
    let mut names: Vec<String> = p1.names.iter().map(|n| format!("{n}_1")).collect();
    names.extend(p2.names.iter().map(|n| format!("{n}_2")));
    let mut relators = p1.relators.clone();
    relators.extend(p2.relators.iter().map(|w| Word::new(w.0.iter().map(|&l| l + l.signum() * shift))));
    Presentation { names, relators }
}

/// `sum_k k * dim L_k` over the graded pieces of a nilpotent Lie algebra
/// (levels listed from `k = 1`).
pub fn weighted_dimension(level_dims: &[u64]) -> Result<u64> {
    if level_dims.is_empty() {
        return Err(Error::Domain("weighted dimension needs at least one level".into()));
    }
    Ok(level_dims.iter().zip(1u64..).map(|(&d, k)| k * d).sum())
}

/// Certified lower bound on the 1-torsion of a generator of the top homology
/// of a lens space with fundamental group `Z/n`: it is `n`.
pub fn t1_lower_lens(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::Domain(format!("lens space order must be >= 2, got {n}")));
    }
    Ok(n)
}

/// Certified lower bound on the 1-torsion of the fundamental class of the
/// Heisenberg nilmanifold cover `M_n`: it is `n`.
pub fn t1_lower_heisenberg_cover(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("Heisenberg cover index must be >= 1".into()));
    }
    Ok(n)
}

impl AbelianizedGroup {
    /// Direct sum, renormalised into a divisibility chain.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let diagonal: Vec<BigInt> = self.torsion_factors.iter().chain(&other.torsion_factors).cloned().collect();
        let chain = crate::snf::divisibility_chain(diagonal);
        Self {
            free_rank: self.free_rank + other.free_rank,
            torsion_factors: chain.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }
}
