//! Words, *-polynomials, presentations and the normal-form engine.
//!
//! A [`Word`] is a product of generator letters, each optionally starred; an
//! [`Element`] is a finite linear combination of words over a coefficient
//! [`Ring`].  A [`Presentation`] fixes an alphabet and an oriented rewrite
//! system; [`Presentation::normal_form`] rewrites an element until no rule
//! applies.  The shipped rule sets terminate because every rule either
//! strictly reduces the number of letters that are not of diagonal type
//! (`A`, `P`), or keeps it fixed while strictly reducing the number of
//! inverted letter pairs; confluence is certified empirically by the matrix
//! oracles in the test suites rather than by a completion proof, and a step
//! budget guards the engine against malformed custom rule sets.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Exact, Floats, Ring};

/// Upper bound on rewrite steps per `normal_form` call.
pub const DEFAULT_REWRITE_BUDGET: u64 = 1_000_000;

// ---------------------------------------------------------------------------
// Alphabets
// ---------------------------------------------------------------------------

/// The four generator alphabets handled by this crate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum AlgebraId {
    /// Equatorial quantum sphere: generators `A` (self-adjoint) and `B`.
    Equator,
    /// Quantum sphere with finite parameter `c`: generators `Ac`, `Bc`.
    Sphere,
    /// Quantum disc: single generator `x`.
    Disc,
    /// Quantum real projective plane: generators `P` (self-adjoint), `R`, `T`.
    Rp2,
}

/// Static description of one generator.
#[derive(Clone, Copy, Debug)]
pub struct GenInfo {
    pub name: &'static str,
    pub self_adjoint: bool,
    /// How far the generator shifts the basis ladder of the infinite
    /// irreducible representations; drives truncation bookkeeping.
    pub shift_weight: usize,
}

const EQUATOR_GENS: &[GenInfo] = &[
    GenInfo { name: "A", self_adjoint: true, shift_weight: 0 },
    GenInfo { name: "B", self_adjoint: false, shift_weight: 1 },
];
const SPHERE_GENS: &[GenInfo] = &[
    GenInfo { name: "Ac", self_adjoint: true, shift_weight: 0 },
    GenInfo { name: "Bc", self_adjoint: false, shift_weight: 1 },
];
const DISC_GENS: &[GenInfo] = &[
    GenInfo { name: "x", self_adjoint: false, shift_weight: 1 },
];
const RP2_GENS: &[GenInfo] = &[
    GenInfo { name: "P", self_adjoint: true, shift_weight: 0 },
    GenInfo { name: "R", self_adjoint: false, shift_weight: 2 },
    GenInfo { name: "T", self_adjoint: false, shift_weight: 1 },
];

impl AlgebraId {
    pub fn gens(self) -> &'static [GenInfo] {
        match self {
            AlgebraId::Equator => EQUATOR_GENS,
            AlgebraId::Sphere => SPHERE_GENS,
            AlgebraId::Disc => DISC_GENS,
            AlgebraId::Rp2 => RP2_GENS,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AlgebraId::Equator => "equator",
            AlgebraId::Sphere => "sphere",
            AlgebraId::Disc => "disc",
            AlgebraId::Rp2 => "rp2",
        }
    }

    /// Index of a generator by name, if it belongs to this alphabet.
    pub fn gen_index(self, name: &str) -> Option<usize> {
        self.gens().iter().position(|g| g.name == name)
    }
}

// ---------------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------------

/// One letter of a word: a generator index plus a star flag.  Self-adjoint
/// generators always carry `star = false`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Letter {
    pub gen: u8,
    pub star: bool,
}

impl Letter {
    pub fn plain(gen: usize) -> Self {
        Letter { gen: gen as u8, star: false }
    }

    pub fn starred(gen: usize) -> Self {
        Letter { gen: gen as u8, star: true }
    }
}

/// A product of letters; the empty word is the algebra unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Adjoint word: letters reversed, star flags toggled except on
    /// self-adjoint generators.
    pub fn star(&self, algebra: AlgebraId) -> Word {
        let gens = algebra.gens();
        Word(
            self.0
                .iter()
                .rev()
                .map(|l| Letter {
                    gen: l.gen,
                    star: if gens[l.gen as usize].self_adjoint {
                        false
                    } else {
                        !l.star
                    },
                })
                .collect(),
        )
    }

    /// Total ladder shift of the word under the infinite representations.
    pub fn shift_degree(&self, algebra: AlgebraId) -> usize {
        let gens = algebra.gens();
        self.0
            .iter()
            .map(|l| gens[l.gen as usize].shift_weight)
            .sum()
    }

    /// Render with adjoints as `'` and repeated letters folded into powers.
    pub fn display(&self, algebra: AlgebraId) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let gens = algebra.gens();
        let mut parts: Vec<String> = Vec::new();
        let mut run: Option<(Letter, usize)> = None;
        let flush = |run: &mut Option<(Letter, usize)>, parts: &mut Vec<String>| {
            if let Some((l, n)) = run.take() {
                let mut s = gens[l.gen as usize].name.to_string();
                if l.star {
                    s.push('\'');
                }
                if n > 1 {
                    s.push_str(&format!("^{n}"));
                }
                parts.push(s);
            }
        };
        for &l in &self.0 {
            match &mut run {
                Some((prev, n)) if *prev == l => *n += 1,
                _ => {
                    flush(&mut run, &mut parts);
                    run = Some((l, 1));
                }
            }
        }
        flush(&mut run, &mut parts);
        parts.join("*")
    }
}

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

/// A *-polynomial: finite linear combination of words with coefficients in
/// the ring `R`, tagged with its alphabet and coefficient context.
#[derive(Clone, PartialEq, Debug)]
pub struct Element<R: Ring> {
    ring: R,
    algebra: AlgebraId,
    terms: BTreeMap<Word, R::Elem>,
}

impl<R: Ring> Element<R> {
    pub fn zero(ring: R, algebra: AlgebraId) -> Self {
        Element { ring, algebra, terms: BTreeMap::new() }
    }

    pub fn one(ring: R, algebra: AlgebraId) -> Self {
        let k = ring.one();
        Self::from_word(ring, algebra, Word::empty(), k)
    }

    pub fn constant(ring: R, algebra: AlgebraId, k: R::Elem) -> Self {
        Self::from_word(ring, algebra, Word::empty(), k)
    }

    pub fn from_word(ring: R, algebra: AlgebraId, word: Word, coeff: R::Elem) -> Self {
        let mut terms = BTreeMap::new();
        if !ring.is_zero(&coeff) {
            terms.insert(word, coeff);
        }
        Element { ring, algebra, terms }
    }

    /// The plain generator with the given index.
    pub fn generator(ring: R, algebra: AlgebraId, gen: usize) -> Result<Self> {
        if gen >= algebra.gens().len() {
            return Err(Error::UnknownGenerator(format!(
                "generator index {gen} in algebra {}",
                algebra.name()
            )));
        }
        let k = ring.one();
        Ok(Self::from_word(ring, algebra, Word(vec![Letter::plain(gen)]), k))
    }

    /// Look up a generator by name (`"A"`, `"Bc"`, `"x"`, ...).
    pub fn generator_named(ring: R, algebra: AlgebraId, name: &str) -> Result<Self> {
        let gen = algebra
            .gen_index(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Self::generator(ring, algebra, gen)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &R::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, word: &Word) -> Option<&R::Elem> {
        self.terms.get(word)
    }

    /// True when no terms are stored (structural zero).
    pub fn is_structurally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every coefficient is negligible for the ring's tolerance.
    pub fn is_negligible(&self) -> bool {
        self.terms.values().all(|k| self.ring.is_negligible(k))
    }

    /// Largest shift degree among the stored words.
    pub fn shift_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|w| w.shift_degree(self.algebra))
            .max()
            .unwrap_or(0)
    }

    /// Check that two elements share algebra and coefficient context.
    pub fn compatible(&self, other: &Self) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::AlphabetMismatch {
                expected: self.algebra.name().into(),
                got: other.algebra.name().into(),
            });
        }
        if self.ring != other.ring {
            return Err(Error::BackendMismatch(format!(
                "{} vs {}",
                self.ring.describe(),
                other.ring.describe()
            )));
        }
        Ok(())
    }

    fn assert_compatible(&self, other: &Self) {
        if let Err(e) = self.compatible(other) {
            panic!("incompatible elements: {e}");
        }
    }

    /// Adjoint: reverses each word, toggles stars, conjugates coefficients.
    pub fn star(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (w, k) in &self.terms {
            terms.insert(w.star(self.algebra), self.ring.conj(k));
        }
        Element { ring: self.ring.clone(), algebra: self.algebra, terms }
    }

    /// Scalar multiple.
    pub fn scale(&self, k: &R::Elem) -> Self {
        let mut terms = BTreeMap::new();
        for (w, v) in &self.terms {
            let kv = self.ring.mul(k, v);
            if !self.ring.is_zero(&kv) {
                terms.insert(w.clone(), kv);
            }
        }
        Element { ring: self.ring.clone(), algebra: self.algebra, terms }
    }

    /// Nonnegative integer power.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Element::one(self.ring.clone(), self.algebra);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    fn from_map(ring: R, algebra: AlgebraId, mut terms: BTreeMap<Word, R::Elem>) -> Self {
        terms.retain(|_, v| !ring.is_zero(v));
        Element { ring, algebra, terms }
    }
}

impl Element<Exact> {
    /// Lower an exact element into a float context by evaluating every
    /// coefficient at the context's numeric `q` (and `c`, if involved).
    pub fn to_float(&self, ring: Floats) -> Result<Element<Floats>> {
        let mut terms = BTreeMap::new();
        for (w, k) in &self.terms {
            let v = k.eval(ring.q, ring.c)?;
            if !Ring::is_zero(&ring, &v) {
                terms.insert(w.clone(), v);
            }
        }
        Ok(Element { ring, algebra: self.algebra, terms })
    }
}

impl Element<Floats> {
    /// Largest coefficient magnitude; `0` for the zero element.
    pub fn max_abs(&self) -> f64 {
        self.terms
            .values()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

impl<R: Ring> std::ops::Add for &Element<R> {
    type Output = Element<R>;
    fn add(self, rhs: &Element<R>) -> Element<R> {
        self.assert_compatible(rhs);
        let ring = self.ring.clone();
        let mut terms = self.terms.clone();
        for (w, k) in &rhs.terms {
            match terms.get_mut(w) {
                Some(v) => *v = ring.add(v, k),
                None => {
                    terms.insert(w.clone(), k.clone());
                }
            }
        }
        Element::from_map(ring, self.algebra, terms)
    }
}

impl<R: Ring> std::ops::Sub for &Element<R> {
    type Output = Element<R>;
    fn sub(self, rhs: &Element<R>) -> Element<R> {
        self + &(-rhs)
    }
}

impl<R: Ring> std::ops::Neg for &Element<R> {
    type Output = Element<R>;
    fn neg(self) -> Element<R> {
        let ring = self.ring.clone();
        let terms = self
            .terms
            .iter()
            .map(|(w, k)| (w.clone(), ring.neg(k)))
            .collect();
        Element { ring, algebra: self.algebra, terms }
    }
}

impl<R: Ring> std::ops::Mul for &Element<R> {
    type Output = Element<R>;
    // The `+` below sizes a buffer; it is not part of the product.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &Element<R>) -> Element<R> {
        self.assert_compatible(rhs);
        let ring = self.ring.clone();
        let mut terms: BTreeMap<Word, R::Elem> = BTreeMap::new();
        for (wa, ka) in &self.terms {
            for (wb, kb) in &rhs.terms {
                let mut letters = Vec::with_capacity(wa.len() + wb.len());
                letters.extend_from_slice(&wa.0);
                letters.extend_from_slice(&wb.0);
                let w = Word(letters);
                let prod = ring.mul(ka, kb);
                match terms.get_mut(&w) {
                    Some(v) => *v = ring.add(v, &prod),
                    None => {
                        terms.insert(w, prod);
                    }
                }
            }
        }
        Element::from_map(ring, self.algebra, terms)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl<R: Ring> std::ops::$trait for Element<R> {
            type Output = Element<R>;
            fn $method(self, rhs: Element<R>) -> Element<R> {
                (&self).$method(&rhs)
            }
        }
        impl<R: Ring> std::ops::$trait<&Element<R>> for Element<R> {
            type Output = Element<R>;
            fn $method(self, rhs: &Element<R>) -> Element<R> {
                (&self).$method(rhs)
            }
        }
        impl<R: Ring> std::ops::$trait<Element<R>> for &Element<R> {
            type Output = Element<R>;
            fn $method(self, rhs: Element<R>) -> Element<R> {
                self.$method(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<R: Ring> std::ops::Neg for Element<R> {
    type Output = Element<R>;
    fn neg(self) -> Element<R> {
        -&self
    }
}

impl<R: Ring> fmt::Display for Element<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Sort by (length, letters) so constants print first.
        let mut entries: Vec<(&Word, &R::Elem)> = self.terms.iter().collect();
        entries.sort_by_key(|(w, _)| (w.len(), (*w).clone()));
        let one = self.ring.one();
        let mut first = true;
        for (w, k) in entries {
            let (neg, k_disp) = match self.ring.display_negated(k) {
                Some(nk) => (true, nk),
                None => (false, k.clone()),
            };
            let coeff_is_one = k_disp == one;
            let body = if w.is_empty() {
                self.ring.fmt_elem(&k_disp)
            } else if coeff_is_one {
                w.display(self.algebra)
            } else {
                format!(
                    "{}*{}",
                    self.ring.fmt_elem(&k_disp),
                    w.display(self.algebra)
                )
            };
            if first {
                if neg {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if neg {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Presentations and rewriting
// ---------------------------------------------------------------------------

/// An oriented rewrite rule `lhs → rhs`, where `lhs` is a word and `rhs` an
/// element of the same algebra.
#[derive(Clone, Debug)]
pub struct Rule<R: Ring> {
    pub label: String,
    pub lhs: Word,
    pub rhs: Element<R>,
}

/// An algebra presentation: alphabet plus oriented rewrite system.
#[derive(Clone, Debug)]
pub struct Presentation<R: Ring> {
    pub name: String,
    algebra: AlgebraId,
    ring: R,
    rules: Vec<Rule<R>>,
    budget: u64,
}

impl<R: Ring> Presentation<R> {
    pub fn new(
        name: impl Into<String>,
        algebra: AlgebraId,
        ring: R,
        rules: Vec<Rule<R>>,
    ) -> Self {
        for rule in &rules {
            assert_eq!(
                rule.rhs.algebra(),
                algebra,
                "rule rhs belongs to a different algebra"
            );
            assert!(!rule.lhs.is_empty(), "rule lhs must be a nonempty word");
        }
        Presentation {
            name: name.into(),
            algebra,
            ring,
            rules,
            budget: DEFAULT_REWRITE_BUDGET,
        }
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rules(&self) -> &[Rule<R>] {
        &self.rules
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn set_budget(&mut self, budget: u64) {
        self.budget = budget;
    }

    /// The defining relations as elements `lhs - rhs` (each normalizes to
    /// zero by construction; their stars and products are the real tests).
    pub fn relation_elements(&self) -> Vec<(String, Element<R>)> {
        self.rules
            .iter()
            .map(|r| {
                let lhs = Element::from_word(
                    self.ring.clone(),
                    self.algebra,
                    r.lhs.clone(),
                    self.ring.one(),
                );
                (r.label.clone(), &lhs - &r.rhs)
            })
            .collect()
    }

    fn find_redex(&self, w: &Word) -> Option<(usize, usize)> {
        for pos in 0..w.len() {
            for (ri, rule) in self.rules.iter().enumerate() {
                let l = rule.lhs.len();
                if pos + l <= w.len() && w.0[pos..pos + l] == rule.lhs.0[..] {
                    return Some((pos, ri));
                }
            }
        }
        None
    }

    /// Rewrite to normal form: repeatedly replace the leftmost redex until
    /// every word avoids all rule left-hand sides.
    pub fn normal_form(&self, a: &Element<R>) -> Result<Element<R>> {
        if a.algebra() != self.algebra {
            return Err(Error::AlphabetMismatch {
                expected: self.algebra.name().into(),
                got: a.algebra().name().into(),
            });
        }
        if a.ring() != &self.ring {
            return Err(Error::BackendMismatch(format!(
                "{} vs {}",
                self.ring.describe(),
                a.ring().describe()
            )));
        }
        let ring = &self.ring;
        let mut out: BTreeMap<Word, R::Elem> = BTreeMap::new();
        let mut stack: Vec<(Word, R::Elem)> =
            a.terms.iter().map(|(w, k)| (w.clone(), k.clone())).collect();
        let mut steps: u64 = 0;
        while let Some((w, k)) = stack.pop() {
            if ring.is_zero(&k) {
                continue;
            }
            match self.find_redex(&w) {
                None => match out.get_mut(&w) {
                    Some(v) => *v = ring.add(v, &k),
                    None => {
                        out.insert(w, k);
                    }
                },
                Some((pos, ri)) => {
                    steps += 1;
                    if steps > self.budget {
                        return Err(Error::RewriteBudget {
                            steps,
                            budget: self.budget,
                        });
                    }
                    let rule = &self.rules[ri];
                    let l = rule.lhs.len();
                    for (rw, rk) in rule.rhs.terms() {
                        let mut letters =
                            Vec::with_capacity(w.len() - l + rw.len());
                        letters.extend_from_slice(&w.0[..pos]);
                        letters.extend_from_slice(&rw.0);
                        letters.extend_from_slice(&w.0[pos + l..]);
                        stack.push((Word(letters), ring.mul(&k, rk)));
                    }
                }
            }
        }
        Ok(Element::from_map(ring.clone(), self.algebra, out))
    }

    /// Equality in the presented algebra: the difference normalizes to a
    /// negligible element (exact zero on the exact backend).
    pub fn equals(&self, a: &Element<R>, b: &Element<R>) -> Result<bool> {
        let diff = self.normal_form(&(a - b))?;
        Ok(diff.is_negligible())
    }

    /// Whether a word is already in normal form for the shipped rule sets.
    pub fn is_basis_word(&self, w: &Word) -> bool {
        self.find_redex(w).is_none()
    }
}

// ---------------------------------------------------------------------------
// Star-homomorphisms
// ---------------------------------------------------------------------------

/// A unital *-homomorphism given by generator images in a target
/// presentation.  Application normalizes in the target.
#[derive(Clone, Debug)]
pub struct StarHom<R: Ring> {
    pub name: String,
    source: Presentation<R>,
    target: Presentation<R>,
    images: Vec<Element<R>>,
}

impl<R: Ring> StarHom<R> {
    pub fn new(
        name: impl Into<String>,
        source: Presentation<R>,
        target: Presentation<R>,
        images: Vec<Element<R>>,
    ) -> Result<Self> {
        let n = source.algebra().gens().len();
        if images.len() != n {
            return Err(Error::InvalidParams(format!(
                "expected {n} generator images, got {}",
                images.len()
            )));
        }
        for img in &images {
            if img.algebra() != target.algebra() {
                return Err(Error::AlphabetMismatch {
                    expected: target.algebra().name().into(),
                    got: img.algebra().name().into(),
                });
            }
            if img.ring() != target.ring() {
                return Err(Error::BackendMismatch(format!(
                    "{} vs {}",
                    target.ring().describe(),
                    img.ring().describe()
                )));
            }
        }
        Ok(StarHom { name: name.into(), source, target, images })
    }

    pub fn identity(pres: &Presentation<R>) -> Self {
        let images = (0..pres.algebra().gens().len())
            .map(|g| {
                Element::generator(pres.ring().clone(), pres.algebra(), g)
                    .expect("generator index in range")
            })
            .collect();
        StarHom {
            name: "id".into(),
            source: pres.clone(),
            target: pres.clone(),
            images,
        }
    }

    pub fn source(&self) -> &Presentation<R> {
        &self.source
    }

    pub fn target(&self) -> &Presentation<R> {
        &self.target
    }

    /// Image of the `gen`-th plain generator.
    pub fn image(&self, gen: usize) -> &Element<R> {
        &self.images[gen]
    }

    fn letter_image(&self, l: Letter) -> Element<R> {
        let img = &self.images[l.gen as usize];
        if l.star {
            img.star()
        } else {
            img.clone()
        }
    }

    /// Apply to an element of the source algebra; the result is normalized
    /// in the target presentation.
    pub fn apply(&self, a: &Element<R>) -> Result<Element<R>> {
        if a.algebra() != self.source.algebra() {
            return Err(Error::AlphabetMismatch {
                expected: self.source.algebra().name().into(),
                got: a.algebra().name().into(),
            });
        }
        let ring = self.target.ring().clone();
        let alg = self.target.algebra();
        let mut acc = Element::zero(ring.clone(), alg);
        for (w, k) in a.terms() {
            let mut prod = Element::one(ring.clone(), alg);
            for &l in &w.0 {
                prod = &prod * &self.letter_image(l);
            }
            acc = &acc + &prod.scale(k);
        }
        self.target.normal_form(&acc)
    }

    /// Residuals `h(lhs) - h(rhs)`, normalized in the target, for every
    /// defining relation of the source.  All must be negligible for the map
    /// to be a well-defined *-homomorphism.
    pub fn relation_residuals(&self) -> Result<Vec<(String, Element<R>)>> {
        let mut out = Vec::new();
        for (label, rel) in self.source.relation_elements() {
            out.push((label, self.apply(&rel)?));
        }
        Ok(out)
    }

    /// True when every relation residual is negligible.
    pub fn check(&self) -> Result<bool> {
        Ok(self
            .relation_residuals()?
            .iter()
            .all(|(_, r)| r.is_negligible()))
    }

    /// Composition `g ∘ f` (apply `f` first).
    pub fn compose(name: impl Into<String>, g: &Self, f: &Self) -> Result<Self> {
        if f.target.algebra() != g.source.algebra() {
            return Err(Error::AlphabetMismatch {
                expected: g.source.algebra().name().into(),
                got: f.target.algebra().name().into(),
            });
        }
        let images = f
            .images
            .iter()
            .map(|img| g.apply(img))
            .collect::<Result<Vec<_>>>()?;
        StarHom::new(name, f.source.clone(), g.target.clone(), images)
    }
}
