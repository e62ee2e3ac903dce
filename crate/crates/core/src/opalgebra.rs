//! Noncommutative polynomials in canonical generators with central
//! commutators, kept in a canonical normal-ordered form.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Param, ParamScalar};

/// Tensor factor a generator lives in. Different sectors always commute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sector {
    Quantum,
    /// Second quantum particle, used by the two-particle checks.
    Quantum2,
    Classical,
    Classical2,
}

impl Sector {
    pub fn is_quantum(self) -> bool {
        matches!(self, Sector::Quantum | Sector::Quantum2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Position,
    Momentum,
    LambdaQ,
    LambdaP,
}

impl Kind {
    pub fn is_lambda(self) -> bool {
        matches!(self, Kind::LambdaQ | Kind::LambdaP)
    }
}

/// One Cartesian component of a canonical operator. The derived ordering
/// (sector, kind, axis) is the global normal order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub sector: Sector,
    pub kind: Kind,
    pub axis: u8,
}

impl Generator {
    pub fn new(sector: Sector, kind: Kind, axis: u8) -> Result<Self> {
        if !(1..=3).contains(&axis) {
            return Err(Error::InvalidGenerator(format!("axis {axis} out of range 1..=3")));
        }
        if sector.is_quantum() && kind.is_lambda() {
            return Err(Error::InvalidGenerator(format!("{kind:?} is not a quantum-sector operator")));
        }
        Ok(Generator { sector, kind, axis })
    }

    fn raw(sector: Sector, kind: Kind, axis: u8) -> Self {
        Generator::new(sector, kind, axis).expect("valid generator")
    }

    /// Quantum position `r_i`.
    pub fn r(axis: u8) -> Self {
        Self::raw(Sector::Quantum, Kind::Position, axis)
    }
    /// Quantum momentum `k_i`.
    pub fn k(axis: u8) -> Self {
        Self::raw(Sector::Quantum, Kind::Momentum, axis)
    }
    pub fn q(axis: u8) -> Self {
        Self::raw(Sector::Classical, Kind::Position, axis)
    }
    pub fn p(axis: u8) -> Self {
        Self::raw(Sector::Classical, Kind::Momentum, axis)
    }
    pub fn lq(axis: u8) -> Self {
        Self::raw(Sector::Classical, Kind::LambdaQ, axis)
    }
    pub fn lp(axis: u8) -> Self {
        Self::raw(Sector::Classical, Kind::LambdaP, axis)
    }

    /// Every valid generator, in normal order.
    pub fn all() -> Vec<Generator> {
        let mut out = Vec::new();
        for sector in [Sector::Quantum, Sector::Quantum2, Sector::Classical, Sector::Classical2] {
            for kind in [Kind::Position, Kind::Momentum, Kind::LambdaQ, Kind::LambdaP] {
                for axis in 1..=3 {
                    if let Ok(g) = Generator::new(sector, kind, axis) {
                        out.push(g);
                    }
                }
            }
        }
        out
    }

    /// ASCII spelling used by the expression language, without the index.
    pub fn stem(&self) -> &'static str {
        match (self.sector, self.kind) {
            (Sector::Quantum, Kind::Position) => "r",
            (Sector::Quantum, Kind::Momentum) => "k",
            (Sector::Quantum2, Kind::Position) => "r2",
            (Sector::Quantum2, Kind::Momentum) => "k2",
            (Sector::Classical, Kind::Position) => "q",
            (Sector::Classical, Kind::Momentum) => "p",
            (Sector::Classical, Kind::LambdaQ) => "lq",
            (Sector::Classical, Kind::LambdaP) => "lp",
            (Sector::Classical2, Kind::Position) => "q2",
            (Sector::Classical2, Kind::Momentum) => "p2",
            (Sector::Classical2, Kind::LambdaQ) => "lq2",
            (Sector::Classical2, Kind::LambdaP) => "lp2",
            _ => unreachable!("quantum lambda generators are never constructed"),
        }
    }

    pub fn from_stem(stem: &str, axis: u8) -> Result<Self> {
        let (sector, kind) = match stem {
            "r" => (Sector::Quantum, Kind::Position),
            "k" => (Sector::Quantum, Kind::Momentum),
            "r2" => (Sector::Quantum2, Kind::Position),
            "k2" => (Sector::Quantum2, Kind::Momentum),
            "q" => (Sector::Classical, Kind::Position),
            "p" => (Sector::Classical, Kind::Momentum),
            "lq" => (Sector::Classical, Kind::LambdaQ),
            "lp" => (Sector::Classical, Kind::LambdaP),
            "q2" => (Sector::Classical2, Kind::Position),
            "p2" => (Sector::Classical2, Kind::Momentum),
            "lq2" => (Sector::Classical2, Kind::LambdaQ),
            "lp2" => (Sector::Classical2, Kind::LambdaP),
            _ => return Err(Error::InvalidGenerator(format!("unknown generator `{stem}`"))),
        };
        Generator::new(sector, kind, axis)
    }

    pub fn unicode(&self) -> String {
        let base = match self.kind {
            Kind::Position if self.sector.is_quantum() => "r",
            Kind::Momentum if self.sector.is_quantum() => "k",
            Kind::Position => "q",
            Kind::Momentum => "p",
            Kind::LambdaQ => "λq",
            Kind::LambdaP => "λp",
        };
        let prime = if matches!(self.sector, Sector::Quantum2 | Sector::Classical2) { "′" } else { "" };
        let sub = ['₀', '₁', '₂', '₃'][self.axis as usize];
        format!("{base}{prime}{sub}")
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.stem(), self.axis)
    }
}

/// Central commutators `[a, b] = c·𝟙` between generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationTable {
    entries: BTreeMap<(Generator, Generator), ParamScalar>,
}

impl Default for CommutationTable {
    /// Canonical relations with ħ = 1: `[r_i, k_j] = [q_i, λq_j] = [p_i, λp_j] = iδ_ij`,
    /// everything else (in particular every cross-sector pair) zero.
    fn default() -> Self {
        let mut table = CommutationTable { entries: BTreeMap::new() };
        for sector in [Sector::Quantum, Sector::Quantum2, Sector::Classical, Sector::Classical2] {
            for axis in 1..=3 {
                if sector.is_quantum() {
                    table.set(
                        Generator::raw(sector, Kind::Position, axis),
                        Generator::raw(sector, Kind::Momentum, axis),
                        ParamScalar::i(),
                    );
                } else {
                    table.set(
                        Generator::raw(sector, Kind::Position, axis),
                        Generator::raw(sector, Kind::LambdaQ, axis),
                        ParamScalar::i(),
                    );
                    table.set(
                        Generator::raw(sector, Kind::Momentum, axis),
                        Generator::raw(sector, Kind::LambdaP, axis),
                        ParamScalar::i(),
                    );
                }
            }
        }
        table
    }
}

impl CommutationTable {
    /// Shared instance of the default table.
    pub fn standard() -> &'static CommutationTable {
        static TABLE: OnceLock<CommutationTable> = OnceLock::new();
        TABLE.get_or_init(CommutationTable::default)
    }

    /// Set `[a, b] = c`; the antisymmetric partner is implied.
    pub fn set(&mut self, a: Generator, b: Generator, c: ParamScalar) {
        if a == b {
            return;
        }
        let (key, val) = if a < b { ((a, b), c) } else { ((b, a), -&c) };
        if val.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, val);
        }
    }

    pub fn bracket(&self, a: Generator, b: Generator) -> ParamScalar {
        if a < b {
            self.entries.get(&(a, b)).cloned().unwrap_or_default()
        } else {
            self.entries.get(&(b, a)).map(|c| -c).unwrap_or_default()
        }
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (&(Generator, Generator), &ParamScalar)> {
        self.entries.iter()
    }
}

/// A normal-ordered product of generators with positive exponents.
///
/// Ordered by total degree first, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Generator, u32)>);

impl Monomial {
    pub fn identity() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_generator(g: Generator) -> Self {
        Monomial(vec![(g, 1)])
    }

    /// Build from factors that are already in normal order (repeats merged).
    pub fn from_sorted(factors: Vec<(Generator, u32)>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        Monomial(factors.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    /// Commutative monomial from an unordered list of generators.
    pub fn from_multiset(gens: &[Generator]) -> Self {
        let mut counts: BTreeMap<Generator, u32> = BTreeMap::new();
        for g in gens {
            *counts.entry(*g).or_default() += 1;
        }
        Monomial(counts.into_iter().collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, g: Generator) -> u32 {
        self.0.iter().find(|(h, _)| *h == g).map_or(0, |(_, e)| *e)
    }

    /// Degree counted over generators satisfying `pred`.
    pub fn degree_where(&self, pred: impl Fn(Generator) -> bool) -> u32 {
        self.0.iter().filter(|(g, _)| pred(*g)).map(|(_, e)| e).sum()
    }

    /// The generator word this monomial stands for.
    pub fn word(&self) -> Vec<Generator> {
        self.0.iter().flat_map(|(g, e)| std::iter::repeat_n(*g, *e as usize)).collect()
    }

    fn with_exponent_delta(&self, g: Generator, delta: i64) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        let mut placed = false;
        for &(h, e) in &self.0 {
            if !placed && h >= g {
                placed = true;
                if h == g {
                    let ne = e as i64 + delta;
                    if ne > 0 {
                        out.push((h, ne as u32));
                    }
                    continue;
                }
                if delta > 0 {
                    out.push((g, delta as u32));
                }
            }
            out.push((h, e));
        }
        if !placed && delta > 0 {
            out.push((g, delta as u32));
        }
        Monomial(out)
    }

    /// `self · g` expanded in normal order.
    fn times_generator(&self, g: Generator, table: &CommutationTable) -> Vec<(Monomial, ParamScalar)> {
        let mut out = vec![(self.with_exponent_delta(g, 1), ParamScalar::one())];
        // Moving g left past each larger factor x^n leaves n·[x, g]·x^(n-1).
        for &(x, n) in self.0.iter().filter(|(x, _)| *x > g) {
            let c = table.bracket(x, g);
            if !c.is_zero() {
                out.push((self.with_exponent_delta(x, -1), c.scale(&GaussianRational::from_integer(n as i64))));
            }
        }
        out
    }

    /// Partial derivative with respect to a generator, treating the monomial
    /// as commutative. Returns the multiplicity and the reduced monomial.
    pub fn derivative(&self, g: Generator) -> Option<(u32, Monomial)> {
        let e = self.exponent(g);
        (e > 0).then(|| (e, self.with_exponent_delta(g, -1)))
    }

    pub fn unicode(&self) -> String {
        const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
        let mut s = String::new();
        for (g, e) in &self.0 {
            s.push_str(&g.unicode());
            if *e > 1 {
                for d in e.to_string().chars() {
                    s.push(SUP[d.to_digit(10).unwrap() as usize]);
                }
            }
        }
        s
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        // Graded lex: earlier generators weigh more.
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                if a.0 != b.0 {
                    return if a.0 < b.0 { Ordering::Greater } else { Ordering::Less };
                }
                if a.1 != b.1 {
                    return a.1.cmp(&b.1);
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> =
            self.0.iter().map(|(g, e)| if *e == 1 { g.to_string() } else { format!("{g}^{e}") }).collect();
        f.write_str(&parts.join("*"))
    }
}

/// Finite sum of normal-ordered monomials with nonzero [`ParamScalar`]
/// coefficients. Equality of operators is equality of this canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct OperatorExpr {
    terms: BTreeMap<Monomial, ParamScalar>,
}

impl OperatorExpr {
    pub fn zero() -> Self {
        OperatorExpr::default()
    }

    pub fn identity() -> Self {
        Self::scalar(ParamScalar::one())
    }

    pub fn scalar(c: ParamScalar) -> Self {
        Self::term(Monomial::identity(), c)
    }

    pub fn param(p: Param) -> Self {
        Self::scalar(ParamScalar::param(p))
    }

    pub fn generator(g: Generator) -> Self {
        Self::term(Monomial::from_generator(g), ParamScalar::one())
    }

    pub fn term(m: Monomial, c: ParamScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        OperatorExpr { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, ParamScalar)>) -> Self {
        let mut out = OperatorExpr::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ParamScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> ParamScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// `Some(c)` when the operator is `c·𝟙` (zero included).
    pub fn as_scalar(&self) -> Option<ParamScalar> {
        match self.terms.len() {
            0 => Some(ParamScalar::zero()),
            1 => self.terms.iter().next().filter(|(m, _)| m.is_identity()).map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.terms.keys().flat_map(|m| m.factors().iter().map(|(g, _)| *g)).collect()
    }

    pub fn contains_lambda(&self) -> bool {
        self.generators().iter().any(|g| g.kind.is_lambda())
    }

    fn add_term(&mut self, m: Monomial, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        OperatorExpr { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Normal form of `coeff · g_1 g_2 … g_n`.
    pub fn normal_form(word: &[Generator], coeff: ParamScalar) -> Self {
        Self::normal_form_in(word, coeff, CommutationTable::standard())
    }

    pub fn normal_form_in(word: &[Generator], coeff: ParamScalar, table: &CommutationTable) -> Self {
        let mut acc = OperatorExpr::scalar(coeff);
        for &g in word {
            acc = acc.times_generator(g, table);
        }
        acc
    }

    fn times_generator(&self, g: Generator, table: &CommutationTable) -> Self {
        let mut out = OperatorExpr::zero();
        for (m, c) in &self.terms {
            for (m2, c2) in m.times_generator(g, table) {
                out.add_term(m2, c * &c2);
            }
        }
        out
    }

    /// Product with an explicit commutation table.
    pub fn mul_in(&self, other: &OperatorExpr, table: &CommutationTable) -> Self {
        let mut out = OperatorExpr::zero();
        let mut cache: HashMap<(&Monomial, &Monomial), OperatorExpr> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = cache.entry((ma, mb)).or_insert_with(|| {
                    let mut acc = OperatorExpr::term(ma.clone(), ParamScalar::one());
                    for g in mb.word() {
                        acc = acc.times_generator(g, table);
                    }
                    acc
                });
                let c = ca * cb;
                for (m, v) in &prod.terms {
                    out.add_term(m.clone(), &c * v);
                }
            }
        }
        out
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &OperatorExpr) -> Self {
        &(self * other) - &(other * self)
    }

    /// Hermitian adjoint: conjugate coefficients, reverse words, re-order.
    pub fn adjoint(&self) -> Self {
        let table = CommutationTable::standard();
        let mut out = OperatorExpr::zero();
        for (m, c) in &self.terms {
            let mut word = m.word();
            word.reverse();
            let part = OperatorExpr::normal_form_in(&word, c.conj(), table);
            for (mm, cc) in part.terms {
                out.add_term(mm, cc);
            }
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        self.adjoint() == *self
    }

    /// `(X + X†)/2`.
    pub fn hermitian_part(&self) -> Self {
        (self + &self.adjoint()).scale(&ParamScalar::ratio(1, 2))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = OperatorExpr::identity();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Evaluate coefficients at the given parameter values.
    pub fn substitute_params(&self, bindings: &HashMap<Param, BigRational>) -> Result<Self> {
        let mut out = OperatorExpr::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.substitute(bindings)?);
        }
        Ok(out)
    }

    /// Apply `f` to every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&ParamScalar) -> ParamScalar) -> Self {
        OperatorExpr::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Unicode rendering, e.g. `q₁λq₁ − i·𝟙`.
    pub fn unicode(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = split_sign(c);
            if idx == 0 {
                if neg {
                    out.push('−');
                }
            } else {
                out.push_str(if neg { " − " } else { " + " });
            }
            let coeff = if mag.is_one() {
                String::new()
            } else if mag.is_atomic() {
                mag.to_string().replace('*', "·")
            } else {
                format!("({})", mag.to_string().replace('*', "·"))
            };
            if m.is_identity() {
                if coeff.is_empty() {
                    out.push('𝟙');
                } else {
                    out.push_str(&coeff);
                    out.push_str("·𝟙");
                }
            } else {
                if !coeff.is_empty() {
                    out.push_str(&coeff);
                    out.push('·');
                }
                out.push_str(&m.unicode());
            }
        }
        out.replace("-", "−")
    }
}

/// Split off a leading minus sign when the coefficient prints with one.
fn split_sign(c: &ParamScalar) -> (bool, ParamScalar) {
    if c.to_string().starts_with('-') {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

impl fmt::Display for OperatorExpr {
    /// ASCII rendering in the expression language; re-parses to `self`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = split_sign(c);
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_identity() {
                if mag.is_atomic() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else if mag.is_atomic() {
                write!(f, "{mag}*{m}")?;
            } else {
                write!(f, "({mag})*{m}")?;
            }
        }
        Ok(())
    }
}

impl From<Generator> for OperatorExpr {
    fn from(g: Generator) -> Self {
        OperatorExpr::generator(g)
    }
}

impl From<ParamScalar> for OperatorExpr {
    fn from(c: ParamScalar) -> Self {
        OperatorExpr::scalar(c)
    }
}

impl<'a> Add<&'a OperatorExpr> for &'a OperatorExpr {
    type Output = OperatorExpr;
    fn add(self, o: &OperatorExpr) -> OperatorExpr {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a OperatorExpr> for &'a OperatorExpr {
    type Output = OperatorExpr;
    fn sub(self, o: &OperatorExpr) -> OperatorExpr {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a OperatorExpr> for &'a OperatorExpr {
    type Output = OperatorExpr;
    fn mul(self, o: &OperatorExpr) -> OperatorExpr {
        self.mul_in(o, CommutationTable::standard())
    }
}

impl Neg for &OperatorExpr {
    type Output = OperatorExpr;
    fn neg(self) -> OperatorExpr {
        OperatorExpr { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Add for OperatorExpr {
    type Output = OperatorExpr;
    fn add(self, o: OperatorExpr) -> OperatorExpr {
        &self + &o
    }
}

impl Sub for OperatorExpr {
    type Output = OperatorExpr;
    fn sub(self, o: OperatorExpr) -> OperatorExpr {
        &self - &o
    }
}

impl Mul for OperatorExpr {
    type Output = OperatorExpr;
    fn mul(self, o: OperatorExpr) -> OperatorExpr {
        &self * &o
    }
}

impl Neg for OperatorExpr {
    type Output = OperatorExpr;
    fn neg(self) -> OperatorExpr {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn g(x: Generator) -> OperatorExpr {
        OperatorExpr::generator(x)
    }

    fn i_times(e: &OperatorExpr) -> OperatorExpr {
        e.scale(&ParamScalar::i())
    }

    #[test]
    fn one_swap_produces_central_term() {
        let got = OperatorExpr::normal_form(&[Generator::lq(1), Generator::q(1)], ParamScalar::one());
        let want = &(&g(Generator::q(1)) * &g(Generator::lq(1))) - &i_times(&OperatorExpr::identity());
        assert_eq!(got, want);
        assert_eq!(got.to_string(), "q[1]*lq[1] - i");
        assert_eq!(got.unicode(), "q₁λq₁ − i·𝟙");
    }

    #[test]
    fn commuting_pair_is_already_normal() {
        let got = OperatorExpr::normal_form(&[Generator::q(1), Generator::p(1)], ParamScalar::one());
        assert_eq!(got.len(), 1);
        assert_eq!(got.to_string(), "q[1]*p[1]");
    }

    #[test]
    fn two_swaps_against_brute_force() {
        let got = OperatorExpr::normal_form(&[Generator::k(1), Generator::r(1), Generator::r(1)], ParamScalar::one());
        // Brute force: k r r = (r k - i) r = r k r - i r = r (r k - i) - i r.
        let r2k = OperatorExpr::term(
            Monomial::from_sorted(vec![(Generator::r(1), 2), (Generator::k(1), 1)]),
            ParamScalar::one(),
        );
        let want = &r2k
            - &g(Generator::r(1)).scale(&ParamScalar::constant(GaussianRational::new(
                BigRational::zero(),
                BigRational::from_integer(2.into()),
            )));
        assert_eq!(got, want);
    }

    #[test]
    fn addition_identities() {
        let a = &g(Generator::q(1)) + &g(Generator::lp(2));
        assert_eq!(&a + &OperatorExpr::zero(), a);
        let iq = i_times(&g(Generator::q(1)));
        assert!((&iq + &(-&iq)).is_zero());
        let two_q = &g(Generator::q(1)) + &g(Generator::q(1));
        assert_eq!(two_q, g(Generator::q(1)).scale(&ParamScalar::integer(2)));
    }

    #[test]
    fn multiplication_examples() {
        let a = &g(Generator::r(2)) + &g(Generator::lq(1));
        assert_eq!(&OperatorExpr::identity() * &a, a);
        let q_lq = &g(Generator::q(1)) * &g(Generator::lq(1));
        let lq_q = &g(Generator::lq(1)) * &g(Generator::q(1));
        assert_eq!(&q_lq - &lq_q, i_times(&OperatorExpr::identity()));
        let d = &g(Generator::r(1)) - &g(Generator::q(1));
        let sq = &d * &d;
        assert_eq!(sq.to_string(), "r[1]^2 - 2*r[1]*q[1] + q[1]^2");
    }

    #[test]
    fn canonical_commutators() {
        let c = g(Generator::q(1)).commutator(&g(Generator::p(1)));
        assert!(c.is_zero());
        let c = g(Generator::q(1)).commutator(&g(Generator::lq(1)));
        assert_eq!(c, OperatorExpr::scalar(ParamScalar::i()));
        let c = g(Generator::p(2)).commutator(&g(Generator::lp(2)));
        assert_eq!(c, OperatorExpr::scalar(ParamScalar::i()));
        let c = g(Generator::r(3)).commutator(&g(Generator::k(3)));
        assert_eq!(c, OperatorExpr::scalar(ParamScalar::i()));
        let c = g(Generator::r(1)).commutator(&g(Generator::lq(1)));
        assert!(c.is_zero());
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(g(Generator::q(1)).adjoint(), g(Generator::q(1)));
        let i = OperatorExpr::scalar(ParamScalar::i());
        assert_eq!(i.adjoint(), -&i);
        let plp = &g(Generator::p(1)) * &g(Generator::lp(1));
        assert_eq!(plp.adjoint(), &plp - &i);
    }

    #[test]
    fn substitution() {
        let m = ParamScalar::param(Param::QuantumMass);
        let k1sq = g(Generator::k(1)).pow(2);
        let a = k1sq.scale(&ParamScalar::one().div(&m).unwrap());
        let mut b = HashMap::new();
        b.insert(Param::QuantumMass, BigRational::from_integer(2.into()));
        assert_eq!(a.substitute_params(&b).unwrap(), k1sq.scale(&ParamScalar::ratio(1, 2)));

        let t = ParamScalar::param(Param::Time);
        let boost = &g(Generator::r(1)).scale(&m) - &g(Generator::k(1)).scale(&t);
        let mut b = HashMap::new();
        b.insert(Param::Time, BigRational::zero());
        assert_eq!(boost.substitute_params(&b).unwrap(), g(Generator::r(1)).scale(&m));

        let h = k1sq.scale(&ParamScalar::one().div(&m.scale(&GaussianRational::from_integer(2))).unwrap());
        let mut b = HashMap::new();
        b.insert(Param::QuantumMass, BigRational::zero());
        assert!(matches!(h.substitute_params(&b), Err(Error::DivisionByZero)));
    }

    #[test]
    fn table_is_antisymmetric_and_sector_local() {
        let t = CommutationTable::standard();
        let all = Generator::all();
        for &a in &all {
            for &b in &all {
                assert_eq!(t.bracket(a, b), -&t.bracket(b, a));
                if a.sector != b.sector {
                    assert!(t.bracket(a, b).is_zero());
                }
            }
        }
    }

    #[test]
    fn invalid_generators_rejected() {
        assert!(Generator::new(Sector::Quantum, Kind::LambdaP, 1).is_err());
        assert!(Generator::new(Sector::Classical, Kind::Position, 4).is_err());
        assert!(Generator::from_stem("lq", 0).is_err());
    }

    #[test]
    fn identity_is_distinct_from_zero() {
        assert_ne!(OperatorExpr::identity(), OperatorExpr::zero());
        assert_eq!(OperatorExpr::identity().as_scalar(), Some(ParamScalar::one()));
    }
}
