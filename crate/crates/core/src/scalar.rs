//! Exact coefficient field: rational functions in the physical parameters
//! with Gaussian-rational coefficients.
//!
//! A [`ParamScalar`] is stored as a reduced fraction `num / den` where both
//! parts are polynomials over `Q(i)` in the fixed parameter set
//! `{m, M, m1, m2, M1, M2, t}`. The denominator is monic in lex order and
//! coprime to the numerator, so equal values have identical storage.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Number of symbolic parameters.
pub const PARAM_COUNT: usize = 7;

/// The symbolic parameters that may appear in coefficients. All are real.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    /// `m`, mass of the classical particle.
    ClassicalMass,
    /// `M`, mass of the quantum particle (and central charge).
    QuantumMass,
    /// `m1`
    ClassicalMass1,
    /// `m2`
    ClassicalMass2,
    /// `M1`
    QuantumMass1,
    /// `M2`
    QuantumMass2,
    /// `t`, the time parameter carried by boosts.
    Time,
}

impl Param {
    pub const ALL: [Param; PARAM_COUNT] = [
        Param::ClassicalMass,
        Param::QuantumMass,
        Param::ClassicalMass1,
        Param::ClassicalMass2,
        Param::QuantumMass1,
        Param::QuantumMass2,
        Param::Time,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Param::ClassicalMass => "m",
            Param::QuantumMass => "M",
            Param::ClassicalMass1 => "m1",
            Param::ClassicalMass2 => "m2",
            Param::QuantumMass1 => "M1",
            Param::QuantumMass2 => "M2",
            Param::Time => "t",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Param> {
        Param::ALL.iter().copied().find(|p| p.symbol() == s)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A number `re + i·im` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(BigRational::new(BigInt::from(num), BigInt::from(den)), BigRational::zero())
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// Multiplicative inverse. Panics on zero; callers check first.
    pub fn inv(&self) -> Self {
        let norm = &self.re * &self.re + &self.im * &self.im;
        assert!(!norm.is_zero(), "inverse of zero Gaussian rational");
        Self::new(&self.re / &norm, -(&self.im / &norm))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    fn fmt_rational(r: &BigRational) -> String {
        if r.is_integer() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }

    /// True when printing needs no surrounding parentheses as a factor.
    fn is_atomic(&self) -> bool {
        self.re.is_zero() || self.im.is_zero()
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = Self::fmt_rational(&self.re);
        let im_abs = self.im.abs();
        let im = if im_abs.is_one() { "i".to_string() } else { format!("{}*i", Self::fmt_rational(&im_abs)) };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => f.write_str(&re),
            (true, false) => {
                if self.im.is_negative() {
                    write!(f, "-{im}")
                } else {
                    f.write_str(&im)
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "({re} {sign} {im})")
            }
        }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

/// Exponent vector over [`Param::ALL`].
pub type Exponents = [u32; PARAM_COUNT];

/// Multivariate polynomial over `Q(i)`. Terms are keyed by exponent vector;
/// the natural array ordering is the lex monomial order used throughout.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Exponents, GaussianRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0; PARAM_COUNT], c);
        }
        Poly { terms }
    }

    pub fn var(p: Param) -> Self {
        let mut e = [0; PARAM_COUNT];
        e[p.index()] = 1;
        Self::monomial(e, GaussianRational::one())
    }

    pub fn monomial(e: Exponents, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&d| d == 0))
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(e, c)| e.iter().all(|&d| d == 0) && c.is_one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant term value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.is_zero() {
            return Some(GaussianRational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    fn leading(&self) -> Option<(&Exponents, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&GaussianRational> {
        self.leading().map(|(_, c)| c)
    }

    fn add_term(&mut self, e: Exponents, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    pub fn conj(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, v)| (*e, v.conj())).collect() }
    }

    /// Scale so that the lex-leading coefficient is one.
    pub fn monic(&self) -> Poly {
        match self.leading_coefficient() {
            None => Poly::zero(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv()),
        }
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    fn first_variable(&self) -> Option<usize> {
        (0..PARAM_COUNT).find(|&v| self.terms.keys().any(|e| e[v] > 0))
    }

    /// Coefficient of `v^d`, as a polynomial free of `v`.
    fn coeff_in(&self, v: usize, d: u32) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e[v] == d {
                let mut e2 = *e;
                e2[v] = 0;
                out.terms.insert(e2, c.clone());
            }
        }
        out
    }

    fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let mut by_deg: BTreeMap<u32, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2[v] = 0;
            by_deg.entry(e[v]).or_default().terms.insert(e2, c.clone());
        }
        by_deg.into_values().collect()
    }

    fn shift(&self, v: usize, d: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = *e;
                    e2[v] += d;
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lead_e, lead_c) = divisor.leading()?;
        let lead_e = *lead_e;
        let lead_inv = lead_c.inv();
        if divisor.len() == 1 {
            let mut out = Poly::zero();
            for (e, c) in &self.terms {
                let mut q = [0; PARAM_COUNT];
                for v in 0..PARAM_COUNT {
                    q[v] = e[v].checked_sub(lead_e[v])?;
                }
                out.terms.insert(q, c * &lead_inv);
            }
            return Some(out);
        }
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((e, c)) = rem.leading() {
            let mut q = [0; PARAM_COUNT];
            for v in 0..PARAM_COUNT {
                q[v] = e[v].checked_sub(lead_e[v])?;
            }
            let qc = c * &lead_inv;
            let t = Poly::monomial(q, qc.clone());
            rem = &rem - &(&t * divisor);
            quot.add_term(q, qc);
        }
        Some(quot)
    }

    /// Pseudo-remainder of `self` by `b` with respect to variable `v`.
    fn prem(&self, b: &Poly, v: usize) -> Poly {
        let db = b.degree_in(v);
        let lcb = b.coeff_in(v, db);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lcr = r.coeff_in(v, dr);
            r = &(&r * &lcb) - &(&lcr * &b.shift(v, dr - db));
        }
        r
    }

    fn content_in(&self, v: usize) -> Poly {
        let mut g = Poly::zero();
        for c in self.coeffs_in(v) {
            g = Poly::gcd(&g, &c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn primitive_part_in(&self, v: usize) -> Poly {
        let c = self.content_in(v);
        if c.is_zero() {
            return Poly::zero();
        }
        self.div_exact(&c).expect("content divides polynomial")
    }

    /// Monic greatest common divisor over `Q(i)`. `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        if a.len() == 1 || b.len() == 1 {
            return Self::gcd_with_monomial(a, b);
        }
        let v = match (a.first_variable(), b.first_variable()) {
            (Some(x), Some(y)) => x.min(y),
            _ => return Poly::one(),
        };
        if a.degree_in(v) == 0 {
            return Poly::gcd(a, &b.content_in(v));
        }
        if b.degree_in(v) == 0 {
            return Poly::gcd(&a.content_in(v), b);
        }
        let ca = a.content_in(v);
        let cb = b.content_in(v);
        let content = Poly::gcd(&ca, &cb);
        let mut p = a.div_exact(&ca).expect("content divides");
        let mut q = b.div_exact(&cb).expect("content divides");
        if p.degree_in(v) < q.degree_in(v) {
            std::mem::swap(&mut p, &mut q);
        }
        loop {
            let r = p.prem(&q, v);
            if r.is_zero() {
                break;
            }
            if r.degree_in(v) == 0 {
                q = Poly::one();
                break;
            }
            p = q;
            q = r.primitive_part_in(v);
        }
        (&q.primitive_part_in(v) * &content).monic()
    }

    fn gcd_with_monomial(a: &Poly, b: &Poly) -> Poly {
        let (mono, other) = if a.len() == 1 { (a, b) } else { (b, a) };
        let (me, _) = mono.leading().expect("nonzero");
        let mut e = *me;
        for oe in other.terms.keys() {
            for v in 0..PARAM_COUNT {
                e[v] = e[v].min(oe[v]);
            }
        }
        Poly::monomial(e, GaussianRational::one())
    }

    /// Substitute rational values for some parameters.
    pub fn substitute(&self, bindings: &HashMap<Param, BigRational>) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut e2 = *e;
            let mut factor = BigRational::one();
            for (p, val) in bindings {
                let d = e[p.index()];
                if d > 0 {
                    factor *= num_traits::pow(val.clone(), d as usize);
                    e2[p.index()] = 0;
                }
            }
            out.add_term(e2, c * &GaussianRational::real(factor));
        }
        out
    }

    fn is_single_term(&self) -> bool {
        self.terms.len() == 1
    }

    fn fmt_monomial(e: &Exponents) -> String {
        let mut parts = Vec::new();
        for p in Param::ALL {
            match e[p.index()] {
                0 => {}
                1 => parts.push(p.symbol().to_string()),
                d => parts.push(format!("{}^{}", p.symbol(), d)),
            }
        }
        parts.join("*")
    }

    fn fmt_term(e: &Exponents, c: &GaussianRational) -> String {
        let mono = Self::fmt_monomial(e);
        if mono.is_empty() {
            return c.to_string();
        }
        if c.is_one() {
            mono
        } else if (-c).is_one() {
            format!("-{mono}")
        } else {
            format!("{c}*{mono}")
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let s = Self::fmt_term(e, c);
            if first {
                f.write_str(&s)?;
                first = false;
            } else if let Some(rest) = s.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {s}")?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let mut e = *ea;
                for v in 0..PARAM_COUNT {
                    e[v] += eb[v];
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

/// Exact element of `Q(i)(m, M, m1, m2, M1, M2, t)` in canonical reduced form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamScalar {
    num: Poly,
    den: Poly,
}

impl Default for ParamScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl ParamScalar {
    pub fn zero() -> Self {
        ParamScalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(GaussianRational::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::constant(GaussianRational::from_ratio(num, den))
    }

    pub fn rational(r: BigRational) -> Self {
        Self::constant(GaussianRational::real(r))
    }

    pub fn constant(c: GaussianRational) -> Self {
        ParamScalar { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn param(p: Param) -> Self {
        ParamScalar { num: Poly::var(p), den: Poly::one() }
    }

    /// Build `num / den`, reducing to canonical form.
    pub fn from_fraction(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = Poly::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides numerator"), den.div_exact(&g).expect("gcd divides denominator"))
            }
        };
        let lc = den.leading_coefficient().expect("nonzero denominator").clone();
        if lc.is_one() {
            ParamScalar { num, den }
        } else {
            let inv = lc.inv();
            ParamScalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value as a plain Gaussian rational, when free of parameters.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        if !self.den.is_one() {
            return None;
        }
        self.num.as_constant()
    }

    pub fn is_parameter_free(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &ParamScalar) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Complex conjugate; parameters are real.
    pub fn conj(&self) -> Self {
        Self::reduce(self.num.conj(), self.den.conj())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ParamScalar { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Evaluate the bound parameters; unbound ones stay symbolic.
    pub fn substitute(&self, bindings: &HashMap<Param, BigRational>) -> Result<Self> {
        let den = self.den.substitute(bindings);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.num.substitute(bindings), den))
    }

    /// True when printing as a factor needs no parentheses.
    pub fn is_atomic(&self) -> bool {
        if !self.den.is_one() {
            return false;
        }
        if !self.num.is_single_term() {
            return false;
        }
        let (e, c) = self.num.leading().expect("nonzero");
        e.iter().all(|&d| d == 0) || c.is_atomic()
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.is_single_term() && self.num.is_constant() {
            self.num.to_string()
        } else {
            format!("({})", self.num)
        };
        let den = if self.den.is_single_term()
            && self
                .den
                .leading()
                .is_some_and(|(e, _)| e.iter().filter(|&&d| d > 0).count() == 1 && e.iter().all(|&d| d <= 1))
        {
            self.den.to_string()
        } else {
            format!("({})", self.den)
        };
        write!(f, "{num}/{den}")
    }
}

impl<'a> Add<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn add(self, o: &ParamScalar) -> ParamScalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = &self.num + &o.num;
            if self.den.is_one() {
                return ParamScalar { num, den: self.den.clone() };
            }
            return ParamScalar::reduce(num, self.den.clone());
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        ParamScalar::reduce(num, &self.den * &o.den)
    }
}

impl<'a> Sub<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn sub(self, o: &ParamScalar) -> ParamScalar {
        self + &(-o)
    }
}

impl<'a> Mul<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn mul(self, o: &ParamScalar) -> ParamScalar {
        if self.is_zero() || o.is_zero() {
            return ParamScalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return ParamScalar { num: &self.num * &o.num, den: Poly::one() };
        }
        ParamScalar::reduce(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar { num: -&self.num, den: self.den.clone() }
    }
}

impl PartialOrd for ParamScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ParamScalar {
    /// Arbitrary but total structural order, used only for deterministic output.
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_string().cmp(&other.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: Param) -> ParamScalar {
        ParamScalar::param(x)
    }

    #[test]
    fn fraction_reduces_to_canonical_form() {
        let m = p(Param::ClassicalMass);
        let big_m = p(Param::QuantumMass);
        // (M^2 - m^2) / (M - m) == M + m
        let num = &(&big_m * &big_m) - &(&m * &m);
        let den = &big_m - &m;
        let q = num.div(&den).unwrap();
        assert_eq!(q, &big_m + &m);
        assert!(q.denominator().is_one());
    }

    #[test]
    fn equal_values_have_identical_storage() {
        let m = p(Param::ClassicalMass);
        let two = ParamScalar::integer(2);
        let a = ParamScalar::one().div(&(&two * &m)).unwrap();
        let b = ParamScalar::ratio(1, 2).div(&m).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), b.to_string());
        assert!(a.denominator().leading_coefficient().unwrap().is_one());
    }

    #[test]
    fn field_axioms_hold_on_samples() {
        let m = p(Param::ClassicalMass);
        let t = p(Param::Time);
        let a = (&m + &ParamScalar::i()).div(&(&t - &ParamScalar::integer(3))).unwrap();
        let b = (&t * &m).div(&(&m + &ParamScalar::one())).unwrap();
        assert_eq!(&a * &b, &b * &a);
        assert_eq!(&a + &b, &b + &a);
        assert_eq!(&a * &a.inv().unwrap(), ParamScalar::one());
        assert_eq!(&a - &a, ParamScalar::zero());
        let c = ParamScalar::ratio(7, 5);
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn multivariate_gcd_cancels_common_factors() {
        let m = Poly::var(Param::ClassicalMass);
        let big_m = Poly::var(Param::QuantumMass);
        let t = Poly::var(Param::Time);
        let f = &(&m * &t) + &big_m;
        let g = &(&m + &t) + &Poly::constant(GaussianRational::i());
        let h = &big_m - &t;
        let a = &f * &g;
        let b = &f * &h;
        assert_eq!(Poly::gcd(&a, &b), f.monic());
        assert!(Poly::gcd(&g, &h).is_one());
    }

    #[test]
    fn substitution_and_poles() {
        let big_m = p(Param::QuantumMass);
        let x = ParamScalar::one().div(&(&ParamScalar::integer(2) * &big_m)).unwrap();
        let mut b = HashMap::new();
        b.insert(Param::QuantumMass, BigRational::from_integer(2.into()));
        assert_eq!(x.substitute(&b).unwrap(), ParamScalar::ratio(1, 4));
        b.insert(Param::QuantumMass, BigRational::zero());
        assert!(matches!(x.substitute(&b), Err(Error::DivisionByZero)));
    }

    #[test]
    fn conjugation_flips_imaginary_unit_only() {
        let t = p(Param::Time);
        let a = &t * &ParamScalar::i();
        assert_eq!(a.conj(), -&a);
        assert_eq!(t.conj(), t);
    }

    #[test]
    fn display_forms() {
        assert_eq!(ParamScalar::i().to_string(), "i");
        assert_eq!((-&ParamScalar::i()).to_string(), "-i");
        let m = p(Param::QuantumMass);
        let x = ParamScalar::one().div(&(&ParamScalar::integer(2) * &m)).unwrap();
        assert_eq!(x.to_string(), "1/2/M");
        let c = ParamScalar::constant(GaussianRational::new(
            BigRational::new(1.into(), 2.into()),
            BigRational::from_integer((-3).into()),
        ));
        assert_eq!(c.to_string(), "(1/2 - 3*i)");
    }
}
