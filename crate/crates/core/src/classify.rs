//! Enumeration of Galilei-invariant hybrid interaction terms.
//!
//! Candidate interactions are linear combinations of normal-ordered
//! monomials. Invariance under translations, boosts and rotations is a
//! linear condition on the coefficients; its exact null space is computed at
//! generic numeric masses and every resulting element is then re-checked
//! with symbolic masses and time.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::galilei::{build_hybrid_rep, dot, sub_vec, vector, verify_algebra, Representation, Vector3};
use crate::linalg::{row_reduce, solve_in_span, Echelon, Matrix, SparseRow};
use crate::opalgebra::{Generator, Kind, Monomial, OperatorExpr, Sector};
use crate::scalar::{GaussianRational, Param, ParamScalar};

/// Options of the invariant search.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationConfig {
    pub max_degree: u32,
    /// Cap on the total power of λp in a monomial.
    pub max_lp_degree: u32,
    /// Vector operators the monomials are built from.
    pub building_blocks: Vec<(Sector, Kind)>,
    /// Needed to put λq among the building blocks.
    pub allow_lambda_q: bool,
    /// Present products of non-commuting factors symmetrized.
    pub require_hermitian: bool,
    pub require_momentum_conservation: bool,
    /// Generic quantum and classical masses used for the linear solve.
    pub quantum_mass: BigRational,
    pub classical_mass: BigRational,
}

impl Default for ClassificationConfig {
    fn default() -> Self {
        ClassificationConfig {
            max_degree: 2,
            max_lp_degree: 1,
            building_blocks: vec![
                (Sector::Quantum, Kind::Position),
                (Sector::Classical, Kind::Position),
                (Sector::Quantum, Kind::Momentum),
                (Sector::Classical, Kind::Momentum),
                (Sector::Classical, Kind::LambdaP),
            ],
            allow_lambda_q: false,
            require_hermitian: true,
            require_momentum_conservation: false,
            quantum_mass: BigRational::from_integer(2.into()),
            classical_mass: BigRational::from_integer(3.into()),
        }
    }
}

impl ClassificationConfig {
    pub fn validate(&self) -> Result<()> {
        for &(s, k) in &self.building_blocks {
            if k == Kind::LambdaQ && !self.allow_lambda_q {
                return Err(Error::InvalidGenerator(
                    "λq is excluded from the building blocks unless explicitly allowed".into(),
                ));
            }
            Generator::new(s, k, 1)?;
        }
        check_masses(&self.quantum_mass, &self.classical_mass)
    }

    fn generators(&self) -> Vec<Generator> {
        let mut gens: Vec<Generator> = self
            .building_blocks
            .iter()
            .flat_map(|&(s, k)| (1..=3).map(move |a| Generator { sector: s, kind: k, axis: a }))
            .collect();
        gens.sort();
        gens.dedup();
        gens
    }

    fn mass_bindings(&self) -> HashMap<Param, BigRational> {
        HashMap::from([
            (Param::QuantumMass, self.quantum_mass.clone()),
            (Param::ClassicalMass, self.classical_mass.clone()),
        ])
    }
}

fn check_masses(big_m: &BigRational, m: &BigRational) -> Result<()> {
    if big_m.is_zero() || m.is_zero() {
        return Err(Error::DegenerateMasses("masses must be nonzero".into()));
    }
    if big_m == m {
        return Err(Error::DegenerateMasses(format!("quantum and classical masses coincide ({m})")));
    }
    Ok(())
}

/// Every normal-ordered monomial over the building blocks within the degree
/// bounds, identity included, in ascending monomial order.
pub fn monomial_basis(config: &ClassificationConfig) -> Vec<Monomial> {
    let gens = config.generators();
    let mut out = Vec::new();
    let mut stack: Vec<Generator> = Vec::new();
    collect_multisets(&gens, 0, config.max_degree, &mut stack, &mut out);
    out.retain(|m: &Monomial| m.degree_where(|g| g.kind == Kind::LambdaP) <= config.max_lp_degree);
    out.sort();
    out
}

fn collect_multisets(
    gens: &[Generator],
    start: usize,
    remaining: u32,
    stack: &mut Vec<Generator>,
    out: &mut Vec<Monomial>,
) {
    out.push(Monomial::from_multiset(stack));
    if remaining == 0 {
        return;
    }
    for i in start..gens.len() {
        stack.push(gens[i]);
        collect_multisets(gens, i, remaining - 1, stack, out);
        stack.pop();
    }
}

/// Linear map from monomial coefficients to commutator coefficients.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub columns: Vec<Monomial>,
    /// One label per row, e.g. `[G2,·] r[1]*k[2]`.
    pub row_labels: Vec<String>,
    pub matrix: Matrix,
}

/// Rows expressing `[X, Σ c_b b] = 0` for each labelled operator `X`.
/// All coefficients must be parameter-free.
pub fn commutator_rows(basis: &[Monomial], operators: &[(String, OperatorExpr)]) -> Result<ConstraintSystem> {
    let per_column: Vec<Vec<(usize, Monomial, GaussianRational)>> = basis
        .par_iter()
        .map(|b| {
            let be = OperatorExpr::term(b.clone(), ParamScalar::one());
            let mut entries = Vec::new();
            for (xi, (_, x)) in operators.iter().enumerate() {
                for (m, c) in x.commutator(&be).terms() {
                    let v = c.as_constant().ok_or_else(|| Error::SymbolicCoefficient(c.to_string()))?;
                    entries.push((xi, m.clone(), v));
                }
            }
            Ok(entries)
        })
        .collect::<Result<_>>()?;

    let mut rows: BTreeMap<(usize, Monomial), SparseRow> = BTreeMap::new();
    for (col, entries) in per_column.into_iter().enumerate() {
        for (xi, m, v) in entries {
            rows.entry((xi, m)).or_default().insert(col, v);
        }
    }
    let mut matrix = Matrix::new(basis.len());
    let mut row_labels = Vec::with_capacity(rows.len());
    for ((xi, m), row) in rows {
        row_labels.push(format!("[{},·] {}", operators[xi].0, m));
        matrix.push_row(row);
    }
    Ok(ConstraintSystem { columns: basis.to_vec(), row_labels, matrix })
}

/// Invariance conditions `[T_i, H] = [G_i, H] = [J_i, H] = 0` for a hybrid
/// representation with numeric masses. Boosts are taken at `t = 0`: once
/// `[T, H] = 0` holds, the time-dependent part of `[G, H]` vanishes.
pub fn constraint_matrix(basis: &[Monomial], rep: &Representation) -> Result<ConstraintSystem> {
    let (Some(big_m), Some(m)) = (&rep.quantum_mass, &rep.classical_mass) else {
        return Err(Error::MissingClassicalSector);
    };
    let to_rational = |s: &ParamScalar| -> Result<BigRational> {
        s.as_constant()
            .filter(GaussianRational::is_real)
            .map(|c| c.re)
            .ok_or_else(|| Error::DegenerateMasses(format!("mass {s} is not a real number")))
    };
    check_masses(&to_rational(big_m)?, &to_rational(m)?)?;
    let at_t0 = HashMap::from([(Param::Time, BigRational::zero())]);
    let mut operators = Vec::with_capacity(9);
    for (name, v) in [("T", &rep.translations), ("G", &rep.boosts), ("J", &rep.rotations)] {
        for (i, e) in v.iter().enumerate() {
            operators.push((format!("{name}{}", i + 1), e.substitute_params(&at_t0)?));
        }
    }
    commutator_rows(basis, &operators)
}

/// Rows expressing `[k_i + p_i, H] = 0`.
pub fn momentum_constraint(basis: &[Monomial]) -> Result<ConstraintSystem> {
    let total = total_momentum();
    let operators: Vec<(String, OperatorExpr)> =
        total.into_iter().enumerate().map(|(i, e)| (format!("k{0}+p{0}", i + 1), e)).collect();
    commutator_rows(basis, &operators)
}

fn total_momentum() -> Vector3 {
    let k = vector(Sector::Quantum, Kind::Momentum).expect("valid");
    let p = vector(Sector::Classical, Kind::Momentum).expect("valid");
    std::array::from_fn(|i| &k[i] + &p[i])
}

/// Commutation properties of one invariant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ConservationFlags {
    /// Commutes with every component of `k + p`.
    pub conserves_momentum: bool,
    pub commutes_with_q: bool,
    pub commutes_with_p: bool,
}

impl ConservationFlags {
    /// The classical observables feel the quantum sector.
    pub fn back_reaction(&self) -> bool {
        !(self.commutes_with_q && self.commutes_with_p)
    }

    pub fn of(e: &OperatorExpr) -> Self {
        let commutes_with = |v: &Vector3| v.iter().all(|x| x.commutator(e).is_zero());
        ConservationFlags {
            conserves_momentum: commutes_with(&total_momentum()),
            commutes_with_q: commutes_with(&vector(Sector::Classical, Kind::Position).expect("valid")),
            commutes_with_p: commutes_with(&vector(Sector::Classical, Kind::Momentum).expect("valid")),
        }
    }
}

/// One element of the invariant space.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantElement {
    /// ASCII name in terms of the scalar building blocks, when named.
    pub label: String,
    pub unicode_label: String,
    /// With symbolic masses when `symbolic`, else at the generic masses.
    pub expr: OperatorExpr,
    pub symbolic: bool,
    pub hermitian: bool,
    /// `[T_i, e] = [G_i, e] = [J_i, e] = 0` with symbolic time.
    pub residuals_zero: bool,
    /// Full algebra check of the hybrid representation with `e` as the
    /// interaction; only for Hermitian elements.
    pub algebra_verified: Option<bool>,
    pub flags: ConservationFlags,
}

/// Solution space of the invariance conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantBasis {
    pub dimension: usize,
    /// Number of candidate monomials.
    pub basis_size: usize,
    pub constraint_rows: usize,
    pub rank: usize,
    /// All elements are combinations of the named scalar invariants.
    pub named: bool,
    pub elements: Vec<InvariantElement>,
    /// Null space in reduced echelon form at the generic masses.
    pub reduced_basis: Vec<OperatorExpr>,
}

/// A named scalar built from `u = r − q`, `v = k/M − p/m`, `w = λp`.
#[derive(Clone, Debug)]
pub struct ScalarCandidate {
    pub label: &'static str,
    pub unicode_label: &'static str,
    pub expr: OperatorExpr,
}

/// The identity and the rotation scalars of degree two in `u`, `v`, `w`,
/// with symbolic masses.
pub fn scalar_candidates(symmetrize: bool) -> Vec<ScalarCandidate> {
    let r = vector(Sector::Quantum, Kind::Position).expect("valid");
    let k = vector(Sector::Quantum, Kind::Momentum).expect("valid");
    let q = vector(Sector::Classical, Kind::Position).expect("valid");
    let p = vector(Sector::Classical, Kind::Momentum).expect("valid");
    let w = vector(Sector::Classical, Kind::LambdaP).expect("valid");
    let inv_big_m = ParamScalar::param(Param::QuantumMass).inv().expect("nonzero");
    let inv_m = ParamScalar::param(Param::ClassicalMass).inv().expect("nonzero");
    let u = sub_vec(&r, &q);
    let v: Vector3 = std::array::from_fn(|i| &k[i].scale(&inv_big_m) - &p[i].scale(&inv_m));
    let prod = |a: &Vector3, b: &Vector3| {
        let ab = dot(a, b);
        if symmetrize {
            (&ab + &dot(b, a)).scale(&ParamScalar::ratio(1, 2))
        } else {
            ab
        }
    };
    let c = |label, unicode_label, expr| ScalarCandidate { label, unicode_label, expr };
    vec![
        c("1", "𝟙", OperatorExpr::identity()),
        c("(r-q)^2", "(r−q)²", dot(&u, &u)),
        c("(k/M-p/m)^2", "(k/M−p/m)²", dot(&v, &v)),
        c("(r-q).(k/M-p/m)", "(r−q)·(k/M−p/m)", prod(&u, &v)),
        c("(r-q).lp", "(r−q)·λp", prod(&u, &w)),
        c("(k/M-p/m).lp", "(k/M−p/m)·λp", prod(&v, &w)),
        c("lp^2", "λp²", dot(&w, &w)),
    ]
}

fn coordinates(e: &OperatorExpr, index: &HashMap<&Monomial, usize>, n: usize) -> Option<Vec<GaussianRational>> {
    let mut v = vec![GaussianRational::zero(); n];
    for (m, c) in e.terms() {
        v[*index.get(m)?] = c.as_constant()?;
    }
    Some(v)
}

fn expr_from_coordinates(basis: &[Monomial], v: &[GaussianRational]) -> OperatorExpr {
    OperatorExpr::from_terms(
        basis.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), ParamScalar::constant(c.clone()))),
    )
}

/// Exact null space of the invariance conditions, named and re-verified.
pub fn solve_invariant_space(config: &ClassificationConfig) -> Result<InvariantBasis> {
    config.validate()?;
    let basis = monomial_basis(config);
    let n = basis.len();
    let numeric_rep = build_hybrid_rep(
        &ParamScalar::rational(config.quantum_mass.clone()),
        &ParamScalar::rational(config.classical_mass.clone()),
        None,
    )?;
    let system = constraint_matrix(&basis, &numeric_rep)?;
    let mut constraint_rows = system.matrix.nrows();
    let mut echelon = Echelon::from_matrix(&system.matrix);
    if config.require_momentum_conservation {
        let extra = momentum_constraint(&basis)?;
        constraint_rows += extra.matrix.nrows();
        for row in extra.matrix.rows {
            echelon.insert(row);
        }
    }
    let null = row_reduce(n, &echelon.null_space());
    let reduced_basis: Vec<OperatorExpr> = null.iter().map(|v| expr_from_coordinates(&basis, v)).collect();

    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let bindings = config.mass_bindings();
    let mut candidates = Vec::new();
    let mut candidate_vectors = Vec::new();
    for c in scalar_candidates(config.require_hermitian) {
        let numeric = c.expr.substitute_params(&bindings)?;
        if let Some(v) = coordinates(&numeric, &index, n) {
            candidates.push(c);
            candidate_vectors.push(v);
        }
    }
    let in_span: Option<Vec<Vec<GaussianRational>>> =
        null.iter().map(|v| solve_in_span(&candidate_vectors, v)).collect();

    let symbolic_rep =
        build_hybrid_rep(&ParamScalar::param(Param::QuantumMass), &ParamScalar::param(Param::ClassicalMass), None)?;
    let mut elements = Vec::with_capacity(null.len());
    let named = in_span.is_some();
    match in_span {
        Some(coords) => {
            for x in row_reduce(candidates.len(), &coords) {
                let mut expr = OperatorExpr::zero();
                let mut ascii = Vec::new();
                let mut uni = Vec::new();
                for (c, xi) in candidates.iter().zip(&x) {
                    if xi.is_zero() {
                        continue;
                    }
                    expr = &expr + &c.expr.scale(&ParamScalar::constant(xi.clone()));
                    if xi.is_one() {
                        ascii.push(c.label.to_string());
                        uni.push(c.unicode_label.to_string());
                    } else {
                        ascii.push(format!("{xi}*{}", c.label));
                        uni.push(format!("{xi}·{}", c.unicode_label));
                    }
                }
                elements.push(make_element(ascii.join(" + "), uni.join(" + "), expr, true, &symbolic_rep)?);
            }
        }
        None => {
            for e in &reduced_basis {
                elements.push(make_element(e.to_string(), e.unicode(), e.clone(), false, &numeric_rep)?);
            }
        }
    }
    Ok(InvariantBasis {
        dimension: null.len(),
        basis_size: n,
        constraint_rows,
        rank: echelon.rank(),
        named,
        elements,
        reduced_basis,
    })
}

fn make_element(
    label: String,
    unicode_label: String,
    expr: OperatorExpr,
    symbolic: bool,
    rep: &Representation,
) -> Result<InvariantElement> {
    let residuals_zero = [&rep.translations, &rep.boosts, &rep.rotations]
        .iter()
        .all(|v| v.iter().all(|x| x.commutator(&expr).is_zero()));
    let hermitian = expr.is_hermitian();
    let algebra_verified = if hermitian {
        let with_int = build_hybrid_rep(
            rep.quantum_mass.as_ref().expect("hybrid"),
            rep.classical_mass.as_ref().expect("hybrid"),
            Some(&expr),
        )?;
        Some(verify_algebra(&with_int).all_pass())
    } else {
        None
    };
    Ok(InvariantElement {
        label,
        unicode_label,
        flags: ConservationFlags::of(&expr),
        expr,
        symbolic,
        hermitian,
        residuals_zero,
        algebra_verified,
    })
}

/// Recompute the per-element commutation flags.
pub fn conservation_flags(mut basis: InvariantBasis) -> InvariantBasis {
    for e in &mut basis.elements {
        e.flags = ConservationFlags::of(&e.expr);
    }
    basis
}

/// Classical acceleration `a_i = (i/m)[p_i, H_int]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Acceleration {
    pub components: [OperatorExpr; 3],
    /// Free of λ operators, hence expressible in observables.
    pub observable: bool,
}

pub fn acceleration_operator(h_int: &OperatorExpr, rep: &Representation) -> Result<Acceleration> {
    let m = rep.classical_mass.as_ref().ok_or(Error::MissingClassicalSector)?;
    if !h_int.is_hermitian() {
        return Err(Error::NotHermitian(h_int.to_string()));
    }
    let factor = ParamScalar::i().div(m)?;
    let p = vector(Sector::Classical, Kind::Momentum)?;
    let components: [OperatorExpr; 3] = std::array::from_fn(|i| p[i].commutator(h_int).scale(&factor));
    let observable = components.iter().all(|c| !c.contains_lambda());
    Ok(Acceleration { components, observable })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(g: Generator) -> OperatorExpr {
        OperatorExpr::generator(g)
    }

    #[test]
    fn basis_sizes() {
        let mut c = ClassificationConfig { max_degree: 0, ..Default::default() };
        assert_eq!(monomial_basis(&c), vec![Monomial::identity()]);
        c.max_degree = 1;
        assert_eq!(monomial_basis(&c).len(), 16);
        c.max_degree = 2;
        assert_eq!(monomial_basis(&c).len(), 130);
    }

    #[test]
    fn lambda_q_needs_opt_in() {
        let mut c = ClassificationConfig::default();
        c.building_blocks.push((Sector::Classical, Kind::LambdaQ));
        assert!(c.validate().is_err());
        c.allow_lambda_q = true;
        assert!(c.validate().is_ok());
    }

    #[test]
    fn degenerate_masses_rejected() {
        let c = ClassificationConfig { classical_mass: BigRational::from_integer(2.into()), ..Default::default() };
        assert!(matches!(solve_invariant_space(&c), Err(Error::DegenerateMasses(_))));
    }

    #[test]
    fn constraint_rows_of_simple_monomials() {
        let rep = build_hybrid_rep(&ParamScalar::integer(2), &ParamScalar::integer(3), None).unwrap();
        let id = constraint_matrix(&[Monomial::identity()], &rep).unwrap();
        assert_eq!(id.matrix.nrows(), 0);
        let r1 = constraint_matrix(&[Monomial::from_generator(Generator::r(1))], &rep).unwrap();
        let t1 = r1.row_labels.iter().position(|l| l.starts_with("[T1,·]")).unwrap();
        assert_eq!(r1.matrix.get(t1, 0), -&GaussianRational::i());
        let u1 = &gen(Generator::r(1)) - &gen(Generator::q(1));
        for j in 1..=3 {
            let tj = &gen(Generator::k(j)) + &gen(Generator::lq(j));
            assert!(tj.commutator(&u1).is_zero());
        }
    }

    #[test]
    fn default_space_is_six_dimensional() {
        let b = solve_invariant_space(&ClassificationConfig::default()).unwrap();
        assert_eq!(b.dimension, 6);
        assert!(b.named);
        let labels: Vec<&str> = b.elements.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, ["1", "(r-q)^2", "(k/M-p/m)^2", "(r-q).(k/M-p/m)", "(r-q).lp", "(k/M-p/m).lp"]);
        for e in &b.elements {
            assert!(e.residuals_zero && e.symbolic && e.hermitian);
            assert_eq!(e.algebra_verified, Some(true));
        }
    }

    #[test]
    fn momentum_filter_keeps_relative_velocity_combinations() {
        let c = ClassificationConfig { require_momentum_conservation: true, ..Default::default() };
        let b = solve_invariant_space(&c).unwrap();
        let labels: Vec<&str> = b.elements.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, ["1", "(k/M-p/m)^2", "(r-q).(k/M-p/m) + (k/M-p/m).lp"]);
        assert!(b.elements.iter().all(|e| e.flags.conserves_momentum && e.residuals_zero));
        assert!(b.elements[2].flags.back_reaction());
    }

    #[test]
    fn momentum_kernel_within_default_space() {
        let b = solve_invariant_space(&ClassificationConfig::default()).unwrap();
        let bind = HashMap::from([
            (Param::QuantumMass, BigRational::from_integer(2.into())),
            (Param::ClassicalMass, BigRational::from_integer(3.into())),
        ]);
        let mut rows: BTreeMap<(usize, Monomial), SparseRow> = BTreeMap::new();
        for (col, e) in b.elements.iter().enumerate() {
            for (a, total) in total_momentum().iter().enumerate() {
                let c = total.commutator(&e.expr).substitute_params(&bind).unwrap();
                for (m, v) in c.terms() {
                    rows.entry((a, m.clone())).or_default().insert(col, v.as_constant().unwrap());
                }
            }
        }
        let mut mat = Matrix::new(b.dimension);
        for row in rows.into_values() {
            mat.push_row(row);
        }
        assert_eq!(b.dimension - mat.rank(), 3);
    }

    #[test]
    fn other_masses_give_the_same_space() {
        let c = ClassificationConfig {
            quantum_mass: BigRational::from_integer(4.into()),
            classical_mass: BigRational::from_integer(6.into()),
            ..Default::default()
        };
        let b = solve_invariant_space(&c).unwrap();
        let d = solve_invariant_space(&ClassificationConfig::default()).unwrap();
        let exprs = |x: &InvariantBasis| x.elements.iter().map(|e| e.expr.clone()).collect::<Vec<_>>();
        assert_eq!(exprs(&b), exprs(&d));
    }

    #[test]
    fn degree_zero_space() {
        let c = ClassificationConfig { max_degree: 0, ..Default::default() };
        let b = solve_invariant_space(&c).unwrap();
        assert_eq!(b.dimension, 1);
        assert_eq!(b.elements[0].expr, OperatorExpr::identity());
    }

    #[test]
    fn lifting_lp_cap_adds_lp_squared() {
        let c = ClassificationConfig { max_lp_degree: 2, ..Default::default() };
        let b = solve_invariant_space(&c).unwrap();
        assert_eq!(b.dimension, 7);
        assert!(b.elements.iter().any(|e| e.label == "lp^2"));
    }

    #[test]
    fn flags_and_acceleration() {
        let cands = scalar_candidates(true);
        let v2 = &cands[2].expr;
        let f = ConservationFlags::of(v2);
        assert!(f.conserves_momentum && !f.back_reaction());
        let uw = &cands[4].expr;
        let f = ConservationFlags::of(uw);
        assert!(!f.conserves_momentum && !f.commutes_with_p && f.back_reaction());
        assert_eq!(
            ConservationFlags::of(&OperatorExpr::identity()),
            ConservationFlags { conserves_momentum: true, commutes_with_q: true, commutes_with_p: true }
        );

        let rep =
            build_hybrid_rep(&ParamScalar::param(Param::QuantumMass), &ParamScalar::param(Param::ClassicalMass), None)
                .unwrap();
        let a = acceleration_operator(uw, &rep).unwrap();
        let inv_m = ParamScalar::param(Param::ClassicalMass).inv().unwrap();
        let expected = (&gen(Generator::q(1)) - &gen(Generator::r(1))).scale(&inv_m);
        assert_eq!(a.components[0], expected);
        assert!(a.observable);
        assert!(acceleration_operator(v2, &rep).unwrap().components.iter().all(OperatorExpr::is_zero));
        let lp_sq =
            dot(&vector(Sector::Classical, Kind::LambdaP).unwrap(), &vector(Sector::Classical, Kind::LambdaP).unwrap());
        assert!(!acceleration_operator(&lp_sq, &rep).unwrap().observable);
    }
}
