//! Quantum, classical (Koopman–von Neumann) and hybrid representations of
//! the Galilei algebra, the Hamiltonian-function → Liouvillian map, and a
//! bracket-by-bracket verifier.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::opalgebra::{Generator, Kind, Monomial, OperatorExpr, Sector};
use crate::scalar::{Param, ParamScalar};

pub type Vector3 = [OperatorExpr; 3];

/// Levi-Civita symbol on 1-based axes.
pub fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (1, 3, 2) | (3, 2, 1) | (2, 1, 3) => -1,
        _ => 0,
    }
}

/// The three components of a vector operator of one kind in one sector.
pub fn vector(sector: Sector, kind: Kind) -> Result<Vector3> {
    Ok([
        OperatorExpr::generator(Generator::new(sector, kind, 1)?),
        OperatorExpr::generator(Generator::new(sector, kind, 2)?),
        OperatorExpr::generator(Generator::new(sector, kind, 3)?),
    ])
}

pub fn cross(a: &Vector3, b: &Vector3) -> Vector3 {
    std::array::from_fn(|i| {
        let mut out = OperatorExpr::zero();
        for j in 1..=3 {
            for k in 1..=3 {
                let e = levi_civita(i + 1, j, k);
                if e != 0 {
                    let prod = &a[j - 1] * &b[k - 1];
                    out = &out + &prod.scale(&ParamScalar::integer(e));
                }
            }
        }
        out
    })
}

pub fn dot(a: &Vector3, b: &Vector3) -> OperatorExpr {
    let mut out = OperatorExpr::zero();
    for i in 0..3 {
        out = &out + &(&a[i] * &b[i]);
    }
    out
}

pub fn add_vec(a: &Vector3, b: &Vector3) -> Vector3 {
    std::array::from_fn(|i| &a[i] + &b[i])
}

pub fn sub_vec(a: &Vector3, b: &Vector3) -> Vector3 {
    std::array::from_fn(|i| &a[i] - &b[i])
}

pub fn scale_vec(a: &Vector3, c: &ParamScalar) -> Vector3 {
    std::array::from_fn(|i| a[i].scale(c))
}

fn nonzero_mass(mass: &ParamScalar) -> Result<()> {
    if mass.is_zero() {
        Err(Error::ZeroMass)
    } else {
        Ok(())
    }
}

/// Assignment of the Galilei generators to operators.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    pub name: String,
    pub translations: Vector3,
    pub rotations: Vector3,
    pub boosts: Vector3,
    pub hamiltonian: OperatorExpr,
    pub central_charge: ParamScalar,
    /// Mass of the quantum particle, when there is one.
    pub quantum_mass: Option<ParamScalar>,
    /// Mass of the classical particle, when there is one.
    pub classical_mass: Option<ParamScalar>,
}

impl Representation {
    /// All ten generator components, labelled.
    pub fn components(&self) -> Vec<(String, &OperatorExpr)> {
        let mut out = Vec::with_capacity(10);
        for (name, v) in [("T", &self.translations), ("J", &self.rotations), ("G", &self.boosts)] {
            for (i, e) in v.iter().enumerate() {
                out.push((format!("{name}{}", i + 1), e));
            }
        }
        out.push(("H".to_string(), &self.hamiltonian));
        out
    }

    pub fn is_hermitian(&self) -> bool {
        self.components().iter().all(|(_, e)| e.is_hermitian())
    }
}

/// `T = k`, `J = r × k`, `G = M r − t k`, `H = k²/2M`, central charge `M`.
pub fn build_quantum_rep(mass: &ParamScalar) -> Result<Representation> {
    nonzero_mass(mass)?;
    let r = vector(Sector::Quantum, Kind::Position)?;
    let k = vector(Sector::Quantum, Kind::Momentum)?;
    let t = ParamScalar::param(Param::Time);
    let boosts = sub_vec(&scale_vec(&r, mass), &scale_vec(&k, &t));
    let hamiltonian = dot(&k, &k).scale(&inv_product(&ParamScalar::integer(2), mass)?);
    Ok(Representation {
        name: "quantum".to_string(),
        rotations: cross(&r, &k),
        translations: k,
        boosts,
        hamiltonian,
        central_charge: mass.clone(),
        quantum_mass: Some(mass.clone()),
        classical_mass: None,
    })
}

/// KvN representation: `T = λq`, `J_i = ε_ijk (q_j λq_k + p_j λp_k)`,
/// `G_i = −λq_i t − m λp_i`, `H = p·λq / m`, central charge 0.
pub fn build_classical_rep(mass: &ParamScalar) -> Result<Representation> {
    nonzero_mass(mass)?;
    let q = vector(Sector::Classical, Kind::Position)?;
    let p = vector(Sector::Classical, Kind::Momentum)?;
    let lq = vector(Sector::Classical, Kind::LambdaQ)?;
    let lp = vector(Sector::Classical, Kind::LambdaP)?;
    let t = ParamScalar::param(Param::Time);
    let rotations = add_vec(&cross(&q, &lq), &cross(&p, &lp));
    let boosts = sub_vec(&scale_vec(&lq, &-&t), &scale_vec(&lp, mass));
    let hamiltonian = dot(&p, &lq).scale(&mass.inv()?);
    Ok(Representation {
        name: "classical".to_string(),
        translations: lq,
        rotations,
        boosts,
        hamiltonian,
        central_charge: ParamScalar::zero(),
        quantum_mass: None,
        classical_mass: Some(mass.clone()),
    })
}

/// Component-wise sum of the quantum and classical representations, with an
/// optional Hermitian interaction added to the Hamiltonian. The central
/// charge is the quantum mass.
pub fn build_hybrid_rep(
    quantum_mass: &ParamScalar,
    classical_mass: &ParamScalar,
    interaction: Option<&OperatorExpr>,
) -> Result<Representation> {
    let qr = build_quantum_rep(quantum_mass)?;
    let cr = build_classical_rep(classical_mass)?;
    let mut hamiltonian = &qr.hamiltonian + &cr.hamiltonian;
    if let Some(h) = interaction {
        if !h.is_hermitian() {
            return Err(Error::NotHermitian(h.to_string()));
        }
        hamiltonian = &hamiltonian + h;
    }
    Ok(Representation {
        name: "hybrid".to_string(),
        translations: add_vec(&qr.translations, &cr.translations),
        rotations: add_vec(&qr.rotations, &cr.rotations),
        boosts: add_vec(&qr.boosts, &cr.boosts),
        hamiltonian,
        central_charge: quantum_mass.clone(),
        quantum_mass: Some(quantum_mass.clone()),
        classical_mass: Some(classical_mass.clone()),
    })
}

/// `1 / (a·b)`
fn inv_product(a: &ParamScalar, b: &ParamScalar) -> Result<ParamScalar> {
    (a * b).inv()
}

/// One checked bracket relation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationCheck {
    pub label: String,
    #[serde(serialize_with = "as_display")]
    pub computed: OperatorExpr,
    #[serde(serialize_with = "as_display")]
    pub expected: OperatorExpr,
    #[serde(serialize_with = "as_display")]
    pub residual: OperatorExpr,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn as_display<S: serde::Serializer>(e: &OperatorExpr, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&e.to_string())
}

/// Residuals of every checked relation of a representation.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct AlgebraReport {
    pub representation: String,
    pub entries: Vec<RelationCheck>,
}

impl AlgebraReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn entry(&self, label: &str) -> Option<&RelationCheck> {
        self.entries.iter().find(|e| e.label == label)
    }

    fn push(&mut self, label: String, computed: OperatorExpr, expected: OperatorExpr, note: Option<String>) {
        let residual = &computed - &expected;
        let pass = residual.is_zero();
        self.entries.push(RelationCheck { label, computed, expected, residual, pass, note });
    }
}

impl fmt::Display for AlgebraReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let status = if e.pass { "pass" } else { "FAIL" };
            write!(f, "{status}  {:<12} = {}", e.label, e.computed)?;
            if let Some(n) = &e.note {
                write!(f, "   ({n})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn i_times(e: &OperatorExpr) -> OperatorExpr {
    e.scale(&ParamScalar::i())
}

/// Check every bracket of the Galilei algebra, with the representation's
/// own central charge in `[G_i, T_j] = i δ_ij C`.
pub fn verify_algebra(rep: &Representation) -> AlgebraReport {
    let mut report = AlgebraReport { representation: rep.name.clone(), entries: Vec::new() };
    let (t, j, g, h) = (&rep.translations, &rep.rotations, &rep.boosts, &rep.hamiltonian);
    let zero = OperatorExpr::zero;

    for a in 0..3 {
        for b in (a + 1)..3 {
            report.push(format!("[T{},T{}]", a + 1, b + 1), t[a].commutator(&t[b]), zero(), None);
        }
    }
    for a in 0..3 {
        for b in (a + 1)..3 {
            report.push(format!("[G{},G{}]", a + 1, b + 1), g[a].commutator(&g[b]), zero(), None);
        }
    }
    let eps_sum = |v: &Vector3, a: usize, b: usize| -> OperatorExpr {
        let mut out = OperatorExpr::zero();
        for c in 0..3 {
            let e = levi_civita(a + 1, b + 1, c + 1);
            if e != 0 {
                out = &out + &v[c].scale(&ParamScalar::integer(e));
            }
        }
        i_times(&out)
    };
    for a in 0..3 {
        for b in (a + 1)..3 {
            report.push(format!("[J{},J{}]", a + 1, b + 1), j[a].commutator(&j[b]), eps_sum(j, a, b), None);
        }
    }
    for a in 0..3 {
        for b in 0..3 {
            report.push(format!("[J{},T{}]", a + 1, b + 1), j[a].commutator(&t[b]), eps_sum(t, a, b), None);
        }
    }
    for a in 0..3 {
        for b in 0..3 {
            report.push(format!("[J{},G{}]", a + 1, b + 1), j[a].commutator(&g[b]), eps_sum(g, a, b), None);
        }
    }
    let charge_note = rep.central_charge.is_zero().then(|| "central charge 0".to_string());
    for a in 0..3 {
        for b in 0..3 {
            let expected = if a == b { OperatorExpr::scalar(&ParamScalar::i() * &rep.central_charge) } else { zero() };
            let note = if a == b { charge_note.clone() } else { None };
            report.push(format!("[G{},T{}]", a + 1, b + 1), g[a].commutator(&t[b]), expected, note);
        }
    }
    for a in 0..3 {
        report.push(format!("[J{},H]", a + 1), j[a].commutator(h), zero(), None);
    }
    for a in 0..3 {
        report.push(format!("[T{},H]", a + 1), t[a].commutator(h), zero(), None);
    }
    for a in 0..3 {
        report.push(format!("[G{},H]", a + 1), g[a].commutator(h), i_times(&t[a]), None);
    }
    report
}

/// Two quantum particles with pair potential `V`: checks the full algebra
/// for the total generators and conservation of `k1 + k2`.
pub fn two_particle_quantum_check(potential: &OperatorExpr) -> Result<AlgebraReport> {
    if !potential.is_hermitian() {
        return Err(Error::NotHermitian(potential.to_string()));
    }
    let m1 = ParamScalar::param(Param::QuantumMass1);
    let m2 = ParamScalar::param(Param::QuantumMass2);
    let t = ParamScalar::param(Param::Time);
    let r1 = vector(Sector::Quantum, Kind::Position)?;
    let k1 = vector(Sector::Quantum, Kind::Momentum)?;
    let r2 = vector(Sector::Quantum2, Kind::Position)?;
    let k2 = vector(Sector::Quantum2, Kind::Momentum)?;
    let two = ParamScalar::integer(2);
    let kinetic = &dot(&k1, &k1).scale(&inv_product(&two, &m1)?) + &dot(&k2, &k2).scale(&inv_product(&two, &m2)?);
    let translations = add_vec(&k1, &k2);
    let rep = Representation {
        name: "two-particle quantum".to_string(),
        rotations: add_vec(&cross(&r1, &k1), &cross(&r2, &k2)),
        boosts: add_vec(
            &sub_vec(&scale_vec(&r1, &m1), &scale_vec(&k1, &t)),
            &sub_vec(&scale_vec(&r2, &m2), &scale_vec(&k2, &t)),
        ),
        hamiltonian: &kinetic + potential,
        central_charge: &m1 + &m2,
        translations: translations.clone(),
        quantum_mass: None,
        classical_mass: None,
    };
    let mut report = verify_algebra(&rep);
    for (a, total) in translations.iter().enumerate() {
        report.push(
            format!("conserved k1+k2 ({})", a + 1),
            total.commutator(&rep.hamiltonian),
            OperatorExpr::zero(),
            None,
        );
    }
    Ok(report)
}

/// Commutative polynomial in classical phase-space coordinates `q, p`
/// (one or two classical particles).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PhaseSpacePoly(OperatorExpr);

fn is_phase_space_coordinate(g: Generator) -> bool {
    !g.sector.is_quantum() && matches!(g.kind, Kind::Position | Kind::Momentum)
}

impl PhaseSpacePoly {
    pub fn zero() -> Self {
        PhaseSpacePoly(OperatorExpr::zero())
    }

    pub fn constant(c: ParamScalar) -> Self {
        PhaseSpacePoly(OperatorExpr::scalar(c))
    }

    pub fn coordinate(g: Generator) -> Result<Self> {
        Self::try_from_expr(OperatorExpr::generator(g))
    }

    /// Accepts only expressions built from classical `q` and `p`.
    pub fn try_from_expr(e: OperatorExpr) -> Result<Self> {
        if e.generators().into_iter().all(is_phase_space_coordinate) {
            Ok(PhaseSpacePoly(e))
        } else {
            Err(Error::NotPhaseSpacePolynomial(e.to_string()))
        }
    }

    pub fn as_expr(&self) -> &OperatorExpr {
        &self.0
    }

    pub fn into_expr(self) -> OperatorExpr {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn derivative(&self, g: Generator) -> PhaseSpacePoly {
        PhaseSpacePoly(OperatorExpr::from_terms(self.0.terms().filter_map(|(m, c)| {
            m.derivative(g).map(|(n, rest)| (rest, c.scale(&crate::scalar::GaussianRational::from_integer(n as i64))))
        })))
    }

    fn sectors(&self, other: &PhaseSpacePoly) -> BTreeSet<Sector> {
        let mut s: BTreeSet<Sector> = self.0.generators().iter().map(|g| g.sector).collect();
        s.extend(other.0.generators().iter().map(|g| g.sector));
        s
    }
}

impl std::ops::Add for &PhaseSpacePoly {
    type Output = PhaseSpacePoly;
    fn add(self, o: &PhaseSpacePoly) -> PhaseSpacePoly {
        PhaseSpacePoly(&self.0 + &o.0)
    }
}

impl std::ops::Sub for &PhaseSpacePoly {
    type Output = PhaseSpacePoly;
    fn sub(self, o: &PhaseSpacePoly) -> PhaseSpacePoly {
        PhaseSpacePoly(&self.0 - &o.0)
    }
}

impl std::ops::Mul for &PhaseSpacePoly {
    type Output = PhaseSpacePoly;
    fn mul(self, o: &PhaseSpacePoly) -> PhaseSpacePoly {
        PhaseSpacePoly(&self.0 * &o.0)
    }
}

impl fmt::Display for PhaseSpacePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn coordinate_pairs(sectors: impl IntoIterator<Item = Sector>) -> Vec<(Generator, Generator)> {
    let mut out = Vec::new();
    for s in sectors {
        for axis in 1..=3 {
            out.push((
                Generator::new(s, Kind::Position, axis).expect("classical q"),
                Generator::new(s, Kind::Momentum, axis).expect("classical p"),
            ));
        }
    }
    out
}

/// `{f, g} = Σ (∂f/∂q ∂g/∂p − ∂f/∂p ∂g/∂q)` over every classical sector present.
pub fn poisson_bracket(f: &PhaseSpacePoly, g: &PhaseSpacePoly) -> PhaseSpacePoly {
    let mut out = PhaseSpacePoly::zero();
    for (q, p) in coordinate_pairs(f.sectors(g)) {
        let a = &f.derivative(q) * &g.derivative(p);
        let b = &f.derivative(p) * &g.derivative(q);
        out = &out + &(&a - &b);
    }
    out
}

/// `H_cl = ∇_p H_c · λq − ∇_q H_c · λp`.
pub fn liouvillian_from_hamiltonian(hc: &PhaseSpacePoly) -> OperatorExpr {
    let sectors: BTreeSet<Sector> = hc.0.generators().iter().map(|g| g.sector).collect();
    let mut out = OperatorExpr::zero();
    for (q, p) in coordinate_pairs(sectors) {
        let lq = OperatorExpr::generator(Generator::new(q.sector, Kind::LambdaQ, q.axis).expect("λq"));
        let lp = OperatorExpr::generator(Generator::new(q.sector, Kind::LambdaP, q.axis).expect("λp"));
        out = &out + &(&hc.derivative(p).0 * &lq);
        out = &out - &(&hc.derivative(q).0 * &lp);
    }
    out
}

/// Act with a classical-sector operator on a phase-space function using
/// `q, p` ↦ multiplication and `λq, λp` ↦ `−i ∂/∂q, −i ∂/∂p`.
pub fn apply_as_differential_operator(op: &OperatorExpr, f: &PhaseSpacePoly) -> Result<PhaseSpacePoly> {
    let mut out = PhaseSpacePoly::zero();
    for (m, c) in op.terms() {
        let mut acc = f.clone();
        let mut multiplier = Vec::new();
        // Normal order puts λ factors rightmost, so they act first.
        for &(g, e) in m.factors().iter().rev() {
            if g.sector.is_quantum() {
                return Err(Error::NotPhaseSpacePolynomial(op.to_string()));
            }
            match g.kind {
                Kind::LambdaQ | Kind::LambdaP => {
                    let conj = Generator::new(
                        g.sector,
                        if g.kind == Kind::LambdaQ { Kind::Position } else { Kind::Momentum },
                        g.axis,
                    )?;
                    for _ in 0..e {
                        acc = PhaseSpacePoly(acc.derivative(conj).0.scale(&-&ParamScalar::i()));
                    }
                }
                _ => multiplier.push((g, e)),
            }
        }
        multiplier.reverse();
        let mono = PhaseSpacePoly(OperatorExpr::term(Monomial::from_sorted(multiplier), c.clone()));
        out = &out + &(&mono * &acc);
    }
    Ok(out)
}
