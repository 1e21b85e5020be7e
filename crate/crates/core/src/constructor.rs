//! Two-measure Gram–Schmidt.
//!
//! A constrained family is a sequence of monic polynomials `P_1, P_2, ...`
//! (`deg P_n = n`) that are mutually orthogonal under one functional while
//! each integrates to zero under a second one. Order zero is impossible
//! (a nonzero constant cannot have zero average), so the index starts at 1.
//! Classical families (`n = 0, 1, ...`) only carry the orthogonality
//! condition.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::measures::MomentFunctional;
use crate::poly::{rational_to_string, to_f64, Polynomial, Rational};
use crate::scalar::UnitScalar;
use crate::quadrature::GaussLegendre;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    GramSchmidt,
    Recursion,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstrainedFamily {
    pub ortho: MomentFunctional,
    pub constraint: MomentFunctional,
    /// `polys[n - 1]` is the member of order `n`.
    pub polys: Vec<Polynomial>,
    /// `norms[n - 1] = pair(ortho, P_n, P_n)`.
    pub norms: Vec<UnitScalar>,
    pub provenance: Provenance,
}

impl ConstrainedFamily {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Member of order `n` (1-based).
    pub fn get(&self, n: usize) -> Option<&Polynomial> {
        n.checked_sub(1).and_then(|i| self.polys.get(i))
    }

    pub fn norm(&self, n: usize) -> Option<&UnitScalar> {
        n.checked_sub(1).and_then(|i| self.norms.get(i))
    }

    /// Header plus members in the polynomial JSON interchange format.
    pub fn to_json(&self) -> Value {
        json!({
            "ortho": self.ortho.to_string(),
            "constraint": self.constraint.to_string(),
            "N": self.len(),
            "first_order": 1,
            "polys": self.polys,
            "norms": self.norms.iter().map(scalar_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalFamily {
    pub ortho: MomentFunctional,
    /// `polys[n]` has degree `n`.
    pub polys: Vec<Polynomial>,
    pub norms: Vec<UnitScalar>,
}

impl ClassicalFamily {
    pub fn to_json(&self) -> Value {
        json!({
            "ortho": self.ortho.to_string(),
            "N": self.polys.len().saturating_sub(1),
            "first_order": 0,
            "polys": self.polys,
            "norms": self.norms.iter().map(scalar_json).collect::<Vec<_>>(),
        })
    }
}

pub(crate) fn scalar_json(s: &UnitScalar) -> Value {
    json!({
        "value": rational_to_string(&s.value),
        "unit": s.unit.to_string(),
        "exact": s.exact,
    })
}

/// `r^n` minus its average under `c`.
pub fn constrained_seed(n: usize, c: &MomentFunctional) -> Result<Polynomial> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "constrained seeds start at order 1".into(),
        ));
    }
    let mass = c.apply(&Polynomial::one())?;
    if mass.is_zero() {
        return Err(Error::ZeroMass);
    }
    let rn = Polynomial::monomial(n, Rational::from_integer(1.into()));
    let avg = c.apply(&rn)?.ratio(&mass)?;
    Ok(&rn - &Polynomial::constant(avg))
}

/// Bilinear form evaluator. For exact functionals the moments are tabulated
/// once and each accepted member keeps its dual vector
/// `dual[j] = sum_i P[i] m[i + j]`, so a pairing costs one dot product.
/// Numeric weights are paired pointwise on the quadrature nodes, which
/// avoids the cancellation of the monomial moment sum.
enum Pairing {
    Exact {
        moments: Vec<Rational>,
        unit: crate::scalar::Unit,
    },
    Numeric {
        nodes: Vec<f64>,
        weights: Vec<f64>,
    },
}

impl Pairing {
    fn new(o: &MomentFunctional, max_degree: usize) -> Result<Self> {
        if o.is_exact() {
            // validates parameters
            o.moment(0)?;
            Ok(Pairing::Exact {
                moments: (0..=2 * max_degree)
                    .map(|k| o.exact_moment(k).expect("exact kind"))
                    .collect(),
                unit: o.unit(),
            })
        } else {
            let MomentFunctional::Numeric(w) = o else {
                unreachable!("only numeric kinds are inexact")
            };
            // surfaces quadrature divergence at the working degrees
            for k in 0..=2 * max_degree {
                o.moment(k)?;
            }
            let rule = GaussLegendre::on_interval(w.order, w.lo, w.hi);
            let weights = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(&r, &q)| q * w.weight(r))
                .collect();
            Ok(Pairing::Numeric {
                nodes: rule.nodes,
                weights,
            })
        }
    }

    fn dual(&self, p: &Polynomial, len: usize) -> Vec<Rational> {
        match self {
            Pairing::Exact { moments, .. } => (0..len)
                .map(|j| {
                    p.coeffs()
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .fold(Rational::zero(), |acc, (i, c)| acc + c * &moments[i + j])
                })
                .collect(),
            Pairing::Numeric { .. } => Vec::new(),
        }
    }

    fn pair(&self, p: &Polynomial, q: &Polynomial, q_dual: &[Rational]) -> Result<UnitScalar> {
        match self {
            Pairing::Exact { unit, .. } => {
                let v = p
                    .coeffs()
                    .iter()
                    .zip(q_dual)
                    .filter(|(c, _)| !c.is_zero())
                    .fold(Rational::zero(), |acc, (c, d)| acc + c * d);
                Ok(UnitScalar::new(v, unit.clone()))
            }
            Pairing::Numeric { nodes, weights } => Ok(UnitScalar::approx(
                nodes
                    .iter()
                    .zip(weights)
                    .map(|(&r, &w)| w * p.eval(r) * q.eval(r))
                    .sum(),
            )),
        }
    }
}

fn round_to_f64(p: &Polynomial) -> Polynomial {
    Polynomial::new(
        p.coeffs()
            .iter()
            .map(|c| Rational::from_float(to_f64(c)).unwrap_or_else(Rational::zero))
            .collect(),
    )
}

/// Modified Gram–Schmidt of `seeds` (seed `i` has degree `first + i` and is
/// monic) under `o`. Returns monic orthogonal polynomials and their norms.
fn gram_schmidt(
    o: &MomentFunctional,
    seeds: Vec<Polynomial>,
    first: usize,
) -> Result<(Vec<Polynomial>, Vec<UnitScalar>)> {
    let max_degree = first + seeds.len();
    let pairing = Pairing::new(o, max_degree)?;
    let exact = o.is_exact();
    let mut polys: Vec<Polynomial> = Vec::with_capacity(seeds.len());
    let mut duals: Vec<Vec<Rational>> = Vec::with_capacity(seeds.len());
    let mut norms: Vec<UnitScalar> = Vec::with_capacity(seeds.len());
    for (i, seed) in seeds.into_iter().enumerate() {
        let degree = first + i;
        let mut s = seed;
        let passes = if exact { 1 } else { 2 };
        for m in (0..passes).flat_map(|_| 0..polys.len()) {
            let proj = pairing.pair(&s, &polys[m], &duals[m])?;
            if proj.is_zero() {
                continue;
            }
            let coef = proj.ratio(&norms[m])?;
            s = &s - &polys[m].scale(&coef);
            if !exact {
                s = round_to_f64(&s);
            }
        }
        let dual = pairing.dual(&s, max_degree + 1);
        let norm = pairing.pair(&s, &s, &dual)?;
        if !norm.is_positive() {
            return Err(Error::NonPositiveGram {
                degree,
                norm: norm.to_f64(),
            });
        }
        polys.push(s);
        duals.push(dual);
        norms.push(norm);
    }
    Ok((polys, norms))
}

/// Orders `1..=n_max` of the monic family orthogonal under `o` with zero
/// average under `c`.
pub fn constrained_family(
    o: &MomentFunctional,
    c: &MomentFunctional,
    n_max: usize,
) -> Result<ConstrainedFamily> {
    if n_max == 0 {
        return Err(Error::InvalidArgument(
            "constrained families start at order 1 (N >= 1)".into(),
        ));
    }
    let seeds = (1..=n_max)
        .map(|n| constrained_seed(n, c))
        .collect::<Result<Vec<_>>>()?;
    constrained_family_from_seeds(o, c, seeds)
}

/// Same as [`constrained_family`] from caller-supplied seeds. Seed `i`
/// must have degree `i + 1` and zero average under `c`; it is made monic
/// before orthogonalization.
pub fn constrained_family_from_seeds(
    o: &MomentFunctional,
    c: &MomentFunctional,
    seeds: Vec<Polynomial>,
) -> Result<ConstrainedFamily> {
    let mut monic = Vec::with_capacity(seeds.len());
    for (i, s) in seeds.iter().enumerate() {
        if s.degree() != Some(i + 1) {
            return Err(Error::InvalidArgument(format!(
                "seed {} has degree {:?}, expected {}",
                i + 1,
                s.degree(),
                i + 1
            )));
        }
        let avg = c.apply(s)?;
        if c.is_exact() && !avg.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "seed {} violates the constraint",
                i + 1
            )));
        }
        monic.push(s.monic().expect("nonzero seed"));
    }
    let (polys, norms) = gram_schmidt(o, monic, 1)?;
    Ok(ConstrainedFamily {
        ortho: o.clone(),
        constraint: c.clone(),
        polys,
        norms,
        provenance: Provenance::GramSchmidt,
    })
}

/// Monic orthogonal polynomials of degrees `0..=n_max` under `o`.
pub fn classical_family(o: &MomentFunctional, n_max: usize) -> Result<ClassicalFamily> {
    let seeds = (0..=n_max)
        .map(|n| Polynomial::monomial(n, Rational::from_integer(1.into())))
        .collect();
    let (polys, norms) = gram_schmidt(o, seeds, 0)?;
    Ok(ClassicalFamily {
        ortho: o.clone(),
        polys,
        norms,
    })
}

/// Largest constraint and orthogonality residuals of a family, as floats
/// relative to the family norms. Exact kinds yield literal zeros.
pub fn family_residuals(f: &ConstrainedFamily) -> Result<(f64, f64)> {
    let mut constraint: f64 = 0.0;
    let mut ortho: f64 = 0.0;
    let one = Polynomial::one();
    let mass = pair_f64(&f.constraint, &one, &one)?.abs();
    for (n, p) in f.polys.iter().enumerate() {
        let avg = pair_f64(&f.constraint, p, &one)?;
        let scale = f.norms[n].to_f64().sqrt() * mass.sqrt();
        constraint = constraint.max((avg / scale).abs());
        for m in 0..n {
            let v = pair_f64(&f.ortho, p, &f.polys[m])?;
            let s = (f.norms[n].to_f64() * f.norms[m].to_f64()).sqrt();
            ortho = ortho.max((v / s).abs());
        }
    }
    Ok((constraint, ortho))
}

/// Float pairing; numeric weights integrate `w p q` pointwise so the
/// result does not suffer the cancellation of the monomial moment sum.
fn pair_f64(f: &MomentFunctional, p: &Polynomial, q: &Polynomial) -> Result<f64> {
    match f {
        MomentFunctional::Numeric(w) => {
            let rule = GaussLegendre::on_interval(2 * w.order, w.lo, w.hi);
            Ok(rule.integrate(|r| w.weight(r) * p.eval(r) * q.eval(r)))
        }
        _ => Ok(f.pair(p, q)?.to_f64()),
    }
}
