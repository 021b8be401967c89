//! Numeric checks of algebraic decompositions: solution sampling, membership,
//! disjointness and coverage, and solution counting with an independent
//! brute-force oracle.

use crate::algsys::Relation;
use crate::decompose::SimpleSystem;
use crate::polyring::{content, div_exact, gcd, Poly, Rational, Variable};
use groebner::{groebner, is_zero_dimensional, minimal_polynomial, DPoly};
use dashu_float::FBig;
use dashu_int::IBig;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub struct SampleConfig {
    pub precision: usize,
    /// Relative magnitude below which a value counts as zero.
    pub tolerance: f64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { precision: 128, tolerance: 1e-20, samples: 2, seed: 0 }
    }
}

impl SampleConfig {
    /// The tolerance must leave at least 16 guard bits of working precision.
    pub fn validate(&self) -> Result<(), VerifyError> {
        let floor = (-(self.precision as f64) + 16.0).exp2();
        if self.precision < 64 || !(self.tolerance > floor && self.tolerance < 1.0) {
            return Err(VerifyError::Config(format!(
                "tolerance {} is not resolvable at {} bits",
                self.tolerance, self.precision
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyError {
    Config(String),
    /// No admissible random value found for a variable.
    Resampling(String),
    RootFinding(String),
    TooManyVariables(usize),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::Config(s) => write!(f, "invalid sampling configuration: {s}"),
            VerifyError::Resampling(v) => write!(f, "resampling budget exhausted for {v}"),
            VerifyError::RootFinding(s) => write!(f, "root finding failed: {s}"),
            VerifyError::TooManyVariables(n) => write!(f, "brute-force counting supports at most 3 variables, got {n}"),
        }
    }
}

impl std::error::Error for VerifyError {}

/// Complex number with binary floating point parts of fixed precision.
#[derive(Clone, Debug)]
pub struct Complex {
    pub re: FBig,
    pub im: FBig,
}

fn float(n: IBig, prec: usize) -> FBig {
    FBig::from(n).with_precision(prec).value()
}

fn to_ibig(n: &num_bigint::BigInt) -> IBig {
    n.to_string().parse().expect("decimal integer")
}

fn from_f64(x: f64, prec: usize) -> FBig {
    FBig::try_from(x).expect("finite").with_precision(prec).value()
}

impl Complex {
    pub fn zero(prec: usize) -> Self {
        Complex { re: float(IBig::ZERO, prec), im: float(IBig::ZERO, prec) }
    }

    pub fn from_rational(r: &Rational, prec: usize) -> Self {
        let re = float(to_ibig(r.numer()), prec) / float(to_ibig(r.denom()), prec);
        Complex { re, im: float(IBig::ZERO, prec) }
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        Complex { re: from_f64(re, prec), im: from_f64(im, prec) }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64().value(), self.im.to_f64().value())
    }

    pub fn add(&self, o: &Self) -> Self {
        Complex { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Complex { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Complex { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    pub fn div(&self, o: &Self) -> Self {
        let d = o.norm_sqr();
        let re = (&self.re * &o.re + &self.im * &o.im) / &d;
        let im = (&self.im * &o.re - &self.re * &o.im) / &d;
        Complex { re, im }
    }

    pub fn norm_sqr(&self) -> FBig {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.repr().significand().is_zero() && self.im.repr().significand().is_zero()
    }

    fn norm_f64(&self) -> f64 {
        self.norm_sqr().to_f64().value().sqrt()
    }
}

pub type Point = BTreeMap<Variable, Complex>;

/// Value of `p` at the point and the squared magnitude of its largest term.
fn eval_with_scale(p: &Poly<Variable>, pt: &Point, prec: usize) -> (Complex, FBig) {
    let mut sum = Complex::zero(prec);
    let mut scale = float(IBig::ONE, prec);
    for (m, c) in p.terms() {
        let mut t = Complex::from_rational(c, prec);
        for (v, e) in m.iter() {
            let z = &pt[v];
            for _ in 0..*e {
                t = t.mul(z);
            }
        }
        let n = t.norm_sqr();
        if n > scale {
            scale = n;
        }
        sum = sum.add(&t);
    }
    (sum, scale)
}

pub fn evaluate(p: &Poly<Variable>, pt: &Point, prec: usize) -> Complex {
    eval_with_scale(p, pt, prec).0
}

/// Whether `p` vanishes at the point relative to the size of its terms.
pub fn vanishes(p: &Poly<Variable>, pt: &Point, cfg: &SampleConfig) -> bool {
    let (v, scale) = eval_with_scale(p, pt, cfg.precision);
    let tol = from_f64(cfg.tolerance * cfg.tolerance, cfg.precision);
    v.norm_sqr() <= tol * scale
}

/// Whether the point satisfies every relation (all their variables assigned).
pub fn satisfies(rels: &[Relation<Variable>], pt: &Point, cfg: &SampleConfig) -> bool {
    rels.iter().all(|r| vanishes(&r.poly, pt, cfg) == r.is_equation())
}

pub fn contains(s: &SimpleSystem<Variable>, pt: &Point, cfg: &SampleConfig) -> bool {
    satisfies(&s.relations, pt, cfg)
}

fn f64_roots(a: &[(f64, f64)]) -> Option<Vec<(f64, f64)>> {
    let d = a.len() - 1;
    let mul = |x: (f64, f64), y: (f64, f64)| (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0);
    let div = |x: (f64, f64), y: (f64, f64)| {
        let n = y.0 * y.0 + y.1 * y.1;
        ((x.0 * y.0 + x.1 * y.1) / n, (x.1 * y.0 - x.0 * y.1) / n)
    };
    let lead = a[d];
    let b: Vec<(f64, f64)> = a.iter().map(|&c| div(c, lead)).collect();
    let radius = 1.0 + b[..d].iter().map(|c| c.0.hypot(c.1)).fold(0.0, f64::max);
    if !radius.is_finite() {
        return None;
    }
    let mut z: Vec<(f64, f64)> = (0..d)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / d as f64 + 0.4;
            (radius * t.cos(), radius * t.sin())
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..d {
            let (mut p, mut dp) = ((0.0, 0.0), (0.0, 0.0));
            for c in b.iter().rev() {
                dp = mul(dp, z[k]);
                dp = (dp.0 + p.0, dp.1 + p.1);
                p = mul(p, z[k]);
                p = (p.0 + c.0, p.1 + c.1);
            }
            if p == (0.0, 0.0) {
                continue;
            }
            let w = div(p, dp);
            let mut s = (0.0, 0.0);
            for j in (0..d).filter(|&j| j != k) {
                let r = div((1.0, 0.0), (z[k].0 - z[j].0, z[k].1 - z[j].1));
                s = (s.0 + r.0, s.1 + r.1);
            }
            let ws = mul(w, s);
            let corr = div(w, (1.0 - ws.0, -ws.1));
            if !(corr.0.is_finite() && corr.1.is_finite()) {
                return None;
            }
            z[k] = (z[k].0 - corr.0, z[k].1 - corr.1);
            moved = moved.max(corr.0.hypot(corr.1) / z[k].0.hypot(z[k].1).max(1.0));
        }
        if moved < 1e-14 {
            break;
        }
    }
    Some(z)
}

/// All complex roots of `Σ a_i x^i` (`a` ascending, leading coefficient
/// nonzero), polished by Aberth iteration at full precision.
pub fn complex_roots(a: &[Complex], prec: usize) -> Result<Vec<Complex>, VerifyError> {
    let d = a.len().saturating_sub(1);
    if d == 0 {
        return Ok(Vec::new());
    }
    if a[d].is_zero() {
        return Err(VerifyError::RootFinding("vanishing leading coefficient".into()));
    }
    let approx: Vec<(f64, f64)> = a.iter().map(Complex::to_f64).collect();
    let start = f64_roots(&approx).unwrap_or_else(|| {
        (0..d)
            .map(|k| {
                let t = std::f64::consts::TAU * k as f64 / d as f64 + 0.4;
                (t.cos(), t.sin())
            })
            .collect()
    });
    let mut z: Vec<Complex> = start.iter().map(|&(re, im)| Complex::from_f64(re, im, prec)).collect();
    let b: Vec<Complex> = a.iter().map(|c| c.div(&a[d])).collect();
    let one = Complex::from_f64(1.0, 0.0, prec);
    let target = (-(prec as f64) + 12.0).exp2();
    for _ in 0..200 {
        let mut moved = 0.0f64;
        for k in 0..d {
            let mut p = Complex::zero(prec);
            let mut dp = Complex::zero(prec);
            for c in b.iter().rev() {
                dp = dp.mul(&z[k]).add(&p);
                p = p.mul(&z[k]).add(c);
            }
            if p.is_zero() {
                continue;
            }
            let w = p.div(&dp);
            let mut s = Complex::zero(prec);
            for j in (0..d).filter(|&j| j != k) {
                s = s.add(&one.div(&z[k].sub(&z[j])));
            }
            let corr = w.div(&one.sub(&w.mul(&s)));
            z[k] = z[k].sub(&corr);
            let step = corr.norm_f64() / z[k].norm_f64().max(1.0);
            if !step.is_finite() {
                return Err(VerifyError::RootFinding("iteration diverged".into()));
            }
            moved = moved.max(step);
        }
        if moved < target {
            return Ok(z);
        }
    }
    Err(VerifyError::RootFinding(format!("no convergence for degree {d}")))
}

fn specialize(p: &Poly<Variable>, x: &Variable, pt: &Point, prec: usize) -> Vec<Complex> {
    p.coeffs(x).iter().map(|c| evaluate(c, pt, prec)).collect()
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-100i64..=100).into(), rng.gen_range(1i64..=100).into())
}

/// Points of a simple system over the variables `vars` (ascending): free and
/// inequation-led variables get random rationals, equation-led ones every
/// root of the specialized equation.
pub fn sample_solutions(
    s: &SimpleSystem<Variable>,
    vars: &[Variable],
    stream: u64,
    cfg: &SampleConfig,
) -> Result<Vec<Point>, VerifyError> {
    let prec = cfg.precision;
    let mut points = vec![Point::new()];
    for x in vars {
        let rels: Vec<&Relation<Variable>> = s.relations.iter().filter(|r| r.leader() == Some(x)).collect();
        let eq = rels.iter().find(|r| r.is_equation());
        let ne: Vec<Relation<Variable>> = rels.iter().filter(|r| !r.is_equation()).map(|r| (*r).clone()).collect();
        let mut rng = rng_for(cfg.seed, stream * 64 + x.0 as u64);
        let mut next = Vec::new();
        for pt in &points {
            match eq {
                Some(e) => {
                    for root in complex_roots(&specialize(&e.poly, x, pt, prec), prec)? {
                        let mut q = pt.clone();
                        q.insert(*x, root);
                        next.push(q);
                    }
                }
                None => {
                    let mut found = 0;
                    for _ in 0..100 * cfg.samples.max(1) {
                        let mut q = pt.clone();
                        q.insert(*x, Complex::from_rational(&random_rational(&mut rng), prec));
                        if satisfies(&ne, &q, cfg) {
                            next.push(q);
                            found += 1;
                            if found == cfg.samples.max(1) {
                                break;
                            }
                        }
                    }
                    if found == 0 {
                        return Err(VerifyError::Resampling(format!("{x:?}")));
                    }
                }
            }
        }
        points = next;
    }
    Ok(points)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Count {
    Finite(u64),
    Infinite,
}

impl Count {
    pub fn plus(self, o: Count) -> Count {
        match (self, o) {
            (Count::Finite(a), Count::Finite(b)) => Count::Finite(a + b),
            _ => Count::Infinite,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Infinite => write!(f, "infinite"),
        }
    }
}

/// Number of solutions of a simple system: the product of the equation ranks
/// if every variable of `vars` leads an equation.
pub fn count_zero_dim(s: &SimpleSystem<Variable>, vars: &[Variable]) -> Count {
    let mut n = 1u64;
    for x in vars {
        match s.relations.iter().find(|r| r.is_equation() && r.leader() == Some(x)) {
            Some(r) => n *= r.poly.rank() as u64,
            None => return Count::Infinite,
        }
    }
    Count::Finite(n)
}

/// Product of the distinct irreducible factors, up to a scalar.
fn squarefree(p: &Poly<Variable>) -> Poly<Variable> {
    let Some(x) = p.leader().cloned() else {
        return p.normalized();
    };
    let c = content(p, &x);
    let pp = div_exact(p, &c).expect("content divides");
    let r = div_exact(&pp, &gcd(&pp, &pp.derive(&x))).expect("gcd divides");
    (&squarefree(&c) * &r).normalized()
}

fn dense(p: &Poly<Variable>, index: &BTreeMap<Variable, usize>) -> DPoly {
    let mut m = BTreeMap::new();
    for (mono, c) in p.terms() {
        let mut e = vec![0; index.len()];
        for (v, k) in mono.iter() {
            e[index[v]] = *k;
        }
        m.insert(e, c.clone());
    }
    DPoly::from_map(m)
}

/// Counts the solutions of the input relations over `vars` (at most three) by
/// a Gröbner basis, numeric roots of the eliminants and filtering of
/// the coordinate grid. Returns the points found when finite.
pub fn brute_count(
    rels: &[Relation<Variable>],
    vars: &[Variable],
    cfg: &SampleConfig,
) -> Result<(Count, Vec<Point>), VerifyError> {
    if vars.len() > 3 {
        return Err(VerifyError::TooManyVariables(vars.len()));
    }
    if rels.iter().any(|r| r.is_contradiction()) {
        return Ok((Count::Finite(0), Vec::new()));
    }
    let mut index: BTreeMap<Variable, usize> = vars.iter().enumerate().map(|(k, v)| (*v, k)).collect();
    for r in rels {
        for v in r.poly.vars() {
            let k = index.len();
            index.entry(v).or_insert(k);
        }
    }
    let t = index.len();
    let h = rels.iter().filter(|r| !r.is_equation()).fold(Poly::one(), |acc, r| &acc * &squarefree(&r.poly));
    let mut polys: Vec<DPoly> = rels.iter().filter(|r| r.is_equation()).map(|r| dense(&r.poly, &index)).collect();
    let mut shifted = dense(&h, &index);
    for (e, _) in &mut shifted.terms {
        e.push(1);
    }
    shifted.terms.push((vec![0; t + 1], -Rational::one()));
    for p in &mut polys {
        for (e, _) in &mut p.terms {
            e.push(0);
        }
    }
    polys.push(shifted);
    let g = groebner(&polys);
    if g[0].is_constant() {
        return Ok((Count::Finite(0), Vec::new()));
    }
    if !is_zero_dimensional(&g) {
        return Ok((Count::Infinite, Vec::new()));
    }
    let mut axes = Vec::new();
    for (k, x) in vars.iter().enumerate() {
        let coeffs: Vec<Poly<Variable>> = minimal_polynomial(&g, k).into_iter().map(Poly::constant).collect();
        let e = squarefree(&Poly::from_coeffs(x, &coeffs));
        let coeffs: Vec<Complex> =
            e.coeffs(x).iter().map(|c| Complex::from_rational(&c.constant_value().unwrap(), cfg.precision)).collect();
        axes.push((*x, complex_roots(&coeffs, cfg.precision)?));
    }
    let mut points = vec![Point::new()];
    for (x, roots) in &axes {
        points = points
            .iter()
            .flat_map(|pt| {
                roots.iter().map(move |r| {
                    let mut q = pt.clone();
                    q.insert(*x, r.clone());
                    q
                })
            })
            .filter(|q| {
                rels.iter()
                    .filter(|r| r.is_equation() && r.poly.vars().iter().all(|v| q.contains_key(v)))
                    .all(|r| vanishes(&r.poly, q, cfg))
            })
            .collect();
    }
    points.retain(|q| satisfies(rels, q, cfg));
    Ok((Count::Finite(points.len() as u64), points))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub precision: usize,
    pub points: usize,
    pub violations: Vec<String>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn describe(pt: &Point) -> String {
    let parts: Vec<String> = pt
        .iter()
        .map(|(v, z)| {
            let (re, im) = z.to_f64();
            format!("v{}={re:.6}{im:+.6}i", v.0)
        })
        .collect();
    parts.join(", ")
}

fn disjointness_pass(
    systems: &[SimpleSystem<Variable>],
    input: Option<&[Relation<Variable>]>,
    vars: &[Variable],
    cfg: &SampleConfig,
) -> Result<Report, VerifyError> {
    let mut report = Report { precision: cfg.precision, ..Report::default() };
    for (i, s) in systems.iter().enumerate() {
        for pt in sample_solutions(s, vars, i as u64, cfg)? {
            report.points += 1;
            let owners: Vec<usize> = (0..systems.len()).filter(|&j| contains(&systems[j], &pt, cfg)).collect();
            if owners != [i] {
                report.violations.push(format!("point {} of system {i} lies in systems {owners:?}", describe(&pt)));
            }
            if input.is_some_and(|rels| !satisfies(rels, &pt, cfg)) {
                report.violations.push(format!("point {} of system {i} does not solve the input", describe(&pt)));
            }
        }
    }
    Ok(report)
}

fn with_escalation<F>(cfg: &SampleConfig, pass: F) -> Result<Report, VerifyError>
where
    F: Fn(&SampleConfig) -> Result<Report, VerifyError>,
{
    cfg.validate()?;
    let first = pass(cfg)?;
    if first.ok() {
        return Ok(first);
    }
    pass(&SampleConfig { precision: cfg.precision * 2, ..cfg.clone() })
}

/// Every sampled point of every system must lie in no other system.
pub fn check_disjoint(systems: &[SimpleSystem<Variable>], vars: &[Variable], cfg: &SampleConfig) -> Result<Report, VerifyError> {
    with_escalation(cfg, |c| disjointness_pass(systems, None, vars, c))
}

/// Disjointness plus coverage: sampled points of the output solve the input,
/// and, for zero-dimensional inputs, every brute-force solution of the input
/// lies in exactly one output system (up to three variables).
pub fn check_decomposition(
    input: &[Relation<Variable>],
    systems: &[SimpleSystem<Variable>],
    vars: &[Variable],
    cfg: &SampleConfig,
) -> Result<Report, VerifyError> {
    with_escalation(cfg, |c| {
        let mut report = disjointness_pass(systems, Some(input), vars, c)?;
        if vars.len() > 3 {
            return Ok(report);
        }
        if let (Count::Finite(_), points) = brute_count(input, vars, c)? {
            for pt in points {
                report.points += 1;
                let owners: Vec<usize> = (0..systems.len()).filter(|&j| contains(&systems[j], &pt, c)).collect();
                if owners.len() != 1 {
                    report.violations.push(format!("input solution {} lies in systems {owners:?}", describe(&pt)));
                }
            }
        }
        Ok(report)
    })
}

/// Sum of the solution counts of the systems.
pub fn total_count(systems: &[SimpleSystem<Variable>], vars: &[Variable]) -> Count {
    systems.iter().fold(Count::Finite(0), |acc, s| acc.plus(count_zero_dim(s, vars)))
}

mod groebner;

#[cfg(test)]
mod tests;
