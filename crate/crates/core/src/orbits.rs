//! Functionals on 𝔫, Chevalley generators of the Borel subgroup, the
//! coadjoint action `g.λ = (g λ g⁻¹)_low`, degeneration curves and the
//! linearized orbit dimension.
//!
//! A functional is stored as a strictly lower-triangular 2n×2n matrix
//! `Σ c_α e_αᵗ`. Coefficients are read positionally: `c_{ε_i−ε_j}` at
//! `(j, i)`, `c_{ε_i+ε_j}` at `(−j, i)` and `c_{2ε_i}` at `(−i, i)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{
    is_symplectic_algebra, is_symplectic_group, laurent_limit_at_zero, IndexedMatrix, Matrix,
};
use crate::perm::{Involution, SignedPermutation};
use crate::roots::{involution_from_orthogonal_set, inner, support, OrthogonalSet, Root};
use crate::scalar::{int, rat, Laurent, Rational, Ring};

/// The root vector e_α ∈ 𝔫.
pub fn basis_element<R: Ring>(n: usize, alpha: Root) -> IndexedMatrix<R> {
    let mut e = IndexedMatrix::zero(n);
    match alpha {
        Root::Diff(i, j) => {
            let (i, j) = (i as i32, j as i32);
            e.set_at(i, j, R::one());
            e.set_at(-j, -i, -R::one());
        }
        Root::Sum(i, j) => {
            let (i, j) = (i as i32, j as i32);
            e.set_at(i, -j, R::one());
            e.set_at(j, -i, R::one());
        }
        Root::Long(i) => e.set_at(i as i32, -(i as i32), R::one()),
    }
    e
}

/// Matrix position of the coefficient of e_αᵗ.
fn coefficient_position(alpha: Root) -> (i32, i32) {
    match alpha {
        Root::Diff(i, j) => (j as i32, i as i32),
        Root::Sum(i, j) => (-(j as i32), i as i32),
        Root::Long(i) => (-(i as i32), i as i32),
    }
}

/// An element of 𝔫* ≅ 𝔫ᵗ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional<R> {
    matrix: IndexedMatrix<R>,
}

impl<R: Ring> Functional<R> {
    pub fn zero(n: usize) -> Self {
        Self { matrix: IndexedMatrix::zero(n) }
    }

    pub fn from_coefficients(n: usize, coeffs: impl IntoIterator<Item = (Root, R)>) -> Result<Self> {
        let mut m = IndexedMatrix::zero(n);
        for (alpha, c) in coeffs {
            alpha.check_rank(n)?;
            m = m.add(&basis_element::<R>(n, alpha).transpose().scale(&c))?;
        }
        Ok(Self { matrix: m })
    }

    /// Accepts a matrix only if it is strictly lower-triangular, its
    /// transpose lies in 𝔰𝔭_{2n}, and it equals the sum rebuilt from its
    /// coefficients.
    pub fn from_matrix(matrix: IndexedMatrix<R>) -> Result<Self> {
        let f = Self { matrix };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.matrix.is_strictly_lower() {
            return Err(Error::NotAFunctional("not strictly lower-triangular".into()));
        }
        if !is_symplectic_algebra(&self.matrix.transpose()) {
            return Err(Error::NotAFunctional("transpose is not in sp(2n)".into()));
        }
        let rebuilt = Self::from_coefficients(self.n(), self.coefficients())?;
        if rebuilt.matrix != self.matrix {
            return Err(Error::NotAFunctional("matrix and coefficients disagree".into()));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn matrix(&self) -> &IndexedMatrix<R> {
        &self.matrix
    }

    pub fn coefficient(&self, alpha: Root) -> R {
        let (r, c) = coefficient_position(alpha);
        self.matrix.at(r, c).clone()
    }

    /// Nonzero coefficients only.
    pub fn coefficients(&self) -> BTreeMap<Root, R> {
        Root::positive_roots(self.n())
            .into_iter()
            .map(|a| (a, self.coefficient(a)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Functional<S> {
        Functional { matrix: self.matrix.map(f) }
    }
}

impl Functional<Rational> {
    pub fn to_laurent(&self) -> Functional<Laurent> {
        self.map(|q| Laurent::constant(q.clone()))
    }
}

/// `f_{D,ξ} = Σ_{α∈D} ξ(α) e_α*`.
pub fn f_of<R: Ring>(n: usize, d: &OrthogonalSet, xi: &BTreeMap<Root, R>) -> Result<Functional<R>> {
    let mut coeffs = Vec::with_capacity(d.len());
    for &alpha in d.iter() {
        alpha.check_rank(n)?;
        match xi.get(&alpha) {
            Some(c) if !c.is_zero() => coeffs.push((alpha, c.clone())),
            _ => return Err(Error::ZeroCoefficient(alpha)),
        }
    }
    if let Some(extra) = xi.keys().find(|a| !d.contains(a)) {
        return Err(Error::InvalidRoot(format!("{extra} is not in D")));
    }
    Functional::from_coefficients(n, coeffs)
}

/// `f_D`, all coefficients one.
pub fn f_d<R: Ring>(n: usize, d: &OrthogonalSet) -> Result<Functional<R>> {
    let xi = d.iter().map(|&a| (a, R::one())).collect();
    f_of(n, d, &xi)
}

/// `f_σ = f_{Supp σ}`.
pub fn f_sigma<R: Ring>(sigma: &SignedPermutation) -> Result<Functional<R>> {
    f_d(sigma.n(), &support(sigma)?.set)
}

/// An element of B carried together with its exact inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelElement<R> {
    g: IndexedMatrix<R>,
    g_inv: IndexedMatrix<R>,
}

fn assert_square_zero<R: Ring>(e: &IndexedMatrix<R>, alpha: Root) {
    let sq = e.mul(e).expect("same rank");
    assert!(sq.is_zero(), "root vector e_{alpha} is not square-zero: exp(c·e) ≠ 1 + c·e");
}

fn exp_root<R: Ring>(n: usize, alpha: Root, c: &R, negative: bool) -> IndexedMatrix<R> {
    let mut e = basis_element::<R>(n, alpha);
    if negative {
        e = e.transpose();
    }
    assert_square_zero(&e, alpha);
    IndexedMatrix::identity(n).add(&e.scale(c)).expect("same rank")
}

/// `w_α(c) = x_α(c) x_{−α}(−c⁻¹) x_α(c)`
fn w_matrix<R: Ring>(n: usize, alpha: Root, c: &R) -> Result<IndexedMatrix<R>> {
    let inv = c.try_inverse().ok_or_else(|| Error::NotInvertible(c.to_string()))?;
    let x = exp_root(n, alpha, c, false);
    let y = exp_root(n, alpha, &-inv, true);
    x.mul(&y)?.mul(&x)
}

/// `w_α(c)⁻¹ = x_α(−c) x_{−α}(c⁻¹) x_α(−c)`
fn w_matrix_inverse<R: Ring>(n: usize, alpha: Root, c: &R) -> Result<IndexedMatrix<R>> {
    let inv = c.try_inverse().ok_or_else(|| Error::NotInvertible(c.to_string()))?;
    let x = exp_root(n, alpha, &-c.clone(), false);
    let y = exp_root(n, alpha, &inv, true);
    x.mul(&y)?.mul(&x)
}

/// `h_α(c) = w_α(c) w_α(1)⁻¹`
fn h_matrix<R: Ring>(n: usize, alpha: Root, c: &R) -> Result<IndexedMatrix<R>> {
    let h = w_matrix(n, alpha, c)?.mul(&w_matrix_inverse(n, alpha, &R::one())?)?;
    assert!(h.is_diagonal(), "h_{alpha}({c}) is not diagonal");
    Ok(h)
}

impl<R: Ring> BorelElement<R> {
    pub fn identity(n: usize) -> Self {
        Self { g: IndexedMatrix::identity(n), g_inv: IndexedMatrix::identity(n) }
    }

    /// `x_α(c) = 1 + c e_α`, inverse `x_α(−c)`.
    pub fn x(n: usize, alpha: Root, c: R) -> Result<Self> {
        alpha.check_rank(n)?;
        Ok(Self { g: exp_root(n, alpha, &c, false), g_inv: exp_root(n, alpha, &-c, false) })
    }

    /// `h_α(c) = w_α(c) w_α(1)⁻¹`, inverse `h_α(c⁻¹)`.
    pub fn h(n: usize, alpha: Root, c: R) -> Result<Self> {
        alpha.check_rank(n)?;
        let inv = c.try_inverse().ok_or_else(|| Error::NotInvertible(c.to_string()))?;
        Ok(Self { g: h_matrix(n, alpha, &c)?, g_inv: h_matrix(n, alpha, &inv)? })
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn matrix(&self) -> &IndexedMatrix<R> {
        &self.g
    }

    pub fn inverse_matrix(&self) -> &IndexedMatrix<R> {
        &self.g_inv
    }

    pub fn inverse(&self) -> Self {
        Self { g: self.g_inv.clone(), g_inv: self.g.clone() }
    }

    /// `self · rhs`
    pub fn then(&self, rhs: &Self) -> Result<Self> {
        Ok(Self { g: self.g.mul(&rhs.g)?, g_inv: rhs.g_inv.mul(&self.g_inv)? })
    }

    /// Inverse is exact, both factors lie in Sp and are upper-triangular.
    pub fn is_valid(&self) -> bool {
        let n = self.n();
        self.g.mul(&self.g_inv).map(|p| p == IndexedMatrix::identity(n)).unwrap_or(false)
            && is_symplectic_group(&self.g)
            && is_symplectic_group(&self.g_inv)
            && self.g.is_upper_triangular()
            && self.g_inv.is_upper_triangular()
    }
}

/// `g.λ = (g λ g⁻¹)_low`.
pub fn dual_action<R: Ring>(g: &BorelElement<R>, lam: &Functional<R>) -> Result<Functional<R>> {
    let m = g.g.mul(&lam.matrix)?.mul(&g.g_inv)?.lower_projection();
    Ok(Functional { matrix: m })
}

/// Coefficients used when sampling unipotent elements.
const SAMPLE_COEFFS: [(i64, i64); 8] = [(-2, 1), (-1, 1), (-1, 2), (1, 3), (1, 2), (1, 1), (2, 1), (3, 1)];

/// A random element of U: a product of `x_α(c)` over randomly chosen roots.
pub fn random_unipotent(n: usize, rng: &mut impl rand::Rng) -> BorelElement<Rational> {
    let roots = Root::positive_roots(n);
    let mut g = BorelElement::identity(n);
    for _ in 0..2 * n * n {
        let alpha = *roots.choose(rng).expect("n >= 1");
        let (p, q) = SAMPLE_COEFFS[rng.gen_range(0..SAMPLE_COEFFS.len())];
        g = g.then(&BorelElement::x(n, alpha, rat(p, q)).expect("root in range")).expect("same rank");
    }
    g
}

/// A random element of B: a random torus element times a random unipotent one.
pub fn random_borel(n: usize, rng: &mut impl rand::Rng) -> BorelElement<Rational> {
    let mut g = BorelElement::identity(n);
    for i in 1..=n {
        let (p, q) = SAMPLE_COEFFS[rng.gen_range(0..SAMPLE_COEFFS.len())];
        g = g.then(&BorelElement::h(n, Root::Long(i), rat(p, q)).expect("invertible")).expect("same rank");
    }
    g.then(&random_unipotent(n, rng)).expect("same rank")
}

/// A random functional with coefficients drawn from a small set of
/// rationals, zero included.
pub fn random_functional(n: usize, rng: &mut impl rand::Rng) -> Functional<Rational> {
    let coeffs = Root::positive_roots(n).into_iter().filter_map(|a| {
        let k = rng.gen_range(0..=SAMPLE_COEFFS.len());
        SAMPLE_COEFFS.get(k).map(|&(p, q)| (a, rat(p, q)))
    });
    Functional::from_coefficients(n, coeffs.collect::<Vec<_>>()).expect("roots in range")
}

/// One generator application inside a degeneration curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Factor {
    X(Root, Laurent),
    H(Root, Laurent),
}

impl Factor {
    fn element(&self, n: usize) -> Result<BorelElement<Laurent>> {
        match self {
            Factor::X(a, c) => BorelElement::x(n, *a, c.clone()),
            Factor::H(a, c) => BorelElement::h(n, *a, c.clone()),
        }
    }
}

impl std::fmt::Display for Factor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Factor::X(a, c) => write!(f, "x_{{{a}}}({c})"),
            Factor::H(a, c) => write!(f, "h_{{{a}}}({c})"),
        }
    }
}

/// A one-parameter family `g(s) ∈ B` meant to satisfy `g(s).f_τ → f_σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationCurve {
    pub n: usize,
    pub sigma: Involution,
    pub tau: Involution,
    pub factors: Vec<Factor>,
}

impl DegenerationCurve {
    /// `g(s)` as the ordered product of the factors.
    pub fn assemble(&self) -> Result<BorelElement<Laurent>> {
        let mut g = BorelElement::identity(self.n);
        for factor in &self.factors {
            g = g.then(&factor.element(self.n)?)?;
        }
        Ok(g)
    }
}

fn check_exchange_indices(i: usize, k: usize, j: usize, n: usize) -> Result<()> {
    if !(1 <= i && i < k && k < j && j <= n) {
        return Err(Error::IndexOrder { i, k, j, n });
    }
    Ok(())
}

/// The covering pair with `Supp σ ∖ Supp τ = {ε_i+ε_j, 2ε_k}` and
/// `Supp τ ∖ Supp σ = {2ε_i, ε_k+ε_j}`, together with
/// `g(s) = h_{ε_i−ε_k}(s⁻¹) x_{ε_i−ε_k}(s) x_{ε_k−ε_j}((2s²)⁻¹) x_{ε_i−ε_j}(−s⁻¹)`.
pub fn exchange_curve(i: usize, k: usize, j: usize, n: usize) -> Result<DegenerationCurve> {
    exchange_curve_with_spectators(i, k, j, n, &OrthogonalSet::empty())
}

/// As [`exchange_curve`], with extra roots shared by both supports. Each
/// spectator must be orthogonal to ε_i, ε_k and ε_j.
pub fn exchange_curve_with_spectators(
    i: usize,
    k: usize,
    j: usize,
    n: usize,
    spectators: &OrthogonalSet,
) -> Result<DegenerationCurve> {
    check_exchange_indices(i, k, j, n)?;
    for &beta in spectators.iter() {
        beta.check_rank(n)?;
        for m in [i, k, j] {
            if inner(beta, Root::Long(m)) != 0 {
                return Err(Error::NotOrthogonal(beta, Root::Long(m)));
            }
        }
    }
    let with = |roots: [Root; 2]| OrthogonalSet::new(spectators.iter().copied().chain(roots));
    let d_sigma = with([Root::Sum(i, j), Root::Long(k)])?;
    let d_tau = with([Root::Long(i), Root::Sum(k, j)])?;
    let sigma = involution_from_orthogonal_set(n, &d_sigma)?;
    let tau = involution_from_orthogonal_set(n, &d_tau)?;
    debug_assert_eq!(support(&sigma)?.set, d_sigma);
    debug_assert_eq!(support(&tau)?.set, d_tau);

    let s_inv = Laurent::term(1, -1);
    let factors = vec![
        Factor::H(Root::Diff(i, k), s_inv.clone()),
        Factor::X(Root::Diff(i, k), Laurent::var()),
        Factor::X(Root::Diff(k, j), Laurent::monomial(rat(1, 2), -2)),
        Factor::X(Root::Diff(i, j), -s_inv),
    ];
    Ok(DegenerationCurve { n, sigma, tau, factors })
}

/// The coefficients `g(s).f_τ` should have for an exchange curve: 1 at ε_i+ε_j
/// and 2ε_k, 0 at ε_k+ε_j, −s at ε_i+ε_k, s² at 2ε_i, f_τ elsewhere.
pub fn exchange_expected_coefficients(curve: &DegenerationCurve, i: usize, k: usize, j: usize) -> Result<BTreeMap<Root, Laurent>> {
    let tau: Functional<Laurent> = f_sigma(&curve.tau)?;
    let mut all: BTreeMap<Root, Laurent> =
        Root::positive_roots(curve.n).into_iter().map(|a| (a, tau.coefficient(a))).collect();
    all.insert(Root::Sum(i, j), Laurent::one());
    all.insert(Root::Long(k), Laurent::one());
    all.insert(Root::Sum(k, j), Laurent::zero());
    all.insert(Root::Sum(i, k), -Laurent::var());
    all.insert(Root::Long(i), Laurent::term(1, 2));
    all.retain(|_, c| !c.is_zero());
    Ok(all)
}

/// Roots of an exchange instance in the order of its coefficient case split.
pub fn exchange_display_order(n: usize, i: usize, k: usize, j: usize) -> Vec<Root> {
    let head = [Root::Sum(i, j), Root::Long(k), Root::Sum(k, j), Root::Sum(i, k), Root::Long(i)];
    let mut out = head.to_vec();
    out.extend(Root::positive_roots(n).into_iter().filter(|r| !head.contains(r)));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveReport {
    pub sigma: Involution,
    pub tau: Involution,
    /// Nonzero coefficients of `g(s).f_τ`, as scalar strings.
    #[serde(serialize_with = "serialize_scalar_map")]
    pub coefficients: BTreeMap<Root, Laurent>,
    pub limit_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divergence: Option<String>,
}

fn serialize_scalar_map<S: serde::Serializer, R: Ring>(
    map: &BTreeMap<Root, R>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(map.len()))?;
    for (k, v) in map {
        m.serialize_entry(&k.to_string(), &v.to_string())?;
    }
    m.end()
}

/// Apply `g(s)` to `f_τ` over ℚ[s, s⁻¹], read the coefficients and check
/// that the limit s → 0 exists and equals `f_σ`.
pub fn verify_curve(curve: &DegenerationCurve) -> Result<CurveReport> {
    let g = curve.assemble()?;
    let f_tau: Functional<Laurent> = f_sigma(&curve.tau)?;
    let f = dual_action(&g, &f_tau)?;
    let coefficients = f.coefficients();
    let f_target: Functional<Rational> = f_sigma(&curve.sigma)?;
    let (limit_ok, divergence) = match laurent_limit_at_zero(f.matrix()) {
        Ok(lim) => (&lim == f_target.matrix(), None),
        Err(e @ Error::NegativeExponent { .. }) => (false, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    Ok(CurveReport { sigma: curve.sigma.clone(), tau: curve.tau.clone(), coefficients, limit_ok, divergence })
}

/// `rk π_{i,j}(λ)`: rank of the block with rows `i, …, −1` and columns `1, …, j`.
pub fn pi_rank(lam: &Functional<Rational>, i: i32, j: i32) -> usize {
    let n = lam.n();
    let row_start = crate::matrix::position_of(n, i);
    let col_end = crate::matrix::position_of(n, j) + 1;
    lam.matrix().as_matrix().lower_left(row_start, col_end).rank()
}

/// All π-ranks at strictly-below-diagonal positions, indexed by display
/// positions `(p, q)` with `p > q`.
pub fn pi_ranks_below_diagonal(lam: &Functional<Rational>) -> Vec<((usize, usize), usize)> {
    let n = lam.n();
    let mut out = Vec::new();
    for p in 0..2 * n {
        for q in 0..p {
            out.push(((p, q), lam.matrix().as_matrix().lower_left(p, q + 1).rank()));
        }
    }
    out
}

/// Basis of Lie(B): root vectors e_α followed by e_{i,i} − e_{−i,−i}.
pub fn borel_algebra_basis(n: usize) -> Vec<IndexedMatrix<Rational>> {
    let mut basis: Vec<_> = Root::positive_roots(n).into_iter().map(|a| basis_element(n, a)).collect();
    for i in 1..=n as i32 {
        let mut t = IndexedMatrix::zero(n);
        t.set_at(i, i, int(1));
        t.set_at(-i, -i, int(-1));
        basis.push(t);
    }
    basis
}

/// Dimension of the tangent space at `f_σ` of its B-orbit: the rank of
/// `x ↦ ([x, f_σ])_low` on Lie(B).
pub fn orbit_dimension(sigma: &SignedPermutation) -> Result<usize> {
    let f: Functional<Rational> = f_sigma(sigma)?;
    tangent_rank(&f)
}

pub fn tangent_rank(f: &Functional<Rational>) -> Result<usize> {
    let n = f.n();
    let lam = f.matrix();
    let mut rows = Vec::new();
    for x in borel_algebra_basis(n) {
        let bracket = x.mul(lam)?.sub(&lam.mul(&x)?)?.lower_projection();
        let mut row = Vec::with_capacity(n * (2 * n - 1));
        for p in 0..2 * n {
            for q in 0..p {
                row.push(bracket.get(p, q).clone());
            }
        }
        rows.push(row);
    }
    Ok(Matrix::from_rows(rows)?.rank())
}

/// The rescaling parameter `s'` of the torus element `h_{α'}(s')`, written
/// in the variable `t` with `s = t²`. `α' = 2ε_i` where `i` is the first
/// index of α.
///
/// For both short root kinds `s' = s⁻¹ = t⁻²`; for 2ε_i, `s' = √(s⁻¹) = t⁻¹`.
pub fn rescaling_parameter(alpha: Root) -> (Root, Laurent) {
    let long = Root::Long(alpha.first_index());
    match alpha {
        Root::Diff(..) | Root::Sum(..) => (long, Laurent::term(1, -2)),
        Root::Long(_) => (long, Laurent::term(1, -1)),
    }
}

/// Check over ℚ[t, t⁻¹] that `h_{α'}(s').f_{D,ξ}` equals
/// `Σ_{β≠α} ξ(β) e_β* + s ξ(α) e_α*` with `s = t²`.
pub fn check_rescaling_step(n: usize, d: &OrthogonalSet, xi: &BTreeMap<Root, Rational>, alpha: Root) -> Result<bool> {
    let xi_l: BTreeMap<Root, Laurent> = xi.iter().map(|(&a, c)| (a, Laurent::constant(c.clone()))).collect();
    let f = f_of(n, d, &xi_l)?;
    let (long, param) = rescaling_parameter(alpha);
    let moved = dual_action(&BorelElement::h(n, long, param)?, &f)?;
    let mut expected = xi_l;
    if let Some(c) = expected.get_mut(&alpha) {
        *c = c.clone() * Laurent::term(1, 2);
    }
    Ok(moved == f_of(n, d, &expected)?)
}

/// `(∏_{α∈D} h_{α'}(ξ(α)')).f_D`, computed one factor at a time. Long-root
/// factors need `√(ξ(α)⁻¹)`; they are applied over ℚ[t, t⁻¹] and the result
/// is specialized at `t² = ξ(α)`.
pub fn rescale_functional(n: usize, d: &OrthogonalSet, xi: &BTreeMap<Root, Rational>) -> Result<Functional<Rational>> {
    let mut lam: Functional<Rational> = f_d(n, d)?;
    for &alpha in d.iter() {
        let value = xi.get(&alpha).filter(|c| !c.is_zero()).ok_or(Error::ZeroCoefficient(alpha))?;
        let (long, _) = rescaling_parameter(alpha);
        lam = match alpha {
            Root::Diff(..) | Root::Sum(..) => {
                let c = value.try_inverse().ok_or_else(|| Error::NotInvertible(value.to_string()))?;
                dual_action(&BorelElement::h(n, long, c)?, &lam)?
            }
            Root::Long(_) => {
                let moved = dual_action(&BorelElement::h(n, long, Laurent::term(1, -1))?, &lam.to_laurent())?;
                let m = moved.matrix().as_matrix().try_map(|_, _, x| {
                    x.evaluate_at_square(value)
                        .ok_or_else(|| Error::Parse(format!("odd power of t in {x}")))
                })?;
                Functional { matrix: IndexedMatrix::from_matrix(n, m)? }
            }
        };
    }
    Ok(lam)
}
