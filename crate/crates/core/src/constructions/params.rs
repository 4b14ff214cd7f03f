use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::json;

use crate::combin::binomial_big;
use crate::geometry::{gaussian_binomial, FieldSpec};
use crate::pda::{Orientation, SchemeParameters};

use super::blocks::{check_a, check_b, check_lambda};
use super::geometry::check_pg;
use super::{hypothesis, ConstructionError, ConstructionSpec, Family};

/// Closed-form parameters of one construction, with the Maddah-Ali–Niesen
/// baseline `R*` and its subpacketization `F*` for comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterTableRow {
    pub family: String,
    pub params: String,
    pub orientation: Orientation,
    pub k: BigUint,
    pub f: BigUint,
    pub q: BigUint,
    pub s: BigUint,
    /// `M/N = Q/F`.
    pub memory_ratio: BigRational,
    /// `R = S/F`.
    pub rate: BigRational,
    pub baseline_rate: BigRational,
    /// `R/R*`; absent when `R* = 0`.
    pub rate_ratio: Option<BigRational>,
    /// `C(K, K·M/N)`; absent when `K·M/N` is not an integer.
    pub mn_subpacketization: Option<BigUint>,
    /// `0 < Q < F`.
    pub admissible: bool,
}

fn int(n: &BigRational) -> Option<BigUint> {
    n.is_integer().then(|| n.to_integer().to_biguint()).flatten()
}

fn c(n: usize, k: usize) -> BigInt {
    binomial_big(n as u64, k as u64).into()
}

fn g(l: usize, m: usize, q: u32) -> Result<BigInt, ConstructionError> {
    Ok(gaussian_binomial(l as u32, m as u32, q)?.into())
}

fn frac(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

fn complement(num: BigInt, den: BigInt) -> BigRational {
    BigRational::one() - frac(num, den)
}

impl ParameterTableRow {
    fn new(
        family: &str,
        params: String,
        orientation: Orientation,
        k: BigInt,
        f: BigInt,
        memory_ratio: BigRational,
        rate: BigRational,
    ) -> Result<Self, ConstructionError> {
        let ff = BigRational::from_integer(f.clone());
        let q = &memory_ratio * &ff;
        let s = &rate * &ff;
        let (Some(qi), Some(si), Some(ki), Some(fi)) =
            (int(&q), int(&s), k.to_biguint(), f.to_biguint())
        else {
            return Err(ConstructionError::NonIntegral(format!(
                "{family} {params} set {orientation}: K = {k}, F = {f}, Q = {q}, S = {s}"
            )));
        };
        let admissible = !qi.is_zero() && qi < fi;
        let (baseline_rate, mn_subpacketization) = mn_baseline(&ki, &memory_ratio);
        let rate_ratio = (!baseline_rate.is_zero()).then(|| &rate / &baseline_rate);
        Ok(Self {
            family: family.to_string(),
            params,
            orientation,
            k: ki,
            f: fi,
            q: qi,
            s: si,
            memory_ratio,
            rate,
            baseline_rate,
            rate_ratio,
            mn_subpacketization,
            admissible,
        })
    }

    /// `K F Q S`, as in a PDA header.
    pub fn header(&self) -> String {
        format!("{} {} {} {}", self.k, self.f, self.q, self.s)
    }

    /// `(K, F, M/N, R)` agree with measured scheme parameters.
    pub fn matches(&self, measured: &SchemeParameters) -> bool {
        self.k == BigUint::from(measured.k)
            && self.f == BigUint::from(measured.f)
            && self.memory_ratio == measured.memory_ratio
            && self.rate == measured.rate
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "family": self.family,
            "params": self.params,
            "orientation": self.orientation.index(),
            "K": self.k.to_string(),
            "F": self.f.to_string(),
            "Q": self.q.to_string(),
            "S": self.s.to_string(),
            "M/N": self.memory_ratio.to_string(),
            "R": self.rate.to_string(),
            "R*": self.baseline_rate.to_string(),
            "R/R*": self.rate_ratio.as_ref().map(ToString::to_string),
            "F*": self.mn_subpacketization.as_ref().map(ToString::to_string),
            "admissible": self.admissible,
        })
    }
}

/// `R* = K(1−M/N)/(1+K·M/N)` and `F* = C(K, K·M/N)` when `K·M/N` is an
/// integer.
pub fn mn_baseline(k: &BigUint, memory_ratio: &BigRational) -> (BigRational, Option<BigUint>) {
    let kk = BigRational::from_integer(BigInt::from(k.clone()));
    let one = BigRational::one();
    let rate = &kk * (&one - memory_ratio) / (&one + &kk * memory_ratio);
    let cached = &kk * memory_ratio;
    let f_star = if cached.is_integer() && !cached.is_negative() {
        match (k.to_u64(), cached.to_integer().to_u64()) {
            (Some(n), Some(t)) if t <= n => Some(binomial_big(n, t)),
            _ => None,
        }
    } else {
        None
    };
    (rate, f_star)
}

/// `K²(1−M/N)² / (K−1+K(1−M/N))`, the lower bound on `r/k` for a
/// configuration with `K = v` and `M/N = 1 − r/v`.
pub fn configuration_rate_bound(k: &BigRational, memory_ratio: &BigRational) -> BigRational {
    let one = BigRational::one();
    let keep = &one - memory_ratio;
    k * k * &keep * &keep / (k - &one + k * &keep)
}

/// For a `(v,k,1)`-BIBD, returns `(r/k, bound)` with `r = (v−1)/(k−1)`.
/// The two are equal exactly.
pub fn bibd_rate_identity(v: usize, k: usize) -> Result<(BigRational, BigRational), ConstructionError> {
    hypothesis(k >= 2 && v > k, "requires 2 ≤ k < v")?;
    hypothesis((v - 1).is_multiple_of(k - 1), "requires (k−1) | (v−1)")?;
    hypothesis((v * (v - 1)).is_multiple_of(k * (k - 1)), "requires k(k−1) | v(v−1)")?;
    let r = (v - 1) / (k - 1);
    let formula = frac(r.into(), k.into());
    let mn = complement(r.into(), v.into());
    let bound = configuration_rate_bound(&BigRational::from_integer(v.into()), &mn);
    Ok((formula, bound))
}

/// Subspaces of `F_q^k`: `X`, `Y`, `Z` of dimensions `t`, `m`, `m+t`.
pub fn pg_parameters(
    q: u32,
    k: usize,
    m: usize,
    t: usize,
    orientation: Orientation,
) -> Result<ParameterTableRow, ConstructionError> {
    check_pg(k, m, t)?;
    FieldSpec::new(q)?;
    let params = format!("q={q},k={k},m={m},t={t}");
    let (kk, f, mn, r) = match orientation {
        Orientation::Set1 => (
            g(k, t, q)?,
            g(k, m, q)?,
            complement(g(k - t, m, q)?, g(k, m, q)?),
            frac(g(k, m + t, q)?, g(k, m, q)?),
        ),
        Orientation::Set2 => (
            g(k, t, q)?,
            g(k, m + t, q)?,
            complement(g(k - t, m, q)?, g(k, m + t, q)?),
            frac(g(k, m, q)?, g(k, m + t, q)?),
        ),
        Orientation::Set3 => (
            g(k, m + t, q)?,
            g(k, t, q)?,
            complement(g(m + t, t, q)?, g(k, t, q)?),
            frac(g(k, m, q)?, g(k, t, q)?),
        ),
    };
    ParameterTableRow::new("pg", params, orientation, kk, f, mn, r)
}

/// A `(v_r, b_k)` configuration.
pub fn configuration_parameters(
    v: usize,
    r: usize,
    b: usize,
    k: usize,
    orientation: Orientation,
) -> Result<ParameterTableRow, ConstructionError> {
    hypothesis(v >= 1 && r >= 1 && b >= 1 && k >= 1, "requires v, r, b, k ≥ 1")?;
    hypothesis(b * k == v * r, "requires bk = vr")?;
    let params = format!("v={v},r={r},b={b},k={k}");
    let (vv, rr, bb, kk) = (BigInt::from(v), BigInt::from(r), BigInt::from(b), BigInt::from(k));
    let (kp, f, mn, rate) = match orientation {
        Orientation::Set1 => (vv.clone(), vv.clone(), complement(rr.clone(), vv), frac(rr, kk)),
        Orientation::Set2 => (vv.clone(), bb, complement(kk.clone(), vv), frac(kk, rr)),
        Orientation::Set3 => (bb, vv.clone(), complement(kk, vv), BigRational::one()),
    };
    ParameterTableRow::new("config", params, orientation, kp, f, mn, rate)
}

/// `t_0`-subsets of a `t-(v,k,1)` design.
pub fn tdesign_a_parameters(
    t: usize,
    v: usize,
    k: usize,
    t0: usize,
    orientation: Orientation,
) -> Result<ParameterTableRow, ConstructionError> {
    check_a(t, k, 1, t0)?;
    hypothesis(t <= k && k < v, "requires t ≤ k < v")?;
    let params = format!("t={t},v={v},k={k},t0={t0}");
    let subsets = c(v, t0);
    let blocks = frac(c(v, t), c(k, t));
    hypothesis(blocks.is_integer(), "requires C(k,t) | C(v,t)")?;
    let in_block = complement(c(k, t0), c(v, t0));
    let (kk, f, mn, r) = match orientation {
        Orientation::Set1 => (
            subsets.clone(),
            subsets.clone(),
            complement(c(v - t0, t - t0), c(k - t0, t - t0) * &subsets),
            frac(c(v, t), c(k, t) * &subsets),
        ),
        Orientation::Set2 => (
            subsets.clone(),
            blocks.to_integer(),
            in_block,
            frac(&subsets * c(k, t), c(v, t)),
        ),
        Orientation::Set3 => (blocks.to_integer(), subsets, in_block, BigRational::one()),
    };
    ParameterTableRow::new("tdesign-a", params, orientation, kk, f, mn, r)
}

/// `t_1`- and `t_2`-subsets completing each block of a `t-(v,k,1)` design.
pub fn tdesign_b_parameters(
    t: usize,
    v: usize,
    k: usize,
    t1: usize,
    t2: usize,
    orientation: Orientation,
) -> Result<ParameterTableRow, ConstructionError> {
    check_b(t, k, 1, t1, t2)?;
    hypothesis(k < v, "requires k < v")?;
    let params = format!("t={t},v={v},k={k},t1={t1},t2={t2}");
    let blocks = frac(c(v, t), c(k, t));
    hypothesis(blocks.is_integer(), "requires C(k,t) | C(v,t)")?;
    let in_block = complement(c(k, t1), c(v, t1));
    let (kk, f, mn, r) = match orientation {
        Orientation::Set1 => (
            c(v, t1),
            c(v, t2),
            complement(c(v - t1, t - t1), c(k - t1, t - t1) * c(v, t2)),
            frac(c(v, t), c(k, t) * c(v, t2)),
        ),
        Orientation::Set2 => (c(v, t1), blocks.to_integer(), in_block, frac(c(v, t2) * c(k, t), c(v, t))),
        Orientation::Set3 => (blocks.to_integer(), c(v, t1), in_block, frac(c(v, t2), c(v, t1))),
    };
    ParameterTableRow::new("tdesign-b", params, orientation, kk, f, mn, r)
}

/// Flags `(α, B)` of a `t-(v,k,λ)` design with `|α| = t_1, t_2, t_0`.
#[allow(clippy::too_many_arguments)]
pub fn tdesign_lambda_parameters(
    t: usize,
    v: usize,
    k: usize,
    lambda: usize,
    t0: usize,
    t1: usize,
    t2: usize,
    orientation: Orientation,
) -> Result<ParameterTableRow, ConstructionError> {
    check_lambda(t, t0, t1, t2)?;
    hypothesis(lambda >= 1 && t <= k && k < v, "requires λ ≥ 1 and t ≤ k < v")?;
    let params = format!("t={t},v={v},k={k},lambda={lambda},t0={t0},t1={t1},t2={t2}");
    let lam = BigInt::from(lambda);
    // λ_s · C(v,s) flags of each size
    let flags = |s: usize| frac(&lam * c(v - s, t - s) * c(v, s), c(k - s, t - s));
    let (fx, fy, fz) = (flags(t1), flags(t2), flags(t0));
    if !(fx.is_integer() && fy.is_integer() && fz.is_integer()) {
        return Err(ConstructionError::NonIntegral(format!("flag counts {fx}, {fy}, {fz}")));
    }
    let (nx, ny, nz) = (fx.to_integer(), fy.to_integer(), fz.to_integer());
    let (kk, f, mn, r) = match orientation {
        Orientation::Set1 => (
            nx,
            ny,
            complement(c(k - t1, t2) * c(k - t2, t - t2), &lam * c(v, t2) * c(v - t2, t - t2)),
            frac(c(k, t0), c(k, t2)),
        ),
        Orientation::Set2 => (
            nx,
            nz,
            complement(c(k - t1, t2) * c(k - t0, t - t0), &lam * c(v, t0) * c(v - t0, t - t0)),
            frac(c(k, t2), c(k, t0)),
        ),
        Orientation::Set3 => (
            nz,
            nx,
            complement(c(t0, t1) * c(k - t1, t - t1), &lam * c(v, t1) * c(v - t1, t - t1)),
            frac(c(k, t2), c(k, t1)),
        ),
    };
    ParameterTableRow::new("tdesign-lambda", params, orientation, kk, f, mn, r)
}

/// Closed-form row of a construction spec, with design parameters read
/// from the certified design.
pub fn closed_form(spec: &ConstructionSpec) -> Result<ParameterTableRow, ConstructionError> {
    let o = spec.orientation;
    let mut row = match &spec.family {
        Family::ProjectiveGeometry { q, k, m, t } => pg_parameters(*q, *k, *m, *t, o)?,
        Family::Configuration { design } => {
            let c = design.design.as_configuration()?;
            configuration_parameters(c.v, c.r, c.b, c.k, o)?
        }
        Family::TDesignA { design, t0 } => {
            let c = design.design.as_t_design()?;
            check_a(c.t, c.k, c.lambda, *t0)?;
            tdesign_a_parameters(c.t, c.v, c.k, *t0, o)?
        }
        Family::TDesignB { design, t1, t2 } => {
            let c = design.design.as_t_design()?;
            check_b(c.t, c.k, c.lambda, *t1, *t2)?;
            tdesign_b_parameters(c.t, c.v, c.k, *t1, *t2, o)?
        }
        Family::TDesignLambda { design, t0, t1, t2 } => {
            let c = design.design.as_t_design()?;
            tdesign_lambda_parameters(c.t, c.v, c.k, c.lambda, *t0, *t1, *t2, o)?
        }
    };
    row.params = spec.family.describe();
    Ok(row)
}
