//! Bookkeeping for cube sleeves glued along a large-girth regular graph.
//!
//! A model space `X` of dimension `m` with a decomposition into `c` cubes
//! contributes one sleeve of volume `2mcε` per vertex of a `c`-regular graph
//! `Γ`. When the girth of `Γ` exceeds `1/(2ε)` the glued space has systole at
//! least one; that graph-side condition is what `assemble` certifies. No
//! cubulation is ever built.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{girth, vertex_window, Girth, Graph};
use crate::homology::serialize_bigint;
use crate::ratio::{format_rational, serde_ratio};

/// Dimension `m` and cube count `c` of the model space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CubicalModel {
    m: u32,
    c: u32,
}

impl CubicalModel {
    pub fn new(m: u32, c: u32) -> Result<Self> {
        if m < 3 {
            return Err(Error::Domain(format!("dimension m must be >= 3, got {m}")));
        }
        if c < 2 * m + 1 {
            return Err(Error::Domain(format!("cube count c must be >= 2m + 1 = {}, got {c}", 2 * m + 1)));
        }
        Ok(Self { m, c })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn c(&self) -> u32 {
        self.c
    }
}

fn require_positive(eps: &BigRational) -> Result<()> {
    if eps.is_positive() {
        Ok(())
    } else {
        Err(Error::Domain(format!("sleeve width must be positive, got {}", format_rational(eps))))
    }
}

/// Volume `2mcε` of one sleeve.
pub fn sleeve_volume_single(model: &CubicalModel, eps: &BigRational) -> Result<BigRational> {
    require_positive(eps)?;
    Ok(eps * BigInt::from(2 * model.m * model.c))
}

/// `⌊1/(2ε)⌋`.
pub fn girth_level(eps: &BigRational) -> Result<u64> {
    require_positive(eps)?;
    let half_inverse = (eps * BigInt::from(2)).recip().floor().to_integer();
    half_inverse.to_u64().ok_or_else(|| Error::Domain(format!("sleeve width {} is too small", format_rational(eps))))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssemblyReport {
    pub m: u32,
    pub c: u32,
    #[serde(with = "serde_ratio")]
    pub eps: BigRational,
    pub l: u64,
    /// Vertex count `2n` of the gluing graph.
    pub vertices: usize,
    pub girth: Girth,
    #[serde(with = "serde_ratio")]
    pub volume: BigRational,
    /// Certified by `girth * 2ε > 1`.
    pub systole_lower_bound: u32,
    pub upper_bound: f64,
    /// `n(c - 2) + 1`.
    #[serde(serialize_with = "serialize_bigint")]
    pub handles: BigInt,
}

/// Check `graph` against the gluing requirements and report the glued space.
pub fn assemble(model: &CubicalModel, eps: &BigRational, graph: &Graph) -> Result<AssemblyReport> {
    require_positive(eps)?;
    graph.check_regular(model.c as usize)?;
    let g = girth(graph);
    if let Girth::Finite(len) = g {
        if eps * BigInt::from(2 * len) <= BigRational::from_integer(1.into()) {
            return Err(Error::GirthTooSmall {
                girth: len.to_string(),
                threshold: format_rational(&(eps * BigInt::from(2)).recip()),
            });
        }
    }
    let l = girth_level(eps)?;
    let vertices = graph.vertex_count();
    let l_usize = usize::try_from(l).map_err(|_| Error::Domain("girth level too large".into()))?;
    let (min, max) = vertex_window(model.c as usize, l_usize)?;
    let count = BigInt::from(vertices);
    if vertices % 2 == 1 || count < min || count > max {
        return Err(Error::OutsideWindow { count: vertices, min: min.to_string(), max: max.to_string() });
    }
    let n = vertices / 2;
    let volume = sleeve_volume_single(model, eps)? * BigInt::from(vertices);
    let handles = BigInt::from(n) * BigInt::from(model.c - 2) + 1;
    Ok(AssemblyReport {
        m: model.m,
        c: model.c,
        eps: eps.clone(),
        l,
        vertices,
        girth: g,
        volume,
        systole_lower_bound: 1,
        upper_bound: upper_bound_even(model, n as u64)?,
        handles,
    })
}

/// `m c ln(c-1) 2n / ln(2n)`; requires `2n >= 4`.
pub fn upper_bound_even(model: &CubicalModel, n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("need 2n >= 4, got 2n = {}", 2 * n)));
    }
    let two_n = 2.0 * n as f64;
    Ok(f64::from(model.m) * f64::from(model.c) * f64::from(model.c - 1).ln() * two_n / two_n.ln())
}

/// Even bound plus the systolic volume `s_x` of one more copy of `X`.
pub fn upper_bound_odd(model: &CubicalModel, n: u64, s_x: f64) -> Result<f64> {
    if !s_x.is_finite() || s_x < 0.0 {
        return Err(Error::Domain(format!("systolic volume of X must be finite and >= 0, got {s_x}")));
    }
    Ok(upper_bound_even(model, n)? + s_x)
}

/// `m c ln c`.
pub fn asymptotic_constant(model: &CubicalModel) -> f64 {
    f64::from(model.m) * f64::from(model.c) * f64::from(model.c).ln()
}

/// `C k / ln(1 + k)`.
pub fn multiple_class_bound(k: u64, constant: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("multiple k must be >= 1".into()));
    }
    if !constant.is_finite() || constant <= 0.0 {
        return Err(Error::Domain(format!("constant must be finite and > 0, got {constant}")));
    }
    let k = k as f64;
    Ok(constant * k / k.ln_1p())
}
