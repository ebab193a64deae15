//! Code descriptors: family, parameters and the certified values derived
//! from them, serialised as JSON with sorted keys.

use std::fmt;
use std::str::FromStr;

use dccodes::algebra::{find_wozencraft_k, is_prime, is_primitive_root, PrimeField, Symbol};
use dccodes::code::{Bound, DecodeOutcome, GeneratorMatrixCode, OracleBudget};
use dccodes::cyc_dc::{build_rm_dc, CyclicDCCode};
use dccodes::design_dc::{build_sidon_dc, SidonDCCode};
use dccodes::sidon::{sidon_for_length, SidonSet};
use dccodes::weldon::{weldon_encode, TCirculantCode, WeldonPair};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// How far past `k` to look for a valid Wozencraft length.
const FIND_K_WINDOW: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    SidonDc,
    RmDc,
    Wozencraft,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::SidonDc, Family::RmDc, Family::Wozencraft];

    pub fn name(self) -> &'static str {
        match self {
            Family::SidonDc => "sidon-dc",
            Family::RmDc => "rm-dc",
            Family::Wozencraft => "wozencraft",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown family {s:?}; expected sidon-dc, rm-dc or wozencraft"
                ))
            })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sidon: Option<Vec<usize>>,
}

/// Values recomputed from the parameters whenever a descriptor is loaded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Derived {
    pub length: usize,
    pub dimension: usize,
    pub distance_bound: String,
    pub distance_basis: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub balanced_bound: Option<String>,
    pub radius: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub design_radius: Option<String>,
    pub decoder: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_perp: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_prime: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Descriptor {
    pub family: Family,
    pub parameters: Parameters,
    pub derived: Derived,
}

impl Descriptor {
    /// Canonical text: pretty JSON, keys sorted, trailing newline.
    pub fn to_text(&self) -> String {
        // `serde_json::Value` objects are ordered maps, which sorts keys.
        let value = serde_json::to_value(self).expect("descriptor is plain data");
        let mut s = serde_json::to_string_pretty(&value).expect("value serialises");
        s.push('\n');
        s
    }

    /// Parses and rebuilds the code; the stored derived values must match.
    pub fn load(text: &str, budget: OracleBudget) -> Result<(Descriptor, Instance), CliError> {
        let d: Descriptor =
            serde_json::from_str(text).map_err(|e| CliError::Parse(format!("descriptor: {e}")))?;
        let inst = Instance::build(d.family, &d.parameters, budget)?;
        if inst.parameters() != d.parameters {
            return Err(CliError::Parse(
                "descriptor parameters are not in canonical form; rerun construct".into(),
            ));
        }
        if inst.derived() != d.derived {
            return Err(CliError::Parse(
                "descriptor derived values do not match its parameters".into(),
            ));
        }
        Ok((d, inst))
    }
}

/// A constructed code ready to encode and decode.
#[derive(Clone, Debug)]
pub enum Instance {
    SidonDc(SidonDCCode),
    RmDc {
        code: CyclicDCCode,
        m: u32,
    },
    Wozencraft {
        pair: WeldonPair,
        source: SidonDCCode,
    },
}

impl Instance {
    pub fn build(
        family: Family,
        p: &Parameters,
        budget: OracleBudget,
    ) -> Result<Instance, CliError> {
        match family {
            Family::SidonDc => {
                reject(family, "r", p.r.is_some())?;
                reject(family, "m", p.m.is_some())?;
                let field = field(p.q)?;
                let k = require(family, "k", p.k)?;
                let s = sidon(k, p.sidon.as_deref())?;
                Ok(Instance::SidonDc(build_sidon_dc(field, k, &s)?))
            }
            Family::RmDc => {
                reject(family, "k", p.k.is_some())?;
                reject(family, "sidon", p.sidon.is_some())?;
                if p.q.is_some_and(|q| q != 2) {
                    return Err(CliError::Usage("rm-dc is binary; q must be 2".into()));
                }
                let m = require(family, "m", p.m)?;
                if let Some(r) = p.r.filter(|&r| r != m / 2) {
                    return Err(CliError::Usage(format!(
                        "rm-dc uses r = floor(m/2) = {} for m = {m}, got r = {r}",
                        m / 2
                    )));
                }
                Ok(Instance::RmDc {
                    code: build_rm_dc(m)?,
                    m,
                })
            }
            Family::Wozencraft => {
                reject(family, "r", p.r.is_some())?;
                reject(family, "m", p.m.is_some())?;
                let field = field(p.q)?;
                let k = require(family, "k", p.k)?;
                check_wozencraft_k(field.order() as u64, k as u64)?;
                let s = sidon(k, p.sidon.as_deref())?;
                let source = build_sidon_dc(field, k, &s)?;
                let pair = WeldonPair::new(TCirculantCode::from_sidon_dc(&source, budget)?)?;
                Ok(Instance::Wozencraft { pair, source })
            }
        }
    }

    pub fn family(&self) -> Family {
        match self {
            Instance::SidonDc(_) => Family::SidonDc,
            Instance::RmDc { .. } => Family::RmDc,
            Instance::Wozencraft { .. } => Family::Wozencraft,
        }
    }

    /// Parameters in canonical form, with defaults filled in.
    pub fn parameters(&self) -> Parameters {
        match self {
            Instance::SidonDc(c) => Parameters {
                q: Some(c.field().order()),
                k: Some(c.k()),
                sidon: Some(c.sidon().elements().to_vec()),
                ..Parameters::default()
            },
            Instance::RmDc { m, .. } => Parameters {
                m: Some(*m),
                r: Some(m / 2),
                ..Parameters::default()
            },
            Instance::Wozencraft { source, .. } => Parameters {
                q: Some(source.field().order()),
                k: Some(source.k()),
                sidon: Some(source.sidon().elements().to_vec()),
                ..Parameters::default()
            },
        }
    }

    pub fn derived(&self) -> Derived {
        match self {
            Instance::SidonDc(c) => {
                let prof = c.profile();
                Derived {
                    length: c.length(),
                    dimension: c.k(),
                    distance_bound: format_bound(c.distance_bound()),
                    distance_basis: "Sidon design: distance >= d/2 + 1".into(),
                    balanced_bound: Some(format_bound(c.balanced_bound())),
                    radius: format_bound(self.radius()),
                    design_radius: c.radius().map(format_bound),
                    decoder: "design-majority".into(),
                    d: Some(prof.d),
                    b: Some(prof.b),
                    d_perp: None,
                    d_prime: None,
                    t: Some(2),
                }
            }
            Instance::RmDc { code, .. } => Derived {
                length: code.length(),
                dimension: code.k(),
                distance_bound: code.d_prime().to_string(),
                distance_basis: "cyclic double circulant: distance >= min{d, d_perp}".into(),
                balanced_bound: None,
                radius: format_bound(code.radius()),
                design_radius: None,
                decoder: "cyclic-dc (shortened and punctured Reed)".into(),
                d: Some(code.d()),
                b: None,
                d_perp: Some(code.d_perp()),
                d_prime: Some(code.d_prime()),
                t: Some(2),
            },
            Instance::Wozencraft { pair, source } => Derived {
                length: pair.weldon.length(),
                dimension: pair.weldon.dimension(),
                distance_bound: format_bound(pair.weldon.distance_bound()),
                distance_basis: "Weldon transform: distance >= balanced bound min{d/2 + 1, k/d}"
                    .into(),
                balanced_bound: Some(format_bound(pair.source.balanced())),
                radius: format_bound(pair.weldon.radius()),
                design_radius: None,
                decoder: format!("weldon-lift over {}", source_decoder_name(source)),
                d: Some(source.profile().d),
                b: Some(source.profile().b),
                d_perp: None,
                d_prime: None,
                t: Some(pair.weldon.t()),
            },
        }
    }

    pub fn field(&self) -> PrimeField {
        match self {
            Instance::SidonDc(c) => c.field(),
            Instance::RmDc { .. } => PrimeField::binary(),
            Instance::Wozencraft { pair, .. } => pair.weldon.field(),
        }
    }

    pub fn message_len(&self) -> usize {
        match self {
            Instance::SidonDc(c) => c.k(),
            Instance::RmDc { code, .. } => code.k(),
            Instance::Wozencraft { pair, .. } => pair.weldon.dimension(),
        }
    }

    pub fn word_len(&self) -> usize {
        match self {
            Instance::SidonDc(c) => c.length(),
            Instance::RmDc { code, .. } => code.length(),
            Instance::Wozencraft { pair, .. } => pair.weldon.length(),
        }
    }

    /// Certified lower bound on the minimum distance.
    pub fn distance_bound(&self) -> Bound {
        match self {
            Instance::SidonDc(c) => c.distance_bound(),
            Instance::RmDc { code, .. } => Bound::from_integer(code.d_prime() as u64),
            Instance::Wozencraft { pair, .. } => pair.weldon.distance_bound(),
        }
    }

    /// Certified `(2, d)`-balanced parameter, where one is known.
    pub fn balanced_bound(&self) -> Option<Bound> {
        match self {
            Instance::SidonDc(c) => Some(c.balanced_bound()),
            Instance::RmDc { .. } => None,
            Instance::Wozencraft { pair, .. } => Some(pair.source.balanced()),
        }
    }

    /// Certified radius: every error of weight strictly below it is
    /// corrected. For sidon-dc this is `d/4`, valid for any `b <= 2`; the
    /// decoder itself accepts up to the exact `d/(2b)`.
    pub fn radius(&self) -> Bound {
        match self {
            Instance::SidonDc(c) => Bound::new(c.profile().d as u64, 4),
            Instance::RmDc { code, .. } => code.radius(),
            Instance::Wozencraft { pair, .. } => pair.weldon.radius(),
        }
    }

    pub fn generator_code(&self) -> GeneratorMatrixCode {
        match self {
            Instance::SidonDc(c) => c.generator_code(),
            Instance::RmDc { code, .. } => code.generator_code(),
            Instance::Wozencraft { pair, .. } => pair.weldon.generator_code(),
        }
    }

    pub fn encode(&self, m: &[Symbol]) -> Result<Vec<Symbol>, CliError> {
        Ok(match self {
            Instance::SidonDc(c) => c.encode(m)?,
            Instance::RmDc { code, .. } => code.encode(m)?,
            Instance::Wozencraft { pair, .. } => {
                let want = pair.weldon.dimension();
                if m.len() != want {
                    return Err(CliError::Parse(format!(
                        "expected {want} symbols, found {}",
                        m.len()
                    )));
                }
                weldon_encode(&pair.weldon, m)?
            }
        })
    }

    pub fn decode(&self, w: &[Symbol]) -> Result<DecodeOutcome, CliError> {
        Ok(match self {
            Instance::SidonDc(c) => c.decode(w),
            Instance::RmDc { code, .. } => code.decode(w),
            Instance::Wozencraft { pair, .. } => pair.decode(w)?,
        })
    }
}

fn source_decoder_name(code: &SidonDCCode) -> &'static str {
    let half = code.balanced_bound() / 2;
    if code.radius().is_none_or(|r| r >= half) {
        "design-majority"
    } else {
        "bounded-search"
    }
}

fn field(q: Option<u32>) -> Result<PrimeField, CliError> {
    PrimeField::new(q.unwrap_or(2)).map_err(|e| CliError::Usage(format!("q: {e}")))
}

fn require<T>(family: Family, name: &str, v: Option<T>) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("{family} needs parameter {name}")))
}

fn reject(family: Family, name: &str, present: bool) -> Result<(), CliError> {
    if present {
        Err(CliError::Usage(format!(
            "{family} does not take parameter {name}"
        )))
    } else {
        Ok(())
    }
}

fn sidon(k: usize, given: Option<&[usize]>) -> Result<SidonSet, CliError> {
    match given {
        Some(s) => SidonSet::new(s.to_vec(), k).map_err(|e| CliError::Usage(format!("sidon: {e}"))),
        None => sidon_for_length(k)
            .map_err(|e| CliError::Usage(format!("sidon: {e}; pass an explicit set"))),
    }
}

/// `k` must be prime with `q` primitive modulo `k`; otherwise the error
/// names the nearest valid lengths on either side.
pub fn check_wozencraft_k(q: u64, k: u64) -> Result<(), CliError> {
    if is_prime(k) && is_primitive_root(q, k).unwrap_or(false) {
        return Ok(());
    }
    let reason = if is_prime(k) {
        format!("{q} is not a primitive root modulo {k}")
    } else {
        format!("k = {k} is not prime")
    };
    let above = find_wozencraft_k(q, k, k.saturating_add(FIND_K_WINDOW)).ok();
    let below = (2..k)
        .rev()
        .find(|&c| is_prime(c) && is_primitive_root(q, c).unwrap_or(false));
    let nearest = match (below, above) {
        (Some(b), Some(a)) if k - b <= a - k => Some(b),
        (_, Some(a)) => Some(a),
        (b, None) => b,
    };
    let hint = match (nearest, above) {
        (Some(n), Some(a)) if n != a => format!("; nearest valid k is {n} (next above is {a})"),
        (Some(n), _) => format!("; nearest valid k is {n}"),
        (None, _) => String::new(),
    };
    Err(CliError::Usage(format!(
        "wozencraft needs H = F_{q}[x]/p_k(x) to be a field: {reason}{hint}"
    )))
}

/// Exact decimal when the denominator has only factors 2 and 5, else `n/d`.
pub fn format_bound(b: Bound) -> String {
    let (n, d) = (*b.numer(), *b.denom());
    let mut rest = d;
    while rest % 2 == 0 {
        rest /= 2;
    }
    while rest % 5 == 0 {
        rest /= 5;
    }
    if rest != 1 {
        return format!("{n}/{d}");
    }
    let mut s = (n / d).to_string();
    let mut r = n % d;
    if r != 0 {
        s.push('.');
        while r != 0 {
            r *= 10;
            s.push(char::from(b'0' + (r / d) as u8));
            r %= d;
        }
    }
    s
}
