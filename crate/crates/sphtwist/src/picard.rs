//! Element arithmetic in the derived Picard group of Lambda_k, presented as
//! `(B_G x Z x Z/3k x units) / <(Delta_G^-1, 5, 3, (-1)^k)>`.
//!
//! An element is a quadruple (braid word in B_G2, shift power, Nakayama
//! power, unit). The canonical form pulls the full center exponent out of
//! the braid coordinate and pushes it through the defining relation, so the
//! braid word of a normal form is center-free.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::groups::{self, BraidFamily, GroupSpec, GroupWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PicardError {
    #[error("elements live over different algebras: k = {left} vs k = {right}")]
    MismatchedParameter { left: u64, right: u64 },
    #[error("k must be at least 1")]
    ZeroParameter,
    #[error("invalid element literal: {0}")]
    Parse(String),
    #[error(transparent)]
    Word(#[from] groups::GroupError),
}

/// Scalar part: a sign times a free abelian group on named unit symbols.
/// This covers every field the tests need while staying exact.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UnitElement {
    pub negative: bool,
    pub symbols: BTreeMap<String, i64>,
}

impl UnitElement {
    pub fn one() -> Self {
        UnitElement::default()
    }

    pub fn minus_one() -> Self {
        UnitElement {
            negative: true,
            symbols: BTreeMap::new(),
        }
    }

    pub fn symbol(name: &str, exp: i64) -> Self {
        let mut u = UnitElement::one();
        if exp != 0 {
            u.symbols.insert(name.to_string(), exp);
        }
        u
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.symbols.is_empty()
    }

    pub fn mul(&self, rhs: &UnitElement) -> UnitElement {
        let mut symbols = self.symbols.clone();
        for (name, &e) in &rhs.symbols {
            let v = symbols.remove(name).unwrap_or(0) + e;
            if v != 0 {
                symbols.insert(name.clone(), v);
            }
        }
        UnitElement {
            negative: self.negative ^ rhs.negative,
            symbols,
        }
    }

    pub fn inverse(&self) -> UnitElement {
        UnitElement {
            negative: self.negative,
            symbols: self.symbols.iter().map(|(n, &e)| (n.clone(), -e)).collect(),
        }
    }

    /// `(-1)^e` as a unit.
    pub fn sign_power(e: i64) -> UnitElement {
        if e.rem_euclid(2) == 1 {
            UnitElement::minus_one()
        } else {
            UnitElement::one()
        }
    }
}

impl fmt::Display for UnitElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.negative {
            parts.push("(-1)^1".to_string());
        }
        for (name, e) in &self.symbols {
            parts.push(format!("{name}^{e}"));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" * "))
        }
    }
}

/// Grammar: `1`, or `*`-separated factors `(-1)^e` and `name^e` (plain
/// `name` means exponent one; a bare leading `-` is the sign).
impl FromStr for UnitElement {
    type Err = PicardError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        if text.is_empty() {
            return Err(PicardError::Parse("empty unit".to_string()));
        }
        let mut out = UnitElement::one();
        for raw in text.split('*') {
            let factor = raw.trim();
            if factor.is_empty() {
                return Err(PicardError::Parse(format!("empty factor in {s:?}")));
            }
            if factor == "1" {
                continue;
            }
            if factor == "-1" || factor == "-" {
                out.negative ^= true;
                continue;
            }
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => {
                    let exp: i64 = e.trim().parse().map_err(|_| {
                        PicardError::Parse(format!("invalid exponent in {factor:?}"))
                    })?;
                    (b.trim(), exp)
                }
                None => (factor, 1),
            };
            if base == "(-1)" {
                if exp.rem_euclid(2) == 1 {
                    out.negative ^= true;
                }
                continue;
            }
            if !base.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                || base.is_empty()
                || base.chars().next().is_some_and(|c| c.is_ascii_digit())
            {
                return Err(PicardError::Parse(format!(
                    "invalid unit symbol {base:?}"
                )));
            }
            out = out.mul(&UnitElement::symbol(base, exp));
        }
        Ok(out)
    }
}

/// An element of TrPic(Lambda_k): braid word, shift power, Nakayama power
/// and unit, modulo the central relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicardElement {
    pub k: u64,
    pub braid: GroupWord,
    pub shift: i64,
    pub nakayama: i64,
    pub unit: UnitElement,
}

impl PicardElement {
    pub fn new(
        k: u64,
        braid: GroupWord,
        shift: i64,
        nakayama: i64,
        unit: UnitElement,
    ) -> Result<Self, PicardError> {
        if k == 0 {
            return Err(PicardError::ZeroParameter);
        }
        Ok(PicardElement {
            k,
            braid,
            shift,
            nakayama,
            unit,
        })
    }

    pub fn identity(k: u64) -> Result<Self, PicardError> {
        PicardElement::new(k, GroupWord::identity(), 0, 0, UnitElement::one())
    }

    /// The image of the central braid element Delta_G.
    pub fn delta(k: u64) -> Result<Self, PicardError> {
        PicardElement::new(
            k,
            BraidFamily::G2.center_word(),
            0,
            0,
            UnitElement::one(),
        )
    }

    /// The defining relation element (Delta_G^-1, 5, 3, (-1)^k); it must
    /// normalize to the identity.
    pub fn relation_element(k: u64) -> Result<Self, PicardError> {
        let unit = UnitElement::sign_power(k as i64);
        PicardElement::new(
            k,
            BraidFamily::G2.center_word().inverse(),
            5,
            3,
            unit,
        )
    }
}

impl fmt::Display for PicardElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} ; {} ; {} ; {}]",
            self.braid, self.shift, self.nakayama, self.unit
        )
    }
}

/// Parses `[braid word ; shift ; nak ; unit]` for the given k.
pub fn parse_element(k: u64, text: &str) -> Result<PicardElement, PicardError> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| PicardError::Parse(format!("expected [w ; shift ; nak ; unit], got {text:?}")))?;
    let parts: Vec<&str> = inner.split(';').collect();
    if parts.len() != 4 {
        return Err(PicardError::Parse(format!(
            "expected four ;-separated fields, got {}",
            parts.len()
        )));
    }
    let braid: GroupWord = {
        let w = parts[0].trim();
        if w.is_empty() || w == "e" {
            GroupWord::identity()
        } else {
            w.parse()?
        }
    };
    let shift: i64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| PicardError::Parse(format!("invalid shift {:?}", parts[1].trim())))?;
    let nakayama: i64 = parts[2]
        .trim()
        .parse()
        .map_err(|_| PicardError::Parse(format!("invalid Nakayama power {:?}", parts[2].trim())))?;
    let unit: UnitElement = parts[3].parse()?;
    PicardElement::new(k, braid, shift, nakayama, unit)
}

/// Canonical form: the braid coordinate is replaced by the canonical
/// center-free lift of its normal form, and each center power is traded for
/// (shift +5, Nakayama +3, unit *(-1)^k) along the defining relation.
pub fn pic_normal_form(el: &PicardElement) -> Result<PicardElement, PicardError> {
    let spec = GroupSpec::Braid(BraidFamily::G2);
    let nf = groups::normal_form(&el.braid, spec)?;
    let c = nf.center_exponent;
    let center_free = groups::NormalForm {
        center_exponent: 0,
        ..nf
    }
    .lift();
    let modulus = 3 * el.k as i64;
    let unit = el.unit.mul(&UnitElement::sign_power(el.k as i64 * c));
    PicardElement::new(
        el.k,
        center_free,
        el.shift + 5 * c,
        (el.nakayama + 3 * c).rem_euclid(modulus),
        unit,
    )
}

pub fn pic_multiply(x: &PicardElement, y: &PicardElement) -> Result<PicardElement, PicardError> {
    if x.k != y.k {
        return Err(PicardError::MismatchedParameter {
            left: x.k,
            right: y.k,
        });
    }
    pic_normal_form(&PicardElement {
        k: x.k,
        braid: x.braid.mul(&y.braid),
        shift: x.shift + y.shift,
        nakayama: x.nakayama + y.nakayama,
        unit: x.unit.mul(&y.unit),
    })
}

pub fn pic_invert(x: &PicardElement) -> Result<PicardElement, PicardError> {
    pic_normal_form(&PicardElement {
        k: x.k,
        braid: x.braid.inverse(),
        shift: -x.shift,
        nakayama: -x.nakayama,
        unit: x.unit.inverse(),
    })
}

pub fn pic_equal(x: &PicardElement, y: &PicardElement) -> Result<bool, PicardError> {
    if x.k != y.k {
        return Err(PicardError::MismatchedParameter {
            left: x.k,
            right: y.k,
        });
    }
    Ok(pic_normal_form(x)? == pic_normal_form(y)?)
}
