//! Presentations, canonical normal forms and equality decision for every
//! group that two spherical twists can generate, plus the classifier for
//! the full case analysis.
//!
//! The braid groups of types A2, B2, G2 are handled through their central
//! quotients: B_B/Z = Z * Z/2 and B_G/Z = Z * Z/3 (sigma_1 -> x,
//! sigma_2 -> x^-1 y), B_A/Z = Z/2 * Z/3 (x = image of sigma_1 sigma_2
//! sigma_1, y = image of sigma_1 sigma_2). A word is put into the free
//! product normal form, lifted back along a fixed section, and the center
//! exponent is recovered from exponent sums; the pair (center exponent,
//! quotient normal form) is a complete invariant.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("generator s{index} is out of range for {spec}")]
    GeneratorOutOfRange { index: u8, spec: GroupSpec },
}

/// Word in the generators s1, s2, s3: a fused list of (generator, exponent).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    letters: Vec<(u8, i64)>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn from_letters<I: IntoIterator<Item = (u8, i64)>>(letters: I) -> Self {
        let mut w = GroupWord::default();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    pub fn letters(&self) -> &[(u8, i64)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, gen: u8, exp: i64) {
        assert!((1..=3).contains(&gen), "generator index must be 1..=3");
        if exp == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.0 == gen {
                last.1 += exp;
                if last.1 == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((gen, exp));
    }

    pub fn mul(&self, rhs: &GroupWord) -> GroupWord {
        let mut out = self.clone();
        for &(g, e) in &rhs.letters {
            out.push(g, e);
        }
        out
    }

    pub fn inverse(&self) -> GroupWord {
        let mut out = GroupWord::default();
        for &(g, e) in self.letters.iter().rev() {
            out.push(g, -e);
        }
        out
    }

    pub fn pow(&self, n: i64) -> GroupWord {
        let base = if n >= 0 { self.clone() } else { self.inverse() };
        let mut out = GroupWord::default();
        for _ in 0..n.abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn max_generator(&self) -> u8 {
        self.letters.iter().map(|&(g, _)| g).max().unwrap_or(0)
    }

    pub fn exponent_sum(&self, gen: u8) -> i64 {
        self.letters
            .iter()
            .filter(|&&(g, _)| g == gen)
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn total_exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&(_, e)| e).sum()
    }

    /// Number of single-generator letters after expanding exponents.
    pub fn syllable_length(&self) -> u64 {
        self.letters.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let mut first = true;
        for &(g, e) in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "s{g}")?;
            } else {
                write!(f, "s{g}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Expansion cap for parsed words: the total letter count after expanding
/// all powers. Normal forms are linear in this size, so the parser refuses
/// words it could not afford to normalize.
pub const MAX_WORD_LETTERS: u64 = 100_000;

/// Parses the word grammar: letters `s1|s2|s3` with optional `^exp`, plus
/// parenthesized subwords with optional powers, separated by whitespace.
impl FromStr for GroupWord {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        let mut pos = 0usize;
        let mut budget = MAX_WORD_LETTERS;
        let word = parse_word(bytes, &mut pos, 0, &mut budget)?;
        skip_ws(bytes, &mut pos);
        if pos != bytes.len() {
            return Err(GroupError::Syntax {
                pos,
                msg: format!("unexpected character {:?}", bytes[pos] as char),
            });
        }
        Ok(word)
    }
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_int(bytes: &[u8], pos: &mut usize) -> Result<i64, GroupError> {
    let start = *pos;
    let mut end = *pos;
    if end < bytes.len() && bytes[end] == b'-' {
        end += 1;
    }
    let digits_start = end;
    while end < bytes.len() && bytes[end].is_ascii_digit() {
        end += 1;
    }
    if end == digits_start {
        return Err(GroupError::Syntax {
            pos: start,
            msg: "expected an integer".to_string(),
        });
    }
    let text = std::str::from_utf8(&bytes[start..end]).unwrap();
    let value: i64 = text.parse().map_err(|_| GroupError::Syntax {
        pos: start,
        msg: "integer out of range".to_string(),
    })?;
    *pos = end;
    Ok(value)
}

fn spend_budget(budget: &mut u64, cost: u64, at: usize) -> Result<(), GroupError> {
    if cost > *budget {
        return Err(GroupError::Syntax {
            pos: at,
            msg: format!("word expands beyond {MAX_WORD_LETTERS} letters"),
        });
    }
    *budget -= cost;
    Ok(())
}

fn parse_word(
    bytes: &[u8],
    pos: &mut usize,
    depth: usize,
    budget: &mut u64,
) -> Result<GroupWord, GroupError> {
    if depth > 64 {
        return Err(GroupError::Syntax {
            pos: *pos,
            msg: "nesting too deep".to_string(),
        });
    }
    let mut out = GroupWord::identity();
    loop {
        skip_ws(bytes, pos);
        if *pos >= bytes.len() {
            return Ok(out);
        }
        match bytes[*pos] {
            b's' => {
                let at = *pos;
                *pos += 1;
                if *pos >= bytes.len() || !bytes[*pos].is_ascii_digit() {
                    return Err(GroupError::Syntax {
                        pos: at,
                        msg: "expected generator index after 's'".to_string(),
                    });
                }
                let idx = bytes[*pos] - b'0';
                *pos += 1;
                if !(1..=3).contains(&idx) {
                    return Err(GroupError::Syntax {
                        pos: at,
                        msg: format!("generator s{idx} is not one of s1, s2, s3"),
                    });
                }
                let exp = parse_opt_power(bytes, pos)?;
                spend_budget(budget, exp.unsigned_abs(), at)?;
                out.push(idx, exp);
            }
            // The empty word prints as `e`; accept it back.
            b'e' => {
                *pos += 1;
            }
            b'(' => {
                let at = *pos;
                *pos += 1;
                // The inner word draws on the same budget; the extra copies
                // of a powered group are charged afterwards.
                let before = *budget;
                let inner = parse_word(bytes, pos, depth + 1, budget)?;
                skip_ws(bytes, pos);
                if *pos >= bytes.len() || bytes[*pos] != b')' {
                    return Err(GroupError::Syntax {
                        pos: *pos,
                        msg: "expected ')'".to_string(),
                    });
                }
                *pos += 1;
                let exp = parse_opt_power(bytes, pos)?;
                let inner_len = before - *budget;
                let extra = inner_len
                    .checked_mul(exp.unsigned_abs().saturating_sub(1))
                    .ok_or_else(|| GroupError::Syntax {
                        pos: at,
                        msg: format!("word expands beyond {MAX_WORD_LETTERS} letters"),
                    })?;
                spend_budget(budget, extra, at)?;
                out = out.mul(&inner.pow(exp));
            }
            b')' => return Ok(out),
            other => {
                return Err(GroupError::Syntax {
                    pos: *pos,
                    msg: format!("unexpected character {:?}", other as char),
                })
            }
        }
    }
}

fn parse_opt_power(bytes: &[u8], pos: &mut usize) -> Result<i64, GroupError> {
    if *pos < bytes.len() && bytes[*pos] == b'^' {
        *pos += 1;
        parse_int(bytes, pos)
    } else {
        Ok(1)
    }
}

pub fn parse_word_text(text: &str) -> Result<GroupWord, GroupError> {
    text.parse()
}

/// The three finite-type braid families with two generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BraidFamily {
    A2,
    B2,
    G2,
}

impl BraidFamily {
    /// The generator of the center: (s1 s2)^3 for A2 and G2, (s1 s2)^2 for B2.
    pub fn center_word(self) -> GroupWord {
        let s1s2 = GroupWord::from_letters([(1, 1), (2, 1)]);
        match self {
            BraidFamily::A2 | BraidFamily::G2 => s1s2.pow(3),
            BraidFamily::B2 => s1s2.pow(2),
        }
    }

    /// The defining relation (lhs, rhs).
    pub fn braid_relation(self) -> (GroupWord, GroupWord) {
        let s1s2 = GroupWord::from_letters([(1, 1), (2, 1)]);
        let s2s1 = GroupWord::from_letters([(2, 1), (1, 1)]);
        match self {
            BraidFamily::A2 => (
                GroupWord::from_letters([(1, 1), (2, 1), (1, 1)]),
                GroupWord::from_letters([(2, 1), (1, 1), (2, 1)]),
            ),
            BraidFamily::B2 => (s1s2.pow(2), s2s1.pow(2)),
            BraidFamily::G2 => (s1s2.pow(3), s2s1.pow(3)),
        }
    }
}

impl fmt::Display for BraidFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BraidFamily::A2 => write!(f, "a2"),
            BraidFamily::B2 => write!(f, "b2"),
            BraidFamily::G2 => write!(f, "g2"),
        }
    }
}

/// Group presentations the word problem is decided in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    /// Free group of the given rank (1..=3).
    Free(u8),
    Braid(BraidFamily),
    /// Braid group modulo the cyclic subgroup generated by Delta^t; t = 0 is
    /// the plain braid group.
    BraidModCenterPower(BraidFamily, u64),
    /// The nontrivial central extension of S3 by Z:
    /// <s1, s2 | s1 s2 s1 = s2 s1 s2, s1^2 = s2^2>.
    S3Z,
    /// (Z x Z)/<(2t, -2t)>; t = 0 is Z x Z.
    ZxZMod(u64),
    AbelianRank2,
}

impl GroupSpec {
    pub fn generator_count(self) -> u8 {
        match self {
            GroupSpec::Free(r) => r,
            _ => 2,
        }
    }

    fn check_word(self, w: &GroupWord) -> Result<(), GroupError> {
        let max = w.max_generator();
        if max > self.generator_count() {
            return Err(GroupError::GeneratorOutOfRange {
                index: max,
                spec: self,
            });
        }
        Ok(())
    }

    /// Defining relations as (lhs, rhs) pairs; empty for free and abelian
    /// kinds beyond commutativity, which is listed explicitly.
    pub fn defining_relations(self) -> Vec<(GroupWord, GroupWord)> {
        let comm = (
            GroupWord::from_letters([(1, 1), (2, 1)]),
            GroupWord::from_letters([(2, 1), (1, 1)]),
        );
        match self {
            GroupSpec::Free(_) => vec![],
            GroupSpec::Braid(fam) => vec![fam.braid_relation()],
            GroupSpec::BraidModCenterPower(fam, t) => {
                let mut rels = vec![fam.braid_relation()];
                if t > 0 {
                    rels.push((fam.center_word().pow(t as i64), GroupWord::identity()));
                }
                rels
            }
            GroupSpec::S3Z => vec![
                BraidFamily::A2.braid_relation(),
                (
                    GroupWord::from_letters([(1, 2)]),
                    GroupWord::from_letters([(2, 2)]),
                ),
            ],
            GroupSpec::ZxZMod(t) => {
                let mut rels = vec![comm];
                if t > 0 {
                    let t = t as i64;
                    rels.push((
                        GroupWord::from_letters([(1, 2 * t)]),
                        GroupWord::from_letters([(2, 2 * t)]),
                    ));
                }
                rels
            }
            GroupSpec::AbelianRank2 => vec![comm],
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Free(r) => write!(f, "free{r}"),
            GroupSpec::Braid(fam) => write!(f, "{fam}"),
            GroupSpec::BraidModCenterPower(fam, t) => write!(f, "{fam}-mod:{t}"),
            GroupSpec::S3Z => write!(f, "s3z"),
            GroupSpec::ZxZMod(t) => write!(f, "zxz:{t}"),
            GroupSpec::AbelianRank2 => write!(f, "abelian2"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        let fam = |name: &str| match name {
            "a2" => Some(BraidFamily::A2),
            "b2" => Some(BraidFamily::B2),
            "g2" => Some(BraidFamily::G2),
            _ => None,
        };
        let parse_t = |txt: &str| -> Result<u64, GroupError> {
            txt.parse().map_err(|_| GroupError::Syntax {
                pos: 0,
                msg: format!("invalid modulus in group spec {s:?}"),
            })
        };
        if let Some(f) = fam(&t) {
            return Ok(GroupSpec::Braid(f));
        }
        if let Some((head, tail)) = t.split_once("-mod:") {
            if let Some(f) = fam(head) {
                return Ok(GroupSpec::BraidModCenterPower(f, parse_t(tail)?));
            }
        }
        if let Some(tail) = t.strip_prefix("zxz:") {
            return Ok(GroupSpec::ZxZMod(parse_t(tail)?));
        }
        match t.as_str() {
            "free1" => Ok(GroupSpec::Free(1)),
            "free2" => Ok(GroupSpec::Free(2)),
            "free3" => Ok(GroupSpec::Free(3)),
            "s3z" => Ok(GroupSpec::S3Z),
            "abelian2" | "zxz" => Ok(GroupSpec::AbelianRank2),
            _ => Err(GroupError::Syntax {
                pos: 0,
                msg: format!("unknown group spec {s:?}"),
            }),
        }
    }
}

/// Syllable of a free product: X is the first factor, Y the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Syllable {
    X(i64),
    Y(i64),
}

/// The six elements of S3 as fixed coset representatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum S3Elem {
    E,
    S1,
    S2,
    S12,
    S21,
    S121,
}

impl S3Elem {
    fn rep_word(self) -> GroupWord {
        match self {
            S3Elem::E => GroupWord::identity(),
            S3Elem::S1 => GroupWord::from_letters([(1, 1)]),
            S3Elem::S2 => GroupWord::from_letters([(2, 1)]),
            S3Elem::S12 => GroupWord::from_letters([(1, 1), (2, 1)]),
            S3Elem::S21 => GroupWord::from_letters([(2, 1), (1, 1)]),
            S3Elem::S121 => GroupWord::from_letters([(1, 1), (2, 1), (1, 1)]),
        }
    }

    /// Right multiplication by a single generator: returns (center bump, new
    /// representative). Derived from the presentation with z = s1^2 = s2^2
    /// central.
    fn mul_gen(self, gen: u8) -> (i64, S3Elem) {
        use S3Elem::*;
        match (self, gen) {
            (E, 1) => (0, S1),
            (E, 2) => (0, S2),
            (S1, 1) => (1, E),
            (S1, 2) => (0, S12),
            (S2, 1) => (0, S21),
            (S2, 2) => (1, E),
            (S12, 1) => (0, S121),
            (S12, 2) => (1, S1),
            (S21, 1) => (1, S2),
            (S21, 2) => (0, S121),
            (S121, 1) => (1, S12),
            (S121, 2) => (1, S21),
            _ => unreachable!("generator index validated earlier"),
        }
    }
}

/// Canonical form payload per group kind.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NormalBody {
    /// Freely reduced word.
    Free(Vec<(u8, i64)>),
    /// Alternating word in the free-product model of the central quotient.
    Syllables(Vec<Syllable>),
    /// Coset representative in S3.
    Coset(S3Elem),
    /// Reduced pair for the abelian kinds.
    Pair(i64, i64),
}

/// Canonical form: two words represent the same element iff their normal
/// forms are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub spec: GroupSpec,
    pub center_exponent: i64,
    pub body: NormalBody,
}

impl NormalForm {
    pub fn is_identity(&self) -> bool {
        self.center_exponent == 0
            && match &self.body {
                NormalBody::Free(w) => w.is_empty(),
                NormalBody::Syllables(s) => s.is_empty(),
                NormalBody::Coset(c) => *c == S3Elem::E,
                NormalBody::Pair(a, b) => *a == 0 && *b == 0,
            }
    }

    /// Canonical word representing this normal form.
    pub fn lift(&self) -> GroupWord {
        match &self.body {
            NormalBody::Free(letters) => GroupWord::from_letters(letters.iter().copied()),
            NormalBody::Pair(a, b) => {
                let mut w = GroupWord::identity();
                w.push(1, *a);
                w.push(2, *b);
                w
            }
            NormalBody::Coset(c) => {
                let center = GroupWord::from_letters([(1, 2)]).pow(self.center_exponent);
                center.mul(&c.rep_word())
            }
            NormalBody::Syllables(sylls) => {
                let (fam, _) = match self.spec {
                    GroupSpec::Braid(f) => (f, 0),
                    GroupSpec::BraidModCenterPower(f, t) => (f, t),
                    _ => unreachable!("syllable bodies only arise for braid kinds"),
                };
                let center = fam.center_word().pow(self.center_exponent);
                let mut w = center;
                for &s in sylls {
                    w = w.mul(&syllable_lift(fam, s));
                }
                w
            }
        }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.body {
            NormalBody::Free(w) => {
                write!(f, "{}", GroupWord::from_letters(w.iter().copied()))
            }
            NormalBody::Pair(a, b) => write!(f, "({a},{b})"),
            NormalBody::Coset(c) => {
                write!(f, "z^{} {}", self.center_exponent, c.rep_word())
            }
            NormalBody::Syllables(s) => {
                write!(f, "Delta^{}", self.center_exponent)?;
                for syl in s {
                    match syl {
                        Syllable::X(e) => write!(f, " x^{e}")?,
                        Syllable::Y(e) => write!(f, " y^{e}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

/// Free product model for the central quotient of a braid family:
/// orders of the two factors (0 means infinite).
fn quotient_orders(fam: BraidFamily) -> (u64, u64) {
    match fam {
        BraidFamily::A2 => (2, 3),
        BraidFamily::B2 => (0, 2),
        BraidFamily::G2 => (0, 3),
    }
}

/// Image of a generator letter in the free-product model.
fn letter_image(fam: BraidFamily, gen: u8, positive: bool) -> Vec<Syllable> {
    match fam {
        // B2, G2: s1 -> x, s2 -> x^-1 y.
        BraidFamily::B2 | BraidFamily::G2 => match (gen, positive) {
            (1, true) => vec![Syllable::X(1)],
            (1, false) => vec![Syllable::X(-1)],
            (2, true) => vec![Syllable::X(-1), Syllable::Y(1)],
            (2, false) => vec![Syllable::Y(-1), Syllable::X(1)],
            _ => unreachable!(),
        },
        // A2: s1 -> y^-1 x, s2 -> x y^2 (x = im s1s2s1, y = im s1s2).
        BraidFamily::A2 => match (gen, positive) {
            (1, true) => vec![Syllable::Y(-1), Syllable::X(1)],
            (1, false) => vec![Syllable::X(-1), Syllable::Y(1)],
            (2, true) => vec![Syllable::X(1), Syllable::Y(2)],
            (2, false) => vec![Syllable::Y(-2), Syllable::X(-1)],
            _ => unreachable!(),
        },
    }
}

/// Canonical word for a single syllable under the fixed section.
fn syllable_lift(fam: BraidFamily, s: Syllable) -> GroupWord {
    let s1s2 = GroupWord::from_letters([(1, 1), (2, 1)]);
    match fam {
        BraidFamily::B2 | BraidFamily::G2 => match s {
            Syllable::X(e) => GroupWord::from_letters([(1, e)]),
            Syllable::Y(e) => s1s2.pow(e),
        },
        BraidFamily::A2 => match s {
            Syllable::X(e) => GroupWord::from_letters([(1, 1), (2, 1), (1, 1)]).pow(e),
            Syllable::Y(e) => s1s2.pow(e),
        },
    }
}

/// Stack reduction in the free product with the given factor orders. The
/// stack alternates between the factors, so each incoming syllable fuses
/// with the top at most once.
fn reduce_syllables(orders: (u64, u64), input: &[Syllable]) -> Vec<Syllable> {
    let normalize = |s: Syllable| -> Option<Syllable> {
        match s {
            Syllable::X(e) => {
                let e = if orders.0 > 0 {
                    e.rem_euclid(orders.0 as i64)
                } else {
                    e
                };
                (e != 0).then_some(Syllable::X(e))
            }
            Syllable::Y(e) => {
                let e = if orders.1 > 0 {
                    e.rem_euclid(orders.1 as i64)
                } else {
                    e
                };
                (e != 0).then_some(Syllable::Y(e))
            }
        }
    };
    let mut stack: Vec<Syllable> = Vec::new();
    for &s in input {
        let Some(cur) = normalize(s) else { continue };
        match (stack.last().copied(), cur) {
            (Some(Syllable::X(a)), Syllable::X(b)) => {
                stack.pop();
                if let Some(n) = normalize(Syllable::X(a + b)) {
                    stack.push(n);
                }
            }
            (Some(Syllable::Y(a)), Syllable::Y(b)) => {
                stack.pop();
                if let Some(n) = normalize(Syllable::Y(a + b)) {
                    stack.push(n);
                }
            }
            _ => stack.push(cur),
        }
    }
    stack
}

/// Canonical normal form of a word in the given group.
pub fn normal_form(word: &GroupWord, spec: GroupSpec) -> Result<NormalForm, GroupError> {
    spec.check_word(word)?;
    match spec {
        GroupSpec::Free(_) => Ok(NormalForm {
            spec,
            center_exponent: 0,
            body: NormalBody::Free(word.letters().to_vec()),
        }),
        GroupSpec::AbelianRank2 => Ok(NormalForm {
            spec,
            center_exponent: 0,
            body: NormalBody::Pair(word.exponent_sum(1), word.exponent_sum(2)),
        }),
        GroupSpec::ZxZMod(t) => {
            let (a, b) = (word.exponent_sum(1), word.exponent_sum(2));
            let (a, b) = if t > 0 {
                // Add multiples of (2t, -2t) until a lands in [0, 2t).
                let modulus = 2 * t as i64;
                let q = a.div_euclid(modulus);
                (a - q * modulus, b + q * modulus)
            } else {
                (a, b)
            };
            Ok(NormalForm {
                spec,
                center_exponent: 0,
                body: NormalBody::Pair(a, b),
            })
        }
        GroupSpec::S3Z => {
            let mut center = 0i64;
            let mut rep = S3Elem::E;
            for &(g, e) in word.letters() {
                // s_g^e = z^(e div 2) s_g^(e mod 2) since s_g^2 = z.
                center += e.div_euclid(2);
                if e.rem_euclid(2) == 1 {
                    let (bump, next) = rep.mul_gen(g);
                    center += bump;
                    rep = next;
                }
            }
            Ok(NormalForm {
                spec,
                center_exponent: center,
                body: NormalBody::Coset(rep),
            })
        }
        GroupSpec::Braid(fam) => braid_normal_form(word, spec, fam, 0),
        GroupSpec::BraidModCenterPower(fam, t) => braid_normal_form(word, spec, fam, t),
    }
}

fn braid_normal_form(
    word: &GroupWord,
    spec: GroupSpec,
    fam: BraidFamily,
    t: u64,
) -> Result<NormalForm, GroupError> {
    let orders = quotient_orders(fam);
    let mut raw = Vec::new();
    for &(g, e) in word.letters() {
        let img = letter_image(fam, g, e > 0);
        for _ in 0..e.abs() {
            raw.extend_from_slice(&img);
        }
    }
    let syllables = reduce_syllables(orders, &raw);
    // Recover the center exponent by comparing exponent sums of the word
    // against its canonical lift.
    let lift = {
        let mut w = GroupWord::identity();
        for &s in &syllables {
            w = w.mul(&syllable_lift(fam, s));
        }
        w
    };
    let center = match fam {
        BraidFamily::A2 => {
            // Only the total exponent sum is invariant; Delta_A has total 6.
            let diff = word.total_exponent_sum() - lift.total_exponent_sum();
            assert!(
                diff % 6 == 0,
                "internal error: A2 center exponent not integral (diff {diff})"
            );
            diff / 6
        }
        BraidFamily::B2 | BraidFamily::G2 => {
            let per = if fam == BraidFamily::B2 { 2 } else { 3 };
            let d1 = word.exponent_sum(1) - lift.exponent_sum(1);
            let d2 = word.exponent_sum(2) - lift.exponent_sum(2);
            assert!(
                d1 % per == 0 && d2 % per == 0 && d1 / per == d2 / per,
                "internal error: inconsistent center exponent ({d1}, {d2}) for {fam}"
            );
            d1 / per
        }
    };
    let center = if t > 0 {
        center.rem_euclid(t as i64)
    } else {
        center
    };
    Ok(NormalForm {
        spec,
        center_exponent: center,
        body: NormalBody::Syllables(syllables),
    })
}

/// True iff the two words represent the same element of the group.
pub fn are_equal(w1: &GroupWord, w2: &GroupWord, spec: GroupSpec) -> Result<bool, GroupError> {
    Ok(normal_form(w1, spec)? == normal_form(w2, spec)?)
}

/// Classifier outcome: the group generated by the two twists per the full
/// case analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDescription {
    Free2,
    BraidA2,
    BraidB2,
    BraidG2,
    /// Braid group modulo the cyclic subgroup generated by
    /// Delta^(t * multiple) for some undetermined integer t.
    QuotientFamily {
        family: BraidFamily,
        center_power_multiple: u64,
    },
    /// Either the braid group of type A2 or S3^Z (length 3, sphericity 2).
    ExceptionalA2OrS3Z,
    /// Either the braid group of type B2 or (Z x Z)/(2t,-2t)
    /// (length 2, sphericity 1 against length 4, sphericity 2).
    ExceptionalB2OrZxZ,
    /// No homs between the sequences: the twists commute.
    Abelian,
}

impl GroupDescription {
    pub fn notes(&self) -> String {
        match self {
            GroupDescription::Free2 => {
                "free group on the two twists (ping-pong on u-statistics)".to_string()
            }
            GroupDescription::BraidA2 => "braid group of type A2".to_string(),
            GroupDescription::BraidB2 => "braid group of type B2".to_string(),
            GroupDescription::BraidG2 => "braid group of type G2".to_string(),
            GroupDescription::QuotientFamily {
                family,
                center_power_multiple,
            } => format!(
                "braid group of type {family} modulo <Delta^(t*{center_power_multiple})> for some integer t"
            ),
            GroupDescription::ExceptionalA2OrS3Z => {
                "braid group of type A2 or the central extension S3^Z of S3 by Z".to_string()
            }
            GroupDescription::ExceptionalB2OrZxZ => {
                "braid group of type B2 or (Z x Z)/(2t,-2t) for some integer t".to_string()
            }
            GroupDescription::Abelian => {
                "abelian group generated by the two commuting twists".to_string()
            }
        }
    }
}

impl fmt::Display for GroupDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescription::Free2 => write!(f, "Free2"),
            GroupDescription::BraidA2 => write!(f, "BraidA2"),
            GroupDescription::BraidB2 => write!(f, "BraidB2"),
            GroupDescription::BraidG2 => write!(f, "BraidG2"),
            GroupDescription::QuotientFamily {
                family,
                center_power_multiple,
            } => write!(f, "QuotientFamily({family}, Delta^(t*{center_power_multiple}))"),
            GroupDescription::ExceptionalA2OrS3Z => write!(f, "ExceptionalA2orS3Z"),
            GroupDescription::ExceptionalB2OrZxZ => write!(f, "ExceptionalB2orZxZ"),
            GroupDescription::Abelian => write!(f, "Abelian"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("sequence lengths must be positive, got k={k}, k'={kp}")]
    ZeroLength { k: u64, kp: u64 },
    #[error(
        "inconsistent input: nonzero total hom ({total_hom}) requires k'm = km', \
         got k'm = {kpm} and km' = {kmp}"
    )]
    InvalidInput { total_hom: u64, kpm: i64, kmp: i64 },
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// The group generated by twists along an m-spherical sequence of length k
/// and an m'-spherical sequence of length k' with the given total hom
/// dimension between them.
pub fn classify_twist_group(
    k: u64,
    m: i64,
    kp: u64,
    mp: i64,
    total_hom: u64,
) -> Result<GroupDescription, ClassifyError> {
    if k == 0 || kp == 0 {
        return Err(ClassifyError::ZeroLength { k, kp });
    }
    // Normalize to k <= k'.
    let (k, m, kp, mp) = if k <= kp { (k, m, kp, mp) } else { (kp, mp, k, m) };
    if total_hom == 0 {
        return Ok(GroupDescription::Abelian);
    }
    let kpm = kp as i64 * m;
    let kmp = k as i64 * mp;
    if kpm != kmp {
        // Nonzero hom space between sequences with k'm != km' contradicts
        // the Serre-periodicity obstruction.
        return Err(ClassifyError::InvalidInput {
            total_hom,
            kpm,
            kmp,
        });
    }
    let ki = k as i64;
    if kp % k == 0 && total_hom == kp {
        let r = kp / k;
        match r {
            1 => {
                if (m, k) == (2, 3) {
                    return Ok(GroupDescription::ExceptionalA2OrS3Z);
                }
                if 3 * m == 4 * ki {
                    return Ok(GroupDescription::QuotientFamily {
                        family: BraidFamily::A2,
                        center_power_multiple: (ki / gcd(ki, 3)) as u64,
                    });
                }
                return Ok(GroupDescription::BraidA2);
            }
            2 => {
                if (m, k) == (1, 2) {
                    return Ok(GroupDescription::ExceptionalB2OrZxZ);
                }
                if 2 * m == 3 * ki {
                    return Ok(GroupDescription::QuotientFamily {
                        family: BraidFamily::B2,
                        center_power_multiple: (2 * ki / gcd(ki - 2, 4)) as u64,
                    });
                }
                return Ok(GroupDescription::BraidB2);
            }
            3 => {
                if 3 * m == 5 * ki {
                    return Ok(GroupDescription::QuotientFamily {
                        family: BraidFamily::G2,
                        center_power_multiple: k,
                    });
                }
                return Ok(GroupDescription::BraidG2);
            }
            _ => {}
        }
    }
    Ok(GroupDescription::Free2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GroupWord {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            w("s1 s2 s1").letters(),
            &[(1, 1), (2, 1), (1, 1)]
        );
        assert!(w("s1^2 s1^-2").is_identity());
        assert_eq!(w("s2^-3").letters(), &[(2, -3)]);
        assert_eq!(w("(s1 s2)^2").letters(), &[(1, 1), (2, 1), (1, 1), (2, 1)]);
        assert_eq!(w("(s1 s2)^-1").letters(), &[(2, -1), (1, -1)]);
        assert!("s4".parse::<GroupWord>().is_err());
        assert!("s".parse::<GroupWord>().is_err());
        assert!("(s1".parse::<GroupWord>().is_err());
        assert!("x1".parse::<GroupWord>().is_err());
    }

    #[test]
    fn parser_refuses_huge_expansions() {
        assert!("(s1 s2)^999999999".parse::<GroupWord>().is_err());
        assert!("s1^99999999999".parse::<GroupWord>().is_err());
        assert!("((s1)^1000)^1000".parse::<GroupWord>().is_err());
        // Within budget is fine.
        assert!("(s1 s2)^100 s2^-100".parse::<GroupWord>().is_ok());
    }

    #[test]
    fn parse_error_carries_position() {
        let err = "s1 ?".parse::<GroupWord>().unwrap_err();
        assert!(matches!(err, GroupError::Syntax { pos: 3, .. }));
    }

    #[test]
    fn braid_a2_defining_relation() {
        let spec = GroupSpec::Braid(BraidFamily::A2);
        let nf = normal_form(&w("s1 s2 s1 s2^-1 s1^-1 s2^-1"), spec).unwrap();
        assert!(nf.is_identity(), "{nf}");
        assert!(are_equal(&w("s1 s2 s1"), &w("s2 s1 s2"), spec).unwrap());
        assert!(!are_equal(&w("s1"), &w("s2"), spec).unwrap());
    }

    #[test]
    fn s3z_examples() {
        let spec = GroupSpec::S3Z;
        assert!(are_equal(&w("s1^2"), &w("s2^2"), spec).unwrap());
        let nf = normal_form(&w("s1^6"), spec).unwrap();
        assert_eq!(nf.center_exponent, 3);
        assert_eq!(nf.body, NormalBody::Coset(S3Elem::E));
        assert!(!nf.is_identity());
        assert!(are_equal(&w("s1 s2 s1"), &w("s2 s1 s2"), spec).unwrap());
        assert!(!are_equal(&w("s1"), &w("s2"), spec).unwrap());
    }

    #[test]
    fn b2_center_is_central() {
        let spec = GroupSpec::Braid(BraidFamily::B2);
        assert!(are_equal(&w("(s1 s2)^2 s1"), &w("s1 (s1 s2)^2"), spec).unwrap());
        assert!(are_equal(&w("(s1 s2)^2 s2"), &w("s2 (s1 s2)^2"), spec).unwrap());
        assert!(are_equal(&w("(s1 s2)^2"), &w("(s2 s1)^2"), spec).unwrap());
        assert!(!are_equal(&w("s1 s2"), &w("s2 s1"), spec).unwrap());
    }

    #[test]
    fn g2_relation() {
        let spec = GroupSpec::Braid(BraidFamily::G2);
        assert!(are_equal(&w("(s1 s2)^3"), &w("(s2 s1)^3"), spec).unwrap());
        assert!(!are_equal(&w("(s1 s2)^2"), &w("(s2 s1)^2"), spec).unwrap());
    }

    #[test]
    fn free_group() {
        let spec = GroupSpec::Free(2);
        assert!(!are_equal(&w("s1 s2"), &w("s2 s1"), spec).unwrap());
        assert!(are_equal(&w("s1 s2 s2^-1"), &w("s1"), spec).unwrap());
        assert!(matches!(
            normal_form(&w("s3"), spec),
            Err(GroupError::GeneratorOutOfRange { index: 3, .. })
        ));
    }

    #[test]
    fn zxz_mod_examples() {
        // s1^2 = s2^2 under the relation (2,-2);
        // the twisted pair from the A3 example.
        let spec = GroupSpec::ZxZMod(1);
        assert!(are_equal(&w("s1^2"), &w("s2^2"), spec).unwrap());
        assert!(!are_equal(&w("s1"), &w("s2"), spec).unwrap());
        assert!(!are_equal(&w("s1^2"), &w("s2^-2"), spec).unwrap());
        // t = 0 is the free abelian group.
        let spec0 = GroupSpec::ZxZMod(0);
        assert!(!are_equal(&w("s1^2"), &w("s2^2"), spec0).unwrap());
        assert!(are_equal(&w("s1 s2"), &w("s2 s1"), spec0).unwrap());
    }

    #[test]
    fn mod_center_power() {
        for fam in [BraidFamily::A2, BraidFamily::B2, BraidFamily::G2] {
            let delta = fam.center_word();
            for t in [2u64, 3] {
                let spec = GroupSpec::BraidModCenterPower(fam, t);
                assert!(
                    normal_form(&delta.pow(t as i64), spec).unwrap().is_identity(),
                    "Delta^{t} must die in {spec}"
                );
                for s in 1..t {
                    assert!(
                        !normal_form(&delta.pow(s as i64), spec).unwrap().is_identity(),
                        "Delta^{s} must survive in {spec}"
                    );
                }
            }
            // t = 0 is the plain braid group.
            let spec0 = GroupSpec::BraidModCenterPower(fam, 0);
            let plain = GroupSpec::Braid(fam);
            let word = delta.mul(&w("s1 s2^-1 s1"));
            assert_eq!(
                normal_form(&word, spec0).unwrap().center_exponent,
                normal_form(&word, plain).unwrap().center_exponent
            );
        }
    }

    #[test]
    fn normal_form_idempotent() {
        let words = ["s1 s2 s1", "s1^-3 s2 s1 s2^4", "(s1 s2)^5 s1^-2", "s2^2 s1^2 s2^-1"];
        let specs = [
            GroupSpec::Braid(BraidFamily::A2),
            GroupSpec::Braid(BraidFamily::B2),
            GroupSpec::Braid(BraidFamily::G2),
            GroupSpec::BraidModCenterPower(BraidFamily::G2, 3),
            GroupSpec::S3Z,
            GroupSpec::ZxZMod(2),
            GroupSpec::Free(2),
            GroupSpec::AbelianRank2,
        ];
        for spec in specs {
            for text in words {
                let nf = normal_form(&w(text), spec).unwrap();
                let again = normal_form(&nf.lift(), spec).unwrap();
                assert_eq!(nf, again, "renormalizing a lift must be stable ({spec}, {text})");
            }
        }
    }

    #[test]
    fn centers_are_central() {
        for fam in [BraidFamily::A2, BraidFamily::B2, BraidFamily::G2] {
            let spec = GroupSpec::Braid(fam);
            let delta = fam.center_word();
            for text in ["s1", "s2^-1", "s1 s2 s1^2", "s2 s1^-1 s2"] {
                let word = w(text);
                assert!(
                    are_equal(&delta.mul(&word), &word.mul(&delta), spec).unwrap(),
                    "Delta must be central in {fam}"
                );
            }
        }
    }

    #[test]
    fn classifier_examples() {
        use GroupDescription::*;
        assert_eq!(classify_twist_group(3, 2, 3, 2, 3).unwrap(), ExceptionalA2OrS3Z);
        assert_eq!(classify_twist_group(2, 1, 4, 2, 4).unwrap(), ExceptionalB2OrZxZ);
        assert_eq!(classify_twist_group(2, 3, 2, 3, 2).unwrap(), BraidA2);
        assert_eq!(classify_twist_group(2, 1, 2, 1, 5).unwrap(), Free2);
        assert_eq!(classify_twist_group(1, 1, 1, 1, 0).unwrap(), Abelian);
        // The G2 quotient family needs 3m = 5k.
        assert_eq!(
            classify_twist_group(3, 5, 9, 15, 9).unwrap(),
            QuotientFamily {
                family: BraidFamily::G2,
                center_power_multiple: 3
            }
        );
        // With (k,m) = (1,5): 3m = 15 != 5 = 5k, so the plain braid group.
        assert_eq!(classify_twist_group(1, 5, 3, 15, 3).unwrap(), BraidG2);
        // A2 and B2 quotient families.
        assert_eq!(
            classify_twist_group(3, 4, 3, 4, 3).unwrap(),
            QuotientFamily {
                family: BraidFamily::A2,
                center_power_multiple: 1
            }
        );
        assert_eq!(
            classify_twist_group(6, 8, 6, 8, 6).unwrap(),
            QuotientFamily {
                family: BraidFamily::A2,
                center_power_multiple: 2
            }
        );
        assert_eq!(
            classify_twist_group(2, 3, 4, 6, 4).unwrap(),
            QuotientFamily {
                family: BraidFamily::B2,
                center_power_multiple: 1
            }
        );
        // Swapped argument order is normalized internally.
        assert_eq!(classify_twist_group(4, 2, 2, 1, 4).unwrap(), ExceptionalB2OrZxZ);
        // Obstruction: nonzero homs with k'm != km'.
        assert!(matches!(
            classify_twist_group(1, 1, 2, 3, 2),
            Err(ClassifyError::InvalidInput { .. })
        ));
        // Zero homs trump everything.
        assert_eq!(classify_twist_group(1, 1, 2, 3, 0).unwrap(), Abelian);
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("a2".parse::<GroupSpec>().unwrap(), GroupSpec::Braid(BraidFamily::A2));
        assert_eq!(
            "g2-mod:4".parse::<GroupSpec>().unwrap(),
            GroupSpec::BraidModCenterPower(BraidFamily::G2, 4)
        );
        assert_eq!("zxz:3".parse::<GroupSpec>().unwrap(), GroupSpec::ZxZMod(3));
        assert_eq!("free2".parse::<GroupSpec>().unwrap(), GroupSpec::Free(2));
        assert_eq!("s3z".parse::<GroupSpec>().unwrap(), GroupSpec::S3Z);
        assert!("q5".parse::<GroupSpec>().is_err());
    }
}
