//! Membership oracles for the named languages, together with their
//! autoreductions, advice functions and advised models.

mod length;
pub(crate) mod machines;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::automata::{track_alphabet, Advice, AdvisedDfa, Dfa};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol, Word};

pub use length::{ceil_log2, ceil_loglog_is_odd, is_even_length, length_class, BoundaryConvention, LengthClass};
pub use machines::{ip_star_pda, leq_pda};

type Member = Arc<dyn Fn(&[Symbol]) -> bool + Send + Sync>;

/// A named membership predicate over a declared alphabet.
#[derive(Clone)]
pub struct LanguageOracle {
    name: String,
    alphabet: Alphabet,
    member: Member,
    dfa: Option<Arc<Dfa>>,
}

impl fmt::Debug for LanguageOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LanguageOracle").field("name", &self.name).field("alphabet", &self.alphabet).finish()
    }
}

impl LanguageOracle {
    pub fn new(
        name: impl Into<String>,
        alphabet: Alphabet,
        member: impl Fn(&[Symbol]) -> bool + Send + Sync + 'static,
    ) -> Self {
        Self { name: name.into(), alphabet, member: Arc::new(member), dfa: None }
    }

    /// Oracle backed by a DFA; census code can then count by dynamic
    /// programming instead of enumeration.
    pub fn from_dfa(name: impl Into<String>, d: Dfa) -> Self {
        let alphabet = d.alphabet().clone();
        let d = Arc::new(d);
        let run = d.clone();
        Self { name: name.into(), alphabet, member: Arc::new(move |w| run.accepts(w)), dfa: Some(d) }
    }

    pub fn dfa(&self) -> Option<&Dfa> {
        self.dfa.as_deref()
    }

    pub fn universal(alphabet: Alphabet) -> Self {
        Self::new("sigma-star", alphabet, |_| true)
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Self::new("empty", alphabet, |_| false)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Membership with alphabet validation.
    pub fn contains(&self, w: &[Symbol]) -> Result<bool> {
        self.alphabet.validate(w)?;
        Ok((self.member)(w))
    }

    /// Membership for words already known to be over the alphabet.
    #[inline]
    pub fn is_member(&self, w: &[Symbol]) -> bool {
        (self.member)(w)
    }

    pub fn complement(&self) -> Self {
        let name = format!("not-{}", self.name);
        if let Some(d) = &self.dfa {
            return Self::from_dfa(name, d.complement());
        }
        let inner = self.member.clone();
        Self { name, alphabet: self.alphabet.clone(), member: Arc::new(move |w| !inner(w)), dfa: None }
    }

    /// Checks that two oracles share an alphabet.
    pub fn same_alphabet(&self, other: &LanguageOracle) -> Result<()> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch { left: self.alphabet.to_string(), right: other.alphabet.to_string() })
        }
    }
}

/// Stable identifiers for the built-in languages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LanguageId {
    /// `#0 = #1` over `{0,1}`.
    Equal,
    /// `#0 = #1 = #2` over `{0,1,2}`.
    ThreeEqual,
    /// `a·w` with `a ∈ {λ,0,1}` and `w ∈ Equal`.
    EqualStar,
    /// `0^n 1^n`.
    Leq,
    /// `a^n b^n c^n`.
    L3eq,
    /// `a_1^n ⋯ a_k^n` over the first `k` letters.
    Lkeq(usize),
    /// Even-length palindromes `w w^R`.
    Pal,
    /// `w # w^R`.
    PalSharp,
    /// `w w`.
    Dup,
    /// `w # w`.
    DupSharp,
    /// `a u 0^m 1 0^m v` with `2^m ≤ |u| = |v| < 2^(m+1)`.
    LCenter,
    LEven,
    LOdd,
    /// `a u v` with `|u| = |v|` and `u^R ⊙ v` odd.
    IpStar,
    SigmaStar,
    Empty,
}

impl LanguageId {
    pub const ALL_FIXED: [LanguageId; 15] = [
        LanguageId::Equal,
        LanguageId::ThreeEqual,
        LanguageId::EqualStar,
        LanguageId::Leq,
        LanguageId::L3eq,
        LanguageId::Pal,
        LanguageId::PalSharp,
        LanguageId::Dup,
        LanguageId::DupSharp,
        LanguageId::LCenter,
        LanguageId::LEven,
        LanguageId::LOdd,
        LanguageId::IpStar,
        LanguageId::SigmaStar,
        LanguageId::Empty,
    ];

    pub fn alphabet(self) -> Alphabet {
        match self {
            LanguageId::ThreeEqual => Alphabet::new(['0', '1', '2']).expect("static alphabet"),
            LanguageId::L3eq => Alphabet::letters(3).expect("static alphabet"),
            LanguageId::Lkeq(k) => Alphabet::letters(k).expect("validated k"),
            LanguageId::PalSharp | LanguageId::DupSharp => Alphabet::marked(),
            _ => Alphabet::binary(),
        }
    }

    pub fn oracle(self) -> LanguageOracle {
        let name = self.to_string();
        let alphabet = self.alphabet();
        match self {
            LanguageId::Equal => LanguageOracle::new(name, alphabet, is_equal),
            LanguageId::ThreeEqual => LanguageOracle::new(name, alphabet, |w| {
                let mut c = [0usize; 3];
                w.iter().for_each(|s| c[s.index()] += 1);
                c[0] == c[1] && c[1] == c[2]
            }),
            LanguageId::EqualStar => LanguageOracle::new(name, alphabet, |w| is_equal(&w[w.len() % 2..])),
            LanguageId::Leq => LanguageOracle::new(name, alphabet, |w| is_block_word(w, 2)),
            LanguageId::L3eq => LanguageOracle::new(name, alphabet, |w| is_block_word(w, 3)),
            LanguageId::Lkeq(k) => LanguageOracle::new(name, alphabet, move |w| is_block_word(w, k)),
            LanguageId::Pal => LanguageOracle::new(name, alphabet, |w| w.len() % 2 == 0 && is_palindrome(w)),
            LanguageId::PalSharp => LanguageOracle::new(name, alphabet, |w| {
                marked_halves(w).is_some_and(|(l, r)| l.iter().eq(r.iter().rev()))
            }),
            LanguageId::Dup => LanguageOracle::new(name, alphabet, |w| {
                let h = w.len() / 2;
                w.len() % 2 == 0 && w[..h] == w[h..]
            }),
            LanguageId::DupSharp => LanguageOracle::new(name, alphabet, |w| marked_halves(w).is_some_and(|(l, r)| l == r)),
            LanguageId::LCenter => LanguageOracle::new(name, alphabet, is_lcenter),
            LanguageId::LEven => LanguageOracle::new(name, alphabet, |w| {
                is_even_length(w.len() as u64, BoundaryConvention::default())
            }),
            LanguageId::LOdd => LanguageOracle::new(name, alphabet, |w| {
                !is_even_length(w.len() as u64, BoundaryConvention::default())
            }),
            LanguageId::IpStar => LanguageOracle::new(name, alphabet, is_ip_star),
            LanguageId::SigmaStar => LanguageOracle::universal(alphabet),
            LanguageId::Empty => LanguageOracle::empty(alphabet),
        }
    }
}

impl fmt::Display for LanguageId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LanguageId::Equal => "equal",
            LanguageId::ThreeEqual => "three-equal",
            LanguageId::EqualStar => "equal-star",
            LanguageId::Leq => "l-eq",
            LanguageId::L3eq => "l-3eq",
            LanguageId::Lkeq(k) => return write!(f, "l-keq:{k}"),
            LanguageId::Pal => "pal",
            LanguageId::PalSharp => "pal-sharp",
            LanguageId::Dup => "dup",
            LanguageId::DupSharp => "dup-sharp",
            LanguageId::LCenter => "l-center",
            LanguageId::LEven => "l-even",
            LanguageId::LOdd => "l-odd",
            LanguageId::IpStar => "ip-star",
            LanguageId::SigmaStar => "sigma-star",
            LanguageId::Empty => "empty",
        };
        f.write_str(s)
    }
}

impl FromStr for LanguageId {
    type Err = Error;

    /// Accepts the kebab-case identifiers, ignoring case, `-` and `_`
    /// (so `EqualStar`, `equal_star` and `equal-star` all parse).
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| *c != '-' && *c != '_').flat_map(char::to_lowercase).collect();
        if let Some(k) = key.strip_prefix("lkeq:").or_else(|| key.strip_prefix("lkeq")) {
            let k: usize = k.parse().map_err(|_| Error::UnknownLanguage(s.into()))?;
            if !(3..=26).contains(&k) {
                return Err(Error::InvalidArgument(format!("l-keq needs 3 ≤ k ≤ 26, got {k}")));
            }
            return Ok(LanguageId::Lkeq(k));
        }
        Ok(match key.as_str() {
            "equal" => LanguageId::Equal,
            "threeequal" | "3equal" => LanguageId::ThreeEqual,
            "equalstar" => LanguageId::EqualStar,
            "leq" => LanguageId::Leq,
            "l3eq" => LanguageId::L3eq,
            "pal" => LanguageId::Pal,
            "palsharp" => LanguageId::PalSharp,
            "dup" => LanguageId::Dup,
            "dupsharp" => LanguageId::DupSharp,
            "lcenter" => LanguageId::LCenter,
            "leven" => LanguageId::LEven,
            "lodd" => LanguageId::LOdd,
            "ipstar" => LanguageId::IpStar,
            "sigmastar" => LanguageId::SigmaStar,
            "empty" => LanguageId::Empty,
            _ => return Err(Error::UnknownLanguage(s.into())),
        })
    }
}

/// Oracle by identifier, e.g. `"pal-sharp"` or `"l-keq:4"`.
pub fn oracle(name: &str) -> Result<LanguageOracle> {
    Ok(name.parse::<LanguageId>()?.oracle())
}

fn is_equal(w: &[Symbol]) -> bool {
    let ones = w.iter().filter(|s| s.0 == 1).count();
    2 * ones == w.len()
}

fn is_palindrome(w: &[Symbol]) -> bool {
    w.iter().eq(w.iter().rev())
}

/// `s_0^n s_1^n ⋯ s_{k-1}^n`.
fn is_block_word(w: &[Symbol], k: usize) -> bool {
    if !w.len().is_multiple_of(k) {
        return false;
    }
    let n = w.len() / k;
    w.iter().enumerate().all(|(i, s)| s.index() == i / n.max(1))
}

/// Splits `l # r` with `l, r` over `{0,1}`, or `None`.
fn marked_halves(w: &[Symbol]) -> Option<(&[Symbol], &[Symbol])> {
    if w.len().is_multiple_of(2) {
        return None;
    }
    let h = w.len() / 2;
    let (l, rest) = w.split_at(h);
    if rest[0].0 != 2 || l.iter().chain(&rest[1..]).any(|s| s.0 == 2) {
        return None;
    }
    Some((l, &rest[1..]))
}

fn is_lcenter(w: &[Symbol]) -> bool {
    // The core u 0^m 1 0^m v has odd length, so a leading symbol is present
    // exactly when |w| is even.
    if w.is_empty() {
        return false;
    }
    let core = &w[1 - w.len() % 2..];
    let n = core.len();
    let mut m = 0usize;
    while (2usize << m) + 2 * m < n {
        let u = (n - 2 * m - 1) / 2;
        if (1usize << m) <= u && u < (2usize << m) {
            let middle = &core[u..u + 2 * m + 1];
            return middle.iter().enumerate().all(|(i, s)| s.0 == (i == m) as u8);
        }
        m += 1;
    }
    false
}

fn is_ip_star(w: &[Symbol]) -> bool {
    let rest = &w[w.len() % 2..];
    let (u, v) = rest.split_at(rest.len() / 2);
    u.iter().rev().zip(v).filter(|(a, b)| a.0 & b.0 == 1).count() % 2 == 1
}

/// `u ⊙ v mod 2`.
pub fn inner_product(u: &[Symbol], v: &[Symbol]) -> Result<u8> {
    if u.len() != v.len() {
        return Err(Error::InvalidArgument(format!("inner product of lengths {} and {}", u.len(), v.len())));
    }
    Ok((u.iter().zip(v).filter(|(a, b)| a.0 & b.0 == 1).count() % 2) as u8)
}

/// Length-increasing, membership-preserving self-maps:
/// Equal `x ↦ x01`, Pal `x ↦ 0x0`, IP* `a u v ↦ a 0 u v 0`.
pub fn autoreduce(id: LanguageId, w: &[Symbol]) -> Result<Word> {
    let (z, o) = (Symbol::ZERO, Symbol::ONE);
    match id {
        LanguageId::Equal => Ok(w.iter().copied().chain([z, o]).collect()),
        LanguageId::Pal => Ok([z].into_iter().chain(w.iter().copied()).chain([z]).collect()),
        LanguageId::IpStar => {
            let (a, uv) = w.split_at(w.len() % 2);
            Ok(a.iter().copied().chain([z]).chain(uv.iter().copied()).chain([z]).collect())
        }
        other => Err(Error::Unsupported(other.to_string())),
    }
}

/// Advice alphabet of the `l-keq:k` model: `0` followed by the letters.
pub fn lkeq_advice_alphabet(k: usize) -> Alphabet {
    Alphabet::new(std::iter::once('0').chain((0..k as u8).map(|i| (b'a' + i) as char))).expect("k ≤ 26")
}

fn lkeq_advice(k: usize, n: usize) -> Word {
    if n.is_multiple_of(k) {
        (0..n).map(|i| Symbol((i / (n / k) + 1) as u8)).collect()
    } else {
        vec![Symbol(0); n]
    }
}

fn leven_advice(n: usize, conv: BoundaryConvention) -> Word {
    let mut h = vec![Symbol::ZERO; n];
    if n > 0 && is_even_length(n as u64, conv) {
        h[0] = Symbol::ONE;
    }
    h
}

/// The named advice word of length `n`.
pub fn advice(id: LanguageId, n: usize) -> Result<Word> {
    match id {
        LanguageId::Lkeq(k) => Ok(lkeq_advice(k, n)),
        LanguageId::L3eq => Ok(lkeq_advice(3, n)),
        LanguageId::LEven | LanguageId::LOdd => Ok(leven_advice(n, BoundaryConvention::default())),
        other => Err(Error::Unsupported(other.to_string())),
    }
}

/// Advised DFA deciding `id` with the named advice.
pub fn advised_model(id: LanguageId) -> Result<AdvisedDfa> {
    match id {
        LanguageId::Lkeq(k) => lkeq_model(k),
        LanguageId::L3eq => lkeq_model(3),
        LanguageId::LEven => leven_model(BoundaryConvention::default(), false),
        LanguageId::LOdd => leven_model(BoundaryConvention::default(), true),
        other => Err(Error::Unsupported(other.to_string())),
    }
}

/// Accepts `[w over w]`: advice symbol `j ≥ 1` matches input letter `j-1`.
fn lkeq_model(k: usize) -> Result<AdvisedDfa> {
    let input = Alphabet::letters(k)?;
    let adv = lkeq_advice_alphabet(k);
    let width = adv.len();
    let base = Dfa::from_fn(track_alphabet(&input, &adv), 2, 0, |q| q == 0, |q, t| {
        let (a, h) = (t.index() / width, t.index() % width);
        if q == 0 && h == a + 1 {
            0
        } else {
            1
        }
    })?;
    AdvisedDfa::new(input, adv, base, Advice::procedure(format!("l-keq:{k}"), move |n| lkeq_advice(k, n)))
}

/// Accepts `λ` and every track word whose advice track starts with `1`
/// (`odd = false`), or the complement of that (`odd = true`).
pub fn leven_model(conv: BoundaryConvention, odd: bool) -> Result<AdvisedDfa> {
    let bin = Alphabet::binary();
    // 0: start, 1: advice began with 1, 2: advice began with 0
    let base = Dfa::from_fn(
        track_alphabet(&bin, &bin),
        3,
        0,
        |q| (q != 2) != odd,
        |q, t| match q {
            0 if t.index() % 2 == 1 => 1,
            0 => 2,
            q => q,
        },
    )?;
    let name = if odd { "l-odd" } else { "l-even" };
    AdvisedDfa::new(bin.clone(), bin, base, Advice::procedure(name, move |n| leven_advice(n, conv)))
}

/// Closed form for `dense(Equal_*)(n)`: `C(n, n/2)` for even `n`, twice the
/// preceding even value for odd `n`.
pub fn equal_star_density(n: u64) -> num_bigint::BigUint {
    let half = n / 2;
    let c = binomial(2 * half, half);
    if n.is_multiple_of(2) {
        c
    } else {
        c * 2u32
    }
}

/// Closed form for `dense(Pal_#)(n)`: `2^k` at `n = 2k+1`, else 0.
pub fn pal_sharp_density(n: u64) -> num_bigint::BigUint {
    if n % 2 == 1 {
        num_bigint::BigUint::from(1u32) << (n / 2) as usize
    } else {
        num_bigint::BigUint::default()
    }
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> num_bigint::BigUint {
    if k > n {
        return num_bigint::BigUint::default();
    }
    let k = k.min(n - k);
    (0..k).fold(num_bigint::BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}
