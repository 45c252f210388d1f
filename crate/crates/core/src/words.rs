//! i-Fibonacci words.
//!
//! `f_1 = "0"`, `f_2 = "0^{i-1}1"`, `f_n = f_{n-1} f_{n-2}`.  Symbols are
//! packed one per bit, least significant bit first, so the curves at order
//! 35 (tens of millions of symbols) stay in a few megabytes.

use crate::error::{domain, Error, Result};
use bitvec::prelude::*;
use std::ops::Range;

/// Packed symbol storage; bit `k` is symbol `k` (0-based).
pub type Symbols = BitVec<u8, Lsb0>;
/// Borrowed view of a symbol sequence.
pub type SymbolSlice = BitSlice<u8, Lsb0>;

/// Largest word that [`word_concat`] will materialize (2^36 symbols, 8 GiB).
pub const MAX_SYMBOLS: u64 = 1 << 36;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    i: u64,
    n: u64,
    symbols: Symbols,
}

impl Word {
    pub fn i(&self) -> u64 {
        self.i
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &SymbolSlice {
        &self.symbols
    }

    pub fn into_symbols(self) -> Symbols {
        self.symbols
    }

    /// The word as ASCII `'0'`/`'1'` characters.
    pub fn to_text(&self) -> String {
        symbols_to_string(&self.symbols)
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn check_family(i: u64, n: u64) -> Result<()> {
    if i < 2 {
        return Err(domain(format!("family index i = {i} must be at least 2")));
    }
    if n < 1 {
        return Err(domain("word order n must be at least 1"));
    }
    Ok(())
}

/// Length of `f_n^[i]`.
pub fn fib_length(i: u64, n: u64) -> Result<u64> {
    check_family(i, n)?;
    let (mut prev, mut cur) = (1u64, i);
    match n {
        1 => return Ok(1),
        2 => return Ok(i),
        _ => {}
    }
    for _ in 3..=n {
        let next = cur.checked_add(prev).ok_or(Error::Overflow { i, n })?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

fn check_capacity(i: u64, n: u64) -> Result<()> {
    let len = fib_length(i, n)?;
    if len > MAX_SYMBOLS {
        return Err(Error::Capacity {
            i,
            n,
            len,
            cap: MAX_SYMBOLS,
        });
    }
    Ok(())
}

fn first_two(i: u64) -> (Symbols, Symbols) {
    let f1: Symbols = bitvec![u8, Lsb0; 0];
    let mut f2: Symbols = BitVec::repeat(false, (i - 1) as usize);
    f2.push(true);
    (f1, f2)
}

/// Builds `f_n^[i]` bottom-up by the concatenation rule.
pub fn word_concat(i: u64, n: u64) -> Result<Word> {
    check_capacity(i, n)?;
    let (f1, f2) = first_two(i);
    let symbols = match n {
        1 => f1,
        2 => f2,
        _ => {
            let (mut older, mut newer) = (f1, f2);
            for _ in 3..=n {
                let mut next = Symbols::with_capacity(newer.len() + older.len());
                next.extend_from_bitslice(&newer);
                next.extend_from_bitslice(&older);
                older = std::mem::replace(&mut newer, next);
            }
            newer
        }
    };
    Ok(Word { i, n, symbols })
}

/// The two rewrite blocks of the substitution: `B0 = "0"`, `B1 = "0^{i-1}1"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Block {
    B0,
    B1,
}

/// A word written as a sequence of substitution blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSeq {
    pub i: u64,
    pub blocks: Vec<Block>,
}

impl BlockSeq {
    /// The block form of `f_1`, the single block `B0`.
    pub fn seed(i: u64) -> Result<Self> {
        check_family(i, 1)?;
        Ok(BlockSeq {
            i,
            blocks: vec![Block::B0],
        })
    }

    /// Number of symbols after flattening.
    pub fn symbol_len(&self) -> u64 {
        self.blocks
            .iter()
            .map(|b| match b {
                Block::B0 => 1,
                Block::B1 => self.i,
            })
            .sum()
    }

    pub fn flatten(&self) -> Symbols {
        let mut out = Symbols::with_capacity(self.symbol_len() as usize);
        for b in &self.blocks {
            match b {
                Block::B0 => out.push(false),
                Block::B1 => {
                    out.extend(std::iter::repeat(false).take((self.i - 1) as usize));
                    out.push(true);
                }
            }
        }
        out
    }
}

/// One application of the substitution: `B0 -> B1`, `B1 -> B1 B0`.
pub fn substitute(b: &BlockSeq) -> BlockSeq {
    let ones = b.blocks.iter().filter(|&&x| x == Block::B1).count();
    let mut blocks = Vec::with_capacity(b.blocks.len() + ones);
    for blk in &b.blocks {
        match blk {
            Block::B0 => blocks.push(Block::B1),
            Block::B1 => blocks.extend([Block::B1, Block::B0]),
        }
    }
    BlockSeq { i: b.i, blocks }
}

/// Builds `f_n^[i]` by applying the substitution `n - 1` times to `f_1`.
pub fn word_by_substitution(i: u64, n: u64) -> Result<Word> {
    check_capacity(i, n)?;
    let mut seq = BlockSeq::seed(i)?;
    for _ in 1..n {
        seq = substitute(&seq);
    }
    Ok(Word {
        i,
        n,
        symbols: seq.flatten(),
    })
}

/// `2^{-L}` where `L` is the length of the longest common prefix.
///
/// Identical sequences are at distance 0, the metric convention for equal
/// finite words.
pub fn two_adic_distance(w: &SymbolSlice, v: &SymbolSlice) -> f64 {
    if w == v {
        return 0.0;
    }
    let common = w.iter().zip(v.iter()).take_while(|(a, b)| a == b).count();
    2f64.powi(-(common.min(i32::MAX as usize) as i32))
}

/// What a five-partite part is a copy of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartKind {
    /// `f_m`.
    F(u64),
    /// `l_m`: `f_m` with its last two symbols swapped.
    L(u64),
}

impl PartKind {
    pub fn order(self) -> u64 {
        match self {
            PartKind::F(m) | PartKind::L(m) => m,
        }
    }

    pub fn is_swapped(self) -> bool {
        matches!(self, PartKind::L(_))
    }
}

/// `f_n = f_{n-3} f_{n-3} f_{n-6} l_{n-3} l_{n-3}` as index ranges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FivePartite {
    pub i: u64,
    pub n: u64,
    pub parts: [Range<usize>; 5],
    pub kinds: [PartKind; 5],
}

impl FivePartite {
    /// Kinds of the five parts of an order-`n` word.
    pub fn kinds_for(n: u64) -> [PartKind; 5] {
        [
            PartKind::F(n - 3),
            PartKind::F(n - 3),
            PartKind::F(n - 6),
            PartKind::L(n - 3),
            PartKind::L(n - 3),
        ]
    }

    /// Layout of the five parts without touching any symbols.
    pub fn layout(i: u64, n: u64) -> Result<Self> {
        check_family(i, n)?;
        if n < 7 {
            return Err(domain(format!("five-partite split needs n >= 7, got {n}")));
        }
        let big = fib_length(i, n - 3)? as usize;
        let small = fib_length(i, n - 6)? as usize;
        let lens = [big, big, small, big, big];
        let mut start = 0;
        let parts = lens.map(|len| {
            let r = start..start + len;
            start += len;
            r
        });
        Ok(FivePartite {
            i,
            n,
            parts,
            kinds: Self::kinds_for(n),
        })
    }
}

/// `f_m` with its last two symbols swapped.
pub fn swap_last_two(w: &SymbolSlice) -> Symbols {
    let mut out = w.to_bitvec();
    let len = out.len();
    if len >= 2 {
        out.swap(len - 2, len - 1);
    }
    out
}

/// Splits `f_n^[i]` into its five parts and checks every part against an
/// independently built word.
pub fn five_partite(i: u64, n: u64) -> Result<FivePartite> {
    let fp = FivePartite::layout(i, n)?;
    let whole = word_concat(i, n)?;
    let big = word_concat(i, n - 3)?;
    let small = word_concat(i, n - 6)?;
    let big_l = swap_last_two(big.symbols());
    if fp.parts[4].end != whole.len() {
        return Err(Error::Structure(format!(
            "five parts of f_{n}^[{i}] cover {} symbols, word has {}",
            fp.parts[4].end,
            whole.len()
        )));
    }
    for (k, (range, kind)) in fp.parts.iter().zip(fp.kinds).enumerate() {
        let expected: &SymbolSlice = match kind {
            PartKind::F(m) if m == n - 3 => big.symbols(),
            PartKind::F(_) => small.symbols(),
            PartKind::L(_) => &big_l,
        };
        if whole.symbols()[range.clone()] != *expected {
            return Err(Error::Structure(format!(
                "part {} of f_{n}^[{i}] differs from {:?}",
                k + 1,
                kind
            )));
        }
    }
    Ok(fp)
}

/// A word split as `p · ab` with `p` a palindrome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PalindromeSplit<'a> {
    pub p: &'a SymbolSlice,
    /// The last two symbols, `[a, b]`, each 0 or 1.
    pub ab: [u8; 2],
}

impl PalindromeSplit<'_> {
    pub fn ab_text(&self) -> String {
        format!("{}{}", self.ab[0], self.ab[1])
    }
}

pub fn is_palindrome(s: &SymbolSlice) -> bool {
    let n = s.len();
    (0..n / 2).all(|k| s[k] == s[n - 1 - k])
}

/// Splits `w` into its first `|w| - 2` symbols and its last two, checking
/// that the prefix is a palindrome and the tail is `01` or `10`.
pub fn palindrome_decomposition(w: &SymbolSlice) -> Result<PalindromeSplit<'_>> {
    let n = w.len();
    if n < 2 {
        return Err(domain("palindrome split needs at least two symbols"));
    }
    let p = &w[..n - 2];
    let ab = [w[n - 2] as u8, w[n - 1] as u8];
    if ab[0] == ab[1] {
        return Err(Error::Structure(format!(
            "tail {}{} is not 01 or 10",
            ab[0], ab[1]
        )));
    }
    if !is_palindrome(p) {
        return Err(Error::Structure("prefix is not a palindrome".into()));
    }
    Ok(PalindromeSplit { p, ab })
}

/// Tail pair observed for even and for odd orders of one family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AbParity {
    pub i: u64,
    /// Tail seen at every even order checked, or `None` if it varied.
    pub even: Option<[u8; 2]>,
    /// Tail seen at every odd order `>= 3` checked, or `None` if it varied.
    pub odd: Option<[u8; 2]>,
}

/// Records which tail pair each parity of `n` produces for `2 <= n <= n_max`.
pub fn observed_ab_parity(i: u64, n_max: u64) -> Result<AbParity> {
    let mut even: Option<Option<[u8; 2]>> = None;
    let mut odd: Option<Option<[u8; 2]>> = None;
    for n in 2..=n_max {
        let w = word_concat(i, n)?;
        let ab = palindrome_decomposition(w.symbols())?.ab;
        let slot = if n % 2 == 0 { &mut even } else { &mut odd };
        *slot = match *slot {
            None => Some(Some(ab)),
            Some(Some(prev)) if prev == ab => Some(Some(ab)),
            Some(_) => Some(None),
        };
    }
    Ok(AbParity {
        i,
        even: even.flatten(),
        odd: odd.flatten(),
    })
}

/// True iff `11` occurs as a factor.
pub fn contains_11(w: &SymbolSlice) -> bool {
    w.windows(2).any(|p| p[0] && p[1])
}

pub fn symbols_to_string(s: &SymbolSlice) -> String {
    s.iter().map(|b| if *b { '1' } else { '0' }).collect()
}

/// Parses a `'0'`/`'1'` string; surrounding whitespace is ignored.
pub fn parse_symbols(text: &str) -> Result<Symbols> {
    text.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(domain(format!("unexpected character {other:?} in word"))),
        })
        .collect()
}

/// Text serialization: the symbols followed by a newline.
pub fn encode_text(s: &SymbolSlice) -> String {
    let mut out = symbols_to_string(s);
    out.push('\n');
    out
}

/// Binary serialization: 8-byte little-endian length, then the symbols
/// packed eight per byte, least significant bit first, unused bits zero.
pub fn encode_binary(s: &SymbolSlice) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 + s.len().div_ceil(8));
    out.extend_from_slice(&(s.len() as u64).to_le_bytes());
    for chunk in s.chunks(8) {
        let byte = chunk
            .iter()
            .enumerate()
            .fold(0u8, |acc, (k, b)| acc | ((*b as u8) << k));
        out.push(byte);
    }
    out
}

pub fn decode_binary(bytes: &[u8]) -> Result<Symbols> {
    if bytes.len() < 8 {
        return Err(domain("binary word is shorter than its 8-byte header"));
    }
    let (head, body) = bytes.split_at(8);
    let len = u64::from_le_bytes(head.try_into().expect("header is 8 bytes"));
    let needed = len.div_ceil(8);
    if body.len() as u64 != needed {
        return Err(domain(format!(
            "binary word declares {len} symbols but carries {} bytes",
            body.len()
        )));
    }
    let mut out = Symbols::from_slice(body);
    out.truncate(len as usize);
    Ok(out)
}
