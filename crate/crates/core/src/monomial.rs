//! Monomials, monomial ideals and sign vectors.
//!
//! A sign vector α ∈ {-1, 0}^n stands at once for the face ideal generated
//! by the variables x_i with α_i = -1, for the coordinate subspace cut out
//! by that ideal, and for a multidegree. It is stored as the bitmask of its
//! support.

use std::fmt;

use thiserror::Error;

/// Hard ceiling on the number of variables (support masks are `u64`).
pub const MAX_VARS: usize = 63;

/// Default ceiling for operations that enumerate all 2^n sign vectors.
pub const DEFAULT_ENUMERATION_CAP: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("syntax error at column {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("the unit ideal is not a valid input")]
    UnitIdeal,
    #[error("the zero ideal is not a valid input")]
    ZeroIdeal,
    #[error("variable x{var} at column {pos} exceeds the number of variables ({nvars})")]
    VariableOutOfRange {
        var: usize,
        nvars: usize,
        pos: usize,
    },
    #[error("{0} variables exceeds the supported maximum")]
    TooManyVariables(usize),
    #[error("ideal is not squarefree: {0}")]
    NotSquarefree(String),
    #[error("ideal is not generated by variables: {0}")]
    NotAFaceIdeal(String),
    #[error("monomial has {found} exponents, expected {expected}")]
    ArityMismatch { expected: usize, found: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    /// Product of the variables indexed by `mask`.
    pub fn from_mask(nvars: usize, mask: u64) -> Self {
        Monomial {
            exps: (0..nvars).map(|i| ((mask >> i) & 1) as u32).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() == other.exps.len()
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Canonical generator order: by total degree, then lexicographically
/// descending exponent vector (so x1 comes before x2).
fn canonical_order(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| b.exps.cmp(&a.exps))
}

/// Drop generators divisible by another generator, dedupe, sort.
fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(canonical_order);
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

/// A proper nonzero monomial ideal, stored by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Result<Self, IdealError> {
        if nvars > MAX_VARS {
            return Err(IdealError::TooManyVariables(nvars));
        }
        for g in &gens {
            if g.nvars() != nvars {
                return Err(IdealError::ArityMismatch {
                    expected: nvars,
                    found: g.nvars(),
                });
            }
            if g.is_one() {
                return Err(IdealError::UnitIdeal);
            }
        }
        if gens.is_empty() {
            return Err(IdealError::ZeroIdeal);
        }
        Ok(MonomialIdeal {
            nvars,
            gens: minimalize(gens),
        })
    }

    /// Squarefree ideal generated by the products of variables in `masks`.
    pub fn from_masks(nvars: usize, masks: &[u64]) -> Result<Self, IdealError> {
        let gens = masks
            .iter()
            .map(|&m| Monomial::from_mask(nvars, m))
            .collect();
        MonomialIdeal::new(nvars, gens)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// Support masks of the generators.
    pub fn support_masks(&self) -> Vec<u64> {
        self.gens.iter().map(Monomial::support_mask).collect()
    }

    /// Componentwise maximum of the generators.
    pub fn lcm(&self) -> Monomial {
        self.gens
            .iter()
            .fold(Monomial::one(self.nvars), |acc, g| acc.lcm(g))
    }

    /// Squarefree ideal generated by the supports of the generators.
    pub fn radical(&self) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .map(|g| Monomial::from_mask(self.nvars, g.support_mask()))
            .collect();
        MonomialIdeal {
            nvars: self.nvars,
            gens: minimalize(gens),
        }
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Whether the face ideal with support `mask` contains this ideal, i.e.
    /// every generator involves a variable from `mask`.
    pub fn is_covered_by(&self, mask: u64) -> bool {
        self.gens.iter().all(|g| g.support_mask() & mask != 0)
    }

    /// Minimal primes, as sign vectors sorted by weight then support.
    ///
    /// Found by scanning all 2^n sign vectors; `cap` bounds n.
    pub fn minimal_primes_capped(&self, cap: usize) -> Result<Vec<SignVector>, IdealError> {
        if self.nvars > cap {
            return Err(IdealError::TooManyVariables(self.nvars));
        }
        let supports = self.support_masks();
        let covers = |mask: u64| supports.iter().all(|s| s & mask != 0);
        let mut out = Vec::new();
        for mask in 1u64..(1u64 << self.nvars) {
            if !covers(mask) {
                continue;
            }
            // covering is monotone, so minimality is a one-bit test
            let minimal = (0..self.nvars)
                .filter(|i| mask >> i & 1 == 1)
                .all(|i| !covers(mask & !(1 << i)));
            if minimal {
                out.push(SignVector::from_mask(self.nvars, mask));
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn minimal_primes(&self) -> Result<Vec<SignVector>, IdealError> {
        self.minimal_primes_capped(DEFAULT_ENUMERATION_CAP)
    }

    /// Alexander dual of a squarefree ideal, generated by the products of
    /// the variables of each minimal prime.
    pub fn alexander_dual(&self) -> Result<MonomialIdeal, IdealError> {
        if !self.is_squarefree() {
            return Err(IdealError::NotSquarefree(self.to_string()));
        }
        let masks: Vec<u64> = self
            .minimal_primes()?
            .iter()
            .map(SignVector::support_mask)
            .collect();
        MonomialIdeal::from_masks(self.nvars, &masks)
    }

    /// Apply a permutation of the variables: variable i becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut e = vec![0; self.nvars];
                for (i, &x) in g.exps.iter().enumerate() {
                    e[perm[i]] = x;
                }
                Monomial::new(e)
            })
            .collect();
        MonomialIdeal {
            nvars: self.nvars,
            gens: minimalize(gens),
        }
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Element of {-1, 0}^n, stored as the mask of its -1 entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    // field order makes the derived Ord sort by weight first
    weight: u32,
    mask: u64,
    nvars: u8,
}

impl SignVector {
    pub fn from_mask(nvars: usize, mask: u64) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        debug_assert!(nvars == 64 || mask >> nvars == 0);
        SignVector {
            weight: mask.count_ones(),
            mask,
            nvars: nvars as u8,
        }
    }

    /// From entries in {-1, 0}; any other value is rejected.
    pub fn from_signs(signs: &[i64]) -> Option<Self> {
        let mut mask = 0u64;
        for (i, &s) in signs.iter().enumerate() {
            match s {
                -1 => mask |= 1 << i,
                0 => {}
                _ => return None,
            }
        }
        (signs.len() <= MAX_VARS).then(|| SignVector::from_mask(signs.len(), mask))
    }

    /// All 2^n sign vectors, sorted.
    pub fn all(nvars: usize) -> Vec<SignVector> {
        let mut v: Vec<SignVector> = (0..1u64 << nvars)
            .map(|m| SignVector::from_mask(nvars, m))
            .collect();
        v.sort();
        v
    }

    /// Clamp a multidegree to its pattern: -1 where negative, 0 elsewhere.
    pub fn pattern_of(degree: &[i64]) -> Self {
        let mask = degree
            .iter()
            .enumerate()
            .filter(|(_, &d)| d < 0)
            .fold(0, |m, (i, _)| m | (1 << i));
        SignVector::from_mask(degree.len(), mask)
    }

    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    pub fn support_mask(&self) -> u64 {
        self.mask
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|i| self.mask >> i & 1 == 1)
            .collect()
    }

    pub fn weight(&self) -> usize {
        self.weight as usize
    }

    pub fn is_negative_at(&self, i: usize) -> bool {
        self.mask >> i & 1 == 1
    }

    pub fn signs(&self) -> Vec<i64> {
        (0..self.nvars())
            .map(|i| if self.is_negative_at(i) { -1 } else { 0 })
            .collect()
    }

    /// The sign vector as a multidegree in Z^n.
    pub fn degree(&self) -> Vec<i64> {
        self.signs()
    }

    /// α + ε_i; only meaningful when α_i = -1.
    pub fn raise(&self, i: usize) -> SignVector {
        SignVector::from_mask(self.nvars(), self.mask & !(1 << i))
    }

    /// Face ideal generated by the variables in the support.
    pub fn face_ideal(&self) -> Result<MonomialIdeal, IdealError> {
        if self.mask == 0 {
            return Err(IdealError::ZeroIdeal);
        }
        let gens = self
            .support()
            .into_iter()
            .map(|i| Monomial::from_mask(self.nvars(), 1 << i))
            .collect();
        MonomialIdeal::new(self.nvars(), gens)
    }

    /// Inverse of [`SignVector::face_ideal`].
    pub fn of_face_ideal(ideal: &MonomialIdeal) -> Result<SignVector, IdealError> {
        let mut mask = 0;
        for g in ideal.generators() {
            if g.degree() != 1 {
                return Err(IdealError::NotAFaceIdeal(ideal.to_string()));
            }
            mask |= g.support_mask();
        }
        Ok(SignVector::from_mask(ideal.nvars(), mask))
    }

    /// "V(x1,x3)"-style name of the coordinate subspace.
    pub fn subspace_label(&self) -> String {
        let vars: Vec<String> = self
            .support()
            .iter()
            .map(|i| format!("x{}", i + 1))
            .collect();
        format!("V({})", vars.join(","))
    }

    pub fn permuted(&self, perm: &[usize]) -> SignVector {
        let mask = self
            .support()
            .into_iter()
            .fold(0, |m, i| m | (1 << perm[i]));
        SignVector::from_mask(self.nvars(), mask)
    }
}

impl fmt::Display for SignVector {
    /// Comma-separated entries, e.g. `-1,0,-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.signs().iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parse a comma-separated list of monomials such as `x1*x2^3, x3`.
///
/// With `nvars` absent, the number of variables is the highest index used.
/// Redundant generators are dropped.
pub fn parse_ideal(text: &str, nvars: Option<usize>) -> Result<MonomialIdeal, IdealError> {
    let parsed = Parser::new(text).ideal()?;
    let highest = parsed
        .iter()
        .flat_map(|m| m.iter().map(|(v, _, _)| *v))
        .max()
        .unwrap_or(0);
    let n = nvars.unwrap_or(highest);
    if n > MAX_VARS {
        return Err(IdealError::TooManyVariables(n));
    }
    let mut gens = Vec::with_capacity(parsed.len());
    for factors in parsed {
        let mut exps = vec![0u32; n];
        for (var, exp, pos) in factors {
            if var > n {
                return Err(IdealError::VariableOutOfRange { var, nvars: n, pos });
            }
            exps[var - 1] += exp;
        }
        gens.push(Monomial::new(exps));
    }
    MonomialIdeal::new(n, gens)
}

/// (variable index, exponent, column) triples of one monomial
type Factors = Vec<(usize, u32, usize)>;

struct Parser {
    chars: Vec<(usize, char)>,
    at: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser {
            chars: src
                .chars()
                .enumerate()
                .filter(|(_, c)| !c.is_whitespace())
                .map(|(i, c)| (i + 1, c))
                .collect(),
            at: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars
            .get(self.at)
            .map(|&(p, _)| p)
            .unwrap_or_else(|| self.chars.last().map_or(1, |&(p, _)| p + 1))
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, IdealError> {
        Err(IdealError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn number(&mut self) -> Result<u64, IdealError> {
        let start = self.at;
        let mut value: u64 = 0;
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(c as u64 - '0' as u64))
                .ok_or(IdealError::Syntax {
                    pos: self.pos(),
                    msg: "number too large".into(),
                })?;
            self.at += 1;
        }
        if self.at == start {
            return self.err("expected a number");
        }
        Ok(value)
    }

    fn ideal(mut self) -> Result<Vec<Factors>, IdealError> {
        if self.chars.is_empty() {
            return Err(IdealError::ZeroIdeal);
        }
        let mut out = Vec::new();
        loop {
            match self.monomial()? {
                Some(m) => out.push(m),
                None => return Err(IdealError::UnitIdeal),
            }
            match self.peek() {
                None => break,
                Some(',') => self.at += 1,
                Some(c) => return self.err(format!("unexpected '{c}'")),
            }
        }
        Ok(out)
    }

    /// `None` for the constant monomial `1`; the constant `0` is the zero
    /// ideal when it stands alone and a syntax error otherwise.
    fn monomial(&mut self) -> Result<Option<Factors>, IdealError> {
        match self.peek() {
            Some('1') | Some('0') => {
                let pos = self.pos();
                let c = self.number()?;
                if c == 0 {
                    return if self.chars.len() == 1 {
                        Err(IdealError::ZeroIdeal)
                    } else {
                        Err(IdealError::Syntax {
                            pos,
                            msg: "0 is not a monomial".into(),
                        })
                    };
                }
                if c != 1 {
                    return Err(IdealError::Syntax {
                        pos,
                        msg: "coefficients are not allowed".into(),
                    });
                }
                return Ok(None);
            }
            _ => {}
        }
        let mut factors = Vec::new();
        loop {
            let pos = self.pos();
            match self.peek() {
                Some('x') | Some('X') => self.at += 1,
                Some(c) => return self.err(format!("expected a variable, found '{c}'")),
                None => return self.err("expected a variable"),
            }
            let var = self.number()? as usize;
            if var == 0 {
                return Err(IdealError::Syntax {
                    pos,
                    msg: "variables are numbered from x1".into(),
                });
            }
            let mut exp = 1u32;
            if self.peek() == Some('^') {
                self.at += 1;
                let e = self.number()?;
                exp = u32::try_from(e).map_err(|_| IdealError::Syntax {
                    pos,
                    msg: "exponent too large".into(),
                })?;
            }
            factors.push((var, exp, pos));
            if self.peek() == Some('*') {
                self.at += 1;
            } else {
                break;
            }
        }
        Ok(Some(factors))
    }
}
