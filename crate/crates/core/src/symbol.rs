//! Tensor symbols, derivative letters and factors.

use std::fmt;

/// A covariant-derivative direction in the frame `{Z_1, Z_1̄, T}`.
///
/// The derived `Ord` is the canonical derivative order `1 < 1̄ < 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DerivIndex {
    One,
    Bar,
    Zero,
}

impl DerivIndex {
    pub fn conj(self) -> Self {
        match self {
            DerivIndex::One => DerivIndex::Bar,
            DerivIndex::Bar => DerivIndex::One,
            DerivIndex::Zero => DerivIndex::Zero,
        }
    }

    /// Contribution to the holomorphic count `#1 - #1̄`.
    pub fn alpha(self) -> i64 {
        match self {
            DerivIndex::One => 1,
            DerivIndex::Bar => -1,
            DerivIndex::Zero => 0,
        }
    }

    pub fn weight(self) -> i64 {
        match self {
            DerivIndex::Zero => 2,
            _ => 1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            DerivIndex::One => '1',
            DerivIndex::Bar => 'b',
            DerivIndex::Zero => '0',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            '1' => Some(DerivIndex::One),
            'b' => Some(DerivIndex::Bar),
            '0' => Some(DerivIndex::Zero),
            _ => None,
        }
    }
}

/// Writes a derivative word such as `1b0`.
pub fn word_string(word: &[DerivIndex]) -> String {
    word.iter().map(|d| d.letter()).collect()
}

/// Parses a derivative word over the alphabet `1 b 0`.
pub fn parse_word(s: &str) -> Option<Vec<DerivIndex>> {
    s.chars().map(DerivIndex::from_letter).collect()
}

/// `#1 - #1̄` over a derivative word.
pub fn word_alpha(word: &[DerivIndex]) -> i64 {
    word.iter().map(|d| d.alpha()).sum()
}

/// The symbol table. Declaration order is the fixed symbol order used for
/// sorting factors and choosing integration-by-parts pivots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// Tanaka-Webster scalar curvature (real).
    R,
    /// Torsion `A_11`.
    A11,
    /// `A_1̄1̄`, the conjugate of `A_11`.
    Ab1b1,
    /// Cartan tensor coefficient `Q_11`.
    Q11,
    Qb1b1,
    /// Real test function.
    F,
    /// Complex test function and its conjugate (used for adjoints).
    G,
    Gb,
    /// Deformation tensor coefficient `E_11` and its conjugate.
    E11,
    Eb1b1,
}

pub const ALL_SYMBOLS: [Symbol; 10] = [
    Symbol::R,
    Symbol::A11,
    Symbol::Ab1b1,
    Symbol::Q11,
    Symbol::Qb1b1,
    Symbol::F,
    Symbol::G,
    Symbol::Gb,
    Symbol::E11,
    Symbol::Eb1b1,
];

impl Symbol {
    pub fn name(self) -> &'static str {
        match self {
            Symbol::R => "R",
            Symbol::A11 => "A11",
            Symbol::Ab1b1 => "Ab1b1",
            Symbol::Q11 => "Q11",
            Symbol::Qb1b1 => "Qb1b1",
            Symbol::F => "f",
            Symbol::G => "g",
            Symbol::Gb => "gb",
            Symbol::E11 => "E11",
            Symbol::Eb1b1 => "Eb1b1",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        ALL_SYMBOLS.iter().copied().find(|s| s.name() == name)
    }

    pub fn conj(self) -> Self {
        match self {
            Symbol::A11 => Symbol::Ab1b1,
            Symbol::Ab1b1 => Symbol::A11,
            Symbol::Q11 => Symbol::Qb1b1,
            Symbol::Qb1b1 => Symbol::Q11,
            Symbol::G => Symbol::Gb,
            Symbol::Gb => Symbol::G,
            Symbol::E11 => Symbol::Eb1b1,
            Symbol::Eb1b1 => Symbol::E11,
            s => s,
        }
    }

    pub fn is_real(self) -> bool {
        self.conj() == self
    }

    /// `#1 - #1̄` over the base indices.
    pub fn base_alpha(self) -> i64 {
        match self {
            Symbol::A11 | Symbol::Q11 | Symbol::E11 => 2,
            Symbol::Ab1b1 | Symbol::Qb1b1 | Symbol::Eb1b1 => -2,
            _ => 0,
        }
    }

    pub fn base_weight(self) -> i64 {
        match self {
            Symbol::R | Symbol::A11 | Symbol::Ab1b1 => 2,
            Symbol::Q11 | Symbol::Qb1b1 => 4,
            _ => 0,
        }
    }

    /// Unknown fields (test functions, deformation tensors) as opposed to
    /// curvature/torsion coefficients. Quadratic forms are taken in these.
    pub fn is_free(self) -> bool {
        matches!(
            self,
            Symbol::F | Symbol::G | Symbol::Gb | Symbol::E11 | Symbol::Eb1b1
        )
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A tensor symbol with an ordered string of covariant derivatives.
///
/// `tag` distinguishes independent copies of the same free field; it is `0`
/// for ordinary input and only set by polarization and adjoint computations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub symbol: Symbol,
    pub tag: u8,
    pub derivs: Vec<DerivIndex>,
}

impl Factor {
    pub fn new(symbol: Symbol, derivs: Vec<DerivIndex>) -> Self {
        Factor {
            symbol,
            tag: 0,
            derivs,
        }
    }

    pub fn bare(symbol: Symbol) -> Self {
        Factor::new(symbol, Vec::new())
    }

    pub fn with_tag(mut self, tag: u8) -> Self {
        self.tag = tag;
        self
    }

    pub fn conj(&self) -> Self {
        Factor {
            symbol: self.symbol.conj(),
            tag: self.tag,
            derivs: self.derivs.iter().map(|d| d.conj()).collect(),
        }
    }

    pub fn alpha(&self) -> i64 {
        self.symbol.base_alpha() + word_alpha(&self.derivs)
    }

    pub fn weight(&self) -> i64 {
        self.symbol.base_weight() + self.derivs.iter().map(|d| d.weight()).sum::<i64>()
    }

    pub fn derived(&self, idx: DerivIndex) -> Self {
        let mut out = self.clone();
        out.derivs.push(idx);
        out
    }

    /// Whether the derivative string is sorted in canonical order.
    pub fn is_canonical(&self) -> bool {
        self.derivs.windows(2).all(|w| w[0] <= w[1])
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol)?;
        if self.tag != 0 {
            write!(f, "#{}", self.tag)?;
        }
        if !self.derivs.is_empty() {
            write!(f, "_{{{}}}", word_string(&self.derivs))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_letter_order() {
        assert!(DerivIndex::One < DerivIndex::Bar);
        assert!(DerivIndex::Bar < DerivIndex::Zero);
    }

    #[test]
    fn conj_flips_indices_and_symbol() {
        let a = Factor::new(Symbol::A11, parse_word("1b0").unwrap());
        let c = a.conj();
        assert_eq!(c.to_string(), "Ab1b1_{b10}");
        assert_eq!(c.conj(), a);
        assert_eq!(a.alpha(), 2);
        assert_eq!(c.alpha(), -2);
    }

    #[test]
    fn real_symbols_are_self_conjugate() {
        assert_eq!(Factor::bare(Symbol::F).conj(), Factor::bare(Symbol::F));
        assert_eq!(Factor::bare(Symbol::R).conj(), Factor::bare(Symbol::R));
    }

    #[test]
    fn factor_weights() {
        let f = Factor::new(Symbol::F, parse_word("11bb").unwrap());
        assert_eq!(f.weight(), 4);
        let f00 = Factor::new(Symbol::F, parse_word("00").unwrap());
        assert_eq!(f00.weight(), 4);
    }
}
