//! Coordinate symbols and charts.
//!
//! A base chart of paracomplex dimension `m` carries `z1..zm, zb1..zbm`.
//! Its tangent chart adds the fiber coordinates `u1..um, ub1..ubm`
//! (`u` stands for the accented fiber coordinate, `ub` for its conjugate).
//!
//! Coordinates are addressed by a unified 0-based index `A`:
//! `z` occupies `0..m`, `zb` occupies `m..2m`, `u` occupies `2m..3m` and
//! `ub` occupies `3m..4m`. Text formats use the same order, 1-based.

use std::fmt;

use serde::Serialize;

/// Declaration order is the fixed symbol order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SymbolKind {
    Base,
    ConjugateBase,
    Fiber,
    ConjugateFiber,
}

impl SymbolKind {
    pub fn prefix(self) -> &'static str {
        match self {
            SymbolKind::Base => "z",
            SymbolKind::ConjugateBase => "zb",
            SymbolKind::Fiber => "u",
            SymbolKind::ConjugateFiber => "ub",
        }
    }

    pub fn is_fiber(self) -> bool {
        matches!(self, SymbolKind::Fiber | SymbolKind::ConjugateFiber)
    }
}

/// A coordinate symbol; `index` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub kind: SymbolKind,
    pub index: u32,
}

impl Symbol {
    pub const fn new(kind: SymbolKind, index: u32) -> Self {
        Self { kind, index }
    }

    pub const fn z(index: u32) -> Self {
        Self::new(SymbolKind::Base, index)
    }

    pub const fn zb(index: u32) -> Self {
        Self::new(SymbolKind::ConjugateBase, index)
    }

    pub const fn u(index: u32) -> Self {
        Self::new(SymbolKind::Fiber, index)
    }

    pub const fn ub(index: u32) -> Self {
        Self::new(SymbolKind::ConjugateFiber, index)
    }

    /// The fiber coordinate paired with a base coordinate.
    pub fn fiber(self) -> Option<Symbol> {
        match self.kind {
            SymbolKind::Base => Some(Symbol::u(self.index)),
            SymbolKind::ConjugateBase => Some(Symbol::ub(self.index)),
            _ => None,
        }
    }

    /// Rank used to order factors and monomials when printing. Fiber
    /// coordinates lead so that a complete lift reads `u1*zb1`, matching
    /// the `u^a (df/dz^a)` shape of its defining sum.
    pub(crate) fn print_rank(self) -> (u8, u32) {
        let k = match self.kind {
            SymbolKind::Fiber => 0,
            SymbolKind::ConjugateFiber => 1,
            SymbolKind::Base => 2,
            SymbolKind::ConjugateBase => 3,
        };
        (k, self.index)
    }

    /// Parses `z3`, `zb1`, `u2`, `ub4`.
    pub fn from_name(name: &str) -> Option<Symbol> {
        let split = name.find(|c: char| c.is_ascii_digit())?;
        let (prefix, digits) = name.split_at(split);
        let kind = match prefix {
            "z" => SymbolKind::Base,
            "zb" => SymbolKind::ConjugateBase,
            "u" => SymbolKind::Fiber,
            "ub" => SymbolKind::ConjugateFiber,
            _ => return None,
        };
        if digits.starts_with('0') {
            return None;
        }
        let index: u32 = digits.parse().ok()?;
        Some(Symbol::new(kind, index))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.prefix(), self.index)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Chart {
    m: usize,
    tangent: bool,
}

impl Chart {
    /// Base chart of paracomplex dimension `m`. Panics when `m == 0`.
    pub fn base(m: usize) -> Self {
        assert!(m >= 1, "paracomplex dimension must be positive");
        Self { m, tangent: false }
    }

    /// The induced chart on the tangent bundle of a base chart.
    pub fn tangent_of(base: Chart) -> Self {
        Self {
            m: base.m,
            tangent: true,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_tangent(&self) -> bool {
        self.tangent
    }

    /// The underlying base chart (itself when already a base chart).
    pub fn base_chart(&self) -> Chart {
        Chart::base(self.m)
    }

    /// Number of real-dimensional coordinate slots: `2m` or `4m`.
    pub fn dim(&self) -> usize {
        if self.tangent {
            4 * self.m
        } else {
            2 * self.m
        }
    }

    pub fn symbol(&self, a: usize) -> Symbol {
        assert!(a < self.dim(), "coordinate index {a} out of range for {self}");
        let m = self.m;
        let i = (a % m) as u32 + 1;
        match a / m {
            0 => Symbol::z(i),
            1 => Symbol::zb(i),
            2 => Symbol::u(i),
            _ => Symbol::ub(i),
        }
    }

    pub fn index_of(&self, s: Symbol) -> Option<usize> {
        let i = s.index as usize;
        if i == 0 || i > self.m {
            return None;
        }
        let block = match s.kind {
            SymbolKind::Base => 0,
            SymbolKind::ConjugateBase => 1,
            SymbolKind::Fiber if self.tangent => 2,
            SymbolKind::ConjugateFiber if self.tangent => 3,
            _ => return None,
        };
        Some(block * self.m + i - 1)
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.index_of(s).is_some()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.dim()).map(move |a| self.symbol(a))
    }

    /// On a tangent chart, the fiber slot paired with base slot `a`.
    pub fn fiber_index(&self, a: usize) -> usize {
        debug_assert!(a < 2 * self.m);
        a + 2 * self.m
    }

    /// `true` for `z`-type slots (`z` and `u`), `false` for conjugates.
    pub fn is_holomorphic_slot(&self, a: usize) -> bool {
        matches!(
            self.symbol(a).kind,
            SymbolKind::Base | SymbolKind::Fiber
        )
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tangent {
            write!(f, "TM(m={})", self.m)
        } else {
            write!(f, "M(m={})", self.m)
        }
    }
}
