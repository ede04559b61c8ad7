//! Seeded generators of random polynomial fields, connections and
//! involutions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chart::Chart;
use crate::connection::{Connection, Table3};
use crate::expr::{Expr, Monomial};
use crate::field::{EndoField, OneForm, ScalarField, VectorField};
use crate::geometry::para_structure;
use crate::split::SplitComplex;

/// How a verification case populates its inputs. Cases 0, 1 and 2 of every
/// suite are the degenerate shapes, in this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Zero,
    Constant,
    Frame,
    Random,
}

impl Shape {
    pub const DEGENERATE: usize = 3;

    pub fn for_case(k: usize) -> Shape {
        match k {
            0 => Shape::Zero,
            1 => Shape::Constant,
            2 => Shape::Frame,
            _ => Shape::Random,
        }
    }
}

/// 64-bit mixer used to derive independent per-case seeds.
pub fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

pub fn case_seed(seed: u64, suite: &str, case: usize) -> u64 {
    // FNV-1a over the suite name
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in suite.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    mix(mix(seed ^ h) ^ case as u64)
}

pub struct Generator {
    rng: ChaCha8Rng,
    pub max_degree: u32,
    pub max_terms: usize,
}

impl Generator {
    pub fn new(seed: u64, max_degree: u32, max_terms: usize) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_degree,
            max_terms: max_terms.max(1),
        }
    }

    /// `a + b j` with `a, b` uniform in `-3..=3`, not both zero.
    pub fn coefficient(&mut self) -> SplitComplex {
        loop {
            let a = self.rng.gen_range(-3..=3);
            let b = self.rng.gen_range(-3..=3);
            if a != 0 || b != 0 {
                return SplitComplex::from_ints(a, b);
            }
        }
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    /// A polynomial over the base symbols of `chart` with at most
    /// `max_terms` monomials of total degree at most `max_degree`.
    pub fn poly(&mut self, chart: &Chart) -> Expr {
        self.poly_bounded(chart, self.max_degree, self.max_terms)
    }

    fn poly_bounded(&mut self, chart: &Chart, max_degree: u32, max_terms: usize) -> Expr {
        let base = chart.base_chart();
        let n = base.dim();
        let terms = self.rng.gen_range(1..=max_terms);
        let mut out = Expr::zero();
        for _ in 0..terms {
            let degree = self.rng.gen_range(0..=max_degree);
            let factors: Vec<_> = (0..degree)
                .map(|_| (base.symbol(self.rng.gen_range(0..n)), 1))
                .collect();
            let c = self.coefficient();
            out = out + Expr::term(c, Monomial::from_factors(factors));
        }
        out
    }

    pub fn constant(&mut self) -> Expr {
        Expr::constant(self.coefficient())
    }

    fn entry(&mut self, chart: &Chart, shape: Shape) -> Expr {
        match shape {
            Shape::Zero => Expr::zero(),
            Shape::Constant => self.constant(),
            Shape::Frame | Shape::Random => self.poly(chart),
        }
    }

    pub fn scalar(&mut self, chart: &Chart, shape: Shape) -> ScalarField {
        let value = match shape {
            Shape::Frame => Expr::symbol(chart.symbol(self.index(chart.dim()))),
            other => self.entry(chart, other),
        };
        ScalarField::raw(*chart, value)
    }

    pub fn vector(&mut self, chart: &Chart, shape: Shape) -> VectorField {
        match shape {
            Shape::Frame => VectorField::frame(*chart, self.index(chart.dim())),
            other => VectorField::raw(*chart, (0..chart.dim()).map(|_| self.entry(chart, other)).collect()),
        }
    }

    pub fn oneform(&mut self, chart: &Chart, shape: Shape) -> OneForm {
        match shape {
            Shape::Frame => OneForm::coordinate(*chart, self.index(chart.dim())),
            other => OneForm::raw(*chart, (0..chart.dim()).map(|_| self.entry(chart, other)).collect()),
        }
    }

    /// For [`Shape::Frame`] a single-entry table `E^b_a`.
    pub fn endo(&mut self, chart: &Chart, shape: Shape) -> EndoField {
        match shape {
            Shape::Frame => {
                let (b, a) = (self.index(chart.dim()), self.index(chart.dim()));
                EndoField::from_fn(*chart, |r, c| if (r, c) == (b, a) { Expr::one() } else { Expr::zero() })
            }
            other => EndoField::from_fn(*chart, |_, _| self.entry(chart, other)),
        }
    }

    /// A connection with `Γ^C_{AB} = Γ^C_{BA}`.
    pub fn torsion_free_connection(&mut self, chart: &Chart, shape: Shape) -> Connection {
        let n = chart.dim();
        let mut t = Table3::zero(*chart);
        for c in 0..n {
            for a in 0..n {
                for b in a..n {
                    let e = self.entry(chart, shape);
                    t.set(c, a, b, e.clone()).expect("generated over chart");
                    t.set(c, b, a, e).expect("generated over chart");
                }
            }
        }
        Connection::new(t)
    }

    /// A non-constant involution `S J S^{-1}` with `J` the paracomplex
    /// structure of the base chart and `S = I + N`, `N` strictly upper
    /// triangular with sparse linear entries.
    pub fn involution(&mut self, chart: &Chart) -> EndoField {
        let n = chart.dim();
        let mut upper = EndoField::zero(*chart);
        while upper.is_zero() {
            upper = EndoField::from_fn(*chart, |r, c| {
                if c > r && self.coin() {
                    self.poly_bounded(chart, 1, 1)
                } else {
                    Expr::zero()
                }
            });
        }
        let id = EndoField::identity(*chart);
        let s = id.add(&upper).expect("same chart");
        // (I + N)^{-1} = I - N + N^2 - ... , finite because N is nilpotent
        let minus_n = upper.scale_const(&SplitComplex::from_ints(-1, 0));
        let mut inv = id.clone();
        let mut power = id;
        for _ in 1..n {
            power = power.compose(&minus_n).expect("same chart");
            inv = inv.add(&power).expect("same chart");
        }
        let j = para_structure(chart).expect("base chart");
        s.compose(&j)
            .and_then(|sj| sj.compose(&inv))
            .expect("same chart")
    }
}
