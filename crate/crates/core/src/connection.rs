//! Affine connections given by Christoffel tables, torsion, the complete
//! lift of a connection, and the correction that makes a torsion-free
//! connection preserve an involutive (1,1)-field.

use std::fmt;

use num_rational::BigRational;

use crate::chart::Chart;
use crate::error::{base_only, same_chart, GeometryError};
use crate::expr::Expr;
use crate::field::{EndoField, VectorField};
use crate::geometry::{is_involution, nijenhuis};
use crate::lift::{clift_expr, tangent_chart};
use crate::split::SplitComplex;

/// A three-index table `T^C_{AB}` over a chart, stored `[C][A][B]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table3 {
    chart: Chart,
    data: Vec<Expr>,
}

impl Table3 {
    pub fn zero(chart: Chart) -> Self {
        let n = chart.dim();
        Self {
            chart,
            data: vec![Expr::zero(); n * n * n],
        }
    }

    pub fn from_fn(chart: Chart, mut f: impl FnMut(usize, usize, usize) -> Expr) -> Self {
        let n = chart.dim();
        let mut data = Vec::with_capacity(n * n * n);
        for c in 0..n {
            for a in 0..n {
                for b in 0..n {
                    data.push(f(c, a, b));
                }
            }
        }
        Self { chart, data }
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    fn offset(&self, c: usize, a: usize, b: usize) -> usize {
        let n = self.chart.dim();
        assert!(c < n && a < n && b < n, "index out of range");
        (c * n + a) * n + b
    }

    pub fn get(&self, c: usize, a: usize, b: usize) -> &Expr {
        &self.data[self.offset(c, a, b)]
    }

    pub fn set(&mut self, c: usize, a: usize, b: usize, value: Expr) -> Result<(), GeometryError> {
        if !value.is_over(&self.chart) {
            return Err(GeometryError::ForeignSymbol(self.chart));
        }
        let i = self.offset(c, a, b);
        self.data[i] = value;
        Ok(())
    }

    /// All entries as `((c, a, b), value)`, 0-based.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize), &Expr)> {
        let n = self.chart.dim();
        self.data
            .iter()
            .enumerate()
            .map(move |(i, e)| ((i / (n * n), (i / n) % n, i % n), e))
    }

    pub fn values(&self) -> &[Expr] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Expr::is_zero)
    }

    pub fn add(&self, other: &Table3) -> Result<Table3, GeometryError> {
        same_chart(&self.chart, &other.chart)?;
        Ok(Self {
            chart: self.chart,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale_const(&self, k: &SplitComplex) -> Table3 {
        Self {
            chart: self.chart,
            data: self.data.iter().map(|e| e.scale(k)).collect(),
        }
    }

    /// `T(X,Y)^C = T^C_{AB} X^A Y^B`.
    pub fn contract(&self, x: &VectorField, y: &VectorField) -> Result<VectorField, GeometryError> {
        same_chart(&self.chart, &x.chart())?;
        same_chart(&self.chart, &y.chart())?;
        let n = self.chart.dim();
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let (xa, yb) = (x.component(a), y.component(b));
                if !xa.is_zero() && !yb.is_zero() {
                    pairs.push((a, b, xa * yb));
                }
            }
        }
        let comps = (0..n)
            .map(|c| {
                pairs
                    .iter()
                    .filter(|(a, b, _)| !self.get(c, *a, *b).is_zero())
                    .map(|(a, b, xy)| self.get(c, *a, *b) * xy)
                    .sum()
            })
            .collect();
        Ok(VectorField::raw(self.chart, comps))
    }

    /// Tabulates a map on frame fields: entry `[C][A][B]` is `map(d_A, d_B)^C`.
    pub fn from_frames(
        chart: Chart,
        mut map: impl FnMut(&VectorField, &VectorField) -> Result<VectorField, GeometryError>,
    ) -> Result<Table3, GeometryError> {
        let n = chart.dim();
        let frames: Vec<_> = (0..n).map(|a| VectorField::frame(chart, a)).collect();
        let mut out = Table3::zero(chart);
        for a in 0..n {
            for b in 0..n {
                let v = map(&frames[a], &frames[b])?;
                for (c, e) in v.components().iter().enumerate() {
                    let i = out.offset(c, a, b);
                    out.data[i] = e.clone();
                }
            }
        }
        Ok(out)
    }

    fn write_named(&self, f: &mut fmt::Formatter<'_>, name: &str) -> fmt::Result {
        for (k, ((c, a, b), e)) in self.entries().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{name}[{}][{}][{}] = {e}", c + 1, a + 1, b + 1)?;
        }
        Ok(())
    }
}

/// A tensorial map `(X, Y) -> V` such as torsion, Nijenhuis or the
/// correction `Q`, represented by its component table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearVectorMap {
    pub table: Table3,
}

impl BilinearVectorMap {
    pub fn chart(&self) -> Chart {
        self.table.chart()
    }

    pub fn apply(&self, x: &VectorField, y: &VectorField) -> Result<VectorField, GeometryError> {
        self.table.contract(x, y)
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_zero()
    }
}

impl fmt::Display for BilinearVectorMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.table.write_named(f, "T")
    }
}

/// `(∇_X Y)^C = X^A d_A Y^C + Γ^C_{AB} X^A Y^B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    christoffels: Table3,
}

impl Connection {
    pub fn new(christoffels: Table3) -> Self {
        Self { christoffels }
    }

    pub fn flat(chart: Chart) -> Self {
        Self::new(Table3::zero(chart))
    }

    pub fn chart(&self) -> Chart {
        self.christoffels.chart()
    }

    pub fn christoffels(&self) -> &Table3 {
        &self.christoffels
    }

    /// `Γ^c_{ab}`, 0-based.
    pub fn gamma(&self, c: usize, a: usize, b: usize) -> &Expr {
        self.christoffels.get(c, a, b)
    }
}

/// Christoffel table, one `Gamma[C][A][B] = <expr>` line per entry.
impl fmt::Display for Connection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.christoffels.write_named(f, "Gamma")
    }
}

pub fn covariant_derivative_vector(
    nabla: &Connection,
    x: &VectorField,
    y: &VectorField,
) -> Result<VectorField, GeometryError> {
    same_chart(&nabla.chart(), &x.chart())?;
    same_chart(&nabla.chart(), &y.chart())?;
    let directional = VectorField::raw(
        x.chart(),
        y.components().iter().map(|yc| x.derive_expr(yc)).collect(),
    );
    directional.add(&nabla.christoffels.contract(x, y)?)
}

/// `∇_X F` with `(∇_X F)Y = ∇_X(FY) - F(∇_X Y)`, i.e.
/// `(∇_X F)^C_B = X(F^C_B) + Γ^C_{AD} X^A F^D_B - F^C_D Γ^D_{AB} X^A`.
pub fn covariant_derivative_endo(
    nabla: &Connection,
    x: &VectorField,
    f: &EndoField,
) -> Result<EndoField, GeometryError> {
    let chart = nabla.chart();
    same_chart(&chart, &x.chart())?;
    same_chart(&chart, &f.chart())?;
    let n = chart.dim();
    // Γ_X^C_D = Γ^C_{AD} X^A
    let gamma_x = EndoField::from_fn(chart, |c, d| {
        (0..n)
            .filter(|&a| !x.component(a).is_zero() && !nabla.gamma(c, a, d).is_zero())
            .map(|a| nabla.gamma(c, a, d) * x.component(a))
            .sum()
    });
    let derivative = EndoField::from_fn(chart, |c, b| x.derive_expr(f.get(c, b)));
    derivative
        .add(&gamma_x.compose(f)?)?
        .sub(&f.compose(&gamma_x)?)
}

/// `T^C_{AB} = Γ^C_{AB} - Γ^C_{BA}`.
pub fn torsion(nabla: &Connection) -> BilinearVectorMap {
    let g = &nabla.christoffels;
    BilinearVectorMap {
        table: Table3::from_fn(nabla.chart(), |c, a, b| g.get(c, a, b) - g.get(c, b, a)),
    }
}

/// `T(Z,W) = ∇_Z W - ∇_W Z - [Z,W]` evaluated directly on the fields.
pub fn torsion_of_fields(
    nabla: &Connection,
    z: &VectorField,
    w: &VectorField,
) -> Result<VectorField, GeometryError> {
    covariant_derivative_vector(nabla, z, w)?
        .sub(&covariant_derivative_vector(nabla, w, z)?)?
        .sub(&crate::geometry::lie_bracket(z, w)?)
}

/// Nijenhuis tensor of `f` as a component table, `N^C_{AB} = N_F(d_A, d_B)^C`.
pub fn nijenhuis_table(f: &EndoField) -> Result<BilinearVectorMap, GeometryError> {
    let table = Table3::from_frames(f.chart(), |x, y| nijenhuis(f, x, y))?;
    Ok(BilinearVectorMap { table })
}

/// Complete lift of a base connection: with primed indices on the fiber,
/// `Γ^C_{AB}`, `Γ^{C'}_{A'B}` and `Γ^{C'}_{AB'}` copy `Γ^C_{AB}`,
/// `Γ^{C'}_{AB} = (Γ^C_{AB})^c`, every other entry is zero.
pub fn complete_lift_connection(nabla: &Connection) -> Result<Connection, GeometryError> {
    let base = nabla.chart();
    base_only(&base)?;
    let tm = tangent_chart(&base)?;
    let n = base.dim();
    let table = Table3::from_fn(tm, |c, a, b| {
        let (cf, af, bf) = (c >= n, a >= n, b >= n);
        let (c0, a0, b0) = (c % n, a % n, b % n);
        match (cf, af, bf) {
            (false, false, false) => nabla.gamma(c0, a0, b0).clone(),
            (true, true, false) | (true, false, true) => nabla.gamma(c0, a0, b0).clone(),
            (true, false, false) => clift_expr(&base, nabla.gamma(c0, a0, b0)),
            _ => Expr::zero(),
        }
    });
    Ok(Connection::new(table))
}

/// `4Q(X,Y) = (∇_{JY}J)X + J((∇_Y J)X) + 2J((∇_X J)Y)` on arbitrary fields.
pub fn q_formula(
    nabla: &Connection,
    j: &EndoField,
    x: &VectorField,
    y: &VectorField,
) -> Result<VectorField, GeometryError> {
    let jy = j.apply(y)?;
    let t1 = covariant_derivative_endo(nabla, &jy, j)?.apply(x)?;
    let t2 = j.apply(&covariant_derivative_endo(nabla, y, j)?.apply(x)?)?;
    let t3 = j.apply(&covariant_derivative_endo(nabla, x, j)?.apply(y)?)?;
    let four_q = t1.add(&t2)?.add(&t3.scale_const(&SplitComplex::from_ints(2, 0)))?;
    Ok(four_q.scale_const(&quarter()))
}

fn quarter() -> SplitComplex {
    SplitComplex::real(BigRational::new(1.into(), 4.into()))
}

/// The correction tensor `Q` tabulated on frame fields. `j` must be an
/// involution.
pub fn q_correction(nabla: &Connection, j: &EndoField) -> Result<BilinearVectorMap, GeometryError> {
    same_chart(&nabla.chart(), &j.chart())?;
    if !is_involution(j)? {
        return Err(GeometryError::NotInvolution);
    }
    let chart = nabla.chart();
    let n = chart.dim();
    // ∇_{d_A} J, one table per direction; ∇_{J d_B} J follows by linearity.
    let frames: Vec<_> = (0..n).map(|a| VectorField::frame(chart, a)).collect();
    let nabla_j = frames
        .iter()
        .map(|x| covariant_derivative_endo(nabla, x, j))
        .collect::<Result<Vec<_>, _>>()?;
    let along = |v: &VectorField| -> Result<EndoField, GeometryError> {
        let mut acc = EndoField::zero(chart);
        for (a, va) in v.components().iter().enumerate() {
            if !va.is_zero() {
                acc = acc.add(&nabla_j[a].mul_expr(va))?;
            }
        }
        Ok(acc)
    };
    let two = SplitComplex::from_ints(2, 0);
    let mut table = Table3::zero(chart);
    for (a, x) in frames.iter().enumerate() {
        for (b, y) in frames.iter().enumerate() {
            let t1 = along(&j.apply(y)?)?.apply(x)?;
            let t2 = j.apply(&nabla_j[b].apply(x)?)?;
            let t3 = j.apply(&nabla_j[a].apply(y)?)?.scale_const(&two);
            let q = t1.add(&t2)?.add(&t3)?.scale_const(&quarter());
            for (c, e) in q.components().iter().enumerate() {
                let i = table.offset(c, a, b);
                table.data[i] = e.clone();
            }
        }
    }
    Ok(BilinearVectorMap { table })
}

/// `∇~ = ∇ + Q`. The input must be torsion-free and `j` an involution.
pub fn corrected_connection(nabla: &Connection, j: &EndoField) -> Result<Connection, GeometryError> {
    if let Some(((c, a, b), _)) = torsion(nabla).table.entries().find(|(_, e)| !e.is_zero()) {
        return Err(GeometryError::NonZeroTorsion { c, a, b });
    }
    let q = q_correction(nabla, j)?;
    Ok(Connection::new(nabla.christoffels.add(&q.table)?))
}
