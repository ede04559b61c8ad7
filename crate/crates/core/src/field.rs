//! Component containers over a chart: scalars, vector fields, 1-forms and
//! (1,1)-tensor fields.

use std::fmt;

use crate::chart::Chart;
use crate::error::{same_chart, GeometryError};
use crate::expr::Expr;
use crate::split::SplitComplex;

fn check_components(chart: &Chart, comps: &[Expr], expected: usize) -> Result<(), GeometryError> {
    if comps.len() != expected {
        return Err(GeometryError::ComponentCount {
            expected,
            got: comps.len(),
        });
    }
    if comps.iter().all(|e| e.is_over(chart)) {
        Ok(())
    } else {
        Err(GeometryError::ForeignSymbol(*chart))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarField {
    chart: Chart,
    value: Expr,
}

impl ScalarField {
    pub fn new(chart: Chart, value: Expr) -> Result<Self, GeometryError> {
        check_components(&chart, std::slice::from_ref(&value), 1)?;
        Ok(Self { chart, value })
    }

    pub(crate) fn raw(chart: Chart, value: Expr) -> Self {
        Self { chart, value }
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn value(&self) -> &Expr {
        &self.value
    }

    pub fn into_value(self) -> Expr {
        self.value
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `Z = Z^A d/dw^A` in the unified coordinate order of the chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    chart: Chart,
    comps: Vec<Expr>,
}

impl VectorField {
    pub fn new(chart: Chart, comps: Vec<Expr>) -> Result<Self, GeometryError> {
        check_components(&chart, &comps, chart.dim())?;
        Ok(Self { chart, comps })
    }

    pub(crate) fn raw(chart: Chart, comps: Vec<Expr>) -> Self {
        debug_assert_eq!(comps.len(), chart.dim());
        Self { chart, comps }
    }

    pub fn zero(chart: Chart) -> Self {
        Self::raw(chart, vec![Expr::zero(); chart.dim()])
    }

    /// The coordinate frame field `d/dw^a`.
    pub fn frame(chart: Chart, a: usize) -> Self {
        let mut v = Self::zero(chart);
        v.comps[a] = Expr::one();
        v
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn components(&self) -> &[Expr] {
        &self.comps
    }

    pub fn component(&self, a: usize) -> &Expr {
        &self.comps[a]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Expr::is_zero)
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField, GeometryError> {
        same_chart(&self.chart, &other.chart)?;
        Ok(Self::raw(
            self.chart,
            self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &VectorField) -> Result<VectorField, GeometryError> {
        same_chart(&self.chart, &other.chart)?;
        Ok(Self::raw(
            self.chart,
            self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect(),
        ))
    }

    /// Pointwise multiplication by a function expression.
    pub fn mul_expr(&self, f: &Expr) -> VectorField {
        Self::raw(self.chart, self.comps.iter().map(|c| c * f).collect())
    }

    pub fn scale(&self, f: &ScalarField) -> Result<VectorField, GeometryError> {
        same_chart(&self.chart, &f.chart)?;
        Ok(self.mul_expr(&f.value))
    }

    pub fn scale_const(&self, c: &SplitComplex) -> VectorField {
        Self::raw(self.chart, self.comps.iter().map(|e| e.scale(c)).collect())
    }

    pub fn neg(&self) -> VectorField {
        Self::raw(self.chart, self.comps.iter().map(|e| -e).collect())
    }

    /// Directional derivative `Z(f) = Z^A d_A f` of a bare expression.
    pub(crate) fn derive_expr(&self, f: &Expr) -> Expr {
        self.comps
            .iter()
            .enumerate()
            .filter(|(_, z)| !z.is_zero())
            .map(|(a, z)| z * &f.differentiate(self.chart.symbol(a)))
            .sum()
    }

    /// The action `Z(f)` of the field on a function.
    pub fn derive(&self, f: &ScalarField) -> Result<ScalarField, GeometryError> {
        same_chart(&self.chart, &f.chart)?;
        Ok(ScalarField::raw(self.chart, self.derive_expr(&f.value)))
    }
}

fn write_components(
    f: &mut fmt::Formatter<'_>,
    chart: &Chart,
    prefix: &str,
    comps: &[Expr],
) -> fmt::Result {
    for (a, c) in comps.iter().enumerate() {
        if a > 0 {
            writeln!(f)?;
        }
        write!(f, "{prefix}{}: {c}", chart.symbol(a))?;
    }
    Ok(())
}

/// One line per component, `d/dz1: <expr>`, in index order.
impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_components(f, &self.chart, "d/d", &self.comps)
    }
}

/// `w = w_A dw^A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    chart: Chart,
    comps: Vec<Expr>,
}

impl OneForm {
    pub fn new(chart: Chart, comps: Vec<Expr>) -> Result<Self, GeometryError> {
        check_components(&chart, &comps, chart.dim())?;
        Ok(Self { chart, comps })
    }

    pub(crate) fn raw(chart: Chart, comps: Vec<Expr>) -> Self {
        debug_assert_eq!(comps.len(), chart.dim());
        Self { chart, comps }
    }

    pub fn zero(chart: Chart) -> Self {
        Self::raw(chart, vec![Expr::zero(); chart.dim()])
    }

    /// The coordinate differential `dw^a`.
    pub fn coordinate(chart: Chart, a: usize) -> Self {
        let mut w = Self::zero(chart);
        w.comps[a] = Expr::one();
        w
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn components(&self) -> &[Expr] {
        &self.comps
    }

    pub fn component(&self, a: usize) -> &Expr {
        &self.comps[a]
    }

    pub fn add(&self, other: &OneForm) -> Result<OneForm, GeometryError> {
        same_chart(&self.chart, &other.chart)?;
        Ok(Self::raw(
            self.chart,
            self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &OneForm) -> Result<OneForm, GeometryError> {
        same_chart(&self.chart, &other.chart)?;
        Ok(Self::raw(
            self.chart,
            self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn mul_expr(&self, f: &Expr) -> OneForm {
        Self::raw(self.chart, self.comps.iter().map(|c| c * f).collect())
    }

    pub fn scale(&self, f: &ScalarField) -> Result<OneForm, GeometryError> {
        same_chart(&self.chart, &f.chart)?;
        Ok(self.mul_expr(&f.value))
    }

    /// `w(Z) = w_A Z^A`.
    pub fn apply(&self, z: &VectorField) -> Result<ScalarField, GeometryError> {
        same_chart(&self.chart, &z.chart)?;
        Ok(ScalarField::raw(
            self.chart,
            self.comps.iter().zip(&z.comps).map(|(w, z)| w * z).sum(),
        ))
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_components(f, &self.chart, "d", &self.comps)
    }
}

/// A (1,1)-tensor field with components `F^B_A`, stored as `rows[B][A]`
/// (output index first), so that `(FZ)^B = F^B_A Z^A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoField {
    chart: Chart,
    rows: Vec<Vec<Expr>>,
}

impl EndoField {
    pub fn new(chart: Chart, rows: Vec<Vec<Expr>>) -> Result<Self, GeometryError> {
        let n = chart.dim();
        if rows.len() != n {
            return Err(GeometryError::ComponentCount {
                expected: n * n,
                got: rows.iter().map(Vec::len).sum(),
            });
        }
        for row in &rows {
            if row.len() != n {
                return Err(GeometryError::ComponentCount {
                    expected: n * n,
                    got: rows.iter().map(Vec::len).sum(),
                });
            }
            check_components(&chart, row, n)?;
        }
        Ok(Self { chart, rows })
    }

    pub(crate) fn raw(chart: Chart, rows: Vec<Vec<Expr>>) -> Self {
        Self { chart, rows }
    }

    pub fn from_fn(chart: Chart, mut f: impl FnMut(usize, usize) -> Expr) -> Self {
        let n = chart.dim();
        Self::raw(chart, (0..n).map(|b| (0..n).map(|a| f(b, a)).collect()).collect())
    }

    pub fn zero(chart: Chart) -> Self {
        Self::from_fn(chart, |_, _| Expr::zero())
    }

    pub fn identity(chart: Chart) -> Self {
        Self::from_fn(chart, |b, a| if a == b { Expr::one() } else { Expr::zero() })
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    /// `F^b_a`.
    pub fn get(&self, b: usize, a: usize) -> &Expr {
        &self.rows[b][a]
    }

    pub fn rows(&self) -> &[Vec<Expr>] {
        &self.rows
    }

    pub fn entries(&self) -> impl Iterator<Item = &Expr> {
        self.rows.iter().flatten()
    }

    pub fn is_zero(&self) -> bool {
        self.entries().all(Expr::is_zero)
    }

    pub fn add(&self, other: &EndoField) -> Result<EndoField, GeometryError> {
        same_chart(&self.chart, &other.chart)?;
        Ok(Self::from_fn(self.chart, |b, a| &self.rows[b][a] + &other.rows[b][a]))
    }

    pub fn sub(&self, other: &EndoField) -> Result<EndoField, GeometryError> {
        same_chart(&self.chart, &other.chart)?;
        Ok(Self::from_fn(self.chart, |b, a| &self.rows[b][a] - &other.rows[b][a]))
    }

    pub fn mul_expr(&self, f: &Expr) -> EndoField {
        Self::from_fn(self.chart, |b, a| &self.rows[b][a] * f)
    }

    pub fn scale_const(&self, c: &SplitComplex) -> EndoField {
        Self::from_fn(self.chart, |b, a| self.rows[b][a].scale(c))
    }

    /// `self ∘ other`, i.e. `(FG)^C_A = F^C_B G^B_A`.
    pub fn compose(&self, other: &EndoField) -> Result<EndoField, GeometryError> {
        same_chart(&self.chart, &other.chart)?;
        let n = self.chart.dim();
        Ok(Self::from_fn(self.chart, |c, a| {
            (0..n)
                .filter(|&b| !self.rows[c][b].is_zero() && !other.rows[b][a].is_zero())
                .map(|b| &self.rows[c][b] * &other.rows[b][a])
                .sum()
        }))
    }

    pub fn apply(&self, z: &VectorField) -> Result<VectorField, GeometryError> {
        same_chart(&self.chart, &z.chart)?;
        Ok(VectorField::raw(
            self.chart,
            self.rows
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(z.components())
                        .filter(|(f, z)| !f.is_zero() && !z.is_zero())
                        .map(|(f, z)| f * z)
                        .sum()
                })
                .collect(),
        ))
    }

    /// Dual (transpose) action on 1-forms: `(F*w)_A = w_B F^B_A`, so that
    /// `(F*w)(Z) = w(FZ)`.
    pub fn apply_dual(&self, w: &OneForm) -> Result<OneForm, GeometryError> {
        same_chart(&self.chart, &w.chart())?;
        let n = self.chart.dim();
        Ok(OneForm::raw(
            self.chart,
            (0..n)
                .map(|a| (0..n).map(|b| w.component(b) * &self.rows[b][a]).sum())
                .collect(),
        ))
    }
}

/// One line per entry, `F[B][A] = <expr>`, 1-based.
impl fmt::Display for EndoField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.chart.dim();
        for b in 0..n {
            for a in 0..n {
                if b + a > 0 {
                    writeln!(f)?;
                }
                write!(f, "F[{}][{}] = {}", b + 1, a + 1, self.rows[b][a])?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::Symbol;

    #[test]
    fn identity_application() {
        let c = Chart::base(1);
        let z = VectorField::new(c, vec![Expr::symbol(Symbol::z(1)), Expr::int(3)]).unwrap();
        assert_eq!(EndoField::identity(c).apply(&z).unwrap(), z);
    }

    #[test]
    fn dual_basis() {
        let c = Chart::base(2);
        for a in 0..4 {
            for b in 0..4 {
                let v = OneForm::coordinate(c, a).apply(&VectorField::frame(c, b)).unwrap();
                assert_eq!(v.value(), &if a == b { Expr::one() } else { Expr::zero() });
            }
        }
    }

    #[test]
    fn construction_errors() {
        let c = Chart::base(1);
        assert_eq!(
            VectorField::new(c, vec![Expr::one()]),
            Err(GeometryError::ComponentCount { expected: 2, got: 1 })
        );
        assert_eq!(
            ScalarField::new(c, Expr::symbol(Symbol::u(1))),
            Err(GeometryError::ForeignSymbol(c))
        );
        let tm = Chart::tangent_of(c);
        assert!(matches!(
            VectorField::zero(c).add(&VectorField::zero(tm)),
            Err(GeometryError::ChartMismatch { .. })
        ));
    }

    #[test]
    fn compose_matches_sequential_application() {
        let c = Chart::base(1);
        let z1 = Expr::symbol(Symbol::z(1));
        let f = EndoField::new(c, vec![vec![z1.clone(), Expr::one()], vec![Expr::zero(), Expr::j()]]).unwrap();
        let g = EndoField::new(c, vec![vec![Expr::int(2), Expr::zero()], vec![z1.clone(), Expr::one()]]).unwrap();
        let x = VectorField::new(c, vec![Expr::one(), z1]).unwrap();
        assert_eq!(
            f.compose(&g).unwrap().apply(&x).unwrap(),
            f.apply(&g.apply(&x).unwrap()).unwrap()
        );
    }
}
