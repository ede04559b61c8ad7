//! The paracomplex structure, Lie brackets, differentials and the Nijenhuis
//! tensor on a chart.

use num_rational::BigRational;

use crate::chart::Chart;
use crate::error::{base_only, same_chart, GeometryError};
use crate::expr::Expr;
use crate::field::{EndoField, OneForm, ScalarField, VectorField};
use crate::split::SplitComplex;

/// `J(d/dz^a) = -j d/dz^a`, `J(d/dzb^a) = +j d/dzb^a`.
pub fn para_structure(chart: &Chart) -> Result<EndoField, GeometryError> {
    base_only(chart)?;
    Ok(diagonal_j(chart))
}

/// The diagonal `∓j` table on any chart, holomorphic slots taking `-j`.
pub(crate) fn diagonal_j(chart: &Chart) -> EndoField {
    EndoField::from_fn(*chart, |b, a| {
        if a != b {
            Expr::zero()
        } else if chart.is_holomorphic_slot(a) {
            Expr::constant(SplitComplex::from_ints(0, -1))
        } else {
            Expr::j()
        }
    })
}

/// `J*` as a table for [`EndoField::apply_dual`]: `J*(dz^a) = -j dz^a`,
/// `J*(dzb^a) = +j dzb^a`.
pub fn dual_para_structure(chart: &Chart) -> Result<EndoField, GeometryError> {
    para_structure(chart)
}

pub fn apply_endo(f: &EndoField, z: &VectorField) -> Result<VectorField, GeometryError> {
    f.apply(z)
}

pub fn apply_oneform(w: &OneForm, z: &VectorField) -> Result<ScalarField, GeometryError> {
    w.apply(z)
}

/// `(df)_A = d_A f`.
pub fn differential(f: &ScalarField) -> OneForm {
    let chart = f.chart();
    OneForm::raw(
        chart,
        chart.symbols().map(|s| f.value().differentiate(s)).collect(),
    )
}

/// `[X,Y]^B = X^A d_A Y^B - Y^A d_A X^B`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField, GeometryError> {
    same_chart(&x.chart(), &y.chart())?;
    let comps = x
        .components()
        .iter()
        .zip(y.components())
        .map(|(xb, yb)| &x.derive_expr(yb) - &y.derive_expr(xb))
        .collect();
    Ok(VectorField::raw(x.chart(), comps))
}

/// `N_F(X,Y) = [X,Y] - F[FX,Y] - F[X,FY] + [FX,FY]` for any (1,1)-field `F`.
pub fn nijenhuis(
    f: &EndoField,
    x: &VectorField,
    y: &VectorField,
) -> Result<VectorField, GeometryError> {
    same_chart(&f.chart(), &x.chart())?;
    same_chart(&f.chart(), &y.chart())?;
    let fx = f.apply(x)?;
    let fy = f.apply(y)?;
    let t1 = lie_bracket(x, y)?;
    let t2 = f.apply(&lie_bracket(&fx, y)?)?;
    let t3 = f.apply(&lie_bracket(x, &fy)?)?;
    let t4 = lie_bracket(&fx, &fy)?;
    t1.sub(&t2)?.sub(&t3)?.add(&t4)
}

/// `F∘F == I` as a structural equality of tables.
pub fn is_involution(f: &EndoField) -> Result<bool, GeometryError> {
    Ok(f.compose(f)? == EndoField::identity(f.chart()))
}

/// Components of a base-chart vector field in the real frame
/// `(d/dx^a, d/dy^a)`, using `d/dx = d/dz + d/dzb` and
/// `d/dy = j (d/dzb - d/dz)`. Returns `(x_a, y_a)` pairs, one per `a`.
pub fn real_frame_components(z: &VectorField) -> Result<Vec<(Expr, Expr)>, GeometryError> {
    let chart = z.chart();
    base_only(&chart)?;
    let half = SplitComplex::real(BigRational::new(1.into(), 2.into()));
    let half_j = &half * &SplitComplex::j();
    Ok((0..chart.m())
        .map(|i| {
            let (hz, az) = (z.component(i), z.component(chart.m() + i));
            let x = (hz + az).scale(&half);
            let y = (az - hz).scale(&half_j);
            (x, y)
        })
        .collect())
}

/// The base-chart vector field with real-frame components `(x_a, y_a)`.
pub fn from_real_frame(chart: &Chart, parts: &[(Expr, Expr)]) -> Result<VectorField, GeometryError> {
    base_only(chart)?;
    if parts.len() != chart.m() {
        return Err(GeometryError::ComponentCount {
            expected: chart.m(),
            got: parts.len(),
        });
    }
    let mut comps = vec![Expr::zero(); chart.dim()];
    for (i, (x, y)) in parts.iter().enumerate() {
        let jy = y.scale(&SplitComplex::j());
        comps[i] = x - &jy;
        comps[chart.m() + i] = x + &jy;
    }
    VectorField::new(*chart, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn c1() -> Chart {
        Chart::base(1)
    }

    fn vf(chart: Chart, comps: &[&str]) -> VectorField {
        VectorField::new(chart, comps.iter().map(|s| parse(s, &chart).unwrap()).collect()).unwrap()
    }

    #[test]
    fn para_structure_table_m1() {
        let j = para_structure(&c1()).unwrap();
        assert_eq!(j.get(0, 0).to_string(), "-1*j");
        assert_eq!(j.get(1, 1).to_string(), "1*j");
        assert!(j.get(0, 1).is_zero() && j.get(1, 0).is_zero());
        let jz = j.apply(&VectorField::frame(c1(), 0)).unwrap();
        assert_eq!(jz, vf(c1(), &["-j", "0"]));
        assert!(is_involution(&j).unwrap());
    }

    #[test]
    fn para_structure_rejects_tangent_chart() {
        let tm = Chart::tangent_of(c1());
        assert_eq!(para_structure(&tm), Err(GeometryError::NotBaseChart(tm)));
    }

    #[test]
    fn dual_structure_on_dz() {
        let js = dual_para_structure(&c1()).unwrap();
        let w = js.apply_dual(&OneForm::coordinate(c1(), 0)).unwrap();
        assert_eq!(w.components(), &[parse("-j", &c1()).unwrap(), Expr::zero()]);
        let dzb = OneForm::coordinate(c1(), 1);
        assert_eq!(js.apply_dual(&js.apply_dual(&dzb).unwrap()).unwrap(), dzb);
    }

    #[test]
    fn bracket_hand_example() {
        // X = z1 d/dz1, Y = d/dz1: [X,Y] = -d/dz1
        let x = vf(c1(), &["z1", "0"]);
        let y = vf(c1(), &["1", "0"]);
        assert_eq!(lie_bracket(&x, &y).unwrap(), vf(c1(), &["-1", "0"]));
        assert!(lie_bracket(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn differential_of_product() {
        let f = ScalarField::new(c1(), parse("z1*zb1", &c1()).unwrap()).unwrap();
        let df = differential(&f);
        assert_eq!(df.components(), &[parse("zb1", &c1()).unwrap(), parse("z1", &c1()).unwrap()]);
    }

    #[test]
    fn nijenhuis_nonconstant_diagonal() {
        // F(d/dz1) = zb1 d/dz1, F(d/dzb1) = z1 d/dzb1, X = d/dz1, Y = d/dzb1.
        // Bracket terms expanded by hand: [X,Y] = 0, [FX,Y] = -d/dz1,
        // [X,FY] = d/dzb1, [FX,FY] = -z1 d/dz1 + zb1 d/dzb1.
        let c = c1();
        let f = EndoField::new(
            c,
            vec![
                vec![parse("zb1", &c).unwrap(), Expr::zero()],
                vec![Expr::zero(), parse("z1", &c).unwrap()],
            ],
        )
        .unwrap();
        let n = nijenhuis(&f, &VectorField::frame(c, 0), &VectorField::frame(c, 1)).unwrap();
        assert_eq!(n, vf(c, &["zb1 - z1", "zb1 - z1"]));
    }

    #[test]
    fn real_bridge_frames() {
        let c = c1();
        let j = para_structure(&c).unwrap();
        let dx = from_real_frame(&c, &[(Expr::one(), Expr::zero())]).unwrap();
        let dy = from_real_frame(&c, &[(Expr::zero(), Expr::one())]).unwrap();
        assert_eq!(dx, vf(c, &["1", "1"]));
        assert_eq!(j.apply(&dx).unwrap(), dy);
        assert_eq!(j.apply(&dy).unwrap(), dx);
        let parts = real_frame_components(&j.apply(&dx).unwrap()).unwrap();
        assert_eq!(parts, vec![(Expr::zero(), Expr::one())]);
    }
}
