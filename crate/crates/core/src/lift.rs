//! Vertical and complete lifts from a base chart to its tangent chart.
//!
//! On the tangent chart the base slot `A` keeps its index and the fiber slot
//! paired with it is `A' = A + 2m`. Base expressions are reused verbatim on
//! the tangent chart, which is how the bundle projection acts on symbols.

use crate::chart::Chart;
use crate::error::{base_only, GeometryError};
use crate::expr::Expr;
use crate::field::{EndoField, OneForm, ScalarField, VectorField};
use crate::geometry::para_structure;

pub fn tangent_chart(base: &Chart) -> Result<Chart, GeometryError> {
    base_only(base)?;
    Ok(Chart::tangent_of(*base))
}

/// `f^c = u^a (df/dz^a) + ub^a (df/dzb^a)`, for an expression over `base`.
pub(crate) fn clift_expr(base: &Chart, f: &Expr) -> Expr {
    base.symbols()
        .filter_map(|s| {
            let d = f.differentiate(s);
            let u = s.fiber().expect("base symbol has a fiber partner");
            (!d.is_zero()).then(|| &Expr::symbol(u) * &d)
        })
        .sum()
}

pub fn vlift_scalar(f: &ScalarField) -> Result<ScalarField, GeometryError> {
    let tm = tangent_chart(&f.chart())?;
    Ok(ScalarField::raw(tm, f.value().clone()))
}

pub fn clift_scalar(f: &ScalarField) -> Result<ScalarField, GeometryError> {
    let base = f.chart();
    let tm = tangent_chart(&base)?;
    Ok(ScalarField::raw(tm, clift_expr(&base, f.value())))
}

/// `Z^v = (Z^A)^v d/du^A`.
pub fn vlift_vector(z: &VectorField) -> Result<VectorField, GeometryError> {
    let base = z.chart();
    let tm = tangent_chart(&base)?;
    let n = base.dim();
    let mut comps = vec![Expr::zero(); tm.dim()];
    for a in 0..n {
        comps[tm.fiber_index(a)] = z.component(a).clone();
    }
    Ok(VectorField::raw(tm, comps))
}

/// `Z^c = (Z^A)^v d/dw^A + (Z^A)^c d/du^A`.
pub fn clift_vector(z: &VectorField) -> Result<VectorField, GeometryError> {
    let base = z.chart();
    let tm = tangent_chart(&base)?;
    let n = base.dim();
    let mut comps = vec![Expr::zero(); tm.dim()];
    for a in 0..n {
        comps[a] = z.component(a).clone();
        comps[tm.fiber_index(a)] = clift_expr(&base, z.component(a));
    }
    Ok(VectorField::raw(tm, comps))
}

/// `w^v = (w_A)^v dw^A`.
pub fn vlift_oneform(w: &OneForm) -> Result<OneForm, GeometryError> {
    let base = w.chart();
    let tm = tangent_chart(&base)?;
    let mut comps = vec![Expr::zero(); tm.dim()];
    for (a, c) in w.components().iter().enumerate() {
        comps[a] = c.clone();
    }
    Ok(OneForm::raw(tm, comps))
}

/// `w^c = (w_A)^c dw^A + (w_A)^v du^A`.
pub fn clift_oneform(w: &OneForm) -> Result<OneForm, GeometryError> {
    let base = w.chart();
    let tm = tangent_chart(&base)?;
    let mut comps = vec![Expr::zero(); tm.dim()];
    for (a, c) in w.components().iter().enumerate() {
        comps[a] = clift_expr(&base, c);
        comps[tm.fiber_index(a)] = c.clone();
    }
    Ok(OneForm::raw(tm, comps))
}

/// Complete lift of a (1,1)-field. For each entry `g = F^B_A` the lifted
/// table holds `g^v` in the base-to-base and fiber-to-fiber blocks, `g^c`
/// in the base-to-fiber block (input `A`, output `B'`) and zero in the
/// fiber-to-base block. This is the table forced by `F^c(Z^c) = (FZ)^c`
/// on frame fields, mixed `z`/`zb` entries included.
pub fn clift_endo(f: &EndoField) -> Result<EndoField, GeometryError> {
    let base = f.chart();
    let tm = tangent_chart(&base)?;
    let n = base.dim();
    Ok(EndoField::from_fn(tm, |b, a| {
        match (b < n, a < n) {
            (true, true) => f.get(b, a).clone(),
            (false, false) => f.get(b - n, a - n).clone(),
            (false, true) => clift_expr(&base, f.get(b - n, a)),
            (true, false) => Expr::zero(),
        }
    }))
}

/// `J^c`, the complete lift of the paracomplex structure of `base`.
pub fn clift_para(base: &Chart) -> Result<EndoField, GeometryError> {
    clift_endo(&para_structure(base)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::is_involution;
    use crate::parse::parse;
    use crate::split::SplitComplex;

    fn c1() -> Chart {
        Chart::base(1)
    }

    fn tm1() -> Chart {
        Chart::tangent_of(c1())
    }

    fn sf(s: &str) -> ScalarField {
        ScalarField::new(c1(), parse(s, &c1()).unwrap()).unwrap()
    }

    fn tm_exprs(xs: &[&str]) -> Vec<Expr> {
        xs.iter().map(|s| parse(s, &tm1()).unwrap()).collect()
    }

    #[test]
    fn scalar_lifts() {
        assert_eq!(vlift_scalar(&sf("z1")).unwrap().value(), &parse("z1", &tm1()).unwrap());
        assert_eq!(vlift_scalar(&sf("z1*zb1")).unwrap().chart(), tm1());
        assert_eq!(clift_scalar(&sf("z1")).unwrap().to_string(), "u1");
        assert!(clift_scalar(&sf("3+j")).unwrap().value().is_zero());
        assert_eq!(vlift_scalar(&sf("3+j")).unwrap().value(), &Expr::constant(SplitComplex::from_ints(3, 1)));
        // f^c = u1 * d(z1 zb1)/dz1 + ub1 * d(z1 zb1)/dzb1
        assert_eq!(clift_scalar(&sf("z1*zb1")).unwrap().to_string(), "u1*zb1 + ub1*z1");
    }

    #[test]
    fn lifts_reject_tangent_input() {
        let f = ScalarField::new(tm1(), Expr::one()).unwrap();
        assert_eq!(clift_scalar(&f), Err(GeometryError::NotBaseChart(tm1())));
        assert_eq!(vlift_vector(&VectorField::zero(tm1())), Err(GeometryError::NotBaseChart(tm1())));
    }

    #[test]
    fn frame_lifts() {
        let d = VectorField::frame(c1(), 0);
        assert_eq!(vlift_vector(&d).unwrap(), VectorField::frame(tm1(), 2));
        assert_eq!(clift_vector(&d).unwrap(), VectorField::frame(tm1(), 0));
        let dz = OneForm::coordinate(c1(), 0);
        assert_eq!(vlift_oneform(&dz).unwrap(), OneForm::coordinate(tm1(), 0));
        assert_eq!(clift_oneform(&dz).unwrap(), OneForm::coordinate(tm1(), 2));
    }

    #[test]
    fn complete_lift_of_z_scaled_frame() {
        // Z = z1 d/dz1 -> Z^c = z1 d/dz1 + u1 d/du1
        let z = VectorField::new(c1(), vec![parse("z1", &c1()).unwrap(), Expr::zero()]).unwrap();
        let zc = clift_vector(&z).unwrap();
        assert_eq!(zc.components(), tm_exprs(&["z1", "0", "u1", "0"]).as_slice());
    }

    #[test]
    fn complete_lift_of_oneform() {
        // w = zb1 dz1 -> w^c = ub1 dz1 + zb1 du1
        let w = OneForm::new(c1(), vec![parse("zb1", &c1()).unwrap(), Expr::zero()]).unwrap();
        let wc = clift_oneform(&w).unwrap();
        assert_eq!(wc.components(), tm_exprs(&["ub1", "0", "zb1", "0"]).as_slice());
    }

    #[test]
    fn endo_lift_blocks() {
        let id = clift_endo(&EndoField::identity(c1())).unwrap();
        assert_eq!(id, EndoField::identity(tm1()));

        let f = EndoField::new(
            c1(),
            vec![vec![parse("z1", &c1()).unwrap(), Expr::zero()], vec![Expr::zero(), Expr::zero()]],
        )
        .unwrap();
        let fc = clift_endo(&f).unwrap();
        assert_eq!(fc.get(2, 0).to_string(), "u1");
        assert_eq!(fc.get(0, 0).to_string(), "z1");
        assert_eq!(fc.get(2, 2).to_string(), "z1");
        assert!(fc.get(0, 2).is_zero());
    }

    #[test]
    fn constant_endo_lift_copies_diagonal_blocks() {
        let f = EndoField::new(
            c1(),
            vec![vec![Expr::int(2), Expr::j()], vec![Expr::int(-1), Expr::zero()]],
        )
        .unwrap();
        let fc = clift_endo(&f).unwrap();
        for b in 0..2 {
            for a in 0..2 {
                assert_eq!(fc.get(b, a), f.get(b, a));
                assert_eq!(fc.get(b + 2, a + 2), f.get(b, a));
                assert!(fc.get(b + 2, a).is_zero());
                assert!(fc.get(b, a + 2).is_zero());
            }
        }
    }

    #[test]
    fn lifted_para_structure() {
        let jc = clift_para(&c1()).unwrap();
        assert!(is_involution(&jc).unwrap());
        let image = jc.apply(&VectorField::frame(tm1(), 0)).unwrap();
        assert_eq!(image.components(), tm_exprs(&["-j", "0", "0", "0"]).as_slice());
        assert_eq!(jc.get(2, 2).to_string(), "-1*j");
        assert_eq!(jc.get(3, 3).to_string(), "1*j");
    }
}
