use std::fmt::Write;

use crate::algebra::{Polynomial, RingContext};

/// Canonical text for `f`: terms in decreasing order, coefficients above
/// `p/2` shown as negatives, unit coefficients elided.
pub fn format_polynomial(f: &Polynomial, ctx: &RingContext) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let p = ctx.modulus().value();
    let mut out = String::new();
    for (i, term) in f.terms().iter().enumerate() {
        let c = term.coeff.value();
        let (negative, magnitude) = if c > p / 2 { (true, p - c) } else { (false, c) };
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if term.monomial.is_one() {
            let _ = write!(out, "{magnitude}");
        } else {
            if magnitude != 1 {
                let _ = write!(out, "{magnitude}*");
            }
            out.push_str(&ctx.format_monomial(&term.monomial));
        }
    }
    out
}

/// A `ring` header line that [`super::parse_system`] accepts back.
pub fn format_header(ctx: &RingContext) -> String {
    format!(
        "ring {} {} {}",
        ctx.modulus().value(),
        ctx.var_names().join(" "),
        ctx.order().name()
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Monomial, MonomialOrder};
    use crate::field::PrimeModulus;
    use crate::io::parse::parse_polynomial;
    use proptest::prelude::*;

    fn xyzt() -> RingContext {
        RingContext::new(
            PrimeModulus::new(32003).unwrap(),
            ["x", "y", "z", "t"].map(String::from).to_vec(),
            MonomialOrder::DegRevLex,
        )
        .unwrap()
    }

    fn poly(r: &RingContext, terms: &[(i64, [u16; 4])]) -> Polynomial {
        Polynomial::from_terms(
            terms
                .iter()
                .map(|(c, e)| (r.modulus().scalar_signed(*c), Monomial::new(e.to_vec()))),
            r,
        )
    }

    #[test]
    fn examples() {
        let r = xyzt();
        assert_eq!(
            format_polynomial(&poly(&r, &[(1, [2, 1, 0, 0]), (-1, [0, 0, 2, 1])]), &r),
            "x^2*y - z^2*t"
        );
        assert_eq!(
            format_polynomial(&poly(&r, &[(1, [0, 6, 0, 2]), (32002, [1, 2, 1, 4])]), &r),
            "y^6*t^2 - x*y^2*z*t^4"
        );
        assert_eq!(format_polynomial(&Polynomial::zero(), &r), "0");
        assert_eq!(
            format_polynomial(&poly(&r, &[(-3, [1, 0, 0, 0]), (1, [0, 0, 0, 0])]), &r),
            "-3*x + 1"
        );
        assert_eq!(
            format_polynomial(&poly(&r, &[(-1, [0, 0, 0, 0])]), &r),
            "-1"
        );
        assert_eq!(format_header(&r), "ring 32003 x y z t degrevlex");
    }

    fn arb_poly() -> impl Strategy<Value = Vec<(u32, [u16; 4])>> {
        prop::collection::vec((0u32..32003, prop::array::uniform4(0u16..5)), 0..8)
    }

    proptest! {
        #[test]
        fn round_trip(raw in arb_poly()) {
            let r = xyzt();
            let f = Polynomial::from_terms(raw.iter().map(|(c, e)| (r.scalar(*c as u64), Monomial::new(e.to_vec()))), &r);
            let text = format_polynomial(&f, &r);
            prop_assert_eq!(parse_polynomial(&text, &r, 1).unwrap(), f);
        }
    }
}
