//! Multivariate polynomial gcd by recursive primitive remainder sequences.

use super::poly::ParamPoly;

/// Greatest common divisor, normalized to integer coefficients with gcd 1 and
/// a positive leading coefficient. `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let n = a.vars().len();
    let main = (0..n).find(|&i| a.degree_in(i).unwrap_or(0) > 0 || b.degree_in(i).unwrap_or(0) > 0);
    let x = match main {
        Some(x) => x,
        None => return ParamPoly::one(a.vars()),
    };
    let ca = content_in(a, x);
    let cb = content_in(b, x);
    let c = poly_gcd(&ca, &cb);
    let mut f = a.div_exact(&ca).expect("content divides");
    let mut g = b.div_exact(&cb).expect("content divides");
    if deg(&f, x) < deg(&g, x) {
        std::mem::swap(&mut f, &mut g);
    }
    let g = loop {
        if deg(&g, x) == 0 {
            // g is a unit times a polynomial free of x; since g is primitive
            // in x it is a rational constant.
            break ParamPoly::one(a.vars());
        }
        let r = pseudo_rem(&f, &g, x);
        if r.is_zero() {
            break g;
        }
        f = g;
        g = primitive_part_in(&r, x);
    };
    (&c * &g).primitive()
}

/// gcd of the coefficients of `p` viewed as a polynomial in the variable `x`.
pub fn content_in(p: &ParamPoly, x: usize) -> ParamPoly {
    let mut acc = ParamPoly::zero(p.vars());
    for c in p.as_univariate(x) {
        if c.is_zero() {
            continue;
        }
        acc = poly_gcd(&acc, &c);
        if acc.is_constant() {
            break;
        }
    }
    acc
}

fn primitive_part_in(p: &ParamPoly, x: usize) -> ParamPoly {
    let c = content_in(p, x);
    p.div_exact(&c).expect("content divides").primitive()
}

fn deg(p: &ParamPoly, x: usize) -> u32 {
    p.degree_in(x).unwrap_or(0)
}

fn pseudo_rem(f: &ParamPoly, g: &ParamPoly, x: usize) -> ParamPoly {
    let dg = deg(g, x);
    let lc_g = g.coeff_in(x, dg);
    let mut r = f.clone();
    let mut shift = vec![0; f.vars().len()];
    while !r.is_zero() && deg(&r, x) >= dg {
        let dr = deg(&r, x);
        let lc_r = r.coeff_in(x, dr);
        shift[x] = dr - dg;
        r = &(&lc_g * &r) - &(&lc_r * &g.shift(&shift));
    }
    r
}

/// gcd of a list of polynomials.
pub fn poly_gcd_all<'a, I: IntoIterator<Item = &'a ParamPoly>>(items: I) -> Option<ParamPoly> {
    let mut acc: Option<ParamPoly> = None;
    for p in items {
        acc = Some(match acc {
            None => p.primitive(),
            Some(a) => poly_gcd(&a, p),
        });
    }
    acc
}
