//! Hodge-atom invariants and the irrationality obstruction.
//!
//! An atom carries `ρ` (rational Hodge classes) and a Hodge polynomial
//! `P ∈ Z[t, t⁻¹]`. Blowing up a centre of codimension `r` adds `r − 1`
//! copies of the centre's invariants. Points and curves never carry a `t²`
//! term and surfaces always bring `ρ ≥ 3`, so an atom with a `t²` term and
//! `ρ < 3` cannot arise from blowups. That rules out rationality.

use std::fmt;

use thiserror::Error;

use crate::algebra::{LaurentPoly, Rat};
use crate::instance::InstanceSpec;
use crate::spectrum::SpectrumReport;

/// A surface always carries the classes of a point, the fundamental class
/// and an ample class.
pub const SURFACE_MIN_RHO: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtomError {
    #[error("simplicity of the transcendental lattice is not established; its ρ is unknown")]
    RhoUnknown,
    #[error("blowup multiplicity r = {0} must be at least 2")]
    Multiplicity(u32),
    #[error("surface needs h^(1,1) ≥ 1, got {0}")]
    Surface(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomInvariants {
    pub label: String,
    pub rho: u32,
    pub hodge_poly: LaurentPoly,
}

impl AtomInvariants {
    pub fn new(label: impl Into<String>, rho: u32, hodge_poly: LaurentPoly) -> AtomInvariants {
        AtomInvariants {
            label: label.into(),
            rho,
            hodge_poly,
        }
    }

    /// `dim` algebraic classes of type (p, p).
    pub fn algebraic(label: impl Into<String>, dim: u32) -> AtomInvariants {
        AtomInvariants::new(label, dim, LaurentPoly::constant(dim as i64))
    }

    pub fn t2(&self) -> i64 {
        self.hodge_poly.coeff(2)
    }

    pub fn dimension(&self) -> i64 {
        self.hodge_poly.eval_one()
    }

    /// `ρ ≤ [t⁰]P` and `P` has non-negative coefficients.
    pub fn is_consistent(&self) -> bool {
        self.hodge_poly.is_nonnegative() && (self.rho as i64) <= self.hodge_poly.coeff(0)
    }

    pub fn combine(&self, other: &AtomInvariants, label: impl Into<String>) -> AtomInvariants {
        AtomInvariants::new(
            label,
            self.rho + other.rho,
            &self.hodge_poly + &other.hodge_poly,
        )
    }
}

impl fmt::Display for AtomInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: (ρ = {}, P = {})",
            self.label, self.rho, self.hodge_poly
        )
    }
}

/// Contribution models for blowup centres.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CentreModel {
    Point,
    Curve { genus: u32 },
    Surface { h20: u32, h11: u32, h10: u32 },
}

impl CentreModel {
    pub fn surface(h20: u32, h11: u32, h10: u32) -> Result<CentreModel, AtomError> {
        if h11 == 0 {
            return Err(AtomError::Surface(h11));
        }
        Ok(CentreModel::Surface { h20, h11, h10 })
    }

    pub fn contribution(&self) -> AtomInvariants {
        match *self {
            CentreModel::Point => AtomInvariants::new("point", 1, LaurentPoly::constant(1)),
            CentreModel::Curve { genus } => {
                let g = genus as i64;
                AtomInvariants::new(
                    format!("curve(g={})", genus),
                    2,
                    LaurentPoly::from_terms([(1, g), (0, 2), (-1, g)]),
                )
            }
            CentreModel::Surface { h20, h11, h10 } => {
                let (a, b, c) = (h20 as i64, h11 as i64, h10 as i64);
                AtomInvariants::new(
                    format!("surface(h20={},h11={},h10={})", h20, h11, h10),
                    SURFACE_MIN_RHO,
                    LaurentPoly::from_terms([(2, a), (1, 2 * c), (0, 2 + b), (-1, 2 * c), (-2, a)]),
                )
            }
        }
    }
}

impl fmt::Display for CentreModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.contribution().label)
    }
}

/// Invariants of the transcendental lattice `T`, with Tate twists chosen so
/// that its (3,1), (2,2), (1,3) parts sit at `t², t⁰, t⁻²`.
pub fn transcendental_invariants(instance: &InstanceSpec) -> Result<AtomInvariants, AtomError> {
    let h = &instance.hodge;
    let [a, b, c] = h.t_decomposition;
    let poly = LaurentPoly::from_terms([(2, a as i64), (0, b as i64), (-2, c as i64)]);
    if h.dim_t == 0 {
        return Ok(AtomInvariants::new("T", 0, poly));
    }
    match h.simple {
        // A rational Hodge class in a simple T would span a sub-structure.
        Some(true) => Ok(AtomInvariants::new("T", 0, poly)),
        _ => Err(AtomError::RhoUnknown),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TPlacement {
    Plus,
    Minus,
}

impl TPlacement {
    pub const BOTH: [TPlacement; 2] = [TPlacement::Plus, TPlacement::Minus];

    pub fn name(self) -> &'static str {
        match self {
            TPlacement::Plus => "case_plus",
            TPlacement::Minus => "case_minus",
        }
    }
}

/// The zero-eigenspace atoms when `T` lies in one of the eigenparts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroAtomCase {
    pub placement: TPlacement,
    pub plus: AtomInvariants,
    pub minus: AtomInvariants,
}

impl ZeroAtomCase {
    pub fn t_bearing(&self) -> &AtomInvariants {
        match self.placement {
            TPlacement::Plus => &self.plus,
            TPlacement::Minus => &self.minus,
        }
    }
}

/// Dimensions of the ambient zero pieces: from the spectrum unless the
/// instance overrides them.
pub fn zero_dimensions(spec: &SpectrumReport, instance: &InstanceSpec) -> (u32, u32) {
    let plus = instance
        .run
        .zero_dim_plus
        .unwrap_or(spec.symmetric.zero_multiplicity as u32);
    let minus = instance
        .run
        .zero_dim_minus
        .unwrap_or(spec.antisymmetric.zero_multiplicity as u32);
    (plus, minus)
}

/// Both placements of `T` inside `E_0 = T ⊕ A_0^+ ⊕ A_0^-`.
pub fn assemble_zero_atoms(t: &AtomInvariants, plus_dim: u32, minus_dim: u32) -> Vec<ZeroAtomCase> {
    let a_plus = AtomInvariants::algebraic("E_0^+", plus_dim);
    let a_minus = AtomInvariants::algebraic("E_0^-", minus_dim);
    TPlacement::BOTH
        .iter()
        .map(|&placement| {
            let (plus, minus) = match placement {
                TPlacement::Plus => (a_plus.combine(t, "E_0^+"), a_minus.clone()),
                TPlacement::Minus => (a_plus.clone(), a_minus.combine(t, "E_0^-")),
            };
            ZeroAtomCase {
                placement,
                plus,
                minus,
            }
        })
        .collect()
}

/// Both placements for an instance whose spectrum is known.
pub fn zero_atom_cases(
    spec: &SpectrumReport,
    instance: &InstanceSpec,
) -> Result<Vec<ZeroAtomCase>, AtomError> {
    let t = transcendental_invariants(instance)?;
    let (plus_dim, minus_dim) = zero_dimensions(spec, instance);
    Ok(assemble_zero_atoms(&t, plus_dim, minus_dim))
}

/// `base + (r − 1)·centre`.
pub fn blowup_combine(
    base: &AtomInvariants,
    centre: &AtomInvariants,
    r: u32,
) -> Result<AtomInvariants, AtomError> {
    if r < 2 {
        return Err(AtomError::Multiplicity(r));
    }
    let k = r - 1;
    Ok(AtomInvariants::new(
        base.label.clone(),
        base.rho + k * centre.rho,
        &base.hodge_poly + &centre.hodge_poly.scale(k as i64),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub t2_nonzero: bool,
    pub rho_below_three: bool,
}

impl Obstruction {
    pub fn of(atom: &AtomInvariants) -> Obstruction {
        Obstruction {
            t2_nonzero: atom.t2() != 0,
            rho_below_three: atom.rho < SURFACE_MIN_RHO,
        }
    }

    pub fn holds(&self) -> bool {
        self.t2_nonzero && self.rho_below_three
    }
}

pub fn obstruction_applies(atom: &AtomInvariants) -> bool {
    Obstruction::of(atom).holds()
}

/// Multisets of centres (at most `max_centres`, curve genus at most
/// `max_genus`) whose total `t²`-coefficient equals the target's without
/// exceeding its `ρ`. Surfaces are taken with the minimal `ρ`, and their
/// `h^{2,0}` ranges up to the target's `t²`-coefficient.
pub fn exclusion_search(
    target: &AtomInvariants,
    max_centres: usize,
    max_genus: u32,
) -> Vec<Vec<CentreModel>> {
    let want = target.t2();
    let mut options = vec![CentreModel::Point];
    options.extend((0..=max_genus).map(|genus| CentreModel::Curve { genus }));
    options.extend((0..=want.max(0) as u32).map(|h20| CentreModel::Surface {
        h20,
        h11: 1,
        h10: 0,
    }));
    let search = Search {
        contributions: options.iter().map(CentreModel::contribution).collect(),
        options,
        rho_cap: target.rho,
        want,
    };
    let mut out = Vec::new();
    search.walk(0, max_centres, 0, 0, &mut Vec::new(), &mut out);
    out
}

struct Search {
    options: Vec<CentreModel>,
    contributions: Vec<AtomInvariants>,
    rho_cap: u32,
    want: i64,
}

impl Search {
    /// Extends `current` with options from `start` on, so each multiset is
    /// visited once; every centre has `ρ ≥ 1`, which bounds the depth.
    fn walk(
        &self,
        start: usize,
        left: usize,
        rho: u32,
        t2: i64,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<CentreModel>>,
    ) {
        if !current.is_empty() && t2 == self.want {
            out.push(current.iter().map(|&i| self.options[i].clone()).collect());
        }
        if left == 0 {
            return;
        }
        for i in start..self.options.len() {
            let c = &self.contributions[i];
            let r = rho + c.rho;
            if r > self.rho_cap {
                continue;
            }
            current.push(i);
            self.walk(i, left - 1, r, t2 + c.t2(), current, out);
            current.pop();
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    IrrationalCertified,
    Inconclusive,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::IrrationalCertified => "IRRATIONAL_CERTIFIED",
            VerdictKind::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One placement of `T` with the obstruction evaluated on the atom that
/// contains it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseAnalysis {
    pub case: ZeroAtomCase,
    pub obstruction: Obstruction,
    pub realizations: Vec<Vec<CentreModel>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomAnalysis {
    pub transcendental: AtomInvariants,
    pub zero_dims: (u32, u32),
    pub cases: Vec<CaseAnalysis>,
    /// `(c, dimension)` for each nonzero eigenvalue pair `±√(c q)`, per block.
    pub nonzero: Vec<(String, Rat, u32)>,
    pub verdict: VerdictKind,
}

/// Search bounds used when recording exclusion in a certificate.
pub const SEARCH_CENTRES: usize = 4;
pub const SEARCH_GENUS: u32 = 4;

/// Decides the verdict: certified only when the obstruction holds for the
/// `T`-bearing atom in both placements.
pub fn certify(
    instance: &InstanceSpec,
    spectrum: &SpectrumReport,
) -> Result<AtomAnalysis, AtomError> {
    let t = transcendental_invariants(instance)?;
    let (plus_dim, minus_dim) = zero_dimensions(spectrum, instance);
    let cases: Vec<CaseAnalysis> = assemble_zero_atoms(&t, plus_dim, minus_dim)
        .into_iter()
        .map(|case| {
            let atom = case.t_bearing();
            CaseAnalysis {
                obstruction: Obstruction::of(atom),
                realizations: exclusion_search(atom, SEARCH_CENTRES, SEARCH_GENUS),
                case,
            }
        })
        .collect();
    let certified = cases
        .iter()
        .all(|c| c.obstruction.holds() && c.realizations.is_empty());
    let mut nonzero = Vec::new();
    for b in spectrum.blocks() {
        let mut squares = b.eigen_squares.clone();
        squares.dedup();
        for c in squares {
            let mult = b.eigen_squares.iter().filter(|x| **x == c).count() as u32;
            nonzero.push((b.label.clone(), c, 2 * mult));
        }
    }
    Ok(AtomAnalysis {
        transcendental: t,
        zero_dims: (plus_dim, minus_dim),
        cases,
        nonzero,
        verdict: if certified {
            VerdictKind::IrrationalCertified
        } else {
            VerdictKind::Inconclusive
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t_verra() -> AtomInvariants {
        AtomInvariants::new("T", 0, LaurentPoly::from_terms([(2, 1), (0, 19), (-2, 1)]))
    }

    #[test]
    fn transcendental_of_verra() {
        let t = transcendental_invariants(&InstanceSpec::verra()).unwrap();
        assert_eq!(t.rho, 0);
        assert_eq!(t.hodge_poly.to_string(), "t^2 + 19 + t^-2");
        assert_eq!(t.t2(), 1);
    }

    #[test]
    fn cleared_simplicity_is_unknown() {
        let mut inst = InstanceSpec::verra();
        inst.hodge.simple = None;
        assert_eq!(transcendental_invariants(&inst), Err(AtomError::RhoUnknown));
        inst.hodge.simple = Some(false);
        assert_eq!(transcendental_invariants(&inst), Err(AtomError::RhoUnknown));
    }

    #[test]
    fn empty_transcendental_part() {
        let mut inst = InstanceSpec::verra();
        inst.hodge.dim_t = 0;
        inst.hodge.t_decomposition = [0, 0, 0];
        inst.hodge.simple = None;
        let t = transcendental_invariants(&inst).unwrap();
        assert_eq!((t.rho, t.hodge_poly.is_zero()), (0, true));
    }

    #[test]
    fn both_placements() {
        let cases = assemble_zero_atoms(&t_verra(), 2, 1);
        assert_eq!(cases[0].plus.rho, 2);
        assert_eq!(cases[0].plus.hodge_poly.to_string(), "t^2 + 21 + t^-2");
        assert_eq!(cases[0].minus.hodge_poly.to_string(), "1");
        assert_eq!(cases[1].plus.hodge_poly.to_string(), "2");
        assert_eq!(cases[1].minus.hodge_poly.to_string(), "t^2 + 20 + t^-2");
        assert_eq!(cases[1].minus.rho, 1);
        assert!(cases.iter().all(|c| c.plus.rho == 2));
    }

    #[test]
    fn blowups() {
        let base = AtomInvariants::algebraic("X", 2);
        let b = blowup_combine(&base, &CentreModel::Point.contribution(), 4).unwrap();
        assert_eq!((b.rho, b.hodge_poly.to_string()), (5, "5".to_string()));
        let c = blowup_combine(&base, &CentreModel::Curve { genus: 0 }.contribution(), 2).unwrap();
        assert_eq!((c.rho, c.hodge_poly.coeff(0)), (4, 4));
        assert_eq!(
            blowup_combine(&base, &base, 1),
            Err(AtomError::Multiplicity(1))
        );
    }

    #[test]
    fn obstruction_examples() {
        let p = LaurentPoly::from_terms([(2, 1), (0, 21), (-2, 1)]);
        assert!(obstruction_applies(&AtomInvariants::new("a", 2, p.clone())));
        assert!(!obstruction_applies(&AtomInvariants::new("a", 3, p)));
        assert!(!obstruction_applies(&AtomInvariants::algebraic("a", 24)));
    }

    #[test]
    fn exclusion_examples() {
        let e0 = AtomInvariants::new("E", 2, LaurentPoly::from_terms([(2, 1), (0, 21), (-2, 1)]));
        assert!(exclusion_search(&e0, 6, 6).is_empty());
        let s = AtomInvariants::new("S", 3, LaurentPoly::from_terms([(2, 1), (0, 21), (-2, 1)]));
        let found = exclusion_search(&s, 2, 1);
        assert!(found.contains(&vec![CentreModel::Surface {
            h20: 1,
            h11: 1,
            h10: 0
        }]));
        let pt = AtomInvariants::algebraic("P", 1);
        assert_eq!(exclusion_search(&pt, 3, 3), vec![vec![CentreModel::Point]]);
    }

    #[test]
    fn surface_needs_ample_class() {
        assert_eq!(CentreModel::surface(1, 0, 0), Err(AtomError::Surface(0)));
        assert!(CentreModel::surface(1, 1, 0)
            .unwrap()
            .contribution()
            .is_consistent());
    }
}
