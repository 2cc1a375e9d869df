//! Declarative instance files.
//!
//! The format is a sequence of `[section]` headers followed by `key = value`
//! lines. `#` starts a comment. Sections: `meta` (optional), `ring`,
//! `involution`, `hodge`, `quantum`, `period`, `run`.
//!
//! ```text
//! [ring]
//! generators = 2
//! nilpotency = 3
//! pairing = 2/1
//! [involution]
//! swap = H1:H2
//! [hodge]
//! h31 = 1
//! middle = 24
//! dimT = 21
//! tdecomp = 1,19,1
//! simple = true
//! [quantum]
//! N = -4/1
//! enumerative = t,u
//! component = 5
//! param_names = s@(0,1),t@(1,2),u@(1,3),v@(0,4)
//! [period]
//! source = verra-eq3
//! [run]
//! order = 16
//! ```
//!
//! Optional keys: `meta.name`, `meta.weights` (rows separated by `;`),
//! `period.coefficients` (for `source = explicit`), `period.regularized`,
//! and the diagnostic overrides `run.zero_dim_plus` / `run.zero_dim_minus`.

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

use crate::algebra::Rat;
use crate::cohomology::AmbientRing;
use crate::qde::{PeriodSource, PeriodSpec, RegularizedSource, VERRA_PERIOD_TAG};

pub const VERRA_INSTANCE: &str = include_str!("../instances/verra.inst");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing section [{0}]")]
    MissingSection(String),
    #[error("[{section}] missing field `{field}`")]
    MissingField { section: String, field: String },
    #[error("[{section}] invalid `{field}`: {message}")]
    Invalid {
        section: String,
        field: String,
        message: String,
    },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub generators: u32,
    pub nilpotency: u32,
    pub pairing: Rat,
    /// Toric weight matrix, carried as metadata only.
    pub weights: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeSpec {
    pub h31: u32,
    pub middle: u32,
    pub dim_t: u32,
    /// Dimensions of the (3,1), (2,2) and (1,3) parts of the transcendental
    /// lattice.
    pub t_decomposition: [u32; 3],
    /// `None` when the file does not state whether `T` is simple.
    pub simple: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumSpec {
    /// The antisymmetric three-point invariant.
    pub n_invariant: Rat,
    pub enumerative: Vec<String>,
    /// Basis index used as the cyclic vector for elimination.
    pub component: usize,
    /// Names for the surviving symmetric unknowns, keyed by the matrix
    /// position that anchors them.
    pub param_names: Vec<(String, (usize, usize))>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunSpec {
    pub order: usize,
    pub zero_dim_plus: Option<u32>,
    pub zero_dim_minus: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceSpec {
    pub name: String,
    pub ring: RingSpec,
    pub swap: (String, String),
    pub hodge: HodgeSpec,
    pub quantum: QuantumSpec,
    pub period: PeriodSpec,
    pub regularized: Option<RegularizedSource>,
    pub run: RunSpec,
}

impl InstanceSpec {
    pub fn ambient_ring(&self) -> AmbientRing {
        AmbientRing::new(self.ring.nilpotency, self.ring.pairing.clone())
    }

    /// The bundled Verra instance.
    pub fn verra() -> InstanceSpec {
        parse_instance(VERRA_INSTANCE).expect("bundled instance is valid")
    }
}

type Sections = BTreeMap<String, (usize, BTreeMap<String, (usize, String)>)>;

fn split_sections(text: &str) -> Result<Sections, InstanceError> {
    let mut sections: Sections = BTreeMap::new();
    let mut current: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let name = rest.strip_suffix(']').ok_or_else(|| InstanceError::Parse {
                line: line_no,
                message: format!("malformed section header `{}`", line),
            })?;
            let name = name.trim().to_string();
            if name.is_empty() {
                return Err(InstanceError::Parse {
                    line: line_no,
                    message: "empty section name".into(),
                });
            }
            if sections.contains_key(&name) {
                return Err(InstanceError::Parse {
                    line: line_no,
                    message: format!("duplicate section [{}]", name),
                });
            }
            sections.insert(name.clone(), (line_no, BTreeMap::new()));
            current = Some(name);
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(InstanceError::Parse {
                line: line_no,
                message: format!("expected `key = value`, found `{}`", line),
            });
        };
        let Some(section) = current.as_ref() else {
            return Err(InstanceError::Parse {
                line: line_no,
                message: "key outside of any section".into(),
            });
        };
        let key = key.trim().to_string();
        if key.is_empty() {
            return Err(InstanceError::Parse {
                line: line_no,
                message: "empty key".into(),
            });
        }
        let entries = &mut sections.get_mut(section).expect("section exists").1;
        if entries.contains_key(&key) {
            return Err(InstanceError::Parse {
                line: line_no,
                message: format!("duplicate key `{}`", key),
            });
        }
        entries.insert(key, (line_no, value.trim().to_string()));
    }
    Ok(sections)
}

struct Section<'a> {
    name: &'a str,
    entries: &'a BTreeMap<String, (usize, String)>,
}

impl<'a> Section<'a> {
    fn invalid(&self, field: &str, message: impl Into<String>) -> InstanceError {
        InstanceError::Invalid {
            section: self.name.to_string(),
            field: field.to_string(),
            message: message.into(),
        }
    }

    fn optional(&self, field: &str) -> Option<&'a str> {
        self.entries.get(field).map(|(_, v)| v.as_str())
    }

    fn required(&self, field: &str) -> Result<&'a str, InstanceError> {
        self.optional(field)
            .ok_or_else(|| InstanceError::MissingField {
                section: self.name.to_string(),
                field: field.to_string(),
            })
    }

    fn int<T: std::str::FromStr>(&self, field: &str) -> Result<T, InstanceError> {
        let v = self.required(field)?;
        v.parse()
            .map_err(|_| self.invalid(field, format!("`{}` is not a non-negative integer", v)))
    }

    fn opt_int<T: std::str::FromStr>(&self, field: &str) -> Result<Option<T>, InstanceError> {
        match self.optional(field) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| self.invalid(field, format!("`{}` is not a non-negative integer", v))),
        }
    }

    fn rat(&self, field: &str) -> Result<Rat, InstanceError> {
        let v = self.required(field)?;
        v.parse().map_err(|e| self.invalid(field, format!("{}", e)))
    }

    fn check_known(&self, known: &[&str]) -> Result<(), InstanceError> {
        for (key, (line, _)) in self.entries {
            if !known.contains(&key.as_str()) {
                return Err(InstanceError::Parse {
                    line: *line,
                    message: format!("unknown key `{}` in [{}]", key, self.name),
                });
            }
        }
        Ok(())
    }
}

fn parse_list<T, F>(s: &str, sep: char, f: F) -> Option<Vec<T>>
where
    F: Fn(&str) -> Option<T>,
{
    s.split(sep).map(|x| f(x.trim())).collect()
}

/// Parses `s@(0,1),t@(1,2)`.
fn parse_param_names(s: &str) -> Option<Vec<(String, (usize, usize))>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let (name, after) = rest.split_once('@')?;
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return None;
        }
        let after = after.trim_start().strip_prefix('(')?;
        let (inner, tail) = after.split_once(')')?;
        let (a, b) = inner.split_once(',')?;
        let pos = (a.trim().parse().ok()?, b.trim().parse().ok()?);
        out.push((name.to_string(), pos));
        let tail = tail.trim_start();
        rest = match tail.strip_prefix(',') {
            Some(t) => t.trim_start(),
            None if tail.is_empty() => tail,
            None => return None,
        };
    }
    Some(out)
}

/// Parses and validates an instance file body.
pub fn parse_instance(text: &str) -> Result<InstanceSpec, InstanceError> {
    let sections = split_sections(text)?;
    for (name, (line, _)) in &sections {
        if ![
            "meta",
            "ring",
            "involution",
            "hodge",
            "quantum",
            "period",
            "run",
        ]
        .contains(&name.as_str())
        {
            return Err(InstanceError::Parse {
                line: *line,
                message: format!("unknown section [{}]", name),
            });
        }
    }
    let empty = BTreeMap::new();
    let get = |name: &'static str, required: bool| -> Result<Section<'_>, InstanceError> {
        match sections.get(name) {
            Some((_, entries)) => Ok(Section { name, entries }),
            None if !required => Ok(Section {
                name,
                entries: &empty,
            }),
            None => Err(InstanceError::MissingSection(name.to_string())),
        }
    };

    let meta = get("meta", false)?;
    meta.check_known(&["name", "weights"])?;
    let name = meta.optional("name").unwrap_or("unnamed").to_string();
    let weights = match meta.optional("weights") {
        None => None,
        Some(w) => Some(
            parse_list(w, ';', |row| {
                parse_list(row, ',', |x| x.parse::<i64>().ok())
            })
            .ok_or_else(|| meta.invalid("weights", "expected integer rows separated by `;`"))?,
        ),
    };

    let ring_s = get("ring", true)?;
    ring_s.check_known(&["generators", "nilpotency", "pairing"])?;
    let generators: u32 = ring_s.int("generators")?;
    if generators != 2 {
        return Err(ring_s.invalid("generators", "only two generators are supported"));
    }
    let nilpotency: u32 = ring_s.int("nilpotency")?;
    if !(2..=8).contains(&nilpotency) {
        return Err(ring_s.invalid("nilpotency", "must lie in 2..=8"));
    }
    let pairing = ring_s.rat("pairing")?;
    if !pairing.is_positive() {
        return Err(ring_s.invalid("pairing", "pairing normalization must be positive"));
    }
    let ring = RingSpec {
        generators,
        nilpotency,
        pairing,
        weights,
    };

    let inv = get("involution", true)?;
    inv.check_known(&["swap"])?;
    let swap = inv.required("swap")?;
    let swap = match swap.split_once(':') {
        Some((a, b)) => (a.trim().to_string(), b.trim().to_string()),
        None => return Err(inv.invalid("swap", "expected `A:B`")),
    };
    let ok_swap = (swap.0 == "H1" && swap.1 == "H2") || (swap.0 == "H2" && swap.1 == "H1");
    if !ok_swap {
        return Err(inv.invalid("swap", "the involution must exchange H1 and H2"));
    }

    let hodge_s = get("hodge", true)?;
    hodge_s.check_known(&["h31", "middle", "dimT", "tdecomp", "simple"])?;
    let tdecomp = parse_list(hodge_s.required("tdecomp")?, ',', |x| x.parse::<u32>().ok())
        .filter(|v| v.len() == 3)
        .ok_or_else(|| hodge_s.invalid("tdecomp", "expected three non-negative integers"))?;
    let simple = match hodge_s.optional("simple") {
        None => None,
        Some("true") => Some(true),
        Some("false") => Some(false),
        Some(other) => {
            return Err(hodge_s.invalid("simple", format!("`{}` is not a boolean", other)))
        }
    };
    let hodge = HodgeSpec {
        h31: hodge_s.int("h31")?,
        middle: hodge_s.int("middle")?,
        dim_t: hodge_s.int("dimT")?,
        t_decomposition: [tdecomp[0], tdecomp[1], tdecomp[2]],
        simple,
    };
    let tsum: u64 = tdecomp.iter().map(|&x| x as u64).sum();
    if tsum != hodge.dim_t as u64 {
        return Err(hodge_s.invalid(
            "tdecomp",
            format!("decomposition sums to {} but dimT = {}", tsum, hodge.dim_t),
        ));
    }
    if tdecomp[0] != tdecomp[2] {
        return Err(hodge_s.invalid("tdecomp", "outer Hodge numbers must agree"));
    }
    if tdecomp[0] != hodge.h31 {
        return Err(hodge_s.invalid(
            "h31",
            "must equal the (3,1) part of the transcendental lattice",
        ));
    }
    let alg_rank = AmbientRing::new(nilpotency, Rat::one()).middle_rank() as u64;
    if hodge.dim_t as u64 + alg_rank != hodge.middle as u64 {
        return Err(hodge_s.invalid(
            "middle",
            format!(
                "dimT + algebraic rank = {} + {} ≠ {}",
                hodge.dim_t, alg_rank, hodge.middle
            ),
        ));
    }

    let qs = get("quantum", true)?;
    qs.check_known(&["N", "enumerative", "component", "param_names"])?;
    let param_names = parse_param_names(qs.required("param_names")?)
        .ok_or_else(|| qs.invalid("param_names", "expected `name@(row,col)` items"))?;
    let mut seen = std::collections::BTreeSet::new();
    for (n, _) in &param_names {
        if !seen.insert(n.clone()) {
            return Err(qs.invalid("param_names", format!("duplicate name `{}`", n)));
        }
        if n == "q" {
            return Err(qs.invalid("param_names", "`q` is reserved for the Novikov variable"));
        }
    }
    let enumerative: Vec<String> = match qs.optional("enumerative") {
        None | Some("") => Vec::new(),
        Some(e) => e.split(',').map(|x| x.trim().to_string()).collect(),
    };
    for e in &enumerative {
        if !seen.contains(e) {
            return Err(qs.invalid("enumerative", format!("`{}` is not a named parameter", e)));
        }
    }
    let sym_dim = (nilpotency * (nilpotency + 1) / 2) as usize;
    let component: usize = qs.int("component")?;
    if component >= sym_dim {
        return Err(qs.invalid("component", format!("must be below {}", sym_dim)));
    }
    for (n, (r, c)) in &param_names {
        if *r >= sym_dim || *c >= sym_dim {
            return Err(qs.invalid(
                "param_names",
                format!("position of `{}` is out of range", n),
            ));
        }
    }
    let quantum = QuantumSpec {
        n_invariant: qs.rat("N")?,
        enumerative,
        component,
        param_names,
    };

    let ps = get("period", true)?;
    ps.check_known(&["source", "coefficients", "regularized"])?;
    let source = match ps.required("source")? {
        VERRA_PERIOD_TAG => PeriodSource::VerraDoubleCover,
        "explicit" => {
            let c = parse_list(ps.required("coefficients")?, ',', |x| x.parse::<Rat>().ok())
                .ok_or_else(|| ps.invalid("coefficients", "expected rationals separated by `,`"))?;
            if c.first().is_none_or(|c0| !c0.is_one()) {
                return Err(ps.invalid("coefficients", "leading coefficient must be 1"));
            }
            PeriodSource::Explicit(c)
        }
        other => return Err(ps.invalid("source", format!("unknown period source `{}`", other))),
    };
    let regularized = match ps.optional("regularized") {
        None => None,
        Some(tag) => Some(
            RegularizedSource::from_tag(tag)
                .ok_or_else(|| ps.invalid("regularized", format!("unknown operator `{}`", tag)))?,
        ),
    };

    let rs = get("run", true)?;
    rs.check_known(&["order", "zero_dim_plus", "zero_dim_minus"])?;
    let order: usize = rs.int("order")?;
    if order > 64 {
        return Err(rs.invalid("order", "truncation order above 64 is not supported"));
    }
    let run = RunSpec {
        order,
        zero_dim_plus: rs.opt_int("zero_dim_plus")?,
        zero_dim_minus: rs.opt_int("zero_dim_minus")?,
    };
    if let PeriodSource::Explicit(c) = &source {
        if c.len() <= order {
            return Err(ps.invalid(
                "coefficients",
                format!("need at least {} coefficients", order + 1),
            ));
        }
    }

    Ok(InstanceSpec {
        name,
        ring,
        swap,
        hodge,
        quantum,
        period: PeriodSpec { source },
        regularized,
        run,
    })
}

/// Loads an instance from a path, or the bundled instance when `path` is
/// the bare name `verra`.
pub fn load_instance(path: &Path) -> Result<InstanceSpec, InstanceError> {
    if path.as_os_str() == "verra" && !path.exists() {
        return parse_instance(VERRA_INSTANCE);
    }
    let text = std::fs::read_to_string(path).map_err(|e| InstanceError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_instance(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_instance() {
        let spec = InstanceSpec::verra();
        assert_eq!(spec.ring.pairing, Rat::from(2));
        assert_eq!(spec.quantum.n_invariant, Rat::from(-4));
        assert_eq!(spec.hodge.h31, 1);
        assert_eq!(spec.hodge.simple, Some(true));
        assert_eq!(spec.quantum.param_names[3], ("v".to_string(), (0, 4)));
        assert_eq!(
            spec.ring.weights.as_ref().unwrap()[1],
            vec![0, 0, 0, 1, 1, 1, 1]
        );
        assert_eq!(spec.run.order, 16);
    }

    #[test]
    fn bad_decomposition_names_hodge() {
        let text = VERRA_INSTANCE.replace("tdecomp = 1,19,1", "tdecomp = 1,18,1");
        match parse_instance(&text) {
            Err(InstanceError::Invalid { section, field, .. }) => {
                assert_eq!(section, "hodge");
                assert_eq!(field, "tdecomp");
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn missing_quantum_section() {
        let start = VERRA_INSTANCE.find("[quantum]").unwrap();
        let end = VERRA_INSTANCE.find("[period]").unwrap();
        let text = format!("{}{}", &VERRA_INSTANCE[..start], &VERRA_INSTANCE[end..]);
        assert_eq!(
            parse_instance(&text),
            Err(InstanceError::MissingSection("quantum".into()))
        );
    }

    #[test]
    fn parse_errors_carry_lines() {
        assert!(matches!(
            parse_instance("[ring]\ngenerators 2\n"),
            Err(InstanceError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_instance("x = 1"),
            Err(InstanceError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_instance("[ring]\n[ring]\n"),
            Err(InstanceError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn param_name_lists() {
        assert_eq!(
            parse_param_names("s@(0,1), t@( 1 , 2 )"),
            Some(vec![("s".into(), (0, 1)), ("t".into(), (1, 2))])
        );
        assert_eq!(parse_param_names("s@(0,1"), None);
        assert_eq!(parse_param_names("s(0,1)"), None);
        assert_eq!(parse_param_names("s@(0,1)x"), None);
    }

    #[test]
    fn unknown_simplicity_is_none() {
        let text = VERRA_INSTANCE.replace("simple = true\n", "");
        assert_eq!(parse_instance(&text).unwrap().hodge.simple, None);
    }
}
