//! Drivers that run the isomorphism checks on single instances and
//! exhaustively over all dissections of a polygon.

use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::accordion::{accordion_complex, compare_nested};
use crate::complexes::{self, iso_by_gvectors, structural_report, IsoStatus, LabeledComplex};
use crate::error::{Error, Result};
use crate::geometry::{enumerate_dissections, nonempty_subsets, Dissection};
use crate::par;
use crate::quiver::{self, quiver_of_dissection, GentleQuiver};
use crate::rigidity::{hom_shift, silting_complex, verify_idempotent_reduction_with, SiltingData};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    /// Accordion complex vs silting complex of the dissection quiver.
    Main,
    /// Induced silting subcomplex vs silting complex of the shortcut quiver.
    Idempotent,
    /// Accordion complex vs induced subcomplex of a finer dissection's.
    Nested,
    /// Shortcut quivers of dissection quivers, and the corner algebra check.
    Shortcut,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Theorem::Main => "main",
            Theorem::Idempotent => "idempotent",
            Theorem::Nested => "nested",
            Theorem::Shortcut => "shortcut",
        };
        f.write_str(s)
    }
}

/// Result of one check on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub theorem: Theorem,
    pub instance: String,
    pub status: IsoStatus,
    pub failures: Vec<String>,
    /// Structural property failures of the complexes involved.
    pub structure: Vec<String>,
}

impl CheckOutcome {
    pub fn iso_pass(&self) -> bool {
        self.status == IsoStatus::Pass && self.failures.is_empty()
    }

    pub fn pass(&self) -> bool {
        self.iso_pass() && self.structure.is_empty()
    }
}

fn structure_failures(tag: &str, c: &LabeledComplex, size: usize, out: &mut Vec<String>) {
    let r = structural_report(c, size);
    out.extend(r.failures().into_iter().map(|f| format!("{tag}: {f}")));
}

/// Accordion complex of `d` against the silting complex of its quiver,
/// matched by g-vectors, plus structural checks on both.
pub fn check_main(d: &Dissection) -> Result<CheckOutcome> {
    let acc = accordion_complex(d)?;
    let sil = silting_complex(&quiver_of_dissection(d)?)?;
    let iso = iso_by_gvectors(&acc, &sil, None)?;
    let mut structure = Vec::new();
    structure_failures("accordion", &acc, d.len(), &mut structure);
    structure_failures("silting", &sil, d.len(), &mut structure);
    Ok(CheckOutcome {
        theorem: Theorem::Main,
        instance: d.to_string(),
        status: iso.status,
        failures: iso.failures,
        structure,
    })
}

fn subset_name(q: &GentleQuiver, subset: &[usize]) -> String {
    let names: Vec<&str> = subset.iter().map(|&v| q.vertices()[v].as_str()).collect();
    format!("J={{{}}}", names.join(","))
}

/// Idempotent reduction for `q` and `subset`, with the silting complex of
/// `q` precomputed.
pub fn check_idempotent(
    q: &GentleQuiver,
    full: &LabeledComplex,
    subset: &[usize],
    context: &str,
) -> Result<CheckOutcome> {
    let iso = verify_idempotent_reduction_with(full, q, subset)?;
    let sc = quiver::shortcut_quiver(q, subset)?;
    let small = silting_complex(&sc.quiver)?;
    let mut structure = Vec::new();
    structure_failures("shortcut silting", &small, sc.subset.len(), &mut structure);
    let induced = complexes::induced_subcomplex(full, &sc.subset);
    structure_failures("induced silting", &induced, sc.subset.len(), &mut structure);
    Ok(CheckOutcome {
        theorem: Theorem::Idempotent,
        instance: format!("{context} {}", subset_name(q, subset)),
        status: iso.status,
        failures: iso.failures,
        structure,
    })
}

/// Every nonempty vertex subset of `q`.
pub fn idempotent_all(q: &GentleQuiver, context: &str) -> Result<Vec<CheckOutcome>> {
    let full = silting_complex(q)?;
    nonempty_subsets(q.num_vertices())
        .iter()
        .map(|j| check_idempotent(q, &full, j, context))
        .collect()
}

/// Nested check for the sub-dissection of `big_d` on `subset`, with the
/// accordion complex of `big_d` precomputed.
pub fn check_nested(
    big_d: &Dissection,
    big: &LabeledComplex,
    subset: &[usize],
) -> Result<CheckOutcome> {
    let small_d = big_d.restrict(subset);
    let small = accordion_complex(&small_d)?;
    let iso = compare_nested(&small, big, subset);
    let induced = complexes::induced_subcomplex(big, subset);
    let mut structure = Vec::new();
    structure_failures("induced accordion", &induced, subset.len(), &mut structure);
    structure_failures("accordion", &small, subset.len(), &mut structure);
    Ok(CheckOutcome {
        theorem: Theorem::Nested,
        instance: format!("{small_d} in {big_d}"),
        status: iso.status,
        failures: iso.failures,
        structure,
    })
}

/// The shortcut quiver of the quiver of `big_d` on `subset` against the
/// quiver of the sub-dissection, and the corner algebra check.
pub fn check_shortcut(big_d: &Dissection, subset: &[usize]) -> Result<CheckOutcome> {
    let small_d = big_d.restrict(subset);
    let q = quiver_of_dissection(big_d)?;
    let sc = quiver::shortcut_quiver(&q, subset)?;
    let mut failures = Vec::new();
    if sc.quiver.signature() != quiver_of_dissection(&small_d)?.signature() {
        failures.push("shortcut quiver differs from the sub-dissection quiver".to_string());
    }
    let report = quiver::idempotent_subalgebra_check(&q, subset)?;
    if !report.shortcut_gentle {
        failures.push("shortcut quiver is not gentle".to_string());
    }
    failures.extend(report.mismatches);
    Ok(CheckOutcome {
        theorem: Theorem::Shortcut,
        instance: format!("{small_d} in {big_d}"),
        status: if failures.is_empty() {
            IsoStatus::Pass
        } else {
            IsoStatus::NotIsomorphic
        },
        failures,
        structure: Vec::new(),
    })
}

/// Nested and shortcut checks for every nonempty sub-dissection of `d`.
pub fn nested_all(d: &Dissection) -> Result<Vec<CheckOutcome>> {
    let big = accordion_complex(d)?;
    let mut out = Vec::new();
    for subset in nonempty_subsets(d.len()) {
        out.push(check_nested(d, &big, &subset)?);
        out.push(check_shortcut(d, &subset)?);
    }
    Ok(out)
}

/// Which families of checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Selection {
    pub main: bool,
    pub idempotent: bool,
    pub nested: bool,
}

impl Selection {
    pub const ALL: Selection = Selection {
        main: true,
        idempotent: true,
        nested: true,
    };

    pub fn only(t: Theorem) -> Selection {
        Selection {
            main: t == Theorem::Main,
            idempotent: t == Theorem::Idempotent,
            nested: matches!(t, Theorem::Nested | Theorem::Shortcut),
        }
    }
}

/// All selected checks for one dissection.
pub fn checks_for_dissection(d: &Dissection, sel: Selection) -> Result<Vec<CheckOutcome>> {
    if d.is_empty() {
        return Err(Error::EmptyDissection);
    }
    let mut out = Vec::new();
    if sel.main {
        out.push(check_main(d)?);
    }
    if sel.idempotent {
        let q = quiver_of_dissection(d)?;
        out.extend(idempotent_all(&q, &d.to_string())?);
    }
    if sel.nested {
        out.extend(nested_all(d)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub instances: usize,
    pub checks: usize,
    pub passed: usize,
    /// Per-theorem counts of checks run.
    pub by_theorem: Vec<(Theorem, usize)>,
    pub failures: Vec<CheckOutcome>,
}

impl Summary {
    pub fn pass(&self) -> bool {
        self.failures.is_empty() && self.passed == self.checks
    }

    pub fn absorb(&mut self, outcomes: Vec<CheckOutcome>) {
        self.instances += 1;
        for o in outcomes {
            self.checks += 1;
            match self.by_theorem.iter_mut().find(|(t, _)| *t == o.theorem) {
                Some((_, n)) => *n += 1,
                None => self.by_theorem.push((o.theorem, 1)),
            }
            if o.pass() {
                self.passed += 1;
            } else {
                self.failures.push(o);
            }
        }
    }
}

/// Runs the selected checks over every nonempty dissection of the `m`-gon,
/// or only over those accepted by `filter`.
pub fn exhaustive(
    m: usize,
    sel: Selection,
    filter: impl Fn(&Dissection) -> bool + Sync + Send,
) -> Result<Summary> {
    let ds: Vec<Dissection> = enumerate_dissections(m)?
        .into_iter()
        .filter(|d| !d.is_empty() && filter(d))
        .collect();
    let results = par::map(&ds, |d| checks_for_dissection(d, sel));
    let mut summary = Summary::default();
    for r in results {
        summary.absorb(r?);
    }
    Ok(summary)
}

/// Randomized check that rigidity of a direct sum is decided pairwise:
/// `hom_shift(⊕X_i, ⊕X_i)` equals the sum of `hom_shift(X_i, X_j)`.
/// Returns descriptions of disagreements.
pub fn direct_sum_spot_checks(q: &GentleQuiver, seed: u64, samples: usize) -> Result<Vec<String>> {
    let data = SiltingData::compute(q)?;
    let n = data.vertices.len();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..samples {
        let k = rng.random_range(1..=n.min(4));
        let picks: Vec<usize> = (0..k).map(|_| rng.random_range(0..n)).collect();
        let sum = picks[1..]
            .iter()
            .fold(data.vertices[picks[0]].complex.clone(), |acc, &i| {
                acc.direct_sum(&data.vertices[i].complex)
            });
        let whole = hom_shift(&data.algebra, &sum, &sum)?;
        let parts: usize = picks
            .iter()
            .flat_map(|&i| picks.iter().map(move |&j| (i, j)))
            .map(|(i, j)| data.hom[i][j])
            .sum();
        if whole != parts {
            out.push(format!("summands {picks:?}: {whole} != {parts}"));
        }
    }
    Ok(out)
}
