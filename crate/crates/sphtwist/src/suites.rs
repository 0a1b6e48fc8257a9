//! The two built-in verification suites for the hereditary D4 and A3
//! examples. Each suite bundles the ground-truth checks of those models:
//! relations verified by exhaustive vertex action, orbit structure,
//! exceptional-collapse detection and the classifier outcome.

use std::collections::BTreeMap;
use std::fmt;

use crate::groups::{classify_twist_group, BraidFamily, GroupDescription, GroupWord};
use crate::mesh::{build_mesh, Diagram, SphericalSequenceSpec, Vertex, Window};
use crate::twist::{
    apply_to_class, builtin_d4_actions, default_min_domain, derive_automorphism,
    detect_exceptional, orbit_sph, sph_class, verify_relation, word_action, CentralPowerAction,
    ExceptionalCase, QuiverAutomorphism, TwistError,
};

/// The sequence E of the D4 example: row-1 vertices, degrees (1, 1, 0).
pub fn d4_sequence_e() -> SphericalSequenceSpec {
    SphericalSequenceSpec::new(
        vec![1, 1, 0],
        vec![Vertex::new(1, 0), Vertex::new(1, -1), Vertex::new(1, -2)],
    )
}

/// The sequence E' of the D4 example: row-2 vertices, degrees (1, 1, 0).
pub fn d4_sequence_ep() -> SphericalSequenceSpec {
    SphericalSequenceSpec::new(
        vec![1, 1, 0],
        vec![Vertex::new(2, 1), Vertex::new(2, 0), Vertex::new(2, -1)],
    )
}

/// The sequence E of the A3 example: hub vertices, degrees (1, 0).
pub fn a3_sequence_e() -> SphericalSequenceSpec {
    SphericalSequenceSpec::new(vec![1, 0], vec![Vertex::new(0, 0), Vertex::new(0, -1)])
}

/// The sequence E' of the A3 example: spoke vertices, degrees (1, 0, 1, 0).
pub fn a3_sequence_ep() -> SphericalSequenceSpec {
    SphericalSequenceSpec::new(
        vec![1, 0, 1, 0],
        vec![
            Vertex::new(1, 0),
            Vertex::new(1, -1),
            Vertex::new(-1, 0),
            Vertex::new(-1, -1),
        ],
    )
}

pub const D4_DEFAULT_WINDOW: Window = Window { lo: -12, hi: 12 };
pub const A3_DEFAULT_WINDOW: Window = Window { lo: -12, hi: 12 };

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SuiteReport {
    pub checks: Vec<SuiteCheck>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn record(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(SuiteCheck {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    fn check(&mut self, name: &str, result: Result<(bool, String), TwistError>) {
        match result {
            Ok((passed, detail)) => self.record(name, passed, detail),
            Err(e) => self.record(name, false, format!("error: {e}")),
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {} - {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        write!(
            f,
            "{}: {} of {} checks passed",
            if self.passed() { "ok" } else { "FAILED" },
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len()
        )
    }
}

fn w(s: &str) -> GroupWord {
    s.parse().expect("suite words are well-formed")
}

/// Runs the full D4 example suite on the given window.
pub fn verify_d4(window: Window) -> SuiteReport {
    let mut report = SuiteReport::default();
    let model = match build_mesh(Diagram::D4, window) {
        Ok(m) => m,
        Err(e) => {
            report.record("build model", false, format!("error: {e}"));
            return report;
        }
    };
    let e = d4_sequence_e();
    let ep = d4_sequence_ep();
    for (name, spec) in [("sequence E", &e), ("sequence E'", &ep)] {
        let r = model.check_spherical(spec);
        report.record(
            &format!("{name} is spherical"),
            r.is_valid() && r.sphericity == 2 && r.length == 3,
            format!("length {}, sphericity {}", r.length, r.sphericity),
        );
    }
    let (te, tep) = match builtin_d4_actions(&model) {
        Ok(x) => x,
        Err(e) => {
            report.record("builtin actions", false, format!("error: {e}"));
            return report;
        }
    };
    let gens: BTreeMap<u8, QuiverAutomorphism> =
        [(1, te.clone()), (2, tep.clone())].into_iter().collect();
    let min = default_min_domain(&model);
    report.check(
        "braid relation s1 s2 s1 = s2 s1 s2",
        verify_relation(&model, &w("s1 s2 s1"), &w("s2 s1 s2"), &gens, min)
            .map(|ok| (ok, "verified on every vertex of the common domain".to_string())),
    );
    report.check(
        "squares s1^2 = s2^2",
        verify_relation(&model, &w("s1^2"), &w("s2^2"), &gens, min)
            .map(|ok| (ok, "verified on every vertex of the common domain".to_string())),
    );
    for a in 1..=6 {
        report.check(
            &format!("s1^{a} is not the identity"),
            verify_relation(
                &model,
                &GroupWord::from_letters([(1, a)]),
                &GroupWord::identity(),
                &gens,
                min,
            )
            .map(|equal| (!equal, "power acts nontrivially".to_string())),
        );
    }
    for (label, word) in [("s1", "s1^6"), ("s2", "s2^6")] {
        let result = word_action(&model, &w(word), &gens).map(|act| {
            let mut ok = act.domain_size() >= min;
            let mut row2 = 0usize;
            for (x, y) in act.entries() {
                if y != model.shift_n(x, 2) {
                    ok = false;
                }
                if x.row == 2 {
                    row2 += 1;
                }
            }
            (
                ok && row2 > 0,
                format!("checked {} vertices ({} on row 2)", act.domain_size(), row2),
            )
        });
        report.check(&format!("{label}^6 equals the double shift"), result);
    }
    // Derived actions reproduce the printed tables vertex by vertex.
    for (name, spec, builtin) in [("T_E", &e, &te), ("T_E'", &ep, &tep)] {
        let result = derive_automorphism(&model, spec).map(|derived| {
            let (equal, common) = derived.agrees_with(builtin);
            (
                equal && common > 0,
                format!("agrees on {common} vertices"),
            )
        });
        report.check(&format!("derived {name} matches the printed table"), result);
    }
    // Orbit of the two classes: three classes with a faithful S3 action.
    let seeds = [sph_class(&model, &e.members), sph_class(&model, &ep.members)];
    let orbit_result = orbit_sph(
        &model,
        &[("s1".to_string(), te.clone()), ("s2".to_string(), tep.clone())],
        &seeds,
        4,
    );
    match orbit_result {
        Ok(orbit) => {
            report.record(
                "orbit of {E, E'} has three classes",
                orbit.len() == 3,
                format!("found {}", orbit.len()),
            );
            let group_order = match (
                orbit.induced_permutation("s1"),
                orbit.induced_permutation("s2"),
            ) {
                (Some(p1), Some(p2)) => permutation_group_order(&[p1, p2]),
                _ => 0,
            };
            report.record(
                "induced permutations generate S3",
                group_order == 6,
                format!("group order {group_order}"),
            );
        }
        Err(e) => report.record("orbit of {E, E'}", false, format!("error: {e}")),
    }
    report.check(
        "T_E'^2 E ~ E (exceptional collapse)",
        detect_exceptional(&model, &e, &ep, ExceptionalCase::A)
            .map(|ok| (ok, "class equality after two twists".to_string())),
    );
    let classified = classify_twist_group(3, 2, 3, 2, 3);
    report.record(
        "classifier on (3,2,3,2,3)",
        classified == Ok(GroupDescription::ExceptionalA2OrS3Z),
        match classified {
            Ok(d) => format!("{d}"),
            Err(e) => format!("error: {e}"),
        },
    );
    // (T_E T_E')^3 equals the double shift, matching the member formula.
    let cube_result = word_action(&model, &w("(s1 s2)^3"), &gens).map(|act| {
        let mut ok = act.domain_size() >= min;
        for (x, y) in act.entries() {
            if y != model.shift_n(x, 2) {
                ok = false;
            }
        }
        let action = CentralPowerAction::new(BraidFamily::A2, e.degrees.clone());
        for i in 0..3 {
            let (idx, shift) = action.on_e_member(i);
            if idx != i || shift != 2 {
                ok = false;
            }
        }
        (ok, "double shift on vertices and on members".to_string())
    });
    report.check("(T_E T_E')^3 is the double shift", cube_result);
    match model.pair_stats(&e, &ep) {
        Ok(stats) => {
            report.record(
                "dimension statistics (a, a') = (1, 1), total 3",
                stats.a_e_ep == 1 && stats.a_ep_e == 1 && stats.total == 3 && stats.is_consistent(),
                format!(
                    "a = {}, a' = {}, total = {}",
                    stats.a_e_ep, stats.a_ep_e, stats.total
                ),
            );
            // End-to-end: classify from mesh-computed data.
            let classified = classify_twist_group(
                e.length() as u64,
                e.sphericity(),
                ep.length() as u64,
                ep.sphericity(),
                stats.total,
            );
            report.record(
                "classifier on mesh-computed data",
                classified == Ok(GroupDescription::ExceptionalA2OrS3Z),
                match classified {
                    Ok(d) => format!("{d}"),
                    Err(e) => format!("error: {e}"),
                },
            );
        }
        Err(e) => report.record("dimension statistics", false, format!("error: {e}")),
    }
    report
}

fn permutation_group_order(gens: &[Vec<usize>]) -> usize {
    let n = gens[0].len();
    let id: Vec<usize> = (0..n).collect();
    let mut seen = vec![id.clone()];
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q: Vec<usize> = (0..n).map(|i| g[p[i]]).collect();
            if !seen.contains(&q) {
                seen.push(q.clone());
                frontier.push(q);
            }
        }
    }
    seen.len()
}

/// Runs the full A3 example suite on the given window.
pub fn verify_a3(window: Window) -> SuiteReport {
    let mut report = SuiteReport::default();
    let model = match build_mesh(Diagram::A(3), window) {
        Ok(m) => m,
        Err(e) => {
            report.record("build model", false, format!("error: {e}"));
            return report;
        }
    };
    let e = a3_sequence_e();
    let ep = a3_sequence_ep();
    let re = model.check_spherical(&e);
    report.record(
        "sequence E is spherical",
        re.is_valid() && re.length == 2 && re.sphericity == 1,
        format!("length {}, sphericity {}", re.length, re.sphericity),
    );
    let rep = model.check_spherical(&ep);
    report.record(
        "sequence E' is spherical",
        rep.is_valid() && rep.length == 4 && rep.sphericity == 2,
        format!("length {}, sphericity {}", rep.length, rep.sphericity),
    );
    let te = match derive_automorphism(&model, &e) {
        Ok(a) => a,
        Err(err) => {
            report.record("derive T_E", false, format!("error: {err}"));
            return report;
        }
    };
    let tep = match derive_automorphism(&model, &ep) {
        Ok(a) => a,
        Err(err) => {
            report.record("derive T_E'", false, format!("error: {err}"));
            return report;
        }
    };
    // The derived tables: T_E flips the spoke rows, T_E' fixes them.
    let mut te_table_ok = true;
    let mut tep_table_ok = true;
    for (x, y) in te.entries() {
        if y != Vertex::new(-x.row, x.pos + 1) {
            te_table_ok = false;
        }
    }
    for (x, y) in tep.entries() {
        if y != Vertex::new(x.row, x.pos + 1) {
            tep_table_ok = false;
        }
    }
    report.record(
        "T_E maps (r,s) to (-r,s+1)",
        te_table_ok && te.domain_size() > 0,
        format!("checked {} vertices", te.domain_size()),
    );
    report.record(
        "T_E' maps (r,s) to (r,s+1)",
        tep_table_ok && tep.domain_size() > 0,
        format!("checked {} vertices", tep.domain_size()),
    );
    report.record(
        "T_E E'_0 = E'_1[1] = (-1,1)",
        te.apply(Vertex::new(1, 0)) == Some(Vertex::new(-1, 1)),
        format!("image {:?}", te.apply(Vertex::new(1, 0))),
    );
    let gens: BTreeMap<u8, QuiverAutomorphism> =
        [(1, te.clone()), (2, tep.clone())].into_iter().collect();
    let min = default_min_domain(&model);
    report.check(
        "T_E and T_E' commute",
        verify_relation(&model, &w("s1 s2"), &w("s2 s1"), &gens, min)
            .map(|ok| (ok, "verified on every vertex of the common domain".to_string())),
    );
    report.check(
        "T_E^2 = T_E'^2",
        verify_relation(&model, &w("s1^2"), &w("s2^2"), &gens, min)
            .map(|ok| (ok, "verified on every vertex of the common domain".to_string())),
    );
    report.check(
        "(T_E T_E'^-1)^2 is the identity",
        verify_relation(&model, &w("(s1 s2^-1)^2"), &GroupWord::identity(), &gens, min)
            .map(|ok| (ok, "order two".to_string())),
    );
    report.check(
        "T_E T_E'^-1 is not the identity",
        verify_relation(&model, &w("s1 s2^-1"), &GroupWord::identity(), &gens, min)
            .map(|equal| (!equal, "nontrivial involution".to_string())),
    );
    report.check(
        "T_E E' ~ E' (exceptional collapse)",
        detect_exceptional(&model, &e, &ep, ExceptionalCase::B)
            .map(|ok| (ok, "class is fixed by the twist".to_string())),
    );
    let classified = classify_twist_group(2, 1, 4, 2, 4);
    report.record(
        "classifier on (2,1,4,2,4)",
        classified == Ok(GroupDescription::ExceptionalB2OrZxZ),
        match classified {
            Ok(d) => format!("{d}"),
            Err(e) => format!("error: {e}"),
        },
    );
    let seeds = [sph_class(&model, &e.members), sph_class(&model, &ep.members)];
    match orbit_sph(
        &model,
        &[("s1".to_string(), te.clone()), ("s2".to_string(), tep.clone())],
        &seeds,
        5,
    ) {
        Ok(orbit) => report.record(
            "orbit of {E, E'} has two classes",
            orbit.len() == 2,
            format!("found {}", orbit.len()),
        ),
        Err(e) => report.record("orbit of {E, E'}", false, format!("error: {e}")),
    }
    // Class-level sanity: T_E'^2 fixes the class of E member-wise with a
    // genuine shift, mirroring the center computation.
    let class_e = sph_class(&model, &e.members);
    let sq = te.compose_after(&te).ok().and_then(|a| apply_to_class(&model, &a, &class_e).ok());
    report.record(
        "T_E^2 fixes the class of E",
        sq.as_ref() == Some(&class_e),
        format!("image {:?}", sq.map(|c| c.to_string())),
    );
    // End-to-end: classify from mesh-computed data (total hom is 2k = 4).
    match model.pair_stats(&e, &ep) {
        Ok(stats) => {
            let classified = classify_twist_group(
                e.length() as u64,
                e.sphericity(),
                ep.length() as u64,
                ep.sphericity(),
                stats.total,
            );
            report.record(
                "classifier on mesh-computed data",
                stats.total == 4
                    && stats.is_consistent()
                    && classified == Ok(GroupDescription::ExceptionalB2OrZxZ),
                match classified {
                    Ok(d) => format!("total = {}, {d}", stats.total),
                    Err(e) => format!("error: {e}"),
                },
            );
        }
        Err(e) => report.record("classifier on mesh-computed data", false, format!("error: {e}")),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d4_suite_passes() {
        let report = verify_d4(D4_DEFAULT_WINDOW);
        assert!(report.passed(), "{report}");
        assert!(report.checks.len() >= 15);
    }

    #[test]
    fn a3_suite_passes() {
        let report = verify_a3(A3_DEFAULT_WINDOW);
        assert!(report.passed(), "{report}");
        assert!(report.checks.len() >= 12);
    }

    #[test]
    fn too_small_window_fails_loudly() {
        let report = verify_d4(Window::new(0, 3));
        assert!(!report.passed());
    }
}
