//! Symbolic checks on a built resolution.

use std::collections::HashMap;

use itertools::Itertools;
use serde::Serialize;

use super::GradedResolution;
use crate::polyalg::{pfaffian4, GradingViolation, Poly};
use crate::presentation::ClassTag;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexFailure {
    /// `i` for the product `phi_i * phi_{i+1}`.
    pub product: usize,
    pub row: usize,
    pub col: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexReport {
    pub passed: bool,
    pub failures: Vec<ComplexFailure>,
    /// `(map index, violation)` for entries that break the grading.
    pub grading_violations: Vec<(usize, GradingViolation)>,
    pub shape_errors: Vec<String>,
}

/// Checks `phi_i * phi_{i+1} = 0` entry by entry and revalidates the grading
/// of every map.
pub fn verify_complex(r: &GradedResolution) -> ComplexReport {
    let mut failures = Vec::new();
    let mut shape_errors = Vec::new();
    let mut grading_violations = Vec::new();
    for (i, m) in r.maps.iter().enumerate() {
        for v in m.grading_violations() {
            grading_violations.push((i + 1, v));
        }
    }
    for (i, pair) in r.maps.windows(2).enumerate() {
        match pair[0].mat_mul(&pair[1]) {
            Ok(p) => {
                for (row, entries) in p.entries().iter().enumerate() {
                    for (col, e) in entries.iter().enumerate() {
                        if !e.is_zero() {
                            failures.push(ComplexFailure {
                                product: i + 1,
                                row,
                                col,
                                value: e.to_string(),
                            });
                        }
                    }
                }
            }
            Err(e) => shape_errors.push(format!("phi_{} * phi_{}: {e}", i + 1, i + 2)),
        }
    }
    if r.maps.first().is_none_or(|m| m.row_degrees() != [0]) {
        shape_errors.push("phi_1 must map onto A with twist 0".into());
    }
    ComplexReport {
        passed: failures.is_empty() && shape_errors.is_empty() && grading_violations.is_empty(),
        failures,
        grading_violations,
        shape_errors,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PfaffianCheck {
    /// One-based `i` of `Delta_ii`.
    pub index: usize,
    pub expected_sign: i8,
    pub pfaffian: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PfaffianReport {
    pub applicable: bool,
    pub alternating: bool,
    pub pfaffians: Vec<PfaffianCheck>,
    pub det_11_is_f1_squared: bool,
    pub det_22_is_f2_squared: bool,
    pub phi3_is_phi1_transpose: bool,
    pub passed: bool,
}

/// Pfaffian structure of the middle map for four-generated symmetric
/// semigroups that are not complete intersections: `phi_2` alternating,
/// `pf(Delta_ii) = f_i` for odd `i` and `-f_i` for even `i`, and
/// `phi_3 = phi_1^t`.
pub fn verify_pfaffian(r: &GradedResolution) -> PfaffianReport {
    let mut report = PfaffianReport {
        applicable: r.class == ClassTag::FourGenSymmetricNonCI,
        alternating: false,
        pfaffians: Vec::new(),
        det_11_is_f1_squared: false,
        det_22_is_f2_squared: false,
        phi3_is_phi1_transpose: false,
        passed: false,
    };
    if !report.applicable {
        return report;
    }
    let phi2 = r.map(2);
    let f = &r.ideal;
    let n = phi2.rows();
    report.alternating = phi2.cols() == n
        && (0..n).all(|i| {
            phi2.get(i, i).is_zero() && (0..n).all(|j| *phi2.get(i, j) == -phi2.get(j, i))
        });
    let delta = |i: usize| {
        let keep: Vec<usize> = (0..n).filter(|&x| x != i).collect();
        phi2.submatrix(&keep, &keep)
    };
    for i in 0..n {
        let expected_sign: i8 = if i % 2 == 0 { 1 } else { -1 };
        let (pfaffian, holds) = match pfaffian4(&delta(i)) {
            Ok(p) => {
                let holds = p == f[i].scale(expected_sign as i128);
                (p.to_string(), holds)
            }
            Err(e) => (e.to_string(), false),
        };
        report.pfaffians.push(PfaffianCheck {
            index: i + 1,
            expected_sign,
            pfaffian,
            holds,
        });
    }
    let ring = phi2.ring();
    report.det_11_is_f1_squared = crate::polyalg::determinant(ring, &delta(0)) == &f[0] * &f[0];
    report.det_22_is_f2_squared = crate::polyalg::determinant(ring, &delta(1)) == &f[1] * &f[1];
    let phi3 = r.map(3);
    report.phi3_is_phi1_transpose =
        phi3.cols() == 1 && phi3.rows() == f.len() && (0..f.len()).all(|i| *phi3.get(i, 0) == f[i]);
    report.passed = report.alternating
        && report.pfaffians.iter().all(|p| p.holds)
        && report.det_11_is_f1_squared
        && report.det_22_is_f2_squared
        && report.phi3_is_phi1_transpose;
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoMinorCheck {
    pub label: String,
    /// Rows (zero-based) of `phi_3` whose 2-minor equals the element up to sign.
    pub rows: Option<(usize, usize)>,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FourMinorMatch {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// Factorisation `c * f_i * f_j ...` in role labels.
    pub factor: String,
    pub sign: i8,
    pub minor: String,
    #[serde(skip)]
    monomial_role: Option<usize>,
    #[serde(skip)]
    f_indices: Vec<usize>,
}

impl FourMinorMatch {
    fn coprime_with(&self, other: &FourMinorMatch) -> bool {
        let var_clash = matches!(
            (self.monomial_role, other.monomial_role),
            (Some(a), Some(b)) if a == b
        );
        !var_clash && !self.f_indices.iter().any(|i| other.f_indices.contains(i))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub applicable: bool,
    pub two_minors: Vec<TwoMinorCheck>,
    pub all_two_minors_found: bool,
    /// Every 4-minor of `phi_2` that factors as a variable (or 1) times a
    /// product of at most three of the `f_i`.
    pub four_minor_matches: Vec<FourMinorMatch>,
    /// Whether each of `x3*f3^3`, `x3*f3^2`, `x2*f2*f4` occurs as a 4-minor up to sign.
    pub named_products: Vec<(String, bool)>,
    pub coprime_pair: Option<(FourMinorMatch, FourMinorMatch)>,
    pub passed: bool,
}

/// Minor witnesses for four-generated pseudosymmetric semigroups.
///
/// Confirms that `f1, f4, f5, x3*f2, x3*f3` are 2-minors of `phi_3` up to
/// sign, enumerates the 4-minors of `phi_2` and factors the ones of the form
/// `c * prod f_i`, and picks two relatively prime ones.
pub fn verify_witness_minors(r: &GradedResolution) -> WitnessReport {
    let mut report = WitnessReport {
        applicable: r.class == ClassTag::FourGenPseudosymmetric,
        two_minors: Vec::new(),
        all_two_minors_found: false,
        four_minor_matches: Vec::new(),
        named_products: Vec::new(),
        coprime_pair: None,
        passed: false,
    };
    if !report.applicable {
        return report;
    }
    let ring = r.map(1).ring().clone();
    let x = |role: usize| ring.var(r.roles[role - 1]).expect("role in range");
    let f = &r.ideal;

    let phi3 = r.map(3);
    let two_minors: Vec<((usize, usize), Poly)> = (0..phi3.rows())
        .tuple_combinations()
        .map(|(a, b)| ((a, b), phi3.minor(&[a, b], &[0, 1]).expect("square")))
        .collect();
    let targets = [
        ("f1".to_string(), f[0].clone()),
        ("f4".to_string(), f[3].clone()),
        ("f5".to_string(), f[4].clone()),
        ("x3*f2".to_string(), &x(3) * &f[1]),
        ("x3*f3".to_string(), &x(3) * &f[2]),
    ];
    for (label, t) in targets {
        let neg = -&t;
        let hit = two_minors.iter().find_map(|(rows, m)| {
            if *m == t {
                Some((*rows, 1))
            } else if *m == neg {
                Some((*rows, -1))
            } else {
                None
            }
        });
        report.two_minors.push(TwoMinorCheck {
            label,
            rows: hit.map(|h| h.0),
            sign: hit.map_or(0, |h| h.1),
        });
    }
    report.all_two_minors_found = report.two_minors.iter().all(|c| c.rows.is_some());

    let mut candidates: HashMap<Poly, (String, Option<usize>, Vec<usize>)> = HashMap::new();
    for role in [None, Some(1), Some(2), Some(3), Some(4)] {
        let (c, c_label) = match role {
            None => (ring.one(), String::new()),
            Some(v) => (x(v), format!("x{v}*")),
        };
        for size in 1..=3 {
            for idx in (0..f.len()).combinations_with_replacement(size) {
                let prod = idx.iter().fold(c.clone(), |acc, &i| &acc * &f[i]);
                let label = format!("{c_label}{}", f_product_label(&idx));
                candidates.entry(prod).or_insert((label, role, idx));
            }
        }
    }
    let phi2 = r.map(2);
    for rows in (0..phi2.rows()).combinations(4) {
        for cols in (0..phi2.cols()).combinations(4) {
            let m = phi2.minor(&rows, &cols).expect("square");
            if m.is_zero() {
                continue;
            }
            let (hit, sign) = match candidates.get(&m) {
                Some(h) => (Some(h), 1),
                None => (candidates.get(&-&m), -1),
            };
            if let Some((label, role, idx)) = hit {
                report.four_minor_matches.push(FourMinorMatch {
                    rows: rows.clone(),
                    cols: cols.clone(),
                    factor: label.clone(),
                    sign,
                    minor: m.to_string(),
                    monomial_role: *role,
                    f_indices: idx.clone(),
                });
            }
        }
    }
    for name in ["x3*f3^3", "x3*f3^2", "x2*f2*f4"] {
        let found = report.four_minor_matches.iter().any(|m| m.factor == name);
        report.named_products.push((name.to_string(), found));
    }
    let find = |name: &str| report.four_minor_matches.iter().find(|m| m.factor == name);
    report.coprime_pair = match (find("x3*f3^2"), find("x2*f2*f4")) {
        (Some(a), Some(b)) if a.coprime_with(b) => Some((a.clone(), b.clone())),
        _ => report
            .four_minor_matches
            .iter()
            .tuple_combinations()
            .find(|(a, b)| a.coprime_with(b))
            .map(|(a, b)| (a.clone(), b.clone())),
    };
    report.passed = report.all_two_minors_found && report.coprime_pair.is_some();
    report
}

fn f_product_label(idx: &[usize]) -> String {
    idx.iter()
        .chunk_by(|&&i| i)
        .into_iter()
        .map(|(i, g)| match g.count() {
            1 => format!("f{}", i + 1),
            e => format!("f{}^{e}", i + 1),
        })
        .join("*")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityPair {
    pub level: usize,
    pub j: usize,
    pub left: u64,
    pub right: u64,
    pub sum: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub applicable: bool,
    pub s0: u64,
    pub betti_symmetric: bool,
    pub pairs: Vec<DualityPair>,
    pub passed: bool,
}

/// `s_{i,j} + s_{k-1-i, b_i - j + 1} = s_0` with every level sorted
/// ascending, for the Gorenstein (symmetric) families.
pub fn duality_check(r: &GradedResolution) -> DualityReport {
    let levels = r.betti_degrees();
    let top = levels.len() - 1;
    let applicable = r.class.is_symmetric_family();
    let s0 = if levels[top].len() == 1 {
        levels[top][0]
    } else {
        0
    };
    let betti_symmetric = (0..=top).all(|i| levels[i].len() == levels[top - i].len());
    let mut pairs = Vec::new();
    let mut ok = applicable && levels[top].len() == 1 && betti_symmetric;
    if ok {
        for (i, level) in levels.iter().enumerate() {
            let dual = &levels[top - i];
            for (j, &left) in level.iter().enumerate() {
                let right = dual[level.len() - 1 - j];
                ok &= left + right == s0;
                pairs.push(DualityPair {
                    level: i,
                    j: j + 1,
                    left,
                    right,
                    sum: left + right,
                });
            }
        }
    }
    DualityReport {
        applicable,
        s0,
        betti_symmetric,
        pairs,
        passed: ok,
    }
}
