//! Named verification suites covering the full identity chain at exact
//! (zero-tolerance) equality.  The CLI `verify` subcommand and the
//! acceptance tests both run these.

use crate::linalg;
use crate::poly::Poly;
use crate::scalar::{GaussianSurd, Rational};
use crate::schur_q::{characterization_check, factorial_schur_q, negate_variables, schur_q, FactorialSign};
use crate::sergeev::{
    all_basis, character_element, conjugation_sum, delta_tuples, module_matrices, split_pm,
    submodule_basis, IdempotentTable, SergeevElement,
};
use crate::shifted::{enumerate_standard_barred, strict_partitions, BarredStandardTableau, StrictPartition};
use crate::tensor::{sergeev_to_operator, y_product, SergeevAction, SuperOperator};
use crate::uqn::{
    hc_image, immanant_and_capelli_with, is_central, PBWElement, QGenerator,
};
use crate::weyl::{
    annihilation_degree, image_of_immanant, image_via_character, verify_even_capelli,
    verify_odd_capelli, verify_tableau_capelli,
};
use std::time::Instant;

/// Outcome of one verification run.
#[derive(Debug, Clone)]
pub struct Report {
    pub name: String,
    pub parameters: String,
    pub pass: bool,
    pub witness: Option<String>,
    pub millis: u128,
}

impl Report {
    fn finish(name: &str, parameters: String, witness: Option<String>, start: Instant) -> Report {
        Report {
            name: name.to_string(),
            parameters,
            pass: witness.is_none(),
            witness,
            millis: start.elapsed().as_millis(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "identity": self.name,
            "parameters": self.parameters,
            "pass": self.pass,
            "witness": self.witness,
            "millis": self.millis as u64,
        })
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{}: {} [{}] ({} ms)",
            self.name,
            if self.pass { "PASS" } else { "FAIL" },
            self.parameters,
            self.millis
        )
    }
}

fn shapes_up_to(max_n: u32) -> Vec<StrictPartition> {
    (1..=max_n).flat_map(strict_partitions).collect()
}

/// Idempotent system: `e_U^2 = e_U`, `e_U e_V = 0`, `sum_U e_U = 1` per
/// rank, and the Jucys-Murphy eigenvalue identity
/// `x_a e_U = e_U x_a = kappa_a(U) e_U`, for every rank up to `max_n`.
pub fn criterion_idempotent_system(max_n: u32) -> Report {
    let start = Instant::now();
    let mut witness = None;
    'outer: for n in 1..=max_n {
        let mut table = IdempotentTable::new();
        let all = table.all_for_n(n);
        let mut sum = SergeevElement::zero(n as usize);
        for (u, e) in &all {
            sum = sum.add(e);
            if !e.is_even() || !e.is_real() {
                witness = Some(format!("e_U not even/real for U={}", u.to_compact()));
                break 'outer;
            }
            for a in 1..=n {
                let x = crate::sergeev::jm(n as usize, a as usize);
                let scaled = e.scale_surd(&u.signed_content(a));
                if x.mul(e) != scaled || e.mul(&x) != scaled {
                    witness = Some(format!("x_{a} eigenvalue fails on U={}", u.to_compact()));
                    break 'outer;
                }
            }
        }
        if witness.is_none() && sum != SergeevElement::one(n as usize) {
            witness = Some(format!("sum of idempotents differs from 1 at n={n}"));
        }
        if witness.is_some() {
            break;
        }
        for (i, (u, ei)) in all.iter().enumerate() {
            for (j, (v, ej)) in all.iter().enumerate() {
                let prod = ei.mul(ej);
                let expected_ok = if i == j { &prod == ei } else { prod.is_zero() };
                if !expected_ok {
                    witness = Some(format!(
                        "orthogonality fails for U={} V={}",
                        u.to_compact(),
                        v.to_compact()
                    ));
                    break 'outer;
                }
            }
        }
    }
    Report::finish(
        "idempotent-system",
        format!("n <= {max_n}"),
        witness,
        start,
    )
}

/// Module realization: generator matrices satisfy the defining relations,
/// idempotents project onto the barred-tableau vectors, the module is the
/// direct sum of the delta-submodules (each of the simple dimension), and
/// odd-length shapes split into equal invariant halves.
pub fn criterion_module_realization(max_n: u32) -> Report {
    let start = Instant::now();
    let mut witness = None;
    'outer: for shape in shapes_up_to(max_n) {
        let mm = module_matrices(&shape);
        let n = shape.size() as usize;
        let dim = mm.dim;
        let eq = |a: &linalg::Matrix<GaussianSurd>, b: &linalg::Matrix<GaussianSurd>| -> bool {
            (0..dim).all(|r| (0..dim).all(|c| a.get(r, c) == b.get(r, c)))
        };
        let idm = linalg::Matrix::<GaussianSurd>::identity(dim);
        // defining relations
        for a in 0..mm.s_mats.len() {
            if !eq(&mm.s_mats[a].matmul(&mm.s_mats[a]), &idm)
                || !eq(
                    &mm.s_mats[a].matmul(&mm.c_mats[a]),
                    &mm.c_mats[a + 1].matmul(&mm.s_mats[a]),
                )
            {
                witness = Some(format!("module relations fail for {shape}"));
                break 'outer;
            }
            if a + 1 < mm.s_mats.len() {
                let lhs = mm.s_mats[a].matmul(&mm.s_mats[a + 1]).matmul(&mm.s_mats[a]);
                let rhs = mm.s_mats[a + 1].matmul(&mm.s_mats[a]).matmul(&mm.s_mats[a + 1]);
                if !eq(&lhs, &rhs) {
                    witness = Some(format!("braid relation fails for {shape}"));
                    break 'outer;
                }
            }
        }
        for a in 0..n {
            let sq = mm.c_mats[a].matmul(&mm.c_mats[a]);
            let neg = {
                let mut m = linalg::Matrix::<GaussianSurd>::zero(dim, dim);
                for r in 0..dim {
                    m.set(r, r, GaussianSurd::from_int(-1));
                }
                m
            };
            if !eq(&sq, &neg) {
                witness = Some(format!("c^2 relation fails for {shape}"));
                break 'outer;
            }
        }
        // idempotent projections on barred vectors
        let mut table = IdempotentTable::new();
        let tabs = enumerate_standard_barred(&shape);
        for u in &tabs {
            let em = mm.matrix_of(&table.get(u));
            for v_tab in &tabs {
                let v = mm.vector_of(v_tab);
                let image = mm.apply(&em, &v);
                let ok = if u == v_tab {
                    image == v
                } else {
                    image.iter().all(|x| x.is_zero())
                };
                if !ok {
                    witness = Some(format!(
                        "projection fails for U={} V={}",
                        u.to_compact(),
                        v_tab.to_compact()
                    ));
                    break 'outer;
                }
            }
        }
        // decomposition into delta-submodules
        let l = shape.len();
        let m_half = l / 2;
        let mut all_vectors = Vec::new();
        for delta in delta_tuples(m_half) {
            let basis = submodule_basis(&mm, &delta);
            if basis.len() as u64 != shape.dim_simple() {
                witness = Some(format!("submodule dimension fails for {shape}"));
                break 'outer;
            }
            let mat = linalg::Matrix::from_columns(dim, basis.clone());
            let solver = linalg::Solver::new(&mat);
            if solver.rank() != basis.len() {
                witness = Some(format!("submodule basis dependent for {shape}"));
                break 'outer;
            }
            for gen in mm.s_mats.iter().chain(mm.c_mats.iter()) {
                for v in &basis {
                    if !solver.contains(&mm.apply(gen, v)) {
                        witness = Some(format!("submodule not invariant for {shape}"));
                        break 'outer;
                    }
                }
            }
            all_vectors.extend(basis);
        }
        if linalg::rank(dim, &all_vectors) != dim {
            witness = Some(format!("direct sum does not fill the module for {shape}"));
            break 'outer;
        }
        // plus/minus split for odd-length shapes
        if l % 2 == 1 {
            let delta = vec![1i8; m_half];
            let (plus, minus) = split_pm(&mm, &delta);
            if plus.len() != minus.len() || plus.len() as u64 != shape.dim_simple() / 2 {
                witness = Some(format!("split sizes fail for {shape}"));
                break 'outer;
            }
            for basis in [&plus, &minus] {
                let mat = linalg::Matrix::from_columns(dim, (*basis).clone());
                let solver = linalg::Solver::new(&mat);
                if solver.rank() != basis.len() {
                    witness = Some(format!("split basis dependent for {shape}"));
                    break 'outer;
                }
                for gen in mm.s_mats.iter().chain(mm.c_mats.iter()) {
                    for v in basis.iter() {
                        if !solver.contains(&mm.apply(gen, v)) {
                            witness = Some(format!("split not invariant for {shape}"));
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    Report::finish(
        "module-realization",
        format!("n <= {max_n}"),
        witness,
        start,
    )
}

/// Conjugation sums and character elements, termwise:
/// `sum_h h e_V h^{-1} = (n! 2^l / g) sum_U e_U = 2^{floor(l/2)} chi`.
pub fn criterion_conjugation_characters(full: bool) -> Report {
    let start = Instant::now();
    let mut witness = None;
    let mut targets: Vec<(StrictPartition, bool)> = strict_partitions(3)
        .into_iter()
        .map(|s| (s, true))
        .collect();
    if full {
        targets.push((StrictPartition::new(vec![3, 1]).unwrap(), false));
    }
    'outer: for (shape, all_v) in targets {
        let n = shape.size() as usize;
        let mut table = IdempotentTable::new();
        let tabs = enumerate_standard_barred(&shape);
        let mut sum = SergeevElement::zero(n);
        for u in &tabs {
            sum = sum.add(&table.get(u));
        }
        let mut fact = 1i64;
        for k in 1..=n as i64 {
            fact *= k;
        }
        let factor = fact * (1 << shape.len()) / shape.g_lambda() as i64;
        let expected = sum.scale(&GaussianSurd::from_int(factor));
        let chi = character_element(&shape);
        let chi_scaled = chi.scale(&GaussianSurd::from_int(1 << (shape.len() / 2)));
        if chi_scaled != expected {
            witness = Some(format!("character identity fails for {shape}"));
            break 'outer;
        }
        // identity coefficient of chi is the simple dimension
        let id_coeff = chi.coefficient(&crate::sergeev::SergeevBasis::identity(n));
        if id_coeff != GaussianSurd::from_int(shape.dim_simple() as i64) {
            witness = Some(format!("chi identity coefficient fails for {shape}"));
            break 'outer;
        }
        let v_choices: Vec<&BarredStandardTableau> =
            if all_v { tabs.iter().collect() } else { tabs.iter().take(2).collect() };
        for v_tab in v_choices {
            let got = conjugation_sum(&table.get(v_tab));
            if got != expected {
                witness = Some(format!(
                    "conjugation sum fails for {shape} V={}",
                    v_tab.to_compact()
                ));
                break 'outer;
            }
        }
    }
    Report::finish(
        "conjugation-characters",
        if full {
            "n = 3 all shapes; n = 4 shape (3,1)".to_string()
        } else {
            "n = 3 all shapes".to_string()
        },
        witness,
        start,
    )
}

/// Supertrace character identity `str(E_U Y_1..Y_n) = Q_lambda(y)` for all
/// shapes up to `max_n`, all tableaux, all requested variable counts.
pub fn criterion_supertrace_character(max_n: u32, ns: &[u8]) -> Report {
    let start = Instant::now();
    let mut witness = None;
    'outer: for &big_n in ns {
        for n in 1..=max_n {
            let mut action = SergeevAction::new(n as usize, big_n);
            let mut table = IdempotentTable::new();
            let yprod = y_product(n as usize, big_n);
            for shape in strict_partitions(n) {
                if shape.len() > big_n as usize {
                    continue;
                }
                let rhs = schur_q(&shape, big_n as usize);
                for u in enumerate_standard_barred(&shape) {
                    let img = action.element_image(&table.get(&u));
                    let as_poly = img.map_coeffs(|c| {
                        debug_assert!(c.is_real());
                        Poly::constant(big_n as usize, c.re.clone())
                    });
                    let lhs = as_poly.mul(&yprod).supertrace();
                    if lhs != rhs {
                        witness = Some(format!("str identity fails for U={} N={big_n}", u.to_compact()));
                        break 'outer;
                    }
                }
            }
        }
    }
    Report::finish(
        "supertrace-character",
        format!("n <= {max_n}, N in {ns:?}"),
        witness,
        start,
    )
}

/// Universal odd and even Capelli identities at the given `(M, N, n)`.
pub fn criterion_capelli_universal(cases: &[(u8, u8, usize)]) -> Report {
    let start = Instant::now();
    let mut witness = None;
    for &(m, big_n, n) in cases {
        let odd = verify_odd_capelli(m, big_n, n);
        if !odd.exact_equal {
            witness = Some(format!(
                "odd identity fails at (M,N,n)=({m},{big_n},{n}): {:?}",
                odd.discrepancies
            ));
            break;
        }
        let even = verify_even_capelli(m, big_n, n);
        if !even.exact_equal {
            witness = Some(format!(
                "even identity fails at (M,N,n)=({m},{big_n},{n}): {:?}",
                even.discrepancies
            ));
            break;
        }
    }
    Report::finish(
        "universal-capelli",
        format!("cases {cases:?}"),
        witness,
        start,
    )
}

/// Per-tableau identity (with the replacement step) for every barred
/// tableau with at most `max_n` boxes.
pub fn criterion_tableau_capelli(max_n: u32, m: u8, big_n: u8) -> Report {
    let start = Instant::now();
    let mut witness = None;
    'outer: for shape in shapes_up_to(max_n) {
        if shape.len() > big_n as usize {
            continue;
        }
        for u in enumerate_standard_barred(&shape) {
            let out = verify_tableau_capelli(&u, m, big_n);
            if !out.exact_equal {
                witness = Some(format!(
                    "tableau identity fails for U={}: {:?}",
                    u.to_compact(),
                    out.discrepancies
                ));
                break 'outer;
            }
        }
    }
    Report::finish(
        "tableau-capelli",
        format!("n <= {max_n}, M = {m}, N = {big_n}"),
        witness,
        start,
    )
}

/// Centrality of the quantum immanants.
pub fn criterion_centrality(max_n: u32, big_n: u8) -> Report {
    let start = Instant::now();
    let mut witness = None;
    'outer: for shape in shapes_up_to(max_n) {
        if shape.len() > big_n as usize {
            continue;
        }
        let n = shape.size() as usize;
        let mut action = SergeevAction::new(n, big_n);
        let mut table = IdempotentTable::new();
        let u = BarredStandardTableau::row_major(&shape);
        let s = crate::uqn::quantum_immanant_with(&mut action, &mut table, &u, big_n, 1)
            .expect("shape fits");
        for g in QGenerator::all(big_n) {
            if !s.super_commutator(&PBWElement::gen(g)).is_zero() {
                witness = Some(format!("[S, {g:?}] != 0 for {shape}"));
                break 'outer;
            }
        }
        if !is_central(&s, big_n) {
            witness = Some(format!("centrality fails for {shape}"));
            break 'outer;
        }
    }
    Report::finish(
        "centrality",
        format!("n <= {max_n}, N = {big_n}"),
        witness,
        start,
    )
}

/// Harish-Chandra images: `hc(S_lambda) = Q^+_lambda`, tableau independence,
/// linear independence of the images, and `hc((g/n!) C_lambda) = Q^-_lambda`.
pub fn criterion_hc_images(max_n: u32, ns: &[u8]) -> Report {
    let start = Instant::now();
    let mut witness = None;
    'outer: for &big_n in ns {
        for n in 1..=max_n {
            let mut action = SergeevAction::new(n as usize, big_n);
            let mut table = IdempotentTable::new();
            for shape in strict_partitions(n) {
                if shape.len() > big_n as usize {
                    continue;
                }
                let tabs = enumerate_standard_barred(&shape);
                let mut first: Option<PBWElement> = None;
                for u in &tabs {
                    let (s, c) =
                        immanant_and_capelli_with(&mut action, &mut table, u, big_n).unwrap();
                    match &first {
                        None => {
                            if !s.is_even() {
                                witness = Some(format!("S not even for {shape}"));
                                break 'outer;
                            }
                            let qplus =
                                factorial_schur_q(&shape, big_n as usize, FactorialSign::Plus);
                            if hc_image(&s, big_n) != qplus {
                                witness =
                                    Some(format!("hc(S) != Q+ for {shape} N={big_n}"));
                                break 'outer;
                            }
                            let qminus =
                                factorial_schur_q(&shape, big_n as usize, FactorialSign::Minus);
                            if hc_image(&c, big_n) != qminus {
                                witness =
                                    Some(format!("hc(C) != Q- for {shape} N={big_n}"));
                                break 'outer;
                            }
                            first = Some(s);
                        }
                        Some(f) => {
                            if &s != f {
                                witness = Some(format!(
                                    "S depends on the tableau: {} of {shape} N={big_n}",
                                    u.to_compact()
                                ));
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        // linear independence of hc images over the admissible shapes
        let mut images: Vec<Poly> = Vec::new();
        for n in 1..=max_n {
            for shape in strict_partitions(n) {
                if shape.len() > big_n as usize {
                    continue;
                }
                let u = BarredStandardTableau::row_major(&shape);
                let s = crate::uqn::quantum_immanant(&u, big_n).unwrap();
                images.push(hc_image(&s, big_n));
            }
        }
        let mut monomials: Vec<Vec<u16>> = Vec::new();
        for p in &images {
            for (e, _) in p.terms() {
                if !monomials.contains(e) {
                    monomials.push(e.clone());
                }
            }
        }
        let vectors: Vec<Vec<Rational>> = images
            .iter()
            .map(|p| {
                monomials
                    .iter()
                    .map(|mjs| {
                        p.terms()
                            .find(|(e, _)| *e == mjs)
                            .map(|(_, c)| c.as_rational().expect("rational coefficients"))
                            .unwrap_or_else(|| Rational::from_integer(0.into()))
                    })
                    .collect()
            })
            .collect();
        if linalg::rank(monomials.len(), &vectors) != images.len() {
            witness = Some(format!("hc images dependent at N={big_n}"));
            break 'outer;
        }
    }
    Report::finish(
        "harish-chandra-images",
        format!("n <= {max_n}, N in {ns:?}"),
        witness,
        start,
    )
}

/// Differential-operator images: the direct image of the immanant agrees
/// with the character-formula route, and annihilates degree `n - 1`.
pub fn criterion_immanant_images(max_n: u32, m: u8, big_n: u8) -> Report {
    let start = Instant::now();
    let mut witness = None;
    'outer: for shape in shapes_up_to(max_n) {
        if shape.len() > big_n as usize {
            continue;
        }
        let n = shape.size();
        let u = BarredStandardTableau::row_major(&shape);
        let direct = image_of_immanant(&u, m, big_n);
        let via = image_via_character(&shape, m, big_n);
        if direct != via {
            witness = Some(format!("image routes disagree for {shape}"));
            break 'outer;
        }
        if n >= 1 && !annihilation_degree(&direct, n - 1) {
            witness = Some(format!("annihilation of degree {} fails for {shape}", n - 1));
            break 'outer;
        }
    }
    Report::finish(
        "immanant-images",
        format!("n <= {max_n}, M = {m}, N = {big_n}"),
        witness,
        start,
    )
}

/// Factorial Schur Q properties: supersymmetry, the vanishing
/// characterization, and the plus/minus reflection.
pub fn criterion_schur_q_properties(max_size: u32, ns: &[usize]) -> Report {
    let start = Instant::now();
    let mut witness = None;
    'outer: for n in 0..=max_size {
        for shape in strict_partitions(n) {
            for &nvars in ns {
                let q = schur_q(&shape, nvars);
                let plus = factorial_schur_q(&shape, nvars, FactorialSign::Plus);
                let minus = factorial_schur_q(&shape, nvars, FactorialSign::Minus);
                if !q.is_supersymmetric()
                    || !plus.is_supersymmetric()
                    || !minus.is_supersymmetric()
                {
                    witness = Some(format!("supersymmetry fails for {shape} N={nvars}"));
                    break 'outer;
                }
                let mut reflected = negate_variables(&minus);
                if n % 2 == 1 {
                    reflected = -&reflected;
                }
                if plus != reflected {
                    witness = Some(format!("reflection identity fails for {shape} N={nvars}"));
                    break 'outer;
                }
                if shape.len() <= nvars {
                    if !characterization_check(&plus, &shape, nvars, FactorialSign::Plus)
                        || !characterization_check(&minus, &shape, nvars, FactorialSign::Minus)
                    {
                        witness = Some(format!("characterization fails for {shape} N={nvars}"));
                        break 'outer;
                    }
                }
            }
        }
    }
    Report::finish(
        "factorial-schur-q",
        format!("|shape| <= {max_size}, N in {ns:?}"),
        witness,
        start,
    )
}

/// The full acceptance configuration.
pub fn acceptance_reports() -> Vec<Report> {
    run_suites(4, &[2, 3], 2, true)
}

/// Run every suite with ranges capped by `max_n` and the variable counts in
/// `ns`; `m` is the polynomial-side width for the Capelli checks.
pub fn run_suites(max_n: u32, ns: &[u8], m: u8, full_capelli: bool) -> Vec<Report> {
    let algebra_n = max_n.min(4);
    let capelli_n = max_n.min(3) as usize;
    let mut capelli_cases: Vec<(u8, u8, usize)> = vec![(1, 1, 1), (1, 1, 2)];
    for n in 1..=capelli_n {
        capelli_cases.push((2, 2, n));
    }
    if !full_capelli {
        capelli_cases.retain(|&(_, _, n)| n <= capelli_n.min(2));
    }
    vec![
        criterion_idempotent_system(algebra_n),
        criterion_module_realization(algebra_n),
        criterion_conjugation_characters(max_n >= 4),
        criterion_supertrace_character(algebra_n, ns),
        criterion_capelli_universal(&capelli_cases),
        criterion_tableau_capelli(max_n.min(3), m, 2),
        criterion_centrality(max_n.min(3), 2),
        criterion_hc_images(algebra_n, ns),
        criterion_immanant_images(max_n.min(3), m, 2),
        criterion_schur_q_properties(5.min(max_n + 2), &ns.iter().map(|&x| x as usize).collect::<Vec<_>>()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        // spot-check the cheap criteria at reduced ranges
        assert!(criterion_idempotent_system(3).pass);
        assert!(criterion_schur_q_properties(3, &[2]).pass);
        assert!(criterion_centrality(2, 2).pass);
        assert!(criterion_supertrace_character(2, &[2]).pass);
    }

    #[test]
    fn report_json_shape() {
        let r = criterion_schur_q_properties(2, &[2]);
        let j = r.to_json();
        assert_eq!(j["pass"], serde_json::json!(true));
        assert!(j["identity"].as_str().is_some());
        let _ = SuperOperator::<GaussianSurd>::zero(1);
        let _ = sergeev_to_operator(&SergeevElement::one(1), 1);
        let _ = all_basis(1);
    }
}
