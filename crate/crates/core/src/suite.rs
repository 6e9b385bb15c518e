//! The fixed verification suite: every checkable claim about the catalog,
//! its decompositions and the quadrilateral's groups, evaluated in parallel
//! and reported in a fixed order.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::decomp::{
    affine_space_witness, all_cq_pair_cases, check_witness, classify_space, configuration_witness,
    converse_p0_failures, decompose_line, fusion_table, p0_subspace_failures, su32_witness,
    symplectic_structured_basis, CqPairCase,
};
use crate::fischer::{catalog, catalog_names, FischerSpace, PlaneType};
use crate::gf::{canonical_basis, FieldMatrix, FieldScalar};
use crate::matsuo::{bits_of, predict_line_line, predict_point_line, NilpotentMatsuoAlgebra};
use crate::miyamoto::{
    aut_count_full, aut_enumerate_reduced, aut_sweep_reduced, lines_with_nontrivial_maps, verify_cq_miyamoto, SMatrix,
};
use crate::{Gf2, Gf4, Gf8};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub id: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub suite: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub claims: Vec<ClaimResult>,
}

impl SuiteResult {
    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed > 0)
    }

    pub fn get(&self, id: &str) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite results serialize")
    }

    /// One `STATUS id: detail` line per claim.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!("{tag:<4} {:<32} {}\n", c.id, c.detail));
        }
        out.push_str(&format!("{} passed, {} failed, {} skipped\n", self.passed, self.failed, self.skipped));
        out
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    /// The 81-point space labelled by `[p,q,r,s]`, if supplied.
    pub hall_space: Option<FischerSpace>,
    /// Negative control: perturb one structure constant of every algebra.
    pub corrupt: bool,
}

type Outcome = Result<(bool, String), String>;
type Claim = fn(&SuiteOptions) -> Outcome;

pub const CLAIMS: &[(&str, Claim)] = &[
    ("catalog.point_counts", catalog_point_counts),
    ("catalog.line_counts", catalog_line_counts),
    ("products.point_line", predicted_point_line),
    ("products.line_line", predicted_line_line),
    ("decomp.quadrilateral", decomp_quadrilateral),
    ("decomp.affine_plane", decomp_affine_plane),
    ("decomp.affine_plane_reduced", decomp_affine_plane_reduced),
    ("grading.biconditional", grading_biconditional),
    ("grading.witness_mixed", witness_mixed),
    ("grading.witness_ag33", witness_ag33),
    ("grading.witness_su32", witness_su32),
    ("grading.witness_su32_product", witness_su32_product),
    ("grading.witness_hall", witness_hall),
    ("grading.good_lines", good_lines),
    ("symplectic.structured_basis", structured_basis),
    ("symplectic.quadrilateral_pairs", quadrilateral_pairs),
    ("symplectic.p0_points", p0_points),
    ("miyamoto.gf4", miyamoto_gf4),
    ("miyamoto.gf8", miyamoto_gf8),
    ("miyamoto.s_law", s_law),
    ("miyamoto.z2_lines_trivial", z2_lines_trivial),
    ("aut.reduced", aut_reduced),
    ("aut.reduced_sweep", aut_reduced_sweep),
    ("aut.full", aut_full),
    ("invariant.square_zero", square_zero),
    ("invariant.annihilator", annihilator),
    ("invariant.ad_point_square", ad_point_square),
    ("invariant.ad_line_idempotent", ad_line_idempotent),
];

pub fn claim_ids() -> impl Iterator<Item = &'static str> {
    CLAIMS.iter().map(|(id, _)| *id)
}

pub fn run_suite(opts: &SuiteOptions) -> SuiteResult {
    let claims: Vec<ClaimResult> = CLAIMS
        .par_iter()
        .map(|&(id, claim)| {
            let (status, detail) = match claim(opts) {
                Ok((true, d)) => (Status::Pass, d),
                Ok((false, d)) => (Status::Fail, d),
                Err(d) if d.starts_with(SKIP) => (Status::Skipped, d[SKIP.len()..].to_string()),
                Err(d) => (Status::Fail, format!("error: {d}")),
            };
            ClaimResult { id, status, detail }
        })
        .collect();
    let count = |s| claims.iter().filter(|c| c.status == s).count();
    SuiteResult {
        suite: "paper",
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skipped),
        claims,
    }
}

const SKIP: &str = "skip:";

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn space(name: &str) -> Result<FischerSpace, String> {
    catalog(name).map_err(err)
}

fn algebra(name: &str, opts: &SuiteOptions) -> Result<NilpotentMatsuoAlgebra, String> {
    let a = NilpotentMatsuoAlgebra::build(&space(name)?).map_err(err)?;
    Ok(if opts.corrupt {
        let p = a.product_bits(0, 1) ^ 1 << (a.dim() - 1);
        a.with_corrupted_product(0, 1, p)
    } else {
        a
    })
}

fn all_algebras(opts: &SuiteOptions) -> Result<Vec<NilpotentMatsuoAlgebra>, String> {
    catalog_names().map(|n| algebra(n, opts)).collect()
}

fn mismatches(list: Vec<String>) -> Outcome {
    if list.is_empty() {
        Ok((true, "all agree".into()))
    } else {
        Ok((false, list.join("; ")))
    }
}

fn catalog_point_counts(_: &SuiteOptions) -> Outcome {
    let expect = [
        ("cq", 6, true),
        ("ag23", 9, false),
        ("w_a4", 10, true),
        ("w_d4", 12, true),
        ("3_3_sym4", 18, false),
        ("ag33", 27, false),
        ("su32", 36, false),
    ];
    let mut bad = Vec::new();
    for (name, n, symp) in expect {
        let s = space(name)?;
        let declared = s.meta().map(|m| m.symplectic);
        if s.n_points() != n || s.is_symplectic_type() != symp || declared != Some(symp) {
            bad.push(format!("{name}: {} points, symplectic {}", s.n_points(), s.is_symplectic_type()));
        }
    }
    if bad.is_empty() {
        return Ok((true, "points 6, 9, 10, 12, 18, 27, 36; symplectic exactly cq, w_a4, w_d4".into()));
    }
    mismatches(bad)
}

fn catalog_line_counts(_: &SuiteOptions) -> Outcome {
    let mut counts = Vec::new();
    let mut bad = Vec::new();
    for name in catalog_names() {
        let s = space(name)?;
        let recount = s.collinearity_degree_sum() / 6;
        if recount != s.lines().len() || s.collinearity_degree_sum() % 6 != 0 {
            bad.push(format!("{name}: {} lines, recount {recount}", s.lines().len()));
        }
        counts.push(s.lines().len().to_string());
    }
    if bad.is_empty() {
        return Ok((true, format!("lines {}", counts.join(", "))));
    }
    mismatches(bad)
}

fn predicted_point_line(opts: &SuiteOptions) -> Outcome {
    let mut bad = Vec::new();
    let mut total = 0;
    for a in all_algebras(opts)? {
        let s = a.space();
        for l in s.lines() {
            let lb = a.line_bits(l).map_err(err)?;
            for x in 0..s.n_points() {
                total += 1;
                if a.mul_bits(1 << x, lb) != predict_point_line(s, x, l).map_err(err)? {
                    bad.push(format!("{} x={x} l={l:?}", s.name()));
                }
            }
        }
    }
    if bad.is_empty() {
        return Ok((true, format!("{total} point-line products agree")));
    }
    bad.truncate(5);
    Ok((false, format!("disagreements, first: {}", bad.join("; "))))
}

fn predicted_line_line(opts: &SuiteOptions) -> Outcome {
    let mut bad = Vec::new();
    let mut total = 0;
    for a in all_algebras(opts)? {
        let s = a.space();
        for l in s.lines() {
            let lb = a.line_bits(l).map_err(err)?;
            for m in s.lines() {
                total += 1;
                if a.mul_bits(lb, a.line_bits(m).map_err(err)?) != predict_line_line(s, l, m).map_err(err)? {
                    bad.push(format!("{} {l:?}·{m:?}", s.name()));
                }
            }
        }
    }
    if bad.is_empty() {
        return Ok((true, format!("{total} line-line products agree")));
    }
    bad.truncate(5);
    Ok((false, format!("disagreements, first: {}", bad.join("; "))))
}

fn decomp_quadrilateral(opts: &SuiteOptions) -> Outcome {
    let a = algebra("cq", opts)?;
    let mut one_parts = BTreeSet::new();
    for l in a.space().lines() {
        let d = decompose_line::<Gf2>(&a, l).map_err(err)?;
        let (t, _) = fusion_table(&a, &d).map_err(err)?;
        if d.gen_dims() != (4, 2) || t.cells[1][1] != 0 {
            return Ok((false, format!("line {l:?}: dims {:?}, 1*1 = {:?}", d.gen_dims(), t.get(1, 1))));
        }
        one_parts.insert(canonical_basis(a.dim(), &d.basis1));
    }
    Ok((one_parts.len() == 1, format!("dims (4,2) on every line, 1*1 empty, {} distinct 1-parts", one_parts.len())))
}

fn decomp_affine_plane(opts: &SuiteOptions) -> Outcome {
    let a = algebra("ag23", opts)?;
    for l in a.space().lines() {
        let d = decompose_line::<Gf2>(&a, l).map_err(err)?;
        let (t, _) = fusion_table(&a, &d).map_err(err)?;
        let eigen = (d.eigen0_dim, d.eigen1_dim);
        if d.gen_dims() != (5, 4) || eigen != (4, 4) || d.semisimple || !t.is_z2_graded() {
            return Ok((
                false,
                format!(
                    "line {l:?}: dims {:?}, eigen {eigen:?}, semisimple {}, graded {}",
                    d.gen_dims(),
                    d.semisimple,
                    t.is_z2_graded()
                ),
            ));
        }
    }
    Ok((true, "dims (5,4), eigen (4,4), not semisimple, Z/2-graded on all 12 lines".into()))
}

fn decomp_affine_plane_reduced(opts: &SuiteOptions) -> Outcome {
    let a = algebra("ag23", opts)?.reduce().map_err(err)?;
    for l in a.space().lines() {
        let d = decompose_line::<Gf2>(&a, l).map_err(err)?;
        if d.gen_dims() != (4, 4) || !d.semisimple {
            return Ok((false, format!("line {l:?}: dims {:?}, semisimple {}", d.gen_dims(), d.semisimple)));
        }
    }
    Ok((true, "dims (4,4), semisimple on all 12 lines".into()))
}

fn grading_biconditional(opts: &SuiteOptions) -> Outcome {
    let mut graded = Vec::new();
    let mut bad = Vec::new();
    for a in all_algebras(opts)? {
        let v = classify_space(&a).map_err(err)?;
        let expect = a.space().is_symplectic_type() || v.space == "ag23";
        if v.globally_graded {
            graded.push(v.space.clone());
        }
        if v.globally_graded != expect {
            bad.push(format!("{}: graded {}", v.space, v.globally_graded));
        }
    }
    if bad.is_empty() {
        return Ok((true, format!("globally graded exactly: {}", graded.join(", "))));
    }
    mismatches(bad)
}

fn witness_mixed(opts: &SuiteOptions) -> Outcome {
    let c = configuration_witness(&algebra("3_3_sym4", opts)?).map_err(err)?;
    Ok((c.total > 0 && c.reproducing == c.total, format!("{} of {} configurations reproduce", c.reproducing, c.total)))
}

fn witness_ag33(opts: &SuiteOptions) -> Outcome {
    let w = affine_space_witness(&algebra("ag33", opts)?).map_err(err)?;
    Ok((
        w.reproduces() && w.product_in_1,
        format!(
            "u, v in A1: {}; product outside A0: {}; product in A1: {}",
            w.u_in_1 && w.v_in_1,
            w.product_outside_0,
            w.product_in_1
        ),
    ))
}

fn witness_su32(opts: &SuiteOptions) -> Outcome {
    let w = su32_witness(&algebra("su32", opts)?).map_err(err)?;
    Ok((w.reproduces(), format!("u, v in A1: {}; product outside A0: {}", w.u_in_1 && w.v_in_1, w.product_outside_0)))
}

fn witness_su32_product(opts: &SuiteOptions) -> Outcome {
    let w = su32_witness(&algebra("su32", opts)?).map_err(err)?;
    let detail = if w.product_in_1 {
        "product lies in A1".to_string()
    } else {
        "product has a nonzero component in the generalized 0-part, so it is not in A1".to_string()
    };
    Ok((w.product_in_1, detail))
}

fn witness_hall(opts: &SuiteOptions) -> Outcome {
    let Some(s) = &opts.hall_space else {
        return Err(format!("{SKIP}data not provided (pass --hall-data)"));
    };
    let pt = |l: &str| s.point_by_label(l).ok_or_else(|| format!("no point labelled {l}"));
    let mut l = [pt("[0,0,0,0]")?, pt("[1,0,0,0]")?, pt("[2,0,0,0]")?];
    l.sort_unstable();
    let u = bits_of([pt("[0,1,0,0]")?, pt("[1,1,0,0]")?]);
    let v = bits_of([pt("[0,0,0,1]")?, pt("[1,0,0,1]")?]);
    let mut a = NilpotentMatsuoAlgebra::build(s).map_err(err)?;
    if opts.corrupt {
        let p = a.product_bits(0, 1) ^ 1 << (a.dim() - 1);
        a = a.with_corrupted_product(0, 1, p);
    }
    let w = check_witness(&a, &l, u, v).map_err(err)?;
    Ok((
        w.reproduces() && w.product_in_1,
        format!(
            "u, v in A1: {}; product outside A0: {}; product in A1: {}",
            w.u_in_1 && w.v_in_1,
            w.product_outside_0,
            w.product_in_1
        ),
    ))
}

fn good_lines(opts: &SuiteOptions) -> Outcome {
    let a = algebra("3_3_sym4", opts)?;
    let v = classify_space(&a).map_err(err)?;
    let s = a.space();
    let bad_ungraded = v.lines.iter().enumerate().filter(|(i, r)| s.line_in_cq(*i) && !r.z2_graded).count();
    Ok((
        !v.good_lines.is_empty() && v.good_but_ungraded.is_empty() && bad_ungraded > 0,
        format!(
            "{} good lines, {} of them ungraded; {bad_ungraded} quadrilateral lines ungraded",
            v.good_lines.len(),
            v.good_but_ungraded.len()
        ),
    ))
}

fn structured_basis(opts: &SuiteOptions) -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for name in ["cq", "w_a4", "w_d4"] {
        let a = algebra(name, opts)?;
        let s = a.space();
        for l in s.lines() {
            let quads =
                s.planes_through(l).map_err(err)?.iter().filter(|p| p.kind == PlaneType::CompleteQuadrilateral).count();
            match symplectic_structured_basis(&a, l) {
                Ok(b) if b.zero_rank == 3 + quads + b.p0.len() && b.one_rank == 2 * quads => checked += 1,
                Ok(b) => bad.push(format!("{name} {l:?}: ranks ({}, {})", b.zero_rank, b.one_rank)),
                Err(e) => bad.push(format!("{name} {l:?}: {e}")),
            }
        }
    }
    if bad.is_empty() {
        return Ok((true, format!("{checked} lines: explicit bases span both parts with the expected ranks")));
    }
    mismatches(bad)
}

fn quadrilateral_pairs(_: &SuiteOptions) -> Outcome {
    let a4 = all_cq_pair_cases(&space("w_a4")?).map_err(err)?;
    let d4 = all_cq_pair_cases(&space("w_d4")?).map_err(err)?;
    let all_a = a4.iter().all(|(_, c)| matches!(c, CqPairCase::A { .. }));
    let b_count = d4.iter().filter(|(_, c)| matches!(c, CqPairCase::B { .. })).count();
    Ok((
        !a4.is_empty() && all_a && b_count > 0,
        format!("w_a4: {} pairs, all case (a): {all_a}; w_d4: {b_count} of {} pairs case (b)", a4.len(), d4.len()),
    ))
}

fn p0_points(_: &SuiteOptions) -> Outcome {
    let mut bad = Vec::new();
    for name in catalog_names() {
        let s = space(name)?;
        if !p0_subspace_failures(&s).map_err(err)?.is_empty() {
            bad.push(format!("{name}: P0 pair generates a point off P0"));
        }
        if s.is_symplectic_type() && !converse_p0_failures(&s).map_err(err)?.is_empty() {
            bad.push(format!("{name}: P0 point not in any quadrilateral position"));
        }
    }
    if bad.is_empty() {
        return Ok((true, "P0 closed under the wedge; converse holds on symplectic spaces".into()));
    }
    mismatches(bad)
}

fn miyamoto(k: u8, order: usize) -> Outcome {
    let r = verify_cq_miyamoto(k).map_err(err)?;
    Ok((
        r.all_hold() && r.group_order == order,
        format!(
            "order {}, S-matrices {}, unique {}, restriction injective {}, onto {}",
            r.group_order,
            r.is_all_s_matrices,
            r.parameters_unique,
            r.restriction_injective,
            r.restriction_onto_reduced
        ),
    ))
}

fn miyamoto_gf4(_: &SuiteOptions) -> Outcome {
    miyamoto(2, 48)
}

fn miyamoto_gf8(_: &SuiteOptions) -> Outcome {
    miyamoto(3, 448)
}

fn s_law_for<F: FieldScalar>(seed: u64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elements = F::elements();
    let units = F::units();
    let mut bad = 0;
    for _ in 0..200 {
        let mut draw = || {
            SMatrix::new(
                elements[rng.gen_range(0..elements.len())],
                elements[rng.gen_range(0..elements.len())],
                units[rng.gen_range(0..units.len())],
            )
            .map_err(err)
        };
        let (s, t) = (draw()?, draw()?);
        let product: FieldMatrix<F> = &s.realize(false) * &t.realize(false);
        if s.compose(&t).realize(false) != product {
            bad += 1;
        }
    }
    Ok(bad)
}

fn s_law(_: &SuiteOptions) -> Outcome {
    let bad = s_law_for::<Gf4>(4)? + s_law_for::<Gf8>(8)?;
    Ok((bad == 0, format!("{bad} of 400 random pairs disagree")))
}

fn z2_lines_trivial(opts: &SuiteOptions) -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for (name, expect) in [("cq", 4), ("w_a4", 0), ("w_d4", 0)] {
        let n = lines_with_nontrivial_maps::<Gf4>(&algebra(name, opts)?).map_err(err)?.len();
        ok &= n == expect;
        detail.push(format!("{name}: {n}"));
    }
    Ok((ok, format!("lines with a nontrivial map over GF(4): {}", detail.join(", "))))
}

fn aut_reduced(_: &SuiteOptions) -> Outcome {
    let r = aut_enumerate_reduced().map_err(err)?;
    Ok((
        r.order == 24 && r.gamma3_all_one && r.s_translations_found == 4,
        format!(
            "order {} from {} candidates, gamma3 = 1: {}, translations present: {}",
            r.order, r.candidates, r.gamma3_all_one, r.s_translations_found
        ),
    ))
}

fn aut_reduced_sweep(_: &SuiteOptions) -> Outcome {
    let mut swept = aut_sweep_reduced().map_err(err)?;
    let mut pruned = aut_enumerate_reduced().map_err(err)?.elements;
    swept.sort_by_key(FieldMatrix::to_bytes);
    pruned.sort_by_key(FieldMatrix::to_bytes);
    Ok((swept == pruned, format!("2^25 sweep finds {}, pruned search {}", swept.len(), pruned.len())))
}

fn aut_full(_: &SuiteOptions) -> Outcome {
    let f = aut_count_full().map_err(err)?;
    Ok((
        f.order == 96 && f.all_block_shape && f.nu_is_one && f.lifts_match && f.quadratic_identity,
        format!(
            "order {} from {} candidates, block shape {}, lifts match {}, quadratic identity {}",
            f.order, f.candidates, f.all_block_shape, f.lifts_match, f.quadratic_identity
        ),
    ))
}

fn square_zero(opts: &SuiteOptions) -> Outcome {
    let mut bad = Vec::new();
    for a in all_algebras(opts)? {
        let n = a.square_zero_failures(1000, 0x5eed);
        if n > 0 {
            bad.push(format!("{}: {n} of 1000 squares nonzero", a.space().name()));
        }
    }
    if bad.is_empty() {
        return Ok((true, "1000 random squares vanish in each algebra".into()));
    }
    mismatches(bad)
}

fn annihilator(opts: &SuiteOptions) -> Outcome {
    let mut bad = Vec::new();
    for a in all_algebras(opts)? {
        if let Err(e) = a.check_annihilator() {
            bad.push(format!("{}: {e}", a.space().name()));
        }
    }
    if bad.is_empty() {
        return Ok((true, "annihilator is spanned by the sum of all points".into()));
    }
    mismatches(bad)
}

fn ad_point_square(opts: &SuiteOptions) -> Outcome {
    let mut bad = Vec::new();
    for a in all_algebras(opts)? {
        for x in 0..a.space().n_points() {
            let ad = a.ad_matrix::<Gf2>(&a.point_vector(x)).map_err(err)?;
            if !(&ad * &ad).is_zero() {
                bad.push(format!("{} point {x}", a.space().name()));
                break;
            }
        }
    }
    if bad.is_empty() {
        return Ok((true, "ad_x squares to zero for every point".into()));
    }
    mismatches(bad)
}

fn ad_line_idempotent(opts: &SuiteOptions) -> Outcome {
    let mut bad = Vec::new();
    let mut idempotent = Vec::new();
    for a in all_algebras(opts)? {
        let mut all = true;
        for l in a.space().lines() {
            let ad = a.ad_matrix::<Gf2>(&a.line_nilpotent(l).map_err(err)?).map_err(err)?;
            all &= &ad * &ad == ad;
        }
        if all {
            idempotent.push(a.space().name().to_string());
        }
        if all != a.space().is_symplectic_type() {
            bad.push(format!("{}: idempotent on every line {all}", a.space().name()));
        }
    }
    if bad.is_empty() {
        return Ok((true, format!("ad_l idempotent on every line exactly for {}", idempotent.join(", "))));
    }
    mismatches(bad)
}
