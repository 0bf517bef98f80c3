//! Acceptance criteria, one line of output per criterion.

use std::process::ExitCode;
use std::time::Instant;

use num_traits::{One, Zero};

use supertrace::exactnum::{fmt_rational, int, parse_rational, rat, Rational};
use supertrace::invtensor::{default_probe_weights, verify_tensor_properties, AdjointData, ProbeSet, TensorReport};
use supertrace::mtrace::{modified_trace, verify_trace_properties, TraceRoster};
use supertrace::report::CheckRecord;
use supertrace::repmod::{end_g, hom_space, ParityFilter, ideal_witness, kac_module, standard_module, tensor_module, trivial_witness, GModule};
use supertrace::rootdata::{build_root_system, Family, RootSystem, Weight};
use supertrace::structural::{module_checks, verify_structural_properties, weyl_dimension, zigzag_checks};
use supertrace::superlin::{str, Parity, SuperMap};

type Outcome = Result<String, String>;

fn sl(m: usize, n: usize) -> RootSystem {
    build_root_system(Family::Sl, m, n).expect("valid sl(m|n)")
}

fn all_pass(records: &[&CheckRecord], min: usize, what: &str) -> Outcome {
    if records.len() < min {
        return Err(format!("{what}: only {} checks, need {min}", records.len()));
    }
    match records.iter().find(|c| !c.passed) {
        Some(c) => Err(format!("{what}: {} [{}] expected {} got {}", c.name, c.inputs, c.expected, c.actual)),
        None => Ok(format!("{} {what} checks", records.len())),
    }
}

fn named<'a>(checks: &'a [CheckRecord], name: &str) -> Vec<&'a CheckRecord> {
    checks.iter().filter(|c| c.name == name).collect()
}

/// `d` for `sl(n|1)`, `λ = (0,…,0|a)`: `∏_{i<n} 1/(a+i)`.
fn closed_form_sl_n1(n: usize, a: &Rational) -> Rational {
    (0..n).map(|i| Rational::one() / (a + int(i as i64))).product()
}

fn criterion_1() -> Outcome {
    let samples = ["1/2", "3/2", "-1/3", "5", "-7/2", "2/5", "10", "-5/4", "7/3", "-11/2"];
    let mut count = 0;
    for n in 2..=4 {
        let rs = sl(n, 1);
        for s in samples {
            let a = parse_rational(s).unwrap();
            let mut w = vec![Rational::zero(); rs.rank()];
            w[rs.s()] = a.clone();
            let d = rs.mod_sdim(&Weight::new(w)).map_err(|e| e.to_string())?;
            let want = closed_form_sl_n1(n, &a);
            if d != want {
                return Err(format!("sl({n}|1), a = {s}: got {}, closed form {}", fmt_rational(&d), fmt_rational(&want)));
            }
            count += 1;
        }
    }
    Ok(format!("{count} weights over sl(2|1), sl(3|1), sl(4|1)"))
}

fn typical_weights(rs: &RootSystem, count: usize) -> Vec<Weight> {
    let a_s = ["1/2", "3", "-5/2", "7/3", "-1/4", "9/2", "11", "-13/3", "2/7", "17/5", "-19/2", "6"];
    let mut out = Vec::new();
    for (k, s) in a_s.iter().cycle().enumerate() {
        if out.len() == count {
            break;
        }
        let mut w = vec![Rational::zero(); rs.rank()];
        for (i, x) in w.iter_mut().enumerate() {
            if i != rs.s() {
                *x = int(((k + i) % 3) as i64);
            }
        }
        w[rs.s()] = parse_rational(s).unwrap();
        let w = Weight::new(w);
        if rs.is_typical(&w).unwrap() {
            out.push(w);
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let order = 6;
    let mut count = 0;
    for rs in [sl(2, 1), sl(3, 1), build_root_system(Family::Osp2, 0, 1).unwrap()] {
        let ws = typical_weights(&rs, 10);
        if ws.len() < 10 {
            return Err(format!("{}: fewer than 10 typical weights", rs.name()));
        }
        for w in ws {
            let d = rs.mod_sdim(&w).map_err(|e| e.to_string())?;
            let q = rs.qmod_sdim(&w, order).map_err(|e| e.to_string())?;
            if q.coeff(0) != &d {
                return Err(format!("{} {w}: constant term {} != {}", rs.name(), fmt_rational(q.coeff(0)), fmt_rational(&d)));
            }
            if !q.is_even_in_h() {
                return Err(format!("{} {w}: odd h-coefficient nonzero in {q}", rs.name()));
            }
            count += 1;
        }
    }
    Ok(format!("{count} weights over sl(2|1), sl(3|1), osp(2|2), order {order}"))
}

fn criterion_3() -> Outcome {
    let rs = sl(2, 1);
    let grid: Vec<Rational> = (-16..=16).map(|k| rat(k, 4)).collect();
    for a1 in 0..=2i64 {
        // ⟨λ+ρ, α⟩ over the odd positive roots is a and a + a₁ + 1.
        let poles = [int(0), int(-a1 - 1)];
        let mut detected = Vec::new();
        for a in &grid {
            let w = Weight::new(vec![int(a1), a.clone()]);
            let atypical = !rs.is_typical(&w).map_err(|e| e.to_string())?;
            let pole = rs.odd_product(&w).is_zero();
            if atypical != pole {
                return Err(format!("a1 = {a1}, a = {a}: typicality and the odd product disagree"));
            }
            if atypical {
                detected.push(a.clone());
            }
        }
        let mut expected: Vec<Rational> = grid.iter().filter(|a| poles.contains(a)).cloned().collect();
        expected.sort();
        if detected != expected {
            return Err(format!("a1 = {a1}: detected {detected:?}, expected {expected:?}"));
        }
        if !detected.iter().all(|a| a.is_integer()) {
            return Err(format!("a1 = {a1}: non-integer atypical point"));
        }
    }
    Ok("a1 ∈ {0,1,2}, a ∈ [−4,4] step 1/4".into())
}

fn criterion_4() -> Outcome {
    let rs = sl(2, 1);
    let std = standard_module(2, 1).map_err(|e| e.to_string())?;
    let k01 = kac_module(&rs, &Weight::from_ints(&[0, 1])).map_err(|e| e.to_string())?;
    let k11 = kac_module(&rs, &Weight::from_ints(&[1, 1])).map_err(|e| e.to_string())?;
    let k01_std = tensor_module(&k01, &std).with_name("K(0|1)⊗standard");
    let mut maps = 0;
    for v in [&k01, &k11, &k01_std] {
        let basis = end_g(v, Parity::Even);
        if basis.is_empty() {
            return Err(format!("End_g({}) has no even basis", v.name()));
        }
        for f in &basis {
            if !str(f).is_zero() {
                return Err(format!("str = {} on End_g({})", fmt_rational(&str(f)), v.name()));
            }
            maps += 1;
        }
    }
    let extra = [vec![0, 2], vec![2, 1], vec![1, 3], vec![3, 5]];
    let mut kacs: Vec<GModule> = vec![k01, k11];
    for a in &extra {
        kacs.push(kac_module(&rs, &Weight::from_ints(a)).map_err(|e| e.to_string())?);
    }
    for v in &kacs {
        if v.sdim() != 0 {
            return Err(format!("sdim {} = {}", v.name(), v.sdim()));
        }
    }
    Ok(format!("{maps} End_g basis maps, {} Kac modules with sdim 0", kacs.len()))
}

fn criterion_5() -> Outcome {
    let rs = sl(2, 1);
    let k01 = kac_module(&rs, &Weight::from_ints(&[0, 1])).map_err(|e| e.to_string())?;
    let k11 = kac_module(&rs, &Weight::from_ints(&[1, 1])).map_err(|e| e.to_string())?;
    let id = SuperMap::identity(k11.space());
    let t = trivial_witness(&k11).map_err(|e| e.to_string())?;
    let w = ideal_witness(&k11, &k01).map_err(|e| e.to_string())?;
    let via_self = modified_trace(&id, &t).map_err(|e| e.to_string())?;
    let via_k01 = modified_trace(&id, &w).map_err(|e| e.to_string())?;
    // d(a₁|a) = (a₁+1)/(a(a+a₁+1)) for sl(2|1).
    let (a1, a) = (int(1), int(1));
    let closed = (&a1 + int(1)) / (&a * (&a + &a1 + int(1)));
    let d = rs.mod_sdim(&Weight::from_ints(&[1, 1])).map_err(|e| e.to_string())?;
    if via_self != via_k01 || via_self != rat(2, 3) || closed != rat(2, 3) || d != closed {
        return Err(format!(
            "trivial witness {}, via K(0|1) {}, closed form {}, general formula {}",
            fmt_rational(&via_self),
            fmt_rational(&via_k01),
            fmt_rational(&closed),
            fmt_rational(&d)
        ));
    }
    Ok(format!("str′(Id) = {} through both witnesses", fmt_rational(&via_self)))
}

fn criterion_6(roster: &TraceRoster, trace: &[CheckRecord]) -> Outcome {
    let entries = roster.entries();
    let witnessed = entries.iter().filter(|e| !e.witnesses.is_empty()).count();
    let even: usize = entries.iter().map(|e| end_g(e.module(), Parity::Even).len()).sum();
    // Odd maps: odd endomorphisms plus the odd isomorphisms between K(λ₀) and its parity shift.
    let (k0, op) = (roster.k0.module(), roster.k0_op.module());
    let odd: usize = entries.iter().map(|e| end_g(e.module(), Parity::Odd).len()).sum::<usize>()
        + hom_space(k0, op, ParityFilter::Odd).len()
        + hom_space(op, k0, ParityFilter::Odd).len();
    if witnessed < 3 || even < 5 || odd < 3 {
        return Err(format!("roster has {witnessed} witnessed modules, {even} even and {odd} odd g-linear basis maps"));
    }
    all_pass(&named(trace, "tensor factorization str′(f⊗g) = str′(f)·str(g)"), 1, "factorization")?;
    all_pass(&named(trace, "partial trace str′(f) = str′(ptr f)"), 1, "partial trace")?;
    all_pass(&named(trace, "cyclicity str′(f∘g) = ±str′(g∘f)"), 1, "cyclicity")?;
    all_pass(&named(trace, "linearity"), 1, "linearity")?;
    let all: Vec<&CheckRecord> = trace.iter().collect();
    let summary = all_pass(&all, 40, "trace suite")?;
    Ok(format!("{summary}; {witnessed} witnessed modules, {even} even and {odd} odd g-linear basis maps"))
}

fn criterion_7(trace: &[CheckRecord]) -> Outcome {
    all_pass(&named(trace, "invariance str′(Ψ(f)∘g) = ±str′(f∘Ψ#(g))"), 10, "invariance")
}

fn criterion_8(adj: &AdjointData) -> Outcome {
    let mut total = 0;
    for n in 1..=3 {
        for (k, t) in adj.invariant_tensors(n, 3).map_err(|e| e.to_string())?.iter().enumerate() {
            if !adj.is_even(t) {
                return Err(format!("degree {n} basis[{k}] has an odd component"));
            }
            total += 1;
        }
    }
    Ok(format!("{total} invariant basis tensors for N ≤ 3, all even"))
}

fn criterion_9(report: &TensorReport) -> Outcome {
    let a = all_pass(&named(&report.checks, "classical form vanishes on IT"), 1, "vanishing")?;
    let b = all_pass(&named(&report.checks, "classical form routes agree"), 1, "route agreement")?;
    if !report.dimensions.iter().any(|d| d.degree == 3 && d.it_joint > 0) {
        return Err("no IT elements in degree 3".into());
    }
    Ok(format!("{a}, {b}"))
}

fn criterion_10(report: &TensorReport) -> Outcome {
    let sym = all_pass(&named(&report.checks, "modified form is symmetric"), 1, "symmetry")?;
    let pres = all_pass(&named(&report.checks, "modified form is presentation independent"), 1, "presentation")?;
    all_pass(&named(&report.checks, "modified form agrees across probe presentations"), 1, "cross-probe")?;
    let orth = named(&report.checks, "permutation acts orthogonally");
    let s2 = orth.iter().filter(|c| c.inputs.starts_with("S2")).count();
    let s3 = orth.iter().filter(|c| c.inputs.starts_with("S3")).count();
    if s2 != 2 || s3 != 6 {
        return Err(format!("orthogonality ran on {s2} elements of S2 and {s3} of S3"));
    }
    let o = all_pass(&orth, 8, "orthogonality")?;
    let nonzero = report.grams.iter().any(|g| g.label.starts_with("modified") && g.matrix.iter().flatten().any(|x| x != "0"));
    if !nonzero {
        return Err("modified Gram matrices are identically zero".into());
    }
    Ok(format!("{sym}, {pres}, {o}"))
}

fn criterion_11(roster: &TraceRoster, adj: &AdjointData, probes: &ProbeSet) -> Outcome {
    let mut checks = verify_structural_properties(roster, 11);
    checks.extend(module_checks(adj.module(), None));
    checks.extend(zigzag_checks(adj.space(), "adjoint"));
    let rs = adj.root_system();
    for (w, weight) in probes.trivial.iter().zip(default_probe_weights(rs)) {
        checks.extend(module_checks(&w.v, Some(&weight)));
        checks.extend(zigzag_checks(w.v.space(), w.v.name()));
    }
    for w in &probes.common {
        checks.extend(module_checks(&w.w, None));
    }
    let dims = ["0,1", "1,1", "2,1/2", "1,3"];
    for a in dims {
        let w = Weight::parse(a).unwrap();
        let k = kac_module(rs, &w).map_err(|e| e.to_string())?;
        let want = int(1 << (rs.m * rs.n)) * weyl_dimension(rs, &w);
        if int(k.dim() as i64) != want {
            return Err(format!("dim {} = {} but 2^(mn)·dim V₀ = {}", k.name(), k.dim(), want));
        }
    }
    let refs: Vec<&CheckRecord> = checks.iter().collect();
    all_pass(&refs, 50, "structural")
}

fn main() -> ExitCode {
    let start = Instant::now();
    let rs = sl(2, 1);
    let roster = TraceRoster::build(&rs, None).expect("trace roster");
    let trace = verify_trace_properties(&roster, 2024, 10);
    let adj = AdjointData::new(&rs).expect("adjoint data");
    let probes = ProbeSet::build(&rs, &default_probe_weights(&rs), None).expect("probes");
    let tensors = verify_tensor_properties(&adj, &probes, 3, 2024).expect("tensor suite");

    let results: Vec<(&str, Outcome)> = vec![
        ("closed-form modified dimension for sl(n|1)", criterion_1()),
        ("classical limit of the quantum dimension", criterion_2()),
        ("typicality locus equals the pole set", criterion_3()),
        ("supertrace vanishes on End_g of ideal modules", criterion_4()),
        ("witness independence for K(1|1)", criterion_5()),
        ("trace properties on the roster", criterion_6(&roster, &trace)),
        ("invariance identity on random triples", criterion_7(&trace)),
        ("invariant tensors are even", criterion_8(&adj)),
        ("kernel property of the extended form", criterion_9(&tensors)),
        ("modified form symmetric, well defined and S_N orthogonal", criterion_10(&tensors)),
        ("structural oracles", criterion_11(&roster, &adj, &probes)),
    ];
    let mut failed = 0;
    for (k, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1}s", results.len() - failed, results.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
