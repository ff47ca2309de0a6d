//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.
//!
//! Every comparison is exact. Each criterion also has a wall-clock budget;
//! exceeding it counts as a failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use vcinv::group::{Group, GroupKind};
use vcinv::hilbert::{closed_form_series_sl2, sl2_numerator, HilbertSeries};
use vcinv::invariants::{
    basis_degrees, build_dickson, build_h, build_phis_and_us, verify_h_relations, verify_identity, BasisId,
    IdentityTag, Inv, InvariantCatalog,
};
use vcinv::ringcalc::{
    gl2_generators, invariant_dimension, relative_trace, subalgebra_nonmembership_h1, verify_free_basis,
    verify_generators,
};
use vcinv::{Fe, FieldSpec, Poly};

/// Allowed difference in every exact comparison.
const EXACT: u64 = 0;

const BUDGET_IDENTITIES: Duration = Duration::from_secs(30);
const BUDGET_H_INVARIANCE: Duration = Duration::from_secs(30);
const BUDGET_EXAMPLE: Duration = Duration::from_secs(1);
const BUDGET_ORACLE: Duration = Duration::from_secs(600);
const BUDGET_FREE_BASIS: Duration = Duration::from_secs(600);
const BUDGET_GORENSTEIN: Duration = Duration::from_secs(1);
const BUDGET_TRACE: Duration = Duration::from_secs(120);
const BUDGET_GENERATORS: Duration = Duration::from_secs(300);
const BUDGET_POWER_SUM: Duration = Duration::from_secs(1);

fn field(q: u64) -> FieldSpec {
    FieldSpec::with_order(q).expect("prime power")
}

fn catalog(q: u64) -> InvariantCatalog {
    InvariantCatalog::new(&field(q)).expect("catalog builds")
}

fn big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Result of one criterion: failures as human-readable strings.
struct Outcome {
    failures: Vec<String>,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), detail: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn criterion_1() -> Outcome {
    let mut out = Outcome::new();
    let mut checked = 0;
    for q in [2u64, 3, 4, 5] {
        let c = catalog(q);
        for tag in IdentityTag::ALL {
            let r = verify_identity(&c, tag);
            checked += 1;
            out.check(r.status.is_pass(), || format!("q={q} {tag}: {}", r.witness.clone().unwrap_or_default()));
        }
        for r in verify_h_relations(&c) {
            checked += 1;
            out.check(r.status.is_pass(), || format!("q={q} {}: {}", r.tag, r.witness.clone().unwrap_or_default()));
        }
    }
    out.detail = format!("{checked} exact identity checks");
    out
}

fn criterion_2() -> Outcome {
    let mut out = Outcome::new();
    let mut built = 0;
    for q in [2u64, 3, 4, 5] {
        let k = field(q);
        let dk = build_dickson(&k).expect("dickson");
        let pu = build_phis_and_us(&k).expect("phis");
        let sl2 = Group::new(GroupKind::SL2, &k);
        for s in 0..q as u32 {
            match build_h(&dk, &pu, s) {
                Ok(h) => {
                    built += 1;
                    let back = &h * &pu.u0.pow(q as u32);
                    let num = pu.u1.pow(s + 1) * dk.d22s.pow(q as u32 - s - 1) + pu.u1s.pow(q as u32 - s) * dk.d22.pow(s);
                    out.check(back == num, || format!("q={q} s={s}: quotient times u0^q differs"));
                    out.check(sl2.is_invariant(&h).unwrap(), || format!("q={q} h_{s} not generator-invariant"));
                    if q <= 3 {
                        out.check(sl2.is_invariant_exhaustive(&h).unwrap(), || {
                            format!("q={q} h_{s} not invariant under all of SL2")
                        });
                    }
                }
                Err(e) => out.failures.push(format!("q={q} s={s}: {e}")),
            }
        }
    }
    out.detail = format!("{built} exact divisions");
    out
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    let parts = sl2_numerator(3);
    let dense = |pairs: &[(usize, u64)]| {
        let mut v = vec![0u64; pairs.iter().map(|p| p.0).max().unwrap() + 1];
        for &(e, c) in pairs {
            v[e] = c;
        }
        big(&v)
    };
    let h1 = dense(&[(0, 1), (4, 2), (8, 3), (12, 2), (16, 1)]);
    let h2 = dense(&[(2, 1), (4, 1), (6, 3), (8, 2), (10, 3), (12, 1), (14, 1)]);
    let h3 = dense(&[(6, 1), (8, 1), (10, 1)]);
    out.check(parts.h1 == h1, || format!("H1 = {:?}", parts.h1));
    out.check(parts.h2 == h2, || format!("H2 = {:?}", parts.h2));
    out.check(parts.h3 == h3, || format!("H3 = {:?}", parts.h3));
    let i = closed_form_series_sl2(3).gorenstein_check();
    out.check(i == Ok(4), || format!("gorenstein exponent {i:?}"));
    out.detail = "H1, H2, H3 and i = 4".into();
    out
}

fn compare_expansion(out: &mut Outcome, label: &str, series: &HilbertSeries, group: &Group, dmax: u32) {
    let expanded = series.expand(dmax as usize);
    for d in 0..=dmax {
        let dim = invariant_dimension(group, d).expect("within guard");
        let diff = (&expanded[d as usize] - BigInt::from(dim)).magnitude().clone();
        out.check(diff <= EXACT.into(), || {
            format!("{label} d={d}: series {} vs dimension {dim}", expanded[d as usize])
        });
    }
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new();
    let cases: [(BasisId, u64, u32); 5] = [
        (BasisId::S, 2, 24),
        (BasisId::S, 3, 18),
        (BasisId::D, 3, 18),
        (BasisId::P, 2, 16),
        (BasisId::P, 3, 16),
    ];
    for (id, q, dmax) in cases {
        let k = field(q);
        let qq = q as u32;
        let series = HilbertSeries::from_free_module(&basis_degrees(qq, id), &id.hsop_degrees(qq));
        let kind = match id {
            BasisId::D => GroupKind::GL2,
            BasisId::P => GroupKind::P2,
            _ => GroupKind::SL2,
        };
        compare_expansion(&mut out, &format!("{id} q={q}"), &series, &Group::new(kind, &k), dmax);
    }
    out.detail = "S q=2 d<=24, S q=3 d<=18, D q=3 d<=18, P q=2,3 d<=16".into();
    out
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new();
    let cases = [(BasisId::S, 2u64), (BasisId::S, 3), (BasisId::P, 2), (BasisId::P, 3), (BasisId::D, 3)];
    for (id, q) in cases {
        let r = verify_free_basis(&catalog(q), id, 12).expect("within guard");
        out.check(r.status.is_pass(), || {
            let bad: Vec<_> = r.degrees.iter().filter(|c| !c.ok()).collect();
            format!("{id} q={q}: {bad:?}")
        });
    }
    out.detail = "S, P at q=2,3 and D at q=3, degrees <= 12".into();
    out
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new();
    for q in [2u32, 3, 4, 5] {
        let sl2 = closed_form_series_sl2(q);
        let from_basis = HilbertSeries::from_free_module(&basis_degrees(q, BasisId::S), &BasisId::S.hsop_degrees(q));
        out.check(sl2.series_equal(&from_basis), || format!("q={q}: closed form differs from basis series"));
        let gl2 = HilbertSeries::from_free_module(&basis_degrees(q, BasisId::D), &BasisId::D.hsop_degrees(q));
        let (i_sl, i_gl) = (sl2.gorenstein_check(), gl2.gorenstein_check());
        out.check(i_sl == Ok(4), || format!("q={q} SL2: {i_sl:?}"));
        out.check(i_gl == Ok(4), || format!("q={q} GL2: {i_gl:?}"));
        let n_sl = from_basis.numerator_degree();
        let n_gl = gl2.numerator_degree();
        out.check(n_sl == Some((2 * q * q - 2) as usize), || format!("q={q} SL2 numerator degree {n_sl:?}"));
        out.check(n_gl == Some((4 * q * q - 2 * q - 6) as usize), || {
            format!("q={q} GL2 numerator degree {n_gl:?}")
        });
    }
    out.detail = "SL2 and GL2 at q=2..5".into();
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    let q = 3u32;
    let c = catalog(q as u64);
    let g = |i: Inv| c.get(i).expect("entry").clone();
    let m = q - 1;
    let mut n = 0;
    let mut check = |out: &mut Outcome, f: Poly, fixed: bool, label: String| {
        n += 1;
        match relative_trace(&f) {
            Ok(t) => {
                let expected = if fixed { f.clone() } else { Poly::zero(f.field()) };
                out.check(t == expected, || format!("{label}: expected {}", if fixed { "f" } else { "0" }));
            }
            Err(e) => out.failures.push(format!("{label}: {e}")),
        }
    };
    for i in 0..=2 {
        for j in 0..=2 {
            for a in 0..=1 {
                for b in 0..=1 {
                    let base = g(Inv::U1s).pow(i) * g(Inv::U1).pow(j) * g(Inv::D22s).pow(a) * g(Inv::D22).pow(b);
                    let fixed = (a + m - b).is_multiple_of(m);
                    check(&mut out, base.clone(), fixed, format!("u1s^{i} u1^{j} d22s^{a} d22^{b}"));
                    for k in 1..=q {
                        let f = &base * &g(Inv::U0).pow(k);
                        check(&mut out, f, fixed, format!("u1s^{i} u1^{j} u0^{k} d22s^{a} d22^{b}"));
                    }
                }
            }
        }
    }
    for s in 1..=q - 2 {
        for k in 0..q {
            for a in 0..=1 {
                for b in 0..=1 {
                    let f = g(Inv::H(s)) * g(Inv::U0).pow(k) * g(Inv::D22s).pow(a) * g(Inv::D22).pow(b);
                    let fixed = (a + 2 * m - b - s).is_multiple_of(m);
                    check(&mut out, f, fixed, format!("h_{s} u0^{k} d22s^{a} d22^{b}"));
                }
            }
        }
    }
    out.detail = format!("{n} traces at q=3");
    out
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new();
    for q in [2u64, 3] {
        let c = catalog(q);
        let r = verify_generators(&c, &gl2_generators(q as u32), GroupKind::GL2, 12).expect("within guard");
        out.check(r.status.is_pass(), || format!("GL2 generators q={q}: {:?}", r.degrees));
    }
    let r = subalgebra_nonmembership_h1(&catalog(3)).expect("report");
    out.check(!r.h1_in_span, || "h_1 lies in the span".into());
    out.check(r.h0_in_span, || "control h_0 not in span".into());
    out.check(r.c21_in_span, || "control c21 not in span".into());
    out.detail = "GL2 generators q=2,3 d<=12; h_1 outside, h_0 and c21 inside".into();
    out
}

fn criterion_9() -> Outcome {
    let mut out = Outcome::new();
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let k = field(q);
        let minus_one = k.neg(Fe::ONE);
        for a in 1..=3 * (q - 1) {
            let expected = if a % (q - 1) == 0 { minus_one } else { Fe::ZERO };
            let got = k.power_sum(a);
            out.check(got == expected, || format!("q={q} a={a}: {}", k.format_elem(got)));
        }
    }
    out.detail = "q in {2,3,4,5,7,8,9}, 1 <= a <= 3(q-1)".into();
    out
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Duration, fn() -> Outcome); 9] = [
        (1, "identity suite", BUDGET_IDENTITIES, criterion_1),
        (2, "h_s polynomial and invariant", BUDGET_H_INVARIANCE, criterion_2),
        (3, "q=3 series components", BUDGET_EXAMPLE, criterion_3),
        (4, "series expansion equals brute-force dimensions", BUDGET_ORACLE, criterion_4),
        (5, "free-basis certificates", BUDGET_FREE_BASIS, criterion_5),
        (6, "Gorenstein exponent", BUDGET_GORENSTEIN, criterion_6),
        (7, "relative trace case formulas", BUDGET_TRACE, criterion_7),
        (8, "GL2 generators and h_1 non-membership", BUDGET_GENERATORS, criterion_8),
        (9, "power sums over F_q^*", BUDGET_POWER_SUM, criterion_9),
    ];
    let mut all = true;
    for (n, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let ok = outcome.failures.is_empty() && elapsed <= budget;
        all &= ok;
        println!(
            "criterion {n}: {} - {name} ({}; {:.2?}, budget {:?})",
            if ok { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed,
            budget
        );
        for f in outcome.failures.iter().take(10) {
            println!("    {f}");
        }
        if elapsed > budget {
            println!("    over budget");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
