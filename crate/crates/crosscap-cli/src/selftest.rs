//! The `selftest` subcommand: nine verification suites covering the same
//! ground as the repository's acceptance tests, runnable from any installed
//! binary. Expected values are recomputed live from independent routes
//! (closed forms, a prime sieve, a second inertia algorithm), so the suites
//! stay meaningful at any grid scale.

use clap::Args;
use crosscap_core::exactmath::{inertia, inertia_charpoly, isqrt, odd_square_root, SymMatrix};
use crosscap_core::familysearch::{sweep, Certificate, SearchFamily, SearchQuery};
use crosscap_core::knotmodel::{determinant_of, invariants_of, signature_of, FamilySpec};
use crosscap_core::obstruction::{classify, gc1_verdict, theorem_condition, VerdictStatus};

use crate::record::{records_of, to_csv};
use crate::CliError;

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Shrink every grid tenfold for a fast smoke run
    #[arg(long)]
    quick: bool,
    /// Flip the signature convention inside suite expectations, to prove
    /// the suites can fail (test mode)
    #[arg(long, hide = true)]
    inject_flip: bool,
}

struct Ctx {
    /// Grid divisor: 1 normally, 10 under --quick.
    scale: i64,
    flip: bool,
}

impl Ctx {
    fn expected_km1_sigma(&self, n: i64) -> i64 {
        if self.flip {
            2 * n
        } else {
            -2 * n
        }
    }
}

type Suite = (&'static str, fn(&Ctx) -> Result<(), String>);

const SUITES: [Suite; 9] = [
    ("km1-closed-forms", suite_km1_closed_forms),
    ("k4-closed-forms", suite_k4_closed_forms),
    ("oracle-equivalence", suite_oracle_equivalence),
    ("torus-witnesses", suite_torus_witnesses),
    ("seven-four", suite_seven_four),
    ("three-adic-certificates", suite_three_adic),
    ("prime-certificates", suite_prime_certificates),
    ("exactmath-oracles", suite_exactmath_oracles),
    ("determinism", suite_determinism),
];

pub fn run(args: &SelftestArgs) -> Result<(), CliError> {
    let ctx = Ctx {
        scale: if args.quick { 10 } else { 1 },
        flip: args.inject_flip,
    };
    let mut passed = 0;
    for (i, (name, suite)) in SUITES.iter().enumerate() {
        match suite(&ctx) {
            Ok(()) => {
                println!("suite {}/{} {name}: PASS", i + 1, SUITES.len());
                passed += 1;
            }
            Err(msg) => println!("suite {}/{} {name}: FAIL — {msg}", i + 1, SUITES.len()),
        }
    }
    println!("{passed}/{} suites pass", SUITES.len());
    if passed == SUITES.len() {
        Ok(())
    } else {
        Err(CliError::Internal(format!(
            "{} of {} selftest suites failed",
            SUITES.len() - passed,
            SUITES.len()
        )))
    }
}

fn odd_p_values() -> impl Iterator<Item = i64> {
    (1..=19).step_by(2).flat_map(|p| [p, -p])
}

fn suite_km1_closed_forms(ctx: &Ctx) -> Result<(), String> {
    let n_max = 1000 / ctx.scale;
    for p in odd_p_values().filter(|p| p.abs() >= 3) {
        for n in 1..=n_max {
            let spec = FamilySpec::km1(n, p).unwrap();
            let sigma = signature_of(spec);
            let expected = ctx.expected_km1_sigma(n);
            if sigma != expected {
                return Err(format!(
                    "sigma(Km1 n={n} p={p}) = {sigma}, expected {expected}"
                ));
            }
            let det = determinant_of(spec).unwrap();
            if det != 2 * n + p * p {
                return Err(format!(
                    "det(Km1 n={n} p={p}) = {det}, expected {}",
                    2 * n + p * p
                ));
            }
        }
    }
    Ok(())
}

fn suite_k4_closed_forms(ctx: &Ctx) -> Result<(), String> {
    let n_max = 1000 / ctx.scale;
    for p in odd_p_values() {
        for n in -n_max..=n_max {
            let spec = FamilySpec::k4(n, p).unwrap();
            let disc = 8 * n - p * p;
            let expected = if disc < 0 { 0 } else { 2 };
            let sigma = signature_of(spec);
            if sigma != expected {
                return Err(format!(
                    "sigma(K4 n={n} p={p}) = {sigma}, expected {expected}"
                ));
            }
            let det = determinant_of(spec).unwrap();
            if det != disc.abs() {
                return Err(format!(
                    "det(K4 n={n} p={p}) = {det}, expected {}",
                    disc.abs()
                ));
            }
        }
    }
    Ok(())
}

fn suite_oracle_equivalence(ctx: &Ctx) -> Result<(), String> {
    let n_max = 1000 / ctx.scale;
    let mut checked = 0u64;
    for p in odd_p_values() {
        for n in -n_max..=n_max {
            let spec = FamilySpec::k4(n, p).unwrap();
            let v = gc1_verdict(&invariants_of(spec).unwrap());
            let pipeline = v.status == VerdictStatus::NotObstructed;
            if theorem_condition(spec) != Some(pipeline) {
                return Err(format!("oracle mismatch at K4 n={n} p={p}: {v:?}"));
            }
            checked += 1;
        }
        for n in 1..=n_max {
            let spec = FamilySpec::km1(n, p).unwrap();
            let v = gc1_verdict(&invariants_of(spec).unwrap());
            let pipeline = v.status == VerdictStatus::NotObstructed;
            if theorem_condition(spec) != Some(pipeline) {
                return Err(format!("oracle mismatch at Km1 n={n} p={p}: {v:?}"));
            }
            checked += 1;
        }
    }
    if checked == 0 {
        return Err("empty grid".to_string());
    }
    Ok(())
}

fn suite_torus_witnesses(ctx: &Ctx) -> Result<(), String> {
    let n_max = 10_000 / ctx.scale;
    for n in 1..=n_max {
        for p in [1, -1] {
            let v = gc1_verdict(&invariants_of(FamilySpec::km1(n, p).unwrap()).unwrap());
            if v.status != VerdictStatus::NotObstructed || v.witness != Some(2 * n + 1) {
                return Err(format!(
                    "Km1(n={n}, p={p}) should pass with witness {}, got {v:?}",
                    2 * n + 1
                ));
            }
        }
    }
    Ok(())
}

fn suite_seven_four(_ctx: &Ctx) -> Result<(), String> {
    let c = classify(FamilySpec::k4neg(-2, -1).unwrap());
    let inv = &c.invariants;
    if inv.determinant != 15 {
        return Err(format!("det = {}, expected 15", inv.determinant));
    }
    if inv.signature != -2 {
        return Err(format!("sigma = {}, expected -2", inv.signature));
    }
    if c.verdict.status != VerdictStatus::Obstructed {
        return Err(format!(
            "verdict = {:?}, expected Obstructed",
            c.verdict.status
        ));
    }
    let cand = &c.verdict.candidates[0];
    if (cand.q, cand.product) != (3, 45) {
        return Err(format!("candidate = {cand:?}, expected q=3 product=45"));
    }
    if (inv.gamma4_lower, inv.gamma4_upper) != (1, 1) {
        return Err("gamma4 bounds should pin to 1".to_string());
    }
    if (c.gammac_lower, c.gammac_upper) != (2, 3) {
        return Err(format!(
            "gammac bounds = {}..{}, expected 2..3",
            c.gammac_lower, c.gammac_upper
        ));
    }
    Ok(())
}

fn suite_three_adic(ctx: &Ctx) -> Result<(), String> {
    let n_max = 100_000 / ctx.scale;
    let query = SearchQuery::new(SearchFamily::K4, 1, 1, n_max, false).unwrap();
    let report = sweep(&query);
    let mut certified = 0i64;
    for row in &report.rows {
        let expected = row.n % 3 == 0;
        let got = row.certificate == Some(Certificate::ThreeAdic);
        if got != expected {
            return Err(format!(
                "n={}: certificate {:?}, expected fired={expected}",
                row.n, row.certificate
            ));
        }
        if got {
            certified += 1;
            if row.classification.verdict.status != VerdictStatus::Obstructed {
                return Err(format!("certified n={} is not obstructed", row.n));
            }
        }
    }
    if certified != n_max / 3 {
        return Err(format!(
            "certified count {certified}, expected {}",
            n_max / 3
        ));
    }
    Ok(())
}

fn suite_prime_certificates(ctx: &Ctx) -> Result<(), String> {
    let n_max = 100_000 / ctx.scale;
    // Independent primality route: a plain Eratosthenes sieve.
    let limit = (2 * n_max + 9) as usize;
    let mut is_prime = vec![true; limit + 1];
    is_prime[0] = false;
    is_prime[1] = false;
    let mut d = 2usize;
    while d * d <= limit {
        if is_prime[d] {
            for m in (d * d..=limit).step_by(d) {
                is_prime[m] = false;
            }
        }
        d += 1;
    }
    let query = SearchQuery::new(SearchFamily::Km1, 3, 1, n_max, false).unwrap();
    let report = sweep(&query);
    for row in &report.rows {
        let expected = is_prime[(2 * row.n + 9) as usize];
        let got = row.certificate == Some(Certificate::PrimeDet);
        if got != expected {
            return Err(format!(
                "n={}: certificate {:?}, sieve says prime={expected}",
                row.n, row.certificate
            ));
        }
        if got && row.classification.verdict.status != VerdictStatus::Obstructed {
            return Err(format!("certified n={} is not obstructed", row.n));
        }
    }
    let from_sieve = (1..=n_max)
        .filter(|n| is_prime[(2 * n + 9) as usize])
        .count() as u64;
    if report.counts.certified != from_sieve {
        return Err(format!(
            "certified count {} disagrees with sieve count {from_sieve}",
            report.counts.certified
        ));
    }
    Ok(())
}

// The fill writes (i,j) and (j,i) together; indexed loops state the symmetry.
#[allow(clippy::needless_range_loop)]
fn suite_exactmath_oracles(_ctx: &Ctx) -> Result<(), String> {
    // Deterministic xorshift stream; 1000 matrices of dim <= 6.
    let mut state = 0x2545f4914f6cdd1du64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for round in 0..1000 {
        let dim = (next() % 6 + 1) as usize;
        let mut rows = vec![vec![0i64; dim]; dim];
        for i in 0..dim {
            for j in i..dim {
                let e = (next() % 41) as i64 - 20;
                rows[i][j] = e;
                rows[j][i] = e;
            }
        }
        let m = SymMatrix::from_rows(&rows).unwrap();
        let a = inertia(&m);
        let b = inertia_charpoly(&m);
        if a != b {
            return Err(format!(
                "round {round}: diagonalization {a:?} vs characteristic polynomial {b:?} on {rows:?}"
            ));
        }
    }
    for m in 0..=1_000_000i128 {
        let r = isqrt(m).unwrap();
        if !(r * r <= m && m < (r + 1) * (r + 1)) {
            return Err(format!("isqrt({m}) = {r} fails the bracketing"));
        }
    }
    for (input, expected) in [(9, Some(3)), (225, Some(15)), (33, None), (4, None)] {
        if odd_square_root(input) != expected {
            return Err(format!("odd_square_root({input}) != {expected:?}"));
        }
    }
    Ok(())
}

fn suite_determinism(ctx: &Ctx) -> Result<(), String> {
    let n_max = 100_000 / ctx.scale;
    let query = SearchQuery::new(SearchFamily::K4, 1, 1, n_max, false).unwrap();
    let mut outputs = Vec::new();
    for jobs in [1usize, 4, 8] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| format!("worker pool: {e}"))?;
        let report = pool.install(|| sweep(&query));
        let bytes = to_csv(&records_of(&report)).map_err(|e| e.to_string())?;
        outputs.push((jobs, bytes));
    }
    let (_, reference) = &outputs[0];
    for (jobs, bytes) in &outputs[1..] {
        if bytes != reference {
            return Err(format!(
                "CSV bytes differ between --jobs 1 and --jobs {jobs}"
            ));
        }
    }
    Ok(())
}
