use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scottbf::arith::{Formula, Term};

// Independent evaluator over u64 with a positional environment.
pub fn naive_term(t: &Term, vals: &[u64]) -> u64 {
    match t {
        Term::Zero => 0,
        Term::One => 1,
        Term::Var(i) => vals[*i as usize],
        Term::Add(a, b) => naive_term(a, vals) + naive_term(b, vals),
        Term::Mul(a, b) => naive_term(a, vals) * naive_term(b, vals),
    }
}

pub fn naive(f: &Formula, vals: &mut Vec<u64>) -> bool {
    match f {
        Formula::Eq(a, b) => naive_term(a, vals) == naive_term(b, vals),
        Formula::Le(a, b) => naive_term(a, vals) <= naive_term(b, vals),
        Formula::Not(g) => !naive(g, vals),
        Formula::And(a, b) => {
            let x = naive(a, vals);
            let y = naive(b, vals);
            x && y
        }
        Formula::Or(a, b) => {
            let x = naive(a, vals);
            let y = naive(b, vals);
            x || y
        }
        Formula::Implies(a, b) => {
            let x = naive(a, vals);
            let y = naive(b, vals);
            !x || y
        }
        Formula::Forall { var, bound, body } | Formula::Exists { var, bound, body } => {
            let limit = naive_term(bound, vals);
            let old = vals[*var as usize];
            let results: Vec<bool> = (0..=limit)
                .map(|x| {
                    vals[*var as usize] = x;
                    naive(body, vals)
                })
                .collect();
            vals[*var as usize] = old;
            match f {
                Formula::Forall { .. } => results.iter().all(|&r| r),
                _ => results.iter().any(|&r| r),
            }
        }
    }
}

pub const VARS: u32 = 4;

pub fn random_term(rng: &mut ChaCha8Rng, depth: u32) -> Term {
    match if depth == 0 {
        rng.gen_range(0..3)
    } else {
        rng.gen_range(0..5)
    } {
        0 => Term::Zero,
        1 => Term::One,
        2 => Term::Var(rng.gen_range(0..VARS)),
        3 => Term::add(random_term(rng, depth - 1), random_term(rng, depth - 1)),
        _ => Term::mul(random_term(rng, depth - 1), random_term(rng, depth - 1)),
    }
}

pub fn random_formula(rng: &mut ChaCha8Rng, depth: u32) -> Formula {
    let pick = if depth == 0 {
        rng.gen_range(0..2)
    } else {
        rng.gen_range(0..8)
    };
    let d = depth.saturating_sub(1);
    match pick {
        0 => Formula::eq(random_term(rng, 2), random_term(rng, 2)),
        1 => Formula::le(random_term(rng, 2), random_term(rng, 2)),
        2 => Formula::not(random_formula(rng, d)),
        3 => Formula::and(random_formula(rng, d), random_formula(rng, d)),
        4 => Formula::or(random_formula(rng, d), random_formula(rng, d)),
        5 => Formula::implies(random_formula(rng, d), random_formula(rng, d)),
        6 => Formula::forall(
            rng.gen_range(0..VARS),
            random_term(rng, 0),
            random_formula(rng, d),
        ),
        _ => Formula::exists(
            rng.gen_range(0..VARS),
            random_term(rng, 0),
            random_formula(rng, d),
        ),
    }
}

pub fn random_cases(seed: u64, count: usize, depth: u32) -> Vec<(Formula, Vec<u64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let f = random_formula(&mut rng, depth);
            let vals = (0..VARS).map(|_| rng.gen_range(0..=10)).collect();
            (f, vals)
        })
        .collect()
}
