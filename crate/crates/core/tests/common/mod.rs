//! Direct-semantics oracles that share no code with the library: sets are
//! Ackermann indices in a `u64`, membership is a bit test.

#![allow(dead_code)]

use traductive::{Enonce, Term};

/// `x ∈ y` on indices.
pub fn bit_member(x: u64, y: u64) -> bool {
    x < 64 && y >> x & 1 == 1
}

/// Element counts of P_0 .. P_5.
pub const P_SIZES: [u64; 6] = [0, 1, 2, 4, 16, 65536];

fn term(t: &Term, env: &[u64]) -> u64 {
    match t {
        Term::Litteme(h) => env[env.len() - *h as usize],
        Term::Dictif(s) => s.small_index().expect("oracle dictifs fit in u64"),
    }
}

/// Truth of a closed énoncé with every `∀` ranging over the indices below
/// `domain`.
pub fn truth_flat(e: &Enonce, domain: u64, env: &mut Vec<u64>) -> bool {
    match e {
        Enonce::Psi => false,
        Enonce::Var(_) => panic!("no variables in F"),
        Enonce::Implies(a, b) => !truth_flat(a, domain, env) || truth_flat(b, domain, env),
        Enonce::In(x, y) => bit_member(term(x, env), term(y, env)),
        Enonce::ForAll(b) => (0..domain).all(|v| {
            env.push(v);
            let r = truth_flat(b, domain, env);
            env.pop();
            r
        }),
    }
}

/// Truth where a maximal run of `∀` nested inside `layer` enclosing runs
/// ranges over `P_{rank + layer}`, the ladder reading of `[K`.
pub fn truth_ladder(e: &Enonce, rank: usize, layer: usize, env: &mut Vec<u64>) -> bool {
    match e {
        Enonce::Psi => false,
        Enonce::Var(_) => panic!("no variables in F"),
        Enonce::Implies(a, b) => !truth_ladder(a, rank, layer, env) || truth_ladder(b, rank, layer, env),
        Enonce::In(x, y) => bit_member(term(x, env), term(y, env)),
        Enonce::ForAll(_) => {
            let mut body = e;
            let mut n = 0;
            while let Enonce::ForAll(b) = body {
                body = b;
                n += 1;
            }
            let domain = P_SIZES[rank + layer];
            block(body, n, domain, rank, layer + 1, env)
        }
    }
}

fn block(body: &Enonce, n: usize, domain: u64, rank: usize, layer: usize, env: &mut Vec<u64>) -> bool {
    if n == 0 {
        return truth_ladder(body, rank, layer, env);
    }
    (0..domain).all(|v| {
        env.push(v);
        let r = block(body, n - 1, domain, rank, layer, env);
        env.pop();
        r
    })
}

/// Truth of a B-énoncé.
pub fn truth_b(e: &Enonce) -> bool {
    match e {
        Enonce::Psi => false,
        Enonce::Implies(a, b) => !truth_b(a) || truth_b(b),
        _ => panic!("not a B-énoncé"),
    }
}
