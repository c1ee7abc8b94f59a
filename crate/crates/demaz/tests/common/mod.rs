//! Shared generators and helpers for the integration suites.
#![allow(dead_code)]

use demaz_core::demazure::star;
use demaz_core::{GeneratorSet, Permutation};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn sym(line: &[i64]) -> Permutation {
    Permutation::from_one_line(line, 1).unwrap()
}

pub fn random_sd(rng: &mut ChaCha8Rng, d: usize, off: i64) -> Permutation {
    let mut v: Vec<i64> = (off..off + d as i64).collect();
    v.shuffle(rng);
    Permutation::from_one_line(&v, off).unwrap()
}

/// Extended affine permutation with window `0..k`.
pub fn random_affine(rng: &mut ChaCha8Rng, k: usize) -> Permutation {
    let mut residues: Vec<i64> = (0..k as i64).collect();
    residues.shuffle(rng);
    let w: Vec<i64> = residues.iter().map(|&r| r + rng.gen_range(-1..=1) * k as i64).collect();
    Permutation::affine(&w).unwrap()
}

/// One of the basic families: `S_d` embeds, shifts, affine mod 2 or 3, two-block.
pub fn random_basic(rng: &mut ChaCha8Rng) -> Permutation {
    match rng.gen_range(0..4) {
        0 => {
            let d = rng.gen_range(1..=5);
            let off = rng.gen_range(-3..=3);
            random_sd(rng, d, off)
        }
        1 => Permutation::shift(rng.gen_range(-3..=3)),
        2 => {
            let k = rng.gen_range(2..=3);
            random_affine(rng, k)
        }
        _ => Permutation::gamma(rng.gen_range(0..=4), rng.gen_range(0..=4)).unwrap(),
    }
}

/// A basic permutation or a greedy product of two.
pub fn random_mixed(rng: &mut ChaCha8Rng) -> Permutation {
    if rng.gen_bool(0.25) {
        let (a, b) = (random_basic(rng), random_basic(rng));
        star(&a, &b).unwrap()
    } else {
        random_basic(rng)
    }
}

pub fn random_generator_set(rng: &mut ChaCha8Rng) -> GeneratorSet {
    if rng.gen_bool(0.5) {
        let mut picked = Vec::new();
        let mut n = rng.gen_range(-4..=0);
        while n <= 6 {
            if rng.gen_bool(0.5) {
                picked.push(n);
                n += 2;
            } else {
                n += 1;
            }
        }
        GeneratorSet::finite(picked).unwrap()
    } else {
        let k = rng.gen_range(2..=4);
        GeneratorSet::residue(rng.gen_range(0..k), k).unwrap()
    }
}

/// Runs the CLI in-process.
pub fn run_cli(args: &[&str], stdin: &str) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("demaz").chain(args.iter().copied());
    let code = demaz::cli::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Inversions of a one-line permutation of `1..=d`.
pub fn line_inversions(line: &[i64]) -> Vec<(usize, usize)> {
    let d = line.len();
    (0..d).flat_map(|u| (u + 1..d).map(move |v| (u, v))).filter(|&(u, v)| line[u] > line[v]).collect()
}

pub fn compose_lines(x: &[i64], y: &[i64]) -> Vec<i64> {
    y.iter().map(|&v| x[(v - 1) as usize]).collect()
}

pub fn invert_line(x: &[i64]) -> Vec<i64> {
    let mut out = vec![0; x.len()];
    for (i, &v) in x.iter().enumerate() {
        out[(v - 1) as usize] = i as i64 + 1;
    }
    out
}
