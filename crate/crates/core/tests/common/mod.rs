#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use vpbraid::presentation::{mixed_sides, MixedForm};
use vpbraid::{BraidWord, Lambda, Sign, Strand};

pub fn random_letter(rng: &mut StdRng, n: usize) -> Lambda {
    let over = rng.gen_range(1..=n) as Strand;
    let mut under = rng.gen_range(1..n) as Strand;
    if under >= over {
        under += 1;
    }
    let sign = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
    Lambda::new(over, under, sign).unwrap()
}

pub fn random_word(rng: &mut StdRng, n: usize, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len).map(|_| random_letter(rng, n)).collect();
    BraidWord::new(n, letters).unwrap()
}

/// Random word that also contains whole sides of mixed relations, so mixed
/// moves actually apply. Needs n ≥ 3.
pub fn random_word_with_relations(rng: &mut StdRng, n: usize, max_len: usize) -> BraidWord {
    let target = rng.gen_range(0..=max_len);
    let mut letters = Vec::with_capacity(target);
    while letters.len() < target {
        if n >= 3 && target - letters.len() >= 3 && rng.gen_bool(0.3) {
            let i = rng.gen_range(1..=n) as Strand;
            let mut j;
            let mut k;
            loop {
                j = rng.gen_range(1..=n) as Strand;
                k = rng.gen_range(1..=n) as Strand;
                if i != j && j != k && i != k {
                    break;
                }
            }
            let (l, r) = mixed_sides(MixedForm::Corrected, i, j, k);
            let mut side = if rng.gen_bool(0.5) { l.to_vec() } else { r.to_vec() };
            if rng.gen_bool(0.5) {
                side = side.iter().rev().map(|x| x.inverse()).collect();
            }
            letters.extend(side);
        } else {
            letters.push(random_letter(rng, n));
        }
    }
    BraidWord::new(n, letters).unwrap()
}
