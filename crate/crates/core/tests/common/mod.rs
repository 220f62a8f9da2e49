#![allow(dead_code)]

use braidwalk::braid::BraidWord;

pub struct Row {
    pub name: String,
    pub braid: BraidWord,
    pub sw: u64,
}

fn parse(text: &str) -> Vec<Row> {
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let (name, rest) = line.split_once(',').unwrap();
            let (word, sw) = rest.rsplit_once(',').unwrap();
            Row {
                name: name.to_string(),
                braid: word.trim_matches('"').parse().unwrap(),
                sw: sw.trim().parse().unwrap(),
            }
        })
        .collect()
}

pub fn knots84() -> Vec<Row> {
    parse(include_str!("../../../../data/knots84.csv"))
}

pub fn knots13() -> Vec<Row> {
    parse(include_str!("../../../../data/knots13.csv"))
}

pub fn tradeoffs() -> Vec<Row> {
    parse(include_str!("../../../../data/tradeoffs.csv"))
}

pub mod fuzz {
    use braidwalk::braid::{BraidWord, Letter, Sign};
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    /// A freely reduced word on `width` strands, not necessarily using every generator.
    pub fn word(rng: &mut ChaCha8Rng, width: usize, len: usize) -> BraidWord {
        let mut letters: Vec<Letter> = Vec::with_capacity(len);
        while letters.len() < len {
            let sign = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
            let l = Letter::new(rng.gen_range(1..width), sign);
            if letters.last() != Some(&l.inverse()) {
                letters.push(l);
            }
        }
        BraidWord::new(width, letters).unwrap()
    }

    /// A word whose closure is a knot, width 2..=max_width, length 1..=max_len.
    pub fn knot(rng: &mut ChaCha8Rng, max_width: usize, max_len: usize) -> BraidWord {
        loop {
            let width = rng.gen_range(2..=max_width);
            let len = rng.gen_range(width - 1..=max_len);
            let b = word(rng, width, len);
            if b.is_knot() {
                return b;
            }
        }
    }

    /// Every reduced word of the given width and length.
    pub fn all_reduced(width: usize, len: usize) -> Vec<BraidWord> {
        let alphabet: Vec<Letter> = (1..width)
            .flat_map(|i| [Letter::pos(i), Letter::neg(i)])
            .collect();
        let mut words: Vec<Vec<Letter>> = vec![Vec::new()];
        for _ in 0..len {
            let mut next_words = Vec::new();
            for w in &words {
                for &l in &alphabet {
                    if w.last() != Some(&l.inverse()) {
                        let mut next = w.clone();
                        next.push(l);
                        next_words.push(next);
                    }
                }
            }
            words = next_words;
        }
        words.into_iter().map(|l| BraidWord::new(width, l).unwrap()).collect()
    }
}
