//! Timing harness over seeded instance batches.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use isokit_core::isotopy::{isotopy, main_class_equivalent, IsotopyMethod};
use isokit_core::recover::{latin_square_graph, recover_latin_square};
use isokit_core::refine::{color_refine, conference_iso, default_target, find_distinguishing_set, Coloring, Rounds};
use isokit_core::{gen, perm, Budget, Graph, Isotopy, LatinSquare, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Isotopy,
    Recover,
    Refine,
    ConfIso,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Isotopy => "isotopy",
            Suite::Recover => "recover",
            Suite::Refine => "refine",
            Suite::ConfIso => "conf-iso",
        }
    }

    pub fn default_sizes(self) -> Vec<usize> {
        match self {
            Suite::Isotopy => vec![5, 6, 7],
            Suite::Recover => vec![5, 7, 9],
            Suite::Refine | Suite::ConfIso => vec![13, 17, 29],
        }
    }
}

pub const HEADER: &str = "suite,size,count,median_us,p90_us,found,absent,unknown";

/// One CSV row: timing quantiles and the verdict distribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub suite: Suite,
    pub size: usize,
    pub times: Vec<Duration>,
    pub found: usize,
    pub absent: usize,
    pub unknown: usize,
}

impl Row {
    fn quantile(&self, q: f64) -> u128 {
        let mut t = self.times.clone();
        t.sort_unstable();
        if t.is_empty() {
            return 0;
        }
        let idx = ((q * t.len() as f64).ceil() as usize).clamp(1, t.len()) - 1;
        t[idx].as_micros()
    }

    pub fn median_us(&self) -> u128 {
        self.quantile(0.5)
    }

    pub fn p90_us(&self) -> u128 {
        self.quantile(0.9)
    }

    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.suite.name(),
            self.size,
            self.times.len(),
            self.median_us(),
            self.p90_us(),
            self.found,
            self.absent,
            self.unknown
        )
    }
}

enum Instance {
    Squares(LatinSquare, LatinSquare),
    Square(LatinSquare),
    Graph(Graph, u64),
    Graphs(Graph, Graph, u64),
}

fn random_isotopy(n: usize, rng: &mut ChaCha8Rng) -> Isotopy {
    Isotopy {
        alpha: perm::random_permutation(n, rng),
        beta: perm::random_permutation(n, rng),
        gamma: perm::random_permutation(n, rng),
    }
}

/// Builds the batch for one size. Instance `i` depends only on
/// `(seed, size, i)`, so batches are identical across runs and job counts.
fn instances(suite: Suite, size: usize, count: usize, seed: u64) -> Result<Vec<Instance>, String> {
    let paley = match suite {
        Suite::Refine | Suite::ConfIso => Some(gen::paley_conference(size).map_err(|e| e.to_string())?),
        _ => None,
    };
    Ok((0..count)
        .into_par_iter()
        .map(|i| {
            let s = seed ^ ((size as u64) << 32) ^ i as u64;
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            match suite {
                Suite::Isotopy => {
                    let l1 = gen::random_latin_square(size, s);
                    // Even instances are isotopes, odd ones independent squares.
                    let l2 = if i % 2 == 0 {
                        l1.isotope(&random_isotopy(size, &mut rng))
                    } else {
                        gen::random_latin_square(size, s.wrapping_add(0x9e37_79b9))
                    };
                    Instance::Squares(l1, l2)
                }
                Suite::Recover => Instance::Square(gen::random_latin_square(size, s)),
                Suite::Refine => Instance::Graph(paley.clone().unwrap(), s),
                Suite::ConfIso => {
                    let g = paley.clone().unwrap();
                    let h = g.relabeled(&perm::random_permutation(size, &mut rng));
                    Instance::Graphs(g, h, s)
                }
            }
        })
        .collect())
}

fn tally<W>(v: &Verdict<W>, row: &mut Row) {
    match v {
        Verdict::Found(_) => row.found += 1,
        Verdict::Absent => row.absent += 1,
        Verdict::Unknown => row.unknown += 1,
    }
}

/// Runs one size of `suite`. Instances are built in parallel, timed one at
/// a time.
pub fn run_size(suite: Suite, size: usize, count: usize, seed: u64) -> Result<Row, String> {
    let batch = instances(suite, size, count, seed)?;
    let mut row = Row {
        suite,
        size,
        times: Vec::with_capacity(count),
        found: 0,
        absent: 0,
        unknown: 0,
    };
    for inst in &batch {
        let start = Instant::now();
        match inst {
            Instance::Squares(l1, l2) => {
                let v = isotopy(l1, l2, IsotopyMethod::NormalForm, &Budget::with_seed(seed)).map_err(|e| e.to_string())?;
                row.times.push(start.elapsed());
                tally(&v, &mut row);
            }
            Instance::Square(l) => {
                let v = match recover_latin_square(&latin_square_graph(l)) {
                    Ok(rec) => main_class_equivalent(&rec, l, IsotopyMethod::NormalForm, &Budget::with_seed(seed))
                        .map_err(|e| e.to_string())?
                        .map(|_| ()),
                    Err(_) => Verdict::Absent,
                };
                row.times.push(start.elapsed());
                tally(&v, &mut row);
            }
            Instance::Graph(g, s) => {
                let set = find_distinguishing_set(g, default_target(g.order()), &Budget::with_seed(*s));
                let c = color_refine(g, &Coloring::individualized(g.order(), &set), Rounds::Fixed(2), false)
                    .map_err(|e| e.to_string())?;
                row.times.push(start.elapsed());
                if c.is_discrete() {
                    row.found += 1;
                } else {
                    row.absent += 1;
                }
            }
            Instance::Graphs(g, h, s) => {
                let v = conference_iso(g, h, &Budget::with_seed(*s)).map_err(|e| e.to_string())?;
                row.times.push(start.elapsed());
                tally(&v, &mut row);
            }
        }
    }
    Ok(row)
}

/// The full CSV report, header included.
pub fn run(suite: Suite, sizes: &[usize], count: usize, seed: u64) -> Result<String, String> {
    let mut out = String::from(HEADER);
    out.push('\n');
    for &size in sizes {
        let row = run_size(suite, size, count, seed)?;
        let _ = writeln!(out, "{}", row.csv());
    }
    Ok(out)
}
