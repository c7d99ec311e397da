//! Falsifying robust properties: searching families of networks on spanning
//! subgraphs of `G` whose union asynchronous graph lacks a property.
//!
//! A clean run is not a proof of robustness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fast::SmallDynamics;
use super::{enumerate_spanning, Budgets, EnsembleError};
use crate::dynamics::{union_attractors, Flags, Property};
use crate::graph::SignedDigraph;
use crate::network::BooleanNetwork;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobustOptions {
    pub property: Property,
    /// Largest family drawn in random mode.
    pub family_size_max: usize,
    /// Pools at most this large are searched over all singletons and pairs.
    pub exhaustive_limit: usize,
    /// Families drawn in random mode.
    pub samples: u64,
    pub seed: u64,
}

impl RobustOptions {
    pub fn new(property: Property, seed: u64) -> Self {
        RobustOptions {
            property,
            family_size_max: 4,
            exhaustive_limit: 2000,
            samples: 100_000,
            seed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RobustMode {
    ExhaustivePairs,
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobustReport {
    pub graph: String,
    pub property: Property,
    /// Networks whose interaction graph is a spanning subgraph of `G`.
    pub pool_size: u128,
    pub mode: RobustMode,
    pub seed: u64,
    pub families_checked: u64,
    /// A family whose union lacks the property, as `.bn` texts.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Vec<String>>,
}

enum Pool {
    Small(Vec<SmallDynamics>),
    General(Vec<BooleanNetwork>),
}

fn family_flags(pool: &Pool, members: &[usize], scratch: &mut Vec<u64>) -> Flags {
    match pool {
        Pool::Small(ds) => {
            let mut u = ds[members[0]];
            for &m in &members[1..] {
                u = u.union(&ds[m]);
            }
            u.flags(scratch)
        }
        Pool::General(fs) => {
            let refs: Vec<&BooleanNetwork> = members.iter().map(|&m| &fs[m]).collect();
            union_attractors(&refs).expect("pool networks share a dimension").flags
        }
    }
}

/// Searches for a family of networks on spanning subgraphs of `g` whose
/// union asynchronous graph lacks `options.property`.
pub fn robust_falsify(
    g: &SignedDigraph,
    options: &RobustOptions,
    budgets: &Budgets,
) -> Result<RobustReport, EnsembleError> {
    let space = enumerate_spanning(g, budgets)?;
    let pool_size = space.len();
    let n = g.n();
    let p = options.property;
    let to_dyn = |f: &BooleanNetwork| {
        let tables: Vec<u64> = (0..n).map(|i| f.table(i)[0]).collect();
        SmallDynamics::new(&tables)
    };
    let mut report = RobustReport {
        graph: g.encoding(),
        property: p,
        pool_size,
        mode: RobustMode::ExhaustivePairs,
        seed: options.seed,
        families_checked: 0,
        counterexample: None,
    };
    if pool_size == 0 {
        return Ok(report);
    }

    if pool_size <= options.exhaustive_limit as u128 {
        let nets: Vec<BooleanNetwork> = space.iter().collect();
        let pool = if n <= 6 {
            Pool::Small(nets.iter().map(to_dyn).collect())
        } else {
            Pool::General(nets.clone())
        };
        let m = nets.len();
        let found = (0..m).into_par_iter().find_map_first(|a| {
            let mut scratch = Vec::new();
            (a..m).find_map(|b| {
                let members: &[usize] = if a == b { &[a] } else { &[a, b] };
                (!family_flags(&pool, members, &mut scratch).get(p)).then(|| members.to_vec())
            })
        });
        report.families_checked = match &found {
            None => (m * (m + 1) / 2) as u64,
            Some(fam) => {
                // position of (a, b) in the order (0,0), (0,1), .., (1,1), ..
                let (a, b) = (fam[0], *fam.last().unwrap());
                (a * m - a * a.saturating_sub(1) / 2 + (b - a) + 1) as u64
            }
        };
        report.counterexample =
            found.map(|fam| fam.iter().map(|&k| nets[k].to_bn_text()).collect());
        return Ok(report);
    }

    report.mode = RobustMode::Random;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let max = options.family_size_max.max(2);
    let families: Vec<Vec<u128>> = (0..options.samples)
        .map(|_| {
            let size = rng.gen_range(2..=max);
            (0..size).map(|_| rng.gen_range(0..pool_size)).collect()
        })
        .collect();
    let found = families.par_iter().position_first(|fam| {
        let nets: Vec<BooleanNetwork> = fam.iter().map(|&k| space.network(k)).collect();
        let flags = if n <= 6 {
            let mut u = to_dyn(&nets[0]);
            for f in &nets[1..] {
                u = u.union(&to_dyn(f));
            }
            u.flags(&mut Vec::new())
        } else {
            let refs: Vec<&BooleanNetwork> = nets.iter().collect();
            union_attractors(&refs).expect("pool networks share a dimension").flags
        };
        !flags.get(p)
    });
    report.families_checked = found.map_or(options.samples, |k| k as u64 + 1);
    report.counterexample = found.map(|k| {
        families[k]
            .iter()
            .map(|&i| space.network(i).to_bn_text())
            .collect()
    });
    Ok(report)
}
