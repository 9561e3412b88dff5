use crate::catalog::{self, Branch, FamilyId, LevelCount, Params};
use crate::error::{Error, Result};

use super::types::{Origin, SpectrumLevel};

/// States per analytic level in the two-component problem: the oscillator
/// splits into two shifted copies, F3 and F5 carry two independent solutions.
pub fn level_multiplicity(f: FamilyId) -> usize {
    match f {
        FamilyId::F0Oscillator | FamilyId::F3TrigRmLike | FamilyId::F5HypRmLike => 2,
        _ => 1,
    }
}

/// Closed-form levels n = 0 .. nmax−1 of one branch, cut at the admissible count.
pub fn analytic_spectrum(
    f: FamilyId,
    b: Branch,
    p: &Params,
    nmax: usize,
) -> Result<Vec<SpectrumLevel>> {
    if nmax == 0 {
        return Err(Error::Param("at least one level must be requested".into()));
    }
    let count = match catalog::admissible_levels(f, b, p)? {
        LevelCount::Bounded(c) => c.min(nmax),
        LevelCount::Unbounded => nmax,
    };
    let mult = level_multiplicity(f);
    (0..count)
        .map(|n| {
            Ok(SpectrumLevel {
                n,
                spectral_parameter: if f == FamilyId::F0Oscillator {
                    None
                } else {
                    Some(catalog::spectral_parameter(b, p, n))
                },
                branch: Some(b),
                energy: catalog::level_energy(f, b, p, n)?,
                origin: Origin::Analytic,
                multiplicity: mult,
            })
        })
        .collect()
}

/// Levels of every available branch merged and sorted by energy.
pub fn analytic_union(f: FamilyId, p: &Params, nmax: usize) -> Result<Vec<SpectrumLevel>> {
    let mut all = Vec::new();
    for b in catalog::branch_availability(f, p)? {
        all.extend(analytic_spectrum(f, b, p, nmax)?);
    }
    all.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.n.cmp(&b.n)));
    Ok(all)
}

/// Total number of states in a level list.
pub fn state_count(levels: &[SpectrumLevel]) -> usize {
    levels.iter().map(|l| l.multiplicity).sum()
}
