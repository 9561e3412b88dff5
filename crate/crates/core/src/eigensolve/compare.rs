use super::types::{MatchedPair, SpectrumLevel, SpectrumReport, Tolerance};

/// One-to-one matching of reference states to computed levels. Candidate
/// pairs are taken in order of increasing |ΔE| (ties toward lower n) and
/// kept when both ends are free and the gap is within tolerance. Reference
/// levels count `multiplicity` times.
pub fn compare_spectra(
    analytic: &[SpectrumLevel],
    numeric: &[SpectrumLevel],
    tol: Tolerance,
    continuum_edge: Option<f64>,
) -> SpectrumReport {
    let slots: Vec<&SpectrumLevel> = analytic
        .iter()
        .flat_map(|l| std::iter::repeat_n(l, l.multiplicity.max(1)))
        .collect();
    let mut candidates = Vec::new();
    for (i, a) in slots.iter().enumerate() {
        for (j, v) in numeric.iter().enumerate() {
            let gap = (v.energy - a.energy).abs();
            if tol.accepts(a.energy, v.energy) {
                candidates.push((gap, a.n, v.n, i, j));
            }
        }
    }
    candidates.sort_by(|x, y| {
        x.0.total_cmp(&y.0)
            .then(x.1.cmp(&y.1))
            .then(x.2.cmp(&y.2))
            .then(x.3.cmp(&y.3))
    });
    let mut slot_used = vec![None; slots.len()];
    let mut num_used = vec![false; numeric.len()];
    for (_, _, _, i, j) in candidates {
        if slot_used[i].is_none() && !num_used[j] {
            slot_used[i] = Some(j);
            num_used[j] = true;
        }
    }
    let mut matched = Vec::new();
    let mut unmatched = Vec::new();
    for (i, a) in slots.iter().enumerate() {
        match slot_used[i] {
            Some(j) => {
                let v = &numeric[j];
                let abs_gap = (v.energy - a.energy).abs();
                let rel_gap = if a.energy != 0.0 {
                    abs_gap / a.energy.abs()
                } else {
                    abs_gap
                };
                matched.push(MatchedPair {
                    analytic: (*a).clone(),
                    numeric: v.clone(),
                    abs_gap,
                    rel_gap,
                });
            }
            None => unmatched.push((*a).clone()),
        }
    }
    let mut extras = Vec::new();
    let mut continuum = Vec::new();
    for (j, v) in numeric.iter().enumerate() {
        if num_used[j] {
            continue;
        }
        match continuum_edge {
            Some(edge) if v.energy >= edge => continuum.push(v.clone()),
            _ => extras.push(v.clone()),
        }
    }
    SpectrumReport {
        family: None,
        branch: None,
        params: None,
        tolerance: tol,
        matched,
        unmatched,
        extras,
        continuum,
        continuum_edge,
        grid: None,
    }
}
