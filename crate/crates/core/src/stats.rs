//! Two-sample comparison and multi-criteria ranking of optimizer variants.

use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};
use crate::metrics::RunBatch;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WelchResult {
    pub t: f64,
    pub p: f64,
    pub df: f64,
}

/// Mean and sample standard deviation.
pub fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = xs.iter().map(|x| (x - mean) * (x - mean)).sum();
    (mean, (ss / (n - 1.0)).sqrt())
}

/// Welch's unequal-variance t-test, two-sided.
///
/// When one sample is constant the statistic reduces to a one-sample test
/// against the other sample's variance, with `df = n_other - 1`.
pub fn welch_t(a: &[f64], b: &[f64]) -> Result<WelchResult> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::InvalidConfig(format!(
            "each sample needs at least 2 values, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let (ma, sa) = mean_sd(a);
    let (mb, sb) = mean_sd(b);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (va, vb) = (sa * sa / na, sb * sb / nb);
    let se2 = va + vb;
    if se2 == 0.0 {
        if ma == mb {
            return Ok(WelchResult {
                t: 0.0,
                p: 1.0,
                df: na + nb - 2.0,
            });
        }
        return Err(Error::DegenerateSample(ma, mb));
    }
    let t = (ma - mb) / se2.sqrt();
    let df = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    let p = if t == 0.0 {
        1.0
    } else {
        let dist = StudentsT::new(0.0, 1.0, df).map_err(|e| Error::Domain(e.to_string()))?;
        (2.0 * dist.cdf(-t.abs())).clamp(0.0, 1.0)
    };
    Ok(WelchResult { t, p, df })
}

/// `***` below 0.01, `**` below 0.05, otherwise empty.
pub fn stars(p: f64) -> &'static str {
    if p < 0.01 {
        "***"
    } else if p < 0.05 {
        "**"
    } else {
        ""
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub benchmark: String,
    pub label_a: String,
    pub label_b: String,
    pub mean_a: f64,
    pub sd_a: f64,
    pub mean_b: f64,
    pub sd_b: f64,
    pub t: f64,
    pub p: f64,
    pub df: f64,
}

/// Mean/sd of final best fitness per batch plus Welch's test between them.
pub fn compare_batches(
    benchmark: &str,
    label_a: &str,
    batch_a: &RunBatch,
    label_b: &str,
    batch_b: &RunBatch,
) -> Result<ComparisonRow> {
    let (fa, fb) = (batch_a.finals(), batch_b.finals());
    let w = welch_t(&fa, &fb)?;
    let (mean_a, sd_a) = mean_sd(&fa);
    let (mean_b, sd_b) = mean_sd(&fb);
    Ok(ComparisonRow {
        benchmark: benchmark.to_string(),
        label_a: label_a.to_string(),
        label_b: label_b.to_string(),
        mean_a,
        sd_a,
        mean_b,
        sd_b,
        t: w.t,
        p: w.p,
        df: w.df,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariantScore {
    pub variant: String,
    pub aov: f64,
    pub cs: f64,
    pub q: f64,
    pub aov_rank: f64,
    pub cs_rank: f64,
    pub q_rank: f64,
    pub average_rank: f64,
}

/// Ascending ranks starting at 1; tied values share their midrank.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1 ..= end
        let mid = (start + 1 + end) as f64 / 2.0;
        for &k in &order[start..end] {
            ranks[k] = mid;
        }
        start = end;
    }
    ranks
}

/// Rank each column independently (smaller is better), average the three
/// ranks, and sort by that average. Ties in the average keep input order.
pub fn rank_variants(scores: &[(String, f64, f64, f64)]) -> Vec<VariantScore> {
    let col = |f: fn(&(String, f64, f64, f64)) -> f64| midranks(&scores.iter().map(f).collect::<Vec<_>>());
    let ra = col(|s| s.1);
    let rc = col(|s| s.2);
    let rq = col(|s| s.3);
    let mut out: Vec<VariantScore> = scores
        .iter()
        .enumerate()
        .map(|(i, (v, aov, cs, q))| VariantScore {
            variant: v.clone(),
            aov: *aov,
            cs: *cs,
            q: *q,
            aov_rank: ra[i],
            cs_rank: rc[i],
            q_rank: rq[i],
            average_rank: (ra[i] + rc[i] + rq[i]) / 3.0,
        })
        .collect();
    out.sort_by(|a, b| a.average_rank.total_cmp(&b.average_rank));
    out
}
