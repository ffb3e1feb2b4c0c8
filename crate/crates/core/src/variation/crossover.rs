use crate::error::{check_len, Error, Result};
use crate::rng::RngStream;

use super::strategy::Crossover;

fn check_rate(cr: f64) -> Result<()> {
    if (0.0..=1.0).contains(&cr) {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("CR {cr} outside [0, 1]")))
    }
}

/// Donor-take mask for binomial crossover, with the forced index.
///
/// One uniform is drawn per component, including the forced one, so the
/// stream advances by `dim + 1` draws regardless of CR.
pub fn binomial_mask(dim: usize, cr: f64, rng: &mut RngStream) -> (Vec<bool>, usize) {
    let forced = rng.index(dim);
    let mask = (0..dim).map(|j| rng.uniform() < cr || j == forced).collect();
    (mask, forced)
}

/// Circular run of donor components: starts at a uniform index and extends
/// while successive draws stay below CR, at most `dim` long.
pub fn exponential_mask(dim: usize, cr: f64, rng: &mut RngStream) -> Vec<bool> {
    let start = rng.index(dim);
    let mut mask = vec![false; dim];
    let mut len = 0;
    loop {
        mask[(start + len) % dim] = true;
        len += 1;
        if len >= dim || rng.uniform() >= cr {
            break;
        }
    }
    mask
}

fn apply(target: &[f64], donor: &[f64], mask: &[bool]) -> Vec<f64> {
    target
        .iter()
        .zip(donor)
        .zip(mask)
        .map(|((t, d), take)| if *take { *d } else { *t })
        .collect()
}

pub fn crossover_binomial(target: &[f64], donor: &[f64], cr: f64, rng: &mut RngStream) -> Result<Vec<f64>> {
    check_len(target.len(), donor.len())?;
    check_rate(cr)?;
    let (mask, _) = binomial_mask(target.len(), cr, rng);
    Ok(apply(target, donor, &mask))
}

pub fn crossover_exponential(target: &[f64], donor: &[f64], cr: f64, rng: &mut RngStream) -> Result<Vec<f64>> {
    check_len(target.len(), donor.len())?;
    check_rate(cr)?;
    let mask = exponential_mask(target.len(), cr, rng);
    Ok(apply(target, donor, &mask))
}

pub fn crossover(kind: Crossover, target: &[f64], donor: &[f64], cr: f64, rng: &mut RngStream) -> Result<Vec<f64>> {
    match kind {
        Crossover::Bin => crossover_binomial(target, donor, cr, rng),
        Crossover::Exp => crossover_exponential(target, donor, cr, rng),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn takes(trial: &[f64]) -> usize {
        // donor components are marked by negative values below
        trial.iter().filter(|v| **v < 0.0).count()
    }

    #[test]
    fn binomial_extremes() {
        let target = vec![1.0; 10];
        let donor = vec![-1.0; 10];
        let mut rng = RngStream::new(4);
        assert_eq!(crossover_binomial(&target, &donor, 1.0, &mut rng).unwrap(), donor);
        for _ in 0..200 {
            let t = crossover_binomial(&target, &donor, 0.0, &mut rng).unwrap();
            assert_eq!(takes(&t), 1);
        }
    }

    #[test]
    fn exponential_extremes() {
        let target = vec![1.0; 7];
        let donor = vec![-1.0; 7];
        let mut rng = RngStream::new(5);
        assert_eq!(crossover_exponential(&target, &donor, 1.0, &mut rng).unwrap(), donor);
        for _ in 0..200 {
            let t = crossover_exponential(&target, &donor, 0.0, &mut rng).unwrap();
            assert_eq!(takes(&t), 1);
        }
    }

    #[test]
    fn exponential_run_is_contiguous() {
        for seed in 0..2000u64 {
            let mut rng = RngStream::new(seed);
            let dim = 2 + (seed % 9) as usize;
            let mask = exponential_mask(dim, 0.6, &mut rng);
            // a single circular run has exactly one false->true transition,
            // unless the whole vector is taken
            let ones = mask.iter().filter(|b| **b).count();
            assert!(ones >= 1);
            if ones < dim {
                let rises = (0..dim).filter(|&j| !mask[j] && mask[(j + 1) % dim]).count();
                assert_eq!(rises, 1, "mask {mask:?}");
            }
        }
    }

    #[test]
    fn errors() {
        let mut rng = RngStream::new(0);
        assert!(matches!(
            crossover_binomial(&[1.0, 2.0], &[1.0], 0.5, &mut rng),
            Err(Error::Shape { .. })
        ));
        assert!(matches!(
            crossover_exponential(&[1.0], &[1.0], 1.5, &mut rng),
            Err(Error::InvalidConfig(_))
        ));
    }
}
