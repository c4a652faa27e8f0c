//! k-medoids clustering of motion signatures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::signature::{Channel, MotionSignature, SAMPLES};
use super::template::MotionTemplate;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClusterError {
    #[error("no signatures to cluster")]
    Empty,
    #[error("k must be at least 1")]
    ZeroK,
    #[error("k = {k} exceeds the {distinct} distinct signatures")]
    KTooLarge { k: usize, distinct: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    /// One template per cluster, built from its medoid.
    pub templates: Vec<MotionTemplate>,
    /// Cluster of each input signature.
    pub assignments: Vec<usize>,
    /// Input index of each cluster's medoid.
    pub medoids: Vec<usize>,
}

/// Penalty for a channel that moves in one signature and not the other.
/// It exceeds the largest L2 gap between two plausible trajectories, so
/// signatures with different channel sets never look alike.
pub const PRESENCE_PENALTY: f64 = 8.0;

/// L2 distance over the concatenated sample vectors (absent channels count
/// as zeros), plus 1 for each channel whose direction or monotonicity
/// differs and [`PRESENCE_PENALTY`] for each channel present on one side only.
pub fn signature_distance(a: &MotionSignature, b: &MotionSignature) -> f64 {
    let zeros = [0.0; SAMPLES];
    let mut sq = 0.0;
    let mut penalty = 0.0;
    for c in Channel::ALL {
        let (x, y) = (a.channel(c), b.channel(c));
        let xs = x.map_or(&zeros[..], |s| &s.samples);
        let ys = y.map_or(&zeros[..], |s| &s.samples);
        sq += xs.iter().zip(ys).map(|(p, q)| (p - q) * (p - q)).sum::<f64>();
        match (x, y) {
            (Some(x), Some(y)) => {
                penalty += (x.direction != y.direction) as u8 as f64;
                penalty += (x.monotonicity != y.monotonicity) as u8 as f64;
            }
            (None, None) => {}
            _ => penalty += PRESENCE_PENALTY,
        }
    }
    sq.sqrt() + penalty
}

/// Groups signatures into `k` clusters with k-medoids. Deterministic for a
/// given `seed`.
pub fn cluster_signatures(sigs: &[MotionSignature], k: usize, seed: u64) -> Result<Clustering, ClusterError> {
    if sigs.is_empty() {
        return Err(ClusterError::Empty);
    }
    if k == 0 {
        return Err(ClusterError::ZeroK);
    }
    let n = sigs.len();
    let d: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| signature_distance(&sigs[i], &sigs[j])).collect())
        .collect();
    // One representative per group of zero-distance signatures.
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..n {
        if reps.iter().all(|&r| d[r][i] > 0.0) {
            reps.push(i);
        }
    }
    if k > reps.len() {
        return Err(ClusterError::KTooLarge { k, distinct: reps.len() });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(f64, Vec<usize>, Vec<usize>)> = None;
    for _ in 0..RESTARTS {
        let (medoids, assignments) = k_medoids(&d, &reps, k, &mut rng);
        let cost: f64 = assignments.iter().enumerate().map(|(i, &c)| d[medoids[c]][i]).sum();
        if best.as_ref().is_none_or(|b| cost < b.0) {
            best = Some((cost, medoids, assignments));
        }
    }
    let (_, medoids, assignments) = best.unwrap();

    let templates = medoids
        .iter()
        .enumerate()
        .map(|(c, &m)| MotionTemplate::from_signature(&sigs[m], assignments.iter().filter(|&&a| a == c).count()))
        .collect();
    Ok(Clustering {
        templates,
        assignments,
        medoids,
    })
}

/// Seeded runs of k-means++ initialisation plus Voronoi iteration; the
/// cheapest run wins.
const RESTARTS: usize = 8;

fn k_medoids(d: &[Vec<f64>], reps: &[usize], k: usize, rng: &mut ChaCha8Rng) -> (Vec<usize>, Vec<usize>) {
    let n = d.len();
    let mut medoids = vec![reps[rng.gen_range(0..reps.len())]];
    while medoids.len() < k {
        let weights: Vec<f64> = reps
            .iter()
            .map(|&r| medoids.iter().map(|&m| d[m][r]).fold(f64::INFINITY, f64::min).powi(2))
            .collect();
        let total: f64 = weights.iter().sum();
        let mut x = rng.gen_range(0.0..total);
        let mut pick = reps.len() - 1;
        for (i, w) in weights.iter().enumerate() {
            if *w > 0.0 && x < *w {
                pick = i;
                break;
            }
            x -= w;
        }
        // The fallback must not repeat a medoid.
        if weights[pick] == 0.0 {
            pick = weights.iter().rposition(|w| *w > 0.0).unwrap();
        }
        medoids.push(reps[pick]);
    }

    let assign = |medoids: &[usize]| -> Vec<usize> {
        (0..n)
            .map(|i| {
                (0..medoids.len())
                    .min_by(|&x, &y| d[medoids[x]][i].total_cmp(&d[medoids[y]][i]).then(x.cmp(&y)))
                    .unwrap()
            })
            .collect()
    };
    let mut assignments = assign(&medoids);
    for _ in 0..100 {
        let mut next = medoids.clone();
        for (c, m) in next.iter_mut().enumerate() {
            let members: Vec<usize> = (0..n).filter(|&i| assignments[i] == c).collect();
            if let Some(best) = members.iter().copied().min_by(|&x, &y| {
                let cost = |p: usize| members.iter().map(|&q| d[p][q]).sum::<f64>();
                cost(x).total_cmp(&cost(y)).then(x.cmp(&y))
            }) {
                *m = best;
            }
        }
        let next_assign = assign(&next);
        if next == medoids && next_assign == assignments {
            break;
        }
        medoids = next;
        assignments = next_assign;
    }

    (medoids, assignments)
}

/// Fraction of items whose cluster's majority label is their own label.
pub fn purity<L: PartialEq>(assignments: &[usize], labels: &[L]) -> f64 {
    if assignments.is_empty() {
        return 1.0;
    }
    let clusters = assignments.iter().max().map_or(0, |m| m + 1);
    let mut correct = 0;
    for c in 0..clusters {
        let members: Vec<&L> = assignments.iter().zip(labels).filter(|(a, _)| **a == c).map(|(_, l)| l).collect();
        correct += members
            .iter()
            .map(|l| members.iter().filter(|m| **m == *l).count())
            .max()
            .unwrap_or(0);
    }
    correct as f64 / assignments.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motion::{apply_motions, extract_signature, Motion};
    use crate::model::*;

    fn icon() -> Animation {
        let mut a = Animation::empty("5.7.0", 30.0, 0.0, 60.0, 512.0, 512.0);
        a.layers.push(Layer::new(LayerPayload::Shape(Vec::new()), 1, 0.0, 60.0));
        a
    }

    fn sig(m: Motion, duration: f64) -> MotionSignature {
        extract_signature(&apply_motions(&icon(), &[m], Some(duration)).unwrap())
    }

    #[test]
    fn distance_is_a_symmetric_zero_on_diagonal() {
        let a = sig(Motion::Rotate { degrees: 90.0 }, 60.0);
        let b = sig(Motion::Fade { fade_in: true }, 60.0);
        assert_eq!(signature_distance(&a, &a), 0.0);
        assert_eq!(signature_distance(&a, &b), signature_distance(&b, &a));
        // Two presence mismatches plus the L2 of two distinct ramps.
        assert!(signature_distance(&a, &b) > 2.0);
    }

    #[test]
    fn identical_signatures_make_one_template() {
        let s = sig(Motion::Fade { fade_in: true }, 60.0);
        let c = cluster_signatures(&vec![s.clone(); 5], 1, 0).unwrap();
        assert_eq!(c.templates, vec![MotionTemplate::from_signature(&s, 5)]);
        assert_eq!(
            cluster_signatures(&vec![s; 5], 2, 0),
            Err(ClusterError::KTooLarge { k: 2, distinct: 1 })
        );
    }

    #[test]
    fn k_equal_n_gives_singletons() {
        let sigs: Vec<_> = [90.0, 180.0, 360.0, -90.0].map(|d| sig(Motion::Rotate { degrees: d }, 60.0)).to_vec();
        let c = cluster_signatures(&sigs, 4, 3).unwrap();
        let mut seen = c.assignments.clone();
        seen.sort();
        assert_eq!(seen, vec![0, 1, 2, 3]);
        assert!(c.templates.iter().all(|t| t.cluster_size == 1));
    }

    #[test]
    fn rotation_and_fade_families_separate() {
        let mut sigs = Vec::new();
        let mut labels = Vec::new();
        for i in 0..10 {
            sigs.push(sig(Motion::Rotate { degrees: 90.0 * (1 + i % 4) as f64 }, 20.0 + 4.0 * i as f64));
            labels.push("rotation");
            sigs.push(sig(Motion::Fade { fade_in: i % 2 == 0 }, 20.0 + 4.0 * i as f64));
            labels.push("fade");
        }
        for seed in 0..5 {
            let c = cluster_signatures(&sigs, 2, seed).unwrap();
            assert_eq!(purity(&c.assignments, &labels), 1.0);
            assert_eq!(c, cluster_signatures(&sigs, 2, seed).unwrap());
        }
    }

    #[test]
    fn purity_of_a_mixed_cluster() {
        assert_eq!(purity(&[0, 0, 0, 1], &["a", "a", "b", "b"]), 0.75);
    }
}
