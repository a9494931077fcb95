//! Corpus-level analyses over per-network attribution signatures.
//!
//! A network's signature is the 27-vector of per-feature mean attributions
//! (signed or absolute) produced by explaining its fitted model. This module
//! projects signatures to two dimensions (PCA on the covariance matrix),
//! measures how tightly the networks of one domain cluster in that plane
//! against a label-shuffling null model, tabulates per-domain winning rates
//! of features and categories, and emits normalized violin-plot columns.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::MetricsSummary;
use crate::orbit::{FeatureCategory, OrbitAtlas};
use crate::protocol::{feature_names, FEATURE_COUNT};

/// Which per-feature aggregate feeds a network's 27-entry signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignatureKind {
    /// Mean signed attribution per feature; keeps direction information.
    Signed,
    /// Mean absolute attribution per feature; pure importance.
    Absolute,
}

impl SignatureKind {
    pub fn name(&self) -> &'static str {
        match self {
            SignatureKind::Signed => "signed",
            SignatureKind::Absolute => "absolute",
        }
    }

    pub fn from_name(name: &str) -> Option<SignatureKind> {
        match name {
            "signed" => Some(SignatureKind::Signed),
            "absolute" => Some(SignatureKind::Absolute),
            _ => None,
        }
    }
}

/// One analyzed network: identity, domain labels, both signature variants,
/// and the aggregated evaluation metrics of its pipeline runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkRecord {
    pub name: String,
    pub path: String,
    pub domain: String,
    pub subdomain: Option<String>,
    /// Mean signed attribution per feature, ordered N1..N15, M1..M12.
    pub signature_signed: Vec<f64>,
    /// Mean absolute attribution per feature, same order.
    pub signature_absolute: Vec<f64>,
    pub metrics: MetricsSummary,
}

impl NetworkRecord {
    /// The signature variant selected for an analysis.
    pub fn signature(&self, kind: SignatureKind) -> &[f64] {
        match kind {
            SignatureKind::Signed => &self.signature_signed,
            SignatureKind::Absolute => &self.signature_absolute,
        }
    }

    /// Checks both signatures carry exactly one entry per orbit feature.
    pub fn validate(&self) -> Result<()> {
        for (what, signature) in [
            ("signed", &self.signature_signed),
            ("absolute", &self.signature_absolute),
        ] {
            if signature.len() != FEATURE_COUNT {
                return Err(Error::Analysis(format!(
                    "network {}: {what} signature has {} entries, expected {FEATURE_COUNT}",
                    self.name,
                    signature.len()
                )));
            }
            if signature.iter().any(|v| !v.is_finite()) {
                return Err(Error::Analysis(format!(
                    "network {}: {what} signature contains a non-finite entry",
                    self.name
                )));
            }
        }
        Ok(())
    }
}

/// Two-dimensional PCA projection of a signature matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pca2d {
    /// One (first component, second component) coordinate per input row.
    pub coordinates: Vec<(f64, f64)>,
    /// Fraction of total variance captured by each of the two components.
    pub explained_variance_ratio: (f64, f64),
    /// The two component direction vectors, sign-fixed so each one's
    /// largest-magnitude loading is positive.
    pub components: (Vec<f64>, Vec<f64>),
}

/// Mean-centers, eigendecomposes the covariance matrix, and projects onto
/// the top two eigenvectors. Requires at least three rows of equal width
/// (at least two columns); negative eigenvalues from numerical noise clamp
/// to zero before the variance ratios are formed.
pub fn pca_2d(signatures: &[Vec<f64>]) -> Result<Pca2d> {
    let rows = signatures.len();
    if rows < 3 {
        return Err(Error::Analysis(format!(
            "PCA needs at least 3 rows, got {rows}"
        )));
    }
    let width = signatures[0].len();
    if width < 2 {
        return Err(Error::Analysis(format!(
            "PCA needs at least 2 columns, got {width}"
        )));
    }
    for (i, row) in signatures.iter().enumerate() {
        if row.len() != width {
            return Err(Error::Shape(format!(
                "signature row {i} has {} entries, expected {width}",
                row.len()
            )));
        }
        if row.iter().any(|v| !v.is_finite()) {
            return Err(Error::Input(format!(
                "signature row {i} contains a non-finite entry"
            )));
        }
    }

    let mut means = vec![0.0f64; width];
    for row in signatures {
        for (mean, &value) in means.iter_mut().zip(row) {
            *mean += value;
        }
    }
    for mean in &mut means {
        *mean /= rows as f64;
    }
    let centered: Vec<Vec<f64>> = signatures
        .iter()
        .map(|row| row.iter().zip(&means).map(|(&v, &m)| v - m).collect())
        .collect();

    let covariance = nalgebra::DMatrix::from_fn(width, width, |a, b| {
        centered
            .iter()
            .map(|row| row[a] * row[b])
            .sum::<f64>()
            / (rows as f64 - 1.0)
    });
    let eigen = nalgebra::SymmetricEigen::new(covariance);
    let mut order: Vec<usize> = (0..width).collect();
    order.sort_by(|&a, &b| {
        eigen.eigenvalues[b]
            .partial_cmp(&eigen.eigenvalues[a])
            .expect("covariance eigenvalues are finite")
            .then(a.cmp(&b))
    });

    let total_variance: f64 = eigen.eigenvalues.iter().map(|&v| v.max(0.0)).sum();
    let ratio = |slot: usize| -> f64 {
        if total_variance > 0.0 {
            eigen.eigenvalues[order[slot]].max(0.0) / total_variance
        } else {
            0.0
        }
    };

    let component = |slot: usize| -> Vec<f64> {
        let column = eigen.eigenvectors.column(order[slot]);
        let mut loadings: Vec<f64> = column.iter().copied().collect();
        let dominant = loadings
            .iter()
            .enumerate()
            .max_by(|(ia, a), (ib, b)| {
                a.abs()
                    .partial_cmp(&b.abs())
                    .expect("loadings are finite")
                    .then(ib.cmp(ia))
            })
            .map(|(_, &v)| v)
            .unwrap_or(0.0);
        if dominant < 0.0 {
            for value in &mut loadings {
                *value = -*value;
            }
        }
        loadings
    };
    let first = component(0);
    let second = component(1);

    let coordinates = centered
        .iter()
        .map(|row| {
            let x: f64 = row.iter().zip(&first).map(|(v, l)| v * l).sum();
            let y: f64 = row.iter().zip(&second).map(|(v, l)| v * l).sum();
            (x, y)
        })
        .collect();

    Ok(Pca2d {
        coordinates,
        explained_variance_ratio: (ratio(0), ratio(1)),
        components: (first, second),
    })
}

/// An empirical p-value from a finite null model: either an exact fraction
/// of null runs at or below the observed statistic, or the censored form
/// reported when no null run reached it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum PValue {
    Exact(f64),
    /// No null run beat the observation; the value is only known to be
    /// below 1 over the stored run count.
    LessThanOneOver(usize),
}

impl fmt::Display for PValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PValue::Exact(p) => write!(f, "{p}"),
            PValue::LessThanOneOver(runs) => write!(f, "<{}", 1.0 / *runs as f64),
        }
    }
}

/// Observed clustering tightness of one domain against its null model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteringStat {
    pub domain: String,
    /// Mean pairwise distance of the domain's points.
    pub d_bar: f64,
    /// Mean of the null-model statistic over all runs.
    pub d_tilde_mean: f64,
    pub p_value: PValue,
    pub runs: usize,
}

fn mean_pairwise_distance(points: &[(f64, f64)]) -> f64 {
    let n = points.len();
    let mut total = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = points[i].0 - points[j].0;
            let dy = points[i].1 - points[j].1;
            total += (dx * dx + dy * dy).sqrt();
        }
    }
    total / (n * (n - 1) / 2) as f64
}

/// Measures how tightly `domain`'s points cluster: the observed mean
/// pairwise distance is compared against `runs` draws of equally many
/// points chosen uniformly without replacement from the whole cloud, and
/// the p-value is the fraction of draws at least as tight. Requires a
/// domain with at least two members and `runs >= 100`.
pub fn clustering_stat(
    coordinates: &[(f64, f64)],
    labels: &[String],
    domain: &str,
    runs: usize,
    seed: u64,
) -> Result<ClusteringStat> {
    use rand::Rng;
    use rand::SeedableRng;
    if coordinates.len() != labels.len() {
        return Err(Error::Shape(format!(
            "{} coordinates but {} labels",
            coordinates.len(),
            labels.len()
        )));
    }
    if runs < 100 {
        return Err(Error::Analysis(format!(
            "the null model needs at least 100 runs, got {runs}"
        )));
    }
    let members: Vec<(f64, f64)> = coordinates
        .iter()
        .zip(labels)
        .filter(|(_, label)| label.as_str() == domain)
        .map(|(&point, _)| point)
        .collect();
    if members.len() < 2 {
        return Err(Error::Analysis(format!(
            "domain {domain} has {} member(s); the clustering statistic needs at least 2",
            members.len()
        )));
    }
    let d_bar = mean_pairwise_distance(&members);

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut indices: Vec<usize> = (0..coordinates.len()).collect();
    let mut tighter = 0usize;
    let mut null_total = 0.0f64;
    let mut draw = Vec::with_capacity(members.len());
    let mut chosen = Vec::with_capacity(members.len());
    for _ in 0..runs {
        for i in 0..members.len() {
            let j = rng.gen_range(i..indices.len());
            indices.swap(i, j);
        }
        // Sorting the drawn indices makes the statistic a function of the
        // chosen subset alone, independent of draw order.
        chosen.clear();
        chosen.extend_from_slice(&indices[..members.len()]);
        chosen.sort_unstable();
        draw.clear();
        draw.extend(chosen.iter().map(|&i| coordinates[i]));
        let d_tilde = mean_pairwise_distance(&draw);
        null_total += d_tilde;
        if d_tilde <= d_bar {
            tighter += 1;
        }
    }

    let p_value = if tighter == 0 {
        PValue::LessThanOneOver(runs)
    } else {
        PValue::Exact(tighter as f64 / runs as f64)
    };
    Ok(ClusteringStat {
        domain: domain.to_string(),
        d_bar,
        d_tilde_mean: null_total / runs as f64,
        p_value,
        runs,
    })
}

/// Granularity of a winning-rate table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WinningGranularity {
    Feature,
    Category,
}

/// Winning rates of one domain: for each item (feature or category), the
/// fraction of the domain's networks where that item has the highest mean
/// absolute attribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainWinningRates {
    pub domain: String,
    /// Rates parallel to the item list; sums to one.
    pub rates: Vec<f64>,
    /// Number of networks in the domain.
    pub networks: usize,
    /// How many networks had a tied top item (broken toward the lowest
    /// feature or category index).
    pub ties: usize,
}

/// Per-domain winning rates over all records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WinningRates {
    pub granularity: WinningGranularity,
    /// Item names: the 27 feature names or the 5 category names.
    pub items: Vec<String>,
    pub domains: Vec<DomainWinningRates>,
}

fn argmax_with_tie(values: &[f64]) -> (usize, bool) {
    let mut best = 0usize;
    let mut tied = false;
    for (i, &value) in values.iter().enumerate().skip(1) {
        if value > values[best] {
            best = i;
            tied = false;
        } else if value == values[best] {
            tied = true;
        }
    }
    (best, tied)
}

/// Tabulates, per domain, how often each feature (or category) attains the
/// highest mean absolute attribution. Ties break toward the lowest index
/// and are counted in the output. The atlas supplies the feature-category
/// assignment.
pub fn winning_rates(
    records: &[NetworkRecord],
    atlas: &OrbitAtlas,
    granularity: WinningGranularity,
) -> Result<WinningRates> {
    if records.is_empty() {
        return Err(Error::Analysis(
            "winning rates need at least one network record".into(),
        ));
    }
    let names = feature_names();
    let items: Vec<String> = match granularity {
        WinningGranularity::Feature => names.iter().map(|n| n.to_string()).collect(),
        WinningGranularity::Category => FeatureCategory::ALL
            .iter()
            .map(|c| c.name().to_string())
            .collect(),
    };
    let category_slot: Vec<usize> = names
        .iter()
        .map(|name| {
            let category = atlas
                .feature_category(name)
                .expect("canonical feature names map to categories");
            FeatureCategory::ALL
                .iter()
                .position(|c| c == &category)
                .expect("category is one of the five")
        })
        .collect();

    let mut domains: Vec<String> = records.iter().map(|r| r.domain.clone()).collect();
    domains.sort();
    domains.dedup();

    let mut tables = Vec::with_capacity(domains.len());
    for domain in domains {
        let mut wins = vec![0usize; items.len()];
        let mut networks = 0usize;
        let mut ties = 0usize;
        for record in records.iter().filter(|r| r.domain == domain) {
            record.validate()?;
            let importances = &record.signature_absolute;
            let scores: Vec<f64> = match granularity {
                WinningGranularity::Feature => importances.clone(),
                WinningGranularity::Category => {
                    let mut sums = vec![0.0f64; items.len()];
                    for (feature, &value) in importances.iter().enumerate() {
                        sums[category_slot[feature]] += value;
                    }
                    sums
                }
            };
            let (best, tied) = argmax_with_tie(&scores);
            wins[best] += 1;
            networks += 1;
            ties += usize::from(tied);
        }
        let rates = wins
            .iter()
            .map(|&w| w as f64 / networks as f64)
            .collect();
        tables.push(DomainWinningRates {
            domain,
            rates,
            networks,
            ties,
        });
    }
    Ok(WinningRates {
        granularity,
        items,
        domains: tables,
    })
}

/// One normalized violin column: scores mapped through
/// `(max - s) / (max - min)`, so the maximum lands at 0 and the minimum at 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolinColumn {
    pub values: Vec<f64>,
    /// Set when the scores were constant and the column degenerated to all
    /// zeros.
    pub degenerate: bool,
}

/// Applies the reversed min-max normalization used for violin plots. A
/// constant column cannot be normalized and comes back as zeros with the
/// degenerate flag set.
pub fn violin_normalize(scores: &[f64]) -> Result<ViolinColumn> {
    if scores.is_empty() {
        return Err(Error::Analysis(
            "cannot normalize an empty score column".into(),
        ));
    }
    if scores.iter().any(|v| !v.is_finite()) {
        return Err(Error::Input(
            "violin scores contain a non-finite value".into(),
        ));
    }
    let max = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = scores.iter().cloned().fold(f64::INFINITY, f64::min);
    if max == min {
        return Ok(ViolinColumn {
            values: vec![0.0; scores.len()],
            degenerate: true,
        });
    }
    let span = max - min;
    Ok(ViolinColumn {
        values: scores.iter().map(|&s| (max - s) / span).collect(),
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{Aggregate, MetricsSummary};

    fn dummy_metrics() -> MetricsSummary {
        let unit = Aggregate {
            mean: 0.5,
            std_dev: 0.0,
            count: 1,
        };
        MetricsSummary {
            auc: unit,
            precision: unit,
            recall: unit,
            f1: unit,
        }
    }

    fn record(name: &str, domain: &str, absolute: Vec<f64>) -> NetworkRecord {
        NetworkRecord {
            name: name.to_string(),
            path: format!("{name}.edges"),
            domain: domain.to_string(),
            subdomain: None,
            signature_signed: vec![0.0; FEATURE_COUNT],
            signature_absolute: absolute,
            metrics: dummy_metrics(),
        }
    }

    #[test]
    fn pca_recovers_a_dominant_axis() {
        let signatures: Vec<Vec<f64>> = (0..6)
            .map(|i| {
                let t = i as f64;
                vec![3.0 * t, 0.0, 0.0]
            })
            .collect();
        let pca = pca_2d(&signatures).unwrap();
        assert!((pca.explained_variance_ratio.0 - 1.0).abs() < 1e-12);
        assert_eq!(pca.explained_variance_ratio.1, 0.0);
        // The dominant loading is on the first column and sign-fixed
        // positive, so coordinates increase with the input.
        assert!(pca.components.0[0] > 0.99);
        assert!(pca.coordinates.windows(2).all(|w| w[0].0 < w[1].0));
        let yspread: f64 = pca.coordinates.iter().map(|c| c.1.abs()).sum();
        assert!(yspread < 1e-9);
    }

    #[test]
    fn pca_is_invariant_to_row_order() {
        let base = vec![
            vec![1.0, 2.0, 0.5],
            vec![-1.0, 0.0, 2.0],
            vec![2.0, 1.0, -0.5],
            vec![0.0, -2.0, 1.0],
        ];
        let mut reversed = base.clone();
        reversed.reverse();
        let a = pca_2d(&base).unwrap();
        let b = pca_2d(&reversed).unwrap();
        assert_eq!(a.components, b.components);
        assert_eq!(a.explained_variance_ratio, b.explained_variance_ratio);
        for (i, coord) in a.coordinates.iter().enumerate() {
            let mirrored = b.coordinates[base.len() - 1 - i];
            assert!((coord.0 - mirrored.0).abs() < 1e-12);
            assert!((coord.1 - mirrored.1).abs() < 1e-12);
        }
    }

    #[test]
    fn pca_preconditions_are_enforced() {
        assert!(pca_2d(&[vec![1.0, 2.0], vec![2.0, 1.0]]).is_err());
        assert!(pca_2d(&[vec![1.0], vec![2.0], vec![3.0]]).is_err());
        let ragged = vec![vec![1.0, 2.0], vec![2.0], vec![3.0, 1.0]];
        assert!(pca_2d(&ragged).is_err());
    }

    #[test]
    fn two_point_domain_distance_is_their_distance() {
        let coordinates = vec![(0.0, 0.0), (3.0, 4.0), (10.0, 10.0)];
        let labels: Vec<String> = vec!["a".into(), "a".into(), "b".into()];
        let stat = clustering_stat(&coordinates, &labels, "a", 100, 1).unwrap();
        assert!((stat.d_bar - 5.0).abs() < 1e-12);
        assert_eq!(stat.runs, 100);
    }

    #[test]
    fn whole_cloud_domain_is_never_significant() {
        let coordinates: Vec<(f64, f64)> = (0..8)
            .map(|i| (i as f64, (i * i) as f64 * 0.1))
            .collect();
        let labels: Vec<String> = vec!["all".into(); 8];
        let stat = clustering_stat(&coordinates, &labels, "all", 100, 2).unwrap();
        // Every null draw selects all points, so the null statistic equals
        // the observed one in every run.
        assert_eq!(stat.p_value, PValue::Exact(1.0));
        assert!((stat.d_tilde_mean - stat.d_bar).abs() < 1e-12);
    }

    #[test]
    fn tight_cluster_in_a_broad_cloud_is_censored() {
        let mut coordinates: Vec<(f64, f64)> = Vec::new();
        let mut labels: Vec<String> = Vec::new();
        for i in 0..5 {
            coordinates.push((0.001 * i as f64, 0.0));
            labels.push("tight".into());
        }
        for i in 0..40 {
            let angle = i as f64 * 0.7;
            coordinates.push((100.0 * angle.cos(), 100.0 * angle.sin()));
            labels.push("cloud".into());
        }
        let stat = clustering_stat(&coordinates, &labels, "tight", 100, 3).unwrap();
        assert_eq!(stat.p_value, PValue::LessThanOneOver(100));
        assert_eq!(stat.p_value.to_string(), "<0.01");
        assert!(stat.d_tilde_mean > stat.d_bar);
    }

    #[test]
    fn clustering_preconditions_are_enforced() {
        let coordinates = vec![(0.0, 0.0), (1.0, 0.0)];
        let labels: Vec<String> = vec!["a".into(), "b".into()];
        assert!(clustering_stat(&coordinates, &labels, "a", 100, 0).is_err());
        assert!(clustering_stat(&coordinates, &labels, "a", 99, 0).is_err());
        assert!(clustering_stat(&coordinates, &labels[..1], "a", 100, 0).is_err());
    }

    #[test]
    fn winning_rates_partition_each_domain() {
        let mut top_m2 = vec![0.1; FEATURE_COUNT];
        top_m2[16] = 5.0; // M2 sits at index 16 of N1..N15,M1..M12.
        let mut top_n1 = vec![0.1; FEATURE_COUNT];
        top_n1[0] = 4.0;
        let records = vec![
            record("a", "social", top_m2.clone()),
            record("b", "social", top_m2.clone()),
            record("c", "social", top_n1),
            record("d", "biological", top_m2),
        ];
        let table = winning_rates(&records, &OrbitAtlas::standard(), WinningGranularity::Feature).unwrap();
        assert_eq!(table.items.len(), FEATURE_COUNT);
        let social = table
            .domains
            .iter()
            .find(|d| d.domain == "social")
            .unwrap();
        assert_eq!(social.networks, 3);
        assert!((social.rates[16] - 2.0 / 3.0).abs() < 1e-12);
        assert!((social.rates[0] - 1.0 / 3.0).abs() < 1e-12);
        for domain in &table.domains {
            let total: f64 = domain.rates.iter().sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn winning_rate_ties_break_to_the_lowest_index_and_are_counted() {
        let mut tied = vec![0.0; FEATURE_COUNT];
        tied[3] = 2.0;
        tied[10] = 2.0;
        let records = vec![record("a", "d", tied)];
        let table = winning_rates(&records, &OrbitAtlas::standard(), WinningGranularity::Feature).unwrap();
        assert_eq!(table.domains[0].rates[3], 1.0);
        assert_eq!(table.domains[0].rates[10], 0.0);
        assert_eq!(table.domains[0].ties, 1);
    }

    #[test]
    fn category_rates_sum_block_importances() {
        // All importance on N1 (popularity_first) except a bigger block on
        // M2 + M1 (similarity_first).
        let mut importances = vec![0.0; FEATURE_COUNT];
        importances[0] = 1.0; // N1
        importances[15] = 0.7; // M1
        importances[16] = 0.7; // M2
        let records = vec![record("a", "d", importances)];
        let table = winning_rates(&records, &OrbitAtlas::standard(), WinningGranularity::Category).unwrap();
        assert_eq!(table.items.len(), 5);
        let winner = table.items[argmax_with_tie(&table.domains[0].rates).0].clone();
        assert_eq!(winner, "similarity_first");
    }

    #[test]
    fn violin_endpoints_map_to_zero_and_one() {
        let column = violin_normalize(&[4.0, 1.0, 2.5]).unwrap();
        assert_eq!(column.values[0], 0.0);
        assert_eq!(column.values[1], 1.0);
        assert!((column.values[2] - 0.5).abs() < 1e-12);
        assert!(!column.degenerate);
        let constant = violin_normalize(&[2.0, 2.0]).unwrap();
        assert_eq!(constant.values, vec![0.0, 0.0]);
        assert!(constant.degenerate);
        assert!(violin_normalize(&[]).is_err());
    }

    #[test]
    fn signature_kinds_round_trip_by_name() {
        assert_eq!(
            SignatureKind::from_name("signed"),
            Some(SignatureKind::Signed)
        );
        assert_eq!(
            SignatureKind::from_name("absolute"),
            Some(SignatureKind::Absolute)
        );
        assert_eq!(SignatureKind::from_name("other"), None);
    }
}
