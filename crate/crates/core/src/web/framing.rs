//! Framing integers of strip edges.
//!
//! Each internal edge of a strip carries an integer `r` entering the gluing
//! sum through `(-1)^{r|α|} q^{-rκ(α)/2}`. The value depends only on the
//! types of the two vertices the edge joins. The table in
//! [`default_framing`] was obtained with [`calibrate_framing`] and is
//! re-derived by the test suite.

use super::{closed_in, glued_in, BoundaryData, Limits, StripDiagram};
use crate::partitions::Partition;
use crate::vertex::VertexCache;

/// Candidate range searched by [`calibrate_framing`].
pub const FRAMING_SEARCH: std::ops::RangeInclusive<i64> = -3..=3;

/// Framing of an edge joining vertices of types `left` and `right`.
pub fn edge_framing(left: i8, right: i8) -> i64 {
    match (left, right) {
        (1, -1) | (-1, 1) => 0,
        (1, 1) => -1,
        (-1, -1) => 1,
        _ => panic!("vertex types must be +1 or -1"),
    }
}

/// Framing integers for every internal edge of a strip with types `sigma`.
pub fn default_framing(sigma: &[i8]) -> Vec<i64> {
    sigma.windows(2).map(|w| edge_framing(w[0], w[1])).collect()
}

/// Finds the framing integers `r` in [`FRAMING_SEARCH`] for which the gluing
/// sum of the two-vertex strip `(left, right)` reproduces the closed product
/// formula through `Q`-degree `qdeg`, for all vertical legs `β_1, β_2` in
/// `{∅, (1)}`.
pub fn calibrate_framing(left: i8, right: i8, qdeg: u32) -> Vec<i64> {
    let probes = [Partition::empty(), Partition::row(1)];
    let limits = Limits { max_qdeg: qdeg.max(Limits::default().max_qdeg), ..Limits::default() };
    let cache = VertexCache::new();
    FRAMING_SEARCH
        .filter(|&r| {
            let strip = StripDiagram { sigma: vec![left, right], framing: Some(vec![r]), q_names: vec!["Q".into()] };
            let ctx = strip.context(qdeg);
            probes.iter().all(|b1| {
                probes.iter().all(|b2| {
                    let betas = vec![b1.clone(), b2.clone()];
                    let glued = glued_in(&ctx, &strip, &BoundaryData::with_betas(betas.clone()), qdeg, &limits, &cache);
                    glued.map(|g| g == closed_in(&ctx, &strip, &betas)).unwrap_or(false)
                })
            })
        })
        .collect()
}
