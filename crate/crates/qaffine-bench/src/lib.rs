//! Shared fixtures for the benchmarks.

use qaffine::fundrep::sample_points;
use qaffine::limits::YangianFrame;
use qaffine::numerics::{cx, SampleSeed};
use qaffine::{build_rep, FundRep, Real};

/// `slots` representations at one sampled point.
pub fn sampled_reps<R: Real>(seed: u64, slots: usize) -> Vec<FundRep<R>> {
    let (params, pts) = sample_points::<R>(SampleSeed(seed), 0, slots, cx(1.2, 0.3), cx(0.7, -0.4)).expect("generic point");
    pts.iter().map(|p| build_rep(p, &params).expect("rep builds")).collect()
}

pub fn frame<R: Real>() -> YangianFrame<R> {
    YangianFrame::new(cx(1.4, 0.9), cx(0.8, 0.3), cx(0.6, 0.1), cx(1.2, 0.1), cx(0.9, -0.2)).expect("frame builds")
}
