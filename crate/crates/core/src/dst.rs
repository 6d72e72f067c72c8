//! Unnormalized type-I discrete sine transform via an odd-extension FFT.
//!
//! dst1(x)_k = Σ_{j=1}^{m} x_j sin(πjk/(m+1)), its own inverse up to a factor (m+1)/2.

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

fn plan(len: usize) -> Arc<dyn Fft<f64>> {
    static PLANS: OnceLock<Mutex<HashMap<usize, Arc<dyn Fft<f64>>>>> = OnceLock::new();
    let plans = PLANS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = plans.lock().expect("fft plan cache poisoned");
    map.entry(len)
        .or_insert_with(|| FftPlanner::new().plan_fft_forward(len))
        .clone()
}

/// In the odd extension [0, x_1..x_m, 0, −x_m..−x_1] the forward FFT at bin k
/// equals −2i·Σ x_j sin(πjk/(m+1)), so the sine sum is −Im/2.
pub fn dst1(x: &[f64]) -> Vec<f64> {
    let m = x.len();
    let big_n = m + 1;
    let fft = plan(2 * big_n);
    let mut buf = vec![Complex::new(0.0, 0.0); 2 * big_n];
    for (j, &v) in x.iter().enumerate() {
        buf[j + 1].re = v;
        buf[2 * big_n - 1 - j].re = -v;
    }
    let mut scratch = vec![Complex::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    fft.process_with_scratch(&mut buf, &mut scratch);
    (1..=m).map(|k| -0.5 * buf[k].im).collect()
}
