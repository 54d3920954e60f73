use rustfft::num_complex::Complex64;

use crate::kernel::Params;
use crate::par;
use crate::spectral::lp_norm;

use super::state::SolverState;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormRecord {
    pub t: f64,
    pub p: f64,
    pub k: [u32; 3],
    pub value: f64,
}

/// `‖∂^k φ‖_p` for every `k` in `derivs` and `p` in `p_list`.
///
/// Records come out ordered by derivative, then exponent.
pub fn record_norms(state: &SolverState, p_list: &[f64], derivs: &[[u32; 3]]) -> Vec<NormRecord> {
    let g = state.grid();
    let cell = g.cell_volume();
    let tilt = state.spec.frame_tilt;
    let mut out = Vec::with_capacity(p_list.len() * derivs.len());
    for &k in derivs {
        let mut s = state.spec.clone();
        if k != [0, 0, 0] {
            par::for_each_mut(&mut s.coeffs, |idx, c| {
                let kv = g.physical_wavevector(idx, tilt);
                let mut w = Complex64::new(1.0, 0.0);
                for a in 0..3 {
                    w *= Complex64::new(0.0, kv[a]).powu(k[a]);
                }
                *c *= w;
            });
        }
        let f = state.fft().inverse_unchecked(&s);
        for &p in p_list {
            out.push(NormRecord { t: state.t, p, k, value: lp_norm(&f.values, cell, p) });
        }
    }
    out
}

/// Decay profile the ratio is normalised by:
/// `e^{−εt} (1+t)^{−3/4(1−1/p) − k/4} (1+(At)⁴)^{−1/4(1−1/p)}`.
pub fn envelope_profile(t: f64, order: u32, p: f64, params: &Params) -> f64 {
    let q = 1.0 - 1.0 / p;
    let at = params.a * t;
    (-params.epsilon * t).exp()
        * (1.0 + t).powf(-0.75 * q - order as f64 / 4.0)
        * (1.0 + at.powi(4)).powf(-0.25 * q)
}

/// `R_{k,p}(t)`: the largest recorded norm of order `k` over the profile.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnvelopeRow {
    pub t: f64,
    pub order: u32,
    pub p: f64,
    pub norm: f64,
    pub ratio: f64,
}

pub fn envelope_ratios(records: &[NormRecord], params: &Params) -> Vec<EnvelopeRow> {
    let mut rows: Vec<EnvelopeRow> = Vec::new();
    for r in records {
        let order = r.k.iter().sum::<u32>();
        match rows.iter_mut().find(|e| e.t == r.t && e.order == order && e.p == r.p) {
            Some(e) => e.norm = e.norm.max(r.value),
            None => rows.push(EnvelopeRow { t: r.t, order, p: r.p, norm: r.value, ratio: 0.0 }),
        }
    }
    for e in &mut rows {
        e.ratio = e.norm / envelope_profile(e.t, e.order, e.p, params);
    }
    rows.sort_by(|a, b| (a.order, a.p, a.t).partial_cmp(&(b.order, b.p, b.t)).unwrap());
    rows
}

/// How far `R_{k,p}` climbs after the reference time.
#[derive(Clone, Debug, PartialEq)]
pub struct EnvelopeSummary {
    pub order: u32,
    pub p: f64,
    pub ratio_ref: f64,
    pub ratio_max: f64,
    pub t_max: f64,
}

impl EnvelopeSummary {
    pub fn growth(&self) -> f64 {
        self.ratio_max / self.ratio_ref
    }

    pub fn bounded_by(&self, factor: f64) -> bool {
        self.ratio_max.is_finite() && self.ratio_max <= factor * self.ratio_ref
    }
}

/// Summaries over `t ≥ t_ref` for each recorded `(order, p)`; the reference
/// value is the row at the first recorded time `≥ t_ref`.
pub fn envelope_summary(rows: &[EnvelopeRow], t_ref: f64) -> Vec<EnvelopeSummary> {
    let mut keys: Vec<(u32, f64)> = Vec::new();
    for r in rows {
        if !keys.contains(&(r.order, r.p)) {
            keys.push((r.order, r.p));
        }
    }
    let mut out = Vec::new();
    for (order, p) in keys {
        let tail: Vec<&EnvelopeRow> = rows
            .iter()
            .filter(|r| r.order == order && r.p == p && r.t >= t_ref - 1e-9)
            .collect();
        let Some(first) = tail.iter().min_by(|a, b| a.t.partial_cmp(&b.t).unwrap()) else {
            continue;
        };
        let top = tail
            .iter()
            .fold(*first, |m, r| if r.ratio > m.ratio || r.ratio.is_nan() { r } else { m });
        out.push(EnvelopeSummary { order, p, ratio_ref: first.ratio, ratio_max: top.ratio, t_max: top.t });
    }
    out
}
