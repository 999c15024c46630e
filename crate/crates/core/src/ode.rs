//! Adaptive explicit Runge-Kutta integration for complex matrix-valued ODEs.
//!
//! The propagators in this crate solve dY/dt = F(t, Y) where Y is a dense
//! complex matrix (a propagator, a block of state columns, or a density
//! matrix). Step control is standard embedded-pair error estimation with a
//! weighted RMS norm over all matrix entries.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{CoreError, Result};

/// Right-hand side of a matrix ODE. Implementations may keep internal scratch.
pub trait OdeRhs {
    fn eval(&mut self, t: f64, y: &DMatrix<C64>, dydt: &mut DMatrix<C64>);
}

impl<F> OdeRhs for F
where
    F: FnMut(f64, &DMatrix<C64>, &mut DMatrix<C64>),
{
    fn eval(&mut self, t: f64, y: &DMatrix<C64>, dydt: &mut DMatrix<C64>) {
        self(t, y, dydt)
    }
}

/// Embedded Runge-Kutta pair.
pub struct Tableau {
    pub a: &'static [&'static [f64]],
    /// Propagating (higher-order) weights.
    pub b_high: &'static [f64],
    /// Embedded (lower-order) weights used for the error estimate.
    pub b_low: &'static [f64],
    pub c: &'static [f64],
    /// Order of the propagating solution.
    pub order: usize,
    /// Order of the embedded solution (drives step-size selection).
    pub order_low: usize,
}

impl Tableau {
    pub fn stages(&self) -> usize {
        self.c.len()
    }
}

/// Verner's efficient 6(5) pair, 9 stages.
pub static VERNER_65: Tableau = Tableau {
    a: &[
        &[],
        &[0.6e-1],
        &[1.923_996_296_296_296_2e-2, 7.669_337_037_037_037e-2],
        &[0.35975e-1, 0.0, 0.107925],
        &[1.318_683_415_233_148_4, 0.0, -5.042_058_063_628_562, 4.220_674_648_395_414],
        &[
            -41.872_591_664_327_516,
            0.0,
            159.432_562_163_137_5,
            -122.119_213_565_010_03,
            5.531_743_066_200_054,
        ],
        &[
            -54.430_156_935_316_504,
            0.0,
            207.067_251_365_018_48,
            -158.610_813_784_59,
            6.991_816_585_950_242,
            -1.859_723_106_220_323_4e-2,
        ],
        &[
            -54.663_741_787_281_98,
            0.0,
            207.952_806_255_389_36,
            -159.288_957_474_499_5,
            7.018_743_740_796_944,
            -1.833_878_590_504_572_2e-2,
            -5.119_484_997_882_099e-4,
        ],
        &[
            3.438_957_868_357_036e-2,
            0.0,
            0.0,
            0.258_262_455_563_350_3,
            0.420_937_118_967_353_7,
            4.405_396_469_669_31,
            -176.483_119_024_298_65,
            172.364_133_401_415_07,
        ],
    ],
    b_high: &[
        3.438_957_868_357_036e-2,
        0.0,
        0.0,
        0.258_262_455_563_350_3,
        0.420_937_118_967_353_7,
        4.405_396_469_669_31,
        -176.483_119_024_298_65,
        172.364_133_401_415_07,
        0.0,
    ],
    b_low: &[
        4.909_967_648_382_49e-2,
        0.0,
        0.0,
        0.225_111_222_951_652_42,
        0.469_468_225_302_956_2,
        0.806_579_224_998_886_8,
        0.0,
        -0.607_119_489_177_796,
        5.686_113_944_047_569_6e-2,
    ],
    c: &[
        0.0,
        0.6e-1,
        9.593_333_333_333_333e-2,
        0.1439,
        0.4973,
        0.9725,
        0.9995,
        1.0,
        1.0,
    ],
    order: 6,
    order_low: 5,
};

/// Verner's efficient 9(8) pair, 16 stages. The workhorse for tight-tolerance
/// propagation of oscillatory Hamiltonian dynamics.
pub static VERNER_98: Tableau = Tableau {
    a: &[
        &[],
        &[0.3571e-1],
        &[-3.833_735_636_677_017e-2, 0.137_397_637_279_444_32],
        &[3.714_760_534_225_28e-2, 0.0, 0.111_442_816_026_758_42],
        &[2.674_764_429_871_505, 0.0, -9.982_382_134_885_293, 7.921_017_705_013_789],
        &[
            5.242_104_050_577_351e-2,
            0.0,
            0.0,
            0.179_691_118_917_595_32,
            6.237_879_371_938_568e-4,
        ],
        &[
            0.159_249_222_364_763_22,
            0.0,
            0.0,
            -0.429_842_987_724_108_7,
            6.665_266_542_726_088e-2,
            0.757_805_152_571_522,
        ],
        &[
            7.283_333_333_333_333e-2,
            0.0,
            0.0,
            0.0,
            0.0,
            0.335_934_459_066_510_37,
            0.246_732_207_600_156_3,
        ],
        &[
            0.729755859375e-1,
            0.0,
            0.0,
            0.0,
            0.0,
            0.334_800_972_969_933_33,
            0.118_415_823_905_066_65,
            -0.345673828125e-1,
        ],
        &[
            4.911_213_663_452_096_4e-2,
            0.0,
            0.0,
            0.0,
            0.0,
            3.983_857_361_308_652e-2,
            0.106_967_528_893_935_49,
            -2.174_259_165_458_647_7e-2,
            -0.105_595_647_486_956_49,
        ],
        &[
            -2.707_988_818_641_280_5e-2,
            0.0,
            0.0,
            0.0,
            0.0,
            0.333e-1,
            -0.164_552_607_003_605_72,
            3.428_266_306_497_39e-2,
            0.158_526_406_443_922_1,
            0.218_523_425_681_122_5,
        ],
        &[
            5.584_657_769_108_862_5e-2,
            0.0,
            0.0,
            0.0,
            0.0,
            9.166_533_166_672_539e-2,
            0.239_239_965_552_362_7,
            1.023_834_712_248_415e-2,
            -2.679_331_322_859_542_6e-3,
            4.235_624_181_474_284_5e-2,
            0.225_397_047_016_660_4,
        ],
        &[
            -0.480_251_051_272_519_6,
            0.0,
            0.0,
            0.0,
            0.0,
            -6.359_610_162_555_930_5,
            -0.276_231_389_804_084_1,
            -6.500_796_633_979_847,
            0.573_476_587_704_095_7,
            1.347_125_994_868_138_9,
            5.936_840_409_706_221,
            6.590_346_245_333_925,
        ],
        &[
            0.330_753_306_767_140_1,
            0.0,
            0.0,
            0.0,
            0.0,
            5.956_207_776_829_962,
            -0.486_831_640_048_152_77,
            4.462_055_288_206_771,
            0.741_025_823_144_207_2,
            -0.711_819_203_457_591_3,
            -5.454_619_594_516_665,
            -4.140_803_729_244_71,
            0.203_831_972_319_038_66,
        ],
        &[
            -0.584_711_112_299_894_5,
            0.0,
            0.0,
            0.0,
            0.0,
            -12.412_684_171_162_67,
            1.360_245_445_660_928,
            -22.426_105_311_118_683,
            -0.882_885_705_586_545_8,
            1.770_155_128_538_230_4,
            12.158_096_519_185_339,
            22.230_375_204_077_607,
            -0.663_448_376_020_124_9,
            0.450_962_378_725_813_74,
        ],
        &[
            1.940_575_549_810_648_7,
            0.0,
            0.0,
            0.0,
            0.0,
            21.977_984_081_145_564,
            0.823_074_732_698_472_9,
            68.164_416_836_263_54,
            -3.117_097_463_620_267,
            -4.568_841_021_822_44,
            -18.741_909_871_262_65,
            -66.577_118_396_378_32,
            1.098_915_553_165_441_8,
            0.0,
            0.0,
        ],
    ],
    b_high: &[
        1.500_669_014_979_724_7e-2,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        -1.055_180_992_746_381_3,
        0.238_494_726_378_218_3,
        0.128_815_177_428_299_15,
        0.227_662_311_104_621_57,
        1.229_532_587_437_517_4,
        4.624_976_662_810_384e-2,
        0.138_619_631_936_629_38,
        3.080_010_168_319_435_5e-2,
        0.0,
    ],
    b_low: &[
        1.897_210_532_481_101_4e-2,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        3.408_110_314_549_493_8,
        0.126_032_388_382_092_1,
        0.118_837_506_345_114_97,
        0.249_104_199_783_868_75,
        -3.269_966_219_928_978_3,
        0.302_379_810_022_888_3,
        0.0,
        0.0,
        4.652_989_552_070_924e-2,
    ],
    c: &[
        0.0,
        0.3571e-1,
        9.906_028_091_267_415e-2,
        0.148_590_421_369_011_2,
        0.6134,
        0.232_735_947_360_562_7,
        0.553_864_052_639_437_3,
        0.6555,
        0.491625,
        0.6858e-1,
        0.253,
        0.662_064_179_541_204_6,
        0.8309,
        0.8998,
        1.0,
        1.0,
    ],
    order: 9,
    order_low: 8,
};

/// Step-size and tolerance controls.
#[derive(Debug, Clone, Copy)]
pub struct AdaptiveOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Hard cap on the step size (ns).
    pub max_step: f64,
    /// First attempted step (ns).
    pub initial_step: f64,
}

impl AdaptiveOptions {
    pub fn new(rtol: f64, atol: f64, max_step: f64) -> Self {
        Self {
            rtol,
            atol,
            max_step,
            initial_step: max_step / 16.0,
        }
    }
}

/// Counters reported after an integration.
#[derive(Debug, Clone, Copy, Default)]
pub struct RkStats {
    pub accepted: usize,
    pub rejected: usize,
    pub rhs_evals: usize,
}

/// Workspace reused across steps.
struct RkWork {
    stages: Vec<DMatrix<C64>>,
    y_stage: DMatrix<C64>,
    y_new: DMatrix<C64>,
    err: DMatrix<C64>,
}

impl RkWork {
    fn new(stages: usize, rows: usize, cols: usize) -> Self {
        Self {
            stages: (0..stages).map(|_| DMatrix::zeros(rows, cols)).collect(),
            y_stage: DMatrix::zeros(rows, cols),
            y_new: DMatrix::zeros(rows, cols),
            err: DMatrix::zeros(rows, cols),
        }
    }
}

fn weighted_rms(err: &DMatrix<C64>, y0: &DMatrix<C64>, y1: &DMatrix<C64>, atol: f64, rtol: f64) -> f64 {
    let n = err.len();
    let mut acc = 0.0;
    let e = err.as_slice();
    let a = y0.as_slice();
    let b = y1.as_slice();
    for i in 0..n {
        let scale = atol + rtol * a[i].norm().max(b[i].norm());
        let r = e[i].norm() / scale;
        acc += r * r;
    }
    (acc / n as f64).sqrt()
}

/// Integrates dY/dt = rhs(t, Y) from `t0` to `t1` in place, calling `on_step`
/// after every accepted step with (t_before, t_after, Y_after).
///
/// Integration stops exactly at `t1` (the last step is clipped). Fails if the
/// controller cannot meet the tolerance without the step underflowing.
pub fn integrate_adaptive<R: OdeRhs>(
    tableau: &Tableau,
    opts: &AdaptiveOptions,
    rhs: &mut R,
    t0: f64,
    t1: f64,
    y: &mut DMatrix<C64>,
    mut on_step: impl FnMut(f64, f64, &DMatrix<C64>),
) -> Result<RkStats> {
    let span = t1 - t0;
    if span <= 0.0 {
        return Ok(RkStats::default());
    }
    let s = tableau.stages();
    let (rows, cols) = (y.nrows(), y.ncols());
    let mut work = RkWork::new(s, rows, cols);
    let mut stats = RkStats::default();
    let mut t = t0;
    let mut h = opts.initial_step.min(opts.max_step).min(span);
    let min_step = span * 1e-14;
    let err_exp = -1.0 / (tableau.order_low as f64 + 1.0);

    while t < t1 {
        if h < min_step {
            return Err(CoreError::Numeric(format!(
                "step size underflow at t = {t} (h = {h})"
            )));
        }
        let clipped = h.min(t1 - t);

        // Stage evaluations.
        for i in 0..s {
            if i == 0 {
                rhs.eval(t, y, &mut work.stages[0]);
            } else {
                work.y_stage.copy_from(y);
                {
                    let dst = work.y_stage.as_mut_slice();
                    for (j, &aij) in tableau.a[i].iter().enumerate() {
                        if aij == 0.0 {
                            continue;
                        }
                        let src = work.stages[j].as_slice();
                        let w = C64::new(clipped * aij, 0.0);
                        for (d, s) in dst.iter_mut().zip(src.iter()) {
                            *d += w * s;
                        }
                    }
                }
                let (head, tail) = work.stages.split_at_mut(i);
                let _ = head;
                rhs.eval(t + tableau.c[i] * clipped, &work.y_stage, &mut tail[0]);
            }
        }
        stats.rhs_evals += s;

        // Propagating solution and embedded error estimate.
        work.y_new.copy_from(y);
        work.err.fill(C64::new(0.0, 0.0));
        {
            let yn = work.y_new.as_mut_slice();
            let er = work.err.as_mut_slice();
            for i in 0..s {
                let bh = tableau.b_high[i];
                let bl = tableau.b_low[i];
                if bh == 0.0 && bl == 0.0 {
                    continue;
                }
                let src = work.stages[i].as_slice();
                let wh = C64::new(clipped * bh, 0.0);
                let we = C64::new(clipped * (bh - bl), 0.0);
                if bh != 0.0 {
                    for (d, s) in yn.iter_mut().zip(src.iter()) {
                        *d += wh * s;
                    }
                }
                if bh != bl {
                    for (d, s) in er.iter_mut().zip(src.iter()) {
                        *d += we * s;
                    }
                }
            }
        }

        let err = weighted_rms(&work.err, y, &work.y_new, opts.atol, opts.rtol);
        if err <= 1.0 {
            let t_new = t + clipped;
            y.copy_from(&work.y_new);
            on_step(t, t_new, y);
            stats.accepted += 1;
            t = t_new;
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(err_exp)).clamp(0.2, 5.0)
            };
            h = (clipped * factor).min(opts.max_step);
        } else {
            stats.rejected += 1;
            h = clipped * (0.9 * err.powf(err_exp)).clamp(0.1, 0.9);
        }
    }
    Ok(stats)
}

/// Fixed-step integration with the propagating weights only; used for order
/// verification and cross-checks.
pub fn integrate_fixed<R: OdeRhs>(
    tableau: &Tableau,
    rhs: &mut R,
    t0: f64,
    t1: f64,
    steps: usize,
    y: &mut DMatrix<C64>,
) {
    let s = tableau.stages();
    let (rows, cols) = (y.nrows(), y.ncols());
    let mut work = RkWork::new(s, rows, cols);
    let h = (t1 - t0) / steps as f64;
    for n in 0..steps {
        let t = t0 + h * n as f64;
        for i in 0..s {
            if i == 0 {
                rhs.eval(t, y, &mut work.stages[0]);
            } else {
                work.y_stage.copy_from(y);
                {
                    let dst = work.y_stage.as_mut_slice();
                    for (j, &aij) in tableau.a[i].iter().enumerate() {
                        if aij == 0.0 {
                            continue;
                        }
                        let src = work.stages[j].as_slice();
                        let w = C64::new(h * aij, 0.0);
                        for (d, s) in dst.iter_mut().zip(src.iter()) {
                            *d += w * s;
                        }
                    }
                }
                let (head, tail) = work.stages.split_at_mut(i);
                let _ = head;
                rhs.eval(t + tableau.c[i] * h, &work.y_stage, &mut tail[0]);
            }
        }
        let yn = y.as_mut_slice();
        for i in 0..s {
            let bh = tableau.b_high[i];
            if bh == 0.0 {
                continue;
            }
            let src = work.stages[i].as_slice();
            let w = C64::new(h * bh, 0.0);
            for (d, s) in yn.iter_mut().zip(src.iter()) {
                *d += w * s;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn tableau_consistency() {
        for tab in [&VERNER_65, &VERNER_98] {
            let s = tab.stages();
            assert_eq!(tab.b_high.len(), s);
            assert_eq!(tab.b_low.len(), s);
            assert_abs_diff_eq!(tab.b_high.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(tab.b_low.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
            for i in 1..s {
                let row_sum: f64 = tab.a[i].iter().sum();
                assert_abs_diff_eq!(row_sum, tab.c[i], epsilon = 1e-9);
            }
        }
    }

    fn exp_problem_error(tab: &Tableau, steps: usize) -> f64 {
        // y' = i ω y, y(0) = 1; exact solution e^{iωT}.
        let omega = 3.0;
        let t1 = 2.0;
        let mut rhs = |_t: f64, y: &DMatrix<C64>, out: &mut DMatrix<C64>| {
            out[(0, 0)] = C64::new(0.0, omega) * y[(0, 0)];
        };
        let mut y = DMatrix::from_element(1, 1, C64::new(1.0, 0.0));
        integrate_fixed(tab, &mut rhs, 0.0, t1, steps, &mut y);
        let exact = C64::from_polar(1.0, omega * t1);
        (y[(0, 0)] - exact).norm()
    }

    #[test]
    fn verner_65_has_order_6() {
        let e1 = exp_problem_error(&VERNER_65, 10);
        let e2 = exp_problem_error(&VERNER_65, 20);
        let slope = (e1 / e2).log2();
        // Superconvergence on the linear test problem is fine; a transcription
        // error in the tableau would drop the slope well below 6.
        assert!(
            slope > 5.5,
            "measured order {slope}; errors {e1:.3e} {e2:.3e}"
        );
    }

    #[test]
    fn verner_98_has_order_9() {
        let e1 = exp_problem_error(&VERNER_98, 12);
        let e2 = exp_problem_error(&VERNER_98, 24);
        let slope = (e1 / e2).log2();
        assert!(slope > 8.0, "measured order {slope}; errors {e1:.3e} {e2:.3e}");
    }

    #[test]
    fn adaptive_matches_analytic_rabi() {
        // Two-level Rabi problem: H = (δ/2)σz + (g)σx in angular units.
        let delta = 1.3;
        let g = 0.7;
        let t1 = 5.0;
        let mut rhs = |_t: f64, y: &DMatrix<C64>, out: &mut DMatrix<C64>| {
            let h00 = C64::new(delta / 2.0, 0.0);
            let h01 = C64::new(g, 0.0);
            for c in 0..y.ncols() {
                out[(0, c)] = C64::new(0.0, -1.0) * (h00 * y[(0, c)] + h01 * y[(1, c)]);
                out[(1, c)] = C64::new(0.0, -1.0) * (h01 * y[(0, c)] - h00 * y[(1, c)]);
            }
        };
        let mut y = DMatrix::identity(2, 2);
        let opts = AdaptiveOptions::new(1e-12, 1e-14, 0.1);
        let stats = integrate_adaptive(&VERNER_98, &opts, &mut rhs, 0.0, t1, &mut y, |_, _, _| {})
            .unwrap();
        assert!(stats.accepted > 0);
        // Analytic propagator: exp(-i(δ/2 σz + g σx) t).
        let omega = ((delta / 2.0) * (delta / 2.0) + g * g).sqrt();
        let (s, c) = ((omega * t1).sin(), (omega * t1).cos());
        let u00 = C64::new(c, -s * (delta / 2.0) / omega);
        let u01 = C64::new(0.0, -s * g / omega);
        assert!((y[(0, 0)] - u00).norm() < 1e-10);
        assert!((y[(0, 1)] - u01).norm() < 1e-10);
        assert!((y[(1, 1)] - u00.conj()).norm() < 1e-10);
    }

    #[test]
    fn adaptive_stops_exactly_at_t1() {
        let mut rhs = |_t: f64, y: &DMatrix<C64>, out: &mut DMatrix<C64>| {
            out[(0, 0)] = y[(0, 0)];
        };
        let mut y = DMatrix::from_element(1, 1, C64::new(1.0, 0.0));
        let opts = AdaptiveOptions::new(1e-10, 1e-12, 0.37);
        let mut last_t = 0.0;
        integrate_adaptive(&VERNER_98, &opts, &mut rhs, 0.0, 1.0, &mut y, |_, t, _| {
            last_t = t;
        })
        .unwrap();
        assert_eq!(last_t, 1.0);
        assert_abs_diff_eq!(y[(0, 0)].re, 1.0f64.exp(), epsilon = 1e-9);
    }
}
