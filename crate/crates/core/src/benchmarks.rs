//! Benchmark battery: single-objective test functions, the two demo
//! objectives, and the ZDT/DTLZ multi-objective problems with their
//! analytic Pareto fronts.
//!
//! All evaluators are plain `fn` pointers: pure, stateless and safe to call
//! from any thread.

use std::f64::consts::{E, PI};

use crate::error::{check_len, Error, Result};
use crate::space::SearchSpace;

pub type SingleFn = fn(&[f64]) -> f64;
pub type MultiFn = fn(&[f64]) -> Vec<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimRule {
    Fixed1,
    Fixed2,
    /// Any dimension; the default is used when none is requested.
    AnyN { default: usize },
}

impl DimRule {
    pub fn default_dim(self) -> usize {
        match self {
            DimRule::Fixed1 => 1,
            DimRule::Fixed2 => 2,
            DimRule::AnyN { default } => default,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            DimRule::Fixed1 => "1",
            DimRule::Fixed2 => "2",
            DimRule::AnyN { .. } => "n",
        }
    }
}

/// Landscape family the function is grouped under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    ManyLocalOptima,
    PlateShaped,
    ValleyShaped,
    Other,
    Demo,
}

#[derive(Debug, Clone)]
pub struct BenchmarkSpec {
    pub id: &'static str,
    pub family: Family,
    pub dim_rule: DimRule,
    pub default_bounds: SearchSpace,
    /// Global minimum value at full precision, when known.
    pub known_optimum: Option<f64>,
    /// The optimum as tabulated (rounded) in the literature, when it differs.
    pub reported_optimum: Option<f64>,
    /// Known minimizers at the default dimension.
    pub argmin_examples: Vec<Vec<f64>>,
    eval: SingleFn,
}

impl BenchmarkSpec {
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        match self.dim_rule {
            DimRule::Fixed1 => check_len(1, x.len())?,
            DimRule::Fixed2 => check_len(2, x.len())?,
            DimRule::AnyN { .. } => {
                if x.is_empty() {
                    return Err(Error::Shape { expected: 1, got: 0 });
                }
            }
        }
        if let Some(j) = x.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain(format!(
                "{}: coordinate {j} is not finite",
                self.id
            )));
        }
        Ok((self.eval)(x))
    }

    /// Unchecked evaluator, for hot loops that already validated shapes.
    pub fn function(&self) -> SingleFn {
        self.eval
    }

    /// Bounds at the requested dimension.
    pub fn space(&self, dim: usize) -> Result<SearchSpace> {
        match self.dim_rule {
            DimRule::AnyN { .. } if dim >= 1 => SearchSpace::uniform(
                dim,
                self.default_bounds.lows()[0],
                self.default_bounds.highs()[0],
            ),
            DimRule::AnyN { .. } => Err(Error::Shape { expected: 1, got: 0 }),
            rule => {
                check_len(rule.default_dim(), dim)?;
                Ok(self.default_bounds.clone())
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct MultiObjectiveSpec {
    pub id: &'static str,
    pub n_vars: usize,
    pub n_objectives: usize,
    pub bounds: SearchSpace,
    eval: MultiFn,
    has_front: bool,
}

impl MultiObjectiveSpec {
    pub fn evaluate(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_len(self.n_vars, x.len())?;
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("{}: non-finite input", self.id)));
        }
        Ok((self.eval)(x))
    }

    pub fn function(&self) -> MultiFn {
        self.eval
    }

    pub fn has_analytic_front(&self) -> bool {
        self.has_front
    }

    /// `k` points on the true Pareto front.
    pub fn front(&self, k: usize) -> Result<Vec<Vec<f64>>> {
        analytic_front(self.id, k)
    }
}

#[derive(Debug, Clone)]
pub enum Benchmark {
    Single(BenchmarkSpec),
    Multi(MultiObjectiveSpec),
}

impl Benchmark {
    pub fn id(&self) -> &'static str {
        match self {
            Benchmark::Single(s) => s.id,
            Benchmark::Multi(m) => m.id,
        }
    }
}

fn boxed(lows: &[f64], highs: &[f64]) -> SearchSpace {
    SearchSpace::new(lows.to_vec(), highs.to_vec()).expect("catalog bounds are valid")
}

#[allow(clippy::too_many_arguments)]
fn single(
    id: &'static str,
    family: Family,
    dim_rule: DimRule,
    lows: &[f64],
    highs: &[f64],
    known: Option<f64>,
    reported: Option<f64>,
    argmin: Vec<Vec<f64>>,
    eval: SingleFn,
) -> BenchmarkSpec {
    let dim = dim_rule.default_dim();
    let (lows, highs) = if lows.len() == dim {
        (lows.to_vec(), highs.to_vec())
    } else {
        (vec![lows[0]; dim], vec![highs[0]; dim])
    };
    BenchmarkSpec {
        id,
        family,
        dim_rule,
        default_bounds: boxed(&lows, &highs),
        known_optimum: known,
        reported_optimum: reported.or(known),
        argmin_examples: argmin,
        eval,
    }
}

const ANY2: DimRule = DimRule::AnyN { default: 2 };

/// Single-objective ids in catalog order.
pub const SINGLE_IDS: [&str; 24] = [
    "ackley",
    "bukin_n6",
    "rastrigin",
    "cross_in_tray",
    "levy_n13",
    "eggholder",
    "schaffer_n2",
    "schwefel",
    "shubert",
    "drop_wave",
    "himmelblau",
    "booth",
    "matyas",
    "mccormick",
    "three_hump_camel",
    "six_hump_camel",
    "rosenbrock",
    "dixon_price",
    "beale",
    "goldstein_price",
    "forrester",
    "devilliersglasser02_paper",
    "sphere",
    "sinusoidal",
];

/// Multi-objective ids in catalog order.
pub const MULTI_IDS: [&str; 4] = ["zdt1", "zdt2", "dltz1", "paper_mo_demo"];

pub fn single_spec(id: &str) -> Option<BenchmarkSpec> {
    use Family::*;
    let id: &'static str = SINGLE_IDS.iter().copied().find(|s| *s == id)?;
    let spec = match id {
        "ackley" => single(id, ManyLocalOptima, ANY2, &[-32.768], &[32.768], Some(0.0), None, vec![vec![0.0, 0.0]], ackley),
        "bukin_n6" => single(id, ManyLocalOptima, DimRule::Fixed2, &[-15.0, -3.0], &[-5.0, 3.0], Some(0.0), None, vec![vec![-10.0, 1.0]], bukin_n6),
        "rastrigin" => single(id, ManyLocalOptima, ANY2, &[-5.12], &[5.12], Some(0.0), None, vec![vec![0.0, 0.0]], rastrigin),
        "cross_in_tray" => single(
            id, ManyLocalOptima, DimRule::Fixed2, &[-10.0, -10.0], &[10.0, 10.0],
            Some(-2.062_611_870_822_739), Some(-2.06262),
            vec![
                vec![1.349_406_6, -1.349_406_6],
                vec![1.349_406_6, 1.349_406_6],
                vec![-1.349_406_6, 1.349_406_6],
                vec![-1.349_406_6, -1.349_406_6],
            ],
            cross_in_tray,
        ),
        "levy_n13" => single(id, ManyLocalOptima, DimRule::Fixed2, &[-10.0, -10.0], &[10.0, 10.0], Some(0.0), None, vec![vec![1.0, 1.0]], levy_n13),
        "eggholder" => single(
            id, ManyLocalOptima, DimRule::Fixed2, &[-512.0, -512.0], &[512.0, 512.0],
            Some(-959.640_662_710_615_5), Some(-959.6407),
            vec![vec![512.0, 404.2319]],
            eggholder,
        ),
        "schaffer_n2" => single(id, ManyLocalOptima, DimRule::Fixed2, &[-100.0, -100.0], &[100.0, 100.0], Some(0.0), None, vec![vec![0.0, 0.0]], schaffer_n2),
        "schwefel" => single(id, ManyLocalOptima, ANY2, &[-500.0], &[500.0], Some(0.0), None, vec![vec![420.968_746; 2]], schwefel),
        "shubert" => single(
            id, ManyLocalOptima, DimRule::Fixed2, &[-10.0, -10.0], &[10.0, 10.0],
            Some(-186.730_908_831_023_9), Some(-186.7309),
            vec![
                vec![-7.083_506_409_397_382, 4.858_056_877_022_195],
                vec![5.482_864_204_912_186, 4.858_056_877_670_53],
            ],
            shubert,
        ),
        "drop_wave" => single(id, ManyLocalOptima, DimRule::Fixed2, &[-5.12, -5.12], &[5.12, 5.12], Some(-1.0), None, vec![vec![0.0, 0.0]], drop_wave),
        "himmelblau" => single(
            id, ManyLocalOptima, DimRule::Fixed2, &[-5.0, -5.0], &[5.0, 5.0], Some(0.0), None,
            vec![
                vec![3.0, 2.0],
                vec![-2.805_118_086_952_698, 3.131_312_518_250_589],
                vec![-3.779_310_253_377_75, -3.283_185_991_286_145],
                vec![3.584_428_340_330_479, -1.848_126_526_964_449],
            ],
            himmelblau,
        ),
        "booth" => single(id, PlateShaped, DimRule::Fixed2, &[-10.0, -10.0], &[10.0, 10.0], Some(0.0), None, vec![vec![1.0, 3.0]], booth),
        "matyas" => single(id, PlateShaped, DimRule::Fixed2, &[-10.0, -10.0], &[10.0, 10.0], Some(0.0), None, vec![vec![0.0, 0.0]], matyas),
        "mccormick" => single(
            id, PlateShaped, DimRule::Fixed2, &[-1.5, -3.0], &[4.0, 4.0],
            Some(-1.913_222_954_981_036_7), Some(-1.9133),
            vec![vec![-0.547_197_551_196_597_7, -1.547_197_551_196_597_7]],
            mccormick,
        ),
        "three_hump_camel" => single(id, ValleyShaped, DimRule::Fixed2, &[-5.0, -5.0], &[5.0, 5.0], Some(0.0), None, vec![vec![0.0, 0.0]], three_hump_camel),
        "six_hump_camel" => single(
            id, ValleyShaped, DimRule::Fixed2, &[-3.0, -2.0], &[3.0, 2.0],
            Some(-1.031_628_453_489_877_4), Some(-1.0316),
            vec![
                vec![0.089_842_008_935_272_33, -0.712_656_403_019_058],
                vec![-0.089_842_008_935_272_33, 0.712_656_403_019_058],
            ],
            six_hump_camel,
        ),
        "rosenbrock" => single(id, ValleyShaped, ANY2, &[-5.0], &[10.0], Some(0.0), None, vec![vec![1.0, 1.0]], rosenbrock),
        "dixon_price" => single(id, ValleyShaped, ANY2, &[-10.0], &[10.0], Some(0.0), None, vec![dixon_price_argmin(2)], dixon_price),
        "beale" => single(id, Other, DimRule::Fixed2, &[-4.5, -4.5], &[4.5, 4.5], Some(0.0), None, vec![vec![3.0, 0.5]], beale),
        "goldstein_price" => single(id, Other, DimRule::Fixed2, &[-2.0, -2.0], &[2.0, 2.0], Some(3.0), None, vec![vec![0.0, -1.0]], goldstein_price),
        "forrester" => single(
            id, Other, DimRule::Fixed1, &[0.0], &[1.0],
            Some(-6.020_740_055_767_081), None,
            vec![vec![0.757_248_756_166_025_7]],
            forrester,
        ),
        // Minimum located by grid scan: the quadratic is increasing on the
        // whole box, so the corner (1, 1) is optimal.
        "devilliersglasser02_paper" => single(id, Other, DimRule::Fixed2, &[1.0, 1.0], &[60.0, 60.0], Some(74.0), None, vec![vec![1.0, 1.0]], devilliersglasser02_paper),
        "sphere" => single(id, Demo, ANY2, &[-10.0], &[10.0], Some(0.0), None, vec![vec![0.0, 0.0]], sphere),
        "sinusoidal" => single(
            id, Demo, DimRule::Fixed2, &[-10.0, -10.0], &[10.0, 10.0], Some(-2.0), None,
            vec![vec![-PI / 2.0, -PI / 2.0], vec![3.0 * PI / 2.0, -PI / 2.0]],
            sinusoidal,
        ),
        _ => return None,
    };
    Some(spec)
}

pub fn multi_spec(id: &str) -> Option<MultiObjectiveSpec> {
    let spec = match id {
        "zdt1" => MultiObjectiveSpec {
            id: "zdt1",
            n_vars: ZDT_VARS,
            n_objectives: 2,
            bounds: boxed(&[0.0; ZDT_VARS], &[1.0; ZDT_VARS]),
            eval: zdt1,
            has_front: true,
        },
        "zdt2" => MultiObjectiveSpec {
            id: "zdt2",
            n_vars: ZDT_VARS,
            n_objectives: 2,
            bounds: boxed(&[0.0; ZDT_VARS], &[1.0; ZDT_VARS]),
            eval: zdt2,
            has_front: true,
        },
        "dltz1" => MultiObjectiveSpec {
            id: "dltz1",
            n_vars: DTLZ1_VARS,
            n_objectives: DTLZ1_OBJECTIVES,
            bounds: boxed(&[0.0; DTLZ1_VARS], &[1.0; DTLZ1_VARS]),
            eval: dtlz1,
            has_front: true,
        },
        "paper_mo_demo" => MultiObjectiveSpec {
            id: "paper_mo_demo",
            n_vars: 2,
            n_objectives: 2,
            bounds: boxed(&[-10.0, -10.0], &[10.0, 10.0]),
            eval: mo_demo,
            has_front: false,
        },
        _ => return None,
    };
    Some(spec)
}

fn all_ids() -> Vec<String> {
    SINGLE_IDS
        .iter()
        .chain(MULTI_IDS.iter())
        .map(|s| s.to_string())
        .collect()
}

fn not_found(id: &str) -> Error {
    Error::NotFound {
        id: id.to_string(),
        valid: all_ids(),
    }
}

pub fn lookup(id: &str) -> Result<Benchmark> {
    if let Some(s) = single_spec(id) {
        Ok(Benchmark::Single(s))
    } else if let Some(m) = multi_spec(id) {
        Ok(Benchmark::Multi(m))
    } else {
        Err(not_found(id))
    }
}

pub fn lookup_single(id: &str) -> Result<BenchmarkSpec> {
    single_spec(id).ok_or_else(|| not_found(id))
}

pub fn lookup_multi(id: &str) -> Result<MultiObjectiveSpec> {
    multi_spec(id).ok_or_else(|| not_found(id))
}

/// Every benchmark in stable catalog order.
pub fn catalog() -> Vec<Benchmark> {
    all_ids()
        .iter()
        .map(|id| lookup(id).expect("catalog ids resolve"))
        .collect()
}

pub fn evaluate_single(id: &str, x: &[f64]) -> Result<f64> {
    lookup_single(id)?.evaluate(x)
}

pub fn evaluate_multi(id: &str, x: &[f64]) -> Result<Vec<f64>> {
    lookup_multi(id)?.evaluate(x)
}

/// `k` points sampled on the true Pareto front of `id`.
///
/// ZDT fronts are sampled at evenly spaced `f1`. The DTLZ1 front is the
/// simplex `sum f = 0.5`; its position variables are laid out with evenly
/// spaced `x1` and a golden-ratio sequence for the remaining ones.
pub fn analytic_front(id: &str, k: usize) -> Result<Vec<Vec<f64>>> {
    if k < 2 {
        return Err(Error::InvalidConfig(format!("front sample size {k} < 2")));
    }
    let step = |i: usize| i as f64 / (k - 1) as f64;
    match id {
        "zdt1" => Ok((0..k).map(|i| {
            let f1 = step(i);
            vec![f1, 1.0 - f1.sqrt()]
        }).collect()),
        "zdt2" => Ok((0..k).map(|i| {
            let f1 = step(i);
            vec![f1, 1.0 - f1 * f1]
        }).collect()),
        "dltz1" => {
            let m = DTLZ1_OBJECTIVES;
            // additive recurrence with the golden ratio (and its powers for
            // higher position dimensions)
            let alphas: Vec<f64> = (1..m - 1)
                .map(|p| (0.5 * (5f64.sqrt() - 1.0)).powi(p as i32) % 1.0)
                .collect();
            Ok((0..k)
                .map(|i| {
                    let mut pos = vec![step(i)];
                    for a in &alphas {
                        pos.push((i as f64 * a + 0.5) % 1.0);
                    }
                    dtlz1_objectives(&pos, 0.0, m)
                })
                .collect())
        }
        _ => {
            if multi_spec(id).is_some() {
                Err(Error::NotFound {
                    id: id.to_string(),
                    valid: vec!["zdt1".into(), "zdt2".into(), "dltz1".into()],
                })
            } else {
                Err(not_found(id))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// single-objective functions

pub fn ackley(x: &[f64]) -> f64 {
    let d = x.len() as f64;
    let sq = x.iter().map(|v| v * v).sum::<f64>() / d;
    let cs = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / d;
    -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
}

pub fn bukin_n6(x: &[f64]) -> f64 {
    100.0 * (x[1] - 0.01 * x[0] * x[0]).abs().sqrt() + 0.01 * (x[0] + 10.0).abs()
}

pub fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64
        + x.iter()
            .map(|v| v * v - 10.0 * (2.0 * PI * v).cos())
            .sum::<f64>()
}

pub fn cross_in_tray(x: &[f64]) -> f64 {
    let r = (x[0] * x[0] + x[1] * x[1]).sqrt();
    let inner = (x[0].sin() * x[1].sin() * (100.0 - r / PI).abs().exp()).abs() + 1.0;
    -0.0001 * inner.powf(0.1)
}

pub fn levy_n13(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (3.0 * PI * a).sin().powi(2)
        + (a - 1.0).powi(2) * (1.0 + (3.0 * PI * b).sin().powi(2))
        + (b - 1.0).powi(2) * (1.0 + (2.0 * PI * b).sin().powi(2))
}

pub fn eggholder(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    -(b + 47.0) * (b + a / 2.0 + 47.0).abs().sqrt().sin() - a * (a - (b + 47.0)).abs().sqrt().sin()
}

pub fn schaffer_n2(x: &[f64]) -> f64 {
    let (a2, b2) = (x[0] * x[0], x[1] * x[1]);
    let num = (a2 - b2).sin().powi(2) - 0.5;
    let den = (1.0 + 0.001 * (a2 + b2)).powi(2);
    0.5 + num / den
}

pub fn schwefel(x: &[f64]) -> f64 {
    418.9829 * x.len() as f64 - x.iter().map(|v| v * v.abs().sqrt().sin()).sum::<f64>()
}

pub fn shubert(x: &[f64]) -> f64 {
    let s = |t: f64| {
        (1..=5)
            .map(|i| {
                let i = i as f64;
                i * ((i + 1.0) * t + i).cos()
            })
            .sum::<f64>()
    };
    s(x[0]) * s(x[1])
}

pub fn drop_wave(x: &[f64]) -> f64 {
    let r2 = x[0] * x[0] + x[1] * x[1];
    -(1.0 + (12.0 * r2.sqrt()).cos()) / (0.5 * r2 + 2.0)
}

pub fn himmelblau(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (a * a + b - 11.0).powi(2) + (a + b * b - 7.0).powi(2)
}

pub fn booth(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (a + 2.0 * b - 7.0).powi(2) + (2.0 * a + b - 5.0).powi(2)
}

pub fn matyas(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    0.26 * (a * a + b * b) - 0.48 * a * b
}

pub fn mccormick(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (a + b).sin() + (a - b).powi(2) - 1.5 * a + 2.5 * b + 1.0
}

pub fn three_hump_camel(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    2.0 * a * a - 1.05 * a.powi(4) + a.powi(6) / 6.0 + a * b + b * b
}

pub fn six_hump_camel(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (4.0 - 2.1 * a * a + a.powi(4) / 3.0) * a * a + a * b + (-4.0 + 4.0 * b * b) * b * b
}

pub fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2))
        .sum()
}

pub fn dixon_price(x: &[f64]) -> f64 {
    let head = (x[0] - 1.0).powi(2);
    head + x
        .windows(2)
        .enumerate()
        .map(|(k, w)| (k + 2) as f64 * (2.0 * w[1] * w[1] - w[0]).powi(2))
        .sum::<f64>()
}

/// `x_i = 2^-((2^i - 2) / 2^i)`, 1-based.
pub fn dixon_price_argmin(dim: usize) -> Vec<f64> {
    (1..=dim)
        .map(|i| {
            let p = 2f64.powi(i as i32);
            2f64.powf(-(p - 2.0) / p)
        })
        .collect()
}

pub fn beale(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (1.5 - a + a * b).powi(2) + (2.25 - a + a * b * b).powi(2) + (2.625 - a + a * b.powi(3)).powi(2)
}

pub fn goldstein_price(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let p = 1.0
        + (a + b + 1.0).powi(2)
            * (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b);
    let q = 30.0
        + (2.0 * a - 3.0 * b).powi(2)
            * (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b);
    p * q
}

pub fn forrester(x: &[f64]) -> f64 {
    let t = x[0];
    (6.0 * t - 2.0).powi(2) * (12.0 * t - 4.0).sin()
}

pub fn devilliersglasser02_paper(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (2.0 * a - 3.0 * b).powi(2) + 18.0 * a - 32.0 * b + 12.0 * a * a + 48.0 * b + 27.0 * b * b
}

pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub fn sinusoidal(x: &[f64]) -> f64 {
    x[0].sin() + x[1].sin()
}

// ---------------------------------------------------------------------------
// multi-objective problems

pub const ZDT_VARS: usize = 30;
pub const DTLZ1_OBJECTIVES: usize = 3;
pub const DTLZ1_VARS: usize = DTLZ1_OBJECTIVES - 1 + 5;

fn zdt_g(x: &[f64]) -> f64 {
    1.0 + 9.0 * x[1..].iter().sum::<f64>() / (x.len() - 1) as f64
}

pub fn zdt1(x: &[f64]) -> Vec<f64> {
    let f1 = x[0];
    let g = zdt_g(x);
    vec![f1, g * (1.0 - (f1 / g).sqrt())]
}

pub fn zdt2(x: &[f64]) -> Vec<f64> {
    let f1 = x[0];
    let g = zdt_g(x);
    vec![f1, g * (1.0 - (f1 / g).powi(2))]
}

pub fn dtlz1(x: &[f64]) -> Vec<f64> {
    let m = DTLZ1_OBJECTIVES;
    let tail = &x[m - 1..];
    let g = 100.0
        * (tail.len() as f64
            + tail
                .iter()
                .map(|v| (v - 0.5).powi(2) - (20.0 * PI * (v - 0.5)).cos())
                .sum::<f64>());
    dtlz1_objectives(&x[..m - 1], g, m)
}

fn dtlz1_objectives(pos: &[f64], g: f64, m: usize) -> Vec<f64> {
    let scale = 0.5 * (1.0 + g);
    (0..m)
        .map(|obj| {
            let keep = m - 1 - obj;
            let mut f = scale * pos[..keep].iter().product::<f64>();
            if obj > 0 {
                f *= 1.0 - pos[keep];
            }
            f
        })
        .collect()
}

pub fn mo_demo(x: &[f64]) -> Vec<f64> {
    vec![
        x[0].sin() + x[1].cos(),
        (-(x[0] - 5.0).powi(2) - (x[1] - 5.0).powi(2)).exp(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn lookup_examples() {
        let Benchmark::Single(r) = lookup("rastrigin").unwrap() else {
            panic!()
        };
        assert_eq!(r.default_bounds.lows(), &[-5.12, -5.12]);
        assert_eq!(r.default_bounds.highs(), &[5.12, 5.12]);
        let egg = lookup_single("eggholder").unwrap();
        assert_eq!(egg.reported_optimum, Some(-959.6407));
        match lookup("zdt99") {
            Err(Error::NotFound { valid, .. }) => assert!(valid.contains(&"zdt1".to_string())),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(evaluate_single("rastrigin", &[0.0, 0.0]).unwrap(), 0.0);
        assert!(close(evaluate_single("ackley", &[0.0, 0.0]).unwrap(), 0.0, 1e-12));
        assert!(close(evaluate_single("mccormick", &[-0.54719, -1.54719]).unwrap(), -1.9133, 1e-4));
        assert!(close(evaluate_single("goldstein_price", &[0.0, -1.0]).unwrap(), 3.0, 1e-9));
        assert!(close(evaluate_single("sinusoidal", &[-PI / 2.0, -PI / 2.0]).unwrap(), -2.0, 1e-15));
    }

    #[test]
    fn evaluate_errors() {
        assert!(matches!(
            evaluate_single("booth", &[1.0]),
            Err(Error::Shape { expected: 2, got: 1 })
        ));
        assert!(matches!(
            evaluate_single("sphere", &[1.0, f64::NAN]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(evaluate_multi("zdt1", &[0.0; 3]), Err(Error::Shape { .. })));
    }

    #[test]
    fn zdt1_examples() {
        let mut x = vec![0.0; ZDT_VARS];
        assert_eq!(evaluate_multi("zdt1", &x).unwrap(), vec![0.0, 1.0]);
        x[0] = 1.0;
        assert_eq!(evaluate_multi("zdt1", &x).unwrap(), vec![1.0, 0.0]);
        let ones = vec![1.0; ZDT_VARS];
        let f = evaluate_multi("zdt1", &ones).unwrap();
        assert_eq!(f[0], 1.0);
        assert!(close(f[1], 10.0 - 10f64.sqrt(), 1e-12));
    }

    #[test]
    fn fronts() {
        assert_eq!(analytic_front("zdt1", 2).unwrap(), vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        let z2 = analytic_front("zdt2", 3).unwrap();
        assert_eq!(z2[1], vec![0.5, 0.75]);
        for p in analytic_front("dltz1", 500).unwrap() {
            assert_eq!(p.len(), 3);
            assert!(close(p.iter().sum::<f64>(), 0.5, 1e-12));
            assert!(p.iter().all(|v| *v >= 0.0));
        }
        assert!(matches!(analytic_front("paper_mo_demo", 5), Err(Error::NotFound { .. })));
        assert!(matches!(analytic_front("nope", 5), Err(Error::NotFound { .. })));
        assert!(analytic_front("zdt1", 1).is_err());
    }

    #[test]
    fn dtlz1_optimal_points_lie_on_simplex() {
        // Tail at 0.5 makes g = 0.
        let mut x = vec![0.5; DTLZ1_VARS];
        x[0] = 0.3;
        x[1] = 0.8;
        let f = evaluate_multi("dltz1", &x).unwrap();
        assert!(close(f.iter().sum::<f64>(), 0.5, 1e-12));
    }

    #[test]
    fn space_respects_dim_rule() {
        let r = lookup_single("rastrigin").unwrap();
        assert_eq!(r.space(5).unwrap().dim(), 5);
        let b = lookup_single("booth").unwrap();
        assert!(b.space(3).is_err());
        assert_eq!(b.space(2).unwrap().dim(), 2);
    }

    #[test]
    fn dixon_price_argmin_general_dim() {
        for d in 2..6 {
            let x = dixon_price_argmin(d);
            assert!(dixon_price(&x).abs() < 1e-12, "d={d}");
        }
    }
}
