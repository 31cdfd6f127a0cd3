//! `solve` and `validate`.

use serde::{Deserialize, Serialize};

use omniscience::setfunc::partition_value;
use omniscience::{
    check_slepian_wolf, EntropyOracle, Instance, LinearOrdering, Model, Partition, RateVector,
    Rational, SfmStats, Solver, Variant,
};

use crate::error::{CliError, Result};

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    /// Explicit ordering; identity when absent.
    pub ordering: Option<LinearOrdering>,
    /// Weights pick the ordering; exclusive with `ordering`.
    pub weights: Option<Vec<Rational>>,
    pub non_asymptotic: bool,
    pub variant: Variant,
}

/// Everything `solve` prints. Partitions and orderings use 1-based user numbers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub model: String,
    pub variant: String,
    pub ordering: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Rational>>,
    /// Minimum sum-rate in the asymptotic model.
    pub min_sum_rate: Rational,
    pub fundamental_partition: Vec<Vec<usize>>,
    pub alpha_trace: Vec<Rational>,
    pub mmi: Rational,
    /// Minimum integral sum-rate, non-asymptotic model only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub integral_min_sum_rate: Option<i128>,
    /// Finest Dilworth minimizer at the integral sum-rate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub integral_minimizer: Option<Vec<Vec<usize>>>,
    /// Sum of `rates`: the sum-rate of the reported model.
    pub sum_rate: Rational,
    pub rates: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weighted_sum_rate: Option<Rational>,
    pub stats: SfmStats,
    pub validated_oracle: bool,
}

fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::Fused => "fused",
        Variant::Unfused => "unfused",
    }
}

pub fn solve(instance: &Instance, opts: &SolveOptions) -> Result<SolveReport> {
    let n = instance.len();
    let ordering = match (&opts.ordering, &opts.weights) {
        (Some(_), Some(_)) => {
            return Err(CliError::Input(
                "--ordering and --weights are exclusive".into(),
            ))
        }
        (Some(phi), None) => phi.clone(),
        (None, Some(w)) => {
            if w.len() != n {
                return Err(CliError::Input(format!(
                    "expected {n} weights, found {}",
                    w.len()
                )));
            }
            omniscience::ordering_for_weights(w)?
        }
        (None, None) => LinearOrdering::identity(n),
    };
    if ordering.len() != n {
        return Err(CliError::Input(format!(
            "ordering has {} users, instance has {n}",
            ordering.len()
        )));
    }
    let solver = Solver::with_variant(opts.variant);
    let model = if opts.non_asymptotic {
        Model::NonAsymptotic
    } else {
        Model::Asymptotic
    };

    let (asymptotic, rates, integral, stats) = match model {
        Model::Asymptotic => {
            let sol = solver.mda(instance, &ordering)?;
            let rates = sol.rates.clone();
            let stats = sol.stats;
            (sol, rates, None, stats)
        }
        Model::NonAsymptotic => {
            let sol = solver.solve_non_asymptotic(instance, &ordering)?;
            (
                sol.asymptotic,
                sol.rates,
                Some((sol.min_sum_rate, sol.minimizer)),
                sol.stats,
            )
        }
    };
    let weighted_sum_rate = opts
        .weights
        .as_ref()
        .map(|w| rates.weighted_sum(w))
        .transpose()?;
    Ok(SolveReport {
        model: match model {
            Model::Asymptotic => "asymptotic".into(),
            Model::NonAsymptotic => "non-asymptotic".into(),
        },
        variant: variant_name(opts.variant).into(),
        ordering: ordering.to_users(),
        weights: opts.weights.clone(),
        min_sum_rate: asymptotic.min_sum_rate,
        fundamental_partition: asymptotic.fundamental_partition.to_users(),
        alpha_trace: asymptotic.alpha_trace,
        mmi: asymptotic.mmi,
        integral_min_sum_rate: integral.as_ref().map(|(r, _)| *r),
        integral_minimizer: integral.as_ref().map(|(_, p)| p.to_users()),
        sum_rate: rates.total(),
        rates: rates.into_rates(),
        weighted_sum_rate,
        stats,
        validated_oracle: asymptotic.validated_oracle,
    })
}

fn partition_text(blocks: &[Vec<usize>]) -> String {
    let inner: Vec<String> = blocks
        .iter()
        .map(|b| {
            format!(
                "{{{}}}",
                b.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
            )
        })
        .collect();
    format!("{{{}}}", inner.join(","))
}

fn list_text(values: &[Rational]) -> String {
    values
        .iter()
        .map(Rational::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Plain-text rendering of a report.
pub fn render(report: &SolveReport) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| out.push_str(&format!("{k:<22}{v}\n"));
    line("model", format!("{} ({})", report.model, report.variant));
    line(
        "ordering",
        format!(
            "({})",
            report
                .ordering
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(",")
        ),
    );
    line("min sum-rate", report.min_sum_rate.to_string());
    line(
        "fundamental partition",
        partition_text(&report.fundamental_partition),
    );
    line(
        "alpha trace",
        format!("[{}]", list_text(&report.alpha_trace)),
    );
    line("mutual information", report.mmi.to_string());
    if let Some(r) = report.integral_min_sum_rate {
        line("integral sum-rate", r.to_string());
    }
    if let Some(p) = &report.integral_minimizer {
        line("integral minimizer", partition_text(p));
    }
    line(
        "rates",
        format!(
            "({})",
            report
                .rates
                .iter()
                .map(Rational::to_string)
                .collect::<Vec<_>>()
                .join(",")
        ),
    );
    if let Some(w) = report.weighted_sum_rate {
        line("weighted sum-rate", w.to_string());
    }
    line(
        "sfm",
        format!(
            "{} calls, summed size {}, {} evaluations",
            report.stats.calls, report.stats.summed_ground_size, report.stats.evaluations
        ),
    );
    if !report.validated_oracle {
        out.push_str("warning: entropy table was not validated as a polymatroid\n");
    }
    out
}

/// Checks `rates` against every Slepian-Wolf constraint and `r(V) = alpha`.
pub fn validate(instance: &Instance, rates: &[Rational], alpha: Rational) -> Result<()> {
    let rv = RateVector::new(rates.to_vec());
    check_slepian_wolf(instance, &rv, alpha)?.map_err(|why| CliError::Infeasible(why.to_string()))
}

/// Validates the rates and sum-rate recorded in a `solve --json` report.
pub fn validate_report(instance: &Instance, report: &SolveReport) -> Result<()> {
    validate(instance, &report.rates, report.sum_rate)?;
    let partition = Partition::from_users(
        instance.len(),
        &report
            .fundamental_partition
            .iter()
            .map(Vec::as_slice)
            .collect::<Vec<_>>(),
    )?;
    if partition.len() >= 2
        && omniscience::setfunc::partition_sum_rate(instance, &partition)? != report.min_sum_rate
    {
        return Err(CliError::Infeasible(format!(
            "fundamental partition does not certify sum-rate {}",
            report.min_sum_rate
        )));
    }
    if partition_value(instance, report.min_sum_rate, &partition) != report.min_sum_rate {
        return Err(CliError::Infeasible(
            "fundamental partition is not a Dilworth minimizer".into(),
        ));
    }
    Ok(())
}
