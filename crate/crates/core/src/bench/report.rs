use std::io::Write;

use super::experiment::AggregateResult;
use super::trial::TrialResult;
use crate::error::Result;

pub const RESULTS_HEADER: &str =
    "task,model,n,n_train,n_test,trial,seed,score,degree_weight_r,wall_time_s";
pub const AGGREGATE_HEADER: &str =
    "task,model,n,n_train,mean,sd,count,ratio_to_esn_mean_of_ratios,ratio_to_esn_ratio_of_means";

/// 17 significant digits, exact on re-read.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

/// Per-trial rows. Wall time is left blank unless `timing` is set, so that
/// output depends only on the configuration.
pub fn write_results_csv<W: Write>(mut w: W, trials: &[TrialResult], timing: bool) -> Result<()> {
    writeln!(w, "{RESULTS_HEADER}")?;
    for t in trials {
        let s = &t.spec;
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            s.task,
            s.model,
            s.n,
            s.n_train,
            s.n_test,
            s.trial,
            t.seed,
            num(t.score),
            opt(t.degree_weight_r),
            if timing {
                num(t.wall_time_s)
            } else {
                String::new()
            }
        )?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_aggregate_csv<W: Write>(mut w: W, rows: &[AggregateResult]) -> Result<()> {
    writeln!(w, "{AGGREGATE_HEADER}")?;
    for a in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            a.task,
            a.model,
            a.n,
            a.n_train,
            num(a.mean),
            num(a.sd),
            a.count,
            opt(a.ratio_to_esn_mean_of_ratios),
            opt(a.ratio_to_esn_ratio_of_means)
        )?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{Model, TrialSpec};
    use crate::tasks::Task;

    fn result(score: f64) -> TrialResult {
        TrialResult {
            spec: TrialSpec {
                task: Task::MackeyGlass,
                model: Model::HubEsnRand,
                n: 10,
                n_train: 20,
                n_test: 30,
                trial: 2,
                base_seed: 1,
            },
            seed: 77,
            score,
            degree_weight_r: None,
            wall_time_s: 1.5,
        }
    }

    #[test]
    fn rows_and_round_trip() {
        let mut buf = Vec::new();
        write_results_csv(&mut buf, &[result(0.1)], false).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let line = text.lines().nth(1).unwrap();
        assert_eq!(
            line,
            "mackey_glass,hubesn_rand,10,20,30,2,77,1.0000000000000001e-1,,"
        );
        let score: f64 = line.split(',').nth(7).unwrap().parse().unwrap();
        assert_eq!(score, 0.1);

        let mut buf = Vec::new();
        write_results_csv(&mut buf, &[result(0.25)], true).unwrap();
        assert!(String::from_utf8(buf)
            .unwrap()
            .trim_end()
            .ends_with(",1.5000000000000000e0"));
    }
}
