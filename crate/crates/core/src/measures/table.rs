use serde::Serialize;

use super::MeasureSpec;
use crate::error::{Error, Result};
use crate::exactalg::{fmt_rational, Rational};
use crate::partitions::Partition;

#[derive(Clone, Debug, PartialEq)]
pub struct MassRow {
    pub level: usize,
    pub partition: Partition,
    pub n_stat: u64,
    pub mass: Rational,
}

/// Cylinder masses for every vertex up to `lmax`, plus level masses for the
/// GL families.
#[derive(Clone, Debug)]
pub struct MeasureTable {
    pub spec: MeasureSpec,
    pub rows: Vec<MassRow>,
    pub level_masses: Option<Vec<Rational>>,
}

impl MeasureTable {
    pub fn build(spec: &MeasureSpec, lmax: usize) -> Result<Self> {
        let graph = spec.mass_graph(lmax)?;
        let mut rows = Vec::new();
        for (level, vs) in graph.levels().iter().enumerate() {
            for lambda in vs {
                rows.push(MassRow {
                    level,
                    partition: lambda.clone(),
                    n_stat: lambda.n_stat(),
                    mass: spec.cylinder_mass(lambda)?,
                });
            }
        }
        let level_masses = match spec {
            MeasureSpec::Gl { .. } => Some(
                (0..=lmax)
                    .map(|n| spec.level_mass(n).map(|m| m.expect("gl family")))
                    .collect::<Result<_>>()?,
            ),
            MeasureSpec::Unitary { .. } => None,
        };
        Ok(MeasureTable { spec: spec.clone(), rows, level_masses })
    }

    /// Columns `partition,n_stat,mass_num,mass_den,level_mass`; the last is
    /// empty for the unitary families.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::InvalidParameter(e.to_string());
        w.write_record(["partition", "n_stat", "mass_num", "mass_den", "level_mass"]).map_err(io)?;
        for r in &self.rows {
            let level_mass = self
                .level_masses
                .as_ref()
                .map(|m| fmt_rational(&m[r.level]))
                .unwrap_or_default();
            w.write_record([
                r.partition.to_string(),
                r.n_stat.to_string(),
                r.mass.numer().to_string(),
                r.mass.denom().to_string(),
                level_mass,
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("utf-8"))
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Row<'a> {
            level: usize,
            partition: &'a Partition,
            n_stat: u64,
            mass: String,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            spec: String,
            q: u32,
            rows: Vec<Row<'a>>,
            level_masses: Option<Vec<String>>,
        }
        let doc = Doc {
            spec: self.spec.to_string(),
            q: self.spec.q(),
            rows: self
                .rows
                .iter()
                .map(|r| Row { level: r.level, partition: &r.partition, n_stat: r.n_stat, mass: fmt_rational(&r.mass) })
                .collect(),
            level_masses: self.level_masses.as_ref().map(|m| m.iter().map(fmt_rational).collect()),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }
}
