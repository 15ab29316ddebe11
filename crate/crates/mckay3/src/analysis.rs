//! End-to-end computation for one group: classes, table, McKay data,
//! closed-form series and Molien series.

use crate::chartab::{character_table, CharacterTable};
use crate::error::{Error, Result};
use crate::grp::{ConjClassSet, FiniteMatrixGroup, GroupElement};
use crate::mckay::{mckay_matrices, McKayData};
use crate::roots::{min_partition, ReflectionSet};
use crate::series::{closed_form, molien, Molien, RationalBranchingSeries};
use crate::weyl::{mults_direct_all, mults_recursive, mults_recursive_sl2};

pub struct Analysis {
    pub group: FiniteMatrixGroup,
    pub classes: ConjClassSet,
    pub table: CharacterTable,
    pub mckay: McKayData,
    pub series: RationalBranchingSeries,
    pub molien: Molien,
    pub partition: ReflectionSet,
}

impl Analysis {
    pub fn run(generators: &[GroupElement], cap: usize) -> Result<Self> {
        let group = FiniteMatrixGroup::enumerate(generators, cap)?;
        let classes = group.conjugacy_classes()?;
        let table = character_table(&group, &classes)?;
        Self::from_table(group, classes, table)
    }

    pub fn from_table(group: FiniteMatrixGroup, classes: ConjClassSet, table: CharacterTable) -> Result<Self> {
        let series = closed_form(&classes, &table)?;
        Self::with_series(group, classes, table, series)
    }

    /// Assemble from a previously computed closed form.
    pub fn with_series(
        group: FiniteMatrixGroup,
        classes: ConjClassSet,
        table: CharacterTable,
        series: RationalBranchingSeries,
    ) -> Result<Self> {
        let mckay = mckay_matrices(&classes, &table)?;
        let molien = molien(&classes)?;
        let partition = min_partition(&mckay.c)?;
        Ok(Analysis { group, classes, table, mckay, series, molien, partition })
    }

    /// Full invariant suite; returns one line per check and fails on the
    /// first mismatch.
    pub fn verify(&self, level: u32) -> Result<Vec<String>> {
        let mut out = Vec::new();
        let fail = |what: &str| Error::Invariant(format!("{what} failed"));
        self.table.check_rows(&self.classes)?;
        self.table.check_columns(&self.classes)?;
        out.push("character orthogonality (rows and columns)".to_string());
        let again = mckay_matrices(&self.classes, &self.table)?;
        if again != self.mckay {
            return Err(fail("McKay matrices"));
        }
        out.push("McKay matrices: integrality, eigenvector identity, A2 = transpose(A1), normality".to_string());
        self.partition.check(&self.mckay.c)?;
        out.push(format!("C = {}I - sum of tau over {} sets", self.partition.p, self.partition.p));
        let direct = mults_direct_all(&self.classes, &self.table, level)?;
        let rec = if self.series.rank == 2 {
            mults_recursive_sl2(&self.mckay.a1, level)
        } else {
            mults_recursive(&self.mckay.a1, &self.mckay.a2, level)
        };
        if direct != rec {
            return Err(fail("direct against recursive multiplicities"));
        }
        if direct != self.series.expand(level)? {
            return Err(fail("direct multiplicities against closed-form expansion"));
        }
        direct.check_dimensions(&self.table.degrees)?;
        out.push(format!("multiplicities direct = recursive = closed form up to level {level}, dimensions conserved"));
        let (num, den) = self.series.t_section_0();
        if !self.molien.equals(&num, &den.expand()) {
            return Err(fail("Molien series against trivial section"));
        }
        out.push("Molien series equals the trivial section of the closed form".to_string());
        Ok(out)
    }
}
