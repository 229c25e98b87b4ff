//! Frozen paper examples shared across the crate's tests.

use crate::graph::AmrGraph;
use crate::penman;

/// The "There are too many traitors of China!" graph, Penman with variables
/// (with the inverse-role attachment on `person`).
pub const CHINA_PENMAN: &str = "( p / person :ARG0-of ( b / betray-01 :ARG1 ( c / country :name \" China \" ) ) :ARG1-of ( h / have-quant-91 :ARG2 ( m / many ) :ARG3 ( t / too ) ) )";

/// The same graph without variables.
pub const CHINA_PENMAN_NOVAR: &str = "( person :ARG0-of ( betray-01 :ARG1 ( country :name \" China \" ) ) :ARG1-of ( have-quant-91 :ARG2 ( many ) :ARG3 ( too ) ) )";

/// The "We never seem to see any of the dug-in nutters acknowledge the truth
/// in it." graph, in its corpus layout with a forward reference to `w`.
pub const FIG2_PENMAN: &str = r#"(s / seem-01 :polarity -
        :ARG1 (s2 / see-01
            :ARG0 w
            :ARG1 (p / person
                    :mod (a / any)
                    :mod (n / nutter)
                    :ARG0-of (d / dig-01)
                    :ARG0-of (a2 / acknowledge-01
                        :ARG1 (t / thing
                                :ARG1-of (t2 / true-01
                                    :location (i / it))))))
        :ARG2 (w / we)
        :time (e / ever))"#;

pub fn china_graph() -> AmrGraph {
    penman::parse(CHINA_PENMAN).expect("fixture parses")
}

pub fn fig2_graph() -> AmrGraph {
    penman::parse(FIG2_PENMAN).expect("fixture parses")
}
