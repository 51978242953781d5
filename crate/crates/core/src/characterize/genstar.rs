//! Minimum zero forcing sets of generalized stars against their closed forms.

use serde::Serialize;

use crate::error::Result;
use crate::forcing::propagation_time;
use crate::graph::{generalized_star_vertices, Family};
use crate::search::{analyze, Budget};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClosedForm {
    /// `e2 + e3 - 1`
    E2E3Minus1,
    /// `e2 + e3`
    E2E3,
    /// `e1 + e3 - 1`
    E1E3Minus1,
    /// `e1 + e3`
    E1E3,
}

impl ClosedForm {
    pub fn eval(self, [e1, e2, e3]: [usize; 3]) -> usize {
        match self {
            ClosedForm::E2E3Minus1 => e2 + e3 - 1,
            ClosedForm::E2E3 => e2 + e3,
            ClosedForm::E1E3Minus1 => e1 + e3 - 1,
            ClosedForm::E1E3 => e1 + e3,
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            ClosedForm::E2E3Minus1 => "e2+e3-1",
            ClosedForm::E2E3 => "e2+e3",
            ClosedForm::E1E3Minus1 => "e1+e3-1",
            ClosedForm::E1E3 => "e1+e3",
        }
    }
}

/// The nine labelled sets, in table order. `u_i` is the leaf of arm `i`,
/// `w_i` the neighbour of the center on arm `i`.
pub const STAR_ROWS: [([&str; 2], ClosedForm); 9] = [
    (["u1", "u2"], ClosedForm::E2E3Minus1),
    (["u3", "w2"], ClosedForm::E2E3Minus1),
    (["u3", "w1"], ClosedForm::E2E3),
    (["u1", "u3"], ClosedForm::E2E3Minus1),
    (["u2", "w3"], ClosedForm::E2E3Minus1),
    (["u2", "w1"], ClosedForm::E2E3),
    (["u2", "u3"], ClosedForm::E1E3Minus1),
    (["u1", "w3"], ClosedForm::E1E3Minus1),
    (["u1", "w2"], ClosedForm::E1E3),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarRow {
    pub set_labels: String,
    pub set: VertexSet,
    /// `pt(S, B)`, or `None` when the set does not force.
    pub pt: Option<usize>,
    pub formula: &'static str,
    pub predicted: usize,
    pub is_minimum: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarTable {
    pub e: [usize; 3],
    pub n: usize,
    #[serde(rename = "Z")]
    pub z: usize,
    pub pt: usize,
    #[serde(rename = "PT")]
    pub pt_max: usize,
    pub pd: usize,
    pub realized_times: Vec<usize>,
    pub rows: Vec<StarRow>,
    /// The nine rows are exactly the minimum zero forcing sets.
    pub rows_are_all_minimum: bool,
    /// `1 < e1 < e2 < e3`, the range in which the closed forms are claimed.
    pub closed_forms_apply: bool,
}

impl StarTable {
    /// Every row equals its closed form, when the closed forms apply.
    pub fn matches(&self) -> bool {
        !self.closed_forms_apply || (self.rows_are_all_minimum && self.rows.iter().all(|r| r.pt == Some(r.predicted)))
    }
}

pub fn generalized_star_table(e: [usize; 3], budget: &Budget) -> Result<StarTable> {
    let g = Family::GeneralizedStar(e[0], e[1], e[2]).build()?;
    let r = analyze(&g, budget)?;
    let named = generalized_star_vertices(e);
    let vertex = |label: &str| -> usize {
        let i = (label.as_bytes()[1] - b'1') as usize;
        if label.starts_with('u') {
            named.leaf[i]
        } else {
            named.near[i]
        }
    };
    let rows: Vec<StarRow> = STAR_ROWS
        .iter()
        .map(|&(labels, form)| {
            let set: VertexSet = labels.iter().map(|l| vertex(l)).collect();
            StarRow {
                set_labels: format!("{{{},{}}}", labels[0], labels[1]),
                set,
                pt: propagation_time(&g, set),
                formula: form.formula(),
                predicted: form.eval(e),
                is_minimum: r.time_of(set).is_some(),
            }
        })
        .collect();
    let mut listed: Vec<VertexSet> = rows.iter().map(|r| r.set).collect();
    listed.sort_by(|a, b| a.lex_cmp(*b));
    listed.dedup();
    let minimum: Vec<VertexSet> = r.min_zfs.iter().map(|z| z.set).collect();
    Ok(StarTable {
        e,
        n: g.order(),
        z: r.z,
        pt: r.pt,
        pt_max: r.pt_max,
        pd: r.pd,
        realized_times: r.realized_times.iter().copied().collect(),
        rows,
        rows_are_all_minimum: listed == minimum,
        closed_forms_apply: 1 < e[0] && e[0] < e[1] && e[1] < e[2],
    })
}
