//! Unique choice among admissible windows: the knee rule.
//!
//! Among all candidates, keep those whose window reaches the largest end
//! index, then take the smallest monolayer disagreement; exact ties on
//! that error resolve to the smallest start index. Start and end indices
//! identify a window uniquely, so the rule is total and the winner does
//! not depend on input order.

use crate::model::Candidate;

/// Selects the knee candidate, or `None` when there are no candidates.
pub fn select_knee(candidates: &[Candidate]) -> Option<&Candidate> {
    candidates.iter().reduce(|best, next| if beats(next, best) { next } else { best })
}

/// Strict "next is preferred over best" on (end desc, pc_error asc,
/// start asc). pc_error is finite by construction, so total_cmp agrees
/// with the numeric order.
fn beats(next: &Candidate, best: &Candidate) -> bool {
    let (ns, ne) = next.fit.range;
    let (bs, be) = best.fit.range;
    if ne != be {
        return ne > be;
    }
    match next.pc_error.total_cmp(&best.pc_error) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => ns < bs,
    }
}
