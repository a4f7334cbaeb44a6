//! DOT and table renderings of the library's result types. All output is a
//! pure function of the inputs: collections are emitted in their stored
//! deterministic order and nothing else (timestamps, hashes) is included.

use bercov_core::glue::{GluedCovering, NeighborhoodComponents, PieceId, RefutationReport};
use bercov_core::powermap::{FiberProfile, PushResult, SplitProfile};
use bercov_core::rational::format_rational;
use bercov_core::Rational;

/// The preimage tree of one point as a DOT digraph, edges in the direction
/// of the covering map. Every node of level j carries the level's common
/// center magnitude and radius; a splitting level fans out p-fold.
pub fn fiber_tree_dot(profile: &FiberProfile, lambda: &Rational) -> String {
    let mut out = String::new();
    out.push_str("digraph fiber_tree {\n");
    out.push_str(&format!(
        "  label=\"z -> z^{{{}^{}}}, lambda = {}, fiber count = {}\";\n",
        profile.p,
        profile.h,
        format_rational(lambda),
        profile.count
    ));
    out.push_str("  node [shape=box];\n");
    out.push_str(&format!(
        "  L0_0 [label=\"target  radius p^{}\"];\n",
        format_rational(&-lambda.clone())
    ));
    let mut width = 1u64;
    for (j, level) in profile.levels.iter().enumerate() {
        let j = j + 1;
        let branch = if level.splits { profile.p } else { 1 };
        let parent_width = width;
        width *= branch;
        for k in 0..width {
            out.push_str(&format!(
                "  L{}_{} [label=\"level {}  center {}  radius p^{}\"];\n",
                j,
                k,
                j,
                level.center_mag.to_wire(),
                format_rational(&level.radius_log)
            ));
        }
        for k in 0..width {
            out.push_str(&format!("  L{}_{} -> L{}_{};\n", j, k, j - 1, k / branch));
        }
        debug_assert_eq!(parent_width * branch, width);
    }
    out.push_str("}\n");
    out
}

fn piece_name(piece: &PieceId) -> String {
    let side = match piece.side {
        bercov_core::glue::Side::Minus => "minus",
        bercov_core::glue::Side::Plus => "plus",
    };
    match piece.sheet {
        None => format!("{}{}", side, piece.torsor),
        Some(label) => format!("{}{}_s{}", side, piece.torsor, label),
    }
}

/// The component graph of the covering over the epsilon-band: one node per
/// connected torsor piece, one edge per matched sheet pair.
pub fn components_dot(covering: &GluedCovering, structure: &NeighborhoodComponents) -> String {
    let mut out = String::new();
    out.push_str("graph components {\n");
    out.push_str(&format!(
        "  label=\"p = {}, truncation = {}, epsilon = {}, n0 = {}, components = {}\";\n",
        covering.params.p,
        covering.params.truncation,
        format_rational(&structure.epsilon),
        structure.n0,
        structure.components.len()
    ));
    out.push_str("  node [shape=ellipse];\n");
    for (idx, piece) in structure.pieces.iter().enumerate() {
        out.push_str(&format!(
            "  {} [label=\"{} (component {})\"];\n",
            piece_name(piece),
            piece_name(piece),
            structure.component_of[idx]
        ));
    }
    for (plus_piece, minus_piece, plus_label, minus_label) in &structure.edges {
        out.push_str(&format!(
            "  {} -- {} [label=\"Z+{} ~ Z-{}\"];\n",
            piece_name(&structure.pieces[*plus_piece]),
            piece_name(&structure.pieces[*minus_piece]),
            plus_label,
            minus_label
        ));
    }
    out.push_str("}\n");
    out
}

pub fn push_result_table(result: &PushResult) -> String {
    format!(
        "center_mag  {}\nradius_log  {}\n",
        result.center_mag.to_wire(),
        format_rational(&result.radius_log)
    )
}

pub fn profile_table(profile: &SplitProfile) -> String {
    let mut out = String::from("lambda interval        count\n");
    for seg in &profile.segments {
        let lo_bracket = if seg.lo_closed { '[' } else { '(' };
        let hi_bracket = if seg.hi_closed { ']' } else { ')' };
        let hi = seg.hi.as_ref().map_or("inf".to_string(), format_rational);
        let interval = format!(
            "{}{}, {}{}",
            lo_bracket,
            format_rational(&seg.lo),
            hi,
            hi_bracket
        );
        out.push_str(&format!(
            "{:<22} {}^{}\n",
            interval, profile.p, seg.count_exponent
        ));
    }
    out
}

pub fn refutation_table(report: &RefutationReport) -> String {
    let mut out = format!(
        "p = {}, delta = {}, epsilon = {}, n0 = {}, anchor = minus torsor {}\n",
        report.p,
        format_rational(&report.delta),
        format_rational(&report.epsilon),
        report.n0,
        report.anchor
    );
    out.push_str("truncation  component  gauss_fiber_count  closed_form\n");
    for entry in &report.entries {
        out.push_str(&format!(
            "{:<11} {:<10} {:<18} {}\n",
            entry.truncation, entry.component, entry.gauss_fiber_count, entry.closed_form
        ));
    }
    out.push_str(&format!("verdict: {}\n", report.verdict));
    out
}

pub fn covering_table(covering: &GluedCovering) -> String {
    let mut out = format!(
        "p = {}, t0 = {}, delta = {}, truncation = {}\n",
        covering.params.p,
        format_rational(&covering.params.t0),
        format_rational(&covering.params.delta),
        covering.params.truncation
    );
    out.push_str(&format!(
        "torsors per side: {}, sheets per side: {}, matched pairs: {}\n",
        covering.minus.len(),
        covering.sheets_per_side,
        covering.matching.len()
    ));
    out.push_str("side   n  pin\n");
    for (n, ts) in covering.minus.iter().enumerate() {
        out.push_str(&format!("minus  {:<2} {}\n", n, format_rational(&ts.t_pin)));
    }
    for (n, ts) in covering.plus.iter().enumerate() {
        out.push_str(&format!("plus   {:<2} {}\n", n, format_rational(&ts.t_pin)));
    }
    out.push_str("unmatched sheets: ");
    let names: Vec<String> = covering
        .unmatched
        .iter()
        .map(|s| {
            format!(
                "Z{}{}",
                match s.side {
                    bercov_core::glue::Side::Minus => "-",
                    bercov_core::glue::Side::Plus => "+",
                },
                s.label
            )
        })
        .collect();
    out.push_str(&names.join(", "));
    out.push('\n');
    out
}
