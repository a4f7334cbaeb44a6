//! Gluing sequences of pinned torsors into a single covering of an annulus,
//! certifying that each one-sided restriction is a disjoint union of finite
//! etale coverings, and refuting local triviality around the gluing circle
//! by exhibiting unbounded Gauss-fiber growth in one connected component.
//!
//! The construction takes two families of degree-p torsors on the halves
//! `C^-` and `C^+` of an annulus split at an interior circle `t0`. The n-th
//! minus torsor is pinned at `a_n = t0 - delta/(n+1)` and splits above its
//! pin, the n-th plus torsor at `b_n = t0 + delta/(n+1)` splitting below, so
//! both families split totally over the circle `t0` and their splitting
//! regions shrink onto it. Every torsor contributes p interface sheets over
//! the circle, labeled consecutively; the shift matching identifies plus
//! sheet m with minus sheet m+1, chaining all torsors together.

use num_traits::Signed;
use serde_json::{json, Value};

use crate::annuli::{Annulus, CenterTag};
use crate::dsu::DisjointSets;
use crate::interval::{Bound, Interval};
use crate::rational::{format_rational, parse_rational};
use crate::torsor::{Orientation, TorsorSpec};
use crate::valgroup::is_prime;
use crate::{Error, Rational, Result};

/// The two halves of the split annulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Minus,
    Plus,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Minus => "minus",
            Side::Plus => "plus",
        }
    }

    fn from_str(s: &str) -> Result<Side> {
        match s {
            "minus" => Ok(Side::Minus),
            "plus" => Ok(Side::Plus),
            other => Err(Error::BadFormat {
                what: "side",
                detail: other.to_string(),
            }),
        }
    }
}

/// A labeled interface sheet over the gluing circle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SheetId {
    pub side: Side,
    /// 1-based label; torsor n owns labels `np+1 ..= (n+1)p` on its side.
    pub label: u64,
}

impl SheetId {
    pub fn minus(label: u64) -> Self {
        SheetId {
            side: Side::Minus,
            label,
        }
    }

    pub fn plus(label: u64) -> Self {
        SheetId {
            side: Side::Plus,
            label,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "side": self.side.as_str(), "label": self.label })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let side = Side::from_str(v.get("side").and_then(Value::as_str).unwrap_or_default())?;
        let label = v
            .get("label")
            .and_then(Value::as_u64)
            .ok_or(Error::BadFormat {
                what: "sheet id",
                detail: "missing label".into(),
            })?;
        Ok(SheetId { side, label })
    }
}

/// How interface sheets of the two sides are identified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchingRule {
    /// Identify plus sheet m with minus sheet m+1 for every m that has a
    /// partner at the current truncation.
    Shift,
}

impl MatchingRule {
    pub fn as_str(self) -> &'static str {
        match self {
            MatchingRule::Shift => "shift",
        }
    }

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shift" => Ok(MatchingRule::Shift),
            other => Err(Error::BadFormat {
                what: "matching rule",
                detail: other.to_string(),
            }),
        }
    }

    /// Matched pairs `(plus label, minus label)` at truncation N.
    fn pairs(self, p: u64, truncation: u32) -> Vec<(u64, u64)> {
        match self {
            MatchingRule::Shift => {
                let total = p * (truncation as u64 + 1);
                (1..total).map(|m| (m, m + 1)).collect()
            }
        }
    }

    fn is_matched(self, p: u64, truncation: u32, sheet: &SheetId) -> bool {
        match self {
            MatchingRule::Shift => {
                let total = p * (truncation as u64 + 1);
                match sheet.side {
                    Side::Plus => sheet.label < total,
                    Side::Minus => sheet.label >= 2 && sheet.label <= total,
                }
            }
        }
    }
}

/// Parameters of the glued construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionParams {
    pub p: u64,
    /// Skeleton of the ambient annulus in log coordinates.
    pub skeleton: Interval,
    /// Gluing circle, an interior point of the skeleton.
    pub t0: Rational,
    /// Pin-offset scale: pins are `t0 -+ delta/(n+1)`.
    pub delta: Rational,
    /// Torsors 0..=truncation are instantiated on each side.
    pub truncation: u32,
    pub matching: MatchingRule,
}

impl ConstructionParams {
    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::NotPrime(self.p));
        }
        if !self.skeleton.has_interior() {
            return Err(Error::NoInterior);
        }
        if !self.delta.is_positive() {
            return Err(Error::DeltaTooLarge);
        }
        let lo_ok = self
            .skeleton
            .lo
            .value()
            .is_none_or(|v| *v < &self.t0 - &self.delta);
        let hi_ok = self
            .skeleton
            .hi
            .value()
            .is_none_or(|v| &self.t0 + &self.delta < *v);
        if !lo_ok || !hi_ok {
            return Err(Error::DeltaTooLarge);
        }
        Ok(())
    }

    /// Minus-side pin `a_n = t0 - delta/(n+1)`, increasing to t0.
    pub fn pin_minus(&self, n: u32) -> Rational {
        &self.t0 - &self.delta / Rational::from_integer((n as i64 + 1).into())
    }

    /// Plus-side pin `b_n = t0 + delta/(n+1)`, decreasing to t0.
    pub fn pin_plus(&self, n: u32) -> Rational {
        &self.t0 + &self.delta / Rational::from_integer((n as i64 + 1).into())
    }

    /// The half-annulus `C^-` with the gluing circle included.
    pub fn minus_annulus(&self) -> Result<Annulus> {
        Annulus::new(
            CenterTag::AtZero,
            Interval::new(self.skeleton.lo.clone(), Bound::Closed(self.t0.clone())),
        )
    }

    /// The half-annulus `C^+` with the gluing circle included.
    pub fn plus_annulus(&self) -> Result<Annulus> {
        Annulus::new(
            CenterTag::AtZero,
            Interval::new(Bound::Closed(self.t0.clone()), self.skeleton.hi.clone()),
        )
    }
}

/// The glued covering at a finite truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedCovering {
    pub params: ConstructionParams,
    /// Minus-side torsors, index n: pinned at `a_n`, splitting above.
    pub minus: Vec<TorsorSpec>,
    /// Plus-side torsors, index n: pinned at `b_n`, splitting below.
    pub plus: Vec<TorsorSpec>,
    /// `p * (truncation + 1)` interface sheets per side.
    pub sheets_per_side: u64,
    /// Identified pairs `(plus label, minus label)`.
    pub matching: Vec<(u64, u64)>,
    /// Sheets without a partner at this truncation, minus side first.
    pub unmatched: Vec<SheetId>,
}

/// Builds the glued covering: instantiates all torsors, labels their
/// interface sheets over the gluing circle, and records the matching.
pub fn build_covering(params: &ConstructionParams) -> Result<GluedCovering> {
    params.validate()?;
    let minus_annulus = params.minus_annulus()?;
    let plus_annulus = params.plus_annulus()?;
    let circle = Interval::singleton(params.t0.clone());

    let mut minus = Vec::with_capacity(params.truncation as usize + 1);
    let mut plus = Vec::with_capacity(params.truncation as usize + 1);
    for n in 0..=params.truncation {
        let below = TorsorSpec::new(
            params.p,
            minus_annulus.clone(),
            params.pin_minus(n),
            Orientation::SplitsAbove,
        )?;
        let above = TorsorSpec::new(
            params.p,
            plus_annulus.clone(),
            params.pin_plus(n),
            Orientation::SplitsBelow,
        )?;
        // Both torsors must split totally over the gluing circle; the p
        // interface sheets per torsor exist exactly because of this.
        if !below.splits_over_tube(&circle)? || !above.splits_over_tube(&circle)? {
            return Err(Error::Internal(
                "a torsor fails to split over the gluing circle".into(),
            ));
        }
        minus.push(below);
        plus.push(above);
    }

    let sheets_per_side = params.p * (params.truncation as u64 + 1);
    let matching = params.matching.pairs(params.p, params.truncation);
    let mut unmatched = Vec::new();
    for label in 1..=sheets_per_side {
        if !params
            .matching
            .is_matched(params.p, params.truncation, &SheetId::minus(label))
        {
            unmatched.push(SheetId::minus(label));
        }
    }
    for label in 1..=sheets_per_side {
        if !params
            .matching
            .is_matched(params.p, params.truncation, &SheetId::plus(label))
        {
            unmatched.push(SheetId::plus(label));
        }
    }

    Ok(GluedCovering {
        params: params.clone(),
        minus,
        plus,
        sheets_per_side,
        matching,
        unmatched,
    })
}

/// Structural certificate that the restriction of the glued covering to one
/// side is the disjoint union of that side's torsors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionCertificate {
    pub side: Side,
    /// Number of degree-p coverings in the disjoint union.
    pub torsors: u64,
    pub degree: u64,
    /// Every torsor is connected over the full half-skeleton.
    pub torsors_connected: bool,
    /// Interface sheets from the other side that the gluing leaves inside
    /// this restriction and that no larger truncation would absorb.
    pub exceptions: Vec<SheetId>,
    pub exact: bool,
}

impl GluedCovering {
    /// Certifies the restriction to one side.
    ///
    /// Matched sheets from the other side are absorbed into this side's
    /// torsors and truncation artifacts (sheets the rule would match at
    /// truncation N+1) are discounted; anything else over the gluing circle
    /// is reported as an exception.
    pub fn restriction_certificate(&self, side: Side) -> Result<RestrictionCertificate> {
        let (own, own_annulus) = match side {
            Side::Minus => (&self.minus, self.params.minus_annulus()?),
            Side::Plus => (&self.plus, self.params.plus_annulus()?),
        };
        let mut torsors_connected = true;
        for ts in own {
            if ts.components_over(&own_annulus.skeleton)? != 1 {
                torsors_connected = false;
            }
        }
        let other = match side {
            Side::Minus => Side::Plus,
            Side::Plus => Side::Minus,
        };
        let mut exceptions = Vec::new();
        for sheet in &self.unmatched {
            if sheet.side != other {
                continue;
            }
            let absorbed_later =
                self.params
                    .matching
                    .is_matched(self.params.p, self.params.truncation + 1, sheet);
            if !absorbed_later {
                exceptions.push(sheet.clone());
            }
        }
        let exact = exceptions.is_empty();
        Ok(RestrictionCertificate {
            side,
            torsors: own.len() as u64,
            degree: self.params.p,
            torsors_connected,
            exceptions,
            exact,
        })
    }
}

/// Least n whose pins on both sides lie within epsilon of the gluing circle,
/// i.e. the first torsor index whose restrictions to both epsilon-circles
/// are connected.
pub fn n0_of_epsilon(params: &ConstructionParams, epsilon: &Rational) -> Result<u64> {
    params.validate()?;
    if !epsilon.is_positive() || epsilon > &params.delta {
        return Err(Error::EpsilonOutOfRange);
    }
    let lo_circle = &params.t0 - epsilon;
    let hi_circle = &params.t0 + epsilon;
    if !params.skeleton.contains(&lo_circle) || !params.skeleton.contains(&hi_circle) {
        return Err(Error::EpsilonOutOfRange);
    }
    // delta/(n+1) <= epsilon first holds at n = ceil(delta/epsilon) - 1.
    let q = (&params.delta / epsilon).ceil();
    let n = q.to_integer() - 1;
    u64::try_from(n).map_err(|_| Error::Internal("negative torsor index".into()))
}

/// One connected piece of a torsor restricted to the neighborhood band.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceId {
    pub side: Side,
    pub torsor: u32,
    /// `None` when the whole restriction is connected; otherwise the single
    /// interface sheet this piece carries.
    pub sheet: Option<u64>,
}

/// One point of the Gauss fiber over the gluing circle: a matched pair of
/// interface sheets, or a lone unmatched sheet.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SheetClass {
    pub plus: Option<u64>,
    pub minus: Option<u64>,
}

/// A connected component of the covering restricted to the band.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Indices into [`NeighborhoodComponents::pieces`], ascending.
    pub pieces: Vec<usize>,
    /// Gauss-fiber points belonging to this component.
    pub sheet_classes: Vec<SheetClass>,
}

/// Component structure of the covering over the band `[t0-eps, t0+eps]`.
///
/// The band is the minimal structure any overconvergent neighborhood of the
/// Gauss point of the gluing circle must contain: both epsilon-circles and
/// the circle itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodComponents {
    pub epsilon: Rational,
    pub n0: u64,
    pub pieces: Vec<PieceId>,
    /// Matched pairs as edges `(plus piece, minus piece, plus label, minus label)`.
    pub edges: Vec<(usize, usize, u64, u64)>,
    /// Piece index -> component index.
    pub component_of: Vec<usize>,
    /// Components ordered by their smallest piece index.
    pub components: Vec<Component>,
}

impl NeighborhoodComponents {
    /// Index of the connected (whole-torsor) piece for the given torsor.
    pub fn whole_piece(&self, side: Side, torsor: u32) -> Option<usize> {
        self.pieces
            .iter()
            .position(|pc| pc.side == side && pc.torsor == torsor && pc.sheet.is_none())
    }

    pub fn component_containing(&self, side: Side, torsor: u32) -> Option<usize> {
        self.whole_piece(side, torsor)
            .map(|idx| self.component_of[idx])
    }
}

/// Number of Gauss-fiber points of the component over the gluing circle.
pub fn gauss_fiber_count(component: &Component) -> u64 {
    component.sheet_classes.len() as u64
}

impl GluedCovering {
    /// Computes the connected components of the covering over the band
    /// `[t0-eps, t0+eps]`: each torsor contributes one piece when its
    /// restriction to its half-band is connected and p sheet-pieces
    /// otherwise, and matched interface sheets join pieces.
    pub fn components_over_neighborhood(
        &self,
        epsilon: &Rational,
    ) -> Result<NeighborhoodComponents> {
        let n0 = n0_of_epsilon(&self.params, epsilon)?;
        let p = self.params.p;
        let band_minus = Interval::closed(&self.params.t0 - epsilon, self.params.t0.clone());
        let band_plus = Interval::closed(self.params.t0.clone(), &self.params.t0 + epsilon);

        let mut pieces = Vec::new();
        // Sheet label -> piece index, per side.
        let mut piece_of_sheet = vec![vec![0usize; self.sheets_per_side as usize]; 2];
        for (side_idx, (side, torsors, band)) in [
            (Side::Minus, &self.minus, &band_minus),
            (Side::Plus, &self.plus, &band_plus),
        ]
        .into_iter()
        .enumerate()
        {
            for (n, ts) in torsors.iter().enumerate() {
                let connected = ts.components_over(band)? == 1;
                let first_label = n as u64 * p + 1;
                if connected {
                    let idx = pieces.len();
                    pieces.push(PieceId {
                        side,
                        torsor: n as u32,
                        sheet: None,
                    });
                    for label in first_label..first_label + p {
                        piece_of_sheet[side_idx][(label - 1) as usize] = idx;
                    }
                } else {
                    for label in first_label..first_label + p {
                        let idx = pieces.len();
                        pieces.push(PieceId {
                            side,
                            torsor: n as u32,
                            sheet: Some(label),
                        });
                        piece_of_sheet[side_idx][(label - 1) as usize] = idx;
                    }
                }
            }
        }

        let mut dsu = DisjointSets::new(pieces.len());
        let mut edges = Vec::with_capacity(self.matching.len());
        for &(plus_label, minus_label) in &self.matching {
            let plus_piece = piece_of_sheet[1][(plus_label - 1) as usize];
            let minus_piece = piece_of_sheet[0][(minus_label - 1) as usize];
            dsu.union(plus_piece, minus_piece);
            edges.push((plus_piece, minus_piece, plus_label, minus_label));
        }

        // Components keyed by root, then renumbered by smallest piece index.
        let mut component_of_root = std::collections::BTreeMap::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        for idx in 0..pieces.len() {
            let root = dsu.find(idx);
            let comp = *component_of_root.entry(root).or_insert_with(|| {
                members.push(Vec::new());
                members.len() - 1
            });
            members[comp].push(idx);
        }
        let component_of: Vec<usize> = (0..pieces.len())
            .map(|idx| component_of_root[&dsu.find(idx)])
            .collect();

        let mut components: Vec<Component> = members
            .into_iter()
            .map(|pieces| Component {
                pieces,
                sheet_classes: Vec::new(),
            })
            .collect();
        for &(plus_piece, minus_piece, plus_label, minus_label) in &edges {
            let comp = component_of[plus_piece];
            if component_of[minus_piece] != comp {
                return Err(Error::Internal(
                    "matched sheets landed in different components".into(),
                ));
            }
            components[comp].sheet_classes.push(SheetClass {
                plus: Some(plus_label),
                minus: Some(minus_label),
            });
        }
        for sheet in &self.unmatched {
            let side_idx = match sheet.side {
                Side::Minus => 0,
                Side::Plus => 1,
            };
            let piece = piece_of_sheet[side_idx][(sheet.label - 1) as usize];
            let class = match sheet.side {
                Side::Minus => SheetClass {
                    plus: None,
                    minus: Some(sheet.label),
                },
                Side::Plus => SheetClass {
                    plus: Some(sheet.label),
                    minus: None,
                },
            };
            components[component_of[piece]].sheet_classes.push(class);
        }
        for comp in &mut components {
            comp.sheet_classes.sort();
        }

        Ok(NeighborhoodComponents {
            epsilon: epsilon.clone(),
            n0,
            pieces,
            edges,
            component_of,
            components,
        })
    }
}

/// One truncation step of the refutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefutationEntry {
    pub truncation: u32,
    /// Component id containing the anchor torsor at this truncation.
    pub component: usize,
    /// Gauss-fiber count of that component, from the union-find structure.
    pub gauss_fiber_count: u64,
    /// The same count from the inclusion-exclusion closed form
    /// `p (N - n0 + 1) + 1`.
    pub closed_form: u64,
}

/// Certificate that the Gauss fiber of one connected component grows
/// without bound as the truncation increases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefutationReport {
    pub p: u64,
    pub t0: Rational,
    pub delta: Rational,
    pub epsilon: Rational,
    pub n0: u64,
    /// The chain is anchored at the minus-side torsor with index n0.
    pub anchor: u64,
    pub entries: Vec<RefutationEntry>,
    /// True when counts are strictly increasing with per-step growth at
    /// least `p * delta_truncation - 2`.
    pub verdict: bool,
}

impl RefutationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "t0": format_rational(&self.t0),
            "delta": format_rational(&self.delta),
            "epsilon": format_rational(&self.epsilon),
            "n0": self.n0,
            "anchor": { "side": "minus", "torsor": self.anchor },
            "entries": self
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "truncation": e.truncation,
                        "component": e.component,
                        "gauss_fiber_count": e.gauss_fiber_count,
                        "closed_form": e.closed_form,
                    })
                })
                .collect::<Vec<_>>(),
            "verdict": self.verdict,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |detail: &str| Error::BadFormat {
            what: "refutation report",
            detail: detail.to_string(),
        };
        let u = |k: &str| v.get(k).and_then(Value::as_u64).ok_or_else(|| bad(k));
        let r = |k: &str| -> Result<Rational> {
            parse_rational(v.get(k).and_then(Value::as_str).ok_or_else(|| bad(k))?)
        };
        let entries = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("entries"))?
            .iter()
            .map(|e| {
                Ok(RefutationEntry {
                    truncation: e
                        .get("truncation")
                        .and_then(Value::as_u64)
                        .ok_or_else(|| bad("truncation"))? as u32,
                    component: e
                        .get("component")
                        .and_then(Value::as_u64)
                        .ok_or_else(|| bad("component"))? as usize,
                    gauss_fiber_count: e
                        .get("gauss_fiber_count")
                        .and_then(Value::as_u64)
                        .ok_or_else(|| bad("gauss_fiber_count"))?,
                    closed_form: e
                        .get("closed_form")
                        .and_then(Value::as_u64)
                        .ok_or_else(|| bad("closed_form"))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RefutationReport {
            p: u("p")?,
            t0: r("t0")?,
            delta: r("delta")?,
            epsilon: r("epsilon")?,
            n0: u("n0")?,
            anchor: v
                .get("anchor")
                .and_then(|a| a.get("torsor"))
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("anchor"))?,
            entries,
            verdict: v
                .get("verdict")
                .and_then(Value::as_bool)
                .ok_or_else(|| bad("verdict"))?,
        })
    }
}

/// Rebuilds the covering at each listed truncation, follows the component
/// containing the anchor torsor (minus side, index n0), and checks that its
/// Gauss-fiber count grows at least linearly.
///
/// The union-find count is verified against the closed form at every step;
/// a mismatch is an internal invariant breach.
pub fn refute_overconvergent(
    params: &ConstructionParams,
    epsilon: &Rational,
    truncations: &[u32],
) -> Result<RefutationReport> {
    if truncations.len() < 2 {
        return Err(Error::NeedTwoTruncations);
    }
    if truncations.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::TruncationsNotIncreasing);
    }
    let n0 = n0_of_epsilon(params, epsilon)?;
    if let Some(&n) = truncations.iter().find(|&&n| (n as u64) < n0) {
        return Err(Error::TruncationBelowAnchor { n: n as u64, n0 });
    }

    let mut entries = Vec::with_capacity(truncations.len());
    for &truncation in truncations {
        let step_params = ConstructionParams {
            truncation,
            ..params.clone()
        };
        let covering = build_covering(&step_params)?;
        let structure = covering.components_over_neighborhood(epsilon)?;
        let component = structure
            .component_containing(Side::Minus, n0 as u32)
            .ok_or_else(|| Error::Internal(format!("anchor torsor {n0} has no connected piece")))?;
        let count = gauss_fiber_count(&structure.components[component]);
        let closed_form = params.p * (truncation as u64 - n0 + 1) + 1;
        if count != closed_form {
            return Err(Error::Internal(format!(
                "gauss fiber count {count} disagrees with closed form {closed_form} at truncation {truncation}"
            )));
        }
        entries.push(RefutationEntry {
            truncation,
            component,
            gauss_fiber_count: count,
            closed_form,
        });
    }

    let verdict = entries.windows(2).all(|w| {
        let growth = w[1].gauss_fiber_count as i128 - w[0].gauss_fiber_count as i128;
        let dn = (w[1].truncation - w[0].truncation) as i128;
        growth > 0 && growth >= params.p as i128 * dn - 2
    });

    Ok(RefutationReport {
        p: params.p,
        t0: params.t0.clone(),
        delta: params.delta.clone(),
        epsilon: epsilon.clone(),
        n0,
        anchor: n0,
        entries,
        verdict,
    })
}

impl GluedCovering {
    pub fn to_json(&self) -> Value {
        json!({
            "p": self.params.p,
            "skeleton": self.params.skeleton.to_json(),
            "t0": format_rational(&self.params.t0),
            "delta": format_rational(&self.params.delta),
            "truncation": self.params.truncation,
            "matching_rule": self.params.matching.as_str(),
            "minus_annulus": self.minus[0].annulus.to_json(),
            "plus_annulus": self.plus[0].annulus.to_json(),
            "minus_pins": self
                .minus
                .iter()
                .map(|t| Value::String(format_rational(&t.t_pin)))
                .collect::<Vec<_>>(),
            "plus_pins": self
                .plus
                .iter()
                .map(|t| Value::String(format_rational(&t.t_pin)))
                .collect::<Vec<_>>(),
            "sheets_per_side": self.sheets_per_side,
            "matching": self
                .matching
                .iter()
                .map(|(plus, minus)| json!({ "plus": plus, "minus": minus }))
                .collect::<Vec<_>>(),
            "unmatched": self.unmatched.iter().map(SheetId::to_json).collect::<Vec<_>>(),
        })
    }

    /// Rebuilds the covering from the parameters in the JSON value and
    /// verifies the listed pins, matching and unmatched sheets against the
    /// rebuilt object, so a tampered certificate fails to parse.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |detail: &str| Error::BadFormat {
            what: "glued covering",
            detail: detail.to_string(),
        };
        let params = ConstructionParams {
            p: v.get("p").and_then(Value::as_u64).ok_or_else(|| bad("p"))?,
            skeleton: Interval::from_json(v.get("skeleton").ok_or_else(|| bad("skeleton"))?)?,
            t0: parse_rational(
                v.get("t0")
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad("t0"))?,
            )?,
            delta: parse_rational(
                v.get("delta")
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad("delta"))?,
            )?,
            truncation: v
                .get("truncation")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("truncation"))? as u32,
            matching: MatchingRule::from_str(
                v.get("matching_rule")
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad("matching_rule"))?,
            )?,
        };
        let covering = build_covering(&params)?;
        if covering.to_json() != *v {
            return Err(Error::BadFormat {
                what: "glued covering",
                detail: "listed sheets or matching disagree with the rebuilt covering".into(),
            });
        }
        Ok(covering)
    }
}
