//! The core-disjoint local coloring game.
//!
//! The game is played on a board: two same-size antichain levels `L ⋖ T`
//! whose relation is a core, together with a multicoloring `χ` of the
//! points whose color classes are chains. Each round the Spoiler
//! introduces a fresh middle antichain `M` with `L ⋖ M ⋖ T`, again by core
//! relations, the Algorithm multicolors `M` from `χ(L) ∩ χ(T)`, and the
//! Spoiler keeps one of the two new boards `(L, M)` or `(M, T)`.
//!
//! [`referee_local`] drives a full game; [`validate_local_move`] and
//! [`validate_local_coloring`] expose the two legality checks for direct
//! use, reporting the violated clause.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use poset_core::{compose_matched_cores, is_core, Poset, PointId, RegularBipartite};

use crate::error::StrategyError;

/// A color used by local multicolorings. Colors are plain 1-based
/// integers; palettes are small sets of them.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorId(pub u32);

impl fmt::Display for ColorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A set of colors carried by one point.
pub type ColorSet = BTreeSet<ColorId>;

/// A multicoloring of a set of points.
pub type Multicoloring = BTreeMap<PointId, ColorSet>;

/// Which of the two freshly formed boards the Spoiler keeps after a round.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum KeepSide {
    /// Keep `(L, M)`: the middle becomes the new upper level.
    Lower,
    /// Keep `(M, T)`: the middle becomes the new lower level.
    Upper,
}

/// The clause of move legality that a Spoiler move violated.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum MoveClause {
    /// The middle level does not have exactly `w` points.
    LevelSizes,
    /// A middle point already lives on the board.
    FreshPoints,
    /// An edge endpoint is not on the expected level.
    EdgeEndpoints,
    /// Some `l < m < t` composite is not an edge of the board.
    Transitivity,
    /// The extended poset does not have width `w`.
    Width,
    /// The levels are not ordered `L ⊴ M ⊴ T` in the antichain lattice.
    Domination,
    /// The `(L, M)` relation is not a core.
    CoreLower,
    /// The `(M, T)` relation is not a core.
    CoreUpper,
}

impl fmt::Display for MoveClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            MoveClause::LevelSizes => "level-sizes",
            MoveClause::FreshPoints => "fresh-points",
            MoveClause::EdgeEndpoints => "edge-endpoints",
            MoveClause::Transitivity => "transitivity",
            MoveClause::Width => "width",
            MoveClause::Domination => "domination",
            MoveClause::CoreLower => "lower-core",
            MoveClause::CoreUpper => "upper-core",
        };
        f.write_str(name)
    }
}

/// The clause of response legality that an Algorithm coloring violated.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ColoringClause {
    /// The coloring does not cover exactly the middle points.
    Domain,
    /// Some point received no color at all.
    EmptyColorSet,
    /// A color outside `χ(L) ∩ χ(T)` was used on the middle.
    SharedColors,
    /// Some color class is not a chain of the extended poset.
    ChainCondition,
}

impl fmt::Display for ColoringClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ColoringClause::Domain => "domain",
            ColoringClause::EmptyColorSet => "empty-color-set",
            ColoringClause::SharedColors => "shared-colors",
            ColoringClause::ChainCondition => "chain-condition",
        };
        f.write_str(name)
    }
}

/// Errors of the local game.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LocalGameError {
    /// A board failed construction-time validation.
    #[error("invalid local board: {0}")]
    InvalidBoard(String),
    /// A Spoiler move broke the named legality clause.
    #[error("round {round}: illegal move [{clause}]: {message}")]
    IllegalMove {
        round: usize,
        clause: MoveClause,
        message: String,
    },
    /// An Algorithm coloring broke the named legality clause.
    #[error("round {round}: illegal coloring [{clause}]: {message}")]
    IllegalColoring {
        round: usize,
        clause: ColoringClause,
        message: String,
    },
    /// A strategy gave up instead of producing a move or coloring.
    #[error("round {round}: strategy failed: {message}")]
    Strategy { round: usize, message: String },
}

/// A position of the local game: the two levels with their core relation
/// and the current multicoloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalBoard {
    order: RegularBipartite,
    chi: Multicoloring,
}

impl LocalBoard {
    /// Validates and wraps a board: the relation must be a core, `chi`
    /// must cover exactly the points of the two levels with nonempty
    /// color sets, and every color class must be a chain.
    pub fn new(order: RegularBipartite, chi: Multicoloring) -> Result<Self, LocalGameError> {
        let bad = |msg: String| LocalGameError::InvalidBoard(msg);
        if !is_core(&order) {
            return Err(bad("level relation is not a core".into()));
        }
        let points: BTreeSet<PointId> = order
            .lower()
            .iter()
            .chain(order.upper())
            .copied()
            .collect();
        let domain: BTreeSet<PointId> = chi.keys().copied().collect();
        if domain != points {
            return Err(bad("coloring domain differs from the board points".into()));
        }
        for (&p, colors) in &chi {
            if colors.is_empty() {
                return Err(bad(format!("point {p} has no color")));
            }
        }
        for (color, class) in color_classes(&chi) {
            if let Err(msg) = class_is_chain(&class, order.lower(), order.upper(), |l, t| {
                order.has_edge(l, t)
            }) {
                return Err(bad(format!("class of color {color} is not a chain: {msg}")));
            }
        }
        Ok(Self { order, chi })
    }

    /// The common level size `w`.
    pub fn width(&self) -> usize {
        self.order.width()
    }

    pub fn lower(&self) -> &[PointId] {
        self.order.lower()
    }

    pub fn upper(&self) -> &[PointId] {
        self.order.upper()
    }

    pub fn order(&self) -> &RegularBipartite {
        &self.order
    }

    pub fn chi(&self) -> &Multicoloring {
        &self.chi
    }

    /// The colors of one board point. Panics if the point is not on the
    /// board.
    pub fn colors_of(&self, p: PointId) -> &ColorSet {
        self.chi.get(&p).expect("board point")
    }

    /// All colors appearing on the board.
    pub fn palette(&self) -> ColorSet {
        self.chi.values().flatten().copied().collect()
    }

    /// `χ(L) ∩ χ(T)`: the colors legal for a middle antichain.
    pub fn shared_colors(&self) -> ColorSet {
        let lower: ColorSet = self
            .lower()
            .iter()
            .flat_map(|p| self.colors_of(*p))
            .copied()
            .collect();
        let upper: ColorSet = self
            .upper()
            .iter()
            .flat_map(|p| self.colors_of(*p))
            .copied()
            .collect();
        lower.intersection(&upper).copied().collect()
    }

    /// The colors whose class is exactly `{l, t}`.
    pub fn private_colors(&self, l: PointId, t: PointId) -> ColorSet {
        let cl = self.colors_of(l);
        let ct = self.colors_of(t);
        cl.intersection(ct)
            .copied()
            .filter(|c| {
                self.chi
                    .iter()
                    .all(|(&p, set)| p == l || p == t || !set.contains(c))
            })
            .collect()
    }

    /// Whether every lower point is below every upper point.
    pub fn is_complete(&self) -> bool {
        self.order.edges().len() == self.width() * self.width()
    }

    /// The board as a two-level poset.
    pub fn poset(&self) -> Poset {
        let mut poset = Poset::new();
        for &l in self.lower() {
            poset.add_point(l, &BTreeSet::new()).expect("fresh lower");
        }
        for &t in self.upper() {
            let preds: BTreeSet<PointId> = self
                .lower()
                .iter()
                .copied()
                .filter(|&l| self.order.has_edge(l, t))
                .collect();
            poset.add_point(t, &preds).expect("fresh upper");
        }
        poset
    }

    /// The board left standing after a legal round: the kept side's level
    /// pair, colored by the old `χ` on the surviving old level and by
    /// `coloring` on the middle. The inputs are re-validated wholesale;
    /// pass only moves and colorings that passed the legality checks.
    pub fn successor(
        &self,
        mv: &LocalMove,
        coloring: &Multicoloring,
        side: KeepSide,
    ) -> Result<LocalBoard, LocalGameError> {
        let middle = mv.middle.iter().copied();
        let (order, kept) = match side {
            KeepSide::Lower => (
                RegularBipartite::new(
                    self.lower().iter().copied(),
                    middle,
                    mv.edges_lm.iter().copied(),
                ),
                self.lower(),
            ),
            KeepSide::Upper => (
                RegularBipartite::new(
                    middle,
                    self.upper().iter().copied(),
                    mv.edges_mt.iter().copied(),
                ),
                self.upper(),
            ),
        };
        let order = order.map_err(|e| LocalGameError::InvalidBoard(e.to_string()))?;
        let mut chi: Multicoloring = coloring.clone();
        for &p in kept {
            chi.insert(p, self.colors_of(p).clone());
        }
        LocalBoard::new(order, chi)
    }
}

/// A Spoiler round: a fresh middle antichain and its relations to the two
/// existing levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalMove {
    pub middle: BTreeSet<PointId>,
    pub edges_lm: BTreeSet<(PointId, PointId)>,
    pub edges_mt: BTreeSet<(PointId, PointId)>,
}

/// The Algorithm side of the local game.
pub trait LocalColorer {
    /// Round one: multicolor the two complete-bipartite levels.
    fn first_round(
        &mut self,
        lower: &[PointId],
        upper: &[PointId],
    ) -> Result<Multicoloring, StrategyError>;

    /// A later round: multicolor the middle antichain of `mv`.
    fn round(&mut self, board: &LocalBoard, mv: &LocalMove)
        -> Result<Multicoloring, StrategyError>;
}

/// The Spoiler side of the local game.
pub trait LocalMoveSource {
    /// Round one: pick the point ids of the two levels. The relation is
    /// always the complete one, so only the ids are the Spoiler's choice.
    fn first_board(&mut self, w: usize) -> (Vec<PointId>, Vec<PointId>) {
        let lower = (1..=w).map(|i| PointId(i as i64)).collect();
        let upper = (1..=w).map(|i| PointId((w + i) as i64)).collect();
        (lower, upper)
    }

    /// A later round, or `None` to stop the game early.
    fn next_move(&mut self, board: &LocalBoard) -> Option<LocalMove>;

    /// After seeing the Algorithm's response, keep one of the two boards.
    fn choose_side(&mut self, board: &LocalBoard, mv: &LocalMove, coloring: &Multicoloring)
        -> KeepSide;
}

/// Checks a Spoiler move against every legality clause and returns the
/// extended three-level poset `L ∪ M ∪ T` on success. `round` is only
/// quoted in errors.
pub fn validate_local_move(
    board: &LocalBoard,
    mv: &LocalMove,
    round: usize,
) -> Result<Poset, LocalGameError> {
    let illegal = |clause: MoveClause, message: String| LocalGameError::IllegalMove {
        round,
        clause,
        message,
    };
    let w = board.width();
    if mv.middle.len() != w {
        return Err(illegal(
            MoveClause::LevelSizes,
            format!("middle has {} points, level size is {w}", mv.middle.len()),
        ));
    }
    if let Some(&p) = mv
        .middle
        .iter()
        .find(|p| board.lower().contains(p) || board.upper().contains(p))
    {
        return Err(illegal(
            MoveClause::FreshPoints,
            format!("middle point {p} already lives on the board"),
        ));
    }
    for &(l, m) in &mv.edges_lm {
        if !board.lower().contains(&l) || !mv.middle.contains(&m) {
            return Err(illegal(
                MoveClause::EdgeEndpoints,
                format!("({l}, {m}) is not a lower-to-middle pair"),
            ));
        }
    }
    for &(m, t) in &mv.edges_mt {
        if !mv.middle.contains(&m) || !board.upper().contains(&t) {
            return Err(illegal(
                MoveClause::EdgeEndpoints,
                format!("({m}, {t}) is not a middle-to-upper pair"),
            ));
        }
    }
    let lm = RegularBipartite::new(
        board.lower().iter().copied(),
        mv.middle.iter().copied(),
        mv.edges_lm.iter().copied(),
    )
    .map_err(|e| illegal(MoveClause::EdgeEndpoints, e.to_string()))?;
    let mt = RegularBipartite::new(
        mv.middle.iter().copied(),
        board.upper().iter().copied(),
        mv.edges_mt.iter().copied(),
    )
    .map_err(|e| illegal(MoveClause::EdgeEndpoints, e.to_string()))?;

    let composite = compose_matched_cores(&lm, &mt).expect("levels share the middle");
    if let Some(&(l, t)) = composite
        .edges()
        .iter()
        .find(|e| !board.order().edges().contains(e))
    {
        return Err(illegal(
            MoveClause::Transitivity,
            format!("{l} < m < {t} composes but {l} < {t} is not a board edge"),
        ));
    }
    if !is_core(&lm) {
        return Err(illegal(
            MoveClause::CoreLower,
            "the (L, M) relation is not a core".into(),
        ));
    }
    if !is_core(&mt) {
        return Err(illegal(
            MoveClause::CoreUpper,
            "the (M, T) relation is not a core".into(),
        ));
    }

    let mut extended = Poset::new();
    for &l in board.lower() {
        extended.add_point(l, &BTreeSet::new()).expect("fresh");
    }
    for &m in &mv.middle {
        let preds: BTreeSet<PointId> = mv
            .edges_lm
            .iter()
            .filter(|&&(_, m2)| m2 == m)
            .map(|&(l, _)| l)
            .collect();
        extended.add_point(m, &preds).expect("fresh");
    }
    for &t in board.upper() {
        let preds: BTreeSet<PointId> = board
            .order()
            .edges()
            .iter()
            .filter(|&&(_, t2)| t2 == t)
            .map(|&(l, _)| l)
            .chain(
                mv.edges_mt
                    .iter()
                    .filter(|&&(_, t2)| t2 == t)
                    .map(|&(m, _)| m),
            )
            .collect();
        extended.add_point(t, &preds).expect("fresh");
    }
    let got = extended.width();
    if got != w {
        return Err(illegal(
            MoveClause::Width,
            format!("extended poset has width {got}, expected {w}"),
        ));
    }
    let level = |ids: &[PointId]| {
        extended
            .antichain(ids.iter().copied())
            .expect("levels are antichains of the extended poset")
    };
    let la = level(board.lower());
    let ma = level(&mv.middle.iter().copied().collect::<Vec<_>>());
    let ta = level(board.upper());
    for (a, b, names) in [(&la, &ma, "L ⊴ M"), (&ma, &ta, "M ⊴ T")] {
        let ordered = extended
            .ma_le(a, b)
            .map_err(|e| illegal(MoveClause::Domination, e.to_string()))?;
        if !ordered {
            return Err(illegal(
                MoveClause::Domination,
                format!("{names} fails in the antichain lattice"),
            ));
        }
    }
    Ok(extended)
}

/// Checks an Algorithm response against every legality clause. The move
/// itself is assumed legal. `round` is only quoted in errors.
pub fn validate_local_coloring(
    board: &LocalBoard,
    mv: &LocalMove,
    coloring: &Multicoloring,
    round: usize,
) -> Result<(), LocalGameError> {
    let illegal = |clause: ColoringClause, message: String| LocalGameError::IllegalColoring {
        round,
        clause,
        message,
    };
    let domain: BTreeSet<PointId> = coloring.keys().copied().collect();
    if domain != mv.middle {
        return Err(illegal(
            ColoringClause::Domain,
            "coloring domain differs from the middle antichain".into(),
        ));
    }
    for (&m, colors) in coloring {
        if colors.is_empty() {
            return Err(illegal(
                ColoringClause::EmptyColorSet,
                format!("middle point {m} has no color"),
            ));
        }
    }
    let shared = board.shared_colors();
    for (&m, colors) in coloring {
        if let Some(&c) = colors.iter().find(|c| !shared.contains(c)) {
            return Err(illegal(
                ColoringClause::SharedColors,
                format!("color {c} on {m} is not in χ(L) ∩ χ(T)"),
            ));
        }
    }
    // Full classes over L ∪ M ∪ T: each must be a chain, which pins down
    // at most one point per level and the required edges between them.
    let mut chi = board.chi().clone();
    for (&m, colors) in coloring {
        chi.insert(m, colors.clone());
    }
    let middle: Vec<PointId> = mv.middle.iter().copied().collect();
    for (color, class) in color_classes(&chi) {
        let err = |msg: String| {
            illegal(
                ColoringClause::ChainCondition,
                format!("class of color {color} is not a chain: {msg}"),
            )
        };
        let pick = |level: &[PointId]| -> Result<Option<PointId>, LocalGameError> {
            let on: Vec<PointId> = class.iter().copied().filter(|p| level.contains(p)).collect();
            match on.as_slice() {
                [] => Ok(None),
                [p] => Ok(Some(*p)),
                [a, b, ..] => Err(err(format!("{a} and {b} are incomparable"))),
            }
        };
        let l = pick(board.lower())?;
        let m = pick(&middle)?;
        let t = pick(board.upper())?;
        if let (Some(l), Some(m)) = (l, m) {
            if !mv.edges_lm.contains(&(l, m)) {
                return Err(err(format!("{l} and {m} are incomparable")));
            }
        }
        if let (Some(m), Some(t)) = (m, t) {
            if !mv.edges_mt.contains(&(m, t)) {
                return Err(err(format!("{m} and {t} are incomparable")));
            }
        }
        if let (Some(l), Some(t)) = (l, t) {
            if !board.order().has_edge(l, t) {
                return Err(err(format!("{l} and {t} are incomparable")));
            }
        }
    }
    Ok(())
}

/// Plays the local game for up to `rounds` rounds (the opening round
/// included) and returns the board standing after each round. The game
/// ends early without error if the move source returns `None`.
pub fn referee_local<A: LocalColorer + ?Sized, S: LocalMoveSource + ?Sized>(
    alg: &mut A,
    spoiler: &mut S,
    w: usize,
    rounds: usize,
) -> Result<Vec<LocalBoard>, LocalGameError> {
    let mut history = Vec::new();
    if rounds == 0 {
        return Ok(history);
    }
    let (lower, upper) = spoiler.first_board(w);
    let board = first_round_board(alg, &lower, &upper, w)?;
    history.push(board);
    for round in 2..=rounds {
        let board = history.last().expect("opening round played");
        let Some(mv) = spoiler.next_move(board) else {
            break;
        };
        validate_local_move(board, &mv, round)?;
        let coloring = alg
            .round(board, &mv)
            .map_err(|e| LocalGameError::Strategy {
                round,
                message: e.to_string(),
            })?;
        validate_local_coloring(board, &mv, &coloring, round)?;
        let side = spoiler.choose_side(board, &mv, &coloring);
        let next = board
            .successor(&mv, &coloring, side)
            .expect("validated move and coloring");
        history.push(next);
    }
    Ok(history)
}

/// Plays the opening round: the Spoiler's levels get the complete
/// relation and the Algorithm multicolors all of them at once.
fn first_round_board<A: LocalColorer + ?Sized>(
    alg: &mut A,
    lower: &[PointId],
    upper: &[PointId],
    w: usize,
) -> Result<LocalBoard, LocalGameError> {
    let illegal_move = |clause: MoveClause, message: String| LocalGameError::IllegalMove {
        round: 1,
        clause,
        message,
    };
    if lower.len() != w || upper.len() != w {
        return Err(illegal_move(
            MoveClause::LevelSizes,
            format!(
                "levels have {} and {} points, expected {w}",
                lower.len(),
                upper.len()
            ),
        ));
    }
    let edges = lower
        .iter()
        .flat_map(|&l| upper.iter().map(move |&t| (l, t)));
    let order = RegularBipartite::new(lower.iter().copied(), upper.iter().copied(), edges)
        .map_err(|e| illegal_move(MoveClause::FreshPoints, e.to_string()))?;

    let chi = alg
        .first_round(lower, upper)
        .map_err(|e| LocalGameError::Strategy {
            round: 1,
            message: e.to_string(),
        })?;
    let illegal = |clause: ColoringClause, message: String| LocalGameError::IllegalColoring {
        round: 1,
        clause,
        message,
    };
    let domain: BTreeSet<PointId> = chi.keys().copied().collect();
    let points: BTreeSet<PointId> = lower.iter().chain(upper).copied().collect();
    if domain != points {
        return Err(illegal(
            ColoringClause::Domain,
            "coloring domain differs from the two levels".into(),
        ));
    }
    for (&p, colors) in &chi {
        if colors.is_empty() {
            return Err(illegal(
                ColoringClause::EmptyColorSet,
                format!("point {p} has no color"),
            ));
        }
    }
    for (color, class) in color_classes(&chi) {
        if let Err(msg) = class_is_chain(&class, lower, upper, |_, _| true) {
            return Err(illegal(
                ColoringClause::ChainCondition,
                format!("class of color {color} is not a chain: {msg}"),
            ));
        }
    }
    Ok(LocalBoard::new(order, chi).expect("validated opening board"))
}

/// Groups a multicoloring by color.
fn color_classes(chi: &Multicoloring) -> BTreeMap<ColorId, BTreeSet<PointId>> {
    let mut classes: BTreeMap<ColorId, BTreeSet<PointId>> = BTreeMap::new();
    for (&p, colors) in chi {
        for &c in colors {
            classes.entry(c).or_default().insert(p);
        }
    }
    classes
}

/// Whether a color class over two levels is a chain: at most one point per
/// level, and a lower–upper pair must be related.
fn class_is_chain(
    class: &BTreeSet<PointId>,
    lower: &[PointId],
    upper: &[PointId],
    related: impl Fn(PointId, PointId) -> bool,
) -> Result<(), String> {
    let on = |level: &[PointId]| -> Vec<PointId> {
        class.iter().copied().filter(|p| level.contains(p)).collect()
    };
    let ls = on(lower);
    let ts = on(upper);
    if let [a, b, ..] = ls.as_slice() {
        return Err(format!("{a} and {b} are incomparable"));
    }
    if let [a, b, ..] = ts.as_slice() {
        return Err(format!("{a} and {b} are incomparable"));
    }
    if let (&[l], &[t]) = (ls.as_slice(), ts.as_slice()) {
        if !related(l, t) {
            return Err(format!("{l} and {t} are incomparable"));
        }
    }
    Ok(())
}
