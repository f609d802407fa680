use std::collections::BTreeMap;

use poset_core::{PointId, Poset};

use crate::arrival::{Arrival, GameView, Partitioner, PointSource};
use crate::error::GameError;
use crate::transcript::{closed_down_set, ChainTranscript};

/// Incremental referee for the on-line partitioning games. Spoiler-side
/// drivers (adversary strategies) push arrivals with [`OnlineReferee::step`]
/// and may inspect the growing poset and public transcript between moves.
pub struct OnlineReferee<'a, A: Partitioner + ?Sized> {
    alg: &'a mut A,
    check_up_growing: bool,
    poset: Poset,
    transcript: ChainTranscript,
    /// `chains[k]` holds chain `k + 1` bottom-to-top.
    chains: Vec<Vec<PointId>>,
    /// Algorithm's raw chain keys → dense 1-based indices.
    key_map: BTreeMap<usize, usize>,
}

impl<'a, A: Partitioner + ?Sized> OnlineReferee<'a, A> {
    pub fn new(alg: &'a mut A) -> Self {
        Self {
            alg,
            check_up_growing: false,
            poset: Poset::new(),
            transcript: ChainTranscript::new(),
            chains: Vec::new(),
            key_map: BTreeMap::new(),
        }
    }

    /// A referee that additionally asserts every arrival is maximal.
    pub fn new_up_growing(alg: &'a mut A) -> Self {
        Self {
            check_up_growing: true,
            ..Self::new(alg)
        }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn transcript(&self) -> &ChainTranscript {
        &self.transcript
    }

    pub fn view(&self) -> GameView<'_> {
        GameView {
            poset: &self.poset,
            transcript: &self.transcript,
        }
    }

    pub fn chains(&self) -> &[Vec<PointId>] {
        &self.chains
    }

    pub fn chain_count(&self) -> usize {
        self.chains.len()
    }

    pub fn into_transcript(self) -> ChainTranscript {
        self.transcript
    }

    /// Plays one round: validates the Spoiler move, inserts the point,
    /// queries the Algorithm, validates its chain, and records the round.
    /// Returns the dense 1-based chain index. A referee that returned an
    /// error must not be stepped again.
    pub fn step(&mut self, arrival: Arrival) -> Result<usize, GameError> {
        let round = self.transcript.len() + 1;
        let id = arrival.id;
        let spoiler_err = |reason: String| GameError::SpoilerIllegalMove { round, id, reason };

        if self.poset.contains(id) {
            return Err(spoiler_err("point already presented".into()));
        }
        let closure = closed_down_set(&self.poset, &arrival.down_set)
            .map_err(|p| spoiler_err(format!("unknown predecessor {p}")))?;
        if closure != arrival.down_set {
            return Err(spoiler_err("down-set is not transitively closed".into()));
        }
        self.poset
            .add_point(id, &arrival.down_set)
            .expect("validated arrival");
        if self.check_up_growing {
            assert_up_growing(&self.poset, id, round)?;
        }

        let key = self
            .alg
            .assign(&self.poset, &arrival)
            .map_err(|e| GameError::AlgorithmIllegalMove {
                round,
                id,
                reason: e.to_string(),
            })?;
        let next = self.chains.len() + 1;
        let chain = *self.key_map.entry(key).or_insert(next);
        if chain == next {
            self.chains.push(Vec::new());
        }
        if let Some(&member) = self.chains[chain - 1]
            .iter()
            .find(|&&m| !self.poset.lt(m, id))
        {
            return Err(GameError::AlgorithmIllegalMove {
                round,
                id,
                reason: format!("point is not above chain member {member}"),
            });
        }
        self.chains[chain - 1].push(id);
        self.transcript.push_round(arrival, chain);
        Ok(chain)
    }
}

/// Verifies that `id` is maximal in `poset`. In a refereed game arrivals
/// carry only down-sets, so this can never fail there; it exists for direct
/// validation of externally constructed presentations.
pub fn assert_up_growing(poset: &Poset, id: PointId, round: usize) -> Result<(), GameError> {
    match poset.up_set(id).into_iter().next() {
        None => Ok(()),
        Some(above) => Err(GameError::NotUpGrowing { round, id, above }),
    }
}

fn run<A: Partitioner + ?Sized, S: PointSource + ?Sized>(
    alg: &mut A,
    spoiler: &mut S,
    max_points: usize,
    up_growing: bool,
) -> Result<ChainTranscript, GameError> {
    let mut referee = if up_growing {
        OnlineReferee::new_up_growing(alg)
    } else {
        OnlineReferee::new(alg)
    };
    for _ in 0..max_points {
        let Some(arrival) = spoiler.next_point(referee.view()) else {
            break;
        };
        referee.step(arrival)?;
    }
    Ok(referee.into_transcript())
}

/// Plays the general on-line partitioning game until the source is
/// exhausted or `max_points` rounds have been played.
pub fn referee_online<A: Partitioner + ?Sized, S: PointSource + ?Sized>(
    alg: &mut A,
    spoiler: &mut S,
    max_points: usize,
) -> Result<ChainTranscript, GameError> {
    run(alg, spoiler, max_points, false)
}

/// Plays the up-growing game: additionally verifies every arrival maximal.
pub fn referee_upgrowing<A: Partitioner + ?Sized, S: PointSource + ?Sized>(
    alg: &mut A,
    spoiler: &mut S,
    max_points: usize,
) -> Result<ChainTranscript, GameError> {
    run(alg, spoiler, max_points, true)
}
