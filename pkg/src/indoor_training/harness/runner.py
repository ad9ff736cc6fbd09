# src/indoor_training/harness/runner.py

import logging
from typing import Dict, List, MutableMapping, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from ..agents.base import make_agent
from ..agents.qtable import QTable, unpack_pairs
from ..core.builder import DEFAULT_STATE_CAP, build_mdp, enumerate_states
from ..core.mdp import Mdp, StateIndex
from ..models.experiment import ExperimentSpec
from ..models.game import GameSpec
from ..models.results import AgentFinal, CurvePoint, RunResult
from ..noise.environment import make_environment
from ..utils.exceptions import IndoorTrainingError, WorkerFailure
from .seeding import StreamRole, agent_seed, noise_stream_seed, stream_rng

logger = logging.getLogger(__name__)

# Built MDPs keyed by the canonical JSON of their GameSpec
MdpCache = MutableMapping[str, Mdp]

# agent index, seed, checkpoint returns, visited bitset
AgentOutcome = Tuple[int, int, np.ndarray, bytes]


def _board_key(game: GameSpec) -> str:
    return f"{game.kind.value}|{game.initial_ball_velocity}|{game.layout.text}"


class MdpStore:
    """
    Builds and memoizes MDPs on one shared state index per board.

    Every game sharing a board enumerates to the family index, so
    Learnability and Generalization runs of a layout agree on state ids.
    """

    def __init__(self, cap: int = DEFAULT_STATE_CAP, cache: Optional[MdpCache] = None):
        self.cap = cap
        self._mdps: MdpCache = cache if cache is not None else {}
        self._indices: Dict[str, StateIndex] = {}

    def index_for(self, game: GameSpec) -> StateIndex:
        key = _board_key(game)
        index = self._indices.get(key)
        if index is None:
            index = enumerate_states(game, family_support=True, cap=self.cap)
            self._indices[key] = index
        else:
            logger.debug(f"Reusing state index for board {game.layout.name}")
        return index

    def mdp_for(self, game: GameSpec) -> Mdp:
        key = game.to_json()
        mdp = self._mdps.get(key)
        if mdp is None:
            mdp = build_mdp(game, index=self.index_for(game), cap=self.cap)
            self._mdps[key] = mdp
        return mdp

    def run_mdps(self, spec: ExperimentSpec) -> Tuple[Mdp, Mdp]:
        """(train MDP, test MDP) of ``spec`` on their shared index."""
        train = self.mdp_for(spec.train_env.game)
        test = self.mdp_for(spec.test_env.game)
        return train, test


def train_agent(
    spec: ExperimentSpec, train_mdp: Mdp, test_mdp: Mdp, agent_index: int
) -> AgentOutcome:
    """
    Train and periodically evaluate one agent of the population.

    Every random stream is keyed by (base seed, agent index, role), so the
    outcome does not depend on scheduling.
    """
    protocol = spec.protocol
    base = protocol.base_seed
    seed = agent_seed(base, agent_index)
    train_env = make_environment(
        train_mdp,
        spec.train_env.noise,
        stream_rng(base, agent_index, StreamRole.TRAIN_ENV),
        noise_stream_seed(base, agent_index, StreamRole.TRAIN_ENV),
    )
    eval_env = make_environment(
        test_mdp,
        spec.test_env.noise,
        stream_rng(base, agent_index, StreamRole.EVAL_ENV),
        noise_stream_seed(base, agent_index, StreamRole.EVAL_ENV),
    )
    agent = make_agent(
        spec.agent,
        QTable.for_mdp(train_mdp),
        stream_rng(base, agent_index, StreamRole.AGENT_POLICY),
    )
    returns = np.empty(protocol.n_checkpoints, dtype=np.float64)
    for episode in range(protocol.n_episodes):
        agent.train_episode(train_env, protocol.max_steps, episode)
        if (episode + 1) % protocol.eval_every == 0:
            k = (episode + 1) // protocol.eval_every - 1
            returns[k] = agent.evaluate(
                eval_env,
                protocol.eval_episodes,
                protocol.max_steps,
                greedy=protocol.greedy_evaluation,
                episode_offset=k * protocol.eval_episodes,
            )
    return agent_index, seed, returns, agent.q.visited_bitset()


def _run_chunk(
    spec: ExperimentSpec, train_mdp: Mdp, test_mdp: Mdp, indices: Sequence[int]
) -> List[AgentOutcome]:
    outcomes = []
    for i in indices:
        try:
            outcomes.append(train_agent(spec, train_mdp, test_mdp, int(i)))
        except WorkerFailure:
            raise
        except Exception as e:
            raise WorkerFailure(
                f"{type(e).__name__}: {e}",
                agent_index=int(i),
                seed=agent_seed(spec.protocol.base_seed, int(i)),
            ) from e
    return outcomes


def _chunks(n_agents: int, workers: int) -> List[np.ndarray]:
    n_chunks = min(n_agents, max(1, workers) * 4)
    return [c for c in np.array_split(np.arange(n_agents), n_chunks) if c.size]


def aggregate(
    spec: ExperimentSpec,
    outcomes: Sequence[AgentOutcome],
    legal_pairs: Sequence[Tuple[int, int]],
) -> RunResult:
    """Population curve, finals and visited union from per-agent outcomes."""
    protocol = spec.protocol
    ordered = sorted(outcomes, key=lambda o: o[0])
    matrix = np.vstack([o[2] for o in ordered])
    means = matrix.mean(axis=0)
    stds = matrix.std(axis=0)
    curve = tuple(
        CurvePoint(
            episode=(k + 1) * protocol.eval_every,
            mean_return=float(means[k]),
            std_return=float(stds[k]),
            n_agents=matrix.shape[0],
        )
        for k in range(protocol.n_checkpoints)
    )
    finals = tuple(
        AgentFinal(agent_index=idx, seed=seed, final_return=float(ret[-1]))
        for idx, seed, ret, _ in ordered
    )
    union = np.zeros_like(np.frombuffer(ordered[0][3], dtype=np.uint8))
    for *_, bits in ordered:
        union |= np.frombuffer(bits, dtype=np.uint8)
    return RunResult(
        spec=spec,
        curve=curve,
        per_agent_final=finals,
        per_agent_curves=tuple(tuple(float(x) for x in row) for row in matrix),
        visited_union=unpack_pairs(union.tobytes(), legal_pairs),
        universe_size=len(legal_pairs),
        fingerprint=spec.fingerprint,
    )


def run_experiment(
    spec: ExperimentSpec,
    *,
    workers: int = 1,
    store: Optional[MdpStore] = None,
) -> RunResult:
    """
    Train the agent population of ``spec`` and aggregate its test curve.

    Agents run in chunks on a joblib worker pool; results are independent of
    ``workers``.

    Raises:
        StateSpaceOverflow: if the shared index exceeds the state cap
        WorkerFailure: if any agent run fails; the whole run is aborted
    """
    store = store or MdpStore()
    train_mdp, test_mdp = store.run_mdps(spec)
    protocol = spec.protocol
    logger.info(
        f"Running {spec.label} ({protocol.n_agents} agents x {protocol.n_episodes} episodes, "
        f"fingerprint {spec.fingerprint[:12]})"
    )
    try:
        batches = Parallel(n_jobs=workers, backend="loky")(
            delayed(_run_chunk)(spec, train_mdp, test_mdp, chunk)
            for chunk in _chunks(protocol.n_agents, workers)
        )
    except WorkerFailure as e:
        logger.error(f"Run {spec.label} aborted: {e}")
        raise
    except IndoorTrainingError:
        raise
    except Exception as e:
        logger.error(f"Run {spec.label} aborted by the worker pool: {e}")
        raise WorkerFailure(f"worker pool failed: {e}") from e
    outcomes = [o for batch in batches for o in batch]
    legal_pairs = train_mdp.legal_pairs()
    result = aggregate(spec, outcomes, legal_pairs)
    logger.info(f"Finished {spec.label}: final mean return {result.final_mean:.3f}")
    return result
