# tests/unit/test_agents.py

import numpy as np
import pytest

from indoor_training.agents.base import (
    QLearningAgent,
    SarsaAgent,
    evaluate,
    make_agent,
    run_training_episode,
)
from indoor_training.agents.qtable import QTable, pack_pairs, unpack_pairs
from indoor_training.agents.updates import (
    boltzmann_probs,
    epsilon_greedy_select,
    greedy_select,
    q_update,
    sarsa_update,
    select_action,
)
from indoor_training.core.builder import build_mdp
from indoor_training.core.environment import MdpEnvironment
from indoor_training.games.layout import builtin_game
from indoor_training.models.agent import AgentConfig
from indoor_training.models.base import Algorithm, ExplorationKind, PacManAction
from indoor_training.utils.exceptions import EnvironmentFault, IllegalAction

from .fixtures import make_corridor_mdp

CFG = AgentConfig(alpha=0.05, discount=0.9)


def make_qtable() -> QTable:
    # states 0 and 1 have two actions, state 2 is terminal
    return QTable(n_states=3, n_actions=2, legal_actions=[(0, 1), (0, 1), ()], terminal_states=[2])


def three_sigma(n: int, p: float) -> float:
    return 3 * np.sqrt(n * p * (1 - p))


class TestUpdates:

    def test_q_update(self):
        q = make_qtable()
        q.values[1] = [2.0, -1.0]
        q_update(q, 0, 0, 10.0, 1, CFG)
        assert q.values[0, 0] == pytest.approx(0.59, abs=1e-12)

    def test_q_update_into_terminal(self):
        q = make_qtable()
        q.values[0, 1] = 1.0
        q_update(q, 0, 1, -200.0, 2, CFG)
        assert q.values[0, 1] == pytest.approx(-9.05, abs=1e-12)

    def test_sarsa_update(self):
        q = make_qtable()
        q.values[1] = [-5.0, 2.0]
        sarsa_update(q, 0, 0, 10.0, 1, 0, CFG)
        assert q.values[0, 0] == pytest.approx(0.275, abs=1e-12)

    def test_sarsa_ignores_next_action_at_terminal(self):
        q = make_qtable()
        sarsa_update(q, 1, 1, 519.0, 2, None, CFG)
        assert q.values[1, 1] == pytest.approx(0.05 * 519.0)

    def test_illegal_action_rejected(self):
        q = QTable(2, 2, [(1,), ()], [1])
        with pytest.raises(IllegalAction):
            q_update(q, 0, 0, 1.0, 1, CFG)

    def test_sarsa_rejects_missing_next_action(self):
        with pytest.raises(IllegalAction):
            sarsa_update(make_qtable(), 0, 0, 1.0, 1, None, CFG)


class TestActionSelection:

    def test_boltzmann_probabilities(self):
        q = make_qtable()
        q.values[0] = [1.0, 0.0]
        probs = boltzmann_probs(q, 0, 1.5)
        assert probs[0] == pytest.approx(0.6607, abs=1e-4)
        assert probs.sum() == pytest.approx(1.0)

    def test_boltzmann_does_not_overflow(self):
        q = make_qtable()
        q.values[0] = [1000.0, 0.0]
        probs = boltzmann_probs(q, 0, 1.5)
        assert np.all(np.isfinite(probs))
        assert probs == pytest.approx([1.0, 0.0])

    def test_epsilon_one_is_uniform(self):
        q = make_qtable()
        q.values[0] = [5.0, 0.0]
        rng = np.random.default_rng(0)
        n = 10_000
        picks = sum(epsilon_greedy_select(q, 0, 1.0, rng) for _ in range(n))
        assert abs(picks - n / 2) <= three_sigma(n, 0.5)

    def test_epsilon_zero_is_greedy(self):
        q = make_qtable()
        q.values[0] = [0.0, 5.0]
        rng = np.random.default_rng(0)
        assert {epsilon_greedy_select(q, 0, 0.0, rng) for _ in range(200)} == {1}

    def test_ties_broken_uniformly(self):
        q = make_qtable()
        rng = np.random.default_rng(1)
        n = 10_000
        picks = sum(greedy_select(q, 0, rng) for _ in range(n))
        assert abs(picks - n / 2) <= three_sigma(n, 0.5)

    def test_only_legal_actions_are_chosen(self):
        q = QTable(1, 4, [(1, 3)])
        q.values[0] = [9.0, 0.0, 9.0, 0.0]
        rng = np.random.default_rng(2)
        cfg = AgentConfig(epsilon=0.5)
        assert {select_action(q, 0, cfg, rng) for _ in range(500)} <= {1, 3}

    def test_boltzmann_selection_configured(self):
        q = make_qtable()
        q.values[0] = [50.0, 0.0]
        cfg = AgentConfig(exploration=ExplorationKind.BOLTZMANN, temperature=1.0)
        rng = np.random.default_rng(3)
        assert {select_action(q, 0, cfg, rng) for _ in range(100)} == {0}


class TestEpisodes:

    def test_greedy_episode_on_corridor(self):
        mdp = make_corridor_mdp()
        q = QTable.for_mdp(mdp)
        q.values[1, PacManAction.RIGHT] = 1.0
        cfg = AgentConfig(epsilon=0.0)
        env = MdpEnvironment(mdp, np.random.default_rng(0))
        _, ret = run_training_episode(env, q, cfg, rng=np.random.default_rng(0))
        assert ret == 518.0
        assert q.visited_pairs() == {(0, 1), (1, 1)}

    def test_zero_step_cap(self):
        mdp = make_corridor_mdp()
        q = QTable.for_mdp(mdp)
        env = MdpEnvironment(mdp, np.random.default_rng(0))
        _, ret = run_training_episode(env, q, CFG, max_steps=0, rng=np.random.default_rng(0))
        assert ret == 0.0
        assert not q.values.any()
        assert not q.visited.any()

    @pytest.mark.parametrize("algorithm", list(Algorithm))
    def test_learning_reaches_the_pellet(self, algorithm):
        mdp = make_corridor_mdp()
        cfg = AgentConfig(algorithm=algorithm, epsilon=0.1, alpha=0.5)
        agent = make_agent(cfg, QTable.for_mdp(mdp), np.random.default_rng(4))
        env = MdpEnvironment(mdp, np.random.default_rng(5))
        for episode in range(50):
            agent.train_episode(env, 100, episode)
        assert agent.q.visited_pairs() <= set(mdp.legal_pairs())
        assert agent.evaluate(env, 5) == 518.0

    def test_agent_classes(self):
        q = QTable.for_mdp(make_corridor_mdp())
        assert isinstance(make_agent(AgentConfig(algorithm=Algorithm.Q_LEARNING), q), QLearningAgent)
        assert isinstance(make_agent(AgentConfig(algorithm=Algorithm.SARSA), q), SarsaAgent)

    def test_evaluate_does_not_learn(self):
        mdp = make_corridor_mdp()
        q = QTable.for_mdp(mdp)
        q.values[1, PacManAction.RIGHT] = 1.0
        env = MdpEnvironment(mdp, np.random.default_rng(0))
        assert evaluate(env, q, 3, np.random.default_rng(0)) == 518.0
        assert q.values[1, PacManAction.RIGHT] == 1.0
        assert not q.visited.any()

    def test_successor_outside_index(self, mocker):
        mdp = make_corridor_mdp()
        env = MdpEnvironment(mdp, np.random.default_rng(0))
        mocker.patch.object(env, "step", return_value=(42, 0.0, False))
        agent = make_agent(CFG, QTable.for_mdp(mdp), np.random.default_rng(0))
        with pytest.raises(EnvironmentFault, match="outside the 3-state index"):
            agent.train_episode(env)


class TestVisitedBitset:

    def test_pack_and_unpack(self):
        legal = [(0, 1), (1, 0), (1, 1)]
        bits = pack_pairs({(1, 0)}, legal)
        assert bits == bytes([0b01000000])
        assert unpack_pairs(bits, legal) == {(1, 0)}

    def test_qtable_bitset_matches_pack(self):
        mdp = make_corridor_mdp()
        q = QTable.for_mdp(mdp)
        q.record_visit(1, 1)
        assert q.visited_bitset() == pack_pairs({(1, 1)}, mdp.legal_pairs())


def largest_reward(mdp) -> float:
    return max(
        abs(mdp.reward(s, int(n)))
        for s, a in mdp.transitions.keys()
        for n in mdp.transitions.row(s, a)[0]
    )


class TestAgentInvariants:

    def test_q_update_matches_sarsa_with_greedy_next_action(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            q = make_qtable()
            q.values[:2] = rng.normal(0.0, 10.0, size=(2, 2))
            greedy = int(np.argmax(q.values[1]))
            off, on = q.copy(), q.copy()
            q_update(off, 0, 1, 3.0, 1, CFG)
            sarsa_update(on, 0, 1, 3.0, 1, greedy, CFG)
            assert off.values[0, 1] == pytest.approx(on.values[0, 1], abs=1e-12)

    def test_boltzmann_limits(self):
        q = QTable(1, 4, [(0, 1, 2, 3)])
        q.values[0] = [0.5, 2.0, -1.0, 1.0]
        assert boltzmann_probs(q, 0, 1e-6) == pytest.approx([0.0, 1.0, 0.0, 0.0])
        assert boltzmann_probs(q, 0, 1e6) == pytest.approx([0.25] * 4, abs=1e-5)

    @pytest.mark.parametrize("algorithm", list(Algorithm))
    def test_values_stay_within_the_return_bound(self, algorithm):
        mdp = build_mdp(builtin_game("v2"))
        cfg = AgentConfig(algorithm=algorithm, epsilon=0.2, alpha=0.5, discount=0.9)
        agent = make_agent(cfg, QTable.for_mdp(mdp), np.random.default_rng(9))
        env = MdpEnvironment(mdp, np.random.default_rng(10))
        for episode in range(200):
            agent.train_episode(env, 200, episode)
        bound = largest_reward(mdp) / (1.0 - cfg.discount)
        assert np.abs(agent.q.values).max() <= bound
        assert agent.q.visited.any()

    def test_same_seed_same_table(self):
        mdp = build_mdp(builtin_game("v2"))
        tables = []
        for _ in range(2):
            agent = make_agent(CFG, QTable.for_mdp(mdp), np.random.default_rng(11))
            env = MdpEnvironment(mdp, np.random.default_rng(12))
            for episode in range(30):
                agent.train_episode(env, 100, episode)
            tables.append(agent.q)
        assert np.array_equal(tables[0].values, tables[1].values)
        assert np.array_equal(tables[0].visited, tables[1].visited)
