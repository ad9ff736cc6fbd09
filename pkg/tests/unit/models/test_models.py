# tests/unit/models/test_models.py

"""
Unit tests for the lab's Pydantic models.

Covers reward constants, element policies, layouts and games, noise
parameters, the protocol schedule and experiment specs: valid payloads,
rejected values, immutability and JSON round trips.
"""

import pytest
from pydantic import ValidationError

from indoor_training.models.agent import AgentConfig
from indoor_training.models.base import ElementPolicy, GameKind, PolicyKind, RewardSpec
from indoor_training.models.experiment import ExperimentRole, ExperimentSpec, ProtocolConfig
from indoor_training.models.game import GameSpec, LayoutSpec
from indoor_training.models.noise import NoiseSpec
from indoor_training.models.results import (
    ExplorationStats,
    FailedRun,
    GapStats,
    PairResult,
    SuiteResult,
    ValidationReport,
    Violation,
    ViolationKind,
)
from indoor_training.utils.exceptions import IncompatibleEnvironments, LayoutInvalid

from .fixtures import (
    make_game_payload,
    make_protocol_payload,
    make_reward_payload,
    make_spec_payload,
    remove_field,
    set_field,
)


# =============================================================================
# RewardSpec
# =============================================================================

class TestRewardSpec:

    def test_defaults_are_main_text(self):
        assert RewardSpec() == RewardSpec.main_text()

    @pytest.mark.parametrize("name,death", [
        ("main_text", -200.0),
        ("supplement", -500.0),
        ("pong", -500.0),
    ])
    def test_presets(self, name, death):
        assert RewardSpec.preset(name).death_penalty == death

    def test_unknown_preset(self):
        with pytest.raises(ValueError, match="Unknown reward preset"):
            RewardSpec.preset("bonus")

    @pytest.mark.parametrize("field,value", [
        ("step_penalty", 0.0),
        ("death_penalty", 5.0),
        ("win_reward", 0.0),
        ("food_reward", -1.0),
    ])
    def test_sign_constraints(self, field, value):
        with pytest.raises(ValidationError):
            RewardSpec(**make_reward_payload(**{field: value}))

    def test_extra_fields_forbidden(self):
        with pytest.raises(ValidationError):
            RewardSpec(**make_reward_payload(bonus=3.0))

    def test_frozen(self):
        with pytest.raises(ValidationError):
            RewardSpec().win_reward = 1.0


# =============================================================================
# ElementPolicy
# =============================================================================

class TestElementPolicy:

    @pytest.mark.parametrize("policy,label", [
        (ElementPolicy(kind=PolicyKind.RANDOM_GHOST), "RandomGhost"),
        (ElementPolicy(kind=PolicyKind.DIRECTIONAL_GHOST, p=0.6), "DirectionalGhost(p=0.6)"),
        (ElementPolicy(kind=PolicyKind.TELEPORTING_GHOST, p=0.5, near_walls=True),
         "TeleportingGhostNearWalls(p=0.5)"),
    ])
    def test_labels(self, policy, label):
        assert policy.label == label

    @pytest.mark.parametrize("p", [-0.1, 1.1])
    def test_probability_range(self, p):
        with pytest.raises(ValidationError):
            ElementPolicy(kind=PolicyKind.DIRECTIONAL_GHOST, p=p)

    def test_kind_families(self):
        assert PolicyKind.TELEPORTING_GHOST.is_ghost
        assert not PolicyKind.FOLLOWING_PADDLE.is_ghost


# =============================================================================
# GameSpec
# =============================================================================

class TestGameSpec:

    def test_valid_game(self):
        game = GameSpec(**make_game_payload())
        assert game.kind is GameKind.PACMAN
        assert game.n_actions == 4
        assert game.label == "pacman-corridor"

    def test_json_round_trip(self):
        game = GameSpec(**make_game_payload())
        assert GameSpec.from_json(game.to_json()) == game

    def test_missing_layout(self):
        with pytest.raises(ValidationError):
            GameSpec(**remove_field(make_game_payload(), "layout"))

    def test_invalid_layout_row(self):
        with pytest.raises(LayoutInvalid, match="not rectangular"):
            GameSpec(**set_field(make_game_payload(), "layout.rows", ["%%%%%", "%P .%", "%%%%"]))

    @pytest.mark.parametrize("discount", [0.0, 1.5])
    def test_discount_range(self, discount):
        with pytest.raises(ValidationError):
            GameSpec(**make_game_payload(discount=discount))

    def test_ball_velocity_default(self):
        pong = GameSpec(
            kind="pong",
            layout=LayoutSpec(name="p", rows=("%%%%%", "% G %", "% o %", "% P %", "%%%%%")),
            element_policies=[{"kind": "RandomPaddle"}],
        )
        assert pong.initial_ball_velocity == (1, 1)
        assert pong.n_actions == 3

    def test_bad_ball_velocity(self):
        with pytest.raises(LayoutInvalid, match="Ball velocity"):
            GameSpec(
                kind="pong",
                layout=LayoutSpec(name="p", rows=("%%%%%", "% G %", "% o %", "% P %", "%%%%%")),
                element_policies=[{"kind": "RandomPaddle"}],
                ball_velocity=(0, 1),
            )

    def test_ghost_policy_on_pong_rejected(self):
        with pytest.raises(LayoutInvalid, match="paddle policies only"):
            GameSpec(
                kind="pong",
                layout=LayoutSpec(name="p", rows=("%%%%%", "% G %", "% o %", "% P %", "%%%%%")),
                element_policies=[{"kind": "RandomGhost"}],
            )

    def test_same_board_ignores_policies(self):
        rows = ("%%%%%%", "%P .G%", "%%%%%%")
        a = GameSpec(kind="pacman", layout=LayoutSpec(name="a", rows=rows),
                     element_policies=[{"kind": "RandomGhost"}])
        b = a.with_policy(ElementPolicy(kind=PolicyKind.DIRECTIONAL_GHOST, p=0.3))
        assert a.same_board(b)
        assert a != b


# =============================================================================
# NoiseSpec and ProtocolConfig
# =============================================================================

class TestNoiseSpec:

    def test_presets(self):
        assert NoiseSpec.preset("high").std == 0.5
        assert NoiseSpec.preset("max", seed=3).seed == 3

    def test_negative_std(self):
        with pytest.raises(ValidationError):
            NoiseSpec(std=-0.1)

    def test_with_std(self):
        noise = NoiseSpec(std=0.1, seed=9)
        assert noise.with_std(0.0) == NoiseSpec(std=0.0, seed=9)
        assert noise.with_std(0.0).is_noiseless


class TestProtocolConfig:

    def test_checkpoints(self):
        assert ProtocolConfig(**make_protocol_payload()).n_checkpoints == 2

    def test_eval_every_must_divide(self):
        with pytest.raises(ValidationError, match="must divide"):
            ProtocolConfig(**make_protocol_payload(eval_every=7))

    @pytest.mark.parametrize("field", ["n_agents", "n_episodes", "eval_every", "eval_episodes"])
    def test_positive_counts(self, field):
        with pytest.raises(ValidationError):
            ProtocolConfig(**make_protocol_payload(**{field: 0}))

    def test_scales(self):
        assert (ProtocolConfig.full().n_agents, ProtocolConfig.full().n_episodes) == (500, 1000)
        assert (ProtocolConfig.desk().n_agents, ProtocolConfig.desk().n_episodes) == (50, 300)


class TestAgentConfig:

    def test_defaults(self):
        cfg = AgentConfig()
        assert (cfg.alpha, cfg.discount, cfg.temperature, cfg.epsilon) == (0.05, 0.9, 1.5, 0.1)

    @pytest.mark.parametrize("field,value", [("alpha", 0.0), ("epsilon", 1.2), ("temperature", 0.0)])
    def test_ranges(self, field, value):
        with pytest.raises(ValidationError):
            AgentConfig(**{field: value})


# =============================================================================
# ExperimentSpec and results
# =============================================================================

class TestExperimentSpec:

    def test_valid_spec(self):
        spec = ExperimentSpec(**make_spec_payload())
        assert spec.role is ExperimentRole.LEARNABILITY
        assert len(spec.fingerprint) == 64

    def test_fingerprint_tracks_content(self):
        a = ExperimentSpec(**make_spec_payload())
        b = ExperimentSpec(**set_field(make_spec_payload(), "protocol.base_seed", 1))
        assert a.fingerprint != b.fingerprint

    def test_boards_must_match(self):
        payload = set_field(
            make_spec_payload(), "test_env.game.layout.rows", ["%%%%%%", "%P  .%", "%%%%%%"]
        )
        with pytest.raises(IncompatibleEnvironments):
            ExperimentSpec(**payload)

    def test_label(self):
        spec = ExperimentSpec(**make_spec_payload())
        assert spec.label == "learnability:pacman-corridor@std=0->pacman-corridor@std=0"


class TestResultModels:

    def test_gap(self):
        assert GapStats.from_returns(10.0, 25.0).r_lg == 15.0

    def test_exploration_percent_range(self):
        with pytest.raises(ValidationError):
            ExplorationStats(p_lg=120.0, p_l=0.0, p_g=0.0, d_lg=0.0, union_size=1, universe=1)

    def test_empty_report_is_valid(self):
        report = ValidationReport()
        assert report.ok
        assert report.summary() == "MDP valid: no violations"

    def test_report_summary_lists_violations(self):
        report = ValidationReport(violations=(
            Violation(kind=ViolationKind.ROW_SUM, state=2, action=1, detail="sums to 0.98"),
            Violation(kind=ViolationKind.UNREACHABLE, state=5),
        ))
        assert len(report) == 2
        assert len(report.of_kind(ViolationKind.ROW_SUM)) == 1
        lines = report.summary().splitlines()
        assert lines[0] == "MDP invalid: 2 violation(s)"
        assert "row_sum state=2 action=1: sums to 0.98" in lines[1]

    def test_suite_with_failures_is_not_ok(self):
        suite = SuiteResult(
            pairs=(PairResult(target="pacman-v2@std=0.1"),),
            failures=(FailedRun(label="l", fingerprint="f", error="boom"),),
        )
        assert not suite.ok
        assert suite.completed_pairs == ()
