# src/indoor_training/noise/delta.py

import logging
from typing import Dict, List, Optional

import numpy as np

from ..core.mdp import Mdp, Row, RowKey, TransitionTable
from ..models.noise import NoiseSpec
from ..utils.exceptions import ShapeMismatch
from ..utils.seeding import derive_seed, row_rng

logger = logging.getLogger(__name__)


def perturb_distribution(probs: np.ndarray, delta: np.ndarray) -> Optional[np.ndarray]:
    """
    Apply the noise rule to one dense row.

    raw_j = |S| * p_j + delta_j, clamped at 0, then re-summed to 1. Returns
    None when every raw value clamps to 0.
    """
    n = probs.shape[0]
    raw = n * probs + delta
    np.maximum(raw, 0.0, out=raw)
    total = raw.sum()
    if total <= 0.0:
        return None
    return raw / total


class DeltaEnvironment:
    """
    A delta-environment: an MDP whose transition rows carry Gaussian noise.

    Rows are perturbed on first access and cached, so large tables are never
    materialized unless ``perturbed`` is requested. Every row draws its noise
    from a generator keyed by (realized_seed, state, action), which makes
    lazy and eager construction identical.

    Attributes:
        base: Source MDP
        noise: Noise parameters
        realized_seed: Seed actually used for this table instance
        sparse: True when the index exceeds ``noise.dense_support_cap``
        degenerate_rows: Rows that fell back to the base distribution
    """

    def __init__(self, base: Mdp, noise: NoiseSpec, realized_seed: Optional[int] = None):
        self.base = base
        self.noise = noise
        self.realized_seed = noise.seed if realized_seed is None else int(realized_seed)
        self.sparse = base.n_states > noise.dense_support_cap
        self.degenerate_rows: List[RowKey] = []
        self._cache: Dict[RowKey, Row] = {}

    def row(self, state: int, action: int) -> Row:
        key = (state, action)
        cached = self._cache.get(key)
        if cached is None:
            cached = self._perturb(state, action)
            self._cache[key] = cached
        return cached

    @property
    def perturbed(self) -> TransitionTable:
        """The fully materialized perturbed table."""
        rows = {key: self.row(*key) for key in self.base.transitions.keys()}
        return TransitionTable(self.base.n_states, rows)

    def as_mdp(self) -> Mdp:
        return self.base.with_transitions(self.perturbed)

    def _perturb(self, state: int, action: int) -> Row:
        base_row = self.base.transitions.row(state, action)
        if self.noise.is_noiseless:
            return base_row
        rng = row_rng(self.realized_seed, state, action)
        if self.sparse:
            row = self._perturb_sparse(base_row, rng)
        else:
            n = self.base.n_states
            dense = self.base.transitions.dense_row(state, action)
            probs = perturb_distribution(dense, rng.normal(0.0, self.noise.std, size=n))
            row = None
            if probs is not None:
                ids = np.flatnonzero(probs > 0.0)
                row = (ids, probs[ids])
        if row is None:
            logger.warning(
                f"Noise clamped every entry of row ({state}, {action}) to 0; "
                f"using the unperturbed row"
            )
            self.degenerate_rows.append((state, action))
            return base_row
        for array in row:
            array.setflags(write=False)
        return row

    def _perturb_sparse(self, base_row: Row, rng: np.random.Generator) -> Optional[Row]:
        # noise on the legal successors plus k sampled non-legal candidates,
        # each standing in for (n - n_legal) / k states
        ids, probs = base_row
        n = self.base.n_states
        legal = np.unique(ids)
        n_other = n - legal.shape[0]
        k = min(self.noise.sparse_sample_k, n_other)
        candidates = np.empty(0, dtype=np.int64)
        if k > 0:
            drawn = rng.choice(n, size=min(n, k + legal.shape[0]), replace=False)
            candidates = drawn[~np.isin(drawn, legal)][:k].astype(np.int64)
        legal_p = np.zeros(legal.shape[0])
        np.add.at(legal_p, np.searchsorted(legal, ids), probs)
        legal_raw = np.maximum(n * legal_p + rng.normal(0.0, self.noise.std, size=legal.shape[0]), 0.0)
        scale = n_other / candidates.shape[0] if candidates.shape[0] else 0.0
        other_raw = np.maximum(rng.normal(0.0, self.noise.std, size=candidates.shape[0]), 0.0) * scale
        all_ids = np.concatenate([legal, candidates])
        raw = np.concatenate([legal_raw, other_raw])
        total = raw.sum()
        if total <= 0.0:
            return None
        order = np.argsort(all_ids, kind="stable")
        all_ids, raw = all_ids[order], raw[order] / total
        keep = raw > 0.0
        return all_ids[keep], raw[keep]


def inject_noise(mdp: Mdp, noise: NoiseSpec) -> DeltaEnvironment:
    """
    Build the delta-environment of ``mdp`` under ``noise``.

    With std 0 every row is the base row object itself.
    """
    env = DeltaEnvironment(mdp, noise)
    mode = "sparse" if env.sparse else "dense"
    logger.debug(
        f"Noise std={noise.std:g} seed={noise.seed} on {mdp.game.label} ({mode} support)"
    )
    return env


def resample(env: DeltaEnvironment, episode_seed: int) -> DeltaEnvironment:
    """
    Fresh noise draws for a new episode, keyed by (noise seed, episode seed).
    """
    if not env.noise.resample_per_episode:
        raise ValueError("resample needs a NoiseSpec with resample_per_episode enabled")
    return DeltaEnvironment(
        env.base, env.noise, realized_seed=derive_seed(env.noise.seed, episode_seed)
    )


def _check_shapes(a: TransitionTable, b: TransitionTable) -> None:
    if a.n_states != b.n_states:
        raise ShapeMismatch(f"Tables index {a.n_states} and {b.n_states} states")
    if set(a.keys()) != set(b.keys()):
        raise ShapeMismatch("Tables do not share the same (state, action) rows")


def _row_difference(a: Row, b: Row) -> np.ndarray:
    ids = np.concatenate([a[0], b[0]])
    vals = np.concatenate([a[1], -b[1]])
    _, inverse = np.unique(ids, return_inverse=True)
    diff = np.zeros(inverse.max() + 1 if inverse.size else 0)
    np.add.at(diff, inverse, vals)
    return diff


def table_distance(a: TransitionTable, b: TransitionTable) -> float:
    """
    Mean total-variation distance between matching rows, in [0, 1].

    Raises:
        ShapeMismatch: if the tables differ in state count or row keys
    """
    _check_shapes(a, b)
    if not len(a):
        return 0.0
    total = 0.0
    for key, row_a in a.items():
        total += 0.5 * float(np.abs(_row_difference(row_a, b.row(*key))).sum())
    return total / len(a)


def non_standard_mass(base: TransitionTable, perturbed: TransitionTable) -> float:
    """
    Mean probability mass a perturbed table puts on successors the base
    table gives probability 0.
    """
    _check_shapes(base, perturbed)
    if not len(base):
        return 0.0
    total = 0.0
    for key, (ids, probs) in perturbed.items():
        base_ids, base_probs = base.row(*key)
        support = base_ids[base_probs > 0.0]
        total += float(probs[~np.isin(ids, support)].sum())
    return total / len(base)


def legal_shape_distance(base: TransitionTable, perturbed: TransitionTable) -> float:
    """
    Mean total-variation distance between each base row and the perturbed row
    restricted to the base support and renormalized there.

    Clamping biases the total legal mass towards 1 / (1 + std / sqrt(2 pi))
    for large tables, but the shape over the legal successors converges to
    the base distribution as the state count grows. A row with no mass left
    on its base support counts as distance 1.
    """
    _check_shapes(base, perturbed)
    if not len(base):
        return 0.0
    total = 0.0
    for key, (base_ids, base_probs) in base.items():
        ids, probs = perturbed.row(*key)
        mass = dict(zip(ids.tolist(), probs.tolist()))
        restricted = np.array([mass.get(j, 0.0) for j in base_ids.tolist()])
        legal_mass = restricted.sum()
        if legal_mass <= 0.0:
            total += 1.0
            continue
        total += 0.5 * float(np.abs(restricted / legal_mass - base_probs).sum())
    return total / len(base)
