# src/indoor_training/harness/suite.py

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from ..analysis.exploration import color_table_csv, exploration_grid, grid_to_csv
from ..analysis.metrics import r_max_for
from ..models.experiment import ExperimentSpec
from ..models.results import FailedRun, PairResult, RunResult, SuiteResult
from ..utils.exceptions import IndoorTrainingError, LayoutInvalid
from .manifest import TargetPair
from .persistence import GRID_CSV, pair_dir_name, write_manifest, write_run
from .runner import MdpStore, run_experiment

logger = logging.getLogger(__name__)


class SuiteRunner:
    """
    Runs (Learnability, Generalization) pairs and persists each run as it
    completes. A failing run is recorded and the suite moves on.
    """

    def __init__(
        self,
        out_dir: Optional[Union[str, Path]] = None,
        workers: int = 1,
        store: Optional[MdpStore] = None,
    ):
        self.out_dir = Path(out_dir) if out_dir is not None else None
        self.workers = workers
        self.store = store or MdpStore()
        self.failures: List[FailedRun] = []
        self._entries: List[Dict[str, Any]] = []

    def _run(self, spec: ExperimentSpec, run_dir: Optional[Path]) -> Optional[RunResult]:
        try:
            result = run_experiment(spec, workers=self.workers, store=self.store)
        except IndoorTrainingError as e:
            logger.error(f"Run {spec.label} failed: {e}")
            self.failures.append(
                FailedRun(label=spec.label, fingerprint=spec.fingerprint, error=str(e))
            )
            return None
        if run_dir is not None:
            write_run(result, run_dir, self.store.mdp_for(spec.train_env.game).legal_pairs())
        return result

    def _r_max(self, spec: ExperimentSpec) -> Optional[float]:
        try:
            return r_max_for(spec)
        except LayoutInvalid as e:
            logger.warning(f"No analytic r_max for {spec.label}: {e}")
            return None

    def _reject_pair(self, position: int, pair: TargetPair) -> PairResult:
        l_spec, g_spec = pair
        target = l_spec.test_env.label
        error = (
            f"Pair {position} does not share its test environment: "
            f"{target} vs {g_spec.test_env.label}"
        )
        logger.error(error)
        entry: Dict[str, Any] = {"target": target, "r_max": None}
        for role, spec in (("learnability", l_spec), ("generalization", g_spec)):
            self.failures.append(
                FailedRun(label=spec.label, fingerprint=spec.fingerprint, error=error)
            )
            entry[role] = {"status": "failed", "fingerprint": spec.fingerprint, "dir": None}
        self._entries.append(entry)
        if self.out_dir is not None:
            write_manifest(self.out_dir, self._entries, self.failures)
        return PairResult(target=target)

    def run_pair(self, position: int, pair: TargetPair) -> PairResult:
        l_spec, g_spec = pair
        target = l_spec.test_env.label
        if l_spec.test_env != g_spec.test_env:
            return self._reject_pair(position, pair)
        pair_dir = self.out_dir / pair_dir_name(position, target) if self.out_dir else None
        entry: Dict[str, Any] = {"target": target}
        results = {}
        for role, spec in (("learnability", l_spec), ("generalization", g_spec)):
            run_dir = pair_dir / role if pair_dir is not None else None
            result = self._run(spec, run_dir)
            results[role] = result
            entry[role] = {
                "status": "ok" if result is not None else "failed",
                "fingerprint": spec.fingerprint,
                "dir": str(run_dir.relative_to(self.out_dir)) if run_dir is not None else None,
            }
        r_max = self._r_max(g_spec)
        entry["r_max"] = r_max
        pair_result = PairResult(
            target=target,
            learnability=results["learnability"],
            generalization=results["generalization"],
            r_max=r_max,
        )
        if pair_dir is not None and pair_result.complete:
            grid = exploration_grid(
                pair_result.learnability.visited_union,
                pair_result.generalization.visited_union,
                self.store.mdp_for(l_spec.test_env.game),
            )
            (pair_dir / GRID_CSV).write_text(grid_to_csv(grid), encoding="utf-8")
            (pair_dir / "grid_colors.csv").write_text(color_table_csv(), encoding="utf-8")
        self._entries.append(entry)
        if self.out_dir is not None:
            write_manifest(self.out_dir, self._entries, self.failures)
            logger.info(f"Persisted pair {position} ({target})")
        return pair_result

    def run(self, pairs: Sequence[TargetPair]) -> SuiteResult:
        if self.out_dir is not None:
            self.out_dir.mkdir(parents=True, exist_ok=True)
            write_manifest(self.out_dir, self._entries, self.failures)
        results = [self.run_pair(i, pair) for i, pair in enumerate(pairs)]
        if self.failures:
            logger.warning(f"Suite finished with {len(self.failures)} failed run(s)")
        return SuiteResult(pairs=tuple(results), failures=tuple(self.failures))


def run_suite(
    pairs: Sequence[TargetPair],
    *,
    out_dir: Optional[Union[str, Path]] = None,
    workers: int = 1,
    store: Optional[MdpStore] = None,
) -> SuiteResult:
    """
    Execute every (L, G) pair of a manifest.

    Successful runs are persisted under ``out_dir`` even when others fail;
    failures are listed on the returned SuiteResult.
    """
    return SuiteRunner(out_dir, workers, store).run(pairs)
