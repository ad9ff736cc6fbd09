# src/indoor_training/harness/persistence.py

import io
import json
import logging
import re
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from ..agents.qtable import pack_pairs
from ..models.results import FailedRun, PairResult, RunResult, SuiteResult
from ..utils.exceptions import ValidationError

logger = logging.getLogger(__name__)

MANIFEST_FORMAT = "indoor-training-suite"
MANIFEST_VERSION = 1

SPEC_ECHO = "spec.echo"
CURVE_CSV = "curve.csv"
FINALS_CSV = "per_agent_final.csv"
VISITED_BIN = "visited.bin"
PLOT_DATA = "plot_data.dat"
RESULT_JSON = "result.json"
MANIFEST_JSON = "manifest.json"
GRID_CSV = "exploration_grid.csv"


def curve_csv(result: RunResult) -> str:
    buf = io.StringIO()
    buf.write("episode,mean_return,std_return,n_agents\n")
    for p in result.curve:
        buf.write(f"{p.episode},{p.mean_return!r},{p.std_return!r},{p.n_agents}\n")
    return buf.getvalue()


def finals_csv(result: RunResult) -> str:
    buf = io.StringIO()
    buf.write("agent_index,seed,final_return\n")
    for a in result.per_agent_final:
        buf.write(f"{a.agent_index},{a.seed},{a.final_return!r}\n")
    return buf.getvalue()


def plot_data(result: RunResult) -> str:
    """Whitespace-separated ``episode mean std`` rows for gnuplot."""
    lines = [f"# {result.spec.label}", "# episode mean_return std_return"]
    lines.extend(f"{p.episode} {p.mean_return!r} {p.std_return!r}" for p in result.curve)
    return "\n".join(lines) + "\n"


def spec_echo(result: RunResult) -> str:
    return json.dumps(json.loads(result.spec.to_json()), indent=2, sort_keys=True) + "\n"


def write_run(
    result: RunResult,
    out_dir: Union[str, Path],
    legal_pairs: Sequence[Tuple[int, int]],
) -> Path:
    """
    Persist one run: spec echo, curve, per-agent finals, visited bitset,
    plot data and the full result document.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / SPEC_ECHO).write_text(spec_echo(result), encoding="utf-8")
    (out_dir / CURVE_CSV).write_text(curve_csv(result), encoding="utf-8")
    (out_dir / FINALS_CSV).write_text(finals_csv(result), encoding="utf-8")
    (out_dir / PLOT_DATA).write_text(plot_data(result), encoding="utf-8")
    (out_dir / VISITED_BIN).write_bytes(pack_pairs(result.visited_union, legal_pairs))
    (out_dir / RESULT_JSON).write_text(result.to_json(), encoding="utf-8")
    logger.debug(f"Persisted {result.spec.label} to {out_dir}")
    return out_dir


def read_run(run_dir: Union[str, Path]) -> RunResult:
    path = Path(run_dir) / RESULT_JSON
    if not path.is_file():
        raise ValidationError(f"No run result found at {path}")
    try:
        return RunResult.from_json(path.read_text(encoding="utf-8"))
    except ValueError as e:
        raise ValidationError(f"Corrupt run result {path}: {e}") from e


def pair_dir_name(position: int, target: str) -> str:
    slug = re.sub(r"[^A-Za-z0-9.=-]+", "_", target).strip("_")
    return f"{position:03d}_{slug}"


def write_manifest(out_dir: Union[str, Path], entries: List[Dict[str, Any]],
                   failures: Sequence[FailedRun]) -> Path:
    """Index of a suite directory: one entry per pair plus the failed runs."""
    doc = {
        "format": MANIFEST_FORMAT,
        "version": MANIFEST_VERSION,
        "pairs": entries,
        "failures": [json.loads(f.to_json()) for f in failures],
    }
    path = Path(out_dir) / MANIFEST_JSON
    path.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    return path


def read_suite(results_dir: Union[str, Path]) -> SuiteResult:
    """
    Rebuild a SuiteResult from a suite directory written by ``run_suite``.

    Raises:
        ValidationError: if the manifest is missing or malformed
    """
    results_dir = Path(results_dir)
    path = results_dir / MANIFEST_JSON
    if not path.is_file():
        raise ValidationError(f"No suite manifest found at {path}")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ValidationError(f"Invalid suite manifest {path}: {e}") from e
    if doc.get("format") != MANIFEST_FORMAT:
        raise ValidationError(f"{path} is not a suite manifest")
    pairs = []
    for entry in doc.get("pairs", []):
        pairs.append(
            PairResult(
                target=entry["target"],
                learnability=_maybe_run(results_dir, entry.get("learnability")),
                generalization=_maybe_run(results_dir, entry.get("generalization")),
                r_max=entry.get("r_max"),
            )
        )
    failures = tuple(FailedRun(**f) for f in doc.get("failures", []))
    return SuiteResult(pairs=tuple(pairs), failures=failures)


def _maybe_run(results_dir: Path, entry: Optional[Dict[str, Any]]) -> Optional[RunResult]:
    if not entry or entry.get("status") != "ok":
        return None
    return read_run(results_dir / entry["dir"])
