# src/indoor_training/analysis/report.py

import io
import logging
import math
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import Field

from ..models.base import LabModel
from ..models.results import GapStats, PairResult, SuiteResult
from ..utils.exceptions import DegenerateRanks, DegenerateSamples, EmptyUnion, LengthMismatch
from .exploration import exploration_stats
from .metrics import auc, r_max_for, regret_ratio
from .stats import spearman, welch_t_test

logger = logging.getLogger(__name__)

REPORT_COLUMNS = (
    'target', 'r_l', 'r_g', 'r_lg', 'd_lg', 'p_lg', 'p_l', 'p_g',
    'auc_l', 'auc_g', 'r_max', 'regret_ratio', 't', 'p',
)


class PairRecord(LabModel):
    """One row of the suite report."""
    target: str
    r_l: float
    r_g: float
    r_lg: float
    d_lg: float
    p_lg: float
    p_l: float
    p_g: float
    auc_l: float
    auc_g: float
    r_max: float
    regret_ratio: float
    t: float = Field(math.nan, description='Welch t of G finals against L finals.')
    p: float = Field(math.nan, description='Two-sided p of the Welch test.')


class GroupComparison(LabModel):
    """
    D_LG of pairs where Generalization won against pairs where Learnability won.

    Attributes:
        mean_d_lg_g_better: Mean D_LG over pairs with R_LG > 0
        mean_d_lg_l_better: Mean D_LG over pairs with R_LG < 0
        n_g_better: Number of pairs with R_LG > 0
        n_l_better: Number of pairs with R_LG < 0
        t: Welch t between the two groups (NaN when a group is too small)
        p: Two-sided p of that test
    """
    mean_d_lg_g_better: float
    mean_d_lg_l_better: float
    n_g_better: int
    n_l_better: int
    t: float = math.nan
    p: float = math.nan


class SuiteReport(LabModel):
    records: Tuple[PairRecord, ...] = ()
    grouping: Optional[GroupComparison] = None
    rho: Optional[float] = None
    rho_p: Optional[float] = None
    sign_discrepancy: bool = False
    notices: Tuple[str, ...] = ()
    alpha: Optional[float] = Field(None, description='Significance level of the effect gate.')
    effect_targets: Tuple[str, ...] = ()

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(','.join(REPORT_COLUMNS) + '\n')
        for record in self.records:
            row = record.model_dump()
            buf.write(
                ','.join(row['target'] if c == 'target' else repr(float(row[c])) for c in REPORT_COLUMNS)
                + '\n'
            )
        return buf.getvalue()

    def summary(self) -> str:
        lines = [f"Suite report: {len(self.records)} completed pair(s)"]
        for r in self.records:
            lines.append(
                f"  {r.target}: R_L={r.r_l:.2f} R_G={r.r_g:.2f} R_LG={r.r_lg:+.2f} "
                f"D_LG={r.d_lg:.2f}% regret_ratio={r.regret_ratio:.3f} p={r.p:.3g}"
            )
        if self.grouping is not None:
            g = self.grouping
            lines.append(
                f"Mean D_LG where G outperformed L: {g.mean_d_lg_g_better:.2f}% (n={g.n_g_better}); "
                f"where L outperformed G: {g.mean_d_lg_l_better:.2f}% (n={g.n_l_better}); "
                f"t={g.t:.3f} p={g.p:.3g}"
            )
        if self.rho is not None:
            lines.append(f"Spearman rho(D_LG, R_LG) = {self.rho:.3f} (p={self.rho_p:.3g})")
        if self.sign_discrepancy:
            lines.append(
                'SIGN DISCREPANCY: the grouped D_LG means and the Spearman rho '
                'point in opposite directions'
            )
        if self.alpha is not None:
            found = ', '.join(self.effect_targets) if self.effect_targets else 'none'
            lines.append(
                f"Pairs with R_G >= R_L at p < {self.alpha:g}: "
                f"{len(self.effect_targets)} of {len(self.records)} ({found})"
            )
        lines.extend(f"Notice: {n}" for n in self.notices)
        return '\n'.join(lines) + '\n'

    def write(self, out_dir: Union[str, Path]) -> Tuple[Path, Path]:
        """Write ``report.csv`` and ``summary.txt`` into ``out_dir``."""
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        csv_path = out_dir / 'report.csv'
        summary_path = out_dir / 'summary.txt'
        csv_path.write_text(self.to_csv(), encoding='utf-8')
        summary_path.write_text(self.summary(), encoding='utf-8')
        return csv_path, summary_path


def pair_record(pair: PairResult) -> PairRecord:
    """Gap, exploration, AUC, regret and significance of one completed pair."""
    l, g = pair.learnability, pair.generalization
    if l is None or g is None:
        raise ValueError(f"Pair {pair.target} is incomplete")
    gap = GapStats.from_returns(l.final_mean, g.final_mean)
    try:
        explo = exploration_stats(
            l.visited_union, g.visited_union, max(l.universe_size, g.universe_size)
        )
        shares = (explo.d_lg, explo.p_lg, explo.p_l, explo.p_g)
    except EmptyUnion:
        logger.warning(f"Neither population of {pair.target} visited a pair")
        shares = (math.nan,) * 4
    r_max = pair.r_max if pair.r_max is not None else r_max_for(g.spec)
    try:
        t, p = welch_t_test(g.finals, l.finals)
    except DegenerateSamples as e:
        logger.debug(f"No significance test for {pair.target}: {e}")
        t, p = math.nan, math.nan
    return PairRecord(
        target=pair.target,
        r_l=gap.r_l,
        r_g=gap.r_g,
        r_lg=gap.r_lg,
        d_lg=shares[0],
        p_lg=shares[1],
        p_l=shares[2],
        p_g=shares[3],
        auc_l=auc(l),
        auc_g=auc(g),
        r_max=r_max,
        regret_ratio=regret_ratio(l, g, r_max),
        t=t,
        p=p,
    )


def effect_pairs(records: Sequence[PairRecord], alpha: float = 0.05) -> Tuple[str, ...]:
    """Targets where Generalization matched or beat Learnability with p < ``alpha``."""
    return tuple(r.target for r in records if r.r_lg >= 0.0 and r.p < alpha)


def _grouping(records: Tuple[PairRecord, ...], notices: List[str]) -> Optional[GroupComparison]:
    g_better = np.array([r.d_lg for r in records if r.r_lg > 0])
    l_better = np.array([r.d_lg for r in records if r.r_lg < 0])
    if g_better.size == 0 or l_better.size == 0:
        notices.append('grouping skipped: R_LG does not take both signs across pairs')
        logger.warning(notices[-1])
        return None
    try:
        t, p = welch_t_test(l_better, g_better)
    except DegenerateSamples as e:
        notices.append(f"group t-test skipped: {e}")
        t, p = math.nan, math.nan
    return GroupComparison(
        mean_d_lg_g_better=float(g_better.mean()),
        mean_d_lg_l_better=float(l_better.mean()),
        n_g_better=int(g_better.size),
        n_l_better=int(l_better.size),
        t=t,
        p=p,
    )


def suite_report(suite: SuiteResult, alpha: Optional[float] = None) -> SuiteReport:
    """
    Per-pair table plus population-level comparisons of D_LG against R_LG.

    Grouping and correlation are skipped with a notice when there are too
    few pairs to compute them. With ``alpha`` the report also lists the
    pairs passing ``effect_pairs``.
    """
    records = tuple(pair_record(pair) for pair in suite.completed_pairs)
    gate = {}
    if alpha is not None:
        gate = {'alpha': alpha, 'effect_targets': effect_pairs(records, alpha)}
    notices: List[str] = []
    if len(suite.completed_pairs) < len(suite.pairs):
        notices.append(f"{len(suite.pairs) - len(suite.completed_pairs)} incomplete pair(s) left out")
    if len(records) < 2:
        notices.append('grouping skipped: fewer than two completed pairs')
        logger.warning(notices[-1])
        return SuiteReport(records=records, notices=tuple(notices), **gate)
    grouping = _grouping(records, notices)
    rho, rho_p = None, None
    try:
        rho, rho_p = spearman([r.d_lg for r in records], [r.r_lg for r in records])
    except (LengthMismatch, DegenerateRanks) as e:
        notices.append(f"Spearman correlation skipped: {e}")
    discrepancy = False
    if grouping is not None and rho is not None:
        # D_LG rising with R_LG means the G-better group should explore more
        expected = np.sign(grouping.mean_d_lg_g_better - grouping.mean_d_lg_l_better)
        discrepancy = bool(expected != 0 and np.sign(rho) == -expected)
    return SuiteReport(
        records=records,
        grouping=grouping,
        rho=rho,
        rho_p=rho_p,
        sign_discrepancy=discrepancy,
        notices=tuple(notices),
        **gate,
    )
