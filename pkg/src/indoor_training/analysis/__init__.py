from .exploration import GRID_COLORS, GridCell, color_table_csv, exploration_grid, exploration_stats, grid_to_csv
from .metrics import auc, r_max_for, regret_ratio
from .report import PairRecord, SuiteReport, effect_pairs, pair_record, suite_report
from .stats import spearman, welch_t_test

__all__ = [
    "GRID_COLORS",
    "GridCell",
    "PairRecord",
    "SuiteReport",
    "auc",
    "color_table_csv",
    "effect_pairs",
    "exploration_grid",
    "exploration_stats",
    "grid_to_csv",
    "pair_record",
    "r_max_for",
    "regret_ratio",
    "spearman",
    "suite_report",
    "welch_t_test",
]
