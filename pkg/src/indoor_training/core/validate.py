# src/indoor_training/core/validate.py

import logging
from collections import deque
from typing import List, Optional

import numpy as np

from ..models.results import ValidationReport, Violation, ViolationKind
from .mdp import ROW_SUM_TOL, Mdp

logger = logging.getLogger(__name__)


def _index_violations(mdp: Mdp) -> List[Violation]:
    index = mdp.state_index
    out = []
    for i, state in enumerate(index.states):
        if index.id_of.get(state) != i:
            out.append(Violation(
                kind=ViolationKind.INDEX, state=i,
                detail=f"id_of maps state {i} to {index.id_of.get(state)}",
            ))
    if len(mdp.legal_actions) != index.count or len(mdp.outcomes) != index.count:
        out.append(Violation(
            kind=ViolationKind.INDEX,
            detail=f"{index.count} states but {len(mdp.legal_actions)} legal-action sets "
                   f"and {len(mdp.outcomes)} outcomes",
        ))
    return out


def _reachable(mdp: Mdp) -> np.ndarray:
    seen = np.zeros(mdp.n_states, dtype=bool)
    seen[mdp.initial_state] = True
    queue = deque([mdp.initial_state])
    while queue:
        s = queue.popleft()
        for a in mdp.legal_actions[s]:
            if (s, a) not in mdp.transitions:
                continue
            ids, probs = mdp.transitions.row(s, a)
            for j in ids[probs > 0]:
                if 0 <= j < mdp.n_states and not seen[j]:
                    seen[j] = True
                    queue.append(int(j))
    return seen


def validate_mdp(mdp: Mdp, *, check_reachability: Optional[bool] = None) -> ValidationReport:
    """
    Report every violated MDP invariant.

    Checked: index consistency, legal actions of non-terminal states, one row
    per (non-terminal state, legal action) and no other rows, probabilities in
    [0, 1], row sums within 1e-9 of 1, successors inside the index and, unless
    the index is shared between variants, reachability of every state.
    Never raises; the report is empty iff the MDP is sound.
    """
    if check_reachability is None:
        check_reachability = not mdp.shared_index
    violations = _index_violations(mdp)
    n = mdp.n_states

    for s in range(min(n, len(mdp.legal_actions))):
        if mdp.is_terminal(s):
            continue
        if not mdp.legal_actions[s]:
            violations.append(Violation(
                kind=ViolationKind.NO_LEGAL_ACTION, state=s,
                detail='non-terminal state without legal actions',
            ))
        for a in mdp.legal_actions[s]:
            if (s, a) not in mdp.transitions:
                violations.append(Violation(
                    kind=ViolationKind.MISSING_ROW, state=s, action=a,
                    detail='legal pair has no transition row',
                ))

    for (s, a), (ids, probs) in mdp.transitions.items():
        if not 0 <= s < n or mdp.is_terminal(s) or a not in mdp.legal_actions[s]:
            violations.append(Violation(
                kind=ViolationKind.ORPHAN_ROW, state=s, action=a,
                detail='row for a terminal state or an illegal action',
            ))
        outside = ids[(ids < 0) | (ids >= n)]
        if outside.size:
            violations.append(Violation(
                kind=ViolationKind.CLOSURE, state=s, action=a,
                detail=f"successor ids {outside.tolist()} outside [0, {n})",
            ))
        negative = probs[probs < 0]
        if negative.size:
            violations.append(Violation(
                kind=ViolationKind.NEGATIVE, state=s, action=a,
                detail=f"negative probabilities {negative.tolist()}",
            ))
        above = probs[probs > 1]
        if above.size:
            violations.append(Violation(
                kind=ViolationKind.OUT_OF_RANGE, state=s, action=a,
                detail=f"probabilities above 1 {above.tolist()}",
            ))
        total = float(probs.sum())
        if abs(total - 1.0) > ROW_SUM_TOL:
            violations.append(Violation(
                kind=ViolationKind.ROW_SUM, state=s, action=a,
                detail=f"row sums to {total!r}",
            ))

    if check_reachability and n:
        unreachable = np.flatnonzero(~_reachable(mdp))
        violations.extend(
            Violation(kind=ViolationKind.UNREACHABLE, state=int(s),
                      detail='not reachable from the initial state')
            for s in unreachable
        )

    report = ValidationReport(violations=tuple(violations))
    if report.ok:
        logger.debug(f"MDP {mdp.game.label} passed validation")
    else:
        logger.warning(f"MDP {mdp.game.label} has {len(report)} invariant violation(s)")
    return report
