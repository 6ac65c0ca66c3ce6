"""Brute-force list decoding by enumerating every message polynomial."""
from __future__ import annotations

from dataclasses import dataclass
from math import floor

import numpy as np

from .algebra import Polynomial
from .bounds import to_fraction
from .codes import CodeParams, RecoverySets, corrupt, encode
from .errors import BudgetExceeded, ParameterError
from .prune import min_agreement

CHUNK = 1 << 15


@dataclass(frozen=True)
class OracleBudget:
    max_messages: int = 2**25

    def __post_init__(self):
        if self.max_messages < 1:
            raise ParameterError("budget must be positive")


def _message_block(start: int, stop: int, q: int, k: int) -> np.ndarray:
    """Messages ``start..stop-1`` in lexicographic order (constant term most significant)."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((idx.size, k), dtype=np.int64)
    for j in range(k - 1, -1, -1):
        out[:, j] = idx % q
        idx //= q
    return out


def _agreements(words: np.ndarray, S: RecoverySets) -> np.ndarray:
    """Agreeing-column counts for a batch of words of shape ``(k, n, s)``."""
    counts = np.zeros(words.shape[0], dtype=np.int64)
    for i, cands in enumerate(S.sets):
        col = words[:, i, :]
        hit = np.zeros(words.shape[0], dtype=bool)
        for v in cands:
            hit |= np.all(col == np.asarray(v, dtype=np.int64), axis=1)
        counts += hit
    return counts


def brute_force_list(params: CodeParams, S: RecoverySets, rho, budget: OracleBudget = OracleBudget()) -> list[Polynomial]:
    rho = to_fraction(rho)
    if not 0 <= rho <= 1:
        raise ParameterError(f"radius must lie in [0, 1], got {rho}")
    S.check_against(params)
    q, k = params.q, params.d + 1
    total = q ** k
    if total > budget.max_messages:
        raise BudgetExceeded(f"q^(d+1) = {total} messages exceeds budget {budget.max_messages}")
    need = min_agreement(params.n, rho)
    out = []
    for start in range(0, total, CHUNK):
        msgs = _message_block(start, min(total, start + CHUNK), q, k)
        words = params.encode_vector(msgs)
        for row in msgs[_agreements(words, S) >= need]:
            out.append(Polynomial(params.field, row))
    return out


def max_list_size_sweep(params: CodeParams, rho, trials: int, rng: np.random.Generator,
                        budget: OracleBudget = OracleBudget(), patterns: int = 8) -> int:
    """Largest brute-force list seen around random codewords at ``floor(rho n)`` errors.

    Each trial plants a random codeword and keeps the worst of ``patterns``
    random error patterns.
    """
    if trials < 1 or patterns < 1:
        raise ParameterError("trials and patterns must be >= 1")
    rho = to_fraction(rho)
    if params.q ** (params.d + 1) > budget.max_messages:
        raise BudgetExceeded("message space exceeds the oracle budget")
    e = floor(rho * params.n)
    worst = 0
    for _ in range(trials):
        c = encode(params, params.random_message(rng))
        for _ in range(patterns):
            y = corrupt(c, e, rng, params.q)
            worst = max(worst, len(brute_force_list(params, RecoverySets.from_codeword(y), rho, budget)))
    return worst
