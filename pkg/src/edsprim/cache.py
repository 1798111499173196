"""Append-only JSON-lines cache of sequence terms.

One line per term: ``{"key": ..., "n": ..., "A": "...", "B": "..."}`` where the
key is a SHA-256 over the curve coefficients and the point. Writers take an
exclusive ``flock`` and only append, so concurrent CLI runs cannot interleave
half lines. When a key has several records for the same n, the first wins.
Primitive parts are always recomputed from (A_n, B_n).
"""

from __future__ import annotations

import fcntl
import hashlib
import json
import os
from pathlib import Path
from typing import Optional, Union

from .curve import CurvePoint, WeierstrassCurve, is_torsion
from .eds import EdsTerm, generate_sequence, multiples, terms_from_fractions
from .errors import TorsionPoint
from .io import allow_big_ints

ENV_VAR = "EDS_CACHE_DIR"
FILE_NAME = "sequences.jsonl"


def cache_key(E: WeierstrassCurve, P: CurvePoint) -> str:
    text = json.dumps({"a": [str(c) for c in E.ainvs], "point": [str(P.x), str(P.y)]},
                      sort_keys=True)
    return hashlib.sha256(text.encode()).hexdigest()


def resolve_cache_path(explicit: Optional[Union[str, Path]] = None) -> Path:
    """``--cache`` path, else $EDS_CACHE_DIR/sequences.jsonl, else ~/.cache/edsprim."""
    if explicit:
        return Path(explicit)
    env = os.environ.get(ENV_VAR)
    base = Path(env) if env else Path.home() / ".cache" / "edsprim"
    return base / FILE_NAME


class SequenceCache:
    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)

    def load(self, key: str) -> dict[int, tuple[int, int]]:
        """Cached (A_n, B_n) by n for one key; unreadable lines are skipped."""
        allow_big_ints()
        found: dict[int, tuple[int, int]] = {}
        if not self.path.exists():
            return found
        with open(self.path, encoding="utf-8") as fh:
            fcntl.flock(fh, fcntl.LOCK_SH)
            try:
                for line in fh:
                    try:
                        rec = json.loads(line)
                        if rec.get("key") != key:
                            continue
                        n = int(rec["n"])
                        found.setdefault(n, (int(rec["A"]), int(rec["B"])))
                    except (ValueError, KeyError, TypeError, AttributeError):
                        continue
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)
        return found

    def append(self, key: str, records: list[tuple[int, int, int]]) -> None:
        if not records:
            return
        allow_big_ints()
        self.path.parent.mkdir(parents=True, exist_ok=True)
        lines = "".join(json.dumps({"key": key, "n": n, "A": str(A), "B": str(B)},
                                   sort_keys=True) + "\n" for n, A, B in records)
        with open(self.path, "a", encoding="utf-8") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                fh.write(lines)
                fh.flush()
                os.fsync(fh.fileno())
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)


def cached_sequence(E: WeierstrassCurve, P: CurvePoint, N: int,
                    cache: Optional[SequenceCache] = None) -> list[EdsTerm]:
    """Terms 1..N, reading the longest cached prefix and appending what was missing."""
    if cache is None:
        return generate_sequence(E, P, N)
    if N < 1:
        raise ValueError("N must be positive")
    E.require(P)
    if is_torsion(E, P).is_torsion:
        raise TorsionPoint(f"{P} is a torsion point")
    key = cache_key(E, P)
    stored = cache.load(key)
    have = 0
    while have + 1 in stored and have < N:
        have += 1
    if have == 0:
        terms = generate_sequence(E, P, N)
        cache.append(key, [(t.n, t.A, t.B) for t in terms if t.n not in stored])
        return terms
    pairs = [stored[n] for n in range(1, have + 1)]
    fresh = []
    if have < N:
        for n, Q in multiples(E, P, N, start=have + 1):
            pairs.append((Q.x.numerator, Q.x.denominator))
            if n not in stored:
                fresh.append((n, Q.x.numerator, Q.x.denominator))
    cache.append(key, fresh)
    return terms_from_fractions(pairs)
