"""JSON-friendly records for pairs, rationals and cached candidate sets."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable

from .engine import PairState
from .errors import ParseError
from .one_param import GENERATOR_TAG, OneParamSubgroup, generate_candidates
from .poly import SparsePolynomial, parse_polynomial, render

CACHE_FORMAT = 1


def _polynomial(value: Any, nvars: int, what: str) -> SparsePolynomial:
    if isinstance(value, str):
        return parse_polynomial(value, nvars)
    if isinstance(value, list):
        return SparsePolynomial.from_records(value, nvars)
    raise ParseError(f"{what} must be a polynomial string or a list of term records")


def pair_from_record(record: dict) -> PairState:
    try:
        n, d = int(record["n"]), int(record["d"])
        f, h = record["f"], record["h"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"pair record needs integer n, d and polynomials f, h ({exc})") from None
    return PairState(n, d, _polynomial(f, n + 2, "f"), _polynomial(h, n + 2, "h"))


def pair_to_record(pair: PairState, *, as_text: bool = True) -> dict:
    conv = render if as_text else SparsePolynomial.to_records
    return {"n": pair.n, "d": pair.d, "f": conv(pair.f), "h": conv(pair.h)}


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc.msg}", exc.pos) from None


def load_pair(path: str | Path) -> PairState:
    return pair_from_record(read_json(path))


def candidates_to_record(n: int, d: int, candidates: Iterable[OneParamSubgroup]) -> dict:
    return {
        "format": CACHE_FORMAT,
        "generator": GENERATOR_TAG,
        "n": n,
        "d": d,
        "candidates": [list(c.weights) for c in sorted(candidates, reverse=True)],
    }


def candidates_from_record(record: dict, n: int | None = None, d: int | None = None) -> frozenset[OneParamSubgroup]:
    if not isinstance(record, dict):
        raise ParseError("candidate cache must be a JSON object")
    if record.get("generator") != GENERATOR_TAG or record.get("format") != CACHE_FORMAT:
        raise ParseError(
            f"candidate cache was written by {record.get('generator')!r} "
            f"format {record.get('format')!r}; expected {GENERATOR_TAG!r} format {CACHE_FORMAT}"
        )
    if n is not None and (record.get("n"), record.get("d")) != (n, d):
        raise ParseError(f"candidate cache is for (n, d) = ({record.get('n')}, {record.get('d')})")
    try:
        return frozenset(OneParamSubgroup(tuple(v)) for v in record["candidates"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"corrupt candidate cache ({exc})") from None


def cache_candidates(n: int, d: int, path: str | Path, **kwargs) -> frozenset[OneParamSubgroup]:
    candidates = generate_candidates(n, d, **kwargs)
    Path(path).write_text(json.dumps(candidates_to_record(n, d, candidates), sort_keys=True) + "\n")
    return candidates


def load_candidates(path: str | Path, n: int | None = None, d: int | None = None) -> frozenset[OneParamSubgroup]:
    return candidates_from_record(read_json(path), n, d)


def candidates_for(n: int, d: int, cache: str | Path | None = None) -> frozenset[OneParamSubgroup]:
    """Candidates from ``cache`` when it exists, otherwise generated (and written there)."""
    if cache is None:
        return generate_candidates(n, d)
    if Path(cache).exists():
        return load_candidates(cache, n, d)
    return cache_candidates(n, d, cache)
