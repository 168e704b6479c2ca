"""Tensor JSON interchange format.

Schema: {"n": int, "order": int, "packing": "dense"|"sym3",
         "entries": [["i j k", "p/q"], ...]}
Zero entries are omitted and rationals are serialized as reduced
"p/q" strings with positive denominator.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .tensor import Sym3Tensor, Tensor, sym3_triples


def format_rational(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(s: str) -> Fraction:
    if not isinstance(s, str) or "." in s:
        raise ValueError(f"expected a p/q rational string, got {s!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError as exc:
        raise ValueError(f"zero denominator in {s!r}") from exc


def tensor_to_json(t) -> dict:
    if isinstance(t, Sym3Tensor):
        entries = [[" ".join(map(str, ijk)), format_rational(v)]
                   for ijk, v in zip(sym3_triples(t.n), t.packed) if v != 0]
        return {"n": t.n, "order": 3, "packing": "sym3", "entries": entries}
    if isinstance(t, Tensor):
        entries = [[" ".join(map(str, idx)), format_rational(t.data[idx])]
                   for idx in itertools.product(range(t.n), repeat=t.order)
                   if t.data[idx] != 0]
        return {"n": t.n, "order": t.order, "packing": "dense", "entries": entries}
    raise TypeError(f"cannot serialize {type(t).__name__}")


def tensor_from_json(doc: dict):
    try:
        n, order, packing = doc["n"], doc["order"], doc["packing"]
        raw = [(tuple(int(s) for s in key.split()), parse_rational(val))
               for key, val in doc["entries"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed tensor document: {exc}") from exc
    for idx, _ in raw:
        if len(idx) != order or any(not 0 <= i < n for i in idx):
            raise ValueError(f"index {idx} out of range for n={n}, order={order}")
    if packing == "sym3":
        if order != 3:
            raise ValueError("sym3 packing requires order 3")
        pos = {ijk: i for i, ijk in enumerate(sym3_triples(n))}
        packed = [Fraction(0)] * len(pos)
        for idx, val in raw:
            if tuple(sorted(idx)) != idx:
                raise ValueError(f"sym3 index {idx} is not sorted")
            packed[pos[idx]] = val
        return Sym3Tensor(n, tuple(packed))
    if packing == "dense":
        arr = np.full((n,) * order, Fraction(0), dtype=object)
        for idx, val in raw:
            arr[idx] = val
        return Tensor(n, arr)
    raise ValueError(f"unknown packing {packing!r}")
