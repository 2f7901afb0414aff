"""Edge streams: a threshold header followed by a permutation of a graph's edges.

Order specs (CLI grammar in parentheses):
  as-given     ("given")        file / construction order
  reversed     ("rev")          reverse of as-given
  sorted-lex   ("lex")          lexicographic on normalized pairs
  shuffled     ("shuffle:SEED") seeded Fisher-Yates over the whole sequence
  interleave   ("split:IDX" or "split:IDX:SEED")
               the first IDX as-given edges are streamed (shuffled among
               themselves), then the rest: the two-party split where one
               side's edges all arrive before the other's.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph


@dataclass(frozen=True)
class EdgeStream:
    n: int
    k: int
    edges: tuple[tuple[int, int], ...]


class OrderSpecError(ValueError):
    pass


def _ordered_edges(g: Graph, spec: str) -> list[tuple[int, int]]:
    if spec in ("given", "as-given"):
        return list(g.edges)
    if spec in ("rev", "reversed"):
        return list(reversed(g.edges))
    if spec in ("lex", "sorted-lex"):
        return sorted(g.edges)
    parts = spec.split(":")
    if parts[0] in ("shuffle", "shuffled") and len(parts) == 2:
        try:
            seed = int(parts[1])
        except ValueError:
            raise OrderSpecError(f"bad shuffle seed in {spec!r}") from None
        out = list(g.edges)
        random.Random(seed).shuffle(out)
        return out
    if parts[0] in ("split", "interleave") and len(parts) in (2, 3):
        try:
            idx = int(parts[1])
            seed = int(parts[2]) if len(parts) == 3 else 0
        except ValueError:
            raise OrderSpecError(f"bad split spec {spec!r}") from None
        if not 0 <= idx <= g.m:
            raise OrderSpecError(f"split point {idx} outside 0..{g.m}")
        rng = random.Random(seed)
        first, second = list(g.edges[:idx]), list(g.edges[idx:])
        rng.shuffle(first)
        rng.shuffle(second)
        return first + second
    raise OrderSpecError(f"unknown order spec {spec!r}")


def make_stream(g: Graph, k: int, order_spec: str = "given") -> EdgeStream:
    if k < 0:
        raise ValueError("threshold k must be non-negative")
    return EdgeStream(g.n, k, tuple(_ordered_edges(g, order_spec)))


#: Fixed order battery for completeness campaigns: 3 canonical + 20 shuffles.
ORDER_BATTERY: tuple[str, ...] = ("given", "rev", "lex") + tuple(
    f"shuffle:{s}" for s in range(20)
)

#: Smaller battery for (much larger) soundness campaigns.
SOUNDNESS_ORDERS: tuple[str, ...] = ("given", "rev", "lex", "shuffle:0", "shuffle:1")
