"""Registry tying each scheme id to its parameter, direction, prover, and verifier."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from . import provers
from .certs import CertificateBlob
from .graph import Graph
from .verifiers import SCHEME_VERIFIERS, StreamingVerifier, space_bound


@dataclass(frozen=True)
class SchemeInfo:
    name: str
    parameter: str   # which graph parameter the scheme talks about
    direction: str   # "ge" (value >= k), "le" (value <= k), "eq" (value == k)
    prover: Callable[[Graph, int], CertificateBlob]

    @property
    def verifier(self) -> type[StreamingVerifier]:
        return SCHEME_VERIFIERS[self.name]

    def legal(self, value: int | float, k: int) -> bool:
        if self.direction == "ge":
            return value >= k
        if self.direction == "le":
            return value <= k
        return value == k

    def space_bound(self, n: int, k: int) -> int:
        return space_bound(self.name, n, k)


SCHEMES: dict[str, SchemeInfo] = {
    info.name: info
    for info in (
        SchemeInfo("mm_atleast_list", "matching", "ge", provers.prove_mm_atleast_list),
        SchemeInfo(
            "mm_atleast_coloring", "matching", "ge", provers.prove_mm_atleast_coloring
        ),
        SchemeInfo("mm_atmost", "matching", "le", provers.prove_mm_atmost),
        SchemeInfo("deg_atmost", "degeneracy", "le", provers.prove_deg_atmost),
        SchemeInfo("deg_atleast", "degeneracy", "ge", provers.prove_deg_atleast),
        SchemeInfo("diam_atleast", "diameter", "ge", provers.prove_diam_atleast),
        SchemeInfo("coloring_atmost", "chromatic", "le", provers.prove_coloring_atmost),
        SchemeInfo("is_atleast", "is", "ge", provers.prove_is_atleast),
        SchemeInfo("clique_atleast", "clique", "ge", provers.prove_clique_atleast),
        SchemeInfo("vc_atmost", "vc", "le", provers.prove_vc_atmost),
        SchemeInfo("mm_equal", "matching", "eq", provers.prove_mm_equal),
        SchemeInfo("deg_equal", "degeneracy", "eq", provers.prove_deg_equal),
    )
}

#: the ten single-direction schemes (the equality combinators aside)
BASE_SCHEMES: tuple[str, ...] = tuple(
    name for name, info in SCHEMES.items() if info.direction != "eq"
)


def legal_thresholds(info: SchemeInfo, value: int | float, n: int) -> list[int]:
    """One or two representative legal thresholds for an instance."""
    if info.direction == "ge":
        if math.isinf(value):  # disconnected graph: any diameter threshold is legal
            return sorted({n, 1})
        ks = {int(value)}
        if value >= 1:
            ks.add(int(value) - 1)
        return sorted(ks)
    if info.direction == "le":
        return [int(value), int(value) + 1]
    return [int(value)]


def illegal_thresholds(info: SchemeInfo, value: int | float) -> list[int]:
    """Representative illegal thresholds, possibly none (e.g. infinite diameter)."""
    if info.direction == "ge":
        return [] if math.isinf(value) else [int(value) + 1]
    if info.direction == "le":
        return [int(value) - 1] if value >= 1 else []
    ks = [int(value) + 1]
    if value >= 1:
        ks.append(int(value) - 1)
    return ks
