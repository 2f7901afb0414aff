"""Space-metered one-pass streaming verifiers, one per scheme.

Shared run contract: the constructor validates certificate decodability and
may set a sticky reject; ``on_edge`` consumes one stream item (and is a no-op
once rejected, draining the rest of the stream); ``finalize`` returns the
Verdict. The certificate is random-access read-only memory and is never
charged to the meter; decoded views of it held by the Python object are
caches over that read-only memory, not verifier state.

Every verifier registers a fixed scratch allowance (8 registers of
ceil(log2(n+2)) bits, for loop indices and edge endpoints) plus its declared
state components. ``space_bound`` gives the closed-form ceiling each scheme's
peak must stay under.
"""

from __future__ import annotations

from dataclasses import dataclass

from .certs import CertificateBlob, MalformedCertificate, decode_blob
from .meter import SpaceMeter, SpaceReport, ceil_log2
from .stream import EdgeStream

# reject reason codes (diagnostic only; never part of the accept decision)
R_MALFORMED = "malformed-certificate"
R_CERT_SIZE = "cert-size-mismatch"
R_NOT_MATCHING = "cert-not-matching"
R_MISSING_EDGE = "missing-cert-edge"
R_FLAG_CONFLICT = "flag-conflict"
R_FEW_MONO = "too-few-monochromatic"
R_TUTTE_BERGE = "tutte-berge-violated"
R_NOT_PERMUTATION = "not-a-permutation"
R_COUNTER_OVER = "counter-exceeded"
R_COUNTER_SHORT = "counter-short"
R_EMPTY_SUBSET = "empty-subset"
R_NO_ANCHOR = "no-anchor"
R_SHORTCUT = "shortcut"
R_MONO_EDGE = "monochromatic-edge"
R_COLOR_RANGE = "color-out-of-range"
R_DUPLICATE_NODE = "duplicate-node"
R_WRONG_SIZE = "wrong-set-size"
R_EDGE_IN_SET = "edge-inside-set"
R_CLIQUE_COUNT = "clique-count-mismatch"
R_UNCOVERED = "uncovered-edge"
R_OK = "ok"


@dataclass(frozen=True)
class Verdict:
    decision: str  # "accept" | "reject"
    reason: str

    @property
    def accepted(self) -> bool:
        return self.decision == "accept"


ACCEPT = Verdict("accept", R_OK)


def scratch_bits(n: int) -> int:
    return 8 * ceil_log2(n + 2)


class StreamingVerifier:
    """Base class: sticky rejection, scratch registration, cert decoding."""

    scheme = ""

    def __init__(self, n: int, k: int, cert: CertificateBlob):
        self.n = n
        self.k = k
        self.meter = SpaceMeter()
        self.meter.register("scratch", scratch_bits(n))
        self._reject_reason: str | None = None
        try:
            decoded = decode_blob(cert, self.scheme, n, k)
        except MalformedCertificate:
            self._reject_reason = R_MALFORMED
            return
        self._setup(decoded)

    def _setup(self, decoded) -> None:
        raise NotImplementedError

    def _on_edge(self, u: int, v: int) -> None:
        raise NotImplementedError

    def _finalize(self) -> Verdict:
        return ACCEPT

    def reject(self, reason: str) -> None:
        if self._reject_reason is None:
            self._reject_reason = reason

    def on_edge(self, u: int, v: int) -> None:
        if self._reject_reason is None:
            self._on_edge(u, v)

    def finalize(self) -> Verdict:
        if self._reject_reason is not None:
            return Verdict("reject", self._reject_reason)
        return self._finalize()

    def peak_state_bits(self) -> int:
        return self.meter.peak_bits


class MMListVerifier(StreamingVerifier):
    """Accept iff the certificate is a matching of size exactly k and exactly
    k streamed edges belong to it."""

    scheme = "mm_atleast_list"

    def _setup(self, edges) -> None:
        if len(edges) != self.k:
            return self.reject(R_CERT_SIZE)
        endpoints = [x for e in edges for x in e]
        if len(set(endpoints)) != 2 * self.k:
            return self.reject(R_NOT_MATCHING)
        self._cert_edges = frozenset(tuple(sorted(e)) for e in edges)
        self.meter.register("matched_counter", ceil_log2(self.k + 1))
        self._count = 0

    def _on_edge(self, u: int, v: int) -> None:
        if ((u, v) if u < v else (v, u)) in self._cert_edges:
            self._count += 1

    def _finalize(self) -> Verdict:
        if self._count != self.k:
            return Verdict("reject", R_MISSING_EDGE)
        return ACCEPT


class MMColoringVerifier(StreamingVerifier):
    """One flag bit per vertex; a vertex on two monochromatic edges rejects;
    accept iff at least 2k flags end up set."""

    scheme = "mm_atleast_coloring"

    def _setup(self, decoded) -> None:
        _, self._colors = decoded
        self.meter.register("flags", self.n)
        self.meter.register("flag_count", ceil_log2(self.n + 1))
        self._flag = bytearray(self.n + 1)
        self._set_count = 0

    def _on_edge(self, u: int, v: int) -> None:
        colors = self._colors
        if colors[u] == colors[v]:
            flag = self._flag
            if flag[u] or flag[v]:
                return self.reject(R_FLAG_CONFLICT)
            flag[u] = flag[v] = 1
            self._set_count += 2

    def _finalize(self) -> Verdict:
        if self._set_count < 2 * self.k:
            return Verdict("reject", R_FEW_MONO)
        return ACCEPT


class MMAtMostVerifier(StreamingVerifier):
    """Spanning forest of the graph minus U via union-find; accept iff
    2k >= |U| - odd(V \\ U) + n at the end of the stream."""

    scheme = "mm_atmost"

    def _setup(self, u_set) -> None:
        self._u_set = u_set
        n = self.n
        self._id_width = ceil_log2(n + 1)
        self.meter.register("uf_parents", n * self._id_width)
        self.meter.register("forest_edges", 0)
        self._parent = list(range(n + 1))
        self._forest_size = 0

    def _find(self, v: int) -> int:
        parent = self._parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def _on_edge(self, u: int, v: int) -> None:
        if u in self._u_set or v in self._u_set:
            return
        ru, rv = self._find(u), self._find(v)
        if ru != rv:
            self._parent[ru] = rv
            self._forest_size += 1
            self.meter.resize("forest_edges", 2 * self._forest_size * self._id_width)

    def _finalize(self) -> Verdict:
        # the stored forest is no longer needed once components are settled;
        # its freed budget covers the size-counting array
        self.meter.resize("forest_edges", 0)
        self.meter.register("component_sizes", self.n * self._id_width)
        sizes = [0] * (self.n + 1)
        for v in range(1, self.n + 1):
            if v not in self._u_set:
                sizes[self._find(v)] += 1
        odd = sum(1 for s in sizes if s % 2 == 1)
        if 2 * self.k >= len(self._u_set) - odd + self.n:
            return ACCEPT
        return Verdict("reject", R_TUTTE_BERGE)


class DegAtMostVerifier(StreamingVerifier):
    """Per-vertex counters saturating at k+1; each edge increments the
    endpoint earlier in the certified order; accept iff no counter
    exceeds k."""

    scheme = "deg_atmost"

    def _setup(self, pi) -> None:
        n = self.n
        self.meter.register("perm_bitmap", n)
        seen = bytearray(n + 1)
        for v in range(1, n + 1):
            value = pi[v]
            if seen[value]:
                return self.reject(R_NOT_PERMUTATION)
            seen[value] = 1
        self.meter.resize("perm_bitmap", 0)
        self._pi = pi
        self.meter.register("counters", n * ceil_log2(self.k + 2))
        self._count = [0] * (n + 1)

    def _on_edge(self, u: int, v: int) -> None:
        w = u if self._pi[u] < self._pi[v] else v
        if self._count[w] <= self.k:
            self._count[w] += 1

    def _finalize(self) -> Verdict:
        if any(c > self.k for c in self._count):
            return Verdict("reject", R_COUNTER_OVER)
        return ACCEPT


class DegAtLeastVerifier(StreamingVerifier):
    """Counters (saturating at k) for the certified subset; both endpoints of
    an internal edge are incremented; accept iff all reach k."""

    scheme = "deg_atleast"

    def _setup(self, members) -> None:
        if self.k >= 1 and not members:
            return self.reject(R_EMPTY_SUBSET)
        self._members = members
        self.meter.register("counters", len(members) * ceil_log2(self.k + 1))
        self._count = {v: 0 for v in members}

    def _on_edge(self, u: int, v: int) -> None:
        count = self._count
        if u in count and v in count:
            k = self.k
            if count[u] < k:
                count[u] += 1
            if count[v] < k:
                count[v] += 1

    def _finalize(self) -> Verdict:
        if any(c < self.k for c in self._count.values()):
            return Verdict("reject", R_COUNTER_SHORT)
        return ACCEPT


class DiamAtLeastVerifier(StreamingVerifier):
    """Distance labels: needs a 0 label and a label >= k up front; any edge
    whose endpoint labels differ by more than 1 is a shortcut and rejects."""

    scheme = "diam_atleast"

    def _setup(self, labels) -> None:
        body = labels[1:]
        if not body or min(body) > 0 or max(body) < self.k:
            return self.reject(R_NO_ANCHOR)
        self._labels = labels

    def _on_edge(self, u: int, v: int) -> None:
        labels = self._labels
        diff = labels[u] - labels[v]
        if diff > 1 or diff < -1:
            self.reject(R_SHORTCUT)


class ColoringAtMostVerifier(StreamingVerifier):
    """Reject on any monochromatic edge (colors must lie in 1..k)."""

    scheme = "coloring_atmost"

    def _setup(self, colors) -> None:
        for c in colors[1:]:
            if not 1 <= c <= self.k:
                return self.reject(R_COLOR_RANGE)
        self._colors = colors

    def _on_edge(self, u: int, v: int) -> None:
        if self._colors[u] == self._colors[v]:
            self.reject(R_MONO_EDGE)


class _NodeSetVerifier(StreamingVerifier):
    exact_size = True

    def _setup(self, members) -> None:
        if len(set(members)) != len(members):
            return self.reject(R_DUPLICATE_NODE)
        if self.exact_size:
            if len(members) != self.k:
                return self.reject(R_WRONG_SIZE)
        elif len(members) > self.k:
            return self.reject(R_WRONG_SIZE)
        self._members = frozenset(members)


class ISAtLeastVerifier(_NodeSetVerifier):
    """No streamed edge may land inside the certified independent set."""

    scheme = "is_atleast"

    def _on_edge(self, u: int, v: int) -> None:
        if u in self._members and v in self._members:
            self.reject(R_EDGE_IN_SET)


class CliqueAtLeastVerifier(_NodeSetVerifier):
    """Count streamed edges inside the certified set; accept iff the count is
    k(k-1)/2."""

    scheme = "clique_atleast"

    def _setup(self, members) -> None:
        super()._setup(members)
        if self._reject_reason is None:
            self.meter.register("pair_counter", 2 * ceil_log2(self.n + 1))
            self._count = 0

    def _on_edge(self, u: int, v: int) -> None:
        if u in self._members and v in self._members:
            self._count += 1

    def _finalize(self) -> Verdict:
        if self._count != self.k * (self.k - 1) // 2:
            return Verdict("reject", R_CLIQUE_COUNT)
        return ACCEPT


class VCAtMostVerifier(_NodeSetVerifier):
    """Every streamed edge must touch the certified cover (size <= k)."""

    scheme = "vc_atmost"
    exact_size = False

    def _on_edge(self, u: int, v: int) -> None:
        if u not in self._members and v not in self._members:
            self.reject(R_UNCOVERED)


class EqualityVerifier(StreamingVerifier):
    """Lemma-style combinator: run the <=k and >=k verifiers on one pass and
    accept iff both accept. Peak space is the sum of the two runs."""

    sub_schemes: tuple[str, str] = ("", "")

    def _setup(self, decoded) -> None:
        le_blob, ge_blob = decoded
        le_scheme, ge_scheme = self.sub_schemes
        self._le = SCHEME_VERIFIERS[le_scheme](self.n, self.k, le_blob)
        self._ge = SCHEME_VERIFIERS[ge_scheme](self.n, self.k, ge_blob)

    def _on_edge(self, u: int, v: int) -> None:
        self._le.on_edge(u, v)
        self._ge.on_edge(u, v)

    def _finalize(self) -> Verdict:
        le = self._le.finalize()
        ge = self._ge.finalize()
        if le.accepted and ge.accepted:
            return ACCEPT
        side, bad = ("le", le) if not le.accepted else ("ge", ge)
        return Verdict("reject", f"{side}:{bad.reason}")

    def peak_state_bits(self) -> int:
        if self._reject_reason is not None and not hasattr(self, "_le"):
            return self.meter.peak_bits
        return self._le.peak_state_bits() + self._ge.peak_state_bits()


class MMEqualVerifier(EqualityVerifier):
    scheme = "mm_equal"
    sub_schemes = ("mm_atmost", "mm_atleast_list")


class DegEqualVerifier(EqualityVerifier):
    scheme = "deg_equal"
    sub_schemes = ("deg_atmost", "deg_atleast")


SCHEME_VERIFIERS: dict[str, type[StreamingVerifier]] = {
    cls.scheme: cls
    for cls in (
        MMListVerifier,
        MMColoringVerifier,
        MMAtMostVerifier,
        DegAtMostVerifier,
        DegAtLeastVerifier,
        DiamAtLeastVerifier,
        ColoringAtMostVerifier,
        ISAtLeastVerifier,
        CliqueAtLeastVerifier,
        VCAtMostVerifier,
        MMEqualVerifier,
        DegEqualVerifier,
    )
}


# -- closed-form space ceilings (criterion: measured peak never exceeds these) --

def space_bound(scheme: str, n: int, k: int) -> int:
    allowance = 64 * ceil_log2(n + 2)
    if scheme in (
        "mm_atleast_list",
        "diam_atleast",
        "coloring_atmost",
        "is_atleast",
        "clique_atleast",
        "vc_atmost",
    ):
        return allowance
    if scheme == "mm_atleast_coloring":
        return n + allowance
    if scheme in ("deg_atmost", "deg_atleast"):
        return n * ceil_log2(k + 2) + allowance
    if scheme == "mm_atmost":
        forest = 2 * max(n - 1, 0) * ceil_log2(n + 1)
        parents = n * ceil_log2(n + 1)
        return forest + parents + allowance
    if scheme == "mm_equal":
        return space_bound("mm_atmost", n, k) + space_bound("mm_atleast_list", n, k)
    if scheme == "deg_equal":
        return space_bound("deg_atmost", n, k) + space_bound("deg_atleast", n, k)
    raise ValueError(f"unknown scheme {scheme!r}")


# -- run drivers ------------------------------------------------------------------

def run_verifier(
    scheme: str, stream: EdgeStream, cert: CertificateBlob
) -> tuple[Verdict, SpaceReport]:
    verifier = SCHEME_VERIFIERS[scheme](stream.n, stream.k, cert)
    on_edge = verifier.on_edge
    for u, v in stream.edges:
        on_edge(u, v)
    verdict = verifier.finalize()
    return verdict, SpaceReport(verifier.peak_state_bits(), cert.semantic_bits)


def _spec_entry(scheme: str):
    def run(n: int, k: int, cert: CertificateBlob, stream: EdgeStream):
        if stream.n != n or stream.k != k:
            raise ValueError(
                f"stream header (n={stream.n}, k={stream.k}) does not echo "
                f"the requested (n={n}, k={k})"
            )
        return run_verifier(scheme, stream, cert)

    run.__name__ = f"verify_{scheme}"
    return run


verify_mm_atleast_list = _spec_entry("mm_atleast_list")
verify_mm_atleast_coloring = _spec_entry("mm_atleast_coloring")
verify_mm_atmost = _spec_entry("mm_atmost")
verify_deg_atmost = _spec_entry("deg_atmost")
verify_deg_atleast = _spec_entry("deg_atleast")
verify_diam_atleast = _spec_entry("diam_atleast")
verify_coloring_atmost = _spec_entry("coloring_atmost")
verify_is_atleast = _spec_entry("is_atleast")
verify_clique_atleast = _spec_entry("clique_atleast")
verify_vc_atmost = _spec_entry("vc_atmost")


def verify_equality(
    scheme_le: str,
    scheme_ge: str,
    n: int,
    k: int,
    certs: tuple[CertificateBlob, CertificateBlob],
    stream: EdgeStream,
) -> tuple[Verdict, SpaceReport]:
    """Run a <=k and a >=k verifier over one pass; accept iff both accept."""
    from .certs import encode_equality

    pairs = {
        ("mm_atmost", "mm_atleast_list"): "mm_equal",
        ("deg_atmost", "deg_atleast"): "deg_equal",
    }
    combined = pairs.get((scheme_le, scheme_ge))
    if combined is None:
        raise ValueError(f"no equality combinator for ({scheme_le}, {scheme_ge})")
    if stream.n != n or stream.k != k:
        raise ValueError("stream header does not echo the requested (n, k)")
    return run_verifier(combined, stream, encode_equality(combined, *certs))
