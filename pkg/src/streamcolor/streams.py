"""Edge streams: event model, builders, serialization, and pass control.

Streams are materialized in memory at desk scale but algorithms consume
them strictly through one-way iterators; multi-pass runners must go through
`StreamSource`, which meters rewinds explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import ArgumentError, FormatError, PassLimitError, StreamValidationError
from .graph import DynamicMultigraph, Graph, normalize_edge
from .seeds import rng_for

INSERTION = "ins"
DYNAMIC = "dyn"


@dataclass(frozen=True)
class StreamEvent:
    u: int
    v: int
    delta: int  # +1 or -1

    def pair(self) -> tuple[int, int]:
        return normalize_edge(self.u, self.v)


class Stream:
    """Immutable event sequence over vertices [0, n).

    Insertion-only streams carry only +1 events with no repeated pair;
    dynamic streams additionally allow deletions, with every prefix keeping
    all multiplicities non-negative.
    """

    def __init__(self, n: int, model: str, events: list[StreamEvent]):
        if model not in (INSERTION, DYNAMIC):
            raise ArgumentError(f"unknown stream model {model!r}")
        if n < 0:
            raise ArgumentError("vertex count must be non-negative")
        self.n = int(n)
        self.model = model
        self.events: tuple[StreamEvent, ...] = tuple(events)
        self._validate()

    def _validate(self) -> None:
        if self.model == INSERTION:
            seen: set[tuple[int, int]] = set()
            for ev in self.events:
                if ev.delta != 1:
                    raise StreamValidationError(
                        f"insertion-only stream carries delta {ev.delta}"
                    )
                e = self._check_pair(ev)
                if e in seen:
                    raise StreamValidationError(f"pair {e} inserted twice")
                seen.add(e)
        else:
            counts: dict[tuple[int, int], int] = {}
            for ev in self.events:
                if ev.delta not in (1, -1):
                    raise StreamValidationError(f"delta must be +1/-1, got {ev.delta}")
                e = self._check_pair(ev)
                c = counts.get(e, 0) + ev.delta
                if c < 0:
                    raise StreamValidationError(
                        f"pair {e} deleted more times than inserted"
                    )
                counts[e] = c

    def _check_pair(self, ev: StreamEvent) -> tuple[int, int]:
        e = normalize_edge(ev.u, ev.v)
        if e[0] < 0 or e[1] >= self.n:
            raise StreamValidationError(f"pair {e} out of range for n={self.n}")
        return e

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[StreamEvent]:
        return iter(self.events)

    def final_graph(self) -> Graph:
        """The simple graph left after replaying every event."""
        m = DynamicMultigraph(self.n)
        for ev in self.events:
            m.apply(ev.u, ev.v, ev.delta)
        return Graph(self.n, (e for e, c in m.counts.items() if c > 0))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Stream)
            and self.n == other.n
            and self.model == other.model
            and self.events == other.events
        )


class StreamSource:
    """Metered access to repeated passes over one stream."""

    def __init__(self, stream: Stream, max_passes: int | None = None):
        self.stream = stream
        self.max_passes = max_passes
        self.passes_opened = 0

    def open(self) -> Iterator[StreamEvent]:
        if self.max_passes is not None and self.passes_opened >= self.max_passes:
            raise PassLimitError(
                f"source allows {self.max_passes} passes; another was requested"
            )
        self.passes_opened += 1
        return iter(self.stream.events)


def to_insertion_stream(
    g: Graph, order: str = "as-given", seed: int | None = None
) -> Stream:
    """One +1 event per edge, in sorted-edge order or a seeded shuffle."""
    edges = sorted(g.edges)
    if order == "shuffled":
        rng = rng_for(seed, 1)
        perm = rng.permutation(len(edges))
        edges = [edges[i] for i in perm]
    elif order != "as-given":
        raise ArgumentError(f"unknown order {order!r}")
    return Stream(g.n, INSERTION, [StreamEvent(u, v, 1) for u, v in edges])


def to_dynamic_stream(
    g: Graph, extra_pairs: int = 0, cycles: int = 1, seed: int | None = None
) -> Stream:
    """A dynamic stream whose final graph equals `g`.

    Churn: `extra_pairs` non-edges each get `cycles` insert/delete rounds
    interleaved into the stream; the per-pair event order is preserved so
    every prefix keeps non-negative multiplicities.
    """
    if extra_pairs < 0 or cycles < 0:
        raise ArgumentError("churn parameters must be >= 0")
    rng = rng_for(seed, 2)
    base = [(u, v) for u, v in sorted(g.edges)]
    churn: list[tuple[int, int]] = []
    if extra_pairs and cycles:
        churn = _sample_non_edges(g, extra_pairs, rng)
    # tokens: each real edge is one +1; each churn pair contributes the
    # fixed sequence (+1, -1) * cycles
    sequences: list[list[StreamEvent]] = [
        [StreamEvent(u, v, 1)] for u, v in base
    ]
    for u, v in churn:
        seq = []
        for _ in range(cycles):
            seq.append(StreamEvent(u, v, 1))
            seq.append(StreamEvent(u, v, -1))
        sequences.append(seq)
    slots: list[int] = []
    for idx, seq in enumerate(sequences):
        slots.extend([idx] * len(seq))
    if slots:
        order = rng.permutation(len(slots))
        cursors = [0] * len(sequences)
        events = []
        for pos in order:
            idx = slots[pos]
            events.append(sequences[idx][cursors[idx]])
            cursors[idx] += 1
    else:
        events = []
    return Stream(g.n, DYNAMIC, events)


def _sample_non_edges(
    g: Graph, count: int, rng
) -> list[tuple[int, int]]:
    """`count` distinct non-edges of `g`, sampled uniformly by rejection."""
    n = g.n
    max_pairs = n * (n - 1) // 2
    available = max_pairs - g.num_edges
    if count > available:
        raise ArgumentError(
            f"requested {count} churn pairs but only {available} non-edges exist"
        )
    chosen: set[tuple[int, int]] = set()
    out = []
    while len(out) < count:
        u = int(rng.integers(0, n))
        v = int(rng.integers(0, n))
        if u == v:
            continue
        e = (u, v) if u < v else (v, u)
        if e in g.edges or e in chosen:
            continue
        chosen.add(e)
        out.append(e)
    return out


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

STREAM_HEADER = "#stream v1"


def write_stream(stream: Stream, path: str) -> None:
    """Stream text format: header, then ``<u> <v> <+1|-1>`` per event (u < v)."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"{STREAM_HEADER} n={stream.n} model={stream.model}\n")
        for ev in stream.events:
            u, v = ev.pair()
            f.write(f"{u} {v} {'+1' if ev.delta > 0 else '-1'}\n")


def read_stream(path: str) -> Stream:
    with open(path, "r", encoding="utf-8") as f:
        lines = f.read().splitlines()
    if not lines or not lines[0].startswith(STREAM_HEADER):
        raise FormatError(f"missing '{STREAM_HEADER}' header", line=1)
    header: dict[str, str] = {}
    for token in lines[0][len(STREAM_HEADER) :].split():
        if "=" not in token:
            raise FormatError(f"bad header token {token!r}", line=1)
        key, val = token.split("=", 1)
        header[key] = val
    try:
        n = int(header["n"])
        model = header["model"]
    except (KeyError, ValueError):
        raise FormatError("header must carry n=<N> model=<ins|dyn>", line=1)
    if model not in (INSERTION, DYNAMIC):
        raise FormatError(f"unknown model {model!r}", line=1)
    events = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 3:
            raise FormatError(f"expected '<u> <v> <+1|-1>', got {line!r}", line=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"non-integer endpoint in {line!r}", line=lineno)
        if parts[2] == "+1":
            delta = 1
        elif parts[2] == "-1":
            delta = -1
        else:
            raise FormatError(f"delta must be +1 or -1, got {parts[2]!r}", line=lineno)
        if u == v:
            raise FormatError(f"self-loop {u} {v}", line=lineno)
        if min(u, v) < 0 or max(u, v) >= n:
            raise FormatError(f"pair ({u}, {v}) out of range for n={n}", line=lineno)
        a, b = (u, v) if u < v else (v, u)
        events.append(StreamEvent(a, b, delta))
    return Stream(n, model, events)
