"""Constructive search for the Fano plane under a co-degree condition.

Pipeline: find a vertex-disjoint ring blow-up ``R_t(2)``; for every
ring vertex take the co-neighbourhood ``C_v`` of its clone pair; pick a
hub lying in more than ``t`` of the ``2t`` sets; since every ``t + 1``
ring vertices span a ring edge, the hub and the three clone pairs of
such an edge form ``F*``, which contains the Fano plane.

When ``delta_2(G) >= n//2 + 1`` the sets satisfy
``sum |C_v| >= 2t (n//2 + 1) > t n`` and pigeonhole produces the hub.
At desk scale that is a best-effort guarantee, so failures are reported
with the stage at which the pipeline stopped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .certify import check_embedding, check_fstar
from .constructions import build_fano, build_fstar, ring_edges
from .embedding import Embedding, find_embedding
from .errors import IntegrityError, InvalidInputError
from .hypergraph import TripleGraph, co_neighborhood, min_l_degree
from .ringsearch import RingBlowupWitness, find_ring_blowup

__all__ = [
    "HubCertificate",
    "FStarWitness",
    "FanoResult",
    "compute_c_sets",
    "c_set_total",
    "find_hub",
    "extract_fstar",
    "find_fano",
    "STAGE_NO_RING",
    "STAGE_NO_HUB",
]

STAGE_NO_RING = "no-ring-blowup"
STAGE_NO_HUB = "no-hub"


@dataclass(frozen=True)
class HubCertificate:
    u_star: int
    hit_positions: tuple[int, ...]
    c_sizes: tuple[int, ...]


@dataclass(frozen=True)
class FStarWitness:
    """Hub ``u`` and clone pairs ``((x, x'), (y, y'), (z, z'))`` spanning ``F*``."""

    u: int
    pairs: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]
    edges: tuple[tuple[int, int, int], ...]

    def fstar_mapping(self) -> tuple[int, ...]:
        """Host images in the vertex layout of ``build_fstar``: ``(u, x, y, z, x', y', z')``."""
        (x, x2), (y, y2), (z, z2) = self.pairs
        return (self.u, x, y, z, x2, y2, z2)

    def to_dict(self) -> dict:
        return {"u": self.u, "pairs": [list(p) for p in self.pairs], "edges": [list(e) for e in self.edges]}


@dataclass
class FanoResult:
    found: bool
    target: str
    stage: str | None = None
    embedding: Embedding | None = None
    fstar: FStarWitness | None = None
    ring: RingBlowupWitness | None = None
    hub: HubCertificate | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        witness = None
        if self.found:
            witness = {
                "target": self.target,
                "mapping": list(self.embedding.mapping),
                "fstar": self.fstar.to_dict(),
                "ring_t": self.ring.t,
                "ring_pairs": [[list(X), list(Y)] for X, Y in self.ring.positions],
                "hub": self.hub.u_star,
                "hit_positions": list(self.hub.hit_positions),
            }
        return {"found": self.found, "stage": self.stage, "witness": witness, "details": self.details}


def compute_c_sets(G: TripleGraph, w: RingBlowupWitness) -> dict[int, frozenset[int]]:
    """Co-neighbourhood of each clone pair, keyed by ring position (``2i`` for ``x_i``, ``2i + 1`` for ``y_i``)."""
    return {pos: co_neighborhood(G, *pair) for pos, pair in enumerate(w.clone_pairs())}


def c_set_total(c_sets: dict[int, frozenset[int]]) -> int:
    return sum(len(c) for c in c_sets.values())


def find_hub(c_sets: dict[int, frozenset[int]], t: int, exclude=()) -> HubCertificate | None:
    """Smallest vertex outside ``exclude`` lying in at least ``t + 1`` of the sets."""
    if len(c_sets) != 2 * t:
        raise InvalidInputError(f"expected {2 * t} sets, got {len(c_sets)}")
    excluded = set(exclude)
    hits: dict[int, list[int]] = {}
    for pos in sorted(c_sets):
        for v in c_sets[pos]:
            hits.setdefault(v, []).append(pos)
    sizes = tuple(len(c_sets[p]) for p in sorted(c_sets))
    for v in sorted(hits):
        if v in excluded:
            continue
        if len(hits[v]) > t:
            return HubCertificate(v, tuple(hits[v]), sizes)
    return None


@lru_cache(maxsize=1)
def _fano_in_fstar() -> tuple[int, ...]:
    emb = find_embedding(build_fano(), build_fstar())
    assert emb is not None
    return emb.mapping


def extract_fstar(G: TripleGraph, w: RingBlowupWitness, hub: HubCertificate) -> FStarWitness:
    t = w.t
    if len(hub.hit_positions) < t + 1:
        raise InvalidInputError("hub must hit at least t + 1 ring positions")
    hit = set(hub.hit_positions)
    edge = next((e for e in ring_edges(t) if set(e) <= hit), None)
    if edge is None:
        raise IntegrityError(f"no ring edge inside positions {sorted(hit)} for t={t}")
    pairs = w.clone_pairs()
    trio = tuple(pairs[p] for p in edge)
    u = hub.u_star
    (x, x2), (y, y2), (z, z2) = trio
    edges = [tuple(sorted((a, b, c))) for a in (x, x2) for b in (y, y2) for c in (z, z2)]
    edges += [tuple(sorted((u, p, q))) for p, q in trio]
    for e in edges:
        if len(set(e)) < 3 or not G.has_edge(*e):
            raise IntegrityError(f"F* witness needs missing edge {e}")
    return FStarWitness(u, trio, tuple(edges))


def find_fano(G: TripleGraph, target: str = "fano", t_max: int = 9) -> FanoResult:
    """Run the ring blow-up / hub pipeline and return a verified copy of ``target``.

    ``target`` is ``"fano"`` (default) or ``"fstar"``.
    """
    if target not in ("fano", "fstar"):
        raise InvalidInputError(f"target must be 'fano' or 'fstar', got {target!r}")
    n = G.n
    d2 = min_l_degree(G, 2)
    details = {"n": n, "min_codegree": d2, "codegree_threshold": n // 2 + 1}
    ring = find_ring_blowup(G, t_max)
    if ring is None:
        return FanoResult(False, target, STAGE_NO_RING, details=details)
    t = ring.t
    c_sets = compute_c_sets(G, ring)
    total = c_set_total(c_sets)
    details.update(
        ring_t=t,
        c_total=total,
        c_total_required=2 * t * (n // 2 + 1),
        pigeonhole_margin=total - t * n,
    )
    hub = find_hub(c_sets, t, exclude=ring.vertices())
    unrestricted = find_hub(c_sets, t)
    details["hub_exclusion_changed_outcome"] = (hub is None) != (unrestricted is None)
    if hub is None:
        return FanoResult(False, target, STAGE_NO_HUB, ring=ring, details=details)
    fstar = extract_fstar(G, ring, hub)
    if not check_fstar(G, fstar):
        raise IntegrityError("F* witness failed re-verification")
    fmap = fstar.fstar_mapping()
    if target == "fstar":
        mapping = fmap
        pattern = build_fstar()
    else:
        mapping = tuple(fmap[v] for v in _fano_in_fstar())
        pattern = build_fano()
    if not check_embedding(pattern, G, mapping):
        raise IntegrityError(f"{target} embedding failed re-verification")
    return FanoResult(True, target, None, Embedding(mapping), fstar, ring, hub, details)
