"""Separability bounds from clique numbers of cut-commutativity graphs.

For a fixed partition, a state that is a product across the cut can
saturate a family of members only when they pairwise cut-commute, so the
clique number of the cut-commutativity graph bounds the criterion value
on that partition's product states.  Mixing cannot help: a convex
combination never beats its best component, so the bound for a whole
separability class is the maximum clique number over the partitions the
class contains.  States with no separability restriction are governed by
the plain commutativity graph instead: its clique number is reachable by
a common eigenstate, and the chromatic number caps every state because
each colour class is a pairwise anticommuting family contributing at
most 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .cuts import (
    Partition,
    canonical_representative,
    cut_commute,
    enumerate_bipartitions,
    permute_partition,
    symmetry_group,
)
from .errors import CapExceeded
from .graphs import (
    CLIQUE_VERTEX_CAP,
    COLOR_VERTEX_CAP,
    build_graph,
    chromatic_number,
    max_clique,
)
from .pauli import OperatorSet, PauliString, format_pauli, permute

QUANTUM_CONSISTENCY_TOL = 1e-6


@dataclass(frozen=True)
class SeparabilityClass:
    """A family of partitions whose product states define a state class."""

    kind: str  # "full_separability", "any_bipartition", or "explicit"
    parts: tuple[Partition, ...] = ()

    @classmethod
    def full_separability(cls) -> "SeparabilityClass":
        return cls("full_separability")

    @classmethod
    def any_bipartition(cls) -> "SeparabilityClass":
        """Mixtures of states product across some two-block cut; the
        complement of this class is genuine multipartite entanglement."""
        return cls("any_bipartition")

    @classmethod
    def explicit(cls, *parts: Partition) -> "SeparabilityClass":
        if not parts:
            raise ValueError("explicit class needs at least one partition")
        return cls("explicit", tuple(sorted(set(parts))))

    def partitions(self, width: int) -> list[Partition]:
        if self.kind == "full_separability":
            return [Partition.finest(width)]
        if self.kind == "any_bipartition":
            return enumerate_bipartitions(width)
        for part in self.parts:
            if part.width != width:
                raise ValueError(
                    f"class partition width {part.width} does not match {width}"
                )
        return list(self.parts)


@dataclass(frozen=True)
class PartitionBound:
    """Bound for one partition, with its witness clique and orbit tag."""

    bound: int
    witness: tuple[str, ...]
    orbit: Partition


@dataclass(frozen=True, eq=False)
class BoundReport:
    """Full criterion report for one operator set."""

    sigma: tuple[str, ...]
    width: int
    per_partition: dict
    class_bounds: dict
    quantum_lower: int
    quantum_witness: tuple[str, ...]
    quantum_upper: int | None
    notes: tuple[str, ...] = field(default=())

    def to_json_obj(self) -> dict:
        return {
            "sigma": list(self.sigma),
            "width": self.width,
            "partitions": [
                {
                    "partition": str(part),
                    "orbit": str(row.orbit),
                    "bound": row.bound,
                    "witness": list(row.witness),
                }
                for part, row in self.per_partition.items()
            ],
            "class_bounds": dict(self.class_bounds),
            "quantum": {
                "lower": self.quantum_lower,
                "witness": list(self.quantum_witness),
                "upper": self.quantum_upper,
            },
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2)


@dataclass(frozen=True)
class Claim:
    """One certified exclusion: the state lies outside the named class."""

    claim: str
    threshold: float


@dataclass(frozen=True)
class Verdict:
    """Classification of a measured criterion value against a report."""

    q_value: float
    claims: tuple[Claim, ...]
    warnings: tuple[str, ...] = ()

    def to_json_obj(self) -> dict:
        return {
            "q_value": self.q_value,
            "claims": [
                {"claim": c.claim, "threshold": c.threshold} for c in self.claims
            ],
            "warnings": list(self.warnings),
        }


def _verify_cut_clique(
    members: tuple[PauliString, ...], part: Partition
) -> None:
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            if not cut_commute(a, b, part):
                raise RuntimeError("bound witness failed the cut relation check")


def bound_for_partition(
    sigma: OperatorSet, part: Partition, cap: int = CLIQUE_VERTEX_CAP
) -> tuple[int, tuple[PauliString, ...]]:
    """Criterion bound for states product across one partition.

    Returns the clique number of the cut-commutativity graph and the
    witness members, re-verified against the cut relation.
    """
    g = build_graph(sigma, part, "commute")
    result = max_clique(g, cap)
    witness = tuple(sigma.members[i] for i in result.witness)
    _verify_cut_clique(witness, part)
    return result.size, witness


def bound_for_class(
    sigma: OperatorSet, cls: SeparabilityClass, cap: int = CLIQUE_VERTEX_CAP
) -> int:
    """Largest partition bound over the class; valid for mixtures too."""
    parts = cls.partitions(sigma.width)
    if not parts:
        raise ValueError("class contains no partitions")
    try:
        group = symmetry_group(sigma)
    except CapExceeded:
        group = [tuple(range(sigma.width))]
    best = 0
    seen: dict[Partition, int] = {}
    for part in parts:
        rep = canonical_representative(part, group)
        if rep not in seen:
            seen[rep] = bound_for_partition(sigma, rep, cap)[0]
        best = max(best, seen[rep])
    return best


def quantum_bounds(
    sigma: OperatorSet,
    *,
    coloring: bool = True,
    clique_cap: int = CLIQUE_VERTEX_CAP,
    color_cap: int = COLOR_VERTEX_CAP,
) -> tuple[int, int | None]:
    """Reachable lower bound and optional colouring upper bound, no cut.

    The lower value is attained by a common eigenstate of the witness
    clique; the upper value holds for every state of the right width.
    """
    g = build_graph(sigma, Partition.single_block(sigma.width), "commute")
    lower = max_clique(g, clique_cap).size
    upper = chromatic_number(g, color_cap)[0] if coloring else None
    return lower, upper


def _invert(perm: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(perm)
    for i, p in enumerate(perm):
        out[p] = i
    return tuple(out)


def criteria_report(
    sigma: OperatorSet,
    *,
    quantum_upper: bool = False,
    clique_cap: int = CLIQUE_VERTEX_CAP,
    color_cap: int = COLOR_VERTEX_CAP,
) -> BoundReport:
    """Bounds for the finest partition and every bipartition, plus the
    no-cut quantum values, with orbit pruning under the set's symmetries."""
    width = sigma.width
    notes: list[str] = []
    try:
        group = symmetry_group(sigma)
    except CapExceeded:
        group = [tuple(range(width))]
        notes.append("symmetry search skipped: width over cap, orbits not pruned")

    parts: list[Partition] = [Partition.finest(width)]
    if width >= 2:
        # at width 2 the finest partition is the one bipartition
        parts.extend(p for p in enumerate_bipartitions(width) if p not in parts)

    cache: dict[Partition, tuple[int, tuple[PauliString, ...]]] = {}
    per_partition: dict[Partition, PartitionBound] = {}
    orbit_count = 0
    for part in parts:
        rep = None
        rep_g = None
        for g in group:
            image = permute_partition(part, g)
            if rep is None or image < rep:
                rep, rep_g = image, g
        if rep not in cache:
            cache[rep] = bound_for_partition(sigma, rep, clique_cap)
            orbit_count += 1
        bound, rep_witness = cache[rep]
        back = _invert(rep_g)
        witness = tuple(
            sorted(format_pauli(permute(m, back)) for m in rep_witness)
        )
        _verify_cut_clique(
            tuple(permute(m, back) for m in rep_witness), part
        )
        per_partition[part] = PartitionBound(bound, witness, rep)

    finest = Partition.finest(width)
    class_bounds: dict[str, int] = {
        "full_separability": per_partition[finest].bound
    }
    if width >= 2:
        class_bounds["any_bipartition"] = max(
            per_partition[p].bound for p in enumerate_bipartitions(width)
        )

    plain = build_graph(sigma, Partition.single_block(width), "commute")
    clique = max_clique(plain, clique_cap)
    upper = chromatic_number(plain, color_cap)[0] if quantum_upper else None

    notes.append(
        f"symmetry group order {len(group)}; "
        f"{len(parts)} partitions in {orbit_count} orbits"
    )
    notes.append(
        "class bounds take the maximum over member partitions; "
        "mixing never exceeds the best component"
    )
    if upper is not None:
        notes.append(
            f"colouring upper bound {upper}: no state of this width exceeds it"
        )

    return BoundReport(
        sigma=sigma.texts(),
        width=width,
        per_partition=per_partition,
        class_bounds=class_bounds,
        quantum_lower=clique.size,
        quantum_witness=tuple(plain.labels[i] for i in clique.witness),
        quantum_upper=upper,
        notes=tuple(notes),
    )


def classify(q_value: float, report: BoundReport) -> Verdict:
    """Turn a measured criterion value into exclusion claims.

    A claim appears only when the value strictly exceeds the bound; equal
    values certify nothing.  A value above the no-cut reachable maximum
    earns a warning, since no state of the declared width can get there.
    """
    if q_value < 0:
        raise ValueError(f"criterion value cannot be negative, got {q_value}")
    claims: list[Claim] = []
    full = report.class_bounds.get("full_separability")
    if full is not None and q_value > full:
        claims.append(Claim("entangled (not fully separable)", float(full)))
    finest = Partition.finest(report.width)
    for part, row in report.per_partition.items():
        if part == finest:
            continue
        if q_value > row.bound:
            claims.append(
                Claim(f"not separable w.r.t. {part}", float(row.bound))
            )
    genuine = report.class_bounds.get("any_bipartition")
    if genuine is not None and q_value > genuine:
        claims.append(
            Claim("genuinely multipartite entangled", float(genuine))
        )
    warnings: tuple[str, ...] = ()
    if q_value > report.quantum_lower + QUANTUM_CONSISTENCY_TOL:
        warnings = (
            f"value {q_value} exceeds the no-cut maximum "
            f"{report.quantum_lower}; check the inputs",
        )
    return Verdict(q_value, tuple(claims), warnings)
