"""Independent numerical maximization of the criterion value.

These searches never consult the graph machinery.  The product-state
search runs cyclic block-coordinate ascent over explicit block factors;
the global search runs a safeguarded self-consistent iteration on the
full state vector.  Agreement between an oracle maximum and a clique
bound is therefore evidence for both, not circularity.

Tolerances are deliberately split: saturation (did the optimizer reach
the bound) is judged at 1e-3, soundness (did it exceed the bound, which
must never happen) at 1e-6.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import bound_for_partition
from .cuts import Partition
from .errors import CapExceeded
from .pauli import OperatorSet, restrict, to_matrix
from .states import (
    PURE_QUBIT_CAP,
    QuantumState,
    assemble_product,
    evaluate_q,
    pauli_action,
)

GLOBAL_QUBIT_CAP = 10
PRODUCT_BLOCK_CAP = 6

SATURATION_TOL = 1e-3
SOUNDNESS_TOL = 1e-6

_ARMIJO = 1e-4


@dataclass(frozen=True)
class OracleConfig:
    """Restart and convergence policy; deterministic for a fixed seed."""

    restarts: int = 64
    max_iterations: int = 2000
    convergence_tol: float = 1e-9
    seed: int = 0

    def __post_init__(self) -> None:
        if self.restarts < 1:
            raise ValueError(f"restarts must be positive, got {self.restarts}")
        if self.max_iterations < 1:
            raise ValueError(
                f"max_iterations must be positive, got {self.max_iterations}"
            )
        if self.convergence_tol <= 0:
            raise ValueError(
                f"convergence_tol must be positive, got {self.convergence_tol}"
            )


@dataclass(frozen=True, eq=False)
class OracleResult:
    """Best value found, the state that reached it, and search accounting.

    ``converged`` reports whether the winning restart met the convergence
    tolerance before exhausting its iteration budget; ``iterations_used``
    counts ascent sweeps across all restarts.
    """

    best_value: float
    best_state: QuantumState
    iterations_used: int
    converged: bool


def _random_unit(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.standard_normal(dim) + 1.0j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


# Backtracking ladder: halve from 1.0 down to about 1e-10.
_ALPHAS = 0.5 ** np.arange(34)


def _block_ascent(
    mats: np.ndarray,
    weights: np.ndarray,
    u: np.ndarray,
    exps: np.ndarray,
    gain_floor: float,
    max_steps: int = 40,
) -> tuple[np.ndarray, np.ndarray]:
    """Projected gradient ascent on f(u) = sum_s w_s <u|A_s|u>^2.

    Each step takes the first ladder step size passing an Armijo
    sufficient-increase test, so f never decreases; the whole ladder is
    evaluated in one vectorized pass.  Stops on a vanishing projected
    gradient, an exhausted ladder, or a step gain below gain_floor.
    """
    member_count, dim = mats.shape[0], mats.shape[1]
    flat = mats.reshape(member_count * dim, dim)
    value = float(np.sum(weights * exps * exps))
    for _ in range(max_steps):
        moved = mats @ u  # row s holds A_s u
        exps = (moved @ u.conj()).real
        grad = 4.0 * ((weights * exps) @ moved)
        grad = grad - np.vdot(u, grad).real * u
        gsq = float(np.vdot(grad, grad).real)
        if gsq <= 1e-16:
            break
        cands = u[None, :] + _ALPHAS[:, None] * grad[None, :]
        cands = cands / np.linalg.norm(cands, axis=1)[:, None]
        # One gemm covers the whole ladder: (K, m, d) holds every A_s c_k.
        moved_all = (flat @ cands.T).T.reshape(-1, member_count, dim)
        cand_exps = np.sum(moved_all * cands.conj()[:, None, :], axis=2).real
        values = np.sum(weights * cand_exps * cand_exps, axis=1)
        passing = values >= value + _ARMIJO * _ALPHAS * gsq
        first = int(np.argmax(passing))
        if not passing[first]:
            break
        gain = float(values[first]) - value
        u = cands[first]
        exps = cand_exps[first]
        value = float(values[first])
        if gain <= gain_floor:
            break
    return u, exps


def maximize_q_product(
    sigma: OperatorSet, part: Partition, config: OracleConfig | None = None
) -> OracleResult:
    """Best criterion value over pure states product across the partition.

    Per restart: draw one Haar-random factor per block, then sweep the
    blocks cyclically, lifting each factor by projected gradient ascent
    with the others frozen, until the sweep gain drops below the
    convergence tolerance.
    """
    if config is None:
        config = OracleConfig()
    if sigma.width != part.width:
        raise ValueError(
            f"partition width {part.width} does not match operator width {sigma.width}"
        )
    if sigma.width > PURE_QUBIT_CAP:
        raise CapExceeded(
            f"product search on width {sigma.width} exceeds cap {PURE_QUBIT_CAP}"
        )
    for block in part.blocks:
        if len(block) > PRODUCT_BLOCK_CAP:
            raise CapExceeded(
                f"block {block} exceeds size cap {PRODUCT_BLOCK_CAP}"
            )

    blocks = part.blocks
    mats = [
        np.stack([to_matrix(restrict(s, block)) for s in sigma.members])
        for block in blocks
    ]
    member_count = len(sigma)
    rng = np.random.default_rng(config.seed)

    best_value = -1.0
    best_factors: list[np.ndarray] | None = None
    best_converged = False
    sweeps_total = 0

    for _ in range(config.restarts):
        factors = [_random_unit(rng, 1 << len(b)) for b in blocks]
        exps = np.empty((len(blocks), member_count))
        for bi in range(len(blocks)):
            exps[bi] = np.einsum(
                "i,sij,j->s", factors[bi].conj(), mats[bi], factors[bi]
            ).real
        prod = np.prod(exps, axis=0)
        value = float(np.sum(prod * prod))
        converged = False
        for _ in range(config.max_iterations):
            sweeps_total += 1
            floor = 0.1 * config.convergence_tol * max(1.0, abs(value))
            for bi in range(len(blocks)):
                others = np.prod(np.delete(exps, bi, axis=0), axis=0)
                factors[bi], exps[bi] = _block_ascent(
                    mats[bi], others * others, factors[bi], exps[bi], floor
                )
            prod = np.prod(exps, axis=0)
            new_value = float(np.sum(prod * prod))
            gain = new_value - value
            value = new_value
            if gain <= config.convergence_tol * max(1.0, abs(value)):
                converged = True
                break
        if value > best_value:
            best_value = value
            best_factors = [f.copy() for f in factors]
            best_converged = converged

    assert best_factors is not None
    state = assemble_product(part, best_factors)
    final = evaluate_q(state, sigma).value
    return OracleResult(final, state, sweeps_total, best_converged)


def maximize_q_global(
    sigma: OperatorSet, config: OracleConfig | None = None
) -> OracleResult:
    """Best criterion value over all pure states of matching width.

    Self-consistent iteration: move toward sum_s <s> s|psi>, accept only
    when Q does not decrease, otherwise fall back to a projected gradient
    step with backtracking.  Restarts diversify the landscape.
    """
    if config is None:
        config = OracleConfig()
    width = sigma.width
    if width > GLOBAL_QUBIT_CAP:
        raise CapExceeded(
            f"global search on width {width} exceeds cap {GLOBAL_QUBIT_CAP}"
        )
    dim = 1 << width

    idx = np.arange(dim)
    perms = np.empty((len(sigma), dim), dtype=np.int64)
    phases = np.empty((len(sigma), dim), dtype=complex)
    for k, member in enumerate(sigma.members):
        flip, phase = pauli_action(member)
        perms[k] = idx ^ flip
        phases[k] = phase

    def survey(psi: np.ndarray) -> tuple[float, np.ndarray, np.ndarray]:
        moved = phases * psi[perms]  # row k holds s_k |psi>
        exps = (moved @ psi.conj()).real
        return float(np.sum(exps * exps)), exps, moved

    rng = np.random.default_rng(config.seed)
    best_value = -1.0
    best_vec: np.ndarray | None = None
    best_converged = False
    steps_total = 0

    for _ in range(config.restarts):
        psi = _random_unit(rng, dim)
        value, exps, moved = survey(psi)
        converged = False
        for _ in range(config.max_iterations):
            steps_total += 1
            previous = value
            target = exps @ moved  # sum_s <s> s|psi>
            # spectral shift: sum_s <s> s can have a symmetric spectrum, in
            # which case plain power iteration never damps the negative
            # branch; sqrt(m Q) dominates its norm and keeps fixed points
            shift = float(np.sqrt(len(sigma.members) * max(value, 0.0)))
            target = target + shift * psi
            tn = float(np.linalg.norm(target))
            if tn > 1e-12:
                cand = target / tn
                cand_value, cand_exps, cand_moved = survey(cand)
                if cand_value >= value:
                    psi, value, exps, moved = cand, cand_value, cand_exps, cand_moved
            scale = max(1.0, abs(value))
            if value - previous > config.convergence_tol * scale:
                continue
            # stalled: a small sweep gain alone is no proof of a critical
            # point, so insist the gradient is exhausted too
            target = exps @ moved
            grad = 4.0 * (target - value * psi)
            gsq = float(np.vdot(grad, grad).real)
            if gsq <= 1e-18:
                converged = True
                break
            stepped = False
            alpha = 1.0
            while alpha >= 1e-10:
                cand = psi + alpha * grad
                cand = cand / np.linalg.norm(cand)
                cand_value, cand_exps, cand_moved = survey(cand)
                if cand_value >= value + _ARMIJO * alpha * gsq:
                    psi, value, exps, moved = (
                        cand,
                        cand_value,
                        cand_exps,
                        cand_moved,
                    )
                    stepped = True
                    break
                alpha *= 0.5
            if not stepped or value - previous <= config.convergence_tol * scale:
                converged = True
                break
        if value > best_value:
            best_value = value
            best_vec = psi.copy()
            best_converged = converged

    assert best_vec is not None
    state = QuantumState.pure(best_vec)
    final = evaluate_q(state, sigma).value
    return OracleResult(final, state, steps_total, best_converged)


@dataclass(frozen=True)
class VerificationRecord:
    """Graph bound vs oracle maximum for one partition."""

    partition: Partition
    graph_bound: int
    oracle_value: float
    gap: float
    saturated: bool
    violation: bool

    def to_json_obj(self) -> dict:
        return {
            "partition": str(self.partition),
            "graph_bound": self.graph_bound,
            "oracle_value": self.oracle_value,
            "gap": self.gap,
            "saturated": self.saturated,
            "violation": self.violation,
        }


def verify_bound(
    sigma: OperatorSet, part: Partition, config: OracleConfig | None = None
) -> VerificationRecord:
    """Compare the clique bound with the oracle's product-state maximum.

    A violation (oracle above the bound beyond arithmetic tolerance)
    means one of the two routes is defective and must fail loudly in any
    test that sees it.
    """
    bound = bound_for_partition(sigma, part)[0]
    result = maximize_q_product(sigma, part, config)
    gap = bound - result.best_value
    return VerificationRecord(
        partition=part,
        graph_bound=bound,
        oracle_value=result.best_value,
        gap=gap,
        saturated=gap <= SATURATION_TOL,
        violation=result.best_value > bound + SOUNDNESS_TOL,
    )
