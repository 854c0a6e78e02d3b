"""Seeded Monte Carlo simulation of the detection protocol.

Per trial: draw a uniform state of the stabilized subspace, hit it with an
i.i.d. depolarizing error, Born-measure against (P, I - P), and classify the
outcome.  The "nonstabilizer" protocol adds a second measurement against
(vv*, P - vv*) that distinguishes "came back to the transmitted state" from
"landed on an orthogonal code state"; the stabilizer protocol decides the
same question by collinearity of the post-measurement state with v.

Randomness comes from numpy's PCG64; shard s of a run draws from
SeedSequence(seed, spawn_key=(s,)).  Reports are bit-for-bit reproducible
for a fixed (seed, trials, shard count), whether or not shards are ever run
in parallel.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .gf4 import AdditiveCode, GF4Vector
from .oracle import (DEFAULT_ORACLE_CAP, DenseOperator, code_projector,
                     pauli_matrix, uniform_state)

PROTOCOLS = ("stabilizer", "nonstabilizer")

# |<z, v>|^2 above this counts as "the same state"; collinearity is exact in
# theory and only float noise away from it in practice.
_COLLINEAR = 1 - 1e-9

_BORN_TOL = 1e-9


@dataclass(frozen=True)
class SimReport:
    protocol: str
    p: float
    trials: int
    seed: int
    shards: int
    estimate: float
    stderr: float
    undetected_count: int
    detected_count: int
    trivial_count: int

    def to_dict(self) -> dict:
        return {
            "protocol": self.protocol,
            "p": self.p,
            "trials": self.trials,
            "seed": self.seed,
            "shards": self.shards,
            "estimate": self.estimate,
            "stderr": self.stderr,
            "counts": {
                "undetected": self.undetected_count,
                "detected": self.detected_count,
                "trivial": self.trivial_count,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def sample_error(n: int, p: float, rng: np.random.Generator) -> GF4Vector:
    """One depolarizing-channel error: each position is hit independently
    with probability p and then uniform over the three nonzero symbols."""
    if not 0 <= p <= 0.75:
        raise ValueError(f"depolarizing probability {p} outside [0, 3/4]")
    x = z = 0
    hit = rng.random(n) < p
    kinds = rng.integers(0, 3, size=n)
    for q in range(n):
        if hit[q]:
            xb, zb = ((1, 0), (0, 1), (1, 1))[kinds[q]]
            x |= xb << q
            z |= zb << q
    return GF4Vector(n, x, z)


def measure(state: np.ndarray, projectors, rng: np.random.Generator):
    """Born-rule measurement: pick projector i with probability <v|P_i|v>.

    Returns (i, normalized post-measurement state).  The outcome
    probabilities must sum to 1 within 1e-9.
    """
    probs = [float(np.real(np.vdot(state, p @ state))) for p in projectors]
    total = math.fsum(probs)
    if abs(total - 1.0) > _BORN_TOL:
        raise ValueError(f"measurement probabilities sum to {total}, not 1")
    u = rng.random()
    acc = 0.0
    index = max(range(len(probs)), key=probs.__getitem__)  # float-slack fallback
    for i, pr in enumerate(probs):
        acc += pr
        if u < acc:
            index = i
            break
    post = projectors[index] @ state
    return index, post / math.sqrt(probs[index])


def simulate(code: AdditiveCode, p: float, trials: int,
             protocol: str = "stabilizer", seed: int = 0, shards: int = 1,
             cap: int = DEFAULT_ORACLE_CAP) -> SimReport:
    """Run the full transmission-and-measurement protocol and count outcomes."""
    if protocol not in PROTOCOLS:
        raise ValueError(f"unknown protocol {protocol!r}")
    if trials < 1:
        raise ValueError("trials must be positive")
    if shards < 1:
        raise ValueError("shards must be positive")
    if not 0 <= p <= 0.75:
        raise ValueError(f"depolarizing probability {p} outside [0, 3/4]")

    p_op = code_projector(code, cap)
    dim_total = p_op.shape[0]
    identity = np.eye(dim_total, dtype=complex)
    p_perp = identity - p_op
    err_cache: dict[tuple[int, int], DenseOperator] = {}

    base, extra = divmod(trials, shards)
    undetected = detected = trivial = 0
    for shard in range(shards):
        m = base + (1 if shard < extra else 0)
        if m == 0:
            continue
        rng = np.random.Generator(np.random.PCG64(
            np.random.SeedSequence(seed, spawn_key=(shard,))))
        for _ in range(m):
            v = uniform_state(p_op, rng)
            e = sample_error(code.n, p, rng)
            key = (e.x, e.z)
            if key not in err_cache:
                err_cache[key] = pauli_matrix(e, cap)
            w = err_cache[key] @ v

            # For a stabilizer code the first measurement never splits.
            prob_code = float(np.real(np.vdot(w, p_op @ w)))
            if min(prob_code, 1 - prob_code) > _BORN_TOL:
                raise ValueError(
                    f"first measurement is not deterministic "
                    f"(probability {prob_code}); not a stabilizer setup")

            index, z = measure(w, (p_op, p_perp), rng)
            if index == 1:
                detected += 1
                continue
            if protocol == "stabilizer":
                if abs(np.vdot(z, v)) ** 2 > _COLLINEAR:
                    trivial += 1
                else:
                    undetected += 1
            else:
                vv = np.outer(v, v.conj())
                index2, _ = measure(z, (vv, p_op - vv), rng)
                if index2 == 0:
                    trivial += 1
                else:
                    undetected += 1

    estimate = undetected / trials
    stderr = math.sqrt(estimate * (1 - estimate) / trials)
    return SimReport(protocol, p, trials, seed, shards, estimate, stderr,
                     undetected, detected, trivial)
