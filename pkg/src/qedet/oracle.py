"""Dense complex-matrix ground truth for small qubit counts.

Everything the combinatorial modules compute can be recomputed here from
2^n x 2^n matrices: Pauli tensor products (with explicit phase tracking,
which the bit-plane representation deliberately drops), stabilizer
projectors, the trace-formula weight enumerators, the three-way error
classification, partial traces, uniform sampling on the stabilized
subspace, and exact or Monte Carlo evaluation of the undetected-error
functionals.  All of it is capped at a handful of qubits by design.

Sharded Monte Carlo estimators draw shard s from
numpy's PCG64 seeded with SeedSequence(seed, spawn_key=(s,)), so results
are reproducible for a fixed (seed, shard count).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gf4 import AdditiveCode, GF4Vector, all_vectors, trace_inner
from .enumerators import EnumeratorPair

DenseOperator = np.ndarray

DEFAULT_ORACLE_CAP = 6
COMPOSITE_CAP = 4

_SINGLE = {
    (0, 0): np.eye(2, dtype=complex),
    (1, 0): np.array([[0, 1], [1, 0]], dtype=complex),
    (0, 1): np.array([[1, 0], [0, -1]], dtype=complex),
    (1, 1): np.array([[0, -1j], [1j, 0]], dtype=complex),
}

_PHASE_OF = {1 + 0j: 0, 1j: 1, -1 + 0j: 2, -1j: 3}


def _build_phase_table() -> dict:
    """Exponent e of i in M_a M_b = i^e M_(a+b), from the 2x2 matrices themselves."""
    table = {}
    for a, ma in _SINGLE.items():
        for b, mb in _SINGLE.items():
            c = (a[0] ^ b[0], a[1] ^ b[1])
            prod = ma @ mb
            mc = _SINGLE[c]
            i, j = np.argwhere(mc != 0)[0]
            ratio = prod[i, j] / mc[i, j]
            table[a, b] = _PHASE_OF[complex(round(ratio.real), round(ratio.imag))]
    return table


_PHASE_EXP = _build_phase_table()


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise ValueError(f"n={n} exceeds the dense oracle cap of {cap} qubits")


def pauli_matrix(v: GF4Vector, cap: int = DEFAULT_ORACLE_CAP) -> DenseOperator:
    """Kronecker product of single-qubit matrices, with the bare '+' phase."""
    _check_cap(v.n, cap)
    m = np.ones((1, 1), dtype=complex)
    for q in range(v.n):
        m = np.kron(m, _SINGLE[v.symbol(q)])
    return m


def error_probability(v: GF4Vector, p: float) -> float:
    """Depolarizing-channel probability (p/3)^wt (1-p)^(n-wt) of a given error."""
    return (p / 3) ** v.weight * (1 - p) ** (v.n - v.weight)


@dataclass(frozen=True)
class SignedPauliGroup:
    """Closure of commuting generators with tracked +-1 signs.

    Each element is a (sign, word) pair; the group is Abelian, contains the
    positive identity, and never contains minus the identity.
    """

    n: int
    elements: tuple[tuple[int, GF4Vector], ...]

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def rank(self) -> int:
        return self.size.bit_length() - 1


def _mul_phase(v1: GF4Vector, v2: GF4Vector) -> int:
    """Exponent of i picked up when multiplying the bare representatives."""
    exp = 0
    for q in range(v1.n):
        exp += _PHASE_EXP[v1.symbol(q), v2.symbol(q)]
    return exp & 3


def close_group(generators, n: int | None = None) -> SignedPauliGroup:
    """All products of the generators, each taken with sign +1.

    Raises if the generators do not pairwise commute or if the closure would
    contain minus the identity (possible only for dependent generators).
    """
    generators = list(generators)
    if n is None:
        if not generators:
            raise ValueError("empty generator list needs an explicit n")
        n = generators[0].n
    for g in generators:
        if g.n != n:
            raise ValueError("generator length mismatch")
    for i in range(len(generators)):
        for j in range(i + 1, len(generators)):
            if trace_inner(generators[i], generators[j]):
                raise ValueError("generators do not commute")

    elements: dict[tuple[int, int], int] = {(0, 0): 0}  # (x, z) -> phase exp
    vecs: dict[tuple[int, int], GF4Vector] = {(0, 0): GF4Vector.zero(n)}
    for g in generators:
        key = (g.x, g.z)
        if key in elements:
            if elements[key] != 0:
                raise ValueError("closure contains minus the identity")
            continue
        coset = {}
        for k, exp in elements.items():
            prod = vecs[k] + g
            pexp = (exp + _mul_phase(vecs[k], g)) & 3
            if pexp & 1:
                raise ValueError("odd phase in an Abelian closure")
            coset[prod.x, prod.z] = pexp
            vecs[prod.x, prod.z] = prod
        elements.update(coset)

    ordered = tuple(
        (1 if elements[k] == 0 else -1, vecs[k]) for k in sorted(elements)
    )
    return SignedPauliGroup(n, ordered)


def projector(group: SignedPauliGroup, cap: int = DEFAULT_ORACLE_CAP) -> DenseOperator:
    """Orthogonal projector (1/|S|) sum of the signed group elements.

    Validates idempotence, Hermiticity, and trace 2^n / |S|; a failure means
    the sign bookkeeping went wrong somewhere upstream.
    """
    _check_cap(group.n, cap)
    dim = 1 << group.n
    p = np.zeros((dim, dim), dtype=complex)
    for sign, v in group.elements:
        p += sign * pauli_matrix(v, cap)
    p /= group.size
    if np.max(np.abs(p - p.conj().T)) > 1e-10:
        raise ValueError("projector is not Hermitian; bad sign bookkeeping")
    if np.max(np.abs(p @ p - p)) > 1e-10:
        raise ValueError("projector is not idempotent; bad sign bookkeeping")
    if abs(np.trace(p) - dim / group.size) > 1e-8:
        raise ValueError("projector has the wrong trace; bad sign bookkeeping")
    return p


def code_projector(code: AdditiveCode, cap: int = DEFAULT_ORACLE_CAP) -> DenseOperator:
    """Projector on the subspace stabilized by a self-orthogonal code."""
    if not code.is_self_orthogonal:
        raise ValueError("code is not self-orthogonal")
    return projector(close_group(code.generators, n=code.n), cap)


def enumerators_bruteforce(p_op: DenseOperator, dim: int,
                           cap: int = DEFAULT_ORACLE_CAP) -> EnumeratorPair:
    """Weight enumerators from the trace formulas, summed over all 4^n errors.

    weights[i]      = (1/dim^2) sum_{wt(E)=i} Tr(E P)^2
    dual_weights[i] = (1/dim)   sum_{wt(E)=i} Tr(E P E P)

    The sums are rounded to integers; residuals above 1e-6 (or imaginary
    parts above 1e-10) raise.
    """
    n = (p_op.shape[0] - 1).bit_length()
    _check_cap(n, cap)
    b_acc = np.zeros(n + 1, dtype=complex)
    bp_acc = np.zeros(n + 1, dtype=complex)
    for v in all_vectors(n):
        a = pauli_matrix(v, cap) @ p_op
        b_acc[v.weight] += np.trace(a) ** 2
        bp_acc[v.weight] += np.sum(a * a.T)
    b_acc /= dim * dim
    bp_acc /= dim
    if max(np.max(np.abs(b_acc.imag)), np.max(np.abs(bp_acc.imag))) > 1e-10:
        raise ValueError("trace enumerators have nonreal parts")
    weights = np.rint(b_acc.real)
    dual_weights = np.rint(bp_acc.real)
    residual = max(np.max(np.abs(b_acc.real - weights)),
                   np.max(np.abs(bp_acc.real - dual_weights)))
    if residual > 1e-6:
        raise ValueError(f"trace enumerators are not near-integral "
                         f"(residual {residual:.2e})")
    return EnumeratorPair(n, dim,
                          tuple(int(c) for c in weights),
                          tuple(int(c) for c in dual_weights))


TRIVIAL, DETECTED, UNDETECTABLE = "trivial", "detected", "undetectable"


def classify_error(code: AdditiveCode, e: GF4Vector) -> str:
    """Three-way classification of an error word against a code.

    trivial: in the code (acts as identity on the subspace);
    detected: outside the dual (maps the subspace into its complement);
    undetectable: in the dual but not the code (rotates the subspace).
    """
    if code.contains(e):
        return TRIVIAL
    if any(trace_inner(e, g) for g in code.generators):
        return DETECTED
    return UNDETECTABLE


def classify_error_dense(p_op: DenseOperator, e: GF4Vector, tol: float = 1e-10,
                         cap: int = DEFAULT_ORACLE_CAP) -> str:
    """Matrix version of classify_error, from the action of E on the subspace."""
    ep = pauli_matrix(e, cap) @ p_op
    if np.max(np.abs(p_op @ ep)) < tol:
        return DETECTED
    if np.max(np.abs(ep - p_op @ ep)) >= tol:
        raise ValueError("error neither preserves the subspace nor maps it "
                         "to the complement; not a valid stabilizer setup")
    if min(np.max(np.abs(ep - p_op)), np.max(np.abs(ep + p_op))) < tol:
        return TRIVIAL
    return UNDETECTABLE


def partial_trace(m: DenseOperator, dims: tuple[int, int], over: str) -> DenseOperator:
    """Partial trace over the first or second tensor factor."""
    d1, d2 = dims
    if m.shape != (d1 * d2, d1 * d2):
        raise ValueError(f"operator shape {m.shape} does not match dims {dims}")
    t = m.reshape(d1, d2, d1, d2)
    if over == "first":
        return np.einsum("ijik->jk", t)
    if over == "second":
        return np.einsum("ijkj->ik", t)
    raise ValueError(f"over must be 'first' or 'second', not {over!r}")


def uniform_state(p_op: DenseOperator, rng: np.random.Generator,
                  max_attempts: int = 100) -> np.ndarray:
    """Uniform sample from the unit sphere of the range of a projector.

    A standard complex Gaussian is projected and normalized; unitary
    invariance of the Gaussian makes the result exactly uniform on the
    subspace sphere.
    """
    dim = p_op.shape[0]
    for _ in range(max_attempts):
        g = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        w = p_op @ g
        nrm = np.linalg.norm(w)
        if nrm > 1e-8:
            return w / nrm
    raise RuntimeError("projection kept vanishing; is the projector zero?")


def _uniform_batch(p_op: DenseOperator, count: int,
                   rng: np.random.Generator) -> np.ndarray:
    """(count, dim) array of uniform subspace states."""
    dim = p_op.shape[0]
    g = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    w = g @ p_op.T
    nrm = np.linalg.norm(w, axis=1)
    bad = nrm <= 1e-8
    for i in np.flatnonzero(bad):
        w[i] = uniform_state(p_op, rng)
        nrm[i] = 1.0
    return w / nrm[:, None]


@dataclass(frozen=True)
class MomentReport:
    """Deviation of a Monte Carlo matrix mean from its analytic target."""

    deviation: float        # Frobenius distance of the sample mean
    sigma: float            # jackknife estimate of the sampling std of the mean
    expected_rms: float     # analytic sqrt(E deviation^2) under the claim
    samples: int

    def within(self, band: float = 4.0) -> bool:
        return self.deviation <= band * self.sigma


def _mc_matrix_mean(sample_block, target: np.ndarray, total: int,
                    blocks: int) -> MomentReport:
    """Accumulate block sums of a matrix-valued sampler and jackknife them.

    sample_block(count) must return the SUM of `count` fresh sample matrices.
    """
    blocks = max(1, min(blocks, total))
    base, extra = divmod(total, blocks)
    sizes = [base + (1 if i < extra else 0) for i in range(blocks)]
    sums = [sample_block(m) for m in sizes]
    full = np.sum(sums, axis=0)
    deviation = float(np.linalg.norm(full / total - target))

    if blocks == 1:
        return MomentReport(deviation, 0.0, 0.0, total)
    loo = np.array([(full - s) / (total - m) for s, m in zip(sums, sizes)])
    center = loo.mean(axis=0)
    var = (blocks - 1) / blocks * np.sum(np.abs(loo - center) ** 2)
    return MomentReport(deviation, float(math.sqrt(var)), 0.0, total)


def verify_mean_projector(p_op: DenseOperator, dim: int, samples: int,
                          rng: np.random.Generator,
                          blocks: int = 100) -> MomentReport:
    """Check that the mean outer product of uniform subspace states is P/K."""
    target = p_op / dim

    def block(count: int) -> np.ndarray:
        w = _uniform_batch(p_op, count, rng)
        return w.T @ w.conj()

    report = _mc_matrix_mean(block, target, samples, blocks)
    expected = math.sqrt((1 - 1 / dim) / samples)
    return MomentReport(report.deviation, report.sigma, expected, samples)


def verify_fourth_moment(dim: int, samples: int, rng: np.random.Generator,
                         blocks: int = 100) -> MomentReport:
    """Check the fourth-moment identity for uniform states on a K-sphere.

    The mean of vv* (x) vv* must equal (I + SWAP) / (K (K + 1)); the identity
    and swap operators span the unitarily invariant subspace.
    """
    swap = np.zeros((dim * dim, dim * dim))
    for i in range(dim):
        for j in range(dim):
            swap[i * dim + j, j * dim + i] = 1
    target = (np.eye(dim * dim) + swap) / (dim * (dim + 1))

    def block(count: int) -> np.ndarray:
        g = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
        v = g / np.linalg.norm(g, axis=1)[:, None]
        u = np.einsum("ni,nj->nij", v, v).reshape(count, dim * dim)
        return u.T @ u.conj()

    report = _mc_matrix_mean(block, target, samples, blocks)
    expected = math.sqrt((1 - 2 / (dim * (dim + 1))) / samples)
    return MomentReport(report.deviation, report.sigma, expected, samples)


def deviation_curve(kind: str, dim: int, sizes, replicates: int,
                    seed: int = 0) -> list[float]:
    """Replicate-averaged moment-identity deviations for a list of sample counts.

    Used to check the 1/sqrt(N) decay; single-run deviations fluctuate far
    too much for a ratio test, so each point averages `replicates`
    independent runs.  Both identities are invariant under the isometry between
    the subspace and C^K, so the mean-projector kind runs on the identity
    projector of size K.
    """
    if kind == "mean_projector":
        eye = np.eye(dim, dtype=complex)
        runner = lambda n, rng: verify_mean_projector(eye, dim, n, rng).deviation
    elif kind == "fourth_moment":
        runner = lambda n, rng: verify_fourth_moment(dim, n, rng).deviation
    else:
        raise ValueError(f"unknown kind {kind!r}")
    means = []
    for idx, n in enumerate(sizes):
        acc = 0.0
        for rep in range(replicates):
            rng = np.random.Generator(np.random.PCG64(
                np.random.SeedSequence(seed, spawn_key=(idx, rep))))
            acc += runner(int(n), rng)
        means.append(acc / replicates)
    return means


@dataclass(frozen=True)
class MCEstimate:
    """Monte Carlo estimate with its standard error and shard layout."""

    estimate: float
    stderr: float
    samples: int
    seed: int
    shards: int
    p: float


def _shard_rng(seed: int, shard: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(
        np.random.SeedSequence(seed, spawn_key=(shard,))))


def _split(total: int, shards: int) -> list[int]:
    base, extra = divmod(total, shards)
    return [base + (1 if i < extra else 0) for i in range(shards)]


def pue_nonstab_mc(p_op: DenseOperator, dim: int, p: float, samples: int,
                   seed: int = 0, shards: int = 1,
                   cap: int = DEFAULT_ORACLE_CAP, chunk: int = 256) -> MCEstimate:
    """Monte Carlo of the subspace-uniform undetected-error functional.

    Averages sum_E Pr(E) ||(I - vv*) P E v||^2 over uniform subspace states.
    The error sum is exact over all 4^n errors for n <= 4 and sampled from
    the channel otherwise.  The identity error term is identically zero
    (P v = v on the subspace) and is skipped, so p = 0 gives exactly 0.
    """
    if not 0 <= p <= 0.75:
        raise ValueError(f"depolarizing probability {p} outside [0, 3/4]")
    if samples < 1 or shards < 1:
        raise ValueError("samples and shards must be positive")
    n = (p_op.shape[0] - 1).bit_length()
    _check_cap(n, cap)

    exact_errors = n <= 4
    if exact_errors:
        errs = [v for v in all_vectors(n) if not v.is_zero]
        pe_stack = np.stack([p_op @ pauli_matrix(v, cap) for v in errs])
        pe_flat = pe_stack.reshape(-1, p_op.shape[0])
        probs = np.array([error_probability(v, p) for v in errs])

    n_sum = sq_sum = 0.0
    count = 0
    for shard, m in enumerate(_split(samples, shards)):
        if m == 0:
            continue
        rng = _shard_rng(seed, shard)
        if exact_errors:
            done = 0
            while done < m:
                c = min(chunk, m - done)
                v = _uniform_batch(p_op, c, rng)
                # t[s, e, :] = P E_e v_s, via one BLAS product
                t = (v @ pe_flat.T).reshape(c, len(errs), -1)
                norms = np.einsum("cea,cea->ce", t, t.conj()).real
                overlap = np.abs(np.einsum("cea,ca->ce", t, v.conj())) ** 2
                vals = (norms - overlap) @ probs
                n_sum += float(np.sum(vals))
                sq_sum += float(np.sum(vals * vals))
                done += c
        else:
            for _ in range(m):
                v = uniform_state(p_op, rng)
                e = _sample_error_word(n, p, rng)
                if e.is_zero:
                    val = 0.0
                else:
                    u = p_op @ (pauli_matrix(e, cap) @ v)
                    val = float(np.sum(np.abs(u) ** 2) - abs(np.vdot(v, u)) ** 2)
                n_sum += val
                sq_sum += val * val
        count += m

    mean = n_sum / count
    var = max(sq_sum - count * mean * mean, 0.0) / (count - 1) if count > 1 else 0.0
    return MCEstimate(mean, math.sqrt(var / count), count, seed, shards, p)


def _sample_error_word(n: int, p: float, rng: np.random.Generator) -> GF4Vector:
    # Same channel as chansim.sample_error; duplicated to keep imports acyclic.
    x = z = 0
    hit = rng.random(n) < p
    kinds = rng.integers(0, 3, size=n)
    for q in range(n):
        if hit[q]:
            xb, zb = ((1, 0), (0, 1), (1, 1))[kinds[q]]
            x |= xb << q
            z |= zb << q
    return GF4Vector(n, x, z)


def pue_composite_exact(p_op: DenseOperator, dim: int, p: float,
                        cap: int = COMPOSITE_CAP) -> float:
    """Deterministic evaluation of the entangled-transmission functional.

    Builds the completely entangled state between the subspace and a
    K-dimensional reference system and sums Pr(E) ||(I - bb*)(P x I)(E x I) b||^2
    over all errors.  The identity term vanishes identically and is skipped.
    """
    if not 0 <= p <= 0.75:
        raise ValueError(f"depolarizing probability {p} outside [0, 3/4]")
    n = (p_op.shape[0] - 1).bit_length()
    _check_cap(n, cap)

    vals, vecs = np.linalg.eigh(p_op)
    basis = vecs[:, vals > 0.5]
    if basis.shape[1] != dim or np.max(np.abs(vals[vals > 0.5] - 1)) > 1e-8:
        raise ValueError("projector rank does not match the declared dimension")
    # b as a (2^n, K) matrix: reference system = columns.
    b = basis / math.sqrt(dim)

    terms = []
    for v in all_vectors(n):
        if v.is_zero:
            continue
        pr = error_probability(v, p)
        if pr == 0.0:
            continue
        u = p_op @ (pauli_matrix(v, cap) @ b)
        val = np.sum(np.abs(u) ** 2) - abs(np.vdot(b, u)) ** 2
        terms.append(pr * float(val))
    return math.fsum(terms)
