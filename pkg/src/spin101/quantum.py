"""Spin-1 squared-spin measurement probabilities and robustness bounds.

The squared spin of a spin-1 particle along direction w is 0 or 1; the
"value 0" property is the rank-1 projector w w^T in the vector representation.
Sequential measurement probabilities follow the trace chain
tr(P1 ... Pn ... P1 rho) with the maximally mixed rho = I/3, and the twinned
pair lives in the rotationally invariant two-particle state of total spin 0,
which in the Cartesian basis is (|xx> + |yy> + |zz>)/sqrt(3).

Closed forms provided here:

* probability of a non-canonical triple outcome (not 1,0,1 in some order)
  for pairwise angles alpha, beta, gamma, measured in that cyclic order:
  (2cos^2 a + 2cos^2 b + 2cos^2 g - 4 cos a cos b cos g + cos^2 a cos^2 g)/3;
* probability that twinned measurements at relative angle phi disagree:
  (2/3) sin^2 phi;
* the misalignment budget: with every angle within delta of a right angle,
  eps_spin <= (6 d^2 + 4 d^3 + d^4)/3 and eps_twin <= 2 d^2 / 3, so
  3 eps_twin + eps_spin <= 4 d^2 + (4 d^3 + d^4)/3, to be compared against
  the 1/40 functional-hypothesis threshold.

Every stochastic routine takes an explicit integer seed and drives numpy's
PCG64 generator; Monte-Carlo runs are chunked with seeds derived per chunk
from the master seed via numpy's SeedSequence spawning, so results do not
depend on how chunks are scheduled across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

STRUCT_TOL = 1e-12  # structural identities on 3x3 / 9x9 problems
ORACLE_TOL = 1e-10  # closed form vs trace-chain agreement

CONTRADICTION_THRESHOLD = 1.0 / 40.0

_MC_CHUNK = 1 << 15


class NotUnit(ValueError):
    """Raised when a direction is not a unit vector."""


class InfeasibleAngles(ValueError):
    """Raised when no direction triple realizes the requested pairwise angles."""


def unit_vector(x: float, y: float, z: float) -> np.ndarray:
    v = np.array([x, y, z], dtype=float)
    if abs(np.linalg.norm(v) - 1.0) > STRUCT_TOL:
        raise NotUnit(f"norm of {v} deviates from 1 beyond {STRUCT_TOL}")
    return v


def normalized(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def projector(w) -> np.ndarray:
    """Rank-1 projector w w^T onto the squared-spin-0 state of direction w."""
    w = np.asarray(w, dtype=float)
    if abs(np.linalg.norm(w) - 1.0) > STRUCT_TOL:
        raise NotUnit(f"norm of {w} deviates from 1 beyond {STRUCT_TOL}")
    return np.outer(w, w)


def seq_prob(projs, mixed: bool = True, state=None) -> float:
    """Probability that a sequence of projective properties all hold.

    Computes tr(P1 ... Pn ... P1 rho) for the measurement order P1 first.
    With mixed=True the state is the maximally mixed rho = I/3; with
    mixed=False a pure state vector must be supplied.
    """
    projs = [np.asarray(p, dtype=float) for p in projs]
    if not projs:
        raise ValueError("need at least one projector")
    chain = np.eye(3)
    for p in projs:
        chain = p @ chain  # chain = Pn ... P1
    if mixed:
        return float(np.trace(chain.T @ chain) / 3.0)
    if state is None:
        raise ValueError("mixed=False requires an explicit pure state vector")
    phi = np.asarray(state, dtype=float)
    out = chain @ phi
    return float(out @ out / (phi @ phi))


def seq_outcome_prob(projs, outcomes, mixed: bool = True, state=None) -> float:
    """Probability of a full outcome pattern for sequential measurements.

    Outcome 0 of a squared-spin measurement means the property holds (the
    projector fires); outcome 1 selects the complement.
    """
    eye = np.eye(3)
    ops = [
        np.asarray(p, dtype=float) if o == 0 else eye - np.asarray(p, dtype=float)
        for p, o in zip(projs, outcomes, strict=True)
    ]
    return seq_prob(ops, mixed=mixed, state=state)


NONCANONICAL_PATTERNS = ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))


def noncanonical_prob_oracle(x, y, z) -> float:
    """Summed trace-chain probability of the five non-canonical patterns."""
    projs = [projector(normalized(v)) for v in (x, y, z)]
    return sum(seq_outcome_prob(projs, pat) for pat in NONCANONICAL_PATTERNS)


def _gram(alpha: float, beta: float, gamma: float) -> np.ndarray:
    # x.y = cos(gamma), y.z = cos(alpha), z.x = cos(beta)
    ca, cb, cg = math.cos(alpha), math.cos(beta), math.cos(gamma)
    return np.array([[1.0, cg, cb], [cg, 1.0, ca], [cb, ca, 1.0]])


def angles_feasible(alpha: float, beta: float, gamma: float, tol: float = 1e-9) -> bool:
    """True iff some direction triple has pairwise angles (alpha, beta, gamma).

    Realizable exactly when the Gram matrix of cosines is positive
    semidefinite.
    """
    return bool(np.linalg.eigvalsh(_gram(alpha, beta, gamma)).min() >= -tol)


def spin_noncanonical_prob(alpha: float, beta: float, gamma: float) -> float:
    """Closed-form non-canonical probability for measurement order x, y, z.

    Each angle is labeled by the direction it faces, triangle style: alpha is
    the angle between y and z, beta between z and x, gamma between x and y.
    (The formula is not permutation symmetric, so the labeling matters; this
    one makes the pattern-000 probability cos^2(alpha) cos^2(gamma) / 3.)
    Raises InfeasibleAngles when no direction triple realizes the angles.
    """
    if not angles_feasible(alpha, beta, gamma):
        raise InfeasibleAngles(f"no direction triple has pairwise angles "
                               f"({alpha}, {beta}, {gamma})")
    ca, cb, cg = math.cos(alpha), math.cos(beta), math.cos(gamma)
    return (2 * ca**2 + 2 * cb**2 + 2 * cg**2 - 4 * ca * cb * cg + ca**2 * cg**2) / 3.0


def twin_mismatch_prob(phi: float) -> float:
    """Probability (2/3) sin^2 phi of disagreeing twin outcomes at angle phi."""
    if not 0.0 <= phi <= math.pi:
        raise ValueError(f"phi must lie in [0, pi], got {phi}")
    return (2.0 / 3.0) * math.sin(phi) ** 2


def twin_mismatch_oracle(w, wp) -> float:
    """Trace-chain mismatch probability for two explicit directions."""
    pw, pwp = projector(normalized(w)), projector(normalized(wp))
    eye = np.eye(3)
    return seq_prob([pw, eye - pwp]) + seq_prob([eye - pw, pwp])


@dataclass(frozen=True)
class ThresholdBound:
    """Closed-form error budget for a maximal misalignment angle delta."""

    delta: float
    eps_s_bound: float
    eps_t_bound: float
    combined: float
    contradiction_threshold: float

    @property
    def contradicts_functional_hypothesis(self) -> bool:
        return self.combined < self.contradiction_threshold

    def to_json_obj(self) -> dict:
        return {
            "delta": self.delta,
            "eps_s_bound": self.eps_s_bound,
            "eps_t_bound": self.eps_t_bound,
            "combined": self.combined,
            "contradiction_threshold": self.contradiction_threshold,
            "contradicts_functional_hypothesis": self.contradicts_functional_hypothesis,
        }


def threshold_bound(delta: float) -> ThresholdBound:
    """Bounds eps_s <= (6d^2+4d^3+d^4)/3, eps_t <= 2d^2/3 and their combination.

    combined = 3*eps_t_bound + eps_s_bound = 4d^2 + (4d^3 + d^4)/3, compared
    against the 1/40 threshold beyond which the functional hypothesis is safe.
    """
    if delta < 0:
        raise ValueError("delta must be non-negative")
    d = float(delta)
    eps_s = (6 * d**2 + 4 * d**3 + d**4) / 3.0
    eps_t = 2 * d**2 / 3.0
    return ThresholdBound(
        delta=d,
        eps_s_bound=eps_s,
        eps_t_bound=eps_t,
        combined=3 * eps_t + eps_s,
        contradiction_threshold=CONTRADICTION_THRESHOLD,
    )


# ---------------------------------------------------------------------------
# The twinned singlet and its joint outcome distribution.
# ---------------------------------------------------------------------------

def singlet_state() -> np.ndarray:
    """Total-spin-0 state of two spin-1 particles, (|xx>+|yy>+|zz>)/sqrt(3).

    Rotationally invariant, hence independent of the frame used to write it;
    in the spin basis it is the familiar |1,-1> + |-1,1> - |0,0> up to
    normalization and phase.
    """
    return np.eye(3).reshape(-1) / math.sqrt(3.0)


@dataclass(frozen=True)
class TwinJointDist:
    """Joint outcome table for a triple measured at A and one direction at B.

    table[j, k, l, m] is the probability that A's sequential measurements
    along (x, y, z) give (j, k, l) while B's measurement along w gives m.
    """

    xyz: tuple[np.ndarray, np.ndarray, np.ndarray]
    w: np.ndarray
    table: np.ndarray

    def prob(self, j: int, k: int, l: int, m: int) -> float:
        return float(self.table[j, k, l, m])

    def marginal_a(self) -> np.ndarray:
        return self.table.sum(axis=3)

    def marginal_b(self) -> np.ndarray:
        return self.table.sum(axis=(0, 1, 2))

    def to_json_obj(self) -> dict:
        return {
            "xyz": [list(map(float, v)) for v in self.xyz],
            "w": list(map(float, self.w)),
            "table": self.table.tolist(),
        }


def singlet_joint(xyz, w, strict: bool = True) -> TwinJointDist:
    """Full 16-entry joint distribution from the explicit 9-dimensional singlet.

    A measures squared spins sequentially along xyz (in the given order), B
    along w; the two sides commute, so their relative order is immaterial.
    With strict=True the triple must be pairwise orthogonal within 1e-9;
    noisy runs pass strict=False.
    """
    dirs = [normalized(v) for v in xyz]
    wv = normalized(w)
    if strict:
        for i in range(3):
            for j in range(i + 1, 3):
                if abs(float(dirs[i] @ dirs[j])) > 1e-9:
                    raise ValueError(
                        f"directions {i} and {j} are not orthogonal within 1e-9"
                    )
    eye = np.eye(3)
    projs = [projector(v) for v in dirs]
    pw = projector(wv)
    psi = singlet_state()

    table = np.zeros((2, 2, 2, 2))
    for j in (0, 1):
        for k in (0, 1):
            for l in (0, 1):
                phi = psi
                for p, o in zip(projs, (j, k, l)):
                    op = p if o == 0 else eye - p
                    phi = np.kron(op, eye) @ phi
                for m in (0, 1):
                    bop = pw if m == 0 else eye - pw
                    out = np.kron(eye, bop) @ phi
                    table[j, k, l, m] = float(out @ out)
    total = table.sum()
    assert abs(total - 1.0) < STRUCT_TOL
    return TwinJointDist(xyz=tuple(dirs), w=wv, table=table)


# ---------------------------------------------------------------------------
# Seeded Monte Carlo over misaligned frames.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NoiseModel:
    """Angular noise: each nominal direction is rotated by an independent
    axis-angle rotation with uniformly random axis and angle uniform in
    [0, delta]."""

    delta: float
    seed: int

    def __post_init__(self) -> None:
        if self.delta < 0:
            raise ValueError("delta must be non-negative")


def wilson_interval(k: int, n: int, z: float = 2.5758293035489004) -> tuple[float, float]:
    """Wilson score interval for k successes in n trials (default z: 99%)."""
    if n <= 0:
        raise ValueError("n must be positive")
    phat = k / n
    denom = 1 + z * z / n
    center = (phat + z * z / (2 * n)) / denom
    half = (z / denom) * math.sqrt(phat * (1 - phat) / n + z * z / (4 * n * n))
    return (max(0.0, center - half), min(1.0, center + half))


def _random_frames(rng: np.random.Generator, m: int) -> np.ndarray:
    """Haar-random orthonormal frames, shape (m, 3, 3), axes in columns."""
    mats = rng.standard_normal((m, 3, 3))
    q, r = np.linalg.qr(mats)
    signs = np.sign(np.einsum("mii->mi", r))
    signs[signs == 0] = 1.0
    return q * signs[:, None, :]


def _perturb(rng: np.random.Generator, v: np.ndarray, delta: float) -> np.ndarray:
    """Rotate each row vector about a random axis by an angle uniform in [0, delta]."""
    m = v.shape[0]
    axis = rng.standard_normal((m, 3))
    axis /= np.linalg.norm(axis, axis=1, keepdims=True)
    theta = rng.uniform(0.0, delta, size=m) if delta > 0 else np.zeros(m)
    c = np.cos(theta)[:, None]
    s = np.sin(theta)[:, None]
    av = np.cross(axis, v)
    aav = axis * np.einsum("mi,mi->m", axis, v)[:, None]
    return v * c + av * s + aav * (1.0 - c)


def _proj(v: np.ndarray) -> np.ndarray:
    return np.einsum("mi,mj->mij", v, v)


def _btr(mats: np.ndarray) -> np.ndarray:
    return np.einsum("mii->m", mats)


@dataclass(frozen=True)
class MonteCarloReport:
    """Tallies from a noisy twinned-triple simulation run.

    The (2/3) sin^2 phi mismatch law is exact only when B's direction pairs
    with the axis A measures first; for later positions the preceding
    non-commuting measurement shifts the probability at the same O(delta^2)
    order as the law itself. The expectation check is therefore restricted
    to first-position pairings.
    """

    delta: float
    seed: int
    n_trials: int
    noncanonical_count: int
    twin_mismatch_count: int
    first_axis_trials: int
    first_axis_mismatches: int
    first_axis_expected: float
    first_axis_sigma: float
    bounds: ThresholdBound

    @property
    def noncanonical_rate(self) -> float:
        return self.noncanonical_count / self.n_trials

    @property
    def twin_mismatch_rate(self) -> float:
        return self.twin_mismatch_count / self.n_trials

    def noncanonical_interval(self, z: float = 2.5758293035489004) -> tuple[float, float]:
        return wilson_interval(self.noncanonical_count, self.n_trials, z)

    def twin_interval(self, z: float = 2.5758293035489004) -> tuple[float, float]:
        return wilson_interval(self.twin_mismatch_count, self.n_trials, z)

    def twin_within_sigma(self, n_sigma: float = 3.0) -> bool:
        slack = max(n_sigma * self.first_axis_sigma, 1e-9)
        return abs(self.first_axis_mismatches - self.first_axis_expected) <= slack

    def to_json_obj(self) -> dict:
        return {
            "delta": self.delta,
            "seed": self.seed,
            "n_trials": self.n_trials,
            "eps_s_bound": self.bounds.eps_s_bound,
            "eps_t_bound": self.bounds.eps_t_bound,
            "combined": self.bounds.combined,
            "threshold": self.bounds.contradiction_threshold,
            "rates": {
                "spin_noncanonical": self.noncanonical_rate,
                "twin_mismatch": self.twin_mismatch_rate,
            },
            "intervals": {
                "spin_noncanonical": list(self.noncanonical_interval()),
                "twin_mismatch": list(self.twin_interval()),
            },
            "counts": {
                "spin_noncanonical": self.noncanonical_count,
                "twin_mismatch": self.twin_mismatch_count,
            },
            "first_axis": {
                "trials": self.first_axis_trials,
                "mismatches": self.first_axis_mismatches,
                "expected": self.first_axis_expected,
                "sigma": self.first_axis_sigma,
            },
        }


def monte_carlo_spin(n: int, noise: NoiseModel) -> MonteCarloReport:
    """Sample n noisy twinned-triple experiments and tally axiom failures.

    Each trial perturbs a Haar-random orthonormal frame axis-by-axis, aims
    B's direction at a uniformly chosen axis of the frame (perturbed
    independently), samples the joint outcome from the singlet statistics,
    and counts non-canonical triples (sum != 2) and twin mismatches. The
    expected mismatch count under the (2/3) sin^2 phi law, with phi the
    realized angle per trial, is reported with its Poisson-binomial sigma.

    Trials are processed in fixed-size chunks; chunk c is driven by child c
    of SeedSequence(seed), so any partitioning of chunks over workers yields
    byte-identical tallies.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    n_chunks = (n + _MC_CHUNK - 1) // _MC_CHUNK
    children = np.random.SeedSequence(noise.seed).spawn(n_chunks)

    noncanonical = 0
    mismatches = 0
    first_trials = 0
    first_mismatches = 0
    expected = 0.0
    variance = 0.0
    for c in range(n_chunks):
        m = min(_MC_CHUNK, n - c * _MC_CHUNK)
        nc, mm, ft, fm, ex, var = _mc_chunk(np.random.default_rng(children[c]), m, noise.delta)
        noncanonical += nc
        mismatches += mm
        first_trials += ft
        first_mismatches += fm
        expected += ex
        variance += var

    return MonteCarloReport(
        delta=noise.delta,
        seed=noise.seed,
        n_trials=n,
        noncanonical_count=noncanonical,
        twin_mismatch_count=mismatches,
        first_axis_trials=first_trials,
        first_axis_mismatches=first_mismatches,
        first_axis_expected=expected,
        first_axis_sigma=math.sqrt(variance),
        bounds=threshold_bound(noise.delta),
    )


def _mc_chunk(rng: np.random.Generator, m: int, delta: float):
    frames = _random_frames(rng, m)
    axes = [_perturb(rng, frames[:, :, i], delta) for i in range(3)]
    pair_idx = rng.integers(0, 3, size=m)
    nominal_w = frames[np.arange(m), :, pair_idx]
    w = _perturb(rng, nominal_w, delta)
    u = rng.random((4, m))

    eye = np.broadcast_to(np.eye(3), (m, 3, 3))
    projs = [_proj(a) for a in axes]
    pw = _proj(w)

    outcomes = np.zeros((3, m), dtype=np.int8)
    # Sequential sampling against rho_0 = I/3. Accumulating the Kraus product
    # K = Q_l Q_k Q_j gives both sides: particle a is left in K K^T / 3 (the
    # next-outcome conditionals), while for the real maximally entangled
    # singlet the unnormalized conditional state of particle b is K^T K / 3.
    kraus = eye.copy()
    for step in range(3):
        fwd = np.matmul(kraus, kraus.transpose(0, 2, 1))
        p_hold = _btr(np.matmul(projs[step], fwd)) / _btr(fwd)
        take0 = u[step] < p_hold
        outcomes[step] = np.where(take0, 0, 1)
        q = np.where(take0[:, None, None], projs[step], eye - projs[step])
        kraus = np.matmul(q, kraus)

    b_state = np.matmul(kraus.transpose(0, 2, 1), kraus)
    p_b0 = _btr(np.matmul(pw, b_state)) / _btr(b_state)
    b_out = np.where(u[3] < p_b0, 0, 1)

    sums = outcomes.sum(axis=0)
    noncanonical = int((sums != 2).sum())

    paired = outcomes[pair_idx, np.arange(m)]
    mismatched = b_out != paired
    mismatch = int(mismatched.sum())

    first = pair_idx == 0
    cosphi = np.clip(np.einsum("mi,mi->m", w[first], axes[0][first]), -1.0, 1.0)
    p_theory = (2.0 / 3.0) * (1.0 - cosphi**2)
    return (
        noncanonical,
        mismatch,
        int(first.sum()),
        int(mismatched[first].sum()),
        float(p_theory.sum()),
        float((p_theory * (1 - p_theory)).sum()),
    )


def twin_mismatch_mc(phi: float, n: int, seed: int) -> dict:
    """Dedicated two-measurement sampler at a fixed relative angle phi.

    A measures direction w', B measures w at angle phi from it; returns the
    observed mismatch rate against the (2/3) sin^2 phi closed form with its
    Wilson interval (99%).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    wp = np.array([0.0, 0.0, 1.0])
    w = np.array([math.sin(phi), 0.0, math.cos(phi)])
    pw, pwp = projector(w), projector(wp)
    eye = np.eye(3)

    u = rng.random((2, n))
    a_out = np.where(u[0] < 1.0 / 3.0, 0, 1)
    # conditional state on B: Q^T Q / tr, with Q the A-side projector choice
    p_b0_if_a0 = float(np.trace(pw @ pwp))  # tr(P_w P_w')/tr(P_w')
    p_b0_if_a1 = float(np.trace(pw @ (eye - pwp)) / 2.0)
    p_b0 = np.where(a_out == 0, p_b0_if_a0, p_b0_if_a1)
    b_out = np.where(u[1] < p_b0, 0, 1)
    k = int((a_out != b_out).sum())

    expected = twin_mismatch_prob(phi)
    lo, hi = wilson_interval(k, n)
    return {
        "phi": phi,
        "n": n,
        "seed": seed,
        "mismatches": k,
        "rate": k / n,
        "expected": expected,
        "wilson_99": [lo, hi],
    }
