"""Minimal quantum linear algebra: pure states, POVMs, Born probabilities.

Only what the classical-model machinery needs: dense state vectors of a
few qubits, Bloch-vector geometry for single qubits, and two-outcome
projective measurements.  States are compared up to global phase
throughout (all quantities used downstream are phase invariant).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, NormalizationError, UnsupportedMeasurementError

NORM_TOL = 1e-12
PSD_TOL = 1e-10
COMPLETENESS_TOL = 1e-10

# Dense vectors only; larger systems are handled symbolically by the growth
# bound module, never by state vectors.
DEFAULT_DIMENSION_CAP = 2**14

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)


@dataclass
class PureState:
    """State vector of ``n`` qubits (unit norm, dimension exactly 2**n)."""

    amplitudes: np.ndarray
    n: int = field(init=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        dim = amps.shape[0]
        n = int(round(np.log2(dim))) if dim > 0 else 0
        if dim < 2 or 2**n != dim:
            raise DimensionError(f"state dimension {dim} is not a power of two >= 2")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise NormalizationError(f"state norm {norm!r} deviates from 1 beyond {NORM_TOL}")
        self.amplitudes = amps
        self.n = n

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def inner(self, other: "PureState") -> complex:
        if self.dim != other.dim:
            raise DimensionError("states of unequal dimension")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other: "PureState") -> float:
        """|<self|other>|**2, phase invariant."""
        return abs(self.inner(other)) ** 2


@dataclass
class BlochVector:
    """Unit 3-vector representing a single-qubit pure state."""

    components: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.components, dtype=np.float64).ravel()
        if v.shape != (3,):
            raise DimensionError("Bloch vector must have exactly 3 components")
        norm = np.linalg.norm(v)
        if abs(norm - 1.0) > NORM_TOL:
            raise NormalizationError(f"Bloch norm {norm!r} deviates from 1 beyond {NORM_TOL}")
        self.components = v

    def dot(self, other: "BlochVector") -> float:
        return float(np.dot(self.components, other.components))


@dataclass
class Povm:
    """Positive-operator valued measure: PSD effects summing to identity."""

    effects: list[np.ndarray]
    labels: list[str] = None

    def __post_init__(self):
        if not self.effects:
            raise ValueError("POVM needs at least one effect")
        effects = [np.asarray(e, dtype=complex) for e in self.effects]
        dim = effects[0].shape[0]
        for e in effects:
            if e.shape != (dim, dim):
                raise DimensionError("effects must be square matrices of equal dimension")
            if not np.allclose(e, e.conj().T, atol=PSD_TOL):
                raise ValueError("effect is not Hermitian")
            if np.linalg.eigvalsh(e)[0] < -PSD_TOL:
                raise ValueError("effect has an eigenvalue below the PSD tolerance")
        total = sum(effects)
        if not np.allclose(total, np.eye(dim), atol=COMPLETENESS_TOL):
            raise ValueError("effects do not sum to the identity")
        self.effects = effects
        if self.labels is None:
            self.labels = [str(i) for i in range(len(effects))]
        if len(self.labels) != len(effects):
            raise ValueError("one label per effect required")

    @property
    def dim(self) -> int:
        return self.effects[0].shape[0]

    @property
    def n_outcomes(self) -> int:
        return len(self.effects)


def haar_random_state(
    n: int, rng: np.random.Generator, dim_cap: int = DEFAULT_DIMENSION_CAP
) -> PureState:
    """Haar-uniform random pure state of ``n`` qubits.

    Deterministic given the generator state: a single ``standard_normal``
    draw of shape (2**n, 2) is normalized to a unit complex vector.
    """
    if n < 1:
        raise DimensionError("qubit count must be >= 1")
    dim = 2**n
    if dim > dim_cap:
        raise DimensionError(f"dimension 2**{n} exceeds the cap {dim_cap}")
    z = rng.standard_normal((dim, 2))
    amps = z[:, 0] + 1j * z[:, 1]
    amps /= np.linalg.norm(amps)
    return PureState(amps)


def bloch_of_qubit(psi: PureState) -> BlochVector:
    """Bloch vector of a single-qubit state: Pauli expectation values."""
    if psi.n != 1:
        raise DimensionError("Bloch vector defined for single-qubit states only")
    a, b = psi.amplitudes
    ab = np.conj(a) * b
    v = np.array([2.0 * ab.real, 2.0 * ab.imag, (abs(a) ** 2 - abs(b) ** 2)])
    v /= np.linalg.norm(v)
    return BlochVector(v)


def state_from_bloch(v: BlochVector | np.ndarray) -> PureState:
    """Single-qubit state with the given Bloch vector (phase convention: real
    nonnegative first amplitude)."""
    if not isinstance(v, BlochVector):
        v = BlochVector(np.asarray(v, dtype=np.float64))
    x, y, z = v.components
    alpha = np.arccos(np.clip(z, -1.0, 1.0))
    phi = np.arctan2(y, x)
    amps = np.array([np.cos(alpha / 2.0), np.exp(1j * phi) * np.sin(alpha / 2.0)])
    # renormalize to absorb rounding in the trig evaluation
    amps /= np.linalg.norm(amps)
    return PureState(amps)


def born_probability(psi: PureState, effect: np.ndarray, check: bool = True) -> float:
    """Probability <psi|E|psi> of an effect, clamped to [0, 1].

    ``check=False`` skips the Hermiticity/PSD validation for effects that
    were already validated as part of a Povm.
    """
    effect = np.asarray(effect, dtype=complex)
    if effect.shape != (psi.dim, psi.dim):
        raise DimensionError(
            f"effect shape {effect.shape} does not match state dimension {psi.dim}"
        )
    if check:
        if not np.allclose(effect, effect.conj().T, atol=PSD_TOL):
            raise ValueError("effect is not Hermitian")
        if np.linalg.eigvalsh(effect)[0] < -PSD_TOL:
            raise ValueError("effect fails the PSD check")
    p = np.vdot(psi.amplitudes, effect @ psi.amplitudes).real
    if p < -PSD_TOL or p > 1.0 + PSD_TOL:
        raise ValueError(f"Born probability {p!r} outside [0, 1] beyond tolerance")
    return float(min(max(p, 0.0), 1.0))


def born_vector(psi: PureState, povm: Povm) -> np.ndarray:
    """Born probabilities of all outcomes of a POVM."""
    return np.array([born_probability(psi, e, check=False) for e in povm.effects])


def pair_angle(psi: PureState, phi: PureState) -> float:
    """Angle arccos |<psi|phi>| in [0, pi/2]; 0 for equal states (up to
    phase), pi/2 for orthogonal ones."""
    if psi.dim != phi.dim:
        raise DimensionError("states of unequal dimension")
    return float(np.arccos(np.clip(abs(psi.inner(phi)), 0.0, 1.0)))


def make_projective_povm(m: BlochVector | np.ndarray) -> Povm:
    """Two-outcome projective qubit measurement along direction ``m``.

    Effects are (1 +/- m.sigma)/2 with labels "+1" and "-1".
    """
    if not isinstance(m, BlochVector):
        m = np.asarray(m, dtype=np.float64).ravel()
        norm = np.linalg.norm(m)
        if abs(norm - 1.0) > 1e-9:
            raise NormalizationError(f"measurement direction norm {norm!r} not 1 within 1e-9")
        m = BlochVector(m / norm)
    ms = sum(c * s for c, s in zip(m.components, PAULIS))
    eye = np.eye(2, dtype=complex)
    return Povm(effects=[(eye + ms) / 2.0, (eye - ms) / 2.0], labels=["+1", "-1"])


def projective_axis(povm: Povm) -> BlochVector:
    """Recover the Bloch axis of a two-outcome projective qubit POVM.

    Raises UnsupportedMeasurementError if the POVM is not of the form
    produced by :func:`make_projective_povm`.
    """
    if povm.dim != 2 or povm.n_outcomes != 2:
        raise UnsupportedMeasurementError("expected a two-outcome qubit POVM")
    e = povm.effects[0]
    m = np.array([np.trace(e @ s).real for s in PAULIS])
    norm = np.linalg.norm(m)
    if abs(norm - 1.0) > 1e-9:
        raise UnsupportedMeasurementError("POVM is not projective along a Bloch axis")
    m = m / norm
    ms = sum(c * s for c, s in zip(m, PAULIS))
    if not np.allclose(e, (np.eye(2) + ms) / 2.0, atol=1e-9):
        raise UnsupportedMeasurementError("POVM is not projective along a Bloch axis")
    return BlochVector(m)
