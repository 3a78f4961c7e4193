"""Dense state-vector backend: qubit allocation, primitive gates, measurement, dumps.

Basis index bit k corresponds to qubit k, so qubit 0 is the least significant
bit of a basis index.  Only the low `materialized` qubits are physically held
in the amplitude array; every qubit above that range is free and therefore
exactly |0>, which keeps a 32-qubit machine cheap while only a handful of
qubits are in use.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import AllocationError, RegisterError

EMPTY_TOL = 1e-9
PRINT_TOL = 1e-8


@dataclass(frozen=True)
class RegisterMap:
    """Ordered, mutually distinct qubit positions; position 0 is least significant."""

    qubits: tuple[int, ...]

    def __post_init__(self):
        if not self.qubits:
            raise RegisterError("register must contain at least one qubit")
        if len(set(self.qubits)) != len(self.qubits):
            raise RegisterError("register positions must be mutually distinct")

    def __len__(self) -> int:
        return len(self.qubits)

    def index(self, i: int) -> RegisterMap:
        if not 0 <= i < len(self.qubits):
            raise RegisterError(f"register index {i} out of range for length {len(self)}")
        return RegisterMap((self.qubits[i],))

    def slice(self, a: int, b: int) -> RegisterMap:
        if not 0 <= a <= b < len(self.qubits):
            raise RegisterError(f"register slice {a}:{b} out of range for length {len(self)}")
        return RegisterMap(self.qubits[a : b + 1])

    def concat(self, other: RegisterMap) -> RegisterMap:
        if set(self.qubits) & set(other.qubits):
            raise RegisterError("cannot concatenate overlapping registers")
        return RegisterMap(self.qubits + other.qubits)


@dataclass(frozen=True)
class PrimitiveGate:
    """One primitive operation: kind in {X, H, ROT, PHASE}.

    PHASE has no target; it multiplies every amplitude whose control bits are
    all set by e^(i*param).  The other kinds act on the target bit's amplitude
    pair wherever the control bits are all set.
    """

    kind: str
    param: float | None
    target: int | None
    controls: frozenset[int]

    def adjoint(self) -> PrimitiveGate:
        if self.kind in ("ROT", "PHASE"):
            return PrimitiveGate(self.kind, -self.param, self.target, self.controls)
        return self


def gate(kind: str, param: float | None = None, target: int | None = None,
         controls=()) -> PrimitiveGate:
    return PrimitiveGate(kind, param, target, frozenset(controls))


def adjoint_of_tape(tape) -> list[PrimitiveGate]:
    """Adjoint of a gate sequence: reversed order, per-gate adjoints."""
    return [g.adjoint() for g in reversed(list(tape))]


_SQRT_HALF = 1.0 / math.sqrt(2.0)


def gate_matrix(kind: str, param: float | None = None) -> np.ndarray:
    """2x2 matrix of a targeted primitive (X, H or ROT)."""
    if kind == "X":
        return np.array([[0, 1], [1, 0]], dtype=complex)
    if kind == "H":
        return np.array([[_SQRT_HALF, _SQRT_HALF], [_SQRT_HALF, -_SQRT_HALF]], dtype=complex)
    if kind == "ROT":
        c, s = math.cos(param / 2.0), math.sin(param / 2.0)
        return np.array([[c, s], [-s, c]], dtype=complex)
    raise ValueError(f"no 2x2 matrix for gate kind {kind!r}")


def apply_gate(amp: np.ndarray, g: PrimitiveGate) -> None:
    """Apply one primitive gate in place to an amplitude array of length 2^n."""
    size = amp.size
    idx = np.arange(size)
    if g.kind == "PHASE":
        if g.controls:
            mask = np.ones(size, dtype=bool)
            for c in g.controls:
                mask &= ((idx >> c) & 1) == 1
            amp[mask] *= cmath.exp(1j * g.param)
        else:
            amp *= cmath.exp(1j * g.param)
        return
    t = g.target
    mask = ((idx >> t) & 1) == 0
    for c in g.controls:
        mask &= ((idx >> c) & 1) == 1
    i0 = idx[mask]
    i1 = i0 | (1 << t)
    m = gate_matrix(g.kind, g.param)
    a0 = amp[i0]
    a1 = amp[i1]
    amp[i0] = m[0, 0] * a0 + m[0, 1] * a1
    amp[i1] = m[1, 0] * a0 + m[1, 1] * a1


def tape_matrix(tape, n_qubits: int) -> np.ndarray:
    """Assemble the 2^n x 2^n matrix of a tape by applying it to each basis state."""
    dim = 1 << n_qubits
    out = np.zeros((dim, dim), dtype=complex)
    gates = list(tape)
    for k in range(dim):
        vec = np.zeros(dim, dtype=complex)
        vec[k] = 1.0
        for g in gates:
            apply_gate(vec, g)
        out[:, k] = vec
    return out


def format_amplitude(c: complex) -> str:
    """Coefficient text: up to 6 significant digits, trailing zeros trimmed."""
    re = c.real if abs(c.real) > PRINT_TOL else 0.0
    im = c.imag if abs(c.imag) > PRINT_TOL else 0.0
    if im == 0.0:
        return f"{re:.6g}"
    if re == 0.0:
        return f"{im:.6g}i"
    return f"{re:.6g}{im:+.6g}i"


class MachineState:
    """The joint quantum state of all simulator qubits plus the allocation mask."""

    def __init__(self, total_qubits: int = 32, seed: int = 0, dense_limit: int = 24):
        if total_qubits < 1:
            raise AllocationError("machine needs at least one qubit")
        self.total = total_qubits
        self.dense_limit = min(dense_limit, total_qubits)
        self.amp = np.array([1.0 + 0.0j], dtype=complex)
        self.materialized = 0
        self.allocated: set[int] = set()
        self.rng = np.random.default_rng(seed)
        self.version = 0

    # -- allocation ----------------------------------------------------------

    def allocate_register(self, m: int) -> RegisterMap:
        """Claim the m lowest free qubits; fresh qubits are guaranteed |0...0>."""
        if m < 1:
            raise AllocationError("register size must be at least 1")
        free = [q for q in range(self.total) if q not in self.allocated][:m]
        if len(free) < m:
            raise AllocationError(f"out of qubits: requested {m}, only {len(free)} free")
        top = max(free) + 1
        if top > self.materialized:
            if top > self.dense_limit:
                raise AllocationError(
                    f"out of qubits: the dense simulator is limited to {self.dense_limit}"
                )
            grown = np.zeros(1 << top, dtype=complex)
            grown[: self.amp.size] = self.amp
            self.amp = grown
            self.materialized = top
        self.allocated.update(free)
        return RegisterMap(tuple(free))

    def free_register(self, reg: RegisterMap) -> None:
        """Return an empty register's qubits to the free pool."""
        for q in reg.qubits:
            if q not in self.allocated:
                raise RegisterError(f"qubit {q} is not allocated")
        if not self.is_empty_register(reg):
            raise RegisterError("cannot free a register that is not empty")
        self.allocated.difference_update(reg.qubits)
        while self.materialized > 0 and (self.materialized - 1) not in self.allocated:
            self.materialized -= 1
        self.amp = self.amp[: 1 << self.materialized].copy()

    # -- evolution -----------------------------------------------------------

    def apply_primitive(self, g: PrimitiveGate) -> None:
        if g.target is not None and g.target not in self.allocated:
            raise RegisterError(f"qubit {g.target} is not allocated")
        for c in g.controls:
            if c not in self.allocated:
                raise RegisterError(f"qubit {c} is not allocated")
        apply_gate(self.amp, g)
        self.version += 1

    def measure_register(self, reg: RegisterMap) -> int:
        """Draw an outcome with Born probability, collapse and renormalize."""
        for q in reg.qubits:
            if q not in self.allocated:
                raise RegisterError(f"qubit {q} is not allocated")
        prob = np.abs(self.amp) ** 2
        cum = np.cumsum(prob)
        draw = self.rng.random() * cum[-1]
        picked = int(np.searchsorted(cum, draw, side="right"))
        picked = min(picked, self.amp.size - 1)
        outcome = 0
        for i, q in enumerate(reg.qubits):
            outcome |= ((picked >> q) & 1) << i
        idx = np.arange(self.amp.size)
        keep = np.ones(self.amp.size, dtype=bool)
        for i, q in enumerate(reg.qubits):
            keep &= ((idx >> q) & 1) == ((outcome >> i) & 1)
        self.amp[~keep] = 0.0
        self.amp /= np.linalg.norm(self.amp)
        self.version += 1
        return outcome

    def reset_state(self) -> None:
        """Collapse the whole machine to |0...0>; the allocation mask is untouched."""
        self.amp[:] = 0.0
        self.amp[0] = 1.0
        self.version += 1

    # -- inspection ----------------------------------------------------------

    def is_empty_register(self, reg: RegisterMap) -> bool:
        """True iff every significant amplitude has all register bits zero."""
        low = [q for q in reg.qubits if q < self.materialized]
        if not low:
            return True
        idx = np.arange(self.amp.size)
        hit = np.zeros(self.amp.size, dtype=bool)
        for q in low:
            hit |= ((idx >> q) & 1) == 1
        return not np.any(np.abs(self.amp[hit]) > EMPTY_TOL)

    def state_terms(self) -> list[tuple[int, complex]]:
        """Significant (index, amplitude) pairs, by descending magnitude then index."""
        mags = np.abs(self.amp)
        terms = [(int(i), complex(self.amp[i])) for i in np.nonzero(mags > PRINT_TOL)[0]]
        terms.sort(key=lambda item: (-abs(item[1]), item[0]))
        return terms

    def ket_bits(self, index: int, qubits) -> str:
        return "".join("1" if (index >> q) & 1 else "0" for q in qubits)

    def format_dump(self) -> str:
        """Two-line state dump over all machine qubits, qubit 0 rightmost."""
        a = len(self.allocated)
        header = (
            f"STATE: {a} / {self.total} qubits allocated, "
            f"{self.total - a} / {self.total} qubits free"
        )
        order = list(range(self.total - 1, -1, -1))
        terms = " + ".join(
            f"{format_amplitude(c)} |{self.ket_bits(i, order)}>" for i, c in self.state_terms()
        )
        return header + "\n" + terms
