"""Stabilizer-state simulator with destabilizer rows and exact phases.

Rows follow the usual CHP layout: rows ``0..n-1`` are destabilizers, rows
``n..2n-1`` the stabilizers. Each row is a Pauli in the package convention
``i**r * prod_j X^x Z^z`` with ``r`` tracked modulo 4, so the -i-prefixed
twist correlators come out with their signs exact.

``expectation`` is non-destructive; ``measure`` is the only mutating read
and draws from a generator owned by the tableau.
"""

from __future__ import annotations

import numpy as np

from .errors import ContractViolation
from .gf2 import rank as gf2_rank
from .pauli import PauliOperator, is_hermitian

GATES = ("H", "S", "S_DAG", "X", "Y", "Z", "CZ", "CX")
_ONE_QUBIT = {"H", "S", "S_DAG", "X", "Y", "Z"}


class StabilizerTableau:
    def __init__(self, n: int, seed: int = 0):
        if n < 1:
            raise ValueError(f"need at least one qubit, got n={n}")
        self.n = n
        self.x = np.zeros((2 * n, n), dtype=np.uint8)
        self.z = np.zeros((2 * n, n), dtype=np.uint8)
        self.r = np.zeros(2 * n, dtype=np.uint8)
        for i in range(n):
            self.x[i, i] = 1          # destabilizer X_i
            self.z[n + i, i] = 1      # stabilizer +Z_i
        self.seed = seed
        self.rng = np.random.default_rng(seed)

    # -- constructors / views ----------------------------------------------

    @staticmethod
    def zero_state(n: int, seed: int = 0) -> "StabilizerTableau":
        return StabilizerTableau(n, seed=seed)

    def clone(self, seed: int | None = None) -> "StabilizerTableau":
        t = StabilizerTableau.__new__(StabilizerTableau)
        t.n = self.n
        t.x = self.x.copy()
        t.z = self.z.copy()
        t.r = self.r.copy()
        t.seed = self.seed if seed is None else seed
        t.rng = np.random.default_rng(t.seed)
        return t

    def _row(self, i: int) -> PauliOperator:
        x = z = 0
        for j in range(self.n):
            x |= int(self.x[i, j]) << j
            z |= int(self.z[i, j]) << j
        return PauliOperator(self.n, x, z, int(self.r[i]))

    def stabilizer(self, i: int) -> PauliOperator:
        return self._row(self.n + i)

    def destabilizer(self, i: int) -> PauliOperator:
        return self._row(i)

    def stabilizers(self) -> list[PauliOperator]:
        return [self.stabilizer(i) for i in range(self.n)]

    def dump(self) -> str:
        """One stabilizer per line, sign first (golden-test format)."""
        return "\n".join(op.to_text() for op in self.stabilizers())

    # -- gates ---------------------------------------------------------------

    def apply_gate(self, gate: str, sites: tuple[int, ...] | list[int]) -> "StabilizerTableau":
        sites = tuple(sites)
        if gate not in GATES:
            raise ValueError(f"unknown gate {gate!r}")
        want = 1 if gate in _ONE_QUBIT else 2
        if len(sites) != want:
            raise ValueError(f"{gate} takes {want} site(s), got {sites}")
        for s in sites:
            if not 0 <= s < self.n:
                raise IndexError(f"site {s} out of range for n={self.n}")
        x, z, r = self.x, self.z, self.r
        if gate == "H":
            t = sites[0]
            r += 2 * x[:, t] * z[:, t]
            x[:, t], z[:, t] = z[:, t].copy(), x[:, t].copy()
        elif gate == "S":
            t = sites[0]
            r += x[:, t]
            z[:, t] ^= x[:, t]
        elif gate == "S_DAG":
            t = sites[0]
            r += 3 * x[:, t]
            z[:, t] ^= x[:, t]
        elif gate == "X":
            r += 2 * z[:, sites[0]]
        elif gate == "Y":
            r += 2 * (x[:, sites[0]] ^ z[:, sites[0]])
        elif gate == "Z":
            r += 2 * x[:, sites[0]]
        elif gate == "CX":
            c, t = sites
            if c == t:
                raise ValueError("control equals target")
            # In the i-exponent convention CX needs no phase correction.
            x[:, t] ^= x[:, c]
            z[:, c] ^= z[:, t]
        elif gate == "CZ":
            c, t = sites
            if c == t:
                raise ValueError("control equals target")
            r += 2 * (x[:, c] & x[:, t])
            z[:, c] ^= x[:, t]
            z[:, t] ^= x[:, c]
        self.r %= 4
        return self

    # -- Pauli unitaries and rotations ---------------------------------------

    def _bits(self, p: PauliOperator) -> tuple[np.ndarray, np.ndarray]:
        if p.n != self.n:
            raise ContractViolation(f"operator on {p.n} sites, tableau has {self.n}")
        return p.bits()

    def _anticommute_vector(self, p: PauliOperator) -> np.ndarray:
        """Row vector: 1 where tableau row anticommutes with p."""
        xv, zv = self._bits(p)
        return (((self.x & zv).sum(axis=1) + (self.z & xv).sum(axis=1)) % 2).astype(np.uint8)

    def apply_pauli_unitary(self, p: PauliOperator) -> "StabilizerTableau":
        """Conjugate by a Hermitian Pauli: anticommuting rows flip sign."""
        if not is_hermitian(p):
            raise ContractViolation("apply_pauli_unitary needs a Hermitian Pauli")
        self.r = (self.r + 2 * self._anticommute_vector(p)) % 4
        return self

    def apply_pauli_rotation(self, q: PauliOperator) -> "StabilizerTableau":
        """Conjugate by exp(i pi/4 Q): anticommuting rows R become i*Q*R."""
        if not is_hermitian(q):
            raise ContractViolation("apply_pauli_rotation needs a Hermitian axis")
        anti = self._anticommute_vector(q).astype(bool)
        if not anti.any():
            return self
        xq, zq = self._bits(q)
        # phase of i * Q * R per row: 1 + q.phase + r_R + 2*popcount(z_Q & x_R)
        extra = 1 + q.phase + 2 * ((zq & self.x[anti]).sum(axis=1) % 2)
        self.r[anti] = (self.r[anti] + extra) % 4
        self.x[anti] ^= xq
        self.z[anti] ^= zq
        return self

    # -- reads ----------------------------------------------------------------

    def expectation(self, p: PauliOperator) -> int:
        """+1/-1 if +-p is in the stabilizer group, else 0. Non-destructive."""
        if not is_hermitian(p):
            raise ContractViolation("expectation needs a Hermitian operator")
        anti = self._anticommute_vector(p)
        if anti[self.n:].any():
            return 0
        return self._deterministic_sign(p, anti)

    def _deterministic_sign(self, p: PauliOperator, anti: np.ndarray) -> int:
        xv, zv = self._bits(p)
        acc_x = np.zeros(self.n, dtype=np.uint8)
        acc_z = np.zeros(self.n, dtype=np.uint8)
        phase = 0
        for i in np.nonzero(anti[: self.n])[0]:
            row = self.n + int(i)
            phase += int(self.r[row]) + 2 * (int((acc_z & self.x[row]).sum()) % 2)
            acc_x ^= self.x[row]
            acc_z ^= self.z[row]
        if not (np.array_equal(acc_x, xv) and np.array_equal(acc_z, zv)):
            raise AssertionError("operator commutes with group but is not in it")
        diff = (phase - p.phase) % 4
        if diff % 2:
            raise AssertionError("non-real relative phase in expectation")
        return 1 if diff == 0 else -1

    def measure(self, p: PauliOperator) -> int:
        """Projective measurement; returns +-1 and updates the state if the
        outcome was indeterminate."""
        if not is_hermitian(p):
            raise ContractViolation("measure needs a Hermitian operator")
        anti = self._anticommute_vector(p)
        stab_anti = np.nonzero(anti[self.n:])[0]
        if stab_anti.size == 0:
            return self._deterministic_sign(p, anti)
        pivot = self.n + int(stab_anti[0])
        for row in np.nonzero(anti)[0]:
            row = int(row)
            if row != pivot:
                self._rowmult(row, pivot)
        # old pivot stabilizer becomes the paired destabilizer
        d = pivot - self.n
        self.x[d] = self.x[pivot]
        self.z[d] = self.z[pivot]
        self.r[d] = self.r[pivot]
        outcome = 1 if self.rng.integers(0, 2) == 0 else -1
        xv, zv = self._bits(p)
        self.x[pivot] = xv
        self.z[pivot] = zv
        self.r[pivot] = (p.phase + (0 if outcome == 1 else 2)) % 4
        return outcome

    def _rowmult(self, h: int, i: int) -> None:
        """row_h <- row_h * row_i with exact phase."""
        self.r[h] = (int(self.r[h]) + int(self.r[i]) +
                     2 * (int((self.z[h] & self.x[i]).sum()) % 2)) % 4
        self.x[h] ^= self.x[i]
        self.z[h] ^= self.z[i]

    # -- invariants -------------------------------------------------------

    def validate(self) -> None:
        """Raise AssertionError if any tableau invariant is broken."""
        n = self.n
        for i in range(n):
            row = self.stabilizer(i)
            if not is_hermitian(row):
                raise AssertionError(f"stabilizer {i} is not Hermitian: {row}")
            if row.prefix_exponent % 2:
                raise AssertionError(f"stabilizer {i} has imaginary sign")
        gram = self._gram(self.x[n:], self.z[n:], self.x[n:], self.z[n:])
        if gram.any():
            raise AssertionError("stabilizer rows do not pairwise commute")
        rows = [self._row_mask(n + i) for i in range(n)]
        if gf2_rank(rows) != n:
            raise AssertionError("stabilizer rows are GF(2)-dependent")
        pairing = self._gram(self.x[:n], self.z[:n], self.x[n:], self.z[n:])
        if not np.array_equal(pairing, np.eye(n, dtype=np.uint8)):
            raise AssertionError("destabilizer pairing broken")

    def _row_mask(self, i: int) -> int:
        acc = 0
        for j in range(self.n):
            acc |= int(self.x[i, j]) << j
            acc |= int(self.z[i, j]) << (self.n + j)
        return acc

    @staticmethod
    def _gram(xa, za, xb, zb) -> np.ndarray:
        return ((xa.astype(np.int64) @ zb.T.astype(np.int64)) +
                (za.astype(np.int64) @ xb.T.astype(np.int64))) % 2
