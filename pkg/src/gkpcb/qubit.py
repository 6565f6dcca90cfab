"""Logical qubit density matrices and Bloch vectors."""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

MAGIC_VECTOR = np.array([1.0, cmath.exp(1j * math.pi / 4)]) / math.sqrt(2)


@dataclass(frozen=True)
class BlochVector:
    bx: float
    by: float
    bz: float

    def __iter__(self):
        return iter((self.bx, self.by, self.bz))

    @property
    def length(self) -> float:
        return math.sqrt(self.bx**2 + self.by**2 + self.bz**2)


@dataclass(frozen=True)
class QubitDensityMatrix:
    """2x2 density matrix indexed by logical {0, 1}; ``matrix[0, 1] = <psi1|psi0>``."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got {m.shape}")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_vector(cls, v) -> QubitDensityMatrix:
        v = np.asarray(v, dtype=complex)
        v = v / np.linalg.norm(v)
        return cls(np.outer(v, v.conj()))

    def problems(self, herm_tol=1e-12, trace_tol=1e-10, psd_tol=1e-10) -> list[str]:
        m = self.matrix
        out = []
        if np.max(np.abs(m - m.conj().T)) > herm_tol:
            out.append("not Hermitian")
        if abs(np.trace(m) - 1) > trace_tol:
            out.append(f"trace {np.trace(m).real:.3g} != 1")
        if np.min(np.linalg.eigvalsh((m + m.conj().T) / 2)) < -psd_tol:
            out.append("not positive semidefinite")
        return out

    def validate(self, **tolerances) -> QubitDensityMatrix:
        problems = self.problems(**tolerances)
        if problems:
            raise ValueError("invalid qubit density matrix: " + ", ".join(problems))
        return self

    def expectation(self, v) -> float:
        """<v|rho|v> for a normalised pure qubit state ``v``."""
        v = np.asarray(v, dtype=complex)
        return float(np.real(np.vdot(v, self.matrix @ v)))

    def to_dict(self) -> dict:
        return {
            f"rho{i}{j}": {"re": float(self.matrix[i, j].real), "im": float(self.matrix[i, j].imag)}
            for i in range(2)
            for j in range(2)
        }

    @classmethod
    def from_dict(cls, d: dict) -> QubitDensityMatrix:
        m = [[complex(d[f"rho{i}{j}"]["re"], d[f"rho{i}{j}"]["im"]) for j in range(2)] for i in range(2)]
        return cls(np.array(m))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def average(rhos, weights) -> QubitDensityMatrix:
    w = np.asarray(weights, dtype=float)
    m = sum(wi * r.matrix for wi, r in zip(w, rhos)) / w.sum()
    return QubitDensityMatrix(m)


def fidelity_to_magic(rho: QubitDensityMatrix) -> float:
    """<T|rho|T> with |T> = (|0> + e^{i pi/4} |1>)/sqrt(2)."""
    rho.validate(trace_tol=1e-8)
    return rho.expectation(MAGIC_VECTOR)


def bloch_vector(rho: QubitDensityMatrix) -> BlochVector:
    m = rho.matrix
    return BlochVector(
        float(2 * m[0, 1].real),
        float(-2 * m[0, 1].imag),
        float((m[0, 0] - m[1, 1]).real),
    )


def state_fidelity(rho: QubitDensityMatrix, sigma: QubitDensityMatrix) -> float:
    """Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))**2."""
    s = scipy.linalg.sqrtm(rho.matrix)
    inner = scipy.linalg.sqrtm(s @ sigma.matrix @ s)
    return float(np.real(np.trace(inner)) ** 2)


def bloch_rows_to_csv(path, vectors) -> None:
    with open(path, "w") as fh:
        fh.write("bx,by,bz\n")
        for b in vectors:
            fh.write(",".join(format(v, ".17g") for v in b) + "\n")
