from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Sym2:
    p11: float
    p12: float
    p22: float

    @classmethod
    def from_array(cls, a: np.ndarray) -> "Sym2":
        return cls(p11=float(a[0, 0]), p12=float(a[0, 1]), p22=float(a[1, 1]))

    def as_array(self) -> np.ndarray:
        return np.array([[self.p11, self.p12], [self.p12, self.p22]])

    @property
    def det(self) -> float:
        return self.p11 * self.p22 - self.p12 * self.p12

    @property
    def scale(self) -> float:
        return max(abs(self.p11), abs(self.p12), abs(self.p22))

    def scaled(self, c: float) -> "Sym2":
        return Sym2(c * self.p11, c * self.p12, c * self.p22)


@dataclass(frozen=True)
class Sym3:
    t11: float
    t12: float
    t13: float
    t22: float
    t23: float
    t33: float

    @classmethod
    def from_array(cls, a: np.ndarray) -> "Sym3":
        return cls(
            t11=float(a[0, 0]),
            t12=float(a[0, 1]),
            t13=float(a[0, 2]),
            t22=float(a[1, 1]),
            t23=float(a[1, 2]),
            t33=float(a[2, 2]),
        )

    def as_array(self) -> np.ndarray:
        return np.array(
            [
                [self.t11, self.t12, self.t13],
                [self.t12, self.t22, self.t23],
                [self.t13, self.t23, self.t33],
            ]
        )

    @property
    def scale(self) -> float:
        return max(abs(self.t11), abs(self.t12), abs(self.t13), abs(self.t22), abs(self.t23), abs(self.t33))

    def scaled(self, c: float) -> "Sym3":
        return Sym3(*(c * v for v in (self.t11, self.t12, self.t13, self.t22, self.t23, self.t33)))

    def leading_block(self) -> Sym2:
        """The 2x2 block obtained by deleting the last row and column."""
        return Sym2(self.t11, self.t12, self.t22)


@dataclass(frozen=True, eq=False)
class StateSpaceHat:
    """Kronecker factors of (A, B, C, E) over the state [d, x]; each expands by (x) I_d."""

    A_hat: np.ndarray
    B_hat: np.ndarray
    C_hat: np.ndarray
    E_hat: np.ndarray

    def expand(self, d: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        eye = np.eye(d)
        return (
            np.kron(self.A_hat, eye),
            np.kron(self.B_hat, eye),
            np.kron(self.C_hat, eye),
            np.kron(self.E_hat, eye),
        )


@dataclass(frozen=True)
class LmiKnobs:
    a0: float = 1.0
    ell: float = 0.0
    rho_sq: float = 0.0
    sigma: float = 0.0
    lam: float = 0.0
