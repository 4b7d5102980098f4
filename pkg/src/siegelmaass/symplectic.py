"""The symplectic group, its action on the Siegel upper half-space and the
transformation laws that go with it."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import NearSingularCocycle, NotPositiveDefinite, SizeMismatch
from .matrixcore import PD_TOL, SiegelPoint, cdet, make_siegel_point, symmetrize


def J(n: int) -> np.ndarray:
    """The standard skew form [[0, I], [-I, 0]]."""
    out = np.zeros((2 * n, 2 * n))
    out[:n, n:] = np.eye(n)
    out[n:, :n] = -np.eye(n)
    return out


@dataclass(frozen=True, eq=False)
class SymplecticElement:
    """A 2n x 2n real matrix (A B; C D).

    Construction does not validate; use :func:`is_symplectic` for that.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise SizeMismatch(f"expected an even square matrix, got shape {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_blocks(cls, A, B, C, D) -> "SymplecticElement":
        return cls(np.block([[np.atleast_2d(A), np.atleast_2d(B)],
                             [np.atleast_2d(C), np.atleast_2d(D)]]))

    @classmethod
    def identity(cls, n: int) -> "SymplecticElement":
        return cls(np.eye(2 * n))

    @property
    def n(self) -> int:
        return self.matrix.shape[0] // 2

    @property
    def A(self):
        return self.matrix[: self.n, : self.n]

    @property
    def B(self):
        return self.matrix[: self.n, self.n:]

    @property
    def C(self):
        return self.matrix[self.n:, : self.n]

    @property
    def D(self):
        return self.matrix[self.n:, self.n:]

    def __matmul__(self, other: "SymplecticElement") -> "SymplecticElement":
        return SymplecticElement(self.matrix @ other.matrix)

    def inverse(self) -> "SymplecticElement":
        """Symplectic inverse (D^t -B^t; -C^t A^t)."""
        return SymplecticElement.from_blocks(self.D.T, -self.B.T, -self.C.T, self.A.T)

    def __repr__(self):
        return f"SymplecticElement(n={self.n}, {np.array2string(self.matrix, precision=3)})"


# generator atoms -----------------------------------------------------------

@dataclass(frozen=True)
class Inversion:
    def matrix(self, n: int) -> np.ndarray:
        return J(n)


@dataclass(frozen=True, eq=False)
class Translation:
    """(I B; 0 I) for an integer symmetric B."""

    B: np.ndarray

    def matrix(self, n: int) -> np.ndarray:
        return np.block([[np.eye(n), self.B], [np.zeros((n, n)), np.eye(n)]])


@dataclass(frozen=True, eq=False)
class Dilation:
    """(U^t 0; 0 U^-1) for an integer unimodular U; acts as Z -> U^t Z U."""

    U: np.ndarray

    def matrix(self, n: int) -> np.ndarray:
        uinv = np.rint(np.linalg.inv(self.U))
        return np.block([[self.U.T, np.zeros((n, n))], [np.zeros((n, n)), uinv]])


Atom = Union[Inversion, Translation, Dilation]


@dataclass(frozen=True)
class GeneratorWord:
    n: int
    atoms: tuple = field(default_factory=tuple)

    def element(self) -> SymplecticElement:
        m = np.eye(2 * self.n)
        for atom in self.atoms:
            m = m @ atom.matrix(self.n)
        return SymplecticElement(np.rint(m))


# predicates and the action ------------------------------------------------

def is_symplectic(g, tol: float = 1e-12):
    """Return ``(ok, residuals)`` for the relation g^t J g = J.

    ``residuals`` holds the max-entry residual of the full relation and of
    the three block relations A^tC = C^tA, B^tD = D^tB, A^tD - C^tB = I.
    """
    m = g.matrix if isinstance(g, SymplecticElement) else np.asarray(g, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
        raise SizeMismatch(f"expected an even square matrix, got shape {m.shape}")
    n = m.shape[0] // 2
    A, B, C, D = m[:n, :n], m[:n, n:], m[n:, :n], m[n:, n:]
    res = {
        "gJg": float(np.max(np.abs(m.T @ J(n) @ m - J(n)))),
        "AtC": float(np.max(np.abs(A.T @ C - C.T @ A))),
        "BtD": float(np.max(np.abs(B.T @ D - D.T @ B))),
        "AtD-CtB": float(np.max(np.abs(A.T @ D - C.T @ B - np.eye(n)))),
    }
    return res["gJg"] <= tol, res


def _cocycle_matrix(g: SymplecticElement, Z: SiegelPoint, pd_tol: float) -> np.ndarray:
    if g.n != Z.n:
        raise SizeMismatch(f"element of degree {g.n} acting on point of degree {Z.n}")
    M = g.C @ Z.Z + g.D
    if abs(cdet(M)) < pd_tol:
        raise NearSingularCocycle(f"|det(CZ+D)| = {abs(cdet(M)):.3e}")
    return M


def act(g: SymplecticElement, Z: SiegelPoint, pd_tol: float = PD_TOL) -> SiegelPoint:
    """(AZ + B)(CZ + D)^-1, re-symmetrized against roundoff."""
    M = _cocycle_matrix(g, Z, pd_tol)
    W = symmetrize(np.linalg.solve(M.T, (g.A @ Z.Z + g.B).T).T)
    try:
        return make_siegel_point(W.real, W.imag, pd_tol=pd_tol)
    except NotPositiveDefinite as exc:
        raise NearSingularCocycle("image left the half-space numerically") from exc


def cocycle(g: SymplecticElement, Z: SiegelPoint) -> complex:
    """det(CZ + D)."""
    return cdet(g.C @ Z.Z + g.D)


def im_transform(g: SymplecticElement, Z: SiegelPoint, pd_tol: float = PD_TOL) -> np.ndarray:
    """(CZ+D)^-t Y (CZbar+D)^-1; real symmetric positive definite."""
    M = _cocycle_matrix(g, Z, pd_tol)
    Minv = np.linalg.inv(M)
    out = Minv.T @ Z.Y @ Minv.conj()
    return symmetrize(out.real)


def differential_transform(g: SymplecticElement, Z: SiegelPoint, H, pd_tol: float = PD_TOL) -> np.ndarray:
    """Image of the tangent direction H: (CZ+D)^-t H (CZ+D)^-1."""
    M = _cocycle_matrix(g, Z, pd_tol)
    Minv = np.linalg.inv(M)
    return Minv.T @ np.asarray(H, dtype=complex) @ Minv


def arclength(Z: SiegelPoint, H) -> complex:
    """tr(Y^-1 H Y^-1 Hbar), the invariant metric evaluated on H."""
    H = np.asarray(H, dtype=complex)
    yi = Z.y_inv
    return complex(np.trace(yi @ H @ yi @ H.conj()))


def metric_invariance_residual(g: SymplecticElement, Z: SiegelPoint, H, pd_tol: float = PD_TOL) -> float:
    """|ds^2(gZ)(dH') - ds^2(Z)(H)|, relative to max(1, |ds^2(Z)(H)|).

    ``g`` may be any matrix of the right shape, which is how the suite
    confirms the residual is sensitive to non-symplectic input.
    """
    before = arclength(Z, H)
    M = g.C @ Z.Z + g.D
    Minv = np.linalg.inv(M)
    W = np.linalg.solve(M.T, (g.A @ Z.Z + g.B).T).T
    Ynew = symmetrize(W.imag)
    Hnew = Minv.T @ np.asarray(H, dtype=complex) @ Minv
    yi = np.linalg.inv(Ynew)
    after = complex(np.trace(yi @ Hnew @ yi @ Hnew.conj()))
    return abs(after - before) / max(1.0, abs(before))


# random elements ----------------------------------------------------------

def random_unimodular(rng: np.random.Generator, n: int, bound: int = 2) -> np.ndarray:
    """Integer matrix with det +-1 and entries bounded by ``bound``."""
    U = np.eye(n, dtype=int)
    if n == 1:
        return U * rng.choice([-1, 1])
    for _ in range(8):
        i, j = rng.choice(n, size=2, replace=False)
        E = np.eye(n, dtype=int)
        E[i, j] = rng.choice([-1, 1])
        cand = U @ E
        if np.max(np.abs(cand)) <= bound:
            U = cand
    if rng.random() < 0.5:
        U[:, 0] *= -1
    return U


def random_sym_int(rng: np.random.Generator, n: int, bound: int = 2) -> np.ndarray:
    B = rng.integers(-bound, bound + 1, size=(n, n))
    return np.triu(B) + np.triu(B, 1).T


def random_word(rng: np.random.Generator, n: int, word_length: int, bound: int = 2) -> GeneratorWord:
    atoms = []
    for _ in range(word_length):
        kind = rng.integers(3)
        if kind == 0:
            atoms.append(Inversion())
        elif kind == 1:
            atoms.append(Translation(random_sym_int(rng, n, bound)))
        else:
            atoms.append(Dilation(random_unimodular(rng, n, bound)))
    return GeneratorWord(n, tuple(atoms))


def random_symplectic(seed, n: int, word_length: int = 4, bound: int = 2) -> SymplecticElement:
    """Element of Sp_n(Z) given by a random bounded generator word.

    ``seed`` is an int, a SeedSequence or a numpy Generator.  A word of
    length 0 is the identity.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    if word_length < 0:
        raise ValueError("word_length must be non-negative")
    return random_word(rng, n, word_length, bound).element()
