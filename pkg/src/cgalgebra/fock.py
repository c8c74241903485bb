"""Cryptohermitian oscillator layer: ladder algebra, truncated matrices,
modes, overlaps, and exact eigenfunction checks.

Symbolic work happens in :class:`LadderOp`, the normal-ordered algebra on
two independent ladder pairs (daggers to the left, [a, a+] = [b, b+] = 1);
the formal deformation slot of the scalar ring carries the coupling
``gbar`` when it is kept symbolic.  Numerical work uses dense complex
matrices on the truncated basis |n, m> ordered by energy.

Conventions: unnormalized states |n, m> = (a+)^n (b+)^m |vac> with
<n, m | n, m> = n! m! for symbolic expansions; the numerical basis is
orthonormal.  Matrix entry [i, j] of an operator is the amplitude of basis
state j in Op|basis_i> (rows index input states), which makes the coupled
number-like operator exactly lower triangular in the energy order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, sqrt
from typing import Dict, List, Mapping, Optional, Tuple, Union

import numpy as np

from .errors import (
    CheckFailed,
    CutoffTooSmall,
    DegenerateModes,
    NonTerminatingSeries,
)
from .linalg import gaussian_rational_roots, charpoly, nullspace
from .realizations import realization_osc, h0_op
from .ring import Coefficient, GaussianLike, GaussianRational, GAMMA
from .weyl import Wavefunction, WeylOp, apply, commutator, multiply

F = Fraction

GbarLike = Union[Coefficient, GaussianRational, int, Fraction, complex, None]


def _gbar_coeff(gbar: GbarLike) -> Coefficient:
    """Interpret gbar: None keeps it formal (the ring's g slot)."""
    if gbar is None:
        return GAMMA
    if isinstance(gbar, Coefficient):
        return gbar
    if isinstance(gbar, (float, complex)):
        z = complex(gbar)
        return Coefficient.of(GaussianRational(Fraction(z.real), Fraction(z.imag)))
    return Coefficient.of(GaussianRational.of(gbar))


# ---------------------------------------------------------------------------
# normal-ordered ladder algebra
# ---------------------------------------------------------------------------

Word = Tuple[int, int, int, int]  # (a+ power, a power, b+ power, b power)


def _falling(a: int, r: int) -> int:
    out = 1
    for j in range(r):
        out *= a - j
    return out


def _comb(n: int, k: int) -> int:
    from math import comb
    return comb(n, k)


class LadderOp:
    """Finite sum of normal-ordered words (a+)^p a^q (b+)^r b^s."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Word, Coefficient] = ()):
        d: Dict[Word, Coefficient] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            c = Coefficient.of(c)
            if c.is_zero():
                continue
            s = d.get(w, Coefficient()) + c
            if s.is_zero():
                d.pop(w, None)
            else:
                d[w] = s
        self._terms = d

    # -- constructors --------------------------------------------------
    @staticmethod
    def zero() -> "LadderOp":
        return LadderOp({})

    @staticmethod
    def scalar(c) -> "LadderOp":
        return LadderOp({(0, 0, 0, 0): Coefficient.of(c)})

    @staticmethod
    def one() -> "LadderOp":
        return LadderOp.scalar(1)

    @staticmethod
    def a() -> "LadderOp":
        return LadderOp({(0, 1, 0, 0): Coefficient.of(1)})

    @staticmethod
    def adag() -> "LadderOp":
        return LadderOp({(1, 0, 0, 0): Coefficient.of(1)})

    @staticmethod
    def b() -> "LadderOp":
        return LadderOp({(0, 0, 0, 1): Coefficient.of(1)})

    @staticmethod
    def bdag() -> "LadderOp":
        return LadderOp({(0, 0, 1, 0): Coefficient.of(1)})

    # -- views -----------------------------------------------------------
    def terms(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, LadderOp):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __len__(self):
        return len(self._terms)

    # -- linear structure ---------------------------------------------------
    def __add__(self, other: "LadderOp") -> "LadderOp":
        d = dict(self._terms)
        for w, c in other._terms.items():
            s = d.get(w, Coefficient()) + c
            if s.is_zero():
                d.pop(w, None)
            else:
                d[w] = s
        out = LadderOp.__new__(LadderOp)
        out._terms = d
        return out

    def __neg__(self) -> "LadderOp":
        out = LadderOp.__new__(LadderOp)
        out._terms = {w: -c for w, c in self._terms.items()}
        return out

    def __sub__(self, other: "LadderOp") -> "LadderOp":
        return self + (-other)

    def scale(self, c) -> "LadderOp":
        c = Coefficient.of(c)
        if c.is_zero():
            return LadderOp.zero()
        out = LadderOp.__new__(LadderOp)
        out._terms = {w: v * c for w, v in self._terms.items()}
        return out

    def __mul__(self, other) -> "LadderOp":
        if not isinstance(other, LadderOp):
            return self.scale(other)
        acc: Dict[Word, Coefficient] = {}
        for (p1, q1, r1, s1), c1 in self._terms.items():
            for (p2, q2, r2, s2), c2 in other._terms.items():
                base = c1 * c2
                # a^q1 (a+)^p2 = sum_k C(q1,k) falling(p2,k) (a+)^{p2-k} a^{q1-k}
                for k in range(min(q1, p2) + 1):
                    ca = _comb(q1, k) * _falling(p2, k)
                    if ca == 0:
                        continue
                    for l in range(min(s1, r2) + 1):
                        cb = _comb(s1, l) * _falling(r2, l)
                        if cb == 0:
                            continue
                        w = (p1 + p2 - k, q1 + q2 - k, r1 + r2 - l, s1 + s2 - l)
                        v = base * (ca * cb)
                        s = acc.get(w, Coefficient()) + v
                        if s.is_zero():
                            acc.pop(w, None)
                        else:
                            acc[w] = s
        out = LadderOp.__new__(LadderOp)
        out._terms = acc
        return out

    def __rmul__(self, other) -> "LadderOp":
        return self.scale(other)

    def substitute(self, gbar: GaussianLike) -> "LadderOp":
        d = {}
        for w, c in self._terms.items():
            c2 = c.substitute(gamma=gbar)
            if not c2.is_zero():
                d[w] = c2
        return LadderOp(d)

    def conj_params(self) -> "LadderOp":
        return LadderOp({w: c.conj() for w, c in self._terms.items()})

    # -- actions ---------------------------------------------------------
    def apply_state(self, state: Mapping[Tuple[int, int], Coefficient]) -> Dict[Tuple[int, int], Coefficient]:
        """Act on a ket expanded over unnormalized |n, m>."""
        out: Dict[Tuple[int, int], Coefficient] = {}
        for (n, m), amp in state.items():
            for (p, q, r, s), c in self._terms.items():
                if q > n or s > m:
                    continue
                factor = _falling(n, q) * _falling(m, s)
                key = (n - q + p, m - s + r)
                v = amp * c * factor
                acc = out.get(key, Coefficient()) + v
                if acc.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = acc
        return out

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        chunks = []
        for w in sorted(self._terms):
            p, q, r, s = w
            facs = []
            if p:
                facs.append(f"ad^{p}")
            if q:
                facs.append(f"a^{q}")
            if r:
                facs.append(f"bd^{r}")
            if s:
                facs.append(f"b^{s}")
            head = "*".join(facs) if facs else "1"
            chunks.append(f"{head} * ({self._terms[w]})")
        return " + ".join(chunks)

    __repr__ = __str__


def ladder_commutator(x: LadderOp, y: LadderOp) -> LadderOp:
    return x * y - y * x


def ladder_similarity(s: LadderOp, x: LadderOp, max_depth: int = 64) -> LadderOp:
    """e^s x e^{-s} via the terminating ad-series."""
    out = x
    term = x
    for n in range(1, max_depth + 1):
        term = ladder_commutator(s, term)
        if term.is_zero():
            return out
        out = out + term.scale(Fraction(1, factorial(n)))
    raise NonTerminatingSeries(f"ladder ad-series still alive after {max_depth} steps",
                               residual=term)


# ---------------------------------------------------------------------------
# the coupled number-like operators
# ---------------------------------------------------------------------------

def k_ladder(gbar: GbarLike = None, modes: Tuple[int, int] = (1, 3)) -> LadderOp:
    """K = m1 a+a + m2 b+b + 1/2 + gbar (a + a+) b."""
    g = _gbar_coeff(gbar)
    m1, m2 = modes
    out = LadderOp({(1, 1, 0, 0): Coefficient.of(m1), (0, 0, 1, 1): Coefficient.of(m2),
                    (0, 0, 0, 0): Coefficient.of(F(1, 2))})
    coupling = LadderOp({(0, 1, 0, 1): g, (1, 0, 0, 1): g})
    return out + coupling


def n_ladder(gbar: GbarLike = None) -> LadderOp:
    """Number-like partner N = a+a + b+b + (gbar/2) ab - (gbar^2/12) b^2.

    Commutes with K(gbar); reduces to the total number operator at zero
    coupling.  (With the modes written in the eigenbasis, N = A3 A-3 + A1 A-1.)
    """
    g = _gbar_coeff(gbar)
    return LadderOp({(1, 1, 0, 0): Coefficient.of(1), (0, 0, 1, 1): Coefficient.of(1),
                     (0, 1, 0, 1): g * F(1, 2), (0, 0, 0, 2): -(g * g) * F(1, 12)})


def decoupling_exponent(gbar: GbarLike = None) -> LadderOp:
    """The printed map exponent E = -(gbar/2 a+b + gbar/4 ab + gbar^2/48 b^2)."""
    g = _gbar_coeff(gbar)
    return LadderOp({(1, 0, 0, 1): -(g * F(1, 2)), (0, 1, 0, 1): -(g * F(1, 4)),
                     (0, 0, 0, 2): -(g * g) * F(1, 48)})


@dataclass
class KgammaReport:
    depth: int
    conjugated_matches: bool
    kn_commute: bool

    @property
    def ok(self) -> bool:
        return self.conjugated_matches and self.kn_commute


def kgamma_decoupling_check(gbar: GbarLike = None, max_depth: int = 16) -> KgammaReport:
    """Verify e^{-E} K(0) e^{E} = K(gbar) exactly, E the printed exponent.

    The orientation (conjugation by e^{-E} rather than e^{E}) is the one the
    exact expansion singles out; the series terminates because each ad step
    strictly lowers the b+ count.  Also checks [K(gbar), N(gbar)] = 0.
    """
    e_op = decoupling_exponent(gbar)
    k0 = k_ladder(0)
    target = k_ladder(gbar)
    out = k0
    term = k0
    depth = 0
    for n in range(1, max_depth + 1):
        term = ladder_commutator(-e_op, term)
        if term.is_zero():
            depth = n - 1
            break
        out = out + term.scale(Fraction(1, factorial(n)))
    else:
        raise NonTerminatingSeries("decoupling exponent did not terminate", residual=term)
    matches = out == target
    kn = ladder_commutator(k_ladder(gbar), n_ladder(gbar)).is_zero()
    return KgammaReport(depth, matches, kn)


# ---------------------------------------------------------------------------
# modes of the adjoint action
# ---------------------------------------------------------------------------

_MODE_BASIS = ("a", "a+", "b", "b+")
_MODE_OPS = {
    "a": LadderOp.a, "a+": LadderOp.adag, "b": LadderOp.b, "b+": LadderOp.bdag,
}


@dataclass
class ModeSolution:
    lam: Fraction
    coeffs: Dict[str, Coefficient]

    def operator(self) -> LadderOp:
        out = LadderOp.zero()
        for name, c in self.coeffs.items():
            out = out + _MODE_OPS[name]().scale(c)
        return out


def _pairing(u: Dict[str, Coefficient], v: Dict[str, Coefficient]) -> Coefficient:
    """Commutator pairing of two linear ladder combinations."""
    out = Coefficient()
    z = Coefficient()
    ua, uad = u.get("a", z), u.get("a+", z)
    ub, ubd = u.get("b", z), u.get("b+", z)
    va, vad = v.get("a", z), v.get("a+", z)
    vb, vbd = v.get("b", z), v.get("b+", z)
    return ua * vad - uad * va + ub * vbd - ubd * vb


def mode_solver(gbar: GbarLike = None, modes: Tuple[int, int] = (1, 3)) -> List[ModeSolution]:
    """Eigen-decomposition of ad_K on span{a, a+, b, b+}, exactly.

    Returns the four modes normalized so the canonical pairing gives
    [A_{-i}, A_j] = delta_ij; raises :class:`DegenerateModes` if eigenvalues
    collide (they cannot for the coupled number-like operator).
    """
    k = k_ladder(gbar, modes)
    basis_ops = [op() for op in (_MODE_OPS[n] for n in _MODE_BASIS)]
    mat = [[Coefficient() for _ in range(4)] for _ in range(4)]
    for j, bop in enumerate(basis_ops):
        img = ladder_commutator(k, bop)
        for w, c in img.terms():
            key = {(0, 1, 0, 0): 0, (1, 0, 0, 0): 1, (0, 0, 0, 1): 2, (0, 0, 1, 0): 3}.get(w)
            if key is None:
                raise DegenerateModes("adjoint action leaves the linear span")
            mat[key][j] = c
    cp = charpoly(mat)
    if not all(c.is_scalar() for c in cp):
        raise DegenerateModes("adjoint eigenvalues are not scalars")
    roots = gaussian_rational_roots([c.scalar_value() for c in cp])
    if len(roots) != 4:
        raise DegenerateModes(f"expected 4 distinct rational eigenvalues, got {roots}")
    sols: List[ModeSolution] = []
    for lam in roots:
        shifted = [[mat[i][j] - (Coefficient.of(lam) if i == j else Coefficient())
                    for j in range(4)] for i in range(4)]
        vecs = nullspace(shifted)
        if len(vecs) != 1:
            raise DegenerateModes(f"eigenvalue {lam} has multiplicity {len(vecs)}")
        coeffs = {name: v for name, v in zip(_MODE_BASIS, vecs[0]) if not v.is_zero()}
        sols.append(ModeSolution(lam, coeffs))
    sols.sort(key=lambda s: s.lam)
    # normalize: scale A_{+|lam|} so that [A_{-|lam|}, A_{+|lam|}] = 1
    by_lam = {s.lam: s for s in sols}
    for lam in sorted(by_lam):
        if lam <= 0:
            continue
        neg = by_lam.get(-lam)
        if neg is None:
            continue
        p = _pairing(neg.coeffs, by_lam[lam].coeffs)
        inv = Coefficient.of(1).divide_exact(p)
        by_lam[lam].coeffs = {k2: v * inv for k2, v in by_lam[lam].coeffs.items()}
    return [by_lam[lam] for lam in sorted(by_lam)]


# ---------------------------------------------------------------------------
# truncated matrices and spectra
# ---------------------------------------------------------------------------

@dataclass
class FockBasis:
    """Energy-ordered truncated basis |n, m>, n <= na, m <= nb."""

    na: int
    nb: int
    modes: Tuple[int, int] = (1, 3)

    def states(self) -> List[Tuple[int, int]]:
        m1, m2 = self.modes
        sts = [(n, m) for n in range(self.na + 1) for m in range(self.nb + 1)]
        sts.sort(key=lambda nm: (m1 * nm[0] + m2 * nm[1], nm[0]))
        return sts

    def index(self) -> Dict[Tuple[int, int], int]:
        return {nm: i for i, nm in enumerate(self.states())}


def ladder_matrix(op: LadderOp, basis: FockBasis) -> np.ndarray:
    """Dense matrix with row i = expansion of op|state_i> (orthonormal basis).

    Amplitudes that would leave the truncation are dropped, exactly as a
    finite truncation demands; triangularity statements are exact because
    the coupled operator only moves states down in energy.
    """
    states = basis.states()
    index = basis.index()
    dim = len(states)
    out = np.zeros((dim, dim), dtype=complex)
    for i, (n, m) in enumerate(states):
        # act on the unnormalized ket, convert amplitudes with sqrt(n! m!)
        vec = {(n, m): Coefficient.of(1)}
        img = op.apply_state(vec)
        for (n2, m2), amp in img.items():
            j = index.get((n2, m2))
            if j is None:
                continue
            # unnormalized amplitude -> orthonormal conversion
            scalar = complex(amp.scalar_value())
            factor = sqrt(factorial(n2) * factorial(m2)) / sqrt(factorial(n) * factorial(m))
            out[i, j] = scalar * factor
    return out


def k_matrix(gbar: GbarLike, na: int, nb: int, modes: Tuple[int, int] = (1, 3)) -> np.ndarray:
    """Truncated matrix of K; exactly block-lower-triangular in energy order."""
    if na < 1 or nb < 1:
        raise CutoffTooSmall("cutoffs must be at least 1")
    g = _gbar_coeff(gbar)
    if not g.is_scalar():
        raise ValueError("numerical matrix needs a numeric coupling")
    return ladder_matrix(k_ladder(g, modes), FockBasis(na, nb, modes))


def n_matrix(gbar: GbarLike, na: int, nb: int, modes: Tuple[int, int] = (1, 3)) -> np.ndarray:
    g = _gbar_coeff(gbar)
    if not g.is_scalar():
        raise ValueError("numerical matrix needs a numeric coupling")
    return ladder_matrix(n_ladder(g), FockBasis(na, nb, modes))


@dataclass
class SpectrumResult:
    eigenvalues: np.ndarray
    max_residual: float

    def sorted_real(self) -> np.ndarray:
        return np.sort_complex(self.eigenvalues).real


def spectrum(matrix: np.ndarray, residual_tol_scale: float = 1e-9) -> SpectrumResult:
    """Numerical eigenvalues with residual reporting.

    Residual ||M v - lam v|| <= tol * ||M|| is checked per eigenpair; a
    failure raises :class:`CheckFailed` with the worst offender.
    """
    vals, vecs = np.linalg.eig(matrix)
    norm = np.linalg.norm(matrix, 2)
    worst = 0.0
    for k in range(len(vals)):
        r = np.linalg.norm(matrix @ vecs[:, k] - vals[k] * vecs[:, k])
        worst = max(worst, r)
    if worst > residual_tol_scale * max(norm, 1.0):
        raise CheckFailed(f"eigen residual {worst:.2e} exceeds tolerance")
    order = np.lexsort((vals.imag, vals.real))
    return SpectrumResult(vals[order], worst)


# ---------------------------------------------------------------------------
# eigenstates and overlaps
# ---------------------------------------------------------------------------

def eigenstate(n: int, m: int, gbar: GbarLike = None,
               na: Optional[int] = None, nb: Optional[int] = None,
               modes: Tuple[int, int] = (1, 3)) -> Dict[Tuple[int, int], Coefficient]:
    """|n-bar, m-bar> = A_{+1}^n A_{+|m2|}^m |vac> over unnormalized |n, m>.

    When cutoffs are supplied the state must fit inside them with margin
    (n + |m2| m <= na and m <= nb) or :class:`CutoffTooSmall` is raised.
    """
    m1, m2 = modes
    if na is not None and n + abs(m2) * m > na:
        raise CutoffTooSmall("state would touch the a-cutoff")
    if nb is not None and m > nb:
        raise CutoffTooSmall("state would touch the b-cutoff")
    sols = mode_solver(gbar, modes)
    by_lam = {s.lam: s for s in sols}
    a1 = by_lam[F(abs(m1))].operator()
    a3 = by_lam[F(abs(m2))].operator()
    state = {(0, 0): Coefficient.of(1)}
    for _ in range(m):
        state = a3.apply_state(state)
    for _ in range(n):
        state = a1.apply_state(state)
    return state


def state_inner(s1: Mapping[Tuple[int, int], Coefficient],
                s2: Mapping[Tuple[int, int], Coefficient],
                gbar_value: Optional[GaussianRational] = None) -> GaussianRational:
    """<s1 | s2> with the unnormalized metric <n,m|n,m> = n! m!."""
    out = GaussianRational.of(0)
    for key, a1 in s1.items():
        a2 = s2.get(key)
        if a2 is None:
            continue
        v1 = a1 if a1.is_scalar() else a1.substitute(gamma=gbar_value)
        v2 = a2 if a2.is_scalar() else a2.substitute(gamma=gbar_value)
        w = v1.scalar_value().conj() * v2.scalar_value()
        out = out + w * (factorial(key[0]) * factorial(key[1]))
    return out


def overlap_probability(s1: Mapping[Tuple[int, int], Coefficient],
                        s2: Mapping[Tuple[int, int], Coefficient]) -> Fraction:
    """|<s1|s2>|^2 for the normalized states, exact."""
    n12 = state_inner(s1, s2)
    n11 = state_inner(s1, s1)
    n22 = state_inner(s2, s2)
    if n11.is_zero() or n22.is_zero():
        raise ValueError("cannot normalize a zero state")
    return n12.abs2() / (n11.re * n22.re)


def eigenstate_matrix(gbar: GbarLike, na: int, nb: int,
                      modes: Tuple[int, int] = (1, 3)) -> np.ndarray:
    """Rows = mode eigenstates that fit the cutoffs, in the orthonormal basis."""
    basis = FockBasis(na, nb, modes)
    index = basis.index()
    m1, m2 = modes
    rows = []
    for n in range(na + 1):
        for m in range(nb + 1):
            if n + abs(m2) * m > na or m > nb:
                continue
            st = eigenstate(n, m, gbar, na, nb, modes)
            row = np.zeros(len(index), dtype=complex)
            for (n2, m2v), amp in st.items():
                j = index.get((n2, m2v))
                if j is None:
                    raise CutoffTooSmall("eigenstate leaks outside the cutoff")
                row[j] = complex(amp.scalar_value()) * sqrt(factorial(n2) * factorial(m2v))
            rows.append(row)
    return np.array(rows)


# ---------------------------------------------------------------------------
# symbolic eigenfunction checks for the differential picture
# ---------------------------------------------------------------------------

@dataclass
class EigencheckEntry:
    label: str
    ok: bool
    detail: str = ""


@dataclass
class EigencheckReport:
    entries: List[EigencheckEntry]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def __iter__(self):
        return iter(self.entries)


def quoted_psi(name: str) -> Wavefunction:
    """Commonly quoted closed forms of the four lowest eigenfunctions.

    Three of them are exact; the xy coefficient of the (1, 1) entry is
    transcribed as quoted (4i/g) even though that value fails the
    eigenvalue identity, so regression tests can demonstrate the slip.
    See :func:`expected_psi` for the verified forms.
    """
    c = Coefficient.monomial
    if name == "psi10":
        return Wavefunction({(1, 0): c(GaussianRational(0, -8), -1, 0)}, True, -1, 0)
    if name == "psi20":
        return Wavefunction({(0, 0): c(GaussianRational(F(32)), -2, 0),
                             (2, 0): c(GaussianRational(F(-64)), -2, 0)}, True, -2, 0)
    if name == "psi01":
        return Wavefunction({(1, 0): c(GaussianRational(0, -24), -1, 0),
                             (0, 1): c(GaussianRational(F(-48)), -2, 0)}, True, -3, 0)
    if name == "psi11":
        return Wavefunction({(0, 0): c(GaussianRational(F(48)), -2, 0),
                             (2, 0): c(GaussianRational(F(-192)), -2, 0),
                             (1, 1): c(GaussianRational(0, 192), -3, 0)}, True, -4, 0)
    raise KeyError(name)


def expected_psi(name: str) -> Wavefunction:
    """Frozen closed forms verified by two independent engine routes.

    Identical to :func:`quoted_psi` except the (1, 1) polynomial, whose xy
    term carries 8i/g: the 4i/g variant is not an eigenfunction (the
    eigenvalue identity fails on it, which the tests check explicitly).
    """
    if name != "psi11":
        return quoted_psi(name)
    c = Coefficient.monomial
    return Wavefunction({(0, 0): c(GaussianRational(F(48)), -2, 0),
                         (2, 0): c(GaussianRational(F(-192)), -2, 0),
                         (1, 1): c(GaussianRational(0, 384), -3, 0)}, True, -4, 0)


def h0_eigencheck(max_level: int = 6) -> EigencheckReport:
    """Exact lowest-weight verification of the deformed oscillator.

    Checks, all with formal coupling: the ground state is annihilated by
    both raising generators; the commutators [H0, w-1] = w-1 and
    [H0, w-3] = 3 w-3; the quadratic-combination identity for H0; the
    explicit low eigenfunctions; and H0 psi_{n,m} = (n + 3m + 2) psi_{n,m}
    for every n + 3m <= max_level.
    """
    r = realization_osc()
    h0 = h0_op()
    entries: List[EigencheckEntry] = []
    ground = Wavefunction.ground()

    for name in ("w+1", "w+3"):
        img = apply(r[name], ground)
        entries.append(EigencheckEntry(f"{name} annihilates ground state", img.is_zero(),
                                       "" if img.is_zero() else str(img)))

    for name, mult in (("w-1", 1), ("w-3", 3)):
        diff = commutator(h0, r[name]) - r[name].scale(mult)
        entries.append(EigencheckEntry(f"[H0, {name}] = {mult} {name}", diff.is_zero(),
                                       "" if diff.is_zero() else str(diff)))

    g2_16 = Coefficient.monomial(GaussianRational(F(1, 16)), 2, 0)
    quad = (multiply(r["w-1"], r["w+1"]) - multiply(r["w-3"], r["w+3"])).scale(g2_16) \
        + WeylOp.scalar(2)
    entries.append(EigencheckEntry("H0 equals its quadratic ladder combination",
                                   quad == h0, "" if quad == h0 else str(quad - h0)))

    # explicit low eigenfunctions, built by repeated application
    psis: Dict[Tuple[int, int], Wavefunction] = {(0, 0): ground}
    for name, (n, m) in (("psi10", (1, 0)), ("psi20", (2, 0)),
                         ("psi01", (0, 1)), ("psi11", (1, 1))):
        f = ground
        for _ in range(m):
            f = apply(r["w-3"], f)
        for _ in range(n):
            f = apply(r["w-1"], f)
        want = expected_psi(name)
        entries.append(EigencheckEntry(f"{name} closed form", f == want,
                                       "" if f == want else str(f)))
        # cross-check through the operator-product route
        word = WeylOp.one()
        for _ in range(m):
            word = multiply(r["w-3"], word)
        for _ in range(n):
            word = multiply(r["w-1"], word)
        f2 = apply(word, ground)
        entries.append(EigencheckEntry(f"{name} product route agrees", f2 == f,
                                       "" if f2 == f else str(f2)))

    for total in range(0, max_level + 1):
        for m in range(total // 3 + 1):
            n = total - 3 * m
            if n < 0:
                continue
            f = ground
            for _ in range(m):
                f = apply(r["w-3"], f)
            for _ in range(n):
                f = apply(r["w-1"], f)
            img = apply(h0, f)
            diff = img - f.scale(n + 3 * m + 2)
            entries.append(EigencheckEntry(f"H0 psi_({n},{m}) = {n + 3 * m + 2} psi", diff.is_zero(),
                                           "" if diff.is_zero() else str(diff)))
    return EigencheckReport(entries)


# ---------------------------------------------------------------------------
# PT symmetry
# ---------------------------------------------------------------------------

def pt_check(op: Union[WeylOp, LadderOp]) -> bool:
    """Invariance under x -> -x, i -> -i.

    For differential operators this is the engine transform; for ladder
    words it maps (a, a+) -> (-a, -a+), leaves (b, b+), and conjugates
    coefficients (the coupling must be substituted so conjugation sees it:
    the differential coupling is real, its ladder image imaginary).
    """
    if isinstance(op, WeylOp):
        return op.pt_transform() == op
    flipped = {}
    for (p, q, r, s), c in op.terms():
        sign = -1 if (p + q) % 2 else 1
        c2 = c.conj()
        flipped[(p, q, r, s)] = -c2 if sign < 0 else c2
    return LadderOp(flipped) == op
