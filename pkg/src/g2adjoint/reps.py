"""Character theory for GL3(C) x Gal(E/F) and the 8-dimensional adjoint
action on traceless 3x3 matrices.

Satake classes, Schur characters via the bialternant ratio, SL2-type
characters, the matrix of the adjoint representation extended by the
Frobenius involution X -> J X^t J, the Frobenius eigenspace split, and
symmetric-power plethysm with its greedy decomposition into irreducible
characters.

Character polynomials live in the Laurent variables alpha1, alpha2 (with
alpha3 = 1/(alpha1*alpha2) substituted) or mu.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .algebra import (
    LaurentPoly,
    RingMatrix,
    exact_div_difference,
)


def sym(name, power=1):
    return LaurentPoly.variable(name, power)


@dataclass(frozen=True)
class SplitClass:
    """Unramified parameter diag(alpha1, alpha2, alpha3), alpha1 alpha2
    alpha3 = 1 enforced by substituting alpha3 = (alpha1 alpha2)^-1."""

    alpha1: LaurentPoly
    alpha2: LaurentPoly

    def __post_init__(self):
        for value in (self.alpha1, self.alpha2):
            if not value.is_unit():
                raise ValueError("Satake coordinates must be Laurent units")

    @classmethod
    def symbolic(cls):
        return cls(sym("alpha1"), sym("alpha2"))

    @property
    def alpha3(self):
        return (self.alpha1 * self.alpha2).unit_inverse()

    def diagonal(self):
        return RingMatrix.diagonal([self.alpha1, self.alpha2, self.alpha3])


@dataclass(frozen=True)
class NonSplitClass:
    """Parameter (diag(mu, 1, mu^-1), Fr); the middle sign is +1 after
    adjusting by the center, and the class sits in the Frobenius coset."""

    mu: LaurentPoly
    frobenius_coset: bool = True

    def __post_init__(self):
        if not self.mu.is_unit():
            raise ValueError("mu must be a Laurent unit")

    @classmethod
    def symbolic(cls):
        return cls(sym("mu"))

    def diagonal(self):
        return RingMatrix.diagonal([self.mu, LaurentPoly.one(), self.mu.unit_inverse()])


def _e(i, j):
    return RingMatrix(
        [[1 if (r, c) == (i, j) else 0 for c in range(3)] for r in range(3)]
    )


# Ordered basis of traceless 3x3 matrices, shared by every 8x8 matrix here.
ADJOINT_BASIS = (
    _e(0, 1),              # E12
    _e(0, 2),              # E13
    _e(1, 0),              # E21
    _e(1, 2),              # E23
    _e(2, 0),              # E31
    _e(2, 1),              # E32
    _e(0, 0) - _e(1, 1),   # H1
    _e(1, 1) - _e(2, 2),   # H2
)

J3 = RingMatrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]])


def adjoint_coordinates(m):
    """Coordinates of a traceless 3x3 matrix in ADJOINT_BASIS."""
    trace = m[0, 0] + m[1, 1] + m[2, 2]
    if not _zero(trace):
        raise ValueError("matrix is not traceless")
    return [m[0, 1], m[0, 2], m[1, 0], m[1, 2], m[2, 0], m[2, 1], m[0, 0], -m[2, 2]]


def _zero(x):
    return x.is_zero() if isinstance(x, LaurentPoly) else x == 0


def other_transpose(m):
    """The secondary transpose J m^t J (anti-diagonal reflection)."""
    return m.anti_transpose()


def adjugate3(m):
    """Adjugate of a 3x3 matrix: m * adjugate3(m) = det(m) * Id."""
    def c(i, j):
        rows = [r for r in range(3) if r != i]
        cols = [s for s in range(3) if s != j]
        minor = (
            m[rows[0], cols[0]] * m[rows[1], cols[1]]
            - m[rows[0], cols[1]] * m[rows[1], cols[0]]
        )
        return minor if (i + j) % 2 == 0 else -minor

    return RingMatrix([[c(j, i) for j in range(3)] for i in range(3)])


def conjugation_matrix(g, g_inv):
    """8x8 matrix of X -> g X g_inv on ADJOINT_BASIS."""
    cols = [adjoint_coordinates(g * b * g_inv) for b in ADJOINT_BASIS]
    return RingMatrix([[cols[j][i] for j in range(8)] for i in range(8)])


def conjugation_adjugate_matrix(g):
    """det(g) * r(g): the denominator-free matrix of X -> g X adj(g)."""
    adj = adjugate3(g)
    cols = [adjoint_coordinates(g * b * adj) for b in ADJOINT_BASIS]
    return RingMatrix([[cols[j][i] for j in range(8)] for i in range(8)])


def frobenius_matrix(sign=1):
    """r(Fr): the involution X -> _tX on ADJOINT_BASIS (sign=-1 gives the
    twisted variant r'(Fr) = -r(Fr))."""
    cols = [adjoint_coordinates(other_transpose(b).scale(sign)) for b in ADJOINT_BASIS]
    return RingMatrix([[cols[j][i] for j in range(8)] for i in range(8)])


def r_matrix(satake, sign=1):
    """The 8x8 matrix of the Satake class under the adjoint representation
    (composed with the Frobenius action in the non-split case)."""
    if isinstance(satake, SplitClass):
        g = satake.diagonal()
        g_inv = RingMatrix.diagonal(
            [satake.alpha1.unit_inverse(), satake.alpha2.unit_inverse(),
             satake.alpha1 * satake.alpha2]
        )
        return conjugation_matrix(g, g_inv)
    if isinstance(satake, NonSplitClass):
        g = satake.diagonal()
        g_inv = RingMatrix.diagonal(
            [satake.mu.unit_inverse(), LaurentPoly.one(), satake.mu]
        )
        return conjugation_matrix(g, g_inv) * frobenius_matrix(sign)
    g = satake  # explicit invertible 3x3 over Fractions
    det = g.det()
    if det == 0:
        raise ValueError("matrix is not invertible")
    adj = adjugate3(g)
    g_inv = RingMatrix([[adj[i, j] * Fraction(1, 1) / det for j in range(3)]
                        for i in range(3)])
    return conjugation_matrix(g, g_inv)


def adjoint_weights(alpha1=None, alpha2=None):
    """The eight weights of the adjoint representation at
    diag(alpha1, alpha2, (alpha1 alpha2)^-1), in basis order."""
    a1 = sym("alpha1") if alpha1 is None else alpha1
    a2 = sym("alpha2") if alpha2 is None else alpha2
    a3 = (a1 * a2).unit_inverse()
    eig = (a1, a2, a3)
    order = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]
    weights = [eig[i] * eig[j].unit_inverse() for i, j in order]
    return weights + [LaurentPoly.one(), LaurentPoly.one()]


def schur_char(m1, m2, alpha1=None, alpha2=None):
    """Character of the GL3 irreducible with highest weight
    m1*w1 + m2*w2 at diag(alpha1, alpha2, (alpha1 alpha2)^-1).

    Computed as the Schur polynomial s_(m1+m2, m2, 0) by the bialternant
    ratio, dividing the alternant exactly by the Vandermonde binomials.
    """
    if m1 < 0 or m2 < 0:
        raise ValueError("highest weight must be dominant")
    mu = (m1 + m2 + 2, m2 + 1, 0)
    names = ("x1", "x2", "x3")
    alternant = LaurentPoly.zero()
    for perm in permutations(range(3)):
        sign = 1
        for x in range(3):
            for y in range(x + 1, 3):
                if perm[x] > perm[y]:
                    sign = -sign
        term = LaurentPoly.monomial(
            sign, {names[i]: mu[perm[i]] for i in range(3)}
        )
        alternant = alternant + term
    quotient = exact_div_difference(alternant, "x1", "x2")
    quotient = exact_div_difference(quotient, "x1", "x3")
    quotient = exact_div_difference(quotient, "x2", "x3")
    a1 = sym("alpha1") if alpha1 is None else alpha1
    a2 = sym("alpha2") if alpha2 is None else alpha2
    return quotient.subs({"x1": a1, "x2": a2, "x3": (a1 * a2).unit_inverse()})


def weyl_dimension(m1, m2):
    return (m1 + 1) * (m2 + 1) * (m1 + m2 + 2) // 2


def sl2_char(k, z):
    """z^k + z^(k-2) + ... + z^(-k); z must be a Laurent unit."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    acc = LaurentPoly.zero()
    for j in range(k + 1):
        acc = acc + z ** (k - 2 * j)
    return acc


def sym_power_char(base_char, k):
    """Character of Sym^k via the Newton recursion
    k h_k = sum_j p_j h_{k-j}, with the Adams operation realized as
    exponent scaling on the weight monomials."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    h = [LaurentPoly.one()]
    for n in range(1, k + 1):
        acc = LaurentPoly.zero()
        for j in range(1, n + 1):
            acc = acc + base_char.scale_exponents(j) * h[n - j]
        h.append(Fraction(1, n) * acc)
    return h[k]


def schur_expand(char):
    """Decompose a character into irreducible multiplicities by greedy
    peel-off at the highest remaining dominant weight.

    Returns {(m1, m2): multiplicity}; raises if the input is not a
    nonnegative integral combination of irreducible characters.
    """
    remaining = char
    out = {}
    while not remaining.is_zero():
        best = None
        for exps, coeff in remaining.terms.items():
            e = dict(zip(remaining.variables, exps))
            u, w = e.get("alpha1", 0), e.get("alpha2", 0)
            phi = 3 * u + w
            if best is None or phi > best[0]:
                best = (phi, u, w, coeff)
        # the maximal height is attained at a dominant monomial for any
        # genuine character; prefer a dominant representative
        phi_max = best[0]
        dominant = None
        for exps, coeff in remaining.terms.items():
            e = dict(zip(remaining.variables, exps))
            u, w = e.get("alpha1", 0), e.get("alpha2", 0)
            if 3 * u + w == phi_max and u >= w >= 0:
                dominant = (u, w, coeff)
                break
        if dominant is None:
            raise ValueError(
                f"not a character: maximal monomial is not dominant ({best})"
            )
        u, w, coeff = dominant
        if coeff.denominator != 1 or coeff <= 0:
            raise ValueError(f"negative or fractional multiplicity {coeff}")
        m1, m2 = u - w, w
        out[(m1, m2)] = out.get((m1, m2), 0) + int(coeff)
        remaining = remaining - int(coeff) * schur_char(m1, m2)
    return out


def fr_eigensplit(mu=None):
    """Eigenvalues of diag(mu, 1, mu^-1) on the +1 and -1 eigenspaces of
    the Frobenius involution.

    Returns (plus, minus): lists of Laurent monomials in mu, sorted by
    exponent, with dimensions (5, 3).
    """
    mu = sym("mu") if mu is None else mu
    fr = frobenius_matrix()
    torus = r_matrix(SplitClass(mu, LaurentPoly.one()))
    assert fr * fr == RingMatrix.identity(8)
    assert torus * fr == fr * torus
    results = []
    for sign in (1, -1):
        projector = [
            [
                Fraction(1, 2) * _as_frac(fr[i, j])
                + (Fraction(sign, 2) if i == j else 0)
                for j in range(8)
            ]
            for i in range(8)
        ]
        pivots = _pivot_columns(projector)
        eigen = [torus[j, j] for j in pivots]
        eigen = [e if isinstance(e, LaurentPoly) else LaurentPoly.constant(e)
                 for e in eigen]
        eigen.sort(key=lambda p: -_mu_exponent(p))
        results.append(eigen)
    return results[0], results[1]


def _as_frac(x):
    if isinstance(x, LaurentPoly):
        return x.as_fraction()
    return Fraction(x)


def _mu_exponent(p):
    if p.is_constant():
        return 0
    (key,) = tuple(p.terms)
    return key[0]


def _pivot_columns(rows):
    """Column indices of a basis of the column space (Fraction entries)."""
    m = [list(r) for r in rows]
    n_rows, n_cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot = None
        for i in range(r, n_rows):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = Fraction(1, 1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return pivots
