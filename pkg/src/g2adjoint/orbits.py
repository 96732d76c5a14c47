"""Finite-field evidence for the double-coset combinatorics.

Enumerates the G2(F_q)-orbit of v_rho by breadth-first closure under the
root-subgroup generators, checks it against the norm-2*rho sphere in V0
(counted independently), and splits it into parabolic orbits separated by
the v3-block predicate.  This is a desk-scale analogue over F_q of the
corresponding statement over a number field, and the report labels it as
such.

Vectors are numpy int64 rows mod p; set membership uses a base-p encoded
bitmap (p^8 cells), which makes the closure exactly order-independent.
"""

from __future__ import annotations

import numpy as np

from .algebra import LaurentPoly
from .g2model import (
    PARABOLIC_PARAMS,
    ROOT_PARAMS,
    SIMPLE_PARAMS,
    TRILINEAR,
    one_param,
    sym,
)
from .report import VerificationReport, merge_reports

ORBIT_CAP = 10 ** 7

_EXP_CACHE = {}


def _exp_table(param):
    """Entries of exp(u E_root) as integer coefficient maps {deg: coeff}."""
    if param not in _EXP_CACHE:
        g = one_param(param, sym("u"))
        table = []
        for i in range(8):
            row = []
            for j in range(8):
                e = g[i, j]
                if not isinstance(e, LaurentPoly):
                    row.append({0: int(e)})
                    continue
                entry = {}
                for exps, coeff in e.terms.items():
                    if coeff.denominator != 1:
                        raise ArithmeticError(
                            f"non-integral exponential entry at {param}"
                        )
                    entry[exps[0] if exps else 0] = int(coeff)
                row.append(entry)
            table.append(row)
        _EXP_CACHE[param] = table
    return _EXP_CACHE[param]


def one_param_mod(param, t, p):
    """exp(t E_root) reduced mod p, as an 8x8 numpy array."""
    table = _exp_table(param)
    out = np.zeros((8, 8), dtype=np.int64)
    for i in range(8):
        for j in range(8):
            acc = 0
            for deg, coeff in table[i][j].items():
                acc += coeff * pow(int(t), deg, p)
            out[i, j] = acc % p
    return out


def _n_mod(param, t, p):
    opposite = {"a": "g", "b": "l"}[param]
    t_inv = pow(int(t), p - 2, p)
    x1 = one_param_mod(param, t, p)
    x2 = one_param_mod(opposite, (-t_inv) % p, p)
    return ((x1 @ x2 % p) @ x1) % p


def coroot_mod(param, t, p):
    """h_root(t) = n_root(t) n_root(-1) mod p."""
    return _n_mod(param, t, p) @ _n_mod(param, p - 1, p) % p


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _validate(q, rho):
    if not _is_prime(q):
        raise ValueError(f"{q} is not prime")
    if q in (2, 3) or rho % q == 0:
        raise ValueError("need q coprime to 6*rho")


def group_generators(q, which="full"):
    """Generators of G2(F_q) (or of the parabolic P(F_q)) as numpy arrays:
    one-parameter elements for every root and every t in F_q^x, plus the
    coroot torus words h_alpha1(t), h_alpha2(t)."""
    if which == "full":
        params = ROOT_PARAMS
    elif which == "parabolic":
        params = PARABOLIC_PARAMS
    else:
        raise ValueError(f"unknown generator set {which!r}")
    gens = []
    for param in params:
        for t in range(1, q):
            gens.append(one_param_mod(param, t, q))
    for param in SIMPLE_PARAMS:
        for t in range(2, q):
            gens.append(coroot_mod(param, t, q))
    return gens


def _j_matrix():
    return np.fliplr(np.eye(8, dtype=np.int64))


def _trilinear_dense():
    t = np.zeros((8, 8, 8), dtype=np.int64)
    for (i, j, k), c in TRILINEAR.items():
        t[i, j, k] = int(c)
    return t


def generator_invariants_hold(gens, q):
    """Every generator preserves J, the trilinear form, and v0."""
    j = _j_matrix()
    t = _trilinear_dense()
    v0 = np.array([0, 0, 0, 1, -1, 0, 0, 0], dtype=np.int64) % q
    for g in gens:
        if ((g @ j % q) @ g.T % q != j).any():
            return False
        if (g @ v0 % q != v0).any():
            return False
        pulled = np.einsum("lmn,li,mj,nk->ijk", t, g, g, g) % q
        if (pulled != t % q).any():
            return False
    return True


def orbit(start, gens, p, cap=ORBIT_CAP):
    """Closure of {start} under left multiplication by gens, as an array
    of vectors (lexicographically sorted, hence order-independent)."""
    pows = (p ** np.arange(8)).astype(np.int64)
    visited = np.zeros(p ** 8, dtype=bool)
    start = np.asarray(start, dtype=np.int64).reshape(1, 8) % p
    visited[int((start @ pows)[0])] = True
    frontier = start
    collected = [start]
    total = 1
    while len(frontier):
        parts = []
        for g in gens:
            img = frontier @ g.T % p
            keys = img @ pows
            fresh = ~visited[keys]
            if not fresh.any():
                continue
            keys = keys[fresh]
            img = img[fresh]
            keys, first = np.unique(keys, return_index=True)
            img = img[first]
            visited[keys] = True
            parts.append(img)
            total += len(img)
            if total > cap:
                raise RuntimeError(f"orbit exceeded cap {cap}")
        frontier = np.concatenate(parts) if parts else np.empty((0, 8), np.int64)
        if len(frontier):
            collected.append(frontier)
    out = np.concatenate(collected)
    return out[np.lexsort(out.T[::-1])]


def _norms(vectors, p):
    """<v, v> = sum v_i v_{7-i} mod p."""
    return (vectors * vectors[:, ::-1]).sum(axis=1) % p


def sphere_count(q, rho):
    """Number of v in V0 with <v, v> = 2*rho over F_q, by direct counting
    of the quadratic form v0*v7 + v1*v6 + v2*v5 + v3^2 = rho."""
    pair_counts = np.zeros(q, dtype=np.int64)
    for u in range(q):
        for w in range(q):
            pair_counts[(u * w) % q] += 1
    conv2 = np.zeros(q, dtype=np.int64)
    for s in range(q):
        for t in range(q):
            conv2[(s + t) % q] += pair_counts[s] * pair_counts[t]
    conv3 = np.zeros(q, dtype=np.int64)
    for s in range(q):
        for t in range(q):
            conv3[(s + t) % q] += conv2[s] * pair_counts[t]
    total = 0
    for v3 in range(q):
        total += conv3[(rho - v3 * v3) % q]
    return int(total)


def is_square_mod(rho, q):
    return pow(rho % q, (q - 1) // 2, q) == 1


def double_coset_check(q, rho, cap=ORBIT_CAP):
    """Desk-scale analogue of the two-element double-coset statement:
    the G2(F_q)-orbit of v_rho meets exactly two P(F_q)-orbits, separated
    by vanishing of the last two coordinates."""
    _validate(q, rho)
    square = is_square_mod(rho, q)
    report = VerificationReport(
        "orbits",
        {"q": q, "rho": rho, "rho_class": "square" if square else "non-square"},
    )
    report.info(
        "scope",
        "finite-field analogue over F_q of the double-coset statement, "
        "not a proof of the number-field case",
    )

    full = group_generators(q, "full")
    parabolic = group_generators(q, "parabolic")
    report.check(
        "generators-preserve-J-T-v0",
        generator_invariants_hold(full, q),
        f"{len(full)} generators fix v0 and preserve both forms",
    )

    v_rho = np.array([0, 0, 1, 0, 0, rho % q, 0, 0], dtype=np.int64)
    orb = orbit(v_rho, full, q, cap)
    size = len(orb)

    norms = _norms(orb, q)
    in_v0 = (orb[:, 3] == orb[:, 4]).all()
    on_sphere = (norms == (2 * rho) % q).all()
    report.check(
        "orbit-inside-norm-sphere",
        bool(in_v0 and on_sphere),
        "every orbit element lies in V0 and has norm 2*rho",
    )

    sphere = sphere_count(q, rho % q)
    report.check(
        "orbit-equals-sphere",
        size == sphere,
        f"orbit size {size} equals the directly counted sphere size {sphere}",
    )
    expected = q ** 3 * (q ** 3 + (1 if square else -1))
    report.check(
        "orbit-size-closed-form",
        size == expected,
        f"size {size} = q^3(q^3{'+' if square else '-'}1) = {expected}",
    )

    v3_zero = (orb[:, 6] == 0) & (orb[:, 7] == 0)
    part0 = orb[v3_zero]
    part1 = orb[~v3_zero]
    report.info(
        "partition-sizes",
        f"v3 = 0 part: {len(part0)}; v3 != 0 part: {len(part1)}",
    )

    # P is block upper triangular, so rows 7, 8 of each parabolic
    # generator only see columns 7, 8 and the predicate is P-stable
    stable = all((g[6:, :6] == 0).all() for g in parabolic)
    report.check(
        "v3-predicate-is-P-stable",
        stable,
        "parabolic generators have zero lower-left block",
    )

    orbit0 = orbit(v_rho, parabolic, q, cap)
    rep1 = part1[0]
    orbit1 = orbit(rep1, parabolic, q, cap)
    two_orbits = (
        len(orbit0) == len(part0)
        and (orbit0 == part0).all()
        and len(orbit1) == len(part1)
        and (orbit1 == part1).all()
    )
    report.check(
        "exactly-two-parabolic-orbits",
        bool(two_orbits),
        "each part of the v3 partition is a single P(F_q)-orbit",
        counterexample=None
        if two_orbits
        else f"P-orbit sizes {len(orbit0)}, {len(orbit1)} vs parts "
        f"{len(part0)}, {len(part1)}",
    )

    reversed_orb = orbit(v_rho, list(reversed(full)), q, cap)
    report.check(
        "orbit-is-order-independent",
        (reversed_orb == orb).all(),
        "reversed generator discipline yields the identical set",
    )
    return report


def companion_rho(q, rho):
    """Smallest unit of the opposite quadratic class mod q."""
    target = not is_square_mod(rho, q)
    for candidate in range(2, q):
        if is_square_mod(candidate, q) == target:
            return candidate
    raise ValueError("no companion found")


def verify_orbits(q, rho, cap=ORBIT_CAP):
    """Run the double-coset analogue for the requested rho and for a
    companion of the opposite quadratic class."""
    first = double_coset_check(q, rho, cap)
    other = double_coset_check(q, companion_rho(q, rho), cap)
    labeled = [
        (f"rho={r.parameters['rho']}-{r.parameters['rho_class']}", r)
        for r in (first, other)
    ]
    return merge_reports("orbits", {"q": q, "rho": rho}, labeled)
