"""Exact arithmetic kernel.

Multivariate Laurent polynomials over exact rationals, truncated formal
power series, and dense matrices over any exact commutative ring.  All
values are immutable after construction and every operation is a pure
function, so everything here is safe to share between threads.

Scalar coefficients are `fractions.Fraction` throughout.
"""

from __future__ import annotations

from fractions import Fraction

# Exact rational scalars: always reduced, positive denominator, structural
# equality.  The stdlib type satisfies the whole contract.
Rational = Fraction


class NonInvertibleError(ArithmeticError):
    """An expression that must be a unit of the coefficient ring is not."""


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"cannot coerce {value!r} to an exact rational")


class LaurentPoly:
    """Multivariate polynomial with integer (possibly negative) exponents.

    Terms are stored as a map from exponent vectors to nonzero Fraction
    coefficients; the exponent vector is aligned with `variables`, which is
    kept sorted and free of unused names so equality is plain structural
    equality.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables=(), terms=None):
        variables = tuple(variables)
        terms = {} if terms is None else terms
        clean = {}
        used = [False] * len(variables)
        for exps, coeff in terms.items():
            coeff = _as_fraction(coeff)
            if coeff == 0:
                continue
            exps = tuple(exps)
            if len(exps) != len(variables):
                raise ValueError("exponent vector length mismatch")
            clean[exps] = clean.get(exps, Fraction(0)) + coeff
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        clean = {e: c for e, c in clean.items() if c != 0}
        keep = [i for i, u in enumerate(used) if u]
        order = sorted(keep, key=lambda i: variables[i])
        object.__setattr__(self, "variables", tuple(variables[i] for i in order))
        object.__setattr__(
            self, "terms", {tuple(e[i] for i in order): c for e, c in clean.items()}
        )

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, value):
        value = _as_fraction(value)
        return cls((), {(): value} if value else {})

    @classmethod
    def variable(cls, name, power=1):
        if power == 0:
            return cls.constant(1)
        return cls((name,), {(power,): Fraction(1)})

    @classmethod
    def monomial(cls, coeff, exponents):
        names = tuple(exponents)
        return cls(names, {tuple(exponents[n] for n in names): _as_fraction(coeff)})

    @classmethod
    def zero(cls):
        return cls.constant(0)

    @classmethod
    def one(cls):
        return cls.constant(1)

    # -- structure ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.variables

    def is_unit(self):
        """A unit of the Laurent ring: exactly one term."""
        return len(self.terms) == 1

    def as_fraction(self):
        if not self.terms:
            return Fraction(0)
        if self.variables:
            raise ValueError(f"not a constant: {self}")
        return next(iter(self.terms.values()))

    def unit_inverse(self):
        if len(self.terms) != 1:
            raise NonInvertibleError(f"not a Laurent unit: {self}")
        (exps, coeff), = self.terms.items()
        return LaurentPoly(self.variables, {tuple(-e for e in exps): 1 / coeff})

    def total_degree(self, names=None):
        """Max total degree; restricted to `names` if given.  None if zero."""
        if not self.terms:
            return None
        if names is None:
            idx = range(len(self.variables))
        else:
            idx = [i for i, v in enumerate(self.variables) if v in names]
        return max(sum(e[i] for i in idx) for e in self.terms)

    def min_exponent(self, name):
        """Smallest exponent of `name` over all terms (0 if absent or zero)."""
        if not self.terms:
            return 0
        try:
            i = self.variables.index(name)
        except ValueError:
            return 0
        return min(e[i] for e in self.terms)

    def coefficient_map(self, name):
        """Decompose along one variable: exponent -> LaurentPoly in the rest."""
        if name not in self.variables:
            return {0: self} if self.terms else {}
        i = self.variables.index(name)
        rest = self.variables[:i] + self.variables[i + 1:]
        out = {}
        for exps, coeff in self.terms.items():
            part = out.setdefault(exps[i], {})
            key = exps[:i] + exps[i + 1:]
            part[key] = part.get(key, Fraction(0)) + coeff
        return {k: LaurentPoly(rest, t) for k, t in out.items()}

    # -- arithmetic --------------------------------------------------------

    def _align(self, other):
        if self.variables == other.variables:
            return self.variables, self.terms, other.terms
        names = tuple(sorted(set(self.variables) | set(other.variables)))

        def remap(poly):
            pos = [names.index(v) for v in poly.variables]
            out = {}
            for exps, coeff in poly.terms.items():
                key = [0] * len(names)
                for p, e in zip(pos, exps):
                    key[p] = e
                out[tuple(key)] = coeff
            return out

        return names, remap(self), remap(other)

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        names, a, b = self._align(other)
        out = dict(a)
        for exps, coeff in b.items():
            out[exps] = out.get(exps, Fraction(0)) + coeff
        return LaurentPoly(names, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        names, a, b = self._align(other)
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return LaurentPoly(names, out)

    __rmul__ = __mul__

    def __pow__(self, power):
        if not isinstance(power, int):
            return NotImplemented
        if power < 0:
            return self.unit_inverse() ** (-power)
        result = LaurentPoly.one()
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base if power > 1 else base
            power >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # -- substitution ------------------------------------------------------

    def subs(self, mapping):
        """Substitute variables by scalars or polynomials.

        A variable appearing with a negative exponent may only be replaced
        by a Laurent unit (single-term polynomial).
        """
        mapping = {
            k: v if isinstance(v, LaurentPoly) else LaurentPoly.constant(v)
            for k, v in mapping.items()
        }
        hit = [v in mapping for v in self.variables]
        if not any(hit):
            return self
        result = LaurentPoly.zero()
        cache = {}
        for exps, coeff in self.terms.items():
            residual = {}
            factor = LaurentPoly.constant(coeff)
            for i, e in enumerate(exps):
                name = self.variables[i]
                if not hit[i]:
                    if e:
                        residual[name] = e
                    continue
                if e == 0:
                    continue
                key = (name, e)
                if key not in cache:
                    value = mapping[name]
                    if e < 0 and not value.is_unit():
                        raise NonInvertibleError(
                            f"substituting non-unit for {name}^{e}"
                        )
                    cache[key] = value ** e
                factor = factor * cache[key]
            if residual:
                factor = factor * LaurentPoly.monomial(1, residual)
            result = result + factor
        return result

    def scale_exponents(self, factor):
        """The Adams-operation substitution v -> v^factor for every variable."""
        if not isinstance(factor, int) or factor <= 0:
            raise ValueError("exponent scale must be a positive integer")
        return LaurentPoly(
            self.variables,
            {tuple(factor * e for e in exps): c for exps, c in self.terms.items()},
        )

    # -- display -----------------------------------------------------------

    def _term_str(self, exps, coeff):
        parts = []
        for name, e in zip(self.variables, exps):
            if e == 0:
                continue
            parts.append(name if e == 1 else f"{name}^{e}")
        body = "*".join(parts)
        if not body:
            return str(coeff)
        if coeff == 1:
            return body
        if coeff == -1:
            return f"-{body}"
        return f"{coeff}*{body}"

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = [self._term_str(e, c) for e, c in sorted(self.terms.items())]
        out = pieces[0]
        for piece in pieces[1:]:
            out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return out

    def __repr__(self):
        return f"LaurentPoly({self})"


def exact_div_difference(poly, va, vb):
    """Exact division of `poly` by (va - vb); raises if not divisible.

    `poly` must have nonnegative exponents in va.  Synthetic (Horner)
    division treating va as the main variable with coefficients in the
    remaining ring.
    """
    coeffs = poly.coefficient_map(va)
    if any(k < 0 for k in coeffs):
        raise ValueError(f"negative exponent in {va}")
    if not coeffs:
        return LaurentPoly.zero()
    n = max(coeffs)
    r = LaurentPoly.variable(vb)
    x = LaurentPoly.variable(va)
    quotient = LaurentPoly.zero()
    carry = LaurentPoly.zero()
    for k in range(n, 0, -1):
        carry = coeffs.get(k, LaurentPoly.zero()) + r * carry
        quotient = quotient + carry * x ** (k - 1)
    remainder = coeffs.get(0, LaurentPoly.zero()) + r * carry
    if not remainder.is_zero():
        raise ValueError(f"not divisible by {va} - {vb}")
    return quotient


def geometric_sum(name, lo, hi):
    """Sum of name^j for lo <= j <= hi, with the reflection convention
    sum_{lo}^{hi} = -sum_{hi+1}^{lo-1} when hi < lo - 1 (and 0 when
    hi == lo - 1), so that (1 - x^(hi+1))/(1 - x) style closed forms hold
    for every integer hi."""
    if hi >= lo:
        return LaurentPoly(
            (name,), {(j,): Fraction(1) for j in range(lo, hi + 1)}
        )
    if hi == lo - 1:
        return LaurentPoly.zero()
    return -geometric_sum(name, hi + 1, lo - 1)


def eliminate_formal_inverse(poly, name, value):
    """Clear the formal-inverse variable `name` subject to name = value.

    Multiplies by name^k so all exponents of `name` are nonnegative, then
    substitutes the defining polynomial.  Two expressions of the localized
    ring are equal iff their difference is cleared to the zero polynomial,
    because the base ring is a domain and `value` is nonzero.
    """
    if not isinstance(poly, LaurentPoly):
        poly = LaurentPoly.constant(poly)
    k = poly.min_exponent(name)
    if k < 0:
        poly = poly * LaurentPoly.variable(name, -k)
    return poly.subs({name: value})


def equal_mod_inverses(left, right, relations):
    """Equality in the localization defined by {name: polynomial value}."""
    if not isinstance(left, LaurentPoly):
        left = LaurentPoly.constant(left)
    diff = left - right
    for name, value in relations.items():
        diff = eliminate_formal_inverse(diff, name, value)
    return diff.is_zero()


class TruncatedSeries:
    """A Laurent polynomial truncated at a total-degree bound.

    The bound applies to the total degree across `series_vars`, in which
    only nonnegative exponents may appear; all other variables are carried
    exactly and never truncated.
    """

    __slots__ = ("poly", "series_vars", "bound")

    def __init__(self, poly, series_vars, bound):
        if not isinstance(poly, LaurentPoly):
            poly = LaurentPoly.constant(poly)
        series_vars = tuple(sorted(series_vars))
        if bound < 0:
            raise ValueError("truncation bound must be nonnegative")
        idx = [i for i, v in enumerate(poly.variables) if v in series_vars]
        kept = {}
        for exps, coeff in poly.terms.items():
            if any(exps[i] < 0 for i in idx):
                raise ValueError(
                    f"negative exponent in series variable: {poly.variables}"
                )
            if sum(exps[i] for i in idx) <= bound:
                kept[exps] = coeff
        object.__setattr__(self, "poly", LaurentPoly(poly.variables, kept))
        object.__setattr__(self, "series_vars", series_vars)
        object.__setattr__(self, "bound", bound)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    def _series_degree(self, variables, exps):
        return sum(e for v, e in zip(variables, exps) if v in self.series_vars)

    def _check_compatible(self, other):
        if self.series_vars != other.series_vars or self.bound != other.bound:
            raise ValueError("incompatible truncation data")

    def _wrap(self, poly):
        return TruncatedSeries(poly, self.series_vars, self.bound)

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            self._check_compatible(other)
            return other
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self._wrap(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._wrap(self.poly + other.poly)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self.poly)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        names, a, b = self.poly._align(other.poly)
        sidx = [i for i, v in enumerate(names) if v in self.series_vars]
        da = {e: sum(e[i] for i in sidx) for e in a}
        db = {e: sum(e[i] for i in sidx) for e in b}
        out = {}
        for e1, c1 in a.items():
            room = self.bound - da[e1]
            for e2, c2 in b.items():
                if db[e2] > room:
                    continue
                key = tuple(x + y for x, y in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return self._wrap(LaurentPoly(names, out))

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self):
        return hash((self.poly, self.series_vars, self.bound))

    def slices(self):
        """Map from series-degree to the (full) slice polynomial."""
        idx = [i for i, v in enumerate(self.poly.variables) if v in self.series_vars]
        out = {}
        for exps, coeff in self.poly.terms.items():
            d = sum(exps[i] for i in idx)
            out.setdefault(d, {})[exps] = coeff
        return {
            d: LaurentPoly(self.poly.variables, t) for d, t in sorted(out.items())
        }

    def coefficient(self, degree):
        """Slice of series-degree `degree` with the series variables divided
        out; only sensible when there is a single series variable."""
        if len(self.series_vars) != 1:
            raise ValueError("coefficient() needs exactly one series variable")
        name = self.series_vars[0]
        slc = self.slices().get(degree)
        if slc is None:
            return LaurentPoly.zero()
        return slc * LaurentPoly.variable(name, -degree)

    def inverse(self):
        """Multiplicative inverse, via the graded convolution recurrence.

        Requires the series-degree-0 part to be a Laurent unit in the exact
        variables.
        """
        parts = self.slices()
        c0 = parts.get(0, LaurentPoly.zero())
        if not c0.is_unit():
            raise NonInvertibleError(
                f"constant term (in series variables) is not a unit: {c0}"
            )
        c0inv = c0.unit_inverse()
        norm = {d: c0inv * p for d, p in parts.items() if d > 0}
        inv = {0: LaurentPoly.one()}
        for n in range(1, self.bound + 1):
            acc = LaurentPoly.zero()
            for j, fj in norm.items():
                if j <= n:
                    acc = acc + fj * inv[n - j]
            inv[n] = -acc
        total = LaurentPoly.zero()
        for p in inv.values():
            total = total + p
        return self._wrap(c0inv * total)

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return (
            f"TruncatedSeries({self.poly}, vars={self.series_vars}, "
            f"bound={self.bound})"
        )


def series_expand(numerator, denominator, series_vars, bound):
    """Power-series expansion of numerator/denominator.

    Truncation is by total degree <= bound across `series_vars`; the
    denominator must have an invertible constant term there.
    """
    num = TruncatedSeries(numerator, series_vars, bound)
    den = TruncatedSeries(denominator, series_vars, bound)
    try:
        return num * den.inverse()
    except NonInvertibleError as exc:
        raise NonInvertibleError(
            f"cannot expand 1/({denominator}): {exc}"
        ) from None


class RingMatrix:
    """Dense matrix over an exact commutative ring.

    Entries may be ints, Fractions, or LaurentPolys (mixing is fine since
    LaurentPoly coerces both); no division is ever performed.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, data):
        data = [tuple(row) for row in data]
        if not data or not data[0]:
            raise ValueError("matrix must be nonempty")
        cols = len(data[0])
        if any(len(row) != cols for row in data):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(data))

    def __setattr__(self, name, value):
        raise AttributeError("RingMatrix is immutable")

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows, cols=None):
        cols = rows if cols is None else cols
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, values):
        values = list(values)
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]

    def is_square(self):
        return self.rows == self.cols

    def __add__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return RingMatrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return RingMatrix(
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __neg__(self):
        return RingMatrix([[-a for a in row] for row in self.entries])

    def scale(self, scalar):
        return RingMatrix([[scalar * a for a in row] for row in self.entries])

    def __mul__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        cols = list(zip(*other.entries))
        out = []
        for row in self.entries:
            out.append(
                [
                    _dot(row, col)
                    for col in cols
                ]
            )
        return RingMatrix(out)

    def apply(self, vector):
        """Matrix-vector product; vector is any sequence of scalars."""
        vector = list(vector)
        if len(vector) != self.cols:
            raise ValueError("dimension mismatch")
        return [_dot(row, vector) for row in self.entries]

    def transpose(self):
        return RingMatrix(list(zip(*self.entries)))

    def anti_transpose(self):
        """Reflection across the diagonal from upper right to lower left."""
        n, m = self.rows, self.cols
        return RingMatrix(
            [[self.entries[m - 1 - j][n - 1 - i] for j in range(m)] for i in range(n)]
        )

    def is_diagonal(self):
        return all(
            _is_zero_scalar(self.entries[i][j])
            for i in range(self.rows)
            for j in range(self.cols)
            if i != j
        )

    def is_upper_unipotent(self):
        for i in range(self.rows):
            for j in range(self.cols):
                e = self.entries[i][j]
                if i == j and not _is_zero_scalar(e - 1):
                    return False
                if i > j and not _is_zero_scalar(e):
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        if self.rows != other.rows or self.cols != other.cols:
            return False
        return all(
            _is_zero_scalar(a - b)
            for r1, r2 in zip(self.entries, other.entries)
            for a, b in zip(r1, r2)
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def det(self):
        """Exact determinant by column-subset minor expansion (no division)."""
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        dp = {0: Fraction(1)}
        for r in range(n):
            ndp = {}
            row = self.entries[r]
            for mask, val in dp.items():
                # sign of picking column j next is (-1)^(chosen columns above j)
                sign = 1
                for j in range(n - 1, -1, -1):
                    bit = 1 << j
                    if mask & bit:
                        sign = -sign
                        continue
                    e = row[j]
                    if _is_zero_scalar(e):
                        continue
                    key = mask | bit
                    term = (val * e) if sign > 0 else -(val * e)
                    ndp[key] = ndp.get(key, 0) + term
            dp = ndp
        return dp.get((1 << n) - 1, Fraction(0))

    def charpoly(self, name):
        """det(name*Id - self) as a LaurentPoly."""
        if not self.is_square():
            raise ValueError("characteristic polynomial of a non-square matrix")
        x = LaurentPoly.variable(name)
        shifted = RingMatrix(
            [
                [
                    (x - e) if i == j else (LaurentPoly.zero() - e)
                    for j, e in enumerate(row)
                ]
                for i, row in enumerate(self.entries)
            ]
        )
        d = shifted.det()
        return d if isinstance(d, LaurentPoly) else LaurentPoly.constant(d)

    def __str__(self):
        return "\n".join(
            "[" + ", ".join(str(e) for e in row) + "]" for row in self.entries
        )

    def __repr__(self):
        return f"RingMatrix({self.rows}x{self.cols})"


def _dot(row, col):
    acc = None
    for a, b in zip(row, col):
        if _is_zero_scalar(a) or _is_zero_scalar(b):
            continue
        term = a * b
        acc = term if acc is None else acc + term
    return 0 if acc is None else acc


def _is_zero_scalar(x):
    if isinstance(x, LaurentPoly):
        return x.is_zero()
    return x == 0


def det(matrix):
    """Exact determinant of a square RingMatrix."""
    return matrix.det()


def charpoly(matrix, name):
    """Characteristic polynomial det(name*Id - matrix)."""
    return matrix.charpoly(name)
