"""Sparse exact multivariate polynomials and rational functions.

A polynomial stores an ordered variable tuple and a dict mapping
exponent tuples to nonzero GaussianRational coefficients. Binary
operations insist that the variable tuples match exactly; the package
juggles several coordinate systems (x, z, w and their conjugates) and
silent mixing would be a correctness hazard. Canonical term order is
graded lexicographic with respect to the variable order.

Rational functions are unreduced num/den pairs. Equality is decided by
cross-multiplication; no multivariate gcd is ever computed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .scalars import ONE, ZERO, GaussianRational, ScalarLike

Exponents = Tuple[int, ...]


def _as_coeff(value) -> GaussianRational:
    return GaussianRational.coerce(value)


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Optional[Mapping[Exponents, ScalarLike]] = None):
        self.vars: Tuple[str, ...] = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        clean: Dict[Exponents, GaussianRational] = {}
        if terms:
            width = len(self.vars)
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != width:
                    raise ValueError(f"exponent vector {exps} does not match variables {self.vars}")
                c = _as_coeff(coeff)
                if c:
                    clean[exps] = c
        self.terms = clean

    # ---------------------------------------------------------------- basics

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls(variables)

    @classmethod
    def const(cls, variables: Sequence[str], value: ScalarLike) -> "MultiPoly":
        v = tuple(variables)
        return cls(v, {(0,) * len(v): value})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "MultiPoly":
        v = tuple(variables)
        if name not in v:
            raise ValueError(f"variable {name!r} not among {v}")
        exps = tuple(1 if n == name else 0 for n in v)
        return cls(v, {exps: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == MultiPoly.const(self.vars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def _check_same_vars(self, other: "MultiPoly") -> None:
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    # ------------------------------------------------------------ arithmetic

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = MultiPoly.const(self.vars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_same_vars(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            s = terms.get(exps, ZERO) + c
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        out = MultiPoly.zero(self.vars)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MultiPoly.zero(self.vars)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = MultiPoly.const(self.vars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = _as_coeff(other)
            if not c:
                return MultiPoly.zero(self.vars)
            out = MultiPoly.zero(self.vars)
            out.terms = {e: k * c for e, k in self.terms.items()}
            return out
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_same_vars(other)
        terms: Dict[Exponents, GaussianRational] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e)
                p = c1 * c2
                if s is None:
                    if p:
                        terms[e] = p
                else:
                    s = s + p
                    if s:
                        terms[e] = s
                    else:
                        del terms[e]
        out = MultiPoly.zero(self.vars)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative ints")
        out = MultiPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = _as_coeff(other)
            if not c:
                raise ZeroDivisionError("division of polynomial by zero scalar")
            return self * (ONE / c)
        if isinstance(other, MultiPoly):
            return RationalFunction(self, other)
        return NotImplemented

    # ------------------------------------------------------------- structure

    def total_degree(self) -> int:
        """Maximum total degree; returns 0 for the zero polynomial."""
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        idx = self.vars.index(name)
        if not self.terms:
            return 0
        return max(e[idx] for e in self.terms)

    def used_vars(self) -> Tuple[str, ...]:
        used = [False] * len(self.vars)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def coeff(self, exps: Exponents) -> GaussianRational:
        return self.terms.get(tuple(exps), ZERO)

    def const_coeff(self) -> GaussianRational:
        return self.terms.get((0,) * len(self.vars), ZERO)

    def sorted_terms(self):
        """Terms in graded-lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def leading(self) -> Tuple[Exponents, GaussianRational]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=lambda e: (sum(e), e))
        return exps, self.terms[exps]

    def coeffs_are_real(self) -> bool:
        return all(c.is_real() for c in self.terms.values())

    # ------------------------------------------------------------- calculus

    def diff(self, name: str) -> "MultiPoly":
        idx = self.vars.index(name)
        terms: Dict[Exponents, GaussianRational] = {}
        for e, c in self.terms.items():
            k = e[idx]
            if k:
                ne = e[:idx] + (k - 1,) + e[idx + 1:]
                nc = terms.get(ne, ZERO) + c * k
                if nc:
                    terms[ne] = nc
                else:
                    terms.pop(ne, None)
        out = MultiPoly.zero(self.vars)
        out.terms = terms
        return out

    # ------------------------------------------------------- transformations

    def with_vars(self, variables: Sequence[str]) -> "MultiPoly":
        """Embed into a larger (or reordered) variable universe."""
        newvars = tuple(variables)
        if newvars == self.vars:
            return self
        pos = {}
        for i, v in enumerate(self.vars):
            if v in newvars:
                pos[i] = newvars.index(v)
        width = len(newvars)
        terms: Dict[Exponents, GaussianRational] = {}
        for e, c in self.terms.items():
            ne = [0] * width
            for i, k in enumerate(e):
                if k:
                    if i not in pos:
                        raise ValueError(
                            f"variable {self.vars[i]!r} is used but absent from {newvars}")
                    ne[pos[i]] = k
            terms[tuple(ne)] = c
        out = MultiPoly.zero(newvars)
        out.terms = terms
        return out

    def rename_vars(self, mapping: Mapping[str, str]) -> "MultiPoly":
        newvars = tuple(mapping.get(v, v) for v in self.vars)
        out = MultiPoly.zero(newvars)
        out.terms = dict(self.terms)
        return out

    def subs_poly(self, mapping: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        """Polynomial substitution. Values must share one variable tuple;
        unmapped variables of self must exist there and map to themselves."""
        if not mapping:
            return self
        target: Optional[Tuple[str, ...]] = None
        for value in mapping.values():
            if target is None:
                target = value.vars
            elif value.vars != target:
                raise ValueError("substitution values must share a variable tuple")
        assert target is not None
        images = []
        for v in self.vars:
            if v in mapping:
                images.append(mapping[v])
            else:
                images.append(MultiPoly.var(target, v))
        # cache powers per variable
        powers = [{0: MultiPoly.const(target, 1)} for _ in images]
        result = MultiPoly.zero(target)
        for e, c in self.terms.items():
            term = MultiPoly.const(target, c)
            for i, k in enumerate(e):
                if k:
                    cache = powers[i]
                    if k not in cache:
                        top = max(cache)
                        cur = cache[top]
                        while top < k:
                            cur = cur * images[i]
                            top += 1
                            cache[top] = cur
                    term = term * cache[k]
            result = result + term
        return result

    def eval_at(self, point: Mapping[str, ScalarLike]) -> GaussianRational:
        for v in self.used_vars():
            if v not in point:
                raise ValueError(f"no value supplied for variable {v!r}")
        vals = [GaussianRational.coerce(point.get(v, 0)) for v in self.vars]
        total = ZERO
        for e, c in self.terms.items():
            acc = c
            for i, k in enumerate(e):
                if k:
                    acc = acc * vals[i] ** k
            total = total + acc
        return total

    def truncate(self, cutoff: int) -> "MultiPoly":
        out = MultiPoly.zero(self.vars)
        out.terms = {e: c for e, c in self.terms.items() if sum(e) <= cutoff}
        return out

    # ----------------------------------------------------- conjugation, split

    def conjugate(self, pairing: Mapping[str, str]) -> "MultiPoly":
        """Swap paired variables and conjugate coefficients.

        The pairing must be an involution on names; a variable may be
        paired with itself (a real variable). Every variable actually
        used by the polynomial must be paired.
        """
        for a, b in pairing.items():
            if pairing.get(b) != a:
                raise ValueError(f"pairing is not an involution at {a!r}")
        index = {v: i for i, v in enumerate(self.vars)}
        swap = list(range(len(self.vars)))
        for i, v in enumerate(self.vars):
            if v in pairing:
                w = pairing[v]
                if w not in index:
                    raise ValueError(f"conjugate variable {w!r} absent from {self.vars}")
                swap[i] = index[w]
        unpaired = [v for v in self.used_vars() if v not in pairing]
        if unpaired:
            raise ValueError(f"unpaired variables in conjugation: {unpaired}")
        terms: Dict[Exponents, GaussianRational] = {}
        for e, c in self.terms.items():
            ne = [0] * len(e)
            for i, k in enumerate(e):
                ne[swap[i]] += k
            terms[tuple(ne)] = c.conjugate()
        out = MultiPoly.zero(self.vars)
        out.terms = terms
        return out

    def bidegree_split(self, holo_vars: Sequence[str], anti_vars: Sequence[str]):
        """Split into bihomogeneous parts keyed by (holo degree, anti degree)."""
        holo = set(holo_vars)
        anti = set(anti_vars)
        if holo & anti:
            raise ValueError("holo and anti variable groups overlap")
        unknown = [v for v in self.vars if v not in holo and v not in anti]
        if unknown:
            raise ValueError(f"unclassified variables in bidegree split: {unknown}")
        hmask = [v in holo for v in self.vars]
        parts: Dict[Tuple[int, int], MultiPoly] = {}
        for e, c in self.terms.items():
            k = sum(x for x, h in zip(e, hmask) if h)
            l = sum(e) - k
            part = parts.get((k, l))
            if part is None:
                part = MultiPoly.zero(self.vars)
                parts[(k, l)] = part
            part.terms[e] = c
        return parts

    def split_by_vars(self, group: Sequence[str]):
        """Group terms by their exponents in `group`; values are polynomials
        in the full universe with those exponents stripped to zero."""
        idxs = [self.vars.index(v) for v in group]
        out: Dict[Exponents, MultiPoly] = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in idxs)
            rest = list(e)
            for i in idxs:
                rest[i] = 0
            part = out.get(key)
            if part is None:
                part = MultiPoly.zero(self.vars)
                out[key] = part
            re = tuple(rest)
            cur = part.terms.get(re, ZERO) + c
            if cur:
                part.terms[re] = cur
            else:
                part.terms.pop(re, None)
        return out

    # ---------------------------------------------------------------- output

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(self.vars, e) if k
            )
            if not mono:
                bits.append(str(c))
            elif c == ONE:
                bits.append(mono)
            else:
                bits.append(f"{c}*{mono}")
        return " + ".join(bits).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"MultiPoly({self.vars}, {str(self)})"


def merge_vars(*groups: Iterable[str]) -> Tuple[str, ...]:
    """Union of variable tuples, preserving first-seen order."""
    seen = []
    for group in groups:
        for v in group:
            if v not in seen:
                seen.append(v)
    return tuple(seen)


def mul_trunc(a: MultiPoly, b: MultiPoly, cutoff: int) -> MultiPoly:
    """Product truncated to total degree <= cutoff."""
    a._check_same_vars(b)
    terms: Dict[Exponents, GaussianRational] = {}
    bterms = [(e, sum(e), c) for e, c in b.terms.items()]
    for e1, c1 in a.terms.items():
        d1 = sum(e1)
        if d1 > cutoff:
            continue
        for e2, d2, c2 in bterms:
            if d1 + d2 > cutoff:
                continue
            e = tuple(x + y for x, y in zip(e1, e2))
            s = terms.get(e, ZERO) + c1 * c2
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
    out = MultiPoly.zero(a.vars)
    out.terms = terms
    return out


class RationalFunction:
    """Quotient num/den of polynomials over a shared variable tuple.

    Never normalized to lowest terms; equality goes through
    cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: Optional[MultiPoly] = None):
        if den is None:
            den = MultiPoly.const(num.vars, 1)
        num._check_same_vars(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def from_scalar(cls, variables: Sequence[str], value: ScalarLike) -> "RationalFunction":
        return cls(MultiPoly.const(variables, value))

    @property
    def vars(self) -> Tuple[str, ...]:
        return self.num.vars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == MultiPoly.const(self.vars, 1)

    def with_vars(self, variables: Sequence[str]) -> "RationalFunction":
        return RationalFunction(self.num.with_vars(variables), self.den.with_vars(variables))

    def conjugate(self, pairing: Mapping[str, str]) -> "RationalFunction":
        return RationalFunction(self.num.conjugate(pairing), self.den.conjugate(pairing))

    def _coerced(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, MultiPoly):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return RationalFunction.from_scalar(self.vars, other)
        raise TypeError(f"cannot combine rational function with {other!r}")

    def __add__(self, other):
        other = self._coerced(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerced(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerced(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerced(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerced(other) / self

    def __pow__(self, n: int):
        if n < 0:
            if self.num.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return RationalFunction(self.den, self.num) ** (-n)
        return RationalFunction(self.num ** n, self.den ** n)

    def __eq__(self, other) -> bool:
        try:
            other = self._coerced(other)
        except TypeError:
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self):
        raise TypeError("rational functions are not hashable (unreduced representation)")

    def __str__(self) -> str:
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    __repr__ = __str__


def substitute(p: MultiPoly, assignment: Mapping[str, object]) -> RationalFunction:
    """Compose p with rational-function values for its variables.

    Every variable occurring in p must be assigned. The result is left
    over the common denominator prod(den_v ** maxdeg_v), the product of
    the assignment denominators, exactly as stated by the contract.
    """
    used = p.used_vars()
    missing = [v for v in used if v not in assignment]
    if missing:
        raise ValueError(f"no assignment for variable {missing[0]!r}")

    target: Optional[Tuple[str, ...]] = None
    for value in assignment.values():
        if isinstance(value, (MultiPoly, RationalFunction)):
            if target is None:
                target = value.vars
            elif value.vars != target:
                raise ValueError("assignment values must share a variable tuple")
    if target is None:
        target = p.vars
    values: Dict[str, RationalFunction] = {}
    for v in used:
        value = assignment[v]
        if isinstance(value, MultiPoly):
            values[v] = RationalFunction(value)
        elif isinstance(value, RationalFunction):
            values[v] = value
        elif isinstance(value, (int, Fraction, GaussianRational)):
            values[v] = RationalFunction.from_scalar(target, value)
        else:
            raise TypeError(f"assignment for {v!r} is not a rational function")

    maxdeg = {v: 0 for v in used}
    for e in p.terms:
        for i, k in enumerate(e):
            if k:
                name = p.vars[i]
                if k > maxdeg[name]:
                    maxdeg[name] = k

    one = MultiPoly.const(target, 1)
    num_pows: Dict[str, Dict[int, MultiPoly]] = {v: {0: one} for v in used}
    den_pows: Dict[str, Dict[int, MultiPoly]] = {v: {0: one} for v in used}

    def _pow(cache: Dict[int, MultiPoly], base: MultiPoly, k: int) -> MultiPoly:
        if k not in cache:
            top = max(cache)
            cur = cache[top]
            while top < k:
                cur = cur * base
                top += 1
                cache[top] = cur
        return cache[k]

    den_total = one
    for v in used:
        den_total = den_total * _pow(den_pows[v], values[v].den, maxdeg[v])

    num_total = MultiPoly.zero(target)
    for e, c in p.terms.items():
        term = MultiPoly.const(target, c)
        for i, k in enumerate(e):
            name = p.vars[i]
            if name not in maxdeg:
                continue
            rf = values[name]
            if k:
                term = term * _pow(num_pows[name], rf.num, k)
            slack = maxdeg[name] - k
            if slack:
                term = term * _pow(den_pows[name], rf.den, slack)
        num_total = num_total + term
    return RationalFunction(num_total, den_total)


def series_expand(f: RationalFunction, cutoff: int) -> MultiPoly:
    """Truncated Taylor expansion of f at the origin through `cutoff`.

    Requires den(0) != 0. Multiplying the result back by den(f) agrees
    with num(f) through total degree cutoff.
    """
    c0 = f.den.const_coeff()
    if not c0:
        raise ValueError("singular expansion point: denominator vanishes at 0")
    # den = c0 (1 + E) with E vanishing at 0; invert by geometric series.
    e_poly = (f.den - c0).truncate(cutoff) * (ONE / c0)
    inv = MultiPoly.const(f.vars, 1)
    acc = MultiPoly.const(f.vars, 1)
    for k in range(1, cutoff + 1):
        acc = mul_trunc(acc, e_poly, cutoff)
        if acc.is_zero():
            break
        inv = inv + acc * (-1) ** (k % 2)
    result = mul_trunc(f.num.truncate(cutoff), inv, cutoff)
    return result * (ONE / c0)


def bidegree_split(p: MultiPoly, holo_vars: Sequence[str], anti_vars: Sequence[str]):
    return p.bidegree_split(holo_vars, anti_vars)


def conjugate(p: MultiPoly, pairing: Mapping[str, str]) -> MultiPoly:
    return p.conjugate(pairing)
