"""Finite commutative rings as operation tables.

A ring is described symbolically by a :data:`RingSpec` (integers mod n,
Galois fields, polynomial quotients over ``Z_m`` and finite products of
those) and compiled by :func:`compile_ring` into a :class:`FiniteRing`
holding full addition and multiplication tables.

Element coding
--------------
Every element is an integer code ``0 .. n-1``.

* ``Z_n``: the residue itself.
* ``GF(p^k)`` and ``Z_m[x]/(f)``: the representative ``sum c_i x^i`` is
  coded as ``sum c_i m^i`` (constant coefficient is the least significant
  digit).
* products: mixed radix over the factor codes, rightmost factor fastest,
  so ``(a, b)`` in ``R1 x R2`` has code ``a * |R2| + b``.

The zero element always has code 0.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Union

import numpy as np

__all__ = [
    "ModularInt",
    "GaloisField",
    "QuotientPoly",
    "Product",
    "RingSpec",
    "FiniteRing",
    "MultiplicativeData",
    "RingError",
    "RingSpecParseError",
    "NonIrreduciblePoly",
    "NonMonicPoly",
    "OrderTooLarge",
    "NotPrimePower",
    "ElementNotUnit",
    "EmptyS",
    "SNotInG",
    "SNotInverseClosed",
    "GNotSubgroup",
    "DEFAULT_MAX_ORDER",
    "LOCAL_CATALOG",
    "parse_ring",
    "product",
    "compile_ring",
    "units",
    "jacobson_radical",
    "is_local",
    "index2_maximal_ideals",
    "comaximal",
    "subgroup_closure",
    "validate_S",
    "inverse_closed_subsets",
    "is_irreducible",
    "least_irreducible",
]

DEFAULT_MAX_ORDER = 4096


class RingError(ValueError):
    """Base class for ring construction and validation errors."""


class RingSpecParseError(RingError):
    def __init__(self, text: str, position: int, message: str):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


class NonIrreduciblePoly(RingError):
    pass


class NonMonicPoly(RingError):
    pass


class OrderTooLarge(RingError):
    pass


class NotPrimePower(RingError):
    pass


class ElementNotUnit(RingError):
    pass


class EmptyS(RingError):
    pass


class SNotInG(RingError):
    pass


class SNotInverseClosed(RingError):
    pass


class GNotSubgroup(RingError):
    pass


# ---------------------------------------------------------------------------
# polynomial helpers over Z_m; coefficient tuples are constant-first
# ---------------------------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _trim(c: Iterable[int]) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mod(a: tuple[int, ...], f: tuple[int, ...], m: int) -> tuple[int, ...]:
    """Remainder of ``a`` modulo the monic polynomial ``f`` over ``Z_m``."""
    a = [x % m for x in a]
    d = len(f) - 1
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i]
        if c:
            for j in range(d + 1):
                a[i - d + j] = (a[i - d + j] - c * f[j]) % m
    return _trim(a[:d])


def _poly_str(f: tuple[int, ...]) -> str:
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
            continue
        mono = "x" if i == 1 else f"x^{i}"
        terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) or "0"


def is_irreducible(f: tuple[int, ...], p: int) -> bool:
    """Irreducibility over the prime field ``Z_p`` by trial division."""
    d = len(f) - 1
    if d <= 0:
        return False
    for k in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=k):
            g = tuple(tail) + (1,)
            if not _poly_mod(f, g, p):
                return False
    return True


def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree ``k`` over ``Z_p``.

    Coefficient tuples are compared constant-first.
    """
    for tail in itertools.product(range(p), repeat=k):
        f = tuple(tail) + (1,)
        if is_irreducible(f, p):
            return f
    raise NonIrreduciblePoly(f"no irreducible of degree {k} over Z{p}")  # pragma: no cover


# ---------------------------------------------------------------------------
# symbolic specs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModularInt:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise RingError(f"Z_n needs n >= 2, got {self.n}")

    def __str__(self):
        return f"Z{self.n}"

    @property
    def order(self) -> int:
        return self.n


@dataclass(frozen=True)
class GaloisField:
    p: int
    k: int = 1
    poly: tuple[int, ...] | None = None

    def __post_init__(self):
        if not _is_prime(self.p):
            raise NotPrimePower(f"GF characteristic {self.p} is not prime")
        if self.k < 1:
            raise RingError("GF degree must be >= 1")
        if self.poly is not None:
            poly = tuple(c % self.p for c in self.poly)
            object.__setattr__(self, "poly", poly)
            if len(poly) != self.k + 1:
                raise RingError(f"GF({self.p}^{self.k}) needs a degree-{self.k} polynomial")
            if poly[-1] != 1:
                raise NonMonicPoly(_poly_str(poly))

    def __str__(self):
        return f"GF({self.p ** self.k})"

    @property
    def order(self) -> int:
        return self.p**self.k

    def modulus(self) -> tuple[int, ...]:
        if self.poly is not None:
            return self.poly
        return least_irreducible(self.p, self.k)


@dataclass(frozen=True)
class QuotientPoly:
    m: int
    f: tuple[int, ...]

    def __post_init__(self):
        if self.m < 2:
            raise RingError(f"coefficient ring Z_m needs m >= 2, got {self.m}")
        f = _trim(c % self.m for c in self.f)
        if len(f) < 2:
            raise RingError("quotient polynomial must have degree >= 1")
        if f[-1] != 1:
            raise NonMonicPoly(_poly_str(f))
        object.__setattr__(self, "f", f)

    def __str__(self):
        return f"Z{self.m}[x]/({_poly_str(self.f)})"

    @property
    def order(self) -> int:
        return self.m ** (len(self.f) - 1)


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self):
        flat = []
        for f in self.factors:
            flat.extend(f.factors if isinstance(f, Product) else [f])
        if len(flat) < 2:
            raise RingError("a product needs at least two factors")
        object.__setattr__(self, "factors", tuple(flat))

    def __str__(self):
        return " x ".join(str(f) for f in self.factors)

    @property
    def order(self) -> int:
        return reduce(lambda a, b: a * b, (f.order for f in self.factors), 1)


RingSpec = Union[ModularInt, GaloisField, QuotientPoly, Product]


def product(*specs: RingSpec) -> RingSpec:
    """Product of one or more specs; a single factor is returned unchanged."""
    if len(specs) == 1:
        return specs[0]
    return Product(tuple(specs))


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

_TERM = re.compile(r"\s*(\d*)\s*(x(?:\s*\^\s*(\d+))?)?\s*")


def _parse_poly(text: str, offset: int, m: int, full: str) -> tuple[int, ...]:
    coeffs: dict[int, int] = {}
    pos = 0
    sign = 1
    while pos < len(text):
        mt = _TERM.match(text, pos)
        if not mt or mt.end() == pos or not (mt.group(1) or mt.group(2)):
            raise RingSpecParseError(full, offset + pos, "bad polynomial term")
        c = int(mt.group(1)) if mt.group(1) else 1
        e = 0
        if mt.group(2):
            e = int(mt.group(3)) if mt.group(3) else 1
        coeffs[e] = coeffs.get(e, 0) + sign * c
        pos = mt.end()
        if pos < len(text):
            if text[pos] not in "+-":
                raise RingSpecParseError(full, offset + pos, "expected '+' or '-'")
            sign = 1 if text[pos] == "+" else -1
            pos += 1
            if pos >= len(text):
                raise RingSpecParseError(full, offset + pos, "dangling operator")
    if not coeffs:
        raise RingSpecParseError(full, offset, "empty polynomial")
    deg = max(coeffs)
    return tuple(coeffs.get(i, 0) % m for i in range(deg + 1))


_ATOM = re.compile(
    r"""\s*(?:
        GF\(\s*(?P<q>\d+)\s*\)
      | F(?P<fq>\d+)
      | Z(?P<m>\d+)\s*\[\s*x\s*\]\s*/\s*\((?P<poly>[^()]*)\)
      | Z(?P<n>\d+)
    )(?:\s*\^\s*(?P<pow>\d+))?\s*""",
    re.VERBOSE,
)


def _prime_power(q: int) -> tuple[int, int] | None:
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            return (p, k) if r == 1 else None
    return None


def parse_ring(text: str) -> RingSpec:
    """Parse the textual ring grammar, e.g. ``"Z2 x Z3[x]/(x^2)"``.

    ``GF(q)`` picks the default modulus; ``F4`` is accepted as an alias of
    ``GF(4)`` and ``Z2^3`` abbreviates ``Z2 x Z2 x Z2``.
    """
    factors: list[RingSpec] = []
    pos = 0
    while True:
        mt = _ATOM.match(text, pos)
        if not mt or mt.end() == pos:
            raise RingSpecParseError(text, pos, "expected a ring atom")
        if mt.group("q") or mt.group("fq"):
            q = int(mt.group("q") or mt.group("fq"))
            pk = _prime_power(q)
            if pk is None:
                raise NotPrimePower(f"GF({q}): {q} is not a prime power")
            atom: RingSpec = GaloisField(*pk)
        elif mt.group("m"):
            m = int(mt.group("m"))
            f = _parse_poly(mt.group("poly"), mt.start("poly"), m, text)
            atom = QuotientPoly(m, f)
        else:
            atom = ModularInt(int(mt.group("n")))
        reps = int(mt.group("pow")) if mt.group("pow") else 1
        if reps < 1:
            raise RingSpecParseError(text, mt.start("pow"), "exponent must be >= 1")
        factors.extend([atom] * reps)
        pos = mt.end()
        if pos == len(text):
            break
        if text[pos] != "x":
            raise RingSpecParseError(text, pos, "expected 'x' between factors")
        pos += 1
    return product(*factors)


# ---------------------------------------------------------------------------
# compiled rings
# ---------------------------------------------------------------------------


def _poly_tables(m: int, f: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    d = len(f) - 1
    n = m**d
    radix = m ** np.arange(d, dtype=np.int64)
    coeffs = (np.arange(n, dtype=np.int64)[:, None] // radix) % m  # (n, d)
    add = ((coeffs[:, None, :] + coeffs[None, :, :]) % m) @ radix
    # multiplication by b is the linear map sum_j b_j X^j, X the companion matrix
    comp = np.zeros((d, d), dtype=np.int64)
    for i in range(d - 1):
        comp[i + 1, i] = 1
    comp[:, d - 1] = [(-c) % m for c in f[:d]]
    powers = [np.eye(d, dtype=np.int64)]
    for _ in range(d - 1):
        powers.append((comp @ powers[-1]) % m)
    powers = np.stack(powers)  # (d, d, d): powers[j] is X^j
    mul = np.empty((n, n), dtype=np.int64)
    for b in range(n):
        mat = np.tensordot(coeffs[b], powers, axes=1) % m  # column i = image of x^i
        mul[:, b] = ((coeffs @ mat.T) % m) @ radix
    return add, mul


def _combine(a: tuple[np.ndarray, np.ndarray], b: tuple[np.ndarray, np.ndarray]):
    n1, n2 = a[0].shape[0], b[0].shape[0]
    out = []
    for ta, tb in zip(a, b):
        t = ta[:, None, :, None] * n2 + tb[None, :, None, :]
        out.append(t.reshape(n1 * n2, n1 * n2))
    return tuple(out)


def _atom_tables(spec: RingSpec) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(spec, ModularInt):
        a = np.arange(spec.n, dtype=np.int64)
        return (a[:, None] + a[None, :]) % spec.n, (a[:, None] * a[None, :]) % spec.n
    if isinstance(spec, GaloisField):
        f = spec.modulus()
        if not is_irreducible(f, spec.p):
            raise NonIrreduciblePoly(f"{_poly_str(f)} is reducible over Z{spec.p}")
        return _poly_tables(spec.p, f)
    if isinstance(spec, QuotientPoly):
        return _poly_tables(spec.m, spec.f)
    raise TypeError(f"not a ring atom: {spec!r}")


class FiniteRing:
    """A compiled finite commutative ring; immutable after construction."""

    def __init__(self, spec: RingSpec, add: np.ndarray, mul: np.ndarray, radices: tuple[int, ...]):
        self.spec = spec
        self.order = int(add.shape[0])
        self.add = add
        self.mul = mul
        self.add.flags.writeable = False
        self.mul.flags.writeable = False
        self.radices = radices
        self.zero = 0
        ones = [1] * len(radices)
        self.one = self.encode(ones) if len(radices) > 1 else 1
        self.neg = np.argmax(add == 0, axis=1)

    def __repr__(self):
        return f"FiniteRing({self.spec})"

    def __str__(self):
        return str(self.spec)

    def __len__(self):
        return self.order

    # coding ---------------------------------------------------------------

    def decode(self, code: int) -> tuple[int, ...]:
        digits = []
        for r in reversed(self.radices):
            digits.append(code % r)
            code //= r
        return tuple(reversed(digits))

    def encode(self, digits: Iterable[int]) -> int:
        code = 0
        for d, r in zip(digits, self.radices):
            code = code * r + (d % r)
        return code

    def format_element(self, code: int) -> str:
        if len(self.radices) == 1:
            return str(code)
        return "(" + ",".join(map(str, self.decode(code))) + ")"

    def parse_element(self, text: str) -> int:
        text = text.strip()
        if text.startswith("("):
            if not text.endswith(")"):
                raise RingError(f"unbalanced element tuple {text!r}")
            parts = [int(t) for t in text[1:-1].split(",")]
            if len(parts) != len(self.radices):
                raise RingError(f"{text!r} needs {len(self.radices)} components")
            return self.encode(parts)
        code = int(text)
        if len(self.radices) > 1 and code == -1:
            return int(self.neg[self.one])
        return code % self.order

    # arithmetic -----------------------------------------------------------

    def plus(self, a: int, b: int) -> int:
        return int(self.add[a, b])

    def times(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def minus(self, a: int) -> int:
        return int(self.neg[a])

    # derived sets ---------------------------------------------------------

    @cached_property
    def inverse(self) -> dict[int, int]:
        rows, cols = np.nonzero(self.mul == self.one)
        return {int(r): int(c) for r, c in zip(rows, cols)}

    @cached_property
    def units(self) -> frozenset[int]:
        return frozenset(self.inverse)

    @cached_property
    def jacobson(self) -> frozenset[int]:
        # nilradical == Jacobson radical for finite commutative rings
        v = np.arange(self.order)
        for _ in range(self.order.bit_length() + 1):
            v = self.mul[v, v]
        return frozenset(int(x) for x in np.nonzero(v == 0)[0])

    @cached_property
    def zero_divisors(self) -> frozenset[int]:
        zd = (self.mul[:, 1:] == 0).any(axis=1) if self.order > 1 else np.array([True])
        zd = zd | (np.arange(self.order) == 0)
        return frozenset(int(x) for x in np.nonzero(zd)[0])

    @cached_property
    def principal_ideals(self) -> list[frozenset[int]]:
        return [frozenset(int(v) for v in np.unique(self.mul[:, x])) for x in range(self.order)]

    def is_field(self) -> bool:
        return len(self.units) == self.order - 1

    def characteristic(self) -> int:
        x, c = self.one, 1
        while x != 0:
            x = self.plus(x, self.one)
            c += 1
        return c

    def check_axioms(self) -> None:
        """Exhaustively assert the commutative-ring-with-identity laws."""
        a, m, n = self.add, self.mul, self.order
        idx = np.arange(n)
        assert (a == a.T).all() and (m == m.T).all(), "not commutative"
        # associativity: (x+y)+z == x+(y+z), (xy)z == x(yz)
        assert (a[a[idx][:, :, None], idx[None, None, :]] == a[idx[:, None, None], a[idx][None, :, :]]).all(), "+ not associative"
        assert (m[m[idx][:, :, None], idx[None, None, :]] == m[idx[:, None, None], m[idx][None, :, :]]).all(), "* not associative"
        # distributivity x(y+z) == xy + xz
        lhs = m[idx[:, None, None], a[idx][None, :, :]]
        rhs = a[m[:, :, None], m[:, None, :]]
        assert (lhs == rhs).all(), "not distributive"
        assert (m[:, self.one] == idx).all(), "1 is not an identity"
        assert (a[:, 0] == idx).all(), "0 is not an additive identity"
        assert (a[idx, self.neg] == 0).all(), "missing additive inverse"


def compile_ring(spec: RingSpec | str, max_order: int = DEFAULT_MAX_ORDER) -> FiniteRing:
    """Compile a spec (or its text form) into operation tables."""
    if isinstance(spec, str):
        spec = parse_ring(spec)
    if spec.order > max_order:
        raise OrderTooLarge(f"{spec} has order {spec.order} > {max_order}")
    atoms = spec.factors if isinstance(spec, Product) else (spec,)
    tables = [_atom_tables(a) for a in atoms]
    add, mul = reduce(_combine, tables)
    return FiniteRing(spec, add, mul, tuple(a.order for a in atoms))


# ---------------------------------------------------------------------------
# ring queries
# ---------------------------------------------------------------------------


def units(R: FiniteRing) -> frozenset[int]:
    return R.units


def jacobson_radical(R: FiniteRing) -> frozenset[int]:
    return R.jacobson


def is_local(R: FiniteRing) -> tuple[bool, frozenset[int] | None]:
    """Locality test; returns the maximal ideal when the ring is local."""
    nonunits = [x for x in range(R.order) if x not in R.units]
    s = set(nonunits)
    for x in nonunits:
        for y in nonunits:
            if R.plus(x, y) not in s:
                return False, None
    return True, frozenset(nonunits)


def _additive_generators(R: FiniteRing) -> list[int]:
    gens: list[int] = []
    span = {0}
    for x in range(R.order):
        if x in span:
            continue
        gens.append(x)
        frontier = list(span)
        while frontier:
            new = []
            for y in frontier:
                for g in gens:
                    z = R.plus(y, g)
                    if z not in span:
                        span.add(z)
                        new.append(z)
            frontier = new
    return gens


def index2_maximal_ideals(R: FiniteRing) -> list[frozenset[int]]:
    """Ideals of index 2, as kernels of additive characters into Z2 that
    absorb multiplication."""
    if R.order % 2:
        return []
    gens = _additive_generators(R)
    found = []
    for values in itertools.product((0, 1), repeat=len(gens)):
        if not any(values):
            continue
        chi = {0: 0}
        frontier = [0]
        ok = True
        while frontier and ok:
            new = []
            for y in frontier:
                for g, v in zip(gens, values):
                    z, w = R.plus(y, g), chi[y] ^ v
                    if z in chi:
                        if chi[z] != w:
                            ok = False
                            break
                    else:
                        chi[z] = w
                        new.append(z)
                if not ok:
                    break
            frontier = new
        if not ok:
            continue
        kernel = frozenset(x for x, v in chi.items() if v == 0)
        if all(R.times(r, k) in kernel for r in range(R.order) for k in kernel):
            found.append(kernel)
    return sorted(set(found), key=sorted)


def comaximal(R: FiniteRing, x: int, y: int) -> bool:
    """True iff ``Rx + Ry = R``."""
    ix, iy = R.principal_ideals[x], R.principal_ideals[y]
    return any(R.plus(R.one, R.minus(a)) in iy for a in ix)


def subgroup_closure(R: FiniteRing, seed: Iterable[int]) -> frozenset[int]:
    seed = set(seed)
    bad = seed - R.units
    if bad:
        raise ElementNotUnit(f"not units: {sorted(bad)}")
    group = {R.one} | seed
    frontier = list(group)
    while frontier:
        new = []
        for a in frontier:
            for b in list(group):
                c = R.times(a, b)
                if c not in group:
                    group.add(c)
                    new.append(c)
        frontier = new
    return frozenset(group)


@dataclass(frozen=True)
class MultiplicativeData:
    """A validated pair (G, S): G a subgroup of U(R), S an inverse-closed
    non-empty subset of G."""

    G: frozenset[int]
    S: frozenset[int]


def validate_S(R: FiniteRing, G: Iterable[int] | None, S: Iterable[int]) -> MultiplicativeData:
    G = R.units if G is None else frozenset(G)
    S = frozenset(S)
    if R.one not in G or not G <= R.units:
        raise GNotSubgroup("G must be a set of units containing 1")
    for a in G:
        if R.inverse[a] not in G or any(R.times(a, b) not in G for b in G):
            raise GNotSubgroup("G is not closed under products and inverses")
    if not S:
        raise EmptyS("S must be non-empty")
    if not S <= G:
        raise SNotInG(f"elements outside G: {sorted(S - G)}")
    missing = {R.inverse[s] for s in S} - S
    if missing:
        raise SNotInverseClosed(f"inverses missing from S: {sorted(missing)}")
    return MultiplicativeData(G, S)


def inverse_closed_subsets(R: FiniteRing, G: Iterable[int] | None = None) -> list[frozenset[int]]:
    """All non-empty inverse-closed subsets of G (default U(R)), in a fixed order."""
    G = sorted(R.units if G is None else G)
    orbits = []
    seen: set[int] = set()
    for g in G:
        if g not in seen:
            orb = frozenset({g, R.inverse[g]})
            seen |= orb
            orbits.append(orb)
    out = []
    for r in range(1, len(orbits) + 1):
        for combo in itertools.combinations(orbits, r):
            out.append(frozenset().union(*combo))
    return out


# ---------------------------------------------------------------------------
# local ring catalog
# ---------------------------------------------------------------------------

#: Local rings used to generate ring universes, keyed by display name.
#: ``GF(4)[x]/(x^2)`` is realised as ``Z2[x]/(x^4+x^2+1)``: the square of a
#: separable irreducible gives a local ring of characteristic 2 with residue
#: field F4 and square-zero maximal ideal, which is F4[x]/(x^2).
LOCAL_CATALOG: dict[str, RingSpec] = {
    "Z2": ModularInt(2),
    "Z3": ModularInt(3),
    "Z4": ModularInt(4),
    "Z2[x]/(x^2)": QuotientPoly(2, (0, 0, 1)),
    "GF(4)": GaloisField(2, 2),
    "Z5": ModularInt(5),
    "Z7": ModularInt(7),
    "Z8": ModularInt(8),
    "Z2[x]/(x^3)": QuotientPoly(2, (0, 0, 0, 1)),
    "GF(8)": GaloisField(2, 3),
    "Z9": ModularInt(9),
    "Z3[x]/(x^2)": QuotientPoly(3, (0, 0, 1)),
    "GF(9)": GaloisField(3, 2),
    "Z16": ModularInt(16),
    "GF(16)": GaloisField(2, 4),
    "Z4[x]/(x^2)": QuotientPoly(4, (0, 0, 1)),
    "Z2[x]/(x^4)": QuotientPoly(2, (0, 0, 0, 0, 1)),
    "GF(4)[x]/(x^2)": QuotientPoly(2, (1, 0, 1, 0, 1)),
}
