"""Prime fields F_q and extensions F_{q^r} with the Frobenius automorphism.

Elements of both field types are plain ``int`` values.  An element of F_{q^r}
with coordinates (c_0, ..., c_{r-1}) relative to the polynomial basis
(1, a, ..., a^{r-1}) is encoded as ``c_0 + c_1*q + ... + c_{r-1}*q^(r-1)``, so
the embedded base field F_q is exactly ``range(q)``.  Integer order on the
encoding is the ordering used for every "smallest" selection below.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence

from .errors import FormatError, InvalidParameter, NotIrreducible, NotPrime, Singular

MAX_ORDER = 1 << 20
_ADD_TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class PrimeField:
    """Integers modulo a prime ``q``."""

    def __init__(self, q: int):
        if q < 2 or not is_prime(q):
            raise NotPrime(f"{q} is not prime")
        self.q = q
        self.order = q
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.q

    def sub(self, a, b):
        return (a - b) % self.q

    def neg(self, a):
        return -a % self.q

    def mul(self, a, b):
        return a * b % self.q

    def inv(self, a):
        if a % self.q == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.q - 2, self.q)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        return pow(a, e, self.q)

    def random(self, rng):
        return rng.randrange(self.q)

    def serialize(self, a) -> str:
        return str(a)

    def parse(self, s: str) -> int:
        v = int(s)
        if not 0 <= v < self.q:
            raise FormatError(f"residue {v} out of range for q={self.q}")
        return v

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self):
        return hash(("F", self.q))

    def __repr__(self):
        return f"PrimeField({self.q})"


def make_prime_field(q: int) -> PrimeField:
    return PrimeField(q)


# --- polynomials over F_q as coefficient tuples, low degree first -----------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, f, q):
    """Remainder of ``a`` modulo the monic polynomial ``f``."""
    a = _trim(a)
    d = len(f) - 1
    while len(a) - 1 >= d:
        lead = a[-1]
        shift = len(a) - 1 - d
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - lead * fi) % q
        a = _trim(a)
    return a


def _poly_mul(a, b, q):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % q
    return out


def _poly_mulmod(a, b, f, q):
    return _poly_mod(_poly_mul(a, b, q), f, q)


def _poly_powmod(a, e, f, q):
    result = [1]
    base = _poly_mod(a, f, q)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, q)
        base = _poly_mulmod(base, base, f, q)
        e >>= 1
    return result


def is_irreducible(f: Sequence[int], q: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(f)//2."""
    f = _trim(f)
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    for e in range(1, d // 2 + 1):
        for low in product(range(q), repeat=e):
            if not _poly_mod(f, list(low) + [1], q):
                return False
    return True


def _monic_candidates(q, r):
    # integer order on (c_0..c_{r-1}) with c_{r-1} most significant
    for n in range(q ** r):
        low = []
        for _ in range(r):
            n, c = divmod(n, q)
            low.append(c)
        yield tuple(low) + (1,)


class ExtField:
    """The extension F_{q^r} = F_q[x]/(modulus).

    ``primitive`` is the smallest generator of the multiplicative group; it
    also seeds the exp/log tables used for multiplication and Frobenius.
    """

    def __init__(self, base: PrimeField | int, r: int, modulus: Sequence[int] | None = None):
        if isinstance(base, int):
            base = PrimeField(base)
        if r < 1:
            raise InvalidParameter("extension degree must be >= 1")
        q = base.q
        if q ** r > MAX_ORDER:
            raise InvalidParameter(f"q^r = {q ** r} exceeds {MAX_ORDER}")
        self.base = base
        self.q = q
        self.r = r
        self.order = q ** r
        self.zero = 0
        self.one = 1
        if modulus is None:
            modulus = next(f for f in _monic_candidates(q, r) if is_irreducible(f, q))
        else:
            modulus = tuple(int(c) % q for c in modulus)
            if len(modulus) != r + 1 or modulus[-1] != 1:
                raise InvalidParameter(f"modulus must be monic of degree {r}")
            if not is_irreducible(modulus, q):
                raise NotIrreducible(f"modulus {modulus} is reducible over F_{q}")
        self.modulus = tuple(modulus)
        self.primitive = self._search_primitive()
        self._build_tables()

    # --- encoding ---------------------------------------------------------
    def coeffs(self, x: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.r):
            x, c = divmod(x, self.q)
            out.append(c)
        return tuple(out)

    def elem(self, coeffs: Iterable[int]) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.r:
            raise InvalidParameter("too many coefficients")
        x = 0
        for c in reversed(coeffs):
            x = x * self.q + c % self.q
        return x

    def _poly_of(self, x):
        return _trim(self.coeffs(x))

    def _from_poly(self, p):
        return self.elem(list(p) + [0] * (self.r - len(p)))

    def poly_mul(self, a: int, b: int) -> int:
        """Multiplication straight from the polynomial representation."""
        return self._from_poly(_poly_mulmod(self._poly_of(a), self._poly_of(b), self.modulus, self.q))

    def poly_pow(self, a: int, e: int) -> int:
        """Square-and-multiply on the polynomial representation."""
        return self._from_poly(_poly_powmod(self._poly_of(a), e, self.modulus, self.q))

    def _search_primitive(self):
        n = self.order - 1
        if n == 1:
            return 1
        cofactors = [n // p for p in prime_factors(n)]
        for x in range(1, self.order):
            if self.poly_pow(x, n) != 1:
                continue
            if all(self.poly_pow(x, e) != 1 for e in cofactors):
                return x
        raise AssertionError("no primitive element found")  # pragma: no cover

    def _build_tables(self):
        n = self.order - 1
        exp = [0] * (2 * n)
        log = [0] * self.order
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self.poly_mul(x, self.primitive)
        exp[n:] = exp[:n]
        self._exp = exp
        self._log = log
        self._add = None
        if self.r == 1:
            return
        if self.order <= _ADD_TABLE_LIMIT:
            self._add = [[self._add_slow(a, b) for b in range(self.order)] for a in range(self.order)]

    # --- arithmetic -------------------------------------------------------
    def _add_slow(self, a, b):
        q = self.q
        out = 0
        place = 1
        for _ in range(self.r):
            a, ca = divmod(a, q)
            b, cb = divmod(b, q)
            out += ((ca + cb) % q) * place
            place *= q
        return out

    def add(self, a, b):
        if self.r == 1:
            return (a + b) % self.q
        if self._add is not None:
            return self._add[a][b]
        return self._add_slow(a, b)

    def neg(self, a):
        if self.r == 1:
            return -a % self.q
        q = self.q
        out = 0
        place = 1
        for _ in range(self.r):
            a, c = divmod(a, q)
            out += (-c % q) * place
            place *= q
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if a == 0:
            return 1 if e == 0 else 0
        return self._exp[self._log[a] * e % (self.order - 1)]

    def frob(self, x: int, i: int = 1) -> int:
        """sigma^i(x) = x^(q^i)."""
        if i < 0:
            raise InvalidParameter("Frobenius power must be >= 0")
        if x == 0:
            return 0
        n = self.order - 1
        return self._exp[self._log[x] * pow(self.q, i % self.r, n) % n]

    def order_of(self, x: int) -> int:
        if x == 0:
            raise InvalidParameter("zero has no multiplicative order")
        n = self.order - 1
        if n == 0:
            return 1
        from math import gcd
        return n // gcd(n, self._log[x])

    def random(self, rng) -> int:
        # one unbiased residue per coordinate
        return self.elem(rng.randrange(self.q) for _ in range(self.r))

    def elements(self) -> range:
        return range(self.order)

    # --- text ------------------------------------------------------------
    def serialize(self, x: int) -> str:
        return ",".join(str(c) for c in self.coeffs(x))

    def parse(self, s: str) -> int:
        parts = s.strip().split(",")
        if len(parts) != self.r:
            raise FormatError(f"expected {self.r} residues, got {s!r}")
        vals = [int(p) for p in parts]
        if any(not 0 <= v < self.q for v in vals):
            raise FormatError(f"residue out of range in {s!r}")
        return self.elem(vals)

    def descriptor(self) -> str:
        mod = ",".join(str(c) for c in self.modulus)
        return f"q={self.q}\nr={self.r}\nmodulus={mod}\n"

    def polynomial_basis(self) -> "Basis":
        return Basis(self, [self.q ** i for i in range(self.r)])

    def __eq__(self, other):
        return isinstance(other, ExtField) and (other.q, other.r, other.modulus) == (self.q, self.r, self.modulus)

    def __hash__(self):
        return hash((self.q, self.r, self.modulus))

    def __repr__(self):
        return f"ExtField(q={self.q}, r={self.r}, modulus={self.modulus})"


def make_extension(base: PrimeField, r: int, modulus: Sequence[int] | None = None) -> ExtField:
    return ExtField(base, r, modulus)


def frobenius_pow(F: ExtField, x: int, i: int) -> int:
    return F.frob(x, i)


def find_primitive(F: ExtField) -> int:
    return F.primitive


class Basis:
    """Ordered F_q-basis (beta_1, ..., beta_r) of F_{q^r}."""

    def __init__(self, F: ExtField, elems: Sequence[int]):
        from .linalg import inverse

        elems = tuple(elems)
        if len(elems) != F.r:
            raise InvalidParameter(f"basis needs {F.r} elements")
        self.field = F
        self.elems = elems
        rows = [list(F.coeffs(b)) for b in elems]
        self.is_polynomial = elems == tuple(F.q ** i for i in range(F.r))
        try:
            self._inv = inverse(F.base, rows)
        except Singular:
            raise InvalidParameter("elements are not an F_q-basis") from None

    def decompose(self, x: int) -> tuple[int, ...]:
        """Coordinates (c_1..c_r) over F_q with x = sum c_i beta_i."""
        F = self.field
        c = F.coeffs(x)
        if self.is_polynomial:
            return c
        q = F.q
        return tuple(sum(c[i] * self._inv[i][j] for i in range(F.r)) % q for j in range(F.r))

    def compose(self, c: Sequence[int]) -> int:
        F = self.field
        x = 0
        for ci, b in zip(c, self.elems):
            if ci:
                x = F.add(x, F.mul(ci % F.q, b))
        return x

    def serialize(self) -> str:
        return ";".join(self.field.serialize(b) for b in self.elems)

    @classmethod
    def parse(cls, F: ExtField, s: str) -> "Basis":
        return cls(F, [F.parse(p) for p in s.split(";")])

    def __len__(self):
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __getitem__(self, i):
        return self.elems[i]

    def __eq__(self, other):
        return isinstance(other, Basis) and other.field == self.field and other.elems == self.elems

    def __repr__(self):
        return f"Basis({list(self.elems)})"


def decompose(F: ExtField, basis: Basis, x: int) -> tuple[int, ...]:
    return basis.decompose(x)


def compose(F: ExtField, basis: Basis, c: Sequence[int]) -> int:
    return basis.compose(c)


def parse_field_descriptor(text: str) -> ExtField:
    """Read the ``q=``/``r=``/``modulus=`` lines back into a field."""
    kv = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if "=" in line:
            key, val = line.split("=", 1)
            kv[key.strip()] = val.strip()
    try:
        q = int(kv["q"])
        r = int(kv["r"])
    except (KeyError, ValueError) as exc:
        raise FormatError(f"bad field descriptor: {exc}") from None
    modulus = None
    if "modulus" in kv:
        modulus = [int(c) for c in kv["modulus"].split(",")]
    return ExtField(PrimeField(q), r, modulus)
