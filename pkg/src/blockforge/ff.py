"""Exact arithmetic in F_p and small extensions F_{p^n}.

Elements are table-encoded: the element with polynomial-basis coefficients
(c0, ..., c_{n-1}) has code c0 + c1*p + ... + c_{n-1}*p^{n-1}.  A FieldSpec
owns dense add/mul/neg/inv lookup tables (numpy uint16) shared by the
linear-algebra kernels, plus a deterministic choice of modulus and a
canonical ordering of elements so that roots of unity, eigenbases and all
downstream choices are reproducible across runs.
"""

from functools import lru_cache
from itertools import product

import numpy as np

# Tables are quadratic in the field size; beyond this the encoding stops
# being sensible and the intended computations do not need it.
MAX_TABLE_FIELD = 512


class FieldError(ValueError):
    pass


def is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _poly_mul_mod(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_rem(a, b, p):
    # remainder of a by monic-leading b, coefficients mod p
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    lead_inv = pow(b[-1], p - 2, p)
    while da >= db and any(a):
        while da >= 0 and a[da] == 0:
            da -= 1
        if da < db:
            break
        f = (a[da] * lead_inv) % p
        shift = da - db
        for j, y in enumerate(b):
            a[shift + j] = (a[shift + j] - f * y) % p
        da -= 1
    return a


def _is_irreducible(coeffs, p):
    """Trial division by all monic polynomials of degree <= n//2."""
    n = len(coeffs) - 1
    if coeffs[0] == 0 and n > 1:
        return False
    for d in range(1, n // 2 + 1):
        for tail in product(range(p), repeat=d):
            divisor = list(tail) + [1]
            rem = _poly_rem(coeffs, divisor, p)
            if not any(rem):
                return False
    return True


def _canonical_modulus(p, n):
    """Lexicographically least monic irreducible of degree n over F_p,
    coefficients compared from the constant term upward."""
    if n == 1:
        return (0, 1)
    for low in product(range(p), repeat=n):
        coeffs = list(low) + [1]
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise FieldError(f"no irreducible polynomial of degree {n} over F_{p}")


class FieldSpec:
    """An explicit finite field F_{p^n} with dense arithmetic tables."""

    def __init__(self, p, n, modulus):
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = tuple(modulus)
        self._build_tables()
        self._root_cache = {}

    def _build_tables(self):
        p, n, q = self.p, self.n, self.q
        codes = np.arange(q, dtype=np.int64)
        digits = np.empty((q, n), dtype=np.int64)
        rest = codes.copy()
        for i in range(n):
            digits[:, i] = rest % p
            rest //= p
        self._digits = digits

        acc = np.zeros((q, q), dtype=np.int64)
        weight = 1
        for i in range(n):
            acc += ((digits[:, i][:, None] + digits[:, i][None, :]) % p) * weight
            weight *= p
        self.ADD = acc.astype(np.uint16)

        # multiplication via a discrete-log table on the cyclic unit group
        gen = None
        for code in range(1, q):
            if self._order_by_mul(code) == q - 1:
                gen = code
                break
        assert gen is not None
        exp = np.empty(q - 1, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        cur = 1
        for k in range(q - 1):
            exp[k] = cur
            log[cur] = k
            cur = self._mul_codes_slow(cur, gen)
        mul = exp[(log[:, None] + log[None, :]) % (q - 1)]
        mul[0, :] = 0
        mul[:, 0] = 0
        self.MUL = mul.astype(np.uint16)
        self._log = log
        self._exp = exp

        acc = np.zeros(q, dtype=np.int64)
        weight = 1
        for i in range(n):
            acc += ((-digits[:, i]) % p) * weight
            weight *= p
        self.NEG = acc.astype(np.uint16)

        inv = np.zeros(q, dtype=np.int64)
        inv[exp] = exp[(-log[exp]) % (q - 1)]
        self.INV = inv.astype(np.uint16)

    def _mul_codes_slow(self, a, b):
        # polynomial multiplication mod the modulus; used only to bootstrap
        pa = [int(x) for x in self._digits[a]]
        pb = [int(x) for x in self._digits[b]]
        prod_ = _poly_mul_mod(pa, pb, self.p)
        rem = _poly_rem(prod_, list(self.modulus), self.p)
        code = 0
        for i in range(self.n - 1, -1, -1):
            code = code * self.p + (rem[i] if i < len(rem) else 0)
        return code

    def _order_by_mul(self, code):
        k, cur = 1, code
        while cur != 1:
            cur = self._mul_codes_slow(cur, code)
            k += 1
            if k > self.q:
                raise FieldError("not a unit")
        return k

    # -- raw code arithmetic ------------------------------------------------

    def add(self, a, b):
        return int(self.ADD[a, b])

    def sub(self, a, b):
        return int(self.ADD[a, self.NEG[b]])

    def mul(self, a, b):
        return int(self.MUL[a, b])

    def neg(self, a):
        return int(self.NEG[a])

    def inv(self, a):
        if a == 0:
            raise FieldError("division by zero")
        return int(self.INV[a])

    def pow(self, a, k):
        if a == 0:
            if k == 0:
                return 1
            if k < 0:
                raise FieldError("division by zero")
            return 0
        k %= self.q - 1
        return int(self._exp[(self._log[a] * k) % (self.q - 1)])

    def coeffs(self, code):
        return tuple(int(x) for x in self._digits[code])

    def encode(self, coeffs):
        code = 0
        for c in reversed(list(coeffs)):
            code = code * self.p + (c % self.p)
        return code

    def from_int(self, x):
        return x % self.p

    # -- elements and canonical ordering ------------------------------------

    def element(self, x):
        if isinstance(x, FieldElement):
            if x.spec is not self and x.spec != self:
                raise FieldError("field mismatch")
            return FieldElement(self, x.code)
        if isinstance(x, (tuple, list)):
            return FieldElement(self, self.encode(x))
        return FieldElement(self, self.from_int(int(x)))

    def zero(self):
        return FieldElement(self, 0)

    def one(self):
        return FieldElement(self, 1)

    def order_key(self, code):
        return self.coeffs(code)

    def elements(self):
        """All element codes in canonical (coefficient-lex) order."""
        return sorted(range(self.q), key=self.order_key)

    def element_order(self, code):
        if code == 0:
            raise FieldError("0 has no multiplicative order")
        k = (self.q - 1) // np.gcd(int(self._log[code]) or (self.q - 1), self.q - 1)
        # log(gen^t) = t; order = (q-1)/gcd(t, q-1); log=0 means the identity
        if code == 1:
            return 1
        return int(k)

    def root_of_unity(self, m):
        """Canonical primitive m-th root of unity (least in element order)."""
        if m in self._root_cache:
            return self._root_cache[m]
        if m < 1 or (self.q - 1) % m != 0:
            raise FieldError(
                f"no primitive {m}-th root of unity in F_{self.p}^{self.n}: "
                f"{m} does not divide {self.q - 1}"
            )
        for code in self.elements():
            if code != 0 and self.element_order(code) == m:
                self._root_cache[m] = code
                return code
        raise AssertionError("cyclic unit group must contain the root")

    def repr_code(self, code):
        if self.n == 1:
            return str(code)
        terms = []
        for i, c in enumerate(self.coeffs(code)):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                base = "w" if i == 1 else f"w^{i}"
                terms.append(base if c == 1 else f"{c}*{base}")
        return "+".join(terms) if terms else "0"

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def __repr__(self):
        return f"FieldSpec(p={self.p}, n={self.n})"


class FieldElement:
    __slots__ = ("spec", "code")

    def __init__(self, spec, code):
        self.spec = spec
        self.code = int(code)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldError("field mismatch")
            return other.code
        return self.spec.from_int(int(other))

    def __add__(self, other):
        return FieldElement(self.spec, self.spec.add(self.code, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.spec, self.spec.sub(self.code, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.spec, self.spec.sub(self._coerce(other), self.code))

    def __mul__(self, other):
        return FieldElement(self.spec, self.spec.mul(self.code, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(
            self.spec, self.spec.mul(self.code, self.spec.inv(self._coerce(other)))
        )

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.code))

    def __pow__(self, k):
        return FieldElement(self.spec, self.spec.pow(self.code, k))

    def inverse(self):
        return FieldElement(self.spec, self.spec.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.code == other.code
        if isinstance(other, int):
            return self.code == self.spec.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.code))

    def __bool__(self):
        return self.code != 0

    @property
    def coeffs(self):
        return self.spec.coeffs(self.code)

    def __repr__(self):
        return self.spec.repr_code(self.code)


@lru_cache(maxsize=None)
def make_field(p, n=1):
    """The field F_{p^n} with the canonical (lex-least) irreducible modulus."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if n < 1:
        raise FieldError("extension degree must be >= 1")
    if p**n > MAX_TABLE_FIELD:
        raise FieldError(
            f"field of size {p**n} exceeds the table bound {MAX_TABLE_FIELD}"
        )
    return FieldSpec(p, n, _canonical_modulus(p, n))


def min_extension_degree(p, m):
    """Smallest n with m | p^n - 1."""
    if m % p == 0:
        raise FieldError(f"order {m} is divisible by the characteristic {p}")
    n, val = 1, p % m
    while val != 1 % m:
        val = (val * p) % m
        n += 1
        if n > m:
            raise AssertionError("unreachable: ord divides phi(m) <= m")
    return n


def field_for_orders(p, orders):
    """Smallest F_{p^n} containing roots of unity of all the given orders."""
    n = 1
    for m in orders:
        if m > 1:
            n = int(np.lcm(n, min_extension_degree(p, m)))
    return make_field(p, n)
