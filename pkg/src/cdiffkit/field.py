"""Exact arithmetic for GF(p^n) with table acceleration.

Field elements are plain integer ranks in [0, q).  The base-p digits of a
rank, least significant first, are the coefficients of the element in the
polynomial basis 1, x, x^2, ..., x^(n-1).  Rank 0 is the additive identity
and rank 1 the multiplicative identity.

A FieldSpec owns the modulus polynomial and the precomputed tables
(log/antilog, pairwise addition, negation, inversion, Frobenius, trace).
Tables are built only below configurable size bounds; every operation has
a slow exact fallback, so larger fields still work.
"""

from __future__ import annotations

import functools

import numpy as np

from .errors import (
    DegreeMismatch,
    DivisionByZero,
    NonDivisorSubfieldDegree,
    NonPrimeCharacteristic,
    ReducibleModulus,
)

LOG_TABLE_BOUND = 1 << 20   # build exp/log tables when q <= this
PAIR_TABLE_BOUND = 4096     # build the dense q x q addition table when q <= this


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# polynomial arithmetic over F_p (coefficient lists, constant term first)
# ---------------------------------------------------------------------------

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for j, y in enumerate(m):
            a[shift + j] = (a[shift + j] - c * y) % p
        _poly_trim(a)
    return _poly_trim(a)


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_powmod(base, e, m, p):
    result = [1]
    base = _poly_mod(base, m, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), m, p)
        base = _poly_mod(_poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def _has_root(mod, p):
    n = len(mod) - 1
    for r in range(p):
        acc = 0
        xp = 1
        for c in mod:
            acc = (acc + c * xp) % p
            xp = (xp * r) % p
        if acc == 0:
            return True
    return False


def _monic_polys(p, degree):
    for m in range(p ** degree):
        coeffs = []
        r = m
        for _ in range(degree):
            coeffs.append(r % p)
            r //= p
        yield coeffs + [1]


def is_irreducible(modulus, p: int) -> bool:
    """Irreducibility over F_p: trial division up to degree 4, gcd criterion above."""
    n = len(modulus) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if n <= 4:
        if _has_root(modulus, p):
            return False
        if n <= 3:
            return True
        for d in _monic_polys(p, 2):
            if not _poly_mod(modulus, d, p):
                return False
        return True
    # x^(p^n) == x mod f, and gcd(x^(p^(n/r)) - x, f) = 1 for prime r | n
    x = [0, 1]
    xq = _poly_powmod(x, p ** n, modulus, p)
    diff = [(a - b) % p for a, b in
            zip(xq + [0] * len(x), x + [0] * len(xq))]
    if _poly_trim(diff):
        return False
    for r in _prime_factors(n):
        xe = _poly_powmod(x, p ** (n // r), modulus, p)
        diff = [(a - b) % p for a, b in
                zip(xe + [0] * len(x), x + [0] * len(xe))]
        g = _poly_gcd(modulus, _poly_trim(diff), p)
        if len(g) - 1 >= 1:
            return False
    return True


def _prime_factors(m):
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return out


def find_default_modulus(p: int, n: int):
    """Smallest primitive monic degree-n polynomial over F_p.

    Candidates are ordered by their coefficient vector read as a base-p
    integer, constant term least significant; the same (p, n) always yields
    the same modulus.
    """
    for mod in _monic_polys(p, n):
        if not is_irreducible(mod, p):
            continue
        if _x_is_primitive(mod, p, n):
            return mod
    raise AssertionError(f"no primitive polynomial of degree {n} over F_{p}")


def _x_is_primitive(mod, p, n):
    """Does the class of x generate the multiplicative group of F_p[x]/(mod)?"""
    q = p ** n
    x = _poly_mod([0, 1] if n > 1 else [(-mod[0]) % p], mod, p)
    if q == 2:
        return x == [1]
    if x in ([], [1]):
        return False
    if _poly_powmod(x, q - 1, mod, p) != [1]:
        return False
    return all(_poly_powmod(x, (q - 1) // r, mod, p) != [1]
               for r in _prime_factors(q - 1))


class FieldSpec:
    """A concrete model of GF(p^n): modulus plus precomputed tables.

    Immutable after construction; safe to share between threads and
    processes.  All arithmetic methods are pure.
    """

    def __init__(self, p: int, n: int, modulus=None,
                 log_table_bound: int = LOG_TABLE_BOUND,
                 pair_table_bound: int = PAIR_TABLE_BOUND):
        if not isinstance(p, int) or not is_prime(p):
            raise NonPrimeCharacteristic(f"p = {p} is not prime")
        if not isinstance(n, int) or n < 1:
            raise DegreeMismatch(f"extension degree n = {n} must be >= 1")
        self.p = p
        self.n = n
        self.q = p ** n
        if modulus is None:
            modulus = find_default_modulus(p, n)
        modulus = [int(c) % p for c in modulus]
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise DegreeMismatch(
                f"modulus must be monic of degree {n}, got {modulus}")
        if not is_irreducible(modulus, p):
            raise ReducibleModulus(f"{modulus} factors over F_{p}")
        self.modulus = tuple(modulus)

        self._digits = self._build_digits()
        self._pow_p = np.array([p ** i for i in range(n)], dtype=np.int64)

        self._exp = None
        self._log = None
        self.primitive_rank = None
        if self.q <= log_table_bound:
            self._build_log_tables()

        self._neg = self._undigitize((-self._digits) % p)
        self._neg.setflags(write=False)

        self._add = None
        if self.q <= pair_table_bound:
            q = self.q
            add = np.zeros((q, q), dtype=np.int32)
            for i in range(n):
                add += ((self._digits[:, None, i] + self._digits[None, :, i]) % p).astype(np.int32) * (p ** i)
            add.setflags(write=False)
            self._add = add

        self._frob = None
        self._trace = None
        self._inv = None
        if self._exp is not None:
            self._build_unary_tables()

    # -- construction helpers ------------------------------------------------

    def _build_digits(self):
        q, n, p = self.q, self.n, self.p
        digits = np.zeros((q, n), dtype=np.int32)
        r = np.arange(q)
        for i in range(n):
            digits[:, i] = r % p
            r = r // p
        digits.setflags(write=False)
        return digits

    def _undigitize(self, digs):
        return (digs.astype(np.int64) @ self._pow_p).astype(np.int32)

    def _scalar_mul_poly(self, x: int, y: int) -> int:
        a = list(self._digits[x])
        b = list(self._digits[y])
        prod = _poly_mod(_poly_mul(_poly_trim(a), _poly_trim(b), self.p),
                         list(self.modulus), self.p)
        r = 0
        for c in reversed(prod):
            r = r * self.p + c
        return r

    def _build_log_tables(self):
        q = self.q
        if q == 2:
            self._exp = np.array([1, 1], dtype=np.int32)
            self._log = np.array([0, 0], dtype=np.int32)
            self.primitive_rank = 1
            return
        gen = self._find_generator()
        exp = np.zeros(2 * (q - 1), dtype=np.int32)
        cur = 1
        for i in range(q - 1):
            exp[i] = cur
            cur = self._scalar_mul_poly(cur, gen)
        if cur != 1 or len(set(exp[:q - 1].tolist())) != q - 1:
            raise AssertionError("generator walk failed")
        exp[q - 1:] = exp[:q - 1]
        log = np.zeros(q, dtype=np.int32)
        log[exp[:q - 1]] = np.arange(q - 1)
        exp.setflags(write=False)
        log.setflags(write=False)
        self._exp = exp
        self._log = log
        self.primitive_rank = gen

    def _find_generator(self):
        q = self.q
        # the canonical modulus is primitive, so the class of x generates;
        # probe it first, then fall back to a search for custom moduli
        candidates = []
        if self.n > 1:
            candidates.append(self.p)
        else:
            candidates.append((-self.modulus[0]) % self.p)
        candidates.extend(r for r in range(2, q) if r not in candidates)
        factors = _prime_factors(q - 1)
        for g in candidates:
            if g in (0, 1):
                continue
            if all(self._scalar_pow_poly(g, (q - 1) // r) != 1 for r in factors):
                return g
        raise AssertionError("no generator found")

    def _scalar_pow_poly(self, x, e):
        r = 1
        b = x
        while e:
            if e & 1:
                r = self._scalar_mul_poly(r, b)
            b = self._scalar_mul_poly(b, b)
            e >>= 1
        return r

    def _build_unary_tables(self):
        q, p = self.q, self.p
        exp, log = self._exp, self._log
        idx = np.arange(q - 1)
        frob = np.zeros(q, dtype=np.int32)
        frob[exp[:q - 1]] = exp[(idx * p) % (q - 1)]
        inv = np.zeros(q, dtype=np.int32)
        inv[exp[:q - 1]] = exp[(q - 1 - idx) % (q - 1)]
        trace = np.zeros(q, dtype=np.int32)
        cur = np.arange(q, dtype=np.int32)
        acc = np.zeros(q, dtype=np.int32)
        for _ in range(self.n):
            acc = self.add_arrays(acc, cur)
            cur = frob[cur]
        trace = acc  # ranks < p, i.e. prime-subfield constants
        for t in (frob, inv, trace):
            t.setflags(write=False)
        self._frob = frob
        self._inv = inv
        self._trace = trace

    # -- scalar operations ----------------------------------------------------

    def _check(self, x):
        if not 0 <= x < self.q:
            raise ValueError(f"rank {x} outside [0, {self.q})")
        return int(x)

    def add(self, x: int, y: int) -> int:
        x, y = self._check(x), self._check(y)
        if self._add is not None:
            return int(self._add[x, y])
        d = (self._digits[x] + self._digits[y]) % self.p
        return int(self._undigitize(d))

    def neg(self, x: int) -> int:
        return int(self._neg[self._check(x)])

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        x, y = self._check(x), self._check(y)
        if x == 0 or y == 0:
            return 0
        if self._log is not None:
            return int(self._exp[self._log[x] + self._log[y]])
        return self._scalar_mul_poly(x, y)

    def inv(self, x: int) -> int:
        x = self._check(x)
        if x == 0:
            raise DivisionByZero("inverse of 0")
        if self._inv is not None:
            return int(self._inv[x])
        return self._scalar_pow_poly(x, self.q - 2)

    def pow(self, x: int, e: int) -> int:
        x = self._check(x)
        e = int(e)
        if x == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise DivisionByZero("0 raised to a negative power")
        e %= self.q - 1 if self.q > 2 else 1
        if self.q == 2:
            return 1
        if self._log is not None:
            return int(self._exp[(int(self._log[x]) * e) % (self.q - 1)])
        return self._scalar_pow_poly(x, e)

    def frobenius(self, x: int) -> int:
        x = self._check(x)
        if self._frob is not None:
            return int(self._frob[x])
        return self.pow(x, self.p)

    def trace_abs(self, x: int) -> int:
        x = self._check(x)
        if self._trace is not None:
            return int(self._trace[x])
        acc, cur = 0, x
        for _ in range(self.n):
            acc = self.add(acc, cur)
            cur = self.pow(cur, self.p)
        return acc

    def trace_rel(self, g: int, x: int) -> int:
        """Relative trace onto GF(p^g): sum of x^(p^(g*i)), i < n/g."""
        if g < 1 or self.n % g != 0:
            raise NonDivisorSubfieldDegree(f"g = {g} does not divide n = {self.n}")
        x = self._check(x)
        acc, cur = 0, x
        for _ in range(self.n // g):
            acc = self.add(acc, cur)
            cur = self.pow(cur, self.p ** g)
        return acc

    def is_square(self, x: int) -> bool:
        x = self._check(x)
        if self.p == 2 or x == 0:
            return True
        if self._log is not None:
            return int(self._log[x]) % 2 == 0
        return self.pow(x, (self.q - 1) // 2) == 1

    def elements(self) -> range:
        """All q element ranks in increasing order."""
        return range(self.q)

    # -- vectorized operations (arrays of ranks) ------------------------------

    def add_arrays(self, xs, ys):
        if self._add is not None:
            return self._add[xs, ys]
        dx = self._digits[xs]
        dy = self._digits[ys]
        return self._undigitize((dx + dy) % self.p)

    def sub_arrays(self, xs, ys):
        return self.add_arrays(xs, self._neg[ys])

    def neg_array(self, xs):
        return self._neg[xs]

    def add_row(self, a: int):
        """Vector of x + a over all ranks x, i.e. one row of the addition table."""
        if self._add is not None:
            return self._add[a]
        return self.add_arrays(np.arange(self.q), np.full(self.q, a, dtype=np.int32))

    def scale_array(self, c: int, xs):
        """c * xs elementwise for a constant c."""
        c = self._check(c)
        xs = np.asarray(xs)
        if c == 0:
            return np.zeros_like(xs)
        if c == 1:
            return xs.copy()
        if self._log is not None:
            out = np.zeros_like(xs)
            nz = xs != 0
            out[nz] = self._exp[self._log[c] + self._log[xs[nz]]]
            return out
        return np.array([self.mul(c, int(x)) for x in xs.ravel()],
                        dtype=np.int32).reshape(xs.shape)

    def mul_arrays(self, xs, ys):
        xs = np.asarray(xs)
        ys = np.asarray(ys)
        if self._log is not None:
            xs, ys = np.broadcast_arrays(xs, ys)
            out = np.zeros(xs.shape, dtype=np.int32)
            nz = (xs != 0) & (ys != 0)
            out[nz] = self._exp[self._log[xs[nz]] + self._log[ys[nz]]]
            return out
        flat = [self.mul(int(x), int(y)) for x, y in
                zip(np.broadcast_to(xs, np.broadcast_shapes(xs.shape, ys.shape)).ravel(),
                    np.broadcast_to(ys, np.broadcast_shapes(xs.shape, ys.shape)).ravel())]
        return np.array(flat, dtype=np.int32).reshape(np.broadcast_shapes(xs.shape, ys.shape))

    def pow_all(self, e: int):
        """Vector of x^e over all ranks x (0^e = 0 for e >= 1)."""
        e = int(e)
        if e < 0:
            raise DivisionByZero("negative exponent over the whole field hits 0")
        q = self.q
        if e == 0:
            return np.ones(q, dtype=np.int32)
        if self._log is not None and q > 2:
            out = np.zeros(q, dtype=np.int32)
            idx = np.arange(1, q)
            out[idx] = self._exp[(self._log[idx].astype(np.int64) * (e % (q - 1))) % (q - 1)]
            return out
        return np.array([self.pow(x, e) for x in range(q)], dtype=np.int32)

    def trace_all(self):
        """Vector of absolute traces over all ranks."""
        if self._trace is not None:
            return self._trace
        return np.array([self.trace_abs(x) for x in range(self.q)], dtype=np.int32)

    # -- identity / serialization ---------------------------------------------

    def to_json_dict(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    @classmethod
    def from_json_dict(cls, blob: dict) -> "FieldSpec":
        return build_field(int(blob["p"]), int(blob["n"]),
                           [int(c) for c in blob["modulus"]])

    def __eq__(self, other):
        return (isinstance(other, FieldSpec)
                and (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus))

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def __repr__(self):
        return f"FieldSpec(p={self.p}, n={self.n}, modulus={list(self.modulus)})"


@functools.lru_cache(maxsize=None)
def _build_cached(p, n, modulus, log_table_bound, pair_table_bound):
    return FieldSpec(p, n, None if modulus is None else list(modulus),
                     log_table_bound, pair_table_bound)


def build_field(p: int, n: int, modulus=None,
                log_table_bound: int = LOG_TABLE_BOUND,
                pair_table_bound: int = PAIR_TABLE_BOUND) -> FieldSpec:
    """Validated field model; omit the modulus to get the canonical one.

    The default modulus is the lexicographically smallest primitive
    polynomial (coefficient vectors ordered as base-p integers, constant
    term least significant), so repeated builds agree across runs.
    Results are cached; treat the returned FieldSpec as read-only.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise NonPrimeCharacteristic(f"p = {p} is not prime")
    key = None if modulus is None else tuple(int(c) for c in modulus)
    return _build_cached(p, n, key, log_table_bound, pair_table_bound)
