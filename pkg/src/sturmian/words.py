"""Finite and infinite binary words.

Mechanical and rotation words are generated from exact slope/intercept
parameters; standard and characteristic words come from a directive
sequence.  Also here: factor sets and stabilized factor counts, the
balance test with counterexample witness, block partitions of
characteristic words, and a power-freeness check.

A word is stored one symbol per byte (values 0 and 1) and can be
rendered over {0,1} or {a,b} with the fixed letter coding 0 <-> a,
1 <-> b.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapExceededError
from .exactnum import ContinuedFraction, ExactReal, MixedRadicalError, compare

__all__ = [
    "BinaryWord",
    "DirectiveSequence",
    "MechanicalParams",
    "mechanical_word",
    "rotation_word",
    "standard_words",
    "characteristic_prefix",
    "factor_set",
    "characteristic_factor_count",
    "is_balanced",
    "balance_witness",
    "n_partition",
    "has_kth_power",
    "DEFAULT_STABILIZE_CAP",
]

DEFAULT_STABILIZE_CAP = 1 << 20

_FROM_CHAR = {"0": 0, "1": 1, "a": 0, "b": 1}
_ALPHABETS = {"01": "01", "ab": "ab"}


def _parse_symbols(text: str) -> bytes:
    try:
        return bytes(_FROM_CHAR[ch] for ch in text)
    except KeyError as exc:
        raise ValueError(f"bad word symbol {exc.args[0]!r}") from None


class BinaryWord:
    """Immutable finite word over a two-letter alphabet."""

    __slots__ = ("_bits",)

    def __init__(self, symbols=()):
        if isinstance(symbols, BinaryWord):
            self._bits = symbols._bits
        elif isinstance(symbols, str):
            self._bits = _parse_symbols(symbols)
        else:
            raw = bytes(symbols)
            if raw.translate(None, b"\x00\x01"):
                raise ValueError("symbols must be 0 or 1")
            self._bits = raw

    @classmethod
    def _from_raw(cls, raw: bytes) -> BinaryWord:
        w = object.__new__(cls)
        w._bits = raw
        return w

    @classmethod
    def from_string(cls, text: str) -> BinaryWord:
        return cls(text)

    @property
    def raw(self) -> bytes:
        """The symbols as a bytes object of 0/1 values."""
        return self._bits

    def __len__(self) -> int:
        return len(self._bits)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return BinaryWord._from_raw(self._bits[index])
        return self._bits[index]

    def __iter__(self):
        return iter(self._bits)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryWord):
            return NotImplemented
        return self._bits == other._bits

    def __hash__(self):
        return hash(self._bits)

    def __add__(self, other: BinaryWord) -> BinaryWord:
        if not isinstance(other, BinaryWord):
            return NotImplemented
        return BinaryWord._from_raw(self._bits + other._bits)

    def __mul__(self, times: int) -> BinaryWord:
        if not isinstance(times, int):
            return NotImplemented
        return BinaryWord._from_raw(self._bits * times)

    __rmul__ = __mul__

    def reverse(self) -> BinaryWord:
        return BinaryWord._from_raw(self._bits[::-1])

    def count(self, symbol: int) -> int:
        return self._bits.count(symbol)

    def startswith(self, prefix: BinaryWord) -> bool:
        return self._bits.startswith(prefix._bits)

    def find(self, sub: BinaryWord, start: int = 0) -> int:
        return self._bits.find(sub._bits, start)

    def occurrences(self, sub: BinaryWord):
        """Yield the start positions of all occurrences of sub (0-based)."""
        pos = self._bits.find(sub._bits)
        while pos >= 0:
            yield pos
            pos = self._bits.find(sub._bits, pos + 1)

    def to_string(self, alphabet: str = "01") -> str:
        if alphabet not in _ALPHABETS:
            raise ValueError("alphabet must be '01' or 'ab'")
        offset = 48 if alphabet == "01" else 97
        return bytes(v + offset for v in self._bits).decode("ascii")

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"BinaryWord({self.to_string()!r})"


@dataclass(frozen=True)
class DirectiveSequence:
    """Digit sequence d_0, d_1, ... driving the standard-word recursion.

    The explicit digits may be followed by a periodic tail that repeats
    forever.  d_0 may be zero; every later digit must be positive.
    """

    explicit: tuple[int, ...]
    periodic: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "explicit", tuple(int(v) for v in self.explicit))
        object.__setattr__(self, "periodic", tuple(int(v) for v in self.periodic))
        if not self.explicit and not self.periodic:
            raise ValueError("a directive sequence needs at least one digit")
        if self.explicit and self.explicit[0] < 0:
            raise ValueError("d_0 must be nonnegative")
        if any(v < 1 for v in self.explicit[1:]) or any(v < 1 for v in self.periodic):
            raise ValueError("digits after d_0 must be positive")

    @property
    def is_finite(self) -> bool:
        return not self.periodic

    def digit(self, i: int) -> int:
        if i < 0:
            raise IndexError("digit index must be nonnegative")
        if i < len(self.explicit):
            return self.explicit[i]
        if self.periodic:
            return self.periodic[(i - len(self.explicit)) % len(self.periodic)]
        raise IndexError(
            f"directive sequence has only {len(self.explicit)} digits"
        )

    def digits(self, count: int) -> list[int]:
        return [self.digit(i) for i in range(count)]

    def slope(self) -> ExactReal:
        """The slope of the characteristic word, as a continued fraction
        value [0; 1+d_0, d_1, d_2, ...]."""
        if self.periodic:
            if self.explicit:
                head = (0, 1 + self.explicit[0], *self.explicit[1:])
                tail = self.periodic
            else:
                head = (0, 1 + self.periodic[0])
                tail = self.periodic[1:] + self.periodic[:1]
            return ContinuedFraction(head, tail).value()
        quots = [0, 1 + self.explicit[0], *self.explicit[1:]]
        while len(quots) > 1 and quots[-1] == 1:
            quots.pop()
            quots[-1] += 1
        return ContinuedFraction(tuple(quots)).value()

    @classmethod
    def parse(cls, text: str) -> DirectiveSequence:
        s = text.strip().replace(" ", "")
        if s == "fib":
            return cls((1,), (1,))
        head, tail = s, ""
        if s.endswith(")"):
            i = s.find("(")
            if i < 0:
                raise ValueError(f"bad directive sequence string: {text!r}")
            head, tail = s[:i], s[i + 1 : -1]
            if head:
                if not head.endswith(","):
                    raise ValueError(f"bad directive sequence string: {text!r}")
                head = head[:-1]
        try:
            explicit = tuple(int(v) for v in head.split(",")) if head else ()
            periodic = tuple(int(v) for v in tail.split(",")) if tail else ()
        except ValueError:
            raise ValueError(f"bad directive sequence string: {text!r}") from None
        return cls(explicit, periodic)

    def __str__(self) -> str:
        parts = [str(v) for v in self.explicit]
        if self.periodic:
            parts.append("(" + ",".join(str(v) for v in self.periodic) + ")")
        return ",".join(parts)


def _require_unit(value: ExactReal, name: str, strict_low: bool) -> None:
    low_ok = compare(value, 0) > 0 if strict_low else compare(value, 0) >= 0
    if not (low_ok and compare(value, 1) < 0):
        bracket = "(0,1)" if strict_low else "[0,1)"
        raise ValueError(f"{name} must lie in {bracket}, got {value}")


@dataclass(frozen=True)
class MechanicalParams:
    """Slope, intercept, and flavor (lower or upper) of a mechanical word."""

    sigma: ExactReal
    rho: ExactReal
    flavor: str = "lower"

    def __post_init__(self):
        if self.flavor not in ("lower", "upper"):
            raise ValueError("flavor must be 'lower' or 'upper'")
        _require_unit(self.sigma, "sigma", strict_low=True)
        _require_unit(self.rho, "rho", strict_low=False)


def _sum_floor(x: ExactReal, y: ExactReal) -> int:
    """floor(x + y), allowing x and y to live in different quadratic fields."""
    try:
        return (x + y).floor()
    except MixedRadicalError:
        pass
    m = x.floor() + y.floor()
    # x + y is in [m, m+2); one exact comparison settles which unit interval.
    if compare(x, ExactReal(m + 1) - y) >= 0:
        m += 1
    return m


def _cmp_sum3(x: ExactReal, y: ExactReal, z: ExactReal, bound: int) -> int:
    """Sign of x + y + z - bound; works when the values span two fields."""
    for u, v, w in ((x, y, z), (x, z, y), (y, z, x)):
        try:
            s = u + v
        except MixedRadicalError:
            continue
        return compare(s, ExactReal(bound) - w)
    raise MixedRadicalError("three distinct radicals in one comparison")


def mechanical_word(params: MechanicalParams, n: int) -> BinaryWord:
    """First n symbols of the mechanical word, indexed from 0.

    The lower flavor takes differences of floors of k*sigma + rho; the
    upper flavor takes differences of ceilings.
    """
    if n < 0:
        raise ValueError("length must be nonnegative")
    sigma, rho = params.sigma, params.rho
    out = bytearray()
    if params.flavor == "lower":
        prev = _sum_floor(ExactReal(0), rho)
        for k in range(1, n + 1):
            cur = _sum_floor(sigma * k, rho)
            out.append(cur - prev)
            prev = cur
    else:
        # ceil(t) = -floor(-t)
        prev = -_sum_floor(ExactReal(0), -rho)
        for k in range(1, n + 1):
            cur = -_sum_floor(sigma * (-k), -rho)
            out.append(cur - prev)
            prev = cur
    return BinaryWord._from_raw(bytes(out))


def rotation_word(alpha: ExactReal, rho: ExactReal, sigma: ExactReal, n: int) -> BinaryWord:
    """Word r of length n with r[q] = 0 iff {q*alpha + rho} <= 1 - sigma.

    The boundary case {q*alpha + rho} = 1 - sigma maps to symbol 0.
    alpha, rho, sigma may live in up to two distinct quadratic fields.
    """
    if n < 0:
        raise ValueError("length must be nonnegative")
    _require_unit(alpha, "alpha", strict_low=False)
    _require_unit(rho, "rho", strict_low=False)
    _require_unit(sigma, "sigma", strict_low=True)
    out = bytearray()
    for q in range(n):
        x = alpha * q
        m = _sum_floor(x, rho)
        # {x + rho} <= 1 - sigma  <=>  x + rho + sigma <= m + 1
        out.append(0 if _cmp_sum3(x, rho, sigma, m + 1) <= 0 else 1)
    return BinaryWord._from_raw(bytes(out))


_S_MINUS1 = b"\x01"
_S_ZERO = b"\x00"


def standard_words(d: DirectiveSequence, n: int) -> list[BinaryWord]:
    """The standard words s_{-1}, s_0, ..., s_n as a list of n+2 words.

    s_{-1} = b, s_0 = a, and s_{i+1} = s_i^{d_i} s_{i-1}.
    """
    if n < -1:
        raise ValueError("index must be at least -1")
    words = [_S_MINUS1, _S_ZERO]
    for i in range(n):
        words.append(words[-1] * d.digit(i) + words[-2])
    return [BinaryWord._from_raw(w) for w in words[: n + 2]]


def _characteristic_raw(d: DirectiveSequence, length: int) -> bytes:
    if length == 0:
        return b""
    s_prev, s_cur = _S_MINUS1, _S_ZERO
    i = 0
    while len(s_cur) < length or i < 1:
        try:
            dn = d.digit(i)
        except IndexError:
            raise ValueError(
                f"directive sequence too short for a prefix of length {length}"
            ) from None
        # Build s_{i+1} = s_i^{d_i} s_{i-1}, stopping early once the
        # partial concatenation (a prefix of the limit word) is long
        # enough.
        chunks = []
        size = 0
        for _ in range(dn):
            chunks.append(s_cur)
            size += len(s_cur)
            if size >= length:
                break
        else:
            chunks.append(s_prev)
        s_prev, s_cur = s_cur, b"".join(chunks)
        i += 1
    return s_cur[:length]


def characteristic_prefix(d: DirectiveSequence, length: int) -> BinaryWord:
    """Prefix of the characteristic word of d (the limit of the s_n)."""
    if length < 0:
        raise ValueError("length must be nonnegative")
    return BinaryWord._from_raw(_characteristic_raw(d, length))


def factor_set(w: BinaryWord, n: int) -> set[BinaryWord]:
    """All distinct length-n factors of w."""
    if n < 0:
        raise ValueError("factor length must be nonnegative")
    if n > len(w):
        raise ValueError(f"factor length {n} exceeds word length {len(w)}")
    raw = w.raw
    return {
        BinaryWord._from_raw(raw[i : i + n]) for i in range(len(w) - n + 1)
    }


def characteristic_factor_count(
    d: DirectiveSequence, n: int, cap: int = DEFAULT_STABILIZE_CAP
) -> int:
    """Number of distinct length-n factors of the characteristic word.

    Computed on a finite prefix whose length is doubled until the count
    stops changing; a cap bounds the search and overruns raise.
    """
    if n < 0:
        raise ValueError("factor length must be nonnegative")
    if n == 0:
        return 1
    length = max(64, 4 * n)
    prev = None
    while length <= cap:
        raw = _characteristic_raw(d, length)
        count = len({raw[i : i + n] for i in range(len(raw) - n + 1)})
        if count == prev:
            return count
        prev = count
        length *= 2
    raise CapExceededError(
        f"factor count did not stabilize within the {cap}-symbol cap"
    )


def is_balanced(w: BinaryWord) -> bool:
    """True iff, for every window length, the counts of symbol 1 over all
    windows of that length spread by at most 1."""
    raw = w.raw
    n = len(raw)
    prefix = [0] * (n + 1)
    acc = 0
    for i, v in enumerate(raw):
        acc += v
        prefix[i + 1] = acc
    for ell in range(2, n):
        lo = ell + 1
        hi = -1
        for i in range(n - ell + 1):
            v = prefix[i + ell] - prefix[i]
            if v < lo:
                lo = v
                if hi - lo > 1:
                    return False
            if v > hi:
                hi = v
                if hi - lo > 1:
                    return False
    return True


def balance_witness(w: BinaryWord):
    """None if w is balanced; otherwise (1, u, v): two equal-length
    factors u, v whose counts of symbol 1 differ by at least 2, the
    1-poorer factor first."""
    raw = w.raw
    n = len(raw)
    prefix = [0] * (n + 1)
    acc = 0
    for i, v in enumerate(raw):
        acc += v
        prefix[i + 1] = acc
    for ell in range(2, n):
        lo, lo_at = ell + 1, -1
        hi, hi_at = -1, -1
        for i in range(n - ell + 1):
            v = prefix[i + ell] - prefix[i]
            if v < lo:
                lo, lo_at = v, i
            if v > hi:
                hi, hi_at = v, i
        if hi - lo > 1:
            return (
                1,
                BinaryWord._from_raw(raw[lo_at : lo_at + ell]),
                BinaryWord._from_raw(raw[hi_at : hi_at + ell]),
            )
    return None


def _q_lengths(d: DirectiveSequence, n: int) -> list[int]:
    """[q_{-1}, q_0, ..., q_n] with q_{i+1} = d_i q_i + q_{i-1}."""
    qs = [1, 1]
    for i in range(n):
        qs.append(d.digit(i) * qs[-1] + qs[-2])
    return qs[: n + 2]


def n_partition(d: DirectiveSequence, m: int, length: int) -> list[int]:
    """Decompose the characteristic prefix into blocks s_m and s_{m-1}.

    Returns the block levels in order (each entry is m or m-1); the
    blocks' concatenation is the longest full-block prefix of length at
    most `length`.
    """
    if m < 0:
        raise ValueError("partition level must be nonnegative")
    if length < 0:
        raise ValueError("length must be nonnegative")
    qs = _q_lengths(d, m)
    len_prev, len_cur = qs[m], qs[m + 1]
    seq_prev, seq_cur = [m - 1], [m]
    i = m
    while len_cur < length or i < 1:
        dn = d.digit(i)
        seq_prev, seq_cur = seq_cur, seq_cur * dn + seq_prev
        len_prev, len_cur = len_cur, len_cur * dn + len_prev
        i += 1
    block_len = {m: qs[m + 1], m - 1: qs[m]}
    out = []
    total = 0
    for tag in seq_cur:
        b = block_len[tag]
        if total + b > length:
            break
        out.append(tag)
        total += b
        if total == length:
            break
    return out


def has_kth_power(w: BinaryWord, k: int) -> bool:
    """True iff w contains a factor u^k with u nonempty."""
    if k < 1:
        raise ValueError("power must be positive")
    if k == 1:
        return len(w) > 0
    n = len(w)
    if n < k:
        return False
    # x carries a sentinel bit above the n symbol bits, so leading zero
    # symbols survive the int conversion.
    x = int("1" + w.to_string("01"), 2)
    for p in range(1, n // k + 1):
        y = ~(x ^ (x >> p)) & ((1 << (n - p)) - 1)
        run = (k - 1) * p
        # y has a run of `run` set bits iff some u^k with |u| = p occurs.
        got = 1
        z = y
        while got < run and z:
            step = min(got, run - got)
            z &= z >> step
            got += step
        if z:
            return True
    return False
