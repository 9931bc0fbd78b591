"""Numeration system attached to a directive sequence.

A nonnegative integer N is written as a digit vector (k_0, k_1, ...)
with N = sum of k_i * q_i, where q_i is the length of the i-th standard
word.  Digits are stored least significant first; renderings are most
significant first.  Three properties of a digit vector matter here:

  canonical  greedy digits (k_i <= d_i, and k_i = d_i forces
             k_{i-1} = 0, with k_0 <= d_0); unique per N up to leading
             zeros
  legal      0 <= k_i <= d_i only
  valid      the concatenation s_n^{k_n} ... s_0^{k_0} really is the
             length-N prefix of the characteristic word

Every canonical vector is legal and every legal vector is valid; the
converses fail, which is why validity gets an exhaustive enumerator.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapExceededError
from .words import (
    BinaryWord,
    DirectiveSequence,
    characteristic_prefix,
    standard_words,
)

__all__ = [
    "standard_lengths",
    "OstrowskiRep",
    "encode",
    "decode",
    "is_legal",
    "is_canonical",
    "is_valid",
    "digits_to_word",
    "enumerate_valid_reps",
    "enumerate_legal_reps",
    "rep_sort_key",
    "DEFAULT_ENUM_CAP",
]

DEFAULT_ENUM_CAP = 5000


def standard_lengths(d: DirectiveSequence, n: int) -> list[int]:
    """[q_{-1}, q_0, ..., q_n] with q_{-1} = q_0 = 1 and
    q_{i+1} = d_i q_i + q_{i-1}."""
    if n < -1:
        raise ValueError("index must be at least -1")
    qs = [1, 1]
    for i in range(n):
        qs.append(d.digit(i) * qs[-1] + qs[-2])
    return qs[: n + 2]


@dataclass(frozen=True)
class OstrowskiRep:
    """A digit vector over a directive sequence, least significant first.

    Trailing zero digits (leading zeros in the rendered form) are
    stripped, so representations that differ only by leading zeros
    compare equal.
    """

    d: DirectiveSequence
    digits: tuple[int, ...]

    def __post_init__(self):
        digs = tuple(int(k) for k in self.digits)
        if any(k < 0 for k in digs):
            raise ValueError("digits must be nonnegative")
        while digs and digs[-1] == 0:
            digs = digs[:-1]
        object.__setattr__(self, "digits", digs)

    def digit(self, i: int) -> int:
        if i < 0:
            raise IndexError("digit index must be nonnegative")
        return self.digits[i] if i < len(self.digits) else 0

    @property
    def top(self) -> int:
        """Index of the most significant stored digit (-1 for zero)."""
        return len(self.digits) - 1

    def render(self) -> str:
        if not self.digits:
            return "0"
        parts = [str(k) for k in reversed(self.digits)]
        if any(k >= 10 for k in self.digits):
            return ".".join(parts)
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()

    @classmethod
    def parse(cls, text: str, d: DirectiveSequence) -> OstrowskiRep:
        s = text.strip()
        parts = s.split(".") if "." in s else list(s)
        if not parts or not all(p.isdigit() for p in parts):
            raise ValueError(f"bad digit string: {text!r}")
        return cls(d, tuple(int(p) for p in reversed(parts)))


def rep_sort_key(rep: OstrowskiRep):
    """Deterministic ordering: by top index, then lexicographically from
    the most significant digit down."""
    return (len(rep.digits), tuple(reversed(rep.digits)))


def encode(N: int, d: DirectiveSequence) -> OstrowskiRep:
    """The canonical (greedy, most significant first) digit vector of N.

    Greedy extraction keeps every digit within its bound and zeroes the
    digit below any maxed-out one, so the result is canonical.
    """
    if N < 0:
        raise ValueError("only nonnegative integers are representable")
    if N == 0:
        return OstrowskiRep(d, ())
    qs = [1, 1]
    i = 0
    while True:
        try:
            nxt = d.digit(i) * qs[-1] + qs[-2]
        except IndexError:
            raise ValueError(
                f"finite directive sequence cannot represent {N} "
                f"(its digit range stops below that value)"
            ) from None
        if nxt > N:
            break
        qs.append(nxt)
        i += 1
    digits_msb = []
    rem = N
    for j in range(len(qs) - 2, -1, -1):
        k, rem = divmod(rem, qs[j + 1])
        digits_msb.append(k)
    return OstrowskiRep(d, tuple(reversed(digits_msb)))


def decode(rep: OstrowskiRep) -> int:
    """sum of k_i * q_i over the stored digits."""
    if not rep.digits:
        return 0
    qs = standard_lengths(rep.d, len(rep.digits) - 1)
    return sum(k * qs[i + 1] for i, k in enumerate(rep.digits))


def is_legal(rep: OstrowskiRep) -> bool:
    """True iff every digit satisfies 0 <= k_i <= d_i."""
    for i, k in enumerate(rep.digits):
        try:
            if k > rep.d.digit(i):
                return False
        except IndexError:
            return False
    return True


def is_canonical(rep: OstrowskiRep) -> bool:
    """True iff legal and no digit below a maxed-out digit is nonzero."""
    if not is_legal(rep):
        return False
    digs = rep.digits
    for i in range(1, len(digs)):
        if digs[i] == rep.d.digit(i) and digs[i - 1] != 0:
            return False
    return True


def digits_to_word(rep: OstrowskiRep) -> BinaryWord:
    """The concatenation s_n^{k_n} ... s_0^{k_0}, whatever its validity."""
    if not rep.digits:
        return BinaryWord()
    words = standard_words(rep.d, len(rep.digits) - 1)
    parts = []
    for i in range(len(rep.digits) - 1, -1, -1):
        k = rep.digits[i]
        if k:
            parts.append(words[i + 1].raw * k)
    return BinaryWord._from_raw(b"".join(parts))


def is_valid(rep: OstrowskiRep) -> bool:
    """True iff the digit-induced concatenation equals the characteristic
    prefix of length decode(rep)."""
    w = digits_to_word(rep)
    return w.raw == characteristic_prefix(rep.d, len(w)).raw


def enumerate_valid_reps(
    N: int, d: DirectiveSequence, cap: int = DEFAULT_ENUM_CAP
) -> set[OstrowskiRep]:
    """All valid digit vectors of N.

    Digits are chosen most significant first; each copy of s_i is
    matched against the characteristic prefix as it is placed, and the
    first mismatching copy prunes every larger digit choice at that
    position (copies are consecutive, so they fail together).
    """
    if N < 0:
        raise ValueError("only nonnegative integers are representable")
    if N > cap:
        raise CapExceededError(
            f"valid-representation enumeration is capped at {cap}, got {N}"
        )
    if N == 0:
        return {OstrowskiRep(d, ())}
    prefix = characteristic_prefix(d, N).raw
    qs = [1, 1]
    i = 0
    while True:
        try:
            nxt = d.digit(i) * qs[-1] + qs[-2]
        except IndexError:
            break
        if nxt > N:
            break
        qs.append(nxt)
        i += 1
    top = len(qs) - 2
    raws = [w.raw for w in standard_words(d, top)]
    out: set[OstrowskiRep] = set()

    def descend(idx: int, pos: int, rem: int, acc: list[int]) -> None:
        if idx < 0:
            if rem == 0:
                out.add(OstrowskiRep(d, tuple(reversed(acc))))
            return
        q = qs[idx + 1]
        s = raws[idx + 1]
        acc.append(0)
        descend(idx - 1, pos, rem, acc)
        p = pos
        for k in range(1, rem // q + 1):
            if prefix[p : p + q] != s:
                break
            p += q
            acc[-1] = k
            descend(idx - 1, p, rem - k * q, acc)
        acc.pop()

    descend(top, 0, N, [])
    return out


def enumerate_legal_reps(
    N: int, d: DirectiveSequence, cap: int = DEFAULT_ENUM_CAP
) -> set[OstrowskiRep]:
    """All legal digit vectors summing to N (validity not required)."""
    if N < 0:
        raise ValueError("only nonnegative integers are representable")
    if N > cap:
        raise CapExceededError(
            f"legal-representation enumeration is capped at {cap}, got {N}"
        )
    qs = [1, 1]
    i = 0
    top = -1
    while True:
        try:
            dn = d.digit(i)
        except IndexError:
            top = i - 1
            break
        nxt = dn * qs[-1] + qs[-2]
        if nxt > N:
            top = i
            break
        qs.append(nxt)
        i += 1
    # Largest sum reachable using digits 0..idx, for pruning.
    reach = [0] * (top + 1)
    run = 0
    for j in range(top + 1):
        run += d.digit(j) * qs[j + 1]
        reach[j] = run
    out: set[OstrowskiRep] = set()

    def descend(idx: int, rem: int, acc: list[int]) -> None:
        if idx < 0:
            if rem == 0:
                out.add(OstrowskiRep(d, tuple(reversed(acc))))
            return
        if rem > reach[idx]:
            return
        q = qs[idx + 1]
        for k in range(min(rem // q, d.digit(idx)) + 1):
            acc.append(k)
            descend(idx - 1, rem - k * q, acc)
            acc.pop()

    if top >= 0 or N == 0:
        descend(top, N, [])
    return out
