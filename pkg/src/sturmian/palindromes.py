"""Palindromic structure of characteristic words.

Covers palindromic factor counts, richness, central words, maximal
palindromic extensions, the occurrence-witness verifier (every
palindromic occurrence splits into a legal digit vector of its start
and a mirrored valid vector of its end), digit distances and their
gaps, palindromic length via an eertree, and the hard-prefix
construction that forces the palindromic length up.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .errors import CapExceededError, TheoremViolationError
from .ostrowski import (
    DEFAULT_ENUM_CAP,
    OstrowskiRep,
    decode,
    encode,
    enumerate_legal_reps,
    enumerate_valid_reps,
    is_legal,
    is_valid,
    rep_sort_key,
    standard_lengths,
)
from .words import (
    DEFAULT_STABILIZE_CAP,
    BinaryWord,
    DirectiveSequence,
    characteristic_prefix,
    standard_words,
)

__all__ = [
    "is_palindrome",
    "PalindromicTree",
    "palindrome_factor_count",
    "distinct_palindromic_factors",
    "central_word",
    "PalindromeOccurrence",
    "maximal_palindromic_extension",
    "OccurrenceWitness",
    "occurrence_witness",
    "z_vector",
    "ZdGapWitness",
    "zd_max_gap",
    "pal_length",
    "pal_length_profile",
    "construct_hard_prefix",
    "palindromes_starting_at",
    "DEFAULT_PROFILE_CAP",
]

logger = logging.getLogger(__name__)

DEFAULT_PROFILE_CAP = 200_000


def is_palindrome(w: BinaryWord) -> bool:
    raw = w.raw
    return raw == raw[::-1]


class _PalNode:
    __slots__ = ("length", "link", "edges")

    def __init__(self, length: int, link):
        self.length = length
        self.link = link
        self.edges: dict[int, _PalNode] = {}


class PalindromicTree:
    """Eertree over a growing word of 0/1 symbols.

    One node per distinct nonempty palindromic factor, plus the two
    roots (lengths -1 and 0).  Suffix links point to the longest proper
    palindromic suffix.
    """

    def __init__(self, word: BinaryWord | None = None):
        self._word = bytearray()
        root_neg = _PalNode(-1, None)
        root_neg.link = root_neg
        root_zero = _PalNode(0, root_neg)
        self._root_zero = root_zero
        self._nodes = [root_neg, root_zero]
        self._last = root_zero
        if word is not None:
            self.extend(word)

    def _fall(self, node: _PalNode, pos: int) -> _PalNode:
        word = self._word
        while True:
            idx = pos - node.length - 1
            if idx >= 0 and word[idx] == word[pos]:
                return node
            node = node.link

    def add(self, symbol: int) -> bool:
        """Append one symbol; True iff a new palindrome appeared."""
        self._word.append(symbol)
        pos = len(self._word) - 1
        node = self._fall(self._last, pos)
        existing = node.edges.get(symbol)
        if existing is not None:
            self._last = existing
            return False
        fresh = _PalNode(node.length + 2, None)
        if fresh.length == 1:
            fresh.link = self._root_zero
        else:
            fresh.link = self._fall(node.link, pos).edges[symbol]
        node.edges[symbol] = fresh
        self._nodes.append(fresh)
        self._last = fresh
        return True

    def extend(self, word: BinaryWord) -> None:
        for symbol in word.raw:
            self.add(symbol)

    @property
    def distinct_count(self) -> int:
        """Number of distinct nonempty palindromic factors so far."""
        return len(self._nodes) - 2

    def suffix_palindrome_lengths(self) -> list[int]:
        """Lengths of all palindromic suffixes of the current word,
        longest first."""
        out = []
        node = self._last
        while node.length > 0:
            out.append(node.length)
            node = node.link
        return out


def palindrome_factor_count(
    d: DirectiveSequence, n: int, cap: int = DEFAULT_STABILIZE_CAP
) -> int:
    """h(n): distinct palindromic factors of length n of the
    characteristic word, computed on a stabilized prefix."""
    if n < 1:
        raise ValueError("factor length must be at least 1")
    length = max(64, 4 * n)
    prev = None
    while length <= cap:
        raw = characteristic_prefix(d, length).raw
        rev = raw[::-1]
        total = len(raw)
        found = set()
        for i in range(total - n + 1):
            if raw[i : i + n] == rev[total - i - n : total - i]:
                found.add(raw[i : i + n])
        if prev is not None and len(found) == prev:
            return prev
        prev = len(found)
        length *= 2
    raise CapExceededError(
        f"palindromic factor count did not stabilize within the {cap}-symbol cap"
    )


def distinct_palindromic_factors(u: BinaryWord) -> tuple[int, bool]:
    """(P(u), is_rich) where P counts distinct palindromic factors
    including the empty one, and rich means P(u) = |u| + 1."""
    tree = PalindromicTree(u)
    count = tree.distinct_count + 1
    return count, count == len(u) + 1


def central_word(d: DirectiveSequence, n: int, j: int = 0) -> BinaryWord:
    """c_{n,j} = s_n^j c_n, where c_n is s_n s_{n-1} with its last two
    letters removed.  Requires 0 <= j <= d_n."""
    if n < 0:
        raise ValueError("central word index must be nonnegative")
    try:
        bound = d.digit(n)
    except IndexError:
        raise ValueError(
            f"directive sequence has no digit at index {n}"
        ) from None
    if not 0 <= j <= bound:
        raise ValueError(f"repetition count must lie in [0, {bound}], got {j}")
    words = standard_words(d, n)
    s_n = words[n + 1].raw
    s_prev = words[n].raw
    return BinaryWord._from_raw(s_n * j + (s_n + s_prev)[:-2])


@dataclass(frozen=True)
class PalindromeOccurrence:
    """A factor occurrence (p1..p2] of the characteristic word of d,
    with 1-based content: the factor is symbols p1+1 through p2."""

    d: DirectiveSequence
    p1: int
    p2: int

    def __post_init__(self):
        if not 0 <= self.p1 <= self.p2:
            raise ValueError("positions must satisfy 0 <= p1 <= p2")

    def factor(self) -> BinaryWord:
        return characteristic_prefix(self.d, self.p2)[self.p1 : self.p2]

    def is_palindromic(self) -> bool:
        return is_palindrome(self.factor())


def maximal_palindromic_extension(
    occ: PalindromeOccurrence,
) -> PalindromeOccurrence:
    """Widen (p1..p2] one symbol on each side while the factor stays a
    palindrome and p1 stays nonnegative."""
    if not occ.is_palindromic():
        raise ValueError("occurrence is not palindromic")
    p1, p2 = occ.p1, occ.p2
    raw = characteristic_prefix(occ.d, p1 + p2).raw
    while p1 >= 1 and raw[p1 - 1] == raw[p2]:
        p1 -= 1
        p2 += 1
    return PalindromeOccurrence(occ.d, p1, p2)


def _central_reference(d: DirectiveSequence, length: int):
    """(m, j) with j >= 1 and |c_{m,j}| = length, or None.

    Per level m the lengths (j+1) q_m + q_{m-1} - 2 for 1 <= j <= d_m
    fill an arithmetic progression; successive levels are disjoint, so
    at most one (m, j) exists.
    """
    if length < 1:
        return None
    qs = [1, 1]
    m = 0
    while True:
        try:
            dm = d.digit(m)
        except IndexError:
            return None
        q_m, q_prev = qs[m + 1], qs[m]
        q_next = dm * q_m + q_prev
        lo = 2 * q_m + q_prev - 2
        hi = q_next + q_m - 2
        if length < lo:
            return None
        if length <= hi:
            j, rem = divmod(length + 2 - q_prev, q_m)
            j -= 1
            if rem == 0 and 1 <= j <= dm:
                return (m, j)
            return None
        qs.append(q_next)
        m += 1


@dataclass(frozen=True)
class OccurrenceWitness:
    """Digit-level witness for a palindromic occurrence (p1..p2]:
    a legal vector for p1 whose mirrored completion (complement digits
    below the pivot, pivot digit y_m, unchanged digits above) is a
    valid vector for p2."""

    p1: int
    p2: int
    rep_p1: OstrowskiRep
    m: int
    y_m: int
    rep_p2: OstrowskiRep
    fallback_used: bool

    def to_record(self) -> dict:
        return {
            "p1": self.p1,
            "p2": self.p2,
            "rep_p1": self.rep_p1.render(),
            "m": self.m,
            "y_m": self.y_m,
            "rep_p2": self.rep_p2.render(),
            "fallback_used": self.fallback_used,
        }


def _mirror_rep(
    x: OstrowskiRep, m: int, y_m: int, d: DirectiveSequence
) -> OstrowskiRep:
    """Digits d_i - x_i below the pivot, y_m at it, x_i above it."""
    size = max(len(x.digits), m + 1)
    digs = []
    for i in range(size):
        if i < m:
            digs.append(d.digit(i) - x.digit(i))
        elif i == m:
            digs.append(y_m)
        else:
            digs.append(x.digit(i))
    return OstrowskiRep(d, tuple(digs))


def _constructive_witness(occ: PalindromeOccurrence):
    """Witness via the block-splitting construction: locate the maximal
    extension as a central word c_{m,j}, round the occurrence start down
    to a whole number of s_m blocks inside it, and read the digits off.
    Returns None whenever any step fails; the caller falls back."""
    d = occ.d
    ext = maximal_palindromic_extension(occ)
    ref = _central_reference(d, ext.p2 - ext.p1)
    if ref is None:
        return None
    m, j = ref
    q_m = standard_lengths(d, m)[m + 1]
    offset = occ.p1 - ext.p1
    k = offset // q_m
    try:
        rep_r = encode(ext.p1 + k * q_m, d)
    except ValueError:
        return None
    if any(rep_r.digit(i) for i in range(min(m, len(rep_r.digits)))):
        return None
    rem = offset - k * q_m
    try:
        rep_rem = encode(rem, d)
    except ValueError:
        return None
    size = max(len(rep_r.digits), m)
    x = OstrowskiRep(
        d,
        tuple(
            rep_rem.digit(i) if i < m else rep_r.digit(i) for i in range(size)
        ),
    )
    if decode(x) != occ.p1 or not is_legal(x):
        return None
    y_m = x.digit(m) - 2 * k + j
    if y_m < 0:
        return None
    rep_p2 = _mirror_rep(x, m, y_m, d)
    if decode(rep_p2) != occ.p2 or not is_valid(rep_p2):
        return None
    return OccurrenceWitness(occ.p1, occ.p2, x, m, y_m, rep_p2, False)


def _fallback_witness(occ: PalindromeOccurrence, enum_cap: int):
    """Exhaustive net: every legal vector of p1 crossed with every
    pivot, keeping the first mirrored vector that decodes to p2 and is
    valid."""
    d = occ.d
    p1, p2 = occ.p1, occ.p2
    qs = [1, 1]
    pivots = []
    m = 0
    while True:
        if qs[m + 1] + qs[m] > p1 + p2 + 2:
            break
        try:
            dm = d.digit(m)
        except IndexError:
            break
        pivots.append(m)
        qs.append(dm * qs[m + 1] + qs[m])
        m += 1
    reps = sorted(enumerate_legal_reps(p1, d, cap=enum_cap), key=rep_sort_key)
    for x in reps:
        for m in pivots:
            high = sum(
                x.digit(i) * qs[i + 1] for i in range(m + 1, len(x.digits))
            )
            comp = sum((d.digit(i) - x.digit(i)) * qs[i + 1] for i in range(m))
            y, rem = divmod(p2 - high - comp, qs[m + 1])
            if rem != 0 or y < 0:
                continue
            rep_p2 = _mirror_rep(x, m, y, d)
            if decode(rep_p2) == p2 and is_valid(rep_p2):
                return OccurrenceWitness(p1, p2, x, m, y, rep_p2, True)
    return None


def occurrence_witness(
    occ: PalindromeOccurrence, enum_cap: int = DEFAULT_ENUM_CAP
) -> OccurrenceWitness:
    """Find a witness for a palindromic occurrence.

    Tries the constructive path first, then the exhaustive fallback
    (logged).  A true palindromic occurrence must yield a witness, so
    exhaustion raises TheoremViolationError.
    """
    if occ.p1 == occ.p2:
        raise ValueError("empty occurrences carry no witness")
    if not occ.is_palindromic():
        raise ValueError("occurrence is not palindromic")
    found = _constructive_witness(occ)
    if found is not None:
        return found
    found = _fallback_witness(occ, enum_cap)
    if found is not None:
        logger.info(
            "fallback search used for occurrence (%d..%d]", occ.p1, occ.p2
        )
        return found
    raise TheoremViolationError(
        f"no witness exists for palindromic occurrence ({occ.p1}..{occ.p2}]"
    )


def z_vector(rep: OstrowskiRep) -> tuple[int, ...]:
    """Per-digit distance to the nearer of 0 and d_i:
    z_i = min(x_i, |d_i - x_i|)."""
    out = []
    for i, k in enumerate(rep.digits):
        try:
            di = rep.d.digit(i)
        except IndexError:
            raise ValueError(
                f"digit {i} has no directive bound to measure against"
            ) from None
        out.append(min(k, abs(di - k)))
    return tuple(out)


@dataclass(frozen=True)
class ZdGapWitness:
    """Two valid vectors of the same integer whose z-distances differ
    by the reported maximum at the given digit."""

    n: int
    digit_index: int
    rep_a: OstrowskiRep
    rep_b: OstrowskiRep

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "digit_index": self.digit_index,
            "rep_a": self.rep_a.render(),
            "rep_b": self.rep_b.render(),
        }


def zd_max_gap(
    d: DirectiveSequence, nmax: int, cap: int = DEFAULT_ENUM_CAP
) -> tuple[int, ZdGapWitness | None]:
    """Maximum over N <= nmax, over pairs of valid vectors of N and
    digit positions, of the z-distance gap |z_i(r1) - z_i(r2)|."""
    if nmax < 0:
        raise ValueError("the search bound must be nonnegative")
    if nmax > cap:
        raise CapExceededError(
            f"z-distance search is capped at {cap}, got {nmax}"
        )
    best = 0
    witness = None
    for n in range(nmax + 1):
        reps = sorted(enumerate_valid_reps(n, d, cap=cap), key=rep_sort_key)
        zs = [z_vector(r) for r in reps]
        for a in range(len(reps)):
            za = zs[a]
            for b in range(a + 1, len(reps)):
                zb = zs[b]
                width = max(len(za), len(zb))
                for i in range(width):
                    va = za[i] if i < len(za) else 0
                    vb = zb[i] if i < len(zb) else 0
                    gap = abs(va - vb)
                    if gap > best:
                        best = gap
                        witness = ZdGapWitness(n, i, reps[a], reps[b])
    return best, witness


def pal_length(u: BinaryWord) -> int:
    """Minimal number of palindromes concatenating to u (0 for the
    empty word by convention)."""
    n = len(u)
    if n == 0:
        return 0
    tree = PalindromicTree()
    dp = [0] * (n + 1)
    raw = u.raw
    for i in range(1, n + 1):
        tree.add(raw[i - 1])
        node = tree._last
        short = None
        while node.length > 0:
            prev = dp[i - node.length]
            if short is None or prev < short:
                short = prev
            node = node.link
        dp[i] = short + 1
    return dp[n]


def pal_length_profile(
    d: DirectiveSequence, L: int, cap: int = DEFAULT_PROFILE_CAP
) -> list[tuple[int, int]]:
    """Record-breaking prefix palindromic lengths: the positions where
    pal_length(prefix) first attains 1, 2, 3, ..."""
    if L < 1:
        raise ValueError("profile length must be at least 1")
    if L > cap:
        raise CapExceededError(f"profile length is capped at {cap}, got {L}")
    raw = characteristic_prefix(d, L).raw
    tree = PalindromicTree()
    dp = [0] * (L + 1)
    records = []
    best = 0
    for i in range(1, L + 1):
        tree.add(raw[i - 1])
        node = tree._last
        short = None
        while node.length > 0:
            prev = dp[i - node.length]
            if short is None or prev < short:
                short = prev
            node = node.link
        dp[i] = short + 1
        if dp[i] > best:
            best = dp[i]
            records.append((i, best))
    return records


def construct_hard_prefix(d: DirectiveSequence, Q: int) -> int:
    """An N whose length-N characteristic prefix needs more than Q
    palindromes: put digit 3Q+1 at Q+1 positions whose directive digit
    is at least 6Q+2 (the vector is legal, hence valid)."""
    if Q < 0:
        raise ValueError("the palindrome budget must be nonnegative")
    if Q == 0:
        return 1
    threshold = 6 * Q + 2
    digit_value = 3 * Q + 1
    need = Q + 1
    limit = len(d.explicit) + len(d.periodic) * need
    qs = [1, 1]
    total = 0
    found = 0
    for m in range(limit):
        try:
            dm = d.digit(m)
        except IndexError:
            break
        if dm >= threshold:
            total += qs[m + 1]
            found += 1
            if found == need:
                return digit_value * total
        qs.append(dm * qs[m + 1] + qs[m])
    raise ValueError(
        f"needs {need} directive digits of size at least {threshold}, "
        f"found {found}"
    )


def palindromes_starting_at(w: BinaryWord, i: int, maxlen: int) -> list[int]:
    """Ascending lengths (1-based, nonempty) of palindromes beginning at
    0-based position i, up to length maxlen."""
    n = len(w)
    if not 0 <= i < n:
        raise ValueError(f"position must lie in [0, {n}), got {i}")
    raw = w.raw
    rev = raw[::-1]
    out = []
    for ell in range(1, min(maxlen, n - i) + 1):
        if raw[i : i + ell] == rev[n - i - ell : n - i]:
            out.append(ell)
    return out
