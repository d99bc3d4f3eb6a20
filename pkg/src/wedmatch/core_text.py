"""Characters, scaled costs, weight tables and basic string services.

Costs are exact integers: a decimal weight ``c`` is stored as ``c * SCALE``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Union

import numpy as np
from pydivsufsort import divsufsort

from . import _kernels as K
from .errors import EmptyInput, NormalizationError, ParseError, PreconditionError

SCALE = 10**6
# 2 * INF still fits in a signed 64-bit word, so one unchecked addition is safe
INF = K.INF
EPS = "EPS"

_DECIMAL = re.compile(r"^([0-9]+)(?:\.([0-9]+))?$")


def sat_add(a: int, b: int) -> int:
    if a >= INF or b >= INF:
        return INF
    s = a + b
    return INF if s >= INF else s


def parse_cost(text: str) -> int:
    """Parse a non-negative decimal with at most 6 fractional digits into micros."""
    m = _DECIMAL.match(text.strip())
    if m is None:
        raise ParseError(f"not a non-negative decimal: {text!r}")
    whole, frac = m.group(1), m.group(2) or ""
    if len(frac) > 6:
        if frac[6:].strip("0"):
            raise ParseError(f"more than 6 fractional digits: {text!r}")
        frac = frac[:6]
    value = int(whole) * SCALE + int(frac.ljust(6, "0"))
    if value >= INF:
        raise ParseError(f"cost too large: {text!r}")
    return value


def format_cost(value: int) -> str:
    """Inverse of :func:`parse_cost` with trailing zeros trimmed."""
    if value >= INF:
        return "inf"
    q, r = divmod(int(value), SCALE)
    if r == 0:
        return str(q)
    return f"{q}.{r:06d}".rstrip("0")


# ---------------------------------------------------------------------------
# weight tables


@dataclass(frozen=True)
class WeightTable:
    """Edit weights over an alphabet plus the empty symbol.

    ``matrix[x, y]`` is the cost of rewriting x into y, where code 0 is the
    empty symbol and character ``alphabet[c - 1]`` has code c.
    """

    alphabet: tuple
    overrides: dict = field(default_factory=dict, repr=False)
    default_mismatch: int = SCALE
    matrix: np.ndarray = field(init=False, repr=False, compare=False)
    _codes: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        codes = {ch: i + 1 for i, ch in enumerate(self.alphabet)}
        sigma = len(self.alphabet)
        mat = np.full((sigma + 1, sigma + 1), self.default_mismatch, dtype=np.int64)
        np.fill_diagonal(mat, 0)
        for (a, b), cost in self.overrides.items():
            mat[codes.get(a, 0) if a else 0, codes.get(b, 0) if b else 0] = cost
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "_codes", codes)

    @property
    def _lookup(self):
        # sorted code points and their codes, for vectorised encoding
        lk = self.__dict__.get("_lk")
        if lk is None:
            pts = np.array([ord(ch) for ch in self.alphabet], dtype=np.uint32)
            order = np.argsort(pts)
            lk = (pts[order], np.arange(1, len(pts) + 1, dtype=np.int64)[order])
            object.__setattr__(self, "_lk", lk)
        return lk

    @property
    def sigma(self) -> int:
        return len(self.alphabet)

    @property
    def cap_W(self) -> int:
        return int(self.matrix.max())

    @property
    def back(self) -> int:
        """Weight of a back edge in the augmented alignment graph (W + 1)."""
        return self.cap_W + SCALE

    def code(self, ch: str) -> int:
        if not ch or ch == EPS:
            return 0
        try:
            return self._codes[ch]
        except KeyError:
            raise KeyError(f"character {ch!r} not in alphabet") from None

    def w(self, a: str, b: str) -> int:
        """Cost of a -> b; pass '' for the empty symbol."""
        return int(self.matrix[self.code(a), self.code(b)])

    def encode(self, s) -> np.ndarray:
        s = str(s)
        if not s:
            return np.zeros(0, np.int64)
        pts = np.frombuffer(s.encode("utf-32-le"), dtype=np.uint32)
        keys, lut = self._lookup
        if not len(keys):
            raise KeyError(f"character {s[0]!r} not in alphabet")
        pos = np.searchsorted(keys, pts)
        pos[pos == len(keys)] = 0
        out = lut[pos]
        bad = keys[pos] != pts
        if bad.any():
            raise KeyError(f"character {s[int(np.argmax(bad))]!r} not in alphabet")
        return out

    def covering(self, *texts: str) -> "WeightTable":
        """Same table, extended with default costs for characters it lacks."""
        extra = []
        seen = set(self.alphabet)
        for t in texts:
            for c in str(t):
                if c not in seen:
                    seen.add(c)
                    extra.append(c)
        if not extra:
            return self
        return WeightTable(self.alphabet + tuple(extra), dict(self.overrides), self.default_mismatch)


def unit_table(alphabet="") -> WeightTable:
    return WeightTable(tuple(dict.fromkeys(alphabet)))


def _parse_symbol(tok: str, lineno: int) -> str:
    if tok == EPS:
        return ""
    if len(tok) != 1:
        raise ParseError(f"line {lineno}: expected one character or EPS, got {tok!r}")
    return tok


def load_weight_table(text: str, alphabet="", default_mismatch: int = SCALE) -> WeightTable:
    """Parse a weight file (``SRC<TAB>DST<TAB>COST`` lines, ``#`` comments)."""
    overrides: dict = {}
    chars = list(dict.fromkeys(alphabet))
    known = set(chars)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 3 tab-separated fields")
        a = _parse_symbol(parts[0], lineno)
        b = _parse_symbol(parts[1], lineno)
        try:
            cost = parse_cost(parts[2])
        except ParseError as e:
            raise ParseError(f"line {lineno}: {e}") from None
        if a == b and cost != 0:
            raise NormalizationError(f"line {lineno}: w({parts[0]},{parts[1]}) must be 0")
        if a != b and cost < SCALE:
            raise NormalizationError(f"line {lineno}: w({parts[0]},{parts[1]}) below 1")
        for c in (a, b):
            if c and c not in known:
                known.add(c)
                chars.append(c)
        overrides[(a, b)] = cost  # last duplicate wins
    if default_mismatch < SCALE:
        raise NormalizationError("default mismatch cost below 1")
    return WeightTable(tuple(chars), overrides, default_mismatch)


# ---------------------------------------------------------------------------
# fragments


@dataclass(frozen=True)
class TextFragment:
    base: str
    start: int = 0
    end: int = -1

    def __post_init__(self):
        end = len(self.base) if self.end < 0 else self.end
        if not 0 <= self.start <= end <= len(self.base):
            raise IndexError(f"bad fragment [{self.start}, {end}) of length {len(self.base)}")
        object.__setattr__(self, "end", end)

    def __len__(self):
        return self.end - self.start

    def __str__(self):
        return self.base[self.start:self.end]

    def __getitem__(self, i: int) -> str:
        if not 0 <= i < len(self):
            raise IndexError(i)
        return self.base[self.start + i]

    def extract(self, i: int, j: int) -> "TextFragment":
        if not 0 <= i <= j <= len(self):
            raise IndexError(f"[{i}, {j}) outside fragment of length {len(self)}")
        return TextFragment(self.base, self.start + i, self.start + j)

    def reversed(self) -> "TextFragment":
        n = len(self.base)
        return TextFragment(self.base[::-1], n - self.end, n - self.start)


Textish = Union[str, TextFragment]


def as_fragment(x: Textish) -> TextFragment:
    return x if isinstance(x, TextFragment) else TextFragment(str(x))


# ---------------------------------------------------------------------------
# suffix array based LCE


def suffix_array(codes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Returns (sa, rank)."""
    n = len(codes)
    if n == 0:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    sa = divsufsort(np.ascontiguousarray(codes, dtype=np.int64)).astype(np.int64)
    rank = np.empty(n, np.int64)
    rank[sa] = np.arange(n)
    return sa, rank


class LceIndex:
    """O(1) longest-common-prefix queries between suffixes of one code string."""

    def __init__(self, codes: np.ndarray):
        codes = np.ascontiguousarray(codes, dtype=np.int64)
        self.n = len(codes)
        self.codes = codes
        self.sa, self.rank = suffix_array(codes)
        lcp = K.kasai(self.sa, self.rank, codes)
        self.table, self.logs = K.sparse_table(lcp)

    def lcp(self, i: int, j: int) -> int:
        return int(K.lce_query(self.rank, self.table, self.logs, self.n, i, j))


def _codes_of(s: str, offset: int) -> np.ndarray:
    return np.fromiter((ord(c) + offset for c in s), dtype=np.int64, count=len(s))


@lru_cache(maxsize=16)
def _pair_index(xbase: str, ybase: str) -> tuple[LceIndex, int]:
    if xbase is ybase or xbase == ybase:
        return LceIndex(_codes_of(xbase, 1)), 0
    codes = np.concatenate([_codes_of(xbase, 1), [0], _codes_of(ybase, 1)])
    return LceIndex(codes), len(xbase) + 1


def lce(X: Textish, i: int, Y: Textish, j: int) -> int:
    """Length of the longest common prefix of X[i..) and Y[j..)."""
    X, Y = as_fragment(X), as_fragment(Y)
    if not 0 <= i <= len(X) or not 0 <= j <= len(Y):
        raise IndexError(f"lce position out of range: {i}, {j}")
    cap = min(len(X) - i, len(Y) - j)
    if cap == 0:
        return 0
    idx, off = _pair_index(X.base, Y.base)
    return min(cap, idx.lcp(X.start + i, off + Y.start + j))


def lce_rev(X: Textish, i: int, Y: Textish, j: int) -> int:
    """Length of the longest common suffix of X[..i) and Y[..j)."""
    X, Y = as_fragment(X), as_fragment(Y)
    if not 0 <= i <= len(X) or not 0 <= j <= len(Y):
        raise IndexError(f"lce position out of range: {i}, {j}")
    return lce(X.reversed(), len(X) - i, Y.reversed(), len(Y) - j)


def period(S: Textish) -> int:
    s = str(S)
    n = len(s)
    if n == 0:
        raise EmptyInput("period of an empty string")
    fail = [0] * (n + 1)
    fail[0] = -1
    k = -1
    for i in range(n):
        while k >= 0 and s[k] != s[i]:
            k = fail[k]
        k += 1
        fail[i + 1] = k
    return n - fail[n]


def z_function(seq) -> list[int]:
    n = len(seq)
    z = [0] * n
    if n:
        z[0] = n
    left = right = 0
    for i in range(1, n):
        if i < right:
            z[i] = min(right - i, z[i - left])
        while i + z[i] < n and seq[z[i]] == seq[i + z[i]]:
            z[i] += 1
        if i + z[i] > right:
            left, right = i, i + z[i]
    return z


class Progression(NamedTuple):
    start: int
    step: int
    count: int

    def positions(self) -> list[int]:
        return [self.start + q * self.step for q in range(self.count)]


def ipm(P: Textish, T: Textish) -> Progression:
    """Exact occurrences of P in T (|T| <= 2|P|) as an arithmetic progression."""
    p, t = str(P), str(T)
    if not p:
        raise PreconditionError("pattern must be nonempty")
    if len(t) > 2 * len(p):
        raise PreconditionError("ipm needs |T| <= 2|P|")
    seq = list(p) + [None] + list(t)
    z = z_function(seq)
    off = len(p) + 1
    occ = [i - off for i in range(off, len(seq)) if z[i] >= len(p)]
    if not occ:
        return Progression(0, 0, 0)
    if len(occ) == 1:
        return Progression(occ[0], 0, 1)
    step = occ[1] - occ[0]
    if any(b - a != step for a, b in zip(occ, occ[1:])):
        raise AssertionError("occurrences do not form a progression")
    return Progression(occ[0], step, len(occ))
