"""Words, factor occurrences, counting-problem specs, the DP oracle and
canonical pattern pairs."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from math import comb

from .errors import UsageError

LETTERS = "abcdefghijklmnopqrstuvwxyz"
COIN = "HT"

Word = tuple  # tuple of ints in [0, m)


def parse_word(text: str, m: int) -> tuple[Word, bool]:
    """Decode ``text``; returns (word, used_coin_letters)."""
    if not text:
        raise UsageError("empty word")
    if m == 2 and set(text) <= set(COIN):
        return tuple(COIN.index(ch) for ch in text), True
    alphabet = LETTERS[:m]
    bad = [ch for ch in text if ch not in alphabet]
    if bad:
        raise UsageError(f"letter {bad[0]!r} is not among the first {m} letters {alphabet!r}")
    return tuple(alphabet.index(ch) for ch in text), False


def format_word(w: Word, letters: str) -> str:
    return "".join(letters[x] for x in w)


def count_occurrences(w: Word, p: Word) -> int:
    """Number of (possibly overlapping) occurrences of ``p`` in ``w``."""
    if not p:
        raise UsageError("pattern must be nonempty")
    k = len(p)
    w, p = tuple(w), tuple(p)
    return sum(1 for i in range(len(w) - k + 1) if w[i : i + k] == p)


@dataclass(frozen=True)
class InstanceSpec:
    """Count words of length n over m letters with sum_i weights[i] * #patterns[i] == target."""

    alphabet_size: int
    patterns: tuple
    weights: tuple
    target: int = 0
    coin_letters: bool = False

    def __post_init__(self):
        object.__setattr__(self, "patterns", tuple(tuple(p) for p in self.patterns))
        object.__setattr__(self, "weights", tuple(int(c) for c in self.weights))
        m = self.alphabet_size
        if m < 1:
            raise UsageError("alphabet size must be at least 1")
        if not self.patterns:
            raise UsageError("at least one distinguished word is required")
        if len(self.weights) != len(self.patterns):
            raise UsageError("one weight per pattern is required")
        if len(set(self.patterns)) != len(self.patterns):
            raise UsageError("distinguished words must be pairwise distinct")
        for p in self.patterns:
            if not p:
                raise UsageError("distinguished words must be nonempty")
            if any(not 0 <= x < m for x in p):
                raise UsageError(f"word {p} uses a letter outside the {m}-letter alphabet")
        if any(c == 0 for c in self.weights):
            raise UsageError("weights must be nonzero")
        if self.coin_letters and m != 2:
            raise UsageError("H/T letters are only available for m = 2")

    @classmethod
    def from_words(cls, m, words, weights, target=0):
        parsed = [parse_word(w, m) for w in words]
        coin = {c for _, c in parsed}
        if len(coin) > 1:
            raise UsageError("do not mix H/T letters with a/b letters")
        return cls(m, tuple(p for p, _ in parsed), tuple(weights), target, coin.pop())

    @classmethod
    def pair(cls, m, w1, w2, a1=1, a2=1, r=0):
        """a1 * #w1 - a2 * #w2 == r."""
        return cls.from_words(m, [w1, w2], [a1, -a2], r)

    @property
    def letters(self) -> str:
        return COIN if self.coin_letters else LETTERS[: self.alphabet_size]

    def words_text(self):
        return [format_word(p, self.letters) for p in self.patterns]

    def describe(self) -> str:
        terms = []
        for w, c in zip(self.words_text(), self.weights):
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            sign = "-" if c < 0 else "+"
            terms.append((sign, f"{mag}#{w}"))
        text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return f"{text} = {self.target}"

    def step_bounds(self):
        """Per-letter change of the weighted counter lies in [lo, hi]."""
        return -sum(max(0, -c) for c in self.weights), sum(max(0, c) for c in self.weights)

    def has_factor_containment(self) -> bool:
        for a, b in itertools.permutations(self.patterns, 2):
            if count_occurrences(b, a):
                return True
        return False

    def to_dict(self):
        return {
            "m": self.alphabet_size,
            "patterns": self.words_text(),
            "weights": list(self.weights),
            "r": self.target,
            "letters": self.letters,
        }

    @classmethod
    def from_dict(cls, d):
        return cls.from_words(d["m"], d["patterns"], d["weights"], d["r"])


class PatternAutomaton:
    """Aho-Corasick automaton with a complete transition table.

    ``emit[state][letter]`` is the vector of pattern occurrences completed by
    reading ``letter`` in ``state``.
    """

    def __init__(self, patterns, m):
        self.m = m
        self.patterns = [tuple(p) for p in patterns]
        goto = [{}]
        out = [[0] * len(self.patterns)]
        for idx, p in enumerate(self.patterns):
            s = 0
            for x in p:
                if x not in goto[s]:
                    goto.append({})
                    out.append([0] * len(self.patterns))
                    goto[s][x] = len(goto) - 1
                s = goto[s][x]
            out[s][idx] += 1
        fail = [0] * len(goto)
        delta = [[0] * m for _ in goto]
        queue = deque()
        for x in range(m):
            if x in goto[0]:
                s = goto[0][x]
                delta[0][x] = s
                queue.append(s)
        while queue:
            s = queue.popleft()
            out[s] = [a + b for a, b in zip(out[s], out[fail[s]])]
            for x in range(m):
                if x in goto[s]:
                    u = goto[s][x]
                    fail[u] = delta[fail[s]][x]
                    delta[s][x] = u
                    queue.append(u)
                else:
                    delta[s][x] = delta[fail[s]][x]
        self.delta = delta
        self.out = [tuple(v) for v in out]

    @property
    def n_states(self):
        return len(self.delta)

    def run(self, word):
        """Occurrence vector of the patterns in ``word``."""
        s, acc = 0, [0] * len(self.patterns)
        for x in word:
            s = self.delta[s][x]
            acc = [a + b for a, b in zip(acc, self.out[s])]
        return tuple(acc)


def oracle_terms(spec: InstanceSpec, N: int) -> list[int]:
    """a(0..N) by dynamic programming over (automaton state, weighted counter)."""
    if N < 0:
        raise UsageError("N must be nonnegative")
    aut = PatternAutomaton(spec.patterns, spec.alphabet_size)
    step = [
        [(aut.delta[s][x], sum(c * k for c, k in zip(spec.weights, aut.out[aut.delta[s][x]]))) for x in range(aut.m)]
        for s in range(aut.n_states)
    ]
    lo, hi = spec.step_bounds()
    r = spec.target
    dp = {(0, 0): 1}
    terms = [1 if r == 0 else 0]
    for n in range(1, N + 1):
        remaining = N - n
        nxt = {}
        for (s, v), cnt in dp.items():
            for s2, dv in step[s]:
                v2 = v + dv
                # r must stay reachable within the remaining letters
                if not remaining * lo <= r - v2 <= remaining * hi:
                    continue
                key = (s2, v2)
                nxt[key] = nxt.get(key, 0) + cnt
        dp = nxt
        terms.append(sum(cnt for (s, v), cnt in dp.items() if v == r))
    return terms


def exhaustive_terms(spec: InstanceSpec, N: int) -> list[int]:
    """a(0..N) by checking every word; exponential, for tests."""
    out = []
    for n in range(N + 1):
        cnt = 0
        for w in itertools.product(range(spec.alphabet_size), repeat=n):
            val = sum(c * count_occurrences(w, p) for c, p in zip(spec.weights, spec.patterns))
            cnt += val == spec.target
        out.append(cnt)
    return out


# ---------------------------------------------------------------------------
# canonical pairs

LETTER_PERMS = "perms"
LETTER_PERMS_AND_REVERSAL = "perms+rev"
SYMMETRIES = (LETTER_PERMS, LETTER_PERMS_AND_REVERSAL)


@dataclass(frozen=True)
class PairClass:
    representative: tuple  # (w1, w2) with w1 < w2
    orbit_members: tuple


def _orbit(pair, m, reversal):
    out = set()
    for sigma in itertools.permutations(range(m)):
        for rev in (False, True) if reversal else (False,):
            img = []
            for w in pair:
                v = tuple(sigma[x] for x in w)
                img.append(v[::-1] if rev else v)
            out.add(tuple(sorted(img)))
    return out


def canonical_pairs(m: int, k: int, symmetry: str = LETTER_PERMS_AND_REVERSAL) -> list[PairClass]:
    """Orbits of unordered pairs of distinct length-k words, ordered by representative."""
    if m < 1 or k < 1:
        raise UsageError("need m >= 1 and k >= 1")
    if symmetry not in SYMMETRIES:
        raise UsageError(f"unknown symmetry {symmetry!r}; expected one of {SYMMETRIES}")
    words = list(itertools.product(range(m), repeat=k))
    seen = set()
    classes = []
    for pair in itertools.combinations(words, 2):
        if pair in seen:
            continue
        orbit = _orbit(pair, m, symmetry == LETTER_PERMS_AND_REVERSAL)
        seen |= orbit
        classes.append(PairClass(min(orbit), tuple(sorted(orbit))))
    classes.sort(key=lambda c: c.representative)
    return classes


def total_pairs(m, k):
    return comb(m**k, 2)
