"""Oriented rewriting modulo a two-sided ideal of the free algebra.

A rule ``lhs -> rhs`` replaces any occurrence of the word ``lhs`` by the
polynomial ``rhs``, whose words are all strictly smaller in graded-lex
order.  Termination is therefore structural.  Local confluence is checked
by resolving every overlap ambiguity (Bergman's diamond lemma); when every
ambiguity of the system has been examined and resolved the normal form is
unique in all degrees.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import AlphabetMismatch, ConfluenceNotEstablished, InvalidRule
from .freealg import NCPoly, word_key
from .linalg import rref

__all__ = [
    "RewriteRule",
    "RewriteSystem",
    "CriticalPair",
    "ConfluenceReport",
    "normal_form",
    "is_zero_mod",
    "critical_pairs",
    "count_normal_words",
]


@dataclass(frozen=True)
class RewriteRule:
    lhs: tuple
    rhs: NCPoly

    def __post_init__(self):
        lhs = tuple(self.lhs)
        object.__setattr__(self, "lhs", lhs)
        if len(lhs) < 2:
            raise InvalidRule(f"rule lhs must have degree >= 2, got {lhs}")
        key = word_key(lhs)
        for w in self.rhs.words():
            if word_key(w) >= key:
                raise InvalidRule(
                    f"rhs word {self.rhs.alphabet.render_word(w)} is not smaller than "
                    f"lhs {self.rhs.alphabet.render_word(lhs)}"
                )

    def relation(self):
        return NCPoly.word(self.rhs.alphabet, self.rhs.params, self.lhs) - self.rhs

    def __str__(self):
        return f"{self.rhs.alphabet.render_word(self.lhs)} -> {self.rhs}"


@dataclass(frozen=True)
class CriticalPair:
    overlap: tuple
    left: NCPoly  # one-step reduct via the first rule
    right: NCPoly  # one-step reduct via the second rule
    residual: NCPoly  # nf(left) - nf(right)

    @property
    def resolved(self):
        return self.residual.is_zero()


@dataclass
class ConfluenceReport:
    pairs: list
    max_degree: int
    unchecked: int = 0  # overlaps longer than max_degree
    unresolved: list = field(default_factory=list)

    @property
    def locally_confluent(self):
        return not self.unresolved

    @property
    def complete(self):
        """Every ambiguity examined and resolved: confluence in all degrees."""
        return not self.unresolved and self.unchecked == 0

    @property
    def verified_degree(self):
        """Largest degree through which normal forms are certified (None = all)."""
        if self.complete:
            return None
        if self.unresolved:
            return min(len(cp.overlap) for cp in self.unresolved) - 1
        return self.max_degree


class RewriteSystem:
    """Immutable list of rules over an alphabet plus a confluence bound.

    ``generators`` restricts the letters used for normal-word counting; it
    defaults to the whole alphabet.
    """

    def __init__(self, alphabet, params, rules, max_degree=4, generators=None):
        self.alphabet = alphabet
        self.params = params
        self.rules = tuple(rules)
        self.max_degree = max_degree
        self.generators = tuple(range(len(alphabet)) if generators is None else sorted(generators))
        self._by_lhs = {}
        for idx, r in enumerate(self.rules):
            if r.rhs.alphabet != alphabet:
                raise AlphabetMismatch("rule over a different alphabet")
            if r.lhs in self._by_lhs:
                raise InvalidRule(f"two rules share lhs {alphabet.render_word(r.lhs)}")
            self._by_lhs[r.lhs] = (idx, r)
        self._lengths = sorted({len(r.lhs) for r in self.rules})
        self._nf_cache = {}
        self._confluence = None

    # -- construction ------------------------------------------------------------
    @classmethod
    def from_relations(cls, alphabet, params, relations, max_degree=4, generators=None):
        """Orient a list of relations (each ``= 0``) into a reduced system.

        The span of the relations is brought to reduced echelon form with
        the largest word of each row as pivot; each row becomes
        ``pivot -> -(rest)``.
        """
        rows = [dict(r.items()) for r in relations]
        cols = sorted({w for r in rows for w in r}, key=word_key, reverse=True)
        rules = []
        for row in rref(rows, cols):
            piv = max(row, key=word_key)
            if not piv:
                raise InvalidRule("relations generate the whole algebra (nonzero constant)")
            rhs = NCPoly(alphabet, params, {w: -c for w, c in row.items() if w != piv})
            rules.append(RewriteRule(piv, rhs))
        return cls(alphabet, params, rules, max_degree, generators)

    def union(self, *others, max_degree=None):
        rules = list(self.rules)
        seen = {r.lhs: r for r in rules}
        gens = set(self.generators)
        for o in others:
            if o.alphabet != self.alphabet:
                raise AlphabetMismatch("cannot merge systems over different alphabets")
            gens |= set(o.generators)
            for r in o.rules:
                if r.lhs in seen:
                    if seen[r.lhs].rhs != r.rhs:
                        raise InvalidRule(f"conflicting rules for {self.alphabet.render_word(r.lhs)}")
                    continue
                seen[r.lhs] = r
                rules.append(r)
        md = self.max_degree if max_degree is None else max_degree
        return RewriteSystem(self.alphabet, self.params, rules, md, gens)

    def with_rules(self, extra, generators=None):
        gens = self.generators if generators is None else generators
        return RewriteSystem(self.alphabet, self.params, self.rules + tuple(extra), self.max_degree, gens)

    def with_max_degree(self, d):
        return RewriteSystem(self.alphabet, self.params, self.rules, d, self.generators)

    def relations(self):
        return [r.relation() for r in self.rules]

    def __len__(self):
        return len(self.rules)

    # -- reduction ---------------------------------------------------------------
    def find_redex(self, word):
        """Leftmost redex; ties at one position go to the earliest declared rule."""
        n = len(word)
        for pos in range(n):
            best = None
            for L in self._lengths:
                if pos + L > n:
                    break
                hit = self._by_lhs.get(word[pos : pos + L])
                if hit is not None and (best is None or hit[0] < best[0]):
                    best = hit
            if best is not None:
                return pos, best[1]
        return None

    def rewrite_step(self, word):
        """One rewrite of ``word`` as a dict, or None if ``word`` is normal."""
        hit = self.find_redex(word)
        if hit is None:
            return None
        pos, rule = hit
        pre, post = word[:pos], word[pos + len(rule.lhs) :]
        return {pre + w + post: c for w, c in rule.rhs.items()}

    def _nf_word(self, word):
        cached = self._nf_cache.get(word)
        if cached is not None:
            return cached
        step = self.rewrite_step(word)
        if step is None:
            out = {word: self.params.one()}
        else:
            out = {}
            for w, c in step.items():
                for w2, c2 in self._nf_word(w).items():
                    s = out.get(w2)
                    v = c * c2
                    s = v if s is None else s + v
                    if s:
                        out[w2] = s
                    else:
                        out.pop(w2, None)
        self._nf_cache[word] = out
        return out

    def normal_form(self, x):
        if x.alphabet != self.alphabet:
            raise AlphabetMismatch("element and system use different alphabets")
        out = {}
        for w, c in x.items():
            for w2, c2 in self._nf_word(w).items():
                s = out.get(w2)
                v = c * c2
                s = v if s is None else s + v
                if s:
                    out[w2] = s
                else:
                    out.pop(w2, None)
        return NCPoly._raw(self.alphabet, self.params, out)

    def is_normal_word(self, word):
        return self.find_redex(tuple(word)) is None

    def trace(self, x, limit=64):
        """Successive one-step reductions of the largest reducible term."""
        steps = [x]
        cur = x
        for _ in range(limit):
            for w, c in cur.terms():
                step = self.rewrite_step(w)
                if step is not None:
                    repl = NCPoly(self.alphabet, self.params, step).scale(c)
                    cur = cur - NCPoly.word(self.alphabet, self.params, w, c) + repl
                    steps.append(cur)
                    break
            else:
                break
        return steps

    # -- confluence --------------------------------------------------------------
    def _overlaps(self):
        for (i, r1), (j, r2) in itertools.product(enumerate(self.rules), repeat=2):
            u, v = r1.lhs, r2.lhs
            for k in range(1, min(len(u), len(v))):
                if u[-k:] == v[:k]:
                    yield u + v[k:], r1, u[len(u) - k :], r2, k, "overlap"
            if i != j and len(v) < len(u):
                for pos in range(len(u) - len(v) + 1):
                    if u[pos : pos + len(v)] == v:
                        yield u, r1, pos, r2, 0, "inclusion"

    def critical_pairs(self):
        return self.confluence().pairs

    def confluence(self):
        if self._confluence is not None:
            return self._confluence
        A, P = self.alphabet, self.params
        pairs, unchecked = [], 0
        seen = set()
        for word, r1, aux, r2, k, kind in self._overlaps():
            if len(word) > self.max_degree:
                unchecked += 1
                continue
            if kind == "overlap":
                tail = NCPoly.word(A, P, r2.lhs[k:])
                head = NCPoly.word(A, P, r1.lhs[: len(r1.lhs) - k])
                left = r1.rhs * tail
                right = head * r2.rhs
            else:
                pos = aux
                left = r1.rhs
                right = (
                    NCPoly.word(A, P, word[:pos]) * r2.rhs * NCPoly.word(A, P, word[pos + len(r2.lhs) :])
                )
            key = (word, r1.lhs, r2.lhs, k)
            if key in seen:
                continue
            seen.add(key)
            residual = self.normal_form(left) - self.normal_form(right)
            pairs.append(CriticalPair(word, left, right, residual))
        pairs.sort(key=lambda cp: (word_key(cp.overlap), str(cp.left)))
        report = ConfluenceReport(pairs, self.max_degree, unchecked)
        report.unresolved = [cp for cp in pairs if not cp.resolved]
        self._confluence = report
        return report

    def certify(self, x):
        """Raise ConfluenceNotEstablished if ``x`` lies beyond the certified degree."""
        vd = self.confluence().verified_degree
        if vd is not None and x.degree() > vd:
            raise ConfluenceNotEstablished(
                f"degree {x.degree()} exceeds certified confluence degree {vd}"
            )

    def is_zero_mod(self, x):
        self.certify(x)
        return self.normal_form(x).is_zero()

    # -- counting ----------------------------------------------------------------
    def count_normal_words(self, degree):
        return len(self.normal_words(degree))

    def normal_words(self, degree):
        words = [()]
        longest = max(self._lengths, default=0)
        for _ in range(degree):
            nxt = []
            for w in words:
                for g in self.generators:
                    w2 = w + (g,)
                    if not any(
                        w2[-L:] in self._by_lhs for L in self._lengths if L <= len(w2) and L <= longest
                    ):
                        nxt.append(w2)
            words = nxt
        return words

    def __str__(self):
        return "\n".join(str(r) for r in self.rules)


def normal_form(x, sys):
    return sys.normal_form(x)


def is_zero_mod(x, sys):
    return sys.is_zero_mod(x)


def critical_pairs(sys):
    return [(cp.overlap, cp.residual) for cp in sys.critical_pairs()]


def count_normal_words(sys, degree):
    return sys.count_normal_words(degree)
