"""Free associative algebra over :class:`Scalar` and its tensor powers.

Words are tuples of letter indices into an :class:`Alphabet`; the word
order is graded lexicographic (length first, then letter rank).  For the
2x2 matrix alphabet the entries are named ``a b / c d`` by rows, so
``a = t(1,1)``, ``b = t(1,2)``, ``c = t(2,1)``, ``d = t(2,2)`` where
``t(i, j)`` is the generator with row (lower index) ``i`` and column
(upper index) ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import AlphabetMismatch, CounitUndefinedForLetter, MissingGeneratorImage
from .scalar import Scalar

__all__ = [
    "Letter",
    "Alphabet",
    "NCPoly",
    "TensorNCPoly",
    "word_key",
    "nc_mul",
    "coproduct",
    "counit",
    "matrix_coproduct_table",
    "matrix_counit_table",
]


@dataclass(frozen=True)
class Letter:
    name: str
    role: str  # "T", "e" or "aux"
    row: int = 0
    col: int = 0
    index: int = 0


def word_key(word):
    return (len(word), word)


class Alphabet:
    """Ordered, immutable list of generators."""

    def __init__(self, letters):
        letters = tuple(letters)
        names = [l.name for l in letters]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate letters in {names}")
        self.letters = letters
        self._rank = {l.name: i for i, l in enumerate(letters)}
        self._names_by_len = sorted(names, key=len, reverse=True)
        self._hash = hash(letters)

    @classmethod
    def from_names(cls, names):
        return cls(Letter(n, "aux") for n in names)

    @staticmethod
    @lru_cache(maxsize=None)
    def for_dim(n):
        """T-letters (row-major), then D, Dinv, then coordinates e1..en."""
        letters = []
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                letters.append(Letter(_t_name(n, i, j), "T", row=i, col=j))
        letters.append(Letter("D", "aux"))
        letters.append(Letter("Dinv", "aux"))
        for i in range(1, n + 1):
            letters.append(Letter(f"e{i}", "e", index=i))
        return Alphabet(letters)

    def __eq__(self, other):
        return self is other or (isinstance(other, Alphabet) and self.letters == other.letters)

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def index(self, name):
        return self._rank[name]

    def __contains__(self, name):
        return name in self._rank

    def name(self, idx):
        return self.letters[idx].name

    @property
    def dim(self):
        return sum(1 for l in self.letters if l.role == "e") or int(
            round(sum(1 for l in self.letters if l.role == "T") ** 0.5)
        )

    def t(self, i, j):
        """Index of the matrix letter in row ``i``, column ``j`` (1-based)."""
        for k, l in enumerate(self.letters):
            if l.role == "T" and l.row == i and l.col == j:
                return k
        raise KeyError(f"no matrix letter ({i},{j})")

    def e(self, i):
        return self._rank[f"e{i}"]

    def indices(self, role):
        return tuple(k for k, l in enumerate(self.letters) if l.role == role)

    def split(self, text):
        """Split a run of letter names by longest match, or None."""
        if text in self._rank:
            return (self._rank[text],)
        out = []
        pos = 0
        while pos < len(text):
            for n in self._names_by_len:
                if text.startswith(n, pos):
                    out.append(self._rank[n])
                    pos += len(n)
                    break
            else:
                return None
        return tuple(out)

    def render_word(self, word):
        """Letters juxtaposed; separated by spaces once a multi-character name occurs."""
        if not word:
            return "1"
        names = [self.letters[k].name for k in word]
        sep = " " if any(len(n) > 1 for n in names) else ""
        return sep.join(names)

    def __repr__(self):
        return f"Alphabet({[l.name for l in self.letters]})"


def _t_name(n, i, j):
    if n == 2:
        return "abcd"[2 * (i - 1) + (j - 1)]
    return f"t{i}{j}"


def _check_alphabet(a, b):
    if a is not b and a != b:
        raise AlphabetMismatch(f"{a!r} vs {b!r}")


class NCPoly:
    """Finite linear combination of words with nonzero Scalar coefficients."""

    __slots__ = ("alphabet", "params", "_terms")

    def __init__(self, alphabet, params, terms=None):
        self.alphabet = alphabet
        self.params = params
        clean = {}
        if terms:
            for w, c in dict(terms).items():
                if c:
                    clean[tuple(w)] = c
        self._terms = clean

    @classmethod
    def _raw(cls, alphabet, params, terms):
        obj = cls.__new__(cls)
        obj.alphabet = alphabet
        obj.params = params
        obj._terms = terms
        return obj

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, alphabet, params):
        return cls._raw(alphabet, params, {})

    @classmethod
    def const(cls, alphabet, value):
        return cls(alphabet, value.params, {(): value})

    @classmethod
    def one(cls, alphabet, params):
        return cls._raw(alphabet, params, {(): params.one()})

    @classmethod
    def word(cls, alphabet, params, word, coeff=None):
        coeff = params.one() if coeff is None else coeff
        return cls(alphabet, params, {tuple(word): coeff})

    @classmethod
    def letter(cls, alphabet, params, name):
        return cls.word(alphabet, params, (alphabet.index(name),))

    # -- access ---------------------------------------------------------------
    def terms(self):
        """(word, coeff) pairs, largest word first."""
        return sorted(self._terms.items(), key=lambda t: word_key(t[0]), reverse=True)

    def items(self):
        return self._terms.items()

    def coeff(self, word):
        return self._terms.get(tuple(word), self.params.zero())

    def words(self):
        return set(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degree(self):
        return max((len(w) for w in self._terms), default=-1)

    def leading_word(self):
        return max(self._terms, key=word_key)

    def constant_value(self):
        """The Scalar if this is a multiple of the empty word, else None."""
        if not self._terms:
            return self.params.zero()
        if set(self._terms) == {()}:
            return self._terms[()]
        return None

    def letters_used(self):
        return {k for w in self._terms for k in w}

    # -- arithmetic -----------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, NCPoly):
            _check_alphabet(self.alphabet, other.alphabet)
            return other
        if isinstance(other, Scalar):
            return NCPoly.const(self.alphabet, other)
        if isinstance(other, int) and not isinstance(other, bool):
            return NCPoly.const(self.alphabet, self.params.const(other))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return NCPoly._raw(self.alphabet, self.params, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw(self.alphabet, self.params, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, s):
        if not s:
            return NCPoly.zero(self.alphabet, self.params)
        if isinstance(s, Scalar) and s.is_one():
            return self
        return NCPoly._raw(self.alphabet, self.params, {w: c * s for w, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return nc_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("NCPoly powers must be nonnegative integers")
        out = NCPoly.one(self.alphabet, self.params)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (Scalar, int)) and not isinstance(other, bool):
            other = self._lift(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.alphabet == other.alphabet and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- maps ------------------------------------------------------------------
    def map_coefficients(self, fn):
        return NCPoly(self.alphabet, self.params, {w: fn(c) for w, c in self._terms.items()})

    def substitute_letters(self, images, anti=False):
        """Extend ``images`` (letter index -> NCPoly) to an algebra (anti)morphism.

        Letters without an image are kept.
        """
        out = NCPoly.zero(self.alphabet, self.params)
        cache = {}
        for w, c in self._terms.items():
            prod = NCPoly.one(self.alphabet, self.params)
            seq = reversed(w) if anti else w
            for k in seq:
                img = cache.get(k)
                if img is None:
                    img = images.get(k)
                    if img is None:
                        img = NCPoly.word(self.alphabet, self.params, (k,))
                    cache[k] = img
                prod = prod * img
            out = out + prod.scale(c)
        return out

    # -- text -----------------------------------------------------------------
    def __str__(self):
        return render_terms(
            ((self.alphabet.render_word(w), c) for w, c in self.terms()), self.params
        )

    def __repr__(self):
        return f"NCPoly({str(self)!r})"


def render_terms(pairs, params):
    """Render (monomial text, coeff) pairs as ``coef word + ...``."""
    out = []
    for mono, c in pairs:
        neg = False
        if c.is_monomial() and str(c).startswith("-"):
            c = -c
            neg = True
        if c.is_one():
            body = mono
        elif mono == "1":
            body = str(c)
        else:
            cs = str(c)
            if len(c.num.terms()) > 1 and c.den == 1:
                cs = f"({cs})"
            body = f"{cs} {mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out) if out else "0"


def nc_mul(a, b):
    """Concatenation product, extended bilinearly."""
    _check_alphabet(a.alphabet, b.alphabet)
    out = {}
    for w1, c1 in a._terms.items():
        for w2, c2 in b._terms.items():
            w = w1 + w2
            c = c1 * c2
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return NCPoly._raw(a.alphabet, a.params, out)


class TensorNCPoly:
    """Element of H^{(x)k}: sum of coeff * (w_1 (x) ... (x) w_k).

    The arity is fixed per value; two-factor tensors are the common case,
    three-factor ones appear only in coassociativity checks.
    """

    __slots__ = ("alphabet", "params", "arity", "_terms")

    def __init__(self, alphabet, params, arity=2, terms=None):
        self.alphabet = alphabet
        self.params = params
        self.arity = arity
        self._terms = {}
        for key, c in (terms or {}).items():
            key = tuple(tuple(w) for w in key)
            if len(key) != arity:
                raise ValueError(f"tensor key {key} does not have arity {arity}")
            if c:
                self._terms[key] = c

    @classmethod
    def _raw(cls, alphabet, params, arity, terms):
        obj = cls.__new__(cls)
        obj.alphabet = alphabet
        obj.params = params
        obj.arity = arity
        obj._terms = terms
        return obj

    @classmethod
    def pure(cls, *factors):
        """The elementary tensor x_1 (x) ... (x) x_k of NCPolys."""
        alph, params = factors[0].alphabet, factors[0].params
        terms = {(): params.one()}
        for f in factors:
            _check_alphabet(alph, f.alphabet)
            nxt = {}
            for key, c in terms.items():
                for w, d in f.items():
                    k2 = key + (w,)
                    nxt[k2] = nxt.get(k2, params.zero()) + c * d
            terms = nxt
        return cls(alph, params, len(factors), terms)

    @classmethod
    def unit(cls, alphabet, params, arity=2):
        return cls._raw(alphabet, params, arity, {((),) * arity: params.one()})

    def items(self):
        return self._terms.items()

    def terms(self):
        return sorted(
            self._terms.items(), key=lambda t: tuple(word_key(w) for w in t[0]), reverse=True
        )

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def _check(self, other):
        if not isinstance(other, TensorNCPoly):
            raise TypeError("expected TensorNCPoly")
        _check_alphabet(self.alphabet, other.alphabet)
        if self.arity != other.arity:
            raise ValueError("tensor arity mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TensorNCPoly._raw(self.alphabet, self.params, self.arity, out)

    def __neg__(self):
        return TensorNCPoly._raw(
            self.alphabet, self.params, self.arity, {k: -c for k, c in self._terms.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        if not s:
            return TensorNCPoly._raw(self.alphabet, self.params, self.arity, {})
        return TensorNCPoly._raw(
            self.alphabet, self.params, self.arity, {k: c * s for k, c in self._terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        self._check(other)
        out = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = tuple(x + y for x, y in zip(k1, k2))
                c = c1 * c2
                s = out.get(k)
                s = c if s is None else s + c
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return TensorNCPoly._raw(self.alphabet, self.params, self.arity, out)

    def __eq__(self, other):
        if not isinstance(other, TensorNCPoly):
            return NotImplemented
        return self.arity == other.arity and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def map_factors(self, maps):
        """Apply one linear map ``word -> NCPoly`` per factor (None = identity)."""
        out = TensorNCPoly._raw(self.alphabet, self.params, self.arity, {})
        for key, c in self._terms.items():
            parts = []
            for w, fn in zip(key, maps):
                parts.append(NCPoly.word(self.alphabet, self.params, w) if fn is None else fn(w))
            if any(p.is_zero() for p in parts):
                continue
            out = out + TensorNCPoly.pure(*parts).scale(c)
        return out

    def expand_factor(self, pos, fn):
        """Replace factor ``pos`` by a tensor ``fn(word)``, raising the arity."""
        out = None
        for key, c in self._terms.items():
            img = fn(key[pos])
            terms = {}
            for k2, d in img.items():
                k = key[:pos] + k2 + key[pos + 1 :]
                terms[k] = terms.get(k, self.params.zero()) + c * d
            piece = TensorNCPoly(self.alphabet, self.params, self.arity - 1 + img.arity, terms)
            out = piece if out is None else out + piece
        if out is None:
            return TensorNCPoly._raw(self.alphabet, self.params, self.arity + 1, {})
        return out

    def __str__(self):
        pairs = (
            (" (x) ".join(self.alphabet.render_word(w) for w in key), c) for key, c in self.terms()
        )
        return render_terms(pairs, self.params)

    def __repr__(self):
        return f"TensorNCPoly({str(self)!r})"


def coproduct(x, table):
    """Extend ``table`` (letter index -> TensorNCPoly) multiplicatively to ``x``."""
    out = TensorNCPoly._raw(x.alphabet, x.params, 2, {})
    one = TensorNCPoly.unit(x.alphabet, x.params)
    for w, c in x.items():
        prod = one
        for k in w:
            img = table.get(k)
            if img is None:
                raise MissingGeneratorImage(f"no coproduct image for {x.alphabet.name(k)!r}")
            prod = prod * img
        out = out + prod.scale(c)
    return out


def counit(x, table):
    """Extend ``table`` (letter index -> Scalar) multiplicatively to ``x``."""
    acc = x.params.zero()
    for w, c in x.items():
        v = c
        for k in w:
            img = table.get(k)
            if img is None:
                raise CounitUndefinedForLetter(f"counit undefined on {x.alphabet.name(k)!r}")
            v = v * img
            if not v:
                break
        acc = acc + v
    return acc


def matrix_coproduct_table(alphabet, params):
    """Delta t(i,j) = sum_k t(i,k) (x) t(k,j); D and Dinv group-like."""
    n = alphabet.dim
    table = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            acc = TensorNCPoly._raw(alphabet, params, 2, {})
            for k in range(1, n + 1):
                acc = acc + TensorNCPoly._raw(
                    alphabet, params, 2, {((alphabet.t(i, k),), (alphabet.t(k, j),)): params.one()}
                )
            table[alphabet.t(i, j)] = acc
    for name in ("D", "Dinv"):
        if name in alphabet:
            k = alphabet.index(name)
            table[k] = TensorNCPoly._raw(alphabet, params, 2, {((k,), (k,)): params.one()})
    return table


def matrix_counit_table(alphabet, params):
    table = {}
    for k, l in enumerate(alphabet.letters):
        if l.role == "T":
            table[k] = params.one() if l.row == l.col else params.zero()
        elif l.name in ("D", "Dinv"):
            table[k] = params.one()
    return table
