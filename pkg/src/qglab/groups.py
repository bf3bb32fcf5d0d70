"""Group models with exact word-problem oracles and exact word metrics.

Every model answers three questions exactly: what is the canonical form of a
word, is it the identity, and how far is the represented element from the
identity.  Free groups, free abelian groups, finite cyclic groups, and their
free/direct products carry closed-form metrics; the integer Heisenberg group
carries a breadth-first certified metric only.
"""

from __future__ import annotations

import string
from collections import deque
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AlphabetError,
    ConfigurationError,
    DistanceNotCertifiedError,
)


class GeneratorAlphabet:
    """Ordered signed letter alphabet of a generating set.

    Each generator contributes its lowercase symbol and, unless it is an
    involution (its own inverse), the uppercase symbol for the formal
    inverse.  The letter order is the order of ``letters`` and is used for
    every lexicographic tie-break in the package.
    """

    __slots__ = ("names", "involutions", "letters", "inverse", "gen_letter",
                 "letter_gen", "letter_sign", "_index")

    def __init__(self, names: Sequence[str], involutions: Sequence[bool] | None = None):
        names = tuple(names)
        if involutions is None:
            involutions = tuple(False for _ in names)
        involutions = tuple(bool(f) for f in involutions)
        if not names:
            raise ConfigurationError("alphabet needs at least one generator")
        if len(involutions) != len(names):
            raise ConfigurationError("one involution flag per generator required")
        for name in names:
            if len(name) != 1 or name not in string.ascii_lowercase:
                raise ConfigurationError(f"generator name must be a single lowercase letter, got {name!r}")
        if len(set(names)) != len(names):
            raise ConfigurationError(f"duplicate generator names in {names}")

        letters: list[str] = []
        inverse: list[int] = []
        gen_letter: list[int] = []
        letter_gen: list[int] = []
        letter_sign: list[int] = []
        for gen, (name, invol) in enumerate(zip(names, involutions)):
            idx = len(letters)
            gen_letter.append(idx)
            letters.append(name)
            letter_gen.append(gen)
            letter_sign.append(1)
            if invol:
                inverse.append(idx)
            else:
                letters.append(name.upper())
                inverse.extend((idx + 1, idx))
                letter_gen.append(gen)
                letter_sign.append(-1)

        self.names = names
        self.involutions = involutions
        self.letters = tuple(letters)
        self.inverse = tuple(inverse)
        self.gen_letter = tuple(gen_letter)
        self.letter_gen = tuple(letter_gen)
        self.letter_sign = tuple(letter_sign)
        self._index = {ch: i for i, ch in enumerate(letters)}

    @property
    def rank(self) -> int:
        return len(self.names)

    @property
    def size(self) -> int:
        return len(self.letters)

    def index(self, ch: str) -> int:
        try:
            return self._index[ch]
        except KeyError:
            raise AlphabetError(f"letter {ch!r} is not in alphabet {self.letters}") from None

    def word(self, text: str) -> "Word":
        return Word(self, tuple(self.index(ch) for ch in text))

    def __eq__(self, other) -> bool:
        return (isinstance(other, GeneratorAlphabet)
                and self.names == other.names
                and self.involutions == other.involutions)

    def __hash__(self) -> int:
        return hash((self.names, self.involutions))

    def __repr__(self) -> str:
        return f"GeneratorAlphabet({''.join(self.letters)})"


class Word:
    """A finite sequence of signed letters; labels a path from the identity."""

    __slots__ = ("alphabet", "letters")

    def __init__(self, alphabet: GeneratorAlphabet, letters: Iterable[int]):
        letters = tuple(letters)
        n = alphabet.size
        for li in letters:
            if not 0 <= li < n:
                raise AlphabetError(f"letter id {li} out of range for {alphabet!r}")
        self.alphabet = alphabet
        self.letters = letters

    @classmethod
    def from_text(cls, alphabet: GeneratorAlphabet, text: str) -> "Word":
        return alphabet.word(text)

    @property
    def text(self) -> str:
        letters = self.alphabet.letters
        return "".join(letters[li] for li in self.letters)

    def prefix(self, k: int) -> "Word":
        return Word(self.alphabet, self.letters[:k])

    def segment(self, i: int, j: int) -> "Word":
        return Word(self.alphabet, self.letters[i:j])

    def inverse(self) -> "Word":
        inv = self.alphabet.inverse
        return Word(self.alphabet, tuple(inv[li] for li in reversed(self.letters)))

    def __add__(self, other: "Word") -> "Word":
        if self.alphabet != other.alphabet:
            raise AlphabetError("cannot concatenate words over different alphabets")
        return Word(self.alphabet, self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Word)
                and self.alphabet == other.alphabet
                and self.letters == other.letters)

    def __hash__(self) -> int:
        return hash((self.alphabet, self.letters))

    def __repr__(self) -> str:
        return f"Word({self.text!r})"


class GroupModel:
    """Base class: exact group element arithmetic over a fixed alphabet.

    Elements are hashable canonical forms.  ``step`` multiplies on the right
    by a single letter and is the primitive every ball/search routine uses.
    """

    family = "?"
    metric_mode = "closed_form"

    alphabet: GeneratorAlphabet

    def spec_string(self) -> str:
        raise NotImplementedError

    def identity(self):
        raise NotImplementedError

    def letter_elem(self, li: int):
        return self.step(self.identity(), li)

    def step(self, e, li: int):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, e):
        raise NotImplementedError

    def metric(self, e) -> int:
        """Exact distance from the identity to ``e`` in the Cayley graph."""
        raise NotImplementedError

    def elem_letters(self, e) -> tuple[int, ...]:
        """Letters of the canonical word representing ``e``."""
        raise NotImplementedError

    def pair_distance(self, a, b) -> int:
        return self.metric(self.mul(self.inv(a), b))

    def letter_deltas(self) -> np.ndarray | None:
        """Per-letter integer displacement vectors, when the word metric is
        the l1 norm of the accumulated displacement.  None otherwise."""
        return None

    def check_word(self, w: Word) -> None:
        if w.alphabet != self.alphabet:
            raise AlphabetError(
                f"word over {w.alphabet!r} fed to model over {self.alphabet!r}")

    def eval_word(self, w: Word):
        self.check_word(w)
        e = self.identity()
        for li in w.letters:
            e = self.step(e, li)
        return e

    def elem_word(self, e) -> Word:
        return Word(self.alphabet, self.elem_letters(e))

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.spec_string()}>"


def _default_names(count: int, pool: str) -> tuple[str, ...]:
    if count > len(pool):
        raise ConfigurationError(f"rank {count} exceeds the {len(pool)} available generator names")
    return tuple(pool[:count])


class FreeGroupModel(GroupModel):
    """Free group of given rank; canonical forms are reduced letter tuples."""

    family = "free"

    def __init__(self, rank: int, names: Sequence[str] | None = None):
        if rank < 1:
            raise ConfigurationError("free group rank must be >= 1")
        self.rank = rank
        names = tuple(names) if names else _default_names(rank, string.ascii_lowercase)
        self.alphabet = GeneratorAlphabet(names)
        self._inv = self.alphabet.inverse

    def spec_string(self) -> str:
        return f"free:{self.rank}"

    def identity(self):
        return ()

    def letter_elem(self, li: int):
        return (li,)

    def step(self, e, li: int):
        if e and e[-1] == self._inv[li]:
            return e[:-1]
        return e + (li,)

    def mul(self, a, b):
        a = list(a)
        inv = self._inv
        start = 0
        for li in b:
            if a and a[-1] == inv[li]:
                a.pop()
            else:
                a.append(li)
        return tuple(a)

    def inv(self, e):
        inv = self._inv
        return tuple(inv[li] for li in reversed(e))

    def metric(self, e) -> int:
        return len(e)

    def elem_letters(self, e) -> tuple[int, ...]:
        return e

    def pair_distance(self, a, b) -> int:
        # distance in a tree: lengths minus twice the common prefix
        k = 0
        for x, y in zip(a, b):
            if x != y:
                break
            k += 1
        return len(a) + len(b) - 2 * k


class FreeAbelianModel(GroupModel):
    """Free abelian group; canonical forms are exponent vectors, metric l1."""

    family = "abelian"

    def __init__(self, rank: int, names: Sequence[str] | None = None):
        if rank < 1:
            raise ConfigurationError("free abelian rank must be >= 1")
        self.rank = rank
        names = tuple(names) if names else _default_names(rank, string.ascii_lowercase)
        self.alphabet = GeneratorAlphabet(names)
        ab = self.alphabet
        self._delta = tuple(
            (ab.letter_gen[li], ab.letter_sign[li]) for li in range(ab.size))

    def spec_string(self) -> str:
        return f"abelian:{self.rank}"

    def identity(self):
        return (0,) * self.rank

    def step(self, e, li: int):
        gen, sign = self._delta[li]
        out = list(e)
        out[gen] += sign
        return tuple(out)

    def mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, e):
        return tuple(-x for x in e)

    def metric(self, e) -> int:
        return sum(abs(x) for x in e)

    def pair_distance(self, a, b) -> int:
        return sum(abs(x - y) for x, y in zip(a, b))

    def elem_letters(self, e) -> tuple[int, ...]:
        ab = self.alphabet
        out: list[int] = []
        for gen, exp in enumerate(e):
            if exp > 0:
                out.extend([ab.gen_letter[gen]] * exp)
            elif exp < 0:
                out.extend([ab.inverse[ab.gen_letter[gen]]] * (-exp))
        return tuple(out)

    def letter_deltas(self) -> np.ndarray:
        out = np.zeros((self.alphabet.size, self.rank), dtype=np.int64)
        for li, (gen, sign) in enumerate(self._delta):
            out[li, gen] = sign
        return out


class FiniteCyclicModel(GroupModel):
    """Cyclic group of order n with one generator; order 2 is an involution."""

    family = "cyclic"

    def __init__(self, order: int, names: Sequence[str] | None = None):
        if order < 2:
            raise ConfigurationError("cyclic order must be >= 2")
        self.order = order
        names = tuple(names) if names else ("t",)
        if len(names) != 1:
            raise ConfigurationError("cyclic model takes exactly one generator name")
        self.alphabet = GeneratorAlphabet(names, (order == 2,))
        ab = self.alphabet
        self._delta = tuple(ab.letter_sign[li] for li in range(ab.size))

    def spec_string(self) -> str:
        return f"cyclic:{self.order}"

    def identity(self):
        return 0

    def step(self, e, li: int):
        return (e + self._delta[li]) % self.order

    def mul(self, a, b):
        return (a + b) % self.order

    def inv(self, e):
        return (-e) % self.order

    def metric(self, e) -> int:
        return min(e, self.order - e)

    def elem_letters(self, e) -> tuple[int, ...]:
        ab = self.alphabet
        fwd = ab.gen_letter[0]
        if e <= self.order - e:
            return (fwd,) * e
        return (ab.inverse[fwd],) * (self.order - e)


class DirectProductModel(GroupModel):
    """Direct product of two models; letters act on one coordinate each."""

    family = "dirprod"

    def __init__(self, left: GroupModel, right: GroupModel):
        _require_product_factor(left)
        _require_product_factor(right)
        if set(left.alphabet.names) & set(right.alphabet.names):
            raise ConfigurationError(
                "product factors share generator names; build via make_model() "
                "or rename the factors")
        self.left = left
        self.right = right
        self.alphabet = GeneratorAlphabet(
            left.alphabet.names + right.alphabet.names,
            left.alphabet.involutions + right.alphabet.involutions)
        self._split = left.alphabet.size
        # the combined letter order is factor-wise, so ids translate by offset

    def spec_string(self) -> str:
        return f"dirprod({self.left.spec_string()},{self.right.spec_string()})"

    def identity(self):
        return (self.left.identity(), self.right.identity())

    def step(self, e, li: int):
        if li < self._split:
            return (self.left.step(e[0], li), e[1])
        return (e[0], self.right.step(e[1], li - self._split))

    def mul(self, a, b):
        return (self.left.mul(a[0], b[0]), self.right.mul(a[1], b[1]))

    def inv(self, e):
        return (self.left.inv(e[0]), self.right.inv(e[1]))

    def metric(self, e) -> int:
        return self.left.metric(e[0]) + self.right.metric(e[1])

    def pair_distance(self, a, b) -> int:
        return (self.left.pair_distance(a[0], b[0])
                + self.right.pair_distance(a[1], b[1]))

    def elem_letters(self, e) -> tuple[int, ...]:
        off = self._split
        return (self.left.elem_letters(e[0])
                + tuple(li + off for li in self.right.elem_letters(e[1])))

    def letter_deltas(self) -> np.ndarray | None:
        dl = self.left.letter_deltas()
        dr = self.right.letter_deltas()
        if dl is None or dr is None:
            return None
        out = np.zeros((self.alphabet.size, dl.shape[1] + dr.shape[1]), dtype=np.int64)
        out[:self._split, :dl.shape[1]] = dl
        out[self._split:, dl.shape[1]:] = dr
        return out


class FreeProductModel(GroupModel):
    """Free product of two models; canonical forms are alternating syllables."""

    family = "freeprod"

    def __init__(self, left: GroupModel, right: GroupModel):
        _require_product_factor(left)
        _require_product_factor(right)
        if set(left.alphabet.names) & set(right.alphabet.names):
            raise ConfigurationError(
                "product factors share generator names; build via make_model() "
                "or rename the factors")
        self.factors = (left, right)
        self.alphabet = GeneratorAlphabet(
            left.alphabet.names + right.alphabet.names,
            left.alphabet.involutions + right.alphabet.involutions)
        self._split = left.alphabet.size

    def spec_string(self) -> str:
        l, r = self.factors
        return f"freeprod({l.spec_string()},{r.spec_string()})"

    def identity(self):
        return ()

    def _letter_side(self, li: int) -> tuple[int, int]:
        if li < self._split:
            return 0, li
        return 1, li - self._split

    def step(self, e, li: int):
        side, sub = self._letter_side(li)
        factor = self.factors[side]
        if e and e[-1][0] == side:
            merged = factor.step(e[-1][1], sub)
            if merged == factor.identity():
                return e[:-1]
            return e[:-1] + ((side, merged),)
        return e + ((side, factor.letter_elem(sub)),)

    def mul(self, a, b):
        out = list(a)
        for side, sub in b:
            if out and out[-1][0] == side:
                factor = self.factors[side]
                merged = factor.mul(out[-1][1], sub)
                if merged == factor.identity():
                    out.pop()
                else:
                    out[-1] = (side, merged)
            else:
                out.append((side, sub))
        return tuple(out)

    def inv(self, e):
        return tuple((side, self.factors[side].inv(sub)) for side, sub in reversed(e))

    def metric(self, e) -> int:
        # normal form: every word must spell out each syllable in its factor
        return sum(self.factors[side].metric(sub) for side, sub in e)

    def elem_letters(self, e) -> tuple[int, ...]:
        off = self._split
        out: list[int] = []
        for side, sub in e:
            sub_letters = self.factors[side].elem_letters(sub)
            if side == 0:
                out.extend(sub_letters)
            else:
                out.extend(li + off for li in sub_letters)
        return tuple(out)


class HeisenbergModel(GroupModel):
    """Integer Heisenberg group on two generators.

    Canonical forms are the (a, b, c) entries of the upper-triangular matrix
    [[1, a, c], [0, 1, b], [0, 0, 1]].  No closed-form word metric exists;
    distances come from an eagerly built breadth-first table and queries
    outside the certified radius raise instead of guessing.
    """

    family = "heis3"
    metric_mode = "bfs_certified"

    def __init__(self, certified_radius: int = 8, names: Sequence[str] | None = None):
        if certified_radius < 0:
            raise ConfigurationError("certified radius must be >= 0")
        names = tuple(names) if names else ("x", "y")
        if len(names) != 2:
            raise ConfigurationError("heis3 takes exactly two generator names")
        self.alphabet = GeneratorAlphabet(names)
        self.certified_radius = certified_radius
        self._dist = self._bfs_table(certified_radius)

    def spec_string(self) -> str:
        return "heis3"

    def identity(self):
        return (0, 0, 0)

    def step(self, e, li: int):
        a, b, c = e
        if li == 0:
            return (a + 1, b, c)
        if li == 1:
            return (a - 1, b, c)
        if li == 2:
            return (a, b + 1, c + a)
        return (a, b - 1, c - a)

    def mul(self, m, n):
        a1, b1, c1 = m
        a2, b2, c2 = n
        return (a1 + a2, b1 + b2, c1 + c2 + a1 * b2)

    def inv(self, e):
        a, b, c = e
        return (-a, -b, a * b - c)

    def metric(self, e) -> int:
        d = self._dist.get(e)
        if d is None:
            raise DistanceNotCertifiedError(
                f"element {e} lies outside the certified radius "
                f"{self.certified_radius} of heis3; rebuild the model with a "
                f"larger certified_radius")
        return d

    def elem_letters(self, e) -> tuple[int, ...]:
        a, b, c = e
        x, y = self.alphabet.gen_letter
        xi, yi = self.alphabet.inverse[x], self.alphabet.inverse[y]
        out: list[int] = []
        out.extend([x] * a if a >= 0 else [xi] * (-a))
        out.extend([y] * b if b >= 0 else [yi] * (-b))
        k = c - a * b
        commutator = (x, y, xi, yi) if k >= 0 else (y, x, yi, xi)
        out.extend(commutator * abs(k))
        return tuple(out)

    def _bfs_table(self, radius: int) -> dict:
        dist = {(0, 0, 0): 0}
        frontier = deque([(0, 0, 0)])
        while frontier:
            e = frontier.popleft()
            d = dist[e]
            if d == radius:
                continue
            for li in range(4):
                nxt = self.step(e, li)
                if nxt not in dist:
                    dist[nxt] = d + 1
                    frontier.append(nxt)
        return dist


def _require_product_factor(model: GroupModel) -> None:
    if model.metric_mode != "closed_form":
        raise ConfigurationError(
            f"{model.spec_string()} cannot be a product factor: only "
            "closed-form metrics compose")


# --- model spec strings -----------------------------------------------------
#
# grammar:  free:R | abelian:R | cyclic:N | heis3
#           freeprod(SPEC,SPEC) | dirprod(SPEC,SPEC)
#
# generators of nested products are renamed from the pool s,t,u,... in
# leaf order so the combined alphabet never collides.

_PRODUCT_POOL = "stuvwxyzabcdefghijklmnopqr"


def _parse_node(text: str):
    text = text.strip()
    for tag in ("freeprod", "dirprod"):
        if text.startswith(tag + "(") and text.endswith(")"):
            inner = text[len(tag) + 1:-1]
            depth = 0
            for i, ch in enumerate(inner):
                if ch == "(":
                    depth += 1
                elif ch == ")":
                    depth -= 1
                elif ch == "," and depth == 0:
                    return (tag, _parse_node(inner[:i]), _parse_node(inner[i + 1:]))
            raise ConfigurationError(f"product spec needs two factors: {text!r}")
    if text == "heis3":
        return ("heis3",)
    for tag, minimum in (("free", 1), ("abelian", 1), ("cyclic", 2)):
        if text.startswith(tag + ":"):
            raw = text[len(tag) + 1:]
            try:
                value = int(raw)
            except ValueError:
                raise ConfigurationError(f"bad parameter in model spec {text!r}") from None
            if value < minimum:
                raise ConfigurationError(f"parameter must be >= {minimum} in {text!r}")
            return (tag, value)
    raise ConfigurationError(f"unrecognised model spec {text!r}")


def _leaf_name_count(node) -> int:
    tag = node[0]
    if tag in ("freeprod", "dirprod"):
        return _leaf_name_count(node[1]) + _leaf_name_count(node[2])
    if tag == "heis3":
        raise ConfigurationError("heis3 cannot be a product factor")
    if tag == "cyclic":
        return 1
    return node[1]


def _build_node(node, names: list[str] | None, heis_radius: int) -> GroupModel:
    tag = node[0]
    if tag in ("freeprod", "dirprod"):
        left = _build_node(node[1], names, heis_radius)
        right = _build_node(node[2], names, heis_radius)
        cls = FreeProductModel if tag == "freeprod" else DirectProductModel
        return cls(left, right)
    if tag == "heis3":
        return HeisenbergModel(certified_radius=heis_radius)
    if tag == "free":
        taken = [names.pop(0) for _ in range(node[1])] if names is not None else None
        return FreeGroupModel(node[1], names=taken)
    if tag == "abelian":
        taken = [names.pop(0) for _ in range(node[1])] if names is not None else None
        return FreeAbelianModel(node[1], names=taken)
    taken = [names.pop(0)] if names is not None else None
    return FiniteCyclicModel(node[1], names=taken)


def make_model(spec: str, heis_radius: int = 8) -> GroupModel:
    """Build a group model from a spec string such as ``abelian:2`` or
    ``freeprod(cyclic:2,cyclic:3)``."""
    node = _parse_node(spec)
    if node[0] in ("freeprod", "dirprod"):
        count = _leaf_name_count(node)
        if count > len(_PRODUCT_POOL):
            raise ConfigurationError(f"product needs {count} generators; at most "
                                     f"{len(_PRODUCT_POOL)} supported")
        names = list(_PRODUCT_POOL[:count])
        return _build_node(node, names, heis_radius)
    return _build_node(node, None, heis_radius)


# --- module-level operations ------------------------------------------------

def reduce_word(model: GroupModel, w: Word) -> Word:
    """Canonical representative of the element ``w`` spells."""
    return model.elem_word(model.eval_word(w))


def is_identity(model: GroupModel, w: Word) -> bool:
    return model.eval_word(w) == model.identity()


def word_metric(model: GroupModel, w: Word) -> int:
    """Exact distance from the identity to the element ``w`` represents."""
    return model.metric(model.eval_word(w))
