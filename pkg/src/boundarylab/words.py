"""Words in a closed surface group.

A word is a sequence of letters (generator index, +/-1).  For genus g the
generators are a1, b1, ..., ag, bg, stored at indices 0, 1, ..., 2g-1
(even = a, odd = b).  The ASCII form uses lowercase for a generator and
uppercase for its inverse: "a1b1A1B1" is the commutator [a1, b1].

Free reduction is the only rewriting we ever perform: the word problem is
never solved symbolically, every group-level identification happens
numerically downstream (matrix proximity, trace checks).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

Letter = tuple[int, int]

_LETTER_RE = re.compile(r"([a-bA-B])(\d+)")


def free_reduce(letters) -> tuple[Letter, ...]:
    """Cancel adjacent inverse pairs until none remain (stack pass)."""
    out: list[Letter] = []
    for idx, sign in letters:
        if out and out[-1][0] == idx and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((idx, sign))
    return tuple(out)


def cyclic_reduce(letters) -> tuple[Letter, ...]:
    """Freely reduce, then strip cancelling first/last pairs."""
    core = list(free_reduce(letters))
    while len(core) >= 2 and core[0][0] == core[-1][0] and core[0][1] == -core[-1][1]:
        core = core[1:-1]
    return tuple(core)


def invert(letters) -> tuple[Letter, ...]:
    return tuple((idx, -sign) for idx, sign in reversed(letters))


def _letter_order(letters) -> tuple:
    # positive letters sort before inverses: a1 < A1 < b1 < B1 < a2 < ...
    return tuple((idx, 0 if sign > 0 else 1) for idx, sign in letters)


def conjugacy_key(letters) -> tuple[Letter, ...]:
    """Canonical representative of the orbit of a word under free/cyclic
    reduction, cyclic rotation and inversion.

    Traces (and geodesic lengths, and intersection numbers against the word's
    free homotopy class) are constant on these orbits, so embedding sets are
    deduplicated by this key.
    """
    core = cyclic_reduce(letters)
    if not core:
        return ()
    candidates = []
    for w in (core, invert(core)):
        for r in range(len(w)):
            candidates.append(w[r:] + w[:r])
    return min(candidates, key=_letter_order)


@dataclass(frozen=True)
class Word:
    """A word in the surface-group generators.

    ``letters`` is stored exactly as given; ``canonical_form`` is the free
    reduction.  Equality and hashing use the raw letters, so reduce first if
    you want reduced-word identity.
    """

    letters: tuple[Letter, ...]

    def __init__(self, letters=()):
        object.__setattr__(self, "letters", tuple((int(i), int(s)) for i, s in letters))
        for idx, sign in self.letters:
            if sign not in (-1, 1) or idx < 0:
                raise ValueError(f"bad letter {(idx, sign)}")

    @cached_property
    def canonical_form(self) -> tuple[Letter, ...]:
        return free_reduce(self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.canonical_form

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return Word(invert(self.letters) * (-n))
        return Word(self.letters * n)

    def inverse(self) -> "Word":
        return Word(invert(self.letters))

    def reduced(self) -> "Word":
        return Word(self.canonical_form)

    def cyclically_reduced(self) -> "Word":
        return Word(cyclic_reduce(self.letters))

    def conjugacy_class_key(self) -> tuple[Letter, ...]:
        return conjugacy_key(self.letters)

    def primitive_root(self) -> tuple["Word", int]:
        """Smallest-period root of the cyclic reduction: w ~ root**m.

        Periodicity is detected on the freely reduced cyclic word, which is
        the honest notion for conjugacy classes (the words we feed in are
        short enough that free primitivity and group primitivity agree).
        """
        core = cyclic_reduce(self.letters)
        n = len(core)
        if n == 0:
            return Word(), 1
        for p in range(1, n + 1):
            if n % p == 0 and core == core[:p] * (n // p):
                return Word(core[:p]), n // p
        return Word(core), 1  # pragma: no cover

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"


def generator_name(index: int) -> str:
    return ("a" if index % 2 == 0 else "b") + str(index // 2 + 1)


def format_word(word: Word) -> str:
    if not word.letters:
        return "1"
    parts = []
    for idx, sign in word.letters:
        name = generator_name(idx)
        parts.append(name if sign > 0 else name.upper())
    return "".join(parts)


def parse_word(text: str) -> Word:
    """Inverse of :func:`format_word`; "1" or "" is the identity."""
    text = text.strip()
    if text in ("", "1"):
        return Word()
    letters = []
    pos = 0
    for m in _LETTER_RE.finditer(text):
        if m.start() != pos:
            raise ValueError(f"cannot parse word {text!r} at offset {pos}")
        pos = m.end()
        char, num = m.group(1), int(m.group(2))
        idx = 2 * (num - 1) + (0 if char.lower() == "a" else 1)
        letters.append((idx, 1 if char.islower() else -1))
    if pos != len(text):
        raise ValueError(f"cannot parse word {text!r} at offset {pos}")
    return Word(letters)


@dataclass(frozen=True)
class SurfaceGroup:
    """Presentation data for pi_1 of a closed oriented genus-g surface,
    g >= 2: generators a1, b1, ..., ag, bg and the single relator
    prod_i [a_i, b_i]."""

    genus: int
    generators: tuple[str, ...] = field(init=False)
    relator: Word = field(init=False)

    def __post_init__(self):
        if self.genus < 2:
            raise ValueError("surface group needs genus >= 2")
        names = tuple(generator_name(i) for i in range(2 * self.genus))
        letters = []
        for i in range(self.genus):
            a, b = 2 * i, 2 * i + 1
            letters += [(a, 1), (b, 1), (a, -1), (b, -1)]
        object.__setattr__(self, "generators", names)
        object.__setattr__(self, "relator", Word(letters))

    @property
    def rank(self) -> int:
        return 2 * self.genus

    @property
    def dim_complex(self) -> int:
        """Dimension 6g-6 = -3 chi(S) of the character variety."""
        return 6 * self.genus - 6

    def gen(self, index: int) -> Word:
        if not 0 <= index < self.rank:
            raise ValueError(f"generator index {index} out of range")
        return Word([(index, 1)])

    def word(self, text: str) -> Word:
        w = parse_word(text)
        for idx, _ in w.letters:
            if idx >= self.rank:
                raise ValueError(f"word {text!r} uses generators beyond genus {self.genus}")
        return w


def embedding_set(group: SurfaceGroup, n: int | None = None, *,
                  dedup: bool = True,
                  include_inverse_letters: bool = True) -> list[Word]:
    """All nonempty freely reduced words of length <= n over the generators
    (and their inverses, unless ``include_inverse_letters`` is False).

    With ``dedup`` (the default) one representative is kept per orbit under
    inversion and cyclic rotation, since traces cannot tell those apart; the
    representative is the lexicographically least orbit member, and the
    returned list is sorted by (length, letters) so indices are stable.
    The full redundant set is available with ``dedup=False``.

    ``n`` defaults to the generating-set size 2g.
    """
    if n is None:
        n = group.rank
    if n < 1:
        raise ValueError("need n >= 1")
    signs = (1, -1) if include_inverse_letters else (1,)
    alphabet = [(i, s) for i in range(group.rank) for s in signs]

    words: list[tuple[Letter, ...]] = []
    frontier: list[tuple[Letter, ...]] = [()]
    for _ in range(n):
        nxt = []
        for prefix in frontier:
            for letter in alphabet:
                if prefix and prefix[-1][0] == letter[0] and prefix[-1][1] == -letter[1]:
                    continue  # keep words freely reduced as they grow
                nxt.append(prefix + (letter,))
        words.extend(nxt)
        frontier = nxt

    if not dedup:
        return [Word(w) for w in words]
    seen: dict[tuple[Letter, ...], tuple[Letter, ...]] = {}
    for w in words:
        key = conjugacy_key(w)
        if not key:
            continue
        if key not in seen or (len(w), _letter_order(w)) < (len(seen[key]), _letter_order(seen[key])):
            seen[key] = w
    return [Word(w) for w in sorted(seen.values(), key=lambda w: (len(w), _letter_order(w)))]


def export_words(words, path) -> None:
    """Newline-delimited ASCII dump of a word list."""
    with open(path, "w") as fh:
        for w in words:
            fh.write(format_word(w) + "\n")
