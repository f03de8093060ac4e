"""
Reduced words in the free group F_k.

A word is a tuple of nonzero ints: +i is the generator s_i, -i its inverse
(1-based). Words are printed with letters a, b, c, ... and capitals for
inverses; the identity prints as "e".
"""
import string

from ...lib.errors import ParameterError

Word = tuple[int, ...]

IDENTITY: Word = ()


def letters(k: int) -> list[int]:
    """The 2k generators s_1, s_1^-1, ..., s_k, s_k^-1."""
    if k < 1:
        raise ParameterError(f"free group rank must be >= 1, got {k}")
    if k > len(string.ascii_lowercase):
        raise ParameterError(f"rank {k} exceeds the {len(string.ascii_lowercase)} printable letters")
    return [x for i in range(1, k + 1) for x in (i, -i)]


def reduce(word) -> Word:
    out: list[int] = []
    for x in word:
        if x == 0:
            raise ParameterError("0 is not a generator")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(int(x))
    return tuple(out)


def multiply(a: Word, b: Word) -> Word:
    return reduce(a + b)


def inverse(word: Word) -> Word:
    return tuple(-x for x in reversed(word))


def rank_of(word: Word) -> int:
    return max((abs(x) for x in word), default=0)


def format_word(word: Word) -> str:
    if not word:
        return "e"
    chars = []
    for x in word:
        c = string.ascii_lowercase[abs(x) - 1]
        chars.append(c if x > 0 else c.upper())
    return "".join(chars)


def parse_word(text: str) -> Word:
    """Inverse of format_word; the result is reduced."""
    text = text.strip()
    if text in ("", "e"):
        return IDENTITY
    word = []
    for c in text:
        if c.lower() not in string.ascii_lowercase:
            raise ParameterError(f"invalid letter {c!r} in word {text!r}")
        i = string.ascii_lowercase.index(c.lower()) + 1
        word.append(i if c.islower() else -i)
    return reduce(word)
