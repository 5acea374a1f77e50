"""Reference data sets transcribed verbatim, one set per line, and the
checks that recompute and diff them."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import gf
from .binder import golden_d, pair_extension_count
from .symplectic import SymplecticSpace, enumerate_lagrangians, lagrangian_spread

# the 15 Lagrangian subspaces of F_2^4; the first five form a spread
LAGRANGIANS_J2 = """
0000 0010 1000 1010
0000 0011 1100 1111
0000 0111 1001 1110
0000 0110 1011 1101
0000 0001 0100 0101
0000 0001 1000 1001
0000 0001 1100 1101
0000 0010 0100 0110
0000 0010 1100 1110
0000 0011 0100 0111
0000 0011 1000 1011
0000 0101 1010 1111
0000 0101 1011 1110
0000 0110 1001 1111
0000 0111 1010 1101
"""

# extensions of the pair (0000, 1111) inside the plus quadric at J = 2
PAIR_EXTENSIONS_J2 = """
0001 0010
0100 1000
"""

# extensions of the pair (000000, 001111) inside the plus quadric at J = 3
PAIR_EXTENSIONS_J3 = """
000001 000010 110111 111011
000001 010010 100010 111110
000010 010001 100001 111101
000100 001000 111101 111110
000100 011000 101000 111011
001000 010100 100100 110111
010001 010010 100100 101000
010100 011000 100001 100010
"""

# full blocks through 00000000 and 11111111 inside the plus quadric at J = 4
PAIR_BLOCKS_J4 = """
00000000 00000001 00000010 00011111 00101111 01110011 10110011 11000111 11001011 11111111
00000000 00000001 00000010 00110111 00111011 01001111 10001111 11010011 11100011 11111111
00000000 00000001 00010110 00011010 00101111 01100010 10100010 11001110 11010011 11111111
00000000 00000001 00010110 00100110 00111011 01001010 10001010 11000111 11110010 11111111
00000000 00000001 00011010 00101010 00110111 01000110 10000110 11001011 11110010 11111111
00000000 00000001 00011111 00100110 00101010 01010010 10010010 11001110 11100011 11111111
00000000 00000001 00111110 01000110 01001010 01110011 10001111 10010010 10100010 11111111
00000000 00000001 00111110 01001111 01010010 01100010 10000110 10001010 10110011 11111111
00000000 00000010 00010101 00011001 00101111 01100001 10100001 11001101 11010011 11111111
00000000 00000010 00010101 00100101 00111011 01001001 10001001 11000111 11110001 11111111
00000000 00000010 00011001 00101001 00110111 01000101 10000101 11001011 11110001 11111111
00000000 00000010 00011111 00100101 00101001 01010001 10010001 11001101 11100011 11111111
00000000 00000010 00111101 01000101 01001001 01110011 10001111 10010001 10100001 11111111
00000000 00000010 00111101 01001111 01010001 01100001 10000101 10001001 10110011 11111111
00000000 00000100 00001000 00011111 00101111 01111100 10111100 11001101 11001110 11111111
00000000 00000100 00001000 00111101 00111110 01001111 10001111 11011100 11101100 11111111
00000000 00000100 00011001 00011010 00101111 01101000 10101000 11001011 11011100 11111111
00000000 00000100 00011001 00101001 00111110 01001010 10001010 11001101 11111000 11111111
00000000 00000100 00011010 00101010 00111101 01001001 10001001 11001110 11111000 11111111
00000000 00000100 00011111 00101001 00101010 01011000 10011000 11001011 11101100 11111111
00000000 00000100 00111011 01001001 01001010 01111100 10001111 10011000 10101000 11111111
00000000 00000100 00111011 01001111 01011000 01101000 10001001 10001010 10111100 11111111
00000000 00001000 00010101 00010110 00101111 01100100 10100100 11000111 11011100 11111111
00000000 00001000 00010101 00100101 00111110 01000110 10000110 11001101 11110100 11111111
00000000 00001000 00010110 00100110 00111101 01000101 10000101 11001110 11110100 11111111
00000000 00001000 00011111 00100101 00100110 01010100 10010100 11000111 11101100 11111111
00000000 00001000 00110111 01000101 01000110 01111100 10001111 10010100 10100100 11111111
00000000 00001000 00110111 01001111 01010100 01100100 10000101 10000110 10111100 11111111
00000000 00010000 00100000 00110111 00111011 01111100 10111100 11110001 11110010 11111111
00000000 00010000 00100000 00111101 00111110 01110011 10110011 11110100 11111000 11111111
00000000 00010000 00100101 00100110 00111011 01101000 10101000 11100011 11110100 11111111
00000000 00010000 00100101 00101001 00111110 01100010 10100010 11101100 11110001 11111111
00000000 00010000 00100110 00101010 00111101 01100001 10100001 11101100 11110010 11111111
00000000 00010000 00101001 00101010 00110111 01100100 10100100 11100011 11111000 11111111
00000000 00010000 00101111 01100001 01100010 01111100 10100100 10101000 10110011 11111111
00000000 00010000 00101111 01100100 01101000 01110011 10100001 10100010 10111100 11111111
00000000 00010101 00010110 00100000 00111011 01011000 10011000 11010011 11110100 11111111
00000000 00010101 00011001 00100000 00111110 01010010 10010010 11011100 11110001 11111111
00000000 00010101 00101010 01000110 01011000 01100001 10001001 10010010 10100100 11111111
00000000 00010101 00101010 01001001 01010010 01100100 10000110 10011000 10100001 11111111
00000000 00010110 00011010 00100000 00111101 01010001 10010001 11011100 11110010 11111111
00000000 00010110 00101001 01000101 01011000 01100010 10001010 10010001 10100100 11111111
00000000 00010110 00101001 01001010 01010001 01100100 10000101 10011000 10100010 11111111
00000000 00011001 00011010 00100000 00110111 01010100 10010100 11010011 11111000 11111111
00000000 00011001 00100110 01000101 01010010 01101000 10001010 10010100 10100001 11111111
00000000 00011001 00100110 01001010 01010100 01100001 10000101 10010010 10101000 11111111
00000000 00011010 00100101 01000110 01010001 01101000 10001001 10010100 10100010 11111111
00000000 00011010 00100101 01001001 01010100 01100010 10000110 10010001 10101000 11111111
00000000 00011111 00100000 01010001 01010010 01111100 10010100 10011000 10110011 11111111
00000000 00011111 00100000 01010100 01011000 01110011 10010001 10010010 10111100 11111111
00000000 01000000 10000000 11000111 11001011 11011100 11101100 11110001 11110010 11111111
00000000 01000000 10000000 11001101 11001110 11010011 11100011 11110100 11111000 11111111
00000000 01000000 10000101 10000110 10011000 10101000 10110011 11001011 11110100 11111111
00000000 01000000 10000101 10001001 10010010 10100010 10111100 11001110 11110001 11111111
00000000 01000000 10000110 10001010 10010001 10100001 10111100 11001101 11110010 11111111
00000000 01000000 10001001 10001010 10010100 10100100 10110011 11000111 11111000 11111111
00000000 01000000 10001111 10010001 10010010 10100100 10101000 11011100 11100011 11111111
00000000 01000000 10001111 10010100 10011000 10100001 10100010 11010011 11101100 11111111
00000000 01000101 01000110 01011000 01101000 01110011 10000000 11001011 11110100 11111111
00000000 01000101 01001001 01010010 01100010 01111100 10000000 11001110 11110001 11111111
00000000 01000110 01001010 01010001 01100001 01111100 10000000 11001101 11110010 11111111
00000000 01001001 01001010 01010100 01100100 01110011 10000000 11000111 11111000 11111111
00000000 01001111 01010001 01010010 01100100 01101000 10000000 11011100 11100011 11111111
00000000 01001111 01010100 01011000 01100001 01100010 10000000 11010011 11101100 11111111
"""


def parse_sets(text: str) -> list[tuple[str, ...]]:
    return [tuple(line.split()) for line in text.strip().splitlines()]


@dataclass
class GoldenResult:
    fixture: str
    expected: int
    computed: int
    missing: list[tuple[str, ...]] = field(default_factory=list)
    extra: list[tuple[str, ...]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.missing and not self.extra and self.expected == self.computed

    def summary(self) -> str:
        verdict = "pass" if self.ok else "FAIL"
        matched = self.expected - len(self.missing)
        return f"{self.fixture}: {verdict}, {matched}/{self.expected} sets equal, {len(self.extra)} unexpected"


def _diff(fixture: str, expected: list[tuple[str, ...]], computed: list[tuple[str, ...]]) -> GoldenResult:
    exp = {frozenset(s) for s in expected}
    got = {frozenset(s) for s in computed}
    if len(exp) != len(expected):
        raise ValueError(f"fixture {fixture} repeats a set")
    order = lambda s: sorted(s)  # noqa: E731
    return GoldenResult(
        fixture,
        len(expected),
        len(computed),
        sorted((tuple(order(s)) for s in exp - got)),
        sorted((tuple(order(s)) for s in got - exp)),
    )


def _lagrangians_j2() -> GoldenResult:
    space = SymplecticSpace(2, 2)
    computed = [tuple(space.render(v) for v in lag.sorted_elements()) for lag in enumerate_lagrangians(space)]
    return _diff("lagrangians-j2", parse_sets(LAGRANGIANS_J2), computed)


def _spread_j2() -> GoldenResult:
    space = SymplecticSpace(2, 2)
    computed = [tuple(space.render(v) for v in line.sorted_elements()) for line in lagrangian_spread(space).lines]
    return _diff("spread-j2", parse_sets(LAGRANGIANS_J2)[:5], computed)


def _pair(J: int, other: str, full: bool) -> list[tuple[str, ...]]:
    res = pair_extension_count("psi-d-hat", J, (0, gf.parse(other)), golden_d(J))
    return [tuple(b) for b in (res.rendered_blocks() if full else res.rendered_extensions())]


FIXTURES = {
    "lagrangians-j2": _lagrangians_j2,
    "spread-j2": _spread_j2,
    "tremain-j2-lambda": lambda: _diff("tremain-j2-lambda", parse_sets(PAIR_EXTENSIONS_J2), _pair(2, "1111", False)),
    "tremain-j3-lambda": lambda: _diff("tremain-j3-lambda", parse_sets(PAIR_EXTENSIONS_J3), _pair(3, "001111", False)),
    "tremain-j4-lambda": lambda: _diff("tremain-j4-lambda", parse_sets(PAIR_BLOCKS_J4), _pair(4, "11111111", True)),
}


def golden_check(fixture: str) -> GoldenResult:
    try:
        run = FIXTURES[fixture]
    except KeyError:
        raise KeyError(f"unknown fixture {fixture!r}; choose from {sorted(FIXTURES)}") from None
    return run()
