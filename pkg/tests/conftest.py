import random

import pytest

from roughmat import BoolMatrix, Covering, SetFamily, Universe, validate_covering

from brute import random_covering_blocks

# 6x6 type-2 matrix printed for the worked covering example
PRINTED_PI = BoolMatrix.from_strings(
    "100000",
    "110000",
    "101100",
    "000100",
    "000111",
    "000111",
)

# 5x5 input of the worked decomposition example
PRINTED_B = BoolMatrix.from_strings(
    "11010",
    "11010",
    "00110",
    "11110",
    "00000",
)

# edges of the 6-vertex instance where the maximal sub-formulas are not minimal
COUNTER_EDGES = [(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5), (1, 5), (1, 6), (5, 6)]


def counterexample_matrix() -> BoolMatrix:
    rows = [[0] * 6 for _ in range(6)]
    for i in range(6):
        rows[i][i] = 1
    for a, b in COUNTER_EDGES:
        rows[a - 1][b - 1] = rows[b - 1][a - 1] = 1
    return BoolMatrix.from_rows(rows)


def example_covering() -> Covering:
    return validate_covering(SetFamily.of("abcdef", ["ab", "acd", "abcd", "def"]))


@pytest.fixture
def cov():
    return example_covering()


def random_coverings(count: int, seed: int, n_range=(2, 7), block_range=(2, 6)):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(*n_range)
        k = rng.randint(*block_range)
        u = Universe.of([chr(ord("a") + i) for i in range(n)])
        out.append(Covering(u, tuple(random_covering_blocks(rng, n, k))))
    return out


# acceptance bookkeeping: criterion number -> (description, passed)
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        desc, ok = ACCEPTANCE[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {num:2d}. {desc}")
