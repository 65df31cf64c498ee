"""Pure-Python reference checks, written independently of the package code paths."""

from itertools import product


def valid_by_definition(colors, c, k):
    """colors: sequence of 'R'/'B' for 1..n. Checks every (x, y) pair, both orders."""
    n = len(colors)
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            for shift, col in ((c, "R"), (k, "B")):
                z = x + y + shift
                if z <= n and colors[x - 1] == colors[y - 1] == colors[z - 1] == col:
                    return False
    return True


def any_valid_coloring(c, k, n):
    return any(valid_by_definition(cols, c, k) for cols in product("RB", repeat=n))


def rado_by_enumeration(c, k, n_cap):
    for n in range(1, n_cap + 1):
        if not any_valid_coloring(c, k, n):
            return n
    return None


def same_parity_pairs(c_max, k_max):
    return [(c, k) for c in range(1, c_max + 1) for k in range(c, k_max + 1) if (k - c) % 2 == 0]
