"""Reference enumeration kernels in plain Python.

Mirrors ``_kernels.pyx`` exactly (same arguments, results and DFS order) and
is used whenever the compiled module is unavailable. Direction codes follow
``MoveDirection`` order (Up, Down, Left, Right); Eater action codes are
0 = EatG1, 1 = EatG2, 2 = EatHalf; Eater policy codes are 0 = equilibrium,
1 = half-half.
"""

from itertools import product

from .errors import BoundsExceeded

_DX = (0, 0, -1, 1)
_DY = (1, -1, 0, 0)

EATER_EQUILIBRIUM = 0
EATER_HALF_HALF = 1


def _respond(eater_code, x, y, nx, ny, b1, b2, g1x, g1y, g2x, g2y):
    d1o = abs(x - g1x) + abs(y - g1y)
    d2o = abs(x - g2x) + abs(y - g2y)
    d1n = abs(nx - g1x) + abs(ny - g1y)
    d2n = abs(nx - g2x) + abs(ny - g2y)
    if d1n - d1o == d2n - d2o:
        if eater_code == EATER_EQUILIBRIUM:
            dc = (b1 - b2) + 2 * (d1n - d2n)
            if dc < 0:
                return b1 + 2, b2
            if dc > 0:
                return b1, b2 + 2
        return b1 + 1, b2 + 1
    if d1n < d1o:
        return b1 + 2, b2
    return b1, b2 + 2


def mover_search(x0, y0, b1, b2, g1x, g1y, g2x, g2y, true_goal, max_len, eater_code, budget):
    """Enumerate every path of length <= max_len that first touches the true
    goal at its last step, played against a built-in Eater.

    Returns ``(paths_checked, min_true_goal_consumption, argmin_path)``; ties
    keep the first path in Up/Down/Left/Right DFS order.
    """
    gx, gy = (g1x, g1y) if true_goal == 1 else (g2x, g2y)
    if x0 == gx and y0 == gy:
        return 1, (b1 if true_goal == 1 else b2), []
    state = {"count": 0, "best": None, "best_path": []}
    path = []

    def rec(x, y, c1, c2, depth):
        for code in range(4):
            nx = x + _DX[code]
            ny = y + _DY[code]
            n1, n2 = _respond(eater_code, x, y, nx, ny, c1, c2, g1x, g1y, g2x, g2y)
            if nx == gx and ny == gy:
                state["count"] += 1
                if state["count"] > budget:
                    raise BoundsExceeded(
                        f"more than {budget} Mover paths", checked=state["count"] - 1
                    )
                payoff = n1 if true_goal == 1 else n2
                if state["best"] is None or payoff < state["best"]:
                    state["best"] = payoff
                    state["best_path"] = path + [code]
            elif depth + 1 + abs(nx - gx) + abs(ny - gy) <= max_len:
                path.append(code)
                rec(nx, ny, n1, n2, depth + 1)
                path.pop()

    rec(x0, y0, b1, b2, 0)
    if state["best"] is None:
        raise ValueError("no goal-reaching path within max_len")
    return state["count"], state["best"], state["best_path"]


def eater_prefix_search(b1, b2, moves1, moves2, budget):
    """Best worst-case Eater payoff against two fixed, consumption-blind Mover paths.

    While the two move sequences agree the games are indistinguishable and a
    single Eater action applies to both; those 3**L shared prefixes are
    enumerated. After the split each game is finished greedily (always eat the
    goal being played), which is optimal because the paths ignore consumption.

    Returns ``(leaves, best, actions1, actions2)``.
    """
    n1, n2 = len(moves1), len(moves2)
    common = 0
    while common < n1 and common < n2 and moves1[common] == moves2[common]:
        common += 1
    if 3 ** common > budget:
        raise BoundsExceeded(f"3**{common} Eater prefixes exceed budget {budget}", checked=0)
    r1, r2 = n1 - common, n2 - common
    best = None
    best_prefix = ()
    count = 0
    for prefix in product(range(3), repeat=common):
        c1, c2 = b1, b2
        for a in prefix:
            if a == 0:
                c1 += 2
            elif a == 1:
                c2 += 2
            else:
                c1 += 1
                c2 += 1
        count += 1
        worst = min(c1 + 2 * r1, c2 + 2 * r2)
        if best is None or worst > best:
            best = worst
            best_prefix = prefix
    return (
        count,
        best,
        list(best_prefix) + [0] * r1,
        list(best_prefix) + [1] * r2,
    )
