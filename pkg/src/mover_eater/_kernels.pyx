# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; same contract as ``_kernels_py``."""

from libc.stdlib cimport abs as iabs

from .errors import BoundsExceeded

cdef enum:
    MAX_DEPTH = 1024

cdef int DX[4]
cdef int DY[4]
DX[:] = [0, 0, -1, 1]
DY[:] = [1, -1, 0, 0]

EATER_EQUILIBRIUM = 0
EATER_HALF_HALF = 1


cdef struct Search:
    int g1x, g1y, g2x, g2y, gx, gy
    int true_goal, max_len, eater_code
    long long budget, count
    int has_best, best, best_len
    int path[MAX_DEPTH]
    int best_path[MAX_DEPTH]


cdef inline void respond(Search* s, int x, int y, int nx, int ny,
                         int b1, int b2, int* o1, int* o2) nogil:
    cdef int d1o = iabs(x - s.g1x) + iabs(y - s.g1y)
    cdef int d2o = iabs(x - s.g2x) + iabs(y - s.g2y)
    cdef int d1n = iabs(nx - s.g1x) + iabs(ny - s.g1y)
    cdef int d2n = iabs(nx - s.g2x) + iabs(ny - s.g2y)
    cdef int dc
    if d1n - d1o == d2n - d2o:
        if s.eater_code == 0:
            dc = (b1 - b2) + 2 * (d1n - d2n)
            if dc < 0:
                o1[0] = b1 + 2; o2[0] = b2
                return
            if dc > 0:
                o1[0] = b1; o2[0] = b2 + 2
                return
        o1[0] = b1 + 1; o2[0] = b2 + 1
    elif d1n < d1o:
        o1[0] = b1 + 2; o2[0] = b2
    else:
        o1[0] = b1; o2[0] = b2 + 2


# Returns 1 when the budget is blown, 0 otherwise.
cdef int rec(Search* s, int x, int y, int c1, int c2, int depth) nogil:
    cdef int code, nx, ny, n1, n2, payoff, i
    for code in range(4):
        nx = x + DX[code]
        ny = y + DY[code]
        respond(s, x, y, nx, ny, c1, c2, &n1, &n2)
        if nx == s.gx and ny == s.gy:
            s.count += 1
            if s.count > s.budget:
                return 1
            payoff = n1 if s.true_goal == 1 else n2
            if not s.has_best or payoff < s.best:
                s.has_best = 1
                s.best = payoff
                for i in range(depth):
                    s.best_path[i] = s.path[i]
                s.best_path[depth] = code
                s.best_len = depth + 1
        elif depth + 1 + iabs(nx - s.gx) + iabs(ny - s.gy) <= s.max_len:
            s.path[depth] = code
            if rec(s, nx, ny, n1, n2, depth + 1):
                return 1
    return 0


def mover_search(int x0, int y0, int b1, int b2, int g1x, int g1y, int g2x, int g2y,
                 int true_goal, int max_len, int eater_code, long long budget):
    cdef Search s
    cdef int blown
    s.g1x = g1x; s.g1y = g1y; s.g2x = g2x; s.g2y = g2y
    if true_goal == 1:
        s.gx = g1x; s.gy = g1y
    else:
        s.gx = g2x; s.gy = g2y
    if x0 == s.gx and y0 == s.gy:
        return 1, (b1 if true_goal == 1 else b2), []
    if max_len >= MAX_DEPTH:
        raise ValueError(f"max_len must be below {MAX_DEPTH}")
    s.true_goal = true_goal
    s.max_len = max_len
    s.eater_code = eater_code
    s.budget = budget
    s.count = 0
    s.has_best = 0
    s.best = 0
    s.best_len = 0
    with nogil:
        blown = rec(&s, x0, y0, b1, b2, 0)
    if blown:
        raise BoundsExceeded(f"more than {budget} Mover paths", checked=s.count - 1)
    if not s.has_best:
        raise ValueError("no goal-reaching path within max_len")
    return s.count, s.best, [s.best_path[i] for i in range(s.best_len)]


def eater_prefix_search(int b1, int b2, moves1, moves2, long long budget):
    cdef int n1 = len(moves1), n2 = len(moves2)
    cdef int common = 0
    while common < n1 and common < n2 and moves1[common] == moves2[common]:
        common += 1
    if 3 ** common > budget:
        raise BoundsExceeded(f"3**{common} Eater prefixes exceed budget {budget}", checked=0)
    cdef int r1 = n1 - common, r2 = n2 - common
    cdef long long leaves = 1, leaf, rest, count = 0
    cdef int i, a, c1, c2, worst, best = 0, has_best = 0
    cdef long long best_leaf = 0
    for i in range(common):
        leaves *= 3
    # Leaf index digits, most significant first, give the action sequence in
    # the same lexicographic order as itertools.product.
    for leaf in range(leaves):
        c1 = b1
        c2 = b2
        rest = leaf
        for i in range(common):
            a = rest % 3
            rest //= 3
            if a == 0:
                c1 += 2
            elif a == 1:
                c2 += 2
            else:
                c1 += 1
                c2 += 1
        count += 1
        worst = c1 + 2 * r1
        if c2 + 2 * r2 < worst:
            worst = c2 + 2 * r2
        if not has_best or worst > best:
            has_best = 1
            best = worst
            best_leaf = leaf
    prefix = []
    rest = best_leaf
    for i in range(common):
        prefix.append(rest % 3)
        rest //= 3
    prefix.reverse()
    return count, best, prefix + [0] * r1, prefix + [1] * r2
