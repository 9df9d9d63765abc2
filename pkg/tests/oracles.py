"""Independent reference arithmetic for tests.

Plain Python lists and complex numbers, no numpy linear algebra, so the
checks do not share code paths with the package.
"""

import cmath
import math

SX = [[0, 0.5], [0.5, 0]]
SY = [[0, -0.5j], [0.5j, 0]]
SZ = [[0.5, 0], [0, -0.5]]
I2 = [[1, 0], [0, 1]]


def scale(c, a):
    return [[c * x for x in row] for row in a]


def add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def matvec(a, v):
    return [sum(a[i][k] * v[k] for k in range(len(v))) for i in range(len(a))]


def comm(a, b):
    return add(matmul(a, b), scale(-1, matmul(b, a)))


def expval(a, v):
    av = matvec(a, v)
    return sum(x.conjugate() * y for x, y in zip(map(complex, v), av))


def var(a, v):
    m = expval(a, v).real
    return expval(matmul(a, a), v).real - m * m


def max_abs_diff(a, b):
    return max(abs(complex(x) - complex(y)) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def larmor_state(t):
    """exp(i S_z t) |+x>, the exact evolution under H = -S_z with hbar = 1."""
    r = 1 / math.sqrt(2)
    return [r * cmath.exp(0.5j * t), r * cmath.exp(-0.5j * t)]
