"""Independent dense-array reference implementation.

Series with support in Z within a window [0, size) are plain coefficient
lists: Fractions for Q, residues for F_p.  Deliberately self-contained --
nothing here imports the package under test, so differential comparisons
are meaningful.
"""

from fractions import Fraction


class DenseField:
    """Q when p is None, else F_p, on raw Python values."""

    def __init__(self, p=None):
        self.p = p

    def val(self, x):
        return Fraction(x) if self.p is None else x % self.p

    def zero(self):
        return self.val(0)

    def add(self, a, b):
        return self.val(a + b)

    def neg(self, a):
        return self.val(-a)

    def mul(self, a, b):
        return self.val(a * b)

    def inv(self, a):
        if self.p is None:
            return Fraction(1) / a
        return pow(a, -1, self.p)

    def nonzero(self, a):
        return self.val(a) != self.zero()


def dense(pairs, size, fld):
    out = [fld.zero()] * size
    for e, c in pairs:
        if 0 <= e < size:
            out[e] = fld.add(out[e], c)
    return out


def dense_add(a, b, fld):
    return [fld.add(x, y) for x, y in zip(a, b)]


def dense_neg(a, fld):
    return [fld.neg(x) for x in a]


def dense_mul(a, b, fld):
    out = [fld.zero()] * len(a)
    for i, x in enumerate(a):
        if not fld.nonzero(x):
            continue
        for j, y in enumerate(b):
            if i + j >= len(a):
                break
            out[i + j] = fld.add(out[i + j], fld.mul(x, y))
    return out


def dense_trunc(a, cutoff, fld, inclusive=False):
    keep = cutoff + 1 if inclusive else cutoff
    return [x if i < keep else fld.zero() for i, x in enumerate(a)]


def dense_inv(a, fld):
    """Power series inverse; requires a nonzero constant term."""
    if not fld.nonzero(a[0]):
        raise ZeroDivisionError("dense inverse needs a unit constant term")
    c0 = fld.inv(a[0])
    out = [fld.zero()] * len(a)
    out[0] = c0
    for n in range(1, len(a)):
        s = fld.zero()
        for k in range(1, n + 1):
            s = fld.add(s, fld.mul(a[k], out[n - k]))
        out[n] = fld.neg(fld.mul(c0, s))
    return out


def dense_vmin(a, fld):
    for i, x in enumerate(a):
        if fld.nonzero(x):
            return i
    return None


def dense_support(a, fld):
    return [i for i, x in enumerate(a) if fld.nonzero(x)]


def dense_pairs(a, fld):
    return [(i, fld.val(x)) for i, x in enumerate(a) if fld.nonzero(x)]


# ---------------------------------------------------------------------------
# neutral expression trees, interpreted by both implementations

def eval_dense(expr, size, fld):
    kind = expr[0]
    if kind == "lit":
        return dense(expr[1], size, fld)
    if kind == "add":
        return dense_add(eval_dense(expr[1], size, fld), eval_dense(expr[2], size, fld), fld)
    if kind == "neg":
        return dense_neg(eval_dense(expr[1], size, fld), fld)
    if kind == "mul":
        return dense_mul(eval_dense(expr[1], size, fld), eval_dense(expr[2], size, fld), fld)
    if kind == "trunc":
        return dense_trunc(eval_dense(expr[1], size, fld), expr[2], fld)
    if kind == "inv":
        return dense_inv(eval_dense(expr[1], size, fld), fld)
    raise ValueError(f"unknown expression node {kind}")


def random_expression(rng, depth=0):
    """Random tree over exponents [0, 40]; inverse nodes always get a
    child with constant term 1 so both implementations accept them."""
    if depth >= 3 or rng.random() < 0.35:
        pairs = [
            (rng.randint(0, 40), rng.randint(-5, 5))
            for _ in range(rng.randint(1, 5))
        ]
        return ("lit", pairs)
    op = rng.choice(["add", "mul", "neg", "trunc", "inv", "add", "mul"])
    if op in ("add", "mul"):
        return (op, random_expression(rng, depth + 1), random_expression(rng, depth + 1))
    if op == "neg":
        return (op, random_expression(rng, depth + 1))
    if op == "trunc":
        return (op, random_expression(rng, depth + 1), rng.randint(0, 41))
    shifted = ("mul", ("lit", [(1, 1)]), random_expression(rng, depth + 1))
    return ("inv", ("add", ("lit", [(0, 1)]), shifted))
