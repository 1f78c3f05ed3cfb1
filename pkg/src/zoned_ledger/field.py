"""Prime field arithmetic and Lagrange interpolation.

Elements are plain Python ints reduced modulo the field prime; the
``Field`` object carries the modulus so values stay lightweight.
"""

from .errors import ConfigurationError

# Deterministic Miller-Rabin witnesses, valid for all n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    c = n + 1 if n % 2 == 0 else n + 2
    if n < 2:
        return 2
    while not is_prime(c):
        c += 2
    return c


class Field:
    """Arithmetic context for GF(modulus) with modulus prime."""

    def __init__(self, modulus: int):
        if modulus < 2 or not is_prime(modulus):
            raise ConfigurationError(f"field modulus must be prime >= 2, got {modulus}")
        self.modulus = modulus

    def __eq__(self, other):
        return isinstance(other, Field) and other.modulus == self.modulus

    def __repr__(self):
        return f"Field({self.modulus})"

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.modulus

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.modulus

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.modulus

    def inv(self, a: int) -> int:
        if a % self.modulus == 0:
            raise ZeroDivisionError("no inverse of 0")
        return pow(a, -1, self.modulus)

    def rand(self, rng) -> int:
        return rng.randrange(self.modulus)

    def eval_poly(self, coeffs, x: int) -> int:
        """Evaluate sum(coeffs[i] * x^i) by Horner's rule."""
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % self.modulus
        return acc

    def lagrange_interpolate(self, points, x0: int) -> int:
        """Value at x0 of the unique degree-(len-1) polynomial through points.

        points is a sequence of (x, y) pairs with distinct x.
        """
        if not points:
            raise ValueError("need at least one point")
        xs = [x % self.modulus for x, _ in points]
        if len(set(xs)) != len(xs):
            raise ValueError("duplicate abscissa in interpolation points")
        mod = self.modulus
        total = 0
        for i, (xi, yi) in enumerate(points):
            num, den = 1, 1
            for j, (xj, _) in enumerate(points):
                if i == j:
                    continue
                num = num * (x0 - xj) % mod
                den = den * (xi - xj) % mod
            total = (total + yi * num * pow(den, -1, mod)) % mod
        return total
