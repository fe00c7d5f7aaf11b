"""Regenerate the shipped group files in src/engelgraph/data/.

Run from the repository root:  python tools/make_group_files.py

The package never does finite-field arithmetic itself; it loads these
files and re-checks order (and simplicity where flagged) at load time.
"""

from __future__ import annotations

import itertools
import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "engelgraph" / "data"


class GF:
    """GF(p^k) with elements encoded as base-p digit integers."""

    def __init__(self, p: int, modulus: list[int]):
        # modulus: monic coefficients, lowest degree first, e.g. x^3+x+1 -> [1,1,0,1]
        self.p = p
        self.k = len(modulus) - 1
        self.q = p**self.k
        self.modulus = modulus
        self._mul = [[self._slow_mul(a, b) for b in range(self.q)] for a in range(self.q)]
        self._inv = {a: next(b for b in range(1, self.q) if self._mul[a][b] == 1) for a in range(1, self.q)}

    def digits(self, a):
        return [(a // self.p**i) % self.p for i in range(self.k)]

    def from_digits(self, ds):
        return sum((d % self.p) * self.p**i for i, d in enumerate(ds))

    def add(self, a, b):
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a):
        return self.from_digits([-x for x in self.digits(a)])

    def _slow_mul(self, a, b):
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] += x * y
        for deg in range(len(prod) - 1, self.k - 1, -1):
            c = prod[deg] % self.p
            if c:
                for i, m in enumerate(self.modulus):
                    prod[deg - self.k + i] -= c * m
        return self.from_digits(prod[: self.k])

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        return self._inv[a]

    def pow(self, a, e):
        r = 1
        for _ in range(e):
            r = self.mul(r, a)
        return r

    def primitive(self):
        for a in range(2, self.q):
            x, n = a, 1
            while x != 1:
                x, n = self.mul(x, a), n + 1
            if n == self.q - 1:
                return a
        return 1


def psl2_generators(F: GF) -> list[list[int]]:
    """Moebius maps z+1, w^2 z and -1/z on the projective line (infinity = q)."""
    q, inf = F.q, F.q
    w = F.primitive()
    w2 = F.mul(w, w)

    def translate(z):
        return inf if z == inf else F.add(z, 1)

    def scale(z):
        return inf if z == inf else F.mul(w2, z)

    def invert(z):
        if z == inf:
            return 0
        if z == 0:
            return inf
        return F.neg(F.inv(z))

    return [[f(z) for z in range(q + 1)] for f in (translate, scale, invert)]


def matrix_action(F: GF, mats, start) -> list[list[int]]:
    """Permutations induced by ``v -> v M`` on the projective orbit of ``start``."""

    def normalize(v):
        lead = next(x for x in v if x)
        li = F.inv(lead)
        return tuple(F.mul(li, x) for x in v)

    def apply(v, M):
        n = len(v)
        out = []
        for j in range(n):
            s = 0
            for i in range(n):
                s = F.add(s, F.mul(v[i], M[i][j]))
            out.append(s)
        return normalize(out)

    points = [normalize(start)]
    index = {points[0]: 0}
    i = 0
    while i < len(points):
        for M in mats:
            w = apply(points[i], M)
            if w not in index:
                index[w] = len(points)
                points.append(w)
        i += 1
    return [[index[apply(v, M)] for v in points] for M in mats]


def suzuki8_generators() -> list[list[int]]:
    F = GF(2, [1, 1, 0, 1])  # x^3 + x + 1
    sigma = lambda x: F.pow(x, 4)  # noqa: E731  (x -> x^(2^(m+1)), m = 1)
    mul = F.mul
    add = F.add

    def T(a, b):
        sa = sigma(a)
        a2 = mul(a, a)
        return [
            [1, 0, 0, 0],
            [a, 1, 0, 0],
            [b, sa, 1, 0],
            [add(add(mul(a2, sa), mul(a, b)), sigma(b)), add(mul(a, sa), b), a, 1],
        ]

    w = F.primitive()
    wi = F.inv(w)
    D = [[F.pow(w, 3), 0, 0, 0], [0, F.pow(w, 2), 0, 0], [0, 0, F.pow(wi, 2), 0], [0, 0, 0, F.pow(wi, 3)]]
    W = [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]
    mats = [T(1, 0), T(w, 0), T(0, 1), D, W]
    return matrix_action(F, mats, (0, 0, 0, 1))


def sl2_3_generators() -> list[list[int]]:
    vecs = [v for v in itertools.product(range(3), repeat=2) if v != (0, 0)]
    index = {v: i for i, v in enumerate(vecs)}
    mats = [[[1, 1], [0, 1]], [[0, 2], [1, 0]]]

    def apply(v, M):
        return tuple((v[0] * M[0][j] + v[1] * M[1][j]) % 3 for j in range(2))

    return [[index[apply(v, M)] for v in vecs] for M in mats]


def q8_generators() -> list[list[int]]:
    # quaternion units as (sign, axis) with axis 0=1, 1=i, 2=j, 3=k
    table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elems = [(s, a) for s in (1, -1) for a in range(4)]
    index = {e: i for i, e in enumerate(elems)}

    def times(e, f):
        s, a = table[(e[1], f[1])]
        return (e[0] * f[0] * s, a)

    return [[index[times(e, g)] for e in elems] for g in ((1, 1), (1, 2))]


def cycles(text: str, n: int) -> list[int]:
    images = list(range(n))
    for body in text.strip("()").split(")("):
        pts = [int(p) - 1 for p in body.split(",")]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    return images


def write(stem: str, name: str, gens: list[list[int]], order: int, simple: bool) -> None:
    payload = {
        "name": name,
        "degree": len(gens[0]),
        "generators": gens,
        "expected_order": order,
        "simple": simple,
    }
    text = json.dumps(payload, indent=None, separators=(", ", ": "))
    (OUT / f"{stem}.json").write_text(text + "\n", encoding="utf-8")


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    write("psl2_4", "PSL2(4)", psl2_generators(GF(2, [1, 1, 1])), 60, True)
    write("psl2_8", "PSL2(8)", psl2_generators(GF(2, [1, 1, 0, 1])), 504, True)
    write("psl2_9", "PSL2(9)", psl2_generators(GF(3, [1, 0, 1])), 360, True)
    write("sz8", "Sz(8)", suzuki8_generators(), 29120, True)
    write("m11", "M11", [cycles("(1,2,3,4,5,6,7,8,9,10,11)", 11), cycles("(3,7,11,8)(4,10,5,6)", 11)], 7920, True)
    write("m12", "M12", [
        cycles("(1,2,3,4,5,6,7,8,9,10,11)", 12),
        cycles("(3,7,11,8)(4,10,5,6)", 12),
        cycles("(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)", 12),
    ], 95040, True)
    write("q8", "Q8", q8_generators(), 8, False)
    write("sl2_3", "SL(2,3)", sl2_3_generators(), 24, False)


if __name__ == "__main__":
    main()
