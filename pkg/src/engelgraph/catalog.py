"""Benchmark groups: constructions, shipped data files and the standard list."""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .group import DEFAULT_CLOSURE_LIMIT, Group, enumerate_group
from .perm import Permutation

FAST, SLOW, TARGETED = "fast", "slow", "targeted"
TIERS = (FAST, SLOW, TARGETED)


class GroupFileError(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    """How to build one catalog group.

    ``construction`` is a tuple such as ``("symmetric", 4)``,
    ``("direct", spec_a, spec_b)`` or ``("file", "m11.json")``.  ``family``
    names the simple group (``("alternating", 7)``, ``("psl2", 13)``,
    ``("sporadic", "M11")``, ``("suzuki", 8)``) when there is one.
    """

    name: str
    construction: tuple
    expected_order: int | None = None
    tier: str = FAST
    family: tuple | None = field(default=None, compare=False)


# -- constructions ------------------------------------------------------------


def _perm(images) -> Permutation:
    return Permutation.from_images(images)


def cyclic_gens(n: int) -> list[Permutation]:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    return [_perm([(i + 1) % n for i in range(n)])]


def dihedral_gens(order: int) -> list[Permutation]:
    """Dihedral group of the given order acting on ``order // 2`` points."""
    if order < 6 or order % 2:
        raise ValueError("dihedral order must be even and at least 6")
    m = order // 2
    return [_perm([(i + 1) % m for i in range(m)]), _perm([(-i) % m for i in range(m)])]


def symmetric_gens(n: int) -> list[Permutation]:
    if n < 2:
        raise ValueError("symmetric group needs n >= 2")
    swap = list(range(n))
    swap[0], swap[1] = 1, 0
    return [_perm(swap), _perm([(i + 1) % n for i in range(n)])]


def alternating_gens(n: int) -> list[Permutation]:
    if n < 3:
        raise ValueError("alternating group needs n >= 3")
    return [Permutation.from_cycles(f"(1,2,{k})", n) for k in range(3, n + 1)]


def _primitive_root(p: int) -> int:
    for g in range(2, p):
        if len({pow(g, k, p) for k in range(1, p)}) == p - 1:
            return g
    return 1


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def agl1_gens(p: int) -> list[Permutation]:
    if not _is_prime(p):
        raise ValueError("AGL1 construction needs a prime")
    w = _primitive_root(p)
    return [_perm([(x + 1) % p for x in range(p)]), _perm([(w * x) % p for x in range(p)])]


def psl2_prime_gens(p: int) -> list[Permutation]:
    """``PSL2(p)`` on the projective line ``{0..p-1, inf}`` (inf = point p)."""
    if not _is_prime(p) or p == 2:
        raise ValueError("PSL2 construction needs an odd prime; ship other q as files")
    inf = p
    w2 = _primitive_root(p) ** 2 % p

    def translate(z):
        return inf if z == inf else (z + 1) % p

    def scale(z):
        return inf if z == inf else (w2 * z) % p

    def invert(z):
        if z == inf:
            return 0
        if z == 0:
            return inf
        return (-pow(z, -1, p)) % p

    return [_perm([f(z) for z in range(p + 1)]) for f in (translate, scale, invert)]


def direct_product_gens(a: list[Permutation], b: list[Permutation]) -> list[Permutation]:
    da, db = a[0].degree, b[0].degree
    left = [_perm(list(g.images) + list(range(da, da + db))) for g in a]
    right = [_perm(list(range(da)) + [da + i for i in g.images]) for g in b]
    return left + right


def affine_gens(p: int, matrices) -> list[Permutation]:
    """``V : H`` acting on ``V = F_p^d`` by ``v -> v M`` and translations.

    Points are the vectors of ``F_p^d`` in lexicographic order; the
    generators are the translation by the first basis vector and one linear
    map per matrix (row-vector convention, entries reduced mod ``p``).
    Translations by the other basis vectors follow as conjugates provided
    ``H`` acts irreducibly; otherwise the caller should include them.
    """
    if not _is_prime(p):
        raise ValueError("affine construction needs a prime field")
    if not matrices:
        raise ValueError("affine construction needs at least one matrix")
    d = len(matrices[0])
    points = list(itertools.product(range(p), repeat=d))
    index = {v: i for i, v in enumerate(points)}

    def linear(M):
        if len(M) != d or any(len(row) != d for row in M):
            raise ValueError("matrices must be square of a common size")
        return _perm([index[tuple(sum(v[i] * M[i][j] for i in range(d)) % p for j in range(d))] for v in points])

    shifts = []
    for k in range(d):
        e = [0] * d
        e[k] = 1
        shifts.append(_perm([index[tuple((v[j] + e[j]) % p for j in range(d))] for v in points]))
    return shifts + [linear(M) for M in matrices]


def even_weight_gens(n: int) -> list[Permutation]:
    """``2^(n-1) : A_n``: the even-weight vectors of ``F_2^n`` with translations
    and coordinate permutations from ``A_n`` (``n`` odd, so the module is
    irreducible and the action is faithful)."""
    if n < 5 or n % 2 == 0:
        raise ValueError("even-weight construction needs odd n >= 5")
    points = [v for v in itertools.product(range(2), repeat=n) if sum(v) % 2 == 0]
    index = {v: i for i, v in enumerate(points)}
    gens = [_perm([index[tuple(v[j] ^ (j < 2) for j in range(n))] for v in points])]
    for sigma in alternating_gens(n):
        gens.append(_perm([index[tuple(v[sigma[j]] for j in range(n))] for v in points]))
    return gens


# -- group files ----------------------------------------------------------------


def data_path(filename: str) -> Path:
    return Path(str(resources.files("engelgraph") / "data" / filename))


def _fail(path, msg: str, line: int | None = None) -> GroupFileError:
    where = f"{path}:{line}" if line else str(path)
    return GroupFileError(f"{where}: {msg}")


def _line_of(text: str, needle: str) -> int | None:
    idx = text.find(needle)
    return text.count("\n", 0, idx) + 1 if idx >= 0 else None


def parse_group_file(text: str, path="<string>") -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _fail(path, f"parse error: {exc.msg}", exc.lineno) from None
    if not isinstance(data, dict):
        raise _fail(path, "top level must be an object", 1)
    for key, kind in (("name", str), ("degree", int), ("generators", list),
                      ("expected_order", int), ("simple", bool)):
        if key not in data:
            raise _fail(path, f"missing field {key!r}")
        if not isinstance(data[key], kind) or (kind is int and isinstance(data[key], bool)):
            raise _fail(path, f"field {key!r} must be {kind.__name__}", _line_of(text, f'"{key}"'))
    degree = data["degree"]
    if degree < 1:
        raise _fail(path, "degree must be positive", _line_of(text, '"degree"'))
    gens = data["generators"]
    if not gens:
        raise _fail(path, "empty generator list", _line_of(text, '"generators"'))
    line = _line_of(text, '"generators"')
    for i, g in enumerate(gens):
        if not isinstance(g, list) or len(g) != degree:
            raise _fail(path, f"generator {i} must list exactly {degree} images", line)
        if any(not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < degree for v in g):
            raise _fail(path, f"generator {i} has an image outside 0..{degree - 1}", line)
        if len(set(g)) != degree:
            raise _fail(path, f"generator {i} is not a bijection", line)
    return data


def load_group_file(path, limit: int = DEFAULT_CLOSURE_LIMIT) -> Group:
    """Load, enumerate and validate a group file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise GroupFileError(f"{path}: {exc.strerror}") from None
    data = parse_group_file(text, path)
    G = enumerate_group([_perm(g) for g in data["generators"]], name=data["name"], limit=limit)
    if len(G) != data["expected_order"]:
        raise _fail(path, f"enumerated order {len(G)} != expected_order {data['expected_order']}")
    if data["simple"]:
        from .structure import is_simple

        if not is_simple(G):
            raise _fail(path, "flagged simple but a proper normal closure exists")
    return G


# -- specs ---------------------------------------------------------------------


def _spec(name, construction, order=None, tier=FAST, family=None) -> GroupSpec:
    return GroupSpec(name, construction, order, tier, family)


def cyclic(n):
    return _spec(f"C{n}", ("cyclic", n), n)


def dihedral(order):
    return _spec(f"D{order}", ("dihedral", order), order)


def symmetric(n):
    from math import factorial

    return _spec(f"S{n}", ("symmetric", n), factorial(n))


def alternating(n):
    from math import factorial

    return _spec(f"A{n}", ("alternating", n), factorial(n) // 2, family=("alternating", n) if n >= 5 else None)


def agl1(p):
    return _spec(f"AGL1({p})", ("agl1", p), p * (p - 1))


def psl2(q):
    order = q * (q * q - 1) // (2 if q % 2 else 1)
    if _is_prime(q) and q > 2:
        return _spec(f"PSL2({q})", ("psl2", q), order, family=("psl2", q))
    return _spec(f"PSL2({q})", ("file", f"psl2_{q}.json"), order, family=("psl2", q))


def direct(a: GroupSpec, b: GroupSpec):
    order = a.expected_order * b.expected_order if a.expected_order and b.expected_order else None
    return _spec(f"{a.name}x{b.name}", ("direct", a, b), order)


def affine(name, p, matrices, order=None, tier=FAST):
    frozen = tuple(tuple(tuple(row) for row in M) for M in matrices)
    return _spec(name, ("affine", p, frozen), order, tier)


def even_weight(n):
    from math import factorial

    return _spec(f"2^{n - 1}:A{n}", ("even_weight", n), 2 ** (n - 1) * factorial(n) // 2)


def from_file(filename, name, order, tier=FAST, family=None):
    return _spec(name, ("file", filename), order, tier, family)


def standard_catalog() -> list[GroupSpec]:
    specs = [cyclic(n) for n in range(2, 13)]
    specs += [dihedral(8), dihedral(10), dihedral(12), from_file("q8.json", "Q8", 8)]
    specs += [symmetric(n) for n in range(3, 7)]
    specs += [alternating(n) for n in range(4, 8)]
    specs += [agl1(5), agl1(7), from_file("sl2_3.json", "SL(2,3)", 24), direct(cyclic(2), symmetric(4))]
    specs += [psl2(q) for q in (5, 7, 11, 13, 4, 8, 9)]
    specs += [
        from_file("m11.json", "M11", 7920, SLOW, ("sporadic", "M11")),
        from_file("m12.json", "M12", 95040, SLOW, ("sporadic", "M12")),
        from_file("sz8.json", "Sz(8)", 29120, TARGETED, ("suzuki", 8)),
    ]
    return specs


# Soluble affine groups ``7^2 : H`` with H <= GL(2,7), searched by the
# ``soluble`` suite alongside the soluble members of the standard list.
# a = diag(2,4) and b = [[0,1],[-1,0]] generate a dicyclic group of order 12
# inside SL(2,7); s = 2I is a scalar of order 3 and t swaps coordinates.
_A = ((2, 0), (0, 4))
_B = ((0, 1), (6, 0))
_S = ((2, 0), (0, 2))
_T = ((0, 1), (1, 0))


def soluble_search_family() -> list[GroupSpec]:
    """Small soluble groups outside the standard list, in search order."""
    return [
        direct(symmetric(3), symmetric(3)),
        direct(symmetric(3), alternating(4)),
        direct(agl1(5), symmetric(3)),
        affine("3^2:Q8", 3, [((1, 1), (1, 2)), ((2, 1), (1, 1))], 72),
        affine("7^2:(3x3)", 7, [_A, _S], 441),
        affine("7^2:(3xS3)", 7, [_A, _T, _S], 882),
        affine("7^2:(3xDic3)", 7, [_A, _B, _S], 1764),
    ]


def extra_instances() -> list[GroupSpec]:
    """Groups instantiating hypotheses that no standard-list group meets."""
    return [even_weight(5)]


def catalog_by_name() -> dict[str, GroupSpec]:
    specs = standard_catalog() + soluble_search_family() + extra_instances()
    return {s.name: s for s in specs}


def catalog_tier(tier: str) -> list[GroupSpec]:
    if tier not in TIERS:
        raise ValueError(f"unknown tier {tier!r}")
    return [s for s in standard_catalog() if s.tier == tier]


_ALIASES = {
    "Q8": lambda: from_file("q8.json", "Q8", 8),
    "SL(2,3)": lambda: from_file("sl2_3.json", "SL(2,3)", 24),
    "SL23": lambda: from_file("sl2_3.json", "SL(2,3)", 24),
    "M11": lambda: from_file("m11.json", "M11", 7920, SLOW, ("sporadic", "M11")),
    "M12": lambda: from_file("m12.json", "M12", 95040, SLOW, ("sporadic", "M12")),
    "SZ(8)": lambda: from_file("sz8.json", "Sz(8)", 29120, TARGETED, ("suzuki", 8)),
    "SZ8": lambda: from_file("sz8.json", "Sz(8)", 29120, TARGETED, ("suzuki", 8)),
}

_SIMPLE_PATTERNS = [
    (re.compile(r"^(?:C|CYC(?:LIC)?)\(?(\d+)\)?$"), lambda m: cyclic(int(m[1]))),
    (re.compile(r"^(?:D|DIH(?:EDRAL)?)\(?(\d+)\)?$"), lambda m: dihedral(int(m[1]))),
    (re.compile(r"^(?:S|SYM(?:METRIC)?)\(?(\d+)\)?$"), lambda m: symmetric(int(m[1]))),
    (re.compile(r"^(?:A|ALT(?:ERNATING)?)\(?(\d+)\)?$"), lambda m: alternating(int(m[1]))),
    (re.compile(r"^AGL1\((\d+)\)$"), lambda m: agl1(int(m[1]))),
    (re.compile(r"^PSL2\((\d+)\)$"), lambda m: psl2(int(m[1]))),
]


def parse_spec(text: str) -> GroupSpec:
    """Spec from a name like ``S4``, ``PSL2(7)``, ``C2xS4`` or a ``.json`` path."""
    raw = text.strip()
    if raw.endswith(".json"):
        return _spec(Path(raw).stem, ("file", str(Path(raw).resolve())), None)
    key = raw.upper().replace(" ", "")
    known = {n.upper(): s for n, s in catalog_by_name().items()}
    if key in known:
        return known[key]
    if key in _ALIASES:
        return _ALIASES[key]()
    for pattern, make in _SIMPLE_PATTERNS:
        m = pattern.match(key)
        if m:
            return make(m)
    if "X" in key:
        parts = [p for p in re.split(r"X(?![^(]*\))", key) if p]
        if len(parts) >= 2:
            spec = parse_spec(parts[0])
            for part in parts[1:]:
                spec = direct(spec, parse_spec(part))
            return spec
    raise ValueError(f"unknown group {text!r}")


def _generators(spec: GroupSpec) -> list[Permutation] | None:
    kind, *args = spec.construction
    builders = {
        "cyclic": cyclic_gens,
        "dihedral": dihedral_gens,
        "symmetric": symmetric_gens,
        "alternating": alternating_gens,
        "agl1": agl1_gens,
        "psl2": psl2_prime_gens,
        "affine": affine_gens,
        "even_weight": even_weight_gens,
    }
    if kind in builders:
        return builders[kind](*args)
    if kind == "direct":
        return direct_product_gens(_generators(args[0]), _generators(args[1]))
    return None


def build(spec: GroupSpec | str, limit: int = DEFAULT_CLOSURE_LIMIT) -> Group:
    """Enumerate the group for ``spec`` and check its expected order."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    return _build_cached(spec, limit)


@lru_cache(maxsize=64)
def _build_cached(spec: GroupSpec, limit: int) -> Group:
    kind = spec.construction[0]
    if kind == "file":
        target = spec.construction[1]
        path = Path(target) if Path(target).is_absolute() else data_path(target)
        G = load_group_file(path, limit=limit)
        G.name = spec.name
    else:
        G = enumerate_group(_generators(spec), name=spec.name, limit=limit)
    if spec.expected_order is not None and len(G) != spec.expected_order:
        raise ValueError(f"{spec.name}: enumerated order {len(G)} != expected {spec.expected_order}")
    return G
