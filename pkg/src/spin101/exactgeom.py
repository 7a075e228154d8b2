"""Exact geometry of direction sets over the ring of integers extended by sqrt(2).

Every coordinate in this module is an element a + b*sqrt(2) with integer a, b,
so orthogonality tests are exact integer arithmetic: no floating point is used
anywhere. Directions are projective rays (a vector and any nonzero real
multiple of it, in particular its negation, name the same ray) and are stored
in a canonical form that makes ray equality coordinate-wise tuple equality.

The module ships one built-in configuration, the 33-ray Peres set derived from
a cube: the 3 coordinate axes, the 6 edge-midpoint directions, and the two
families of face-grid directions whose coordinates are permutations of
(0, 1, sqrt(2)) and (1, 1, sqrt(2)) with signs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from math import gcd


class ZeroVector(ValueError):
    """Raised when a ray is constructed from the all-zero vector."""


class NotOrthogonal(ValueError):
    """Raised when a pair completion is requested for a non-orthogonal pair."""


class InvalidRaySet(ValueError):
    """Raised when a serialized ray set fails validation on load."""


@dataclass(frozen=True, order=True)
class Quad2:
    """The number a + b*sqrt(2) with exact integer coefficients.

    Python integers are unbounded, so the ring operations never overflow.
    The numeric sign is decided purely by integer comparisons: sqrt(2) is
    irrational, so a + b*sqrt(2) = 0 only when a = b = 0, and otherwise the
    sign follows from comparing a**2 against 2*b**2 in the mixed-sign cases.
    """

    a: int
    b: int

    def __add__(self, other: Quad2) -> Quad2:
        return Quad2(self.a + other.a, self.b + other.b)

    def __sub__(self, other: Quad2) -> Quad2:
        return Quad2(self.a - other.a, self.b - other.b)

    def __mul__(self, other: Quad2) -> Quad2:
        return Quad2(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    def __neg__(self) -> Quad2:
        return Quad2(-self.a, -self.b)

    def conj(self) -> Quad2:
        """Galois conjugate a - b*sqrt(2)."""
        return Quad2(self.a, -self.b)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign(self) -> int:
        """Exact numeric sign of a + b*sqrt(2): -1, 0 or +1."""
        a, b = self.a, self.b
        if a == 0 and b == 0:
            return 0
        if a >= 0 and b >= 0:
            return 1
        if a <= 0 and b <= 0:
            return -1
        # Mixed signs: compare |a| against |b|*sqrt(2) via squares.
        # a**2 == 2*b**2 is impossible for integers not both zero.
        if a > 0:  # b < 0
            return 1 if a * a > 2 * b * b else -1
        return 1 if a * a < 2 * b * b else -1

    def __float__(self) -> float:
        return self.a + self.b * math.sqrt(2.0)

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}√2" if self.b != 1 else "√2"
        return f"{self.a}{self.b:+}√2"


Q_ZERO = Quad2(0, 0)
Q_ONE = Quad2(1, 0)
Q_SQRT2 = Quad2(0, 1)


def _q(a: int, b: int = 0) -> Quad2:
    return Quad2(a, b)


@dataclass(frozen=True, order=True)
class Ray:
    """A projective direction in canonical form.

    Construct through :func:`canonicalize`; two rays are the same direction
    iff their canonical coordinate tuples are equal.
    """

    x: Quad2
    y: Quad2
    z: Quad2

    @property
    def coords(self) -> tuple[Quad2, Quad2, Quad2]:
        return (self.x, self.y, self.z)

    def sort_key(self) -> tuple[tuple[int, int], ...]:
        return tuple((c.a, c.b) for c in self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def dot(r1: Ray, r2: Ray) -> Quad2:
    """Exact inner product; the rays are orthogonal iff the result is zero."""
    return r1.x * r2.x + r1.y * r2.y + r1.z * r2.z


def canonicalize(x: Quad2, y: Quad2, z: Quad2) -> Ray:
    """Reduce a nonzero coordinate vector to its unique canonical ray.

    The canonical representative is invariant under scaling by any nonzero
    element of the fraction field Q(sqrt(2)) (in particular under negation,
    sqrt(2)-scaling, and unit multiples such as 1 + sqrt(2)):

    1. multiply through by the Galois conjugate of the first nonzero
       coordinate, which depends only on the coordinate ratios up to a
       rational factor;
    2. divide out the integer gcd of all six coefficients;
    3. divide by sqrt(2) while every rational part is even;
    4. flip signs so the first nonzero coordinate is numerically positive.

    Raises ZeroVector for the all-zero input.
    """
    coords = (x, y, z)
    lead = next((c for c in coords if not c.is_zero()), None)
    if lead is None:
        raise ZeroVector("cannot canonicalize the zero vector")

    cj = lead.conj()
    coords = tuple(cj * c for c in coords)

    g = 0
    for c in coords:
        g = gcd(g, abs(c.a))
        g = gcd(g, abs(c.b))
    coords = tuple(Quad2(c.a // g, c.b // g) for c in coords)

    while all(c.a % 2 == 0 for c in coords):
        coords = tuple(Quad2(c.b, c.a // 2) for c in coords)

    lead = next(c for c in coords if not c.is_zero())
    if lead.sign() < 0:
        coords = tuple(-c for c in coords)

    return Ray(*coords)


def ray_from_ints(x: tuple[int, int], y: tuple[int, int], z: tuple[int, int]) -> Ray:
    """Canonical ray from three (a, b) coefficient pairs."""
    return canonicalize(Quad2(*x), Quad2(*y), Quad2(*z))


def is_canonical(x: Quad2, y: Quad2, z: Quad2) -> bool:
    try:
        return canonicalize(x, y, z).coords == (x, y, z)
    except ZeroVector:
        return False


def cross(r1: Ray, r2: Ray) -> tuple[Quad2, Quad2, Quad2]:
    """Cross product in ring arithmetic (not canonicalized)."""
    return (
        r1.y * r2.z - r1.z * r2.y,
        r1.z * r2.x - r1.x * r2.z,
        r1.x * r2.y - r1.y * r2.x,
    )


def complete_pair(r1: Ray, r2: Ray) -> Ray:
    """The unique third direction orthogonal to an orthogonal pair.

    Raises NotOrthogonal when dot(r1, r2) != 0.
    """
    if not dot(r1, r2).is_zero():
        raise NotOrthogonal(f"{r1} and {r2} are not orthogonal")
    return canonicalize(*cross(r1, r2))


@dataclass(frozen=True)
class RaySet:
    """An ordered set of distinct canonical rays."""

    rays: tuple[Ray, ...]
    label: str = ""

    def __post_init__(self) -> None:
        if len(set(self.rays)) != len(self.rays):
            raise InvalidRaySet(f"duplicate rays in set {self.label!r}")

    def __len__(self) -> int:
        return len(self.rays)

    def __iter__(self):
        return iter(self.rays)

    def __contains__(self, ray: Ray) -> bool:
        return ray in set(self.rays)

    def index(self, ray: Ray) -> int:
        return self.rays.index(ray)

    def to_json_obj(self) -> list[list[list[int]]]:
        return [[[c.a, c.b] for c in r.coords] for r in self.rays]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: object, label: str = "") -> RaySet:
        """Load a ray set; every listed ray must already be canonical."""
        if not isinstance(obj, list) or not obj:
            raise InvalidRaySet("ray set must be a non-empty JSON array")
        rays = []
        for i, entry in enumerate(obj):
            if (
                not isinstance(entry, list)
                or len(entry) != 3
                or any(
                    not isinstance(p, list)
                    or len(p) != 2
                    or not all(isinstance(v, int) and not isinstance(v, bool) for v in p)
                    for p in entry
                )
            ):
                raise InvalidRaySet(
                    f"ray {i} must be three [a, b] integer pairs, got {entry!r}"
                )
            coords = tuple(Quad2(a, b) for a, b in entry)
            try:
                canon = canonicalize(*coords)
            except ZeroVector as exc:
                raise InvalidRaySet(f"ray {i} is the zero vector") from exc
            if canon.coords != coords:
                raise InvalidRaySet(
                    f"ray {i} is not in canonical form: got {Ray(*coords)}, "
                    f"canonical is {canon}"
                )
            rays.append(canon)
        return cls(rays=tuple(rays), label=label)

    @classmethod
    def from_json(cls, text: str, label: str = "") -> RaySet:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidRaySet(f"invalid JSON: {exc}") from exc
        return cls.from_json_obj(obj, label=label)


def build_peres33() -> RaySet:
    """The 33-direction Peres configuration, exactly.

    Families (each listed once per projective ray, then canonicalized):

    * the 3 coordinate axes;
    * the 6 edge-midpoint directions, permutations of (1, +-1, 0);
    * the 12 permutations of (0, +-1, +-sqrt(2)) up to overall sign;
    * the 12 permutations of (+-1, +-1, +-sqrt(2)) up to overall sign.

    The last two families are the 3x3 face grids of the cube [-1, 1]^3 with
    in-face coordinates {-1/sqrt(2), 0, 1/sqrt(2)}, scaled by sqrt(2); the
    face-center grid points reproduce the axes and are not repeated.

    Rays are returned sorted by their coefficient tuples for deterministic
    downstream output.
    """
    one, s2 = Q_ONE, Q_SQRT2
    zero = Q_ZERO
    rays: set[Ray] = set()

    rays.add(canonicalize(one, zero, zero))
    rays.add(canonicalize(zero, one, zero))
    rays.add(canonicalize(zero, zero, one))

    for i, j in permutations(range(3), 2):
        if i < j:
            for s in (1, -1):
                v = [zero, zero, zero]
                v[i] = one
                v[j] = one if s == 1 else -one
                rays.add(canonicalize(*v))

    for zero_pos in range(3):
        rest = [p for p in range(3) if p != zero_pos]
        for one_pos, s2_pos in permutations(rest, 2):
            for s in (1, -1):
                v = [zero, zero, zero]
                v[one_pos] = one
                v[s2_pos] = s2 if s == 1 else -s2
                rays.add(canonicalize(*v))

    for s2_pos in range(3):
        rest = [p for p in range(3) if p != s2_pos]
        for sa, sb, sc in product((1, -1), repeat=3):
            v = [zero, zero, zero]
            v[rest[0]] = one if sa == 1 else -one
            v[rest[1]] = one if sb == 1 else -one
            v[s2_pos] = s2 if sc == 1 else -s2
            rays.add(canonicalize(*v))

    ordered = tuple(sorted(rays, key=Ray.sort_key))
    assert len(ordered) == 33
    return RaySet(rays=ordered, label="peres33")


@dataclass(frozen=True)
class OrthGraph:
    """Orthogonality structure of a ray set.

    edges are the exactly-orthogonal index pairs; triples the mutually
    orthogonal index triples; lone_pairs the edges contained in no triple.
    In three dimensions an orthogonal pair lies in at most one triple of the
    set (the completing third direction is unique up to sign), so the edges
    split disjointly into triple-covered pairs and lone pairs.
    """

    rayset: RaySet
    edges: tuple[tuple[int, int], ...]
    triples: tuple[tuple[int, int, int], ...]
    lone_pairs: tuple[tuple[int, int], ...]
    adjacency: tuple[frozenset[int], ...] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.rayset)

    def census(self) -> dict[str, int]:
        return {
            "rays": self.n,
            "edges": len(self.edges),
            "triples": len(self.triples),
            "lone_pairs": len(self.lone_pairs),
        }

    def to_json_obj(self) -> dict:
        return {
            "rays": self.rayset.to_json_obj(),
            "edges": [list(e) for e in self.edges],
            "triples": [list(t) for t in self.triples],
            "lone_pairs": [list(p) for p in self.lone_pairs],
        }

    def to_dot(self) -> str:
        """GraphViz DOT rendering with index-and-coordinate node labels."""
        lines = [f"graph {self.rayset.label or 'rays'} {{"]
        for i, ray in enumerate(self.rayset):
            lines.append(f'  n{i} [label="{i}: {ray}"];')
        for i, j in self.edges:
            lines.append(f"  n{i} -- n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def orthogonality_graph(rayset: RaySet) -> OrthGraph:
    """Compute edges, triples and lone pairs by exhaustive exact dot products."""
    n = len(rayset)
    rays = rayset.rays
    edge_set = set()
    adjacency: list[set[int]] = [set() for _ in range(n)]
    for i, j in combinations(range(n), 2):
        if dot(rays[i], rays[j]).is_zero():
            edge_set.add((i, j))
            adjacency[i].add(j)
            adjacency[j].add(i)

    triples = []
    covered = set()
    for i, j in sorted(edge_set):
        for k in sorted(adjacency[i] & adjacency[j]):
            if k > j:
                triples.append((i, j, k))
                covered.update({(i, j), (i, k), (j, k)})

    edges = tuple(sorted(edge_set))
    lone = tuple(e for e in edges if e not in covered)
    return OrthGraph(
        rayset=rayset,
        edges=edges,
        triples=tuple(sorted(triples)),
        lone_pairs=lone,
        adjacency=tuple(frozenset(a) for a in adjacency),
    )


def complete_lone_pairs(graph: OrthGraph) -> tuple[RaySet, tuple[tuple[int, int, int], ...]]:
    """Complete every lone pair and return the extended configuration.

    Returns the extended ray set (original rays first, then the new
    completion rays in sorted order) and the full triple family: the graph's
    own triples followed by one completed triple per lone pair, all as index
    triples into the extended set. For the Peres 33 set this is the
    40-triple family (16 + 24).
    """
    rays = list(graph.rayset.rays)
    known = {r: i for i, r in enumerate(rays)}
    new_rays = set()
    for i, j in graph.lone_pairs:
        third = complete_pair(rays[i], rays[j])
        if third not in known:
            new_rays.add(third)
    ordered_new = sorted(new_rays, key=Ray.sort_key)
    for r in ordered_new:
        known[r] = len(rays)
        rays.append(r)

    completed = []
    for i, j in graph.lone_pairs:
        third = complete_pair(rays[i], rays[j])
        completed.append(tuple(sorted((i, j, known[third]))))

    extended = RaySet(rays=tuple(rays), label=(graph.rayset.label or "rays") + "+completions")
    all_triples = tuple(graph.triples) + tuple(completed)
    return extended, all_triples


_SIGNED_PERMS = tuple(
    (perm, signs)
    for perm in permutations(range(3))
    for signs in product((1, -1), repeat=3)
)


def _apply_signed_perm(ray: Ray, perm: tuple[int, ...], signs: tuple[int, ...]) -> Ray:
    src = ray.coords
    coords = [src[perm[k]] if signs[k] == 1 else -src[perm[k]] for k in range(3)]
    return canonicalize(*coords)


def automorphisms(graph: OrthGraph) -> list[tuple[int, ...]]:
    """Node permutations induced by cube symmetries that preserve the ray set.

    All 48 signed permutation matrices are tried; those mapping the set to
    itself induce node permutations, which are deduplicated (multiplying by
    -I acts trivially on rays, so at most 24 are distinct) and returned
    sorted. Every returned permutation preserves edges and triples because
    signed permutations preserve exact inner products up to sign.
    """
    rays = graph.rayset.rays
    index = {r: i for i, r in enumerate(rays)}
    found = set()
    for perm, signs in _SIGNED_PERMS:
        images = []
        ok = True
        for ray in rays:
            img = _apply_signed_perm(ray, perm, signs)
            pos = index.get(img)
            if pos is None:
                ok = False
                break
            images.append(pos)
        if ok:
            found.add(tuple(images))
    return sorted(found)
