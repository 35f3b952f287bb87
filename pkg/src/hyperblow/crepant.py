"""Crepant terminalization of canonical cyclic quotient 3-fold germs.

The germ 1/r(a,b,c) is the toric cone spanned by the standard basis in
the lattice N = Z^3 + Z*(a,b,c)/r.  Lattice points of age one (their
coordinates sum to exactly one) sit on the triangle cut out of the cone
by the plane x+y+z = 1; star subdividing at all of them is crepant and
leaves only terminal cones behind.  Every cone generator produced along
the way stays on that plane, so cones can be handled as triangles drawn
on it and lattice volume is conserved.

All points are carried as integer vectors scaled by r; internal lattice
work happens in coordinates with respect to a basis of N computed once
per germ.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .quotients import (
    Basket,
    QuotientSingularity,
    SingularityClass,
    basket_pair,
    classify,
)


class NonCyclicQuotient(ValueError):
    """A cone quotient group turned out not to be cyclic."""


def _det3(m) -> int:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _solve3(rows, rhs) -> tuple[Fraction, Fraction, Fraction]:
    """Solve x @ rows = rhs exactly (rows a 3x3 integer matrix)."""
    # transpose so the unknowns become an ordinary column system
    a = [[rows[j][i] for j in range(3)] for i in range(3)]
    det = _det3(a)
    if det == 0:
        raise ValueError("singular matrix")
    out = []
    for k in range(3):
        col = [row[:] for row in a]
        for i in range(3):
            col[i][k] = rhs[i]
        out.append(Fraction(_det3(col), det))
    return tuple(out)


def _lattice_basis(gens) -> list[list[int]]:
    """Row-style Hermite reduction of generators of a rank-3 sublattice
    of Z^3; returns an upper triangular basis."""
    rows = [list(g) for g in gens]
    for col in range(3):
        while True:
            nz = [i for i in range(col, len(rows)) if rows[i][col] != 0]
            if not nz:
                raise ValueError("generators do not span a rank-3 lattice")
            piv = min(nz, key=lambda i: abs(rows[i][col]))
            rows[col], rows[piv] = rows[piv], rows[col]
            done = True
            for i in range(col + 1, len(rows)):
                if rows[i][col] != 0:
                    q = rows[i][col] // rows[col][col]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[col])]
                    if rows[i][col] != 0:
                        done = False
            if done:
                break
        if rows[col][col] < 0:
            rows[col] = [-x for x in rows[col]]
    return [rows[0], rows[1], rows[2]]


def _smith_diagonal_with_left_inverse(a):
    """Smith normal form of a 3x3 integer matrix.

    Returns (diag, linv) with U A V = diag(d1,d2,d3), d1 | d2 | d3 all
    nonnegative, and linv = inverse of U.  Column operations are not
    tracked; only the left transform is needed to read off a generator
    of the quotient group.
    """
    n = 3
    a = [list(map(int, row)) for row in a]
    linv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def add_row(src, dst, k):
        # A <- E A with E adding k * row src to row dst; linv <- linv E^-1
        for c in range(n):
            a[dst][c] += k * a[src][c]
        for r_ in range(n):
            linv[r_][src] -= k * linv[r_][dst]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        for r_ in range(n):
            linv[r_][i], linv[r_][j] = linv[r_][j], linv[r_][i]

    def neg_row(i):
        a[i] = [-x for x in a[i]]
        for r_ in range(n):
            linv[r_][i] = -linv[r_][i]

    def add_col(src, dst, k):
        for r_ in range(n):
            a[r_][dst] += k * a[r_][src]

    def swap_cols(i, j):
        for r_ in range(n):
            a[r_][i], a[r_][j] = a[r_][j], a[r_][i]

    for t in range(n):
        while True:
            piv = None
            for i in range(t, n):
                for j in range(t, n):
                    if a[i][j] != 0 and (
                        piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])
                    ):
                        piv = (i, j)
            if piv is None:
                break
            if piv[0] != t:
                swap_rows(t, piv[0])
            if piv[1] != t:
                swap_cols(t, piv[1])
            if a[t][t] < 0:
                neg_row(t)
            clean = True
            for i in range(t + 1, n):
                if a[i][t] != 0:
                    add_row(t, i, -(a[i][t] // a[t][t]))
                    if a[i][t] != 0:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    add_col(t, j, -(a[t][j] // a[t][t]))
                    if a[t][j] != 0:
                        clean = False
            if not clean:
                continue
            # enforce divisibility of the remaining block by the pivot
            stuck = None
            for i in range(t + 1, n):
                for j in range(t + 1, n):
                    if a[i][j] % a[t][t] != 0:
                        stuck = i
                        break
                if stuck is not None:
                    break
            if stuck is None:
                break
            add_row(stuck, t, 1)
    return [a[i][i] for i in range(n)], linv


@dataclass(frozen=True)
class LeafCone:
    """Simplicial cone of the final subdivision, generators scaled by r."""

    generators: tuple[tuple[int, ...], ...]
    index: int
    germ: QuotientSingularity


@dataclass(frozen=True)
class Terminalization:
    germ: QuotientSingularity
    age_one: tuple[tuple[int, ...], ...]
    leaves: tuple[LeafCone, ...]
    basket: Counter

    @property
    def rho_contribution(self) -> int:
        """Rank added to the Picard group: one per inserted ray."""
        return len(self.age_one)

    @property
    def resolves_smoothly(self) -> bool:
        return all(leaf.index == 1 for leaf in self.leaves)


class ConeLattice:
    """Coordinate bookkeeping for the quotient cone of a 3-fold germ."""

    def __init__(self, germ: QuotientSingularity):
        if germ.dim != 3:
            raise ValueError("cone subdivision is implemented for 3-fold germs")
        self.germ = germ
        r = germ.index
        self.r = r
        gens = [[r, 0, 0], [0, r, 0], [0, 0, r], list(germ.residues)]
        self.basis = _lattice_basis(gens)
        if abs(prod(self.basis[i][i] for i in range(3))) != r * r:
            raise ValueError(f"unexpected lattice covolume for {germ}")

    def to_coords(self, scaled: tuple[int, ...]) -> tuple[int, ...]:
        """Coordinates of a scaled lattice point in the basis of r*N."""
        b = self.basis
        x0, rem = divmod(scaled[0], b[0][0])
        if rem:
            raise ValueError(f"{scaled} is not in the lattice")
        y = scaled[1] - x0 * b[0][1]
        x1, rem = divmod(y, b[1][1])
        if rem:
            raise ValueError(f"{scaled} is not in the lattice")
        z = scaled[2] - x0 * b[0][2] - x1 * b[1][2]
        x2, rem = divmod(z, b[2][2])
        if rem:
            raise ValueError(f"{scaled} is not in the lattice")
        return (x0, x1, x2)

    def to_scaled(self, coords: tuple[int, ...]) -> tuple[int, ...]:
        b = self.basis
        return tuple(
            sum(coords[i] * b[i][j] for i in range(3)) for j in range(3)
        )

    def initial_triangle(self):
        r = self.r
        return tuple(
            self.to_coords(tuple(r if j == i else 0 for j in range(3)))
            for i in range(3)
        )

    def age_one_pool(self):
        """Lattice points on the cross-section plane, scaled by r, in
        ascending lexicographic order of their scaled vectors."""
        r = self.r
        seen = set()
        for m in range(1, r):
            w = tuple(m * a % r for a in self.germ.residues)
            if sum(w) == r:
                seen.add(w)
        return tuple(sorted(seen))

    def barycentric(self, triangle, coords):
        return _solve3([list(v) for v in triangle], list(coords))

    def contains(self, triangle, coords) -> bool:
        if coords in triangle:
            return False
        return all(x >= 0 for x in self.barycentric(triangle, coords))

    def split(self, triangle, coords):
        """Star subdivision of the triangle at one of its lattice points."""
        lam = self.barycentric(triangle, coords)
        children = []
        for i in range(3):
            if lam[i] > 0:
                child = tuple(
                    coords if t == i else triangle[t] for t in range(3)
                )
                children.append(child)
        if len(children) < 2:
            raise ValueError("subdivision point is a vertex")
        return children

    def triangle_index(self, triangle) -> int:
        return abs(_det3([list(v) for v in triangle]))

    def triangle_germ(self, triangle) -> QuotientSingularity:
        m = self.triangle_index(triangle)
        if m == 1:
            return QuotientSingularity(1, (0, 0, 0))
        cols = [[triangle[j][i] for j in range(3)] for i in range(3)]
        diag, linv = _smith_diagonal_with_left_inverse(cols)
        if diag[0] * diag[1] != 1:
            raise NonCyclicQuotient(
                f"cone quotient has invariants {diag}, not cyclic"
            )
        h = [linv[i][2] for i in range(3)]
        lam = _solve3([list(v) for v in triangle], h)
        residues = []
        for x in lam:
            scaled = x * m
            if scaled.denominator != 1:
                raise ValueError("generator coefficients are not m-integral")
            residues.append(int(scaled) % m)
        return QuotientSingularity(m, tuple(residues))

    def leaf(self, triangle) -> LeafCone:
        return LeafCone(
            generators=tuple(self.to_scaled(v) for v in triangle),
            index=self.triangle_index(triangle),
            germ=self.triangle_germ(triangle),
        )


def age_one_points(q: QuotientSingularity) -> tuple[tuple[int, ...], ...]:
    """Scaled-by-r lattice points of age exactly one, sorted.

    Points interior to a facet (one zero entry) are included: they are
    rays of any crepant subdivision and count toward the Picard rank.
    """
    return ConeLattice(q).age_one_pool()


def cone_quotient(
    ambient: QuotientSingularity, generators_scaled
) -> QuotientSingularity:
    """Quotient germ of the simplicial cone with the given generators
    (scaled by the ambient index) in the lattice of the ambient germ."""
    lat = ConeLattice(ambient)
    tri = tuple(lat.to_coords(tuple(g)) for g in generators_scaled)
    return lat.triangle_germ(tri)


def terminalize(q: QuotientSingularity, chooser=None) -> Terminalization:
    """Crepant partial resolution leaving only terminal cones.

    Star subdivides at the lexicographically least age-one point of each
    cone until none is left; a different selection order (injectable via
    ``chooser`` for auditing) yields the same basket and the same ray
    count.  Lattice volume is conserved: leaf indices sum to the index.
    """
    cls = classify(q)
    if cls is SingularityClass.NONCANONICAL:
        raise ValueError(f"{q} is not canonical")
    lat = ConeLattice(q)
    pool_scaled = lat.age_one_pool()
    pool = [(s, lat.to_coords(s)) for s in pool_scaled]
    stack = [lat.initial_triangle()]
    finished = []
    while stack:
        tri = stack.pop()
        cands = [(s, c) for s, c in pool if lat.contains(tri, c)]
        if not cands:
            finished.append(tri)
            continue
        chosen = chooser(cands) if chooser is not None else cands[0]
        stack.extend(lat.split(tri, chosen[1]))
    leaves = tuple(
        sorted(
            (lat.leaf(tri) for tri in finished),
            key=lambda leaf: leaf.generators,
        )
    )
    if sum(leaf.index for leaf in leaves) != q.index:
        raise AssertionError(f"lattice volume not conserved for {q}")
    basket: Counter = Basket()
    for leaf in leaves:
        if leaf.index == 1:
            continue
        if classify(leaf.germ) is not SingularityClass.TERMINAL:
            raise AssertionError(f"non-terminal leaf {leaf.germ} for {q}")
        basket[basket_pair(leaf.germ)] += 1
    return Terminalization(
        germ=q,
        age_one=pool_scaled,
        leaves=leaves,
        basket=basket,
    )
