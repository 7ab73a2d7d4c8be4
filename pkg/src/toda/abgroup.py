"""Finitely generated abelian groups presented as Z^m modulo a relation
lattice, with exact membership and subgroup arithmetic.

Elements are canonical coordinate tuples in the diagonalized presentation
(one coordinate per invariant factor != 1; order 0 means a free factor).
Over a prime field the relations always include p times every generator,
so presentations double as F_p vector spaces.
"""

from itertools import product

from .errors import InputError
from .exact import Mat, ZZ, block, diagonalize, solve_matrix


class AbGroup:
    def __init__(self, rank, relations=None, field_p=None):
        """rank -- ambient number of generators; relations -- list of
        length-``rank`` integer vectors; field_p -- adds p*e_i relations."""
        self.rank = rank
        rel = [list(v) for v in (relations or [])]
        if field_p is not None:
            rel += [[field_p if i == j else 0 for i in range(rank)] for j in range(rank)]
        self.relations = rel
        R = Mat(ZZ, rank, len(rel), [[rel[j][i] for j in range(len(rel))] for i in range(rank)])
        dg = diagonalize(R, need=("U", "Uinv"))
        self._U = dg.U
        self._Uinv = dg.Uinv
        inv = dg.invariants + [0] * (rank - len(dg.invariants))
        self._orders_full = inv
        self.live = [i for i in range(rank) if inv[i] != 1]
        self.orders = [inv[i] for i in self.live]

    # -- elements are tuples of canonical coordinates ------------------

    @property
    def zero(self):
        return (0,) * len(self.live)

    def reduce_ambient(self, vec):
        """Canonical coordinates of an ambient integer vector."""
        if len(vec) != self.rank:
            raise InputError("ambient coordinate length mismatch")
        y = self._U @ Mat.column(ZZ, list(vec))
        out = []
        for i in self.live:
            v = y.entry(i, 0)
            d = self._orders_full[i]
            out.append(v % d if d else v)
        return tuple(out)

    def lift(self, el):
        """Some ambient vector reducing to the element."""
        y = [0] * self.rank
        for i, v in zip(self.live, el):
            y[i] = v
        x = self._Uinv @ Mat.column(ZZ, y)
        return tuple(x.entry(i, 0) for i in range(self.rank))

    def add(self, a, b):
        return tuple(
            (x + y) % d if d else x + y for x, y, d in zip(a, b, self.orders)
        )

    def neg(self, a):
        return tuple((-x) % d if d else -x for x, d in zip(a, self.orders))

    def is_zero(self, a):
        return all(x == 0 for x in a)

    def is_trivial(self):
        return not self.live

    def invariants(self):
        """Orders of the cyclic factors, free factors first (order 0)."""
        return sorted(self.orders)

    def element_count(self):
        n = 1
        for d in self.orders:
            if d == 0:
                return None
            n *= d
        return n

    def elements(self):
        """All elements (finite groups only), lexicographic order."""
        if any(d == 0 for d in self.orders):
            raise InputError("cannot enumerate an infinite group")
        return [tuple(t) for t in product(*[range(d) for d in self.orders])]

    # -- subgroups ----------------------------------------------------

    def subgroup_contains(self, gens, el):
        """Is ``el`` an integer combination of ``gens`` in the group?"""
        if not self.live:
            return True
        cols = [list(self.lift(g)) for g in gens] + [
            [self.relations[j][i] for i in range(self.rank)] for j in range(len(self.relations))
        ]
        if not cols:
            return self.is_zero(el)
        A = Mat(ZZ, self.rank, len(cols), [[c[i] for c in cols] for i in range(self.rank)])
        b = Mat.column(ZZ, list(self.lift(el)))
        return solve_matrix(A, b) is not None

    def subgroup_invariants(self, gens):
        """Invariant factors of the subgroup generated by ``gens``."""
        # present the subgroup as Z^gens modulo the kernel of the span map
        if not gens:
            return AbGroup(0)
        k = len(gens)
        cols = [list(self.lift(g)) for g in gens] + [
            [self.relations[j][i] for i in range(self.rank)] for j in range(len(self.relations))
        ]
        A = Mat(ZZ, self.rank, len(cols), [[c[i] for c in cols] for i in range(self.rank)])
        dg = diagonalize(A, need=("V",))
        rel = []
        for j in range(dg.rank, A.cols):
            col = [dg.V.entry(i, j) for i in range(A.cols)]
            rel.append(col[:k])
        return AbGroup(k, rel)

    def coset_elements(self, rep, gens, cap=100000):
        """All elements of rep + <gens> (finite subgroups only)."""
        seen = {rep}
        frontier = [rep]
        while frontier:
            nxt = []
            for el in frontier:
                for g in gens:
                    for cand in (self.add(el, g), self.add(el, self.neg(g))):
                        if cand not in seen:
                            seen.add(cand)
                            nxt.append(cand)
                            if len(seen) > cap:
                                raise InputError("coset enumeration cap exceeded")
            frontier = nxt
        return sorted(seen)


class AbMap:
    """A homomorphism between presented groups, given on ambient coords."""

    def __init__(self, source: AbGroup, target: AbGroup, matrix: Mat):
        if matrix.rows != target.rank or matrix.cols != source.rank:
            raise InputError("abelian map shape mismatch")
        self.source = source
        self.target = target
        self.matrix = matrix
        # well-definedness: relations must land in the target relation lattice
        for relvec in source.relations:
            img = matrix @ Mat.column(ZZ, relvec)
            el = target.reduce_ambient([img.entry(i, 0) for i in range(img.rows)])
            if not target.is_zero(el):
                raise InputError("map does not respect relations")

    def apply(self, el):
        amb = self.source.lift(el)
        img = self.matrix @ Mat.column(ZZ, list(amb))
        return self.target.reduce_ambient([img.entry(i, 0) for i in range(img.rows)])

    def image_generators(self):
        eye = [[1 if i == j else 0 for j in range(self.source.rank)] for i in range(self.source.rank)]
        return [self.apply(self.source.reduce_ambient(row)) for row in eye]

    def kernel_generators(self):
        """Generators of the kernel as elements of the source."""
        rel_t = self.target.relations
        cols = self.source.rank + len(rel_t)
        rows = self.target.rank
        entries = [
            [self.matrix.entry(i, j) for j in range(self.source.rank)]
            + [rel_t[k][i] for k in range(len(rel_t))]
            for i in range(rows)
        ]
        A = Mat(ZZ, rows, cols, entries)
        dg = diagonalize(A, need=("V",))
        gens = []
        for j in range(dg.rank, cols):
            amb = [dg.V.entry(i, j) for i in range(cols)][: self.source.rank]
            gens.append(self.source.reduce_ambient(amb))
        # source relations are killed too, but they are already zero classes
        return [g for g in gens if not self.source.is_zero(g)]

    def is_injective(self):
        return not self.kernel_generators()

    def is_surjective(self):
        gens = self.image_generators()
        eye = Mat.identity(ZZ, self.target.rank)
        for i in range(self.target.rank):
            el = self.target.reduce_ambient([eye.entry(j, i) for j in range(self.target.rank)])
            if not self.target.subgroup_contains(gens, el):
                return False
        return True

    def is_isomorphism(self):
        return self.is_injective() and self.is_surjective()


def subgroups_equal(group: AbGroup, gens_a, gens_b):
    return all(group.subgroup_contains(gens_a, g) for g in gens_b) and all(
        group.subgroup_contains(gens_b, g) for g in gens_a
    )
