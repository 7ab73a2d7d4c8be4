"""Bounded chain complexes of finitely generated free modules over Z or
F_p, with the operations making them a computable pointed model category:
cones, cylinders, pushouts along degreewise-split monomorphisms,
nullhomotopy solving, homology, and presented groups of homotopy classes.

Sign conventions, fixed globally:
  cone(f)_n = B_n (+) A_{n-1},   d(b, a) = (d b + f a, -d a)
  suspension: degree shift up by one with negated differential
  cylinder(f)_n = A_n (+) A_{n-1} (+) B_n,
                 d(x, a, b) = (d x - a, -d a, d b + f a)
"""

from .abgroup import AbGroup, AbMap
from .errors import InputError, PreconditionError
from .exact import (
    LinearSystem,
    Mat,
    Solver,
    block,
    is_unimodular,
    nullspace,
    solve_matrix,
    split_mono,
)


class ChainComplex:
    """Bounded complex; dims[i] is the rank in degree min_degree + i and
    diff(n) maps degree n to degree n-1.  Zero ranks at either end are
    trimmed so equal complexes compare equal."""

    __slots__ = ("ring", "min_degree", "dims", "_diffs")

    def __init__(self, ring, min_degree, dims, diffs, check=True):
        dims = list(dims)
        diffs = list(diffs)
        if len(diffs) != len(dims):
            raise InputError("need one differential entry per degree")
        # trim zero-rank ends
        while dims and dims[-1] == 0:
            dims.pop()
            diffs.pop()
        while dims and dims[0] == 0:
            dims.pop(0)
            diffs.pop(0)
            min_degree += 1
            if diffs:
                diffs[0] = Mat(ring, 0, dims[0])
        if not dims:
            min_degree = 0
        self.ring = ring
        self.min_degree = min_degree
        self.dims = tuple(dims)
        fixed = []
        for i, m in enumerate(diffs):
            want_r = dims[i - 1] if i > 0 else 0
            want_c = dims[i]
            if m.rows != want_r or m.cols != want_c:
                raise InputError(
                    f"differential at degree {min_degree + i} has shape "
                    f"{m.rows}x{m.cols}, expected {want_r}x{want_c}"
                )
            if m.ring != ring:
                raise InputError("differential ring mismatch")
            fixed.append(m)
        self._diffs = tuple(fixed)
        if check:
            for i in range(1, len(fixed)):
                if not (fixed[i - 1] @ fixed[i]).is_zero():
                    raise InputError(
                        f"d.d != 0 at degree {min_degree + i}"
                    )

    @classmethod
    def zero(cls, ring):
        return cls(ring, 0, [], [])

    @classmethod
    def free_rank_one(cls, ring, degree):
        return cls(ring, degree, [1], [Mat(ring, 0, 1)])

    @property
    def max_degree(self):
        return self.min_degree + len(self.dims) - 1

    def degrees(self):
        return range(self.min_degree, self.min_degree + len(self.dims))

    def dim(self, n):
        i = n - self.min_degree
        if 0 <= i < len(self.dims):
            return self.dims[i]
        return 0

    def diff(self, n):
        i = n - self.min_degree
        if 0 <= i < len(self.dims):
            return self._diffs[i]
        return Mat(self.ring, self.dim(n - 1), self.dim(n))

    def total_rank(self):
        return sum(self.dims)

    def is_zero_object(self):
        return not self.dims

    def __eq__(self, other):
        return (
            isinstance(other, ChainComplex)
            and self.ring == other.ring
            and self.min_degree == other.min_degree
            and self.dims == other.dims
            and self._diffs == other._diffs
        )

    def __hash__(self):
        return hash((self.ring, self.min_degree, self.dims, self._diffs))

    def __repr__(self):
        ds = {n: self.dim(n) for n in self.degrees()}
        return f"ChainComplex({self.ring}, dims={ds})"


class ChainMap:
    """Degreewise matrices commuting strictly with the differentials."""

    __slots__ = ("source", "target", "comps")

    def __init__(self, source, target, comps, check=True):
        if source.ring != target.ring:
            raise InputError("chain map ring mismatch")
        self.source = source
        self.target = target
        stored = {}
        for n, m in comps.items():
            if m.rows != target.dim(n) or m.cols != source.dim(n):
                raise InputError(f"component at degree {n} has wrong shape")
            if target.dim(n) and source.dim(n):
                stored[n] = m
        # fill unstated degrees with zero blocks
        for n in source.degrees():
            if source.dim(n) and target.dim(n) and n not in stored:
                stored[n] = Mat(source.ring, target.dim(n), source.dim(n))
        self.comps = dict(sorted(stored.items()))
        if check:
            lo = min(source.min_degree, target.min_degree) if source.dims or target.dims else 0
            hi = max(source.max_degree, target.max_degree) if source.dims or target.dims else 0
            for n in range(lo, hi + 1):
                lhs = self.component(n - 1) @ source.diff(n)
                rhs = target.diff(n) @ self.component(n)
                if lhs != rhs:
                    raise InputError(f"chain map fails d-commutation at degree {n}")

    def component(self, n):
        if n in self.comps:
            return self.comps[n]
        return Mat(self.source.ring, self.target.dim(n), self.source.dim(n))

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, {}, check=False)

    @classmethod
    def identity(cls, obj):
        return cls(
            obj,
            obj,
            {n: Mat.identity(obj.ring, obj.dim(n)) for n in obj.degrees()},
            check=False,
        )

    def compose(self, other):
        """self o other (other first)."""
        if other.target != self.source:
            raise InputError("composition endpoint mismatch")
        comps = {}
        for n in other.source.degrees():
            if other.source.dim(n) and self.target.dim(n):
                comps[n] = self.component(n) @ other.component(n)
        return ChainMap(other.source, self.target, comps, check=False)

    def __add__(self, other):
        self._match(other)
        return ChainMap(
            self.source,
            self.target,
            {n: self.component(n) + other.component(n) for n in self.comps.keys() | other.comps.keys()},
            check=False,
        )

    def __sub__(self, other):
        self._match(other)
        return ChainMap(
            self.source,
            self.target,
            {n: self.component(n) - other.component(n) for n in self.comps.keys() | other.comps.keys()},
            check=False,
        )

    def __neg__(self):
        return ChainMap(self.source, self.target, {n: -m for n, m in self.comps.items()}, check=False)

    def scale(self, c):
        return ChainMap(
            self.source, self.target, {n: m.scale(c) for n, m in self.comps.items()}, check=False
        )

    def is_zero(self):
        return all(m.is_zero() for m in self.comps.values())

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        for n in self.comps.keys() | other.comps.keys():
            if self.component(n) != other.component(n):
                return False
        return True

    def __hash__(self):
        return hash((self.source, self.target, tuple(sorted(self.comps.items()))))

    def _match(self, other):
        if self.source != other.source or self.target != other.target:
            raise InputError("chain map endpoint mismatch")

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"


class ChainHomotopy:
    """H with (from - to)_n = d_{n+1} H_n + H_{n-1} d_n."""

    __slots__ = ("from_map", "to_map", "comps")

    def __init__(self, from_map, to_map, comps, check=True):
        if from_map.source != to_map.source or from_map.target != to_map.target:
            raise InputError("homotopy endpoints mismatch")
        self.from_map = from_map
        self.to_map = to_map
        A, B = from_map.source, from_map.target
        stored = {}
        for n, m in comps.items():
            if m.rows != B.dim(n + 1) or m.cols != A.dim(n):
                raise InputError(f"homotopy component at degree {n} has wrong shape")
            if m.rows and m.cols:
                stored[n] = m
        self.comps = dict(sorted(stored.items()))
        if check and not self.verify():
            raise InputError("homotopy identity fails")

    def component(self, n):
        A, B = self.from_map.source, self.from_map.target
        if n in self.comps:
            return self.comps[n]
        return Mat(A.ring, B.dim(n + 1), A.dim(n))

    def verify(self):
        A, B = self.from_map.source, self.from_map.target
        diff = self.from_map - self.to_map
        lo = min([*A.degrees()] + [*B.degrees()], default=0)
        hi = max([*A.degrees()] + [*B.degrees()], default=0)
        for n in range(lo, hi + 1):
            want = diff.component(n)
            got = B.diff(n + 1) @ self.component(n) + self.component(n - 1) @ A.diff(n)
            if want != got:
                return False
        return True

    def precompose(self, g: ChainMap):
        """H o g : a homotopy from from_map o g to to_map o g."""
        comps = {n: self.component(n) @ g.component(n) for n in g.source.degrees()}
        return ChainHomotopy(
            self.from_map.compose(g), self.to_map.compose(g), comps, check=False
        )

    def postcompose(self, g: ChainMap):
        """g o H : a homotopy from g o from_map to g o to_map."""
        comps = {n: g.component(n + 1) @ self.component(n) for n in self.from_map.source.degrees()}
        return ChainHomotopy(
            g.compose(self.from_map), g.compose(self.to_map), comps, check=False
        )


# ---------------------------------------------------------------------
# basic constructions


def direct_sum(A: ChainComplex, B: ChainComplex):
    """(A (+) B, inclusion_A, inclusion_B, projection_A, projection_B)."""
    ring = A.ring
    if A.is_zero_object() and B.is_zero_object():
        Z = ChainComplex.zero(ring)
        z = ChainMap.zero(Z, Z)
        return Z, z, z, z, z
    lows = [o.min_degree for o in (A, B) if o.dims]
    highs = [o.max_degree for o in (A, B) if o.dims]
    lo, hi = min(lows), max(highs)
    dims = [A.dim(n) + B.dim(n) for n in range(lo, hi + 1)]
    diffs = []
    for i, n in enumerate(range(lo, hi + 1)):
        if i == 0:
            diffs.append(Mat(ring, 0, dims[0]))
            continue
        diffs.append(
            block(
                ring,
                [
                    [A.diff(n), Mat(ring, A.dim(n - 1), B.dim(n))],
                    [Mat(ring, B.dim(n - 1), A.dim(n)), B.diff(n)],
                ],
            )
        )
    S = ChainComplex(ring, lo, dims, diffs, check=False)
    iA = {}
    iB = {}
    pA = {}
    pB = {}
    for n in range(lo, hi + 1):
        a, b = A.dim(n), B.dim(n)
        iA[n] = block(ring, [[Mat.identity(ring, a)], [Mat(ring, b, a)]])
        iB[n] = block(ring, [[Mat(ring, a, b)], [Mat.identity(ring, b)]])
        pA[n] = block(ring, [[Mat.identity(ring, a), Mat(ring, a, b)]])
        pB[n] = block(ring, [[Mat(ring, b, a), Mat.identity(ring, b)]])
    return (
        S,
        ChainMap(A, S, iA, check=False),
        ChainMap(B, S, iB, check=False),
        ChainMap(S, A, pA, check=False),
        ChainMap(S, B, pB, check=False),
    )


def cone(f: ChainMap):
    """(C_f, incl: B -> C_f, proj: C_f -> suspension(A))."""
    A, B = f.source, f.target
    ring = A.ring
    if A.is_zero_object() and B.is_zero_object():
        Z = ChainComplex.zero(ring)
        return Z, ChainMap.zero(B, Z), ChainMap.zero(Z, suspension(A))
    lows = []
    highs = []
    if B.dims:
        lows.append(B.min_degree)
        highs.append(B.max_degree)
    if A.dims:
        lows.append(A.min_degree + 1)
        highs.append(A.max_degree + 1)
    lo, hi = min(lows), max(highs)
    dims = []
    diffs = []
    for n in range(lo, hi + 1):
        dims.append(B.dim(n) + A.dim(n - 1))
        if n == lo:
            diffs.append(Mat(ring, 0, dims[0]))
        else:
            diffs.append(
                block(
                    ring,
                    [
                        [B.diff(n), f.component(n - 1)],
                        [Mat(ring, A.dim(n - 2), B.dim(n)), -A.diff(n - 1)],
                    ],
                )
            )
    C = ChainComplex(ring, lo, dims, diffs, check=False)
    incl = {}
    proj = {}
    for n in range(lo, hi + 1):
        b, a = B.dim(n), A.dim(n - 1)
        incl[n] = block(ring, [[Mat.identity(ring, b)], [Mat(ring, a, b)]])
        proj[n] = block(ring, [[Mat(ring, a, b), Mat.identity(ring, a)]])
    SA = suspension(A)
    return C, ChainMap(B, C, incl, check=False), ChainMap(C, SA, proj, check=False)


def cone_on(A: ChainComplex):
    """(CA, i: A -> CA) with CA = cone(identity); CA is acyclic."""
    C, incl, _ = cone(ChainMap.identity(A))
    return C, ChainMap(A, C, {n: incl.component(n) for n in A.degrees()}, check=False)


def suspension(A: ChainComplex):
    """Degree shift up by one, differential negated."""
    if not A.dims:
        return A
    return ChainComplex(
        A.ring,
        A.min_degree + 1,
        A.dims,
        [-(m) for m in A._diffs],
        check=False,
    )


def suspend_map(f: ChainMap):
    SA, SB = suspension(f.source), suspension(f.target)
    return ChainMap(SA, SB, {n + 1: m for n, m in f.comps.items()}, check=False)


def suspend_iter(A, k):
    for _ in range(k):
        A = suspension(A)
    return A


def suspend_map_iter(f, k):
    for _ in range(k):
        f = suspend_map(f)
    return f


def cylinder_factorization(f: ChainMap):
    """(M, j: A -> M cofibration, q: M -> B) with q o j = f strictly,
    q a retraction and quasi-isomorphism."""
    A, B = f.source, f.target
    ring = A.ring
    lows = []
    highs = []
    if A.dims:
        lows += [A.min_degree]
        highs += [A.max_degree + 1]
    if B.dims:
        lows += [B.min_degree]
        highs += [B.max_degree]
    if not lows:
        Z = ChainComplex.zero(ring)
        zm = ChainMap.zero(Z, Z)
        return Z, zm, zm
    lo, hi = min(lows), max(highs)
    dims = []
    diffs = []
    for n in range(lo, hi + 1):
        x, a, b = A.dim(n), A.dim(n - 1), B.dim(n)
        dims.append(x + a + b)
        if n == lo:
            diffs.append(Mat(ring, 0, dims[0]))
            continue
        xm, am, bm = A.dim(n - 1), A.dim(n - 2), B.dim(n - 1)
        diffs.append(
            block(
                ring,
                [
                    [A.diff(n), -Mat.identity(ring, a), Mat(ring, xm, b)],
                    [Mat(ring, am, x), -A.diff(n - 1), Mat(ring, am, b)],
                    [Mat(ring, bm, x), f.component(n - 1), B.diff(n)],
                ],
            )
        )
    M = ChainComplex(ring, lo, dims, diffs, check=False)
    j = {}
    q = {}
    for n in range(lo, hi + 1):
        x, a, b = A.dim(n), A.dim(n - 1), B.dim(n)
        j[n] = block(ring, [[Mat.identity(ring, x)], [Mat(ring, a, x)], [Mat(ring, b, x)]])
        q[n] = block(ring, [[f.component(n), Mat(ring, b, a), Mat.identity(ring, b)]])
    return M, ChainMap(A, M, j, check=False), ChainMap(M, B, q, check=False)


# ---------------------------------------------------------------------
# cofibrations, quotients, pushouts


def is_cofibration(f: ChainMap):
    """Degreewise split mono with free cokernel."""
    for n in f.source.degrees():
        if f.source.dim(n) == 0:
            continue
        if split_mono(f.component(n)) is None:
            return False
    return True


class SplitInclusion:
    """A cofibration with chosen degreewise splittings, its strict
    cokernel complex, and the induced structure maps."""

    def __init__(self, f: ChainMap):
        X, Y = f.source, f.target
        self.incl = f
        self.splits = {}
        for n in Y.degrees():
            s = split_mono(f.component(n))
            if s is None:
                raise PreconditionError(f"not a cofibration at degree {n}")
            self.splits[n] = s
        ring = Y.ring
        dims = []
        diffs = []
        lo = Y.min_degree if Y.dims else 0
        hi = Y.max_degree if Y.dims else -1
        for n in range(lo, hi + 1):
            dims.append(self._split(n).coker_rank)
        for i, n in enumerate(range(lo, hi + 1)):
            if i == 0:
                diffs.append(Mat(ring, 0, dims[0]))
            else:
                diffs.append(self._split(n - 1).P @ Y.diff(n) @ self._split(n).T)
        self.quotient = ChainComplex(ring, lo, dims, diffs, check=False)
        self.proj = ChainMap(
            Y,
            self.quotient,
            {n: self._split(n).P for n in range(lo, hi + 1)},
            check=False,
        )

    def _split(self, n):
        if n in self.splits:
            return self.splits[n]
        Y = self.incl.target
        m = Mat(Y.ring, Y.dim(n), self.incl.source.dim(n))
        return split_mono(m)

    def retraction_component(self, n):
        return self._split(n).R

    def section_component(self, n):
        return self._split(n).T

    def section_degreewise(self):
        """The degreewise (non-chain) section T of the projection."""
        return {n: self._split(n).T for n in self.quotient.degrees()}

    def connecting(self):
        """delta: quotient -> suspension(X), realized as R d T degreewise."""
        X, Y = self.incl.source, self.incl.target
        SX = suspension(X)
        comps = {}
        for n in self.quotient.degrees():
            comps[n] = self.retraction_component(n - 1) @ Y.diff(n) @ self.section_component(n)
        return ChainMap(self.quotient, SX, comps, check=False)

    def induced_on_quotients(self, other, u: ChainMap):
        """For a strictly commuting square (self.incl, other.incl, u_X, u):
        the induced map on cokernels, characterized by
        induced o proj = proj' o u."""
        comps = {}
        for n in self.quotient.degrees():
            comps[n] = other._split(n).P @ u.component(n) @ self._split(n).T
        return ChainMap(self.quotient, other.quotient, comps, check=False)

    def induced_from_cofiber(self, v: ChainMap, H: ChainHomotopy):
        """Given v: Y -> W with H a nullhomotopy of v o incl, the map
        phi: quotient -> W with phi o proj = v - d K - K d, K = H o R."""
        Y = self.incl.target
        W = v.target
        ring = Y.ring
        comps = {}
        for n in self.quotient.degrees():
            K_n = H.component(n) @ self.retraction_component(n)
            K_prev = H.component(n - 1) @ self.retraction_component(n - 1)
            vt = v.component(n) - W.diff(n + 1) @ K_n - K_prev @ Y.diff(n)
            comps[n] = vt @ self.section_component(n)
        phi = ChainMap(self.quotient, W, comps, check=False)
        return phi

    def verify_split_exact(self):
        """Degreewise: (incl | section) is invertible and proj o incl = 0."""
        X, Y = self.incl.source, self.incl.target
        for n in Y.degrees():
            F = self.incl.component(n)
            T = self.section_component(n)
            if not (self.proj.component(n) @ F).is_zero():
                return False
            if X.dim(n) + self.quotient.dim(n) != Y.dim(n):
                return False
            if Y.dim(n) and not is_unimodular(F.hstack(T)):
                return False
        return True


def quotient_by(f: ChainMap):
    """(Q, proj) for a cofibration f; Q is the strict cokernel."""
    si = SplitInclusion(f)
    return si.quotient, si.proj


def pushout(f: ChainMap, k: ChainMap):
    """Pushout of a cofibration f: X -> Y along any k: X -> Z.

    Returns (P, j: Z -> P cofibration, i: Y -> P, out) where
    out(u, v) assembles the universal map for u: Y -> W, v: Z -> W
    with u o f = v o k.
    """
    if f.source != k.source:
        raise InputError("pushout legs must share their source")
    si = SplitInclusion(f)
    C = si.quotient
    Z = k.target
    ring = Z.ring
    S, iC, iZ, pC, pZ = direct_sum(C, Z)
    dims = [S.dim(n) for n in S.degrees()]
    diffs = []
    lo = S.min_degree if S.dims else 0
    hi = S.max_degree if S.dims else -1
    for idx, n in enumerate(range(lo, hi + 1)):
        if idx == 0:
            diffs.append(Mat(ring, 0, dims[0]))
            continue
        dC = C.diff(n)
        twist = k.component(n - 1) @ si.retraction_component(n - 1) @ f.target.diff(n) @ si.section_component(n)
        d_n = block(
            ring,
            [
                [dC, Mat(ring, C.dim(n - 1), Z.dim(n))],
                [twist, Z.diff(n)],
            ],
        )
        diffs.append(d_n)
    P = ChainComplex(ring, lo, dims, diffs, check=False) if dims else ChainComplex.zero(ring)
    j = ChainMap(Z, P, {n: iZ.component(n) for n in Z.degrees()}, check=False)
    i_comps = {}
    for n in f.target.degrees():
        i_comps[n] = block(
            ring,
            [
                [si._split(n).P],
                [k.component(n) @ si.retraction_component(n)],
            ],
        )
    i = ChainMap(f.target, P, i_comps, check=False)

    def out(u: ChainMap, v: ChainMap):
        comps = {}
        W = u.target
        for n in P.degrees():
            comps[n] = block(
                ring,
                [[u.component(n) @ si.section_component(n), v.component(n)]],
            )
        return ChainMap(P, W, comps, check=False)

    return P, j, i, out


# ---------------------------------------------------------------------
# homotopy solving


def _degree_range(*objs):
    lows = [o.min_degree for o in objs if o.dims]
    highs = [o.max_degree for o in objs if o.dims]
    if not lows:
        return range(0, 0)
    return range(min(lows), max(highs) + 1)


def homotopy_system(A: ChainComplex, B: ChainComplex):
    """System whose unknowns H_n: A_n -> B_{n+1} will be constrained by
    the caller; returns (system, names of the degrees used)."""
    sys = LinearSystem(A.ring)
    degs = []
    for n in _degree_range(A, B):
        if A.dim(n) and B.dim(n + 1):
            sys.add_unknown(f"H{n}", B.dim(n + 1), A.dim(n))
            degs.append(n)
    return sys, degs


def _homotopy_terms(A, B, n):
    """Terms of (dH + Hd)_n as (name, left, right) triples."""
    terms = []
    if A.dim(n) and B.dim(n + 1):
        terms.append((f"H{n}", B.diff(n + 1), Mat.identity(A.ring, A.dim(n))))
    if A.dim(n - 1) and B.dim(n):
        terms.append((f"H{n-1}", Mat.identity(A.ring, B.dim(n)), A.diff(n)))
    return terms


def solve_homotopy(f: ChainMap, g: ChainMap):
    """H with f - g = dH + Hd, or None.  Deterministic."""
    f._match(g)
    A, B = f.source, f.target
    sys, hdegs = homotopy_system(A, B)
    diff = f - g
    for n in _degree_range(A, B):
        if not (A.dim(n) and B.dim(n)):
            continue
        terms = [t for t in _homotopy_terms(A, B, n) if t[0] in sys.unknowns]
        sys.add_equation(B.dim(n), A.dim(n), terms, rhs=diff.component(n))
    sol = sys.solve_particular()
    if sol is None:
        return None
    comps = {n: sol[f"H{n}"] for n in hdegs}
    return ChainHomotopy(f, g, comps, check=False)


def homotopic(f, g):
    return solve_homotopy(f, g) is not None


class NullhomotopySpace:
    """The affine space of nullhomotopies of a map f (dH + Hd = f).

    ``particular`` is None when f is not nullhomotopic.  Kernel members
    are degree-one cycles; viewed as chain maps suspension(source) ->
    target via ``cycles``.
    """

    def __init__(self, f: ChainMap):
        A, B = f.source, f.target
        self.map = f
        sys, hdegs = homotopy_system(A, B)
        for n in _degree_range(A, B):
            if not (A.dim(n) and B.dim(n)):
                continue
            terms = [t for t in _homotopy_terms(A, B, n) if t[0] in sys.unknowns]
            sys.add_equation(B.dim(n), A.dim(n), terms, rhs=f.component(n))
        part, kernel = sys.solve()
        self._hdegs = hdegs
        self._particular = part
        self._kernel = kernel

    @property
    def solvable(self):
        return self._particular is not None

    def witness(self, coeffs=()):
        """The nullhomotopy for the given kernel coefficients."""
        if self._particular is None:
            return None
        comps = {}
        for n in self._hdegs:
            m = self._particular[f"H{n}"]
            for c, k in zip(coeffs, self._kernel):
                if c:
                    m = m + k[f"H{n}"].scale(c)
            comps[n] = m
        zero = ChainMap.zero(self.map.source, self.map.target)
        return ChainHomotopy(self.map, zero, comps, check=False)

    @property
    def kernel_dim(self):
        return len(self._kernel)

    def cycles(self):
        """Kernel basis as chain maps suspension(source) -> target."""
        out = []
        SA = suspension(self.map.source)
        for k in self._kernel:
            comps = {n + 1: k[f"H{n}"] for n in self._hdegs}
            out.append(ChainMap(SA, self.map.target, comps, check=False))
        return out


def nullhomotopy_space(f: ChainMap):
    return NullhomotopySpace(f)


def chain_map_space(A: ChainComplex, B: ChainComplex):
    """Basis of the module of chain maps A -> B (degree-zero cycles)."""
    sys = LinearSystem(A.ring)
    degs = []
    for n in _degree_range(A, B):
        if A.dim(n) and B.dim(n):
            sys.add_unknown(f"f{n}", B.dim(n), A.dim(n))
            degs.append(n)
    for n in _degree_range(A, B):
        terms = []
        if A.dim(n) and B.dim(n) and B.dim(n - 1):
            terms.append((f"f{n}", B.diff(n), Mat.identity(A.ring, A.dim(n))))
        if A.dim(n - 1) and B.dim(n - 1) and A.dim(n):
            terms.append((f"f{n-1}", -Mat.identity(A.ring, B.dim(n - 1)), A.diff(n)))
        if terms:
            sys.add_equation(B.dim(n - 1), A.dim(n), terms)
    _, kernel = sys.solve()
    out = []
    for k in kernel:
        comps = {n: k[f"f{n}"] for n in degs}
        out.append(ChainMap(A, B, comps, check=False))
    return out


# ---------------------------------------------------------------------
# homology


def homology(A: ChainComplex):
    """Per-degree presentations: dict degree -> AbGroup.

    Over Z the group is ker/im with invariant factors; over F_p the
    presentation carries p-relations so invariants are [p] * dimension.
    """
    out = {}
    for n in A.degrees():
        cycles = nullspace(A.diff(n))
        if not cycles:
            out[n] = AbGroup(0)
            continue
        Zmat = Mat(
            A.ring,
            A.dim(n),
            len(cycles),
            [[cycles[j].entry(i, 0) for j in range(len(cycles))] for i in range(A.dim(n))],
        )
        rels = []
        img = A.diff(n + 1)
        if img.cols:
            coords = solve_matrix(Zmat, img)
            assert coords is not None, "boundary is not a cycle?"
            rels = [
                [coords.entry(i, j) for i in range(coords.rows)] for j in range(img.cols)
            ]
        out[n] = AbGroup(len(cycles), rels, field_p=A.ring.p)
    return out


def homology_replacement(A: ChainComplex):
    """Zero-differential complex with the homology ranks (fields only)."""
    if not A.ring.is_field:
        raise PreconditionError("homology replacement needs a field")
    inv = homology_invariants(A)
    if not inv:
        return ChainComplex.zero(A.ring)
    lo, hi = min(inv), max(inv)
    dims = [len(inv.get(n, [])) for n in range(lo, hi + 1)]
    diffs = [Mat(A.ring, 0 if i == 0 else dims[i - 1], dims[i]) for i in range(len(dims))]
    return ChainComplex(A.ring, lo, dims, diffs, check=False)


def homology_invariants(A: ChainComplex):
    """dict degree -> sorted invariant factors (0 = free factor)."""
    return {n: g.invariants() for n, g in homology(A).items() if not g.is_trivial()}


def is_acyclic(A: ChainComplex):
    return not homology_invariants(A)


def is_quasi_iso(f: ChainMap):
    """True iff the cone of f is acyclic."""
    C, _, _ = cone(f)
    return is_acyclic(C)


def homology_shift(inv, r):
    """Shift a homology_invariants dict up by r degrees."""
    return {n + r: v for n, v in inv.items()}


class HomologyData:
    """Cycle bases and presentations, with induced maps on classes."""

    def __init__(self, A: ChainComplex):
        self.complex = A
        self.cycle_bases = {}
        self.groups = {}
        for n in A.degrees():
            cycles = nullspace(A.diff(n))
            Zmat = Mat(
                A.ring,
                A.dim(n),
                len(cycles),
                [[cycles[j].entry(i, 0) for j in range(len(cycles))] for i in range(A.dim(n))],
            )
            rels = []
            img = A.diff(n + 1)
            for j in range(img.cols):
                coords = solve_matrix(Zmat, img.submatrix(0, img.rows, j, j + 1))
                rels.append([coords.entry(i, 0) for i in range(coords.rows)])
            self.cycle_bases[n] = Zmat
            self.groups[n] = AbGroup(len(cycles), rels, field_p=A.ring.p)

    def group(self, n):
        return self.groups.get(n, AbGroup(0))


def induced_homology_map(f: ChainMap, HA: HomologyData, HB: HomologyData, n):
    """The map H_n(f) between presented homology groups."""
    GA, GB = HA.group(n), HB.group(n)
    ZA = HA.cycle_bases.get(n)
    ZB = HB.cycle_bases.get(n)
    from .exact import ZZ

    if ZA is None or ZB is None or GA.rank == 0 or GB.rank == 0:
        return AbMap(GA, GB, Mat(ZZ, GB.rank, GA.rank))
    img = f.component(n) @ ZA
    coords = solve_matrix(ZB, img)
    assert coords is not None, "image of a cycle is not a cycle?"
    return AbMap(GA, GB, Mat(ZZ, coords.rows, coords.cols, coords.to_lists()))


# ---------------------------------------------------------------------
# groups of homotopy classes


class HomGroup:
    """The abelian group [A, B] of chain maps modulo chain homotopy,
    with explicit representatives and exact coordinate arithmetic."""

    def __init__(self, A: ChainComplex, B: ChainComplex):
        if A.ring != B.ring:
            raise InputError("hom group ring mismatch")
        self.source = A
        self.target = B
        self.basis = chain_map_space(A, B)
        vec_len = sum(
            B.dim(n) * A.dim(n) for n in _degree_range(A, B) if A.dim(n) and B.dim(n)
        )
        self._vec_degs = [n for n in _degree_range(A, B) if A.dim(n) and B.dim(n)]
        cols = [self._vec(f) for f in self.basis]
        self._basis_mat = Mat(
            A.ring,
            vec_len,
            len(cols),
            [[cols[j][i] for j in range(len(cols))] for i in range(vec_len)],
        )
        self._solver = Solver(self._basis_mat)
        bvecs = []
        for n in _degree_range(A, B):
            if not (A.dim(n) and B.dim(n + 1)):
                continue
            for r in range(B.dim(n + 1)):
                for c in range(A.dim(n)):
                    H = {n: Mat(A.ring, B.dim(n + 1), A.dim(n)).with_entry(r, c, 1)}
                    bvecs.append(self._vec(self._boundary_map(H)))
        rels = []
        if bvecs:
            rhs = Mat(
                A.ring,
                vec_len,
                len(bvecs),
                [[bvecs[j][i] for j in range(len(bvecs))] for i in range(vec_len)],
            )
            coords = self._solver.solve(rhs)
            assert coords is not None
            rels = [
                [coords.entry(i, j) for i in range(coords.rows)] for j in range(len(bvecs))
            ]
        self.group = AbGroup(len(self.basis), rels, field_p=A.ring.p)

    def _boundary_map(self, Hcomps):
        A, B = self.source, self.target
        comps = {}
        for n in _degree_range(A, B):
            if not (A.dim(n) and B.dim(n)):
                continue
            m = Mat(A.ring, B.dim(n), A.dim(n))
            if n in Hcomps:
                m = m + B.diff(n + 1) @ Hcomps[n]
            if n - 1 in Hcomps:
                m = m + Hcomps[n - 1] @ A.diff(n)
            comps[n] = m
        return ChainMap(A, B, comps, check=False)

    def _vec(self, f: ChainMap):
        out = []
        for n in self._vec_degs:
            out.extend(f.component(n).vec())
        return out

    def class_of(self, f: ChainMap):
        if f.source != self.source or f.target != self.target:
            raise InputError("class_of endpoint mismatch")
        coords = self._solver.solve(Mat.column(self.source.ring, self._vec(f)))
        assert coords is not None, "not a chain map?"
        return self.group.reduce_ambient([coords.entry(i, 0) for i in range(coords.rows)])

    def representative(self, el):
        amb = self.group.lift(el)
        f = ChainMap.zero(self.source, self.target)
        for c, g in zip(amb, self.basis):
            if c:
                f = f + g.scale(c)
        return f

    @property
    def zero(self):
        return self.group.zero

    def is_zero_class(self, el):
        return self.group.is_zero(el)

    def add(self, a, b):
        return self.group.add(a, b)

    def subgroup_contains(self, gens, el):
        return self.group.subgroup_contains(gens, el)

    def invariants(self):
        return self.group.invariants()


# ---------------------------------------------------------------------
# transfers along quasi-isomorphisms and zigzags


def extend_along(u: ChainMap, g: ChainMap):
    """h: Y -> W with h o u homotopic to g, for u: X -> Y a quasi-iso
    and g: X -> W.  Returns (h, homotopy) or None."""
    X, Y = u.source, u.target
    W = g.target
    ring = X.ring
    sys = LinearSystem(ring)
    hdegs = []
    for n in _degree_range(Y, W):
        if Y.dim(n) and W.dim(n):
            sys.add_unknown(f"h{n}", W.dim(n), Y.dim(n))
            hdegs.append(n)
    kdegs = []
    for n in _degree_range(X, W):
        if X.dim(n) and W.dim(n + 1):
            sys.add_unknown(f"K{n}", W.dim(n + 1), X.dim(n))
            kdegs.append(n)
    # chain-map condition on h
    for n in _degree_range(Y, W):
        terms = []
        if Y.dim(n) and W.dim(n) and W.dim(n - 1):
            terms.append((f"h{n}", W.diff(n), Mat.identity(ring, Y.dim(n))))
        if Y.dim(n - 1) and W.dim(n - 1) and Y.dim(n):
            terms.append((f"h{n-1}", -Mat.identity(ring, W.dim(n - 1)), Y.diff(n)))
        if terms:
            sys.add_equation(W.dim(n - 1), Y.dim(n), terms)
    # h o u - (dK + Kd) = g
    for n in _degree_range(X, W):
        if not (X.dim(n) and W.dim(n)):
            continue
        terms = []
        if f"h{n}" in sys.unknowns:
            terms.append((f"h{n}", Mat.identity(ring, W.dim(n)), u.component(n)))
        if f"K{n}" in sys.unknowns:
            terms.append((f"K{n}", -W.diff(n + 1), Mat.identity(ring, X.dim(n))))
        if f"K{n-1}" in sys.unknowns:
            terms.append((f"K{n-1}", -Mat.identity(ring, W.dim(n)), X.diff(n)))
        sys.add_equation(W.dim(n), X.dim(n), terms, rhs=g.component(n))
    sol = sys.solve_particular()
    if sol is None:
        return None
    h = ChainMap(Y, W, {n: sol[f"h{n}"] for n in hdegs}, check=False)
    return h


def lift_along(u: ChainMap, g: ChainMap):
    """h: W -> X with u o h homotopic to g, for u: X -> Y a quasi-iso
    and g: W -> Y.  Returns h or None."""
    X, Y = u.source, u.target
    W = g.source
    ring = X.ring
    sys = LinearSystem(ring)
    hdegs = []
    for n in _degree_range(W, X):
        if W.dim(n) and X.dim(n):
            sys.add_unknown(f"h{n}", X.dim(n), W.dim(n))
            hdegs.append(n)
    for n in _degree_range(W, Y):
        if W.dim(n) and Y.dim(n + 1):
            sys.add_unknown(f"K{n}", Y.dim(n + 1), W.dim(n))
    for n in _degree_range(W, X):
        terms = []
        if W.dim(n) and X.dim(n) and X.dim(n - 1):
            terms.append((f"h{n}", X.diff(n), Mat.identity(ring, W.dim(n))))
        if W.dim(n - 1) and X.dim(n - 1) and W.dim(n):
            terms.append((f"h{n-1}", -Mat.identity(ring, X.dim(n - 1)), W.diff(n)))
        if terms:
            sys.add_equation(X.dim(n - 1), W.dim(n), terms)
    for n in _degree_range(W, Y):
        if not (W.dim(n) and Y.dim(n)):
            continue
        terms = []
        if f"h{n}" in sys.unknowns:
            terms.append((f"h{n}", u.component(n), Mat.identity(ring, W.dim(n))))
        if f"K{n}" in sys.unknowns:
            terms.append((f"K{n}", -Y.diff(n + 1), Mat.identity(ring, W.dim(n))))
        if f"K{n-1}" in sys.unknowns:
            terms.append((f"K{n-1}", -Mat.identity(ring, Y.dim(n)), W.diff(n)))
        sys.add_equation(Y.dim(n), W.dim(n), terms, rhs=g.component(n))
    sol = sys.solve_particular()
    if sol is None:
        return None
    return ChainMap(W, X, {n: sol[f"h{n}"] for n in hdegs}, check=False)


class Zigzag:
    """A chain of quasi-isomorphisms connecting two complexes.

    legs are (map, forward) pairs; a forward leg points along the travel
    direction, a backward leg points against it.  Classes of maps in and
    out of the endpoints transport along the zigzag by composing with
    forward legs and solving through backward ones (or vice versa).
    """

    def __init__(self, start, legs=()):
        self.start = start
        self.legs = list(legs)
        self.end = start
        for m, forward in self.legs:
            expected = self.end
            got = m.source if forward else m.target
            if got != expected:
                raise InputError("zigzag legs do not chain")
            self.end = m.target if forward else m.source

    def append(self, m, forward):
        return Zigzag(self.start, self.legs + [(m, forward)])

    def extend(self, other):
        if other.start != self.end:
            raise InputError("zigzag concatenation mismatch")
        return Zigzag(self.start, self.legs + other.legs)

    def reverse(self):
        return Zigzag(self.end, [(m, not fw) for m, fw in reversed(self.legs)])

    def suspend(self):
        return Zigzag(
            suspension(self.start),
            [(suspend_map(m), fw) for m, fw in self.legs],
        )

    def transport_out(self, g: ChainMap):
        """[start, W] -> [end, W] on representatives."""
        cur = g
        for m, forward in self.legs:
            if forward:
                nxt = extend_along(m, cur)
                assert nxt is not None, "transport along a non-quasi-iso leg"
                cur = nxt
            else:
                cur = cur.compose(m)
        return cur

    def transport_in(self, g: ChainMap):
        """[W, start] -> [W, end] on representatives."""
        cur = g
        for m, forward in self.legs:
            if forward:
                cur = m.compose(cur)
            else:
                nxt = lift_along(m, cur)
                assert nxt is not None, "transport along a non-quasi-iso leg"
                cur = nxt
        return cur

    def check_legs(self):
        return all(is_quasi_iso(m) for m, _ in self.legs)
