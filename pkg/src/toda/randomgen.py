"""Seeded random generators for test data.

Everything takes an explicit random.Random so runs reproduce exactly.
Complexes and maps are sampled from the exact solution spaces of their
defining equations, so all constraints hold on the nose over both rings.
"""

from .complexes import (
    ChainComplex,
    ChainHomotopy,
    ChainMap,
    chain_map_space,
    cone,
)
from .exact import LinearSystem, Mat, nullspace


def _coeff(rng, ring):
    if ring.is_field:
        return rng.randrange(ring.p)
    return rng.choice((-2, -1, -1, 0, 0, 1, 1, 2))


def random_complex(rng, ring, max_rank=2, span=3, min_degree_range=(-1, 1)):
    """A random bounded complex with exact d.d = 0."""
    lo = rng.randint(*min_degree_range)
    length = rng.randint(1, span)
    dims = [rng.randint(0, max_rank) for _ in range(length)]
    if not any(dims):
        dims[rng.randrange(length)] = 1
    diffs = [Mat(ring, 0, dims[0])]
    prev = None
    for i in range(1, length):
        r, c = dims[i - 1], dims[i]
        if r == 0 or c == 0:
            m = Mat(ring, r, c)
        elif prev is None or prev.is_zero() or prev.rows == 0:
            m = Mat(ring, r, c, [[_coeff(rng, ring) for _ in range(c)] for _ in range(r)])
        else:
            # each column lies in the kernel of the previous differential
            basis = nullspace(prev)
            cols = []
            for _ in range(c):
                col = [0] * r
                for b in basis:
                    t = _coeff(rng, ring)
                    if t:
                        for k in range(r):
                            col[k] = ring.norm(col[k] + t * b.entry(k, 0))
                cols.append(col)
            m = Mat(ring, r, c, [[cols[j][k] for j in range(c)] for k in range(r)])
        diffs.append(m)
        prev = m
    return ChainComplex(ring, lo, dims, diffs)


def random_combination(rng, basis, zero):
    out = zero
    for g in basis:
        t = _coeff(rng, ring=zero.source.ring)
        if t:
            out = out + g.scale(t)
    return out


def random_chain_map(rng, A, B):
    """A random strict chain map A -> B."""
    return random_combination(rng, chain_map_space(A, B), ChainMap.zero(A, B))


def random_null_composite(rng, f0, C2):
    """(f1, F): random f1: target(f0) -> C2 with f1 o f0 nullhomotopic,
    F an explicit witness.

    Any chain map on the cone of f0 restricts along the cone inclusion to
    a map killing f0 up to homotopy; the canonical contracting homotopy
    of incl o f0 transports to the witness.
    """
    A0, A1 = f0.source, f0.target
    ring = A0.ring
    Cf, incl, _ = cone(f0)
    ghat = random_chain_map(rng, Cf, C2)
    f1 = ghat.compose(incl)
    comps = {}
    for n in A0.degrees():
        a = A0.dim(n)
        b = A1.dim(n + 1)
        if a and Cf.dim(n + 1):
            # canonical homotopy of incl o f0: x |-> (0, x) in the cone
            blockm = Mat(ring, Cf.dim(n + 1), a)
            for i in range(a):
                blockm = blockm.with_entry(b + i, i, 1)
            comps[n] = ghat.component(n + 1) @ blockm
    F = ChainHomotopy(f1.compose(f0), ChainMap.zero(A0, C2), comps, check=False)
    assert F.verify()
    return f1, F


def random_toda_input(rng, ring, length, max_rank=2, span=2):
    """Maps f_0..f_{length-1} with every adjacent composite nullhomotopic."""
    a0 = random_complex(rng, ring, max_rank, span)
    a1 = random_complex(rng, ring, max_rank, span)
    maps = [random_chain_map(rng, a0, a1)]
    for _ in range(1, length):
        nxt = random_complex(rng, ring, max_rank, span)
        f, _ = random_null_composite(rng, maps[-1], nxt)
        maps.append(f)
    return maps


def maps_strictly_killing(prev: ChainMap, target: ChainComplex):
    """Basis of {g: target(prev) -> target : g o prev = 0 strictly}."""
    B, C = prev.target, target
    A = prev.source
    ring = B.ring
    sys = LinearSystem(ring)
    degs = []
    lo = min([x.min_degree for x in (A, B, C) if x.dims], default=0)
    hi = max([x.max_degree for x in (A, B, C) if x.dims], default=-1)
    for n in range(lo, hi + 1):
        if B.dim(n) and C.dim(n):
            sys.add_unknown(f"g{n}", C.dim(n), B.dim(n))
            degs.append(n)
    for n in range(lo, hi + 1):
        terms = []
        if f"g{n}" in sys.unknowns and C.dim(n - 1):
            terms.append((f"g{n}", C.diff(n), Mat.identity(ring, B.dim(n))))
        if f"g{n-1}" in sys.unknowns and B.dim(n):
            terms.append((f"g{n-1}", -Mat.identity(ring, C.dim(n - 1)), B.diff(n)))
        if terms:
            sys.add_equation(C.dim(n - 1), B.dim(n), terms)
    for n in range(lo, hi + 1):
        if f"g{n}" in sys.unknowns and A.dim(n):
            sys.add_equation(
                C.dim(n),
                A.dim(n),
                [(f"g{n}", Mat.identity(ring, C.dim(n)), prev.component(n))],
            )
    _, kernel = sys.solve()
    out = []
    for k in kernel:
        comps = {n: k[f"g{n}"] for n in degs}
        out.append(ChainMap(B, C, comps, check=False))
    return out


def random_strict_complex(rng, ring, length, max_rank=2, span=2):
    """Maps with strictly zero adjacent composites."""
    a0 = random_complex(rng, ring, max_rank, span)
    a1 = random_complex(rng, ring, max_rank, span)
    maps = [random_chain_map(rng, a0, a1)]
    for _ in range(1, length):
        nxt = random_complex(rng, ring, max_rank, span)
        basis = maps_strictly_killing(maps[-1], nxt)
        maps.append(random_combination(rng, basis, ChainMap.zero(maps[-1].target, nxt)))
    return maps
