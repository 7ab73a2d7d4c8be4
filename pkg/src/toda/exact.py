"""Exact linear algebra over the integers and prime fields.

Everything downstream reduces to one primitive: a diagonalization
U*A*V = D with U, V invertible over the ring.  Over Z this is the Smith
normal form with the deterministic pivot rule "smallest absolute value,
then lowest row, then lowest column"; over F_p pivots are the first
nonzero entry in row-major order and get scaled to 1.  The routine is
engineered to leave matrices that are already in normal position
untouched, so cokernel bases of standard block inclusions come out as
the complementary standard basis vectors.
"""

from .errors import InputError


class Ring:
    """Z (p is None) or the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p=None):
        if p is not None:
            if p < 2 or p >= 2**31 or not _is_prime(p):
                raise InputError(f"modulus {p} is not a prime in [2, 2^31)")
        self.p = p

    @property
    def is_field(self):
        return self.p is not None

    def norm(self, x):
        return x % self.p if self.p is not None else x

    def inv(self, x):
        if self.p is None:
            if x in (1, -1):
                return x
            raise InputError(f"{x} is not a unit in Z")
        return pow(x % self.p, self.p - 2, self.p)

    def __eq__(self, other):
        return isinstance(other, Ring) and self.p == other.p

    def __hash__(self):
        return hash(("Ring", self.p))

    def __repr__(self):
        return "Z" if self.p is None else f"F{self.p}"


def _is_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
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


ZZ = Ring(None)


def GF(p):
    return Ring(p)


class Mat:
    """A rows x cols matrix with explicit shape; entries normalized."""

    __slots__ = ("ring", "rows", "cols", "a")

    def __init__(self, ring, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise InputError("negative matrix shape")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        if entries is None:
            self.a = tuple((0,) * cols for _ in range(rows))
        else:
            if len(entries) != rows:
                raise InputError(f"expected {rows} rows, got {len(entries)}")
            norm = ring.norm
            out = []
            for row in entries:
                if len(row) != cols:
                    raise InputError(f"expected {cols} columns, got {len(row)}")
                out.append(tuple(norm(x) for x in row))
            self.a = tuple(out)

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, ring, rows, cols):
        return cls(ring, rows, cols)

    @classmethod
    def column(cls, ring, values):
        return cls(ring, len(values), 1, [[v] for v in values])

    def entry(self, i, j):
        return self.a[i][j]

    def with_entry(self, i, j, value):
        rows = [list(r) for r in self.a]
        rows[i][j] = value
        return Mat(self.ring, self.rows, self.cols, rows)

    def is_zero(self):
        return all(x == 0 for row in self.a for x in row)

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.ring == other.ring
            and self.rows == other.rows
            and self.cols == other.cols
            and self.a == other.a
        )

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols, self.a))

    def __repr__(self):
        return f"Mat({self.ring}, {self.rows}x{self.cols}, {list(map(list, self.a))})"

    def __add__(self, other):
        self._match(other)
        norm = self.ring.norm
        return Mat(
            self.ring,
            self.rows,
            self.cols,
            [[norm(x + y) for x, y in zip(r, s)] for r, s in zip(self.a, other.a)],
        )

    def __sub__(self, other):
        self._match(other)
        norm = self.ring.norm
        return Mat(
            self.ring,
            self.rows,
            self.cols,
            [[norm(x - y) for x, y in zip(r, s)] for r, s in zip(self.a, other.a)],
        )

    def __neg__(self):
        norm = self.ring.norm
        return Mat(self.ring, self.rows, self.cols, [[norm(-x) for x in r] for r in self.a])

    def scale(self, c):
        norm = self.ring.norm
        return Mat(self.ring, self.rows, self.cols, [[norm(c * x) for x in r] for r in self.a])

    def __matmul__(self, other):
        if self.ring != other.ring:
            raise InputError("ring mismatch in product")
        if self.cols != other.rows:
            raise InputError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        norm = self.ring.norm
        ob = other.a
        out = []
        for r in self.a:
            row = [0] * other.cols
            for k, x in enumerate(r):
                if x:
                    rk = ob[k]
                    for j in range(other.cols):
                        row[j] += x * rk[j]
            out.append([norm(x) for x in row])
        return Mat(self.ring, self.rows, other.cols, out)

    def hstack(self, other):
        self._match_rows(other)
        return Mat(
            self.ring,
            self.rows,
            self.cols + other.cols,
            [list(r) + list(s) for r, s in zip(self.a, other.a)],
        )

    def vstack(self, other):
        if self.ring != other.ring or self.cols != other.cols:
            raise InputError("vstack shape/ring mismatch")
        return Mat(
            self.ring,
            self.rows + other.rows,
            self.cols,
            [list(r) for r in self.a] + [list(r) for r in other.a],
        )

    def submatrix(self, r0, r1, c0, c1):
        return Mat(
            self.ring,
            r1 - r0,
            c1 - c0,
            [list(self.a[i][c0:c1]) for i in range(r0, r1)],
        )

    def vec(self):
        """Row-major flattening as a tuple."""
        return tuple(x for row in self.a for x in row)

    @classmethod
    def from_vec(cls, ring, rows, cols, values):
        if len(values) != rows * cols:
            raise InputError("from_vec length mismatch")
        return cls(ring, rows, cols, [values[i * cols : (i + 1) * cols] for i in range(rows)])

    def to_lists(self):
        return [list(r) for r in self.a]

    def _match(self, other):
        if self.ring != other.ring or self.rows != other.rows or self.cols != other.cols:
            raise InputError("matrix shape/ring mismatch")

    def _match_rows(self, other):
        if self.ring != other.ring or self.rows != other.rows:
            raise InputError("hstack shape/ring mismatch")


def block(ring, rows_of_blocks):
    """Assemble a block matrix; every block must carry its exact shape."""
    out = None
    for row in rows_of_blocks:
        acc = None
        for b in row:
            acc = b if acc is None else acc.hstack(b)
        out = acc if out is None else out.vstack(acc)
    if out is None:
        return Mat(ring, 0, 0)
    return out


class Diagonalization:
    """Holds U A V = D with U, V invertible; built lazily as requested."""

    __slots__ = ("ring", "D", "U", "Uinv", "V", "Vinv", "rank", "invariants")

    def __init__(self, ring, D, U, Uinv, V, Vinv, rank, invariants):
        self.ring = ring
        self.D = D
        self.U = U
        self.Uinv = Uinv
        self.V = V
        self.Vinv = Vinv
        self.rank = rank
        self.invariants = invariants


def diagonalize(A: Mat, need=("U", "V", "Uinv", "Vinv")):
    """U A V = D, diagonal.  Over Z the diagonal is the invariant-factor
    chain (nonnegative, each dividing the next); over F_p nonzero pivots
    are scaled to 1.  Deterministic.
    """
    ring = A.ring
    p = ring.p
    r, c = A.rows, A.cols
    d = [list(row) for row in A.a]
    want_u = "U" in need
    want_ui = "Uinv" in need
    want_v = "V" in need
    want_vi = "Vinv" in need
    U = [[1 if i == j else 0 for j in range(r)] for i in range(r)] if want_u else None
    Ui = [[1 if i == j else 0 for j in range(r)] for i in range(r)] if want_ui else None
    V = [[1 if i == j else 0 for j in range(c)] for i in range(c)] if want_v else None
    Vi = [[1 if i == j else 0 for j in range(c)] for i in range(c)] if want_vi else None

    def row_swap(i, j):
        if i == j:
            return
        d[i], d[j] = d[j], d[i]
        if want_u:
            U[i], U[j] = U[j], U[i]
        if want_ui:
            for row in Ui:
                row[i], row[j] = row[j], row[i]

    def col_swap(i, j):
        if i == j:
            return
        for row in d:
            row[i], row[j] = row[j], row[i]
        if want_v:
            for row in V:
                row[i], row[j] = row[j], row[i]
        if want_vi:
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_add(i, j, q):
        # row_i += q * row_j
        if q == 0:
            return
        di, dj = d[i], d[j]
        if p is None:
            for k in range(c):
                di[k] += q * dj[k]
        else:
            for k in range(c):
                di[k] = (di[k] + q * dj[k]) % p
        if want_u:
            ui, uj = U[i], U[j]
            if p is None:
                for k in range(r):
                    ui[k] += q * uj[k]
            else:
                for k in range(r):
                    ui[k] = (ui[k] + q * uj[k]) % p
        if want_ui:
            # inverse op: col_j -= q * col_i
            if p is None:
                for row in Ui:
                    row[j] -= q * row[i]
            else:
                for row in Ui:
                    row[j] = (row[j] - q * row[i]) % p

    def col_add(i, j, q):
        # col_i += q * col_j
        if q == 0:
            return
        if p is None:
            for row in d:
                row[i] += q * row[j]
        else:
            for row in d:
                row[i] = (row[i] + q * row[j]) % p
        if want_v:
            if p is None:
                for row in V:
                    row[i] += q * row[j]
            else:
                for row in V:
                    row[i] = (row[i] + q * row[j]) % p
        if want_vi:
            vi, vj = Vi[i], Vi[j]
            if p is None:
                for k in range(c):
                    vj[k] -= q * vi[k]
            else:
                for k in range(c):
                    vj[k] = (vj[k] - q * vi[k]) % p

    def row_scale(i, u):
        if u == 1:
            return
        uinv = ring.inv(u)
        if p is None:
            d[i] = [u * x for x in d[i]]
            if want_u:
                U[i] = [u * x for x in U[i]]
            if want_ui:
                for row in Ui:
                    row[i] = uinv * row[i]
        else:
            d[i] = [u * x % p for x in d[i]]
            if want_u:
                U[i] = [u * x % p for x in U[i]]
            if want_ui:
                for row in Ui:
                    row[i] = uinv * row[i] % p

    def pick_pivot(t):
        best = None
        for i in range(t, r):
            di = d[i]
            for j in range(t, c):
                x = di[j]
                if x:
                    if p is not None:
                        return (i, j)
                    key = (abs(x), i, j)
                    if best is None or key < best[0]:
                        best = (key, i, j)
        return None if best is None else (best[1], best[2])

    t = 0
    while True:
        pv = pick_pivot(t)
        if pv is None:
            break
        row_swap(t, pv[0])
        col_swap(t, pv[1])
        while True:
            # clear column t below the pivot
            restart = False
            for i in range(t + 1, r):
                x = d[i][t]
                if x == 0:
                    continue
                piv = d[t][t]
                if p is None:
                    q = x // piv if abs(x) >= abs(piv) else 0
                    if q:
                        row_add(i, t, -q)
                    if d[i][t]:
                        if abs(d[i][t]) < abs(piv):
                            row_swap(t, i)
                            restart = True
                            break
                        row_add(i, t, -(d[i][t] // piv))
                        if d[i][t]:
                            row_swap(t, i)
                            restart = True
                            break
                else:
                    row_add(i, t, -x * ring.inv(piv) % p)
            if restart:
                continue
            for j in range(t + 1, c):
                x = d[t][j]
                if x == 0:
                    continue
                piv = d[t][t]
                if p is None:
                    col_add(j, t, -(x // piv))
                    if d[t][j]:
                        col_swap(t, j)
                        restart = True
                        break
                else:
                    col_add(j, t, -x * ring.inv(piv) % p)
            if restart:
                continue
            if all(d[i][t] == 0 for i in range(t + 1, r)):
                break
        if p is None:
            # divisibility: pivot must divide the rest of the block
            piv = d[t][t]
            fixed = True
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if d[i][j] % piv:
                        row_add(t, i, 1)
                        fixed = False
                        break
                if not fixed:
                    break
            if not fixed:
                continue
            if piv < 0:
                row_scale(t, -1)
        else:
            row_scale(t, ring.inv(d[t][t]))
        t += 1

    invariants = [d[i][i] for i in range(min(r, c))]
    rank = sum(1 for x in invariants if x)
    mk = lambda m, n, rows: Mat(ring, m, n, rows) if rows is not None else None
    return Diagonalization(
        ring,
        Mat(ring, r, c, d),
        mk(r, r, U),
        mk(r, r, Ui),
        mk(c, c, V),
        mk(c, c, Vi),
        rank,
        invariants,
    )


def rank(A: Mat):
    return diagonalize(A, need=()).rank


def solve_matrix(A: Mat, B: Mat):
    """One X with A @ X = B, or None.  Deterministic (free coords zero)."""
    if A.rows != B.rows:
        raise InputError("solve: row mismatch")
    dg = diagonalize(A, need=("U", "V"))
    ring = A.ring
    UB = dg.U @ B
    Y = [[0] * B.cols for _ in range(A.cols)]
    for i in range(A.rows):
        di = dg.D.entry(i, i) if i < min(A.rows, A.cols) else 0
        for j in range(B.cols):
            v = UB.entry(i, j)
            if di == 0:
                if v != 0:
                    return None
            elif ring.is_field:
                Y[i][j] = v * ring.inv(di) % ring.p
            else:
                if v % di:
                    return None
                Y[i][j] = v // di
    return dg.V @ Mat(ring, A.cols, B.cols, Y)


def nullspace(A: Mat):
    """Basis of {x : A x = 0} as columns; over Z a lattice basis."""
    dg = diagonalize(A, need=("V",))
    return [dg.V.submatrix(0, A.cols, j, j + 1) for j in range(dg.rank, A.cols)]


class Solver:
    """Caches a diagonalization of A for repeated solves A x = b."""

    def __init__(self, A: Mat):
        self.A = A
        self._dg = diagonalize(A, need=("U", "V"))

    def solve(self, B: Mat):
        dg = self._dg
        ring = self.A.ring
        UB = dg.U @ B
        Y = [[0] * B.cols for _ in range(self.A.cols)]
        for i in range(self.A.rows):
            di = dg.D.entry(i, i) if i < min(self.A.rows, self.A.cols) else 0
            for j in range(B.cols):
                v = UB.entry(i, j)
                if di == 0:
                    if v != 0:
                        return None
                elif ring.is_field:
                    Y[i][j] = v * ring.inv(di) % ring.p
                else:
                    if v % di:
                        return None
                    Y[i][j] = v // di
        return dg.V @ Mat(ring, self.A.cols, B.cols, Y)


def solve_with_kernel(A: Mat, b: Mat):
    """(particular solution or None, kernel basis columns)."""
    return solve_matrix(A, b), nullspace(A)


def is_unimodular(A: Mat):
    if A.rows != A.cols:
        return False
    dg = diagonalize(A, need=())
    return dg.rank == A.rows and all(x == 1 for x in dg.invariants)


def invert(A: Mat):
    """Inverse of a square matrix invertible over the ring."""
    X = solve_matrix(A, Mat.identity(A.ring, A.rows))
    if X is None or not is_unimodular(A):
        raise InputError("matrix is not invertible over the ring")
    return X


class SplitMono:
    """A degreewise-split monomorphism with free cokernel, with a chosen
    retraction R, projection P and section T:

        R F = I,   P F = 0,   P T = I,   F R + T P = I.
    """

    __slots__ = ("F", "R", "P", "T", "coker_rank")

    def __init__(self, F, R, P, T):
        self.F = F
        self.R = R
        self.P = P
        self.T = T
        self.coker_rank = P.rows


def row_canonical(M: Mat):
    """(H, G, Ginv) with H = G M in row Hermite form (RREF over a field):
    pivot columns increase, pivots positive (1 over a field), entries
    above a pivot reduced into [0, pivot)."""
    ring = M.ring
    p = ring.p
    r, c = M.rows, M.cols
    h = [list(row) for row in M.a]
    G = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    Gi = [[1 if i == j else 0 for j in range(r)] for i in range(r)]

    def swap(i, j):
        if i == j:
            return
        h[i], h[j] = h[j], h[i]
        G[i], G[j] = G[j], G[i]
        for row in Gi:
            row[i], row[j] = row[j], row[i]

    def add(i, j, q):
        # row_i += q row_j
        if q == 0:
            return
        norm = ring.norm
        h[i] = [norm(x + q * y) for x, y in zip(h[i], h[j])]
        G[i] = [norm(x + q * y) for x, y in zip(G[i], G[j])]
        for row in Gi:
            row[j] = norm(row[j] - q * row[i])

    def scale(i, u):
        if u == 1:
            return
        norm = ring.norm
        ui = ring.inv(u)
        h[i] = [norm(u * x) for x in h[i]]
        G[i] = [norm(u * x) for x in G[i]]
        for row in Gi:
            row[i] = norm(ui * row[i])

    top = 0
    for col in range(c):
        if top >= r:
            break
        # choose the pivot row
        if p is None:
            best = None
            for i in range(top, r):
                if h[i][col]:
                    key = (abs(h[i][col]), i)
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                continue
            swap(top, best[1])
            while True:
                done = True
                for i in range(top + 1, r):
                    if h[i][col]:
                        add(i, top, -(h[i][col] // h[top][col]))
                        if h[i][col]:
                            swap(top, i)
                            done = False
                            break
                if done:
                    break
            if h[top][col] < 0:
                scale(top, -1)
            for i in range(top):
                if h[i][col] % h[top][col] or h[i][col]:
                    add(i, top, -(h[i][col] // h[top][col]))
        else:
            piv = None
            for i in range(top, r):
                if h[i][col]:
                    piv = i
                    break
            if piv is None:
                continue
            swap(top, piv)
            scale(top, ring.inv(h[top][col]))
            for i in range(r):
                if i != top and h[i][col]:
                    add(i, top, -h[i][col])
        top += 1
    return (
        Mat(ring, r, c, h),
        Mat(ring, r, r, G),
        Mat(ring, r, r, Gi),
    )


def split_mono(F: Mat):
    """Splitting data for F, or None if F is not split with free cokernel.

    The projection is row-canonical, so cokernels of standard block
    inclusions are the complementary standard basis rows, in order.
    """
    ring = F.ring
    m, k = F.rows, F.cols
    dg = diagonalize(F, need=("U", "V", "Uinv"))
    if dg.rank != k or any(x != 1 for x in dg.invariants[:k]):
        return None
    sel = Mat(ring, k, m, [[1 if i == j else 0 for j in range(m)] for i in range(k)])
    proj = Mat(ring, m - k, m, [[1 if j == k + i else 0 for j in range(m)] for i in range(m - k)])
    emb = Mat(ring, m, m - k, [[1 if i == k + j else 0 for j in range(m - k)] for i in range(m)])
    R = dg.V @ sel @ dg.U
    P0 = proj @ dg.U
    T0 = dg.Uinv @ emb
    P, G, Gi = row_canonical(P0)
    T = T0 @ Gi
    return SplitMono(F, R, P, T)


def split_epi_section(F: Mat):
    """A section S with F S = I for a split epimorphism, or None."""
    ring = F.ring
    m, k = F.rows, F.cols
    dg = diagonalize(F, need=("U", "V", "Uinv"))
    if dg.rank != m or any(x != 1 for x in dg.invariants[:m]):
        return None
    emb = Mat(ring, k, m, [[1 if i == j else 0 for j in range(m)] for i in range(k)])
    return dg.V @ emb @ dg.U


class LinearSystem:
    """Sparse-by-blocks builder for linear systems in matrix unknowns.

    Unknowns are named matrices; equations are matrix identities
    sum_t  A_t X_t B_t = C.  Entries are laid out row-major.
    """

    def __init__(self, ring):
        self.ring = ring
        self.unknowns = {}
        self._order = []
        self._ncols = 0
        self._eqs = []

    def add_unknown(self, name, rows, cols):
        if name in self.unknowns:
            raise InputError(f"duplicate unknown {name}")
        self.unknowns[name] = (rows, cols, self._ncols)
        self._order.append(name)
        self._ncols += rows * cols

    def add_equation(self, rows, cols, terms, rhs=None):
        """terms: list of (name, A, B) meaning A @ X_name @ B; rhs: Mat."""
        for name, A, B in terms:
            ur, uc, _ = self.unknowns[name]
            if A.cols != ur or B.rows != uc or A.rows != rows or B.cols != cols:
                raise InputError(f"term shape mismatch for {name}")
        if rhs is not None and (rhs.rows != rows or rhs.cols != cols):
            raise InputError("rhs shape mismatch")
        self._eqs.append((rows, cols, terms, rhs))

    def _assemble(self):
        norm = self.ring.norm
        nrows = sum(r * c for r, c, _, _ in self._eqs)
        rows = [[0] * self._ncols for _ in range(nrows)]
        rhs = [0] * nrows
        base = 0
        for er, ec, terms, const in self._eqs:
            for name, A, B in terms:
                ur, uc, off = self.unknowns[name]
                for i in range(er):
                    for x in range(ur):
                        aix = A.entry(i, x)
                        if not aix:
                            continue
                        for j in range(ec):
                            ridx = base + i * ec + j
                            row = rows[ridx]
                            for y in range(uc):
                                byj = B.entry(y, j)
                                if byj:
                                    row[off + x * uc + y] = norm(
                                        row[off + x * uc + y] + aix * byj
                                    )
            if const is not None:
                for i in range(er):
                    for j in range(ec):
                        rhs[base + i * ec + j] = const.entry(i, j)
            base += er * ec
        return Mat(self.ring, nrows, self._ncols, rows), Mat.column(self.ring, rhs)

    def solve(self):
        """(particular dict or None, kernel basis as list of dicts)."""
        M, b = self._assemble()
        x0, kernel = solve_with_kernel(M, b)
        return (
            self._unpack(x0) if x0 is not None else None,
            [self._unpack(k) for k in kernel],
        )

    def solve_particular(self):
        M, b = self._assemble()
        x0 = solve_matrix(M, b)
        return self._unpack(x0) if x0 is not None else None

    def _unpack(self, xcol):
        out = {}
        vals = [xcol.entry(i, 0) for i in range(xcol.rows)]
        for name in self._order:
            r, c, off = self.unknowns[name]
            out[name] = Mat.from_vec(self.ring, r, c, vals[off : off + r * c])
        return out
