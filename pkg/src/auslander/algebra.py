"""Finite-dimensional algebras: quiver presentations and based algebras.

Paths are written in the order they are traversed, so ``a*b`` means "first
``a``, then ``b``".  As algebra elements the product ``x*y`` means "first
``y``, then ``x``"; with that product, left modules are exactly quiver
representations (an arrow ``i -> j`` maps the space at ``i`` to the space at
``j``).  Endomorphism algebras built elsewhere multiply in the opposite,
diagrammatic order (``g*h`` = first ``g`` then ``h``) because that is the
order under which ``Hom(X, M)`` is a *left* ``End(X)``-module.

Every :class:`BasedAlgebra` here is split basic and carries an adapted
basis: the primitive idempotents are basis elements, every basis element
``b`` is homogeneous (``b = e_t b e_s`` for a unique pair ``(t, s)``), and
the remaining basis elements span the Jacobson radical.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

import numpy as np

from .linalg import PrimeField


class AlgebraError(ValueError):
    pass


# ---------------------------------------------------------------------------
# quivers and relations


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    num_vertices: int
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        if self.num_vertices < 0:
            raise AlgebraError("negative vertex count")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("arrow names must be unique")
        for a in self.arrows:
            if not (0 <= a.source < self.num_vertices and 0 <= a.target < self.num_vertices):
                raise AlgebraError(f"arrow {a.name} has an endpoint out of range")

    @classmethod
    def from_edges(cls, n: int, edges: Sequence[tuple[str, int, int]]) -> "Quiver":
        return cls(n, tuple(Arrow(name, s, t) for name, s, t in edges))

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise AlgebraError(f"unknown arrow {name!r}")

    def arrow_index(self, name: str) -> int:
        for i, a in enumerate(self.arrows):
            if a.name == name:
                return i
        raise AlgebraError(f"unknown arrow {name!r}")


@dataclass(frozen=True)
class Path:
    source: int
    target: int
    arrows: tuple[int, ...] = ()

    def __len__(self):
        return len(self.arrows)

    def then(self, other: "Path") -> Optional["Path"]:
        """``self`` followed by ``other``, or None when not composable."""
        if self.target != other.source:
            return None
        return Path(self.source, other.target, self.arrows + other.arrows)

    def label(self, quiver: Quiver) -> str:
        if not self.arrows:
            return f"e{self.source + 1}"
        return "*".join(quiver.arrows[i].name for i in self.arrows)


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths, each given by arrow names."""

    terms: tuple[tuple[int, tuple[str, ...]], ...]

    @classmethod
    def of(cls, *terms) -> "Relation":
        return cls(tuple((c, tuple(path)) for c, path in terms))

    def resolve(self, quiver: Quiver, F: PrimeField) -> list[tuple[int, Path]]:
        out = []
        for coeff, names in self.terms:
            if not names:
                raise AlgebraError("relation terms must be nontrivial paths")
            arrows = [quiver.arrow(n) for n in names]
            for a, b in zip(arrows, arrows[1:]):
                if a.target != b.source:
                    raise AlgebraError(f"path {'*'.join(names)} is not composable")
            c = F.elem(coeff)
            if c:
                idx = tuple(quiver.arrow_index(n) for n in names)
                out.append((c, Path(arrows[0].source, arrows[-1].target, idx)))
        if not out:
            raise AlgebraError("relation has no nonzero terms")
        ends = {(p.source, p.target) for _, p in out}
        if len(ends) != 1:
            raise AlgebraError("relation terms have mismatched endpoints")
        if any(len(p) < 2 for _, p in out):
            raise AlgebraError("relation has a term of length < 2; the ideal would not be admissible")
        return out


def enumerate_paths(quiver: Quiver, max_len: int) -> list[Path]:
    """All paths of length <= max_len, ordered by length then arrow sequence."""
    layer = [Path(v, v) for v in range(quiver.num_vertices)]
    out = list(layer)
    for _ in range(max_len):
        nxt = []
        for p in layer:
            for i, a in enumerate(quiver.arrows):
                if a.source == p.target:
                    nxt.append(Path(p.source, a.target, p.arrows + (i,)))
        if not nxt:
            break
        out.extend(nxt)
        layer = nxt
    return out


# ---------------------------------------------------------------------------
# based algebras


class BasedAlgebra:
    """An algebra given by a basis and structure constants.

    ``mult[i, j, k]`` is the coefficient of ``b_k`` in ``b_i * b_j``.
    ``idempotents`` lists the basis indices of the primitive orthogonal
    idempotents; their position in the list is the vertex number.
    """

    def __init__(self, field: PrimeField, labels: Sequence[str], mult, idempotents: Sequence[int],
                 check: bool = True, name: str = ""):
        self.field = field
        self.labels = list(labels)
        self.n = len(self.labels)
        self.mult = np.asarray(mult, dtype=np.int64).reshape(self.n, self.n, self.n) % field.p
        self.idempotents = list(idempotents)
        self.name = name
        if len(set(self.labels)) != self.n:
            raise AlgebraError("basis labels must be unique")
        self.blocks = self._find_blocks()
        if check:
            self.check()
        idem = set(self.idempotents)
        self.radical = [i for i in range(self.n) if i not in idem]
        self.generators = self._radical_generators()
        self._cache: dict = {}

    # -- structure -------------------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.idempotents)

    def one(self) -> np.ndarray:
        v = np.zeros(self.n, dtype=np.int64)
        v[self.idempotents] = 1
        return v

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.n, dtype=np.int64)
        v[i] = 1
        return v

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.mult) % self.field.p

    def left_mult_matrix(self, i: int) -> np.ndarray:
        """Matrix of ``y -> b_i * y`` (columns indexed by the input basis)."""
        return self.mult[i].T.copy()

    def basis_in_block(self, target: Optional[int] = None, source: Optional[int] = None) -> list[int]:
        return [i for i, (t, s) in enumerate(self.blocks)
                if (target is None or t == target) and (source is None or s == source)]

    def block_dims(self) -> np.ndarray:
        """``dims[t, s] = dim e_t A e_s``."""
        k = self.num_vertices
        out = np.zeros((k, k), dtype=np.int64)
        for t, s in self.blocks:
            out[t, s] += 1
        return out

    def _find_blocks(self) -> list[tuple[int, int]]:
        p = self.field.p
        k = len(self.idempotents)
        blocks = []
        for b in range(self.n):
            ts = [v for v in range(k) if self.mult[self.idempotents[v], b, b] % p == 1]
            ss = [v for v in range(k) if self.mult[b, self.idempotents[v], b] % p == 1]
            if len(ts) != 1 or len(ss) != 1:
                raise AlgebraError(f"basis element {self.labels[b]} is not homogeneous for the idempotents")
            blocks.append((ts[0], ss[0]))
        return blocks

    def check(self):
        """Verify idempotents, homogeneity, associativity and the radical."""
        p = self.field.p
        c = self.mult
        E = self.idempotents
        if len(set(E)) != len(E) or any(not 0 <= e < self.n for e in E):
            raise AlgebraError("bad idempotent list")
        for v, e in enumerate(E):
            if self.blocks[e] != (v, v):
                raise AlgebraError(f"idempotent {self.labels[e]} is not in its own corner")
        # e_t * b_i = [t == target] b_i and b_i * e_s = [s == source] b_i
        for v, e in enumerate(E):
            for i, (t, s) in enumerate(self.blocks):
                want_l = self.basis_vector(i) if t == v else np.zeros(self.n, dtype=np.int64)
                want_r = self.basis_vector(i) if s == v else np.zeros(self.n, dtype=np.int64)
                if np.any((c[e, i] - want_l) % p) or np.any((c[i, e] - want_r) % p):
                    raise AlgebraError("idempotents do not act as an orthogonal decomposition of 1")
        lhs = np.einsum("ijl,lkm->ijkm", c, c) % p
        rhs = np.einsum("jkl,ilm->ijkm", c, c) % p
        if np.any(lhs != rhs):
            raise AlgebraError("structure constants are not associative")
        rad = [i for i in range(self.n) if i not in set(E)]
        if rad:
            # radical basis must span a two-sided ideal with no idempotent component
            prods = np.concatenate([c[rad][:, :, E].reshape(-1), c[:, rad][:, :, E].reshape(-1)])
            if np.any(prods % p):
                raise AlgebraError("non-idempotent basis elements do not span an ideal")
            span = np.eye(self.n, dtype=np.int64)[rad]
            for _ in range(self.n + 1):
                if span.shape[0] == 0:
                    break
                prods = np.einsum("ai,ijk->ajk", span, c[:, rad, :]).reshape(-1, self.n) % p
                span = self.field.row_space(prods)
            else:
                raise AlgebraError("radical basis is not nilpotent")
            if span.shape[0]:
                raise AlgebraError("radical basis is not nilpotent")

    def _radical_generators(self) -> list[int]:
        """Radical basis elements completing rad^2 to rad (the 'arrows')."""
        if not self.radical:
            return []
        rad = self.radical
        prods = self.mult[np.ix_(rad, rad)].reshape(-1, self.n)
        rad2 = self.field.row_space(prods)
        if rad2.shape[0] == 0:
            return list(rad)
        _, pivots = self.field.rref(rad2)
        return [i for i in rad if i not in set(pivots)]

    def __repr__(self):
        name = f" {self.name}" if self.name else ""
        return f"<BasedAlgebra{name} dim={self.n} vertices={self.num_vertices} p={self.field.p}>"


# ---------------------------------------------------------------------------
# quiver algebras


@dataclass
class QuiverAlgebra:
    quiver: Quiver
    relations: list[Relation]
    field: PrimeField
    bound: int
    nilpotency: int
    paths: list[Path]
    mult: np.ndarray = dc_field(repr=False)
    _based: Optional[BasedAlgebra] = dc_field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.paths)

    def labels(self) -> list[str]:
        return [p.label(self.quiver) for p in self.paths]

    def path_index(self) -> dict[tuple[int, ...], int]:
        """Basis index of each residue path (trivial paths keyed by ('e', v))."""
        out = {}
        for i, p in enumerate(self.paths):
            out[p.arrows if p.arrows else ("e", p.source)] = i
        return out


def default_bound(quiver: Quiver) -> int:
    return 2 * len(quiver.arrows) + 2


def _column_order(paths: list[Path]) -> list[int]:
    # long paths first so that rref eliminates them in favour of short residues
    return sorted(range(len(paths)), key=lambda i: (-len(paths[i]), tuple(-a for a in paths[i].arrows)))


def build_quiver_algebra(quiver: Quiver, relations: Sequence[Relation], field: Optional[PrimeField] = None,
                         bound: Optional[int] = None) -> QuiverAlgebra:
    """Path algebra of ``quiver`` modulo the ideal generated by ``relations``.

    The ideal must contain every path of some length ``m <= bound``; this is
    certified using only honest ideal elements (no truncation), after which
    the quotient is computed in the span of paths shorter than ``m``.
    """
    F = field or PrimeField()
    L = default_bound(quiver) if bound is None else int(bound)
    if L < 1:
        raise AlgebraError("path-length bound must be positive")
    rels = [r.resolve(quiver, F) for r in relations]

    all_paths = enumerate_paths(quiver, L)
    groups: dict[tuple[int, int], list[Path]] = {}
    for p in all_paths:
        groups.setdefault((p.source, p.target), []).append(p)
    position = {(p.source, p.target, p.arrows): i for (st, ps) in groups.items() for i, p in enumerate(ps)}

    def ideal_vectors(max_len: int, truncate: bool):
        vecs: dict[tuple[int, int], list[np.ndarray]] = {}
        for terms in rels:
            rs, rt = terms[0][1].source, terms[0][1].target
            lefts = [u for u in all_paths if u.target == rs and len(u) <= max_len]
            rights = [w for w in all_paths if w.source == rt and len(w) <= max_len]
            for u in lefts:
                for w in rights:
                    key = (u.source, w.target)
                    v = np.zeros(len(groups[key]), dtype=np.int64)
                    ok = True
                    for c, path in terms:
                        full = u.arrows + path.arrows + w.arrows
                        if len(full) > max_len:
                            if truncate:
                                continue
                            ok = False
                            break
                        v[position[(u.source, w.target, full)]] += c
                    if ok and np.any(v % F.p):
                        vecs.setdefault(key, []).append(v % F.p)
        return vecs

    # smallest m such that all length-m paths are honest ideal members
    exact = ideal_vectors(L, truncate=False)
    rowspaces = {key: F.row_space(np.array(vs)) for key, vs in exact.items()}
    nilpotency = None
    for m in range(1, L + 1):
        length_m = [p for p in all_paths if len(p) == m]
        if not length_m:
            nilpotency = m
            break
        if all(key_in_span(rowspaces, F, groups, position, p) for p in length_m):
            nilpotency = m
            break
    if nilpotency is None:
        raise AlgebraError(
            f"relations do not kill all paths of any length <= {L}; the ideal is not admissible "
            f"within the path-length bound {L} (raise it with 'bound' if the algebra is finite-dimensional)")
    m = nilpotency

    # quotient of span{paths of length < m} by the truncated ideal
    short_vecs = ideal_vectors(m - 1, truncate=True)
    basis_paths: list[Path] = []
    normal_forms: dict[tuple[int, int, tuple[int, ...]], dict[int, int]] = {}
    reducers = {}
    for key, ps in groups.items():
        short = [p for p in ps if len(p) < m]
        if not short:
            continue
        local = {p.arrows: i for i, p in enumerate(short)}
        order = _column_order(short)
        vs = [v[[position[(key[0], key[1], p.arrows)] for p in short]] for v in short_vecs.get(key, [])]
        if vs:
            mat = np.array(vs, dtype=np.int64)[:, order]
            r, piv = F.rref(mat)
            r = r[: len(piv)]
        else:
            r, piv = np.zeros((0, len(short)), dtype=np.int64), []
        pivot_cols = {order[c] for c in piv}
        residues = [i for i in range(len(short)) if i not in pivot_cols]
        reducers[key] = (short, order, r, piv, residues, local)
        basis_paths.extend(short[i] for i in residues)

    basis_paths.sort(key=lambda p: (len(p), p.source if not p.arrows else 0, p.arrows))
    index = {(p.source, p.target, p.arrows): i for i, p in enumerate(basis_paths)}
    n = len(basis_paths)

    def normal_form(path: Path) -> np.ndarray:
        out = np.zeros(n, dtype=np.int64)
        if len(path) >= m:
            return out
        key3 = (path.source, path.target, path.arrows)
        if key3 in index:
            out[index[key3]] = 1
            return out
        short, order, r, piv, residues, local = reducers[(path.source, path.target)]
        col = order.index(local[path.arrows])
        row = piv.index(col)
        for j, oc in enumerate(order):
            if j != col and r[row, j]:
                q = short[oc]
                out[index[(q.source, q.target, q.arrows)]] -= r[row, j]
        return out % F.p

    mult = np.zeros((n, n, n), dtype=np.int64)
    for i, p in enumerate(basis_paths):
        for j, q in enumerate(basis_paths):
            comp = q.then(p)  # b_p * b_q = first q, then p
            if comp is not None:
                mult[i, j] = normal_form(comp)

    return QuiverAlgebra(quiver, list(relations), F, L, m, basis_paths, mult)


def key_in_span(rowspaces, F, groups, position, path: Path) -> bool:
    key = (path.source, path.target)
    rs = rowspaces.get(key)
    if rs is None or rs.shape[0] == 0:
        return False
    v = np.zeros(len(groups[key]), dtype=np.int64)
    v[position[(path.source, path.target, path.arrows)]] = 1
    return F.in_span(rs, v)


def to_based(A: QuiverAlgebra) -> BasedAlgebra:
    """The quiver algebra as a based algebra on its residue-path basis."""
    if A._based is None:
        idem = [i for i, p in enumerate(A.paths) if not p.arrows]
        idem.sort(key=lambda i: A.paths[i].source)
        B = BasedAlgebra(A.field, A.labels(), A.mult, idem)
        B.quiver_algebra = A
        A._based = B
    return A._based


def path_algebra(n: int, edges: Sequence[tuple[str, int, int]], relations: Sequence = (),
                 field: Optional[PrimeField] = None, bound: Optional[int] = None) -> BasedAlgebra:
    """Convenience constructor: 0-based vertices, relations as lists of (coeff, names)."""
    q = Quiver.from_edges(n, edges)
    rels = [r if isinstance(r, Relation) else Relation.of(*r) for r in relations]
    return to_based(build_quiver_algebra(q, rels, field, bound))


def linear_quiver(n: int, field: Optional[PrimeField] = None, radical_square_zero: bool = False) -> BasedAlgebra:
    """K A_n with arrows a1: 1 -> 2, a2: 2 -> 3, ...; optionally modulo rad^2."""
    edges = [(f"a{i + 1}", i, i + 1) for i in range(n - 1)]
    rels = [[(1, (f"a{i + 1}", f"a{i + 2}"))] for i in range(n - 2)] if radical_square_zero else []
    return path_algebra(n, edges, rels, field)


# ---------------------------------------------------------------------------
# derived algebras


def opposite(A: BasedAlgebra) -> BasedAlgebra:
    cached = A._cache.get("opposite")
    if cached is None:
        cached = BasedAlgebra(A.field, A.labels, A.mult.transpose(1, 0, 2), A.idempotents, check=False,
                              name=f"{A.name}^op" if A.name else "")
        cached._cache["opposite"] = A
        A._cache["opposite"] = cached
    return cached


def _vertex_subset(A: BasedAlgebra, vertices: Sequence[int]) -> list[int]:
    vs = list(dict.fromkeys(int(v) for v in vertices))
    if not vs:
        raise AlgebraError("idempotent subset must be nonempty")
    for v in vs:
        if not 0 <= v < A.num_vertices:
            raise AlgebraError(f"vertex {v} out of range")
    return vs


@dataclass
class Corner:
    algebra: BasedAlgebra
    vertices: list[int]      # vertices of the ambient algebra, in corner order
    embedding: list[int]     # ambient basis index of each corner basis element


def corner(A: BasedAlgebra, vertices: Sequence[int]) -> Corner:
    """The corner algebra ``eAe`` for ``e`` the sum of the given vertex idempotents."""
    vs = _vertex_subset(A, vertices)
    pos = {v: i for i, v in enumerate(vs)}
    emb = [i for i, (t, s) in enumerate(A.blocks) if t in pos and s in pos]
    sub = A.mult[np.ix_(emb, emb, emb)]
    idem = [emb.index(A.idempotents[v]) for v in vs]
    B = BasedAlgebra(A.field, [A.labels[i] for i in emb], sub, idem, check=False)
    return Corner(B, vs, emb)


def trace_ideal(A: BasedAlgebra, vertices: Sequence[int]) -> np.ndarray:
    """Basis (rows) of the two-sided ideal ``AeA``."""
    vs = _vertex_subset(A, vertices)
    prods = []
    for k in vs:
        left = A.basis_in_block(source=k)
        right = A.basis_in_block(target=k)
        prods.append(A.mult[np.ix_(left, right)].reshape(-1, A.n))
    I = A.field.row_space(np.vstack(prods))
    if not is_two_sided_ideal(A, I):
        raise AlgebraError("trace ideal failed closure check")  # pragma: no cover
    return I


def is_two_sided_ideal(A: BasedAlgebra, I: np.ndarray) -> bool:
    F = A.field
    if I.shape[0] == 0:
        return True
    left = np.einsum("ijk,aj->aik", A.mult, I).reshape(-1, A.n)
    right = np.einsum("ai,ijk->ajk", I, A.mult).reshape(-1, A.n)
    r = F.rank(I)
    return F.rank(np.vstack([I, left % F.p])) == r and F.rank(np.vstack([I, right % F.p])) == r


def ideal_product(A: BasedAlgebra, I: np.ndarray, J: np.ndarray) -> np.ndarray:
    if I.shape[0] == 0 or J.shape[0] == 0:
        return np.zeros((0, A.n), dtype=np.int64)
    prods = np.einsum("ai,bj,ijk->abk", I, J, A.mult).reshape(-1, A.n) % A.field.p
    return A.field.row_space(prods)


@dataclass
class Quotient:
    algebra: BasedAlgebra
    projection: np.ndarray          # (dim quotient) x (dim A)
    vertex_map: dict[int, int]      # ambient vertex -> quotient vertex, surviving ones only


def quotient_algebra(A: BasedAlgebra, I: np.ndarray) -> Quotient:
    F = A.field
    I = np.asarray(I, dtype=np.int64).reshape(-1, A.n) % F.p
    if not is_two_sided_ideal(A, I):
        raise AlgebraError("subspace is not a two-sided ideal")
    I = F.row_space(I) if I.shape[0] else I
    if I.shape[0] == A.n:
        raise AlgebraError("cannot form the quotient by the whole algebra")
    idem = set(A.idempotents)
    order = [i for i in range(A.n) if i not in idem] + list(A.idempotents)
    if I.shape[0]:
        r, piv = F.rref(I[:, order])
        r = r[: len(piv)]
        rows = np.zeros_like(r)
        rows[:, order] = r
        pivots = [order[c] for c in piv]
    else:
        rows, pivots = np.zeros((0, A.n), dtype=np.int64), []
    keep = [i for i in range(A.n) if i not in set(pivots)]

    proj = np.zeros((len(keep), A.n), dtype=np.int64)
    for col in range(A.n):
        v = np.zeros(A.n, dtype=np.int64)
        v[col] = 1
        for row, pc in enumerate(pivots):
            if v[pc]:
                v = (v - v[pc] * rows[row]) % F.p
        proj[:, col] = v[keep]

    n = len(keep)
    mult = np.zeros((n, n, n), dtype=np.int64)
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            mult[a, b] = proj @ A.mult[i, j] % F.p
    surviving = [v for v, e in enumerate(A.idempotents) if e in set(keep)]
    qidem = [keep.index(A.idempotents[v]) for v in surviving]
    B = BasedAlgebra(F, [A.labels[i] for i in keep], mult, qidem, check=True)
    return Quotient(B, proj, {v: k for k, v in enumerate(surviving)})


def is_semisimple(A: BasedAlgebra) -> bool:
    return not A.radical


def algebra_dimension_split(A: BasedAlgebra, vertices: Sequence[int]) -> tuple[int, int, int, int]:
    """Dimensions of eAe, (1-e)Ae, eA(1-e), (1-e)A(1-e)."""
    e = set(_vertex_subset(A, vertices))
    counts = [0, 0, 0, 0]
    for t, s in A.blocks:
        counts[(0 if t in e else 1) + (0 if s in e else 2)] += 1
    return counts[0], counts[1], counts[2], counts[3]


def all_vertex_subsets(A: BasedAlgebra):
    k = A.num_vertices
    for r in range(1, k + 1):
        yield from itertools.combinations(range(k), r)
