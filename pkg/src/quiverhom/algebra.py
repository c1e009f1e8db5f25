"""Quivers with relations, their path algebras, and finite-dimensional ground algebras.

Paths are tuples of arrows in application order, so ``(a, b)`` means
"first ``a``, then ``b``".  ``Q(p, q)`` denotes the space spanned by the
residue classes of paths from ``p`` to ``q``; the indecomposable projective
``P<q>`` has ``P<q>(p) = Q(q, p)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactla import FieldSpec, Matrix, _rref, solve


class PresentationError(ValueError):
    """Malformed quiver presentation (unknown vertex, non-composable path, ...)."""


class NonAdmissibleRelation(PresentationError):
    """A relation that is not a combination of paths of length at least 2 with common ends."""


class FinViolation(ValueError):
    """Paths survive the relations at the length cap, so the algebra is not finite dimensional."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: object
    target: object


@dataclass(frozen=True)
class QuiverPresentation:
    """Vertices, arrows and relations; a relation is a tuple of ``(coef, path)`` terms."""

    vertices: tuple
    arrows: tuple
    relations: tuple = ()

    @classmethod
    def make(cls, vertices, arrows, relations=()):
        arrows = tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in arrows)
        rels = tuple(tuple((c, tuple(p)) for c, p in rel) for rel in relations)
        pres = cls(tuple(vertices), arrows, rels)
        pres.validate()
        return pres

    def validate(self) -> None:
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise PresentationError("duplicate vertex identifiers")
        names = {}
        for a in self.arrows:
            if a.name in names:
                raise PresentationError(f"duplicate arrow name {a.name!r}")
            if a.source not in vs or a.target not in vs:
                raise PresentationError(f"arrow {a.name!r} has an undeclared endpoint")
            names[a.name] = a
        for k, rel in enumerate(self.relations):
            if not rel:
                raise NonAdmissibleRelation(f"relation {k} is empty")
            ends = set()
            lengths = set()
            for _, path in rel:
                if len(path) < 2:
                    raise NonAdmissibleRelation(f"relation {k} contains a path of length {len(path)} < 2")
                for name in path:
                    if name not in names:
                        raise PresentationError(f"relation {k} uses unknown arrow {name!r}")
                for x, y in zip(path, path[1:]):
                    if names[x].target != names[y].source:
                        raise PresentationError(f"relation {k}: path {list(path)} is not composable at {x!r}->{y!r}")
                ends.add((names[path[0]].source, names[path[-1]].target))
                lengths.add(len(path))
            if len(ends) != 1:
                raise NonAdmissibleRelation(f"relation {k} mixes paths with different endpoints")
            if len(lengths) != 1:
                raise NonAdmissibleRelation(f"relation {k} is not homogeneous; only homogeneous relations are supported")

    def opposite(self) -> "QuiverPresentation":
        arrows = tuple(Arrow(a.name, a.target, a.source) for a in self.arrows)
        rels = tuple(tuple((c, tuple(reversed(p))) for c, p in rel) for rel in self.relations)
        return QuiverPresentation(self.vertices, arrows, rels)


@dataclass(frozen=True)
class BasisPath:
    arrows: tuple  # arrow indices, application order
    source: int
    target: int

    @property
    def length(self) -> int:
        return len(self.arrows)


class AlgebraPresentation:
    """The finite-dimensional algebra of a quiver with homogeneous admissible relations.

    The basis is built degree by degree: ``Q_l`` is the quotient of
    ``Q_{l-1} ⊗ arrows`` by the degree-``l`` part of the ideal, which for
    homogeneous relations is spanned by ``u·ρ`` with ``u`` a basis path.
    """

    def __init__(self, pres: QuiverPresentation, field: FieldSpec, length_cap: int = 32):
        pres.validate()
        self.pres = pres
        self.field = field
        self.length_cap = length_cap
        self.vertices = list(pres.vertices)
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        self.arrow_names = [a.name for a in pres.arrows]
        self.aindex = {a.name: i for i, a in enumerate(pres.arrows)}
        self.arrow_source = [self.vindex[a.source] for a in pres.arrows]
        self.arrow_target = [self.vindex[a.target] for a in pres.arrows]
        self.relations = [
            [(field(c), tuple(self.aindex[n] for n in path)) for c, path in rel] for rel in pres.relations
        ]
        self._cache: dict = {}
        self._build()

    # construction
    def _build(self) -> None:
        F = self.field
        n = len(self.vertices)
        basis: List[BasisPath] = [BasisPath((), v, v) for v in range(n)]
        # rmul[a][b] = sparse coordinates of basis b followed by arrow a
        rmul: List[Dict[int, Dict[int, object]]] = [dict() for _ in self.arrow_names]
        layers = [list(range(n))]
        ell = 0
        while True:
            ell += 1
            prev = layers[-1]
            cols = [(b, a) for b in prev for a in range(len(self.arrow_names))
                    if basis[b].target == self.arrow_source[a]]
            if not cols:
                break
            if ell > self.length_cap:
                raise FinViolation(f"paths of length {ell} survive past the length cap {self.length_cap}")
            colidx = {c: i for i, c in enumerate(cols)}
            relrows = []
            for rel in self.relations:
                d = len(rel[0][1])
                if d > ell:
                    continue
                src = self.arrow_source[rel[0][1][0]]
                for u in layers[ell - d]:
                    if basis[u].target != src:
                        continue
                    row = [F(0)] * len(cols)
                    nonzero = False
                    for c, path in rel:
                        vec = {u: F(1)}
                        for a in path[:-1]:
                            vec = self._apply_rmul(rmul, vec, a)
                        for b, cb in vec.items():
                            j = colidx[(b, path[-1])]
                            row[j] = row[j] + c * cb
                            if F.p:
                                row[j] %= F.p
                            nonzero = True
                    if nonzero and any(row):
                        relrows.append(row)
            rows, piv = _rref(relrows, len(cols), F.p)
            pivset = set(piv)
            newlayer = []
            newid = {}
            for j, (b, a) in enumerate(cols):
                if j not in pivset:
                    newid[j] = len(basis)
                    basis.append(BasisPath(basis[b].arrows + (a,), basis[b].source, self.arrow_target[a]))
                    newlayer.append(newid[j])
            for j, (b, a) in enumerate(cols):
                if j in newid:
                    rmul[a][b] = {newid[j]: F(1)}
            for r, c in enumerate(piv):
                b, a = cols[c]
                vec = {}
                for j, x in enumerate(rows[r]):
                    if x and j in newid:
                        vec[newid[j]] = (-x) % F.p if F.p else -x
                rmul[a][b] = vec
            if not newlayer:
                break
            layers.append(newlayer)
        self.basis = basis
        self.layers = layers
        self.rmul = rmul
        self.loewy_length = len(layers)
        pairs: Dict[Tuple[int, int], List[int]] = {}
        for i, bp in enumerate(basis):
            pairs.setdefault((bp.source, bp.target), []).append(i)
        self._pairs = pairs

    def _apply_rmul(self, rmul, vec, a):
        F = self.field
        out: Dict[int, object] = {}
        for b, c in vec.items():
            for b2, c2 in rmul[a].get(b, {}).items():
                x = out.get(b2, F(0)) + c * c2
                if F.p:
                    x %= F.p
                out[b2] = x
        return {k: v for k, v in out.items() if v}

    # queries
    @property
    def dimension(self) -> int:
        return len(self.basis)

    def index(self, v) -> int:
        try:
            return self.vindex[v]
        except KeyError:
            raise KeyError(f"unknown vertex {v!r}") from None

    def paths(self, p: int, q: int) -> List[int]:
        """Basis ids of ``Q(p, q)`` (vertex indices)."""
        return self._pairs.get((p, q), [])

    def dim_hom(self, p: int, q: int) -> int:
        return len(self.paths(p, q))

    def right_multiply(self, vec: Dict[int, object], a: int) -> Dict[int, object]:
        """Coordinates of ``x`` followed by arrow ``a``."""
        return self._apply_rmul(self.rmul, vec, a)

    def path_coords(self, arrows: Sequence[int], start: Optional[int] = None) -> Dict[int, object]:
        """Reduce an arbitrary composable arrow sequence to basis coordinates."""
        if start is None:
            start = self.arrow_source[arrows[0]]
        vec = {start: self.field(1)}
        for a in arrows:
            vec = self.right_multiply(vec, a)
        return vec

    def multiply(self, b1: int, b2: int) -> Dict[int, object]:
        """Coordinates of basis path ``b1`` followed by basis path ``b2``."""
        if self.basis[b1].target != self.basis[b2].source:
            return {}
        vec = {b1: self.field(1)}
        for a in self.basis[b2].arrows:
            vec = self.right_multiply(vec, a)
        return vec

    def path_name(self, b: int) -> str:
        bp = self.basis[b]
        if not bp.arrows:
            return f"e[{self.vertices[bp.source]}]"
        return "*".join(self.arrow_names[a] for a in bp.arrows)

    def opposite(self) -> "AlgebraPresentation":
        if "op" not in self._cache:
            op = AlgebraPresentation(self.pres.opposite(), self.field, self.length_cap)
            op._cache["op"] = self
            self._cache["op"] = op
        return self._cache["op"]


def build_algebra(pres: QuiverPresentation, field: FieldSpec, length_cap: int = 32) -> AlgebraPresentation:
    return AlgebraPresentation(pres, field, length_cap)


def radical_multiplicities(alg: AlgebraPresentation) -> Dict[Tuple[object, object], List[int]]:
    """``n_i(p, q)`` for every vertex pair, as lists indexed by ``i < N``."""
    out = {}
    N = alg.loewy_length
    for p in range(len(alg.vertices)):
        for q in range(len(alg.vertices)):
            counts = [0] * N
            for b in alg.paths(p, q):
                counts[alg.basis[b].length] += 1
            out[(alg.vertices[p], alg.vertices[q])] = counts
    return out


# ground algebras

class GroundAlgebra:
    """A finite-dimensional local algebra given by structure constants.

    ``products[i][j]`` lists the coordinates of ``b_i b_j``.  The radical is
    declared by a spanning set and checked to be a nilpotent two-sided ideal
    of codimension one.
    """

    def __init__(self, field: FieldSpec, names: Sequence[str], products, unit: Sequence, radical: Sequence[Sequence]):
        self.field = field
        self.names = list(names)
        self.dim = len(self.names)
        if self.dim < 1:
            raise ValueError("ground algebra must have dimension at least 1")
        self.products = [[tuple(field(x) for x in products[i][j]) for j in range(self.dim)] for i in range(self.dim)]
        self.unit = tuple(field(x) for x in unit)
        self.radical = Matrix.from_columns(field, self.dim, [[field(x) for x in r] for r in radical])
        self._validate()
        self.left = [self._mult_matrix(i, left=True) for i in range(self.dim)]
        self.right = [self._mult_matrix(i, left=False) for i in range(self.dim)]
        self.augmentation = self._augmentation()

    def _vec_product(self, x, y):
        F = self.field
        out = [F(0)] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, ck in enumerate(self.products[i][j]):
                    if ck:
                        out[k] = out[k] + c * ck
        if F.p:
            out = [v % F.p for v in out]
        return tuple(out)

    def basis_vector(self, i):
        F = self.field
        return tuple(F(1) if j == i else F(0) for j in range(self.dim))

    def _validate(self):
        e = [self.basis_vector(i) for i in range(self.dim)]
        for i in range(self.dim):
            if self._vec_product(self.unit, e[i]) != e[i] or self._vec_product(e[i], self.unit) != e[i]:
                raise ValueError(f"unit law fails on basis element {self.names[i]!r}")
            for j in range(self.dim):
                ij = self._vec_product(e[i], e[j])
                for k in range(self.dim):
                    if self._vec_product(ij, e[k]) != self._vec_product(e[i], self._vec_product(e[j], e[k])):
                        raise ValueError(f"associativity fails on ({self.names[i]}, {self.names[j]}, {self.names[k]})")
        r = self.radical
        if r.rank() != self.dim - 1:
            raise ValueError("declared radical must have codimension one (local ground algebra)")
        cols = [tuple(r.column(c)) for c in range(r.cols)]
        for x in cols:
            for i in range(self.dim):
                for y in (self._vec_product(x, e[i]), self._vec_product(e[i], x)):
                    if solve(r, Matrix.from_columns(self.field, self.dim, [y])) is None:
                        raise ValueError("declared radical is not a two-sided ideal")
        power = cols
        for _ in range(self.dim + 1):
            power = [self._vec_product(x, y) for x in power for y in cols]
            power = [v for v in power if any(v)]
            if not power:
                break
        if power:
            raise ValueError("declared radical is not nilpotent")

    def _mult_matrix(self, i, left):
        e = self.basis_vector(i)
        cols = [self._vec_product(e, self.basis_vector(j)) if left else self._vec_product(self.basis_vector(j), e)
                for j in range(self.dim)]
        return Matrix.from_columns(self.field, self.dim, cols)

    def _augmentation(self):
        F = self.field
        full = Matrix.hstack(F, self.dim, [Matrix.from_columns(F, self.dim, [self.unit]), self.radical])
        out = []
        for i in range(self.dim):
            x = solve(full, Matrix.from_columns(F, self.dim, [self.basis_vector(i)]))
            out.append(x[0, 0])
        return tuple(out)

    def product(self, x, y):
        return self._vec_product(x, y)

    @property
    def is_field(self) -> bool:
        return self.dim == 1

    def opposite(self) -> "GroundAlgebra":
        prods = [[self.products[j][i] for j in range(self.dim)] for i in range(self.dim)]
        rad = [self.radical.column(c) for c in range(self.radical.cols)]
        return GroundAlgebra(self.field, self.names, prods, self.unit, rad)

    def key(self):
        return (self.field, tuple(self.names), tuple(tuple(r) for r in self.products), self.unit)

    def __eq__(self, other):
        return isinstance(other, GroundAlgebra) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"GroundAlgebra({self.names}, over {self.field})"


def ground_field(field: FieldSpec) -> GroundAlgebra:
    """``R = k``."""
    return GroundAlgebra(field, ["1"], [[(1,)]], (1,), [])


def ground_dual_numbers(field: FieldSpec) -> GroundAlgebra:
    """``R = k[eps]/(eps^2)`` with basis ``1, eps``."""
    prods = [[(1, 0), (0, 1)], [(0, 1), (0, 0)]]
    return GroundAlgebra(field, ["1", "eps"], prods, (1, 0), [(0, 1)])


# conditions (Fin), (Rad), (SelfInj)

@dataclass
class ConditionReport:
    fin: bool
    rad: bool
    selfinj: bool
    nakayama: Optional[Dict[object, object]]
    details: dict = dc_field(default_factory=dict)

    def as_dict(self):
        d = {"fin": self.fin, "rad": self.rad, "selfinj": self.selfinj,
             "nakayama": None if self.nakayama is None else {str(k): str(v) for k, v in self.nakayama.items()}}
        d.update(self.details)
        return d


def nakayama_data(alg: AlgebraPresentation):
    """Socle vertex of each ``P<q>`` when the socle is simple, else ``None`` entries."""
    from .modcat import proj, socle_dims
    out = {}
    for q, v in enumerate(alg.vertices):
        dims = socle_dims(proj(alg, v))
        support = [p for p, d in enumerate(dims) if d]
        out[v] = alg.vertices[support[0]] if len(support) == 1 and dims[support[0]] == 1 else None
    return out


def projective_is_injective(alg: AlgebraPresentation, q: int) -> bool:
    from .homalg import ext_dims
    from .modcat import proj, simple
    P = proj(alg, alg.vertices[q])
    return all(ext_dims(simple(alg, p), P, 1)[1] == 0 for p in alg.vertices)


def check_conditions(alg: AlgebraPresentation, vertices: Optional[Sequence] = None) -> ConditionReport:
    """(Fin) and (Rad) from the path basis; (SelfInj) via ``Ext^1(S<p>, P<q>) = 0``.

    ``vertices`` restricts the injectivity test to the given vertex ids, which
    is how interior vertices of a finite window are examined.
    """
    fin = True  # construction already raised otherwise
    rad = True
    for q in range(len(alg.vertices)):
        if sum(1 for b in alg.paths(q, q) if alg.basis[b].length == 0) != 1:
            rad = False
    for (p, q), ids in alg._pairs.items():
        if p != q and any(alg.basis[b].length == 0 for b in ids):
            rad = False
    qs = range(len(alg.vertices)) if vertices is None else [alg.index(v) for v in vertices]
    inj = {alg.vertices[q]: projective_is_injective(alg, q) for q in qs}
    selfinj = all(inj.values())
    nak = nakayama_data(alg)
    nakayama = None
    details = {"injective_projectives": {str(k): v for k, v in inj.items()}}
    if selfinj:
        chosen = {alg.vertices[q]: nak[alg.vertices[q]] for q in qs}
        if all(v is not None for v in chosen.values()):
            if vertices is not None or len(set(chosen.values())) == len(chosen):
                nakayama = chosen
            else:
                selfinj = False
        else:
            selfinj = False
    return ConditionReport(fin, rad, selfinj, nakayama, details)


def serre_pairing_check(alg: AlgebraPresentation, nakayama: Optional[dict] = None, pairs=None):
    """``dim Q(p, q) = dim Q(q, nu(p))`` for the given pairs; ``None`` when ``nu`` is unavailable."""
    if nakayama is None:
        rep = check_conditions(alg)
        if not rep.selfinj:
            return None
        nakayama = rep.nakayama
    if pairs is None:
        pairs = [(p, q) for p in nakayama for q in alg.vertices]
    for p, q in pairs:
        ip, iq, inu = alg.index(p), alg.index(q), alg.index(nakayama[p])
        if alg.dim_hom(ip, iq) != alg.dim_hom(iq, inu):
            return False
    return True


# fixtures

def cycle_quiver(N: int) -> QuiverPresentation:
    """N-cycle ``q -> q-1 (mod N)`` with all length-2 compositions zero."""
    vertices = list(range(N))
    arrows = [Arrow(f"d{q}", q, (q - 1) % N) for q in range(N)]
    rels = [[(1, (f"d{q}", f"d{(q - 1) % N}"))] for q in range(N)]
    return QuiverPresentation.make(vertices, arrows, rels)


def za3_vertex(j: int, l: int) -> str:
    return f"{j},{l}"


def za3_window(j_min: int, j_max: int) -> QuiverPresentation:
    """Columns ``j_min..j_max`` of ZA3 with mesh relations ``α∘γ + δ∘β = 0``."""
    V = za3_vertex
    cols = range(j_min, j_max + 1)
    vertices = [V(j, l) for j in cols for l in range(3)]
    arrows = []
    for j in cols:
        arrows.append(Arrow(f"alpha{j}", V(j, 0), V(j, 1)))
        arrows.append(Arrow(f"beta{j}", V(j, 1), V(j, 2)))
        if j - 1 >= j_min:
            arrows.append(Arrow(f"gamma{j}", V(j, 1), V(j - 1, 0)))
            arrows.append(Arrow(f"delta{j}", V(j, 2), V(j - 1, 1)))
    rels = []
    for j in cols:
        if j - 1 >= j_min:
            rels.append([(1, (f"alpha{j}", f"gamma{j}"))])
            rels.append([(1, (f"delta{j}", f"beta{j - 1}"))])
            rels.append([(1, (f"gamma{j}", f"alpha{j - 1}")), (1, (f"beta{j}", f"delta{j}"))])
    return QuiverPresentation.make(vertices, arrows, rels)


def a2_quiver() -> QuiverPresentation:
    return QuiverPresentation.make([1, 2], [Arrow("a", 1, 2)], [])


def fixture(name: str, field: FieldSpec) -> AlgebraPresentation:
    """Named fixtures: ``C1``, ``C3``, ``CN:<N>`` or ``C<N>``, ``Z6``, ``ZA3:<jmin>:<jmax>``, ``A2``."""
    key = name.strip()
    if key.upper() == "A2":
        return build_algebra(a2_quiver(), field)
    if key.upper() == "Z6":
        return build_algebra(za3_window(0, 5), field)
    if key.upper().startswith("ZA3:"):
        _, lo, hi = key.split(":")
        return build_algebra(za3_window(int(lo), int(hi)), field)
    if key.upper().startswith("CN:"):
        return build_algebra(cycle_quiver(int(key[3:])), field)
    if key.upper().startswith("C") and key[1:].isdigit():
        return build_algebra(cycle_quiver(int(key[1:])), field)
    raise KeyError(f"unknown fixture {name!r}")


def make_ground(name: str, field: FieldSpec) -> GroundAlgebra:
    key = name.strip().lower()
    if key in ("k", "field"):
        return ground_field(field)
    if key in ("dual", "eps", "r_eps"):
        return ground_dual_numbers(field)
    raise KeyError(f"unknown ground algebra {name!r}")


Z6_INTERIOR_COLUMNS = (2, 3)
