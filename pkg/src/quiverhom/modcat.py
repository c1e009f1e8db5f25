"""Representations of a quiver with relations in modules over a ground algebra.

A :class:`Representation` stores, for every vertex, a dimension and the
action matrices of the ground-algebra basis, and for every arrow a matrix.
These are exactly modules over ``Γ = Λ ⊗ R``.  Right modules over ``Λ`` are
representations of the opposite algebra.
"""
from __future__ import annotations

import random as _random
from typing import Dict, List, Optional, Sequence

from .algebra import AlgebraPresentation, GroundAlgebra, ground_field
from .exactla import (
    FieldSpec,
    Matrix,
    cokernel_projection,
    factor_through_pullback,
    factor_through_pushout,
    image_basis,
    inverse,
    kernel_basis,
    solve,
)


class RepresentationError(ValueError):
    """A representation or morphism violates its defining identities."""


class Representation:
    """A module over ``Λ ⊗ R`` exposed vertexwise.

    ``arrows[a]`` maps ``X(source a)`` to ``X(target a)``; ``action[v][i]``
    is the matrix of the ``i``-th ground basis element on ``X(v)``.
    """

    def __init__(self, alg: AlgebraPresentation, ground: GroundAlgebra, dims: Sequence[int],
                 arrows: Sequence[Matrix], action: Optional[Sequence[Sequence[Matrix]]] = None,
                 check: bool = False):
        self.alg = alg
        self.ground = ground
        self.field = alg.field
        self.dims = tuple(dims)
        self.arrows = tuple(arrows)
        if action is None:
            if not ground.is_field:
                raise RepresentationError("ground action required for a nontrivial ground algebra")
            action = [[Matrix.identity(self.field, d)] for d in self.dims]
        self.action = tuple(tuple(a) for a in action)
        self._paths: Dict[int, Matrix] = {}
        self._cache: dict = {}
        if check:
            self.validate()

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def dim_at(self, v) -> int:
        return self.dims[self.alg.index(v)]

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_matrix(self, b: int) -> Matrix:
        """``X(π)`` for the basis path ``b`` (composition of arrow matrices)."""
        m = self._paths.get(b)
        if m is None:
            bp = self.alg.basis[b]
            m = Matrix.identity(self.field, self.dims[bp.source])
            for a in bp.arrows:
                m = self.arrows[a] @ m
            self._paths[b] = m
        return m

    def arrow_sequence_matrix(self, arrows: Sequence[int]) -> Matrix:
        m = Matrix.identity(self.field, self.dims[self.alg.arrow_source[arrows[0]]])
        for a in arrows:
            m = self.arrows[a] @ m
        return m

    def ground_matrix(self, v: int, r: Sequence) -> Matrix:
        """Action of the ground element with coordinates ``r`` at vertex ``v``."""
        F = self.field
        m = Matrix.zero(F, self.dims[v], self.dims[v])
        for i, c in enumerate(r):
            if c:
                m = m + self.action[v][i].scale(c)
        return m

    def validate(self) -> None:
        alg, R, F = self.alg, self.ground, self.field
        if len(self.dims) != len(alg.vertices) or len(self.arrows) != len(alg.arrow_names):
            raise RepresentationError("shape does not match the quiver")
        for a, m in enumerate(self.arrows):
            s, t = alg.arrow_source[a], alg.arrow_target[a]
            if m.shape != (self.dims[t], self.dims[s]):
                raise RepresentationError(f"arrow {alg.arrow_names[a]!r} has shape {m.shape}, expected {(self.dims[t], self.dims[s])}")
        for k, rel in enumerate(alg.relations):
            s = alg.arrow_source[rel[0][1][0]]
            t = alg.arrow_target[rel[0][1][-1]]
            total = Matrix.zero(F, self.dims[t], self.dims[s])
            for c, path in rel:
                total = total + self.arrow_sequence_matrix(path).scale(c)
            if not total.is_zero():
                raise RepresentationError(f"relation {k} does not vanish")
        for v in range(len(self.dims)):
            vname = alg.vertices[v]
            if len(self.action[v]) != R.dim:
                raise RepresentationError(f"vertex {vname!r}: expected {R.dim} ground action matrices")
            for i in range(R.dim):
                if self.action[v][i].shape != (self.dims[v], self.dims[v]):
                    raise RepresentationError(f"vertex {vname!r}, ground element {R.names[i]!r}: wrong shape")
            if self.ground_matrix(v, R.unit) != Matrix.identity(F, self.dims[v]):
                raise RepresentationError(f"vertex {vname!r}: unit does not act as identity")
            for i in range(R.dim):
                for j in range(R.dim):
                    lhs = self.action[v][i] @ self.action[v][j]
                    if lhs != self.ground_matrix(v, R.products[i][j]):
                        raise RepresentationError(
                            f"vertex {vname!r}, ground element {R.names[i]!r}: product with {R.names[j]!r} violates structure constants")
        for a, m in enumerate(self.arrows):
            s, t = alg.arrow_source[a], alg.arrow_target[a]
            for i in range(R.dim):
                if m @ self.action[s][i] != self.action[t][i] @ m:
                    raise RepresentationError(
                        f"vertex {alg.vertices[s]!r}, ground element {R.names[i]!r}: arrow {alg.arrow_names[a]!r} is not equivariant")

    def key(self):
        return (self.dims, self.arrows, self.action)

    def same_as(self, other: "Representation") -> bool:
        return self.alg is other.alg and self.ground == other.ground and self.key() == other.key()

    def __repr__(self):
        dims = {str(v): d for v, d in zip(self.alg.vertices, self.dims)}
        return f"Representation(dims={dims}, ground={self.ground.names})"


class RepMorphism:
    """Per-vertex matrices ``source(v) -> target(v)``."""

    def __init__(self, source: Representation, target: Representation, maps: Sequence[Matrix], check: bool = False):
        self.source = source
        self.target = target
        self.maps = tuple(maps)
        if check:
            self.validate()

    @property
    def field(self):
        return self.source.field

    def validate(self) -> None:
        X, Y = self.source, self.target
        alg = X.alg
        for v, m in enumerate(self.maps):
            if m.shape != (Y.dims[v], X.dims[v]):
                raise RepresentationError(f"morphism has wrong shape at vertex {alg.vertices[v]!r}")
        for a in range(len(alg.arrow_names)):
            s, t = alg.arrow_source[a], alg.arrow_target[a]
            if self.maps[t] @ X.arrows[a] != Y.arrows[a] @ self.maps[s]:
                raise RepresentationError(f"morphism does not commute with arrow {alg.arrow_names[a]!r}")
        for v in range(len(X.dims)):
            for i in range(X.ground.dim):
                if self.maps[v] @ X.action[v][i] != Y.action[v][i] @ self.maps[v]:
                    raise RepresentationError(
                        f"morphism is not equivariant at vertex {alg.vertices[v]!r}, ground element {X.ground.names[i]!r}")

    def __matmul__(self, other: "RepMorphism") -> "RepMorphism":
        return RepMorphism(other.source, self.target, [a @ b for a, b in zip(self.maps, other.maps)])

    def __add__(self, other):
        return RepMorphism(self.source, self.target, [a + b for a, b in zip(self.maps, other.maps)])

    def __neg__(self):
        return RepMorphism(self.source, self.target, [-a for a in self.maps])

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.maps)

    def ranks(self) -> List[int]:
        return [m.rank() for m in self.maps]

    def is_mono(self) -> bool:
        return all(m.rank() == m.cols for m in self.maps)

    def is_epi(self) -> bool:
        return all(m.rank() == m.rows for m in self.maps)

    def is_iso(self) -> bool:
        return self.is_mono() and self.is_epi()

    def equals(self, other: "RepMorphism") -> bool:
        return all(a == b for a, b in zip(self.maps, other.maps))


# elementary constructions

def zero_rep(alg: AlgebraPresentation, ground: Optional[GroundAlgebra] = None) -> Representation:
    ground = ground or ground_field(alg.field)
    F = alg.field
    n = len(alg.vertices)
    arrows = [Matrix.zero(F, 0, 0) for _ in alg.arrow_names]
    action = [[Matrix.zero(F, 0, 0) for _ in range(ground.dim)] for _ in range(n)]
    return Representation(alg, ground, [0] * n, arrows, action)


def identity_morphism(X: Representation) -> RepMorphism:
    return RepMorphism(X, X, [Matrix.identity(X.field, d) for d in X.dims])


def zero_morphism(X: Representation, Y: Representation) -> RepMorphism:
    return RepMorphism(X, Y, [Matrix.zero(X.field, b, a) for a, b in zip(X.dims, Y.dims)])


def direct_sum(*reps: Representation) -> Representation:
    X0 = reps[0]
    F = X0.field
    alg = X0.alg
    dims = [sum(X.dims[v] for X in reps) for v in range(len(alg.vertices))]
    arrows = [Matrix.block_diag(F, [X.arrows[a] for X in reps]) for a in range(len(alg.arrow_names))]
    action = [[Matrix.block_diag(F, [X.action[v][i] for X in reps]) for i in range(X0.ground.dim)]
              for v in range(len(alg.vertices))]
    return Representation(alg, X0.ground, dims, arrows, action)


def sum_inclusions(reps: Sequence[Representation], total: Representation) -> List[RepMorphism]:
    F = total.field
    out = []
    offs = [0] * len(total.dims)
    for X in reps:
        maps = []
        for v, d in enumerate(X.dims):
            cols = [[F(1) if i == offs[v] + j else F(0) for i in range(total.dims[v])] for j in range(d)]
            maps.append(Matrix.from_columns(F, total.dims[v], cols))
            offs[v] += d
        out.append(RepMorphism(X, total, maps))
    return out


def sum_projections(reps: Sequence[Representation], total: Representation) -> List[RepMorphism]:
    return [RepMorphism(total, X, [m.T for m in inc.maps]) for X, inc in zip(reps, sum_inclusions(reps, total))]


def morphism_from_blocks(source: Representation, target: Representation, blocks) -> RepMorphism:
    """Assemble a map between direct sums from per-vertex block rows.

    ``blocks`` is a list (over target summands) of lists (over source
    summands) of morphisms, with ``source``/``target`` the sums.
    """
    F = source.field
    maps = []
    for v in range(len(source.dims)):
        rows = [Matrix.hstack(F, row[0].target.dims[v], [m.maps[v] for m in row]) for row in blocks]
        maps.append(Matrix.vstack(F, source.dims[v], rows))
    return RepMorphism(source, target, maps)


def _sub_rep(X: Representation, bases: Sequence[Matrix]) -> Representation:
    """The subrepresentation with per-vertex basis columns ``bases`` (assumed invariant)."""
    alg = X.alg
    arrows = []
    for a in range(len(alg.arrow_names)):
        s, t = alg.arrow_source[a], alg.arrow_target[a]
        x = solve(bases[t], X.arrows[a] @ bases[s]) if bases[t].cols else Matrix.zero(X.field, 0, bases[s].cols)
        if x is None:
            raise RepresentationError("subspace is not invariant under arrows")
        arrows.append(x)
    action = []
    for v in range(len(alg.vertices)):
        acts = []
        for i in range(X.ground.dim):
            x = solve(bases[v], X.action[v][i] @ bases[v]) if bases[v].cols else Matrix.zero(X.field, 0, 0)
            if x is None:
                raise RepresentationError("subspace is not invariant under the ground action")
            acts.append(x)
        action.append(acts)
    return Representation(alg, X.ground, [b.cols for b in bases], arrows, action)


def _quotient_rep(Y: Representation, projs: Sequence[Matrix], sections: Sequence[Matrix]) -> Representation:
    alg = Y.alg
    arrows = []
    for a in range(len(alg.arrow_names)):
        s, t = alg.arrow_source[a], alg.arrow_target[a]
        arrows.append(projs[t] @ Y.arrows[a] @ sections[s])
    action = [[projs[v] @ Y.action[v][i] @ sections[v] for i in range(Y.ground.dim)] for v in range(len(alg.vertices))]
    return Representation(alg, Y.ground, [p.rows for p in projs], arrows, action)


def subrepresentation(X: Representation, bases: Sequence[Matrix]):
    """Subrepresentation spanned vertexwise by ``bases`` with its inclusion."""
    S = _sub_rep(X, bases)
    return S, RepMorphism(S, X, list(bases))


def quotient(X: Representation, bases: Sequence[Matrix]):
    """Quotient of ``X`` by the invariant subspaces ``bases``, with its projection."""
    projs, secs = [], []
    for v, b in enumerate(bases):
        p, s, _ = cokernel_projection(b)
        projs.append(p)
        secs.append(s)
    Q = _quotient_rep(X, projs, secs)
    return Q, RepMorphism(X, Q, projs)


def kernel(f: RepMorphism):
    bases = [kernel_basis(m) for m in f.maps]
    return subrepresentation(f.source, bases)


def cokernel(f: RepMorphism):
    projs, secs = [], []
    for m in f.maps:
        p, s, _ = cokernel_projection(m)
        projs.append(p)
        secs.append(s)
    C = _quotient_rep(f.target, projs, secs)
    return C, RepMorphism(f.target, C, projs)


def image(f: RepMorphism):
    bases = [image_basis(m) for m in f.maps]
    return subrepresentation(f.target, bases)


def lift_through_mono(m: RepMorphism, g: RepMorphism) -> Optional[RepMorphism]:
    """The ``h`` with ``m h = g`` when ``m`` is mono and ``im g ⊆ im m``."""
    maps = []
    for mv, gv in zip(m.maps, g.maps):
        if mv.cols == 0:
            if not gv.is_zero():
                return None
            maps.append(Matrix.zero(mv.field, 0, gv.cols))
            continue
        x = solve(mv, gv)
        if x is None:
            return None
        maps.append(x)
    return RepMorphism(g.source, m.source, maps)


def descend_through_epi(p: RepMorphism, g: RepMorphism) -> Optional[RepMorphism]:
    """The ``h`` with ``h p = g`` when ``p`` is epi and ``ker p ⊆ ker g``."""
    maps = []
    for pv, gv in zip(p.maps, g.maps):
        if pv.rows == 0:
            if not gv.is_zero():
                return None
            maps.append(Matrix.zero(pv.field, gv.rows, 0))
            continue
        x = solve(pv.T, gv.T)
        if x is None:
            return None
        maps.append(x.T)
    return RepMorphism(p.target, g.target, maps)


def pullback(f: RepMorphism, g: RepMorphism):
    """Pullback of ``f: X -> Z`` and ``g: Y -> Z``; returns ``(P, p_X, p_Y)``."""
    X, Y = f.source, g.source
    S = direct_sum(X, Y)
    glued = morphism_from_blocks(S, f.target, [[f, -g]])
    P, inc = kernel(glued)
    px, py = sum_projections([X, Y], S)
    return P, px @ inc, py @ inc


def pushout(f: RepMorphism, g: RepMorphism):
    """Pushout of ``f: Z -> X`` and ``g: Z -> Y``; returns ``(P, i_X, i_Y)``."""
    X, Y = f.target, g.target
    S = direct_sum(X, Y)
    glued = morphism_from_blocks(f.source, S, [[f], [-g]])
    P, proj = cokernel(glued)
    ix, iy = sum_inclusions([X, Y], S)
    return P, proj @ ix, proj @ iy


def pullback_factor(p_x: RepMorphism, p_y: RepMorphism, h_x: RepMorphism, h_y: RepMorphism) -> Optional[RepMorphism]:
    maps = []
    for v in range(len(p_x.maps)):
        u = factor_through_pullback(p_x.maps[v], p_y.maps[v], h_x.maps[v], h_y.maps[v])
        if u is None:
            return None
        maps.append(u)
    return RepMorphism(h_x.source, p_x.source, maps)


def pushout_factor(i_x: RepMorphism, i_y: RepMorphism, h_x: RepMorphism, h_y: RepMorphism) -> Optional[RepMorphism]:
    maps = []
    for v in range(len(i_x.maps)):
        u = factor_through_pushout(i_x.maps[v], i_y.maps[v], h_x.maps[v], h_y.maps[v])
        if u is None:
            return None
        maps.append(u)
    return RepMorphism(i_x.target, h_x.target, maps)


def is_short_exact(f: RepMorphism, g: RepMorphism) -> bool:
    """``0 -> A -f-> B -g-> C -> 0`` exact, checked vertexwise by ranks."""
    if not (g @ f).is_zero():
        return False
    for fv, gv in zip(f.maps, g.maps):
        if fv.rank() != fv.cols or gv.rank() != gv.rows:
            return False
        if fv.cols + gv.rows != fv.rows:
            return False
    return True


def is_exact_at(f: RepMorphism, g: RepMorphism) -> bool:
    """``im f = ker g``."""
    if not (g @ f).is_zero():
        return False
    return all(fv.rank() + gv.rank() == fv.rows for fv, gv in zip(f.maps, g.maps))


# projectives, simples, injectives

def free_module(alg: AlgebraPresentation, heads: Sequence[int], ground: Optional[GroundAlgebra] = None) -> Representation:
    """``⊕ P<v> ⊗ R`` over the listed head vertices (with repetition).

    At vertex ``u`` the summand for head ``v`` has basis ``paths(v, u) × R``,
    path-major.
    """
    ground = ground or ground_field(alg.field)
    key = ("free", tuple(heads), ground)
    cached = alg._cache.get(key)
    if cached is not None:
        return cached
    F = alg.field
    n = len(alg.vertices)
    IR = Matrix.identity(F, ground.dim)
    summands = []
    for v in heads:
        dims = [len(alg.paths(v, u)) * ground.dim for u in range(n)]
        arrows = []
        for a in range(len(alg.arrow_names)):
            s, t = alg.arrow_source[a], alg.arrow_target[a]
            src, tgt = alg.paths(v, s), alg.paths(v, t)
            pos = {b: i for i, b in enumerate(tgt)}
            cols = []
            for b in src:
                col = [F(0)] * len(tgt)
                for b2, c in alg.rmul[a].get(b, {}).items():
                    col[pos[b2]] = c
                cols.append(col)
            arrows.append(Matrix.from_columns(F, len(tgt), cols).kron(IR))
        action = [[Matrix.identity(F, len(alg.paths(v, u))).kron(ground.left[i]) for i in range(ground.dim)]
                  for u in range(n)]
        summands.append(Representation(alg, ground, dims, arrows, action))
    P = direct_sum(*summands) if summands else zero_rep(alg, ground)
    P._cache["heads"] = tuple(heads)
    alg._cache[key] = P
    return P


def generator_vector(alg: AlgebraPresentation, heads: Sequence[int], b: int, ground: GroundAlgebra) -> List:
    """Coordinates in ``free_module(heads)(heads[b])`` of the generator ``e ⊗ 1`` of summand ``b``."""
    F = alg.field
    v = heads[b]
    vec = []
    for k, w in enumerate(heads):
        block = len(alg.paths(w, v)) * ground.dim
        if k != b:
            vec.extend([F(0)] * block)
            continue
        for path in alg.paths(w, v):
            e = F(1) if alg.basis[path].length == 0 else F(0)
            vec.extend(e * x for x in ground.unit)
    return vec


def proj(alg: AlgebraPresentation, q, ground: Optional[GroundAlgebra] = None) -> Representation:
    """``P<q>`` (tensored with ``R`` when a ground algebra is given)."""
    return free_module(alg, [alg.index(q)], ground)


def simple(alg: AlgebraPresentation, q, ground: Optional[GroundAlgebra] = None) -> Representation:
    """``S<q>`` over ``R = k``, or ``S<q> ⊗ k`` with ``k`` the residue module when ``ground`` is given."""
    ground = ground or ground_field(alg.field)
    return s_functor(alg, q, residue_module(ground))


def full_dual(X: Representation) -> Representation:
    """``Hom_k(X, k)`` as a module over the opposite algebra and opposite ground."""
    alg = X.alg.opposite()
    ground = X.ground.opposite() if not X.ground.is_field else X.ground
    arrows = [m.T for m in X.arrows]
    action = [[m.T for m in acts] for acts in X.action]
    return Representation(alg, ground, X.dims, arrows, action)


def full_dual_morphism(f: RepMorphism, source: Representation, target: Representation) -> RepMorphism:
    """``D f : D Y -> D X`` given the precomputed duals."""
    return RepMorphism(source, target, [m.T for m in f.maps])


def dual(M: Representation) -> Representation:
    """``D M`` for a module over ``R = k``."""
    if not M.ground.is_field:
        raise RepresentationError("dual requires the trivial ground algebra")
    return full_dual(M)


def inj(alg: AlgebraPresentation, q, ground: Optional[GroundAlgebra] = None) -> Representation:
    """``D Q(-, q)``, the injective hull of ``S<q>``."""
    q = alg.index(q)
    if ground is not None and not ground.is_field:
        return full_dual(free_module(alg.opposite(), [q], ground.opposite()))
    return full_dual(free_module(alg.opposite(), [q]))


def restrict_to_field(X: Representation) -> Representation:
    """Forget the ground action."""
    return Representation(X.alg, ground_field(X.field), X.dims, X.arrows)


# radical, top, socle

def radical_bases(X: Representation) -> List[Matrix]:
    """``rad X(v)``: images of incoming arrows plus the ground radical."""
    alg, F = X.alg, X.field
    out = []
    R = X.ground
    rad_elems = [R.radical.column(c) for c in range(R.radical.cols)]
    for v in range(len(alg.vertices)):
        blocks = [X.arrows[a] for a in range(len(alg.arrow_names)) if alg.arrow_target[a] == v]
        blocks += [X.ground_matrix(v, r) for r in rad_elems]
        if blocks:
            out.append(image_basis(Matrix.hstack(F, X.dims[v], blocks)))
        else:
            out.append(Matrix.zero(F, X.dims[v], 0))
    return out


def top_dims(X: Representation) -> List[int]:
    return [d - b.cols for d, b in zip(X.dims, radical_bases(X))]


def socle_bases(X: Representation) -> List[Matrix]:
    """Vectors killed by all outgoing arrows and the ground radical."""
    alg, F = X.alg, X.field
    R = X.ground
    rad_elems = [R.radical.column(c) for c in range(R.radical.cols)]
    out = []
    for v in range(len(alg.vertices)):
        blocks = [X.arrows[a] for a in range(len(alg.arrow_names)) if alg.arrow_source[a] == v]
        blocks += [X.ground_matrix(v, r) for r in rad_elems]
        if blocks:
            stacked = Matrix.vstack(F, X.dims[v], blocks)
            out.append(kernel_basis(stacked))
        else:
            out.append(Matrix.identity(F, X.dims[v]))
    return out


def socle_dims(X: Representation) -> List[int]:
    return [b.cols for b in socle_bases(X)]


def free_map(heads: Sequence[int], P: Representation, X: Representation, images: Sequence[Sequence]) -> RepMorphism:
    """The map ``⊕ P<v> ⊗ R -> X`` sending the ``b``-th generator to ``images[b] ∈ X(heads[b])``."""
    alg, F = X.alg, X.field
    R = X.ground
    n = len(alg.vertices)
    gvecs = []
    for b, v in enumerate(heads):
        gvecs.append(Matrix.from_columns(F, X.dims[v], [list(images[b])]))
    acted = []
    for b, v in enumerate(heads):
        acted.append([X.action[v][i] @ gvecs[b] for i in range(R.dim)])
    maps = []
    for u in range(n):
        cols = []
        for b, v in enumerate(heads):
            for path in alg.paths(v, u):
                pm = X.path_matrix(path)
                for i in range(R.dim):
                    cols.append((pm @ acted[b][i]).column(0))
        maps.append(Matrix.from_columns(F, X.dims[u], cols) if cols else Matrix.zero(F, X.dims[u], 0))
    return RepMorphism(P, X, maps)


def projective_cover(X: Representation) -> RepMorphism:
    """A projective cover ``P -> X`` built from a lift of a basis of the top."""
    alg, F = X.alg, X.field
    rad = radical_bases(X)
    heads, images = [], []
    for v in range(len(alg.vertices)):
        if X.dims[v] == 0:
            continue
        _, sec, d = cokernel_projection(rad[v])
        for j in range(d):
            heads.append(v)
            images.append(sec.column(j))
    P = free_module(alg, heads, X.ground)
    return free_map(heads, P, X, images)


def injective_envelope(X: Representation) -> RepMorphism:
    """``X -> I`` as the dual of a projective cover of ``D X``."""
    DX = full_dual(X)
    cover = projective_cover(DX)
    I = full_dual(cover.source)
    return RepMorphism(X, I, [m.T for m in cover.maps])


def is_cover_minimal(cover: RepMorphism) -> bool:
    """Kernel inside the radical: the induced map on tops is an isomorphism."""
    P, X = cover.source, cover.target
    return top_dims(P) == top_dims(X) and cover.is_epi()


def is_projective(X: Representation) -> bool:
    """Whether ``X`` is projective (cover kernel is zero)."""
    return projective_cover(X).source.total_dim == X.total_dim


# hom spaces

def hom_space(X: Representation, Y: Representation) -> List[RepMorphism]:
    """Basis of ``Hom(X, Y)`` from the commuting-square equations."""
    if X.alg is not Y.alg:
        raise RepresentationError("representations live over different algebras")
    alg, F = X.alg, X.field
    n = len(alg.vertices)
    offs = [0]
    for v in range(n):
        offs.append(offs[-1] + X.dims[v] * Y.dims[v])
    N = offs[-1]
    eqs = []

    def block(v, m):
        # m acts on vec(f_v) (row-major); place in columns of vertex v
        return v, m

    rows_blocks = []
    for a in range(len(alg.arrow_names)):
        s, t = alg.arrow_source[a], alg.arrow_target[a]
        # f_t X(a) - Y(a) f_s = 0
        left = Matrix.identity(F, Y.dims[t]).kron(X.arrows[a].T)
        right = Y.arrows[a].kron(Matrix.identity(F, X.dims[s]))
        rows_blocks.append([(t, left), (s, -right)])
    for v in range(n):
        for i in range(X.ground.dim):
            left = Matrix.identity(F, Y.dims[v]).kron(X.action[v][i].T)
            right = Y.action[v][i].kron(Matrix.identity(F, X.dims[v]))
            rows_blocks.append([(v, left + (-right))])
    for terms in rows_blocks:
        nr = terms[0][1].rows
        for r in range(nr):
            row = [F(0)] * N
            for v, m in terms:
                for j, x in enumerate(m.data[r]):
                    if x:
                        row[offs[v] + j] = row[offs[v] + j] + x
            if any(row):
                eqs.append(row)
    sysm = Matrix(F, len(eqs), N, eqs) if eqs else Matrix.zero(F, 0, N)
    K = kernel_basis(sysm)
    basis = []
    for c in range(K.cols):
        col = K.column(c)
        maps = []
        for v in range(n):
            flat = col[offs[v]:offs[v + 1]]
            maps.append(Matrix(F, Y.dims[v], X.dims[v], [flat[r * X.dims[v]:(r + 1) * X.dims[v]] for r in range(Y.dims[v])]))
        basis.append(RepMorphism(X, Y, maps))
    return basis


def find_isomorphism(X: Representation, Y: Representation, rng=None, tries: int = 20) -> Optional[RepMorphism]:
    """Search for an isomorphism via random combinations of a Hom basis."""
    if X.dims != Y.dims:
        return None
    basis = hom_space(X, Y)
    if not basis:
        return identity_morphism(X) if X.total_dim == 0 else None
    rng = rng or _random.Random(0)
    F = X.field
    for t in range(tries):
        coeffs = [F.random(rng) for _ in basis] if t else [F(1)] * len(basis)
        f = basis[0]
        maps = [Matrix.zero(F, m.rows, m.cols) for m in f.maps]
        for c, g in zip(coeffs, basis):
            maps = [m + gm.scale(c) for m, gm in zip(maps, g.maps)]
        h = RepMorphism(X, Y, maps)
        if h.is_iso():
            return h
    return None


# S_q and tensor with ground modules

def point_algebra(field: FieldSpec) -> AlgebraPresentation:
    """The one-vertex quiver; representations over it are ground-algebra modules."""
    from .algebra import QuiverPresentation, build_algebra
    key = ("point", field)
    cached = _POINT.get(key)
    if cached is None:
        cached = build_algebra(QuiverPresentation.make(["*"], []), field)
        _POINT[key] = cached
    return cached


_POINT: dict = {}


def rmodule(ground: GroundAlgebra, action: Sequence[Matrix]) -> Representation:
    """A ground-algebra module from the matrices of its basis elements."""
    alg = point_algebra(ground.field)
    d = action[0].rows if action else 0
    return Representation(alg, ground, [d], [], [list(action)], check=True)


def regular_module(ground: GroundAlgebra) -> Representation:
    return rmodule(ground, ground.left)


def residue_module(ground: GroundAlgebra) -> Representation:
    F = ground.field
    return rmodule(ground, [Matrix.from_rows(F, [[ground.augmentation[i]]]) for i in range(ground.dim)])


def dual_regular_module(ground: GroundAlgebra) -> Representation:
    """``D(R)``: the transpose of right multiplication."""
    return rmodule(ground, [m.T for m in ground.right])


def s_functor(alg: AlgebraPresentation, q, M: Representation) -> Representation:
    """``S_q(M)``: ``M`` at vertex ``q``, zero elsewhere."""
    q = alg.index(q)
    F = alg.field
    n = len(alg.vertices)
    dims = [M.dims[0] if v == q else 0 for v in range(n)]
    arrows = [Matrix.zero(F, dims[alg.arrow_target[a]], dims[alg.arrow_source[a]]) for a in range(len(alg.arrow_names))]
    action = [[M.action[0][i] if v == q else Matrix.zero(F, 0, 0) for i in range(M.ground.dim)] for v in range(n)]
    return Representation(alg, M.ground, dims, arrows, action)


def s_functor_morphism(alg: AlgebraPresentation, q, f: RepMorphism, source=None, target=None) -> RepMorphism:
    q = alg.index(q)
    source = source or s_functor(alg, q, f.source)
    target = target or s_functor(alg, q, f.target)
    maps = [f.maps[0] if v == q else Matrix.zero(alg.field, 0, 0) for v in range(len(alg.vertices))]
    return RepMorphism(source, target, maps)


def tensor_k(M: Representation, B: Representation) -> Representation:
    """``M ⊗_k B`` for ``M`` over ``R = k`` and ``B`` a ground-algebra module."""
    alg, F = M.alg, M.field
    R = B.ground
    IB = Matrix.identity(F, B.dims[0])
    arrows = [m.kron(IB) for m in M.arrows]
    action = [[Matrix.identity(F, d).kron(B.action[0][i]) for i in range(R.dim)] for d in M.dims]
    return Representation(alg, R, [d * B.dims[0] for d in M.dims], arrows, action)


def tensor_k_morphism(f: RepMorphism, g: RepMorphism, source=None, target=None) -> RepMorphism:
    """``f ⊗ g`` for ``f`` between Λ-modules and ``g`` between ground modules."""
    source = source or tensor_k(f.source, g.source)
    target = target or tensor_k(f.target, g.target)
    return RepMorphism(source, target, [m.kron(g.maps[0]) for m in f.maps])


def hom_k(N: Representation, B: Representation) -> Representation:
    """``Hom_k(N, B)`` for a right module ``N`` (over the opposite algebra), as a left Γ-module."""
    alg = N.alg.opposite()
    F = N.field
    R = B.ground
    IB = Matrix.identity(F, B.dims[0])
    # arrow a: u -> v acts by f |-> f ∘ N(a), N(a): N(v) -> N(u)
    arrows = [IB.kron(m.T) for m in N.arrows]
    action = [[B.action[0][i].kron(Matrix.identity(F, d)) for i in range(R.dim)] for d in N.dims]
    return Representation(alg, R, [d * B.dims[0] for d in N.dims], arrows, action)


# random generation

def _random_vector(F: FieldSpec, rng, n: int, density: float = 0.6):
    return [F.random(rng) if rng.random() < density else F(0) for _ in range(n)]


def _radical_vector(alg, ground, heads, v, rng, density):
    """A random element of ``rad(free_module(heads))`` at vertex ``v``."""
    F = alg.field
    vec = []
    for w in heads:
        for path in alg.paths(w, v):
            r = _random_vector(F, rng, ground.dim, density)
            if alg.basis[path].length == 0:
                a = sum((x * y for x, y in zip(ground.augmentation, r)), F(0))
                r = [x - a * u for x, u in zip(r, ground.unit)]
                if F.p:
                    r = [x % F.p for x in r]
            vec.extend(r)
    return vec


def random_free_map(Psrc_heads, Psrc: Representation, Ptgt: Representation, rng, density: float = 0.6,
                    radical: bool = False) -> RepMorphism:
    """Random map between free modules; ``radical`` keeps generator images in the radical of ``Ptgt``."""
    F = Ptgt.field
    if radical:
        heads = Ptgt._cache["heads"]
        images = [_radical_vector(Ptgt.alg, Ptgt.ground, heads, v, rng, density) for v in Psrc_heads]
    else:
        images = [_random_vector(F, rng, Ptgt.dims[v], density) for v in Psrc_heads]
    return free_map(Psrc_heads, Psrc, Ptgt, images)


def _pick_heads(alg, ground, rng, max_dim, vertices, max_summands=4):
    """Greedy choice of heads keeping every vertex dimension at most ``max_dim``."""
    n = len(alg.vertices)
    dims = [0] * n
    heads = []
    cands = list(vertices)
    for _ in range(rng.randint(1, max_summands)):
        rng.shuffle(cands)
        for v in cands:
            add = [len(alg.paths(v, u)) * ground.dim for u in range(n)]
            if all(d + a <= max_dim for d, a in zip(dims, add)):
                heads.append(v)
                dims = [d + a for d, a in zip(dims, add)]
                break
    return sorted(heads)


def random_representation(alg: AlgebraPresentation, ground: Optional[GroundAlgebra] = None, max_dim: int = 4,
                          seed: int = 0, vertices: Optional[Sequence] = None, rng=None) -> Representation:
    """A random module: cokernel of a random map into, or kernel of a random map out of, a projective.

    Per-vertex dimensions never exceed ``max_dim``.  ``vertices`` limits
    the heads of the projectives used.
    """
    ground = ground or ground_field(alg.field)
    rng = rng if rng is not None else _random.Random(seed)
    if max_dim <= 0:
        return zero_rep(alg, ground)
    verts = list(range(len(alg.vertices))) if vertices is None else [alg.index(v) for v in vertices]
    heads = _pick_heads(alg, ground, rng, max_dim, verts)
    if not heads:
        return zero_rep(alg, ground)
    P = free_module(alg, heads, ground)
    mode = rng.random()
    density = rng.choice((0.3, 0.6, 1.0))
    if mode < 0.15:
        return P
    other = [rng.choice(verts) for _ in range(rng.randint(1, 3))]
    other.sort()
    if mode < 0.6:
        Q = free_module(alg, other, ground)
        f = random_free_map(other, Q, P, rng, density, radical=rng.random() < 0.5)
        X, _ = cokernel(f)
    else:
        Q = free_module(alg, other, ground)
        f = random_free_map(heads, P, Q, rng, density)
        X, _ = kernel(f)
    return X


def loewy_quotient(alg: AlgebraPresentation, v, k: int, ground: Optional[GroundAlgebra] = None) -> Representation:
    """``P<v> / rad^k P<v>`` with respect to the path-length grading (``⊗ R`` when given)."""
    ground = ground or ground_field(alg.field)
    F = alg.field
    vi = alg.index(v)
    P = free_module(alg, [vi], ground)
    bases = []
    for u in range(len(alg.vertices)):
        cols = []
        for pos, b in enumerate(alg.paths(vi, u)):
            if alg.basis[b].length >= k:
                for i in range(ground.dim):
                    col = [F(0)] * P.dims[u]
                    col[pos * ground.dim + i] = F(1)
                    cols.append(col)
        bases.append(Matrix.from_columns(F, P.dims[u], cols) if cols else Matrix.zero(F, P.dims[u], 0))
    Q, _ = quotient(P, bases)
    return Q


def random_rmodule(ground: GroundAlgebra, max_dim: int = 3, seed: int = 0, rng=None) -> Representation:
    """A random ground-algebra module of dimension at most ``max_dim``."""
    alg = point_algebra(ground.field)
    return random_representation(alg, ground, max_dim, seed, rng=rng)
