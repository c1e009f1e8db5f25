"""The classes Φ(𝒜), Ψ(ℬ) and ℰ, with certificate-level checks for cotorsion pairs.

Perp classes have no finite decision procedure.  Every verdict about
``X^⊥`` or ``^⊥X`` produced here is relative to a finite test set and is
labelled ``certificate-level`` in reports.
"""
from __future__ import annotations

import random as _random
from dataclasses import dataclass, field as dc_field
from typing import Callable, List, Optional, Sequence

from .homalg import (
    c_functor,
    derived_c_dim,
    derived_k_dim,
    ext_dims,
    is_injective_rmodule,
    k_functor,
)
from .modcat import (
    RepMorphism,
    Representation,
    cokernel,
    direct_sum,
    dual_regular_module,
    free_module,
    injective_envelope,
    is_projective,
    kernel,
    projective_cover,
    random_representation,
    random_rmodule,
    regular_module,
    restrict_to_field,
    s_functor,
    tensor_k,
)


class EngineDisagreement(RuntimeError):
    """The three ℰ criteria disagree, which signals an engine bug."""


@dataclass(frozen=True)
class ClassPredicate:
    """A class of ground-algebra modules with a decision procedure."""

    name: str
    membership: Callable[[Representation], bool]
    generators: tuple = ()
    cogenerators: tuple = ()

    def __call__(self, M: Representation) -> bool:
        return self.membership(M)


def all_class(ground) -> ClassPredicate:
    return ClassPredicate("all", lambda M: True)


def projective_class(ground) -> ClassPredicate:
    return ClassPredicate("projective", is_projective, generators=(regular_module(ground),))


def injective_class(ground) -> ClassPredicate:
    return ClassPredicate("injective", is_injective_rmodule, cogenerators=(dual_regular_module(ground),))


def free_class(ground) -> ClassPredicate:
    # over a local ground algebra, free and projective modules coincide
    return ClassPredicate("free", is_projective, generators=(regular_module(ground),))


@dataclass(frozen=True)
class CotorsionPair:
    name: str
    A: ClassPredicate
    B: ClassPredicate
    generators: tuple = ()  # the pair is generated by this set (contains R)
    cogenerators: tuple = ()  # the pair is cogenerated by this set (contains D R)


def builtin_pair(name: str, ground) -> CotorsionPair:
    """``projective-all``, ``all-injective`` or ``free-all``."""
    if name == "projective-all":
        return CotorsionPair(name, projective_class(ground), all_class(ground), generators=(regular_module(ground),))
    if name == "free-all":
        return CotorsionPair(name, free_class(ground), all_class(ground), generators=(regular_module(ground),))
    if name == "all-injective":
        return CotorsionPair(name, all_class(ground), injective_class(ground), cogenerators=(dual_regular_module(ground),))
    raise KeyError(f"unknown cotorsion pair {name!r}")


BUILTIN_PAIRS = ("projective-all", "all-injective", "free-all")


# ℰ

@dataclass
class EReport:
    flat: bool
    injective: bool
    projective: bool

    @property
    def agree(self) -> bool:
        return self.flat == self.injective == self.projective

    @property
    def verdict(self) -> bool:
        return self.flat and self.injective and self.projective

    def as_dict(self):
        return {"tor_flat": self.flat, "ext_injective": self.injective, "projective_over_Q": self.projective,
                "agree": self.agree}


def e_criteria(X: Representation, vertices=None) -> EReport:
    """The three ℰ criteria, computed independently.

    ``vertices`` restricts the Tor and Ext tests, for windows of infinite
    quivers where only some vertices have faithful resolutions.
    """
    verts = X.alg.vertices if vertices is None else vertices
    flat = all(derived_c_dim(1, q, X) == 0 for q in verts)
    inj = all(derived_k_dim(1, q, X) == 0 for q in verts)
    proj = is_projective(restrict_to_field(X))
    return EReport(flat, inj, proj)


def e_membership(X: Representation, vertices=None) -> bool:
    rep = e_criteria(X, vertices)
    if not rep.agree:
        raise EngineDisagreement(f"ℰ criteria disagree: {rep.as_dict()}")
    return rep.verdict


# Φ and Ψ

@dataclass
class ClassReport:
    C: dict = dc_field(default_factory=dict)
    K: dict = dc_field(default_factory=dict)
    L1C: dict = dc_field(default_factory=dict)
    R1K: dict = dc_field(default_factory=dict)
    in_phi: Optional[bool] = None
    in_psi: Optional[bool] = None
    in_e: Optional[bool] = None
    failing: list = dc_field(default_factory=list)

    def as_dict(self):
        return {"C": self.C, "K": self.K, "L1C": self.L1C, "R1K": self.R1K, "in_phi": self.in_phi,
                "in_psi": self.in_psi, "in_e": self.in_e, "failing_vertices": self.failing}


def phi_membership(X: Representation, A: ClassPredicate) -> ClassReport:
    """``X ∈ Φ(𝒜)`` iff ``C_q X ∈ 𝒜`` and ``L_1 C_q X = 0`` for every vertex."""
    rep = ClassReport()
    ok = True
    for q in X.alg.vertices:
        Cq = c_functor(q, X)
        l1 = derived_c_dim(1, q, X)
        rep.C[str(q)] = Cq.dims[0]
        rep.L1C[str(q)] = l1
        if l1 or not A(Cq):
            ok = False
            rep.failing.append(str(q))
    rep.in_phi = ok
    rep.in_e = all(v == 0 for v in rep.L1C.values())
    return rep


def psi_membership(X: Representation, B: ClassPredicate) -> ClassReport:
    """``X ∈ Ψ(ℬ)`` iff ``K_q X ∈ ℬ`` and ``R^1 K_q X = 0`` for every vertex."""
    rep = ClassReport()
    ok = True
    for q in X.alg.vertices:
        Kq = k_functor(q, X)
        r1 = derived_k_dim(1, q, X)
        rep.K[str(q)] = Kq.dims[0]
        rep.R1K[str(q)] = r1
        if r1 or not B(Kq):
            ok = False
            rep.failing.append(str(q))
    rep.in_psi = ok
    rep.in_e = all(v == 0 for v in rep.R1K.values())
    return rep


def perp_certificate(X: Representation, test_set: Sequence[Representation], side: str) -> bool:
    """Sufficient certificate: ``left`` checks ``Ext^1(X, t) = 0``, ``right`` checks ``Ext^1(t, X) = 0``."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    for t in test_set:
        d = ext_dims(X, t, 1)[1] if side == "left" else ext_dims(t, X, 1)[1]
        if d:
            return False
    return True


def s_star(alg, modules: Sequence[Representation]) -> List[Representation]:
    """``{S_q(C) : q ∈ Q, C ∈ modules}``."""
    return [s_functor(alg, q, C) for q in alg.vertices for C in modules]


def perp_equivalence(pair: CotorsionPair, samples: Sequence[Representation]) -> dict:
    """Definitional membership against the finite perp certificate, per sample."""
    results = []
    failures = []
    for k, X in enumerate(samples):
        entry = {"index": k}
        if pair.generators:
            R = X.ground
            if not any(g.dims == (R.dim,) and is_projective(g) for g in pair.generators):
                raise ValueError("generator set must contain the regular module")
            lhs = psi_membership(X, pair.B).in_psi
            rhs = perp_certificate(X, s_star(X.alg, pair.generators), "right")
            entry.update(side="generated", definitional=lhs, certificate=rhs)
        else:
            if not pair.cogenerators:
                raise ValueError("pair has neither generators nor cogenerators")
            lhs = phi_membership(X, pair.A).in_phi
            rhs = perp_certificate(X, s_star(X.alg, pair.cogenerators), "left")
            entry.update(side="cogenerated", definitional=lhs, certificate=rhs)
        entry["agree"] = lhs == rhs
        results.append(entry)
        if lhs != rhs:
            failures.append({"index": k, "dims": {str(v): d for v, d in zip(X.alg.vertices, X.dims)}})
    return {"samples": len(samples), "agreements": sum(r["agree"] for r in results),
            "positives": sum(bool(r["definitional"]) for r in results), "passed": not failures,
            "failures": failures}


def compatibility_suite(pair: CotorsionPair, phi_samples, psi_samples) -> dict:
    """(Comp1) on all sample pairs plus the certified inclusions ``Φ ⊆ ℰ ∩ ^⊥Ψ`` and ``Ψ ⊆ ℰ ∩ Φ^⊥``."""
    nonzero = []
    for i, Fm in enumerate(phi_samples):
        for j, Pm in enumerate(psi_samples):
            if ext_dims(Fm, Pm, 1)[1]:
                nonzero.append([i, j])
    phi_in_e = all(e_membership(Fm) for Fm in phi_samples)
    psi_in_e = all(e_membership(Pm) for Pm in psi_samples)
    return {
        "phi_samples": len(phi_samples),
        "psi_samples": len(psi_samples),
        "comp1_pairs_checked": len(phi_samples) * len(psi_samples),
        "comp1_nonzero": nonzero,
        "phi_in_E": phi_in_e,
        "psi_in_E": psi_in_e,
        "reverse_inclusions": "certificate-level only",
        "passed": not nonzero and phi_in_e and psi_in_e,
    }


# trivial objects

@dataclass
class TrivialWitness:
    verdict: bool
    witness: str
    details: dict


def trivial_class_membership(X: Representation, pair: CotorsionPair) -> TrivialWitness:
    """``X ∈ 𝒲 = ℰ`` together with an explicit short exact sequence for built-in pairs.

    For pairs with 𝒜 projective or free: ``0 -> P -> F -> X -> 0`` with
    ``F`` a projective cover, checked ``F ∈ Φ(𝒜)`` and ``P ∈ Ψ(ℬ)``.
    For (all, injective): ``0 -> X -> P' -> F' -> 0`` with ``P'`` an
    injective envelope, checked ``P' ∈ Ψ(ℬ)`` and ``F' ∈ Φ(𝒜)``.
    """
    in_e = e_membership(X)
    if pair.name in ("projective-all", "free-all"):
        cover = projective_cover(X)
        P, _ = kernel(cover)
        f_ok = phi_membership(cover.source, pair.A).in_phi
        p_ok = psi_membership(P, pair.B).in_psi
        witness_ok = bool(f_ok and p_ok)
        det = {"F_dim": cover.source.total_dim, "P_dim": P.total_dim, "F_in_phi": f_ok, "P_in_psi": p_ok}
        kind = "projective-cover"
    elif pair.name == "all-injective":
        env = injective_envelope(X)
        Fp, _ = cokernel(env)
        p_ok = psi_membership(env.target, pair.B).in_psi
        f_ok = phi_membership(Fp, pair.A).in_phi
        witness_ok = bool(f_ok and p_ok)
        det = {"P_dim": env.target.total_dim, "F_dim": Fp.total_dim, "F_in_phi": f_ok, "P_in_psi": p_ok}
        kind = "injective-envelope"
    else:
        return TrivialWitness(in_e, "unavailable", {"reason": "witness construction needs a built-in pair"})
    det["in_E"] = in_e
    det["agree"] = witness_ok == in_e
    return TrivialWitness(in_e, kind if witness_ok else "none", det)


def hovey_predicates(f: RepMorphism, phi_cert: Sequence[Representation], psi_cert: Sequence[Representation]) -> dict:
    """Fibration: epi with kernel in ``Φ^⊥`` (certified); cofibration: mono with cokernel in ``^⊥Ψ`` (certified)."""
    fib = False
    cof = False
    if f.is_epi():
        K, _ = kernel(f)
        fib = perp_certificate(K, phi_cert, "right")
    if f.is_mono():
        C, _ = cokernel(f)
        cof = perp_certificate(C, psi_cert, "left")
    return {"fibration": fib, "cofibration": cof, "semantics": "certificate-level"}


# sampling

def sample_e(alg, ground, rng, max_dim: int = 4, tries: int = 30) -> Representation:
    """A random member of ℰ: projective, projective ⊗ module, or a filtered random module."""
    mode = rng.random()
    verts = list(range(len(alg.vertices)))
    if mode < 0.25:
        heads = sorted(rng.choice(verts) for _ in range(rng.randint(1, 2)))
        P = free_module(alg, heads, ground)
        if max(P.dims) <= max_dim:
            return P
    if mode < 0.6:
        B = random_rmodule(ground, max(1, max_dim // 2), rng=rng)
        heads = [rng.choice(verts)]
        X = tensor_k(free_module(alg, heads), B)
        if max(X.dims) <= max_dim and X.total_dim:
            return X
    for _ in range(tries):
        X = random_representation(alg, ground, max_dim, rng=rng)
        if e_membership(X):
            return X
    return free_module(alg, [rng.choice(verts)], ground)


def sample_class(alg, ground, rng, accept: Callable[[Representation], bool], max_dim: int = 4, tries: int = 60,
                 fallback: Optional[Callable] = None) -> Representation:
    for _ in range(tries):
        X = sample_e(alg, ground, rng, max_dim)
        if accept(X):
            return X
    return fallback() if fallback else None


def sample_psi_injective(alg, ground, rng, max_dim: int = 4) -> Representation:
    """ℰ-modules with injective ``K_q``: ``P ⊗ I`` for injective ``I``, or filtered samples."""
    inj = injective_class(ground)
    if rng.random() < 0.5:
        D = dual_regular_module(ground)
        I = D if rng.random() < 0.7 else direct_sum(D, D)
        heads = [rng.randrange(len(alg.vertices))]
        X = tensor_k(free_module(alg, heads), I)
        if max(X.dims) <= max_dim:
            return X
    return sample_class(alg, ground, rng, lambda X: psi_membership(X, inj).in_psi, max_dim,
                        fallback=lambda: tensor_k(free_module(alg, [0]), dual_regular_module(ground)))


def sample_mixed(alg, ground, rng, max_dim: int = 4, vertices=None) -> Representation:
    """Random modules with a share of ℰ-members so that both verdicts occur."""
    if rng.random() < 0.3 and vertices is None:
        return sample_e(alg, ground, rng, max_dim)
    return random_representation(alg, ground, max_dim, rng=rng, vertices=vertices)


def hereditary_spotcheck(alg, ground, trials: int, seed: int, pair: Optional[CotorsionPair] = None) -> dict:
    """``L_2 C_q`` vanishes on ℰ, and kernels of epis between Φ-members stay in Φ."""
    from .modcat import free_map, generator_vector
    rng = _random.Random(seed)
    pair = pair or builtin_pair("free-all", ground)
    l2_fail = []
    for t in range(trials):
        X = sample_e(alg, ground, rng)
        if any(derived_c_dim(2, q, X) for q in alg.vertices):
            l2_fail.append(t)
    ker_fail = []
    verts = list(range(len(alg.vertices)))
    for t in range(max(1, trials // 2)):
        h2 = sorted(rng.choice(verts) for _ in range(rng.randint(1, 2)))
        hg = sorted(rng.choice(verts) for _ in range(rng.randint(1, 2)))
        F2 = free_module(alg, h2, ground)
        G = free_module(alg, hg, ground)
        F1 = free_module(alg, h2 + hg, ground)
        F = alg.field
        images = []
        for b, v in enumerate(h2):
            images.append(generator_vector(alg, h2, b, ground))
        for v in hg:
            images.append([F.random(rng) for _ in range(F2.dims[v])])
        f = free_map(h2 + hg, F1, F2, images)
        if not f.is_epi():
            ker_fail.append(t)
            continue
        K, _ = kernel(f)
        if not phi_membership(K, pair.A).in_phi:
            ker_fail.append(t)
    return {"L2C_vanishes_on_E": not l2_fail, "L2C_failures": l2_fail,
            "kernel_closure": not ker_fail, "kernel_failures": ker_fail,
            "passed": not l2_fail and not ker_fail}
