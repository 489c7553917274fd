"""Flasque resolutions 0 -> M -> P -> F -> 0 via coflasque covers.

A coflasque cover of M is a surjection phi: Q -> M from a permutation
lattice that is also surjective on H-fixed points for every subgroup
H.  Its kernel C is then coflasque: the long exact sequence gives

    0 -> C^H -> Q^H -> M^H -> H^1(H, C) -> H^1(H, Q) = 0,

and H^1 of a permutation lattice vanishes.  Dualising the cover of
dual(M) produces the flasque resolution of M, with F = dual(C) flasque;
the resolution re-checks that directly with a Tate degree -1 sweep.

The cover is built greedily over subgroup classes in decreasing order.
Each deficiency vector v found in some M^H is added as a whole summand
Z[G/Stab(v)] tensor v, using the full stabilizer of v rather than H;
picking the larger stabilizer keeps the cover rank small (plain
one-summand-per-fixed-basis-vector greediness blows up already for
elementary abelian 2-groups of rank 6, where fixed points of pairwise
intersections of index-2 subgroups are not spanned by the fixed points
of the subgroups themselves because of parity obstructions).
"""

from __future__ import annotations

from .errors import VerificationError
from .intmat import (
    IntMatrix,
    cokernel_invariants,
    inverse_unimodular,
    kernel_basis,
    smith_normal_form,
    solve_exact,
)
from .cohomology import fixed_point_basis, flasque_report
from .lattice import (
    GLattice,
    PermutationBasisTag,
    direct_sum,
    dual,
    permutation_lattice,
)
from .perms import FiniteGroup, Subgroup, subgroups_up_to_conjugacy


class CoverSummand:
    """One block Z[G/K] tensor v of a cover, with its image columns."""

    def __init__(self, subgroup, vector, lattice, image_columns, coset_reps):
        self.subgroup = subgroup
        self.vector = vector
        self.lattice = lattice
        self.image_columns = image_columns
        self.coset_reps = coset_reps

    def to_json(self):
        return {
            "subgroup": [g.cycle_string() for g in self.subgroup.group.generators],
            "subgroup_order": self.subgroup.order,
            "vector": list(self.vector),
        }


def _coset_reps_of(lattice):
    comp = lattice.tag.components[0]
    if comp.kind == "cosets":
        return list(comp.reps)
    assert comp.kind == "fixed"
    return [lattice.group.identity]


def _vector_stabilizer(M: GLattice, col: IntMatrix) -> Subgroup:
    G = M.group
    keep = [g for g in G.elements if M.matrix_of(g) @ col == col]
    return Subgroup(G, FiniteGroup.from_elements(keep, G.degree))


def _make_summand(M: GLattice, stab: Subgroup, col: IntMatrix) -> CoverSummand:
    for s in stab.group.generators:
        assert M.matrix_of(s) @ col == col
    L = permutation_lattice(M.group, stab)
    reps = _coset_reps_of(L)
    cols = [(M.matrix_of(r) @ col).col(0) for r in reps]
    image = IntMatrix.from_columns(cols, rows=M.rank)
    return CoverSummand(stab, col.col(0), L, image, reps)


def _fixed_image_columns(M, summands, Hg):
    cols = IntMatrix.zeros(M.rank, 0)
    for s in summands:
        fixed = fixed_point_basis(s.lattice, Hg)
        if fixed.cols:
            cols = cols.hstack(s.image_columns @ fixed)
    return cols


def _spans(FH, cols):
    coords = solve_exact(FH, cols)
    torsion, free = cokernel_invariants(coords)
    return (not torsion) and free == 0, coords


def _missing_direction(coords):
    """An FH-coordinate vector outside the integer span of coords."""
    s = smith_normal_form(coords)
    diag = s.diagonal()
    k = coords.rows
    for i in range(k):
        d = diag[i] if i < len(diag) else 0
        if d != 1:
            Uinv = inverse_unimodular(s.U)
            return IntMatrix.column(Uinv.col(i))
    raise AssertionError("no missing direction in a non-spanning system")


class CoflasqueCover:
    """phi: Q -> M surjective on fixed points of every subgroup."""

    def __init__(self, target, Q, phi, kernel, summands):
        self.target = target
        self.Q = Q
        self.phi = phi
        self.kernel = kernel
        self.summands = summands

    def verify(self):
        M, G = self.target, self.target.group
        for g in G.generators:
            if self.phi @ self.Q.matrix_of(g) != M.matrix_of(g) @ self.phi:
                raise VerificationError("cover map is not equivariant")
        for H in subgroups_up_to_conjugacy(G):
            FH = fixed_point_basis(M, H.group)
            if FH.cols == 0:
                continue
            if self.summands:
                cols = _fixed_image_columns(M, self.summands, H.group)
            else:
                # identity cover of a permutation lattice: no block structure
                cols = self.phi @ fixed_point_basis(self.Q, H.group)
            ok, _ = _spans(FH, cols)
            if not ok:
                raise VerificationError(
                    "cover misses fixed points of a subgroup of order %d"
                    % H.order
                )
        if self.kernel.rank:
            _, inc, ret = self.kernel.sub_data
            if not (self.phi @ inc).is_zero():
                raise VerificationError("kernel columns not killed by the cover")
            assert ret @ inc == IntMatrix.identity(self.kernel.rank)
        return True

    def to_json(self):
        return {
            "target_rank": self.target.rank,
            "cover_rank": self.Q.rank,
            "kernel_rank": self.kernel.rank,
            "summands": [s.to_json() for s in self.summands],
            "phi": self.phi.to_json(),
        }


def _zero_lattice(G):
    return GLattice(G, 0, tag=PermutationBasisTag([]))


def _kernel_lattice(G, Q, phi):
    inc = kernel_basis(phi)
    c = inc.cols
    if c == 0:
        return _zero_lattice(G)
    s = smith_normal_form(inc)
    assert s.rank == c and all(d == 1 for d in s.diagonal()), (
        "kernel basis must be saturated"
    )
    top = IntMatrix.identity(c).hstack(IntMatrix.zeros(c, Q.rank - c))
    ret = s.V @ (top @ s.U)
    assert ret @ inc == IntMatrix.identity(c)
    return GLattice(
        G,
        c,
        resolver=lambda g: ret @ Q.matrix_of(g) @ inc,
        sub_data=(Q, inc, ret),
    )


def coflasque_cover(M: GLattice) -> CoflasqueCover:
    """Greedy fixed-point-surjective permutation cover of M.

    A permutation lattice is covered by itself via the identity.
    """
    G = M.group
    if M.rank == 0 or M.tag is not None:
        ident = IntMatrix.identity(M.rank)
        cover = CoflasqueCover(M, M, ident, _zero_lattice(G), [])
        return cover
    summands = []
    for H in subgroups_up_to_conjugacy(G):
        FH = fixed_point_basis(M, H.group)
        if FH.cols == 0:
            continue
        while True:
            ok, coords = _spans(FH, _fixed_image_columns(M, summands, H.group))
            if ok:
                break
            col = FH @ _missing_direction(coords)
            stab = _vector_stabilizer(M, col)
            assert all(stab.group.contains(x) for x in H.group.generators)
            summands.append(_make_summand(M, stab, col))
    assert summands, "nonzero lattice cannot have an empty cover"
    Q = direct_sum([s.lattice for s in summands])
    phi = summands[0].image_columns
    for s in summands[1:]:
        phi = phi.hstack(s.image_columns)
    cover = CoflasqueCover(M, Q, phi, _kernel_lattice(G, Q, phi), summands)
    cover.verify()
    return cover


class FlasqueResolution:
    """0 -> M -> P -> F -> 0 with P permutation and F flasque.

    F represents the class rho(M) in the flasque-class monoid; M is
    p-invertible exactly when that class is invertible at p.
    """

    def __init__(self, target, P, inject, F, cover):
        self.target = target
        self.P = P
        self.inject = inject
        self.F = F
        self.cover = cover

    def verify(self, check_flasque=True, cutoff=None):
        M, G = self.target, self.target.group
        project = self.F.quot_data[1]
        if not (project @ self.inject).is_zero():
            raise VerificationError("resolution is not a complex")
        for g in G.generators:
            if self.inject @ M.matrix_of(g) != self.P.matrix_of(g) @ self.inject:
                raise VerificationError("injection is not equivariant")
        s = smith_normal_form(self.inject)
        if s.rank != M.rank or any(d != 1 for d in s.diagonal()):
            raise VerificationError("injection image is not a saturated sublattice")
        coords = solve_exact(self.inject, kernel_basis(project))
        torsion, free = cokernel_invariants(coords)
        if torsion or free:
            raise VerificationError("kernel of projection exceeds image of injection")
        if check_flasque:
            bad = [
                (H, t) for H, t in flasque_report(self.F, cutoff) if not t.is_trivial
            ]
            if bad:
                raise VerificationError(
                    "quotient is not flasque at a subgroup of order %d: %s"
                    % (bad[0][0].order, bad[0][1])
                )
        return True

    def to_json(self):
        return {
            "target_rank": self.target.rank,
            "perm_rank": self.P.rank,
            "flasque_rank": self.F.rank,
            "summands": [s.to_json() for s in self.cover.summands],
            "inject": self.inject.to_json(),
            "project": self.F.quot_data[1].to_json(),
        }


def flasque_resolution(M: GLattice, check_flasque=True, cutoff=None) -> FlasqueResolution:
    """Flasque resolution of M, dual to a coflasque cover of dual(M)."""
    G = M.group
    D = dual(M)
    cover = coflasque_cover(D)
    P = cover.Q
    assert P.tag is not None, "covers are permutation lattices"
    inject = cover.phi.transpose()
    s = smith_normal_form(inject)
    if s.rank != M.rank or any(d != 1 for d in s.diagonal()):
        raise VerificationError("dualised cover does not embed the target")
    r = M.rank
    fr = P.rank - r
    project = IntMatrix(
        tuple(s.U.data[r:]), fr, P.rank
    )
    Uinv = inverse_unimodular(s.U)
    section = IntMatrix.from_columns(
        [Uinv.col(j) for j in range(r, P.rank)], rows=P.rank
    )
    assert project @ section == IntMatrix.identity(fr)
    F = GLattice(
        G,
        fr,
        resolver=lambda g: project @ P.matrix_of(g) @ section,
        quot_data=(P, project, section),
    )
    res = FlasqueResolution(M, P, inject, F, cover)
    res.verify(check_flasque=check_flasque, cutoff=cutoff)
    return res


def rho(M: GLattice, check_flasque=True, cutoff=None) -> GLattice:
    """The flasque class rho(M), returned as a concrete representative."""
    return flasque_resolution(M, check_flasque=check_flasque, cutoff=cutoff).F


__all__ = [
    "CoverSummand",
    "CoflasqueCover",
    "coflasque_cover",
    "FlasqueResolution",
    "flasque_resolution",
    "rho",
]
