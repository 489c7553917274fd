"""Tate cohomology of lattices in degrees -1, 0 and 1.

All three groups are finite for a lattice (they are killed by |H|), so
each computation ends in a cokernel of an exact integer solve and the
result is a list of elementary divisors.

Degree 0 is M^H / N_H(M), degree -1 is ker(N_H) / I_H M with I_H the
augmentation ideal, and degree 1 is classical H^1 (crossed
homomorphisms modulo principal ones).  H^1 uses a reduced system whose
unknowns are the cocycle values on the generators only; the cocycle
condition c(sx) = c(s) + s c(x) for every generator s and element x
pins down everything else, and induction on word length shows those
constraints imply the full condition, so the reduced system computes
the same group as the full one (the tests cross-check this against a
naive all-elements system).

Lattices restricted to a subgroup, or presented as kernels/quotients
of permutation lattices, keep enough structure that the norm matrix
can be assembled from basis index maps instead of summing dense
matrices over the whole subgroup.
"""

from __future__ import annotations

import os

from .errors import ComputationTooLargeError
from .intmat import (
    IntMatrix,
    cokernel_invariants,
    kernel_basis,
    solve_exact,
)
from .lattice import GLattice, element_index_maps
from .perms import FiniteGroup, Subgroup, subgroups_up_to_conjugacy

DEFAULT_COST_CUTOFF = 20_000_000_000


def cost_cutoff(cutoff=None):
    if cutoff is not None:
        return cutoff
    env = os.environ.get("NORMONE_CUTOFF")
    return int(env) if env else DEFAULT_COST_CUTOFF


class TateGroup:
    """A finite abelian group as sorted elementary divisors."""

    def __init__(self, degree, invariants):
        self.degree = degree
        self.invariants = tuple(sorted(int(d) for d in invariants))
        assert all(d > 1 for d in self.invariants)

    @property
    def is_trivial(self):
        return not self.invariants

    @property
    def order(self):
        n = 1
        for d in self.invariants:
            n *= d
        return n

    def __eq__(self, other):
        return (
            isinstance(other, TateGroup)
            and self.degree == other.degree
            and self.invariants == other.invariants
        )

    def __hash__(self):
        return hash((self.degree, self.invariants))

    def __repr__(self):
        return "TateGroup(%d, %s)" % (self.degree, list(self.invariants))

    def __str__(self):
        if self.is_trivial:
            return "0"
        return "[" + ", ".join(str(d) for d in self.invariants) + "]"

    def to_json(self):
        return {"degree": self.degree, "invariants": list(self.invariants)}


def _group_of(H) -> FiniteGroup:
    return H.group if isinstance(H, Subgroup) else H


def norm_matrix(M: GLattice, H) -> IntMatrix:
    """Sum of the action matrices over all elements of H."""
    Hg = _group_of(H)
    if M.tag is not None:
        maps = element_index_maps(M.tag, Hg)
        counts = [[0] * M.rank for _ in range(M.rank)]
        for mp in maps.values():
            for j, i in enumerate(mp):
                counts[i][j] += 1
        return IntMatrix(counts, M.rank, M.rank)
    if M.quot_data is not None:
        amb, project, section = M.quot_data
        return project @ norm_matrix(amb, Hg) @ section
    if M.sub_data is not None:
        amb, include, retract = M.sub_data
        return retract @ norm_matrix(amb, Hg) @ include
    acc = IntMatrix.zeros(M.rank, M.rank)
    for x in Hg.elements:
        acc = acc + M.matrix_of(x)
    return acc


def fixed_point_basis(M: GLattice, H) -> IntMatrix:
    """Columns spanning M^H (a saturated sublattice, so exactly M^H)."""
    Hg = _group_of(H)
    gens = Hg.generators
    if not gens or M.rank == 0:
        return IntMatrix.identity(M.rank)
    if M.tag is not None:
        gen_maps = [M.tag.index_map(s) for s in gens]
        seen = [False] * M.rank
        cols = []
        for b in range(M.rank):
            if seen[b]:
                continue
            orbit = {b}
            frontier = [b]
            while frontier:
                i = frontier.pop()
                for mp in gen_maps:
                    j = mp[i]
                    if j not in orbit:
                        orbit.add(j)
                        frontier.append(j)
            col = [0] * M.rank
            for i in orbit:
                seen[i] = True
                col[i] = 1
            cols.append(col)
        return IntMatrix.from_columns(cols, rows=M.rank)
    stacked = None
    ident = IntMatrix.identity(M.rank)
    for s in gens:
        block = M.matrix_of(s) - ident
        stacked = block if stacked is None else stacked.vstack(block)
    return kernel_basis(stacked)


def _augmentation_image_columns(M: GLattice, Hg: FiniteGroup) -> IntMatrix:
    """Columns spanning I_H M, the span of (h - 1)m.

    (hh' - 1) = h(h' - 1) + (h - 1), so the images (s - 1)M over the
    generators s already span the whole augmentation image.
    """
    ident = IntMatrix.identity(M.rank)
    out = None
    for s in Hg.generators:
        block = M.matrix_of(s) - ident
        out = block if out is None else out.hstack(block)
    if out is None:
        out = IntMatrix.zeros(M.rank, 0)
    return out


def tate_h0(M: GLattice, H) -> TateGroup:
    """M^H / N_H(M)."""
    Hg = _group_of(H)
    B = fixed_point_basis(M, Hg)
    if B.cols == 0:
        return TateGroup(0, [])
    N = norm_matrix(M, Hg)
    coords = solve_exact(B, N)
    torsion, free = cokernel_invariants(coords)
    assert free == 0, "degree 0 Tate group must be finite"
    return TateGroup(0, torsion)


def tate_h_minus1(M: GLattice, H) -> TateGroup:
    """ker(N_H) / I_H M."""
    Hg = _group_of(H)
    N = norm_matrix(M, Hg)
    Kb = kernel_basis(N)
    if Kb.cols == 0:
        return TateGroup(-1, [])
    coords = solve_exact(Kb, _augmentation_image_columns(M, Hg))
    torsion, free = cokernel_invariants(coords)
    assert free == 0, "degree -1 Tate group must be finite"
    return TateGroup(-1, torsion)


def _unit_block(index, count, r):
    """r x (count*r) matrix with the identity in block `index`."""
    left = IntMatrix.zeros(r, index * r)
    right = IntMatrix.zeros(r, (count - index - 1) * r)
    return left.hstack(IntMatrix.identity(r)).hstack(right)


def tate_h1(M: GLattice, H) -> TateGroup:
    """Crossed homomorphisms modulo principal ones."""
    Hg = _group_of(H)
    gens = Hg.generators
    r = M.rank
    if not gens or r == 0:
        return TateGroup(1, [])
    ng = len(gens)
    width = ng * r
    gen_mats = {s: M.matrix_of(s) for s in gens}
    blocks = {s: _unit_block(i, ng, r) for i, s in enumerate(gens)}
    dag = Hg.word_dag()
    expr = {Hg.identity: IntMatrix.zeros(r, width)}
    for x in Hg.elements:
        if x in expr:
            continue
        chain = []
        y = x
        while y not in expr:
            gen, parent = dag[y]
            chain.append((y, gen))
            y = parent
        cur = expr[y]
        for elem, gen in reversed(chain):
            cur = blocks[gen] + gen_mats[gen] @ cur
            expr[elem] = cur
    rows = {}
    for x in Hg.elements:
        ex = expr[x]
        for s in gens:
            y = s * x
            if dag[y] == (s, x):
                continue
            block = expr[y] - blocks[s] - gen_mats[s] @ ex
            for row in block.data:
                if any(row):
                    rows[row] = None
    if rows:
        stacked = IntMatrix(tuple(rows), len(rows), width)
        Z = kernel_basis(stacked)
    else:
        Z = IntMatrix.identity(width)
    if Z.cols == 0:
        return TateGroup(1, [])
    ident = IntMatrix.identity(r)
    principal = None
    for s in gens:
        block = gen_mats[s] - ident
        principal = block if principal is None else principal.vstack(block)
    coords = solve_exact(Z, principal)
    torsion, free = cokernel_invariants(coords)
    assert free == 0, "degree 1 Tate group must be finite"
    return TateGroup(1, torsion)


def tate_cohomology(M: GLattice, H, degree: int) -> TateGroup:
    if degree == 0:
        return tate_h0(M, H)
    if degree == -1:
        return tate_h_minus1(M, H)
    if degree == 1:
        return tate_h1(M, H)
    raise ValueError("supported degrees are -1, 0, 1; got %r" % (degree,))


# -- flasque / coflasque sweeps ------------------------------------------


def _sweep(M, degree, cutoff):
    G = M.group
    subs = subgroups_up_to_conjugacy(G)
    r = max(M.rank, 1)
    if degree == 1:
        # reduced H^1 system is (ng*r)^3-ish per subgroup
        unit = (2 * r) ** 3
    else:
        unit = r ** 3
    cost = len(subs) * unit
    limit = cost_cutoff(cutoff)
    if cost > limit:
        raise ComputationTooLargeError(
            "cohomology sweep cost %d exceeds cutoff %d "
            "(%d subgroup classes, rank %d)" % (cost, limit, len(subs), r)
        )
    return [(sub, tate_cohomology(M, sub, degree)) for sub in subs]


def flasque_report(M: GLattice, cutoff=None):
    """(subgroup, Tate group in degree -1) over all subgroup classes."""
    return _sweep(M, -1, cutoff)


def coflasque_report(M: GLattice, cutoff=None):
    """(subgroup, Tate group in degree 1) over all subgroup classes."""
    return _sweep(M, 1, cutoff)


def is_flasque(M: GLattice, cutoff=None) -> bool:
    return all(t.is_trivial for _, t in flasque_report(M, cutoff))


def is_coflasque(M: GLattice, cutoff=None) -> bool:
    return all(t.is_trivial for _, t in coflasque_report(M, cutoff))


__all__ = [
    "TateGroup",
    "norm_matrix",
    "fixed_point_basis",
    "tate_h0",
    "tate_h_minus1",
    "tate_h1",
    "tate_cohomology",
    "flasque_report",
    "coflasque_report",
    "is_flasque",
    "is_coflasque",
    "cost_cutoff",
    "DEFAULT_COST_CUTOFF",
]
