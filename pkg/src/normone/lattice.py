"""Lattices with a group action: Z^rank with G acting by unimodular
integer matrices.

A GLattice stores its action lazily: permutation lattices carry a basis
tag (coset labels plus index maps) and produce permutation matrices for
arbitrary group elements without enumerating the group, while derived
lattices (duals, kernels, quotients, restrictions, direct sums) resolve
their matrices by composing with the lattice they came from.  Kernel
and quotient lattices remember the ambient permutation lattice together
with the inclusion/retraction or projection/section pair; the
cohomology routines use those to avoid dense products over big groups.

The distinguished construction here is the augmentation sequence of a
coset space G/H,

    0 -> I -> Z[G/H] -> Z -> 0   (epsilon = coordinate sum),

and its dual J = dual(I), the norm one lattice of the pair (G, H).
"""

from __future__ import annotations

from .errors import UnsupportedCaseError, VerificationError
from .intmat import (
    IntMatrix,
    inverse_unimodular,
    kernel_basis,
    smith_normal_form,
    solve_exact,
)
from .perms import (
    FiniteGroup,
    Permutation,
    Subgroup,
    left_cosets,
    same_group,
    _conjugacy_key,
)


class TagComponent:
    """One transitive block of a permutation basis."""

    def __init__(self, kind, labels, stabilizer=None, letters=None, reps=None, coset_of=None):
        assert kind in ("letters", "cosets", "fixed")
        self.kind = kind
        self.labels = tuple(labels)
        self.size = len(self.labels)
        self.stabilizer = stabilizer
        self.letters = letters
        self.reps = reps
        self.coset_of = coset_of

    def index_map(self, g: Permutation):
        """Position j maps to index_map[j] under the action of g."""
        if self.kind == "fixed":
            return tuple(range(self.size))
        if self.kind == "letters":
            img = g.images
            return tuple(img[x - 1] - 1 for x in self.letters)
        return tuple(self.coset_of[g * r] for r in self.reps)

    def without_stabilizer(self):
        return TagComponent(
            self.kind, self.labels, None, self.letters, self.reps, self.coset_of
        )


class PermutationBasisTag:
    """Basis bookkeeping for a permutation lattice: labels, index maps,
    and (when known) the stabilizer of each transitive block."""

    def __init__(self, components):
        self.components = tuple(components)
        self.size = sum(c.size for c in self.components)
        self.labels = tuple(l for c in self.components for l in c.labels)

    def index_map(self, g: Permutation):
        out = []
        offset = 0
        for c in self.components:
            out.extend(offset + i for i in c.index_map(g))
            offset += c.size
        return tuple(out)

    def without_stabilizers(self):
        return PermutationBasisTag([c.without_stabilizer() for c in self.components])

    def stabilizers(self):
        """Per-block stabilizers, or None if any block lost them."""
        stabs = [c.stabilizer for c in self.components]
        return None if any(s is None for s in stabs) else stabs


def _perm_matrix(index_map):
    n = len(index_map)
    rows = [[0] * n for _ in range(n)]
    for j, i in enumerate(index_map):
        rows[i][j] = 1
    return IntMatrix(rows, n, n)


class GLattice:
    """Z^rank with a G-action by unimodular matrices (columns act)."""

    def __init__(
        self,
        group,
        rank,
        resolver=None,
        gen_matrices=None,
        tag=None,
        sub_data=None,
        quot_data=None,
        restriction_of=None,
    ):
        self.group = group
        self.rank = rank
        self._resolver = resolver
        self._gen_mats = gen_matrices
        self.tag = tag
        # sub_data = (ambient, include, retract): include maps our
        # coordinates to a saturated sublattice of ambient, retract is a
        # left inverse of include
        self.sub_data = sub_data
        # quot_data = (ambient, project, section): project is an
        # equivariant surjection ambient -> us, section a right inverse
        self.quot_data = quot_data
        self.restriction_of = restriction_of
        self._dual_link = None
        self._memo = {}

    def __repr__(self):
        return "GLattice(rank=%d over %r)" % (self.rank, self.group)

    def matrix_of(self, g: Permutation) -> IntMatrix:
        hit = self._memo.get(g)
        if hit is not None:
            return hit
        if g.is_identity():
            mat = IntMatrix.identity(self.rank)
        elif self.tag is not None:
            mat = _perm_matrix(self.tag.index_map(g))
        elif self._resolver is not None:
            mat = self._resolver(g)
        else:
            mat = self._matrix_by_word(g)
        self._memo[g] = mat
        return mat

    def _matrix_by_word(self, g):
        dag = self.group.word_dag()
        chain = []
        x = g
        while x not in self._memo:
            step = dag[x]
            if step is None:
                self._memo[x] = IntMatrix.identity(self.rank)
                break
            gen, parent = step
            chain.append((x, gen))
            x = parent
        mat = self._memo[x]
        # memoise the whole chain: group walks revisit shared prefixes
        for elem, gen in reversed(chain):
            mat = self._gen_mats[gen] @ mat
            self._memo[elem] = mat
        return mat

    def generator_matrices(self):
        return {g: self.matrix_of(g) for g in self.group.generators}

    def check_action(self, limit=200):
        """Assert the action is a homomorphism by unimodular matrices.

        Exhaustive over all (generator, element) pairs when the group
        has at most `limit` elements; otherwise checks generator pairs.
        """
        for g in self.group.generators:
            assert abs(self.matrix_of(g).det()) == 1
        if self.group.is_enumerable() and self.group.order <= limit:
            pool = self.group.elements
        else:
            pool = self.group.generators
        for a in pool:
            ma = self.matrix_of(a)
            for g in self.group.generators:
                assert self.matrix_of(g * a) == self.matrix_of(g) @ ma, (
                    "action is not a homomorphism at %r * %r" % (g, a)
                )
        return True


# -- constructors -------------------------------------------------------


def trivial_lattice(G: FiniteGroup, rank=1) -> GLattice:
    comps = [
        TagComponent("fixed", ["*%d" % i], Subgroup(G, G)) for i in range(rank)
    ]
    return GLattice(G, rank, tag=PermutationBasisTag(comps))


def permutation_lattice(G: FiniteGroup, H: Subgroup) -> GLattice:
    """Z[G/H] on the left cosets of H, with the coset basis tag."""
    assert H.parent is G or same_group(H.parent, G)
    if H.group.order == G.order:
        comp = TagComponent("fixed", ["H"], H)
        return GLattice(G, 1, tag=PermutationBasisTag([comp]))
    if (
        H.stabilized_letter is not None
        and H.order * G.degree == G.order
    ):
        # full point stabilizer of a transitive action: cosets gH
        # correspond to letters via g(letter)
        letters = tuple(range(1, G.degree + 1))
        comp = TagComponent(
            "letters",
            [str(x) for x in letters],
            H,
            letters=letters,
        )
        return GLattice(G, G.degree, tag=PermutationBasisTag([comp]))
    reps, coset_of = left_cosets(G, H.group)
    comp = TagComponent(
        "cosets",
        [r.cycle_string() for r in reps],
        H,
        reps=reps,
        coset_of=coset_of,
    )
    return GLattice(G, len(reps), tag=PermutationBasisTag([comp]))


def regular_lattice(G: FiniteGroup) -> GLattice:
    return permutation_lattice(G, Subgroup(G, FiniteGroup.trivial(G.degree)))


class AugmentationSequence:
    """The exact sequence 0 -> I -> Z[G/H] -> Z -> 0.

    ambient is Z[G/H]; epsilon the coordinate-sum row; kernel the
    sublattice I with basis e_i - e_N (i < N), carried as a GLattice
    with inclusion/retraction into the ambient.
    """

    def __init__(self, G, H):
        ambient = permutation_lattice(G, H)
        N = ambient.rank
        assert N >= 1
        self.group = G
        self.subgroup = H
        self.ambient = ambient
        self.epsilon = IntMatrix([[1] * N], 1, N)
        include = IntMatrix.identity(N - 1).vstack(
            IntMatrix([[-1] * (N - 1)], 1, N - 1)
        )
        retract = IntMatrix.identity(N - 1).hstack(IntMatrix.zeros(N - 1, 1))
        kernel = GLattice(
            G,
            N - 1,
            resolver=lambda g: retract @ ambient.matrix_of(g) @ include,
            sub_data=(ambient, include, retract),
        )
        self.kernel = kernel
        self.inclusion = include

    def check_exact(self):
        assert (self.epsilon @ self.inclusion).is_zero()
        assert kernel_basis(self.epsilon).cols == self.ambient.rank - 1
        s = smith_normal_form(self.inclusion)
        assert s.rank == self.ambient.rank - 1 and not s.torsion()
        return True


def augmentation_sequence(G: FiniteGroup, H: Subgroup) -> AugmentationSequence:
    return AugmentationSequence(G, H)


def norm_one_lattice(G: FiniteGroup, H: Subgroup) -> GLattice:
    """The dual of the augmentation kernel of (G, H).

    Realised as a quotient of Z[G/H]: the projection sends e_i to the
    i-th dual basis vector for i < N and e_N to minus their sum, which
    intertwines the actions; so J carries quot_data over the (self-
    dual) ambient permutation lattice.
    """
    aug = AugmentationSequence(G, H)
    ambient = aug.ambient
    N = ambient.rank
    kernel = aug.kernel
    project = IntMatrix.identity(N - 1).hstack(
        IntMatrix([[-1]] * (N - 1), N - 1, 1)
    )
    section = IntMatrix.identity(N - 1).vstack(IntMatrix.zeros(1, N - 1))
    J = GLattice(
        G,
        N - 1,
        resolver=lambda g: kernel.matrix_of(g.inverse()).transpose(),
        quot_data=(ambient, project, section),
    )
    J._dual_link = kernel
    kernel._dual_link = J
    J.augmentation = aug
    return J


def dual(M: GLattice) -> GLattice:
    """The lattice with the contragredient action (inverse transpose).

    Permutation lattices are canonically self-dual (permutation
    matrices are orthogonal), so they are returned unchanged.
    """
    if M._dual_link is not None:
        return M._dual_link
    if M.tag is not None:
        return M
    if M.restriction_of is not None:
        base, P = M.restriction_of
        D = restrict(dual(base), P)
    else:
        D = GLattice(
            M.group,
            M.rank,
            resolver=lambda g: M.matrix_of(g.inverse()).transpose(),
        )
    M._dual_link = D
    if D._dual_link is None:
        D._dual_link = M
    return D


def restrict(M: GLattice, P: Subgroup) -> GLattice:
    """M viewed as a lattice over the subgroup P."""
    assert same_group(P.parent, M.group) or P.parent is M.group
    sub_data = None
    quot_data = None
    if M.sub_data is not None:
        amb, inc, ret = M.sub_data
        sub_data = (restrict(amb, P), inc, ret)
    if M.quot_data is not None:
        amb, pr, se = M.quot_data
        quot_data = (restrict(amb, P), pr, se)
    return GLattice(
        P.group,
        M.rank,
        resolver=M.matrix_of,
        tag=M.tag.without_stabilizers() if M.tag is not None else None,
        sub_data=sub_data,
        quot_data=quot_data,
        restriction_of=(M, P),
    )


def direct_sum(parts) -> GLattice:
    parts = list(parts)
    assert parts
    G = parts[0].group
    for m in parts[1:]:
        assert same_group(m.group, G)
    rank = sum(m.rank for m in parts)
    tag = None
    if all(m.tag is not None for m in parts):
        tag = PermutationBasisTag(
            [c for m in parts for c in m.tag.components]
        )
    quot_data = None
    if tag is None and all(
        m.tag is not None or m.quot_data is not None for m in parts
    ):
        ambs, prs, ses = [], [], []
        for m in parts:
            if m.quot_data is not None:
                a, p, s = m.quot_data
            else:
                a, p, s = m, IntMatrix.identity(m.rank), IntMatrix.identity(m.rank)
            ambs.append(a)
            prs.append(p)
            ses.append(s)
        quot_data = (
            direct_sum(ambs),
            IntMatrix.block_diag(prs),
            IntMatrix.block_diag(ses),
        )

    def resolver(g, parts=parts):
        return IntMatrix.block_diag([m.matrix_of(g) for m in parts])

    return GLattice(G, rank, resolver=resolver, tag=tag, quot_data=quot_data)


def from_generator_matrices(G: FiniteGroup, mats, validate=True) -> GLattice:
    """Lattice from explicit generator matrices {generator: IntMatrix}.

    When the group is enumerable the homomorphism property is verified
    over every (generator, element) pair, which also certifies that the
    matrices are consistent with all relations.
    """
    rank = None
    for g in G.generators:
        assert g in mats, "missing matrix for generator %r" % (g,)
        m = mats[g]
        if rank is None:
            rank = m.rows
        assert m.rows == m.cols == rank
    if rank is None:
        rank = 0
    M = GLattice(G, rank, gen_matrices=dict(mats))
    if validate:
        for g in G.generators:
            if abs(mats[g].det()) != 1:
                raise VerificationError("generator matrix is not unimodular")
        if G.is_enumerable() and G.order <= 5000:
            try:
                M.check_action(limit=5000)
            except AssertionError as exc:
                raise VerificationError(str(exc))
    return M


# -- structure of permutation bases -------------------------------------


def element_index_maps(tag: PermutationBasisTag, H: FiniteGroup):
    """Index maps of every element of H on the tagged basis."""
    gen_maps = {g: tag.index_map(g) for g in H.generators}
    ident = tuple(range(tag.size))
    maps = {H.identity: ident}
    dag = H.word_dag()
    for x in H.elements:
        if x in maps:
            continue
        chain = []
        y = x
        while y not in maps:
            gen, parent = dag[y]
            chain.append((y, gen))
            y = parent
        cur = maps[y]
        for elem, gen in reversed(chain):
            gm = gen_maps[gen]
            cur = tuple(gm[i] for i in cur)
            maps[elem] = cur
    return maps


def orbit_decomposition(M: GLattice, P: Subgroup):
    """Decompose a tagged permutation lattice over P into coset blocks.

    Returns [(stabilizer, multiplicity)] with stabilizers subgroups of
    P compared by exact element equality, sorted deterministically.
    Multiplicities count orbits whose point stabilizers coincide.
    """
    assert M.tag is not None, "orbit decomposition needs a permutation basis"
    H = P.group
    maps = element_index_maps(M.tag, H)
    elems = H.elements
    n = M.rank
    assigned = [False] * n
    groups = {}
    first_seen = {}
    for b in range(n):
        if assigned[b]:
            continue
        stab_elems = []
        orbit = set()
        for x in elems:
            i = maps[x][b]
            orbit.add(i)
            if i == b:
                stab_elems.append(x)
        for i in orbit:
            assigned[i] = True
        key = frozenset(stab_elems)
        assert len(orbit) * len(stab_elems) == len(elems)
        groups[key] = groups.get(key, 0) + 1
        first_seen.setdefault(key, b)
    out = []
    for key, mult in groups.items():
        sub = Subgroup(H, FiniteGroup.from_elements(sorted(key), H.degree))
        out.append((sub, mult))
    out.sort(key=lambda t: (-t[0].order, t[0].element_key()))
    return out


def is_perm_isomorphic(M1: GLattice, M2: GLattice) -> bool:
    """Equality of coset-space multisets up to conjugacy in the group.

    Both lattices must carry tags with per-block stabilizers (true for
    freshly constructed permutation lattices and direct sums of them).
    """
    assert same_group(M1.group, M2.group)
    G = M1.group
    s1 = M1.tag.stabilizers() if M1.tag is not None else None
    s2 = M2.tag.stabilizers() if M2.tag is not None else None
    assert s1 is not None and s2 is not None, (
        "permutation comparison needs stabilizer-tagged bases"
    )
    if M1.rank != M2.rank:
        return False

    def keys(stabs):
        out = {}
        for s in stabs:
            k = _conjugacy_key(G, s.elements)
            out[k] = out.get(k, 0) + 1
        return out

    return keys(s1) == keys(s2)


# -- free restriction decomposition --------------------------------------


class FreeRestrictionDecomposition:
    """Witness that J is isomorphic to J_P + Z[P]^(t-1) over P.

    `change` is the unimodular matrix V with V J(g) = T(g) V for all g,
    where T is the target lattice (J_P block first).
    """

    def __init__(self, lattice, t, target, change, orbits):
        self.lattice = lattice
        self.t = t
        self.target = target
        self.change = change
        self.orbits = orbits

    def summands(self):
        return [("J_P", 1), ("Z[P]", self.t - 1)]


def free_restriction_decomposition(J: GLattice, t: int) -> FreeRestrictionDecomposition:
    """Exhibit J = J_P + Z[P]^(t-1) when the ambient is P-free of rank t|P|.

    J must be a norm one lattice (or its restriction) with quot_data
    over a tagged ambient.  The basis change is constructed from orbit
    representatives of the free ambient basis and verified: it must be
    unimodular and intertwine the two actions, else VerificationError.
    """
    assert J.quot_data is not None, "need the ambient quotient presentation"
    ambient, piJ, sigJ = J.quot_data
    assert ambient.tag is not None
    Pg = J.group
    elems = Pg.elements
    q = len(elems)
    N = ambient.rank
    if N != t * q or J.rank != N - 1:
        raise UnsupportedCaseError(
            "ambient rank %d is not t*|P| = %d*%d" % (N, t, q)
        )
    maps = element_index_maps(ambient.tag, Pg)
    assigned = [False] * N
    orbits = []
    for b in range(N):
        if assigned[b]:
            continue
        positions = [maps[x][b] for x in elems]
        if len(set(positions)) != q:
            raise UnsupportedCaseError("restriction to P is not free")
        for i in positions:
            assigned[i] = True
        orbits.append(positions)
    assert len(orbits) == t

    # ambient basis change W: blocks 0..t-2 copy the orbit bases, the
    # last block holds the across-orbit sums (which carry the all-ones
    # vector, the kernel of the J-projection)
    cols = []
    for j in range(t - 1):
        for i in range(q):
            v = [0] * N
            v[orbits[j][i]] = 1
            cols.append(v)
    for i in range(q):
        v = [0] * N
        for j in range(t):
            v[orbits[j][i]] += 1
        cols.append(v)
    W = IntMatrix.from_columns(cols, rows=N)
    try:
        Winv = inverse_unimodular(W)
    except ValueError:
        raise VerificationError("orbit basis change is not unimodular")

    triv = Subgroup(Pg, FiniteGroup.trivial(Pg.degree))
    JP = norm_one_lattice(Pg, triv)
    parts = [JP] + [permutation_lattice(Pg, triv) for _ in range(t - 1)]
    target = direct_sum(parts) if t > 1 else JP
    piJP = JP.quot_data[1]

    # rows of the map from W-coordinates to the target: J_P projection
    # of the last block first, then the identity on the other blocks
    top = IntMatrix.zeros(q - 1, (t - 1) * q).hstack(piJP)
    if t > 1:
        bottom = IntMatrix.identity((t - 1) * q).hstack(
            IntMatrix.zeros((t - 1) * q, q)
        )
        Bw = top.vstack(bottom)
    else:
        Bw = top
    B = Bw @ Winv
    V = B @ sigJ
    if abs(V.det()) != 1:
        raise VerificationError("decomposition change of basis not unimodular")
    for g in Pg.generators:
        if V @ J.matrix_of(g) != target.matrix_of(g) @ V:
            raise VerificationError(
                "decomposition does not intertwine the action of %r" % (g,)
            )
    return FreeRestrictionDecomposition(J, t, target, V, orbits)


# -- serialization -------------------------------------------------------


def lattice_to_json(M: GLattice) -> dict:
    doc = {
        "group": {
            "degree": M.group.degree,
            "generators": [g.cycle_string() for g in M.group.generators],
        },
        "rank": M.rank,
        "action": {
            g.cycle_string(): M.matrix_of(g).to_json() for g in M.group.generators
        },
    }
    if M.group.label:
        doc["group"]["label"] = M.group.label
    return doc


def lattice_from_json(doc: dict, validate=True) -> GLattice:
    gdoc = doc["group"]
    degree = int(gdoc["degree"])
    gens = [Permutation.parse(s, degree) for s in gdoc["generators"]]
    G = FiniteGroup.from_generators(gens, degree, label=gdoc.get("label"))
    rank = int(doc["rank"])
    mats = {}
    for s, rows in doc["action"].items():
        g = Permutation.parse(s, degree)
        m = IntMatrix.from_json(rows)
        assert m.rows == m.cols == rank, "action matrix shape mismatch"
        mats[g] = m
    return from_generator_matrices(G, mats, validate=validate)


__all__ = [
    "TagComponent",
    "PermutationBasisTag",
    "GLattice",
    "trivial_lattice",
    "permutation_lattice",
    "regular_lattice",
    "AugmentationSequence",
    "augmentation_sequence",
    "norm_one_lattice",
    "dual",
    "restrict",
    "direct_sum",
    "from_generator_matrices",
    "element_index_maps",
    "orbit_decomposition",
    "is_perm_isomorphic",
    "FreeRestrictionDecomposition",
    "free_restriction_decomposition",
    "lattice_to_json",
    "lattice_from_json",
]
