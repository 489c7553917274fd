"""Finite permutation groups on {1..n}.

Permutations are stored as 1-based image tuples and compose like
functions: (a * b)(x) = a(b(x)).  Groups are generator-based; element
enumeration is lazy and refused past ENUMERATION_LIMIT, so symmetric
and alternating groups of large degree remain usable through their
recognised structure (point stabilizers, Sylow subgroups, membership)
without ever listing elements.

All constructions here are deterministic: elements sort by image tuple,
breadth-first closures process generators in order, and subgroup
representatives are chosen lexicographically.
"""

from __future__ import annotations

from itertools import combinations, product
from math import factorial

from .errors import GroupTooLargeError, UnsupportedCaseError
from .numutil import factorial_valuation, gcd, is_prime, prime_valuation

ENUMERATION_LIMIT = 50_000
SUBGROUP_ENUM_LIMIT = 1_000


class Permutation:
    """A permutation of {1..degree}, stored as its tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        assert sorted(images) == list(range(1, len(images) + 1)), (
            "not a permutation of 1..%d: %r" % (len(images), images)
        )
        self.images = images

    @property
    def degree(self):
        return len(self.images)

    @staticmethod
    def identity(degree):
        return Permutation(range(1, degree + 1))

    @staticmethod
    def from_cycles(cycles, degree):
        images = list(range(1, degree + 1))
        seen = set()
        for cyc in cycles:
            cyc = [int(x) for x in cyc]
            for x in cyc:
                assert 1 <= x <= degree, "letter %d out of range 1..%d" % (x, degree)
                assert x not in seen, "cycles are not disjoint at %d" % x
                seen.add(x)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a - 1] = b
        return Permutation(images)

    @staticmethod
    def parse(text, degree):
        """Parse cycle notation like "(1 2 3)(4 5)"; "()" is the identity."""
        text = text.strip()
        cycles = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch != "(":
                raise ValueError("bad cycle string %r" % text)
            j = text.index(")", i)
            body = text[i + 1 : j].replace(",", " ").split()
            if body:
                cycles.append([int(x) for x in body])
            i = j + 1
        return Permutation.from_cycles(cycles, degree)

    def __call__(self, letter):
        return self.images[letter - 1]

    def __mul__(self, other):
        # function composition: apply other first
        oi = other.images
        si = self.images
        return Permutation(tuple(si[oi[i] - 1] for i in range(len(si))))

    def inverse(self):
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x - 1] = i + 1
        return Permutation(inv)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def is_identity(self):
        return all(x == i + 1 for i, x in enumerate(self.images))

    def cycles(self):
        """Nontrivial cycles, each rotated to start at its minimum."""
        out = []
        seen = set()
        for start in range(1, len(self.images) + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self):
        n = 1
        for cyc in self.cycles():
            n = n * len(cyc) // gcd(n, len(cyc))
        return n

    def is_even(self):
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def cycle_string(self):
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycs)

    def __repr__(self):
        return "Permutation(%s)" % self.cycle_string()

    def to_json(self):
        return list(self.images)

    @staticmethod
    def from_json(obj):
        return Permutation(obj)


def mulclose(gens, degree, cap=ENUMERATION_LIMIT):
    """Breadth-first closure of the generators under composition.

    Returns (sorted element tuple, word) where word maps each element e
    to (g, parent) with e == g * parent (None for the identity), or
    None if the closure exceeds cap elements.
    """
    ident = Permutation.identity(degree)
    seen = {ident}
    word = {ident: None}
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = g * x
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        return None
                    word[y] = (g, x)
                    new.append(y)
        frontier = new
    return tuple(sorted(seen)), word


def minimal_generators(elements):
    """A small deterministic generating set for a listed subgroup."""
    elements = sorted(elements)
    if len(elements) <= 1:
        return ()
    degree = elements[0].degree
    target = set(elements)
    gens = []
    closure = {Permutation.identity(degree)}
    for x in elements:
        if x in closure:
            continue
        gens.append(x)
        closure = set(mulclose(gens, degree, cap=len(elements))[0])
        if len(closure) == len(target):
            break
    assert closure == target, "input is not closed under composition"
    return tuple(gens)


class FiniteGroup:
    """A permutation group given by generators, enumerated lazily."""

    def __init__(self, generators, degree, label=None, known_order=None, sym_tag=None):
        gens = []
        for g in generators:
            assert g.degree == degree
            if not g.is_identity() and g not in gens:
                gens.append(g)
        self.generators = tuple(gens)
        self.degree = degree
        self.label = label
        # sym_tag = ("S"|"A", m): acts as the full symmetric/alternating
        # group on letters 1..m and fixes all letters beyond m
        self.sym_tag = sym_tag
        self._known_order = known_order
        self._elements = None
        self._word = None
        self._elt_set = None
        self._caches = {}

    @staticmethod
    def from_generators(generators, degree, label=None, known_order=None, sym_tag=None):
        return FiniteGroup(generators, degree, label, known_order, sym_tag)

    @staticmethod
    def from_elements(elements, degree, label=None):
        g = FiniteGroup(minimal_generators(elements), degree, label=label)
        g._elements = tuple(sorted(elements))
        g._known_order = len(g._elements)
        return g

    @staticmethod
    def trivial(degree):
        g = FiniteGroup((), degree, known_order=1)
        g._elements = (Permutation.identity(degree),)
        return g

    def __repr__(self):
        if self.label:
            return "FiniteGroup(%s, degree=%d)" % (self.label, self.degree)
        return "FiniteGroup(<%s>, degree=%d)" % (
            ", ".join(g.cycle_string() for g in self.generators) or "1",
            self.degree,
        )

    @property
    def identity(self):
        return Permutation.identity(self.degree)

    @property
    def order(self):
        if self._known_order is not None:
            return self._known_order
        return len(self.elements)

    @property
    def elements(self):
        if self._elements is None:
            if self._known_order is not None and self._known_order > ENUMERATION_LIMIT:
                raise GroupTooLargeError(
                    "refusing to enumerate %r of order %d (limit %d)"
                    % (self, self._known_order, ENUMERATION_LIMIT)
                )
            res = mulclose(self.generators, self.degree)
            if res is None:
                raise GroupTooLargeError(
                    "closure of %r exceeds the enumeration limit %d"
                    % (self, ENUMERATION_LIMIT)
                )
            self._elements, self._word = res
            if self._known_order is not None:
                assert len(self._elements) == self._known_order
            else:
                self._known_order = len(self._elements)
        return self._elements

    @property
    def element_set(self):
        if self._elt_set is None:
            self._elt_set = frozenset(self.elements)
        return self._elt_set

    def word_dag(self):
        """Element -> (generator, parent) derivation from the closure."""
        if self._word is None:
            self.elements
            if self._word is None:
                # elements were injected by from_elements; rebuild words
                self._word = mulclose(self.generators, self.degree)[1]
        return self._word

    def is_enumerable(self):
        return self._known_order is None or self._known_order <= ENUMERATION_LIMIT

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            return False
        if self.sym_tag is not None:
            fam, m = self.sym_tag
            if any(p(x) != x for x in range(m + 1, self.degree + 1)):
                return False
            return p.is_even() if fam == "A" else True
        return p in self.element_set

    def is_abelian(self):
        return all(
            a * b == b * a for a, b in combinations(self.generators, 2)
        )


def same_group(a: FiniteGroup, b: FiniteGroup) -> bool:
    return a is b or (a.degree == b.degree and a.generators == b.generators)


class Subgroup:
    """A subgroup H of a fixed parent group."""

    def __init__(self, parent, group, stabilized_letter=None, designated_generators=None):
        assert parent.degree == group.degree
        self.parent = parent
        self.group = group
        self.stabilized_letter = stabilized_letter
        self.designated_generators = designated_generators

    @property
    def order(self):
        return self.group.order

    @property
    def index(self):
        q, r = divmod(self.parent.order, self.group.order)
        assert r == 0, "subgroup order does not divide the group order"
        return q

    @property
    def elements(self):
        return self.group.elements

    def contains(self, p):
        return self.group.contains(p)

    def __repr__(self):
        return "Subgroup(%r in %r)" % (self.group, self.parent)

    def element_key(self):
        """Deterministic identity key: the sorted element image tuples."""
        return tuple(p.images for p in self.elements)


# -- standard groups -------------------------------------------------


def make_symmetric(n: int) -> FiniteGroup:
    """The symmetric group S_n acting on 1..n."""
    assert n >= 1
    gens = []
    if n >= 2:
        gens.append(Permutation.from_cycles([[1, 2]], n))
    if n >= 3:
        gens.append(Permutation.from_cycles([list(range(1, n + 1))], n))
    return FiniteGroup(
        gens, n, label="S%d" % n, known_order=factorial(n), sym_tag=("S", n)
    )


def make_alternating(n: int) -> FiniteGroup:
    """The alternating group A_n acting on 1..n (trivial for n <= 2)."""
    assert n >= 1
    if n <= 2:
        gens = []
    elif n == 3:
        gens = [Permutation.from_cycles([[1, 2, 3]], n)]
    elif n % 2 == 1:
        gens = [
            Permutation.from_cycles([[1, 2, 3]], n),
            Permutation.from_cycles([list(range(1, n + 1))], n),
        ]
    else:
        gens = [
            Permutation.from_cycles([[1, 2, 3]], n),
            Permutation.from_cycles([list(range(2, n + 1))], n),
        ]
    order = 1 if n <= 2 else factorial(n) // 2
    return FiniteGroup(
        gens, n, label="A%d" % n, known_order=order, sym_tag=("A", n)
    )


def _embedded_standard(family: str, m: int, degree: int) -> FiniteGroup:
    """S_m or A_m on letters 1..m, embedded in degree-`degree` perms."""
    assert 0 <= m <= degree
    if family == "S":
        gens = []
        if m >= 2:
            gens.append(Permutation.from_cycles([[1, 2]], degree))
        if m >= 3:
            gens.append(Permutation.from_cycles([list(range(1, m + 1))], degree))
        order = factorial(m) if m >= 1 else 1
    else:
        if m <= 2:
            gens = []
        elif m == 3:
            gens = [Permutation.from_cycles([[1, 2, 3]], degree)]
        elif m % 2 == 1:
            gens = [
                Permutation.from_cycles([[1, 2, 3]], degree),
                Permutation.from_cycles([list(range(1, m + 1))], degree),
            ]
        else:
            gens = [
                Permutation.from_cycles([[1, 2, 3]], degree),
                Permutation.from_cycles([list(range(2, m + 1))], degree),
            ]
        order = 1 if m <= 2 else factorial(m) // 2
    return FiniteGroup(
        gens,
        degree,
        label="%s%d" % (family, m),
        known_order=order,
        sym_tag=(family, m),
    )


def point_stabilizer(G: FiniteGroup, letter: int) -> Subgroup:
    """The stabilizer of a letter, as a subgroup of G."""
    assert 1 <= letter <= G.degree
    if G.sym_tag is not None:
        fam, m = G.sym_tag
        if letter == m:
            sub = _embedded_standard(fam, m - 1, G.degree)
            return Subgroup(G, sub, stabilized_letter=letter)
        if letter > m:
            return Subgroup(G, G, stabilized_letter=letter)
        if not G.is_enumerable():
            raise GroupTooLargeError(
                "stabilizer of a non-final letter needs element enumeration"
            )
    fixed = [p for p in G.elements if p(letter) == letter]
    sub = FiniteGroup.from_elements(fixed, G.degree)
    return Subgroup(G, sub, stabilized_letter=letter)


# -- Sylow subgroups -------------------------------------------------


def _wreath_sylow_generators(p: int, n: int):
    """Generators of a Sylow p-subgroup of S_n on 1..n.

    The group is a direct product over the base-p digits of n of
    iterated wreath products: each block of p^k consecutive letters
    carries Sylow_p(S_{p^k}) generated by the generators for p^(k-1)
    on its first sub-block plus the shift by p^(k-1) within the block.
    """
    gens = []
    offset = 0
    remaining = n
    pk = 1
    while pk * p <= n:
        pk *= p
    while remaining > 0 and pk >= 1:
        count, remaining = divmod(remaining, pk)
        for _ in range(count):
            size = pk
            while size > 1:
                sub = size // p
                # shift by `sub` modulo `size` inside this block
                images = list(range(1, n + 1))
                for i in range(size):
                    images[offset + i] = offset + (i + sub) % size + 1
                gens.append(Permutation(images))
                size = sub
            offset += pk
        pk //= p
    # deterministic order: by block position, then coarser shifts first
    return gens


def sylow_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    """A Sylow p-subgroup of G.

    Recognised symmetric/alternating groups use the explicit wreath
    product construction (no enumeration of G needed).  Other
    enumerable groups use a deterministic greedy extension by p-power
    elements in lexicographic order.
    """
    if not is_prime(p):
        raise ValueError("p must be prime, got %r" % (p,))
    key = ("sylow", p)
    if key in G._caches:
        return G._caches[key]

    if G.sym_tag is not None:
        fam, m = G.sym_tag
        v = factorial_valuation(m, p)
        if fam == "A" and p == 2:
            v = max(v - 1, 0)
        if v == 0:
            sub = FiniteGroup.trivial(G.degree)
        else:
            wreath = _wreath_sylow_generators(p, m)
            wreath = [
                Permutation(g.images + tuple(range(m + 1, G.degree + 1)))
                if g.degree != G.degree
                else g
                for g in wreath
            ]
            if fam == "A" and p == 2:
                # even-permutation kernel of the full wreath Sylow,
                # generated by its Schreier generators for the
                # transversal {1, t} with t a fixed odd generator
                odd = [g for g in wreath if not g.is_even()]
                assert odd, "index-2 even kernel needs an odd generator"
                t = odd[0]
                tinv = t.inverse()
                hgens = []
                for g in wreath:
                    if g.is_even():
                        hgens.extend([g, t * g * tinv])
                    else:
                        hgens.extend([g * tinv, t * g])
                sub = FiniteGroup.from_generators(
                    hgens, G.degree, known_order=p**v
                )
            else:
                sub = FiniteGroup.from_generators(
                    wreath, G.degree, known_order=p**v
                )
        result = Subgroup(G, sub)
    else:
        result = _sylow_greedy(G, p)
    G._caches[key] = result
    return result


def _sylow_greedy(G: FiniteGroup, p: int) -> Subgroup:
    order = G.order
    v = prime_valuation(order, p) if order % p == 0 else 0
    target = p**v
    if target == 1:
        return Subgroup(G, FiniteGroup.trivial(G.degree))
    elements = G.elements
    gens = []
    current = {G.identity}
    while len(current) < target:
        for x in elements:
            if x in current:
                continue
            o = x.order()
            # p-power order test
            while o % p == 0:
                o //= p
            if o != 1:
                continue
            res = mulclose(gens + [x], G.degree, cap=target)
            if res is None:
                continue
            size = len(res[0])
            # closures of p-power size dividing the target are p-groups
            if target % size == 0 and size > len(current):
                gens.append(x)
                current = set(res[0])
                break
        else:
            raise AssertionError("greedy Sylow extension got stuck")
    sub = FiniteGroup.from_elements(sorted(current), G.degree)
    return Subgroup(G, sub)


def is_cyclic(group_or_sub) -> bool:
    g = group_or_sub.group if isinstance(group_or_sub, Subgroup) else group_or_sub
    n = g.order
    if n == 1:
        return True
    return any(x.order() == n for x in g.elements)


def is_hall(G: FiniteGroup, sub: Subgroup) -> bool:
    """Is |H| coprime to [G:H]?"""
    return gcd(sub.order, sub.index) == 1


# -- cosets ----------------------------------------------------------


def left_cosets(G: FiniteGroup, H: FiniteGroup):
    """Left cosets gH in lexicographic rep order: (reps, coset_of).

    reps[i] is the lex-least element of coset i; coset_of maps every
    element of G to its coset index.
    """
    key = ("cosets", tuple(p.images for p in H.generators), H.order)
    if key in G._caches:
        return G._caches[key]
    h_elems = H.elements
    reps = []
    coset_of = {}
    for x in G.elements:
        if x in coset_of:
            continue
        idx = len(reps)
        reps.append(x)
        for h in h_elems:
            coset_of[x * h] = idx
    assert len(coset_of) == G.order
    result = (tuple(reps), coset_of)
    G._caches[key] = result
    return result


# -- subgroup enumeration up to conjugacy ------------------------------


def _elementary_abelian_data(G: FiniteGroup):
    """(p, basis) if G is elementary abelian of prime exponent, else None."""
    if not G.generators:
        return None
    orders = {g.order() for g in G.generators}
    if len(orders) != 1:
        return None
    p = orders.pop()
    if not is_prime(p) or not G.is_abelian():
        return None
    basis = []
    span = {G.identity}
    for g in G.generators:
        if g not in span:
            basis.append(g)
            span = set(mulclose(basis, G.degree)[0])
    if len(span) != p ** len(basis) or len(span) != G.order:
        return None
    return p, basis


def _all_subspace_subgroups(G: FiniteGroup, p: int, basis):
    """Every subgroup of an elementary abelian group, via F_p subspaces.

    Subspaces are enumerated through their reduced row echelon forms,
    so each subgroup appears exactly once, in a deterministic order.
    """
    d = len(basis)
    # element of F_p^d -> permutation
    def to_perm(vec):
        x = G.identity
        for g, e in zip(basis, vec):
            for _ in range(e):
                x = g * x
        return x

    subgroups = []
    for k in range(d + 1):
        for pivots in combinations(range(d), k):
            free_slots = [
                (i, j)
                for i in range(k)
                for j in range(pivots[i] + 1, d)
                if j not in pivots
            ]
            for assignment in product(range(p), repeat=len(free_slots)):
                rows = [[0] * d for _ in range(k)]
                for i in range(k):
                    rows[i][pivots[i]] = 1
                for (i, j), val in zip(free_slots, assignment):
                    rows[i][j] = val
                elems = set()
                for coeffs in product(range(p), repeat=k):
                    vec = [0] * d
                    for c, row in zip(coeffs, rows):
                        for j in range(d):
                            vec[j] = (vec[j] + c * row[j]) % p
                    elems.add(to_perm(vec))
                assert len(elems) == p**k
                subgroups.append(frozenset(elems))
    return subgroups


def subgroups_up_to_conjugacy(G: FiniteGroup, cutoff=SUBGROUP_ENUM_LIMIT):
    """One representative per conjugacy class of subgroups of G.

    Sorted by descending order, then by element key.  Refused for
    groups larger than the cutoff.
    """
    key = ("subreps", cutoff)
    if key in G._caches:
        return G._caches[key]
    if G.order > cutoff:
        raise GroupTooLargeError(
            "subgroup enumeration refused for order %d > %d" % (G.order, cutoff)
        )

    ea = _elementary_abelian_data(G)
    if ea is not None:
        all_subs = _all_subspace_subgroups(G, *ea)
        class_reps = {frozenset(s): s for s in all_subs}.values()
    else:
        all_subs = _all_subgroups_generic(G)
        seen = {}
        for s in all_subs:
            ckey = _conjugacy_key(G, s)
            if ckey not in seen or sorted(p.images for p in s) < sorted(
                p.images for p in seen[ckey]
            ):
                seen[ckey] = s
        class_reps = seen.values()

    reps = [
        Subgroup(G, FiniteGroup.from_elements(sorted(s), G.degree))
        for s in class_reps
    ]
    reps.sort(key=lambda s: (-s.order, s.element_key()))
    G._caches[key] = reps
    return reps


def _all_subgroups_generic(G: FiniteGroup):
    elements = G.elements
    cyclic = {}
    for x in elements:
        sub = frozenset(mulclose([x], G.degree)[0])
        if sub not in cyclic:
            cyclic[sub] = x
        elif x < cyclic[sub]:
            cyclic[sub] = x
    cyclic_gens = sorted(cyclic.values())

    trivial = frozenset([G.identity])
    known = {trivial: ()}
    frontier = [(trivial, ())]
    while frontier:
        new = []
        for sub, gens in frontier:
            for c in cyclic_gens:
                if c in sub:
                    continue
                cand_gens = gens + (c,)
                res = mulclose(list(cand_gens), G.degree, cap=G.order)
                assert res is not None
                closed = frozenset(res[0])
                if closed not in known:
                    known[closed] = cand_gens
                    new.append((closed, cand_gens))
        frontier = new
    return list(known)


def _conjugacy_key(G: FiniteGroup, sub_elems):
    best = None
    for g in G.elements:
        ginv = g.inverse()
        conj = tuple(sorted((g * h * ginv).images for h in sub_elems))
        if best is None or conj < best:
            best = conj
    return best


def quotient_group(G: FiniteGroup, H: Subgroup) -> FiniteGroup:
    """G/H as a permutation group on the cosets (H must be normal)."""
    assert is_normal(G, H), "quotient by a non-normal subgroup"
    reps, coset_of = left_cosets(G, H.group)
    n = len(reps)
    gens = []
    for g in G.generators:
        gens.append(Permutation(tuple(coset_of[g * reps[i]] + 1 for i in range(n))))
    return FiniteGroup.from_generators(gens, max(n, 1), known_order=n)


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    # contains() has a non-enumerating fast path for tagged subgroups
    for g in G.generators:
        ginv = g.inverse()
        for h in H.group.generators:
            if not H.group.contains(g * h * ginv):
                return False
    return True


# -- the decomposition witness subgroups --------------------------------


def witness_p_subgroup(family: str, n: int, p: int) -> Subgroup:
    """The designated p-subgroup P used by the decomposition certificates.

    family "S" or "A".  The generator lists depend on the arithmetic of
    (n, p) and each branch checks its hypotheses:

      * p odd, p | n, n composite: rho_i the i-th consecutive p-cycle,
        P elementary abelian of rank n/p (both families);
      * p = 2, family S, n even >= 6: rho_i = (2i-1 2i), rank n/2;
      * p = 2, family A, 4 | n: the two commuting fixed point free
        involutions built from consecutive blocks of four letters
        (Klein four group);
      * p = 2, family A, n = 2 mod 4, n >= 6: rho_1 = (1 2)(3 4),
        rho_2 = (1 2)(5 6)...(n-1 n) (Klein four group).

    The returned Subgroup carries designated_generators.
    """
    assert family in ("S", "A")
    if not is_prime(p):
        raise ValueError("p must be prime, got %r" % (p,))
    parent = make_symmetric(n) if family == "S" else make_alternating(n)

    if p % 2 == 1:
        if n % p != 0 or is_prime(n):
            raise UnsupportedCaseError(
                "odd-prime witness needs p | n with n composite; got n=%d p=%d"
                % (n, p)
            )
        m = n // p
        rhos = [
            Permutation.from_cycles([list(range(i * p + 1, i * p + p + 1))], n)
            for i in range(m)
        ]
    elif family == "S":
        if n < 6 or n % 2 != 0:
            raise UnsupportedCaseError(
                "even symmetric witness needs even n >= 6; got n=%d" % n
            )
        rhos = [
            Permutation.from_cycles([[2 * i + 1, 2 * i + 2]], n)
            for i in range(n // 2)
        ]
    elif n % 4 == 0:
        rho1 = Permutation.from_cycles(
            [[2 * i + 1, 2 * i + 2] for i in range(n // 2)], n
        )
        rho2 = Permutation.from_cycles(
            [c for k in range(n // 4) for c in ([4 * k + 1, 4 * k + 3], [4 * k + 2, 4 * k + 4])],
            n,
        )
        rhos = [rho1, rho2]
    else:
        if n < 6 or n % 2 != 0:
            raise UnsupportedCaseError(
                "even alternating witness needs even n >= 6; got n=%d" % n
            )
        rho1 = Permutation.from_cycles([[1, 2], [3, 4]], n)
        rho2 = Permutation.from_cycles(
            [[1, 2]] + [[2 * i + 1, 2 * i + 2] for i in range(2, n // 2)], n
        )
        rhos = [rho1, rho2]

    if family == "A":
        assert all(r.is_even() for r in rhos), "witness generators must be even"
    res = mulclose(rhos, n)
    assert res is not None
    group = FiniteGroup.from_elements(res[0], n)
    # the witnesses are elementary abelian by construction
    assert all(x.order() == p for x in group.elements if not x.is_identity())
    assert group.is_abelian()
    return Subgroup(parent, group, designated_generators=tuple(rhos))


__all__ = [
    "ENUMERATION_LIMIT",
    "SUBGROUP_ENUM_LIMIT",
    "Permutation",
    "FiniteGroup",
    "Subgroup",
    "mulclose",
    "minimal_generators",
    "same_group",
    "make_symmetric",
    "make_alternating",
    "point_stabilizer",
    "sylow_subgroup",
    "is_cyclic",
    "is_hall",
    "left_cosets",
    "subgroups_up_to_conjugacy",
    "quotient_group",
    "is_normal",
    "witness_p_subgroup",
]
