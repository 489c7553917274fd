"""The p-invertibility decision engine for norm one lattices.

decide_p_invertibility(G, H, p) decides whether the flasque class
rho_G(J_{G/H}) is p-invertible, consulting rules in a fixed order:

  1. coprime-index   - p does not divide [G:H]          -> PInvertible
  2. cyclic-sylow    - a Sylow p-subgroup of G is cyclic -> PInvertible
  3. hall-necessity  - p | [G:H], H Hall, Sylow noncyclic -> NotPInvertible
  4. family certificates for (S_n, S_{n-1}) and (A_n, A_{n-1})

Negative verdicts carry a Certificate: a designated p-subgroup P, the
orbit decomposition of Z[G/H] restricted to P, and the criterion tag
identifying which decomposition shape rules out invertibility.  Every
certificate recomputes its decomposition and hypotheses at
construction time; a mismatch raises VerificationError rather than
producing an unverified verdict.

The criteria behind the tags are encoded only in the exact instance
shapes used here (cyclic / free / distinct hyperplane stabilizers /
three Klein lines), each gated by recomputed hypotheses; any other
shape yields Unknown rather than a guessed verdict.
"""

from __future__ import annotations

from .errors import UnsupportedCaseError, VerificationError
from .intmat import IntMatrix, solvable_at_p
from .lattice import (
    GLattice,
    free_restriction_decomposition,
    norm_one_lattice,
    orbit_decomposition,
    permutation_lattice,
    restrict,
)
from .numutil import is_prime, prime_valuation
from .perms import (
    FiniteGroup,
    Permutation,
    Subgroup,
    is_cyclic,
    is_hall,
    make_alternating,
    make_symmetric,
    point_stabilizer,
    sylow_subgroup,
    witness_p_subgroup,
)

PINVERTIBLE = "PInvertible"
NOT_PINVERTIBLE = "NotPInvertible"
UNKNOWN = "Unknown"

ODD_P_HYPERPLANES = "ODD_P_HYPERPLANES"
EVEN_S_HYPERPLANES = "EVEN_S_HYPERPLANES"
KLEIN_FREE_JP = "KLEIN_FREE_JP"
KLEIN_THREE_LINES = "KLEIN_THREE_LINES"
ENDO11_THM43 = "ENDO11_THM43"

CRITERION_TAGS = (
    ODD_P_HYPERPLANES,
    EVEN_S_HYPERPLANES,
    KLEIN_FREE_JP,
    KLEIN_THREE_LINES,
    ENDO11_THM43,
)


def _subgroup_json(sub: Subgroup):
    gens = sub.designated_generators or sub.group.generators
    return {
        "order": sub.order,
        "generators": [g.cycle_string() for g in gens],
    }


class RuleApplication:
    """One consulted rule: its id, the result label it cites, and data."""

    def __init__(self, name, ref, witness, verdict=None, certificate=None):
        self.name = name
        self.ref = ref
        self.witness = witness
        self.verdict = verdict
        self.certificate = certificate

    def to_json(self):
        doc = {"name": self.name, "ref": self.ref, "witness": dict(self.witness)}
        if self.verdict is not None:
            doc["verdict"] = self.verdict
        if self.certificate is not None:
            doc["witness"]["certificate"] = self.certificate.to_json()
        return doc


class Decision:
    """Verdict plus the full consultation trace, in rule order."""

    def __init__(self, verdict, rules, require_certificate=True):
        self.verdict = verdict
        self.rules = list(rules)
        if verdict == NOT_PINVERTIBLE and require_certificate:
            assert self.certificate is not None, (
                "negative verdicts must carry a certificate"
            )
        if verdict == PINVERTIBLE:
            assert any(r.verdict == PINVERTIBLE for r in self.rules)

    @property
    def certificate(self):
        for r in self.rules:
            if r.certificate is not None:
                return r.certificate
        return None

    @property
    def deciding_rule(self):
        for r in self.rules:
            if r.verdict is not None:
                return r
        return None

    def to_json(self):
        return {
            "verdict": self.verdict,
            "rules": [r.to_json() for r in self.rules],
        }


class Certificate:
    """Non-invertibility witness: subgroup, decomposition, criterion.

    decomposition entries are (Subgroup of P's group, multiplicity).
    validate() recomputes the orbit decomposition of the restricted
    coset lattice and re-checks the criterion hypotheses.
    """

    def __init__(self, group, subgroup, p, witness, decomposition, criterion,
                 extras=None):
        assert criterion in CRITERION_TAGS
        self.group = group
        self.subgroup = subgroup
        self.p = p
        self.witness = witness
        self.decomposition = list(decomposition)
        self.criterion = criterion
        self.extras = dict(extras or {})
        self.validate()

    def _decomposition_key(self, dec):
        return sorted((s.element_key(), m) for s, m in dec)

    def validate(self):
        ambient = permutation_lattice(self.group, self.subgroup)
        computed = orbit_decomposition(ambient, self.witness)
        if self._decomposition_key(computed) != self._decomposition_key(
            self.decomposition
        ):
            raise VerificationError(
                "stored decomposition does not match the recomputed one"
            )
        verdict, tag = p_group_shape_verdict(
            self.witness, computed, self.p,
            expect_free_rank=self.extras.get("free_rank"),
        )
        if verdict != NOT_PINVERTIBLE or tag != self.criterion:
            raise VerificationError(
                "criterion %s not confirmed by the decomposition shape"
                % self.criterion
            )
        if self.criterion == ENDO11_THM43 and not (
            self.group.degree == 4 and self.p == 2
        ):
            raise VerificationError("the n=4 tag applies only at n=4, p=2")
        return True

    def to_json(self):
        return {
            "criterion": self.criterion,
            "p": self.p,
            "witness_subgroup": _subgroup_json(self.witness),
            "decomposition": [
                {
                    "stabilizer": [g.cycle_string() for g in s.group.generators],
                    "order": s.order,
                    "multiplicity": m,
                }
                for s, m in self.decomposition
            ],
            **self.extras,
        }


def _is_elementary_abelian(Pg: FiniteGroup, p: int) -> bool:
    return Pg.is_abelian() and all(
        x.order() == p for x in Pg.elements if not x.is_identity()
    )


def p_group_shape_verdict(P: Subgroup, decomposition, p, expect_free_rank=None):
    """Classify invertibility of rho_P(J) from the coset decomposition.

    Returns (verdict, tag).  Only the decomposition shapes with known
    criteria are decided:

      * P cyclic: invertible (every flasque lattice is);
      * free restriction (all stabilizers trivial), P noncyclic: not
        invertible, since J then splits off J_P;
      * m >= 2 distinct hyperplane stabilizers in an elementary
        abelian P of rank m: not invertible for odd p, and for p = 2
        when m >= 3 (m = 2 with p = 2 is undecided here; n = 4 routes
        through the free-orbit Klein shape instead);
      * the three order-2 lines of a Klein four group with
        multiplicities (k, 1, 1): not invertible.

    Anything else returns Unknown.
    """
    Pg = P.group
    q = Pg.order
    if is_cyclic(Pg):
        return PINVERTIBLE, None
    stabs = [(s, m) for s, m in decomposition]
    total = sum(m * (q // s.order) for s, m in stabs)
    if all(s.order == 1 for s, _ in stabs):
        if expect_free_rank is not None and expect_free_rank != total // q:
            return UNKNOWN, None
        return NOT_PINVERTIBLE, (
            ENDO11_THM43 if total == q == 4 and P.parent.sym_tag
            and P.parent.sym_tag[0] == "S" else KLEIN_FREE_JP
        )
    if not _is_elementary_abelian(Pg, p):
        return UNKNOWN, None
    rank = prime_valuation(q, p)
    keys = [frozenset(s.group.elements) for s, _ in stabs]
    distinct = len(set(keys)) == len(keys)
    if (
        distinct
        and len(stabs) == rank
        and all(m == 1 for _, m in stabs)
        and all(s.order == q // p for s, _ in stabs)
    ):
        if p % 2 == 1 and rank >= 2:
            return NOT_PINVERTIBLE, ODD_P_HYPERPLANES
        if p == 2 and rank >= 3:
            return NOT_PINVERTIBLE, EVEN_S_HYPERPLANES
        return UNKNOWN, None
    if p == 2 and q == 4 and len(stabs) == 3 and distinct:
        orders = sorted(s.order for s, _ in stabs)
        mults = sorted(m for _, m in stabs)
        if orders == [2, 2, 2] and mults[:2] == [1, 1]:
            return NOT_PINVERTIBLE, KLEIN_THREE_LINES
    return UNKNOWN, None


# -- individual rules ----------------------------------------------------


def reduce_to_sylow(G: FiniteGroup, M: GLattice, p: int):
    """Restrict M to a Sylow p-subgroup of G.

    p-invertibility over G is equivalent to invertibility of the
    restricted class over the Sylow subgroup, so downstream rules may
    operate on the restriction.
    """
    assert is_prime(p)
    P = sylow_subgroup(G, p)
    return P, restrict(M, P)


def _consult_coprime(G, H, p):
    index = H.index
    witness = {"index": index, "p": p}
    if index % p != 0:
        return RuleApplication(
            "coprime-index", "coprime", witness, verdict=PINVERTIBLE
        )
    witness["note"] = "p divides the index; rule does not apply"
    return RuleApplication("coprime-index", "coprime", witness)


def rule_coprime_index(G: FiniteGroup, H: Subgroup, p: int):
    app = _consult_coprime(G, H, p)
    return Decision(app.verdict, [app]) if app.verdict else None


def _consult_cyclic_sylow(G, p):
    P = sylow_subgroup(G, p)
    witness = {"sylow_order": P.order, "p": p}
    if is_cyclic(P):
        witness["cyclic"] = True
        return RuleApplication(
            "cyclic-sylow", "coprime", witness, verdict=PINVERTIBLE
        )
    witness["cyclic"] = False
    return RuleApplication("cyclic-sylow", "coprime", witness)


def rule_cyclic_sylow(G: FiniteGroup, p: int):
    app = _consult_cyclic_sylow(G, p)
    return Decision(app.verdict, [app]) if app.verdict else None


def _consult_hall(G, H, p):
    index = H.index
    witness = {"index": index, "p": p, "hall": is_hall(G, H)}
    if index % p != 0 or not witness["hall"]:
        witness["note"] = "rule needs p | index and H Hall"
        return RuleApplication("hall-necessity", "hall-necessity", witness)
    P = sylow_subgroup(G, p)
    if is_cyclic(P):
        witness["note"] = "Sylow subgroup is cyclic; no negative conclusion"
        return RuleApplication("hall-necessity", "hall-necessity", witness)
    # |H| is prime to p, so a Sylow p-subgroup of G meets every coset
    # stabilizer trivially and Z[G/H] restricts freely
    t = index // P.order
    ambient = permutation_lattice(G, H)
    dec = orbit_decomposition(ambient, P)
    J = restrict(norm_one_lattice(G, H), P)
    free = free_restriction_decomposition(J, t)
    extras = {
        "free_rank": t,
        "summands": free.summands(),
        "noncyclic_sylow_order": P.order,
        "reduction": ["lemma22"],
    }
    fam = _recognize_family_pair(G, H)
    if fam is not None and fam[0] == "A" and fam[1] % 4 == 0 and p == 2:
        # the Hall witness instantiates the free-Klein criterion
        extras["rule"] = "evenA1"
    cert = Certificate(G, H, p, P, dec, KLEIN_FREE_JP, extras=extras)
    witness["free_rank"] = t
    return RuleApplication(
        "hall-necessity", "hall-necessity", witness,
        verdict=NOT_PINVERTIBLE, certificate=cert,
    )


def rule_hall_necessity(G: FiniteGroup, H: Subgroup, p: int):
    app = _consult_hall(G, H, p)
    return Decision(app.verdict, [app]) if app.verdict else None


def verify_splitting_prime_to_p(G: FiniteGroup, H: Subgroup, p: int):
    """Proof artifact that the augmentation sequence splits at p.

    For p coprime to [G:H] the canonical rational section sends 1 to
    (1/[G:H]) times the sum of all cosets; it is fixed by all of G and
    p-integral.  The artifact certifies, via elementary divisor
    valuations, that some Sylow-fixed vector hits 1 under the
    augmentation over Z localized at p.
    """
    assert is_prime(p)
    index = H.index
    if index % p == 0:
        raise UnsupportedCaseError(
            "splitting criterion needs p coprime to the index; p=%d index=%d"
            % (p, index)
        )
    PH = sylow_subgroup(H.group, p)
    P = Subgroup(G, PH.group)
    ambient = permutation_lattice(G, H)
    dec = orbit_decomposition(ambient, P)
    sizes = []
    for s, m in dec:
        sizes.extend([P.order // s.order] * m)
    sizes.sort()
    row = IntMatrix([sizes], 1, len(sizes))
    ok = solvable_at_p(row, (1,), p)
    if not ok:
        raise VerificationError(
            "no p-integral fixed section although p is prime to the index"
        )
    return {
        "index": index,
        "p": p,
        "sylow_order": P.order,
        "orbit_sizes": sizes,
        "section_denominator": index,
        "solvable_at_p": True,
    }


# -- family certificates --------------------------------------------------


def _family_groups(family, n):
    G = make_symmetric(n) if family == "S" else make_alternating(n)
    return G, point_stabilizer(G, n)


def _klein_s4_witness(parent):
    gens = (
        Permutation.parse("(1 2)(3 4)", 4),
        Permutation.parse("(1 3)(2 4)", 4),
    )
    group = FiniteGroup.from_generators(list(gens), 4, known_order=4)
    return Subgroup(parent, group, designated_generators=gens)


def _hyperplane_subgroups(P: Subgroup):
    rhos = P.designated_generators
    out = []
    for i in range(len(rhos)):
        others = [r for j, r in enumerate(rhos) if j != i]
        out.append(
            Subgroup(
                P.group,
                FiniteGroup.from_generators(others, P.group.degree),
            )
        )
    return out


def build_certificate(family: str, n: int, p: int) -> Certificate:
    """Certificate of non-invertibility for the recognized (family, n, p).

    Raises UnsupportedCaseError when no decomposition criterion covers
    the triple (in particular whenever n is prime or p does not divide
    n, where the class is invertible).
    """
    assert family in ("S", "A")
    if not is_prime(p):
        raise ValueError("p must be prime")
    G, H = _family_groups(family, n)
    if family == "S" and n == 4 and p == 2:
        witness = _klein_s4_witness(G)
        triv = Subgroup(witness.group, FiniteGroup.trivial(4))
        J = restrict(norm_one_lattice(G, H), witness)
        free = free_restriction_decomposition(J, 1)
        return Certificate(
            G, H, p, witness, [(triv, 1)], ENDO11_THM43,
            extras={
                "free_rank": 1,
                "summands": free.summands(),
                "reduction": ["lemma22", "lemma21"],
            },
        )
    witness = witness_p_subgroup(family, n, p)
    if p % 2 == 1:
        expected = [(s, 1) for s in _hyperplane_subgroups(witness)]
        tag = ODD_P_HYPERPLANES
        ref = "oddprimeS" if family == "S" else "oddprimeA"
        extras = {"m": n // p, "reduction": ["lemma22", "lemma21"], "rule": ref}
        return Certificate(G, H, p, witness, expected, tag, extras=extras)
    if family == "S":
        expected = [(s, 1) for s in _hyperplane_subgroups(witness)]
        extras = {"m": n // 2, "reduction": ["lemma22", "lemma21"], "rule": "evenS"}
        return Certificate(
            G, H, p, witness, expected, EVEN_S_HYPERPLANES, extras=extras
        )
    if n % 4 == 0:
        t = n // 4
        triv = Subgroup(witness.group, FiniteGroup.trivial(n))
        J = restrict(norm_one_lattice(G, H), witness)
        free = free_restriction_decomposition(J, t)
        return Certificate(
            G, H, p, witness, [(triv, t)], KLEIN_FREE_JP,
            extras={
                "free_rank": t,
                "summands": free.summands(),
                "reduction": ["lemma22", "lemma21"],
                "rule": "evenA1",
            },
        )
    rho1, rho2 = witness.designated_generators
    rho3 = rho1 * rho2
    lines = [
        Subgroup(witness.group, FiniteGroup.from_generators([r], n))
        for r in (rho1, rho2, rho3)
    ]
    expected = [(lines[0], n // 2 - 2), (lines[1], 1), (lines[2], 1)]
    return Certificate(
        G, H, p, witness, expected, KLEIN_THREE_LINES,
        extras={"reduction": ["lemma22", "lemma21"], "rule": "evenA2"},
    )


def _recognize_family_pair(G: FiniteGroup, H: Subgroup):
    if G.sym_tag is None:
        return None
    fam, m = G.sym_tag
    if m != G.degree or m < 2:
        return None
    if H.order * m != G.order:
        return None
    if H.stabilized_letter == m:
        return fam, m
    if all(g.images[m - 1] == m for g in H.group.generators):
        return fam, m
    return None


def decide_p_invertibility(G: FiniteGroup, H: Subgroup, p: int) -> Decision:
    """Decide p-invertibility of rho_G(J_{G/H}) with a full trace.

    Rules are consulted in a fixed order and every consultation is
    recorded; the first decisive rule sets the verdict.
    """
    if not is_prime(p):
        raise ValueError("p must be prime, got %r" % (p,))
    trace = []

    app = _consult_coprime(G, H, p)
    trace.append(app)
    if app.verdict:
        return Decision(app.verdict, trace)

    app = _consult_cyclic_sylow(G, p)
    trace.append(app)
    if app.verdict:
        return Decision(app.verdict, trace)

    app = _consult_hall(G, H, p)
    trace.append(app)
    if app.verdict:
        return Decision(app.verdict, trace)

    pair = _recognize_family_pair(G, H)
    if pair is not None:
        fam, n = pair
        try:
            cert = build_certificate(fam, n, p)
            ref = {
                ODD_P_HYPERPLANES: "oddprimeS" if fam == "S" else "oddprimeA",
                EVEN_S_HYPERPLANES: "evenS",
                KLEIN_FREE_JP: "evenA1",
                KLEIN_THREE_LINES: "evenA2",
                ENDO11_THM43: "mainS",
            }[cert.criterion]
            trace.append(
                RuleApplication(
                    "family-certificate", ref,
                    {"family": fam, "n": n, "p": p},
                    verdict=NOT_PINVERTIBLE, certificate=cert,
                )
            )
            return Decision(NOT_PINVERTIBLE, trace)
        except UnsupportedCaseError as exc:
            trace.append(
                RuleApplication(
                    "family-certificate", "mainS" if fam == "S" else "mainA",
                    {"family": fam, "n": n, "p": p, "note": str(exc)},
                )
            )
    trace.append(
        RuleApplication(
            "fallback", "none",
            {"note": "no rule hypothesis applies; verdict unknown"},
        )
    )
    return Decision(UNKNOWN, trace)


__all__ = [
    "PINVERTIBLE",
    "NOT_PINVERTIBLE",
    "UNKNOWN",
    "ODD_P_HYPERPLANES",
    "EVEN_S_HYPERPLANES",
    "KLEIN_FREE_JP",
    "KLEIN_THREE_LINES",
    "ENDO11_THM43",
    "CRITERION_TAGS",
    "RuleApplication",
    "Decision",
    "Certificate",
    "p_group_shape_verdict",
    "reduce_to_sylow",
    "rule_coprime_index",
    "rule_cyclic_sylow",
    "rule_hall_necessity",
    "verify_splitting_prime_to_p",
    "build_certificate",
    "decide_p_invertibility",
]
