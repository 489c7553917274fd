import pytest

from normone.cohomology import coflasque_report
from normone.errors import UnsupportedCaseError, VerificationError
from normone.invert import (
    ENDO11_THM43,
    EVEN_S_HYPERPLANES,
    KLEIN_FREE_JP,
    KLEIN_THREE_LINES,
    NOT_PINVERTIBLE,
    ODD_P_HYPERPLANES,
    PINVERTIBLE,
    UNKNOWN,
    Certificate,
    build_certificate,
    decide_p_invertibility,
    p_group_shape_verdict,
    reduce_to_sylow,
    rule_coprime_index,
    rule_cyclic_sylow,
    rule_hall_necessity,
    verify_splitting_prime_to_p,
)
from normone.lattice import (
    norm_one_lattice,
    orbit_decomposition,
    permutation_lattice,
    restrict,
)
from normone.perms import (
    FiniteGroup,
    Permutation,
    Subgroup,
    make_alternating,
    make_symmetric,
    point_stabilizer,
    sylow_subgroup,
)
from normone.resolution import rho


def P(text, degree):
    return Permutation.parse(text, degree)


def pair(family, n):
    G = make_symmetric(n) if family == "S" else make_alternating(n)
    return G, point_stabilizer(G, n)


def sub_of(G, *cycle_strings):
    return Subgroup(G, FiniteGroup.from_generators(
        [P(s, G.degree) for s in cycle_strings], G.degree))


def test_rule_coprime_index():
    S5, H = pair("S", 5)
    d = rule_coprime_index(S5, H, 2)
    assert d.verdict == PINVERTIBLE
    assert d.deciding_rule.ref == "coprime"
    assert d.deciding_rule.witness == {"index": 5, "p": 2}
    assert rule_coprime_index(S5, H, 5) is None


def test_rule_cyclic_sylow():
    S7 = make_symmetric(7)
    d = rule_cyclic_sylow(S7, 7)
    assert d.verdict == PINVERTIBLE
    assert d.deciding_rule.ref == "coprime"
    assert rule_cyclic_sylow(make_symmetric(4), 2) is None


def test_trace_order_and_family_refs():
    G, H = pair("S", 4)
    d = decide_p_invertibility(G, H, 2)
    assert d.verdict == NOT_PINVERTIBLE
    assert [(r.name, r.ref, r.verdict) for r in d.rules] == [
        ("coprime-index", "coprime", None),
        ("cyclic-sylow", "coprime", None),
        ("hall-necessity", "hall-necessity", None),
        ("family-certificate", "mainS", NOT_PINVERTIBLE),
    ]
    assert d.deciding_rule.name == "family-certificate"
    assert d.certificate.criterion == ENDO11_THM43

    for family, n, p, ref in [
        ("S", 9, 3, "oddprimeS"),
        ("S", 8, 2, "evenS"),
        ("A", 9, 3, "oddprimeA"),
        ("A", 8, 2, "evenA1"),
        ("A", 10, 2, "evenA2"),
    ]:
        G, H = pair(family, n)
        d = decide_p_invertibility(G, H, p)
        assert d.verdict == NOT_PINVERTIBLE
        assert d.deciding_rule.ref == ref

    G, H = pair("S", 6)
    d = decide_p_invertibility(G, H, 5)
    assert d.verdict == PINVERTIBLE
    assert [r.name for r in d.rules] == ["coprime-index"]


def test_decision_json_embeds_certificate():
    G, H = pair("A", 6)
    doc = decide_p_invertibility(G, H, 2).to_json()
    assert doc["verdict"] == NOT_PINVERTIBLE
    last = doc["rules"][-1]
    assert last["ref"] == "evenA2"
    cert = last["witness"]["certificate"]
    assert cert["criterion"] == KLEIN_THREE_LINES
    assert cert["p"] == 2


def test_certificate_decomposition_literals():
    cases = [
        ("S", 4, 2, ENDO11_THM43, 4, [(1, 1)], None),
        ("S", 9, 3, ODD_P_HYPERPLANES, 27, [(9, 1)] * 3, "oddprimeS"),
        ("S", 8, 2, EVEN_S_HYPERPLANES, 16, [(8, 1)] * 4, "evenS"),
        ("A", 6, 2, KLEIN_THREE_LINES, 4, [(2, 1)] * 3, "evenA2"),
        ("A", 10, 2, KLEIN_THREE_LINES, 4, [(2, 3), (2, 1), (2, 1)], "evenA2"),
        ("A", 8, 2, KLEIN_FREE_JP, 4, [(1, 2)], "evenA1"),
    ]
    for family, n, p, criterion, worder, dec, rule in cases:
        c = build_certificate(family, n, p)
        assert c.criterion == criterion
        assert c.witness.order == worder
        assert [(s.order, m) for s, m in c.decomposition] == dec
        assert c.extras.get("rule") == rule
        assert c.extras["reduction"] == ["lemma22", "lemma21"]
        assert c.validate()


def test_certificate_unsupported_cases():
    with pytest.raises(UnsupportedCaseError):
        build_certificate("S", 7, 7)  # prime degree has no obstruction
    with pytest.raises(UnsupportedCaseError):
        build_certificate("S", 6, 5)  # p coprime to n


def test_tampered_certificate_is_rejected():
    c = build_certificate("A", 6, 2)
    forged = [(s, m + 1) for s, m in c.decomposition[:1]] + c.decomposition[1:]
    with pytest.raises(VerificationError):
        Certificate(c.group, c.subgroup, c.p, c.witness, forged,
                    c.criterion, c.extras)


def test_shape_verdict_gates():
    S4 = make_symmetric(4)
    A4 = make_alternating(4)
    S6 = make_symmetric(6)

    c4 = sub_of(S4, "(1 2 3 4)")
    assert p_group_shape_verdict(c4, [], 2) == (PINVERTIBLE, None)

    v4s = sub_of(S4, "(1 2)(3 4)", "(1 3)(2 4)")
    triv = Subgroup(S4, FiniteGroup.trivial(4))
    assert p_group_shape_verdict(v4s, [(triv, 1)], 2) == (
        NOT_PINVERTIBLE, ENDO11_THM43)
    v4a = sub_of(A4, "(1 2)(3 4)", "(1 3)(2 4)")
    triva = Subgroup(A4, FiniteGroup.trivial(4))
    assert p_group_shape_verdict(v4a, [(triva, 1)], 2) == (
        NOT_PINVERTIBLE, KLEIN_FREE_JP)
    # declared free rank disagrees with the decomposition: no verdict
    assert p_group_shape_verdict(
        v4s, [(triv, 1)], 2, expect_free_rank=2) == (UNKNOWN, None)

    # three lines of the Klein group, multiplicities (k, 1, 1)
    lines = [sub_of(A4, "(1 2)(3 4)"), sub_of(A4, "(1 3)(2 4)"),
             sub_of(A4, "(1 4)(2 3)")]
    assert p_group_shape_verdict(
        v4a, [(lines[0], 5), (lines[1], 1), (lines[2], 1)], 2) == (
        NOT_PINVERTIBLE, KLEIN_THREE_LINES)
    assert p_group_shape_verdict(
        v4a, [(lines[0], 2), (lines[1], 2), (lines[2], 1)], 2) == (
        UNKNOWN, None)

    # hyperplanes: odd p decides at rank 2, p = 2 only from rank 3 up
    e9 = sub_of(S6, "(1 2 3)", "(4 5 6)")
    h9 = [sub_of(S6, "(1 2 3)"), sub_of(S6, "(4 5 6)")]
    assert p_group_shape_verdict(e9, [(h, 1) for h in h9], 3) == (
        NOT_PINVERTIBLE, ODD_P_HYPERPLANES)
    e4 = sub_of(S4, "(1 2)", "(3 4)")
    l4 = [sub_of(S4, "(1 2)"), sub_of(S4, "(3 4)")]
    assert p_group_shape_verdict(e4, [(h, 1) for h in l4], 2) == (
        UNKNOWN, None)
    e8 = sub_of(S6, "(1 2)", "(3 4)", "(5 6)")
    h8 = [sub_of(S6, "(3 4)", "(5 6)"), sub_of(S6, "(1 2)", "(5 6)"),
          sub_of(S6, "(1 2)", "(3 4)")]
    assert p_group_shape_verdict(e8, [(h, 1) for h in h8], 2) == (
        NOT_PINVERTIBLE, EVEN_S_HYPERPLANES)

    # dihedral Sylow with a non-free decomposition: no criterion applies
    d4 = sub_of(S4, "(1 2 3 4)", "(1 3)")
    stab = sub_of(S4, "(2 4)")
    assert p_group_shape_verdict(d4, [(stab, 1)], 2) == (UNKNOWN, None)


def test_reduce_to_sylow():
    G, H = pair("S", 6)
    J = norm_one_lattice(G, H)
    Psub, JP = reduce_to_sylow(G, J, 3)
    assert Psub.order == 9
    assert JP.rank == 5
    assert JP.group is Psub.group


def test_verify_splitting_artifact():
    S5, H5 = pair("S", 5)
    art = verify_splitting_prime_to_p(S5, H5, 2)
    assert art == {
        "index": 5,
        "p": 2,
        "sylow_order": 8,
        "orbit_sizes": [1, 4],
        "section_denominator": 5,
        "solvable_at_p": True,
    }
    S4, H4 = pair("S", 4)
    with pytest.raises(UnsupportedCaseError):
        verify_splitting_prime_to_p(S4, H4, 2)


def test_hall_rule():
    A4 = make_alternating(4)
    C3 = sub_of(A4, "(1 2 3)")
    d = rule_hall_necessity(A4, C3, 2)
    assert d.verdict == NOT_PINVERTIBLE
    c = d.certificate
    assert c.criterion == KLEIN_FREE_JP
    assert c.extras["free_rank"] == 1
    assert c.extras["noncyclic_sylow_order"] == 4
    assert c.extras["reduction"] == ["lemma22"]
    # A4/A3 is the degree-4 family pair, so the certificate cites evenA1
    assert c.extras["rule"] == "evenA1"
    # non-free restriction: the rule abstains
    S4, H4 = pair("S", 4)
    assert rule_hall_necessity(S4, H4, 2) is None
    # cyclic Sylow: nothing for this rule to do
    assert rule_hall_necessity(A4, C3, 3) is None


def test_sylow_shape_coherence_sweep():
    # whenever the raw Sylow decomposition already decides, it must agree
    # with the full engine
    decided_not = []
    cells = [(f, n, p) for f in ("S", "A") for n in range(4, 9)
             for p in (2, 3, 5, 7)]
    cells += [("S", 10, 5), ("A", 10, 5)]
    for family, n, p in cells:
        if family == "A" and n < 5:
            continue
        G, H = pair(family, n)
        Psub = sylow_subgroup(G, p)
        if Psub.order == 1:
            continue
        dec = orbit_decomposition(permutation_lattice(G, H), Psub)
        verdict, tag = p_group_shape_verdict(Psub, dec, p)
        if verdict == UNKNOWN:
            continue
        engine = decide_p_invertibility(G, H, p).verdict
        assert verdict == engine
        if verdict == NOT_PINVERTIBLE:
            decided_not.append((family, n, p, tag))
    assert decided_not == [
        ("S", 6, 3, ODD_P_HYPERPLANES),
        ("A", 6, 3, ODD_P_HYPERPLANES),
        ("S", 10, 5, ODD_P_HYPERPLANES),
        ("A", 10, 5, ODD_P_HYPERPLANES),
    ]


def test_flasque_class_torsion_at_witness():
    # frozen cohomology of F = rho(J restricted to the certificate
    # witness); the p-torsion in H^1 backs the negative verdicts
    expected = {
        ("S", 4, 2): (11, [(4, "[2]")]),
        ("A", 6, 2): (11, [(4, "[2]")]),
        ("S", 6, 2): (15, [(4, "[2]")]),
        ("A", 8, 2): (18, [(4, "[2]")]),
        # the odd-p obstruction is carried by the decomposition shape
        # alone: F has no 3-torsion anywhere over the witness
        ("S", 6, 3): (11, []),
    }
    for (family, n, p), (rank, nontrivial) in expected.items():
        G, H = pair(family, n)
        W = build_certificate(family, n, p).witness
        F = rho(restrict(norm_one_lattice(G, H), W))
        assert F.rank == rank
        got = [(s.order, str(t)) for s, t in coflasque_report(F)
               if not t.is_trivial]
        assert got == nontrivial

    # prime-degree control: the class is trivial at the Sylow subgroup
    G, H = pair("S", 7)
    W = sylow_subgroup(G, 7)
    F = rho(restrict(norm_one_lattice(G, H), W))
    assert F.rank == 1
    assert all(t.is_trivial for _, t in coflasque_report(F))
