import pytest

import normone.classify as classify
from normone.classify import (
    NOT_P_RETRACT_RATIONAL,
    NOT_RETRACT_RATIONAL,
    P_RETRACT_RATIONAL,
    RETRACT_RATIONAL,
    classify_general,
    classify_norm_one_family,
    closed_form_family,
    retract_summary,
)
from normone.errors import DegenerateCaseError, VerificationError
from normone.invert import (
    Decision,
    NOT_PINVERTIBLE,
    PINVERTIBLE,
    RuleApplication,
)
from normone.numutil import is_prime
from normone.perms import (
    FiniteGroup,
    Permutation,
    Subgroup,
    make_alternating,
    make_symmetric,
    point_stabilizer,
)


def pair(family, n):
    G = make_symmetric(n) if family == "S" else make_alternating(n)
    return G, point_stabilizer(G, n)


def test_closed_form_matches_prime_or_coprime():
    for n in range(2, 15):
        for p in (2, 3, 5, 7, 11, 13):
            want = (PINVERTIBLE
                    if is_prime(n) or n % p != 0
                    else NOT_PINVERTIBLE)
            assert closed_form_family(n, p) == want


def test_family_examples():
    r = classify_norm_one_family("S", 4, 2)
    assert r.verdict == NOT_P_RETRACT_RATIONAL
    doc = r.to_json()
    assert doc["subject"] == {"family": "S", "n": 4}
    cert = doc["trace"]["rules"][-1]["witness"]["certificate"]
    assert cert["criterion"] == "ENDO11_THM43"

    assert classify_norm_one_family("S", 7, 7).verdict == P_RETRACT_RATIONAL

    r = classify_norm_one_family("A", 6, 3)
    assert r.verdict == NOT_P_RETRACT_RATIONAL
    assert r.trace.deciding_rule.ref == "oddprimeA"

    r = classify_norm_one_family("S", 6, 5)
    assert r.verdict == P_RETRACT_RATIONAL
    assert r.trace.deciding_rule.name == "coprime-index"


def test_degenerate_cases():
    with pytest.raises(DegenerateCaseError):
        classify_norm_one_family("S", 1, 2)
    with pytest.raises(DegenerateCaseError):
        classify_norm_one_family("A", 3, 2)
    r = classify_norm_one_family("S", 2, 2)
    assert r.verdict == P_RETRACT_RATIONAL
    assert any("Galois" in note for note in r.notes)


def test_galois_case_uses_quotient_sylow():
    C6 = FiniteGroup.from_generators(
        [Permutation.from_cycles([[1, 2, 3, 4, 5, 6]], 6)], 6)
    triv = Subgroup(C6, FiniteGroup.trivial(6))
    r = classify_general(C6, triv, 2)
    assert r.verdict == P_RETRACT_RATIONAL
    assert r.trace.deciding_rule.name == "galois-cyclic-sylow"
    assert r.notes == ["H is normal: Galois case, decided by the quotient"]

    V4 = FiniteGroup.from_generators(
        [Permutation.parse("(1 2)(3 4)", 4),
         Permutation.parse("(1 3)(2 4)", 4)], 4)
    r = classify_general(V4, Subgroup(V4, FiniteGroup.trivial(4)), 2)
    assert r.verdict == NOT_P_RETRACT_RATIONAL

    # normal V4 inside S4: the quotient is S3, cyclic at both primes
    S4 = make_symmetric(4)
    v4 = Subgroup(S4, FiniteGroup.from_generators(
        [Permutation.parse("(1 2)(3 4)", 4),
         Permutation.parse("(1 3)(2 4)", 4)], 4))
    assert classify_general(S4, v4, 2).verdict == P_RETRACT_RATIONAL
    assert classify_general(S4, v4, 3).verdict == P_RETRACT_RATIONAL


def test_point_stabilizer_pairs_route_to_engine():
    S6, H6 = pair("S", 6)
    r = classify_general(S6, H6, 2)
    assert r.verdict == NOT_P_RETRACT_RATIONAL
    assert r.trace.certificate is not None


def test_retract_summaries():
    S5, H5 = pair("S", 5)
    r = retract_summary(S5, H5)
    assert r.verdict == RETRACT_RATIONAL
    assert r.p == "all"

    S6, H6 = pair("S", 6)
    r = retract_summary(S6, H6)
    assert r.verdict == NOT_RETRACT_RATIONAL
    assert r.notes == ["p=2: NotPRetractRational", "p=3: NotPRetractRational"]

    A7, HA7 = pair("A", 7)
    assert retract_summary(A7, HA7).verdict == RETRACT_RATIONAL


def test_retract_rational_iff_prime_degree():
    for n in range(2, 13):
        G, H = pair("S", n)
        got = retract_summary(G, H).verdict
        want = RETRACT_RATIONAL if is_prime(n) else NOT_RETRACT_RATIONAL
        assert got == want, n


def test_bad_primes_of_composite_degree_are_its_divisors():
    for n in (4, 6, 8, 9, 10, 12):
        bad = [p for p in (2, 3, 5, 7, 11)
               if classify_norm_one_family("S", n, p).verdict
               == NOT_P_RETRACT_RATIONAL]
        assert bad == [p for p in (2, 3, 5, 7, 11) if n % p == 0]


def test_lying_engine_is_caught(monkeypatch):
    def liar(G, H, p):
        app = RuleApplication(
            "coprime-index", "coprime", {"index": 4, "p": 2},
            verdict=PINVERTIBLE)
        return Decision(PINVERTIBLE, [app])

    monkeypatch.setattr(classify, "decide_p_invertibility", liar)
    with pytest.raises(VerificationError):
        classify_norm_one_family("S", 4, 2)
