"""Rationality verdicts for norm one tori.

The torus enters only through the pair (G, H) and its character
lattice J_{G/H}: the torus is p-retract rational exactly when the
flasque class rho_G(J_{G/H}) is p-invertible, and retract rational
exactly when that holds at every prime dividing |G|.

classify_norm_one_family answers the (family, n, p) question by the
closed form "n prime or p coprime to n" and cross-examines the
decision engine: wherever the engine decides, it must agree, else a
hard VerificationError.
"""

from __future__ import annotations

from .errors import DegenerateCaseError, VerificationError
from .invert import (
    Decision,
    NOT_PINVERTIBLE,
    PINVERTIBLE,
    RuleApplication,
    UNKNOWN,
    decide_p_invertibility,
)
from .numutil import is_prime, prime_divisors
from .perms import (
    FiniteGroup,
    Subgroup,
    is_cyclic,
    is_normal,
    make_alternating,
    make_symmetric,
    point_stabilizer,
    quotient_group,
    sylow_subgroup,
)

P_RETRACT_RATIONAL = "PRetractRational"
NOT_P_RETRACT_RATIONAL = "NotPRetractRational"
RETRACT_RATIONAL = "RetractRational"
NOT_RETRACT_RATIONAL = "NotRetractRational"
UNKNOWN_RATIONALITY = "Unknown"

_FROM_INVERTIBILITY = {
    PINVERTIBLE: P_RETRACT_RATIONAL,
    NOT_PINVERTIBLE: NOT_P_RETRACT_RATIONAL,
    UNKNOWN: UNKNOWN_RATIONALITY,
}


class RationalityVerdict:
    """subject is (family, n) or (G, H); p is a prime or "all"."""

    def __init__(self, subject, p, verdict, trace, notes=None):
        self.subject = subject
        self.p = p
        self.verdict = verdict
        self.trace = trace
        self.notes = list(notes or [])

    def _subject_json(self):
        a, b = self.subject
        if isinstance(a, str):
            return {"family": a, "n": b}
        return {
            "group": a.label or "degree-%d group" % a.degree,
            "group_order": a.order,
            "subgroup_order": b.order,
            "index": b.index,
        }

    def to_json(self):
        if isinstance(self.trace, dict):
            trace = {str(k): v.to_json() for k, v in self.trace.items()}
        else:
            trace = self.trace.to_json() if self.trace is not None else None
        doc = {
            "subject": self._subject_json(),
            "p": self.p,
            "verdict": self.verdict,
            "trace": trace,
        }
        if self.notes:
            doc["notes"] = self.notes
        return doc


def closed_form_family(n: int, p: int) -> str:
    """The (family-independent) classification: n prime or p coprime to n."""
    return PINVERTIBLE if (is_prime(n) or n % p != 0) else NOT_PINVERTIBLE


def classify_norm_one_family(family: str, n: int, p: int) -> RationalityVerdict:
    """Verdict for the norm one torus of a degree-n extension, group S_n/A_n."""
    assert family in ("S", "A")
    if n < 2:
        raise DegenerateCaseError("degree must be at least 2, got %d" % n)
    if not is_prime(p):
        raise ValueError("p must be prime, got %r" % (p,))
    if family == "A" and n <= 3:
        raise DegenerateCaseError(
            "A_%d is not the Galois closure group of a non-Galois degree-%d "
            "extension; the alternating classification starts at n = 4" % (n, n)
        )
    notes = []
    if family == "S" and n == 2:
        notes.append(
            "degree 2: the extension is Galois with group C_2; the torus is "
            "one dimensional and the verdict is the Galois cyclic-Sylow case"
        )
    G = make_symmetric(n) if family == "S" else make_alternating(n)
    H = point_stabilizer(G, n)
    decision = decide_p_invertibility(G, H, p)
    want = closed_form_family(n, p)
    if decision.verdict != UNKNOWN and decision.verdict != want:
        raise VerificationError(
            "engine verdict %s contradicts the closed form %s at "
            "(%s, n=%d, p=%d)" % (decision.verdict, want, family, n, p)
        )
    return RationalityVerdict(
        (family, n), p, _FROM_INVERTIBILITY[want], decision, notes=notes
    )


def classify_general(G: FiniteGroup, H: Subgroup, p: int) -> RationalityVerdict:
    """Verdict for the norm one torus of any pair H <= G.

    When H is normal the extension is Galois and the verdict is the
    cyclic-Sylow biconditional for G/H; otherwise the decision engine
    is consulted and Unknown propagates.
    """
    if not is_prime(p):
        raise ValueError("p must be prime, got %r" % (p,))
    if is_normal(G, H):
        Q = quotient_group(G, H)
        P = sylow_subgroup(Q, p)
        cyclic = is_cyclic(P)
        verdict = PINVERTIBLE if cyclic else NOT_PINVERTIBLE
        # the cyclic-Sylow biconditional is a cited criterion for the
        # Galois case, with the witness data inline rather than a
        # decomposition certificate
        decision = Decision(
            verdict,
            [
                RuleApplication(
                    "galois-cyclic-sylow",
                    "galois-cyclic",
                    {
                        "quotient_order": Q.order,
                        "sylow_order": P.order,
                        "cyclic": cyclic,
                        "p": p,
                    },
                    verdict=verdict,
                )
            ],
            require_certificate=False,
        )
        return RationalityVerdict(
            (G, H), p, _FROM_INVERTIBILITY[verdict], decision,
            notes=["H is normal: Galois case, decided by the quotient"],
        )
    decision = decide_p_invertibility(G, H, p)
    return RationalityVerdict(
        (G, H), p, _FROM_INVERTIBILITY[decision.verdict], decision
    )


def retract_summary(G: FiniteGroup, H: Subgroup) -> RationalityVerdict:
    """Conjunction over all primes dividing |G|, reported with p = "all".

    A single negative prime settles NotRetractRational even if another
    prime is Unknown; Unknown otherwise propagates.
    """
    per_prime = {}
    verdicts = []
    for p in prime_divisors(G.order):
        v = classify_general(G, H, p)
        per_prime[p] = v.trace
        verdicts.append((p, v.verdict))
    if any(v == NOT_P_RETRACT_RATIONAL for _, v in verdicts):
        overall = NOT_RETRACT_RATIONAL
    elif any(v == UNKNOWN_RATIONALITY for _, v in verdicts):
        overall = UNKNOWN_RATIONALITY
    else:
        overall = RETRACT_RATIONAL
    notes = [
        "p=%d: %s" % (p, v) for p, v in verdicts
        if v != P_RETRACT_RATIONAL
    ]
    return RationalityVerdict((G, H), "all", overall, per_prime, notes=notes)


__all__ = [
    "P_RETRACT_RATIONAL",
    "NOT_P_RETRACT_RATIONAL",
    "RETRACT_RATIONAL",
    "NOT_RETRACT_RATIONAL",
    "UNKNOWN_RATIONALITY",
    "RationalityVerdict",
    "closed_form_family",
    "classify_norm_one_family",
    "classify_general",
    "retract_summary",
]
