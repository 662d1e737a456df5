"""Proven two-sided intervals for the covering functional.

For each (d, m) the upper bound is a verified construction and the lower
bound a checked certificate; the interval is exact when the two proven
rationals coincide.  Nothing enters an interval unverified: a failing
construction or certificate is an internal consistency error, not a
value.
"""

from __future__ import annotations

from dataclasses import dataclass

from .certificates import certificate_to_json, check_certificate, lower_bound
from .constructions import GAMMA2D, PLUS4, TRIVIAL, best_known, construct_gamma2d, construct_plus4
from .geometry import fmt_rat, origin
from .rational import Rat, rat
from .verifier import Covered, Covering, Mode, verify_covering

EXACT = "proven-exact"
UPPER_ONLY = "upper-only"
CONJECTURAL = "conjectural"


class InternalConsistencyError(RuntimeError):
    """A built-in construction or certificate failed its own check."""


@dataclass(frozen=True)
class GammaInterval:
    d: int
    m: int
    lower: Rat | None
    upper: Rat
    exact: bool
    status: str
    upper_construction: str
    lower_certificate: dict
    note: str = ""


def _base_covering(kc) -> Covering:
    # copies padded at the origin never uncover anything, so verifying
    # the unpadded family member once certifies every padded variant
    if kc.name == TRIVIAL:
        return Covering(kc.d, rat(1), (origin(kc.d),))
    if kc.name == GAMMA2D:
        return construct_gamma2d(kc.d).covering
    if kc.name == PLUS4:
        return construct_plus4(kc.d).covering
    return kc.covering


def _verified_upper(kc, cache, threads):
    key = (kc.d, kc.name, kc.ratio)
    if cache is not None and key in cache:
        return cache[key]
    res = verify_covering(_base_covering(kc), mode=Mode.FULL_BODY, threads=threads)
    ok = isinstance(res, Covered)
    if cache is not None:
        cache[key] = ok
    return ok


def gamma_interval(d: int, m: int, cache: dict | None = None, threads: int = 1) -> GammaInterval:
    """Best proven interval for gamma at (d, m).

    The upper bound re-verifies the dispatched construction (cached by
    its deduplicated homothet set); the lower bound re-checks the emitted
    certificate.  exact means both sides are proven and equal.
    """
    kc = best_known(d, m)
    if not _verified_upper(kc, cache, threads):
        raise InternalConsistencyError(
            f"built-in construction {kc.name} failed verification at d={d}, m={m}"
        )
    cert = lower_bound(d, m)
    if not check_certificate(cert):
        raise InternalConsistencyError(
            f"emitted certificate failed its own check at d={d}, m={m}"
        )
    lower = cert.lam if cert.proven else None
    exact = cert.proven and cert.lam == kc.ratio
    if exact:
        status = EXACT
    elif cert.lam > 0 and not cert.proven:
        status = CONJECTURAL
    else:
        status = UPPER_ONLY
    note = cert.note
    if status == CONJECTURAL and not note:
        note = "conjectural gap"
    return GammaInterval(
        d=d,
        m=m,
        lower=lower,
        upper=kc.ratio,
        exact=exact,
        status=status,
        upper_construction=kc.name,
        lower_certificate=certificate_to_json(cert),
        note=note,
    )


def interval_to_json(g: GammaInterval) -> dict:
    return {
        "d": g.d,
        "m": g.m,
        "lower": fmt_rat(g.lower) if g.lower is not None else None,
        "upper": fmt_rat(g.upper),
        "exact": g.exact,
        "status": g.status,
        "upper_construction": g.upper_construction,
        "lower_certificate": g.lower_certificate,
        "note": g.note,
    }


def report_data(dims=(3, 4, 5), threads: int = 1, cache: dict | None = None) -> dict:
    """Reproduction table: every (d, m <= 2d+4) interval plus the
    covering-number corollary for d = 4, 5.

    A verified ratio below 1 at m = 2d shows 2d translates of the open
    copy suffice, i.e. the covering number is at most 2d < 2^d.
    """
    if cache is None:
        cache = {}
    rows = []
    for d in dims:
        for m in range(1, 2 * d + 5):
            g = gamma_interval(d, m, cache=cache, threads=threads)
            row = interval_to_json(g)
            del row["lower_certificate"]  # the bound command exports these
            rows.append(row)
    hadwiger = []
    for d in dims:
        if d < 4:
            continue
        g = gamma_interval(d, 2 * d, cache=cache, threads=threads)
        holds = g.exact and g.upper < 1
        hadwiger.append(
            {
                "d": d,
                "m": 2 * d,
                "gamma": fmt_rat(g.upper),
                "covering_number_at_most": 2 * d,
                "hypercube_bound": 2**d,
                "holds": bool(holds and 2 * d < 2**d),
            }
        )
    return {"rows": rows, "hadwiger": hadwiger}
