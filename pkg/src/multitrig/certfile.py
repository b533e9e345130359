"""Certificate documents: JSON text with exact rationals as "num/den" strings.

Top-level keys (always present, in this order):

    format, target, basis, x, k0, q, n, profile, denomBound, digits,
    weightedPoly, coefficients, basisValues, residual, residualErr,
    fittedK, claimedBoundForm, ladder, passed, fitErrorEstimate,
    resolutions, extras

``target`` is the alpha expression as given.  Reals are decimal strings
carrying ``digits`` significant digits, the precision the basis values
were computed at.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .approx import ApproxCertificate, ApproxTarget, CoefficientEntry
from .numerics import ExtReal, mp
from .poly import RationalPoly

FORMAT = "multitrig-certificate/1"


def _rat(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _real(v, digits: int) -> str:
    # format at the value's own precision, not the ambient one
    with mp.workdps(max(digits, mp.dps)):
        return mp.nstr(mp.mpf(v), digits, strip_zeros=False)


def certificate_to_dict(cert: ApproxCertificate) -> dict:
    t = cert.target
    d = cert.dps
    return {
        "format": FORMAT,
        "target": t.alpha,
        "basis": t.basis,
        "x": None if t.x is None else _rat(t.x),
        "k0": t.k0,
        "q": t.q,
        "n": t.n,
        "profile": cert.profile,
        "denomBound": cert.denom_bound,
        "digits": d,
        "weightedPoly": cert.weighted_poly.to_strings(),
        "coefficients": [{"k": e.k, "c": _rat(e.c), "element": e.element} for e in cert.coefficients],
        "basisValues": [{"value": _real(v.value, d), "err": _real(v.err, 6)} for v in cert.basis_values],
        "residual": _real(cert.residual, d),
        "residualErr": _real(cert.residual_err, 6),
        "fittedK": repr(float(cert.fitted_k)),
        "claimedBoundForm": cert.claimed_bound_form,
        "ladder": {str(m): _real(v, 20) for m, v in cert.ladder.items()},
        "passed": cert.passed,
        "fitErrorEstimate": repr(float(cert.fit_error_estimate)),
        "resolutions": dict(cert.resolutions),
        "extras": {k: _real(v, 20) for k, v in sorted(cert.extras.items())},
    }


def dumps(cert: ApproxCertificate) -> str:
    return json.dumps(certificate_to_dict(cert), indent=2) + "\n"


def certificate_from_dict(doc: dict) -> ApproxCertificate:
    if doc.get("format") != FORMAT:
        raise ValueError(f"not a certificate document (format {doc.get('format')!r})")
    x = None if doc["x"] is None else Fraction(doc["x"])
    target = ApproxTarget(doc["target"], doc["basis"], x, doc["k0"], doc["q"], doc["n"])
    d = int(doc["digits"])
    with mp.workdps(d):
        values = [ExtReal(mp.mpf(v["value"]), mp.mpf(v["err"])) for v in doc["basisValues"]]
        residual = mp.mpf(doc["residual"])
        residual_err = mp.mpf(doc["residualErr"])
    return ApproxCertificate(
        target=target,
        profile=doc["profile"],
        denom_bound=int(doc["denomBound"]),
        weighted_poly=RationalPoly.from_strings(doc["weightedPoly"]),
        coefficients=[CoefficientEntry(int(e["k"]), Fraction(e["c"]), e["element"]) for e in doc["coefficients"]],
        basis_values=values,
        residual=residual,
        residual_err=residual_err,
        fitted_k=float(doc["fittedK"]),
        ladder={int(m): mp.mpf(v) for m, v in doc["ladder"].items()},
        dps=d,
        passed=bool(doc["passed"]),
        fit_error_estimate=float(doc["fitErrorEstimate"]),
        claimed_bound_form=doc["claimedBoundForm"],
        resolutions=dict(doc["resolutions"]),
        extras={k: mp.mpf(v) for k, v in doc["extras"].items()},
    )


def loads(text: str) -> ApproxCertificate:
    return certificate_from_dict(json.loads(text))


def load(path) -> ApproxCertificate:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
