"""JSON serialization for every report type.

Integers that may exceed 53 bits are emitted as decimal strings and exact
rationals as "num/den" strings, so nothing is ever routed through floats.
Each top-level document carries a "schema" tag.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .density import DensityInterval
from .descent import GFamily
from .forms import BinaryQuarticForm, InvariantData
from .local import LocalCertificate, LocalReport
from .modp import INF, SplitData
from .search import CorrespondenceReport, SolutionSet
from .witness import ConditionChecks, WitnessReport, WitnessSpec

SCHEMA_VERSION = 1
_SAFE = 1 << 53


def encode_int(n: int):
    return n if -_SAFE < n < _SAFE else str(n)


def decode_int(v) -> int:
    return int(v)


def encode_fraction(fr: Fraction) -> str:
    return f"{fr.numerator}/{fr.denominator}"


def decode_fraction(s: str) -> Fraction:
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den or 1))


def fraction_decimal(fr: Fraction, digits: int = 12) -> str:
    """Decimal approximation of an exact rational, via mpmath."""
    import mpmath

    with mpmath.workdps(digits + 5):
        val = mpmath.mpf(fr.numerator) / mpmath.mpf(fr.denominator)
        return mpmath.nstr(val, digits)


def _root_str(b) -> str:
    return "inf" if b is INF else str(b)


def _label_str(label) -> str:
    return ",".join(_root_str(b) for b in label)


def parse_root(text: str):
    return INF if text.strip().lower() in ("inf", "infinity", "oo") else int(text)


def to_jsonable(obj):
    if isinstance(obj, BinaryQuarticForm):
        return {"coeffs": [encode_int(c) for c in obj.coeffs()]}
    if isinstance(obj, InvariantData):
        return {"I": encode_int(obj.I), "J": encode_int(obj.J),
                "D": encode_int(obj.D), "H": encode_fraction(obj.H),
                "i": obj.signature_i}
    if isinstance(obj, SplitData):
        return {"p": obj.p, "roots": [_root_str(b) for b in obj.roots],
                "m0": obj.m0}
    if isinstance(obj, GFamily):
        return {"base": to_jsonable(obj.base), "primes": list(obj.primes),
                "members": {_label_str(lab): to_jsonable(obj.members[lab])
                            for lab in obj.labels()}}
    if isinstance(obj, LocalCertificate):
        out = {"place": "R" if obj.place == "R" else obj.place,
               "verdict": obj.verdict}
        if obj.witness is not None:
            out["witness"] = to_jsonable(obj.witness)
        if obj.depth is not None:
            out["depth"] = obj.depth
        return out
    if isinstance(obj, LocalReport):
        return {"schema": "local-report/v%d" % SCHEMA_VERSION,
                "form": to_jsonable(obj.form), "h": encode_int(obj.h),
                "certificates": [to_jsonable(c) for c in obj.certificates],
                "justification": to_jsonable(obj.justification),
                "locally_soluble_everywhere": obj.locally_soluble_everywhere}
    if isinstance(obj, SolutionSet):
        return {"form": to_jsonable(obj.form), "m": encode_int(obj.m),
                "B": obj.B,
                "solutions": [[encode_int(x), encode_int(y)]
                              for (x, y) in obj.solutions]}
    if isinstance(obj, CorrespondenceReport):
        return {"schema": "correspondence/v%d" % SCHEMA_VERSION,
                "h": encode_int(obj.h), "B": obj.B,
                "parent": to_jsonable(obj.parent),
                "members": {_label_str(lab): to_jsonable(ss)
                            for lab, ss in sorted(obj.members.items(),
                                                  key=lambda kv: _label_str(kv[0]))},
                "pushed": {str(k): [_label_str(v[0]), list(v[1])]
                           for k, v in obj.pushed.items()},
                "mismatches": [to_jsonable(m) for m in obj.mismatches],
                "out_of_box": [to_jsonable(m) for m in obj.out_of_box],
                "ok": obj.ok}
    if isinstance(obj, DensityInterval):
        return {"lower": encode_fraction(obj.lower),
                "upper": encode_fraction(obj.upper),
                "lower_decimal": fraction_decimal(obj.lower),
                "upper_decimal": fraction_decimal(obj.upper)}
    if isinstance(obj, WitnessSpec):
        return {"h": encode_int(obj.h), "primes": list(obj.primes),
                "modulus": encode_int(obj.modulus),
                "residues": [encode_int(r) for r in obj.residues],
                "sign": obj.sign, "threshold": encode_fraction(obj.threshold)}
    if isinstance(obj, ConditionChecks):
        return {k: {"ok": v["ok"], "data": to_jsonable(v["data"])}
                for k, v in obj.items.items()}
    if isinstance(obj, WitnessReport):
        return {
            "schema": "witness-report/v%d" % SCHEMA_VERSION,
            "h": encode_int(obj.h), "seed": obj.seed, "B": obj.B,
            "spec": to_jsonable(obj.spec),
            "form": to_jsonable(obj.form),
            "invariants": to_jsonable(obj.invariants),
            "checks": to_jsonable(obj.checks),
            "family": to_jsonable(obj.family),
            "local_reports": {
                "base" if lab == "base" else _label_str(lab): to_jsonable(r)
                for lab, r in obj.local_reports.items()},
            "solutions": to_jsonable(obj.solutions),
            "correspondence": to_jsonable(obj.correspondence),
            "eps": encode_fraction(obj.eps),
            "count_bound": obj.bound,
            "bound_applicable": obj.applicable,
            "flagged_members": [_label_str(lab) for lab in obj.flagged],
            "min_flagged_expected": obj.min_flagged_expected,
            "everywhere_locally_soluble": obj.everywhere_locally_soluble,
        }
    if isinstance(obj, Fraction):
        return encode_fraction(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if obj is INF:
        return "inf"
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return encode_int(obj)
    raise TypeError(f"cannot serialize {type(obj)!r}")


def dumps(obj, indent: int | None = 2) -> str:
    payload = to_jsonable(obj)
    if isinstance(payload, dict) and "schema" not in payload:
        payload = {"schema": "document/v%d" % SCHEMA_VERSION, **payload}
    return json.dumps(payload, indent=indent, sort_keys=False)


def parse_form(data) -> BinaryQuarticForm:
    if isinstance(data, str):
        return BinaryQuarticForm.parse(data)
    return BinaryQuarticForm(*(decode_int(c) for c in data["coeffs"]))
