"""Full analysis of a pair diagram, as a JSON-ready dictionary.

Group orders are decimal strings and rationals ``"n/d"`` strings so the
machine output stays exact; polarization types are lists of ints.
"""
from __future__ import annotations

from fractions import Fraction

from . import pryms
from .classification import derive_params, family_a_test, family_b_test
from .covers import PairDiagram, is_etale
from .errors import IdentityViolated, NotExponentSix
from .groups import (
    common_factorization_exists,
    cyclic_etale_factorization_exists,
    deck_group,
)

SCHEMA = "prympair.analyze/1"


def exact(x):
    """JSON-safe exact form: ints become decimal strings, fractions ``"n/d"``."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    if isinstance(x, int):
        return str(x)
    return x


def _kernel(group):
    return {"invariants": list(group.invariants), "order": exact(group.order)}


def _deck(dg):
    return {"order": dg.order, "cyclic": dg.is_cyclic, "galois": dg.is_galois, "abelian": dg.is_abelian}


def regime_of(d: PairDiagram):
    """``"etale"`` when ``f2`` is cyclic unramified, ``"ramified"`` when neither
    projection factors through a cyclic unramified cover, else ``"other"``."""
    if is_etale(d.f2):
        dg = deck_group(d.f2)
        if dg.is_galois and dg.is_cyclic and not cyclic_etale_factorization_exists(d.f1):
            return "etale"
    if not (cyclic_etale_factorization_exists(d.f1) or cyclic_etale_factorization_exists(d.f2)):
        return "ramified"
    return "other"


def analyze_diagram(d: PairDiagram) -> dict:
    """Run the whole pipeline on ``d``.

    Raises IdentityViolated when one of the order identities fails; the
    caller turns that into a nonzero exit.
    """
    p = derive_params(d)
    lat = pryms.diagram_lattices(d)
    regime = regime_of(d)
    q = d.d1 * d.d2

    out = {
        "schema": SCHEMA,
        "degrees": {"g1": d.d1, "g2": d.d2, "X": d.X.degree},
        "labels": len(d.g1.labels),
        "genus": {"X": d.X.genus, "X1": d.g1.genus, "X2": d.g2.genus},
        "params": {**dict(zip(("d1", "d2", "r1", "r2", "s1", "s2"), p.as_tuple())), "dim_p": p.dim_p},
        "conditions": {
            "no_common_factorization": not common_factorization_exists(d.g1, d.g2),
            "fiber_product": d.is_fiber_product,
            "coprime_degrees": d.coprime,
        },
        "regime": regime,
        "f1": {"etale": is_etale(d.f1), "deck": _deck(deck_group(d.f1)),
               "cyclic_etale_factor": cyclic_etale_factorization_exists(d.f1)},
        "f2": {"etale": is_etale(d.f2), "deck": _deck(deck_group(d.f2)),
               "cyclic_etale_factor": cyclic_etale_factorization_exists(d.f2)},
        "composed": _deck(deck_group(d.composed())),
    }

    ptype = pryms.restricted_type(lat.prym)
    out["kernels"] = {
        "K(L)": _kernel(pryms.kernel_group(lat.prym_f1)),
        "K(L_A)": _kernel(pryms.kernel_group(lat.pullback_f2)),
        "K(L_P)": _kernel(pryms.kernel_group(lat.prym)),
    }
    out["kernel_splitting"] = bool(pryms.verify_kernel_splitting(d)["splitting"])
    out["prym_type"] = list(ptype.divisors)
    out["dim_p"] = lat.dim
    if lat.dim != p.dim_p:
        raise IdentityViolated(f"lattice dimension {lat.dim} != parameter dimension {p.dim_p}")
    pt = lat.dim > 0 and pryms.prym_tyurin_check(lat.prym, q)
    out["prym_tyurin"] = {"holds": pt, "exponent": q if pt else None}

    if (d.d1, d.d2) == (3, 2):
        _, endo = pryms.exponent_endomorphism(d, check=False)
        out["exponent_endomorphism"] = endo
    else:
        out["exponent_endomorphism"] = None

    family = None
    if regime == "ramified" and family_a_test(p)[0]:
        family = "A"
    elif regime == "etale" and family_b_test(p)[0]:
        family = "B"
    out["family"] = family
    if family:
        if not pt:
            raise IdentityViolated("family parameters hold but P is not Prym-Tyurin")
        if not out["exponent_endomorphism"]["ok"]:
            raise NotExponentSix(f"exponent endomorphism fails on a family diagram: {out['exponent_endomorphism']}")
        out["seshadri_bound"] = exact(pryms.seshadri_upper_bound(lat.dim, family))
    else:
        out["seshadri_bound"] = None
    return out


def _yes(b):
    return "yes" if b else "no"


def _group(k):
    inv = k["invariants"]
    if not inv:
        return "trivial"
    return " x ".join(f"Z/{x}" for x in inv) + f"  (order {k['order']})"


def format_human(r: dict) -> str:
    """Readable rendering of an :func:`analyze_diagram` report."""
    p = r["params"]
    lines = [
        f"degrees      g1: {r['degrees']['g1']}  g2: {r['degrees']['g2']}  X: {r['degrees']['X']}"
        f"  over {r['labels']} branch labels",
        f"genera       X: {r['genus']['X']}  X1: {r['genus']['X1']}  X2: {r['genus']['X2']}",
        "params       (d1, d2, r1, r2, s1, s2) = "
        f"({p['d1']}, {p['d2']}, {p['r1']}, {p['r2']}, {p['s1']}, {p['s2']})  dim P = {p['dim_p']}",
        f"conditions   no common factor: {_yes(r['conditions']['no_common_factorization'])}"
        f"  fibre product: {_yes(r['conditions']['fiber_product'])}"
        f"  coprime: {_yes(r['conditions']['coprime_degrees'])}",
        f"regime       {r['regime']}",
        f"f2           etale: {_yes(r['f2']['etale'])}  deck group order {r['f2']['deck']['order']}"
        f"  cyclic: {_yes(r['f2']['deck']['cyclic'])}",
        f"X -> line    deck group order {r['composed']['order']}  galois: {_yes(r['composed']['galois'])}"
        f"  abelian: {_yes(r['composed']['abelian'])}",
        f"K(L)         {_group(r['kernels']['K(L)'])}",
        f"K(L_A)       {_group(r['kernels']['K(L_A)'])}",
        f"K(L_P)       {_group(r['kernels']['K(L_P)'])}",
        f"splitting    K(L_P) = K(L) + K(L_A): {_yes(r['kernel_splitting'])}",
        f"type of P    ({', '.join(map(str, r['prym_type']))})",
    ]
    pt = r["prym_tyurin"]
    lines.append(
        f"Prym-Tyurin  {'yes, exponent ' + str(pt['exponent']) if pt['holds'] else 'no'}"
    )
    k = r["exponent_endomorphism"]
    if k is not None:
        lines.append(
            f"endomorphism e^2 = 6e: {_yes(k['square_is_6e'])}  self-adjoint: {_yes(k['self_adjoint'])}"
            f"  rank {k['rank']}  image = P: {_yes(k['image_is_prym'])}"
        )
    lines.append(f"family       {r['family'] or 'none'}")
    if r["seshadri_bound"] is not None:
        lines.append(f"Seshadri     <= {r['seshadri_bound']}")
    return "\n".join(lines)
