"""Canonical text serialization.

One JSON document per object.  Every polynomial component is emitted as
``{"n": ..., "order": ..., "terms": [[ [e1,...,em], "p/q" ], ...]}`` with the
exponent tuples sorted graded-lexicographically and the rationals in lowest
terms; containers carry a ``type`` tag and their ring.  The emitted text is
canonical — keys sorted, no whitespace — so serialization is deterministic
and ``dumps(loads(s)) == s`` byte-for-byte on canonical input.
"""

import json
from fractions import Fraction

from .errors import SerializationError
from .rings import Ring
from .poly import TruncPoly, grlex_key
from .maps import PolyMap
from .vf import VFJet
from .spencer import SpencerCochain


# -- fragments ---------------------------------------------------------------


def _frac_str(c):
    return str(Fraction(c))


def _frac_parse(s, where):
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError, TypeError):
        raise SerializationError(f"{where}: malformed rational {s!r}")


def _ring_obj(ring):
    return {"nvars": ring.nvars, "active": ring.active,
            "caps": [[list(idxs), cap] for idxs, cap in ring.caps]}


def _ring_parse(obj, where):
    try:
        caps = tuple((tuple(idxs), cap) for idxs, cap in obj["caps"])
        return Ring(obj["nvars"], obj["active"], caps)
    except (KeyError, TypeError, ValueError) as exc:
        raise SerializationError(f"{where}: malformed ring ({exc})")


def _poly_obj(p):
    return {"n": p.ring.nvars, "order": p.ring.order,
            "terms": [[list(e), _frac_str(c)]
                      for e, c in sorted(p.terms.items(),
                                         key=lambda t: grlex_key(t[0]))]}


def _poly_parse(obj, ring, where):
    try:
        raw = obj["terms"]
    except (KeyError, TypeError):
        raise SerializationError(f"{where}: missing terms")
    if obj.get("n") != ring.nvars:
        raise SerializationError(f"{where}: variable count does not match "
                                 "the ring")
    terms = {}
    for item in raw:
        try:
            expo, coeff = item
            e = tuple(expo)
        except (TypeError, ValueError):
            raise SerializationError(f"{where}: malformed term {item!r}")
        if len(e) != ring.nvars or not all(
                isinstance(k, int) and k >= 0 for k in e):
            raise SerializationError(f"{where}: malformed exponent tuple "
                                     f"{expo!r}")
        c = _frac_parse(coeff, where)
        if c:
            terms[e] = c
    return TruncPoly(ring, terms)


# -- per-type encoders/decoders ---------------------------------------------


def _enc_poly(p):
    return {"type": "TruncPoly", "ring": _ring_obj(p.ring),
            "poly": _poly_obj(p)}


def _dec_poly(obj):
    ring = _ring_parse(obj["ring"], "TruncPoly")
    return _poly_parse(obj["poly"], ring, "TruncPoly")


def _enc_vf(x):
    return {"type": "VFJet", "ring": _ring_obj(x.ring),
            "comps": [_poly_obj(c) for c in x.comps]}


def _dec_vf(obj):
    ring = _ring_parse(obj["ring"], "VFJet")
    comps = [_poly_parse(c, ring, f"VFJet comp {i}")
             for i, c in enumerate(obj["comps"])]
    if len(comps) != ring.active:
        raise SerializationError("VFJet: wrong component count")
    return VFJet(ring, comps)


def _enc_map(m):
    return {"type": "PolyMap", "ring": _ring_obj(m.ring),
            "src": [_frac_str(s) for s in m.src],
            "comps": [_poly_obj(c) for c in m.comps],
            "anchor": None if m.anchor is None
            else [_poly_obj(a) for a in m.anchor]}


def _dec_map(obj):
    ring = _ring_parse(obj["ring"], "PolyMap")
    src = [_frac_parse(s, "PolyMap src") for s in obj["src"]]
    comps = [_poly_parse(c, ring, f"PolyMap comp {i}")
             for i, c in enumerate(obj["comps"])]
    anchor = obj.get("anchor")
    if anchor is not None:
        anchor = [_poly_parse(a, ring, "PolyMap anchor") for a in anchor]
    return PolyMap(ring, src, comps, anchor)


def _enc_cochain(c):
    return {"type": "SpencerCochain", "ring": _ring_obj(c.ring),
            "l": c.l,
            "vals": [[list(idx), [_poly_obj(p) for p in v.comps]]
                     for idx, v in sorted(c.values.items())]}


def _dec_cochain(obj):
    ring = _ring_parse(obj["ring"], "SpencerCochain")
    vals = {}
    for idx, comps in obj["vals"]:
        key = tuple(idx)
        polys = [_poly_parse(p, ring, f"cochain value {key}") for p in comps]
        vals[key] = VFJet(ring, polys)
    return SpencerCochain(ring, obj["l"], vals)


def _ctx_obj(ctx):
    return {"n": ctx.n, "k": ctx.k, "xord": ctx.xord}


def _ctx_parse(obj, where):
    from .ops import OpsContext
    try:
        return OpsContext(obj["n"], obj["k"], xord=obj["xord"])
    except (KeyError, TypeError) as exc:
        raise SerializationError(f"{where}: malformed context ({exc})")


def _enc_deformation(mu):
    return {"type": "Deformation", "ctx": _ctx_obj(mu.ctx),
            "cochain": _enc_cochain(mu.cochain)}


def _dec_deformation(obj):
    from .ops import Deformation
    ctx = _ctx_parse(obj["ctx"], "Deformation")
    cochain = _dec_cochain(obj["cochain"])
    return Deformation(ctx, cochain)


def _enc_auto(f):
    return {"type": "BundleAutomorphism", "ctx": _ctx_obj(f.ctx),
            "fwd": [_poly_obj(c) for c in f.base.fwd],
            "inv": [_poly_obj(c) for c in f.base.inv],
            "gauge": _enc_map(f.gauge)}


def _dec_auto(obj):
    from .ops import BaseDiffeo, BundleAutomorphism
    ctx = _ctx_parse(obj["ctx"], "BundleAutomorphism")
    ring = ctx.base_ring
    fwd = [_poly_parse(c, ring, "base fwd") for c in obj["fwd"]]
    inv = [_poly_parse(c, ring, "base inv") for c in obj["inv"]]
    base = BaseDiffeo(ring, fwd, inv)
    gauge = _dec_map(obj["gauge"])
    return BundleAutomorphism(ctx, base, gauge)


def _enc_density(beta):
    return {"type": "DualDensity", "ctx": _ctx_obj(beta.ctx),
            "coeffs": [[a, list(e), _poly_obj(p)]
                       for (a, e), p in sorted(beta.coeffs.items())]}


def _dec_density(obj):
    from .ops import DualDensity
    ctx = _ctx_parse(obj["ctx"], "DualDensity")
    coeffs = {}
    for a, e, p in obj["coeffs"]:
        coeffs[(a, tuple(e))] = _poly_parse(p, ctx.R, "density coefficient")
    return DualDensity(ctx, coeffs)


_DECODERS = {
    "TruncPoly": _dec_poly,
    "VFJet": _dec_vf,
    "PolyMap": _dec_map,
    "SpencerCochain": _dec_cochain,
    "Deformation": _dec_deformation,
    "BundleAutomorphism": _dec_auto,
    "DualDensity": _dec_density,
}


def _encode(obj):
    from . import ops
    if isinstance(obj, TruncPoly):
        return _enc_poly(obj)
    if isinstance(obj, VFJet):
        return _enc_vf(obj)
    if isinstance(obj, PolyMap):
        return _enc_map(obj)
    if isinstance(obj, SpencerCochain):
        return _enc_cochain(obj)
    if isinstance(obj, ops.Deformation):
        return _enc_deformation(obj)
    if isinstance(obj, ops.BundleAutomorphism):
        return _enc_auto(obj)
    if isinstance(obj, ops.DualDensity):
        return _enc_density(obj)
    raise SerializationError(f"cannot serialize {type(obj).__name__}")


def dumps(obj):
    """Canonical one-line JSON text for a supported object."""
    return json.dumps(_encode(obj), sort_keys=True, separators=(",", ":"))


def loads(text):
    """Parse canonical text back into the corresponding object."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SerializationError(
            f"line {exc.lineno} column {exc.colno}: {exc.msg}")
    if not isinstance(obj, dict) or "type" not in obj:
        raise SerializationError("top-level object must carry a type tag")
    dec = _DECODERS.get(obj["type"])
    if dec is None:
        raise SerializationError(f"unknown type tag {obj['type']!r}")
    try:
        return dec(obj)
    except SerializationError:
        raise
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise SerializationError(f"malformed {obj['type']}: {exc}")
