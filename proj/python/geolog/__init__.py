"""Geography of log models: exact-rational cones, chambers, runs, and links.

The heavy lifting happens in the compiled extension; these wrappers turn
Python dicts into the JSON text the core speaks and back.  Rational values
travel as strings like "2/3" so nothing is ever rounded.
"""

import json

from . import _geolog

__all__ = [
    "validate_fan",
    "cones",
    "chambers",
    "mmp",
    "geography",
    "separatrix",
    "zariski",
    "factor_links",
    "render_svg",
    "ClassificationError",
]

ClassificationError = _geolog.ClassificationError


def _rat(x):
    # accept ints, "p/q" strings, and exact fractions
    if isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    num, den = x.as_integer_ratio()
    return f"{num}/{den}"


def validate_fan(spec):
    """Check a fan description for Q-factoriality, properness, projectivity."""
    return json.loads(_geolog.validate_fan(json.dumps(spec)))


def cones(spec):
    """Semiample, nef, mobile, and effective cones of a model."""
    return json.loads(_geolog.cones(json.dumps(spec)))


def chambers(spec):
    """Chamber decomposition of the effective cone with attached models."""
    return json.loads(_geolog.chambers(json.dumps(spec)))


def mmp(spec, divisor):
    """Divisor-directed run; returns the full step trace."""
    return json.loads(_geolog.mmp(json.dumps(spec), [_rat(c) for c in divisor]))


def geography(spec):
    """Boundary-cube decomposition of a model with marked components."""
    return json.loads(_geolog.geography(json.dumps(spec)))


def separatrix(spec):
    """Lower boundary of the model region and its projection from the origin."""
    return json.loads(_geolog.separatrix(json.dumps(spec)))


def zariski(spec, divisor):
    """Mobile/exceptional split (toric) or nef/negative split (surface)."""
    return json.loads(_geolog.zariski(json.dumps(spec), [_rat(c) for c in divisor]))


def factor_links(spec):
    """Factor a map of Mori fibrations into elementary links."""
    return json.loads(_geolog.factor_links(json.dumps(spec)))


def render_svg(spec, fixed=None):
    """SVG picture of a geography; ``fixed`` pins coordinates for m > 2.

    ``fixed`` is a list of (coordinate index, rational value) pairs.
    """
    pins = [(int(i), _rat(v)) for i, v in (fixed or [])]
    return _geolog.render_svg(json.dumps(spec), pins)
