"""Moment-series (statistical-differential) approximations of E[g(X)] and
Var[g(X)], with exactness certificates, Peano remainders, error bounds and an
independent oracle. Thin wrapper over the C++ extension."""

import json as _json

try:
    from statdiff._statdiff import *  # noqa: F401,F403  (wheel layout)
    from statdiff._statdiff import __version__, report_json  # noqa: F401
except ImportError:  # in-tree build: extension on PYTHONPATH next to the package
    from _statdiff import *  # noqa: F401,F403
    from _statdiff import __version__, report_json  # noqa: F401


def report(function, dist, max_order=4, oracle_tol=1e-10, verdict_tol=1e-9,
           seed=0, mc_samples=0):
    """Full report as a dict: per-order approximations, oracle values, true
    errors, bounds and the exactness verdict."""
    return _json.loads(report_json(function, dist, max_order=max_order,
                                   oracle_tol=oracle_tol, verdict_tol=verdict_tol,
                                   seed=seed, mc_samples=mc_samples))
