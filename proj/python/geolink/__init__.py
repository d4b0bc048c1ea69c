"""Exact linking data for modular geodesics on Y1(5).

Thin wrapper around the compiled extension. Forms are "a,b,c" strings,
symmetric matrices "t1,t0,t2" with rational entries like "1/2".
"""

from _geolink import (  # noqa: F401
    beta,
    classgroup,
    growth,
    iota,
    iota_prime,
    k0,
    m_coeff,
    reduce_form,
    rho,
    series,
    traverse,
    winding,
    wstar,
    zero_cycle,
)

__all__ = [
    "beta",
    "classgroup",
    "growth",
    "iota",
    "iota_prime",
    "k0",
    "m_coeff",
    "reduce_form",
    "rho",
    "series",
    "traverse",
    "winding",
    "wstar",
    "zero_cycle",
]
