# cython: language_level=3
# cython: boundscheck=False
"""Term-map kernels, compiled backend.

Same contract as hfib._kernels_py (the docstring there is normative):
dicts from integer exponent keys to nonzero exact rationals, inputs
never mutated, no zero coefficients stored.  Coefficient arithmetic
stays in Python object space (arbitrary precision); the win is the
typed dict loops.
"""


def kadd(dict a, dict b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    cdef dict out = dict(a)
    for key, coeff in b.items():
        have = out.get(key)
        if have is None:
            out[key] = coeff
        else:
            total = have + coeff
            if total:
                out[key] = total
            else:
                del out[key]
    return out


def kscale(dict a, c):
    if not c:
        return {}
    cdef dict out = {}
    for key, coeff in a.items():
        out[key] = coeff * c
    return out


def kmul(dict a, dict b):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    cdef dict out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            key = ka + kb
            prod = ca * cb
            have = out.get(key)
            if have is None:
                out[key] = prod
            else:
                total = have + prod
                if total:
                    out[key] = total
                else:
                    del out[key]
    return out


def kpow(dict a, long long n):
    if n < 0:
        raise ValueError("kpow exponent must be non-negative")
    cdef dict result = {0: 1}
    cdef dict base = a
    while n:
        if n & 1:
            result = kmul(result, base)
        n >>= 1
        if n:
            base = kmul(base, base)
    return result
