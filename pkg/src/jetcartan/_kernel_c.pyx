# cython: language_level=3
"""Compiled term-multiplication kernel.

Same contract as ``_kernel_py.mul_terms``.  Coefficients stay exact
(Fraction objects); the speedup comes from doing the exponent bookkeeping
— group-degree caps and tuple addition — in C loops instead of Python.
"""


def mul_terms(dict a, dict b, tuple caps):
    cdef Py_ssize_t i, g, ngroups = len(caps)
    cdef list group_idx = [list(idxs) for idxs, _ in caps]
    cdef list group_cap = [cap for _, cap in caps]
    if len(a) > len(b):
        a, b = b, a

    cdef list bitems = []
    cdef tuple eb
    cdef long d
    for eb, cb in b.items():
        degs = []
        for g in range(ngroups):
            d = 0
            for i in group_idx[g]:
                d += <long> eb[i]
            degs.append(d)
        bitems.append((eb, cb, degs))

    cdef dict out = {}
    cdef tuple ea, e
    cdef list da
    cdef bint ok
    cdef Py_ssize_t nv
    for ea, ca in a.items():
        da = []
        for g in range(ngroups):
            d = 0
            for i in group_idx[g]:
                d += <long> ea[i]
            da.append(d)
        nv = len(ea)
        for eb, cb, db in bitems:
            ok = True
            for g in range(ngroups):
                if <long> da[g] + <long> db[g] > <long> group_cap[g]:
                    ok = False
                    break
            if not ok:
                continue
            e = tuple([<long> ea[i] + <long> eb[i] for i in range(nv)])
            prev = out.get(e)
            if prev is None:
                out[e] = ca * cb
            else:
                out[e] = prev + ca * cb
    return {k: v for k, v in out.items() if v}
