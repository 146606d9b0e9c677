"""Pure-Python term-multiplication kernel.

Same contract as the optional compiled kernel in ``_kernel_c``: multiply two
term dictionaries {exponent tuple: Fraction} subject to per-group degree
caps, dropping every product monomial that violates a cap.  This is the one
hot loop of the package; everything else is bookkeeping around it.
"""


def mul_terms(a, b, caps):
    if len(a) > len(b):
        a, b = b, a
    # Per-term group degrees, so cap violations are detected without
    # building the product exponent first.
    gdeg_b = []
    for eb, cb in b.items():
        gdeg_b.append((eb, cb, [sum(eb[i] for i in idxs) for idxs, _ in caps]))
    out = {}
    get = out.get
    for ea, ca in a.items():
        da = [sum(ea[i] for i in idxs) for idxs, _ in caps]
        for eb, cb, db in gdeg_b:
            ok = True
            for g, (_, cap) in enumerate(caps):
                if da[g] + db[g] > cap:
                    ok = False
                    break
            if not ok:
                continue
            e = tuple(map(sum, zip(ea, eb)))
            out[e] = get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}
