"""Pure-Python hot loops. Mirrors the API of ``_ckernels``."""

KEEP = 255
CANCEL = 254

IMPLEMENTATION = "python"


def word_mul(a, b, merge, nletters):
    i = len(a)
    j = 0
    lb = len(b)
    while i and j < lb:
        r = merge[a[i - 1] * nletters + b[j]]
        if r == CANCEL:
            i -= 1
            j += 1
        elif r == KEEP:
            break
        else:
            return a[: i - 1] + bytes((r,)) + b[j + 1 :]
    return a[:i] + b[j:]


def word_inv(a, inv):
    return bytes(inv[c] for c in reversed(a))


def expand_words(frontier, gens, seen, merge, nletters):
    out = []
    add = seen.add
    push = out.append
    for g in frontier:
        for s in gens:
            h = word_mul(g, s, merge, nletters)
            if h not in seen:
                add(h)
                push(h)
    return out


def expand_table(frontier, gens, seen, flat, order):
    out = []
    for g in frontier:
        row = g * order
        for s in gens:
            h = flat[row + s]
            if h not in seen:
                seen.add(h)
                out.append(h)
    return out


def expand_generic(frontier, gens, seen, mul):
    out = []
    for g in frontier:
        for s in gens:
            h = mul(g, s)
            if h not in seen:
                seen.add(h)
                out.append(h)
    return out


def convolve_words(x, y, merge, nletters):
    acc = {}
    get = acc.get
    yitems = list(y.items())
    for g, a in x.items():
        for h, b in yitems:
            k = word_mul(g, h, merge, nletters)
            acc[k] = get(k, 0) + a * b
    return {k: v for k, v in acc.items() if v}


def convolve_table(x, y, flat, order):
    acc = {}
    yitems = list(y.items())
    for g, a in x.items():
        row = g * order
        for h, b in yitems:
            k = flat[row + h]
            acc[k] = acc.get(k, 0) + a * b
    return {k: v for k, v in acc.items() if v}


def convolve_generic(x, y, mul):
    acc = {}
    yitems = list(y.items())
    for g, a in x.items():
        for h, b in yitems:
            k = mul(g, h)
            acc[k] = acc.get(k, 0) + a * b
    return {k: v for k, v in acc.items() if v}
